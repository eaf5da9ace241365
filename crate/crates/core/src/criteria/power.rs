//! Power-character criteria: `chi_r(a) = a^r` inside `Z_q` itself.

use crate::numtheory::{is_prime, mod_mul};
use crate::splitting::QuasiCrossShape;

use super::{CriterionId, CriterionOutcome, Witness};

/// `(4k-1, 1, n)`: squares. No tiling when `kn = 5, 8 (mod 9)`.
pub fn check_power_square(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::PowerSquare;
    let kp = shape.k_plus();
    if shape.k_minus() != 1 || (kp + 1) % 4 != 0 {
        return CriterionOutcome::inapplicable(ID);
    }
    let k = (kp + 1) / 4;
    let kn_mod_9 = (k % 9) * (shape.n() % 9) % 9;
    let witness = Witness::SquareResidue { k, kn_mod_9 };
    if kn_mod_9 == 5 || kn_mod_9 == 8 {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// `(4k+2, 1, n)`, `k >= 1`: cubes. No tiling when `n = 3, 7 (mod 8)`.
pub fn check_power_cube(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::PowerCube;
    let kp = shape.k_plus();
    if shape.k_minus() != 1 || kp < 6 || (kp - 2) % 4 != 0 {
        return CriterionOutcome::inapplicable(ID);
    }
    let k = (kp - 2) / 4;
    let n_mod_8 = shape.n() % 8;
    let witness = Witness::CubeResidue { k, n_mod_8 };
    if n_mod_8 == 3 || n_mod_8 == 7 {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// Prime `q` and `n < q - 1`: some power sum `sum_M m^i`, `1 <= i <= n`,
/// must vanish mod `q`, otherwise the Vandermonde matrix of `S` would be
/// singular. Fires when all of them are nonzero.
pub fn check_vandermonde(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::Vandermonde;
    let (n, q) = (shape.n(), shape.q());
    if !is_prime(q) || n >= q - 1 {
        return CriterionOutcome::inapplicable(ID);
    }
    let base = shape.multiplier_set().residues().to_vec();
    let mut powers = base.clone();
    for i in 1..=n {
        let sum = powers.iter().fold(0u64, |acc, &x| (acc + x) % q);
        if sum == 0 {
            return CriterionOutcome::inconclusive(ID, Some(Witness::ZeroPowerSum { i }));
        }
        for (p, &m) in powers.iter_mut().zip(&base) {
            *p = mod_mul(*p, m, q);
        }
    }
    CriterionOutcome::ruled_out(ID, Witness::PowerSums { through: n })
}
