//! Character-sum criteria over a prime group order `q`.
//!
//! For a splitting `(M, S)` of `Z_q` and any multiplicative character `chi`
//! of `Z_q^*`, `(sum_M chi(m)) (sum_S chi(s)) = sum_{a != 0} chi(a)`, and the
//! right side vanishes for nontrivial `chi`. So one of the two factors is
//! zero. Each check below shows the `M` factor is nonzero and that a zero
//! `S` factor is incompatible with `|S| = n`.

use crate::numtheory::{is_prime, legendre, mod_pow, QuarticCharacter};
use crate::splitting::QuasiCrossShape;

use super::{CriterionId, CriterionOutcome, Witness};

/// Quadratic character. A zero Legendre sum over `S` needs equally many
/// residues and non-residues in `S`, impossible for odd `n`.
pub fn check_quadratic_balance(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::Quadratic;
    let q = shape.q();
    if !is_prime(q) || q == 2 {
        return CriterionOutcome::inapplicable(ID);
    }
    let mut residues = 0;
    let mut non_residues = 0;
    for &m in shape.multiplier_set().values() {
        match legendre(m, q).expect("q is an odd prime") {
            1 => residues += 1,
            -1 => non_residues += 1,
            _ => unreachable!("multipliers are nonzero mod q"),
        }
    }
    let witness = Witness::QuadraticCounts {
        residues,
        non_residues,
    };
    if shape.n() % 2 == 1 && residues != non_residues {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// The `(3,1,n)` statement with `q = 4n + 1` prime and `n` odd: no tiling
/// when `6^n != 1 (mod q)`.
pub fn check_char4_literal(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::Char4Literal;
    let (n, q) = (shape.n(), shape.q());
    if (shape.k_plus(), shape.k_minus()) != (3, 1) || n % 2 == 0 || !is_prime(q) {
        return CriterionOutcome::inapplicable(ID);
    }
    let value = mod_pow(6, n, q);
    let witness = Witness::SixthPower { value };
    if value != 1 {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// Quartic character for any prime `q = 1 (mod 4)` and odd `n`.
///
/// `sum_M chi(m)` is zero exactly when the class counts pair up
/// (`c0 = c2` and `c1 = c3`). Otherwise `sum_S chi(s) = 0`, which needs the
/// same pairing in `S` and hence an even `n`.
pub fn check_quartic_generic(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::QuarticGeneric;
    let (n, q) = (shape.n(), shape.q());
    if n % 2 == 0 || q % 4 != 1 || !is_prime(q) {
        return CriterionOutcome::inapplicable(ID);
    }
    let chi = QuarticCharacter::new(q).expect("q is a prime congruent to 1 mod 4");
    let mut counts = [0usize; 4];
    for &m in shape.multiplier_set().values() {
        let class = chi.class(m).expect("multipliers are units mod a prime q");
        counts[class.index() as usize] += 1;
    }
    let witness = Witness::QuarticCounts { counts };
    if counts[0] != counts[2] || counts[1] != counts[3] {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// Character of odd prime order `p = k+ + k-` when `q` is prime.
///
/// Both `1` and `-1` map to the trivial value, so the `p` summands over `M`
/// cannot hit every `p`-th root of unity once and the `M` sum is nonzero.
/// A zero sum over `S` needs every root equally often, so `p | n`.
pub fn check_odd_prime_order(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::OddPrimeOrder;
    let p = shape.k_plus() + shape.k_minus();
    if p % 2 == 0 || !is_prime(p) || !is_prime(shape.q()) {
        return CriterionOutcome::inapplicable(ID);
    }
    let witness = Witness::PrimeOrder {
        p,
        n_mod_p: shape.n() % p,
    };
    if shape.n() % p != 0 {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}
