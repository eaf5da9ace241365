//! Divisor recursion.
//!
//! Let `K = k+ + k-` and let `d | q` with `1 < d < q` have no prime factor
//! `<= k+`. Every multiplier is then a unit modulo each prime of `d`, so any
//! splitter hitting a multiple of `d` is itself a multiple of `d`, and those
//! splitters divided by `d` split `Z_{q/d}`. Hence:
//!
//! * `K d` must divide `q - d`, otherwise no tiling exists;
//! * the reduced dimension `n' = (q - d) / (K d)` must tile as well, so a
//!   known non-tiling at `n'` rules out `n`.
//!
//! Looping over every such divisor, prime powers included, covers a family
//! of congruence statements without separate code paths:
//!
//! * the single large divisor statement: when `n < d < q`, `(q - d) / (K d)`
//!   lies strictly between 0 and 1, so the divisibility test fails;
//! * the residue-class statements `Kn + 1 = r u (mod r * k+#)` with
//!   `gcd(u, k+#) = 1`, which are that statement with `d = q / r`, and the
//!   `(3,2)` and `(4,1)` congruence lists that follow from them;
//! * the prime statement for `p > k+`, `p != 1 (mod K)`,
//!   `n = -K^{-1} (mod p)`, which is `d = p` failing divisibility;
//! * upward propagation to `n' = ((Kn + 1) p^i - 1) / K` for primes
//!   `p = 1 (mod K)`: there `q' = q p^i` and `d = p^i` reduces straight back
//!   to `n`.
//!
//! Every reachable `n'` is strictly smaller than `n` because `d > 1`, so an
//! ascending pass over dimensions always has the verdict it needs.

use crate::numtheory::factorize;
use crate::splitting::QuasiCrossShape;

use super::{CriteriaError, CriterionId, CriterionOutcome, DimensionOracle, Existence, Witness};

pub fn check_divisors(
    shape: &QuasiCrossShape,
    oracle: &dyn DimensionOracle,
) -> Result<CriterionOutcome, CriteriaError> {
    const ID: CriterionId = CriterionId::Divisors;
    let (kp, q) = (shape.k_plus(), shape.q());
    let total = shape.k_plus() + shape.k_minus();

    // gcd(d, k+#) = 1 exactly when every prime of d exceeds k+.
    let divisors: Vec<u64> = factorize(q)
        .divisors_with_primes(|p| p > kp)
        .into_iter()
        .filter(|&d| d > 1 && d < q)
        .collect();
    if divisors.is_empty() {
        return Ok(CriterionOutcome::inapplicable(ID));
    }

    for d in divisors {
        let remainder = (q - d) % (total * d);
        if remainder != 0 {
            return Ok(CriterionOutcome::ruled_out(
                ID,
                Witness::DivisorIndivisible { d, remainder },
            ));
        }
        let reduced_n = (q - d) / (total * d);
        match oracle.existence(reduced_n) {
            None => {
                return Err(CriteriaError::MissingOracle {
                    shape: shape.to_string(),
                    d,
                    reduced_n,
                })
            }
            Some(Existence::NoTiling) => {
                return Ok(CriterionOutcome::ruled_out(
                    ID,
                    Witness::DivisorRecursion { d, reduced_n },
                ))
            }
            Some(Existence::Tiles | Existence::Unknown) => {}
        }
    }
    Ok(CriterionOutcome::inconclusive(ID, None))
}
