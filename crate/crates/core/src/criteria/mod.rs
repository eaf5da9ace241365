//! Non-existence criteria for lattice tilings by quasi-crosses.
//!
//! Every check takes a [`QuasiCrossShape`] and reports whether it rules the
//! tiling out. A [`Status::RuledOut`] outcome always carries a [`Witness`]
//! from which the firing condition can be recomputed with plain modular
//! arithmetic. Checks are pure; only [`check_divisors`] needs outside
//! information, namely the verdicts for smaller dimensions.

mod characters;
mod divisors;
mod power;
mod structural;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::splitting::QuasiCrossShape;

pub use characters::{
    check_char4_literal, check_odd_prime_order, check_quadratic_balance, check_quartic_generic,
};
pub use divisors::check_divisors;
pub use power::{check_power_cube, check_power_square, check_vandermonde};
pub use structural::{check_geometry, check_kmo, check_psquare};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionId {
    Geometry,
    Kmo,
    Quadratic,
    Char4Literal,
    QuarticGeneric,
    OddPrimeOrder,
    PowerSquare,
    PowerCube,
    Vandermonde,
    Psquare,
    Divisors,
}

impl CriterionId {
    /// Reporting order: the first criterion in this list that fires is the
    /// one a verdict is attributed to.
    pub const ALL: [CriterionId; 11] = [
        CriterionId::Geometry,
        CriterionId::Kmo,
        CriterionId::Quadratic,
        CriterionId::Char4Literal,
        CriterionId::QuarticGeneric,
        CriterionId::OddPrimeOrder,
        CriterionId::PowerSquare,
        CriterionId::PowerCube,
        CriterionId::Vandermonde,
        CriterionId::Psquare,
        CriterionId::Divisors,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CriterionId::Geometry => "geometry",
            CriterionId::Kmo => "kmo",
            CriterionId::Quadratic => "quadratic",
            CriterionId::Char4Literal => "char4_literal",
            CriterionId::QuarticGeneric => "quartic_generic",
            CriterionId::OddPrimeOrder => "odd_prime_order",
            CriterionId::PowerSquare => "power_square",
            CriterionId::PowerCube => "power_cube",
            CriterionId::Vandermonde => "vandermonde",
            CriterionId::Psquare => "psquare",
            CriterionId::Divisors => "divisors",
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown criterion `{0}`")]
pub struct UnknownCriterion(pub String);

impl FromStr for CriterionId {
    type Err = UnknownCriterion;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CriterionId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownCriterion(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    RuledOut,
    Inconclusive,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::RuledOut => "ruled_out",
            Status::Inconclusive => "inconclusive",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Data that lets a criterion's conclusion be re-checked by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `bound = 2k+(k- + 1) - k-^2` against `capacity = n(k+ + k-)`.
    Geometry { bound: u64, capacity: u64 },
    Gcd { k_plus: u64, q: u64, gcd: u64 },
    /// Quadratic residues and non-residues among the multipliers.
    QuadraticCounts { residues: usize, non_residues: usize },
    /// `6^n mod q`.
    SixthPower { value: u64 },
    /// Multipliers per quartic class `i^0, i^1, i^2, i^3`.
    QuarticCounts { counts: [usize; 4] },
    /// `p = k+ + k-` and `n mod p`.
    PrimeOrder { p: u64, n_mod_p: u64 },
    /// `k+ = 4k - 1` and `kn mod 9`.
    SquareResidue { k: u64, kn_mod_9: u64 },
    /// `k+ = 4k + 2` and `n mod 8`.
    CubeResidue { k: u64, n_mod_8: u64 },
    /// `sum_M m^i != 0 (mod q)` for every `1 <= i <= through`.
    PowerSums { through: u64 },
    /// `sum_M m^i = 0 (mod q)` at this power.
    ZeroPowerSum { i: u64 },
    /// Splitters whose `p`-adic valuation is `level` would number
    /// `remainder / multipliers`, which is negative or not an integer.
    /// `level = e` stands for the multiples of `p^e`, where `p^e || q`.
    ValuationLayer {
        p: u64,
        level: u32,
        remainder: i64,
        multipliers: u64,
    },
    /// No nontrivial character of `Z_q^*`, a group of order `group_order`,
    /// vanishes on the `units` multipliers prime to `q` (or `units` does not
    /// divide `group_order`).
    UnitCharacters { units: u64, group_order: u64 },
    /// `d | q` has no prime factor `<= k+` and `(k+ + k-) d` does not divide `q - d`.
    DivisorIndivisible { d: u64, remainder: u64 },
    /// `d | q` as above and `Z_{q/d}` would have to split at dimension
    /// `reduced_n`, which is already known not to tile.
    DivisorRecursion { d: u64, reduced_n: u64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Geometry { bound, capacity } => write!(f, "bound={bound} capacity={capacity}"),
            Witness::Gcd { k_plus, q, gcd } => write!(f, "gcd({k_plus};{q})={gcd}"),
            Witness::QuadraticCounts {
                residues,
                non_residues,
            } => write!(f, "qr={residues} qnr={non_residues}"),
            Witness::SixthPower { value } => write!(f, "6^n={value}"),
            Witness::QuarticCounts { counts } => write!(
                f,
                "classes={}/{}/{}/{}",
                counts[0], counts[1], counts[2], counts[3]
            ),
            Witness::PrimeOrder { p, n_mod_p } => write!(f, "p={p} n_mod_p={n_mod_p}"),
            Witness::SquareResidue { k, kn_mod_9 } => write!(f, "k={k} kn_mod_9={kn_mod_9}"),
            Witness::CubeResidue { k, n_mod_8 } => write!(f, "k={k} n_mod_8={n_mod_8}"),
            Witness::PowerSums { through } => write!(f, "nonzero_power_sums=1..{through}"),
            Witness::ZeroPowerSum { i } => write!(f, "zero_power_sum_at={i}"),
            Witness::ValuationLayer {
                p,
                level,
                remainder,
                multipliers,
            } => write!(f, "p={p} level={level} count={remainder}/{multipliers}"),
            Witness::UnitCharacters { units, group_order } => {
                write!(f, "units={units} group_order={group_order}")
            }
            Witness::DivisorIndivisible { d, remainder } => {
                write!(f, "d={d} remainder={remainder}")
            }
            Witness::DivisorRecursion { d, reduced_n } => write!(f, "d={d} reduced_n={reduced_n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub criterion: CriterionId,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CriterionOutcome {
    pub(crate) fn ruled_out(criterion: CriterionId, witness: Witness) -> Self {
        Self {
            criterion,
            status: Status::RuledOut,
            witness: Some(witness),
        }
    }

    pub(crate) fn inconclusive(criterion: CriterionId, witness: Option<Witness>) -> Self {
        Self {
            criterion,
            status: Status::Inconclusive,
            witness,
        }
    }

    pub(crate) fn inapplicable(criterion: CriterionId) -> Self {
        Self {
            criterion,
            status: Status::Inapplicable,
            witness: None,
        }
    }

    pub fn is_ruled_out(&self) -> bool {
        self.status == Status::RuledOut
    }
}

/// What is known about one dimension, as seen by the recursive criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Existence {
    Tiles,
    NoTiling,
    Unknown,
}

/// Source of verdicts for smaller dimensions.
pub trait DimensionOracle {
    fn existence(&self, n: u64) -> Option<Existence>;
}

impl<F: Fn(u64) -> Option<Existence>> DimensionOracle for F {
    fn existence(&self, n: u64) -> Option<Existence> {
        self(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("no verdict available for dimension {reduced_n} (needed by {shape} with d = {d})")]
    MissingOracle { shape: String, d: u64, reduced_n: u64 },
}

/// Runs a single criterion.
pub fn evaluate(
    id: CriterionId,
    shape: &QuasiCrossShape,
    oracle: &dyn DimensionOracle,
) -> Result<CriterionOutcome, CriteriaError> {
    Ok(match id {
        CriterionId::Geometry => check_geometry(shape),
        CriterionId::Kmo => check_kmo(shape),
        CriterionId::Quadratic => check_quadratic_balance(shape),
        CriterionId::Char4Literal => check_char4_literal(shape),
        CriterionId::QuarticGeneric => check_quartic_generic(shape),
        CriterionId::OddPrimeOrder => check_odd_prime_order(shape),
        CriterionId::PowerSquare => check_power_square(shape),
        CriterionId::PowerCube => check_power_cube(shape),
        CriterionId::Vandermonde => check_vandermonde(shape),
        CriterionId::Psquare => check_psquare(shape),
        CriterionId::Divisors => return check_divisors(shape, oracle),
    })
}

/// Runs every criterion in reporting order.
pub fn evaluate_all(
    shape: &QuasiCrossShape,
    oracle: &dyn DimensionOracle,
) -> Result<Vec<CriterionOutcome>, CriteriaError> {
    CriterionId::ALL
        .into_iter()
        .map(|id| evaluate(id, shape, oracle))
        .collect()
}
