//! Quasi-cross shapes, multiplier sets and splittings of cyclic groups.
//!
//! A `(k+, k-, n)` quasi-cross lattice-tiles `R^n` exactly when the cyclic
//! group `Z_q`, `q = n(k+ + k-) + 1`, splits as `(M, S)` with the interval
//! multiplier set `M = [-k-, k+] \ {0}`: the products `m * s` are distinct,
//! nonzero and cover every nonzero residue. The tiling lattice is then the
//! kernel of `x -> sum x_i s_i (mod q)`, which [`lattice_basis`] writes out.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitmap::Bitmap;
use crate::numtheory::{gcd, reduce};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("arm lengths must satisfy 1 <= k_minus <= k_plus (got k_plus={k_plus}, k_minus={k_minus})")]
    ArmOrder { k_plus: u64, k_minus: u64 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("group order overflows 64 bits")]
    Overflow,
}

/// The arm lengths `(k+, k-)` of a quasi-cross, independent of dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arms {
    pub k_plus: u64,
    pub k_minus: u64,
}

impl Arms {
    pub fn new(k_plus: u64, k_minus: u64) -> Result<Self, ShapeError> {
        if k_minus == 0 || k_minus > k_plus {
            return Err(ShapeError::ArmOrder { k_plus, k_minus });
        }
        Ok(Self { k_plus, k_minus })
    }

    /// `k+ + k-`, the size of the multiplier set.
    pub fn total(&self) -> u64 {
        self.k_plus + self.k_minus
    }

    pub fn at(&self, n: u64) -> Result<QuasiCrossShape, ShapeError> {
        QuasiCrossShape::new(self.k_plus, self.k_minus, n)
    }

    /// The dimension whose group order is `q`, if there is one.
    pub fn dimension_for_order(&self, q: u64) -> Option<u64> {
        (q > 1 && (q - 1) % self.total() == 0).then(|| (q - 1) / self.total())
    }
}

impl fmt::Display for Arms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k_plus, self.k_minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuasiCrossShape {
    arms: Arms,
    n: u64,
    q: u64,
}

impl QuasiCrossShape {
    pub fn new(k_plus: u64, k_minus: u64, n: u64) -> Result<Self, ShapeError> {
        let arms = Arms::new(k_plus, k_minus)?;
        if n == 0 {
            return Err(ShapeError::ZeroDimension);
        }
        let q = n
            .checked_mul(arms.total())
            .and_then(|v| v.checked_add(1))
            .ok_or(ShapeError::Overflow)?;
        Ok(Self { arms, n, q })
    }

    pub fn arms(&self) -> Arms {
        self.arms
    }

    pub fn k_plus(&self) -> u64 {
        self.arms.k_plus
    }

    pub fn k_minus(&self) -> u64 {
        self.arms.k_minus
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Order of the cyclic group to split, `n(k+ + k-) + 1`.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn multiplier_set(&self) -> MultiplierSet {
        multiplier_set(self)
    }
}

impl fmt::Display for QuasiCrossShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.arms.k_plus, self.arms.k_minus, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error("group order must be at least 2 (got {0})")]
    TrivialGroup(u64),
    #[error("multiplier {m} is zero modulo {q}")]
    ZeroMultiplier { m: i64, q: u64 },
    #[error("multipliers {a} and {b} coincide modulo {q}")]
    DuplicateMultiplier { a: i64, b: i64, q: u64 },
    #[error("splitter {s} is outside [1, {}]", q - 1)]
    SplitterOutOfRange { s: u64, q: u64 },
    #[error("splitter {0} appears more than once")]
    DuplicateSplitter(u64),
    #[error("multiplier set is for modulus {multipliers} but splitting is over Z_{q}")]
    ModulusMismatch { multipliers: u64, q: u64 },
}

/// Multipliers as signed integers together with their residues mod `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierSet {
    q: u64,
    values: Vec<i64>,
    residues: Vec<u64>,
}

impl MultiplierSet {
    /// Any set of integers that are distinct and nonzero modulo `q`.
    pub fn new(q: u64, values: Vec<i64>) -> Result<Self, SplittingError> {
        if q < 2 {
            return Err(SplittingError::TrivialGroup(q));
        }
        let residues: Vec<u64> = values.iter().map(|&m| reduce(m, q)).collect();
        for (i, &r) in residues.iter().enumerate() {
            if r == 0 {
                return Err(SplittingError::ZeroMultiplier { m: values[i], q });
            }
            if let Some(j) = residues[..i].iter().position(|&x| x == r) {
                return Err(SplittingError::DuplicateMultiplier {
                    a: values[j],
                    b: values[i],
                    q,
                });
            }
        }
        Ok(Self { q, values, residues })
    }

    /// `[-k_minus, k_plus] \ {0}` reduced mod `q`, listed from `-k_minus` up.
    pub fn interval(k_plus: u64, k_minus: u64, q: u64) -> Result<Self, SplittingError> {
        let values = (-(k_minus as i64)..=k_plus as i64)
            .filter(|&m| m != 0)
            .collect();
        Self::new(q, values)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

pub fn multiplier_set(shape: &QuasiCrossShape) -> MultiplierSet {
    // q = n(k+ + k-) + 1 > k+ + k-, so the interval reduces injectively.
    MultiplierSet::interval(shape.k_plus(), shape.k_minus(), shape.q())
        .expect("interval multipliers are distinct and nonzero below q")
}

/// Why a structurally valid candidate fails to split `Z_q`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Defect {
    #[error("{m} * {s} is zero")]
    ZeroProduct { m: i64, s: u64 },
    #[error("collision at {residue}: {} * {} = {} * {}", first.0, first.1, second.0, second.1)]
    Collision {
        residue: u64,
        first: (i64, u64),
        second: (i64, u64),
    },
    #[error("residue {residue} is not covered")]
    Missed { residue: u64 },
}

/// A candidate splitting `(M, S)` of `Z_q`; splitters are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    q: u64,
    multipliers: MultiplierSet,
    splitters: Vec<u64>,
}

impl Splitting {
    pub fn new(
        q: u64,
        multipliers: MultiplierSet,
        mut splitters: Vec<u64>,
    ) -> Result<Self, SplittingError> {
        if multipliers.modulus() != q {
            return Err(SplittingError::ModulusMismatch {
                multipliers: multipliers.modulus(),
                q,
            });
        }
        if let Some(&s) = splitters.iter().find(|&&s| s == 0 || s >= q) {
            return Err(SplittingError::SplitterOutOfRange { s, q });
        }
        splitters.sort_unstable();
        if let Some(w) = splitters.windows(2).find(|w| w[0] == w[1]) {
            return Err(SplittingError::DuplicateSplitter(w[0]));
        }
        Ok(Self {
            q,
            multipliers,
            splitters,
        })
    }

    pub fn for_shape(shape: &QuasiCrossShape, splitters: Vec<u64>) -> Result<Self, SplittingError> {
        Self::new(shape.q(), shape.multiplier_set(), splitters)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn multipliers(&self) -> &MultiplierSet {
        &self.multipliers
    }

    pub fn splitters(&self) -> &[u64] {
        &self.splitters
    }

    pub fn verify(&self) -> Result<(), Defect> {
        verify_splitting(self)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }
}

/// Checks that the products `m * s` are distinct, nonzero and cover
/// `Z_q \ {0}`. Reports the first defect in splitter-major order.
pub fn verify_splitting(candidate: &Splitting) -> Result<(), Defect> {
    let q = candidate.q;
    let mut owner: Vec<Option<(i64, u64)>> = vec![None; q as usize];
    let mut covered = Bitmap::new(q as usize);
    for &s in &candidate.splitters {
        for (&m, &r) in candidate.multipliers.values.iter().zip(&candidate.multipliers.residues) {
            let product = ((r as u128 * s as u128) % q as u128) as usize;
            if product == 0 {
                return Err(Defect::ZeroProduct { m, s });
            }
            if covered.get(product) {
                return Err(Defect::Collision {
                    residue: product as u64,
                    first: owner[product].expect("covered residues have an owner"),
                    second: (m, s),
                });
            }
            covered.set(product);
            owner[product] = Some((m, s));
        }
    }
    match covered.first_clear_from(1, q as usize) {
        Some(residue) => Err(Defect::Missed {
            residue: residue as u64,
        }),
        None => Ok(()),
    }
}

/// One splitting of one quasi-cross shape, as persisted one per line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Certificate {
    pub q: u64,
    pub k_plus: u64,
    pub k_minus: u64,
    pub splitters: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("q = {q} is not of the form n({k_plus} + {k_minus}) + 1")]
    OrderMismatch { q: u64, k_plus: u64, k_minus: u64 },
    #[error(transparent)]
    Structure(#[from] SplittingError),
    #[error("certificate for q = {q} does not verify: {defect}")]
    Defect { q: u64, defect: Defect },
}

impl Certificate {
    pub fn from_splitting(arms: Arms, splitting: &Splitting) -> Self {
        Self {
            q: splitting.q(),
            k_plus: arms.k_plus,
            k_minus: arms.k_minus,
            splitters: splitting.splitters().to_vec(),
        }
    }

    pub fn arms(&self) -> Result<Arms, ShapeError> {
        Arms::new(self.k_plus, self.k_minus)
    }

    pub fn shape(&self) -> Result<QuasiCrossShape, CertificateError> {
        let arms = self.arms()?;
        let n = arms
            .dimension_for_order(self.q)
            .ok_or(CertificateError::OrderMismatch {
                q: self.q,
                k_plus: self.k_plus,
                k_minus: self.k_minus,
            })?;
        Ok(arms.at(n)?)
    }

    /// Rebuilds the splitting and checks it, without trusting the file.
    pub fn to_verified_splitting(&self) -> Result<Splitting, CertificateError> {
        let shape = self.shape()?;
        let splitting = Splitting::for_shape(&shape, self.splitters.clone())?;
        splitting
            .verify()
            .map_err(|defect| CertificateError::Defect { q: self.q, defect })?;
        Ok(splitting)
    }
}

/// Integer basis of a full-rank sublattice of `Z^n`, one vector per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Diagonal entries; the basis is lower triangular, so their product is
    /// the determinant.
    pub fn diagonal(&self) -> Vec<i64> {
        self.rows.iter().enumerate().map(|(i, r)| r[i]).collect()
    }
}

/// Basis of the tiling lattice `ker phi` for a verified splitting.
pub fn lattice_basis(splitting: &Splitting) -> Result<LatticeBasis, Defect> {
    splitting.verify()?;
    Ok(kernel_basis(splitting.q(), splitting.splitters()))
}

/// Hermite normal form basis of `{x in Z^n : sum x_i s_i = 0 (mod q)}`.
///
/// Row `j` has its last nonzero entry on the diagonal, `d_j = g_j / g_{j+1}`
/// where `g_j = gcd(q, s_0, ..., s_{j-1})`, and off-diagonal entries reduced
/// into `[0, d_i)`. The determinant is `q / gcd(q, s_0, ..., s_{n-1})`.
pub fn kernel_basis(q: u64, splitters: &[u64]) -> LatticeBasis {
    assert!(q >= 1);
    let n = splitters.len();
    let qi = q as i128;
    let s: Vec<i128> = splitters.iter().map(|&x| (x % q) as i128).collect();

    let mut rows: Vec<Vec<i128>> = Vec::with_capacity(n);
    // Invariant: sum coef[i] * s[i] = g (mod q) over the processed prefix.
    let mut coef: Vec<i128> = Vec::with_capacity(n);
    let mut g = qi;
    for j in 0..n {
        let g_next = gcd(g as u64, s[j] as u64) as i128;
        let d = g / g_next;

        let target = (-d * s[j]).rem_euclid(qi);
        debug_assert_eq!(target % g, 0);
        let t = target / g;
        let mut row: Vec<i128> = coef.iter().map(|&c| (c * t).rem_euclid(qi)).collect();
        row.push(d);
        row.resize(n, 0);
        rows.push(row);

        let (a, b) = bezout(g, s[j]);
        for c in coef.iter_mut() {
            *c = (*c * a).rem_euclid(qi);
        }
        coef.push(b.rem_euclid(qi));
        g = g_next;
    }

    for j in 0..n {
        for i in (0..j).rev() {
            let factor = rows[j][i].div_euclid(rows[i][i]);
            if factor != 0 {
                let (head, tail) = rows.split_at_mut(j);
                for (x, &y) in tail[0][..=i].iter_mut().zip(&head[i][..=i]) {
                    *x -= factor * y;
                }
            }
        }
    }

    LatticeBasis {
        rows: rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect(),
    }
}

// (a, b) with a*x + b*y = gcd(x, y) for nonnegative x, y.
fn bezout(x: i128, y: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (x, y);
    let (mut old_a, mut a) = (1i128, 0i128);
    let (mut old_b, mut b) = (0i128, 1i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_a, a) = (a, old_a - quotient * a);
        (old_b, b) = (b, old_b - quotient * b);
    }
    (old_a, old_b)
}
