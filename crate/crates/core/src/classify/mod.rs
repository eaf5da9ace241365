//! Dimension-by-dimension classification for one quasi-cross shape.
//!
//! Each dimension `n` gets a [`Verdict`]: it tiles (trivially at `n = 1`,
//! by a stored certificate, or by the external registry), it is ruled out
//! by the first criterion that fires, or it stays unknown. Existence is
//! never guessed.
//!
//! The divisor criterion consults verdicts of smaller dimensions only
//! (`n' = (q - d) / ((k+ + k-) d) < n` since `d > 1`), so one ascending pass
//! reaches the same fixpoint as iterating to convergence. The remaining
//! criteria are independent per dimension and are evaluated in parallel
//! first; the output does not depend on the thread count.

mod report;
mod store;
mod summary;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{
    self, CriteriaError, CriterionId, CriterionOutcome, Existence, Status, Witness,
};
use crate::splitting::{Arms, Certificate, CertificateError, QuasiCrossShape};

pub use report::{render_check, render_summary, render_verdicts, Format};
pub use store::{load_certificates, load_registry, store_certificate, Registry, StoreError};
pub use summary::{summarize, ResidueLine, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TilingSource {
    Trivial,
    Certificate,
    Registry,
}

impl TilingSource {
    pub fn as_str(self) -> &'static str {
        match self {
            TilingSource::Trivial => "trivial",
            TilingSource::Certificate => "certificate",
            TilingSource::Registry => "registry",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    Tiles(TilingSource),
    NoTiling {
        criterion: CriterionId,
        witness: Witness,
    },
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub n: u64,
    pub q: u64,
    pub status: VerdictStatus,
}

impl Verdict {
    pub fn existence(&self) -> Existence {
        match self.status {
            VerdictStatus::Tiles(_) => Existence::Tiles,
            VerdictStatus::NoTiling { .. } => Existence::NoTiling,
            VerdictStatus::Unknown => Existence::Unknown,
        }
    }

    pub fn is_unknown(&self) -> bool {
        self.status == VerdictStatus::Unknown
    }

    pub fn is_no_tiling(&self) -> bool {
        matches!(self.status, VerdictStatus::NoTiling { .. })
    }
}

/// Verdict for one dimension plus every criterion outcome behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub verdict: Verdict,
    pub outcomes: Vec<CriterionOutcome>,
}

impl DimensionReport {
    pub fn fired(&self) -> impl Iterator<Item = &CriterionOutcome> {
        self.outcomes.iter().filter(|o| o.is_ruled_out())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub arms: Arms,
    pub dimensions: Vec<DimensionReport>,
}

impl Classification {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.dimensions.iter().map(|d| &d.verdict)
    }

    pub fn get(&self, n: u64) -> Option<&DimensionReport> {
        n.checked_sub(1).and_then(|i| self.dimensions.get(i as usize))
    }

    pub fn unknown(&self) -> Vec<u64> {
        self.verdicts().filter(|v| v.is_unknown()).map(|v| v.n).collect()
    }

    pub fn no_tiling(&self) -> Vec<u64> {
        self.verdicts().filter(|v| v.is_no_tiling()).map(|v| v.n).collect()
    }

    /// Dimensions where `id` fires, regardless of attribution.
    pub fn fired_by(&self, id: CriterionId) -> Vec<u64> {
        self.dimensions
            .iter()
            .filter(|d| d.fired().any(|o| o.criterion == id))
            .map(|d| d.verdict.n)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Criteria to run, in attribution order.
    pub criteria: Vec<CriterionId>,
    /// Worker threads for the per-dimension criteria; `None` uses all cores.
    pub threads: Option<usize>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            criteria: CriterionId::ALL.to_vec(),
            threads: None,
        }
    }
}

impl ClassifyOptions {
    pub fn with_criteria(mut self, criteria: Vec<CriterionId>) -> Self {
        self.criteria = criteria;
        self
    }

    pub fn with_threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("max dimension must be at least 1")]
    EmptyRange,
    #[error("registry is for shape ({}, {}) but classification is for {arms}", registry.k_plus, registry.k_minus)]
    RegistryMismatch { registry: Arms, arms: Arms },
    #[error("stored certificate is invalid: {0}")]
    Certificate(#[from] CertificateError),
    #[error(
        "contradiction at n = {n}: tiling from {} but {criterion} rules it out ({witness})",
        tiling.as_str()
    )]
    Contradiction {
        n: u64,
        tiling: TilingSource,
        criterion: CriterionId,
        witness: Witness,
    },
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error("group order overflows for n = {0}")]
    Overflow(u64),
    #[error("failed to start worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

pub fn classify_range(
    arms: Arms,
    n_max: u64,
    registry: Option<&Registry>,
    certificates: &[Certificate],
    options: &ClassifyOptions,
) -> Result<Classification, ClassifyError> {
    if n_max == 0 {
        return Err(ClassifyError::EmptyRange);
    }
    let registered: BTreeSet<u64> = match registry {
        Some(r) if r.arms() != arms => {
            return Err(ClassifyError::RegistryMismatch {
                registry: r.arms(),
                arms,
            })
        }
        Some(r) => r.dimensions.iter().copied().collect(),
        None => BTreeSet::new(),
    };
    let mut certified = BTreeSet::new();
    for cert in certificates.iter().filter(|c| c.arms() == Ok(arms)) {
        let splitting = cert.to_verified_splitting()?;
        certified.insert((splitting.q() - 1) / arms.total());
    }

    let shapes: Vec<QuasiCrossShape> = (1..=n_max)
        .map(|n| arms.at(n).map_err(|_| ClassifyError::Overflow(n)))
        .collect::<Result<_, _>>()?;

    // Everything except the divisor recursion is independent per dimension.
    let local = |shape: &QuasiCrossShape| -> Vec<Option<CriterionOutcome>> {
        options
            .criteria
            .iter()
            .map(|&id| {
                (id != CriterionId::Divisors).then(|| {
                    criteria::evaluate(id, shape, &|_: u64| None).expect("only divisors consult the oracle")
                })
            })
            .collect()
    };
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = options.threads {
            builder = builder.num_threads(t.max(1));
        }
        builder.build()?
    };
    let mut partial: Vec<Vec<Option<CriterionOutcome>>> =
        pool.install(|| shapes.par_iter().map(local).collect());

    let mut existence: BTreeMap<u64, Existence> = BTreeMap::new();
    let mut dimensions = Vec::with_capacity(shapes.len());
    for (shape, slots) in shapes.iter().zip(partial.iter_mut()) {
        let n = shape.n();
        for (slot, &id) in slots.iter_mut().zip(&options.criteria) {
            if slot.is_none() && id == CriterionId::Divisors {
                let oracle = |m: u64| existence.get(&m).copied();
                *slot = Some(criteria::check_divisors(shape, &oracle)?);
            }
        }
        let outcomes: Vec<CriterionOutcome> = std::mem::take(slots).into_iter().flatten().collect();

        let source = if n == 1 {
            Some(TilingSource::Trivial)
        } else if certified.contains(&n) {
            Some(TilingSource::Certificate)
        } else if registered.contains(&n) {
            Some(TilingSource::Registry)
        } else {
            None
        };
        let first_fired = outcomes.iter().find(|o| o.status == Status::RuledOut);
        let status = match (source, first_fired) {
            (Some(source), Some(fired)) => {
                return Err(ClassifyError::Contradiction {
                    n,
                    tiling: source,
                    criterion: fired.criterion,
                    witness: fired.witness.clone().expect("ruled-out outcomes carry a witness"),
                })
            }
            (Some(source), None) => VerdictStatus::Tiles(source),
            (None, Some(fired)) => VerdictStatus::NoTiling {
                criterion: fired.criterion,
                witness: fired.witness.clone().expect("ruled-out outcomes carry a witness"),
            },
            (None, None) => VerdictStatus::Unknown,
        };
        let verdict = Verdict {
            n,
            q: shape.q(),
            status,
        };
        existence.insert(n, verdict.existence());
        dimensions.push(DimensionReport { verdict, outcomes });
    }

    Ok(Classification { arms, dimensions })
}
