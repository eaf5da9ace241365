use serde::Serialize;

use crate::criteria::CriterionId;
use crate::splitting::Arms;

use super::{Classification, VerdictStatus};

/// Moduli for which per-residue-class statistics are reported.
pub const RESIDUE_MODULI: [u64; 3] = [3, 4, 9];
/// Moduli for which the residues of surviving dimensions are listed.
pub const SURVIVOR_MODULI: [u64; 3] = [3, 12, 36];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueLine {
    pub modulus: u64,
    pub residue: u64,
    pub total: usize,
    pub ruled_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub k_plus: u64,
    pub k_minus: u64,
    pub n_max: u64,
    pub tiles: usize,
    pub no_tiling: usize,
    pub unknown: usize,
    pub unknown_dimensions: Vec<u64>,
    /// How often each criterion fires, counted independently.
    pub firings: Vec<(CriterionId, usize)>,
    /// How many verdicts each criterion is credited with (first to fire).
    pub attributions: Vec<(CriterionId, usize)>,
    pub residue_lines: Vec<ResidueLine>,
    /// Residues of the dimensions `n >= 2` that are not ruled out.
    pub survivor_residues: Vec<(u64, Vec<u64>)>,
}

impl Summary {
    pub fn firing_count(&self, id: CriterionId) -> usize {
        self.firings
            .iter()
            .find(|(c, _)| *c == id)
            .map_or(0, |(_, count)| *count)
    }

    pub fn arms(&self) -> Arms {
        Arms {
            k_plus: self.k_plus,
            k_minus: self.k_minus,
        }
    }
}

pub fn summarize(classification: &Classification) -> Summary {
    let dims = &classification.dimensions;
    let mut tiles = 0;
    let mut no_tiling = 0;
    let mut unknown_dimensions = Vec::new();
    let mut firings: Vec<(CriterionId, usize)> = CriterionId::ALL.iter().map(|&id| (id, 0)).collect();
    let mut attributions = firings.clone();

    for d in dims {
        match &d.verdict.status {
            VerdictStatus::Tiles(_) => tiles += 1,
            VerdictStatus::NoTiling { criterion, .. } => {
                no_tiling += 1;
                bump(&mut attributions, *criterion);
            }
            VerdictStatus::Unknown => unknown_dimensions.push(d.verdict.n),
        }
        for o in d.fired() {
            bump(&mut firings, o.criterion);
        }
    }

    let mut residue_lines = Vec::new();
    for modulus in RESIDUE_MODULI {
        for residue in 0..modulus {
            let in_class = dims.iter().filter(|d| d.verdict.n % modulus == residue);
            let (total, ruled_out) = in_class.fold((0, 0), |(t, r), d| {
                (t + 1, r + usize::from(d.verdict.is_no_tiling()))
            });
            residue_lines.push(ResidueLine {
                modulus,
                residue,
                total,
                ruled_out,
            });
        }
    }

    let survivor_residues = SURVIVOR_MODULI
        .iter()
        .map(|&m| {
            let mut residues: Vec<u64> = dims
                .iter()
                .filter(|d| d.verdict.n >= 2 && !d.verdict.is_no_tiling())
                .map(|d| d.verdict.n % m)
                .collect();
            residues.sort_unstable();
            residues.dedup();
            (m, residues)
        })
        .collect();

    Summary {
        k_plus: classification.arms.k_plus,
        k_minus: classification.arms.k_minus,
        n_max: dims.len() as u64,
        tiles,
        no_tiling,
        unknown: unknown_dimensions.len(),
        unknown_dimensions,
        firings,
        attributions,
        residue_lines,
        survivor_residues,
    }
}

fn bump(counts: &mut [(CriterionId, usize)], id: CriterionId) {
    if let Some(entry) = counts.iter_mut().find(|(c, _)| *c == id) {
        entry.1 += 1;
    }
}
