//! Exact-cover search for splitter sets.
//!
//! Given `Z_q` and a multiplier set `M`, a splitter set `S` is a choice of
//! residues whose product sets `M * s` partition `Z_q \ {0}`. The search
//! always branches on the smallest uncovered residue `e`: every splitting
//! covers `e` with exactly one product `m * s`, so the candidates are the
//! splitters `s` with `e in M * s` whose whole product set is still free.
//! Each splitter set is therefore reached by exactly one path, which makes
//! the same walk usable for counting.
//!
//! Coverage lives in a bitmap that is restored on backtrack. Budgets are
//! counted in placed splitters (nodes); a wall-clock limit can be added but
//! only node budgets give reproducible outcomes.

use std::time::{Duration, Instant};

use crate::bitmap::Bitmap;
use crate::splitting::{MultiplierSet, Splitting};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }

    pub fn with_time(mut self, max_time: Duration) -> Self {
        self.max_time = Some(max_time);
        self
    }
}

/// Order in which candidate splitters for a residue are tried.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BranchOrder {
    #[default]
    Ascending,
    Descending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Nodes(u64),
    WallClock(Duration),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exhaustion {
    /// Every branch was closed without finding a splitting.
    TreeClosed,
    /// `|M|` does not divide `q - 1`, so no splitter set can exist.
    Indivisible { q: u64, multipliers: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Found(Splitting),
    Exhausted(Exhaustion),
    TimedOut(Limit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn splitting(&self) -> Option<&Splitting> {
        match &self.status {
            SearchStatus::Found(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOutcome {
    /// Splitter sets found. Exact only when `interrupted` is `None`.
    pub count: u64,
    pub interrupted: Option<Limit>,
    pub stats: SearchStats,
}

impl CountOutcome {
    pub fn exact(&self) -> Option<u64> {
        self.interrupted.is_none().then_some(self.count)
    }
}

/// Configurable splitter search over one `(q, M)`.
#[derive(Debug, Clone)]
pub struct SplitterSearch<'a> {
    q: u64,
    multipliers: &'a MultiplierSet,
    budget: Budget,
    order: BranchOrder,
}

impl<'a> SplitterSearch<'a> {
    pub fn new(multipliers: &'a MultiplierSet) -> Self {
        Self {
            q: multipliers.modulus(),
            multipliers,
            budget: Budget::unlimited(),
            order: BranchOrder::Ascending,
        }
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn order(mut self, order: BranchOrder) -> Self {
        self.order = order;
        self
    }

    pub fn find(&self) -> SearchOutcome {
        let start = Instant::now();
        if let Some(exhaustion) = self.indivisible() {
            return SearchOutcome {
                status: SearchStatus::Exhausted(exhaustion),
                stats: SearchStats::default(),
            };
        }
        let mut found = None;
        let (nodes, limit) = self.walk(start, |splitters| {
            found = Some(splitters.to_vec());
            false
        });
        let stats = SearchStats {
            nodes,
            elapsed: start.elapsed(),
        };
        let status = match (found, limit) {
            (Some(splitters), _) => {
                let splitting = Splitting::new(self.q, self.multipliers.clone(), splitters)
                    .expect("search only emits in-range, distinct splitters");
                assert!(
                    splitting.verify().is_ok(),
                    "search produced a non-splitting for q = {}",
                    self.q
                );
                SearchStatus::Found(splitting)
            }
            (None, Some(limit)) => SearchStatus::TimedOut(limit),
            (None, None) => SearchStatus::Exhausted(Exhaustion::TreeClosed),
        };
        SearchOutcome { status, stats }
    }

    pub fn count(&self) -> CountOutcome {
        let start = Instant::now();
        if self.indivisible().is_some() {
            return CountOutcome {
                count: 0,
                interrupted: None,
                stats: SearchStats::default(),
            };
        }
        let mut count = 0;
        let (nodes, interrupted) = self.walk(start, |_| {
            count += 1;
            true
        });
        CountOutcome {
            count,
            interrupted,
            stats: SearchStats {
                nodes,
                elapsed: start.elapsed(),
            },
        }
    }

    fn indivisible(&self) -> Option<Exhaustion> {
        let k = self.multipliers.len();
        (k == 0 || (self.q - 1) % k as u64 != 0).then_some(Exhaustion::Indivisible {
            q: self.q,
            multipliers: k,
        })
    }

    /// Depth-first walk over all splitter sets. `visit` receives each
    /// complete set and returns whether to keep going. Returns the node
    /// count and the limit that stopped the walk, if any.
    fn walk(&self, start: Instant, mut visit: impl FnMut(&[u64]) -> bool) -> (u64, Option<Limit>) {
        let q = self.q as usize;
        let residues = self.multipliers.residues();

        // products[s] = M * s, or empty when s can never be a splitter
        // because some product is zero or two products coincide.
        let mut products: Vec<Vec<u32>> = vec![Vec::new(); q];
        let mut seen = Bitmap::new(q);
        for s in 1..q {
            let row: Vec<u32> = residues
                .iter()
                .map(|&m| ((m as u128 * s as u128) % q as u128) as u32)
                .collect();
            let usable = row.iter().all(|&p| {
                let fresh = p != 0 && !seen.get(p as usize);
                if fresh {
                    seen.set(p as usize);
                }
                fresh
            });
            for &p in &row {
                seen.clear(p as usize);
            }
            if usable {
                products[s] = row;
            }
        }
        let mut preimages: Vec<Vec<u32>> = vec![Vec::new(); q];
        for (s, row) in products.iter().enumerate() {
            for &p in row {
                preimages[p as usize].push(s as u32);
            }
        }
        if self.order == BranchOrder::Descending {
            preimages.iter_mut().for_each(|c| c.reverse());
        }

        struct Frame {
            residue: usize,
            next: usize,
            chosen: Option<u32>,
        }

        let mut covered = Bitmap::new(q);
        covered.set(0);
        let mut nodes = 0u64;
        let mut stack = vec![Frame {
            residue: 1,
            next: 0,
            chosen: None,
        }];

        while let Some(top) = stack.last_mut() {
            if let Some(s) = top.chosen.take() {
                for &p in &products[s as usize] {
                    covered.clear(p as usize);
                }
            }
            let candidates = &preimages[top.residue];
            let mut placed = None;
            while top.next < candidates.len() {
                let s = candidates[top.next];
                top.next += 1;
                if products[s as usize].iter().all(|&p| !covered.get(p as usize)) {
                    placed = Some(s);
                    break;
                }
            }
            let Some(s) = placed else {
                stack.pop();
                continue;
            };

            nodes += 1;
            if let Some(max) = self.budget.max_nodes {
                if nodes > max {
                    return (nodes - 1, Some(Limit::Nodes(max)));
                }
            }
            if let Some(max) = self.budget.max_time {
                if nodes % 4096 == 0 && start.elapsed() > max {
                    return (nodes, Some(Limit::WallClock(max)));
                }
            }

            for &p in &products[s as usize] {
                covered.set(p as usize);
            }
            top.chosen = Some(s);
            let from = top.residue + 1;
            match covered.first_clear_from(from, q) {
                Some(residue) => stack.push(Frame {
                    residue,
                    next: 0,
                    chosen: None,
                }),
                None => {
                    let splitters: Vec<u64> =
                        stack.iter().filter_map(|f| f.chosen).map(u64::from).collect();
                    if !visit(&splitters) {
                        return (nodes, None);
                    }
                }
            }
        }
        (nodes, None)
    }
}

pub fn find_splitting(multipliers: &MultiplierSet, budget: Budget) -> SearchOutcome {
    SplitterSearch::new(multipliers).budget(budget).find()
}

pub fn count_splittings(multipliers: &MultiplierSet, budget: Budget) -> CountOutcome {
    SplitterSearch::new(multipliers).budget(budget).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::QuasiCrossShape;

    fn interval(k_plus: u64, k_minus: u64, q: u64) -> MultiplierSet {
        MultiplierSet::interval(k_plus, k_minus, q).unwrap()
    }

    #[test]
    fn finds_trivial_splitting() {
        let outcome = find_splitting(&interval(3, 1, 5), Budget::unlimited());
        assert_eq!(outcome.splitting().unwrap().splitters(), &[1]);
        assert_eq!(outcome.stats.nodes, 1);
    }

    #[test]
    fn finds_splitting_of_z25() {
        let outcome = find_splitting(&interval(3, 1, 25), Budget::nodes(1_000_000));
        let s = outcome.splitting().expect("Z_25 splits");
        assert_eq!(s.splitters().len(), 6);
        assert!(s.is_valid());
    }

    #[test]
    fn exhausts_z13() {
        let outcome = find_splitting(&interval(3, 1, 13), Budget::unlimited());
        assert_eq!(outcome.status, SearchStatus::Exhausted(Exhaustion::TreeClosed));
    }

    #[test]
    fn indivisible_order_is_exhausted_immediately() {
        let outcome = find_splitting(&interval(3, 1, 12), Budget::unlimited());
        assert_eq!(
            outcome.status,
            SearchStatus::Exhausted(Exhaustion::Indivisible { q: 12, multipliers: 4 })
        );
        assert_eq!(outcome.stats.nodes, 0);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_splittings(&interval(3, 1, 5), Budget::unlimited()).exact(), Some(4));
        assert_eq!(count_splittings(&interval(3, 1, 13), Budget::unlimited()).exact(), Some(0));
        assert_eq!(count_splittings(&interval(3, 2, 11), Budget::unlimited()).exact(), Some(0));
    }

    #[test]
    fn node_budget_interrupts() {
        let m = QuasiCrossShape::new(3, 1, 6).unwrap().multiplier_set();
        let counted = count_splittings(&m, Budget::nodes(3));
        assert_eq!(counted.interrupted, Some(Limit::Nodes(3)));
        assert_eq!(counted.exact(), None);
        assert_eq!(counted.stats.nodes, 3);
        let found = find_splitting(&m, Budget::nodes(1));
        assert_eq!(found.status, SearchStatus::TimedOut(Limit::Nodes(1)));
    }

    #[test]
    fn orderings_agree() {
        for q in [5u64, 9, 13, 17, 21, 25, 29, 33] {
            let m = interval(3, 1, q);
            let up = SplitterSearch::new(&m).find();
            let down = SplitterSearch::new(&m).order(BranchOrder::Descending).find();
            assert_eq!(up.splitting().is_some(), down.splitting().is_some(), "q = {q}");
            let c_up = SplitterSearch::new(&m).count().exact();
            let c_down = SplitterSearch::new(&m).order(BranchOrder::Descending).count().exact();
            assert_eq!(c_up, c_down);
        }
    }

    #[test]
    fn brute_force_count_agrees_on_tiny_groups() {
        // enumerate every subset of size (q-1)/|M| directly
        fn brute(m: &MultiplierSet) -> u64 {
            let q = m.modulus();
            let k = m.len() as u64;
            if (q - 1) % k != 0 {
                return 0;
            }
            let size = ((q - 1) / k) as u32;
            (0u64..1 << (q - 1))
                .filter(|mask| mask.count_ones() == size)
                .filter(|mask| {
                    let splitters: Vec<u64> = (1..q).filter(|s| mask >> (s - 1) & 1 == 1).collect();
                    Splitting::new(q, m.clone(), splitters).unwrap().is_valid()
                })
                .count() as u64
        }
        for q in 2..=17u64 {
            for values in [vec![-1, 1, 2, 3], vec![1, 2], vec![-1, 1], vec![-2, -1, 1, 2, 3]] {
                let Ok(m) = MultiplierSet::new(q, values) else { continue };
                assert_eq!(
                    count_splittings(&m, Budget::unlimited()).exact(),
                    Some(brute(&m)),
                    "q = {q}, M = {:?}",
                    m.values()
                );
            }
        }
    }
}
