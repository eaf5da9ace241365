//! Cross-checks between the search, the criteria and plain arithmetic.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::sample::subsequence;

use quasicross::classify::{classify_range, Classification, ClassifyOptions, Registry, VerdictStatus};
use quasicross::criteria::{CriterionId, Witness};
use quasicross::numtheory::{legendre, QuarticCharacter};
use quasicross::search::{find_splitting, Budget, SearchStatus};
use quasicross::splitting::{kernel_basis, lattice_basis, Arms, QuasiCrossShape, Splitting};

use common::{det_bareiss, gcd_naive, is_prime_naive, pow_naive, residue, splits_naive, squares};

fn all_arms(max_k_plus: u64) -> Vec<Arms> {
    (1..=max_k_plus)
        .flat_map(|kp| (1..=kp).map(move |km| Arms::new(kp, km).unwrap()))
        .collect()
}

fn classify(arms: Arms, n_max: u64) -> Classification {
    classify_range(arms, n_max, None, &[], &ClassifyOptions::default()).unwrap()
}

/// Splittings found by search for every shape with `k+ <= 6` and `q <= q_max`.
fn found_splittings(q_max: u64) -> Vec<(QuasiCrossShape, Option<Splitting>)> {
    let mut out = Vec::new();
    for arms in all_arms(6) {
        for n in (1..).take_while(|n| n * arms.total() + 1 <= q_max) {
            let shape = arms.at(n).unwrap();
            let outcome = find_splitting(&shape.multiplier_set(), Budget::nodes(2_000_000));
            let found = match outcome.status {
                SearchStatus::Found(s) => Some(s),
                SearchStatus::Exhausted(_) => None,
                SearchStatus::TimedOut(_) => continue,
            };
            out.push((shape, found));
        }
    }
    out
}

#[test]
fn ruled_out_dimensions_have_no_splitting() {
    let mut by_arms: BTreeMap<Arms, Classification> = BTreeMap::new();
    let mut checked = 0;
    for (shape, found) in found_splittings(80) {
        let c = by_arms
            .entry(shape.arms())
            .or_insert_with(|| classify(shape.arms(), (80 - 1) / shape.arms().total()));
        let verdict = &c.get(shape.n()).unwrap().verdict;
        if let Some(s) = found {
            checked += 1;
            assert!(!verdict.is_no_tiling(), "{shape} splits as {:?} but {:?}", s.splitters(), verdict.status);
        }
    }
    assert!(checked > 20);
}

#[test]
fn unit_multiples_of_a_splitting_split() {
    for (shape, found) in found_splittings(80) {
        let Some(s) = found else { continue };
        let q = shape.q();
        for u in (1..q).filter(|&u| gcd_naive(u, q) == 1) {
            let scaled: Vec<u64> = s.splitters().iter().map(|&x| x * u % q).collect();
            let t = Splitting::for_shape(&shape, scaled).unwrap();
            assert!(t.is_valid(), "{shape}: {u} * {:?}", s.splitters());
        }
    }
}

#[test]
fn lattice_basis_for_every_found_splitting() {
    let mut checked = 0;
    for (shape, found) in found_splittings(200) {
        let Some(s) = found else { continue };
        let basis = lattice_basis(&s).unwrap();
        assert_eq!(basis.dimension(), shape.n() as usize);
        let det = det_bareiss(basis.rows());
        assert_eq!(det.magnitude(), &shape.q().into(), "{shape}");
        for row in basis.rows() {
            let phi: i128 = row.iter().zip(s.splitters()).map(|(&x, &y)| x as i128 * y as i128).sum();
            assert_eq!(phi.rem_euclid(shape.q() as i128), 0, "{shape}: {row:?}");
        }
        checked += 1;
    }
    assert!(checked > 40, "{checked}");
}

/// Recomputes the firing condition behind a witness without library code.
fn witness_holds(shape: &QuasiCrossShape, w: &Witness, verdicts: &Classification) -> bool {
    let (kp, km, n, q) = (shape.k_plus(), shape.k_minus(), shape.n(), shape.q());
    let k = kp + km;
    let multipliers: Vec<i64> = (-(km as i64)..=kp as i64).filter(|&m| m != 0).collect();
    match *w {
        Witness::Geometry { bound, capacity } => {
            bound == 2 * kp * (km + 1) - km * km && capacity == n * k && bound > capacity
        }
        Witness::Gcd { k_plus, q: wq, gcd } => {
            km + 1 == kp && k_plus == kp && wq == q && gcd == 1 && gcd_naive(kp, q) == 1
        }
        Witness::QuadraticCounts { residues, non_residues } => {
            let sq = squares(q);
            let r = multipliers.iter().filter(|&&m| sq[residue(m, q) as usize]).count();
            is_prime_naive(q) && n % 2 == 1 && r == residues && k as usize - r == non_residues && r != non_residues
        }
        Witness::SixthPower { value } => {
            (kp, km) == (3, 1) && n % 2 == 1 && is_prime_naive(q) && pow_naive(6, n, q) == value && value != 1
        }
        Witness::QuarticCounts { counts } => {
            if !(is_prime_naive(q) && q % 4 == 1 && n % 2 == 1) {
                return false;
            }
            let r = (2..q).find(|x| x * x % q == q - 1).unwrap();
            let mut recount = [0usize; 4];
            for &m in &multipliers {
                let t = pow_naive(residue(m, q), (q - 1) / 4, q);
                let c = (0..4).find(|&c| pow_naive(r, c, q) == t).unwrap();
                recount[c as usize] += 1;
            }
            recount == counts && (counts[0] != counts[2] || counts[1] != counts[3])
        }
        Witness::PrimeOrder { p, n_mod_p } => {
            p == k && p % 2 == 1 && is_prime_naive(p) && is_prime_naive(q) && n % p == n_mod_p && n_mod_p != 0
        }
        Witness::SquareResidue { k: j, kn_mod_9 } => {
            km == 1 && kp + 1 == 4 * j && j * n % 9 == kn_mod_9 && [5, 8].contains(&kn_mod_9)
        }
        Witness::CubeResidue { k: j, n_mod_8 } => {
            km == 1 && j >= 1 && kp == 4 * j + 2 && n % 8 == n_mod_8 && [3, 7].contains(&n_mod_8)
        }
        Witness::PowerSums { through } => {
            through == n
                && is_prime_naive(q)
                && n < q - 1
                && (1..=n).all(|i| multipliers.iter().map(|&m| pow_naive(residue(m, q), i, q)).sum::<u64>() % q != 0)
        }
        Witness::ZeroPowerSum { .. } => false,
        Witness::ValuationLayer { p, level, remainder, multipliers: per } => {
            let e = (1..).take_while(|&i| q % p.pow(i) == 0).count() as u32;
            let gated = is_prime_naive(p) && p <= kp && kp < p * p && e >= 2;
            gated && layer_failure(&multipliers, p, e, q) == Some((level, remainder, per))
        }
        Witness::UnitCharacters { units, group_order } => {
            let group: Vec<u64> = (1..q).filter(|&x| gcd_naive(x, q) == 1).collect();
            let a: Vec<u64> = multipliers.iter().map(|&m| residue(m, q)).filter(|&m| gcd_naive(m, q) == 1).collect();
            let gated = (2..=kp).any(|p| is_prime_naive(p) && kp < p * p && q % (p * p) == 0);
            gated
                && units == a.len() as u64
                && group_order == group.len() as u64
                && units > 1
                && (group_order % units != 0 || group.len() > 400 || group_matrix_nonsingular(q, &group, &a))
        }
        Witness::DivisorIndivisible { d, remainder } => {
            let primorial: u64 = (2..=kp).filter(|&p| is_prime_naive(p)).product();
            1 < d && d < q && q % d == 0 && gcd_naive(d, primorial) == 1 && (q - d) % (k * d) == remainder && remainder != 0
        }
        Witness::DivisorRecursion { d, reduced_n } => {
            let primorial: u64 = (2..=kp).filter(|&p| is_prime_naive(p)).product();
            1 < d
                && d < q
                && q % d == 0
                && gcd_naive(d, primorial) == 1
                && q - d == k * d * reduced_n
                && reduced_n < n
                && verdicts.get(reduced_n).unwrap().verdict.is_no_tiling()
        }
    }
}

/// Counts residues by `p`-adic valuation and peels off the splitter count on
/// each level; returns the first level where the count breaks.
fn layer_failure(multipliers: &[i64], p: u64, e: u32, q: u64) -> Option<(u32, i64, u64)> {
    let level_of = |x: u64| (0..e).find(|&i| x % p.pow(i + 1) != 0).unwrap_or(e);
    let mut residues_on = vec![0i64; e as usize + 1];
    for x in 1..q {
        residues_on[level_of(x) as usize] += 1;
    }
    let v: Vec<u32> = multipliers.iter().map(|&m| level_of(m.unsigned_abs())).collect();
    let mut splitters_on: Vec<i64> = Vec::new();
    for level in 0..=e {
        let mut rest = residues_on[level as usize];
        for (below, &count) in splitters_on.iter().enumerate() {
            let reach = v.iter().filter(|&&k| (below as u32 + k).min(e) == level).count() as i64;
            rest -= reach * count;
        }
        let per = v.iter().filter(|&&k| k == 0 || level == e).count() as i64;
        if rest < 0 || rest % per != 0 {
            return Some((level, rest, per as u64));
        }
        splitters_on.push(rest / per);
    }
    None
}

/// Whether the matrix `[1_A(x / y)]` over the unit group is invertible; its
/// eigenvalues are the character sums of `A`. Elimination is done modulo a
/// large prime, so a `true` is exact.
fn group_matrix_nonsingular(q: u64, group: &[u64], a: &[u64]) -> bool {
    const P: u64 = 1_000_000_007;
    let inv = |y: u64| (1..q).find(|&z| z * y % q == 1).unwrap();
    let mut m: Vec<Vec<u64>> = group
        .iter()
        .map(|&x| group.iter().map(|&y| u64::from(a.contains(&(x * inv(y) % q)))).collect())
        .collect();
    let n = m.len();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else { return false };
        m.swap(col, pivot);
        let scale = pow_naive_big(m[col][col], P - 2, P);
        for r in col + 1..n {
            let f = m[r][col] * scale % P;
            if f == 0 {
                continue;
            }
            for c in col..n {
                m[r][c] = (m[r][c] + P - f * m[col][c] % P) % P;
            }
        }
    }
    true
}

fn pow_naive_big(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[test]
fn every_witness_rechecks() {
    let shapes = [(3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 2), (6, 1), (7, 1), (10, 1), (2, 1)];
    for (kp, km) in shapes {
        let arms = Arms::new(kp, km).unwrap();
        let c = classify(arms, 200);
        for report in &c.dimensions {
            let shape = arms.at(report.verdict.n).unwrap();
            for o in report.fired() {
                let w = o.witness.as_ref().unwrap();
                assert!(witness_holds(&shape, w, &c), "{shape} {}: {w}", o.criterion);
            }
        }
    }
}

#[test]
fn upward_propagation_is_subsumed() {
    // n ruled out and p = 1 (mod K), p > k+ prime  =>  ((Kn + 1) p - 1) / K ruled out
    for (kp, km) in [(3u64, 1u64), (3, 2), (4, 1)] {
        let arms = Arms::new(kp, km).unwrap();
        let k = arms.total();
        let c = classify(arms, 400);
        for n in c.no_tiling() {
            for p in (kp + 1..400).filter(|&p| p % k == 1 && is_prime_naive(p)) {
                let lifted = ((k * n + 1) * p - 1) / k;
                if lifted <= 400 {
                    assert!(c.get(lifted).unwrap().verdict.is_no_tiling(), "({kp},{km}) {n} -> {lifted}");
                }
            }
        }
    }
}

#[test]
fn registry_dimensions_never_ruled_out() {
    let arms = Arms::new(3, 1).unwrap();
    let registry = Registry::new(arms, vec![1, 6, 31, 37, 43, 97, 102, 115, 139, 156, 163, 169, 186, 199, 216], "");
    let c = classify_range(arms, 250, Some(&registry), &[], &ClassifyOptions::default()).unwrap();
    for &n in &registry.dimensions {
        assert!(matches!(c.get(n).unwrap().verdict.status, VerdictStatus::Tiles(_)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verifier_matches_definition(
        (shape, shuffled) in (1u64..=4)
            .prop_flat_map(|kp| (Just(kp), 1..=kp, 1u64..=6))
            .prop_flat_map(|(kp, km, n)| {
                let shape = QuasiCrossShape::new(kp, km, n).unwrap();
                let pool: Vec<u64> = (1..shape.q()).collect();
                (Just(shape), Just(pool).prop_shuffle())
            }),
    ) {
        let q = shape.q();
        let mut candidates = vec![shuffled[..shape.n() as usize].to_vec()];
        if let Some(s) = find_splitting(&shape.multiplier_set(), Budget::nodes(100_000)).splitting() {
            candidates.push(s.splitters().to_vec());
        }
        let multipliers: Vec<i64> = shape.multiplier_set().values().to_vec();
        for cand in candidates {
            let s = Splitting::for_shape(&shape, cand.clone()).unwrap();
            prop_assert_eq!(s.is_valid(), splits_naive(q, &multipliers, &cand), "{} {:?}", shape, cand);
        }
    }

    #[test]
    fn kernel_basis_spans_the_kernel(
        q in 2u64..300,
        picks in subsequence((1u64..300).collect::<Vec<_>>(), 1..6),
    ) {
        let splitters: Vec<u64> = picks.into_iter().map(|s| s % q).collect();
        let basis = kernel_basis(q, &splitters);
        let g = splitters.iter().fold(q, |g, &s| gcd_naive(g, s));
        prop_assert_eq!(basis.diagonal().iter().product::<i64>() as u64, q / g);
        for (i, row) in basis.rows().iter().enumerate() {
            prop_assert!(row[i + 1..].iter().all(|&x| x == 0));
            let phi: i128 = row.iter().zip(&splitters).map(|(&x, &s)| x as i128 * s as i128).sum();
            prop_assert_eq!(phi.rem_euclid(q as i128), 0);
        }
    }

    #[test]
    fn criterion_order_does_not_change_verdicts(
        order in Just(CriterionId::ALL.to_vec()).prop_shuffle(),
        pick in 0usize..4,
    ) {
        let arms = [(3, 1), (3, 2), (4, 1), (5, 2)][pick];
        let arms = Arms::new(arms.0, arms.1).unwrap();
        let baseline = classify(arms, 120);
        let shuffled = classify_range(arms, 120, None, &[], &ClassifyOptions::default().with_criteria(order)).unwrap();
        for (a, b) in baseline.verdicts().zip(shuffled.verdicts()) {
            prop_assert_eq!(a.existence(), b.existence(), "n = {}", a.n);
        }
    }

    #[test]
    fn even_quartic_class_is_quadratic_residue(
        q in (5u64..20_000).prop_filter("prime, 1 mod 4", |&q| q % 4 == 1 && is_prime_naive(q)),
        a in 1i64..1_000_000,
    ) {
        prop_assume!(a as u64 % q != 0);
        let class = QuarticCharacter::new(q).unwrap().class(a).unwrap();
        prop_assert_eq!(class.index() % 2 == 0, legendre(a, q).unwrap() == 1);
        prop_assert_eq!(class.is_quadratic_residue(), class.index() % 2 == 0);
    }
}
