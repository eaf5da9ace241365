use crate::numtheory::{factorize, gcd, UnitGroup};
use crate::splitting::QuasiCrossShape;

use super::{CriterionId, CriterionOutcome, Witness};

/// Packing bound: for `n >= 2` no tiling exists when
/// `2k+(k- + 1) - k-^2 > n(k+ + k-)`.
pub fn check_geometry(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::Geometry;
    if shape.n() < 2 {
        return CriterionOutcome::inapplicable(ID);
    }
    let (kp, km) = (shape.k_plus(), shape.k_minus());
    let bound = 2 * kp * (km + 1) - km * km;
    let capacity = shape.n() * (kp + km);
    let witness = Witness::Geometry { bound, capacity };
    if bound > capacity {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// For `M = [-(k-1), k]*` a splitting of a group of order `q > 1` forces
/// `gcd(k, q) != 1`.
pub fn check_kmo(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::Kmo;
    let (kp, km) = (shape.k_plus(), shape.k_minus());
    if km + 1 != kp {
        return CriterionOutcome::inapplicable(ID);
    }
    let g = gcd(kp, shape.q());
    let witness = Witness::Gcd {
        k_plus: kp,
        q: shape.q(),
        gcd: g,
    };
    if g == 1 {
        CriterionOutcome::ruled_out(ID, witness)
    } else {
        CriterionOutcome::inconclusive(ID, Some(witness))
    }
}

/// Zero-divisor accounting, for primes `p` with `p <= k+ < p^2` and
/// `p^2 | q`.
///
/// A product `ms` has `p`-adic valuation `v(m) + v(s)` (capped at the
/// exponent of `p` in `q`), so the number of splitters on each valuation
/// level is forced level by level; a negative or fractional count rules the
/// tiling out. Independently, the units of `Z_q` are exactly the products of
/// unit multipliers with unit splitters, so `Z_q^* = A T` with `A` the unit
/// multipliers. If no nontrivial character of `Z_q^*` vanishes on `A`, then
/// every nontrivial character vanishes on `T`, forcing `T = Z_q^*`, which is
/// impossible once `|A| > 1`.
pub fn check_psquare(shape: &QuasiCrossShape) -> CriterionOutcome {
    const ID: CriterionId = CriterionId::Psquare;
    let (kp, q) = (shape.k_plus(), shape.q());
    let factors = factorize(q);
    let primes: Vec<(u64, u32)> = factors
        .factors()
        .iter()
        .copied()
        .filter(|&(p, e)| p <= kp && kp < p * p && e >= 2)
        .collect();
    if primes.is_empty() {
        return CriterionOutcome::inapplicable(ID);
    }
    let multipliers = shape.multiplier_set();
    for &(p, e) in &primes {
        if let Some(w) = valuation_layers(multipliers.values(), p, e, q) {
            return CriterionOutcome::ruled_out(ID, w);
        }
    }
    match unit_characters(multipliers.values(), q) {
        Some(w) => CriterionOutcome::ruled_out(ID, w),
        None => CriterionOutcome::inconclusive(ID, None),
    }
}

fn valuation(m: i64, p: u64, cap: u32) -> u32 {
    let mut m = m.unsigned_abs();
    let mut v = 0;
    while v < cap && m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

fn valuation_layers(multipliers: &[i64], p: u64, e: u32, q: u64) -> Option<Witness> {
    let t = q / p.pow(e);
    let mut by_valuation = vec![0i64; e as usize + 1];
    for &m in multipliers {
        by_valuation[valuation(m, p, e) as usize] += 1;
    }
    let units = by_valuation[0];
    let fail = |level: u32, remainder: i64, per: i64| Witness::ValuationLayer {
        p,
        level,
        remainder,
        multipliers: per as u64,
    };
    if units == 0 {
        return None;
    }
    // elements of Z_q with valuation i < e number phi(p^(e-i)) t
    let mut layers: Vec<i64> = Vec::with_capacity(e as usize + 1);
    for i in 0..e {
        let pe = p.pow(e - i);
        let mut remainder = ((pe - pe / p) * t) as i64;
        for k in 1..=i {
            remainder -= by_valuation[k as usize] * layers[(i - k) as usize];
        }
        if remainder < 0 || remainder % units != 0 {
            return Some(fail(i, remainder, units));
        }
        layers.push(remainder / units);
    }
    // nonzero multiples of p^e: t - 1 of them, reached by every multiplier
    // from the top level and by the more divisible ones from below
    let mut remainder = t as i64 - 1;
    for (i, &count) in layers.iter().enumerate() {
        let reach: i64 = by_valuation[e as usize - i..].iter().sum();
        remainder -= reach * count;
    }
    let all = multipliers.len() as i64;
    if remainder < 0 || remainder % all != 0 {
        return Some(fail(e, remainder, all));
    }
    None
}

/// Character sums below this magnitude are treated as possibly zero, which
/// only ever keeps the check from firing.
const VANISHING: f64 = 1e-9;
/// Larger unit groups are not enumerated.
const MAX_CHARACTERS: u64 = 1 << 22;

fn unit_characters(multipliers: &[i64], q: u64) -> Option<Witness> {
    let totient = (1..q).filter(|&x| gcd(x, q) == 1).count().max(1) as u64;
    if totient > MAX_CHARACTERS {
        return None;
    }
    let group = UnitGroup::new(q);
    let logs: Vec<Vec<u64>> = multipliers.iter().filter_map(|&m| group.log(m)).collect();
    let units = logs.len() as u64;
    let witness = Witness::UnitCharacters {
        units,
        group_order: group.order(),
    };
    if units <= 1 {
        return None;
    }
    if group.order() % units != 0 {
        return Some(witness);
    }
    let orders = group.orders();
    let mut j = vec![0u64; orders.len()];
    loop {
        // next character in mixed radix; the trivial one is skipped
        let Some(pos) = (0..j.len()).find(|&i| j[i] + 1 < orders[i]) else {
            return Some(witness);
        };
        j[pos] += 1;
        j[..pos].iter_mut().for_each(|x| *x = 0);
        let (mut re, mut im) = (0f64, 0f64);
        for log in &logs {
            let turn: f64 = (0..j.len())
                .map(|i| ((j[i] * log[i]) % orders[i]) as f64 / orders[i] as f64)
                .sum();
            let angle = std::f64::consts::TAU * turn.fract();
            re += angle.cos();
            im += angle.sin();
        }
        if re.hypot(im) < VANISHING {
            return None;
        }
    }
}
