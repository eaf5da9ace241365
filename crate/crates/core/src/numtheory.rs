//! Modular and multiplicative number theory on 64-bit integers.
//!
//! Everything here is a pure function. Products are widened to `u128`
//! before reduction so any modulus that fits in a `u64` is safe.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is even; an odd prime is required")]
    EvenModulus(u64),
    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: i64, modulus: u64 },
    #[error("modulus {0} is not congruent to 1 mod 4")]
    NotOneModFour(u64),
    #[error("primorial of {0} does not fit in 64 bits")]
    Overflow(u64),
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce(a: i64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    (a as i128).rem_euclid(m as i128) as u64
}

#[inline]
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    result
}

/// Multiplicative inverse of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

// These bases make Miller-Rabin deterministic for every n < 3.3 * 10^24.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if m % p == 0 {
            return m == p;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = mod_pow(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        self.divisors_with_primes(|_| true)
    }

    /// Divisors built only from the primes accepted by `keep`, ascending.
    pub fn divisors_with_primes(&self, keep: impl Fn(u64) -> bool) -> Vec<u64> {
        let mut divisors = vec![1u64];
        for &(p, e) in self.factors.iter().filter(|(p, _)| keep(*p)) {
            let len = divisors.len();
            let mut power = 1u64;
            for _ in 0..e {
                power *= p;
                for i in 0..len {
                    divisors.push(divisors[i] * power);
                }
            }
        }
        divisors.sort_unstable();
        divisors
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

pub fn factorize(m: u64) -> Factorization {
    assert!(m >= 1, "cannot factor zero");
    let mut rest = m;
    let mut primes = Vec::new();

    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= rest {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }

    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization { value: m, factors }
}

// `m` has no prime factor below the trial division limit.
fn split_large(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = pollard_brent(m, c) {
            break d;
        }
        c += 1;
    };
    split_large(d, out);
    split_large(m / d, out);
}

/// Brent's variant of Pollard's rho with `x -> x^2 + c`. Returns a
/// nontrivial factor, or `None` if this `c` cycles without finding one.
fn pollard_brent(m: u64, c: u64) -> Option<u64> {
    let f = |x: u64| ((x as u128 * x as u128 + c as u128) % m as u128) as u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mod_mul(q, x.abs_diff(y), m);
            }
            g = gcd(q, m);
            k += BATCH;
        }
        r *= 2;
    }
    if g == m {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), m);
            if g > 1 {
                break;
            }
        }
    }
    (g != m).then_some(g)
}

/// Legendre symbol `(a / p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8, NumError> {
    if p % 2 == 0 {
        return Err(NumError::EvenModulus(p));
    }
    if !is_prime(p) {
        return Err(NumError::NotPrime(p));
    }
    let a = reduce(a, p);
    if a == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(a, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Value of the order-4 character, as the exponent `j` in `i^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarticClass(u8);

impl QuarticClass {
    pub const RESIDUE: QuarticClass = QuarticClass(0);

    pub fn new(index: u8) -> Self {
        QuarticClass(index % 4)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn is_quadratic_residue(self) -> bool {
        self.0 % 2 == 0
    }
}

impl std::ops::Add for QuarticClass {
    type Output = QuarticClass;

    fn add(self, rhs: Self) -> Self {
        QuarticClass((self.0 + rhs.0) % 4)
    }
}

/// The canonical quartic character modulo a prime `q ≡ 1 (mod 4)`.
///
/// `a^((q-1)/4)` is one of the four fourth roots of unity `1, r, -1, -r`
/// where `r` is a square root of `-1`. Of the two roots of `-1` the smaller
/// one is taken as `r`, which fixes the character (rather than its
/// conjugate). No primitive element or discrete logarithm is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuarticCharacter {
    q: u64,
    root: u64,
}

impl QuarticCharacter {
    pub fn new(q: u64) -> Result<Self, NumError> {
        if q % 4 != 1 {
            return Err(NumError::NotOneModFour(q));
        }
        if !is_prime(q) {
            return Err(NumError::NotPrime(q));
        }
        let e = (q - 1) / 4;
        let root = (2..q)
            .map(|a| mod_pow(a, e, q))
            .find(|&t| t != 1 && t != q - 1)
            .expect("a quadratic non-residue exists modulo an odd prime");
        Ok(Self {
            q,
            root: root.min(q - root),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// The canonical square root of `-1`.
    pub fn root_of_minus_one(&self) -> u64 {
        self.root
    }

    pub fn class(&self, a: i64) -> Result<QuarticClass, NumError> {
        let q = self.q;
        let a_red = reduce(a, q);
        if a_red == 0 {
            return Err(NumError::NotCoprime { value: a, modulus: q });
        }
        let t = mod_pow(a_red, (q - 1) / 4, q);
        let index = if t == 1 {
            0
        } else if t == q - 1 {
            2
        } else if t == self.root {
            1
        } else {
            debug_assert_eq!(t, q - self.root);
            3
        };
        Ok(QuarticClass(index))
    }
}

pub fn quartic_class(a: i64, q: u64) -> Result<QuarticClass, NumError> {
    QuarticCharacter::new(q)?.class(a)
}

/// Product of all primes `<= m`.
pub fn primorial(m: u64) -> Result<u64, NumError> {
    let mut acc = 1u64;
    for p in (2..=m).filter(|&p| is_prime(p)) {
        acc = acc.checked_mul(p).ok_or(NumError::Overflow(m))?;
    }
    Ok(acc)
}

/// Smallest prime factor of `m >= 2`.
pub fn smallest_prime_factor(m: u64) -> u64 {
    factorize(m).factors[0].0
}

/// `Z_q^*` written as a product of cyclic groups, one or two per prime power
/// dividing `q`, with discrete-log tables for each factor.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    factors: Vec<CyclicFactor>,
}

#[derive(Debug, Clone)]
struct CyclicFactor {
    prime_power: u64,
    order: u64,
    /// `log[x mod prime_power]`, `u64::MAX` off the factor.
    log: Vec<u64>,
}

impl CyclicFactor {
    fn powers_of(g: u64, order: u64, prime_power: u64, sign: bool) -> Self {
        let mut log = vec![u64::MAX; prime_power as usize];
        let mut x = 1u64;
        for k in 0..order {
            log[x as usize] = k;
            if sign {
                log[(prime_power - x) as usize] = k;
            }
            x = mod_mul(x, g, prime_power);
        }
        Self {
            prime_power,
            order,
            log,
        }
    }
}

impl UnitGroup {
    /// Builds the tables; memory is linear in `q`.
    pub fn new(q: u64) -> Self {
        assert!(q >= 1, "modulus must be positive");
        let mut factors = Vec::new();
        for &(p, e) in factorize(q).factors() {
            let pe = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    // x = +-5^b; the sign is read off x mod 4
                    let sign = CyclicFactor {
                        prime_power: 4,
                        order: 2,
                        log: vec![u64::MAX, 0, u64::MAX, 1],
                    };
                    factors.push(sign);
                }
                if e >= 3 {
                    factors.push(CyclicFactor::powers_of(5, pe / 4, pe, true));
                }
            } else {
                let order = pe / p * (p - 1);
                factors.push(CyclicFactor::powers_of(primitive_root(p, e), order, pe, false));
            }
        }
        Self { modulus: q, factors }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the cyclic factors.
    pub fn orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    /// Coordinates of `a` in the cyclic factors, `None` unless `a` is a unit.
    pub fn log(&self, a: i64) -> Option<Vec<u64>> {
        let a = reduce(a, self.modulus);
        if gcd(a, self.modulus) != 1 {
            return None;
        }
        let coords = self
            .factors
            .iter()
            .map(|f| f.log[(a % f.prime_power) as usize])
            .collect();
        Some(coords)
    }
}

/// A generator of `Z_{p^e}^*` for an odd prime `p`.
fn primitive_root(p: u64, e: u32) -> u64 {
    let phi = factorize(p - 1);
    let g = (2..p)
        .find(|&g| phi.primes().all(|r| mod_pow(g, (p - 1) / r, p) != 1))
        .unwrap_or(1);
    if e >= 2 && mod_pow(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(m: u64) -> bool {
        m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(is_prime(1009));
        assert!(!is_prime(0));
        assert!(!is_prime(561));
    }

    #[test]
    fn primality_matches_trial_division() {
        for m in 0..20_000 {
            assert_eq!(is_prime(m), trial_division_is_prime(m), "m = {m}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_557u64.wrapping_sub(2)));
        // strong pseudoprime to every prime base up to 23
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(factorize(45).factors(), &[(3, 2), (5, 1)]);
        assert!(factorize(1).factors().is_empty());
        assert_eq!(factorize(1001).factors(), &[(7, 1), (11, 1), (13, 1)]);
        assert_eq!(factorize(45).to_string(), "3^2 * 5");
    }

    #[test]
    fn factorization_beyond_trial_division() {
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        let f = factorize(p * q);
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
        let f = factorize(p * p * 7);
        assert_eq!(f.factors(), &[(7, 1), (p, 2)]);
    }

    #[test]
    fn divisors_of_sixty() {
        assert_eq!(
            factorize(60).divisors(),
            vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]
        );
        assert_eq!(
            factorize(60).divisors_with_primes(|p| p > 3),
            vec![1, 5]
        );
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 13), Ok(-1));
        assert_eq!(legendre(3, 13), Ok(1));
        for p in [3, 5, 7, 11, 13, 101] {
            assert_eq!(legendre(1, p), Ok(1));
            assert_eq!(legendre(p as i64, p), Ok(0));
        }
        assert_eq!(legendre(-1, 13), Ok(1));
        assert_eq!(legendre(-1, 11), Ok(-1));
    }

    #[test]
    fn legendre_rejects_bad_modulus() {
        assert_eq!(legendre(2, 8), Err(NumError::EvenModulus(8)));
        assert_eq!(legendre(2, 15), Err(NumError::NotPrime(15)));
    }

    #[test]
    fn quartic_examples() {
        let chi = QuarticCharacter::new(29).unwrap();
        assert_eq!(chi.root_of_minus_one(), 12);
        assert_eq!(mod_pow(2, 7, 29), 12);
        assert_eq!(quartic_class(2, 29).unwrap().index(), 1);
        assert_eq!(quartic_class(1, 29).unwrap().index(), 0);
        assert_eq!(quartic_class(-1, 29).unwrap().index(), 2);
        assert_eq!(quartic_class(3, 29).unwrap().index(), 1);
    }

    #[test]
    fn quartic_rejects_bad_inputs() {
        assert_eq!(quartic_class(2, 23), Err(NumError::NotOneModFour(23)));
        assert_eq!(quartic_class(2, 21), Err(NumError::NotPrime(21)));
        assert_eq!(quartic_class(2, 25), Err(NumError::NotPrime(25)));
        assert_eq!(
            quartic_class(58, 29),
            Err(NumError::NotCoprime { value: 58, modulus: 29 })
        );
    }

    #[test]
    fn primorial_examples() {
        assert_eq!(primorial(1), Ok(1));
        assert_eq!(primorial(3), Ok(6));
        assert_eq!(primorial(4), Ok(6));
        assert_eq!(primorial(5), Ok(30));
        assert_eq!(primorial(47), Ok(614_889_782_588_491_410));
        assert_eq!(primorial(53), Err(NumError::Overflow(53)));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_pow(6, 7, 29), 28);
        assert_eq!(mod_inv(5, 12), Some(5));
        assert_eq!(mod_inv(3, 12), None);
        assert_eq!(mod_inv(4, 1), Some(0));
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(reduce(-1, 13), 12);
        assert_eq!(reduce(-27, 13), 12);
    }

    #[test]
    fn factorization_round_trips() {
        for m in 1..=1_000_000u64 {
            let f = factorize(m);
            let mut product = 1u64;
            let mut last = 1;
            for &(p, e) in f.factors() {
                assert!(p > last && e >= 1 && is_prime(p));
                last = p;
                product *= p.pow(e);
            }
            assert_eq!(product, m);
        }
    }
    #[test]
    fn unit_group_shapes() {
        assert_eq!(UnitGroup::new(81).orders(), vec![54]);
        assert_eq!(UnitGroup::new(45).orders(), vec![6, 4]);
        assert_eq!(UnitGroup::new(64).orders(), vec![2, 16]);
        assert_eq!(UnitGroup::new(12).orders(), vec![2, 2]);
        assert_eq!(UnitGroup::new(2).order(), 1);
        assert_eq!(UnitGroup::new(81).log(-1), Some(vec![27]));
        assert_eq!(UnitGroup::new(81).log(3), None);
    }

    #[test]
    fn unit_logs_are_injective_and_multiplicative() {
        for q in [2u64, 8, 9, 16, 45, 50, 72, 81, 96, 105, 243, 256, 1000] {
            let g = UnitGroup::new(q);
            let orders = g.orders();
            let units: Vec<u64> = (1..q).filter(|&x| gcd(x, q) == 1).collect();
            assert_eq!(g.order(), units.len().max(1) as u64, "q={q}");
            let mut seen = std::collections::HashSet::new();
            for &a in &units {
                let la = g.log(a as i64).unwrap();
                assert!(seen.insert(la.clone()), "q={q} a={a}");
                for &b in units.iter().take(7) {
                    let lb = g.log(b as i64).unwrap();
                    let sum: Vec<u64> = (0..orders.len()).map(|i| (la[i] + lb[i]) % orders[i]).collect();
                    assert_eq!(g.log(mod_mul(a, b, q) as i64).unwrap(), sum, "q={q} {a}*{b}");
                }
            }
        }
    }
}
