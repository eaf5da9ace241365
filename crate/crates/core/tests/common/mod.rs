//! Plain arithmetic used to re-derive results without the library code paths.

#![allow(dead_code)]

use num_bigint::BigInt;

pub fn is_prime_naive(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

pub fn pow_naive(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * (base % m) % m;
    }
    acc
}

pub fn gcd_naive(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_naive(b, a % b)
    }
}

pub fn residue(m: i64, q: u64) -> u64 {
    m.rem_euclid(q as i64) as u64
}

/// Squares of `1..p`, as a membership table.
pub fn squares(p: u64) -> Vec<bool> {
    let mut table = vec![false; p as usize];
    for x in 1..p {
        table[(x * x % p) as usize] = true;
    }
    table
}

/// Does `{m s}` hit every nonzero residue of `Z_q` exactly once?
pub fn splits_naive(q: u64, multipliers: &[i64], splitters: &[u64]) -> bool {
    let mut hits = vec![0u32; q as usize];
    for &s in splitters {
        for &m in multipliers {
            hits[((residue(m, q) as u128 * s as u128) % q as u128) as usize] += 1;
        }
    }
    hits[0] == 0 && hits[1..].iter().all(|&h| h == 1)
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn det_bareiss(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&i| a[i][k] != BigInt::from(0)) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    &a[n - 1][n - 1] * sign
}
