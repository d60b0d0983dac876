//! Helpers around [`BigRational`]: construction shortcuts, factorials,
//! generalized binomials, Bernoulli numbers and the canonical `"p/q"`
//! string form used by every file format in this crate.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_rat(n: u64) -> BigRational {
    BigRational::from_integer(factorial(n))
}

/// Multinomial coefficient `(Σ parts)! / ∏ parts!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let denom = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    factorial(total) / denom
}

/// Generalized binomial `a (a-1) ... (a-b+1) / b!` for a rational top
/// argument.
pub fn binom_general(a: &BigRational, b: u64) -> BigRational {
    let mut num = BigRational::one();
    for i in 0..b {
        num *= a - BigRational::from_integer(BigInt::from(i));
    }
    num / factorial_rat(b)
}

/// Integer power of a rational, negative exponents allowed for nonzero bases.
pub fn pow_rat(base: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Bernoulli numbers `B_0 ..= B_n` via the Akiyama–Tanigawa algorithm.
///
/// This produces the convention `B_1 = +1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * int(j as i64);
        }
        out.push(a[0].clone());
    }
    out
}

/// `ζ(-k)` for `k ≥ 0`, as `-B_{k+1} / (k+1)`.
pub fn zeta_at_negative(k: u32) -> BigRational {
    let b = bernoulli_numbers(k as usize + 1);
    -(&b[k as usize + 1]) / int(k as i64 + 1)
}

/// Canonical text form: always `"p/q"` with `q > 0`, e.g. `"1/1"`, `"0/1"`.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// `Some(n)` when `x` is an integer that fits an `i64`.
pub fn as_integer(x: &BigRational) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    let n = x.to_integer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.to_string().parse().ok()
}
