//! The series `𝒮(z) = 2 sinh(z/2) / z` and vertex multiplicities
//! `m_g(μ, ν) = [z^{2g}] ∏ 𝒮(μ_i z) ∏ 𝒮(ν_j z) / 𝒮(z)`.

use num::{BigInt, BigRational, One};

use super::rational::{factorial, int};
use super::series::TruncSeries;

/// `𝒮(z)` modulo `z^{N+1}`: `[z^{2j}] = 4^{-j} / (2j+1)!`.
pub fn sseries(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |i| {
        if i % 2 == 1 {
            return BigRational::from_integer(BigInt::from(0));
        }
        let j = (i / 2) as u32;
        let denom = BigInt::from(4).pow(j) * factorial(2 * j as u64 + 1);
        BigRational::new(BigInt::one(), denom)
    })
}

/// `𝒮(w z)` written in the even variable `t = z²`, modulo `t^{g+1}`.
fn sseries_even_scaled(w: u64, g: usize) -> TruncSeries {
    let w2 = int((w * w) as i64);
    let base = TruncSeries::from_fn(g, |j| {
        let denom = BigInt::from(4).pow(j as u32) * factorial(2 * j as u64 + 1);
        BigRational::new(BigInt::one(), denom)
    });
    let mut scale = BigRational::one();
    TruncSeries::from_fn(g, |j| {
        let c = base.coeff(j) * &scale;
        scale *= &w2;
        c
    })
}

/// `m_g(μ, ν)`. Symmetric in its two weight lists and in the order of
/// entries within each.
pub fn vertex_multiplicity(g: u32, mu: &[u32], nu: &[u32]) -> BigRational {
    if g == 0 {
        return BigRational::one();
    }
    let g = g as usize;
    let mut acc = sseries_even_scaled(1, g)
        .inverse()
        .expect("S has constant term 1");
    for &w in mu.iter().chain(nu) {
        acc = &acc * &sseries_even_scaled(w as u64, g);
    }
    acc.coeff(g)
}
