use std::ops::{Add, Mul, Sub};

use num::{BigRational, One, Zero};

use super::rational::int;
use super::series::TruncSeries;
use crate::error::{Error, Result};

/// Dense series `Σ c_{ij} a^i b^j` with `i ≤ N`, `j ≤ M`, exact modulo the
/// ideal `(a^{N+1}, b^{M+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiTruncSeries {
    coeffs: Vec<Vec<BigRational>>,
}

impl BiTruncSeries {
    pub fn zero(n: usize, m: usize) -> Self {
        BiTruncSeries {
            coeffs: vec![vec![BigRational::zero(); m + 1]; n + 1],
        }
    }

    pub fn one(n: usize, m: usize) -> Self {
        let mut s = Self::zero(n, m);
        s.coeffs[0][0] = BigRational::one();
        s
    }

    pub fn from_fn(n: usize, m: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        BiTruncSeries {
            coeffs: (0..=n).map(|i| (0..=m).map(|j| f(i, j)).collect()).collect(),
        }
    }

    /// `f(a) · g(b)`.
    pub fn outer(f: &TruncSeries, g: &TruncSeries) -> Self {
        Self::from_fn(f.order(), g.order(), |i, j| f.coeff(i) * g.coeff(j))
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: BigRational) {
        let (n, m) = self.orders();
        if i <= n && j <= m {
            self.coeffs[i][j] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_terms(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let (n, m) = self.orders();
        Self::from_fn(n, m, |i, j| &self.coeffs[i][j] * c)
    }

    pub fn transpose(&self) -> Self {
        let (n, m) = self.orders();
        Self::from_fn(m, n, |i, j| self.coeffs[j][i].clone())
    }

    /// `f(a,b) = f(b,a)` on the common square block.
    pub fn is_symmetric(&self) -> bool {
        let (n, m) = self.orders();
        let d = n.min(m);
        (0..=d).all(|i| (0..=d).all(|j| self.coeffs[i][j] == self.coeffs[j][i]))
    }

    /// `∂/∂a`.
    pub fn d1(&self) -> Self {
        let (n, m) = self.orders();
        Self::from_fn(n, m, |i, j| {
            if i < n {
                &self.coeffs[i + 1][j] * int(i as i64 + 1)
            } else {
                BigRational::zero()
            }
        })
    }

    /// `∂/∂b`.
    pub fn d2(&self) -> Self {
        let (n, m) = self.orders();
        Self::from_fn(n, m, |i, j| {
            if j < m {
                &self.coeffs[i][j + 1] * int(j as i64 + 1)
            } else {
                BigRational::zero()
            }
        })
    }

    /// `log(self)` for constant term 1, via `Σ (−1)^{n+1} h^n / n`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0][0].is_one() {
            return Err(Error::Series("log needs constant term 1".into()));
        }
        let (n, m) = self.orders();
        let mut h = self.clone();
        h.coeffs[0][0] = BigRational::zero();
        let mut out = Self::zero(n, m);
        let mut power = Self::one(n, m);
        for k in 1..=(n + m) {
            power = &power * &h;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            out = &out + &power.scale(&(sign / int(k as i64)));
        }
        Ok(out)
    }
}

impl Add for &BiTruncSeries {
    type Output = BiTruncSeries;
    fn add(self, rhs: &BiTruncSeries) -> BiTruncSeries {
        let (n1, m1) = self.orders();
        let (n2, m2) = rhs.orders();
        BiTruncSeries::from_fn(n1.min(n2), m1.min(m2), |i, j| {
            &self.coeffs[i][j] + &rhs.coeffs[i][j]
        })
    }
}

impl Sub for &BiTruncSeries {
    type Output = BiTruncSeries;
    fn sub(self, rhs: &BiTruncSeries) -> BiTruncSeries {
        let (n1, m1) = self.orders();
        let (n2, m2) = rhs.orders();
        BiTruncSeries::from_fn(n1.min(n2), m1.min(m2), |i, j| {
            &self.coeffs[i][j] - &rhs.coeffs[i][j]
        })
    }
}

impl Mul for &BiTruncSeries {
    type Output = BiTruncSeries;
    fn mul(self, rhs: &BiTruncSeries) -> BiTruncSeries {
        let (n1, m1) = self.orders();
        let (n2, m2) = rhs.orders();
        let (n, m) = (n1.min(n2), m1.min(m2));
        let mut out = BiTruncSeries::zero(n, m);
        for i1 in 0..=n {
            for j1 in 0..=m {
                let a = &self.coeffs[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=n - i1 {
                    for j2 in 0..=m - j1 {
                        let b = &rhs.coeffs[i2][j2];
                        if !b.is_zero() {
                            out.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn outer_and_symmetry() {
        let f = TruncSeries::new(vec![int(1), int(2), int(3)], 2);
        let s = BiTruncSeries::outer(&f, &f);
        assert!(s.is_symmetric());
        assert_eq!(s.coeff(1, 2), int(6));
        let t = BiTruncSeries::outer(&f, &TruncSeries::one(2));
        assert!(!t.is_symmetric());
        assert_eq!(t.transpose(), BiTruncSeries::outer(&TruncSeries::one(2), &f));
    }

    #[test]
    fn log_splits_products() {
        let f = TruncSeries::new(vec![int(1), rat(1, 2), rat(-1, 3), int(2)], 3);
        let g = TruncSeries::new(vec![int(1), int(-1), rat(1, 5), int(0)], 3);
        let prod = BiTruncSeries::outer(&f, &g);
        let lhs = prod.log().unwrap();
        let rhs = &BiTruncSeries::outer(&f.log().unwrap(), &TruncSeries::one(3))
            + &BiTruncSeries::outer(&TruncSeries::one(3), &g.log().unwrap());
        assert_eq!(lhs, rhs);
        // a product of one-variable factors has vanishing mixed derivative
        assert!(lhs.d1().d2().is_zero());
    }

    #[test]
    fn derivatives() {
        let mut s = BiTruncSeries::zero(3, 3);
        s.set_coeff(2, 3, int(1));
        assert_eq!(s.d1().coeff(1, 3), int(2));
        assert_eq!(s.d2().coeff(2, 2), int(3));
        assert_eq!(s.d1().d2().coeff(1, 2), int(6));
    }
}
