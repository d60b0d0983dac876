use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Zero};

use super::rational::{format_rational, int, pow_rat};
use crate::error::{Error, Result};

/// Dense power series `Σ_{i ≤ N} c_i x^i`, exact modulo `x^{N+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// The identity series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(BigRational::one(), 1, order)
    }

    pub fn monomial(c: BigRational, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, c: BigRational) {
        if i <= self.order() {
            self.coeffs[i] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^e`, dropping what overflows the order.
    pub fn shift(&self, e: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| {
            if i >= e {
                self.coeffs[i - e].clone()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| {
            if i < n {
                &self.coeffs[i + 1] * int(i as i64 + 1)
            } else {
                BigRational::zero()
            }
        })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::Series("inverse needs a nonzero constant term".into()));
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &b[k - i];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(TruncSeries { coeffs: b })
    }

    /// `self ∘ g`; requires `g(0) = 0`.
    pub fn compose(&self, g: &TruncSeries) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::Series("composition needs g(0) = 0".into()));
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = TruncSeries::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut result = TruncSeries::one(self.order());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(result)
    }

    /// The branch of `self^e` with constant term 1; requires `self(0) = 1`.
    ///
    /// With `g = f^e`, `f g' = e f' g` gives
    /// `n g_n = Σ_{j=1}^{n} (e·j − (n−j)) f_j g_{n−j}`.
    pub fn pow_rational(&self, e: &BigRational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("rational power needs f(0) = 1".into()));
        }
        let n = self.order();
        let mut g: Vec<BigRational> = Vec::with_capacity(n + 1);
        g.push(BigRational::one());
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let w = e * int(j as i64) - int((m - j) as i64);
                acc += w * &self.coeffs[j] * &g[m - j];
            }
            g.push(acc / int(m as i64));
        }
        Ok(TruncSeries { coeffs: g })
    }

    /// `log(self)` for `self(0) = 1`, from `(log f)' = f'/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series("log needs f(0) = 1".into()));
        }
        let n = self.order();
        let q = &self.derivative() * &self.inverse()?;
        Ok(Self::from_fn(n, |i| {
            if i == 0 {
                BigRational::zero()
            } else {
                q.coeffs[i - 1].clone() / int(i as i64)
            }
        }))
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[w^n] f^{-1} = (1/n) [w^{n-1}] (w/f(w))^n`.
    pub fn lagrange_invert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("inversion needs f(0) = 0".into()));
        }
        let n = self.order();
        if n == 0 {
            return Ok(TruncSeries::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::Series("inversion needs f'(0) != 0".into()));
        }
        // f(w)/w, known to order n-1
        let quotient = TruncSeries::from_fn(n - 1, |i| self.coeffs[i + 1].clone());
        let h = quotient.inverse()?;
        let mut out = TruncSeries::zero(n);
        let mut hp = TruncSeries::one(n - 1);
        for m in 1..=n {
            hp = &hp * &h;
            out.coeffs[m] = hp.coeff(m - 1) / int(m as i64);
        }
        Ok(out)
    }

    /// Evaluates at a rational point (polynomial of the stored coefficients).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `Σ c_i x^i` with `x` raised to an arbitrary integer exponent; used for
    /// substitutions `x ↦ c x^e`.
    pub fn substitute_monomial(&self, c: &BigRational, e: usize, order: usize) -> Self {
        let mut out = TruncSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            let exp = i * e;
            if exp > order {
                break;
            }
            out.coeffs[exp] += a * pow_rat(c, i as i64);
        }
        out
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*x^{}", format_rational(c), i))
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(x^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(x^{})", terms.join(" + "), self.order() + 1)
        }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        TruncSeries::from_fn(n, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncSeries {
            type Output = TruncSeries;
            fn $m(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use proptest::prelude::*;

    fn series(cs: &[(i64, i64)], order: usize) -> TruncSeries {
        TruncSeries::new(cs.iter().map(|&(n, d)| rat(n, d)).collect(), order)
    }

    #[test]
    fn rational_power_examples() {
        let f = series(&[(1, 1), (1, 1)], 2);
        let half = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(half, series(&[(1, 1), (1, 2), (-1, 8)], 2));
        let minus_two = f.pow_rational(&int(-2)).unwrap();
        assert_eq!(minus_two, series(&[(1, 1), (-2, 1), (3, 1)], 2));
        assert_eq!(TruncSeries::one(5).pow_rational(&rat(7, 3)).unwrap(), TruncSeries::one(5));
        assert!(series(&[(2, 1)], 2).pow_rational(&rat(1, 2)).is_err());
    }

    #[test]
    fn catalan_inverse() {
        let f = series(&[(0, 1), (1, 1), (-1, 1)], 5);
        let inv = f.lagrange_invert().unwrap();
        let got: Vec<BigRational> = inv.coeffs()[1..].to_vec();
        assert_eq!(got, vec![int(1), int(1), int(2), int(5), int(14)]);
        assert_eq!(f.compose(&inv).unwrap(), TruncSeries::x(5));
        assert_eq!(TruncSeries::x(4).lagrange_invert().unwrap(), TruncSeries::x(4));
        assert!(series(&[(0, 1), (0, 1), (1, 1)], 3).lagrange_invert().is_err());
    }

    #[test]
    fn log_of_exp_like() {
        // log(1/(1-x)) = Σ x^n/n
        let f = series(&[(1, 1), (-1, 1)], 6).inverse().unwrap();
        let l = f.log().unwrap();
        for n in 1..=6 {
            assert_eq!(l.coeff(n), rat(1, n as i64));
        }
    }

    #[test]
    fn composition_errors() {
        let f = series(&[(1, 1), (1, 1)], 3);
        assert!(f.compose(&series(&[(1, 1)], 3)).is_err());
        assert!(series(&[(0, 1), (1, 1)], 3).inverse().is_err());
    }

    fn arb_series(order: usize, const_one: bool) -> impl Strategy<Value = TruncSeries> {
        proptest::collection::vec((-6i64..7, 1i64..5), order + 1).prop_map(move |v| {
            let mut s = TruncSeries::new(v.into_iter().map(|(n, d)| rat(n, d)).collect(), order);
            if const_one {
                s.set_coeff(0, int(1));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn integer_powers_agree(f in arb_series(6, true), e in -4i64..5) {
            let by_rational = f.pow_rational(&int(e)).unwrap();
            let mut by_mult = TruncSeries::one(6);
            for _ in 0..e.unsigned_abs() {
                by_mult = &by_mult * &f;
            }
            if e < 0 {
                by_mult = by_mult.inverse().unwrap();
            }
            prop_assert_eq!(&by_rational, &by_mult);
            prop_assert_eq!(by_rational, f.pow_int(e).unwrap());
        }

        #[test]
        fn identity_composition(f in arb_series(7, false)) {
            prop_assert_eq!(f.compose(&TruncSeries::x(7)).unwrap(), f);
        }

        #[test]
        fn inverse_round_trip(f in arb_series(7, true)) {
            prop_assert_eq!(&f * &f.inverse().unwrap(), TruncSeries::one(7));
        }

        #[test]
        fn lagrange_round_trip(mut f in arb_series(8, false), lead in 1i64..4) {
            f.set_coeff(0, int(0));
            f.set_coeff(1, int(lead));
            let inv = f.lagrange_invert().unwrap();
            prop_assert_eq!(f.compose(&inv).unwrap(), TruncSeries::x(8));
            prop_assert_eq!(inv.compose(&f).unwrap(), TruncSeries::x(8));
        }

        #[test]
        fn rational_powers_multiply(f in arb_series(6, true), a in -3i64..4, b in 1i64..4) {
            let e = rat(a, b);
            let g = f.pow_rational(&e).unwrap();
            prop_assert_eq!(g.pow_int(b).unwrap(), f.pow_int(a).unwrap());
        }
    }
}
