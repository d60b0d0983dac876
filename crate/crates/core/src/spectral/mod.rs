//! Genus-zero spectral-curve identities checked as truncated power series.

mod bergman;

pub use bergman::{bergman_defect, verify_bergman_identity, w02_series};

use num::{BigRational, Integer, One, Zero};
use serde_json::json;

use crate::error::Result;
use crate::exactmath::rational::{factorial_rat, format_rational, int};
use crate::exactmath::TruncSeries;
use crate::formulas::{one_part_closed, OrbifoldParams};
use crate::report::Report;

/// `g = gcd(qr, k)`, `κ = k/g`, `ρ = qr/g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub p: OrbifoldParams,
    pub gcd_g: u32,
    pub kappa: u32,
    pub rho: u32,
}

impl CurveData {
    pub fn new(p: OrbifoldParams) -> Self {
        let qr = p.q * p.r;
        let g = qr.gcd(&p.k);
        CurveData {
            p,
            gcd_g: g,
            kappa: p.k / g,
            rho: qr / g,
        }
    }
}

fn params_json(p: &OrbifoldParams, order: usize) -> serde_json::Value {
    json!({ "k": p.k, "r": p.r, "q": p.q, "order": order })
}

/// `Y(X) = Σ m · lh(m)/b! · X^{m−1}` modulo `X^{N+1}`.
pub fn y_series(p: &OrbifoldParams, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |e| {
        let m = e as u64 + 1;
        match p.one_part_branch(m) {
            Some(b) => int(m as i64) * one_part_closed(p, m) / factorial_rat(b),
            None => BigRational::zero(),
        }
    })
}

/// `Y^κ (1 − A Y^{r−1} X^{r−1+k})^{ρ+κ} − X^{(q−1)κ}` modulo `X^{N+1}`.
pub fn curve_defect(p: &OrbifoldParams, y: &TruncSeries) -> TruncSeries {
    let cd = CurveData::new(*p);
    let n = y.order();
    let inner = y
        .pow_int(p.r as i64 - 1)
        .expect("non-negative power")
        .shift((p.r - 1 + p.k) as usize)
        .scale(&-p.a());
    let bracket = &TruncSeries::one(n) + &inner;
    let rhs = &y.pow_int(cd.kappa as i64).expect("non-negative power")
        * &bracket.pow_int((cd.rho + cd.kappa) as i64).expect("non-negative power");
    let lhs = TruncSeries::monomial(BigRational::one(), ((p.q - 1) * cd.kappa) as usize, n);
    &rhs - &lhs
}

/// Lowest exponent where `s` differs from zero.
fn first_failure(s: &TruncSeries) -> Option<usize> {
    s.valuation()
}

pub fn verify_curve_relation_with(p: &OrbifoldParams, y: &TruncSeries) -> Report {
    let cd = CurveData::new(*p);
    let fail = first_failure(&curve_defect(p, y));
    let mut params = params_json(p, y.order());
    params["kappa"] = json!(cd.kappa);
    params["rho"] = json!(cd.rho);
    let witness = match fail {
        None => json!({}),
        Some(e) => json!({ "first_failure_exponent": e }),
    };
    Report::new("spectral-curve", params, fail.is_none(), witness)
}

pub fn verify_curve_relation(p: &OrbifoldParams, order: usize) -> Report {
    verify_curve_relation_with(p, &y_series(p, order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizedCurve {
    pub x_of_z: TruncSeries,
    pub y_of_z: TruncSeries,
    pub z_of_x: TruncSeries,
}

/// `1 + A z^B` raised to `e`, modulo `z^{N+1}`.
fn shifted_power(p: &OrbifoldParams, e: &BigRational, order: usize) -> TruncSeries {
    let base = &TruncSeries::one(order) + &TruncSeries::monomial(p.a(), p.b_step() as usize, order);
    base.pow_rational(e).expect("constant term 1")
}

/// `X = z(1 + A z^B)^{−r/k}`, `Y = z^{q−1}(1 + A z^B)^{(r+k)/k}`.
pub fn parametrize(p: &OrbifoldParams, order: usize) -> Result<ParametrizedCurve> {
    let k = p.k as i64;
    let r = p.r as i64;
    let x_of_z = shifted_power(p, &BigRational::new((-r).into(), k.into()), order).shift(1);
    let y_of_z = shifted_power(p, &BigRational::new((r + k).into(), k.into()), order)
        .shift(p.q as usize - 1);
    let z_of_x = x_of_z.lagrange_invert()?;
    Ok(ParametrizedCurve {
        x_of_z,
        y_of_z,
        z_of_x,
    })
}

/// Composes `Y(z(X))` and compares with [`y_series`].
pub fn verify_parametrization(p: &OrbifoldParams, order: usize) -> Result<Report> {
    let c = parametrize(p, order)?;
    let composed = c.y_of_z.compose(&c.z_of_x)?;
    let diff = &composed - &y_series(p, order);
    let round_trip = c.z_of_x.compose(&c.x_of_z)? == TruncSeries::x(order)
        && c.x_of_z.compose(&c.z_of_x)? == TruncSeries::x(order);
    let fail = first_failure(&diff);
    let witness = json!({
        "first_failure_exponent": fail,
        "inverse_round_trip": round_trip,
    });
    Ok(Report::new(
        "parametrization",
        params_json(p, order),
        fail.is_none() && round_trip,
        witness,
    ))
}

/// Fixed-`k` curve with `S(z) = z^q`:
/// `X = z(1 + A S^{r−1} z^k)^{−r/k}`, `y = S + c S^r z^k`.
/// The matching curve has `c = A`.
pub fn fixed_k_curve(p: &OrbifoldParams, c: &BigRational, order: usize) -> (TruncSeries, TruncSeries) {
    let k = p.k as i64;
    let e = (p.q * (p.r - 1) + p.k) as usize;
    let base = &TruncSeries::one(order) + &TruncSeries::monomial(p.a(), e, order);
    let x = base
        .pow_rational(&BigRational::new((-(p.r as i64)).into(), k.into()))
        .expect("constant term 1")
        .shift(1);
    let s = p.q as usize;
    let y = &TruncSeries::monomial(BigRational::one(), s, order)
        + &TruncSeries::monomial(c.clone(), s * p.r as usize + p.k as usize, order);
    (x, y)
}

pub fn verify_fixed_k_curve_with(p: &OrbifoldParams, c: &BigRational, order: usize) -> Result<Report> {
    let param = parametrize(p, order)?;
    let (x, y) = fixed_k_curve(p, c, order);
    let x_fail = first_failure(&(&x - &param.x_of_z));
    let xy = &param.x_of_z * &param.y_of_z;
    let y_fail = first_failure(&(&y - &xy));
    let mut params = params_json(p, order);
    params["y_coefficient"] = json!(format_rational(c));
    let witness = json!({
        "x_first_failure_exponent": x_fail,
        "y_first_failure_exponent": y_fail,
    });
    Ok(Report::new(
        "fixed-k-curve",
        params,
        x_fail.is_none() && y_fail.is_none(),
        witness,
    ))
}

pub fn verify_fixed_k_curve(p: &OrbifoldParams, order: usize) -> Result<Report> {
    verify_fixed_k_curve_with(p, &p.a(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    fn p(k: u32, r: u32, q: u32) -> OrbifoldParams {
        OrbifoldParams::new(k, r, q).unwrap()
    }

    #[test]
    fn y_series_coefficients() {
        let y = y_series(&p(1, 2, 1), 6);
        assert_eq!(y.coeff(0), int(1));
        assert_eq!(y.coeff(1), int(0));
        assert_eq!(y.coeff(2), rat(3, 2));
        let y = y_series(&p(1, 2, 2), 6);
        assert_eq!(y.coeff(0), int(0));
        assert_eq!(y.coeff(1), int(1));
    }

    #[test]
    fn curve_data() {
        let cd = CurveData::new(p(2, 3, 2));
        assert_eq!((cd.gcd_g, cd.kappa, cd.rho), (2, 1, 3));
    }

    #[test]
    fn curve_relation_holds() {
        assert!(verify_curve_relation(&p(1, 2, 1), 25).passed());
        assert!(verify_curve_relation(&p(2, 3, 1), 20).passed());
        assert!(verify_curve_relation(&p(3, 2, 2), 20).passed());
    }

    #[test]
    fn perturbed_y_is_caught() {
        let q = p(1, 2, 1);
        let mut y = y_series(&q, 20);
        y.set_coeff(6, y.coeff(6) + int(1));
        let report = verify_curve_relation_with(&q, &y);
        assert!(!report.passed());
        assert_eq!(report.witness["first_failure_exponent"], 6);
    }

    #[test]
    fn parametrization_example() {
        let c = parametrize(&p(1, 2, 1), 8).unwrap();
        assert_eq!(c.x_of_z.coeff(1), int(1));
        assert_eq!(c.x_of_z.coeff(3), int(-1));
        assert_eq!(c.y_of_z.coeff(0), int(1));
        assert_eq!(c.y_of_z.coeff(2), rat(3, 2));
        // (2 + z²)³/8 is a cubic in z²
        assert_eq!(c.y_of_z.coeff(6), rat(1, 8));
        assert_eq!(c.y_of_z.coeff(8), int(0));
        for (k, r, q) in [(1, 2, 1), (2, 3, 2), (3, 2, 1)] {
            assert!(verify_parametrization(&p(k, r, q), 16).unwrap().passed());
        }
    }

    #[test]
    fn fixed_k_curve_matches() {
        assert!(verify_fixed_k_curve(&p(1, 2, 1), 20).unwrap().passed());
        assert!(verify_fixed_k_curve(&p(1, 3, 2), 16).unwrap().passed());
        let q = p(1, 2, 1);
        let wrong = verify_fixed_k_curve_with(&q, &int(1), 20).unwrap();
        assert!(!wrong.passed());
        assert_eq!(wrong.witness["y_first_failure_exponent"], 3);
    }

    #[test]
    fn lagrange_catalan() {
        let f = TruncSeries::new(vec![int(0), int(1), int(-1)], 6);
        let inv = f.lagrange_invert().unwrap();
        let cat: Vec<_> = (1..=5).map(|i| inv.coeff(i)).collect();
        assert_eq!(cat, vec![int(1), int(1), int(2), int(5), int(14)]);
    }
}
