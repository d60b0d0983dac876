use num::{BigRational, Zero};
use serde_json::json;

use super::{params_json, parametrize};
use crate::error::Result;
use crate::exactmath::rational::factorial_rat;
use crate::exactmath::{BiTruncSeries, TruncSeries};
use crate::formulas::{OrbifoldParams, TwoPartTable};
use crate::report::Report;

/// `W_{0,2}(X_1, X_2) = Σ_{l,m ≥ 1} lh(l,m)/b! X_1^l X_2^m`.
pub fn w02_series(p: &OrbifoldParams, n: usize, m: usize) -> BiTruncSeries {
    let mut table = TwoPartTable::new(*p);
    let mut out = BiTruncSeries::zero(n, m);
    for l in 1..=n as u64 {
        for j in 1..=m as u64 {
            if let Some(b) = p.two_part_branch(l, j) {
                let v = table.value(l, j) / factorial_rat(b);
                out.set_coeff(l as usize, j as usize, v);
            }
        }
    }
    out
}

/// `Σ c_{lm} F(z_1)^l G(z_2)^m` for a series `F, G` with zero constant term.
fn substitute(w: &BiTruncSeries, f: &TruncSeries, g: &TruncSeries) -> BiTruncSeries {
    let (n, m) = w.orders();
    let powers = |s: &TruncSeries, top: usize| {
        let mut out = vec![TruncSeries::one(top)];
        let s = s.truncate(top);
        for i in 1..=top {
            out.push(&out[i - 1] * &s);
        }
        out
    };
    let fp = powers(f, n);
    let gp = powers(g, m);
    let mut out = BiTruncSeries::zero(n, m);
    for (l, j, c) in w.nonzero_terms() {
        for a in l..=n {
            let fa = fp[l].coeff(a);
            if fa.is_zero() {
                continue;
            }
            let ca = &c * fa;
            for bb in j..=m {
                let gb = gp[j].coeff(bb);
                if !gb.is_zero() {
                    let cur = out.coeff(a, bb);
                    out.set_coeff(a, bb, cur + &ca * gb);
                }
            }
        }
    }
    out
}

/// `D = W_{0,2}(X(z_1), X(z_2)) − log[u(z_1) u(z_2) / Δ]` with `u = X/z`
/// and `Δ = (X(z_2) − X(z_1))/(z_2 − z_1)`.
pub fn bergman_defect(p: &OrbifoldParams, n: usize, m: usize) -> Result<BiTruncSeries> {
    let top = n + m + 1;
    let curve = parametrize(p, top)?;
    let x = &curve.x_of_z;
    let w = substitute(&w02_series(p, n, m), x, x);
    let u = TruncSeries::from_fn(top - 1, |i| x.coeff(i + 1));
    let delta = BiTruncSeries::from_fn(n, m, |i, j| x.coeff(i + j + 1));
    let bracket = &BiTruncSeries::outer(&u.truncate(n), &u.truncate(m))
        * &inverse_bi(&delta)?;
    Ok(&w - &bracket.log()?)
}

/// Multiplicative inverse of a bi-series with constant term 1.
fn inverse_bi(s: &BiTruncSeries) -> Result<BiTruncSeries> {
    let (n, m) = s.orders();
    let mut h = s.clone();
    h.set_coeff(0, 0, BigRational::zero());
    let h = h.scale(&BigRational::from_integer((-1).into()));
    let mut out = BiTruncSeries::one(n, m);
    let mut power = BiTruncSeries::one(n, m);
    for _ in 0..n + m {
        power = &power * &h;
        if power.is_zero() {
            break;
        }
        out = &out + &power;
    }
    Ok(out)
}

/// Checks `∂_1 ∂_2 D = 0` below bidegree `(n, m)`.
pub fn verify_bergman_identity(p: &OrbifoldParams, n: usize, m: usize) -> Result<Report> {
    let d = bergman_defect(p, n, m)?;
    let mixed = d.d1().d2();
    let offending = mixed
        .nonzero_terms()
        .into_iter()
        .find(|&(i, j, _)| i < n && j < m)
        .map(|(i, j, _)| [i, j]);
    let mut params = params_json(p, n);
    params["order2"] = json!(m);
    let witness = json!({
        "first_nonzero_mixed_term": offending,
        "defect_symmetric": d.is_symmetric(),
    });
    Ok(Report::new(
        "bergman",
        params,
        offending.is_none() && d.is_symmetric(),
        witness,
    ))
}
