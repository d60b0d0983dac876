use std::collections::{BTreeSet, VecDeque};

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::linalg::solve;
use super::{chamber_signature, uniform_walls, walls, HurwitzCache, ResonancePoint, Wall};
use crate::error::{Error, Result};
use crate::exactmath::rational::format_rational;
use crate::report::Report;

/// Coordinates on the hyperplane `Σx = Σk`.
///
/// * `General`: `(x_1, …, x_n, k_1, …, k_{s−1})`, with `k_s` eliminated.
/// * `Uniform`: `(x_1, …, x_{n−1}, k)` on the slice `k_1 = … = k_s = k`,
///   with `x_n` eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    General,
    Uniform,
}

impl std::str::FromStr for Chart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Chart::General),
            "uniform" => Ok(Chart::Uniform),
            _ => Err(Error::Parse(format!("unknown chart {s:?}; expected general or uniform"))),
        }
    }
}

impl Chart {
    pub fn dim(self, n: usize, s: usize) -> usize {
        match self {
            Chart::General => n + s - 1,
            Chart::Uniform => n,
        }
    }

    pub fn coords(self, p: &ResonancePoint) -> Vec<i64> {
        match self {
            Chart::General => p.x.iter().chain(&p.k[..p.s() - 1]).copied().collect(),
            Chart::Uniform => {
                let mut t = p.x[..p.n() - 1].to_vec();
                t.push(p.k[0]);
                t
            }
        }
    }

    pub fn point(self, n: usize, s: usize, t: &[i64]) -> ResonancePoint {
        match self {
            Chart::General => {
                let x = t[..n].to_vec();
                let mut k = t[n..].to_vec();
                k.push(x.iter().sum::<i64>() - k.iter().sum::<i64>());
                ResonancePoint { x, k }
            }
            Chart::Uniform => {
                let kk = t[n - 1];
                let mut x = t[..n - 1].to_vec();
                x.push(s as i64 * kk - x.iter().sum::<i64>());
                ResonancePoint { x, k: vec![kk; s] }
            }
        }
    }

    pub fn walls(self, n: usize, s: usize) -> Vec<Wall> {
        match self {
            Chart::General => walls(n, s),
            Chart::Uniform => uniform_walls(n, s),
        }
    }
}

/// Exponent vectors of total degree `≤ d` in `dim` variables, graded then
/// lexicographically descending.
pub fn monomials(dim: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == dim {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=d {
        rec(dim, total, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_value(t: &[i64], e: &[u32]) -> BigRational {
    let mut v = BigInt::one();
    for (&ti, &ei) in t.iter().zip(e) {
        v *= BigInt::from(ti).pow(ei);
    }
    BigRational::from_integer(v)
}

/// A polynomial in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberPoly {
    pub chart: Chart,
    pub n: usize,
    pub s: usize,
    pub degree: u32,
    pub terms: Vec<(Vec<u32>, BigRational)>,
}

impl ChamberPoly {
    pub fn eval(&self, p: &ResonancePoint) -> BigRational {
        let t = self.chart.coords(p);
        self.terms
            .iter()
            .map(|(e, c)| c * monomial_value(&t, e))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Nonzero terms, e.g. `"1/12*t1^2"`.
    pub fn display_terms(&self) -> Vec<String> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| format!("t{}^{}", i + 1, p))
                    .collect();
                if mono.is_empty() {
                    format_rational(c)
                } else {
                    format!("{}*{}", format_rational(c), mono.join("*"))
                }
            })
            .collect()
    }
}

/// Interpolates `values` at `samples` by a polynomial of degree `≤ degree`.
/// Signals rank deficiency or the first inconsistent sample.
pub fn fit_values(
    chart: Chart,
    degree: u32,
    samples: &[ResonancePoint],
    values: &[BigRational],
) -> Result<ChamberPoly> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InvalidInput("no samples".into()))?;
    let (n, s) = (first.n(), first.s());
    let basis = monomials(chart.dim(n, s), degree);
    let rows = samples
        .iter()
        .map(|p| {
            let t = chart.coords(p);
            basis.iter().map(|e| monomial_value(&t, e)).collect()
        })
        .collect();
    let coeffs = solve(rows, values.to_vec())?;
    Ok(ChamberPoly {
        chart,
        n,
        s,
        degree,
        terms: basis.into_iter().zip(coeffs).collect(),
    })
}

/// Fits `hurwitz_at` on `samples`. Samples are not checked for a common
/// chamber; samples from two chambers give an [`Error::Inconsistent`].
pub fn fit_chamber_polynomial(
    g: u32,
    r_list: &[u32],
    chart: Chart,
    samples: &[ResonancePoint],
    cache: &mut HurwitzCache,
) -> Result<ChamberPoly> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InvalidInput("no samples".into()))?;
    let degree = degree_bound(r_list, first.n())?;
    let values = samples
        .iter()
        .map(|p| cache.at(g, r_list, p))
        .collect::<Result<Vec<_>>>()?;
    fit_values(chart, degree, samples, &values)
}

/// `D = 1 + Σr_i − n`.
pub fn degree_bound(r_list: &[u32], n: usize) -> Result<u32> {
    let d = 1 + r_list.iter().map(|&r| r as i64).sum::<i64>() - n as i64;
    u32::try_from(d).map_err(|_| Error::InvalidInput(format!("negative degree bound {d}")))
}

/// Steps of the walk: nonzero vectors in `{−1, 0, 1}^dim`, ordered by
/// support size then lexicographically descending.
fn steps(dim: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..3usize.pow(dim as u32))
        .map(|mut m| {
            (0..dim)
                .map(|_| {
                    let d = [0, 1, -1][m % 3];
                    m /= 3;
                    d
                })
                .collect()
        })
        .filter(|v: &Vec<i64>| v.iter().any(|&d| d != 0))
        .collect();
    out.sort_by(|a, b| {
        let sa = a.iter().filter(|&&d| d != 0).count();
        let sb = b.iter().filter(|&&d| d != 0).count();
        sa.cmp(&sb).then(b.cmp(a))
    });
    out
}

/// Breadth-first walk over king moves in chart coordinates, staying in the
/// chamber of `seed`. Returns up to `count` points, seed first.
pub fn lattice_walk(chart: Chart, seed: &ResonancePoint, count: usize) -> Result<Vec<ResonancePoint>> {
    let (n, s) = (seed.n(), seed.s());
    let ws = chart.walls(n, s);
    let sig = chamber_signature(seed, &ws)?;
    let start = chart.coords(seed);
    let moves = steps(start.len());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(t) = queue.pop_front() {
        out.push(chart.point(n, s, &t));
        if out.len() == count {
            break;
        }
        for step in &moves {
            let u: Vec<i64> = t.iter().zip(step).map(|(a, d)| a + d).collect();
            if !seen.insert(u.clone()) {
                continue;
            }
            let p = chart.point(n, s, &u);
            if chamber_signature(&p, &ws).ok().as_ref() == Some(&sig) {
                queue.push_back(u);
            }
        }
    }
    Ok(out)
}

/// One polynomiality experiment: `Σ(r_i − 1) = 2g − 2 + n`, chamber of
/// `seed`, fit on the nearest points, predict `held_out` further ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialityCase {
    pub g: u32,
    pub r_list: Vec<u32>,
    pub chart: Chart,
    pub seed: ResonancePoint,
    pub held_out: usize,
}

impl PolynomialityCase {
    fn params(&self) -> serde_json::Value {
        json!({
            "g": self.g,
            "n": self.seed.n(),
            "s": self.seed.s(),
            "r": self.r_list,
            "chart": self.chart,
            "seed": self.seed,
        })
    }

    /// Fits on the chamber of the seed, growing the training set until the
    /// system has full rank. Returns the fit and the training size.
    pub fn fit(&self, cache: &mut HurwitzCache) -> Result<(ChamberPoly, usize)> {
        let dim = monomials(self.chart.dim(self.seed.n(), self.seed.s()), degree_bound(&self.r_list, self.seed.n())?).len();
        let mut train = dim;
        loop {
            let pts = lattice_walk(self.chart, &self.seed, train)?;
            match fit_chamber_polynomial(self.g, &self.r_list, self.chart, &pts, cache) {
                Ok(p) => return Ok((p, train)),
                Err(Error::RankDeficient { .. }) if pts.len() == train && train < 10 * dim => train += dim / 2 + 1,
                Err(e) => return Err(e),
            }
        }
    }
}

fn point_json(p: &ResonancePoint) -> serde_json::Value {
    json!({ "x": p.x, "k": p.k })
}

/// Fits on one chamber and compares against `held_out` further points.
pub fn verify_polynomiality(case: &PolynomialityCase, cache: &mut HurwitzCache) -> Result<Report> {
    let (poly, train) = case.fit(cache)?;
    let pts = lattice_walk(case.chart, &case.seed, train + case.held_out)?;
    let held = &pts[train.min(pts.len())..];
    let mut mismatch = None;
    for p in held {
        let actual = cache.at(case.g, &case.r_list, p)?;
        let predicted = poly.eval(p);
        if actual != predicted && mismatch.is_none() {
            mismatch = Some(json!({
                "point": point_json(p),
                "predicted": format_rational(&predicted),
                "actual": format_rational(&actual),
            }));
        }
    }
    let ok = mismatch.is_none() && held.len() >= case.held_out;
    let witness = json!({
        "degree": poly.degree,
        "training_points": train,
        "held_out_points": held.len(),
        "polynomial": poly.display_terms(),
        "mismatch": mismatch,
    });
    Ok(Report::new("polynomiality", case.params(), ok, witness))
}

/// Evaluates the fit of `case` on `count` points of the chamber of `other`
/// and returns the first point where it disagrees with the actual value.
pub fn cross_wall_mismatch(
    case: &PolynomialityCase,
    other: &ResonancePoint,
    count: usize,
    cache: &mut HurwitzCache,
) -> Result<Option<(ResonancePoint, BigRational, BigRational)>> {
    let (poly, _) = case.fit(cache)?;
    for p in lattice_walk(case.chart, other, count)? {
        let actual = cache.at(case.g, &case.r_list, &p)?;
        let predicted = poly.eval(&p);
        if actual != predicted {
            return Ok(Some((p, predicted, actual)));
        }
    }
    Ok(None)
}

/// Report for a wall-failure experiment: the fit from `case` must fail on
/// the chamber of `other`.
pub fn verify_wall_failure(
    case: &PolynomialityCase,
    other: &ResonancePoint,
    count: usize,
    cache: &mut HurwitzCache,
) -> Result<Report> {
    let found = cross_wall_mismatch(case, other, count, cache)?;
    let mut params = case.params();
    params["other_seed"] = point_json(other);
    let witness = match &found {
        Some((p, predicted, actual)) => json!({
            "point": point_json(p),
            "predicted": format_rational(predicted),
            "actual": format_rational(actual),
        }),
        None => json!({ "checked_points": count }),
    };
    Ok(Report::new("wall-failure", params, found.is_some(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};

    fn pt(x: &[i64], k: &[i64]) -> ResonancePoint {
        ResonancePoint::new(x.to_vec(), k.to_vec()).unwrap()
    }

    #[test]
    fn step_order() {
        let st = steps(2);
        assert_eq!(st.len(), 8);
        assert_eq!(st[0], vec![1, 0]);
        assert_eq!(st[4], vec![1, 1]);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(3, 3).len(), 20);
        assert_eq!(monomials(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn chart_round_trip() {
        let p = pt(&[3, -1], &[1, 1]);
        for chart in [Chart::General, Chart::Uniform] {
            assert_eq!(chart.point(2, 2, &chart.coords(&p)), p);
        }
    }

    #[test]
    fn constant_fit() {
        let pts = vec![pt(&[2], &[2]), pt(&[3], &[3]), pt(&[4], &[4])];
        let vals = vec![int(5); 3];
        let poly = fit_values(Chart::General, 2, &pts, &vals).unwrap();
        assert_eq!(poly.eval(&pt(&[9], &[9])), int(5));
        assert_eq!(poly.display_terms(), vec!["5/1"]);
    }

    #[test]
    fn inconsistent_and_deficient() {
        let pts = vec![pt(&[2], &[2]), pt(&[3], &[3]), pt(&[4], &[4])];
        let err = fit_values(Chart::General, 1, &pts, &[int(1), int(2), int(4)]).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { row: 2 }));
        let err = fit_values(Chart::General, 2, &pts[..2], &[int(1), int(2)]).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { .. }));
    }

    #[test]
    fn walk_stays_in_chamber() {
        let seed = pt(&[1, 3], &[2, 2]);
        let pts = lattice_walk(Chart::Uniform, &seed, 30).unwrap();
        assert_eq!(pts.len(), 30);
        assert_eq!(pts[0], seed);
        for p in &pts {
            assert!(0 < p.x[0] && p.x[0] < p.k[0], "{p:?}");
        }
    }

    #[test]
    fn genus_one_single_insertion_is_polynomial() {
        let mut cache = HurwitzCache::new();
        let case = PolynomialityCase {
            g: 1,
            r_list: vec![3],
            chart: Chart::General,
            seed: pt(&[2, -1], &[1]),
            held_out: 10,
        };
        let report = verify_polynomiality(&case, &mut cache).unwrap();
        assert!(report.passed(), "{report:?}");
        let (poly, _) = case.fit(&mut cache).unwrap();
        assert_eq!(poly.eval(&pt(&[3, -1], &[2])), rat(3 * 3 + 1 - 1, 12));
    }
}
