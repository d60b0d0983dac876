use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::poly::{lattice_walk, Chart, PolynomialityCase};
use super::{HurwitzCache, ResonancePoint};
use crate::error::{Error, Result};
use crate::exactmath::rational::{format_rational, int, multinomial};
use crate::exactmath::{partitions_of, Partition};
use crate::query::{HurwitzQuery, InsertionList};
use crate::report::Report;

/// How the middle component `(y, z)` is counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MiddleFactor {
    Connected,
    Disconnected,
}

/// Which block count sets the sign of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignRule {
    Alpha2,
    Alpha3,
}

/// Reading of the triple sum.
///
/// The default counts the middle component disconnected, weights each term
/// by `binom(s; α_1, α_2, α_3)` and requires vertices in both outer
/// components; it matches `P_{c2} − P_{c1}` at lattice points of `c2`.
/// [`WallCrossingConvention::literal`] is the sum exactly as printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallCrossingConvention {
    pub middle: MiddleFactor,
    pub sign: SignRule,
    /// Allow outer components without inner vertices.
    pub empty_outer: bool,
    /// Weight each term by `binom(s; α_1, α_2, α_3)`.
    pub multinomial: bool,
}

impl Default for WallCrossingConvention {
    fn default() -> Self {
        WallCrossingConvention {
            middle: MiddleFactor::Disconnected,
            sign: SignRule::Alpha2,
            empty_outer: false,
            multinomial: true,
        }
    }
}

impl WallCrossingConvention {
    pub fn literal() -> Self {
        WallCrossingConvention {
            middle: MiddleFactor::Connected,
            sign: SignRule::Alpha2,
            empty_outer: true,
            multinomial: false,
        }
    }
}

/// One nonzero `(α, y, z)` contribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossingTerm {
    pub alpha: [usize; 3],
    pub y: Partition,
    pub z: Partition,
    pub genera: [Option<u32>; 3],
    /// `(α_1 r + 2 − ℓ(x_I) − ℓ(z))/2` when integral.
    pub printed_g1: Option<i64>,
    pub value: BigRational,
}

fn split(xs: &[i64]) -> (Vec<u32>, Vec<u32>) {
    let pos = xs.iter().filter(|&&v| v > 0).map(|&v| v as u32).collect();
    let neg = xs.iter().filter(|&&v| v < 0).map(|&v| (-v) as u32).collect();
    (pos, neg)
}

fn join(a: &[u32], b: &Partition) -> Partition {
    let mut v = a.to_vec();
    v.extend_from_slice(b.parts());
    Partition::new(v).expect("positive parts")
}

fn component(
    mu: Partition,
    nu: Partition,
    k: i64,
    r: u32,
    count: usize,
    connected: bool,
    cache: &mut HurwitzCache,
) -> (BigRational, Option<u32>) {
    let q = HurwitzQuery::new(mu, nu, InsertionList::uniform(k, r, count), connected);
    let genus = q.genus();
    if q.mu.is_empty() && q.nu.is_empty() && count == 0 {
        let v = if connected { BigRational::zero() } else { int(1) };
        return (v, genus);
    }
    (cache.get(&q), genus)
}

/// `∏ y_i / |Aut y|`, the ordered-tuple weight `∏ y_i / ℓ(y)!` summed over
/// the orderings of `y`.
fn tuple_weight(y: &Partition) -> BigRational {
    BigRational::new(y.product(), y.aut_order())
}

/// The triple sum for the wall `Σ_{i∈I} x_i = j k` at `x`, uniform leak
/// `k` and order `r`. Component genera come from each component's own
/// Riemann–Hurwitz count.
pub fn wall_crossing_terms(
    i_set: &[usize],
    x: &ResonancePoint,
    r: u32,
    conv: WallCrossingConvention,
    cache: &mut HurwitzCache,
) -> Result<Vec<WallCrossingTerm>> {
    let s = x.s();
    let k = x.k[0];
    if x.k.iter().any(|&kj| kj != k) {
        return Err(Error::InvalidInput("wall crossing needs a uniform leak".into()));
    }
    let x_in: Vec<i64> = i_set.iter().map(|&i| x.x[i]).collect();
    let x_out: Vec<i64> = (0..x.n()).filter(|i| !i_set.contains(i)).map(|i| x.x[i]).collect();
    let (in_pos, in_neg) = split(&x_in);
    let (out_pos, out_neg) = split(&x_out);
    let sum_in: i64 = x_in.iter().sum();
    let sum_out: i64 = x_out.iter().sum();
    let mut terms = Vec::new();
    for a1 in 0..=s {
        for a2 in 0..=s - a1 {
            let a3 = s - a1 - a2;
            if !conv.empty_outer && (a1 == 0 || a3 == 0) {
                continue;
            }
            let y_size = sum_in - a1 as i64 * k;
            let z_size = a3 as i64 * k - sum_out;
            if y_size < 0 || z_size < 0 {
                continue;
            }
            let sign = match conv.sign {
                SignRule::Alpha2 if a2 % 2 == 1 => int(-1),
                SignRule::Alpha3 if a3 % 2 == 1 => int(-1),
                _ => int(1),
            };
            let sign = if conv.multinomial {
                sign * BigRational::from_integer(multinomial(&[a1 as u64, a2 as u64, a3 as u64]))
            } else {
                sign
            };
            for y in partitions_of(y_size as u32) {
                let (h1, g1) = component(
                    Partition::new(in_pos.clone())?,
                    join(&in_neg, &y),
                    k,
                    r,
                    a1,
                    true,
                    cache,
                );
                if h1.is_zero() {
                    continue;
                }
                for z in partitions_of(z_size as u32) {
                    let (h2, g2) = component(
                        y.clone(),
                        z.clone(),
                        k,
                        r,
                        a2,
                        conv.middle == MiddleFactor::Connected,
                        cache,
                    );
                    if h2.is_zero() {
                        continue;
                    }
                    let (h3, g3) = component(
                        join(&out_pos, &z),
                        Partition::new(out_neg.clone())?,
                        k,
                        r,
                        a3,
                        true,
                        cache,
                    );
                    if h3.is_zero() {
                        continue;
                    }
                    let twice = a1 as i64 * r as i64 + 2 - x_in.len() as i64 - z.len() as i64;
                    let printed_g1 = (twice % 2 == 0).then_some(twice / 2);
                    let value = &sign * tuple_weight(&y) * tuple_weight(&z) * &h1 * &h2 * h3;
                    terms.push(WallCrossingTerm {
                        alpha: [a1, a2, a3],
                        y: y.clone(),
                        z,
                        genera: [g1, g2, g3],
                        printed_g1,
                        value,
                    });
                }
            }
        }
    }
    Ok(terms)
}

pub fn wall_crossing_rhs(
    i_set: &[usize],
    x: &ResonancePoint,
    r: u32,
    conv: WallCrossingConvention,
    cache: &mut HurwitzCache,
) -> Result<BigRational> {
    Ok(wall_crossing_terms(i_set, x, r, conv, cache)?
        .into_iter()
        .fold(BigRational::zero(), |a, t| a + t.value))
}

/// Fits the chamber polynomials on both sides of `Σ_{I} x = j k` (uniform
/// chart) and compares `P_{c2} − P_{c1}` with the triple sum at each of
/// `points`. `c2` is the side of `seed2`.
pub fn verify_wall_crossing(
    g: u32,
    r: u32,
    i_set: &[usize],
    seed1: &ResonancePoint,
    seed2: &ResonancePoint,
    points: &[ResonancePoint],
    conv: WallCrossingConvention,
    cache: &mut HurwitzCache,
) -> Result<Report> {
    let r_list = vec![r; seed1.s()];
    let case = |seed: &ResonancePoint| PolynomialityCase {
        g,
        r_list: r_list.clone(),
        chart: Chart::Uniform,
        seed: seed.clone(),
        held_out: 0,
    };
    let (p1, _) = case(seed1).fit(cache)?;
    let (p2, _) = case(seed2).fit(cache)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for x in points {
        let lhs = p2.eval(x) - p1.eval(x);
        let terms = wall_crossing_terms(i_set, x, r, conv, cache)?;
        let rhs = terms.iter().fold(BigRational::zero(), |a, t| a + &t.value);
        let conflicts = terms
            .iter()
            .filter(|t| t.printed_g1 != t.genera[0].map(i64::from))
            .count();
        ok &= lhs == rhs;
        rows.push(json!({
            "point": { "x": x.x, "k": x.k },
            "lhs": format_rational(&lhs),
            "rhs": format_rational(&rhs),
            "terms": terms.len(),
            "printed_g1_conflicts": conflicts,
        }));
    }
    let params = json!({
        "g": g,
        "n": seed1.n(),
        "s": seed1.s(),
        "r": r,
        "wall_i": i_set.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "convention": conv,
    });
    Ok(Report::new(
        "wall-crossing",
        params,
        ok && !points.is_empty(),
        json!({ "evaluations": rows }),
    ))
}

/// Lattice points of the chamber of `seed`, nearest first.
pub fn chamber_points(seed: &ResonancePoint, count: usize) -> Result<Vec<ResonancePoint>> {
    lattice_walk(Chart::Uniform, seed, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    fn pt(x: &[i64], k: i64) -> ResonancePoint {
        ResonancePoint::new(x.to_vec(), vec![k; 2]).unwrap()
    }

    // g = 1, n = 2, two insertions of order 2 across x_1 = k
    fn genus_one_wall(conv: WallCrossingConvention) -> Report {
        let mut cache = HurwitzCache::new();
        let seed1 = pt(&[3, 9], 6);
        let seed2 = pt(&[9, 3], 6);
        let points = chamber_points(&seed2, 4).unwrap();
        verify_wall_crossing(1, 2, &[0], &seed1, &seed2, &points, conv, &mut cache).unwrap()
    }

    #[test]
    fn difference_is_triple_sum() {
        let report = genus_one_wall(WallCrossingConvention::default());
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn literal_reading_differs() {
        assert!(!genus_one_wall(WallCrossingConvention::literal()).passed());
    }

    #[test]
    fn single_point() {
        let mut cache = HurwitzCache::new();
        // (δ³ − δ)/6 with δ = x_1 − k = 2
        let rhs = wall_crossing_rhs(&[0], &pt(&[5, 1], 3), 2, Default::default(), &mut cache).unwrap();
        assert_eq!(rhs, int(1));
        let terms = wall_crossing_terms(&[0], &pt(&[5, 1], 3), 2, Default::default(), &mut cache).unwrap();
        assert!(terms.iter().all(|t| t.alpha[0] >= 1 && t.alpha[2] >= 1));
    }

    #[test]
    fn needs_uniform_leak() {
        let mut cache = HurwitzCache::new();
        let p = ResonancePoint::new(vec![5, 1], vec![2, 4]).unwrap();
        assert!(wall_crossing_terms(&[0], &p, 2, Default::default(), &mut cache).is_err());
    }
}
