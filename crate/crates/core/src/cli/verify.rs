use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::chambers::{
    chamber_points, verify_polynomiality, verify_wall_crossing, verify_wall_failure, Chart, HurwitzCache,
    PolynomialityCase, ResonancePoint, WallCrossingConvention,
};
use crate::error::{Error, Result};
use crate::formulas::OrbifoldParams;
use crate::oracle::OracleSweep;
use crate::report::Report;
use crate::spectral::{verify_bergman_identity, verify_curve_relation, verify_fixed_k_curve, verify_parametrization};

/// A verification suite and its parameters. The same shape is read from
/// manifest entries, tagged by `"suite"`.
#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "kebab-case")]
pub enum VerifyRequest {
    /// Chamber fit predicts held-out lattice points; optionally fails
    /// across a wall.
    Polynomiality(PolynomialityArgs),
    /// Difference of neighbouring chamber polynomials against the triple
    /// sum.
    WallCrossing(WallCrossingArgs),
    /// Algebraic relation satisfied by the one-part generating series.
    SpectralCurve(CurveArgs),
    /// Rational parametrization composed back to the one-part series.
    Parametrization(CurveArgs),
    /// Two-part generating series against the Bergman kernel.
    Bergman(CurveArgs),
    /// Fixed-leak curve against the parametrization.
    FixedKCurve(CurveArgs),
    /// Tropical enumeration against the Fock engine over a sweep.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub q: u32,
    /// Truncation order; per-suite default when absent.
    #[arg(long)]
    #[serde(default)]
    pub order: Option<usize>,
}

fn default_chart() -> Chart {
    Chart::General
}

fn default_held_out() -> usize {
    10
}

fn default_cross_points() -> usize {
    40
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialityArgs {
    #[arg(long)]
    pub g: u32,
    /// Completed-cycle orders, one per leak.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<u32>,
    /// Seed point `x`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x: Vec<i64>,
    /// Seed leaks `k`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub leaks: Vec<i64>,
    #[arg(long, default_value = "general")]
    #[serde(default = "default_chart")]
    pub chart: Chart,
    #[arg(long, default_value_t = 10)]
    #[serde(default = "default_held_out")]
    pub held_out: usize,
    /// A point in another chamber, where the fit must fail.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "across_leaks")]
    #[serde(default)]
    pub across_x: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "across_x")]
    #[serde(default)]
    pub across_leaks: Option<Vec<i64>>,
    /// Points of the other chamber to try.
    #[arg(long, default_value_t = 40)]
    #[serde(default = "default_cross_points")]
    pub cross_points: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionArg {
    /// Disconnected middle factor, multinomial weights, non-empty outer
    /// components.
    #[default]
    Validated,
    /// The triple sum term by term as printed.
    Literal,
}

impl From<ConventionArg> for WallCrossingConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Validated => WallCrossingConvention::default(),
            ConventionArg::Literal => WallCrossingConvention::literal(),
        }
    }
}

fn default_points() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallCrossingArgs {
    #[arg(long)]
    pub g: u32,
    /// Common completed-cycle order.
    #[arg(long)]
    pub r: u32,
    /// Number of insertions.
    #[arg(long)]
    pub s: usize,
    /// 1-based indices `I` of the wall `Σ_I x = j k`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub wall: Vec<usize>,
    /// Seed of the chamber `c1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x1: Vec<i64>,
    #[arg(long)]
    pub k1: i64,
    /// Seed of the chamber `c2`, where the identity is evaluated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub x2: Vec<i64>,
    #[arg(long)]
    pub k2: i64,
    #[arg(long, default_value_t = 4)]
    #[serde(default = "default_points")]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = ConventionArg::Validated)]
    #[serde(default)]
    pub convention: ConventionArg,
}

fn default_size_max() -> u32 {
    8
}

fn default_s_max() -> usize {
    3
}

fn default_leaks() -> Vec<i64> {
    vec![-1, 0, 1, 2]
}

fn default_r_max() -> u32 {
    4
}

#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 8)]
    #[serde(default = "default_size_max")]
    pub size_max: u32,
    #[arg(long, default_value_t = 3)]
    #[serde(default = "default_s_max")]
    pub s_max: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1,2")]
    #[serde(default = "default_leaks")]
    pub leaks: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    #[serde(default = "default_r_max")]
    pub r_max: u32,
}

/// Largest truncation order accepted by the series suites.
pub const ORDER_CAP: usize = 64;

/// Largest oracle sweep accepted.
pub const SWEEP_SIZE_CAP: u32 = 12;

fn params(a: &CurveArgs, default_order: usize) -> Result<(OrbifoldParams, usize)> {
    let order = a.order.unwrap_or(default_order);
    if order == 0 || order > ORDER_CAP {
        return Err(Error::InvalidInput(format!("order must be in 1..={ORDER_CAP}")));
    }
    Ok((OrbifoldParams::new(a.k, a.r, a.q)?, order))
}

fn polynomiality(a: &PolynomialityArgs) -> Result<Report> {
    let seed = ResonancePoint::new(a.x.clone(), a.leaks.clone())?;
    let case = PolynomialityCase {
        g: a.g,
        r_list: a.r.clone(),
        chart: a.chart,
        seed,
        held_out: a.held_out,
    };
    let mut cache = HurwitzCache::new();
    let mut report = verify_polynomiality(&case, &mut cache)?;
    if let (Some(x), Some(k)) = (&a.across_x, &a.across_leaks) {
        let other = ResonancePoint::new(x.clone(), k.clone())?;
        let failure = verify_wall_failure(&case, &other, a.cross_points, &mut cache)?;
        let ok = report.passed() && failure.passed();
        report.witness["wall_failure"] = serde_json::to_value(&failure)?;
        report.status = crate::report::Status::from_bool(ok);
    }
    Ok(report)
}

fn wall_crossing(a: &WallCrossingArgs) -> Result<Report> {
    let n = a.x1.len();
    if a.wall.is_empty() || a.wall.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::InvalidInput(format!("wall indices must lie in 1..={n}")));
    }
    let seed1 = ResonancePoint::new(a.x1.clone(), vec![a.k1; a.s])?;
    let seed2 = ResonancePoint::new(a.x2.clone(), vec![a.k2; a.s])?;
    let i_set: Vec<usize> = a.wall.iter().map(|i| i - 1).collect();
    let points = chamber_points(&seed2, a.points)?;
    let mut cache = HurwitzCache::new();
    verify_wall_crossing(a.g, a.r, &i_set, &seed1, &seed2, &points, a.convention.into(), &mut cache)
}

fn oracle(a: &OracleArgs, jobs: usize) -> Result<Report> {
    if a.size_max > SWEEP_SIZE_CAP || a.s_max > 4 || a.r_max > 6 {
        return Err(Error::InvalidInput(format!(
            "oracle sweep is capped at size {SWEEP_SIZE_CAP}, 4 insertions, order 6"
        )));
    }
    if a.r_max == 0 {
        return Err(Error::InvalidInput("r-max must be positive".into()));
    }
    let sweep = OracleSweep {
        size_max: a.size_max,
        s_max: a.s_max,
        leaks: a.leaks.clone(),
        r_max: a.r_max,
    };
    Ok(sweep.report(jobs))
}

pub fn run_verify(req: &VerifyRequest, jobs: usize) -> Result<Report> {
    match req {
        VerifyRequest::Polynomiality(a) => polynomiality(a),
        VerifyRequest::WallCrossing(a) => wall_crossing(a),
        VerifyRequest::SpectralCurve(a) => {
            let (p, order) = params(a, 25)?;
            Ok(verify_curve_relation(&p, order))
        }
        VerifyRequest::Parametrization(a) => {
            let (p, order) = params(a, 25)?;
            verify_parametrization(&p, order)
        }
        VerifyRequest::Bergman(a) => {
            let (p, order) = params(a, 12)?;
            verify_bergman_identity(&p, order, order)
        }
        VerifyRequest::FixedKCurve(a) => {
            let (p, order) = params(a, 25)?;
            verify_fixed_k_curve(&p, order)
        }
        VerifyRequest::Oracle(a) => oracle(a, jobs),
    }
}
