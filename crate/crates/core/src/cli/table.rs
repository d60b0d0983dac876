use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use num::{BigRational, Zero};
use rayon::prelude::*;

use super::Failure;
use crate::exactmath::{format_rational, Partition};
use crate::formulas::{
    one_part_closed, two_part_closed, Normalization, OnePartTable, OrbifoldParams, TwoPartTable,
};
use crate::tropical::hurwitz_tropical;

/// Largest `m-max` / `l-max` accepted.
pub const TABLE_CAP: u64 = 400;

/// Largest `|μ|` enumerated tropically; `all` skips the tropical column
/// above it.
pub const TROPICAL_SIZE_CAP: u64 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMethod {
    Closed,
    Recursion,
    Tropical,
    /// Every method; rows must agree.
    All,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("range").required(true).args(["m_max", "l_max"])))]
pub struct TableArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub q: u32,
    /// One-part table for `m = 1..=m_max`.
    #[arg(long)]
    pub m_max: Option<u64>,
    /// Two-part table for `1 ≤ l, m ≤ l_max`.
    #[arg(long)]
    pub l_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = TableMethod::Closed)]
    pub method: TableMethod,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Connected tropical value of the orbifold query, divided by `d!`.
fn tropical_lh(p: &OrbifoldParams, mu: Vec<u32>, b: u64) -> BigRational {
    let mu = Partition::new(mu).expect("positive parts");
    match p.query(mu, b) {
        Some(q) => Normalization::for_query(&q).connected_to_lh(&hurwitz_tropical(&q)),
        None => BigRational::zero(),
    }
}

fn agree(label: &str, values: &[(&str, BigRational)]) -> Result<BigRational, Failure> {
    let (_, first) = &values[0];
    if values.iter().all(|(_, v)| v == first) {
        return Ok(first.clone());
    }
    let shown: Vec<String> = values.iter().map(|(m, v)| format!("{m} = {}", format_rational(v))).collect();
    Err(Failure::Mismatch(format!("row {label}: {}", shown.join(", "))))
}

fn one_part_rows(p: OrbifoldParams, m_max: u64, method: TableMethod) -> Result<Vec<Vec<String>>, Failure> {
    let ms: Vec<(u64, u64)> = (1..=m_max).filter_map(|m| p.one_part_branch(m).map(|b| (m, b))).collect();
    ms.par_iter()
        .map_init(
            || OnePartTable::new(p),
            |table, &(m, b)| {
                let v = match method {
                    TableMethod::Closed => one_part_closed(&p, m),
                    TableMethod::Recursion => table.value(m),
                    TableMethod::Tropical => tropical_lh(&p, vec![m as u32], b),
                    TableMethod::All => {
                        let mut values = vec![("closed", one_part_closed(&p, m)), ("recursion", table.value(m))];
                        if m <= TROPICAL_SIZE_CAP {
                            values.push(("tropical", tropical_lh(&p, vec![m as u32], b)));
                        }
                        agree(&format!("m = {m}"), &values)?
                    }
                };
                Ok(vec![m.to_string(), b.to_string(), format_rational(&v)])
            },
        )
        .collect()
}

fn two_part_rows(p: OrbifoldParams, l_max: u64, method: TableMethod) -> Result<Vec<Vec<String>>, Failure> {
    let pairs: Vec<(u64, u64)> = (1..=l_max).flat_map(|l| (1..=l_max).map(move |m| (l, m))).collect();
    pairs
        .par_iter()
        .map_init(
            || TwoPartTable::new(p),
            |table, &(l, m)| {
                let Some(b) = p.two_part_branch(l, m) else {
                    return Ok(vec![l.to_string(), m.to_string(), String::new(), "0/1".to_string()]);
                };
                let v = match method {
                    TableMethod::Closed => two_part_closed(&p, l, m),
                    TableMethod::Recursion => table.value(l, m),
                    TableMethod::Tropical => tropical_lh(&p, vec![l as u32, m as u32], b),
                    TableMethod::All => {
                        let mut values = vec![("closed", two_part_closed(&p, l, m)), ("recursion", table.value(l, m))];
                        if l + m <= TROPICAL_SIZE_CAP {
                            values.push(("tropical", tropical_lh(&p, vec![l as u32, m as u32], b)));
                        }
                        agree(&format!("(l, m) = ({l}, {m})"), &values)?
                    }
                };
                Ok(vec![l.to_string(), m.to_string(), b.to_string(), format_rational(&v)])
            },
        )
        .collect()
}

/// The table as CSV text with a header row. Inadmissible two-part rows
/// have an empty `b` and value `0/1`.
pub fn table_csv(args: &TableArgs, jobs: usize) -> Result<String, Failure> {
    let p = OrbifoldParams::new(args.k, args.r, args.q)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let largest = match (args.m_max, args.l_max) {
        (Some(m), _) => m,
        (_, Some(l)) => 2 * l,
        _ => 0,
    };
    if args.method == TableMethod::Tropical && largest > TROPICAL_SIZE_CAP {
        return Err(Failure::Usage(format!(
            "tropical tables are capped at |μ| ≤ {TROPICAL_SIZE_CAP}"
        )));
    }
    let (header, rows) = match (args.m_max, args.l_max) {
        (Some(m_max), None) => {
            if m_max > TABLE_CAP {
                return Err(Failure::Usage(format!("--m-max is capped at {TABLE_CAP}")));
            }
            (vec!["m", "b", "value"], pool.install(|| one_part_rows(p, m_max, args.method))?)
        }
        (None, Some(l_max)) => {
            if l_max > TABLE_CAP {
                return Err(Failure::Usage(format!("--l-max is capped at {TABLE_CAP}")));
            }
            (vec!["l", "m", "b", "value"], pool.install(|| two_part_rows(p, l_max, args.method))?)
        }
        _ => return Err(Failure::Usage("give exactly one of --m-max and --l-max".into())),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii output"))
}
