//! Exhaustive agreement sweep: tropical enumeration against the Fock
//! engine, and against the character formula at zero leak.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exactmath::rational::format_rational;
use crate::exactmath::{partitions_of, Partition};
use crate::fock::{CharacterOracle, FockEngine};
use crate::query::{HurwitzQuery, Insertion, InsertionList};
use crate::report::Report;
use crate::tropical::GroupedCovers;

/// Every disconnected query with `|μ| ≤ size_max`, at most `s_max`
/// insertions, leaks from `leaks` and orders `1..=r_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSweep {
    pub size_max: u32,
    pub s_max: usize,
    pub leaks: Vec<i64>,
    pub r_max: u32,
}

impl Default for OracleSweep {
    fn default() -> Self {
        OracleSweep {
            size_max: 8,
            s_max: 3,
            leaks: vec![-1, 0, 1, 2],
            r_max: 4,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepCounts {
    pub insertion_lists: usize,
    pub queries: usize,
    pub nonzero: usize,
    pub character_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub query: HurwitzQuery,
    pub tropical: BigRational,
    pub other: BigRational,
    pub against: &'static str,
}

type Layer = BTreeMap<Partition, BigRational>;

/// Insertion prefix, size bound, and the layer reached from each `μ`.
type PrefixLayers = (Vec<Insertion>, u32, Vec<(Partition, Layer)>);

/// Engines and caches owned by one sweep worker. Tropical layers for the
/// most recent insertion prefix are kept, so lists sharing all but their
/// last insertion extend the same partial covers.
#[derive(Default)]
pub struct SweepWorker {
    engine: FockEngine,
    grouped: GroupedCovers,
    characters: CharacterOracle,
    prefix: Option<PrefixLayers>,
}

impl SweepWorker {
    fn tropical(&mut self, size_max: u32, ins: &InsertionList) -> BTreeMap<(Partition, Partition), BigRational> {
        let mut out = BTreeMap::new();
        let Some((&last, prefix)) = ins.0.split_last() else {
            for n in 0..=size_max {
                for mu in partitions_of(n) {
                    out.insert((mu.clone(), mu.clone()), GroupedCovers::finish(GroupedCovers::start(&mu))[&mu].clone());
                }
            }
            return out;
        };
        let cached = matches!(&self.prefix, Some((p, s, _)) if p == prefix && *s == size_max);
        if !cached {
            let mut layers = Vec::new();
            for n in 0..=size_max {
                for mu in partitions_of(n) {
                    let mut layer = GroupedCovers::start(&mu);
                    for &i in prefix {
                        layer = self.grouped.step(&layer, i);
                    }
                    layers.push((mu, layer));
                }
            }
            self.prefix = Some((prefix.to_vec(), size_max, layers));
        }
        let leak = ins.total_leak();
        let (_, _, layers) = self.prefix.as_ref().expect("just filled");
        for (mu, layer) in layers {
            if (mu.size() as i64) < leak {
                continue;
            }
            let done = GroupedCovers::finish(self.grouped.step(layer, last));
            for (nu, v) in done {
                out.insert((mu.clone(), nu), v);
            }
        }
        out
    }
}

impl OracleSweep {
    /// Insertion lists in a fixed order: by length, then lexicographic in
    /// `(k, r)` per slot.
    pub fn insertion_lists(&self) -> Vec<InsertionList> {
        let mut singles = Vec::new();
        for &k in &self.leaks {
            for r in 1..=self.r_max {
                singles.push(Insertion { k, r });
            }
        }
        let mut out = vec![InsertionList::default()];
        let mut layer = vec![Vec::new()];
        for _ in 0..self.s_max {
            let mut next = Vec::new();
            for prefix in &layer {
                for &ins in &singles {
                    let mut l: Vec<Insertion> = prefix.clone();
                    l.push(ins);
                    next.push(l);
                }
            }
            out.extend(next.iter().cloned().map(InsertionList::new));
            layer = next;
        }
        out
    }

    /// Runs one insertion list; returns its counts and the first
    /// disagreement, if any.
    pub fn check_list(&self, ins: &InsertionList, worker: &mut SweepWorker) -> (SweepCounts, Option<Disagreement>) {
        let mut counts = SweepCounts {
            insertion_lists: 1,
            ..Default::default()
        };
        let leak = ins.total_leak();
        let tropical = worker.tropical(self.size_max, ins);
        let mut fock: BTreeMap<(Partition, Partition), BigRational> = BTreeMap::new();
        let nu_sizes: BTreeSet<i64> = (0..=self.size_max as i64).map(|n| n - leak).filter(|&m| m >= 0).collect();
        for m in nu_sizes {
            for nu in partitions_of(m as u32) {
                for (mu, v) in worker.engine.disconnected_all_mu(&nu, ins) {
                    if mu.size() <= self.size_max as u64 && !v.is_zero() {
                        fock.insert((mu, nu.clone()), v);
                    }
                }
            }
        }
        let zero_leak = ins.iter().all(|i| i.k == 0);
        let r_list: Vec<u32> = ins.iter().map(|i| i.r).collect();
        let mut first = None;
        for n in 0..=self.size_max as i64 {
            if n < leak {
                continue;
            }
            for mu in partitions_of(n as u32) {
                for nu in partitions_of((n - leak) as u32) {
                    counts.queries += 1;
                    let key = (mu.clone(), nu);
                    let t = tropical.get(&key).cloned().unwrap_or_default();
                    let f = fock.get(&key).cloned().unwrap_or_default();
                    if !t.is_zero() {
                        counts.nonzero += 1;
                    }
                    let query = || HurwitzQuery::new(key.0.clone(), key.1.clone(), ins.clone(), false);
                    if t != f && first.is_none() {
                        first = Some(Disagreement {
                            query: query(),
                            tropical: t.clone(),
                            other: f,
                            against: "fock",
                        });
                    }
                    if zero_leak {
                        counts.character_checks += 1;
                        let c = worker.characters.value(&key.0, &key.1, &r_list).expect("equal sizes");
                        if t != c && first.is_none() {
                            first = Some(Disagreement {
                                query: query(),
                                tropical: t,
                                other: c,
                                against: "characters",
                            });
                        }
                    }
                }
            }
        }
        (counts, first)
    }

    /// The full sweep over `jobs` workers, each with its own engine.
    pub fn run(&self, jobs: usize) -> (SweepCounts, Option<Disagreement>) {
        let lists = self.insertion_lists();
        let chunk = lists.len().div_ceil(jobs.max(1)).max(1);
        let results: Vec<(SweepCounts, Option<Disagreement>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = lists
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        let mut worker = SweepWorker::default();
                        let mut total = SweepCounts::default();
                        let mut first = None;
                        for ins in part {
                            let (c, d) = self.check_list(ins, &mut worker);
                            total.insertion_lists += c.insertion_lists;
                            total.queries += c.queries;
                            total.nonzero += c.nonzero;
                            total.character_checks += c.character_checks;
                            if first.is_none() {
                                first = d;
                            }
                        }
                        (total, first)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut total = SweepCounts::default();
        let mut first = None;
        for (c, d) in results {
            total.insertion_lists += c.insertion_lists;
            total.queries += c.queries;
            total.nonzero += c.nonzero;
            total.character_checks += c.character_checks;
            if first.is_none() {
                first = d;
            }
        }
        (total, first)
    }

    pub fn report(&self, jobs: usize) -> Report {
        let (counts, first) = self.run(jobs);
        let witness = json!({
            "insertion_lists": counts.insertion_lists,
            "queries": counts.queries,
            "nonzero": counts.nonzero,
            "character_checks": counts.character_checks,
            "disagreement": first.as_ref().map(|d| json!({
                "query": d.query,
                "tropical": format_rational(&d.tropical),
                "other": format_rational(&d.other),
                "against": d.against,
            })),
        });
        Report::new("oracle", serde_json::to_value(self).expect("plain data"), first.is_none(), witness)
    }
}
