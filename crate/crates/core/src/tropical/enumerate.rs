//! Depth-first enumeration of leaky tropical covers at the level of Wick
//! pairings.
//!
//! Strands are distinguishable objects. Vertex `i` (insertion `i`, left to
//! right) takes a set of open strands, has genus `g` and valence
//! `r + 1 − 2g`, and emits a multiset of new strands with
//! `Σin − Σout = k`. A cover contributes
//!
//! `∏ (vertex out weights) · ∏ (r−1)! m_g(in, out) / |Aut out| · ∏_w d_w! / ∏ν`
//!
//! where `d_w` counts parts of `ν` equal to `w`.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, One, Zero};

use crate::exactmath::combinat::k_subsets;
use crate::exactmath::rational::factorial_rat;
use crate::exactmath::{partitions_with_len, sub_multisets, vertex_multiplicity, Partition};
use crate::query::{HurwitzQuery, Insertion};

/// Where a strand starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// The `i`-th part of `μ` (0-based).
    MuEnd(usize),
    /// Slot `j` of the outgoing strands of vertex `i` (both 0-based).
    VertexOut(usize, usize),
}

impl Origin {
    /// `"mu:i"` or `"v:i.j"`, 1-based.
    pub fn label(&self) -> String {
        match *self {
            Origin::MuEnd(i) => format!("mu:{}", i + 1),
            Origin::VertexOut(v, j) => format!("v:{}.{}", v + 1, j + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strand {
    pub weight: u32,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropVertex {
    pub genus: u32,
    pub incoming: Vec<Strand>,
    pub out_weights: Vec<u32>,
}

impl TropVertex {
    pub fn valence(&self) -> usize {
        self.incoming.len() + self.out_weights.len()
    }
}

/// One enumerated cover. Leftover strands are matched to `ν` canonically
/// (sorted by decreasing weight, ties in origin order); the weight already
/// counts all `∏ d_w!` weight-preserving matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropCover {
    pub vertices: Vec<TropVertex>,
    pub nu_matching: Vec<(Origin, usize)>,
    pub weight: BigRational,
}

impl TropCover {
    /// Number of edges minus nodes plus one, with μ-ends, vertices and
    /// ν-ends as nodes. Meaningful for connected covers.
    pub fn first_betti(&self, mu_len: usize) -> i64 {
        let nu_len = self.nu_matching.len();
        let edges = mu_len + self.vertices.iter().map(|v| v.out_weights.len()).sum::<usize>();
        let nodes = mu_len + self.vertices.len() + nu_len;
        edges as i64 - nodes as i64 + 1
    }

    pub fn total_vertex_genus(&self) -> u32 {
        self.vertices.iter().map(|v| v.genus).sum()
    }
}

#[derive(Clone)]
struct OpenStrand {
    strand: Strand,
    node: usize,
}

/// A leaf of the search: the leftover strands and the accumulated weight
/// before the `ν` factor.
struct Leaf<'s> {
    open: &'s [OpenStrand],
    weight: &'s BigRational,
    vertices: &'s [TropVertex],
}

struct Search<'q> {
    mu_len: usize,
    ins: &'q [Insertion],
    connected: bool,
    record: bool,
    /// Fixed `ν`, used to prune on leftover strand weights.
    target: Option<&'q Partition>,
    weights: VertexWeights,
}

/// Per-vertex factor `(r−1)! m_g(in, out) ∏out / |Aut out|`, memoized on
/// the genus and the sorted incident weights.
#[derive(Default)]
struct VertexWeights {
    mg_cache: HashMap<(u32, Vec<u32>), BigRational>,
}

impl VertexWeights {
    fn factor(&mut self, g: u32, r: u32, incoming: &[u32], out: &Partition) -> BigRational {
        let mut all: Vec<u32> = incoming.iter().chain(out.parts()).copied().collect();
        all.sort_unstable();
        let m = self
            .mg_cache
            .entry((g, all))
            .or_insert_with_key(|(g, all)| vertex_multiplicity(*g, all, &[]))
            .clone();
        if m.is_zero() {
            return m;
        }
        let out_w: BigInt = out.product();
        factorial_rat(r as u64 - 1) * m * BigRational::from_integer(out_w)
            / BigRational::from_integer(out.aut_order())
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl<'q> Search<'q> {
    /// `true` if the partial cover already has a finished component while
    /// other nodes exist or will exist.
    fn violates_connectivity(&self, i: usize, open: &[OpenStrand], parent: &mut [usize]) -> bool {
        let nodes = self.mu_len + i + 1;
        let mut has_open = vec![false; parent.len()];
        for o in open {
            let root = find(parent, o.node);
            has_open[root] = true;
        }
        let mut roots = Vec::new();
        for n in 0..nodes {
            let root = find(parent, n);
            if !roots.contains(&root) {
                roots.push(root);
            }
        }
        let closed = roots.iter().any(|&r| !has_open[r]);
        let more_to_come = i + 1 < self.ins.len();
        closed && (roots.len() > 1 || more_to_come)
    }

    fn visit(
        &mut self,
        i: usize,
        open: Vec<OpenStrand>,
        parent: Vec<usize>,
        weight: BigRational,
        vertices: &mut Vec<TropVertex>,
        leaf: &mut dyn FnMut(Leaf<'_>),
    ) {
        if i == self.ins.len() {
            if self.connected {
                let mut parent = parent;
                let nodes = self.mu_len + i;
                // the empty graph has no components
                if nodes == 0 {
                    return;
                }
                let r0 = find(&mut parent, 0);
                if (1..nodes).any(|n| find(&mut parent, n) != r0) {
                    return;
                }
            }
            leaf(Leaf {
                open: &open,
                weight: &weight,
                vertices,
            });
            return;
        }
        let Insertion { k, r } = self.ins[i];
        let node = self.mu_len + i;
        let n_open = open.len();
        for g in 0..=r.div_ceil(2) {
            let w = (r + 1 - 2 * g) as usize;
            for a in 0..=w.min(n_open) {
                let mut subsets = Vec::new();
                k_subsets(n_open, a, &mut subsets);
                for subset in subsets {
                    let in_weights: Vec<u32> = subset.iter().map(|&j| open[j].strand.weight).collect();
                    let s_out = in_weights.iter().map(|&x| x as i64).sum::<i64>() - k;
                    if s_out < 0 {
                        continue;
                    }
                    let rest: Vec<OpenStrand> = open
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| !subset.contains(j))
                        .map(|(_, o)| o.clone())
                        .collect();
                    let mut parent_next = parent.clone();
                    for &j in &subset {
                        let ra = find(&mut parent_next, open[j].node);
                        let rb = find(&mut parent_next, node);
                        parent_next[ra] = rb;
                    }
                    for out in partitions_with_len(s_out as u32, w - a) {
                        let f = self.weights.factor(g, r, &in_weights, &out);
                        if f.is_zero() {
                            continue;
                        }
                        let mut open_next = rest.clone();
                        for (slot, &wt) in out.parts().iter().enumerate() {
                            open_next.push(OpenStrand {
                                strand: Strand {
                                    weight: wt,
                                    origin: Origin::VertexOut(i, slot),
                                },
                                node,
                            });
                        }
                        if let Some(target) = self.target {
                            if i + 1 == self.ins.len() && open_next.len() != target.len() {
                                continue;
                            }
                        }
                        let mut parent_branch = parent_next.clone();
                        if self.connected && self.violates_connectivity(i, &open_next, &mut parent_branch) {
                            continue;
                        }
                        if self.record {
                            vertices.push(TropVertex {
                                genus: g,
                                incoming: subset.iter().map(|&j| open[j].strand).collect(),
                                out_weights: out.parts().to_vec(),
                            });
                        }
                        self.visit(i + 1, open_next, parent_branch, &weight * f, vertices, leaf);
                        if self.record {
                            vertices.pop();
                        }
                    }
                }
            }
        }
    }
}

fn run_search(
    mu: &Partition,
    ins: &[Insertion],
    connected: bool,
    record: bool,
    target: Option<&Partition>,
    leaf: &mut dyn FnMut(Leaf<'_>),
) {
    let mu_len = mu.len();
    let open: Vec<OpenStrand> = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &w)| OpenStrand {
            strand: Strand {
                weight: w,
                origin: Origin::MuEnd(i),
            },
            node: i,
        })
        .collect();
    let parent: Vec<usize> = (0..mu_len + ins.len()).collect();
    let mut search = Search {
        mu_len,
        ins,
        connected,
        record,
        target,
        weights: VertexWeights::default(),
    };
    let mut vertices = Vec::new();
    search.visit(0, open, parent, BigRational::one(), &mut vertices, leaf);
}

fn leftover_partition(open: &[OpenStrand]) -> Partition {
    Partition::new(open.iter().map(|o| o.strand.weight).collect()).expect("positive weights")
}

fn nu_factor(nu: &Partition) -> BigRational {
    BigRational::new(nu.aut_order(), nu.product())
}

/// Streams every cover of `q` in canonical order.
pub fn for_each_cover(q: &HurwitzQuery, mut f: impl FnMut(TropCover)) {
    if !q.is_admissible() {
        return;
    }
    let nu = &q.nu;
    run_search(&q.mu, &q.insertions.0, q.connected, true, Some(nu), &mut |leaf| {
        if &leftover_partition(leaf.open) != nu {
            return;
        }
        let mut strands: Vec<Strand> = leaf.open.iter().map(|o| o.strand).collect();
        strands.sort_by(|a, b| b.weight.cmp(&a.weight).then(a.origin.cmp(&b.origin)));
        let nu_matching = strands.iter().enumerate().map(|(j, s)| (s.origin, j)).collect();
        f(TropCover {
            vertices: leaf.vertices.to_vec(),
            nu_matching,
            weight: leaf.weight * nu_factor(nu),
        });
    });
}

pub fn enumerate_covers(q: &HurwitzQuery) -> Vec<TropCover> {
    let mut out = Vec::new();
    for_each_cover(q, |c| out.push(c));
    out
}

/// Sum of cover weights; connected covers only when `q.connected`.
pub fn hurwitz_tropical(q: &HurwitzQuery) -> BigRational {
    if !q.is_admissible() {
        return BigRational::zero();
    }
    let nu = &q.nu;
    let mut total = BigRational::zero();
    run_search(&q.mu, &q.insertions.0, q.connected, false, Some(nu), &mut |leaf| {
        if &leftover_partition(leaf.open) == nu {
            total += leaf.weight;
        }
    });
    total * nu_factor(nu)
}

/// `∏_w binom(c_w, a_w)`: the number of strand subsets of `open` with
/// weight multiset `taken`.
fn choose_count(open: &Partition, taken: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    for (w, a) in taken.multiplicities() {
        let c = open.parts().iter().filter(|&&x| x == w).count();
        acc *= num::integer::binomial(BigInt::from(c), BigInt::from(a));
    }
    acc
}

/// Disconnected sums grouped by the weight multiset of the open strands
/// after each vertex. Partial covers with the same multiset have the same
/// continuations, so each group is extended once.
#[derive(Default)]
pub struct GroupedCovers {
    weights: VertexWeights,
}

impl GroupedCovers {
    pub fn new() -> Self {
        Self::default()
    }

    /// The layer before any vertex: the strands of `μ`.
    pub fn start(mu: &Partition) -> BTreeMap<Partition, BigRational> {
        BTreeMap::from([(mu.clone(), BigRational::one())])
    }

    /// Adds the vertex of insertion `(k, r)` to every group of `layer`.
    pub fn step(
        &mut self,
        layer: &BTreeMap<Partition, BigRational>,
        Insertion { k, r }: Insertion,
    ) -> BTreeMap<Partition, BigRational> {
        let mut next: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (open, wt) in layer {
            for taken in sub_multisets(open) {
                let a = taken.len();
                if a > r as usize + 1 {
                    continue;
                }
                let s_out = taken.size() as i64 - k;
                if s_out < 0 {
                    continue;
                }
                let rest = open.remove(&taken).expect("sub-multiset");
                let ways = BigRational::from_integer(choose_count(open, &taken));
                for g in 0..=r.div_ceil(2) {
                    let w = (r + 1 - 2 * g) as usize;
                    if a > w {
                        continue;
                    }
                    for out in partitions_with_len(s_out as u32, w - a) {
                        let f = self.weights.factor(g, r, taken.parts(), &out);
                        if f.is_zero() {
                            continue;
                        }
                        *next.entry(rest.union(&out)).or_default() += wt * &ways * f;
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        next
    }

    /// Disconnected values keyed by `ν` from a final layer.
    pub fn finish(layer: BTreeMap<Partition, BigRational>) -> BTreeMap<Partition, BigRational> {
        layer
            .into_iter()
            .map(|(nu, v)| {
                let f = nu_factor(&nu);
                (nu, v * f)
            })
            .collect()
    }
}

fn all_nu_disconnected(mu: &Partition, ins: &[Insertion]) -> BTreeMap<Partition, BigRational> {
    let mut grouped = GroupedCovers::new();
    let mut layer = GroupedCovers::start(mu);
    for &i in ins {
        layer = grouped.step(&layer, i);
    }
    layer
}

/// Values for every `ν` reachable from `μ` through the insertions. Missing
/// keys have value zero.
pub fn hurwitz_tropical_all_nu(
    mu: &Partition,
    ins: &[Insertion],
    connected: bool,
) -> BTreeMap<Partition, BigRational> {
    if !connected {
        return GroupedCovers::finish(all_nu_disconnected(mu, ins));
    }
    let mut raw: BTreeMap<Partition, BigRational> = BTreeMap::new();
    run_search(mu, ins, connected, false, None, &mut |leaf| {
        *raw.entry(leftover_partition(leaf.open)).or_default() += leaf.weight;
    });
    raw.into_iter()
        .map(|(nu, v)| {
            let f = nu_factor(&nu);
            (nu, v * f)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect()
}
