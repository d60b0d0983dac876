//! Combinatorial streams. Every iterator yields its objects in
//! lexicographically descending order of the underlying sequence, so
//! anything built on top of them enumerates reproducibly.

use super::partition::Partition;

/// Partitions of `n`, from `(n)` down to `(1,…,1)`.
pub fn partitions_of(n: u32) -> Partitions {
    Partitions {
        current: if n == 0 { Some(Vec::new()) } else { Some(vec![n]) },
    }
}

pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_sorted(cur.clone());
        // rightmost part > 1: decrease it and refill greedily
        if let Some(i) = cur.iter().rposition(|&p| p > 1) {
            let mut next = cur[..i].to_vec();
            let v = cur[i] - 1;
            let mut rest = (cur.len() - i) as u32; // the ones after i plus one unit
            next.push(v);
            while rest > 0 {
                let take = rest.min(v);
                next.push(take);
                rest -= take;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Partitions of `n` with exactly `len` parts.
pub fn partitions_with_len(n: u32, len: usize) -> impl Iterator<Item = Partition> {
    partitions_of(n).filter(move |p| p.len() == len)
}

/// Sub-multisets of `m`, descending: first `m` itself, last the empty set.
pub fn sub_multisets(m: &Partition) -> SubMultisets {
    let mults = m.multiplicities();
    let counts = mults.iter().map(|&(_, c)| c).collect();
    SubMultisets {
        mults,
        counts: Some(counts),
    }
}

pub struct SubMultisets {
    mults: Vec<(u32, usize)>,
    counts: Option<Vec<usize>>,
}

impl Iterator for SubMultisets {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let counts = self.counts.as_mut()?;
        let mut parts = Vec::new();
        for (&(v, _), &c) in self.mults.iter().zip(counts.iter()) {
            parts.extend(std::iter::repeat_n(v, c));
        }
        let out = Partition::from_sorted(parts);
        // mixed-radix decrement, least significant digit = smallest value
        let mut i = counts.len();
        loop {
            if i == 0 {
                self.counts = None;
                break;
            }
            i -= 1;
            if counts[i] > 0 {
                counts[i] -= 1;
                for j in i + 1..counts.len() {
                    counts[j] = self.mults[j].1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Ordered `parts`-tuples of non-negative integers summing to `n`,
/// from `(n,0,…,0)` to `(0,…,0,n)`.
pub fn weak_compositions(n: u32, parts: usize) -> WeakCompositions {
    let current = if parts == 0 {
        if n == 0 {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        let mut v = vec![0; parts];
        v[0] = n;
        Some(v)
    };
    WeakCompositions { current }
}

pub struct WeakCompositions {
    current: Option<Vec<u32>>,
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.current.take()?;
        let p = cur.len();
        if p >= 2 {
            if let Some(i) = cur[..p - 1].iter().rposition(|&a| a > 0) {
                let mut next = cur.clone();
                let tail: u32 = cur[i + 1..].iter().sum();
                next[i] -= 1;
                next[i + 1] = tail + 1;
                for a in next[i + 2..].iter_mut() {
                    *a = 0;
                }
                self.current = Some(next);
            }
        }
        Some(cur)
    }
}

/// Ordered `parts`-tuples of positive integers summing to `n`.
pub fn compositions(n: u32, parts: usize) -> impl Iterator<Item = Vec<u32>> {
    let shifted = (n as usize).checked_sub(parts);
    let inner = match shifted {
        Some(s) => weak_compositions(s as u32, parts),
        None => WeakCompositions { current: None },
    };
    inner.map(|v| v.into_iter().map(|a| a + 1).collect())
}

/// Set partitions of `{0,…,n-1}` as restricted growth strings, starting
/// from the single block. Blocks are numbered by first occurrence.
pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        current: Some(vec![0; n]),
    }
}

pub struct SetPartitions {
    current: Option<Vec<usize>>,
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let n = cur.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(cur[i - 1]);
        }
        for i in (1..n).rev() {
            if cur[i] <= prefix_max[i] {
                let mut next = cur.clone();
                next[i] += 1;
                for a in next[i + 1..].iter_mut() {
                    *a = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}

/// Index subsets of `0..n` of every size, each as an increasing list,
/// ordered by size then lexicographically.
pub fn index_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 0..=n {
        k_subsets(n, size, &mut out);
    }
    out
}

/// Increasing `size`-subsets of `0..n`, lexicographic.
pub fn k_subsets(n: usize, size: usize, out: &mut Vec<Vec<usize>>) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn partitions_descending() {
        let ps: Vec<String> = partitions_of(4).map(|p| p.to_string()).collect();
        assert_eq!(ps, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        let v: Vec<Partition> = partitions_of(9).collect();
        assert!(v.windows(2).all(|w| w[0].parts() > w[1].parts()));
    }

    #[test]
    fn sub_multiset_order() {
        let m: Partition = "2,1,1".parse().unwrap();
        let s: Vec<String> = sub_multisets(&m).map(|p| p.to_string()).collect();
        assert_eq!(s, ["(2,1,1)", "(2,1)", "(2)", "(1,1)", "(1)", "()"]);
        assert_eq!(sub_multisets(&Partition::empty()).count(), 1);
    }

    #[test]
    fn weak_composition_order() {
        let v: Vec<Vec<u32>> = weak_compositions(2, 3).collect();
        assert_eq!(
            v,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(weak_compositions(0, 0).count(), 1);
        assert_eq!(weak_compositions(3, 0).count(), 0);
        assert_eq!(weak_compositions(3, 1).collect::<Vec<_>>(), vec![vec![3]]);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(5, 2).count(), 4);
        assert_eq!(compositions(2, 3).count(), 0);
        assert_eq!(compositions(0, 0).count(), 1);
    }

    #[test]
    fn bell_numbers() {
        let bells: Vec<usize> = (0..=6).map(|n| set_partitions(n).count()).collect();
        assert_eq!(bells, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn subsets() {
        assert_eq!(index_subsets(4).len(), 16);
        let mut v = Vec::new();
        k_subsets(4, 2, &mut v);
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], vec![0, 1]);
        assert_eq!(v[5], vec![2, 3]);
    }

    proptest! {
        #[test]
        fn weak_composition_count(n in 0u32..8, p in 1usize..5) {
            let all: Vec<Vec<u32>> = weak_compositions(n, p).collect();
            prop_assert_eq!(all.len() as u64, binom(n as u64 + p as u64 - 1, p as u64 - 1));
            prop_assert!(all.iter().all(|c| c.iter().sum::<u32>() == n));
            prop_assert!(all.windows(2).all(|w| w[0] > w[1]));
        }

        #[test]
        fn sub_multiset_count(parts in proptest::collection::vec(1u32..4, 0..6)) {
            let m = Partition::new(parts).unwrap();
            let expected: usize = m.multiplicities().iter().map(|&(_, c)| c + 1).product();
            let all: Vec<Partition> = sub_multisets(&m).collect();
            prop_assert_eq!(all.len(), expected);
            prop_assert!(all.iter().all(|s| m.remove(s).is_some()));
        }
    }
}
