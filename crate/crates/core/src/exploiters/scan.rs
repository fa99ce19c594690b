//! Equivalence searches shared by all exploiters, in a naive (tuple scan)
//! and a keyed (hash bucket) flavor.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Tuple spaces smaller than this are scanned on the calling thread.
#[cfg(feature = "parallel")]
const PARALLEL_MIN_TUPLES: u64 = 1 << 12;

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Tally {
    pub comparisons: u64,
    pub tuples: u64,
}

impl std::ops::AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        self.comparisons += rhs.comparisons;
        self.tuples += rhs.tuples;
    }
}

/// `marks[k][i]` is set when member `i` of list `k` belongs to a tuple whose
/// elements are all equivalent.
pub(crate) type Marks = Vec<Vec<bool>>;

fn product(lists: &[&[impl Sized]]) -> u64 {
    lists
        .iter()
        .fold(1u64, |acc, l| acc.saturating_mul(l.len() as u64))
}

/// Walks every n-tuple `(x_1 ∈ lists[0], …, x_n ∈ lists[n-1])` and marks the
/// members of fully equivalent tuples.
///
/// A tuple whose prefix already holds a non-equivalent pair is rejected
/// together with all tuples sharing that prefix; those rejected tuples still
/// count toward `tuples`, so the tally is always the full product of the list
/// lengths.
pub(crate) fn naive_common<T, F>(lists: &[&[T]], eq: F) -> (Marks, Tally)
where
    T: Sync,
    F: Fn(&T, &T) -> bool + Sync,
{
    let mut marks: Marks = lists.iter().map(|l| vec![false; l.len()]).collect();
    let Some((first, rest)) = lists.split_first() else {
        return (marks, Tally::default());
    };

    let per_member = |i: usize| {
        let mut tally = Tally::default();
        let mut path = vec![i];
        let mut hits = Vec::new();
        extend_tuple(&first[i], rest, &eq, &mut path, &mut hits, &mut tally);
        (hits, tally)
    };

    #[cfg(feature = "parallel")]
    let results: Vec<(Vec<Vec<usize>>, Tally)> = if product(lists) >= PARALLEL_MIN_TUPLES {
        (0..first.len()).into_par_iter().map(per_member).collect()
    } else {
        (0..first.len()).map(per_member).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(Vec<Vec<usize>>, Tally)> = (0..first.len()).map(per_member).collect();

    let mut total = Tally::default();
    for (hits, tally) in results {
        total += tally;
        for path in hits {
            for (k, &i) in path.iter().enumerate() {
                marks[k][i] = true;
            }
        }
    }
    (marks, total)
}

fn extend_tuple<T, F>(
    anchor: &T,
    rest: &[&[T]],
    eq: &F,
    path: &mut Vec<usize>,
    hits: &mut Vec<Vec<usize>>,
    tally: &mut Tally,
) where
    F: Fn(&T, &T) -> bool,
{
    let Some((head, tail)) = rest.split_first() else {
        tally.tuples += 1;
        hits.push(path.clone());
        return;
    };
    let tail_tuples = product(tail);
    for (j, candidate) in head.iter().enumerate() {
        tally.comparisons += 1;
        if eq(anchor, candidate) {
            path.push(j);
            extend_tuple(anchor, tail, eq, path, hits, tally);
            path.pop();
        } else {
            tally.tuples = tally.tuples.saturating_add(tail_tuples);
        }
    }
}

/// Same marks as [`naive_common`], found by intersecting key sets. Each
/// member of the first list forms one candidate tuple; every hash lookup
/// counts as one comparison.
pub(crate) fn keyed_common<'a, T, K, F>(lists: &[&'a [T]], key: F) -> (Marks, Tally)
where
    K: Hash + Eq,
    F: Fn(&'a T) -> K,
{
    let mut tally = Tally::default();
    let Some((first, rest)) = lists.split_first() else {
        return (Vec::new(), tally);
    };
    let rest_keys: Vec<HashSet<K>> = rest
        .iter()
        .map(|l| l.iter().map(&key).collect())
        .collect();

    let mut common: HashSet<K> = HashSet::new();
    let mut first_marks = Vec::with_capacity(first.len());
    for item in first.iter() {
        tally.tuples += 1;
        let mut all = true;
        for set in &rest_keys {
            tally.comparisons += 1;
            if !set.contains(&key(item)) {
                all = false;
                break;
            }
        }
        if all {
            common.insert(key(item));
        }
        first_marks.push(all);
    }

    let mut marks = vec![first_marks];
    for l in rest {
        marks.push(
            l.iter()
                .map(|item| {
                    tally.comparisons += 1;
                    common.contains(&key(item))
                })
                .collect(),
        );
    }
    (marks, tally)
}

/// `hit[i]` is set when `items[i]` is equivalent to some member of `pool`.
/// Every `(item, pool member)` pair is considered.
pub(crate) fn naive_hits<T>(items: &[T], pool: &[&T], eq: impl Fn(&T, &T) -> bool) -> (Vec<bool>, Tally) {
    let mut tally = Tally::default();
    let hits = items
        .iter()
        .map(|item| {
            tally.tuples += pool.len() as u64;
            pool.iter().any(|other| {
                tally.comparisons += 1;
                eq(item, other)
            })
        })
        .collect();
    (hits, tally)
}

pub(crate) fn keyed_hits<'a, T, K, F>(items: &'a [T], pool: &[&'a T], key: F) -> (Vec<bool>, Tally)
where
    K: Hash + Eq,
    F: Fn(&'a T) -> K,
{
    let mut tally = Tally::default();
    let index: HashMap<K, ()> = pool.iter().map(|p| (key(p), ())).collect();
    let hits = items
        .iter()
        .map(|item| {
            tally.tuples += 1;
            tally.comparisons += 1;
            index.contains_key(&key(item))
        })
        .collect();
    (hits, tally)
}
