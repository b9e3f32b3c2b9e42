//! Sparse exact Gaussian elimination over the rationals.
//!
//! [`Echelon`] keeps pivot rows whose smallest index is the pivot, with
//! leading coefficient 1. Inserted vectors are numbered in insertion order;
//! with tracking enabled each row remembers which combination of inserted
//! vectors produced it, which yields kernels and solutions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use num::{One, Zero};

use crate::graded::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

fn axpy(y: &mut SparseVec, a: &Rational, x: &SparseVec) {
    for (k, v) in x {
        let entry = y.entry(*k).or_insert_with(Rational::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    v: SparseVec,
    combo: SparseVec,
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Echelon { rows: BTreeMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the pivots. Returns the residual and the
    /// combination `k` of inserted vectors with `v = residual + sum k_j col_j`
    /// (empty when tracking is off).
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = r.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let c = r[&k].clone();
            let row = &self.rows[&k];
            axpy(&mut r, &-c.clone(), &row.v);
            if self.track {
                axpy(&mut combo, &c, &row.combo);
            }
            cursor = k + 1;
        }
        (r, combo)
    }

    /// True when `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts the next vector. If it depends on earlier ones, returns the
    /// kernel relation (coefficients over insertion numbers, including this
    /// vector with coefficient 1); otherwise adds a pivot and returns `None`.
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce(v);
        let mut rel = SparseVec::new();
        if self.track {
            rel.insert(idx, Rational::one());
            axpy(&mut rel, &-Rational::one(), &combo);
        }
        let Some((&pivot, lead)) = r.iter().next() else {
            return Some(rel);
        };
        let inv = lead.recip();
        let scale = |x: &SparseVec| x.iter().map(|(k, q)| (*k, q * &inv)).collect::<SparseVec>();
        let row = Row { v: scale(&r), combo: scale(&rel) };
        self.rows.insert(pivot, row);
        None
    }

    /// Pivot rows whose pivot is at least `from`, as vectors.
    pub fn rows_from(&self, from: usize) -> Vec<SparseVec> {
        self.rows.range(from..).map(|(_, r)| r.v.clone()).collect()
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        self.rows.values().map(|r| r.v.clone()).collect()
    }
}

/// Solves `sum_j y_j cols_j = target`. Returns `None` if inconsistent.
///
/// Only columns connected to the target through shared rows can take part
/// in a solution, so elimination runs on that component.
pub fn solve(cols: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut by_row: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        for &k in c.keys() {
            by_row.entry(k).or_default().push(j);
        }
    }
    let mut seen_rows: HashSet<usize> = target.keys().copied().collect();
    let mut stack: Vec<usize> = seen_rows.iter().copied().collect();
    let mut used = vec![false; cols.len()];
    while let Some(k) = stack.pop() {
        for &j in by_row.get(&k).into_iter().flatten() {
            if !used[j] {
                used[j] = true;
                stack.extend(cols[j].keys().filter(|r| seen_rows.insert(**r)));
            }
        }
    }
    let picked: Vec<usize> = (0..cols.len()).filter(|&j| used[j]).collect();
    let mut e = Echelon::new(true);
    for &j in &picked {
        e.insert(&cols[j]);
    }
    let (r, combo) = e.reduce(target);
    r.is_empty().then(|| combo.into_iter().map(|(i, q)| (picked[i], q)).collect())
}

/// Basis of the kernel of the map sending basis vector j to `cols[j]`.
pub fn kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(true);
    cols.iter().filter_map(|c| e.insert(c)).collect()
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Assigns dense indices to keys in first-seen order.
#[derive(Clone, Debug)]
pub struct Indexer<K> {
    map: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + Hash> Default for Indexer<K> {
    fn default() -> Self {
        Indexer { map: HashMap::new(), keys: Vec::new() }
    }
}

impl<K: Clone + Eq + Hash> Indexer<K> {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn index(&mut self, k: &K) -> usize {
        if let Some(&i) = self.map.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.map.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }
    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }
    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }
    pub fn len(&self) -> usize {
        self.keys.len()
    }
    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::rat;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, q)| (k, rat(q))).collect()
    }

    #[test]
    fn solve_and_kernel() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])];
        // col0 - col1 = col2, so the kernel is spanned by (1, -1, -1).
        let k = kernel(&cols);
        assert_eq!(k, vec![v(&[(0, -1), (1, 1), (2, 1)])]);
        let y = solve(&cols, &v(&[(0, 2), (1, 3), (2, 1)])).unwrap();
        let mut back = SparseVec::new();
        for (j, q) in &y {
            axpy(&mut back, q, &cols[*j]);
        }
        assert_eq!(back, v(&[(0, 2), (1, 3), (2, 1)]));
        assert!(solve(&cols, &v(&[(0, 1)])).is_none());
        assert_eq!(rank(&cols), 2);
    }

    #[test]
    fn rows_from_span_coordinate_intersection() {
        // span{(1,1,0), (1,0,1)} meets the plane {coord 0 = 0} in (0,1,-1).
        let mut e = Echelon::new(false);
        e.insert(&v(&[(0, 1), (1, 1)]));
        e.insert(&v(&[(0, 1), (2, 1)]));
        assert_eq!(e.rows_from(1), vec![v(&[(1, 1), (2, -1)])]);
    }
}
