//! Test-only oracles: a word-expansion implementation of the graded algebra
//! and random element generators.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use bfv_core::graded::basis::{monomials, Shape};
use bfv_core::graded::{GPoly, GeneratorTable, Kind, Monomial, Rational};
use num::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Polynomial as a map from sorted generator words (even generators
/// repeated by exponent) to coefficients.
pub type OPoly = BTreeMap<Vec<u16>, Rational>;

pub struct Oracle {
    degree: Vec<i32>,
    omega: Box<dyn Fn(u16, u16) -> OPoly>,
}

fn add(p: &mut OPoly, w: Vec<u16>, q: Rational) {
    let e = p.entry(w.clone()).or_insert_with(Rational::zero);
    *e += q;
    if e.is_zero() {
        p.remove(&w);
    }
}

fn constant(q: i64) -> OPoly {
    let mut p = OPoly::new();
    if q != 0 {
        p.insert(vec![], Rational::from_integer(q.into()));
    }
    p
}

impl Oracle {
    /// Oracle for a degree -1 table: {e_a, x_a} = {c_i, b_i} = {C_j, B_j} = 1
    /// and -1 in the reversed order, read from generator kinds and indices.
    pub fn bfv1(t: &GeneratorTable) -> Self {
        let info: Vec<(Kind, usize)> = t.entries().iter().map(|g| (g.kind, g.index)).collect();
        let degree = t.entries().iter().map(|g| g.degree).collect();
        let omega = move |z: u16, w: u16| {
            let (kz, iz) = info[z as usize];
            let (kw, iw) = info[w as usize];
            if iz != iw {
                return OPoly::new();
            }
            let forward = [(Kind::Fiber, Kind::Base), (Kind::GhostG, Kind::AntighostG), (Kind::GhostH, Kind::AntighostH)];
            if forward.contains(&(kz, kw)) {
                constant(1)
            } else if forward.contains(&(kw, kz)) {
                constant(-1)
            } else {
                OPoly::new()
            }
        };
        Oracle { degree, omega: Box::new(omega) }
    }

    /// Oracle for a degree 0 table with {c_i, b_i} = {b_i, c_i} = 1 and base
    /// Poisson bivector `p(a, b)` (0-based base indices).
    pub fn bfv0(t: &GeneratorTable, p: impl Fn(usize, usize) -> OPoly + 'static) -> Self {
        let info: Vec<(Kind, usize)> = t.entries().iter().map(|g| (g.kind, g.index)).collect();
        let degree = t.entries().iter().map(|g| g.degree).collect();
        let omega = move |z: u16, w: u16| {
            let (kz, iz) = info[z as usize];
            let (kw, iw) = info[w as usize];
            match (kz, kw) {
                (Kind::Base, Kind::Base) => p(iz - 1, iw - 1),
                (Kind::GhostG, Kind::AntighostG) | (Kind::AntighostG, Kind::GhostG) if iz == iw => constant(1),
                _ => OPoly::new(),
            }
        };
        Oracle { degree, omega: Box::new(omega) }
    }

    fn odd(&self, id: u16) -> bool {
        self.degree[id as usize].rem_euclid(2) == 1
    }

    /// Sorts a word by insertion, tracking the Koszul sign; `None` if an odd
    /// generator repeats.
    pub fn canon(&self, word: &[u16]) -> Option<(Vec<u16>, bool)> {
        let mut w = word.to_vec();
        let mut neg = false;
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if self.odd(w[j - 1]) && self.odd(w[j]) {
                    neg = !neg;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        for pair in w.windows(2) {
            if pair[0] == pair[1] && self.odd(pair[0]) {
                return None;
            }
        }
        Some((w, neg))
    }

    pub fn from_gpoly(&self, p: &GPoly) -> OPoly {
        let mut out = OPoly::new();
        for (m, q) in p.terms() {
            let mut w = Vec::new();
            for &(id, e) in m.factors() {
                for _ in 0..e {
                    w.push(id);
                }
            }
            add(&mut out, w, q.clone());
        }
        out
    }

    pub fn to_gpoly(&self, t: &Arc<GeneratorTable>, p: &OPoly) -> GPoly {
        let mut out = GPoly::zero(t);
        for (w, q) in p {
            let mut factors: Vec<(u16, u16)> = Vec::new();
            for &id in w {
                match factors.last_mut() {
                    Some((last, e)) if *last == id => *e += 1,
                    _ => factors.push((id, 1)),
                }
            }
            out.add_monomial(Monomial::from_sorted(factors), q.clone());
        }
        out
    }

    pub fn mul(&self, a: &OPoly, b: &OPoly) -> OPoly {
        let mut out = OPoly::new();
        for (wa, qa) in a {
            for (wb, qb) in b {
                let word: Vec<u16> = wa.iter().chain(wb).copied().collect();
                if let Some((w, neg)) = self.canon(&word) {
                    let q = qa * qb;
                    add(&mut out, w, if neg { -q } else { q });
                }
            }
        }
        out
    }

    fn word_degree(&self, w: &[u16]) -> i32 {
        w.iter().map(|&i| self.degree[i as usize]).sum()
    }

    /// Expands the bracket factor by factor: move `a_i` to the right end of
    /// the left word and `b_j` to the left end of the right word, then pair.
    pub fn bracket(&self, f: &OPoly, g: &OPoly) -> OPoly {
        let mut out = OPoly::new();
        for (wa, qa) in f {
            for (wb, qb) in g {
                for i in 0..wa.len() {
                    let after: i32 = self.word_degree(&wa[i + 1..]);
                    let s1 = (self.degree[wa[i] as usize] * after).rem_euclid(2) == 1;
                    let mut rest_a = wa.clone();
                    let zi = rest_a.remove(i);
                    for j in 0..wb.len() {
                        let before: i32 = self.word_degree(&wb[..j]);
                        let s2 = (self.degree[wb[j] as usize] * before).rem_euclid(2) == 1;
                        let om = (self.omega)(zi, wb[j]);
                        if om.is_empty() {
                            continue;
                        }
                        let mut rest_b = wb.clone();
                        rest_b.remove(j);
                        let mut left = OPoly::new();
                        left.insert(rest_a.clone(), qa.clone());
                        let mut right = OPoly::new();
                        right.insert(rest_b, qb.clone());
                        let prod = self.mul(&self.mul(&left, &om), &right);
                        for (w, q) in prod {
                            add(&mut out, w, if s1 ^ s2 { -q } else { q });
                        }
                    }
                }
            }
        }
        out
    }
}

pub const ALL_KINDS: [Kind; 6] = [Kind::Base, Kind::Fiber, Kind::GhostG, Kind::GhostH, Kind::AntighostG, Kind::AntighostH];

/// Random element with given function degree and optional bidegree.
pub fn random_element(
    t: &Arc<GeneratorTable>,
    rng: &mut ChaCha8Rng,
    degree: i32,
    bidegree: Option<(u32, u32)>,
    kinds: &[Kind],
    max_base: u32,
    terms: usize,
) -> GPoly {
    let mut basis = Vec::new();
    let bidegrees: Vec<(u32, u32)> = match bidegree {
        Some(b) => vec![b],
        None => (0..=3).flat_map(|g| (0..=3).map(move |a| (g, a))).collect(),
    };
    for (g, a) in bidegrees {
        basis.extend(monomials(t, &Shape { degree, ghost: g, antighost: a, max_base_degree: max_base, kinds: kinds.to_vec() }));
    }
    let mut p = GPoly::zero(t);
    if basis.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let q = rng.gen_range(-4..=4);
        let d = rng.gen_range(1..=3);
        p.add_monomial(m, Rational::new(q.into(), d.into()));
    }
    p
}

pub fn one() -> Rational {
    Rational::one()
}
