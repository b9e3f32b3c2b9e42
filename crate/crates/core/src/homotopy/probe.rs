//! Bounded-degree probe of degree-zero cohomology of `l_1` on the
//! Lagrangian subalgebra, with the induced `l_2` table.

use std::collections::BTreeSet;

use super::{restrict_check, BracketTower, HomotopyError, LagrangianElement, LAGRANGIAN_KINDS};
use crate::graded::basis::{monomials, Shape};
use crate::graded::{base_degree, rat, GPoly, GeneratorTable, Kind, Monomial};
use crate::linalg::{Echelon, Indexer, SparseVec};

/// Lagrangian monomials of total ghost number `tgh` and base degree at most `d`.
fn lagrangian_basis(t: &GeneratorTable, tgh: i32, d: u32) -> Vec<Monomial> {
    let (nc, nb) = (t.dim_g() as i32, t.dim_h() as i32);
    let mut out = Vec::new();
    for g in 0..=nc {
        let a = g - tgh;
        if a < 0 || a > nb {
            continue;
        }
        for deg in 0..=d {
            let shape = Shape {
                degree: tgh,
                ghost: g as u32,
                antighost: a as u32,
                max_base_degree: deg,
                kinds: LAGRANGIAN_KINDS.to_vec(),
            };
            out.extend(monomials(t, &shape).into_iter().filter(|m| base_degree(m, t) == deg));
        }
    }
    // Pure functions first, then by base degree.
    out.sort_by_key(|m| (m.factors().iter().any(|f| t.kind(f.0) != Kind::Base), base_degree(m, t), m.clone()));
    out
}

fn to_vec(p: &GPoly, idx: &mut Indexer<Monomial>) -> SparseVec {
    p.terms().iter().map(|(m, q)| (idx.index(m), q.clone())).collect()
}

/// Outcome of [`h0_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub degree_bound: u32,
    pub dim_space: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    /// Cocycle representatives of a basis of the bounded cohomology.
    pub representatives: Vec<GPoly>,
    /// Their components without ghosts or antighosts.
    pub projections: Vec<GPoly>,
    /// `l_2(r_i, r_j)` for `i < j` as class coordinates, `None` when the
    /// result leaves the degree bound.
    pub table: Vec<(usize, usize, Option<SparseVec>)>,
    /// Failures of closure: brackets inside the bound that are not cocycles.
    pub closure_failures: Vec<(usize, usize)>,
    basis: Vec<Monomial>,
    classes: Echelon,
    image_rank: usize,
}

impl ProbeReport {
    pub fn dim_cohomology(&self) -> usize {
        self.representatives.len()
    }

    fn coords(&self, p: &GPoly) -> Option<SparseVec> {
        let pos: std::collections::HashMap<&Monomial, usize> = self.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = SparseVec::new();
        for (m, q) in p.terms() {
            v.insert(*pos.get(m)?, q.clone());
        }
        Some(v)
    }

    /// Class of a cocycle in the bounded space as coordinates on the
    /// representatives; `None` if outside the bound or not a combination of
    /// representatives modulo the image.
    pub fn class_of(&self, p: &GPoly) -> Option<SparseVec> {
        let v = self.coords(p)?;
        let (res, combo) = self.classes.reduce(&v);
        if !res.is_empty() {
            return None;
        }
        Some(combo.into_iter().filter(|(j, _)| *j >= self.image_rank).map(|(j, q)| (j - self.image_rank, q)).collect())
    }

    /// True when `a - b` lies in the image of `l_1` within the bound.
    pub fn equivalent(&self, a: &GPoly, b: &GPoly) -> bool {
        self.class_of(&(a - b)).is_some_and(|c| c.is_empty())
    }

    /// Everything in the table is zero.
    pub fn zero_table(&self) -> bool {
        self.table.iter().all(|(_, _, c)| c.as_ref().is_some_and(|v| v.is_empty()))
    }
}

/// Computes `ker l_1 / im l_1` on Lagrangian elements of total ghost number
/// 0 and base degree at most `d`, and the `l_2` table on representatives.
pub fn h0_probe(tower: &BracketTower, d: u32) -> Result<ProbeReport, HomotopyError> {
    let t = tower.series.q.table().clone();
    let basis = lagrangian_basis(&t, 0, d);
    let lower = lagrangian_basis(&t, -1, d);
    let mono = |m: &Monomial| LagrangianElement(GPoly::from_monomial(&t, m.clone(), rat(1)));

    // Kernel of l_1 on the space.
    let mut out_idx: Indexer<Monomial> = Indexer::new();
    let mut ker = Echelon::new(true);
    let mut kernel = Vec::new();
    for m in &basis {
        let img = tower.ell1(&mono(m))?;
        if let Some(rel) = ker.insert(&to_vec(img.value(), &mut out_idx)) {
            kernel.push(rel);
        }
    }

    // Image of l_1 from total ghost -1, intersected with the space: index
    // monomials outside the space first so that echelon rows with pivots
    // inside it have no outside entries.
    let inside: BTreeSet<&Monomial> = basis.iter().collect();
    let images: Vec<GPoly> = lower.iter().map(|m| tower.ell1(&mono(m)).map(|e| e.into_value())).collect::<Result<_, _>>()?;
    let mut outside: Indexer<Monomial> = Indexer::new();
    for img in &images {
        for m in img.terms().keys() {
            if !inside.contains(m) {
                outside.index(m);
            }
        }
    }
    let shift = outside.len();
    let pos: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut im = Echelon::new(false);
    for img in &images {
        let v: SparseVec = img
            .terms()
            .iter()
            .map(|(m, q)| (pos.get(m).map(|i| i + shift).unwrap_or_else(|| outside.get(m).unwrap()), q.clone()))
            .collect();
        im.insert(&v);
    }
    let image_rows: Vec<SparseVec> = im
        .rows_from(shift)
        .into_iter()
        .map(|r| r.into_iter().map(|(k, q)| (k - shift, q)).collect())
        .collect();

    // Representatives: kernel vectors independent modulo the image.
    let mut classes = Echelon::new(true);
    for r in &image_rows {
        classes.insert(r);
    }
    let image_rank = image_rows.len();
    let mut representatives = Vec::new();
    for k in &kernel {
        if !classes.contains(k) {
            classes.insert(k);
            let mut p = GPoly::zero(&t);
            for (i, q) in k {
                p.add_monomial(basis[*i].clone(), q.clone());
            }
            representatives.push(p);
        }
    }
    let projections = representatives
        .iter()
        .map(|r| r.filter(|m| m.factors().iter().all(|f| t.kind(f.0) == Kind::Base)))
        .collect();

    let mut report = ProbeReport {
        degree_bound: d,
        dim_space: basis.len(),
        dim_kernel: kernel.len(),
        dim_image: image_rank,
        representatives,
        projections,
        table: Vec::new(),
        closure_failures: Vec::new(),
        basis,
        classes,
        image_rank,
    };
    let reps: Vec<LagrangianElement> = report.representatives.iter().map(|r| restrict_check(r).expect("Lagrangian")).collect();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let v = tower.ell2(&reps[i], &reps[j])?.into_value();
            if !tower.ell1(&LagrangianElement(v.clone()))?.value().is_zero() {
                report.closure_failures.push((i, j));
                report.table.push((i, j, None));
                continue;
            }
            let c = report.class_of(&v);
            report.table.push((i, j, c));
        }
    }
    Ok(report)
}
