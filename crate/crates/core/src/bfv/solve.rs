//! Exactness problems solved by bounded-ansatz linear algebra: Koszul
//! primitives, cocycle lifts and the extended charge.

use std::collections::{BTreeSet, HashSet};

use num::Zero;

use super::{delta_v, master_residual, BfvError};
use crate::graded::{base_degree, rat, GPoly, Kind, Monomial};
use crate::linalg::{solve, Indexer, SparseVec};
use crate::scenario::{Scenario, ScenarioKind};


/// Solves `sum_m y_m op(m) = target` over the monomials `basis`.
fn solve_over(basis: &[Monomial], target: &GPoly, op: impl Fn(&GPoly) -> Result<GPoly, BfvError>) -> Result<Option<GPoly>, BfvError> {
    let t = target.table().clone();
    let mut rows: Indexer<Monomial> = Indexer::new();
    let mut cols = Vec::with_capacity(basis.len());
    for m in basis {
        let img = op(&GPoly::from_monomial(&t, m.clone(), rat(1)))?;
        cols.push(img.terms().iter().map(|(k, q)| (rows.index(k), q.clone())).collect::<SparseVec>());
    }
    let mut rhs = SparseVec::new();
    for (k, q) in target.terms() {
        rhs.insert(rows.index(k), q.clone());
    }
    Ok(solve(&cols, &rhs).map(|y| {
        let mut p = GPoly::zero(&t);
        for (j, q) in y {
            p.add_monomial(basis[j].clone(), q);
        }
        p
    }))
}

/// `t / mu` when `mu` divides `t`.
fn divide(t: &Monomial, mu: &Monomial) -> Option<Monomial> {
    let mut out = Vec::with_capacity(t.factors().len());
    let mut rest = mu.factors().iter().peekable();
    for &(id, e) in t.factors() {
        match rest.peek() {
            Some(&&(mid, me)) if mid == id => {
                if me > e {
                    return None;
                }
                rest.next();
                if e > me {
                    out.push((id, e - me));
                }
            }
            _ => out.push((id, e)),
        }
    }
    rest.peek().is_none().then(|| Monomial::from_sorted(out))
}

/// Ansatz monomials for inverting a derivation `op` that sends generator `z`
/// to `images[z]`: the connected component of the target's monomials in the
/// graph joining `m` to the monomials of `op(m)`, restricted to `accept`.
fn derivation_basis(
    target: &GPoly,
    images: &[(u16, GPoly)],
    accept: impl Fn(&Monomial) -> bool,
    op: impl Fn(&GPoly) -> Result<GPoly, BfvError>,
) -> Result<Vec<Monomial>, BfvError> {
    let t = target.table().clone();
    let mut rows: HashSet<Monomial> = target.terms().keys().cloned().collect();
    let mut queue: Vec<Monomial> = rows.iter().cloned().collect();
    let mut cols = BTreeSet::new();
    while let Some(row) = queue.pop() {
        for (z, img) in images {
            for mu in img.terms().keys() {
                let Some(rest) = divide(&row, mu) else { continue };
                let Some((m, _)) = rest.mul(&Monomial::from_sorted(vec![(*z, 1)]), &t) else { continue };
                if !accept(&m) || cols.contains(&m) {
                    continue;
                }
                let image = op(&GPoly::from_monomial(&t, m.clone(), rat(1)))?;
                cols.insert(m);
                for k in image.terms().keys() {
                    if rows.insert(k.clone()) {
                        queue.push(k.clone());
                    }
                }
            }
        }
    }
    Ok(cols.into_iter().collect())
}

/// Finds `P` with `delta_V P = R`, posing `P` in the monomial basis of the
/// right bidegree with base degree at most `ansatz_degree`.
pub fn koszul_solve(q: &GPoly, r: &GPoly, ansatz_degree: u32) -> Result<GPoly, BfvError> {
    let t = r.table().clone();
    let images: Vec<(u16, GPoly)> = t
        .entries()
        .iter()
        .filter(|e| matches!(e.kind, Kind::AntighostG | Kind::AntighostH))
        .map(|e| Ok((e.id, delta_v(q, &GPoly::generator(&t, e.id))?)))
        .collect::<Result<_, BfvError>>()?;
    let mut out = GPoly::zero(&t);
    for ((g, a), part) in r.bigrade_components() {
        let Some(d) = part.degree() else {
            return Err(BfvError::NotBihomogeneous);
        };
        let accept = |m: &Monomial| m.degree(&t) == d - 1 && m.bidegree(&t) == (g, a + 1) && base_degree(m, &t) <= ansatz_degree;
        let basis = derivation_basis(&part, &images, accept, |m| delta_v(q, m))?;
        let p = solve_over(&basis, &part, |m| delta_v(q, m))?.ok_or(BfvError::NotFound { bound: ansatz_degree })?;
        out = &out + &p;
    }
    if delta_v(q, &out)? != *r {
        return Err(BfvError::NotFound { bound: ansatz_degree });
    }
    Ok(out)
}

/// Ansatz for `{Q, P} = target` with `P` of function degree 2 and total
/// ghost number `-k`, over bidegrees `(p, p + k)` with `p >= min_ghost`.
fn charge_basis(s: &Scenario, q: &GPoly, target: &GPoly, k: u32, ansatz_degree: u32, min_ghost: u32) -> Result<Vec<Monomial>, BfvError> {
    let t = &s.table;
    let images: Vec<(u16, GPoly)> = t.entries().iter().map(|e| (e.id, q.bracket(&GPoly::generator(t, e.id)))).collect();
    let accept = |m: &Monomial| {
        let (g, a) = m.bidegree(t);
        m.degree(t) == 2 && g >= min_ghost && a == g + k && base_degree(m, t) <= ansatz_degree
    };
    derivation_basis(target, &images, accept, |m| Ok(q.bracket(m)))
}

fn closed_form_lift(s: &Scenario) -> Option<GPoly> {
    let t = &s.table;
    let v = |k: Kind, i: usize| GPoly::var(t, k, i + 1);
    match s.kind {
        ScenarioKind::ClassicalHamiltonian if s.dim_g() == s.dim_h() => {
            let mut p = s.pi.clone();
            for i in 0..s.dim_g() {
                p = &p + &(&v(Kind::AntighostG, i) * &v(Kind::GhostH, i));
            }
            Some(p)
        }
        ScenarioKind::Dgla => {
            let a = &s.lie.dgla.as_ref()?.a;
            let mut p = s.pi.clone();
            for (i, row) in a.iter().enumerate() {
                for (j, q) in row.iter().enumerate() {
                    if !q.is_zero() {
                        p = &p - &(&v(Kind::GhostH, j) * &v(Kind::AntighostG, i)).scale(q);
                    }
                }
            }
            Some(p)
        }
        ScenarioKind::Bialgebra | ScenarioKind::QuasiBialgebra => {
            let a = s.lie.cobracket_or_zero().a;
            let psi = s.psi.as_ref()?;
            let mut p = s.pi.clone();
            for (j, i, k, q) in a.nonzero() {
                let term = &(&psi[i] * &v(Kind::GhostG, j)) * &v(Kind::AntighostG, k);
                p = &p + &term.scale(&q);
            }
            Some(p)
        }
        _ => None,
    }
}

/// A total-ghost-zero cocycle `Pi` with `Pi^{(0,0)} = pi` and `{Q, Pi} = 0`.
/// Uses the closed form for the scenario kind when it is a cocycle, and
/// otherwise solves for a correction of base degree at most
/// `ansatz_degree`.
pub fn cocycle_lift(s: &Scenario, q: &GPoly, ansatz_degree: u32) -> Result<GPoly, BfvError> {
    if let Some(p) = closed_form_lift(s) {
        if q.bracket(&p).is_zero() {
            return Ok(p);
        }
    }
    let target = -q.bracket(&s.pi);
    if target.is_zero() {
        return Ok(s.pi.clone());
    }
    let basis = charge_basis(s, q, &target, 0, ansatz_degree, 1)?;
    let corr = solve_over(&basis, &target, |m| Ok(q.bracket(m)))?.ok_or(BfvError::LiftNotFound(ansatz_degree))?;
    let p = &s.pi + &corr;
    debug_assert!(q.bracket(&p).is_zero());
    Ok(p)
}

/// Result of the extended-charge iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeSeries {
    pub q: GPoly,
    /// `Pi^(0), Pi^(-1), ...`
    pub terms: Vec<GPoly>,
    /// `1/2 {S, S}` for `S = Q + sum terms`.
    pub residual: GPoly,
    /// Largest total ghost number in the residual, `None` when it vanishes.
    pub residual_bound: Option<i32>,
    pub exact: bool,
}

impl ChargeSeries {
    pub fn total(&self) -> GPoly {
        self.terms.iter().fold(self.q.clone(), |acc, t| &acc + t)
    }

    fn from_terms(q: GPoly, terms: Vec<GPoly>) -> Self {
        let s = terms.iter().fold(q.clone(), |acc, t| &acc + t);
        let residual = master_residual(&s);
        let residual_bound = residual.max_total_ghost();
        let exact = residual.is_zero();
        ChargeSeries { q, terms, residual, residual_bound, exact }
    }
}

/// Adds corrections `Pi^(-k)` of total ghost number `-k` solving
/// `{Q, Pi^(-k)} = -(component of 1/2 {S, S} at total ghost -(k - 1))`,
/// until the residual vanishes or `k_max` corrections are computed.
pub fn extend_charge(s: &Scenario, q: &GPoly, pi: &GPoly, k_max: u32, ansatz_degree: u32) -> Result<ChargeSeries, BfvError> {
    let mut series = ChargeSeries::from_terms(q.clone(), vec![pi.clone()]);
    for k in 1..=k_max {
        if series.exact {
            break;
        }
        let level = -(k as i32 - 1);
        let target: GPoly = -series.residual.filter(|m| m.total_ghost(&s.table) == level);
        let mut terms = series.terms.clone();
        if !target.is_zero() {
            let basis = charge_basis(s, q, &target, k, ansatz_degree, 0)?;
            let p = solve_over(&basis, &target, |m| Ok(q.bracket(m)))?
                .ok_or(BfvError::ExtensionNotFound { level: k, bound: ansatz_degree })?;
            terms.push(p);
        } else {
            terms.push(GPoly::zero(&s.table));
        }
        series = ChargeSeries::from_terms(q.clone(), terms);
    }
    Ok(series)
}
