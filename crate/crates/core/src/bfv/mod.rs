//! BRST charges, the master equation and the splitting of the BRST
//! differential.
//!
//! Ghost conventions on the BFV1 table: `c_i` (degree 1) and `b_i` (degree 0)
//! are the ghost/antighost pair for `g`, `C_j` (degree 2) and `B_j`
//! (degree -1) the pair for `h`, with `{c_i, b_i} = {C_j, B_j} = 1`.

mod solve;

use std::sync::Arc;

use num::Zero;

use crate::graded::{ratio, GPoly, GeneratorTable, Kind, Monomial, Preset, Rational};
use crate::lie::LieAlgebraData;
use crate::scenario::{assemble_constraints, ConstraintSet, Scenario, ScenarioError};

pub use solve::{cocycle_lift, extend_charge, koszul_solve, ChargeSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BfvError {
    #[error("generator table has the wrong preset")]
    PresetMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not bihomogeneous")]
    NotBihomogeneous,
    #[error("no solution up to ansatz degree {bound}")]
    NotFound { bound: u32 },
    #[error("no cocycle lift up to ansatz degree {0}")]
    LiftNotFound(u32),
    #[error("extension step at total ghost number -{level} has no solution up to ansatz degree {bound}")]
    ExtensionNotFound { level: u32, bound: u32 },
    #[error("BRST differential produced an unexpected bidegree")]
    InternalSignError,
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

fn var(t: &Arc<GeneratorTable>, kind: Kind, i: usize) -> GPoly {
    GPoly::var(t, kind, i + 1)
}

/// `Q = sum J_i c_i - 1/2 sum c^{ij}_k c_i c_j b_k` on a BFV0 table.
pub fn build_charge_deg0(lie: &LieAlgebraData, j: &[GPoly]) -> Result<GPoly, BfvError> {
    let Some(first) = j.first() else {
        return Err(BfvError::ShapeMismatch("no constraints".into()));
    };
    let t = first.table().clone();
    if t.preset() != Preset::Bfv0 {
        return Err(BfvError::PresetMismatch);
    }
    if j.len() != lie.dim || t.dim_g() != lie.dim {
        return Err(BfvError::ShapeMismatch(format!("{} constraints for dim g = {}", j.len(), lie.dim)));
    }
    let mut q = GPoly::zero(&t);
    for (i, ji) in j.iter().enumerate() {
        q = &q + &(ji * &var(&t, Kind::GhostG, i));
    }
    q = &q + &structure_term(&t, lie, Kind::GhostG, Kind::AntighostG);
    Ok(q)
}

/// `-1/2 sum c^{ij}_k g_i g_j a_k`.
fn structure_term(t: &Arc<GeneratorTable>, lie: &LieAlgebraData, ghost: Kind, anti: Kind) -> GPoly {
    let mut q = GPoly::zero(t);
    let half = -ratio(1, 2);
    for (i, jj, k, c) in lie.c.nonzero() {
        let term = &(&var(t, ghost, i) * &var(t, ghost, jj)) * &var(t, anti, k);
        q = &q + &term.scale(&(&half * &c));
    }
    q
}

/// The degree-one charge
/// `Q = psi_i c_i + J0_j C_j - 1/2 c^{ij}_k c_i c_j b_k - d^{mn}_p c_m C_n B_p`.
pub fn build_charge_deg1(s: &Scenario) -> Result<GPoly, BfvError> {
    let cs = assemble_constraints(s)?;
    charge_from_constraints(s, &cs)
}

pub fn charge_from_constraints(s: &Scenario, cs: &ConstraintSet) -> Result<GPoly, BfvError> {
    let t = s.table.clone();
    if t.preset() != Preset::Bfv1 {
        return Err(BfvError::PresetMismatch);
    }
    if cs.deg1.len() != s.dim_g() || cs.deg0.len() != s.dim_h() {
        return Err(BfvError::ShapeMismatch("constraint counts do not match the Lie data".into()));
    }
    let mut q = GPoly::zero(&t);
    for (i, p) in cs.deg1.iter().enumerate() {
        q = &q + &(p * &var(&t, Kind::GhostG, i));
    }
    for (j, f) in cs.deg0.iter().enumerate() {
        q = &q + &(f * &var(&t, Kind::GhostH, j));
    }
    q = &q + &structure_term(&t, &s.lie.lie, Kind::GhostG, Kind::AntighostG);
    for (m, n, p, d) in s.lie.module.d.nonzero() {
        let term = &(&var(&t, Kind::GhostG, m) * &var(&t, Kind::GhostH, n)) * &var(&t, Kind::AntighostH, p);
        q = &q - &term.scale(&d);
    }
    Ok(q)
}

pub fn brst_apply(q: &GPoly, f: &GPoly) -> GPoly {
    q.bracket(f)
}

/// `1/2 {Q, Q}`.
pub fn master_residual(q: &GPoly) -> GPoly {
    q.bracket(q).scale(&ratio(1, 2))
}

/// Splits `{Q, F}` for bihomogeneous `F` of bidegree `(g, a)` into
/// `delta_H F` at `(g + 1, a)` and `delta_V F` at `(g, a - 1)`.
pub fn split_dh_dv(q: &GPoly, f: &GPoly) -> Result<(GPoly, GPoly), BfvError> {
    let t = f.table().clone();
    if f.is_zero() {
        return Ok((GPoly::zero(&t), GPoly::zero(&t)));
    }
    let comps = f.bigrade_components();
    if comps.len() != 1 {
        return Err(BfvError::NotBihomogeneous);
    }
    let (g, a) = *comps.keys().next().unwrap();
    let mut dh = GPoly::zero(&t);
    let mut dv = GPoly::zero(&t);
    for (key, part) in q.bracket(f).bigrade_components() {
        if key == (g + 1, a) {
            dh = part;
        } else if a > 0 && key == (g, a - 1) {
            dv = part;
        } else {
            return Err(BfvError::InternalSignError);
        }
    }
    Ok((dh, dv))
}

/// `delta_V F`, summed over the bigrade components of `F`.
pub fn delta_v(q: &GPoly, f: &GPoly) -> Result<GPoly, BfvError> {
    let mut out = GPoly::zero(f.table());
    for part in f.bigrade_components().into_values() {
        out = &out + &split_dh_dv(q, &part)?.1;
    }
    Ok(out)
}

/// `delta_H F`, summed over the bigrade components of `F`.
pub fn delta_h(q: &GPoly, f: &GPoly) -> Result<GPoly, BfvError> {
    let mut out = GPoly::zero(f.table());
    for part in f.bigrade_components().into_values() {
        out = &out + &split_dh_dv(q, &part)?.0;
    }
    Ok(out)
}

/// Degree-zero table on the base of `s` carrying the Poisson bivector
/// `P^{ab} = {{pi, x_a}, x_b}`, with `dim_g` ghost pairs.
pub fn bfv0_table_for(s: &Scenario, dim_g: usize) -> Arc<GeneratorTable> {
    let t = &s.table;
    let n = s.n;
    let mut poisson = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let pab = s.pi.bracket(&GPoly::var(t, Kind::Base, a)).bracket(&GPoly::var(t, Kind::Base, b));
            if pab.is_zero() {
                continue;
            }
            let terms = pab
                .terms()
                .iter()
                .map(|(m, q)| {
                    let mut exps = vec![0u16; n];
                    for &(id, e) in m.factors() {
                        exps[t.entry(id).index - 1] = e;
                    }
                    (q.clone(), exps)
                })
                .collect();
            poisson.push((a, b, terms));
        }
    }
    Arc::new(GeneratorTable::bfv0(n, dim_g, &poisson))
}

/// Copies `p` to `target`, mapping generators by `(kind, index)` through
/// `kind_map`. Panics if a generator has no image.
pub fn transfer(p: &GPoly, target: &Arc<GeneratorTable>, kind_map: &[(Kind, Kind)]) -> GPoly {
    let src = p.table();
    let mut out = GPoly::zero(target);
    for (m, q) in p.terms() {
        let mut factors: Vec<(u16, u16)> = m
            .factors()
            .iter()
            .map(|&(id, e)| {
                let g = src.entry(id);
                let k = kind_map.iter().find(|(a, _)| *a == g.kind).map(|(_, b)| *b).expect("kind has an image");
                (target.id_of(k, g.index), e)
            })
            .collect();
        // Reorder into the target's generator order, tracking the sign of
        // the permutation of odd factors.
        let mut sign = Rational::from_integer(1.into());
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 && factors[j - 1].0 > factors[j].0 {
                if target.is_odd(factors[j - 1].0) && target.is_odd(factors[j].0) {
                    sign = -sign;
                }
                factors.swap(j - 1, j);
                j -= 1;
            }
        }
        if q.is_zero() {
            continue;
        }
        out.add_monomial(Monomial::from_sorted(factors), q * &sign);
    }
    out
}

#[cfg(test)]
mod tests;
