//! Enumeration of monomial bases with prescribed gradings.

use super::monomial::Monomial;
use super::table::{GeneratorTable, Kind};

/// Grading constraints for [`monomials`].
#[derive(Clone, Debug)]
pub struct Shape {
    pub degree: i32,
    pub ghost: u32,
    pub antighost: u32,
    /// Bound on the total exponent of Base generators.
    pub max_base_degree: u32,
    /// Generator kinds allowed to appear.
    pub kinds: Vec<Kind>,
}

/// All monomials of the given function degree and (ghost, antighost)
/// bidegree, in ascending monomial order.
pub fn monomials(t: &GeneratorTable, shape: &Shape) -> Vec<Monomial> {
    let ids: Vec<u16> = t
        .entries()
        .iter()
        .filter(|g| shape.kinds.contains(&g.kind))
        .map(|g| g.id)
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(t, shape, &ids, 0, 0, 0, 0, 0, &mut cur, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    t: &GeneratorTable,
    s: &Shape,
    ids: &[u16],
    pos: usize,
    degree: i32,
    ghost: u32,
    antighost: u32,
    base: u32,
    cur: &mut Vec<(u16, u16)>,
    out: &mut Vec<Monomial>,
) {
    if pos == ids.len() {
        if degree == s.degree && ghost == s.ghost && antighost == s.antighost {
            out.push(Monomial::from_sorted(cur.clone()));
        }
        return;
    }
    let id = ids[pos];
    let g = t.entry(id);
    let max_e: u32 = if g.parity == 1 {
        1
    } else if g.kind == Kind::Base {
        s.max_base_degree - base
    } else if g.ghost > 0 {
        (s.ghost - ghost) / g.ghost
    } else if g.antighost > 0 {
        (s.antighost - antighost) / g.antighost
    } else {
        // Even, ungraded, non-base generators do not occur in either preset.
        0
    };
    for e in 0..=max_e {
        let (ng, na) = (ghost + g.ghost * e, antighost + g.antighost * e);
        if ng > s.ghost || na > s.antighost {
            break;
        }
        let nb = if g.kind == Kind::Base { base + e } else { base };
        if e > 0 {
            cur.push((id, e as u16));
        }
        rec(t, s, ids, pos + 1, degree + g.degree * e as i32, ng, na, nb, cur, out);
        if e > 0 {
            cur.pop();
        }
    }
}

/// Monomials in the base coordinates of total degree at most `d`.
pub fn base_monomials(t: &GeneratorTable, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(monomials(
            t,
            &Shape { degree: 0, ghost: 0, antighost: 0, max_base_degree: k, kinds: vec![Kind::Base] },
        ));
    }
    out.sort();
    out.dedup();
    out
}
