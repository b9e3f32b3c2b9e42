//! Derived brackets on the Lagrangian subalgebra generated by base
//! coordinates, `g`-ghosts `c` and `h`-antighosts `B`.
//!
//! `l_1(f) = {Q, f}` and, for `k >= 2`,
//! `l_k(f_1, .., f_k) = (-1)^e {..{{Pi^(2-k), f_1}, f_2}, .., f_k}` with
//! `e = sum_i (k - i) |f_i|`. With `pi = -1/2 P^{ij} e_i e_j` this gives
//! `l_2(f, g) = P(df, dg)` on functions, e.g. `l_2(x1, x2) = +1` for
//! `pi = -e1 e2`.

mod probe;

use crate::bfv::ChargeSeries;
use crate::graded::{GPoly, Kind};

pub use probe::{h0_probe, ProbeReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error("generator `{0}` is not in the Lagrangian alphabet")]
    NotInLagrangian(String),
    #[error("l_{k} needs the series term of total ghost number {}, which was not computed", 2 - *k as i64)]
    TruncationExceeded { k: usize },
    #[error("derived bracket left the Lagrangian alphabet")]
    InternalSignError,
    #[error("l_k needs k >= 1 arguments, got {0}")]
    Arity(usize),
}

pub const LAGRANGIAN_KINDS: [Kind; 3] = [Kind::Base, Kind::GhostG, Kind::AntighostH];

/// A polynomial in base coordinates, `c` and `B` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianElement(GPoly);

impl LagrangianElement {
    pub fn value(&self) -> &GPoly {
        &self.0
    }
    pub fn into_value(self) -> GPoly {
        self.0
    }
}

pub fn restrict_check(f: &GPoly) -> Result<LagrangianElement, HomotopyError> {
    let t = f.table();
    for m in f.terms().keys() {
        for &(id, _) in m.factors() {
            if !LAGRANGIAN_KINDS.contains(&t.kind(id)) {
                return Err(HomotopyError::NotInLagrangian(t.entry(id).name.clone()));
            }
        }
    }
    Ok(LagrangianElement(f.clone()))
}

/// The derived brackets of a charge series.
#[derive(Clone, Debug)]
pub struct BracketTower {
    pub series: ChargeSeries,
}

fn parity(d: i32) -> i64 {
    d.rem_euclid(2) as i64
}

impl BracketTower {
    pub fn new(series: ChargeSeries) -> Self {
        BracketTower { series }
    }

    /// Generator of `l_k`: `Q` for `k = 1`, `Pi^(2-k)` otherwise.
    fn generator(&self, k: usize) -> Result<Option<&GPoly>, HomotopyError> {
        if k == 1 {
            return Ok(Some(&self.series.q));
        }
        match self.series.terms.get(k - 2) {
            Some(p) => Ok(Some(p)),
            None if self.series.exact => Ok(None),
            None => Err(HomotopyError::TruncationExceeded { k }),
        }
    }

    pub fn ell(&self, k: usize, args: &[LagrangianElement]) -> Result<LagrangianElement, HomotopyError> {
        if k == 0 || args.len() != k {
            return Err(HomotopyError::Arity(args.len()));
        }
        let t = args[0].0.table().clone();
        let Some(gen) = self.generator(k)? else {
            return Ok(LagrangianElement(GPoly::zero(&t)));
        };
        let comps: Vec<Vec<(i32, GPoly)>> = args.iter().map(|a| a.0.degree_components().into_iter().collect()).collect();
        let mut out = GPoly::zero(&t);
        let mut pick = vec![0usize; k];
        if comps.iter().any(|c| c.is_empty()) {
            return Ok(LagrangianElement(out));
        }
        loop {
            let mut acc = gen.clone();
            let mut eps = 0i64;
            for (i, (c, &p)) in comps.iter().zip(&pick).enumerate() {
                let (d, f) = &c[p];
                eps += (k - 1 - i) as i64 * parity(*d);
                acc = acc.bracket(f);
                if acc.is_zero() {
                    break;
                }
            }
            out = if eps % 2 == 0 { &out + &acc } else { &out - &acc };
            // Next multi-index.
            let mut i = 0;
            loop {
                if i == k {
                    return restrict_check(&out).map_err(|_| HomotopyError::InternalSignError);
                }
                pick[i] += 1;
                if pick[i] < comps[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }

    pub fn ell1(&self, f: &LagrangianElement) -> Result<LagrangianElement, HomotopyError> {
        self.ell(1, std::slice::from_ref(f))
    }

    pub fn ell2(&self, f: &LagrangianElement, g: &LagrangianElement) -> Result<LagrangianElement, HomotopyError> {
        self.ell(2, &[f.clone(), g.clone()])
    }

    pub fn ell3(&self, f: &LagrangianElement, g: &LagrangianElement, h: &LagrangianElement) -> Result<LagrangianElement, HomotopyError> {
        self.ell(3, &[f.clone(), g.clone(), h.clone()])
    }
}

fn homogeneous_degree(f: &LagrangianElement) -> i32 {
    f.0.degree().expect("homogeneous argument")
}

fn sign(p: i64) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The `l_2` Jacobiator `sum_cyc (-1)^{|f||h|} l_2(f, l_2(g, h))`.
pub fn jacobiator(t: &BracketTower, f: &LagrangianElement, g: &LagrangianElement, h: &LagrangianElement) -> Result<GPoly, HomotopyError> {
    let (df, dg, dh) = (homogeneous_degree(f) as i64, homogeneous_degree(g) as i64, homogeneous_degree(h) as i64);
    let mut out = GPoly::zero(f.0.table());
    for (a, b, c, s) in [(f, g, h, df * dh), (g, h, f, dg * df), (h, f, g, dh * dg)] {
        let inner = t.ell2(b, c)?;
        out = &out + &t.ell2(a, &inner)?.0.scale_int(sign(s));
    }
    Ok(out)
}

/// `(-1)^{|f||h|} (l_1 l_3 + l_3 d)(f, g, h)` where `d` applies `l_1` to
/// one slot at a time with Koszul signs.
pub fn homotopy_term(t: &BracketTower, f: &LagrangianElement, g: &LagrangianElement, h: &LagrangianElement) -> Result<GPoly, HomotopyError> {
    let (df, dg, dh) = (homogeneous_degree(f) as i64, homogeneous_degree(g) as i64, homogeneous_degree(h) as i64);
    let mut sum = t.ell1(&t.ell3(f, g, h)?)?.0;
    sum = &sum + &t.ell3(&t.ell1(f)?, g, h)?.0;
    sum = &sum + &t.ell3(f, &t.ell1(g)?, h)?.0.scale_int(sign(df));
    sum = &sum + &t.ell3(f, g, &t.ell1(h)?)?.0.scale_int(sign(df + dg));
    Ok(sum.scale_int(sign(df * dh)))
}

/// Jacobiator of `l_2` minus the homotopy term; zero for an exact series.
pub fn homotopy_jacobi_residual(
    t: &BracketTower,
    f: &LagrangianElement,
    g: &LagrangianElement,
    h: &LagrangianElement,
) -> Result<GPoly, HomotopyError> {
    Ok(&jacobiator(t, f, g, h)? - &homotopy_term(t, f, g, h)?)
}
