//! Bounded ideal membership: search for polynomial cofactors of bounded
//! base degree by exact linear algebra.

use std::collections::BTreeMap;

use crate::graded::basis::{monomials, Shape};
use crate::graded::{GPoly, Kind, Monomial};
use crate::linalg::{solve, Indexer, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Cofactors `h_g` with `x = sum h_g g`.
    Member(Vec<GPoly>),
    /// No cofactors within the degree bound; membership is not decided.
    Undecided,
}

/// Looks for `x = sum_g h_g g` with each `h_g` a polynomial in base and
/// fiber generators whose base degree is at most `bound`.
pub fn ideal_member(x: &GPoly, gens: &[GPoly], bound: u32) -> Membership {
    let t = x.table().clone();
    let mut cof: Vec<GPoly> = gens.iter().map(|_| GPoly::zero(&t)).collect();
    if x.is_zero() {
        return Membership::Member(cof);
    }
    for (d, comp) in x.degree_components() {
        // Candidate products, one unknown per (generator, cofactor monomial).
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        let mut cols: Vec<SparseVec> = Vec::new();
        let mut rows: Indexer<Monomial> = Indexer::new();
        for (gi, g) in gens.iter().enumerate() {
            for (gd, gcomp) in g.degree_components() {
                let shape = Shape {
                    degree: d - gd,
                    ghost: 0,
                    antighost: 0,
                    max_base_degree: bound,
                    kinds: vec![Kind::Base, Kind::Fiber],
                };
                for m in monomials(&t, &shape) {
                    let prod = &GPoly::from_monomial(&t, m.clone(), crate::graded::rat(1)) * &gcomp;
                    if prod.is_zero() {
                        continue;
                    }
                    let col: SparseVec = prod.terms().iter().map(|(k, q)| (rows.index(k), q.clone())).collect();
                    unknowns.push((gi, m));
                    cols.push(col);
                }
            }
        }
        let mut target = SparseVec::new();
        for (k, q) in comp.terms() {
            target.insert(rows.index(k), q.clone());
        }
        let Some(y) = solve(&cols, &target) else {
            return Membership::Undecided;
        };
        let mut acc: BTreeMap<usize, GPoly> = BTreeMap::new();
        for (j, q) in y {
            let (gi, m) = &unknowns[j];
            let e = acc.entry(*gi).or_insert_with(|| GPoly::zero(&t));
            e.add_monomial(m.clone(), q);
        }
        for (gi, p) in acc {
            cof[gi] = &cof[gi] + &p;
        }
    }
    Membership::Member(cof)
}
