//! Group-valued moment maps near the identity: truncated matrix logarithm,
//! coordinates in a matrix basis of the Lie algebra, and the transport
//! identities behind the equivariance of the log constraints.

use std::sync::Arc;

use num::{One, Zero};

use super::{Scenario, ScenarioError, ScenarioKind};
use crate::graded::{ratio, GPoly, GeneratorTable, Rational};
use crate::linalg::{rank, solve, SparseVec};
use crate::report::Report;

pub type RatMatrix = Vec<Vec<Rational>>;
pub type PolyMatrix = Vec<Vec<GPoly>>;

/// Matrix realisation of the Lie algebra and the moment map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    /// Matrices `L_k` spanning the Lie algebra, with `[L_i, L_j] = c^{ij}_k L_k`.
    pub basis: Vec<RatMatrix>,
    /// The moment map as a matrix of base-coordinate polynomials, equal to
    /// the identity at the origin.
    pub phi: PolyMatrix,
    /// Point at which the Jacobian rank of the log constraints is checked.
    pub sample_point: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("scenario has no group data")]
    Missing,
    #[error("moment map is not the identity at the reference point")]
    NotIdentityAtReference,
    #[error("matrix sizes do not agree")]
    Size,
    #[error("log of the moment map leaves the Lie algebra at base degree {0}")]
    OutsideAlgebra(u32),
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, order: u32) -> PolyMatrix {
    let m = a.len();
    let t = a[0][0].table().clone();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = GPoly::zero(&t);
                    for (k, bk) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !bk[j].is_zero() {
                            s = &s + &(&a[i][k] * &bk[j]);
                        }
                    }
                    s.truncate_base_degree(order)
                })
                .collect()
        })
        .collect()
}

fn mat_add_scaled(acc: &mut PolyMatrix, q: &Rational, x: &PolyMatrix) {
    for (r, xr) in acc.iter_mut().zip(x) {
        for (e, xe) in r.iter_mut().zip(xr) {
            *e = &*e + &xe.scale(q);
        }
    }
}

fn zero_matrix(t: &Arc<GeneratorTable>, m: usize) -> PolyMatrix {
    vec![vec![GPoly::zero(t); m]; m]
}

fn identity_matrix(t: &Arc<GeneratorTable>, m: usize) -> PolyMatrix {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { GPoly::one(t) } else { GPoly::zero(t) }).collect())
        .collect()
}

fn lift(t: &Arc<GeneratorTable>, a: &RatMatrix) -> PolyMatrix {
    a.iter().map(|r| r.iter().map(|q| GPoly::constant(t, q.clone())).collect()).collect()
}

/// `sum_{n <= terms} X^n / n!`, exact (no base-degree truncation).
pub fn matrix_exp(x: &PolyMatrix, terms: u32) -> PolyMatrix {
    let t = x[0][0].table().clone();
    let m = x.len();
    let mut out = identity_matrix(&t, m);
    let mut power = identity_matrix(&t, m);
    let mut fact = Rational::one();
    for n in 1..=terms {
        power = mat_mul(&power, x, u32::MAX);
        fact *= Rational::from_integer(n.into());
        mat_add_scaled(&mut out, &fact.recip(), &power);
    }
    out
}

/// `log(I + N) = N - N^2/2 + ...` truncated at base degree `order`;
/// `N = phi - I` must vanish at the origin.
pub fn matrix_log(phi: &PolyMatrix, order: u32) -> Result<PolyMatrix, GroupError> {
    let m = phi.len();
    if m == 0 || phi.iter().any(|r| r.len() != m) {
        return Err(GroupError::Size);
    }
    let t = phi[0][0].table().clone();
    let mut n = phi.clone();
    for (i, row) in n.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            if i == j {
                *e = &*e - &GPoly::one(&t);
            }
            if !e.constant_term().is_zero() {
                return Err(GroupError::NotIdentityAtReference);
            }
            *e = e.truncate_base_degree(order);
        }
    }
    let mut out = zero_matrix(&t, m);
    let mut power = identity_matrix(&t, m);
    for k in 1..=order.max(1) {
        power = mat_mul(&power, &n, order);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        mat_add_scaled(&mut out, &ratio(sign, k as i64), &power);
    }
    Ok(out)
}

/// Coordinates of a polynomial matrix in the basis `L_k`, monomial by
/// monomial. `None` if some coefficient matrix is outside the span.
pub fn basis_coordinates(t: &Arc<GeneratorTable>, basis: &[RatMatrix], x: &PolyMatrix) -> Option<Vec<GPoly>> {
    let m = x.len();
    let flat = |a: &RatMatrix| -> SparseVec {
        let mut v = SparseVec::new();
        for i in 0..m {
            for j in 0..m {
                if !a[i][j].is_zero() {
                    v.insert(i * m + j, a[i][j].clone());
                }
            }
        }
        v
    };
    let cols: Vec<SparseVec> = basis.iter().map(flat).collect();
    let mut monos = std::collections::BTreeSet::new();
    for r in x {
        for e in r {
            monos.extend(e.terms().keys().cloned());
        }
    }
    let mut out = vec![GPoly::zero(t); basis.len()];
    for mono in monos {
        let mut target = SparseVec::new();
        for i in 0..m {
            for j in 0..m {
                let q = x[i][j].coefficient(&mono);
                if !q.is_zero() {
                    target.insert(i * m + j, q);
                }
            }
        }
        let y = solve(&cols, &target)?;
        for (k, q) in y {
            out[k].add_monomial(mono.clone(), q);
        }
    }
    Some(out)
}

fn group_of(s: &Scenario) -> Result<&GroupData, GroupError> {
    s.group.as_ref().ok_or(GroupError::Missing)
}

fn log_coordinates(s: &Scenario, order: u32) -> Result<Vec<GPoly>, GroupError> {
    let g = group_of(s)?;
    if g.basis.iter().any(|b| b.len() != g.phi.len()) {
        return Err(GroupError::Size);
    }
    let log = matrix_log(&g.phi, order)?;
    basis_coordinates(&s.table, &g.basis, &log).ok_or(GroupError::OutsideAlgebra(order))
}

/// `f^k = <u^k, log phi>` truncated at the scenario's truncation order.
pub fn group_log_constraints(s: &Scenario) -> Result<Vec<GPoly>, ScenarioError> {
    if s.kind != ScenarioKind::GroupValued {
        return Err(ScenarioError::ShapeMismatch("log constraints need a group_valued scenario".into()));
    }
    Ok(log_coordinates(s, s.truncation_order)?)
}

/// Rank of the Jacobian `d f^k / d x_a` at the sample point.
pub fn jacobian_rank(fs: &[GPoly], point: &[Rational]) -> usize {
    let Some(f0) = fs.first() else { return 0 };
    let t = f0.table().clone();
    let rows: Vec<SparseVec> = fs
        .iter()
        .map(|f| {
            let mut v = SparseVec::new();
            for a in 1..=t.n() {
                let q = f.diff_even(t.id_of(crate::graded::Kind::Base, a)).eval_base(point).constant_term();
                if !q.is_zero() {
                    v.insert(a - 1, q);
                }
            }
            v
        })
        .collect();
    rank(&rows)
}

fn commutator(a: &PolyMatrix, b: &PolyMatrix, order: u32) -> PolyMatrix {
    let mut out = mat_mul(a, b, order);
    mat_add_scaled(&mut out, &-Rational::one(), &mat_mul(b, a, order));
    out
}

/// First-order part in `t` of `log(I + N + tE)`, truncated at `order`.
fn log_derivative(n: &PolyMatrix, e: &PolyMatrix, order: u32) -> PolyMatrix {
    let t = e[0][0].table().clone();
    let m = e.len();
    let mut out = zero_matrix(&t, m);
    // powers[a] = N^a
    let mut powers = vec![identity_matrix(&t, m)];
    for _ in 0..=order {
        let next = mat_mul(powers.last().unwrap(), n, order);
        powers.push(next);
    }
    for k in 1..=order + 1 {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let q = ratio(sign, k as i64);
        for a in 0..k {
            let b = k - 1 - a;
            let term = mat_mul(&mat_mul(&powers[a as usize], e, order), &powers[b as usize], order);
            mat_add_scaled(&mut out, &q, &term);
        }
    }
    out
}

/// Verifies, order by order up to `order`, that the logarithm transports
/// left minus right translation to the adjoint action,
/// `d/dt [log(phi e^{tU}) - log(e^{tU} phi)] = [log phi, U]`, and that the
/// action fields act on the log constraints through the structure
/// constants, `psi_i(f^j) = c^{ij}_k f^k`.
pub fn bch_transport_check(s: &Scenario, order: u32) -> Report {
    let mut r = Report::new("bch transport");
    let g = match group_of(s) {
        Ok(g) => g,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let t = s.table.clone();
    let psi = match &s.psi {
        Some(p) => p.clone(),
        None => {
            r.fail("group_valued scenarios need psi");
            return r;
        }
    };
    let dim = s.dim_g();
    let c = &s.lie.lie.c;
    for k in 1..=order {
        let f = match log_coordinates(s, k) {
            Ok(f) => f,
            Err(e) => {
                r.fail(format!("order {k}: {e}"));
                return r;
            }
        };
        let log = match matrix_log(&g.phi, k) {
            Ok(l) => l,
            Err(e) => {
                r.fail(format!("order {k}: {e}"));
                return r;
            }
        };
        let m = g.phi.len();
        let mut n = g.phi.clone();
        for (i, row) in n.iter_mut().enumerate() {
            row[i] = &row[i] - &GPoly::one(&t);
        }
        let mut bad = Vec::new();
        for (i, u) in g.basis.iter().enumerate() {
            let u = lift(&t, u);
            let mut lhs = log_derivative(&n, &mat_mul(&g.phi, &u, k), k);
            mat_add_scaled(&mut lhs, &-Rational::one(), &log_derivative(&n, &mat_mul(&u, &g.phi, k), k));
            let rhs = commutator(&log, &u, k);
            for a in 0..m {
                for b in 0..m {
                    if lhs[a][b] != rhs[a][b] {
                        bad.push(format!("translation identity for u_{} at entry ({}, {})", i + 1, a + 1, b + 1));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let lhs = psi[i].bracket(&f[j]).truncate_base_degree(k);
                let mut rhs = GPoly::zero(&t);
                for (l, fl) in f.iter().enumerate() {
                    rhs = &rhs + &fl.scale(c.get(i, j, l));
                }
                let rhs = rhs.truncate_base_degree(k);
                if lhs != rhs {
                    bad.push(format!("psi_{}(f^{}) != c^{{ij}}_k f^k, difference {}", i + 1, j + 1, &lhs - &rhs));
                }
            }
        }
        if !bad.is_empty() {
            for b in bad {
                r.fail(format!("order {k}: {b}"));
            }
            return r;
        }
    }
    r.note(format!("passed through order {order}"));
    r
}
