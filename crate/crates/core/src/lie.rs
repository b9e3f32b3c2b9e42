//! Lie-theoretic input data and their axiom validators.
//!
//! Indices are 0-based in memory; reports print them 1-based to match the
//! generator names. Conventions:
//! - `[u_i, u_j] = c^{ij}_k u_k`;
//! - `u_m . v_n = d^{mn}_p v_p` for the module `h`;
//! - `delta(v_j) = a^i_j u_i` for the dgla differential `h -> g`;
//! - `[u*_i, u*_j]_* = a^k_{ij} u*_k` for the dual bracket of a bialgebra;
//! - `chi(u*_i, u*_j) = chi^{ijk} u_k`.

use num::{One, Zero};

use crate::graded::{rat, Rational};
use crate::report::Report;

/// Dense rank-3 array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 { dims: [d0, d1, d2], data: vec![Rational::zero(); d0 * d1 * d2] }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn at(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.at(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, q: Rational) {
        let a = self.at(i, j, k);
        self.data[a] = q;
    }

    /// Nonzero entries as `(i, j, k, value)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dims[0] {
            for j in 0..self.dims[1] {
                for k in 0..self.dims[2] {
                    let q = self.get(i, j, k);
                    if !q.is_zero() {
                        out.push((i, j, k, q.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub dim: usize,
    pub c: Tensor3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleActionData {
    pub dim_h: usize,
    pub d: Tensor3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglaData {
    /// `a[i][j]` with `i` in `g`, `j` in `h`.
    pub a: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraData {
    /// `a^k_{ij}` stored at `(k, i, j)`.
    pub a: Tensor3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiBialgebraData {
    pub bialgebra: BialgebraData,
    pub chi: Tensor3,
    pub metric: Vec<Vec<Rational>>,
}

fn idx(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

impl LieAlgebraData {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebraData { dim, c: Tensor3::zeros(dim, dim, dim) }
    }

    /// Sets `c^{ij}_k = q` and `c^{ji}_k = -q`.
    pub fn with(mut self, i: usize, j: usize, k: usize, q: Rational) -> Self {
        self.c.set(i, j, k, q.clone());
        self.c.set(j, i, k, -q);
        self
    }

    /// so(3) with `c^{ij}_k = sign * eps_{ijk}`.
    pub fn so3_signed(sign: i64) -> Self {
        LieAlgebraData::abelian(3)
            .with(0, 1, 2, rat(sign))
            .with(1, 2, 0, rat(sign))
            .with(2, 0, 1, rat(sign))
    }

    pub fn so3() -> Self {
        Self::so3_signed(1)
    }

    /// sl(2) in the basis (h, e, f).
    pub fn sl2() -> Self {
        LieAlgebraData::abelian(3).with(0, 1, 1, rat(2)).with(0, 2, 2, rat(-2)).with(1, 2, 0, rat(1))
    }

    /// Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg() -> Self {
        LieAlgebraData::abelian(3).with(0, 1, 2, rat(1))
    }

    /// Two-dimensional non-abelian algebra `[e1, e2] = e2`.
    pub fn aff1() -> Self {
        LieAlgebraData::abelian(2).with(0, 1, 1, rat(1))
    }

    /// Bracket of two vectors in the basis.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &u[i] * &v[j] * self.c.get(i, j, k);
                }
            }
        }
        out
    }

    /// Adjoint module.
    pub fn adjoint(&self) -> ModuleActionData {
        ModuleActionData { dim_h: self.dim, d: self.c.clone() }
    }

    /// Coadjoint module: `u_m . v_n = -c^{mp}_n v_p`.
    pub fn coadjoint(&self) -> ModuleActionData {
        let n = self.dim;
        let mut d = Tensor3::zeros(n, n, n);
        for m in 0..n {
            for a in 0..n {
                for p in 0..n {
                    d.set(m, a, p, -self.c.get(m, p, a).clone());
                }
            }
        }
        ModuleActionData { dim_h: n, d }
    }
}

pub fn validate_lie(l: &LieAlgebraData) -> Report {
    let mut r = Report::new("lie");
    let n = l.dim;
    if l.c.dims() != [n, n, n] {
        r.fail(format!("structure constant array has shape {:?}, expected dim {n}", l.c.dims()));
        return r;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if *l.c.get(i, j, k) != -l.c.get(j, i, k).clone() {
                    r.fail(format!("antisymmetry c^{{ij}}_k at {}", idx(&[i, j, k])));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for s in 0..n {
                    let mut sum = Rational::zero();
                    for m in 0..n {
                        sum += l.c.get(i, j, m) * l.c.get(m, k, s)
                            + l.c.get(j, k, m) * l.c.get(m, i, s)
                            + l.c.get(k, i, m) * l.c.get(m, j, s);
                    }
                    if !sum.is_zero() {
                        r.fail(format!("Jacobi at (i,j,k,l) = {}: {}", idx(&[i, j, k, s]), sum));
                    }
                }
            }
        }
    }
    r
}

/// `[rho(u_i), rho(u_j)] = c^{ij}_k rho(u_k)` with `rho(u_i)_{pn} = d^{in}_p`.
pub fn validate_module(l: &LieAlgebraData, m: &ModuleActionData) -> Report {
    let mut r = Report::new("module");
    let (n, h) = (l.dim, m.dim_h);
    if m.d.dims() != [n, h, h] {
        r.fail(format!("module array has shape {:?}, expected [{n}, {h}, {h}]", m.d.dims()));
        return r;
    }
    for i in 0..n {
        for j in 0..n {
            for a in 0..h {
                for p in 0..h {
                    let mut lhs = Rational::zero();
                    for q in 0..h {
                        lhs += m.d.get(i, q, p) * m.d.get(j, a, q) - m.d.get(j, q, p) * m.d.get(i, a, q);
                    }
                    let mut rhs = Rational::zero();
                    for k in 0..n {
                        rhs += l.c.get(i, j, k) * m.d.get(k, a, p);
                    }
                    if lhs != rhs {
                        r.fail(format!("morphism property at (i,j,n,p) = {}", idx(&[i, j, a, p])));
                    }
                }
            }
        }
    }
    r
}

/// Equivariance `delta(u . v) = [u, delta v]` and the derivation rule on
/// `h[1] x h[1]`, `delta(v) . v' + delta(v') . v = 0`.
pub fn validate_dgla(l: &LieAlgebraData, m: &ModuleActionData, dg: &DglaData) -> Report {
    let mut r = Report::new("dgla");
    let (n, h) = (l.dim, m.dim_h);
    if dg.a.len() != n || dg.a.iter().any(|row| row.len() != h) {
        r.fail(format!("differential matrix must be {n} x {h}"));
        return r;
    }
    for mm in 0..n {
        for a in 0..h {
            for i in 0..n {
                let mut lhs = Rational::zero();
                for p in 0..h {
                    lhs += m.d.get(mm, a, p) * &dg.a[i][p];
                }
                let mut rhs = Rational::zero();
                for k in 0..n {
                    rhs += &dg.a[k][a] * l.c.get(mm, k, i);
                }
                if lhs != rhs {
                    r.fail(format!("equivariance at (m,n,i) = {}", idx(&[mm, a, i])));
                }
            }
        }
    }
    for j in 0..h {
        for a in 0..h {
            for p in 0..h {
                let mut s = Rational::zero();
                for i in 0..n {
                    s += &dg.a[i][j] * m.d.get(i, a, p) + &dg.a[i][a] * m.d.get(i, j, p);
                }
                if !s.is_zero() {
                    r.fail(format!("derivation rule on h at (j,n,p) = {}", idx(&[j, a, p])));
                }
            }
        }
    }
    r
}

fn check_dual_lie(b: &BialgebraData, n: usize, r: &mut Report) -> bool {
    if b.a.dims() != [n, n, n] {
        r.fail(format!("cobracket array has shape {:?}, expected dim {n}", b.a.dims()));
        return false;
    }
    let dual = LieAlgebraData {
        dim: n,
        c: {
            let mut c = Tensor3::zeros(n, n, n);
            for (k, i, j, q) in b.a.nonzero() {
                c.set(i, j, k, q);
            }
            c
        },
    };
    let rep = validate_lie(&dual);
    for f in rep.failures {
        r.fail(format!("dual bracket {f}"));
    }
    true
}

/// Co-Jacobi and the compatibility identity between bracket and cobracket.
pub fn validate_bialgebra(l: &LieAlgebraData, b: &BialgebraData) -> Report {
    let mut r = Report::new("bialgebra");
    let n = l.dim;
    if !check_dual_lie(b, n, &mut r) {
        return r;
    }
    let a = |k: usize, i: usize, j: usize| b.a.get(k, i, j);
    let c = |i: usize, j: usize, k: usize| l.c.get(i, j, k);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                for nn in 0..n {
                    let mut lhs = Rational::zero();
                    let mut rhs = Rational::zero();
                    for s in 0..n {
                        lhs += a(s, i, j) * c(m, nn, s);
                        rhs += -(a(nn, s, j) * c(s, m, i)) - a(nn, i, s) * c(s, m, j)
                            + a(m, s, j) * c(s, nn, i)
                            + a(m, i, s) * c(s, nn, j);
                    }
                    if lhs != rhs {
                        r.fail(format!("compatibility at (i,j,m,n) = {}", idx(&[i, j, m, nn])));
                    }
                }
            }
        }
    }
    r
}

/// Bracket table of the double `g + g*` twisted by `chi`, as structure
/// constants on the basis `(u_1..u_n, u*_1..u*_n)`.
pub fn double_structure(l: &LieAlgebraData, q: &QuasiBialgebraData) -> LieAlgebraData {
    let n = l.dim;
    let a = &q.bialgebra.a;
    let mut d = LieAlgebraData::abelian(2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // [u_i, u_j] = c^{ij}_k u_k
                d.c.set(i, j, k, l.c.get(i, j, k).clone());
                // [u*_i, u*_j] = chi^{ijk} u_k + a^k_{ij} u*_k
                d.c.set(n + i, n + j, k, q.chi.get(i, j, k).clone());
                d.c.set(n + i, n + j, n + k, a.get(k, i, j).clone());
            }
        }
    }
    for k in 0..n {
        for l_ in 0..n {
            // [u_k, u*_l] = a^k_{lj} u_j - c^{km}_l u*_m
            for j in 0..n {
                let v = a.get(k, l_, j).clone();
                d.c.set(k, n + l_, j, v.clone());
                d.c.set(n + l_, k, j, -v);
            }
            for m in 0..n {
                let v = -l.c.get(k, m, l_).clone();
                d.c.set(k, n + l_, n + m, v.clone());
                d.c.set(n + l_, k, n + m, -v);
            }
        }
    }
    d
}

/// Quasi-bialgebra axioms as Jacobi on the twisted double, plus total
/// antisymmetry of `chi` and an invariant, symmetric, invertible metric.
pub fn validate_quasi(l: &LieAlgebraData, q: &QuasiBialgebraData) -> Report {
    let mut r = Report::new("quasi-bialgebra");
    let n = l.dim;
    if !check_dual_lie(&q.bialgebra, n, &mut Report::new("")) || q.chi.dims() != [n, n, n] {
        r.fail("array shapes do not match the Lie algebra dimension");
        return r;
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = q.chi.get(i, j, k);
                if *v != -q.chi.get(j, i, k).clone() || *v != -q.chi.get(i, k, j).clone() {
                    r.fail(format!("chi not totally antisymmetric at {}", idx(&[i, j, k])));
                }
            }
        }
    }
    for f in validate_lie(&double_structure(l, q)).failures {
        r.fail(format!("double {f}"));
    }
    let g = &q.metric;
    if g.len() != n || g.iter().any(|row| row.len() != n) {
        r.fail(format!("metric must be {n} x {n}"));
        return r;
    }
    for i in 0..n {
        for j in 0..n {
            if g[i][j] != g[j][i] {
                r.fail(format!("metric not symmetric at {}", idx(&[i, j])));
            }
            for k in 0..n {
                let mut s = Rational::zero();
                for m in 0..n {
                    s += l.c.get(i, j, m) * &g[m][k] + l.c.get(i, k, m) * &g[j][m];
                }
                if !s.is_zero() {
                    r.fail(format!("metric not ad-invariant at {}", idx(&[i, j, k])));
                }
            }
        }
    }
    let rows: Vec<crate::linalg::SparseVec> = g
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(k, q)| (k, q.clone())).collect())
        .collect();
    if crate::linalg::rank(&rows) != n {
        r.fail("metric is degenerate");
    }
    r
}

/// Identity matrix of size `n`.
pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// The aff(1) bialgebra: `[e1, e2] = e2`, cobracket dual to `[e^1, e^2]_* = e^2`.
pub fn aff1_bialgebra() -> (LieAlgebraData, BialgebraData) {
    let mut a = Tensor3::zeros(2, 2, 2);
    a.set(1, 0, 1, rat(1));
    a.set(1, 1, 0, rat(-1));
    (LieAlgebraData::aff1(), BialgebraData { a })
}
