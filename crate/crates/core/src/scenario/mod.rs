//! Reduction problem instances and the compatibility checks on them.
//!
//! Conventions: a scenario lives on the BFV1 table with `n` base
//! coordinates, `dim_g` GhostG/AntighostG pairs and `dim_h` GhostH/AntighostH
//! pairs. For moment-map data the action fields are `psi_i = -{pi, J0_i}`; with
//! this sign the classical lift is `pi + b_i C_i` and a dgla scenario
//! satisfies `{pi, J0_j} = a^i_j psi_i` with `a = -id` in the classical case.

mod group;
mod membership;

use std::sync::Arc;

use num::Zero;

use crate::graded::{GPoly, GeneratorTable, Kind, Rational};
use crate::lie::{
    validate_bialgebra, validate_dgla, validate_lie, validate_module, validate_quasi, BialgebraData,
    DglaData, LieAlgebraData, ModuleActionData, QuasiBialgebraData, Tensor3,
};
use crate::report::Report;

pub use group::{
    basis_coordinates, bch_transport_check, group_log_constraints, jacobian_rank, matrix_exp, matrix_log, GroupData,
    GroupError, PolyMatrix, RatMatrix,
};
pub use membership::{ideal_member, Membership};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    ClassicalHamiltonian,
    GeneralizedPair,
    Dgla,
    Bialgebra,
    QuasiBialgebra,
    GroupValued,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::ClassicalHamiltonian => "classical_hamiltonian",
            ScenarioKind::GeneralizedPair => "generalized_pair",
            ScenarioKind::Dgla => "dgla",
            ScenarioKind::Bialgebra => "bialgebra",
            ScenarioKind::QuasiBialgebra => "quasi_bialgebra",
            ScenarioKind::GroupValued => "group_valued",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            ScenarioKind::ClassicalHamiltonian,
            ScenarioKind::GeneralizedPair,
            ScenarioKind::Dgla,
            ScenarioKind::Bialgebra,
            ScenarioKind::QuasiBialgebra,
            ScenarioKind::GroupValued,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// How the weak Poisson condition of a quasi-bialgebra scenario is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakCheck {
    /// `1/2 {pi, pi} = chi_M` exactly.
    Chi,
    /// `{pi, pi}` lies in the constraint ideal.
    Ideal,
}

/// Lie-theoretic data attached to a scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBundle {
    pub lie: LieAlgebraData,
    pub module: ModuleActionData,
    pub dgla: Option<DglaData>,
    pub cobracket: Option<BialgebraData>,
    pub chi: Option<Tensor3>,
    pub metric: Vec<Vec<Rational>>,
}

impl LieBundle {
    pub fn dim_g(&self) -> usize {
        self.lie.dim
    }
    pub fn dim_h(&self) -> usize {
        self.module.dim_h
    }
    /// Cobracket constants, zero when absent.
    pub fn cobracket_or_zero(&self) -> BialgebraData {
        let n = self.dim_g();
        self.cobracket.clone().unwrap_or(BialgebraData { a: Tensor3::zeros(n, n, n) })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub free_and_proper: bool,
    pub regular_value: bool,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub n: usize,
    pub table: Arc<GeneratorTable>,
    pub pi: GPoly,
    /// Action fields; `None` means derived from `J0` (classical kind).
    pub psi: Option<Vec<GPoly>>,
    /// Degree-zero constraints; empty for group-valued scenarios whose
    /// constraints come from the log of the moment map.
    pub j0: Vec<GPoly>,
    pub lie: LieBundle,
    pub truncation_order: u32,
    pub degree_bound: u32,
    pub weak_check: WeakCheck,
    pub group: Option<GroupData>,
    pub assumptions: Assumptions,
}

/// The generators of the constraint ideal: `deg1[i] = psi_i`,
/// `deg0[j] = J0_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub deg1: Vec<GPoly>,
    pub deg0: Vec<GPoly>,
}

impl ConstraintSet {
    pub fn ideal_generators(&self) -> Vec<GPoly> {
        self.deg1.iter().chain(self.deg0.iter()).cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn only_manifold(p: &GPoly) -> bool {
    [Kind::GhostG, Kind::GhostH, Kind::AntighostG, Kind::AntighostH].iter().all(|&k| !p.uses_kind(k))
}

fn homogeneous_of(p: &GPoly, d: i32) -> bool {
    p.is_zero() || p.degree() == Some(d)
}

impl Scenario {
    pub fn dim_g(&self) -> usize {
        self.lie.dim_g()
    }
    pub fn dim_h(&self) -> usize {
        self.lie.dim_h()
    }

    /// Shape invariants: lengths match the Lie data, entries use only base
    /// and fiber generators and have the right degrees.
    pub fn check_shape(&self) -> Result<(), ScenarioError> {
        let t = &self.table;
        let err = |m: String| Err(ScenarioError::ShapeMismatch(m));
        if t.n() != self.n || t.dim_g() != self.dim_g() || t.dim_h() != self.dim_h() {
            return err("generator table does not match the scenario dimensions".into());
        }
        if !only_manifold(&self.pi) || !homogeneous_of(&self.pi, 2) {
            return err("pi must be a bivector on the base".into());
        }
        if let Some(psi) = &self.psi {
            if psi.len() != self.dim_g() {
                return err(format!("psi has {} entries, dim g = {}", psi.len(), self.dim_g()));
            }
            for (i, p) in psi.iter().enumerate() {
                if !only_manifold(p) || !homogeneous_of(p, 1) {
                    return err(format!("psi[{}] must be a vector field", i + 1));
                }
            }
        } else if self.kind != ScenarioKind::ClassicalHamiltonian {
            return err("psi is required for this scenario kind".into());
        }
        let expect_j0 = !(self.kind == ScenarioKind::GroupValued && self.j0.is_empty());
        if expect_j0 && self.j0.len() != self.dim_h() {
            return err(format!("J0 has {} entries, dim h = {}", self.j0.len(), self.dim_h()));
        }
        for (j, f) in self.j0.iter().enumerate() {
            if !only_manifold(f) || !homogeneous_of(f, 0) {
                return err(format!("J0[{}] must be a function on the base", j + 1));
            }
        }
        if self.kind == ScenarioKind::ClassicalHamiltonian && self.psi.is_none() && self.dim_g() != self.dim_h() {
            return err("classical scenarios without psi need dim g = dim h".into());
        }
        if self.kind == ScenarioKind::GroupValued && self.group.is_none() && self.j0.is_empty() {
            return err("group_valued scenarios need a moment map or J0".into());
        }
        Ok(())
    }

    /// `chi_M = sum_{i<j<k} chi^{ijk} psi_i psi_j psi_k`.
    pub fn chi_m(&self, psi: &[GPoly]) -> GPoly {
        let mut out = GPoly::zero(&self.table);
        if let Some(chi) = &self.lie.chi {
            let n = self.dim_g();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let q = chi.get(i, j, k);
                        if !q.is_zero() {
                            out = &out + &(&(&psi[i] * &psi[j]) * &psi[k]).scale(q);
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn assemble_constraints(s: &Scenario) -> Result<ConstraintSet, ScenarioError> {
    s.check_shape()?;
    let deg1 = match &s.psi {
        Some(p) => p.clone(),
        None => s.j0.iter().map(|j| -s.pi.bracket(j)).collect(),
    };
    let deg0 = if s.kind == ScenarioKind::GroupValued && s.j0.is_empty() {
        group_log_constraints(s)?
    } else {
        s.j0.clone()
    };
    if deg0.len() != s.dim_h() {
        return Err(ScenarioError::ShapeMismatch(format!(
            "{} degree-zero constraints for dim h = {}",
            deg0.len(),
            s.dim_h()
        )));
    }
    Ok(ConstraintSet { deg1, deg0 })
}

/// Validates the Lie data bundled with a scenario.
pub fn validate_lie_bundle(s: &Scenario) -> Report {
    let mut r = Report::new("lie data");
    let b = &s.lie;
    r.absorb(validate_lie(&b.lie));
    r.absorb(validate_module(&b.lie, &b.module));
    if let Some(d) = &b.dgla {
        r.absorb(validate_dgla(&b.lie, &b.module, d));
    }
    match s.kind {
        ScenarioKind::Bialgebra => r.absorb(validate_bialgebra(&b.lie, &b.cobracket_or_zero())),
        ScenarioKind::QuasiBialgebra => {
            let n = b.dim_g();
            let q = QuasiBialgebraData {
                bialgebra: b.cobracket_or_zero(),
                chi: b.chi.clone().unwrap_or_else(|| Tensor3::zeros(n, n, n)),
                metric: b.metric.clone(),
            };
            r.absorb(validate_quasi(&b.lie, &q));
        }
        _ => {}
    }
    r
}

/// `{psi_i, psi_j} = c^{ij}_k psi_k` and `psi_i(J0_n) = d^{in}_p J0_p`.
pub fn check_equivariance(s: &Scenario, cs: &ConstraintSet) -> Report {
    let mut r = Report::new("equivariance");
    let (n, h) = (s.dim_g(), s.dim_h());
    let c = &s.lie.lie.c;
    let d = &s.lie.module.d;
    for i in 0..n {
        for j in 0..n {
            let lhs = cs.deg1[i].bracket(&cs.deg1[j]);
            let mut rhs = GPoly::zero(&s.table);
            for k in 0..n {
                rhs = &rhs + &cs.deg1[k].scale(c.get(i, j, k));
            }
            if lhs != rhs {
                r.fail(format!("{{psi_{}, psi_{}}} != c^{{ij}}_k psi_k, difference {}", i + 1, j + 1, &lhs - &rhs));
            }
        }
        for a in 0..h {
            let lhs = cs.deg1[i].bracket(&cs.deg0[a]);
            let mut rhs = GPoly::zero(&s.table);
            for p in 0..h {
                rhs = &rhs + &cs.deg0[p].scale(d.get(i, a, p));
            }
            if lhs != rhs {
                r.fail(format!("psi_{}(J0_{}) != d^{{in}}_p J0_p, difference {}", i + 1, a + 1, &lhs - &rhs));
            }
        }
    }
    r
}

fn membership_line(r: &mut Report, what: String, x: &GPoly, gens: &[GPoly], bound: u32) {
    match ideal_member(x, gens, bound) {
        Membership::Member(_) => {}
        Membership::Undecided => r.undecided(format!("{what}: no cofactors up to degree bound {bound}")),
    }
}

/// Compatibility of `pi` with the constraints: `{pi, g}` lies in the ideal
/// for every generator `g`, the weak Poisson condition, and the exact
/// equations specific to the scenario kind.
pub fn check_compatibility(s: &Scenario, cs: &ConstraintSet) -> Report {
    let mut r = Report::new("compatibility");
    let gens = cs.ideal_generators();
    let bound = s.degree_bound;
    for (i, p) in cs.deg1.iter().enumerate() {
        membership_line(&mut r, format!("{{pi, psi_{}}}", i + 1), &s.pi.bracket(p), &gens, bound);
    }
    for (j, f) in cs.deg0.iter().enumerate() {
        membership_line(&mut r, format!("{{pi, J0_{}}}", j + 1), &s.pi.bracket(f), &gens, bound);
    }
    let half_pipi = s.pi.bracket(&s.pi).scale(&crate::graded::ratio(1, 2));
    match (s.kind, s.weak_check) {
        (ScenarioKind::QuasiBialgebra, WeakCheck::Chi) => {
            let chi = s.chi_m(&cs.deg1);
            if half_pipi != chi {
                r.fail(format!("1/2 {{pi, pi}} != chi_M, difference {}", &half_pipi - &chi));
            }
        }
        (ScenarioKind::QuasiBialgebra, WeakCheck::Ideal) => {
            membership_line(&mut r, "{pi, pi}".into(), &half_pipi, &gens, bound);
        }
        _ => {
            if !half_pipi.is_zero() {
                membership_line(&mut r, "{pi, pi}".into(), &half_pipi, &gens, bound);
            }
        }
    }
    let (n, h) = (s.dim_g(), s.dim_h());
    match s.kind {
        ScenarioKind::Dgla | ScenarioKind::ClassicalHamiltonian => {
            let a = match (&s.lie.dgla, s.kind) {
                (Some(d), _) => Some(d.a.clone()),
                (None, ScenarioKind::ClassicalHamiltonian) if n == h => Some(
                    crate::lie::identity(n).into_iter().map(|row| row.into_iter().map(|q| -q).collect()).collect(),
                ),
                _ => None,
            };
            for (i, p) in cs.deg1.iter().enumerate() {
                let v = s.pi.bracket(p);
                if !v.is_zero() {
                    r.fail(format!("{{pi, psi_{}}} = {} is not zero", i + 1, v));
                }
            }
            if let Some(a) = a {
                for (j, f) in cs.deg0.iter().enumerate() {
                    let lhs = s.pi.bracket(f);
                    let mut rhs = GPoly::zero(&s.table);
                    for (i, p) in cs.deg1.iter().enumerate() {
                        rhs = &rhs + &p.scale(&a[i][j]);
                    }
                    if lhs != rhs {
                        r.fail(format!("{{pi, J0_{}}} != delta(v_{})_M, difference {}", j + 1, j + 1, &lhs - &rhs));
                    }
                }
            }
        }
        ScenarioKind::Bialgebra | ScenarioKind::QuasiBialgebra => {
            let a = s.lie.cobracket_or_zero().a;
            for k in 0..n {
                let lhs = s.pi.bracket(&cs.deg1[k]);
                let rhs = cobracket_m(&a, k, &cs.deg1);
                if lhs != rhs {
                    r.fail(format!("{{pi, psi_{}}} != F(u_{})_M, difference {}", k + 1, k + 1, &lhs - &rhs));
                }
            }
        }
        ScenarioKind::GroupValued => {
            if let Some(g) = &s.group {
                let rk = jacobian_rank(&cs.deg0, &g.sample_point);
                if rk < cs.deg0.len() {
                    r.fail(format!(
                        "log constraints have dependent differentials at the sample point (rank {rk} < {})",
                        cs.deg0.len()
                    ));
                }
            }
        }
        _ => {}
    }
    if s.assumptions.free_and_proper {
        r.note("assumed: action is free and proper (not verified)");
    }
    if s.assumptions.regular_value {
        r.note("assumed: 0 is a regular value (not verified)");
    }
    r
}

/// `F(u_k)_M = sum_{i,j} a^k_{ij} psi_i psi_j`.
pub fn cobracket_m(a: &Tensor3, k: usize, psi: &[GPoly]) -> GPoly {
    let n = psi.len();
    let mut out = GPoly::zero(&psi[0].table().clone());
    for i in 0..n {
        for j in 0..n {
            let q = a.get(k, i, j);
            if !q.is_zero() {
                out = &out + &(&psi[i] * &psi[j]).scale(q);
            }
        }
    }
    out
}
