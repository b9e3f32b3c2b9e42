//! Command dispatch for the `bfv` binary.
//!
//! Every command loads one scenario (`--scenario FILE` or `--preset NAME`),
//! runs the matching engine operations and renders a report. Exit codes:
//! 0 all checks pass, 1 a check failed, 2 usage or parse error, 3 the solver
//! was inconclusive.

mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use bfv_core::bfv::{build_charge_deg1, cocycle_lift, extend_charge, master_residual, BfvError, ChargeSeries};
use bfv_core::document::{parse_scenario, preset_source, DocumentError, PRESETS};
use bfv_core::graded::basis::base_monomials;
use bfv_core::graded::{base_degree, parse, rat, serialize, GPoly, Kind};
use bfv_core::homotopy::{h0_probe, homotopy_jacobi_residual, jacobiator, restrict_check, BracketTower, HomotopyError, LagrangianElement};
use bfv_core::linalg::SparseVec;
use bfv_core::report::Status;
use bfv_core::scenario::{
    assemble_constraints, bch_transport_check, check_compatibility, check_equivariance, validate_lie_bundle, Scenario, ScenarioError,
    ScenarioKind,
};
use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

pub use output::Format;
use output::Output;

#[derive(Parser, Debug)]
#[command(name = "bfv", version, about = "Degree-one BFV charges, derived brackets and reduction checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scenario document (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    scenario: Option<PathBuf>,
    /// Bundled scenario, instead of --scenario.
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Number of extension steps.
    #[arg(long, global = true, default_value_t = 2)]
    kmax: u32,
    /// Largest base degree in solver ansatz spaces.
    #[arg(long, global = true, default_value_t = 2)]
    ansatz_degree: u32,
    /// Base degree bound for probes (defaults to the scenario's).
    #[arg(long, global = true)]
    degree: Option<u32>,
    /// Truncation order for group checks (defaults to the scenario's).
    #[arg(long, global = true)]
    order: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the Lie data, equivariance and compatibility.
    Validate,
    /// Build the degree-one BRST charge.
    Charge,
    /// Check the master equation {Q, Q} = 0.
    Master,
    /// Lift pi to a cocycle of total ghost number zero.
    Lift,
    /// Extend the charge by corrections of negative total ghost number.
    Extend,
    /// Derived brackets on the Lagrangian generators, or on given arguments.
    Brackets {
        /// Argument expression; repeat for l_k with k arguments.
        #[arg(long = "arg", value_name = "EXPR")]
        args: Vec<String>,
    },
    /// Jacobi identity up to homotopy on a fixed family of test elements.
    Jacobi,
    /// Bounded probe of degree-zero cohomology and its induced bracket.
    #[command(name = "probe-h0")]
    ProbeH0,
    /// Log-coordinate transport check for group-valued scenarios.
    Bch,
    /// List bundled scenarios.
    Presets,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String, String),
    Failed(String, String),
    Inconclusive(String, String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Failed(..) => 1,
            Failure::Usage(..) => 2,
            Failure::Inconclusive(..) => 3,
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let name = match &e {
            DocumentError::Json(_) => "JsonError",
            DocumentError::Schema { .. } => "SchemaError",
            DocumentError::Parse { .. } => "ParseError",
            DocumentError::Shape(_) => "ShapeMismatch",
        };
        Failure::Usage(name.into(), e.to_string())
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        let name = match &e {
            ScenarioError::ShapeMismatch(_) => "ShapeMismatch",
            ScenarioError::Group(_) => "GroupError",
        };
        Failure::Usage(name.into(), e.to_string())
    }
}

impl From<BfvError> for Failure {
    fn from(e: BfvError) -> Self {
        let msg = e.to_string();
        match e {
            BfvError::NotFound { .. } => Failure::Inconclusive("NotFound".into(), msg),
            BfvError::LiftNotFound(_) => Failure::Inconclusive("LiftNotFound".into(), msg),
            BfvError::ExtensionNotFound { .. } => Failure::Inconclusive("ExtensionNotFound".into(), msg),
            BfvError::PresetMismatch => Failure::Usage("PresetMismatch".into(), msg),
            BfvError::ShapeMismatch(_) => Failure::Usage("ShapeMismatch".into(), msg),
            BfvError::NotBihomogeneous => Failure::Usage("NotBihomogeneous".into(), msg),
            BfvError::InternalSignError => Failure::Failed("InternalSignError".into(), msg),
            BfvError::Scenario(e) => e.into(),
        }
    }
}

impl From<HomotopyError> for Failure {
    fn from(e: HomotopyError) -> Self {
        let msg = e.to_string();
        match e {
            HomotopyError::NotInLagrangian(_) => Failure::Usage("NotInLagrangian".into(), msg),
            HomotopyError::TruncationExceeded { .. } => Failure::Inconclusive("TruncationExceeded".into(), msg),
            HomotopyError::InternalSignError => Failure::Failed("InternalSignError".into(), msg),
            HomotopyError::Arity(_) => Failure::Usage("Arity".into(), msg),
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(out) => {
            let code = match out.status() {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Undecided => 3,
            };
            Outcome { code, stdout: out.render(cli.format, start.elapsed()), stderr: String::new() }
        }
        Err(f) => {
            let code = f.code();
            let (Failure::Usage(name, msg) | Failure::Failed(name, msg) | Failure::Inconclusive(name, msg)) = f;
            Outcome { code, stdout: String::new(), stderr: format!("error[{name}]: {msg}\n") }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Charge => "charge",
        Command::Master => "master",
        Command::Lift => "lift",
        Command::Extend => "extend",
        Command::Brackets { .. } => "brackets",
        Command::Jacobi => "jacobi",
        Command::ProbeH0 => "probe-h0",
        Command::Bch => "bch",
        Command::Presets => "presets",
    }
}

fn load(cli: &Cli) -> Result<(String, String), Failure> {
    match (&cli.scenario, &cli.preset) {
        (Some(path), None) => {
            let src = std::fs::read_to_string(path).map_err(|e| Failure::Usage("IoError".into(), format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), src))
        }
        (None, Some(name)) => {
            let src = preset_source(name).ok_or_else(|| Failure::Usage("UnknownPreset".into(), format!("no bundled scenario named `{name}`")))?;
            Ok((format!("preset:{name}"), src.to_string()))
        }
        _ => Err(Failure::Usage("Usage".into(), "give exactly one of --scenario FILE or --preset NAME".into())),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    if let Command::Presets = cli.command {
        let mut out = Output::new("presets", "bundled".into(), digest(""));
        for (name, src) in PRESETS {
            out.value(format!("preset.{name}"), format!("sha256:{}", digest(src)));
        }
        return Ok(out);
    }
    let (label, src) = load(cli)?;
    let s = parse_scenario(&src)?;
    let mut out = Output::new(command_name(&cli.command), label, digest(&src));
    match &cli.command {
        Command::Validate => validate(&s, &mut out)?,
        Command::Charge => {
            let q = build_charge_deg1(&s)?;
            out.value("charge", serialize(&q));
            out.value("charge_terms", q.len());
        }
        Command::Master => {
            let q = build_charge_deg1(&s)?;
            let r = master_residual(&q);
            out.value("charge", serialize(&q));
            out.value("residual", serialize(&r));
            let details = if r.is_zero() { vec![] } else { vec![format!("{} nonzero terms in 1/2 {{Q, Q}}", r.len())] };
            out.check("master_equation", status(r.is_zero()), details);
        }
        Command::Lift => {
            let q = build_charge_deg1(&s)?;
            let pi = cocycle_lift(&s, &q, cli.ansatz_degree)?;
            out.value("charge", serialize(&q));
            out.value("lift", serialize(&pi));
            out.check("cocycle", status(q.bracket(&pi).is_zero()), vec![]);
        }
        Command::Extend => {
            let series = series(&s, cli)?;
            emit_series(&series, &mut out);
        }
        Command::Brackets { args } => brackets(&s, cli, args, &mut out)?,
        Command::Jacobi => jacobi(&s, cli, &mut out)?,
        Command::ProbeH0 => probe(&s, cli, &mut out)?,
        Command::Bch => {
            if s.kind != ScenarioKind::GroupValued {
                return Err(Failure::Usage("Usage".into(), "bch needs a group_valued scenario".into()));
            }
            let order = cli.order.unwrap_or(s.truncation_order);
            let cs = assemble_constraints(&s)?;
            out.value("order", order);
            for (j, f) in cs.deg0.iter().enumerate() {
                out.value(format!("f.{}", j + 1), serialize(f));
            }
            out.report("bch_transport", &bch_transport_check(&s, order));
        }
        Command::Presets => unreachable!(),
    }
    Ok(out)
}

fn digest(src: &str) -> String {
    Sha256::digest(src.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn validate(s: &Scenario, out: &mut Output) -> Result<(), Failure> {
    out.value("kind", s.kind.name());
    out.report("lie_bundle", &validate_lie_bundle(s));
    let cs = assemble_constraints(s)?;
    for (i, p) in cs.deg1.iter().enumerate() {
        out.value(format!("psi.{}", i + 1), serialize(p));
    }
    for (j, f) in cs.deg0.iter().enumerate() {
        out.value(format!("J0.{}", j + 1), serialize(f));
    }
    out.report("equivariance", &check_equivariance(s, &cs));
    out.report("compatibility", &check_compatibility(s, &cs));
    Ok(())
}

fn series(s: &Scenario, cli: &Cli) -> Result<ChargeSeries, Failure> {
    let q = build_charge_deg1(s)?;
    let pi = cocycle_lift(s, &q, cli.ansatz_degree)?;
    Ok(extend_charge(s, &q, &pi, cli.kmax, cli.ansatz_degree)?)
}

fn emit_series(series: &ChargeSeries, out: &mut Output) {
    out.value("charge", serialize(&series.q));
    out.value("terms", series.terms.len());
    for (k, p) in series.terms.iter().enumerate() {
        out.value(format!("term.{k}"), serialize(p));
    }
    out.value("exact", series.exact);
    out.value("residual_terms", series.residual.len());
    out.value("residual_bound", series.residual_bound.map_or("none".to_string(), |b| b.to_string()));
    // After m corrections the residual lives at total ghost <= -m.
    let steps = series.terms.len() as i32 - 1;
    let ok = series.residual_bound.map_or(true, |b| b <= -steps);
    out.check("residual_bound", status(ok), vec![]);
}

/// Lagrangian generators in table order.
fn lagrangian_generators(s: &Scenario) -> Vec<(String, LagrangianElement)> {
    s.table
        .entries()
        .iter()
        .filter(|g| matches!(g.kind, Kind::Base | Kind::GhostG | Kind::AntighostH))
        .map(|g| (g.name.clone(), restrict_check(&GPoly::generator(&s.table, g.id)).expect("Lagrangian generator")))
        .collect()
}

fn brackets(s: &Scenario, cli: &Cli, args: &[String], out: &mut Output) -> Result<(), Failure> {
    let tower = BracketTower::new(series(s, cli)?);
    out.value("exact", tower.series.exact);
    if !args.is_empty() {
        let els = args
            .iter()
            .map(|a| {
                let p = parse(a, &s.table).map_err(|e| Failure::Usage("ParseError".into(), format!("`{a}`: {e}")))?;
                Ok(restrict_check(&p)?)
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let v = tower.ell(els.len(), &els)?;
        out.value(format!("l{}({})", els.len(), args.join(", ")), serialize(v.value()));
        return Ok(());
    }
    let gens = lagrangian_generators(s);
    for (name, g) in &gens {
        out.value(format!("l1({name})"), serialize(tower.ell1(g)?.value()));
    }
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let v = tower.ell2(&gens[i].1, &gens[j].1)?;
            if !v.value().is_zero() {
                out.value(format!("l2({}, {})", gens[i].0, gens[j].0), serialize(v.value()));
            }
        }
    }
    if tower.series.terms.len() > 1 {
        for i in 0..gens.len() {
            for j in i..gens.len() {
                for k in j..gens.len() {
                    let v = tower.ell3(&gens[i].1, &gens[j].1, &gens[k].1)?;
                    if !v.value().is_zero() {
                        out.value(format!("l3({}, {}, {})", gens[i].0, gens[j].0, gens[k].0), serialize(v.value()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn jacobi(s: &Scenario, cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let tower = BracketTower::new(series(s, cli)?);
    let mut els = lagrangian_generators(s);
    for m in base_monomials(&s.table, 2).into_iter().filter(|m| base_degree(m, &s.table) == 2) {
        let p = GPoly::from_monomial(&s.table, m, rat(1));
        els.push((serialize(&p), restrict_check(&p)?));
    }
    let (mut triples, mut nonzero_jacobiator, mut bad) = (0usize, 0usize, Vec::new());
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            for k in j + 1..els.len() {
                let (f, g, h) = (&els[i].1, &els[j].1, &els[k].1);
                triples += 1;
                if !jacobiator(&tower, f, g, h)?.is_zero() {
                    nonzero_jacobiator += 1;
                }
                let r = homotopy_jacobi_residual(&tower, f, g, h)?;
                if !r.is_zero() {
                    bad.push(format!("({}, {}, {}): {}", els[i].0, els[j].0, els[k].0, serialize(&r)));
                }
            }
        }
    }
    out.value("exact", tower.series.exact);
    out.value("triples", triples);
    out.value("jacobiator_nonzero", nonzero_jacobiator);
    out.value("residual_nonzero", bad.len());
    out.check("homotopy_jacobi", status(bad.is_empty()), bad);
    Ok(())
}

fn fmt_class(v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (k, q)) in v.iter().enumerate() {
        let neg = *q < rat(0);
        let mag = if neg { -q.clone() } else { q.clone() };
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&format!("{mag} r{}", k + 1));
    }
    s
}

fn probe(s: &Scenario, cli: &Cli, out: &mut Output) -> Result<(), Failure> {
    let tower = BracketTower::new(series(s, cli)?);
    let d = cli.degree.unwrap_or(s.degree_bound);
    let r = h0_probe(&tower, d)?;
    out.value("degree_bound", d);
    out.value("dim_space", r.dim_space);
    out.value("dim_kernel", r.dim_kernel);
    out.value("dim_image", r.dim_image);
    out.value("dim_h0", r.dim_cohomology());
    for (i, (rep, proj)) in r.representatives.iter().zip(&r.projections).enumerate() {
        out.value(format!("rep.{}", i + 1), serialize(rep));
        if proj != rep {
            out.value(format!("rep.{}.functions", i + 1), serialize(proj));
        }
    }
    for (i, j, c) in &r.table {
        let v = c.as_ref().map_or("outside_bound".to_string(), fmt_class);
        out.value(format!("l2(r{}, r{})", i + 1, j + 1), v);
    }
    out.value("table_zero", r.zero_table());
    let details = r.closure_failures.iter().map(|(i, j)| format!("l2(r{}, r{}) is not a cocycle", i + 1, j + 1)).collect();
    out.check("closure", status(r.closure_failures.is_empty()), details);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bfv_core::graded::ratio;

    #[test]
    fn class_formatting() {
        assert_eq!(fmt_class(&SparseVec::new()), "0");
        let v: SparseVec = [(0, rat(2)), (2, ratio(-1, 2))].into_iter().collect();
        assert_eq!(fmt_class(&v), "2 r1 - 1/2 r3");
        let v: SparseVec = [(1, rat(-1))].into_iter().collect();
        assert_eq!(fmt_class(&v), "-1 r2");
    }

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(digest(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
