use super::*;
use crate::document::{parse_scenario, preset};
use crate::graded::basis::{monomials, Shape};
use crate::graded::{parse, rat};
use crate::lie::LieAlgebraData;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KINDS: [Kind; 6] = [Kind::Base, Kind::Fiber, Kind::GhostG, Kind::GhostH, Kind::AntighostG, Kind::AntighostH];

/// Random element of the given bidegree and function degree with at most
/// `terms` monomials of base degree at most 2.
fn random_element(t: &Arc<GeneratorTable>, rng: &mut ChaCha8Rng, degree: i32, g: u32, a: u32, terms: usize) -> GPoly {
    let basis = monomials(t, &Shape { degree, ghost: g, antighost: a, max_base_degree: 2, kinds: KINDS.to_vec() });
    let mut p = GPoly::zero(t);
    if basis.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        p.add_monomial(m, rat(rng.gen_range(-3..=3)));
    }
    p
}

#[test]
fn so3_master_equation_and_corruption() {
    let s = preset("so3-classical").unwrap();
    let q = build_charge_deg1(&s).unwrap();
    assert_eq!(q.grade_components().keys().copied().collect::<Vec<_>>(), vec![(1, 2)]);
    assert!(master_residual(&q).is_zero());
    let mut bad = s.clone();
    bad.lie.lie.c.set(0, 1, 2, rat(-2));
    bad.lie.lie.c.set(1, 0, 2, rat(2));
    assert!(!master_residual(&build_charge_deg1(&bad).unwrap()).is_zero());
}

#[test]
fn all_presets_satisfy_master_equation() {
    for (name, _) in crate::document::PRESETS {
        let s = preset(name).unwrap();
        assert!(master_residual(&build_charge_deg1(&s).unwrap()).is_zero(), "{name}");
    }
}

#[test]
fn brst_apply_squares_to_half_residual_bracket() {
    let s = preset("so3-classical").unwrap();
    let mut bad = s.clone();
    bad.lie.lie.c.set(0, 1, 2, rat(-2));
    bad.lie.lie.c.set(1, 0, 2, rat(2));
    let q = build_charge_deg1(&bad).unwrap();
    let res = master_residual(&q);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (g, a) in [(0, 0), (0, 1), (1, 1), (1, 0)] {
        let f = random_element(&s.table, &mut rng, 1, g, a, 4);
        assert_eq!(brst_apply(&q, &brst_apply(&q, &f)), res.bracket(&f));
    }
}

#[test]
fn delta_v_of_antighost_is_action_field() {
    let s = preset("abelian-translation").unwrap();
    let q = build_charge_deg1(&s).unwrap();
    let cs = assemble_constraints(&s).unwrap();
    let b1 = GPoly::var(&s.table, Kind::AntighostG, 1);
    let (dh, dv) = split_dh_dv(&q, &b1).unwrap();
    assert_eq!(dv, cs.deg1[0]);
    assert!(dh.is_zero());
    let so3 = preset("so3-classical").unwrap();
    let q = build_charge_deg1(&so3).unwrap();
    let cs = assemble_constraints(&so3).unwrap();
    let (dh, dv) = split_dh_dv(&q, &GPoly::var(&so3.table, Kind::AntighostG, 1)).unwrap();
    assert_eq!(dv, cs.deg1[0]);
    assert!(!dh.is_zero());
    // An invariant function with no degree-zero constraints to lower.
    let x3 = GPoly::var(&s.table, Kind::Base, 3);
    assert!(split_dh_dv(&q, &GPoly::var(&so3.table, Kind::Base, 1)).unwrap().1.is_zero());
    let _ = x3;
    let mixed = &b1 + &GPoly::var(&s.table, Kind::GhostG, 1);
    assert_eq!(split_dh_dv(&build_charge_deg1(&s).unwrap(), &mixed), Err(BfvError::NotBihomogeneous));
}

#[test]
fn splitting_differentials_square_to_zero() {
    let s = preset("so3-classical").unwrap();
    let q = build_charge_deg1(&s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let (g, a) = (i % 3, (i / 3) % 3);
        let f = random_element(&s.table, &mut rng, (i % 4) as i32 - 1, g, a, 3);
        let (dh, dv) = split_dh_dv(&q, &f).unwrap();
        assert!(delta_v(&q, &dv).unwrap().is_zero());
        assert!(delta_h(&q, &dh).unwrap().is_zero());
        let anti = &delta_h(&q, &dv).unwrap() + &delta_v(&q, &dh).unwrap();
        assert!(anti.is_zero());
    }
}

#[test]
fn koszul_round_trip_and_not_found() {
    let s = preset("so3-classical").unwrap();
    let q = build_charge_deg1(&s).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..10 {
        let p0 = random_element(&s.table, &mut rng, (i % 3) as i32, (i % 2) as u32, 1 + (i % 2) as u32, 3);
        let r = delta_v(&q, &p0).unwrap();
        let p = koszul_solve(&q, &r, 2).unwrap();
        assert_eq!(delta_v(&q, &p).unwrap(), r);
    }
    let one = GPoly::one(&s.table);
    for bound in 0..=3 {
        assert_eq!(koszul_solve(&q, &one, bound), Err(BfvError::NotFound { bound }));
    }
    let t = preset("abelian-translation").unwrap();
    let qt = build_charge_deg1(&t).unwrap();
    let psi = assemble_constraints(&t).unwrap().deg1[0].clone();
    let p = koszul_solve(&qt, &psi, 1).unwrap();
    assert_eq!(delta_v(&qt, &p).unwrap(), psi);
}

#[test]
fn classical_and_dgla_terminate_after_lift() {
    for (name, expect) in [
        ("so3-classical", "-1 * e1 e4 - 1 * e2 e5 - 1 * e3 e6 + 1 * C1 b1 + 1 * C2 b2 + 1 * C3 b3"),
        ("dgla-identity", "-1 * e1 e4 - 1 * e2 e5 - 1 * e3 e6 - 1 * C1 b1 - 1 * C2 b2 - 1 * C3 b3"),
    ] {
        let s = preset(name).unwrap();
        let q = build_charge_deg1(&s).unwrap();
        let pi = cocycle_lift(&s, &q, 2).unwrap();
        assert_eq!(pi, parse(expect, &s.table).unwrap());
        let series = extend_charge(&s, &q, &pi, 3, 2).unwrap();
        assert!(series.exact);
        assert_eq!(series.terms, vec![pi]);
        assert_eq!(series.residual_bound, None);
    }
}

#[test]
fn dgla_with_zero_differential_lifts_to_pi() {
    // A = 0 with J0 Casimirs of pi: the dgla condition holds and no correction is needed.
    let src = r#"{
        "kind": "dgla", "n": 3,
        "pi": "1 * e2 e3",
        "psi": ["1 * e1"], "J0": ["1 * x1"],
        "lie": { "dim_g": 1, "dim_h": 1, "A": [] }
    }"#;
    let s = parse_scenario(src).unwrap();
    let cs = assemble_constraints(&s).unwrap();
    assert!(crate::scenario::check_compatibility(&s, &cs).passed());
    let q = build_charge_deg1(&s).unwrap();
    assert_eq!(cocycle_lift(&s, &q, 2).unwrap(), s.pi);
}

#[test]
fn bialgebra_series_has_higher_terms() {
    let s = preset("aff1-bialgebra").unwrap();
    let q = build_charge_deg1(&s).unwrap();
    let pi = cocycle_lift(&s, &q, 2).unwrap();
    assert_eq!(pi, parse("-2 * x2 e1 e2 + 1 * e1 c2 b2 - 1 * e2 c2 b1 - 1 * x2 e2 c2 b2", &s.table).unwrap());
    let series = extend_charge(&s, &q, &pi, 1, 2).unwrap();
    assert_eq!(series.terms.len(), 2);
    assert!(!series.terms[1].is_zero());
    assert!(series.residual_bound.unwrap() <= -1);
    let series = extend_charge(&s, &q, &pi, 2, 2).unwrap();
    assert_eq!(series.terms.len(), 3);
    assert!(series.residual_bound.unwrap() <= -2);
    assert_eq!(series.residual, master_residual(&series.total()));
}

#[test]
fn quasi_first_correction_is_antighost_one() {
    let s = preset("quasi-chi").unwrap();
    let q = build_charge_deg1(&s).unwrap();
    let pi = cocycle_lift(&s, &q, 2).unwrap();
    let series = extend_charge(&s, &q, &pi, 2, 2).unwrap();
    let c1 = &series.terms[1];
    assert!(c1.bigrade_components().contains_key(&(0, 1)));
    assert!(series.exact);
}

#[test]
fn degree_zero_charge_so3() {
    let s = preset("so3-classical").unwrap();
    let t0 = bfv0_table_for(&s, 3);
    let j: Vec<GPoly> = s
        .j0
        .iter()
        .map(|f| transfer(f, &t0, &[(Kind::Base, Kind::Base)]))
        .collect();
    let lie = LieAlgebraData::so3();
    let q = build_charge_deg0(&lie, &j).unwrap();
    assert!(master_residual(&q).is_zero());
    let expect = parse(
        "1 * x2 x6 c1 - 1 * x3 x5 c1 + 1 * x3 x4 c2 - 1 * x1 x6 c2 + 1 * x1 x5 c3 - 1 * x2 x4 c3 \
         - 1 * c1 c2 b3 - 1 * c2 c3 b1 + 1 * c1 c3 b2",
        &t0,
    )
    .unwrap();
    assert_eq!(q, expect);
    let bad = LieAlgebraData::so3().with(0, 1, 2, rat(2));
    assert!(!master_residual(&build_charge_deg0(&bad, &j).unwrap()).is_zero());
    assert_eq!(build_charge_deg1(&s).map(|_| ()), Ok(()));
    assert_eq!(build_charge_deg0(&lie, &s.j0), Err(BfvError::PresetMismatch));
}

#[test]
fn degree_zero_abelian_and_pure_ghost() {
    let t0 = Arc::new(GeneratorTable::bfv0(2, 1, &[]));
    let j = vec![GPoly::var(&t0, Kind::Base, 1)];
    let q = build_charge_deg0(&LieAlgebraData::abelian(1), &j).unwrap();
    assert_eq!(q, parse("1 * x1 c1", &t0).unwrap());
    assert!(master_residual(&q).is_zero());
    let t3 = Arc::new(GeneratorTable::bfv0(1, 3, &[]));
    let zero = vec![GPoly::zero(&t3); 3];
    let q = build_charge_deg0(&LieAlgebraData::so3(), &zero).unwrap();
    assert!(master_residual(&q).is_zero());
    assert_eq!(q.len(), 3);
}
