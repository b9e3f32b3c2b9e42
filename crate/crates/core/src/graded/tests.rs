use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn table() -> Arc<GeneratorTable> {
    Arc::new(GeneratorTable::bfv1(2, 1, 1))
}

fn p(t: &Arc<GeneratorTable>, s: &str) -> GPoly {
    parse(s, t).unwrap()
}

/// Random polynomial of the given degree with up to four terms of up to
/// three factors.
fn random_homogeneous(t: &Arc<GeneratorTable>, rng: &mut impl Rng, degree: i32) -> GPoly {
    let mut out = GPoly::zero(t);
    for _ in 0..40 {
        if out.len() >= 4 {
            break;
        }
        let k = rng.gen_range(0..=3);
        let ids: Vec<u16> = (0..k).map(|_| rng.gen_range(0..t.len() as u16)).collect();
        let deg: i32 = ids.iter().map(|&i| t.degree(i)).sum();
        if deg != degree {
            continue;
        }
        let q = rat(rng.gen_range(-3..=3));
        out = &out + &GPoly::normalize(t, &[(q, ids)]).unwrap();
    }
    out
}

fn sign(e: i32) -> i64 {
    if e.rem_euclid(2) == 0 { 1 } else { -1 }
}

#[test]
fn normalize_examples() {
    let t = table();
    let (e1, e2, x1) = (t.lookup("e1").unwrap(), t.lookup("e2").unwrap(), t.lookup("x1").unwrap());
    assert_eq!(GPoly::normalize(&t, &[(rat(1), vec![e2, e1])]).unwrap(), p(&t, "-1 * e1 e2"));
    assert!(GPoly::normalize(&t, &[(rat(1), vec![e1, e1])]).unwrap().is_zero());
    assert!(GPoly::normalize(&t, &[(rat(2), vec![x1, x1]), (rat(-2), vec![x1, x1])]).unwrap().is_zero());
    assert!(matches!(
        GPoly::normalize(&t, &[(rat(1), vec![99])]),
        Err(AlgebraError::UnknownGenerator(_))
    ));
}

#[test]
fn mul_examples() {
    let t = table();
    assert_eq!(&p(&t, "1*x1 e1") * &p(&t, "1*x2 e2"), p(&t, "1 * x1 x2 e1 e2"));
    assert!((&p(&t, "1*e1") * &p(&t, "1*e1 e2")).is_zero());
    assert_eq!(&p(&t, "x1 + e1") * &p(&t, "x1 - e1"), p(&t, "1 * x1^2"));
}

#[test]
fn table_mismatch_is_reported() {
    let a = table();
    let b = Arc::new(GeneratorTable::bfv1(3, 0, 0));
    let x = GPoly::one(&a);
    let y = GPoly::one(&b);
    assert_eq!(x.try_mul(&y), Err(AlgebraError::TableMismatch));
    assert_eq!(x.try_bracket(&y), Err(AlgebraError::TableMismatch));
}

#[test]
fn bracket_examples() {
    let t = table();
    for a in 1..=2 {
        for b in 1..=2 {
            let v = p(&t, &format!("e{a}")).bracket(&p(&t, &format!("x{b}")));
            assert_eq!(v, GPoly::constant(&t, rat((a == b) as i64)));
        }
    }
    // Forced by {e1, x1} = 1 and the Leibniz rule: {e1 e2, x1} = -e2.
    assert_eq!(p(&t, "1*e1 e2").bracket(&p(&t, "x1")), p(&t, "-1*e2"));
    assert!(p(&t, "1*e1 e2").bracket(&p(&t, "1*e1 e2")).is_zero());
    let rot = p(&t, "1*x1 e2 - 1*x2 e1");
    assert!(rot.bracket(&p(&t, "1*x1^2 + 1*x2^2")).is_zero());
    assert_eq!(p(&t, "c1").bracket(&p(&t, "b1")), GPoly::one(&t));
    assert_eq!(p(&t, "C1").bracket(&p(&t, "B1")), GPoly::one(&t));
}

#[test]
fn grade_components_examples() {
    let t = table();
    let f = p(&t, "1*e1 c1 b1");
    let g = f.grade_components();
    assert_eq!(g.len(), 1);
    assert_eq!(g[&(0, 2)], f);
    let g = p(&t, "x1 + 1*e1 e2").grade_components();
    assert_eq!(g[&(0, 0)], p(&t, "x1"));
    assert_eq!(g[&(0, 2)], p(&t, "1*e1 e2"));
}

#[test]
fn serialization_examples() {
    let t = table();
    assert_eq!(serialize(&GPoly::zero(&t)), "0");
    assert_eq!(serialize(&p(&t, "1 * e1 e2")), "1 * e1 e2");
    assert_eq!(serialize(&p(&t, "2*e2 x1 x1 - 1/2")), "-1/2 + 2 * x1^2 e2");
    assert!(p(&t, "1 * e1 e1").is_zero());
    assert!(matches!(parse("q1", &t), Err(AlgebraError::Parse { .. })));
    assert!(matches!(parse("1 * e1^2", &t), Err(AlgebraError::Parse { .. })));
}

#[test]
fn bracket_axioms_on_random_triples() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 300 {
        let d: Vec<i32> = (0..3).map(|_| rng.gen_range(-1..=3)).collect();
        let f = random_homogeneous(&t, &mut rng, d[0]);
        let g = random_homogeneous(&t, &mut rng, d[1]);
        let h = random_homogeneous(&t, &mut rng, d[2]);
        if f.is_zero() || g.is_zero() || h.is_zero() {
            continue;
        }
        checked += 1;
        let (a, b) = (d[0], d[1]);
        let fg = f.bracket(&g);
        assert_eq!(fg, g.bracket(&f).scale_int(-sign((a - 1) * (b - 1))), "antisymmetry");
        let lhs = f.bracket(&(&g * &h));
        let rhs = &(&fg * &h) + &(&g * &f.bracket(&h)).scale_int(sign((a - 1) * b));
        assert_eq!(lhs, rhs, "Leibniz");
        let lhs = f.bracket(&g.bracket(&h));
        let rhs = &fg.bracket(&h) + &g.bracket(&f.bracket(&h)).scale_int(sign((a - 1) * (b - 1)));
        assert_eq!(lhs, rhs, "Jacobi");
        if !fg.is_zero() {
            assert_eq!(fg.degree(), Some(a + b - 1));
        }
    }
}

#[test]
fn bfv0_axioms_on_random_triples() {
    // Degree 0 super Poisson bracket with a constant symplectic pair.
    let t = Arc::new(GeneratorTable::bfv0(2, 2, &[(1, 2, vec![(rat(1), vec![0, 0])])]));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 200 {
        let d: Vec<i32> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let f = random_homogeneous(&t, &mut rng, d[0]);
        let g = random_homogeneous(&t, &mut rng, d[1]);
        let h = random_homogeneous(&t, &mut rng, d[2]);
        if f.is_zero() || g.is_zero() || h.is_zero() {
            continue;
        }
        checked += 1;
        let (a, b) = (d[0], d[1]);
        let fg = f.bracket(&g);
        assert_eq!(fg, g.bracket(&f).scale_int(-sign(a * b)));
        assert_eq!(f.bracket(&(&g * &h)), &(&fg * &h) + &(&g * &f.bracket(&h)).scale_int(sign(a * b)));
        assert_eq!(
            f.bracket(&g.bracket(&h)),
            &fg.bracket(&h) + &g.bracket(&f.bracket(&h)).scale_int(sign(a * b))
        );
    }
}

#[test]
fn bigrading_rule_holds() {
    let t = table();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (df, dg) = (rng.gen_range(-1..=3), rng.gen_range(-1..=3));
        let f = random_homogeneous(&t, &mut rng, df);
        let g = random_homogeneous(&t, &mut rng, dg);
        for ((i, j), fi) in f.bigrade_components() {
            for ((k, l), gk) in g.bigrade_components() {
                for (pq, _) in fi.bracket(&gk).bigrade_components() {
                    assert!(pq == (i + k, j + l) || pq == (i + k - 1, j + l - 1));
                }
            }
        }
    }
}

fn arb_poly() -> impl Strategy<Value = Vec<(i64, Vec<u16>)>> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0u16..8, 0..4)), 0..5)
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(raw in arb_poly()) {
        let t = table();
        let raw: Vec<_> = raw.into_iter().map(|(q, ids)| (rat(q), ids)).collect();
        let f = GPoly::normalize(&t, &raw).unwrap();
        prop_assert_eq!(parse(&serialize(&f), &t).unwrap(), f);
    }

    #[test]
    fn mul_is_associative_and_graded_commutative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let t = table();
        let mk = |r: Vec<(i64, Vec<u16>)>| {
            let r: Vec<_> = r.into_iter().map(|(q, ids)| (rat(q), ids)).collect();
            GPoly::normalize(&t, &r).unwrap()
        };
        let (f, g, h) = (mk(a), mk(b), mk(c));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        for (df, fi) in f.degree_components() {
            for (dg, gi) in g.degree_components() {
                prop_assert_eq!(&fi * &gi, (&gi * &fi).scale_int(sign(df * dg)));
            }
        }
    }
}
