use hhbv::coeff::CoeffRing;
use hhbv::error::Error;
use hhbv::group_ring::GroupDescriptor;
use hhbv::presentations::*;

#[test]
fn cyclic_over_integers_has_trivial_delta() {
    let p = present_cyclic(&CoeffRing::Integers, 3).unwrap();
    assert_eq!(p.relations, ["x^3 - 1", "3*z"]);
    for e in p.normal_monomials(6, 0) {
        assert!(p.delta(&p.monomial(&e, 1)).is_zero());
    }
}

#[test]
fn cyclic_mod_two_odd_m_relation() {
    let p = present_cyclic(&CoeffRing::modular(2), 6).unwrap();
    assert!(p.relations.contains(&"y^2 - x^4*z".to_string()));
    let y3 = p.parse("y^3").unwrap();
    assert!(p.equal(&y3, &p.parse("y*x^4*z").unwrap()));
}

#[test]
fn cyclic_char_three_delta() {
    let p = present_cyclic(&CoeffRing::modular(3), 3).unwrap();
    let d = p.delta(&p.parse("z y x^2").unwrap());
    assert!(p.equal(&d, &p.parse("z x").unwrap()));
}

#[test]
fn hypotheses_are_named() {
    match present_cyclic(&CoeffRing::modular(6), 3) {
        Err(Error::Hypothesis(msg)) => assert!(msg.contains("prime field")),
        other => panic!("{other:?}"),
    }
    match present_tensor_z(4, 3) {
        Err(Error::Hypothesis(msg)) => assert!(msg.contains("m | n")),
        other => panic!("{other:?}"),
    }
    let q = present_cyclic(&CoeffRing::Rationals, 4).unwrap();
    assert!(q.hypotheses.iter().any(|h| h.contains("invertible")));
}

#[test]
fn tensor_branches_and_boxed_value() {
    let p = present_tensor_z(4, 2).unwrap();
    let c = p.generator("c").unwrap();
    assert!(p.mul(&c, &c).is_zero());
    assert_eq!(p.format(&p.delta(&c)), "-x^3*b");
    let q = present_tensor_z(2, 2).unwrap();
    let c = q.generator("c").unwrap();
    assert!(q.equal(&q.mul(&c, &c), &q.parse("a*b^2 + a^2*b").unwrap()));
    // (m + 1) b reduces to b
    assert!(p.equal(&p.parse("3*b").unwrap(), &p.parse("b").unwrap()));
    // x^{n+2} reduces to x^2
    assert_eq!(p.format(&p.parse("x^6").unwrap()), "x^2");
}

#[test]
fn free_abelian_examples() {
    let p = present_free_abelian(&CoeffRing::Integers, 1).unwrap();
    for i in -3..=3 {
        let m = p.monomial(&[i, 1], 1);
        assert!(p.equal(&p.delta(&m), &p.monomial(&[i - 1, 0], i - 1)));
    }
    let q = present_free_abelian(&CoeffRing::Integers, 2).unwrap();
    assert!(q.delta(&q.parse("x1 x2 y1 y2").unwrap()).is_zero());
    // {x_i^r, y_j} = −r δ_ij x_i^{r−1}
    for r in -2..=3i64 {
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let a = q.parse(&format!("x{i}^{r}")).unwrap();
            let b = q.parse(&format!("y{j}")).unwrap();
            let want = if i == j { q.scale(&q.parse(&format!("x{i}^{}", r - 1)).unwrap(), &q.ring.from_i64(-r)) } else { q.zero() };
            assert!(q.equal(&q.bracket_via_delta(&a, &b), &want), "r = {r}, i = {i}, j = {j}");
        }
    }
}

#[test]
fn finitely_generated_abelian() {
    let g = GroupDescriptor::parse("Z/3 x Z/3").unwrap();
    let p = present_fg_abelian(&g, &CoeffRing::modular(3)).unwrap();
    let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["x1", "y1", "z1", "x2", "y2", "z2"]);
    let h = GroupDescriptor::parse("Z x Z/2").unwrap();
    let q = present_fg_abelian(&h, &CoeffRing::modular(2)).unwrap();
    assert!(matches!(q.kind, PresentationKind::Tensor(_, _)));
    let z2 = GroupDescriptor::parse("Z x Z").unwrap();
    assert!(matches!(present_fg_abelian(&z2, &CoeffRing::Integers).unwrap().kind, PresentationKind::FreeAbelian { rank: 2 }));
    let bad = GroupDescriptor::parse("Z/2 x Z/3 x Z/5").unwrap();
    assert!(present_fg_abelian(&bad, &CoeffRing::Integers).is_err());
}

#[test]
fn truncated_polynomial_examples() {
    let src = truncated_presentation(3).unwrap();
    let tgt = present_cyclic(&CoeffRing::modular(3), 3).unwrap();
    let x = tgt.generator("x").unwrap();
    let images = vec![tgt.sub(&x, &tgt.one()), tgt.generator("y").unwrap(), tgt.generator("z").unwrap()];
    let v = src.generator("v").unwrap();
    let lhs = src.apply_hom(&tgt, &images, &src.delta(&v));
    assert!(tgt.equal(&lhs, &tgt.parse("-x^2").unwrap()));
    let two = truncated_presentation(2).unwrap();
    let v3 = two.parse("v^3").unwrap();
    assert!(two.equal(&two.delta(&v3), &two.parse("t + t*x").unwrap()));
    for p in [2, 3, 5, 7] {
        assert!(truncated_poly_iso(p, 6).unwrap().passed());
    }
}

#[test]
fn loop_space_examples() {
    let r = loop_space_iso(4).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked, 18);
    let p = loop_space_presentation(&CoeffRing::Integers);
    assert!(p.equal(&p.delta(&p.parse("z x^2").unwrap()), &p.parse("2 x^2").unwrap()));
}

#[test]
fn document_lists_tables() {
    let p = present_cyclic(&CoeffRing::modular(3), 3).unwrap();
    let doc = p.document(3);
    assert_eq!(doc.generators, [("x".to_string(), 0), ("y".to_string(), 1), ("z".to_string(), 2)]);
    assert!(doc.delta_table.contains(&("y".to_string(), "-x^2".to_string())));
    assert!(doc.bracket_table.contains(&("x".to_string(), "y".to_string(), "-1".to_string())));
}

#[test]
fn stray_multiplication_signs_are_rejected() {
    let p = present_cyclic(&CoeffRing::modular(2), 6).unwrap();
    for bad in ["x^2*", "*x", "x**y", "3*"] {
        assert!(p.parse(bad).is_err(), "{bad}");
    }
    assert_eq!(p.format(&p.parse("x * y").unwrap()), "x*y");
}
