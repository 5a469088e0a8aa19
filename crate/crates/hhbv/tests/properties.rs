//! Property suites: differentials square to zero, comparison maps invert,
//! the rewriter is confluent and the BV identities hold.

use hhbv::bar_complex::{connes_b, hochschild_boundary, BarChain};
use hhbv::bv_engine::{bracket_from_delta, seven_term_check};
use hhbv::chain_complex::{smith_normal_form, IntMatrix};
use hhbv::checks::presentation_zoo;
use hhbv::coeff::CoeffRing;
use hhbv::comparison::{phi_star, psi_star};
use hhbv::group_ring::GroupAlgebra;
use hhbv::presentations::{Poly, Presentation};
use hhbv::small_resolutions::{SmallResolution, SmallValue};
use proptest::prelude::*;
use std::sync::OnceLock;

fn zoo() -> &'static Vec<(Presentation, Vec<Vec<i64>>)> {
    static Z: OnceLock<Vec<(Presentation, Vec<Vec<i64>>)>> = OnceLock::new();
    Z.get_or_init(|| {
        presentation_zoo()
            .into_iter()
            .map(|p| {
                let m = p.normal_monomials(4, 2);
                (p, m)
            })
            .collect()
    })
}

fn poly(p: &Presentation, monos: &[Vec<i64>], picks: &[(usize, i64)]) -> Poly {
    let mut out = p.zero();
    for (i, c) in picks {
        out = p.add(&out, &p.monomial(&monos[i % monos.len()], *c));
    }
    out
}

fn chain(alg: &GroupAlgebra, n: u64, terms: &[(Vec<i64>, i64, i64)], len: usize) -> BarChain {
    let mut x = BarChain::zero(len);
    for (t, a, c) in terms {
        let tuple: Vec<_> = t.iter().take(len).map(|k| alg.group.element(&[1 + k.rem_euclid(n as i64 - 1)])).collect();
        if tuple.len() == len {
            x.add_term(alg, tuple, alg.group.element(&[*a]), &alg.ring.from_i64(*c));
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hochschild_and_connes_square_to_zero(
        n in 2u64..6,
        len in 0usize..4,
        terms in prop::collection::vec((prop::collection::vec(0i64..8, 4), 0i64..6, -3i64..4), 1..4),
    ) {
        let alg = GroupAlgebra::cyclic(n, CoeffRing::Integers);
        let x = chain(&alg, n, &terms, len);
        prop_assert!(hochschild_boundary(&alg, &hochschild_boundary(&alg, &x)).is_zero());
        prop_assert!(connes_b(&alg, &connes_b(&alg, &x)).is_zero());
        let mut bb = hochschild_boundary(&alg, &connes_b(&alg, &x));
        if len > 0 {
            bb.add_chain(&alg, &connes_b(&alg, &hochschild_boundary(&alg, &x)), &alg.ring.one());
        }
        prop_assert!(bb.is_zero());
    }

    #[test]
    fn small_differential_squares_to_zero(
        which in 0usize..4,
        degree in 0usize..5,
        vals in prop::collection::vec((0usize..8, 0i64..8, -3i64..4), 1..5),
    ) {
        let g = ["Z/4", "Z/2 x Z/3", "Z/4 x Z/2", "Z x Z/3"][which];
        let res = SmallResolution::for_group(&hhbv::group_ring::GroupDescriptor::parse(g).unwrap(), CoeffRing::Integers).unwrap();
        let alg = &res.algebra;
        let summands = res.summands(degree);
        let mut v = SmallValue::zero(degree);
        for (s, e, c) in vals {
            let md = summands[s % summands.len()].clone();
            let coords: Vec<i64> = (0..alg.group.rank()).map(|i| e + i as i64).collect();
            let gelt = alg.group.element(&coords);
            v.add_at(alg, md, &alg.basis(&gelt), &alg.ring.from_i64(c));
        }
        let dd = res.cochain_differential(&res.cochain_differential(&v));
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn psi_star_inverts_phi_star(n in 2u64..8, r in 0usize..7, l in 0i64..8, c in -4i64..5) {
        let res = SmallResolution::periodic(n, CoeffRing::Integers);
        let a = res.algebra.gen_pow(0, l, c);
        prop_assert_eq!(psi_star(&res, &phi_star(&res, r, &a).unwrap()).unwrap(), a);
    }

    #[test]
    fn delta_squares_to_zero(k in 0usize..64, picks in prop::collection::vec((0usize..1000, -3i64..4), 1..4)) {
        let z = zoo();
        let (p, monos) = &z[k % z.len()];
        let x = poly(p, monos, &picks);
        prop_assert!(p.delta(&p.delta(&x)).is_zero());
    }

    #[test]
    fn rewriter_is_confluent(k in 0usize..64, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let z = zoo();
        let (p, monos) = &z[k % z.len()];
        let (a, b, c) = (poly(p, monos, &[(a, 1)]), poly(p, monos, &[(b, 1)]), poly(p, monos, &[(c, 1)]));
        // associativity: both bracketings of a word rewrite to the same normal form
        prop_assert!(p.equal(&p.mul(&p.mul(&a, &b), &c), &p.mul(&a, &p.mul(&b, &c))));
        // graded commutativity
        let s = if (p.degree(&a) * p.degree(&b)) % 2 == 1 { -1 } else { 1 };
        let ba = p.scale(&p.mul(&b, &a), &p.ring.from_i64(s));
        prop_assert!(p.equal(&p.mul(&a, &b), &ba));
        // normal forms are fixed points and survive a print/parse round trip
        prop_assert_eq!(p.normalize(&a), a.clone());
        prop_assert!(p.equal(&p.parse(&p.format(&a)).unwrap(), &a));
    }

    #[test]
    fn seven_term_identity(k in 0usize..64, a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let z = zoo();
        let (p, monos) = &z[k % z.len()];
        let (a, b, c) = (poly(p, monos, &[(a, 1)]), poly(p, monos, &[(b, 1)]), poly(p, monos, &[(c, 1)]));
        let (ok, r) = seven_term_check(p, &a, &b, &c).unwrap();
        prop_assert!(ok, "residual {}", p.format(&r));
    }

    #[test]
    fn bracket_is_graded_antisymmetric(k in 0usize..64, a in 0usize..1000, b in 0usize..1000) {
        let z = zoo();
        let (p, monos) = &z[k % z.len()];
        let (a, b) = (poly(p, monos, &[(a, 1)]), poly(p, monos, &[(b, 1)]));
        let ab = bracket_from_delta(p, &a, &b).unwrap();
        let ba = bracket_from_delta(p, &b, &a).unwrap();
        let e = (p.degree(&a) + 1) * (p.degree(&b) + 1);
        let s = if e % 2 == 1 { 1 } else { -1 };
        prop_assert!(p.equal(&ab, &p.scale(&ba, &p.ring.from_i64(s))));
    }

    #[test]
    fn smith_form_factors(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..5)) {
        let m = IntMatrix::from_rows(CoeffRing::Integers, &rows);
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        let d = s.diagonal();
        for i in 1..s.rank {
            prop_assert!((&d[i] % &d[i - 1]) == 0.into());
        }
    }

    #[test]
    fn modular_arithmetic(m in 2u64..30, a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let r = CoeffRing::modular(m);
        let (a, b, c) = (r.from_i64(a), r.from_i64(b), r.from_i64(c));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        if r.is_unit(&a) {
            prop_assert_eq!(r.mul(&a, &r.invert(&a).unwrap()), r.one());
        } else {
            prop_assert!(r.invert(&a).is_err());
        }
    }
}
