//! EZ̄∘ĀW̄ is homotopic to the identity: on every Hochschild cycle of low
//! degree, EZ̄(ĀW̄(z)) − z is a boundary.

use std::collections::BTreeMap;

use hhbv::bar_complex::{hochschild_boundary, nonidentity_tuples, BarChain, BarKey, TensorPair};
use hhbv::chain_complex::{kernel_basis, IntMatrix, ImageTester};
use hhbv::coeff::CoeffRing;
use hhbv::group_ring::GroupAlgebra;
use num_bigint::BigInt;
use num_traits::Zero;

fn basis(alg: &GroupAlgebra, n: usize) -> Vec<BarKey> {
    let elems = alg.group.elements().unwrap();
    let mut out = Vec::new();
    for t in nonidentity_tuples(&alg.group, n).unwrap() {
        for g in &elems {
            out.push((t.clone(), g.clone()));
        }
    }
    out
}

fn coords(alg: &GroupAlgebra, index: &BTreeMap<BarKey, usize>, x: &BarChain) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); index.len()];
    for (k, c) in &x.terms {
        v[index[k]] = alg.ring.to_bigint(c).unwrap();
    }
    v
}

fn boundary_matrix(alg: &GroupAlgebra, n: usize) -> (IntMatrix, Vec<BarKey>) {
    let src = basis(alg, n);
    let tgt = basis(alg, n - 1);
    let index: BTreeMap<BarKey, usize> = tgt.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = IntMatrix::zeros(alg.ring.clone(), tgt.len(), src.len());
    for (j, (t, g)) in src.iter().enumerate() {
        let b = hochschild_boundary(alg, &BarChain::basis(alg, t.clone(), g.clone()));
        for (i, c) in coords(alg, &index, &b).into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    (m, src)
}

fn check(n: u64, m: u64, max: usize) {
    let tp = TensorPair::new(GroupAlgebra::cyclic(n, CoeffRing::Integers), GroupAlgebra::cyclic(m, CoeffRing::Integers)).unwrap();
    let alg = &tp.ab;
    for d in 1..=max {
        let (bd, src) = boundary_matrix(alg, d);
        let (bup, _) = boundary_matrix(alg, d + 1);
        let tester = ImageTester::new(&alg.ring, Some(&bup), src.len());
        let index: BTreeMap<BarKey, usize> = src.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        for z in kernel_basis(&bd) {
            let mut x = BarChain::zero(d);
            for (i, c) in z.iter().enumerate() {
                if !c.is_zero() {
                    let (t, g) = &src[i];
                    x.add_term(alg, t.clone(), g.clone(), &CoeffRing::Integers.from_bigint(c.clone()));
                }
            }
            let mut y = tp.ez(&tp.aw(&x));
            y.add_chain(alg, &x, &alg.ring.from_i64(-1));
            assert!(tester.contains(&coords(alg, &index, &y)), "EZ AW - id is not a boundary in degree {d}");
        }
    }
}

#[test]
fn ez_aw_is_homotopic_to_identity() {
    check(2, 3, 2);
    check(2, 2, 2);
}
