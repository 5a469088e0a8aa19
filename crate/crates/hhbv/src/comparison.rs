//! Comparison maps ψ: P → Bar and φ: Bar → P between a single-factor small
//! resolution (periodic for Z/n, two-term for Z) and the normalized bar
//! resolution, together with their compressed forms on (co)chains.

use crate::bar_complex::{BarChain, BarCochain};
use crate::error::{Error, Result};
use crate::group_ring::{GroupAlgebra, GroupElement, GroupRingElement};
use crate::small_resolutions::{mt_act, mt_add, mt_add_term, mt_basis, mt_collapse, MultiTensor, ResolutionKind, SmallResolution};

/// One term c·(1 ⊗ tuple ⊗ w) of ψ_d(1⊗1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiTerm {
    pub coeff: i64,
    pub tuple: Vec<GroupElement>,
    pub w: GroupElement,
}

fn single(res: &SmallResolution) -> Result<()> {
    match res.kind {
        ResolutionKind::Tensor(_) => Err(Error::Unsupported("comparison maps need a single cyclic or free factor".into())),
        _ => Ok(()),
    }
}

fn cyclic_order(res: &SmallResolution) -> Option<i64> {
    match res.kind {
        ResolutionKind::Periodic(n) => Some(n as i64),
        _ => None,
    }
}

/// All r-tuples with entries in 1..n.
fn exponent_tuples(n: i64, r: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for t in &out {
            for i in 1..n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// ψ_d(1⊗1) in closed form.
pub fn psi_terms(res: &SmallResolution, d: usize) -> Result<Vec<PsiTerm>> {
    single(res)?;
    let g = &res.algebra.group;
    let e = g.identity();
    if d == 0 {
        return Ok(vec![PsiTerm { coeff: 1, tuple: vec![], w: e }]);
    }
    let Some(n) = cyclic_order(res) else {
        return Ok(if d == 1 { vec![PsiTerm { coeff: -1, tuple: vec![g.gen_pow(0, 1)], w: e }] } else { vec![] });
    };
    let r = d / 2;
    let s = g.gen_pow(0, 1);
    let mut out = Vec::new();
    for is in exponent_tuples(n, r) {
        let sum: i64 = is.iter().sum();
        let w = g.gen_pow(0, r as i64 * (n - 1) - sum);
        let mut tuple = Vec::with_capacity(d);
        if d % 2 == 1 {
            tuple.push(s.clone());
        }
        for &i in &is {
            tuple.push(g.gen_pow(0, i));
            tuple.push(s.clone());
        }
        let coeff = if d.is_multiple_of(2) { if r.is_multiple_of(2) { 1 } else { -1 } } else if (r + 1).is_multiple_of(2) { 1 } else { -1 };
        out.push(PsiTerm { coeff, tuple, w });
    }
    Ok(out)
}

/// ψ_d(1⊗1) from the recursion ψ_d = s ψ_{d−1} d_d, as an element of
/// A ⊗ Ā^{⊗d} ⊗ A (keys of length d + 2).
pub fn psi_recursive(res: &SmallResolution, d: usize) -> Result<MultiTensor> {
    single(res)?;
    let alg = &res.algebra;
    let e = alg.group.identity();
    let mut cur = mt_basis(alg, vec![e.clone(), e.clone()], 1);
    for k in 1..=d {
        let Some(bd) = res.boundary_element(k) else { return Ok(MultiTensor::default()) };
        let last = k; // index of the right slot in degree k − 1
        let image = mt_act(alg, &cur, &bd, 0, last);
        let mut next = MultiTensor::default();
        for (key, c) in &image.terms {
            if alg.group.is_identity(&key[0]) {
                continue;
            }
            if key[1..key.len() - 1].iter().any(|g| alg.group.is_identity(g)) {
                continue;
            }
            let mut nk = vec![e.clone()];
            nk.extend(key.iter().cloned());
            mt_add_term(alg, &mut next, nk, c);
        }
        cur = next;
    }
    Ok(cur)
}

/// The closed form of ψ_d as an element of A ⊗ Ā^{⊗d} ⊗ A.
pub fn psi_element(res: &SmallResolution, d: usize) -> Result<MultiTensor> {
    let alg = &res.algebra;
    let mut out = MultiTensor::default();
    for t in psi_terms(res, d)? {
        let mut key = vec![alg.group.identity()];
        key.extend(t.tuple.iter().cloned());
        key.push(t.w.clone());
        mt_add_term(alg, &mut out, key, &alg.ring.from_i64(t.coeff));
    }
    Ok(out)
}

/// φ_r(1 ⊗ a1..ar ⊗ 1) ∈ A⊗A for group elements a_i (none the identity).
pub fn phi_element(res: &SmallResolution, tuple: &[GroupElement]) -> Result<MultiTensor> {
    single(res)?;
    let alg = &res.algebra;
    let g = &alg.group;
    let e = g.identity();
    let r = tuple.len();
    let mut out = MultiTensor::default();
    if tuple.iter().any(|x| g.is_identity(x)) {
        return Ok(out);
    }
    let Some(n) = cyclic_order(res) else {
        match r {
            0 => return Ok(mt_basis(alg, vec![e.clone(), e], 1)),
            1 => {
                let k = tuple[0].0[0];
                if k > 0 {
                    for j in 0..k {
                        mt_add_term(alg, &mut out, vec![g.gen_pow(0, j), g.gen_pow(0, k - j - 1)], &alg.ring.from_i64(-1));
                    }
                } else {
                    for j in 0..(-k) {
                        mt_add_term(alg, &mut out, vec![g.gen_pow(0, -j - 1), g.gen_pow(0, k + j)], &alg.ring.one());
                    }
                }
                return Ok(out);
            }
            _ => return Ok(out),
        }
    };
    let is: Vec<i64> = tuple.iter().map(|x| x.0[0]).collect();
    let sum: i64 = is.iter().sum();
    let half = (r / 2) as i64;
    if r.is_multiple_of(2) {
        if (0..r / 2).any(|k| is[2 * k] + is[2 * k + 1] < n) {
            return Ok(out);
        }
        let c = if half % 2 == 0 { 1 } else { -1 };
        mt_add_term(alg, &mut out, vec![e, g.gen_pow(0, sum - half * n)], &alg.ring.from_i64(c));
    } else {
        if (1..=r / 2).any(|k| is[2 * k - 1] + is[2 * k] < n) {
            return Ok(out);
        }
        let c = alg.ring.from_i64(if (half + 1) % 2 == 0 { 1 } else { -1 });
        for j in 0..is[0] {
            mt_add_term(alg, &mut out, vec![g.gen_pow(0, j), g.gen_pow(0, sum - j - half * n - 1)], &c);
        }
    }
    Ok(out)
}

/// μ(φ_r(1 ⊗ tuple ⊗ 1)): the value shared by φ̄ and φ̄*.
pub fn phi_value(res: &SmallResolution, tuple: &[GroupElement]) -> Result<GroupRingElement> {
    Ok(mt_collapse(&res.algebra, &phi_element(res, tuple)?))
}

/// φ̄*_r(a): the bar cochain t ↦ a·μ(φ_r(t)).
pub fn phi_star(res: &SmallResolution, r: usize, a: &GroupRingElement) -> Result<BarCochain> {
    single(res)?;
    let res2 = res.clone();
    let a = a.clone();
    Ok(BarCochain::new(r, move |t| {
        let v = phi_value(&res2, t).expect("single factor");
        res2.algebra.mul(&a, &v)
    }))
}

/// ψ̄*_d(f) = Σ c f(tuple) w.
pub fn psi_star(res: &SmallResolution, f: &BarCochain) -> Result<GroupRingElement> {
    let alg = &res.algebra;
    let mut out = alg.zero();
    for t in psi_terms(res, f.degree)? {
        let v = alg.shift(&t.w, &f.eval(alg, &t.tuple));
        alg.add_scaled(&mut out, &alg.ring.from_i64(t.coeff), &v);
    }
    Ok(out)
}

/// ψ̄_d(a) = Σ c (tuple; w a).
pub fn psi_chain(res: &SmallResolution, d: usize, a: &GroupRingElement) -> Result<BarChain> {
    let alg = &res.algebra;
    let mut out = BarChain::zero(d);
    for t in psi_terms(res, d)? {
        out.add_value(alg, &t.tuple, &alg.shift(&t.w, a), &alg.ring.from_i64(t.coeff));
    }
    Ok(out)
}

/// φ̄(x) for a bar chain x: Σ c μ(φ(tuple))·a.
pub fn phi_chain(res: &SmallResolution, x: &BarChain) -> Result<GroupRingElement> {
    let alg = &res.algebra;
    let mut out = alg.zero();
    for ((t, a), c) in &x.terms {
        let v = alg.shift(a, &phi_value(res, t)?);
        alg.add_scaled(&mut out, c, &v);
    }
    Ok(out)
}

/// Differential of the bar resolution on A ⊗ Ā^{⊗r} ⊗ A (keys of length r + 2).
pub fn bar_resolution_boundary(alg: &GroupAlgebra, x: &MultiTensor) -> MultiTensor {
    let mut out = MultiTensor::default();
    for (k, c) in &x.terms {
        let r = k.len() - 2;
        for i in 0..=r {
            let mut u = k[..i].to_vec();
            u.push(alg.group.mul(&k[i], &k[i + 1]));
            u.extend_from_slice(&k[i + 2..]);
            if r >= 1 && u[1..u.len() - 1].iter().any(|g| alg.group.is_identity(g)) {
                continue;
            }
            let s = if i % 2 == 0 { c.clone() } else { alg.ring.neg(c) };
            mt_add_term(alg, &mut out, u, &s);
        }
    }
    out
}

/// φ on a general element of A ⊗ Ā^{⊗r} ⊗ A, by A^e-linearity.
pub fn phi_on(res: &SmallResolution, x: &MultiTensor) -> Result<MultiTensor> {
    let alg = &res.algebra;
    let mut out = MultiTensor::default();
    for (k, c) in &x.terms {
        let p = phi_element(res, &k[1..k.len() - 1])?;
        let d = mt_basis(alg, vec![k[0].clone(), k[k.len() - 1].clone()], 1);
        mt_add(alg, &mut out, &mt_act(alg, &p, &d, 0, 1), c);
    }
    Ok(out)
}

/// Δ_P(1⊗1) in degree d for the periodic resolution: (φ⊗_Aφ)∘Δ_bar∘ψ, one
/// A^{⊗3} value per left degree p.
pub fn periodic_diagonal(alg: &GroupAlgebra, d: usize) -> Result<Vec<(usize, MultiTensor)>> {
    let n = match alg.group.factors.as_slice() {
        [crate::group_ring::Factor::Cyclic(n)] => *n,
        _ => return Err(Error::Unsupported("periodic diagonal needs a cyclic group".into())),
    };
    let res = SmallResolution { algebra: alg.clone(), kind: ResolutionKind::Periodic(n) };
    let terms = psi_terms(&res, d)?;
    let mut out = Vec::new();
    for p in 0..=d {
        let mut acc = MultiTensor::default();
        for t in &terms {
            let left = phi_element(&res, &t.tuple[..p])?;
            let right = phi_element(&res, &t.tuple[p..])?;
            for (lk, lc) in &left.terms {
                for (rk, rc) in &right.terms {
                    let key = vec![lk[0].clone(), alg.group.mul(&lk[1], &rk[0]), alg.group.mul(&rk[1], &t.w)];
                    let c = alg.ring.mul_i64(&alg.ring.mul(lc, rc), t.coeff);
                    mt_add_term(alg, &mut acc, key, &c);
                }
            }
        }
        if !acc.is_zero() {
            out.push((p, acc));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;

    #[test]
    fn psi_closed_form_matches_recursion() {
        for n in 2..=5 {
            let res = SmallResolution::periodic(n, CoeffRing::Integers);
            for d in 0..=5 {
                assert_eq!(psi_element(&res, d).unwrap(), psi_recursive(&res, d).unwrap(), "n={n} d={d}");
            }
        }
        let z = SmallResolution::koszul_z(CoeffRing::Integers);
        for d in 0..=3 {
            assert_eq!(psi_element(&z, d).unwrap(), psi_recursive(&z, d).unwrap());
        }
    }

    #[test]
    fn phi_is_a_chain_map() {
        for n in 2..=4u64 {
            let res = SmallResolution::periodic(n, CoeffRing::Integers);
            let alg = &res.algebra;
            let e = alg.group.identity();
            for r in 1..=4usize {
                for t in crate::bar_complex::nonidentity_tuples(&alg.group, r).unwrap() {
                    let mut key = vec![e.clone()];
                    key.extend(t.iter().cloned());
                    key.push(e.clone());
                    let x = mt_basis(alg, key, 1);
                    let lhs = {
                        let p = phi_on(&res, &x).unwrap();
                        let bd = res.boundary_element(r).unwrap();
                        mt_act(alg, &p, &bd, 0, 1)
                    };
                    let rhs = phi_on(&res, &bar_resolution_boundary(alg, &x)).unwrap();
                    assert_eq!(lhs, rhs, "n={n} t={t:?}");
                }
            }
        }
    }

    #[test]
    fn phi_psi_is_identity() {
        for n in 2..=5u64 {
            let res = SmallResolution::periodic(n, CoeffRing::Integers);
            for d in 0..=5 {
                let p = psi_element(&res, d).unwrap();
                let back = phi_on(&res, &p).unwrap();
                let one = mt_basis(&res.algebra, vec![res.algebra.group.identity(), res.algebra.group.identity()], 1);
                assert_eq!(back, one, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn z_comparison_values() {
        let res = SmallResolution::koszul_z(CoeffRing::Integers);
        let g = &res.algebra.group;
        for k in -3..=3i64 {
            if k == 0 {
                continue;
            }
            let v = phi_value(&res, &[g.gen_pow(0, k)]).unwrap();
            assert_eq!(v, res.algebra.gen_pow(0, k - 1, -k));
        }
    }
}
