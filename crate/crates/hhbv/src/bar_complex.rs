//! The normalized bar complex of A = R[G]: Hochschild chains (a1..an; a),
//! cochains as functions on tuples, cup and circle products, the
//! Gerstenhaber bracket, Connes' B, the cap action and the shuffle maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::group_ring::{GroupAlgebra, GroupDescriptor, GroupElement, GroupRingElement};

/// Basis chain (a1..an; a): the module slot is written last.
pub type BarKey = (Vec<GroupElement>, GroupElement);

/// Normalized Hochschild chain. Tuples containing the identity are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarChain {
    pub degree: usize,
    pub terms: BTreeMap<BarKey, Scalar>,
}

impl BarChain {
    pub fn zero(degree: usize) -> BarChain {
        BarChain { degree, terms: BTreeMap::new() }
    }

    pub fn basis(alg: &GroupAlgebra, tuple: Vec<GroupElement>, a: GroupElement) -> BarChain {
        let mut c = BarChain::zero(tuple.len());
        c.add_term(alg, tuple, a, &alg.ring.one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alg: &GroupAlgebra, tuple: Vec<GroupElement>, a: GroupElement, c: &Scalar) {
        if alg.ring.is_zero(c) || tuple.iter().any(|g| alg.group.is_identity(g)) {
            return;
        }
        debug_assert_eq!(tuple.len(), self.degree);
        let key = (tuple, a);
        let s = match self.terms.get(&key) {
            Some(v) => alg.ring.add(v, c),
            None => c.clone(),
        };
        if alg.ring.is_zero(&s) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    /// Adds c·(tuple; w) for a ring element w.
    pub fn add_value(&mut self, alg: &GroupAlgebra, tuple: &[GroupElement], w: &GroupRingElement, c: &Scalar) {
        if tuple.iter().any(|g| alg.group.is_identity(g)) {
            return;
        }
        for (g, d) in &w.terms {
            self.add_term(alg, tuple.to_vec(), g.clone(), &alg.ring.mul(c, d));
        }
    }

    pub fn add_chain(&mut self, alg: &GroupAlgebra, other: &BarChain, c: &Scalar) {
        for ((t, a), v) in &other.terms {
            self.add_term(alg, t.clone(), a.clone(), &alg.ring.mul(c, v));
        }
    }

    pub fn scaled(&self, alg: &GroupAlgebra, c: &Scalar) -> BarChain {
        let mut out = BarChain::zero(self.degree);
        out.add_chain(alg, self, c);
        out
    }
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Hochschild boundary b on normalized chains.
pub fn hochschild_boundary(alg: &GroupAlgebra, x: &BarChain) -> BarChain {
    let n = x.degree;
    let mut out = BarChain::zero(n.saturating_sub(1));
    if n == 0 {
        return out;
    }
    let grp = &alg.group;
    for ((t, a), c) in &x.terms {
        out.add_term(alg, t[1..].to_vec(), grp.mul(a, &t[0]), c);
        for i in 1..n {
            let mut u = t[..i - 1].to_vec();
            u.push(grp.mul(&t[i - 1], &t[i]));
            u.extend_from_slice(&t[i + 1..]);
            out.add_term(alg, u, a.clone(), &alg.ring.mul_i64(c, sign(i % 2 == 1)));
        }
        out.add_term(alg, t[..n - 1].to_vec(), grp.mul(&t[n - 1], a), &alg.ring.mul_i64(c, sign(n % 2 == 1)));
    }
    out
}

/// Connes' operator B: C_n → C_{n+1}.
pub fn connes_b(alg: &GroupAlgebra, x: &BarChain) -> BarChain {
    let n = x.degree;
    let mut out = BarChain::zero(n + 1);
    let e = alg.group.identity();
    for ((t, a), c) in &x.terms {
        if alg.group.is_identity(a) {
            continue;
        }
        let mut u = vec![a.clone()];
        u.extend_from_slice(t);
        out.add_term(alg, u, e.clone(), c);
        for i in 1..=n {
            let mut u = t[i - 1..].to_vec();
            u.push(a.clone());
            u.extend_from_slice(&t[..i - 1]);
            out.add_term(alg, u, e.clone(), &alg.ring.mul_i64(c, sign((i * n) % 2 == 1)));
        }
    }
    out
}

/// Value function of a cochain.
pub type CochainFn = Arc<dyn Fn(&[GroupElement]) -> GroupRingElement + Send + Sync>;

/// Normalized Hochschild cochain Ā^{⊗n} → A, evaluated lazily.
#[derive(Clone)]
pub struct BarCochain {
    pub degree: usize,
    pub f: CochainFn,
}

impl fmt::Debug for BarCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BarCochain(degree {})", self.degree)
    }
}

impl BarCochain {
    pub fn new<F>(degree: usize, f: F) -> BarCochain
    where
        F: Fn(&[GroupElement]) -> GroupRingElement + Send + Sync + 'static,
    {
        BarCochain { degree, f: Arc::new(f) }
    }

    /// Evaluates on a tuple; tuples containing the identity give zero.
    pub fn eval(&self, alg: &GroupAlgebra, t: &[GroupElement]) -> GroupRingElement {
        assert_eq!(t.len(), self.degree, "cochain of degree {} evaluated on {} entries", self.degree, t.len());
        if t.iter().any(|g| alg.group.is_identity(g)) {
            return alg.zero();
        }
        (self.f)(t)
    }

    pub fn zero(alg: &GroupAlgebra, degree: usize) -> BarCochain {
        let z = alg.zero();
        BarCochain::new(degree, move |_| z.clone())
    }

    /// The 0-cochain with value `a`.
    pub fn constant(a: GroupRingElement) -> BarCochain {
        BarCochain::new(0, move |_| a.clone())
    }

    pub fn linear_combination(alg: &GroupAlgebra, parts: Vec<(Scalar, BarCochain)>) -> BarCochain {
        let degree = parts.first().map_or(0, |p| p.1.degree);
        let alg = alg.clone();
        BarCochain::new(degree, move |t| {
            let mut out = alg.zero();
            for (c, f) in &parts {
                alg.add_scaled(&mut out, c, &f.eval(&alg, t));
            }
            out
        })
    }

    pub fn sub(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> BarCochain {
        BarCochain::linear_combination(alg, vec![(alg.ring.one(), f.clone()), (alg.ring.from_i64(-1), g.clone())])
    }

    /// Freezes the values on all tuples of non-identity elements (finite groups only).
    pub fn tabulate(&self, alg: &GroupAlgebra) -> Result<BarCochainTable> {
        let tuples = nonidentity_tuples(&alg.group, self.degree)?;
        let values: HashMap<Vec<GroupElement>, GroupRingElement> = tuples
            .into_par_iter()
            .map(|t| {
                let v = self.eval(alg, &t);
                (t, v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(BarCochainTable { degree: self.degree, values })
    }
}

/// Dense table of a cochain's non-zero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCochainTable {
    pub degree: usize,
    pub values: HashMap<Vec<GroupElement>, GroupRingElement>,
}

impl BarCochainTable {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_cochain(&self, alg: &GroupAlgebra) -> BarCochain {
        let values = Arc::new(self.values.clone());
        let z = alg.zero();
        BarCochain::new(self.degree, move |t| values.get(t).cloned().unwrap_or_else(|| z.clone()))
    }
}

/// All n-tuples of non-identity elements, lexicographically.
pub fn nonidentity_tuples(group: &GroupDescriptor, n: usize) -> Result<Vec<Vec<GroupElement>>> {
    let letters = group.nonidentity_elements()?;
    let mut out: Vec<Vec<GroupElement>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for t in &out {
            for g in &letters {
                let mut u = t.clone();
                u.push(g.clone());
                next.push(u);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Compares two cochains on every tuple (finite groups only).
pub fn cochains_equal(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> Result<bool> {
    if f.degree != g.degree {
        return Ok(false);
    }
    let tuples = nonidentity_tuples(&alg.group, f.degree)?;
    Ok(tuples.par_iter().all(|t| f.eval(alg, t) == g.eval(alg, t)))
}

/// Hochschild coboundary δf.
pub fn coboundary(alg: &GroupAlgebra, f: &BarCochain) -> BarCochain {
    let n = f.degree;
    let alg2 = alg.clone();
    let f = f.clone();
    BarCochain::new(n + 1, move |t| {
        let alg = &alg2;
        let grp = &alg.group;
        let mut out = alg.shift(&t[0], &f.eval(alg, &t[1..]));
        for i in 1..=n {
            let mut u = t[..i - 1].to_vec();
            u.push(grp.mul(&t[i - 1], &t[i]));
            u.extend_from_slice(&t[i + 1..]);
            let v = f.eval(alg, &u);
            alg.add_scaled(&mut out, &alg.ring.from_i64(sign(i % 2 == 1)), &v);
        }
        let last = alg.shift(&t[n], &f.eval(alg, &t[..n]));
        alg.add_scaled(&mut out, &alg.ring.from_i64(sign((n + 1) % 2 == 1)), &last);
        out
    })
}

/// (f ⌣ g)(a1..a_{p+q}) = f(a1..ap)·g(a_{p+1}..a_{p+q}).
pub fn cup(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> BarCochain {
    let (p, q) = (f.degree, g.degree);
    let alg2 = alg.clone();
    let (f, g) = (f.clone(), g.clone());
    BarCochain::new(p + q, move |t| {
        let a = f.eval(&alg2, &t[..p]);
        if a.is_zero() {
            return a;
        }
        alg2.mul(&a, &g.eval(&alg2, &t[p..]))
    })
}

/// Gerstenhaber circle product f∘g, of degree |f| + |g| − 1 (zero when |f| = 0).
pub fn circle(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> BarCochain {
    let (k, j) = (f.degree, g.degree);
    if k == 0 {
        return BarCochain::zero(alg, j.saturating_sub(1));
    }
    let alg2 = alg.clone();
    let (f, g) = (f.clone(), g.clone());
    BarCochain::new(k + j - 1, move |t| {
        let alg = &alg2;
        let mut out = alg.zero();
        for i in 1..=k {
            let s = sign(((j as i64 - 1) * (i as i64 - 1)).rem_euclid(2) == 1);
            let inner = g.eval(alg, &t[i - 1..i - 1 + j]);
            for (h, c) in &inner.terms {
                if alg.group.is_identity(h) {
                    continue;
                }
                let mut u = t[..i - 1].to_vec();
                u.push(h.clone());
                u.extend_from_slice(&t[i - 1 + j..]);
                alg.add_scaled(&mut out, &alg.ring.mul_i64(c, s), &f.eval(alg, &u));
            }
        }
        out
    })
}

/// {f, g} = f∘g − (−1)^{(|f|−1)(|g|−1)} g∘f.
pub fn bracket(alg: &GroupAlgebra, f: &BarCochain, g: &BarCochain) -> BarCochain {
    let a = circle(alg, f, g);
    let b = circle(alg, g, f);
    let odd = ((f.degree as i64 - 1) * (g.degree as i64 - 1)).rem_euclid(2) == 1;
    let c = if odd { alg.ring.one() } else { alg.ring.from_i64(-1) };
    let degree = (f.degree + g.degree).saturating_sub(1);
    let mut parts = vec![(alg.ring.one(), a), (c, b)];
    for p in &mut parts {
        p.1.degree = degree;
    }
    BarCochain::linear_combination(alg, parts)
}

/// Cap action (a1..an; a)·f = (−1)^{nm} (a_{m+1}..an; a·f(a1..am)), m = |f|.
pub fn action_bar(alg: &GroupAlgebra, x: &BarChain, f: &BarCochain) -> Result<BarChain> {
    let (n, m) = (x.degree, f.degree);
    if m > n {
        return Err(Error::DegreeUnderflow { chain: n, cochain: m });
    }
    let s = alg.ring.from_i64(sign((n * m) % 2 == 1));
    let mut out = BarChain::zero(n - m);
    for ((t, a), c) in &x.terms {
        let v = alg.shift(a, &f.eval(alg, &t[..m]));
        out.add_value(alg, &t[m..], &v, &alg.ring.mul(&s, c));
    }
    Ok(out)
}

/// (p, q)-shuffles: for each, the positions taken by the first block and the
/// sign of the permutation. The first-block positions run lexicographically.
pub fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(start: usize, total: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..=total - left {
            acc.push(i);
            rec(i + 1, total, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut sets = Vec::new();
    rec(0, p + q, p, &mut Vec::new(), &mut sets);
    sets.into_iter()
        .map(|pos| {
            // inversions: pairs (first-block letter i, second-block letter j) with pos_i > pos_j
            let mut inv = 0usize;
            for (i, &pi) in pos.iter().enumerate() {
                inv += pi - i;
            }
            (pos, sign(inv % 2 == 1))
        })
        .collect()
}

/// Element of C̄(A) ⊗ C̄(B): pairs of basis chains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorChain {
    pub terms: BTreeMap<(BarKey, BarKey), Scalar>,
}

impl TensorChain {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alg: &GroupAlgebra, key: (BarKey, BarKey), c: &Scalar) {
        if alg.ring.is_zero(c) {
            return;
        }
        let s = match self.terms.get(&key) {
            Some(v) => alg.ring.add(v, c),
            None => c.clone(),
        };
        if alg.ring.is_zero(&s) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn from_pair(alg: &GroupAlgebra, x: &BarChain, y: &BarChain) -> TensorChain {
        let mut out = TensorChain::default();
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                out.add_term(alg, (kx.clone(), ky.clone()), &alg.ring.mul(cx, cy));
            }
        }
        out
    }
}

/// Pair of algebras A, B with their product A⊗B = R[G_A × G_B].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPair {
    pub a: GroupAlgebra,
    pub b: GroupAlgebra,
    pub ab: GroupAlgebra,
}

impl TensorPair {
    pub fn new(a: GroupAlgebra, b: GroupAlgebra) -> Result<TensorPair> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch(a.ring.to_string(), b.ring.to_string()));
        }
        let ab = GroupAlgebra::new(a.group.product(&b.group), a.ring.clone());
        Ok(TensorPair { a, b, ab })
    }

    fn left_rank(&self) -> usize {
        self.a.group.rank()
    }

    fn join(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupDescriptor::join(x, y)
    }

    /// Shuffle map EZ̄ on a pair of basis chains.
    pub fn ez_basis(&self, x: &BarKey, y: &BarKey) -> BarChain {
        let (p, q) = (x.0.len(), y.0.len());
        let ea = self.a.group.identity();
        let eb = self.b.group.identity();
        let mut out = BarChain::zero(p + q);
        for (pos, s) in shuffles(p, q) {
            let mut word = vec![None; p + q];
            for (i, &pi) in pos.iter().enumerate() {
                word[pi] = Some(self.join(&x.0[i], &eb));
            }
            let mut j = 0;
            for slot in word.iter_mut() {
                if slot.is_none() {
                    *slot = Some(self.join(&ea, &y.0[j]));
                    j += 1;
                }
            }
            let word: Vec<GroupElement> = word.into_iter().map(|w| w.unwrap()).collect();
            out.add_term(&self.ab, word, self.join(&x.1, &y.1), &self.ab.ring.from_i64(s));
        }
        out
    }

    pub fn ez(&self, x: &TensorChain) -> BarChain {
        let degree = x.terms.keys().next().map_or(0, |(a, b)| a.0.len() + b.0.len());
        let mut out = BarChain::zero(degree);
        for ((kx, ky), c) in &x.terms {
            out.add_chain(&self.ab, &self.ez_basis(kx, ky), c);
        }
        out
    }

    /// Alexander–Whitney map AW̄ on normalized chains of A⊗B.
    pub fn aw(&self, x: &BarChain) -> TensorChain {
        let r = self.left_rank();
        let (ga, gb) = (&self.a.group, &self.b.group);
        let mut out = TensorChain::default();
        let n = x.degree;
        for ((t, m), c) in &x.terms {
            let (ma, mb) = GroupDescriptor::split(m, r);
            let split: Vec<(GroupElement, GroupElement)> = t.iter().map(|g| GroupDescriptor::split(g, r)).collect();
            for k in 0..=n {
                let left: Vec<GroupElement> = split[k..].iter().map(|p| p.0.clone()).collect();
                let right: Vec<GroupElement> = split[..k].iter().map(|p| p.1.clone()).collect();
                if left.iter().any(|g| ga.is_identity(g)) || right.iter().any(|g| gb.is_identity(g)) {
                    continue;
                }
                let la = split[..k].iter().fold(ma.clone(), |acc, p| ga.mul(&acc, &p.0));
                let rb = split[k..].iter().fold(mb.clone(), |acc, p| gb.mul(&acc, &p.1));
                let s = sign((k * (n - k)) % 2 == 1);
                out.add_term(&self.ab, ((left, la), (right, rb)), &self.ab.ring.mul_i64(c, s));
            }
        }
        out
    }

    /// (B⊗id + (−1)^{|left|} id⊗B) on C̄(A)⊗C̄(B).
    pub fn tensor_connes(&self, x: &TensorChain) -> TensorChain {
        let mut out = TensorChain::default();
        for ((kx, ky), c) in &x.terms {
            let bx = connes_b(&self.a, &BarChain { degree: kx.0.len(), terms: BTreeMap::from([(kx.clone(), self.a.ring.one())]) });
            for (k, v) in &bx.terms {
                out.add_term(&self.ab, (k.clone(), ky.clone()), &self.ab.ring.mul(c, v));
            }
            let by = connes_b(&self.b, &BarChain { degree: ky.0.len(), terms: BTreeMap::from([(ky.clone(), self.b.ring.one())]) });
            let s = sign(kx.0.len() % 2 == 1);
            for (k, v) in &by.terms {
                out.add_term(&self.ab, (kx.clone(), k.clone()), &self.ab.ring.mul_i64(&self.ab.ring.mul(c, v), s));
            }
        }
        out
    }

    /// Every pair of basis chains of total degree `d` (finite groups only).
    pub fn basis_pairs(&self, d: usize) -> Result<Vec<(BarKey, BarKey)>> {
        let ea = self.a.group.elements()?;
        let eb = self.b.group.elements()?;
        let mut out = Vec::new();
        for p in 0..=d {
            let ta = nonidentity_tuples(&self.a.group, p)?;
            let tb = nonidentity_tuples(&self.b.group, d - p)?;
            for x in &ta {
                for y in &tb {
                    for ma in &ea {
                        for mb in &eb {
                            out.push(((x.clone(), ma.clone()), (y.clone(), mb.clone())));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;

    fn z3() -> GroupAlgebra {
        GroupAlgebra::cyclic(3, CoeffRing::Integers)
    }

    #[test]
    fn boundary_squares_to_zero() {
        let a = z3();
        let s = a.group.gen_pow(0, 1);
        let s2 = a.group.gen_pow(0, 2);
        let x = BarChain::basis(&a, vec![s.clone(), s2.clone(), s.clone()], s2.clone());
        let bx = hochschild_boundary(&a, &x);
        assert!(hochschild_boundary(&a, &bx).is_zero());
    }

    #[test]
    fn connes_degree_one() {
        let a = z3();
        let s = a.group.gen_pow(0, 1);
        let s2 = a.group.gen_pow(0, 2);
        let x = BarChain::basis(&a, vec![s.clone()], s2.clone());
        let bx = connes_b(&a, &x);
        let mut expect = BarChain::zero(2);
        expect.add_term(&a, vec![s2.clone(), s.clone()], a.group.identity(), &a.ring.one());
        expect.add_term(&a, vec![s.clone(), s2.clone()], a.group.identity(), &a.ring.from_i64(-1));
        assert_eq!(bx, expect);
    }

    #[test]
    fn shuffle_signs() {
        let s: Vec<i64> = shuffles(2, 1).into_iter().map(|x| x.1).collect();
        assert_eq!(s, vec![1, -1, 1]);
        assert_eq!(shuffles(2, 2).len(), 6);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let a = z3();
        let alg = a.clone();
        let f = BarCochain::new(1, move |t| alg.gen_pow(0, t[0].0[0] * 2, t[0].0[0]));
        let d2 = coboundary(&a, &coboundary(&a, &f));
        assert!(d2.tabulate(&a).unwrap().is_zero());
    }

    #[test]
    fn aw_after_ez_is_identity() {
        let tp = TensorPair::new(GroupAlgebra::cyclic(2, CoeffRing::Integers), z3()).unwrap();
        for (x, y) in tp.basis_pairs(2).unwrap() {
            let mut t = TensorChain::default();
            t.add_term(&tp.ab, (x, y), &tp.ab.ring.one());
            assert_eq!(tp.aw(&tp.ez(&t)), t);
        }
    }
}
