//! BV operators on Hochschild cohomology: the dual-basis Δ for finite group
//! rings, the transferred Δ_a = ρ_a⁻¹ B ρ_a for R[Z], the factorwise tensor
//! formula, and class-level products, brackets and identities on small cochains.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bar_complex::{self, action_bar, connes_b, shuffles, BarCochain};
use crate::chain_complex::{FreeComplex, ImageTester};
use crate::coeff::{coeff_invert, CoeffRing, Scalar};
use crate::comparison::{phi_chain, phi_star, phi_value, psi_chain, psi_star, psi_terms};
use crate::error::{Error, Result};
use crate::group_ring::{Factor, GroupAlgebra, GroupDescriptor, GroupElement, GroupRingElement};
use crate::small_resolutions::{diagonal, embed, mt_collapse, MultiDegree, ResolutionKind, SmallResolution, SmallValue};

/// Dual-basis BV operator on normalized bar cochains of a finite group ring:
/// Δ(f)(a1..am) = Σ_g Σ_i (−1)^{im} ε(f(a_i..a_m, g, a_1..a_{i−1})) g⁻¹.
pub fn delta_dual_basis(alg: &GroupAlgebra, f: &BarCochain) -> Result<BarCochain> {
    let pairs = alg.dual_basis()?;
    if f.degree == 0 {
        return Ok(BarCochain::zero(alg, 0));
    }
    let m = f.degree - 1;
    let alg2 = alg.clone();
    let f = f.clone();
    Ok(BarCochain::new(m, move |t| {
        let alg = &alg2;
        let mut coeffs: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
        for (g, dual) in &pairs {
            if alg.group.is_identity(g) {
                continue;
            }
            let mut total = alg.ring.zero();
            for i in 0..=m {
                let mut u = Vec::with_capacity(m + 1);
                if i == 0 {
                    u.push(g.clone());
                    u.extend_from_slice(t);
                } else {
                    u.extend_from_slice(&t[i - 1..]);
                    u.push(g.clone());
                    u.extend_from_slice(&t[..i - 1]);
                }
                let e = alg.augmentation_scalar(&f.eval(alg, &u));
                let e = if (i * m) % 2 == 1 { alg.ring.neg(&e) } else { e };
                total = alg.ring.add(&total, &e);
            }
            if !alg.ring.is_zero(&total) {
                coeffs.insert(dual.clone(), total);
            }
        }
        let mut out = alg.zero();
        for (g, c) in coeffs {
            alg.add_term(&mut out, g, &c);
        }
        out
    }))
}

impl SmallValue {
    pub fn zero(degree: usize) -> SmallValue {
        SmallValue { degree, values: BTreeMap::new() }
    }

    pub fn single(md: MultiDegree, value: GroupRingElement) -> SmallValue {
        let degree = md.iter().sum();
        let mut values = BTreeMap::new();
        if !value.is_zero() {
            values.insert(md, value);
        }
        SmallValue { degree, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add_at(&mut self, alg: &GroupAlgebra, md: MultiDegree, v: &GroupRingElement, c: &Scalar) {
        let e = self.values.entry(md.clone()).or_insert_with(|| alg.zero());
        alg.add_scaled(e, c, v);
        if e.is_zero() {
            self.values.remove(&md);
        }
    }

    /// self + c·other; a zero summand takes the degree of the other.
    pub fn plus(&self, alg: &GroupAlgebra, other: &SmallValue, c: &Scalar) -> SmallValue {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (md, v) in &other.values {
            out.add_at(alg, md.clone(), v, c);
        }
        out
    }
}

/// Context for BV computations on one small resolution; `z_unit`·t^`z_exp`
/// is the fundamental class used for every free factor.
#[derive(Clone, Debug)]
pub struct BvContext {
    pub res: SmallResolution,
    pub z_unit: Scalar,
    pub z_exp: i64,
}

impl BvContext {
    /// Free factors use a = t⁻¹.
    pub fn new(res: SmallResolution) -> BvContext {
        let u = res.algebra.ring.one();
        BvContext { res, z_unit: u, z_exp: -1 }
    }

    pub fn with_class(res: SmallResolution, u: Scalar, k: i64) -> Result<BvContext> {
        if !res.algebra.ring.is_unit(&u) {
            return Err(Error::NonUnit(u.to_string(), res.algebra.ring.to_string()));
        }
        Ok(BvContext { res, z_unit: u, z_exp: k })
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.res.algebra
    }

    /// Δ on a single factor, applied to a small cochain value in `degree`.
    pub fn factor_delta(&self, factor: &SmallResolution, degree: usize, g: &GroupRingElement) -> Result<GroupRingElement> {
        match factor.kind {
            ResolutionKind::Periodic(_) => {
                if degree == 0 {
                    return Ok(factor.algebra.zero());
                }
                let f = phi_star(factor, degree, g)?;
                let d = delta_dual_basis(&factor.algebra, &f)?;
                psi_star(factor, &d)
            }
            ResolutionKind::KoszulZ => delta_transferred(factor, &self.z_unit, self.z_exp, degree, g),
            ResolutionKind::Tensor(_) => Err(Error::Unsupported("factor_delta needs a single factor".into())),
        }
    }

    /// Δ = Σ_f (−1)^{degrees before f} id⊗…⊗Δ_f⊗…⊗id on small cochains.
    pub fn delta(&self, v: &SmallValue) -> Result<SmallValue> {
        let alg = self.algebra();
        let mut out = SmallValue::zero(v.degree.saturating_sub(1));
        let parts = self.res.factors();
        for (md, val) in &v.values {
            let mut before = 0usize;
            let mut offset = 0usize;
            for (f, part) in parts.iter().enumerate() {
                let rank = part.algebra.group.rank();
                if md[f] > 0 {
                    let sign = if before.is_multiple_of(2) { 1 } else { -1 };
                    let mut target = md.clone();
                    target[f] -= 1;
                    for (g, c) in &val.terms {
                        let gf = GroupElement::from_slice(&g.0[offset..offset + rank]);
                        let d = self.factor_delta(part, md[f], &part.algebra.basis(&gf))?;
                        let mut img = alg.zero();
                        for (h, dc) in &d.terms {
                            let mut k = g.clone();
                            k.0[offset..offset + rank].copy_from_slice(&h.0);
                            alg.add_term(&mut img, k, &alg.ring.mul(dc, c));
                        }
                        out.add_at(alg, target.clone(), &img, &alg.ring.from_i64(sign));
                    }
                }
                before += md[f];
                offset += rank;
            }
        }
        Ok(out)
    }

    /// Δ computed on the bar complex of the whole algebra: compress(Δ_bar(lift v)).
    pub fn delta_direct(&self, v: &SmallValue) -> Result<SmallValue> {
        if v.degree == 0 {
            return Ok(SmallValue::zero(0));
        }
        let f = lift(&self.res, v)?;
        let d = delta_dual_basis(self.algebra(), &f)?;
        compress(&self.res, &d)
    }

    pub fn cup(&self, u: &SmallValue, v: &SmallValue) -> Result<SmallValue> {
        cup_small(&self.res, u, v)
    }

    /// Gerstenhaber bracket through bar cochains: compress({lift u, lift v}).
    pub fn bracket_bar(&self, u: &SmallValue, v: &SmallValue) -> Result<SmallValue> {
        let a = lift(&self.res, u)?;
        let b = lift(&self.res, v)?;
        let br = bar_complex::bracket(self.algebra(), &a, &b);
        compress(&self.res, &br)
    }
}

/// Small-cochain cup product through the bar complex.
pub fn cup_small(res: &SmallResolution, u: &SmallValue, v: &SmallValue) -> Result<SmallValue> {
    let a = lift(res, u)?;
    let b = lift(res, v)?;
    compress(res, &bar_complex::cup(&res.algebra, &a, &b))
}

fn two_factors(res: &SmallResolution) -> Result<Option<(&SmallResolution, &SmallResolution)>> {
    match &res.kind {
        ResolutionKind::Tensor(p) if p.len() == 2 => Ok(Some((&p[0], &p[1]))),
        ResolutionKind::Tensor(p) => Err(Error::Unsupported(format!("bar transport over {} tensor factors", p.len()))),
        _ => Ok(None),
    }
}

fn embed_elem(target: &GroupAlgebra, offset: usize, rank: usize, a: &GroupRingElement) -> GroupRingElement {
    let mut out = target.zero();
    for (g, c) in &a.terms {
        target.add_term(&mut out, embed(&target.group, offset, rank, g), c);
    }
    out
}

/// Bar cochain representing a small cochain (φ̄* on one factor; the
/// Alexander–Whitney dual of φ̄*⊗φ̄* on two).
pub fn lift(res: &SmallResolution, v: &SmallValue) -> Result<BarCochain> {
    let alg = res.algebra.clone();
    let Some((ra, rb)) = two_factors(res)? else {
        let parts: Vec<(Scalar, BarCochain)> = match v.values.iter().next() {
            Some((md, a)) => vec![(alg.ring.one(), phi_star(res, md[0], a)?)],
            None => vec![],
        };
        if parts.is_empty() {
            return Ok(BarCochain::zero(&alg, v.degree));
        }
        return Ok(BarCochain::linear_combination(&alg, parts));
    };
    let (ra, rb) = (ra.clone(), rb.clone());
    let r = v.degree;
    let values = v.values.clone();
    let la = ra.algebra.group.rank();
    let lb = rb.algebra.group.rank();
    Ok(BarCochain::new(r, move |t| {
        let mut out = alg.zero();
        let split: Vec<(GroupElement, GroupElement)> = t.iter().map(|g| GroupDescriptor::split(g, la)).collect();
        for tt in 0..=r {
            let md = vec![r - tt, tt];
            let Some(val) = values.get(&md) else { continue };
            let a_tuple: Vec<GroupElement> = split[tt..].iter().map(|p| p.0.clone()).collect();
            let b_tuple: Vec<GroupElement> = split[..tt].iter().map(|p| p.1.clone()).collect();
            if a_tuple.iter().any(|g| ra.algebra.group.is_identity(g)) || b_tuple.iter().any(|g| rb.algebra.group.is_identity(g)) {
                continue;
            }
            let pa = phi_value(&ra, &a_tuple).expect("single factor");
            if pa.is_zero() {
                continue;
            }
            let pb = phi_value(&rb, &b_tuple).expect("single factor");
            if pb.is_zero() {
                continue;
            }
            let pre = split[..tt].iter().fold(ra.algebra.group.identity(), |acc, p| ra.algebra.group.mul(&acc, &p.0));
            let suf = split[tt..].iter().fold(rb.algebra.group.identity(), |acc, p| rb.algebra.group.mul(&acc, &p.1));
            let ea = embed_elem(&alg, 0, la, &ra.algebra.shift(&pre, &pa));
            let eb = embed_elem(&alg, la, lb, &rb.algebra.shift(&suf, &pb));
            let term = alg.mul(val, &alg.mul(&ea, &eb));
            let s = if (tt * (r - tt)).is_multiple_of(2) { alg.ring.one() } else { alg.ring.from_i64(-1) };
            alg.add_scaled(&mut out, &s, &term);
        }
        out
    }))
}

/// Small cochain of a bar cochain: ψ̄* on one factor; evaluation on
/// EZ̄(ψ_p ⊗ ψ_q) on two.
pub fn compress(res: &SmallResolution, f: &BarCochain) -> Result<SmallValue> {
    let alg = &res.algebra;
    let d = f.degree;
    let Some((ra, rb)) = two_factors(res)? else {
        return Ok(SmallValue::single(vec![d], psi_star(res, f)?));
    };
    let la = ra.algebra.group.rank();
    let lb = rb.algebra.group.rank();
    let mut out = SmallValue::zero(d);
    for md in res.summands(d) {
        let (p, q) = (md[0], md[1]);
        let ta = psi_terms(ra, p)?;
        let tb = psi_terms(rb, q)?;
        let sh = shuffles(p, q);
        let mut acc = alg.zero();
        for a in &ta {
            for b in &tb {
                let w = GroupDescriptor::join(&a.w, &b.w);
                for (pos, s) in &sh {
                    let mut word: Vec<Option<GroupElement>> = vec![None; p + q];
                    for (i, &pi) in pos.iter().enumerate() {
                        word[pi] = Some(embed(&alg.group, 0, la, &a.tuple[i]));
                    }
                    let mut j = 0;
                    for slot in word.iter_mut() {
                        if slot.is_none() {
                            *slot = Some(embed(&alg.group, la, lb, &b.tuple[j]));
                            j += 1;
                        }
                    }
                    let word: Vec<GroupElement> = word.into_iter().map(|x| x.unwrap()).collect();
                    let val = f.eval(alg, &word);
                    alg.add_scaled(&mut acc, &alg.ring.from_i64(a.coeff * b.coeff * s), &alg.shift(&w, &val));
                }
            }
        }
        out.add_at(alg, md, &acc, &alg.ring.one());
    }
    Ok(out)
}

fn z_parts(res: &SmallResolution) -> Result<()> {
    match res.kind {
        ResolutionKind::KoszulZ => Ok(()),
        _ => Err(Error::Unsupported("the transferred operator is defined for R[Z]".into())),
    }
}

/// ρ_a(f) = a·f on the bar level, for a = u t^k in HH_1 and f a small cochain
/// value in degree `degree` ≤ 1; returns the small chain value in degree 1 − degree.
pub fn rho(res: &SmallResolution, u: &Scalar, k: i64, degree: usize, f: &GroupRingElement) -> Result<GroupRingElement> {
    z_parts(res)?;
    let alg = &res.algebra;
    if degree > 1 {
        return Ok(alg.zero());
    }
    let a = alg.monomial(alg.group.gen_pow(0, k), u.clone());
    let x = psi_chain(res, 1, &a)?;
    let y = action_bar(alg, &x, &phi_star(res, degree, f)?)?;
    phi_chain(res, &y)
}

/// Δ_a = ρ_a⁻¹ B ρ_a on a small cochain value of R[Z], a = u t^k.
pub fn delta_transferred(res: &SmallResolution, u: &Scalar, k: i64, degree: usize, f: &GroupRingElement) -> Result<GroupRingElement> {
    z_parts(res)?;
    let alg = &res.algebra;
    if !alg.ring.is_unit(u) {
        return Err(Error::NonUnit(u.to_string(), alg.ring.to_string()));
    }
    if degree == 0 || degree > 1 {
        // B lands in degree 2 − degree ≥ 2 where φ̄ vanishes, or there is nothing to transfer
        if degree == 0 {
            let r = rho(res, u, k, 0, f)?;
            let b = connes_b(alg, &psi_chain(res, 1, &r)?);
            debug_assert!(phi_chain(res, &b)?.is_zero());
        }
        return Ok(alg.zero());
    }
    let r = rho(res, u, k, 1, f)?;
    let b = connes_b(alg, &psi_chain(res, 0, &r)?);
    let s = phi_chain(res, &b)?;
    // ρ_a on degree 0 is multiplication by ρ_a(1), a unit multiple of a group element
    let m = rho(res, u, k, 0, &alg.one())?;
    if m.terms.len() != 1 {
        return Err(Error::Hypothesis("ρ_a(1) is not a monomial".into()));
    }
    let (g, c) = m.terms.iter().next().unwrap();
    let inv = coeff_invert(&alg.ring.coefficient(c.clone()))?;
    let m_inv = alg.monomial(alg.group.inv(g), inv.value);
    Ok(alg.mul(&s, &m_inv))
}

/// Cap action of a small cochain on a small chain through the diagonal:
/// (−1)^{nm} Σ x·f·μ(Δ components of left degree m).
pub fn action_small(res: &SmallResolution, x: &SmallValue, f: &SmallValue) -> Result<SmallValue> {
    let (n, m) = (x.degree, f.degree);
    if m > n {
        return Err(Error::DegreeUnderflow { chain: n, cochain: m });
    }
    let alg = &res.algebra;
    let sign = alg.ring.from_i64(if (n * m) % 2 == 0 { 1 } else { -1 });
    let mut out = SmallValue::zero(n - m);
    for (md, xv) in &x.values {
        for ((l, r), val) in diagonal(res, md)? {
            let Some(fv) = f.values.get(&l) else { continue };
            let prod = alg.mul(&alg.mul(xv, fv), &mt_collapse(alg, &val));
            out.add_at(alg, r, &prod, &sign);
        }
    }
    Ok(out)
}

/// The action of a small cochain on a small chain computed on the bar complex
/// of a single factor: φ̄(ψ̄x · φ̄*f).
pub fn action_via_bar(res: &SmallResolution, x: &SmallValue, f: &SmallValue) -> Result<SmallValue> {
    let alg = &res.algebra;
    let xv = x.values.get(&vec![x.degree]).cloned().unwrap_or_else(|| alg.zero());
    let fv = f.values.get(&vec![f.degree]).cloned().unwrap_or_else(|| alg.zero());
    let y = action_bar(alg, &psi_chain(res, x.degree, &xv)?, &phi_star(res, f.degree, &fv)?)?;
    Ok(SmallValue::single(vec![x.degree - f.degree], phi_chain(res, &y)?))
}

fn scalars_to_ints(ring: &CoeffRing, v: &[Scalar]) -> Vec<BigInt> {
    match ring {
        CoeffRing::Rationals => {
            let mut l = BigInt::one();
            for s in v {
                if let Scalar::Rat(q) = s {
                    l = l.lcm(q.denom());
                }
            }
            v.iter()
                .map(|s| match s {
                    Scalar::Rat(q) => q.numer() * (&l / q.denom()),
                    Scalar::Int(i) => i * &l,
                })
                .collect()
        }
        r => v.iter().map(|s| r.to_bigint(s).unwrap_or_else(BigInt::zero)).collect(),
    }
}

/// Decides equality of cohomology classes of small cochains.
#[derive(Clone, Debug)]
pub struct ClassSpace {
    pub res: SmallResolution,
    pub max_degree: usize,
    complex: Option<FreeComplex>,
    testers: Vec<ImageTester>,
}

impl ClassSpace {
    /// Finite groups use the small cochain complex up to `max_degree`; infinite
    /// ones are accepted when every small differential vanishes.
    pub fn new(res: &SmallResolution, max_degree: usize) -> Result<ClassSpace> {
        if res.algebra.group.is_finite() {
            let c = res.small_cochain_complex(max_degree + 1)?;
            let testers = (0..=max_degree as i64).map(|k| ImageTester::new(&c.ring, c.incoming(k), c.rank(k))).collect();
            return Ok(ClassSpace { res: res.clone(), max_degree, complex: Some(c), testers });
        }
        let ring = &res.algebra.ring;
        for f in res.factors() {
            if let ResolutionKind::Periodic(n) = f.kind {
                if !ring.is_zero(&ring.from_i64(n as i64)) {
                    return Err(Error::Unsupported(format!("class comparison for {} over {}", res.algebra.group, ring)));
                }
            }
        }
        Ok(ClassSpace { res: res.clone(), max_degree, complex: None, testers: vec![] })
    }

    pub fn complex(&self) -> Option<&FreeComplex> {
        self.complex.as_ref()
    }

    pub fn is_coboundary(&self, v: &SmallValue) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        if self.complex.is_none() {
            return Ok(false);
        }
        if v.degree > self.max_degree {
            return Err(Error::Hypothesis(format!("degree {} above the bound {}", v.degree, self.max_degree)));
        }
        let coords = self.res.coordinates(v)?;
        let ints = scalars_to_ints(&self.res.algebra.ring, &coords);
        Ok(self.testers[v.degree].contains(&ints))
    }

    pub fn same_class(&self, u: &SmallValue, v: &SmallValue) -> Result<bool> {
        let alg = &self.res.algebra;
        if !u.is_zero() && !v.is_zero() && u.degree != v.degree {
            return Ok(false);
        }
        self.is_coboundary(&u.plus(alg, v, &alg.ring.from_i64(-1)))
    }

    /// Whether the small cochain is a cocycle.
    pub fn is_cocycle(&self, v: &SmallValue) -> bool {
        self.res.cochain_differential(v).is_zero()
    }
}

/// Graded algebra operations needed for the BV identities.
pub trait BvOps {
    type Elem: Clone;
    fn degree(&self, a: &Self::Elem) -> usize;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn delta(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// a + c·b
    fn combine(&self, a: &Self::Elem, b: &Self::Elem, c: i64) -> Self::Elem;
    fn zero(&self, degree: usize) -> Self::Elem;
    /// Zero in cohomology.
    fn vanishes(&self, a: &Self::Elem) -> Result<bool>;
}

fn pm(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// {a, b} = −(−1)^{|a|}(Δ(ab) − Δ(a)b − (−1)^{|a|} aΔ(b)).
pub fn bracket_from_delta<O: BvOps>(ops: &O, a: &O::Elem, b: &O::Elem) -> Result<O::Elem> {
    let da = ops.degree(a);
    let ab = ops.mul(a, b)?;
    let t1 = ops.delta(&ab)?;
    let t2 = ops.mul(&ops.delta(a)?, b)?;
    let t3 = ops.mul(a, &ops.delta(b)?)?;
    let inner = ops.combine(&ops.combine(&t1, &t2, -1), &t3, -pm(da % 2 == 1));
    Ok(ops.combine(&ops.zero(ops.degree(&inner)), &inner, -pm(da % 2 == 1)))
}

/// Δ(abc) minus the seven-term expansion; the identity holds iff it vanishes.
pub fn seven_term_residual<O: BvOps>(ops: &O, a: &O::Elem, b: &O::Elem, c: &O::Elem) -> Result<O::Elem> {
    let (da, db) = (ops.degree(a), ops.degree(b));
    let ab = ops.mul(a, b)?;
    let bc = ops.mul(b, c)?;
    let ac = ops.mul(a, c)?;
    let abc = ops.mul(&ab, c)?;
    let lhs = ops.delta(&abc)?;
    let terms = [
        (ops.mul(&ops.delta(&ab)?, c)?, 1),
        (ops.mul(a, &ops.delta(&bc)?)?, pm(da % 2 == 1)),
        (ops.mul(b, &ops.delta(&ac)?)?, pm(((da + 1) * db) % 2 == 1)),
        (ops.mul(&ops.mul(&ops.delta(a)?, b)?, c)?, -1),
        (ops.mul(&ops.mul(a, &ops.delta(b)?)?, c)?, -pm(da % 2 == 1)),
        (ops.mul(&ab, &ops.delta(c)?)?, -pm((da + db) % 2 == 1)),
    ];
    let mut r = lhs;
    for (t, s) in terms.iter() {
        r = ops.combine(&r, t, -s);
    }
    Ok(r)
}

pub fn seven_term_check<O: BvOps>(ops: &O, a: &O::Elem, b: &O::Elem, c: &O::Elem) -> Result<(bool, O::Elem)> {
    let r = seven_term_residual(ops, a, b, c)?;
    Ok((ops.vanishes(&r)?, r))
}

/// Engine operations on small cochains: cup through the bar complex, Δ by the
/// factorwise formula, vanishing decided in cohomology.
pub struct EngineOps<'a> {
    pub ctx: &'a BvContext,
    pub classes: &'a ClassSpace,
}

impl BvOps for EngineOps<'_> {
    type Elem = SmallValue;

    fn degree(&self, a: &SmallValue) -> usize {
        a.degree
    }

    fn mul(&self, a: &SmallValue, b: &SmallValue) -> Result<SmallValue> {
        if a.is_zero() || b.is_zero() {
            return Ok(SmallValue::zero(a.degree + b.degree));
        }
        self.ctx.cup(a, b)
    }

    fn delta(&self, a: &SmallValue) -> Result<SmallValue> {
        self.ctx.delta(a)
    }

    fn combine(&self, a: &SmallValue, b: &SmallValue, c: i64) -> SmallValue {
        let alg = self.ctx.algebra();
        a.plus(alg, b, &alg.ring.from_i64(c))
    }

    fn zero(&self, degree: usize) -> SmallValue {
        SmallValue::zero(degree)
    }

    fn vanishes(&self, a: &SmallValue) -> Result<bool> {
        self.classes.is_coboundary(a)
    }
}

/// The cyclic factor orders of a resolution, in order.
pub fn cyclic_orders(res: &SmallResolution) -> Vec<Option<u64>> {
    res.algebra
        .group
        .factors
        .iter()
        .map(|f| match f {
            Factor::Cyclic(n) => Some(*n),
            Factor::Free => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(res: &SmallResolution, d: usize, e: i64, c: i64) -> SmallValue {
        SmallValue::single(vec![d], res.algebra.gen_pow(0, e, c))
    }

    #[test]
    fn cyclic_delta_of_y() {
        for (p, n) in [(2u64, 2u64), (3, 3), (2, 4), (5, 5)] {
            let res = SmallResolution::periodic(n, CoeffRing::modular(p));
            let ctx = BvContext::new(res.clone());
            let d = ctx.delta(&val(&res, 1, 0, 1)).unwrap();
            assert_eq!(d, val(&res, 0, n as i64 - 1, -1), "p={p} n={n}");
        }
    }

    #[test]
    fn odd_cup_compresses() {
        let res = SmallResolution::periodic(5, CoeffRing::Integers);
        let y = val(&res, 1, 0, 1);
        assert_eq!(cup_small(&res, &y, &y).unwrap(), val(&res, 2, 3, -10));
    }

    #[test]
    fn transferred_delta_values() {
        let res = SmallResolution::koszul_z(CoeffRing::Integers);
        for u in [1i64, -1] {
            for k in -2..=2i64 {
                for i in -3..=3i64 {
                    let us = res.algebra.ring.from_i64(u);
                    let d = delta_transferred(&res, &us, k, 1, &res.algebra.gen_pow(0, i, 1)).unwrap();
                    assert_eq!(d, res.algebra.gen_pow(0, i - 1, i + k));
                    assert!(delta_transferred(&res, &us, k, 0, &res.algebra.gen_pow(0, i, 1)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn lift_compress_roundtrip() {
        let a = SmallResolution::periodic(2, CoeffRing::Integers);
        let b = SmallResolution::periodic(3, CoeffRing::Integers);
        let t = SmallResolution::tensor(vec![a, b]).unwrap();
        for d in 0..=3 {
            for md in t.summands(d) {
                let g = t.algebra.group.element(&[1, 2]);
                let v = SmallValue::single(md, t.algebra.basis(&g));
                assert_eq!(compress(&t, &lift(&t, &v).unwrap()).unwrap(), v);
            }
        }
    }

    #[test]
    fn lift_is_a_cochain_map() {
        let a = SmallResolution::periodic(2, CoeffRing::Integers);
        let b = SmallResolution::periodic(3, CoeffRing::Integers);
        let t = SmallResolution::tensor(vec![a, b]).unwrap();
        for d in 0..=2 {
            for md in t.summands(d) {
                let v = SmallValue::single(md, t.algebra.basis(&t.algebra.group.element(&[1, 1])));
                let lhs = bar_complex::coboundary(&t.algebra, &lift(&t, &v).unwrap());
                let rhs = lift(&t, &t.cochain_differential(&v)).unwrap();
                assert!(bar_complex::cochains_equal(&t.algebra, &lhs, &rhs).unwrap());
            }
        }
    }

    #[test]
    fn small_action_matches_bar() {
        let res = SmallResolution::periodic(3, CoeffRing::Integers);
        for n in 0..=3usize {
            for m in 0..=n {
                let x = val(&res, n, 1, 1);
                let f = val(&res, m, 2, 1);
                assert_eq!(action_small(&res, &x, &f).unwrap(), action_via_bar(&res, &x, &f).unwrap(), "n={n} m={m}");
            }
        }
    }
}
