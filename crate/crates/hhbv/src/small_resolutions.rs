//! Small A^e-resolutions: the 2-periodic one for R[Z/n], the two-term one for
//! R[Z], and tensor products of these, with homotopies and diagonals.

use std::collections::BTreeMap;

use crate::chain_complex::{Direction, FreeComplex, IntMatrix};
use crate::coeff::{CoeffRing, Scalar};
use crate::comparison;
use crate::error::{Error, Result};
use crate::group_ring::{Factor, GroupAlgebra, GroupDescriptor, GroupElement, GroupRingElement};

/// Element of A^{⊗k}, stored as a map from k-tuples of group elements to scalars.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiTensor {
    pub terms: BTreeMap<Vec<GroupElement>, Scalar>,
}

impl MultiTensor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn mt_add_term(alg: &GroupAlgebra, acc: &mut MultiTensor, key: Vec<GroupElement>, c: &Scalar) {
    if alg.ring.is_zero(c) {
        return;
    }
    match acc.terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = alg.ring.add(o.get(), c);
            if alg.ring.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub fn mt_add(alg: &GroupAlgebra, acc: &mut MultiTensor, x: &MultiTensor, c: &Scalar) {
    for (k, v) in &x.terms {
        mt_add_term(alg, acc, k.clone(), &alg.ring.mul(c, v));
    }
}

pub fn mt_basis(alg: &GroupAlgebra, key: Vec<GroupElement>, c: i64) -> MultiTensor {
    let mut t = MultiTensor::default();
    mt_add_term(alg, &mut t, key, &alg.ring.from_i64(c));
    t
}

/// Multiplies slot `i` by α and slot `j` by β for every term α⊗β of `d`.
pub fn mt_act(alg: &GroupAlgebra, x: &MultiTensor, d: &MultiTensor, i: usize, j: usize) -> MultiTensor {
    let mut out = MultiTensor::default();
    for (k, c) in &x.terms {
        for (dk, dc) in &d.terms {
            let mut key = k.clone();
            key[i] = alg.group.mul(&key[i], &dk[0]);
            key[j] = alg.group.mul(&key[j], &dk[1]);
            mt_add_term(alg, &mut out, key, &alg.ring.mul(c, dc));
        }
    }
    out
}

/// Multiplies all slots together.
pub fn mt_collapse(alg: &GroupAlgebra, x: &MultiTensor) -> GroupRingElement {
    let mut out = alg.zero();
    for (k, c) in &x.terms {
        let g = k.iter().fold(alg.group.identity(), |acc, h| alg.group.mul(&acc, h));
        alg.add_term(&mut out, g, c);
    }
    out
}

/// Which small resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    Periodic(u64),
    KoszulZ,
    Tensor(Vec<SmallResolution>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallResolution {
    pub algebra: GroupAlgebra,
    pub kind: ResolutionKind,
}

/// Multi-degree of a summand: one entry per tensor factor (length 1 otherwise).
pub type MultiDegree = Vec<usize>;

/// A chain or cochain of a small resolution after the identifications with A:
/// one value of A per summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallValue {
    pub degree: usize,
    pub values: BTreeMap<MultiDegree, GroupRingElement>,
}

impl SmallResolution {
    pub fn periodic(n: u64, ring: CoeffRing) -> SmallResolution {
        SmallResolution { algebra: GroupAlgebra::cyclic(n, ring), kind: ResolutionKind::Periodic(n) }
    }

    pub fn koszul_z(ring: CoeffRing) -> SmallResolution {
        SmallResolution { algebra: GroupAlgebra::new(GroupDescriptor::free(1), ring), kind: ResolutionKind::KoszulZ }
    }

    pub fn tensor(parts: Vec<SmallResolution>) -> Result<SmallResolution> {
        let Some(first) = parts.first() else { return Err(Error::Hypothesis("empty tensor product".into())) };
        let ring = first.algebra.ring.clone();
        let mut group = GroupDescriptor { factors: vec![] };
        for p in &parts {
            if p.algebra.ring != ring {
                return Err(Error::RingMismatch(p.algebra.ring.to_string(), ring.to_string()));
            }
            group = group.product(&p.algebra.group);
        }
        Ok(SmallResolution { algebra: GroupAlgebra::new(group, ring), kind: ResolutionKind::Tensor(parts) })
    }

    /// The resolution attached to a group: one factor per cyclic or free factor.
    pub fn for_group(group: &GroupDescriptor, ring: CoeffRing) -> Result<SmallResolution> {
        let parts: Vec<SmallResolution> = group
            .factors
            .iter()
            .map(|f| match f {
                Factor::Free => SmallResolution::koszul_z(ring.clone()),
                Factor::Cyclic(n) => SmallResolution::periodic(*n, ring.clone()),
            })
            .collect();
        if parts.len() == 1 {
            Ok(parts.into_iter().next().unwrap())
        } else {
            SmallResolution::tensor(parts)
        }
    }

    pub fn factors(&self) -> Vec<&SmallResolution> {
        match &self.kind {
            ResolutionKind::Tensor(p) => p.iter().collect(),
            _ => vec![self],
        }
    }

    /// Top degree of a single factor (None if unbounded).
    fn length(&self) -> Option<usize> {
        match &self.kind {
            ResolutionKind::Periodic(_) => None,
            ResolutionKind::KoszulZ => Some(1),
            ResolutionKind::Tensor(p) => p.iter().map(|x| x.length()).sum(),
        }
    }

    /// Summands in total degree `d`, first factor's degree descending.
    pub fn summands(&self, d: usize) -> Vec<MultiDegree> {
        fn rec(parts: &[&SmallResolution], d: usize, acc: &mut Vec<usize>, out: &mut Vec<MultiDegree>) {
            if parts.len() == 1 {
                if parts[0].length().is_none_or(|l| d <= l) {
                    let mut v = acc.clone();
                    v.push(d);
                    out.push(v);
                }
                return;
            }
            for p in (0..=d).rev() {
                if parts[0].length().is_some_and(|l| p > l) {
                    continue;
                }
                acc.push(p);
                rec(&parts[1..], d - p, acc, out);
                acc.pop();
            }
        }
        let parts = self.factors();
        let mut out = Vec::new();
        rec(&parts, d, &mut Vec::new(), &mut out);
        out
    }

    /// d_k(1⊗1) for a single-factor resolution, as an element of A⊗A.
    pub fn boundary_element(&self, k: usize) -> Option<MultiTensor> {
        let alg = &self.algebra;
        let e = alg.group.identity();
        match &self.kind {
            ResolutionKind::Periodic(n) => {
                if k == 0 {
                    return None;
                }
                let s = alg.group.gen_pow(0, 1);
                if k % 2 == 1 {
                    let mut t = mt_basis(alg, vec![e.clone(), s.clone()], 1);
                    mt_add_term(alg, &mut t, vec![s, e], &alg.ring.from_i64(-1));
                    Some(t)
                } else {
                    let mut t = MultiTensor::default();
                    for i in 0..*n as i64 {
                        mt_add_term(alg, &mut t, vec![alg.group.gen_pow(0, i), alg.group.gen_pow(0, *n as i64 - i - 1)], &alg.ring.one());
                    }
                    Some(t)
                }
            }
            ResolutionKind::KoszulZ => {
                if k != 1 {
                    return None;
                }
                let t1 = alg.group.gen_pow(0, 1);
                let mut t = mt_basis(alg, vec![e.clone(), t1.clone()], 1);
                mt_add_term(alg, &mut t, vec![t1, e], &alg.ring.from_i64(-1));
                Some(t)
            }
            ResolutionKind::Tensor(_) => None,
        }
    }

    /// The differential on a generator: target summands with their A^e coefficients,
    /// including the Koszul signs of the tensor product.
    pub fn boundary(&self, md: &MultiDegree) -> Vec<(MultiDegree, MultiTensor)> {
        match &self.kind {
            ResolutionKind::Tensor(parts) => {
                let alg = &self.algebra;
                let mut out = Vec::new();
                let mut offset = 0;
                let mut before = 0usize;
                for (f, part) in parts.iter().enumerate() {
                    let rank = part.algebra.group.rank();
                    if md[f] > 0 {
                        if let Some(d) = part.boundary_element(md[f]) {
                            let sign = if before.is_multiple_of(2) { 1 } else { -1 };
                            let mut emb = MultiTensor::default();
                            for (k, c) in &d.terms {
                                let key: Vec<GroupElement> = k.iter().map(|g| embed(&alg.group, offset, rank, g)).collect();
                                mt_add_term(alg, &mut emb, key, &alg.ring.mul_i64(c, sign));
                            }
                            let mut t = md.clone();
                            t[f] -= 1;
                            out.push((t, emb));
                        }
                    }
                    before += md[f];
                    offset += rank;
                }
                out
            }
            _ => match self.boundary_element(md[0]) {
                Some(d) => vec![(vec![md[0] - 1], d)],
                None => vec![],
            },
        }
    }

    /// μ(d(1⊗1)) for each outgoing component: the induced map on small values.
    fn induced(&self, md: &MultiDegree) -> Vec<(MultiDegree, GroupRingElement)> {
        self.boundary(md).into_iter().map(|(t, d)| (t, mt_collapse(&self.algebra, &d))).collect()
    }

    /// Applies the cochain differential to a small cochain of degree `v.degree`.
    pub fn cochain_differential(&self, v: &SmallValue) -> SmallValue {
        let alg = &self.algebra;
        let mut out: BTreeMap<MultiDegree, GroupRingElement> = BTreeMap::new();
        for md in self.summands(v.degree + 1) {
            let mut acc = alg.zero();
            for (t, c) in self.induced(&md) {
                if let Some(val) = v.values.get(&t) {
                    alg.add_assign(&mut acc, &alg.mul(&c, val));
                }
            }
            if !acc.is_zero() {
                out.insert(md, acc);
            }
        }
        SmallValue { degree: v.degree + 1, values: out }
    }

    /// Applies the chain differential to a small chain.
    pub fn chain_differential(&self, v: &SmallValue) -> Option<SmallValue> {
        if v.degree == 0 {
            return None;
        }
        let alg = &self.algebra;
        let mut out: BTreeMap<MultiDegree, GroupRingElement> = BTreeMap::new();
        for (md, val) in &v.values {
            for (t, c) in self.induced(md) {
                let e = out.entry(t).or_insert_with(|| alg.zero());
                alg.add_assign(e, &alg.mul(&c, val));
            }
        }
        out.retain(|_, x| !x.is_zero());
        Some(SmallValue { degree: v.degree - 1, values: out })
    }

    /// Coordinates of a small value in the Z-basis (summands in order, group
    /// elements in lexicographic order). Finite groups only.
    pub fn coordinates(&self, v: &SmallValue) -> Result<Vec<Scalar>> {
        let elems = self.algebra.group.elements()?;
        let mut out = Vec::new();
        for md in self.summands(v.degree) {
            let val = v.values.get(&md);
            for g in &elems {
                out.push(val.map_or_else(|| self.algebra.ring.zero(), |x| self.algebra.coefficient(x, g)));
            }
        }
        Ok(out)
    }

    /// Inverse of [`coordinates`](Self::coordinates).
    pub fn from_coordinates(&self, degree: usize, coords: &[Scalar]) -> Result<SmallValue> {
        let elems = self.algebra.group.elements()?;
        let mut values = BTreeMap::new();
        for (b, md) in self.summands(degree).into_iter().enumerate() {
            let mut x = self.algebra.zero();
            for (i, g) in elems.iter().enumerate() {
                self.algebra.add_term(&mut x, g.clone(), &coords[b * elems.len() + i]);
            }
            if !x.is_zero() {
                values.insert(md, x);
            }
        }
        Ok(SmallValue { degree, values })
    }

    /// The small cochain complex Hom_{A^e}(P, A) ≅ ⊕A in degrees 0..=max as
    /// integer matrices over the ground ring (finite groups only).
    pub fn small_cochain_complex(&self, max: usize) -> Result<FreeComplex> {
        self.small_complex(max, Direction::Cochain)
    }

    /// The small chain complex P ⊗_{A^e} A ≅ ⊕A in degrees 0..=max.
    pub fn small_chain_complex(&self, max: usize) -> Result<FreeComplex> {
        self.small_complex(max, Direction::Chain)
    }

    fn small_complex(&self, max: usize, dir: Direction) -> Result<FreeComplex> {
        let elems = self.algebra.group.elements()?;
        let index: BTreeMap<&GroupElement, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let ring = match &self.algebra.ring {
            CoeffRing::Rationals => CoeffRing::Rationals,
            r => r.clone(),
        };
        let ne = elems.len();
        let mut ranks = Vec::new();
        let mut diffs = Vec::new();
        for d in 0..=max {
            let src = self.summands(d);
            ranks.push(src.len() * ne);
            let tgt_deg = match dir {
                Direction::Cochain => Some(d + 1).filter(|&t| t <= max),
                Direction::Chain => d.checked_sub(1),
            };
            let Some(td) = tgt_deg else {
                diffs.push(IntMatrix::zeros(ring.clone(), 0, src.len() * ne));
                continue;
            };
            let tgt = self.summands(td);
            let mut m = IntMatrix::zeros(ring.clone(), tgt.len() * ne, src.len() * ne);
            // entry for "value at summand s, element g" → "summand t, element h"
            let mut put = |t: usize, s: usize, c: &GroupRingElement| {
                for g in &elems {
                    for (h, coef) in &c.terms {
                        let gh = self.algebra.group.mul(g, h);
                        let v = self.algebra.ring.to_bigint(coef).ok_or_else(|| Error::NotIntegers(self.algebra.ring.to_string()))?;
                        m.add_at(t * ne + index[&gh], s * ne + index[g], &v);
                    }
                }
                Ok::<(), Error>(())
            };
            match dir {
                Direction::Cochain => {
                    for (ti, tmd) in tgt.iter().enumerate() {
                        for (smd, c) in self.induced(tmd) {
                            if let Some(si) = src.iter().position(|x| *x == smd) {
                                put(ti, si, &c)?;
                            }
                        }
                    }
                }
                Direction::Chain => {
                    for (si, smd) in src.iter().enumerate() {
                        for (tmd, c) in self.induced(smd) {
                            if let Some(ti) = tgt.iter().position(|x| *x == tmd) {
                                put(ti, si, &c)?;
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        FreeComplex::new(ring, dir, 0, ranks, diffs)
    }
}

/// Embeds an element of one factor into the product group.
pub fn embed(product: &GroupDescriptor, offset: usize, rank: usize, g: &GroupElement) -> GroupElement {
    let mut c = product.identity();
    c.0[offset..offset + rank].copy_from_slice(&g.0);
    c
}

/// d_k(x) = x·d_k(1⊗1) on the periodic resolution of R[Z/n].
pub fn periodic_boundary(alg: &GroupAlgebra, k: usize, x: &MultiTensor) -> MultiTensor {
    let n = match alg.group.factors.as_slice() {
        [Factor::Cyclic(n)] => *n,
        _ => panic!("periodic resolution needs a cyclic group"),
    };
    let res = SmallResolution { algebra: alg.clone(), kind: ResolutionKind::Periodic(n) };
    match res.boundary_element(k) {
        Some(d) => mt_act(alg, x, &d, 0, 1),
        None => MultiTensor::default(),
    }
}

/// d_1(x) = x·(1⊗t − t⊗1) on the two-term resolution of R[Z].
pub fn koszul_z_boundary(alg: &GroupAlgebra, x: &MultiTensor) -> MultiTensor {
    let res = SmallResolution { algebra: alg.clone(), kind: ResolutionKind::KoszulZ };
    mt_act(alg, x, &res.boundary_element(1).expect("degree 1"), 0, 1)
}

/// s̃_0(a) = 1⊗a.
pub fn homotopy0(alg: &GroupAlgebra, a: &GroupRingElement) -> MultiTensor {
    let mut t = MultiTensor::default();
    for (g, c) in &a.terms {
        mt_add_term(alg, &mut t, vec![alg.group.identity(), g.clone()], c);
    }
    t
}

/// The right A-linear contracting homotopy from degree `to − 1` to degree `to`
/// (`to` ≥ 1) of the periodic resolution, or of the two-term resolution of R[Z]
/// when the group is free of rank one.
pub fn contracting_homotopy(alg: &GroupAlgebra, to: usize, x: &MultiTensor) -> MultiTensor {
    assert!(to >= 1);
    let mut out = MultiTensor::default();
    let one = alg.ring.one();
    match alg.group.factors.as_slice() {
        [Factor::Cyclic(n)] => {
            let n = *n as i64;
            for (k, c) in &x.terms {
                let i = k[0].0[0];
                let right = &k[1];
                let mut img = MultiTensor::default();
                if to % 2 == 1 {
                    for j in 0..i {
                        mt_add_term(alg, &mut img, vec![alg.group.gen_pow(0, j), alg.group.gen_pow(0, i - j - 1)], &alg.ring.neg(&one));
                    }
                } else if i == n - 1 {
                    mt_add_term(alg, &mut img, vec![alg.group.identity(), alg.group.identity()], &one);
                }
                for (ik, ic) in img.terms {
                    let key = vec![ik[0].clone(), alg.group.mul(&ik[1], right)];
                    mt_add_term(alg, &mut out, key, &alg.ring.mul(c, &ic));
                }
            }
        }
        [Factor::Free] => {
            if to != 1 {
                return out;
            }
            for (k, c) in &x.terms {
                let i = k[0].0[0];
                let right = &k[1];
                let mut img = MultiTensor::default();
                if i >= 1 {
                    for j in 0..i {
                        mt_add_term(alg, &mut img, vec![alg.group.gen_pow(0, j), alg.group.gen_pow(0, i - j - 1)], &alg.ring.neg(&one));
                    }
                } else if i <= -1 {
                    for j in 0..(-i) {
                        mt_add_term(alg, &mut img, vec![alg.group.gen_pow(0, -j - 1), alg.group.gen_pow(0, i + j)], &one);
                    }
                }
                for (ik, ic) in img.terms {
                    let key = vec![ik[0].clone(), alg.group.mul(&ik[1], right)];
                    mt_add_term(alg, &mut out, key, &alg.ring.mul(c, &ic));
                }
            }
        }
        _ => panic!("contracting homotopy defined for Z/n and Z only"),
    }
    out
}

/// One tensor leg of the interchange map: an abstract basis symbol with its
/// degree, possibly hit by the differential (which lowers the degree by one).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Leg {
    pub id: u32,
    pub degree: usize,
    pub differentiated: bool,
}

impl Leg {
    pub fn new(id: u32, degree: usize) -> Leg {
        Leg { id, degree, differentiated: false }
    }

    fn d(&self) -> Option<Leg> {
        if self.differentiated || self.degree == 0 {
            None
        } else {
            Some(Leg { id: self.id, degree: self.degree - 1, differentiated: true })
        }
    }
}

/// Formal linear combination of four-leg tensors.
pub type Quad = BTreeMap<[Leg; 4], i64>;

/// τ((a1⊗a2)⊗(b1⊗b2)) = (−1)^{|a2||b1|} (a1⊗b1)⊗(a2⊗b2).
pub fn tau_interchange(a1: &Leg, a2: &Leg, b1: &Leg, b2: &Leg) -> (i64, [Leg; 4]) {
    let s = if (a2.degree * b1.degree).is_multiple_of(2) { 1 } else { -1 };
    (s, [a1.clone(), b1.clone(), a2.clone(), b2.clone()])
}

pub fn tau_on(q: &Quad) -> Quad {
    let mut out = Quad::new();
    for (k, c) in q {
        let (s, key) = tau_interchange(&k[0], &k[1], &k[2], &k[3]);
        *out.entry(key).or_insert(0) += s * c;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Koszul differential on a formal four-fold tensor.
pub fn quad_differential(q: &Quad) -> Quad {
    let mut out = Quad::new();
    for (k, c) in q {
        let mut before = 0usize;
        for i in 0..4 {
            if let Some(dl) = k[i].d() {
                let mut key = k.clone();
                key[i] = dl;
                let s = if before.is_multiple_of(2) { 1 } else { -1 };
                *out.entry(key).or_insert(0) += s * c;
            }
            before += k[i].degree;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// A diagonal value: for each pair of summands (left, right) an element
/// u⊗v⊗w of A^{⊗3}, read as (u⊗v)·gen_left ⊗_A (1⊗w)·gen_right.
pub type DiagonalValue = BTreeMap<(MultiDegree, MultiDegree), MultiTensor>;

/// Δ(1⊗1) on the generator of summand `md`.
pub fn diagonal(res: &SmallResolution, md: &MultiDegree) -> Result<DiagonalValue> {
    let alg = &res.algebra;
    let e = alg.group.identity();
    let mut out = DiagonalValue::new();
    match &res.kind {
        ResolutionKind::KoszulZ => {
            let unit = mt_basis(alg, vec![e.clone(), e.clone(), e], 1);
            match md[0] {
                0 => {
                    out.insert((vec![0], vec![0]), unit);
                }
                1 => {
                    out.insert((vec![1], vec![0]), unit.clone());
                    out.insert((vec![0], vec![1]), unit);
                }
                _ => {}
            }
        }
        ResolutionKind::Periodic(_) => {
            for (p1, v) in comparison::periodic_diagonal(alg, md[0])? {
                out.insert((vec![p1], vec![md[0] - p1]), v);
            }
        }
        ResolutionKind::Tensor(parts) => {
            // fold factor by factor; multi-degrees and group coordinates concatenate
            let mut acc: DiagonalValue = diagonal(&parts[0], &vec![md[0]])?;
            for (f, part) in parts.iter().enumerate().skip(1) {
                let db = diagonal(part, &vec![md[f]])?;
                let mut next = DiagonalValue::new();
                for ((al, ar), xa) in &acc {
                    let right_deg: usize = ar.iter().sum();
                    for ((bl, br), xb) in &db {
                        let s = if (right_deg * bl[0]).is_multiple_of(2) { 1 } else { -1 };
                        let mut l = al.clone();
                        l.push(bl[0]);
                        let mut r = ar.clone();
                        r.push(br[0]);
                        let entry = next.entry((l, r)).or_default();
                        for (ka, ca) in &xa.terms {
                            for (kb, cb) in &xb.terms {
                                let k: Vec<GroupElement> = (0..3).map(|i| GroupDescriptor::join(&ka[i], &kb[i])).collect();
                                mt_add_term(alg, entry, k, &alg.ring.mul_i64(&alg.ring.mul(ca, cb), s));
                            }
                        }
                    }
                }
                acc = next;
            }
            out = acc;
            out.retain(|_, v| !v.is_zero());
        }
    }
    Ok(out)
}

/// (d⊗1 + (−1)^{|left|} 1⊗d) on a diagonal value.
pub fn diagonal_target_differential(res: &SmallResolution, x: &DiagonalValue) -> DiagonalValue {
    let alg = &res.algebra;
    let mut out = DiagonalValue::new();
    for ((l, r), v) in x {
        for (t, d) in res.boundary(l) {
            // (u⊗v)·(α⊗β) = uα ⊗ βv
            let y = mt_act(alg, v, &d, 0, 1);
            let e = out.entry((t, r.clone())).or_default();
            mt_add(alg, e, &y, &alg.ring.one());
        }
        let sign = if l.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
        for (t, d) in res.boundary(r) {
            // (1⊗w)·(α⊗β) read after moving α across ⊗_A: u ⊗ vα ⊗ βw
            let y = mt_act(alg, v, &d, 1, 2);
            let e = out.entry((l.clone(), t)).or_default();
            mt_add(alg, e, &y, &alg.ring.from_i64(sign));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Δ(d(1⊗1)) computed through A^e-linearity.
pub fn diagonal_of_boundary(res: &SmallResolution, md: &MultiDegree) -> Result<DiagonalValue> {
    let alg = &res.algebra;
    let mut out = DiagonalValue::new();
    for (t, d) in res.boundary(md) {
        for (key, v) in diagonal(res, &t)? {
            // (α⊗β)·(u⊗v⊗w) = αu ⊗ v ⊗ wβ
            let y = mt_act(alg, &v, &d, 0, 2);
            let e = out.entry(key).or_default();
            mt_add(alg, e, &y, &alg.ring.one());
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Applies μ⊗μ to the degree-0 diagonal of a⊗b.
pub fn counit(res: &SmallResolution, a: &GroupElement, b: &GroupElement) -> Result<GroupRingElement> {
    let alg = &res.algebra;
    let zero: MultiDegree = vec![0; res.factors().len()];
    let d = diagonal(res, &zero)?;
    let mut out = alg.zero();
    for v in d.values() {
        let c = mt_collapse(alg, v);
        alg.add_assign(&mut out, &alg.shift(&alg.group.mul(a, b), &c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64) -> GroupAlgebra {
        GroupAlgebra::cyclic(n, CoeffRing::Integers)
    }

    #[test]
    fn periodic_boundaries() {
        let a = zn(3);
        let e = a.group.identity();
        let s = a.group.gen_pow(0, 1);
        let one = mt_basis(&a, vec![e.clone(), e.clone()], 1);
        let d1 = periodic_boundary(&a, 1, &one);
        let mut expect = mt_basis(&a, vec![e.clone(), s.clone()], 1);
        mt_add_term(&a, &mut expect, vec![s, e], &a.ring.from_i64(-1));
        assert_eq!(d1, expect);
        let d2 = periodic_boundary(&a, 2, &one);
        assert_eq!(d2.terms.len(), 3);
        assert!(periodic_boundary(&a, 1, &d2).is_zero());
        assert!(periodic_boundary(&a, 2, &d1).is_zero());
    }

    #[test]
    fn homotopy_identity() {
        let a = zn(4);
        let x = mt_basis(&a, vec![a.group.gen_pow(0, 2), a.group.identity()], 1);
        let lhs = {
            let up = contracting_homotopy(&a, 2, &x);
            let mut r = periodic_boundary(&a, 2, &up);
            let down = periodic_boundary(&a, 1, &x);
            mt_add(&a, &mut r, &contracting_homotopy(&a, 1, &down), &a.ring.one());
            r
        };
        assert_eq!(lhs, x);
        let one = mt_basis(&a, vec![a.group.identity(), a.group.identity()], 1);
        assert!(contracting_homotopy(&a, 1, &one).is_zero());
    }

    #[test]
    fn koszul_examples() {
        let a = GroupAlgebra::new(GroupDescriptor::free(1), CoeffRing::Integers);
        let x = mt_basis(&a, vec![a.group.gen_pow(0, -1), a.group.identity()], 1);
        let s = contracting_homotopy(&a, 1, &x);
        assert_eq!(s, mt_basis(&a, vec![a.group.gen_pow(0, -1), a.group.gen_pow(0, -1)], 1));
        let one = mt_basis(&a, vec![a.group.identity(), a.group.identity()], 1);
        assert!(mt_collapse(&a, &koszul_z_boundary(&a, &one)).is_zero());
    }

    #[test]
    fn tau_signs() {
        let (s, _) = tau_interchange(&Leg::new(0, 0), &Leg::new(1, 0), &Leg::new(2, 0), &Leg::new(3, 0));
        assert_eq!(s, 1);
        let (s, _) = tau_interchange(&Leg::new(0, 2), &Leg::new(1, 1), &Leg::new(2, 1), &Leg::new(3, 0));
        assert_eq!(s, -1);
    }

    #[test]
    fn diagonals_are_chain_maps() {
        let mut cases = vec![
            SmallResolution::periodic(2, CoeffRing::Integers),
            SmallResolution::periodic(3, CoeffRing::Integers),
            SmallResolution::periodic(4, CoeffRing::Integers),
            SmallResolution::koszul_z(CoeffRing::Integers),
        ];
        cases.push(SmallResolution::tensor(vec![cases[0].clone(), cases[1].clone()]).unwrap());
        cases.push(SmallResolution::tensor(vec![cases[2].clone(), cases[3].clone()]).unwrap());
        for res in &cases {
            for d in 1..=4 {
                for md in res.summands(d) {
                    let lhs = diagonal_target_differential(res, &diagonal(res, &md).unwrap());
                    let rhs = diagonal_of_boundary(res, &md).unwrap();
                    assert_eq!(lhs, rhs, "{:?} {md:?}", res.algebra.group);
                }
            }
        }
    }

    #[test]
    fn diagonal_counit() {
        let a = SmallResolution::periodic(3, CoeffRing::Integers);
        let b = SmallResolution::koszul_z(CoeffRing::Integers);
        let t = SmallResolution::tensor(vec![a, b]).unwrap();
        let g = t.algebra.group.element(&[2, -1]);
        let h = t.algebra.group.element(&[1, 3]);
        assert_eq!(counit(&t, &g, &h).unwrap(), t.algebra.basis(&t.algebra.group.mul(&g, &h)));
    }
}
