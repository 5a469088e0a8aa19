//! Group algebras R[G] for G a finite product of copies of Z and Z/n.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::{CoeffRing, Coefficient, Scalar};
use crate::error::{parse_err, Error, Result};

/// One cyclic factor of G.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Free,
    Cyclic(u64),
}

/// G as an ordered list of factors. The order is kept as declared; it fixes
/// the tensor-factor order and hence every sign downstream.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub factors: Vec<Factor>,
}

/// Coordinates of a group element, one per factor. Torsion coordinates are
/// kept reduced into `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub SmallVec<[i64; 4]>);

impl GroupElement {
    pub fn from_slice(c: &[i64]) -> GroupElement {
        GroupElement(SmallVec::from_slice(c))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl GroupDescriptor {
    pub fn new(factors: Vec<Factor>) -> GroupDescriptor {
        for f in &factors {
            if let Factor::Cyclic(n) = f {
                assert!(*n >= 2, "torsion orders must be at least 2");
            }
        }
        GroupDescriptor { factors }
    }

    pub fn cyclic(n: u64) -> GroupDescriptor {
        GroupDescriptor::new(vec![Factor::Cyclic(n)])
    }

    pub fn free(r: usize) -> GroupDescriptor {
        GroupDescriptor::new(vec![Factor::Free; r])
    }

    /// Z^r followed by the listed torsion factors.
    pub fn from_parts(free_rank: usize, torsion: &[u64]) -> GroupDescriptor {
        let mut f = vec![Factor::Free; free_rank];
        f.extend(torsion.iter().map(|&n| Factor::Cyclic(n)));
        GroupDescriptor::new(f)
    }

    /// Parses "Z^2 x Z/4 x Z/2"; case-insensitive, '×' and '+' accepted as separators.
    pub fn parse(input: &str) -> Result<GroupDescriptor> {
        let mut factors = Vec::new();
        let norm: String = input.chars().map(|c| if c == '×' || c == '⊕' { 'x' } else { c }).collect();
        let bytes: Vec<char> = norm.chars().collect();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_num = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                None
            } else {
                bytes[start..*pos].iter().collect::<String>().parse().ok()
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(parse_err(input, pos, "expected a factor"));
            }
            if !matches!(bytes[pos], 'Z' | 'z') {
                return Err(parse_err(input, pos, "expected Z, Z^r or Z/n"));
            }
            pos += 1;
            if pos < bytes.len() && bytes[pos] == '/' {
                pos += 1;
                let at = pos;
                let n = read_num(&mut pos).ok_or_else(|| parse_err(input, at, "expected an order"))?;
                if n < 2 {
                    return Err(parse_err(input, at, "torsion order must be at least 2"));
                }
                factors.push(Factor::Cyclic(n));
            } else if pos < bytes.len() && bytes[pos] == '^' {
                pos += 1;
                let at = pos;
                let r = read_num(&mut pos).ok_or_else(|| parse_err(input, at, "expected an exponent"))?;
                factors.extend(std::iter::repeat_n(Factor::Free, r as usize));
            } else {
                factors.push(Factor::Free);
            }
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            if matches!(bytes[pos], 'x' | 'X' | '+') {
                pos += 1;
            } else {
                return Err(parse_err(input, pos, "expected 'x' between factors"));
            }
        }
        if factors.is_empty() {
            return Err(parse_err(input, 0, "empty group"));
        }
        Ok(GroupDescriptor { factors })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f, Factor::Free)).count()
    }

    pub fn torsion_orders(&self) -> Vec<u64> {
        self.factors
            .iter()
            .filter_map(|f| match f {
                Factor::Cyclic(n) => Some(*n),
                Factor::Free => None,
            })
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.torsion_orders().iter().product())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(SmallVec::from_elem(0, self.rank()))
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.0.iter().all(|&c| c == 0)
    }

    fn reduce_coord(&self, i: usize, v: i64) -> i64 {
        match self.factors[i] {
            Factor::Free => v,
            Factor::Cyclic(n) => v.rem_euclid(n as i64),
        }
    }

    pub fn element(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.rank(), "coordinate count does not match group");
        GroupElement(coords.iter().enumerate().map(|(i, &c)| self.reduce_coord(i, c)).collect())
    }

    /// The generator of factor `i` raised to `e`.
    pub fn gen_pow(&self, i: usize, e: i64) -> GroupElement {
        let mut c: SmallVec<[i64; 4]> = SmallVec::from_elem(0, self.rank());
        c[i] = self.reduce_coord(i, e);
        GroupElement(c)
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter().zip(h.0.iter()).enumerate().map(|(i, (a, b))| self.reduce_coord(i, a + b)).collect(),
        )
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        GroupElement(g.0.iter().enumerate().map(|(i, a)| self.reduce_coord(i, -a)).collect())
    }

    pub fn pow(&self, g: &GroupElement, e: i64) -> GroupElement {
        GroupElement(g.0.iter().enumerate().map(|(i, a)| self.reduce_coord(i, a * e)).collect())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank()
            && g.0.iter().enumerate().all(|(i, &c)| match self.factors[i] {
                Factor::Free => true,
                Factor::Cyclic(n) => c >= 0 && (c as u64) < n,
            })
    }

    /// All elements in lexicographic coordinate order (finite groups only).
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut out = vec![self.identity()];
        for (i, f) in self.factors.iter().enumerate() {
            let Factor::Cyclic(n) = f else { unreachable!() };
            let mut next = Vec::with_capacity(out.len() * *n as usize);
            for g in &out {
                for e in 0..*n as i64 {
                    let mut h = g.clone();
                    h.0[i] = e;
                    next.push(h);
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// Non-identity elements, the letters of normalized bar tuples.
    pub fn nonidentity_elements(&self) -> Result<Vec<GroupElement>> {
        Ok(self.elements()?.into_iter().filter(|g| !self.is_identity(g)).collect())
    }

    /// G × H with coordinates concatenated (G first).
    pub fn product(&self, other: &GroupDescriptor) -> GroupDescriptor {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().copied());
        GroupDescriptor { factors: f }
    }

    /// Splits a product element into its first `left_rank` coordinates and the rest.
    pub fn split(g: &GroupElement, left_rank: usize) -> (GroupElement, GroupElement) {
        (GroupElement::from_slice(&g.0[..left_rank]), GroupElement::from_slice(&g.0[left_rank..]))
    }

    pub fn join(a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut c = a.0.clone();
        c.extend(b.0.iter().copied());
        GroupElement(c)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x {
                Factor::Free => "Z".to_string(),
                Factor::Cyclic(n) => format!("Z/{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Finitely supported function G → R. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    pub terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupRingElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }
}

/// The algebra A = R[G]; all element arithmetic goes through it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebra {
    pub group: GroupDescriptor,
    pub ring: CoeffRing,
}

impl GroupAlgebra {
    pub fn new(group: GroupDescriptor, ring: CoeffRing) -> GroupAlgebra {
        GroupAlgebra { group, ring }
    }

    pub fn cyclic(n: u64, ring: CoeffRing) -> GroupAlgebra {
        GroupAlgebra::new(GroupDescriptor::cyclic(n), ring)
    }

    pub fn same_as(&self, other: &GroupAlgebra) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.to_string(), other.group.to_string()));
        }
        Ok(())
    }

    /// Checks that an element's support lives in this group.
    pub fn validate(&self, a: &GroupRingElement) -> Result<()> {
        for (g, c) in &a.terms {
            if !self.group.contains(g) {
                return Err(Error::GroupMismatch(format!("{:?}", g.0), self.group.to_string()));
            }
            let ok = matches!((&self.ring, c), (CoeffRing::Rationals, Scalar::Rat(_)) | (CoeffRing::Integers | CoeffRing::IntegersMod(_), Scalar::Int(_)));
            if !ok {
                return Err(Error::RingMismatch(c.to_string(), self.ring.to_string()));
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement::default()
    }

    pub fn one(&self) -> GroupRingElement {
        self.basis(&self.group.identity())
    }

    pub fn basis(&self, g: &GroupElement) -> GroupRingElement {
        self.monomial(g.clone(), self.ring.one())
    }

    pub fn monomial(&self, g: GroupElement, c: Scalar) -> GroupRingElement {
        let mut terms = BTreeMap::new();
        if !self.ring.is_zero(&c) {
            terms.insert(g, c);
        }
        GroupRingElement { terms }
    }

    pub fn scalar(&self, c: Scalar) -> GroupRingElement {
        self.monomial(self.group.identity(), c)
    }

    pub fn from_i64(&self, c: i64) -> GroupRingElement {
        self.scalar(self.ring.from_i64(c))
    }

    /// c·g^e for the generator of factor `i`.
    pub fn gen_pow(&self, i: usize, e: i64, c: i64) -> GroupRingElement {
        self.monomial(self.group.gen_pow(i, e), self.ring.from_i64(c))
    }

    /// Builds Σ c_k g_k from integer coefficients.
    pub fn from_terms<I: IntoIterator<Item = (GroupElement, i64)>>(&self, it: I) -> GroupRingElement {
        let mut out = self.zero();
        for (g, c) in it {
            self.add_term(&mut out, g, &self.ring.from_i64(c));
        }
        out
    }

    pub fn coefficient(&self, a: &GroupRingElement, g: &GroupElement) -> Scalar {
        a.terms.get(g).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&self, acc: &mut GroupRingElement, g: GroupElement, c: &Scalar) {
        if self.ring.is_zero(c) {
            return;
        }
        match acc.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&self, acc: &mut GroupRingElement, b: &GroupRingElement) {
        for (g, c) in &b.terms {
            self.add_term(acc, g.clone(), c);
        }
    }

    /// acc += c·b
    pub fn add_scaled(&self, acc: &mut GroupRingElement, c: &Scalar, b: &GroupRingElement) {
        if self.ring.is_zero(c) {
            return;
        }
        for (g, v) in &b.terms {
            self.add_term(acc, g.clone(), &self.ring.mul(c, v));
        }
    }

    pub fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    pub fn sub(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &GroupRingElement) -> GroupRingElement {
        GroupRingElement { terms: a.terms.iter().map(|(g, c)| (g.clone(), self.ring.neg(c))).collect() }
    }

    pub fn scale(&self, c: &Scalar, a: &GroupRingElement) -> GroupRingElement {
        let mut out = self.zero();
        self.add_scaled(&mut out, c, a);
        out
    }

    pub fn scale_i64(&self, k: i64, a: &GroupRingElement) -> GroupRingElement {
        self.scale(&self.ring.from_i64(k), a)
    }

    /// Multiplication by a group element.
    pub fn shift(&self, g: &GroupElement, a: &GroupRingElement) -> GroupRingElement {
        GroupRingElement { terms: a.terms.iter().map(|(h, c)| (self.group.mul(g, h), c.clone())).collect() }
    }

    pub fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        if a.terms.len() == 1 {
            let (g, c) = a.terms.iter().next().unwrap();
            let shifted = self.shift(g, b);
            return if self.ring.is_one(c) { shifted } else { self.scale(c, &shifted) };
        }
        let mut out = self.zero();
        for (g, c) in &a.terms {
            for (h, d) in &b.terms {
                self.add_term(&mut out, self.group.mul(g, h), &self.ring.mul(c, d));
            }
        }
        out
    }

    /// ε(Σ α_g g) = α_e.
    pub fn augmentation(&self, a: &GroupRingElement) -> Coefficient {
        self.ring.coefficient(self.coefficient(a, &self.group.identity()))
    }

    pub fn augmentation_scalar(&self, a: &GroupRingElement) -> Scalar {
        self.coefficient(a, &self.group.identity())
    }

    /// ⟨a, b⟩ = ε(ab), finite groups only.
    pub fn frobenius_pair(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<Coefficient> {
        if !self.group.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut s = self.ring.zero();
        for (g, c) in &a.terms {
            if let Some(d) = b.terms.get(&self.group.inv(g)) {
                s = self.ring.add(&s, &self.ring.mul(c, d));
            }
        }
        Ok(self.ring.coefficient(s))
    }

    /// Basis pairs (g, g⁻¹) of the canonical Frobenius form.
    pub fn dual_basis(&self) -> Result<Vec<(GroupElement, GroupElement)>> {
        Ok(self.group.elements()?.into_iter().map(|g| {
            let h = self.group.inv(&g);
            (g, h)
        }).collect())
    }

    /// Image of a ring homomorphism induced by a map on group elements.
    pub fn map_elements<F: Fn(&GroupElement) -> GroupElement>(&self, target: &GroupAlgebra, a: &GroupRingElement, f: F) -> GroupRingElement {
        let mut out = target.zero();
        for (g, c) in &a.terms {
            target.add_term(&mut out, f(g), c);
        }
        out
    }

    /// Human-readable form with one generator name per factor.
    pub fn format(&self, a: &GroupRingElement, names: &[&str]) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (g, c) in &a.terms {
            let mut word = Vec::new();
            for (i, &e) in g.0.iter().enumerate() {
                let name = names.get(i).copied().unwrap_or("g");
                match e {
                    0 => {}
                    1 => word.push(name.to_string()),
                    _ => word.push(format!("{name}^{e}")),
                }
            }
            let cs = c.to_string();
            let term = if word.is_empty() {
                cs
            } else if self.ring.is_one(c) {
                word.join("*")
            } else {
                format!("{cs}*{}", word.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64, r: CoeffRing) -> GroupAlgebra {
        GroupAlgebra::cyclic(n, r)
    }

    #[test]
    fn group_law_examples() {
        let a = zn(5, CoeffRing::Integers);
        let s = a.gen_pow(0, 1, 1);
        let s4 = a.gen_pow(0, 4, 1);
        assert_eq!(a.mul(&s, &s4), a.one());
        let z = GroupAlgebra::new(GroupDescriptor::free(1), CoeffRing::Integers);
        assert_eq!(z.mul(&z.gen_pow(0, 1, 1), &z.gen_pow(0, -1, 1)), z.one());
    }

    #[test]
    fn augmentation_square_f2() {
        let a = zn(2, CoeffRing::modular(2));
        let x = a.add(&a.one(), &a.gen_pow(0, 1, 1));
        // (1+σ)^2 = 1 + 2σ + σ^2 = 2 + 2σ ≡ 0 mod 2
        assert!(a.mul(&x, &x).is_zero());
    }

    #[test]
    fn augmentation_examples() {
        let a = zn(4, CoeffRing::Integers);
        let x = a.add(&a.from_i64(2), &a.gen_pow(0, 1, 3));
        assert_eq!(a.augmentation(&x), Coefficient::new(&CoeffRing::Integers, 2));
        assert!(a.augmentation(&a.zero()).is_zero());
        assert!(a.augmentation(&a.gen_pow(0, 2, 1)).is_zero());
    }

    #[test]
    fn frobenius_examples() {
        let a = zn(4, CoeffRing::Integers);
        let s = a.gen_pow(0, 1, 1);
        assert_eq!(a.frobenius_pair(&s, &a.gen_pow(0, 3, 1)).unwrap(), Coefficient::new(&a.ring, 1));
        assert!(a.frobenius_pair(&s, &s).unwrap().is_zero());
        let b = zn(3, CoeffRing::Integers);
        let sum = b.from_terms((0..3).map(|i| (b.group.gen_pow(0, i), 1)));
        assert_eq!(b.frobenius_pair(&b.one(), &sum).unwrap(), Coefficient::new(&b.ring, 1));
        let z = GroupAlgebra::new(GroupDescriptor::free(1), CoeffRing::Integers);
        assert!(matches!(z.frobenius_pair(&z.one(), &z.one()), Err(Error::InfiniteGroup)));
    }

    #[test]
    fn dual_basis_examples() {
        let a = zn(3, CoeffRing::Integers);
        let d = a.dual_basis().unwrap();
        let exps: Vec<(i64, i64)> = d.iter().map(|(g, h)| (g.0[0], h.0[0])).collect();
        assert_eq!(exps, vec![(0, 0), (1, 2), (2, 1)]);
        let g = GroupAlgebra::new(GroupDescriptor::parse("Z/4 x Z/2").unwrap(), CoeffRing::Integers);
        let d = g.dual_basis().unwrap();
        assert_eq!(d.len(), 8);
        let elems = g.group.elements().unwrap();
        for (u, v) in &d {
            for w in &elems {
                let p = g.frobenius_pair(&g.basis(u), &g.basis(w)).unwrap();
                assert_eq!(p.is_zero(), w != v);
            }
        }
    }

    #[test]
    fn parse_groups() {
        let g = GroupDescriptor::parse("Z^2 x Z/4 x Z/2").unwrap();
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.torsion_orders(), vec![4, 2]);
        let h = GroupDescriptor::parse("z/3 × Z").unwrap();
        assert_eq!(h.factors, vec![Factor::Cyclic(3), Factor::Free]);
        match GroupDescriptor::parse("Z/4 y Z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(GroupDescriptor::parse("Z/1").is_err());
    }
}
