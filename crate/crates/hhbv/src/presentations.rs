//! Closed-form presentations of HH^*: graded-commutative rings given by
//! generators and relations, with their Δ and bracket tables, a monomial
//! rewriter, encodings into small cochains, and the two comparison isomorphisms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bv_engine::{BvContext, BvOps, ClassSpace};
use crate::coeff::{is_prime, CoeffRing, Scalar};
use crate::error::{parse_err, Error, Result};
use crate::group_ring::{Factor, GroupDescriptor, GroupElement};
use crate::small_resolutions::{SmallResolution, SmallValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    /// x^n = 1
    pub order: Option<u64>,
    /// invertible, any integer exponent
    pub laurent: bool,
    /// x^k = 0
    pub nilpotent: Option<u32>,
    /// n·x = 0
    pub annihilator: Option<BigInt>,
}

impl Generator {
    fn new(name: &str, degree: usize) -> Generator {
        Generator { name: name.to_string(), degree, order: None, laurent: false, nilpotent: None, annihilator: None }
    }

    fn order(mut self, n: u64) -> Generator {
        self.order = Some(n);
        self
    }

    fn laurent(mut self) -> Generator {
        self.laurent = true;
        self
    }

    fn nilpotent(mut self, k: u32) -> Generator {
        self.nilpotent = Some(k);
        self
    }

    fn annihilator(mut self, n: u64) -> Generator {
        self.annihilator = Some(BigInt::from(n));
        self
    }

    fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Which closed-form Δ applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    /// R[Z/n] with generator indices for x, y, z.
    Cyclic { n: u64, x: usize, y: Option<usize>, z: Option<usize> },
    /// Z[Z/n] ⊗ Z[Z/m] with generators x, t, a, b, c.
    TensorZ { n: u64, m: u64 },
    /// R[Z^r] with generators x1, y1, x2, y2, ...
    FreeAbelian { rank: usize },
    /// F_p[x, v, t]/(x^p, v²), p odd.
    TruncatedOdd { p: u64 },
    /// F_2[x, v, t]/(x², v² − t).
    TruncatedTwo,
    /// R[x^{±1}, z]/(z²) with Δ(z x^i) = i x^i.
    LoopSpace,
    Tensor(Box<Presentation>, Box<Presentation>),
}

/// Finite linear combination of monomials (exponent vectors).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<Vec<i64>, Scalar>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: CoeffRing,
    pub generators: Vec<Generator>,
    /// Square of each odd generator that does not square to zero.
    pub squares: BTreeMap<usize, Poly>,
    pub relations: Vec<String>,
    pub hypotheses: Vec<String>,
    pub kind: PresentationKind,
}

fn sgn(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

impl Presentation {
    fn new(ring: CoeffRing, generators: Vec<Generator>, kind: PresentationKind) -> Presentation {
        Presentation { ring, generators, squares: BTreeMap::new(), relations: vec![], hypotheses: vec![], kind }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn monomial_degree(&self, e: &[i64]) -> i64 {
        e.iter().zip(&self.generators).map(|(k, g)| k * g.degree as i64).sum()
    }

    /// Degree of the first term (zero for the zero polynomial).
    pub fn degree(&self, p: &Poly) -> usize {
        p.terms.keys().next().map_or(0, |e| self.monomial_degree(e).max(0) as usize)
    }

    pub fn zero(&self) -> Poly {
        Poly::default()
    }

    pub fn one(&self) -> Poly {
        self.monomial(&vec![0; self.rank()], 1)
    }

    pub fn monomial(&self, e: &[i64], c: i64) -> Poly {
        self.normalize_term(e.to_vec(), self.ring.from_i64(c))
    }

    pub fn generator(&self, name: &str) -> Result<Poly> {
        let i = self.index(name).ok_or_else(|| Error::Hypothesis(format!("no generator {name}")))?;
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        Ok(self.monomial(&e, 1))
    }

    fn add_raw(&self, acc: &mut Poly, e: Vec<i64>, c: &Scalar) {
        if self.ring.is_zero(c) {
            return;
        }
        let s = match acc.terms.get(&e) {
            Some(v) => self.ring.add(v, c),
            None => c.clone(),
        };
        let s = self.reduce_coeff(&e, s);
        if self.ring.is_zero(&s) {
            acc.terms.remove(&e);
        } else {
            acc.terms.insert(e, s);
        }
    }

    /// Effective annihilator of a monomial: gcd of its generators' annihilators.
    fn annihilator(&self, e: &[i64]) -> Option<BigInt> {
        let mut g: Option<BigInt> = None;
        for (k, gen) in e.iter().zip(&self.generators) {
            if *k != 0 {
                if let Some(a) = &gen.annihilator {
                    g = Some(match g {
                        None => a.clone(),
                        Some(h) => h.gcd(a),
                    });
                }
            }
        }
        g
    }

    fn reduce_coeff(&self, e: &[i64], c: Scalar) -> Scalar {
        let Some(a) = self.annihilator(e) else { return c };
        match (&self.ring, &c) {
            // truncated remainder keeps the sign for display; equality goes through subtraction
            (CoeffRing::Integers, Scalar::Int(v)) => Scalar::Int(v % &a),
            (CoeffRing::IntegersMod(m), Scalar::Int(v)) => {
                let g = a.gcd(m);
                self.ring.from_bigint(v.mod_floor(&g))
            }
            (CoeffRing::Rationals, _) => self.ring.zero(),
            _ => c,
        }
    }

    /// Normal form of c·(monomial with exponents e).
    fn normalize_term(&self, mut e: Vec<i64>, c: Scalar) -> Poly {
        let mut out = Poly::default();
        if self.ring.is_zero(&c) {
            return out;
        }
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(n) = g.order {
                e[i] = e[i].rem_euclid(n as i64);
            }
            if e[i] < 0 && !g.laurent {
                return out;
            }
            if let Some(k) = g.nilpotent {
                if e[i] >= k as i64 {
                    return out;
                }
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_odd() && e[i] >= 2 {
                let Some(sq) = self.squares.get(&i) else { return out };
                let half = e[i] / 2;
                e[i] %= 2;
                let base = self.normalize_term(e, c);
                let mut acc = base;
                for _ in 0..half {
                    acc = self.mul(&acc, sq);
                }
                return acc;
            }
        }
        self.add_raw(&mut out, e, &c);
        out
    }

    pub fn normalize(&self, p: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &p.terms {
            let t = self.normalize_term(e.clone(), c.clone());
            out = self.add(&out, &t);
        }
        out
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_raw(&mut out, e.clone(), c);
        }
        out
    }

    pub fn scale(&self, a: &Poly, c: &Scalar) -> Poly {
        let mut out = Poly::default();
        for (e, v) in &a.terms {
            self.add_raw(&mut out, e.clone(), &self.ring.mul(v, c));
        }
        out
    }

    pub fn combine(&self, a: &Poly, b: &Poly, c: i64) -> Poly {
        self.add(a, &self.scale(b, &self.ring.from_i64(c)))
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.combine(a, b, -1)
    }

    pub fn equal(&self, a: &Poly, b: &Poly) -> bool {
        self.sub(a, b).is_zero()
    }

    /// Koszul sign of moving monomial f past monomial e's later generators.
    fn mul_sign(&self, e: &[i64], f: &[i64]) -> bool {
        let mut odd = false;
        for j in 0..self.rank() {
            let dj = (f[j] * self.generators[j].degree as i64).rem_euclid(2);
            if dj == 0 {
                continue;
            }
            for i in j + 1..self.rank() {
                if (e[i] * self.generators[i].degree as i64).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
        }
        odd
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &a.terms {
            for (f, d) in &b.terms {
                let s = sgn(self.mul_sign(e, f));
                let g: Vec<i64> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                let t = self.normalize_term(g, self.ring.mul_i64(&self.ring.mul(c, d), s));
                out = self.add(&out, &t);
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// Closed-form Δ on a polynomial.
    pub fn delta(&self, p: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &p.terms {
            let d = self.delta_monomial(e);
            out = self.add(&out, &self.scale(&d, c));
        }
        out
    }

    /// Closed-form Δ on a normal monomial.
    pub fn delta_monomial(&self, e: &[i64]) -> Poly {
        let r = self.rank();
        let mono = |f: Vec<i64>, c: i64| self.monomial(&f, c);
        match &self.kind {
            PresentationKind::Cyclic { x, y, .. } => {
                let Some(y) = *y else { return Poly::default() };
                if e[y] != 1 {
                    return Poly::default();
                }
                let l = e[*x];
                let mut f = e.to_vec();
                f[y] = 0;
                f[*x] = l - 1;
                mono(f, l - 1)
            }
            PresentationKind::TensorZ { n, m } => {
                let k = (n / m) as i64;
                // generators x, t, a, b, c
                if e[4] != 1 {
                    return Poly::default();
                }
                let (i, j) = (e[0], e[1]);
                let mut f = e.to_vec();
                f[4] = 0;
                f[0] = i - 1;
                let mut fb = f.clone();
                fb[3] += 1;
                let mut fa = f;
                fa[2] += 1;
                self.add(&mono(fb, i - 1), &mono(fa, -j * k))
            }
            PresentationKind::FreeAbelian { rank } => {
                let mut out = Poly::default();
                let mut before = 0;
                for kk in 0..*rank {
                    let (xi, yi) = (2 * kk, 2 * kk + 1);
                    if e[yi] == 1 {
                        let mut f = e.to_vec();
                        f[xi] -= 1;
                        f[yi] = 0;
                        out = self.add(&out, &mono(f, sgn(before % 2 == 1) * (e[xi] - 1)));
                    }
                    before += e[yi];
                }
                out
            }
            PresentationKind::TruncatedOdd { p } => {
                // generators x, v, t
                let p = *p as i64;
                if e[1] != 1 {
                    return Poly::default();
                }
                let j = e[0];
                let mut out = Poly::default();
                if j >= 1 {
                    out = self.add(&out, &mono(vec![j - 1, 0, e[2]], j));
                }
                for i in j..p {
                    out = self.add(&out, &mono(vec![i, 0, e[2]], sgn((i + 1 + j) % 2 == 1)));
                }
                out
            }
            PresentationKind::TruncatedTwo => {
                // generators x, v, t with v² = t; the word is v^k x^l, k = 2·e_t + e_v
                let k = 2 * e[2] + e[1];
                if k == 0 {
                    return Poly::default();
                }
                let vk = self.pow(&mono(vec![0, 1, 0], 1), (k - 1) as u32);
                let onex = self.add(&self.one(), &mono(vec![1, 0, 0], 1));
                self.scale(&self.mul(&onex, &vk), &self.ring.from_i64(k))
            }
            PresentationKind::LoopSpace => {
                // generators x, z
                if e[1] != 1 {
                    return Poly::default();
                }
                mono(vec![e[0], 0], e[0])
            }
            PresentationKind::Tensor(p, q) => {
                let rp = p.rank();
                debug_assert_eq!(rp + q.rank(), r);
                let (el, er) = (&e[..rp], &e[rp..]);
                let mut out = Poly::default();
                for (f, c) in &p.delta_monomial(el).terms {
                    let mut g = f.clone();
                    g.extend_from_slice(er);
                    out = self.add(&out, &self.normalize_term(g, c.clone()));
                }
                let s = sgn(p.monomial_degree(el).rem_euclid(2) == 1);
                for (f, c) in &q.delta_monomial(er).terms {
                    let mut g = el.to_vec();
                    g.extend_from_slice(f);
                    out = self.add(&out, &self.normalize_term(g, self.ring.mul_i64(c, s)));
                }
                out
            }
        }
    }

    /// Closed-form bracket from the corollary tables, when one is stated.
    pub fn bracket_closed(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let PresentationKind::Cyclic { x, y, z, .. } = &self.kind else { return None };
        let mut out = Poly::default();
        let Some(y) = *y else { return Some(out) };
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let (l1, l2) = (e1[*x], e2[*x]);
                let kz = z.map_or(0, |z| e1[z] + e2[z]);
                let mut f = vec![0; self.rank()];
                f[*x] = l1 + l2 - 1;
                if let Some(z) = z {
                    f[*z] = kz;
                }
                let coef = match (e1[y], e2[y]) {
                    (0, 0) => continue,
                    (0, 1) => -l1,
                    (1, 0) => l2,
                    _ => {
                        f[y] = 1;
                        l2 - l1
                    }
                };
                let t = self.scale(&self.monomial(&f, coef), &self.ring.mul(c1, c2));
                out = self.add(&out, &t);
            }
        }
        Some(out)
    }

    /// {a, b} from Δ: −(−1)^{|a|}(Δ(ab) − Δ(a)b − (−1)^{|a|} aΔ(b)).
    pub fn bracket_via_delta(&self, a: &Poly, b: &Poly) -> Poly {
        crate::bv_engine::bracket_from_delta(self, a, b).expect("closed-form operations are total")
    }

    /// Ring homomorphism given by images of the generators.
    pub fn apply_hom(&self, target: &Presentation, images: &[Poly], p: &Poly) -> Poly {
        let mut out = Poly::default();
        for (e, c) in &p.terms {
            let mut t = target.one();
            for (i, k) in e.iter().enumerate() {
                if *k < 0 {
                    panic!("homomorphism on negative exponents");
                }
                t = target.mul(&t, &target.pow(&images[i], *k as u32));
            }
            let c = target.ring.from_bigint(self.ring.to_bigint(c).expect("integral coefficient"));
            out = target.add(&out, &target.scale(&t, &c));
        }
        out
    }

    /// All normal monomials of degree ≤ `max_degree`; Laurent exponents in
    /// [−laurent, laurent].
    pub fn normal_monomials(&self, max_degree: usize, laurent: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for g in &self.generators {
            let range: Vec<i64> = if let Some(n) = g.order {
                (0..n as i64).collect()
            } else if g.laurent {
                (-laurent..=laurent).collect()
            } else if let Some(k) = g.nilpotent {
                (0..k as i64).collect()
            } else if g.is_odd() {
                vec![0, 1]
            } else if g.degree == 0 {
                vec![0]
            } else {
                (0..=(max_degree / g.degree) as i64).collect()
            };
            let mut next = Vec::new();
            for e in &out {
                for &k in &range {
                    let mut f = e.clone();
                    f.push(k);
                    next.push(f);
                }
            }
            out = next;
        }
        out.into_iter()
            .filter(|e| self.monomial_degree(e) <= max_degree as i64)
            .filter(|e| !self.monomial(e, 1).is_zero() && self.monomial(e, 1).terms.contains_key(e))
            .collect()
    }

    pub fn format_monomial(&self, e: &[i64]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.generators)
            .filter(|(k, _)| **k != 0)
            .map(|(k, g)| if *k == 1 { g.name.clone() } else { format!("{}^{}", g.name, k) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    fn display_coeff(&self, c: &Scalar) -> BigInt {
        match (&self.ring, c) {
            (CoeffRing::IntegersMod(m), Scalar::Int(v)) => {
                if v * 2 > *m {
                    v - m
                } else {
                    v.clone()
                }
            }
            (_, Scalar::Int(v)) => v.clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<i64>> = p.terms.keys().collect();
        keys.sort_by_key(|e| (self.monomial_degree(e), (*e).clone()));
        let mut s = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &p.terms[e];
            let mono = self.format_monomial(e);
            let (neg, mag) = match c {
                Scalar::Rat(q) => (q.is_negative(), {
                    let a = q.abs();
                    if a.is_integer() {
                        a.numer().to_string()
                    } else {
                        format!("{}/{}", a.numer(), a.denom())
                    }
                }),
                _ => {
                    let v = self.display_coeff(c);
                    (v.is_negative(), v.abs().to_string())
                }
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono == "1" {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }

    /// Parses a polynomial such as `x^3*y*z^2`, `2 z x - y` or `x^-1*y`.
    pub fn parse(&self, input: &str) -> Result<Poly> {
        let chars: Vec<char> = input.chars().collect();
        let mut pos = 0usize;
        let skip = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<i64> {
            let start = *pos;
            if *pos < chars.len() && chars[*pos] == '-' {
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let s: String = chars[start..*pos].iter().collect();
            if s.is_empty() || s == "-" {
                *pos = start;
                None
            } else {
                s.parse().ok()
            }
        };
        let mut names: Vec<(usize, &str)> = self.generators.iter().enumerate().map(|(i, g)| (i, g.name.as_str())).collect();
        names.sort_by_key(|(_, n)| std::cmp::Reverse(n.chars().count()));
        let mut out = Poly::default();
        skip(&mut pos);
        if pos >= chars.len() {
            return Err(parse_err(input, pos, "empty polynomial"));
        }
        let mut first = true;
        while pos < chars.len() {
            skip(&mut pos);
            let mut sign = 1i64;
            if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                sign = if chars[pos] == '-' { -1 } else { 1 };
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(parse_err(input, pos, "expected '+' or '-'"));
            }
            first = false;
            let mut coeff = BigInt::from(sign);
            if pos < chars.len() && chars[pos].is_ascii_digit() {
                let v = read_int(&mut pos).ok_or_else(|| parse_err(input, pos, "bad coefficient"))?;
                coeff *= v;
                skip(&mut pos);
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                    skip(&mut pos);
                    if pos >= chars.len() || matches!(chars[pos], '+' | '-' | '*') {
                        return Err(parse_err(input, pos, "expected a factor after '*'"));
                    }
                }
            }
            let mut term = self.scale(&self.one(), &self.ring.from_bigint(coeff.clone()));
            let mut any = false;
            loop {
                skip(&mut pos);
                if pos >= chars.len() || chars[pos] == '+' || chars[pos] == '-' {
                    break;
                }
                if chars[pos] == '*' {
                    if !any {
                        return Err(parse_err(input, pos, "unexpected '*'"));
                    }
                    pos += 1;
                    skip(&mut pos);
                    if pos >= chars.len() || matches!(chars[pos], '+' | '-' | '*') {
                        return Err(parse_err(input, pos, "expected a factor after '*'"));
                    }
                    continue;
                }
                let rest: String = chars[pos..].iter().collect();
                let Some((i, name)) = names.iter().find(|(_, n)| rest.starts_with(n)) else {
                    if chars[pos] == '1' && !any {
                        pos += 1;
                        any = true;
                        continue;
                    }
                    return Err(parse_err(input, pos, "unknown generator"));
                };
                pos += name.chars().count();
                let mut k = 1i64;
                skip(&mut pos);
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip(&mut pos);
                    let paren = pos < chars.len() && chars[pos] == '(';
                    if paren {
                        pos += 1;
                    }
                    k = read_int(&mut pos).ok_or_else(|| parse_err(input, pos, "expected an exponent"))?;
                    if paren {
                        if pos < chars.len() && chars[pos] == ')' {
                            pos += 1;
                        } else {
                            return Err(parse_err(input, pos, "expected ')'"));
                        }
                    }
                }
                if k < 0 && !self.generators[*i].laurent && self.generators[*i].order.is_none() {
                    return Err(parse_err(input, pos, format!("negative power of {name}")));
                }
                let mut e = vec![0i64; self.rank()];
                e[*i] = k;
                term = self.mul(&term, &self.normalize_term(e, self.ring.one()));
                any = true;
            }
            if !any && coeff.abs().is_one() && sign == coeff.signum().to_i64().unwrap_or(1) && !chars.is_empty() {
                // a bare sign with nothing after it
                let prev = chars[..pos].iter().rev().find(|c| !c.is_whitespace());
                if matches!(prev, Some('+') | Some('-')) {
                    return Err(parse_err(input, pos, "dangling sign"));
                }
            }
            out = self.add(&out, &term);
        }
        Ok(out)
    }

    /// Names the generators as a structured document with Δ and bracket tables.
    pub fn document(&self, max_degree: usize) -> PresentationDocument {
        let generators = self.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
        let mut delta_table = Vec::new();
        for e in self.normal_monomials(max_degree, 2) {
            let m = self.monomial(&e, 1);
            delta_table.push((self.format(&m), self.format(&self.delta(&m))));
        }
        let mut bracket_table = Vec::new();
        for (i, gi) in self.generators.iter().enumerate() {
            for gj in &self.generators[i..] {
                let a = self.generator(&gi.name).expect("generator");
                let b = self.generator(&gj.name).expect("generator");
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                bracket_table.push((gi.name.clone(), gj.name.clone(), self.format(&self.bracket_via_delta(&a, &b))));
            }
        }
        PresentationDocument {
            ring: self.ring.to_string(),
            generators,
            relations: self.relations.clone(),
            hypotheses: self.hypotheses.clone(),
            delta_table,
            bracket_table,
        }
    }

    /// Copy with every generator name suffixed.
    pub fn with_suffix(&self, suffix: &str) -> Presentation {
        let mut p = self.clone();
        for g in &mut p.generators {
            g.name = format!("{}{}", g.name, suffix);
        }
        p.relations = p.relations.iter().map(|r| rename_in(r, &self.generators, suffix)).collect();
        if let PresentationKind::Tensor(a, b) = &p.kind {
            p.kind = PresentationKind::Tensor(Box::new(a.with_suffix(suffix)), Box::new(b.with_suffix(suffix)));
        }
        p
    }

    /// The small resolution used to compare with the engine.
    pub fn resolution(&self) -> Result<SmallResolution> {
        SmallResolution::for_group(&self.group()?, self.ring.clone())
    }

    /// The group whose cohomology this presents.
    pub fn group(&self) -> Result<GroupDescriptor> {
        match &self.kind {
            PresentationKind::Cyclic { n, .. } => Ok(GroupDescriptor::cyclic(*n)),
            PresentationKind::TensorZ { n, m } => Ok(GroupDescriptor::new(vec![Factor::Cyclic(*n), Factor::Cyclic(*m)])),
            PresentationKind::FreeAbelian { rank } => Ok(GroupDescriptor::free(*rank)),
            PresentationKind::Tensor(a, b) => Ok(a.group()?.product(&b.group()?)),
            _ => Err(Error::Unsupported("presentation is not attached to a group ring".into())),
        }
    }

    /// Small cochain representing a polynomial (homogeneous input).
    pub fn encode(&self, p: &Poly) -> Result<SmallValue> {
        let res = self.resolution()?;
        let alg = &res.algebra;
        let mut out = SmallValue::zero(self.degree(p));
        for (e, c) in &p.terms {
            for (md, g, k) in self.encode_monomial(e)? {
                let c2 = self.ring.mul_i64(c, k);
                out.add_at(alg, md, &alg.monomial(g, c2.clone()), &alg.ring.one());
            }
        }
        Ok(out)
    }

    /// Summands and group elements carrying a normal monomial, with integer weights.
    fn encode_monomial(&self, e: &[i64]) -> Result<Vec<(Vec<usize>, GroupElement, i64)>> {
        match &self.kind {
            PresentationKind::Cyclic { x, y, z, .. } => {
                let d = 2 * z.map_or(0, |z| e[z]) + y.map_or(0, |y| e[y]);
                Ok(vec![(vec![d as usize], GroupElement::from_slice(&[e[*x]]), 1)])
            }
            PresentationKind::FreeAbelian { rank } => {
                let md = (0..*rank).map(|k| e[2 * k + 1] as usize).collect();
                let g: Vec<i64> = (0..*rank).map(|k| e[2 * k]).collect();
                Ok(vec![(md, GroupElement::from_slice(&g), 1)])
            }
            PresentationKind::TensorZ { n, m } => {
                let k = (n / m) as i64;
                let (i, j, l, r, s) = (e[0], e[1], e[2] as usize, e[3] as usize, e[4]);
                let n = *n as i64;
                let m = *m as i64;
                if s == 0 {
                    Ok(vec![(vec![2 * l, 2 * r], GroupElement::from_slice(&[i, j]), 1)])
                } else {
                    Ok(vec![
                        (vec![2 * l + 1, 2 * r + 2], GroupElement::from_slice(&[i, j]), 1),
                        (vec![2 * l + 2, 2 * r + 1], GroupElement::from_slice(&[(i + n - 1).rem_euclid(n), (j + 1).rem_euclid(m)]), -k),
                    ])
                }
            }
            PresentationKind::Tensor(a, b) => {
                let ra = a.rank();
                let mut out = Vec::new();
                for (mda, ga, ka) in a.encode_monomial(&e[..ra])? {
                    for (mdb, gb, kb) in b.encode_monomial(&e[ra..])? {
                        let mut md = mda.clone();
                        md.extend(mdb);
                        out.push((md, GroupDescriptor::join(&ga, &gb), ka * kb));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported("presentation has no small-cochain model".into())),
        }
    }

    /// Compares closed-form Δ with the engine's Δ on one normal monomial.
    pub fn delta_agrees(&self, ctx: &BvContext, classes: &ClassSpace, m: &Poly) -> Result<bool> {
        let lhs = ctx.delta(&self.encode(m)?)?;
        let rhs = self.encode(&self.delta(m))?;
        classes.same_class(&lhs, &rhs)
    }
}

fn rename_in(s: &str, gens: &[Generator], suffix: &str) -> String {
    let mut names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.len()));
    let mut out = String::new();
    let mut rest = s;
    'outer: while !rest.is_empty() {
        for n in &names {
            if rest.starts_with(n) {
                out.push_str(n);
                out.push_str(suffix);
                rest = &rest[n.len()..];
                continue 'outer;
            }
        }
        let c = rest.chars().next().unwrap();
        out.push(c);
        rest = &rest[c.len_utf8()..];
    }
    out
}

impl BvOps for Presentation {
    type Elem = Poly;

    fn degree(&self, a: &Poly) -> usize {
        Presentation::degree(self, a)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(Presentation::mul(self, a, b))
    }

    fn delta(&self, a: &Poly) -> Result<Poly> {
        Ok(Presentation::delta(self, a))
    }

    fn combine(&self, a: &Poly, b: &Poly, c: i64) -> Poly {
        Presentation::combine(self, a, b, c)
    }

    fn zero(&self, _degree: usize) -> Poly {
        Poly::default()
    }

    fn vanishes(&self, a: &Poly) -> Result<bool> {
        Ok(a.is_zero())
    }
}

/// Serializable summary of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDocument {
    pub ring: String,
    pub generators: Vec<(String, usize)>,
    pub relations: Vec<String>,
    pub hypotheses: Vec<String>,
    pub delta_table: Vec<(String, String)>,
    pub bracket_table: Vec<(String, String, String)>,
}

impl fmt::Display for PresentationDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|(n, d)| format!("{n} (degree {d})")).collect();
        writeln!(f, "ring: {}", self.ring)?;
        writeln!(f, "generators: {}", gens.join(", "))?;
        writeln!(f, "relations: {}", self.relations.join(", "))?;
        writeln!(f, "hypotheses: {}", self.hypotheses.join("; "))?;
        writeln!(f, "delta:")?;
        for (m, d) in &self.delta_table {
            writeln!(f, "  D({m}) = {d}")?;
        }
        writeln!(f, "brackets:")?;
        for (a, b, c) in &self.bracket_table {
            writeln!(f, "  {{{a}, {b}}} = {c}")?;
        }
        Ok(())
    }
}

fn prime_of(ring: &CoeffRing) -> Option<u64> {
    match ring {
        CoeffRing::IntegersMod(m) if is_prime(m) => m.to_u64(),
        _ => None,
    }
}

/// HH^*(R[Z/n]) for R = Z, Q or F_p.
pub fn present_cyclic(ring: &CoeffRing, n: u64) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::Hypothesis(format!("cyclic group order must be at least 2, got {n}")));
    }
    let x = Generator::new("x", 0).order(n);
    match ring {
        CoeffRing::Integers => {
            let z = Generator::new("z", 2).annihilator(n);
            let mut p = Presentation::new(ring.clone(), vec![x, z], PresentationKind::Cyclic { n, x: 0, y: None, z: Some(1) });
            p.relations = vec![format!("x^{n} - 1"), format!("{n}*z")];
            p.hypotheses = vec!["R = Z is an integral domain".into(), format!("char R = 0 does not divide {n}")];
            Ok(p)
        }
        CoeffRing::Rationals => {
            let mut p = Presentation::new(ring.clone(), vec![x], PresentationKind::Cyclic { n, x: 0, y: None, z: None });
            p.relations = vec![format!("x^{n} - 1")];
            p.hypotheses = vec![format!("{n} is invertible in Q, so z = 0")];
            Ok(p)
        }
        CoeffRing::IntegersMod(_) => {
            let Some(pr) = prime_of(ring) else {
                return Err(Error::Hypothesis(format!("coefficient ring {ring} is neither Z, Q nor a prime field")));
            };
            if !n.is_multiple_of(pr) {
                let mut p = Presentation::new(ring.clone(), vec![x], PresentationKind::Cyclic { n, x: 0, y: None, z: None });
                p.relations = vec![format!("x^{n} - 1")];
                p.hypotheses = vec![format!("{pr} does not divide {n}, so z = 0")];
                return Ok(p);
            }
            let y = Generator::new("y", 1);
            let z = Generator::new("z", 2);
            let mut p = Presentation::new(ring.clone(), vec![x, y, z], PresentationKind::Cyclic { n, x: 0, y: Some(1), z: Some(2) });
            let m = n / pr;
            p.hypotheses = vec![format!("n = {n} = {m}*{pr}")];
            if pr == 2 && m % 2 == 1 {
                p.squares.insert(1, p.monomial(&[n as i64 - 2, 0, 1], 1));
                p.relations = vec![format!("x^{n} - 1"), format!("y^2 - {}", p.format_monomial(&[n as i64 - 2, 0, 1]))];
                p.hypotheses.push(format!("p = 2 and m = {m} odd"));
            } else {
                p.relations = vec![format!("x^{n} - 1"), "y^2".into()];
            }
            Ok(p)
        }
    }
}

/// HH^*(Z[Z/n] ⊗ Z[Z/m]) for m | n, generators x, t, a, b, c.
pub fn present_tensor_z(n: u64, m: u64) -> Result<Presentation> {
    if m < 2 || n < 2 || !n.is_multiple_of(m) {
        return Err(Error::Hypothesis(format!("the tensor theorem needs m | n with m, n >= 2 (n = {n}, m = {m})")));
    }
    let k = n / m;
    let gens = vec![
        Generator::new("x", 0).order(n),
        Generator::new("t", 0).order(m),
        Generator::new("a", 2).annihilator(n),
        Generator::new("b", 2).annihilator(m),
        Generator::new("c", 3).annihilator(m),
    ];
    let mut p = Presentation::new(CoeffRing::Integers, gens, PresentationKind::TensorZ { n, m });
    p.hypotheses = vec![format!("m = {m} divides n = {n}, k = {k}"), "R = Z".into()];
    p.relations = vec![format!("x^{n} - 1"), format!("t^{m} - 1"), format!("{n}*a"), format!("{m}*b"), format!("{m}*c")];
    if m.is_multiple_of(2) && k % 2 == 1 {
        let h = (m / 2) as i64;
        let sq = p.add(&p.monomial(&[n as i64 - 2, 0, 1, 2, 0], h), &p.monomial(&[n as i64 - 2, 0, 2, 1, 0], h * k as i64));
        let s = p.format(&sq);
        p.squares.insert(4, sq);
        p.relations.push(format!("c^2 - ({s})"));
        p.hypotheses.push("m even and k odd: c^2 = (m/2) x^(n-2) a b (b + k a)".into());
    } else {
        p.relations.push("c^2".into());
    }
    Ok(p)
}

/// HH^*(R[Z^r]) = R[x_i^{±1}] ⊗ Λ[y_i].
pub fn present_free_abelian(ring: &CoeffRing, rank: usize) -> Result<Presentation> {
    if rank == 0 {
        return Err(Error::Hypothesis("rank must be at least 1".into()));
    }
    let mut gens = Vec::new();
    for i in 1..=rank {
        let suffix = if rank == 1 { String::new() } else { i.to_string() };
        gens.push(Generator::new(&format!("x{suffix}"), 0).laurent());
        gens.push(Generator::new(&format!("y{suffix}"), 1));
    }
    let mut p = Presentation::new(ring.clone(), gens, PresentationKind::FreeAbelian { rank });
    p.relations = (1..=rank).map(|i| if rank == 1 { "y^2".to_string() } else { format!("y{i}^2") }).collect();
    p.hypotheses = vec!["fundamental class a = t^-1 on each factor".into()];
    Ok(p)
}

/// Tensor product of presentations with Δ = Δ^P ⊗ id + (−1)^{|left|} id ⊗ Δ^Q.
pub fn tensor_presentations(p: &Presentation, q: &Presentation) -> Result<Presentation> {
    if p.ring != q.ring {
        return Err(Error::RingMismatch(p.ring.to_string(), q.ring.to_string()));
    }
    let mut gens = p.generators.clone();
    gens.extend(q.generators.iter().cloned());
    let mut names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
    names.sort();
    names.dedup();
    if names.len() != gens.len() {
        return Err(Error::Hypothesis("tensor factors share generator names".into()));
    }
    let mut t = Presentation::new(p.ring.clone(), gens, PresentationKind::Tensor(Box::new(p.clone()), Box::new(q.clone())));
    let rp = p.rank();
    let rq = q.rank();
    for (i, sq) in &p.squares {
        let mut s = Poly::default();
        for (e, c) in &sq.terms {
            let mut f = e.clone();
            f.extend(std::iter::repeat_n(0, rq));
            s.terms.insert(f, c.clone());
        }
        t.squares.insert(*i, s);
    }
    for (i, sq) in &q.squares {
        let mut s = Poly::default();
        for (e, c) in &sq.terms {
            let mut f = vec![0; rp];
            f.extend(e.iter().copied());
            s.terms.insert(f, c.clone());
        }
        t.squares.insert(rp + i, s);
    }
    t.relations = p.relations.iter().chain(&q.relations).cloned().collect();
    t.hypotheses = p.hypotheses.iter().chain(&q.hypotheses).cloned().collect();
    t.hypotheses.push("Künneth: the tensor factors have free cohomology or the ground ring is a field".into());
    Ok(t)
}

/// HH^* of R[G] for a finitely generated abelian group, where a closed form is known.
pub fn present_fg_abelian(group: &GroupDescriptor, ring: &CoeffRing) -> Result<Presentation> {
    let f = &group.factors;
    if f.is_empty() {
        return Err(Error::Hypothesis("trivial group".into()));
    }
    if f.iter().all(|x| *x == Factor::Free) {
        return present_free_abelian(ring, f.len());
    }
    if f.len() == 1 {
        let Factor::Cyclic(n) = f[0] else { unreachable!() };
        return present_cyclic(ring, n);
    }
    if *ring == CoeffRing::Integers && f.len() == 2 {
        if let (Factor::Cyclic(n), Factor::Cyclic(m)) = (f[0], f[1]) {
            return present_tensor_z(n, m);
        }
    }
    let field = ring.is_field();
    if !field && f.iter().filter(|x| matches!(x, Factor::Cyclic(_))).count() > 0 && *ring != CoeffRing::Integers {
        return Err(Error::Hypothesis(format!("ring {ring} is not a field")));
    }
    if !field && f.iter().filter(|x| matches!(x, Factor::Cyclic(_))).count() > 1 {
        return Err(Error::Hypothesis(format!("Künneth over {ring} needs a field for several finite factors (or the pair Z/n x Z/m with m | n)")));
    }
    let mut acc: Option<Presentation> = None;
    for (i, fac) in f.iter().enumerate() {
        let p = match fac {
            Factor::Free => present_free_abelian(ring, 1)?,
            Factor::Cyclic(n) => present_cyclic(ring, *n)?,
        }
        .with_suffix(&(i + 1).to_string());
        acc = Some(match acc {
            None => p,
            Some(a) => tensor_presentations(&a, &p)?,
        });
    }
    Ok(acc.unwrap())
}

/// Outcome of an isomorphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub binomial_ok: bool,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.binomial_ok
    }
}

/// Σ_{i=k}^{p−1} C(i, k) ≡ 0 (mod p) for 0 ≤ k ≤ p − 2.
pub fn binomial_identity(p: u64) -> bool {
    (0..p.saturating_sub(1)).all(|k| {
        let s: BigInt = (k..p).map(|i| binomial(i, k)).sum();
        (s % BigInt::from(p)).is_zero()
    })
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// The truncated polynomial algebra with its transferred Δ̃.
pub fn truncated_presentation(p: u64) -> Result<Presentation> {
    if !is_prime(&BigInt::from(p)) {
        return Err(Error::Hypothesis(format!("{p} is not prime")));
    }
    let ring = CoeffRing::modular(p);
    if p == 2 {
        let gens = vec![Generator::new("x", 0).nilpotent(2), Generator::new("v", 1), Generator::new("t", 2)];
        let mut pr = Presentation::new(ring, gens, PresentationKind::TruncatedTwo);
        pr.squares.insert(1, pr.monomial(&[0, 0, 1], 1));
        pr.relations = vec!["x^2".into(), "v^2 - t".into()];
        Ok(pr)
    } else {
        let gens = vec![Generator::new("x", 0).nilpotent(p as u32), Generator::new("v", 1), Generator::new("t", 2)];
        let mut pr = Presentation::new(ring, gens, PresentationKind::TruncatedOdd { p });
        pr.relations = vec![format!("x^{p}"), "v^2".into()];
        Ok(pr)
    }
}

/// Checks φΔ̃ = Δφ for φ(x) = x − 1, φ(v) = y, φ(t) = z into HH^*(F_p[Z/p]),
/// on all normal monomials of degree ≤ `max_degree`.
pub fn truncated_poly_iso(p: u64, max_degree: usize) -> Result<IsoReport> {
    let src = truncated_presentation(p)?;
    let tgt = present_cyclic(&CoeffRing::modular(p), p)?;
    let x = tgt.generator("x")?;
    let images = vec![tgt.sub(&x, &tgt.one()), tgt.generator("y")?, tgt.generator("z")?];
    let mut failures = Vec::new();
    let monos = src.normal_monomials(max_degree, 0);
    for e in &monos {
        let m = src.monomial(e, 1);
        let lhs = src.apply_hom(&tgt, &images, &src.delta(&m));
        let rhs = tgt.delta(&src.apply_hom(&tgt, &images, &m));
        if !tgt.equal(&lhs, &rhs) {
            failures.push(format!("{}: {} vs {}", src.format(&m), tgt.format(&lhs), tgt.format(&rhs)));
        }
    }
    Ok(IsoReport { name: format!("truncated polynomial, p = {p}"), checked: monos.len(), failures, binomial_ok: binomial_identity(p) })
}

/// The loop-space presentation R[x^{±1}, z]/(z²) with Δ(z x^i) = i x^i.
pub fn loop_space_presentation(ring: &CoeffRing) -> Presentation {
    let gens = vec![Generator::new("x", 0).laurent(), Generator::new("z", 1)];
    let mut p = Presentation::new(ring.clone(), gens, PresentationKind::LoopSpace);
    p.relations = vec!["z^2".into()];
    p
}

/// Checks φΔ = Δ̃φ for φ(x) = x, φ(z) = y x, with Δ̃ the operator of R[Z]
/// transferred along a = t⁻¹ and computed by the engine.
pub fn loop_space_iso(max_exp: i64) -> Result<IsoReport> {
    let ring = CoeffRing::Integers;
    let src = loop_space_presentation(&ring);
    let tgt = present_free_abelian(&ring, 1)?;
    let res = tgt.resolution()?;
    let ctx = BvContext::with_class(res.clone(), ring.one(), -1)?;
    let classes = ClassSpace::new(&res, 2)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    let xt = tgt.generator("x")?;
    let yx = tgt.mul(&tgt.generator("y")?, &xt);
    for r in 0..=1i64 {
        for i in -max_exp..=max_exp {
            let m = src.monomial(&[i, r], 1);
            // φ(x^i z^r) = x^i (y x)^r
            let phi = |p: &crate::presentations::Poly| -> Poly {
                let mut out = Poly::default();
                for (e, c) in &p.terms {
                    let mut t = tgt.monomial(&[e[0], 0], 1);
                    if e[1] == 1 {
                        t = tgt.mul(&t, &yx);
                    }
                    out = tgt.add(&out, &tgt.scale(&t, c));
                }
                out
            };
            let lhs = tgt.encode(&phi(&src.delta(&m)))?;
            let rhs = ctx.delta(&tgt.encode(&phi(&m))?)?;
            checked += 1;
            if !classes.same_class(&lhs, &rhs)? {
                failures.push(format!("x^{i} z^{r}"));
            }
        }
    }
    Ok(IsoReport { name: "loop space".into(), checked, failures, binomial_ok: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_presentations() {
        let p = present_cyclic(&CoeffRing::modular(2), 6).unwrap();
        assert!(p.relations.iter().any(|r| r == "y^2 - x^4*z"));
        let y = p.generator("y").unwrap();
        assert_eq!(p.format(&p.pow(&y, 3)), "x^4*y*z");
        let z3 = present_cyclic(&CoeffRing::Integers, 3).unwrap();
        assert_eq!(z3.relations, vec!["x^3 - 1".to_string(), "3*z".to_string()]);
        let m = z3.parse("x^5").unwrap();
        assert_eq!(z3.format(&m), "x^2");
        let f3 = present_cyclic(&CoeffRing::modular(3), 3).unwrap();
        let m = f3.parse("z*y*x^2").unwrap();
        assert_eq!(f3.format(&f3.delta(&m)), "x*z");
    }

    #[test]
    fn tensor_z_presentation() {
        let p = present_tensor_z(4, 2).unwrap();
        assert!(p.squares.is_empty());
        let c = p.generator("c").unwrap();
        assert_eq!(p.format(&p.delta(&c)), "-x^3*b");
        let q = present_tensor_z(2, 2).unwrap();
        let c = q.generator("c").unwrap();
        assert_eq!(q.format(&q.mul(&c, &c)), "a*b^2 + a^2*b");
        let b = p.parse("3*b").unwrap();
        assert!(p.equal(&b, &p.generator("b").unwrap()));
        assert!(present_tensor_z(4, 3).is_err());
    }

    #[test]
    fn free_abelian_delta() {
        let p = present_free_abelian(&CoeffRing::Integers, 1).unwrap();
        let m = p.parse("y*x^3").unwrap();
        assert_eq!(p.format(&p.delta(&m)), "2*x^2");
        let q = present_free_abelian(&CoeffRing::Integers, 2).unwrap();
        let m = q.parse("x1*x2*y1*y2").unwrap();
        assert!(q.delta(&m).is_zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let p = present_cyclic(&CoeffRing::modular(3), 3).unwrap();
        match p.parse("x^2*q") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(p.parse("").is_err());
    }

    #[test]
    fn odd_reordering_sign() {
        let p = present_free_abelian(&CoeffRing::Integers, 2).unwrap();
        let a = p.parse("y2*y1").unwrap();
        assert_eq!(p.format(&a), "-y1*y2");
    }

    #[test]
    fn binomials() {
        for p in [2, 3, 5, 7] {
            assert!(binomial_identity(p));
        }
    }

    #[test]
    fn truncated_and_loop_space() {
        for p in [2, 3, 5] {
            let r = truncated_poly_iso(p, 6).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(loop_space_iso(4).unwrap().passed());
    }
}
