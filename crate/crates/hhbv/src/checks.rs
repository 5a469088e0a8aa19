//! The verification suite: each criterion recomputes a published statement
//! through an independent route and reports per-case failures.

use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bar_complex::{self, connes_b, hochschild_boundary, nonidentity_tuples, BarChain, TensorChain, TensorPair};
use crate::bv_engine::{bracket_from_delta, delta_transferred, lift, seven_term_check, BvContext, ClassSpace, EngineOps};
use crate::chain_complex::{tensor_total_complex, FreeComplex, HomologySummary};
use crate::coeff::CoeffRing;
use crate::comparison::{phi_star, psi_star};
use crate::error::Result;
use crate::group_ring::{GroupAlgebra, GroupDescriptor};
use crate::presentations::{
    loop_space_iso, present_cyclic, present_fg_abelian, present_free_abelian, present_tensor_z, truncated_poly_iso, Poly,
    Presentation,
};
use crate::small_resolutions::{SmallResolution, SmallValue};

/// Result of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: u32,
    pub title: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{status} #{} {} ({} cases, {} ms)", self.id, self.title, self.cases, self.millis);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {f}"));
            if self.failures.len() > 1 {
                s.push_str(&format!(" (+{} more)", self.failures.len() - 1));
            }
        }
        s
    }
}

/// One case: Ok(None) passes, Ok(Some(msg)) fails, Err fails with the error.
type Case = Result<Option<String>>;

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Case {
    Ok(if ok { None } else { Some(msg()) })
}

fn collect(id: u32, title: &str, start: Instant, cases: Vec<Case>) -> CheckOutcome {
    let n = cases.len();
    let failures = cases
        .into_iter()
        .filter_map(|c| match c {
            Ok(None) => None,
            Ok(Some(m)) => Some(m),
            Err(e) => Some(format!("error: {e}")),
        })
        .collect();
    CheckOutcome { id, title: title.to_string(), cases: n, failures, millis: start.elapsed().as_millis() }
}

/// Names accepted by `--suite`, with the criterion each one runs.
pub const SUITES: &[(&str, u32, &str)] = &[
    ("cyclic-module", 1, "cyclic module structure over Z"),
    ("cyclic-ring", 2, "cyclic ring structure in characteristic p"),
    ("bv-domain", 3, "BV operator over integral domains"),
    ("bv-charp", 4, "BV operator in characteristic p"),
    ("brackets", 5, "bracket consistency"),
    ("tensor", 6, "tensor theorem for Z/n x Z/m"),
    ("tensor-ops", 7, "Alexander-Whitney, Eilenberg-Zilber and Connes identities"),
    ("bvkz", 8, "transferred BV operator on R[Z], grid u in {1,-1}, k in [-2,2], i in [-3,3]"),
    ("free-abelian", 9, "free abelian and mixed groups"),
    ("iso", 10, "comparison isomorphisms"),
    ("properties", 11, "property suites"),
];

pub fn suite_id(name: &str) -> Option<u32> {
    SUITES.iter().find(|(n, _, _)| *n == name).map(|(_, id, _)| *id)
}

pub fn run(id: u32) -> CheckOutcome {
    match id {
        1 => cyclic_module(),
        2 => cyclic_ring(),
        3 => bv_domain(),
        4 => bv_charp(),
        5 => brackets(),
        6 => tensor_theorem(),
        7 => tensor_operators(),
        8 => bvkz(),
        9 => free_abelian(),
        10 => isomorphisms(),
        11 => properties(),
        _ => CheckOutcome { id, title: "unknown".into(), cases: 0, failures: vec![format!("no criterion {id}")], millis: 0 },
    }
}

pub fn run_all() -> Vec<CheckOutcome> {
    (1..=11).map(run).collect()
}

const CHAR_P_GRID: [(u64, u64); 6] = [(2, 2), (2, 4), (2, 6), (3, 3), (3, 6), (5, 5)];

fn torsion(h: &HomologySummary) -> Vec<BigInt> {
    let mut t = h.torsion.clone();
    t.sort();
    t
}

fn same_homology(h: &HomologySummary, free: usize, mut tors: Vec<u64>) -> bool {
    tors.sort();
    h.free_rank == free && torsion(h) == tors.into_iter().map(BigInt::from).collect::<Vec<_>>()
}

pub fn cyclic_module() -> CheckOutcome {
    let start = Instant::now();
    let cases: Vec<Case> = (2..=8u64)
        .into_par_iter()
        .flat_map(|n| {
            let res = SmallResolution::periodic(n, CoeffRing::Integers);
            let c = match res.small_cochain_complex(7) {
                Ok(c) => c,
                Err(e) => return vec![Err(e)],
            };
            (0..=6i64)
                .map(|i| {
                    let h = c.homology_at(i);
                    let (free, tors) = match i {
                        0 => (n as usize, vec![]),
                        _ if i % 2 == 1 => (0, vec![]),
                        _ => (0, vec![n; n as usize]),
                    };
                    expect(same_homology(&h, free, tors), || format!("n = {n}, HH^{i} = {h}"))
                })
                .collect()
        })
        .collect();
    collect(1, "cyclic module structure", start, cases)
}

struct Setup {
    pres: Presentation,
    ctx: BvContext,
    classes: ClassSpace,
}

fn setup(pres: Presentation, max_degree: usize) -> Result<Setup> {
    let res = pres.resolution()?;
    let classes = ClassSpace::new(&res, max_degree)?;
    Ok(Setup { pres, ctx: BvContext::new(res), classes })
}

fn gens(p: &Presentation) -> Vec<(String, Poly)> {
    p.generators.iter().filter_map(|g| p.generator(&g.name).ok().filter(|x| !x.is_zero()).map(|x| (g.name.clone(), x))).collect()
}

/// Cup of two small cochains, tabulated on every normalized bar tuple before compressing.
fn cup_on_tables(res: &SmallResolution, u: &SmallValue, v: &SmallValue) -> Result<SmallValue> {
    let alg = &res.algebra;
    let c = bar_complex::cup(alg, &lift(res, u)?, &lift(res, v)?);
    let table = c.tabulate(alg)?;
    crate::bv_engine::compress(res, &table.to_cochain(alg))
}

pub fn cyclic_ring() -> CheckOutcome {
    let start = Instant::now();
    let cases: Vec<Case> = CHAR_P_GRID
        .par_iter()
        .flat_map(|&(p, n)| {
            let s = match present_cyclic(&CoeffRing::modular(p), n).and_then(|pr| setup(pr, 4)) {
                Ok(s) => s,
                Err(e) => return vec![Err(e)],
            };
            let mut out: Vec<Case> = Vec::new();
            let odd_m = p == 2 && (n / p) % 2 == 1;
            out.push(expect(s.pres.squares.contains_key(&1) == odd_m, || format!("(p, n) = ({p}, {n}): wrong y^2 branch")));
            let monos = s.pres.normal_monomials(2, 0);
            for (i, a) in monos.iter().enumerate() {
                for b in &monos[i..] {
                    let (a, b) = (s.pres.monomial(a, 1), s.pres.monomial(b, 1));
                    out.push((|| {
                        let expected = s.pres.mul(&a, &b);
                        let got = cup_on_tables(&s.ctx.res, &s.pres.encode(&a)?, &s.pres.encode(&b)?)?;
                        let ok = s.classes.same_class(&got, &s.pres.encode(&expected)?)?;
                        expect(ok, || format!("(p, n) = ({p}, {n}): ({})({}) != {}", s.pres.format(&a), s.pres.format(&b), s.pres.format(&expected)))
                    })());
                }
            }
            out
        })
        .collect();
    collect(2, "cyclic ring structure in characteristic p", start, cases)
}

pub fn bv_domain() -> CheckOutcome {
    let start = Instant::now();
    let mut grid = Vec::new();
    for n in 2..=6u64 {
        for ring in [CoeffRing::Integers, CoeffRing::Rationals] {
            grid.push((n, ring));
        }
    }
    let cases: Vec<Case> = grid
        .par_iter()
        .flat_map(|(n, ring)| {
            let res = SmallResolution::periodic(*n, ring.clone());
            let classes = match ClassSpace::new(&res, 6) {
                Ok(c) => c,
                Err(e) => return vec![Err(e)],
            };
            let ctx = BvContext::new(res.clone());
            let mut out: Vec<Case> = Vec::new();
            for k in 0..=3usize {
                for l in 0..*n as i64 {
                    let v = SmallValue::single(vec![2 * k], res.algebra.gen_pow(0, l, 1));
                    out.push((|| {
                        let d = ctx.delta(&v)?;
                        expect(classes.is_coboundary(&d)?, || format!("n = {n} over {ring}: D(z^{k} x^{l}) is not zero"))
                    })());
                }
            }
            if let Ok(pr) = present_cyclic(ring, *n) {
                for e in pr.normal_monomials(6, 0) {
                    let m = pr.monomial(&e, 1);
                    out.push(expect(pr.delta(&m).is_zero(), || format!("closed form D({}) != 0", pr.format(&m))));
                }
            }
            out
        })
        .collect();
    collect(3, "BV operator over integral domains", start, cases)
}

pub fn bv_charp() -> CheckOutcome {
    let start = Instant::now();
    let cases: Vec<Case> = CHAR_P_GRID
        .par_iter()
        .flat_map(|&(p, n)| {
            let s = match present_cyclic(&CoeffRing::modular(p), n).and_then(|pr| setup(pr, 5)) {
                Ok(s) => s,
                Err(e) => return vec![Err(e)],
            };
            let mut out: Vec<Case> = Vec::new();
            for k in 0..=2i64 {
                for e in 0..=1i64 {
                    for l in 0..n as i64 {
                        let m = s.pres.monomial(&[l, e, k], 1);
                        out.push((|| {
                            let ok = s.pres.delta_agrees(&s.ctx, &s.classes, &m)?;
                            expect(ok, || format!("(p, n) = ({p}, {n}): D({}) != {}", s.pres.format(&m), s.pres.format(&s.pres.delta(&m))))
                        })());
                    }
                }
            }
            out
        })
        .collect();
    collect(4, "BV operator in characteristic p", start, cases)
}

/// Failure text when the circle-product bracket is exactly the negative of
/// the bracket obtained from Δ.
pub const BRACKET_SIGN_CONFLICT: &str = "circle-product bracket is the negative of the D-route bracket";

pub fn brackets() -> CheckOutcome {
    let start = Instant::now();
    let cases: Vec<Case> = CHAR_P_GRID
        .par_iter()
        .flat_map(|&(p, n)| {
            let s = match present_cyclic(&CoeffRing::modular(p), n).and_then(|pr| setup(pr, 4)) {
                Ok(s) => s,
                Err(e) => return vec![Err(e)],
            };
            let ops = EngineOps { ctx: &s.ctx, classes: &s.classes };
            let g = gens(&s.pres);
            let mut out: Vec<Case> = Vec::new();
            for (na, a) in &g {
                for (nb, b) in &g {
                    out.push((|| {
                        let closed = s.pres.bracket_closed(a, b).expect("cyclic presentation");
                        let adb = s.pres.bracket_via_delta(a, b);
                        if !s.pres.equal(&closed, &adb) {
                            return Ok(Some(format!("({p}, {n}) {{{na}, {nb}}}: table {} vs D-route {}", s.pres.format(&closed), s.pres.format(&adb))));
                        }
                        if s.pres.degree(a) + s.pres.degree(b) == 0 {
                            return expect(closed.is_zero(), || format!("({p}, {n}) {{{na}, {nb}}} in degree -1"));
                        }
                        let (ea, eb) = (s.pres.encode(a)?, s.pres.encode(b)?);
                        let bar = s.ctx.bracket_bar(&ea, &eb)?;
                        let engine = bracket_from_delta(&ops, &ea, &eb)?;
                        let target = s.pres.encode(&closed)?;
                        if !s.classes.same_class(&engine, &target)? {
                            return Ok(Some(format!("({p}, {n}) {{{na}, {nb}}}: engine D-route disagrees with the table")));
                        }
                        if s.classes.same_class(&bar, &target)? {
                            return Ok(None);
                        }
                        let alg = s.ctx.algebra();
                        let negated = s.classes.is_coboundary(&bar.plus(alg, &target, &alg.ring.one()))?;
                        Ok(Some(if negated {
                            format!("({p}, {n}) {{{na}, {nb}}}: {BRACKET_SIGN_CONFLICT}")
                        } else {
                            format!("({p}, {n}) {{{na}, {nb}}}: circle-product bracket disagrees with the table")
                        }))
                    })());
                }
            }
            out
        })
        .collect();
    collect(5, "bracket consistency", start, cases)
}

/// Expected HH^d(Z[Z/n ⊗ Z/m]) from the Künneth display: (free rank, torsion).
pub fn kunneth_display(n: u64, m: u64, d: usize) -> (usize, Vec<u64>) {
    let nm = (n * m) as usize;
    match d {
        0 => (nm, vec![]),
        1 => (0, vec![]),
        _ if d.is_multiple_of(2) => {
            let j = d / 2;
            let mut t = vec![n; nm];
            t.extend(vec![m; nm * j]);
            (0, t)
        }
        _ => (0, vec![m; nm * (d / 2)]),
    }
}

/// Module structure read off a presentation: one summand per normal monomial.
pub fn presentation_module(p: &Presentation, d: usize) -> (usize, Vec<u64>) {
    let mut free = 0;
    let mut tors = Vec::new();
    for e in p.normal_monomials(d, 0) {
        if p.monomial_degree(&e) != d as i64 {
            continue;
        }
        let ann = p.generators.iter().zip(&e).filter(|(_, k)| **k != 0).filter_map(|(g, _)| g.annihilator.clone()).reduce(|a, b| num_integer::Integer::gcd(&a, &b));
        match ann {
            None => free += 1,
            Some(a) => tors.push(u64::try_from(a).expect("small annihilator")),
        }
    }
    tors.sort();
    (free, tors)
}

const TENSOR_GRID: [(u64, u64); 4] = [(2, 2), (4, 2), (6, 3), (6, 2)];

fn tensor_case(n: u64, m: u64) -> Vec<Case> {
    let mut out: Vec<Case> = Vec::new();
    let s = match present_tensor_z(n, m).and_then(|pr| setup(pr, 6)) {
        Ok(s) => s,
        Err(e) => return vec![Err(e)],
    };
    let pr = &s.pres;
    // (a) homology, through the small resolution of the product and through the tensor total complex
    let total = (|| -> Result<(FreeComplex, FreeComplex)> {
        let direct = s.ctx.res.small_cochain_complex(7)?;
        let ca = SmallResolution::periodic(n, CoeffRing::Integers).small_cochain_complex(7)?;
        let cb = SmallResolution::periodic(m, CoeffRing::Integers).small_cochain_complex(7)?;
        Ok((direct, tensor_total_complex(&ca, &cb)?))
    })();
    match total {
        Err(e) => out.push(Err(e)),
        Ok((direct, tot)) => {
            for d in 0..=6usize {
                let (free, tors) = kunneth_display(n, m, d);
                let h1 = direct.homology_at(d as i64);
                let h2 = tot.homology_at(d as i64);
                out.push(expect(same_homology(&h1, free, tors.clone()) && same_homology(&h2, free, tors.clone()), || {
                    format!("({n}, {m}) degree {d}: {h1} / {h2}")
                }));
                let pm = presentation_module(pr, d);
                let mut t = tors.clone();
                t.sort();
                out.push(expect(pm == (free, t), || format!("({n}, {m}) degree {d}: presentation module {pm:?}")));
            }
        }
    }
    // (b) c² branch, by the rewriter and by the bar cup
    out.push((|| {
        let c = pr.generator("c")?;
        let c2 = pr.mul(&c, &c);
        let k = n / m;
        let expected = if m.is_multiple_of(2) && k % 2 == 1 {
            pr.parse(&format!("{}*x^{}*a*b^2 + {}*x^{}*a^2*b", m / 2, n - 2, (m / 2) * k, n - 2))?
        } else {
            pr.zero()
        };
        if !pr.equal(&c2, &expected) {
            return Ok(Some(format!("({n}, {m}): c^2 = {}", pr.format(&c2))));
        }
        let ec = pr.encode(&c)?;
        let bar = s.ctx.cup(&ec, &ec)?;
        let ok = s.classes.same_class(&bar, &pr.encode(&expected)?)?;
        expect(ok, || format!("({n}, {m}): bar c^2 disagrees with {}", pr.format(&expected)))
    })());
    // (c) the five displayed values
    let boxed = [
        ("c", format!("-x^{}*b", n - 1)),
        ("x*c", "0".to_string()),
        ("t*c", format!("-x^{0}*t*b - {1}*x^{0}*t*a", n - 1, n / m)),
        ("a*c", format!("-x^{}*a*b", n - 1)),
        ("b*c", format!("-x^{}*b^2", n - 1)),
    ];
    for (src, want) in boxed {
        out.push((|| {
            let mono = pr.parse(src)?;
            let want = if want == "0" { pr.zero() } else { pr.parse(&want)? };
            if !pr.equal(&pr.delta(&mono), &want) {
                return Ok(Some(format!("({n}, {m}) closed D({src}) = {}", pr.format(&pr.delta(&mono)))));
            }
            let engine = s.ctx.delta(&pr.encode(&mono)?)?;
            let ok = s.classes.same_class(&engine, &pr.encode(&want)?)?;
            expect(ok, || format!("({n}, {m}) engine D({src}) != {}", pr.format(&want)))
        })());
    }
    // (d) random normal monomials
    let monos = pr.normal_monomials(6, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(1000 * n + m);
    for _ in 0..50 {
        let e = monos.choose(&mut rng).expect("non-empty").clone();
        let mono = pr.monomial(&e, 1);
        out.push((|| {
            let ok = pr.delta_agrees(&s.ctx, &s.classes, &mono)?;
            expect(ok, || format!("({n}, {m}) D({}) != {}", pr.format(&mono), pr.format(&pr.delta(&mono))))
        })());
    }
    out
}

pub fn tensor_theorem() -> CheckOutcome {
    let start = Instant::now();
    let cases: Vec<Case> = TENSOR_GRID.par_iter().flat_map(|&(n, m)| tensor_case(n, m)).collect();
    collect(6, "tensor theorem for Z/n x Z/m", start, cases)
}

pub fn tensor_operators() -> CheckOutcome {
    let start = Instant::now();
    let tp = match TensorPair::new(GroupAlgebra::cyclic(2, CoeffRing::Integers), GroupAlgebra::cyclic(3, CoeffRing::Integers)) {
        Ok(t) => t,
        Err(e) => return collect(7, "tensor operator identities", start, vec![Err(e)]),
    };
    let mut pairs = Vec::new();
    for d in 0..=3 {
        match tp.basis_pairs(d) {
            Ok(p) => pairs.extend(p),
            Err(e) => return collect(7, "tensor operator identities", start, vec![Err(e)]),
        }
    }
    let cases: Vec<Case> = pairs
        .par_iter()
        .map(|(x, y)| {
            let mut t = TensorChain::default();
            t.add_term(&tp.ab, (x.clone(), y.clone()), &tp.ab.ring.one());
            let ez = tp.ez(&t);
            if tp.aw(&ez) != t {
                return Ok(Some(format!("AW EZ != id on {x:?} (x) {y:?}")));
            }
            let lhs = tp.aw(&connes_b(&tp.ab, &ez));
            expect(lhs == tp.tensor_connes(&t), || format!("AW B EZ != B(x)1 + 1(x)B on {x:?} (x) {y:?}"))
        })
        .collect();
    collect(7, "tensor operator identities", start, cases)
}

pub fn bvkz() -> CheckOutcome {
    let start = Instant::now();
    let res = SmallResolution::koszul_z(CoeffRing::Integers);
    let alg = &res.algebra;
    let mut cases: Vec<Case> = Vec::new();
    for u in [1i64, -1] {
        for k in -2..=2i64 {
            for i in -3..=3i64 {
                let us = alg.ring.from_i64(u);
                cases.push((|| {
                    let d1 = delta_transferred(&res, &us, k, 1, &alg.gen_pow(0, i, 1))?;
                    let d0 = delta_transferred(&res, &us, k, 0, &alg.gen_pow(0, i, 1))?;
                    let want = alg.gen_pow(0, i - 1, i + k);
                    expect(d1 == want && d0.is_zero(), || format!("u = {u}, k = {k}, i = {i}: D(y x^{i}) = {}", alg.format(&d1, &["x"])))
                })());
            }
        }
    }
    collect(8, "transferred BV operator on R[Z]", start, cases)
}

pub fn free_abelian() -> CheckOutcome {
    let start = Instant::now();
    let mut cases: Vec<Case> = Vec::new();
    match present_free_abelian(&CoeffRing::Integers, 2).and_then(|p| setup(p, 2)) {
        Err(e) => cases.push(Err(e)),
        Ok(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            for _ in 0..30 {
                let e: Vec<i64> = (0..4).map(|i| if i % 2 == 0 { rng.gen_range(-3..=3) } else { rng.gen_range(0..=1) }).collect();
                let c: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                let m = s.pres.monomial(&e, c);
                cases.push((|| {
                    let ok = s.pres.delta_agrees(&s.ctx, &s.classes, &m)?;
                    expect(ok, || format!("Z^2: D({}) != {}", s.pres.format(&m), s.pres.format(&s.pres.delta(&m))))
                })());
            }
        }
    }
    let mixed = GroupDescriptor::parse("Z x Z/2").and_then(|g| present_fg_abelian(&g, &CoeffRing::modular(2))).and_then(|p| setup(p, 4));
    match mixed {
        Err(e) => cases.push(Err(e)),
        Ok(s) => {
            for e in s.pres.normal_monomials(4, 3) {
                let m = s.pres.monomial(&e, 1);
                cases.push((|| {
                    let ok = s.pres.delta_agrees(&s.ctx, &s.classes, &m)?;
                    expect(ok, || format!("Z x Z/2: D({}) != {}", s.pres.format(&m), s.pres.format(&s.pres.delta(&m))))
                })());
            }
        }
    }
    collect(9, "free abelian and mixed groups", start, cases)
}

pub fn isomorphisms() -> CheckOutcome {
    let start = Instant::now();
    let mut cases: Vec<Case> = Vec::new();
    for p in [2, 3, 5] {
        cases.push(truncated_poly_iso(p, 6).map(|r| if r.passed() { None } else { Some(format!("{}: {:?}", r.name, r.failures)) }));
    }
    cases.push(loop_space_iso(4).map(|r| if r.passed() { None } else { Some(format!("{}: {:?}", r.name, r.failures)) }));
    collect(10, "comparison isomorphisms", start, cases)
}

/// Presentations covered by the Δ∘Δ and seven-term sweeps.
pub fn presentation_zoo() -> Vec<Presentation> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.extend(present_cyclic(&CoeffRing::Integers, n));
        out.extend(present_cyclic(&CoeffRing::Rationals, n));
        for p in [2, 3, 5] {
            out.extend(present_cyclic(&CoeffRing::modular(p), n));
        }
    }
    for (n, m) in TENSOR_GRID {
        out.extend(present_tensor_z(n, m));
    }
    out.extend(present_free_abelian(&CoeffRing::Integers, 1));
    out.extend(present_free_abelian(&CoeffRing::Integers, 2));
    for (g, p) in [("Z x Z/2", 2), ("Z/3 x Z/3", 3), ("Z/2 x Z/4", 2)] {
        if let Ok(gd) = GroupDescriptor::parse(g) {
            out.extend(present_fg_abelian(&gd, &CoeffRing::modular(p)));
        }
    }
    out
}

fn bar_chain_cases(n: u64, degree: usize) -> Vec<Case> {
    let alg = GroupAlgebra::cyclic(n, CoeffRing::Integers);
    let tuples = match nonidentity_tuples(&alg.group, degree) {
        Ok(t) => t,
        Err(e) => return vec![Err(e)],
    };
    let mut out = Vec::new();
    for t in tuples {
        for a in 0..n as i64 {
            let x = BarChain::basis(&alg, t.clone(), alg.group.element(&[a]));
            let bb = hochschild_boundary(&alg, &hochschild_boundary(&alg, &x));
            let cc = connes_b(&alg, &connes_b(&alg, &x));
            out.push(expect(bb.is_zero() && cc.is_zero(), || format!("Z/{n}: b^2 or B^2 non-zero on {t:?}")));
        }
    }
    out
}

pub fn properties() -> CheckOutcome {
    let start = Instant::now();
    let mut cases: Vec<Case> = Vec::new();
    // d² = 0 on the small cochain and chain complexes (checked on construction)
    for g in ["Z/2", "Z/5", "Z/4 x Z/2", "Z/2 x Z/3", "Z/2 x Z/2 x Z/2"] {
        for ring in [CoeffRing::Integers, CoeffRing::modular(2)] {
            cases.push((|| {
                let res = SmallResolution::for_group(&GroupDescriptor::parse(g)?, ring.clone())?;
                res.small_cochain_complex(6)?;
                res.small_chain_complex(6)?;
                Ok(None)
            })());
        }
    }
    // b² = 0 and B² = 0 on basis chains
    for n in [2u64, 3, 4] {
        for d in 0..=3 {
            cases.extend(bar_chain_cases(n, d));
        }
    }
    // ψ̄*φ̄* = id
    for n in 2..=6u64 {
        let res = SmallResolution::periodic(n, CoeffRing::Integers);
        for r in 0..=5 {
            for l in 0..n as i64 {
                let a = res.algebra.gen_pow(0, l, 1);
                cases.push((|| {
                    let back = psi_star(&res, &phi_star(&res, r, &a)?)?;
                    expect(back == a, || format!("Z/{n}: psi* phi* != id in degree {r}"))
                })());
            }
        }
    }
    // Δ∘Δ = 0 and the seven-term identity on every presentation
    let zoo = presentation_zoo();
    let per: Vec<Vec<Case>> = zoo
        .par_iter()
        .map(|p| {
            let mut out: Vec<Case> = Vec::new();
            for e in p.normal_monomials(6, 2) {
                let m = p.monomial(&e, 1);
                let dd = p.delta(&p.delta(&m));
                out.push(expect(dd.is_zero(), || format!("DD({}) = {}", p.format(&m), p.format(&dd))));
            }
            let g = gens(p);
            for (_, a) in &g {
                for (_, b) in &g {
                    for (_, c) in &g {
                        out.push(seven_term_check(p, a, b, c).map(|(ok, r)| {
                            if ok {
                                None
                            } else {
                                Some(format!("seven-term fails on ({}, {}, {}): {}", p.format(a), p.format(b), p.format(c), p.format(&r)))
                            }
                        }));
                    }
                }
            }
            out
        })
        .collect();
    cases.extend(per.into_iter().flatten());
    // engine Δ∘Δ = 0 and seven-term on generator triples
    let engine: Vec<Vec<Case>> = CHAR_P_GRID
        .par_iter()
        .map(|&(p, n)| {
            let s = match present_cyclic(&CoeffRing::modular(p), n).and_then(|pr| setup(pr, 6)) {
                Ok(s) => s,
                Err(e) => return vec![Err(e)],
            };
            let ops = EngineOps { ctx: &s.ctx, classes: &s.classes };
            let mut out: Vec<Case> = Vec::new();
            for e in s.pres.normal_monomials(5, 0) {
                let m = s.pres.monomial(&e, 1);
                out.push((|| {
                    let v = s.pres.encode(&m)?;
                    let dd = s.ctx.delta(&s.ctx.delta(&v)?)?;
                    expect(s.classes.is_coboundary(&dd)?, || format!("({p}, {n}) engine DD({}) != 0", s.pres.format(&m)))
                })());
            }
            let g: Vec<SmallValue> = gens(&s.pres).iter().filter_map(|(_, x)| s.pres.encode(x).ok()).collect();
            for a in &g {
                for b in &g {
                    for c in &g {
                        out.push(seven_term_check(&ops, a, b, c).map(|(ok, _)| if ok { None } else { Some(format!("({p}, {n}) engine seven-term fails")) }));
                    }
                }
            }
            out
        })
        .collect();
    cases.extend(engine.into_iter().flatten());
    collect(11, "property suites", start, cases)
}

/// Checks for one (group, ring) pair: closed form against engine on all
/// normal monomials of degree ≤ `degree`, Δ∘Δ = 0 and the seven-term identity.
pub fn verify_presentation(group: &GroupDescriptor, ring: &CoeffRing, degree: usize) -> Result<CheckOutcome> {
    let start = Instant::now();
    let pres = present_fg_abelian(group, ring)?;
    let s = setup(pres, degree)?;
    let monos = s.pres.normal_monomials(degree, 2);
    let mut cases: Vec<Case> = monos
        .par_iter()
        .map(|e| {
            let m = s.pres.monomial(e, 1);
            let ok = s.pres.delta_agrees(&s.ctx, &s.classes, &m)?;
            let dd = s.pres.delta(&s.pres.delta(&m)).is_zero();
            expect(ok && dd, || format!("D({}) = {}", s.pres.format(&m), s.pres.format(&s.pres.delta(&m))))
        })
        .collect();
    let g = gens(&s.pres);
    for (_, a) in &g {
        for (_, b) in &g {
            for (_, c) in &g {
                cases.push(seven_term_check(&s.pres, a, b, c).map(|(ok, _)| if ok { None } else { Some("seven-term".into()) }));
            }
        }
    }
    Ok(collect(0, &format!("{group} over {ring}"), start, cases))
}
