use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use hhbv::bv_engine::{bracket_from_delta, BvContext, ClassSpace, EngineOps};
use hhbv::checks::{self, CheckOutcome, SUITES};
use hhbv::coeff::CoeffRing;
use hhbv::group_ring::GroupDescriptor;
use hhbv::presentations::{present_fg_abelian, Poly, Presentation};
use hhbv::small_resolutions::{SmallResolution, SmallValue};

use crate::Common;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

pub fn run(name: &str, c: &Common) -> Result<Report> {
    match name {
        "present" => present(c),
        "delta" => delta(c),
        "bracket" => bracket(c),
        "homology" => homology(c),
        "verify" => verify(c),
        "compare" => compare(c),
        _ => bail!("unknown command {name}"),
    }
}

fn ring(c: &Common) -> Result<CoeffRing> {
    Ok(CoeffRing::parse(&c.ring)?)
}

fn group(c: &Common) -> Result<GroupDescriptor> {
    let g = c.group.as_deref().ok_or_else(|| anyhow!("this command needs --group"))?;
    Ok(GroupDescriptor::parse(g)?)
}

fn envelope(command: &str, g: Option<&GroupDescriptor>, r: &CoeffRing, degree: u32) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!("hhbv/1"));
    m.insert("command".into(), json!(command));
    if let Some(g) = g {
        m.insert("group".into(), json!(g.to_string()));
    }
    m.insert("ring".into(), json!(r.to_string()));
    m.insert("degree".into(), json!(degree.to_string()));
    m
}

struct Engine {
    ctx: BvContext,
    classes: ClassSpace,
}

fn engine(p: &Presentation, max_degree: usize) -> Result<Engine> {
    let res = p.resolution()?;
    let classes = ClassSpace::new(&res, max_degree.max(1))?;
    Ok(Engine { ctx: BvContext::new(res), classes })
}

fn monomial(p: &Presentation, c: &Common, i: usize) -> Result<Poly> {
    let s = c.monomial.get(i).ok_or_else(|| anyhow!("missing monomial: pass -m"))?;
    let m = p.parse(s)?;
    if p.degree(&m) > c.degree as usize {
        bail!("{s} has degree {} above the bound {}", p.degree(&m), c.degree);
    }
    Ok(m)
}

fn present(c: &Common) -> Result<Report> {
    let (g, r) = (group(c)?, ring(c)?);
    let p = present_fg_abelian(&g, &r)?;
    let doc = p.document(c.degree as usize);
    let mut j = envelope("present", Some(&g), &r, c.degree);
    j.insert("generators".into(), doc.generators.iter().map(|(n, d)| json!({"name": n, "degree": d.to_string()})).collect());
    j.insert("relations".into(), json!(doc.relations));
    j.insert("hypotheses".into(), json!(doc.hypotheses));
    j.insert("delta_table".into(), doc.delta_table.iter().map(|(m, d)| json!({"monomial": m, "delta": d})).collect());
    j.insert("bracket_table".into(), doc.bracket_table.iter().map(|(a, b, v)| json!({"a": a, "b": b, "bracket": v})).collect());
    Ok(Report { text: format!("group: {g}\n{doc}"), json: Value::Object(j), ok: true })
}

fn delta(c: &Common) -> Result<Report> {
    let (g, r) = (group(c)?, ring(c)?);
    let p = present_fg_abelian(&g, &r)?;
    let m = monomial(&p, c, 0)?;
    let closed = p.delta(&m);
    let agree = engine(&p, p.degree(&m)).and_then(|e| Ok(p.delta_agrees(&e.ctx, &e.classes, &m)?));
    let (checked, flag) = match &agree {
        Ok(a) => (true, Some(*a)),
        Err(_) => (false, None),
    };
    let mut text = format!("D({}) = {}\nroute: closed-form\n", p.format(&m), p.format(&closed));
    match &agree {
        Ok(a) => text.push_str(&format!("engine agrees: {a}\n")),
        Err(e) => text.push_str(&format!("engine not available: {e}\n")),
    }
    let mut j = envelope("delta", Some(&g), &r, c.degree);
    j.insert("monomial".into(), json!(p.format(&m)));
    j.insert("delta".into(), json!(p.format(&closed)));
    j.insert("route".into(), json!("closed-form"));
    j.insert("engine_checked".into(), json!(checked));
    j.insert("agree".into(), json!(flag));
    Ok(Report { text, json: Value::Object(j), ok: flag.unwrap_or(true) })
}

/// Circle-product and Δ-route brackets of two small cochains.
fn engine_brackets(e: &Engine, a: &SmallValue, b: &SmallValue, target: &SmallValue) -> (Option<bool>, Option<bool>) {
    let ops = EngineOps { ctx: &e.ctx, classes: &e.classes };
    let d = bracket_from_delta(&ops, a, b).and_then(|v| e.classes.same_class(&v, target)).ok();
    let bar = e.ctx.bracket_bar(a, b).and_then(|v| e.classes.same_class(&v, target)).ok();
    (d, bar)
}

fn closed_bracket(p: &Presentation, a: &Poly, b: &Poly) -> (Poly, &'static str) {
    match p.bracket_closed(a, b) {
        Some(v) => (v, "closed-form table"),
        None => (p.bracket_via_delta(a, b), "closed-form delta"),
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn bracket(c: &Common) -> Result<Report> {
    let (g, r) = (group(c)?, ring(c)?);
    let p = present_fg_abelian(&g, &r)?;
    let (a, b) = (monomial(&p, c, 0)?, monomial(&p, c, 1)?);
    let (value, route) = closed_bracket(&p, &a, &b);
    let (d_route, circle) = match engine(&p, p.degree(&a) + p.degree(&b)) {
        Ok(e) => match (p.encode(&a), p.encode(&b), p.encode(&value)) {
            (Ok(ea), Ok(eb), Ok(ev)) => engine_brackets(&e, &ea, &eb, &ev),
            _ => (None, None),
        },
        Err(_) => (None, None),
    };
    let text = format!(
        "{{{}, {}}} = {}\nroute: {route}\nengine agrees: {}\ncircle-product agrees: {}\n",
        p.format(&a),
        p.format(&b),
        p.format(&value),
        flag(d_route),
        flag(circle)
    );
    let mut j = envelope("bracket", Some(&g), &r, c.degree);
    j.insert("a".into(), json!(p.format(&a)));
    j.insert("b".into(), json!(p.format(&b)));
    j.insert("bracket".into(), json!(p.format(&value)));
    j.insert("route".into(), json!(route));
    j.insert("engine_checked".into(), json!(d_route.is_some()));
    j.insert("agree".into(), json!(d_route));
    j.insert("circle_agree".into(), json!(circle));
    Ok(Report { text, json: Value::Object(j), ok: d_route.unwrap_or(true) })
}

fn homology(c: &Common) -> Result<Report> {
    let (g, r) = (group(c)?, ring(c)?);
    let res = SmallResolution::for_group(&g, r.clone())?;
    let complex = res.small_cochain_complex(c.degree as usize + 1)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for i in 0..=c.degree as i64 {
        let h = complex.homology_at(i);
        let mut parts = Vec::new();
        if h.free_rank > 0 {
            parts.push(if h.free_rank == 1 { r.to_string() } else { format!("{r}^{}", h.free_rank) });
        }
        let mut tors = h.torsion.clone();
        tors.sort();
        let mut k = 0;
        while k < tors.len() {
            let mut l = k;
            while l < tors.len() && tors[l] == tors[k] {
                l += 1;
            }
            parts.push(if l - k == 1 { format!("Z/{}", tors[k]) } else { format!("(Z/{})^{}", tors[k], l - k) });
            k = l;
        }
        let shown = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        text.push_str(&format!("HH^{i} = {shown}\n"));
        rows.push(json!({
            "degree": i.to_string(),
            "free_rank": h.free_rank.to_string(),
            "torsion": tors.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        }));
    }
    let mut j = envelope("homology", Some(&g), &r, c.degree);
    j.insert("homology".into(), Value::Array(rows));
    Ok(Report { text, json: Value::Object(j), ok: true })
}

fn outcome_json(o: &CheckOutcome, suite: Option<&str>) -> Value {
    json!({
        "id": o.id.to_string(),
        "suite": suite,
        "title": o.title,
        "passed": o.passed(),
        "cases": o.cases.to_string(),
        "failures": o.failures,
    })
}

fn outcome_text(o: &CheckOutcome, scope: Option<&str>) -> String {
    let status = if o.passed() { "PASS" } else { "FAIL" };
    let id = if o.id == 0 { String::new() } else { format!("#{} ", o.id) };
    let mut s = format!("{status} {id}{} ({} cases)\n", o.title, o.cases);
    if let Some(scope) = scope.filter(|sc| *sc != o.title) {
        s.push_str(&format!("    scope: {scope}\n"));
    }
    for f in o.failures.iter().take(10) {
        s.push_str(&format!("    {f}\n"));
    }
    if o.failures.len() > 10 {
        s.push_str(&format!("    ... {} more\n", o.failures.len() - 10));
    }
    s
}

fn verify(c: &Common) -> Result<Report> {
    let r = ring(c)?;
    if c.suite.iter().any(|s| s == "list") {
        let text: String = SUITES.iter().map(|(n, id, d)| format!("{n:14} #{id:<3} {d}\n")).collect();
        let mut j = envelope("verify", None, &r, c.degree);
        j.insert("suites".into(), SUITES.iter().map(|(n, id, d)| json!({"name": n, "id": id.to_string(), "scope": d})).collect());
        return Ok(Report { text, json: Value::Object(j), ok: true });
    }
    let g = c.group.as_deref().map(GroupDescriptor::parse).transpose()?;
    let mut outcomes: Vec<(CheckOutcome, Option<&str>, Option<&str>)> = Vec::new();
    if c.suite.is_empty() {
        match &g {
            Some(g) => outcomes.push((checks::verify_presentation(g, &r, c.degree as usize)?, None, None)),
            None => {
                for (name, id, scope) in SUITES {
                    outcomes.push((checks::run(*id), Some(name), Some(scope)));
                }
            }
        }
    } else {
        for s in &c.suite {
            let Some((name, id, scope)) = SUITES.iter().find(|(n, _, _)| n == s) else {
                let names: Vec<&str> = SUITES.iter().map(|(n, _, _)| *n).collect();
                bail!("unknown suite {s}; expected one of {}", names.join(", "));
            };
            outcomes.push((checks::run(*id), Some(name), Some(scope)));
        }
    }
    let ok = outcomes.iter().all(|(o, _, _)| o.passed());
    let mut text: String = outcomes.iter().map(|(o, _, scope)| outcome_text(o, *scope)).collect();
    text.push_str(if ok { "all checks passed\n" } else { "some checks failed\n" });
    let mut j = envelope("verify", g.as_ref(), &r, c.degree);
    j.insert("results".into(), outcomes.iter().map(|(o, n, _)| outcome_json(o, *n)).collect());
    j.insert("passed".into(), json!(ok));
    Ok(Report { text, json: Value::Object(j), ok })
}

fn compare(c: &Common) -> Result<Report> {
    let (g, r) = (group(c)?, ring(c)?);
    let p = present_fg_abelian(&g, &r)?;
    let gens: Vec<(String, Poly)> =
        p.generators.iter().filter_map(|x| p.generator(&x.name).ok().filter(|v| !v.is_zero()).map(|v| (x.name.clone(), v))).collect();
    let max = gens.iter().map(|(_, v)| p.degree(v)).max().unwrap_or(0) * 2;
    let e = engine(&p, max.min(c.degree as usize).max(1))?;
    let finite = g.is_finite();
    let mut rows = Vec::new();
    let mut sign_only = 0usize;
    // Δ rows
    let mut items: Vec<Poly> = gens.iter().map(|(_, v)| v.clone()).collect();
    for m in p.normal_monomials(2.min(c.degree as usize), 1) {
        let v = p.monomial(&m, 1);
        if !items.contains(&v) && v.terms.keys().next().is_some_and(|k| k.iter().any(|x| *x != 0)) {
            items.push(v);
        }
    }
    for m in &items {
        let closed = p.delta(m);
        let small = p.delta_agrees(&e.ctx, &e.classes, m).ok();
        let bar = if finite {
            (|| -> hhbv::Result<bool> {
                let v = e.ctx.delta_direct(&p.encode(m)?)?;
                e.classes.same_class(&v, &p.encode(&closed)?)
            })()
            .ok()
        } else {
            None
        };
        rows.push((format!("D({})", p.format(m)), p.format(&closed), small, bar));
    }
    // bracket rows
    for (i, (na, a)) in gens.iter().enumerate() {
        for (nb, b) in &gens[i..] {
            if p.degree(a) + p.degree(b) > c.degree as usize {
                continue;
            }
            let (value, _) = closed_bracket(&p, a, b);
            let neg = p.sub(&p.zero(), &value);
            let (small, mut bar) = match (p.encode(a), p.encode(b), p.encode(&value)) {
                (Ok(ea), Ok(eb), Ok(ev)) => engine_brackets(&e, &ea, &eb, &ev),
                _ => (None, None),
            };
            if bar == Some(false) {
                if let (Ok(ea), Ok(eb), Ok(en)) = (p.encode(a), p.encode(b), p.encode(&neg)) {
                    if engine_brackets(&e, &ea, &eb, &en).1 == Some(true) {
                        bar = None;
                        sign_only += 1;
                    }
                }
            }
            rows.push((format!("{{{na}, {nb}}}"), p.format(&value), small, bar));
        }
    }
    let ok = rows.iter().all(|(_, _, s, b)| *s != Some(false) && *b != Some(false));
    let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(4).max(4);
    let v = rows.iter().map(|r| r.1.len()).max().unwrap_or(11).max(11);
    let mut text = format!("{:w$}  {:v$}  {:5}  {}\n", "item", "closed-form", "small", "bar");
    for (item, value, s, b) in &rows {
        text.push_str(&format!("{item:w$}  {value:v$}  {:5}  {}\n", flag(*s), flag(*b)));
    }
    if sign_only > 0 {
        text.push_str(&format!("{sign_only} circle-product bracket(s) agree only up to a global sign (shown as n/a)\n"));
    }
    text.push_str(if ok { "all routes consistent\n" } else { "routes disagree\n" });
    let mut j = envelope("compare", Some(&g), &r, c.degree);
    j.insert(
        "matrix".into(),
        rows.iter().map(|(item, value, s, b)| json!({"item": item, "closed_form": value, "small": s, "bar": b})).collect(),
    );
    j.insert("consistent".into(), json!(ok));
    j.insert("circle_sign_only".into(), json!(sign_only.to_string()));
    Ok(Report { text, json: Value::Object(j), ok })
}
