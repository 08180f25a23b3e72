//! Plain-table and JSON renderings. Every output names the complex and its
//! basis hash so coordinates can be checked against the basis they refer to.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use ttd_core::abelian::{FgAbelianGroup, GroupElement, Int};
use ttd_core::moduli::{loop_count_group, nerve_export, oracle_check, pi1_from_nerve, GroupoidModel};
use ttd_core::pairs::{Fiber, PairClass};
use ttd_core::simplicial::SimplicialComplex;

use crate::error::{CliError, Result};
use crate::{Format, Report};

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn int(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn coords(e: &GroupElement) -> Value {
    Value::Array(e.coords().iter().map(int).collect())
}

fn group(g: &FgAbelianGroup) -> Value {
    json!({
        "display": g.to_string(),
        "free_rank": g.free_rank(),
        "torsion": g.invariant_factors().iter().map(int).collect::<Vec<_>>(),
    })
}

fn class_json(p: &PairClass) -> Value {
    json!({ "c": coords(p.c()), "d": coords(p.d()), "t": coords(p.t()) })
}

fn header(out: &mut String, x: &SimplicialComplex) {
    writeln!(out, "complex: {}", x.name()).unwrap();
    writeln!(out, "basis:   {}", x.basis_hash()).unwrap();
}

pub fn homology(x: &SimplicialComplex, degree: Option<usize>, format: Format) -> String {
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => (0..=x.dimension()).collect(),
    };
    let groups: Vec<(usize, FgAbelianGroup, Vec<String>)> = degrees
        .iter()
        .map(|&k| {
            if k > x.dimension() {
                (k, FgAbelianGroup::trivial(), Vec::new())
            } else {
                let h = x.cohomology(k);
                (k, h.group().clone(), h.generator_ids())
            }
        })
        .collect();
    match format {
        Format::Json => json(&json!({
            "complex": x.name(),
            "basis": x.basis_hash(),
            "degrees": groups.iter().map(|(k, g, ids)| json!({
                "degree": k,
                "group": group(g),
                "generators": ids,
            })).collect::<Vec<_>>(),
        })),
        Format::Table => {
            let mut out = String::new();
            header(&mut out, x);
            let summary: Vec<String> = groups.iter().map(|(k, g, _)| format!("H{k}={g}")).collect();
            writeln!(out, "{}", summary.join(", ")).unwrap();
            for (k, g, ids) in &groups {
                let torsion: Vec<String> = g.invariant_factors().iter().map(|d| d.to_string()).collect();
                writeln!(
                    out,
                    "  H{k}  rank {}  torsion [{}]  generators [{}]",
                    g.free_rank(),
                    torsion.join(", "),
                    ids.join(", ")
                )
                .unwrap();
            }
            out
        }
    }
}

pub fn pairs(x: &SimplicialComplex, fiber: &Fiber, classes: &[PairClass], format: Format) -> String {
    let tq = |p: &PairClass| p.t_quotient().map(|q| q.group().to_string()).unwrap_or_default();
    match format {
        Format::Json => json(&json!({
            "complex": x.name(),
            "basis": x.basis_hash(),
            "c": coords(&fiber.c),
            "d_group": group(&fiber.d_group),
            "d_generators": fiber.d_generators.iter().map(coords).collect::<Vec<_>>(),
            "classes": classes.iter().map(|p| {
                let mut v = class_json(p);
                v["t_group"] = json!(tq(p));
                v
            }).collect::<Vec<_>>(),
        })),
        Format::Table => {
            let mut out = String::new();
            header(&mut out, x);
            let gens: Vec<String> = fiber.d_generators.iter().map(|g| g.to_string()).collect();
            writeln!(
                out,
                "c = {}, admissible d = ker(∪c) = {} on [{}]",
                fiber.c,
                fiber.d_group,
                gens.join(", ")
            )
            .unwrap();
            writeln!(out, "{} classes", classes.len()).unwrap();
            for (i, p) in classes.iter().enumerate() {
                writeln!(out, "{i:>4}  d={}  t={}  in {}", p.d(), p.t(), tq(p)).unwrap();
            }
            out
        }
    }
}

fn relative_note(model: &GroupoidModel) -> String {
    format!(
        "relative to the subgroupoid generated by words of length ≤ {} on the window of bound {}",
        model.depth(),
        model.bound()
    )
}

fn model_header(out: &mut String, model: &GroupoidModel) {
    header(out, model.base());
    let names: Vec<&str> = model.homeos().iter().map(|h| h.name()).collect();
    writeln!(out, "homeos:  [{}]", names.join(", ")).unwrap();
    writeln!(out, "({})", relative_note(model)).unwrap();
}

fn model_json(model: &GroupoidModel, report: &str, body: Value) -> String {
    let mut v = json!({
        "complex": model.base().name(),
        "basis": model.base().basis_hash(),
        "homeos": model.homeos().iter().map(|h| h.name()).collect::<Vec<_>>(),
        "bound": model.bound(),
        "depth": model.depth(),
        "scope": relative_note(model),
        "report": report,
    });
    if let (Value::Object(v), Value::Object(b)) = (&mut v, body) {
        v.extend(b);
    }
    json(&v)
}

pub fn moduli(model: &GroupoidModel, report: Report, c: Option<&GroupElement>, format: Format) -> Result<String> {
    match report {
        Report::P0 => {
            let comps = model.components()?;
            let objects = model.objects();
            Ok(match format {
                Format::Json => model_json(
                    model,
                    "p0",
                    json!({
                        "objects": objects.len(),
                        "components": comps.parts.len(),
                        "section": comps.section.iter().map(class_json).collect::<Vec<_>>(),
                        "component_sizes": comps.parts.iter().map(Vec::len).collect::<Vec<_>>(),
                        "phi": objects.iter().zip(&comps.phi).map(|(p, &k)| {
                            let mut v = class_json(p);
                            v["component"] = json!(k);
                            v
                        }).collect::<Vec<_>>(),
                    }),
                ),
                Format::Table => {
                    let mut out = String::new();
                    model_header(&mut out, model);
                    writeln!(out, "objects: {}", objects.len()).unwrap();
                    writeln!(out, "components: {}", comps.parts.len()).unwrap();
                    writeln!(out, "A(X):").unwrap();
                    for (k, (p, part)) in comps.section.iter().zip(&comps.parts).enumerate() {
                        writeln!(out, "  [{k}] {p}  (size {})", part.len()).unwrap();
                    }
                    writeln!(out, "phi:").unwrap();
                    for (p, k) in objects.iter().zip(&comps.phi) {
                        writeln!(out, "  {p} -> [{k}]").unwrap();
                    }
                    out
                }
            })
        }
        Report::P1 => {
            let p1 = model.p1_report()?;
            let gamma = model.gamma();
            Ok(match format {
                Format::Json => model_json(
                    model,
                    "p1",
                    json!({
                        "objects": p1.automorphisms.iter().map(|aut| {
                            let mut v = class_json(&aut.object);
                            v["generators"] = json!(aut.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>());
                            v
                        }).collect::<Vec<_>>(),
                        "arrows": p1.arrows.len(),
                    }),
                ),
                Format::Table => {
                    let mut out = String::new();
                    model_header(&mut out, model);
                    writeln!(out, "abstract group: {}", gamma_summary(&gamma)).unwrap();
                    for aut in &p1.automorphisms {
                        let names: Vec<&str> = aut.generators.iter().map(|g| g.name.as_str()).collect();
                        writeln!(out, "  {}  [{}]", aut.object, names.join(", ")).unwrap();
                    }
                    writeln!(out, "arrows of P1: {}", p1.arrows.len()).unwrap();
                    out
                }
            })
        }
        Report::Aut => {
            let nerve = nerve_export(model, 2)?;
            let gamma = model.gamma();
            let mut entries = Vec::new();
            for (i, x) in model.objects().iter().enumerate() {
                let aut = model.aut_group(x)?;
                let pres = pi1_from_nerve(&nerve, i)?;
                let check = oracle_check(&gamma, &pres, &aut);
                entries.push((aut, pres, check));
            }
            Ok(match format {
                Format::Json => model_json(
                    model,
                    "aut",
                    json!({
                        "objects": entries.iter().map(|(aut, pres, check)| {
                            let mut v = class_json(&aut.object);
                            v["generators"] = json!(aut.generators.iter().map(|g| json!({
                                "word": g.name,
                                "order_in_action": g.order_in_action,
                                "order_in_group": g.order_in_group,
                            })).collect::<Vec<_>>());
                            v["gauge_loops"] = json!(aut.gauge_loop_group.summary());
                            v["edge_path_presentation"] = json!(pres.to_string());
                            v["oracle"] = json!(if check.passed() { "pass" } else { "fail" });
                            v
                        }).collect::<Vec<_>>(),
                    }),
                ),
                Format::Table => {
                    let mut out = String::new();
                    model_header(&mut out, model);
                    writeln!(out, "homeomorphism loops and gauge loops are listed separately").unwrap();
                    for (aut, pres, check) in &entries {
                        writeln!(out, "{}", aut.object).unwrap();
                        for g in &aut.generators {
                            writeln!(
                                out,
                                "  {}  order on H2+H3 {}, in group {}",
                                g.name, g.order_in_action, g.order_in_group
                            )
                            .unwrap();
                        }
                        writeln!(out, "  gauge loops: {}", aut.gauge_loop_group.summary()).unwrap();
                        writeln!(out, "  edge paths:  {pres}").unwrap();
                        writeln!(out, "  oracle:      {}", if check.passed() { "pass" } else { "fail" }).unwrap();
                    }
                    out
                }
            })
        }
        Report::Loops => {
            let c = c.ok_or_else(|| CliError::input("--report loops needs --c"))?;
            let g = loop_count_group(model.base(), c)?;
            Ok(match format {
                Format::Json => model_json(
                    model,
                    "loops",
                    json!({
                        "c": coords(c),
                        "sub": group(g.sub()),
                        "quot": group(g.quot()),
                        "summary": g.summary(),
                    }),
                ),
                Format::Table => {
                    let mut out = String::new();
                    header(&mut out, model.base());
                    writeln!(out, "c = {c}").unwrap();
                    writeln!(out, "{}", g.summary()).unwrap();
                    out
                }
            })
        }
    }
}

fn gamma_summary(gamma: &ttd_core::moduli::FreeProduct) -> String {
    if gamma.rank() == 0 {
        return "trivial".into();
    }
    let factors: Vec<String> = gamma
        .names()
        .iter()
        .zip(gamma.orders())
        .map(|(n, o)| match o {
            ttd_core::io::Order::Infinite => format!("<{n}>"),
            ttd_core::io::Order::Finite(k) => format!("<{n} | {n}^{k}>"),
        })
        .collect();
    factors.join(" * ")
}
