//! End-to-end acceptance run: one `[PASS]`/`[FAIL]` line per criterion.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use ttd_core::abelian::{cokernel, FgAbelianGroup, GroupElement, Int, IntegerMatrix};
use ttd_core::corpus;
use ttd_core::gysin::{gysin_group, pushforward, BundleData, FluxElement, GysinGroup};
use ttd_core::io::{ComplexDocument, HomeoDocument};
use ttd_core::moduli::{
    homeo_act, loop_count_group, nerve_export, oracle_check, pi1_from_nerve, GroupoidModel, HomeoData,
};
use ttd_core::pairs::{gauge_act, pair_class, restrict, t_dual, t_quotient, window, PairClass};
use ttd_core::simplicial::{cup, load_complex, mapping_torus, SimplicialComplex, SimplicialMap};
use ttd_oracles::{lens_space, naive_cohomology, orbits, random_simplicial_map, shuffled, Shape};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn arc(doc: ComplexDocument) -> Arc<SimplicialComplex> {
    Arc::new(load_complex(&doc).unwrap())
}

fn class(x: &SimplicialComplex, k: usize, v: &[i64]) -> GroupElement {
    x.cohomology(k).group().element_i64(v).unwrap()
}

fn shapes(x: &SimplicialComplex) -> Vec<Shape> {
    (0..=x.dimension())
        .map(|k| {
            let g = x.cohomology(k);
            let g = g.group();
            (
                g.free_rank(),
                g.invariant_factors()
                    .iter()
                    .map(|v| i64::try_from(v).unwrap())
                    .collect(),
            )
        })
        .collect()
}

fn total(g: &GysinGroup) -> Shape {
    let (s, q) = (g.sub(), g.quot());
    let torsion = s
        .invariant_factors()
        .iter()
        .map(|v| i64::try_from(v).unwrap())
        .collect();
    (s.free_rank() + q.free_rank(), torsion)
}

/// `T^3` with its axis classes in `H^1`.
struct Torus3 {
    x: Arc<SimplicialComplex>,
    e: Vec<GroupElement>,
}

impl Torus3 {
    fn new() -> Self {
        let x = arc(corpus::torus3());
        let h1 = x.cohomology(1);
        let e = (0..3)
            .map(|i| h1.class_of(&corpus::grid_axis_cocycle(&x, 3, i).unwrap()).unwrap())
            .collect();
        Torus3 { x, e }
    }

    fn e2(&self, i: usize, j: usize) -> GroupElement {
        let h1 = self.x.cohomology(1);
        let a = h1.representative(&self.e[i]).unwrap();
        let b = h1.representative(&self.e[j]).unwrap();
        self.x.cohomology(2).class_of(&cup(&self.x, &a, &b).unwrap()).unwrap()
    }

    fn h1_box(&self, r: i64) -> Vec<GroupElement> {
        let mut out = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    out.push(class(&self.x, 1, &[a, b, c]));
                }
            }
        }
        out
    }
}

fn cohomology_exactness() -> Outcome {
    let z = (1, vec![]);
    let zero = (0, vec![]);
    let cases: Vec<(ComplexDocument, Vec<Shape>)> = vec![
        (corpus::sphere(), vec![z.clone(), zero.clone(), z.clone()]),
        (corpus::torus7(), vec![z.clone(), (2, vec![]), z.clone()]),
        (corpus::rp2(), vec![z.clone(), zero, (0, vec![2])]),
        (corpus::torus3(), vec![z.clone(), (3, vec![]), (3, vec![]), z]),
    ];
    for (doc, expected) in &cases {
        let x = load_complex(doc).unwrap();
        ensure!(&shapes(&x) == expected, "{}: {:?}", doc.name, shapes(&x));
        let reference = naive_cohomology(doc);
        ensure!(&reference == expected, "{} reference: {reference:?}", doc.name);
    }
    Ok(format!("{} complexes", cases.len()))
}

fn gysin_vs_direct() -> Outcome {
    let x = arc(corpus::sphere());
    let c = class(&x, 2, &[2]);
    let direct = naive_cohomology(&corpus::rp3());
    let expected: Vec<Shape> = vec![(1, vec![]), (0, vec![]), (0, vec![2]), (1, vec![])];
    ensure!(direct == expected, "direct RP3: {direct:?}");
    let mut pieces = Vec::new();
    for k in 0..=3 {
        let g = gysin_group(&x, &c, k).unwrap();
        // quot is a subgroup of a free group here, so the extension splits
        ensure!(g.quot().torsion_rank() == 0, "degree {k}: torsion in quot");
        ensure!(total(&g) == direct[k], "degree {k}: {} vs {:?}", g.summary(), direct[k]);
        pieces.push(g.summary());
    }
    Ok(pieces.join("; "))
}

fn orbit_quotient() -> Outcome {
    let t = Torus3::new();
    let c = t.e2(0, 1).scale(&Int::from(2));
    let d = t.x.cohomology(2).group().zero();
    let tq = t_quotient(&t.x, &c, &d).unwrap();
    ensure!(tq.group() == &FgAbelianGroup::cyclic(2), "T(c,d) = {}", tq.group());

    let reps: Vec<i64> = (-4..=4).collect();
    let gauges = t.h1_box(4);

    // fluxes on the trivial bundle with π_!(H) = c, moved by gauge_act
    let zero_bundle = BundleData::new(t.x.clone(), d.clone()).unwrap();
    let flux = |w: i64| FluxElement::from_parts(zero_bundle.clone(), &c, &class(&t.x, 3, &[w])).unwrap();
    let gauge_orbits = orbits(&reps, |&w| {
        let h = flux(w);
        let moved: Vec<FluxElement> = gauges.iter().map(|a| gauge_act(&h, a).unwrap()).collect();
        reps.iter().copied().filter(|&v| moved.contains(&flux(v))).collect()
    });
    ensure!(gauge_orbits.len() == 2, "{} gauge orbits", gauge_orbits.len());

    // raw H^3 representatives of fluxes on E_c, identified along c ∪ H^1
    let shifts: BTreeSet<i64> = gauges
        .iter()
        .map(|a| t.x.cup_table(2, 1).product(&c, a).unwrap().coords_i64().unwrap()[0])
        .collect();
    let raw_orbits = orbits(&reps, |w| shifts.iter().map(|s| w + s).collect());
    ensure!(raw_orbits.len() == 2, "{} raw orbits", raw_orbits.len());

    // symbolic classes are constant on orbits and separate them
    let bundle = BundleData::new(t.x.clone(), c.clone()).unwrap();
    let mut seen = BTreeSet::new();
    for orbit in &raw_orbits {
        let classes: BTreeSet<GroupElement> = orbit.iter().map(|w| tq.class_of(&[Int::from(*w)]).unwrap()).collect();
        ensure!(classes.len() == 1, "orbit {orbit:?} splits into {classes:?}");
        let pairs: BTreeSet<String> = orbit
            .iter()
            .map(|&w| {
                pair_class(&FluxElement::from_parts(bundle.clone(), &d, &class(&t.x, 3, &[w])).unwrap())
                    .unwrap()
                    .to_string()
            })
            .collect();
        ensure!(pairs.len() == 1, "orbit {orbit:?} has pair classes {pairs:?}");
        seen.extend(pairs);
    }
    ensure!(seen.len() == 2, "{} distinct pair classes", seen.len());
    Ok("T(c,d) = Z/2, 2 gauge orbits, 2 raw orbits".into())
}

fn t_duality() -> Outcome {
    let mut counts = Vec::new();
    for doc in [corpus::sphere(), corpus::torus7(), corpus::torus3()] {
        let x = arc(doc);
        let classes = window(&x, 3).unwrap();
        let mut checked_pairs = BTreeSet::new();
        for p in &classes {
            let q = t_dual(p);
            ensure!(&t_dual(&q) == p, "{p}: t_dual twice gives {}", t_dual(&q));
            let rebuilt = PairClass::from_t(x.clone(), p.d().clone(), p.c().clone(), p.t().clone()).unwrap();
            ensure!(rebuilt == q, "{p}: dual not in T(d,c)");
            if checked_pairs.insert((p.c().clone(), p.d().clone())) {
                let (a, b) = (
                    t_quotient(&x, p.c(), p.d()).unwrap(),
                    t_quotient(&x, p.d(), p.c()).unwrap(),
                );
                ensure!(a.relations() == b.relations(), "{p}: T(c,d) ≠ T(d,c)");
            }
        }
        let n = x.cohomology(2).group().ngens();
        for k in -3i64..=3 {
            for i in 0..n {
                let mut v = vec![0; n];
                v[i] = k;
                let zero = x.cohomology(2).group().zero();
                let kd = class(&x, 2, &v);
                let p = PairClass::from_t(
                    x.clone(),
                    zero.clone(),
                    kd.clone(),
                    t_quotient(&x, &zero, &kd).unwrap().group().zero(),
                )
                .unwrap();
                let q = t_dual(&p);
                ensure!(q.c() == &kd && q.d().is_zero() && q.t().is_zero(), "{p} ↦ {q}");
            }
        }
        counts.push(format!("{} {}", x.name(), classes.len()));
    }
    Ok(format!("bound 3 windows: {}", counts.join(", ")))
}

fn gauge_laws() -> Outcome {
    let t = Torus3::new();
    let mut rng = StdRng::seed_from_u64(7);
    let mut v = |n: usize, r: i64| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-r..=r)).collect() };
    for i in 0..1000 {
        let c = class(&t.x, 2, &v(3, 3));
        let bundle = BundleData::new(t.x.clone(), c).unwrap();
        let g = bundle.gysin(3).unwrap();
        let q = g.quot().element_i64(&v(g.quot().ngens(), 4)).unwrap();
        let s = g.sub().element_i64(&v(g.sub().ngens(), 4)).unwrap();
        let h = FluxElement::new(bundle, q, s).unwrap();
        let a = class(&t.x, 1, &v(3, 5));
        let b = class(&t.x, 1, &v(3, 5));
        let ha = gauge_act(&h, &a).unwrap();
        ensure!(
            gauge_act(&ha, &b).unwrap() == gauge_act(&h, &a.add(&b).unwrap()).unwrap(),
            "triple {i}: composition"
        );
        ensure!(
            pushforward(&ha).unwrap() == pushforward(&h).unwrap(),
            "triple {i}: π_! changed"
        );
        ensure!(
            gauge_act(&h, &t.x.cohomology(1).group().zero()).unwrap() == h,
            "triple {i}: identity"
        );
    }
    Ok("1000 triples over T3".into())
}

fn model(x: &Arc<SimplicialComplex>, bound: u64, docs: &[HomeoDocument]) -> GroupoidModel {
    let mut m = GroupoidModel::new(x.clone(), bound).unwrap();
    for d in docs {
        m.register_homeo(HomeoData::from_document(d, x.clone()).unwrap())
            .unwrap();
    }
    m
}

/// Orbits of the window under the registered homeomorphisms, by search.
fn brute_force_components(m: &GroupoidModel) -> usize {
    let objects = m.objects().to_vec();
    orbits(&objects, |p| {
        m.homeos().iter().map(|h| homeo_act(h, p).unwrap()).collect()
    })
    .len()
}

fn moduli_components() -> Outcome {
    let s2 = arc(corpus::octahedron());
    let m = model(&s2, 1, &[corpus::antipodal_homeo()]);
    let comps = m.components().unwrap();
    ensure!(comps.parts.len() == 5, "S2: {} components", comps.parts.len());
    ensure!(comps.section.len() == 5, "|A(X)| = {}", comps.section.len());
    let image: BTreeSet<usize> = comps.phi.iter().copied().collect();
    ensure!(image.len() == 5, "φ hits {} components", image.len());
    for (i, p) in m.objects().iter().enumerate() {
        ensure!(comps.parts[comps.phi[i]].contains(&i), "φ({p}) is not its component");
    }
    let brute = brute_force_components(&m);
    ensure!(brute == 5, "S2 brute force: {brute}");

    let t2 = arc(corpus::torus7());
    let m = model(&t2, 2, &corpus::torus_sl2_homeos());
    let comps = m.components().unwrap();
    ensure!(m.objects().len() == 25, "T2: {} objects", m.objects().len());
    ensure!(
        comps.parts.len() == 25 && comps.parts.iter().all(|p| p.len() == 1),
        "T2: {} components",
        comps.parts.len()
    );
    let brute = brute_force_components(&m);
    ensure!(brute == 25, "T2 brute force: {brute}");
    Ok("S2+antipodal: 5 components; T2+SL(2,Z): 25 singletons".into())
}

fn pi1_oracle() -> Outcome {
    let s2 = arc(corpus::octahedron());
    let t2 = arc(corpus::torus7());
    let inv = corpus::torus_involutions();
    let sl2 = corpus::torus_sl2_homeos();
    let three: Vec<HomeoDocument> = vec![inv[0].clone(), inv[1].clone(), sl2[0].clone()];
    let models = [
        ("S2 none", model(&s2, 1, &[])),
        ("S2 antipodal", model(&s2, 2, &[corpus::antipodal_homeo()])),
        ("T2 N", model(&t2, 2, &inv[..1])),
        ("T2 N,R", model(&t2, 2, &inv)),
        ("T2 S,T", model(&t2, 2, &sl2)),
        ("T2 N,R,S", model(&t2, 1, &three)),
    ];
    let mut checked = 0;
    for (name, m) in &models {
        let nerve = nerve_export(m, 2).unwrap();
        ensure!(nerve.horns_fill(), "{name}: composable pairs without 2-cells");
        for (i, x) in m.objects().iter().enumerate() {
            let pres = pi1_from_nerve(&nerve, i).unwrap();
            let aut = m.aut_group(x).unwrap();
            let check = oracle_check(&nerve.gamma, &pres, &aut);
            ensure!(
                check.passed(),
                "{name} at {x}: {pres} vs {:?}: {check:?}",
                aut.generators.iter().map(|g| &g.name).collect::<Vec<_>>()
            );
            checked += 1;
        }
    }
    Ok(format!("{} models, {checked} objects", models.len()))
}

fn loop_groups() -> Outcome {
    let x = arc(corpus::sphere());
    let mut parts = Vec::new();
    for n in 0..=3i64 {
        let c = class(&x, 2, &[n]);
        let g = loop_count_group(&x, &c).unwrap();
        let expected_sub = if n == 0 {
            FgAbelianGroup::free(1)
        } else if n == 1 {
            FgAbelianGroup::trivial()
        } else {
            FgAbelianGroup::cyclic(n)
        };
        ensure!(
            g.sub() == &expected_sub && g.quot().is_trivial(),
            "n = {n}: {}",
            g.summary()
        );
        // H^2 of L(n,1), or of S^2 × S^1 for n = 0
        ensure!(
            total(&g) == lens_space(n)[2],
            "n = {n}: lens oracle {:?}",
            lens_space(n)[2]
        );
        parts.push(g.summary());
    }
    let kunneth = x.cohomology(2).group().free_rank() + x.cohomology(1).group().free_rank();
    ensure!(
        total(&loop_count_group(&x, &class(&x, 2, &[0])).unwrap()).0 == kunneth,
        "Künneth rank"
    );
    Ok(parts.join("; "))
}

fn restriction() -> Outcome {
    let s2 = arc(corpus::octahedron());
    let eq = arc(corpus::equator());
    let incl = SimplicialMap::from_document(&corpus::equator_inclusion(), eq.clone(), s2.clone()).unwrap();
    let trivial = PairClass::basepoint(eq).unwrap();
    let classes = window(&s2, 3).unwrap();
    for p in &classes {
        let r = restrict(p, &incl).unwrap();
        ensure!(r == trivial, "{p} restricts to {r}");
    }
    Ok(format!("{} classes", classes.len()))
}

fn mapping_tori() -> Outcome {
    let s1 = arc(corpus::circle(4));
    let torus = mapping_torus(&SimplicialMap::identity(s1.clone())).unwrap();
    ensure!(
        torus.cohomology(1).group() == &FgAbelianGroup::free(2),
        "T_id: H1 = {}",
        torus.cohomology(1).group()
    );
    let r = SimplicialMap::from_document(&corpus::circle_reflection_map(), s1.clone(), s1).unwrap();
    let klein = mapping_torus(&r).unwrap();
    ensure!(
        klein.cohomology(2).group() == &FgAbelianGroup::cyclic(2),
        "T_r: H2 = {}",
        klein.cohomology(2).group()
    );
    Ok("H1(T_id) = Z^2, H2(T_r) = Z/2".into())
}

fn generators(x: &SimplicialComplex, k: usize) -> Vec<GroupElement> {
    let g = x.cohomology(k);
    (0..g.group().ngens()).map(|i| g.group().generator(i)).collect()
}

/// Cokernels of `H^1 ⊗ H^p → H^{p+1}`.
fn cup_invariants(x: &SimplicialComplex) -> Vec<String> {
    (1..x.dimension())
        .map(|p| {
            let t = x.cup_table(1, p);
            let target = x.cohomology(p + 1);
            let mut cols = Vec::new();
            for a in generators(x, 1) {
                for b in generators(x, p) {
                    cols.push(t.product(&a, &b).unwrap().into_coords());
                }
            }
            let products = IntegerMatrix::from_columns(&cols, target.group().ngens()).unwrap();
            cokernel(&target.group().relation_matrix().hstack(&products).unwrap()).to_string()
        })
        .collect()
}

fn cup_laws() -> Outcome {
    for doc in [corpus::torus7(), corpus::rp2(), corpus::torus3(), corpus::rp3()] {
        let x = load_complex(&doc).unwrap();
        let n = x.dimension();
        for p in 0..=n {
            for q in 0..=(n - p) {
                for a in generators(&x, p) {
                    for b in generators(&x, q) {
                        let ab = x.cup_table(p, q).product(&a, &b).unwrap();
                        let ba = x.cup_table(q, p).product(&b, &a).unwrap();
                        let expected = if p * q % 2 == 0 { ba } else { ba.neg() };
                        ensure!(ab == expected, "{}: degrees {p},{q} not graded commutative", doc.name);
                    }
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(11);
    let docs = [
        corpus::sphere(),
        corpus::torus7(),
        corpus::rp2(),
        corpus::octahedron(),
        corpus::circle(4),
    ];
    let xs: Vec<Arc<SimplicialComplex>> = docs.iter().map(|d| arc(d.clone())).collect();
    let mut maps = Vec::new();
    for k in 1..7 {
        let doc = corpus::torus7_affine_map(k, rng.gen_range(0..7));
        maps.push(SimplicialMap::from_document(&doc, xs[1].clone(), xs[1].clone()).unwrap());
    }
    maps.push(SimplicialMap::from_document(&corpus::octahedron_antipodal_map(), xs[3].clone(), xs[3].clone()).unwrap());
    while maps.len() < 200 {
        let (i, j) = (rng.gen_range(0..docs.len()), rng.gen_range(0..docs.len()));
        let doc = random_simplicial_map(&mut rng, &docs[i], &docs[j]);
        maps.push(SimplicialMap::from_document(&doc, xs[i].clone(), xs[j].clone()).unwrap());
    }
    for f in &maps {
        let (y, x) = (f.target(), f.source());
        let top = y.dimension().min(x.dimension());
        for p in 0..=top {
            for q in 0..=(top - p) {
                let (fp, fq, fpq) = (
                    f.induced_map(p).unwrap(),
                    f.induced_map(q).unwrap(),
                    f.induced_map(p + q).unwrap(),
                );
                for a in generators(y, p) {
                    for b in generators(y, q) {
                        let ab = y.cup_table(p, q).product(&a, &b).unwrap();
                        let lhs = x.cohomology(p + q).element(fpq.mul_vec(ab.coords()).unwrap()).unwrap();
                        let fa = x.cohomology(p).element(fp.mul_vec(a.coords()).unwrap()).unwrap();
                        let fb = x.cohomology(q).element(fq.mul_vec(b.coords()).unwrap()).unwrap();
                        let rhs = x.cup_table(p, q).product(&fa, &fb).unwrap();
                        ensure!(lhs == rhs, "{} -> {}: f*(ab) ≠ f*a f*b", x.name(), y.name());
                    }
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(5);
    let mut reorderings = 0;
    for doc in [corpus::torus7(), corpus::rp2(), corpus::torus3(), corpus::rp3()] {
        let x = load_complex(&doc).unwrap();
        let (reference, cups) = (shapes(&x), cup_invariants(&x));
        for _ in 0..20 {
            let y = load_complex(&shuffled(&mut rng, &doc)).unwrap();
            ensure!(shapes(&y) == reference, "{}: shapes changed under reordering", doc.name);
            ensure!(
                y.euler_characteristic() == x.euler_characteristic(),
                "{}: Euler characteristic",
                doc.name
            );
            ensure!(cup_invariants(&y) == cups, "{}: cup cokernels changed", doc.name);
            reorderings += 1;
        }
    }
    Ok(format!(
        "{} maps, {reorderings} reorderings (20 per complex)",
        maps.len()
    ))
}

fn data(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", rel].iter().collect();
    p.to_string_lossy().into_owned()
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ttd");
    let ws = data("");
    let commands: Vec<Vec<String>> = vec![
        vec![
            "homology".into(),
            data("complexes/T3.json"),
            "--format".into(),
            "json".into(),
        ],
        vec![
            "pairs".into(),
            data("complexes/T3.json"),
            "--c".into(),
            "0,0,2".into(),
            "--bound".into(),
            "1".into(),
        ],
        vec![
            "tdual".into(),
            data("records/torus_d3.json"),
            "--workspace".into(),
            ws.clone(),
        ],
        vec![
            "doubled".into(),
            data("records/octahedron_c1.json"),
            "--workspace".into(),
            ws.clone(),
        ],
        vec![
            "moduli".into(),
            "--workspace".into(),
            ws.clone(),
            "--model".into(),
            "sphere_antipodal".into(),
            "--report".into(),
            "aut".into(),
        ],
        vec![
            "moduli".into(),
            "--workspace".into(),
            ws.clone(),
            "--model".into(),
            "torus_sl2".into(),
            "--format".into(),
            "json".into(),
        ],
    ];
    for args in &commands {
        let a = Command::new(bin).args(args).output().unwrap();
        let b = Command::new(bin).args(args).output().unwrap();
        ensure!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        ensure!(a.stdout == b.stdout, "{args:?}: outputs differ");
    }
    let dir = std::env::temp_dir().join(format!("ttd-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let stale = dir.join("stale.json");
    let record = std::fs::read_to_string(data("records/torus_d3.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&record).unwrap();
    v["basis"] = "ffffffffffffffff".into();
    std::fs::write(&stale, v.to_string()).unwrap();
    let out = Command::new(bin)
        .args(["tdual", stale.to_str().unwrap(), "--workspace", &ws])
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    ensure!(
        out.status.code() == Some(2),
        "basis mismatch exit code {:?}",
        out.status.code()
    );
    Ok(format!("{} commands, stale basis exits 2", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("cohomology exactness", cohomology_exactness),
        ("gysin pieces vs direct RP3", gysin_vs_direct),
        ("orbit quotient on T3", orbit_quotient),
        ("t-duality involution and exchange", t_duality),
        ("gauge action laws", gauge_laws),
        ("moduli components", moduli_components),
        ("edge-path presentation vs automorphisms", pi1_oracle),
        ("loop-correspondence group", loop_groups),
        ("restriction to the equator", restriction),
        ("mapping tori", mapping_tori),
        ("cup-product laws", cup_laws),
        ("CLI determinism and basis check", determinism),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
