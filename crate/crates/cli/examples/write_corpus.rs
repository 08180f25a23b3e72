//! Writes the built-in triangulations, homeomorphisms and models as a
//! workspace directory: `cargo run -p ttd-cli --example write_corpus -- data`.

use std::fs;
use std::path::Path;

use serde::Serialize;
use ttd_core::corpus;
use ttd_core::io::ModelDocument;
use ttd_core::pairs::PairClass;
use ttd_core::simplicial::load_complex;

fn write<T: Serialize>(dir: &Path, name: &str, value: &T) {
    fs::create_dir_all(dir).unwrap();
    let mut text = serde_json::to_string_pretty(value).unwrap();
    text.push('\n');
    fs::write(dir.join(format!("{name}.json")), text).unwrap();
}

fn model(name: &str, complex: &str, homeos: &[&str], bound: u64) -> ModelDocument {
    ModelDocument {
        name: name.into(),
        complex: complex.into(),
        homeos: homeos.iter().map(|s| s.to_string()).collect(),
        bound,
        depth: None,
    }
}

fn main() {
    let root = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    let root = Path::new(&root);
    let complexes = root.join("complexes");
    for doc in [
        corpus::sphere(),
        corpus::octahedron(),
        corpus::equator(),
        corpus::torus7(),
        corpus::rp2(),
        corpus::rp3(),
        corpus::circle(4),
        corpus::torus3(),
    ] {
        write(&complexes, &doc.name, &doc);
    }
    let homeos = root.join("homeos");
    write(&homeos, "antipodal", &corpus::antipodal_homeo());
    for doc in corpus::torus_sl2_homeos()
        .into_iter()
        .chain(corpus::torus_involutions())
    {
        write(&homeos, &doc.name, &doc);
    }
    let models = root.join("models");
    write(
        &models,
        "sphere_antipodal",
        &model("sphere_antipodal", "octahedron", &["antipodal"], 1),
    );
    write(&models, "torus_sl2", &model("torus_sl2", "T2", &["S", "T"], 2));
    write(
        &models,
        "torus_involutions",
        &model("torus_involutions", "T2", &["N", "R"], 1),
    );

    let maps = root.join("maps");
    write(&maps, "equator_inclusion", &corpus::equator_inclusion());
    write(&maps, "circle_reflection", &corpus::circle_reflection_map());
    write(
        &maps,
        "circle_identity",
        &ttd_core::simplicial::SimplicialMap::identity(std::sync::Arc::new(load_complex(&corpus::circle(4)).unwrap()))
            .to_document(),
    );

    let records = root.join("records");
    let t2 = std::sync::Arc::new(load_complex(&corpus::torus7()).unwrap());
    let h2 = t2.cohomology(2).group().clone();
    let p = PairClass::new(t2.clone(), h2.zero(), h2.element_i64(&[3]).unwrap(), &[]).unwrap();
    write(&records, "torus_d3", &p.to_record());
    let oct = std::sync::Arc::new(load_complex(&corpus::octahedron()).unwrap());
    let h2 = oct.cohomology(2).group().clone();
    let p = PairClass::new(oct.clone(), h2.element_i64(&[1]).unwrap(), h2.zero(), &[]).unwrap();
    write(&records, "octahedron_c1", &p.to_record());
}
