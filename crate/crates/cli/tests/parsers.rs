//! The fuzz seeds plus random byte mutations of them, through the same entry
//! points as the fuzz targets. Errors are fine, panics are not.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use ttd_cli::parse_class;
use ttd_core::corpus;
use ttd_core::io::{ComplexDocument, HomeoDocument, ModelDocument, PairClassRecord, SimplicialMapDocument};
use ttd_core::moduli::HomeoData;
use ttd_core::pairs::{t_dual, PairClass};
use ttd_core::simplicial::{load_complex, SimplicialComplex, SimplicialMap};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target]
        .iter()
        .collect();
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds in {}", dir.display());
    paths.iter().map(|p| fs::read(p).unwrap()).collect()
}

fn mutate(rng: &mut StdRng, seed: &[u8]) -> Vec<u8> {
    let mut out = seed.to_vec();
    const PIECES: [&[u8]; 10] = [
        b"-",
        b"0",
        b"9999999999999999999",
        b"\"",
        b",",
        b"[",
        b"]",
        b"{}",
        b"null",
        b"\"a\"",
    ];
    for _ in 0..rng.gen_range(1..4) {
        let at = rng.gen_range(0..=out.len());
        match rng.gen_range(0..4) {
            0 if at < out.len() => {
                let end = (at + rng.gen_range(1..8)).min(out.len());
                out.drain(at..end);
            }
            1 => {
                let piece = PIECES[rng.gen_range(0..PIECES.len())];
                out.splice(at..at, piece.iter().copied());
            }
            2 if at < out.len() => out[at] = rng.gen(),
            _ if !out.is_empty() => {
                // duplicate a span
                let start = rng.gen_range(0..out.len());
                let span: Vec<u8> = out[start..(start + 16).min(out.len())].to_vec();
                out.splice(at..at, span);
            }
            _ => out.push(rng.gen()),
        }
    }
    out
}

fn run(target: &str, rounds: usize, check: impl Fn(&str)) {
    let mut rng = StdRng::seed_from_u64(target.len() as u64);
    for seed in seeds(target) {
        check(std::str::from_utf8(&seed).unwrap());
        for _ in 0..rounds {
            if let Ok(text) = String::from_utf8(mutate(&mut rng, &seed)) {
                check(&text);
            }
        }
    }
}

fn torus() -> Arc<SimplicialComplex> {
    Arc::new(load_complex(&corpus::torus7()).unwrap())
}

#[test]
fn complexes() {
    run("parse_complex", 1000, |text| {
        if let Ok(doc) = ComplexDocument::from_json(text) {
            let _ = load_complex(&doc);
        }
    });
}

#[test]
fn maps() {
    let a = Arc::new(load_complex(&corpus::equator()).unwrap());
    let x = Arc::new(load_complex(&corpus::octahedron()).unwrap());
    run("parse_map", 1000, |text| {
        if let Ok(doc) = SimplicialMapDocument::from_json(text) {
            if let Ok(f) = SimplicialMap::from_document(&doc, a.clone(), x.clone()) {
                let _ = f.induced_map(1);
            }
            let _ = SimplicialMap::from_document(&doc, x.clone(), x.clone());
        }
    });
}

#[test]
fn homeos() {
    let t = torus();
    run("parse_homeo", 1000, |text| {
        if let Ok(doc) = HomeoDocument::from_json(text) {
            let _ = HomeoData::from_document(&doc, t.clone());
        }
    });
}

#[test]
fn pair_records() {
    let t = torus();
    run("parse_pair_record", 1000, |text| {
        if let Ok(record) = PairClassRecord::from_json(text) {
            if let Ok(p) = PairClass::from_record(&record, t.clone()) {
                assert_eq!(t_dual(&t_dual(&p)), p);
                assert_eq!(PairClass::from_record(&p.to_record(), t.clone()).unwrap(), p);
            }
        }
    });
}

#[test]
fn models() {
    run("parse_model", 1000, |text| {
        let _ = ModelDocument::from_json(text);
    });
}

#[test]
fn class_arguments() {
    let t3 = Arc::new(load_complex(&corpus::torus3()).unwrap());
    run("parse_class", 1000, |text| {
        let _ = parse_class(&t3, 2, text, "c");
    });
}
