mod common;

use std::sync::Arc;

use common::arc;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use ttd_core::abelian::{cokernel, Int, IntegerMatrix};
use ttd_core::corpus;
use ttd_core::io::ComplexDocument;
use ttd_core::simplicial::{load_complex, SimplicialComplex, SimplicialMap};
use ttd_oracles::{naive_cohomology, random_simplicial_map, shuffled, Shape};

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

#[test]
fn corpus_matches_reference_cohomology() {
    let z = (1, vec![]);
    let cases: Vec<(ComplexDocument, Vec<Shape>)> = vec![
        (corpus::sphere(), vec![z.clone(), (0, vec![]), z.clone()]),
        (corpus::octahedron(), vec![z.clone(), (0, vec![]), z.clone()]),
        (corpus::torus7(), vec![z.clone(), (2, vec![]), z.clone()]),
        (corpus::rp2(), vec![z.clone(), (0, vec![]), (0, vec![2])]),
        (corpus::torus3(), vec![z.clone(), (3, vec![]), (3, vec![]), z.clone()]),
        (corpus::circle(5), vec![z.clone(), z.clone()]),
        (corpus::point(), vec![z.clone()]),
    ];
    for (doc, expected) in cases {
        let x = load_complex(&doc).unwrap();
        assert_eq!(shapes(&x), expected, "{}", doc.name);
        assert_eq!(naive_cohomology(&doc), expected, "{} (reference)", doc.name);
    }
}

#[test]
fn euler_characteristic_from_ranks() {
    for doc in [
        corpus::sphere(),
        corpus::torus7(),
        corpus::rp2(),
        corpus::torus3(),
        corpus::rp3(),
    ] {
        let x = load_complex(&doc).unwrap();
        let alternating: i64 = shapes(&x)
            .iter()
            .enumerate()
            .map(|(k, (r, _))| if k % 2 == 0 { *r as i64 } else { -(*r as i64) })
            .sum();
        assert_eq!(alternating, x.euler_characteristic(), "{}", doc.name);
    }
}

fn all_classes(x: &SimplicialComplex, k: usize) -> Vec<ttd_core::abelian::GroupElement> {
    let g = x.cohomology(k);
    (0..g.group().ngens()).map(|i| g.group().generator(i)).collect()
}

#[test]
fn cup_is_graded_commutative_on_classes() {
    for doc in [corpus::torus7(), corpus::rp2(), corpus::torus3(), corpus::rp3()] {
        let x = load_complex(&doc).unwrap();
        let n = x.dimension();
        for p in 0..=n {
            for q in 0..=(n - p) {
                let (pq, qp) = (x.cup_table(p, q), x.cup_table(q, p));
                for a in all_classes(&x, p) {
                    for b in all_classes(&x, q) {
                        let ab = pq.product(&a, &b).unwrap();
                        let ba = qp.product(&b, &a).unwrap();
                        let expected = if p * q % 2 == 0 { ba } else { ba.neg() };
                        assert_eq!(ab, expected, "{} degrees {p},{q}", doc.name);
                    }
                }
            }
        }
    }
}

#[test]
fn cup_is_natural_under_random_maps() {
    let mut rng = StdRng::seed_from_u64(11);
    let docs = [
        corpus::sphere(),
        corpus::torus7(),
        corpus::rp2(),
        corpus::octahedron(),
        corpus::circle(4),
    ];
    let xs: Vec<Arc<SimplicialComplex>> = docs.iter().map(|d| arc(d.clone())).collect();
    let mut maps: Vec<SimplicialMap> = Vec::new();
    // automorphisms first, they move classes nontrivially
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
        for p in 0..=y.dimension().min(x.dimension()) {
            for q in 0..=(y.dimension().min(x.dimension()) - p) {
                let (fp, fq, fpq) = (
                    f.induced_map(p).unwrap(),
                    f.induced_map(q).unwrap(),
                    f.induced_map(p + q).unwrap(),
                );
                for a in all_classes(y, p) {
                    for b in all_classes(y, q) {
                        let ab = y.cup_table(p, q).product(&a, &b).unwrap();
                        let lhs = x.cohomology(p + q).element(fpq.mul_vec(ab.coords()).unwrap()).unwrap();
                        let fa = x.cohomology(p).element(fp.mul_vec(a.coords()).unwrap()).unwrap();
                        let fb = x.cohomology(q).element(fq.mul_vec(b.coords()).unwrap()).unwrap();
                        let rhs = x.cup_table(p, q).product(&fa, &fb).unwrap();
                        assert_eq!(lhs, rhs, "{} -> {}", x.name(), y.name());
                    }
                }
            }
        }
    }
}

#[test]
fn induced_maps_are_functorial() {
    let t = arc(corpus::torus7());
    let f = SimplicialMap::from_document(&corpus::torus7_affine_map(2, 1), t.clone(), t.clone()).unwrap();
    let g = SimplicialMap::from_document(&corpus::torus7_affine_map(3, 4), t.clone(), t.clone()).unwrap();
    let gf = g.compose(&f).unwrap();
    for k in 0..=2 {
        // (g∘f)* = f*∘g*
        let lhs = gf.induced_map(k).unwrap();
        let rhs = f.induced_map(k).unwrap().mul(&g.induced_map(k).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn invariants_do_not_depend_on_vertex_order() {
    let mut rng = StdRng::seed_from_u64(5);
    for doc in [corpus::torus7(), corpus::rp2(), corpus::torus3()] {
        let x = load_complex(&doc).unwrap();
        let reference = shapes(&x);
        // cokernel of the cup product H^1 ⊗ H^p → H^{p+1}
        let cup_ranks = |x: &SimplicialComplex| -> Vec<String> {
            (1..x.dimension())
                .map(|p| {
                    let t = x.cup_table(1, p);
                    let target = x.cohomology(p + 1);
                    let mut cols = Vec::new();
                    for a in all_classes(x, 1) {
                        for b in all_classes(x, p) {
                            cols.push(t.product(&a, &b).unwrap().into_coords());
                        }
                    }
                    let n = target.group().ngens();
                    let products = IntegerMatrix::from_columns(&cols, n).unwrap();
                    let rel = target.group().relation_matrix().hstack(&products).unwrap();
                    cokernel(&rel).to_string()
                })
                .collect()
        };
        let reference_cups = cup_ranks(&x);
        for _ in 0..if doc.name == "T3" { 4 } else { 8 } {
            let y = load_complex(&shuffled(&mut rng, &doc)).unwrap();
            assert_eq!(shapes(&y), reference, "{}", doc.name);
            assert_eq!(y.euler_characteristic(), x.euler_characteristic());
            assert_eq!(cup_ranks(&y), reference_cups);
        }
    }
}

#[test]
fn coboundary_squares_to_zero() {
    for doc in [corpus::torus3(), corpus::rp3()] {
        let x = load_complex(&doc).unwrap();
        for k in 0..x.dimension().saturating_sub(1) {
            let dd = x.coboundary(k + 1).mul(&x.coboundary(k)).unwrap();
            assert!(dd.is_zero(), "{} degree {k}", doc.name);
        }
        let ones = vec![Int::from(1); x.simplex_count(0)];
        assert!(x.apply_coboundary(0, &ones).unwrap().iter().all(|v| *v == Int::from(0)));
    }
}
