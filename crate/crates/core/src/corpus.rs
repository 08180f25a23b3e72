//! Small triangulations and maps used by tests, examples and the CLI.

use std::collections::{BTreeMap, BTreeSet};

use crate::abelian::Int;
use crate::io::{ComplexDocument, HomeoDocument, HomeoKind, SimplicialMapDocument};
use crate::simplicial::{Cocycle, SimplicialComplex};

fn labels<I: IntoIterator<Item = S>, S: ToString>(items: I) -> Vec<String> {
    items.into_iter().map(|s| s.to_string()).collect()
}

fn doc(name: &str, vertices: Vec<String>, facets: Vec<Vec<String>>) -> ComplexDocument {
    ComplexDocument {
        name: name.to_string(),
        vertices,
        facets,
    }
}

fn map_doc(source: &str, target: &str, pairs: &[(&str, &str)]) -> SimplicialMapDocument {
    SimplicialMapDocument {
        source: source.to_string(),
        target: target.to_string(),
        vertex_map: pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    }
}

/// Boundary of the 3-simplex.
pub fn sphere() -> ComplexDocument {
    let v = labels(["a", "b", "c", "d"]);
    let facets = (0..4)
        .map(|skip| (0..4).filter(|&i| i != skip).map(|i| v[i].clone()).collect())
        .collect();
    doc("S2", v, facets)
}

const OCTA: [&str; 6] = ["x+", "x-", "y+", "y-", "z+", "z-"];

/// Boundary of the octahedron, centrally symmetric.
pub fn octahedron() -> ComplexDocument {
    let mut facets = Vec::new();
    for x in ["x+", "x-"] {
        for y in ["y+", "y-"] {
            for z in ["z+", "z-"] {
                facets.push(labels([x, y, z]));
            }
        }
    }
    doc("octahedron", labels(OCTA), facets)
}

/// The antipodal map `v ↦ -v` of the octahedron.
pub fn octahedron_antipodal_map() -> SimplicialMapDocument {
    let pairs: Vec<(&str, &str)> = OCTA
        .iter()
        .map(|v| {
            let flipped = OCTA.iter().find(|w| w[..1] == v[..1] && *w != v).unwrap();
            (*v, *flipped)
        })
        .collect();
    map_doc("octahedron", "octahedron", &pairs)
}

pub fn antipodal_homeo() -> HomeoDocument {
    HomeoDocument {
        name: "antipodal".into(),
        kind: HomeoKind::Simplicial,
        vertex_map: Some(octahedron_antipodal_map().vertex_map),
        m1: None,
        m2: None,
        m3: None,
        m4: None,
        declared_order: None,
    }
}

/// The 4-cycle `x+ y+ x- y-` inside the octahedron.
pub fn equator() -> ComplexDocument {
    let v = labels(["x+", "y+", "x-", "y-"]);
    let facets = (0..4).map(|i| vec![v[i].clone(), v[(i + 1) % 4].clone()]).collect();
    doc("equator", v, facets)
}

pub fn equator_inclusion() -> SimplicialMapDocument {
    map_doc(
        "equator",
        "octahedron",
        &[("x+", "x+"), ("y+", "y+"), ("x-", "x-"), ("y-", "y-")],
    )
}

/// Möbius' 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> ComplexDocument {
    let mut facets = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            facets.push(labels([i, (i + a) % 7, (i + b) % 7]));
        }
    }
    doc("T2", labels(0..7), facets)
}

/// Vertex map `i ↦ k·i + s` on the 7-vertex torus; a homeomorphism for every
/// `k ≢ 0 (mod 7)`, constant for `k = 0`.
pub fn torus7_affine_map(k: usize, s: usize) -> SimplicialMapDocument {
    SimplicialMapDocument {
        source: "T2".into(),
        target: "T2".into(),
        vertex_map: (0..7).map(|i| (i.to_string(), ((k * i + s) % 7).to_string())).collect(),
    }
}

/// `S = [[0,-1],[1,0]]` and `T = [[1,1],[0,1]]` acting on `H^1(T^2)`, trivially on `H^2`.
pub fn torus_sl2_homeos() -> Vec<HomeoDocument> {
    let mk = |name: &str, m1: Vec<Vec<i64>>, order| HomeoDocument {
        name: name.into(),
        kind: HomeoKind::Matrices,
        vertex_map: None,
        m1: Some(m1),
        m2: Some(vec![vec![1]]),
        m3: Some(vec![]),
        m4: None,
        declared_order: order,
    };
    vec![
        mk("S", vec![vec![0, -1], vec![1, 0]], Some(crate::io::Order::Finite(4))),
        mk("T", vec![vec![1, 1], vec![0, 1]], Some(crate::io::Order::Infinite)),
    ]
}

/// Two involutions of `T^2` by their action: `N = -1` on `H^1`, and `R`
/// exchanging the two `H^1` generators, hence `-1` on `H^2`.
pub fn torus_involutions() -> Vec<HomeoDocument> {
    let mk = |name: &str, m1: Vec<Vec<i64>>, m2: i64| HomeoDocument {
        name: name.into(),
        kind: HomeoKind::Matrices,
        vertex_map: None,
        m1: Some(m1),
        m2: Some(vec![vec![m2]]),
        m3: Some(vec![]),
        m4: None,
        declared_order: Some(crate::io::Order::Finite(2)),
    };
    vec![
        mk("N", vec![vec![-1, 0], vec![0, -1]], 1),
        mk("R", vec![vec![0, 1], vec![1, 0]], -1),
    ]
}

/// 6-vertex real projective plane.
pub fn rp2() -> ComplexDocument {
    let tri = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    doc("RP2", labels(1..=6), tri.iter().map(|t| labels(*t)).collect())
}

/// Cycle on `n ≥ 3` vertices `c0 … c{n-1}`.
pub fn circle(n: usize) -> ComplexDocument {
    assert!(n >= 3, "a simplicial circle needs three vertices");
    let v: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let facets = (0..n).map(|i| vec![v[i].clone(), v[(i + 1) % n].clone()]).collect();
    doc(&format!("S1_{n}"), v, facets)
}

/// Reflection `c1 ↔ c3` of the 4-vertex circle, fixing `c0` and `c2`.
pub fn circle_reflection_map() -> SimplicialMapDocument {
    map_doc(
        "S1_4",
        "S1_4",
        &[("c0", "c0"), ("c1", "c3"), ("c2", "c2"), ("c3", "c1")],
    )
}

pub fn point() -> ComplexDocument {
    doc("pt", labels(["p"]), vec![labels(["p"])])
}

fn grid_label(coords: &[usize]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("v{}", parts.join("_"))
}

fn grid_coords(label: &str) -> Option<Vec<usize>> {
    label.strip_prefix('v')?.split('_').map(|p| p.parse().ok()).collect()
}

/// Freudenthal triangulation of the torus `(R/mZ)^dim`, `m ≥ 3`: for every
/// lattice point `p` and permutation `π`, the simplex
/// `p, p + e_π1, p + e_π1 + e_π2, …` (mod m). Vertices in lexicographic order.
pub fn torus_grid(dim: usize, m: usize) -> ComplexDocument {
    assert!(m >= 3, "grid tori need at least 3 points per side");
    let points: Vec<Vec<usize>> = (0..m.pow(dim as u32))
        .map(|mut idx| {
            let mut c = vec![0; dim];
            for slot in c.iter_mut().rev() {
                *slot = idx % m;
                idx /= m;
            }
            c
        })
        .collect();
    let mut facets = Vec::new();
    for p in &points {
        for perm in permutations(dim) {
            let mut cur = p.clone();
            let mut simplex = vec![grid_label(&cur)];
            for &axis in &perm {
                cur[axis] = (cur[axis] + 1) % m;
                simplex.push(grid_label(&cur));
            }
            facets.push(simplex);
        }
    }
    doc(
        &format!("T{dim}_grid{m}"),
        points.iter().map(|p| grid_label(p)).collect(),
        facets,
    )
}

/// The 27-vertex 3-torus.
pub fn torus3() -> ComplexDocument {
    let mut d = torus_grid(3, 3);
    d.name = "T3".into();
    d
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The 1-cocycle counting crossings of the seam `x_axis = m-1 → 0` on a grid
/// torus built by [`torus_grid`] (any vertex order). Its class is the pullback
/// of the fundamental class of the `axis`-th circle factor.
pub fn grid_axis_cocycle(x: &SimplicialComplex, m: usize, axis: usize) -> Option<Cocycle> {
    let coords: Vec<Vec<usize>> = x.vertices().iter().map(|v| grid_coords(v)).collect::<Option<_>>()?;
    let step = |from: &[usize], to: &[usize]| -> Option<Vec<usize>> {
        let s: Vec<usize> = from.iter().zip(to).map(|(a, b)| (b + m - a) % m).collect();
        s.iter().all(|&d| d <= 1).then_some(s)
    };
    let mut coefficients = Vec::with_capacity(x.simplex_count(1));
    for e in x.simplices(1) {
        let (a, b) = (&coords[e[0]], &coords[e[1]]);
        let value = if let Some(s) = step(a, b) {
            i64::from(s[axis] == 1 && a[axis] == m - 1)
        } else {
            let s = step(b, a)?;
            -i64::from(s[axis] == 1 && b[axis] == m - 1)
        };
        coefficients.push(Int::from(value));
    }
    Some(Cocycle::new(1, coefficients))
}

/// `RP^3` as the antipodal quotient of the barycentric subdivision of the
/// boundary of the 4-dimensional cross-polytope (40 vertices, 192 tetrahedra).
pub fn rp3() -> ComplexDocument {
    // A face of the cross-polytope is a set of signed axes with distinct axes.
    type Face = BTreeSet<(usize, bool)>;
    let mut faces: Vec<Face> = Vec::new();
    for mask in 1u32..16 {
        let axes: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        for signs in 0u32..(1 << axes.len()) {
            faces.push(
                axes.iter()
                    .enumerate()
                    .map(|(k, &a)| (a, signs >> k & 1 == 1))
                    .collect(),
            );
        }
    }
    let negate = |f: &Face| -> Face { f.iter().map(|&(a, s)| (a, !s)).collect() };
    // orbit representative: the lowest axis carries a positive sign
    let canonical = |f: &Face| -> Face {
        if f.iter().next().is_some_and(|&(_, s)| s) {
            f.clone()
        } else {
            negate(f)
        }
    };
    let label = |f: &Face| -> String {
        f.iter()
            .map(|&(a, s)| format!("{}{}", if s { '+' } else { '-' }, a + 1))
            .collect()
    };
    let mut reps: Vec<Face> = faces
        .iter()
        .map(canonical)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    reps.sort_by_key(|f| (f.len(), label(f)));
    let vertices: Vec<String> = reps.iter().map(label).collect();

    let mut facets = BTreeSet::new();
    for top in faces.iter().filter(|f| f.len() == 4) {
        let elems: Vec<(usize, bool)> = top.iter().copied().collect();
        for perm in permutations(4) {
            // flag F1 ⊂ F2 ⊂ F3 ⊂ F4 = top, adding elements in the order given by perm
            let mut chain = Vec::with_capacity(4);
            let mut cur = Face::new();
            for &i in &perm {
                cur.insert(elems[i]);
                chain.push(label(&canonical(&cur)));
            }
            chain.sort();
            facets.insert(chain);
        }
    }
    let mut by_label: BTreeMap<String, usize> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        by_label.insert(v.clone(), i);
    }
    let mut facets: Vec<Vec<String>> = facets.into_iter().collect();
    facets.sort_by_key(|f| f.iter().map(|v| by_label[v]).collect::<Vec<_>>());
    doc("RP3", vertices, facets)
}
