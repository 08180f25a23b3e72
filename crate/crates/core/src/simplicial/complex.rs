use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::abelian::{Int, IntegerMatrix};
use crate::error::{Error, Result};
use crate::io::ComplexDocument;

use super::cohomology::{CohomologyBasis, CupTable};

/// Version tag mixed into the basis hash; bump when basis selection changes.
const BASIS_VERSION: &str = "ttd-basis-v1";

/// A finite ordered simplicial complex. Vertex indices follow the global
/// vertex order; every simplex is a strictly increasing index list.
pub struct SimplicialComplex {
    name: String,
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    basis_hash: String,
    pub(crate) cache: Caches,
}

/// Memo tables. Every entry is a pure function of the complex, so a cache hit
/// is indistinguishable from recomputation.
#[derive(Default)]
pub(crate) struct Caches {
    pub(crate) coboundary: Vec<OnceLock<IntegerMatrix>>,
    pub(crate) cohomology: Vec<OnceLock<Arc<CohomologyBasis>>>,
    pub(crate) cup_tables: Mutex<HashMap<(usize, usize), Arc<CupTable>>>,
    pub(crate) gysin: Mutex<HashMap<(Vec<Int>, usize), Arc<crate::gysin::GysinGroup>>>,
    pub(crate) t_quotients: Mutex<HashMap<(Vec<Int>, Vec<Int>), Arc<crate::pairs::TQuotient>>>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("name", &self.name)
            .field("vertices", &self.vertices.len())
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

/// Validates a complex document and builds the face-closed complex.
pub fn load_complex(doc: &ComplexDocument) -> Result<SimplicialComplex> {
    if doc.vertices.is_empty() {
        return Err(Error::validation("vertices", "complex has no vertices"));
    }
    let mut position = HashMap::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.iter().enumerate() {
        if position.insert(v.as_str(), i).is_some() {
            return Err(Error::validation(
                format!("vertices[{i}]"),
                format!("duplicate vertex {v:?}"),
            ));
        }
    }
    let mut facets = Vec::with_capacity(doc.facets.len());
    for (f, facet) in doc.facets.iter().enumerate() {
        if facet.is_empty() {
            return Err(Error::validation(format!("facets[{f}]"), "empty facet"));
        }
        let mut idx = Vec::with_capacity(facet.len());
        for (k, label) in facet.iter().enumerate() {
            let &i = position
                .get(label.as_str())
                .ok_or_else(|| Error::validation(format!("facets[{f}][{k}]"), format!("unknown vertex {label:?}")))?;
            idx.push(i);
        }
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation(format!("facets[{f}]"), "repeated vertex in facet"));
        }
        facets.push(idx);
    }
    Ok(SimplicialComplex::from_parts(
        doc.name.clone(),
        doc.vertices.clone(),
        facets,
    ))
}

impl SimplicialComplex {
    /// Builds the complex from validated parts: facets as sorted index lists.
    pub(crate) fn from_parts(name: String, vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let top = facets.iter().map(|f| f.len()).max().unwrap_or(1).max(1);
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
        for v in 0..vertices.len() {
            by_dim[0].insert(vec![v]);
        }
        for facet in &facets {
            let n = facet.len();
            // every nonempty subset of the facet
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| facet[b]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();

        let mut canonical_facets = facets;
        canonical_facets.sort();
        canonical_facets.dedup();

        let mut hasher = Sha256::new();
        hasher.update(BASIS_VERSION.as_bytes());
        for v in &vertices {
            hasher.update((v.len() as u64).to_le_bytes());
            hasher.update(v.as_bytes());
        }
        for s in simplices.iter().flatten() {
            hasher.update((s.len() as u64).to_le_bytes());
            for &i in s {
                hasher.update((i as u64).to_le_bytes());
            }
        }
        let basis_hash = hex::encode(&hasher.finalize()[..8]);

        let dims = simplices.len();
        let cache = Caches {
            coboundary: (0..dims + 1).map(|_| OnceLock::new()).collect(),
            cohomology: (0..dims + 1).map(|_| OnceLock::new()).collect(),
            ..Caches::default()
        };
        SimplicialComplex {
            name,
            vertices,
            facets: canonical_facets,
            simplices,
            index,
            basis_hash,
            cache,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Facets as sorted vertex-index lists (deduplicated, sorted).
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Sorted `k`-simplices; empty above the dimension.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn simplex_count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplex_index(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
    }

    pub fn contains_simplex(&self, simplex: &[usize]) -> bool {
        self.simplex_index(simplex).is_some()
    }

    /// Content hash of the vertex order and simplex lists; coordinates are only
    /// comparable between complexes with the same hash.
    pub fn basis_hash(&self) -> &str {
        &self.basis_hash
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// The coboundary `δ^k : C^k → C^{k+1}` as an `n_{k+1} × n_k` matrix,
    /// `(δf)(σ) = Σ_i (-1)^i f(∂_i σ)`.
    pub fn coboundary(&self, k: usize) -> IntegerMatrix {
        if let Some(cell) = self.cache.coboundary.get(k) {
            return cell.get_or_init(|| self.build_coboundary(k)).clone();
        }
        IntegerMatrix::zeros(self.simplex_count(k + 1), self.simplex_count(k))
    }

    fn build_coboundary(&self, k: usize) -> IntegerMatrix {
        let rows = self.simplex_count(k + 1);
        let cols = self.simplex_count(k);
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (r, tau) in self.simplices(k + 1).iter().enumerate() {
            for i in 0..tau.len() {
                let mut face = tau.clone();
                face.remove(i);
                let c = self.simplex_index(&face).expect("complex is face-closed");
                m.set(r, c, Int::from(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    }

    /// Applies `δ^k` to a cochain without materialising the matrix.
    pub fn apply_coboundary(&self, k: usize, cochain: &[Int]) -> Result<Vec<Int>> {
        if cochain.len() != self.simplex_count(k) {
            return Err(Error::Shape(format!(
                "degree-{k} cochain on {} needs {} values, got {}",
                self.name,
                self.simplex_count(k),
                cochain.len()
            )));
        }
        let mut out = vec![Int::zero(); self.simplex_count(k + 1)];
        for (r, tau) in self.simplices(k + 1).iter().enumerate() {
            let mut acc = Int::zero();
            for i in 0..tau.len() {
                let mut face = tau.clone();
                face.remove(i);
                let v = &cochain[self.simplex_index(&face).expect("face-closed")];
                if i % 2 == 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Document describing this complex (facets in canonical order).
    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|&i| self.vertices[i].clone()).collect())
                .collect(),
        }
    }
}
