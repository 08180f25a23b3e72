use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::{Int, IntegerMatrix};
use crate::error::{Error, Result};
use crate::io::SimplicialMapDocument;

use super::cohomology::Cocycle;
use super::complex::SimplicialComplex;

/// A vertex map sending every simplex of the source onto a simplex of the
/// target. Collapsing simplices is allowed.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.vertices().len() {
            return Err(Error::validation(
                "vertex_map",
                format!(
                    "{} images for {} source vertices",
                    vertex_map.len(),
                    source.vertices().len()
                ),
            ));
        }
        if let Some(&bad) = vertex_map.iter().find(|&&v| v >= target.vertices().len()) {
            return Err(Error::validation(
                "vertex_map",
                format!("image index {bad} out of range"),
            ));
        }
        for facet in source.facets() {
            let mut image: Vec<usize> = facet.iter().map(|&v| vertex_map[v]).collect();
            image.sort_unstable();
            image.dedup();
            if !target.contains_simplex(&image) {
                let labels: Vec<&str> = facet.iter().map(|&v| source.vertices()[v].as_str()).collect();
                return Err(Error::validation(
                    format!("facet {labels:?}"),
                    format!("image is not a simplex of {}", target.name()),
                ));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    /// Resolves a map document against the given complexes by name and label.
    pub fn from_document(
        doc: &SimplicialMapDocument,
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
    ) -> Result<Self> {
        if doc.source != source.name() {
            return Err(Error::validation(
                "source",
                format!("map is from {:?}, not {:?}", doc.source, source.name()),
            ));
        }
        if doc.target != target.name() {
            return Err(Error::validation(
                "target",
                format!("map is to {:?}, not {:?}", doc.target, target.name()),
            ));
        }
        Self::from_labels(&doc.vertex_map, source, target)
    }

    pub fn from_labels(
        labels: &BTreeMap<String, String>,
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
    ) -> Result<Self> {
        for key in labels.keys() {
            if source.vertex_index(key).is_none() {
                return Err(Error::validation(
                    format!("vertex_map[{key:?}]"),
                    "unknown source vertex",
                ));
            }
        }
        let mut map = Vec::with_capacity(source.vertices().len());
        for v in source.vertices() {
            let image = labels
                .get(v)
                .ok_or_else(|| Error::validation(format!("vertex_map[{v:?}]"), "missing image"))?;
            let idx = target.vertex_index(image).ok_or_else(|| {
                Error::validation(format!("vertex_map[{v:?}]"), format!("unknown target vertex {image:?}"))
            })?;
            map.push(idx);
        }
        Self::new(source, target, map)
    }

    pub fn identity(x: Arc<SimplicialComplex>) -> Self {
        let n = x.vertices().len();
        SimplicialMap {
            source: x.clone(),
            target: x,
            vertex_map: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn is_endomorphism(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source.basis_hash() == self.target.basis_hash()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.vertex_map.iter().all(|v| seen.insert(*v))
    }

    /// Bijective on vertices and on facets.
    pub fn is_homeomorphism(&self) -> bool {
        if self.source.vertices().len() != self.target.vertices().len() || !self.is_injective() {
            return false;
        }
        let images: HashSet<Vec<usize>> = self
            .source
            .facets()
            .iter()
            .map(|f| {
                let mut img: Vec<usize> = f.iter().map(|&v| self.vertex_map[v]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        let targets: HashSet<Vec<usize>> = self.target.facets().iter().cloned().collect();
        images == targets
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target.basis_hash() != self.source.basis_hash() {
            return Err(Error::Contract("composing maps with mismatched complexes".into()));
        }
        let vertex_map = first.vertex_map.iter().map(|&v| self.vertex_map[v]).collect();
        Ok(SimplicialMap {
            source: first.source.clone(),
            target: self.target.clone(),
            vertex_map,
        })
    }

    /// Pullback of a cochain on the target: `(f^# φ)(σ) = ±φ(f(σ))`, zero when
    /// `f` collapses `σ`, sign from sorting the image vertices.
    pub fn pullback_cochain(&self, cochain: &Cocycle) -> Result<Cocycle> {
        let k = cochain.degree;
        if cochain.coefficients.len() != self.target.simplex_count(k) {
            return Err(Error::Shape(format!(
                "degree-{k} cochain does not live on {}",
                self.target.name()
            )));
        }
        let mut out = Vec::with_capacity(self.source.simplex_count(k));
        for sigma in self.source.simplices(k) {
            let mut image: Vec<usize> = sigma.iter().map(|&v| self.vertex_map[v]).collect();
            let sign = sort_with_sign(&mut image);
            if image.windows(2).any(|w| w[0] == w[1]) {
                out.push(Int::zero());
                continue;
            }
            let idx = self.target.simplex_index(&image).expect("map validated on facets");
            let v = &cochain.coefficients[idx];
            out.push(if sign { v.clone() } else { -v });
        }
        Ok(Cocycle::new(k, out))
    }

    /// Matrix of `f^* : H^k(target) → H^k(source)` in the canonical bases.
    pub fn induced_map(&self, k: usize) -> Result<IntegerMatrix> {
        let ht = self.target.cohomology(k);
        let hs = self.source.cohomology(k);
        let cols = ht
            .representatives()
            .iter()
            .map(|z| Ok(hs.class_of(&self.pullback_cochain(z)?)?.into_coords()))
            .collect::<Result<Vec<_>>>()?;
        IntegerMatrix::from_columns(&cols, hs.group().ngens())
    }

    pub fn to_document(&self) -> SimplicialMapDocument {
        SimplicialMapDocument {
            source: self.source.name().to_string(),
            target: self.target.name().to_string(),
            vertex_map: self
                .vertex_map
                .iter()
                .enumerate()
                .map(|(i, &j)| (self.source.vertices()[i].clone(), self.target.vertices()[j].clone()))
                .collect(),
        }
    }
}

/// Sorts in place; returns `true` for an even permutation.
fn sort_with_sign(v: &mut [usize]) -> bool {
    let mut even = true;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            even = !even;
            j -= 1;
        }
    }
    even
}
