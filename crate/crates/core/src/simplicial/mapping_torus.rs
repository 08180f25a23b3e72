use crate::error::{Error, Result};

use super::complex::SimplicialComplex;
use super::maps::SimplicialMap;

/// Number of copies of `X` in the mapping torus. Three layers keep the circle
/// direction long enough for the quotient to stay a simplicial complex.
const LAYERS: usize = 3;

/// Triangulated mapping torus `T_f X = X × [0,1] / (x,1) ~ (f(x),0)`.
///
/// Layers `X_0, X_1, X_2` are joined by prisms: a facet `[v_0 < … < v_k]` of
/// `X` yields `{v_0..v_i in the lower layer} ∪ {w_i..w_k in the upper layer}`
/// for each `i`, where `w = v` between consecutive layers and `w = f(v)` when
/// closing the loop from `X_2` back to `X_0`. Collapsed images simply shrink
/// the simplex. Vertex order: layer 0, then layer 1, then layer 2.
pub fn mapping_torus(f: &SimplicialMap) -> Result<SimplicialComplex> {
    if !f.is_endomorphism() {
        return Err(Error::Contract(format!(
            "mapping torus needs a self-map, got {} -> {}",
            f.source().name(),
            f.target().name()
        )));
    }
    let x = f.source();
    let n = x.vertices().len();
    let at = |layer: usize, v: usize| layer * n + v;

    let mut vertices = Vec::with_capacity(LAYERS * n);
    for layer in 0..LAYERS {
        for v in x.vertices() {
            vertices.push(format!("{v}@{layer}"));
        }
    }

    let mut facets = Vec::new();
    for facet in x.facets() {
        for layer in 0..LAYERS {
            let upper = (layer + 1) % LAYERS;
            let closing = upper == 0;
            for i in 0..facet.len() {
                let mut s: Vec<usize> = facet[..=i].iter().map(|&v| at(layer, v)).collect();
                s.extend(facet[i..].iter().map(|&v| {
                    let w = if closing { f.vertex_map()[v] } else { v };
                    at(upper, w)
                }));
                s.sort_unstable();
                s.dedup();
                facets.push(s);
            }
        }
    }
    facets.sort();
    facets.dedup();
    Ok(SimplicialComplex::from_parts(
        format!("T_f({})", x.name()),
        vertices,
        facets,
    ))
}
