#![allow(dead_code)]

use std::sync::Arc;

use ttd_core::abelian::GroupElement;
use ttd_core::corpus;
use ttd_core::io::ComplexDocument;
use ttd_core::simplicial::{cup, load_complex, SimplicialComplex};

pub fn arc(doc: ComplexDocument) -> Arc<SimplicialComplex> {
    Arc::new(load_complex(&doc).unwrap())
}

pub fn class(x: &SimplicialComplex, k: usize, v: &[i64]) -> GroupElement {
    x.cohomology(k).group().element_i64(v).unwrap()
}

/// The 27-vertex 3-torus with its axis classes `e_i ∈ H^1`.
pub struct Torus3 {
    pub x: Arc<SimplicialComplex>,
    pub e: Vec<GroupElement>,
}

impl Torus3 {
    pub fn new() -> Self {
        let x = arc(corpus::torus3());
        let h1 = x.cohomology(1);
        let e = (0..3)
            .map(|i| h1.class_of(&corpus::grid_axis_cocycle(&x, 3, i).unwrap()).unwrap())
            .collect();
        Torus3 { x, e }
    }

    /// `e_i ∪ e_j ∈ H^2`.
    pub fn e2(&self, i: usize, j: usize) -> GroupElement {
        let h1 = self.x.cohomology(1);
        let a = h1.representative(&self.e[i]).unwrap();
        let b = h1.representative(&self.e[j]).unwrap();
        self.x.cohomology(2).class_of(&cup(&self.x, &a, &b).unwrap()).unwrap()
    }
}
