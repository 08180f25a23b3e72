use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::GroupElement;
use crate::error::{Error, Result};
use crate::gysin::{gysin_group, FluxElement, GysinGroup};
use crate::io::Order;
use crate::pairs::{pair_class, PairClass};
use crate::simplicial::SimplicialComplex;

/// `H^2(E)` for the bundle with class `c`, as Gysin pieces: the group
/// indexing gauge loops at a pair with that bundle.
pub fn loop_count_group(x: &SimplicialComplex, c: &GroupElement) -> Result<Arc<GysinGroup>> {
    gysin_group(x, c, 2)
}

/// A loop labeled by an element `b ∈ H^2(E)`, given in its two pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopTag {
    pub sub: GroupElement,
    pub quot: GroupElement,
    /// Order of `b`: infinite when the quot part is nonzero, else the
    /// order of the sub part.
    pub order: Order,
}

impl LoopTag {
    pub fn is_trivial(&self) -> bool {
        self.sub.is_zero() && self.quot.is_zero()
    }
}

/// `(h, b) ↦ ([h], loop labeled by b)` for a flux `h` and `b` in
/// `loop_count_group` of `h`'s bundle, with `b` given by its sub and quot
/// coordinates.
pub fn triple_to_p0p1(h: &FluxElement, b_sub: &[i64], b_quot: &[i64]) -> Result<(PairClass, LoopTag)> {
    let bundle = h.bundle();
    let g = loop_count_group(bundle.base(), bundle.c())?;
    if b_sub.len() != g.sub().ngens() || b_quot.len() != g.quot().ngens() {
        return Err(Error::Contract(format!(
            "loop coordinates ({}, {}) do not fit {}",
            b_sub.len(),
            b_quot.len(),
            g.summary()
        )));
    }
    let sub = g.sub().element_i64(b_sub)?;
    let quot = g.quot().element_i64(b_quot)?;
    let order = if !quot.is_zero() {
        Order::Infinite
    } else {
        match sub.order() {
            Some(n) => Order::Finite(u64::try_from(&n).map_err(|_| Error::Contract("loop order overflows".into()))?),
            None => Order::Infinite,
        }
    };
    Ok((pair_class(h)?, LoopTag { sub, quot, order }))
}

/// Bookkeeping for the correspondence space `E ×_X E^#`, the torus bundle
/// with classes `(c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubledRecord {
    pub complex: String,
    pub basis: String,
    pub torus_classes: [Vec<i64>; 2],
    pub t: Vec<i64>,
    pub swap_symmetry: String,
    pub flux_matching: [String; 2],
    pub correspondence: String,
    /// Gysin pieces of each circle bundle `E_c`, `E_d` in degrees 0..=3.
    pub circle_pieces: [Vec<String>; 2],
    /// Image of the other class under each bundle projection, as
    /// coordinates in the sub piece of `H^2(E_c)` and `H^2(E_d)`.
    pub pulled_back: [Vec<i64>; 2],
}

pub fn doubled_descriptor(p: &PairClass) -> Result<DoubledRecord> {
    let x = p.base();
    let coords = |e: &GroupElement| {
        e.coords_i64()
            .ok_or_else(|| Error::Contract("coordinates overflow i64".into()))
    };
    let pieces =
        |c: &GroupElement| -> Result<Vec<String>> { (0..=3).map(|k| Ok(gysin_group(x, c, k)?.summary())).collect() };
    let pulled = |c: &GroupElement, other: &GroupElement| -> Result<GroupElement> {
        gysin_group(x, c, 2)?.sub_class(other.coords())
    };
    let (c, d) = (p.c(), p.d());
    let (dc, cd) = (pulled(c, d)?, pulled(d, c)?);
    let correspondence = match (c.is_zero(), d.is_zero()) {
        (true, true) => "X × T²".to_string(),
        (false, true) => "E_c × S¹".to_string(),
        (true, false) => "S¹ × E_d".to_string(),
        (false, false) => "T²-bundle with classes (c, d)".to_string(),
    };
    Ok(DoubledRecord {
        complex: x.name().to_string(),
        basis: x.basis_hash().to_string(),
        torus_classes: [coords(c)?, coords(d)?],
        t: coords(p.t())?,
        swap_symmetry: "Z/2: (c, d, t) ↔ (d, c, t)".into(),
        flux_matching: ["π_!(H) = d".into(), "π#_!(H#) = c".into()],
        correspondence,
        circle_pieces: [pieces(c)?, pieces(d)?],
        pulled_back: [coords(&dc)?, coords(&cd)?],
    })
}
