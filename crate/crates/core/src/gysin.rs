//! Cohomology of the total space of a circle bundle as the two Gysin pieces
//! `0 → coker(∪c) → H^k(E) → ker(∪c) → 0`, with the extension left open.

use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::{hom_kernel, quotient, FgAbelianGroup, GroupElement, Int, IntegerMatrix, Subquotient};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// A circle bundle over `base` with characteristic class `c ∈ H^2(base)`.
#[derive(Clone, Debug)]
pub struct BundleData {
    base: Arc<SimplicialComplex>,
    c: GroupElement,
}

impl BundleData {
    pub fn new(base: Arc<SimplicialComplex>, c: GroupElement) -> Result<Self> {
        if c.group() != base.cohomology(2).group() {
            return Err(Error::Contract(format!(
                "characteristic class lives in {}, not H^2({}) = {}",
                c.group(),
                base.name(),
                base.cohomology(2).group()
            )));
        }
        Ok(BundleData { base, c })
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn c(&self) -> &GroupElement {
        &self.c
    }

    pub fn gysin(&self, k: usize) -> Result<Arc<GysinGroup>> {
        gysin_group(&self.base, &self.c, k)
    }
}

/// `H^k(E)` as extension data. An element is a pair `(q, s)` with `q` in
/// `quot = ker(∪c : H^{k-1} → H^{k+1})` and `s` in `sub = coker(∪c : H^{k-2} → H^k)`.
#[derive(Clone, Debug)]
pub struct GysinGroup {
    degree: usize,
    sub: Subquotient,
    quot: Subquotient,
    pi_star: IntegerMatrix,
}

/// Matrix of `a ↦ a ∪ c` on canonical generators of `H^p`.
fn cup_with(x: &SimplicialComplex, p: usize, c: &GroupElement) -> Result<IntegerMatrix> {
    x.cup_table(p, 2).right_multiplication(c)
}

fn empty_map(x: &SimplicialComplex, from: Option<usize>, to: usize) -> IntegerMatrix {
    let cols = from.map_or(0, |k| x.cohomology(k).group().ngens());
    IntegerMatrix::zeros(x.cohomology(to).group().ngens(), cols)
}

impl GysinGroup {
    fn compute(x: &SimplicialComplex, c: &GroupElement, k: usize) -> Result<Self> {
        let hk = x.cohomology(k);
        let nk = hk.group().ngens();
        let into_k = match k.checked_sub(2) {
            Some(p) => cup_with(x, p, c)?,
            None => empty_map(x, None, k),
        };
        let sub = quotient(nk, &hk.group().relation_matrix().hstack(&into_k)?)?;
        let quot = match k.checked_sub(1) {
            Some(p) => hom_kernel(
                &cup_with(x, p, c)?,
                x.cohomology(p).group(),
                x.cohomology(k + 1).group(),
            )?,
            None => Subquotient::build(0, None, &IntegerMatrix::zeros(0, 0))?,
        };
        let cols = (0..nk)
            .map(|i| Ok(sub.element_of(hk.group().generator(i).coords())?.into_coords()))
            .collect::<Result<Vec<_>>>()?;
        let pi_star = IntegerMatrix::from_columns(&cols, sub.group().ngens())?;
        Ok(GysinGroup {
            degree: k,
            sub,
            quot,
            pi_star,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `coker(∪c : H^{k-2} → H^k)`, the image of `π*`.
    pub fn sub(&self) -> &FgAbelianGroup {
        self.sub.group()
    }

    /// `ker(∪c : H^{k-1} → H^{k+1})`, the image of `π_!`.
    pub fn quot(&self) -> &FgAbelianGroup {
        self.quot.group()
    }

    /// `π* : H^k(X) → sub`.
    pub fn pi_star(&self) -> &IntegerMatrix {
        &self.pi_star
    }

    /// `π*` into `(q, s)` coordinates: `H^k(X) → quot ⊕ sub`.
    pub fn pi_star_total(&self) -> IntegerMatrix {
        let nq = self.quot().ngens();
        let mut m = IntegerMatrix::zeros(nq + self.sub().ngens(), self.pi_star.cols());
        for i in 0..self.pi_star.rows() {
            for j in 0..self.pi_star.cols() {
                m.set(nq + i, j, self.pi_star.get(i, j).clone());
            }
        }
        m
    }

    /// `π_! : quot ⊕ sub → quot`, the projection onto `q`.
    pub fn pi_one(&self) -> IntegerMatrix {
        let nq = self.quot().ngens();
        let mut m = IntegerMatrix::zeros(nq, nq + self.sub().ngens());
        for i in 0..nq {
            m.set(i, i, Int::from(1));
        }
        m
    }

    /// `quot → H^{k-1}(X)` on canonical generators.
    pub fn quot_inclusion(&self) -> &IntegerMatrix {
        self.quot.generator_lifts()
    }

    /// Class in `sub` of an `H^k(X)` coordinate vector.
    pub fn sub_class(&self, w: &[Int]) -> Result<GroupElement> {
        self.sub.element_of(w)
    }

    /// A `H^k(X)` coordinate vector representing an element of `sub`.
    pub fn sub_lift(&self, s: &GroupElement) -> Result<Vec<Int>> {
        self.sub.lift(s.coords())
    }

    /// Element of `quot` for an `H^{k-1}(X)` coordinate vector in the kernel.
    pub fn quot_class(&self, v: &[Int]) -> Result<GroupElement> {
        self.quot
            .element_of(v)
            .map_err(|_| Error::Contract(format!("class {v:?} does not cup to zero with c")))
    }

    pub fn quot_contains(&self, v: &[Int]) -> Result<bool> {
        self.quot.contains(v)
    }

    /// Element of `H^{k-1}(X)` coordinates for an element of `quot`.
    pub fn quot_lift(&self, q: &GroupElement) -> Result<Vec<Int>> {
        self.quot.lift(q.coords())
    }

    /// The two pieces with their degree, e.g. `sub Z/2, quot 0`.
    pub fn summary(&self) -> String {
        format!("H{}(E): {} ⊕ (quot {})", self.degree, self.sub(), self.quot())
    }
}

/// Degree-`k` Gysin pieces for the bundle with class `c`, cached on `x`.
pub fn gysin_group(x: &SimplicialComplex, c: &GroupElement, k: usize) -> Result<Arc<GysinGroup>> {
    if c.group() != x.cohomology(2).group() {
        return Err(Error::Contract(format!("{} is not H^2({})", c.group(), x.name())));
    }
    let key = (c.coords().to_vec(), k);
    if let Some(g) = x.cache.gysin.lock().expect("gysin cache").get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(GysinGroup::compute(x, c, k)?);
    Ok(x.cache
        .gysin
        .lock()
        .expect("gysin cache")
        .entry(key)
        .or_insert(g)
        .clone())
}

/// An H-flux `H ∈ H^3(E)` stored as `(q, s)`; `q` is `d = π_!(H)`.
#[derive(Clone, Debug)]
pub struct FluxElement {
    bundle: BundleData,
    q: GroupElement,
    s: GroupElement,
}

impl FluxElement {
    pub fn new(bundle: BundleData, q: GroupElement, s: GroupElement) -> Result<Self> {
        let g = bundle.gysin(3)?;
        if q.group() != g.quot() || s.group() != g.sub() {
            return Err(Error::Contract("flux coordinates do not match the Gysin pieces".into()));
        }
        Ok(FluxElement { bundle, q, s })
    }

    /// The flux with `π_!(H) = d` and π*-part `s`, given `d ∈ H^2(X)` and an
    /// `H^3(X)` representative `w` of the π*-part.
    pub fn from_parts(bundle: BundleData, d: &GroupElement, w: &GroupElement) -> Result<Self> {
        let x = bundle.base().clone();
        if d.group() != x.cohomology(2).group() || w.group() != x.cohomology(3).group() {
            return Err(Error::Contract("flux parts must lie in H^2 and H^3 of the base".into()));
        }
        let g = bundle.gysin(3)?;
        let q = g.quot_class(d.coords())?;
        let s = g.sub_class(w.coords())?;
        Ok(FluxElement { bundle, q, s })
    }

    pub fn zero(bundle: BundleData) -> Result<Self> {
        let g = bundle.gysin(3)?;
        Ok(FluxElement {
            q: g.quot().zero(),
            s: g.sub().zero(),
            bundle,
        })
    }

    pub fn bundle(&self) -> &BundleData {
        &self.bundle
    }

    pub fn q(&self) -> &GroupElement {
        &self.q
    }

    pub fn s(&self) -> &GroupElement {
        &self.s
    }

    /// An `H^3(X)` representative of the π*-part.
    pub fn s_lift(&self) -> Result<Vec<Int>> {
        self.bundle.gysin(3)?.sub_lift(&self.s)
    }

    fn same_bundle(&self, other: &FluxElement) -> bool {
        self.bundle.base().basis_hash() == other.bundle.base().basis_hash() && self.bundle.c() == other.bundle.c()
    }
}

impl PartialEq for FluxElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_bundle(other) && self.q == other.q && self.s == other.s
    }
}

impl Eq for FluxElement {}

/// `π_!(H) = d ∈ H^2(X)`.
pub fn pushforward(h: &FluxElement) -> Result<GroupElement> {
    let x = h.bundle.base();
    let g = h.bundle.gysin(3)?;
    x.cohomology(2).element(g.quot_lift(&h.q)?)
}

/// `π*(w)` for `w ∈ H^3(X)`: `q = 0`, `s = [w]`.
pub fn pullback(bundle: &BundleData, w: &GroupElement) -> Result<FluxElement> {
    let zero = FluxElement::zero(bundle.clone())?;
    add_pullback(&zero, w)
}

/// `(q, s) ↦ (q, s + [w])`.
pub fn add_pullback(h: &FluxElement, w: &GroupElement) -> Result<FluxElement> {
    let x = h.bundle.base();
    if w.group() != x.cohomology(3).group() {
        return Err(Error::Contract(format!("{} is not H^3({})", w.group(), x.name())));
    }
    let g = h.bundle.gysin(3)?;
    let shift = g.sub_class(w.coords())?;
    Ok(FluxElement {
        bundle: h.bundle.clone(),
        q: h.q.clone(),
        s: h.s.add(&shift)?,
    })
}

/// Whether `w ∈ H^3(X)` lies in `c ∪ H^1(X)`, i.e. in the kernel of `π*`.
pub fn in_cup_image(bundle: &BundleData, w: &GroupElement) -> Result<bool> {
    Ok(pullback(bundle, w)?.s.coords().iter().all(Zero::is_zero))
}
