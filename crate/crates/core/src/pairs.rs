//! Isomorphism classes of pairs `(E, H)` over `X` in canonical `(c, d, t)` form.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::{hom_kernel, quotient, FgAbelianGroup, GroupElement, Int, IntegerMatrix, Subquotient};
use crate::error::{Error, Result};
use crate::gysin::{add_pullback, pushforward, BundleData, FluxElement};
use crate::io::{GroupShape, PairClassRecord};
use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// `T(c, d) = H^3(X) / (c ∪ H^1 + d ∪ H^1)`. The relation columns are reduced,
/// sorted and deduplicated, so `T(c, d)` and `T(d, c)` are the same object.
#[derive(Clone, Debug)]
pub struct TQuotient {
    relations: IntegerMatrix,
    presentation: Subquotient,
}

impl TQuotient {
    fn compute(x: &SimplicialComplex, c: &GroupElement, d: &GroupElement) -> Result<Self> {
        let h3 = x.cohomology(3);
        let n = h3.group().ngens();
        let table = x.cup_table(2, 1);
        let mut cols = BTreeSet::new();
        for class in [c, d] {
            let m = table.left_multiplication(class)?;
            for mut col in m.columns() {
                h3.group().reduce(&mut col);
                if col.iter().any(|v| !v.is_zero()) {
                    cols.insert(col);
                }
            }
        }
        let cols: Vec<Vec<Int>> = cols.into_iter().collect();
        let relations = IntegerMatrix::from_columns(&cols, n)?;
        let presentation = quotient(n, &h3.group().relation_matrix().hstack(&relations)?)?;
        Ok(TQuotient {
            relations,
            presentation,
        })
    }

    /// Generators of `c ∪ H^1 + d ∪ H^1` in `H^3` coordinates.
    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    pub fn group(&self) -> &FgAbelianGroup {
        self.presentation.group()
    }

    /// Image of an `H^3(X)` coordinate vector.
    pub fn class_of(&self, w: &[Int]) -> Result<GroupElement> {
        self.presentation.element_of(w)
    }

    /// An `H^3(X)` representative of `t`.
    pub fn lift(&self, t: &GroupElement) -> Result<Vec<Int>> {
        self.presentation.lift(t.coords())
    }
}

/// `T(c, d)` for classes in `H^2(x)`, cached per unordered pair.
pub fn t_quotient(x: &SimplicialComplex, c: &GroupElement, d: &GroupElement) -> Result<Arc<TQuotient>> {
    let h2 = x.cohomology(2);
    if c.group() != h2.group() || d.group() != h2.group() {
        return Err(Error::Contract(format!("T(c, d) needs classes in H^2({})", x.name())));
    }
    let (a, b) = if c.coords() <= d.coords() { (c, d) } else { (d, c) };
    let key = (a.coords().to_vec(), b.coords().to_vec());
    if let Some(t) = x.cache.t_quotients.lock().expect("T cache").get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(TQuotient::compute(x, a, b)?);
    Ok(x.cache
        .t_quotients
        .lock()
        .expect("T cache")
        .entry(key)
        .or_insert(t)
        .clone())
}

/// Whether `c ∪ d = 0` in `H^4(X)`.
pub fn cup_vanishes(x: &SimplicialComplex, c: &GroupElement, d: &GroupElement) -> Result<bool> {
    Ok(x.cup_table(2, 2).product(c, d)?.is_zero())
}

/// Canonical representative `(c, d, t)` of a pair class over `base`.
#[derive(Clone)]
pub struct PairClass {
    base: Arc<SimplicialComplex>,
    c: GroupElement,
    d: GroupElement,
    t: GroupElement,
}

impl PairClass {
    /// Builds the class from `c, d ∈ H^2` and an `H^3` representative `w` of `t`.
    pub fn new(base: Arc<SimplicialComplex>, c: GroupElement, d: GroupElement, w: &[Int]) -> Result<Self> {
        if !cup_vanishes(&base, &c, &d)? {
            return Err(Error::Contract(format!("c ∪ d ≠ 0 in H^4({})", base.name())));
        }
        let t = t_quotient(&base, &c, &d)?.class_of(w)?;
        Ok(PairClass { base, c, d, t })
    }

    /// Builds the class from canonical `t` coordinates in `T(c, d)`.
    pub fn from_t(base: Arc<SimplicialComplex>, c: GroupElement, d: GroupElement, t: GroupElement) -> Result<Self> {
        if !cup_vanishes(&base, &c, &d)? {
            return Err(Error::Contract(format!("c ∪ d ≠ 0 in H^4({})", base.name())));
        }
        if t_quotient(&base, &c, &d)?.group() != t.group() {
            return Err(Error::Contract(format!(
                "t must lie in T(c, d), got an element of {}",
                t.group()
            )));
        }
        Ok(PairClass { base, c, d, t })
    }

    /// The trivial pair `X × S^1` with zero flux.
    pub fn basepoint(base: Arc<SimplicialComplex>) -> Result<Self> {
        let zero = base.cohomology(2).group().zero();
        let n3 = base.cohomology(3).group().ngens();
        Self::new(base, zero.clone(), zero, &vec![Int::zero(); n3])
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn c(&self) -> &GroupElement {
        &self.c
    }

    pub fn d(&self) -> &GroupElement {
        &self.d
    }

    pub fn t(&self) -> &GroupElement {
        &self.t
    }

    pub fn t_quotient(&self) -> Result<Arc<TQuotient>> {
        t_quotient(&self.base, &self.c, &self.d)
    }

    /// An `H^3(X)` representative of `t`.
    pub fn t_lift(&self) -> Result<Vec<Int>> {
        self.t_quotient()?.lift(&self.t)
    }

    /// `(c, d, t)` as one coordinate tuple; the order used for sections.
    pub fn key(&self) -> (&[Int], &[Int], &[Int]) {
        (self.c.coords(), self.d.coords(), self.t.coords())
    }

    pub fn to_record(&self) -> PairClassRecord {
        let coords = |e: &GroupElement| e.coords_i64().expect("pair coordinates fit in i64");
        let g = self.t.group();
        PairClassRecord {
            complex: self.base.name().to_string(),
            basis: Some(self.base.basis_hash().to_string()),
            c: coords(&self.c),
            d: coords(&self.d),
            t: coords(&self.t),
            t_group: GroupShape {
                rank: g.free_rank(),
                torsion: g
                    .invariant_factors()
                    .iter()
                    .map(|v| i64::try_from(v).expect("torsion fits in i64"))
                    .collect(),
            },
        }
    }

    /// Resolves a record against `base`. The record's basis hash, when
    /// present, must match; its `t_group` must match the recomputed `T(c, d)`.
    pub fn from_record(record: &PairClassRecord, base: Arc<SimplicialComplex>) -> Result<Self> {
        if record.complex != base.name() {
            return Err(Error::validation(
                "complex",
                format!("record is over {:?}, not {:?}", record.complex, base.name()),
            ));
        }
        if let Some(hash) = &record.basis {
            if hash != base.basis_hash() {
                return Err(Error::validation(
                    "basis",
                    format!("coordinates refer to basis {hash}, complex has {}", base.basis_hash()),
                ));
            }
        }
        let h2 = base.cohomology(2);
        let class = |field: &str, v: &[i64]| -> Result<GroupElement> {
            if v.len() != h2.group().ngens() {
                return Err(Error::validation(
                    field,
                    format!("{} coordinates for H^2 = {}", v.len(), h2.group()),
                ));
            }
            h2.group().element_i64(v)
        };
        let c = class("c", &record.c)?;
        let d = class("d", &record.d)?;
        if !cup_vanishes(&base, &c, &d)? {
            return Err(Error::validation("d", "c ∪ d does not vanish"));
        }
        let tq = t_quotient(&base, &c, &d)?;
        let g = tq.group();
        let shape_ok = record.t_group.rank == g.free_rank()
            && record.t_group.torsion.len() == g.torsion_rank()
            && record
                .t_group
                .torsion
                .iter()
                .zip(g.invariant_factors())
                .all(|(a, b)| Int::from(*a) == *b);
        if !shape_ok {
            return Err(Error::validation("t_group", format!("T(c, d) is {g}")));
        }
        if record.t.len() != g.ngens() {
            return Err(Error::validation(
                "t",
                format!("{} coordinates for T(c, d) = {g}", record.t.len()),
            ));
        }
        let t = g.element_i64(&record.t)?;
        Ok(PairClass { base, c, d, t })
    }
}

impl PartialEq for PairClass {
    fn eq(&self, other: &Self) -> bool {
        self.base.basis_hash() == other.base.basis_hash() && self.key() == other.key()
    }
}

impl Eq for PairClass {}

impl PartialOrd for PairClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key()
            .cmp(&other.key())
            .then_with(|| self.base.basis_hash().cmp(other.base.basis_hash()))
    }
}

impl std::hash::Hash for PairClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Debug for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(c={}, d={}, t={})", self.c, self.d, self.t)
    }
}

/// `H ↦ H + π*(π_!(H) ∪ a)` for `a ∈ H^1(X)`.
pub fn gauge_act(h: &FluxElement, a: &GroupElement) -> Result<FluxElement> {
    let x = h.bundle().base();
    if a.group() != x.cohomology(1).group() {
        return Err(Error::Contract(format!("{} is not H^1({})", a.group(), x.name())));
    }
    let d = pushforward(h)?;
    let w = x.cup_table(2, 1).product(&d, a)?;
    add_pullback(h, &w)
}

/// `(c, π_!(h), [s] ∈ T(c, d))`.
pub fn pair_class(h: &FluxElement) -> Result<PairClass> {
    let bundle = h.bundle();
    let d = pushforward(h)?;
    PairClass::new(bundle.base().clone(), bundle.c().clone(), d, &h.s_lift()?)
}

/// A flux realising the class: `π_!(H) = d`, π*-part lifting `t`.
pub fn flux_of(p: &PairClass) -> Result<FluxElement> {
    let bundle = BundleData::new(p.base.clone(), p.c.clone())?;
    let w = p.base.cohomology(3).element(p.t_lift()?)?;
    FluxElement::from_parts(bundle, &p.d, &w)
}

/// `(c, d, t) ↦ (d, c, t)`.
pub fn t_dual(p: &PairClass) -> PairClass {
    PairClass {
        base: p.base.clone(),
        c: p.d.clone(),
        d: p.c.clone(),
        t: p.t.clone(),
    }
}

/// The fiber of `P_0(X)` over `c`: admissible `d` form `ker(∪c : H^2 → H^4)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub c: GroupElement,
    /// Abstract type of `ker(∪c)`.
    pub d_group: FgAbelianGroup,
    /// Generators of `ker(∪c)` as classes in `H^2(X)`.
    pub d_generators: Vec<GroupElement>,
    /// Window classes: `d` with `H^2` coordinates in `[-bound, bound]`, all
    /// torsion of `T(c, d)` and free `t` coordinates in `[-bound, bound]`.
    pub classes: Vec<PairClass>,
}

pub fn classify_fiber(x: &Arc<SimplicialComplex>, c: &GroupElement, bound: u64) -> Result<Fiber> {
    let bundle = BundleData::new(x.clone(), c.clone())?;
    let g = bundle.gysin(3)?;
    let h2 = x.cohomology(2);
    let d_generators = g
        .quot_inclusion()
        .columns()
        .into_iter()
        .map(|col| h2.element(col))
        .collect::<Result<Vec<_>>>()?;
    let mut classes = Vec::new();
    for d in h2.group().enumerate_elements(bound) {
        if !g.quot_contains(d.coords())? {
            continue;
        }
        classes.extend(fiber_classes(x, c, &d, bound)?);
    }
    Ok(Fiber {
        c: c.clone(),
        d_group: g.quot().clone(),
        d_generators,
        classes,
    })
}

/// All classes `(c, d, t)` for fixed `c, d`, `t` ranging over the bounded window of `T(c, d)`.
pub fn fiber_classes(
    x: &Arc<SimplicialComplex>,
    c: &GroupElement,
    d: &GroupElement,
    bound: u64,
) -> Result<Vec<PairClass>> {
    if !cup_vanishes(x, c, d)? {
        return Err(Error::Contract("c ∪ d ≠ 0".into()));
    }
    let tq = t_quotient(x, c, d)?;
    Ok(tq
        .group()
        .enumerate_elements(bound)
        .into_iter()
        .map(|t| PairClass {
            base: x.clone(),
            c: c.clone(),
            d: d.clone(),
            t,
        })
        .collect())
}

/// Every class with `c, d` coordinates in `[-bound, bound]` and `t` in the
/// bounded window of `T(c, d)`, in lexicographic `(c, d, t)` order.
pub fn window(x: &Arc<SimplicialComplex>, bound: u64) -> Result<Vec<PairClass>> {
    let h2 = x.cohomology(2);
    let mut out = Vec::new();
    let elems = h2.group().enumerate_elements(bound);
    for c in &elems {
        for d in &elems {
            if cup_vanishes(x, c, d)? {
                out.extend(fiber_classes(x, c, d, bound)?);
            }
        }
    }
    Ok(out)
}

/// `{a ∈ H^1 : d ∪ a ∈ c ∪ H^1}` with its inclusion into `H^1(X)`.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub group: FgAbelianGroup,
    /// Columns are `H^1(X)` coordinates of the generators.
    pub inclusion: IntegerMatrix,
}

pub fn gauge_stabilizer(p: &PairClass) -> Result<Stabilizer> {
    let x = &p.base;
    let h1 = x.cohomology(1);
    let g3 = BundleData::new(x.clone(), p.c.clone())?.gysin(3)?;
    let table = x.cup_table(2, 1);
    let cols = (0..h1.group().ngens())
        .map(|i| {
            let w = table.product(&p.d, &h1.group().generator(i))?;
            Ok(g3.sub_class(w.coords())?.into_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    let m = IntegerMatrix::from_columns(&cols, g3.sub().ngens())?;
    let kernel = hom_kernel(&m, h1.group(), g3.sub())?;
    Ok(Stabilizer {
        group: kernel.group().clone(),
        inclusion: kernel.generator_lifts().clone(),
    })
}

/// Pulls `p` back along an injective simplicial map `A ↪ X`.
pub fn restrict(p: &PairClass, incl: &SimplicialMap) -> Result<PairClass> {
    if !incl.is_injective() {
        return Err(Error::Contract("restriction needs an injective simplicial map".into()));
    }
    if incl.target().basis_hash() != p.base.basis_hash() {
        return Err(Error::Contract(format!(
            "map lands in {}, class lives over {}",
            incl.target().name(),
            p.base.name()
        )));
    }
    pull_back(p, incl)
}

/// `(f*c, f*d, f*t)` for any simplicial map `f` into the base of `p`.
pub fn pull_back(p: &PairClass, f: &SimplicialMap) -> Result<PairClass> {
    let a = f.source().clone();
    let m2 = f.induced_map(2)?;
    let m3 = f.induced_map(3)?;
    let h2 = a.cohomology(2);
    let c = h2.element(m2.mul_vec(p.c.coords())?)?;
    let d = h2.element(m2.mul_vec(p.d.coords())?)?;
    let w = m3.mul_vec(&p.t_lift()?)?;
    PairClass::new(a, c, d, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::gysin::pullback;
    use crate::simplicial::load_complex;

    fn arc(doc: crate::io::ComplexDocument) -> Arc<SimplicialComplex> {
        Arc::new(load_complex(&doc).unwrap())
    }

    fn h2(x: &SimplicialComplex, v: &[i64]) -> GroupElement {
        x.cohomology(2).group().element_i64(v).unwrap()
    }

    #[test]
    fn basepoint_is_all_zero() {
        let x = arc(corpus::torus7());
        let bundle = BundleData::new(x.clone(), h2(&x, &[0])).unwrap();
        let p = pair_class(&FluxElement::zero(bundle).unwrap()).unwrap();
        assert_eq!(p, PairClass::basepoint(x).unwrap());
        assert!(p.c().is_zero() && p.d().is_zero() && p.t().is_zero());
    }

    #[test]
    fn sphere_fibers_have_trivial_t() {
        let x = arc(corpus::sphere());
        for n in -2..=2 {
            let f = classify_fiber(&x, &h2(&x, &[n]), 1).unwrap();
            assert_eq!(f.d_group, FgAbelianGroup::free(1));
            assert_eq!(f.classes.len(), 3);
            assert!(f.classes.iter().all(|p| p.t().group().is_trivial()));
        }
    }

    #[test]
    fn t_dual_swaps_and_is_involutive() {
        let x = arc(corpus::sphere());
        let p = PairClass::new(x.clone(), h2(&x, &[1]), h2(&x, &[0]), &[]).unwrap();
        let q = t_dual(&p);
        assert_eq!(q.c(), &h2(&x, &[0]));
        assert_eq!(q.d(), &h2(&x, &[1]));
        assert_eq!(t_dual(&q), p);
    }

    #[test]
    fn record_round_trip_and_basis_check() {
        let x = arc(corpus::sphere());
        let p = PairClass::new(x.clone(), h2(&x, &[2]), h2(&x, &[-1]), &[]).unwrap();
        let mut r = p.to_record();
        assert_eq!(PairClass::from_record(&r, x.clone()).unwrap(), p);
        r.basis = Some("0000000000000000".into());
        let err = PairClass::from_record(&r, x.clone()).unwrap_err();
        assert!(err.to_string().contains("basis"), "{err}");
        r.basis = None;
        r.c = vec![1, 2];
        assert!(PairClass::from_record(&r, x).is_err());
    }

    #[test]
    fn restriction_to_identity_and_point() {
        let x = arc(corpus::sphere());
        let p = PairClass::new(x.clone(), h2(&x, &[3]), h2(&x, &[1]), &[]).unwrap();
        assert_eq!(restrict(&p, &SimplicialMap::identity(x.clone())).unwrap(), p);
        let pt = arc(corpus::point());
        let incl = SimplicialMap::new(pt.clone(), x.clone(), vec![2]).unwrap();
        assert_eq!(restrict(&p, &incl).unwrap(), PairClass::basepoint(pt).unwrap());
    }

    #[test]
    fn non_injective_restriction_is_rejected() {
        let x = arc(corpus::sphere());
        let s1 = arc(corpus::circle(3));
        let p = PairClass::basepoint(x.clone()).unwrap();
        let f = SimplicialMap::new(s1, x, vec![0, 1, 1]).unwrap();
        assert!(matches!(restrict(&p, &f), Err(Error::Contract(_))));
    }

    #[test]
    fn gauge_action_is_trivial_without_h3() {
        let x = arc(corpus::torus7());
        let bundle = BundleData::new(x.clone(), h2(&x, &[2])).unwrap();
        let h = FluxElement::from_parts(bundle.clone(), &h2(&x, &[5]), &x.cohomology(3).group().zero()).unwrap();
        let a = x.cohomology(1).group().element_i64(&[1, -1]).unwrap();
        assert_eq!(gauge_act(&h, &a).unwrap(), h);
        assert_eq!(
            pair_class(&pullback(&bundle, &x.cohomology(3).group().zero()).unwrap())
                .unwrap()
                .d(),
            &h2(&x, &[0])
        );
    }
}
