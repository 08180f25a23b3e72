use std::sync::Arc;

use crate::abelian::{automorphism_inverse, is_automorphism, reduce_hom, GroupElement, IntegerMatrix};
use crate::error::{Error, Result};
use crate::io::{HomeoDocument, HomeoKind, Order};
use crate::pairs::{cup_vanishes, t_quotient, PairClass};
use crate::simplicial::{SimplicialComplex, SimplicialMap};

/// Largest power tried when looking for the order of a cohomology action.
pub const ORDER_SEARCH_LIMIT: u64 = 1024;

/// Degrees carrying a recorded action; `H^0` is always fixed.
const DEGREES: [usize; 4] = [1, 2, 3, 4];

/// A self-homeomorphism of `X` through its action on `H^1 … H^4`.
///
/// `matrix(k)` sends canonical coordinates of a class to those of its
/// pullback; columns are images of generators.
#[derive(Clone, Debug)]
pub struct HomeoData {
    name: String,
    base: Arc<SimplicialComplex>,
    map: Option<SimplicialMap>,
    matrices: [IntegerMatrix; 4],
    inverses: [IntegerMatrix; 4],
    order: Order,
    declared: bool,
}

fn ring_pairs() -> [(usize, usize); 4] {
    [(1, 1), (1, 2), (2, 2), (1, 3)]
}

impl HomeoData {
    /// Validates a homeomorphism document against `base`.
    pub fn from_document(doc: &HomeoDocument, base: Arc<SimplicialComplex>) -> Result<Self> {
        let ngens = |k: usize| base.cohomology(k).group().ngens();
        let (map, raw): (Option<SimplicialMap>, Vec<IntegerMatrix>) = match doc.kind {
            HomeoKind::Simplicial => {
                if doc.m1.is_some() || doc.m2.is_some() || doc.m3.is_some() || doc.m4.is_some() {
                    return Err(Error::validation(
                        &doc.name,
                        "simplicial homeomorphisms take no matrices",
                    ));
                }
                let labels = doc
                    .vertex_map
                    .as_ref()
                    .ok_or_else(|| Error::validation(format!("{}.vertex_map", doc.name), "missing"))?;
                let f = SimplicialMap::from_labels(labels, base.clone(), base.clone())?;
                if !f.is_homeomorphism() {
                    return Err(Error::validation(
                        format!("{}.vertex_map", doc.name),
                        "not a bijection of vertices and facets",
                    ));
                }
                let ms = DEGREES.iter().map(|&k| f.induced_map(k)).collect::<Result<Vec<_>>>()?;
                (Some(f), ms)
            }
            HomeoKind::Matrices => {
                if doc.vertex_map.is_some() {
                    return Err(Error::validation(&doc.name, "matrix homeomorphisms take no vertex map"));
                }
                let given = [&doc.m1, &doc.m2, &doc.m3, &doc.m4];
                let ms = DEGREES
                    .iter()
                    .zip(given)
                    .map(|(&k, m)| {
                        let n = ngens(k);
                        let loc = format!("{}.m{k}", doc.name);
                        match m {
                            None if n == 0 => Ok(IntegerMatrix::zeros(0, 0)),
                            None => Err(Error::validation(
                                loc,
                                format!("required, H^{k} = {}", base.cohomology(k).group()),
                            )),
                            Some(rows) => {
                                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                                    return Err(Error::validation(loc, format!("must be {n}x{n}")));
                                }
                                IntegerMatrix::from_rows(rows, n)
                            }
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                (None, ms)
            }
        };

        let mut matrices = Vec::with_capacity(4);
        let mut inverses = Vec::with_capacity(4);
        for (&k, m) in DEGREES.iter().zip(raw) {
            let g = base.cohomology(k);
            if !is_automorphism(&m, g.group())? {
                return Err(Error::validation(
                    format!("{}.m{k}", doc.name),
                    format!("not invertible on H^{k} = {}", g.group()),
                ));
            }
            inverses.push(automorphism_inverse(&m, g.group())?);
            matrices.push(reduce_hom(&m, g.group()));
        }
        let matrices: [IntegerMatrix; 4] = matrices.try_into().expect("four degrees");
        let inverses: [IntegerMatrix; 4] = inverses.try_into().expect("four degrees");

        let mut h = HomeoData {
            name: doc.name.clone(),
            base,
            map,
            matrices,
            inverses,
            order: Order::Infinite,
            declared: doc.declared_order.is_some(),
        };
        h.check_ring()?;
        h.order = match doc.declared_order {
            Some(Order::Finite(n)) => {
                if !h.power_is_identity(n)? {
                    return Err(Error::validation(
                        format!("{}.declared_order", doc.name),
                        format!("the cohomology action does not have order dividing {n}"),
                    ));
                }
                Order::Finite(n)
            }
            Some(Order::Infinite) => {
                if h.map.is_some() {
                    return Err(Error::validation(
                        format!("{}.declared_order", doc.name),
                        "a simplicial homeomorphism permutes finitely many vertices",
                    ));
                }
                Order::Infinite
            }
            None => match &h.map {
                Some(f) => Order::Finite(permutation_order(f.vertex_map())),
                None => h.action_order()?,
            },
        };
        Ok(h)
    }

    /// `M_{p+q}(a ∪ b) = M_p(a) ∪ M_q(b)` on every pair of generators.
    fn check_ring(&self) -> Result<()> {
        let x = &self.base;
        for (p, q) in ring_pairs() {
            let table = x.cup_table(p, q);
            let gp = x.cohomology(p);
            let gq = x.cohomology(q);
            for i in 0..gp.group().ngens() {
                for j in 0..gq.group().ngens() {
                    let a = gp.group().generator(i);
                    let b = gq.group().generator(j);
                    let lhs = self.apply(p + q, &table.product(&a, &b)?)?;
                    let rhs = table.product(&self.apply(p, &a)?, &self.apply(q, &b)?)?;
                    if lhs != rhs {
                        return Err(Error::validation(
                            format!("{}: H{p}:g{i} ∪ H{q}:g{j}", self.name),
                            format!("action is not multiplicative ({lhs} vs {rhs})"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn power_is_identity(&self, n: u64) -> Result<bool> {
        for k in DEGREES {
            let g = self.base.cohomology(k);
            let mut p = IntegerMatrix::identity(g.group().ngens());
            for _ in 0..n {
                p = reduce_hom(&self.matrices[k - 1].mul(&p)?, g.group());
            }
            if p != reduce_hom(&IntegerMatrix::identity(g.group().ngens()), g.group()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Order of the action on `H^1 ⊕ … ⊕ H^4`, searched up to [`ORDER_SEARCH_LIMIT`].
    pub fn action_order(&self) -> Result<Order> {
        action_order(&self.base, &self.matrices, &[1, 2, 3, 4])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn simplicial_map(&self) -> Option<&SimplicialMap> {
        self.map.as_ref()
    }

    /// Order used for the abstract generator: declared, else the vertex
    /// permutation order, else the order of the cohomology action.
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn order_was_declared(&self) -> bool {
        self.declared
    }

    /// Action matrix on `H^k`, `1 ≤ k ≤ 4`.
    pub fn matrix(&self, k: usize) -> &IntegerMatrix {
        &self.matrices[k - 1]
    }

    pub fn inverse_matrix(&self, k: usize) -> &IntegerMatrix {
        &self.inverses[k - 1]
    }

    fn apply(&self, k: usize, x: &GroupElement) -> Result<GroupElement> {
        apply_degree(&self.base, k, &self.matrices, x)
    }
}

pub(crate) fn apply_degree(
    x: &SimplicialComplex,
    k: usize,
    matrices: &[IntegerMatrix; 4],
    e: &GroupElement,
) -> Result<GroupElement> {
    if k == 0 || k > 4 {
        return Ok(e.clone());
    }
    x.cohomology(k).element(matrices[k - 1].mul_vec(e.coords())?)
}

/// Smallest `n ≥ 1` with every listed `matrices[k-1]^n` the identity on `H^k`.
pub(crate) fn action_order(x: &SimplicialComplex, matrices: &[IntegerMatrix; 4], degrees: &[usize]) -> Result<Order> {
    let groups: Vec<_> = degrees.iter().map(|&k| x.cohomology(k)).collect();
    let ids: Vec<IntegerMatrix> = groups
        .iter()
        .map(|g| reduce_hom(&IntegerMatrix::identity(g.group().ngens()), g.group()))
        .collect();
    let mut powers: Vec<IntegerMatrix> = ids.clone();
    for n in 1..=ORDER_SEARCH_LIMIT {
        let mut all = true;
        for (i, &k) in degrees.iter().enumerate() {
            powers[i] = reduce_hom(&matrices[k - 1].mul(&powers[i])?, groups[i].group());
            all &= powers[i] == ids[i];
        }
        if all {
            return Ok(Order::Finite(n));
        }
    }
    Ok(Order::Infinite)
}

fn permutation_order(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1u64;
    for start in 0..p.len() {
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            order = num_integer::lcm(order, len);
        }
    }
    order
}

/// `(c, d, t) ↦ (M_2 c, M_2 d, [M_3 t̃])` for the action matrices of a homeomorphism
/// or a composite of homeomorphisms.
pub(crate) fn act_with(matrices: &[IntegerMatrix; 4], p: &PairClass) -> Result<PairClass> {
    let x = p.base();
    let c = apply_degree(x, 2, matrices, p.c())?;
    let d = apply_degree(x, 2, matrices, p.d())?;
    debug_assert!(cup_vanishes(x, &c, &d)?);
    let w = matrices[2].mul_vec(&p.t_lift()?)?;
    let t = t_quotient(x, &c, &d)?.class_of(&w)?;
    PairClass::from_t(x.clone(), c, d, t)
}

/// Pullback of `p` along the registered homeomorphism `h`.
pub fn homeo_act(h: &HomeoData, p: &PairClass) -> Result<PairClass> {
    if h.base.basis_hash() != p.base().basis_hash() {
        return Err(Error::Contract(format!(
            "{} acts on {}, class lives over {}",
            h.name,
            h.base.name(),
            p.base().name()
        )));
    }
    act_with(&h.matrices, p)
}
