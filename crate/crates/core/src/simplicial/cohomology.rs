use std::sync::Arc;

use num_traits::Zero;

use crate::abelian::{kernel_lattice, FgAbelianGroup, GroupElement, Int, IntegerMatrix, Subquotient};
use crate::error::{Error, Result};

use super::complex::SimplicialComplex;

/// An integral cochain of a fixed degree, indexed by the sorted simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    pub degree: usize,
    pub coefficients: Vec<Int>,
}

impl Cocycle {
    pub fn new(degree: usize, coefficients: Vec<Int>) -> Self {
        Cocycle { degree, coefficients }
    }

    pub fn zero(x: &SimplicialComplex, degree: usize) -> Self {
        Cocycle::new(degree, vec![Int::zero(); x.simplex_count(degree)])
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.degree != other.degree || self.coefficients.len() != other.coefficients.len() {
            return Err(Error::Shape("adding cochains of different shapes".into()));
        }
        Ok(Cocycle::new(
            self.degree,
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn scale(&self, k: &Int) -> Cocycle {
        Cocycle::new(self.degree, self.coefficients.iter().map(|a| a * k).collect())
    }
}

/// `H^k(X; Z)` with one representative cocycle per canonical generator.
/// Generator `i` is identified as `"H{k}:g{i}"`.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    presentation: Subquotient,
    representatives: Vec<Cocycle>,
}

impl CohomologyBasis {
    pub(crate) fn compute(x: &SimplicialComplex, k: usize) -> Self {
        let n = x.simplex_count(k);
        let kernel = kernel_lattice(&x.coboundary(k));
        let image = if k == 0 {
            IntegerMatrix::zeros(n, 0)
        } else {
            x.coboundary(k - 1)
        };
        let presentation = Subquotient::build(n, Some(&kernel), &image).expect("coboundaries are cocycles");
        let representatives = presentation
            .generator_lifts()
            .columns()
            .into_iter()
            .map(|c| Cocycle::new(k, c))
            .collect();
        CohomologyBasis {
            degree: k,
            presentation,
            representatives,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbelianGroup {
        self.presentation.group()
    }

    pub fn representatives(&self) -> &[Cocycle] {
        &self.representatives
    }

    pub fn generator_ids(&self) -> Vec<String> {
        (0..self.group().ngens())
            .map(|i| format!("H{}:g{i}", self.degree))
            .collect()
    }

    /// Cohomology class of a cocycle in canonical coordinates.
    pub fn class_of(&self, z: &Cocycle) -> Result<GroupElement> {
        if z.degree != self.degree {
            return Err(Error::Contract(format!(
                "degree-{} cochain passed to H^{}",
                z.degree, self.degree
            )));
        }
        self.presentation.element_of(&z.coefficients).map_err(|e| match e {
            Error::NotInSubgroup(_) => Error::Contract("cochain is not a cocycle".into()),
            other => other,
        })
    }

    /// A cocycle representing the given class.
    pub fn representative(&self, class: &GroupElement) -> Result<Cocycle> {
        if class.group() != self.group() {
            return Err(Error::Contract(format!(
                "class of {} is not in H^{}",
                class.group(),
                self.degree
            )));
        }
        Ok(Cocycle::new(self.degree, self.presentation.lift(class.coords())?))
    }

    pub fn element(&self, coords: Vec<Int>) -> Result<GroupElement> {
        self.group().element(coords)
    }
}

impl SimplicialComplex {
    /// `H^k(X; Z)`; the trivial group above the dimension.
    pub fn cohomology(&self, k: usize) -> Arc<CohomologyBasis> {
        match self.cache.cohomology.get(k) {
            Some(cell) => cell.get_or_init(|| Arc::new(CohomologyBasis::compute(self, k))).clone(),
            None => Arc::new(CohomologyBasis::compute(self, k)),
        }
    }

    pub fn is_cocycle(&self, z: &Cocycle) -> Result<bool> {
        Ok(self
            .apply_coboundary(z.degree, &z.coefficients)?
            .iter()
            .all(Zero::is_zero))
    }

    /// Bilinear table of `∪ : H^p × H^q → H^{p+q}` on canonical generators.
    pub fn cup_table(&self, p: usize, q: usize) -> Arc<CupTable> {
        let tables = self.cache.cup_tables.lock().expect("cup table lock");
        if let Some(t) = tables.get(&(p, q)) {
            return t.clone();
        }
        drop(tables);
        let table = Arc::new(CupTable::compute(self, p, q));
        self.cache
            .cup_tables
            .lock()
            .expect("cup table lock")
            .entry((p, q))
            .or_insert(table)
            .clone()
    }
}

/// Alexander–Whitney cup product at the cochain level:
/// `(a ∪ b)[v_0..v_{p+q}] = a[v_0..v_p] · b[v_p..v_{p+q}]`.
pub fn cup(x: &SimplicialComplex, a: &Cocycle, b: &Cocycle) -> Result<Cocycle> {
    for (name, z) in [("left", a), ("right", b)] {
        if !x.is_cocycle(z)? {
            return Err(Error::Contract(format!("{name} factor is not a cocycle")));
        }
    }
    Ok(cup_cochains(x, a, b))
}

/// Cup product without the cocycle check (Alexander–Whitney is defined on all cochains).
pub fn cup_cochains(x: &SimplicialComplex, a: &Cocycle, b: &Cocycle) -> Cocycle {
    let (p, q) = (a.degree, b.degree);
    let mut out = Vec::with_capacity(x.simplex_count(p + q));
    for sigma in x.simplices(p + q) {
        let front = &sigma[..=p];
        let back = &sigma[p..];
        let fa = &a.coefficients[x.simplex_index(front).expect("face-closed")];
        if fa.is_zero() {
            out.push(Int::zero());
            continue;
        }
        let bb = &b.coefficients[x.simplex_index(back).expect("face-closed")];
        out.push(fa * bb);
    }
    Cocycle::new(p + q, out)
}

/// Cup products of canonical generators, `entries[i][j] = [g_i ∪ g_j]`.
#[derive(Clone, Debug)]
pub struct CupTable {
    p: usize,
    q: usize,
    left: FgAbelianGroup,
    right: FgAbelianGroup,
    target: FgAbelianGroup,
    entries: Vec<Vec<Vec<Int>>>,
}

impl CupTable {
    fn compute(x: &SimplicialComplex, p: usize, q: usize) -> Self {
        let hp = x.cohomology(p);
        let hq = x.cohomology(q);
        let hpq = x.cohomology(p + q);
        let entries = hp
            .representatives()
            .iter()
            .map(|a| {
                hq.representatives()
                    .iter()
                    .map(|b| {
                        let z = cup_cochains(x, a, b);
                        hpq.class_of(&z).expect("cup of cocycles is a cocycle").into_coords()
                    })
                    .collect()
            })
            .collect();
        CupTable {
            p,
            q,
            left: hp.group().clone(),
            right: hq.group().clone(),
            target: hpq.group().clone(),
            entries,
        }
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Int] {
        &self.entries[i][j]
    }

    /// `[a] ∪ [b]` by bilinearity on coordinates.
    pub fn product(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        if a.group() != &self.left || b.group() != &self.right {
            return Err(Error::Contract(format!(
                "cup table H^{} x H^{} applied to elements of {} and {}",
                self.p,
                self.q,
                a.group(),
                b.group()
            )));
        }
        self.product_coords(a.coords(), b.coords())
    }

    pub(crate) fn product_coords(&self, a: &[Int], b: &[Int]) -> Result<GroupElement> {
        let mut acc = vec![Int::zero(); self.target.ngens()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (t, e) in acc.iter_mut().zip(&self.entries[i][j]) {
                    if !e.is_zero() {
                        *t += &s * e;
                    }
                }
            }
        }
        self.target.element(acc)
    }

    /// Matrix of `a ↦ a ∪ fixed` from the left factor's group to the target.
    pub fn right_multiplication(&self, fixed: &GroupElement) -> Result<IntegerMatrix> {
        let cols: Vec<Vec<Int>> = (0..self.left.ngens())
            .map(|i| {
                self.product(&self.left.generator(i), fixed)
                    .map(GroupElement::into_coords)
            })
            .collect::<Result<_>>()?;
        IntegerMatrix::from_columns(&cols, self.target.ngens())
    }

    /// Matrix of `b ↦ fixed ∪ b` from the right factor's group to the target.
    pub fn left_multiplication(&self, fixed: &GroupElement) -> Result<IntegerMatrix> {
        let cols: Vec<Vec<Int>> = (0..self.right.ngens())
            .map(|j| {
                self.product(fixed, &self.right.generator(j))
                    .map(GroupElement::into_coords)
            })
            .collect::<Result<_>>()?;
        IntegerMatrix::from_columns(&cols, self.target.ngens())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::ints;
    use crate::corpus;
    use crate::simplicial::load_complex;

    fn groups(doc: crate::io::ComplexDocument) -> Vec<FgAbelianGroup> {
        let x = load_complex(&doc).unwrap();
        (0..=x.dimension()).map(|k| x.cohomology(k).group().clone()).collect()
    }

    #[test]
    fn sphere_torus_projective_plane() {
        let z = FgAbelianGroup::free(1);
        assert_eq!(
            groups(corpus::sphere()),
            vec![z.clone(), FgAbelianGroup::trivial(), z.clone()]
        );
        assert_eq!(
            groups(corpus::torus7()),
            vec![z.clone(), FgAbelianGroup::free(2), z.clone()]
        );
        assert_eq!(
            groups(corpus::rp2()),
            vec![z.clone(), FgAbelianGroup::trivial(), FgAbelianGroup::cyclic(2)]
        );
    }

    #[test]
    fn above_dimension_is_trivial() {
        let x = load_complex(&corpus::sphere()).unwrap();
        assert!(x.cohomology(3).group().is_trivial());
        assert!(x.cohomology(7).group().is_trivial());
    }

    #[test]
    fn representatives_round_trip() {
        let x = load_complex(&corpus::rp2()).unwrap();
        for k in 0..=2 {
            let h = x.cohomology(k);
            for (i, z) in h.representatives().iter().enumerate() {
                assert!(x.is_cocycle(z).unwrap());
                assert_eq!(h.class_of(z).unwrap(), h.group().generator(i));
            }
        }
        assert_eq!(x.cohomology(2).generator_ids(), vec!["H2:g0".to_string()]);
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let x = load_complex(&corpus::sphere()).unwrap();
        let mut bad = Cocycle::zero(&x, 1);
        bad.coefficients[0] = Int::from(1);
        assert!(matches!(x.cohomology(1).class_of(&bad), Err(Error::Contract(_))));
        assert!(matches!(cup(&x, &bad, &Cocycle::zero(&x, 1)), Err(Error::Contract(_))));
    }

    #[test]
    fn zero_factor_gives_zero() {
        let x = load_complex(&corpus::torus7()).unwrap();
        let a = x.cohomology(1).representatives()[0].clone();
        assert!(cup(&x, &Cocycle::zero(&x, 1), &a).unwrap().is_zero());
    }

    #[test]
    fn torus_cup_product_pairs_generators() {
        // Independent of the canonical basis: build the H^1 classes by hand from
        // the 7-vertex torus and check the cup square vanishes while the mixed
        // product generates H^2.
        let x = load_complex(&corpus::torus7()).unwrap();
        let h1 = x.cohomology(1);
        let h2 = x.cohomology(2);
        let [alpha, beta] = [&h1.representatives()[0], &h1.representatives()[1]];
        let ab = h2.class_of(&cup(&x, alpha, beta).unwrap()).unwrap();
        assert_eq!(ab.coords().len(), 1);
        assert!(ab.coords()[0] == Int::from(1) || ab.coords()[0] == Int::from(-1));
        assert!(h2.class_of(&cup(&x, alpha, alpha).unwrap()).unwrap().is_zero());
        assert!(h2.class_of(&cup(&x, beta, beta).unwrap()).unwrap().is_zero());
        let ba = h2.class_of(&cup(&x, beta, alpha).unwrap()).unwrap();
        assert_eq!(ba, ab.neg());
        let t = x.cup_table(1, 1);
        assert_eq!(t.entry(0, 1), ab.coords());
        assert_eq!(t.entry(0, 0), &ints(&[0])[..]);
    }
}
