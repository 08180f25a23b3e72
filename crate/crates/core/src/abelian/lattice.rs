//! Sublattices of `Z^n`, quotients of them, and homomorphisms between
//! canonically presented groups.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{FgAbelianGroup, GroupElement};
use super::matrix::{Int, IntegerMatrix};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Basis of `{x ∈ Z^cols : M x = 0}`, as the columns of the result.
pub fn kernel_lattice(m: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(m);
    let free: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_columns(&free)
}

/// `Z^rows / im(M)` in canonical form.
pub fn cokernel(m: &IntegerMatrix) -> FgAbelianGroup {
    let s = smith_normal_form(m);
    let diag = s.diagonal();
    FgAbelianGroup::from_diagonal(&diag, m.rows() - diag.len())
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve(a: &IntegerMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(b)?;
    let diag = s.diagonal();
    let mut y = vec![Int::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem(&diag[i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}

/// Generators (columns) of `⟨A⟩ ∩ ⟨B⟩`.
pub fn intersect(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<IntegerMatrix> {
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "intersecting lattices in Z^{} and Z^{}",
            a.rows(),
            b.rows()
        )));
    }
    let k = kernel_lattice(&a.hstack(&b.neg())?);
    let top: Vec<usize> = (0..a.cols()).collect();
    a.mul(&k.select_rows(&top))
}

/// A subquotient `S / R` of `Z^n` with `R ⊆ S`, together with the coordinate
/// map from `S` onto the canonical presentation and lifts of its generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient_dim: usize,
    group: FgAbelianGroup,
    /// `U` from the Smith form `U S V = D` of the subgroup generators.
    basis_u: IntegerMatrix,
    basis_diag: Vec<Int>,
    /// Rows of the second Smith transform that carry a group coordinate.
    coord_map: IntegerMatrix,
    /// Ambient representatives of the canonical generators, as columns.
    lifts: IntegerMatrix,
}

impl Subquotient {
    /// `sub = None` means the whole lattice `Z^n`. Every relation column must
    /// lie in the subgroup.
    pub fn build(n: usize, sub: Option<&IntegerMatrix>, relations: &IntegerMatrix) -> Result<Self> {
        if relations.rows() != n || sub.is_some_and(|s| s.rows() != n) {
            return Err(Error::Shape(format!("generators must live in Z^{n}")));
        }
        let (basis_u, basis_u_inv, basis_diag) = match sub {
            None => (
                IntegerMatrix::identity(n),
                IntegerMatrix::identity(n),
                vec![Int::one(); n],
            ),
            Some(s) => {
                let f = smith_normal_form(s);
                let diag = f.diagonal()[..f.rank].to_vec();
                (f.u, f.u_inv, diag)
            }
        };
        let r = basis_diag.len();
        let mut partial = Subquotient {
            ambient_dim: n,
            group: FgAbelianGroup::free(r),
            basis_u,
            basis_diag,
            coord_map: IntegerMatrix::identity(r),
            lifts: IntegerMatrix::zeros(n, 0),
        };
        let mut rel_cols = Vec::with_capacity(relations.cols());
        for (j, col) in relations.columns().into_iter().enumerate() {
            let y = partial
                .basis_coords(&col)?
                .ok_or_else(|| Error::NotInSubgroup(format!("relation #{j} is outside the subgroup")))?;
            rel_cols.push(y);
        }
        let rel = IntegerMatrix::from_columns(&rel_cols, r)?;
        let f = smith_normal_form(&rel);
        let diag = f.diagonal();
        // Coordinate positions: non-unit diagonal entries, then the zero/absent ones.
        let keep: Vec<usize> = (0..r).filter(|&i| i >= diag.len() || !diag[i].is_one()).collect();
        partial.group = FgAbelianGroup::from_diagonal(&diag, r - diag.len());
        partial.coord_map = f.u.select_rows(&keep);
        // x = U_S^{-1} · diag(D_S) · y for basis coordinates y.
        let mut scaled = IntegerMatrix::zeros(n, r);
        for i in 0..n {
            for k in 0..r {
                let v = basis_u_inv.get(i, k);
                if !v.is_zero() {
                    scaled.set(i, k, v * &partial.basis_diag[k]);
                }
            }
        }
        partial.lifts = scaled.mul(&f.u_inv.select_columns(&keep))?;
        Ok(partial)
    }

    /// Coordinates of `x` in the subgroup basis, `None` if `x ∉ S`.
    fn basis_coords(&self, x: &[Int]) -> Result<Option<Vec<Int>>> {
        let ux = self.basis_u.mul_vec(x)?;
        let r = self.basis_diag.len();
        let mut y = Vec::with_capacity(r);
        for (i, v) in ux.iter().enumerate() {
            if i < r {
                let (q, rem) = v.div_rem(&self.basis_diag[i]);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y.push(q);
            } else if !v.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(y))
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains(&self, x: &[Int]) -> Result<bool> {
        Ok(self.basis_coords(x)?.is_some())
    }

    /// Canonical class of an ambient vector lying in the subgroup.
    pub fn element_of(&self, x: &[Int]) -> Result<GroupElement> {
        let y = self
            .basis_coords(x)?
            .ok_or_else(|| Error::NotInSubgroup("vector is outside the subgroup".into()))?;
        self.group.element(self.coord_map.mul_vec(&y)?)
    }

    /// Ambient representative of a coordinate vector.
    pub fn lift(&self, coords: &[Int]) -> Result<Vec<Int>> {
        self.lifts.mul_vec(coords)
    }

    /// Ambient representatives of the canonical generators (columns).
    pub fn generator_lifts(&self) -> &IntegerMatrix {
        &self.lifts
    }
}

/// `⟨sub⟩ / (⟨extra⟩ + ⟨ambient⟩ ∩ ⟨sub⟩)`.
pub fn subquotient(
    ambient_relations: &IntegerMatrix,
    sub_generators: &IntegerMatrix,
    extra_relations: &IntegerMatrix,
) -> Result<Subquotient> {
    let n = sub_generators.rows();
    if ambient_relations.rows() != n || extra_relations.rows() != n {
        return Err(Error::Shape(format!(
            "lattices in Z^{}, Z^{} and Z^{}",
            ambient_relations.rows(),
            n,
            extra_relations.rows()
        )));
    }
    let meet = intersect(ambient_relations, sub_generators)?;
    let relations = extra_relations.hstack(&meet)?;
    Subquotient::build(n, Some(sub_generators), &relations)
}

/// The whole group `Z^n / ⟨relations⟩` as a [`Subquotient`].
pub fn quotient(n: usize, relations: &IntegerMatrix) -> Result<Subquotient> {
    Subquotient::build(n, None, relations)
}

/// Kernel of the homomorphism `source → target` whose columns are images of
/// the source generators, as a subquotient of the source coordinate lattice.
pub fn hom_kernel(m: &IntegerMatrix, source: &FgAbelianGroup, target: &FgAbelianGroup) -> Result<Subquotient> {
    check_hom_shape(m, source, target)?;
    let g = source.ngens();
    let k = kernel_lattice(&m.hstack(&target.relation_matrix())?);
    let top: Vec<usize> = (0..g).collect();
    let lattice = k.select_rows(&top);
    Subquotient::build(g, Some(&lattice), &source.relation_matrix())
}

fn check_hom_shape(m: &IntegerMatrix, source: &FgAbelianGroup, target: &FgAbelianGroup) -> Result<()> {
    if m.rows() != target.ngens() || m.cols() != source.ngens() {
        return Err(Error::Shape(format!(
            "{}x{} matrix cannot map {source} to {target}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Whether the integer matrix describes a well-defined homomorphism, i.e.
/// sends every source relation into the target relations.
pub fn is_well_defined_hom(m: &IntegerMatrix, source: &FgAbelianGroup, target: &FgAbelianGroup) -> Result<bool> {
    check_hom_shape(m, source, target)?;
    for (i, d) in source.invariant_factors().iter().enumerate() {
        let img: Vec<Int> = m.column(i).iter().map(|x| x * d).collect();
        let mut reduced = img.clone();
        target.reduce(&mut reduced);
        let free_zero = reduced[target.torsion_rank()..].iter().all(Zero::is_zero);
        let tors_zero = reduced[..target.torsion_rank()].iter().all(Zero::is_zero);
        if !(free_zero && tors_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `m` is an automorphism of `group`: well defined, injective and surjective.
pub fn is_automorphism(m: &IntegerMatrix, group: &FgAbelianGroup) -> Result<bool> {
    if !is_well_defined_hom(m, group, group)? {
        return Ok(false);
    }
    if !hom_kernel(m, group, group)?.group().is_trivial() {
        return Ok(false);
    }
    let image_plus_rel = m.hstack(&group.relation_matrix())?;
    Ok(cokernel(&image_plus_rel).is_trivial())
}

/// Applies a homomorphism matrix to an element, reducing in the target.
pub fn apply_hom(m: &IntegerMatrix, x: &GroupElement, target: &FgAbelianGroup) -> Result<GroupElement> {
    target.element(m.mul_vec(x.coords())?)
}

/// Inverse of an automorphism of `group`, reduced to canonical entries.
pub fn automorphism_inverse(m: &IntegerMatrix, group: &FgAbelianGroup) -> Result<IntegerMatrix> {
    let n = group.ngens();
    let aug = m.hstack(&group.relation_matrix())?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Int::zero(); n];
        e[j] = Int::one();
        let x = solve(&aug, &e)?.ok_or_else(|| Error::Contract("matrix is not invertible on the group".into()))?;
        let mut x = x[..n].to_vec();
        group.reduce(&mut x);
        cols.push(x);
    }
    IntegerMatrix::from_columns(&cols, n)
}

/// Reduces every column of a homomorphism matrix into canonical target coordinates.
pub fn reduce_hom(m: &IntegerMatrix, target: &FgAbelianGroup) -> IntegerMatrix {
    let cols: Vec<Vec<Int>> = m
        .columns()
        .into_iter()
        .map(|mut c| {
            target.reduce(&mut c);
            c
        })
        .collect();
    IntegerMatrix::from_columns(&cols, m.rows()).expect("same shape")
}
