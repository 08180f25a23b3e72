use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{Int, IntegerMatrix};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_s ⊕ Z^r` in canonical
/// invariant-factor form: every `d_i ≥ 2` and `d_i | d_{i+1}`.
///
/// Coordinates of an element are `(x_1, …, x_s, y_1, …, y_r)`: torsion first,
/// each `x_i` reduced into `[0, d_i)`, then the free part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    invariant_factors: Vec<Int>,
    free_rank: usize,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<Int>) -> Result<Self> {
        for (i, d) in invariant_factors.iter().enumerate() {
            if *d < Int::from(2) {
                return Err(Error::Contract(format!(
                    "invariant factor #{i} is {d}, must be at least 2"
                )));
            }
            if i > 0 && !d.is_multiple_of(&invariant_factors[i - 1]) {
                return Err(Error::Contract(format!(
                    "invariant factor {} does not divide {d}",
                    invariant_factors[i - 1]
                )));
            }
        }
        Ok(FgAbelianGroup {
            invariant_factors,
            free_rank,
        })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: rank,
        }
    }

    /// `Z/n`, with `n = 0` meaning `Z` and `n = ±1` the trivial group.
    pub fn cyclic(n: i64) -> Self {
        match n.unsigned_abs() {
            0 => Self::free(1),
            1 => Self::trivial(),
            m => FgAbelianGroup {
                invariant_factors: vec![Int::from(m)],
                free_rank: 0,
            },
        }
    }

    /// Canonical group with the given diagonal relation entries. Units are
    /// dropped, zeros become free summands. `extra_free` adds unrelated generators.
    pub(crate) fn from_diagonal(diag: &[Int], extra_free: usize) -> Self {
        let invariant_factors = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.abs().is_one())
            .map(|d| d.abs())
            .collect();
        let zeros = diag.iter().filter(|d| d.is_zero()).count();
        FgAbelianGroup {
            invariant_factors,
            free_rank: zeros + extra_free,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of coordinates (generators) of the canonical presentation.
    pub fn ngens(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().fold(Int::one(), |acc, d| acc * d))
    }

    /// Modulus of coordinate `i` (`None` for free coordinates).
    pub fn modulus(&self, i: usize) -> Option<&Int> {
        self.invariant_factors.get(i)
    }

    /// Reduces torsion coordinates into `[0, d_i)`.
    pub fn reduce(&self, coords: &mut [Int]) {
        for (x, d) in coords.iter_mut().zip(&self.invariant_factors) {
            *x = x.mod_floor(d);
        }
    }

    pub fn element(&self, coords: Vec<Int>) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::Shape(format!(
                "element of {self} needs {} coordinates, got {}",
                self.ngens(),
                coords.len()
            )));
        }
        let mut coords = coords;
        self.reduce(&mut coords);
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![Int::zero(); self.ngens()],
        }
    }

    /// Generator `i` of the canonical presentation.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![Int::zero(); self.ngens()];
        coords[i] = Int::one();
        self.element(coords).expect("length matches")
    }

    /// Relation lattice of the canonical presentation in `Z^ngens`: one column
    /// `d_i · e_i` per torsion coordinate.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let n = self.ngens();
        let mut m = IntegerMatrix::zeros(n, self.invariant_factors.len());
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Every torsion element crossed with free coordinates in `[-bound, bound]`,
    /// in lexicographic order of coordinates.
    pub fn enumerate_elements(&self, bound: u64) -> Vec<GroupElement> {
        let b = Int::from(bound);
        let ranges: Vec<(Int, Int)> = self
            .invariant_factors
            .iter()
            .map(|d| (Int::zero(), d - 1))
            .chain((0..self.free_rank).map(|_| (-b.clone(), b.clone())))
            .collect();
        let mut out = Vec::new();
        let mut cur: Vec<Int> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
        loop {
            out.push(GroupElement {
                group: self.clone(),
                coords: cur.clone(),
            });
            // odometer, last coordinate fastest
            let mut i = ranges.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < ranges[i].1 {
                    cur[i] += 1;
                    for (k, c) in cur.iter_mut().enumerate().skip(i + 1) {
                        *c = ranges[k].0.clone();
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// An element of a [`FgAbelianGroup`] in canonical reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgAbelianGroup,
    coords: Vec<Int>,
}

impl GroupElement {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_group(&self, other: &GroupElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Contract(format!(
                "elements of different groups {} and {}",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.group.element(coords)
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        self.group.element(coords)
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self.coords.iter().map(|a| -a).collect();
        self.group.element(coords).expect("same length")
    }

    pub fn scale(&self, k: &Int) -> GroupElement {
        let coords = self.coords.iter().map(|a| a * k).collect();
        self.group.element(coords).expect("same length")
    }

    /// Additive order; `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        let free_part = &self.coords[self.group.torsion_rank()..];
        if free_part.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut ord = Int::one();
        for (x, d) in self.coords.iter().zip(&self.group.invariant_factors) {
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    pub fn coords_i64(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords
            .cmp(&other.coords)
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
