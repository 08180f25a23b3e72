use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::abelian::IntegerMatrix;
use crate::error::{Error, Result};
use crate::gysin::{gysin_group, GysinGroup};
use crate::io::Order;
use crate::pairs::{window, PairClass};
use crate::simplicial::SimplicialComplex;

use super::homeo::{act_with, action_order, HomeoData};
use super::nerve::generated_within;
use super::words::{FreeProduct, Word};

pub const DEFAULT_DEPTH: u64 = 4;

/// Automorphism candidates that are products of at most this many earlier
/// generators are dropped.
const REDUNDANCY_LENGTH: usize = 3;

/// Sort key preferring positive exponents, so `S` is listed before `S^-1`.
fn positive_first(w: &Word) -> Vec<(usize, u64)> {
    w.syllables()
        .iter()
        .map(|&(g, e)| (g, if e > 0 { 2 * e as u64 } else { 2 * e.unsigned_abs() + 1 }))
        .collect()
}

/// Finite model of the moduli groupoid: objects are the pair classes in a
/// coordinate window, arrows are reduced words in the registered
/// homeomorphisms (at most `depth` letters) carrying one window class to
/// another.
///
/// The abstract group of words is the free product of the cyclic groups
/// generated by the homeomorphisms, each of its recorded order.
pub struct GroupoidModel {
    base: Arc<SimplicialComplex>,
    bound: u64,
    depth: u64,
    homeos: Vec<HomeoData>,
    objects: Vec<PairClass>,
    lookup: HashMap<PairClass, usize>,
    arrows: OnceLock<Arc<ArrowSet>>,
}

/// An arrow `source → target` labeled by the word acting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub word: Word,
}

/// All non-identity arrows, grouped by source, plus the group they live in.
#[derive(Debug)]
pub struct ArrowSet {
    pub gamma: FreeProduct,
    pub words: Vec<Word>,
    pub arrows: Vec<Arrow>,
    /// `by_source[x]` lists arrow indices out of object `x`.
    pub by_source: Vec<Vec<usize>>,
    /// `(source, word) → arrow index`.
    pub index: HashMap<(usize, Word), usize>,
    /// Action matrices of each enumerated word.
    matrices: HashMap<Word, Arc<[IntegerMatrix; 4]>>,
}

/// Orbit partition of the window with the section `A(X)` and the map `φ`.
#[derive(Clone, Debug)]
pub struct Components {
    /// Object indices per component, components ordered by their minimum.
    pub parts: Vec<Vec<usize>>,
    /// The minimal class of each component.
    pub section: Vec<PairClass>,
    /// `phi[x]` is the component of object `x`.
    pub phi: Vec<usize>,
}

/// A class-fixing word with its orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGenerator {
    pub word: Word,
    pub name: String,
    /// Smallest `k ≥ 1` with `w^k` acting as the identity on `H^2 ⊕ H^3`.
    pub order_in_action: Order,
    /// Order of the word in the abstract group.
    pub order_in_group: Order,
}

/// Candidate automorphisms of a class: fixing words that are primitive (no
/// proper tail of their letters already fixes the class), one per inverse pair,
/// skipping those already generated by shorter ones.
/// Whether they lift to bundle automorphisms is not decided.
#[derive(Clone, Debug)]
pub struct AutDescriptor {
    pub object: PairClass,
    pub generators: Vec<AutGenerator>,
    /// `H^2(E)` pieces of the bundle with class `c`, reported alongside but
    /// not merged with the homeomorphism loops.
    pub gauge_loop_group: Arc<GysinGroup>,
}

/// `P_1` over the window: objects, per-object automorphism generators and
/// the projection `η` of each arrow to its object.
#[derive(Clone, Debug)]
pub struct P1Report {
    pub objects: Vec<PairClass>,
    pub automorphisms: Vec<AutDescriptor>,
    /// `(object, generator index)` per arrow; `eta` is the first component.
    pub arrows: Vec<(usize, usize)>,
}

impl P1Report {
    pub fn eta(&self, arrow: usize) -> &PairClass {
        &self.objects[self.arrows[arrow].0]
    }
}

impl GroupoidModel {
    /// Model without homeomorphisms over the classes with coordinates in `[-bound, bound]`.
    pub fn new(base: Arc<SimplicialComplex>, bound: u64) -> Result<Self> {
        let mut objects = window(&base, bound)?;
        objects.sort();
        let lookup = objects.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(GroupoidModel {
            base,
            bound,
            depth: DEFAULT_DEPTH,
            homeos: Vec::new(),
            objects,
            lookup,
            arrows: OnceLock::new(),
        })
    }

    pub fn with_depth(mut self, depth: u64) -> Self {
        self.depth = depth;
        self.arrows = OnceLock::new();
        self
    }

    pub fn register_homeo(&mut self, h: HomeoData) -> Result<()> {
        if h.base().basis_hash() != self.base.basis_hash() {
            return Err(Error::validation(
                h.name(),
                format!("homeomorphism of {}, model over {}", h.base().name(), self.base.name()),
            ));
        }
        if self.homeos.iter().any(|g| g.name() == h.name()) {
            return Err(Error::validation(h.name(), "homeomorphism name already registered"));
        }
        self.homeos.push(h);
        self.homeos.sort_by(|a, b| a.name().cmp(b.name()));
        self.arrows = OnceLock::new();
        Ok(())
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// Registered homeomorphisms, sorted by name.
    pub fn homeos(&self) -> &[HomeoData] {
        &self.homeos
    }

    pub fn objects(&self) -> &[PairClass] {
        &self.objects
    }

    pub fn object_index(&self, p: &PairClass) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn gamma(&self) -> FreeProduct {
        FreeProduct::new(
            self.homeos.iter().map(|h| h.name().to_string()).collect(),
            self.homeos.iter().map(HomeoData::order).collect(),
        )
    }

    fn letter_matrices(&self, g: usize, sign: i64) -> [IntegerMatrix; 4] {
        let h = &self.homeos[g];
        std::array::from_fn(|i| {
            if sign > 0 {
                h.matrix(i + 1).clone()
            } else {
                h.inverse_matrix(i + 1).clone()
            }
        })
    }

    /// Action matrices of a word (product of the letters' matrices).
    pub fn word_matrices(&self, w: &Word) -> Result<[IntegerMatrix; 4]> {
        let mut acc: [IntegerMatrix; 4] =
            std::array::from_fn(|i| IntegerMatrix::identity(self.base.cohomology(i + 1).group().ngens()));
        for (g, s) in w.letters_applied() {
            let m = self.letter_matrices(g, s);
            for k in 0..4 {
                acc[k] = m[k].mul(&acc[k])?;
                let group = self.base.cohomology(k + 1);
                acc[k] = crate::abelian::reduce_hom(&acc[k], group.group());
            }
        }
        Ok(acc)
    }

    /// `w · p`.
    pub fn act_word(&self, w: &Word, p: &PairClass) -> Result<PairClass> {
        if p.base().basis_hash() != self.base.basis_hash() {
            return Err(Error::Contract("class over a different complex".into()));
        }
        if let Some(m) = self.arrow_set()?.matrices.get(w) {
            return act_with(m, p);
        }
        act_with(&self.word_matrices(w)?, p)
    }

    /// The arrows, generated on first use.
    pub fn arrow_set(&self) -> Result<Arc<ArrowSet>> {
        if let Some(a) = self.arrows.get() {
            return Ok(a.clone());
        }
        let built = Arc::new(self.build_arrows()?);
        Ok(self.arrows.get_or_init(|| built).clone())
    }

    fn build_arrows(&self) -> Result<ArrowSet> {
        let gamma = self.gamma();
        let words: Vec<Word> = gamma
            .enumerate(self.depth)
            .into_iter()
            .filter(|w| !w.is_identity())
            .collect();
        let mut matrices = HashMap::with_capacity(words.len());
        for w in &words {
            matrices.insert(w.clone(), Arc::new(self.word_matrices(w)?));
        }
        let mut arrows = Vec::new();
        let mut by_source = vec![Vec::new(); self.objects.len()];
        let mut index = HashMap::new();
        for (x, p) in self.objects.iter().enumerate() {
            for w in &words {
                let q = act_with(&matrices[w], p)?;
                if let Some(&y) = self.lookup.get(&q) {
                    index.insert((x, w.clone()), arrows.len());
                    by_source[x].push(arrows.len());
                    arrows.push(Arrow {
                        source: x,
                        target: y,
                        word: w.clone(),
                    });
                }
            }
        }
        Ok(ArrowSet {
            gamma,
            words,
            arrows,
            by_source,
            index,
            matrices,
        })
    }

    /// Orbits of the window under the generated arrows.
    pub fn components(&self) -> Result<Components> {
        let arrows = self.arrow_set()?;
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for a in &arrows.arrows {
            let (r, s) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if r != s {
                // keep the smaller index as root so roots are the minima
                let (lo, hi) = if r < s { (r, s) } else { (s, r) };
                parent[hi] = lo;
            }
        }
        let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            parts.entry(r).or_default().push(i);
        }
        let mut phi = vec![0; n];
        let mut section = Vec::with_capacity(parts.len());
        let parts: Vec<Vec<usize>> = parts.into_values().collect();
        for (id, part) in parts.iter().enumerate() {
            for &i in part {
                phi[i] = id;
            }
            section.push(self.objects[part[0]].clone());
        }
        Ok(Components { parts, section, phi })
    }

    /// Candidate automorphism generators of a window class.
    pub fn aut_group(&self, x: &PairClass) -> Result<AutDescriptor> {
        let xi = self
            .object_index(x)
            .ok_or_else(|| Error::Contract(format!("{x} is not in the window")))?;
        let arrows = self.arrow_set()?;
        let gamma = &arrows.gamma;
        let fixing: Vec<&Word> = arrows.by_source[xi]
            .iter()
            .map(|&a| &arrows.arrows[a])
            .filter(|a| a.target == xi)
            .map(|a| &a.word)
            .collect();
        let fixes = |w: &Word| -> bool {
            w.is_identity()
                || arrows
                    .index
                    .get(&(xi, w.clone()))
                    .is_some_and(|&a| arrows.arrows[a].target == xi)
        };
        // proper tails in application order: the first k letters applied
        let primitive: Vec<&Word> = fixing
            .into_iter()
            .filter(|w| {
                let letters: Vec<(usize, i64)> = w.letters_applied().collect();
                (1..letters.len()).all(|k| !fixes(&gamma.normalize(letters[..k].iter().rev().copied())))
            })
            .collect();
        let mut generators: Vec<AutGenerator> = Vec::new();
        for &w in &primitive {
            let inv = gamma.inverse(w);
            if positive_first(&inv) < positive_first(w) && primitive.contains(&&inv) {
                continue;
            }
            // shortest first, so a word that is a short product of kept ones adds nothing
            let kept: Vec<Word> = generators.iter().map(|g| g.word.clone()).collect();
            if !kept.is_empty() && generated_within(gamma, &kept, std::slice::from_ref(w), REDUNDANCY_LENGTH) {
                continue;
            }
            let m = &arrows.matrices[w];
            generators.push(AutGenerator {
                word: w.clone(),
                name: gamma.display(w).to_string(),
                order_in_action: action_order(&self.base, m, &[2, 3])?,
                order_in_group: gamma.element_order(w),
            });
        }
        Ok(AutDescriptor {
            object: x.clone(),
            generators,
            gauge_loop_group: gysin_group(&self.base, x.c(), 2)?,
        })
    }

    pub fn p1_report(&self) -> Result<P1Report> {
        let mut automorphisms = Vec::with_capacity(self.objects.len());
        let mut arrows = Vec::new();
        for (i, x) in self.objects.iter().enumerate() {
            let aut = self.aut_group(x)?;
            arrows.extend((0..aut.generators.len()).map(|g| (i, g)));
            automorphisms.push(aut);
        }
        Ok(P1Report {
            objects: self.objects.clone(),
            automorphisms,
            arrows,
        })
    }
}
