use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::Order;

use super::groupoid::{AutDescriptor, GroupoidModel};
use super::words::{FreeProduct, Word};

/// 2-truncated nerve of a groupoid model.
///
/// 0-cells `v{i}` are window classes, 1-cells `e{j}` the non-identity arrows
/// and 2-cells `f{k}` the composable pairs `(first, second)` whose composite
/// is again a generated arrow or an identity (`composite = None`).
#[derive(Clone, Debug)]
pub struct Nerve {
    pub gamma: FreeProduct,
    pub vertex_labels: Vec<String>,
    pub edges: Vec<NerveEdge>,
    pub triangles: Vec<NerveTriangle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveEdge {
    pub source: usize,
    pub target: usize,
    pub word: Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NerveTriangle {
    pub first: usize,
    pub second: usize,
    pub composite: Option<usize>,
}

/// Builds the nerve up to dimension `max_dim ≤ 2`.
pub fn nerve_export(model: &GroupoidModel, max_dim: usize) -> Result<Nerve> {
    if max_dim > 2 {
        return Err(Error::Contract("nerves are exported up to dimension 2".into()));
    }
    let arrows = model.arrow_set()?;
    let vertex_labels = model.objects().iter().map(|p| p.to_string()).collect();
    let mut edges = Vec::new();
    if max_dim >= 1 {
        edges = arrows
            .arrows
            .iter()
            .map(|a| NerveEdge {
                source: a.source,
                target: a.target,
                word: a.word.clone(),
            })
            .collect();
    }
    let mut triangles = Vec::new();
    if max_dim >= 2 {
        let gamma = &arrows.gamma;
        for (i, f) in edges.iter().enumerate() {
            for &j in &arrows.by_source[f.target] {
                let g = &edges[j];
                let w = gamma.multiply(&g.word, &f.word);
                let composite = if w.is_identity() {
                    if g.target != f.source {
                        return Err(Error::Contract("identity word between distinct objects".into()));
                    }
                    None
                } else {
                    match arrows.index.get(&(f.source, w)) {
                        Some(&k) => Some(k),
                        None => continue,
                    }
                };
                triangles.push(NerveTriangle {
                    first: i,
                    second: j,
                    composite,
                });
            }
        }
    }
    Ok(Nerve {
        gamma: arrows.gamma.clone(),
        vertex_labels,
        edges,
        triangles,
    })
}

impl Nerve {
    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nerve {\n");
        for (i, label) in self.vertex_labels.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", label.replace('"', "'"));
        }
        for (j, e) in self.edges.iter().enumerate() {
            let _ = writeln!(
                s,
                "  v{} -> v{} [id=\"e{j}\", label=\"{}\"];",
                e.source,
                e.target,
                self.gamma.display(&e.word)
            );
        }
        s.push_str("}\n");
        s
    }

    /// Connected components of the 1-skeleton, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_labels.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.source].push(e.target);
            adj[e.target].push(e.source);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &t in &adj[comp[i]] {
                    if !seen[t] {
                        seen[t] = true;
                        comp.push(t);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks the 3-horns: for composable `f, g, h` whose faces
    /// `(f, g)`, `(g, h)` and `(g∘f, h)` are 2-cells, the remaining face
    /// `(f, h∘g)` is a 2-cell with the same composite.
    pub fn horns_fill(&self) -> bool {
        let by_pair: HashMap<(usize, usize), Option<usize>> = self
            .triangles
            .iter()
            .map(|t| ((t.first, t.second), t.composite))
            .collect();
        let mut by_first: HashMap<usize, Vec<&NerveTriangle>> = HashMap::new();
        for t in &self.triangles {
            by_first.entry(t.first).or_default().push(t);
        }
        for t1 in &self.triangles {
            let (f, g) = (t1.first, t1.second);
            for t2 in by_first.get(&g).into_iter().flatten() {
                let h = t2.second;
                let Some(gf) = t1.composite else {
                    continue;
                };
                let Some(&hgf) = by_pair.get(&(gf, h)) else {
                    continue;
                };
                let expect = match t2.composite {
                    Some(hg) => by_pair.get(&(f, hg)).copied(),
                    // h∘g is an identity, so h∘g∘f = f
                    None => Some(Some(f)),
                };
                if expect != Some(hgf) {
                    return false;
                }
            }
        }
        true
    }
}

/// A finite presentation; relators are words in generators `(index, ±1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i64)>>,
    /// Image of each generator in the abstract group of the model.
    pub images: Vec<Word>,
}

impl Presentation {
    /// `Some(orders)` when every relator is a power of a single generator.
    pub fn free_product_orders(&self) -> Option<Vec<Order>> {
        let mut orders = vec![Order::Infinite; self.generators.len()];
        for r in &self.relators {
            let g = r.first()?.0;
            if r.iter().any(|&(h, _)| h != g) {
                return None;
            }
            let n: i64 = r.iter().map(|&(_, e)| e).sum();
            let n = n.unsigned_abs();
            orders[g] = match orders[g] {
                Order::Infinite => Order::Finite(n),
                Order::Finite(m) => Order::Finite(num_integer::gcd(m, n)),
            };
        }
        Some(orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        if !self.relators.is_empty() {
            f.write_str(" | ")?;
            for (i, r) in self.relators.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                let mut syllables: Vec<(usize, i64)> = Vec::new();
                for &(g, e) in r {
                    match syllables.last_mut() {
                        Some(last) if last.0 == g => last.1 += e,
                        _ => syllables.push((g, e)),
                    }
                }
                for (j, &(g, e)) in syllables.iter().enumerate() {
                    if j > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", self.generators[g])?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        f.write_str(" >")
    }
}

/// Free reduction of a word given as a list of letters `(g, ±1)`.
fn free_reduce(letters: impl IntoIterator<Item = (usize, i64)>) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for l in letters {
        if out.last().is_some_and(|&(g, e)| g == l.0 && e == -l.1) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(mut r: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    while r.len() >= 2 && r[0].0 == r[r.len() - 1].0 && r[0].1 == -r[r.len() - 1].1 {
        r.pop();
        r.remove(0);
    }
    r
}

fn invert(r: &[(usize, i64)]) -> Vec<(usize, i64)> {
    r.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Minimal rotation of the relator or its inverse, for deduplication;
/// positive letters sort first.
fn canonical_relator(r: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let key = |w: &[(usize, i64)]| w.iter().map(|&(g, e)| (g, e < 0)).collect::<Vec<_>>();
    let mut best: Option<Vec<(usize, i64)>> = None;
    for word in [r.to_vec(), invert(r)] {
        for k in 0..word.len().max(1) {
            let mut rot = word[k..].to_vec();
            rot.extend_from_slice(&word[..k]);
            if best.as_ref().is_none_or(|b| key(&rot) < key(b)) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Rewrites exponents of finite-order generators into their canonical
/// range and drops relators that become trivial.
fn reduce_by_orders(rels: &mut Vec<Vec<(usize, i64)>>, orders: &[Order]) {
    let reduce = |r: &[(usize, i64)]| -> Vec<(usize, i64)> {
        // group into syllables, reduce each modulo the order, expand back
        let mut syll: Vec<(usize, i64)> = Vec::new();
        for &(g, e) in r {
            match syll.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => syll.push((g, e)),
            }
        }
        // merge the wrap-around syllable for cyclic words
        if syll.len() >= 2 && syll[0].0 == syll[syll.len() - 1].0 {
            let (_, e) = syll.pop().expect("nonempty");
            syll[0].1 += e;
        }
        let mut out = Vec::new();
        for (g, e) in syll {
            let e = match orders[g] {
                Order::Finite(n) => {
                    let n = n as i64;
                    let m = e.rem_euclid(n);
                    if 2 * m > n {
                        m - n
                    } else {
                        m
                    }
                }
                _ => e,
            };
            out.extend(std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize));
        }
        cyclic_reduce(free_reduce(out))
    };
    for r in rels.iter_mut() {
        // removing a syllable can make its neighbours merge
        loop {
            let next = reduce(r);
            if next == *r {
                break;
            }
            *r = next;
        }
    }
    rels.retain(|r| !r.is_empty());
}

/// Edge-path group of the component of `vertex`.
///
/// Tree edges of a breadth-first spanning tree are set to 1; each 2-cell
/// `(f, g; h)` gives `g·f = h` (identity composites give `g·f = 1`). Edges
/// splitting into shorter edges are substituted away, then Tietze moves
/// eliminate generators occurring once in a short relator. Finally power
/// relators are used to normalise exponents in the remaining ones.
pub fn pi1_from_nerve(nerve: &Nerve, vertex: usize) -> Result<Presentation> {
    if vertex >= nerve.vertex_labels.len() {
        return Err(Error::Contract(format!("no 0-cell v{vertex}")));
    }
    let gamma = &nerve.gamma;
    // spanning tree and path words p_y with p_y · x = y
    let mut out_edges: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, e) in nerve.edges.iter().enumerate() {
        out_edges.entry(e.source).or_default().push(j);
    }
    let mut path: HashMap<usize, Word> = HashMap::from([(vertex, Word::identity())]);
    let mut tree: BTreeSet<usize> = BTreeSet::new();
    let mut queue = VecDeque::from([vertex]);
    while let Some(y) = queue.pop_front() {
        for &j in out_edges.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
            let e = &nerve.edges[j];
            if !path.contains_key(&e.target) {
                let p = gamma.multiply(&e.word, &path[&y]);
                path.insert(e.target, p);
                tree.insert(j);
                queue.push_back(e.target);
            }
        }
    }
    let component_edges: Vec<usize> = (0..nerve.edges.len())
        .filter(|&j| path.contains_key(&nerve.edges[j].source))
        .collect();
    // Edges whose word splits as a 2-cell into strictly shorter edges are
    // expressed through those; the rest become generators.
    let mut by_composite: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for t in &nerve.triangles {
        if let Some(h) = t.composite {
            by_composite.entry(h).or_default().push((t.first, t.second));
        }
    }
    let mut order = component_edges.clone();
    order.sort_by_key(|&j| (nerve.edges[j].word.letter_length(), j));
    let mut value: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    let mut generators = Vec::new();
    let mut images = Vec::new();
    for &j in &order {
        if tree.contains(&j) {
            value.insert(j, Vec::new());
            continue;
        }
        let len = nerve.edges[j].word.letter_length();
        let split = by_composite.get(&j).and_then(|v| {
            v.iter().find(|&&(f, g)| {
                nerve.edges[f].word.letter_length() < len
                    && nerve.edges[g].word.letter_length() < len
                    && value.contains_key(&f)
                    && value.contains_key(&g)
            })
        });
        let v = match split {
            Some(&(f, g)) => free_reduce(value[&g].iter().chain(&value[&f]).copied()),
            None => {
                let e = &nerve.edges[j];
                generators.push(format!("e{j}"));
                images.push(gamma.multiply(
                    &gamma.inverse(&path[&e.target]),
                    &gamma.multiply(&e.word, &path[&e.source]),
                ));
                vec![(generators.len() - 1, 1)]
            }
        };
        value.insert(j, v);
    }
    let mut relators: Vec<Vec<(usize, i64)>> = Vec::new();
    for t in &nerve.triangles {
        if !path.contains_key(&nerve.edges[t.first].source) {
            continue;
        }
        // composition order: second · first · composite^{-1}
        let mut r: Vec<(usize, i64)> = value[&t.second].clone();
        r.extend_from_slice(&value[&t.first]);
        if let Some(h) = t.composite {
            r.extend(invert(&value[&h]));
        }
        let r = cyclic_reduce(free_reduce(r));
        if !r.is_empty() {
            relators.push(r);
        }
    }

    let mut alive = vec![true; generators.len()];
    loop {
        relators = dedupe(relators);
        let Some((ri, g, sign)) = find_eliminable(&relators) else {
            break;
        };
        // r = A g^sign B = 1  ⇒  g^sign · (B A) = 1
        let r = relators.remove(ri);
        let pos = r.iter().position(|&(h, _)| h == g).expect("generator occurs");
        let mut c: Vec<(usize, i64)> = r[pos + 1..].to_vec();
        c.extend_from_slice(&r[..pos]);
        let g_value = if sign == 1 { invert(&c) } else { c };
        let g_inverse = invert(&g_value);
        alive[g] = false;
        for rel in relators.iter_mut() {
            if rel.iter().any(|&(h, _)| h == g) {
                let expanded: Vec<(usize, i64)> = rel
                    .iter()
                    .flat_map(|&(h, e)| {
                        if h != g {
                            vec![(h, e)]
                        } else if e == 1 {
                            g_value.clone()
                        } else {
                            g_inverse.clone()
                        }
                    })
                    .collect();
                *rel = cyclic_reduce(free_reduce(expanded));
            }
        }
        relators.retain(|r| !r.is_empty());
    }

    // renumber surviving generators
    let mut renumber = vec![usize::MAX; generators.len()];
    let mut gens = Vec::new();
    let mut imgs = Vec::new();
    for (g, name) in generators.into_iter().enumerate() {
        if alive[g] {
            renumber[g] = gens.len();
            gens.push(name);
            imgs.push(images[g].clone());
        }
    }
    let mut relators: Vec<Vec<(usize, i64)>> = relators
        .into_iter()
        .map(|r| r.into_iter().map(|(g, e)| (renumber[g], e)).collect())
        .collect();
    // keep one power relator per generator, reduce everything else by them
    let mut power: Vec<Option<u64>> = vec![None; gens.len()];
    for r in &relators {
        if let Some(&(g, _)) = r.first() {
            if r.iter().all(|&(h, _)| h == g) {
                let n = r.iter().map(|&(_, e)| e).sum::<i64>().unsigned_abs();
                power[g] = Some(power[g].map_or(n, |m| num_integer::gcd(m, n)));
            }
        }
    }
    let known: Vec<Order> = power.iter().map(|p| p.map_or(Order::Infinite, Order::Finite)).collect();
    let mut others: Vec<Vec<(usize, i64)>> = relators
        .iter()
        .filter(|r| !r.iter().all(|&(h, _)| Some(h) == r.first().map(|l| l.0)))
        .cloned()
        .collect();
    reduce_by_orders(&mut others, &known);
    relators = known
        .iter()
        .enumerate()
        .filter_map(|(g, o)| match o {
            Order::Finite(n) => Some(vec![(g, 1); *n as usize]),
            Order::Infinite => None,
        })
        .chain(others)
        .collect();
    relators = dedupe(relators);
    relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    // a generator of order 1 is trivial: drop it
    let trivial: Vec<usize> = relators.iter().filter(|r| r.len() == 1).map(|r| r[0].0).collect();
    if !trivial.is_empty() {
        let mut renumber = vec![usize::MAX; gens.len()];
        let mut g2 = Vec::new();
        let mut i2 = Vec::new();
        for g in 0..gens.len() {
            if !trivial.contains(&g) {
                renumber[g] = g2.len();
                g2.push(gens[g].clone());
                i2.push(imgs[g].clone());
            }
        }
        relators = relators
            .into_iter()
            .filter_map(|r| {
                let r: Vec<(usize, i64)> = r.into_iter().filter(|(g, _)| !trivial.contains(g)).collect();
                let r = cyclic_reduce(free_reduce(r));
                (!r.is_empty()).then(|| r.into_iter().map(|(g, e)| (renumber[g], e)).collect())
            })
            .collect();
        gens = g2;
        imgs = i2;
    }
    Ok(Presentation {
        generators: gens,
        relators,
        images: imgs,
    })
}

fn dedupe(rels: Vec<Vec<(usize, i64)>>) -> Vec<Vec<(usize, i64)>> {
    let set: BTreeSet<Vec<(usize, i64)>> = rels
        .iter()
        .map(|r| canonical_relator(r))
        .filter(|r| !r.is_empty())
        .collect();
    let mut out: Vec<Vec<(usize, i64)>> = set.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Longest relator used to eliminate a generator; longer substitutions
/// would only grow the other relators.
const ELIMINATION_LIMIT: usize = 8;

/// First relator (shortest first) containing a generator exactly once.
fn find_eliminable(rels: &[Vec<(usize, i64)>]) -> Option<(usize, usize, i64)> {
    for (i, r) in rels
        .iter()
        .enumerate()
        .take_while(|(_, r)| r.len() <= ELIMINATION_LIMIT)
    {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &(g, _) in r {
            *count.entry(g).or_default() += 1;
        }
        if let Some(&(g, e)) = r.iter().find(|&&(g, _)| count[&g] == 1) {
            return Some((i, g, e));
        }
    }
    None
}

/// Result of comparing a nerve presentation with the automorphism generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    /// Every relator maps to the identity of the abstract group.
    pub relators_sound: bool,
    /// Each automorphism generator is a word of length ≤ 6 in the
    /// presentation's generator images, and conversely.
    pub mutually_generated: bool,
    /// Factor orders of both sides when the presentation is a free product
    /// of cyclic groups.
    pub factor_orders: Option<(Vec<Order>, Vec<Order>)>,
    /// For such presentations: no nontrivial normal-form word of length ≤ 6
    /// maps to the identity.
    pub injective_on_ball: Option<bool>,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.relators_sound
            && self.mutually_generated
            && self.factor_orders.as_ref().is_none_or(|(a, b)| a == b)
            && self.injective_on_ball != Some(false)
    }
}

/// Compares the edge-path presentation at `x` with the automorphism
/// descriptor by enumerating words of length ≤ 6.
pub fn oracle_check(gamma: &FreeProduct, pres: &Presentation, aut: &AutDescriptor) -> OracleCheck {
    let eval = |r: &[(usize, i64)]| {
        r.iter().fold(Word::identity(), |acc, &(g, e)| {
            let base = if e > 0 {
                pres.images[g].clone()
            } else {
                gamma.inverse(&pres.images[g])
            };
            gamma.multiply(&acc, &gamma.power(&base, e.unsigned_abs()))
        })
    };
    let relators_sound = pres.relators.iter().all(|r| eval(r).is_identity());
    let aut_words: Vec<Word> = aut.generators.iter().map(|g| g.word.clone()).collect();
    let mutually_generated =
        generated_within(gamma, &pres.images, &aut_words, 6) && generated_within(gamma, &aut_words, &pres.images, 6);
    let shape = pres.free_product_orders();
    let injective_on_ball = shape.as_ref().map(|orders| {
        let free = FreeProduct::new(pres.generators.clone(), orders.clone());
        free.enumerate(6)
            .iter()
            .filter(|w| !w.is_identity())
            .all(|w| !eval(w.syllables()).is_identity())
    });
    let factor_orders = shape.map(|mut ours| {
        let mut theirs: Vec<Order> = aut.generators.iter().map(|g| g.order_in_group).collect();
        ours.sort();
        theirs.sort();
        (ours, theirs)
    });
    OracleCheck {
        relators_sound,
        mutually_generated,
        factor_orders,
        injective_on_ball,
    }
}

/// Whether every target is a product of at most `max_len` generators or inverses.
pub(crate) fn generated_within(gamma: &FreeProduct, gens: &[Word], targets: &[Word], max_len: usize) -> bool {
    let mut letters: Vec<Word> = Vec::new();
    for g in gens {
        letters.push(g.clone());
        letters.push(gamma.inverse(g));
    }
    let mut reached: BTreeSet<Word> = BTreeSet::from([Word::identity()]);
    let mut frontier: Vec<Word> = vec![Word::identity()];
    let mut missing: BTreeSet<&Word> = targets.iter().filter(|t| !t.is_identity()).collect();
    for _ in 0..max_len {
        if missing.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let v = gamma.multiply(l, w);
                if reached.insert(v.clone()) {
                    missing.remove(&v);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    missing.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(gens: &[&str], rels: Vec<Vec<(usize, i64)>>) -> Presentation {
        Presentation {
            generators: gens.iter().map(|s| s.to_string()).collect(),
            images: vec![Word::identity(); gens.len()],
            relators: rels,
        }
    }

    #[test]
    fn free_product_shape_detection() {
        let pres = p(&["a", "b"], vec![vec![(0, 1), (0, 1)]]);
        assert_eq!(
            pres.free_product_orders(),
            Some(vec![Order::Finite(2), Order::Infinite])
        );
        let pres = p(&["a", "b"], vec![vec![(0, 1), (1, 1), (0, -1), (1, -1)]]);
        assert_eq!(pres.free_product_orders(), None);
        assert_eq!(format!("{}", p(&["a"], vec![vec![(0, 1), (0, 1)]])), "< a | a^2 >");
    }

    #[test]
    fn canonical_relators_identify_rotations_and_inverses() {
        let r = vec![(0, 1), (1, 1), (2, -1)];
        let rot = vec![(1, 1), (2, -1), (0, 1)];
        assert_eq!(canonical_relator(&r), canonical_relator(&rot));
        assert_eq!(canonical_relator(&r), canonical_relator(&invert(&r)));
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(vec![(0, 1), (1, 1), (1, -1), (0, 1)]), vec![(0, 1), (0, 1)]);
        assert_eq!(cyclic_reduce(vec![(0, 1), (1, 1), (0, -1)]), vec![(1, 1)]);
    }
}
