//! Reference computations that share no code with `ttd-core` beyond the
//! document types: cohomology from scratch with machine integers, orbit
//! enumeration by breadth-first search, and random simplicial maps.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use ttd_core::io::{ComplexDocument, SimplicialMapDocument};

/// `(free rank, invariant factors > 1)` of one cohomology group.
pub type Shape = (usize, Vec<i64>);

fn closure(doc: &ComplexDocument) -> Vec<Vec<Vec<usize>>> {
    let index: HashMap<&str, usize> = doc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &doc.facets {
        let mut f: Vec<usize> = f.iter().map(|v| index[v.as_str()]).collect();
        f.sort_unstable();
        for mask in 1u32..(1 << f.len()) {
            all.insert(
                f.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
    }
    let dim = all.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let mut by_dim = vec![Vec::new(); dim + 1];
    for s in all {
        by_dim[s.len() - 1].push(s);
    }
    by_dim
}

/// Diagonal of the Smith form, nonzero entries only.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(a, b)| m[i][j].abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] = m[i][j]
                            .checked_sub(q.checked_mul(m[t][j]).expect("overflow"))
                            .expect("overflow");
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] = row[j]
                            .checked_sub(q.checked_mul(row[t]).expect("overflow"))
                            .expect("overflow");
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Coboundary `δ^k` as a dense matrix (rows: `(k+1)`-simplices).
fn coboundary(cells: &[Vec<Vec<usize>>], k: usize) -> Vec<Vec<i128>> {
    let empty = Vec::new();
    let lower = cells.get(k).unwrap_or(&empty);
    let upper = cells.get(k + 1).unwrap_or(&empty);
    let index: HashMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    upper
        .iter()
        .map(|s| {
            let mut row = vec![0i128; lower.len()];
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                row[index[&face]] += if i % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Cohomology shapes in degrees `0..=dim`.
pub fn naive_cohomology(doc: &ComplexDocument) -> Vec<Shape> {
    let cells = closure(doc);
    let dim = cells.len() - 1;
    let diags: Vec<Vec<i128>> = (0..=dim).map(|k| smith_diagonal(coboundary(&cells, k))).collect();
    (0..=dim)
        .map(|k| {
            let rank_out = diags[k].len();
            let rank_in = if k == 0 { 0 } else { diags[k - 1].len() };
            let torsion = if k == 0 {
                Vec::new()
            } else {
                diags[k - 1].iter().filter(|&&v| v > 1).map(|&v| v as i64).collect()
            };
            (cells[k].len() - rank_out - rank_in, torsion)
        })
        .collect()
}

/// Connected orbits of `points` under the maps `step(point) -> neighbours`.
pub fn orbits<P: Ord + Clone>(points: &[P], step: impl Fn(&P) -> Vec<P>) -> Vec<Vec<P>> {
    let mut seen: BTreeSet<P> = BTreeSet::new();
    let inside: BTreeSet<&P> = points.iter().collect();
    let mut out = Vec::new();
    for p in points {
        if seen.contains(p) {
            continue;
        }
        let mut orbit = vec![p.clone()];
        seen.insert(p.clone());
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(q) = queue.pop_front() {
            for r in step(&q) {
                if inside.contains(&r) && seen.insert(r.clone()) {
                    orbit.push(r.clone());
                    queue.push_back(r);
                }
            }
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

/// Integer matrix times vector.
pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// A random simplicial map: every vertex goes to a vertex of one random
/// facet of the target.
pub fn random_simplicial_map(
    rng: &mut impl Rng,
    source: &ComplexDocument,
    target: &ComplexDocument,
) -> SimplicialMapDocument {
    let facet = target.facets.choose(rng).expect("target has a facet");
    SimplicialMapDocument {
        source: source.name.clone(),
        target: target.name.clone(),
        vertex_map: source
            .vertices
            .iter()
            .map(|v| (v.clone(), facet.choose(rng).expect("facet is nonempty").clone()))
            .collect::<BTreeMap<_, _>>(),
    }
}

/// The same complex with vertices listed in random order and each facet
/// written in random vertex order.
pub fn shuffled(rng: &mut impl Rng, doc: &ComplexDocument) -> ComplexDocument {
    let mut out = doc.clone();
    out.vertices.shuffle(rng);
    for f in out.facets.iter_mut() {
        f.shuffle(rng);
    }
    out.facets.shuffle(rng);
    out
}

/// Expected cohomology of a lens space `L(n, 1)`, `n ≠ 0`, or of `S^2 × S^1` for `n = 0`.
pub fn lens_space(n: i64) -> Vec<Shape> {
    match n.abs() {
        0 => vec![(1, vec![]), (1, vec![]), (1, vec![]), (1, vec![])],
        1 => vec![(1, vec![]), (0, vec![]), (0, vec![]), (1, vec![])],
        n => vec![(1, vec![]), (0, vec![]), (0, vec![n]), (1, vec![])],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ttd_core::corpus;

    #[test]
    fn smith_diagonals() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![0, 0], vec![0, 0]]), Vec::<i128>::new());
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn reference_cohomology() {
        assert_eq!(
            naive_cohomology(&corpus::sphere()),
            vec![(1, vec![]), (0, vec![]), (1, vec![])]
        );
        assert_eq!(
            naive_cohomology(&corpus::rp2()),
            vec![(1, vec![]), (0, vec![]), (0, vec![2])]
        );
        assert_eq!(naive_cohomology(&corpus::rp3()), lens_space(2));
    }

    #[test]
    fn orbit_enumeration() {
        let pts: Vec<i64> = (-3..=3).collect();
        assert_eq!(orbits(&pts, |&p| vec![-p]).len(), 4);
    }
}
