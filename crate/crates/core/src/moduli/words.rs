use std::fmt;

use crate::io::Order;

/// A reduced word in a free product of cyclic groups, written as a product:
/// the rightmost syllable acts first. Syllables are `(generator, exponent)`
/// with neighbours on different generators and exponents in the canonical
/// range of the generator's order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters `g^{±1}`.
    pub fn letter_length(&self) -> u64 {
        self.0.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Letters `(generator, ±1)` in application order (rightmost first).
    pub fn letters_applied(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0
            .iter()
            .rev()
            .flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize))
    }
}

/// `*_i Z/n_i` (with `Z` for infinite order) on named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    names: Vec<String>,
    orders: Vec<Order>,
}

fn canonical_exponent(e: i64, order: Order) -> i64 {
    match order {
        Order::Infinite => e,
        Order::Finite(n) => {
            let n = n as i64;
            let r = e.rem_euclid(n);
            if 2 * r > n {
                r - n
            } else {
                r
            }
        }
    }
}

impl FreeProduct {
    pub fn new(names: Vec<String>, orders: Vec<Order>) -> Self {
        assert_eq!(names.len(), orders.len());
        FreeProduct { names, orders }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    /// Reduces a product of syllables, given left to right.
    pub fn normalize<I: IntoIterator<Item = (usize, i64)>>(&self, syllables: I) -> Word {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            let merged = match out.last() {
                Some(&(h, f)) if h == g => {
                    out.pop();
                    f + e
                }
                _ => e,
            };
            let e = canonical_exponent(merged, self.orders[g]);
            if e != 0 {
                out.push((g, e));
            }
        }
        Word(out)
    }

    pub fn generator(&self, g: usize) -> Word {
        self.normalize([(g, 1)])
    }

    /// `a · b` (`b` acts first).
    pub fn multiply(&self, a: &Word, b: &Word) -> Word {
        self.normalize(a.0.iter().chain(&b.0).copied())
    }

    pub fn inverse(&self, a: &Word) -> Word {
        self.normalize(a.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn power(&self, a: &Word, k: u64) -> Word {
        (0..k).fold(Word::identity(), |acc, _| self.multiply(&acc, a))
    }

    /// All reduced words with at most `depth` letters, shortest first, then
    /// by syllables.
    pub fn enumerate(&self, depth: u64) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        let mut stack = vec![Word::identity()];
        while let Some(w) = stack.pop() {
            let used = w.letter_length();
            let last = w.0.last().map(|s| s.0);
            for g in 0..self.rank() {
                if Some(g) == last {
                    continue;
                }
                for e in self.exponents(g, depth - used) {
                    let mut next = w.0.clone();
                    next.push((g, e));
                    let word = Word(next);
                    stack.push(word.clone());
                    out.push(word);
                }
            }
        }
        out.sort_by(|a, b| a.letter_length().cmp(&b.letter_length()).then_with(|| a.cmp(b)));
        out
    }

    /// Canonical nonzero exponents of generator `g` with `|e| ≤ budget`.
    fn exponents(&self, g: usize, budget: u64) -> Vec<i64> {
        let b = budget as i64;
        let range: Vec<i64> = match self.orders[g] {
            Order::Infinite => (-b..=b).collect(),
            Order::Finite(n) => {
                let n = n as i64;
                ((-(n - 1) / 2)..=(n / 2)).filter(|e| e.abs() <= b).collect()
            }
        };
        range.into_iter().filter(|&e| e != 0).collect()
    }

    /// Order of the element: words of one syllable after cyclic reduction
    /// have the order of that power, longer ones have infinite order.
    pub fn element_order(&self, w: &Word) -> Order {
        let mut s = w.0.clone();
        while s.len() > 1 && s[0].0 == s[s.len() - 1].0 {
            let (g, e) = s.pop().expect("nonempty");
            let merged = canonical_exponent(s[0].1 + e, self.orders[g]);
            if merged == 0 {
                s.remove(0);
            } else {
                s[0].1 = merged;
            }
        }
        match s.as_slice() {
            [] => Order::Finite(1),
            [(g, e)] => match self.orders[*g] {
                Order::Finite(n) => Order::Finite(n / num_integer::gcd(n, e.unsigned_abs())),
                Order::Infinite => Order::Infinite,
            },
            _ => Order::Infinite,
        }
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { group: self, word: w }
    }
}

pub struct WordDisplay<'a> {
    group: &'a FreeProduct,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("id");
        }
        for (i, &(g, e)) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.group.names[g])?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
