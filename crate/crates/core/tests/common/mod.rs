//! Brute-force oracle for the A3 cluster group, built only from the three
//! transpositions (1 2), (2 3), (2 4) on four points. Nothing here touches
//! the coset enumerator or the Cayley graph.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// One-line form on points 0..4; `p[i]` is the image of `i`.
pub type Perm = [u8; 4];

pub const ID: Perm = [0, 1, 2, 3];

pub fn transposition(a: u8, b: u8) -> Perm {
    let mut p = ID;
    p.swap(a as usize, b as usize);
    p
}

/// The generator images: t1 = (1 2), t2 = (2 3), t3 = (2 4), 0-based here.
pub fn generators() -> [Perm; 3] {
    [
        transposition(0, 1),
        transposition(1, 2),
        transposition(1, 3),
    ]
}

/// Apply `p`, then `q`.
pub fn then(p: Perm, q: Perm) -> Perm {
    [
        q[p[0] as usize],
        q[p[1] as usize],
        q[p[2] as usize],
        q[p[3] as usize],
    ]
}

pub fn inverse(p: Perm) -> Perm {
    let mut out = ID;
    for i in 0..4 {
        out[p[i] as usize] = i as u8;
    }
    out
}

pub fn eval(gens: &[Perm], word: &[usize]) -> Perm {
    word.iter().fold(ID, |acc, &x| then(acc, gens[x]))
}

pub struct Oracle {
    pub gens: [Perm; 3],
    /// Minimal word length of each group element.
    pub length: BTreeMap<Perm, usize>,
    /// Every word of minimal length, grouped by element.
    pub geodesics: BTreeMap<Perm, BTreeSet<Vec<usize>>>,
}

impl Oracle {
    /// Enumerates every word of length 0, 1, 2, ... until a whole level adds
    /// no new element; geodesics are the words found at an element's level.
    pub fn new() -> Self {
        let gens = generators();
        let mut length = BTreeMap::new();
        let mut geodesics: BTreeMap<Perm, BTreeSet<Vec<usize>>> = BTreeMap::new();
        let mut level: Vec<Vec<usize>> = vec![vec![]];
        let mut n = 0;
        loop {
            let mut new = false;
            for w in &level {
                let p = eval(&gens, w);
                let best = *length.entry(p).or_insert_with(|| {
                    new = true;
                    n
                });
                if best == n {
                    geodesics.entry(p).or_default().insert(w.clone());
                }
            }
            if !new {
                break;
            }
            level = level
                .iter()
                .flat_map(|w| {
                    (0..3).map(move |x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
            n += 1;
        }
        Oracle {
            gens,
            length,
            geodesics,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Perm> + '_ {
        self.length.keys().copied()
    }

    pub fn perm(&self, word: &[usize]) -> Perm {
        eval(&self.gens, word)
    }

    pub fn len(&self, p: Perm) -> usize {
        self.length[&p]
    }

    pub fn subgroup(&self, subset: &[usize]) -> BTreeSet<Perm> {
        let mut set = BTreeSet::from([ID]);
        loop {
            let before = set.len();
            let grown: Vec<Perm> = set
                .iter()
                .flat_map(|&p| subset.iter().map(move |&x| (p, x)))
                .map(|(p, x)| then(p, self.gens[x]))
                .collect();
            set.extend(grown);
            if set.len() == before {
                return set;
            }
        }
    }

    /// Elements `p` with `l(p·x) > l(p)` for every `x` in the subset.
    pub fn upper(&self, subset: &[usize]) -> BTreeSet<Perm> {
        self.elements()
            .filter(|&p| {
                subset
                    .iter()
                    .all(|&x| self.len(then(p, self.gens[x])) > self.len(p))
            })
            .collect()
    }

    /// Elements `p` with `l(x·p) > l(p)` for every `x` in the subset.
    pub fn upper_left(&self, subset: &[usize]) -> BTreeSet<Perm> {
        self.elements()
            .filter(|&p| {
                subset
                    .iter()
                    .all(|&x| self.len(then(self.gens[x], p)) > self.len(p))
            })
            .collect()
    }

    /// Every `(a, b)` with `a ∈ G^I`, `b ∈ G_I`, `ab = w`, `l(a) + l(b) = l(w)`.
    pub fn factorizations(&self, subset: &[usize], w: Perm) -> Vec<(Perm, Perm)> {
        let sub = self.subgroup(subset);
        let mut out = Vec::new();
        for a in self.upper(subset) {
            for &b in &sub {
                if then(a, b) == w && self.len(a) + self.len(b) == self.len(w) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Every `(b, a)` with `b ∈ G_I`, `a ∈ ^IG`, `ba = w`, additive lengths.
    pub fn left_factorizations(&self, subset: &[usize], w: Perm) -> Vec<(Perm, Perm)> {
        let sub = self.subgroup(subset);
        let mut out = Vec::new();
        for &b in &sub {
            for a in self.upper_left(subset) {
                if then(b, a) == w && self.len(a) + self.len(b) == self.len(w) {
                    out.push((b, a));
                }
            }
        }
        out
    }

    pub fn right_descents(&self, p: Perm) -> Vec<usize> {
        (0..3)
            .filter(|&x| self.len(then(p, self.gens[x])) < self.len(p))
            .collect()
    }

    pub fn left_descents(&self, p: Perm) -> Vec<usize> {
        (0..3)
            .filter(|&x| self.len(then(self.gens[x], p)) < self.len(p))
            .collect()
    }
}

/// Generator indices of a word over t1, t2, t3 written like "t2 t3 t1 t2".
pub fn word(text: &str) -> Vec<usize> {
    text.split_whitespace()
        .filter(|t| *t != "e")
        .map(|t| match t {
            "t1" => 0,
            "t2" => 1,
            "t3" => 2,
            other => panic!("unexpected letter {other}"),
        })
        .collect()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
