//! Permutations of `{0, .., n-1}` and permutation representations of presentations.
//!
//! Points act on the right: for a word `x1 x2 .. xr` the image of a point is
//! obtained by applying `x1` first. Cycle notation is printed 1-based, e.g.
//! `(1,2)(3,4)`, with `()` for the identity.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{Presentation, Word};
use crate::todd_coxeter::CosetTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image list is not a bijection on {0} points")]
    NotBijective(usize),
    #[error("permutations act on different point sets ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("cycle notation: {0}")]
    BadCycles(String),
    #[error("closure exceeded {0} elements")]
    ClosureBound(usize),
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// One-line form, 0-based: `images[i]` is the image of `i`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p == 0 || q == 0 || p as usize > n || q as usize > n {
                    return Err(PermError::BadCycles(format!("point out of range 1..={n}")));
                }
                if touched[p as usize - 1] {
                    return Err(PermError::BadCycles(format!("point {p} repeated")));
                }
                touched[p as usize - 1] = true;
                images[p as usize - 1] = q - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses 1-based cycle notation such as `(1,2)(3 4)` or `()`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, PermError> {
        let text = text.trim();
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let inner_end = rest
                .find(')')
                .filter(|_| rest.starts_with('('))
                .ok_or_else(|| PermError::BadCycles(text.to_owned()))?;
            let inner = &rest[1..inner_end];
            let cycle = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PermError::BadCycles(text.to_owned()))?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i as u32 == j)
            .count()
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.0[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

/// One permutation per generator, all of the same degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationMap {
    degree: usize,
    images: Vec<Permutation>,
}

impl PermutationMap {
    pub fn new(images: Vec<Permutation>) -> Result<Self, PermError> {
        let degree = images.first().map_or(0, Permutation::degree);
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, p.degree()));
        }
        Ok(PermutationMap { degree, images })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &Permutation {
        &self.images[gen]
    }

    /// Image of a word, letters applied left to right.
    pub fn eval(&self, w: &Word) -> Permutation {
        w.letters()
            .iter()
            .fold(Permutation::identity(self.degree), |acc, l| {
                let g = &self.images[l.gen];
                if l.inverse {
                    acc.then(&g.inverse())
                } else {
                    acc.then(g)
                }
            })
    }

    /// Image of a word under function composition, the rightmost letter
    /// acting first. This is the convention of the usual `t ↦ (i, j)` tables.
    pub fn eval_composed(&self, w: &Word) -> Permutation {
        self.eval(&w.letters().iter().rev().copied().collect())
    }
}

/// The right action of each generator on the rows of a complete coset table.
pub fn permutation_images(t: &CosetTable) -> PermutationMap {
    let images = (0..t.generator_count())
        .map(|g| Permutation(t.column(g).iter().map(|&r| r as u32).collect()))
        .collect();
    PermutationMap {
        degree: t.rows(),
        images,
    }
}

/// True iff every relator of `p` evaluates to the identity under `images`.
pub fn verify_images(p: &Presentation, images: &PermutationMap) -> Result<bool, PermError> {
    if images.images.len() != p.generator_count() {
        return Err(PermError::WrongImageCount {
            expected: p.generator_count(),
            got: images.images.len(),
        });
    }
    Ok(p.relators().iter().all(|r| images.eval(r).is_identity()))
}

/// Default bound on the number of elements visited by [`group_order_via_closure`].
pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// Order of the group generated by `images`, by breadth-first closure.
pub fn group_order_via_closure(images: &PermutationMap, bound: usize) -> Result<usize, PermError> {
    let id = Permutation::identity(images.degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &images.images {
            let q = p.then(g);
            if !seen.contains(&q) {
                if seen.len() >= bound {
                    return Err(PermError::ClosureBound(bound));
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}
