//! The Cayley graph of a finite group, built from its regular representation.
//!
//! Elements are numbered as in the standardised coset table, so element `0` is
//! the identity and ids follow breadth-first discovery order. Lengths are
//! breadth-first distances from the identity, and each element carries its
//! canonical reduced word: the lexicographically least geodesic, ordering
//! letters by generator index (and `x` before `x⁻¹`).

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::perm::PermutationMap;
use crate::presentation::{Letter, Presentation, Word};
use crate::todd_coxeter::CosetTable;

/// Index of a group element in the regular representation; `0` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("letter refers to generator #{0}, which does not exist")]
    InvalidLetter(usize),
    #[error("more than {cap} reduced expressions")]
    TooManyExpressions { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("relator {relator} has odd length {length}; the sign map is undefined")]
    OddRelator { relator: usize, length: usize },
}

/// Default cap for [`CayleyGraph::reduced_expressions`].
pub const DEFAULT_EXPRESSION_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    order: usize,
    generators: usize,
    involutive: bool,
    /// Per column (letter): `right_mul[c][g] = g·x`.
    right_mul: Vec<Vec<usize>>,
    /// Per column (letter): `left_mul[c][g] = x·g`.
    left_mul: Vec<Vec<usize>>,
    length: Vec<usize>,
    inverse: Vec<usize>,
    canonical: Vec<Word>,
}

impl CayleyGraph {
    /// Builds the graph from a coset table of the trivial subgroup.
    pub fn build(t: &CosetTable) -> Self {
        let order = t.rows();
        let cols = t.column_count();
        let right_mul: Vec<Vec<usize>> = (0..cols)
            .map(|c| {
                let l = t.letter_of_column(c);
                (0..order).map(|r| t.act(r, l)).collect()
            })
            .collect();

        let mut length = vec![usize::MAX; order];
        let mut canonical = vec![Word::empty(); order];
        length[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(g) = queue.pop_front() {
            for (c, col) in right_mul.iter().enumerate() {
                let h = col[g];
                if length[h] == usize::MAX {
                    length[h] = length[g] + 1;
                    let mut w = canonical[g].clone();
                    w.0.push(t.letter_of_column(c));
                    canonical[h] = w;
                    queue.push_back(h);
                }
            }
        }

        let mut graph = CayleyGraph {
            order,
            generators: t.generator_count(),
            involutive: t.is_involutive(),
            right_mul,
            left_mul: Vec::new(),
            length,
            inverse: Vec::new(),
            canonical,
        };
        graph.inverse = (0..order)
            .map(|g| graph.trace(0, &graph.canonical[g].inverse()))
            .collect();
        graph.left_mul = (0..cols)
            .map(|c| {
                let x = graph.right_mul[c][0];
                (0..order)
                    .map(|g| graph.trace(x, &graph.canonical[g]))
                    .collect()
            })
            .collect();
        graph
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order).map(ElementId)
    }

    /// Letters used as edges: generators, plus their inverses when the
    /// generators are not involutions.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.right_mul.len())
            .map(|c| self.letter_of_column(c))
            .collect()
    }

    fn letter_of_column(&self, c: usize) -> Letter {
        if self.involutive {
            Letter::new(c)
        } else {
            Letter {
                gen: c / 2,
                inverse: c % 2 == 1,
            }
        }
    }

    fn column(&self, l: Letter) -> usize {
        if self.involutive {
            l.gen
        } else {
            2 * l.gen + l.inverse as usize
        }
    }

    fn trace(&self, start: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(start, |g, &l| self.right_mul[self.column(l)][g])
    }

    pub fn right_mul(&self, g: ElementId, l: Letter) -> ElementId {
        ElementId(self.right_mul[self.column(l)][g.0])
    }

    pub fn left_mul(&self, l: Letter, g: ElementId) -> ElementId {
        ElementId(self.left_mul[self.column(l)][g.0])
    }

    /// The element represented by generator `gen`.
    pub fn generator(&self, gen: usize) -> ElementId {
        self.right_mul(ElementId::IDENTITY, Letter::new(gen))
    }

    pub fn mul(&self, g: ElementId, h: ElementId) -> ElementId {
        ElementId(self.trace(g.0, &self.canonical[h.0]))
    }

    pub fn inverse(&self, g: ElementId) -> ElementId {
        ElementId(self.inverse[g.0])
    }

    pub fn length(&self, g: ElementId) -> usize {
        self.length[g.0]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.length
    }

    /// Canonical reduced word of `g`.
    pub fn word(&self, g: ElementId) -> &Word {
        &self.canonical[g.0]
    }

    /// Evaluates a word by folding right multiplication from the identity.
    pub fn eval_word(&self, w: &Word) -> Result<ElementId, CayleyError> {
        if let Some(l) = w.letters().iter().find(|l| l.gen >= self.generators) {
            return Err(CayleyError::InvalidLetter(l.gen));
        }
        Ok(ElementId(self.trace(0, w)))
    }

    /// Immediate predecessors of `g` in the geodesic DAG: pairs `(h, l)` with
    /// `h·l = g` and `length(h) = length(g) - 1`.
    fn predecessors(&self, g: usize) -> impl Iterator<Item = (usize, Letter)> + '_ {
        (0..self.right_mul.len()).filter_map(move |c| {
            let l = self.letter_of_column(c);
            let h = self.right_mul[self.column(l.inverted())][g];
            (self.length[h] + 1 == self.length[g]).then_some((h, l))
        })
    }

    /// All reduced expressions of `g`, sorted lexicographically.
    pub fn reduced_expressions(&self, g: ElementId, cap: usize) -> Result<Vec<Word>, CayleyError> {
        let mut out = Vec::new();
        let mut suffix = Vec::with_capacity(self.length[g.0]);
        self.collect_expressions(g.0, &mut suffix, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn collect_expressions(
        &self,
        g: usize,
        suffix: &mut Vec<Letter>,
        out: &mut Vec<Word>,
        cap: usize,
    ) -> Result<(), CayleyError> {
        if g == 0 {
            if out.len() == cap {
                return Err(CayleyError::TooManyExpressions { cap });
            }
            out.push(suffix.iter().rev().copied().collect());
            return Ok(());
        }
        for (h, l) in self.predecessors(g) {
            suffix.push(l);
            self.collect_expressions(h, suffix, out, cap)?;
            suffix.pop();
        }
        Ok(())
    }

    /// Number of reduced expressions of every element.
    pub fn count_reduced_expressions(&self) -> Vec<u128> {
        let mut ids: Vec<usize> = (0..self.order).collect();
        ids.sort_by_key(|&g| self.length[g]);
        let mut count = vec![0u128; self.order];
        count[0] = 1;
        for g in ids.into_iter().skip(1) {
            count[g] = self.predecessors(g).map(|(h, _)| count[h]).sum();
        }
        count
    }

    /// Generators `x` with `length(g·x) < length(g)` (right) or
    /// `length(x·g) < length(g)` (left).
    pub fn descents(&self, g: ElementId, side: Side) -> Vec<usize> {
        (0..self.generators)
            .filter(|&x| self.is_descent(g, x, side))
            .collect()
    }

    pub fn is_descent(&self, g: ElementId, x: usize, side: Side) -> bool {
        let h = match side {
            Side::Right => self.right_mul(g, Letter::new(x)),
            Side::Left => self.left_mul(Letter::new(x), g),
        };
        self.length(h) < self.length(g)
    }

    /// Order of `g` as a group element.
    pub fn element_order(&self, g: ElementId) -> usize {
        let mut k = 1;
        let mut p = g;
        while p != ElementId::IDENTITY {
            p = self.mul(p, g);
            k += 1;
        }
        k
    }
}

/// Outcome of checking the sign map `g ↦ (-1)^length(g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    /// Every Cayley edge joins elements of opposite parity.
    pub edges_flip: bool,
    /// Sign is multiplicative over all pairs of elements.
    pub multiplicative: bool,
    /// Some element has odd length.
    pub surjective: bool,
    pub generator_orders: Vec<usize>,
    /// Every generator has order exactly 2 (only checked under the involution
    /// condition; `None` otherwise).
    pub generators_order_two: Option<bool>,
}

impl ParityReport {
    pub fn pass(&self) -> bool {
        self.edges_flip
            && self.multiplicative
            && self.surjective
            && self.generators_order_two != Some(false)
    }
}

/// Checks that `(-1)^length` is a surjective homomorphism onto `{±1}`.
///
/// The multiplicativity check is quadratic in the group order.
pub fn parity_check(g: &CayleyGraph, p: &Presentation) -> Result<ParityReport, ParityError> {
    if let Some((i, r)) = p
        .relators()
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() % 2 == 1)
    {
        return Err(ParityError::OddRelator {
            relator: i,
            length: r.len(),
        });
    }
    let sign = |e: ElementId| g.length(e) % 2;
    let edges_flip = g.elements().all(|e| {
        g.letters()
            .into_iter()
            .all(|l| sign(g.right_mul(e, l)) != sign(e))
    });
    let multiplicative = g.elements().all(|a| {
        g.elements()
            .all(|b| sign(g.mul(a, b)) == (sign(a) + sign(b)) % 2)
    });
    let surjective = g.elements().any(|e| sign(e) == 1);
    let generator_orders: Vec<usize> = (0..g.generator_count())
        .map(|x| g.element_order(g.generator(x)))
        .collect();
    let generators_order_two = p
        .conditions()
        .involutions
        .then(|| generator_orders.iter().all(|&o| o == 2));
    Ok(ParityReport {
        edges_flip,
        multiplicative,
        surjective,
        generator_orders,
        generators_order_two,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the Cayley graph in DOT.
///
/// Nodes are `n<id>` labelled with the canonical word, plus the permutation
/// image when `labels` is given (evaluated with the rightmost letter acting
/// first). There is one undirected edge per `{g, g·x}` and generator `x`;
/// nodes are ordered by id and edges by `(min id, max id, generator)`.
pub fn export_dot(g: &CayleyGraph, p: &Presentation, labels: Option<&PermutationMap>) -> String {
    let mut out = String::from("graph cayley {\n");
    for e in g.elements() {
        let word = p.format_word(g.word(e));
        let label = match labels {
            Some(images) => format!("{word}\\n{}", images.eval_composed(g.word(e))),
            None => word,
        };
        let _ = writeln!(out, "  n{} [label=\"{}\"];", e.0, dot_escape(&label));
    }
    let mut edges = BTreeSet::new();
    for e in g.elements() {
        for x in 0..g.generator_count() {
            let f = g.right_mul(e, Letter::new(x));
            edges.insert((e.0.min(f.0), e.0.max(f.0), x));
        }
    }
    for (a, b, x) in edges {
        let _ = writeln!(out, "  n{a} -- n{b} [label=\"{}\"];", dot_escape(p.name(x)));
    }
    out.push_str("}\n");
    out
}
