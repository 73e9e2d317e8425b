//! Parabolic subgroups `G_I`, the sets `G^I` and `^IG`, cosets `wG_I`, and
//! length-additive factorisations `w = ab` with `a ∈ G^I`, `b ∈ G_I`.
//!
//! `G^I` is taken literally: `g ∈ G^I` iff `length(g·x) > length(g)` for every
//! `x ∈ I`. When every relator has even length no edge preserves length, so
//! this is the same as "no right descent in I"; for other presentations (the
//! Klein four-group, say) the two differ and the strict form is the one used.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{CayleyGraph, ElementId, Side};
use crate::presentation::{Letter, Presentation, Word};

/// A subset `I` of the generators, as a bitmask over generator indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ParabolicSubset(u64);

/// Bitmask width of [`ParabolicSubset`].
pub const MAX_SUBSET_GENERATORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("unknown generator `{0}` in subset")]
    UnknownGenerator(String),
    #[error("generator index {0} does not fit in a subset (at most {MAX_SUBSET_GENERATORS})")]
    TooWide(usize),
}

impl ParabolicSubset {
    pub const EMPTY: ParabolicSubset = ParabolicSubset(0);

    pub fn from_bits(bits: u64) -> Self {
        ParabolicSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Result<Self, SubsetError> {
        let mut bits = 0;
        for i in indices {
            if i >= MAX_SUBSET_GENERATORS {
                return Err(SubsetError::TooWide(i));
            }
            bits |= 1 << i;
        }
        Ok(ParabolicSubset(bits))
    }

    /// The whole generating set of a group with `n` generators.
    pub fn all(n: usize) -> Self {
        if n >= 64 {
            ParabolicSubset(u64::MAX)
        } else {
            ParabolicSubset((1 << n) - 1)
        }
    }

    /// Parses a comma- or whitespace-separated list of generator names.
    /// An empty string (or `-`) is the empty subset.
    pub fn parse(p: &Presentation, text: &str) -> Result<Self, SubsetError> {
        let text = text.trim();
        if text == "-" {
            return Ok(Self::EMPTY);
        }
        let indices = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|name| {
                p.generator_index(name)
                    .ok_or_else(|| SubsetError::UnknownGenerator(name.to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(indices)
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&x| self.contains(x))
    }

    /// All subsets of `n` generators in binary-counting order.
    pub fn subsets(n: usize) -> impl Iterator<Item = ParabolicSubset> {
        assert!(n < 64, "too many generators to enumerate subsets");
        (0..1u64 << n).map(ParabolicSubset)
    }

    /// Comma-separated generator names, `-` for the empty subset.
    pub fn format(self, p: &Presentation) -> String {
        if self.is_empty() {
            return "-".to_owned();
        }
        self.iter().map(|x| p.name(x)).collect::<Vec<_>>().join(",")
    }
}

/// `w = ab` with `a ∈ G^I`, `b ∈ G_I` and `length(a) + length(b) = length(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub a: ElementId,
    pub b: ElementId,
    pub a_word: Word,
    pub b_word: Word,
}

impl Factorization {
    fn new(g: &CayleyGraph, a: ElementId, b: ElementId) -> Self {
        Factorization {
            a,
            b,
            a_word: g.word(a).clone(),
            b_word: g.word(b).clone(),
        }
    }

    /// Checks all four defining properties against `w`.
    pub fn check(&self, g: &CayleyGraph, i: ParabolicSubset, w: ElementId) -> Result<(), String> {
        if g.mul(self.a, self.b) != w {
            return Err("a·b ≠ w".into());
        }
        if !is_upper(g, i, self.a, Side::Right) {
            return Err("a ∉ G^I".into());
        }
        if !in_subgroup(g, i, self.b) {
            return Err("b ∉ G_I".into());
        }
        if g.length(self.a) + g.length(self.b) != g.length(w) {
            return Err("lengths are not additive".into());
        }
        Ok(())
    }
}

/// `w = ba` with `b ∈ G_I`, `a ∈ ^IG` and additive lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftFactorization {
    pub b: ElementId,
    pub a: ElementId,
    pub b_word: Word,
    pub a_word: Word,
}

impl LeftFactorization {
    pub fn check(&self, g: &CayleyGraph, i: ParabolicSubset, w: ElementId) -> Result<(), String> {
        if g.mul(self.b, self.a) != w {
            return Err("b·a ≠ w".into());
        }
        if !in_subgroup(g, i, self.b) {
            return Err("b ∉ G_I".into());
        }
        if !is_upper(g, i, self.a, Side::Left) {
            return Err("a ∉ ^IG".into());
        }
        if g.length(self.a) + g.length(self.b) != g.length(w) {
            return Err("lengths are not additive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizeError {
    /// The descent loop stopped at an element with no descent in `I` that is
    /// nevertheless not in `G^I` (some `x ∈ I` preserves its length).
    #[error("no descent in I left, but element {0:?} is not in G^I")]
    NoDescentButNotUpper(ElementId),
}

/// `G_I`: closure of the identity under right multiplication by `I`, sorted.
pub fn subgroup_elements(g: &CayleyGraph, i: ParabolicSubset) -> Vec<ElementId> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut stack = vec![ElementId::IDENTITY];
    while let Some(e) = stack.pop() {
        for x in i.iter().filter(|&x| x < g.generator_count()) {
            let f = g.right_mul(e, Letter::new(x));
            if !std::mem::replace(&mut seen[f.0], true) {
                stack.push(f);
            }
        }
    }
    g.elements().filter(|e| seen[e.0]).collect()
}

fn in_subgroup(g: &CayleyGraph, i: ParabolicSubset, e: ElementId) -> bool {
    subgroup_elements(g, i).binary_search(&e).is_ok()
}

/// Whether every `x ∈ I` strictly increases the length of `e` on `side`.
pub fn is_upper(g: &CayleyGraph, i: ParabolicSubset, e: ElementId, side: Side) -> bool {
    i.iter().filter(|&x| x < g.generator_count()).all(|x| {
        let f = match side {
            Side::Right => g.right_mul(e, Letter::new(x)),
            Side::Left => g.left_mul(Letter::new(x), e),
        };
        g.length(f) > g.length(e)
    })
}

/// `G^I` (right) or `^IG` (left), sorted by id.
pub fn upper_set(g: &CayleyGraph, i: ParabolicSubset, side: Side) -> Vec<ElementId> {
    g.elements().filter(|&e| is_upper(g, i, e, side)).collect()
}

/// Greedy factorisation: repeatedly strip the smallest-index right descent
/// in `I`. The stripped letters, read in reverse, spell `b`.
pub fn factorize(
    g: &CayleyGraph,
    i: ParabolicSubset,
    w: ElementId,
) -> Result<Factorization, FactorizeError> {
    let mut current = w;
    let mut stripped: Vec<Letter> = Vec::new();
    while let Some(x) = i
        .iter()
        .filter(|&x| x < g.generator_count())
        .find(|&x| g.is_descent(current, x, Side::Right))
    {
        current = g.right_mul(current, Letter::new(x));
        stripped.push(Letter::new(x));
    }
    if !is_upper(g, i, current, Side::Right) {
        return Err(FactorizeError::NoDescentButNotUpper(current));
    }
    // w = current · x_k⁻¹ ··· x_1⁻¹
    let b_word: Word = stripped.iter().rev().map(|l| l.inverted()).collect();
    let b = g.eval_word(&b_word).expect("letters come from the graph");
    Ok(Factorization::new(g, current, b))
}

/// Left-handed factorisation `w = ba`, obtained by factorising `w⁻¹`.
pub fn factorize_left(
    g: &CayleyGraph,
    i: ParabolicSubset,
    w: ElementId,
) -> Result<LeftFactorization, FactorizeError> {
    let f = factorize(g, i, g.inverse(w))?;
    let b = g.inverse(f.b);
    let a = g.inverse(f.a);
    Ok(LeftFactorization {
        b,
        a,
        b_word: g.word(b).clone(),
        a_word: g.word(a).clone(),
    })
}

/// The coset `wG_I`, sorted by id.
pub fn coset(g: &CayleyGraph, i: ParabolicSubset, w: ElementId) -> Vec<ElementId> {
    let set: BTreeSet<ElementId> = subgroup_elements(g, i)
        .into_iter()
        .map(|h| g.mul(w, h))
        .collect();
    set.into_iter().collect()
}

/// Every additive factorisation of `w`, ordered by `length(a)` then by id.
pub fn all_factorizations(g: &CayleyGraph, i: ParabolicSubset, w: ElementId) -> Vec<Factorization> {
    factorization_candidates(g, i, w).0
}

/// Splits `wG_I ∩ G^I` into additive factorisations and the number of
/// candidates whose decomposition is not length-additive.
fn factorization_candidates(
    g: &CayleyGraph,
    i: ParabolicSubset,
    w: ElementId,
) -> (Vec<Factorization>, usize) {
    let mut out = Vec::new();
    let mut non_additive = 0;
    for a in coset(g, i, w) {
        if !is_upper(g, i, a, Side::Right) {
            continue;
        }
        let b = g.mul(g.inverse(a), w);
        if g.length(a) + g.length(b) == g.length(w) {
            out.push(Factorization::new(g, a, b));
        } else {
            non_additive += 1;
        }
    }
    out.sort_by_key(|f| (g.length(f.a), f.a));
    (out, non_additive)
}

/// Brute-force existence check that assumes nothing about the presentation.
pub fn exists_factorization(g: &CayleyGraph, i: ParabolicSubset, w: ElementId) -> bool {
    subgroup_elements(g, i).into_iter().any(|b| {
        let a = g.mul(w, g.inverse(b));
        is_upper(g, i, a, Side::Right) && g.length(a) + g.length(b) == g.length(w)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    pub coset: Vec<ElementId>,
    pub min_length_elements: Vec<ElementId>,
    /// `wG_I ∩ G^I`.
    pub intersection_with_upper: Vec<ElementId>,
}

pub fn coset_report(g: &CayleyGraph, i: ParabolicSubset, w: ElementId) -> CosetReport {
    let coset = coset(g, i, w);
    let min = coset.iter().map(|&e| g.length(e)).min().unwrap_or(0);
    let min_length_elements = coset
        .iter()
        .copied()
        .filter(|&e| g.length(e) == min)
        .collect();
    let intersection_with_upper = coset
        .iter()
        .copied()
        .filter(|&e| is_upper(g, i, e, Side::Right))
        .collect();
    CosetReport {
        coset,
        min_length_elements,
        intersection_with_upper,
    }
}

/// A pair `(I, w)` and its number of additive factorisations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub subset: ParabolicSubset,
    pub element: ElementId,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub generators: usize,
    pub subsets: usize,
    pub elements: usize,
    pub pairs: usize,
    pub factorizations: usize,
    /// Decompositions `ab = w` with `a ∈ G^I`, `b ∈ G_I` but non-additive lengths.
    pub non_additive: usize,
    /// Pairs with more than one factorisation.
    pub witnesses: Vec<ScanEntry>,
    /// Pairs with no factorisation.
    pub empty: Vec<ScanEntry>,
    /// Pairs contradicting existence, or uniqueness for `|I| ≤ 1` and `I = X`.
    /// Only asserted when both presentation conditions hold.
    pub violations: Vec<ScanEntry>,
    pub conditions_hold: bool,
}

/// Counts factorisations for every subset `I` (binary-counting order) and
/// every element (by id).
pub fn uniqueness_scan(g: &CayleyGraph, p: &Presentation) -> ScanReport {
    let n = g.generator_count();
    let full = ParabolicSubset::all(n);
    let conditions_hold = p.conditions().both();
    let mut report = ScanReport {
        generators: n,
        subsets: 1 << n,
        elements: g.order(),
        pairs: 0,
        factorizations: 0,
        non_additive: 0,
        witnesses: Vec::new(),
        empty: Vec::new(),
        violations: Vec::new(),
        conditions_hold,
    };
    for i in ParabolicSubset::subsets(n) {
        let unique_expected = i.len() <= 1 || i == full;
        for w in g.elements() {
            let (facts, non_additive) = factorization_candidates(g, i, w);
            let entry = ScanEntry {
                subset: i,
                element: w,
                count: facts.len(),
            };
            report.pairs += 1;
            report.factorizations += facts.len();
            report.non_additive += non_additive;
            if facts.is_empty() {
                report.empty.push(entry.clone());
            }
            if conditions_hold && (facts.is_empty() || (unique_expected && facts.len() != 1)) {
                report.violations.push(entry.clone());
            }
            if facts.len() > 1 {
                report.witnesses.push(entry);
            }
        }
    }
    report
}

/// One line per record, in the order witnesses, empty pairs, violations,
/// followed by a summary line.
pub fn format_scan(report: &ScanReport, g: &CayleyGraph, p: &Presentation) -> String {
    let mut out = String::new();
    let word = |e: ElementId| p.format_word_with(g.word(e), ".");
    for (tag, entries) in [
        ("WITNESS", &report.witnesses),
        ("EMPTY", &report.empty),
        ("VIOLATION", &report.violations),
    ] {
        for e in entries {
            let _ = writeln!(
                out,
                "{tag} {} {} {}",
                e.subset.format(p),
                word(e.element),
                e.count
            );
        }
    }
    let _ = writeln!(
        out,
        "SUMMARY subsets={} elements={} pairs={} factorizations={} witnesses={} non_additive={} empty={} violations={}",
        report.subsets,
        report.elements,
        report.pairs,
        report.factorizations,
        report.witnesses.len(),
        report.non_additive,
        report.empty.len(),
        report.violations.len()
    );
    out
}

/// JSON form of a scan with generator names and words spelled out.
pub fn scan_json(report: &ScanReport, g: &CayleyGraph, p: &Presentation) -> serde_json::Value {
    let entry = |e: &ScanEntry| {
        serde_json::json!({
            "subset": e.subset.iter().map(|x| p.name(x)).collect::<Vec<_>>(),
            "word": p.format_word_with(g.word(e.element), "."),
            "count": e.count,
        })
    };
    serde_json::json!({
        "witnesses": report.witnesses.iter().map(entry).collect::<Vec<_>>(),
        "empty": report.empty.iter().map(entry).collect::<Vec<_>>(),
        "violations": report.violations.iter().map(entry).collect::<Vec<_>>(),
        "summary": {
            "subsets": report.subsets,
            "elements": report.elements,
            "pairs": report.pairs,
            "factorizations": report.factorizations,
            "witnesses": report.witnesses.len(),
            "non_additive": report.non_additive,
            "empty": report.empty.len(),
            "violations": report.violations.len(),
        },
    })
}
