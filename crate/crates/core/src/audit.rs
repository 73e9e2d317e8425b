//! Exhaustive checks of the length-function lemmas over a finite Cayley graph.
//!
//! Each check quantifies over all elements, element pairs, or element and
//! generator pairs, and records how many cases were examined and the first
//! counterexample found.

use serde::Serialize;

use crate::cayley::DEFAULT_EXPRESSION_CAP;
use crate::cayley::{CayleyGraph, ElementId, Side};
use crate::parabolic::{is_upper, ParabolicSubset};
use crate::presentation::{Letter, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

struct Tally<'a> {
    check: PropertyCheck,
    g: &'a CayleyGraph,
    p: &'a Presentation,
}

impl<'a> Tally<'a> {
    fn new(name: &str, g: &'a CayleyGraph, p: &'a Presentation) -> Self {
        Tally {
            check: PropertyCheck {
                name: name.to_owned(),
                checked: 0,
                failures: 0,
                first_failure: None,
            },
            g,
            p,
        }
    }

    fn word(&self, e: ElementId) -> String {
        self.p.format_word(self.g.word(e))
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce(&Self) -> String) {
        self.check.checked += 1;
        if !ok {
            self.check.failures += 1;
            if self.check.first_failure.is_none() {
                self.check.first_failure = Some(describe(self));
            }
        }
    }

    fn done(self) -> PropertyCheck {
        self.check
    }
}

fn l(g: &CayleyGraph, e: ElementId) -> i64 {
    g.length(e) as i64
}

/// Properties (1)–(6) of the length lemma and the weaker (2*).
pub fn length_lemma(g: &CayleyGraph, p: &Presentation) -> Vec<PropertyCheck> {
    let gens: Vec<ElementId> = (0..g.generator_count()).map(|x| g.generator(x)).collect();
    let mut out = Vec::new();

    let mut t = Tally::new("length (1): l(w) = l(w^-1)", g, p);
    for e in g.elements() {
        t.record(l(g, e) == l(g, g.inverse(e)), |t| {
            format!("w = {}", t.word(e))
        });
    }
    out.push(t.done());

    let mut t = Tally::new("length (2): l(w) = 1 iff w in X", g, p);
    for e in g.elements() {
        t.record((l(g, e) == 1) == gens.contains(&e), |t| {
            format!("w = {}", t.word(e))
        });
    }
    out.push(t.done());

    let mut t = Tally::new("length (2*): w in X u X^-1 implies l(w) <= 1", g, p);
    for letter in (0..g.generator_count()).flat_map(|x| [Letter::new(x), Letter::inv(x)]) {
        let e = g.right_mul(ElementId::IDENTITY, letter);
        t.record(l(g, e) <= 1, |_| {
            format!("letter {}", p.format_letter(letter))
        });
    }
    out.push(t.done());

    let mut sub = Tally::new("length (3): l(vw) <= l(v) + l(w)", g, p);
    let mut sup = Tally::new("length (4): l(vw) >= l(v) - l(w)", g, p);
    for a in g.elements() {
        for b in g.elements() {
            let ab = l(g, g.mul(a, b));
            let describe = |t: &Tally| format!("v = {}, w = {}", t.word(a), t.word(b));
            sub.record(ab <= l(g, a) + l(g, b), describe);
            sup.record(ab >= l(g, a) - l(g, b), describe);
        }
    }
    out.push(sub.done());
    out.push(sup.done());

    let mut five = Tally::new("length (5): l(w) - 1 <= l(wx) <= l(w) + 1", g, p);
    let mut six = Tally::new("length (6): l(wx) = l(w) +- 1 and l(xw) != l(w)", g, p);
    for e in g.elements() {
        for x in 0..g.generator_count() {
            let right = l(g, g.right_mul(e, Letter::new(x)));
            let left = l(g, g.left_mul(Letter::new(x), e));
            let describe = |t: &Tally| format!("w = {}, x = {}", t.word(e), p.name(x));
            five.record((right - l(g, e)).abs() <= 1, describe);
            six.record((right - l(g, e)).abs() == 1 && left != l(g, e), describe);
        }
    }
    out.push(five.done());
    out.push(six.done());
    out
}

/// `x` is a left descent of `w` iff some reduced expression of `w` begins with `x`.
pub fn exchange_lemma(g: &CayleyGraph, p: &Presentation) -> PropertyCheck {
    let mut t = Tally::new(
        "exchange: left descents are first letters of reduced words",
        g,
        p,
    );
    for e in g.elements() {
        let words = g
            .reduced_expressions(e, DEFAULT_EXPRESSION_CAP)
            .unwrap_or_default();
        for x in 0..g.generator_count() {
            let begins = words
                .iter()
                .any(|w| w.letters().first() == Some(&Letter::new(x)));
            t.record(g.is_descent(e, x, Side::Left) == begins, |t| {
                format!("w = {}, x = {}", t.word(e), p.name(x))
            });
        }
    }
    t.done()
}

/// For `I = X∖{x}` and `w ≠ e`: `w ∈ ^IG` iff every reduced expression of `w`
/// begins with `x`, and `w ∈ G^I` iff every one ends with `x`.
pub fn ig_lemma(g: &CayleyGraph, p: &Presentation) -> Vec<PropertyCheck> {
    let n = g.generator_count();
    let full = ParabolicSubset::all(n);
    let mut left = Tally::new("IG: w in ^IG iff all reduced words begin with x", g, p);
    let mut right = Tally::new("IG mirror: w in G^I iff all reduced words end with x", g, p);
    for e in g.elements().skip(1) {
        let words = g
            .reduced_expressions(e, DEFAULT_EXPRESSION_CAP)
            .unwrap_or_default();
        for x in 0..n {
            let i = ParabolicSubset::from_bits(full.bits() & !(1 << x));
            let gx = Letter::new(x);
            let describe = |t: &Tally| format!("w = {}, x = {}", t.word(e), p.name(x));
            let all_begin = words.iter().all(|w| w.letters().first() == Some(&gx));
            let all_end = words.iter().all(|w| w.letters().last() == Some(&gx));
            left.record(is_upper(g, i, e, Side::Left) == all_begin, describe);
            right.record(is_upper(g, i, e, Side::Right) == all_end, describe);
        }
    }
    vec![left.done(), right.done()]
}

/// `(-1)^l(vw) = (-1)^l(v) (-1)^l(w)` over all pairs.
pub fn sign_multiplicative(g: &CayleyGraph, p: &Presentation) -> PropertyCheck {
    let mut t = Tally::new("sign: (-1)^l is multiplicative", g, p);
    for a in g.elements() {
        for b in g.elements() {
            let lhs = g.length(g.mul(a, b)) % 2;
            let rhs = (g.length(a) + g.length(b)) % 2;
            t.record(lhs == rhs, |t| {
                format!("v = {}, w = {}", t.word(a), t.word(b))
            });
        }
    }
    t.done()
}

/// Every check above; the exchange, IG and sign checks only apply when both
/// presentation conditions hold.
pub fn full_suite(g: &CayleyGraph, p: &Presentation) -> Vec<PropertyCheck> {
    let mut out = length_lemma(g, p);
    if p.conditions().both() {
        out.push(exchange_lemma(g, p));
        out.extend(ig_lemma(g, p));
        out.push(sign_multiplicative(g, p));
    }
    out
}
