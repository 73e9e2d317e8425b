//! End-to-end reproduction of the `A₃` cluster group results and the Klein
//! four-group non-example, as a list of named pass/fail checks.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::audit;
use crate::cayley::ElementId;
use crate::group::Group;
use crate::parabolic::{
    all_factorizations, coset_report, exists_factorization, factorize, factorize_left,
    subgroup_elements, upper_set, ParabolicSubset,
};
use crate::perm::{group_order_via_closure, verify_images, Permutation, DEFAULT_CLOSURE_BOUND};
use crate::quiver::{
    a3_cluster_presentation, derived_relation_check, derived_relation_holds_under,
    klein_presentation, pi_map,
};
use crate::todd_coxeter::EnumerationLimits;
use crate::Side;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub checks: Vec<Check>,
    pub passed: bool,
    pub first_failure: Option<String>,
}

impl Transcript {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
        }
        match &self.first_failure {
            None => {
                let _ = writeln!(out, "RESULT PASS ({} checks)", self.checks.len());
            }
            Some(name) => {
                let _ = writeln!(out, "RESULT FAIL (first failure: {name})");
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Replaces the image of `t3` by `(3,4)`; a negative control.
    pub corrupt_pi: bool,
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_owned(),
            passed,
            detail: detail.into(),
        });
    }
}

fn elements(g: &Group, words: &[&str]) -> BTreeSet<ElementId> {
    words.iter().map(|w| g.element(w)).collect()
}

fn names(g: &Group, set: impl IntoIterator<Item = ElementId>) -> String {
    let items: Vec<String> = set.into_iter().map(|e| g.format(e)).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn run(options: Options) -> Transcript {
    let mut r = Recorder { checks: Vec::new() };
    let p = a3_cluster_presentation();
    let mut pi = pi_map();
    if options.corrupt_pi {
        let mut images = pi.images().to_vec();
        images[2] = Permutation::from_cycles(4, &[&[3, 4]]).expect("valid transposition");
        pi = crate::perm::PermutationMap::new(images).expect("equal degrees");
    }

    let conditions = p.conditions();
    r.check(
        "conditions",
        conditions.both(),
        format!(
            "involutions={} even={}",
            conditions.involutions, conditions.even
        ),
    );

    match verify_images(&p, &pi) {
        Ok(ok) => r.check(
            "pi-homomorphism",
            ok,
            format!(
                "{} relators checked under t1->{} t2->{} t3->{}",
                p.relators().len(),
                pi.image(0),
                pi.image(1),
                pi.image(2)
            ),
        ),
        Err(e) => r.check("pi-homomorphism", false, e.to_string()),
    }

    let g = match Group::new(p.clone(), EnumerationLimits::default()) {
        Ok(g) => g,
        Err(e) => {
            r.check("order", false, e.to_string());
            return finish(r);
        }
    };
    let closure = group_order_via_closure(&pi, DEFAULT_CLOSURE_BOUND).unwrap_or(0);
    r.check(
        "order",
        g.order() == 24 && closure == 24,
        format!(
            "coset enumeration {} elements, closure of pi images {}",
            g.order(),
            closure
        ),
    );

    let derived_graph = derived_relation_check(&g.graph);
    let derived_pi = derived_relation_holds_under(&pi);
    r.check(
        "derived-relation",
        derived_graph && derived_pi,
        format!("t_i t_j t_i t_k = t_k t_i t_j t_i: group {derived_graph}, pi {derived_pi}"),
    );

    let gr = &g.graph;
    let i12 = ParabolicSubset::from_indices([0, 1]).expect("small");
    let sub: BTreeSet<_> = subgroup_elements(gr, i12).into_iter().collect();
    let want = elements(&g, &["e", "t1", "t2", "t1 t2", "t2 t1", "t1 t2 t1"]);
    r.check(
        "parabolic-subgroup",
        sub == want,
        format!("G_I = {}", names(&g, sub.iter().copied())),
    );

    let upper: BTreeSet<_> = upper_set(gr, i12, Side::Right).into_iter().collect();
    let want = elements(&g, &["e", "t3", "t1 t3", "t2 t3", "t1 t2 t3", "t2 t1 t3"]);
    r.check(
        "upper-set",
        upper == want,
        format!("G^I = {}", names(&g, upper.iter().copied())),
    );

    let w = g.element("t1 t2 t3");
    let report = coset_report(gr, i12, w);
    let coset: BTreeSet<_> = report.coset.iter().copied().collect();
    let want = elements(
        &g,
        &[
            "t1 t2 t3",
            "t1 t2 t3 t1",
            "t1 t2 t3 t2",
            "t2 t3 t1",
            "t2 t3 t2",
            "t2 t3",
        ],
    );
    r.check(
        "coset",
        coset == want,
        format!("wG_I = {}", names(&g, coset.iter().copied())),
    );

    let w = g.element("t2 t3 t1 t2");
    let facts = all_factorizations(gr, i12, w);
    let pairs: Vec<(ElementId, ElementId)> = facts.iter().map(|f| (f.a, f.b)).collect();
    let want = vec![
        (g.element("t2 t3"), g.element("t1 t2")),
        (g.element("t1 t2 t3"), g.element("t1")),
    ];
    let lengths: Vec<String> = facts
        .iter()
        .map(|f| {
            format!(
                "({} | {}) {}+{}",
                g.format(f.a),
                g.format(f.b),
                gr.length(f.a),
                gr.length(f.b)
            )
        })
        .collect();
    r.check(
        "non-unique-factorisation",
        pairs == want && gr.length(w) == 4,
        format!("w = t2 t3 t1 t2: {}", lengths.join(", ")),
    );

    let w = g.element("t1 t2 t3");
    let facts = all_factorizations(gr, i12, w);
    let report = coset_report(gr, i12, w);
    let min_is_t2t3 = report.min_length_elements == vec![g.element("t2 t3")];
    let only_trivial = facts.len() == 1 && facts[0].a == w && facts[0].b == ElementId::IDENTITY;
    let min_not_used = facts.iter().all(|f| f.a != g.element("t2 t3"));
    r.check(
        "minimal-coset-element",
        min_is_t2t3 && only_trivial && min_not_used,
        format!(
            "w = t1 t2 t3 factorisations {}, minimal coset elements {}",
            facts.len(),
            names(&g, report.min_length_elements.iter().copied())
        ),
    );

    match Group::new(klein_presentation(), EnumerationLimits::default()) {
        Ok(k) => {
            let i = ParabolicSubset::from_indices([0]).expect("small");
            let j = k.element("j");
            let exists = exists_factorization(&k.graph, i, j);
            let even = k.presentation.conditions().even;
            let greedy_fails = factorize(&k.graph, i, j).is_err();
            r.check(
                "klein",
                k.order() == 4 && !exists && !even && greedy_fails,
                format!(
                    "order {}, even={even}, factorisation of j w.r.t. {{i}} exists={exists}",
                    k.order()
                ),
            );
        }
        Err(e) => r.check("klein", false, e.to_string()),
    }

    let n = gr.generator_count();
    let mut unique_cases = 0;
    let mut unique_failures = 0;
    for i in ParabolicSubset::subsets(n).filter(|i| i.len() == 1 || i.len() == n) {
        for w in gr.elements() {
            unique_cases += 1;
            if all_factorizations(gr, i, w).len() != 1 {
                unique_failures += 1;
            }
        }
    }
    r.check(
        "unique-case",
        unique_failures == 0,
        format!("{unique_cases} cases, {unique_failures} failures"),
    );

    let mut sweep = 0;
    let mut sweep_failures = 0;
    for i in ParabolicSubset::subsets(n) {
        for w in gr.elements() {
            sweep += 1;
            let right_ok = factorize(gr, i, w).is_ok_and(|f| {
                f.check(gr, i, w).is_ok() && all_factorizations(gr, i, w).contains(&f)
            });
            let left_ok = factorize_left(gr, i, w).is_ok_and(|f| f.check(gr, i, w).is_ok());
            if !(right_ok && left_ok) {
                sweep_failures += 1;
            }
        }
    }
    r.check(
        "existence-sweep",
        sweep_failures == 0,
        format!("{sweep} cases, {sweep_failures} failures"),
    );

    for c in audit::full_suite(gr, &g.presentation) {
        let detail = match &c.first_failure {
            None => format!("{} cases", c.checked),
            Some(f) => format!("{} cases, {} failures, first: {f}", c.checked, c.failures),
        };
        r.check(&c.name, c.holds(), detail);
    }
    finish(r)
}

fn finish(r: Recorder) -> Transcript {
    let first_failure = r.checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    Transcript {
        passed: first_failure.is_none(),
        first_failure,
        checks: r.checks,
    }
}
