//! One line per acceptance criterion, all run against the A3 cluster fixture
//! (plus the Klein four-group and the A2 path where a criterion asks for them).
//!
//! Run with `cargo test -p parafact --test acceptance -- --nocapture`.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{fixture, word, Oracle, Perm};
use parafact::audit;
use parafact::cayley::{export_dot, parity_check};
use parafact::parabolic::{
    all_factorizations, coset, exists_factorization, factorize, subgroup_elements, upper_set,
};
use parafact::perm::{group_order_via_closure, verify_images, DEFAULT_CLOSURE_BOUND};
use parafact::quiver::{pi_map, quiver_to_presentation, Quiver};
use parafact::{
    todd_coxeter, ElementId, EnumerationLimits, Group, ParabolicSubset, Presentation, Side,
};

fn a3() -> Group {
    let p = Presentation::parse(&fixture("a3_cluster.pres")).unwrap();
    Group::new(p, EnumerationLimits::default()).unwrap()
}

fn klein() -> Group {
    let p = Presentation::parse(&fixture("klein.pres")).unwrap();
    Group::new(p, EnumerationLimits::default()).unwrap()
}

fn i12() -> ParabolicSubset {
    ParabolicSubset::from_indices([0, 1]).unwrap()
}

/// The oracle permutation of an engine element, via its canonical word.
fn to_perm(o: &Oracle, g: &Group, e: ElementId) -> Perm {
    let letters: Vec<usize> = g.graph.word(e).letters().iter().map(|l| l.gen).collect();
    o.perm(&letters)
}

fn set(g: &Group, words: &[&str]) -> BTreeSet<ElementId> {
    words.iter().map(|w| g.element(w)).collect()
}

fn order(g: &Group, o: &Oracle) -> Result<(), String> {
    let table = todd_coxeter(&g.presentation, &[], EnumerationLimits::default())
        .map_err(|e| e.to_string())?;
    let closure =
        group_order_via_closure(&pi_map(), DEFAULT_CLOSURE_BOUND).map_err(|e| e.to_string())?;
    let oracle = o.length.len();
    if table.rows() == 24 && closure == 24 && oracle == 24 {
        Ok(())
    } else {
        Err(format!(
            "cosets {} closure {closure} oracle {oracle}",
            table.rows()
        ))
    }
}

fn isomorphism(g: &Group, o: &Oracle) -> Result<(), String> {
    let p = &g.presentation;
    if p.relators().len() != 8 {
        return Err(format!("{} relators", p.relators().len()));
    }
    if !verify_images(p, &pi_map()).map_err(|e| e.to_string())? {
        return Err("some relator is not the identity under pi".into());
    }
    // The element-to-permutation map must be a bijection compatible with
    // right multiplication by each generator.
    let images: BTreeSet<Perm> = g.graph.elements().map(|e| to_perm(o, g, e)).collect();
    if images.len() != 24 {
        return Err(format!("{} distinct images", images.len()));
    }
    for e in g.graph.elements() {
        for x in 0..3 {
            let ex = g.graph.mul(e, g.graph.generator(x));
            if to_perm(o, g, ex) != common::then(to_perm(o, g, e), o.gens[x]) {
                return Err(format!("not compatible at {} * t{}", g.format(e), x + 1));
            }
        }
    }
    Ok(())
}

fn set_listings(g: &Group) -> Result<(), String> {
    let gr = &g.graph;
    let sub: BTreeSet<_> = subgroup_elements(gr, i12()).into_iter().collect();
    let upper: BTreeSet<_> = upper_set(gr, i12(), Side::Right).into_iter().collect();
    let cos: BTreeSet<_> = coset(gr, i12(), g.element("t1 t2 t3"))
        .into_iter()
        .collect();
    let want_sub = set(g, &["e", "t1", "t2", "t1 t2", "t2 t1", "t1 t2 t1"]);
    let want_upper = set(g, &["e", "t3", "t1 t3", "t2 t3", "t1 t2 t3", "t2 t1 t3"]);
    let want_coset = set(
        g,
        &[
            "t1 t2 t3",
            "t1 t2 t3 t1",
            "t1 t2 t3 t2",
            "t2 t3 t1",
            "t2 t3 t2",
            "t2 t3",
        ],
    );
    match (sub == want_sub, upper == want_upper, cos == want_coset) {
        (true, true, true) => Ok(()),
        bad => Err(format!("G_I, G^I, wG_I match: {bad:?}")),
    }
}

fn counterexample(g: &Group, o: &Oracle) -> Result<(), String> {
    let gr = &g.graph;
    let w = g.element("t2 t3 t1 t2");
    let brute = o.factorizations(&[0, 1], o.perm(&word("t2 t3 t1 t2")));
    let facts = all_factorizations(gr, i12(), w);
    let found: BTreeSet<(Perm, Perm)> = facts
        .iter()
        .map(|f| (to_perm(o, g, f.a), to_perm(o, g, f.b)))
        .collect();
    let brute: BTreeSet<_> = brute.into_iter().collect();
    if found != brute {
        return Err(format!(
            "engine {} factorisations, brute force {}",
            found.len(),
            brute.len()
        ));
    }
    let wanted = [("t2 t3", "t1 t2", 2, 2), ("t1 t2 t3", "t1", 3, 1)];
    for (a, b, la, lb) in wanted {
        let (a, b) = (g.element(a), g.element(b));
        let hit = facts
            .iter()
            .any(|f| f.a == a && f.b == b && gr.length(a) == la && gr.length(b) == lb);
        if !hit {
            return Err(format!("missing ({} | {})", g.format(a), g.format(b)));
        }
    }
    if facts.len() != 2 || gr.length(w) != 4 {
        return Err(format!("{} factorisations", facts.len()));
    }
    Ok(())
}

fn minimal_coset(g: &Group) -> Result<(), String> {
    let gr = &g.graph;
    let w = g.element("t1 t2 t3");
    let facts = all_factorizations(gr, i12(), w);
    let pairs: Vec<_> = facts.iter().map(|f| (f.a, f.b)).collect();
    if pairs != vec![(w, ElementId::IDENTITY)] {
        return Err(format!("{} factorisations", pairs.len()));
    }
    let members = coset(gr, i12(), w);
    let min = members.iter().map(|&e| gr.length(e)).min().unwrap();
    let minimal: Vec<_> = members
        .iter()
        .filter(|&&e| gr.length(e) == min)
        .copied()
        .collect();
    let t2t3 = g.element("t2 t3");
    if minimal != vec![t2t3] {
        return Err("t2 t3 is not the unique minimal coset element".into());
    }
    if facts.iter().any(|f| f.a == t2t3) {
        return Err("t2 t3 appears as an a-part".into());
    }
    Ok(())
}

fn klein_negative() -> Result<(), String> {
    let k = klein();
    let i = ParabolicSubset::parse(&k.presentation, "i").unwrap();
    let j = k.element("j");
    // Independent check: the only candidates a ∈ {e, j} ∩ G^I and b ∈ {e, i}.
    let mut additive = 0;
    for a in k.graph.elements() {
        for b in [ElementId::IDENTITY, k.element("i")] {
            if k.graph.mul(a, b) == j
                && k.graph.length(a) + k.graph.length(b) == k.graph.length(j)
                && !k.graph.is_descent(a, 0, Side::Right)
                && k.graph.length(k.graph.mul(a, k.element("i"))) > k.graph.length(a)
            {
                additive += 1;
            }
        }
    }
    let even = k.presentation.conditions().even;
    if k.order() == 4 && !exists_factorization(&k.graph, i, j) && additive == 0 && !even {
        Ok(())
    } else {
        Err(format!(
            "order {} even {even} additive {additive}",
            k.order()
        ))
    }
}

fn sweep(g: &Group) -> Result<(), String> {
    let gr = &g.graph;
    let mut cases = 0;
    let mut failures = Vec::new();
    for i in ParabolicSubset::subsets(3) {
        for w in gr.elements() {
            cases += 1;
            match factorize(gr, i, w) {
                Ok(f) => {
                    if let Err(e) = f.check(gr, i, w) {
                        failures.push(e);
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    if cases == 192 && failures.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "{cases} cases, {} failures: {:?}",
            failures.len(),
            failures.first()
        ))
    }
}

fn uniqueness(g: &Group, o: &Oracle) -> Result<(), String> {
    let gr = &g.graph;
    let mut cases = 0;
    let mut bad = 0;
    let subsets: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1, 2]];
    for s in &subsets {
        let i = ParabolicSubset::from_indices(s.iter().copied()).unwrap();
        for w in gr.elements() {
            cases += 1;
            let engine = all_factorizations(gr, i, w).len();
            let brute = o.factorizations(s, to_perm(o, g, w)).len();
            if engine != 1 || brute != 1 {
                bad += 1;
            }
        }
    }
    if cases == 96 && bad == 0 {
        Ok(())
    } else {
        Err(format!("{cases} cases, {bad} failures"))
    }
}

fn length_suite(g: &Group) -> Result<(), String> {
    let a2 = quiver_to_presentation(&Quiver::parse(&fixture("a2_path.quiver")).unwrap()).unwrap();
    let a2 = Group::new(a2, EnumerationLimits::default()).unwrap();
    let mut failing = Vec::new();
    for (label, grp) in [("A3", g), ("A2", &a2)] {
        let checks = audit::full_suite(&grp.graph, &grp.presentation);
        // Length lemma (1)-(6) plus (2*), exchange, IG both sides, sign.
        if checks.len() != 11 {
            failing.push(format!("{label}: only {} checks ran", checks.len()));
        }
        for c in checks.iter().filter(|c| !c.holds() || c.checked == 0) {
            failing.push(format!("{label} {}: {:?}", c.name, c.first_failure));
        }
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(failing.join("; "))
    }
}

fn parity(g: &Group) -> Result<(), String> {
    let report = parity_check(&g.graph, &g.presentation).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for a in g.graph.elements() {
        for b in g.graph.elements() {
            pairs += 1;
            let ab = g.graph.length(g.graph.mul(a, b)) % 2;
            if ab != (g.graph.length(a) + g.graph.length(b)) % 2 {
                return Err(format!(
                    "not multiplicative at {}, {}",
                    g.format(a),
                    g.format(b)
                ));
            }
        }
    }
    let orders_two = (0..3).all(|x| g.graph.element_order(g.graph.generator(x)) == 2);
    if report.pass() && report.multiplicative && report.surjective && orders_two && pairs == 576 {
        Ok(())
    } else {
        Err(format!("{report:?}"))
    }
}

fn oracle_equivalence(g: &Group, o: &Oracle) -> Result<(), String> {
    let mut seen = BTreeMap::new();
    for e in g.graph.elements() {
        let p = to_perm(o, g, e);
        if g.graph.length(e) != o.len(p) {
            return Err(format!(
                "{}: BFS {} oracle {}",
                g.format(e),
                g.graph.length(e),
                o.len(p)
            ));
        }
        seen.insert(p, e);
    }
    if seen.len() == 24 {
        Ok(())
    } else {
        Err(format!("{} elements matched", seen.len()))
    }
}

fn dot(g: &Group) -> Result<(), String> {
    let first = export_dot(&g.graph, &g.presentation, Some(&pi_map()));
    let again = a3();
    let second = export_dot(&again.graph, &again.presentation, Some(&pi_map()));
    let nodes = first
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains(" -- "))
        .count();
    let edges = first.lines().filter(|l| l.contains(" -- ")).count();
    if nodes == 24 && edges == 36 && first == second {
        Ok(())
    } else {
        Err(format!(
            "{nodes} nodes, {edges} edges, identical {}",
            first == second
        ))
    }
}

#[test]
fn acceptance() {
    let oracle = Oracle::new();
    let g = a3();
    let results: Vec<(&str, Result<(), String>)> = vec![
        ("Order", order(&g, &oracle)),
        ("Isomorphism", isomorphism(&g, &oracle)),
        ("Set listings", set_listings(&g)),
        ("Counterexample", counterexample(&g, &oracle)),
        ("Minimal-coset failure", minimal_coset(&g)),
        ("Klein negative", klein_negative()),
        ("Proposition sweep", sweep(&g)),
        ("Uniqueness lemma", uniqueness(&g, &oracle)),
        ("Length-lemma suite", length_suite(&g)),
        ("Parity", parity(&g)),
        ("Oracle equivalence", oracle_equivalence(&g, &oracle)),
        ("DOT export", dot(&g)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
