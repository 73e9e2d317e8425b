//! Cluster group presentations of small quivers, the `A₃` triangle fixture,
//! and its permutation model in the symmetric group on four points.
//!
//! Supported quivers are disjoint unions of isolated vertices, paths (any
//! orientation) and oriented 3-cycles. The rules are local:
//!
//! * each vertex `i`: `t_i² = e`;
//! * each arrow between `i` and `j`: `t_i t_j t_i = t_j t_i t_j`;
//! * each non-adjacent pair: `(t_i t_j)² = e`;
//! * each oriented cycle `i → j → k → i`:
//!   `t_i t_j t_k t_i = t_j t_k t_i t_j = t_k t_i t_j t_k`.

use serde::Serialize;
use thiserror::Error;

use crate::cayley::CayleyGraph;
use crate::perm::{Permutation, PermutationMap};
use crate::presentation::{Presentation, Word};

/// The `A₃` cluster group presentation in file form.
pub const A3_CLUSTER_TEXT: &str = include_str!("../fixtures/a3_cluster.pres");
/// `⟨i, j, k | i², j², k², ijk⟩`.
pub const KLEIN_TEXT: &str = include_str!("../fixtures/klein.pres");
/// `⟨x | x⟩`.
pub const TRIVIAL_TEXT: &str = include_str!("../fixtures/trivial.pres");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("more than one arrow between vertices {0} and {1}")]
    MultipleArrows(usize, usize),
    #[error("unsupported quiver component on vertices {vertices:?}: {reason}")]
    Unsupported {
        vertices: Vec<usize>,
        reason: String,
    },
}

/// A quiver on vertices `0..n` (printed 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Arrows are 0-based `(source, target)` pairs.
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        for (k, &(i, j)) in arrows.iter().enumerate() {
            if i >= vertices || j >= vertices {
                return Err(QuiverError::VertexOutOfRange(i.max(j) + 1));
            }
            if i == j {
                return Err(QuiverError::Loop(i + 1));
            }
            if arrows[..k]
                .iter()
                .any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
            {
                return Err(QuiverError::MultipleArrows(i.min(j) + 1, i.max(j) + 1));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Reads `vertices: n` followed by `arrow: i j` lines (1-based).
    pub fn parse(text: &str) -> Result<Self, QuiverError> {
        let mut vertices = None;
        let mut arrows = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let syntax = |message: &str| QuiverError::Syntax {
                line,
                message: message.to_owned(),
            };
            if let Some(rest) = body.strip_prefix("vertices:") {
                if vertices.is_some() {
                    return Err(syntax("duplicate `vertices:` line"));
                }
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| syntax("expected a vertex count"))?;
                vertices = Some(n);
            } else if let Some(rest) = body.strip_prefix("arrow:") {
                if vertices.is_none() {
                    return Err(syntax("`arrow:` before `vertices:`"));
                }
                let ends = rest
                    .split_whitespace()
                    .map(str::parse::<usize>)
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| syntax("expected two vertex numbers"))?;
                match ends[..] {
                    [i, j] if i >= 1 && j >= 1 => arrows.push((i - 1, j - 1)),
                    [_, _] => return Err(QuiverError::VertexOutOfRange(0)),
                    _ => return Err(syntax("expected two vertex numbers")),
                }
            } else {
                return Err(syntax("expected `vertices:` or `arrow:`"));
            }
        }
        let vertices = vertices.ok_or(QuiverError::Syntax {
            line: 1,
            message: "missing `vertices:` line".into(),
        })?;
        Quiver::new(vertices, arrows)
    }

    /// The oriented triangle `1 → 2 → 3 → 1`.
    pub fn a3_triangle() -> Self {
        Quiver::new(3, vec![(0, 1), (1, 2), (2, 0)]).expect("valid quiver")
    }

    /// The path `1 → 2 → ... → n`.
    pub fn linear(n: usize) -> Self {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("valid quiver")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.arrows
            .iter()
            .any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertices];
        let mut out = Vec::new();
        for start in 0..self.vertices {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                for (u, slot) in comp.iter_mut().enumerate() {
                    if *slot == usize::MAX && self.adjacent(u, v) {
                        *slot = id;
                        members.push(u);
                    }
                }
                k += 1;
            }
            members.sort();
            out.push(members);
        }
        out
    }
}

/// Oriented 3-cycles of a quiver, each rotated to start at its smallest vertex.
fn classify(q: &Quiver) -> Result<Vec<[usize; 3]>, QuiverError> {
    let mut cycles = Vec::new();
    for members in q.components() {
        let edges: Vec<(usize, usize)> = q
            .arrows
            .iter()
            .copied()
            .filter(|(a, _)| members.contains(a))
            .collect();
        let degree = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        let unsupported = |reason: &str| QuiverError::Unsupported {
            vertices: members.iter().map(|v| v + 1).collect(),
            reason: reason.to_owned(),
        };
        if edges.len() + 1 == members.len() {
            if members.iter().any(|&v| degree(v) > 2) {
                return Err(unsupported("branched tree"));
            }
            continue;
        }
        if members.len() == 3 && edges.len() == 3 {
            let a = members[0];
            let next = |v: usize| edges.iter().find(|&&(s, _)| s == v).map(|&(_, t)| t);
            let b = next(a).ok_or_else(|| unsupported("triangle is not oriented"))?;
            let c = next(b).ok_or_else(|| unsupported("triangle is not oriented"))?;
            if next(c) != Some(a) {
                return Err(unsupported("triangle is not oriented"));
            }
            cycles.push([a, b, c]);
            continue;
        }
        return Err(unsupported(
            "only paths and oriented 3-cycles are supported",
        ));
    }
    Ok(cycles)
}

/// Cluster group presentation of a supported quiver, generators `t1..tn`.
///
/// Relators are emitted as involutions, then braid and commutation relators
/// for pairs `i < j` in lexicographic order, then cycle relators.
pub fn quiver_to_presentation(q: &Quiver) -> Result<Presentation, QuiverError> {
    let cycles = classify(q)?;
    let n = q.vertices;
    let mut relators = Vec::new();
    for i in 0..n {
        relators.push(Word::from_gens(&[i, i]));
    }
    for i in 0..n {
        for j in i + 1..n {
            if q.adjacent(i, j) {
                relators.push(
                    Word::from_gens(&[i, j, i]).concat(&Word::from_gens(&[j, i, j]).inverse()),
                );
            } else {
                relators.push(Word::from_gens(&[i, j, i, j]));
            }
        }
    }
    for [a, b, c] in cycles {
        let sides = [
            Word::from_gens(&[a, b, c, a]),
            Word::from_gens(&[b, c, a, b]),
            Word::from_gens(&[c, a, b, c]),
        ];
        relators.extend(sides.windows(2).map(|s| s[0].concat(&s[1].inverse())));
    }
    let names = (1..=n).map(|i| format!("t{i}"));
    Ok(Presentation::new(names, relators).expect("generated presentation is well formed"))
}

/// The `A₃` cluster group presentation with relators exactly as listed:
/// involutions, three braid relations, and the chained cycle relation.
pub fn a3_cluster_presentation() -> Presentation {
    Presentation::parse(A3_CLUSTER_TEXT).expect("embedded fixture parses")
}

pub fn klein_presentation() -> Presentation {
    Presentation::parse(KLEIN_TEXT).expect("embedded fixture parses")
}

/// `t1 ↦ (1,2)`, `t2 ↦ (2,3)`, `t3 ↦ (2,4)` on four points.
pub fn pi_map() -> PermutationMap {
    let images = [[1, 2], [2, 3], [2, 4]]
        .iter()
        .map(|c| Permutation::from_cycles(4, &[c]).expect("valid transposition"))
        .collect();
    PermutationMap::new(images).expect("equal degrees")
}

/// Ordered triples `(i, j, k)` of pairwise distinct indices among the first three.
fn distinct_triples() -> impl Iterator<Item = [usize; 3]> {
    (0..3)
        .flat_map(|i| (0..3).flat_map(move |j| (0..3).map(move |k| [i, j, k])))
        .filter(|[i, j, k]| i != j && j != k && i != k)
}

fn derived_sides([i, j, k]: [usize; 3]) -> (Word, Word) {
    (
        Word::from_gens(&[i, j, i, k]),
        Word::from_gens(&[k, i, j, i]),
    )
}

/// Whether `t_i t_j t_i t_k = t_k t_i t_j t_i` for all six ordered triples of
/// distinct generators among the first three.
pub fn derived_relation_check(g: &CayleyGraph) -> bool {
    g.generator_count() >= 3
        && distinct_triples().all(|t| {
            let (u, v) = derived_sides(t);
            g.eval_word(&u).ok() == g.eval_word(&v).ok()
        })
}

/// The same check evaluated on permutation images.
pub fn derived_relation_holds_under(images: &PermutationMap) -> bool {
    images.images().len() >= 3
        && distinct_triples().all(|t| {
            let (u, v) = derived_sides(t);
            images.eval(&u) == images.eval(&v)
        })
}
