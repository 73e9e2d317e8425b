//! Todd–Coxeter coset enumeration (HLT strategy).
//!
//! Relators are traced from every live coset in order, undefined entries are
//! filled by new definitions, and coincidences are processed immediately with
//! a union-find structure and a queue of dead cosets. The finished table is
//! compacted and renumbered in breadth-first order from the subgroup coset,
//! scanning columns in generator order, so equal inputs give equal tables.
//!
//! With the trivial subgroup the table is the regular representation.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{Letter, Presentation, Word};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationLimits {
    pub max_cosets: usize,
    pub max_steps: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 100_000,
            max_steps: 10_000_000,
        }
    }
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize, max_steps: u64) -> Result<Self, EnumerationError> {
        if max_cosets == 0 || max_steps == 0 {
            return Err(EnumerationError::InvalidLimits);
        }
        Ok(EnumerationLimits {
            max_cosets,
            max_steps,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Limit {
    Cosets,
    Steps,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(
        "enumeration aborted: {limit:?} limit reached ({cosets_allocated} cosets allocated, \
         {live} live, {steps} steps); the group may be infinite or the limits too small"
    )]
    LimitExceeded {
        limit: Limit,
        cosets_allocated: usize,
        live: usize,
        steps: u64,
    },
    #[error("enumeration limits must be positive")]
    InvalidLimits,
    #[error("subgroup word refers to generator #{0}, which does not exist")]
    InvalidSubgroupWord(usize),
}

/// A complete coset table.
///
/// Each column is a total map on rows. When the presentation has involution
/// generators there is one column per generator; otherwise generator `g` has
/// column `2g` and its inverse column `2g + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    generators: usize,
    involutive: bool,
    rows: usize,
    action: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Whether inverse letters share the generator's column.
    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    pub fn column_count(&self) -> usize {
        self.action.len()
    }

    pub fn column_of(&self, l: Letter) -> usize {
        column_of(self.involutive, l)
    }

    /// The letter belonging to a column.
    pub fn letter_of_column(&self, col: usize) -> Letter {
        if self.involutive {
            Letter::new(col)
        } else {
            Letter {
                gen: col / 2,
                inverse: col % 2 == 1,
            }
        }
    }

    /// Right action of generator `gen`.
    pub fn column(&self, gen: usize) -> &[usize] {
        &self.action[self.column_of(Letter::new(gen))]
    }

    pub fn act(&self, row: usize, l: Letter) -> usize {
        self.action[self.column_of(l)][row]
    }

    pub fn trace(&self, row: usize, w: &Word) -> usize {
        w.letters().iter().fold(row, |r, &l| self.act(r, l))
    }

    /// Plain-text dump: one line per coset, entries in column order, 0-based.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let cells: Vec<String> = self.action.iter().map(|c| c[r].to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    /// Checks the table invariants: bijective columns, inverse columns,
    /// relators closing at every row, subgroup words fixing row 0, and
    /// transitivity from row 0.
    pub fn validate(&self, p: &Presentation, subgroup: &[Word]) -> Result<(), String> {
        for (c, col) in self.action.iter().enumerate() {
            let mut seen = vec![false; self.rows];
            for &r in col {
                if r >= self.rows || std::mem::replace(&mut seen[r], true) {
                    return Err(format!("column {c} is not a bijection"));
                }
            }
            let inv = &self.action[inverse_column(self.involutive, c)];
            if (0..self.rows).any(|r| inv[col[r]] != r) {
                return Err(format!("column {c} disagrees with its inverse column"));
            }
        }
        for (i, rel) in p.relators().iter().enumerate() {
            if let Some(r) = (0..self.rows).find(|&r| self.trace(r, rel) != r) {
                return Err(format!("relator {i} does not close at row {r}"));
            }
        }
        for (i, h) in subgroup.iter().enumerate() {
            if self.trace(0, h) != 0 {
                return Err(format!("subgroup word {i} does not fix row 0"));
            }
        }
        let mut seen = vec![false; self.rows];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(r) = queue.pop_front() {
            for col in &self.action {
                if !std::mem::replace(&mut seen[col[r]], true) {
                    queue.push_back(col[r]);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("action is not transitive".into());
        }
        Ok(())
    }
}

fn column_of(involutive: bool, l: Letter) -> usize {
    if involutive {
        l.gen
    } else {
        2 * l.gen + l.inverse as usize
    }
}

fn inverse_column(involutive: bool, col: usize) -> usize {
    if involutive {
        col
    } else {
        col ^ 1
    }
}

struct Enumerator {
    cols: usize,
    involutive: bool,
    table: Vec<usize>,
    parent: Vec<usize>,
    dead: VecDeque<usize>,
    live: usize,
    steps: u64,
    limits: EnumerationLimits,
    /// Bumped on every definition or coincidence; used to detect a stable pass.
    events: u64,
}

impl Enumerator {
    fn new(cols: usize, involutive: bool, limits: EnumerationLimits) -> Self {
        Enumerator {
            cols,
            involutive,
            table: vec![NONE; cols],
            parent: vec![0],
            dead: VecDeque::new(),
            live: 1,
            steps: 0,
            limits,
            events: 0,
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn abort(&self, limit: Limit) -> EnumerationError {
        EnumerationError::LimitExceeded {
            limit,
            cosets_allocated: self.allocated(),
            live: self.live,
            steps: self.steps,
        }
    }

    fn step(&mut self) -> Result<(), EnumerationError> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(self.abort(Limit::Steps));
        }
        Ok(())
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.cols + x] = d;
    }

    fn inv(&self, x: usize) -> usize {
        inverse_column(self.involutive, x)
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), EnumerationError> {
        if self.allocated() >= self.limits.max_cosets {
            return Err(self.abort(Limit::Cosets));
        }
        self.step()?;
        let d = self.allocated();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.events += 1;
        self.set(c, x, d);
        let xi = self.inv(x);
        self.set(d, xi, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.parent[kill] = keep;
            self.live -= 1;
            self.events += 1;
            self.dead.push_back(kill);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) -> Result<(), EnumerationError> {
        self.merge(a, b);
        while let Some(g) = self.dead.pop_front() {
            for x in 0..self.cols {
                self.step()?;
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let xi = self.inv(x);
                self.set(d, xi, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, xi);
                    if nu_xi != NONE {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                    }
                }
            }
        }
        Ok(())
    }

    /// Traces `word` (as columns) from `a`, defining cosets as needed, and
    /// records the resulting deduction or coincidence.
    fn scan_and_fill(&mut self, a: usize, word: &[usize]) -> Result<(), EnumerationError> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0, word.len());
        loop {
            while i < j {
                let next = self.get(f, word[i]);
                if next == NONE {
                    break;
                }
                self.step()?;
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b)?;
                }
                return Ok(());
            }
            while j > i {
                let prev = self.get(b, self.inv(word[j - 1]));
                if prev == NONE {
                    break;
                }
                self.step()?;
                b = prev;
                j -= 1;
            }
            if j == i {
                return self.coincidence(f, b);
            }
            if j == i + 1 {
                let x = word[i];
                self.set(f, x, b);
                let xi = self.inv(x);
                self.set(b, xi, f);
                self.events += 1;
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    /// One HLT sweep over all cosets, starting from coset 0.
    fn sweep(&mut self, relators: &[Vec<usize>]) -> Result<(), EnumerationError> {
        let mut c = 0;
        while c < self.allocated() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.is_live(c) {
                for x in 0..self.cols {
                    if self.get(c, x) == NONE {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn finish(mut self, generators: usize) -> CosetTable {
        // Breadth-first renumbering of live cosets from coset 0.
        let mut number = vec![NONE; self.allocated()];
        let mut order = vec![0];
        number[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for x in 0..self.cols {
                let d = self.get(c, x);
                let d = self.rep(d);
                if number[d] == NONE {
                    number[d] = order.len();
                    order.push(d);
                }
            }
            k += 1;
        }
        let mut action = vec![vec![0; order.len()]; self.cols];
        for (new, &c) in order.iter().enumerate() {
            for (x, col) in action.iter_mut().enumerate() {
                let d = self.get(c, x);
                col[new] = number[self.rep(d)];
            }
        }
        CosetTable {
            generators,
            involutive: self.involutive,
            rows: order.len(),
            action,
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`.
pub fn todd_coxeter(
    p: &Presentation,
    subgroup: &[Word],
    limits: EnumerationLimits,
) -> Result<CosetTable, EnumerationError> {
    if limits.max_cosets == 0 || limits.max_steps == 0 {
        return Err(EnumerationError::InvalidLimits);
    }
    let n = p.generator_count();
    if let Some(l) = subgroup
        .iter()
        .flat_map(|w| w.letters())
        .find(|l| l.gen >= n)
    {
        return Err(EnumerationError::InvalidSubgroupWord(l.gen));
    }
    let involutive = p.conditions().involutions;
    let cols = if involutive { n } else { 2 * n };
    let as_columns = |w: &Word| -> Vec<usize> {
        w.letters()
            .iter()
            .map(|&l| column_of(involutive, l))
            .collect()
    };
    let relators: Vec<Vec<usize>> = p.relators().iter().map(as_columns).collect();

    let mut e = Enumerator::new(cols, involutive, limits);
    for h in subgroup {
        e.scan_and_fill(0, &as_columns(h))?;
    }
    // Repeat sweeps until one changes nothing; the first sweep normally
    // completes the table and the second only confirms it.
    loop {
        let before = e.events;
        e.sweep(&relators)?;
        if e.events == before {
            break;
        }
    }
    Ok(e.finish(n))
}
