//! Group presentations `<X | R>`: generators, words over `X ∪ X⁻¹`, and relators.
//!
//! A relation `u = v` is stored as the freely reduced relator `u v⁻¹`. The two
//! structural conditions that the factorisation results depend on are tracked
//! as flags on the presentation:
//!
//! * involutions: every generator `x` has a relator that is exactly `x x`;
//! * even relations: every relator has even length.

use std::fmt;

use serde::Serialize;

use crate::parse::{self, ParseError};

/// A named generator together with its position in the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub index: usize,
}

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub const fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    /// `+1` for a generator, `-1` for an inverse letter.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A finite sequence of letters. The empty word represents the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Word made of positive letters with the given generator indices.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().copied().map(Letter::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Formal inverse: letters reversed and each inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// The unique freely reduced form of `w`, computed with a stack.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// Length of the relation `u = v`, i.e. the free length of `u v⁻¹`.
pub fn relation_length(u: &Word, v: &Word) -> usize {
    free_reduce(&u.concat(&v.inverse())).len()
}

/// The two structural conditions on a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub involutions: bool,
    pub even: bool,
}

impl Conditions {
    pub fn both(self) -> bool {
        self.involutions && self.even
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
    conditions: Conditions,
}

impl Presentation {
    /// Builds a presentation from generator names and relators.
    ///
    /// Relators are freely reduced on the way in and the condition flags are
    /// computed. Letters must refer to valid generator indices.
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, ParseError> {
        let generators: Vec<Generator> = names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Generator {
                name: name.into(),
                index,
            })
            .collect();
        if generators.is_empty() {
            return Err(ParseError::EmptyGenerators { line: 1 });
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(ParseError::DuplicateGenerator {
                    line: 1,
                    column: 1,
                    name: g.name.clone(),
                });
            }
        }
        let relators: Vec<Word> = relators.into_iter().map(|r| free_reduce(&r)).collect();
        for r in &relators {
            if let Some(l) = r.0.iter().find(|l| l.gen >= generators.len()) {
                return Err(ParseError::UnknownGenerator {
                    line: 0,
                    column: 0,
                    name: format!("#{}", l.gen),
                });
            }
        }
        let mut p = Presentation {
            generators,
            relators,
            conditions: Conditions {
                involutions: false,
                even: false,
            },
        };
        p.conditions = check_conditions(&p);
        Ok(p)
    }

    /// Parses the line-oriented presentation format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_presentation(text)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn conditions(&self) -> Conditions {
        self.conditions
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.generators[gen].name
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Parses a whitespace-separated word such as `t1 t2^-1 t3` (or `e`).
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        parse::parse_word(self, text)
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if l.inverse {
            format!("{}^-1", self.name(l.gen))
        } else {
            self.name(l.gen).to_owned()
        }
    }

    /// Space-separated rendering; the empty word is `e`.
    pub fn format_word(&self, w: &Word) -> String {
        self.format_word_with(w, " ")
    }

    pub fn format_word_with(&self, w: &Word, sep: &str) -> String {
        if w.is_empty() {
            return "e".to_owned();
        }
        w.0.iter()
            .map(|&l| self.format_letter(l))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {}", g.name)?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.format_word(r))?;
        }
        Ok(())
    }
}

/// Computes the involution and even-length flags.
///
/// The involution check is syntactic: each generator needs a relator whose
/// reduced form is literally `x x`.
pub fn check_conditions(p: &Presentation) -> Conditions {
    let involutions = (0..p.generator_count()).all(|g| {
        p.relators
            .iter()
            .any(|r| r.0 == [Letter::new(g), Letter::new(g)])
    });
    let even = p.relators.iter().all(|r| r.len() % 2 == 0);
    Conditions { involutions, even }
}
