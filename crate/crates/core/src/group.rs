use crate::cayley::{CayleyGraph, ElementId};
use crate::presentation::Presentation;
use crate::todd_coxeter::{todd_coxeter, CosetTable, EnumerationError, EnumerationLimits};

/// A presentation together with its regular representation and Cayley graph.
#[derive(Debug, Clone)]
pub struct Group {
    pub presentation: Presentation,
    pub table: CosetTable,
    pub graph: CayleyGraph,
}

impl Group {
    pub fn new(
        presentation: Presentation,
        limits: EnumerationLimits,
    ) -> Result<Self, EnumerationError> {
        let table = todd_coxeter(&presentation, &[], limits)?;
        let graph = CayleyGraph::build(&table);
        Ok(Group {
            presentation,
            table,
            graph,
        })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Evaluates a word given as text, e.g. `"t2 t3 t1 t2"`.
    ///
    /// # Panics
    /// If the text does not parse; meant for fixtures and tests.
    pub fn element(&self, text: &str) -> ElementId {
        let w = self
            .presentation
            .parse_word(text)
            .unwrap_or_else(|e| panic!("bad word {text:?}: {e}"));
        self.graph.eval_word(&w).expect("parsed words are valid")
    }

    pub fn try_element(&self, text: &str) -> Result<ElementId, crate::Error> {
        let w = self.presentation.parse_word(text)?;
        Ok(self.graph.eval_word(&w)?)
    }

    pub fn format(&self, g: ElementId) -> String {
        self.presentation.format_word(self.graph.word(g))
    }
}
