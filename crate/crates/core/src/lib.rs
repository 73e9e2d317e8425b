//! Finitely presented groups generated by involutions, their length function,
//! and factorisations with respect to parabolic subgroups.
//!
//! The pipeline is: parse a [`Presentation`], enumerate its regular
//! representation with [`todd_coxeter`], build the [`CayleyGraph`], then query
//! lengths, descents and parabolic factorisations. [`quiver`] builds cluster
//! group presentations from small quivers and carries the `A₃` fixture.

pub mod audit;
pub mod cayley;
pub mod cli;
pub mod group;
pub mod parabolic;
pub mod parse;
pub mod perm;
pub mod presentation;
pub mod quiver;
pub mod reproduce;
pub mod todd_coxeter;

pub use cayley::{CayleyGraph, ElementId, Side};
pub use group::Group;
pub use parabolic::{Factorization, ParabolicSubset};
pub use perm::{Permutation, PermutationMap};
pub use presentation::{Letter, Presentation, Word};
pub use todd_coxeter::{todd_coxeter, CosetTable, EnumerationLimits};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] parse::ParseError),
    #[error(transparent)]
    Enumeration(#[from] todd_coxeter::EnumerationError),
    #[error(transparent)]
    Cayley(#[from] cayley::CayleyError),
    #[error(transparent)]
    Perm(#[from] perm::PermError),
    #[error(transparent)]
    Subset(#[from] parabolic::SubsetError),
    #[error(transparent)]
    Quiver(#[from] quiver::QuiverError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}
