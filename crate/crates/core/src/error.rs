//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when building or combining finite
/// coalgebraic graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two maps were expected to share a domain.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    /// Two maps were expected to share a codomain.
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    /// An enumeration would exceed the configured element budget.
    #[error("size guard exceeded: {0}")]
    SizeGuardExceeded(String),
    /// A structure element does not fit the functor expression it was
    /// used with.
    #[error("ill-typed element: {0}")]
    IllTypedElement(String),
    /// Two graphs live in different categories (different functor
    /// expressions).
    #[error("functor mismatch: {0}")]
    FunctorMismatch(String),
    /// Two homomorphisms were expected to be parallel (same source and
    /// target).
    #[error("not parallel: {0}")]
    NotParallel(String),
    /// A coloring or lift refers to a different color set than the
    /// cofree graph it targets.
    #[error("color set mismatch: {0}")]
    ColorSetMismatch(String),
    /// A subgraph spec mentions atoms outside the ambient graph.
    #[error("subgraph spec out of range: {0}")]
    SpecOutOfRange(String),
    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A graph or homomorphism violates its invariants; the message
    /// lists the individual violations.
    #[error("validation failed: {0}")]
    Validation(String),
    /// DOT export only understands edge functors with a drawable shape.
    #[error("unsupported functor for DOT export: {0}")]
    UnsupportedFunctorForDot(String),
}

pub type Result<T> = std::result::Result<T, Error>;
