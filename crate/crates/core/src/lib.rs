//! Finite graphs as coalgebras for set functors.
//!
//! A type functor `F` on finite sets fixes an edge discipline: the
//! identity gives multisets, the singleton-or-pair functor gives
//! undirected graphs, `V x V` directed graphs, the powerset
//! hypergraphs, sums hybrid graphs, and constant/composition wrappers
//! colored graphs. A graph is then a triple `(V, E, g)` with
//! `g : E -> F(V)`, and a homomorphism is a pair of maps commuting
//! with the structure.
//!
//! On top of that single definition this crate makes the categorical
//! toolbox executable on finite instances: coproducts and products
//! (the latter via a pullback of structure elements), equalizers by
//! cogeneration, cofree graphs over color pairs and the
//! coloring/homomorphism adjunction, and coequations (patterns) with
//! their covariety closures, including a bounded check of the
//! closure-versus-pattern equivalence.
//!
//! All values are immutable and all operations are pure functions;
//! enumerations have explicit element budgets and deterministic,
//! canonical output orders.
//!
//! ```
//! use coalgraph_core::{FElem, FGraph, FinSet, FunctorExpr};
//! use coalgraph_core::graph::enumerate_homs;
//!
//! // One undirected edge between v and w.
//! let k2 = FGraph::new(
//!     FunctorExpr::P12,
//!     FinSet::new(["v", "w"]),
//!     FinSet::new(["e"]),
//!     [("e".into(), FElem::set_of([FElem::atom("v"), FElem::atom("w")]))].into(),
//! )?;
//! // Its only symmetries: the identity and the endpoint swap.
//! assert_eq!(enumerate_homs(&k2, &k2, 4096)?.len(), 2);
//! # Ok::<(), coalgraph_core::Error>(())
//! ```

pub mod constructions;
pub mod covariety;
pub mod dot;
pub mod error;
pub mod finset;
pub mod format;
pub mod functor;
pub mod graph;
pub mod samples;

pub use constructions::{ColorSet, Coloring};
pub use covariety::{GraphClass, Pattern};
pub use error::{Error, Result};
pub use finset::{FinFunction, FinSet, SetPair};
pub use functor::{FElem, FunctorExpr, DEFAULT_MAX_ENUM};
pub use graph::{FGraph, GraphHom, SubgraphSpec};
