//! Possible-world membership and probability for probabilistic XML (PrXML).
//!
//! A probabilistic document ([`PDocument`]) describes a distribution over
//! deterministic trees ([`XDocument`]). This crate answers whether a given tree
//! is a possible world of a document and, where tractable, computes its exact
//! probability:
//!
//! * [`oracle`] enumerates every joint outcome and is the ground truth for all
//!   other routes. It is exponential and refuses to run past a configurable cap.
//! * [`algorithms`] holds the polynomial routes for local documents: an ordered
//!   counting dynamic program over `mux`/`ind`/`det`, and an unordered decision
//!   procedure for `ind`/`mux` built on bipartite perfect matching.
//! * [`matches`] computes probabilities when the candidate matches of the world
//!   are known, for local documents and for documents with `mie` nodes.
//! * [`rewrite`] converts between classes without changing the distribution.
//! * [`gen`] builds hard instances from SAT, exact cover and bipartite graphs.
//! * [`format`] reads and writes the s-expression file formats.
//!
//! All probabilities are exact rationals.

pub mod algorithms;
pub mod cli;
mod error;
pub mod fixtures;
pub mod format;
pub mod gen;
pub mod matches;
pub mod model;
pub mod oracle;
pub mod random;
pub mod rewrite;
pub mod selftest;

pub use error::{Error, Result};
pub use model::{
    Annotation, ClassProfile, Event, EventId, EventTable, Formula, Label, Literal, NodeId,
    NodeKind, OutcomeValue, PDocument, PEdge, PNode, ProbKind, Rational, Violation, XDocument,
    XNode,
};
