//! Polynomial-time routes for local documents.
//!
//! * [`prob_ordered_local`]: exact probability of a world of an ordered
//!   `mux`/`ind`/`det` document, by a dynamic program over child spans.
//! * [`poss_unordered`]: possibility test for unordered `mux`/`ind` documents,
//!   reducing each regular node to a bipartite perfect matching question.

mod bipartite;
mod iso;
mod ordered;
mod unordered;

pub use bipartite::{BipartiteGraph, Matching};
pub use iso::{iso_classes, ClassId, IsoClasses};
pub use ordered::prob_ordered_local;
pub(crate) use ordered::ordered_dp;
pub use unordered::{poss_unordered, poss_unordered_single, ClassCheck};
