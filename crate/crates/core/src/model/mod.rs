//! Deterministic trees, probabilistic trees and their event tables.
//!
//! Both tree types are plain owned recursive structures. Nodes are identified
//! by their preorder position (root = 0); [`DocIndex`] and [`XIndex`] give
//! id-based access when an algorithm needs it.

pub mod events;
mod index;
mod validate;

use std::fmt;

use num_bigint::BigInt;

pub use events::{Event, EventId, EventTable, Formula, Literal, OutcomeValue};
pub use index::{DocIndex, XIndex};
pub use validate::{
    classify, strip_probabilistic_leaves, validate, ClassProfile, ProbKind, Rule, Violation,
};

/// Exact probability. Always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Preorder position of a node inside its document.
pub type NodeId = usize;

/// `n/d` as a [`Rational`].
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Node label. Labels beginning with `#` are reserved for synthetic relabelings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Self {
        Label(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_synthetic(&self) -> bool {
        self.0.starts_with('#')
    }

    pub(crate) fn synthetic(n: usize) -> Self {
        Label(format!("#{n}"))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

/// A node of a deterministic document.
///
/// The derived ordering compares the label first and then the children
/// lexicographically; sorting children recursively under it gives the
/// canonical form of an unordered tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XNode {
    pub label: Label,
    pub children: Vec<XNode>,
}

impl XNode {
    pub fn new(label: impl Into<Label>, children: Vec<XNode>) -> Self {
        XNode { label: label.into(), children }
    }

    pub fn leaf(label: impl Into<Label>) -> Self {
        Self::new(label, Vec::new())
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(XNode::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(XNode::height).max().unwrap_or(0)
    }

    /// Canonical representative of the unordered tree: children sorted recursively.
    pub fn canonical(&self) -> XNode {
        let mut children: Vec<XNode> = self.children.iter().map(XNode::canonical).collect();
        children.sort();
        XNode { label: self.label.clone(), children }
    }
}

/// A deterministic document: the candidate possible world.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XDocument {
    pub root: XNode,
    pub ordered: bool,
}

impl XDocument {
    pub fn new(root: XNode, ordered: bool) -> Self {
        XDocument { root, ordered }
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn index(&self) -> XIndex<'_> {
        XIndex::new(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Regular(Label),
    Det,
    Ind,
    Mux,
    Cie,
    Fie,
    Mie,
}

impl NodeKind {
    pub fn is_regular(&self) -> bool {
        matches!(self, NodeKind::Regular(_))
    }

    pub fn label(&self) -> Option<&Label> {
        match self {
            NodeKind::Regular(l) => Some(l),
            _ => None,
        }
    }

    pub fn prob_kind(&self) -> Option<ProbKind> {
        Some(match self {
            NodeKind::Regular(_) => return None,
            NodeKind::Det => ProbKind::Det,
            NodeKind::Ind => ProbKind::Ind,
            NodeKind::Mux => ProbKind::Mux,
            NodeKind::Cie => ProbKind::Cie,
            NodeKind::Fie => ProbKind::Fie,
            NodeKind::Mie => ProbKind::Mie,
        })
    }
}

/// Annotation carried by the edge from a node to one of its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    /// Edges out of regular and `det` nodes.
    None,
    /// `ind` and `mux` edges, strictly between 0 and 1.
    Prob(Rational),
    /// `cie` edges.
    Conj(Vec<Literal>),
    /// `fie` edges.
    Formula(Formula),
    /// `mie` edges: kept iff the event takes this value.
    Atom { event: EventId, value: OutcomeValue },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PEdge {
    pub annotation: Annotation,
    pub child: PNode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNode {
    pub kind: NodeKind,
    pub children: Vec<PEdge>,
}

impl PNode {
    pub fn regular(label: impl Into<Label>, children: Vec<PNode>) -> Self {
        PNode { kind: NodeKind::Regular(label.into()), children: plain(children) }
    }

    pub fn leaf(label: impl Into<Label>) -> Self {
        Self::regular(label, Vec::new())
    }

    pub fn det(children: Vec<PNode>) -> Self {
        PNode { kind: NodeKind::Det, children: plain(children) }
    }

    pub fn ind(children: Vec<(Rational, PNode)>) -> Self {
        PNode { kind: NodeKind::Ind, children: weighted(children) }
    }

    pub fn mux(children: Vec<(Rational, PNode)>) -> Self {
        PNode { kind: NodeKind::Mux, children: weighted(children) }
    }

    pub fn cie(children: Vec<(Vec<Literal>, PNode)>) -> Self {
        let children = children
            .into_iter()
            .map(|(c, child)| PEdge { annotation: Annotation::Conj(c), child })
            .collect();
        PNode { kind: NodeKind::Cie, children }
    }

    pub fn fie(children: Vec<(Formula, PNode)>) -> Self {
        let children = children
            .into_iter()
            .map(|(f, child)| PEdge { annotation: Annotation::Formula(f), child })
            .collect();
        PNode { kind: NodeKind::Fie, children }
    }

    pub fn mie(children: Vec<((EventId, OutcomeValue), PNode)>) -> Self {
        let children = children
            .into_iter()
            .map(|((event, value), child)| PEdge { annotation: Annotation::Atom { event, value }, child })
            .collect();
        PNode { kind: NodeKind::Mie, children }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|e| e.child.size()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(|e| e.child.height()).max().unwrap_or(0)
    }

    pub fn child_nodes(&self) -> impl Iterator<Item = &PNode> {
        self.children.iter().map(|e| &e.child)
    }
}

fn plain(children: Vec<PNode>) -> Vec<PEdge> {
    children.into_iter().map(|child| PEdge { annotation: Annotation::None, child }).collect()
}

fn weighted(children: Vec<(Rational, PNode)>) -> Vec<PEdge> {
    children
        .into_iter()
        .map(|(p, child)| PEdge { annotation: Annotation::Prob(p), child })
        .collect()
}

/// A probabilistic document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDocument {
    pub root: PNode,
    pub events: EventTable,
    pub ordered: bool,
}

impl PDocument {
    pub fn new(root: PNode, events: EventTable, ordered: bool) -> Self {
        PDocument { root, events, ordered }
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn height(&self) -> usize {
        self.root.height()
    }

    pub fn index(&self) -> DocIndex<'_> {
        DocIndex::new(self)
    }
}
