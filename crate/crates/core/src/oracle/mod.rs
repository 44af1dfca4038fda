//! Brute-force semantics.
//!
//! A *configuration* fixes every random choice of a document at once: the
//! outcome of each global event, keep/drop for each `ind` edge and the branch
//! taken by each `mux` node (or none). Enumerating the cross product of those
//! choices and evaluating the document under each one gives the exact world
//! distribution. This is exponential and serves as ground truth for every
//! other route in the crate.

mod space;

use std::collections::BTreeMap;

use num_traits::Zero;

pub use space::ChoiceSpace;

use crate::format::quote;
use crate::model::{
    Annotation, DocIndex, EventId, NodeId, NodeKind, OutcomeValue, PDocument, Rational, XDocument, XNode,
};
use crate::{Error, Result};

/// Default cap on the number of configurations the oracle agrees to enumerate.
pub const DEFAULT_CAP: u128 = 1 << 24;

/// One outcome per event.
pub type Valuation = BTreeMap<EventId, OutcomeValue>;

/// A complete joint outcome of a document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Configuration {
    pub valuation: Valuation,
    /// Keyed by (`ind` node, child position); `true` keeps the edge.
    pub ind_choices: BTreeMap<(NodeId, usize), bool>,
    /// Branch taken by each `mux` node; `None` keeps no child.
    pub mux_choices: BTreeMap<NodeId, Option<usize>>,
}

impl Configuration {
    /// Product of the probabilities of every choice made.
    pub fn probability(&self, doc: &PDocument) -> Result<Rational> {
        let space = ChoiceSpace::new(doc);
        let choice = space.encode(self)?;
        Ok(space.probability(&choice))
    }
}

/// Exact distribution over worlds. Keys are canonical trees: children are
/// sorted recursively unless the document is ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorldDistribution {
    pub ordered: bool,
    worlds: BTreeMap<XNode, Rational>,
}

impl WorldDistribution {
    pub fn get(&self, w: &XNode) -> Rational {
        self.worlds.get(&canonical_key(w, self.ordered)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&XNode, &Rational)> {
        self.worlds.iter()
    }

    pub fn total(&self) -> Rational {
        self.worlds.values().sum()
    }

    /// Worlds as documents, in key order.
    pub fn support(&self) -> Vec<XDocument> {
        self.worlds.keys().map(|w| XDocument::new(w.clone(), self.ordered)).collect()
    }
}

fn canonical_key(w: &XNode, ordered: bool) -> XNode {
    if ordered {
        w.clone()
    } else {
        w.canonical()
    }
}

/// Brute-force evaluator with a configuration cap.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub cap: u128,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: u128) -> Self {
        Oracle { cap }
    }

    fn space<'a>(&self, doc: &'a PDocument) -> Result<ChoiceSpace<'a>> {
        let space = ChoiceSpace::new(doc);
        let count = space.count();
        if count > self.cap {
            return Err(Error::TooManyConfigurations { count, cap: self.cap });
        }
        Ok(space)
    }

    /// Every configuration with its probability.
    pub fn configurations<'a>(
        &self,
        doc: &'a PDocument,
    ) -> Result<impl Iterator<Item = (Configuration, Rational)> + 'a> {
        let space = self.space(doc)?;
        let choices = space.choices();
        Ok(choices.map(move |c| (space.decode(&c), space.probability(&c))))
    }

    pub fn enumerate_worlds(&self, doc: &PDocument) -> Result<WorldDistribution> {
        let space = self.space(doc)?;
        let mut worlds: BTreeMap<XNode, Rational> = BTreeMap::new();
        for choice in space.choices() {
            let p = space.probability(&choice);
            if p.is_zero() {
                continue;
            }
            let w = canonical_key(&space.evaluate(&choice, None), doc.ordered);
            *worlds.entry(w).or_insert_with(Rational::zero) += p;
        }
        Ok(WorldDistribution { ordered: doc.ordered, worlds })
    }

    /// `D(W)`, using the order mode of the document.
    pub fn world_probability(&self, doc: &PDocument, w: &XDocument) -> Result<Rational> {
        let space = self.space(doc)?;
        let target = canonical_key(&w.root, doc.ordered);
        let mut total = Rational::zero();
        for choice in space.choices() {
            if canonical_key(&space.evaluate(&choice, None), doc.ordered) == target {
                total += space.probability(&choice);
            }
        }
        Ok(total)
    }
}

pub fn enumerate_worlds(doc: &PDocument) -> Result<WorldDistribution> {
    Oracle::default().enumerate_worlds(doc)
}

/// `D(W)` by enumeration; zero iff `w` is not a possible world.
pub fn world_probability_bf(doc: &PDocument, w: &XDocument) -> Result<Rational> {
    Oracle::default().world_probability(doc, w)
}

/// Evaluates the document under a configuration.
pub fn apply_configuration(doc: &PDocument, cfg: &Configuration) -> Result<XDocument> {
    apply_configuration_traced(doc, cfg).map(|(w, _)| w)
}

/// Like [`apply_configuration`], also returning for each node of the result
/// (in preorder) the id of the regular document node it comes from.
pub fn apply_configuration_traced(doc: &PDocument, cfg: &Configuration) -> Result<(XDocument, Vec<NodeId>)> {
    let space = ChoiceSpace::new(doc);
    let choice = space.encode(cfg)?;
    let mut trace = Vec::new();
    let root = space.evaluate(&choice, Some(&mut trace));
    Ok((XDocument::new(root, doc.ordered), trace))
}

/// Certificate check: does `cfg` produce exactly `w` (under the document's order mode)?
pub fn check_configuration_yields(doc: &PDocument, cfg: &Configuration, w: &XDocument) -> bool {
    match apply_configuration(doc, cfg) {
        Ok(out) => trees_equal(&out, w, doc.ordered),
        Err(_) => false,
    }
}

/// Tree equality, order-sensitive or as unordered trees with bag semantics.
pub fn trees_equal(a: &XDocument, b: &XDocument, ordered: bool) -> bool {
    if ordered {
        a.root == b.root
    } else {
        canonical_string(&a.root, false) == canonical_string(&b.root, false)
    }
}

/// String encoding of a tree; for unordered trees each node sorts the
/// encodings of its children, so isomorphic trees get the same string.
pub fn canonical_string(node: &XNode, ordered: bool) -> String {
    let mut children: Vec<String> = node.children.iter().map(|c| canonical_string(c, ordered)).collect();
    if !ordered {
        children.sort();
    }
    format!("{}({})", quote(node.label.as_str()), children.concat())
}

/// Decides whether `edge` of node `parent` survives, given the chosen options.
pub(crate) fn edge_kept<'o>(
    ix: &DocIndex<'_>,
    parent: NodeId,
    position: usize,
    ind_keep: impl Fn(NodeId, usize) -> bool,
    mux_branch: impl Fn(NodeId) -> Option<usize>,
    outcome: impl Fn(&str) -> Option<&'o str>,
) -> bool {
    let edge = &ix.node(parent).children[position];
    match (ix.kind(parent), &edge.annotation) {
        (NodeKind::Regular(_) | NodeKind::Det, _) => true,
        (NodeKind::Ind, _) => ind_keep(parent, position),
        (NodeKind::Mux, _) => mux_branch(parent) == Some(position),
        (NodeKind::Cie, Annotation::Conj(lits)) => {
            lits.iter().all(|l| outcome(&l.event).is_some_and(|o| l.holds(o)))
        }
        (NodeKind::Fie, Annotation::Formula(f)) => {
            f.eval(&|e: &str| outcome(e).map(|o| o == crate::model::events::TRUE)).unwrap_or(false)
        }
        (NodeKind::Mie, Annotation::Atom { event, value }) => outcome(event) == Some(value.as_str()),
        _ => false,
    }
}

#[cfg(test)]
mod tests;
