use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{edge_kept, Configuration};
use crate::model::{Annotation, DocIndex, Label, NodeId, NodeKind, OutcomeValue, PDocument, Rational, XNode};
use crate::{Error, Result};

#[derive(Debug)]
enum Dim {
    Event { id: String, outcomes: Vec<OutcomeValue> },
    Ind { node: NodeId, position: usize },
    Mux { node: NodeId, branches: Vec<Option<usize>> },
}

/// The random choices of a document, one dimension per event, `ind` edge and
/// `mux` node, each with its options of nonzero probability.
#[derive(Debug)]
pub struct ChoiceSpace<'a> {
    ix: DocIndex<'a>,
    dims: Vec<Dim>,
    probs: Vec<Vec<Rational>>,
    event_dim: HashMap<&'a str, usize>,
    node_dim: Vec<Option<usize>>,
}

impl<'a> ChoiceSpace<'a> {
    pub fn new(doc: &'a PDocument) -> Self {
        let ix = doc.index();
        let mut dims = Vec::new();
        let mut probs = Vec::new();
        let mut event_dim = HashMap::new();
        for (id, event) in doc.events.iter() {
            let (outcomes, ps): (Vec<_>, Vec<_>) = event.outcomes().into_iter().unzip();
            event_dim.insert(id.as_str(), dims.len());
            dims.push(Dim::Event { id: id.clone(), outcomes });
            probs.push(ps);
        }
        let mut node_dim = vec![None; ix.len()];
        for n in ix.ids() {
            let edges = &ix.node(n).children;
            match ix.kind(n) {
                NodeKind::Ind => {
                    node_dim[n] = Some(dims.len());
                    for (position, e) in edges.iter().enumerate() {
                        let p = match &e.annotation {
                            Annotation::Prob(p) => p.clone(),
                            _ => Rational::zero(),
                        };
                        dims.push(Dim::Ind { node: n, position });
                        probs.push(vec![p.clone(), Rational::one() - p]);
                    }
                }
                NodeKind::Mux => {
                    node_dim[n] = Some(dims.len());
                    let mut branches = Vec::new();
                    let mut ps = Vec::new();
                    let mut rest = Rational::one();
                    for (i, e) in edges.iter().enumerate() {
                        if let Annotation::Prob(p) = &e.annotation {
                            rest -= p;
                            if !p.is_zero() {
                                branches.push(Some(i));
                                ps.push(p.clone());
                            }
                        }
                    }
                    if rest > Rational::zero() {
                        branches.push(None);
                        ps.push(rest);
                    }
                    dims.push(Dim::Mux { node: n, branches });
                    probs.push(ps);
                }
                _ => {}
            }
        }
        ChoiceSpace { ix, dims, probs, event_dim, node_dim }
    }

    /// Number of configurations, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.probs.iter().fold(1u128, |acc, ps| acc.saturating_mul(ps.len() as u128))
    }

    /// Number of options of each dimension.
    pub fn radix(&self) -> Vec<usize> {
        self.probs.iter().map(Vec::len).collect()
    }

    pub fn dimensions(&self) -> usize {
        self.dims.len()
    }

    /// All choice vectors in lexicographic order.
    pub fn choices(&self) -> Odometer {
        Odometer::new(self.radix())
    }

    pub fn probability(&self, choice: &[usize]) -> Rational {
        let mut p = Rational::one();
        for (ps, &c) in self.probs.iter().zip(choice) {
            p *= &ps[c];
        }
        p
    }

    fn outcome(&self, choice: &[usize], event: &str) -> Option<&str> {
        let d = *self.event_dim.get(event)?;
        match &self.dims[d] {
            Dim::Event { outcomes, .. } => Some(outcomes[choice[d]].as_str()),
            _ => None,
        }
    }

    fn ind_keep(&self, choice: &[usize], node: NodeId, position: usize) -> bool {
        self.node_dim[node].is_some_and(|d| choice[d + position] == 0)
    }

    fn mux_branch(&self, choice: &[usize], node: NodeId) -> Option<usize> {
        let d = self.node_dim[node]?;
        match &self.dims[d] {
            Dim::Mux { branches, .. } => branches[choice[d]],
            _ => None,
        }
    }

    /// The world produced by `choice`; `trace` receives the source id of each
    /// world node in preorder.
    pub fn evaluate(&self, choice: &[usize], mut trace: Option<&mut Vec<NodeId>>) -> XNode {
        let mut out = Vec::new();
        self.emit(0, choice, &mut out, &mut trace);
        match self.ix.kind(0) {
            NodeKind::Regular(_) => out.pop().expect("regular root always emits itself"),
            _ => XNode::new(Label::synthetic(0), out),
        }
    }

    fn emit(&self, n: NodeId, choice: &[usize], out: &mut Vec<XNode>, trace: &mut Option<&mut Vec<NodeId>>) {
        let regular = if let NodeKind::Regular(label) = self.ix.kind(n) {
            if let Some(t) = trace.as_deref_mut() {
                t.push(n);
            }
            Some(label)
        } else {
            None
        };
        let mut kids = Vec::new();
        let target = if regular.is_some() { &mut kids } else { &mut *out };
        for (position, &c) in self.ix.children(n).iter().enumerate() {
            let kept = edge_kept(
                &self.ix,
                n,
                position,
                |node, pos| self.ind_keep(choice, node, pos),
                |node| self.mux_branch(choice, node),
                |e| self.outcome(choice, e),
            );
            if kept {
                self.emit(c, choice, target, trace);
            }
        }
        if let Some(label) = regular {
            out.push(XNode::new(label.clone(), kids));
        }
    }

    pub fn decode(&self, choice: &[usize]) -> Configuration {
        let mut cfg = Configuration::default();
        for (d, dim) in self.dims.iter().enumerate() {
            match dim {
                Dim::Event { id, outcomes } => {
                    cfg.valuation.insert(id.clone(), outcomes[choice[d]].clone());
                }
                Dim::Ind { node, position } => {
                    cfg.ind_choices.insert((*node, *position), choice[d] == 0);
                }
                Dim::Mux { node, branches } => {
                    cfg.mux_choices.insert(*node, branches[choice[d]]);
                }
            }
        }
        cfg
    }

    /// Inverse of [`decode`](Self::decode). Every dimension must be set; an
    /// option of probability zero or an unknown key is rejected.
    pub fn encode(&self, cfg: &Configuration) -> Result<Vec<usize>> {
        let missing = |what: String| Error::IncompleteConfiguration(what);
        let mut choice = Vec::with_capacity(self.dims.len());
        for dim in &self.dims {
            let c = match dim {
                Dim::Event { id, outcomes } => {
                    let v = cfg.valuation.get(id).ok_or_else(|| missing(format!("no outcome for event `{id}`")))?;
                    outcomes
                        .iter()
                        .position(|o| o == v)
                        .ok_or_else(|| missing(format!("`{v}` is not a possible outcome of `{id}`")))?
                }
                Dim::Ind { node, position } => {
                    let keep = cfg
                        .ind_choices
                        .get(&(*node, *position))
                        .ok_or_else(|| missing(format!("no choice for edge {position} of ind node {node}")))?;
                    if *keep {
                        0
                    } else {
                        1
                    }
                }
                Dim::Mux { node, branches } => {
                    let b = cfg
                        .mux_choices
                        .get(node)
                        .ok_or_else(|| missing(format!("no branch for mux node {node}")))?;
                    branches
                        .iter()
                        .position(|x| x == b)
                        .ok_or_else(|| missing(format!("branch {b:?} of mux node {node} has probability zero")))?
                }
            };
            choice.push(c);
        }
        let ind_count = self.dims.iter().filter(|d| matches!(d, Dim::Ind { .. })).count();
        let mux_count = self.dims.iter().filter(|d| matches!(d, Dim::Mux { .. })).count();
        if cfg.valuation.len() != self.event_dim.len()
            || cfg.ind_choices.len() != ind_count
            || cfg.mux_choices.len() != mux_count
        {
            return Err(missing("configuration sets choices the document does not have".into()));
        }
        Ok(choice)
    }
}

/// Mixed-radix counter over choice vectors.
#[derive(Clone, Debug)]
pub struct Odometer {
    radix: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    fn new(radix: Vec<usize>) -> Self {
        let next = if radix.contains(&0) { None } else { Some(vec![0; radix.len()]) };
        Odometer { radix, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.radix[i] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[i] = 0;
        }
        Some(current)
    }
}
