use num_traits::{One, Zero};

use crate::model::{EventId, Literal, OutcomeValue, Rational};
use crate::{Error, Result};

/// Binary decision tree over the outcomes of one event. At an internal node
/// the fresh Boolean event being true selects the left subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(OutcomeValue),
    Node { event: EventId, prob: Rational, left: Box<DecisionTree>, right: Box<DecisionTree> },
}

/// Balanced tree splitting the outcome list at its midpoint. Internal nodes
/// are named `{event}.b1`, `{event}.b2`, ... in preorder; each carries the
/// mass of its left half divided by its total mass.
pub fn event_decision_tree(event: &str, outcomes: &[(OutcomeValue, Rational)]) -> Result<DecisionTree> {
    if outcomes.is_empty() {
        return Err(Error::InvalidDistribution(format!("event `{event}` has no outcomes")));
    }
    for (v, p) in outcomes {
        if *p <= Rational::zero() || *p > Rational::one() {
            return Err(Error::InvalidDistribution(format!("outcome `{v}` of `{event}` has probability {p}")));
        }
    }
    let total: Rational = outcomes.iter().map(|(_, p)| p).sum();
    if !total.is_one() {
        return Err(Error::InvalidDistribution(format!("outcomes of `{event}` sum to {total}")));
    }
    let mut counter = 0;
    Ok(build(event, outcomes, &mut counter))
}

fn build(event: &str, outcomes: &[(OutcomeValue, Rational)], counter: &mut usize) -> DecisionTree {
    if outcomes.len() == 1 {
        return DecisionTree::Leaf(outcomes[0].0.clone());
    }
    *counter += 1;
    let name = format!("{event}.b{counter}");
    let (l, r) = outcomes.split_at(outcomes.len() / 2);
    let mass = |s: &[(OutcomeValue, Rational)]| -> Rational { s.iter().map(|(_, p)| p).sum() };
    let prob = mass(l) / (mass(l) + mass(r));
    let left = Box::new(build(event, l, counter));
    let right = Box::new(build(event, r, counter));
    DecisionTree::Node { event: name, prob, left, right }
}

impl DecisionTree {
    /// Fresh events with their probabilities, in preorder.
    pub fn events(&self) -> Vec<(EventId, Rational)> {
        match self {
            DecisionTree::Leaf(_) => Vec::new(),
            DecisionTree::Node { event, prob, left, right } => {
                let mut out = vec![(event.clone(), prob.clone())];
                out.extend(left.events());
                out.extend(right.events());
                out
            }
        }
    }

    /// Each outcome with the conjunction of literals leading to it.
    pub fn paths(&self) -> Vec<(OutcomeValue, Vec<Literal>)> {
        match self {
            DecisionTree::Leaf(v) => vec![(v.clone(), Vec::new())],
            DecisionTree::Node { event, left, right, .. } => {
                let mut out = Vec::new();
                for (lit, sub) in [(Literal::pos(event.as_str()), left), (Literal::neg(event.as_str()), right)] {
                    for (v, mut lits) in sub.paths() {
                        lits.insert(0, lit.clone());
                        out.push((v, lits));
                    }
                }
                out
            }
        }
    }

    /// Each outcome with the product of branch probabilities along its path.
    pub fn leaf_probabilities(&self) -> Vec<(OutcomeValue, Rational)> {
        match self {
            DecisionTree::Leaf(v) => vec![(v.clone(), Rational::one())],
            DecisionTree::Node { prob, left, right, .. } => {
                let mut out: Vec<_> = left.leaf_probabilities().into_iter().map(|(v, p)| (v, p * prob)).collect();
                let q = Rational::one() - prob;
                out.extend(right.leaf_probabilities().into_iter().map(|(v, p)| (v, p * &q)));
                out
            }
        }
    }

    pub fn height(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { left, right, .. } => 1 + left.height().max(right.height()),
        }
    }
}
