use std::collections::HashMap;

use num_traits::{One, Zero};

use super::bipartite::BipartiteGraph;
use super::iso::{unordered_classes, ClassId, IsoClasses};
use crate::model::{
    classify, strip_probabilistic_leaves, Annotation, DocIndex, NodeId, NodeKind, PDocument, ProbKind, Rational,
    XDocument,
};
use crate::{Error, Result};

/// Which documents [`poss_unordered`] accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClassCheck {
    /// Only `ind` nodes, or only `mux` nodes.
    #[default]
    Strict,
    /// Any mix of `mux` and `ind`, as long as no `ind` node is a child of a `mux` node.
    Relaxed,
}

/// Whether `w` is a possible world of an unordered document using only `ind`
/// or only `mux` nodes.
pub fn poss_unordered_single(d: &PDocument, w: &XDocument) -> Result<bool> {
    poss_unordered(d, w, ClassCheck::Strict)
}

/// Polynomial-time possibility test for unordered `mux`/`ind` documents.
pub fn poss_unordered(d: &PDocument, w: &XDocument, check: ClassCheck) -> Result<bool> {
    let profile = classify(d)?;
    let ok = match check {
        ClassCheck::Strict => profile.within(&[ProbKind::Ind]) || profile.within(&[ProbKind::Mux]),
        ClassCheck::Relaxed => profile.within(&[ProbKind::Ind, ProbKind::Mux]),
    };
    if !ok {
        return Err(Error::UnsupportedClass { op: "poss_unordered", found: profile.describe() });
    }
    if !profile.no_ind_under_mux {
        return Err(Error::PreconditionViolated("an ind node is a child of a mux node".into()));
    }
    if d.ordered || w.ordered {
        return Err(Error::OrderMode("poss_unordered needs an unordered document and an unordered world".into()));
    }
    let d = strip_probabilistic_leaves(d);
    let mut table = Tables::new(&d, unordered_classes(w));
    let root = table.iso.accepting;
    Ok(table.can_match(0, root))
}

struct Tables<'a> {
    ix: DocIndex<'a>,
    iso: IsoClasses,
    empty: Vec<bool>,
    can: HashMap<(NodeId, ClassId), bool>,
}

impl<'a> Tables<'a> {
    fn new(d: &'a PDocument, iso: IsoClasses) -> Self {
        let ix = d.index();
        let mut empty = vec![false; ix.len()];
        // children have larger ids, so a reverse sweep is bottom-up
        for n in ix.ids().rev() {
            if let NodeKind::Mux = ix.kind(n) {
                let mut sum = Rational::zero();
                for e in &ix.node(n).children {
                    if let Annotation::Prob(p) = &e.annotation {
                        sum += p;
                    }
                }
                empty[n] = sum < Rational::one() || ix.children(n).iter().any(|&c| empty[c]);
            }
        }
        Tables { ix, iso, empty, can: HashMap::new() }
    }

    /// Topmost non-`ind` descendants of `n`, with their optional flag.
    fn items(&self, n: NodeId) -> Vec<(NodeId, bool)> {
        let mut out = Vec::new();
        let mut stack: Vec<(NodeId, bool)> = self.ix.children(n).iter().rev().map(|&c| (c, false)).collect();
        while let Some((x, under_ind)) = stack.pop() {
            if let NodeKind::Ind = self.ix.kind(x) {
                stack.extend(self.ix.children(x).iter().rev().map(|&c| (c, true)));
            } else {
                out.push((x, under_ind || self.empty[x]));
            }
        }
        out
    }

    /// Whether the subtree of class `c` is a possible world of the subtree at `n`.
    fn can_match(&mut self, n: NodeId, c: ClassId) -> bool {
        if let Some(&b) = self.can.get(&(n, c)) {
            return b;
        }
        let b = match self.ix.kind(n) {
            NodeKind::Mux => self.ix.children(n).to_vec().into_iter().any(|x| self.can_match(x, c)),
            NodeKind::Regular(label) if label == self.iso.label(c) => {
                let items = self.items(n);
                let targets = self.iso.word(c).to_vec();
                if items.len() < targets.len() {
                    false
                } else {
                    let mut edges = Vec::new();
                    for (u, &(x, _)) in items.iter().enumerate() {
                        for (v, &t) in targets.iter().enumerate() {
                            if self.can_match(x, t) {
                                edges.push((u, v));
                            }
                        }
                    }
                    if items.iter().all(|&(_, optional)| optional) {
                        // every item may vanish: only the real targets need covering
                        BipartiteGraph::new(items.len(), targets.len(), edges).max_matching().size == targets.len()
                    } else {
                        let m = targets.len();
                        for (u, &(_, optional)) in items.iter().enumerate() {
                            if optional {
                                edges.extend((m..items.len()).map(|dummy| (u, dummy)));
                            }
                        }
                        BipartiteGraph::new(items.len(), items.len(), edges).has_perfect_matching()
                    }
                }
            }
            _ => false,
        };
        self.can.insert((n, c), b);
        b
    }
}
