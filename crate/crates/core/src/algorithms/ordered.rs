use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use super::iso::{iso_classes, ClassId, IsoClasses};
use crate::model::{classify, Annotation, DocIndex, NodeId, NodeKind, PDocument, ProbKind, Rational, XDocument};
use crate::{Error, Result};

/// Exact `D(W)` for ordered documents built from `mux`, `ind` and `det`.
///
/// Runs in time polynomial in `|d| * |w|`.
pub fn prob_ordered_local(d: &PDocument, w: &XDocument) -> Result<Rational> {
    let profile = classify(d)?;
    if !profile.within(&[ProbKind::Mux, ProbKind::Ind, ProbKind::Det]) {
        return Err(Error::UnsupportedClass { op: "prob_ordered_local", found: profile.describe() });
    }
    if !d.ordered || !w.ordered {
        return Err(Error::OrderMode("prob_ordered_local needs an ordered document and an ordered world".into()));
    }
    Ok(ordered_dp(d, w))
}

/// The dynamic program without class or order checks. Nodes of other kinds
/// produce nothing.
pub(crate) fn ordered_dp(d: &PDocument, w: &XDocument) -> Rational {
    let mut dp = SpanDp { ix: d.index(), iso: iso_classes(w), memo: HashMap::new() };
    let root = dp.iso.accepting;
    if dp.ix.label(0) != Some(dp.iso.label(root)) {
        return Rational::zero();
    }
    let spans = dp.sequence(0, root, 0);
    spans[dp.iso.word(root).len()].clone()
}

/// `spans(n, c, i)[t]` is the probability that node `n` evaluates to exactly
/// the forest formed by children `i..i+t` of any node of class `c`.
struct SpanDp<'a> {
    ix: DocIndex<'a>,
    iso: IsoClasses,
    memo: HashMap<(NodeId, ClassId, usize), Rc<Vec<Rational>>>,
}

impl SpanDp<'_> {
    fn width(&self, c: ClassId, i: usize) -> usize {
        self.iso.word(c).len() - i + 1
    }

    fn spans(&mut self, n: NodeId, c: ClassId, i: usize) -> Rc<Vec<Rational>> {
        if let Some(v) = self.memo.get(&(n, c, i)) {
            return v.clone();
        }
        let width = self.width(c, i);
        let v = match self.ix.kind(n) {
            NodeKind::Regular(label) => {
                let mut v = vec![Rational::zero(); width];
                if let Some(&child) = self.iso.word(c).get(i) {
                    if label == self.iso.label(child) {
                        let inner = self.sequence(n, child, 0);
                        v[1] = inner[self.iso.word(child).len()].clone();
                    }
                }
                v
            }
            NodeKind::Det | NodeKind::Ind => self.sequence(n, c, i),
            NodeKind::Mux => {
                let mut v = vec![Rational::zero(); width];
                let mut rest = Rational::one();
                for (k, &child) in self.ix.children(n).to_vec().iter().enumerate() {
                    let p = edge_prob(&self.ix.node(n).children[k].annotation);
                    rest -= &p;
                    let sub = self.spans(child, c, i);
                    for (t, x) in sub.iter().enumerate() {
                        if !x.is_zero() {
                            v[t] += &p * x;
                        }
                    }
                }
                v[0] += rest;
                v
            }
            _ => vec![Rational::zero(); width],
        };
        let v = Rc::new(v);
        self.memo.insert((n, c, i), v.clone());
        v
    }

    /// Concatenation of the children of `n`, each optional when `n` is `ind`.
    fn sequence(&mut self, n: NodeId, c: ClassId, i: usize) -> Vec<Rational> {
        let width = self.width(c, i);
        let optional = matches!(self.ix.kind(n), NodeKind::Ind);
        let mut g = vec![Rational::zero(); width];
        g[0] = Rational::one();
        for (k, &child) in self.ix.children(n).to_vec().iter().enumerate() {
            let p = if optional { edge_prob(&self.ix.node(n).children[k].annotation) } else { Rational::one() };
            let mut next = vec![Rational::zero(); width];
            for x in 0..width {
                if g[x].is_zero() {
                    continue;
                }
                let sub = self.spans(child, c, i + x);
                for (t, y) in sub.iter().enumerate() {
                    if !y.is_zero() {
                        next[x + t] += &g[x] * &p * y;
                    }
                }
                if optional {
                    next[x] += &g[x] * (Rational::one() - &p);
                }
            }
            g = next;
        }
        g
    }
}

fn edge_prob(a: &Annotation) -> Rational {
    match a {
        Annotation::Prob(p) => p.clone(),
        _ => Rational::zero(),
    }
}
