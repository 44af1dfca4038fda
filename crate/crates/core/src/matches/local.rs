use num_traits::{One, Zero};

use super::{distinct_images, filter_matches_order, validate_match, CandidateMatch};
use crate::algorithms::ordered_dp;
use crate::model::{
    classify, Annotation, Label, NodeKind, PDocument, PEdge, PNode, ProbKind, Rational, XDocument, XNode,
};
use crate::oracle::{Oracle, Valuation};
use crate::{Error, Result};

/// `D(W)` for a `mux`/`ind`/`det` document given the complete set of candidate
/// matches. Each match is made unambiguous by giving its image fresh labels,
/// then evaluated with the ordered span DP.
pub fn prob_explicit_local(d: &PDocument, w: &XDocument, ms: &[CandidateMatch]) -> Result<Rational> {
    let profile = classify(d)?;
    if !profile.within(&[ProbKind::Mux, ProbKind::Ind, ProbKind::Det]) {
        return Err(Error::UnsupportedClass { op: "prob_explicit_local", found: profile.describe() });
    }
    let ms = checked(d, w, ms)?;
    Ok(distinct_images(&ms).into_iter().map(|f| relabeled_probability(d, w, f)).sum())
}

/// Like [`prob_explicit_local`] for documents that also use events: sums over
/// valuations of the events, each of which turns the document into a local one.
/// Exponential in the number of events only.
pub fn prob_explicit_conditioned(d: &PDocument, w: &XDocument, ms: &[CandidateMatch]) -> Result<Rational> {
    classify(d)?;
    let ms = checked(d, w, ms)?;
    let ms = distinct_images(&ms);
    let events = PDocument::new(PNode::leaf("events"), d.events.clone(), d.ordered);
    let mut total = Rational::zero();
    for (cfg, p) in Oracle::default().configurations(&events)? {
        let resolved = resolve(d, &cfg.valuation);
        let q: Rational = ms.iter().map(|f| relabeled_probability(&resolved, w, f)).sum();
        total += p * q;
    }
    Ok(total)
}

fn checked(d: &PDocument, w: &XDocument, ms: &[CandidateMatch]) -> Result<Vec<CandidateMatch>> {
    for f in ms {
        validate_match(d, w, f)?;
    }
    Ok(filter_matches_order(d, w, ms))
}

/// Replaces every event-guarded node by an `ind` node whose edges have
/// probability 1 or 0 according to `nu`. Node ids are unchanged.
fn resolve(d: &PDocument, nu: &Valuation) -> PDocument {
    fn go(n: &PNode, nu: &Valuation) -> PNode {
        let guarded = matches!(n.kind, NodeKind::Cie | NodeKind::Fie | NodeKind::Mie);
        let children = n
            .children
            .iter()
            .map(|e| {
                let annotation = if guarded {
                    let holds = match &e.annotation {
                        Annotation::Conj(lits) => lits.iter().all(|l| nu.get(&l.event).is_some_and(|o| l.holds(o))),
                        Annotation::Formula(f) => f
                            .eval(&|ev: &str| nu.get(ev).map(|o| o == crate::model::events::TRUE))
                            .unwrap_or(false),
                        Annotation::Atom { event, value } => nu.get(event) == Some(value),
                        _ => false,
                    };
                    Annotation::Prob(if holds { Rational::one() } else { Rational::zero() })
                } else {
                    e.annotation.clone()
                };
                PEdge { annotation, child: go(&e.child, nu) }
            })
            .collect();
        PNode { kind: if guarded { NodeKind::Ind } else { n.kind.clone() }, children }
    }
    PDocument::new(go(&d.root, nu), Default::default(), d.ordered)
}

/// Probability that exactly the image of `f` is kept, in the order of `w` if ordered.
fn relabeled_probability(d: &PDocument, w: &XDocument, f: &CandidateMatch) -> Rational {
    let (d2, w2) = relabel(d, w, f);
    ordered_dp(&d2, &w2)
}

/// Gives world node `v` and its image the label `#v`. Siblings of the world
/// are sorted by the document order of their images.
pub(crate) fn relabel(d: &PDocument, w: &XDocument, f: &CandidateMatch) -> (PDocument, XDocument) {
    let mut w_of = vec![None; d.size()];
    for (v, x) in f.pairs() {
        w_of[x] = Some(v);
    }

    fn world(node: &XNode, next: &mut usize, f: &CandidateMatch) -> (usize, XNode) {
        let me = *next;
        *next += 1;
        let mut kids: Vec<(usize, XNode)> = node.children.iter().map(|c| world(c, next, f)).collect();
        kids.sort_by_key(|(v, _)| f.image_of(*v));
        (me, XNode::new(Label::synthetic(me), kids.into_iter().map(|(_, c)| c).collect()))
    }

    fn doc(node: &PNode, next: &mut usize, w_of: &[Option<usize>]) -> PNode {
        let me = *next;
        *next += 1;
        let kind = match (&node.kind, w_of[me]) {
            (NodeKind::Regular(_), Some(v)) => NodeKind::Regular(Label::synthetic(v)),
            (k, _) => k.clone(),
        };
        let children = node
            .children
            .iter()
            .map(|e| PEdge { annotation: e.annotation.clone(), child: doc(&e.child, next, w_of) })
            .collect();
        PNode { kind, children }
    }

    let (_, w2) = world(&w.root, &mut 0, f);
    let d2 = doc(&d.root, &mut 0, &w_of);
    (PDocument::new(d2, d.events.clone(), true), XDocument::new(w2, true))
}
