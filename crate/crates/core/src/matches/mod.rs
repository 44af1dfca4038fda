//! Candidate matches and probabilities with explicit matches.
//!
//! A candidate match maps each node of a world `W` to a regular node of the
//! document `D` with the same label, injectively, sending the root to the root
//! and each edge of `W` to a descending path of `D` whose inner nodes are all
//! probabilistic. Every way of obtaining `W` keeps exactly the image of some
//! match, so summing over matches with distinct images gives `D(W)`.

mod local;
mod mie;

use std::collections::BTreeSet;

pub use local::{prob_explicit_conditioned, prob_explicit_local};
pub use mie::{match_constraint_mie, prob_explicit_mie, AtomPolarity, ConstraintAtom, MatchConstraint};

use crate::model::{DocIndex, NodeId, PDocument, XDocument, XIndex};
use crate::{Error, Result};

/// Default cap on the number of enumerated matches.
pub const DEFAULT_MATCH_CAP: usize = 100_000;

/// Injective map from `W` node ids (preorder) to `D` node ids (preorder).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateMatch {
    images: Vec<NodeId>,
}

impl CandidateMatch {
    /// `images[v]` is the image of the `W` node with preorder id `v`.
    pub fn new(images: Vec<NodeId>) -> Self {
        CandidateMatch { images }
    }

    pub fn image_of(&self, w_node: NodeId) -> NodeId {
        self.images[w_node]
    }

    pub fn images(&self) -> &[NodeId] {
        &self.images
    }

    /// `(w, d)` pairs in `W` preorder.
    pub fn pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.images.iter().copied().enumerate()
    }

    /// The set of `D` nodes hit by the match.
    pub fn image(&self) -> BTreeSet<NodeId> {
        self.images.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

/// All candidate matches of `w` in `d`, found by backtracking over `w` in
/// preorder. Fails once more than `cap` matches exist.
pub fn enumerate_matches(d: &PDocument, w: &XDocument, cap: usize) -> Result<Vec<CandidateMatch>> {
    let dx = d.index();
    let wx = w.index();
    let mut out = Vec::new();
    if dx.label(0) != Some(wx.label(0)) {
        return Ok(out);
    }
    let below: Vec<Vec<NodeId>> = dx.ids().map(|n| if dx.kind(n).is_regular() { dx.regular_below(n) } else { Vec::new() }).collect();
    let mut images = vec![0; wx.len()];
    let mut used = vec![false; dx.len()];
    used[0] = true;
    search(&dx, &wx, &below, 1, &mut images, &mut used, &mut out, cap)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    dx: &DocIndex<'_>,
    wx: &XIndex<'_>,
    below: &[Vec<NodeId>],
    v: NodeId,
    images: &mut Vec<NodeId>,
    used: &mut Vec<bool>,
    out: &mut Vec<CandidateMatch>,
    cap: usize,
) -> Result<()> {
    if v == wx.len() {
        if out.len() == cap {
            return Err(Error::TooManyMatches(cap));
        }
        out.push(CandidateMatch::new(images.clone()));
        return Ok(());
    }
    let parent = wx.parent(v).expect("non-root world node has a parent");
    for &x in &below[images[parent]] {
        if !used[x] && dx.label(x) == Some(wx.label(v)) {
            used[x] = true;
            images[v] = x;
            search(dx, wx, below, v + 1, images, used, out, cap)?;
            used[x] = false;
        }
    }
    Ok(())
}

/// Keeps the matches that respect sibling order; identity unless both inputs are ordered.
pub fn filter_matches_order(d: &PDocument, w: &XDocument, ms: &[CandidateMatch]) -> Vec<CandidateMatch> {
    if !(d.ordered && w.ordered) {
        return ms.to_vec();
    }
    let wx = w.index();
    ms.iter()
        .filter(|f| {
            wx.ids().all(|v| wx.children(v).windows(2).all(|pair| f.image_of(pair[0]) < f.image_of(pair[1])))
        })
        .cloned()
        .collect()
}

/// Checks that `f` is a candidate match of `w` in `d`.
pub fn validate_match(d: &PDocument, w: &XDocument, f: &CandidateMatch) -> Result<()> {
    let dx = d.index();
    let wx = w.index();
    let bad = |msg: String| Err(Error::InvalidMatch(msg));
    if f.len() != wx.len() {
        return bad(format!("match has {} entries, world has {} nodes", f.len(), wx.len()));
    }
    let mut seen = BTreeSet::new();
    for (v, x) in f.pairs() {
        if x >= dx.len() {
            return bad(format!("document has no node {x}"));
        }
        if !seen.insert(x) {
            return bad(format!("document node {x} is hit twice"));
        }
        if dx.label(x) != Some(wx.label(v)) {
            return bad(format!("world node {v} and document node {x} have different labels"));
        }
        match wx.parent(v) {
            None if x != 0 => return bad("the world root must map to the document root".into()),
            Some(u) if !dx.regular_below(f.image_of(u)).contains(&x) => {
                return bad(format!("no probabilistic-only path from the image of {u} to the image of {v}"))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Drops repeated matches with the same image set; they describe the same event.
pub(crate) fn distinct_images(ms: &[CandidateMatch]) -> Vec<&CandidateMatch> {
    let mut seen = BTreeSet::new();
    ms.iter().filter(|f| seen.insert(f.image())).collect()
}
