//! Seeded generators for documents, worlds and source-problem instances.
//!
//! Everything takes an explicit `Rng`, so a fixed seed reproduces the same
//! inputs on every platform.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algorithms::BipartiteGraph;
use crate::gen::{CnfFormula, ExactCoverInstance};
use crate::model::{
    ratio, Annotation, Event, EventTable, Formula, Literal, NodeKind, PDocument, PEdge, PNode, ProbKind, Rational,
    XNode,
};
use crate::oracle::ChoiceSpace;

const LABELS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Bounds for [`random_xtree`].
#[derive(Clone, Debug)]
pub struct TreeShape {
    pub max_nodes: usize,
    pub max_children: usize,
    /// Labels are drawn from the first `labels` letters.
    pub labels: usize,
}

pub fn random_xtree(rng: &mut impl Rng, shape: &TreeShape) -> XNode {
    let mut budget = shape.max_nodes.max(1) - 1;
    fn go(rng: &mut impl Rng, shape: &TreeShape, budget: &mut usize) -> XNode {
        let label = LABELS[rng.gen_range(0..shape.labels.clamp(1, LABELS.len()))];
        let k = rng.gen_range(0..=shape.max_children).min(*budget);
        *budget -= k;
        let mut kids = Vec::with_capacity(k);
        for _ in 0..k {
            kids.push(go(rng, shape, budget));
        }
        XNode::new(label, kids)
    }
    go(rng, shape, &mut budget)
}

/// Bounds for [`random_document`].
#[derive(Clone, Debug)]
pub struct DocParams {
    /// Kinds of probabilistic nodes that may appear.
    pub kinds: Vec<ProbKind>,
    pub max_prob_nodes: usize,
    pub max_regular: usize,
    pub max_children: usize,
    pub labels: usize,
    pub max_events: usize,
    pub ordered: bool,
    /// Forbid `ind` nodes directly below `mux` nodes.
    pub no_ind_under_mux: bool,
    /// Upper bound on the number of oracle configurations.
    pub config_budget: u128,
}

impl DocParams {
    pub fn new(kinds: &[ProbKind]) -> Self {
        DocParams {
            kinds: kinds.to_vec(),
            max_prob_nodes: 8,
            max_regular: 10,
            max_children: 3,
            labels: 3,
            max_events: 3,
            ordered: false,
            no_ind_under_mux: false,
            config_budget: 1 << 13,
        }
    }

    pub fn ordered(mut self, ordered: bool) -> Self {
        self.ordered = ordered;
        self
    }

    pub fn no_ind_under_mux(mut self) -> Self {
        self.no_ind_under_mux = true;
        self
    }
}

/// A random valid document within `params`.
pub fn random_document(rng: &mut impl Rng, params: &DocParams) -> PDocument {
    let uses = |k: ProbKind| params.kinds.contains(&k);
    let mut events = EventTable::new();
    let mut configs: u128 = 1;
    let mut bool_events = Vec::new();
    let mut all_events = Vec::new();
    if (uses(ProbKind::Cie) || uses(ProbKind::Fie) || uses(ProbKind::Mie)) && params.max_events > 0 {
        for i in 1..=rng.gen_range(1..=params.max_events) {
            let id = format!("e{i}");
            let multivalued = uses(ProbKind::Mie) && rng.gen_bool(0.5);
            let event = if multivalued {
                let k = rng.gen_range(2..=3);
                let weights = random_weights(rng, k, false);
                Event::Enum(weights.into_iter().enumerate().map(|(j, p)| (format!("o{}", j + 1), p)).collect())
            } else {
                bool_events.push(id.clone());
                Event::Bool(random_prob(rng))
            };
            configs *= event.outcomes().len() as u128;
            all_events.push((id.clone(), event.clone()));
            events.insert(id, event);
        }
    }
    let mut g = DocGen {
        rng,
        params,
        prob_left: params.max_prob_nodes,
        regular_left: params.max_regular.max(1) - 1,
        configs,
        bool_events,
        all_events,
    };
    let root = g.regular(0);
    PDocument::new(root, events, params.ordered)
}

struct DocGen<'r, R> {
    rng: &'r mut R,
    params: &'r DocParams,
    prob_left: usize,
    regular_left: usize,
    configs: u128,
    bool_events: Vec<String>,
    all_events: Vec<(String, Event)>,
}

const MAX_DEPTH: usize = 5;

impl<R: Rng> DocGen<'_, R> {
    fn label(&mut self) -> &'static str {
        LABELS[self.rng.gen_range(0..self.params.labels.clamp(1, LABELS.len()))]
    }

    fn regular(&mut self, depth: usize) -> PNode {
        let label = self.label();
        let k = match depth {
            0 => self.rng.gen_range(1..=self.params.max_children.max(1)),
            d if d >= MAX_DEPTH => 0,
            _ => self.rng.gen_range(0..=self.params.max_children),
        };
        let mut kids = Vec::new();
        for _ in 0..k {
            if let Some(child) = self.child(depth + 1, None, false) {
                kids.push(child);
            }
        }
        PNode::regular(label, kids)
    }

    /// A child below a node of kind `parent` (`None` for regular parents).
    fn child(&mut self, depth: usize, parent: Option<&NodeKind>, under_mie: bool) -> Option<PNode> {
        let prob_share = if parent.is_some() { 0.3 } else { 0.6 };
        if self.prob_left > 0 && depth < MAX_DEPTH && self.rng.gen_bool(prob_share) {
            let mut kinds: Vec<ProbKind> = self.params.kinds.clone();
            kinds.retain(|k| match k {
                ProbKind::Ind => !(self.params.no_ind_under_mux && parent == Some(&NodeKind::Mux)),
                ProbKind::Mie => !under_mie,
                ProbKind::Cie | ProbKind::Fie => !self.bool_events.is_empty(),
                _ => true,
            });
            if self.all_events.is_empty() {
                kinds.retain(|k| *k != ProbKind::Mie);
            }
            if let Some(&kind) = kinds.choose(self.rng) {
                if let Some(node) = self.prob(kind, depth, under_mie) {
                    return Some(node);
                }
            }
        }
        if self.regular_left == 0 {
            return None;
        }
        self.regular_left -= 1;
        Some(self.regular(depth))
    }

    fn prob(&mut self, kind: ProbKind, depth: usize, under_mie: bool) -> Option<PNode> {
        let budget = self.params.config_budget;
        let mut k = self.rng.gen_range(1..=self.params.max_children.max(1));
        let factor = |k: usize| -> u128 {
            match kind {
                ProbKind::Ind => 1u128 << k,
                ProbKind::Mux => k as u128 + 1,
                _ => 1,
            }
        };
        while k > 0 && self.configs.saturating_mul(factor(k)) > budget {
            k -= 1;
        }
        if k == 0 {
            return None;
        }
        self.prob_left -= 1;
        self.configs = self.configs.saturating_mul(factor(k));
        let node_kind = match kind {
            ProbKind::Det => NodeKind::Det,
            ProbKind::Ind => NodeKind::Ind,
            ProbKind::Mux => NodeKind::Mux,
            ProbKind::Cie => NodeKind::Cie,
            ProbKind::Fie => NodeKind::Fie,
            ProbKind::Mie => NodeKind::Mie,
        };
        let under_mie = under_mie || kind == ProbKind::Mie;
        let mut kids = Vec::new();
        for _ in 0..k {
            if let Some(c) = self.child(depth + 1, Some(&node_kind), under_mie) {
                kids.push(c);
            }
        }
        if kids.is_empty() {
            if self.regular_left == 0 {
                return Some(PNode { kind: node_kind, children: Vec::new() });
            }
            self.regular_left -= 1;
            kids.push(self.regular(depth + 1));
        }
        let mux_probs = if kind == ProbKind::Mux { random_weights(self.rng, kids.len(), true) } else { Vec::new() };
        let children = kids
            .into_iter()
            .enumerate()
            .map(|(i, child)| {
                let annotation = match kind {
                    ProbKind::Det => Annotation::None,
                    ProbKind::Ind => Annotation::Prob(random_prob(self.rng)),
                    ProbKind::Mux => Annotation::Prob(mux_probs[i].clone()),
                    ProbKind::Cie => Annotation::Conj(self.conjunction()),
                    ProbKind::Fie => Annotation::Formula(self.formula(2)),
                    ProbKind::Mie => {
                        let (id, event) = self.all_events.choose(self.rng).expect("events exist").clone();
                        let outcomes = event.outcomes();
                        let (value, _) = outcomes.choose(self.rng).expect("nonempty").clone();
                        Annotation::Atom { event: id, value }
                    }
                };
                PEdge { annotation, child }
            })
            .collect::<Vec<_>>();
        Some(PNode { kind: node_kind, children })
    }

    fn literal(&mut self) -> Literal {
        let e = self.bool_events.choose(self.rng).expect("boolean events exist").clone();
        if self.rng.gen_bool(0.5) {
            Literal::pos(e)
        } else {
            Literal::neg(e)
        }
    }

    fn conjunction(&mut self) -> Vec<Literal> {
        let k = self.rng.gen_range(1..=2);
        (0..k).map(|_| self.literal()).collect()
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.4) {
            return Formula::Lit(self.literal());
        }
        match self.rng.gen_range(0..3) {
            0 => Formula::And(vec![self.formula(depth - 1), self.formula(depth - 1)]),
            1 => Formula::Or(vec![self.formula(depth - 1), self.formula(depth - 1)]),
            _ => match self.formula(depth - 1) {
                Formula::Lit(l) => Formula::Lit(Literal { positive: !l.positive, ..l }),
                f => Formula::Not(Box::new(f)),
            },
        }
    }
}

/// A probability in `(0, 1)` with a small denominator.
pub fn random_prob(rng: &mut impl Rng) -> Rational {
    let d = rng.gen_range(2..=5);
    ratio(rng.gen_range(1..d), d)
}

/// `k` positive weights normalized to sum to 1, or to less than 1 when
/// `residual` (forced when `k == 1`, so every weight stays below 1).
fn random_weights(rng: &mut impl Rng, k: usize, residual: bool) -> Vec<Rational> {
    let w: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
    let rest = if residual && (k == 1 || rng.gen_bool(0.5)) { rng.gen_range(1..=2) } else { 0 };
    let total: i64 = w.iter().sum::<i64>() + rest;
    w.into_iter().map(|x| ratio(x, total)).collect()
}

/// A world of `d` drawn by choosing uniformly among the options of every
/// random choice (each option has nonzero probability).
pub fn sample_world(rng: &mut impl Rng, d: &PDocument) -> XNode {
    let space = ChoiceSpace::new(d);
    let choice: Vec<usize> = space.radix().into_iter().map(|r| rng.gen_range(0..r)).collect();
    space.evaluate(&choice, None)
}

/// A small random edit of `w`: relabel a node, drop a leaf, duplicate a
/// subtree, or swap two siblings.
pub fn perturb(rng: &mut impl Rng, w: &XNode) -> XNode {
    let size = w.size();
    let target = rng.gen_range(0..size);
    let op = rng.gen_range(0..4);
    let mut counter = 0;
    fn go(n: &XNode, target: usize, op: usize, counter: &mut usize, rng: &mut impl Rng) -> XNode {
        let me = *counter;
        *counter += 1;
        let mut kids: Vec<XNode> = n.children.iter().map(|c| go(c, target, op, counter, rng)).collect();
        let mut label = n.label.clone();
        if me == target {
            match op {
                0 => label = LABELS[rng.gen_range(0..4)].into(),
                1 if !kids.is_empty() => {
                    let i = rng.gen_range(0..kids.len());
                    if kids[i].children.is_empty() {
                        kids.remove(i);
                    } else {
                        kids[i].children.clear();
                    }
                }
                2 if !kids.is_empty() => {
                    let i = rng.gen_range(0..kids.len());
                    kids.push(kids[i].clone());
                }
                3 if kids.len() >= 2 => kids.swap(0, 1),
                _ => kids.push(XNode::leaf(LABELS[rng.gen_range(0..4)])),
            }
        }
        XNode::new(label, kids)
    }
    go(w, target, op, &mut counter, rng)
}

/// Candidate worlds for testing `d`: roughly half sampled from the support,
/// the rest perturbations of sampled worlds.
pub fn candidate_worlds(rng: &mut impl Rng, d: &PDocument, count: usize) -> Vec<XNode> {
    (0..count)
        .map(|i| {
            let w = sample_world(rng, d);
            if i % 2 == 0 {
                w
            } else {
                perturb(rng, &w)
            }
        })
        .collect()
}

/// Random k-CNF with distinct variables per clause.
pub fn random_cnf(rng: &mut impl Rng, vars: usize, clauses: usize, k: usize) -> CnfFormula {
    let k = k.min(vars).max(1);
    let all: Vec<i32> = (1..=vars as i32).collect();
    let cs = (0..clauses)
        .map(|_| {
            all.choose_multiple(rng, k).map(|&v| if rng.gen_bool(0.5) { v } else { -v }).collect::<Vec<_>>()
        })
        .collect();
    CnfFormula::new(vars, cs)
}

/// Random exact-cover instance with universe `x1..xm` and `n` nonempty sets.
/// One set in two is carved from a hidden partition so that yes-instances are common.
pub fn random_exact_cover(rng: &mut impl Rng, m: usize, n: usize) -> ExactCoverInstance {
    let universe: Vec<String> = (1..=m.max(1)).map(|i| format!("x{i}")).collect();
    let mut shuffled = universe.clone();
    shuffled.shuffle(rng);
    let mut sets: Vec<Vec<String>> = Vec::new();
    let mut rest = shuffled.as_slice();
    while !rest.is_empty() && sets.len() < n.div_ceil(2) {
        let take = rng.gen_range(1..=rest.len().min(3));
        sets.push(rest[..take].to_vec());
        rest = &rest[take..];
    }
    if !rest.is_empty() && rng.gen_bool(0.5) {
        if let Some(last) = sets.last_mut() {
            last.extend(rest.iter().cloned());
        }
    }
    while sets.len() < n {
        let k = rng.gen_range(1..=universe.len().min(3));
        sets.push(universe.choose_multiple(rng, k).cloned().collect());
    }
    sets.shuffle(rng);
    ExactCoverInstance::new(universe, sets).expect("generated sets are valid")
}

/// Random bipartite graph on `n + n` vertices, each edge present with probability `p`.
pub fn random_bipartite(rng: &mut impl Rng, n: usize, p: f64) -> BipartiteGraph {
    let edges = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    BipartiteGraph::new(n, n, edges)
}

/// Number of probabilistic nodes of a document.
pub fn prob_node_count(d: &PDocument) -> usize {
    fn go(n: &PNode) -> usize {
        usize::from(!n.kind.is_regular()) + n.children.iter().map(|e| go(&e.child)).sum::<usize>()
    }
    go(&d.root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{classify, validate};
    use rand::SeedableRng;

    #[test]
    fn documents_are_valid_and_within_class() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let classes: [&[ProbKind]; 6] = [
            &[ProbKind::Ind],
            &[ProbKind::Mux],
            &[ProbKind::Mux, ProbKind::Ind, ProbKind::Det],
            &[ProbKind::Mie],
            &[ProbKind::Cie, ProbKind::Ind],
            &ProbKind::ALL,
        ];
        for kinds in classes {
            for _ in 0..100 {
                let params = DocParams::new(kinds);
                let d = random_document(&mut rng, &params);
                assert!(validate(&d).is_empty(), "{:?}", validate(&d));
                assert!(classify(&d).unwrap().within(kinds));
                assert!(prob_node_count(&d) <= params.max_prob_nodes);
                assert!(ChoiceSpace::new(&d).count() <= params.config_budget);
            }
        }
    }

    #[test]
    fn no_ind_under_mux_respected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let params = DocParams::new(&[ProbKind::Mux, ProbKind::Ind]).no_ind_under_mux();
        for _ in 0..200 {
            assert!(classify(&random_document(&mut rng, &params)).unwrap().no_ind_under_mux);
        }
    }

    #[test]
    fn instances() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = random_cnf(&mut rng, 5, 7, 3);
        assert_eq!(f.clauses().len(), 7);
        assert!(f.clauses().iter().all(|c| c.len() == 3));
        let i = random_exact_cover(&mut rng, 6, 5);
        assert_eq!(i.sets().len(), 5);
        assert_eq!(random_bipartite(&mut rng, 3, 1.0), BipartiteGraph::complete(3));
    }
}
