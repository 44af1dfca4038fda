use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Zero};

use super::{Annotation, DocIndex, Event, EventId, NodeId, NodeKind, PDocument, PEdge, PNode, Rational};
use crate::{Error, Result};

/// Kinds of probabilistic nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProbKind {
    Det,
    Ind,
    Mux,
    Cie,
    Fie,
    Mie,
}

impl ProbKind {
    pub const ALL: [ProbKind; 6] =
        [ProbKind::Det, ProbKind::Ind, ProbKind::Mux, ProbKind::Cie, ProbKind::Fie, ProbKind::Mie];

    pub fn name(self) -> &'static str {
        match self {
            ProbKind::Det => "det",
            ProbKind::Ind => "ind",
            ProbKind::Mux => "mux",
            ProbKind::Cie => "cie",
            ProbKind::Fie => "fie",
            ProbKind::Mie => "mie",
        }
    }
}

impl fmt::Display for ProbKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A broken document invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    RootNotRegular,
    EmptyLabel,
    ReservedLabel,
    /// The edge annotation does not fit the kind of its parent node.
    AnnotationMismatch,
    EdgeProbNotOpenInterval,
    MuxSumExceedsOne,
    UnknownEvent(EventId),
    UnknownOutcome { event: EventId, value: String },
    NonBooleanLiteral(EventId),
    /// A `mie` node reachable from another `mie` node through probabilistic nodes only.
    MieHierarchy,
    InvalidEvent { event: EventId, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Offending node (preorder id); `None` for event-table problems.
    pub node: Option<NodeId>,
    pub rule: Rule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.node {
            write!(f, "node {n}: ")?;
        }
        match &self.rule {
            Rule::RootNotRegular => f.write_str("root must be a regular node"),
            Rule::EmptyLabel => f.write_str("empty label"),
            Rule::ReservedLabel => f.write_str("labels starting with `#` are reserved"),
            Rule::AnnotationMismatch => f.write_str("edge annotation does not fit the parent kind"),
            Rule::EdgeProbNotOpenInterval => f.write_str("edge probability must lie strictly between 0 and 1"),
            Rule::MuxSumExceedsOne => f.write_str("mux probabilities sum to more than 1"),
            Rule::UnknownEvent(e) => write!(f, "unknown event `{e}`"),
            Rule::UnknownOutcome { event, value } => write!(f, "event `{event}` has no outcome `{value}`"),
            Rule::NonBooleanLiteral(e) => write!(f, "literal over non-Boolean event `{e}`"),
            Rule::MieHierarchy => f.write_str("mie node below another mie node"),
            Rule::InvalidEvent { event, reason } => write!(f, "event `{event}`: {reason}"),
        }
    }
}

/// Checks every structural and event-table invariant. An empty result means valid.
pub fn validate(doc: &PDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    check_events(doc, &mut out);
    let ix = doc.index();
    if !doc.root.kind.is_regular() {
        out.push(Violation { node: Some(0), rule: Rule::RootNotRegular });
    }
    for id in ix.ids() {
        check_node(doc, &ix, id, &mut out);
    }
    out
}

fn check_events(doc: &PDocument, out: &mut Vec<Violation>) {
    let mut bad = |event: &EventId, reason: &str| {
        out.push(Violation {
            node: None,
            rule: Rule::InvalidEvent { event: event.clone(), reason: reason.to_owned() },
        })
    };
    for (id, event) in doc.events.iter() {
        match event {
            Event::Bool(p) => {
                if *p < Rational::zero() || *p > Rational::one() {
                    bad(id, "probability outside [0, 1]");
                }
            }
            Event::Enum(outcomes) => {
                if outcomes.is_empty() {
                    bad(id, "no outcomes");
                    continue;
                }
                let mut seen = HashSet::new();
                if !outcomes.iter().all(|(v, _)| seen.insert(v)) {
                    bad(id, "duplicate outcome");
                }
                if outcomes.iter().any(|(_, p)| *p <= Rational::zero() || *p > Rational::one()) {
                    bad(id, "outcome probability outside (0, 1]");
                }
                if outcomes.iter().map(|(_, p)| p).sum::<Rational>() != Rational::one() {
                    bad(id, "outcome probabilities do not sum to 1");
                }
            }
        }
    }
}

fn check_node(doc: &PDocument, ix: &DocIndex<'_>, id: NodeId, out: &mut Vec<Violation>) {
    let node = ix.node(id);
    let mut push = |rule: Rule| out.push(Violation { node: Some(id), rule });
    if let NodeKind::Regular(label) = &node.kind {
        if label.as_str().is_empty() {
            push(Rule::EmptyLabel);
        } else if label.is_synthetic() {
            push(Rule::ReservedLabel);
        }
    }
    let mut mux_sum = Rational::zero();
    for edge in &node.children {
        match (&node.kind, &edge.annotation) {
            (NodeKind::Regular(_) | NodeKind::Det, Annotation::None) => {}
            (NodeKind::Ind | NodeKind::Mux, Annotation::Prob(p)) => {
                if *p <= Rational::zero() || *p >= Rational::one() {
                    push(Rule::EdgeProbNotOpenInterval);
                }
                mux_sum += p;
            }
            (NodeKind::Cie, Annotation::Conj(lits)) => {
                for lit in lits {
                    check_literal(doc, &lit.event, &mut push);
                }
            }
            (NodeKind::Fie, Annotation::Formula(f)) => {
                for lit in f.literals() {
                    check_literal(doc, &lit.event, &mut push);
                }
            }
            (NodeKind::Mie, Annotation::Atom { event, value }) => match doc.events.get(event) {
                None => push(Rule::UnknownEvent(event.clone())),
                Some(e) if !e.has_outcome(value) => {
                    push(Rule::UnknownOutcome { event: event.clone(), value: value.clone() })
                }
                Some(_) => {}
            },
            _ => push(Rule::AnnotationMismatch),
        }
    }
    if node.kind == NodeKind::Mux && mux_sum > Rational::one() {
        push(Rule::MuxSumExceedsOne);
    }
    if node.kind == NodeKind::Mie {
        // mie nodes reachable through probabilistic nodes only
        let mut stack: Vec<NodeId> = ix.children(id).to_vec();
        while let Some(n) = stack.pop() {
            match ix.kind(n) {
                NodeKind::Regular(_) => {}
                NodeKind::Mie => out.push(Violation { node: Some(n), rule: Rule::MieHierarchy }),
                _ => stack.extend(ix.children(n)),
            }
        }
    }
}

fn check_literal(doc: &PDocument, event: &str, push: &mut impl FnMut(Rule)) {
    match doc.events.get(event) {
        None => push(Rule::UnknownEvent(event.to_owned())),
        Some(e) if !e.is_bool() => push(Rule::NonBooleanLiteral(event.to_owned())),
        Some(_) => {}
    }
}

/// Which probabilistic constructs a document uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassProfile {
    pub used: BTreeSet<ProbKind>,
    /// No `ind` node is a child of a `mux` node.
    pub no_ind_under_mux: bool,
    /// No `mux` node is a child of a `mux` node.
    pub no_mux_hierarchy: bool,
}

impl ClassProfile {
    /// Whether every used kind is among `allowed`.
    pub fn within(&self, allowed: &[ProbKind]) -> bool {
        self.used.iter().all(|k| allowed.contains(k))
    }

    pub fn is_local(&self) -> bool {
        self.within(&[ProbKind::Mux, ProbKind::Ind, ProbKind::Det])
    }

    pub fn describe(&self) -> String {
        if self.used.is_empty() {
            return "{}".to_owned();
        }
        let names: Vec<&str> = self.used.iter().map(|k| k.name()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// Computes the class profile of a valid document.
pub fn classify(doc: &PDocument) -> Result<ClassProfile> {
    let violations = validate(doc);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let mut profile =
        ClassProfile { used: BTreeSet::new(), no_ind_under_mux: true, no_mux_hierarchy: true };
    classify_node(&doc.root, &mut profile);
    Ok(profile)
}

fn classify_node(node: &PNode, profile: &mut ClassProfile) {
    if let Some(k) = node.kind.prob_kind() {
        profile.used.insert(k);
    }
    for child in node.child_nodes() {
        if node.kind == NodeKind::Mux {
            match child.kind {
                NodeKind::Ind => profile.no_ind_under_mux = false,
                NodeKind::Mux => profile.no_mux_hierarchy = false,
                _ => {}
            }
        }
        classify_node(child, profile);
    }
}

/// Removes probabilistic nodes without children, repeatedly, until none is left.
///
/// Such nodes produce nothing in every outcome, so the distribution is unchanged.
pub fn strip_probabilistic_leaves(doc: &PDocument) -> PDocument {
    PDocument { root: strip(&doc.root), events: doc.events.clone(), ordered: doc.ordered }
}

fn strip(node: &PNode) -> PNode {
    let children = node
        .children
        .iter()
        .map(|e| PEdge { annotation: e.annotation.clone(), child: strip(&e.child) })
        .filter(|e| e.child.kind.is_regular() || !e.child.children.is_empty())
        .collect();
    PNode { kind: node.kind.clone(), children }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{ratio, EventTable, Literal};

    fn doc(root: PNode) -> PDocument {
        PDocument::new(root, EventTable::new(), false)
    }

    #[test]
    fn conference_example_is_valid() {
        assert_eq!(validate(&fixtures::conferences()), vec![]);
    }

    #[test]
    fn mux_sum_above_one() {
        let d = doc(PNode::regular(
            "a",
            vec![PNode::mux(vec![(ratio(1, 2), PNode::leaf("b")), (ratio(2, 3), PNode::leaf("c"))])],
        ));
        assert_eq!(validate(&d), vec![Violation { node: Some(1), rule: Rule::MuxSumExceedsOne }]);
    }

    #[test]
    fn ind_probability_one_rejected() {
        let d = doc(PNode::regular("a", vec![PNode::ind(vec![(ratio(1, 1), PNode::leaf("b"))])]));
        assert_eq!(validate(&d), vec![Violation { node: Some(1), rule: Rule::EdgeProbNotOpenInterval }]);
    }

    #[test]
    fn root_and_label_rules() {
        let d = doc(PNode::det(vec![PNode::leaf("")]));
        let rules: Vec<Rule> = validate(&d).into_iter().map(|v| v.rule).collect();
        assert_eq!(rules, vec![Rule::RootNotRegular, Rule::EmptyLabel]);
        let d = doc(PNode::leaf("#3"));
        assert_eq!(validate(&d)[0].rule, Rule::ReservedLabel);
    }

    #[test]
    fn event_references_checked() {
        let events = EventTable::new()
            .with("x", Event::Enum(vec![("u".into(), ratio(1, 2)), ("v".into(), ratio(1, 2))]));
        let d = PDocument::new(
            PNode::regular(
                "a",
                vec![
                    PNode::cie(vec![(vec![Literal::pos("x"), Literal::neg("y")], PNode::leaf("b"))]),
                    PNode::mie(vec![(("x".into(), "w".into()), PNode::leaf("c"))]),
                ],
            ),
            events,
            true,
        );
        let rules: Vec<Rule> = validate(&d).into_iter().map(|v| v.rule).collect();
        assert_eq!(
            rules,
            vec![
                Rule::NonBooleanLiteral("x".into()),
                Rule::UnknownEvent("y".into()),
                Rule::UnknownOutcome { event: "x".into(), value: "w".into() },
            ]
        );
    }

    #[test]
    fn enum_event_must_sum_to_one() {
        let events = EventTable::new()
            .with("x", Event::Enum(vec![("u".into(), ratio(1, 2)), ("u".into(), ratio(1, 3))]));
        let d = PDocument::new(PNode::leaf("a"), events, true);
        assert_eq!(validate(&d).len(), 2);
    }

    #[test]
    fn mie_hierarchy_through_det() {
        let events = EventTable::new().with("e", Event::Bool(ratio(1, 2)));
        let inner = PNode::mie(vec![(("e".into(), "t".into()), PNode::leaf("c"))]);
        let d = PDocument::new(
            PNode::regular("a", vec![PNode::mie(vec![(("e".into(), "f".into()), PNode::det(vec![inner]))])]),
            events,
            true,
        );
        assert_eq!(validate(&d), vec![Violation { node: Some(3), rule: Rule::MieHierarchy }]);
    }

    #[test]
    fn annotation_mismatch() {
        let mut root = PNode::regular("a", vec![PNode::leaf("b")]);
        root.children[0].annotation = Annotation::Prob(ratio(1, 2));
        assert_eq!(validate(&doc(root))[0].rule, Rule::AnnotationMismatch);
    }

    #[test]
    fn classify_examples() {
        let p = classify(&fixtures::conferences()).unwrap();
        let expected: BTreeSet<ProbKind> =
            [ProbKind::Ind, ProbKind::Mux, ProbKind::Det, ProbKind::Cie].into_iter().collect();
        assert_eq!(p.used, expected);
        assert!(p.no_ind_under_mux);

        let p = classify(&doc(PNode::regular("a", vec![PNode::leaf("b")]))).unwrap();
        assert!(p.used.is_empty() && p.no_ind_under_mux && p.no_mux_hierarchy);

        let nested = doc(PNode::regular(
            "a",
            vec![PNode::mux(vec![
                (ratio(1, 2), PNode::ind(vec![(ratio(1, 2), PNode::leaf("b"))])),
                (ratio(1, 3), PNode::mux(vec![(ratio(1, 2), PNode::leaf("c"))])),
            ])],
        ));
        let p = classify(&nested).unwrap();
        assert!(!p.no_ind_under_mux && !p.no_mux_hierarchy);
    }

    #[test]
    fn classify_rejects_invalid() {
        assert!(matches!(classify(&doc(PNode::det(vec![]))), Err(Error::Invalid(_))));
    }

    #[test]
    fn strip_examples() {
        let d = doc(PNode::regular(
            "a",
            vec![PNode::ind(vec![]), PNode::leaf("b"), PNode::mux(vec![(ratio(1, 2), PNode::det(vec![]))])],
        ));
        let s = strip_probabilistic_leaves(&d);
        assert_eq!(s.root, PNode::regular("a", vec![PNode::leaf("b")]));
        assert_eq!(strip_probabilistic_leaves(&s), s);

        let d = doc(PNode::regular("a", vec![PNode::det(vec![])]));
        assert_eq!(strip_probabilistic_leaves(&d).root, PNode::leaf("a"));

        let fig = fixtures::conferences();
        assert_eq!(strip_probabilistic_leaves(&fig), fig);
    }
}
