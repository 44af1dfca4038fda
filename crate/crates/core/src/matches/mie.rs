use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{distinct_images, filter_matches_order, validate_match, CandidateMatch};
use crate::model::{classify, Annotation, EventId, NodeKind, OutcomeValue, PDocument, ProbKind, Rational, XDocument};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomPolarity {
    Eq,
    Neq,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintAtom {
    pub event: EventId,
    pub value: OutcomeValue,
    pub polarity: AtomPolarity,
}

/// Conditions on the events under which a match is realized: every `Eq` atom
/// keeps an image node, every `Neq` atom drops a node outside the image.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchConstraint {
    pub atoms: BTreeSet<ConstraintAtom>,
    /// Set when a regular node outside the image hangs directly below the image.
    pub infeasible: bool,
}

impl MatchConstraint {
    /// Probability that all atoms hold; events are independent so this is a
    /// product over events.
    pub fn probability(&self, d: &PDocument) -> Rational {
        if self.infeasible {
            return Rational::zero();
        }
        let mut per_event: BTreeMap<&str, Vec<&ConstraintAtom>> = BTreeMap::new();
        for a in &self.atoms {
            per_event.entry(a.event.as_str()).or_default().push(a);
        }
        let mut p = Rational::one();
        for (event, atoms) in per_event {
            let Some(ev) = d.events.get(event) else { return Rational::zero() };
            let mass: Rational = ev
                .outcomes()
                .into_iter()
                .filter(|(o, _)| {
                    atoms.iter().all(|a| match a.polarity {
                        AtomPolarity::Eq => &a.value == o,
                        AtomPolarity::Neq => &a.value != o,
                    })
                })
                .map(|(_, q)| q)
                .sum();
            p *= mass;
        }
        p
    }
}

/// The constraint realizing exactly the image of `f` in an `mie` document.
pub fn match_constraint_mie(d: &PDocument, f: &CandidateMatch) -> Result<MatchConstraint> {
    let profile = classify(d)?;
    if !profile.within(&[ProbKind::Mie]) {
        return Err(Error::UnsupportedClass { op: "match_constraint_mie", found: profile.describe() });
    }
    let ix = d.index();
    let image = f.image();
    let mut c = MatchConstraint::default();
    for &x in &image {
        for &y in ix.children(x) {
            match ix.kind(y) {
                NodeKind::Regular(_) if !image.contains(&y) => c.infeasible = true,
                NodeKind::Mie => {
                    for (k, &z) in ix.children(y).iter().enumerate() {
                        let Annotation::Atom { event, value } = &ix.node(y).children[k].annotation else {
                            continue;
                        };
                        let polarity = if image.contains(&z) { AtomPolarity::Eq } else { AtomPolarity::Neq };
                        c.atoms.insert(ConstraintAtom { event: event.clone(), value: value.clone(), polarity });
                    }
                }
                _ => {}
            }
        }
    }
    Ok(c)
}

/// `D(W)` for an `mie` document given its candidate matches, in polynomial time.
pub fn prob_explicit_mie(d: &PDocument, w: &XDocument, ms: &[CandidateMatch]) -> Result<Rational> {
    let profile = classify(d)?;
    if !profile.within(&[ProbKind::Mie]) {
        return Err(Error::UnsupportedClass { op: "prob_explicit_mie", found: profile.describe() });
    }
    for f in ms {
        validate_match(d, w, f)?;
    }
    let ms = filter_matches_order(d, w, ms);
    let mut total = Rational::zero();
    for f in distinct_images(&ms) {
        total += match_constraint_mie(d, f)?.probability(d);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matches::enumerate_matches;
    use crate::model::{ratio, Event, EventTable, PNode, XNode};
    use crate::oracle::world_probability_bf;

    fn atom(e: &str, v: &str, polarity: AtomPolarity) -> ConstraintAtom {
        ConstraintAtom { event: e.into(), value: v.into(), polarity }
    }

    fn two_singletons() -> (PDocument, XDocument) {
        let d = PDocument::new(
            PNode::regular(
                "⊤",
                vec![PNode::mie(vec![
                    (("e1".into(), "t".into()), PNode::leaf("a")),
                    (("e2".into(), "t".into()), PNode::leaf("a")),
                ])],
            ),
            EventTable::new().with("e1", Event::Bool(ratio(1, 2))).with("e2", Event::Bool(ratio(1, 2))),
            false,
        );
        (d, XDocument::new(XNode::new("⊤", vec![XNode::leaf("a")]), false))
    }

    #[test]
    fn constraint_of_first_singleton() {
        let (d, w) = two_singletons();
        let ms = enumerate_matches(&d, &w, 10).unwrap();
        let c = match_constraint_mie(&d, &ms[0]).unwrap();
        let expected: BTreeSet<_> =
            [atom("e1", "t", AtomPolarity::Eq), atom("e2", "t", AtomPolarity::Neq)].into_iter().collect();
        assert_eq!(c.atoms, expected);
        assert!(!c.infeasible);
        assert_eq!(prob_explicit_mie(&d, &w, &ms).unwrap(), ratio(1, 2));
        assert_eq!(prob_explicit_mie(&d, &w, &[]).unwrap(), ratio(0, 1));
    }

    #[test]
    fn dropped_regular_child_is_infeasible() {
        let d = PDocument::new(
            PNode::regular("a", vec![PNode::leaf("b"), PNode::mie(vec![(("e".into(), "t".into()), PNode::leaf("c"))])]),
            EventTable::new().with("e", Event::Bool(ratio(1, 3))),
            false,
        );
        let w = XDocument::new(XNode::new("a", vec![XNode::leaf("c")]), false);
        let f = CandidateMatch::new(vec![0, 3]);
        assert!(match_constraint_mie(&d, &f).unwrap().infeasible);
        assert_eq!(prob_explicit_mie(&d, &w, &[f]).unwrap(), ratio(0, 1));
    }

    #[test]
    fn transparent_mie_outside_the_image() {
        let d = PDocument::new(
            PNode::regular("a", vec![PNode::mie(vec![(("e".into(), "t".into()), PNode::leaf("b"))])]),
            EventTable::new().with("e", Event::Bool(ratio(1, 3))),
            false,
        );
        let w = XDocument::new(XNode::leaf("a"), false);
        let ms = enumerate_matches(&d, &w, 10).unwrap();
        assert_eq!(prob_explicit_mie(&d, &w, &ms).unwrap(), ratio(2, 3));
        assert_eq!(world_probability_bf(&d, &w).unwrap(), ratio(2, 3));
    }

    #[test]
    fn contradictory_atoms() {
        let d = PDocument::new(
            PNode::regular(
                "a",
                vec![PNode::mie(vec![
                    (("e".into(), "x".into()), PNode::leaf("b")),
                    (("e".into(), "y".into()), PNode::leaf("c")),
                ])],
            ),
            EventTable::new().with("e", Event::Enum(vec![("x".into(), ratio(1, 2)), ("y".into(), ratio(1, 2))])),
            false,
        );
        let w = XDocument::new(XNode::new("a", vec![XNode::leaf("b"), XNode::leaf("c")]), false);
        let ms = enumerate_matches(&d, &w, 10).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(prob_explicit_mie(&d, &w, &ms).unwrap(), ratio(0, 1));
    }
}
