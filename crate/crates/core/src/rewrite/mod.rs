//! Rewritings between classes that keep the world distribution unchanged.
//!
//! `mux` documents become `mie` documents with one fresh multivalued event per
//! `mux` node, and `mie` documents become `cie` documents by encoding each
//! multivalued event with a balanced tree of fresh Boolean events.

mod tree;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use tree::{event_decision_tree, DecisionTree};

use crate::model::{
    classify, Annotation, Event, EventTable, Literal, NodeKind, PDocument, PEdge, PNode, ProbKind, Rational,
};
use crate::{Error, Result};

/// Outcome name used for "no branch taken" by [`mux_to_mie`].
pub const RESIDUAL_OUTCOME: &str = "bot";

fn require(d: &PDocument, op: &'static str, allowed: &[ProbKind]) -> Result<()> {
    let profile = classify(d)?;
    if profile.within(allowed) {
        Ok(())
    } else {
        Err(Error::UnsupportedClass { op, found: profile.describe() })
    }
}

/// Merges every `mux` child of a `mux` node into its parent, multiplying
/// probabilities. Branch order is kept.
pub fn flatten_mux(d: &PDocument) -> Result<PDocument> {
    require(d, "flatten_mux", &[ProbKind::Mux])?;
    fn go(n: &PNode) -> PNode {
        let mut children = Vec::new();
        for e in &n.children {
            let child = go(&e.child);
            match (&n.kind, &child.kind, &e.annotation) {
                (NodeKind::Mux, NodeKind::Mux, Annotation::Prob(p)) => {
                    for g in child.children {
                        let annotation = match g.annotation {
                            Annotation::Prob(q) => Annotation::Prob(p * q),
                            other => other,
                        };
                        children.push(PEdge { annotation, child: g.child });
                    }
                }
                _ => children.push(PEdge { annotation: e.annotation.clone(), child }),
            }
        }
        PNode { kind: n.kind.clone(), children }
    }
    Ok(PDocument::new(go(&d.root), d.events.clone(), d.ordered))
}

/// Replaces each `mux` node (after [`flatten_mux`]) by an `mie` node over a
/// fresh event `muxN` with outcomes `v1..vk`, plus [`RESIDUAL_OUTCOME`] when
/// the branch probabilities sum below 1.
pub fn mux_to_mie(d: &PDocument) -> Result<PDocument> {
    let flat = flatten_mux(d)?;
    let mut events = flat.events.clone();
    let mut counter = 0;
    fn go(n: &PNode, events: &mut EventTable, counter: &mut usize) -> Result<PNode> {
        let mut children = Vec::with_capacity(n.children.len());
        if let NodeKind::Mux = n.kind {
            *counter += 1;
            let id = format!("mux{counter}");
            if events.contains(&id) {
                return Err(Error::NameCollision(id));
            }
            let mut outcomes = Vec::new();
            let mut rest = Rational::one();
            for (i, e) in n.children.iter().enumerate() {
                let value = format!("v{}", i + 1);
                if let Annotation::Prob(p) = &e.annotation {
                    rest -= p;
                    outcomes.push((value.clone(), p.clone()));
                }
                let annotation = Annotation::Atom { event: id.clone(), value };
                children.push(PEdge { annotation, child: go(&e.child, events, counter)? });
            }
            if rest > Rational::zero() {
                outcomes.push((RESIDUAL_OUTCOME.to_owned(), rest));
            }
            events.insert(id, Event::Enum(outcomes));
            return Ok(PNode { kind: NodeKind::Mie, children });
        }
        for e in &n.children {
            children.push(PEdge { annotation: e.annotation.clone(), child: go(&e.child, events, counter)? });
        }
        Ok(PNode { kind: n.kind.clone(), children })
    }
    let root = go(&flat.root, &mut events, &mut counter)?;
    Ok(PDocument::new(root, events, d.ordered))
}

/// Replaces each `mie` node by a `cie` node. A Boolean event keeps its name;
/// a multivalued event `e` is encoded by fresh Boolean events `e.bK` and each
/// atom becomes the conjunction of literals on the path to its outcome.
pub fn mie_to_cie(d: &PDocument) -> Result<PDocument> {
    require(d, "mie_to_cie", &[ProbKind::Mie])?;
    let mut events = EventTable::new();
    let mut paths: BTreeMap<(String, String), Vec<Literal>> = BTreeMap::new();
    for (id, event) in d.events.iter() {
        match event {
            Event::Bool(_) => {
                events.insert(id.clone(), event.clone());
                paths.insert((id.clone(), crate::model::events::TRUE.into()), vec![Literal::pos(id.as_str())]);
                paths.insert((id.clone(), crate::model::events::FALSE.into()), vec![Literal::neg(id.as_str())]);
            }
            Event::Enum(outcomes) => {
                let tree = event_decision_tree(id, outcomes)?;
                for (fresh, p) in tree.events() {
                    if d.events.contains(&fresh) || events.contains(&fresh) {
                        return Err(Error::NameCollision(fresh));
                    }
                    events.insert(fresh, Event::Bool(p));
                }
                for (value, lits) in tree.paths() {
                    paths.insert((id.clone(), value), lits);
                }
            }
        }
    }
    fn go(n: &PNode, paths: &BTreeMap<(String, String), Vec<Literal>>) -> PNode {
        let mie = matches!(n.kind, NodeKind::Mie);
        let children = n
            .children
            .iter()
            .map(|e| {
                let annotation = match &e.annotation {
                    Annotation::Atom { event, value } if mie => {
                        Annotation::Conj(paths.get(&(event.clone(), value.clone())).cloned().unwrap_or_default())
                    }
                    a => a.clone(),
                };
                PEdge { annotation, child: go(&e.child, paths) }
            })
            .collect();
        PNode { kind: if mie { NodeKind::Cie } else { n.kind.clone() }, children }
    }
    Ok(PDocument::new(go(&d.root, &paths), events, d.ordered))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ratio, PNode};
    use crate::oracle::enumerate_worlds;

    fn doc(root: PNode) -> PDocument {
        PDocument::new(PNode::regular("r", vec![root]), EventTable::new(), false)
    }

    fn probs(n: &PNode) -> Vec<Rational> {
        n.children
            .iter()
            .map(|e| match &e.annotation {
                Annotation::Prob(p) => p.clone(),
                _ => Rational::zero(),
            })
            .collect()
    }

    #[test]
    fn flatten_nested() {
        let d = doc(PNode::mux(vec![
            (ratio(1, 2), PNode::mux(vec![(ratio(1, 2), PNode::leaf("a")), (ratio(1, 2), PNode::leaf("b"))])),
            (ratio(1, 2), PNode::leaf("c")),
        ]));
        let f = flatten_mux(&d).unwrap();
        assert_eq!(probs(&f.root.children[0].child), vec![ratio(1, 4), ratio(1, 4), ratio(1, 2)]);
        assert_eq!(enumerate_worlds(&d).unwrap(), enumerate_worlds(&f).unwrap());
        assert_eq!(flatten_mux(&f).unwrap(), f);
        let d = doc(PNode::mux(vec![(ratio(1, 2), PNode::mux(vec![(ratio(1, 3), PNode::leaf("a"))]))]));
        let f = flatten_mux(&d).unwrap();
        assert_eq!(probs(&f.root.children[0].child), vec![ratio(1, 6)]);
        assert_eq!(enumerate_worlds(&d).unwrap(), enumerate_worlds(&f).unwrap());
    }

    #[test]
    fn mux_becomes_mie() {
        let d = doc(PNode::mux(vec![(ratio(1, 3), PNode::leaf("b")), (ratio(1, 3), PNode::leaf("c"))]));
        let m = mux_to_mie(&d).unwrap();
        assert_eq!(
            m.events.get("mux1"),
            Some(&Event::Enum(vec![
                ("v1".into(), ratio(1, 3)),
                ("v2".into(), ratio(1, 3)),
                (RESIDUAL_OUTCOME.into(), ratio(1, 3))
            ]))
        );
        assert_eq!(enumerate_worlds(&d).unwrap(), enumerate_worlds(&m).unwrap());
        let d = doc(PNode::mux(vec![(ratio(1, 2), PNode::leaf("b")), (ratio(1, 2), PNode::leaf("c"))]));
        match mux_to_mie(&d).unwrap().events.get("mux1") {
            Some(Event::Enum(o)) => assert_eq!(o.len(), 2),
            e => panic!("{e:?}"),
        }
        let plain = doc(PNode::leaf("x"));
        assert_eq!(mux_to_mie(&plain).unwrap(), plain);
    }

    #[test]
    fn collisions_and_classes() {
        let mut d = doc(PNode::mux(vec![(ratio(1, 2), PNode::leaf("b"))]));
        d.events.insert("mux1", Event::Bool(ratio(1, 2)));
        assert!(matches!(mux_to_mie(&d), Err(Error::NameCollision(_))));
        let d = doc(PNode::ind(vec![(ratio(1, 2), PNode::leaf("b"))]));
        assert!(matches!(mux_to_mie(&d), Err(Error::UnsupportedClass { .. })));
    }

    #[test]
    fn mie_becomes_cie() {
        let three = Event::Enum(vec![("v1".into(), ratio(1, 2)), ("v2".into(), ratio(1, 4)), ("v3".into(), ratio(1, 4))]);
        let root = PNode::mie(vec![
            (("e".into(), "v1".into()), PNode::leaf("a")),
            (("e".into(), "v2".into()), PNode::leaf("b")),
            (("e".into(), "v3".into()), PNode::leaf("c")),
            (("g".into(), "t".into()), PNode::leaf("d")),
            (("g".into(), "f".into()), PNode::leaf("e")),
        ]);
        let d = PDocument::new(
            PNode::regular("r", vec![root]),
            EventTable::new().with("e", three).with("g", Event::Bool(ratio(1, 3))),
            false,
        );
        let c = mie_to_cie(&d).unwrap();
        let conj: Vec<_> = c.root.children[0]
            .child
            .children
            .iter()
            .map(|e| match &e.annotation {
                Annotation::Conj(l) => l.clone(),
                a => panic!("{a:?}"),
            })
            .collect();
        assert_eq!(conj[0], vec![Literal::pos("e.b1")]);
        assert_eq!(conj[1], vec![Literal::neg("e.b1"), Literal::pos("e.b2")]);
        assert_eq!(conj[2], vec![Literal::neg("e.b1"), Literal::neg("e.b2")]);
        assert_eq!(conj[3], vec![Literal::pos("g")]);
        assert_eq!(conj[4], vec![Literal::neg("g")]);
        assert_eq!(c.events.get("e.b1"), Some(&Event::Bool(ratio(1, 2))));
        assert_eq!(c.events.get("e.b2"), Some(&Event::Bool(ratio(1, 2))));
        assert!(!c.events.contains("e"));
        assert_eq!(enumerate_worlds(&d).unwrap(), enumerate_worlds(&c).unwrap());
    }
}
