use super::*;
use crate::fixtures::{conferences, conferences_full_world, conferences_root_world};
use crate::model::{ratio, Event, EventTable, Literal, PNode};

#[test]
fn conference_worlds() {
    let d = conferences();
    assert_eq!(world_probability_bf(&d, &conferences_full_world()).unwrap(), ratio(567, 1250));
    assert_eq!(world_probability_bf(&d, &conferences_root_world()).unwrap(), ratio(3, 50));
    let dist = enumerate_worlds(&d).unwrap();
    assert_eq!(dist.total(), ratio(1, 1));
    assert_eq!(dist.get(&conferences_full_world().root), ratio(567, 1250));
    // 2 conferences x (absent, no location, CO, ES) minus impossible mixes
    assert!(dist.len() > 4);
}

#[test]
fn configuration_count_and_cap() {
    let d = conferences();
    // event e, two ind edges, one mux with a zero residual
    let space = ChoiceSpace::new(&d);
    assert_eq!(space.count(), 2 * 2 * 2 * 2);
    let err = Oracle::with_cap(15).enumerate_worlds(&d).unwrap_err();
    assert!(matches!(err, Error::TooManyConfigurations { count: 16, cap: 15 }));
}

#[test]
fn configurations_round_trip() {
    let d = conferences();
    let mut total = Rational::zero();
    for (cfg, p) in Oracle::default().configurations(&d).unwrap() {
        assert_eq!(cfg.probability(&d).unwrap(), p);
        let w = apply_configuration(&d, &cfg).unwrap();
        assert!(check_configuration_yields(&d, &cfg, &w));
        total += p;
    }
    assert_eq!(total, ratio(1, 1));
}

#[test]
fn incomplete_configuration_rejected() {
    let d = conferences();
    let cfg = Configuration::default();
    assert!(matches!(apply_configuration(&d, &cfg), Err(Error::IncompleteConfiguration(_))));
}

#[test]
fn traced_ids_point_at_regular_nodes() {
    let d = conferences();
    let (cfg, _) = Oracle::default().configurations(&d).unwrap().next().unwrap();
    let (w, trace) = apply_configuration_traced(&d, &cfg).unwrap();
    assert_eq!(trace.len(), w.size());
    let ix = d.index();
    let wx = w.index();
    for (i, &id) in trace.iter().enumerate() {
        assert_eq!(ix.label(id), Some(wx.label(i)));
    }
}

#[test]
fn unordered_equality_is_bag_semantics() {
    let a = XDocument::new(XNode::new("r", vec![XNode::leaf("x"), XNode::leaf("y"), XNode::leaf("x")]), false);
    let b = XDocument::new(XNode::new("r", vec![XNode::leaf("x"), XNode::leaf("x"), XNode::leaf("y")]), false);
    let c = XDocument::new(XNode::new("r", vec![XNode::leaf("x"), XNode::leaf("y"), XNode::leaf("y")]), false);
    assert!(trees_equal(&a, &b, false));
    assert!(!trees_equal(&a, &b, true));
    assert!(!trees_equal(&a, &c, false));
}

#[test]
fn unordered_worlds_merge() {
    let root = PNode::regular(
        "r",
        vec![PNode::ind(vec![(ratio(1, 2), PNode::leaf("x")), (ratio(1, 2), PNode::leaf("x"))])],
    );
    let d = PDocument::new(root, EventTable::new(), false);
    let one_x = XDocument::new(XNode::new("r", vec![XNode::leaf("x")]), false);
    assert_eq!(world_probability_bf(&d, &one_x).unwrap(), ratio(1, 2));
    assert_eq!(enumerate_worlds(&d).unwrap().len(), 3);
}

#[test]
fn event_correlation() {
    let root = PNode::regular(
        "r",
        vec![
            PNode::cie(vec![(vec![Literal::pos("e")], PNode::leaf("a"))]),
            PNode::cie(vec![(vec![Literal::neg("e")], PNode::leaf("b"))]),
        ],
    );
    let d = PDocument::new(root, EventTable::new().with("e", Event::Bool(ratio(1, 3))), true);
    let both = XDocument::new(XNode::new("r", vec![XNode::leaf("a"), XNode::leaf("b")]), true);
    let only_a = XDocument::new(XNode::new("r", vec![XNode::leaf("a")]), true);
    assert_eq!(world_probability_bf(&d, &both).unwrap(), Rational::zero());
    assert_eq!(world_probability_bf(&d, &only_a).unwrap(), ratio(1, 3));
}
