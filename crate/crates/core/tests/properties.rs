use num_traits::{One, Zero};
use proptest::prelude::*;
use prxml::algorithms::{poss_unordered, prob_ordered_local, ClassCheck};
use prxml::format::{parse_prxml, parse_rational, parse_xdoc, format_rational, serialize_prxml, serialize_xdoc};
use prxml::matches::{enumerate_matches, prob_explicit_local, prob_explicit_mie, DEFAULT_MATCH_CAP};
use prxml::oracle::{enumerate_worlds, world_probability_bf};
use prxml::random::{candidate_worlds, random_document, random_xtree, DocParams, TreeShape};
use prxml::rewrite::{flatten_mux, mie_to_cie, mux_to_mie};
use prxml::{PDocument, ProbKind, Rational, XDocument, XNode};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn doc(seed: u64, kinds: &[ProbKind], ordered: bool) -> (PDocument, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = DocParams { labels: 2, ..DocParams::new(kinds) }.ordered(ordered);
    (random_document(&mut rng, &params), rng)
}

fn shuffled(rng: &mut ChaCha8Rng, w: &XNode) -> XNode {
    let mut kids: Vec<XNode> = w.children.iter().map(|c| shuffled(rng, c)).collect();
    kids.shuffle(rng);
    XNode::new(w.label.clone(), kids)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn documents_round_trip(seed: u64, ordered: bool) {
        let (d, _) = doc(seed, &ProbKind::ALL, ordered);
        let text = serialize_prxml(&d);
        prop_assert_eq!(parse_prxml(&text).unwrap(), d);
    }

    #[test]
    fn worlds_round_trip(seed: u64, ordered: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = TreeShape { max_nodes: 12, max_children: 4, labels: 3 };
        let w = XDocument::new(random_xtree(&mut rng, &shape), ordered);
        prop_assert_eq!(parse_xdoc(&serialize_xdoc(&w)).unwrap(), w);
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = Rational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }

    #[test]
    fn support_probabilities_are_positive(seed: u64, ordered: bool) {
        let (d, _) = doc(seed, &ProbKind::ALL, ordered);
        let dist = enumerate_worlds(&d).unwrap();
        prop_assert!(dist.total().is_one());
        for (w, p) in dist.iter() {
            prop_assert!(!p.is_zero());
            prop_assert_eq!(&world_probability_bf(&d, &XDocument::new(w.clone(), ordered)).unwrap(), p);
        }
    }

    #[test]
    fn unordered_answers_ignore_sibling_order(seed: u64) {
        let (d, mut rng) = doc(seed, &[ProbKind::Ind], false);
        for w in candidate_worlds(&mut rng, &d, 2) {
            let a = XDocument::new(w.clone(), false);
            let b = XDocument::new(shuffled(&mut rng, &w), false);
            prop_assert_eq!(poss_unordered(&d, &a, ClassCheck::Strict).unwrap(), poss_unordered(&d, &b, ClassCheck::Strict).unwrap());
            prop_assert_eq!(world_probability_bf(&d, &a).unwrap(), world_probability_bf(&d, &b).unwrap());
        }
    }

    #[test]
    fn ordered_dp_matches_oracle(seed: u64) {
        let (d, mut rng) = doc(seed, &[ProbKind::Mux, ProbKind::Ind, ProbKind::Det], true);
        for w in candidate_worlds(&mut rng, &d, 3) {
            let w = XDocument::new(w, true);
            prop_assert_eq!(prob_ordered_local(&d, &w).unwrap(), world_probability_bf(&d, &w).unwrap());
        }
    }

    #[test]
    fn explicit_routes_match_oracle(seed: u64, ordered: bool) {
        let (d, mut rng) = doc(seed, &[ProbKind::Mux, ProbKind::Ind, ProbKind::Det], ordered);
        for w in candidate_worlds(&mut rng, &d, 2) {
            let w = XDocument::new(w, ordered);
            let ms = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP).unwrap();
            prop_assert_eq!(prob_explicit_local(&d, &w, &ms).unwrap(), world_probability_bf(&d, &w).unwrap());
        }
        let (d, mut rng) = doc(seed, &[ProbKind::Mie], ordered);
        for w in candidate_worlds(&mut rng, &d, 2) {
            let w = XDocument::new(w, ordered);
            let ms = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP).unwrap();
            prop_assert_eq!(prob_explicit_mie(&d, &w, &ms).unwrap(), world_probability_bf(&d, &w).unwrap());
        }
    }

    #[test]
    fn rewrites_preserve_the_distribution(seed: u64, ordered: bool) {
        let (d, _) = doc(seed, &[ProbKind::Mux], ordered);
        let expected = enumerate_worlds(&d).unwrap();
        let flat = flatten_mux(&d).unwrap();
        let mie = mux_to_mie(&d).unwrap();
        let cie = mie_to_cie(&mie).unwrap();
        for rewritten in [&flat, &mie, &cie] {
            prop_assert_eq!(&enumerate_worlds(rewritten).unwrap(), &expected);
        }
    }
}
