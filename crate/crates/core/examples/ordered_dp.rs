//! Exact probability of an ordered world in a mux/ind/det document, compared
//! with brute force.
//!
//! cargo run --example ordered_dp

use prxml::algorithms::prob_ordered_local;
use prxml::format::{display_probability, parse_prxml, parse_xdoc};
use prxml::oracle::world_probability_bf;

const DOC: &str = r#"
(prxml (events) (ordered true)
  (node "playlist"
    (ind (1/2 (node "song")) (3/4 (node "song")) (1/3 (node "ad")))
    (mux (1/2 (node "song")) (1/4 (det (node "ad") (node "song"))))))
"#;

const WORLD: &str = r#"(xml (ordered true) (node "playlist" (node "song") (node "ad") (node "song")))"#;

fn main() -> prxml::Result<()> {
    let d = parse_prxml(DOC)?;
    let w = parse_xdoc(WORLD)?;
    let dp = prob_ordered_local(&d, &w)?;
    assert_eq!(dp, world_probability_bf(&d, &w)?);
    println!("D(W) = {}", display_probability(&dp));
    Ok(())
}
