//! Probability from the set of candidate matches, for a local document and
//! for an mie document.
//!
//! cargo run --example explicit_matches

use prxml::format::{display_probability, parse_prxml, parse_xdoc, serialize_matches};
use prxml::matches::{enumerate_matches, prob_explicit_local, prob_explicit_mie, DEFAULT_MATCH_CAP};
use prxml::oracle::world_probability_bf;

const LOCAL: &str = r#"
(prxml (events) (ordered false)
  (node "a" (ind (1/2 (node "b")) (1/3 (node "b")) (1/4 (node "c")))))
"#;

const MIE: &str = r#"
(prxml (events (colour enum (red 1/2) (green 1/3) (blue 1/6))) (ordered false)
  (node "a" (mie ((colour red) (node "b")) ((colour green) (node "b")) ((colour blue) (node "c")))))
"#;

fn main() -> prxml::Result<()> {
    let w = parse_xdoc(r#"(xml (ordered false) (node "a" (node "b")))"#)?;
    let d = parse_prxml(LOCAL)?;
    let ms = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP)?;
    print!("{}", serialize_matches(&ms));
    let p = prob_explicit_local(&d, &w, &ms)?;
    assert_eq!(p, world_probability_bf(&d, &w)?);
    println!("local: {}", display_probability(&p));

    let d = parse_prxml(MIE)?;
    let ms = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP)?;
    let p = prob_explicit_mie(&d, &w, &ms)?;
    assert_eq!(p, world_probability_bf(&d, &w)?);
    println!("mie: {}", display_probability(&p));
    Ok(())
}
