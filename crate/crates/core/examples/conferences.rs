//! The conference document: probability of the full world and of the bare root.
//!
//! cargo run --example conferences

use prxml::fixtures::{conferences, conferences_full_world, conferences_root_world};
use prxml::format::{display_probability, serialize_prxml};
use prxml::matches::{enumerate_matches, prob_explicit_conditioned, DEFAULT_MATCH_CAP};
use prxml::oracle::world_probability_bf;

fn main() -> prxml::Result<()> {
    let d = conferences();
    print!("{}", serialize_prxml(&d));
    for (name, w) in [("both conferences", conferences_full_world()), ("root only", conferences_root_world())] {
        let oracle = world_probability_bf(&d, &w)?;
        let ms = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP)?;
        let explicit = prob_explicit_conditioned(&d, &w, &ms)?;
        assert_eq!(oracle, explicit);
        println!("{name}: {}", display_probability(&oracle));
    }
    Ok(())
}
