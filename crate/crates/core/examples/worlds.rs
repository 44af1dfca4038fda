//! Enumerate the possible worlds of a small unordered document.
//!
//! cargo run --example worlds

use prxml::format::{display_probability, parse_prxml};
use prxml::oracle::{canonical_string, enumerate_worlds};

const DOC: &str = r#"
(prxml
  (events (rain bool 1/3))
  (ordered false)
  (node "day"
    (ind (1/2 (node "walk")) (1/2 (node "walk")))
    (cie ((and rain) (node "umbrella")) ((and (not rain)) (node "hat")))))
"#;

fn main() -> prxml::Result<()> {
    let d = parse_prxml(DOC)?;
    let dist = enumerate_worlds(&d)?;
    for (w, p) in dist.iter() {
        println!("{:<40} {}", canonical_string(w, false), display_probability(p));
    }
    println!("total {}", dist.total());
    Ok(())
}
