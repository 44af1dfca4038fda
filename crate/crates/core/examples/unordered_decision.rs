//! Decide possibility for unordered ind and mux documents without enumerating worlds.
//!
//! cargo run --example unordered_decision

use prxml::algorithms::poss_unordered_single;
use prxml::format::{parse_prxml, parse_xdoc};

const DOC: &str = r#"
(prxml (events) (ordered false)
  (node "team"
    (ind (1/2 (node "dev" (node "rust"))) (1/2 (node "dev" (node "go"))) (1/2 (node "dev")))
    (ind (9/10 (node "lead")))))
"#;

fn main() -> prxml::Result<()> {
    let d = parse_prxml(DOC)?;
    for world in [
        r#"(xml (ordered false) (node "team" (node "dev") (node "lead") (node "dev" (node "go"))))"#,
        r#"(xml (ordered false) (node "team" (node "dev" (node "go")) (node "dev" (node "go"))))"#,
        r#"(xml (ordered false) (node "team"))"#,
    ] {
        let w = parse_xdoc(world)?;
        println!("{:<5} {world}", poss_unordered_single(&d, &w)?);
    }
    Ok(())
}
