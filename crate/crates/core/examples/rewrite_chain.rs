//! Rewrite nested mux nodes into mie and then cie without changing the distribution.
//!
//! cargo run --example rewrite_chain

use prxml::format::{parse_prxml, serialize_prxml};
use prxml::oracle::enumerate_worlds;
use prxml::rewrite::{flatten_mux, mie_to_cie, mux_to_mie};

const DOC: &str = r#"
(prxml (events) (ordered true)
  (node "r"
    (mux (1/2 (mux (1/2 (node "a")) (1/2 (node "b"))))
         (1/5 (node "c"))
         (1/5 (node "d")))))
"#;

fn main() -> prxml::Result<()> {
    let d = parse_prxml(DOC)?;
    let flat = flatten_mux(&d)?;
    let mie = mux_to_mie(&d)?;
    let cie = mie_to_cie(&mie)?;
    let expected = enumerate_worlds(&d)?;
    for (name, doc) in [("flattened", &flat), ("mie", &mie), ("cie", &cie)] {
        assert_eq!(enumerate_worlds(doc)?, expected);
        println!("; {name}\n{}", serialize_prxml(doc));
    }
    Ok(())
}
