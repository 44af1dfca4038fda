//! Hard instances: SAT, exact cover and perfect matchings encoded as documents.
//!
//! cargo run --example reductions

use prxml::algorithms::BipartiteGraph;
use prxml::format::display_probability;
use prxml::gen::brute::{count_exact_covers, count_models, count_perfect_matchings};
use prxml::gen::{gen_pm_ind, gen_sat_cie, gen_xc_inddet, gen_xc_mie, CnfFormula, ExactCoverInstance};
use prxml::oracle::world_probability_bf;

fn main() -> prxml::Result<()> {
    let f = CnfFormula::new(3, vec![vec![1, 2], vec![-1, 3], vec![-2, -3]]);
    let (d, w) = gen_sat_cie(&f);
    println!("SAT: {} models, D(W) = {}", count_models(&f), display_probability(&world_probability_bf(&d, &w)?));

    let sets = |v: &[&[&str]]| v.iter().map(|s| s.iter().map(|e| e.to_string()).collect()).collect();
    let universe = ["a", "b", "c", "d"].map(String::from).to_vec();
    let inst = ExactCoverInstance::new(universe, sets(&[&["a", "b"], &["c", "d"], &["b", "c"], &["a"], &["d"]]))
        .expect("valid instance");
    for (name, (d, w)) in [("ind/det", gen_xc_inddet(&inst)), ("mie", gen_xc_mie(&inst, true))] {
        let p = world_probability_bf(&d, &w)?;
        println!("exact cover ({name}): {} covers, D(W) = {}", count_exact_covers(&inst), display_probability(&p));
    }

    let g = BipartiteGraph::complete(3);
    let (d, w) = gen_pm_ind(&g);
    let p = world_probability_bf(&d, &w)?;
    println!("K33: {} perfect matchings, D(W) * 2^9 = {}", count_perfect_matchings(&g), p * prxml::Rational::from_integer(512.into()));
    Ok(())
}
