//! Acceptance gate: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use num_traits::Zero;
use prxml::algorithms::{prob_ordered_local, BipartiteGraph};
use prxml::format::{parse_prxml, parse_xdoc};
use prxml::gen::brute::count_perfect_matchings;
use prxml::gen::{gen_pm_ind, gen_pm_mux};
use prxml::matches::{enumerate_matches, prob_explicit_conditioned, DEFAULT_MATCH_CAP};
use prxml::model::ratio;
use prxml::oracle::{world_probability_bf, Oracle, DEFAULT_CAP};
use prxml::random::random_bipartite;
use prxml::selftest::{self, SuiteReport};
use prxml::{Error, PDocument, PNode, Rational, XDocument, XNode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, id: usize, name: &str, ok: bool, detail: impl AsRef<str>) {
        if !ok {
            self.failed += 1;
        }
        println!("[{}] {id:>2}. {name}: {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    }

    fn suite(&mut self, id: usize, name: &str, limit: Option<Duration>, run: impl FnOnce() -> SuiteReport) {
        let start = Instant::now();
        let report = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let mut detail = format!("{} cases, {} failures, {:.2?}", report.cases, report.failures.len(), elapsed);
        if let Some(l) = limit {
            detail.push_str(&format!(" (limit {l:?})"));
        }
        for f in report.failures.iter().take(3) {
            detail.push_str(&format!("\n      {f}"));
        }
        self.report(id, name, report.passed() && in_time, detail);
    }
}

fn rng(offset: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED + offset)
}

fn matching_identity() -> SuiteReport {
    let mut report = SuiteReport { name: "perfect matchings", cases: 0, failures: Vec::new() };
    let mut graphs = Vec::new();
    for n in 1..=3usize {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << all.len()) {
            let edges = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            graphs.push(BipartiteGraph::new(n, n, edges));
        }
    }
    let mut r = rng(5);
    for _ in 0..40 {
        let p = r.gen_range(0.4..0.9);
        graphs.push(random_bipartite(&mut r, 4, p));
    }
    graphs.push(BipartiteGraph::complete(3));
    for g in &graphs {
        let expected = count_perfect_matchings(g);
        let scale = Rational::from_integer((1u64 << g.edges().len()).into());
        for (d, w) in [gen_pm_ind(g), gen_pm_mux(g)] {
            report.cases += 1;
            match world_probability_bf(&d, &w) {
                Ok(p) if p.clone() * &scale == Rational::from_integer(expected.into()) => {}
                Ok(p) => report.failures.push(format!("{g:?}: {} vs {expected}", p * &scale)),
                Err(e) => report.failures.push(e.to_string()),
            }
        }
    }
    let (d, w) = gen_pm_ind(&BipartiteGraph::complete(3));
    let k33 = world_probability_bf(&d, &w).map(|p| p * Rational::from_integer(512.into()));
    report.cases += 1;
    if k33.as_ref().ok() != Some(&Rational::from_integer(6.into())) {
        report.failures.push(format!("K33 gives {k33:?}, expected 6"));
    }
    report
}

fn conference_corpus(gate: &mut Gate) {
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/");
    let load = |name: &str| std::fs::read_to_string(format!("{corpus}{name}")).expect("corpus file");
    let result = (|| -> prxml::Result<Vec<(Rational, Rational, Rational)>> {
        let d = parse_prxml(&load("conferences.prxml"))?;
        let mut out = Vec::new();
        for (file, expected) in [("conferences-full.xml.sexp", ratio(567, 1250)), ("conferences-root.xml.sexp", ratio(3, 50))] {
            let w = parse_xdoc(&load(file))?;
            let oracle = world_probability_bf(&d, &w)?;
            let ms = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP)?;
            let explicit = prob_explicit_conditioned(&d, &w, &ms)?;
            out.push((expected, oracle, explicit));
        }
        Ok(out)
    })();
    match result {
        Ok(rows) => {
            let ok = rows.iter().all(|(e, o, x)| e == o && e == x);
            let detail = rows
                .iter()
                .map(|(e, o, x)| format!("expected {e}, oracle {o}, explicit {x}"))
                .collect::<Vec<_>>()
                .join("; ");
            gate.report(9, "conference corpus regression", ok, detail);
        }
        Err(e) => gate.report(9, "conference corpus regression", false, e.to_string()),
    }
}

/// Block of 20 nodes: an item with nine optional leaves, a three-way choice
/// and four fixed leaves.
fn block() -> PNode {
    let half = ratio(1, 2);
    let optional = (0..9).map(|i| (half.clone(), PNode::leaf(if i % 2 == 0 { "x" } else { "y" }))).collect();
    let third = ratio(1, 3);
    let choice = ["p", "q", "r"].into_iter().map(|l| (third.clone(), PNode::leaf(l))).collect();
    let fixed = ["s", "t", "u", "v"].into_iter().map(PNode::leaf).collect();
    PNode::regular("item", vec![PNode::ind(optional), PNode::mux(choice), PNode::det(fixed)])
}

fn block_world() -> XNode {
    let mut kids: Vec<XNode> = ["x", "y", "x", "y", "x"].into_iter().map(XNode::leaf).collect();
    kids.push(XNode::leaf("q"));
    kids.extend(["s", "t", "u", "v"].into_iter().map(XNode::leaf));
    XNode::new("item", kids)
}

fn family(k: usize) -> (PDocument, XDocument) {
    let d = PDocument::new(PNode::regular("root", (0..k).map(|_| block()).collect()), Default::default(), true);
    let w = XDocument::new(XNode::new("root", (0..k).map(|_| block_world()).collect()), true);
    (d, w)
}

fn time_min(d: &PDocument, w: &XDocument) -> (Duration, Rational) {
    let mut best = Duration::MAX;
    let mut p = Rational::zero();
    for _ in 0..7 {
        let mut reps = 0u32;
        let start = Instant::now();
        while reps == 0 || start.elapsed() < Duration::from_millis(20) {
            p = prob_ordered_local(d, w).expect("local ordered document");
            reps += 1;
        }
        best = best.min(start.elapsed() / reps);
    }
    (best, p)
}

fn scaling(gate: &mut Gate) {
    let mut times = Vec::new();
    let mut detail = String::new();
    let mut ok = true;
    let mut oracle_capped_at = None;
    for k in 1..=8 {
        let (d, w) = family(k);
        let (t, p) = time_min(&d, &w);
        ok &= !p.is_zero();
        if oracle_capped_at.is_none() {
            match Oracle::with_cap(DEFAULT_CAP).world_probability(&d, &w) {
                Err(Error::TooManyConfigurations { .. }) => oracle_capped_at = Some(k),
                Ok(q) => ok &= q == p,
                Err(e) => {
                    ok = false;
                    detail.push_str(&format!("oracle error {e}; "));
                }
            }
        }
        detail.push_str(&format!("n={} {:.1?}; ", d.size(), t));
        times.push(t);
    }
    let worst = times.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64()).fold(0.0, f64::max);
    ok &= worst < 8.0 && oracle_capped_at.is_some();
    detail.push_str(&format!("max ratio {worst:.2}, oracle capped from k={oracle_capped_at:?}"));
    gate.report(10, "polynomial scaling of ordered DP", ok, detail);
}

fn main() {
    let mut gate = Gate { failed: 0 };
    let limit = |s| Some(Duration::from_secs(s));
    gate.suite(1, "oracle sums to one", limit(60), || selftest::oracle_normalization(&mut rng(1), 200));
    gate.suite(2, "ordered DP equals oracle", limit(120), || selftest::ordered_dp_equivalence(&mut rng(2), 200, 5));
    gate.suite(3, "unordered decision equals oracle", None, || selftest::unordered_equivalence(&mut rng(3), 600, 5));
    gate.suite(4, "explicit matches equal oracle", None, || {
        let mut a = selftest::explicit_local_equivalence(&mut rng(4), 200);
        let b = selftest::explicit_mie_equivalence(&mut rng(4), 200);
        a.cases += b.cases;
        a.failures.extend(b.failures);
        a
    });
    gate.suite(5, "perfect matching counting identity", None, matching_identity);
    gate.suite(6, "SAT gadget", None, || selftest::sat_gadget(&mut rng(6), 50, 10));
    gate.suite(7, "exact cover gadgets", None, || selftest::exact_cover_gadgets(&mut rng(7), 50, 8));
    gate.suite(8, "rewrites preserve worlds", None, || selftest::rewrite_preservation(&mut rng(8), 100));
    conference_corpus(&mut gate);
    scaling(&mut gate);
    println!("{} of 10 criteria failed", gate.failed);
    if gate.failed > 0 {
        std::process::exit(1);
    }
}
