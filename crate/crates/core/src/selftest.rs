//! Randomized agreement checks between the polynomial routes, the rewritings,
//! the gadgets and the brute-force oracle.
//!
//! Each suite draws its inputs from a seeded generator and reports every
//! disagreement it finds. [`run_all`] is what `prxml selftest` executes.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{poss_unordered, prob_ordered_local, ClassCheck};
use crate::gen::brute::{count_exact_covers, count_models, count_perfect_matchings};
use crate::gen::{gen_pm_ind, gen_pm_mux, gen_sat_cie, gen_sat_muxind, gen_xc_inddet, gen_xc_mie, gen_xc_muxdet};
use crate::matches::{enumerate_matches, prob_explicit_local, prob_explicit_mie, DEFAULT_MATCH_CAP};
use crate::model::{PDocument, ProbKind, Rational, XDocument};
use crate::oracle::{enumerate_worlds, world_probability_bf, ChoiceSpace};
use crate::random::{
    candidate_worlds, random_bipartite, random_cnf, random_document, random_exact_cover, DocParams,
};
use crate::rewrite::{mie_to_cie, mux_to_mie};
use crate::{Annotation, Event, Result};

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport { name, cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, e: impl fmt::Display) {
        self.cases += 1;
        self.failures.push(format!("error: {e}"));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{:<28} {:>6} cases  {status}", self.name, self.cases)?;
        for msg in self.failures.iter().take(3) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

fn doc_text(d: &PDocument) -> String {
    crate::format::serialize_prxml(d)
}

fn positive(p: &Rational) -> bool {
    *p > Rational::zero()
}

/// Worlds of every random document sum to exactly 1.
pub fn oracle_normalization(rng: &mut impl Rng, docs: usize) -> SuiteReport {
    let mut r = SuiteReport::new("oracle normalization");
    let params = DocParams { max_prob_nodes: 8, ..DocParams::new(&ProbKind::ALL) };
    for i in 0..docs {
        let d = random_document(rng, &params.clone().ordered(i % 2 == 0));
        match enumerate_worlds(&d) {
            Ok(dist) => r.check(dist.total().is_one(), || format!("total {} for\n{}", dist.total(), doc_text(&d))),
            Err(e) => r.error(e),
        }
    }
    r
}

/// The ordered span DP equals the oracle on support worlds and perturbations.
pub fn ordered_dp_equivalence(rng: &mut impl Rng, docs: usize, worlds: usize) -> SuiteReport {
    let mut r = SuiteReport::new("ordered DP = oracle");
    let params = DocParams::new(&[ProbKind::Mux, ProbKind::Ind, ProbKind::Det]).ordered(true);
    for _ in 0..docs {
        let d = random_document(rng, &params);
        for w in candidate_worlds(rng, &d, worlds) {
            let w = XDocument::new(w, true);
            match (prob_ordered_local(&d, &w), world_probability_bf(&d, &w)) {
                (Ok(a), Ok(b)) => r.check(a == b, || format!("dp {a} vs oracle {b}")),
                (Err(e), _) | (_, Err(e)) => r.error(e),
            }
        }
    }
    r
}

/// The unordered decision procedure agrees with `D(W) > 0` on `ind`-only,
/// `mux`-only and mixed documents without `ind` below `mux`.
pub fn unordered_equivalence(rng: &mut impl Rng, docs: usize, worlds: usize) -> SuiteReport {
    let mut r = SuiteReport::new("unordered decision = oracle");
    let classes = [
        (DocParams::new(&[ProbKind::Ind]), ClassCheck::Strict),
        (DocParams::new(&[ProbKind::Mux]), ClassCheck::Strict),
        (DocParams::new(&[ProbKind::Mux, ProbKind::Ind]).no_ind_under_mux(), ClassCheck::Relaxed),
    ];
    for i in 0..docs {
        let (params, check) = &classes[i % classes.len()];
        let params = DocParams { labels: 2, ..params.clone() };
        let d = random_document(rng, &params);
        for w in candidate_worlds(rng, &d, worlds) {
            let w = XDocument::new(w, false);
            match (poss_unordered(&d, &w, *check), world_probability_bf(&d, &w)) {
                (Ok(a), Ok(b)) => r.check(a == positive(&b), || format!("decision {a} vs oracle {b}")),
                (Err(e), _) | (_, Err(e)) => r.error(e),
            }
        }
    }
    r
}

/// Explicit matches for local documents, ordered and unordered.
pub fn explicit_local_equivalence(rng: &mut impl Rng, instances: usize) -> SuiteReport {
    let mut r = SuiteReport::new("explicit local = oracle");
    for i in 0..instances {
        let ordered = i % 2 == 0;
        let params = DocParams { labels: 2, ..DocParams::new(&[ProbKind::Mux, ProbKind::Ind, ProbKind::Det]) };
        let d = random_document(rng, &params.ordered(ordered));
        let w = XDocument::new(candidate_worlds(rng, &d, 2)[i % 2].clone(), ordered);
        let got = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP).and_then(|ms| prob_explicit_local(&d, &w, &ms));
        match (got, world_probability_bf(&d, &w)) {
            (Ok(a), Ok(b)) => r.check(a == b, || format!("explicit {a} vs oracle {b}")),
            (Err(e), _) | (_, Err(e)) => r.error(e),
        }
    }
    r
}

/// Explicit matches for `mie` documents, ordered and unordered.
pub fn explicit_mie_equivalence(rng: &mut impl Rng, instances: usize) -> SuiteReport {
    let mut r = SuiteReport::new("explicit mie = oracle");
    for i in 0..instances {
        let ordered = i % 2 == 0;
        let params = DocParams { labels: 2, ..DocParams::new(&[ProbKind::Mie]) };
        let d = random_document(rng, &params.ordered(ordered));
        let w = XDocument::new(candidate_worlds(rng, &d, 2)[i % 2].clone(), ordered);
        let got = enumerate_matches(&d, &w, DEFAULT_MATCH_CAP).and_then(|ms| prob_explicit_mie(&d, &w, &ms));
        match (got, world_probability_bf(&d, &w)) {
            (Ok(a), Ok(b)) => r.check(a == b, || format!("explicit {a} vs oracle {b}")),
            (Err(e), _) | (_, Err(e)) => r.error(e),
        }
    }
    r
}

fn ceil_log2(k: usize) -> usize {
    usize::BITS as usize - k.saturating_sub(1).leading_zeros() as usize
}

/// `mux -> mie -> cie` keeps the distribution, with conjunctions of length at
/// most `ceil(log2 k)` for a `k`-outcome event.
pub fn rewrite_preservation(rng: &mut impl Rng, docs: usize) -> SuiteReport {
    let mut r = SuiteReport::new("rewrites preserve worlds");
    for i in 0..docs {
        let params = DocParams { config_budget: 1 << 10, ..DocParams::new(&[ProbKind::Mux]) };
        let d = random_document(rng, &params.ordered(i % 2 == 0));
        let run = || -> Result<bool> {
            let m = mux_to_mie(&d)?;
            let c = mie_to_cie(&m)?;
            let same = enumerate_worlds(&d)? == enumerate_worlds(&m)? && enumerate_worlds(&m)? == enumerate_worlds(&c)?;
            let mut short = true;
            fn conj_lengths(n: &crate::PNode, out: &mut Vec<(String, usize)>) {
                for e in &n.children {
                    if let Annotation::Conj(lits) = &e.annotation {
                        let base = lits.first().map(|l| l.event.split(".b").next().unwrap_or("").to_owned());
                        out.push((base.unwrap_or_default(), lits.len()));
                    }
                    conj_lengths(&e.child, out);
                }
            }
            let mut lengths = Vec::new();
            conj_lengths(&c.root, &mut lengths);
            for (event, len) in lengths {
                let k = match m.events.get(&event) {
                    Some(Event::Enum(o)) => o.len(),
                    _ => 2,
                };
                short &= len <= ceil_log2(k).max(1);
            }
            Ok(same && short)
        };
        match run() {
            Ok(ok) => r.check(ok, || format!("distribution or size mismatch for\n{}", doc_text(&d))),
            Err(e) => r.error(e),
        }
    }
    r
}

/// SAT gadget: possibility matches satisfiability and `D(W) * 2^m` the model count.
pub fn sat_gadget(rng: &mut impl Rng, formulas: usize, max_vars: usize) -> SuiteReport {
    let mut r = SuiteReport::new("SAT gadget");
    for _ in 0..formulas {
        let vars = rng.gen_range(1..=max_vars);
        let clauses = rng.gen_range(1..=2 * vars + 2);
        let f = random_cnf(rng, vars, clauses, 3);
        let models = count_models(&f);
        let (d, w) = gen_sat_cie(&f);
        match world_probability_bf(&d, &w) {
            Ok(p) => {
                let scaled = p * Rational::from_integer((1u64 << vars).into());
                r.check(scaled == Rational::from_integer(models.into()), || format!("{f:?}: {scaled} vs {models}"));
            }
            Err(e) => r.error(e),
        }
        let (d, w) = gen_sat_muxind(&f);
        if ChoiceSpace::new(&d).count() <= 1 << 16 {
            match world_probability_bf(&d, &w) {
                Ok(p) => r.check(positive(&p) == (models > 0), || format!("mux/ind gadget disagrees on {f:?}")),
                Err(e) => r.error(e),
            }
        }
    }
    r
}

/// Exact-cover gadgets (`ind,det`, `mux,det`, and `mie` both ordered and unordered).
pub fn exact_cover_gadgets(rng: &mut impl Rng, instances: usize, max_size: usize) -> SuiteReport {
    let mut r = SuiteReport::new("exact cover gadgets");
    for _ in 0..instances {
        let m = rng.gen_range(1..=max_size);
        let n = rng.gen_range(1..=max_size);
        let inst = random_exact_cover(rng, m, n);
        let expected = count_exact_covers(&inst) > 0;
        let pairs = [gen_xc_inddet(&inst), gen_xc_muxdet(&inst), gen_xc_mie(&inst, false), gen_xc_mie(&inst, true)];
        for (k, (d, w)) in pairs.iter().enumerate() {
            match world_probability_bf(d, w) {
                Ok(p) => r.check(positive(&p) == expected, || format!("variant {k} disagrees on {inst:?}")),
                Err(e) => r.error(e),
            }
        }
    }
    r
}

/// Perfect-matching gadgets: `D(W) * 2^|E|` is the number of perfect matchings.
pub fn matching_gadgets(rng: &mut impl Rng, graphs: usize, max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("perfect matching gadgets");
    for _ in 0..graphs {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen_range(0.3..0.9);
        let g = random_bipartite(rng, n, p);
        let expected = count_perfect_matchings(&g);
        let scale = Rational::from_integer((1u64 << g.edges().len()).into());
        for (d, w) in [gen_pm_ind(&g), gen_pm_mux(&g)] {
            match world_probability_bf(&d, &w) {
                Ok(p) => {
                    let scaled = p * &scale;
                    r.check(scaled == Rational::from_integer(expected.into()), || format!("{g:?}: {scaled} vs {expected}"))
                }
                Err(e) => r.error(e),
            }
        }
    }
    r
}

/// Every suite at a size that finishes in seconds.
pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        oracle_normalization(&mut rng, 40),
        ordered_dp_equivalence(&mut rng, 40, 5),
        unordered_equivalence(&mut rng, 60, 5),
        explicit_local_equivalence(&mut rng, 40),
        explicit_mie_equivalence(&mut rng, 40),
        rewrite_preservation(&mut rng, 30),
        sat_gadget(&mut rng, 15, 6),
        exact_cover_gadgets(&mut rng, 15, 5),
        matching_gadgets(&mut rng, 15, 3),
    ]
}
