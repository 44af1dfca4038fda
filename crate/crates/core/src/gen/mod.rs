//! Hardness gadgets: each generator turns an instance of a hard source problem
//! into a document `D` and a world `W` such that `W` is possible in `D` exactly
//! when the source instance is a yes-instance.
//!
//! | generator         | source            | document class |
//! |-------------------|-------------------|----------------|
//! | [`gen_sat_cie`]   | CNF satisfiability (and model counting) | `cie` |
//! | [`gen_sat_muxind`]| CNF satisfiability | unordered `mux,ind` |
//! | [`gen_xc_inddet`] | exact cover       | unordered `ind,det` |
//! | [`gen_xc_muxdet`] | exact cover       | unordered `mux,det` |
//! | [`gen_xc_mie`]    | exact cover       | `mie` |
//! | [`gen_pm_ind`]    | perfect matchings (counting) | `ind` |
//! | [`gen_pm_mux`]    | perfect matchings (counting) | `mux` |

pub mod brute;

use crate::algorithms::BipartiteGraph;
use crate::model::{ratio, Event, EventTable, Literal, PDocument, PNode, XDocument, XNode};

pub const TOP: &str = "⊤";
pub const BOTTOM: &str = "⊥";

/// CNF over variables `1..=num_vars`; literal `-i` is the negation of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    /// Panics on an empty clause or a literal outside `±1..=num_vars`.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        for c in &clauses {
            assert!(!c.is_empty(), "empty clause");
            for &l in c {
                assert!(l != 0 && l.unsigned_abs() as usize <= num_vars, "literal {l} out of range");
            }
        }
        CnfFormula { num_vars, clauses }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Whether the assignment (bit `i-1` for variable `i`) satisfies every clause.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let value = assignment >> (l.unsigned_abs() - 1) & 1 == 1;
                value == (l > 0)
            })
        })
    }
}

/// Sets over a universe of element names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoverInstance {
    universe: Vec<String>,
    sets: Vec<Vec<String>>,
}

impl ExactCoverInstance {
    /// Requires distinct universe elements and nonempty sets of distinct
    /// universe elements.
    pub fn new(universe: Vec<String>, sets: Vec<Vec<String>>) -> Result<Self, String> {
        for (i, x) in universe.iter().enumerate() {
            if universe[..i].contains(x) {
                return Err(format!("element `{x}` listed twice in the universe"));
            }
        }
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(format!("set {} is empty", i + 1));
            }
            for (j, x) in s.iter().enumerate() {
                if !universe.contains(x) {
                    return Err(format!("set {} contains `{x}`, which is not in the universe", i + 1));
                }
                if s[..j].contains(x) {
                    return Err(format!("set {} contains `{x}` twice", i + 1));
                }
            }
        }
        Ok(ExactCoverInstance { universe, sets })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }
}

fn half() -> crate::Rational {
    ratio(1, 2)
}

fn var(i: usize) -> String {
    format!("x{i}")
}

fn clause_label(j: usize) -> String {
    format!("l{j}")
}

fn uniform_events(prefix: &str, n: usize) -> EventTable {
    let mut t = EventTable::new();
    for i in 1..=n {
        t.insert(format!("{prefix}{i}"), Event::Bool(half()));
    }
    t
}

/// A `⊥` child per clause, kept when the clause is falsified; `W` is the bare root.
pub fn gen_sat_cie(f: &CnfFormula) -> (PDocument, XDocument) {
    let children = f
        .clauses()
        .iter()
        .map(|c| {
            let lits = c
                .iter()
                .map(|&l| {
                    let x = var(l.unsigned_abs() as usize);
                    if l > 0 {
                        Literal::neg(x)
                    } else {
                        Literal::pos(x)
                    }
                })
                .collect();
            (lits, PNode::leaf(BOTTOM))
        })
        .collect();
    let d = PDocument::new(PNode::regular(TOP, vec![PNode::cie(children)]), uniform_events("x", f.num_vars()), false);
    (d, XDocument::new(XNode::leaf(TOP), false))
}

/// One `mux` per variable choosing between the clauses it satisfies when true
/// and when false; `W` lists every clause once.
pub fn gen_sat_muxind(f: &CnfFormula) -> (PDocument, XDocument) {
    let occurrences = |i: usize, positive: bool| -> PNode {
        let mut kids = Vec::new();
        for (j, c) in f.clauses().iter().enumerate() {
            for &l in c {
                if l.unsigned_abs() as usize == i && (l > 0) == positive {
                    kids.push((half(), PNode::leaf(clause_label(j + 1))));
                }
            }
        }
        PNode::ind(kids)
    };
    let muxes = (1..=f.num_vars())
        .map(|i| PNode::mux(vec![(half(), occurrences(i, true)), (half(), occurrences(i, false))]))
        .collect();
    let d = PDocument::new(PNode::regular(TOP, muxes), EventTable::new(), false);
    let w = XNode::new(TOP, (1..=f.clauses().len()).map(|j| XNode::leaf(clause_label(j))).collect());
    (d, XDocument::new(w, false))
}

fn set_leaves(s: &[String]) -> PNode {
    PNode::det(s.iter().map(|x| PNode::leaf(x.as_str())).collect())
}

fn universe_world(i: &ExactCoverInstance, ordered: bool) -> XDocument {
    XDocument::new(XNode::new(TOP, i.universe().iter().map(|x| XNode::leaf(x.as_str())).collect()), ordered)
}

/// Each set kept independently with probability 1/2.
pub fn gen_xc_inddet(i: &ExactCoverInstance) -> (PDocument, XDocument) {
    let kids = i.sets().iter().map(|s| PNode::ind(vec![(half(), set_leaves(s))])).collect();
    (PDocument::new(PNode::regular(TOP, kids), EventTable::new(), false), universe_world(i, false))
}

/// Like [`gen_xc_inddet`] with single-branch `mux` nodes.
pub fn gen_xc_muxdet(i: &ExactCoverInstance) -> (PDocument, XDocument) {
    let kids = i.sets().iter().map(|s| PNode::mux(vec![(half(), set_leaves(s))])).collect();
    (PDocument::new(PNode::regular(TOP, kids), EventTable::new(), false), universe_world(i, false))
}

/// One `mie` node; set `i` contributes an edge `(ei, t)` per element. In the
/// ordered variant the edges are grouped by element in universe order.
pub fn gen_xc_mie(i: &ExactCoverInstance, ordered: bool) -> (PDocument, XDocument) {
    let mut edges: Vec<(usize, (String, String), PNode)> = Vec::new();
    for (k, s) in i.sets().iter().enumerate() {
        for x in s {
            let rank = i.universe().iter().position(|u| u == x).unwrap_or(usize::MAX);
            edges.push((rank, (format!("e{}", k + 1), crate::model::events::TRUE.into()), PNode::leaf(x.as_str())));
        }
    }
    if ordered {
        edges.sort_by_key(|(rank, _, _)| *rank);
    }
    let mie = PNode::mie(edges.into_iter().map(|(_, atom, leaf)| (atom, leaf)).collect());
    let d = PDocument::new(PNode::regular(TOP, vec![mie]), uniform_events("e", i.sets().len()), ordered);
    (d, universe_world(i, ordered))
}

fn gen_pm(g: &BipartiteGraph, wrap: fn(Vec<(crate::Rational, PNode)>) -> PNode) -> (PDocument, XDocument) {
    assert_eq!(g.left(), g.right(), "both parts must have the same size");
    let n = g.left();
    let kids = (0..n)
        .map(|u| {
            let gates = g
                .edges()
                .iter()
                .filter(|&&(a, _)| a == u)
                .map(|&(_, v)| wrap(vec![(half(), PNode::leaf(clause_label(v + 1)))]))
                .collect();
            PNode::regular(BOTTOM, gates)
        })
        .collect();
    let d = PDocument::new(PNode::regular(TOP, kids), EventTable::new(), false);
    let w = XNode::new(TOP, (1..=n).map(|v| XNode::new(BOTTOM, vec![XNode::leaf(clause_label(v))])).collect());
    (d, XDocument::new(w, false))
}

/// `D(W) * 2^|E|` is the number of perfect matchings of `g`.
pub fn gen_pm_ind(g: &BipartiteGraph) -> (PDocument, XDocument) {
    gen_pm(g, PNode::ind)
}

/// Same as [`gen_pm_ind`] with single-branch `mux` nodes.
pub fn gen_pm_mux(g: &BipartiteGraph) -> (PDocument, XDocument) {
    gen_pm(g, PNode::mux)
}
