//! Textual formats.
//!
//! Documents, worlds and match sets are s-expressions:
//!
//! ```text
//! DOC    := (prxml EVENTS ORDERED TREE)
//! EVENTS := (events EVT*)
//! EVT    := (id bool RAT) | (id enum (VAL RAT)+)
//! TREE   := (node "LABEL" TREE*) | (det TREE*)
//!         | (ind (RAT TREE)*) | (mux (RAT TREE)*)
//!         | (cie (CONJ TREE)*) | (fie (FORM TREE)*) | (mie ((id VAL) TREE)*)
//! CONJ   := (and LIT*)
//! LIT    := id | (not id)
//! FORM   := LIT | (and FORM*) | (or FORM*) | (not FORM)
//! XDOC   := (xml ORDERED XTREE)          XTREE := (node "LABEL" XTREE*)
//! MATCHES:= (matches ((w-id d-id)*)*)
//! ```
//!
//! Serialization is canonical: rationals in lowest terms, one tree node per
//! line, two-space indentation, events sorted by id.
//!
//! [`inputs`] reads the plain-text instance formats consumed by the generators.

pub mod inputs;
mod sexp;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

pub use sexp::{quote, read_one, Sexp, SexpKind, SourceSpan};
use sexp::syntax;

use crate::matches::CandidateMatch;
use crate::model::{
    validate, Annotation, Event, EventTable, Formula, Label, Literal, NodeKind, PDocument, PEdge, PNode,
    Rational, XDocument, XNode,
};
use crate::{Error, Result};

/// Parses a rational written as `p/q`, an integer, or a finite decimal such as `0.45`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() || d < BigInt::zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            s if s.bytes().all(|b| b.is_ascii_digit()) => s.parse().ok()?,
            _ => return None,
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().ok()?;
        let value = Rational::new(int_part * &scale + frac_part, scale);
        return Some(if negative { -value } else { value });
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Canonical rational text: `p/q` in lowest terms, or an integer.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

fn expect_list<'s>(s: &'s Sexp, what: &str) -> Result<&'s [Sexp]> {
    s.as_list().ok_or_else(|| syntax(format!("expected {what}"), s.span))
}

fn expect_atom<'s>(s: &'s Sexp, what: &str) -> Result<&'s str> {
    s.as_atom().ok_or_else(|| syntax(format!("expected {what}"), s.span))
}

fn expect_head<'s>(s: &'s Sexp, head: &str) -> Result<&'s [Sexp]> {
    match s.as_list() {
        Some(items) if items.first().and_then(Sexp::as_atom) == Some(head) => Ok(&items[1..]),
        _ => Err(syntax(format!("expected `({head} ...)`"), s.span)),
    }
}

fn rational_at(s: &Sexp) -> Result<Rational> {
    let text = expect_atom(s, "a rational number")?;
    parse_rational(text).ok_or_else(|| syntax(format!("invalid rational `{text}`"), s.span))
}

fn ordered_flag(s: &Sexp) -> Result<bool> {
    let items = expect_head(s, "ordered")?;
    match items {
        [flag] => match flag.as_atom() {
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            _ => Err(syntax("expected `true` or `false`", flag.span)),
        },
        _ => Err(syntax("expected `(ordered true|false)`", s.span)),
    }
}

/// Parses and validates a probabilistic document.
pub fn parse_prxml(text: &str) -> Result<PDocument> {
    let doc = parse_prxml_unchecked(text)?;
    let violations = validate(&doc);
    if violations.is_empty() {
        Ok(doc)
    } else {
        Err(Error::Invalid(violations))
    }
}

/// Parses a probabilistic document without checking model invariants other
/// than grammar, a regular root, and declared events.
pub fn parse_prxml_unchecked(text: &str) -> Result<PDocument> {
    let top = read_one(text)?;
    let items = expect_head(&top, "prxml")?;
    let [events, ordered, tree] = items else {
        return Err(syntax("expected `(prxml (events ...) (ordered ...) TREE)`", top.span));
    };
    let events = parse_events(events)?;
    let ordered = ordered_flag(ordered)?;
    if tree.head() != Some("node") {
        return Err(syntax("root must be a regular node", tree.span));
    }
    let root = PTreeParser { events: &events }.tree(tree)?;
    Ok(PDocument { root, events, ordered })
}

fn parse_events(s: &Sexp) -> Result<EventTable> {
    let mut table = EventTable::new();
    for evt in expect_head(s, "events")? {
        let items = expect_list(evt, "an event declaration")?;
        let (id, kind) = match items {
            [id, kind, ..] => (expect_atom(id, "an event id")?, expect_atom(kind, "`bool` or `enum`")?),
            _ => return Err(syntax("expected `(id bool RAT)` or `(id enum (VAL RAT)+)`", evt.span)),
        };
        let event = match (kind, &items[2..]) {
            ("bool", [p]) => Event::Bool(rational_at(p)?),
            ("enum", outcomes) if !outcomes.is_empty() => {
                let mut out = Vec::new();
                for o in outcomes {
                    match expect_list(o, "`(VAL RAT)`")? {
                        [v, p] => out.push((expect_atom(v, "an outcome value")?.to_owned(), rational_at(p)?)),
                        _ => return Err(syntax("expected `(VAL RAT)`", o.span)),
                    }
                }
                Event::Enum(out)
            }
            _ => return Err(syntax("expected `(id bool RAT)` or `(id enum (VAL RAT)+)`", evt.span)),
        };
        if table.insert(id, event).is_some() {
            return Err(syntax(format!("event `{id}` declared twice"), evt.span));
        }
    }
    Ok(table)
}

struct PTreeParser<'e> {
    events: &'e EventTable,
}

impl PTreeParser<'_> {
    fn tree(&self, s: &Sexp) -> Result<PNode> {
        let items = expect_list(s, "a tree node")?;
        let head = items.first().and_then(Sexp::as_atom).ok_or_else(|| syntax("expected a node keyword", s.span))?;
        let rest = &items[1..];
        let (kind, children) = match head {
            "node" => {
                let (label, rest) = match rest.split_first() {
                    Some((Sexp { kind: SexpKind::Str(l), .. }, rest)) => (l.clone(), rest),
                    _ => return Err(syntax("expected a quoted label after `node`", s.span)),
                };
                (NodeKind::Regular(Label::new(label)), self.plain(rest)?)
            }
            "det" => (NodeKind::Det, self.plain(rest)?),
            "ind" | "mux" => {
                let kind = if head == "ind" { NodeKind::Ind } else { NodeKind::Mux };
                (kind, self.annotated(rest, |a| Ok(Annotation::Prob(rational_at(a)?)))?)
            }
            "cie" => (NodeKind::Cie, self.annotated(rest, |a| self.conjunction(a).map(Annotation::Conj))?),
            "fie" => (NodeKind::Fie, self.annotated(rest, |a| self.formula(a).map(Annotation::Formula))?),
            "mie" => (NodeKind::Mie, self.annotated(rest, |a| self.atom(a))?),
            other => return Err(syntax(format!("unknown node keyword `{other}`"), items[0].span)),
        };
        Ok(PNode { kind, children })
    }

    fn plain(&self, items: &[Sexp]) -> Result<Vec<PEdge>> {
        items.iter().map(|t| Ok(PEdge { annotation: Annotation::None, child: self.tree(t)? })).collect()
    }

    fn annotated(&self, items: &[Sexp], ann: impl Fn(&Sexp) -> Result<Annotation>) -> Result<Vec<PEdge>> {
        items
            .iter()
            .map(|edge| match expect_list(edge, "`(ANNOTATION TREE)`")? {
                [a, t] => Ok(PEdge { annotation: ann(a)?, child: self.tree(t)? }),
                _ => Err(syntax("expected `(ANNOTATION TREE)`", edge.span)),
            })
            .collect()
    }

    fn event(&self, s: &Sexp) -> Result<String> {
        let id = expect_atom(s, "an event id")?;
        if !self.events.contains(id) {
            return Err(Error::UnknownEvent { name: id.to_owned(), span: s.span });
        }
        Ok(id.to_owned())
    }

    fn literal(&self, s: &Sexp) -> Result<Literal> {
        if s.as_atom().is_some() {
            return Ok(Literal::pos(self.event(s)?));
        }
        match expect_head(s, "not") {
            Ok([id]) if id.as_atom().is_some() => Ok(Literal::neg(self.event(id)?)),
            _ => Err(syntax("expected a literal `id` or `(not id)`", s.span)),
        }
    }

    fn conjunction(&self, s: &Sexp) -> Result<Vec<Literal>> {
        expect_head(s, "and")?.iter().map(|l| self.literal(l)).collect()
    }

    fn formula(&self, s: &Sexp) -> Result<Formula> {
        if s.as_atom().is_some() {
            return Ok(Formula::Lit(self.literal(s)?));
        }
        let items = expect_list(s, "a formula")?;
        let args = &items[1..];
        match s.head() {
            Some("and") => Ok(Formula::And(args.iter().map(|f| self.formula(f)).collect::<Result<_>>()?)),
            Some("or") => Ok(Formula::Or(args.iter().map(|f| self.formula(f)).collect::<Result<_>>()?)),
            Some("not") => match args {
                [id] if id.as_atom().is_some() => Ok(Formula::Lit(self.literal(s)?)),
                [f] => Ok(Formula::Not(Box::new(self.formula(f)?))),
                _ => Err(syntax("`not` takes exactly one argument", s.span)),
            },
            _ => Err(syntax("expected `and`, `or` or `not`", s.span)),
        }
    }

    fn atom(&self, s: &Sexp) -> Result<Annotation> {
        match expect_list(s, "`(id VAL)`")? {
            [id, v] => Ok(Annotation::Atom { event: self.event(id)?, value: expect_atom(v, "an outcome value")?.to_owned() }),
            _ => Err(syntax("expected `(id VAL)`", s.span)),
        }
    }
}

/// Serializes a probabilistic document canonically.
pub fn serialize_prxml(doc: &PDocument) -> String {
    let mut out = String::from("(prxml\n");
    if doc.events.is_empty() {
        out.push_str("  (events)\n");
    } else {
        out.push_str("  (events");
        for (id, event) in doc.events.iter() {
            match event {
                Event::Bool(p) => write!(out, "\n    ({id} bool {})", format_rational(p)).unwrap(),
                Event::Enum(outcomes) => {
                    write!(out, "\n    ({id} enum").unwrap();
                    for (v, p) in outcomes {
                        write!(out, " ({v} {})", format_rational(p)).unwrap();
                    }
                    out.push(')');
                }
            }
        }
        out.push_str(")\n");
    }
    writeln!(out, "  (ordered {})", doc.ordered).unwrap();
    write_pnode(&mut out, &doc.root, 2, "", "");
    out.push_str(")\n");
    out
}

fn write_pnode(out: &mut String, node: &PNode, indent: usize, prefix: &str, suffix: &str) {
    out.push_str(&" ".repeat(indent));
    out.push_str(prefix);
    match &node.kind {
        NodeKind::Regular(l) => write!(out, "(node {}", quote(l.as_str())).unwrap(),
        kind => write!(out, "({}", kind.prob_kind().expect("probabilistic").name()).unwrap(),
    }
    for edge in &node.children {
        out.push('\n');
        match &edge.annotation {
            Annotation::None => write_pnode(out, &edge.child, indent + 2, "", ""),
            ann => {
                let prefix = format!("({} ", annotation_text(ann));
                write_pnode(out, &edge.child, indent + 2, &prefix, ")");
            }
        }
    }
    out.push(')');
    out.push_str(suffix);
}

fn literal_text(l: &Literal) -> String {
    if l.positive {
        l.event.clone()
    } else {
        format!("(not {})", l.event)
    }
}

fn formula_text(f: &Formula) -> String {
    let join = |op: &str, fs: &[Formula]| {
        let mut s = format!("({op}");
        for f in fs {
            s.push(' ');
            s.push_str(&formula_text(f));
        }
        s.push(')');
        s
    };
    match f {
        Formula::Lit(l) => literal_text(l),
        Formula::And(fs) => join("and", fs),
        Formula::Or(fs) => join("or", fs),
        Formula::Not(f) => format!("(not {})", formula_text(f)),
    }
}

fn annotation_text(a: &Annotation) -> String {
    match a {
        Annotation::None => String::new(),
        Annotation::Prob(p) => format_rational(p),
        Annotation::Conj(lits) => {
            let mut s = String::from("(and");
            for l in lits {
                s.push(' ');
                s.push_str(&literal_text(l));
            }
            s.push(')');
            s
        }
        Annotation::Formula(f) => formula_text(f),
        Annotation::Atom { event, value } => format!("({event} {value})"),
    }
}

/// Parses a deterministic document.
pub fn parse_xdoc(text: &str) -> Result<XDocument> {
    let top = read_one(text)?;
    let items = expect_head(&top, "xml")?;
    let [ordered, tree] = items else {
        return Err(syntax("expected `(xml (ordered ...) TREE)`", top.span));
    };
    Ok(XDocument { ordered: ordered_flag(ordered)?, root: xtree(tree)? })
}

fn xtree(s: &Sexp) -> Result<XNode> {
    let items = expect_head(s, "node")?;
    match items.split_first() {
        Some((Sexp { kind: SexpKind::Str(l), .. }, rest)) => {
            Ok(XNode { label: Label::new(l.clone()), children: rest.iter().map(xtree).collect::<Result<_>>()? })
        }
        _ => Err(syntax("expected a quoted label after `node`", s.span)),
    }
}

/// Serializes a deterministic document canonically.
pub fn serialize_xdoc(doc: &XDocument) -> String {
    let mut out = String::from("(xml\n");
    writeln!(out, "  (ordered {})", doc.ordered).unwrap();
    write_xnode(&mut out, &doc.root, 2);
    out.push_str(")\n");
    out
}

fn write_xnode(out: &mut String, node: &XNode, indent: usize) {
    write!(out, "{}(node {}", " ".repeat(indent), quote(node.label.as_str())).unwrap();
    for c in &node.children {
        out.push('\n');
        write_xnode(out, c, indent + 2);
    }
    out.push(')');
}

/// Parses a match file. Each match must map every W-node id `0..k` exactly once.
pub fn parse_matches(text: &str) -> Result<Vec<CandidateMatch>> {
    let top = read_one(text)?;
    let mut matches = Vec::new();
    for m in expect_head(&top, "matches")? {
        let mut image: Vec<Option<usize>> = Vec::new();
        for pair in expect_list(m, "a match `((w d)*)`")? {
            let (w, d) = match expect_list(pair, "a pair `(w d)`")? {
                [w, d] => (node_id(w)?, node_id(d)?),
                _ => return Err(syntax("expected a pair `(w d)`", pair.span)),
            };
            if image.len() <= w {
                image.resize(w + 1, None);
            }
            if image[w].replace(d).is_some() {
                return Err(syntax(format!("W-node {w} mapped twice"), pair.span));
            }
        }
        let image: Option<Vec<usize>> = image.into_iter().collect();
        match image {
            Some(image) if !image.is_empty() => matches.push(CandidateMatch::new(image)),
            _ => return Err(syntax("a match must map W-nodes 0..k without gaps", m.span)),
        }
    }
    Ok(matches)
}

fn node_id(s: &Sexp) -> Result<usize> {
    let text = expect_atom(s, "a node id")?;
    text.parse().map_err(|_| syntax(format!("invalid node id `{text}`"), s.span))
}

/// Serializes a match set, one match per line.
pub fn serialize_matches(matches: &[CandidateMatch]) -> String {
    let mut out = String::from("(matches");
    for m in matches {
        out.push_str("\n  (");
        for (w, d) in m.pairs() {
            if w > 0 {
                out.push(' ');
            }
            write!(out, "({w} {d})").unwrap();
        }
        out.push(')');
    }
    out.push_str(")\n");
    out
}

/// Decimal approximation for display, with six significant digits.
pub fn decimal_approx(r: &Rational) -> String {
    use num_traits::ToPrimitive;
    let x = r.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_owned();
    }
    s
}

/// `p/q (= d)`, the display form used on the command line.
pub fn display_probability(r: &Rational) -> String {
    format!("{} (= {})", format_rational(r), decimal_approx(r))
}
