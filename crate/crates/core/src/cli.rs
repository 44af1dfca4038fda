//! Command-line interface. The `prxml` binary calls [`run`].
//!
//! Exit codes: 0 for success or a positive answer, 1 for a negative answer
//! (`poss`, `validate`), 2 for errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::algorithms::{poss_unordered, prob_ordered_local, ClassCheck};
use crate::format::inputs::{parse_dimacs, parse_edge_list, parse_sets};
use crate::format::{
    display_probability, parse_matches, parse_prxml, parse_prxml_unchecked, parse_xdoc, serialize_matches,
    serialize_prxml, serialize_xdoc,
};
use crate::gen::{gen_pm_ind, gen_pm_mux, gen_sat_cie, gen_sat_muxind, gen_xc_inddet, gen_xc_mie, gen_xc_muxdet};
use crate::matches::{
    enumerate_matches, prob_explicit_conditioned, prob_explicit_local, prob_explicit_mie, DEFAULT_MATCH_CAP,
};
use crate::model::{classify, validate, ClassProfile, PDocument, ProbKind, XDocument};
use crate::oracle::{Oracle, DEFAULT_CAP};
use crate::rewrite::{flatten_mux, mie_to_cie, mux_to_mie};
use crate::{Error, Rational};

/// Environment variable overriding the default configuration cap.
pub const CAP_ENV: &str = "PRXML_CAP";

#[derive(Parser, Debug)]
#[command(name = "prxml", version, about = "Possible worlds of probabilistic XML documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a document against the model invariants and report its class.
    Validate { file: PathBuf },
    /// List every possible world with its probability.
    Worlds {
        file: PathBuf,
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Decide whether a tree is a possible world of a document.
    Poss {
        doc: PathBuf,
        world: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: PossAlgo,
        /// Accept mixed mux/ind documents in the unordered procedure.
        #[arg(long)]
        relaxed: bool,
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Compute the probability of a world.
    Prob {
        doc: PathBuf,
        world: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: ProbAlgo,
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Enumerate candidate matches of a world in a document.
    Matches {
        doc: PathBuf,
        world: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MATCH_CAP)]
        cap: usize,
        /// Write the matches to this file instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Probability of a world given its candidate matches.
    Eposs {
        doc: PathBuf,
        world: PathBuf,
        /// Match file; enumerated when absent.
        #[arg(long)]
        matches: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        algo: EpossAlgo,
        #[arg(long)]
        cap: Option<u128>,
    },
    /// Rewrite a document into another class with the same distribution.
    Rewrite {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: RewriteTarget,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build a hardness gadget: writes OUT.prxml and OUT.xml.sexp.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        input: PathBuf,
        out: PathBuf,
        /// Ordered variant (xc-mie only).
        #[arg(long)]
        ordered: bool,
    },
    /// Run the randomized agreement checks against the oracle.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum PossAlgo {
    Auto,
    Oracle,
    UnorderedSingle,
    OrderedDp,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ProbAlgo {
    Auto,
    Oracle,
    OrderedDp,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum EpossAlgo {
    Auto,
    Local,
    Mie,
    Conditioned,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum RewriteTarget {
    FlatMux,
    Mie,
    Cie,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum GenKind {
    SatCie,
    SatMuxind,
    XcInddet,
    XcMuxdet,
    XcMie,
    PmInd,
    PmMux,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn located(path: &Path, e: Error) -> anyhow::Error {
    match &e {
        Error::Syntax { message, span } => anyhow!("{}:{span}: {message}", path.display()),
        Error::UnknownEvent { name, span } => anyhow!("{}:{span}: unknown event `{name}`", path.display()),
        _ => anyhow!("{}: {e}", path.display()),
    }
}

fn load_doc(path: &Path) -> anyhow::Result<PDocument> {
    parse_prxml(&read(path)?).map_err(|e| located(path, e))
}

/// Loads a world and gives it the order mode of the document.
fn load_world(path: &Path, doc: &PDocument, err: &mut dyn Write) -> anyhow::Result<XDocument> {
    let mut w = parse_xdoc(&read(path)?).map_err(|e| located(path, e))?;
    if w.ordered != doc.ordered {
        writeln!(err, "note: {} uses the order mode of the document", path.display())?;
        w.ordered = doc.ordered;
    }
    Ok(w)
}

fn oracle(cap: Option<u128>) -> anyhow::Result<Oracle> {
    if let Some(cap) = cap {
        return Ok(Oracle::with_cap(cap));
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => Ok(Oracle::with_cap(v.trim().parse().with_context(|| format!("{CAP_ENV}={v} is not a number"))?)),
        Err(_) => Ok(Oracle::with_cap(DEFAULT_CAP)),
    }
}

fn is_local(p: &ClassProfile) -> bool {
    p.within(&[ProbKind::Mux, ProbKind::Ind, ProbKind::Det])
}

fn single_type(p: &ClassProfile, relaxed: bool) -> bool {
    p.within(&[ProbKind::Ind])
        || p.within(&[ProbKind::Mux])
        || (relaxed && p.within(&[ProbKind::Mux, ProbKind::Ind]) && p.no_ind_under_mux)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Validate { file } => {
            let doc = parse_prxml_unchecked(&read(&file)?).map_err(|e| located(&file, e))?;
            let violations = validate(&doc);
            if violations.is_empty() {
                let profile = classify(&doc)?;
                writeln!(out, "valid")?;
                writeln!(out, "class: {}", profile.describe())?;
                writeln!(out, "order: {}", if doc.ordered { "ordered" } else { "unordered" })?;
                writeln!(out, "nodes: {}, height: {}, events: {}", doc.size(), doc.height(), doc.events.len())?;
                Ok(0)
            } else {
                writeln!(out, "invalid")?;
                for v in violations {
                    writeln!(out, "  {v}")?;
                }
                Ok(1)
            }
        }
        Command::Worlds { file, cap } => {
            let doc = load_doc(&file)?;
            let dist = oracle(cap)?.enumerate_worlds(&doc)?;
            writeln!(out, "{} worlds", dist.len())?;
            for (w, p) in dist.iter() {
                let text = serialize_xdoc(&XDocument::new(w.clone(), doc.ordered));
                writeln!(out, "; {}", display_probability(p))?;
                write!(out, "{text}")?;
            }
            Ok(0)
        }
        Command::Poss { doc, world, algo, relaxed, cap } => {
            let d = load_doc(&doc)?;
            let w = load_world(&world, &d, err)?;
            let profile = classify(&d)?;
            let check = if relaxed { ClassCheck::Relaxed } else { ClassCheck::Strict };
            let algo = match algo {
                PossAlgo::Auto if d.ordered && is_local(&profile) => PossAlgo::OrderedDp,
                PossAlgo::Auto if !d.ordered && single_type(&profile, relaxed) => PossAlgo::UnorderedSingle,
                PossAlgo::Auto => PossAlgo::Oracle,
                a => a,
            };
            let possible = match algo {
                PossAlgo::OrderedDp => !prob_ordered_local(&d, &w)?.is_zero(),
                PossAlgo::UnorderedSingle => poss_unordered(&d, &w, check)?,
                _ => !oracle(cap)?.world_probability(&d, &w)?.is_zero(),
            };
            writeln!(out, "{}", if possible { "possible world" } else { "not a possible world" })?;
            Ok(if possible { 0 } else { 1 })
        }
        Command::Prob { doc, world, algo, cap } => {
            let d = load_doc(&doc)?;
            let w = load_world(&world, &d, err)?;
            let profile = classify(&d)?;
            let p = match algo {
                ProbAlgo::OrderedDp => prob_ordered_local(&d, &w)?,
                ProbAlgo::Auto if d.ordered && is_local(&profile) => prob_ordered_local(&d, &w)?,
                _ => oracle(cap)?.world_probability(&d, &w)?,
            };
            print_probability(out, &p)
        }
        Command::Matches { doc, world, cap, emit } => {
            let d = load_doc(&doc)?;
            let w = load_world(&world, &d, err)?;
            let ms = enumerate_matches(&d, &w, cap)?;
            let text = serialize_matches(&ms);
            match emit {
                Some(path) => {
                    write_file(&path, &text)?;
                    writeln!(out, "{} candidate matches written to {}", ms.len(), path.display())?;
                }
                None => {
                    writeln!(out, "; {} candidate matches", ms.len())?;
                    write!(out, "{text}")?;
                }
            }
            Ok(0)
        }
        Command::Eposs { doc, world, matches, algo, cap } => {
            let d = load_doc(&doc)?;
            let w = load_world(&world, &d, err)?;
            let ms = match &matches {
                Some(path) => parse_matches(&read(path)?).map_err(|e| located(path, e))?,
                None => enumerate_matches(&d, &w, DEFAULT_MATCH_CAP)?,
            };
            let profile = classify(&d)?;
            let algo = match algo {
                EpossAlgo::Auto if is_local(&profile) => EpossAlgo::Local,
                EpossAlgo::Auto if profile.within(&[ProbKind::Mie]) => EpossAlgo::Mie,
                EpossAlgo::Auto => EpossAlgo::Oracle,
                a => a,
            };
            let p = match algo {
                EpossAlgo::Local => prob_explicit_local(&d, &w, &ms)?,
                EpossAlgo::Mie => prob_explicit_mie(&d, &w, &ms)?,
                EpossAlgo::Conditioned => prob_explicit_conditioned(&d, &w, &ms)?,
                _ => oracle(cap)?.world_probability(&d, &w)?,
            };
            print_probability(out, &p)
        }
        Command::Rewrite { file, to, out: target } => {
            let d = load_doc(&file)?;
            let rewritten = match to {
                RewriteTarget::FlatMux => flatten_mux(&d)?,
                RewriteTarget::Mie => mux_to_mie(&d)?,
                RewriteTarget::Cie => {
                    if classify(&d)?.used.contains(&ProbKind::Mux) {
                        mie_to_cie(&mux_to_mie(&d)?)?
                    } else {
                        mie_to_cie(&d)?
                    }
                }
            };
            let text = serialize_prxml(&rewritten);
            match target {
                Some(path) => write_file(&path, &text)?,
                None => write!(out, "{text}")?,
            }
            Ok(0)
        }
        Command::Gen { kind, input, out: stem, ordered } => {
            let text = read(&input)?;
            let parsed = |e| located(&input, e);
            let (d, w) = match kind {
                GenKind::SatCie => gen_sat_cie(&parse_dimacs(&text).map_err(parsed)?),
                GenKind::SatMuxind => gen_sat_muxind(&parse_dimacs(&text).map_err(parsed)?),
                GenKind::XcInddet => gen_xc_inddet(&parse_sets(&text).map_err(parsed)?),
                GenKind::XcMuxdet => gen_xc_muxdet(&parse_sets(&text).map_err(parsed)?),
                GenKind::XcMie => gen_xc_mie(&parse_sets(&text).map_err(parsed)?, ordered),
                GenKind::PmInd | GenKind::PmMux => {
                    let g = parse_edge_list(&text).map_err(parsed)?;
                    if kind == GenKind::PmInd {
                        gen_pm_ind(&g)
                    } else {
                        gen_pm_mux(&g)
                    }
                }
            };
            if ordered && kind != GenKind::XcMie {
                bail!("--ordered only applies to xc-mie");
            }
            let doc_path = with_suffix(&stem, "prxml");
            let world_path = with_suffix(&stem, "xml.sexp");
            write_file(&doc_path, &serialize_prxml(&d))?;
            write_file(&world_path, &serialize_xdoc(&w))?;
            writeln!(out, "wrote {} and {}", doc_path.display(), world_path.display())?;
            Ok(0)
        }
        Command::Selftest { seed } => {
            let reports = crate::selftest::run_all(seed);
            let mut ok = true;
            for r in &reports {
                writeln!(out, "{r}")?;
                ok &= r.passed();
            }
            writeln!(out, "{}", if ok { "all suites passed" } else { "some suites FAILED" })?;
            Ok(if ok { 0 } else { 2 })
        }
    }
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn print_probability(out: &mut dyn Write, p: &Rational) -> anyhow::Result<i32> {
    writeln!(out, "{}", display_probability(p))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("prxml").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["prob", "only-one"]).0, 2);
        assert_eq!(run_args(&["poss", "a", "b", "--algo", "magic"]).0, 2);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("selftest"));
    }

    #[test]
    fn missing_file_is_an_error() {
        let (code, _, err) = run_args(&["validate", "/nonexistent/x.prxml"]);
        assert_eq!(code, 2);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn suffixes() {
        assert_eq!(with_suffix(Path::new("out/k33"), "xml.sexp"), PathBuf::from("out/k33.xml.sexp"));
    }
}
