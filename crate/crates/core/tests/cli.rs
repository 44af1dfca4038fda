use std::path::{Path, PathBuf};

use prxml::cli::run;

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn corpus(name: &str) -> String {
    format!("{CORPUS}/{name}")
}

fn prxml(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("prxml").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn conference_probability_every_route() {
    let (d, w1, root) = (corpus("conferences.prxml"), corpus("conferences-full.xml.sexp"), corpus("conferences-root.xml.sexp"));
    for algo in ["auto", "oracle", "ordered-dp"] {
        if algo == "ordered-dp" {
            assert_eq!(prxml(&["prob", &d, &w1, "--algo", algo]).0, 2, "the conference document is not local");
            continue;
        }
        assert_eq!(prxml(&["prob", &d, &w1, "--algo", algo]), (0, "567/1250 (= 0.4536)\n".into(), String::new()));
        assert_eq!(prxml(&["prob", &d, &root, "--algo", algo]).1, "3/50 (= 0.06)\n");
    }
    assert_eq!(prxml(&["eposs", &d, &w1]).1, "567/1250 (= 0.4536)\n");
    assert_eq!(prxml(&["eposs", &d, &root, "--algo", "conditioned"]).1, "3/50 (= 0.06)\n");
}

#[test]
fn validate_reports_class_and_violations() {
    let (code, out, _) = prxml(&["validate", &corpus("conferences.prxml")]);
    assert_eq!(code, 0);
    assert!(out.contains("class: {det, ind, mux, cie}"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.prxml", r#"(prxml (events) (ordered false) (node "a" (mux (2/3 (node "b")) (2/3 (node "c")))))"#);
    let (code, out, _) = prxml(&["validate", s(&bad)]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid"), "{out}");
}

#[test]
fn syntax_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.prxml", "(prxml (events)\n  (ordered true)\n  (ind))");
    let (code, _, err) = prxml(&["validate", s(&bad)]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.prxml:3:3"), "{err}");
}

#[test]
fn poss_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.prxml", r#"(prxml (events) (ordered false) (node "a" (ind (1/2 (node "b")) (1/2 (node "b")))))"#);
    let yes = write(dir.path(), "yes.xml.sexp", r#"(xml (ordered false) (node "a" (node "b") (node "b")))"#);
    let no = write(dir.path(), "no.xml.sexp", r#"(xml (ordered false) (node "a" (node "b") (node "b") (node "b")))"#);
    for algo in ["auto", "oracle", "unordered-single"] {
        assert_eq!(prxml(&["poss", s(&d), s(&yes), "--algo", algo]).1, "possible world\n");
        let (code, out, _) = prxml(&["poss", s(&d), s(&no), "--algo", algo]);
        assert_eq!((code, out.as_str()), (1, "not a possible world\n"));
    }
}

#[test]
fn world_order_follows_document() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "d.prxml", r#"(prxml (events) (ordered true) (node "a" (node "b") (node "c")))"#);
    let w = write(dir.path(), "w.xml.sexp", r#"(xml (ordered false) (node "a" (node "c") (node "b")))"#);
    let (code, out, err) = prxml(&["prob", s(&d), s(&w)]);
    assert_eq!(code, 0);
    assert_eq!(out, "0 (= 0)\n");
    assert!(err.contains("order mode"));
}

#[test]
fn oracle_cap_is_enforced() {
    let (code, _, err) = prxml(&["worlds", &corpus("conferences.prxml"), "--cap", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("exceed the cap of 4"), "{err}");
}

#[test]
fn worlds_lists_the_distribution() {
    let (code, out, _) = prxml(&["worlds", &corpus("conferences.prxml")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("9 worlds\n"));
    assert!(out.contains("; 567/1250"));
}

#[test]
fn matches_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let sets = write(dir.path(), "x.sets", "universe a b c\na b\nc\na\n");
    let stem = dir.path().join("xc");
    assert_eq!(prxml(&["gen", "xc-mie", s(&sets), s(&stem), "--ordered"]).0, 0);
    let (d, w) = (dir.path().join("xc.prxml"), dir.path().join("xc.xml.sexp"));
    let m = dir.path().join("xc.matches");
    let (code, out, _) = prxml(&["matches", s(&d), s(&w), "--emit", s(&m)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(prxml(&["eposs", s(&d), s(&w), "--matches", s(&m), "--algo", "mie"]).1, "1/8 (= 0.125)\n");
    assert_eq!(prxml(&["prob", s(&d), s(&w)]).1, "1/8 (= 0.125)\n");
}

#[test]
fn rewrite_chain_keeps_worlds() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(
        dir.path(),
        "m.prxml",
        r#"(prxml (events) (ordered true) (node "a" (mux (1/2 (node "b")) (1/3 (mux (1/2 (node "c")) (1/4 (node "d")))))))"#,
    );
    let before = prxml(&["worlds", s(&d)]).1;
    for to in ["flat-mux", "mie", "cie"] {
        let out = dir.path().join(format!("{to}.prxml"));
        assert_eq!(prxml(&["rewrite", s(&d), "--to", to, "--out", s(&out)]).0, 0);
        assert_eq!(prxml(&["worlds", s(&out)]).1, before, "{to}");
    }
}

#[test]
fn generated_gadgets() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "c (x or y) and (not x or y)\np cnf 2 2\n1 2 0\n-1 2 0\n");
    let graph = write(dir.path(), "k33.edges", "n 3\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n2 0\n2 1\n2 2\n");
    let cases = [("sat-cie", &cnf, "1/2 (= 0.5)\n"), ("pm-ind", &graph, "3/256 (= 0.0117188)\n")];
    for (kind, input, expected) in cases {
        let stem = dir.path().join(kind);
        assert_eq!(prxml(&["gen", kind, s(input), s(&stem)]).0, 0);
        let d = format!("{}.prxml", s(&stem));
        let w = format!("{}.xml.sexp", s(&stem));
        assert_eq!(prxml(&["prob", &d, &w]).1, expected, "{kind}");
        assert_eq!(prxml(&["poss", &d, &w]).0, 0, "{kind}");
    }
    assert_eq!(prxml(&["gen", "sat-cie", s(&cnf), "x", "--ordered"]).0, 2);
}
