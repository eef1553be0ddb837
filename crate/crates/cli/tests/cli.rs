use std::path::PathBuf;
use std::process::Command;

use opgb::commands::{self, RunOptions};
use opgb::{format_element, format_presentation, parse_element, parse_presentation};
use opgb_core::OrderingSpec;
use opgb_testkit::gen;
use proptest::prelude::*;

fn shipped(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("operads").join(name)
}

fn opgb(args: &[&str]) -> (bool, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_opgb")).args(args).output().unwrap();
    (
        out.status.success(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn parses_declarations_relations_and_actions() {
    let p = parse_presentation("generator m 2\nrelation m(m(1,2),3) - m(1,m(2,3))\n").unwrap();
    assert_eq!(p.signature.len(), 1);
    assert_eq!(p.relations.len(), 1);
    assert!(p.actions.is_empty());
    assert_eq!(p.ordering, None);

    let p = parse_presentation("generator b 2  # bracket\naction b s1 = -1*b\n").unwrap();
    assert_eq!(p.actions.get(0, 1).unwrap().len(), 1);

    let p = parse_presentation("generator m 2\nrelation 3/2*m(1,2)\nordering rpermrpath").unwrap();
    assert_eq!(format_element(&p.relations[0], &p.signature), "3/2*m(1,2)");
    assert_eq!(p.ordering, Some(OrderingSpec::all()[7]));
}

#[test]
fn reports_errors_with_location() {
    let e = parse_presentation("generator m 2\nrelation m(1,2,3)\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 10));
    assert!(e.message.contains("arity"), "{e}");

    let e = parse_presentation("generator m 2\nrelation n(1,2)\n").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(e.message.contains("undeclared"));

    let e = parse_presentation("generator m 2\ngenerator m 3\n").unwrap_err();
    assert_eq!(e.line, 2);

    let e = parse_presentation("generator m 2\nrelation m(1,2) +\n").unwrap_err();
    assert!(e.message.contains("end of input"));

    let e = parse_presentation("generator m 2\nrelation m(2,1)\n").unwrap_err();
    assert!(e.message.contains("no action"), "{e}");

    let e = parse_presentation("generator m 2\nrelation m(1,3)\n").unwrap_err();
    assert_eq!(e.line, 2);

    let e = parse_presentation("generator m 2\naction m s1 = 2*m\n").unwrap_err();
    assert!(e.message.contains("twice"), "{e}");

    let e = parse_presentation("generator m 2\nrelation m(1,2) - m(1,2)\n").unwrap_err();
    assert!(e.message.contains("zero"));
}

#[test]
fn non_canonical_input_goes_through_the_actions() {
    let p = parse_presentation("generator b 2\naction b s1 = -1*b\nrelation b(2,1) + b(1,2)\n");
    assert!(p.unwrap_err().message.contains("zero"));
    let p = parse_presentation("generator b 2\naction b s1 = -1*b\nrelation b(b(2,3),1)\n").unwrap();
    assert_eq!(format_element(&p.relations[0], &p.signature), "-b(1,b(2,3))");
}

#[test]
fn shipped_files_round_trip() {
    for name in ["lie.op", "com.op", "assoc.op", "magma.op"] {
        let p = commands::load(&shipped(name)).unwrap();
        assert_eq!(parse_presentation(&format_presentation(&p)).unwrap(), p, "{name}");
        let closed = commands::symmetrize(&p, false).unwrap();
        let q = parse_presentation(&closed).unwrap();
        assert_eq!(parse_presentation(&format_presentation(&q)).unwrap(), q);
        let result = commands::groebner(&p, &RunOptions { max_arity: Some(5), ..Default::default() }).unwrap();
        let r = parse_presentation(&result).unwrap();
        assert_eq!(parse_presentation(&format_presentation(&r)).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn elements_round_trip(seed in any::<u64>()) {
        let mut rng = opgb_testkit::rng(seed);
        let sig = gen::signature(&mut rng);
        let mut text = String::new();
        for g in sig.generators() {
            text.push_str(&format!("generator {} {}\n", g.name, g.arity));
        }
        let file = parse_presentation(&text).unwrap();
        let order = OrderingSpec::all()[(seed % 8) as usize];
        let n = 2 + (seed % 5) as usize;
        let f = gen::polynomial(&mut rng, sig.generators(), n, 5, order);
        let back = parse_element(&format_element(&f, &sig), &file, order).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn end_to_end() {
    let lie = shipped("lie.op");
    let (ok, out, _) = opgb(&["groebner", lie.to_str().unwrap(), "--ordering", "pathrperm", "--max-arity", "6"]);
    assert!(ok);
    assert!(out.contains("# complete true"));
    assert!(out.contains("# quadratic true"));
    assert!(out.contains("# dims 1:1 2:1 3:2 4:6 5:24 6:120"));

    let (ok, out, _) = opgb(&["dims", shipped("magma.op").to_str().unwrap(), "--max-arity", "6"]);
    assert!(ok);
    assert_eq!(out, "1 1 3 15 105 945\n");

    let assoc = shipped("assoc.op");
    let (ok, out, _) = opgb(&["scm", "m(m(1,2),3)", "m(m(1,2),3)", "--file", assoc.to_str().unwrap()]);
    assert!(ok);
    assert_eq!(out.lines().count(), 3);

    let (ok, out, _) = opgb(&["--json", "groebner", assoc.to_str().unwrap()]);
    assert!(ok);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["truncation"], serde_json::Value::Null);
    assert_eq!(v["dims"]["4"], 24);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);

    let (ok, out, _) = opgb(&["reduce", assoc.to_str().unwrap(), "m(m(1,2),3)"]);
    assert!(ok);
    assert_eq!(out, "m(1,m(2,3))\n");

    let (ok, out, _) = opgb(&["divide", "m(m(1,2),3)", "m(1,2)"]);
    assert!(ok);
    assert!(out.starts_with("yes"));

    let (ok, out, _) = opgb(&["orderings"]);
    assert!(ok);
    assert_eq!(out.lines().count(), 8);

    let (ok, _, err) = opgb(&["dims", "/nonexistent.op"]);
    assert!(!ok);
    assert!(err.starts_with("error:"));

    let (ok, _, err) = opgb(&["reduce", assoc.to_str().unwrap(), "m(1,2,3)"]);
    assert!(!ok);
    assert!(err.contains("arity"));
}

#[test]
fn output_does_not_depend_on_threads() {
    let assoc = shipped("assoc.op");
    let path = assoc.to_str().unwrap();
    for ordering in ["pathperm", "permpath"] {
        let base = ["groebner", path, "--ordering", ordering, "--max-arity", "5"];
        let one = opgb(&[&base[..], &["--threads", "1"]].concat());
        let four = opgb(&[&base[..], &["--threads", "4"]].concat());
        let again = opgb(&base);
        assert!(one.0);
        assert_eq!(one.1, four.1);
        assert_eq!(one.1, again.1);
    }
}
