use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use ternary_cli::{format, Document, Structure};
use ternary_core::random::{random_actions, random_algebra, random_bialgebra, random_coalgebra, random_invertible, rng};
use ternary_core::{FieldSpec, MatchedPairData, Trimodule, Variant};

fn ternary(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ternary"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn random_structure(kind: u8, field: FieldSpec, seed: u64) -> Structure {
    let variant = Variant::ALL[(seed % 3) as usize];
    let pair_variant = if variant == Variant::Weak { Variant::Total } else { variant };
    match kind {
        0 => Structure::Algebra(random_algebra(field, 2, seed, 1)),
        1 => Structure::Coalgebra(random_coalgebra(field, 3, seed, 2)),
        2 => Structure::Bialgebra(random_bialgebra(field, 2, seed, 1, variant)),
        3 => {
            let acts = random_actions(field, 2, 3, &mut rng(seed), 1);
            let t = Trimodule::new(random_algebra(field, 2, seed, 1), acts, pair_variant, seed % 2 == 0).unwrap();
            Structure::Trimodule(t)
        }
        4 => {
            let mut r = rng(seed);
            let mp = MatchedPairData::new(
                random_algebra(field, 1, seed, 1),
                random_algebra(field, 2, seed + 1, 1),
                random_actions(field, 1, 2, &mut r, 1),
                random_actions(field, 2, 1, &mut r, 1),
                pair_variant,
                seed % 2 == 1,
            )
            .unwrap();
            Structure::MatchedPair(mp)
        }
        _ => Structure::Map(random_invertible(field, 3, seed)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn read_inverts_write(kind in 0u8..6, prime in any::<bool>(), seed in any::<u64>(), comment in proptest::option::of("[ -~]{0,20}")) {
        let field = if prime { FieldSpec::prime(7).unwrap() } else { FieldSpec::Rational };
        let doc = Document { structure: random_structure(kind, field, seed), comment };
        let text = format::write(&doc);
        prop_assert_eq!(&format::read(&text).unwrap(), &doc);
        prop_assert_eq!(format::write(&format::read(&text).unwrap()), text);
        prop_assert_eq!(format::read(&format::write_line(&doc)).unwrap(), doc);
    }
}

#[test]
fn spec_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(ternary(d, &["example", "et1", "-o", "et1.json"]).0, 0);
    assert_eq!(ternary(d, &["verify", "et1.json", "--variant", "total", "--as", "algebra"]).0, 0);

    let (code, out, _) = ternary(d, &["verify", "et1.json", "--variant", "partial"]);
    assert_eq!(code, 1);
    // 3 e_1 at the all-e_1 tuple
    assert!(out.contains("(0,0,0,0,0,0)"), "{out}");
    assert!(out.contains("sum = 3"), "{out}");

    assert_eq!(ternary(d, &["example", "ep1", "-o", "ep1.json"]).0, 0);
    assert_eq!(ternary(d, &["dualize", "ep1.json", "-o", "ep1-dual.json"]).0, 0);
    let (code, out, _) = ternary(d, &["verify", "ep1-dual.json", "--variant", "partial", "--as", "coalgebra"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("dup.json"), r#"{"kind": "ternary_algebra", "field": {"type": "prime", "p": 3}, "dim": 1,
  "product": [{"idx": [0,0,0,0], "val": "1"}, {"idx": [0,0,0,0], "val": "2"}]}"#)
    .unwrap();
    let (code, _, err) = ternary(d, &["verify", "dup.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("record 1"), "{err}");

    std::fs::write(d.join("broken.json"), "{\n\"kind\": \"ternary_algebra\",\n]").unwrap();
    let (code, _, err) = ternary(d, &["verify", "broken.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    assert_eq!(ternary(d, &["verify", "missing.json"]).0, 2);
    assert_eq!(ternary(d, &["example", "et1", "-o", "et1.json"]).0, 0);
    assert_eq!(ternary(d, &["verify", "et1.json", "--as", "coalgebra"]).0, 2);
    assert_eq!(ternary(d, &["verify", "et1.json", "--variant", "sideways"]).0, 2);
}

#[test]
fn engine_all_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["et1", "ep1", "ep2", "et2", "a2", "weak-not-total-f2"] {
        let file = format!("{name}.json");
        assert_eq!(ternary(d, &["example", name, "-o", &file]).0, 0);
        for variant in ["total", "partial", "weak"] {
            let (fast, _, _) = ternary(d, &["verify", &file, "--variant", variant]);
            let (oracle, _, _) = ternary(d, &["verify", &file, "--variant", variant, "--engine", "oracle"]);
            let (all, out, _) = ternary(d, &["verify", &file, "--variant", variant, "--engine", "all"]);
            assert_eq!(fast, oracle, "{name} {variant}");
            assert_eq!(all, fast, "{name} {variant}: {out}");
        }
    }
}

#[test]
fn engine_all_reports_a_transcription_disagreement() {
    // A partial matched pair where the printed BBAAA identity and the
    // bicrossed product disagree. Sparse data makes such instances common.
    let f5 = FieldSpec::prime(5).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let found = (0..400u64).find_map(|seed| {
        let mut r = rng(seed);
        let mp = MatchedPairData::new(
            random_algebra(f5, 2, seed, 4),
            random_algebra(f5, 2, seed + 7, 4),
            random_actions(f5, 2, 2, &mut r, 4),
            random_actions(f5, 2, 2, &mut r, 4),
            Variant::Partial,
            false,
        )
        .unwrap();
        let report = mp.check().unwrap();
        report.disagreements.iter().any(|x| x.contains("BBAAA")).then_some(mp)
    });
    let mp = found.expect("a disagreeing instance among 400 seeds");
    let doc = Document::new(Structure::MatchedPair(mp));
    std::fs::write(d.join("mp.json"), format::write(&doc)).unwrap();
    let (code, out, _) = ternary(d, &["verify", "mp.json", "--engine", "all"]);
    assert_eq!(code, 3, "{out}");
    assert!(out.contains("engine disagreement: printed BBAAA"), "{out}");
}

#[test]
fn constructions_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let base = ternary_core::fixtures::et1();
    let t = ternary_core::regular_trimodule(&base, ternary_core::Regular::Lmr, Variant::Total, false).unwrap();
    std::fs::write(d.join("t.json"), format::write(&Document::new(Structure::Trimodule(t.clone())))).unwrap();
    assert_eq!(ternary(d, &["verify", "t.json", "--as", "trimodule"]).0, 0);
    assert_eq!(ternary(d, &["semidirect", "t.json", "-o", "sum.json"]).0, 0);
    assert_eq!(ternary(d, &["verify", "sum.json", "--variant", "total", "--engine", "all"]).0, 0);
    let text = std::fs::read_to_string(d.join("sum.json")).unwrap();
    let Structure::Algebra(sum) = format::read(&text).unwrap().structure else {
        panic!("semidirect writes an algebra");
    };
    assert_eq!(sum, ternary_core::semidirect_sum(&t));

    assert_eq!(ternary(d, &["dualize", "t.json", "-o", "dual.json"]).0, 0);
    assert_eq!(ternary(d, &["verify", "dual.json"]).0, 0);
}

#[test]
fn search_streams_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, out, err) = ternary(d, &["search", "--dim", "1", "--field", "p3", "--target", "partial"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(err.contains("3 hits"), "{err}");
    assert!(err.contains("small characteristic"), "{err}");

    let (code, _, _) = ternary(
        d,
        &["search", "--dim", "1", "--field", "q", "--bound", "2", "--target", "total", "--out-dir", "hits"],
    );
    assert_eq!(code, 0);
    let mut names: Vec<_> = std::fs::read_dir(d.join("hits")).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5);
    for n in names {
        let f = format!("hits/{}", n.to_string_lossy());
        assert_eq!(ternary(d, &["verify", &f, "--variant", "total"]).0, 0);
    }

    assert_eq!(ternary(d, &["search", "--dim", "1", "--field", "q", "--target", "total"]).0, 2);
    assert_eq!(ternary(d, &["search", "--dim", "1", "--field", "p4", "--target", "total"]).0, 2);
}

#[test]
fn iso_none_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let f3 = r#"{"type": "prime", "p": 3}"#;
    std::fs::write(
        d.join("zero.json"),
        format!(r#"{{"kind": "ternary_algebra", "field": {f3}, "dim": 1}}"#),
    )
    .unwrap();
    std::fs::write(
        d.join("one.json"),
        format!(r#"{{"kind": "ternary_algebra", "field": {f3}, "dim": 1, "product": [{{"idx": [0,0,0,0], "val": "1"}}]}}"#),
    )
    .unwrap();
    let (code, out, _) = ternary(d, &["iso", "zero.json", "one.json"]);
    assert_eq!((code, out.trim()), (1, "none"));
    assert_eq!(ternary(d, &["iso", "one.json", "one.json"]).0, 0);
}

#[test]
fn every_example_is_readable_and_commented() {
    for (name, _) in ternary_cli::commands::EXAMPLES {
        let doc = ternary_cli::commands::example(name).unwrap();
        assert!(doc.comment.is_some(), "{name}");
        assert_eq!(format::read(&format::write(&doc)).unwrap(), doc);
    }
    for i in 1..=7 {
        assert!(ternary_cli::commands::example(&format!("a{i}")).is_some());
    }
    assert!(ternary_cli::commands::example("a8").is_none());
}
