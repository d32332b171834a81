use std::path::PathBuf;

use clap::Parser;
use qflag::cli::{execute, Cli};
use qflag::quiver::{adapted_word, Orientation};
use qflag::rootdata::CartanDatum;

const CASES: &[(&str, &str, &str, &[&str])] = &[
    ("serre", "A2", "", &["--height", "4"]),
    ("serre", "A3", "", &["--height", "4"]),
    ("serre", "B2", "", &["--height", "4"]),
    ("pairing", "A2", "1,2,1", &["--height", "5"]),
    ("pairing", "B2", "1,2,1,2", &["--height", "4"]),
    ("pairing", "A3", "1,2,1,3,2,1", &["--height", "3"]),
    ("prop21", "A2", "1,2,1", &[]),
    ("prop21", "B2", "2,1,2,1", &[]),
    ("prop21", "A3", "2,1,3,2,1,3", &[]),
    ("cor22", "A2", "2,1,2", &["--height", "5"]),
    ("cor22", "A3", "1,2,1,3,2,1", &["--height", "3"]),
    ("prop31", "A2", "1,2,1", &["--height", "4"]),
    ("prop31", "A3", "1,3,2,1,3,2", &["--height", "3"]),
    ("prop32", "A2", "1,2,1", &["--height", "4"]),
    ("prop32", "A3", "1,3,2,1,3,2", &["--height", "3"]),
    ("prop41", "A2", "2>1", &[]),
    ("prop41", "A3", "2>1,2>3", &[]),
    ("prop41", "D4", "1>2,3>2,4>2", &[]),
    ("prop42", "A2", "2>1", &["--height", "4"]),
    ("prop42", "A3", "1>2,3>2", &["--height", "3"]),
    ("thm51", "A2", "2>1", &["--height", "4"]),
    ("thm51", "A3", "2>1,2>3", &["--height", "3"]),
    ("claim43", "A3", "", &[]),
    ("remark43", "D4", "2,1,3,2", &[]),
];

fn args(suite: &str, ty: &str, target: &str, extra: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = ["qflag", "check", suite, "--type", ty].iter().map(|s| s.to_string()).collect();
    if target.contains('>') {
        v.extend(["--orientation".into(), target.into()]);
    } else if suite == "remark43" {
        v.extend(["--prefix".into(), target.into()]);
    } else if !target.is_empty() {
        v.extend(["--word".into(), target.into()]);
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

/// Orientation cases are filed under their adapted word.
fn path(suite: &str, ty: &str, target: &str) -> PathBuf {
    let word = if target.contains('>') {
        let d = CartanDatum::from_label(ty).unwrap();
        let w = adapted_word(&d, &Orientation::parse(&d, target).unwrap()).unwrap();
        w.word().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    } else {
        target.to_string()
    };
    let tag: String = word.chars().map(|c| if c.is_ascii_digit() { c } else { '-' }).collect();
    let name = if tag.is_empty() { format!("{suite}_{ty}.json") } else { format!("{suite}_{ty}_{tag}.json") };
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn render(a: &[String]) -> String {
    let cli = Cli::try_parse_from(a).unwrap();
    execute(&cli).unwrap().render(cli.format).unwrap()
}

#[test]
fn golden_files() {
    for &(suite, ty, target, extra) in CASES {
        let p = path(suite, ty, target);
        let expected = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        let got = render(&args(suite, ty, target, extra));
        assert!(got == expected, "{} differs from the current output", p.display());
        let v: serde_json::Value = serde_json::from_str(&got).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["passed"], true, "{}", p.display());
    }
}

/// Regenerates the corpus: `cargo test --test fixtures -- --ignored`.
#[test]
#[ignore]
fn bless_golden_files() {
    for &(suite, ty, target, extra) in CASES {
        let p = path(suite, ty, target);
        std::fs::create_dir_all(p.parent().unwrap()).unwrap();
        std::fs::write(&p, render(&args(suite, ty, target, extra))).unwrap();
    }
}
