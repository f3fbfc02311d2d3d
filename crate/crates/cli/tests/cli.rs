use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigInt;
use serde_json::Value;

use twist_core::fixtures::{Fixture, Payload};
use twist_core::text::{
    parse_hom, parse_lambda_matrix, parse_monodromy, parse_presentation, parse_seifert, print_hom, print_lambda_matrix,
    print_monodromy, print_presentation, print_seifert,
};
use twist_core::{LambdaMatrix, Seifert};

fn twist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twist")).args(args).env_remove("TWIST_MAX_MINORS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_slice(&twist(&all).stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// The value after `key = ` on the human line that contains it.
fn human_value(text: &str, key: &str) -> String {
    let pat = format!("{key} = ");
    for line in text.lines() {
        for part in line.split("; ") {
            if let Some(v) = part.strip_prefix(&pat) {
                return v.to_string();
            }
        }
    }
    panic!("no `{key}` in\n{text}");
}

fn matrix_text(v: &Value) -> String {
    let rows: Vec<String> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.as_array().unwrap().iter().map(Value::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

const TREFOIL: &[&str] = &["monodromy", "--fixture", "trefoil-monodromy", "--d", "2", "--alpha", "Z/3:x=1,y=1"];

#[test]
fn trefoil_monodromy_golden() {
    let o = twist(TREFOIL);
    assert_eq!(o.status.code(), Some(0));
    let expected = "\
generators: x y
d = 2
alpha: Z/3 (x = 1, y = 1)
|G| = 3
H1 rank = 4
H = [[1, 0, -1, -1], [0, 1, -1, -1], [1, 1, -1, -1], [0, 0, -1, 0]]
det H = 1
delta = s^4 - s^3 - s + 1
branched H1 = Z/3
torsion = yes; principal = yes; monic = yes
verdict = consistent-with-fibred
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn homcheck_fixture_golden() {
    let o = twist(&["homcheck", "--fixture", "paper-s5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "target: A5\nrelations: 14/14 ok; image order = 60 (surjective)\n");
}

#[test]
fn figure_eight_seifert_golden() {
    let o = twist(&["seifert", "--fixture", "figure8-seifert", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\nH1 = Z/5; resultant = 5; agree = true\n"));
    assert!(stdout(&o).contains("alexander = t^2 - 3t + 1\n"));
}

#[test]
fn monodromy_json_matches_text() {
    let text = stdout(&twist(TREFOIL));
    let j = json(TREFOIL);
    assert_eq!(j["command"], "monodromy");
    assert_eq!(human_value(&text, "|G|"), j["group_order"].to_string());
    assert_eq!(human_value(&text, "H1 rank"), j["h1_rank"].to_string());
    assert_eq!(human_value(&text, "H"), matrix_text(&j["h"]));
    assert_eq!(human_value(&text, "det H"), j["det_h"].to_string());
    assert_eq!(human_value(&text, "d"), j["d"].to_string());
    for key in ["delta", "torsion", "principal", "monic", "verdict"] {
        assert_eq!(human_value(&text, key), j[key].as_str().unwrap(), "{key}");
    }
    assert_eq!(human_value(&text, "branched H1"), j["branched_h1"].as_str().unwrap());
    assert_eq!(j["alpha"]["x"], "1");
}

#[test]
fn seifert_json_matches_text() {
    let args = ["seifert", "--fixture", "figure8-seifert", "--d", "3", "--r", "2", "--n", "4", "--sweep", "9"];
    let text = stdout(&twist(&args));
    let j = json(&args);
    assert_eq!(human_value(&text, "alexander"), j["alexander"].as_str().unwrap());
    assert_eq!(human_value(&text, "S"), matrix_text(&j["s"]));
    assert_eq!(human_value(&text, "H1"), j["h1"].as_str().unwrap());
    assert_eq!(human_value(&text, "resultant"), j["resultant"].to_string());
    assert_eq!(human_value(&text, "agree"), j["agree"].to_string());
    assert_eq!(human_value(&text, "H"), matrix_text(&j["h"]));
    assert_eq!(human_value(&text, "det(H^4 - I)"), j["det_h_n_minus_i"].to_string());
    let chi: Vec<String> = j["character"].as_array().unwrap().iter().map(Value::to_string).collect();
    assert!(text.contains(&format!("character onto Z/2: {}\n", chi.join(" "))));
    let jump = &j["jump"];
    assert!(text.contains(&format!(
        "jump at (i, j) = ({}, {}); difference = {}; order = {}\n",
        jump["i"], jump["j"], jump["difference"], jump["order"]
    )));
    let rows = j["resultants"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        assert_eq!(human_value(&text, &format!("R_{}", row["d"])), row["value"].to_string());
    }
}

#[test]
fn homcheck_and_report_json_match_text() {
    let args = ["homcheck", "--fixture", "paper-s5"];
    let j = json(&args);
    assert_eq!(
        (j["killed"].as_u64(), j["relators"].as_u64(), j["image_order"].as_u64()),
        (Some(14), Some(14), Some(60))
    );
    assert_eq!(j["surjective"], true);
    assert_eq!(j["failed"].as_array().unwrap().len(), 0);

    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.txt", "2 2\ns-1 1\n0 s^2-s+1\n");
    let args = ["report", "--presentation", p.as_str()];
    let text = stdout(&twist(&args));
    let j = json(&args);
    assert_eq!(human_value(&text, "rank"), j["rank"].to_string());
    for key in ["delta", "torsion", "principal", "monic", "verdict"] {
        assert_eq!(human_value(&text, key), j[key].as_str().unwrap(), "{key}");
    }
    assert_eq!(j["delta"], "s^3 - 2s^2 + 2s - 1");
}

#[test]
fn resultant_command() {
    let o = twist(&["resultant", "--poly", "t^2 - t + 1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("R_2 = 3\n"));
    let j = json(&["resultant", "--fixture", "trefoil-seifert", "--sweep"]);
    let rows = j["resultants"].as_array().unwrap();
    assert_eq!(rows.len(), 29);
    // trefoil: R_d cycles with period 6 and vanishes at multiples of 6
    assert_eq!(rows[4]["value"], 0);
    assert_eq!(rows[0]["value"], 3);
}

#[test]
fn output_is_deterministic() {
    for args in [TREFOIL, &["selftest", "--seed", "7"]] {
        assert_eq!(twist(args).stdout, twist(args).stdout);
    }
}

#[test]
fn selftest_passes() {
    let o = twist(&["selftest", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("selftest: 8/8 passed; seed = 11\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| twist(args).status.code().unwrap();

    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["monodromy", "--fixture", "trefoil-monodromy", "--d", "2"]), 64);
    assert_eq!(code(&["seifert", "--fixture", "nope"]), 64);
    assert_eq!(code(&["seifert", "--fixture", "paper-s5"]), 64);
    assert_eq!(code(&["seifert", "--fixture", "figure8-seifert", "--d", "1"]), 64);
    assert_eq!(code(&["seifert", "--file", "/nonexistent/s.txt"]), 66);

    let bad = write(dir.path(), "bad.txt", "2\n1 1\n1 -1\n");
    assert_eq!(code(&["seifert", "--file", bad.as_str()]), 1);
    let garbled = write(dir.path(), "garbled.txt", "2\n1 q\n0 -1\n");
    let o = twist(&["seifert", "--file", garbled.as_str()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 3"));

    let lin = write(dir.path(), "lin.txt", "1 1\n2s-2\n");
    assert_eq!(code(&["report", "--presentation", lin.as_str()]), 2);
    let wide = write(dir.path(), "wide.txt", "1 2\ns-1 s-1\n");
    assert_eq!(code(&["report", "--presentation", wide.as_str()]), 3);
    let good = write(dir.path(), "good.txt", "1 1\ns^2-s+1\n");
    assert_eq!(code(&["report", "--presentation", good.as_str()]), 0);

    let capped = write(dir.path(), "capped.txt", "2 3\ns-1 1 0\n0 s 1\n");
    let run = |minors: &str| {
        Command::new(env!("CARGO_BIN_EXE_twist"))
            .args(["report", "--presentation", capped.as_str()])
            .env("TWIST_MAX_MINORS", minors)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("1"), Some(65));
    assert_eq!(run("100"), Some(3));
    assert_eq!(run("lots"), Some(64));

    let pres = write(dir.path(), "pres.txt", "generators: a b\nrelator: a b a^-1 b^-1\nrelator: a^2\n");
    let hom = write(dir.path(), "hom.txt", "target: S3\na = (1 2)\nb = (1 2 3)\n");
    let o = twist(&["homcheck", "--presentation", pres.as_str(), "--hom", hom.as_str()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("relations: 1/2 ok; image order = 6 (surjective)\nfailed relator 1: a b a^-1 b^-1\n"));
}

#[test]
fn errors_are_json_under_json_flag() {
    let o = twist(&["seifert", "--file", "/nonexistent/s.txt", "--json"]);
    assert_eq!(o.status.code(), Some(66));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["exit_code"], 66);
    let o = twist(&["seifert", "--json"]);
    assert_eq!(o.status.code(), Some(64));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["error"], "usage");
}

#[test]
fn fixture_payloads_round_trip() {
    for fixture in Fixture::ALL {
        match fixture.load::<BigInt>().unwrap() {
            Payload::Monodromy(m) => {
                let again = parse_monodromy(&print_monodromy(&m)).unwrap();
                assert_eq!(again.endo, m.endo);
                assert_eq!(again.names, m.names);
            }
            Payload::Seifert(s) => {
                let again: Seifert = parse_seifert(&print_seifert(&s)).unwrap();
                assert_eq!(again, s);
            }
            Payload::Representation { presentation, hom } => {
                let again = parse_presentation(&print_presentation(&presentation)).unwrap();
                assert_eq!(again.presentation, presentation.presentation);
                let wrapped = twist_core::text::TargetHom::Permutation(hom);
                let reparsed = parse_hom(&print_hom(&wrapped, &presentation.names), &presentation.names).unwrap();
                assert_eq!(reparsed.formatted_images(), wrapped.formatted_images());
            }
        }
    }
    let m: LambdaMatrix = parse_lambda_matrix("2 2\ns-1 3+s^-1\n0 -2s^2\n").unwrap();
    assert_eq!(parse_lambda_matrix::<BigInt>(&print_lambda_matrix(&m)).unwrap(), m);
    let unknot: Seifert = parse_seifert("0\n").unwrap();
    assert_eq!(unknot, Seifert::unknot());
}

#[test]
fn fixture_files_match_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let Payload::Seifert(s) = Fixture::Figure8Seifert.load::<BigInt>().unwrap() else { panic!() };
    let p = write(dir.path(), "f8.txt", &print_seifert(&s));
    let from_file = stdout(&twist(&["seifert", "--file", p.as_str(), "--d", "2"]));
    let from_fixture = stdout(&twist(&["seifert", "--fixture", "figure8-seifert", "--d", "2"]));
    assert_eq!(from_file, from_fixture);
}
