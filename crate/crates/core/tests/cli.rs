use std::process::Command;

use serde_json::Value;

fn fgroup(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_fgroup"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf8");
    let value = serde_json::from_str(text.trim()).unwrap_or(Value::String(text));
    (out.status.code().expect("exit code"), value)
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("fgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn uniconj_decide_and_criterion() {
    let (code, v) = fgroup(&[
        "uniconj", "decide", "--rank", "2", "--left", "a,b", "--right", "Bab,b",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["conjugator"], "b");
    let (code, v) = fgroup(&["uniconj", "decide", "--left", "a,b", "--right", "a,BAbab"]);
    assert_eq!((code, v["answer"].as_str()), (1, Some("no")));
    let (code, v) = fgroup(&[
        "uniconj",
        "criterion",
        "--L",
        "3",
        "--left",
        "a,b",
        "--right",
        "a,BAbab",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["witness_word"], "x1 x2");
    assert_eq!(v["L_used"], 3);
    let (code, v) = fgroup(&["uniconj", "probe", "--left", "a,b", "--right", "a,BAbab"]);
    assert_eq!((code, v["status"].as_str()), (0, Some("fails-at")));
}

#[test]
fn whitehead_from_json_file() {
    let path = scratch(
        "blocks.json",
        r#"{"rank": 2, "left": [["a", "b"], ["ab"]], "right": [["b", "a"], ["ba"]]}"#,
    );
    let (code, v) = fgroup(&[
        "whitehead",
        "mixed",
        "--blocks-json",
        &path,
        "--mode",
        "empirical",
        "--C",
        "3",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["verified"], true);
    let (code, v) = fgroup(&["whitehead", "exact", "--blocks-json", &path]);
    assert_eq!((code, v["answer"].as_str()), (0, Some("yes")));
    let (code, v) = fgroup(&["whitehead", "minimize", "--tuple", "aab"]);
    assert_eq!((code, v["total_length"].as_u64()), (0, Some(1)));
}

#[test]
fn paper_mode_hits_the_resource_guard() {
    let (code, v) = fgroup(&[
        "whitehead",
        "mixed",
        "--left",
        "ab,b",
        "--right",
        "ba,a",
        "--mode",
        "paper",
    ]);
    assert_eq!(code, 2, "{v}");
    assert!(v["error"].as_str().unwrap().contains("limit"));
}

#[test]
fn bounds_and_geometry() {
    let (code, v) = fgroup(&[
        "bounds", "show", "--name", "hbar", "--len", "1", "--delta", "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "1");
    let (code, v) = fgroup(&[
        "bounds", "show", "--name", "C_main", "--len", "2", "--n", "2", "--delta", "1",
    ]);
    assert_eq!(code, 3, "{v}");
    let (code, v) = fgroup(&[
        "bounds",
        "show",
        "--name",
        "C_main",
        "--len",
        "2",
        "--n",
        "2",
        "--delta",
        "1",
        "--override",
        "minasyan_k0=4",
    ]);
    assert_eq!(code, 0, "{v}");

    let pres = scratch("genus2.txt", "# genus two\n4\nabABcdCD\n");
    let (code, v) = fgroup(&["geom", "dehn", "--presentation", &pres, "--word", "cdCDab"]);
    assert_eq!(code, 0);
    assert_eq!(v["trivial"], false);
    let (_, v) = fgroup(&[
        "geom",
        "dehn",
        "--presentation",
        &pres,
        "--word",
        "cdCDabAB",
    ]);
    assert_eq!(v["trivial"], true);
    let (code, v) = fgroup(&["geom", "delta-est", "--rank", "2", "--radius", "4"]);
    assert_eq!((code, v["delta"].as_str()), (0, Some("0")));
    let (code, v) = fgroup(&["geom", "axis-dist", "--g", "a", "--h", "baB"]);
    assert_eq!(
        (code, v["distance"].as_str(), v["bound"].as_str()),
        (0, Some("1"), Some("1"))
    );
    let (code, _) = fgroup(&[
        "geom",
        "axis-dist",
        "--g",
        "a",
        "--h",
        "baB",
        "--radius",
        "2",
    ]);
    assert_eq!(code, 3);
    let (code, v) = fgroup(&[
        "geom",
        "check",
        "shift-decompose",
        "--z",
        "ab",
        "--w",
        "a",
        "--b",
        "b",
        "--k",
        "3",
    ]);
    assert_eq!((code, v["holds"].as_bool()), (0, Some(true)), "{v}");
    let (code, v) = fgroup(&["geom", "check", "rectangle", "--points", "1,a,ab,b"]);
    assert_eq!((code, v["holds"].as_bool()), (0, Some(true)));
}

#[test]
fn memory_guard_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_fgroup"))
        .args(["geom", "ball", "--rank", "3", "--radius", "12"])
        .env("UNICONJ_GUARD_MB", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_seeded_and_byte_identical() {
    let args = [
        "verify",
        "--suite",
        "all",
        "--samples",
        "100",
        "--seed",
        "7",
    ];
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_fgroup"))
            .args(args)
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert!(v["version"].as_str().unwrap().starts_with("uniconj "));
}

#[test]
fn corpus_lines() {
    let body = [
        r#"{"rank": 2, "left": ["a", "b"], "right": ["Bab", "b"]}"#,
        r#"{"rank": 2, "left": [["a"], ["b"]], "right": [["b"], ["a"]]}"#,
        r#"{"rank": 2, "left": ["a"], "right": ["c"]}"#,
    ]
    .join("\n");
    let path = scratch("corpus.jsonl", &body);
    let out = Command::new(env!("CARGO_BIN_EXE_fgroup"))
        .args(["corpus", "--input", &path])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3]["results"], 3);
    assert_eq!(lines[0]["kind"], "tuple-pair");
    assert_eq!(lines[0]["conjugator"], "b");
    assert_eq!(lines[1]["kind"], "block-system");
    assert_eq!(lines[1]["answer"], "yes");
    assert!(lines[2]["error"].is_string());
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(fgroup(&["uniconj", "decide", "--left", "a"]).0, 3);
    assert_eq!(fgroup(&["verify", "--suite", "nope"]).0, 3);
    assert_eq!(fgroup(&["--version"]).0, 0);
}
