//! Drive the command-line layer in-process on a small JSON-lines corpus.
//!
//! ```bash
//! cargo run --example cli_corpus
//! ```

use uniconj::cli::run_args;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = [
        r#"{"rank": 2, "left": ["a", "b"], "right": ["Bab", "b"]}"#,
        r#"{"rank": 2, "left": ["a", "b"], "right": ["a", "BAbab"]}"#,
        r#"{"rank": 2, "left": [["a", "b"], ["ab"]], "right": [["b", "a"], ["ba"]]}"#,
    ];
    let path = std::env::temp_dir().join("uniconj-example-corpus.jsonl");
    std::fs::write(&path, corpus.join("\n"))?;

    let (status, out) = run_args(["corpus", "--input", path.to_str().expect("utf8 path")]);
    println!("{out}\nstatus {status:?}");

    let (status, out) = run_args([
        "--table",
        "uniconj",
        "decide",
        "--left",
        "ab,b",
        "--right",
        "BAabab,BAbab",
    ]);
    println!("\n{out}\nstatus {status:?}");
    Ok(())
}
