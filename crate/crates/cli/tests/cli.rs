use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltasg")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Runs with `--json` and returns the report (the last stdout line).
fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    let text = stdout(&o);
    let last = text.lines().last().unwrap_or_default();
    (code(&o), serde_json::from_str(last).unwrap())
}

fn result<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no result {name} in {r}"))
}

#[test]
fn check_examples() {
    let (c, r) = report(&["check", &data("z4.tbl"), "--props", "delta,we"]);
    assert_eq!(c, 0);
    assert_eq!(result(&r, "delta")["value"], true);
    assert_eq!(result(&r, "we")["value"], true);
    assert_eq!(r["input"]["order"], 4);
    assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);

    let (c, r) = report(&["check", &data("z6.tbl"), "--props", "delta"]);
    assert_eq!(c, 1);
    let delta = result(&r, "delta");
    assert_eq!(delta["value"], false);
    assert_eq!(delta["witness"]["first_generator"], serde_json::json!([0, 2]));
    assert_eq!(delta["witness"]["second_generator"], serde_json::json!([0, 3]));

    let (c, r) = report(&["check", &data("rz2.tbl"), "--props", "medial"]);
    assert_eq!(c, 0);
    assert_eq!(result(&r, "medial")["value"], true);
}

#[test]
fn check_reports_every_property() {
    let (c, r) = report(&["check", &data("rz2.tbl")]);
    assert_eq!(c, 1);
    let names: Vec<&str> = r["results"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["delta", "we", "nil", "rcomm", "medial", "leftcomm", "permutative", "ideal-chain"]);
    assert_eq!(result(&r, "nil")["value"], false);
    assert_eq!(result(&r, "leftcomm")["value"], true);
    assert_eq!(result(&r, "permutative")["witness"], serde_json::json!({ "degree": 3, "permutation": [1, 0, 2] }));
}

#[test]
fn text_and_json_carry_the_same_facts() {
    let path = data("z6.tbl");
    let (_, r) = report(&["check", &path]);
    let text = stdout(&run(&["check", &path]));
    for c in r["results"].as_array().unwrap() {
        let value = match &c["value"] {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        assert!(text.contains(&format!("{}: {value}", c["name"].as_str().unwrap())), "{text}");
        if let Some(w) = c.get("witness") {
            assert!(text.contains(&format!("witness: {w}")), "{text}");
        }
    }
    assert!(text.contains(r["input"]["sha256"].as_str().unwrap()));
}

#[test]
fn classify_examples() {
    let (c, r) = report(&["classify", &data("b0.tbl")]);
    assert_eq!((c, &result(&r, "template")["value"]), (0, &Value::from("B0")));
    let (c, r) = report(&["classify", &data("n3.json")]);
    assert_eq!((c, &result(&r, "template")["value"]), (0, &Value::from("NIL_CHAIN")));
    let (c, r) = report(&["classify", &data("z6.tbl")]);
    assert_eq!((c, &result(&r, "template")["value"]), (1, &Value::from("NOT_WE_DELTA")));
    let (_, r) = report(&["classify", &data("z4.tbl")]);
    assert_eq!(result(&r, "template")["witness"]["cyclic_p_group"]["group"], serde_json::json!({ "p": 2, "k": 2 }));
}

#[test]
fn theorem1_examples() {
    let (c, r) = report(&["theorem1", &data("b0.tbl")]);
    assert_eq!(c, 1);
    assert_eq!(result(&r, "decompositions")["value"], 1);
    assert_eq!(result(&r, "candidate 1 condition (1)")["value"], false);
    assert_eq!(result(&r, "candidate 1")["data"]["vacuous"], serde_json::json!([5]));

    let (c, r) = report(&["theorem1", &data("z4.tbl")]);
    assert_eq!(c, 1);
    assert_eq!(result(&r, "decompositions")["value"], 0);
    assert!(result(&r, "decompositions")["detail"].as_str().unwrap().contains("NoDecomposition"));

    let (_, r) = report(&["theorem1", &data("b0.tbl"), "--uncorrected-cond5"]);
    let five = result(&r, "candidate 1 condition (5)");
    assert_eq!(five["value"], false);
    assert_eq!(five["data"]["corrected_holds"], true);
    assert!(five["detail"].as_str().unwrap().contains("DIFFERS"));
    let one = result(&r, "candidate 1 condition (1)");
    assert!(!one["detail"].as_str().unwrap().contains("DIFFERS"));
}

#[test]
fn input_errors_exit_with_two() {
    let o = run(&["check", &data("garbled.tbl")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 3"));
    let (c, r) = report(&["check", &data("bad.tbl")]);
    assert_eq!(c, 2);
    assert!(r["error"]["message"].as_str().unwrap().contains("associativity"));
    assert_eq!(code(&run(&["check", "/nonexistent/table.tbl"])), 2);
    assert_eq!(code(&run(&["enumerate", "--order", "7"])), 2);
    assert_eq!(code(&run(&["search-t2r", "--max-order", "8"])), 2);
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_deltasg"))
        .args(["--json", "check", "-", "--props", "nil"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"3\n0 0 0\n0 2 0\n0 0 0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(result(&r, "nil")["value"], true);
}

#[test]
fn search_t2r_finds_nothing() {
    let (c, r) = report(&["search-t2r", "--max-order", "6"]);
    assert_eq!(c, 0);
    let t2r = result(&r, "t2r");
    assert_eq!(t2r["value"], false);
    assert_eq!(t2r["detail"], "no T2R semigroup found");
    for order in 4..=6 {
        let o = result(&r, &format!("order {order}"));
        assert_eq!(o["value"], "absent");
        assert!(o["data"]["nodes"].as_u64().unwrap() > 0);
    }
    let (_, unpruned) = report(&["search-t2r", "--max-order", "5", "--no-prune-p6", "--no-prune-p7"]);
    assert_eq!(result(&unpruned, "t2r")["value"], false);
    assert_eq!(result(&unpruned, "order 5")["data"]["pruned"].get("p7"), None);
}

#[test]
fn search_t2r_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("t2r.json").display().to_string();
    let args = ["search-t2r", "--max-order", "6", "--no-prune-p7", "--threads", "2"];
    let (_, reference) = report(&args);
    let mut resumed = None;
    for _ in 0..200 {
        let mut a = args.to_vec();
        a.extend(["--budget", "3", "--resume", &cp]);
        let (c, r) = report(&a);
        assert_eq!(c, 0);
        if result(&r, "t2r")["data"]["complete"] == true {
            resumed = Some(r);
            break;
        }
    }
    let resumed = resumed.expect("search completes");
    for order in 4..=6 {
        let name = format!("order {order}");
        assert_eq!(result(&resumed, &name)["data"], result(&reference, &name)["data"]);
    }
}

#[test]
fn checkpoint_version_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("old.json");
    std::fs::write(&cp, r#"{"version": 0, "stages": []}"#).unwrap();
    let o = run(&["search-t2r", "--max-order", "5", "--resume", cp.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("version"));
}

#[test]
fn enumerate_counts_and_streams() {
    let (c, r) = report(&["enumerate", "--order", "2", "--count-only"]);
    assert_eq!(c, 0);
    assert_eq!(result(&r, "count")["value"], 5);
    let (_, r) = report(&["enumerate", "--order", "2", "--labeled", "--count-only"]);
    assert_eq!(result(&r, "count")["value"], 8);

    let o = run(&["--json", "enumerate", "--order", "4", "--filter", "we,delta"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (tables, summary) = lines.split_at(lines.len() - 1);
    assert_eq!(result(&summary[0], "count")["value"], tables.len());
    for t in tables {
        let template = t["template"].as_str().unwrap();
        assert!(!["T2R", "T2L", "NOT_WE_DELTA"].contains(&template), "{t}");
    }
}

#[test]
fn enumerate_is_deterministic_and_resumable() {
    let base = ["enumerate", "--order", "4"];
    let single = stdout(&run(&[&base[..], &["--threads", "1"]].concat()));
    let many = stdout(&run(&[&base[..], &["--threads", "4"]].concat()));
    let stream = |s: &str| s.lines().filter(|l| l.starts_with('{')).map(str::to_string).collect::<Vec<_>>();
    assert_eq!(stream(&single), stream(&many));
    assert_eq!(stream(&single).len(), 188);

    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("enum.json").display().to_string();
    let mut pieces = Vec::new();
    for _ in 0..100 {
        let out = stdout(&run(&[&base[..], &["--budget", "5", "--resume", &cp]].concat()));
        pieces.extend(stream(&out));
        if out.contains("\"complete\":true") {
            break;
        }
    }
    assert_eq!(pieces, stream(&single));
}

#[test]
fn allow_large_warns() {
    let o = run(&["--json", "search-t2r", "--max-order", "8", "--allow-large", "--budget", "0"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let r: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(r["notes"].as_array().unwrap().len(), 1);
    assert_eq!(result(&r, "t2r")["data"]["complete"], false);
}
