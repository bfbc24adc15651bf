use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lrcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrcone"))
        .args(args)
        .env_remove("LRCONE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lrcone(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn body_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&raw).expect("schema compiles")
}

fn assert_valid(doc: &str) {
    let v: Value = serde_json::from_str(doc).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lrcone-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn horn_listing() {
    assert!(stdout(&["horn", "--r", "3", "--s", "3", "--d", "1"])
        .lines()
        .any(|l| l == "{2},{2};{3}"));
    assert_eq!(stdout(&["horn", "--r", "2", "--s", "3", "--d", "1"]).lines().count(), 3);
}

#[test]
fn horn_without_valid_d_exits_2() {
    let out = lrcone(&["horn", "--r", "1", "--s", "3", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no valid d"));
}

const EQLR_3: [&str; 27] = [
    "0,0,0;1,0,0;1,0,0", "0,0,0;1,1,0;1,1,0", "0,0,0;1,1,1;1,1,1", "1,0,0;0,0,0;1,0,0",
    "1,0,0;1,0,0;1,1,0", "1,0,0;1,1,0;1,1,1", "1,1,0;0,0,0;1,1,0", "1,1,0;1,0,0;1,1,1",
    "1,1,0;1,1,0;2,1,1", "1,1,1;0,0,0;1,1,1", "1,0,0;1,0,0;1,0,0", "1,0,0;1,1,0;1,1,0",
    "1,0,0;1,1,1;1,1,1", "1,1,0;1,0,0;1,1,0", "1,1,0;1,1,0;1,1,0", "1,1,0;1,1,0;1,1,1",
    "1,1,0;1,1,0;2,1,0", "1,1,0;1,1,1;1,1,1", "1,1,0;1,1,1;2,1,1", "1,1,1;1,0,0;1,1,1",
    "1,1,1;1,1,0;1,1,1", "1,1,1;1,1,0;2,1,1", "1,1,1;1,1,1;1,1,1", "1,1,1;1,1,1;2,1,1",
    "1,1,1;1,1,1;2,2,1", "1,1,1;2,1,1;2,2,1", "2,1,1;1,1,1;2,2,1",
];

#[test]
fn rays_match_rank_three_table() {
    let text = stdout(&["rays", "--r", "3", "--s", "3", "--kind", "eqlr"]);
    assert!(text.starts_with("# eqlr r=3 s=3 count=27\n"));
    let mut got = body_lines(&text);
    got.sort();
    let mut want = EQLR_3.to_vec();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(body_lines(&stdout(&["rays", "--r", "1", "--s", "3", "--kind", "lr"])).len(), 2);
}

#[test]
fn rank_ceiling_and_extended() {
    let out = lrcone(&["rays", "--r", "7", "--kind", "eqlr"]);
    assert_eq!(out.status.code(), Some(3));
    let out = lrcone(&["rays", "--r", "7", "--s", "3", "--kind", "eqlr", "--extended"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("# eqlr r=7 s=3 count=1469\n"));
}

#[test]
fn facet_worked_example() {
    let text = stdout(&["facet", "--r", "3", "--s", "3", "--I", "{2};{2}", "--K", "{3}"]);
    let type1: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.starts_with("# type I rays"))
        .skip(1)
        .take_while(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(type1, ["1,1,0;1,0,0;1,1,1", "1,0,0;1,1,0;1,1,1", "1,0,0;1,0,0;1,1,0"]);
    assert!(text.contains("(extremal 7, zero 3, non-extremal 2)"));
    let non_extremal: Vec<&str> = text
        .lines()
        .filter(|l| l.ends_with("\tnon-extremal"))
        .map(|l| l.split('\t').nth(2).unwrap())
        .collect();
    assert_eq!(non_extremal, ["2,1,1;2,1,1;2,2,2", "2,1,1;2,1,1;3,2,2"]);
}

#[test]
fn member_query() {
    assert_eq!(stdout(&["member", "--point", "1,1;1,1;2,1", "--kind", "eqlr"]), "true\n");
    assert_eq!(stdout(&["member", "--point", "1,1;1,1;2,1", "--kind", "lr"]), "false\n");
    assert_eq!(stdout(&["member", "--point", "1/2,0;1/2,0;1,0", "--kind", "lr"]), "true\n");
}

#[test]
fn hilbert_rank_six_extras() {
    let text = stdout(&["hilbert", "--r", "6", "--s", "3", "--bound", "3"]);
    for extra in [
        "2,1,1,1,1,1;2,2,2,1,1,1;3,3,2,2,2,1",
        "2,2,1,1,1,1;2,2,1,1,1,1;3,2,2,2,2,1",
        "2,2,2,1,1,1;2,1,1,1,1,1;3,3,2,2,2,1",
    ] {
        assert!(text.lines().any(|l| l == extra));
        assert!(text.lines().any(|l| l == format!("# {extra}")));
    }
    assert!(text.contains("# not on an extremal ray: 3\n"));
    let out = lrcone(&["hilbert", "--r", "6", "--s", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ray_count_table() {
    let tsv = stdout(&["tables", "--which", "ray-counts", "--max-r", "5", "--format", "tsv"]);
    assert_eq!(
        tsv,
        "r\tlr_rays\teqlr_rays\n1\t2\t3\n2\t5\t10\n3\t10\t27\n4\t20\t72\n5\t44\t195\n"
    );
}

#[test]
fn ray_list_table_splits_on_trace() {
    let tsv = stdout(&["tables", "--which", "ray-lists", "--max-r", "3", "--format", "tsv"]);
    let rank3: Vec<(&str, &str)> = tsv
        .lines()
        .skip(1)
        .map(|l| {
            let cells: Vec<&str> = l.split('\t').collect();
            (cells[0], cells[1], cells[2])
        })
        .filter(|c| c.0 == "3")
        .map(|c| (c.1, c.2))
        .collect();
    let lr: Vec<&str> = rank3.iter().filter(|c| c.0 == "lr").map(|c| c.1).collect();
    let strict: Vec<&str> = rank3.iter().filter(|c| c.0 == "strict").map(|c| c.1).collect();
    assert_eq!(lr, EQLR_3[..10]);
    assert_eq!(strict, EQLR_3[10..]);
}

#[test]
fn json_outputs_validate() {
    let docs = [
        stdout(&["horn", "--r", "3", "--d", "1", "--format", "json"]),
        stdout(&["rays", "--r", "2", "--kind", "lr", "--format", "json"]),
        stdout(&["facet", "--r", "3", "--I", "{2};{2}", "--K", "{3}", "--format", "json"]),
        stdout(&["member", "--point", "1,1;1,1;2,1", "--format", "json"]),
        stdout(&["shadow", "--point", "1,1;1,1;2,1", "--j", "1", "--format", "json"]),
        stdout(&["hilbert", "--r", "2", "--format", "json"]),
        stdout(&["tables", "--which", "ray-counts", "--max-r", "3", "--format", "json"]),
        stdout(&["tables", "--which", "ray-lists", "--max-r", "2", "--format", "json"]),
    ];
    for doc in &docs {
        assert_valid(doc);
    }
    let lines = stdout(&["sample", "--spectra", "1,0;1,0;1,0", "--trials", "5", "--format", "json"]);
    assert_eq!(lines.lines().count(), 5);
    for line in lines.lines() {
        assert_valid(line);
    }
}

#[test]
fn output_is_byte_stable() {
    let args = ["rays", "--r", "4", "--kind", "eqlr", "--format", "json"];
    let a = stdout(&args);
    let b = stdout(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a, b);
    let sample = ["sample", "--spectra", "2,1,0;1,1,-1", "--trials", "50", "--seed", "9", "--mode", "majorized"];
    assert_eq!(stdout(&sample), stdout(&[&sample[..], &["--threads", "2"]].concat()));
}

#[test]
fn output_file_and_cache_dir() {
    let dir = scratch_dir("cache");
    let file = dir.join("out.txt");
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("rays");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lrcone"))
            .args(["rays", "--r", "3", "--kind", "eqlr", "--output", file.to_str().unwrap()])
            .env("LRCONE_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    assert!(run().status.success());
    let first = std::fs::read_to_string(&file).unwrap();
    let cached = std::fs::read_dir(&cache).unwrap().count();
    assert!(cached >= 3, "expected cached sub-cones, found {cached}");
    assert!(run().status.success());
    assert_eq!(std::fs::read_to_string(&file).unwrap(), first);
    assert_eq!(first, stdout(&["rays", "--r", "3", "--kind", "eqlr"]));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(lrcone(&["member", "--point", "1,0;1,0"]).status.code(), Some(2));
    assert_eq!(lrcone(&["rays", "--r", "2", "--kind", "c"]).status.code(), Some(2));
    assert_eq!(lrcone(&["facet", "--r", "3", "--I", "{1};{1}", "--K", "{3}"]).status.code(), Some(2));
}
