//! Command-line behavior: exit codes, rendered output and scenario files.

use std::path::{Path, PathBuf};
use std::process::Command;

use evfuse::cli::{self, EXIT_CONFLICT, EXIT_INVALID, EXIT_OK};
use evfuse::scenario::parse_scenario;

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
        .to_str()
        .expect("utf-8 path")
        .to_string()
}

fn run(args: &[&str]) -> cli::Outcome {
    cli::run(std::iter::once("evfuse").chain(args.iter().copied()))
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("evfuse-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("create temp dir");
        Self(dir)
    }

    fn write(&self, name: &str, body: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, body).expect("write file");
        path.to_str().expect("utf-8 path").to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

#[test]
fn dempster_fuse_shows_the_paradox() {
    let out = run(&["fuse", "--rule", "dempster", &scenario("zadeh.json")]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("K = 0.9999"), "{}", out.stdout);
    assert!(out.stdout.contains("m(T) = 1.0"), "{}", out.stdout);
}

#[test]
fn conjunctive_fuse_reports_low_consistency() {
    let out = run(&["fuse", "--rule", "conjunctive", &scenario("zadeh.json")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("h = 0.01"), "{}", out.stdout);
    assert!(
        out.stdout.contains("fused π = {M:0.0, C:0.0, T:0.01}"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("HARD_CONFLICT"), "{}", out.stdout);
}

#[test]
fn compare_renders_side_by_side_table() {
    let out = run(&["compare", &scenario("zadeh.json")]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<&str> = out.stdout.lines().collect();
    let row = |label: &str| {
        rows.iter()
            .find(|l| l.split_whitespace().next() == Some(label))
            .unwrap_or_else(|| panic!("no row for {label} in\n{}", out.stdout))
            .split_whitespace()
            .collect::<Vec<_>>()
    };
    // hypothesis, DS mass, Bel, Pl, then Pos/Nec for D1 and D2
    assert_eq!(
        row("M"),
        ["M", "0.0", "0.0", "0.0", "0.99", "0.99", "0.0", "0.0"]
    );
    assert_eq!(
        row("C"),
        ["C", "0.0", "0.0", "0.0", "0.0", "0.0", "0.99", "0.99"]
    );
    assert_eq!(
        row("T"),
        ["T", "1.0", "1.0", "1.0", "0.01", "0.01", "0.01", "0.01"]
    );
}

#[test]
fn exit_codes_follow_outcome() {
    let zadeh = scenario("zadeh.json");
    assert_eq!(run(&["report", &zadeh]).code, EXIT_OK);
    assert_eq!(
        run(&["--fail-on-conflict", "report", &zadeh]).code,
        EXIT_CONFLICT
    );
    assert_eq!(
        run(&["--fail-on-conflict", "compare", &zadeh]).code,
        EXIT_CONFLICT
    );
    assert_eq!(
        run(&["--fail-on-conflict", "report", &scenario("agreement.json")]).code,
        EXIT_OK
    );
    assert_eq!(
        run(&["report", "/nonexistent/scenario.json"]).code,
        EXIT_INVALID
    );
    assert_eq!(run(&["fuse", "--rule", "bogus", &zadeh]).code, EXIT_INVALID);
    assert_eq!(run(&["--tau", "1.5", "report", &zadeh]).code, EXIT_INVALID);
    assert_eq!(run(&[]).code, EXIT_INVALID);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn threshold_flags_change_the_verdict() {
    let agreement = scenario("agreement.json");
    assert!(run(&["report", &agreement]).stdout.contains("DECIDE(M)"));
    let strict = run(&["--nu", "1", "report", &agreement]);
    assert!(
        strict.stdout.contains("INSUFFICIENT_INFORMATION"),
        "{}",
        strict.stdout
    );
    let out = run(&["report", &scenario("ignorance.json")]);
    assert!(
        out.stdout.contains("INSUFFICIENT_INFORMATION"),
        "{}",
        out.stdout
    );
}

#[test]
fn invalid_scenarios_name_the_problem() {
    let dir = TempDir::new("invalid");
    let short = dir.write(
        "short.json",
        r#"{"name":"s","frame":["a","b"],"sources":[{"id":"lopsided","kind":"mass","values":{"a":0.5,"b":0.4}}]}"#,
    );
    let out = run(&["validate", &short]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("lopsided"), "{}", out.stderr);

    let unknown = dir.write(
        "unknown.json",
        r#"{"name":"s","frame":["a","b"],"sources":[{"id":"s1","kind":"mass","values":{"a|X":1}}]}"#,
    );
    let out = run(&["validate", &unknown]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("unknown label `X`"), "{}", out.stderr);

    let broken = dir.write("broken.json", "{\n  \"name\": \"s\",\n  \"frame\": [\n}");
    let out = run(&["validate", &broken]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--format", "json", "compare"],
        vec!["--format", "json", "report"],
        vec!["report"],
        vec!["fuse", "--rule", "measure-level", "--weights", "adaptive"],
    ] {
        for file in [
            "zadeh.json",
            "zadeh_distributions.json",
            "agreement.json",
            "ignorance.json",
        ] {
            let path = scenario(file);
            let mut argv = args.clone();
            argv.push(&path);
            let first = run(&argv);
            let second = run(&argv);
            assert_eq!(first, second, "{argv:?}");
        }
    }
}

#[test]
fn bundled_scenarios_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).expect("scenarios dir") {
        let path = entry.expect("entry").path();
        let text = std::fs::read_to_string(&path).expect("readable");
        let parsed = parse_scenario(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let again = parse_scenario(&parsed.to_json()).expect("serialized form parses");
        assert_eq!(parsed, again, "{}", path.display());
        count += 1;
    }
    assert!(count >= 4);
}

#[test]
fn binary_matches_library_entry_point() {
    let zadeh = scenario("zadeh.json");
    let output = Command::new(env!("CARGO_BIN_EXE_evfuse"))
        .args(["--fail-on-conflict", "--format", "json", "compare", &zadeh])
        .output()
        .expect("binary runs");
    let direct = run(&["--fail-on-conflict", "--format", "json", "compare", &zadeh]);
    assert_eq!(output.status.code(), Some(EXIT_CONFLICT));
    assert_eq!(String::from_utf8(output.stdout).unwrap(), direct.stdout);

    let output = Command::new(env!("CARGO_BIN_EXE_evfuse"))
        .args(["validate", "/nonexistent.json"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8(output.stderr)
        .unwrap()
        .starts_with("error:"));
}
