use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn qhh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhh"))
        .args(args)
        .current_dir(root())
        .env_remove("QHH_SEED")
        .output()
        .expect("binary runs")
}

fn manifest() -> Vec<(String, Vec<String>)> {
    std::fs::read_to_string(root().join("golden/manifest.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once('|').unwrap();
            (name.trim().to_string(), args.split_whitespace().map(String::from).collect())
        })
        .collect()
}

/// Set QHH_BLESS=1 to rewrite the goldens.
#[test]
fn goldens() {
    let bless = std::env::var_os("QHH_BLESS").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in manifest() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = qhh(&args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let path = root().join(format!("golden/{name}.json"));
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        if expected != out.stdout {
            mismatches.push(name);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatch: {mismatches:?}");
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["hh1rel", "example2.quiv", "--json"][..],
        &["proptest", "theoremA", "--cases", "30", "--seed", "11"][..],
    ] {
        assert_eq!(qhh(args).stdout, qhh(args).stdout);
    }
}

#[test]
fn compact_json_is_one_line() {
    let out = qhh(&["hh1rel", "notsolv.quiv", "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dim_rel"], 1);
    assert_eq!(v["dim_abs"], 4);
    assert_eq!(v["lie"]["abelian"], true);
}

#[test]
fn seed_comes_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qhh"));
        c.args(["proptest", "jacobi", "--cases", "3", "--json"]).current_dir(root());
        match seed {
            Some(s) => c.env("QHH_SEED", s),
            None => c.env_remove("QHH_SEED"),
        };
        let v: serde_json::Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(run(Some("99")), 99);
    assert_eq!(run(None), qhh_core::suites::DEFAULT_SEED);
}

#[test]
fn exit_codes() {
    assert_eq!(qhh(&["basis", "missing.quiv"]).status.code(), Some(1));
    assert_eq!(qhh(&["hh1", "notsolv.quiv", "--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(qhh(&["radzero", "notsolv.quiv"]).status.code(), Some(2));
    assert_eq!(qhh(&["radzero", "example2.quiv", "--field", "fp:3"]).status.code(), Some(2));
    assert_eq!(qhh(&["dualext", "loop.quiv", "loop.quiv"]).status.code(), Some(2));
    assert_eq!(qhh(&["dualext", "a2.quiv", "a3.quiv"]).status.code(), Some(2));
    assert_eq!(qhh(&["theta", "notsolv.quiv", "--generator", "5"]).status.code(), Some(2));
    // arrows of A joining two components of Q_B break the exact sequence
    let out = qhh(&["dualext", "discrete2.quiv", "a2.quiv", "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["components_agree"], false);
    assert_eq!(v["checks"]["exact_sequence"], false);
}

#[test]
fn parse_errors_carry_position() {
    let dir = std::env::temp_dir().join(format!("qhh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.quiv");
    std::fs::write(&f, "vertices: 1 2\narrows: a:1-2\nrelations: (none)\n").unwrap();
    let out = qhh(&["basis", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}
