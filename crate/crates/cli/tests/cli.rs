//! End-to-end runs of the `gspec` binary.

use std::process::{Command, Output};

fn gspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gspec"))
        .args(args)
        .output()
        .expect("gspec runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["sectors", "rsw27", "--gamma", "Z^2"][..],
        &["compare", "rsw29", "--gamma", "Z", "--format", "json"],
        &["spectrum", "torus5", "--cutoff-mu", "1"],
        &["certify", "sunada15", "--gamma", "Z"],
    ] {
        let (a, b) = (gspec(args), gspec(args));
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_and_table_carry_the_same_cells() {
    let table = stdout(&gspec(&["compare", "rsw29", "--gamma", "Z"]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&gspec(&[
        "compare", "rsw29", "--gamma", "Z", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["schema_version"], 1);
    let tables = json["tables"].as_array().unwrap();
    assert!(!tables.is_empty());
    for t in tables {
        assert!(table.contains(t["title"].as_str().unwrap()));
        for row in t["rows"].as_array().unwrap() {
            let cells: Vec<&str> = row
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap())
                .collect();
            let line = table.lines().find(|l| {
                l.split_whitespace()
                    .eq(cells.iter().flat_map(|c| c.split_whitespace()))
            });
            assert!(line.is_some(), "row {cells:?} missing from table output");
        }
    }
    for v in json["verdicts"].as_array().unwrap() {
        assert!(table.contains(v.as_str().unwrap()));
    }
}

#[test]
fn builtin_expectations() {
    let runs: &[(&[&str], usize)] = &[
        (&["sectors", "rsw27", "--gamma", "Z^4"], 0),
        (&["compare", "rsw29", "--gamma", "Z"], 0),
        (&["sectors", "ssw:3:1", "--gamma", "Z"], 0),
        (&["sectors", "mtriv:Z3:D6", "--gamma", "Z^2"], 0),
        // the stated F2 count for D6 is 12; the class count is 11
        (&["sectors", "mtriv:Z3:D6", "--gamma", "F2"], 1),
        (&["sectors", "flat-fixture:circles", "--gamma", "Z^2"], 0),
        (&["sectors", "flat-fixture:cube", "--gamma", "Z"], 0),
        (&["heat", "flat-fixture:lengths", "--gamma", "Z"], 0),
        (&["sectors", "torus5", "--gamma", "Z"], 0),
        (&["sunada", "sunada15"], 0),
    ];
    for (args, mismatches) in runs {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let json: serde_json::Value = serde_json::from_str(&stdout(&gspec(&a))).unwrap();
        let checks = json["expected"].as_array().unwrap();
        assert!(!checks.is_empty(), "{args:?} has no expectations");
        let bad = checks.iter().filter(|c| c["matches"] == false).count();
        assert_eq!(bad, *mismatches, "{args:?}: {checks:?}");
    }
}

#[test]
fn verdicts() {
    let s = stdout(&gspec(&["compare", "rsw29", "--gamma", "Z"]));
    assert!(
        s.contains("first disagreement at eigenvalue 4 (3 vs 6 twisted)"),
        "{s}"
    );
    let s = stdout(&gspec(&["compare", "lens:5:1,2:1,3", "--gamma", "Z"]));
    assert!(s.contains("Γ-spectra agree up to eigenvalue 48"), "{s}");
    let s = stdout(&gspec(&["certify", "rsw29", "--gamma", "Z"]));
    assert!(s.contains("not certified: centralizer mismatch"), "{s}");
    let s = stdout(&gspec(&[
        "sectors",
        "rsw27",
        "--gamma",
        "Z^2",
        "--seed-check",
    ]));
    assert!(s.contains("multiplicity of 0 differs (16 vs 10)"), "{s}");
}

#[test]
fn exit_codes() {
    assert_eq!(
        gspec(&["sectors", "rsw27", "--gamma", "Q"]).status.code(),
        Some(2)
    );
    assert_eq!(gspec(&["sectors", "nosuch"]).status.code(), Some(2));
    assert_eq!(
        gspec(&["sectors", "rsw27", "--gamma", "Z^3", "--budget", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        gspec(&["compare", "flat-fixture:circles"]).status.code(),
        Some(5)
    );
    assert_eq!(gspec(&["list"]).status.code(), Some(0));
}

#[test]
fn scenario_files() {
    let dir = std::env::temp_dir().join(format!("gspec-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    std::fs::write(
        &path,
        r#"{"name": "two-reflections", "model": "sphere", "gamma": "Z",
            "members": [
              {"name": "A", "group": {"dimension": 3, "generators": [{"negate": [1]}]}},
              {"name": "B", "group": {"dimension": 3, "generators": [{"negate": [1, 2]}]}}
            ]}"#,
    )
    .unwrap();
    let o = gspec(&["sectors", &format!("file:{}", path.display())]);
    let s = stdout(&o);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(s.contains("S^1") && s.contains("S^0"), "{s}");
    std::fs::remove_dir_all(&dir).unwrap();
}
