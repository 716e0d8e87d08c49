//! Runs the binary on the whole suite and prints one line per criterion.
//! Built without the test harness so the lines are never captured.

use std::process::{Command, Output};

use serde_json::Value;

fn wps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wps")).args(args).output().expect("binary runs")
}

fn timing(t: &Value, name: &str) -> f64 {
    t["stages"].as_array().unwrap().iter().find(|e| e[0] == name).and_then(|e| e[1].as_f64()).unwrap_or_else(|| panic!("no timing `{name}`"))
}

fn main() {
    let dir = std::env::temp_dir().join(format!("wps-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (ta, tb) = (dir.join("a.json"), dir.join("b.json"));
    let (ta_s, tb_s) = (ta.to_str().unwrap().to_string(), tb.to_str().unwrap().to_string());
    let first = std::thread::spawn(move || wps(&["run", "--all-checks", "--seed", "7", "--timings", &ta_s]));
    let second = wps(&["run", "--all-checks", "--seed", "7", "--timings", &tb_s]);
    let first = first.join().unwrap();

    let report: Value = serde_json::from_slice(&first.stdout).expect("json report");
    let checks = report["checks"].as_array().unwrap();
    for c in checks {
        let mark = if c["pass"].as_bool().unwrap() { "PASS" } else { "FAIL" };
        println!("criterion {mark} {} [{}] {}", c["name"].as_str().unwrap(), c["provenance"].as_str().unwrap(), c["detail"].as_str().unwrap());
    }
    let identical = first.stdout == second.stdout;
    println!("repeat run byte-identical: {}", if identical { "PASS" } else { "FAIL" });

    let t: Value = serde_json::from_str(&std::fs::read_to_string(&ta).unwrap()).unwrap();
    let budgets = [
        ("criterion 6", 120.0),
        ("criteria 7-8", 300.0),
        ("criterion 9 full", 1800.0),
        ("criterion 9 sampled", 300.0),
    ];
    for (name, limit) in budgets {
        let secs = timing(&t, name);
        println!("budget {} {name}: {secs:.2}s of {limit}s", if secs <= limit { "PASS" } else { "FAIL" });
        assert!(secs <= limit, "{name} took {secs}s");
    }
    std::fs::remove_dir_all(&dir).ok();

    let all = checks.len() == 10 && checks.iter().all(|c| c["pass"] == true);
    println!("acceptance: {}", if all && identical { "PASS" } else { "FAIL" });
    assert_eq!(checks.len(), 10);
    assert!(all, "a criterion failed");
    assert!(identical, "repeat runs differ");
    assert_eq!(first.status.code(), Some(0));
}
