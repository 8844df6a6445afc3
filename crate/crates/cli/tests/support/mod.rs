//! Shared harness for driving the `orbimukai` binary.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbimukai"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn try_stdout(args: &[&str]) -> Result<String, String> {
    let out = run(args);
    if !out.status.success() {
        return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(|e| format!("{args:?}: {e}"))
}

pub fn stdout(args: &[&str]) -> String {
    try_stdout(args).unwrap_or_else(|e| panic!("{e}"))
}

pub struct Case {
    pub name: &'static str,
    pub args: Vec<String>,
}

impl Case {
    pub fn argv(&self) -> Vec<&str> {
        self.args.iter().map(String::as_str).collect()
    }
}

pub fn cases() -> Vec<Case> {
    let nik = "builtin:nikulin".to_string();
    let r1 = fixture("rank1.json");
    let e8 = fixture("e8.json");
    let mk = |name: &'static str, args: &[&str]| Case {
        name,
        args: args.iter().map(|s| s.to_string()).collect(),
    };
    vec![
        mk("series_24", &["series", "--order", "10"]),
        mk("series_naive", &["series", "--order", "10", "--algorithm", "naive"]),
        mk("series_exp_minus_one", &["series", "--order", "12", "--exponent", "-1"]),
        mk("series_exp_one", &["series", "--order", "30", "--exponent", "1"]),
        mk(
            "pairing_rank1",
            &["pairing", "--config", &r1, "--v", "1,0,1", "--w", "1,0,1"],
        ),
        mk(
            "pairing_nikulin",
            &[
                "pairing",
                "--config",
                &nik,
                "--v",
                "1,1,1,0,0,0,0,0,0,0,2",
                "--w",
                "0,1,1,1,0,0,0,0,0,0,-1",
            ],
        ),
        mk(
            "pairing_e8",
            &[
                "pairing",
                "--config",
                &e8,
                "--v",
                "0,0,0,1,0,1,0,0,0,0,0,0",
                "--w",
                "0,0,0,1,0,1,0,0,0,0,0,0",
            ],
        ),
        mk(
            "joyce_point",
            &["joyce", "--config", &nik, "--v", "1,0,0,0,0,0,0,0,0,0,1"],
        ),
        mk(
            "joyce_double",
            &["joyce", "--config", &nik, "--v", "2,0,0,0,0,0,0,0,0,0,2"],
        ),
        mk("joyce_rank1", &["joyce", "--config", &r1, "--v", "1,0,-3"]),
        mk(
            "joyce_mark",
            &["joyce", "--config", &nik, "--v", "0,0,1,0,0,0,0,0,0,0,0"],
        ),
        mk(
            "transport_mark",
            &["transport", "--config", &nik, "--v", "0,0,1,0,0,0,0,0,0,0,0"],
        ),
        mk(
            "transport_e8",
            &["transport", "--config", &e8, "--v", "1,1,0,1,0,1,0,0,0,0,0,-2"],
        ),
        mk(
            "walls_rank1",
            &["walls", "--config", &r1, "--c1", "2,1,0", "--c2", "0,1/2,-1"],
        ),
        mk(
            "walls_none",
            &["walls", "--config", &r1, "--c1", "1,0,0", "--c2", "0,1,0"],
        ),
        mk(
            "walls_always",
            &["walls", "--config", &r1, "--c1", "1,1,0", "--c2", "2,2,0"],
        ),
        mk("thresholds_rank1", &["thresholds", "--config", &r1, "--class", "1,1,0"]),
        mk(
            "thresholds_mu_plus",
            &["thresholds", "--config", &r1, "--class", "2,1,-1", "--mu-plus", "3/2"],
        ),
        mk(
            "thresholds_twisted",
            &["thresholds", "--config", &r1, "--class", "3,1,-2", "--D", "1/6"],
        ),
        mk(
            "decomp_hilbert",
            &["decomp", "--config", &r1, "--v", "2,0,2", "--matcher", "hilbert"],
        ),
        mk(
            "decomp_phase",
            &[
                "decomp",
                "--config",
                &r1,
                "--v",
                "2,0,2",
                "--matcher",
                "phase",
                "--k",
                "1",
            ],
        ),
        mk(
            "decomp_box",
            &[
                "decomp",
                "--config",
                &r1,
                "--v",
                "3,0,3",
                "--matcher",
                "hilbert",
                "--box",
                "0:3,-1:1,0:3",
            ],
        ),
        mk(
            "slope_rank1",
            &["slope", "--config", &r1, "--class", "2,1/3,0", "--k", "1"],
        ),
        mk("slope_torsion", &["slope", "--config", &r1, "--class", "0,1,5"]),
        mk(
            "slope_approx",
            &["--approx", "slope", "--config", &r1, "--class", "3,1,1/2", "--k", "1/2"],
        ),
        mk(
            "charge_rank1",
            &["charge", "--config", &r1, "--class", "1,0,0", "--k", "1"],
        ),
        mk(
            "charge_twisted",
            &["charge", "--config", &r1, "--class", "2,1,-1", "--k", "2", "--D", "1/2"],
        ),
        mk("config_nikulin", &["config", "--config", &nik]),
        mk("config_e8", &["config", "--config", &e8]),
    ]
}

/// Paths are machine specific, so they are masked before comparison.
pub fn normalize(text: &str) -> String {
    text.replace(&root().to_string_lossy().into_owned(), "<tests>")
}

/// Compares every case with its golden file, or rewrites them all when `update` is set.
pub fn check_goldens(update: bool) -> Result<usize, String> {
    let mut mismatches = Vec::new();
    let all = cases();
    for case in &all {
        let got = normalize(&try_stdout(&case.argv())?);
        let path = root().join("golden").join(format!("{}.txt", case.name));
        if update {
            std::fs::write(&path, &got).map_err(|e| e.to_string())?;
            continue;
        }
        let want = std::fs::read_to_string(&path).map_err(|_| format!("missing golden file {}", path.display()))?;
        if got != want {
            mismatches.push(format!("{}:\n--- want\n{want}--- got\n{got}", case.name));
        }
    }
    if mismatches.is_empty() {
        Ok(all.len())
    } else {
        Err(mismatches.join("\n"))
    }
}

pub fn check_repeatable() -> Result<usize, String> {
    let all = cases();
    for case in &all {
        let a = run(&case.argv());
        let b = run(&case.argv());
        if a.stdout != b.stdout || a.status.code() != b.status.code() {
            return Err(format!("{} differs between runs", case.name));
        }
    }
    Ok(all.len())
}

fn tokens(s: &str) -> Vec<String> {
    s.split(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '/' || c == '+' || c == '_'))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Text and JSON modes must carry the same values.
pub fn check_json_matches_text() -> Result<usize, String> {
    let mut checked = 0;
    for case in cases() {
        if case.args.iter().any(|a| a == "--approx") {
            continue;
        }
        let args = case.argv();
        let text = try_stdout(&args)?;
        let mut json_args = vec!["--json"];
        json_args.extend(&args);
        let json: Value =
            serde_json::from_str(&try_stdout(&json_args)?).map_err(|e| format!("{}: invalid json: {e}", case.name))?;
        match &json {
            Value::Object(_) if args[0] == "config" => {
                let reparsed: Value =
                    serde_json::from_str(&text).map_err(|e| format!("{}: config text: {e}", case.name))?;
                if reparsed != json {
                    return Err(format!("{}: config text and json differ", case.name));
                }
            }
            Value::Object(map) => {
                let lines: Vec<&str> = text.lines().collect();
                if lines.len() != map.len() {
                    return Err(format!("{}: {} lines but {} keys", case.name, lines.len(), map.len()));
                }
                for line in lines {
                    let (key, value) = line
                        .split_once(" = ")
                        .ok_or_else(|| format!("{}: bad line {line}", case.name))?;
                    let j = map.get(key).ok_or_else(|| format!("{}: no key {key}", case.name))?;
                    if tokens(value) != tokens(&j.to_string()) {
                        return Err(format!("{}: {key} is {value} in text but {j} in json", case.name));
                    }
                }
            }
            _ => {
                let text_tokens: Vec<String> = tokens(&text).into_iter().filter(|t| t != "+").collect();
                if text_tokens != tokens(&json.to_string()) {
                    return Err(format!("{}: text and json differ", case.name));
                }
            }
        }
        checked += 1;
    }
    Ok(checked)
}
