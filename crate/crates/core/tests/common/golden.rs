//! Committed CLI transcripts: `tests/golden/*.t` hold `$ mlmkit <args>` on
//! the first line and the expected stdout after it. Commands run from
//! `tests/golden`, so input paths are relative to it.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mlmkit::text::{format_circuit, format_poly, parse_circuit, parse_poly};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn mlmkit(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlmkit"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

pub fn transcripts() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "t"))
        .collect();
    files.sort();
    files
}

/// Replays one transcript; `Err` describes the first difference.
pub fn check_transcript(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let (command, expected) = text.split_once('\n').unwrap_or((&text, ""));
    let args: Vec<&str> = command
        .strip_prefix("$ mlmkit ")
        .ok_or("first line must start with `$ mlmkit `")?
        .split_whitespace()
        .collect();
    let out = mlmkit(&args, &golden_dir());
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    if out.stdout != expected.as_bytes() {
        return Err(format!(
            "stdout differs\n--- expected\n{expected}--- actual\n{}",
            String::from_utf8_lossy(&out.stdout)
        ));
    }
    Ok(())
}

/// Every polynomial and circuit input reparses to itself after printing.
pub fn check_round_trips() -> Result<usize, String> {
    let mut checked = 0;
    for entry in std::fs::read_dir(golden_dir().join("inputs")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let ok = match path.extension().and_then(|e| e.to_str()) {
            Some("poly") => {
                let f = parse_poly(&text).map_err(|e| e.to_string())?;
                parse_poly(&format_poly(&f)).as_ref() == Ok(&f)
            }
            Some("circ") => {
                let c = parse_circuit(&text).map_err(|e| e.to_string())?;
                parse_circuit(&format_circuit(&c)).as_ref() == Ok(&c)
            }
            _ => continue,
        };
        if !ok {
            return Err(format!("{} does not round-trip", path.display()));
        }
        checked += 1;
    }
    Ok(checked)
}
