#![allow(dead_code)]

pub mod oracle;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub fn motiondet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motiondet"))
        .args(args)
        .output()
        .expect("failed to launch motiondet")
}

pub fn ok(args: &[&str]) -> Output {
    let out = motiondet(args);
    assert!(
        out.status.success(),
        "motiondet {args:?} failed with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 temp path")
}

/// Last stdout line parsed as JSON (the run summary or eval report).
pub fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().last().expect("no stdout");
    serde_json::from_str(line).expect("stdout is not JSON")
}

/// Report lines as JSON: per-frame records, then the footer.
pub fn read_report(path: &Path) -> (Vec<Value>, Value) {
    let text = std::fs::read_to_string(path).expect("report missing");
    let mut lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("report line is not JSON"))
        .collect();
    let footer = lines.pop().expect("empty report");
    assert!(footer.get("summary").is_some(), "last line is not a footer: {footer}");
    (lines, footer)
}

/// Reads a binary PGM by hand: header tokens then raster.
pub fn read_pgm_raw(path: &Path) -> (usize, usize, Vec<u8>) {
    let bytes = std::fs::read(path).unwrap();
    let text = String::from_utf8_lossy(&bytes[..bytes.len().min(64)]).into_owned();
    let mut tokens = text.split_ascii_whitespace();
    assert_eq!(tokens.next(), Some("P5"));
    let w: usize = tokens.next().unwrap().parse().unwrap();
    let h: usize = tokens.next().unwrap().parse().unwrap();
    let raster = bytes[bytes.len() - w * h..].to_vec();
    (w, h, raster)
}
