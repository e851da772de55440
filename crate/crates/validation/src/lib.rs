// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance checks for the kaonlab workspace; see `tests/acceptance.rs`.

use std::io::Write;
use std::time::{Duration, Instant};

/// Writes `acceptance <id> PASS|FAIL: <title> (<detail>)` straight to the
/// stderr handle, bypassing the test harness capture, then asserts.
pub fn verdict(id: &str, title: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let line = format!("acceptance {id} {tag}: {title} ({detail})\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "{line}");
}

/// Elapsed time since `start` and whether it is within `secs`.
pub fn within_budget(start: Instant, secs: u64) -> (bool, Duration) {
    let el = start.elapsed();
    (el <= Duration::from_secs(secs), el)
}
