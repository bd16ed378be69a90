//! Helpers shared by the CLI test suites.
#![allow(dead_code)]

use std::process::{Command, Output};

/// Runs the `cobweb` binary with the given arguments.
pub fn cobweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(args)
        .output()
        .expect("binary should execute")
}

/// Runs the binary with extra environment variables set.
pub fn cobweb_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cobweb"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary should execute")
}

/// Runs the binary, asserts success, and returns stdout as UTF-8.
pub fn stdout_of(args: &[&str]) -> String {
    let out = cobweb(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is UTF-8")
}

pub fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Upper-left 16x16 corner of the incidence matrix of the Fibonacci poset
/// with levels 0..=6, in canonical vertex order (level sizes 1,1,1,2,3,5,8).
/// Row i has a 1 at column j exactly when i = j or vertex i lies on a
/// strictly lower level than vertex j.
pub const FIB_P6_CORNER: [&str; 16] = [
    "1111111111111111",
    "0111111111111111",
    "0011111111111111",
    "0001011111111111",
    "0000111111111111",
    "0000010011111111",
    "0000001011111111",
    "0000000111111111",
    "0000000010000111",
    "0000000001000111",
    "0000000000100111",
    "0000000000010111",
    "0000000000001111",
    "0000000000000100",
    "0000000000000010",
    "0000000000000001",
];
