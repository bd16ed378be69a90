//! Byte-frozen outputs and exit-code behavior of the `cobweb` binary.

mod common;

use std::io::Write as _;

use common::{cobweb, cobweb_env, stderr_of, stdout_of, FIB_P6_CORNER};

#[test]
fn help_lists_every_subcommand() {
    let out = cobweb(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for name in [
        "triangle",
        "admissible",
        "gcd-morphic",
        "search",
        "poset",
        "chains",
        "mobius",
        "charpoly",
        "domatic",
        "tile",
    ] {
        assert!(text.contains(name), "--help is missing {name}");
    }
}

#[test]
fn triangle_natural_is_pascals_triangle() {
    let got = stdout_of(&["--seq", "natural", "--format", "csv", "triangle", "--rows", "4"]);
    assert_eq!(got, "1\n1,1\n1,2,1\n1,3,3,1\n1,4,6,4,1\n");
}

#[test]
fn triangle_text_uses_spaces() {
    let got = stdout_of(&["--seq", "natural", "triangle", "--rows", "4"]);
    assert!(got.ends_with("1 4 6 4 1\n"));
}

#[test]
fn triangle_odd_keeps_exact_rationals() {
    let got = stdout_of(&["--seq", "odd", "--format", "csv", "triangle", "--rows", "4"]);
    let lines: Vec<&str> = got.lines().collect();
    assert_eq!(lines[4], "1,7,35/3,7,1");
}

#[test]
fn triangle_gauss_and_mult_specs() {
    let got = stdout_of(&["--seq", "gauss:2", "--format", "csv", "triangle", "--rows", "3"]);
    let lines: Vec<&str> = got.lines().collect();
    assert_eq!(lines[2], "1,3,1");
    assert_eq!(lines[3], "1,7,7,1");

    let got = stdout_of(&["--seq", "mult:3", "--format", "csv", "poset", "--levels", "3"]);
    assert_eq!(got, "mult:3,3,19,75\n");
}

#[test]
fn admissible_odd_json_carries_the_witness() {
    let got = stdout_of(&["--seq", "odd", "--format", "json", "admissible", "--bound", "10"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["property"], "cobweb-admissible");
    assert_eq!(v["bound"], 10);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["n"], 4);
    assert_eq!(v["witness"]["k"], 2);
    assert_eq!(v["witness"]["value"], "35/3");
}

#[test]
fn admissible_natural_text() {
    let got = stdout_of(&["--seq", "natural", "admissible", "--bound", "12"]);
    assert_eq!(got, "cobweb-admissible holds up to bound 12\n");
}

#[test]
fn gcd_morphic_from_a_sequence_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "2\n3\n4\n5\n6\n").unwrap();
    let path = file.path().to_str().unwrap();
    let got = stdout_of(&["--seq-file", path, "gcd-morphic", "--bound", "5"]);
    assert_eq!(
        got,
        "gcd-morphic fails at (n,m) = (2,1): gcd(F_2, F_1) = 1, expected F_gcd = 2\n"
    );
}

#[test]
fn sequence_file_accepts_a_root_header() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "root=0\n1\n1\n2\n").unwrap();
    let path = file.path().to_str().unwrap();
    let got = stdout_of(&["--seq-file", path, "poset", "--levels", "3"]);
    assert_eq!(got, "custom poset with levels 0..=3: 5 vertices, 4 arcs\n");
}

#[test]
fn sequence_file_with_a_zero_term_is_a_domain_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "1\n0\n2\n").unwrap();
    let path = file.path().to_str().unwrap();
    let out = cobweb(&["--seq-file", path, "poset", "--levels", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("positive"));
}

#[test]
fn poset_dot_export_is_frozen() {
    let got = stdout_of(&["--seq", "natural", "poset", "--levels", "2", "--export", "dot"]);
    let expected = "digraph cobweb {\n  rankdir=BT;\n  node [shape=circle];\n  v0_1 [label=\"(1,0)\"];\n  v1_1 [label=\"(1,1)\"];\n  v2_1 [label=\"(1,2)\"];\n  v2_2 [label=\"(2,2)\"];\n  { rank=same; v0_1; }\n  { rank=same; v1_1; }\n  { rank=same; v2_1; v2_2; }\n  v0_1 -> v1_1;\n  v1_1 -> v2_1;\n  v1_1 -> v2_2;\n}\n";
    assert_eq!(got, expected);
}

#[test]
fn poset_json_summary() {
    let got = stdout_of(&["--seq", "natural", "--format", "json", "poset", "--levels", "2"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["sequence"], "natural");
    assert_eq!(v["top_level"], 2);
    assert_eq!(v["vertices"], 4);
    assert_eq!(v["arcs"], "3");
}

#[test]
fn poset_incidence_export_matches_the_frozen_corner() {
    let got = stdout_of(&[
        "--seq",
        "fibonacci",
        "poset",
        "--levels",
        "6",
        "--export",
        "csv-matrix",
    ]);
    let lines: Vec<&str> = got.lines().collect();
    assert_eq!(lines.len(), 21);
    for (i, expected_row) in FIB_P6_CORNER.iter().enumerate() {
        let cells: Vec<&str> = lines[i].split(',').collect();
        let prefix: String = cells[..16].concat();
        assert_eq!(&prefix, expected_row, "row {i}");
    }
}

#[test]
fn chains_brute_force_and_formula() {
    let got = stdout_of(&["--seq", "fibonacci", "chains", "--from", "0", "--to", "6", "--mode", "brute"]);
    assert_eq!(got, "240\n");
    let got = stdout_of(&["--seq", "natural", "chains", "--from", "0", "--to", "5"]);
    assert_eq!(got, "120\n");
    let got = stdout_of(&["--seq", "fibonacci", "--format", "json", "chains", "--from", "2", "--to", "4", "--mode", "dp"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["count"], "6");
    assert_eq!(v["mode"], "dp");
}

#[test]
fn chains_with_a_bad_range_is_a_domain_error() {
    let out = cobweb(&["--seq", "natural", "chains", "--from", "7", "--to", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("falling"));
}

#[test]
fn mobius_matrix_is_frozen() {
    let got = stdout_of(&["--seq", "natural", "--format", "csv", "mobius", "--levels", "2"]);
    assert_eq!(got, "1,-1,0,0\n0,1,-1,-1\n0,0,1,0\n0,0,0,1\n");
}

#[test]
fn mobius_json_shape() {
    let got = stdout_of(&["--seq", "natural", "--format", "json", "mobius", "--levels", "2"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["rows"][0], serde_json::json!(["1", "-1", "0", "0"]));
}

#[test]
fn charpoly_renderings() {
    assert_eq!(
        stdout_of(&["--seq", "natural", "charpoly", "--levels", "2"]),
        "λ^2 - λ\n"
    );
    assert_eq!(
        stdout_of(&["--seq", "natural", "--format", "csv", "charpoly", "--levels", "2"]),
        "0,-1,1\n"
    );
    let got = stdout_of(&["--seq", "even", "--format", "json", "charpoly", "--levels", "1"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["degree"], 1);
    assert_eq!(v["coefficients"], serde_json::json!(["-2", "1"]));
    assert_eq!(v["rendered"], "λ - 2");
}

#[test]
fn domatic_verdicts() {
    assert_eq!(
        stdout_of(&["--seq", "fibonacci", "domatic", "--levels", "6", "--modulus", "2"]),
        "yes: all level classes mod 2 are dominating sets\n"
    );
    assert_eq!(
        stdout_of(&["--seq", "fibonacci", "domatic", "--levels", "6", "--modulus", "3"]),
        "no: class 2 leaves vertex (1,0) uncovered\n"
    );
    assert_eq!(
        stdout_of(&["--seq", "fibonacci", "--format", "csv", "domatic", "--levels", "6", "--modulus", "3"]),
        "3,no,2,1,0\n"
    );
    let got = stdout_of(&["--seq", "fibonacci", "--format", "json", "domatic", "--levels", "6", "--modulus", "3"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["domatic"], false);
    assert_eq!(v["witness"]["class"], 2);
    assert_eq!(v["witness"]["vertex"]["s"], 0);
}

#[test]
fn domatic_with_too_few_levels_is_a_domain_error() {
    let out = cobweb(&["--seq", "natural", "domatic", "--levels", "3", "--modulus", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("levels"));
}

#[test]
fn tile_exists_answers() {
    assert_eq!(
        stdout_of(&["--seq", "natural", "tile", "exists", "--from", "1", "--to", "3"]),
        "yes\n"
    );
    assert_eq!(
        stdout_of(&["--seq", "odd", "tile", "exists", "--from", "2", "--to", "4"]),
        "no\n"
    );
    let got = stdout_of(&["--seq", "odd", "--format", "json", "tile", "exists", "--from", "2", "--to", "4"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["divisible"], false);
    assert_eq!(v["exists"], false);
}

#[test]
fn tile_count_depends_on_the_policy() {
    assert_eq!(
        stdout_of(&["--seq", "natural", "tile", "count", "--from", "1", "--to", "3"]),
        "4\n"
    );
    assert_eq!(
        stdout_of(&["--seq", "natural", "tile", "count", "--from", "1", "--to", "3", "--policy", "identity"]),
        "0\n"
    );
}

#[test]
fn tile_enumerate_lists_canonical_tilings() {
    let got = stdout_of(&["--seq", "natural", "tile", "enumerate", "--from", "1", "--to", "3"]);
    assert_eq!(
        got,
        "{1}x{1,2} {1,2}x{3} {2}x{1,2}\n\
         {1}x{1,3} {1,2}x{2} {2}x{1,3}\n\
         {1,2}x{1} {1}x{2,3} {2}x{2,3}\n\
         {1,2}x{1} {1,2}x{2} {1,2}x{3}\n"
    );
    let limited = stdout_of(&["--seq", "natural", "tile", "enumerate", "--from", "1", "--to", "3", "--limit", "2"]);
    assert_eq!(limited.lines().count(), 2);
}

#[test]
fn tile_enumerate_json_structure() {
    let got = stdout_of(&["--seq", "natural", "--format", "json", "tile", "enumerate", "--from", "1", "--to", "3"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["complete"], true);
    let tilings = v["tilings"].as_array().unwrap();
    assert_eq!(tilings.len(), 4);
    assert_eq!(
        tilings[0],
        serde_json::json!([[[1], [1, 2]], [[1, 2], [3]], [[2], [1, 2]]])
    );
}

#[test]
fn tile_triangle_bound_is_frozen() {
    let got = stdout_of(&["--seq", "natural", "tile", "triangle", "--rows", "4"]);
    assert_eq!(got, "1\n1,1\n1,1,1\n1,15,1,1\n1,96197645544,10395,1,1\n");
}

#[test]
fn tile_triangle_exists_mixes_verdicts() {
    let got = stdout_of(&["--seq", "odd", "tile", "triangle", "--rows", "4", "--mode", "exists"]);
    assert_eq!(got, "yes\nyes,yes\nyes,yes,yes\nyes,yes,yes,yes\n?,?,no,yes,yes\n");
}

#[test]
fn search_outputs_are_frozen() {
    let got = stdout_of(&["--format", "csv", "search", "--property", "admissible", "--max-len", "2", "--max-term", "3"]);
    assert_eq!(got, "1,1\n1,2\n1,3\n2,2\n3,3\n");
    let got = stdout_of(&["--format", "csv", "search", "--property", "gcd-morphic", "--max-len", "2", "--max-term", "2"]);
    assert_eq!(got, "1,1\n1,2\n2,2\n");
}

#[test]
fn search_json_reports_exhaustion() {
    let got = stdout_of(&["--format", "json", "search", "--property", "admissible", "--max-len", "2", "--max-term", "3", "--limit", "2"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["exhausted"], false);
    assert_eq!(v["found"], serde_json::json!([[1, 1], [1, 2]]));

    let got = stdout_of(&["--format", "json", "search", "--property", "admissible", "--max-len", "2", "--max-term", "3", "--prefix", "2"]);
    let v: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["found"], serde_json::json!([[2, 2]]));
}

#[test]
fn search_ceiling_is_a_domain_error() {
    let out = cobweb(&["search", "--property", "admissible", "--max-len", "12", "--max-term", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("ceiling"));
}

#[test]
fn vertex_budget_flag_is_enforced() {
    let out = cobweb(&["--seq", "gauss:3", "--budget-vertices", "100", "poset", "--levels", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("budget"));
}

#[test]
fn cell_budget_env_var_is_honored() {
    let out = cobweb_env(
        &["--seq", "natural", "tile", "count", "--from", "2", "--to", "4"],
        &[("COBWEB_BUDGET_CELLS", "8")],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("budget"));
    // the flag wins over the environment
    let out = cobweb_env(
        &["--seq", "natural", "--budget-cells", "16", "tile", "count", "--from", "2", "--to", "4", "--policy", "identity"],
        &[("COBWEB_BUDGET_CELLS", "8")],
    );
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_two() {
    let missing_seq = cobweb(&["poset", "--levels", "2"]);
    assert_eq!(missing_seq.status.code(), Some(2));

    let unknown = cobweb(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));

    let conflict = cobweb(&["--seq", "natural", "--seq-file", "/tmp/nowhere", "poset", "--levels", "2"]);
    assert_eq!(conflict.status.code(), Some(2));
}

#[test]
fn invalid_sequence_spec_is_a_domain_error() {
    let out = cobweb(&["--seq", "wibble", "poset", "--levels", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("cannot parse"));
}

#[test]
fn threads_flag_is_accepted_everywhere() {
    let got = stdout_of(&["--seq", "fibonacci", "--threads", "2", "chains", "--from", "0", "--to", "6", "--mode", "brute"]);
    assert_eq!(got, "240\n");
}
