//! End-to-end CLI behavior: exit codes, diagnostics, file shapes, and
//! byte-level reproducibility.

mod common;

use std::fs;
use std::path::{Path, PathBuf};

use common::{assert_dirs_identical, json_number, run_suffstat};

fn write(path: &Path, contents: &str) {
    fs::write(path, contents).expect("write test file");
}

fn small_dataset(dir: &Path) -> (PathBuf, PathBuf) {
    let spec = dir.join("spec.txt");
    write(
        &spec,
        "n_rows = 1500\nbalance = 0.45\nseed = 5\n\
         features = numeric:0.6, numeric:0, categorical:2, categorical:1\n",
    );
    let csv = dir.join("data.csv");
    run_suffstat(
        &["synth", "--spec", spec.to_str().unwrap(), "--out", csv.to_str().unwrap()],
        0,
    );
    let schema = dir.join("schema.txt");
    write(
        &schema,
        "f0=numeric\nf1=numeric\nf2=categorical\nf3=categorical\nlabel=categorical\n",
    );
    (csv, schema)
}

fn small_config(dir: &Path) -> PathBuf {
    let path = dir.join("config.txt");
    write(
        &path,
        "subsets = 5\nsubset_size = 200\ncurve_fractions = 0.2,0.4,0.6,0.8,1.0\n\
         forest.n_trees = 30\nmlp.epochs = 40\n",
    );
    path
}

#[test]
fn missing_input_file_is_usage_error() {
    let (_, stderr) = run_suffstat(
        &["profile", "--input", "/nonexistent/file.csv", "--adult"],
        2,
    );
    assert!(stderr.contains("cannot read"), "stderr: {stderr}");
}

#[test]
fn missing_label_column_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let (_, stderr) = run_suffstat(
        &[
            "profile",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "bogus",
            "--positive",
            "pos",
        ],
        2,
    );
    assert!(stderr.contains("bogus"), "diagnostic must name the column: {stderr}");
}

#[test]
fn absent_positive_token_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let (_, stderr) = run_suffstat(
        &[
            "profile",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "nope",
        ],
        2,
    );
    assert!(stderr.contains("nope"), "stderr: {stderr}");
}

#[test]
fn ragged_csv_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ragged.csv");
    write(&csv, "a,b\n1,2\n3\n");
    let schema = dir.path().join("schema.txt");
    write(&schema, "a=numeric\nb=categorical\n");
    let (_, stderr) = run_suffstat(
        &[
            "profile",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "b",
            "--positive",
            "2",
        ],
        2,
    );
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
}

#[test]
fn unknown_config_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = dir.path().join("bad.txt");
    write(&config, "bogus_key = 1\n");
    let (_, stderr) = run_suffstat(
        &[
            "exp1-subsets",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            dir.path().join("out").to_str().unwrap(),
        ],
        2,
    );
    assert!(stderr.contains("bogus_key"), "stderr: {stderr}");
}

#[test]
fn synth_rejects_bad_odds_target() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    write(&spec, "n_rows = 10\nfeatures = categorical:0\n");
    let (_, stderr) = run_suffstat(
        &[
            "synth",
            "--spec",
            spec.to_str().unwrap(),
            "--out",
            dir.path().join("x.csv").to_str().unwrap(),
        ],
        2,
    );
    assert!(stderr.contains("odds-ratio"), "stderr: {stderr}");
}

#[test]
fn synth_writes_header_plus_rows() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    write(&spec, "n_rows = 1000\nseed = 3\nfeatures = numeric:0.5, categorical:2\n");
    let out = dir.path().join("gen.csv");
    run_suffstat(
        &["synth", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap()],
        0,
    );
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1001);
    assert_eq!(text.lines().next().unwrap(), "f0,f1,label");
}

#[test]
fn infeasible_partition_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = dir.path().join("config.txt");
    write(&config, "subsets = 100\nsubset_size = 500\n");
    let (_, stderr) = run_suffstat(
        &[
            "exp1-subsets",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            dir.path().join("out").to_str().unwrap(),
        ],
        1,
    );
    assert!(stderr.contains("50000"), "stderr: {stderr}");
}

#[test]
fn scatter_svg_embeds_summary_r_squared() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = small_config(dir.path());
    let out = dir.path().join("out");
    run_suffstat(
        &[
            "exp1-subsets",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            "9",
            "--out-dir",
            out.to_str().unwrap(),
        ],
        0,
    );
    let r2 = json_number(&out.join("exp1-subsets-label.summary.json"), "r_squared");
    let svg = fs::read_to_string(out.join("exp1-subsets-label.scatter.svg")).unwrap();
    let annotation = format!("R&#178; = {}", suffstat_cli::fmt::sig12(r2));
    assert!(svg.contains(&annotation), "svg missing '{annotation}'");
}

// ---------------------------------------------------------------------------
// Byte-level reproducibility
// ---------------------------------------------------------------------------

#[test]
fn outputs_are_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = small_config(dir.path());

    let base_args = |out: &Path, jobs: &str| -> Vec<String> {
        [
            "exp1-subsets",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            "7",
            "--jobs",
            jobs,
            "--out-dir",
            out.to_str().unwrap(),
        ]
        .iter()
        .map(|s| s.to_string())
        .collect()
    };

    let out1 = dir.path().join("run1");
    let out2 = dir.path().join("run2");
    let args1: Vec<String> = base_args(&out1, "1");
    let args2: Vec<String> = base_args(&out2, "2");
    run_suffstat(&args1.iter().map(String::as_str).collect::<Vec<_>>(), 0);
    run_suffstat(&args2.iter().map(String::as_str).collect::<Vec<_>>(), 0);
    assert_dirs_identical(&out1, &out2);
}

#[test]
fn seed_env_fallback_applies() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = small_config(dir.path());
    let out = dir.path().join("out");
    let output = std::process::Command::new(common::suffstat_bin())
        .env("SUFFSTAT_SEED", "123")
        .args([
            "exp1-subsets",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let manifest = fs::read_to_string(out.join("exp1-subsets-label.manifest.json")).unwrap();
    assert!(manifest.contains("\"master_seed\": 123"), "{manifest}");
    assert!(manifest.contains("SUFFSTAT_SEED"), "{manifest}");
}

#[test]
fn format_flag_selects_report_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = small_config(dir.path());
    let base = |out: &Path, format: &str| -> Vec<String> {
        [
            "exp1-subsets",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--format",
            format,
            "--out-dir",
            out.to_str().unwrap(),
        ]
        .iter()
        .map(|s| s.to_string())
        .collect()
    };

    let csv_out = dir.path().join("csv-only");
    let args = base(&csv_out, "csv");
    run_suffstat(&args.iter().map(String::as_str).collect::<Vec<_>>(), 0);
    assert!(csv_out.join("exp1-subsets-label.records.csv").exists());
    assert!(!csv_out.join("exp1-subsets-label.summary.json").exists());
    assert!(csv_out.join("exp1-subsets-label.scatter.svg").exists());

    let json_out = dir.path().join("json-only");
    let args = base(&json_out, "json");
    run_suffstat(&args.iter().map(String::as_str).collect::<Vec<_>>(), 0);
    assert!(!json_out.join("exp1-subsets-label.records.csv").exists());
    assert!(json_out.join("exp1-subsets-label.summary.json").exists());
}

#[test]
fn manifest_lists_only_existing_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, schema) = small_dataset(dir.path());
    let config = small_config(dir.path());
    let out = dir.path().join("out");
    run_suffstat(
        &[
            "exp2",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--seed",
            "3",
            "--out-dir",
            out.to_str().unwrap(),
        ],
        0,
    );
    let manifest = fs::read_to_string(out.join("exp2-label.manifest.json")).unwrap();
    let mut listed = 0;
    for line in manifest.lines() {
        let trimmed = line.trim().trim_end_matches(',');
        if trimmed.starts_with('"') && trimmed.ends_with('"') && trimmed.contains("exp2-label") {
            let name = trimmed.trim_matches('"');
            assert!(out.join(name).exists(), "manifest lists missing file {name}");
            listed += 1;
        }
    }
    // records, curves, summaries, scatters, per-curve plots, diagnostics.
    assert!(listed > 10, "manifest listed only {listed} outputs");
    // exp2 writes one curve plot per (subset, family).
    let curve_plots = fs::read_dir(out.join("exp2-label.curves")).unwrap().count();
    assert_eq!(curve_plots, 5 * 4);
}

#[test]
fn zero_effect_synth_profiles_near_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    write(
        &spec,
        "n_rows = 20000\nbalance = 0.5\nseed = 6\nfeatures = numeric:0, numeric:0, categorical:1\n",
    );
    let csv = dir.path().join("flat.csv");
    run_suffstat(
        &["synth", "--spec", spec.to_str().unwrap(), "--out", csv.to_str().unwrap()],
        0,
    );
    let schema = dir.path().join("schema.txt");
    write(&schema, "f0=numeric\nf1=numeric\nf2=categorical\nlabel=categorical\n");
    let out = dir.path().join("out");
    run_suffstat(
        &[
            "profile",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--out-dir",
            out.to_str().unwrap(),
        ],
        0,
    );
    let average = json_number(&out.join("profile-label.effects.json"), "average");
    assert!(average < 0.05, "flat synthetic data profiled at {average}");
}

#[test]
fn ablation_on_two_features_keeps_records_but_fails_summary() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.txt");
    write(
        &spec,
        "n_rows = 600\nbalance = 0.5\nseed = 2\nfeatures = numeric:0.5, numeric:0.2\n",
    );
    let csv = dir.path().join("two.csv");
    run_suffstat(
        &["synth", "--spec", spec.to_str().unwrap(), "--out", csv.to_str().unwrap()],
        0,
    );
    let schema = dir.path().join("schema.txt");
    write(&schema, "f0=numeric\nf1=numeric\nlabel=categorical\n");
    let config = dir.path().join("config.txt");
    write(&config, "forest.n_trees = 10\nmlp.epochs = 20\n");
    let out = dir.path().join("out");
    let (_, stderr) = run_suffstat(
        &[
            "exp1-ablation",
            "--input",
            csv.to_str().unwrap(),
            "--schema",
            schema.to_str().unwrap(),
            "--header",
            "--label",
            "label",
            "--positive",
            "pos",
            "--config",
            config.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
        ],
        1,
    );
    assert!(stderr.contains("summary unavailable"), "stderr: {stderr}");
    // Records were still written: one averaged row per feature.
    let records = out.join("exp1-ablation-label.records.csv");
    assert_eq!(common::count_family_rows(&records, "averaged"), 2);
    let summary = fs::read_to_string(out.join("exp1-ablation-label.summary.json")).unwrap();
    assert!(summary.contains("\"error\""));
}
