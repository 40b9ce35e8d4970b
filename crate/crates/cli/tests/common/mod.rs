//! Shared test support: a deterministic census-like corpus and helpers for
//! driving the binary.
//!
//! The corpus mimics the UCI adult file's shape: 48,842 headerless rows, the
//! same 15 columns (six numeric, eight categorical, the income label), "?"
//! null tokens in workclass/occupation/native-country, a ~2:1 Male/Female sex
//! column, and an income label driven by a latent score over several
//! redundant features plus one interaction that no single-feature statistic
//! can see. Set SUFFSTAT_ADULT_CSV to a real census export to run the suite
//! against it instead.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use suffstat_core::rng::Prng;

pub const CORPUS_ROWS: usize = 48_842;

const EDUCATION: [&str; 16] = [
    "Preschool",
    "1st-4th",
    "5th-6th",
    "7th-8th",
    "9th",
    "10th",
    "11th",
    "12th",
    "HS-grad",
    "Some-college",
    "Assoc-voc",
    "Assoc-acdm",
    "Bachelors",
    "Masters",
    "Prof-school",
    "Doctorate",
];

const WORKCLASS: [(&str, f64); 8] = [
    ("Private", 0.736),
    ("Self-emp-not-inc", 0.083),
    ("Local-gov", 0.068),
    ("State-gov", 0.042),
    ("Self-emp-inc", 0.036),
    ("Federal-gov", 0.031),
    ("Without-pay", 0.003),
    ("Never-worked", 0.001),
]; // drawn only when the cell is not "?"

const MARITAL: [(&str, f64); 7] = [
    ("Married-civ-spouse", 0.458),
    ("Never-married", 0.330),
    ("Divorced", 0.136),
    ("Separated", 0.031),
    ("Widowed", 0.030),
    ("Married-spouse-absent", 0.013),
    ("Married-AF-spouse", 0.002),
];

const OCCUPATIONS: [&str; 14] = [
    "Prof-specialty",
    "Craft-repair",
    "Exec-managerial",
    "Adm-clerical",
    "Sales",
    "Other-service",
    "Machine-op-inspct",
    "Transport-moving",
    "Handlers-cleaners",
    "Farming-fishing",
    "Tech-support",
    "Protective-serv",
    "Priv-house-serv",
    "Armed-Forces",
];

// Indices into OCCUPATIONS, preferred by high-ability rows.
const PROFESSIONAL: [usize; 5] = [0, 2, 4, 10, 11];
const GENERAL: [usize; 9] = [1, 3, 5, 6, 7, 8, 9, 12, 13];

// Mild sex tilts so several columns carry the signal and no single feature
// dominates either label's ablation scan.
const FEMALE_TILT: [usize; 4] = [3, 5, 10, 12];
const MALE_TILT: [usize; 4] = [1, 6, 7, 11];

const RELATIONSHIP_UNMARRIED: [(&str, f64); 4] = [
    ("Not-in-family", 0.55),
    ("Own-child", 0.28),
    ("Unmarried", 0.12),
    ("Other-relative", 0.05),
];

const RACE: [(&str, f64); 5] = [
    ("White", 0.855),
    ("Black", 0.096),
    ("Asian-Pac-Islander", 0.031),
    ("Amer-Indian-Eskimo", 0.010),
    ("Other", 0.008),
];

const COUNTRIES: [(&str, f64); 20] = [
    ("United-States", 0.913),
    ("Mexico", 0.020),
    ("Philippines", 0.006),
    ("Germany", 0.004),
    ("Canada", 0.004),
    ("Puerto-Rico", 0.004),
    ("El-Salvador", 0.003),
    ("India", 0.003),
    ("Cuba", 0.003),
    ("England", 0.003),
    ("China", 0.003),
    ("Jamaica", 0.003),
    ("South", 0.002),
    ("Italy", 0.002),
    ("Dominican-Republic", 0.002),
    ("Vietnam", 0.002),
    ("Guatemala", 0.002),
    ("Japan", 0.002),
    ("Poland", 0.002),
    ("Columbia", 0.017),
];

fn pick(rng: &mut Prng, table: &[(&'static str, f64)]) -> (usize, &'static str) {
    let mut u = rng.uniform();
    for (i, (token, w)) in table.iter().enumerate() {
        if u < *w {
            return (i, token);
        }
        u -= w;
    }
    (table.len() - 1, table[table.len() - 1].0)
}

fn clamp_round(value: f64, lo: i64, hi: i64) -> i64 {
    (value.round() as i64).clamp(lo, hi)
}

/// Writes the corpus; one deterministic seed, ", "-separated cells like the
/// real export, no header line.
pub fn write_census_like(path: &Path) {
    let mut rng = Prng::new(0xAD01_7CE5);
    let mut out = String::with_capacity(CORPUS_ROWS * 120);

    for _ in 0..CORPUS_ROWS {
        let ability = rng.standard_normal();
        let male = rng.uniform() < 0.667;
        let edu_num =
            clamp_round(10.0 + 2.2 * (0.7 * ability + 0.3 * rng.standard_normal()), 1, 16);
        let age = clamp_round(38.0 + 13.0 * rng.standard_normal(), 17, 90);
        let hours = clamp_round(
            40.0 + 11.0 * (0.4 * ability + 0.6 * rng.standard_normal())
                - if male { 0.0 } else { 5.0 },
            1,
            99,
        );
        let fnlwgt = clamp_round(189_000.0 + 105_000.0 * rng.standard_normal(), 12_285, 1_490_400);

        let (marital_idx, marital) = pick(&mut rng, &MARITAL);
        let married = marital_idx == 0;
        // Household roles follow sex only loosely here, so no single column
        // gives the sex label away.
        let relationship = if married {
            let straight = rng.uniform() < 0.7;
            if male == straight {
                "Husband"
            } else {
                "Wife"
            }
        } else {
            pick(&mut rng, &RELATIONSHIP_UNMARRIED).1
        };
        let (_, race) = pick(&mut rng, &RACE);

        // workclass and occupation go missing together, as in the source data.
        let work_missing = rng.uniform() < 0.056;
        let (workclass, occupation, occupation_idx) = if work_missing {
            ("?", "?", usize::MAX)
        } else {
            let (_, wc) = pick(&mut rng, &WORKCLASS);
            let tilt = rng.uniform();
            let idx = if !male && tilt < 0.4 {
                FEMALE_TILT[rng.below(FEMALE_TILT.len())]
            } else if male && tilt < 0.3 {
                MALE_TILT[rng.below(MALE_TILT.len())]
            } else {
                let p_professional = (0.45 + 0.18 * ability).clamp(0.05, 0.9);
                if rng.uniform() < p_professional {
                    PROFESSIONAL[rng.below(PROFESSIONAL.len())]
                } else {
                    GENERAL[rng.below(GENERAL.len())]
                }
            };
            (wc, OCCUPATIONS[idx], idx)
        };
        let country = if rng.uniform() < 0.018 {
            "?"
        } else {
            pick(&mut rng, &COUNTRIES).1
        };

        // Interaction term: parity of occupation and marital categories.
        // Each bit alone is nearly independent of income; the pair is not.
        let parity_occ = occupation_idx != usize::MAX && occupation_idx % 2 == 0;
        let parity_mar = marital_idx % 2 == 0;
        let interaction = parity_occ != parity_mar;

        let score = 0.45 * (edu_num as f64 - 10.0) / 2.56
            + 0.25 * (age as f64 - 38.0) / 13.0
            + 0.30 * (hours as f64 - 40.0) / 11.0
            + 0.35 * (f64::from(married) - 0.46)
            + 0.8 * (f64::from(interaction) - 0.5)
            + 1.0 * rng.standard_normal();
        let income_pos = score > 0.83;

        // Rare spiky capital columns: large group difference, little
        // additional predictive value.
        let gain_p = if income_pos { 0.12 } else { 0.02 };
        let capital_gain = if rng.uniform() < gain_p {
            clamp_round((8.6 + 0.7 * rng.standard_normal()).exp(), 114, 99_999)
        } else {
            0
        };
        let loss_p = if income_pos { 0.05 } else { 0.02 };
        let capital_loss = if rng.uniform() < loss_p {
            clamp_round((7.4 + 0.25 * rng.standard_normal()).exp(), 155, 4_356)
        } else {
            0
        };

        let education = EDUCATION[(edu_num - 1) as usize];
        let sex = if male { "Male" } else { "Female" };
        let income = if income_pos { ">50K" } else { "<=50K" };

        out.push_str(&format!(
            "{age}, {workclass}, {fnlwgt}, {education}, {edu_num}, {marital}, {occupation}, \
             {relationship}, {race}, {sex}, {capital_gain}, {capital_loss}, {hours}, {country}, \
             {income}\n"
        ));
    }

    std::fs::write(path, out).expect("write corpus");
}

/// The corpus used by the end-to-end suite: a real census export when
/// SUFFSTAT_ADULT_CSV points at one, else the generated stand-in (built once
/// per test binary).
pub fn corpus_path() -> &'static Path {
    static PATH: OnceLock<PathBuf> = OnceLock::new();
    PATH.get_or_init(|| {
        if let Ok(real) = std::env::var("SUFFSTAT_ADULT_CSV") {
            let real = PathBuf::from(real);
            if real.is_file() {
                eprintln!("corpus: using real census file {}", real.display());
                return real;
            }
            eprintln!("corpus: SUFFSTAT_ADULT_CSV is not a file; falling back to generated data");
        }
        let dir = std::env::temp_dir().join(format!("suffstat-corpus-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("create corpus dir");
        let path = dir.join("census-like.csv");
        write_census_like(&path);
        path
    })
}

pub fn suffstat_bin() -> &'static str {
    env!("CARGO_BIN_EXE_suffstat")
}

/// Runs the binary, asserting the expected exit code; returns (stdout, stderr).
pub fn run_suffstat(args: &[&str], expect_code: i32) -> (String, String) {
    let output = Command::new(suffstat_bin())
        .args(args)
        .output()
        .expect("spawn suffstat");
    let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
    let stderr = String::from_utf8_lossy(&output.stderr).into_owned();
    assert_eq!(
        output.status.code(),
        Some(expect_code),
        "suffstat {args:?}\nstdout:\n{stdout}\nstderr:\n{stderr}"
    );
    (stdout, stderr)
}

/// Pulls a numeric field out of a summary JSON file.
pub fn json_number(path: &Path, key: &str) -> f64 {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let needle = format!("\"{key}\": ");
    let at = text
        .find(&needle)
        .unwrap_or_else(|| panic!("{} missing key {key}:\n{text}", path.display()));
    let rest = &text[at + needle.len()..];
    let end = rest
        .find([',', '\n', '}'])
        .unwrap_or_else(|| panic!("unterminated value for {key}"));
    rest[..end]
        .trim()
        .parse()
        .unwrap_or_else(|e| panic!("{key} = '{}': {e}", &rest[..end]))
}

/// Counts CSV record lines whose family column matches.
pub fn count_family_rows(path: &Path, family: &str) -> usize {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .skip(1)
        .filter(|line| line.split(',').nth(3) == Some(family))
        .count()
}

pub fn collect_files(dir: &Path) -> Vec<PathBuf> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(at) = stack.pop() {
        for entry in std::fs::read_dir(&at).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                files.push(path.strip_prefix(dir).unwrap().to_path_buf());
            }
        }
    }
    files.sort();
    files
}

/// Zeroes the wall-clock field, the one value allowed to differ across runs.
pub fn normalize_manifest(text: &str) -> String {
    let mut out = String::new();
    for line in text.lines() {
        if let Some(at) = line.find("\"total\": ") {
            out.push_str(&line[..at]);
            out.push_str("\"total\": 0");
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

/// Asserts two output directories hold byte-identical files (manifests
/// compared modulo the timing field).
pub fn assert_dirs_identical(a: &Path, b: &Path) {
    let files_a = collect_files(a);
    let files_b = collect_files(b);
    assert_eq!(files_a, files_b, "output file sets differ");
    for rel in &files_a {
        let bytes_a = std::fs::read(a.join(rel)).unwrap();
        let bytes_b = std::fs::read(b.join(rel)).unwrap();
        if rel.to_string_lossy().ends_with(".manifest.json") {
            let norm_a = normalize_manifest(&String::from_utf8(bytes_a).unwrap());
            let norm_b = normalize_manifest(&String::from_utf8(bytes_b).unwrap());
            assert_eq!(norm_a, norm_b, "{} differs beyond timings", rel.display());
        } else {
            assert_eq!(bytes_a, bytes_b, "{} differs between runs", rel.display());
        }
    }
}
