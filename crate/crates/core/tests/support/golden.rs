//! Golden CLI cases shared by the golden test and the acceptance runner.
//!
//! Each case runs the binary in a scratch copy of `tests/fixtures` and is
//! recorded as exit status, stdout, stderr and any files it wrote. Set
//! `UPDATE_GOLDEN=1` to rewrite the recordings.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// Files the command writes, recorded after it exits.
    pub outputs: &'static [&'static str],
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case {
        name,
        args,
        outputs: &[],
    }
}

const C: &str = "example_corpus.json";

pub const CASES: &[Case] = &[
    case("validate_ok", &["validate", C]),
    case("validate_conflict", &["validate", "conflict_corpus.json"]),
    case("validate_missing", &["validate", "missing.json"]),
    case(
        "simulate_db_scopus",
        &["simulate", C, "--mode", "none", "--db-sources", "Scopus"],
    ),
    case(
        "simulate_parallel_empty_seed",
        &["simulate", C, "--mode", "parallel"],
    ),
    case(
        "simulate_unknown_mode",
        &["simulate", C, "--mode", "sideways"],
    ),
    case(
        "simulate_unknown_source",
        &["simulate", C, "--db-sources", "Nowhere"],
    ),
    case(
        "simulate_ranked_seed",
        &[
            "simulate",
            C,
            "--seed-source",
            "Google Scholar",
            "--seed-cap",
            "3",
            "--mode",
            "fs-only",
        ],
    ),
    case(
        "simulate_seed_ids",
        &[
            "simulate",
            C,
            "--seed-ids",
            "S02,S09",
            "--mode",
            "seq-fs-bs",
        ],
    ),
    case(
        "simulate_cap_exceeded",
        &[
            "simulate",
            C,
            "--preset",
            "scopus-iter",
            "--max-iterations",
            "1",
        ],
    ),
    Case {
        name: "simulate_trace",
        args: &[
            "simulate",
            C,
            "--preset",
            "scopus-iter",
            "--out",
            "trace.json",
        ],
        outputs: &["trace.json"],
    },
    case("compare_presets_markdown", &["compare", C, "--presets"]),
    case(
        "compare_presets_csv",
        &["compare", C, "--presets", "--format", "csv"],
    ),
    case(
        "compare_presets_json",
        &["compare", C, "--presets", "--format", "json"],
    ),
    case("compare_specs", &["compare", C, "--specs", "specs.json"]),
    case(
        "compare_empty_specs",
        &[
            "compare",
            C,
            "--specs",
            "empty_specs.json",
            "--format",
            "csv",
        ],
    ),
    case(
        "compare_duplicate_names",
        &["compare", C, "--specs", "dup_specs.json"],
    ),
    case(
        "compare_bad_format",
        &["compare", C, "--presets", "--format", "dot"],
    ),
    case("presets", &["presets", C]),
    case("libraries_markdown", &["libraries", C]),
    case("libraries_csv", &["libraries", C, "--format", "csv"]),
    case("libraries_json", &["libraries", C, "--format", "json"]),
    case("indexed", &["indexed", C]),
    case("matrix_markdown", &["matrix", C]),
    case("matrix_json", &["matrix", C, "--format", "json"]),
    case(
        "complementarity_markdown",
        &["complementarity", C, "--db-sources", "Scopus"],
    ),
    case(
        "complementarity_json",
        &[
            "complementarity",
            C,
            "--db-sources",
            "Scopus",
            "--format",
            "json",
        ],
    ),
    case("graph_parallel", &["graph", C, "--preset", "scopus-par"]),
    case(
        "graph_all_edges",
        &["graph", C, "--preset", "scopus-bsfs", "--all-edges"],
    ),
    case(
        "graph_seed_only",
        &["graph", C, "--db-sources", "IEEE", "--mode", "none"],
    ),
    case(
        "ingest_bibtex",
        &["ingest", "bibtex", C, "--citing", "S10", "refs.bib"],
    ),
    case(
        "ingest_bibtex_broken",
        &["ingest", "bibtex", C, "--citing", "S10", "broken.bib"],
    ),
    case(
        "ingest_bibtex_unknown_citing",
        &["ingest", "bibtex", C, "--citing", "Q99", "refs.bib"],
    ),
    Case {
        name: "ingest_citers_in_place",
        args: &["ingest", "citers", C, "citers.csv", "--in-place"],
        outputs: &[C],
    },
    case(
        "ingest_citers_no_stubs",
        &["ingest", "citers", C, "citers.csv", "--no-stubs"],
    ),
    case("ingest_corpus", &["ingest", "corpus", C]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn copy_fixtures(to: &Path) {
    for entry in fs::read_dir(crate_dir().join("tests/fixtures")).unwrap() {
        let entry = entry.unwrap();
        if !entry.file_type().unwrap().is_file() {
            continue;
        }
        fs::copy(entry.path(), to.join(entry.file_name())).unwrap();
    }
}

/// Runs a case and returns its recording.
pub fn record(case: &Case) -> String {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_slrsim"))
        .args(case.args)
        .current_dir(dir.path())
        .env("SLRSIM_NO_COLOR", "1")
        .output()
        .unwrap();
    let mut text = format!(
        "$ slrsim {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        case.args.join(" "),
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    for file in case.outputs {
        let body =
            fs::read_to_string(dir.path().join(file)).unwrap_or_else(|_| "<missing>\n".into());
        text.push_str(&format!("--- file {file}\n{body}"));
    }
    text
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir()
        .join("tests/golden")
        .join(format!("{}.txt", case.name))
}

/// Compares a case against its recording, rewriting it when
/// `UPDATE_GOLDEN` is set.
pub fn check(case: &Case) -> Result<(), String> {
    let actual = record(case);
    let path = golden_path(case);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &actual).unwrap();
        return Ok(());
    }
    let expected = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        let line = expected
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()));
        Err(format!(
            "{} differs from its golden file at line {}",
            case.name,
            line + 1
        ))
    }
}
