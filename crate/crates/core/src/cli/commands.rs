use std::fs;
use std::path::{Path, PathBuf};

use slrsim::analytics::{indexed_recall, library_performance, overlap_matrix, strategy_comparison};
use slrsim::corpus::{validate, Corpus, PaperId, SourceId};
use slrsim::engine::{
    all_presets, complementarity, parse_spec_file, preset, resolve_seed_sets, run_strategy,
    spec_file_to_json, EngineError, PresetOptions, Seed, SnowballMode, SpecFileError, StrategySpec,
    DEFAULT_MAX_ITERATIONS, PRESET_NAMES,
};
use slrsim::ingest::{
    corpus_to_json, import_citers, import_references, load_corpus, parse_bibtex_bytes,
    parse_citer_csv, CiterOptions, ImportStats, LoadError,
};
use slrsim::report::{
    comparison_table, indexed_table, library_table, matrix_table, render_citation_graph,
    render_table, render_venn, to_json, RenderFormat,
};

use super::args::{
    Command, IngestCommand, PresetArgs, SeedArgs, StrategyArgs, TableOutput, WriteArgs,
};
use super::CliError;

type CliResult<T = ()> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Validate { corpus } => cmd_validate(&corpus),
        Command::Simulate {
            corpus,
            strategy,
            out,
        } => cmd_simulate(&corpus, &strategy, out.as_deref()),
        Command::Compare {
            corpus,
            specs,
            presets: _,
            preset_sources,
            output,
        } => cmd_compare(&corpus, specs.as_deref(), &preset_sources, &output),
        Command::Presets {
            corpus,
            preset_sources,
            out,
        } => {
            let corpus = open(&corpus)?;
            emit(
                &spec_file_to_json(&all_presets(&corpus, &preset_options(&preset_sources))),
                out.as_deref(),
            )
        }
        Command::Libraries { corpus, output } => {
            let corpus = open(&corpus)?;
            let rows = library_performance(&corpus).map_err(CliError::domain)?;
            emit_table(&library_table(&rows), &output)
        }
        Command::Indexed { corpus, output } => {
            let corpus = open(&corpus)?;
            emit_table(&indexed_table(&indexed_recall(&corpus)), &output)
        }
        Command::Matrix { corpus, output } => {
            let corpus = open(&corpus)?;
            emit_table(&matrix_table(&overlap_matrix(&corpus)), &output)
        }
        Command::Complementarity {
            corpus,
            seed,
            format,
            out,
        } => cmd_complementarity(&corpus, &seed, &format, out.as_deref()),
        Command::Graph {
            corpus,
            strategy,
            all_edges,
            out,
        } => {
            let corpus = open(&corpus)?;
            let spec = build_spec(&corpus, &strategy)?;
            let outcome = run_strategy(&corpus, &spec).map_err(engine_error)?;
            emit(
                &render_citation_graph(&corpus, &outcome, all_edges),
                out.as_deref(),
            )
        }
        Command::Ingest(cmd) => cmd_ingest(cmd),
    }
}

fn load(path: &Path) -> CliResult<Corpus> {
    load_corpus(path).map_err(|e| match e {
        LoadError::Io { .. } => CliError::input(e),
        other => CliError::input(format!("{}: {other}", path.display())),
    })
}

fn print_diagnostics(corpus: &Corpus) -> usize {
    let diagnostics = validate(corpus);
    for d in &diagnostics {
        eprintln!("{d}");
    }
    diagnostics.iter().filter(|d| d.is_error()).count()
}

/// Loads a corpus and refuses to go on if it has validation errors.
fn open(path: &Path) -> CliResult<Corpus> {
    let corpus = load(path)?;
    match print_diagnostics(&corpus) {
        0 => Ok(corpus),
        n => Err(CliError::domain(format!(
            "{}: {n} validation error(s)",
            path.display()
        ))),
    }
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> CliResult<String> {
    String::from_utf8(read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Replaces `path` via a sibling temporary file so a failed write never
/// leaves a truncated corpus behind.
fn replace(path: &Path, text: &str) -> CliResult {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    write(&tmp, text)?;
    fs::rename(&tmp, path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_arg(s: &str) -> CliResult<RenderFormat> {
    RenderFormat::parse(s).ok_or_else(|| {
        CliError::domain(format!(
            "unknown format `{s}`; valid formats: csv, markdown, json"
        ))
    })
}

fn emit_table(table: &slrsim::report::Table, output: &TableOutput) -> CliResult {
    let text = render_table(table, format_arg(&output.format)?).map_err(CliError::domain)?;
    emit(&text, output.out.as_deref())
}

fn engine_error(e: EngineError) -> CliError {
    CliError::domain(e)
}

fn mode_arg(s: &str) -> CliResult<SnowballMode> {
    SnowballMode::parse(s).ok_or_else(|| {
        let valid: Vec<&str> = SnowballMode::ALL.iter().map(|m| m.as_str()).collect();
        CliError::domain(format!(
            "unknown mode `{s}`; valid modes: {}",
            valid.join(", ")
        ))
    })
}

fn preset_options(args: &PresetArgs) -> PresetOptions {
    PresetOptions {
        sb_source: SourceId::new(args.sb_source.as_str()),
        hybrid_source: SourceId::new(args.hybrid_source.as_str()),
        ..PresetOptions::default()
    }
}

fn seed_spec(seed: &SeedArgs, mode: SnowballMode) -> StrategySpec {
    if !seed.db_sources.is_empty() {
        StrategySpec::hybrid(
            seed.db_sources.iter().map(|s| SourceId::new(s.as_str())),
            mode,
        )
    } else if let Some(source) = &seed.seed_source {
        let seed = Seed::RankedSource {
            source: SourceId::new(source.as_str()),
            cap: seed.seed_cap,
        };
        StrategySpec::new([], seed, mode)
    } else {
        let papers = seed
            .seed_ids
            .iter()
            .map(|s| PaperId::new(s.as_str()))
            .collect();
        StrategySpec::new([], Seed::ExplicitList { papers }, mode)
    }
}

fn build_spec(corpus: &Corpus, args: &StrategyArgs) -> CliResult<StrategySpec> {
    let mode = args.mode.as_deref().map(mode_arg).transpose()?;
    let mut spec = match &args.preset {
        Some(name) => {
            let mut spec =
                preset(corpus, name, &preset_options(&args.preset_sources)).ok_or_else(|| {
                    CliError::domain(format!(
                        "unknown preset `{name}`; valid presets: {}",
                        PRESET_NAMES.join(", ")
                    ))
                })?;
            if let Some(mode) = mode {
                spec.mode = mode;
            }
            spec
        }
        None => seed_spec(&args.seed, mode.unwrap_or(SnowballMode::Iterative)),
    };
    spec.max_iterations = args.max_iterations.unwrap_or(DEFAULT_MAX_ITERATIONS);
    Ok(spec)
}

fn cmd_validate(path: &Path) -> CliResult {
    let corpus = load(path)?;
    match print_diagnostics(&corpus) {
        0 => Ok(()),
        n => Err(CliError::domain(format!(
            "{}: {n} validation error(s)",
            path.display()
        ))),
    }
}

fn cmd_simulate(path: &Path, args: &StrategyArgs, out: Option<&Path>) -> CliResult {
    let corpus = open(path)?;
    let spec = build_spec(&corpus, args)?;
    let (outcome, failure) = match run_strategy(&corpus, &spec) {
        Ok(outcome) => (outcome, None),
        // still report how far the run got
        Err(EngineError::StrategyCapExceeded {
            max_iterations,
            partial,
        }) => {
            let e = EngineError::StrategyCapExceeded {
                max_iterations,
                partial: partial.clone(),
            };
            (*partial, Some(engine_error(e)))
        }
        Err(e) => return Err(engine_error(e)),
    };
    if let Some(out) = out {
        write(out, &to_json(&outcome.trace))?;
    }
    match failure {
        None => {
            println!("{}", outcome.summary());
            Ok(())
        }
        Some(e) => {
            println!("{} (partial)", outcome.summary());
            Err(e)
        }
    }
}

fn cmd_compare(
    path: &Path,
    specs: Option<&Path>,
    presets: &PresetArgs,
    output: &TableOutput,
) -> CliResult {
    let corpus = open(path)?;
    let format = format_arg(&output.format)?;
    let specs = match specs {
        Some(file) => parse_spec_file(&read_text(file)?).map_err(|e| match e {
            SpecFileError::Syntax { .. } => CliError::input(format!("{}: {e}", file.display())),
            other => CliError::domain(format!("{}: {other}", file.display())),
        })?,
        None => all_presets(&corpus, &preset_options(presets)),
    };
    let rows = strategy_comparison(&corpus, &specs).map_err(engine_error)?;
    let text = render_table(&comparison_table(&rows), format).map_err(CliError::domain)?;
    emit(&text, output.out.as_deref())
}

fn cmd_complementarity(
    path: &Path,
    seed: &SeedArgs,
    format: &str,
    out: Option<&Path>,
) -> CliResult {
    let corpus = open(path)?;
    let format = match format {
        "json" => RenderFormat::Json,
        "markdown" | "md" => RenderFormat::Markdown,
        other => {
            return Err(CliError::domain(format!(
                "unknown format `{other}`; valid formats: json, markdown"
            )))
        }
    };
    let spec = seed_spec(seed, SnowballMode::None);
    let (selected, visited) = resolve_seed_sets(&corpus, &spec).map_err(engine_error)?;
    let result = complementarity(&corpus, &selected, &visited).map_err(engine_error)?;
    emit(
        &render_venn(&result, format).map_err(CliError::domain)?,
        out,
    )
}

fn report_stats(stats: &ImportStats) {
    eprintln!(
        "imported: {} new, {} merged, {} stubs, {} edges",
        stats.new_papers, stats.merged, stats.stubs, stats.edges
    );
}

fn write_corpus(corpus: &Corpus, input: &Path, write_args: &WriteArgs) -> CliResult {
    let text = corpus_to_json(corpus);
    if write_args.in_place {
        replace(input, &text)
    } else {
        emit(&text, write_args.out.as_deref())
    }
}

fn cmd_ingest(cmd: IngestCommand) -> CliResult {
    match cmd {
        IngestCommand::Bibtex {
            corpus: path,
            citing,
            file,
            write,
        } => {
            let mut corpus = load(&path)?;
            let entries = parse_bibtex_bytes(&read(&file)?)
                .map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
            let stats = import_references(&mut corpus, &PaperId::new(citing), &entries)
                .map_err(CliError::domain)?;
            report_stats(&stats);
            write_corpus(&corpus, &path, &write)
        }
        IngestCommand::Citers {
            corpus: path,
            csv,
            no_stubs,
            resolve_titles,
            write,
        } => {
            let mut corpus = load(&path)?;
            let rows = parse_citer_csv(&read_text(&csv)?)
                .map_err(|e| CliError::input(format!("{}: {e}", csv.display())))?;
            let options = CiterOptions {
                create_stubs: !no_stubs,
                resolve_titles,
            };
            let stats = import_citers(&mut corpus, &rows, options).map_err(CliError::domain)?;
            report_stats(&stats);
            write_corpus(&corpus, &path, &write)
        }
        IngestCommand::Corpus { input, out } => {
            let corpus = open(&input)?;
            emit(&corpus_to_json(&corpus), out.as_deref())
        }
    }
}
