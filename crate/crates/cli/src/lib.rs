//! The `quiring` command line: ingest → featurize → filter → aggregate →
//! export, plus SVG charts.

pub mod args;
pub mod chart;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use quiring::analytics::{
    self, export_table, featurize, format_diagnostics, pivot_centuries, pivot_evolution, pivot_formats,
    summarize, write_table, AggregateTable, AnalyticsError, FeatureTable, FilterSpec, PlaceSet,
};
use quiring::ingest::{self, clean_all, CleanReport, IngestError};
use quiring::Alphabet;
use serde::Serialize;

use args::{Cli, Command, FilterArgs, Global, PivotBy, PlotKind};

/// Exit status for bad input files or data.
pub const EXIT_INPUT: i32 = 1;
/// Exit status for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AnalyticsError> for CliError {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::UnknownFormatName(_) | AnalyticsError::EmptyYearRange { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// Machine-readable account of a run.
#[derive(Debug, Default, Serialize)]
pub struct RunSummary {
    pub command: String,
    pub kept: usize,
    pub dropped: usize,
    pub dropped_by_reason: BTreeMap<String, usize>,
    pub header_rows: usize,
    pub row_errors: usize,
    pub parse_failed: usize,
    pub outputs: Vec<PathBuf>,
}

impl RunSummary {
    fn new(command: &str, report: &CleanReport) -> Self {
        let mut by_reason = BTreeMap::new();
        for (_, reason) in &report.dropped {
            *by_reason.entry(reason.to_string()).or_default() += 1;
        }
        Self {
            command: command.into(),
            kept: report.kept,
            dropped: report.dropped.len(),
            dropped_by_reason: by_reason,
            header_rows: report.header_rows,
            row_errors: report.row_errors.len(),
            ..Self::default()
        }
    }
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Session {
    table: FeatureTable,
    records: Vec<ingest::EditionRecord>,
    summary: RunSummary,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ingest => "ingest",
        Command::Features => "features",
        Command::Sum(_) => "sum",
        Command::Pivot(_) => "pivot",
        Command::Plot(_) => "plot",
    }
}

fn load(global: &Global, command: &str, err: &mut dyn Write) -> Result<Session, CliError> {
    let alphabet = match &global.alphabet {
        None => Alphabet::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read alphabet {}: {e}", path.display())))?;
            Alphabet::parse(&text).map_err(|e| CliError::Input(format!("alphabet {}: {e}", path.display())))?
        }
    };
    let loaded = match (&global.db, &global.csv) {
        (Some(db), _) => ingest::load_catalogue(db)?,
        (None, Some(csv)) => clean_all(ingest::load_csv(csv)?),
        (None, None) => return Err(CliError::Usage("one of --db or --csv is required".into())),
    };
    for line in &loaded.report.row_errors {
        let _ = writeln!(err, "{line}");
    }
    for (identifier, reason) in &loaded.report.dropped {
        let _ = writeln!(err, "dropped {identifier}: {reason}");
    }
    let mut summary = RunSummary::new(command, &loaded.report);
    let records = loaded.records;
    let (table, failures) = featurize(records.iter().cloned(), &alphabet);
    for f in &failures {
        let _ = writeln!(err, "parse failure: {f}");
    }
    for (format, n) in format_diagnostics(&table) {
        let _ = writeln!(err, "non-canonical format {format:?}: {n} rows");
    }
    summary.parse_failed = failures.len();
    Ok(Session {
        table,
        records,
        summary,
    })
}

fn filter_spec(args: &FilterArgs) -> Result<FilterSpec, CliError> {
    let mut spec = FilterSpec {
        format: args.format.clone(),
        years: args.years,
        places: None,
        per_edition: args.per_edition,
    };
    if let Some(name) = &args.place_set {
        let path = Path::new(name);
        spec.places = Some(if path.exists() {
            PlaceSet::load(path)?
        } else {
            PlaceSet::builtin(name)
                .ok_or_else(|| CliError::Input(format!("place set `{name}` is neither a file nor a built-in set")))?
        });
    }
    spec.validate()?;
    Ok(spec)
}

fn pivot(table: &FeatureTable, by: PivotBy, compat: bool) -> (AggregateTable, &'static str, &'static str) {
    match by {
        PivotBy::Formats => (pivot_formats(table), analytics::FORMATS_CSV, "Format vs quiring practices"),
        PivotBy::Centuries => (
            pivot_centuries(table, compat),
            analytics::CENTURIES_CSV,
            "15th, 16th, 17th, 18th Century vs quiring practices",
        ),
        PivotBy::Evolution => (
            pivot_evolution(table, compat),
            analytics::EVOLUTION_CSV,
            "15th, 16th, 17th, 18th folios, quartos, octavos and duodecimos",
        ),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn print_table(out: &mut dyn Write, table: &AggregateTable) -> Result<(), CliError> {
    write_table(out, table).map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let global = &cli.global;
    // usage problems are reported before any input is read
    let spec = match &cli.command {
        Command::Sum(f) => Some(filter_spec(f)?),
        Command::Plot(p) if p.kind == PlotKind::Bar => Some(filter_spec(&p.filter)?),
        _ => None,
    };
    let mut session = load(global, command_name(&cli.command), err)?;
    let dir = &global.out;
    let needs_dir = !matches!(cli.command, Command::Sum(_));
    if needs_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut outputs = Vec::new();
    match &cli.command {
        Command::Ingest => {
            let path = dir.join(ingest::ALL_CSV);
            ingest::export_records(&session.records, &path)?;
            outputs.push(path);
        }
        Command::Features => {
            let (records, vectors) = (session.table.records(), session.table.vectors());
            let path = dir.join(ingest::QUIRING_CSV);
            ingest::export_vectors(&vectors, &path)?;
            outputs.push(path);
            let path = dir.join(ingest::ALL_QUIRING_CSV);
            ingest::export_rows(&records, &vectors, &path)?;
            outputs.push(path);
        }
        Command::Sum(_) => {
            let row = summarize(&session.table, spec.as_ref().expect("sum has a spec"))?;
            print_table(out, &AggregateTable::new(vec![row]).expect("single row"))?;
        }
        Command::Pivot(p) => {
            let (table, file, _) = pivot(&session.table, p.by, global.paper_compat);
            let path = dir.join(file);
            export_table(&table, &path)?;
            print_table(out, &table)?;
            outputs.push(path);
        }
        Command::Plot(p) => match p.kind {
            PlotKind::Bar => {
                let row = summarize(&session.table, spec.as_ref().expect("bar has a spec"))?;
                let title = p.title.as_deref().unwrap_or("General");
                let path = dir.join(format!("{}.svg", p.name.as_deref().unwrap_or("general")));
                write_file(&path, &chart::render_bar(&row, title))?;
                outputs.push(path);
            }
            PlotKind::Stacked => {
                let (table, file, default_title) = pivot(&session.table, p.by, global.paper_compat);
                let stem = p
                    .name
                    .clone()
                    .unwrap_or_else(|| file.trim_start_matches("STCV_").trim_end_matches(".csv").to_string());
                let title = p.title.as_deref().unwrap_or(default_title);
                let path = dir.join(format!("{stem}.svg"));
                write_file(&path, &chart::render_stacked(&table, title))?;
                outputs.push(path);
                let path = dir.join(format!("{stem}_legend.svg"));
                write_file(&path, &chart::render_legend("Legend"))?;
                outputs.push(path);
            }
        },
    }
    for path in &outputs {
        let _ = writeln!(err, "wrote {}", path.display());
    }
    session.summary.outputs = outputs;
    if let Some(path) = &global.summary {
        let json = serde_json::to_string_pretty(&session.summary).expect("summary serializes");
        write_file(path, &(json + "\n"))?;
    }
    Ok(())
}
