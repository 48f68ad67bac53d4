use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiring::analytics::YearRange;

#[derive(Debug, Parser)]
#[command(name = "quiring", version, about = "Quiring practices from catalogue collation formulas")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Catalogue database (SQLite).
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "csv")]
    pub db: Option<PathBuf>,
    /// Record CSV as written by `ingest`.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Reproduce the published year ranges (centuries end at xx98).
    #[arg(long, global = true)]
    pub paper_compat: bool,
    /// Signature alphabet file (letters in order, whitespace ignored).
    #[arg(long, global = true, value_name = "FILE")]
    pub alphabet: Option<PathBuf>,
    /// Write a JSON run summary.
    #[arg(long, global = true, value_name = "PATH")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and clean records; write STCV_all.csv.
    Ingest,
    /// Featurize records; write STCV_quiring.csv and STCV_all_quiring.csv.
    Features,
    /// Column sums over a filtered subset, printed as CSV.
    Sum(FilterArgs),
    /// Pivot table by format, century or both; written as CSV.
    Pivot(PivotArgs),
    /// Bar chart of a filtered sum or stacked chart of a pivot, as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FilterArgs {
    /// Bibliographic format, e.g. quarto.
    #[arg(long)]
    pub format: Option<String>,
    /// Inclusive range of year1, e.g. 1500:1599.
    #[arg(long, value_name = "LO:HI", value_parser = parse_years)]
    pub years: Option<YearRange>,
    /// Place-code file, or a built-in set name (antwerp).
    #[arg(long, value_name = "FILE")]
    pub place_set: Option<String>,
    /// Count each edition once per column.
    #[arg(long)]
    pub per_edition: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PivotBy {
    Formats,
    Centuries,
    Evolution,
}

#[derive(Debug, Args)]
pub struct PivotArgs {
    #[arg(long, value_enum)]
    pub by: PivotBy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Bar,
    Stacked,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    /// Pivot to stack (stacked charts only).
    #[arg(long, value_enum, default_value = "formats")]
    pub by: PivotBy,
    /// Chart title.
    #[arg(long)]
    pub title: Option<String>,
    /// Output file stem inside the output directory.
    #[arg(long)]
    pub name: Option<String>,
    #[command(flatten)]
    pub filter: FilterArgs,
}

fn parse_years(text: &str) -> Result<YearRange, String> {
    let (lo, hi) = text.split_once(':').ok_or("expected LO:HI")?;
    let year = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("`{s}`: {e}"));
    YearRange::new(year(lo)?, year(hi)?).map_err(|e| e.to_string())
}
