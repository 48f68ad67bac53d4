mod common;

use common::{fixture, fixture_db, run, s};

fn csv_row<'a>(out: &'a str, label: &str) -> Vec<&'a str> {
    let line = out
        .lines()
        .find(|l| l.split(',').next() == Some(label))
        .unwrap_or_else(|| panic!("no row {label} in {out}"));
    line.split(',').skip(1).collect()
}

fn column(out: &str, label: &str, name: &str) -> u64 {
    let header: Vec<&str> = out.lines().next().unwrap().split(',').skip(1).collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    csv_row(out, label)[i].parse().unwrap()
}

#[test]
fn usage_errors_exit_2() {
    let db = fixture_db();
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["--db", s(&db), "pivot", "--by", "decades"]).0, 2);
    assert_eq!(run(&["--db", s(&db), "sum", "--years", "1600"]).0, 2);
    assert_eq!(run(&["--db", s(&db), "sum", "--years", "1600:1500"]).0, 2);
    let (code, _, err) = run(&["--db", s(&db), "sum", "--format", "Quarto"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown format"), "{err}");
    let (code, _, err) = run(&["sum"]);
    assert_eq!(code, 2);
    assert!(err.contains("--db or --csv"), "{err}");
    assert_eq!(run(&["--db", "a", "--csv", "b", "sum"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("pivot"));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.sqlite");
    let (code, _, err) = run(&["--db", s(&missing), "sum"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(run(&["--csv", s(&dir.path().join("none.csv")), "sum"]).0, 1);
    let db = fixture_db();
    assert_eq!(run(&["--db", s(&db), "sum", "--place-set", "nowhere"]).0, 1);
    let alphabet = dir.path().join("alphabet.txt");
    std::fs::write(&alphabet, "AAB").unwrap();
    assert_eq!(run(&["--db", s(&db), "--alphabet", s(&alphabet), "sum"]).0, 1);
}

#[test]
fn pivot_on_empty_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    std::fs::write(
        &csv,
        "identifier,format,collation,year1,year2,place_code,place_name,publisher_code,publisher_name\n",
    )
    .unwrap();
    let (code, out, _) = run(&["--csv", s(&csv), "--out", s(dir.path()), "pivot", "--by", "formats"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[1..].iter().all(|l| l.split(',').skip(1).all(|c| c == "0")));
    let written = std::fs::read_to_string(dir.path().join("STCV_formats_vs_quiring.csv")).unwrap();
    assert_eq!(written, out);
}

#[test]
fn ingest_features_and_summary() {
    let db = fixture_db();
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.json");
    let out_dir = s(dir.path());
    let (code, _, err) = run(&["--db", s(&db), "--out", out_dir, "--summary", s(&summary), "features"]);
    assert_eq!(code, 0, "{err}");
    assert!(err.contains("parse failure: c:stcv:15"), "{err}");
    assert!(err.contains("dropped c:stcv:93: VolumesPlaceholder"), "{err}");
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(json["kept"], 26);
    assert_eq!(json["dropped"], 4);
    assert_eq!(json["parse_failed"], 1);
    assert_eq!(json["dropped_by_reason"]["DashFormat"], 1);
    let vectors = std::fs::read_to_string(dir.path().join("STCV_quiring.csv")).unwrap();
    assert_eq!(vectors.lines().count(), 26);
    let rows = std::fs::read_to_string(dir.path().join("STCV_all_quiring.csv")).unwrap();
    assert_eq!(rows.lines().next().unwrap().split(',').count(), 43);

    assert_eq!(run(&["--db", s(&db), "--out", out_dir, "ingest"]).0, 0);
    let all = quiring::load_csv(dir.path().join("STCV_all.csv")).unwrap();
    assert_eq!(all.len(), 26);
}

#[test]
fn sums_with_filters() {
    let db = fixture_db();
    let (code, out, _) = run(&["--db", s(&db), "sum", "--format", "quarto", "--place-set", "antwerp"]);
    assert_eq!(code, 0);
    // c:stcv:3, 4, 17, 20; c:stcv:15 does not parse
    assert_eq!(column(&out, "total", "4"), 4);
    assert_eq!(column(&out, "total", "8"), 1);
    assert_eq!(column(&out, "total", "6"), 1);

    let file = fixture("../../../../place-sets/antwerp.txt");
    let (_, via_file, _) = run(&["--db", s(&db), "sum", "--format", "quarto", "--place-set", s(&file)]);
    assert_eq!(via_file, out);

    // the 1499 folio counts only with full centuries
    let (_, full, _) = run(&["--db", s(&db), "sum", "--format", "folio", "--years", "1400:1499"]);
    assert_eq!(column(&full, "total", "4"), 1);
    let (_, compat, _) = run(&["--db", s(&db), "--paper-compat", "pivot", "--by", "centuries"]);
    assert_eq!(column(&compat, "15th-c", "4"), 0);
    let (_, default, _) = run(&["--db", s(&db), "pivot", "--by", "centuries"]);
    assert_eq!(column(&default, "15th-c", "4"), 1);
}

#[test]
fn per_edition_counts_editions_once() {
    let db = fixture_db();
    let (_, rows, _) = run(&["--db", s(&db), "sum", "--format", "octavo"]);
    let (_, editions, _) = run(&["--db", s(&db), "sum", "--format", "octavo", "--per-edition"]);
    // three volumes of c:stcv:12840621 use gatherings of 8
    assert_eq!(column(&rows, "total", "8") - column(&editions, "total", "8"), 2);
}

#[test]
fn evolution_has_its_own_file() {
    let db = fixture_db();
    let dir = tempfile::tempdir().unwrap();
    let out_dir = s(dir.path());
    assert_eq!(run(&["--db", s(&db), "--out", out_dir, "pivot", "--by", "centuries"]).0, 0);
    assert_eq!(run(&["--db", s(&db), "--out", out_dir, "pivot", "--by", "evolution"]).0, 0);
    let centuries = std::fs::read_to_string(dir.path().join("STCV_centuries_vs_quiring.csv")).unwrap();
    let evolution = std::fs::read_to_string(dir.path().join("STCV_evolution_vs_quiring.csv")).unwrap();
    assert_eq!(centuries.lines().count(), 5);
    assert_eq!(evolution.lines().count(), 17);
    assert!(evolution.contains("\n17th-c folio,"));
}

#[test]
fn plot_writes_svgs_and_leaves_inputs_alone() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    std::fs::copy(fixture("golden_rows.csv"), &csv).unwrap();
    let before = std::fs::read(&csv).unwrap();
    let out_dir = s(dir.path());
    assert_eq!(run(&["--csv", s(&csv), "--out", out_dir, "plot", "--kind", "bar"]).0, 0);
    let (code, _, err) = run(&["--csv", s(&csv), "--out", out_dir, "plot", "--kind", "stacked", "--by", "centuries"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(std::fs::read(&csv).unwrap(), before);
    for name in ["general.svg", "centuries_vs_quiring.svg", "centuries_vs_quiring_legend.svg"] {
        let svg = std::fs::read_to_string(dir.path().join(name)).unwrap();
        assert!(svg.starts_with("<?xml") && svg.contains(r#"version="1.1""#), "{name}");
    }
    let bar = std::fs::read_to_string(dir.path().join("general.svg")).unwrap();
    assert!(bar.contains("<title>8: 11</title>"));
}
