mod common;

use quiring::analytics::featurize;
use quiring::ingest::{
    clean_all, export_records, export_rows, load_catalogue, load_csv, DropReason, EditionRecord,
};
use quiring::Alphabet;
use rusqlite::Connection;

pub fn fixture_db() -> tempfile::TempPath {
    let path = tempfile::NamedTempFile::new().unwrap().into_temp_path();
    Connection::open(&path)
        .unwrap()
        .execute_batch(&common::read_fixture("catalogue.sql"))
        .unwrap();
    path
}

#[test]
fn cleaning_fixture_keeps_26() {
    let loaded = load_catalogue(fixture_db()).unwrap();
    let report = &loaded.report;
    assert_eq!(report.kept, 26);
    assert_eq!(loaded.records.len(), 26);
    assert_eq!(report.examined(), 30);
    for reason in [
        DropReason::EmptyFormat,
        DropReason::DashFormat,
        DropReason::TrailingHash,
        DropReason::VolumesPlaceholder,
    ] {
        assert_eq!(report.count(reason), 1, "{reason}");
    }
    assert_eq!(report.count(DropReason::EmptyCollation), 0);
    assert!(report.row_errors.is_empty());
}

#[test]
fn unparseable_row_survives_cleaning_and_is_reported() {
    let loaded = load_catalogue(fixture_db()).unwrap();
    let (table, failures) = featurize(loaded.records, &Alphabet::default());
    assert_eq!(table.len(), 25);
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].identifier, "c:stcv:15");
    assert_eq!(failures[0].collation, ")(");
}

#[test]
fn catalogue_and_csv_agree() {
    let loaded = load_catalogue(fixture_db()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("STCV_all.csv");
    export_records(&loaded.records, &path).unwrap();
    let from_csv = clean_all(load_csv(&path).unwrap());
    assert_eq!(from_csv.records, loaded.records);
    assert!(from_csv.report.dropped.is_empty());
}

#[test]
fn rows_round_trip_with_greek() {
    let loaded = load_catalogue(fixture_db()).unwrap();
    let (table, _) = featurize(loaded.records, &Alphabet::default());
    let (records, vectors) = (table.records(), table.vectors());
    assert!(records.iter().any(|r| r.collation.contains('π')));
    assert!(records.iter().any(|r| r.collation.contains('χ') || r.collation.contains('ᵡ')));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("STCV_all_quiring.csv");
    export_rows(&records, &vectors, &path).unwrap();
    assert_eq!(load_csv(&path).unwrap(), records);
    let bytes = std::fs::read(&path).unwrap();
    assert!(String::from_utf8(bytes).unwrap().contains("π² A-Z⁶"));
}

#[test]
fn odd_text_round_trips() {
    let record = |c: &str| EditionRecord {
        identifier: "c:1".into(),
        format: "folio".into(),
        collation: c.into(),
        year1: "1600".into(),
        year2: String::new(),
        place_code: String::new(),
        place_name: "Gent, \"stad\"".into(),
        publisher_code: String::new(),
        publisher_name: "line\nbreak".into(),
    };
    let records = vec![record("χ² <sup>π</sup>A⁴"), record("A,B^8"), record(" $\\pi$ ")];
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    export_records(&records, &path).unwrap();
    assert_eq!(load_csv(&path).unwrap(), records);
}

#[test]
fn golden_csv_loads() {
    let records = load_csv(common::fixture("golden_rows.csv")).unwrap();
    assert_eq!(records.len(), 11);
    assert!(records.iter().all(|r| r.identifier == "c:stcv:12840621" && r.format == "octavo"));
}
