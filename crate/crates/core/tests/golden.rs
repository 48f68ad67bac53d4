mod common;

use quiring::analytics::featurize;
use quiring::{extract_counts, extract_features, parse, Alphabet};

struct Golden {
    row: usize,
    flags: Vec<String>,
    reconstruction: Option<String>,
}

fn golden() -> Vec<Golden> {
    common::read_fixture("golden_flags.tsv")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|line| {
            let cells: Vec<&str> = line.split('\t').collect();
            Golden {
                row: cells[0].parse().unwrap(),
                flags: cells[1].split(',').map(String::from).collect(),
                reconstruction: Some(cells[2]).filter(|s| !s.is_empty()).map(String::from),
            }
        })
        .collect()
}

#[test]
fn displayed_rows_match_exactly() {
    let records = quiring::load_csv(common::fixture("golden_rows.csv")).unwrap();
    assert_eq!(records.len(), 11);
    let (table, failures) = featurize(records, &Alphabet::default());
    assert!(failures.is_empty());
    let mut checked = Vec::new();
    for g in golden().iter().filter(|g| g.reconstruction.is_none()) {
        let row = &table.rows[g.row];
        assert!(!parse(&row.record.collation).formula().unwrap().truncated());
        assert_eq!(row.vector.set_columns(), g.flags, "row {}: {}", g.row, row.record.collation);
        checked.push(g.row);
    }
    assert_eq!(checked, [0, 2, 7, 8, 10]);
}

#[test]
fn reconstructed_rows_reproduce_displayed_flags() {
    for g in golden() {
        if let Some(text) = &g.reconstruction {
            let f = parse(text).into_result().unwrap();
            assert_eq!(extract_features(&f).set_columns(), g.flags, "row {}", g.row);
        }
    }
}

#[test]
fn truncated_rows_are_marked() {
    let records = quiring::load_csv(common::fixture("golden_rows.csv")).unwrap();
    for g in golden() {
        let truncated = parse(&records[g.row].collation).formula().unwrap().truncated();
        assert_eq!(truncated, g.reconstruction.is_some(), "row {}", g.row);
    }
}

#[test]
fn worked_example_counts_gatherings() {
    let f = parse("A-F^4 G^2").into_result().unwrap();
    let counts = extract_counts(&f, &Alphabet::default()).unwrap();
    assert_eq!(counts.nonzero(), [("2", 1), ("4", 6)]);
    let unicode = parse("A-F⁴ G²").into_result().unwrap();
    assert_eq!(extract_counts(&unicode, &Alphabet::default()).unwrap(), counts);
}
