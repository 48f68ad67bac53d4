use super::{
    filter, sum_features, AggregateTable, AnalyticsError, FeatureTable, FilterSpec, YearRange, FORMATS,
    STANDARD_FORMATS,
};

pub const FORMATS_CSV: &str = "STCV_formats_vs_quiring.csv";
pub const CENTURIES_CSV: &str = "STCV_centuries_vs_quiring.csv";
pub const EVOLUTION_CSV: &str = "STCV_evolution_vs_quiring.csv";

/// Century labels with their first year.
pub const CENTURIES: [(&str, i64); 4] = [("15th-c", 1400), ("16th-c", 1500), ("17th-c", 1600), ("18th-c", 1700)];

/// Years of the century starting at `start`. In compat mode the last year
/// (`xx99`) is left out, reproducing the published tables.
pub fn century_range(start: i64, compat: bool) -> YearRange {
    YearRange {
        lo: start,
        hi: start + if compat { 98 } else { 99 },
    }
}

fn sum_where(table: &FeatureTable, label: String, spec: &FilterSpec) -> Result<super::AggregateRow, AnalyticsError> {
    Ok(sum_features(&filter(table, spec)?).with_label(label))
}

/// One row per format, in [`FORMATS`] order.
pub fn pivot_formats(table: &FeatureTable) -> AggregateTable {
    let rows = FORMATS
        .iter()
        .map(|&f| sum_where(table, f.to_string(), &FilterSpec::default().format(f)))
        .collect::<Result<Vec<_>, _>>()
        .expect("canonical formats are valid");
    AggregateTable::new(rows).expect("format labels are unique")
}

/// One row per century, fifteenth to eighteenth.
pub fn pivot_centuries(table: &FeatureTable, compat: bool) -> AggregateTable {
    let rows = CENTURIES
        .iter()
        .map(|&(label, start)| {
            let spec = FilterSpec::default().years(century_range(start, compat));
            sum_where(table, label.to_string(), &spec)
        })
        .collect::<Result<Vec<_>, _>>()
        .expect("century ranges are valid");
    AggregateTable::new(rows).expect("century labels are unique")
}

/// One row per (standard format, century), formats outermost.
pub fn pivot_evolution(table: &FeatureTable, compat: bool) -> AggregateTable {
    let mut rows = Vec::new();
    for format in STANDARD_FORMATS {
        for (century, start) in CENTURIES {
            let spec = FilterSpec::default()
                .format(format)
                .years(century_range(start, compat));
            rows.push(sum_where(table, format!("{century} {format}"), &spec).expect("valid spec"));
        }
    }
    AggregateTable::new(rows).expect("evolution labels are unique")
}

#[cfg(test)]
mod tests {
    use super::super::tests::table;
    use super::*;

    #[test]
    fn formats_in_order() {
        let t = table(&[("a", "quarto", "1600", "A-D^4"), ("b", "folio", "1600", "A^6")]);
        let p = pivot_formats(&t);
        let labels: Vec<_> = p.rows().iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, FORMATS);
        assert_eq!(p.row("quarto").unwrap().get("4"), Some(1));
        assert_eq!(p.row("folio").unwrap().get("6"), Some(1));
        assert_eq!(p.row("plano").unwrap().max(), 0);
    }

    #[test]
    fn last_year_of_century() {
        let t = table(&[("a", "quarto", "1599", "A^4"), ("b", "quarto", "1500", "A^8")]);
        let compat = pivot_centuries(&t, true);
        let full = pivot_centuries(&t, false);
        assert_eq!(compat.row("16th-c").unwrap().nonzero(), [("8", 1)]);
        assert_eq!(full.row("16th-c").unwrap().nonzero(), [("4", 1), ("8", 1)]);
    }

    #[test]
    fn evolution_shape() {
        let t = table(&[("a", "octavo", "1787", "A^8")]);
        let p = pivot_evolution(&t, true);
        assert_eq!(p.len(), 16);
        assert_eq!(p.rows()[0].label, "15th-c folio");
        assert_eq!(p.rows()[15].label, "18th-c duodecimo");
        assert_eq!(p.row("18th-c octavo").unwrap().get("8"), Some(1));
        assert_eq!(p.total().get("8"), Some(1));
    }
}
