use std::path::Path;

use rusqlite::types::ValueRef;
use rusqlite::{Connection, OpenFlags, Row};

use super::{clean_all, EditionRecord, IngestError, Loaded};

/// Joins every collation row with its edition's format and imprint.
///
/// The format comes from a per-identifier distinct subquery, so an edition
/// whose volumes carry different formats yields one row per (volume, format)
/// pair, as the original extraction did. Cleaning predicates are applied
/// afterwards in Rust so each dropped row can be reported.
pub const CATALOGUE_QUERY: &str = "\
select distinct collation.cloi, format, collation.collation_ka, \
impressum.impressum_ju1sv, impressum.impressum_ju2sv, impressum.impressum_pc, \
impressum.impressum_pl, impressum.impressum_uc, impressum.impressum_ug \
from collation \
join (select distinct collation.cloi as id, collation.collation_fm as format from collation) \
on id = collation.cloi \
join impressum on impressum.cloi = collation.cloi";

const REQUIRED: [(&str, &[&str]); 2] = [
    ("collation", &["cloi", "collation_ka", "collation_fm"]),
    (
        "impressum",
        &[
            "cloi",
            "impressum_ju1sv",
            "impressum_ju2sv",
            "impressum_pc",
            "impressum_pl",
            "impressum_uc",
            "impressum_ug",
        ],
    ),
];

/// Reads and cleans catalogue rows from an SQLite file.
///
/// Rows whose cells cannot be decoded as text are reported in
/// `report.row_errors` and skipped; they never abort the load.
pub fn load_catalogue(path: impl AsRef<Path>) -> Result<Loaded, IngestError> {
    let path = path.as_ref();
    let unreadable = |e: rusqlite::Error| IngestError::FileUnreadable {
        path: path.to_path_buf(),
        source: Box::new(e),
    };
    if !path.is_file() {
        return Err(IngestError::FileUnreadable {
            path: path.to_path_buf(),
            source: "no such file".into(),
        });
    }
    let conn = Connection::open_with_flags(path, OpenFlags::SQLITE_OPEN_READ_ONLY).map_err(unreadable)?;
    check_schema(&conn).map_err(|e| match e {
        SchemaProblem::Sql(e) => unreadable(e),
        SchemaProblem::Missing(m) => IngestError::SchemaMismatch(m),
    })?;

    let mut stmt = conn.prepare(CATALOGUE_QUERY).map_err(unreadable)?;
    let mut rows = stmt.query([]).map_err(unreadable)?;
    let mut records = Vec::new();
    let mut row_errors = Vec::new();
    while let Some(row) = rows.next().map_err(unreadable)? {
        match read_record(row) {
            Ok(r) => records.push(r),
            Err(e) => row_errors.push(format!("Error: {e}")),
        }
    }
    let mut loaded = clean_all(records);
    loaded.report.row_errors = row_errors;
    Ok(loaded)
}

enum SchemaProblem {
    Sql(rusqlite::Error),
    Missing(String),
}

fn check_schema(conn: &Connection) -> Result<(), SchemaProblem> {
    for (table, columns) in REQUIRED {
        let mut stmt = conn
            .prepare(&format!("PRAGMA table_info({table})"))
            .map_err(SchemaProblem::Sql)?;
        let present: Vec<String> = stmt
            .query_map([], |row| row.get::<_, String>(1))
            .map_err(SchemaProblem::Sql)?
            .collect::<Result<_, _>>()
            .map_err(SchemaProblem::Sql)?;
        if present.is_empty() {
            return Err(SchemaProblem::Missing(format!("table `{table}` is missing")));
        }
        for column in columns {
            if !present.iter().any(|p| p == column) {
                return Err(SchemaProblem::Missing(format!("column `{table}.{column}` is missing")));
            }
        }
    }
    Ok(())
}

fn cell_text(row: &Row, i: usize) -> Result<String, String> {
    let value = row.get_ref(i).map_err(|e| e.to_string())?;
    Ok(match value {
        ValueRef::Null => String::new(),
        ValueRef::Integer(n) => n.to_string(),
        ValueRef::Real(x) => x.to_string(),
        ValueRef::Text(bytes) | ValueRef::Blob(bytes) => String::from_utf8(bytes.to_vec())
            .map_err(|_| format!("column {i} is not valid UTF-8: {:?}", String::from_utf8_lossy(bytes)))?,
    })
}

fn read_record(row: &Row) -> Result<EditionRecord, String> {
    let mut fields: [String; 9] = Default::default();
    for (i, field) in fields.iter_mut().enumerate() {
        *field = cell_text(row, i)?;
    }
    Ok(EditionRecord::from_fields(fields))
}
