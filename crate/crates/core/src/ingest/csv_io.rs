use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use super::{EditionRecord, IngestError, RECORD_COLUMNS};
use crate::features::{QuiringVector, QUIRING_COLUMNS};

/// Records only.
pub const ALL_CSV: &str = "STCV_all.csv";
/// Feature vectors only.
pub const QUIRING_CSV: &str = "STCV_quiring.csv";
/// Records followed by their feature vectors.
pub const ALL_QUIRING_CSV: &str = "STCV_all_quiring.csv";

pub fn load_csv(path: impl AsRef<Path>) -> Result<Vec<EditionRecord>, IngestError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| IngestError::FileUnreadable {
        path: path.to_path_buf(),
        source: Box::new(e),
    })?;
    read_csv(io::BufReader::new(file))
}

/// Reads records from CSV with the nine record columns as header.
///
/// A leading unnamed index column (as written by dataframe exports) is
/// skipped, and the 34 feature columns may follow the record columns; their
/// values are ignored.
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<EditionRecord>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers().map_err(malformed)?.clone();
    let names: Vec<&str> = headers.iter().collect();
    let offset = usize::from(names.len() > RECORD_COLUMNS.len() && names[0].is_empty());
    let record_part = names.get(offset..offset + RECORD_COLUMNS.len());
    let rest = names.get(offset + RECORD_COLUMNS.len()..).unwrap_or_default();
    if record_part != Some(&RECORD_COLUMNS[..]) || !(rest.is_empty() || rest == QUIRING_COLUMNS) {
        return Err(IngestError::HeaderMismatch(names.join(",")));
    }

    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(malformed)?;
        let fields: [String; 9] = std::array::from_fn(|i| row[offset + i].to_string());
        out.push(EditionRecord::from_fields(fields));
    }
    Ok(out)
}

fn malformed(e: csv::Error) -> IngestError {
    let line = e.position().map_or(0, |p| p.line());
    IngestError::MalformedRow {
        line,
        message: e.to_string(),
    }
}

fn flags_as_text(v: &QuiringVector) -> impl Iterator<Item = String> + '_ {
    v.flags().iter().map(u8::to_string)
}

pub fn write_records<W: Write>(writer: W, records: &[EditionRecord]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(RECORD_COLUMNS)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_vectors<W: Write>(writer: W, vectors: &[QuiringVector]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(QUIRING_COLUMNS)?;
    for v in vectors {
        w.write_record(flags_as_text(v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_rows<W: Write>(
    writer: W,
    records: &[EditionRecord],
    vectors: &[QuiringVector],
) -> Result<(), IngestError> {
    if records.len() != vectors.len() {
        return Err(IngestError::Misaligned {
            records: records.len(),
            vectors: vectors.len(),
        });
    }
    let write = || -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(RECORD_COLUMNS.iter().chain(QUIRING_COLUMNS.iter()))?;
        for (r, v) in records.iter().zip(vectors) {
            let cells = r.fields().into_iter().map(str::to_string).chain(flags_as_text(v));
            w.write_record(cells)?;
        }
        w.flush()?;
        Ok(())
    };
    write().map_err(|e| IngestError::WriteFailure {
        path: "<writer>".into(),
        source: Box::new(e),
    })
}

fn create(path: &Path) -> Result<io::BufWriter<File>, IngestError> {
    File::create(path)
        .map(io::BufWriter::new)
        .map_err(|e| IngestError::WriteFailure {
            path: path.to_path_buf(),
            source: Box::new(e),
        })
}

fn write_failure(path: &Path) -> impl FnOnce(csv::Error) -> IngestError + '_ {
    |e| IngestError::WriteFailure {
        path: path.to_path_buf(),
        source: Box::new(e),
    }
}

/// Writes the `STCV_all.csv` shape.
pub fn export_records(records: &[EditionRecord], path: impl AsRef<Path>) -> Result<(), IngestError> {
    let path = path.as_ref();
    write_records(create(path)?, records).map_err(write_failure(path))
}

/// Writes the `STCV_quiring.csv` shape.
pub fn export_vectors(vectors: &[QuiringVector], path: impl AsRef<Path>) -> Result<(), IngestError> {
    let path = path.as_ref();
    write_vectors(create(path)?, vectors).map_err(write_failure(path))
}

/// Writes the `STCV_all_quiring.csv` shape: nine record columns, then 34
/// feature columns.
pub fn export_rows(
    records: &[EditionRecord],
    vectors: &[QuiringVector],
    path: impl AsRef<Path>,
) -> Result<(), IngestError> {
    let path = path.as_ref();
    write_rows(create(path)?, records, vectors).map_err(|e| match e {
        IngestError::WriteFailure { source, .. } => IngestError::WriteFailure {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}
