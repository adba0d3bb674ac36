//! Atomic artifact writes and the results CSV format.

use exrec_core::montecarlo::FailureEstimate;
use exrec_core::{Error, Result};
use std::fs;
use std::io::Write;
use std::path::Path;

pub const RESULT_COLUMNS: [&str; 11] = ["code", "L", "R", "p0", "pmem", "trials", "failures", "p1", "stderr", "exhaustedCount", "seed"];

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Error::Resource(format!("{}: {e}", dir.display())))?;
    let name = path.file_name().ok_or_else(|| Error::Parse(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let res = (|| -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    res.map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Resource(format!("{}: {e}", path.display()))
    })
}

/// One results row; `code` is the ex-Rec label.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub code: String,
    pub l: usize,
    pub r: usize,
    pub est: FailureEstimate,
}

/// Metadata comment lines followed by the CSV header and rows.
pub fn results_csv(meta: &[String], rows: &[ResultRow]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for m in meta {
        writeln!(out, "# {m}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_COLUMNS).map_err(csv_err)?;
    for row in rows {
        let e = &row.est;
        w.write_record([
            row.code.clone(),
            row.l.to_string(),
            row.r.to_string(),
            e.p0.to_string(),
            e.pmem.to_string(),
            e.trials.to_string(),
            e.failures.to_string(),
            e.p1.to_string(),
            e.stderr.to_string(),
            e.exhausted.to_string(),
            e.seed.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Resource(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv: {e}"))
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let text = fs::read(path).map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?;
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_slice());
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.iter().collect::<Vec<_>>() != RESULT_COLUMNS {
        return Err(Error::Parse(format!("{}: unexpected columns {:?}", path.display(), header)));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let f = |i: usize| -> Result<f64> { crate::config::parse_num(RESULT_COLUMNS[i], &rec[i]) };
        let u = |i: usize| -> Result<u64> { crate::config::parse_num(RESULT_COLUMNS[i], &rec[i]) };
        let est = FailureEstimate::from_counts(f(3)?, f(4)?, u(5)?, u(6)?, u(9)?, u(10)?);
        rows.push(ResultRow { code: rec[0].to_string(), l: u(1)? as usize, r: u(2)? as usize, est });
    }
    Ok(rows)
}
