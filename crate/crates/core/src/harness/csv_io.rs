use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::{SummaryRow, TrialRecord};
use crate::error::{Error, Result};

pub const TRIAL_HEADER: [&str; 12] = [
    "benchmark",
    "n",
    "k",
    "sigma2",
    "algorithm",
    "mu",
    "b",
    "U",
    "trial",
    "seed",
    "evaluations",
    "success",
];

pub const SUMMARY_HEADER: [&str; 13] = [
    "benchmark",
    "n",
    "k",
    "sigma2",
    "algorithm",
    "mu",
    "b",
    "U",
    "trials",
    "success_count",
    "median",
    "q1",
    "q3",
];

fn to_writer<W: Write, T: Serialize>(out: W, header: &[&str], rows: &[T]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn from_reader<R: Read, T: DeserializeOwned>(input: R, header: &[&str]) -> csv::Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    let found = r.headers()?.clone();
    if found.iter().ne(header.iter().copied()) {
        let msg = format!(
            "expected header `{}`, found `{}`",
            header.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        );
        return Err(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            msg,
        )));
    }
    r.deserialize().collect()
}

pub fn trials_to_writer<W: Write>(out: W, records: &[TrialRecord]) -> csv::Result<()> {
    to_writer(out, &TRIAL_HEADER, records)
}

pub fn trials_from_reader<R: Read>(input: R) -> csv::Result<Vec<TrialRecord>> {
    from_reader(input, &TRIAL_HEADER)
}

pub fn summary_to_writer<W: Write>(out: W, rows: &[SummaryRow]) -> csv::Result<()> {
    to_writer(out, &SUMMARY_HEADER, rows)
}

pub fn summary_from_reader<R: Read>(input: R) -> csv::Result<Vec<SummaryRow>> {
    from_reader(input, &SUMMARY_HEADER)
}

fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Write the trial CSV. The header is written even when `records` is empty.
pub fn write_trials_csv(path: impl AsRef<Path>, records: &[TrialRecord]) -> Result<()> {
    let path = path.as_ref();
    trials_to_writer(create(path)?, records).map_err(csv_err(path))
}

pub fn read_trials_csv(path: impl AsRef<Path>) -> Result<Vec<TrialRecord>> {
    let path = path.as_ref();
    trials_from_reader(open(path)?).map_err(csv_err(path))
}

pub fn write_summary_csv(path: impl AsRef<Path>, rows: &[SummaryRow]) -> Result<()> {
    let path = path.as_ref();
    summary_to_writer(create(path)?, rows).map_err(csv_err(path))
}

pub fn read_summary_csv(path: impl AsRef<Path>) -> Result<Vec<SummaryRow>> {
    let path = path.as_ref();
    summary_from_reader(open(path)?).map_err(csv_err(path))
}
