//! Record sinks for CSV and JSON-lines output.

use std::io::Write;

use crate::config::{Format, Mode};
use crate::error::{Result, SweepError};
use crate::record::{columns, Record};

pub trait RecordSink {
    fn begin(&mut self, mode: Mode) -> Result<()>;
    fn write(&mut self, record: &Record) -> Result<()>;
    fn finish(&mut self) -> Result<()>;
}

/// Label used in I/O error messages (a file path or `<stdout>`).
fn io_err(label: &str) -> impl Fn(std::io::Error) -> SweepError + '_ {
    move |e| SweepError::io(label, e)
}

pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
    label: String,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W, label: impl Into<String>) -> Self {
        let writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(inner);
        Self {
            writer,
            label: label.into(),
        }
    }

    fn csv_err(&self, e: csv::Error) -> SweepError {
        let kind = std::io::ErrorKind::Other;
        match e.into_kind() {
            csv::ErrorKind::Io(io) => SweepError::io(&self.label, io),
            other => SweepError::io(&self.label, std::io::Error::new(kind, format!("{other:?}"))),
        }
    }

    pub fn into_inner(self) -> Option<W> {
        self.writer.into_inner().ok()
    }
}

impl<W: Write> RecordSink for CsvSink<W> {
    fn begin(&mut self, mode: Mode) -> Result<()> {
        self.writer
            .write_record(columns(mode))
            .map_err(|e| self.csv_err(e))
    }

    fn write(&mut self, record: &Record) -> Result<()> {
        self.writer
            .write_record(record.cells.iter().map(|c| c.to_csv()))
            .map_err(|e| self.csv_err(e))?;
        // Rows go out as they are produced so long sweeps can be watched.
        self.writer.flush().map_err(io_err(&self.label))
    }

    fn finish(&mut self) -> Result<()> {
        self.writer.flush().map_err(io_err(&self.label))
    }
}

pub struct JsonLinesSink<W: Write> {
    inner: W,
    label: String,
    columns: &'static [&'static str],
}

impl<W: Write> JsonLinesSink<W> {
    pub fn new(inner: W, label: impl Into<String>) -> Self {
        Self {
            inner,
            label: label.into(),
            columns: &[],
        }
    }

    pub fn into_inner(self) -> W {
        self.inner
    }
}

impl<W: Write> RecordSink for JsonLinesSink<W> {
    fn begin(&mut self, mode: Mode) -> Result<()> {
        self.columns = columns(mode);
        Ok(())
    }

    fn write(&mut self, record: &Record) -> Result<()> {
        let obj: serde_json::Map<String, serde_json::Value> = self
            .columns
            .iter()
            .zip(&record.cells)
            .map(|(k, c)| (k.to_string(), c.to_json()))
            .collect();
        let line = serde_json::to_string(&obj).expect("map of plain values serialises");
        writeln!(self.inner, "{line}").map_err(io_err(&self.label))?;
        self.inner.flush().map_err(io_err(&self.label))
    }

    fn finish(&mut self) -> Result<()> {
        self.inner.flush().map_err(io_err(&self.label))
    }
}

/// Boxed sink over any writer in the requested format.
pub fn sink_for<'w>(format: Format, inner: Box<dyn Write + 'w>, label: &str) -> Box<dyn RecordSink + 'w> {
    match format {
        Format::Csv => Box::new(CsvSink::new(inner, label)),
        Format::JsonLines => Box::new(JsonLinesSink::new(inner, label)),
    }
}
