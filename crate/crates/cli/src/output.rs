use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

/// Delimited table writer over stdout or a file.
pub struct Table {
    inner: csv::Writer<Box<dyn Write>>,
}

impl Table {
    pub fn open(out: Option<&Path>, format: Format) -> io::Result<Self> {
        let sink: Box<dyn Write> = match out {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        };
        let delimiter = match format {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        };
        let inner = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(sink);
        Ok(Self { inner })
    }

    pub fn row<I, S>(&mut self, fields: I) -> csv::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.inner.flush()
    }
}
