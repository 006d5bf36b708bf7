//! CSV or JSON report rows to standard output or a file.

use std::error::Error;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::Output;

pub fn write_rows<T: Serialize>(rows: &[T], output: Output, out: Option<&Path>) -> Result<(), Box<dyn Error>> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match output {
        Output::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Output::Json => {
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, rows)?;
            writeln!(sink)?;
            sink.flush()?;
        }
    }
    Ok(())
}
