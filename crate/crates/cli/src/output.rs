use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// Rectangular table with a `# key = value` provenance block.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub provenance: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str], provenance: Vec<(String, String)>) -> Self {
        Table {
            provenance,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (k, v) in &self.provenance {
            writeln!(w, "# {k} = {v}")?;
        }
        let mut csv = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        csv.write_record(&self.columns)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(Cell::render))?;
        }
        csv.flush()
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_csv(table: &Table, path: Option<&Path>) -> CliResult<()> {
    let io_err = |e: io::Error| {
        let target = path.map_or("stdout".to_string(), |p| p.display().to_string());
        CliError::Io(format!("cannot write '{target}': {e}"))
    };
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            table.write_to(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            table.write_to(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
    }
}
