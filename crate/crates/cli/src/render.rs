//! Output plumbing shared by every subcommand: the format switch, the
//! stdout-or-file sink, and the generator-power display used when
//! printing field elements and matrices for human comparison.

use std::fs;
use std::path::PathBuf;

use anyhow::bail;
use hull_codes::field::FieldElement;
use hull_codes::matrix::MatrixGF;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub struct Sink {
    format: Format,
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(format: Format, out: Option<PathBuf>) -> Sink {
        Sink { format, out }
    }

    /// Writes the report in the selected format. JSON is serialized
    /// with fixed key order so identical configs give identical bytes.
    pub fn emit<T: serde::Serialize>(
        &self,
        value: &T,
        pretty: String,
        csv: Option<String>,
    ) -> anyhow::Result<()> {
        let text = match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(value)?;
                s.push('\n');
                s
            }
            Format::Pretty => {
                let mut s = pretty;
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Csv => match csv {
                Some(c) => c,
                None => bail!("csv output is only available for tabular commands"),
            },
        };
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

/// Shows an element the way the worked tables do: zero and
/// prime-subfield values as integers, everything else as a power of
/// the field generator. Falls back to the coefficient vector when the
/// field is too large to walk.
pub fn element_display(e: &FieldElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let rep = e.rep();
    if rep.iter().skip(1).all(|&c| c == 0) {
        return rep[0].to_string();
    }
    let field = e.field();
    if field.order() <= 1 << 16 {
        let beta = field.primitive_element();
        let mut acc = field.one();
        for k in 0..field.order() - 1 {
            if &acc == e {
                return format!("β^{k}");
            }
            acc = &acc * &beta;
        }
    }
    coeff_display(e)
}

/// The raw coefficient vector, constant term first.
pub fn coeff_display(e: &FieldElement) -> String {
    let parts: Vec<String> = e.rep().iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Column-aligned grid of a matrix under the given cell renderer.
pub fn matrix_display(m: &MatrixGF, cell: impl Fn(&FieldElement) -> String) -> String {
    let grid: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(&cell).collect())
        .collect();
    let width = grid
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    grid.iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|c| format!("{}{}", " ".repeat(width - c.chars().count()), c))
                .collect();
            format!("  {}", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
