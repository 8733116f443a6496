//! CSV files for sampled fields (`p,q,re,im`) and operator kernels (`q1,q2,re,im`).
//!
//! Rows are in storage order: first coordinate outer, second inner. Values
//! are written with 17 significant digits so a write/read cycle is lossless.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Axis, PhaseGrid, SampledField};

pub const FIELD_HEADER: [&str; 4] = ["p", "q", "re", "im"];
pub const KERNEL_HEADER: [&str; 4] = ["q1", "q2", "re", "im"];

/// Writes a row-major table over `a × b` with the given header.
pub(crate) fn write_table<W: Write>(
    writer: W,
    header: [&str; 4],
    a: &Axis,
    b: &Axis,
    values: &[Complex64],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header)?;
    for j in 0..a.len() {
        let x = a.sample(j);
        for k in 0..b.len() {
            let v = values[j * b.len() + k];
            w.write_record([
                format!("{x:.16e}"),
                format!("{:.16e}", b.sample(k)),
                format!("{:.16e}", v.re),
                format!("{:.16e}", v.im),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a row-major table and infers both uniform axes from its coordinates.
pub(crate) fn read_table<R: Read>(reader: R, header: [&str; 4]) -> Result<(Axis, Axis, Vec<Complex64>)> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let mut records = r.records();

    let first = match records.next() {
        None => return Err(Error::Parse { line: 1, message: "empty input".into() }),
        Some(rec) => rec?,
    };
    let got: Vec<&str> = first.iter().collect();
    if got != header {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`, got `{}`", header.join(","), got.join(",")),
        });
    }

    let mut coords = Vec::new();
    let mut values = Vec::new();
    for (i, rec) in records.enumerate() {
        let line = i + 2;
        let rec = rec?;
        if rec.len() != 4 {
            return Err(Error::Parse { line, message: format!("expected 4 columns, got {}", rec.len()) });
        }
        let mut nums = [0.0; 4];
        for (slot, field) in nums.iter_mut().zip(rec.iter()) {
            *slot = field.parse::<f64>().map_err(|e| Error::Parse { line, message: format!("`{field}`: {e}") })?;
        }
        if !nums.iter().all(|v| v.is_finite()) {
            return Err(Error::Parse { line, message: "non-finite number".into() });
        }
        coords.push((nums[0], nums[1], line));
        values.push(Complex64::new(nums[2], nums[3]));
    }
    if coords.is_empty() {
        return Err(Error::Parse { line: 2, message: "no data rows".into() });
    }

    // Inner coordinate cycles; its period is the inner axis length.
    let x0 = coords[0].0;
    let nb = coords.iter().take_while(|c| c.0 == x0).count();
    if coords.len() % nb != 0 {
        return Err(Error::Parse {
            line: coords.last().unwrap().2,
            message: format!("{} rows is not a multiple of the inner length {nb}", coords.len()),
        });
    }
    let na = coords.len() / nb;
    if na < 2 || nb < 2 {
        return Err(Error::Parse { line: 2, message: format!("need at least 2 samples per axis, got {na} x {nb}") });
    }
    let a = Axis::new(x0, coords[(na - 1) * nb].0, na)?;
    let b = Axis::new(coords[0].1, coords[nb - 1].1, nb)?;

    let tol = 1e-9;
    for (idx, &(x, y, line)) in coords.iter().enumerate() {
        let (j, k) = (idx / nb, idx % nb);
        let (ex, ey) = (a.sample(j), b.sample(k));
        if (x - ex).abs() > tol * a.step().max(1.0) || (y - ey).abs() > tol * b.step().max(1.0) {
            return Err(Error::Parse {
                line,
                message: format!("coordinates ({x}, {y}) break the uniform grid; expected ({ex}, {ey})"),
            });
        }
    }
    Ok((a, b, values))
}

pub fn write_field<W: Write>(writer: W, field: &SampledField) -> Result<()> {
    let g = field.grid();
    write_table(writer, FIELD_HEADER, &g.p, &g.q, field.values())
}

/// Reads a field CSV; the grid is inferred from the coordinate columns.
pub fn read_field<R: Read>(reader: R) -> Result<SampledField> {
    let (p, q, values) = read_table(reader, FIELD_HEADER)?;
    SampledField::new(PhaseGrid::new(p, q), values)
}

pub fn save_field(path: impl AsRef<Path>, field: &SampledField) -> Result<()> {
    write_field(File::create(path)?, field)
}

pub fn load_field(path: impl AsRef<Path>) -> Result<SampledField> {
    read_field(File::open(path)?)
}
