//! Raw field dump format shared by all tools.
//!
//! Layout: one line of JSON (`{n, length, representation, real_tagged, name}`
//! terminated by `\n`), then little-endian `f64` data, row-major.  Real-tagged
//! fields store one value per grid point; complex fields store interleaved
//! `(re, im)` pairs.

use std::io::{self, BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{Repr, ScalarField};
use super::grid::Grid2D;

#[derive(Debug, Serialize, Deserialize)]
struct DumpHeader {
    n: usize,
    length: f64,
    representation: String,
    real_tagged: bool,
    name: String,
}

pub fn write_field<W: Write>(w: &mut W, field: &ScalarField, name: &str) -> io::Result<()> {
    let header = DumpHeader {
        n: field.grid().n(),
        length: field.grid().length(),
        representation: field.repr().as_str().to_string(),
        real_tagged: field.is_real_tagged(),
        name: name.to_string(),
    };
    serde_json::to_writer(&mut *w, &header)?;
    w.write_all(b"\n")?;
    for v in field.values() {
        w.write_all(&v.re.to_le_bytes())?;
        if !field.is_real_tagged() {
            w.write_all(&v.im.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_field<R: BufRead>(r: &mut R) -> io::Result<(ScalarField, String)> {
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header: DumpHeader = serde_json::from_str(line.trim_end())
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("bad header: {e}")))?;
    let grid = Grid2D::with_length(header.n, header.length)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.to_string()))?;
    let repr = match header.representation.as_str() {
        "physical" => Repr::Physical,
        "spectral" => Repr::Spectral,
        other => {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("unknown representation {other:?}"),
            ))
        }
    };
    let count = grid.size();
    let mut values = Vec::with_capacity(count);
    let mut buf = [0u8; 8];
    for _ in 0..count {
        r.read_exact(&mut buf)?;
        let re = f64::from_le_bytes(buf);
        let im = if header.real_tagged {
            0.0
        } else {
            r.read_exact(&mut buf)?;
            f64::from_le_bytes(buf)
        };
        values.push(Complex64::new(re, im));
    }
    let field = ScalarField::from_values(&grid, values, repr, header.real_tagged)
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.to_string()))?;
    Ok((field, header.name))
}
