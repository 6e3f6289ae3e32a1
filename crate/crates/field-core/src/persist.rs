//! Binary field files: `BLAB1`, `N: u32`, `S: f64`, tag length `u32`, tag
//! bytes, then `N²` pairs `(re, im)` of `f64`, all little-endian, row-major.

use crate::{ComplexField, FieldError, Grid};
use num_complex::Complex64;
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: &[u8; 5] = b"BLAB1";

pub fn write_field<W: Write>(mut w: W, f: &ComplexField) -> Result<(), FieldError> {
    let g = f.grid();
    w.write_all(MAGIC)?;
    w.write_all(&(g.n() as u32).to_le_bytes())?;
    w.write_all(&g.s().to_le_bytes())?;
    let tag = f.tag().as_bytes();
    w.write_all(&(tag.len() as u32).to_le_bytes())?;
    w.write_all(tag)?;
    let mut buf = Vec::with_capacity(16 * g.len());
    for v in f.samples() {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn take<const L: usize>(r: &mut impl Read) -> Result<[u8; L], FieldError> {
    let mut b = [0u8; L];
    r.read_exact(&mut b).map_err(|e| FieldError::Malformed(e.to_string()))?;
    Ok(b)
}

pub fn read_field<R: Read>(mut r: R) -> Result<ComplexField, FieldError> {
    if &take::<5>(&mut r)? != MAGIC {
        return Err(FieldError::BadMagic);
    }
    let n = u32::from_le_bytes(take::<4>(&mut r)?) as usize;
    let s = f64::from_le_bytes(take::<8>(&mut r)?);
    let grid = Grid::new(n, s)?;
    let tag_len = u32::from_le_bytes(take::<4>(&mut r)?) as usize;
    if tag_len > 1 << 20 {
        return Err(FieldError::Malformed(format!("tag length {tag_len}")));
    }
    let mut tag = vec![0u8; tag_len];
    r.read_exact(&mut tag).map_err(|e| FieldError::Malformed(e.to_string()))?;
    let tag = String::from_utf8(tag).map_err(|e| FieldError::Malformed(e.to_string()))?;
    let mut raw = vec![0u8; 16 * grid.len()];
    r.read_exact(&mut raw).map_err(|e| FieldError::Malformed(e.to_string()))?;
    let data = raw
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..].try_into().unwrap()),
            )
        })
        .collect();
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(FieldError::Malformed("trailing bytes".into()));
    }
    ComplexField::from_vec(grid, data, tag)
}

pub fn save(path: &Path, f: &ComplexField) -> Result<(), FieldError> {
    let file = std::fs::File::create(path)?;
    write_field(std::io::BufWriter::new(file), f)
}

pub fn load(path: &Path) -> Result<ComplexField, FieldError> {
    read_field(std::io::BufReader::new(std::fs::File::open(path)?))
}
