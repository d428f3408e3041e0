//! Binary cache file for coefficient tables.
//!
//! Layout, all multi-byte values little-endian:
//!
//! ```text
//! magic  4 bytes  "GRWL"
//! version u32     1
//! c       2×f64   re, im
//! N       u64
//! b_1..b_N N×2×f64 re, im in index order
//! ```
//!
//! A file holding `N'` coefficients serves any request for `N ≤ N'` by
//! prefix truncation. Writes go through a temp file and an atomic rename
//! so concurrent readers never observe a torn file.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::CoefficientTable;

pub const CACHE_MAGIC: [u8; 4] = *b"GRWL";
pub const CACHE_VERSION: u32 = 1;

/// Writes `table` to `path` atomically (temp file + rename).
pub fn write_table(table: &CoefficientTable, path: &Path) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(&CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&table.c.re.to_le_bytes())?;
        w.write_all(&table.c.im.to_le_bytes())?;
        w.write_all(&(table.order() as u64).to_le_bytes())?;
        for b in table.coefficients() {
            w.write_all(&b.re.to_le_bytes())?;
            w.write_all(&b.im.to_le_bytes())?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_header<R: Read>(r: &mut R) -> Result<(Complex64, u64)> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != CACHE_MAGIC {
        return Err(Error::CacheFormat(format!("bad magic {magic:?}")));
    }
    let version = read_u32(r)?;
    if version != CACHE_VERSION {
        return Err(Error::CacheFormat(format!("unsupported version {version}")));
    }
    let re = read_f64(r)?;
    let im = read_f64(r)?;
    let n = read_u64(r)?;
    Ok((Complex64::new(re, im), n))
}

/// Reads the header of a cache file without loading coefficients.
pub fn stored_header(path: &Path) -> Result<(Complex64, u64)> {
    let mut r = BufReader::new(File::open(path)?);
    read_header(&mut r)
}

/// Loads a table from `path`; with `want = Some(n)` only the first `n`
/// coefficients are read (prefix truncation).
pub fn read_table(path: &Path, want: Option<usize>) -> Result<CoefficientTable> {
    let mut r = BufReader::new(File::open(path)?);
    let (c, stored) = read_header(&mut r)?;
    let stored = usize::try_from(stored)
        .map_err(|_| Error::CacheFormat("coefficient count exceeds usize".into()))?;
    let n = match want {
        Some(n) if n > stored => {
            return Err(Error::InsufficientCoefficients {
                requested: n,
                available: stored,
            })
        }
        Some(n) => n,
        None => stored,
    };
    if n == 0 {
        return Err(Error::CacheFormat("cache file holds no coefficients".into()));
    }
    let mut b = Vec::with_capacity(n);
    for _ in 0..n {
        let re = read_f64(&mut r)?;
        let im = read_f64(&mut r)?;
        b.push(Complex64::new(re, im));
    }
    Ok(CoefficientTable::from_raw(c, b))
}
