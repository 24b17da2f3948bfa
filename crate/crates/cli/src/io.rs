//! Point-set readers and writers.
//!
//! Packed layout: `"HKC1"`, `u32 n`, `u32 d` (little-endian), four zero
//! bytes, then `n` rows of `⌈d/8⌉` bytes each, most significant bit first.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use dimredkc::{Metric, PointSet};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const PACKED_MAGIC: &[u8; 4] = b"HKC1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Comma-separated reals, one point per line.
    Csv,
    /// One string of `0`/`1` characters per line.
    Bits,
    /// Packed bit matrix with a 16-byte header.
    Packed,
}

pub fn load_points(path: &Path, format: Format, metric: Metric) -> CliResult<PointSet> {
    let file = File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    match format {
        Format::Csv => read_csv(file, metric),
        Format::Bits => read_bits(BufReader::new(file), metric),
        Format::Packed => read_packed(BufReader::new(file), metric),
    }
}

fn finish(rows: Vec<Vec<f64>>, metric: Metric) -> CliResult<PointSet> {
    if rows.is_empty() {
        return Err(CliError::Data("no points in input".into()));
    }
    match metric {
        Metric::Euclidean => Ok(PointSet::from_rows(&rows, metric)?),
        Metric::Hamming => {
            let bits = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .map(|&v| match v {
                            0.0 => Ok(false),
                            1.0 => Ok(true),
                            _ => Err(CliError::Data(format!(
                                "row {}: non-binary value {v}",
                                i + 1
                            ))),
                        })
                        .collect()
                })
                .collect::<CliResult<Vec<Vec<bool>>>>()?;
            Ok(PointSet::from_bit_rows(&bits)?)
        }
    }
}

fn check_width(row: usize, width: usize, expected: &mut Option<usize>) -> CliResult<()> {
    match *expected {
        None if width == 0 => Err(CliError::Data(format!("row {row}: empty row"))),
        None => {
            *expected = Some(width);
            Ok(())
        }
        Some(d) if d != width => Err(CliError::Data(format!(
            "row {row}: expected {d} values, found {width}"
        ))),
        Some(_) => Ok(()),
    }
}

pub fn read_csv<R: Read>(reader: R, metric: Metric) -> CliResult<PointSet> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    let mut width = None;
    for (i, record) in csv.records().enumerate() {
        let record = record.map_err(|e| CliError::Data(format!("row {}: {e}", i + 1)))?;
        let row = record
            .iter()
            .map(|field| {
                field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        CliError::Data(format!("row {}: malformed value {field:?}", i + 1))
                    })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        check_width(i + 1, row.len(), &mut width)?;
        rows.push(row);
    }
    finish(rows, metric)
}

pub fn read_bits<R: BufRead>(reader: R, metric: Metric) -> CliResult<PointSet> {
    let mut rows = Vec::new();
    let mut width = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .chars()
            .map(|c| match c {
                '0' => Ok(0.0),
                '1' => Ok(1.0),
                _ => Err(CliError::Data(format!(
                    "row {}: non-binary character {c:?}",
                    i + 1
                ))),
            })
            .collect::<CliResult<Vec<f64>>>()?;
        check_width(i + 1, row.len(), &mut width)?;
        rows.push(row);
    }
    finish(rows, metric)
}

pub fn read_packed<R: Read>(mut reader: R, metric: Metric) -> CliResult<PointSet> {
    let mut header = [0u8; 16];
    reader
        .read_exact(&mut header)
        .map_err(|_| CliError::Data("truncated header".into()))?;
    if &header[..4] != PACKED_MAGIC {
        return Err(CliError::Data("bad magic, expected HKC1".into()));
    }
    let n = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
    let d = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
    if n == 0 || d == 0 {
        return Err(CliError::Data(format!("empty matrix n={n} d={d}")));
    }
    let stride = d.div_ceil(8);
    let mut buf = vec![0u8; stride];
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        reader
            .read_exact(&mut buf)
            .map_err(|_| CliError::Data(format!("row {}: truncated", i + 1)))?;
        rows.push(
            (0..d)
                .map(|j| (buf[j / 8] >> (7 - j % 8)) & 1 == 1)
                .collect::<Vec<bool>>(),
        );
    }
    let mut rest = Vec::new();
    reader.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(CliError::Data(format!(
            "{} trailing bytes after {n} rows",
            rest.len()
        )));
    }
    match metric {
        Metric::Hamming => Ok(PointSet::from_bit_rows(&rows)?),
        Metric::Euclidean => {
            let rows: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| r.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
                .collect();
            Ok(PointSet::from_rows(&rows, metric)?)
        }
    }
}

pub fn write_packed<W: Write>(writer: W, points: &PointSet) -> CliResult<()> {
    let (n, d) = (points.len(), points.dim());
    let mut out = BufWriter::new(writer);
    out.write_all(PACKED_MAGIC)?;
    out.write_all(&(n as u32).to_le_bytes())?;
    out.write_all(&(d as u32).to_le_bytes())?;
    out.write_all(&[0u8; 4])?;
    let mut buf = vec![0u8; d.div_ceil(8)];
    for i in 0..n {
        buf.fill(0);
        for j in 0..d {
            match points.coord(i, j) {
                0.0 => {}
                1.0 => buf[j / 8] |= 0x80 >> (j % 8),
                v => {
                    return Err(CliError::Data(format!(
                        "row {}: non-binary value {v}",
                        i + 1
                    )))
                }
            }
        }
        out.write_all(&buf)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv<W: Write>(writer: W, points: &PointSet) -> CliResult<()> {
    let mut out = csv::Writer::from_writer(writer);
    for i in 0..points.len() {
        out.write_record(points.row_vec(i).iter().map(|v| v.to_string()))
            .map_err(anyhow::Error::from)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_bits<W: Write>(writer: W, points: &PointSet) -> CliResult<()> {
    let mut out = BufWriter::new(writer);
    for i in 0..points.len() {
        let line: String = points
            .row_vec(i)
            .iter()
            .map(|&v| if v == 1.0 { '1' } else { '0' })
            .collect();
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_csv_point() {
        let p = read_csv("0,0\n".as_bytes(), Metric::Euclidean).unwrap();
        assert_eq!((p.len(), p.dim()), (1, 2));
    }

    #[test]
    fn bit_rows_round_trip() {
        let p = read_bits("0101\n0011\n".as_bytes(), Metric::Hamming).unwrap();
        assert_eq!((p.len(), p.dim()), (2, 4));
        assert_eq!(p.dist(0, 1), 2.0);
        let mut out = Vec::new();
        write_bits(&mut out, &p).unwrap();
        assert_eq!(out, b"0101\n0011\n");
    }

    #[test]
    fn packed_round_trip() {
        let p = dimredkc::synth::binary(7, 19, 3);
        let mut bytes = Vec::new();
        write_packed(&mut bytes, &p).unwrap();
        assert_eq!(bytes.len(), 16 + 7 * 3);
        assert_eq!(&bytes[..4], b"HKC1");
        let q = read_packed(bytes.as_slice(), Metric::Hamming).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn packed_bit_order_is_msb_first() {
        let mut bytes = b"HKC1".to_vec();
        bytes.extend(1u32.to_le_bytes());
        bytes.extend(10u32.to_le_bytes());
        bytes.extend([0u8; 4]);
        bytes.extend([0b1000_0001, 0b0100_0000]);
        let p = read_packed(bytes.as_slice(), Metric::Hamming).unwrap();
        let ones: Vec<usize> = (0..10).filter(|&j| p.coord(0, j) == 1.0).collect();
        assert_eq!(ones, vec![0, 7, 9]);
    }

    #[test]
    fn errors_name_the_row() {
        let e = read_csv("1,2\n3\n".as_bytes(), Metric::Euclidean).unwrap_err();
        assert!(e.to_string().contains("row 2"), "{e}");
        let e = read_csv("1,2\n3,x\n".as_bytes(), Metric::Euclidean).unwrap_err();
        assert!(e.to_string().contains("row 2"), "{e}");
        let e = read_csv("0,1\n2,0\n".as_bytes(), Metric::Hamming).unwrap_err();
        assert!(e.to_string().contains("row 2"), "{e}");
        let e = read_bits("01\n0a\n".as_bytes(), Metric::Hamming).unwrap_err();
        assert!(e.to_string().contains("row 2"), "{e}");
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn truncated_packed_is_rejected() {
        let p = dimredkc::synth::binary(3, 9, 1);
        let mut bytes = Vec::new();
        write_packed(&mut bytes, &p).unwrap();
        bytes.pop();
        assert!(read_packed(bytes.as_slice(), Metric::Hamming).is_err());
        bytes[0] = b'X';
        assert!(read_packed(bytes.as_slice(), Metric::Hamming).is_err());
    }
}
