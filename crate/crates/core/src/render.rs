//! Grid output: binary PPM/PGM images and CSV tables.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::coarse::Grid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImageFormat {
    /// Blue (zero) to red (maximum), P6.
    #[default]
    Ppm,
    /// Grayscale, P5.
    Pgm,
    /// Raw values only.
    Csv,
}

impl std::str::FromStr for ImageFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ppm" => Ok(ImageFormat::Ppm),
            "pgm" => Ok(ImageFormat::Pgm),
            "csv" => Ok(ImageFormat::Csv),
            other => Err(Error::argument(format!("unknown image format `{other}`"))),
        }
    }
}

/// Linear blue→red palette on `t ∈ [0, 1]`.
pub fn palette(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    let red = (255.0 * t).round() as u8;
    [red, 0, 255 - red]
}

fn scaled(grid: &Grid) -> impl Iterator<Item = f64> + '_ {
    let max = grid.max();
    grid.values()
        .iter()
        .map(move |&v| if max > 0.0 { v / max } else { 0.0 })
}

pub fn encode_ppm(grid: &Grid) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", grid.cols(), grid.rows()).into_bytes();
    for t in scaled(grid) {
        out.extend_from_slice(&palette(t));
    }
    out
}

pub fn encode_pgm(grid: &Grid) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.cols(), grid.rows()).into_bytes();
    out.extend(scaled(grid).map(|t| (255.0 * t).round() as u8));
    out
}

pub fn write_grid_csv(grid: &Grid, path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(fs::File::create(path)?));
    let mut header = vec!["row".to_string()];
    header.extend((0..grid.cols()).map(|c| format!("col_{c}")));
    w.write_record(&header)?;
    for r in 0..grid.rows() {
        let mut record = vec![r.to_string()];
        record.extend(grid.row(r).iter().map(|v| v.to_string()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_grid_csv(path: impl AsRef<Path>) -> Result<Grid> {
    let mut reader = csv::Reader::from_path(path)?;
    let cols = reader.headers()?.len().saturating_sub(1);
    let mut values = Vec::new();
    let mut rows = 0;
    for record in reader.records() {
        let record = record?;
        for field in record.iter().skip(1) {
            values.push(
                field
                    .parse::<f64>()
                    .map_err(|e| Error::argument(format!("bad grid value `{field}`: {e}")))?,
            );
        }
        rows += 1;
    }
    Grid::new(rows, cols, values)
}

/// Writes the grid in `format` at `path`; image formats also get a CSV next to them.
/// Returns every file written.
pub fn render_grid(grid: &Grid, path: impl AsRef<Path>, format: ImageFormat) -> Result<Vec<PathBuf>> {
    if grid.is_empty() {
        return Err(Error::argument("cannot render an empty grid"));
    }
    let path = path.as_ref();
    let csv_path = path.with_extension("csv");
    let mut written = Vec::new();
    match format {
        ImageFormat::Ppm => {
            fs::File::create(path)?.write_all(&encode_ppm(grid))?;
            written.push(path.to_path_buf());
        }
        ImageFormat::Pgm => {
            fs::File::create(path)?.write_all(&encode_pgm(grid))?;
            written.push(path.to_path_buf());
        }
        ImageFormat::Csv => {}
    }
    write_grid_csv(grid, &csv_path)?;
    written.push(csv_path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_is_max_colour() {
        let g = Grid::new(1, 1, vec![0.3]).unwrap();
        let bytes = encode_ppm(&g);
        assert_eq!(&bytes[bytes.len() - 3..], &[255, 0, 0]);
        assert!(bytes.starts_with(b"P6\n1 1\n255\n"));
    }

    #[test]
    fn palette_red_monotone() {
        let mut last = 0;
        for i in 0..=1000 {
            let [r, _, _] = palette(i as f64 / 1000.0);
            assert!(r >= last);
            last = r;
        }
        assert_eq!(palette(0.0), [0, 0, 255]);
    }

    #[test]
    fn csv_round_trip() {
        let g = Grid::new(2, 3, vec![0.1, 0.2, 1.0 / 3.0, 0.0, 5e-9, 0.75]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let files = render_grid(&g, dir.path().join("g.ppm"), ImageFormat::Ppm).unwrap();
        assert_eq!(files.len(), 2);
        let back = read_grid_csv(dir.path().join("g.csv")).unwrap();
        assert_eq!((back.rows(), back.cols()), (2, 3));
        for (a, b) in back.values().iter().zip(g.values()) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn pgm_header() {
        let g = Grid::new(2, 2, vec![0.0, 1.0, 0.5, 0.25]).unwrap();
        let bytes = encode_pgm(&g);
        assert!(bytes.starts_with(b"P5\n2 2\n255\n"));
        assert_eq!(&bytes[bytes.len() - 4..], &[0, 255, 128, 64]);
    }

    #[test]
    fn empty_grid_rejected() {
        let g = Grid::new(0, 0, vec![]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(render_grid(&g, dir.path().join("e.ppm"), ImageFormat::Ppm).is_err());
    }
}
