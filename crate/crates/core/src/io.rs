//! CSV and PGM output.
//!
//! Floats are written in scientific notation with 17 significant digits, which
//! round-trips binary64 exactly. Missing values are written as `NA`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::antiwick::SimpleFunction;
use crate::error::{Error, Result};
use crate::experiments::{BreakingTimeRow, LocalizationReport, Raster, StretchReport};
use crate::geometry::CurveFamily;
use crate::lattice::{GridSize, LatticePermutation};

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), fmt_float)
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Writes a header and rows; an empty row list yields a header-only file.
pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_permutation_csv(path: &Path, perm: &LatticePermutation) -> Result<()> {
    let rows = perm
        .forward()
        .iter()
        .zip(perm.inverse())
        .enumerate()
        .map(|(i, (f, b))| vec![i.to_string(), f.to_string(), b.to_string()]);
    write_csv(path, &["i", "forward_i", "inverse_i"], rows)
}

pub fn write_observable_csv(path: &Path, grid: GridSize, values: &[f64]) -> Result<()> {
    let rows = values.iter().enumerate().map(|(i, &v)| {
        let l = grid.unflat(i);
        vec![
            i.to_string(),
            l.l1.to_string(),
            l.l2.to_string(),
            fmt_float(v),
        ]
    });
    write_csv(path, &["flat_index", "l1", "l2", "value"], rows)
}

pub fn write_simple_function_csv(path: &Path, s: &SimpleFunction) -> Result<()> {
    write_observable_csv(path, s.grid(), s.values())
}

pub fn write_breaking_csv(path: &Path, rows: &[BreakingTimeRow]) -> Result<()> {
    let rows = rows.iter().map(|r| {
        vec![
            r.alpha.clone(),
            r.n_grid.to_string(),
            r.j.to_string(),
            fmt_float(r.e_norm),
            fmt_float(r.budget),
            fmt_float(r.threshold),
            r.jstar.map_or_else(|| "NA".to_string(), |j| j.to_string()),
        ]
    });
    write_csv(
        path,
        &["alpha", "N", "j", "e_norm", "budget", "threshold", "jstar"],
        rows,
    )
}

pub fn write_localization_csv(
    path: &Path,
    alpha: &str,
    reports: &[LocalizationReport],
) -> Result<()> {
    let rows = reports.iter().map(|r| {
        vec![
            alpha.to_string(),
            r.n_grid.to_string(),
            r.n.to_string(),
            fmt_float(r.d0),
            fmt_float(r.beta),
            r.pairs_tested.to_string(),
            r.violations.to_string(),
        ]
    });
    write_csv(
        path,
        &["alpha", "N", "n", "d0", "beta", "pairs", "violations"],
        rows,
    )
}

/// One row per step, starting with the initial circle at `n = 0`.
pub fn write_stretch_csv(path: &Path, alpha: &str, report: &StretchReport) -> Result<()> {
    let first = vec![
        alpha.to_string(),
        "0".to_string(),
        fmt_float(report.initial_radius),
        fmt_float(report.v),
        fmt_float(report.v),
    ];
    let rest = report.entries.iter().map(|e| {
        vec![
            alpha.to_string(),
            e.n.to_string(),
            fmt_float(e.radius),
            fmt_opt(e.lambda_pred),
            fmt_float(e.eta_pred),
        ]
    });
    write_csv(
        path,
        &["alpha", "n", "radius", "lambda_pred", "eta_pred"],
        std::iter::once(first).chain(rest),
    )
}

pub fn write_curves_csv(path: &Path, curves: &[CurveFamily]) -> Result<()> {
    let rows = curves.iter().flat_map(|c| {
        c.segments().iter().enumerate().map(move |(k, s)| {
            vec![
                c.index().to_string(),
                k.to_string(),
                fmt_float(s.a[0]),
                fmt_float(s.a[1]),
                fmt_float(s.b[0]),
                fmt_float(s.b[1]),
            ]
        })
    });
    write_csv(path, &["p", "seg_id", "a1", "a2", "b1", "b2"], rows)
}

/// One line of the measure report.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureRow {
    pub set: String,
    pub n: i64,
    pub eps: f64,
    pub n_grid: Option<usize>,
    pub mean: f64,
    pub stderr: f64,
    pub bound: f64,
}

pub fn write_measure_csv(path: &Path, rows: &[MeasureRow]) -> Result<()> {
    let rows = rows.iter().map(|r| {
        vec![
            r.set.clone(),
            r.n.to_string(),
            fmt_float(r.eps),
            r.n_grid.map_or_else(|| "NA".to_string(), |n| n.to_string()),
            fmt_float(r.mean),
            fmt_float(r.stderr),
            fmt_float(r.bound),
        ]
    });
    write_csv(
        path,
        &["set", "n", "eps", "N", "mean", "stderr", "bound"],
        rows,
    )
}

/// Affine map of `[min, max]` onto `0..=255`, rounding half up. A constant raster
/// maps to 0.
pub fn raster_bytes(r: &Raster) -> Vec<u8> {
    let (lo, hi) = r.min_max();
    let span = hi - lo;
    r.data
        .iter()
        .map(|&v| {
            if span > 0.0 {
                ((v - lo) / span * 255.0 + 0.5).floor().clamp(0.0, 255.0) as u8
            } else {
                0
            }
        })
        .collect()
}

/// Path of the range sidecar of a PGM file: `<name>.range.txt`.
pub fn range_sidecar(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.range.txt"))
}

/// Binary PGM (P5, maxval 255) plus the min/max sidecar.
pub fn write_pgm(path: &Path, r: &Raster) -> Result<()> {
    let mut f = fs::File::create(path)?;
    write!(f, "P5\n{} {}\n255\n", r.size, r.size)?;
    f.write_all(&raster_bytes(r))?;
    let (lo, hi) = r.min_max();
    fs::write(
        range_sidecar(path),
        format!("min {}\nmax {}\n", fmt_float(lo), fmt_float(hi)),
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_csv() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.csv");
        write_breaking_csv(&p, &[]).unwrap();
        assert_eq!(
            fs::read_to_string(&p).unwrap(),
            "alpha,N,j,e_norm,budget,threshold,jstar\n"
        );
    }

    #[test]
    fn pgm_rounding() {
        let r = Raster {
            size: 2,
            data: vec![0.0, 0.5, 0.5, 1.0],
        };
        assert_eq!(raster_bytes(&r), vec![0, 128, 128, 255]);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("img.pgm");
        write_pgm(&p, &r).unwrap();
        let bytes = fs::read(&p).unwrap();
        assert_eq!(&bytes[..11], b"P5\n2 2\n255\n");
        assert_eq!(&bytes[11..], &[0, 128, 128, 255]);
        let side = fs::read_to_string(dir.path().join("img.range.txt")).unwrap();
        assert!(side.starts_with("min 0.0000000000000000e0\nmax 1.0000000000000000e0"));
    }

    #[test]
    fn constant_raster_is_black() {
        let r = Raster {
            size: 1,
            data: vec![3.0],
        };
        assert_eq!(raster_bytes(&r), vec![0]);
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
    }
}
