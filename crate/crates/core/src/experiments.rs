//! Experiments comparing the continuous sawtooth dynamics with its lattice
//! discretization: breaking-time scans, dynamical localization, tracking of
//! trajectories, stretching of small balls and field comparisons.

use rand::Rng;
use rayon::prelude::*;

use crate::antiwick::{
    dediscretize, discretize, evolve_observable, koopman, l2_norm, op_norm2_series, QuadratureSpec,
    ScalarField, SimpleFunction,
};
use crate::circle::minimal_enclosing_circle;
use crate::error::{Error, Result};
use crate::geometry::{n_tilde, nm_threshold, tracking_bound, tracking_error_with, GoodSet};
use crate::lattice::{build_permutation, nearest_lattice_xy, Direction, GridSize, LatticeKernel};
use crate::sampling;
use crate::scalar::Scalar;
use crate::torus::{
    forward_xy, iterate_xy, spectral, torus_distance_xy, wrap_delta, Eigenvalues, SawtoothParams,
    TorusPoint,
};

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub alpha: Scalar,
    /// Form factor of the breaking-time budget `(1/γ) log N / log η`.
    pub gamma: f64,
    /// Form factor of the localization time budget `(1/β) log N / log η`.
    pub beta: f64,
    pub d0: f64,
    pub n_max: i64,
    pub grids: Vec<usize>,
    pub quadrature: QuadratureSpec,
    pub seed: u64,
    /// Fraction of `‖f‖₂` above which the discretization counts as broken.
    pub threshold: f64,
    pub x_samples: usize,
    pub y_samples: usize,
    /// Allows `γ ≤ 3` and `β ≤ 2`.
    pub exploratory: bool,
}

impl ExperimentConfig {
    pub fn new(alpha: Scalar) -> Self {
        ExperimentConfig {
            alpha,
            gamma: 3.5,
            beta: 2.5,
            d0: 0.1,
            n_max: 8,
            grids: vec![64, 256],
            quadrature: QuadratureSpec::default(),
            seed: 0,
            threshold: 0.5,
            x_samples: 10_000,
            y_samples: 1_000,
            exploratory: false,
        }
    }

    pub fn params(&self) -> SawtoothParams {
        spectral(self.alpha.clone())
    }

    pub fn validate(&self) -> Result<()> {
        if !self.exploratory && self.gamma <= 3.0 {
            return Err(Error::PreconditionUnsatisfiable(format!(
                "gamma = {} must exceed 3 (pass the exploratory flag to override)",
                self.gamma
            )));
        }
        if !self.exploratory && self.beta <= 2.0 {
            return Err(Error::PreconditionUnsatisfiable(format!(
                "beta = {} must exceed 2 (pass the exploratory flag to override)",
                self.beta
            )));
        }
        if !(self.gamma > 0.0 && self.beta > 0.0) {
            return Err(Error::InvalidArgument(
                "gamma and beta must be positive".into(),
            ));
        }
        if self.d0.is_nan() || self.d0 <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "d0 must be positive, got {}",
                self.d0
            )));
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

/// `(1/c) · log N / log η`.
pub fn time_budget(p: &SawtoothParams, grid: GridSize, c: f64) -> f64 {
    (grid.n() as f64).ln() / (c * p.eta().ln())
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationReport {
    pub n_grid: usize,
    pub n: i64,
    pub d0: f64,
    pub beta: f64,
    pub x_tested: usize,
    pub pairs_tested: u64,
    pub violations: u64,
    /// `(1/β) log N / log η`.
    pub n_bound: f64,
    /// Largest distance from `S^n x` to any point of the cell of `V^n(x̂)`, over the
    /// tested `x`. Below `d0` it rules out violations for every `y`, sampled or not.
    pub max_cell_reach: f64,
}

impl LocalizationReport {
    pub fn certified(&self) -> bool {
        self.max_cell_reach < self.d0
    }
}

/// Draws up to `wanted` points of the sampling stream lying in `keep`.
fn filtered_points(
    seed: u64,
    wanted: usize,
    keep: impl Fn([f64; 2]) -> bool,
) -> Result<Vec<[f64; 2]>> {
    let budget = wanted.saturating_mul(1000).max(1_000_000);
    let mut out = Vec::with_capacity(wanted);
    let mut chunk = 0;
    while out.len() < wanted {
        if chunk * sampling::CHUNK >= budget {
            return Err(Error::PreconditionUnsatisfiable(format!(
                "only {} of {budget} sampled points fall in the admissible set",
                out.len()
            )));
        }
        sampling::for_chunk(seed, chunk, budget, |x| {
            if out.len() < wanted && keep(x) {
                out.push(x);
            }
        });
        chunk += 1;
    }
    Ok(out)
}

/// Counts lattice-state overlaps between evolved `x` and far-away `y`.
///
/// `x` is drawn from `G_n^N(Ñ/2N)`; for each `x`, `y_samples` points `y` with
/// `d(S^n x, y) ≥ d0` are drawn and `δ(V^n(x̂), ŷ) = 1` counts as a violation.
pub fn localization_experiment(
    cfg: &ExperimentConfig,
    grid: GridSize,
    n: i64,
    x_samples: usize,
    y_samples: usize,
) -> Result<LocalizationReport> {
    cfg.validate()?;
    let p = cfg.params();
    let nf = grid.n() as f64;
    let n_bound = time_budget(&p, grid, cfg.beta);
    if n < 0 {
        return Err(Error::InvalidArgument(format!("n must be >= 0, got {n}")));
    }
    if n > 0 && (n as f64) >= n_bound {
        return Err(Error::PreconditionUnsatisfiable(format!(
            "n = {n} is not below the time budget {n_bound:.4} for N = {}",
            grid.n()
        )));
    }
    let threshold = if n == 0 {
        2f64.sqrt() / cfg.d0
    } else {
        nm_threshold(&p, n, cfg.d0)
    };
    if nf <= threshold {
        return Err(Error::PreconditionUnsatisfiable(format!(
            "N = {} does not exceed the localization threshold {threshold:.4} (n = {n}, d0 = {})",
            grid.n(),
            cfg.d0
        )));
    }

    let xs = if n == 0 {
        sampling::points(x_samples, cfg.seed)
    } else {
        let good = GoodSet::new(&p, grid, n, n_tilde(&p, n) / (2.0 * nf))?;
        filtered_points(cfg.seed, x_samples, |x| good.contains(x))?
    };

    let kernel = LatticeKernel::new(&p);
    let alpha = p.alpha_f64();
    let half_diag = 1.0 / (2f64.sqrt() * nf);
    let y_seed = cfg.seed ^ 0x5DEE_CE66_D1CE_4E5B;
    let per_x: Vec<Result<(u64, u64, f64)>> = xs
        .par_iter()
        .enumerate()
        .map(|(k, &x)| {
            let mut l = nearest_lattice_xy(grid, x);
            for _ in 0..n {
                l = kernel.step(&p, grid, l, Direction::Forward)?;
            }
            let sx = iterate_xy(alpha, x, n);
            let reach = torus_distance_xy(sx, grid.point_xy(l)) + half_diag;
            let mut rng = sampling::chunk_rng(y_seed, k as u64);
            let (mut pairs, mut violations) = (0u64, 0u64);
            let mut attempts = 0usize;
            while (pairs as usize) < y_samples {
                attempts += 1;
                if attempts > y_samples.saturating_mul(1000).max(1000) {
                    return Err(Error::PreconditionUnsatisfiable(format!(
                        "no points at distance >= {} from the evolved point",
                        cfg.d0
                    )));
                }
                let y = sampling::uniform_xy(&mut rng);
                if torus_distance_xy(sx, y) < cfg.d0 {
                    continue;
                }
                pairs += 1;
                violations += u64::from(nearest_lattice_xy(grid, y) == l);
            }
            Ok((pairs, violations, reach))
        })
        .collect();

    let mut report = LocalizationReport {
        n_grid: grid.n(),
        n,
        d0: cfg.d0,
        beta: cfg.beta,
        x_tested: xs.len(),
        pairs_tested: 0,
        violations: 0,
        n_bound,
        max_cell_reach: 0.0,
    };
    for r in per_x {
        let (pairs, violations, reach) = r?;
        report.pairs_tested += pairs;
        report.violations += violations;
        report.max_cell_reach = report.max_cell_reach.max(reach);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrackingSummary {
    pub n_grid: usize,
    pub n: i64,
    pub samples: usize,
    /// Largest `error_q / bound_q` over samples and `q = 0..=n`.
    pub max_ratio: f64,
    /// Largest ratio per `q`.
    pub max_ratio_by_step: Vec<f64>,
    pub violations: usize,
}

/// Checks `d(S^q x, V^q(x̂)/N) ≤ (√2/N)(η^{q+1}−1)/(η−1)` on points of
/// `G_n^N(Ñ/2N)`.
pub fn tracking_experiment(
    cfg: &ExperimentConfig,
    grid: GridSize,
    n: i64,
    samples: usize,
) -> Result<TrackingSummary> {
    cfg.validate()?;
    let p = cfg.params();
    let nf = grid.n() as f64;
    let nt = n_tilde(&p, n);
    if nf <= nt {
        return Err(Error::PreconditionUnsatisfiable(format!(
            "N = {} does not exceed Ñ = {nt:.4} for n = {n}",
            grid.n()
        )));
    }
    let xs = if n == 0 {
        sampling::points(samples, cfg.seed)
    } else {
        let good = GoodSet::new(&p, grid, n, nt / (2.0 * nf))?;
        filtered_points(cfg.seed, samples, |x| good.contains(x))?
    };
    tracking_on_points(&p, grid, n, &xs)
}

pub fn tracking_on_points(
    p: &SawtoothParams,
    grid: GridSize,
    n: i64,
    xs: &[[f64; 2]],
) -> Result<TrackingSummary> {
    let kernel = LatticeKernel::new(p);
    let bounds: Vec<f64> = (0..=n).map(|q| tracking_bound(p, grid, q)).collect();
    let rows: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| {
            tracking_error_with(&kernel, p, grid, x, n)
                .map(|e| e.iter().zip(&bounds).map(|(e, b)| e / b).collect())
        })
        .collect::<Result<_>>()?;
    let mut by_step = vec![0.0f64; n as usize + 1];
    let mut violations = 0;
    for r in &rows {
        for (m, &v) in by_step.iter_mut().zip(r) {
            *m = m.max(v);
        }
        violations += usize::from(r.iter().any(|&v| v > 1.0));
    }
    Ok(TrackingSummary {
        n_grid: grid.n(),
        n,
        samples: xs.len(),
        max_ratio: by_step.iter().copied().fold(0.0, f64::max),
        max_ratio_by_step: by_step,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BreakingTimeRow {
    pub alpha: String,
    pub n_grid: usize,
    pub j: usize,
    pub e_norm: f64,
    pub budget: f64,
    pub threshold: f64,
    /// First `j` whose error exceeds `threshold · ‖f‖₂` on this grid, if any.
    pub jstar: Option<usize>,
}

/// `op_norm2(f, N, j)` for every grid of the config and `j = 0..=jmax`.
pub fn breaking_time_scan(
    cfg: &ExperimentConfig,
    f: &ScalarField,
    jmax: usize,
) -> Result<Vec<BreakingTimeRow>> {
    cfg.validate()?;
    let p = cfg.params();
    let mut rows = Vec::new();
    for &n in &cfg.grids {
        let grid = GridSize::new(n)?;
        let perm = build_permutation(&p, grid)?;
        let series = op_norm2_series(f, &p, &perm, &cfg.quadrature, jmax);
        let norm = l2_norm(f, &cfg.quadrature, grid);
        let jstar = series.iter().position(|&e| e > cfg.threshold * norm);
        let budget = time_budget(&p, grid, cfg.gamma);
        rows.extend(
            series
                .into_iter()
                .enumerate()
                .map(|(j, e_norm)| BreakingTimeRow {
                    alpha: cfg.alpha.to_string(),
                    n_grid: n,
                    j,
                    e_norm,
                    budget,
                    threshold: cfg.threshold,
                    jstar,
                }),
        );
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchEntry {
    pub n: usize,
    pub radius: f64,
    /// `|λ|ⁿ v` in the hyperbolic regime.
    pub lambda_pred: Option<f64>,
    pub eta_pred: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchReport {
    pub center: TorusPoint,
    pub v: f64,
    /// Enclosing radius of the sampled initial circle (`n = 0`).
    pub initial_radius: f64,
    pub entries: Vec<StretchEntry>,
    /// First step at which the cloud no longer fits a single chart.
    pub wrapped_at: Option<usize>,
}

/// Evolves `boundary_samples` points of the circle of radius `v` about `center` and
/// records the minimal enclosing radius after each step.
pub fn ball_stretch(
    cfg: &ExperimentConfig,
    center: &TorusPoint,
    v: f64,
    n_max: usize,
    boundary_samples: usize,
) -> Result<StretchReport> {
    if !(v > 0.0 && v < 0.25) {
        return Err(Error::InvalidArgument(format!(
            "radius must lie in (0, 1/4), got {v}"
        )));
    }
    if boundary_samples < 3 {
        return Err(Error::InvalidArgument(
            "at least 3 boundary samples required".into(),
        ));
    }
    let p = cfg.params();
    let alpha = p.alpha_f64();
    let c = center.to_xy();
    let mut pts: Vec<[f64; 2]> = (0..boundary_samples)
        .map(|k| {
            let t = k as f64 * std::f64::consts::TAU / boundary_samples as f64;
            [c[0] + v * t.cos(), c[1] + v * t.sin()]
        })
        .collect();
    let enclose = |pts: &[[f64; 2]]| -> f64 {
        let o = pts[0];
        let lifted: Vec<[f64; 2]> = pts
            .iter()
            .map(|x| {
                [
                    o[0] + wrap_delta(x[0] - o[0]),
                    o[1] + wrap_delta(x[1] - o[1]),
                ]
            })
            .collect();
        minimal_enclosing_circle(&lifted, cfg.seed)
            .expect("nonempty cloud")
            .radius
    };
    let initial_radius = enclose(&pts);
    let lambda = match p.lambda() {
        Eigenvalues::Real { lambda, .. } => Some(lambda.abs()),
        _ => None,
    };
    let mut entries = Vec::with_capacity(n_max);
    let mut wrapped_at = None;
    for n in 1..=n_max {
        for x in pts.iter_mut() {
            *x = forward_xy(alpha, *x);
        }
        let radius = enclose(&pts);
        if 2.0 * radius >= 0.5 {
            wrapped_at = Some(n);
            break;
        }
        entries.push(StretchEntry {
            n,
            radius,
            lambda_pred: lambda.map(|l| l.powi(n as i32) * v),
            eta_pred: p.eta().powi(n as i32) * v,
        });
    }
    Ok(StretchReport {
        center: center.clone(),
        v,
        initial_radius,
        entries,
        wrapped_at,
    })
}

/// A square raster, row 0 at the top (`x2` close to 1), column 0 at `x1` close to 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub size: usize,
    pub data: Vec<f64>,
}

impl Raster {
    /// Samples `f` at pixel centres.
    pub fn sample(size: usize, f: impl Fn([f64; 2]) -> f64 + Sync) -> Raster {
        let data = (0..size * size)
            .into_par_iter()
            .map(|k| f(Raster::pixel_center(size, k / size, k % size)))
            .collect();
        Raster { size, data }
    }

    pub fn pixel_center(size: usize, row: usize, col: usize) -> [f64; 2] {
        let s = size as f64;
        [(col as f64 + 0.5) / s, 1.0 - (row as f64 + 0.5) / s]
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }
}

#[derive(Clone, Debug)]
pub struct FieldComparison {
    /// `f ∘ S^j` sampled at pixel centres.
    pub continuous: Raster,
    /// The discretely evolved simple function at pixel centres.
    pub discrete: Raster,
    /// `continuous − discrete`.
    pub difference: Raster,
    pub sandwich: SimpleFunction,
    pub e_norm: f64,
}

/// Rasters of the two evolutions of `f` and the `L²` norm of their difference.
pub fn field_compare(
    cfg: &ExperimentConfig,
    f: &ScalarField,
    grid: GridSize,
    j: i64,
    raster_size: usize,
) -> Result<FieldComparison> {
    let p = cfg.params();
    let perm = build_permutation(&p, grid)?;
    let sandwich = dediscretize(&evolve_observable(
        &perm,
        &discretize(f, grid, &cfg.quadrature),
        j,
    )?);
    let e_norm = crate::antiwick::op_norm2(f, &p, grid, &cfg.quadrature, j)?;
    let fj = koopman(f, &p, j);
    let continuous = Raster::sample(raster_size, |x| fj.eval(x));
    let discrete = Raster::sample(raster_size, |x| sandwich.eval(x));
    let difference = Raster {
        size: raster_size,
        data: continuous
            .data
            .iter()
            .zip(&discrete.data)
            .map(|(a, b)| a - b)
            .collect(),
    };
    Ok(FieldComparison {
        continuous,
        discrete,
        difference,
        sandwich,
        e_norm,
    })
}

/// Mean of `|difference|` inside and outside a region, over raster pixels.
pub fn split_mean_abs(r: &Raster, inside: impl Fn([f64; 2]) -> bool) -> (f64, f64) {
    let (mut si, mut ni, mut so, mut no) = (0.0, 0usize, 0.0, 0usize);
    for (k, &v) in r.data.iter().enumerate() {
        let x = Raster::pixel_center(r.size, k / r.size, k % r.size);
        if inside(x) {
            si += v.abs();
            ni += 1;
        } else {
            so += v.abs();
            no += 1;
        }
    }
    (si / ni.max(1) as f64, so / no.max(1) as f64)
}

/// Uniform random point of the torus, for callers holding their own generator.
pub fn random_point<R: Rng>(rng: &mut R) -> TorusPoint {
    let x = sampling::uniform_xy(rng);
    TorusPoint::from_f64(x[0], x[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields;
    use crate::geometry::{distance_to_curve_xy, gamma_curve};

    fn cfg(alpha: Scalar) -> ExperimentConfig {
        ExperimentConfig::new(alpha)
    }

    #[test]
    fn config_validation() {
        let mut c = cfg(Scalar::ratio(1, 2));
        assert!(c.validate().is_ok());
        c.gamma = 2.0;
        assert!(matches!(
            c.validate(),
            Err(Error::PreconditionUnsatisfiable(_))
        ));
        c.exploratory = true;
        assert!(c.validate().is_ok());
        c.d0 = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn localization_n_zero() {
        let c = cfg(Scalar::ratio(1, 2));
        let r = localization_experiment(&c, GridSize::new(32).unwrap(), 0, 200, 200).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.pairs_tested, 40_000);
        assert!(r.certified());
    }

    #[test]
    fn localization_small_example() {
        let c = cfg(Scalar::ratio(1, 2));
        let p = c.params();
        assert!(nm_threshold(&p, 1, 0.1) < 64.0);
        let r = localization_experiment(&c, GridSize::new(64).unwrap(), 1, 300, 300).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.certified());
    }

    #[test]
    fn localization_rejects_small_grid() {
        let c = cfg(Scalar::ratio(1, 2));
        let err = localization_experiment(&c, GridSize::new(8).unwrap(), 3, 10, 10).unwrap_err();
        assert!(matches!(err, Error::PreconditionUnsatisfiable(_)));
    }

    #[test]
    fn overlap_at_the_evolved_point_is_excluded() {
        // A y in the cell of V^n(x̂) overlaps, but it lies within d0 of S^n(x) and is
        // never drawn.
        let c = cfg(Scalar::ratio(1, 2));
        let p = c.params();
        let grid = GridSize::new(64).unwrap();
        let x = TorusPoint::from_f64(0.3, 0.6);
        let l = crate::lattice::v_step(
            &p,
            grid,
            crate::lattice::nearest_lattice(grid, &x),
            Direction::Forward,
        )
        .unwrap();
        let y = grid.point(l);
        assert_eq!(crate::lattice::ket_overlap(&p, grid, &x, &y, 1).unwrap(), 1);
        assert!(torus_distance_xy(y.to_xy(), iterate_xy(0.5, x.to_xy(), 1)) < c.d0);
    }

    #[test]
    fn tracking_examples() {
        let cat = cfg(Scalar::integer(1));
        let p = cat.params();
        let grid = GridSize::new(1024).unwrap();
        let lattice: Vec<[f64; 2]> = (0..50)
            .map(|k| grid.point_xy(grid.unflat(k * 997)))
            .collect();
        let s = tracking_on_points(&p, grid, 2, &lattice).unwrap();
        assert_eq!(s.max_ratio, 0.0);

        let c = cfg(Scalar::ratio(1, 2));
        let s = tracking_experiment(&c, GridSize::new(512).unwrap(), 2, 2000).unwrap();
        assert!(s.max_ratio_by_step[0] <= 0.5 + 1e-12);
        assert_eq!(s.violations, 0);
        assert!(s.max_ratio <= 1.0);

        let err = tracking_experiment(&c, GridSize::new(16).unwrap(), 2, 10).unwrap_err();
        assert!(matches!(err, Error::PreconditionUnsatisfiable(_)));
    }

    #[test]
    fn breaking_scan_shape() {
        let mut c = cfg(Scalar::ratio(3, 2));
        c.grids = vec![16, 32];
        c.quadrature = QuadratureSpec::midpoint(2).unwrap();
        let rows = breaking_time_scan(&c, &fields::constant(1.0), 3).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.e_norm == 0.0 && r.jstar.is_none()));
        let rows = breaking_time_scan(&c, &fields::sin2d(), 6).unwrap();
        assert!(rows.iter().all(|r| r.e_norm >= 0.0));
        assert_eq!(rows[0].j, 0);
        assert_eq!(rows[7].n_grid, 32);
    }

    #[test]
    fn stretch_examples() {
        let c = cfg(Scalar::ratio(1, 10));
        let centre = TorusPoint::from_ratios((1, 2), (2, 5));
        let r = ball_stretch(&c, &centre, 0.01, 1, 2000).unwrap();
        assert!((r.initial_radius - 0.01).abs() < 1e-12);
        assert!(r.entries[0].radius <= c.params().eta() * 0.01 + 2.0 * 0.01 / 2000.0);
        assert!(ball_stretch(&c, &centre, 0.3, 1, 100).is_err());

        let hyper = cfg(Scalar::ratio(3, 2));
        let r = ball_stretch(&hyper, &centre, 0.01, 20, 500).unwrap();
        assert!(r.wrapped_at.is_some());
        assert!(r.entries.len() < 20);
    }

    #[test]
    fn compare_cell_constant_field_at_zero() {
        let c = cfg(Scalar::ratio(3, 2));
        let grid = GridSize::new(8).unwrap();
        let diag: Vec<f64> = (0..64).map(|k| (k as f64 * 0.37).sin()).collect();
        let f = dediscretize(&crate::antiwick::DiagonalObservable::new(grid, diag).unwrap())
            .into_field("s");
        let cmp = field_compare(&c, &f, grid, 0, 40).unwrap();
        assert!(cmp.difference.data.iter().all(|&d| d == 0.0));
        assert_eq!(cmp.e_norm, 0.0);
    }

    #[test]
    fn split_mean_partitions() {
        let r = Raster::sample(10, |x| if x[0] < 0.5 { 2.0 } else { -1.0 });
        let (i, o) = split_mean_abs(&r, |x| x[0] < 0.5);
        assert_eq!((i, o), (2.0, 1.0));
        let g0 = gamma_curve(&cfg(Scalar::ratio(1, 2)).params(), 0).unwrap();
        let (i, _) = split_mean_abs(&r, |x| distance_to_curve_xy(x, &g0) <= 0.05);
        assert!(i > 0.0);
    }
}
