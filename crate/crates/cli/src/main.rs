use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};

use sawtorus::antiwick::{
    discretize, evolve_observable, tau_state, QuadratureRule, QuadratureSpec,
};
use sawtorus::experiments::{
    ball_stretch, breaking_time_scan, field_compare, localization_experiment, tracking_experiment,
    ExperimentConfig,
};
use sawtorus::geometry::{
    curve_length, gamma_curve, measure_estimate, n_tilde, CurveFamily, GoodSet, StripIndex,
};
use sawtorus::io::{self, fmt_float, MeasureRow};
use sawtorus::lattice::{build_permutation, evolve_index, nearest_lattice, GridSize};
use sawtorus::torus::{iterate, spectral, TorusPoint};
use sawtorus::{fields, Error, Scalar};

#[derive(Parser, Debug)]
#[command(
    name = "sawtorus",
    version,
    about = "Sawtooth maps on the torus and their lattice discretizations"
)]
struct Cli {
    /// Directory for all output files; created if missing.
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,
    /// Seed of every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterate a point under the map (and its lattice cell, with --N).
    Evolve(EvolveArgs),
    /// Cell-average a test field on a grid, optionally evolving it on the lattice.
    Discretize(DiscretizeArgs),
    /// Export discontinuity curves and Monte Carlo measures of their strips.
    Geometry(GeometryArgs),
    /// Count lattice overlaps between evolved points and far-away points.
    Localize(LocalizeArgs),
    /// Compare continuous orbits with lattice orbits against the tracking bound.
    Track(TrackArgs),
    /// Scan the discretization error over time and grid size.
    BreakingTime(BreakingArgs),
    /// Follow the enclosing radius of an evolved small circle.
    Stretch(StretchArgs),
    /// Raster the continuous and discrete evolutions of a field and their difference.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct Quadrature {
    /// Quadrature rule for cell averages: midpoint or gauss-2.
    #[arg(long, default_value = "midpoint")]
    quadrature: QuadratureRule,
    /// Subdivisions per cell axis.
    #[arg(long, default_value_t = 8)]
    m: usize,
}

impl Quadrature {
    fn spec(&self) -> Result<QuadratureSpec, Error> {
        QuadratureSpec::new(self.m, self.quadrature)
    }
}

#[derive(Args, Debug)]
struct EvolveArgs {
    /// Map parameter, `p/q` (exact) or decimal (floating point).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    /// Starting point `x1,x2`.
    #[arg(long, value_parser = parse_point)]
    x: TorusPoint,
    /// Number of steps; negative values run the inverse map.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    steps: i64,
    /// Also evolve the lattice cell of the point on this grid.
    #[arg(long = "N")]
    grid: Option<usize>,
}

#[derive(Args, Debug)]
struct DiscretizeArgs {
    #[arg(long = "N")]
    grid: usize,
    #[arg(long, default_value = "sin2d")]
    field: String,
    #[command(flatten)]
    quad: Quadrature,
    /// Evolve the discretized field under the lattice map of this parameter.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Option<Scalar>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    steps: i64,
}

#[derive(Args, Debug)]
struct GeometryArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    /// Curves `γ_p` are exported for `|p| ≤ p-max`.
    #[arg(long, default_value_t = 4)]
    p_max: i64,
    /// Unions `Γ_n` and good sets are measured for `1 ≤ n ≤ n-max`.
    #[arg(long, default_value_t = 4)]
    n_max: i64,
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.05")]
    eps: Vec<f64>,
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    /// Grids for the good-set complement; each is used for the `n` with `N > Ñ(n)`.
    #[arg(long = "N", value_delimiter = ',')]
    grids: Vec<usize>,
}

#[derive(Args, Debug)]
struct LocalizeArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    #[arg(long = "N", value_delimiter = ',', default_value = "64")]
    grids: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    n: i64,
    #[arg(long, default_value_t = 0.1)]
    d0: f64,
    #[arg(long, default_value_t = 2.5)]
    beta: f64,
    #[arg(long, default_value_t = 10_000)]
    x_samples: usize,
    #[arg(long, default_value_t = 1_000)]
    y_samples: usize,
    /// Allow form factors at or below their theoretical minimum.
    #[arg(long)]
    exploratory: bool,
}

#[derive(Args, Debug)]
struct TrackArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    #[arg(long = "N", default_value_t = 512)]
    grid: usize,
    #[arg(long, default_value_t = 2)]
    n: i64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

#[derive(Args, Debug)]
struct BreakingArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    #[arg(long = "N", value_delimiter = ',', default_value = "64,256")]
    grids: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    jmax: usize,
    #[arg(long, default_value = "sin2d")]
    field: String,
    #[command(flatten)]
    quad: Quadrature,
    #[arg(long, default_value_t = 3.5)]
    gamma: f64,
    /// Fraction of the field's L² norm that marks the breaking time.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long)]
    exploratory: bool,
}

#[derive(Args, Debug)]
struct StretchArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    #[arg(long, value_parser = parse_point, default_value = "1/2,2/5")]
    center: TorusPoint,
    /// Radius of the initial circle.
    #[arg(long, default_value_t = 0.01)]
    v: f64,
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Points sampled on the initial circle.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Scalar,
    #[arg(long = "N", default_value_t = 120)]
    grid: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2)]
    steps: i64,
    #[arg(long, default_value = "sharp")]
    field: String,
    #[command(flatten)]
    quad: Quadrature,
    /// Raster side length in pixels.
    #[arg(long, default_value_t = 480)]
    raster: usize,
}

fn parse_alpha(s: &str) -> Result<Scalar, String> {
    s.parse::<Scalar>().map_err(|e| e.to_string())
}

/// `p/q`, integers and plain decimals are exact; anything else is a float.
fn parse_coordinate(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let plain = frac.chars().all(|c| c.is_ascii_digit()) && frac.len() <= 17;
        if plain {
            if let Ok(n) = digits.parse::<i64>() {
                let n = if int.starts_with('-') && n > 0 { -n } else { n };
                return Ok(Scalar::ratio(n, 10i64.pow(frac.len() as u32)));
            }
        }
    }
    parse_alpha(s)
}

fn parse_point(s: &str) -> Result<TorusPoint, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x1,x2, got {s:?}"))?;
    Ok(TorusPoint::new(parse_coordinate(a)?, parse_coordinate(b)?))
}

fn grid(n: usize) -> Result<GridSize, Error> {
    GridSize::new(n)
}

/// Every argument as resolved by the parser, defaults included, then the
/// experiment configuration actually used.
struct Manifest {
    lines: Vec<String>,
}

impl Manifest {
    fn from_matches(top: &ArgMatches) -> Self {
        let cmd = Cli::command();
        let mut values = BTreeMap::new();
        let mut collect = |c: &clap::Command, m: &ArgMatches| {
            for arg in c.get_arguments() {
                let id = arg.get_id().as_str();
                if let Ok(Some(vals)) = m.try_get_raw(id) {
                    let v: Vec<String> = vals.map(|v| v.to_string_lossy().into_owned()).collect();
                    values.insert(id.to_string(), v.join(","));
                }
            }
        };
        collect(&cmd, top);
        let mut lines = Vec::new();
        if let Some((name, sub)) = top.subcommand() {
            lines.push(format!("command = {name}"));
            if let Some(sc) = cmd.find_subcommand(name) {
                collect(sc, sub);
            }
        }
        lines.extend(values.into_iter().map(|(k, v)| format!("{k} = {v}")));
        Manifest { lines }
    }

    fn config(&mut self, cfg: &ExperimentConfig) {
        let q = &cfg.quadrature;
        self.lines.extend([
            format!("resolved.alpha = {}", cfg.alpha),
            format!(
                "resolved.alpha_mode = {}",
                if cfg.alpha.is_exact() {
                    "exact"
                } else {
                    "float"
                }
            ),
            format!("resolved.gamma = {}", cfg.gamma),
            format!("resolved.beta = {}", cfg.beta),
            format!("resolved.d0 = {}", cfg.d0),
            format!("resolved.grids = {:?}", cfg.grids),
            format!(
                "resolved.quadrature = {:?} x {}",
                q.rule(),
                q.subdivisions()
            ),
            format!("resolved.seed = {}", cfg.seed),
            format!("resolved.threshold = {}", cfg.threshold),
            format!("resolved.x_samples = {}", cfg.x_samples),
            format!("resolved.y_samples = {}", cfg.y_samples),
            format!("resolved.exploratory = {}", cfg.exploratory),
        ]);
    }

    fn write(&self, dir: &Path) -> Result<(), Error> {
        let mut f = fs::File::create(dir.join("manifest.txt"))?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn run(cli: Cli, mut manifest: Manifest) -> Result<(), Error> {
    let out = cli.output_dir.clone();
    fs::create_dir_all(&out)?;
    let base = |alpha: &Scalar| {
        if !alpha.is_exact() {
            eprintln!("warning: --alpha {alpha} is not a ratio; running in floating-point mode");
        }
        let mut cfg = ExperimentConfig::new(alpha.clone());
        cfg.seed = cli.seed;
        cfg
    };
    match &cli.command {
        Command::Evolve(a) => {
            let cfg = base(&a.alpha);
            manifest.config(&cfg);
            manifest.write(&out)?;
            let p = cfg.params();
            let mut x = a.x.clone();
            let mut rows = vec![point_row(0, &x)];
            for k in 1..=a.steps.unsigned_abs() {
                x = iterate(&p, &x, a.steps.signum());
                rows.push(point_row(k, &x));
            }
            io::write_csv(&out.join("orbit.csv"), &["step", "x1", "x2"], rows)?;
            if let Some(n) = a.grid {
                let g = grid(n)?;
                let perm = build_permutation(&p, g)?;
                let start = nearest_lattice(g, &a.x);
                let rows = (0..=a.steps.unsigned_abs()).map(|k| {
                    let l = evolve_index(&perm, start, k as i64 * a.steps.signum());
                    vec![k.to_string(), l.l1.to_string(), l.l2.to_string()]
                });
                io::write_csv(&out.join("lattice_orbit.csv"), &["step", "l1", "l2"], rows)?;
            }
            let [x1, x2] = x.to_xy();
            println!("{x1} {x2}");
        }
        Command::Discretize(a) => {
            let q = a.quad.spec()?;
            let g = grid(a.grid)?;
            let f = fields::by_name(&a.field)?;
            if let Some(alpha) = &a.alpha {
                let mut cfg = base(alpha);
                cfg.quadrature = q;
                cfg.grids = vec![a.grid];
                manifest.config(&cfg);
            }
            manifest.write(&out)?;
            let x = discretize(&f, g, &q);
            io::write_observable_csv(&out.join("observable.csv"), g, x.diag())?;
            println!("tau {}", fmt_float(tau_state(&x)));
            if let Some(alpha) = &a.alpha {
                let perm = build_permutation(&spectral(alpha.clone()), g)?;
                io::write_permutation_csv(&out.join("permutation.csv"), &perm)?;
                let y = evolve_observable(&perm, &x, a.steps)?;
                io::write_observable_csv(&out.join("evolved.csv"), g, y.diag())?;
            }
        }
        Command::Geometry(a) => {
            let cfg = base(&a.alpha);
            manifest.config(&cfg);
            manifest.write(&out)?;
            let p = cfg.params();
            let curves: Vec<CurveFamily> = (-a.p_max..=a.p_max)
                .map(|k| gamma_curve(&p, k))
                .collect::<Result<_, _>>()?;
            io::write_curves_csv(&out.join("curves.csv"), &curves)?;
            let forward = |k: i64| &curves[(k + a.p_max) as usize];
            let eta = p.eta();
            let mut rows = Vec::new();
            let mut seed = cfg.seed;
            let mut next_seed = || {
                seed = seed.wrapping_add(1);
                seed
            };
            for &eps in &a.eps {
                for k in 0..=a.p_max {
                    let c = forward(k);
                    let idx = StripIndex::new(&[c], eps);
                    let est = measure_estimate(|x| idx.contains(x), a.samples, next_seed())?;
                    rows.push(MeasureRow {
                        set: "gamma_strip".into(),
                        n: k,
                        eps,
                        n_grid: None,
                        mean: est.mean,
                        stderr: est.stderr,
                        bound: 2.0 * eps * eta.powi(k as i32) + std::f64::consts::PI * eps * eps,
                    });
                }
                for n in 1..=a.n_max.min(a.p_max) {
                    let refs: Vec<&CurveFamily> = (0..n).map(forward).collect();
                    let idx = StripIndex::new(&refs, eps);
                    let est = measure_estimate(|x| idx.contains(x), a.samples, next_seed())?;
                    rows.push(MeasureRow {
                        set: "union_strip".into(),
                        n,
                        eps,
                        n_grid: None,
                        mean: est.mean,
                        stderr: est.stderr,
                        bound: 2.0 * (2f64.sqrt() + 1.0) * eps * eta.powi(n as i32)
                            + std::f64::consts::PI * n as f64 * eps * eps,
                    });
                }
            }
            for &big_n in &a.grids {
                let g = grid(big_n)?;
                for n in 1..=a.n_max {
                    let nt = n_tilde(&p, n);
                    if big_n as f64 <= nt {
                        eprintln!(
                            "note: N = {big_n} does not exceed Ñ = {nt:.1} for n = {n}; skipped"
                        );
                        continue;
                    }
                    let good = GoodSet::new(&p, g, n, nt / (2.0 * big_n as f64))?;
                    let est = measure_estimate(|x| !good.contains(x), a.samples, next_seed())?;
                    rows.push(MeasureRow {
                        set: "good_complement".into(),
                        n,
                        eps: nt / (2.0 * big_n as f64),
                        n_grid: Some(big_n),
                        mean: est.mean,
                        stderr: est.stderr,
                        bound: 38.0 * eta.powi(3 * n as i32) / big_n as f64,
                    });
                }
            }
            io::write_measure_csv(&out.join("measure.csv"), &rows)?;
            for c in &curves {
                println!("p {} length {}", c.index(), fmt_float(curve_length(c)));
            }
        }
        Command::Localize(a) => {
            let mut cfg = base(&a.alpha);
            cfg.d0 = a.d0;
            cfg.beta = a.beta;
            cfg.grids = a.grids.clone();
            cfg.x_samples = a.x_samples;
            cfg.y_samples = a.y_samples;
            cfg.exploratory = a.exploratory;
            manifest.config(&cfg);
            manifest.write(&out)?;
            let reports = cfg
                .grids
                .iter()
                .map(|&n| localization_experiment(&cfg, grid(n)?, a.n, a.x_samples, a.y_samples))
                .collect::<Result<Vec<_>, _>>()?;
            io::write_localization_csv(
                &out.join("localization.csv"),
                &cfg.alpha.to_string(),
                &reports,
            )?;
            for r in &reports {
                println!(
                    "N {} n {} pairs {} violations {} certified {}",
                    r.n_grid,
                    r.n,
                    r.pairs_tested,
                    r.violations,
                    r.certified()
                );
            }
        }
        Command::Track(a) => {
            let mut cfg = base(&a.alpha);
            cfg.grids = vec![a.grid];
            manifest.config(&cfg);
            manifest.write(&out)?;
            let s = tracking_experiment(&cfg, grid(a.grid)?, a.n, a.samples)?;
            let alpha = cfg.alpha.to_string();
            let rows = s.max_ratio_by_step.iter().enumerate().map(|(q, r)| {
                vec![
                    alpha.clone(),
                    a.grid.to_string(),
                    a.n.to_string(),
                    q.to_string(),
                    fmt_float(*r),
                ]
            });
            io::write_csv(
                &out.join("tracking.csv"),
                &["alpha", "N", "n", "step", "max_ratio"],
                rows,
            )?;
            println!(
                "max_ratio {} violations {}",
                fmt_float(s.max_ratio),
                s.violations
            );
        }
        Command::BreakingTime(a) => {
            let mut cfg = base(&a.alpha);
            cfg.grids = a.grids.clone();
            cfg.quadrature = a.quad.spec()?;
            cfg.gamma = a.gamma;
            cfg.threshold = a.threshold;
            cfg.exploratory = a.exploratory;
            manifest.config(&cfg);
            manifest.write(&out)?;
            let f = fields::by_name(&a.field)?;
            let rows = breaking_time_scan(&cfg, &f, a.jmax)?;
            io::write_breaking_csv(&out.join("breaking_time.csv"), &rows)?;
            for r in rows.iter().filter(|r| r.j == 0) {
                let js = r.jstar.map_or_else(|| "NA".to_string(), |j| j.to_string());
                println!("N {} jstar {js} budget {}", r.n_grid, fmt_float(r.budget));
            }
        }
        Command::Stretch(a) => {
            let cfg = base(&a.alpha);
            manifest.config(&cfg);
            manifest.write(&out)?;
            let rep = ball_stretch(&cfg, &a.center, a.v, a.steps, a.samples)?;
            io::write_stretch_csv(&out.join("stretch.csv"), &cfg.alpha.to_string(), &rep)?;
            if let Some(n) = rep.wrapped_at {
                println!("wrapped at step {n}");
            }
            if let Some(e) = rep.entries.last() {
                println!("n {} radius {}", e.n, fmt_float(e.radius));
            }
        }
        Command::Compare(a) => {
            let mut cfg = base(&a.alpha);
            cfg.quadrature = a.quad.spec()?;
            cfg.grids = vec![a.grid];
            manifest.config(&cfg);
            manifest.write(&out)?;
            let f = fields::by_name(&a.field)?;
            let cmp = field_compare(&cfg, &f, grid(a.grid)?, a.steps, a.raster)?;
            io::write_pgm(&out.join("continuous.pgm"), &cmp.continuous)?;
            io::write_pgm(&out.join("discrete.pgm"), &cmp.discrete)?;
            io::write_pgm(&out.join("difference.pgm"), &cmp.difference)?;
            io::write_csv(
                &out.join("compare.csv"),
                &["alpha", "N", "j", "e_norm"],
                [vec![
                    cfg.alpha.to_string(),
                    a.grid.to_string(),
                    a.steps.to_string(),
                    fmt_float(cmp.e_norm),
                ]],
            )?;
            println!("e_norm {}", fmt_float(cmp.e_norm));
        }
    }
    Ok(())
}

fn point_row(k: u64, x: &TorusPoint) -> Vec<String> {
    let [a, b] = x.to_xy();
    vec![k.to_string(), fmt_float(a), fmt_float(b)]
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) => 2,
        Error::PreconditionUnsatisfiable(_)
        | Error::DepthExceeded { .. }
        | Error::BoundaryAmbiguity { .. } => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let manifest = Manifest::from_matches(&matches);
    match run(cli, manifest) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
