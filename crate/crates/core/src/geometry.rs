//! Discontinuity curves of the iterated sawtooth map and the sets built from them.
//!
//! `S` is discontinuous on `γ_0 = {x1 = 0}` and `S⁻¹` on the diagonal
//! `γ_{-1} = S(γ_0)`. The curve `γ_p` is `S^{-p}(γ_0)` for `p > 0` and `S^{|p|}(γ_0)`
//! for `p < 0`; `S^n` is discontinuous exactly on `γ_0 ∪ … ∪ γ_{n-1}`.
//!
//! Curves are polylines of lifted straight segments. One map step splits every
//! segment where it meets the step's own discontinuity line and maps each piece by
//! the affine branch that is valid on it. For distance queries each segment is
//! further cut into pieces lying in single unit squares of the lift, translated
//! into `[0,1]²`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lattice::{nearest_lattice_xy, Direction, GridSize, LatticeKernel};
use crate::sampling;
use crate::scalar::Scalar;
use crate::torus::{
    forward_xy, inverse_xy, matrix_apply, matrix_inverse_apply, torus_distance_xy, wrap_delta,
    SawtoothParams, TorusPoint,
};

/// Default bound on `|p|` for [`gamma_curve`].
pub const DEFAULT_MAX_DEPTH: i64 = 8;

/// Pieces shorter than this are discarded when curves are split.
const MIN_PIECE: f64 = 1e-14;

/// A straight segment of the lift `R²`, from `a` to `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusSegment {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

impl TorusSegment {
    /// The shortest segment joining two torus points.
    ///
    /// When a coordinate separation is exactly 1/2 the lift with the smaller
    /// coordinate is chosen.
    pub fn shortest(a: &TorusPoint, b: &TorusPoint) -> Self {
        let a = a.to_xy();
        let b = b.to_xy();
        TorusSegment {
            a,
            b: [
                a[0] + wrap_delta(b[0] - a[0]),
                a[1] + wrap_delta(b[1] - a[1]),
            ],
        }
    }

    pub fn length(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    pub fn start(&self) -> TorusPoint {
        TorusPoint::from_f64(self.a[0], self.a[1])
    }

    pub fn end(&self) -> TorusPoint {
        TorusPoint::from_f64(self.b[0], self.b[1])
    }

    fn at(&self, t: f64) -> [f64; 2] {
        [
            self.a[0] + t * (self.b[0] - self.a[0]),
            self.a[1] + t * (self.b[1] - self.a[1]),
        ]
    }

    /// Parameters in `(0, 1)` where `c·x` crosses an integer, with 0 and 1 added.
    fn breakpoints(&self, c: [f64; 2]) -> Vec<f64> {
        let s0 = c[0] * self.a[0] + c[1] * self.a[1];
        let s1 = c[0] * self.b[0] + c[1] * self.b[1];
        let mut ts = vec![0.0];
        if s0 != s1 {
            let (lo, hi) = (s0.min(s1), s0.max(s1));
            let mut k = lo.floor() + 1.0;
            while k < hi {
                ts.push((k - s0) / (s1 - s0));
                k += 1.0;
            }
            if s1 < s0 {
                ts[1..].reverse();
            }
        }
        ts.push(1.0);
        ts
    }

    /// Sub-segments between consecutive crossings of `c·x ∈ Z`.
    fn split(&self, c: [f64; 2]) -> Vec<TorusSegment> {
        let ts = self.breakpoints(c);
        ts.windows(2)
            .map(|w| TorusSegment {
                a: self.at(w[0]),
                b: self.at(w[1]),
            })
            .filter(|s| s.length() > MIN_PIECE)
            .collect()
    }

    /// Translates the segment so its start lies in `[0,1)²`.
    fn reduced(&self) -> TorusSegment {
        let s = [self.a[0].floor(), self.a[1].floor()];
        TorusSegment {
            a: [self.a[0] - s[0], self.a[1] - s[1]],
            b: [self.b[0] - s[0], self.b[1] - s[1]],
        }
    }

    /// Pieces lying in single unit squares, translated into `[0,1]²`.
    fn unit_pieces(&self) -> Vec<TorusSegment> {
        let mut ts = self.breakpoints([1.0, 0.0]);
        ts.extend(self.breakpoints([0.0, 1.0]));
        ts.sort_by(|x, y| x.total_cmp(y));
        ts.dedup();
        let mut out = Vec::new();
        for w in ts.windows(2) {
            let piece = TorusSegment {
                a: self.at(w[0]),
                b: self.at(w[1]),
            };
            if piece.length() <= MIN_PIECE {
                continue;
            }
            let mid = piece.at(0.5);
            let s = [mid[0].floor(), mid[1].floor()];
            out.push(TorusSegment {
                a: [piece.a[0] - s[0], piece.a[1] - s[1]],
                b: [piece.b[0] - s[0], piece.b[1] - s[1]],
            });
        }
        out
    }
}

/// Euclidean distance from `x` to the segment `s` in the plane.
#[inline]
fn point_segment_distance(x: [f64; 2], s: &TorusSegment) -> f64 {
    let d = [s.b[0] - s.a[0], s.b[1] - s.a[1]];
    let v = [x[0] - s.a[0], x[1] - s.a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        ((v[0] * d[0] + v[1] * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (v[0] - t * d[0]).hypot(v[1] - t * d[1])
}

const SHIFTS: [[f64; 2]; 9] = [
    [0.0, 0.0],
    [-1.0, 0.0],
    [1.0, 0.0],
    [0.0, -1.0],
    [0.0, 1.0],
    [-1.0, -1.0],
    [-1.0, 1.0],
    [1.0, -1.0],
    [1.0, 1.0],
];

/// The curve `γ_p` as a set of lifted segments.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    p: i64,
    alpha: Scalar,
    segments: Vec<TorusSegment>,
    closed: bool,
    pieces: OnceLock<Vec<TorusSegment>>,
}

impl CurveFamily {
    pub fn index(&self) -> i64 {
        self.p
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn segments(&self) -> &[TorusSegment] {
        &self.segments
    }

    /// Whether the family is the single closed line `x1 = 0` (no segment ends).
    pub fn is_closed_line(&self) -> bool {
        self.closed
    }

    /// The curve cut into pieces contained in `[0,1]²`.
    pub fn unit_pieces(&self) -> &[TorusSegment] {
        self.pieces
            .get_or_init(|| self.segments.iter().flat_map(|s| s.unit_pieces()).collect())
    }
}

/// Builds `γ_index` with the default depth limit.
pub fn gamma_curve(p: &SawtoothParams, index: i64) -> Result<CurveFamily> {
    gamma_curve_with_depth(p, index, DEFAULT_MAX_DEPTH)
}

pub fn gamma_curve_with_depth(
    p: &SawtoothParams,
    index: i64,
    max_depth: i64,
) -> Result<CurveFamily> {
    if index.abs() > max_depth {
        return Err(Error::DepthExceeded {
            requested: index,
            max: max_depth,
        });
    }
    let alpha = p.alpha_f64();
    let mut segments = vec![TorusSegment {
        a: [0.0, 0.0],
        b: [0.0, 1.0],
    }];
    for _ in 0..index.unsigned_abs() {
        segments = if index > 0 {
            step_inverse(alpha, &segments)
        } else {
            step_forward(alpha, &segments)
        };
    }
    let curve = CurveFamily {
        p: index,
        alpha: p.alpha().clone(),
        segments,
        closed: index == 0,
        pieces: OnceLock::new(),
    };
    let bound = p.eta().powi(index.abs() as i32);
    let len = curve_length(&curve);
    assert!(
        len <= bound * (1.0 + 1e-9) + 1e-9,
        "curve {index} has length {len} above {bound}"
    );
    Ok(curve)
}

/// `S` is affine on each strip `k ≤ x1 < k+1`: `x ↦ M x − k(1+α, α)`.
fn step_forward(alpha: f64, segments: &[TorusSegment]) -> Vec<TorusSegment> {
    let mut out = Vec::new();
    for seg in segments {
        for piece in seg.split([1.0, 0.0]) {
            let k = piece.at(0.5)[0].floor();
            let shift = [k * (1.0 + alpha), k * alpha];
            let a = matrix_apply(alpha, piece.a);
            let b = matrix_apply(alpha, piece.b);
            out.push(
                TorusSegment {
                    a: [a[0] - shift[0], a[1] - shift[1]],
                    b: [b[0] - shift[0], b[1] - shift[1]],
                }
                .reduced(),
            );
        }
    }
    out
}

/// `S⁻¹` is affine on each band `k ≤ x1 − x2 < k+1`: `x ↦ M⁻¹ x + k(−1, α)`.
fn step_inverse(alpha: f64, segments: &[TorusSegment]) -> Vec<TorusSegment> {
    let mut out = Vec::new();
    for seg in segments {
        for piece in seg.split([1.0, -1.0]) {
            let m = piece.at(0.5);
            let k = (m[0] - m[1]).floor();
            let shift = [-k, k * alpha];
            let a = matrix_inverse_apply(alpha, piece.a);
            let b = matrix_inverse_apply(alpha, piece.b);
            out.push(
                TorusSegment {
                    a: [a[0] + shift[0], a[1] + shift[1]],
                    b: [b[0] + shift[0], b[1] + shift[1]],
                }
                .reduced(),
            );
        }
    }
    out
}

pub fn curve_length(c: &CurveFamily) -> f64 {
    c.segments.iter().map(TorusSegment::length).sum()
}

/// Toral distance from `x` to the curve.
pub fn distance_to_curve(x: &TorusPoint, c: &CurveFamily) -> f64 {
    distance_to_curve_xy(x.to_xy(), c)
}

pub fn distance_to_curve_xy(x: [f64; 2], c: &CurveFamily) -> f64 {
    let x = [x[0] - x[0].floor(), x[1] - x[1].floor()];
    let mut best = f64::INFINITY;
    for piece in c.unit_pieces() {
        for s in SHIFTS {
            best = best.min(point_segment_distance([x[0] + s[0], x[1] + s[1]], piece));
        }
    }
    best
}

/// Closed strip `{x : d(x, γ) ≤ ε}`.
pub fn in_strip(x: &TorusPoint, c: &CurveFamily, eps: f64) -> bool {
    distance_to_curve(x, c) <= eps
}

/// Bucketed membership test for the union of closed strips around several curves.
#[derive(Clone, Debug)]
pub struct StripIndex {
    eps: f64,
    buckets: usize,
    pieces: Vec<TorusSegment>,
    cells: Vec<Vec<u32>>,
    everything: bool,
}

impl StripIndex {
    pub fn new(curves: &[&CurveFamily], eps: f64) -> Self {
        assert!(eps >= 0.0, "strip width must be nonnegative");
        let buckets = ((0.5 / eps.max(1e-3)) as usize).clamp(1, 256);
        let nb = buckets as f64;
        let mut pieces = Vec::new();
        let mut cells = vec![Vec::new(); buckets * buckets];
        // Any point is within √2/2 of every nonempty curve.
        let everything = eps >= 0.5 * 2f64.sqrt() && curves.iter().any(|c| !c.segments.is_empty());
        if !everything {
            for c in curves {
                for piece in c.unit_pieces() {
                    for s in SHIFTS {
                        let sh = TorusSegment {
                            a: [piece.a[0] + s[0], piece.a[1] + s[1]],
                            b: [piece.b[0] + s[0], piece.b[1] + s[1]],
                        };
                        let lo = [sh.a[0].min(sh.b[0]) - eps, sh.a[1].min(sh.b[1]) - eps];
                        let hi = [sh.a[0].max(sh.b[0]) + eps, sh.a[1].max(sh.b[1]) + eps];
                        if hi[0] < 0.0 || hi[1] < 0.0 || lo[0] >= 1.0 || lo[1] >= 1.0 {
                            continue;
                        }
                        let id = pieces.len() as u32;
                        pieces.push(sh);
                        let range = |l: f64, h: f64| {
                            let a = ((l * nb).floor().max(0.0)) as usize;
                            let b = ((h * nb).floor() as usize).min(buckets - 1);
                            a..=b
                        };
                        for j in range(lo[1], hi[1]) {
                            for i in range(lo[0], hi[0]) {
                                cells[i + buckets * j].push(id);
                            }
                        }
                    }
                }
            }
        }
        StripIndex {
            eps,
            buckets,
            pieces,
            cells,
            everything,
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    #[inline]
    pub fn contains(&self, x: [f64; 2]) -> bool {
        if self.everything {
            return true;
        }
        let x = [x[0] - x[0].floor(), x[1] - x[1].floor()];
        let nb = self.buckets as f64;
        let i = ((x[0] * nb) as usize).min(self.buckets - 1);
        let j = ((x[1] * nb) as usize).min(self.buckets - 1);
        self.cells[i + self.buckets * j]
            .iter()
            .any(|&id| point_segment_distance(x, &self.pieces[id as usize]) <= self.eps)
    }
}

/// The curves `γ_0, …, γ_{n-1}`.
pub fn discontinuity_curves(p: &SawtoothParams, n: i64) -> Result<Vec<CurveFamily>> {
    (0..n).map(|q| gamma_curve(p, q)).collect()
}

/// Membership in `Γ̄_n(ε) = ∪_{0 ≤ q < n} γ̄_q(ε)`.
pub fn in_big_gamma(x: &TorusPoint, p: &SawtoothParams, n: i64, eps: f64) -> Result<bool> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n must be >= 1, got {n}")));
    }
    Ok(discontinuity_curves(p, n)?
        .iter()
        .any(|c| in_strip(x, c, eps)))
}

/// Precomputed membership tests for `Γ̄_n(ε)` and `G_n^N(ε)`.
#[derive(Clone, Debug)]
pub struct GoodSet {
    grid: GridSize,
    strips: StripIndex,
}

impl GoodSet {
    pub fn new(p: &SawtoothParams, grid: GridSize, n: i64, eps: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!("n must be >= 1, got {n}")));
        }
        let curves = discontinuity_curves(p, n)?;
        let refs: Vec<&CurveFamily> = curves.iter().collect();
        Ok(GoodSet {
            grid,
            strips: StripIndex::new(&refs, eps),
        })
    }

    /// `x ∈ Γ̄_n(ε)`.
    pub fn in_big_gamma(&self, x: [f64; 2]) -> bool {
        self.strips.contains(x)
    }

    /// `x ∈ G_n^N(ε)`: the lattice point of `x` avoids `Γ̄_n(ε)`.
    pub fn contains(&self, x: [f64; 2]) -> bool {
        let l = nearest_lattice_xy(self.grid, x);
        !self.strips.contains(self.grid.point_xy(l))
    }

    pub fn contains_index(&self, l: crate::lattice::LatticeIndex) -> bool {
        !self.strips.contains(self.grid.point_xy(l))
    }
}

/// Membership in `G_n^N(ε)`.
pub fn in_good_set(
    x: &TorusPoint,
    p: &SawtoothParams,
    grid: GridSize,
    n: i64,
    eps: f64,
) -> Result<bool> {
    let l = crate::lattice::nearest_lattice(grid, x);
    Ok(!in_big_gamma(&grid.point(l), p, n, eps)?)
}

/// `Ñ = 2√2(√2+1) η^{2n}`.
pub fn n_tilde(p: &SawtoothParams, n: i64) -> f64 {
    2.0 * 2f64.sqrt() * (2f64.sqrt() + 1.0) * p.eta().powi(2 * n as i32)
}

/// Smallest admissible grid size for localization at time `n` and distance `d0`.
pub fn nm_threshold(p: &SawtoothParams, n: i64, d0: f64) -> f64 {
    let eta = p.eta();
    let geometric = 2f64.sqrt() * (eta.powi(n as i32 + 1) - 1.0) / (eta - 1.0);
    let first = (1.0 + geometric + 1.0 / 2f64.sqrt()) / d0;
    first.max(n_tilde(p, n))
}

/// Upper bound `(√2/N)(η^{q+1} − 1)/(η − 1)` on the tracking error at time `q`.
pub fn tracking_bound(p: &SawtoothParams, grid: GridSize, q: i64) -> f64 {
    let eta = p.eta();
    2f64.sqrt() / grid.n() as f64 * (eta.powi(q as i32 + 1) - 1.0) / (eta - 1.0)
}

/// Distances between `S^q(x)` and `V^q(x̂_N)/N` for `q = 0..=n`.
pub fn tracking_error(
    p: &SawtoothParams,
    grid: GridSize,
    x: &TorusPoint,
    n: i64,
) -> Result<Vec<f64>> {
    let kernel = LatticeKernel::new(p);
    tracking_error_with(&kernel, p, grid, x.to_xy(), n)
}

pub(crate) fn tracking_error_with(
    kernel: &LatticeKernel,
    p: &SawtoothParams,
    grid: GridSize,
    x: [f64; 2],
    n: i64,
) -> Result<Vec<f64>> {
    let alpha = p.alpha_f64();
    let mut y = x;
    let mut l = nearest_lattice_xy(grid, x);
    let mut out = Vec::with_capacity(n as usize + 1);
    for q in 0..=n {
        out.push(torus_distance_xy(y, grid.point_xy(l)));
        if q < n {
            y = forward_xy(alpha, y);
            l = kernel.step(p, grid, l, Direction::Forward)?;
        }
    }
    Ok(out)
}

/// Monte Carlo estimate of the measure of a set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Fraction of `samples` uniform points satisfying `pred`.
pub fn measure_estimate<P>(pred: P, samples: usize, seed: u64) -> Result<RegionEstimate>
where
    P: Fn([f64; 2]) -> bool + Sync,
{
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!(
            "at least 1000 samples required, got {samples}"
        )));
    }
    let hits = sampling::par_count(samples, seed, pred);
    let mean = hits as f64 / samples as f64;
    Ok(RegionEstimate {
        mean,
        stderr: (mean * (1.0 - mean) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StretchOutcome {
    Pass,
    Fail,
    NotApplicable,
}

/// One-step stretching test on a short segment not meeting the step's discontinuity.
pub fn stretch_check(
    p: &SawtoothParams,
    a: &TorusPoint,
    b: &TorusPoint,
    dir: Direction,
) -> StretchOutcome {
    stretch_check_xy(p, a.to_xy(), b.to_xy(), dir)
}

pub fn stretch_check_xy(
    p: &SawtoothParams,
    a: [f64; 2],
    b: [f64; 2],
    dir: Direction,
) -> StretchOutcome {
    let eta = p.eta();
    let d = torus_distance_xy(a, b);
    if d >= 0.5 / eta {
        return StretchOutcome::NotApplicable;
    }
    let lift = [
        a[0] + wrap_delta(b[0] - a[0]),
        a[1] + wrap_delta(b[1] - a[1]),
    ];
    let crosses = match dir {
        Direction::Forward => a[0].floor() != lift[0].floor(),
        Direction::Backward => (a[0] - a[1]).floor() != (lift[0] - lift[1]).floor(),
    };
    if crosses {
        return StretchOutcome::NotApplicable;
    }
    let alpha = p.alpha_f64();
    let (sa, sb) = match dir {
        Direction::Forward => (forward_xy(alpha, a), forward_xy(alpha, b)),
        Direction::Backward => (inverse_xy(alpha, a), inverse_xy(alpha, b)),
    };
    if torus_distance_xy(sa, sb) <= eta * d + 1e-12 {
        StretchOutcome::Pass
    } else {
        StretchOutcome::Fail
    }
}
