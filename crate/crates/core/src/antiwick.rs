//! Anti-Wick discretization of observables and the two evolutions compared by the
//! experiments.
//!
//! A field `f` on the torus is discretized to the diagonal observable whose entry at
//! `ℓ` is the running average `Γ_N f(ℓ/N)`, i.e. the mean of `f` over the side-`1/N`
//! cell centred at `ℓ/N`. A diagonal observable is de-discretized to the simple
//! function that is constant on those cells. The continuous dynamics acts on fields
//! by composition (`f ∘ S^j`); the discrete dynamics pulls diagonals back along the
//! lattice permutation.
//!
//! All cell integrals are approximated by a product rule described by
//! [`QuadratureSpec`]. Reductions run in fixed index order so results do not depend
//! on the number of worker threads.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{build_permutation, nearest_lattice_xy, GridSize, LatticePermutation};
use crate::scalar::frac_f64;
use crate::torus::{forward_xy, iterate_xy, SawtoothParams, TorusPoint};

#[derive(Clone, Debug, PartialEq)]
pub struct FieldMeta {
    pub name: String,
    pub is_continuous: bool,
    pub sup_norm_bound: Option<f64>,
}

/// A bounded real function on the torus, evaluated on canonical coordinates.
#[derive(Clone)]
pub struct ScalarField {
    eval: Arc<dyn Fn([f64; 2]) -> f64 + Send + Sync>,
    meta: FieldMeta,
}

impl ScalarField {
    pub fn new<F>(meta: FieldMeta, eval: F) -> Self
    where
        F: Fn([f64; 2]) -> f64 + Send + Sync + 'static,
    {
        ScalarField {
            eval: Arc::new(eval),
            meta,
        }
    }

    pub fn meta(&self) -> &FieldMeta {
        &self.meta
    }

    pub fn name(&self) -> &str {
        &self.meta.name
    }

    /// Evaluates at `x`, reducing the coordinates mod 1 first.
    #[inline]
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        (self.eval)([frac_f64(x[0]), frac_f64(x[1])])
    }

    pub fn eval_point(&self, x: &TorusPoint) -> f64 {
        (self.eval)(x.to_xy())
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("meta", &self.meta)
            .finish()
    }
}

/// An element of the diagonal algebra `D_N`, indexed by flat lattice index.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalObservable {
    grid: GridSize,
    diag: Vec<f64>,
}

impl DiagonalObservable {
    pub fn new(grid: GridSize, diag: Vec<f64>) -> Result<Self> {
        if diag.len() != grid.cal_n() {
            return Err(Error::InvalidArgument(format!(
                "diagonal has {} entries, expected {}",
                diag.len(),
                grid.cal_n()
            )));
        }
        if let Some(v) = diag.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite diagonal entry {v}"
            )));
        }
        Ok(DiagonalObservable { grid, diag })
    }

    pub fn identity(grid: GridSize) -> Self {
        DiagonalObservable {
            grid,
            diag: vec![1.0; grid.cal_n()],
        }
    }

    pub fn zero(grid: GridSize) -> Self {
        DiagonalObservable {
            grid,
            diag: vec![0.0; grid.cal_n()],
        }
    }

    /// The projector onto a single lattice state.
    pub fn unit(grid: GridSize, flat: usize) -> Self {
        let mut diag = vec![0.0; grid.cal_n()];
        diag[flat] = 1.0;
        DiagonalObservable { grid, diag }
    }

    pub fn grid(&self) -> GridSize {
        self.grid
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Entrywise product, i.e. the algebra product in `D_N`.
    pub fn product(&self, other: &DiagonalObservable) -> Result<DiagonalObservable> {
        check_grid(self.grid, other.grid)?;
        Ok(DiagonalObservable {
            grid: self.grid,
            diag: self
                .diag
                .iter()
                .zip(&other.diag)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// Hermitian adjoint; a no-op on real diagonals.
    pub fn adjoint(&self) -> DiagonalObservable {
        self.clone()
    }
}

/// A function constant on every cell `Q_N(ℓ/N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleFunction {
    grid: GridSize,
    values: Vec<f64>,
}

impl SimpleFunction {
    pub fn grid(&self) -> GridSize {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.values[self.grid.flat(nearest_lattice_xy(self.grid, x))]
    }

    pub fn into_field(self, name: &str) -> ScalarField {
        let sup = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let meta = FieldMeta {
            name: name.to_string(),
            is_continuous: false,
            sup_norm_bound: Some(sup),
        };
        ScalarField::new(meta, move |x| self.eval(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureRule {
    Midpoint,
    Gauss2,
}

impl fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadratureRule::Midpoint => "midpoint",
            QuadratureRule::Gauss2 => "gauss-2",
        })
    }
}

impl FromStr for QuadratureRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(QuadratureRule::Midpoint),
            "gauss-2" | "gauss2" => Ok(QuadratureRule::Gauss2),
            _ => Err(Error::Parse(format!("unknown quadrature rule {s:?}"))),
        }
    }
}

/// Product quadrature on a lattice cell: `m` subdivisions per axis, one rule per
/// subdivision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    m: usize,
    rule: QuadratureRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            m: 8,
            rule: QuadratureRule::Midpoint,
        }
    }
}

impl QuadratureSpec {
    pub fn new(m: usize, rule: QuadratureRule) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "quadrature subdivisions must be >= 1".into(),
            ));
        }
        Ok(QuadratureSpec { m, rule })
    }

    pub fn midpoint(m: usize) -> Result<Self> {
        Self::new(m, QuadratureRule::Midpoint)
    }

    pub fn subdivisions(&self) -> usize {
        self.m
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// One-dimensional nodes as offsets in `(-1/2, 1/2)` cell widths, with weights
    /// summing to 1.
    pub fn nodes_1d(&self) -> Vec<(f64, f64)> {
        let m = self.m as f64;
        let mut out = Vec::new();
        for k in 0..self.m {
            let centre = (k as f64 + 0.5) / m - 0.5;
            match self.rule {
                QuadratureRule::Midpoint => out.push((centre, 1.0 / m)),
                QuadratureRule::Gauss2 => {
                    let d = 0.5 / (m * 3f64.sqrt());
                    out.push((centre - d, 0.5 / m));
                    out.push((centre + d, 0.5 / m));
                }
            }
        }
        out
    }

    /// Two-dimensional product nodes `(dx, dy, weight)`.
    pub fn nodes_2d(&self) -> Vec<(f64, f64, f64)> {
        let n1 = self.nodes_1d();
        let mut out = Vec::with_capacity(n1.len() * n1.len());
        for &(oy, wy) in &n1 {
            for &(ox, wx) in &n1 {
                out.push((ox, oy, wx * wy));
            }
        }
        out
    }
}

fn check_grid(expected: GridSize, found: GridSize) -> Result<()> {
    if expected != found {
        return Err(Error::GridMismatch {
            expected: expected.n(),
            found: found.n(),
        });
    }
    Ok(())
}

/// Weighted mean written as `f₀ + Σ wₖ (fₖ − f₀)`, which is exact on constants.
#[inline]
fn cell_mean(f: &ScalarField, centre: [f64; 2], h: f64, nodes: &[(f64, f64, f64)]) -> f64 {
    let mut base = None;
    let mut acc = 0.0;
    for &(ox, oy, w) in nodes {
        let v = f.eval([centre[0] + h * ox, centre[1] + h * oy]);
        let b = *base.get_or_insert(v);
        acc += w * (v - b);
    }
    base.unwrap_or(0.0) + acc
}

/// Sum in ascending index order.
fn ordered_sum(values: &[f64]) -> f64 {
    values.iter().sum()
}

/// `Γ_N f(x) = N² ∫_{Q_N(x)} f dμ`, the mean of `f` over the cell centred at `x`.
pub fn running_average(f: &ScalarField, grid: GridSize, q: &QuadratureSpec, x: &TorusPoint) -> f64 {
    cell_mean(f, x.to_xy(), 1.0 / grid.n() as f64, &q.nodes_2d())
}

/// `J_{N,∞}`: diagonal of running averages at the lattice points.
pub fn discretize(f: &ScalarField, grid: GridSize, q: &QuadratureSpec) -> DiagonalObservable {
    let nodes = q.nodes_2d();
    let h = 1.0 / grid.n() as f64;
    let diag = (0..grid.cal_n())
        .into_par_iter()
        .map(|i| cell_mean(f, grid.point_xy(grid.unflat(i)), h, &nodes))
        .collect();
    DiagonalObservable { grid, diag }
}

/// `J_{∞,N}`: the simple function `Σ X_ℓ χ_{Q_N(ℓ/N)}`.
pub fn dediscretize(x: &DiagonalObservable) -> SimpleFunction {
    SimpleFunction {
        grid: x.grid,
        values: x.diag.clone(),
    }
}

/// The uniform state `τ_N(X) = N⁻² Σ X_ℓ`. Summing in sorted order makes the value
/// depend only on the multiset of entries, so it is exactly invariant under the
/// lattice dynamics.
pub fn tau_state(x: &DiagonalObservable) -> f64 {
    let mut v = x.diag.clone();
    v.sort_unstable_by(f64::total_cmp);
    ordered_sum(&v) / x.grid.cal_n() as f64
}

/// Quadrature estimate of `∫ f dμ` with `M·N` nodes per axis.
pub fn omega_state(f: &ScalarField, q: &QuadratureSpec, grid: GridSize) -> f64 {
    tau_state(&discretize(f, grid, q))
}

/// `Θ^j f = f ∘ S^j`.
pub fn koopman(f: &ScalarField, p: &SawtoothParams, j: i64) -> ScalarField {
    if j == 0 {
        return f.clone();
    }
    let meta = FieldMeta {
        name: format!("{}∘S^{j}", f.meta.name),
        is_continuous: f.meta.is_continuous && p.is_continuous(),
        sup_norm_bound: f.meta.sup_norm_bound,
    };
    let inner = f.clone();
    let alpha = p.alpha_f64();
    ScalarField::new(meta, move |x| inner.eval(iterate_xy(alpha, x, j)))
}

/// `Θ_{N}^j X`: `out[ℓ] = X[V^j(ℓ)]`.
pub fn evolve_observable(
    perm: &LatticePermutation,
    x: &DiagonalObservable,
    j: i64,
) -> Result<DiagonalObservable> {
    check_grid(perm.grid(), x.grid)?;
    let diag = (0..x.grid.cal_n())
        .map(|i| x.diag[perm.evolve_flat(i, j)])
        .collect();
    Ok(DiagonalObservable { grid: x.grid, diag })
}

/// `J_{∞,N} ∘ Θ_N^j ∘ J_{N,∞}(f)`.
pub fn sandwich(
    f: &ScalarField,
    p: &SawtoothParams,
    grid: GridSize,
    q: &QuadratureSpec,
    j: i64,
) -> Result<SimpleFunction> {
    let perm = build_permutation(p, grid)?;
    Ok(dediscretize(&evolve_observable(
        &perm,
        &discretize(f, grid, q),
        j,
    )?))
}

/// `‖Θ^j f − J_{∞,N} Θ_N^j J_{N,∞} f‖_{L²(μ)}`, sampled at the quadrature nodes of
/// every cell.
pub fn op_norm2(
    f: &ScalarField,
    p: &SawtoothParams,
    grid: GridSize,
    q: &QuadratureSpec,
    j: i64,
) -> Result<f64> {
    let perm = build_permutation(p, grid)?;
    let diag = discretize(f, grid, q);
    let evolved = evolve_observable(&perm, &diag, j)?;
    let fj = koopman(f, p, j);
    let nodes = q.nodes_2d();
    let h = 1.0 / grid.n() as f64;
    let rows: Vec<f64> = (0..grid.n())
        .into_par_iter()
        .map(|l2| {
            let mut row = 0.0;
            for l1 in 0..grid.n() {
                let i = l1 + grid.n() * l2;
                let c = grid.point_xy(grid.unflat(i));
                let s = evolved.diag[i];
                for &(ox, oy, w) in &nodes {
                    let d = fj.eval([c[0] + h * ox, c[1] + h * oy]) - s;
                    row += w * d * d;
                }
            }
            row
        })
        .collect();
    Ok((ordered_sum(&rows) / grid.cal_n() as f64).sqrt())
}

/// [`op_norm2`] for every `j` in `0..=jmax` in one sweep.
///
/// Each cell follows its lattice orbit and the orbits of its quadrature nodes side
/// by side, so memory stays at `O(N²)` regardless of `jmax`.
pub fn op_norm2_series(
    f: &ScalarField,
    p: &SawtoothParams,
    perm: &LatticePermutation,
    q: &QuadratureSpec,
    jmax: usize,
) -> Vec<f64> {
    let grid = perm.grid();
    let diag = discretize(f, grid, q);
    let nodes = q.nodes_2d();
    let h = 1.0 / grid.n() as f64;
    let alpha = p.alpha_f64();
    let forward = perm.forward();
    let rows: Vec<Vec<f64>> = (0..grid.n())
        .into_par_iter()
        .map(|l2| {
            let mut acc = vec![0.0; jmax + 1];
            let mut pts = vec![[0.0; 2]; nodes.len()];
            for l1 in 0..grid.n() {
                let i0 = l1 + grid.n() * l2;
                let c = grid.point_xy(grid.unflat(i0));
                for (pt, &(ox, oy, _)) in pts.iter_mut().zip(&nodes) {
                    *pt = [frac_f64(c[0] + h * ox), frac_f64(c[1] + h * oy)];
                }
                let mut idx = i0;
                for slot in acc.iter_mut() {
                    let s = diag.diag[idx];
                    for (pt, &(_, _, w)) in pts.iter_mut().zip(&nodes) {
                        let d = f.eval(*pt) - s;
                        *slot += w * d * d;
                        *pt = forward_xy(alpha, *pt);
                    }
                    idx = forward[idx] as usize;
                }
            }
            acc
        })
        .collect();
    let total = grid.cal_n() as f64;
    (0..=jmax)
        .map(|j| (rows.iter().map(|r| r[j]).sum::<f64>() / total).sqrt())
        .collect()
}

/// Quadrature estimate of `‖f‖_{L²(μ)}`.
pub fn l2_norm(f: &ScalarField, q: &QuadratureSpec, grid: GridSize) -> f64 {
    let sq = f.clone();
    let meta = FieldMeta {
        name: format!("|{}|²", f.meta.name),
        is_continuous: f.meta.is_continuous,
        sup_norm_bound: f.meta.sup_norm_bound.map(|b| b * b),
    };
    omega_state(
        &ScalarField::new(meta, move |x| sq.eval(x).powi(2)),
        q,
        grid,
    )
    .sqrt()
}
