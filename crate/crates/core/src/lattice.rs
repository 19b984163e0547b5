//! The lattice `L_N = (Z/NZ)²`, nearest-lattice assignment and the permutation
//! induced by the sawtooth map on it.
//!
//! Lattice points are addressed by the flat index `i = l1 + N·l2`. The discrete
//! dynamics is `V(ℓ) = ⌊U(ℓ)⌋` forward and `V⁻¹(ℓ) = -⌊-U⁻¹(ℓ)⌋` backward, where
//! `U(y) = N·S(y/N)` is the map on the enlarged torus `[0, N)²`. The opposite
//! rounding directions are what make `V⁻¹` the inverse of `V`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::torus::{sawtooth_forward, sawtooth_inverse, SawtoothParams, TorusPoint};

/// Float-mode floors closer than this to an integer are refused.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSize {
    n: usize,
}

impl GridSize {
    /// Largest supported side; keeps `N²` addressable by `u32`.
    pub const MAX_N: usize = 65_535;

    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_N {
            return Err(Error::InvalidArgument(format!(
                "grid size must be in 1..={}, got {n}",
                Self::MAX_N
            )));
        }
        Ok(GridSize { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension `N²`.
    pub fn cal_n(&self) -> usize {
        self.n * self.n
    }

    pub fn flat(&self, l: LatticeIndex) -> usize {
        l.l1 + self.n * l.l2
    }

    pub fn unflat(&self, i: usize) -> LatticeIndex {
        LatticeIndex {
            l1: i % self.n,
            l2: i / self.n,
        }
    }

    pub fn index(&self, l1: i64, l2: i64) -> LatticeIndex {
        let n = self.n as i64;
        LatticeIndex {
            l1: l1.rem_euclid(n) as usize,
            l2: l2.rem_euclid(n) as usize,
        }
    }

    /// The torus point `ℓ/N`.
    pub fn point(&self, l: LatticeIndex) -> TorusPoint {
        let n = self.n as i64;
        TorusPoint::from_ratios((l.l1 as i64, n), (l.l2 as i64, n))
    }

    pub fn point_xy(&self, l: LatticeIndex) -> [f64; 2] {
        let n = self.n as f64;
        [l.l1 as f64 / n, l.l2 as f64 / n]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeIndex {
    pub l1: usize,
    pub l2: usize,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

/// A point of the enlarged torus `[0, N)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnlargedPoint {
    y1: Scalar,
    y2: Scalar,
}

impl EnlargedPoint {
    pub fn new(grid: GridSize, y1: Scalar, y2: Scalar) -> Self {
        let n = Scalar::integer(grid.n as i64);
        EnlargedPoint {
            y1: (&y1 / &n).frac() * &n,
            y2: (&y2 / &n).frac() * &n,
        }
    }

    pub fn from_index(l: LatticeIndex) -> Self {
        EnlargedPoint {
            y1: Scalar::integer(l.l1 as i64),
            y2: Scalar::integer(l.l2 as i64),
        }
    }

    pub fn y1(&self) -> &Scalar {
        &self.y1
    }

    pub fn y2(&self) -> &Scalar {
        &self.y2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn from_sign(j: i64) -> Direction {
        if j >= 0 {
            Direction::Forward
        } else {
            Direction::Backward
        }
    }
}

/// `x̂_N = (⌊N x1 + 1/2⌋ mod N, ⌊N x2 + 1/2⌋ mod N)`.
pub fn nearest_lattice(grid: GridSize, x: &TorusPoint) -> LatticeIndex {
    let n = Scalar::integer(grid.n as i64);
    let half = Scalar::ratio(1, 2);
    let round = |t: &Scalar| -> i64 {
        let k = (&n * t + &half).efloor();
        k.mod_floor(&BigInt::from(grid.n))
            .to_i64()
            .expect("reduced index fits")
    };
    grid.index(round(x.x1()), round(x.x2()))
}

/// Binary64 version of [`nearest_lattice`].
#[inline]
pub fn nearest_lattice_xy(grid: GridSize, x: [f64; 2]) -> LatticeIndex {
    let n = grid.n as f64;
    grid.index(
        (n * x[0] + 0.5).floor() as i64,
        (n * x[1] + 0.5).floor() as i64,
    )
}

/// Periodic Kronecker delta: 1 iff `a ≡ b` componentwise mod N.
pub fn kron_delta_periodic(grid: GridSize, a: (i64, i64), b: (i64, i64)) -> u8 {
    let n = grid.n as i64;
    u8::from((a.0 - b.0).rem_euclid(n) == 0 && (a.1 - b.1).rem_euclid(n) == 0)
}

/// `U(y) = N · S^{±1}(y / N)` on the enlarged torus.
pub fn u_map(
    p: &SawtoothParams,
    grid: GridSize,
    y: &EnlargedPoint,
    dir: Direction,
) -> EnlargedPoint {
    let n = Scalar::integer(grid.n as i64);
    let x = TorusPoint::new(&y.y1 / &n, &y.y2 / &n);
    let s = match dir {
        Direction::Forward => sawtooth_forward(p, &x),
        Direction::Backward => sawtooth_inverse(p, &x),
    };
    EnlargedPoint {
        y1: s.x1() * &n,
        y2: s.x2() * &n,
    }
}

/// Evaluation strategy for `V`, fixed once per α.
#[derive(Clone, Debug)]
pub enum LatticeKernel {
    /// α = p/q with machine-sized p, q (q > 0): exact integer arithmetic.
    Rational { p: i128, q: i128 },
    /// α rational but too large for the integer kernel.
    BigRational,
    /// α irrational (float mode), with the boundary guard.
    Float(f64),
}

impl LatticeKernel {
    pub fn new(p: &SawtoothParams) -> Self {
        match p.alpha() {
            Scalar::Float(a) => LatticeKernel::Float(*a),
            exact => match exact.as_small_ratio() {
                Some((num, den)) => LatticeKernel::Rational {
                    p: num as i128,
                    q: den as i128,
                },
                None => LatticeKernel::BigRational,
            },
        }
    }

    /// One step of `V` (forward) or `V⁻¹` (backward).
    pub fn step(
        &self,
        params: &SawtoothParams,
        grid: GridSize,
        l: LatticeIndex,
        dir: Direction,
    ) -> Result<LatticeIndex> {
        let n = grid.n as i128;
        let (l1, l2) = (l.l1 as i128, l.l2 as i128);
        match *self {
            LatticeKernel::Rational { p, q } => {
                let qn = q * n;
                Ok(match dir {
                    Direction::Forward => {
                        // U(ℓ) = ((q+p)ℓ1 + qℓ2 mod qN, pℓ1 + qℓ2 mod qN) / q
                        let a = ((q + p) * l1 + q * l2).rem_euclid(qn);
                        let b = (p * l1 + q * l2).rem_euclid(qn);
                        LatticeIndex {
                            l1: (a / q) as usize,
                            l2: (b / q) as usize,
                        }
                    }
                    Direction::Backward => {
                        // U⁻¹(ℓ) = (c, (qℓ2 - p c mod qN) / q) with c = ℓ1 - ℓ2 mod N
                        let c = (l1 - l2).rem_euclid(n);
                        let r = (q * l2 - p * c).rem_euclid(qn);
                        let up = (r + q - 1).div_euclid(q);
                        LatticeIndex {
                            l1: c as usize,
                            l2: up.rem_euclid(n) as usize,
                        }
                    }
                })
            }
            LatticeKernel::BigRational => Ok(v_step_via_u_map(params, grid, l, dir)),
            LatticeKernel::Float(alpha) => {
                let (f1, f2) = (l1 as f64, l2 as f64);
                let guard = |t: f64| -> Result<f64> {
                    let d = (t - t.round()).abs();
                    if d > 0.0 && d <= BOUNDARY_TOLERANCE {
                        Err(Error::BoundaryAmbiguity {
                            value: t,
                            tolerance: BOUNDARY_TOLERANCE,
                        })
                    } else {
                        Ok(t)
                    }
                };
                let nn = grid.n as i64;
                Ok(match dir {
                    Direction::Forward => {
                        let a = guard((1.0 + alpha) * f1 + f2)?;
                        let b = guard(alpha * f1 + f2)?;
                        grid.index(
                            (a.floor() as i64).rem_euclid(nn),
                            (b.floor() as i64).rem_euclid(nn),
                        )
                    }
                    Direction::Backward => {
                        let c = (l.l1 as i64 - l.l2 as i64).rem_euclid(nn);
                        let t = guard(f2 - alpha * c as f64)?;
                        grid.index(c, t.ceil() as i64)
                    }
                })
            }
        }
    }
}

/// `V(ℓ) = ⌊U(ℓ)⌋` (forward) or `V⁻¹(ℓ) = -⌊-U⁻¹(ℓ)⌋` (backward), reduced mod N.
pub fn v_step(
    p: &SawtoothParams,
    grid: GridSize,
    l: LatticeIndex,
    dir: Direction,
) -> Result<LatticeIndex> {
    LatticeKernel::new(p).step(p, grid, l, dir)
}

/// [`v_step`] evaluated literally through [`u_map`] in scalar arithmetic.
pub fn v_step_via_u_map(
    p: &SawtoothParams,
    grid: GridSize,
    l: LatticeIndex,
    dir: Direction,
) -> LatticeIndex {
    let u = u_map(p, grid, &EnlargedPoint::from_index(l), dir);
    let n = BigInt::from(grid.n);
    let reduce = |k: BigInt| k.mod_floor(&n).to_i64().expect("reduced index fits");
    match dir {
        Direction::Forward => grid.index(reduce(u.y1.efloor()), reduce(u.y2.efloor())),
        Direction::Backward => grid.index(reduce(u.y1.eceil()), reduce(u.y2.eceil())),
    }
}

/// The permutation of flat indices induced by `V`, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePermutation {
    grid: GridSize,
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl LatticePermutation {
    pub fn grid(&self) -> GridSize {
        self.grid
    }

    pub fn forward(&self) -> &[u32] {
        &self.forward
    }

    pub fn inverse(&self) -> &[u32] {
        &self.inverse
    }

    /// Flat index of `V^j(ℓ)`.
    #[inline]
    pub fn evolve_flat(&self, mut i: usize, j: i64) -> usize {
        let table = if j >= 0 { &self.forward } else { &self.inverse };
        for _ in 0..j.unsigned_abs() {
            i = table[i] as usize;
        }
        i
    }
}

/// Tabulates `V` and `V⁻¹` over the whole lattice, checking that they are
/// mutually inverse bijections.
pub fn build_permutation(p: &SawtoothParams, grid: GridSize) -> Result<LatticePermutation> {
    let kernel = LatticeKernel::new(p);
    let tabulate = |dir: Direction| -> Result<Vec<u32>> {
        (0..grid.cal_n())
            .into_par_iter()
            .map(|i| {
                kernel
                    .step(p, grid, grid.unflat(i), dir)
                    .map(|l| grid.flat(l) as u32)
            })
            .collect()
    };
    let forward = tabulate(Direction::Forward)?;
    let inverse = tabulate(Direction::Backward)?;

    let mut preimage = vec![u32::MAX; grid.cal_n()];
    for (i, &f) in forward.iter().enumerate() {
        let slot = &mut preimage[f as usize];
        if *slot != u32::MAX {
            return Err(Error::NonBijective {
                alpha: p.alpha().to_string(),
                n: grid.n,
                first: *slot as usize,
                second: i,
                image: f as usize,
            });
        }
        *slot = i as u32;
    }
    if let Some(index) = (0..grid.cal_n()).find(|&k| preimage[k] != inverse[k]) {
        return Err(Error::InverseMismatch {
            alpha: p.alpha().to_string(),
            n: grid.n,
            index,
        });
    }
    Ok(LatticePermutation {
        grid,
        forward,
        inverse,
    })
}

/// `V^j(ℓ)`: j-fold forward (`j > 0`) or inverse (`j < 0`) application.
pub fn evolve_index(perm: &LatticePermutation, l: LatticeIndex, j: i64) -> LatticeIndex {
    let g = perm.grid;
    g.unflat(perm.evolve_flat(g.flat(l), j))
}

/// `⟨C_N(x), W^n C_N(y)⟩ = δ(V^n(x̂_N), ŷ_N)`.
pub fn ket_overlap(
    p: &SawtoothParams,
    grid: GridSize,
    x: &TorusPoint,
    y: &TorusPoint,
    n: i64,
) -> Result<u8> {
    let kernel = LatticeKernel::new(p);
    let dir = Direction::from_sign(n);
    let mut l = nearest_lattice(grid, x);
    for _ in 0..n.unsigned_abs() {
        l = kernel.step(p, grid, l, dir)?;
    }
    let m = nearest_lattice(grid, y);
    Ok(kron_delta_periodic(
        grid,
        (l.l1 as i64, l.l2 as i64),
        (m.l1 as i64, m.l2 as i64),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{spectral, torus_distance_xy};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn g(n: usize) -> GridSize {
        GridSize::new(n).unwrap()
    }

    fn alphas() -> Vec<Scalar> {
        vec![
            Scalar::ratio(1, 2),
            Scalar::ratio(3, 2),
            Scalar::integer(1),
            Scalar::integer(0),
            Scalar::ratio(-1, 20),
        ]
    }

    #[test]
    fn nearest_lattice_examples() {
        assert_eq!(
            nearest_lattice(g(5), &TorusPoint::from_f64(0.55, 0.62)),
            LatticeIndex { l1: 3, l2: 3 }
        );
        assert_eq!(
            nearest_lattice(g(5), &TorusPoint::origin()),
            LatticeIndex { l1: 0, l2: 0 }
        );
        assert_eq!(
            nearest_lattice(g(4), &TorusPoint::from_ratios((7, 8), (0, 1))),
            LatticeIndex { l1: 0, l2: 0 }
        );
        assert_eq!(
            nearest_lattice_xy(g(4), [0.875, 0.0]),
            LatticeIndex { l1: 0, l2: 0 }
        );
    }

    #[test]
    fn kron_delta_examples() {
        assert_eq!(kron_delta_periodic(g(5), (5, 0), (0, 0)), 1);
        assert_eq!(kron_delta_periodic(g(5), (1, 2), (1, 2)), 1);
        assert_eq!(kron_delta_periodic(g(5), (1, 0), (2, 0)), 0);
    }

    #[test]
    fn u_map_examples() {
        let p = spectral(Scalar::ratio(1, 2));
        let grid = g(2);
        let zero = EnlargedPoint::from_index(LatticeIndex { l1: 0, l2: 0 });
        assert_eq!(u_map(&p, grid, &zero, Direction::Forward), zero);
        let y = EnlargedPoint::from_index(LatticeIndex { l1: 1, l2: 0 });
        let u = u_map(&p, grid, &y, Direction::Forward);
        assert_eq!(u.y1(), &Scalar::ratio(3, 2));
        assert_eq!(u.y2(), &Scalar::ratio(1, 2));
        assert_eq!(u_map(&p, grid, &u, Direction::Backward), y);
    }

    #[test]
    fn v_step_examples() {
        let p = spectral(Scalar::ratio(1, 2));
        let grid = g(2);
        let l = |a, b| LatticeIndex { l1: a, l2: b };
        assert_eq!(
            v_step(&p, grid, l(1, 0), Direction::Forward).unwrap(),
            l(1, 0)
        );
        assert_eq!(
            v_step(&p, grid, l(1, 1), Direction::Forward).unwrap(),
            l(0, 1)
        );
        let cat = spectral(Scalar::integer(1));
        assert_eq!(
            v_step(&cat, g(5), l(1, 1), Direction::Forward).unwrap(),
            l(3, 2)
        );
    }

    #[test]
    fn permutation_table_half() {
        let p = spectral(Scalar::ratio(1, 2));
        let grid = g(2);
        let perm = build_permutation(&p, grid).unwrap();
        let expected = [
            ((0, 0), (0, 0)),
            ((1, 0), (1, 0)),
            ((0, 1), (1, 1)),
            ((1, 1), (0, 1)),
        ];
        for ((a, b), (c, d)) in expected {
            let src = LatticeIndex { l1: a, l2: b };
            assert_eq!(evolve_index(&perm, src, 1), LatticeIndex { l1: c, l2: d });
        }
    }

    #[test]
    fn integer_alpha_is_matrix_action() {
        for a in [-3i64, -1, 0, 1, 2, 5] {
            let p = spectral(Scalar::integer(a));
            for n in [1usize, 2, 7, 16, 64] {
                let grid = g(n);
                let perm = build_permutation(&p, grid).unwrap();
                for i in 0..grid.cal_n() {
                    let l = grid.unflat(i);
                    let (x, y) = (l.l1 as i64, l.l2 as i64);
                    let m = grid.index((1 + a) * x + y, a * x + y);
                    assert_eq!(grid.unflat(perm.forward()[i] as usize), m);
                }
            }
        }
    }

    #[test]
    fn evolve_index_examples() {
        let cat = spectral(Scalar::integer(1));
        let grid = g(5);
        let perm = build_permutation(&cat, grid).unwrap();
        let l = LatticeIndex { l1: 1, l2: 1 };
        assert_eq!(evolve_index(&perm, l, 0), l);
        assert_eq!(evolve_index(&perm, l, 2), LatticeIndex { l1: 3, l2: 0 });
        assert_eq!(evolve_index(&perm, evolve_index(&perm, l, 7), -7), l);
    }

    #[test]
    fn bijection_sanity() {
        for a in alphas() {
            let p = spectral(a);
            for n in [2usize, 3, 5, 8, 16, 64] {
                let perm = build_permutation(&p, g(n)).unwrap();
                for (i, &f) in perm.forward().iter().enumerate() {
                    assert_eq!(perm.inverse()[f as usize] as usize, i);
                }
            }
        }
    }

    #[test]
    fn integer_kernel_matches_scalar_route() {
        for a in alphas().into_iter().chain([
            Scalar::ratio(1, 10),
            Scalar::ratio(-7, 3),
            Scalar::ratio(11, 4),
        ]) {
            let p = spectral(a);
            for n in [1usize, 3, 10, 17] {
                let grid = g(n);
                for i in 0..grid.cal_n() {
                    let l = grid.unflat(i);
                    for dir in [Direction::Forward, Direction::Backward] {
                        assert_eq!(
                            v_step(&p, grid, l, dir).unwrap(),
                            v_step_via_u_map(&p, grid, l, dir)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn float_kernel_agrees_away_from_boundaries() {
        let exact = spectral(Scalar::ratio(3, 2));
        let float = spectral(Scalar::float(std::f64::consts::SQRT_2));
        let grid = g(12);
        let pf = build_permutation(&float, grid).unwrap();
        for (i, &f) in pf.forward().iter().enumerate() {
            assert_eq!(pf.inverse()[f as usize] as usize, i);
        }
        // With a float α equal to a dyadic rational the float kernel sees exact integers.
        let dy = spectral(Scalar::float(1.5));
        assert_eq!(
            build_permutation(&dy, grid).unwrap(),
            build_permutation(&exact, grid).unwrap()
        );
    }

    #[test]
    fn float_kernel_refuses_near_boundary() {
        let p = spectral(Scalar::float(0.5 + 1e-12));
        let err = v_step(&p, g(4), LatticeIndex { l1: 2, l2: 0 }, Direction::Forward).unwrap_err();
        assert!(matches!(err, Error::BoundaryAmbiguity { .. }));
    }

    #[test]
    fn nonpositive_grid_rejected() {
        assert!(GridSize::new(0).is_err());
    }

    #[test]
    fn ket_overlap_examples() {
        let p = spectral(Scalar::ratio(1, 2));
        let grid = g(2);
        let x = TorusPoint::from_f64(0.3, 0.7);
        assert_eq!(ket_overlap(&p, grid, &x, &x, 0).unwrap(), 1);
        let x = TorusPoint::from_f64(0.1, 0.4);
        let y = TorusPoint::from_f64(0.6, 0.55);
        assert_eq!(nearest_lattice(grid, &x), LatticeIndex { l1: 0, l2: 1 });
        assert_eq!(nearest_lattice(grid, &y), LatticeIndex { l1: 1, l2: 1 });
        assert_eq!(ket_overlap(&p, grid, &x, &y, 1).unwrap(), 1);
        let grid = g(16);
        let a = TorusPoint::from_f64(0.1, 0.1);
        let b = TorusPoint::from_f64(0.3, 0.2);
        assert_eq!(ket_overlap(&p, grid, &a, &b, 0).unwrap(), 0);
    }

    #[test]
    fn static_localization_exhaustive() {
        for n in [4usize, 8, 16, 32] {
            let grid = g(n);
            let m = 4 * n;
            let pts: Vec<[f64; 2]> = (0..m * m)
                .map(|k| {
                    [
                        ((k % m) as f64 + 0.5) / m as f64,
                        ((k / m) as f64 + 0.5) / m as f64,
                    ]
                })
                .collect();
            let cells: Vec<LatticeIndex> =
                pts.iter().map(|&x| nearest_lattice_xy(grid, x)).collect();
            let limit = 2f64.sqrt() / n as f64;
            for (i, &x) in pts.iter().enumerate() {
                for (k, &y) in pts.iter().enumerate() {
                    if torus_distance_xy(x, y) > limit {
                        assert_ne!(cells[i], cells[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn cells_partition_exactly() {
        // Each half-open cell [ℓ/N - 1/2N, ℓ/N + 1/2N) maps to ℓ at its lower corner,
        // and its upper corner belongs to the next cell.
        for n in [1i64, 2, 5, 8] {
            let grid = g(n as usize);
            for l1 in 0..n {
                for l2 in 0..n {
                    let lo = TorusPoint::from_ratios((2 * l1 - 1, 2 * n), (2 * l2 - 1, 2 * n));
                    let hi = TorusPoint::from_ratios((2 * l1 + 1, 2 * n), (2 * l2 + 1, 2 * n));
                    assert_eq!(nearest_lattice(grid, &lo), grid.index(l1, l2));
                    assert_eq!(nearest_lattice(grid, &hi), grid.index(l1 + 1, l2 + 1));
                }
            }
        }
    }

    #[test]
    fn cell_diameter_bound() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        for n in [3usize, 16, 101] {
            let grid = g(n);
            let bound = 1.0 / (2f64.sqrt() * n as f64) + 1e-15;
            for _ in 0..100_000 {
                let x = [rng.gen::<f64>(), rng.gen::<f64>()];
                let c = grid.point_xy(nearest_lattice_xy(grid, x));
                assert!(torus_distance_xy(x, c) <= bound);
            }
        }
    }

    proptest! {
        #[test]
        fn v_step_round_trip(l1 in 0usize..50, l2 in 0usize..50, k in 0usize..5, n in 1usize..50) {
            let p = spectral(alphas()[k].clone());
            let grid = g(n);
            let l = LatticeIndex { l1: l1 % n, l2: l2 % n };
            let f = v_step(&p, grid, l, Direction::Forward).unwrap();
            prop_assert_eq!(v_step(&p, grid, f, Direction::Backward).unwrap(), l);
        }

        #[test]
        fn evolution_is_group_action(i in 0usize..256, j in -6i64..6) {
            let p = spectral(Scalar::ratio(3, 2));
            let grid = g(16);
            let perm = build_permutation(&p, grid).unwrap();
            let l = grid.unflat(i);
            prop_assert_eq!(evolve_index(&perm, evolve_index(&perm, l, j), -j), l);
        }
    }
}
