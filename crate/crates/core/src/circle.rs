//! Minimal enclosing circle of a planar point cloud (Welzl's randomized
//! incremental algorithm, with a fixed shuffle seed for reproducibility).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Relative slack used for containment tests.
const EPS: f64 = 1e-12;

impl Circle {
    fn contains(&self, p: [f64; 2]) -> bool {
        dist(self.center, p) <= self.radius * (1.0 + EPS) + EPS
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn from_two(a: [f64; 2], b: [f64; 2]) -> Circle {
    let center = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    Circle {
        center,
        radius: dist(a, b) / 2.0,
    }
}

fn from_three(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Circle {
    let (bx, by) = (b[0] - a[0], b[1] - a[1]);
    let (cx, cy) = (c[0] - a[0], c[1] - a[1]);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-300 {
        // Collinear: the circle on the farthest pair.
        let candidates = [from_two(a, b), from_two(a, c), from_two(b, c)];
        return candidates
            .into_iter()
            .max_by(|x, y| x.radius.total_cmp(&y.radius))
            .expect("three candidates");
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    Circle {
        center: [a[0] + ux, a[1] + uy],
        radius: ux.hypot(uy),
    }
}

/// The smallest circle containing every point; `None` for an empty cloud.
pub fn minimal_enclosing_circle(points: &[[f64; 2]], seed: u64) -> Option<Circle> {
    let mut pts = points.to_vec();
    pts.shuffle(&mut SplitMix64::seed_from_u64(seed));
    let mut c = Circle {
        center: *pts.first()?,
        radius: 0.0,
    };
    for i in 1..pts.len() {
        if c.contains(pts[i]) {
            continue;
        }
        c = Circle {
            center: pts[i],
            radius: 0.0,
        };
        for j in 0..i {
            if c.contains(pts[j]) {
                continue;
            }
            c = from_two(pts[i], pts[j]);
            for k in 0..j {
                if !c.contains(pts[k]) {
                    c = from_three(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn small_clouds() {
        assert!(minimal_enclosing_circle(&[], 0).is_none());
        let one = minimal_enclosing_circle(&[[1.0, 2.0]], 0).unwrap();
        assert_eq!((one.center, one.radius), ([1.0, 2.0], 0.0));
        let tri = minimal_enclosing_circle(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.1]], 0).unwrap();
        assert_abs_diff_eq!(tri.radius, 1.0, epsilon = 1e-12);
        let eq = minimal_enclosing_circle(&[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]], 1)
            .unwrap();
        assert_abs_diff_eq!(eq.radius, 1.0 / 3f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn circle_samples() {
        let pts: Vec<[f64; 2]> = (0..1000)
            .map(|k| {
                let t = k as f64 * std::f64::consts::TAU / 1000.0;
                [0.3 + 0.05 * t.cos(), 0.7 + 0.05 * t.sin()]
            })
            .collect();
        let c = minimal_enclosing_circle(&pts, 4).unwrap();
        assert_abs_diff_eq!(c.radius, 0.05, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn encloses_and_is_tight(pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..60), seed in 0u64..4) {
            let pts: Vec<[f64; 2]> = pts.into_iter().map(|(a, b)| [a, b]).collect();
            let c = minimal_enclosing_circle(&pts, seed).unwrap();
            for &p in &pts {
                prop_assert!(dist(c.center, p) <= c.radius + 1e-9);
            }
            // Never larger than the circle centred at the bounding-box centre.
            let lo = pts.iter().fold([f64::MAX; 2], |m, p| [m[0].min(p[0]), m[1].min(p[1])]);
            let hi = pts.iter().fold([f64::MIN; 2], |m, p| [m[0].max(p[0]), m[1].max(p[1])]);
            let mid = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
            let naive = pts.iter().map(|&p| dist(mid, p)).fold(0.0, f64::max);
            prop_assert!(c.radius <= naive + 1e-9);
            // At least half the diameter of the cloud.
            let diam = pts.iter().flat_map(|&a| pts.iter().map(move |&b| dist(a, b))).fold(0.0, f64::max);
            prop_assert!(c.radius >= diam / 2.0 - 1e-9);
            let other = minimal_enclosing_circle(&pts, seed + 10).unwrap();
            prop_assert!((other.radius - c.radius).abs() < 1e-9);
        }
    }
}
