//! Reference computations that share no code with the library.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Closed-form Poincaré distance for two real points of the unit disc.
pub fn poincare_real(a: f64, b: f64) -> f64 {
    ((a - b).abs() / (1.0 - a * b)).atanh()
}

/// Distance of the punctured disc `{0 < |w| < radius}` between positive reals.
///
/// Both points lie on one sheet of the logarithm, and on the imaginary axis of the
/// half-plane chart the distance is `½ |ln(y_a / y_b)|`.
pub fn punctured_real(a: f64, b: f64, radius: f64) -> f64 {
    let ya = radius.ln() - a.ln();
    let yb = radius.ln() - b.ln();
    0.5 * (ya / yb).ln().abs()
}

/// Half-plane distance `artanh(|u - v| / |u - conj v|)`, evaluated directly.
pub fn halfplane_direct(u: Complex64, v: Complex64) -> f64 {
    ((u - v).norm() / (u - v.conj()).norm()).atanh()
}

/// Moduli description of a two-dimensional test domain: open-set predicate on
/// `(|r1|, |r2|)` plus the axes that are boundary.
pub struct ModuliShape {
    pub name: &'static str,
    pub inside: fn(f64, f64) -> bool,
    pub excluded_axis: [bool; 2],
    /// Sampling box for random interior points.
    pub extent: f64,
}

pub fn shapes() -> Vec<ModuliShape> {
    vec![
        ModuliShape {
            name: "disc-times-punctured-disc",
            inside: |a, b| a < 1.0 && b < 1.0 && b > 0.0,
            excluded_axis: [false, true],
            extent: 1.0,
        },
        ModuliShape { name: "product-one", inside: |a, b| a * b < 1.0, excluded_axis: [false, false], extent: 3.0 },
        ModuliShape {
            name: "d-beta-half",
            inside: |a, b| a.sqrt() + b.sqrt() < 1.0,
            excluded_axis: [false, false],
            extent: 1.0,
        },
        ModuliShape {
            name: "r-domain",
            inside: |a, b| a < 1.0 && b < 1.0 && a * b.powf(2f64.sqrt()) < 0.5,
            excluded_axis: [false, false],
            extent: 1.0,
        },
    ]
}

impl ModuliShape {
    fn contains(&self, p: [f64; 2]) -> bool {
        let (a, b) = (p[0].abs(), p[1].abs());
        (!self.excluded_axis[0] || a > 0.0) && (!self.excluded_axis[1] || b > 0.0) && (self.inside)(a, b)
    }

    /// First exit parameter of the ray `r + s (cos θ, sin θ)`, scanning at most to `cap`.
    fn exit(&self, r: [f64; 2], theta: f64, step: f64, cap: f64) -> f64 {
        let v = [theta.cos(), theta.sin()];
        let mut limit = cap;
        for j in 0..2 {
            // crossing an excluded axis leaves the domain
            if self.excluded_axis[j] && v[j] < 0.0 {
                limit = limit.min(-r[j] / v[j]);
            }
        }
        let at = |s: f64| [r[0] + s * v[0], r[1] + s * v[1]];
        let mut lo = 0.0;
        let mut s = step;
        while s < limit {
            if !self.contains(at(s)) {
                let mut hi = s;
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if self.contains(at(mid)) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return hi;
            }
            lo = s;
            s += step;
        }
        limit
    }

    /// Brute-force boundary distance: minimum first-exit length over a polar grid of
    /// ray directions around `r`, refined around the best grid directions.
    pub fn boundary_distance(&self, r: [f64; 2], rays: usize, step: f64) -> f64 {
        let mut best = f64::INFINITY;
        let mut values = Vec::with_capacity(rays);
        for k in 0..rays {
            let theta = 2.0 * PI * k as f64 / rays as f64;
            let cap = if best.is_finite() { best + step } else { 1e3 };
            let v = self.exit(r, theta, step, cap);
            best = best.min(v);
            values.push(v);
        }
        let mut order: Vec<usize> = (0..rays).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let h = 2.0 * PI / rays as f64;
        for &k in order.iter().take(6) {
            let centre = 2.0 * PI * k as f64 / rays as f64;
            let sub = 64;
            for i in 0..=sub {
                let theta = centre - h + 2.0 * h * i as f64 / sub as f64;
                best = best.min(self.exit(r, theta, step, best + step));
            }
        }
        best
    }
}
