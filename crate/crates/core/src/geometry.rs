//! Invariant distances on the one-dimensional model domains.
//!
//! All distances use the normalization `p(a, b) = artanh |(a - b) / (1 - conj(b) a)|`
//! on the unit disc, i.e. half the curvature -1 hyperbolic distance. Every formula is
//! evaluated as `ln(1 + x) - ½ ln(1 - x²)` with `1 - x²` obtained from a closed form
//! rather than by subtraction, so values stay accurate for points very close to the
//! boundary of the model domain.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of a planar model domain (disc, half-plane, strip, ...).
pub type HyperbolicPoint = Complex64;

/// Absolute tolerance for validating that a point lies inside a model domain.
pub const POINT_TOL: f64 = 1e-12;

/// `artanh x` given `x² = n / d` and `1 - x² = c / d`, where `ln_d` is `ln d`.
///
/// `c` must be computed without cancellation by the caller.
fn artanh_from_parts(x: f64, ln_d: f64, c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() || !ln_d.is_finite() {
        return Err(Error::PrecisionLoss(x));
    }
    let value = x.ln_1p() + 0.5 * (ln_d - c.ln());
    if !value.is_finite() {
        return Err(Error::PrecisionLoss(x));
    }
    Ok(value.max(0.0))
}

fn artanh_ratio(n: f64, d: f64, c: f64) -> Result<f64> {
    if n == 0.0 || d == 0.0 {
        // coincident points
        return Ok(0.0);
    }
    let x = (n / d).sqrt().min(1.0);
    artanh_from_parts(x, d.ln(), c)
}

fn check_disc_point(a: HyperbolicPoint) -> Result<()> {
    if !(a.norm() < 1.0 - POINT_TOL) {
        return Err(Error::DomainViolation(format!("{a} is not inside the unit disc")));
    }
    Ok(())
}

fn check_halfplane_point(a: HyperbolicPoint) -> Result<()> {
    if !(a.im > POINT_TOL) || !a.re.is_finite() {
        return Err(Error::DomainViolation(format!("{a} is not in the upper half-plane")));
    }
    Ok(())
}

/// Poincaré distance on the unit disc.
pub fn poincare_distance(a: HyperbolicPoint, b: HyperbolicPoint) -> Result<f64> {
    check_disc_point(a)?;
    check_disc_point(b)?;
    let n = (a - b).norm_sqr();
    let d = (Complex64::new(1.0, 0.0) - b.conj() * a).norm_sqr();
    let ra = a.norm();
    let rb = b.norm();
    let c = (1.0 - ra) * (1.0 + ra) * (1.0 - rb) * (1.0 + rb);
    artanh_ratio(n, d, c)
}

/// Distance on the upper half-plane `{Im w > 0}`.
pub fn halfplane_distance(a: HyperbolicPoint, b: HyperbolicPoint) -> Result<f64> {
    check_halfplane_point(a)?;
    check_halfplane_point(b)?;
    let n = (a - b).norm_sqr();
    let d = (a - b.conj()).norm_sqr();
    let c = 4.0 * a.im * b.im;
    artanh_ratio(n, d, c)
}

/// Distance in the vertical strip `{lo < Re λ < hi}`.
///
/// Equivalent to mapping through `λ ↦ exp(πi(λ - lo)/(hi - lo))` to the upper half-plane,
/// but evaluated in strip coordinates so that large imaginary separations neither
/// underflow nor overflow.
pub fn strip_distance(a: HyperbolicPoint, b: HyperbolicPoint, lo: f64, hi: f64) -> Result<f64> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidStrip { lo, hi });
    }
    for p in [a, b] {
        if !(p.re > lo + POINT_TOL && p.re < hi - POINT_TOL) || !p.im.is_finite() {
            return Err(Error::DomainViolation(format!(
                "{p} is not inside the strip ({lo}, {hi})"
            )));
        }
    }
    let width = hi - lo;
    let sa = (a.re - lo) / width;
    let sb = (b.re - lo) / width;
    let half_y = 0.5 * PI * (a.im - b.im) / width;
    let sin_minus = (0.5 * PI * (sa - sb)).sin();
    let sin_plus = (0.5 * PI * (sa + sb)).sin();
    let c = (PI * sa).sin() * (PI * sb).sin();
    if half_y.abs() < 300.0 {
        let sh = half_y.sinh();
        let n = sh * sh + sin_minus * sin_minus;
        let d = sh * sh + sin_plus * sin_plus;
        artanh_ratio(n, d, c)
    } else {
        // sinh²(y) + O(1) with y large: ln d = 2|y| - 2 ln 2 up to e^{-600}
        let ln_d = 2.0 * half_y.abs() - 2.0 * std::f64::consts::LN_2;
        artanh_from_parts(1.0, ln_d, c)
    }
}

/// Distance in the disc of the given center and radius.
pub fn disc_distance(
    a: HyperbolicPoint,
    b: HyperbolicPoint,
    center: HyperbolicPoint,
    radius: f64,
) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("disc radius {radius} must be positive")));
    }
    for p in [a, b] {
        if !((p - center).norm() < radius * (1.0 - POINT_TOL)) {
            return Err(Error::DomainViolation(format!(
                "{p} is not inside the disc D({center}, {radius})"
            )));
        }
    }
    poincare_distance((a - center) / radius, (b - center) / radius)
}

/// Minimizer and value of a deck-translate objective, scanned outwards from `m = 0`.
///
/// Each side stops after two consecutive increases of the objective.
pub fn deck_min_adaptive(objective: impl Fn(i64) -> Result<f64>) -> Result<(i64, f64)> {
    let at_zero = objective(0)?;
    let mut best = (0, at_zero);
    for sign in [1i64, -1] {
        let mut prev = at_zero;
        let mut increases = 0;
        let mut m = 0i64;
        while increases < 2 {
            m += sign;
            let v = objective(m)?;
            if v < best.1 {
                best = (m, v);
            }
            if v > prev {
                increases += 1;
            } else {
                increases = 0;
            }
            prev = v;
            if m.abs() > 1_000_000 {
                return Err(Error::NonConvergence("deck search did not terminate".into()));
            }
        }
    }
    Ok(best)
}

/// Exhaustive minimization of a deck-translate objective over `|m| <= window`.
pub fn deck_min_window(objective: impl Fn(i64) -> Result<f64>, window: i64) -> Result<(i64, f64)> {
    let mut best = (0, objective(0)?);
    for m in (-window..=window).filter(|&m| m != 0) {
        let v = objective(m)?;
        if v < best.1 {
            best = (m, v);
        }
    }
    Ok(best)
}

fn check_punctured(p: HyperbolicPoint, radius: f64) -> Result<()> {
    let r = p.norm();
    if !(r > POINT_TOL && r < radius * (1.0 - POINT_TOL)) {
        return Err(Error::DomainViolation(format!(
            "{p} is not inside the punctured disc of radius {radius}"
        )));
    }
    Ok(())
}

/// Upper half-plane chart of the universal cover of `radius·D*`, for the lift
/// `log p + 2πim`.
fn punctured_chart(p: HyperbolicPoint, radius: f64, m: i64) -> HyperbolicPoint {
    Complex64::new(p.arg() + 2.0 * PI * m as f64, radius.ln() - p.norm().ln())
}

/// Deck-translate objective of the punctured disc: distance between the lifts of
/// `a` and `b + 2πim`.
pub fn punctured_disc_lift_distance(
    a: HyperbolicPoint,
    b: HyperbolicPoint,
    radius: f64,
    m: i64,
) -> Result<f64> {
    halfplane_distance(punctured_chart(a, radius, 0), punctured_chart(b, radius, m))
}

/// Kobayashi distance of the punctured disc `{0 < |w| < radius}`, exact via the
/// exponential covering.
pub fn punctured_disc_distance(a: HyperbolicPoint, b: HyperbolicPoint, radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius {radius} must be positive")));
    }
    check_punctured(a, radius)?;
    check_punctured(b, radius)?;
    deck_min_adaptive(|m| punctured_disc_lift_distance(a, b, radius, m)).map(|(_, v)| v)
}

fn check_annulus(p: HyperbolicPoint, r_in: f64, r_out: f64) -> Result<()> {
    let r = p.norm();
    if !(r > r_in * (1.0 + POINT_TOL) && r < r_out * (1.0 - POINT_TOL)) {
        return Err(Error::DomainViolation(format!(
            "{p} is not inside the annulus ({r_in}, {r_out})"
        )));
    }
    Ok(())
}

/// Deck-translate objective of the annulus: strip distance between `log a` and
/// `log b + 2πim`.
pub fn annulus_lift_distance(
    a: HyperbolicPoint,
    b: HyperbolicPoint,
    r_in: f64,
    r_out: f64,
    m: i64,
) -> Result<f64> {
    let la = Complex64::new(a.norm().ln(), a.arg());
    let lb = Complex64::new(b.norm().ln(), b.arg() + 2.0 * PI * m as f64);
    strip_distance(la, lb, r_in.ln(), r_out.ln())
}

/// Kobayashi distance of the annulus `{r_in < |w| < r_out}`, exact via the covering
/// strip `{ln r_in < Re w < ln r_out}`.
pub fn annulus_distance(
    a: HyperbolicPoint,
    b: HyperbolicPoint,
    r_in: f64,
    r_out: f64,
) -> Result<f64> {
    if !(r_in > 0.0 && r_in < r_out) {
        return Err(Error::InvalidArgument(format!(
            "annulus radii must satisfy 0 < r_in < r_out, got ({r_in}, {r_out})"
        )));
    }
    check_annulus(a, r_in, r_out)?;
    check_annulus(b, r_in, r_out)?;
    deck_min_adaptive(|m| annulus_lift_distance(a, b, r_in, r_out, m)).map(|(_, v)| v)
}
