//! Certified upper and lower bounds on the Kobayashi distance.
//!
//! Upper bounds push a model domain (strip, annulus, punctured polydisc, disc) into `D`
//! through an explicit holomorphic map whose image is certified to lie in `D`. Lower
//! bounds map `D` into the unit disc by a monomial.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{
    self, d_abs, d_log, dot, is_interior, log_membership, norm, LogConstraint, ModuliPoint,
    ReinhardtDomainSpec,
};
use crate::error::{Error, Result};
use crate::geometry::{
    annulus_distance, disc_distance, poincare_distance, punctured_disc_distance, strip_distance,
};

/// Auxiliary constant of the inset used when the boundary target is the origin.
pub const EPS_PRIME: f64 = 0.4;
/// Relative safety margin applied to the concavity inset bound.
const INSET_SAFETY: f64 = 1e-6;
const PARALLELEPIPED_SAMPLES: usize = 1000;
const SEGMENT_SAMPLES: usize = 64;
const SAMPLE_SEED: u64 = 0x6b6f_6261;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

/// A check performed to certify a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationCheck {
    pub name: String,
    /// Number of sampled points, or 0 for an exact check.
    pub samples: usize,
    pub violations: usize,
}

impl CertificationCheck {
    fn exact(name: &str) -> Self {
        Self { name: name.into(), samples: 0, violations: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub direction: Direction,
    pub construction: String,
    /// Inset actually used by strip constructions.
    pub tilde_d: Option<f64>,
    pub strip: Option<(f64, f64)>,
    pub certification: Vec<CertificationCheck>,
}

impl BoundResult {
    fn new(value: f64, direction: Direction, construction: &str) -> Self {
        Self {
            value,
            direction,
            construction: construction.into(),
            tilde_d: None,
            strip: None,
            certification: Vec::new(),
        }
    }
}

fn positive_log(spec: &ReinhardtDomainSpec, r: &[f64], what: &str) -> Result<Vec<f64>> {
    if r.len() != spec.dim() {
        return Err(Error::Precondition(format!("{what} has dimension {}, expected {}", r.len(), spec.dim())));
    }
    if r.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Precondition(format!("{what} = {r:?} must have positive moduli")));
    }
    if !is_interior(spec, r) {
        return Err(Error::Precondition(format!("{what} = {r:?} is not interior")));
    }
    Ok(r.iter().map(|v| v.ln()).collect())
}

fn converged_d_log(spec: &ReinhardtDomainSpec, x: &[f64]) -> Result<f64> {
    let sol = d_log(spec, x)?;
    if !sol.converged {
        return Err(Error::NonConvergence(format!("d_log at {x:?}")));
    }
    Ok(sol.distance)
}

fn converged_d_abs(spec: &ReinhardtDomainSpec, r: &[f64]) -> Result<f64> {
    let sol = d_abs(spec, &ModuliPoint::new(r.to_vec())?)?;
    if !sol.converged {
        return Err(Error::NonConvergence(format!("d_abs at {r:?}")));
    }
    Ok(sol.distance)
}

/// Effective inset of the parallelepiped construction before clamping.
pub fn raw_inset(spec: &ReinhardtDomainSpec, zeta0: &[f64], z: &[f64]) -> Result<f64> {
    let d = converged_d_abs(spec, z)?;
    if zeta0.iter().all(|&v| v == 0.0) {
        let eps2 = EPS_PRIME * converged_d_log(spec, &vec![0.0; spec.dim()])?;
        Ok(eps2 * d / norm(z))
    } else {
        Ok(d / (3.0 * (norm(zeta0) + 1.0)))
    }
}

/// Upper bound on `k_D(1, z)` from a strip mapped onto a parallelepiped around the
/// segment `[0, log z]` of the log image.
///
/// The domain must already be rescaled so that the all-ones point is interior.
pub fn parallelepiped_upper(spec: &ReinhardtDomainSpec, zeta0: &[f64], z: &[f64]) -> Result<BoundResult> {
    let n = spec.dim();
    let origin = vec![0.0; n];
    if !(log_membership(spec, &origin) < 0.0) {
        return Err(Error::Precondition("the all-ones point is not interior; rescale first".into()));
    }
    if zeta0.len() != n {
        return Err(Error::Precondition("zeta0 has the wrong dimension".into()));
    }
    let lz = positive_log(spec, z, "z")?;
    if lz.iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate("z is the base point".into()));
    }
    let raw = raw_inset(spec, zeta0, z)?;
    let rho = converged_d_log(spec, &origin)?.min(converged_d_log(spec, &lz)?) * (1.0 - INSET_SAFETY);

    let mut best: Option<(f64, usize, f64, (f64, f64))> = None;
    for j in (0..n).filter(|&j| lz[j] != 0.0) {
        let ratio_norm = (0..n)
            .filter(|&i| i != j)
            .map(|i| (lz[i] / lz[j]).powi(2))
            .sum::<f64>()
            .sqrt();
        let k = 1.0 + ((n - 1) as f64).sqrt() + ratio_norm;
        let tilde = raw.min(rho / k);
        let lo = lz[j].min(0.0) - tilde;
        let hi = lz[j].max(0.0) + tilde;
        let v = strip_distance(Complex64::new(0.0, 0.0), Complex64::new(lz[j], 0.0), lo, hi)?;
        if best.map_or(true, |b| v < b.0) {
            best = Some((v, j, tilde, (lo, hi)));
        }
    }
    let (value, j, tilde, strip) = best.expect("some coordinate of log z is nonzero");

    let violations = sample_parallelepiped(spec, &lz, j, tilde, PARALLELEPIPED_SAMPLES);
    if violations > 0 {
        return Err(Error::Certification(format!(
            "{violations} of {PARALLELEPIPED_SAMPLES} parallelepiped samples left the log image"
        )));
    }
    let mut res = BoundResult::new(value, Direction::Upper, "parallelepiped");
    res.tilde_d = Some(tilde);
    res.strip = Some(strip);
    res.certification.push(CertificationCheck {
        name: "parallelepiped inside log image".into(),
        samples: PARALLELEPIPED_SAMPLES,
        violations,
    });
    Ok(res)
}

/// Samples the log image of the parallelepiped with pivot `j` and counts the points
/// outside the log image of the domain.
pub fn sample_parallelepiped(spec: &ReinhardtDomainSpec, lz: &[f64], j: usize, tilde: f64, count: usize) -> usize {
    let n = lz.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let lo = lz[j].min(0.0) - tilde;
    let hi = lz[j].max(0.0) + tilde;
    let mut violations = 0;
    for _ in 0..count {
        let s = rng.gen_range(lo..hi);
        let y: Vec<f64> = (0..n)
            .map(|i| {
                if i == j {
                    s
                } else {
                    lz[i] / lz[j] * s + rng.gen_range(-tilde..tilde)
                }
            })
            .collect();
        if !(log_membership(spec, &y) < 0.0) {
            violations += 1;
        }
    }
    violations
}

/// Upper bound on `k_D(z0, z)` from the strip over the extended segment between the
/// log points.
pub fn interval_upper(spec: &ReinhardtDomainSpec, z0: &[f64], z: &[f64]) -> Result<BoundResult> {
    let l0 = positive_log(spec, z0, "z0")?;
    let lz = positive_log(spec, z, "z")?;
    let diff: Vec<f64> = lz.iter().zip(&l0).map(|(a, b)| a - b).collect();
    let mut m = norm(&diff);
    let degenerate = m == 0.0;
    if degenerate {
        m = f64::EPSILON;
    }
    let eps = converged_d_log(spec, &l0)? / (2.0 * m);
    let delta = converged_d_log(spec, &lz)? / (2.0 * m);
    let mut violations = 0;
    for k in 0..SEGMENT_SAMPLES {
        let t = -eps + (k as f64 + 0.5) / SEGMENT_SAMPLES as f64 * (1.0 + eps + delta);
        let x: Vec<f64> = l0.iter().zip(&diff).map(|(a, d)| a + t * d).collect();
        if !(log_membership(spec, &x) < 0.0) {
            violations += 1;
        }
    }
    if violations > 0 {
        return Err(Error::Certification(format!("{violations} segment samples left the log image")));
    }
    let value = strip_distance(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), -eps, 1.0 + delta)?;
    let mut res = BoundResult::new(value, Direction::Upper, "interval");
    res.strip = Some((-eps, 1.0 + delta));
    res.certification.push(CertificationCheck {
        name: "extended segment inside log image".into(),
        samples: SEGMENT_SAMPLES,
        violations,
    });
    if degenerate {
        res.certification.push(CertificationCheck::exact("coincident points"));
    }
    Ok(res)
}

/// Upper bound on the distance between `z0` and its torus rotate by `thetas`,
/// through a product of annuli around `z0`.
pub fn torus_correction(spec: &ReinhardtDomainSpec, z0: &[f64], thetas: &[f64]) -> Result<BoundResult> {
    let l0 = positive_log(spec, z0, "z0")?;
    if thetas.len() != z0.len() {
        return Err(Error::InvalidArgument("thetas has the wrong dimension".into()));
    }
    let r = converged_d_log(spec, &l0)? / (spec.dim() as f64).sqrt();
    let mut value: f64 = 0.0;
    for (j, &theta) in thetas.iter().enumerate() {
        if theta == 0.0 {
            continue;
        }
        let a = Complex64::new(z0[j], 0.0);
        let b = Complex64::from_polar(z0[j], theta);
        value = value.max(annulus_distance(a, b, z0[j] * (-r).exp(), z0[j] * r.exp())?);
    }
    let mut res = BoundResult::new(value, Direction::Upper, "torus");
    res.certification.push(CertificationCheck::exact("annulus box inside log-image ball"));
    Ok(res)
}

/// Exact supremum of a constraint over a box `[lo_j, hi_j]`, where `lo_j` may be `-∞`.
fn box_sup(c: &LogConstraint, lo: &[f64], hi: &[f64]) -> f64 {
    let n = lo.len();
    // convex function: the supremum is attained at a vertex (or a limit of one)
    let mut best = f64::NEG_INFINITY;
    for mask in 0u64..(1u64 << n) {
        let mut exps = Vec::with_capacity(c.terms.len());
        for t in &c.terms {
            let mut e = t.b;
            let mut vanished = false;
            for j in 0..n {
                let x = if mask >> j & 1 == 1 { hi[j] } else { lo[j] };
                if t.alpha[j] == 0.0 {
                    continue;
                }
                if x == f64::NEG_INFINITY {
                    if t.alpha[j] > 0.0 {
                        vanished = true;
                    } else {
                        return f64::INFINITY;
                    }
                } else {
                    e += t.alpha[j] * x;
                }
            }
            if !vanished {
                exps.push(e);
            }
        }
        best = best.max(domain::log_sum_exp(&exps));
    }
    best
}

fn polydisc_fits(spec: &ReinhardtDomainSpec, zeta0: &[f64], r: f64) -> bool {
    let n = spec.dim();
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    for j in 0..n {
        if zeta0[j] == 0.0 {
            lo[j] = f64::NEG_INFINITY;
            hi[j] = r.ln();
        } else {
            if r > zeta0[j] && !spec.axis_included()[j] {
                // the disc factor would contain a point of the excluded axis
                return false;
            }
            lo[j] = if r < zeta0[j] { (zeta0[j] - r).ln() } else { f64::NEG_INFINITY };
            hi[j] = (zeta0[j] + r).ln();
        }
    }
    spec.constraints().iter().all(|c| box_sup(c, &lo, &hi) < 0.0)
}

/// Largest `r ≤ rmax` (up to bisection accuracy) such that the punctured polydisc
/// `P(ζ0, r) ∩ C*^n` lies in `D`, with discs `D(ζ0_j, r)` off the zero set of `ζ0` and
/// discs `D(0, r)` on it.
pub fn polydisc_inclusion_radius(spec: &ReinhardtDomainSpec, zeta0: &[f64], rmax: f64) -> Result<f64> {
    if zeta0.len() != spec.dim() || zeta0.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::Precondition(format!("invalid zeta0 {zeta0:?}")));
    }
    if !(rmax > 0.0) {
        return Err(Error::InvalidArgument(format!("rmax must be positive, got {rmax}")));
    }
    if polydisc_fits(spec, zeta0, rmax) {
        return Ok(rmax);
    }
    let mut lo = rmax;
    for _ in 0..60 {
        lo *= 0.5;
        if polydisc_fits(spec, zeta0, lo) {
            break;
        }
    }
    if !polydisc_fits(spec, zeta0, lo) {
        return Err(Error::ZeroRadius(zeta0.to_vec()));
    }
    let mut hi = (2.0 * lo).min(rmax);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if polydisc_fits(spec, zeta0, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Default bisection ceiling for the punctured-polydisc radius.
pub fn default_rmax(zeta0: &[f64]) -> f64 {
    10.0 * (1.0 + zeta0.iter().cloned().fold(0.0, f64::max))
}

/// Upper bound on `k_D(z0, z)` through the product of discs and punctured discs
/// inscribed around a boundary point `ζ0` whose zero set consists of excluded axes.
pub fn punctured_polydisc_upper(
    spec: &ReinhardtDomainSpec,
    zeta0: &[f64],
    z0: &[f64],
    z: &[f64],
) -> Result<BoundResult> {
    let n = spec.dim();
    if z0.len() != n || z.len() != n || zeta0.len() != n {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    if let Some(j) = (0..n).find(|&j| zeta0[j] == 0.0 && spec.axis_included()[j]) {
        return Err(Error::Precondition(format!("zeta0 vanishes on the included axis {}", j + 1)));
    }
    let r = polydisc_inclusion_radius(spec, zeta0, default_rmax(zeta0))?;
    let mut value: f64 = 0.0;
    for j in 0..n {
        let (a, b) = (Complex64::new(z0[j], 0.0), Complex64::new(z[j], 0.0));
        let v = if zeta0[j] == 0.0 {
            if !(z0[j] > 0.0 && z0[j] < r && z[j] > 0.0 && z[j] < r) {
                return Err(Error::Precondition(format!("coordinate {} is outside the punctured disc of radius {r}", j + 1)));
            }
            punctured_disc_distance(a, b, r)?
        } else {
            let c = Complex64::new(zeta0[j], 0.0);
            if !((a - c).norm() < r && (b - c).norm() < r) {
                return Err(Error::Precondition(format!("coordinate {} is outside the disc of radius {r}", j + 1)));
            }
            disc_distance(a, b, c, r)?
        };
        value = value.max(v);
    }
    let mut res = BoundResult::new(value, Direction::Upper, "punctured-polydisc");
    res.certification.push(CertificationCheck::exact("vertex supremum of every constraint"));
    Ok(res)
}

fn monomial_value(a: &[i64], log_c: f64, r: &[f64]) -> Result<f64> {
    let mut e = -log_c;
    for (j, (&aj, &rj)) in a.iter().zip(r).enumerate() {
        if aj == 0 {
            continue;
        }
        if rj == 0.0 {
            if aj > 0 {
                return Ok(0.0);
            }
            return Err(Error::Precondition(format!("negative exponent on vanishing coordinate {}", j + 1)));
        }
        e += aj as f64 * rj.ln();
    }
    Ok(e.exp())
}

/// Sampled check that the halfspace `<A, x> < logC` contains the log image: boundary
/// points along rays from the witness.
fn halfspace_violations(spec: &ReinhardtDomainSpec, af: &[f64], log_c: f64, rays: usize) -> usize {
    let n = spec.dim();
    let w = spec.witness_log();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 0xa11);
    let mut violations = 0;
    for _ in 0..rays {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // furthest point of the log image along v, or a far point if unbounded
        let (mut lo, mut hi) = (0.0, 1.0);
        while hi < 1e6 && log_membership(spec, &axpy(w, hi, &v)) < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if log_membership(spec, &axpy(w, mid, &v)) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if dot(af, &axpy(w, lo, &v)) > log_c + 1e-9 {
            violations += 1;
        }
    }
    violations
}

fn axpy(x: &[f64], s: f64, v: &[f64]) -> Vec<f64> {
    x.iter().zip(v).map(|(a, b)| a + s * b).collect()
}

fn affine_halfspace_exact(spec: &ReinhardtDomainSpec, af: &[f64], log_c: f64) -> bool {
    let an = norm(af);
    spec.constraints().iter().any(|c| {
        let t = &c.terms[0];
        let tn = norm(&t.alpha);
        if tn == 0.0 {
            return false;
        }
        let lambda = dot(af, &t.alpha) / (tn * tn);
        let dev = af.iter().zip(&t.alpha).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt();
        lambda > 0.0 && dev <= 1e-12 * an && log_c >= -lambda * t.b
    })
}

/// Lower bound on `k_D(z0, z)` from the monomial map `z ↦ z^A / C` into the unit disc.
pub fn monomial_lower(
    spec: &ReinhardtDomainSpec,
    a: &[i64],
    log_c: f64,
    z0: &[f64],
    z: &[f64],
) -> Result<BoundResult> {
    let n = spec.dim();
    if a.len() != n || z0.len() != n || z.len() != n {
        return Err(Error::Precondition("dimension mismatch".into()));
    }
    if let Some(j) = (0..n).find(|&j| a[j] < 0 && spec.axis_included()[j]) {
        return Err(Error::Certification(format!("negative exponent on included axis {}", j + 1)));
    }
    for (p, what) in [(z0, "z0"), (z, "z")] {
        if !is_interior(spec, p) {
            return Err(Error::Precondition(format!("{what} = {p:?} is not interior")));
        }
    }
    let af: Vec<f64> = a.iter().map(|&v| v as f64).collect();
    let check = if spec.is_affine() && affine_halfspace_exact(spec, &af, log_c) {
        CertificationCheck::exact("halfspace parallel to a defining constraint")
    } else {
        let rays = 256;
        let violations = halfspace_violations(spec, &af, log_c, rays);
        if violations > 0 {
            return Err(Error::Certification(format!(
                "{violations} boundary samples violate <A, x> < logC"
            )));
        }
        CertificationCheck { name: "halfspace contains sampled boundary".into(), samples: rays, violations }
    };
    let u0 = monomial_value(a, log_c, z0)?;
    let u = monomial_value(a, log_c, z)?;
    if !(u0 < 1.0 && u < 1.0) {
        return Err(Error::Certification(format!("monomial values ({u0}, {u}) leave the unit disc")));
    }
    let value = poincare_distance(Complex64::new(u0, 0.0), Complex64::new(u, 0.0))?;
    let mut res = BoundResult::new(value, Direction::Lower, "monomial");
    res.certification.push(check);
    Ok(res)
}

/// Upper bound on `k_D(F(λ0), F(λ1))` for the monomial disc `F(λ)_j = c_j λ^{m_j}`
/// defined on `|λ| < s`. A zero coefficient freezes the coordinate at 0.
pub fn analytic_disc_upper(
    spec: &ReinhardtDomainSpec,
    c: &[f64],
    m: &[u32],
    s: f64,
    lam0: Complex64,
    lam1: Complex64,
) -> Result<BoundResult> {
    let n = spec.dim();
    if c.len() != n || m.len() != n {
        return Err(Error::InvalidArgument("coefficient or exponent vector has the wrong dimension".into()));
    }
    if c.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) || !(s > 0.0) {
        return Err(Error::InvalidArgument("coefficients must be nonnegative and s positive".into()));
    }
    if !(lam0.norm() < s && lam1.norm() < s) {
        return Err(Error::Precondition(format!("disc points must satisfy |λ| < {s}")));
    }
    let active: Vec<usize> = (0..n).filter(|&j| c[j] > 0.0).collect();
    if active.is_empty() {
        return Err(Error::Inclusion("every coordinate is frozen at 0".into()));
    }
    for j in 0..n {
        let vanishes = c[j] == 0.0 || m[j] > 0;
        if vanishes && !spec.axis_included()[j] {
            return Err(Error::Inclusion(format!("coordinate {} vanishes but its axis is excluded", j + 1)));
        }
    }
    let slice = if active.len() == n { spec.clone() } else { domain::restrict_to_axes(spec, &active)? };
    let mf: Vec<f64> = active.iter().map(|&j| m[j] as f64).collect();
    let end: Vec<f64> = active.iter().map(|&j| c[j].ln() + m[j] as f64 * s.ln()).collect();
    for (k, con) in slice.constraints().iter().enumerate() {
        let slopes: Vec<f64> = con.terms.iter().map(|t| dot(&t.alpha, &mf)).collect();
        if slopes.iter().any(|&v| v < 0.0) {
            return Err(Error::Inclusion(format!("constraint {k} grows as λ → 0")));
        }
        let g = domain::lse_margin(con, &end);
        let increasing = slopes.iter().any(|&v| v > 0.0);
        if !(g < 0.0 || (g <= 0.0 && increasing)) {
            return Err(Error::Inclusion(format!("constraint {k} has margin {g} on |λ| = {s}")));
        }
    }
    let centre: Vec<f64> = (0..n).map(|j| if m[j] > 0 { 0.0 } else { c[j] }).collect();
    if !is_interior(spec, &centre) {
        return Err(Error::Inclusion(format!("F(0) = {centre:?} is not interior")));
    }
    let value = disc_distance(lam0, lam1, Complex64::new(0.0, 0.0), s)?;
    let mut res = BoundResult::new(value, Direction::Upper, "analytic-disc");
    res.certification.push(CertificationCheck::exact("monotone log-sum-exp along the disc ray"));
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::domain::rescale;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn parallelepiped_one_dimensional_example() {
        let spec = rescale(&catalog::unit_disc(), &[1f64.exp()]).unwrap();
        let e = 1f64.exp();
        let r = parallelepiped_upper(&spec, &[e], &[2.0]).unwrap();
        // raw inset (e - 2) / (3 (e + 1)), evaluated with mpmath
        let tilde = 0.0643919119633382;
        assert!((r.tilde_d.unwrap() - tilde).abs() < 1e-12);
        let expected = strip_distance(c(0.0), c(2f64.ln()), -tilde, 2f64.ln() + tilde).unwrap();
        assert!((r.value - expected).abs() < 1e-12);
        assert_eq!(r.certification[0].violations, 0);
        assert_eq!(r.direction, Direction::Upper);
    }

    #[test]
    fn parallelepiped_skips_unit_coordinate() {
        let spec = rescale(&catalog::bidisc(), &[2.0, 2.0]).unwrap();
        let r = parallelepiped_upper(&spec, &[2.0, 1.0], &[1.5, 1.0]).unwrap();
        let (lo, hi) = r.strip.unwrap();
        assert!(lo < 0.0 && hi > 1.5f64.ln());
        assert!(matches!(
            parallelepiped_upper(&spec, &[2.0, 1.0], &[1.0, 1.0]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn interval_example() {
        let spec = rescale(&catalog::bidisc(), &[1f64.exp(), 1f64.exp()]).unwrap();
        let r = interval_upper(&spec, &[1.0, 1.0], &[2.0, 2.0]).unwrap();
        let m = 2f64.sqrt() * 2f64.ln();
        let eps = 1.0 / (2.0 * m);
        let delta = (1.0 - 2f64.ln()) / (2.0 * m);
        assert!((eps - 0.5101).abs() < 1e-4 && (delta - 0.1566).abs() < 1e-4);
        let expected = strip_distance(c(0.0), c(1.0), -eps, 1.0 + delta).unwrap();
        assert!((r.value - expected).abs() < 1e-12);
        let same = interval_upper(&spec, &[2.0, 2.0], &[2.0, 2.0]).unwrap();
        assert!(same.value < 1e-12);
        assert_eq!(same.certification.last().unwrap().name, "coincident points");
    }

    #[test]
    fn torus_examples() {
        let spec = catalog::unit_disc();
        assert_eq!(torus_correction(&spec, &[0.5], &[0.0]).unwrap().value, 0.0);
        let r = 0.5f64.ln().abs();
        let v = torus_correction(&spec, &[0.5], &[std::f64::consts::PI]).unwrap().value;
        let rescaled = torus_correction(&rescale(&spec, &[2.0]).unwrap(), &[1.0], &[std::f64::consts::PI]).unwrap();
        let expected = annulus_distance(c(1.0), c(-1.0), (-r).exp(), r.exp()).unwrap();
        assert!((v - expected).abs() < 1e-12);
        assert!((rescaled.value - expected).abs() < 1e-12);
    }

    #[test]
    fn polydisc_radius_examples() {
        let dp = catalog::disc_times_punctured();
        let r = polydisc_inclusion_radius(&dp, &[0.5, 0.0], 10.0).unwrap();
        assert!(r < 0.5 && r > 0.5 - 1e-12, "{r}");
        let r = polydisc_inclusion_radius(&catalog::bidisc(), &[0.3, 0.3], 10.0).unwrap();
        assert!(r < 0.7 && r > 0.7 - 1e-12, "{r}");
        let spec = ReinhardtDomainSpec::new(
            "neg",
            vec![LogConstraint::affine(vec![0.0, -1.0], -1.0), LogConstraint::affine(vec![1.0, 0.0], 0.0)],
            vec![true, false],
            vec![-1.0, 0.0],
        )
        .unwrap();
        assert!(matches!(
            polydisc_inclusion_radius(&spec, &[0.5, 0.0], 10.0),
            Err(Error::ZeroRadius(_))
        ));
    }

    #[test]
    fn punctured_polydisc_examples() {
        let dp = catalog::disc_times_punctured();
        let z0 = [0.5, 0.2];
        assert_eq!(punctured_polydisc_upper(&dp, &[0.5, 0.0], &z0, &z0).unwrap().value, 0.0);
        let r = polydisc_inclusion_radius(&dp, &[0.5, 0.0], 10.0).unwrap();
        for t in [0.1, 1e-3, 1e-6] {
            let v = punctured_polydisc_upper(&dp, &[0.5, 0.0], &z0, &[0.5, t]).unwrap().value;
            let expected = punctured_disc_distance(c(0.2), c(t), r).unwrap();
            assert!((v - expected).abs() < 1e-12);
            // exact distance of D x D*: the first coordinates agree
            let exact = punctured_disc_distance(c(0.2), c(t), 1.0).unwrap();
            assert!(v >= exact - 1e-9);
        }
    }

    #[test]
    fn monomial_examples() {
        let spec = catalog::product_one();
        let r = monomial_lower(&spec, &[1, 1], 0.0, &[0.5, 0.5], &[0.9, 0.9]).unwrap();
        assert!((r.value - 0.87161621416669730).abs() < 1e-13);
        assert_eq!(r.direction, Direction::Lower);
        let r = monomial_lower(&spec, &[1, 1], 0.0, &[0.5, 0.5], &[0.5, 0.5]).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(matches!(
            monomial_lower(&spec, &[1, -1], 0.0, &[0.5, 0.5], &[0.9, 0.9]),
            Err(Error::Certification(_))
        ));
        assert!(matches!(
            monomial_lower(&spec, &[1, 1], -1.0, &[0.5, 0.5], &[0.9, 0.9]),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn monomial_sampled_certificate_on_d_beta() {
        let spec = catalog::d_beta();
        // |z1| < 1 contains D_beta
        let r = monomial_lower(&spec, &[1, 0], 0.0, &[0.0, 0.1], &[0.5, 0.0]).unwrap();
        assert!((r.value - 0.5f64.atanh()).abs() < 1e-14);
        assert!(r.certification[0].samples > 0);
        assert!(monomial_lower(&spec, &[1, 1], -3.0, &[0.0, 0.1], &[0.5, 0.0]).is_err());
    }

    #[test]
    fn analytic_disc_examples() {
        let spec = catalog::d_beta();
        assert_eq!(
            analytic_disc_upper(&spec, &[1.0, 0.0], &[1, 0], 1.0, c(0.3), c(0.3)).unwrap().value,
            0.0
        );
        let v = analytic_disc_upper(&spec, &[1.0, 0.0], &[1, 0], 1.0, c(0.0), c(0.7)).unwrap().value;
        assert!((v - 0.7f64.atanh()).abs() < 1e-14);
        assert!(matches!(
            analytic_disc_upper(&catalog::bidisc(), &[2.0, 0.5], &[1, 0], 1.0, c(0.0), c(0.5)),
            Err(Error::Inclusion(_))
        ));
        assert!(matches!(
            analytic_disc_upper(&catalog::disc_times_punctured(), &[1.0, 0.0], &[1, 0], 1.0, c(0.0), c(0.5)),
            Err(Error::Inclusion(_))
        ));
    }
}
