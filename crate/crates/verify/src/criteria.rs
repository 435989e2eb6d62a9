use std::f64::consts::{FRAC_PI_6, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use reinhardt::asymptotics::{
    check_theorem, fit_slope, generate_path, sweep, AnalyticDiscConfig, Construction, GeneratedPath, PathKind,
    PathSpec, SweepConfig, SweepRow, Theorem, Thresholds,
};
use reinhardt::bounds::{interval_upper, monomial_lower, parallelepiped_upper, punctured_polydisc_upper, BoundResult};
use reinhardt::domain::{d_abs, rescale, ModuliPoint, ReinhardtDomainSpec};
use reinhardt::geometry::{
    annulus_distance, annulus_lift_distance, deck_min_adaptive, deck_min_window, disc_distance, halfplane_distance,
    poincare_distance, punctured_disc_distance, punctured_disc_lift_distance, strip_distance,
};
use reinhardt::{catalog, Error};

use crate::oracle;

const SEED: u64 = 20_240_607;
const TOL: f64 = 1e-9;

/// Criteria whose bound calls feed the certification tally.
pub const CERTIFYING: [u8; 4] = [4, 5, 6, 8];

/// Randomized inclusion certifications observed while running criteria.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub parallelepiped_calls: usize,
    pub interval_calls: usize,
    pub samples: usize,
    pub violations: usize,
    /// Calls whose sample count differs from the construction's contract.
    pub short_samples: usize,
    /// Calls rejected by their own certification.
    pub rejected: usize,
}

impl Tally {
    fn record(&mut self, res: &reinhardt::Result<BoundResult>) {
        match res {
            Ok(b) => {
                let expected = match b.construction.as_str() {
                    "parallelepiped" => {
                        self.parallelepiped_calls += 1;
                        1000
                    }
                    "interval" => {
                        self.interval_calls += 1;
                        64
                    }
                    _ => return,
                };
                for c in b.certification.iter().filter(|c| c.samples > 0) {
                    self.samples += c.samples;
                    self.violations += c.violations;
                    if c.samples != expected {
                        self.short_samples += 1;
                    }
                }
            }
            Err(Error::Certification(_)) => self.rejected += 1,
            Err(_) => {}
        }
    }
}

pub(crate) fn run_one(id: u8, tally: &mut Tally) -> (bool, String) {
    let out = match id {
        1 => a1(),
        2 => a2(),
        3 => a3(),
        4 => a4(tally),
        5 => a5(tally),
        6 => a6(tally),
        7 => a7(),
        8 => a8(tally),
        9 => a9(),
        _ => return (false, format!("unknown criterion {id}")),
    };
    out.unwrap_or_else(|e| (false, format!("error: {e}")))
}

type Outcome = reinhardt::Result<(bool, String)>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))
}

fn mobius(z: Complex64, p: Complex64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta) * (z - p) / (c(1.0, 0.0) - p.conj() * z)
}

/// Metric axioms and invariance on the disc and half-plane, strip against the
/// exponential chart.
pub fn a1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let mut check = |err: f64| {
        worst = worst.max(err);
        if !(err <= TOL) {
            failures += 1;
        }
    };
    for _ in 0..1000 {
        let (a, b, p) = (disc_point(&mut rng, 0.99), disc_point(&mut rng, 0.99), disc_point(&mut rng, 0.99));
        let theta = rng.gen_range(-PI..PI);
        let ab = poincare_distance(a, b)?;
        let bp = poincare_distance(b, p)?;
        let ap = poincare_distance(a, p)?;
        check(poincare_distance(a, a)?);
        check((ab - poincare_distance(b, a)?).abs());
        check((ap - ab - bp).max(0.0));
        check(if ab > 0.0 { 0.0 } else { 1.0 });
        let q = disc_point(&mut rng, 0.9);
        check((poincare_distance(mobius(a, q, theta), mobius(b, q, theta))? - ab).abs());

        // half-plane: same axioms, invariance under w ↦ (αw + β)/(γw + δ) in SL(2, R)
        let h = |rng: &mut ChaCha8Rng| c(rng.gen_range(-3.0..3.0), rng.gen_range(0.05..3.0));
        let (u, v, w) = (h(&mut rng), h(&mut rng), h(&mut rng));
        let uv = halfplane_distance(u, v)?;
        check(halfplane_distance(u, u)?);
        check((uv - halfplane_distance(v, u)?).abs());
        check((halfplane_distance(u, w)? - uv - halfplane_distance(v, w)?).max(0.0));
        let (al, be, ga) = (rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
        let de = (1.0 + be * ga) / al;
        let g = |w: Complex64| (al * w + be) / (ga * w + de);
        check((halfplane_distance(g(u), g(v))? - uv).abs());
    }
    let mut strip_worst: f64 = 0.0;
    for _ in 0..500 {
        let lo = rng.gen_range(-3.0..1.0);
        let hi = lo + rng.gen_range(0.2..4.0);
        let pt = |rng: &mut ChaCha8Rng| {
            c(lo + (hi - lo) * rng.gen_range(0.01..0.99), rng.gen_range(-2.0..2.0) * (hi - lo))
        };
        let (a, b) = (pt(&mut rng), pt(&mut rng));
        let ours = strip_distance(a, b, lo, hi)?;
        let chart = |l: Complex64| (c(0.0, PI) * (l - lo) / (hi - lo)).exp();
        let err = (ours - oracle::halfplane_direct(chart(a), chart(b))).abs();
        strip_worst = strip_worst.max(err);
        if !(err <= TOL) {
            failures += 1;
        }
    }
    Ok((
        failures == 0,
        format!("1000 triples, 500 strip pairs; worst axiom/invariance error {worst:.1e}, strip error {strip_worst:.1e}"),
    ))
}

/// Covering distances dominate the ambient ones, and the deck search is stable.
pub fn a2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut below = 0;
    let mut unstable = 0;
    for _ in 0..500 {
        let r = rng.gen_range(0.5..2.0);
        let (a, b) = (disc_point(&mut rng, 0.98 * r), disc_point(&mut rng, 0.98 * r));
        if a.norm() < 1e-6 * r || b.norm() < 1e-6 * r {
            continue;
        }
        let covering = punctured_disc_distance(a, b, r)?;
        if covering < disc_distance(a, b, c(0.0, 0.0), r)? - 1e-12 {
            below += 1;
        }
        let obj = |m| punctured_disc_lift_distance(a, b, r, m);
        if !stable(&obj, covering)? {
            unstable += 1;
        }

        let (r_in, r_out): (f64, f64) = (rng.gen_range(0.05..0.8), rng.gen_range(1.0..3.0));
        let ann = |rng: &mut ChaCha8Rng| {
            Complex64::from_polar(r_in * (r_out / r_in).powf(rng.gen_range(0.01..0.99)), rng.gen_range(-PI..PI))
        };
        let (p, q) = (ann(&mut rng), ann(&mut rng));
        let covering = annulus_distance(p, q, r_in, r_out)?;
        if covering < disc_distance(p, q, c(0.0, 0.0), r_out)? - 1e-12 {
            below += 1;
        }
        let obj = |m| annulus_lift_distance(p, q, r_in, r_out, m);
        if !stable(&obj, covering)? {
            unstable += 1;
        }
    }
    Ok((
        below == 0 && unstable == 0,
        format!("1000 pairs: {below} below the ambient disc, {unstable} unstable deck minimizers"),
    ))
}

fn stable(obj: &dyn Fn(i64) -> reinhardt::Result<f64>, adaptive: f64) -> reinhardt::Result<bool> {
    let (m_adaptive, _) = deck_min_adaptive(obj)?;
    let w = 2 * m_adaptive.abs() + 4;
    let (m1, v1) = deck_min_window(obj, w)?;
    let (m2, v2) = deck_min_window(obj, 2 * w)?;
    Ok(m1 == m2 && m1 == m_adaptive && v1 == v2 && v1 == adaptive)
}

/// `d_abs` against a polar-grid brute force with independent moduli predicates.
pub fn a3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut jobs = Vec::new();
    for shape in oracle::shapes() {
        let spec = catalog::by_name(shape.name).ok_or_else(|| Error::InvalidArgument(shape.name.into()))?;
        let mut taken = 0;
        while taken < 50 {
            let r = [rng.gen_range(0.0..shape.extent), rng.gen_range(0.0..shape.extent)];
            if !(r[0] > 0.02 && r[1] > 0.02 && (shape.inside)(r[0], r[1])) {
                continue;
            }
            jobs.push((shape.name, spec.clone(), r));
            taken += 1;
        }
    }
    let shapes = oracle::shapes();
    let results: Vec<reinhardt::Result<(f64, f64)>> = jobs
        .par_iter()
        .map(|(name, spec, r)| {
            let shape = shapes.iter().find(|s| s.name == *name).expect("shape");
            let expected = shape.boundary_distance(*r, 2880, 1e-3);
            let got = d_abs(spec, &ModuliPoint::new(r.to_vec())?)?.distance;
            Ok((got, expected))
        })
        .collect();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for res in results {
        let (got, expected) = res?;
        let rel = (got - expected).abs() / expected;
        worst = worst.max(rel);
        if !(rel <= 1e-3) {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("{} points on 4 domains; {failures} above 1e-3, worst relative error {worst:.1e}", jobs.len())))
}

struct Sandwich {
    pairs: usize,
    lower_violations: usize,
    upper_violations: usize,
    applicable: [usize; 3],
    worst_slack: f64,
}

fn sandwich(
    spec: &ReinhardtDomainSpec,
    exact: impl Fn(&[f64], &[f64]) -> f64,
    pp_target: impl Fn(&[f64], &[f64]) -> Vec<f64>,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
) -> reinhardt::Result<Sandwich> {
    let mut s = Sandwich { pairs: 0, lower_violations: 0, upper_violations: 0, applicable: [0; 3], worst_slack: f64::INFINITY };
    let n = spec.dim();
    while s.pairs < 200 {
        let z0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..0.95)).collect();
        let z: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..0.95)).collect();
        s.pairs += 1;
        let k = exact(&z0, &z);
        let mut lower: f64 = 0.0;
        for j in 0..n {
            let mut a = vec![0i64; n];
            a[j] = 1;
            lower = lower.max(monomial_lower(spec, &a, 0.0, &z0, &z)?.value);
        }
        let slack = k - lower;
        s.worst_slack = s.worst_slack.min(slack);
        if slack < -TOL {
            s.lower_violations += 1;
        }

        let mut uppers = Vec::new();
        let witness = d_abs(spec, &ModuliPoint::new(z.clone())?)?.witness;
        let inv: Vec<f64> = z0.iter().map(|v| 1.0 / v).collect();
        let scaled = rescale(spec, &inv)?;
        let zr: Vec<f64> = z.iter().zip(&z0).map(|(a, b)| a / b).collect();
        let zeta: Vec<f64> = witness.iter().zip(&z0).map(|(a, b)| a / b).collect();
        let par = parallelepiped_upper(&scaled, &zeta, &zr);
        tally.record(&par);
        uppers.push((0, par));
        let int = interval_upper(spec, &z0, &z);
        tally.record(&int);
        uppers.push((1, int));
        uppers.push((2, punctured_polydisc_upper(spec, &pp_target(&z0, &z), &z0, &z)));
        for (i, res) in uppers {
            match res {
                Ok(b) => {
                    s.applicable[i] += 1;
                    let slack = b.value - k;
                    s.worst_slack = s.worst_slack.min(slack);
                    if slack < -TOL {
                        s.upper_violations += 1;
                    }
                }
                Err(Error::Precondition(_)) | Err(Error::ZeroRadius(_)) if i == 2 => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(s)
}

/// Bounds bracket the exact distance on the bidisc and on `D × D*`.
pub fn a4(tally: &mut Tally) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mid = |z0: &[f64], z: &[f64]| -> Vec<f64> { z0.iter().zip(z).map(|(a, b)| 0.5 * (a + b)).collect() };
    let bidisc = sandwich(
        &catalog::bidisc(),
        |z0, z| oracle::poincare_real(z0[0], z[0]).max(oracle::poincare_real(z0[1], z[1])),
        mid,
        &mut rng,
        tally,
    )?;
    let mixed = sandwich(
        &catalog::disc_times_punctured(),
        |z0, z| oracle::poincare_real(z0[0], z[0]).max(oracle::punctured_real(z0[1], z[1], 1.0)),
        |z0, z| vec![0.5 * (z0[0] + z[0]), 0.0],
        &mut rng,
        tally,
    )?;
    let passed = [&bidisc, &mixed].iter().all(|s| s.lower_violations == 0 && s.upper_violations == 0);
    let line = |name: &str, s: &Sandwich| {
        format!(
            "{name}: {} pairs, {} lower / {} upper violations, uses par {} int {} pp {}",
            s.pairs, s.lower_violations, s.upper_violations, s.applicable[0], s.applicable[1], s.applicable[2]
        )
    };
    Ok((
        passed,
        format!(
            "{}; {}; min slack {:.1e}",
            line("bidisc", &bidisc),
            line("D x D*", &mixed),
            bidisc.worst_slack.min(mixed.worst_slack)
        ),
    ))
}

fn rate_summary(rows: &[SweepRow], v: &reinhardt::asymptotics::Verdict) -> String {
    let dmin = rows.iter().map(|r| r.d).fold(f64::INFINITY, f64::min);
    format!(
        "{} rows to d = {dmin:.1e}, slope {:+.4}, window {:.3}",
        rows.len(),
        v.fit.slope,
        v.fit.window_width
    )
}

fn flagged(rows: &[SweepRow]) -> Option<String> {
    rows.iter().find(|r| !r.flags.is_empty()).map(|r| format!("t = {:.3e}: {}", r.t, r.flags.join(";")))
}

fn run_sweep(spec: &ReinhardtDomainSpec, path: &PathSpec, config: SweepConfig) -> reinhardt::Result<(GeneratedPath, Vec<SweepRow>)> {
    let generated = generate_path(spec, path)?;
    let rows = sweep(spec, &generated.points, &config)?;
    Ok((generated, rows))
}

fn config(z0: Vec<f64>, zeta0: Vec<f64>, constructions: Vec<Construction>) -> SweepConfig {
    SweepConfig { z0, zeta0, constructions, monomial: None, disc: None }
}

/// `U_par + log d` stays bounded approaching `(1, 0)` on `D_1/2`.
pub fn a5(tally: &mut Tally) -> Outcome {
    let spec = catalog::d_beta();
    let zeta0 = vec![1.0, 0.0];
    let z0 = vec![0.1, 0.1];
    let path = PathSpec::radial(zeta0.clone(), vec![0.5, 1e-9]).with_schedule(0.2, 0.7, 15);
    let (generated, rows) = run_sweep(&spec, &path, config(z0.clone(), zeta0.clone(), vec![Construction::Parallelepiped]))?;
    if let Some(f) = flagged(&rows) {
        return Ok((false, format!("sweep flagged {f}")));
    }
    let inv: Vec<f64> = z0.iter().map(|v| 1.0 / v).collect();
    let scaled = rescale(&spec, &inv)?;
    let zeta: Vec<f64> = zeta0.iter().zip(&z0).map(|(a, b)| a / b).collect();
    for p in &generated.points {
        let zr: Vec<f64> = p.z.iter().zip(&z0).map(|(a, b)| a / b).collect();
        tally.record(&parallelepiped_upper(&scaled, &zeta, &zr));
    }
    let v = check_theorem(&rows, Theorem::T1, &generated.kind, &zeta0, Thresholds::default())?;
    Ok((v.passed, rate_summary(&rows, &v)))
}

/// `U_int + ½ log d` stays bounded along the normal at `(1, 1)` of `{x1 + x2 < 0}`.
pub fn a6(tally: &mut Tally) -> Outcome {
    let spec = catalog::product_one();
    let zeta0 = vec![1.0, 1.0];
    let z0 = vec![0.5, 0.5];
    let path = PathSpec::new(PathKind::Normal, zeta0.clone());
    let (generated, rows) = run_sweep(&spec, &path, config(z0.clone(), zeta0.clone(), vec![Construction::Interval]))?;
    if let Some(f) = flagged(&rows) {
        return Ok((false, format!("sweep flagged {f}")));
    }
    for p in &generated.points {
        tally.record(&interval_upper(&spec, &z0, &p.z));
    }
    let v = check_theorem(&rows, Theorem::T1star, &generated.kind, &zeta0, Thresholds::default())?;
    Ok((v.passed, rate_summary(&rows, &v)))
}

/// `U_pp - ½ log(-log d)` stays bounded approaching `(0.5, 0)` on `D × D*`.
pub fn a7() -> Outcome {
    let spec = catalog::disc_times_punctured();
    let zeta0 = vec![0.5, 0.0];
    let z0 = vec![0.5, 0.2];
    let path = PathSpec::radial(zeta0.clone(), z0.clone());
    let (generated, rows) =
        run_sweep(&spec, &path, config(z0, zeta0.clone(), vec![Construction::PuncturedPolydisc]))?;
    if let Some(f) = flagged(&rows) {
        return Ok((false, format!("sweep flagged {f}")));
    }
    let thresholds = Thresholds { slope_tol: 0.1, ..Thresholds::default() };
    let v = check_theorem(&rows, Theorem::T9, &generated.kind, &zeta0, thresholds)?;
    Ok((v.passed, format!("{}, {} rows with d > z_2", rate_summary(&rows, &v), v.row_failures)))
}

/// `L_mono + ½ log d` stays bounded along non-tangential paths, and together with
/// `U_int` pins the rate from both sides.
pub fn a8(tally: &mut Tally) -> Outcome {
    let spec = catalog::product_one();
    let zeta0 = vec![1.0, 1.0];
    let z0 = vec![0.5, 0.5];
    let mut passed = true;
    let mut parts = Vec::new();
    for kind in [PathKind::Normal, PathKind::Cone { angle: FRAC_PI_6 }] {
        let path = PathSpec::new(kind.clone(), zeta0.clone());
        let mut cfg = config(z0.clone(), zeta0.clone(), vec![Construction::Interval, Construction::Monomial]);
        cfg.monomial = Some((vec![1, 1], 0.0));
        let (generated, rows) = run_sweep(&spec, &path, cfg)?;
        if let Some(f) = flagged(&rows) {
            passed = false;
            parts.push(format!("{}: sweep flagged {f}", kind.name()));
            continue;
        }
        for p in &generated.points {
            tally.record(&interval_upper(&spec, &z0, &p.z));
        }
        let v = check_theorem(&rows, Theorem::T3, &kind, &zeta0, Thresholds::default())?;
        let upper = check_theorem(&rows, Theorem::T1star, &kind, &zeta0, Thresholds::default())?;
        let gap: Vec<f64> =
            rows.iter().map(|r| r.bounds[&Construction::Interval] - r.bounds[&Construction::Monomial]).collect();
        let inverted = gap.iter().filter(|g| **g < -TOL).count();
        let xs: Vec<f64> = rows.iter().map(|r| -r.logd).collect();
        let gap_fit = fit_slope(&xs, &gap)?;
        let ok = v.passed && upper.passed && inverted == 0 && gap_fit.slope.abs() <= 0.05;
        passed &= ok;
        parts.push(format!(
            "{}: {}; upper slope {:+.4}; gap slope {:+.4}, {inverted} inverted rows",
            kind.name(),
            rate_summary(&rows, &v),
            upper.fit.slope,
            gap_fit.slope
        ));
    }
    Ok((passed, parts.join(" | ")))
}

/// Slope of the analytic disc bound along `(x, 0) → (1, 0)` on `D_1/2`.
pub fn a9() -> Outcome {
    let spec = catalog::d_beta();
    let zeta0 = vec![1.0, 0.0];
    let path = PathSpec::radial(zeta0.clone(), vec![0.0, 0.0]).with_schedule(0.2, 0.5, 12);
    let mut cfg = config(vec![0.0, 0.0], zeta0, vec![Construction::AnalyticDisc]);
    cfg.disc = Some(AnalyticDiscConfig { c: vec![1.0, 0.0], m: vec![1, 0], s: 1.0, lam0: c(0.0, 0.0) });
    let (_, rows) = run_sweep(&spec, &path, cfg)?;
    if let Some(f) = flagged(&rows) {
        return Ok((false, format!("sweep flagged {f}")));
    }
    let xs: Vec<f64> = rows.iter().map(|r| -r.logd).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.bounds[&Construction::AnalyticDisc]).collect();
    let fit = fit_slope(&xs, &ys)?;
    let dmin = rows.iter().map(|r| r.d).fold(f64::INFINITY, f64::min);
    Ok(((fit.slope - 0.25).abs() <= 0.02, format!("{} rows to d = {dmin:.1e}, slope {:.4} (target 0.25)", rows.len(), fit.slope)))
}

/// No sampled certification point of any tallied bound left the domain.
pub fn a10(t: &Tally) -> (bool, String) {
    let passed = t.violations == 0 && t.rejected == 0 && t.short_samples == 0 && t.samples > 0;
    (
        passed,
        format!(
            "{} parallelepiped + {} interval calls, {} samples, {} violations, {} rejected, {} short",
            t.parallelepiped_calls, t.interval_calls, t.samples, t.violations, t.rejected, t.short_samples
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use reinhardt::domain::is_interior;

    #[test]
    fn tally_counts_samples() {
        let spec = catalog::bidisc();
        let mut t = Tally::default();
        t.record(&interval_upper(&spec, &[0.3, 0.3], &[0.6, 0.2]));
        assert_eq!((t.interval_calls, t.samples, t.violations), (1, 64, 0));
        t.record(&Err(Error::Certification("x".into())));
        assert_eq!(t.rejected, 1);
        assert!(!a10(&t).0);
    }

    #[test]
    fn interior_paths() {
        assert!(is_interior(&catalog::d_beta(), &[0.9, 1e-10]));
    }
}
