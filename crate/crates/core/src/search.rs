//! Small numerical kernels shared by the boundary-distance solvers: safeguarded
//! root finding along rays, golden-section refinement and minimization over the
//! unit sphere.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of angles scanned by the planar direction search.
const PLANAR_SCAN: usize = 720;
/// Local minima of the planar scan refined by golden section.
const PLANAR_REFINE: usize = 4;

/// First root of a convex function `h` on `s > 0` with `h(0) < 0`.
///
/// `h` returns `(value, derivative)`. Returns `None` when `h` stays negative up to
/// `s_max`. The returned abscissa satisfies `h(s) >= 0` up to rounding.
pub(crate) fn convex_ray_root(h: impl Fn(f64) -> (f64, f64), s_max: f64) -> Option<f64> {
    let (h0, d0) = h(0.0);
    if !(h0 < 0.0) {
        return if h0 >= 0.0 { Some(0.0) } else { None };
    }
    let mut lo = 0.0;
    let mut hi = if d0 > 0.0 { -h0 / d0 } else { 1.0 };
    if !hi.is_finite() || hi <= 0.0 {
        hi = 1.0;
    }
    let (mut v_hi, mut d_hi) = h(hi);
    while v_hi < 0.0 {
        lo = hi;
        // a convex function crossing zero is increasing there; a Newton step from the
        // left overshoots the root
        let step = if d_hi > 0.0 { -v_hi / d_hi } else { hi };
        hi += step.max(hi * 1e-3).min(hi.max(1.0) * 4.0);
        if hi > s_max {
            return None;
        }
        (v_hi, d_hi) = h(hi);
    }
    if !v_hi.is_finite() {
        // overflow on the right end; bisect until finite
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let (v, d) = h(mid);
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
                (v_hi, d_hi) = (v, d);
                if v.is_finite() {
                    break;
                }
            }
        }
    }
    let mut s = hi;
    let (mut v, mut d) = (v_hi, d_hi);
    for _ in 0..200 {
        if v == 0.0 {
            return Some(s);
        }
        let newton = s - v / d;
        let next = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo) <= 4.0 * f64::EPSILON * hi || next == s {
            break;
        }
        s = next;
        (v, d) = h(s);
        if v < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
    }
    Some(hi)
}

/// Golden-section minimization of `f` on `[a, b]`; returns `(argmin, min)`.
pub(crate) fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..300 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// Result of a minimization over unit directions.
#[derive(Debug, Clone)]
pub(crate) struct DirectionMin {
    pub direction: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

fn normalize(v: &[f64]) -> Option<Vec<f64>> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 && n.is_finite() {
        Some(v.iter().map(|x| x / n).collect())
    } else {
        None
    }
}

/// Minimizes `f` over the unit sphere of `R^n`.
///
/// Dimension 1 is exhaustive, dimension 2 uses a dense angle scan refined by golden
/// section around the best local minima, higher dimensions run Nelder-Mead on
/// `f(y / |y|)` from the best of the seeds and a fixed quasi-random design.
pub(crate) fn minimize_over_sphere(
    n: usize,
    f: &dyn Fn(&[f64]) -> f64,
    seeds: &[Vec<f64>],
) -> DirectionMin {
    match n {
        0 => DirectionMin { direction: vec![], value: f64::INFINITY, converged: false },
        1 => {
            let (vp, vm) = (f(&[1.0]), f(&[-1.0]));
            if vp <= vm {
                DirectionMin { direction: vec![1.0], value: vp, converged: true }
            } else {
                DirectionMin { direction: vec![-1.0], value: vm, converged: true }
            }
        }
        2 => planar_search(f, seeds),
        _ => nelder_mead_sphere(n, f, seeds),
    }
}

fn planar_search(f: &dyn Fn(&[f64]) -> f64, seeds: &[Vec<f64>]) -> DirectionMin {
    let g = |theta: f64| f(&[theta.cos(), theta.sin()]);
    let mut angles: Vec<f64> = (0..PLANAR_SCAN)
        .map(|k| 2.0 * PI * k as f64 / PLANAR_SCAN as f64)
        .collect();
    for s in seeds.iter().filter_map(|s| normalize(s)) {
        angles.push(s[1].atan2(s[0]).rem_euclid(2.0 * PI));
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    let values: Vec<f64> = angles.iter().map(|&t| g(t)).collect();
    let m = angles.len();
    let mut minima: Vec<usize> = (0..m)
        .filter(|&k| {
            let prev = values[(k + m - 1) % m];
            let next = values[(k + 1) % m];
            values[k].is_finite() && values[k] <= prev && values[k] <= next
        })
        .collect();
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    minima.truncate(PLANAR_REFINE);
    let mut best = DirectionMin { direction: vec![1.0, 0.0], value: f64::INFINITY, converged: false };
    for k in minima {
        let lo = if k == 0 { angles[m - 1] - 2.0 * PI } else { angles[k - 1] };
        let hi = if k == m - 1 { angles[0] + 2.0 * PI } else { angles[k + 1] };
        let (theta, v) = golden_section(&g, lo, hi, 1e-14);
        let (theta, v) = if values[k] < v { (angles[k], values[k]) } else { (theta, v) };
        if v < best.value {
            best = DirectionMin { direction: vec![theta.cos(), theta.sin()], value: v, converged: true };
        }
    }
    best
}

fn nelder_mead_sphere(n: usize, f: &dyn Fn(&[f64]) -> f64, seeds: &[Vec<f64>]) -> DirectionMin {
    let obj = |y: &[f64]| normalize(y).map(|u| f(&u)).unwrap_or(f64::INFINITY);
    let mut starts: Vec<Vec<f64>> = seeds.iter().filter_map(|s| normalize(s)).collect();
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; n];
            e[i] = sign;
            starts.push(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    for _ in 0..(64 * n) {
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if let Some(u) = normalize(&y) {
            starts.push(u);
        }
    }
    let mut scored: Vec<(f64, Vec<f64>)> = starts.into_iter().map(|u| (obj(&u), u)).collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = DirectionMin { direction: scored[0].1.clone(), value: scored[0].0, converged: false };
    for (_, start) in scored.into_iter().take(6) {
        let (y, v, ok) = nelder_mead(&obj, &start, 0.05, 4000);
        if v < best.value {
            best = DirectionMin { direction: normalize(&y).unwrap_or(start), value: v, converged: ok };
        }
    }
    best
}

/// Plain Nelder-Mead; returns `(argmin, min, converged)`.
pub(crate) fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    max_iter: usize,
) -> (Vec<f64>, f64, bool) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let mut converged = false;
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        let size = simplex[1..]
            .iter()
            .map(|p| p.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if size < 1e-13 || (values[n] - values[0]).abs() <= 1e-15 * values[0].abs().max(1e-300) && size < 1e-9 {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|p| p[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid.iter().zip(&simplex[n]).map(|(c, w)| c + t * (w - c)).collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < values[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            let xc = if fr < values[n] { along(-0.5) } else { along(0.5) };
            let fc = f(&xc);
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    simplex[i] = simplex[i].iter().zip(&best).map(|(p, b)| b + 0.5 * (p - b)).collect();
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let k = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    (simplex[k].clone(), values[k], converged)
}

/// Lawson-Hanson non-negative least squares: `min |A x - b|` subject to `x >= 0`.
pub(crate) fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let k = a.ncols();
    let tol = 1e-12;
    let mut x = DVector::<f64>::zeros(k);
    let mut passive = vec![false; k];
    for _outer in 0..(3 * k + 10) {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..k)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(t) = candidate else { break };
        passive[t] = true;
        for _inner in 0..(3 * k + 10) {
            let idx: Vec<usize> = (0..k).filter(|&j| passive[j]).collect();
            let sub = a.select_columns(idx.iter());
            let z_sub = sub
                .clone()
                .svd(true, true)
                .solve(b, 1e-14)
                .unwrap_or_else(|_| DVector::zeros(idx.len()));
            let mut z = DVector::<f64>::zeros(k);
            for (p, &j) in idx.iter().enumerate() {
                z[j] = z_sub[p];
            }
            if idx.iter().all(|&j| z[j] > tol) {
                x = z;
                break;
            }
            let step = idx
                .iter()
                .filter(|&&j| z[j] <= tol)
                .map(|&j| x[j] / (x[j] - z[j]))
                .fold(f64::INFINITY, f64::min);
            x = &x + (&z - &x) * step;
            for &j in &idx {
                if x[j] <= tol {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
        }
    }
    x
}
