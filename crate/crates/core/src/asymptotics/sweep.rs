use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::PathPoint;
use crate::bounds::{
    analytic_disc_upper, interval_upper, monomial_lower, parallelepiped_upper, punctured_polydisc_upper,
};
use crate::domain::{
    d_abs, rationalize_halfspace, rescale, supporting_halfspace, ModuliPoint, ReinhardtDomainSpec,
};
use crate::error::{Error, Result};

/// A bound evaluated along a sweep; the string form is the CSV column name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Construction {
    #[serde(rename = "U_par")]
    Parallelepiped,
    #[serde(rename = "U_int")]
    Interval,
    #[serde(rename = "U_pp")]
    PuncturedPolydisc,
    #[serde(rename = "L_mono")]
    Monomial,
    #[serde(rename = "U_disc")]
    AnalyticDisc,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::Parallelepiped,
        Construction::Interval,
        Construction::PuncturedPolydisc,
        Construction::Monomial,
        Construction::AnalyticDisc,
    ];

    pub fn column(self) -> &'static str {
        match self {
            Construction::Parallelepiped => "U_par",
            Construction::Interval => "U_int",
            Construction::PuncturedPolydisc => "U_pp",
            Construction::Monomial => "L_mono",
            Construction::AnalyticDisc => "U_disc",
        }
    }

    pub fn is_lower(self) -> bool {
        self == Construction::Monomial
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U_par" | "par" | "parallelepiped" => Ok(Construction::Parallelepiped),
            "U_int" | "int" | "interval" => Ok(Construction::Interval),
            "U_pp" | "pp" | "punctured-polydisc" => Ok(Construction::PuncturedPolydisc),
            "L_mono" | "mono" | "monomial" => Ok(Construction::Monomial),
            "U_disc" | "disc" | "analytic-disc" => Ok(Construction::AnalyticDisc),
            other => Err(Error::InvalidArgument(format!("unknown construction {other:?}"))),
        }
    }
}

/// The monomial disc `λ ↦ (c_j λ^{m_j})` on `|λ| < s`, based at `lam0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticDiscConfig {
    pub c: Vec<f64>,
    pub m: Vec<u32>,
    pub s: f64,
    pub lam0: Complex64,
}

impl AnalyticDiscConfig {
    /// Disc parameter mapped to `z`, if `z` lies on the positive real trace of the disc.
    pub fn preimage(&self, z: &[f64]) -> Option<f64> {
        let j = (0..z.len()).find(|&j| self.m[j] > 0 && self.c[j] > 0.0)?;
        let lam = (z[j] / self.c[j]).powf(1.0 / self.m[j] as f64);
        let image: Vec<f64> = (0..z.len()).map(|i| self.c[i] * lam.powi(self.m[i] as i32)).collect();
        let close = image.iter().zip(z).all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        close.then_some(lam)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Base point of the distances.
    pub z0: Vec<f64>,
    /// Boundary target of the path.
    pub zeta0: Vec<f64>,
    pub constructions: Vec<Construction>,
    /// Integer halfspace for the monomial bound; derived from `zeta0` when absent.
    pub monomial: Option<(Vec<i64>, f64)>,
    pub disc: Option<AnalyticDiscConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub z: Vec<f64>,
    pub d: f64,
    pub logd: f64,
    pub bounds: BTreeMap<Construction, f64>,
    pub flags: Vec<String>,
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::DomainViolation(_) => "domain-violation",
        Error::PrecisionLoss(_) => "precision-loss",
        Error::InvalidStrip { .. } => "invalid-strip",
        Error::Schema(_) => "schema",
        Error::Semantic(_) => "semantic",
        Error::Precondition(_) => "precondition",
        Error::NonConvergence(_) => "non-convergence",
        Error::AmbiguousSupport { .. } => "ambiguous-support",
        Error::Degenerate(_) => "degenerate",
        Error::ZeroRadius(_) => "zero-radius",
        Error::Certification(_) => "certification",
        Error::Inclusion(_) => "inclusion",
        Error::PathGeneration(_) => "path-generation",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::MissingBounds(_) => "missing-bounds",
        Error::WrongPathKind { .. } => "wrong-path-kind",
        Error::Io(_) => "io",
    }
}

/// Halfspace used for the monomial bound: support of the log image at `log ζ0`,
/// rounded to integer exponents.
pub fn monomial_halfspace(spec: &ReinhardtDomainSpec, zeta0: &[f64]) -> Result<(Vec<i64>, f64)> {
    if zeta0.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::Precondition("monomial halfspace needs a boundary point with positive moduli".into()));
    }
    let x0: Vec<f64> = zeta0.iter().map(|v| v.ln()).collect();
    let h = supporting_halfspace(spec, &x0)?;
    let r = rationalize_halfspace(spec, &h.alpha, h.logc, 12, &[x0])?;
    Ok((r.a, r.log_c))
}

/// Evaluates `d` and every requested bound at each path point, in parallel, keeping
/// path order. Failures are recorded as row flags.
pub fn sweep(spec: &ReinhardtDomainSpec, path: &[PathPoint], config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let n = spec.dim();
    if config.z0.len() != n || config.zeta0.len() != n {
        return Err(Error::InvalidArgument("z0 and zeta0 must match the domain dimension".into()));
    }
    let wants = |c: Construction| config.constructions.contains(&c);
    let monomial = if wants(Construction::Monomial) {
        Some(match &config.monomial {
            Some(h) => Ok(h.clone()),
            None => monomial_halfspace(spec, &config.zeta0),
        })
    } else {
        None
    };
    let rescaled = if wants(Construction::Parallelepiped) {
        let inv: Vec<f64> = config.z0.iter().map(|v| 1.0 / v).collect();
        Some(rescale(spec, &inv))
    } else {
        None
    };

    let rows = path
        .par_iter()
        .map(|pt| {
            let z = &pt.z;
            let mut flags = Vec::new();
            let (d, _) = match ModuliPoint::new(z.clone()).and_then(|m| d_abs(spec, &m)) {
                Ok(sol) => {
                    if !sol.converged {
                        flags.push("d:non-convergence".to_string());
                    }
                    (sol.distance, sol.witness)
                }
                Err(e) => {
                    flags.push(format!("d:{}", error_tag(&e)));
                    (f64::NAN, vec![])
                }
            };
            let mut bounds = BTreeMap::new();
            for &c in &config.constructions {
                let value = match c {
                    Construction::Parallelepiped => match rescaled.as_ref().expect("rescaled spec") {
                        Ok(sp) => {
                            let zr: Vec<f64> = z.iter().zip(&config.z0).map(|(a, b)| a / b).collect();
                            let zeta: Vec<f64> = config.zeta0.iter().zip(&config.z0).map(|(a, b)| a / b).collect();
                            parallelepiped_upper(sp, &zeta, &zr).map(|b| b.value)
                        }
                        Err(e) => Err(e.clone()),
                    },
                    Construction::Interval => interval_upper(spec, &config.z0, z).map(|b| b.value),
                    Construction::PuncturedPolydisc => {
                        punctured_polydisc_upper(spec, &config.zeta0, &config.z0, z).map(|b| b.value)
                    }
                    Construction::Monomial => match monomial.as_ref().expect("halfspace") {
                        Ok((a, log_c)) => monomial_lower(spec, a, *log_c, &config.z0, z).map(|b| b.value),
                        Err(e) => Err(e.clone()),
                    },
                    Construction::AnalyticDisc => match &config.disc {
                        None => Err(Error::InvalidArgument("no analytic disc configured".into())),
                        Some(dc) => match dc.preimage(z) {
                            None => Err(Error::Precondition("point is not on the disc".into())),
                            Some(lam) => analytic_disc_upper(spec, &dc.c, &dc.m, dc.s, dc.lam0, Complex64::new(lam, 0.0))
                                .map(|b| b.value),
                        },
                    },
                };
                match value {
                    Ok(v) => {
                        bounds.insert(c, v);
                    }
                    Err(e) => flags.push(format!("{}:{}", c.column(), error_tag(&e))),
                }
            }
            let lower = bounds.iter().filter(|(c, _)| c.is_lower()).map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
            let upper = bounds.iter().filter(|(c, _)| !c.is_lower()).map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
            if lower > upper + 1e-9 {
                flags.push("order-violation".to_string());
            }
            SweepRow { t: pt.t, z: z.clone(), d, logd: d.ln(), bounds, flags }
        })
        .collect();
    Ok(rows)
}

/// Writes rows as CSV with the columns `t,d,logd,z_1..z_n,U_par,U_int,U_pp,L_mono,U_disc,flags`.
pub fn write_csv<W: Write>(out: W, n: usize, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["t".to_string(), "d".into(), "logd".into()];
    header.extend((1..=n).map(|j| format!("z_{j}")));
    header.extend(Construction::ALL.iter().map(|c| c.column().to_string()));
    header.push("flags".into());
    w.write_record(&header)?;
    for row in rows {
        let mut rec = vec![row.t.to_string(), row.d.to_string(), row.logd.to_string()];
        rec.extend(row.z.iter().map(|v| v.to_string()));
        rec.extend(
            Construction::ALL
                .iter()
                .map(|c| row.bounds.get(c).map(|v| v.to_string()).unwrap_or_default()),
        );
        rec.push(row.flags.join(";"));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
