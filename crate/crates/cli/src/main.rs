use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use reinhardt::asymptotics::{
    check_theorem, generate_path, monomial_halfspace, sweep, write_csv, AnalyticDiscConfig, Construction, PathKind,
    PathSpec, SweepConfig, Theorem, Thresholds,
};
use reinhardt::bounds::{
    analytic_disc_upper, interval_upper, monomial_lower, parallelepiped_upper, punctured_polydisc_upper,
    torus_correction, BoundResult,
};
use reinhardt::domain::{completeness_profile, d_abs, membership, rescale, ModuliPoint, ReinhardtDomainSpec, DEFAULT_TOL};
use reinhardt::{catalog, Error};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0} acceptance criteria failed")]
    Acceptance(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Schema(_) => 2,
                Error::Semantic(_) => 3,
                Error::NonConvergence(_) | Error::PrecisionLoss(_) => 4,
                Error::InvalidArgument(_) | Error::Io(_) => 1,
                _ => 5,
            },
            CliError::Usage(_) | CliError::Acceptance(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Kobayashi distance bounds on pseudoconvex Reinhardt domains.
///
/// Exit codes: 0 success, 1 usage or I/O error, 2 schema error, 3 semantic error,
/// 4 numerical non-convergence, 5 precondition or certification failure.
#[derive(Parser, Debug)]
#[command(name = "reinhardt", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct DomainArgs {
    /// Domain file (JSON) or the name of a shipped domain.
    #[arg(long)]
    domain: String,
    /// Membership tolerance on the constraint margin.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a domain file: schema, sign rule and witness interiority.
    Validate {
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Completeness profile and Fu condition.
    Profile {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        json: bool,
    },
    /// Euclidean distance to the boundary, with a nearest boundary point.
    Dist {
        #[command(flatten)]
        domain: DomainArgs,
        /// Moduli of the point, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Upper and lower bounds on the Kobayashi distance between two points.
    Bound(BoundArgs),
    /// Bounds along a boundary-approach path, written as CSV.
    Sweep(SweepArgs),
    /// Run the acceptance suite.
    Verify {
        /// `all`, a group (core, domain, rates, cert) or criterion numbers like `1,5`.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args, Debug)]
struct DiscArgs {
    /// Coefficients of the monomial disc `λ ↦ (c_j λ^{m_j})`.
    #[arg(long)]
    disc_c: Option<String>,
    /// Exponents of the monomial disc.
    #[arg(long)]
    disc_m: Option<String>,
    /// Radius of the disc parameter domain.
    #[arg(long, default_value_t = 1.0)]
    disc_s: f64,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Base point moduli.
    #[arg(long)]
    base: String,
    /// Target point moduli.
    #[arg(long)]
    target: String,
    /// Comma-separated list of par, int, pp, mono, disc, torus.
    #[arg(long, default_value = "par,int,mono")]
    constructions: String,
    /// Boundary point used by the parallelepiped, punctured-polydisc and monomial bounds.
    #[arg(long)]
    zeta0: Option<String>,
    /// Integer exponents of the monomial bound.
    #[arg(long, allow_hyphen_values = true)]
    monomial: Option<String>,
    /// Log constant of the monomial bound.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    log_c: f64,
    /// Torus angles for the torus correction at the base point.
    #[arg(long, allow_hyphen_values = true)]
    thetas: Option<String>,
    #[command(flatten)]
    disc: DiscArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Radial,
    Normal,
    Cone,
    Custom,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long)]
    zeta0: String,
    /// Start point of radial paths.
    #[arg(long)]
    start: Option<String>,
    /// Base point of the distances; defaults to the start point.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, value_enum, default_value = "radial")]
    kind: KindArg,
    /// Cone angle in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    angle: f64,
    /// Semicolon-separated points of a custom path.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = PathSpec::DEFAULT_T0)]
    t0: f64,
    #[arg(long, default_value_t = PathSpec::DEFAULT_RATIO)]
    ratio: f64,
    #[arg(long, default_value_t = PathSpec::DEFAULT_COUNT)]
    count: usize,
    /// Comma-separated list of U_par, U_int, U_pp, L_mono, U_disc.
    #[arg(long, default_value = "U_par,U_int")]
    constructions: String,
    #[arg(long, allow_hyphen_values = true)]
    monomial: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    log_c: f64,
    #[command(flatten)]
    disc: DiscArgs,
    /// Fit the rate functional of a theorem (T1, T1star, T9, T3) and report the verdict.
    #[arg(long)]
    theorem: Option<String>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

fn load(args: &DomainArgs) -> Result<ReinhardtDomainSpec> {
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    if !Path::new(&args.domain).exists() {
        if let Some(spec) = catalog::by_name(&args.domain) {
            return Ok(spec);
        }
    }
    Ok(ReinhardtDomainSpec::from_json_file(&args.domain)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| CliError::Usage(format!("cannot parse {what} entry {p:?}"))))
        .collect()
}

fn parse_point(s: &str, what: &str, n: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = parse_list(s, what)?;
    if v.len() != n {
        return Err(CliError::Usage(format!("{what} has {} entries, the domain has dimension {n}", v.len())));
    }
    Ok(v)
}

fn fmt_vec(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",")
}

fn disc_config(spec: &ReinhardtDomainSpec, args: &DiscArgs) -> Result<Option<(Vec<f64>, Vec<u32>)>> {
    match (&args.disc_c, &args.disc_m) {
        (Some(c), Some(m)) => Ok(Some((parse_point(c, "--disc-c", spec.dim())?, {
            let m: Vec<u32> = parse_list(m, "--disc-m")?;
            if m.len() != spec.dim() {
                return Err(CliError::Usage("--disc-m has the wrong dimension".into()));
            }
            m
        }))),
        (None, None) => Ok(None),
        _ => Err(CliError::Usage("--disc-c and --disc-m go together".into())),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Validate { domain } => {
            let spec = load(&domain)?;
            writeln!(out, "OK {} (dimension {}, {} constraints)", spec.name(), spec.dim(), spec.constraints().len())
                .map_err(Error::from)?;
        }
        Command::Profile { domain, json } => {
            let spec = load(&domain)?;
            let p = completeness_profile(&spec);
            if json {
                writeln!(out, "{}", to_json(&p)).map_err(Error::from)?;
            } else {
                let axes = |v: &[usize]| v.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",");
                writeln!(out, "complete directions: {{{}}}", axes(&p.complete_dirs)).map_err(Error::from)?;
                writeln!(out, "axis boundary met: {:?}", p.axis_boundary_met).map_err(Error::from)?;
                writeln!(out, "Fu condition: {}", p.fu_satisfied).map_err(Error::from)?;
                writeln!(out, "relatively complete: {}", p.relatively_complete).map_err(Error::from)?;
            }
        }
        Command::Dist { domain, point, json } => {
            let spec = load(&domain)?;
            let r = parse_point(&point, "--point", spec.dim())?;
            let class = membership(&spec, &r, domain.tol);
            let sol = d_abs(&spec, &ModuliPoint::new(r)?)?;
            if !sol.converged {
                return Err(Error::NonConvergence("boundary distance search did not converge".into()).into());
            }
            if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    classification: reinhardt::domain::Classification,
                    distance: f64,
                    witness: &'a [f64],
                }
                let o = Out { classification: class, distance: sol.distance, witness: &sol.witness };
                writeln!(out, "{}", to_json(&o)).map_err(Error::from)?;
            } else {
                writeln!(out, "classification: {}", to_json(&class).trim_matches('"')).map_err(Error::from)?;
                writeln!(out, "d = {}", sol.distance).map_err(Error::from)?;
                writeln!(out, "witness = {}", fmt_vec(&sol.witness)).map_err(Error::from)?;
            }
        }
        Command::Bound(args) => bound(args, out)?,
        Command::Sweep(args) => run_sweep(args, out)?,
        Command::Verify { suite } => {
            let ids =
                reinhardt_verify::parse_suite(&suite).ok_or_else(|| CliError::Usage(format!("unknown suite {suite:?}")))?;
            let reports = reinhardt_verify::run(&ids, |r| {
                let _ = writeln!(out, "{r}");
            });
            let failed = reports.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(CliError::Acceptance(failed));
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn bound(args: BoundArgs, out: &mut dyn Write) -> Result<()> {
    let spec = load(&args.domain)?;
    let n = spec.dim();
    let z0 = parse_point(&args.base, "--base", n)?;
    let z = parse_point(&args.target, "--target", n)?;
    let zeta0 = args.zeta0.as_deref().map(|s| parse_point(s, "--zeta0", n)).transpose()?;
    let mut results: Vec<(String, std::result::Result<BoundResult, Error>)> = Vec::new();
    for name in args.constructions.split(',').map(str::trim) {
        let res = match name {
            "par" | "parallelepiped" | "U_par" => (|| {
                let target = match &zeta0 {
                    Some(v) => v.clone(),
                    None => d_abs(&spec, &ModuliPoint::new(z.clone())?)?.witness,
                };
                if z0.iter().any(|v| !(*v > 0.0)) {
                    return Err(Error::Precondition("the parallelepiped bound needs a base with positive moduli".into()));
                }
                let inv: Vec<f64> = z0.iter().map(|v| 1.0 / v).collect();
                let scaled = rescale(&spec, &inv)?;
                let zr: Vec<f64> = z.iter().zip(&z0).map(|(a, b)| a / b).collect();
                let zeta: Vec<f64> = target.iter().zip(&z0).map(|(a, b)| a / b).collect();
                parallelepiped_upper(&scaled, &zeta, &zr)
            })(),
            "int" | "interval" | "U_int" => interval_upper(&spec, &z0, &z),
            "pp" | "punctured-polydisc" | "U_pp" => match &zeta0 {
                Some(t) => punctured_polydisc_upper(&spec, t, &z0, &z),
                None => Err(Error::InvalidArgument("the punctured-polydisc bound needs --zeta0".into())),
            },
            "mono" | "monomial" | "L_mono" => (|| {
                let (a, log_c) = match (&args.monomial, &zeta0) {
                    (Some(a), _) => (
                        parse_list::<i64>(a, "--monomial").map_err(|e| Error::InvalidArgument(e.to_string()))?,
                        args.log_c,
                    ),
                    (None, Some(t)) => monomial_halfspace(&spec, t)?,
                    (None, None) => {
                        return Err(Error::InvalidArgument("the monomial bound needs --monomial or --zeta0".into()))
                    }
                };
                monomial_lower(&spec, &a, log_c, &z0, &z)
            })(),
            "disc" | "analytic-disc" | "U_disc" => match disc_config(&spec, &args.disc)? {
                Some((c, m)) => {
                    let dc = AnalyticDiscConfig { c, m, s: args.disc.disc_s, lam0: Complex64::new(0.0, 0.0) };
                    match (dc.preimage(&z0), dc.preimage(&z)) {
                        (Some(l0), Some(l1)) => analytic_disc_upper(
                            &spec,
                            &dc.c,
                            &dc.m,
                            dc.s,
                            Complex64::new(l0, 0.0),
                            Complex64::new(l1, 0.0),
                        ),
                        _ => Err(Error::Precondition("base and target must lie on the disc".into())),
                    }
                }
                None => Err(Error::InvalidArgument("the analytic-disc bound needs --disc-c and --disc-m".into())),
            },
            "torus" => match &args.thetas {
                Some(t) => torus_correction(&spec, &z0, &parse_point(t, "--thetas", n)?),
                None => Err(Error::InvalidArgument("the torus correction needs --thetas".into())),
            },
            other => return Err(CliError::Usage(format!("unknown construction {other:?}"))),
        };
        results.push((name.to_string(), res));
    }
    if args.json {
        let rows: Vec<serde_json::Value> = results
            .iter()
            .map(|(name, r)| match r {
                Ok(b) => serde_json::json!({ "construction": name, "result": b }),
                Err(e) => serde_json::json!({ "construction": name, "error": e.to_string() }),
            })
            .collect();
        writeln!(out, "{}", to_json(&rows)).map_err(Error::from)?;
    } else {
        writeln!(out, "{:<22} {:<6} {:>22}  certification", "construction", "kind", "value").map_err(Error::from)?;
        for (name, r) in &results {
            match r {
                Ok(b) => {
                    let cert: Vec<String> = b
                        .certification
                        .iter()
                        .map(|c| if c.samples > 0 { format!("{} ({}/{} bad)", c.name, c.violations, c.samples) } else { c.name.clone() })
                        .collect();
                    let dir = to_json(&b.direction);
                    writeln!(out, "{:<22} {:<6} {:>22}  {}", b.construction, dir.trim_matches('"'), b.value, cert.join("; "))
                        .map_err(Error::from)?;
                }
                Err(e) => writeln!(out, "{name:<22} error  {e}").map_err(Error::from)?,
            }
        }
    }
    if let Some((_, Err(e))) = results.iter().find(|(_, r)| r.is_err()) {
        return Err(e.clone().into());
    }
    Ok(())
}

fn run_sweep(args: SweepArgs, out: &mut dyn Write) -> Result<()> {
    let spec = load(&args.domain)?;
    let n = spec.dim();
    let zeta0 = parse_point(&args.zeta0, "--zeta0", n)?;
    let start = args.start.as_deref().map(|s| parse_point(s, "--start", n)).transpose()?;
    let kind = match args.kind {
        KindArg::Radial => PathKind::Radial,
        KindArg::Normal => PathKind::Normal,
        KindArg::Cone => PathKind::Cone { angle: args.angle },
        KindArg::Custom => {
            let pts = args.points.as_deref().ok_or_else(|| CliError::Usage("custom paths need --points".into()))?;
            PathKind::Custom { points: pts.split(';').map(|p| parse_point(p, "--points", n)).collect::<Result<_>>()? }
        }
    };
    let path = PathSpec { kind, zeta0: zeta0.clone(), start: start.clone(), t0: args.t0, ratio: args.ratio, count: args.count };
    let constructions: Vec<Construction> = parse_list(&args.constructions, "--constructions")?;
    let base = match (&args.base, &start) {
        (Some(b), _) => parse_point(b, "--base", n)?,
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(CliError::Usage("--base is required when there is no --start".into())),
    };
    let monomial = args
        .monomial
        .as_deref()
        .map(|a| parse_list::<i64>(a, "--monomial").map(|a| (a, args.log_c)))
        .transpose()?;
    let disc = disc_config(&spec, &args.disc)?.map(|(c, m)| AnalyticDiscConfig {
        lam0: Complex64::new(0.0, 0.0),
        c,
        m,
        s: args.disc.disc_s,
    });
    let disc = match disc {
        Some(mut dc) => {
            let lam = dc.preimage(&base).ok_or_else(|| Error::Precondition("the base point is not on the disc".into()))?;
            dc.lam0 = Complex64::new(lam, 0.0);
            Some(dc)
        }
        None => None,
    };
    let generated = generate_path(&spec, &path)?;
    let config = SweepConfig { z0: base, zeta0: zeta0.clone(), constructions, monomial, disc };
    let rows = sweep(&spec, &generated.points, &config)?;
    match &args.out {
        Some(p) => write_csv(BufWriter::new(File::create(p).map_err(Error::from)?), n, &rows)?,
        None => write_csv(&mut *out, n, &rows)?,
    }
    if let Some(t) = &args.theorem {
        let theorem: Theorem = t.parse()?;
        let v = check_theorem(&rows, theorem, &generated.kind, &zeta0, Thresholds::default())?;
        eprintln!(
            "{:?}: slope {:+.4}, window {:.4}, r2 {:.4}, row failures {} -> {}",
            v.theorem,
            v.fit.slope,
            v.fit.window_width,
            v.fit.r2,
            v.row_failures,
            if v.passed { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
