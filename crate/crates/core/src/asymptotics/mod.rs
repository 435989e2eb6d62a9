//! Boundary-approach experiments: paths toward a boundary point, bound sweeps along
//! them and slope diagnostics of the growth-rate functionals.

mod fit;
mod path;
mod sweep;

pub use fit::{check_theorem, fit_slope, FitResult, Theorem, Thresholds, Verdict, MIN_FIT_SAMPLES};
pub use path::{generate_path, GeneratedPath, PathKind, PathPoint, PathSpec};
pub use sweep::{monomial_halfspace, sweep, write_csv, AnalyticDiscConfig, Construction, SweepConfig, SweepRow};
