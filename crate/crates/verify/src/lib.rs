//! Acceptance suite for the `reinhardt` library.
//!
//! Each criterion is a self-contained numerical experiment with a pass/fail verdict,
//! a one-line summary and a runtime budget. Reference values come from [`oracle`],
//! which does not call into the library.

pub mod criteria;
pub mod oracle;

use std::fmt;
use std::time::{Duration, Instant};

pub use criteria::Tally;

/// One acceptance criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Option<Duration>,
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, title: "hyperbolic core", budget: Some(Duration::from_secs(5)) },
    Criterion { id: 2, title: "covering exactness", budget: Some(Duration::from_secs(5)) },
    Criterion { id: 3, title: "boundary distance oracle", budget: Some(Duration::from_secs(60)) },
    Criterion { id: 4, title: "sandwich on exact domains", budget: Some(Duration::from_secs(30)) },
    Criterion { id: 5, title: "parallelepiped rate on D_1/2", budget: Some(Duration::from_secs(30)) },
    Criterion { id: 6, title: "interval rate off the axes", budget: None },
    Criterion { id: 7, title: "punctured polydisc rate", budget: None },
    Criterion { id: 8, title: "monomial lower rate", budget: None },
    Criterion { id: 9, title: "analytic disc slope on D_1/2", budget: None },
    Criterion { id: 10, title: "certification soundness", budget: None },
];

#[derive(Debug, Clone)]
pub struct Report {
    pub criterion: Criterion,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn within_budget(&self) -> bool {
        self.criterion.budget.map_or(true, |b| self.elapsed < b)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let budget = match self.criterion.budget {
            Some(b) => format!(" / {:.0} s", b.as_secs_f64()),
            None => String::new(),
        };
        write!(
            f,
            "A{:<2} {verdict}  {}: {} [{:.2} s{budget}]",
            self.criterion.id,
            self.criterion.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Parses a suite selector: `all`, a group name, or a comma-separated list of
/// criterion numbers (`3`, `A3`, `1,2,5`).
pub fn parse_suite(s: &str) -> Option<Vec<u8>> {
    let ids: Vec<u8> = match s.trim().to_ascii_lowercase().as_str() {
        "all" => (1..=10).collect(),
        "core" | "geometry" => vec![1, 2],
        "domain" | "oracle" => vec![3, 4],
        "rates" | "asymptotics" => vec![5, 6, 7, 8, 9],
        "cert" | "certification" => vec![10],
        other => other
            .split(',')
            .map(|p| p.trim().trim_start_matches('a').parse::<u8>().ok().filter(|v| (1..=10).contains(v)))
            .collect::<Option<Vec<u8>>>()?,
    };
    Some(ids)
}

/// Runs the selected criteria in order, calling `on_report` as each one finishes.
pub fn run(ids: &[u8], mut on_report: impl FnMut(&Report)) -> Vec<Report> {
    let mut tally = Tally::default();
    let mut tallied = Vec::new();
    let mut reports = Vec::new();
    for c in CRITERIA.iter().filter(|c| ids.contains(&c.id)) {
        let start = Instant::now();
        let (passed, detail) = if c.id == 10 {
            // reuse the tallies of criteria that already ran, run the rest silently
            for id in criteria::CERTIFYING {
                if !tallied.contains(&id) {
                    criteria::run_one(id, &mut tally);
                    tallied.push(id);
                }
            }
            criteria::a10(&tally)
        } else {
            let out = criteria::run_one(c.id, &mut tally);
            tallied.push(c.id);
            out
        };
        let elapsed = start.elapsed();
        let mut report = Report { criterion: *c, passed, detail, elapsed };
        if !report.within_budget() {
            report.passed = false;
            report.detail.push_str("; over the runtime budget");
        }
        on_report(&report);
        reports.push(report);
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_selectors() {
        assert_eq!(parse_suite("all").unwrap().len(), 10);
        assert_eq!(parse_suite("A3, 5").unwrap(), vec![3, 5]);
        assert_eq!(parse_suite("rates").unwrap(), vec![5, 6, 7, 8, 9]);
        assert!(parse_suite("11").is_none());
        assert!(parse_suite("bogus").is_none());
    }
}
