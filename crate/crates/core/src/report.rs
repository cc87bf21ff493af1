//! Structured pass/fail reports produced by the validators.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub points: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Records one check; `detail` is only evaluated on failure.
    pub fn check<F: FnOnce() -> String>(&mut self, ok: bool, check: &str, points: &[&str], detail: F) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { check: check.to_string(), points: points.iter().map(|p| p.to_string()).collect(), detail: detail() });
        }
        ok
    }

    pub fn fail(&mut self, check: &str, points: &[&str], detail: String) {
        self.check(false, check, points, || detail);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Appends another report, prefixing its check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures.into_iter().map(|mut f| {
            f.check = format!("{prefix}.{}", f.check);
            f
        }));
    }

    /// Whether some failure names `check` and mentions all of `points`.
    pub fn flags(&self, check: &str, points: &[&str]) -> bool {
        self.failures.iter().any(|f| f.check.ends_with(check) && points.iter().all(|p| f.points.iter().any(|q| q == p)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "ok ({} checks)", self.checks);
        }
        writeln!(f, "{} of {} checks failed", self.failures.len(), self.checks)?;
        for x in &self.failures {
            writeln!(f, "  {} [{}]: {}", x.check, x.points.join(", "), x.detail)?;
        }
        Ok(())
    }
}
