use serde::{Deserialize, Serialize};

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The identity was asserted to fail and did.
    ExpectedFail,
}

const MAX_WITNESSES: usize = 16;

/// `{check, status, max_deviation, witnesses}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub max_deviation: f64,
    pub witnesses: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: Status::Pass,
            max_deviation: 0.0,
            witnesses: Vec::new(),
        }
    }

    pub fn record(&mut self, deviation: f64) {
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = if deviation.is_finite() { deviation } else { f64::MAX };
        }
    }

    /// Records a deviation and fails with `witness` when it exceeds `bound`.
    pub fn bound(&mut self, deviation: f64, bound: f64, witness: impl FnOnce() -> String) {
        self.record(deviation);
        if deviation.is_nan() || deviation > bound {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.note(witness);
    }

    /// Adds a witness without changing the status.
    pub fn note(&mut self, witness: impl Into<String>) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness.into());
        }
    }

    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }

    /// Turns a check that is supposed to fail into an expected-fail channel:
    /// a failure becomes `ExpectedFail`, a pass becomes `Fail`.
    pub fn expect_failure(mut self) -> Self {
        match self.status {
            Status::Fail => self.status = Status::ExpectedFail,
            _ => {
                self.status = Status::Fail;
                self.witnesses.push("expected failure did not occur".into());
            }
        }
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Everything went as asserted.
    pub fn as_expected(&self) -> bool {
        self.status != Status::Fail
    }

    /// Merges `other` into `self` under `self`'s name.
    pub fn absorb(&mut self, other: &Report) {
        self.record(other.max_deviation);
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
        for w in &other.witnesses {
            self.note(format!("{}: {w}", other.check));
        }
    }
}

/// A failing report built from an error.
pub fn error_report(check: impl Into<String>, err: &crate::Error) -> Report {
    let mut r = Report::new(check);
    r.fail(err.to_string());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_failure_flips() {
        let mut r = Report::new("x");
        r.fail("w");
        assert_eq!(r.clone().expect_failure().status, Status::ExpectedFail);
        assert_eq!(Report::new("y").expect_failure().status, Status::Fail);
    }

    #[test]
    fn status_serializes_kebab_case() {
        let mut r = Report::new("c");
        r.status = Status::ExpectedFail;
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["status"], "expected-fail");
    }

    #[test]
    fn bound_handles_nan() {
        let mut r = Report::new("c");
        r.bound(f64::NAN, 1.0, || "nan".into());
        assert_eq!(r.status, Status::Fail);
    }
}
