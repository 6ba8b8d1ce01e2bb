use serde::Serialize;
use serde_json::Value;

pub const TOOLKIT: &str = "mfill";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// One checked claim: the invariant it tests, what was measured and what
/// was expected.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub id: String,
    pub invariant: String,
    pub status: Status,
    pub measured: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Verdict {
    pub fn new(id: &str, invariant: &str, ok: bool, measured: impl ToString, expected: impl ToString) -> Self {
        Verdict {
            id: id.into(),
            invariant: invariant.into(),
            status: Status::of(ok),
            measured: measured.to_string(),
            expected: expected.to_string(),
            tolerance: None,
        }
    }

    pub fn within(id: &str, invariant: &str, measured: f64, expected: f64, tol: f64) -> Self {
        let ok = (measured - expected).abs() <= tol;
        Verdict {
            tolerance: Some(tol),
            ..Verdict::new(id, invariant, ok, fmt(measured), fmt(expected))
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Shortest round-trip rendering, stable across runs.
pub fn fmt(x: f64) -> String {
    format!("{x}")
}

/// A rational in lowest terms, or its decimal value when the fraction is
/// too long to read.
pub fn fmt_rational(r: &mfill_core::scalar::BigRational) -> String {
    let s = mfill_core::scalar::render_rational(r);
    if s.len() <= 24 {
        s
    } else {
        fmt(mfill_core::scalar::ratio_to_f64(r))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub toolkit: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.passed()).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}  {}\n", self.toolkit, self.version, self.command);
        if let Value::Object(m) = &self.config {
            for (k, v) in m {
                s += &format!("  {k} = {v}\n");
            }
        }
        for i in &self.inputs {
            s += &format!("  input {} sha256:{}\n", i.name, i.sha256);
        }
        s += "result:\n";
        for line in serde_json::to_string_pretty(&self.result)
            .expect("results serialize")
            .lines()
        {
            s += &format!("  {line}\n");
        }
        if !self.verdicts.is_empty() {
            s += "verdicts:\n";
            for v in &self.verdicts {
                s += &format!(
                    "  {}  {:<40} {} (expected {}{})\n",
                    v.status.label(),
                    v.id,
                    v.measured,
                    v.expected,
                    v.tolerance.map(|t| format!(" ± {t:e}")).unwrap_or_default()
                );
            }
            let fails = self.failures();
            s += &format!("{} verdicts, {} failed\n", self.verdicts.len(), fails);
        }
        s
    }
}
