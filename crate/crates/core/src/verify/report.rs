use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// Outcome of one inequality or identity check.
///
/// `passed` holds iff at least one sub-case was asserted, no precondition
/// failed and `margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub passed: bool,
    #[serde(serialize_with = "ser_real", deserialize_with = "de_real")]
    pub margin: f64,
    pub tolerance: f64,
    pub cases: u64,
    /// Yes/no sub-cases that failed.
    pub failures: u64,
    pub precondition_violation: bool,
    pub notes: Vec<String>,
    pub inputs_echo: Value,
}

fn ser_real<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn de_real<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl CheckReport {
    /// A report for inputs outside the statement's hypotheses.
    pub fn precondition(id: &str, reason: impl Into<String>, inputs_echo: Value) -> Self {
        Self {
            check_id: id.to_string(),
            passed: false,
            margin: f64::NAN,
            tolerance: 0.0,
            cases: 0,
            failures: 0,
            precondition_violation: true,
            notes: vec![reason.into()],
            inputs_echo,
        }
    }

    /// Serialized with keys in sorted order.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string(&v).expect("value serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Re-judges the margin against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        if !self.precondition_violation {
            self.tolerance = tolerance;
            self.passed = self.cases > 0 && self.failures == 0 && (self.margin.is_nan() || self.margin >= -tolerance);
        }
        self
    }

    /// One report for a family of runs of the same check. It passes iff
    /// every member passes, and is a precondition report iff every member is.
    pub fn combine(id: &str, members: Vec<CheckReport>) -> CheckReport {
        if members.is_empty() {
            return CheckReport::precondition(id, "no inputs", Value::Null);
        }
        let all_pre = members.iter().all(|r| r.precondition_violation);
        let mut margin = f64::NAN;
        let mut worst = None;
        for (k, r) in members.iter().enumerate() {
            if r.margin.is_finite() && !(r.margin >= margin) {
                margin = r.margin;
                worst = Some(k);
            }
        }
        let mut notes = vec![format!(
            "{} inputs, {} passed, {} outside the hypotheses",
            members.len(),
            members.iter().filter(|r| r.passed).count(),
            members.iter().filter(|r| r.precondition_violation).count()
        )];
        if let Some(k) = worst {
            notes.push(format!("smallest margin at input {k}"));
            notes.extend(members[k].notes.iter().map(|n| format!("[{k}] {n}")));
        }
        for (k, r) in members.iter().enumerate() {
            if !r.passed && Some(k) != worst {
                notes.extend(r.notes.iter().map(|n| format!("[{k}] {n}")));
            }
        }
        let tolerance = members.iter().map(|r| r.tolerance).fold(0.0, f64::max);
        CheckReport {
            check_id: id.to_string(),
            passed: !all_pre && members.iter().all(|r| r.passed || r.precondition_violation) && members.iter().any(|r| r.passed),
            margin,
            tolerance,
            cases: members.iter().map(|r| r.cases).sum(),
            failures: members.iter().map(|r| r.failures).sum(),
            precondition_violation: all_pre,
            notes,
            inputs_echo: Value::Array(members.into_iter().map(|r| r.inputs_echo).collect()),
        }
    }
}

/// Accumulates sub-case margins; the report margin is their minimum.
#[derive(Debug)]
pub struct Tally {
    id: String,
    tolerance: f64,
    margin: f64,
    cases: u64,
    margin_cases: u64,
    failures: u64,
    notes: Vec<String>,
    inputs_echo: Value,
}

impl Tally {
    pub fn new(id: &str, tolerance: f64, inputs_echo: Value) -> Self {
        Self {
            id: id.to_string(),
            tolerance,
            margin: f64::INFINITY,
            cases: 0,
            margin_cases: 0,
            failures: 0,
            notes: Vec::new(),
            inputs_echo,
        }
    }

    pub fn margin(&mut self, m: f64) {
        self.cases += 1;
        self.margin_cases += 1;
        if m.is_nan() {
            self.failures += 1;
        } else {
            self.margin = self.margin.min(m);
        }
    }

    /// A yes/no sub-case that does not contribute to the margin.
    pub fn require(&mut self, ok: bool, what: impl Into<String>) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn cases(&self) -> u64 {
        self.cases
    }

    pub fn finish(mut self) -> CheckReport {
        if self.cases == 0 {
            self.notes.push("no sub-cases were asserted".into());
        }
        let margin = if self.margin_cases > 0 { self.margin } else { f64::NAN };
        let passed = self.cases > 0
            && self.failures == 0
            && (self.margin_cases == 0 || margin >= -self.tolerance);
        CheckReport {
            check_id: self.id,
            passed,
            margin,
            tolerance: self.tolerance,
            cases: self.cases,
            failures: self.failures,
            precondition_violation: false,
            notes: self.notes,
            inputs_echo: self.inputs_echo,
        }
    }
}
