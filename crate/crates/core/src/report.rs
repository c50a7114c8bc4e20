//! Structured certification results.

use serde::Serialize;
use serde_json::Value;

/// One named check with its outcome and a structured payload.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub pass: bool,
    pub details: Value,
}

impl Verdict {
    pub fn new(check: impl Into<String>, pass: bool, details: impl Serialize) -> Self {
        Verdict {
            check: check.into(),
            pass,
            details: serde_json::to_value(details).expect("details serialize"),
        }
    }
}

/// Outcome of a verification run. `summary` is the conjunction of all
/// verdict flags; verdicts keep the order in which checks ran.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub label: String,
    pub verdicts: Vec<Verdict>,
    pub summary: bool,
}

impl CertReport {
    pub fn new(label: impl Into<String>) -> Self {
        CertReport {
            label: label.into(),
            verdicts: Vec::new(),
            summary: true,
        }
    }

    pub fn push(&mut self, v: Verdict) {
        self.summary &= v.pass;
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, vs: impl IntoIterator<Item = Verdict>) {
        for v in vs {
            self.push(v);
        }
    }

    pub fn get(&self, check: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one line per verdict.
    pub fn to_text(&self) -> String {
        let width = self
            .verdicts
            .iter()
            .map(|v| v.check.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let mut out = format!("report: {}\n", self.label);
        out.push_str(&format!("{:<width$}  {:<4}  details\n", "check", "pass"));
        for v in &self.verdicts {
            let details = serde_json::to_string(&v.details).expect("details serialize");
            out.push_str(&format!(
                "{:<width$}  {:<4}  {}\n",
                v.check,
                if v.pass { "ok" } else { "FAIL" },
                details
            ));
        }
        out.push_str(&format!("summary: {}\n", if self.summary { "pass" } else { "fail" }));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_is_conjunction() {
        let mut r = CertReport::new("x");
        assert!(r.summary);
        r.push(Verdict::new("a", true, ()));
        r.push(Verdict::new("b", false, 3));
        r.push(Verdict::new("c", true, ()));
        assert!(!r.summary);
        assert_eq!(r.get("b").unwrap().details, serde_json::json!(3));
        assert!(r.to_text().contains("FAIL"));
    }
}
