//! Machine-readable reports and the exit-code contract.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;
use siegelkit::{Error, RInterval};

/// Decimal digits printed for enclosure endpoints.
pub const DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every ledger inequality is certified.
    Pass,
    /// Some hypothesis or inequality is certified false.
    Fail,
    /// A comparison could not be decided below the precision cap.
    Undecidable,
    Usage,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Undecidable => 2,
            Verdict::Usage => 3,
        }
    }
}

/// Outward-rounded decimal rendering of an enclosure. The pass flag next to
/// it always comes from the exact endpoints, never from these strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
}

impl Enclosure {
    pub fn of(x: &RInterval) -> Enclosure {
        Enclosure { lo: decimal(x.lo(), false), hi: decimal(x.hi(), true) }
    }

    pub fn exact(x: &BigRational) -> Enclosure {
        Enclosure { lo: decimal(x, false), hi: decimal(x, true) }
    }

    pub fn int(n: &BigInt) -> Enclosure {
        Enclosure { lo: n.to_string(), hi: n.to_string() }
    }
}

/// `x` rounded down (or up) to [`DIGITS`] decimals.
pub fn decimal(x: &BigRational, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(DIGITS as u32);
    let s = x * BigRational::from_integer(scale.clone());
    let v = if up { s.ceil() } else { s.floor() }.to_integer();
    let neg = v < BigInt::from(0);
    let m = if neg { -v } else { v };
    let (ip, fp) = (&m / &scale, &m % &scale);
    let sign = if neg { "-" } else { "" };
    format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = DIGITS)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerLine {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Enclosure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Enclosure>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub results: Value,
    pub ledger: Vec<LedgerLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall time; only filled on request so that reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            verdict: Verdict::Pass,
            results: Value::Object(Default::default()),
            ledger: Vec::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn input(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.inputs.insert(k.to_string(), v.to_string());
        self
    }

    pub fn result(&mut self, k: &str, v: impl Into<Value>) -> &mut Self {
        if let Value::Object(m) = &mut self.results {
            m.insert(k.to_string(), v.into());
        }
        self
    }

    /// Adds a ledger line; a failing line turns the verdict to `Fail`.
    pub fn check(&mut self, name: &str, lhs: Option<Enclosure>, rhs: Option<Enclosure>, pass: bool) -> &mut Self {
        self.ledger.push(LedgerLine { name: name.to_string(), lhs, rhs, pass });
        if !pass && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        self
    }

    pub fn flag(&mut self, name: &str, pass: bool) -> &mut Self {
        self.check(name, None, None, pass)
    }

    /// Records a library error. An undecidable comparison withdraws every
    /// verdict gathered so far.
    pub fn fail_with(&mut self, e: &Error) -> &mut Self {
        self.verdict = classify(e);
        self.error = Some(e.to_string());
        if self.verdict == Verdict::Undecidable {
            for l in &mut self.ledger {
                l.pass = false;
            }
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {:?}\n", self.command, self.verdict);
        for (k, v) in &self.inputs {
            s.push_str(&format!("  input {k} = {v}\n"));
        }
        if let Value::Object(m) = &self.results {
            for (k, v) in m {
                s.push_str(&format!("  {k} = {v}\n"));
            }
        }
        for l in &self.ledger {
            let mark = if l.pass { "ok  " } else { "FAIL" };
            s.push_str(&format!("  [{mark}] {}", l.name));
            if let (Some(a), Some(b)) = (&l.lhs, &l.rhs) {
                s.push_str(&format!("  lhs [{}, {}] rhs [{}, {}]", a.lo, a.hi, b.lo, b.hi));
            }
            s.push('\n');
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("  error: {e}\n"));
        }
        if let Some(t) = self.timing_ms {
            s.push_str(&format!("  time {t} ms\n"));
        }
        s
    }
}

/// Maps library errors onto verdicts.
pub fn classify(e: &Error) -> Verdict {
    match e {
        Error::UndecidableAtPrecision { .. } => Verdict::Undecidable,
        Error::ParameterViolation(_) | Error::Parse(_) | Error::NotNonReal => Verdict::Usage,
        _ => Verdict::Fail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use siegelkit::rat::q;

    #[test]
    fn decimals_round_outward() {
        assert_eq!(decimal(&q(-1, 3), false), "-0.333333333334");
        assert_eq!(decimal(&q(-1, 3), true), "-0.333333333333");
        assert_eq!(decimal(&q(2, 3), true), "0.666666666667");
        assert_eq!(decimal(&q(5, 1), false), "5.000000000000");
    }

    #[test]
    fn undecidable_withdraws_passes() {
        let mut r = Report::new("x");
        r.flag("a", true);
        r.fail_with(&Error::UndecidableAtPrecision { what: "t".into(), bits: 64 });
        assert_eq!(r.verdict.exit_code(), 2);
        assert!(r.ledger.iter().all(|l| !l.pass));
    }

    #[test]
    fn failing_line_sets_exit_one() {
        let mut r = Report::new("x");
        r.flag("a", true).flag("b", false).flag("c", true);
        assert_eq!(r.verdict.exit_code(), 1);
    }
}
