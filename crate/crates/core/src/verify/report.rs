use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::group::PermGroup;
use crate::perm::Permutation;

/// A violated instance: the subgroups involved, the element `g` where one
/// applies, and the orders that exhibit the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Which conclusion failed, e.g. `special` or `factorization`.
    pub conclusion: String,
    pub h: Vec<String>,
    pub h_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    pub orders: BTreeMap<String, u64>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(conclusion: &str, h: &PermGroup, detail: impl Into<String>) -> Self {
        Counterexample {
            conclusion: conclusion.to_string(),
            h: gens(h),
            h_order: h.order(),
            m: None,
            m_order: None,
            g: None,
            orders: BTreeMap::new(),
            detail: detail.into(),
        }
    }

    pub fn with_m(mut self, m: &PermGroup) -> Self {
        self.m = Some(gens(m));
        self.m_order = Some(m.order());
        self
    }

    pub fn with_g(mut self, g: &Permutation) -> Self {
        self.g = Some(g.to_string());
        self
    }

    pub fn with_order(mut self, key: &str, value: u64) -> Self {
        self.orders.insert(key.to_string(), value);
        self
    }
}

pub(crate) fn gens(h: &PermGroup) -> Vec<String> {
    h.generators().iter().map(|g| g.to_string()).collect()
}

/// Outcome of one statement check on one group (and prime).
///
/// `instances` counts only hypothesis-satisfying instances; `checks` counts
/// every candidate examined. A report with no instances is vacuous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub statement_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub group: String,
    pub prime: Option<u64>,
    pub instances: u64,
    pub holds: bool,
    pub vacuous: bool,
    pub counterexample: Option<Counterexample>,
    pub checks: u64,
    pub notes: Vec<String>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn new(statement_id: &str, group: &str, prime: Option<u64>) -> Self {
        VerificationReport {
            statement_id: statement_id.to_string(),
            label: None,
            group: group.to_string(),
            prime,
            instances: 0,
            holds: true,
            vacuous: true,
            counterexample: None,
            checks: 0,
            notes: Vec::new(),
            millis: 0,
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn instance(&mut self) {
        self.instances += 1;
        self.vacuous = false;
    }

    /// Record a failure. Only the first counterexample is kept.
    pub fn fail(&mut self, cx: Counterexample) {
        if self.holds {
            self.holds = false;
            self.counterexample = Some(cx);
        }
    }

    pub fn status(&self) -> &'static str {
        if !self.holds {
            "fails"
        } else if self.vacuous {
            "vacuous"
        } else {
            "holds"
        }
    }

    pub fn failed(&self) -> bool {
        !self.holds
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// JSON with the timing field removed, for determinism comparisons.
    pub fn to_json_untimed(&self) -> Value {
        let mut v = self.to_json();
        if let Some(obj) = v.as_object_mut() {
            obj.remove("millis");
        }
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.statement_id)?;
        if let Some(l) = &self.label {
            write!(f, " [{l}]")?;
        }
        write!(f, " on {}", self.group)?;
        if let Some(p) = self.prime {
            write!(f, " (p = {p})")?;
        }
        write!(
            f,
            ": {} ({} instances, {} checks, {} ms)",
            self.status(),
            self.instances,
            self.checks,
            self.millis
        )?;
        if let Some(cx) = &self.counterexample {
            write!(f, "\n  counterexample ({}): {}; H = <{}> of order {}", cx.conclusion, cx.detail, cx.h.join(", "), cx.h_order)?;
            if let (Some(m), Some(o)) = (&cx.m, cx.m_order) {
                write!(f, "; M = <{}> of order {o}", m.join(", "))?;
            }
            if let Some(g) = &cx.g {
                write!(f, "; g = {g}")?;
            }
            for (k, v) in &cx.orders {
                write!(f, "; |{k}| = {v}")?;
            }
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
