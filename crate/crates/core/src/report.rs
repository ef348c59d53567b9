//! Check records and suite summaries. One record per verified statement;
//! the slack string is the record's verdict: nonnegative means the statement
//! held. Identities are folded into the same shape by reporting the negated
//! absolute deviation, so zero is tight and anything negative is a failure.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rat::{format_rat, parse_rat, rat_abs, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub instance_id: usize,
    pub theorem: String,
    pub lhs: String,
    pub rhs: String,
    pub slack: String,
    pub equality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckRecord {
    /// An inequality lhs ≥ rhs; slack is the margin.
    pub fn bound(instance_id: usize, theorem: &str, lhs: &Rat, rhs: &Rat) -> CheckRecord {
        let slack = lhs - rhs;
        CheckRecord {
            instance_id,
            theorem: theorem.to_string(),
            lhs: format_rat(lhs),
            rhs: format_rat(rhs),
            slack: format_rat(&slack),
            equality: slack == Rat::from_integer(0.into()),
            witness: None,
        }
    }

    /// An identity lhs = rhs; slack is the negated deviation, so it passes
    /// exactly when the sides agree. Identities never count as equality
    /// cases: that flag is reserved for tight inequalities.
    pub fn identity(instance_id: usize, theorem: &str, lhs: &Rat, rhs: &Rat) -> CheckRecord {
        let slack = -rat_abs(&(lhs - rhs));
        CheckRecord {
            instance_id,
            theorem: theorem.to_string(),
            lhs: format_rat(lhs),
            rhs: format_rat(rhs),
            slack: format_rat(&slack),
            equality: false,
            witness: None,
        }
    }

    /// A boolean agreement (observed flag vs predicted flag).
    pub fn agreement(
        instance_id: usize,
        theorem: &str,
        observed: bool,
        predicted: bool,
    ) -> CheckRecord {
        CheckRecord {
            instance_id,
            theorem: theorem.to_string(),
            lhs: flag(observed),
            rhs: flag(predicted),
            slack: if observed == predicted { "0" } else { "-1" }.to_string(),
            equality: false,
            witness: None,
        }
    }

    /// A statement that either holds or does not, with no numeric content.
    pub fn set(instance_id: usize, theorem: &str, holds: bool) -> CheckRecord {
        CheckRecord {
            instance_id,
            theorem: theorem.to_string(),
            lhs: flag(holds),
            rhs: "1".to_string(),
            slack: if holds { "0" } else { "-1" }.to_string(),
            equality: false,
            witness: None,
        }
    }

    /// An instance the checker could not evaluate; always failing.
    pub fn failure(instance_id: usize, theorem: &str, message: &str) -> CheckRecord {
        CheckRecord {
            instance_id,
            theorem: theorem.to_string(),
            lhs: "0".to_string(),
            rhs: "1".to_string(),
            slack: "-1".to_string(),
            equality: false,
            witness: Some(serde_json::json!({ "error": message })),
        }
    }

    pub fn with_equality(mut self, equality: bool) -> CheckRecord {
        self.equality = equality;
        self
    }

    pub fn passes(&self) -> bool {
        match parse_rat(&self.slack) {
            Ok(s) => !s.is_negative(),
            Err(_) => false,
        }
    }
}

fn flag(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

/// Failing records carry the instance that broke them.
pub fn attach_witness_on_failure(records: &mut [CheckRecord], witness: &serde_json::Value) {
    for r in records {
        if !r.passes() && r.witness.is_none() {
            r.witness = Some(witness.clone());
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub records: usize,
    pub failures: usize,
    pub min_slack: String,
    /// Equality-case instance ids, keyed by statement tag.
    pub equalities: BTreeMap<String, Vec<usize>>,
    pub pass: bool,
}

pub fn summarize(records: &[CheckRecord]) -> SuiteSummary {
    let mut failures = 0;
    let mut min_slack: Option<Rat> = None;
    let mut equalities: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for r in records {
        if !r.passes() {
            failures += 1;
        }
        if let Ok(s) = parse_rat(&r.slack) {
            min_slack = Some(match min_slack {
                Some(m) if m <= s => m,
                _ => s,
            });
        }
        if r.equality {
            let ids = equalities.entry(r.theorem.clone()).or_default();
            if ids.last() != Some(&r.instance_id) {
                ids.push(r.instance_id);
            }
        }
    }
    SuiteSummary {
        records: records.len(),
        failures,
        min_slack: min_slack.map(|s| format_rat(&s)).unwrap_or_else(|| "0".into()),
        equalities,
        pass: failures == 0,
    }
}

impl SuiteSummary {
    /// One human line for the terminal.
    pub fn summary_line(&self, suite: &str) -> String {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let mut line = format!(
            "{suite}: {verdict}, {} records, {} failures, min slack {}",
            self.records, self.failures, self.min_slack
        );
        if !self.equalities.is_empty() {
            let parts: Vec<String> = self
                .equalities
                .iter()
                .map(|(tag, ids)| {
                    let ids: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
                    format!("{tag} at [{}]", ids.join(", "))
                })
                .collect();
            line.push_str(&format!("; equality cases: {}", parts.join("; ")));
        }
        line
    }
}

pub fn render_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn render_csv(records: &[CheckRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance_id", "theorem", "lhs", "rhs", "slack", "equality", "witness"])?;
    for r in records {
        let witness = match &r.witness {
            Some(v) => serde_json::to_string(v)?,
            None => String::new(),
        };
        w.write_record([
            r.instance_id.to_string(),
            r.theorem.clone(),
            r.lhs.clone(),
            r.rhs.clone(),
            r.slack.clone(),
            r.equality.to_string(),
            witness,
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidBody(e.to_string()))
}
