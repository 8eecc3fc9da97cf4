use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub value: String,
}

/// Outcome of checking one statement on one instance.
///
/// A true hypothesis with a false conclusion is a *finding*: either an
/// implementation bug or a boundary case worth auditing. Report-only verdicts
/// (empirical scans) never count as findings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub statement: String,
    pub hypothesis_holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion_holds: Option<bool>,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    #[serde(default)]
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub report_only: bool,
}

impl Verdict {
    pub fn new(statement: impl Into<String>) -> Self {
        Verdict {
            statement: statement.into(),
            hypothesis_holds: false,
            conclusion_holds: None,
            parameters: BTreeMap::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            report_only: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn witness(&mut self, description: impl Into<String>, value: impl Into<String>) {
        self.witnesses.push(Witness {
            description: description.into(),
            value: value.into(),
        });
    }

    pub fn witness_element(&mut self, description: impl Into<String>, x: &Permutation) {
        self.witness(description, x.to_string());
    }

    pub fn witness_subgroup(&mut self, description: impl Into<String>, h: &PermGroup) {
        self.witness(description, describe_subgroup(h));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn hypothesis(mut self, holds: bool) -> Self {
        self.hypothesis_holds = holds;
        self
    }

    /// Records the conclusion; ignored unless the hypothesis holds.
    pub fn conclude(&mut self, holds: bool) {
        if self.hypothesis_holds {
            self.conclusion_holds = Some(holds);
        }
    }

    pub fn report_only(mut self) -> Self {
        self.report_only = true;
        self
    }

    pub fn is_finding(&self) -> bool {
        !self.report_only && self.hypothesis_holds && self.conclusion_holds == Some(false)
    }
}

/// `order N <g1, g2, ..>` with 1-based cycle notation.
pub fn describe_subgroup(h: &PermGroup) -> String {
    let gens: Vec<String> = h
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.to_string())
        .collect();
    format!("order {} <{}>", h.order(), gens.join(", "))
}

/// JSON value for a group order; large orders become strings.
pub fn order_value(order: u128) -> Value {
    match u64::try_from(order) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(order.to_string()),
    }
}
