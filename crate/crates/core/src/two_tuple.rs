//! Ordinal 2-tuple baseline: terms are ranked, firing is the product of
//! input ranks and aggregation is a weighted mean of consequent ranks.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::codebook::{Codebook, LinguisticVariable};
use crate::error::{Error, Result};
use crate::pr::InputWordVector;

/// Ordered labels of one variable; ranks are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSet {
    pub variable: String,
    pub labels: Vec<String>,
}

impl TermSet {
    pub fn new(variable: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        let variable = variable.into();
        if labels.is_empty() {
            return Err(Error::Schema(format!("term set `{variable}` is empty")));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel {
                    variable,
                    label: l.clone(),
                });
            }
        }
        Ok(Self { variable, labels })
    }

    pub fn from_variable(var: &LinguisticVariable) -> Self {
        Self {
            variable: var.name.clone(),
            labels: var.labels().map(str::to_string).collect(),
        }
    }

    pub fn granularity(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i + 1)
            .ok_or_else(|| Error::UnknownLabel {
                variable: self.variable.clone(),
                label: label.to_string(),
            })
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        index.checked_sub(1).and_then(|i| self.labels.get(i)).map(String::as_str)
    }
}

/// Term sets keyed by variable name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TermSets(pub BTreeMap<String, TermSet>);

impl TermSets {
    /// One term set per codebook variable, in word order.
    pub fn from_codebook(codebook: &Codebook) -> Self {
        Self(
            codebook
                .variables
                .iter()
                .map(|v| (v.name.clone(), TermSet::from_variable(v)))
                .collect(),
        )
    }

    /// Replaces orderings with those of an override document mapping
    /// variable names to label lists.
    pub fn apply_overrides(&mut self, json: &str) -> Result<()> {
        let overrides: BTreeMap<String, Vec<String>> = serde_json::from_str(json)?;
        for (name, labels) in overrides {
            self.0.insert(name.clone(), TermSet::new(name, labels)?);
        }
        Ok(())
    }

    pub fn get(&self, variable: &str) -> Result<&TermSet> {
        self.0
            .get(variable)
            .ok_or_else(|| Error::UnknownVariable(variable.to_string()))
    }
}

/// A term plus a symbolic translation in [-0.5, 0.5).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoTuple {
    pub label: String,
    pub alpha: f64,
}

impl std::fmt::Display for TwoTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {:.2})", self.label, self.alpha)
    }
}

/// Product of the input words' ranks over `antecedents`.
pub fn firing_index_product(input: &InputWordVector, antecedents: &[String], term_sets: &TermSets) -> Result<f64> {
    let mut product = 1.0;
    for var in antecedents {
        let label = input
            .get(var)
            .ok_or_else(|| Error::Schema(format!("input has no word for variable `{var}`")))?;
        product *= term_sets.get(var)?.index(label)? as f64;
    }
    Ok(product)
}

/// Firing-weighted mean of consequent ranks.
pub fn aggregate_beta(firings: &[f64], consequent_indices: &[usize]) -> Result<f64> {
    if firings.len() != consequent_indices.len() {
        return Err(Error::LengthMismatch {
            what: "firings and consequent indices",
            left: firings.len(),
            right: consequent_indices.len(),
        });
    }
    if let Some(f) = firings.iter().find(|f| !(f.is_finite() && **f >= 0.0)) {
        return Err(Error::InvalidWeight(f.to_string()));
    }
    let total: f64 = firings.iter().sum();
    if total <= 0.0 {
        return Err(Error::NoFiredRule("2-tuple aggregation".into()));
    }
    let weighted: f64 = firings.iter().zip(consequent_indices).map(|(f, &i)| f * i as f64).sum();
    Ok(weighted / total)
}

/// Nearest term, ties rounded up, with the remainder as alpha.
pub fn to_two_tuple(beta: f64, term_set: &TermSet) -> Result<TwoTuple> {
    let g = term_set.granularity();
    if !(beta.is_finite() && beta >= 1.0 && beta <= g as f64) {
        return Err(Error::BetaOutOfRange { beta, granularity: g });
    }
    let r = (beta + 0.5).floor();
    let label = term_set
        .label(r as usize)
        .ok_or(Error::BetaOutOfRange { beta, granularity: g })?;
    Ok(TwoTuple {
        label: label.to_string(),
        alpha: beta - r,
    })
}

/// Inverse of [`to_two_tuple`].
pub fn two_tuple_value(tuple: &TwoTuple, term_set: &TermSet) -> Result<f64> {
    Ok(term_set.index(&tuple.label)? as f64 + tuple.alpha)
}
