//! Perceptual Reasoning: rules fire by word similarity, consequents are
//! combined with a linguistic weighted average and the result is decoded
//! back to a number and a codebook word.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codebook::{Codebook, LinguisticVariable};
use crate::error::{Error, Result};
use crate::fou::{Grid, It2Fou};
use crate::reduction::{centroid_ekm, jaccard_sampled, lwa_alpha, lwa_crisp, CentroidInterval, HeightMode, LwaAlphaOutput, WeightSpec};

/// Similarities closer than this count as a tie.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Input words keyed by variable name.
pub type InputWordVector = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    #[serde(rename = "if")]
    pub antecedents: BTreeMap<String, String>,
    #[serde(rename = "then")]
    pub consequents: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleBase {
    pub antecedents: Vec<String>,
    pub objectives: Vec<String>,
    pub rules: Vec<Rule>,
}

impl RuleBase {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    /// Checks the rule base against `codebook`: every rule names exactly
    /// the declared variables and every label resolves.
    pub fn validate(&self, codebook: &Codebook) -> Result<()> {
        if self.rules.is_empty() {
            return Err(Error::Schema("rule base has no rules".into()));
        }
        for (kind, names) in [("antecedent", &self.antecedents), ("objective", &self.objectives)] {
            let mut seen = HashSet::new();
            for name in names {
                if !seen.insert(name) {
                    return Err(Error::Schema(format!("{kind} `{name}` listed twice")));
                }
                codebook.variable(name)?;
            }
        }
        for (i, rule) in self.rules.iter().enumerate() {
            for (kind, names, map) in [
                ("if", &self.antecedents, &rule.antecedents),
                ("then", &self.objectives, &rule.consequents),
            ] {
                if map.len() != names.len() || names.iter().any(|n| !map.contains_key(n)) {
                    return Err(Error::Schema(format!(
                        "rule {}: `{kind}` must name exactly {}",
                        i + 1,
                        names.join(", ")
                    )));
                }
                for (var, label) in map {
                    codebook.word(var, label)?;
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Consequent FOUs of `objective`, in rule order.
    pub fn consequents<'a>(&self, objective: &str, codebook: &'a Codebook) -> Result<Vec<&'a It2Fou>> {
        self.rules
            .iter()
            .map(|r| {
                let label = r
                    .consequents
                    .get(objective)
                    .ok_or_else(|| Error::UnknownVariable(objective.to_string()))?;
                codebook.fou(objective, label)
            })
            .collect()
    }
}

/// One firing level per rule, in rule order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiringVector {
    pub levels: Vec<f64>,
}

impl FiringVector {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if let Some(v) = levels.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidWeight(format!("firing level {v} outside [0, 1]")));
        }
        Ok(Self { levels })
    }

    pub fn sum(&self) -> f64 {
        self.levels.iter().sum()
    }
}

/// Minimum over antecedents of the Jaccard similarity between the input
/// word and the rule's word.
pub fn fire_rules(rulebase: &RuleBase, input: &InputWordVector, codebook: &Codebook, grid: &Grid) -> Result<FiringVector> {
    let mut inputs = Vec::with_capacity(rulebase.antecedents.len());
    for var in &rulebase.antecedents {
        let label = input
            .get(var)
            .ok_or_else(|| Error::Schema(format!("input has no word for variable `{var}`")))?;
        inputs.push(codebook.fou(var, label)?.sample(grid));
    }
    let mut levels = Vec::with_capacity(rulebase.rules.len());
    for rule in &rulebase.rules {
        let mut level: f64 = 1.0;
        for (var, sampled) in rulebase.antecedents.iter().zip(&inputs) {
            let label = rule
                .antecedents
                .get(var)
                .ok_or_else(|| Error::Schema(format!("rule has no word for variable `{var}`")))?;
            let rule_fou = codebook.fou(var, label)?.sample(grid);
            level = level.min(jaccard_sampled(sampled, &rule_fou)?);
        }
        levels.push(level);
    }
    Ok(FiringVector { levels })
}

/// Crisp-firing LWA of the consequents of `objective`.
pub fn aggregate_objective(
    rulebase: &RuleBase,
    firing: &FiringVector,
    objective: &str,
    codebook: &Codebook,
    height_mode: HeightMode,
) -> Result<It2Fou> {
    let consequents = firing_consequents(rulebase, firing.levels.len(), objective, codebook)?;
    if firing.sum() <= 0.0 {
        return Err(Error::NoFiredRule(format!("objective {objective}")));
    }
    lwa_crisp(&consequents, &firing.levels, height_mode, &codebook.scale)
}

/// Alpha-cut LWA of the consequents of `objective` for interval firing.
pub fn aggregate_objective_alpha(
    rulebase: &RuleBase,
    firing: &[WeightSpec],
    objective: &str,
    codebook: &Codebook,
    alpha_levels: usize,
) -> Result<LwaAlphaOutput> {
    let consequents = firing_consequents(rulebase, firing.len(), objective, codebook)?;
    lwa_alpha(&consequents, firing, alpha_levels, &codebook.scale).map_err(|e| match e {
        Error::NoFiredRule(_) => Error::NoFiredRule(format!("objective {objective}")),
        other => other,
    })
}

fn firing_consequents(rulebase: &RuleBase, levels: usize, objective: &str, codebook: &Codebook) -> Result<Vec<It2Fou>> {
    if levels != rulebase.len() {
        return Err(Error::LengthMismatch {
            what: "firing levels and rules",
            left: levels,
            right: rulebase.len(),
        });
    }
    Ok(rulebase.consequents(objective, codebook)?.into_iter().copied().collect())
}

/// Centroid midpoint.
pub fn decode_numeric(fou: &It2Fou, grid: &Grid) -> Result<f64> {
    Ok(centroid_ekm(fou, grid)?.mean())
}

/// Best-matching word of a variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticMatch {
    pub label: String,
    pub similarity: f64,
    /// Other labels with the same similarity; the lowest ordinal wins.
    pub ties: Vec<String>,
}

pub fn decode_linguistic(fou: &It2Fou, variable: &LinguisticVariable, grid: &Grid) -> Result<LinguisticMatch> {
    let sampled = fou.sample(grid);
    let mut best: Option<LinguisticMatch> = None;
    for word in &variable.words {
        let s = jaccard_sampled(&sampled, &word.fou.sample(grid))?;
        match &mut best {
            Some(b) if (s - b.similarity).abs() <= TIE_TOLERANCE => b.ties.push(word.label.clone()),
            Some(b) if s <= b.similarity => {}
            _ => {
                best = Some(LinguisticMatch {
                    label: word.label.clone(),
                    similarity: s,
                    ties: Vec::new(),
                })
            }
        }
    }
    best.ok_or_else(|| Error::Schema(format!("variable `{}` has no words", variable.name)))
}

/// Decoded output for one objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recommendation {
    pub fou: It2Fou,
    pub centroid: CentroidInterval,
    pub numeric: f64,
    pub linguistic: String,
    pub similarity_to_word: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ties: Vec<String>,
}

impl Recommendation {
    pub fn decode(fou: It2Fou, variable: &LinguisticVariable, grid: &Grid) -> Result<Self> {
        let centroid = centroid_ekm(&fou, grid)?;
        let word = decode_linguistic(&fou, variable, grid)?;
        Ok(Self {
            fou,
            centroid,
            numeric: centroid.mean(),
            linguistic: word.label,
            similarity_to_word: word.similarity,
            ties: word.ties,
        })
    }
}
