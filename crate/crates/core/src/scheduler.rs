//! Welder scenarios: per-welder evaluation of each objective, overall
//! aggregation across welders and the ordinal 2-tuple baseline.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::fou::{Grid, It2Fou};
use crate::pr::{aggregate_objective, fire_rules, FiringVector, InputWordVector, Recommendation, RuleBase};
use crate::reduction::{lwa_alpha, lwa_crisp, HeightMode, WeightSpec};
use crate::two_tuple::{aggregate_beta, firing_index_product, to_two_tuple, TermSets, TwoTuple};

pub const DEFAULT_ALPHA_LEVELS: usize = 101;

/// Direction of preference; carried as metadata only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSpec {
    pub name: String,
    pub sense: Sense,
    /// Codebook variable holding the objective's words; defaults to `name`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vocabulary: Option<String>,
}

impl ObjectiveSpec {
    pub fn vocabulary(&self) -> &str {
        self.vocabulary.as_deref().unwrap_or(&self.name)
    }
}

fn unit_weight() -> WeightSpec {
    WeightSpec::Crisp(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelderEntry {
    pub id: u32,
    #[serde(default = "unit_weight")]
    pub weight: WeightSpec,
    /// Firing levels to use instead of computing them from the inputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub firing: Option<Vec<f64>>,
    /// Input word per antecedent variable.
    #[serde(flatten)]
    pub inputs: InputWordVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub welders: Vec<WelderEntry>,
    pub objectives: Vec<ObjectiveSpec>,
    /// Rule (1-based) whose consequents each welder contributes in the
    /// 2-tuple baseline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_tuple_pairing: Option<Vec<usize>>,
}

impl Scenario {
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

    pub fn validate(&self, rulebase: &RuleBase, codebook: &Codebook) -> Result<()> {
        if self.welders.is_empty() {
            return Err(Error::EmptyScenario);
        }
        if self.objectives.is_empty() {
            return Err(Error::Schema("scenario has no objectives".into()));
        }
        for obj in &self.objectives {
            codebook.variable(obj.vocabulary())?;
            if !rulebase.objectives.contains(&obj.name) {
                return Err(Error::Schema(format!("objective `{}` is not a rule consequent", obj.name)));
            }
        }
        let mut ids = HashSet::new();
        for w in &self.welders {
            if !ids.insert(w.id) {
                return Err(Error::Schema(format!("welder id {} appears twice", w.id)));
            }
            let check = || -> Result<()> {
                let (lo, hi) = w.weight.bounds();
                if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo <= hi) {
                    return Err(Error::InvalidWeight(format!("[{lo}, {hi}]")));
                }
                for var in &rulebase.antecedents {
                    let label = w
                        .inputs
                        .get(var)
                        .ok_or_else(|| Error::Schema(format!("no word for variable `{var}`")))?;
                    codebook.word(var, label)?;
                }
                if let Some(f) = &w.firing {
                    if f.len() != rulebase.len() {
                        return Err(Error::LengthMismatch {
                            what: "firing levels and rules",
                            left: f.len(),
                            right: rulebase.len(),
                        });
                    }
                    FiringVector::new(f.clone())?;
                }
                Ok(())
            };
            check().map_err(|e| Error::Welder {
                id: w.id,
                source: Box::new(e),
            })?;
        }
        if let Some(p) = &self.two_tuple_pairing {
            if p.len() != self.welders.len() {
                return Err(Error::LengthMismatch {
                    what: "two_tuple_pairing and welders",
                    left: p.len(),
                    right: self.welders.len(),
                });
            }
            if let Some(bad) = p.iter().find(|&&r| r == 0 || r > rulebase.len()) {
                return Err(Error::Schema(format!(
                    "two_tuple_pairing refers to rule {bad}, rule base has {}",
                    rulebase.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Methods {
    pub pr: bool,
    pub two_tuple: bool,
}

impl Methods {
    pub const BOTH: Methods = Methods { pr: true, two_tuple: true };

    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.pr {
            out.push("pr".to_string());
        }
        if self.two_tuple {
            out.push("two-tuple".to_string());
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub methods: Methods,
    pub height_mode: HeightMode,
    pub alpha_levels: usize,
    pub grid_step: f64,
    /// Recorded in the report; the solver itself is deterministic.
    pub seed: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            methods: Methods::BOTH,
            height_mode: HeightMode::default(),
            alpha_levels: DEFAULT_ALPHA_LEVELS,
            grid_step: crate::fou::DEFAULT_GRID_STEP,
            seed: None,
        }
    }
}

/// Where a welder's firing levels came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiringSource {
    Computed,
    Scenario,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub codebook: String,
    pub seed: Option<u64>,
    pub methods: Vec<String>,
    pub height_mode: HeightMode,
    pub alpha_levels: usize,
    pub grid_step: f64,
}

/// 2-tuple result with the underlying rank value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoTupleCell {
    pub beta: f64,
    pub tuple: TwoTuple,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelderResult {
    pub id: u32,
    pub inputs: InputWordVector,
    pub weight: WeightSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub firing: Option<FiringVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub firing_source: Option<FiringSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_firing: Option<f64>,
    /// Keyed by objective name.
    pub pr: BTreeMap<String, Recommendation>,
    pub two_tuple: BTreeMap<String, TwoTupleCell>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OverallResult {
    pub pr: BTreeMap<String, Recommendation>,
    pub two_tuple: BTreeMap<String, TwoTupleCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecommendationReport {
    pub provenance: Provenance,
    pub objectives: Vec<ObjectiveSpec>,
    pub welders: Vec<WelderResult>,
    pub overall: OverallResult,
}

/// PR evaluation of one welder: fire once, then aggregate and decode
/// every objective.
pub fn evaluate_welder(
    entry: &WelderEntry,
    scenario: &Scenario,
    rulebase: &RuleBase,
    codebook: &Codebook,
    opts: &SolveOptions,
    grid: &Grid,
) -> Result<(FiringVector, FiringSource, BTreeMap<String, Recommendation>)> {
    let (firing, source) = match &entry.firing {
        Some(levels) => (FiringVector::new(levels.clone())?, FiringSource::Scenario),
        None => (fire_rules(rulebase, &entry.inputs, codebook, grid)?, FiringSource::Computed),
    };
    let mut out = BTreeMap::new();
    for obj in &scenario.objectives {
        let fou = aggregate_objective(rulebase, &firing, &obj.name, codebook, opts.height_mode).map_err(|e| match e {
            Error::NoFiredRule(_) => Error::NoFiredRule(format!("inputs {:?}, objective {}", entry.inputs, obj.name)),
            other => other,
        })?;
        let rec = Recommendation::decode(fou, codebook.variable(obj.vocabulary())?, grid)?;
        out.insert(obj.name.clone(), rec);
    }
    Ok((firing, source, out))
}

/// LWA of per-welder FOUs. All-crisp weights use the parameter-wise
/// average, anything else goes through the alpha-cut route.
pub fn aggregate_overall(
    fous: &[It2Fou],
    weights: &[WeightSpec],
    vocabulary: &str,
    codebook: &Codebook,
    opts: &SolveOptions,
    grid: &Grid,
) -> Result<Recommendation> {
    let fou = if weights.iter().all(WeightSpec::is_crisp) {
        let crisp: Vec<f64> = weights.iter().map(|w| w.bounds().0).collect();
        lwa_crisp(fous, &crisp, opts.height_mode, &codebook.scale)?
    } else {
        lwa_alpha(fous, weights, opts.alpha_levels, &codebook.scale)?.fou
    };
    Recommendation::decode(fou, codebook.variable(vocabulary)?, grid)
}

pub fn solve_scenario(
    scenario: &Scenario,
    rulebase: &RuleBase,
    codebook: &Codebook,
    opts: &SolveOptions,
) -> Result<RecommendationReport> {
    rulebase.validate(codebook)?;
    scenario.validate(rulebase, codebook)?;
    if opts.alpha_levels < 2 {
        return Err(Error::Schema(format!("alpha_levels must be at least 2, got {}", opts.alpha_levels)));
    }
    let grid = Grid::new(codebook.scale, opts.grid_step)?;
    let provenance = Provenance {
        codebook: codebook.provenance.clone(),
        seed: opts.seed,
        methods: opts.methods.names(),
        height_mode: opts.height_mode,
        alpha_levels: opts.alpha_levels,
        grid_step: opts.grid_step,
    };
    let mut report = RecommendationReport {
        provenance,
        objectives: scenario.objectives.clone(),
        welders: Vec::new(),
        overall: OverallResult::default(),
    };
    if !opts.methods.pr && !opts.methods.two_tuple {
        return Ok(report);
    }

    let with_id = |id: u32| move |e: Error| Error::Welder { id, source: Box::new(e) };
    for entry in &scenario.welders {
        let mut result = WelderResult {
            id: entry.id,
            inputs: entry.inputs.clone(),
            weight: entry.weight,
            firing: None,
            firing_source: None,
            index_firing: None,
            pr: BTreeMap::new(),
            two_tuple: BTreeMap::new(),
        };
        if opts.methods.pr {
            let (firing, source, recs) =
                evaluate_welder(entry, scenario, rulebase, codebook, opts, &grid).map_err(with_id(entry.id))?;
            result.firing = Some(firing);
            result.firing_source = Some(source);
            result.pr = recs;
        }
        report.welders.push(result);
    }

    if opts.methods.pr {
        let weights: Vec<WeightSpec> = scenario.welders.iter().map(|w| w.weight).collect();
        for obj in &scenario.objectives {
            let fous: Vec<It2Fou> = report.welders.iter().map(|w| w.pr[&obj.name].fou).collect();
            let rec = aggregate_overall(&fous, &weights, obj.vocabulary(), codebook, opts, &grid)?;
            report.overall.pr.insert(obj.name.clone(), rec);
        }
    }

    if opts.methods.two_tuple {
        let pairing = scenario
            .two_tuple_pairing
            .as_ref()
            .ok_or_else(|| Error::Schema("two-tuple method needs `two_tuple_pairing` in the scenario".into()))?;
        let terms = TermSets::from_codebook(codebook);
        let mut firings = Vec::with_capacity(scenario.welders.len());
        for (entry, result) in scenario.welders.iter().zip(report.welders.iter_mut()) {
            let f = firing_index_product(&entry.inputs, &rulebase.antecedents, &terms).map_err(with_id(entry.id))?;
            result.index_firing = Some(f);
            firings.push(f);
        }
        for obj in &scenario.objectives {
            let set = terms.get(obj.vocabulary())?;
            let mut indices = Vec::with_capacity(pairing.len());
            for (&rule, result) in pairing.iter().zip(report.welders.iter_mut()) {
                let label = &rulebase.rules[rule - 1].consequents[&obj.name];
                let idx = set.index(label)?;
                indices.push(idx);
                result.two_tuple.insert(
                    obj.name.clone(),
                    TwoTupleCell {
                        beta: idx as f64,
                        tuple: to_two_tuple(idx as f64, set)?,
                    },
                );
            }
            let beta = aggregate_beta(&firings, &indices)?;
            report.overall.two_tuple.insert(
                obj.name.clone(),
                TwoTupleCell {
                    beta,
                    tuple: to_two_tuple(beta, set)?,
                },
            );
        }
    }
    Ok(report)
}
