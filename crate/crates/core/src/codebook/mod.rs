//! Linguistic vocabularies: words with their FOU models, grouped into
//! named variables on a shared domain.

mod encode;
mod import;
mod person;

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fou::{DomainScale, Grid, It2Fou, Trapezoid};

pub use encode::{encode_word, preprocess_intervals, EncoderMethod, MIN_SURVIVORS};
pub use import::{import_csv, TableCentroid};
pub use person::{synthesize_codebook, synthesize_person_intervals, DataInterval, EndpointSpec, EndpointsDocument};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WordDoc", into = "WordDoc")]
pub struct Word {
    pub label: String,
    pub long_name: String,
    pub fou: It2Fou,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticVariable {
    pub name: String,
    /// Ordinal order; the first word has rank 1.
    pub words: Vec<Word>,
}

impl LinguisticVariable {
    pub fn word(&self, label: &str) -> Result<&Word> {
        self.words
            .iter()
            .find(|w| w.label == label)
            .ok_or_else(|| Error::UnknownLabel {
                variable: self.name.clone(),
                label: label.to_string(),
            })
    }

    /// 1-based rank of `label`.
    pub fn ordinal(&self, label: &str) -> Result<usize> {
        self.words
            .iter()
            .position(|w| w.label == label)
            .map(|i| i + 1)
            .ok_or_else(|| Error::UnknownLabel {
                variable: self.name.clone(),
                label: label.to_string(),
            })
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(|w| w.label.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Codebook {
    pub scale: DomainScale,
    pub provenance: String,
    pub variables: Vec<LinguisticVariable>,
}

impl Codebook {
    /// Builds a codebook and checks every structural invariant.
    pub fn new(scale: DomainScale, provenance: impl Into<String>, variables: Vec<LinguisticVariable>) -> Result<Self> {
        let cb = Self {
            scale,
            provenance: provenance.into(),
            variables,
        };
        cb.validate()?;
        Ok(cb)
    }

    pub fn validate(&self) -> Result<()> {
        DomainScale::new(self.scale.min, self.scale.max)?;
        let grid = Grid::standard(self.scale);
        let mut names = HashSet::new();
        for var in &self.variables {
            if !names.insert(var.name.as_str()) {
                return Err(Error::DuplicateVariable(var.name.clone()));
            }
            if var.words.len() < 2 {
                return Err(Error::Schema(format!(
                    "variable `{}` needs at least 2 words, has {}",
                    var.name,
                    var.words.len()
                )));
            }
            let mut labels = HashSet::new();
            for word in &var.words {
                if !labels.insert(word.label.as_str()) {
                    return Err(Error::DuplicateLabel {
                        variable: var.name.clone(),
                        label: word.label.clone(),
                    });
                }
                word.fou
                    .validate(&grid)
                    .map_err(|e| Error::invalid_fou(format!("{}.{}", var.name, word.label), e))?;
            }
        }
        Ok(())
    }

    pub fn variable(&self, name: &str) -> Result<&LinguisticVariable> {
        self.variables
            .iter()
            .find(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn word(&self, variable: &str, label: &str) -> Result<&Word> {
        self.variable(variable)?.word(label)
    }

    pub fn fou(&self, variable: &str, label: &str) -> Result<&It2Fou> {
        Ok(&self.word(variable, label)?.fou)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let cb: Codebook = serde_json::from_str(s)?;
        cb.validate()?;
        Ok(cb)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Reads a codebook file; `.csv` goes through the table importer on the
    /// default scale, anything else is parsed as the JSON schema.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            let provenance = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let (cb, _) = import_csv(text.as_bytes(), DomainScale::default(), provenance)?;
            Ok(cb)
        } else {
            Self::from_json_str(&text)
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = self.to_json_string()?;
        std::fs::write(path, text + "\n").map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Free-function form of [`Codebook::from_json_str`].
pub fn load_codebook(source: &str) -> Result<Codebook> {
    Codebook::from_json_str(source)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordDoc {
    label: String,
    long_name: String,
    umf: [f64; 4],
    lmf: LmfDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LmfDoc {
    points: [f64; 4],
    height: f64,
}

impl TryFrom<WordDoc> for Word {
    type Error = String;

    fn try_from(doc: WordDoc) -> std::result::Result<Self, Self::Error> {
        if doc.label.is_empty() {
            return Err("word label must not be empty".into());
        }
        let [a, b, c, d] = doc.umf;
        let [la, lb, lc, ld] = doc.lmf.points;
        Ok(Word {
            label: doc.label,
            long_name: doc.long_name,
            fou: It2Fou::new(Trapezoid::normal(a, b, c, d), Trapezoid::new(la, lb, lc, ld, doc.lmf.height)),
        })
    }
}

impl From<Word> for WordDoc {
    fn from(w: Word) -> Self {
        WordDoc {
            label: w.label,
            long_name: w.long_name,
            umf: w.fou.umf.corners(),
            lmf: LmfDoc {
                points: w.fou.lmf.corners(),
                height: w.fou.lmf.h,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
      "scale": {"min": 0.0, "max": 10.0},
      "provenance": "unit",
      "variables": [
        {"name": "WA", "words": [
          {"label": "B", "long_name": "Beginner",
           "umf": [0.0, 0.0, 2.0, 3.54], "lmf": {"points": [0.0, 0.0, 2.0, 3.26], "height": 1.0}},
          {"label": "P", "long_name": "Professional",
           "umf": [6.06, 7.98, 10.0, 10.0], "lmf": {"points": [6.85, 7.98, 10.0, 10.0], "height": 1.0}}
        ]}
      ]
    }"#;

    #[test]
    fn loads_and_resolves_labels() {
        let cb = load_codebook(SMALL).unwrap();
        assert_eq!(cb.variable("WA").unwrap().ordinal("P").unwrap(), 2);
        assert!(matches!(cb.word("WA", "XX"), Err(Error::UnknownLabel { .. })));
        assert!(matches!(cb.word("PP", "VH"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn save_then_load_is_identity() {
        let cb = load_codebook(SMALL).unwrap();
        let again = load_codebook(&cb.to_json_string().unwrap()).unwrap();
        assert_eq!(cb, again);
    }

    #[test]
    fn containment_violation_is_named() {
        let bad = SMALL.replace("[0.0, 0.0, 2.0, 3.26]", "[0.0, 0.0, 2.0, 3.80]");
        match load_codebook(&bad) {
            Err(Error::InvalidFou { context, .. }) => assert_eq!(context, "WA.B"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_label_is_rejected() {
        let dup = SMALL.replace(r#""label": "P""#, r#""label": "B""#);
        assert!(matches!(load_codebook(&dup), Err(Error::DuplicateLabel { .. })));
    }

    #[test]
    fn schema_violations_surface_as_json_errors() {
        assert!(matches!(load_codebook("{}"), Err(Error::Json(_))));
        let extra = SMALL.replace(r#""long_name": "Beginner","#, r#""long_name": "Beginner", "colour": 1,"#);
        assert!(matches!(load_codebook(&extra), Err(Error::Json(_))));
    }

    #[test]
    fn single_word_variable_is_rejected() {
        let cb = load_codebook(SMALL).unwrap();
        let mut one = cb.clone();
        one.variables[0].words.truncate(1);
        assert!(matches!(one.validate(), Err(Error::Schema(_))));
    }
}
