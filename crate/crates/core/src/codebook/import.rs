use std::io::Read;

use serde::Deserialize;

use super::{Codebook, LinguisticVariable, Word};
use crate::error::{Error, Result};
use crate::fou::{DomainScale, It2Fou, Trapezoid};

/// Centroid columns of a word table, kept only as a cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCentroid {
    pub variable: String,
    pub label: String,
    pub c_l: f64,
    pub c_r: f64,
    pub mean: f64,
}

#[derive(Debug, Deserialize)]
struct Row {
    variable: String,
    label: String,
    long_name: String,
    umf_a: f64,
    umf_b: f64,
    umf_c: f64,
    umf_d: f64,
    lmf_a: f64,
    lmf_b: f64,
    lmf_c: f64,
    lmf_d: f64,
    lmf_h: f64,
    centroid_l: f64,
    centroid_r: f64,
    centroid_mean: f64,
}

/// Reads a word table with one row per word: UMF corners, LMF corners and
/// height, then the three centroid columns. Rows of one variable must be
/// contiguous and in ordinal order.
pub fn import_csv<R: Read>(
    reader: R,
    scale: DomainScale,
    provenance: impl Into<String>,
) -> Result<(Codebook, Vec<TableCentroid>)> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut variables: Vec<LinguisticVariable> = Vec::new();
    let mut centroids = Vec::new();
    for row in rdr.deserialize() {
        let row: Row = row?;
        let word = Word {
            label: row.label.clone(),
            long_name: row.long_name,
            fou: It2Fou::new(
                Trapezoid::normal(row.umf_a, row.umf_b, row.umf_c, row.umf_d),
                Trapezoid::new(row.lmf_a, row.lmf_b, row.lmf_c, row.lmf_d, row.lmf_h),
            ),
        };
        match variables.last_mut() {
            Some(v) if v.name == row.variable => v.words.push(word),
            _ => {
                if variables.iter().any(|v| v.name == row.variable) {
                    return Err(Error::Schema(format!(
                        "rows of variable `{}` are not contiguous",
                        row.variable
                    )));
                }
                variables.push(LinguisticVariable {
                    name: row.variable.clone(),
                    words: vec![word],
                });
            }
        }
        centroids.push(TableCentroid {
            variable: row.variable,
            label: row.label,
            c_l: row.centroid_l,
            c_r: row.centroid_r,
            mean: row.centroid_mean,
        });
    }
    let cb = Codebook::new(scale, provenance, variables)?;
    Ok((cb, centroids))
}
