//! Computing-with-words toolkit: interval type-2 word models, type
//! reduction, codebook encoding, Perceptual Reasoning, a 2-tuple baseline
//! and a welder scheduling layer on top.

pub mod codebook;
pub mod error;
pub mod fou;
pub mod pr;
pub mod reduction;
pub mod report;
pub mod scheduler;
pub mod two_tuple;

pub use codebook::{Codebook, EncoderMethod, LinguisticVariable, Word};
pub use error::{Error, ErrorClass, Result};
pub use fou::{AlphaCut, DomainScale, FouError, FouShape, Grid, It2Fou, Trapezoid};
pub use pr::{FiringVector, InputWordVector, Recommendation, Rule, RuleBase};
pub use reduction::{CentroidInterval, HeightMode, WeightSpec};
pub use report::{render_report, ReportFormat};
pub use scheduler::{solve_scenario, Methods, RecommendationReport, Scenario, SolveOptions};
pub use two_tuple::{TermSet, TermSets, TwoTuple};
