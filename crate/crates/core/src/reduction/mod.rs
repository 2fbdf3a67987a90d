//! Similarity, centroid type-reduction and weighted-average kernels over
//! interval type-2 FOUs. Both inference engines are built on these.

mod centroid;
mod lwa;
mod similarity;

pub use centroid::{centroid_ekm, ekm_bounds, CentroidInterval};
pub use lwa::{lwa_alpha, lwa_crisp, weighted_average_bounds, HeightMode, LwaAlphaOutput, WeightSpec};
pub use similarity::{jaccard_sampled, jaccard_similarity};
