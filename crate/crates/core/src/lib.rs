//! Exact perfect-matching counts for planar and pfaffian graphs, and the
//! upper bounds that compare against them.
//!
//! Vertices are `0..n` throughout the API; the JSON formats are 1-based.

pub mod bounds;
pub mod circulant;
pub mod circular;
pub mod classic;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod fullerene;
pub mod graph;
pub mod linalg;
pub mod matching;
pub mod pfaffian;
pub mod report;

pub use circular::{detect_semicircular, CircularDecomposition};
pub use embedding::PlanarEmbedding;
pub use error::{Error, Result};
pub use graph::{Classic, Graph, WeightedGraph};
pub use matching::enumerate_perfect_matchings;
pub use pfaffian::{count_by_pfaffian, kasteleyn_orient, Orientation};
pub use report::{compare_all, BoundReport};
