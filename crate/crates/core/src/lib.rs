//! Vertex deletion to exclude (topological) minors, parameterized by treewidth.

pub mod boundaried;
pub mod c4;
pub mod canon;
pub mod decomp;
pub mod error;
pub mod family;
pub mod folio_dp;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod pattern;
pub mod random;
pub mod wpart;

pub use error::{Error, Result};
pub use family::Family;
pub use graph::{BlockCutTree, Graph};
pub use oracle::Mode;

/// Weight type used by the dynamic programs.
pub type Weight = u32;

/// Optimum value with a witness deletion set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub optimum: usize,
    pub solution: Vec<usize>,
}
