//! Many-sided separations of graphs, laminar families of them, and their
//! correspondence with deciduous tree decompositions.
//!
//! Vertices are numbered `1..=n`. The main entry points are
//! [`ManySidedSeparation`], [`SeparationFamily`], [`TreeDecomposition`] and
//! [`build_deciduous_td`]; [`oracle`] holds independent brute-force checks.

pub mod builder;
pub mod certificate;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod separation;
pub mod vertex_set;

pub use builder::{build_deciduous_td, find_outermost, locations, side_of, Flag, LocationClass};
pub use certificate::Certificate;
pub use decomposition::{Bipartition, TdViolation, TreeDecomposition};
pub use error::{Error, Result};
pub use graph::{CutsetVerdict, Graph};
pub use separation::{ManySidedSeparation, NonCrossing, Part, SeparationFamily, SeparationViolation};
pub use vertex_set::VertexSet;
