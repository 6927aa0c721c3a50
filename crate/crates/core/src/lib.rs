//! Whitehead-move meta-graphs of cubic multigraphs.
//!
//! The crate enumerates connected cubic multigraphs (labelled and up to
//! isomorphism), joins them by Whitehead moves into a simple meta-graph, and
//! measures that graph's Laplacian spectrum and conductance bottlenecks.

pub mod bottleneck;
pub mod cubic;
pub mod exact;
pub mod experiments;
pub mod graph;
pub mod metagraph;
pub mod randreg;
pub mod spectral;
pub mod whitehead;

pub use cubic::{CanonicalCode, CubicGraph, EnumCaps, LabelledCode};
pub use graph::SimpleGraph;
pub use metagraph::{MetaGraph, Mode};
pub use spectral::{Spectrum, SymMatrix};
pub use whitehead::WhiteheadMove;
