//! Tools for local properties of edge colorings of complete graphs: color
//! energies, energy graphs and their pruning, forbidden-configuration
//! detectors that turn into violating vertex sets, difference sets of real
//! sets, and exact small-scale oracles.

pub mod arithmetic;
pub mod budget;
pub mod certificate;
pub mod coloring;
pub mod energy;
pub mod energy_graph;
pub mod error;
pub mod forbidden;
pub mod graph;
pub mod oracle;
pub mod partition;

mod serde_big;

pub use budget::Budget;
pub use coloring::{CheckMode, ColorId, ColorLabel, EdgeColoring, PropertyVerdict};
pub use error::{Error, Result};
