//! Exact tools for coverage set functions: the W-transform and coverage
//! test, oracle-based reconstruction and testing, the `f*` hard instance,
//! completion of partial tables by exact LP, and distance experiments.

pub mod adversarial;
pub mod cli;
pub mod binomial;
pub mod completion;
pub mod distance_lab;
pub mod error;
pub mod function;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod reconstruct;
pub mod sampling;
mod simplex;
pub mod subset;
pub mod wtransform;

pub use error::{Error, Result};
pub use function::{DenseSetFunction, SetFunction};
pub use instance::CoverageInstance;
pub use oracle::CountingOracle;
pub use subset::SubsetMask;
pub use wtransform::WCoefficients;
