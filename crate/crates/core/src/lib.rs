//! Bohr-type inequalities for analytic functions on the unit disk.
//!
//! Functions are handled as truncated power series carrying a rigorous tail
//! bound, so every functional value comes with an error budget and every
//! inequality check can be made net of truncation.

pub mod error;
pub mod series;
pub mod weights;
pub mod extremal;
pub mod functionals;
pub mod radii;
pub mod verify;

pub use error::{Error, Result};
pub use series::{TailBound, TruncatedSeries};
pub use weights::{MonomialTable, Parity, WeightSequence, WeightTable};
pub use extremal::{FunctionClass, FunctionKind, FunctionSpec, Sign};
