//! Exact combinatorics and finite-field enumeration for representations of
//! Dynkin quivers.

pub mod engine;
pub mod error;
pub mod ext;
pub mod grassmann;
pub mod hom;
pub mod klr;
pub mod lab;
pub mod linalg;
pub mod order;
pub mod partition;
pub mod quiver;
pub mod rep;
pub mod repetition;
pub mod roots;

pub use engine::{EnumConfig, Engine};
pub use error::{Error, Result};
pub use ext::{ExtMethod, ExtSetResult};
pub use grassmann::{Pair, StrataReport};
pub use hom::HomTable;
pub use klr::{DegreeRow, HeadSocleBounds, InequalityRow, LengthTwo, SimplicityVerdict, SoclePrediction, SupportPair, Verdict};
pub use lab::Lab;
pub use linalg::{FFMatrix, Field};
pub use partition::KostantPartition;
pub use quiver::{DiagramType, DimVector, DynkinQuiver};
pub use rep::Rep;
pub use repetition::{GradedDimVector, RepetitionQuiver};
pub use roots::RootTable;
