//! Composition factors of Kac modules over the general linear Lie
//! superalgebra gl(m|n), computed from the nqc-relations of atypical roots.
//!
//! The pipeline: parse a [`Weight`], build its [`NqcTable`], enumerate the
//! index set with [`theta::enumerate`], and lower with
//! [`operators::lower_theta`]. [`factors::composition_factors`] wraps it all.

pub mod codes;
pub mod corpus;
pub mod diagrams;
pub mod error;
pub mod factors;
pub mod nqc;
pub mod operators;
pub mod theta;
pub mod verify;
pub mod weights;

pub use codes::{Code, Rule, RuleViolation};
pub use diagrams::{CompositeDiagram, Part, StripLabeling};
pub use error::{KacError, Result};
pub use factors::{Factor, FactorSet, RaisingWitness, ThetaPrimeData};
pub use nqc::{NqcTable, Relation};
pub use operators::{Direction, LoweringTrace};
pub use theta::{Condition, Theta, ThetaPrime, Violation};
pub use weights::{AtypicalData, AtypicalPair, EntrySets, PartitionWeight, Weight};
