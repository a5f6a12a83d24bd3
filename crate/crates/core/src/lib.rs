//! Evaluation of augmented block designs for unreplicated test treatments.
//!
//! A primal block design for the controls fixes the precision of every
//! control-control, test-test and control-test comparison once each block is
//! topped up with unreplicated tests. This crate computes the A- (average
//! variance) and MV- (maximum variance) criteria for those comparisons,
//! design-independent lower bounds over the class `D(b, v, k)` of connected
//! primals, and the efficiencies they imply. It also constructs primals and
//! checks the closed forms against a brute-force least-squares oracle.
//!
//! The numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below are the instantiations the command-line tool uses.

pub mod bounds;
pub mod criteria;
pub mod design;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub mod search;

pub use bounds::{
    a_bounds, bound_quantities, efficiencies, mv_efficiencies, threshold_class, ABounds,
    BoundQuantities, Classification, EfficiencyReport, Evaluation, MvEfficiencies,
};
pub use criteria::{
    a_criteria, criteria, equireplicate_identities, intrablock, mv_criteria,
    partial_replication_eval, CriteriaReport, Intrablock, PartialReplicationReport,
};
pub use design::{all_k_subsets, lattice_bib, AugmentationSpec, BlockDesign};
pub use error::{Error, Result};
pub use matrix::{MatrixError, SymMatrix};
pub use oracle::{class_minima, enumerate_class, verify_design, AugmentedModel, VerifyReport};
pub use scalar::Scalar;
pub use search::{exchange_search, SearchConfig, SearchOutcome};

pub type SymMatrixF64 = SymMatrix<f64>;
pub type SymMatrixF32 = SymMatrix<f32>;
pub type IntrablockF64 = Intrablock<f64>;
pub type IntrablockF32 = Intrablock<f32>;
pub type CriteriaReportF64 = CriteriaReport<f64>;
pub type BoundQuantitiesF64 = BoundQuantities<f64>;
pub type ABoundsF64 = ABounds<f64>;
pub type EfficiencyReportF64 = EfficiencyReport<f64>;
pub type EvaluationF64 = Evaluation<f64>;
