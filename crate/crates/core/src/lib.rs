//! Exact symmetry analysis for homogeneous iterated function systems on the line.
//!
//! Given `Φ = rx + A` and `Ψ = −rx + B` sharing an attractor, the attractor is
//! symmetric. This crate checks the algebraic consequences of that setup
//! exactly over the rationals, produces a certificate with the center of
//! symmetry, builds the unique mirror candidate `Ψ` for a given `Φ`, and
//! compares attractors through certified interval covers.

pub mod campaign;
pub mod cover;
pub mod ifs;
pub mod laurent;
pub mod multiset;
pub mod rational;
pub mod report;
pub mod svg;
pub mod symmetry;
pub mod text;

pub use cover::{
    check_ssc_certified, cover, cover_with_budget, hausdorff_bounds, same_attractor_test,
    AttractorComparison, CoverBudget, CoverError, CoverReport, HausdorffBounds, SscOutcome,
};
pub use ifs::{check_cosc, compose, hull, similarity_dimension, HomogeneousIFS, IfsError, Interval};
pub use laurent::{genfun, LaurentError, LaurentPoly};
pub use multiset::{all_distinct, multiset_equal, scale, sumset, DigitMultiset};
pub use rational::Rational;
pub use symmetry::{
    attractor_symmetry_check, is_symmetric_multiset, constant_difference_reflection, align_digits,
    mirror_candidate, theorem_pipeline, AlignmentWitness, PairVerdict, PipelineConfig,
    Precondition, SymmetryCertificate, SymmetryError,
};
