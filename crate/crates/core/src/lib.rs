//! Exact computation of bounds — and in favourable cases the exact value —
//! of the sequential parametrized topological complexity `TC_r` of unit
//! sphere bundles, together with a numeric fibrewise motion planner.
//!
//! The pieces:
//!
//! * [`graded`] — exact arithmetic in truncated graded-commutative rings
//!   over the integers and over GF(2), with heights and relative heights
//!   of nilpotent classes.
//! * [`bundles`] — symbolic Whitney sums of canonical and trivial line
//!   bundles over spheres, projective spaces and the point, and their
//!   characteristic classes.
//! * [`models`] — cohomology presentations of sphere-bundle total spaces
//!   and of fibrewise powers, the diagonal restriction homomorphism, and a
//!   brute-force cup-length oracle for its kernel.
//! * [`bounds`] — the individual lower/upper bound rules for `TC_r` and
//!   their aggregation into reports.
//! * [`planner`] — the constructive motion planner: normalized
//!   interpolation off the antipodal set, great circles through a section
//!   of the orthonormal-frame bundle on it.

pub mod bounds;
pub mod bundles;
mod gf2;
pub mod graded;
pub mod models;
pub mod planner;

pub use bounds::{evaluate, BoundReport, BoundRule, Direction, RuleId};
pub use bundles::{make_base_ring, BaseSpace, BundleError, BundleFacts, BundleSpec, Summand};
pub use graded::{CoefficientRing, GradedClass, Monomial, PoincareSeries, RingError, RingModel};
pub use models::{ErBModel, ModelError, SphereBundleRing};
pub use planner::{
    complex_section_table, piece_statistics, plan, plan_with, table_from_open_cover, FiberConfig,
    PlanError, PlanResult, PlannedPath, PlannerParams, SectionPiece, StiefelSectionTable,
    Tolerances,
};
