//! Stripped surfaces: surfaces glued from horizontal strips along affinely
//! identified boundary intervals, together with their canonical foliation by
//! horizontal lines.
//!
//! The crate covers the exact combinatorial side (validation, leaf
//! classification, reduction to normal form, identity-component checks for
//! leaf-preserving homeomorphisms) and floating-point evaluators for the
//! explicit homeomorphisms and isotopies that go with them.

pub mod cli;
pub mod dsl;
pub mod error;
pub mod homeo;
pub mod leaves;
pub mod numeric;
pub mod model;
pub mod rational;
pub mod reduction;
pub mod unionfind;

pub use error::{Error, Result};
pub use model::{
    affine_gluing_map, strip_components, validate_strip, validate_surface, AffineMap, Diagnostics, Gluing,
    GluingSign, Interval, IntervalRef, IssueCode, LeafId, ModelStrip, Side, StripId, StrippedSurface,
};
pub use rational::Rational;
