//! Lucky cars and lucky spots in parking functions.
//!
//! The crate pairs exhaustive enumeration ([`oracle`]) with closed-form
//! counts ([`closed_forms`]) so that every formula can be checked exactly
//! against ground truth. [`dyck`] holds the Dyck-path bijections for
//! monotone preference orders and [`correction`] fits column-sum
//! polynomials by exact interpolation.

pub mod closed_forms;
pub mod correction;
pub mod dyck;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod parking;
pub mod reference;

pub use error::{Error, Result};
pub use numeric::{ExactInt, ExactPoly, ExactRational};
pub use oracle::{LuckyDistribution, LuckyTable, Variant};
pub use parking::{park, PreferenceVector};
