//! Exact computations in valued groups: truncated power series, the
//! composition group of parabolic series, contracting derivations, free
//! nilpotent Lie groups, one-variable equations over these groups and a
//! harness for checking valued-group laws on sampled elements.

pub mod compgroup;
pub mod derivations;
pub mod error;
pub mod group;
pub mod json;
pub mod laws;
pub mod nilpotent;
pub mod sampling;
pub mod series;
pub mod solver;
pub mod terms;

pub use compgroup::{Orientation, Parabolic, Residue, Side, Val, GA_ORIENTATION};
pub use derivations::{DerivationElement, EXP_ORIENTATION};
pub use error::Error;
pub use group::{GroupElement, ValuedElement};
pub use series::{parse_series, Coefficient, TruncatedSeries, Valuation};
