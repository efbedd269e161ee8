//! Exact computations on Sylow p-subgroups of finite unitary groups, their
//! Thompson and Oliver subgroups, and iterated wreath products of cyclic
//! p-groups.

pub mod algebra;
pub mod cache;
pub mod corpus;
pub mod error;
pub mod group;
pub mod oliver;
pub mod unitary;
pub mod wreath;

pub use algebra::{Fe, Field, Mat};
pub use error::{Error, Result};
pub use group::{Group, GroupRepr, Subgroup};
pub use oliver::{OliverResult, QSeries};
pub use unitary::{SylowElem, UnitaryParams};
pub use wreath::WreathSpec;
