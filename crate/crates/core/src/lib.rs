//! Generalized Springer series, split unipotent elements, component groups and
//! characteristic-function tables for `Spin_N` and `SL_n` over small finite fields.

pub mod error;
pub mod ffield;
pub mod clifford;
pub mod component_groups;
pub mod cyclotomic;
pub mod matrix;
pub mod partitions;
pub mod split;
pub mod springer;
pub mod varieties;
pub mod restriction;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use ffield::{Field, FieldElement};
pub use matrix::Matrix;
pub use partitions::Partition;
