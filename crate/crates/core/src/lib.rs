//! Exact engine for Feigin-Stoyanovsky type subspaces of level-1 and level-2
//! standard modules of the affine Lie algebra of type D_l^(1).

pub mod conditions;
pub mod enumerate;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod linalg;
pub mod monomial;
pub mod symcalc;
pub mod tensor;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
