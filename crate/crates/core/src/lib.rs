//! Orthogonal polynomials attached to positive definite kernels on the
//! integers and on free semigroups, through their Schur-type parameters.
#![no_std]
#![warn(missing_debug_implementations)]
extern crate alloc;

pub mod classical;
pub mod error;
pub mod fock;
pub mod hermitian_jacobi;
pub mod linalg;
pub mod ncpoly;
pub mod scalar;
pub mod ortho_one_var;
pub mod schur_params;
pub mod szego_kernels;
pub mod words;

pub use error::{Error, Result};
pub use scalar::C64;
