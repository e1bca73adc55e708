//! Finite subdivision rules on 2-complexes, combinatorial moduli of rings
//! and quadrilaterals, and hyperbolic circle packings.

pub mod complex;
pub mod conformal;
pub mod error;
pub mod marking;
pub mod modulus;
pub mod packing;
pub mod parallel;
pub mod random;
pub mod rules;
pub mod shapes;
pub mod verify;

pub use error::{Error, ErrorClass, Result};
