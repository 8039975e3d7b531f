//! Exact computer algebra for formal group laws, Landweber exactness, the
//! rational Lazard ring with its Hopf algebroid, and the operation algebra of
//! K-theory.

pub mod acceptance;
pub mod coeff;
pub mod poly;
pub mod series;
pub mod error;
pub mod expr;
pub mod fgl;
pub mod hopf;
pub mod json;
pub mod landweber;
pub mod lazard;
pub mod ops;
pub mod ring;

pub use coeff::{CoefficientRing, RingElement, Value};
pub use error::{Error, Result};
pub use ring::{Rationals, Ring};
