//! Exact computations with Fermat ideals of points in the projective plane:
//! symbolic powers, least degrees, containment of symbolic powers in
//! ordinary powers, and an interpolation cross-check.

pub mod arith;
pub mod error;
pub mod fermat;
pub mod groebner;
pub mod interp;
pub mod invariants;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
