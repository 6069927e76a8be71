//! Exact computer algebra for the D7-symmetric family of septic surfaces:
//! coefficient fields, sparse polynomials, Groebner bases, the family
//! constructors, node-count verification, prime-field search and the
//! characteristic-zero derivation of the parameter condition.

pub mod arith;
pub mod derivation;
pub mod family;
pub mod groebner;
pub mod known;
pub mod poly;
pub mod search;
pub mod singular;
