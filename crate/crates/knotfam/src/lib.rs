//! Tutte and Jones polynomials for families of alternating links given in Conway notation.
//!
//! The pipeline is: [`conway`] symbol → [`tait`] graph → [`tutte`] polynomial, checked against the
//! closed forms of the [`families`] catalog, then [`jones`] substitution and [`zeros`].

pub mod cli;
pub mod conway;
pub mod families;
pub mod graphcore;
pub mod jones;
pub mod poly;
pub mod tait;
pub mod tutte;
pub mod zeros;

pub use graphcore::MultiGraph;
pub use poly::{LaurentPoly1, LaurentPoly2, Var};
