//! Exact checkers for finite relation algebra, relative Frobenius and
//! H*-algebras, symplectic linear algebra over the rationals, relational
//! groupoids and polynomial Poisson bivectors.

pub mod atom;
pub mod cli;
pub mod doc;
pub mod finrel;
pub mod frobenius;
pub mod hstar;
pub mod monoids;
pub mod poisson;
pub mod symplin;
pub mod relgpd;
pub mod report;

pub use atom::Atom;
pub use finrel::{Budget, Carrier, Rel, RelError};
pub use report::Report;
