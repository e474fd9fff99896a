//! Exact F-polynomials for cluster algebras of types A, B, C and D with an
//! acyclic initial seed given by a Coxeter element.
//!
//! Each F-polynomial is a principal generalized minor evaluated at
//! `x_{i1-bar}(1) ... x_{in-bar}(1) x_{in}(t_in) ... x_{i1}(t_i1)`. The crate
//! computes it two ways:
//!
//! * [`network`]: weighted families of vertex-disjoint paths on a chip
//!   network (signed sums for exterior powers, square roots of bundled
//!   family weights for spin representations);
//! * [`rep`]: the symbolic group action on the representation itself,
//!   reading off the diagonal coefficient.
//!
//! [`engine`] picks the right route for each `(type, k)` and compares them.

pub mod cli;
pub mod coeffring;
pub mod engine;
pub mod network;
pub mod rep;
pub mod weyl;

pub use coeffring::{Monomial, Polynomial, Sqrt2Coeff};
pub use engine::{crosscheck, f_polynomial, f_table, FRequest, FResult, Method};
pub use weyl::{CoxeterWord, Family, LieType, WeightLabel};
