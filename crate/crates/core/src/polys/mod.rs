//! Polynomial arithmetic: sparse multivariate and dense univariate
//! polynomials, gcds and resultants, truncated power series and Padé
//! approximants.

pub mod gcd;
pub mod linalg;
mod monomial;
mod multi;
pub mod series;
mod uni;

pub use gcd::{gcd, is_squarefree, resultant};
pub use monomial::{Exps, Monomial};
pub use multi::MultiPoly;
pub use series::{pade_approximant, series_compositional_inverse, TruncSeries};
pub use uni::UniPoly;
pub(crate) use uni::lcm_usize;
