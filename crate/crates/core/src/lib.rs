//! Exact computation of probabilistic degenerate poly-Bell polynomials
//! `Bel_{n,λ}^{(k,Y)}(x)` and their supporting families, together with an
//! engine that checks the identities they satisfy by exact equality.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod identities;
pub mod polybell;
pub mod poly;
pub mod probabilistic;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use probabilistic::Distribution;
pub use rational::Rational;
pub use series::Series;
