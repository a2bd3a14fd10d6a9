//! Exact arithmetic: rationals, polynomials, quotient algebras, series.

pub mod graded;
pub mod poly;
pub mod primes;
pub mod ring;
pub mod rootalg;
pub mod series;

pub use graded::{GradeMismatch, Graded};
pub use poly::{
    factor_rational, radical, squarefree_decomposition, squarefree_part, Poly, PolyError, QPoly,
};
pub use ring::{q, qi, Fp, Quad, Ring, QQ};
pub use rootalg::{RatFuncs, RootAlgebra};
pub use series::{Germ, Parity, Series, SeriesError, EXACT};

pub type Rational = num_rational::BigRational;
