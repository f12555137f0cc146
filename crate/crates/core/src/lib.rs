//! Exact spectra of Cayley graphs over `Z_p^n` generated by unions of type
//! classes, BIBD constructions, flat orthogonal representations, and
//! certificates for quantum chromatic numbers built from them.

pub mod budget;
pub mod certify;
pub mod combinatorics;
pub mod cyclotomic;
pub mod decimal;
pub mod designs;
pub mod error;
pub mod families;
pub mod oracle;
pub mod par;
pub mod representation;
pub mod spectrum;
pub mod types;

pub use budget::Budget;
pub use combinatorics::{binomial, krawtchouk, multinomial};
pub use cyclotomic::CyclotomicInteger;
pub use error::{Error, Result};
pub use par::Strategy;
pub use spectrum::{full_spectrum, spectral_lower_bound, CayleySpec, SpectrumReport};
pub use types::{enumerate_types, type_of, TypeVector};

/// Exact rationals for intermediate multinomial ratios.
pub type ExactRational = num_rational::BigRational;
