//! Frobenius closure and tight-closure toolkit for graded rings over F_p.

pub mod acceptance;
pub mod cli;
pub mod closures;
pub mod error;
pub mod field;
pub mod graded_modules;
pub mod groebner;
pub mod ideal;
mod linalg;
pub mod monomial;
pub mod monomial_closure;
pub mod order;
pub mod perfect_hull;
pub mod poly;
pub mod ring;
pub mod spec_file;

pub use error::{Error, Result};
pub use field::{FieldElement, Fp};
pub use groebner::GroebnerBasis;
pub use ideal::IdealSpec;
pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use poly::{Degree, Polynomial};
pub use ring::RingContext;
