//! Exact symbolic computation in free unital generalized Poisson
//! superalgebras, free unital superalgebras of Jordan brackets and free
//! generic Poisson superalgebras, together with finite-dimensional algebras
//! given by structure constants, the Kantor double, and the reduction of
//! polynomial identities to customary form.

pub mod alphabet;
pub mod cli;
pub mod concrete;
pub mod engine;
pub mod error;
pub mod exec;
pub mod farkas;
pub mod genericpoisson;
pub mod identities;
pub mod kantor;
pub mod koszul;
pub mod liebasis;
pub mod lincomb;
pub mod linalg;
pub mod parse;
pub mod scalar;
pub mod term;
pub mod word;

pub use alphabet::{Alphabet, GenId, Parity, UNIT};
pub use engine::{Element, FreeAlgebra, Monomial, Theory};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use term::{MultiDegree, Term};
pub use word::LieWord;
