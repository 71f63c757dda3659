//! Exact Waring ranks and minimal real Waring decompositions of binary
//! forms that are annihilated by a quadratic differential operator.
//!
//! All arithmetic is exact: coefficients live in `Q` or a single real
//! quadratic extension `Q(sqrt D)`.
//!
//! ```
//! use waring_core::{decompose, harmonic::HarmonicCoords, verify, DecomposeOptions};
//!
//! let f = HarmonicCoords::new(2.into(), 1.into()).to_form(4).unwrap();
//! let out = decompose(&f, &DecomposeOptions::default()).unwrap();
//! assert_eq!(out.decomposition.len(), 4);
//! assert!(verify(&f, &out.decomposition, Some(4), true).passed());
//! ```

pub mod apolarity;
pub mod combinat;
pub mod decompose;
pub mod error;
pub mod forms;
pub mod harmonic;
pub mod linalg;
pub mod oracle;
pub mod scalar;

pub use decompose::{
    classify, classify_with, decompose, solve_coefficients, verify, Classification,
    DecomposeOptions, Decomposition, Outcome, RankCertificate, Term, VerificationReport,
};
pub use error::{Error, Result};
pub use forms::{apply, power_form, BinaryForm, DiffOperator, LinearForm};
pub use scalar::{QuadExt, Rational, Scalar};
