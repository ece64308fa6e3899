//! Finitely presented groups: parsing, coset enumeration, and the
//! certificate machinery for the nonsolvable order-375000 Camina-pair
//! example.

mod certify;
mod parse;
mod todd_coxeter;

pub use certify::{
    certify_nonsolvable_camina, CertStage, CertifyOptions, NonsolvableCertificate,
};
pub use parse::{parse_presentation, FpPresentation};
pub use todd_coxeter::{todd_coxeter, CosetTable};

use thiserror::Error;

/// Presentation of the nonsolvable degree-25 Camina-pair group of order
/// 375000 = 25^4 - 25^3, as shipped in `presentations/`.
pub const NONSOLVABLE_CAMINA_25: &str =
    include_str!("../../presentations/nonsolvable_camina_25.txt");

#[derive(Debug, Error)]
pub enum FpError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("coset bound exceeded: enumeration needs more than {max_cosets} simultaneous cosets")]
    BoundExceeded { max_cosets: usize },
    #[error("internal coset-enumeration failure: {0}")]
    Internal(String),
}
