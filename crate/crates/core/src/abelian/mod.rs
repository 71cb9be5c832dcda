//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups, homomorphisms between them, and exactness checks.

mod extension;
mod group;
mod hom;
pub mod lattice;
mod matrix;
mod snf;

pub use extension::extensions;
pub use group::FgAbelianGroup;
pub use hom::{cokernel, is_exact_at, kernel, PresentedHom};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("matrix shape {found:?} does not match generators {expected:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("map is not well defined on source generator {generator}")]
    IllDefined { generator: usize },
    #[error("target of the first map differs from the source of the second")]
    Mismatch,
    #[error("not in invariant-factor form: {0}")]
    NotCanonical(String),
    #[error("cannot parse group {0:?}")]
    Parse(String),
    #[error("enumeration exceeds limit of {limit}")]
    TooLarge { limit: usize },
}
