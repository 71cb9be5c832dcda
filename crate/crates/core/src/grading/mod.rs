//! Graded-commutative rings over the integers from finite presentations,
//! computed degree by degree with Smith normal form.

mod poly;
mod presentation;
mod ring;
mod text;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

pub use poly::{GeneratorSpec, Monomial, PolynomialExpr, Shown};
pub use presentation::{
    lint_odd_squares, validate_degrees, validate_homogeneous, DegreeViolation,
    HomogeneityViolation, RingPresentation,
};
pub use ring::{
    monomials_of_degree, DegreeDump, GradedRing, ProductDump, RingDump, RingElement,
    MONOMIAL_LIMIT,
};
pub use text::{format_presentation, parse_polynomial, parse_presentation};

use crate::abelian::FgAbelianGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("inhomogeneous relations: {}", .0.iter().map(|v| v.relation.as_str()).collect::<Vec<_>>().join("; "))]
    Inhomogeneous(Vec<HomogeneityViolation>),
    #[error("more than {limit} monomials in degree {degree}")]
    MonomialOverflow { degree: u32, limit: usize },
    #[error("generator {0} has degree 0")]
    ZeroDegreeGenerator(String),
    #[error("generator {0} declared twice")]
    DuplicateGenerator(String),
    #[error("monomial length differs from the {expected} generators")]
    Arity { expected: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("elements belong to different rings")]
    DifferentRings,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("expression mixes degrees {0:?}")]
    InhomogeneousExpression(BTreeSet<u32>),
    #[error("degrees {0} and {1} differ")]
    DegreeMismatch(u32, u32),
    #[error("degree {degree} needs {expected} coordinates, got {found}")]
    CoordinateLength {
        degree: u32,
        expected: usize,
        found: usize,
    },
    #[error("top group in degree {degree} is {group}, not Z")]
    TopNotInfiniteCyclic { degree: u32, group: String },
    #[error("orientation must be a generator of the top group")]
    NotOrientation,
    #[error("expected a class of degree {expected}, got degree {found}")]
    NotTopDegree { expected: u32, found: u32 },
}

pub fn compute(p: &RingPresentation) -> Result<GradedRing, GradingError> {
    GradedRing::compute(p)
}

pub fn normal_form(r: &GradedRing, e: &PolynomialExpr) -> Result<RingElement, GradingError> {
    r.normal_form(e)
}

pub fn cup(r: &GradedRing, a: &RingElement, b: &RingElement) -> Result<RingElement, GradingError> {
    r.cup(a, b)
}

pub fn poincare_series(r: &GradedRing) -> Vec<usize> {
    r.poincare_series()
}

pub fn torsion_profile(r: &GradedRing) -> Vec<FgAbelianGroup> {
    r.torsion_profile()
}

pub fn integrate(
    r: &GradedRing,
    a: &RingElement,
    orientation: &RingElement,
) -> Result<BigInt, GradingError> {
    r.integrate(a, orientation)
}
