use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::poly::{GeneratorSpec, Monomial, PolynomialExpr};
use super::GradingError;

/// Generators, relations and the degree up to which the ring is computed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingPresentation {
    generators: Vec<GeneratorSpec>,
    relations: Vec<PolynomialExpr>,
    top_degree: u32,
}

/// A relation whose monomials do not share one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityViolation {
    pub index: usize,
    pub relation: String,
    pub degrees: BTreeSet<u32>,
}

/// A homogeneous relation living entirely above a declared dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeViolation {
    pub index: usize,
    pub relation: String,
    pub degree: u32,
    pub dimension: u32,
}

impl RingPresentation {
    pub fn new(
        generators: Vec<GeneratorSpec>,
        relations: Vec<PolynomialExpr>,
        top_degree: u32,
    ) -> Result<Self, GradingError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(GradingError::ZeroDegreeGenerator(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(GradingError::DuplicateGenerator(g.name.clone()));
            }
        }
        for r in &relations {
            if r.terms().any(|(m, _)| m.arity() != generators.len()) {
                return Err(GradingError::Arity {
                    expected: generators.len(),
                });
            }
        }
        Ok(RingPresentation {
            generators,
            relations,
            top_degree,
        })
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn relations(&self) -> &[PolynomialExpr] {
        &self.relations
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn with_top_degree(&self, top_degree: u32) -> Self {
        RingPresentation {
            top_degree,
            ..self.clone()
        }
    }

    /// The same presentation without the relations at `indices`.
    pub fn without_relations(&self, indices: &[usize]) -> Self {
        let relations = self
            .relations
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, r)| r.clone())
            .collect();
        RingPresentation {
            relations,
            ..self.clone()
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Generator `name` as a polynomial.
    pub fn var(&self, name: &str) -> Result<PolynomialExpr, GradingError> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| GradingError::UnknownGenerator(name.to_string()))?;
        Ok(PolynomialExpr::generator(self.arity(), i))
    }

    pub fn one(&self) -> PolynomialExpr {
        PolynomialExpr::constant(self.arity(), 1)
    }

    pub fn show(&self, p: &PolynomialExpr) -> String {
        p.fmt_with(&self.generators)
    }

    pub fn show_monomial(&self, m: &Monomial) -> String {
        m.fmt_with(&self.generators)
    }
}

pub fn validate_homogeneous(p: &RingPresentation) -> Vec<HomogeneityViolation> {
    p.relations
        .iter()
        .enumerate()
        .filter_map(|(index, r)| {
            let degrees = r.degrees(&p.generators);
            (degrees.len() > 1).then(|| HomogeneityViolation {
                index,
                relation: p.show(r),
                degrees,
            })
        })
        .collect()
}

/// Homogeneous relations whose degree exceeds `dimension`. Such a relation
/// is vacuous on a manifold of that dimension and usually signals a typo.
pub fn validate_degrees(p: &RingPresentation, dimension: u32) -> Vec<DegreeViolation> {
    p.relations
        .iter()
        .enumerate()
        .filter_map(|(index, r)| {
            let degree = r.homogeneous_degree(&p.generators)?;
            (degree > dimension).then(|| DegreeViolation {
                index,
                relation: p.show(r),
                degree,
                dimension,
            })
        })
        .collect()
}

/// Odd generators with no relation that is literally a multiple of `x^2`.
/// The engine treats odd squares as zero regardless; this only flags
/// presentations that leave it implicit.
pub fn lint_odd_squares(p: &RingPresentation) -> Vec<String> {
    p.generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_odd())
        .filter(|(i, _)| {
            let mut sq = vec![0; p.arity()];
            sq[*i] = 2;
            let sq = Monomial::from_exponents(sq);
            !p.relations
                .iter()
                .any(|r| r.len() == 1 && r.terms().all(|(m, _)| *m == sq))
        })
        .map(|(_, g)| format!("odd generator {} has no relation {}^2", g.name, g.name))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pres(gens: &[(&str, u32)]) -> Vec<GeneratorSpec> {
        gens.iter().map(|(n, d)| GeneratorSpec::new(*n, *d)).collect()
    }

    #[test]
    fn homogeneity() {
        let g = pres(&[("x2", 2), ("x6", 6)]);
        let x2 = PolynomialExpr::generator(2, 0);
        let x6 = PolynomialExpr::generator(2, 1);
        let good = x2.pow(3, &g).sub(&x6.scale(&BigInt::from(2)));
        let p = RingPresentation::new(g.clone(), vec![good, x6.pow(2, &g)], 12).unwrap();
        assert!(validate_homogeneous(&p).is_empty());

        let bad = x2.pow(2, &g).sub(&x2);
        let p = RingPresentation::new(g, vec![bad], 12).unwrap();
        let v = validate_homogeneous(&p);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].degrees, BTreeSet::from([2, 4]));
        assert_eq!(v[0].relation, "x2^2 - x2");
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            RingPresentation::new(pres(&[("a", 2), ("a", 4)]), vec![], 4),
            Err(GradingError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            RingPresentation::new(pres(&[("a", 0)]), vec![], 4),
            Err(GradingError::ZeroDegreeGenerator(_))
        ));
    }

    #[test]
    fn odd_square_lint() {
        let g = pres(&[("x", 1), ("y", 3)]);
        let x = PolynomialExpr::generator(2, 0);
        let sq = x.mul(&x, &g);
        let p = RingPresentation::new(g, vec![sq], 4).unwrap();
        let warnings = lint_odd_squares(&p);
        assert_eq!(warnings, ["odd generator y has no relation y^2"]);
    }

    #[test]
    fn degrees_above_dimension() {
        let g = pres(&[("x2", 2)]);
        let x2 = PolynomialExpr::generator(1, 0);
        let p = RingPresentation::new(g.clone(), vec![x2.pow(3, &g), x2.pow(7, &g)], 14).unwrap();
        let v = validate_degrees(&p, 12);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].index, v[0].degree), (1, 14));
    }
}
