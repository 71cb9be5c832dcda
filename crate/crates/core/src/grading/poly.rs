use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A named generator of positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Exponent vector over the generators of a presentation, read as the
/// ordered product `g_0^e_0 * g_1^e_1 * ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, gens: &[GeneratorSpec]) -> u32 {
        self.0
            .iter()
            .zip(gens)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// Exterior in odd generators: any odd generator repeated makes it zero.
    pub fn is_admissible(&self, gens: &[GeneratorSpec]) -> bool {
        self.0.iter().zip(gens).all(|(&e, g)| !g.is_odd() || e <= 1)
    }

    /// Ordered product with the Koszul sign from moving odd factors of
    /// `other` past later odd factors of `self`. Exponents are added even
    /// when an odd generator repeats; see [`Monomial::is_admissible`].
    pub fn raw_mul(&self, other: &Monomial, gens: &[GeneratorSpec]) -> (bool, Monomial) {
        let mut swaps = 0u64;
        for (j, &b) in other.0.iter().enumerate() {
            if b == 0 || !gens[j].is_odd() {
                continue;
            }
            for (i, &a) in self.0.iter().enumerate().skip(j + 1) {
                if a != 0 && gens[i].is_odd() {
                    swaps += u64::from(a) * u64::from(b);
                }
            }
        }
        let exps = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        (swaps % 2 == 1, Monomial(exps))
    }

    pub fn fmt_with(&self, gens: &[GeneratorSpec]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (&e, g) in self.0.iter().zip(gens) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        parts.join("*")
    }
}

/// Integer combination of monomials; coefficients are never zero.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct PolynomialExpr {
    terms: BTreeMap<Monomial, BigInt>,
}

impl PolynomialExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(arity), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        Self::term(Monomial::generator(arity, index), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolynomialExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Product with Koszul signs, keeping raw exponents.
    pub fn mul(&self, other: &Self, gens: &[GeneratorSpec]) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (neg, m) = a.raw_mul(b, gens);
                let c = ca * cb;
                out.add_term(m, if neg { -c } else { c });
            }
        }
        out
    }

    pub fn pow(&self, e: u32, gens: &[GeneratorSpec]) -> Self {
        let arity = gens.len();
        let mut out = Self::constant(arity, 1);
        for _ in 0..e {
            out = out.mul(self, gens);
        }
        out
    }

    /// Drops monomials that vanish in the exterior convention.
    pub fn normalized(&self, gens: &[GeneratorSpec]) -> Self {
        PolynomialExpr {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.is_admissible(gens))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self, gens: &[GeneratorSpec]) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.degree(gens)).collect()
    }

    /// The common degree, if the expression is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, gens: &[GeneratorSpec]) -> Option<u32> {
        let degs = self.degrees(gens);
        (degs.len() == 1).then(|| *degs.iter().next().unwrap())
    }

    /// Substitutes `images[i]` for generator `i`, multiplying with `mul`.
    pub fn substitute<T, F, M>(&self, images: &[T], one: F, mut mul: M) -> Vec<(BigInt, T)>
    where
        T: Clone,
        F: Fn() -> T,
        M: FnMut(&T, &T) -> T,
    {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut acc = one();
                for (i, &e) in m.exponents().iter().enumerate() {
                    for _ in 0..e {
                        acc = mul(&acc, &images[i]);
                    }
                }
                (c.clone(), acc)
            })
            .collect()
    }

    pub fn fmt_with(&self, gens: &[GeneratorSpec]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.degree(gens)
                .cmp(&a.degree(gens))
                .then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.fmt_with(gens));
            } else {
                out.push_str(&format!("{}*{}", abs, m.fmt_with(gens)));
            }
        }
        out
    }
}

/// Display helper pairing an expression with its generator names.
pub struct Shown<'a>(pub &'a PolynomialExpr, pub &'a [GeneratorSpec]);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.fmt_with(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Vec<GeneratorSpec> {
        vec![
            GeneratorSpec::new("a", 1),
            GeneratorSpec::new("x", 2),
            GeneratorSpec::new("b", 3),
        ]
    }

    #[test]
    fn koszul_sign() {
        let g = gens();
        let a = Monomial::generator(3, 0);
        let b = Monomial::generator(3, 2);
        // a*b is already ordered; b*a needs one swap of odd factors.
        assert!(!a.raw_mul(&b, &g).0);
        assert!(b.raw_mul(&a, &g).0);
        let x = Monomial::generator(3, 1);
        assert!(!x.raw_mul(&a, &g).0);
    }

    #[test]
    fn odd_squares_vanish_after_normalizing() {
        let g = gens();
        let a = PolynomialExpr::generator(3, 0);
        let sq = a.mul(&a, &g);
        assert_eq!(sq.len(), 1);
        assert!(sq.normalized(&g).is_zero());
    }

    #[test]
    fn printing() {
        let g = vec![GeneratorSpec::new("x2", 2), GeneratorSpec::new("x6", 6)];
        let x2 = PolynomialExpr::generator(2, 0);
        let x6 = PolynomialExpr::generator(2, 1);
        let rel = x2.pow(3, &g).sub(&x6.scale(&BigInt::from(2)));
        assert_eq!(rel.fmt_with(&g), "x2^3 - 2*x6");
        assert_eq!(rel.homogeneous_degree(&g), Some(6));
        let mixed = x2.pow(2, &g).sub(&x2);
        assert_eq!(mixed.homogeneous_degree(&g), None);
        assert_eq!(mixed.degrees(&g).into_iter().collect::<Vec<_>>(), [2, 4]);
        assert_eq!(PolynomialExpr::constant(2, -3).fmt_with(&g), "-3");
    }
}
