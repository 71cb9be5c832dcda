use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{GeneratorSpec, Monomial, PolynomialExpr};
use super::presentation::{validate_homogeneous, HomogeneityViolation, RingPresentation};
use super::GradingError;
use crate::abelian::{smith_normal_form, FgAbelianGroup, IntMatrix};
use crate::serde_int::Int;

/// Largest number of monomials enumerated in a single degree.
pub const MONOMIAL_LIMIT: usize = 20_000;

const SUBSET_LIMIT: usize = 100_000;

#[derive(Clone, Debug)]
struct DegreeData {
    group: FgAbelianGroup,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    // Group coordinates of every monomial, one column each.
    reduction: IntMatrix,
    basis: Vec<PolynomialExpr>,
}

/// A class in one degree of a [`GradedRing`], in that degree's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: u64,
    degree: u32,
    coords: Vec<BigInt>,
}

impl RingElement {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Degreewise quotient of the free graded-commutative ring on the
/// generators by the ideal of the relations, up to the top degree.
#[derive(Clone, Debug)]
pub struct GradedRing {
    id: u64,
    presentation: RingPresentation,
    degrees: Vec<DegreeData>,
    products: HashMap<(u32, u32), Vec<Vec<Vec<BigInt>>>>,
}

/// Monomials of degree `d`, graded-lex order with larger leading exponents
/// first.
pub fn monomials_of_degree(
    gens: &[GeneratorSpec],
    d: u32,
    limit: usize,
) -> Result<Vec<Monomial>, GradingError> {
    fn go(
        gens: &[GeneratorSpec],
        i: usize,
        left: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
        limit: usize,
    ) -> bool {
        if i == gens.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
                return out.len() <= limit;
            }
            return true;
        }
        let g = &gens[i];
        let max = if g.is_odd() { 1.min(left / g.degree) } else { left / g.degree };
        for e in (0..=max).rev() {
            cur.push(e);
            let ok = go(gens, i + 1, left - e * g.degree, cur, out, limit);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    if !go(gens, 0, d, &mut Vec::new(), &mut out, limit) {
        return Err(GradingError::MonomialOverflow { degree: d, limit });
    }
    Ok(out)
}

/// Previous `k`-subset of `0..n` in lexicographic order.
fn prev_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        let floor = if i == 0 { 0 } else { c[i - 1] + 1 };
        if c[i] > floor {
            c[i] -= 1;
            for j in i + 1..k {
                c[j] = n - k + j;
            }
            return true;
        }
    }
    false
}

fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    &snf.v * &snf.u
}

fn poly_from_column(monomials: &[Monomial], col: &[BigInt]) -> PolynomialExpr {
    let mut p = PolynomialExpr::zero();
    for (m, c) in monomials.iter().zip(col) {
        p.add_term(m.clone(), c.clone());
    }
    p
}

fn reduce_rows(reduction: &mut IntMatrix, group: &FgAbelianGroup) {
    for (i, d) in group.generator_orders().iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        for j in 0..reduction.cols() {
            let v = reduction.get(i, j).mod_floor(d);
            reduction.set(i, j, v);
        }
    }
}

fn compute_degree(
    gens: &[GeneratorSpec],
    relations: &[(u32, PolynomialExpr)],
    lower: &[DegreeData],
    d: u32,
) -> Result<DegreeData, GradingError> {
    let monomials = monomials_of_degree(gens, d, MONOMIAL_LIMIT)?;
    let n = monomials.len();
    let index: HashMap<Monomial, usize> =
        monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    let mut cols: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for (e, r) in relations {
        if *e > d {
            continue;
        }
        for mu in &lower[(d - e) as usize].monomials {
            let mut col = vec![BigInt::zero(); n];
            for (m, c) in r.terms() {
                let (neg, prod) = mu.raw_mul(m, gens);
                if !prod.is_admissible(gens) {
                    continue;
                }
                let slot = &mut col[index[&prod]];
                if neg {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
            if let Some(first) = col.iter().find(|v| !v.is_zero()) {
                if first.is_negative() {
                    col.iter_mut().for_each(|v| *v = -&*v);
                }
                cols.insert(col);
            }
        }
    }

    if cols.is_empty() {
        return Ok(DegreeData {
            group: FgAbelianGroup::free(n),
            basis: monomials.iter().map(|m| PolynomialExpr::term(m.clone(), 1)).collect(),
            reduction: IntMatrix::identity(n),
            monomials,
            index,
        });
    }

    let rel = IntMatrix::from_columns(n, &cols.into_iter().collect::<Vec<_>>());
    let snf = smith_normal_form(&rel);
    let r = snf.rank();
    let diag = snf.d.diagonal();
    let torsion_rows: Vec<usize> = (0..r).filter(|&i| !diag[i].is_one()).collect();
    let mut rows: Vec<usize> = (r..n).collect();
    rows.extend(&torsion_rows);
    let group = FgAbelianGroup::try_new(
        n - r,
        torsion_rows.iter().map(|&i| diag[i].clone()).collect(),
    )
    .expect("Smith normal form yields a divisibility chain");

    let mut reduction = snf.u.select_rows(&rows);
    reduce_rows(&mut reduction, &group);
    let mut basis: Vec<PolynomialExpr> = rows
        .iter()
        .map(|&i| poly_from_column(&monomials, &snf.u_inv.column(i)))
        .collect();

    // Prefer residue classes of single monomials when they form a basis.
    let f = group.free_rank();
    if group.torsion().is_empty() && f > 0 {
        let mut subset: Vec<usize> = (n - f..n).collect();
        let mut tries = 0;
        loop {
            let m = reduction.select_columns(&subset);
            if m.is_unimodular() {
                reduction = &inverse_unimodular(&m) * &reduction;
                basis = subset
                    .iter()
                    .map(|&j| PolynomialExpr::term(monomials[j].clone(), 1))
                    .collect();
                break;
            }
            tries += 1;
            if tries >= SUBSET_LIMIT || !prev_combination(&mut subset, n) {
                break;
            }
        }
    } else if f == 0 && group.torsion().len() == 1 {
        let order = &group.torsion()[0];
        if let Some(j) = (0..n).rev().find(|&j| reduction.get(0, j).gcd(order).is_one()) {
            let inv = mod_inverse(reduction.get(0, j), order);
            for c in 0..n {
                let v = (reduction.get(0, c) * &inv).mod_floor(order);
                reduction.set(0, c, v);
            }
            basis = vec![PolynomialExpr::term(monomials[j].clone(), 1)];
        }
    }

    Ok(DegreeData {
        group,
        monomials,
        index,
        reduction,
        basis,
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

fn fingerprint(p: &RingPresentation) -> u64 {
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    h.finish()
}

impl GradedRing {
    pub fn compute(p: &RingPresentation) -> Result<Self, GradingError> {
        let violations = validate_homogeneous(p);
        if !violations.is_empty() {
            return Err(GradingError::Inhomogeneous(violations));
        }
        let gens = p.generators();
        let relations: Vec<(u32, PolynomialExpr)> = p
            .relations()
            .iter()
            .filter_map(|r| {
                let r = r.normalized(gens);
                Some((r.homogeneous_degree(gens)?, r))
            })
            .collect();
        let mut degrees: Vec<DegreeData> = Vec::new();
        for d in 0..=p.top_degree() {
            let data = compute_degree(gens, &relations, &degrees, d)?;
            degrees.push(data);
        }
        let mut ring = GradedRing {
            id: fingerprint(p),
            presentation: p.clone(),
            degrees,
            products: HashMap::new(),
        };
        ring.fill_products();
        Ok(ring)
    }

    /// Drops inhomogeneous relations, computes the rest, and reports what
    /// was dropped.
    pub fn compute_homogeneous_part(
        p: &RingPresentation,
    ) -> Result<(Self, Vec<HomogeneityViolation>), GradingError> {
        let violations = validate_homogeneous(p);
        let drop: Vec<usize> = violations.iter().map(|v| v.index).collect();
        let ring = Self::compute(&p.without_relations(&drop))?;
        Ok((ring, violations))
    }

    fn fill_products(&mut self) {
        let top = self.top_degree();
        let gens = self.presentation.generators().to_vec();
        for p in 0..=top {
            for q in 0..=top - p {
                let (bp, bq) = (&self.degrees[p as usize].basis, &self.degrees[q as usize].basis);
                if bp.is_empty() || bq.is_empty() {
                    continue;
                }
                let table: Vec<Vec<Vec<BigInt>>> = bp
                    .iter()
                    .map(|a| {
                        bq.iter()
                            .map(|b| {
                                let prod = a.mul(b, &gens).normalized(&gens);
                                self.coords_in(p + q, &prod)
                            })
                            .collect()
                    })
                    .collect();
                self.products.insert((p, q), table);
            }
        }
    }

    // Coordinates of an admissible polynomial all of whose monomials have
    // degree `d <= top`.
    fn coords_in(&self, d: u32, poly: &PolynomialExpr) -> Vec<BigInt> {
        let data = &self.degrees[d as usize];
        let mut out = vec![BigInt::zero(); data.group.num_generators()];
        for (m, c) in poly.terms() {
            let j = data.index[m];
            for (i, o) in out.iter_mut().enumerate() {
                *o += c * data.reduction.get(i, j);
            }
        }
        data.group.reduce(&mut out);
        out
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        self.presentation.generators()
    }

    pub fn top_degree(&self) -> u32 {
        self.presentation.top_degree()
    }

    /// Group in degree `d`; zero above the top degree.
    pub fn group(&self, d: u32) -> FgAbelianGroup {
        self.degrees
            .get(d as usize)
            .map(|x| x.group.clone())
            .unwrap_or_default()
    }

    pub fn groups(&self) -> Vec<FgAbelianGroup> {
        self.degrees.iter().map(|x| x.group.clone()).collect()
    }

    pub fn monomials(&self, d: u32) -> &[Monomial] {
        self.degrees.get(d as usize).map_or(&[], |x| &x.monomials)
    }

    /// Representatives of the basis classes in degree `d`.
    pub fn basis(&self, d: u32) -> &[PolynomialExpr] {
        self.degrees.get(d as usize).map_or(&[], |x| &x.basis)
    }

    /// Group coordinates of each degree-`d` monomial, one column each.
    pub fn reduction_matrix(&self, d: u32) -> Option<&IntMatrix> {
        self.degrees.get(d as usize).map(|x| &x.reduction)
    }

    pub fn top_nonzero_degree(&self) -> Option<u32> {
        (0..=self.top_degree()).rev().find(|&d| !self.degrees[d as usize].group.is_trivial())
    }

    pub fn poincare_series(&self) -> Vec<usize> {
        self.degrees.iter().map(|x| x.group.free_rank()).collect()
    }

    pub fn torsion_profile(&self) -> Vec<FgAbelianGroup> {
        self.degrees.iter().map(|x| x.group.torsion_part()).collect()
    }

    /// Structure constants `basis_p[i] * basis_q[j]`, if both degrees are
    /// nonzero and `p + q <= top`.
    pub fn product_table(&self, p: u32, q: u32) -> Option<&Vec<Vec<Vec<BigInt>>>> {
        self.products.get(&(p, q))
    }

    pub fn zero(&self, d: u32) -> RingElement {
        RingElement {
            ring: self.id,
            degree: d,
            coords: vec![BigInt::zero(); self.group(d).num_generators()],
        }
    }

    pub fn one(&self) -> RingElement {
        self.normal_form(&self.presentation.one())
            .expect("constants are homogeneous")
    }

    pub fn element(&self, d: u32, coords: Vec<BigInt>) -> Result<RingElement, GradingError> {
        let group = self.group(d);
        if coords.len() != group.num_generators() {
            return Err(GradingError::CoordinateLength {
                degree: d,
                expected: group.num_generators(),
                found: coords.len(),
            });
        }
        let mut coords = coords;
        group.reduce(&mut coords);
        Ok(RingElement {
            ring: self.id,
            degree: d,
            coords,
        })
    }

    pub fn basis_element(&self, d: u32, i: usize) -> RingElement {
        let mut e = self.zero(d);
        e.coords[i] = BigInt::one();
        e
    }

    pub fn normal_form(&self, e: &PolynomialExpr) -> Result<RingElement, GradingError> {
        let degs = e.degrees(self.generators());
        match degs.len() {
            0 => Err(GradingError::ZeroPolynomial),
            1 => self.normal_form_in_degree(e, *degs.iter().next().unwrap()),
            _ => Err(GradingError::InhomogeneousExpression(degs)),
        }
    }

    /// Like [`GradedRing::normal_form`] but also accepts the zero
    /// polynomial, placing it in degree `d`.
    pub fn normal_form_in_degree(
        &self,
        e: &PolynomialExpr,
        d: u32,
    ) -> Result<RingElement, GradingError> {
        let gens = self.generators();
        if e.terms().any(|(m, _)| m.arity() != gens.len()) {
            return Err(GradingError::Arity { expected: gens.len() });
        }
        let degs = e.degrees(gens);
        if degs.iter().any(|&x| x != d) {
            return Err(GradingError::InhomogeneousExpression(degs));
        }
        if d > self.top_degree() {
            return Ok(self.zero(d));
        }
        Ok(RingElement {
            ring: self.id,
            degree: d,
            coords: self.coords_in(d, &e.normalized(gens)),
        })
    }

    fn check(&self, a: &RingElement) -> Result<(), GradingError> {
        if a.ring == self.id {
            Ok(())
        } else {
            Err(GradingError::DifferentRings)
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, GradingError> {
        self.check(a)?;
        self.check(b)?;
        if a.degree != b.degree {
            return Err(GradingError::DegreeMismatch(a.degree, b.degree));
        }
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.element(a.degree, coords)
    }

    pub fn scale(&self, a: &RingElement, c: &BigInt) -> Result<RingElement, GradingError> {
        self.check(a)?;
        self.element(a.degree, a.coords.iter().map(|x| x * c).collect())
    }

    pub fn cup(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, GradingError> {
        self.check(a)?;
        self.check(b)?;
        let d = a.degree + b.degree;
        let Some(table) = self.products.get(&(a.degree, b.degree)) else {
            return Ok(self.zero(d));
        };
        let mut out = vec![BigInt::zero(); self.group(d).num_generators()];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coef = ai * bj;
                for (o, t) in out.iter_mut().zip(&table[i][j]) {
                    *o += &coef * t;
                }
            }
        }
        self.element(d, out)
    }

    pub fn power(&self, a: &RingElement, n: u32) -> Result<RingElement, GradingError> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.cup(&acc, a)?;
        }
        Ok(acc)
    }

    /// Generator of the top nonzero group, signed so that the first
    /// monomial with a nonzero coefficient on it counts positively.
    pub fn orientation(&self) -> Result<RingElement, GradingError> {
        let d = self.top_nonzero_degree().unwrap_or(0);
        let data = &self.degrees[d as usize];
        if !data.group.is_infinite_cyclic() {
            return Err(GradingError::TopNotInfiniteCyclic {
                degree: d,
                group: data.group.to_string(),
            });
        }
        let first = (0..data.monomials.len())
            .map(|j| data.reduction.get(0, j))
            .find(|v| !v.is_zero())
            .expect("a nonzero group has a monomial with nonzero class");
        let sign = if first.is_negative() { -1 } else { 1 };
        self.element(d, vec![BigInt::from(sign)])
    }

    /// Coefficient of a top-degree class on the given orientation.
    pub fn integrate(
        &self,
        a: &RingElement,
        orientation: &RingElement,
    ) -> Result<BigInt, GradingError> {
        self.check(a)?;
        self.check(orientation)?;
        let d = self.top_nonzero_degree().unwrap_or(0);
        let group = self.group(d);
        if !group.is_infinite_cyclic() {
            return Err(GradingError::TopNotInfiniteCyclic {
                degree: d,
                group: group.to_string(),
            });
        }
        if orientation.degree != d || !orientation.coords[0].abs().is_one() {
            return Err(GradingError::NotOrientation);
        }
        if a.degree != d {
            return Err(GradingError::NotTopDegree {
                expected: d,
                found: a.degree,
            });
        }
        Ok(&a.coords[0] * &orientation.coords[0])
    }

    /// Human-readable combination of basis representatives.
    pub fn show(&self, a: &RingElement) -> String {
        let basis = self.basis(a.degree);
        let gens = self.generators();
        let mut out = String::new();
        for (c, b) in a.coords.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            let label = if b.len() == 1 {
                b.fmt_with(gens)
            } else {
                format!("[{}]", b.fmt_with(gens))
            };
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() && label != "1" {
                out.push_str(&label);
            } else if label == "1" {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{abs}*{label}"));
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    pub fn dump(&self) -> RingDump {
        let p = &self.presentation;
        let to_int = |v: &[BigInt]| v.iter().cloned().map(Int).collect::<Vec<_>>();
        let degrees = (0..=self.top_degree())
            .map(|d| {
                let data = &self.degrees[d as usize];
                DegreeDump {
                    degree: d,
                    label: data.group.to_string(),
                    group: data.group.clone(),
                    basis: data.basis.iter().map(|b| p.show(b)).collect(),
                    monomials: data.monomials.iter().map(|m| p.show_monomial(m)).collect(),
                    reduction: (0..data.monomials.len())
                        .map(|j| to_int(&data.reduction.column(j)))
                        .collect(),
                }
            })
            .collect();
        let mut keys: Vec<&(u32, u32)> = self.products.keys().collect();
        keys.sort();
        let products = keys
            .into_iter()
            .map(|&(l, r)| ProductDump {
                left: l,
                right: r,
                table: self.products[&(l, r)]
                    .iter()
                    .map(|row| row.iter().map(|v| to_int(v)).collect())
                    .collect(),
            })
            .collect();
        RingDump {
            generators: p.generators().to_vec(),
            relations: p.relations().iter().map(|r| p.show(r)).collect(),
            top_degree: self.top_degree(),
            degrees,
            products,
        }
    }
}

/// Serializable snapshot of a computed ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingDump {
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<String>,
    pub top_degree: u32,
    pub degrees: Vec<DegreeDump>,
    pub products: Vec<ProductDump>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeDump {
    pub degree: u32,
    pub label: String,
    pub group: FgAbelianGroup,
    pub basis: Vec<String>,
    pub monomials: Vec<String>,
    /// Coordinates of each monomial, in the order of `monomials`.
    pub reduction: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductDump {
    pub left: u32,
    pub right: u32,
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    pub table: Vec<Vec<Vec<Int>>>,
}

#[cfg(test)]
mod tests {
    use super::super::text::parse_presentation;
    use super::*;

    fn ring(src: &str) -> GradedRing {
        GradedRing::compute(&parse_presentation(src).unwrap()).unwrap()
    }

    fn labels(r: &GradedRing) -> Vec<String> {
        r.groups().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn truncated_polynomial() {
        let r = ring("gen x2 2\nrel x2^6\ntop 12\n");
        assert_eq!(r.poincare_series(), [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0]);
        assert!(r.torsion_profile().iter().all(|g| g.is_trivial()));
    }

    #[test]
    fn odd_grassmannian_k3() {
        let r = ring("gen x2 2\ngen x6 6\nrel x2^3 - 2*x6\nrel x6^2\ntop 10\n");
        assert_eq!(labels(&r), ["Z", "0", "Z", "0", "Z", "0", "Z", "0", "Z", "0", "Z"]);
        let p = r.presentation();
        let x2 = p.var("x2").unwrap();
        let x6 = p.var("x6").unwrap();
        let gens = p.generators();
        let cube = r.normal_form(&x2.pow(3, gens)).unwrap();
        assert_eq!(r.show(&cube), "2*x6");
        assert_eq!(r.basis(8), [x2.mul(&x6, gens)]);
        let a = r.normal_form(&x2).unwrap();
        let b = r.normal_form(&x2.pow(2, gens)).unwrap();
        assert_eq!(r.cup(&a, &b).unwrap(), cube);
        let c = r.normal_form(&x6).unwrap();
        assert_eq!(r.show(&r.cup(&a, &c).unwrap()), "x2*x6");
        let o = r.orientation().unwrap();
        assert_eq!(o.degree(), 10);
        assert_eq!(r.show(&o), "x2^2*x6");
        assert_eq!(r.integrate(&o, &o).unwrap(), BigInt::one());
        let top = r.normal_form(&x2.pow(5, gens)).unwrap();
        assert_eq!(r.integrate(&top, &o).unwrap(), BigInt::from(2));
    }

    #[test]
    fn squares_above_top_vanish() {
        let r = ring("gen x2 2\ngen x6 6\nrel x2^3 - 2*x6\nrel x6^2\ntop 10\n");
        let x6 = r.normal_form(&r.presentation().var("x6").unwrap()).unwrap();
        let sq = r.cup(&x6, &x6).unwrap();
        assert_eq!(sq.degree(), 12);
        assert!(sq.is_zero());
        let high = r.presentation().var("x6").unwrap().pow(2, r.generators());
        assert!(r.normal_form(&high).unwrap().is_zero());
    }

    #[test]
    fn torsion_in_odd_degree() {
        let r = ring("gen x 1\nrel 2*x\nrel x^2\ntop 2\n");
        assert_eq!(labels(&r), ["Z", "Z/2", "0"]);
        let x = r.normal_form(&r.presentation().var("x").unwrap()).unwrap();
        assert_eq!(r.show(&r.scale(&x, &BigInt::from(3)).unwrap()), "x");
        assert!(matches!(r.orientation(), Err(GradingError::TopNotInfiniteCyclic { .. })));
    }

    #[test]
    fn zero_presentation() {
        let r = ring("gen x 2\nrel x\ntop 6\n");
        assert_eq!(r.poincare_series(), [1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(r.show(&r.one()), "1");
    }

    #[test]
    fn unit_law_and_errors() {
        let r = ring("gen x2 2\nrel x2^4\ntop 8\n");
        let other = ring("gen x2 2\nrel x2^3\ntop 8\n");
        let one = r.one();
        let x = r.basis_element(2, 0);
        assert_eq!(r.cup(&one, &x).unwrap(), x);
        assert!(matches!(r.cup(&x, &other.one()), Err(GradingError::DifferentRings)));
        let p = r.presentation();
        let bad = p.var("x2").unwrap().add(&p.one());
        assert!(matches!(r.normal_form(&bad), Err(GradingError::InhomogeneousExpression(_))));
        assert!(matches!(r.normal_form(&PolynomialExpr::zero()), Err(GradingError::ZeroPolynomial)));
        let o = r.orientation().unwrap();
        assert!(matches!(r.integrate(&x, &o), Err(GradingError::NotTopDegree { .. })));
    }

    #[test]
    fn inhomogeneous_is_rejected() {
        let p = parse_presentation("gen x 2\nrel x^2 - x\ntop 4\n").unwrap();
        assert!(matches!(GradedRing::compute(&p), Err(GradingError::Inhomogeneous(_))));
        let (r, dropped) = GradedRing::compute_homogeneous_part(&p).unwrap();
        assert_eq!(dropped.len(), 1);
        assert_eq!(r.poincare_series(), [1, 0, 1, 0, 1]);
    }

    #[test]
    fn exterior_generators_anticommute() {
        let r = ring("gen a 1\ngen b 3\nrel a^2\nrel b^2\ntop 4\n");
        let a = r.basis_element(1, 0);
        let b = r.basis_element(3, 0);
        let ab = r.cup(&a, &b).unwrap();
        let ba = r.cup(&b, &a).unwrap();
        assert!(!ab.is_zero());
        assert_eq!(r.add(&ab, &ba).unwrap(), r.zero(4));
    }

    #[test]
    fn monomial_overflow() {
        let gens: Vec<GeneratorSpec> = (0..6).map(|i| GeneratorSpec::new(format!("g{i}"), 2)).collect();
        assert!(matches!(
            monomials_of_degree(&gens, 20, 100),
            Err(GradingError::MonomialOverflow { degree: 20, limit: 100 })
        ));
    }

    #[test]
    fn combinations_run_backwards() {
        let mut c = vec![1, 2];
        let mut seen = vec![c.clone()];
        while prev_combination(&mut c, 3) {
            seen.push(c.clone());
        }
        assert_eq!(seen, [vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn dump_round_trips() {
        let r = ring("gen x2 2\ngen x6 6\nrel x2^3 - 2*x6\nrel x6^2\ntop 10\n");
        let dump = r.dump();
        let json = serde_json::to_string(&dump).unwrap();
        let back: RingDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dump);
        assert_eq!(dump.degrees[6].basis, ["x6"]);
        assert_eq!(dump.degrees[6].monomials, ["x2^3", "x6"]);
    }
}
