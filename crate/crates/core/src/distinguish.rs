//! Comparing spaces: cohomology groups, cup-power divisibility, bounded
//! isomorphism search and homotopy tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{FgAbelianGroup, IntMatrix, PresentedHom};
use crate::catalog::{self, CatalogError, SpaceSpec};
use crate::grading::{GradedRing, GradingError, Monomial, PolynomialExpr, RingElement};
use crate::homotopy::first_difference;

pub const DEFAULT_SEARCH_CEILING: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistinguishError {
    #[error("degree-2 group is {0}, not Z")]
    NoDegreeTwoGenerator(String),
    #[error("rings computed to different bounds ({0} and {1})")]
    BoundMismatch(u32, u32),
    #[error("search space of {size} candidates exceeds the ceiling {ceiling}")]
    SearchTooLarge { size: String, ceiling: u128 },
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Index of `<g^j>` in the free part of degree `2j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PowerIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for PowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerIndex::Finite(n) => write!(f, "{n}"),
            PowerIndex::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for PowerIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PowerIndex::Finite(n) => match n.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&n.to_string()),
            },
            PowerIndex::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PowerIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(n) => Ok(PowerIndex::Finite(n.into())),
            Repr::Text(t) if t == "inf" => Ok(PowerIndex::Infinite),
            Repr::Text(t) => t
                .parse()
                .map(PowerIndex::Finite)
                .map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub groups: Vec<FgAbelianGroup>,
    /// Keyed by `j`; degrees `2j` with a zero group are omitted.
    pub power_indices: BTreeMap<u32, PowerIndex>,
}

/// Power indices of `g` in every even degree up to the top.
pub fn power_indices_of(
    r: &GradedRing,
    g: &RingElement,
) -> Result<BTreeMap<u32, PowerIndex>, DistinguishError> {
    let mut out = BTreeMap::new();
    for j in 1..=r.top_degree() / 2 {
        let group = r.group(2 * j);
        if group.is_trivial() {
            continue;
        }
        let p = r.power(g, j)?;
        let idx = if group.free_rank() == 1 && !p.coords()[0].is_zero() {
            PowerIndex::Finite(p.coords()[0].abs())
        } else {
            PowerIndex::Infinite
        };
        out.insert(j, idx);
    }
    Ok(out)
}

pub fn invariants_of(r: &GradedRing) -> Result<InvariantVector, DistinguishError> {
    let g2 = r.group(2);
    if !g2.is_infinite_cyclic() {
        return Err(DistinguishError::NoDegreeTwoGenerator(g2.to_string()));
    }
    Ok(InvariantVector {
        groups: r.groups(),
        power_indices: power_indices_of(r, &r.basis_element(2, 0))?,
    })
}

/// Degreewise equality and the first degree that differs.
pub fn groups_equal(a: &GradedRing, b: &GradedRing) -> Result<(bool, Option<u32>), DistinguishError> {
    if a.top_degree() != b.top_degree() {
        return Err(DistinguishError::BoundMismatch(a.top_degree(), b.top_degree()));
    }
    let first = (0..=a.top_degree()).find(|&d| a.group(d) != b.group(d));
    Ok((first.is_none(), first))
}

/// Images of the generators of one ring in another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub images: Vec<RingElement>,
}

impl IsoWitness {
    /// `x2 -> x2 + y2` lines.
    pub fn describe(&self, a: &GradedRing, b: &GradedRing) -> Vec<String> {
        a.generators()
            .iter()
            .zip(&self.images)
            .map(|(g, img)| format!("{} -> {}", g.name, b.show(img)))
            .collect()
    }
}

fn eval(
    b: &GradedRing,
    poly: &PolynomialExpr,
    degree: u32,
    images: &[RingElement],
) -> Result<RingElement, GradingError> {
    let mut acc = b.zero(degree);
    for (m, c) in poly.terms() {
        let mut prod = b.one();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                prod = b.cup(&prod, &images[i])?;
            }
        }
        acc = b.add(&acc, &b.scale(&prod, c)?)?;
    }
    Ok(acc)
}

// Relations of `a` that only involve the first `upto` generators, plus
// `x^2` for odd generators.
fn relations_closed_at(a: &GradedRing, upto: usize) -> Vec<(PolynomialExpr, u32)> {
    let gens = a.generators();
    let arity = gens.len();
    let mut out = Vec::new();
    for r in a.presentation().relations() {
        let Some(d) = r.homogeneous_degree(gens) else { continue };
        let last = r
            .terms()
            .flat_map(|(m, _)| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>()
            })
            .max();
        if last.map_or(upto == 0, |l| l + 1 == upto) {
            out.push((r.clone(), d));
        }
    }
    if upto > 0 && gens[upto - 1].is_odd() {
        let mut e = vec![0; arity];
        e[upto - 1] = 2;
        let sq = PolynomialExpr::term(Monomial::from_exponents(e), 1);
        out.push((sq, 2 * gens[upto - 1].degree));
    }
    out
}

/// Whether `images` defines a ring map `a -> b` that is bijective in every
/// degree up to the shared top.
pub fn check_witness(
    a: &GradedRing,
    b: &GradedRing,
    images: &[RingElement],
) -> Result<bool, DistinguishError> {
    for upto in 0..=images.len() {
        for (rel, d) in relations_closed_at(a, upto) {
            if !eval(b, &rel, d, images)?.is_zero() {
                return Ok(false);
            }
        }
    }
    induced_is_iso(a, b, images)
}

fn induced_is_iso(a: &GradedRing, b: &GradedRing, images: &[RingElement]) -> Result<bool, DistinguishError> {
    for d in 0..=a.top_degree() {
        let (ga, gb) = (a.group(d), b.group(d));
        if ga.num_generators() == 0 && gb.num_generators() == 0 {
            continue;
        }
        let cols = a
            .basis(d)
            .iter()
            .map(|p| Ok(eval(b, p, d, images)?.coords().to_vec()))
            .collect::<Result<Vec<_>, GradingError>>()?;
        let m = IntMatrix::from_columns(gb.num_generators(), &cols);
        match PresentedHom::new(ga, gb, m) {
            Ok(h) if h.is_isomorphism() => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Coefficients `0, 1, -1, 2, -2, ...` up to `bound`.
fn coefficient_order(bound: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero()];
    for c in 1..=bound as i64 {
        v.push(c.into());
        v.push((-c).into());
    }
    v
}

/// First ring isomorphism `a -> b` whose generator images have coordinates
/// in `[-bound, bound]`. Generators are assigned in declaration order, the
/// first varying slowest; within one image the first coordinate varies
/// fastest through `0, 1, -1, 2, -2, ...`. `None` only means no witness
/// within the bound.
pub fn isomorphism_search(
    a: &GradedRing,
    b: &GradedRing,
    bound: u32,
) -> Result<Option<IsoWitness>, DistinguishError> {
    isomorphism_search_with_ceiling(a, b, bound, DEFAULT_SEARCH_CEILING)
}

pub fn isomorphism_search_with_ceiling(
    a: &GradedRing,
    b: &GradedRing,
    bound: u32,
    ceiling: u128,
) -> Result<Option<IsoWitness>, DistinguishError> {
    if a.top_degree() != b.top_degree() {
        return Err(DistinguishError::BoundMismatch(a.top_degree(), b.top_degree()));
    }
    let coeffs = coefficient_order(bound);
    let dims: Vec<(u32, usize)> = a
        .generators()
        .iter()
        .map(|g| (g.degree, b.group(g.degree).num_generators()))
        .collect();
    let mut size: u128 = 1;
    for (_, n) in &dims {
        size = (coeffs.len() as u128)
            .checked_pow(*n as u32)
            .and_then(|x| x.checked_mul(size))
            .unwrap_or(u128::MAX);
    }
    if size > ceiling {
        return Err(DistinguishError::SearchTooLarge {
            size: if size == u128::MAX { "more than 2^128".into() } else { size.to_string() },
            ceiling,
        });
    }
    if !groups_equal(a, b)?.0 {
        return Ok(None);
    }
    let closed: Vec<Vec<(PolynomialExpr, u32)>> =
        (0..=dims.len()).map(|i| relations_closed_at(a, i)).collect();
    for (rel, d) in &closed[0] {
        if !eval(b, rel, *d, &[])?.is_zero() {
            return Ok(None);
        }
    }

    struct Search<'a> {
        a: &'a GradedRing,
        b: &'a GradedRing,
        coeffs: Vec<BigInt>,
        dims: Vec<(u32, usize)>,
        closed: Vec<Vec<(PolynomialExpr, u32)>>,
    }

    impl Search<'_> {
        fn go(&self, images: &mut Vec<RingElement>) -> Result<Option<IsoWitness>, DistinguishError> {
            let i = images.len();
            if i == self.dims.len() {
                return Ok(if induced_is_iso(self.a, self.b, images)? {
                    Some(IsoWitness {
                        images: images.clone(),
                    })
                } else {
                    None
                });
            }
            let (deg, n) = self.dims[i];
            let mut digits = vec![0usize; n];
            loop {
                let coords = digits.iter().map(|&k| self.coeffs[k].clone()).collect();
                let img = self.b.element(deg, coords)?;
                images.push(img);
                let mut ok = true;
                for (rel, d) in &self.closed[i + 1] {
                    if !eval(self.b, rel, *d, images)?.is_zero() {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    if let Some(w) = self.go(images)? {
                        return Ok(Some(w));
                    }
                }
                images.pop();
                let mut k = 0;
                loop {
                    if k == n {
                        return Ok(None);
                    }
                    digits[k] += 1;
                    if digits[k] < self.coeffs.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
    }

    Search {
        a,
        b,
        coeffs,
        dims,
        closed,
    }
    .go(&mut Vec::new())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerIndexPair {
    pub a: Option<BTreeMap<u32, PowerIndex>>,
    pub b: Option<BTreeMap<u32, PowerIndex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoSearchOutcome {
    pub bound: u32,
    /// `witness`, `none within bound`, `skipped` or `too large`.
    pub result: String,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub spaces: [String; 2],
    pub groups_equal: bool,
    pub first_group_mismatch: Option<u32>,
    pub power_indices: PowerIndexPair,
    pub first_power_index_difference: Option<u32>,
    pub iso_search: IsoSearchOutcome,
    pub pi_first_difference: Option<usize>,
    pub certificates: Vec<String>,
    pub verdict: String,
}

pub const VERDICT_DISTINCT: &str = "cohomology-equal, not homotopy-equivalent";
pub const VERDICT_GROUPS_DIFFER: &str = "not homotopy-equivalent (cohomology groups differ)";
pub const VERDICT_UNKNOWN: &str = "indistinguishable by this tool";

pub fn full_report(
    a: SpaceSpec,
    b: SpaceSpec,
    max_pi_level: usize,
) -> Result<ComparisonReport, DistinguishError> {
    full_report_with_bound(a, b, max_pi_level, 2)
}

/// Compares two catalog spaces, both computed to the larger dimension + 2.
pub fn full_report_with_bound(
    a: SpaceSpec,
    b: SpaceSpec,
    max_pi_level: usize,
    bound: u32,
) -> Result<ComparisonReport, DistinguishError> {
    let top = a.space.dimension().max(b.space.dimension()) + 2;
    let ra = GradedRing::compute(&catalog::presentation_with_top(a.space, a.variant, top)?)?;
    let rb = GradedRing::compute(&catalog::presentation_with_top(b.space, b.variant, top)?)?;
    let (eq, first) = groups_equal(&ra, &rb)?;
    let pa = invariants_of(&ra).ok().map(|v| v.power_indices);
    let pb = invariants_of(&rb).ok().map(|v| v.power_indices);
    let first_pi_idx = match (&pa, &pb) {
        (Some(x), Some(y)) => x
            .keys()
            .chain(y.keys())
            .copied()
            .filter(|j| x.get(j) != y.get(j))
            .min(),
        _ => None,
    };

    let mut certificates = Vec::new();
    if let Some(d) = first {
        certificates.push(format!(
            "H^{d}: {} vs {}",
            ra.group(d),
            rb.group(d)
        ));
    }
    if let (Some(j), Some(x), Some(y)) = (first_pi_idx, &pa, &pb) {
        let show = |m: &BTreeMap<u32, PowerIndex>| m.get(&j).map_or("-".to_string(), |v| v.to_string());
        certificates.push(format!("power index of g^{j}: {} vs {}", show(x), show(y)));
    }

    let iso_search = if !eq {
        IsoSearchOutcome {
            bound,
            result: "skipped".into(),
            witness: None,
        }
    } else {
        match isomorphism_search(&ra, &rb, bound) {
            Ok(Some(w)) => IsoSearchOutcome {
                bound,
                result: "witness".into(),
                witness: Some(w.describe(&ra, &rb)),
            },
            Ok(None) => IsoSearchOutcome {
                bound,
                result: "none within bound".into(),
                witness: None,
            },
            Err(DistinguishError::SearchTooLarge { .. }) => IsoSearchOutcome {
                bound,
                result: "too large".into(),
                witness: None,
            },
            Err(e) => return Err(e),
        }
    };

    let ta = catalog::homotopy_table_of(a.space, max_pi_level)?;
    let tb = catalog::homotopy_table_of(b.space, max_pi_level)?;
    let pi_diff = first_difference(&ta, &tb);
    if let Some(l) = pi_diff {
        certificates.push(format!("pi_{l}: {} vs {}", ta.get(l), tb.get(l)));
    }

    let verdict = if !eq {
        VERDICT_GROUPS_DIFFER
    } else if first_pi_idx.is_some() || pi_diff.is_some() {
        VERDICT_DISTINCT
    } else {
        VERDICT_UNKNOWN
    };
    Ok(ComparisonReport {
        spaces: [a.to_string(), b.to_string()],
        groups_equal: eq,
        first_group_mismatch: first,
        power_indices: PowerIndexPair { a: pa, b: pb },
        first_power_index_difference: first_pi_idx,
        iso_search,
        pi_first_difference: pi_diff,
        certificates,
        verdict: verdict.to_string(),
    })
}
