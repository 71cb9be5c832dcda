//! Two-row Serre spectral sequence of a circle bundle `S^1 -> E -> B`.
//!
//! `E_2^{p,q} = H^p(B)` for `q = 0, 1`, the only differential is
//! `d_2(a x) = e x` with `e` the Euler class, and `E_3 = E_inf`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{extensions, AbelianError, FgAbelianGroup, IntMatrix, PresentedHom};
use crate::catalog::{self, CatalogError, SpaceId, Variant};
use crate::grading::{GradedRing, GradingError, RingElement};

const EXTENSION_LIMIT: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GysinError {
    #[error("Euler class must have degree 2, got {0}")]
    EulerDegree(u32),
    #[error("expected {expected} total groups, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no differential is consistent at total degree {degree}: {reason}")]
    Contradiction { degree: usize, reason: String },
    #[error("page and differential have different shapes")]
    Shape,
    #[error("base {0} is not simply connected")]
    NotSimplyConnected(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PageIndex {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "inf")]
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageEntry {
    pub group: FgAbelianGroup,
    /// One label per generator of `group`; empty on limit pages.
    pub labels: Vec<String>,
}

impl PageEntry {
    fn bare(group: FgAbelianGroup) -> Self {
        PageEntry {
            group,
            labels: Vec::new(),
        }
    }

    /// `Z x6 + Z y6` on labeled pages, the bare group otherwise.
    pub fn cell(&self) -> String {
        if self.group.is_trivial() {
            return "0".into();
        }
        if self.labels.is_empty() {
            return self.group.short_form();
        }
        self.group
            .generator_orders()
            .iter()
            .zip(&self.labels)
            .map(|(d, l)| {
                let g = if d == &0.into() { "Z".to_string() } else { format!("Z_{d}") };
                format!("{g} {l}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SSPage {
    pub index: PageIndex,
    /// `rows[q][p]` for `q = 0, 1` and `0 <= p <= top`.
    pub rows: [Vec<PageEntry>; 2],
}

impl SSPage {
    pub fn top(&self) -> usize {
        self.rows[0].len().saturating_sub(1)
    }

    /// Entry at `(p, q)`; zero outside the band.
    pub fn group(&self, p: usize, q: usize) -> FgAbelianGroup {
        self.rows
            .get(q)
            .and_then(|r| r.get(p))
            .map(|e| e.group.clone())
            .unwrap_or_default()
    }

    /// Plain-text layout: the `q = 1` row above the `q = 0` row, column
    /// indices below, trailing all-zero columns dropped.
    pub fn render(&self) -> String {
        let last = (0..self.rows[0].len())
            .rev()
            .find(|&p| !self.group(p, 0).is_trivial() || !self.group(p, 1).is_trivial())
            .unwrap_or(0);
        let cells: Vec<[String; 2]> = (0..=last)
            .map(|p| [self.rows[0][p].cell(), self.rows[1][p].cell()])
            .collect();
        let widths: Vec<usize> = cells
            .iter()
            .enumerate()
            .map(|(p, c)| c[0].len().max(c[1].len()).max(p.to_string().len()))
            .collect();
        let name = match self.index {
            PageIndex::Two => "E_2",
            PageIndex::Infinity => "E_inf",
        };
        let mut out = String::new();
        for q in [1, 0] {
            let head = if q == 0 { name } else { "" };
            out.push_str(&format!("{head:<5} {q} |"));
            for (c, w) in cells.iter().zip(&widths) {
                out.push_str(&format!(" {:<w$} |", c[q], w = *w));
            }
            out.push('\n');
        }
        out.push_str("         ");
        for (p, w) in widths.iter().enumerate() {
            out.push_str(&format!(" {:<w$}  ", p, w = *w));
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
        out
    }
}

impl fmt::Display for SSPage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Two copies of `H^*(B)`, the upper one multiplied by the fiber class `a`.
pub fn build_e2(base: &GradedRing) -> SSPage {
    let p = base.presentation();
    let mut rows: [Vec<PageEntry>; 2] = [Vec::new(), Vec::new()];
    for d in 0..=base.top_degree() {
        let group = base.group(d);
        let labels: Vec<String> = base
            .basis(d)
            .iter()
            .map(|b| {
                let s = p.show(b);
                if b.len() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect();
        let upper = labels
            .iter()
            .map(|l| if l == "1" { "a".to_string() } else { format!("a{l}") })
            .collect();
        rows[0].push(PageEntry {
            group: group.clone(),
            labels,
        });
        rows[1].push(PageEntry {
            group,
            labels: upper,
        });
    }
    SSPage {
        index: PageIndex::Two,
        rows,
    }
}

/// `d_2 : E^{p,1} -> E^{p+2,0}` for every `p` of the page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    maps: Vec<PresentedHom>,
}

impl Differential {
    pub fn maps(&self) -> &[PresentedHom] {
        &self.maps
    }

    pub fn at(&self, p: usize) -> &PresentedHom {
        &self.maps[p]
    }

    pub fn zero(page: &SSPage) -> Self {
        let top = page.top();
        Differential {
            maps: (0..=top)
                .map(|p| PresentedHom::zero(page.group(p, 1), page.group(p + 2, 0)))
                .collect(),
        }
    }

    pub fn from_maps(maps: Vec<PresentedHom>) -> Self {
        Differential { maps }
    }
}

/// Cup product with `e`, row by row.
pub fn d2_from_euler(base: &GradedRing, e: &RingElement) -> Result<Differential, GysinError> {
    if e.degree() != 2 {
        return Err(GysinError::EulerDegree(e.degree()));
    }
    let top = base.top_degree();
    let mut maps = Vec::new();
    for p in 0..=top {
        let source = base.group(p);
        let target = base.group(p + 2);
        let cols = (0..source.num_generators())
            .map(|j| Ok(base.cup(e, &base.basis_element(p, j))?.coords().to_vec()))
            .collect::<Result<Vec<_>, GysinError>>()?;
        let matrix = IntMatrix::from_columns(target.num_generators(), &cols);
        maps.push(PresentedHom::new(source, target, matrix)?);
    }
    Ok(Differential { maps })
}

/// `E_inf^{p,0} = coker d_2^{p-2}`, `E_inf^{p,1} = ker d_2^{p}`.
pub fn take_limit(page: &SSPage, d: &Differential) -> Result<SSPage, GysinError> {
    let n = page.rows[0].len();
    if page.index != PageIndex::Two || d.maps.len() != n {
        return Err(GysinError::Shape);
    }
    let lower = (0..n)
        .map(|p| {
            PageEntry::bare(if p >= 2 {
                d.maps[p - 2].cokernel()
            } else {
                page.group(p, 0)
            })
        })
        .collect();
    let upper = (0..n).map(|p| PageEntry::bare(d.maps[p].kernel())).collect();
    Ok(SSPage {
        index: PageIndex::Infinity,
        rows: [lower, upper],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "groups", rename_all = "snake_case")]
pub enum Resolved {
    Known(FgAbelianGroup),
    Ambiguous(Vec<FgAbelianGroup>),
}

/// `0 -> E_inf^{n,0} -> H^n(E) -> E_inf^{n-1,1} -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationAssembly {
    pub degree: usize,
    pub sub: FgAbelianGroup,
    pub quotient: FgAbelianGroup,
    pub resolved: Resolved,
}

impl FiltrationAssembly {
    pub fn candidates(&self) -> Vec<FgAbelianGroup> {
        match &self.resolved {
            Resolved::Known(g) => vec![g.clone()],
            Resolved::Ambiguous(v) => v.clone(),
        }
    }
}

/// Total-space groups in degrees `0..=top+1`.
pub fn assemble_total(limit: &SSPage) -> Result<Vec<FiltrationAssembly>, GysinError> {
    let n = limit.rows[0].len();
    (0..=n)
        .map(|deg| {
            let sub = limit.group(deg, 0);
            let quotient = if deg == 0 {
                FgAbelianGroup::zero()
            } else {
                limit.group(deg - 1, 1)
            };
            let resolved = if sub.is_trivial() {
                Resolved::Known(quotient.clone())
            } else if quotient.is_trivial() || quotient.is_free() {
                Resolved::Known(sub.direct_sum(&quotient))
            } else {
                Resolved::Ambiguous(extensions(&sub, &quotient, EXTENSION_LIMIT)?)
            };
            Ok(FiltrationAssembly {
                degree: deg,
                sub,
                quotient,
                resolved,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch {
        expected: FgAbelianGroup,
        got: Vec<FgAbelianGroup>,
    },
    AmbiguousConsistent {
        candidates: Vec<FgAbelianGroup>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GysinReport {
    pub degrees: Vec<(usize, Verdict)>,
    pub ok: bool,
}

impl GysinReport {
    pub fn mismatches(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|(_, v)| matches!(v, Verdict::Mismatch { .. }))
            .map(|(d, _)| *d)
            .collect()
    }
}

pub fn verify_total(limit: &SSPage, expected: &[FgAbelianGroup]) -> Result<GysinReport, GysinError> {
    let assembled = assemble_total(limit)?;
    if assembled.len() != expected.len() {
        return Err(GysinError::LengthMismatch {
            expected: assembled.len(),
            found: expected.len(),
        });
    }
    let degrees: Vec<(usize, Verdict)> = assembled
        .iter()
        .zip(expected)
        .map(|(a, want)| {
            let v = match &a.resolved {
                Resolved::Known(g) if g == want => Verdict::Match,
                Resolved::Ambiguous(c) if c.contains(want) => Verdict::AmbiguousConsistent {
                    candidates: c.clone(),
                },
                _ => Verdict::Mismatch {
                    expected: want.clone(),
                    got: a.candidates(),
                },
            };
            (a.degree, v)
        })
        .collect();
    let ok = degrees.iter().all(|(_, v)| !matches!(v, Verdict::Mismatch { .. }));
    Ok(GysinReport { degrees, ok })
}

/// What exactness forces on `d_2^p : H^p(B) -> H^{p+2}(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "group", rename_all = "snake_case")]
pub enum D2Constraint {
    Iso,
    InjectiveWithCokernel(FgAbelianGroup),
    SurjectiveWithKernel(FgAbelianGroup),
    Zero,
    Unconstrained,
}

impl D2Constraint {
    pub fn is_satisfied_by(&self, d: &PresentedHom) -> bool {
        match self {
            D2Constraint::Iso => d.is_isomorphism(),
            D2Constraint::InjectiveWithCokernel(g) => d.is_injective() && &d.cokernel() == g,
            D2Constraint::SurjectiveWithKernel(g) => d.is_surjective() && &d.kernel() == g,
            D2Constraint::Zero => d.matrix().is_zero(),
            D2Constraint::Unconstrained => true,
        }
    }

    /// The sharpest constraint an actual map satisfies.
    pub fn of(d: &PresentedHom) -> Self {
        let (k, c) = (d.kernel(), d.cokernel());
        if k.is_trivial() && c.is_trivial() {
            D2Constraint::Iso
        } else if k.is_trivial() {
            D2Constraint::InjectiveWithCokernel(c)
        } else if d.matrix().is_zero() {
            D2Constraint::Zero
        } else if c.is_trivial() {
            D2Constraint::SurjectiveWithKernel(k)
        } else {
            D2Constraint::Unconstrained
        }
    }
}

impl fmt::Display for D2Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            D2Constraint::Iso => f.write_str("iso"),
            D2Constraint::InjectiveWithCokernel(g) => write!(f, "injective, coker {g}"),
            D2Constraint::SurjectiveWithKernel(g) => write!(f, "surjective, ker {g}"),
            D2Constraint::Zero => f.write_str("zero"),
            D2Constraint::Unconstrained => f.write_str("unconstrained"),
        }
    }
}

/// Forces kernels and cokernels of `d_2` from the total-space groups by
/// propagating the exact sequences
/// `0 -> coker d^{n-2} -> H^n(E) -> ker d^{n-1} -> 0` to a fixed point.
pub fn required_d2_profile(
    base: &[FgAbelianGroup],
    total: &[FgAbelianGroup],
) -> Result<Vec<D2Constraint>, GysinError> {
    let len = base.len();
    let b = |p: usize| base.get(p).cloned().unwrap_or_default();
    let mut ker: Vec<Option<FgAbelianGroup>> = vec![None; len];
    let mut coker: Vec<Option<FgAbelianGroup>> = vec![None; len];
    for p in 0..len {
        if b(p).is_trivial() {
            ker[p] = Some(FgAbelianGroup::zero());
            coker[p] = Some(b(p + 2));
        }
        if b(p + 2).is_trivial() {
            coker[p] = Some(FgAbelianGroup::zero());
            ker[p] = Some(b(p));
        }
    }

    fn set(
        slot: &mut Option<FgAbelianGroup>,
        value: FgAbelianGroup,
        degree: usize,
        what: &str,
    ) -> Result<bool, GysinError> {
        match slot {
            Some(old) if *old == value => Ok(false),
            Some(old) => Err(GysinError::Contradiction {
                degree,
                reason: format!("{what} would be both {old} and {value}"),
            }),
            None => {
                *slot = Some(value);
                Ok(true)
            }
        }
    }

    loop {
        let mut changed = false;
        for (n, h) in total.iter().enumerate() {
            // Out-of-band slots have fixed values.
            let mut fixed_c = if n < 2 {
                Some(b(n))
            } else if n - 2 >= len {
                Some(FgAbelianGroup::zero())
            } else {
                None
            };
            let mut fixed_k = if n == 0 || n > len {
                Some(FgAbelianGroup::zero())
            } else {
                None
            };
            let c_slot = if n >= 2 && n - 2 < len { coker[n - 2].clone() } else { fixed_c.clone() };
            let k_slot = if n >= 1 && n - 1 < len { ker[n - 1].clone() } else { fixed_k.clone() };
            let mut new_c = None;
            let mut new_k = None;
            if h.is_trivial() {
                new_c = Some(FgAbelianGroup::zero());
                new_k = Some(FgAbelianGroup::zero());
            }
            if c_slot.as_ref().is_some_and(|g| g.is_trivial()) {
                new_k = Some(h.clone());
            }
            if k_slot.as_ref().is_some_and(|g| g.is_trivial()) {
                new_c = Some(h.clone());
            }
            if let Some(v) = new_c {
                let slot = if n >= 2 && n - 2 < len {
                    &mut coker[n - 2]
                } else {
                    &mut fixed_c
                };
                changed |= set(slot, v, n, "the incoming cokernel")?;
            }
            if let Some(v) = new_k {
                let slot = if n >= 1 && n - 1 < len {
                    &mut ker[n - 1]
                } else {
                    &mut fixed_k
                };
                changed |= set(slot, v, n, "the outgoing kernel")?;
            }
            let c_now = if n >= 2 && n - 2 < len { coker[n - 2].clone() } else { fixed_c };
            let k_now = if n >= 1 && n - 1 < len { ker[n - 1].clone() } else { fixed_k };
            if let (Some(c), Some(k)) = (c_now, k_now) {
                if !extensions(&c, &k, EXTENSION_LIMIT)?.contains(h) {
                    return Err(GysinError::Contradiction {
                        degree: n,
                        reason: format!("{h} is not an extension of {k} by {c}"),
                    });
                }
            }
        }
        if !changed {
            break;
        }
    }

    Ok((0..len)
        .map(|p| {
            let (src, tgt) = (b(p), b(p + 2));
            if src.is_trivial() && tgt.is_trivial() {
                return D2Constraint::Iso;
            }
            if tgt.is_trivial() {
                return D2Constraint::Zero;
            }
            match (&ker[p], &coker[p]) {
                (Some(k), Some(c)) if k.is_trivial() && c.is_trivial() => D2Constraint::Iso,
                (Some(k), Some(c)) if k.is_trivial() => D2Constraint::InjectiveWithCokernel(c.clone()),
                (Some(k), _) if *k == src && (src.is_finite() || tgt.torsion().is_empty()) => {
                    D2Constraint::Zero
                }
                (Some(k), Some(c)) if c.is_trivial() => D2Constraint::SurjectiveWithKernel(k.clone()),
                _ => D2Constraint::Unconstrained,
            }
        })
        .collect())
}

/// Every stage of the computation for one catalog bundle.
#[derive(Clone, Debug)]
pub struct GysinRun {
    pub base: SpaceId,
    pub total: SpaceId,
    pub variant: Variant,
    pub ring: GradedRing,
    pub e2: SSPage,
    pub d2: Differential,
    pub limit: SSPage,
    pub assembly: Vec<FiltrationAssembly>,
    pub expected: Vec<FgAbelianGroup>,
    pub report: GysinReport,
}

/// Runs the sequence over a catalog base with Euler class `x2` and checks
/// it against the catalog total space.
pub fn run_catalog(base: SpaceId, variant: Variant, total: SpaceId) -> Result<GysinRun, GysinError> {
    if !base.is_simply_connected() {
        return Err(GysinError::NotSimplyConnected(base.to_string()));
    }
    let ring = catalog::compute_space(base, variant)?;
    let e = ring.normal_form(&ring.presentation().var("x2")?)?;
    let e2 = build_e2(&ring);
    let d2 = d2_from_euler(&ring, &e)?;
    let limit = take_limit(&e2, &d2)?;
    let assembly = assemble_total(&limit)?;
    let expected = catalog::space_data(total, Variant::Corrected)?.groups(ring.top_degree() + 1)?;
    let report = verify_total(&limit, &expected)?;
    Ok(GysinRun {
        base,
        total,
        variant,
        ring,
        e2,
        d2,
        limit,
        assembly,
        expected,
        report,
    })
}
