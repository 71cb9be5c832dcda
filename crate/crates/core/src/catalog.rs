//! Presentations, dimensions and low homotopy of the spaces under study.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbelianGroup;
use crate::grading::{
    parse_polynomial, GeneratorSpec, GradedRing, GradingError, RingElement, RingPresentation,
};
use crate::homotopy::{les_base, PiEntry, PiTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceId {
    /// Complex projective space `CP_n`.
    CP(u32),
    /// `G_2^+ R^{2k+1}`.
    GrassOdd(u32),
    /// `G_2^+ R^{2k}`.
    GrassEven(u32),
    /// `V_2 R^{2k+1}`.
    StiefelOdd(u32),
    /// `V_2 R^{2k}`.
    StiefelEven(u32),
    Sphere(u32),
    S2xS2,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Verbatim,
    #[default]
    Corrected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Verbatim => "verbatim",
            Variant::Corrected => "corrected",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot parse space {0:?}; expected cp:<n>, g2+:<n>, v2:<n>, s:<n> or s2xs2")]
    Parse(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

impl SpaceId {
    pub fn validate(self) -> Result<Self, CatalogError> {
        let ok = match self {
            SpaceId::CP(n) | SpaceId::Sphere(n) => n >= 1,
            SpaceId::GrassOdd(k)
            | SpaceId::GrassEven(k)
            | SpaceId::StiefelOdd(k)
            | SpaceId::StiefelEven(k) => k >= 2,
            SpaceId::S2xS2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(CatalogError::OutOfRange(self.to_string()))
        }
    }

    /// Real dimension.
    pub fn dimension(self) -> u32 {
        match self {
            SpaceId::CP(n) => 2 * n,
            SpaceId::GrassOdd(k) => 4 * k - 2,
            SpaceId::GrassEven(k) => 4 * k - 4,
            SpaceId::StiefelOdd(k) => 4 * k - 1,
            SpaceId::StiefelEven(k) => 4 * k - 3,
            SpaceId::Sphere(n) => n,
            SpaceId::S2xS2 => 4,
        }
    }

    /// Whether a circle bundle over this space has untwisted coefficients.
    pub fn is_simply_connected(self) -> bool {
        !matches!(self, SpaceId::Sphere(1))
    }

    /// Conventional name, e.g. `G2+R^7`.
    pub fn name(self) -> String {
        match self {
            SpaceId::CP(n) => format!("CP_{n}"),
            SpaceId::GrassOdd(k) => format!("G2+R^{}", 2 * k + 1),
            SpaceId::GrassEven(k) => format!("G2+R^{}", 2 * k),
            SpaceId::StiefelOdd(k) => format!("V2R^{}", 2 * k + 1),
            SpaceId::StiefelEven(k) => format!("V2R^{}", 2 * k),
            SpaceId::Sphere(n) => format!("S^{n}"),
            SpaceId::S2xS2 => "S2xS2".into(),
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SpaceId::CP(n) => write!(f, "cp:{n}"),
            SpaceId::GrassOdd(k) => write!(f, "g2+:{}", 2 * k + 1),
            SpaceId::GrassEven(k) => write!(f, "g2+:{}", 2 * k),
            SpaceId::StiefelOdd(k) => write!(f, "v2:{}", 2 * k + 1),
            SpaceId::StiefelEven(k) => write!(f, "v2:{}", 2 * k),
            SpaceId::Sphere(n) => write!(f, "s:{n}"),
            SpaceId::S2xS2 => f.write_str("s2xs2"),
        }
    }
}

impl FromStr for SpaceId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CatalogError::Parse(s.to_string());
        if s == "s2xs2" {
            return Ok(SpaceId::S2xS2);
        }
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let id = match kind {
            "cp" => SpaceId::CP(n),
            "s" => SpaceId::Sphere(n),
            "g2+" if n % 2 == 1 => SpaceId::GrassOdd(n / 2),
            "g2+" => SpaceId::GrassEven(n / 2),
            "v2" if n % 2 == 1 => SpaceId::StiefelOdd(n / 2),
            "v2" => SpaceId::StiefelEven(n / 2),
            _ => return Err(bad()),
        };
        id.validate()
    }
}

/// A space together with the presentation variant to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub space: SpaceId,
    pub variant: Variant,
}

impl SpaceSpec {
    pub fn new(space: SpaceId, variant: Variant) -> Self {
        SpaceSpec { space, variant }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.space)?;
        if matches!(self.space, SpaceId::GrassEven(_)) {
            write!(f, "@{}", self.variant)?;
        }
        Ok(())
    }
}

impl FromStr for SpaceSpec {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (id, variant) = match s.split_once('@') {
            None => (s, Variant::Corrected),
            Some((id, "verbatim")) => (id, Variant::Verbatim),
            Some((id, "corrected")) => (id, Variant::Corrected),
            Some(_) => return Err(CatalogError::Parse(s.to_string())),
        };
        Ok(SpaceSpec::new(id.parse()?, variant))
    }
}

/// Where a relation comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Verbatim,
    Corrected { justification: String },
}

#[derive(Clone, Debug)]
pub struct SpaceData {
    pub space: SpaceId,
    pub variant: Variant,
    pub presentation: RingPresentation,
    pub dimension: u32,
    pub provenance: Vec<Provenance>,
    /// Additive groups to use instead of the computed ring, when the
    /// stored product structure is not trusted.
    pub additive_groups: Option<Vec<FgAbelianGroup>>,
    pub notes: Vec<String>,
}

impl SpaceData {
    /// Groups in degrees `0..=top`, preferring the stored additive groups.
    pub fn groups(&self, top: u32) -> Result<Vec<FgAbelianGroup>, CatalogError> {
        if let Some(g) = &self.additive_groups {
            let mut g = g.clone();
            g.resize((top + 1) as usize, FgAbelianGroup::zero());
            return Ok(g);
        }
        let ring = GradedRing::compute(&self.presentation.with_top_degree(top))?;
        Ok(ring.groups())
    }
}

struct Builder {
    gens: Vec<GeneratorSpec>,
    rels: Vec<(String, Provenance)>,
}

impl Builder {
    fn new(gens: &[(String, u32)]) -> Self {
        Builder {
            gens: gens.iter().map(|(n, d)| GeneratorSpec::new(n.clone(), *d)).collect(),
            rels: Vec::new(),
        }
    }

    fn rel(&mut self, text: String) -> &mut Self {
        self.rels.push((text, Provenance::Verbatim));
        self
    }

    fn fixed(&mut self, text: String, why: &str) -> &mut Self {
        self.rels.push((
            text,
            Provenance::Corrected {
                justification: why.to_string(),
            },
        ));
        self
    }

    fn finish(self, top: u32) -> (RingPresentation, Vec<Provenance>) {
        let mut relations = Vec::new();
        let mut provenance = Vec::new();
        for (text, prov) in self.rels {
            let p = parse_polynomial(&text, &self.gens).expect("catalog relations parse");
            relations.push(p);
            provenance.push(prov);
        }
        let p = RingPresentation::new(self.gens, relations, top).expect("catalog generators are valid");
        (p, provenance)
    }
}

fn sign(k: u32) -> &'static str {
    if k.is_multiple_of(2) {
        "+"
    } else {
        "-"
    }
}

/// Name of the middle generator `x_{2k-2}`; at `k = 2` it would clash with
/// `x2`.
pub fn even_middle_names(k: u32) -> (String, String) {
    let m = 2 * k - 2;
    let x = if k == 2 { "u2".to_string() } else { format!("x{m}") };
    (x, format!("y{m}"))
}

pub fn space_data(s: SpaceId, variant: Variant) -> Result<SpaceData, CatalogError> {
    let s = s.validate()?;
    let dim = s.dimension();
    let top = dim + 2;
    let mut notes = Vec::new();
    let mut additive_groups = None;
    let (presentation, provenance) = match s {
        SpaceId::CP(n) => {
            let mut b = Builder::new(&[("x2".into(), 2)]);
            b.rel(format!("x2^{}", n + 1));
            b.finish(top)
        }
        SpaceId::GrassOdd(k) => {
            let x = format!("x{}", 2 * k);
            let mut b = Builder::new(&[("x2".into(), 2), (x.clone(), 2 * k)]);
            b.rel(format!("x2^{k} - 2*{x}")).rel(format!("{x}^2"));
            b.finish(top)
        }
        SpaceId::GrassEven(k) => {
            let m = 2 * k - 2;
            let (xm, ym) = even_middle_names(k);
            let xt = format!("x{}", 2 * k);
            let mut b = Builder::new(&[
                ("x2".into(), 2),
                (xm.clone(), m),
                (ym.clone(), m),
                (xt.clone(), 2 * k),
            ]);
            let s = sign(k);
            b.rel(format!("{xm} + {ym} {s} x2^{}", k - 1))
                .rel(format!("2*{xm}^2 - x2^{}", 2 * k - 2))
                .rel(format!("2*x2*{xm} {s} x2^{k}"));
            match variant {
                Variant::Verbatim => {
                    b.rel(format!("2*{ym}^2 - x2^{}", 2 * k - 1))
                        .rel(format!("{xm}*{ym}"))
                        .rel(format!("{xt}^2"))
                        .rel(format!("x2^{}", 2 * k - 1));
                    notes.push(
                        "verbatim relation list: contains an inhomogeneous relation and a relation above the dimension"
                            .into(),
                    );
                }
                Variant::Corrected => {
                    b.fixed(
                        format!("2*{ym}^2 - x2^{}", 2 * k - 2),
                        "printed exponent 2k-1 makes the relation inhomogeneous; expanding the square of the defining class of y gives x2^(2k-2)/2",
                    )
                    .rel(format!("{xm}*{ym}"))
                    .fixed(
                        format!("x2*{xm} {s} {xt}"),
                        "the Poincare polynomial has rank 1 in degree 2k, so x{2k} is tied to x2*x{2k-2}; with the x2*x{2k-2} relation this is 2*x{2k} = x2^k",
                    )
                    .fixed(format!("{xt}*{xm}"), "product above the dimension")
                    .fixed(format!("{xt}*{ym}"), "product above the dimension")
                    .fixed(format!("{xt}^2"), "product above the dimension");
                    notes.push("corrected presentation; see per-relation provenance".into());
                }
            }
            b.finish(top)
        }
        SpaceId::StiefelOdd(k) => {
            let (x, y) = (format!("x{}", 2 * k), format!("x{}", 4 * k - 1));
            let mut b = Builder::new(&[(x.clone(), 2 * k), (y.clone(), 4 * k - 1)]);
            b.rel(format!("{x}^2"))
                .rel(format!("{y}^2"))
                .rel(format!("2*{x}"))
                .rel(format!("{x}*{y}"));
            b.finish(top)
        }
        SpaceId::StiefelEven(k) => {
            let (x, y) = (format!("x{}", 2 * k - 2), format!("x{}", 2 * k - 1));
            let mut b = Builder::new(&[(x.clone(), 2 * k - 2), (y.clone(), 2 * k - 1)]);
            b.rel(format!("{x}^2"))
                .rel(format!("{y}^2"))
                .rel(format!("{x}*{y}"));
            let mut groups = vec![FgAbelianGroup::zero(); (dim + 1) as usize];
            for d in [0, 2 * k - 2, 2 * k - 1, 4 * k - 3] {
                groups[d as usize] = FgAbelianGroup::free(1);
            }
            additive_groups = Some(groups);
            notes.push(format!(
                "unverified: the stored relation {x}*{y} = 0 leaves nothing in degree {}, yet the additive groups have Z there; only the additive groups are used",
                4 * k - 3
            ));
            notes.push(format!(
                "degree label: the top group is consumed in degree {} although the source text names H^{}",
                4 * k - 3,
                4 * k - 4
            ));
            b.finish(top)
        }
        SpaceId::Sphere(n) => {
            let x = format!("x{n}");
            let mut b = Builder::new(&[(x.clone(), n)]);
            b.rel(format!("{x}^2"));
            b.finish(top)
        }
        SpaceId::S2xS2 => {
            let mut b = Builder::new(&[("x2".into(), 2), ("y2".into(), 2)]);
            b.rel("x2^2".into()).rel("y2^2".into());
            b.finish(top)
        }
    };
    Ok(SpaceData {
        space: s,
        variant,
        presentation,
        dimension: dim,
        provenance,
        additive_groups,
        notes,
    })
}

pub fn presentation_of(s: SpaceId, variant: Variant) -> Result<RingPresentation, CatalogError> {
    Ok(space_data(s, variant)?.presentation)
}

/// The presentation recomputed up to `top` instead of the default bound.
pub fn presentation_with_top(
    s: SpaceId,
    variant: Variant,
    top: u32,
) -> Result<RingPresentation, CatalogError> {
    Ok(presentation_of(s, variant)?.with_top_degree(top))
}

pub fn compute_space(s: SpaceId, variant: Variant) -> Result<GradedRing, CatalogError> {
    Ok(GradedRing::compute(&presentation_of(s, variant)?)?)
}

pub fn orientation_of(s: SpaceId) -> Result<RingElement, CatalogError> {
    Ok(compute_space(s, Variant::Corrected)?.orientation()?)
}

fn sphere_table(n: u32, max_level: usize) -> PiTable {
    let n = n as usize;
    PiTable::new(
        (0..=max_level)
            .map(|j| match j {
                j if j < n => PiEntry::zero(),
                j if j == n => PiEntry::Known(FgAbelianGroup::free(1)),
                _ if n == 1 => PiEntry::zero(),
                _ => PiEntry::Unknown,
            })
            .collect(),
    )
}

fn connected_then(first: usize, group: FgAbelianGroup, max_level: usize) -> PiTable {
    PiTable::new(
        (0..=max_level)
            .map(|j| match j {
                j if j < first => PiEntry::zero(),
                j if j == first => PiEntry::Known(group.clone()),
                _ => PiEntry::Unknown,
            })
            .collect(),
    )
}

/// Betti numbers in degrees `0..=dim` as known independently of any ring
/// presentation.
pub fn poincare_polynomial(s: SpaceId) -> Result<Vec<usize>, CatalogError> {
    let s = s.validate()?;
    let dim = s.dimension();
    let mut b = vec![0usize; dim as usize + 1];
    let mut set = |d: u32, v: usize| b[d as usize] = v;
    match s {
        SpaceId::CP(_) | SpaceId::GrassOdd(_) => (0..=dim).step_by(2).for_each(|d| set(d, 1)),
        SpaceId::GrassEven(k) => {
            (0..=dim).step_by(2).for_each(|d| set(d, 1));
            set(2 * k - 2, 2);
        }
        SpaceId::StiefelOdd(k) => {
            set(0, 1);
            set(4 * k - 1, 1);
        }
        SpaceId::StiefelEven(k) => [0, 2 * k - 2, 2 * k - 1, 4 * k - 3].into_iter().for_each(|d| set(d, 1)),
        SpaceId::Sphere(n) => {
            set(0, 1);
            set(n, 1);
        }
        SpaceId::S2xS2 => {
            set(0, 1);
            set(2, 2);
            set(4, 1);
        }
    }
    Ok(b)
}

/// Homotopy groups through `max_level`, known only where connectivity or
/// the circle bundle sequence forces them.
pub fn homotopy_table_of(s: SpaceId, max_level: usize) -> Result<PiTable, CatalogError> {
    let s = s.validate()?;
    let via_bundle = |total: SpaceId| -> Result<PiTable, CatalogError> {
        let fiber = sphere_table(1, max_level);
        let total = homotopy_table_of(total, max_level)?;
        Ok(les_base(&fiber, &total, max_level).expect("tables cover max_level"))
    };
    Ok(match s {
        SpaceId::Sphere(n) => sphere_table(n, max_level),
        SpaceId::StiefelOdd(k) => {
            connected_then((2 * k - 1) as usize, FgAbelianGroup::cyclic(2), max_level)
        }
        SpaceId::StiefelEven(k) => {
            connected_then((2 * k - 2) as usize, FgAbelianGroup::free(1), max_level)
        }
        SpaceId::CP(n) => via_bundle(SpaceId::Sphere(2 * n + 1))?.with_sphere_marker(2 * n + 1),
        SpaceId::GrassOdd(k) => via_bundle(SpaceId::StiefelOdd(k))?,
        SpaceId::GrassEven(k) => via_bundle(SpaceId::StiefelEven(k))?,
        SpaceId::S2xS2 => sphere_table(2, max_level).product(&sphere_table(2, max_level)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings_match_known_betti_numbers() {
        let mut spaces: Vec<SpaceId> = (1..=5).map(SpaceId::CP).collect();
        spaces.extend((2..=5).flat_map(|k| [SpaceId::GrassOdd(k), SpaceId::GrassEven(k), SpaceId::StiefelOdd(k)]));
        spaces.extend([SpaceId::Sphere(3), SpaceId::S2xS2]);
        for s in spaces {
            let r = compute_space(s, Variant::Corrected).unwrap();
            let mut betti = r.poincare_series();
            betti.truncate(s.dimension() as usize + 1);
            assert_eq!(betti, poincare_polynomial(s).unwrap(), "{s}");
        }
        let v = space_data(SpaceId::StiefelEven(4), Variant::Corrected).unwrap();
        let ranks: Vec<usize> = v.groups(13).unwrap().iter().map(|g| g.free_rank()).collect();
        assert_eq!(ranks, poincare_polynomial(SpaceId::StiefelEven(4)).unwrap());
    }

    #[test]
    fn parse_specs() {
        let s: SpaceSpec = "g2+:8@verbatim".parse().unwrap();
        assert_eq!(s, SpaceSpec::new(SpaceId::GrassEven(4), Variant::Verbatim));
        assert_eq!("g2+:7".parse::<SpaceId>().unwrap(), SpaceId::GrassOdd(3));
        assert_eq!("v2:8".parse::<SpaceId>().unwrap(), SpaceId::StiefelEven(4));
        assert_eq!("s2xs2".parse::<SpaceId>().unwrap(), SpaceId::S2xS2);
        assert!("g2+:3".parse::<SpaceId>().is_err());
        assert!("cp:0".parse::<SpaceId>().is_err());
        assert!("cp:x".parse::<SpaceId>().is_err());
        assert!("g2+:8@other".parse::<SpaceSpec>().is_err());
        for id in ["cp:5", "g2+:7", "g2+:8", "v2:7", "v2:8", "s:11", "s2xs2"] {
            assert_eq!(id.parse::<SpaceId>().unwrap().to_string(), id);
        }
    }

    #[test]
    fn cp5_presentation() {
        let p = presentation_of(SpaceId::CP(5), Variant::Corrected).unwrap();
        assert_eq!(crate::grading::format_presentation(&p), "gen x2 2\nrel x2^6\ntop 12\n");
    }

    #[test]
    fn stiefel_odd_presentation() {
        let p = presentation_of(SpaceId::StiefelOdd(3), Variant::Corrected).unwrap();
        let names: Vec<_> = p.generators().iter().map(|g| (g.name.as_str(), g.degree)).collect();
        assert_eq!(names, [("x6", 6), ("x11", 11)]);
        let rels: Vec<_> = p.relations().iter().map(|r| p.show(r)).collect();
        assert_eq!(rels, ["x6^2", "x11^2", "2*x6", "x6*x11"]);
    }

    #[test]
    fn even_k2_groups() {
        let r = compute_space(SpaceId::GrassEven(2), Variant::Corrected).unwrap();
        let g: Vec<_> = r.groups().iter().take(5).map(|g| g.to_string()).collect();
        assert_eq!(g, ["Z", "0", "Z^2", "0", "Z"]);
    }

    #[test]
    fn orientations() {
        let r = compute_space(SpaceId::GrassOdd(3), Variant::Corrected).unwrap();
        assert_eq!(r.show(&orientation_of(SpaceId::GrassOdd(3)).unwrap()), "x2^2*x6");
        let r = compute_space(SpaceId::CP(5), Variant::Corrected).unwrap();
        assert_eq!(r.show(&orientation_of(SpaceId::CP(5)).unwrap()), "x2^5");
        let r = compute_space(SpaceId::S2xS2, Variant::Corrected).unwrap();
        assert_eq!(r.show(&orientation_of(SpaceId::S2xS2).unwrap()), "x2*y2");
    }

    #[test]
    fn homotopy_tables() {
        let t = homotopy_table_of(SpaceId::StiefelOdd(3), 5).unwrap();
        assert_eq!(t.to_string(), "(0,0,0,0,0,Z_2)");
        let t = homotopy_table_of(SpaceId::Sphere(11), 11).unwrap();
        assert_eq!(t.to_string(), "(0,0,0,0,0,0,0,0,0,0,0,Z)");
        let t = homotopy_table_of(SpaceId::StiefelEven(4), 6).unwrap();
        assert_eq!(t.to_string(), "(0,0,0,0,0,0,Z)");
        let t = homotopy_table_of(SpaceId::GrassOdd(3), 5).unwrap();
        assert_eq!(t.to_string(), "(0,0,Z,0,0,Z_2)");
        let t = homotopy_table_of(SpaceId::Sphere(1), 3).unwrap();
        assert_eq!(t.to_string(), "(0,Z,0,0)");
        let t = homotopy_table_of(SpaceId::S2xS2, 3).unwrap();
        assert_eq!(t.to_string(), "(0,0,Z^2,?)");
    }

    #[test]
    fn stiefel_even_uses_additive_groups() {
        let d = space_data(SpaceId::StiefelEven(4), Variant::Corrected).unwrap();
        let g: Vec<_> = d.groups(13).unwrap().iter().map(|g| g.to_string()).collect();
        let expected: Vec<&str> = (0..=13)
            .map(|i| if [0, 6, 7, 13].contains(&i) { "Z" } else { "0" })
            .collect();
        assert_eq!(g, expected);
        assert_eq!(d.notes.len(), 2);
    }

    #[test]
    fn even_names_avoid_clash() {
        assert_eq!(even_middle_names(2), ("u2".to_string(), "y2".to_string()));
        assert_eq!(even_middle_names(4), ("x6".to_string(), "y6".to_string()));
    }
}
