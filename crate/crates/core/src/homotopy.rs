//! Homotopy groups deduced from the long exact sequence of a fibration,
//! using only segments flanked by zeros.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbelianGroup;
use crate::catalog::{self, CatalogError, SpaceId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "group", rename_all = "snake_case")]
pub enum PiEntry {
    Known(FgAbelianGroup),
    Unknown,
}

impl PiEntry {
    pub fn zero() -> Self {
        PiEntry::Known(FgAbelianGroup::zero())
    }

    pub fn known(&self) -> Option<&FgAbelianGroup> {
        match self {
            PiEntry::Known(g) => Some(g),
            PiEntry::Unknown => None,
        }
    }

    pub fn is_known_zero(&self) -> bool {
        self.known().is_some_and(|g| g.is_trivial())
    }
}

impl fmt::Display for PiEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiEntry::Known(g) => f.write_str(&g.short_form()),
            PiEntry::Unknown => f.write_str("?"),
        }
    }
}

/// Homotopy groups from level 0 upward. `sphere_marker = Some(m)` records
/// that the unknown levels above `m` agree with those of `S^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiTable {
    entries: Vec<PiEntry>,
    sphere_marker: Option<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("tables cover {fiber} and {total} levels, {needed} needed")]
    TooShort {
        needed: usize,
        fiber: usize,
        total: usize,
    },
    #[error("fundamental group declared nonabelian")]
    Nonabelian,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl PiTable {
    pub fn new(entries: Vec<PiEntry>) -> Self {
        PiTable {
            entries,
            sphere_marker: None,
        }
    }

    /// Like [`PiTable::new`], refusing spaces whose fundamental group is
    /// not abelian.
    pub fn checked(entries: Vec<PiEntry>, pi1_abelian: bool) -> Result<Self, HomotopyError> {
        if !pi1_abelian {
            return Err(HomotopyError::Nonabelian);
        }
        Ok(Self::new(entries))
    }

    pub fn with_sphere_marker(mut self, m: u32) -> Self {
        self.sphere_marker = Some(m);
        self
    }

    pub fn sphere_marker(&self) -> Option<u32> {
        self.sphere_marker
    }

    pub fn entries(&self) -> &[PiEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, level: usize) -> &PiEntry {
        self.entries.get(level).unwrap_or(&PiEntry::Unknown)
    }

    pub fn truncated(&self, max_level: usize) -> Self {
        let mut t = self.clone();
        t.entries.truncate(max_level + 1);
        t
    }

    /// Levelwise direct sum, for product spaces.
    pub fn product(&self, other: &PiTable) -> PiTable {
        let n = self.len().min(other.len());
        PiTable::new(
            (0..n)
                .map(|k| match (self.get(k), other.get(k)) {
                    (PiEntry::Known(a), PiEntry::Known(b)) => PiEntry::Known(a.direct_sum(b)),
                    _ => PiEntry::Unknown,
                })
                .collect(),
        )
    }
}

impl fmt::Display for PiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Base homotopy groups of a fibration `F -> E -> B`, known only where
/// the exact segment `π_k F -> π_k E -> π_k B -> π_{k-1} F -> π_{k-1} E`
/// pins them down.
pub fn les_base(fiber: &PiTable, total: &PiTable, max_level: usize) -> Result<PiTable, HomotopyError> {
    if fiber.len() <= max_level || total.len() <= max_level {
        return Err(HomotopyError::TooShort {
            needed: max_level + 1,
            fiber: fiber.len(),
            total: total.len(),
        });
    }
    let mut out = Vec::with_capacity(max_level + 1);
    out.push(if total.get(0).is_known_zero() {
        PiEntry::zero()
    } else {
        PiEntry::Unknown
    });
    for k in 1..=max_level {
        let (fk, fk1) = (fiber.get(k), fiber.get(k - 1));
        let (ek, ek1) = (total.get(k), total.get(k - 1));
        let entry = if fk.is_known_zero() && fk1.is_known_zero() && ek.known().is_some() {
            ek.clone()
        } else if ek.is_known_zero() && ek1.is_known_zero() && fk1.known().is_some() {
            fk1.clone()
        } else {
            PiEntry::Unknown
        };
        out.push(entry);
    }
    Ok(PiTable::new(out))
}

/// `π_j CP_n`: `Z` at 2, otherwise `π_j S^{2n+1}` for `j >= 3`, which is
/// known only up to `2n+1`.
pub fn cp_from_sphere(n: u32, max_level: usize) -> PiTable {
    let top = (2 * n + 1) as usize;
    let entries = (0..=max_level)
        .map(|j| match j {
            2 => PiEntry::Known(FgAbelianGroup::free(1)),
            j if j == top => PiEntry::Known(FgAbelianGroup::free(1)),
            j if j < top => PiEntry::zero(),
            _ => PiEntry::Unknown,
        })
        .collect();
    PiTable::new(entries).with_sphere_marker(2 * n + 1)
}

/// Smallest level where both tables are known and differ.
pub fn first_difference(a: &PiTable, b: &PiTable) -> Option<usize> {
    (0..a.len().min(b.len())).find(|&k| match (a.get(k), b.get(k)) {
        (PiEntry::Known(x), PiEntry::Known(y)) => x != y,
        _ => false,
    })
}

/// A circle bundle from the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationSpec {
    pub name: String,
    pub fiber: SpaceId,
    pub total: SpaceId,
    pub base: SpaceId,
}

impl FibrationSpec {
    /// `S^1 -> S^{2n+1} -> CP_n`.
    pub fn hopf(n: u32) -> Self {
        FibrationSpec {
            name: format!("hopf:{n}"),
            fiber: SpaceId::Sphere(1),
            total: SpaceId::Sphere(2 * n + 1),
            base: SpaceId::CP(n),
        }
    }

    /// `S^1 -> V_2 R^n -> G_2^+ R^n` for `n >= 4`.
    pub fn grass(n: u32) -> Result<Self, CatalogError> {
        let (total, base) = match n {
            n if n < 4 => return Err(CatalogError::OutOfRange(format!("grass:{n} needs n >= 4"))),
            n if n % 2 == 1 => (SpaceId::StiefelOdd((n - 1) / 2), SpaceId::GrassOdd((n - 1) / 2)),
            n => (SpaceId::StiefelEven(n / 2), SpaceId::GrassEven(n / 2)),
        };
        Ok(FibrationSpec {
            name: format!("grass:{n}"),
            fiber: SpaceId::Sphere(1),
            total,
            base,
        })
    }

    /// `hopf:<n>` or `grass:<n>`.
    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        let bad = || CatalogError::Parse(s.to_string());
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        match kind {
            "hopf" if n >= 1 => Ok(Self::hopf(n)),
            "grass" => Self::grass(n),
            _ => Err(bad()),
        }
    }

    /// Base homotopy through `max_level` from the catalog fiber and total.
    pub fn base_table(&self, max_level: usize) -> Result<PiTable, HomotopyError> {
        let fiber = catalog::homotopy_table_of(self.fiber, max_level)?;
        let total = catalog::homotopy_table_of(self.total, max_level)?;
        les_base(&fiber, &total, max_level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize, max: usize) -> PiTable {
        PiTable::new(
            (0..=max)
                .map(|k| match k {
                    k if k < n => PiEntry::zero(),
                    k if k == n => PiEntry::Known(FgAbelianGroup::free(1)),
                    _ if n == 1 => PiEntry::zero(),
                    _ => PiEntry::Unknown,
                })
                .collect(),
        )
    }

    #[test]
    fn hopf_five() {
        let b = les_base(&sphere(1, 11), &sphere(11, 11), 11).unwrap();
        assert_eq!(b.to_string(), "(0,0,Z,0,0,0,0,0,0,0,0,Z)");
        assert_eq!(b, cp_from_sphere(5, 11).truncated(11).with_marker_cleared());
    }

    #[test]
    fn cp_small_cases() {
        assert_eq!(cp_from_sphere(1, 3).to_string(), "(0,0,Z,Z)");
        assert_eq!(cp_from_sphere(7, 10).to_string(), "(0,0,Z,0,0,0,0,0,0,0,0)");
        assert_eq!(cp_from_sphere(1, 5).to_string(), "(0,0,Z,Z,?,?)");
    }

    #[test]
    fn uninformative_tables_stay_unknown() {
        let mut blank = vec![PiEntry::zero()];
        blank.extend(std::iter::repeat_n(PiEntry::Unknown, 4));
        let blank = PiTable::new(blank);
        let b = les_base(&blank, &blank, 4).unwrap();
        assert_eq!(b.to_string(), "(0,?,?,?,?)");
        // Genuinely contractible spaces give a contractible base.
        let point = PiTable::new(vec![PiEntry::zero(); 5]);
        assert_eq!(les_base(&point, &point, 4).unwrap().to_string(), "(0,0,0,0,0)");
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            les_base(&sphere(1, 3), &sphere(5, 5), 5),
            Err(HomotopyError::TooShort { needed: 6, .. })
        ));
    }

    #[test]
    fn differences() {
        let a = PiTable::new(vec![PiEntry::zero(), PiEntry::Unknown, PiEntry::zero()]);
        let b = PiTable::new(vec![
            PiEntry::zero(),
            PiEntry::Known(FgAbelianGroup::cyclic(2)),
            PiEntry::Known(FgAbelianGroup::free(1)),
        ]);
        assert_eq!(first_difference(&a, &b), Some(2));
        assert_eq!(first_difference(&a, &a), None);
    }

    #[test]
    fn nonabelian_rejected() {
        assert!(matches!(PiTable::checked(vec![], false), Err(HomotopyError::Nonabelian)));
        assert!(PiTable::checked(vec![PiEntry::zero()], true).is_ok());
    }

    #[test]
    fn fibration_names() {
        assert_eq!(FibrationSpec::parse("hopf:5").unwrap(), FibrationSpec::hopf(5));
        let g = FibrationSpec::parse("grass:8").unwrap();
        assert_eq!(g.base, SpaceId::GrassEven(4));
        assert!(FibrationSpec::parse("grass:3").is_err());
        assert!(FibrationSpec::parse("hopf").is_err());
    }

    impl PiTable {
        fn with_marker_cleared(mut self) -> Self {
            self.sphere_marker = None;
            self
        }
    }
}
