use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AbelianError, IntMatrix};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dt` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Canonical form makes equality structural. Generators are ordered with the
/// free ones first, then the torsion ones in chain order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/order`, with `order == 0` meaning `Z` and `order == 1` the zero group.
    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders([order.into()])
    }

    /// Validates an already-canonical description.
    pub fn try_new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        let two = BigInt::from(2);
        if torsion.iter().any(|d| *d < two) {
            return Err(AbelianError::NotCanonical(
                "torsion factors must be at least 2".into(),
            ));
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(AbelianError::NotCanonical(
                "torsion factors must form a divisibility chain".into(),
            ));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    /// Direct sum of cyclic groups of the given orders (0 = infinite cyclic),
    /// brought to invariant-factor form.
    pub fn from_cyclic_orders<I>(orders: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let orders: Vec<BigInt> = orders.into_iter().map(|d| d.abs()).collect();
        let n = orders.len();
        Self::cokernel_of(&IntMatrix::diagonal_matrix(n, n, &orders))
    }

    /// The group `Z^rows / column-span(relations)`.
    pub fn cokernel_of(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let diag = snf.d.diagonal();
        let rank = snf.rank();
        let free_rank = relations.rows() - rank;
        let torsion = diag[..rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_part(&self) -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of each canonical generator, 0 for the free ones.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.free_rank)
            .chain(self.torsion.iter().cloned())
            .collect()
    }

    /// Diagonal relation matrix of the canonical presentation, one column per
    /// torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (k, d) in self.torsion.iter().enumerate() {
            m.set(self.free_rank + k, k, d.clone());
        }
        m
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders = self
            .generator_orders()
            .into_iter()
            .chain(other.generator_orders());
        Self::from_cyclic_orders(orders)
    }

    /// Reduces a coordinate vector on the canonical generators: torsion
    /// coordinates land in `[0, d)`.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        debug_assert_eq!(coords.len(), self.num_generators());
        for (c, d) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            *c = ((&*c % d) + d) % d;
        }
    }

    /// Tuple-style label: `0`, `Z`, `Z^2`, `Z_2`, `Z+Z_2`.
    pub fn short_form(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        parts.join("+")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FgAbelianGroup {
    type Err = AbelianError;

    /// Accepts the `Display` form and tuple-style labels, in any order; the
    /// result is normalized.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || AbelianError::Parse(s.to_string());
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part == "Z" {
                orders.push(BigInt::zero());
            } else if let Some(r) = part.strip_prefix("Z^") {
                let r: usize = r.trim().parse().map_err(|_| bad())?;
                orders.extend(std::iter::repeat_n(BigInt::zero(), r));
            } else if let Some(d) = part.strip_prefix("Z/").or_else(|| part.strip_prefix("Z_")) {
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d < BigInt::one() {
                    return Err(bad());
                }
                orders.push(d);
            } else if part == "0" {
                continue;
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_cyclic_orders(orders))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    torsion: Vec<crate::serde_int::Int>,
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupRepr {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().cloned().map(Into::into).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(deserializer)?;
        let torsion = repr.torsion.into_iter().map(Into::into).collect();
        FgAbelianGroup::try_new(repr.free_rank, torsion).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> FgAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        let a = FgAbelianGroup::from_cyclic_orders([2, 3].map(BigInt::from));
        assert_eq!(a.to_string(), "Z/6");
        let b = FgAbelianGroup::from_cyclic_orders([4, 6, 0, 1].map(BigInt::from));
        assert_eq!(b.to_string(), "Z + Z/2 + Z/12");
        assert!(FgAbelianGroup::cyclic(1).is_trivial());
        assert_eq!(FgAbelianGroup::cyclic(0), FgAbelianGroup::free(1));
    }

    #[test]
    fn canonical_validation() {
        assert!(FgAbelianGroup::try_new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FgAbelianGroup::try_new(0, vec![BigInt::from(1)]).is_err());
        assert!(FgAbelianGroup::try_new(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
    }

    #[test]
    fn string_forms() {
        assert_eq!(g("Z^2 + Z/2").short_form(), "Z^2+Z_2");
        assert_eq!(g("Z_2"), FgAbelianGroup::cyclic(2));
        assert_eq!(g("0").short_form(), "0");
        assert!("Q".parse::<FgAbelianGroup>().is_err());
        let json = serde_json::to_string(&g("Z + Z/2 + Z/4")).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"torsion":[2,4]}"#);
        let back: FgAbelianGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g("Z + Z/2 + Z/4"));
        assert!(serde_json::from_str::<FgAbelianGroup>(r#"{"free_rank":0,"torsion":[3,2]}"#).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(g("Z/2 + Z/4").order(), Some(BigInt::from(8)));
        assert_eq!(g("Z").order(), None);
        assert_eq!(g("0").order(), Some(BigInt::one()));
    }

    proptest! {
        #[test]
        fn normalizing_twice_is_identity(orders in proptest::collection::vec(0i64..30, 0..6)) {
            let once = FgAbelianGroup::from_cyclic_orders(orders.iter().map(|&d| BigInt::from(d)));
            let twice = FgAbelianGroup::from_cyclic_orders(once.generator_orders());
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(once.to_string().parse::<FgAbelianGroup>().unwrap(), once);
        }
    }
}
