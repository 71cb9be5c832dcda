use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{AbelianError, FgAbelianGroup, IntMatrix};

/// Every middle group `H` of a short exact sequence `0 -> sub -> H -> quotient -> 0`.
///
/// Extensions are classified by `Ext(quotient, sub) = ⊕_j sub / c_j sub`
/// over the torsion orders `c_j` of `quotient`; each class gives the
/// presentation "generators of `sub` plus lifts `ĉ_j`, with `c_j ĉ_j = ξ_j`".
/// The enumeration is exhaustive over class representatives, so it refuses
/// to run past `limit` classes.
pub fn extensions(
    sub: &FgAbelianGroup,
    quotient: &FgAbelianGroup,
    limit: usize,
) -> Result<Vec<FgAbelianGroup>, AbelianError> {
    let a_orders = sub.generator_orders();
    let c_torsion = quotient.torsion().to_vec();
    let na = a_orders.len();
    let nc = quotient.num_generators();

    // Per torsion generator of the quotient, the residue ranges for xi_j.
    let ranges: Vec<Vec<BigInt>> = c_torsion
        .iter()
        .map(|c| {
            a_orders
                .iter()
                .map(|a| if a.is_zero() { c.clone() } else { a.gcd(c) })
                .collect()
        })
        .collect();
    let count = ranges
        .iter()
        .flatten()
        .try_fold(1usize, |acc, r| acc.checked_mul(r.to_usize()?));
    match count {
        Some(n) if n <= limit => {}
        _ => return Err(AbelianError::TooLarge { limit }),
    }

    let torsion_a: Vec<(usize, BigInt)> = a_orders
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i, a.clone()))
        .collect();
    let n = na + nc;
    let ncols = torsion_a.len() + c_torsion.len();
    let free_c = quotient.free_rank();

    let flat: Vec<BigInt> = ranges.iter().flatten().cloned().collect();
    let mut digits = vec![BigInt::zero(); flat.len()];
    let mut found = BTreeSet::new();
    loop {
        let mut rel = IntMatrix::zeros(n, ncols);
        for (col, (i, a)) in torsion_a.iter().enumerate() {
            rel.set(*i, col, a.clone());
        }
        for (j, c) in c_torsion.iter().enumerate() {
            let col = torsion_a.len() + j;
            rel.set(na + free_c + j, col, c.clone());
            for i in 0..na {
                let xi = &digits[j * na + i];
                if !xi.is_zero() {
                    rel.set(i, col, -xi);
                }
            }
        }
        found.insert(FgAbelianGroup::cokernel_of(&rel));

        // Odometer over the residue digits.
        let mut k = 0;
        loop {
            if k == flat.len() {
                return Ok(found.into_iter().collect());
            }
            digits[k] += 1;
            if digits[k] < flat[k] {
                break;
            }
            digits[k] = BigInt::zero();
            k += 1;
        }
    }
}
