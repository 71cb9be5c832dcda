//! Independent oracles for the integration and acceptance tests. Nothing
//! here calls the engine's multiplication, reduction or Smith form.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cohom_core::catalog::SpaceId;
use cohom_core::RingPresentation;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Every corrected catalog space small enough for exhaustive checks.
pub fn catalog_spaces() -> Vec<SpaceId> {
    let mut v = Vec::new();
    v.extend((1..=7).map(SpaceId::CP));
    v.extend((2..=8).map(SpaceId::GrassOdd));
    v.extend((2..=6).map(SpaceId::GrassEven));
    v.extend((2..=6).map(SpaceId::StiefelOdd));
    v.extend((2..=6).map(SpaceId::StiefelEven));
    v.extend((1..=7).map(SpaceId::Sphere));
    v.push(SpaceId::S2xS2);
    v
}

/// Exponent vectors of total degree `d`; odd generators appear at most once.
pub fn monomials(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(degrees: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if degrees[i] % 2 == 1 { 1 } else { left / degrees[i] };
        for e in 0..=max.min(left / degrees[i]) {
            cur.push(e);
            go(degrees, i + 1, left - e * degrees[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Product of two monomials by writing out the word of generators and
/// bubble-sorting it; each swap of two odd letters flips the sign.
pub fn koszul_product(degrees: &[u32], a: &[u32], b: &[u32]) -> Option<(i32, Vec<u32>)> {
    let mut word: Vec<usize> = Vec::new();
    for m in [a, b] {
        for (i, &e) in m.iter().enumerate() {
            word.extend(std::iter::repeat_n(i, e as usize));
        }
    }
    let mut sign = 1;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                if degrees[word[j]] % 2 == 1 && degrees[word[j + 1]] % 2 == 1 {
                    sign = -sign;
                }
                word.swap(j, j + 1);
            }
        }
    }
    let mut exps = vec![0u32; degrees.len()];
    for g in word {
        exps[g] += 1;
    }
    if exps.iter().zip(degrees).any(|(&e, &d)| d % 2 == 1 && e > 1) {
        return None;
    }
    Some((sign, exps))
}

fn degree_of(degrees: &[u32], m: &[u32]) -> u32 {
    m.iter().zip(degrees).map(|(e, d)| e * d).sum()
}

/// Rows spanning the relation ideal in degree `d`, over the monomials of
/// that degree.
pub fn relation_rows(p: &RingPresentation, d: u32) -> (Vec<Vec<u32>>, Vec<Vec<BigInt>>) {
    let degrees: Vec<u32> = p.generators().iter().map(|g| g.degree).collect();
    let cols = monomials(&degrees, d);
    let index: BTreeMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for rel in p.relations() {
        let terms: Vec<(Vec<u32>, BigInt)> = rel
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
            .collect();
        let Some(e) = terms.first().map(|(m, _)| degree_of(&degrees, m)) else { continue };
        if e > d {
            continue;
        }
        for m in monomials(&degrees, d - e) {
            let mut row = vec![BigInt::zero(); cols.len()];
            for (t, c) in &terms {
                // A raw odd square in a relation is already zero.
                if t.iter().zip(&degrees).any(|(&x, &g)| g % 2 == 1 && x > 1) {
                    continue;
                }
                if let Some((s, prod)) = koszul_product(&degrees, &m, t) {
                    row[index[&prod]] += c * s;
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    (cols, rows)
}

pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        let p = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &p;
                for j in c..ncols {
                    let v = &m[rank][j] * &f;
                    m[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod_p(rows: &[Vec<BigInt>], p: i64) -> usize {
    let bp = BigInt::from(p);
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&bp).to_i64().unwrap()).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let ip = inv(m[rank][c]);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * ip % p;
                for j in c..ncols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti number of degree `d` from the rational rank of the relations.
pub fn betti(p: &RingPresentation, d: u32) -> usize {
    let (cols, rows) = relation_rows(p, d);
    cols.len() - rational_rank(&rows)
}

/// `dim H^d ⊗ F_p`.
pub fn dim_mod_p(p: &RingPresentation, d: u32, prime: i64) -> usize {
    let (cols, rows) = relation_rows(p, d);
    cols.len() - rank_mod_p(&rows, prime)
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn to_i128(m: &cohom_core::IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i128().unwrap()).collect())
        .collect()
}

/// Exact determinant by fraction-free expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_1 ... d_i` is the gcd
/// of all `i x i` minors.
pub fn invariant_factors(m: &[Vec<i128>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut divisors = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&BigInt::from(det(&sub)));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| (&w[1] / &w[0]).abs()).collect()
}
