//! Brute-force oracles that avoid the library's own cone machinery.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rootsub_core::LatticeVector;

pub fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(v)
}

pub fn to_i64(v: &LatticeVector) -> Vec<i64> {
    v.coords().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |acc, x| gcd(acc, *x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Generalised cross product of `n - 1` vectors in dimension `n`.
pub fn normal(rows: &[Vec<i64>], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| *x).collect()).collect();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect()
}

pub fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Dual rays of a full-dimensional cone from hyperplanes through `n - 1`
/// generators that leave every generator on one side.
pub fn facet_normals(gens: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for s in subsets(gens.len(), n - 1) {
        let rows: Vec<Vec<i64>> = s.iter().map(|&i| gens[i].clone()).collect();
        let nv = normal(&rows, n);
        if nv.iter().all(|x| *x == 0) {
            continue;
        }
        let nv = primitive(&nv);
        let pairs: Vec<i64> = gens.iter().map(|g| dot(&nv, g)).collect();
        let cand = if pairs.iter().all(|p| *p >= 0) {
            nv
        } else if pairs.iter().all(|p| *p <= 0) {
            nv.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out.sort();
    out
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Unique solution of `Σ λ_j cols[j] = v` if the columns are independent and
/// the system is consistent.
pub fn solve_independent(cols: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let n = v.len();
    let k = cols.len();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..k).map(|j| q(cols[j][i])).chain([q(v[i])]).collect()).collect();
    let mut row = 0;
    for col in 0..k {
        let p = (row..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, p);
        let inv = BigRational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x *= inv.clone();
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[row].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        row += 1;
    }
    if a[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|j| a[j][k].clone()).collect())
}

/// Carathéodory: `v` is in the cone iff it is a nonnegative combination of
/// some linearly independent subset of the generators. Each subset is solved
/// by Cramer's rule on a nonzero maximal minor, then checked on every row.
pub fn cone_contains(gens: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|x| *x == 0) {
        return true;
    }
    let n = v.len();
    for k in 1..=n.min(gens.len()) {
        for s in subsets(gens.len(), k) {
            let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &gens[i]).collect();
            let Some((rows, d)) = subsets(n, k).into_iter().find_map(|rows| {
                let m: Vec<Vec<i64>> = cols.iter().map(|c| rows.iter().map(|&r| c[r]).collect()).collect();
                let d = det(&m);
                (d != 0).then_some((rows, d))
            }) else {
                continue;
            };
            let num: Vec<i64> = (0..k)
                .map(|j| {
                    let m: Vec<Vec<i64>> = (0..k)
                        .map(|c| rows.iter().map(|&r| if c == j { v[r] } else { cols[c][r] }).collect())
                        .collect();
                    det(&m)
                })
                .collect();
            let consistent = (0..n).all(|r| (0..k).map(|j| num[j] * cols[j][r]).sum::<i64>() == d * v[r]);
            if consistent && num.iter().all(|x| x * d >= 0) {
                return true;
            }
        }
    }
    false
}

pub fn rank_of(rows: &[Vec<i64>], n: usize) -> usize {
    (0..=rows.len().min(n))
        .rev()
        .find(|&k| {
            subsets(rows.len(), k).iter().any(|s| {
                let cols: Vec<Vec<i64>> = s.iter().map(|&i| rows[i].clone()).collect();
                independent(&cols)
            })
        })
        .unwrap_or(0)
}

pub fn independent(cols: &[Vec<i64>]) -> bool {
    if cols.is_empty() {
        return true;
    }
    let n = cols[0].len();
    // independent iff some k x k minor is nonzero
    subsets(n, cols.len())
        .iter()
        .any(|rows| det(&cols.iter().map(|c| rows.iter().map(|&r| c[r]).collect()).collect::<Vec<_>>()) != 0)
}

/// Demazure root test against explicit dual rays: the unique ray with pairing -1.
pub fn root_ray(rays: &[Vec<i64>], e: &[i64]) -> Option<Vec<i64>> {
    let p: Vec<i64> = rays.iter().map(|r| dot(r, e)).collect();
    let minus: Vec<usize> = (0..rays.len()).filter(|&i| p[i] == -1).collect();
    if minus.len() == 1 && p.iter().enumerate().all(|(i, x)| i == minus[0] || *x >= 0) {
        Some(rays[minus[0]].clone())
    } else {
        None
    }
}

pub fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn vec_strategy(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, n)
}

/// `(rank, generators)` with `rank` in `ranks` and 1..=max generators.
pub fn gens_strategy(
    ranks: std::ops::RangeInclusive<usize>,
    max: usize,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    ranks.prop_flat_map(move |n| (Just(n), proptest::collection::vec(vec_strategy(n, lo, hi), 1..=max)))
}
