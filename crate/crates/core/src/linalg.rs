//! Exact integer and rational linear algebra over lattices.
//!
//! Everything here works with arbitrary-precision integers ([`BigInt`]) and
//! rationals ([`BigRational`]); there is no floating point anywhere.
//! Vectors of the character lattice `M` and of its dual `N` share the same
//! representation, coordinates being taken in mutually dual bases.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};

/// An integer coordinate vector in a fixed basis of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

/// Builds a [`LatticeVector`] from integer literals.
#[macro_export]
macro_rules! lv {
    ($($x:expr),* $(,)?) => {
        $crate::linalg::LatticeVector::from_i64s(&[$($x as i64),*])
    };
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Largest absolute value of a coordinate.
    pub fn sup_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Greatest common divisor of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &BigInt, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Exact pairing with a vector of the same rank.
    pub fn pair(&self, other: &Self) -> Result<BigInt> {
        check_dim(self.rank(), other.rank())?;
        Ok(self.dot(other))
    }

    /// Unchecked dot product; callers guarantee equal ranks.
    pub(crate) fn dot(&self, other: &Self) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Concatenates the coordinates of `self` and `tail`.
    pub fn extend(&self, tail: &[BigInt]) -> Self {
        let mut c = self.0.clone();
        c.extend_from_slice(tail);
        LatticeVector(c)
    }

    /// The primitive vector on the ray through `self`.
    pub fn primitive(&self) -> Result<Self> {
        primitive(self)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

/// A vector with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalVector(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn pair(&self, other: &Self) -> Result<BigRational> {
        check_dim(self.rank(), other.rank())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Pairing against an integer vector.
    pub fn pair_lattice(&self, other: &LatticeVector) -> Result<BigRational> {
        check_dim(self.rank(), other.rank())?;
        Ok(self.0.iter().zip(other.coords()).map(|(a, b)| a * BigRational::from_integer(b.clone())).sum())
    }

    /// Returns the vector itself if every coordinate is an integer.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.0.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>().map(LatticeVector)
    }

    /// The primitive integer vector on the ray through `self`, if nonzero.
    pub fn ray_representative(&self) -> Option<LatticeVector> {
        if self.0.iter().all(Zero::is_zero) {
            return None;
        }
        let den = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &den).to_integer()).collect();
        primitive(&LatticeVector(ints)).ok()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: Vec<LatticeVector>,
    cols: usize,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<LatticeVector>, cols: usize) -> Result<Self> {
        for r in &rows {
            check_dim(cols, r.rank())?;
        }
        Ok(IntegerMatrix { rows, cols })
    }

    pub fn from_i64_rows(rows: &[&[i64]], cols: usize) -> Result<Self> {
        Self::new(rows.iter().map(|r| LatticeVector::from_i64s(r)).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        IntegerMatrix { rows: (0..n).map(|i| LatticeVector::unit(n, i)).collect(), cols: n }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &LatticeVector {
        &self.rows[i]
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        check_dim(self.cols, rhs.row_count())?;
        let rows = self
            .rows
            .iter()
            .map(|r| (0..rhs.cols).map(|j| r.0.iter().zip(&rhs.rows).map(|(a, b)| a * &b.0[j]).sum()).collect())
            .map(LatticeVector)
            .collect();
        Ok(IntegerMatrix { rows, cols: rhs.cols })
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> Result<BigInt> {
        check_dim(self.rows.len(), self.cols)?;
        let n = self.cols;
        let mut a: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return Ok(BigInt::one());
        }
        Ok(sign * &a[n - 1][n - 1])
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// The natural pairing `<q, v>` in mutually dual bases.
pub fn pairing(q: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
    q.pair(v)
}

/// Divides `v` by the positive gcd of its coordinates.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::Domain("primitive vector of the zero vector".into()));
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U * m = H`. `H` is upper
/// triangular with positive pivots, entries above a pivot are reduced into
/// `[0, pivot)`, and zero rows come last.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let r = m.row_count();
    let n = m.col_count();
    let mut h: Vec<Vec<BigInt>> = m.rows.iter().map(|row| row.0.clone()).collect();
    let mut u: Vec<Vec<BigInt>> = IntegerMatrix::identity(r).rows.into_iter().map(|x| x.0).collect();

    fn sub_row(rows: &mut [Vec<BigInt>], target: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        let s = rows[src].clone();
        for (t, v) in rows[target].iter_mut().zip(&s) {
            *t -= q * v;
        }
    }

    let mut p = 0;
    for col in 0..n {
        if p == r {
            break;
        }
        loop {
            let best = (p..r).filter(|&i| !h[i][col].is_zero()).min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(best) = best else { break };
            h.swap(p, best);
            u.swap(p, best);
            let mut done = true;
            for i in p + 1..r {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[p][col]);
                sub_row(&mut h, i, &q, p);
                sub_row(&mut u, i, &q, p);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[p][col].is_zero() {
            continue;
        }
        if h[p][col].is_negative() {
            for x in h[p].iter_mut().chain(u[p].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..p {
            let q = h[i][col].div_floor(&h[p][col]);
            sub_row(&mut h, i, &q, p);
            sub_row(&mut u, i, &q, p);
        }
        p += 1;
    }
    let h = IntegerMatrix { rows: h.into_iter().map(LatticeVector).collect(), cols: n };
    let u = IntegerMatrix { rows: u.into_iter().map(LatticeVector).collect(), cols: r };
    (h, u)
}

/// Rank of a family of integer vectors.
pub fn rank(rows: &[LatticeVector]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let n = first.rank();
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut rk = 0;
    for col in 0..n {
        let Some(p) = (rk..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rk, p);
        for i in rk + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let (pv, iv) = (a[rk][col].clone(), a[i][col].clone());
            let mut g = BigInt::zero();
            let (top, bottom) = a.split_at_mut(i);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[rk][col..]) {
                let v = &*x * &pv - p * &iv;
                g = g.gcd(&v);
                *x = v;
            }
            if g > BigInt::one() {
                for x in a[i][col..].iter_mut() {
                    *x /= &g;
                }
            }
        }
        rk += 1;
        if rk == a.len() {
            break;
        }
    }
    rk
}

/// Reduced row echelon form over the rationals; returns the nonzero rows
/// and their pivot columns.
pub(crate) fn rref(mut a: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rk = 0;
    for col in 0..cols {
        let Some(p) = (rk..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rk, p);
        let inv = a[rk][col].recip();
        for x in a[rk].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[rk].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rk || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        rk += 1;
    }
    a.truncate(rk);
    (a, pivots)
}

/// Finds rational `c` with `sum c_i gens_i = v`, taking free variables zero.
pub fn solve_rational(gens: &[LatticeVector], v: &LatticeVector) -> Result<Option<Vec<BigRational>>> {
    let n = v.rank();
    for g in gens {
        check_dim(n, g.rank())?;
    }
    let k = gens.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let aug: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = gens.iter().map(|g| q(&g.0[row])).collect();
            r.push(q(&v.0[row]));
            r
        })
        .collect();
    let (red, pivots) = rref(aug, k + 1);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut sol = vec![BigRational::zero(); k];
    for (row, &pc) in red.iter().zip(&pivots) {
        sol[pc] = row[k].clone();
    }
    Ok(Some(sol))
}

/// True iff `v` lies in the rational span of `gens`.
pub fn in_rational_span(v: &LatticeVector, gens: &[LatticeVector]) -> bool {
    if v.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let mut all = gens.to_vec();
    let base = rank(&all);
    all.push(v.clone());
    rank(&all) == base
}

/// True iff `v` is an integer combination of the (independent) rows of `basis`.
pub fn in_sublattice(v: &LatticeVector, basis: &IntegerMatrix) -> Result<bool> {
    check_dim(basis.col_count(), v.rank())?;
    Ok(Sublattice::new(basis.clone())?.contains(v))
}

/// A sublattice of `Z^n` given by an explicit basis, with a cached exact
/// coordinate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    basis: IntegerMatrix,
    /// `n x r` integer matrix `P` and denominator `d` with
    /// `coords(v) = v * P / d` for every `v` in the rational span.
    coord_map: Vec<Vec<BigInt>>,
    denominator: BigInt,
}

impl Sublattice {
    /// Uses the rows of `basis` as lattice basis; they must be independent.
    pub fn new(basis: IntegerMatrix) -> Result<Self> {
        let r = basis.row_count();
        let n = basis.col_count();
        if rank(basis.rows()) != r {
            return Err(Error::Domain(format!("basis rows {basis} are linearly dependent")));
        }
        // P = B^T (B B^T)^{-1}
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut gram: Vec<Vec<BigRational>> =
            (0..r).map(|i| (0..r).map(|j| q(&basis.rows[i].dot(&basis.rows[j]))).collect()).collect();
        for (i, row) in gram.iter_mut().enumerate() {
            row.extend((0..r).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
        }
        let (inv, _) = rref(gram, 2 * r);
        let inv: Vec<Vec<BigRational>> = inv.into_iter().map(|row| row[r..].to_vec()).collect();
        let p: Vec<Vec<BigRational>> = (0..n)
            .map(|a| (0..r).map(|j| (0..r).map(|k| q(&basis.rows[k].0[a]) * &inv[k][j]).sum()).collect())
            .collect();
        let denominator = p.iter().flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let coord_map = p.iter().map(|row| row.iter().map(|c| (c * &denominator).to_integer()).collect()).collect();
        Ok(Sublattice { basis, coord_map, denominator })
    }

    /// The lattice spanned by `gens`, with its Hermite normal form basis.
    pub fn from_generators(gens: &[LatticeVector], ambient_rank: usize) -> Result<Self> {
        let m = IntegerMatrix::new(gens.to_vec(), ambient_rank)?;
        let (h, _) = hnf(&m);
        let rows: Vec<LatticeVector> = h.rows.into_iter().filter(|r| !r.is_zero()).collect();
        Self::new(IntegerMatrix { rows, cols: ambient_rank })
    }

    pub fn full(ambient_rank: usize) -> Self {
        Self::new(IntegerMatrix::identity(ambient_rank)).expect("identity basis is independent")
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.row_count()
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.col_count()
    }

    fn scaled_coords(&self, v: &LatticeVector) -> Vec<BigInt> {
        (0..self.rank()).map(|j| v.0.iter().zip(&self.coord_map).map(|(x, row)| x * &row[j]).sum()).collect()
    }

    /// Rational coordinates of `v`, if it lies in the rational span.
    pub fn rational_coords(&self, v: &LatticeVector) -> Option<RationalVector> {
        if v.rank() != self.ambient_rank() {
            return None;
        }
        let c: Vec<BigRational> =
            self.scaled_coords(v).into_iter().map(|x| BigRational::new(x, self.denominator.clone())).collect();
        let back: Vec<BigRational> = (0..self.ambient_rank())
            .map(|a| {
                c.iter().zip(self.basis.rows()).map(|(ci, b)| ci * BigRational::from_integer(b.0[a].clone())).sum()
            })
            .collect();
        let is_in_span = back.iter().zip(&v.0).all(|(x, y)| *x == BigRational::from_integer(y.clone()));
        is_in_span.then_some(RationalVector(c))
    }

    /// Integer coordinates of `v`, if it lies in the lattice.
    pub fn coords(&self, v: &LatticeVector) -> Option<LatticeVector> {
        if v.rank() != self.ambient_rank() {
            return None;
        }
        let scaled = self.scaled_coords(v);
        let mut c = Vec::with_capacity(scaled.len());
        for x in scaled {
            let (q, rem) = x.div_rem(&self.denominator);
            if !rem.is_zero() {
                return None;
            }
            c.push(q);
        }
        let c = LatticeVector(c);
        (self.embed(&c) == *v).then_some(c)
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.coords(v).is_some()
    }

    /// Ambient vector with the given lattice coordinates.
    pub fn embed(&self, coords: &LatticeVector) -> LatticeVector {
        assert_eq!(coords.rank(), self.rank(), "coordinate rank mismatch");
        let mut v = LatticeVector::zero(self.ambient_rank());
        for (c, b) in coords.0.iter().zip(self.basis.rows()) {
            v = v.add_scaled(c, b);
        }
        v
    }

    /// Restricts an ambient linear form (coordinates on the standard basis)
    /// to this lattice, giving its coordinates in the dual basis.
    pub fn restrict_form(&self, form: &LatticeVector) -> Result<LatticeVector> {
        check_dim(self.ambient_rank(), form.rank())?;
        Ok(LatticeVector(self.basis.rows().iter().map(|b| form.dot(b)).collect()))
    }

    /// Re-expresses a form given in the dual basis of `self` in the dual basis
    /// of `other`, which must span the same lattice.
    pub fn transfer_form(&self, form: &LatticeVector, other: &Sublattice) -> Result<LatticeVector> {
        check_dim(self.rank(), form.rank())?;
        other
            .basis
            .rows()
            .iter()
            .map(|b| {
                self.coords(b)
                    .map(|c| form.dot(&c))
                    .ok_or_else(|| Error::Domain(format!("{b} is not in the lattice spanned by {}", self.basis)))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }
}
