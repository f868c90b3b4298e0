//! Exact integers, rationals, lattice vectors and integer matrices.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Rational `n/d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_rational(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An element of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector(Vec<BigInt>);

#[macro_export]
macro_rules! lv {
    ($($x:expr),* $(,)?) => {
        $crate::exactnum::LatticeVector::from_i64s(&[$($x as i64),*])
    };
}

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        LatticeVector(entries)
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        LatticeVector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Self) -> Result<BigInt> {
        self.check(other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn content(&self) -> BigInt {
        gcd_all(&self.0)
    }

    /// Divides by the gcd of the entries.
    pub fn primitive(&self) -> Result<Self> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector(self.0.iter().map(|a| a / &g).collect()))
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(to_rational).collect())
    }

    /// Appends coordinates.
    pub fn extend(&self, tail: &[BigInt]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        LatticeVector(v)
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        LatticeVector(v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.checked_add(rhs).expect("dimension mismatch in lattice vector addition")
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.checked_sub(rhs).expect("dimension mismatch in lattice vector subtraction")
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64s() {
            Some(v) => v.serialize(s),
            None => self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| serde::de::Error::custom(format!("non-integer coordinate {n}"))),
                serde_json::Value::String(s) => {
                    s.parse().map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}")))
                }
                other => Err(serde::de::Error::custom(format!("bad coordinate {other}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LatticeVector)
    }
}

/// An element of `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> Result<Rational> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn dot_lattice(&self, other: &LatticeVector) -> Result<Rational> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.dot_lattice_unchecked(other))
    }

    pub(crate) fn dot_lattice_unchecked(&self, other: &LatticeVector) -> Rational {
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(other.entries()) {
            if !b.is_zero() {
                acc += a * to_rational(b);
            }
        }
        acc
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.is_integral().then(|| LatticeVector(self.0.iter().map(|x| x.to_integer()).collect()))
    }

    pub fn denominator_lcm(&self) -> BigInt {
        lcm_all(self.0.iter().map(|x| x.denom()))
    }

    /// Scales by the lcm of the denominators.
    pub fn clear_denominators(&self) -> (LatticeVector, BigInt) {
        let l = self.denominator_lcm();
        let v = self.0.iter().map(|x| (x * to_rational(&l)).to_integer()).collect();
        (LatticeVector(v), l)
    }

    /// The primitive lattice vector on the ray through `self`.
    pub fn primitive_direction(&self) -> Result<LatticeVector> {
        self.clear_denominators().0.primitive()
    }
}

impl From<&LatticeVector> for RationalVector {
    fn from(v: &LatticeVector) -> Self {
        v.to_rational()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_rational(x))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_lattice() {
            Some(v) => v.serialize(s),
            None => self.0.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(qi)
                    .ok_or_else(|| serde::de::Error::custom(format!("non-integer coordinate {n}"))),
                serde_json::Value::String(s) => parse_rational(s).map_err(serde::de::Error::custom),
                other => Err(serde::de::Error::custom(format!("bad coordinate {other}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RationalVector)
    }
}

/// An integer matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl LatticeMatrix {
    pub fn from_rows(rows: &[LatticeVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, LatticeVector::dim);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like `from_rows`, but well defined for zero rows.
    pub fn from_rows_with_cols(rows: &[LatticeVector], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
            }
            data.extend(r.entries().iter().cloned());
        }
        Ok(LatticeMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<_> = rows.iter().map(|r| LatticeVector::from_i64s(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn from_columns(cols: &[LatticeVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn identity(n: usize) -> Self {
        let rows: Vec<_> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        Self::from_rows_with_cols(&rows, n).expect("square")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn rows(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        LatticeMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        Ok(LatticeVector((0..self.rows).map(|i| self.row(i).dot_unchecked(v)).collect()))
    }

    pub fn apply_rational(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.dim() });
        }
        Ok(RationalVector(
            (0..self.rows).map(|i| v.dot_lattice_unchecked(&self.row(i))).collect(),
        ))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &LatticeMatrix) -> Result<LatticeMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                data.push((0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum());
            }
        }
        Ok(LatticeMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(&self.rows())
    }

    /// A basis of the lattice `{x in Z^cols : self x = 0}` in Hermite normal form.
    pub fn kernel_basis(&self) -> Vec<LatticeVector> {
        integer_kernel(&self.rows(), self.cols)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows().iter().map(LatticeVector::to_i64s).collect()
    }
}

impl fmt::Debug for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Rank by fraction-free elimination.
pub fn bareiss_rank(rows: &[LatticeVector]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in col + 1..ncols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Row echelon form over `Q`: returns the reduced nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn lattice_rows_to_rational(rows: &[LatticeVector]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.entries().iter().map(to_rational).collect()).collect()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_subset(rows: &[LatticeVector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, LatticeVector::dim);
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, r) in rows.iter().enumerate() {
        let mut v: Vec<Rational> = r.entries().iter().map(to_rational).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..ncols {
                    v[j] -= &f * &b[j];
                }
            }
        }
        if let Some(p) = (0..ncols).find(|&j| !v[j].is_zero()) {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (b, _) in basis.iter_mut().zip(&pivots) {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for j in 0..ncols {
                        b[j] -= &f * &v[j];
                    }
                }
            }
            basis.push(v);
            pivots.push(p);
            chosen.push(idx);
            if chosen.len() == ncols {
                break;
            }
        }
    }
    chosen
}

/// A `Z`-basis of `{x in Z^ncols : r . x = 0 for all rows r}`, in Hermite normal form.
pub fn integer_kernel(rows: &[LatticeVector], ncols: usize) -> Vec<LatticeVector> {
    // Column reduction by a unimodular transform; the trailing columns of the transform span the kernel.
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..ncols).map(|i| LatticeVector::unit(ncols, i).0).collect();
    // u[j] is column j of the transform.
    let mut k = 0;
    for row in 0..a.len() {
        if k == ncols {
            break;
        }
        loop {
            let nz: Vec<usize> = (k..ncols).filter(|&j| !a[row][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[row][j].abs()).expect("nonempty");
            swap_cols(&mut a, &mut u, k, p);
            let mut done = true;
            for j in k + 1..ncols {
                if a[row][j].is_zero() {
                    continue;
                }
                let f = a[row][j].div_floor(&a[row][k]);
                col_axpy(&mut a, &mut u, j, k, &f);
                if !a[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                k += 1;
                break;
            }
        }
    }
    let basis: Vec<LatticeVector> = u[k..].iter().map(|c| LatticeVector(c.clone())).collect();
    hermite_normal_form(&basis)
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    u.swap(i, j);
}

/// Column `j` -= f * column `k`.
fn col_axpy(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, f: &BigInt) {
    for r in a.iter_mut() {
        let d = f * &r[k];
        r[j] -= d;
    }
    let ck = u[k].clone();
    for (x, y) in u[j].iter_mut().zip(&ck) {
        *x -= f * y;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`, zero rows dropped.
pub fn hermite_normal_form(vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    let ncols = vectors.first().map_or(0, LatticeVector::dim);
    let mut m: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][col].abs()).expect("nonempty");
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = m[i][col].div_floor(&m[r][col]);
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if m[r][col].is_negative() {
                    for x in m[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                pivots.push((r, col));
                r += 1;
                break;
            }
        }
    }
    m.truncate(r);
    for &(pr, col) in &pivots {
        let piv = m[pr][col].clone();
        for i in 0..pr {
            let f = m[i][col].div_floor(&piv);
            if !f.is_zero() {
                let row = m[pr].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.into_iter().map(LatticeVector).collect()
}

/// One solution of `a x = b` over `Q`, if any.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_a_rank_deficient_map() {
        let g = LatticeMatrix::from_i64_rows(&[
            &[0, 0, 0, -1],
            &[-1, 1, 0, 0],
            &[-1, 0, 1, -1],
            &[-1, 0, 0, -1],
            &[-1, 1, 0, -1],
        ])
        .unwrap();
        let k = g.transpose().kernel_basis();
        assert_eq!(k, vec![lv![1, 1, 0, 0, -1]]);
    }

    #[test]
    fn kernel_basis_is_saturated() {
        // 2x + 4y = 0 has kernel spanned by (2,-1), not (4,-2)
        let k = integer_kernel(&[lv![2, 4]], 2);
        assert_eq!(k, vec![lv![2, -1]]);
        let k = integer_kernel(&[lv![6, 10, 15]], 3);
        assert_eq!(k.len(), 2);
        // index of the lattice spanned by k in the kernel is 1: gcd of 2x2 minors equals 1
        let minors = [(0, 1), (0, 2), (1, 2)].map(|(i, j)| {
            &k[0].entries()[i] * &k[1].entries()[j] - &k[0].entries()[j] * &k[1].entries()[i]
        });
        assert_eq!(gcd_all(minors.iter()), BigInt::one());
    }

    #[test]
    fn primitive_of_zero_fails() {
        assert!(matches!(lv![0, 0].primitive(), Err(Error::ZeroVector)));
        assert_eq!(lv![4, -6, 2].primitive().unwrap(), lv![2, -3, 1]);
    }

    #[test]
    fn mismatched_dot_is_an_error() {
        assert!(lv![1, 2].dot(&lv![1, 2, 3]).is_err());
    }

    #[test]
    fn solve_and_rank() {
        let a = vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]];
        assert!(solve_rational(&a, &[qi(1), qi(3)], 2).is_none());
        assert_eq!(solve_rational(&a, &[qi(1), qi(2)], 2).unwrap(), vec![qi(1), qi(0)]);
        assert_eq!(bareiss_rank(&[lv![1, 2, 3], lv![2, 4, 6], lv![0, 1, 1]]), 2);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(fmt_rational(&q(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
    }
}
