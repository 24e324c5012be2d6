//! Sparse matrices over exact rings.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serialize;

/// Entry type of an [`ExactMatrix`].
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn to_rational(&self) -> BigRational;
}

impl Scalar for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// A sparse matrix; zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, T>>,
}

pub type IntMatrix = ExactMatrix<BigInt>;
pub type RatMatrix = ExactMatrix<BigRational>;

impl<T: Scalar> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, T::one());
        }
        m
    }

    /// Entries given more than once are summed.
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            m.add_at(r, c, v);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.data[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: T) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, T> {
        &self.data[r]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (&k, a) in row {
                for (&c, b) in &other.data[k] {
                    let e = acc.entry(c).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_at(r, c, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.entries() {
            out.set(r, c, v.clone() * s.clone());
        }
        out
    }

    /// `self ⊗ other`, with the row (column) index of `self` as the more
    /// significant digit.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.data[r1 * other.rows + r2].insert(c1 * other.cols + c2, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.entries() {
            out.set(r, c, v.to_rational());
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|row| integer_row(row, self.cols))
            .collect();
        bareiss_rank(rows)
    }
}

/// Clears denominators: a rational row scaled to a primitive integer row.
fn integer_row<T: Scalar>(row: &BTreeMap<usize, T>, cols: usize) -> Vec<BigInt> {
    let vals: Vec<(usize, BigRational)> = row.iter().map(|(&c, v)| (c, v.to_rational())).collect();
    let lcm = vals
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out = vec![BigInt::zero(); cols];
    for (c, v) in vals {
        out[c] = (v * BigRational::from_integer(lcm.clone())).to_integer();
    }
    out
}

/// Fraction-free elimination; every division is exact.
pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

impl RatMatrix {
    /// Inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c)).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].clone();
            for c in 0..n {
                a[col][c] = &a[col][c] / &piv;
                inv[col][c] = &inv[col][c] / &piv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let (x, y) = (&f * &a[col][c], &f * &inv[col][c]);
                    a[r][c] -= x;
                    inv[r][c] -= y;
                }
            }
        }
        Some(RatMatrix::from_rows(&inv))
    }

    /// Indices of a maximal set of linearly independent columns, chosen
    /// greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        let t = self.transpose();
        let mut ech = Echelon::default();
        (0..t.rows)
            .filter(|&c| ech.insert(t.data[c].iter().map(|(&i, v)| (i, v.clone()))))
            .collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                if let Some(v) = self.data[r].get(&c) {
                    out.data[r].insert(j, v.clone());
                }
            }
        }
        out
    }
}

impl IntMatrix {
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| integer_row(&self.data[r], n)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if p != col {
                a.swap(col, p);
                sign = -sign;
            }
            for r in col + 1..n {
                for c in col + 1..n {
                    let v = &a[col][col] * &a[r][c] - &a[r][col] * &a[col][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[col][col].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

/// Incremental row echelon form over the integers: each inserted vector is
/// reduced against the stored pivot rows by cross-multiplication and kept
/// primitive.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, BigInt>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a vector given by its nonzero entries; returns whether it was
    /// independent of the vectors inserted so far.
    pub fn insert<T: Scalar>(&mut self, v: impl IntoIterator<Item = (usize, T)>) -> bool {
        let tmp: BTreeMap<usize, T> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        let width = tmp.keys().next_back().map_or(0, |&c| c + 1);
        let dense = integer_row(&tmp, width);
        let mut v: BTreeMap<usize, BigInt> = dense
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        loop {
            let Some((&lead, a)) = v.iter().next() else {
                return false;
            };
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            // v ← piv·v − a·row eliminates the leading entry
            let (piv, a) = (row[&lead].clone(), a.clone());
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&c, x) in &v {
                next.insert(c, &piv * x);
            }
            for (&c, y) in row {
                let e = next.entry(c).or_insert_with(BigInt::zero);
                *e -= &a * y;
            }
            next.retain(|_, x| !x.is_zero());
            let g = next.values().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                next.values_mut().for_each(|x| *x /= &g);
            }
            v = next;
        }
        let lead = *v.keys().next().expect("nonzero");
        self.rows.insert(lead, v);
        true
    }
}

struct Entries<'a, T: Scalar>(&'a ExactMatrix<T>);

impl<T: Scalar> Serialize for Entries<'_, T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.nnz()))?;
        for (r, c, v) in self.0.entries() {
            let q = v.to_rational();
            seq.serialize_element(&(r, c, format!("{}/{}", q.numer(), q.denom())))?;
        }
        seq.end()
    }
}

/// `{rows, cols, entries: [[r, c, "num/den"], ...]}`, row-major.
impl<T: Scalar> Serialize for ExactMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &Entries(self))?;
        st.end()
    }
}
