//! Exact rational scalars, dense matrices and linear solving.
//!
//! Every elimination uses the first nonzero entry of a column as pivot and
//! keeps rows in their original relative order otherwise, so results are
//! reproducible across runs and platforms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num/den` as a canonical rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Renders `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Format(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: row.len(),
                    context: "ragged matrix rows",
                });
            }
            entries.extend(row);
        }
        Ok(RatMatrix { rows: n, cols, entries })
    }

    /// Convenience constructor from small integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("ragged literal")
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension {
                    expected: rows,
                    found: col.len(),
                    context: "column length",
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let e = &mut self.entries[i * self.cols + j];
        *e += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
                context: "matrix-vector product",
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `wᵀ·A` as a row vector.
    pub fn left_mul_vec(&self, w: &[Rational]) -> Result<Vec<Rational>> {
        if w.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                found: w.len(),
                context: "vector-matrix product",
            });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += wi * a;
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
                context: "matrix product",
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    fn combine(&self, other: &RatMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
                context: "elementwise matrix operation",
            });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.cols,
                context: "vertical stack",
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend_from_slice(self.row(i));
        }
        RatMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of `[A | b]`, restricted to the pivots of `A`.
struct Echelon {
    /// Reduced rows of the augmented matrix (length `cols + 1`), nonzero rows first.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

fn reduce(a: &RatMatrix, b: Option<&[Rational]>) -> Echelon {
    let cols = a.cols;
    let width = cols + usize::from(b.is_some());
    let mut rows: Vec<Vec<Rational>> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            if let Some(b) = b {
                r.push(b[i].clone());
            }
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        // Move the pivot row up while preserving the order of the rows it passes.
        let row = rows.remove(found);
        rows.insert(next, row);

        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for x in rows[next][col..width].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..width].iter_mut().zip(&pivot_row[col..width]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

fn nullspace_from(ech: &Echelon, cols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                let x = &ech.rows[r][free];
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Solved {
        particular: Vec<Rational>,
        nullspace: Vec<Vec<Rational>>,
    },
    /// `witnessᵀ·A = 0` and `witnessᵀ·b ≠ 0`.
    Inconsistent { witness: Vec<Rational> },
}

impl LinearSolution {
    pub fn is_solved(&self) -> bool {
        matches!(self, LinearSolution::Solved { .. })
    }
}

/// Solves `A·x = b` exactly.
///
/// On success returns the particular solution with every free variable set
/// to zero together with a nullspace basis. When the system has no solution
/// the result carries a row combination certifying it: the witness is the
/// canonical solution of `Aᵀw = 0, bᵀw = 1`, which exists by the Fredholm
/// alternative.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<LinearSolution> {
    if b.len() != a.rows {
        return Err(Error::Dimension {
            expected: a.rows,
            found: b.len(),
            context: "right-hand side length",
        });
    }
    let ech = reduce(a, Some(b));
    let rank = ech.pivots.len();
    let consistent = ech.rows[rank..].iter().all(|r| r[a.cols].is_zero());
    if !consistent {
        return Ok(LinearSolution::Inconsistent { witness: witness(a, b)? });
    }
    let mut particular = vec![Rational::zero(); a.cols];
    for (r, &p) in ech.pivots.iter().enumerate() {
        particular[p] = ech.rows[r][a.cols].clone();
    }
    Ok(LinearSolution::Solved {
        particular,
        nullspace: nullspace_from(&ech, a.cols),
    })
}

fn witness(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let mut dual = a.transpose().entries;
    dual.extend_from_slice(b);
    let dual = RatMatrix {
        rows: a.cols + 1,
        cols: a.rows,
        entries: dual,
    };
    let mut target = vec![Rational::zero(); a.cols + 1];
    target[a.cols] = Rational::one();
    match solve_linear(&dual, &target)? {
        LinearSolution::Solved { particular, .. } => Ok(particular),
        LinearSolution::Inconsistent { .. } => Err(Error::Internal(
            "inconsistent system without a dual certificate".into(),
        )),
    }
}

/// Basis of `{v : A·v = 0}`; each vector has one free variable set to 1 and
/// the remaining free variables 0.
pub fn nullspace(a: &RatMatrix) -> Vec<Vec<Rational>> {
    nullspace_from(&reduce(a, None), a.cols)
}

pub fn rank(a: &RatMatrix) -> usize {
    reduce(a, None).pivots.len()
}

/// Row-reduced basis of the row space of `vectors` (all of equal length).
pub fn row_space_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMatrix::from_rows(vectors.to_vec()).expect("equal lengths");
    debug_assert_eq!(m.cols, len);
    let ech = reduce(&m, None);
    let r = ech.pivots.len();
    ech.rows.into_iter().take(r).collect()
}

/// A growing subspace kept in echelon form, for closure computations where
/// vectors arrive one at a time.
#[derive(Clone, Debug, Default)]
pub struct IncrementalSpan {
    len: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl IncrementalSpan {
    pub fn new(len: usize) -> Self {
        IncrementalSpan { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection along the stored pivots; zero iff `v` is in the span.
    pub fn residue(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut v = v.to_vec();
        // each stored row vanishes on the pivots of the rows stored before it
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.residue(v))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.residue(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &RatMatrix) -> Result<Option<RatMatrix>> {
    if a.rows != a.cols {
        return Err(Error::Dimension {
            expected: a.rows,
            found: a.cols,
            context: "inverse of non-square matrix",
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(Some(RatMatrix::zeros(0, 0)));
    }
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let ech = reduce(&aug, None);
    if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, ech.rows[i][n + j].clone());
        }
    }
    Ok(Some(inv))
}

/// Determinant by elimination; zero for singular input.
pub fn determinant(a: &RatMatrix) -> Result<Rational> {
    if a.rows != a.cols {
        return Err(Error::Dimension {
            expected: a.rows,
            found: a.cols,
            context: "determinant of non-square matrix",
        });
    }
    let n = a.rows;
    let mut m: Vec<Vec<Rational>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Ok(det)
}

/// Largest absolute value among the entries, used only in diagnostics.
pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
}
