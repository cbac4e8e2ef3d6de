//! Exact rational linear algebra: dense matrices over `Q` and canonical
//! subspaces in reduced row echelon form.
//!
//! Every geometric computation in this crate bottoms out here. Subspaces are
//! kept in RREF so that equality of subspaces is equality of representations.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

use crate::error::LinalgError;

/// Arbitrary-precision rational scalar used throughout the symbolic core.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator; panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense row-major matrix over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    /// Build from integer rows; panics if the rows are ragged.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| rat(x)));
        }
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = RationalMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a - b)
            .collect();
        RationalMatrix::new(self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = RationalMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == RationalMatrix::identity(self.rows)
    }

    /// Exact inverse, or `None` for a singular matrix.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // Gauss-Jordan on [self | I].
        let mut aug = RationalMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = Rational::one();
        }
        gauss_jordan(&mut aug);
        // Invertible iff the left block reduced to the identity.
        for r in 0..n {
            for c in 0..n {
                let v = aug.at(r, c);
                let bad = if r == c { !v.is_one() } else { !v.is_zero() };
                if bad {
                    return None;
                }
            }
        }
        let mut inv = RationalMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c).clone();
            }
        }
        Some(inv)
    }

    /// Row rank, computed on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut scratch = self.clone();
        gauss_jordan(&mut scratch)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// In-place Gauss-Jordan elimination to reduced row echelon form.
/// Returns the rank. Pivot columns are scanned left to right.
fn gauss_jordan(m: &mut RationalMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..cols {
                let a = m.at(src, c).clone();
                let b = m.at(pivot_row, c).clone();
                *m.at_mut(src, c) = b;
                *m.at_mut(pivot_row, c) = a;
            }
        }
        let inv = m.at(pivot_row, col).clone().recip();
        for c in col..cols {
            let v = m.at(pivot_row, c).clone() * &inv;
            *m.at_mut(pivot_row, c) = v;
        }
        for r in 0..rows {
            if r == pivot_row || m.at(r, col).is_zero() {
                continue;
            }
            let factor = m.at(r, col).clone();
            for c in col..cols {
                let delta = &factor * m.at(pivot_row, c);
                *m.at_mut(r, c) -= delta;
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Canonical linear subspace of `Q^n`: basis rows in RREF, zero rows dropped.
///
/// Two equal subspaces have identical representations, so `==` on this type
/// is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl fmt::Debug for RationalSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalSubspace(dim {} of Q^{})", self.dim(), self.ambient_dim)?;
        for row in &self.basis {
            let s: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, " [{}]", s.join(", "))?;
        }
        Ok(())
    }
}

impl RationalSubspace {
    /// Canonicalize a spanning set into an RREF basis. Idempotent and
    /// independent of the order of the generators.
    pub fn canonicalize(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self { ambient_dim, basis: Vec::new() });
        }
        let mut m = RationalMatrix::new(
            vectors.len(),
            ambient_dim,
            vectors.iter().flat_map(|v| v.iter().cloned()).collect(),
        );
        let rank = gauss_jordan(&mut m);
        let basis = (0..rank).map(|r| m.row(r).to_vec()).collect();
        Ok(Self { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    /// Span of a subset of coordinate axes.
    pub fn coordinate(ambient_dim: usize, axes: &[usize]) -> Self {
        let mut sorted: Vec<usize> = axes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let basis = sorted
            .iter()
            .map(|&i| {
                assert!(i < ambient_dim);
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Null space of `m`, as a canonical subspace of `Q^cols`.
    pub fn kernel(m: &RationalMatrix) -> Self {
        let mut red = m.clone();
        let rank = gauss_jordan(&mut red);
        let cols = m.cols();
        // Locate pivot columns.
        let mut pivot_col_of_row = Vec::with_capacity(rank);
        let mut is_pivot = vec![false; cols];
        for r in 0..rank {
            let col = (0..cols).find(|&c| !red.at(r, c).is_zero()).expect("nonzero row");
            pivot_col_of_row.push(col);
            is_pivot[col] = true;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for r in 0..rank {
                v[pivot_col_of_row[r]] = -red.at(r, free).clone();
            }
            basis.push(v);
        }
        Self::canonicalize(cols, &basis).expect("kernel vectors have ambient length")
    }

    /// Membership test: is `v` in the span?
    pub fn contains_point(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        // Reduce v against the RREF basis.
        let mut w = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("basis rows nonzero");
            if !w[pivot].is_zero() {
                let factor = w[pivot].clone();
                for (wi, ri) in w.iter_mut().zip(row.iter()) {
                    *wi -= &factor * ri;
                }
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    pub fn contains_subspace(&self, other: &RationalSubspace) -> bool {
        other
            .basis
            .iter()
            .all(|v| self.contains_point(v).expect("matching ambient dimension"))
    }

    /// Largest subspace contained in both, by the Zassenhaus block trick.
    pub fn intersect(&self, other: &RationalSubspace) -> Result<Self, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let n = self.ambient_dim;
        let ra = self.basis.len();
        let rb = other.basis.len();
        if ra == 0 || rb == 0 {
            return Ok(Self::zero(n));
        }
        // Rows [a | a] for a in A, [b | 0] for b in B; after elimination the
        // rows with zero left block carry an intersection basis on the right.
        let mut m = RationalMatrix::zero(ra + rb, 2 * n);
        for (r, a) in self.basis.iter().enumerate() {
            for c in 0..n {
                *m.at_mut(r, c) = a[c].clone();
                *m.at_mut(r, n + c) = a[c].clone();
            }
        }
        for (r, b) in other.basis.iter().enumerate() {
            for c in 0..n {
                *m.at_mut(ra + r, c) = b[c].clone();
            }
        }
        let rank = gauss_jordan(&mut m);
        let mut vectors = Vec::new();
        for r in 0..rank {
            if (0..n).all(|c| m.at(r, c).is_zero()) {
                vectors.push((0..n).map(|c| m.at(r, n + c).clone()).collect());
            }
        }
        Self::canonicalize(n, &vectors)
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &RationalSubspace) -> Result<Self, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Self::canonicalize(self.ambient_dim, &vectors)
    }

    /// Image of the subspace under an invertible linear map.
    pub fn apply(&self, m: &RationalMatrix) -> Self {
        let vectors: Vec<Vec<Rational>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::canonicalize(m.rows(), &vectors).expect("image vectors well-formed")
    }

    /// Exact squared Euclidean distance from `v` to the subspace.
    pub fn distance_squared(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.ambient_dim);
        let norm2 = |w: &[Rational]| -> Rational {
            w.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b)
        };
        if self.basis.is_empty() {
            return norm2(v);
        }
        // Solve the Gram system (B B^T) c = B v and subtract the projection.
        let k = self.basis.len();
        let mut aug = RationalMatrix::zero(k, k + 1);
        for i in 0..k {
            for j in 0..k {
                let dot = self.basis[i]
                    .iter()
                    .zip(self.basis[j].iter())
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |a, b| a + b);
                *aug.at_mut(i, j) = dot;
            }
            let rhs = self.basis[i]
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |a, b| a + b);
            *aug.at_mut(i, k) = rhs;
        }
        let rank = gauss_jordan(&mut aug);
        debug_assert_eq!(rank, k, "Gram matrix of a basis is invertible");
        let coeffs: Vec<Rational> = (0..k).map(|i| aug.at(i, k).clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(self.basis.iter()) {
            for (ri, bi) in residual.iter_mut().zip(row.iter()) {
                *ri -= c * bi;
            }
        }
        norm2(&residual)
    }

    /// Express a point of the subspace in basis coordinates, or `None` if
    /// the point lies outside.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("basis rows nonzero");
            let factor = w[pivot].clone();
            if !factor.is_zero() {
                for (wi, ri) in w.iter_mut().zip(row.iter()) {
                    *wi -= &factor * ri;
                }
            }
            coords.push(factor);
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Linear combination of the basis rows.
    pub fn point_from_coordinates(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.basis.len());
        let mut v = vec![Rational::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(self.basis.iter()) {
            for (vi, ri) in v.iter_mut().zip(row.iter()) {
                *vi += c * ri;
            }
        }
        v
    }
}

/// Deterministic enumeration of rationals ordered by height, used to pick
/// canonical witness points: 0, 1, -1, 2, -2, 1/2, -1/2, 3, ...
pub fn rational_by_height(max_height: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for h in 1..=max_height {
        for (p, q) in height_pairs(h) {
            out.push(Rational::new(BigInt::from(p), BigInt::from(q)));
            out.push(Rational::new(BigInt::from(-p), BigInt::from(q)));
        }
    }
    out
}

fn height_pairs(h: i64) -> Vec<(i64, i64)> {
    // Reduced fractions p/q with max(p, q) == h, p >= 1.
    let mut pairs = Vec::new();
    if h >= 1 {
        pairs.push((h, 1));
    }
    for p in 1..h {
        if num::integer::gcd(p, h) == 1 {
            pairs.push((p, h));
        }
    }
    // Denominator-first ordering keeps small integers early.
    pairs.sort();
    pairs
}

pub fn to_f64(x: &Rational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of approximations for huge operands.
        let n = x.numer().to_f64().unwrap_or(f64::MAX);
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Parse "p/q" or "p" into a rational; used by the input formats.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, LinalgError> {
        t.parse::<BigInt>().map_err(|_| LinalgError::BadNumber(s.to_string()))
    };
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_int(num)?;
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(LinalgError::BadNumber(format!("{s}: zero denominator")));
        }
        Ok(Rational::new(n, d))
    } else {
        Ok(Rational::from_integer(parse_int(s)?))
    }
}

/// Render a rational as "p" or "p/q" in lowest terms.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn norm_squared(v: &[Rational]) -> Rational {
    v.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b)
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Signed comparison helper used when orienting hyperplane normals.
pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
