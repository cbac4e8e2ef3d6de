//! Polynomial differential forms with exact coefficients: exterior algebra,
//! the differential, the scaling-homotopy contraction, pullbacks, and the
//! coordinate-subspace quotient.
//!
//! Forms are stored as maps from (monomial exponent vector, strictly
//! increasing differential index set) to coefficients. The coefficient ring
//! is generic so the circle averaging can pass through Gaussian rationals.

pub mod average;
pub mod cohomology;
pub mod parse;

pub use average::{fundamental_field, horizontal_part, reynolds_circle, reynolds_finite, Horizontality};
pub use cohomology::{basic_cohomology, BasicCohomology, BasicComplexDims};
pub use parse::{format_form, parse_form};

use num::{BigInt, One, Zero};
use std::collections::BTreeMap;

use crate::error::FormsError;
use crate::linalg::{Rational, RationalMatrix, RationalSubspace};

/// Coefficient ring abstraction: rationals or Gaussian rationals.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// a + b i with rational a, b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn i() -> Self {
        Self { re: <Rational as Zero>::zero(), im: <Rational as One>::one() }
    }
}

impl Coeff for GaussianRational {
    fn zero() -> Self {
        Self { re: Coeff::zero(), im: Coeff::zero() }
    }
    fn one() -> Self {
        Self { re: Coeff::one(), im: Coeff::zero() }
    }
    fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }
    fn sub(&self, other: &Self) -> Self {
        Self { re: &self.re - &other.re, im: &self.im - &other.im }
    }
    fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn neg(&self) -> Self {
        Self { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn from_rational(r: &Rational) -> Self {
        Self { re: r.clone(), im: <Rational as Zero>::zero() }
    }
}

/// Key of one term: monomial exponents and a strictly increasing set of
/// differential indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermKey {
    pub exps: Vec<u32>,
    pub idx: Vec<u8>,
}

/// A polynomial differential form over the coefficient ring `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormG<C: Coeff> {
    n: usize,
    degree: usize,
    terms: BTreeMap<TermKey, C>,
}

/// The concrete rational-coefficient form used across the crate.
pub type PolyForm = FormG<Rational>;

/// A polynomial: a 0-form.
pub type Poly = PolyForm;

impl<C: Coeff> FormG<C> {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self { n, degree, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut f = Self::zero(n, 0);
        f.insert(TermKey { exps: vec![0; n], idx: vec![] }, c);
        f
    }

    /// Single term `c * x^exps dx_idx`; panics on malformed keys.
    pub fn term(n: usize, exps: Vec<u32>, idx: Vec<u8>, c: C) -> Self {
        assert_eq!(exps.len(), n);
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        assert!(idx.iter().all(|&i| (i as usize) < n));
        let degree = idx.len();
        let mut f = Self::zero(n, degree);
        f.insert(TermKey { exps, idx }, c);
        f
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn form_degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total coefficient degree among terms (0 for the zero form).
    pub fn coefficient_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k.exps.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, key: TermKey, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "form degree mismatch"
        );
        let mut out = Self::zero(self.n, if self.is_zero() { other.degree } else { self.degree });
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.clone());
        }
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub_form(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.mul(c));
        }
        out
    }

    /// Graded-commutative wedge product.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormsError> {
        if self.n != other.n {
            return Err(FormsError::DimensionMismatch { expected: self.n, got: other.n });
        }
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.n, degree.min(self.n + 1));
        if degree > self.n {
            out.degree = degree;
            return Ok(out); // too many differentials: identically zero
        }
        out.degree = degree;
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let Some((idx, sign)) = merge_indices(&ka.idx, &kb.idx) else {
                    continue;
                };
                let exps: Vec<u32> =
                    ka.exps.iter().zip(kb.exps.iter()).map(|(a, b)| a + b).collect();
                let mut c = ca.mul(cb);
                if sign < 0 {
                    c = c.neg();
                }
                out.insert(TermKey { exps, idx }, c);
            }
        }
        Ok(out)
    }

    /// Exterior differential.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.n, self.degree + 1);
        for (k, c) in &self.terms {
            for i in 0..self.n {
                if k.exps[i] == 0 || k.idx.contains(&(i as u8)) {
                    continue;
                }
                let mut exps = k.exps.clone();
                exps[i] -= 1;
                let (idx, sign) = insert_index(&k.idx, i as u8);
                let mut coeff = c.mul(&C::from_rational(&Rational::from_integer(BigInt::from(
                    k.exps[i],
                ))));
                if sign < 0 {
                    coeff = coeff.neg();
                }
                out.insert(TermKey { exps, idx }, coeff);
            }
        }
        out
    }

    /// Contraction with the Euler vector field `sum x_i d/dx_i`.
    pub fn euler_contraction(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(self.n, 0);
        }
        let mut out = Self::zero(self.n, self.degree - 1);
        for (k, c) in &self.terms {
            for (pos, &i) in k.idx.iter().enumerate() {
                let mut exps = k.exps.clone();
                exps[i as usize] += 1;
                let idx: Vec<u8> = k
                    .idx
                    .iter()
                    .copied()
                    .filter(|&j| j != i)
                    .collect();
                let mut coeff = c.clone();
                if pos % 2 == 1 {
                    coeff = coeff.neg();
                }
                out.insert(TermKey { exps, idx }, coeff);
            }
        }
        out
    }

    /// Contraction against a polynomial vector field with components `xi`.
    pub fn contract_with_field(&self, xi: &[FormG<C>]) -> Self {
        assert_eq!(xi.len(), self.n);
        if self.degree == 0 {
            return Self::zero(self.n, 0);
        }
        let mut out = Self::zero(self.n, self.degree - 1);
        for (k, c) in &self.terms {
            for (pos, &i) in k.idx.iter().enumerate() {
                let idx: Vec<u8> = k.idx.iter().copied().filter(|&j| j != i).collect();
                for (ck, cc) in &xi[i as usize].terms {
                    debug_assert!(ck.idx.is_empty(), "field components are 0-forms");
                    let exps: Vec<u32> =
                        k.exps.iter().zip(ck.exps.iter()).map(|(a, b)| a + b).collect();
                    let mut coeff = c.mul(cc);
                    if pos % 2 == 1 {
                        coeff = coeff.neg();
                    }
                    out.insert(TermKey { exps, idx: idx.clone() }, coeff);
                }
            }
        }
        out
    }

    /// Pullback under the polynomial map with the given component
    /// polynomials: `x_i` is replaced by `comps[i]`, `dx_i` by `d comps[i]`.
    /// The components live in the new variable space of dimension `m`.
    pub fn substitute(&self, comps: &[FormG<C>], m: usize) -> Result<Self, FormsError> {
        if comps.len() != self.n {
            return Err(FormsError::BadMapArity { expected: self.n, got: comps.len() });
        }
        for c in comps {
            if c.ambient_dim() != m || c.form_degree() != 0 {
                return Err(FormsError::DimensionMismatch { expected: m, got: c.ambient_dim() });
            }
        }
        let differentials: Vec<FormG<C>> = comps.iter().map(|c| c.d()).collect();
        let mut out = Self::zero(m, self.degree);
        for (k, c) in &self.terms {
            // Coefficient monomial.
            let mut acc = FormG::constant(m, c.clone());
            for (i, &e) in k.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.wedge(&comps[i])?;
                }
            }
            // Differential part as a wedge of pulled-back one-forms.
            for &i in &k.idx {
                acc = acc.wedge(&differentials[i as usize])?;
            }
            for (kk, cc) in acc.terms {
                out.insert(kk, cc);
            }
        }
        Ok(out)
    }

    /// Pullback by a linear map `x = M u` (columns index the new variables).
    pub fn linear_pullback(&self, m: &[Vec<C>], new_dim: usize) -> Result<Self, FormsError> {
        if m.len() != self.n {
            return Err(FormsError::BadMapArity { expected: self.n, got: m.len() });
        }
        let comps: Vec<FormG<C>> = m
            .iter()
            .map(|row| {
                let mut f = FormG::zero(new_dim, 0);
                for (j, c) in row.iter().enumerate() {
                    let mut exps = vec![0u32; new_dim];
                    exps[j] = 1;
                    f.insert(TermKey { exps, idx: vec![] }, c.clone());
                }
                f
            })
            .collect();
        self.substitute(&comps, new_dim)
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FormG<D> {
        let mut out = FormG::zero(self.n, self.degree);
        for (k, c) in &self.terms {
            out.insert(k.clone(), f(c));
        }
        out
    }
}

impl PolyForm {
    /// The scaling-homotopy contraction: each term of coefficient degree
    /// `p` in a `k`-form contributes its Euler contraction divided by
    /// `p + k`; zero on 0-forms. This evaluates the homotopy integral of
    /// the scaling homotopy in closed form.
    pub fn contraction_k(&self) -> PolyForm {
        if self.degree == 0 {
            return PolyForm::zero(self.n, 0);
        }
        let k = self.degree as i64;
        let mut out = PolyForm::zero(self.n, self.degree - 1);
        for (key, c) in &self.terms {
            let p = key.exps.iter().sum::<u32>() as i64;
            let single = PolyForm {
                n: self.n,
                degree: self.degree,
                terms: BTreeMap::from([(key.clone(), c.clone())]),
            };
            let contracted = single
                .euler_contraction()
                .scale(&Rational::new(BigInt::one(), BigInt::from(p + k)));
            out = out.add(&contracted);
        }
        out
    }

    /// Pullback along the origin map `H_0(v) = 0`: constants survive on
    /// 0-forms, everything else dies.
    pub fn h0_pullback(&self) -> PolyForm {
        if self.degree > 0 {
            return PolyForm::zero(self.n, self.degree);
        }
        let mut out = PolyForm::zero(self.n, 0);
        for (k, c) in &self.terms {
            if k.exps.iter().all(|&e| e == 0) {
                out.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Residual of the homotopy identity for the scaling homotopy:
    /// `omega - H_0^* omega - d K omega - K d omega`; identically zero.
    pub fn homotopy_identity_residual(&self) -> PolyForm {
        let dk = self.contraction_k().d();
        let kd = self.d().contraction_k();
        self.sub_form(&self.h0_pullback()).sub_form(&dk).sub_form(&kd)
    }

    /// Canonical representative modulo the ideal complex of a coordinate
    /// subspace: drop every term touching a complementary coordinate in its
    /// monomial or its differential set. Equals the pullback to the
    /// subspace written in ambient coordinates.
    pub fn relative_ideal_quotient(
        &self,
        subspace: &RationalSubspace,
    ) -> Result<PolyForm, FormsError> {
        let axes = coordinate_axes(subspace).ok_or(FormsError::NonCoordinateSubspace)?;
        let keep = |i: usize| axes.contains(&i);
        let mut out = PolyForm::zero(self.n, self.degree);
        for (k, c) in &self.terms {
            let touches_complement = k
                .exps
                .iter()
                .enumerate()
                .any(|(i, &e)| e > 0 && !keep(i))
                || k.idx.iter().any(|&i| !keep(i as usize));
            if !touches_complement {
                out.insert(k.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Pullback by a rational-linear map given as a matrix (`x = M u`).
    pub fn pullback_matrix(&self, m: &RationalMatrix) -> Result<PolyForm, FormsError> {
        if m.rows() != self.n {
            return Err(FormsError::BadMapArity { expected: self.n, got: m.rows() });
        }
        let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        self.linear_pullback(&rows, m.cols())
    }

    /// Evaluate a 0-form at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(self.degree, 0, "evaluation is for 0-forms");
        assert_eq!(x.len(), self.n);
        let mut acc: Rational = Zero::zero();
        for (k, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in k.exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &x[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Partial derivative of a 0-form.
    pub fn partial(&self, i: usize) -> PolyForm {
        assert_eq!(self.degree, 0);
        let mut out = PolyForm::zero(self.n, 0);
        for (k, c) in &self.terms {
            if k.exps[i] == 0 {
                continue;
            }
            let mut exps = k.exps.clone();
            exps[i] -= 1;
            out.insert(
                TermKey { exps, idx: vec![] },
                c * Rational::from_integer(BigInt::from(k.exps[i])),
            );
        }
        out
    }
}

/// The coordinate axes spanning a subspace, or `None` if it is not a
/// coordinate subspace.
pub fn coordinate_axes(subspace: &RationalSubspace) -> Option<Vec<usize>> {
    let mut axes = Vec::new();
    for row in subspace.basis() {
        let mut nonzero = row.iter().enumerate().filter(|(_, x)| !Zero::is_zero(*x));
        let (i, v) = nonzero.next()?;
        if nonzero.next().is_some() || !v.is_one() {
            return None;
        }
        axes.push(i);
    }
    Some(axes)
}

/// Merge two strictly increasing index sets; `None` on repeats. The sign is
/// the parity of the merge permutation.
fn merge_indices(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, i8)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i8;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-elements.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// Insert one index into a strictly increasing set; sign is (-1)^position.
fn insert_index(idx: &[u8], i: u8) -> (Vec<u8>, i8) {
    let pos = idx.iter().take_while(|&&j| j < i).count();
    let mut out = Vec::with_capacity(idx.len() + 1);
    out.extend_from_slice(&idx[..pos]);
    out.push(i);
    out.extend_from_slice(&idx[pos..]);
    (out, if pos % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn x_poly(n: usize, i: usize) -> PolyForm {
        let mut exps = vec![0u32; n];
        exps[i] = 1;
        PolyForm::term(n, exps, vec![], rat(1))
    }

    fn dx(n: usize, i: u8) -> PolyForm {
        PolyForm::term(n, vec![0; n], vec![i], rat(1))
    }

    #[test]
    fn d_of_x_squared() {
        let x2 = PolyForm::term(1, vec![2], vec![], rat(1));
        let d = x2.d();
        assert_eq!(d, PolyForm::term(1, vec![1], vec![0], rat(2)));
    }

    #[test]
    fn d_of_x_dy() {
        let x_dy = PolyForm::term(2, vec![1, 0], vec![1], rat(1));
        assert_eq!(x_dy.d(), PolyForm::term(2, vec![0, 0], vec![0, 1], rat(1)));
    }

    #[test]
    fn wedge_of_dx_with_itself_vanishes() {
        let a = dx(2, 0);
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn wedge_anticommutes() {
        let a = dx(2, 0);
        let b = dx(2, 1);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, ba.scale(&rat(-1)));
    }

    #[test]
    fn d_squared_is_zero() {
        let omega = PolyForm::term(3, vec![2, 1, 0], vec![1], rat(3))
            .add(&PolyForm::term(3, vec![0, 0, 3], vec![2], ratio(1, 2)));
        assert!(omega.d().d().is_zero());
    }

    #[test]
    fn contraction_k_examples() {
        // K(dx) = x
        let k_dx = dx(1, 0).contraction_k();
        assert_eq!(k_dx, x_poly(1, 0));
        // K(x dy) = xy/2
        let x_dy = PolyForm::term(2, vec![1, 0], vec![1], rat(1));
        assert_eq!(
            x_dy.contraction_k(),
            PolyForm::term(2, vec![1, 1], vec![], ratio(1, 2))
        );
        // K(dx ^ dy) = (x dy - y dx)/2
        let vol = dx(2, 0).wedge(&dx(2, 1)).unwrap();
        let expected = PolyForm::term(2, vec![1, 0], vec![1], ratio(1, 2))
            .add(&PolyForm::term(2, vec![0, 1], vec![0], ratio(-1, 2)));
        assert_eq!(vol.contraction_k(), expected);
    }

    #[test]
    fn homotopy_identity_on_x_dy() {
        let x_dy = PolyForm::term(2, vec![1, 0], vec![1], rat(1));
        assert!(x_dy.homotopy_identity_residual().is_zero());
    }

    #[test]
    fn homotopy_identity_on_constants() {
        let c = PolyForm::constant(3, ratio(7, 3));
        assert!(c.homotopy_identity_residual().is_zero());
    }

    #[test]
    fn relative_ideal_quotient_examples() {
        let n = 2;
        let x_axis = RationalSubspace::coordinate(n, &[0]);
        // omega = x dy + y dx restricts to 0 on the x-axis.
        let omega = PolyForm::term(n, vec![1, 0], vec![1], rat(1))
            .add(&PolyForm::term(n, vec![0, 1], vec![0], rat(1)));
        assert!(omega.relative_ideal_quotient(&x_axis).unwrap().is_zero());
        // x^2 dx survives untouched.
        let x2_dx = PolyForm::term(n, vec![2, 0], vec![0], rat(1));
        assert_eq!(x2_dx.relative_ideal_quotient(&x_axis).unwrap(), x2_dx);
        // dy dies.
        assert!(dx(n, 1).relative_ideal_quotient(&x_axis).unwrap().is_zero());
        // Non-coordinate subspace is rejected.
        let diag = RationalSubspace::canonicalize(2, &[vec![rat(1), rat(1)]]).unwrap();
        assert!(matches!(
            x2_dx.relative_ideal_quotient(&diag),
            Err(FormsError::NonCoordinateSubspace)
        ));
    }

    #[test]
    fn pullback_chain_rule() {
        // F(u) = (u, u^2): pullback of x dy = u * 2u du = 2 u^2 du.
        let x_dy = PolyForm::term(2, vec![1, 0], vec![1], rat(1));
        let comps = vec![
            PolyForm::term(1, vec![1], vec![], rat(1)),
            PolyForm::term(1, vec![2], vec![], rat(1)),
        ];
        let pulled = x_dy.substitute(&comps, 1).unwrap();
        assert_eq!(pulled, PolyForm::term(1, vec![2], vec![0], rat(2)));
    }

    #[test]
    fn pullback_by_scaling() {
        let m = RationalMatrix::new(1, 1, vec![ratio(1, 3)]);
        let pulled = dx(1, 0).pullback_matrix(&m).unwrap();
        assert_eq!(pulled, PolyForm::term(1, vec![0], vec![0], ratio(1, 3)));
    }

    #[test]
    fn pullback_functoriality_and_d_commutation() {
        // F: Q^2 -> Q^2 polynomial, G: Q -> Q^2; (F.G)^* = G^* . F^*.
        let n = 2;
        let omega = PolyForm::term(n, vec![1, 1], vec![0], rat(1))
            .add(&PolyForm::term(n, vec![0, 2], vec![1], rat(1)));
        let f_comps = vec![
            PolyForm::term(n, vec![0, 1], vec![], rat(1)), // x -> y
            PolyForm::term(n, vec![2, 0], vec![], rat(1)), // y -> x^2
        ];
        let g_comps = vec![
            PolyForm::term(1, vec![1], vec![], rat(1)),
            PolyForm::term(1, vec![3], vec![], rat(2)),
        ];
        let fg_comps: Vec<PolyForm> = f_comps
            .iter()
            .map(|c| c.substitute(&g_comps, 1).unwrap())
            .collect();
        let lhs = omega.substitute(&fg_comps, 1).unwrap();
        let rhs = omega.substitute(&f_comps, 2).unwrap().substitute(&g_comps, 1).unwrap();
        assert_eq!(lhs, rhs);
        // d commutes with pullback.
        let d_then_pull = omega.d().substitute(&f_comps, 2).unwrap();
        let pull_then_d = omega.substitute(&f_comps, 2).unwrap().d();
        assert_eq!(d_then_pull, pull_then_d);
    }

    #[test]
    fn quotient_commutes_with_d() {
        let x_axis = RationalSubspace::coordinate(2, &[0]);
        let omega = PolyForm::term(2, vec![2, 1], vec![], rat(1))
            .add(&PolyForm::term(2, vec![3, 0], vec![], rat(1)));
        let lhs = omega.d().relative_ideal_quotient(&x_axis).unwrap();
        let rhs = omega.relative_ideal_quotient(&x_axis).unwrap().d();
        assert_eq!(lhs, rhs);
    }
}
