//! Group averaging of polynomial forms and horizontality for circle-weight
//! actions.
//!
//! Finite groups average by summing linear pullbacks. The circle averages
//! by exact projection onto the weight-zero isotypic component in a
//! complexified coordinate basis, then returning to real coordinates; no
//! quadrature over the circle is ever performed.

use num::{BigInt, One, Zero};

use super::{Coeff, FormG, GaussianRational, PolyForm, TermKey};
use crate::error::FormsError;
use crate::group::{CircleWeightAction, FiniteMatrixGroup};
use crate::linalg::Rational;

/// Average over a finite matrix group: an idempotent projection onto
/// invariant forms.
pub fn reynolds_finite(omega: &PolyForm, group: &FiniteMatrixGroup) -> Result<PolyForm, FormsError> {
    let n = omega.ambient_dim();
    if group.dim() != n {
        return Err(FormsError::DimensionMismatch { expected: n, got: group.dim() });
    }
    let mut acc = PolyForm::zero(n, omega.form_degree());
    for g in 0..group.order() {
        acc = acc.add(&omega.pullback_matrix(group.element(g))?);
    }
    let order_inv = Rational::new(BigInt::one(), BigInt::from(group.order()));
    Ok(acc.scale(&order_inv))
}

/// The weight of a complexified term: block coordinates come in pairs
/// (z_j, zbar_j) of weights (n_j, -n_j); trivial coordinates are silent.
fn term_weight(action: &CircleWeightAction, key: &TermKey) -> i64 {
    let mut w = 0i64;
    for (j, &nj) in action.weights().iter().enumerate() {
        let z = 2 * j;
        let zbar = 2 * j + 1;
        w += nj * (key.exps[z] as i64 - key.exps[zbar] as i64);
        if key.idx.contains(&(z as u8)) {
            w += nj;
        }
        if key.idx.contains(&(zbar as u8)) {
            w -= nj;
        }
    }
    w
}

/// Average over the circle: complexify, keep the weight-zero terms, and
/// realify. Exact on polynomial forms, and an idempotent projection.
pub fn reynolds_circle(
    omega: &PolyForm,
    action: &CircleWeightAction,
) -> Result<PolyForm, FormsError> {
    let n = action.ambient_dim();
    if omega.ambient_dim() != n {
        return Err(FormsError::DimensionMismatch { expected: n, got: omega.ambient_dim() });
    }
    let blocks = action.weights().len();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let i = GaussianRational::i();
    let c = |r: &Rational| GaussianRational::from_rational(r);

    // x-coordinates in terms of (z, zbar, trivials):
    // x_{2j} = (z_j + zbar_j)/2, x_{2j+1} = -i (z_j - zbar_j)/2.
    let mut to_complex: Vec<FormG<GaussianRational>> = Vec::with_capacity(n);
    for j in 0..blocks {
        let z = 2 * j;
        let zbar = 2 * j + 1;
        let mut even = FormG::zero(n, 0);
        even = even.add(&unit_monomial(n, z, c(&half)));
        even = even.add(&unit_monomial(n, zbar, c(&half)));
        to_complex.push(even);
        let minus_i_half = i.neg().mul(&c(&half));
        let i_half = i.mul(&c(&half));
        let mut odd = FormG::zero(n, 0);
        odd = odd.add(&unit_monomial(n, z, minus_i_half));
        odd = odd.add(&unit_monomial(n, zbar, i_half));
        to_complex.push(odd);
    }
    for t in 2 * blocks..n {
        to_complex.push(unit_monomial(n, t, GaussianRational::one()));
    }

    let complexified = omega
        .map_coeffs(GaussianRational::from_rational)
        .substitute(&to_complex, n)?;

    let mut filtered: FormG<GaussianRational> = FormG::zero(n, omega.form_degree());
    for (key, coeff) in complexified.terms() {
        if term_weight(action, key) == 0 {
            filtered = filtered.add(&FormG::term(
                n,
                key.exps.clone(),
                key.idx.clone(),
                coeff.clone(),
            ));
        }
    }

    // Back to real coordinates: z_j = x_{2j} + i x_{2j+1},
    // zbar_j = x_{2j} - i x_{2j+1}.
    let mut to_real: Vec<FormG<GaussianRational>> = Vec::with_capacity(n);
    for j in 0..blocks {
        let re = 2 * j;
        let im = 2 * j + 1;
        let mut z = FormG::zero(n, 0);
        z = z.add(&unit_monomial(n, re, GaussianRational::one()));
        z = z.add(&unit_monomial(n, im, i.clone()));
        to_real.push(z);
        let mut zbar = FormG::zero(n, 0);
        zbar = zbar.add(&unit_monomial(n, re, GaussianRational::one()));
        zbar = zbar.add(&unit_monomial(n, im, i.neg()));
        to_real.push(zbar);
    }
    for t in 2 * blocks..n {
        to_real.push(unit_monomial(n, t, GaussianRational::one()));
    }
    let real = filtered.substitute(&to_real, n)?;

    let mut out = PolyForm::zero(n, omega.form_degree());
    for (key, coeff) in real.terms() {
        debug_assert!(
            Zero::is_zero(&coeff.im),
            "circle average of a real form is real"
        );
        out = out.add(&PolyForm::term(n, key.exps.clone(), key.idx.clone(), coeff.re.clone()));
    }
    Ok(out)
}

fn unit_monomial(n: usize, var: usize, c: GaussianRational) -> FormG<GaussianRational> {
    let mut exps = vec![0u32; n];
    exps[var] = 1;
    FormG::term(n, exps, vec![], c)
}

/// The fundamental vector field of a circle-weight action: on block `j`,
/// `(x, y) -> n_j (-y, x)`; zero on the trivial summand.
pub fn fundamental_field(action: &CircleWeightAction) -> Vec<PolyForm> {
    let n = action.ambient_dim();
    let mut field = Vec::with_capacity(n);
    for j in 0..action.weights().len() {
        let nj = action.weights()[j];
        let x = 2 * j;
        let y = 2 * j + 1;
        let mut ex = vec![0u32; n];
        ex[y] = 1;
        field.push(PolyForm::term(n, ex, vec![], Rational::from_integer(BigInt::from(-nj))));
        let mut ey = vec![0u32; n];
        ey[x] = 1;
        field.push(PolyForm::term(n, ey, vec![], Rational::from_integer(BigInt::from(nj))));
    }
    for _ in 2 * action.weights().len()..n {
        field.push(PolyForm::zero(n, 0));
    }
    field
}

/// Result of a horizontality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Horizontality {
    /// Finite group: the algebroid is zero, every form is horizontal.
    TriviallyHorizontal,
    /// Circle action: the contraction with the fundamental field, zero iff
    /// the form is horizontal.
    Contraction(PolyForm),
}

impl Horizontality {
    pub fn is_horizontal(&self) -> bool {
        match self {
            Horizontality::TriviallyHorizontal => true,
            Horizontality::Contraction(f) => f.is_zero(),
        }
    }
}

/// Contract a form with the fundamental field of a circle action, or flag
/// the finite case as trivially horizontal.
pub fn horizontal_part(omega: &PolyForm, action: Option<&CircleWeightAction>) -> Horizontality {
    match action {
        None => Horizontality::TriviallyHorizontal,
        Some(circle) => {
            let xi = fundamental_field(circle);
            Horizontality::Contraction(omega.contract_with_field(&xi))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, RationalMatrix};

    fn z2_line() -> FiniteMatrixGroup {
        FiniteMatrixGroup::close_generators(&[RationalMatrix::from_int_rows(&[&[-1]])], 4).unwrap()
    }

    #[test]
    fn reynolds_kills_odd_and_keeps_even() {
        let g = z2_line();
        let x = PolyForm::term(1, vec![1], vec![], rat(1));
        assert!(reynolds_finite(&x, &g).unwrap().is_zero());
        let x2 = PolyForm::term(1, vec![2], vec![], rat(1));
        assert_eq!(reynolds_finite(&x2, &g).unwrap(), x2);
    }

    #[test]
    fn reynolds_is_idempotent() {
        let g = z2_line();
        let omega = PolyForm::term(1, vec![3], vec![0], rat(5))
            .add(&PolyForm::term(1, vec![2], vec![0], rat(7)));
        let once = reynolds_finite(&omega, &g).unwrap();
        let twice = reynolds_finite(&once, &g).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn circle_keeps_rotation_invariant_one_form() {
        // x dx + y dy = d(r^2)/2 is invariant for weight (1).
        let action = CircleWeightAction::new(vec![1], 0).unwrap();
        let omega = PolyForm::term(2, vec![1, 0], vec![0], rat(1))
            .add(&PolyForm::term(2, vec![0, 1], vec![1], rat(1)));
        assert_eq!(reynolds_circle(&omega, &action).unwrap(), omega);
    }

    #[test]
    fn circle_kills_non_invariant_coordinates() {
        let action = CircleWeightAction::new(vec![1], 0).unwrap();
        let x = PolyForm::term(2, vec![1, 0], vec![], rat(1));
        assert!(reynolds_circle(&x, &action).unwrap().is_zero());
        let dx = PolyForm::term(2, vec![0, 0], vec![0], rat(1));
        assert!(reynolds_circle(&dx, &action).unwrap().is_zero());
        // r^2 = x^2 + y^2 survives.
        let r2 = PolyForm::term(2, vec![2, 0], vec![], rat(1))
            .add(&PolyForm::term(2, vec![0, 2], vec![], rat(1)));
        assert_eq!(reynolds_circle(&r2, &action).unwrap(), r2);
    }

    #[test]
    fn circle_average_is_idempotent() {
        let action = CircleWeightAction::new(vec![1, 2], 0).unwrap();
        let omega = PolyForm::term(4, vec![1, 1, 1, 0], vec![2, 3], rat(3))
            .add(&PolyForm::term(4, vec![0, 0, 2, 0], vec![0, 1], rat(1)));
        let once = reynolds_circle(&omega, &action).unwrap();
        let twice = reynolds_circle(&once, &action).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn horizontality_examples() {
        let action = CircleWeightAction::new(vec![1], 0).unwrap();
        // x dx + y dy is horizontal: contraction x(-y) + y(x) = 0.
        let omega = PolyForm::term(2, vec![1, 0], vec![0], rat(1))
            .add(&PolyForm::term(2, vec![0, 1], vec![1], rat(1)));
        assert!(horizontal_part(&omega, Some(&action)).is_horizontal());
        // dx is not: its contraction is -y.
        let dx = PolyForm::term(2, vec![0, 0], vec![0], rat(1));
        match horizontal_part(&dx, Some(&action)) {
            Horizontality::Contraction(c) => {
                assert_eq!(c, PolyForm::term(2, vec![0, 1], vec![], rat(-1)));
            }
            _ => panic!("expected a contraction"),
        }
        // Finite context: trivially horizontal with the flag.
        assert_eq!(horizontal_part(&dx, None), Horizontality::TriviallyHorizontal);
    }

    #[test]
    fn reynolds_commutes_with_d_and_contraction() {
        let g = z2_line();
        let omega = PolyForm::term(1, vec![3], vec![], rat(2))
            .add(&PolyForm::term(1, vec![4], vec![], rat(1)));
        let d_then_avg = reynolds_finite(&omega.d(), &g).unwrap();
        let avg_then_d = reynolds_finite(&omega, &g).unwrap().d();
        assert_eq!(d_then_avg, avg_then_d);

        let one_form = PolyForm::term(1, vec![3], vec![0], rat(2));
        let k_then_avg = reynolds_finite(&one_form.contraction_k(), &g).unwrap();
        let avg_then_k = reynolds_finite(&one_form, &g).unwrap().contraction_k();
        assert_eq!(k_then_avg, avg_then_k);
    }

    #[test]
    fn circle_average_agrees_with_z2_average_for_even_weights() {
        // Weight (2) restricted to the angle 1/2 subgroup acts as -I on the
        // block; averaging over the circle is finer, but both agree on the
        // weight-0 part of r^2.
        let action = CircleWeightAction::new(vec![2], 0).unwrap();
        let r2 = PolyForm::term(2, vec![2, 0], vec![], rat(1))
            .add(&PolyForm::term(2, vec![0, 2], vec![], rat(1)));
        assert_eq!(reynolds_circle(&r2, &action).unwrap(), r2);
    }
}
