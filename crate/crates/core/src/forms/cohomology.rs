//! Bounded-degree basic cohomology of a linear model: the complex of
//! invariant horizontal polynomial forms, sliced by homogeneous coefficient
//! degree, with exact rational rank computations.
//!
//! The differential lowers coefficient degree by one, so with a budget `D`
//! on coefficient degree the kernel is complete for degrees up to `D - 1`
//! while images are complete from degree up to `D`. Betti numbers are
//! therefore reported over the kernel window `p <= D - 1`; coefficient
//! degree `D` itself is the truncation boundary.

use std::collections::BTreeMap;

use super::{
    fundamental_field, reynolds_circle, reynolds_finite, Coeff, PolyForm, TermKey,
};
use crate::error::FormsError;
use crate::linalg::{Rational, RationalSubspace};
use crate::strata::LinearAction;

/// Dimensions of the basic complex in one form degree, per coefficient
/// degree `0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicComplexDims {
    pub form_degree: usize,
    pub dims_by_coeff_degree: Vec<usize>,
}

/// Basic cohomology of a linear model at a coefficient-degree budget.
#[derive(Clone, Debug)]
pub struct BasicCohomology {
    pub max_poly_degree: u32,
    /// Reliable Betti number per form degree `0..=n` (kernel window
    /// `p <= max_poly_degree - 1`).
    pub betti: Vec<usize>,
    /// Coefficient degrees above this bound are truncated away.
    pub reliable_coeff_degree: u32,
    pub complex_dims: Vec<BasicComplexDims>,
}

/// Compute the basic cohomology of the linear model, with coefficient
/// degrees capped at `max_poly_degree >= 1`.
pub fn basic_cohomology(
    action: &LinearAction,
    max_poly_degree: u32,
) -> Result<BasicCohomology, FormsError> {
    assert!(max_poly_degree >= 1, "degree budget must be at least 1");
    let n = action.ambient_dim();
    let d_budget = max_poly_degree as usize;

    // basic_bases[k][p]: a basis of the invariant horizontal forms of form
    // degree k and homogeneous coefficient degree p.
    let mut basic_bases: Vec<Vec<Vec<PolyForm>>> = Vec::with_capacity(n + 2);
    for k in 0..=n {
        let mut per_degree = Vec::with_capacity(d_budget + 1);
        for p in 0..=d_budget {
            per_degree.push(basic_basis(action, k, p as u32)?);
        }
        basic_bases.push(per_degree);
    }

    // rank_d[k][p]: rank of d restricted to the (k, p) basic slice.
    let mut rank_d: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut per_degree = Vec::with_capacity(d_budget + 1);
        for p in 0..=d_budget {
            let images: Vec<PolyForm> = basic_bases[k][p].iter().map(|b| b.d()).collect();
            per_degree.push(rank_of_forms(&images, n, k + 1, p.saturating_sub(1) as u32));
        }
        rank_d.push(per_degree);
    }

    let mut betti = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut kernel_dim = 0usize;
        for p in 0..d_budget {
            kernel_dim += basic_bases[k][p].len() - rank_d[k][p];
        }
        let mut image_dim = 0usize;
        if k >= 1 {
            for p in 1..=d_budget {
                image_dim += rank_d[k - 1][p];
            }
        }
        betti.push(kernel_dim - image_dim);
    }

    let complex_dims = (0..=n)
        .map(|k| BasicComplexDims {
            form_degree: k,
            dims_by_coeff_degree: (0..=d_budget).map(|p| basic_bases[k][p].len()).collect(),
        })
        .collect();

    Ok(BasicCohomology {
        max_poly_degree,
        betti,
        reliable_coeff_degree: max_poly_degree - 1,
        complex_dims,
    })
}

/// All term keys of form degree `k` and exact coefficient degree `p`.
fn slice_keys(n: usize, k: usize, p: u32) -> Vec<TermKey> {
    let monomials = monomials_of_degree(n, p);
    let index_sets = combinations(n, k);
    let mut keys = Vec::with_capacity(monomials.len() * index_sets.len());
    for exps in &monomials {
        for idx in &index_sets {
            keys.push(TermKey { exps: exps.clone(), idx: idx.clone() });
        }
    }
    keys.sort();
    keys
}

fn monomials_of_degree(n: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fn go(i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == current.len() {
            current[i] = remaining;
            out.push(current.clone());
            return;
        }
        for v in 0..=remaining {
            current[i] = v;
            go(i + 1, remaining - v, current, out);
        }
    }
    if n == 0 {
        if p == 0 {
            out.push(vec![]);
        }
        return out;
    }
    go(0, p, &mut current, &mut out);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i as u8);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

fn form_to_vector(form: &PolyForm, index: &BTreeMap<TermKey, usize>, len: usize) -> Vec<Rational> {
    let mut v = vec![<Rational as Coeff>::zero(); len];
    for (key, c) in form.terms() {
        let slot = index
            .get(key)
            .expect("form stays inside its homogeneous slice");
        v[*slot] = c.clone();
    }
    v
}

/// Basis of the invariant horizontal forms of one homogeneous slice.
fn basic_basis(action: &LinearAction, k: usize, p: u32) -> Result<Vec<PolyForm>, FormsError> {
    let n = action.ambient_dim();
    if k > n {
        return Ok(Vec::new());
    }
    let keys = slice_keys(n, k, p);
    if keys.is_empty() {
        return Ok(Vec::new());
    }
    let index: BTreeMap<TermKey, usize> =
        keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    // Invariant subspace: the image of the averaging projector.
    let mut image_rows: Vec<Vec<Rational>> = Vec::new();
    for key in &keys {
        let basis_form = PolyForm::term(n, key.exps.clone(), key.idx.clone(), Coeff::one());
        let averaged = match action {
            LinearAction::Finite(group) => reynolds_finite(&basis_form, group)?,
            LinearAction::Circle(circle) => reynolds_circle(&basis_form, circle)?,
        };
        if !averaged.is_zero() {
            image_rows.push(form_to_vector(&averaged, &index, keys.len()));
        }
    }
    let invariant = RationalSubspace::canonicalize(keys.len(), &image_rows)
        .expect("projector images share the slice dimension");
    let invariant_forms: Vec<PolyForm> = invariant
        .basis()
        .iter()
        .map(|row| vector_to_form(row, &keys, n, k))
        .collect();

    match action {
        LinearAction::Finite(_) => Ok(invariant_forms),
        LinearAction::Circle(circle) => {
            if k == 0 {
                return Ok(invariant_forms);
            }
            // Horizontal combinations: kernel of the contraction with the
            // fundamental field, which maps into the (k-1, p+1) slice.
            let xi = fundamental_field(circle);
            let target_keys = slice_keys(n, k - 1, p + 1);
            let target_index: BTreeMap<TermKey, usize> = target_keys
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, k)| (k, i))
                .collect();
            let rows: Vec<Vec<Rational>> = invariant_forms
                .iter()
                .map(|f| {
                    form_to_vector(
                        &f.contract_with_field(&xi),
                        &target_index,
                        target_keys.len(),
                    )
                })
                .collect();
            // Kernel of the matrix whose columns are the contraction images.
            let cols = invariant_forms.len();
            let target_len = target_keys.len().max(1);
            let mut transposed =
                crate::linalg::RationalMatrix::zero(target_len, cols);
            for (c, row) in rows.iter().enumerate() {
                for (r, val) in row.iter().enumerate() {
                    *transposed.at_mut(r, c) = val.clone();
                }
            }
            let kernel = RationalSubspace::kernel(&transposed);
            let mut out = Vec::with_capacity(kernel.dim());
            for combo in kernel.basis() {
                let mut form = PolyForm::zero(n, k);
                for (c, f) in combo.iter().zip(invariant_forms.iter()) {
                    if !Coeff::is_zero(c) {
                        form = form.add(&f.scale(c));
                    }
                }
                out.push(form);
            }
            Ok(out)
        }
    }
}

fn vector_to_form(row: &[Rational], keys: &[TermKey], n: usize, k: usize) -> PolyForm {
    let mut form = PolyForm::zero(n, k);
    for (slot, coeff) in row.iter().enumerate() {
        if !Coeff::is_zero(coeff) {
            form = form.add(&PolyForm::term(
                n,
                keys[slot].exps.clone(),
                keys[slot].idx.clone(),
                coeff.clone(),
            ));
        }
    }
    form
}

/// Rank of a family of forms inside the homogeneous slice (k, p).
fn rank_of_forms(forms: &[PolyForm], n: usize, k: usize, p: u32) -> usize {
    if forms.iter().all(|f| f.is_zero()) || k > n {
        return 0;
    }
    let keys = slice_keys(n, k, p);
    let index: BTreeMap<TermKey, usize> =
        keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let rows: Vec<Vec<Rational>> = forms
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| form_to_vector(f, &index, keys.len()))
        .collect();
    RationalSubspace::canonicalize(keys.len(), &rows)
        .expect("images share the slice dimension")
        .dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CircleWeightAction, FiniteMatrixGroup};
    use crate::linalg::RationalMatrix;

    #[test]
    fn z2_on_line_is_acyclic() {
        let g = FiniteMatrixGroup::close_generators(
            &[RationalMatrix::from_int_rows(&[&[-1]])],
            4,
        )
        .unwrap();
        let result = basic_cohomology(&LinearAction::Finite(g), 6).unwrap();
        assert_eq!(result.betti, vec![1, 0]);
    }

    #[test]
    fn trivial_group_on_line_is_poincare() {
        let g = FiniteMatrixGroup::trivial(1);
        let result = basic_cohomology(&LinearAction::Finite(g), 4).unwrap();
        assert_eq!(result.betti, vec![1, 0]);
    }

    #[test]
    fn circle_weight_one_is_acyclic() {
        let action = CircleWeightAction::new(vec![1], 0).unwrap();
        let result = basic_cohomology(&LinearAction::Circle(action), 5).unwrap();
        assert_eq!(result.betti, vec![1, 0, 0]);
    }

    #[test]
    fn degree_zero_betti_is_one() {
        let r = RationalMatrix::from_int_rows(&[&[0, -1], &[1, -1]]);
        let t = RationalMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let s3 = FiniteMatrixGroup::close_generators(&[r, t], 48).unwrap();
        let result = basic_cohomology(&LinearAction::Finite(s3), 5).unwrap();
        assert_eq!(result.betti[0], 1);
        assert!(result.betti[1..].iter().all(|&b| b == 0));
    }

    #[test]
    fn complex_dims_track_invariants() {
        // Z/2 on the line: invariant 0-forms are spanned by even powers.
        let g = FiniteMatrixGroup::close_generators(
            &[RationalMatrix::from_int_rows(&[&[-1]])],
            4,
        )
        .unwrap();
        let result = basic_cohomology(&LinearAction::Finite(g), 4).unwrap();
        let zero_forms = &result.complex_dims[0];
        assert_eq!(zero_forms.dims_by_coeff_degree, vec![1, 0, 1, 0, 1]);
    }
}
