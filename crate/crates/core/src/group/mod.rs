//! Finite matrix groups over `Q` and circle-weight actions: closure from
//! generators, centralizers, normalizers, cyclic (Cartan) subgroups,
//! conjugacy classes, and fixed subspaces.

pub mod circle;

pub use circle::{Angle, CircleSubgroup, CircleWeightAction};

use std::collections::HashMap;

use crate::error::GroupError;
use crate::linalg::{RationalMatrix, RationalSubspace};

/// Default cap on the order of a closed matrix group.
pub const DEFAULT_ORDER_CAP: usize = 384;

/// A finite group of invertible rational matrices, stored as an explicit
/// element list with multiplication and inverse tables. Index 0 is the
/// identity; the element order is the BFS-from-identity order with a
/// lexicographic tie-break inside each BFS layer, so it is reproducible.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<RationalMatrix>,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteMatrixGroup {
    /// Close a generating set into a group, BFS order, erroring out once
    /// more than `cap` elements appear.
    pub fn close_generators(gens: &[RationalMatrix], cap: usize) -> Result<Self, GroupError> {
        let dim = gens.first().map_or(0, |g| g.rows());
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::GeneratorDimension {
                    index,
                    expected: dim,
                    got: g.rows(),
                });
            }
            if !g.is_invertible() {
                return Err(GroupError::NonInvertibleGenerator { index });
            }
        }
        let identity = RationalMatrix::identity(dim);
        let mut elements = vec![identity.clone()];
        let mut index_of: HashMap<Vec<crate::linalg::Rational>, usize> = HashMap::new();
        index_of.insert(identity.entries().to_vec(), 0);

        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut layer: Vec<RationalMatrix> = Vec::new();
            for &i in &frontier {
                for g in gens {
                    let prod = elements[i].mul(g);
                    if !index_of.contains_key(prod.entries()) {
                        if !layer.iter().any(|m| m == &prod) {
                            layer.push(prod);
                        }
                    }
                }
            }
            layer.sort_by(|a, b| a.entries().cmp(b.entries()));
            frontier = Vec::new();
            for m in layer {
                if elements.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                let idx = elements.len();
                index_of.insert(m.entries().to_vec(), idx);
                elements.push(m);
                frontier.push(idx);
            }
        }

        let order = elements.len();
        let mut mul = vec![0usize; order * order];
        for i in 0..order {
            for j in 0..order {
                let prod = elements[i].mul(&elements[j]);
                let k = *index_of
                    .get(prod.entries())
                    .expect("closed set is closed under multiplication");
                mul[i * order + j] = k;
            }
        }
        let mut inv = vec![0usize; order];
        for i in 0..order {
            let j = (0..order)
                .find(|&j| mul[i * order + j] == 0)
                .expect("finite cancellative monoid is a group");
            inv[i] = j;
        }
        Ok(Self { dim, elements, mul, inv })
    }

    /// The trivial group in the given dimension.
    pub fn trivial(dim: usize) -> Self {
        Self::close_generators(&[RationalMatrix::identity(dim)], 2)
            .expect("identity closes to the trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element(&self, i: usize) -> &RationalMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.elements
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order() + j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// g h g^{-1}
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = i;
        let mut n = 1;
        while k != 0 {
            k = self.mul(k, i);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn check_index(&self, i: usize) -> Result<(), GroupError> {
        if i < self.order() {
            Ok(())
        } else {
            Err(GroupError::BadElementIndex { index: i, order: self.order() })
        }
    }

    /// Smallest subgroup containing the given elements.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for &g in gens {
                let j = self.mul(i, g);
                if !members[j] {
                    members[j] = true;
                    stack.push(j);
                }
            }
        }
        Subgroup::from_mask(&members)
    }

    /// Centralizer of element `h` inside the whole group.
    pub fn centralizer(&self, h: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| self.mul(g, h) == self.mul(h, g))
            .collect();
        Subgroup { members }
    }

    /// Normalizer of a subgroup: elements whose conjugation preserves it.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| {
                let mut conj: Vec<usize> = s.members.iter().map(|&h| self.conjugate(g, h)).collect();
                conj.sort_unstable();
                conj == s.members
            })
            .collect();
        Subgroup { members }
    }

    /// The Cartan subgroup associated to `h`: for a finite group the
    /// cyclic subgroup generated by `h`.
    pub fn cartan_associated(&self, h: usize) -> Subgroup {
        self.subgroup_generated(&[h])
    }

    /// Conjugacy classes, each sorted, listed by least representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for h in 0..n {
            if seen[h] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &k in &class {
                seen[k] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Index of the conjugacy class of `h` in `conjugacy_classes()` order.
    pub fn class_of(&self, classes: &[Vec<usize>], h: usize) -> usize {
        classes
            .iter()
            .position(|c| c.binary_search(&h).is_ok())
            .expect("classes partition the group")
    }

    /// ker(rho(g) - I), the fixed subspace of a single element.
    pub fn fixed_subspace(&self, g: usize) -> RationalSubspace {
        let m = self.elements[g].sub(&RationalMatrix::identity(self.dim));
        RationalSubspace::kernel(&m)
    }

    /// Common fixed subspace of a set of elements.
    pub fn fixed_subspace_of_set(&self, members: &[usize]) -> RationalSubspace {
        let mut space = RationalSubspace::full(self.dim);
        for &g in members {
            space = space
                .intersect(&self.fixed_subspace(g))
                .expect("same ambient dimension");
        }
        space
    }

    /// Stabilizer of a point under the linear action.
    pub fn stabilizer_of_point(&self, v: &[crate::linalg::Rational]) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| self.elements[g].mul_vec(v) == v)
            .collect();
        Subgroup { members }
    }

    /// Image of a subgroup under conjugation by `g`, sorted.
    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        let mut members: Vec<usize> = s.members.iter().map(|&h| self.conjugate(g, h)).collect();
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        if members.binary_search(&0).is_err() {
            return false;
        }
        members.iter().all(|&a| {
            members.binary_search(&self.inv(a)).is_ok()
                && members
                    .iter()
                    .all(|&b| members.binary_search(&self.mul(a, b)).is_ok())
        })
    }
}

/// A subgroup of a `FiniteMatrixGroup`, stored as a sorted set of element
/// indices into the parent. The parent is passed explicitly to the
/// operations that need the tables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &FiniteMatrixGroup, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if !parent.is_subgroup(&members) {
            return Err(GroupError::NotASubgroup {
                reason: "not closed under multiplication and inverse, or missing identity".into(),
            });
        }
        Ok(Self { members })
    }

    pub fn trivial() -> Self {
        Self { members: vec![0] }
    }

    pub fn whole(parent: &FiniteMatrixGroup) -> Self {
        Self { members: (0..parent.order()).collect() }
    }

    fn from_mask(mask: &[bool]) -> Self {
        Self {
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    pub fn is_abelian(&self, parent: &FiniteMatrixGroup) -> bool {
        self.members.iter().all(|&a| {
            self.members
                .iter()
                .all(|&b| parent.mul(a, b) == parent.mul(b, a))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    pub fn rotation90() -> RationalMatrix {
        RationalMatrix::from_int_rows(&[&[0, -1], &[1, 0]])
    }

    /// Standard 2-dimensional representation of S3 with integer matrices:
    /// a 3-cycle and a transposition acting on the plane.
    pub fn s3_standard() -> FiniteMatrixGroup {
        let r = RationalMatrix::from_int_rows(&[&[0, -1], &[1, -1]]);
        let t = RationalMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        FiniteMatrixGroup::close_generators(&[r, t], 48).unwrap()
    }

    #[test]
    fn closure_of_rotation_is_cyclic_of_order_four() {
        // Hand multiplication oracle: r, r^2 = -I, r^3 = -r, r^4 = I.
        let g = FiniteMatrixGroup::close_generators(&[rotation90()], 16).unwrap();
        assert_eq!(g.order(), 4);
        let r = 1;
        assert_eq!(g.element_order(r), 4);
        let r2 = g.mul(r, r);
        assert_eq!(
            g.element(r2),
            &RationalMatrix::from_int_rows(&[&[-1, 0], &[0, -1]])
        );
        assert_eq!(g.mul(r2, r2), 0);
    }

    #[test]
    fn closure_of_empty_generators_is_trivial() {
        let g = FiniteMatrixGroup::close_generators(&[], 4);
        // No generators means no dimension; use the explicit constructor.
        assert!(g.is_ok());
        assert_eq!(g.unwrap().order(), 1);
        assert_eq!(FiniteMatrixGroup::trivial(3).order(), 1);
    }

    #[test]
    fn closure_of_permutation_generators_is_s3() {
        // Brute-force closure oracle: transposition and 3-cycle generate S3.
        let transposition =
            RationalMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let cycle = RationalMatrix::from_int_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let g = FiniteMatrixGroup::close_generators(&[transposition, cycle], 48).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn cap_exceeded_reports_error() {
        let err = FiniteMatrixGroup::close_generators(&[rotation90()], 3).unwrap_err();
        assert_eq!(err, GroupError::CapExceeded { cap: 3 });
    }

    #[test]
    fn shear_generator_overflows_any_cap() {
        let shear = RationalMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        let err = FiniteMatrixGroup::close_generators(&[shear], 64).unwrap_err();
        assert!(matches!(err, GroupError::CapExceeded { .. }));
    }

    #[test]
    fn non_invertible_generator_rejected() {
        let zero = RationalMatrix::zero(2, 2);
        assert!(matches!(
            FiniteMatrixGroup::close_generators(&[zero], 4),
            Err(GroupError::NonInvertibleGenerator { index: 0 })
        ));
    }

    #[test]
    fn centralizer_cases() {
        let s3 = s3_standard();
        assert_eq!(s3.centralizer(0).order(), 6);
        // Brute force over 6 elements: a transposition has centralizer of order 2.
        let tau = (1..6).find(|&i| s3.element_order(i) == 2).unwrap();
        assert_eq!(s3.centralizer(tau).order(), 2);
        let z4 = FiniteMatrixGroup::close_generators(&[rotation90()], 16).unwrap();
        for h in 0..4 {
            assert_eq!(z4.centralizer(h).order(), 4);
        }
    }

    #[test]
    fn normalizer_cases() {
        let s3 = s3_standard();
        assert_eq!(s3.normalizer(&Subgroup::trivial()).order(), 6);
        let tau = (1..6).find(|&i| s3.element_order(i) == 2).unwrap();
        let tau_grp = s3.subgroup_generated(&[tau]);
        assert_eq!(s3.normalizer(&tau_grp), tau_grp);
        let rho = (1..6).find(|&i| s3.element_order(i) == 3).unwrap();
        let rho_grp = s3.subgroup_generated(&[rho]);
        assert_eq!(s3.normalizer(&rho_grp).order(), 6);
    }

    #[test]
    fn cartan_associated_is_cyclic_generation() {
        let z4 = FiniteMatrixGroup::close_generators(&[rotation90()], 16).unwrap();
        assert_eq!(z4.cartan_associated(0).order(), 1);
        let r = 1;
        assert_eq!(z4.cartan_associated(r).order(), 4);
        let r2 = z4.mul(r, r);
        let c = z4.cartan_associated(r2);
        assert_eq!(c.members, vec![0, r2]);
        // Abelian, contains h, and is exactly the set of powers.
        assert!(c.is_abelian(&z4));
        assert!(c.contains(r2));
        let mut powers = vec![0, r2];
        powers.sort_unstable();
        assert_eq!(c.members, powers);
    }

    #[test]
    fn fixed_subspace_cases() {
        let refl = RationalMatrix::from_int_rows(&[&[-1, 0], &[0, 1]]);
        let g = FiniteMatrixGroup::close_generators(&[refl], 4).unwrap();
        let fix = g.fixed_subspace(1);
        assert_eq!(fix.dim(), 1);
        assert!(fix.contains_point(&[rat(0), rat(1)]).unwrap());

        let z4 = FiniteMatrixGroup::close_generators(&[rotation90()], 16).unwrap();
        assert!(z4.fixed_subspace(1).is_zero());
    }

    #[test]
    fn conjugacy_classes_cases() {
        let z4 = FiniteMatrixGroup::close_generators(&[rotation90()], 16).unwrap();
        assert_eq!(z4.conjugacy_classes().len(), 4);

        let s3 = s3_standard();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn fixed_subspace_transport_under_conjugation() {
        let s3 = s3_standard();
        for g in 0..s3.order() {
            for h in 0..s3.order() {
                let lhs = s3.fixed_subspace(s3.conjugate(g, h));
                let rhs = s3.fixed_subspace(h).apply(s3.element(g));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn fixed_space_of_generated_subgroup_matches_generator_intersection() {
        let s3 = s3_standard();
        for g in 0..s3.order() {
            for h in 0..s3.order() {
                let sub = s3.subgroup_generated(&[g, h]);
                let by_members = s3.fixed_subspace_of_set(&sub.members);
                let by_gens = s3
                    .fixed_subspace(g)
                    .intersect(&s3.fixed_subspace(h))
                    .unwrap();
                assert_eq!(by_members, by_gens);
            }
        }
    }

    #[test]
    fn centralizer_and_normalizer_are_subgroups() {
        let s3 = s3_standard();
        for h in 0..s3.order() {
            assert!(s3.is_subgroup(&s3.centralizer(h).members));
            let c = s3.cartan_associated(h);
            assert!(s3.is_subgroup(&s3.normalizer(&c).members));
        }
    }
}
