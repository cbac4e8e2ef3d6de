//! Central hyperplane arrangements: intersection posets, Moebius values,
//! and exact region counts.
//!
//! The region count of a central arrangement is the sum of absolute Moebius
//! values over the intersection poset. Removing subspaces of codimension
//! two or higher does not disconnect an open set, so component counting of
//! stratum pieces reduces to the hyperplane sub-collection.

use num::Zero;

use crate::linalg::{Rational, RationalMatrix, RationalSubspace};

/// Cap on the intersection poset size before a count is abandoned.
pub const DEFAULT_POSET_CAP: usize = 4096;

/// A hyperplane through the origin in `Q^d`, stored as a sign-normalized
/// normal vector (first nonzero coordinate positive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(mut normal: Vec<Rational>) -> Self {
        let lead = normal
            .iter()
            .position(|x| !x.is_zero())
            .expect("hyperplane normal must be nonzero");
        if normal[lead] < Rational::zero() {
            for x in &mut normal {
                *x = -x.clone();
            }
        }
        // Scale so the leading entry is 1; keeps representations canonical.
        let inv = normal[lead].clone().recip();
        for x in &mut normal {
            *x *= &inv;
        }
        Self { normal }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn as_subspace(&self) -> RationalSubspace {
        let m = RationalMatrix::new(1, self.normal.len(), self.normal.clone());
        RationalSubspace::kernel(&m)
    }
}

/// Number of open regions of the central arrangement with the given
/// normals in `Q^d`, or `None` if the intersection poset exceeds `cap`.
pub fn region_count(normals: &[Hyperplane], dim: usize, cap: usize) -> Option<usize> {
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    for h in normals {
        assert_eq!(h.dim(), dim, "normal dimension mismatch");
        if !hyperplanes.contains(h) {
            hyperplanes.push(h.clone());
        }
    }
    if hyperplanes.is_empty() {
        return Some(1);
    }
    let subspaces: Vec<RationalSubspace> = hyperplanes.iter().map(|h| h.as_subspace()).collect();

    // Intersection poset: all intersections of subsets, ordered by reverse
    // inclusion; index 0 is the whole space.
    let mut poset: Vec<RationalSubspace> = vec![RationalSubspace::full(dim)];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        let current = poset[i].clone();
        for s in &subspaces {
            let meet = current.intersect(s).expect("same ambient dimension");
            if meet.dim() == current.dim() {
                continue; // current already inside the hyperplane
            }
            if !poset.contains(&meet) {
                if poset.len() >= cap {
                    return None;
                }
                poset.push(meet);
                frontier.push(poset.len() - 1);
            }
        }
    }

    // Moebius values mu(whole, X) by recursion over the interval below X.
    let n = poset.len();
    let mut mu: Vec<Option<i64>> = vec![None; n];
    mu[0] = Some(1);
    // Sort indices by decreasing dimension so predecessors are done first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(poset[i].dim()));
    for &i in &order {
        if mu[i].is_some() {
            continue;
        }
        let mut acc: i64 = 0;
        for &j in &order {
            if j != i && poset[j].contains_subspace(&poset[i]) {
                acc += mu[j].expect("larger elements computed first");
            }
        }
        mu[i] = Some(-acc);
    }
    Some(mu.iter().map(|m| m.expect("all computed").unsigned_abs() as usize).sum())
}

/// Express a hyperplane of the subspace `w` (a codimension-one subspace
/// `e` of `w`, given in ambient coordinates) as a normal vector in the
/// basis coordinates of `w`. Returns `None` if `e` is not a hyperplane
/// of `w`.
pub fn hyperplane_in_coordinates(
    w: &RationalSubspace,
    e: &RationalSubspace,
) -> Option<Hyperplane> {
    if e.dim() + 1 != w.dim() {
        return None;
    }
    let rows: Vec<Vec<Rational>> = e
        .basis()
        .iter()
        .map(|v| w.coordinates_of(v))
        .collect::<Option<Vec<_>>>()?;
    let d = w.dim();
    let m = RationalMatrix::new(rows.len(), d, rows.into_iter().flatten().collect());
    // The row space of `m` is (d-1)-dimensional, so the direction orthogonal
    // to all rows is unique up to sign.
    let normal_space = RationalSubspace::kernel(&m);
    if normal_space.dim() != 1 {
        return None;
    }
    Some(Hyperplane::new(normal_space.basis()[0].clone()))
}

/// Count the components of `support \ union(excluded)`: only the
/// codimension-one members of `excluded` matter.
pub fn component_count(
    support: &RationalSubspace,
    excluded: &[RationalSubspace],
    cap: usize,
) -> Option<usize> {
    if support.dim() == 0 {
        return Some(1);
    }
    let mut normals = Vec::new();
    for e in excluded {
        if e.dim() + 1 == support.dim() {
            let h = hyperplane_in_coordinates(support, e)
                .expect("codimension-one excluded subspace is a hyperplane of the support");
            if !normals.contains(&h) {
                normals.push(h);
            }
        }
    }
    region_count(&normals, support.dim(), cap)
}

/// Fixed components of the piece `support \ union(excluded)` under a linear
/// automorphism `g` of finite order preserving the piece: equal to the
/// number of regions of the induced arrangement on the fixed subspace of
/// `g` within the support, and zero when that fixed subspace lies inside
/// one of the hyperplanes.
pub fn fixed_component_count(
    support: &RationalSubspace,
    excluded: &[RationalSubspace],
    fixed_in_support: &RationalSubspace,
    cap: usize,
) -> Option<usize> {
    let hyperplanes: Vec<&RationalSubspace> = excluded
        .iter()
        .filter(|e| e.dim() + 1 == support.dim())
        .collect();
    // Hyperplanes of the induced arrangement on W' = fixed_in_support.
    let mut normals = Vec::new();
    for e in hyperplanes {
        let meet = fixed_in_support.intersect(e).expect("same ambient dimension");
        if meet.dim() == fixed_in_support.dim() {
            return Some(0); // W' lies inside a removed hyperplane
        }
        if meet.dim() + 1 == fixed_in_support.dim() {
            let h = hyperplane_in_coordinates(fixed_in_support, &meet)
                .expect("codimension-one intersection");
            if !normals.contains(&h) {
                normals.push(h);
            }
        }
    }
    if fixed_in_support.dim() == 0 {
        return Some(1);
    }
    region_count(&normals, fixed_in_support.dim(), cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn hp(coords: &[i64]) -> Hyperplane {
        Hyperplane::new(coords.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn line_minus_origin_has_two_regions() {
        assert_eq!(region_count(&[hp(&[1])], 1, 64), Some(2));
    }

    #[test]
    fn empty_arrangement_has_one_region() {
        assert_eq!(region_count(&[], 3, 64), Some(1));
    }

    #[test]
    fn three_concurrent_lines_give_six_chambers() {
        // Sign-vector oracle: the three lines x=0, y=0, x=y cut the plane
        // into 6 chambers.
        let normals = vec![hp(&[1, 0]), hp(&[0, 1]), hp(&[1, -1])];
        assert_eq!(region_count(&normals, 2, 64), Some(6));
    }

    #[test]
    fn repeated_hyperplane_deduplicates() {
        let normals = vec![hp(&[1, 0]), hp(&[2, 0]), hp(&[-1, 0])];
        assert_eq!(region_count(&normals, 2, 64), Some(2));
    }

    #[test]
    fn generic_three_planes_in_three_space() {
        // Coordinate planes: 8 octants.
        let normals = vec![hp(&[1, 0, 0]), hp(&[0, 1, 0]), hp(&[0, 0, 1])];
        assert_eq!(region_count(&normals, 3, 64), Some(8));
    }

    #[test]
    fn component_count_ignores_deep_excluded() {
        // Q^2 minus the origin stays connected.
        let support = RationalSubspace::full(2);
        let origin = RationalSubspace::zero(2);
        assert_eq!(component_count(&support, &[origin], 64), Some(1));
    }

    #[test]
    fn component_count_of_punctured_line() {
        let support = RationalSubspace::full(1);
        let origin = RationalSubspace::zero(1);
        assert_eq!(component_count(&support, &[origin], 64), Some(2));
    }

    #[test]
    fn poset_cap_returns_unknown() {
        let normals = vec![hp(&[1, 0]), hp(&[0, 1]), hp(&[1, 1]), hp(&[1, -1])];
        assert_eq!(region_count(&normals, 2, 2), None);
    }
}
