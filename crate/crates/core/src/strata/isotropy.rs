//! Isotropy lattices of linear actions: every isotropy subgroup with its
//! fixed subspace, the strictly larger fixed spaces it must exclude, and a
//! rational witness point of exact isotropy type.

use num::Zero;

use crate::error::StrataError;
use crate::group::{CircleSubgroup, CircleWeightAction, FiniteMatrixGroup, Subgroup};
use crate::linalg::{rational_by_height, Rational, RationalSubspace};

/// An isotropy type of a linear action: the subgroup `K`, its fixed space
/// `V^K`, the fixed spaces of strictly larger isotropy groups contained in
/// it, and a witness point whose isotropy is exactly `K`.
#[derive(Clone, Debug)]
pub struct IsotropyStratum<K> {
    pub subgroup: K,
    pub fixed_space: RationalSubspace,
    pub excluded: Vec<RationalSubspace>,
    pub witness: Vec<Rational>,
}

pub type FiniteIsotropyStratum = IsotropyStratum<Subgroup>;
pub type CircleIsotropyStratum = IsotropyStratum<CircleSubgroup>;

/// All isotropy subgroups of a finite linear action.
///
/// Algorithm: close the fixed spaces of single elements under intersection;
/// for each subspace `W` of the resulting meet-semilattice take
/// `H(W) = {g : W <= V^g}`; the isotropy groups are exactly those `H(W)`
/// with `V^{H(W)} = W`. Entries are sorted by decreasing fixed-space
/// dimension, then by member list.
pub fn isotropy_lattice_finite(
    group: &FiniteMatrixGroup,
) -> Result<Vec<FiniteIsotropyStratum>, StrataError> {
    let fixed: Vec<RationalSubspace> =
        (0..group.order()).map(|g| group.fixed_subspace(g)).collect();

    let mut semilattice: Vec<RationalSubspace> = Vec::new();
    for f in &fixed {
        if !semilattice.contains(f) {
            semilattice.push(f.clone());
        }
    }
    let mut frontier: Vec<RationalSubspace> = semilattice.clone();
    while let Some(w) = frontier.pop() {
        for f in &fixed {
            let meet = w.intersect(f)?;
            if !semilattice.contains(&meet) {
                semilattice.push(meet.clone());
                frontier.push(meet);
            }
        }
    }

    let mut entries: Vec<(Subgroup, RationalSubspace)> = Vec::new();
    for w in &semilattice {
        let members: Vec<usize> = (0..group.order())
            .filter(|&g| fixed[g].contains_subspace(w))
            .collect();
        let k = Subgroup { members };
        let vk = group.fixed_subspace_of_set(&k.members);
        if &vk == w {
            entries.push((k, w.clone()));
        }
    }
    entries.sort_by(|a, b| {
        b.1.dim()
            .cmp(&a.1.dim())
            .then_with(|| a.0.members.cmp(&b.0.members))
    });

    let mut out = Vec::with_capacity(entries.len());
    for (k, w) in &entries {
        let excluded: Vec<RationalSubspace> = entries
            .iter()
            .filter(|(k2, w2)| k2 != k && w.contains_subspace(w2))
            .map(|(_, w2)| w2.clone())
            .collect();
        debug_assert!(excluded.iter().all(|e| e.dim() < w.dim()));
        let witness = witness_point(w, &excluded);
        out.push(IsotropyStratum {
            subgroup: k.clone(),
            fixed_space: w.clone(),
            excluded,
            witness,
        });
    }
    Ok(out)
}

/// All isotropy types of a circle-weight action: the realized finite
/// cyclic groups on the nonzero part, and the full circle on its fixed
/// subspace. Entries sorted by decreasing fixed-space dimension with the
/// full circle last.
pub fn isotropy_lattice_circle(action: &CircleWeightAction) -> Vec<CircleIsotropyStratum> {
    let mut entries: Vec<(CircleSubgroup, RationalSubspace)> = action
        .realized_cyclic_isotropies()
        .into_iter()
        .map(|m| (CircleSubgroup::Cyclic(m), action.fixed_subspace_of_cyclic(m)))
        .collect();
    entries.sort_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.0.cmp(&b.0)));
    entries.push((CircleSubgroup::Full, action.fixed_subspace_of_circle()));

    let spaces: Vec<RationalSubspace> = entries.iter().map(|(_, w)| w.clone()).collect();
    entries
        .iter()
        .map(|(k, w)| {
            let excluded: Vec<RationalSubspace> = spaces
                .iter()
                .filter(|w2| *w2 != w && w.contains_subspace(w2))
                .cloned()
                .collect();
            let witness = witness_point(w, &excluded);
            IsotropyStratum {
                subgroup: k.clone(),
                fixed_space: w.clone(),
                excluded,
                witness,
            }
        })
        .collect()
}

/// Deterministic rational witness inside `support` avoiding every excluded
/// subspace: the first point, in a height-ordered grid of basis
/// coefficients with denominators up to 7, lying off all of them.
pub fn witness_point(support: &RationalSubspace, excluded: &[RationalSubspace]) -> Vec<Rational> {
    let d = support.dim();
    if d == 0 {
        return vec![Rational::zero(); support.ambient_dim()];
    }
    let palette = rational_by_height(7);
    let mut coords = vec![0usize; d];
    loop {
        let point: Vec<Rational> = support.point_from_coordinates(
            &coords.iter().map(|&i| palette[i].clone()).collect::<Vec<_>>(),
        );
        let clear = excluded
            .iter()
            .all(|e| !e.contains_point(&point).expect("ambient dims match"));
        if clear {
            return point;
        }
        // Advance the mixed-radix counter over the palette.
        let mut i = 0;
        loop {
            coords[i] += 1;
            if coords[i] < palette.len() {
                break;
            }
            coords[i] = 0;
            i += 1;
            assert!(i < d, "witness grid exhausted; excluded spaces cannot cover the support");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, RationalMatrix};

    #[test]
    fn z2_on_line_has_two_isotropy_types() {
        let g = FiniteMatrixGroup::close_generators(
            &[RationalMatrix::from_int_rows(&[&[-1]])],
            4,
        )
        .unwrap();
        let lattice = isotropy_lattice_finite(&g).unwrap();
        assert_eq!(lattice.len(), 2);
        // Trivial isotropy on the punctured line.
        assert_eq!(lattice[0].subgroup.order(), 1);
        assert_eq!(lattice[0].fixed_space.dim(), 1);
        assert_eq!(lattice[0].excluded.len(), 1);
        assert!(!lattice[0].witness.iter().all(|x| x.is_zero()));
        // Full group at the origin.
        assert_eq!(lattice[1].subgroup.order(), 2);
        assert_eq!(lattice[1].fixed_space.dim(), 0);
        assert!(lattice[1].excluded.is_empty());
    }

    #[test]
    fn s3_standard_has_five_isotropy_types() {
        // Brute-force expectation: trivial, three reflection lines, full at 0.
        let r = RationalMatrix::from_int_rows(&[&[0, -1], &[1, -1]]);
        let t = RationalMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let g = FiniteMatrixGroup::close_generators(&[r, t], 48).unwrap();
        let lattice = isotropy_lattice_finite(&g).unwrap();
        let mut profile: Vec<(usize, usize)> = lattice
            .iter()
            .map(|e| (e.subgroup.order(), e.fixed_space.dim()))
            .collect();
        profile.sort_unstable();
        assert_eq!(profile, vec![(1, 2), (2, 1), (2, 1), (2, 1), (6, 0)]);
        // Witnesses have exact isotropy: check by brute-force stabilizer.
        for entry in &lattice {
            let stab = g.stabilizer_of_point(&entry.witness);
            assert_eq!(stab, entry.subgroup);
        }
    }

    #[test]
    fn circle_weights_one_two_isotropies() {
        let action = CircleWeightAction::new(vec![1, 2], 0).unwrap();
        let lattice = isotropy_lattice_circle(&action);
        let profile: Vec<(Option<u64>, usize)> = lattice
            .iter()
            .map(|e| (e.subgroup.order(), e.fixed_space.dim()))
            .collect();
        assert_eq!(
            profile,
            vec![(Some(1), 4), (Some(2), 2), (None, 0)]
        );
        // Witness of the Z/2 stratum sits on the weight-2 block, nonzero.
        let z2 = &lattice[1];
        assert_eq!(action.isotropy_of_point(&z2.witness), CircleSubgroup::Cyclic(2));
    }

    #[test]
    fn witness_avoids_excluded_lines() {
        let support = RationalSubspace::full(2);
        let x_axis = RationalSubspace::coordinate(2, &[0]);
        let y_axis = RationalSubspace::coordinate(2, &[1]);
        let diag = RationalSubspace::canonicalize(2, &[vec![rat(1), rat(1)]]).unwrap();
        let w = witness_point(&support, &[x_axis, y_axis, diag]);
        assert!(!w[0].is_zero() && !w[1].is_zero() && w[0] != w[1]);
    }
}
