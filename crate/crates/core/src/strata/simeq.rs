//! The fixed-set equivalence on a carrier group: two elements are
//! equivalent when their fixed subspaces in the slice normal space agree.
//! For a finite cyclic carrier the connected components of a class are
//! singletons; on the circle they are the special points and the open arcs
//! between consecutive special points.

use num::{BigInt, One};

use crate::group::{Angle, CircleSubgroup, CircleWeightAction, FiniteMatrixGroup, Subgroup};
use crate::linalg::{Rational, RationalSubspace};

/// One connected component of an equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    /// A single finite-group element.
    FiniteElement(usize),
    /// A closed point of the circle.
    Point(Angle),
    /// An open arc (lo, hi) with rational endpoints, 0 <= lo < hi <= 1.
    Arc { lo: Rational, hi: Rational },
    /// The whole circle (only when the action has no weights).
    FullCircle,
}

impl Cell {
    pub fn contains_angle(&self, t: &Angle) -> bool {
        match self {
            Cell::FiniteElement(_) => false,
            Cell::Point(p) => p == t,
            Cell::Arc { lo, hi } => t.value() > lo && t.value() < hi,
            Cell::FullCircle => true,
        }
    }

    /// A rational angle inside the cell (midpoint for arcs).
    pub fn witness_angle(&self) -> Option<Angle> {
        match self {
            Cell::FiniteElement(_) => None,
            Cell::Point(p) => Some(p.clone()),
            Cell::Arc { lo, hi } => Some(Angle::midpoint(lo, hi)),
            Cell::FullCircle => Some(Angle::zero()),
        }
    }

    /// Endpoints of an arc as angles (hi = 1 wraps to 0).
    pub fn endpoints(&self) -> Vec<Angle> {
        match self {
            Cell::Arc { lo, hi } => {
                vec![Angle::new(lo.clone()), Angle::new(hi.clone())]
            }
            _ => Vec::new(),
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, Cell::Arc { .. } | Cell::FullCircle)
    }
}

/// One equivalence class: its members carry a common fixed space, and the
/// class splits into connected components.
#[derive(Clone, Debug)]
pub struct SimeqClass {
    pub fixed_space: RationalSubspace,
    pub components: Vec<Cell>,
}

/// The partition of a carrier by fixed-space equality.
#[derive(Clone, Debug)]
pub struct SimeqPartition {
    pub classes: Vec<SimeqClass>,
}

impl SimeqPartition {
    /// The class whose fixed space matches, if any.
    pub fn class_of_space(&self, space: &RationalSubspace) -> Option<usize> {
        self.classes.iter().position(|c| &c.fixed_space == space)
    }

    pub fn component_cells(&self) -> impl Iterator<Item = (usize, &Cell)> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.components.iter().map(move |cell| (i, cell)))
    }
}

/// Partition a cyclic subgroup of a finite matrix group by exact equality
/// of fixed subspaces. The slice normal space of a finite linear action is
/// the whole ambient space, so fixed spaces are taken there.
pub fn simeq_classes_finite(group: &FiniteMatrixGroup, carrier: &Subgroup) -> SimeqPartition {
    let mut classes: Vec<(RationalSubspace, Vec<usize>)> = Vec::new();
    for &s in &carrier.members {
        let space = group.fixed_subspace(s);
        match classes.iter_mut().find(|(sp, _)| sp == &space) {
            Some((_, members)) => members.push(s),
            None => classes.push((space, vec![s])),
        }
    }
    SimeqPartition {
        classes: classes
            .into_iter()
            .map(|(fixed_space, members)| SimeqClass {
                fixed_space,
                components: members.into_iter().map(Cell::FiniteElement).collect(),
            })
            .collect(),
    }
}

/// Partition the circle by fixed-space equality for a weight action: the
/// special angles (those fixing at least one block) are closed points,
/// grouped by which blocks they fix; the complementary open arcs all share
/// the trivial fixed space and form one class.
pub fn simeq_classes_circle(action: &CircleWeightAction) -> SimeqPartition {
    let special = action.special_angles();
    if special.is_empty() {
        return SimeqPartition {
            classes: vec![SimeqClass {
                fixed_space: action.fixed_subspace_of_circle(),
                components: vec![Cell::FullCircle],
            }],
        };
    }
    let mut classes: Vec<(RationalSubspace, Vec<Cell>)> = Vec::new();
    for angle in &special {
        let space = action.fixed_subspace(angle);
        let cell = Cell::Point(angle.clone());
        match classes.iter_mut().find(|(sp, _)| sp == &space) {
            Some((_, cells)) => cells.push(cell),
            None => classes.push((space, vec![cell])),
        }
    }
    // Arcs between consecutive special angles; 0 is always special, so no
    // arc wraps across 1.
    let mut arcs = Vec::new();
    for (i, angle) in special.iter().enumerate() {
        let lo = angle.value().clone();
        let hi = if i + 1 < special.len() {
            special[i + 1].value().clone()
        } else {
            Rational::one()
        };
        if lo < hi {
            arcs.push(Cell::Arc { lo, hi });
        }
    }
    let generic_space = action.fixed_subspace_of_circle();
    match classes.iter_mut().find(|(sp, _)| sp == &generic_space) {
        // Possible only when some special angle fixes no block beyond the
        // trivial summand, which cannot happen: special angles fix a block.
        Some((_, cells)) => cells.extend(arcs),
        None => classes.push((generic_space, arcs)),
    }
    SimeqPartition {
        classes: classes
            .into_iter()
            .map(|(fixed_space, components)| SimeqClass { fixed_space, components })
            .collect(),
    }
}

/// `t_bullet` for a cyclic carrier inside a finite matrix group: the set of
/// carrier elements whose fixed space contains the fixed space of `t`.
/// Always a subgroup of the carrier.
pub fn t_bullet_finite(group: &FiniteMatrixGroup, carrier: &Subgroup, t: usize) -> Subgroup {
    assert!(carrier.contains(t), "t must lie in the carrier");
    let vt = group.fixed_subspace(t);
    let members: Vec<usize> = carrier
        .members
        .iter()
        .copied()
        .filter(|&s| group.fixed_subspace(s).contains_subspace(&vt))
        .collect();
    let sub = Subgroup { members };
    debug_assert!(group.is_subgroup(&sub.members), "t_bullet must be a subgroup");
    sub
}

/// `t_bullet` on the circle: the angles whose fixed space contains the
/// fixed space of `t`. Fixing all blocks that `t` fixes pins the angle to
/// the cyclic subgroup of order gcd of those weights; if `t` fixes no
/// block the condition is vacuous and the whole circle qualifies.
pub fn t_bullet_circle(action: &CircleWeightAction, t: &Angle) -> CircleSubgroup {
    use num::Integer;
    let fixed = action.fixed_blocks(t);
    let mut g: u64 = 0;
    for (j, &is_fixed) in fixed.iter().enumerate() {
        if is_fixed {
            g = g.gcd(&action.weights()[j].unsigned_abs());
        }
    }
    if g == 0 {
        CircleSubgroup::Full
    } else {
        CircleSubgroup::Cyclic(g)
    }
}

/// Convenience: the cyclic subgroup of the circle as a list of angles.
pub fn cyclic_angles(m: u64) -> Vec<Angle> {
    (0..m)
        .map(|k| Angle::new(Rational::new(BigInt::from(k), BigInt::from(m))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, RationalMatrix};

    fn z4() -> FiniteMatrixGroup {
        let r = RationalMatrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        FiniteMatrixGroup::close_generators(&[r], 16).unwrap()
    }

    #[test]
    fn z4_splits_into_identity_and_rotations() {
        let g = z4();
        let carrier = Subgroup::whole(&g);
        let partition = simeq_classes_finite(&g, &carrier);
        assert_eq!(partition.classes.len(), 2);
        let full = partition
            .classes
            .iter()
            .find(|c| c.fixed_space.is_full())
            .expect("identity class");
        assert_eq!(full.components.len(), 1);
        let zero = partition
            .classes
            .iter()
            .find(|c| c.fixed_space.is_zero())
            .expect("rotation class");
        assert_eq!(zero.components.len(), 3);
        let total: usize = partition.classes.iter().map(|c| c.components.len()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn trivial_group_has_one_class_one_component() {
        let g = FiniteMatrixGroup::trivial(2);
        let partition = simeq_classes_finite(&g, &Subgroup::whole(&g));
        assert_eq!(partition.classes.len(), 1);
        assert_eq!(partition.classes[0].components.len(), 1);
    }

    #[test]
    fn circle_weight_two_partition() {
        let action = CircleWeightAction::new(vec![2], 0).unwrap();
        let partition = simeq_classes_circle(&action);
        assert_eq!(partition.classes.len(), 2);
        let full = partition
            .classes
            .iter()
            .find(|c| c.fixed_space.is_full())
            .expect("full-fix class");
        assert_eq!(
            full.components,
            vec![
                Cell::Point(Angle::zero()),
                Cell::Point(Angle::from_fraction(1, 2))
            ]
        );
        let generic = partition
            .classes
            .iter()
            .find(|c| c.fixed_space.is_zero())
            .expect("zero-fix class");
        assert_eq!(
            generic.components,
            vec![
                Cell::Arc { lo: ratio(0, 1), hi: ratio(1, 2) },
                Cell::Arc { lo: ratio(1, 2), hi: ratio(1, 1) },
            ]
        );
    }

    #[test]
    fn circle_without_weights_is_one_full_cell() {
        let action = CircleWeightAction::new(vec![], 3).unwrap();
        let partition = simeq_classes_circle(&action);
        assert_eq!(partition.classes.len(), 1);
        assert_eq!(partition.classes[0].components, vec![Cell::FullCircle]);
    }

    #[test]
    fn t_bullet_identity_is_action_kernel_within_carrier() {
        let g = z4();
        let carrier = Subgroup::whole(&g);
        let b = t_bullet_finite(&g, &carrier, 0);
        // Faithful action: only the identity fixes everything.
        assert_eq!(b.members, vec![0]);
    }

    #[test]
    fn t_bullet_of_rotation_is_everything() {
        let g = z4();
        let carrier = Subgroup::whole(&g);
        // V^r = 0 is contained in every fixed space.
        let b = t_bullet_finite(&g, &carrier, 1);
        assert_eq!(b.members, vec![0, 1, 2, 3]);
    }

    #[test]
    fn t_bullet_circle_quarter_of_weight_two() {
        let action = CircleWeightAction::new(vec![2], 0).unwrap();
        let quarter = Angle::from_fraction(1, 4);
        // V^{1/4} = 0, so the containment is vacuous.
        assert_eq!(t_bullet_circle(&action, &quarter), CircleSubgroup::Full);
        let half = Angle::from_fraction(1, 2);
        // V^{1/2} is the whole block; only the order-2 angles contain it.
        assert_eq!(t_bullet_circle(&action, &half), CircleSubgroup::Cyclic(2));
    }

    #[test]
    fn t_bullet_is_open_neighborhood_of_class() {
        // Each simeq class of the carrier sits inside t_bullet of any of
        // its members.
        let g = z4();
        let carrier = Subgroup::whole(&g);
        let partition = simeq_classes_finite(&g, &carrier);
        for class in &partition.classes {
            for cell in &class.components {
                let Cell::FiniteElement(t) = cell else { continue };
                let b = t_bullet_finite(&g, &carrier, *t);
                for other in &class.components {
                    let Cell::FiniteElement(s) = other else { continue };
                    assert!(b.contains(*s));
                }
            }
        }
    }
}
