//! The stratification engine: computes the orbit Cartan type stratification
//! of the loop space of a linear action (finite matrix group or circle
//! weights), its closure order, depths, component counts, and the quotient
//! version on the inertia space.
//!
//! For a finite group the connected component of the fixed-set equivalence
//! class of an element is the singleton containing it, so loop strata are
//! indexed by conjugacy classes of pairs `(h, K)` with `K` an isotropy
//! subgroup and `h` a member: the piece of `(h, K)` is the saturation
//! `G.({h} x V_{=K})` with `V_{=K}` the set of points of isotropy exactly
//! `K`. For circle weights the nonzero part contributes pairs (angle of
//! `Z/m`, `Z/m`), and over the circle-fixed subspace the cells of the
//! fixed-set partition of the circle (special points and open arcs) are
//! strata in their own right. See docs/stratification.md for the
//! derivation.

pub mod arrangement;
pub mod fibered;
pub mod isotropy;
pub mod simeq;
pub mod validate;

pub use arrangement::{component_count, fixed_component_count, DEFAULT_POSET_CAP};
pub use fibered::{stratify_fibered_product, ConePiece, ConeStratification};
pub use isotropy::{
    isotropy_lattice_circle, isotropy_lattice_finite, witness_point, CircleIsotropyStratum,
    FiniteIsotropyStratum, IsotropyStratum,
};
pub use simeq::{
    simeq_classes_circle, simeq_classes_finite, t_bullet_circle, t_bullet_finite, Cell,
    SimeqClass, SimeqPartition,
};
pub use validate::{
    classify_and_check, sample_loop_points, validate_stratification, CheckOutcome,
};

use num::{One, Zero};

use crate::error::StrataError;
use crate::group::{Angle, CircleSubgroup, CircleWeightAction, FiniteMatrixGroup, Subgroup};
use crate::linalg::{Rational, RationalSubspace};

/// A linear model: either a finite matrix group or a circle-weight action.
#[derive(Clone, Debug)]
pub enum LinearAction {
    Finite(FiniteMatrixGroup),
    Circle(CircleWeightAction),
}

impl LinearAction {
    pub fn ambient_dim(&self) -> usize {
        match self {
            LinearAction::Finite(g) => g.dim(),
            LinearAction::Circle(c) => c.ambient_dim(),
        }
    }
}

/// The group-direction part of a stratum: a single element for finite
/// groups and finite circle isotropy, a cell of the circle over the
/// circle-fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupPart {
    FiniteElement(usize),
    CirclePoint(Angle),
    CircleArc { lo: Rational, hi: Rational },
    CircleFull,
}

impl GroupPart {
    pub fn is_interval(&self) -> bool {
        matches!(self, GroupPart::CircleArc { .. } | GroupPart::CircleFull)
    }

    fn from_cell(cell: &Cell) -> GroupPart {
        match cell {
            Cell::FiniteElement(h) => GroupPart::FiniteElement(*h),
            Cell::Point(a) => GroupPart::CirclePoint(a.clone()),
            Cell::Arc { lo, hi } => GroupPart::CircleArc { lo: lo.clone(), hi: hi.clone() },
            Cell::FullCircle => GroupPart::CircleFull,
        }
    }

    /// Closed-cell membership of an angle (endpoints included).
    pub fn closure_contains_angle(&self, t: &Angle) -> bool {
        match self {
            GroupPart::FiniteElement(_) => false,
            GroupPart::CirclePoint(p) => p == t,
            GroupPart::CircleArc { lo, hi } => {
                (t.value() >= lo && t.value() <= hi)
                    || (hi == &Rational::one() && t.value().is_zero())
            }
            GroupPart::CircleFull => true,
        }
    }
}

/// Isotropy descriptor of a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyGroup {
    Finite(Subgroup),
    Circle(CircleSubgroup),
}

impl IsotropyGroup {
    /// Group order; `None` for the full circle.
    pub fn order(&self) -> Option<usize> {
        match self {
            IsotropyGroup::Finite(s) => Some(s.order()),
            IsotropyGroup::Circle(c) => c.order().map(|m| m as usize),
        }
    }
}

/// Isotropy data attached to a stratum: the subgroup, its fixed space, and
/// the strictly larger fixed spaces removed from it.
#[derive(Clone, Debug)]
pub struct StratumIsotropy {
    pub group: IsotropyGroup,
    pub fixed_space: RationalSubspace,
    pub excluded: Vec<RationalSubspace>,
}

/// A single loop point `(h, x)` with `h x = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopPoint {
    pub label: PointLabel,
    pub point: Vec<Rational>,
}

/// The group element of a loop point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLabel {
    Finite(usize),
    Circle(Angle),
}

/// One stratum of the loop (or inertia) space.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub id: usize,
    pub group_part: GroupPart,
    pub isotropy: StratumIsotropy,
    pub dim: usize,
    pub component_count: Option<usize>,
    pub witness: LoopPoint,
}

impl Stratum {
    /// Flat strata are relatively open subsets of linear subspaces; arc
    /// cells contribute a curved circle factor.
    pub fn is_flat(&self) -> bool {
        !self.group_part.is_interval()
    }
}

/// A full stratification: strata, strict closure order (`(p, q)` meaning
/// `p` lies in the closure of `q`), its transitive reduction, and the depth
/// of each stratum (longest strictly ascending chain starting there).
#[derive(Clone, Debug)]
pub struct StratificationResult {
    pub strata: Vec<Stratum>,
    pub order: Vec<(usize, usize)>,
    pub hasse: Vec<(usize, usize)>,
    pub depths: Vec<usize>,
    /// True for the inertia-space (quotient) version.
    pub quotient: bool,
}

impl StratificationResult {
    pub fn max_depth(&self) -> usize {
        self.depths.iter().copied().max().unwrap_or(0)
    }

    pub fn le(&self, p: usize, q: usize) -> bool {
        p == q || self.order.contains(&(p, q))
    }
}

/// Compute the loop-space stratification of a linear action.
pub fn loop_strata(action: &LinearAction) -> Result<StratificationResult, StrataError> {
    let mut strata = match action {
        LinearAction::Finite(group) => finite_strata(group)?,
        LinearAction::Circle(circle) => circle_strata(circle),
    };
    for (i, s) in strata.iter_mut().enumerate() {
        s.id = i;
    }
    let order = closure_order(action, &strata);
    let hasse = hasse_reduction(strata.len(), &order);
    let depths = depths_from_order(strata.len(), &order);
    Ok(StratificationResult { strata, order, hasse, depths, quotient: false })
}

/// Canonical representative of the conjugation orbit of a pair `(h, K)`:
/// the lexicographically least `(h', members')` over the group.
fn canonical_pair(group: &FiniteMatrixGroup, h: usize, k: &Subgroup) -> (usize, Vec<usize>) {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for g in 0..group.order() {
        let h2 = group.conjugate(g, h);
        let k2 = group.conjugate_subgroup(g, k);
        let cand = (h2, k2.members);
        if best.as_ref().is_none_or(|b| &cand < b) {
            best = Some(cand);
        }
    }
    best.expect("group is nonempty")
}

fn finite_strata(group: &FiniteMatrixGroup) -> Result<Vec<Stratum>, StrataError> {
    let lattice = isotropy_lattice_finite(group)?;
    let entry_of: std::collections::BTreeMap<Vec<usize>, usize> = lattice
        .iter()
        .enumerate()
        .map(|(i, e)| (e.subgroup.members.clone(), i))
        .collect();

    let mut reps: Vec<(usize, Vec<usize>)> = Vec::new();
    for entry in &lattice {
        for &h in &entry.subgroup.members {
            let rep = canonical_pair(group, h, &entry.subgroup);
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
    }
    // Deterministic order: generic (high-dimensional) strata first.
    reps.sort_by(|a, b| {
        let ea = &lattice[entry_of[&a.1]];
        let eb = &lattice[entry_of[&b.1]];
        eb.fixed_space
            .dim()
            .cmp(&ea.fixed_space.dim())
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.0.cmp(&b.0))
    });

    let mut strata = Vec::with_capacity(reps.len());
    for (h, members) in reps {
        let entry = &lattice[entry_of[&members]];
        let comp = component_count(&entry.fixed_space, &entry.excluded, DEFAULT_POSET_CAP);
        strata.push(Stratum {
            id: 0,
            group_part: GroupPart::FiniteElement(h),
            isotropy: StratumIsotropy {
                group: IsotropyGroup::Finite(entry.subgroup.clone()),
                fixed_space: entry.fixed_space.clone(),
                excluded: entry.excluded.clone(),
            },
            dim: entry.fixed_space.dim(),
            component_count: comp,
            witness: LoopPoint {
                label: PointLabel::Finite(h),
                point: entry.witness.clone(),
            },
        });
    }
    Ok(strata)
}

fn circle_strata(action: &CircleWeightAction) -> Vec<Stratum> {
    let lattice = isotropy_lattice_circle(action);
    let mut strata = Vec::new();
    for entry in &lattice {
        match &entry.subgroup {
            CircleSubgroup::Cyclic(m) => {
                for angle in simeq::cyclic_angles(*m) {
                    let comp =
                        component_count(&entry.fixed_space, &entry.excluded, DEFAULT_POSET_CAP);
                    strata.push(Stratum {
                        id: 0,
                        group_part: GroupPart::CirclePoint(angle.clone()),
                        isotropy: StratumIsotropy {
                            group: IsotropyGroup::Circle(entry.subgroup.clone()),
                            fixed_space: entry.fixed_space.clone(),
                            excluded: entry.excluded.clone(),
                        },
                        dim: entry.fixed_space.dim(),
                        component_count: comp,
                        witness: LoopPoint {
                            label: PointLabel::Circle(angle),
                            point: entry.witness.clone(),
                        },
                    });
                }
            }
            CircleSubgroup::Full => {
                let partition = simeq_classes_circle(action);
                for class in &partition.classes {
                    for cell in &class.components {
                        let group_part = GroupPart::from_cell(cell);
                        let dim = entry.fixed_space.dim()
                            + if group_part.is_interval() { 1 } else { 0 };
                        let angle = cell.witness_angle().expect("circle cells carry angles");
                        strata.push(Stratum {
                            id: 0,
                            group_part,
                            isotropy: StratumIsotropy {
                                group: IsotropyGroup::Circle(CircleSubgroup::Full),
                                fixed_space: entry.fixed_space.clone(),
                                excluded: entry.excluded.clone(),
                            },
                            dim,
                            component_count: Some(1),
                            witness: LoopPoint {
                                label: PointLabel::Circle(angle),
                                point: entry.witness.clone(),
                            },
                        });
                    }
                }
            }
        }
    }
    strata.sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then_with(|| circle_part_key(&a.group_part).cmp(&circle_part_key(&b.group_part)))
    });
    strata
}

fn circle_part_key(part: &GroupPart) -> (u8, Rational, Rational) {
    match part {
        GroupPart::CirclePoint(a) => (0, a.value().clone(), Rational::zero()),
        GroupPart::CircleArc { lo, hi } => (1, lo.clone(), hi.clone()),
        GroupPart::CircleFull => (2, Rational::zero(), Rational::zero()),
        GroupPart::FiniteElement(_) => unreachable!("finite part in circle stratification"),
    }
}

/// The strict closure order: `(p, q)` is in the output when stratum `p`
/// lies in the closure of stratum `q`.
///
/// Finite case: `(h, H) <= (k, K)` iff some `g` conjugates `k` onto `h` and
/// `g K g^{-1}` into `H`. Circle case: point cells lie under the strata of
/// angles they equal and under the arcs they bound; finite-isotropy strata
/// at a fixed angle are ordered by reverse divisibility of the isotropy
/// order.
pub fn closure_order(action: &LinearAction, strata: &[Stratum]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for p in 0..strata.len() {
        for q in 0..strata.len() {
            if p != q && below_in_closure(action, &strata[p], &strata[q]) {
                pairs.push((p, q));
            }
        }
    }
    pairs
}

fn below_in_closure(action: &LinearAction, p: &Stratum, q: &Stratum) -> bool {
    match action {
        LinearAction::Finite(group) => {
            let (GroupPart::FiniteElement(h), GroupPart::FiniteElement(k)) =
                (&p.group_part, &q.group_part)
            else {
                unreachable!("finite strata carry elements");
            };
            let (IsotropyGroup::Finite(hh), IsotropyGroup::Finite(kk)) =
                (&p.isotropy.group, &q.isotropy.group)
            else {
                unreachable!("finite strata carry finite isotropy");
            };
            (0..group.order()).any(|g| {
                group.conjugate(g, *k) == *h
                    && group.conjugate_subgroup(g, kk).is_subset_of(hh)
            })
        }
        LinearAction::Circle(_) => {
            match (&p.isotropy.group, &q.isotropy.group) {
                // Finite isotropy under finite isotropy: same angle, strictly
                // divisible orders (larger group below smaller).
                (
                    IsotropyGroup::Circle(CircleSubgroup::Cyclic(mp)),
                    IsotropyGroup::Circle(CircleSubgroup::Cyclic(mq)),
                ) => {
                    let (GroupPart::CirclePoint(a), GroupPart::CirclePoint(b)) =
                        (&p.group_part, &q.group_part)
                    else {
                        unreachable!("finite circle isotropy strata are point cells");
                    };
                    a == b && mp % mq == 0 && mp != mq
                }
                // Circle-fixed cells under finite-isotropy strata: the cell
                // must be the point at that angle.
                (
                    IsotropyGroup::Circle(CircleSubgroup::Full),
                    IsotropyGroup::Circle(CircleSubgroup::Cyclic(_)),
                ) => match (&p.group_part, &q.group_part) {
                    (GroupPart::CirclePoint(a), GroupPart::CirclePoint(b)) => a == b,
                    _ => false,
                },
                // Cells under cells: endpoint incidence.
                (
                    IsotropyGroup::Circle(CircleSubgroup::Full),
                    IsotropyGroup::Circle(CircleSubgroup::Full),
                ) => match &p.group_part {
                    GroupPart::CirclePoint(a) => {
                        q.group_part.is_interval() && q.group_part.closure_contains_angle(a)
                    }
                    _ => false,
                },
                // Finite isotropy never sits under the circle-fixed locus.
                (
                    IsotropyGroup::Circle(CircleSubgroup::Cyclic(_)),
                    IsotropyGroup::Circle(CircleSubgroup::Full),
                ) => false,
                _ => unreachable!("circle strata carry circle isotropy"),
            }
        }
    }
}

/// Transitive reduction of a strict partial order given as a pair list.
pub fn hasse_reduction(n: usize, order: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let set: std::collections::BTreeSet<(usize, usize)> = order.iter().copied().collect();
    order
        .iter()
        .copied()
        .filter(|&(p, q)| !(0..n).any(|r| r != p && r != q && set.contains(&(p, r)) && set.contains(&(r, q))))
        .collect()
}

/// Depth of each stratum: the length of the longest strictly ascending
/// chain starting at it.
pub fn depths_from_order(n: usize, order: &[(usize, usize)]) -> Vec<usize> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(p, q) in order {
        succ[p].push(q);
    }
    let mut memo: Vec<Option<usize>> = vec![None; n];
    fn go(i: usize, succ: &[Vec<usize>], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[i] {
            return d;
        }
        let d = succ[i]
            .iter()
            .map(|&j| 1 + go(j, succ, memo))
            .max()
            .unwrap_or(0);
        memo[i] = Some(d);
        d
    }
    (0..n).map(|i| go(i, &succ, &mut memo)).collect()
}

/// Turn a loop-space stratification into the inertia-space version:
/// dimensions drop by the orbit dimension inside each piece (one for
/// circle strata with finite isotropy, zero otherwise) and component
/// counts become orbit counts of components; the closure order and depths
/// are inherited.
pub fn inertia_strata(
    action: &LinearAction,
    result: &StratificationResult,
) -> StratificationResult {
    let strata = result
        .strata
        .iter()
        .map(|s| {
            let mut t = s.clone();
            match action {
                LinearAction::Finite(group) => {
                    t.component_count = quotient_component_count(group, s, DEFAULT_POSET_CAP);
                }
                LinearAction::Circle(_) => {
                    if matches!(
                        s.isotropy.group,
                        IsotropyGroup::Circle(CircleSubgroup::Cyclic(_))
                    ) {
                        t.dim = s.dim - 1;
                    }
                }
            }
            t
        })
        .collect();
    StratificationResult {
        strata,
        order: result.order.clone(),
        hasse: result.hasse.clone(),
        depths: result.depths.clone(),
        quotient: true,
    }
}

/// Number of components of the quotient of the piece of `(h, K)` by the
/// group: the orbit count of the stabilizer `Z(h) n N(K)` acting on the
/// components of `V_{=K}`, computed by Burnside's lemma with the fixed
/// components of each element counted through the induced arrangement on
/// its fixed subspace.
pub fn quotient_component_count(
    group: &FiniteMatrixGroup,
    stratum: &Stratum,
    cap: usize,
) -> Option<usize> {
    let GroupPart::FiniteElement(h) = stratum.group_part else {
        return stratum.component_count;
    };
    let IsotropyGroup::Finite(k) = &stratum.isotropy.group else {
        return stratum.component_count;
    };
    let stab: Vec<usize> = (0..group.order())
        .filter(|&g| {
            group.conjugate(g, h) == h && &group.conjugate_subgroup(g, k) == k
        })
        .collect();
    let mut total = 0usize;
    for &g in &stab {
        let fixed_in_support = stratum
            .isotropy
            .fixed_space
            .intersect(&group.fixed_subspace(g))
            .expect("same ambient dimension");
        total += fixed_component_count(
            &stratum.isotropy.fixed_space,
            &stratum.isotropy.excluded,
            &fixed_in_support,
            cap,
        )?;
    }
    Some(total / stab.len())
}

/// Does `(label, x)` satisfy the loop condition `h x = x`?
pub fn is_loop_point(action: &LinearAction, label: &PointLabel, x: &[Rational]) -> bool {
    match (action, label) {
        (LinearAction::Finite(group), PointLabel::Finite(h)) => {
            group.element(*h).mul_vec(x) == x
        }
        (LinearAction::Circle(circle), PointLabel::Circle(t)) => {
            let fixed = circle.fixed_blocks(t);
            circle.support(x).into_iter().all(|j| fixed[j])
        }
        _ => false,
    }
}

/// Exact isotropy of `x` under the action.
pub fn local_isotropy(action: &LinearAction, x: &[Rational]) -> IsotropyGroup {
    match action {
        LinearAction::Finite(group) => IsotropyGroup::Finite(group.stabilizer_of_point(x)),
        LinearAction::Circle(circle) => IsotropyGroup::Circle(circle.isotropy_of_point(x)),
    }
}

/// All strata whose piece contains the loop point; a correct stratification
/// yields exactly one.
pub fn matching_strata(
    action: &LinearAction,
    strata: &[Stratum],
    label: &PointLabel,
    x: &[Rational],
) -> Vec<usize> {
    let isotropy = local_isotropy(action, x);
    strata
        .iter()
        .filter(|s| stratum_contains(action, s, label, x, &isotropy))
        .map(|s| s.id)
        .collect()
}

fn stratum_contains(
    action: &LinearAction,
    stratum: &Stratum,
    label: &PointLabel,
    _x: &[Rational],
    isotropy: &IsotropyGroup,
) -> bool {
    match (action, label) {
        (LinearAction::Finite(group), PointLabel::Finite(h)) => {
            let GroupPart::FiniteElement(h0) = stratum.group_part else { return false };
            let IsotropyGroup::Finite(k0) = &stratum.isotropy.group else { return false };
            let IsotropyGroup::Finite(kx) = isotropy else { return false };
            (0..group.order()).any(|g| {
                group.conjugate(g, *h) == h0 && &group.conjugate_subgroup(g, kx) == k0
            })
        }
        (LinearAction::Circle(_), PointLabel::Circle(t)) => {
            let IsotropyGroup::Circle(kx) = isotropy else { return false };
            match (&stratum.isotropy.group, &stratum.group_part) {
                (IsotropyGroup::Circle(k0), GroupPart::CirclePoint(a)) => match k0 {
                    CircleSubgroup::Cyclic(_) => kx == k0 && a == t,
                    CircleSubgroup::Full => kx == k0 && a == t,
                },
                (IsotropyGroup::Circle(k0 @ CircleSubgroup::Full), part) => {
                    kx == k0
                        && match part {
                            GroupPart::CircleArc { lo, hi } => t.value() > lo && t.value() < hi,
                            GroupPart::CircleFull => true,
                            _ => false,
                        }
                }
                _ => false,
            }
        }
        _ => false,
    }
}

/// Exact frontier oracle, independent of the closure-order criterion: can
/// points of stratum `q` approach the witness of stratum `p`? Decided by
/// membership of the witness in the closure of the piece of `q` (the group
/// part is discrete transversally, the vector part is a union of linear
/// subspaces).
pub fn approach_possible(action: &LinearAction, strata: &[Stratum], p: usize, q: usize) -> bool {
    if p == q {
        return true;
    }
    let sp = &strata[p];
    let sq = &strata[q];
    match action {
        LinearAction::Finite(group) => {
            let PointLabel::Finite(hp) = sp.witness.label else { return false };
            let GroupPart::FiniteElement(kq) = sq.group_part else { return false };
            (0..group.order()).any(|g| {
                group.conjugate(g, kq) == hp
                    && sq
                        .isotropy
                        .fixed_space
                        .apply(group.element(g))
                        .contains_point(&sp.witness.point)
                        .expect("matching ambient dimension")
            })
        }
        LinearAction::Circle(circle) => {
            let PointLabel::Circle(tp) = &sp.witness.label else { return false };
            // Closure of the piece of q: closed cell times the fixed space
            // of its isotropy group.
            let cell_ok = match (&sq.isotropy.group, &sq.group_part) {
                (IsotropyGroup::Circle(CircleSubgroup::Cyclic(_)), GroupPart::CirclePoint(a)) => {
                    a == tp
                }
                (IsotropyGroup::Circle(CircleSubgroup::Full), part) => {
                    part.closure_contains_angle(tp)
                }
                _ => false,
            };
            cell_ok
                && circle
                    .fixed_subspace_of(match &sq.isotropy.group {
                        IsotropyGroup::Circle(k) => k,
                        IsotropyGroup::Finite(_) => unreachable!("circle strata"),
                    })
                    .contains_point(&sp.witness.point)
                    .expect("matching ambient dimension")
        }
    }
}

/// Construct a rational sequence of points of stratum `q` converging to
/// the witness of stratum `p`, using the cone property of the pieces.
/// Returns `None` when the strata are not incident.
pub fn approach_sequence(
    action: &LinearAction,
    strata: &[Stratum],
    p: usize,
    q: usize,
    steps: usize,
) -> Option<Vec<LoopPoint>> {
    let sp = &strata[p];
    let sq = &strata[q];
    match action {
        LinearAction::Finite(group) => {
            let PointLabel::Finite(hp) = sp.witness.label else { return None };
            let GroupPart::FiniteElement(kq) = sq.group_part else { return None };
            let IsotropyGroup::Finite(kk_q) = &sq.isotropy.group else { return None };
            let IsotropyGroup::Finite(kk_p) = &sp.isotropy.group else { return None };
            let g = (0..group.order()).find(|&g| {
                group.conjugate(g, kq) == hp
                    && group.conjugate_subgroup(g, kk_q).is_subset_of(kk_p)
            })?;
            // Transport the target piece through g and scale toward the
            // witness of p along a generic direction.
            let moved_support = sq.isotropy.fixed_space.apply(group.element(g));
            let moved_excluded: Vec<RationalSubspace> = sq
                .isotropy
                .excluded
                .iter()
                .map(|e| e.apply(group.element(g)))
                .collect();
            let direction = witness_point(&moved_support, &moved_excluded);
            let conj_k = group.conjugate_subgroup(g, kk_q);
            let mut out = Vec::with_capacity(steps);
            let mut eps = Rational::new(1.into(), 2.into());
            while out.len() < steps {
                let candidate: Vec<Rational> = sp
                    .witness
                    .point
                    .iter()
                    .zip(direction.iter())
                    .map(|(a, d)| a + &eps * d)
                    .collect();
                if group.stabilizer_of_point(&candidate) == conj_k {
                    out.push(LoopPoint { label: PointLabel::Finite(hp), point: candidate });
                }
                eps /= Rational::from_integer(2.into());
            }
            Some(out)
        }
        LinearAction::Circle(circle) => {
            let PointLabel::Circle(tp) = &sp.witness.label else { return None };
            match (&sq.isotropy.group, &sq.group_part) {
                (IsotropyGroup::Circle(CircleSubgroup::Cyclic(m)), GroupPart::CirclePoint(a)) => {
                    if a != tp {
                        return None;
                    }
                    let support = circle.fixed_subspace_of_cyclic(*m);
                    if !support.contains_point(&sp.witness.point).expect("dims") {
                        return None;
                    }
                    let lattice = isotropy_lattice_circle(circle);
                    let entry = lattice
                        .iter()
                        .find(|e| e.subgroup == CircleSubgroup::Cyclic(*m))?;
                    let direction = &entry.witness;
                    let mut out = Vec::with_capacity(steps);
                    let mut eps = Rational::new(1.into(), 2.into());
                    while out.len() < steps {
                        let candidate: Vec<Rational> = sp
                            .witness
                            .point
                            .iter()
                            .zip(direction.iter())
                            .map(|(x, d)| x + &eps * d)
                            .collect();
                        if circle.isotropy_of_point(&candidate) == CircleSubgroup::Cyclic(*m) {
                            out.push(LoopPoint {
                                label: PointLabel::Circle(a.clone()),
                                point: candidate,
                            });
                        }
                        eps /= Rational::from_integer(2.into());
                    }
                    Some(out)
                }
                (IsotropyGroup::Circle(CircleSubgroup::Full), part) => {
                    if !part.closure_contains_angle(tp) || !part.is_interval() {
                        return None;
                    }
                    // Angles strictly inside the cell approaching tp.
                    let (lo, hi) = match part {
                        GroupPart::CircleArc { lo, hi } => (lo.clone(), hi.clone()),
                        GroupPart::CircleFull => (Rational::zero(), Rational::one()),
                        _ => unreachable!(),
                    };
                    let width = &hi - &lo;
                    // The witness angle is an endpoint of the arc (up to the
                    // wrap hi = 1 ~ 0); walk in from the matching end.
                    let (anchor, sign) = if tp.value() == &lo {
                        (lo.clone(), Rational::one())
                    } else {
                        (hi.clone(), -Rational::one())
                    };
                    let mut out = Vec::with_capacity(steps);
                    let mut eps = &width / Rational::from_integer(4.into());
                    while out.len() < steps {
                        let t = Angle::new(&anchor + &sign * &eps);
                        out.push(LoopPoint {
                            label: PointLabel::Circle(t),
                            point: sp.witness.point.clone(),
                        });
                        eps /= Rational::from_integer(2.into());
                    }
                    Some(out)
                }
                _ => None,
            }
        }
    }
}
