//! Finite groupoid calculus: explicit structure maps, axiom validation,
//! translation groupoids, loop spaces, inertia groupoids, and pullbacks.
//!
//! Everything here is finite and discrete; the topological conditions on
//! structure maps (openness, submersions) are vacuous at this scale, which
//! is exactly what makes the calculus executable and testable.

pub mod equivalence;

pub use equivalence::{
    morita_check, weak_equivalence_check, GroupoidIsomorphism, GroupoidMorphism, MoritaVerdict,
    WeakEquivalenceVerdict,
};

use std::collections::BTreeMap;

use crate::error::GroupoidError;
use crate::group::FiniteMatrixGroup;

/// A finite groupoid given by explicit tables. Arrows and objects are
/// consecutive indices; `mul` is defined exactly on composable pairs
/// `(g, h)` with `s(g) = t(h)`, and `mul[(g,h)]` is the composite `g . h`
/// with source `s(h)` and target `t(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    unit: Vec<usize>,
    inv: Vec<usize>,
    mul: BTreeMap<(usize, usize), usize>,
}

impl FiniteGroupoid {
    /// Structural constructor: checks table lengths and index ranges, not
    /// the groupoid axioms (see [`FiniteGroupoid::validate`]).
    pub fn new(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        unit: Vec<usize>,
        inv: Vec<usize>,
        mul: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, GroupoidError> {
        let n_arrows = src.len();
        if tgt.len() != n_arrows {
            return Err(GroupoidError::TableLength { table: "tgt", expected: n_arrows, got: tgt.len() });
        }
        if unit.len() != n_objects {
            return Err(GroupoidError::TableLength { table: "unit", expected: n_objects, got: unit.len() });
        }
        if inv.len() != n_arrows {
            return Err(GroupoidError::TableLength { table: "inv", expected: n_arrows, got: inv.len() });
        }
        let check_obj = |table: &'static str, vals: &[usize]| -> Result<(), GroupoidError> {
            vals.iter()
                .find(|&&v| v >= n_objects)
                .map_or(Ok(()), |&v| Err(GroupoidError::BadIndex { table, index: v }))
        };
        let check_arr = |table: &'static str, vals: &[usize]| -> Result<(), GroupoidError> {
            vals.iter()
                .find(|&&v| v >= n_arrows)
                .map_or(Ok(()), |&v| Err(GroupoidError::BadIndex { table, index: v }))
        };
        check_obj("src", &src)?;
        check_obj("tgt", &tgt)?;
        check_arr("unit", &unit)?;
        check_arr("inv", &inv)?;
        for (&(g, h), &k) in &mul {
            if g >= n_arrows || h >= n_arrows || k >= n_arrows {
                return Err(GroupoidError::BadIndex { table: "mul", index: k.max(g).max(h) });
            }
        }
        Ok(Self { n_objects, src, tgt, unit, inv, mul })
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, g: usize) -> usize {
        self.src[g]
    }

    pub fn tgt(&self, g: usize) -> usize {
        self.tgt[g]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.unit[x]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// Composite `g . h` when `s(g) = t(h)` and the table has the entry.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.mul.get(&(g, h)).copied()
    }

    pub fn mul_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.mul
    }

    /// The arrows with equal source and target.
    pub fn loop_space(&self) -> Vec<usize> {
        (0..self.n_arrows()).filter(|&g| self.src[g] == self.tgt[g]).collect()
    }

    /// Orbit partition of the object set, each orbit sorted; orbits listed
    /// by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n_objects).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for g in 0..self.n_arrows() {
            let a = find(&mut parent, self.src[g]);
            let b = find(&mut parent, self.tgt[g]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.n_objects {
            let root = find(&mut parent, x);
            buckets.entry(root).or_default().push(x);
        }
        buckets.into_values().collect()
    }

    /// Arrows from `x` to `x`; a group under composition.
    pub fn isotropy_arrows(&self, x: usize) -> Vec<usize> {
        (0..self.n_arrows())
            .filter(|&g| self.src[g] == x && self.tgt[g] == x)
            .collect()
    }

    /// Abstract multiplication table of the isotropy group at `x`, in the
    /// order of `isotropy_arrows(x)`.
    pub fn isotropy_table(&self, x: usize) -> GroupTable {
        let arrows = self.isotropy_arrows(x);
        let pos: BTreeMap<usize, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = arrows.len();
        let mut mul = vec![0usize; n * n];
        for (i, &a) in arrows.iter().enumerate() {
            for (j, &b) in arrows.iter().enumerate() {
                let c = self.compose(a, b).expect("isotropy arrows compose");
                mul[i * n + j] = pos[&c];
            }
        }
        let identity = pos[&self.unit[x]];
        GroupTable::new(n, mul, identity)
    }

    /// Multiset of isotropy group orders, one per orbit (taken at the least
    /// object of each orbit), sorted.
    pub fn orbit_isotropy_profile(&self) -> Vec<(usize, usize)> {
        let mut profile: Vec<(usize, usize)> = self
            .orbits()
            .iter()
            .map(|orbit| (orbit.len(), self.isotropy_arrows(orbit[0]).len()))
            .collect();
        profile.sort_unstable();
        profile
    }

    /// Check every groupoid axiom by exhaustive enumeration; the report is
    /// empty exactly when the tables form a groupoid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for x in 0..self.n_objects {
            let u = self.unit[x];
            if self.src[u] != x {
                violations.push(AxiomViolation::UnitSource { object: x });
            }
            if self.tgt[u] != x {
                violations.push(AxiomViolation::UnitTarget { object: x });
            }
        }
        let n = self.n_arrows();
        for g in 0..n {
            for h in 0..n {
                let composable = self.src[g] == self.tgt[h];
                match (composable, self.compose(g, h)) {
                    (true, None) => violations.push(AxiomViolation::MulDomainMissing { g, h }),
                    (false, Some(_)) => violations.push(AxiomViolation::MulDomainExtra { g, h }),
                    (true, Some(k)) => {
                        if self.src[k] != self.src[h] || self.tgt[k] != self.tgt[g] {
                            violations.push(AxiomViolation::MulSourceTarget { g, h });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for g in 0..n {
            if self.compose(self.unit[self.tgt[g]], g) != Some(g) {
                violations.push(AxiomViolation::LeftUnit { g });
            }
            if self.compose(g, self.unit[self.src[g]]) != Some(g) {
                violations.push(AxiomViolation::RightUnit { g });
            }
            let gi = self.inv[g];
            if self.src[gi] != self.tgt[g] || self.tgt[gi] != self.src[g] {
                violations.push(AxiomViolation::InverseSourceTarget { g });
            } else {
                if self.compose(gi, g) != Some(self.unit[self.src[g]]) {
                    violations.push(AxiomViolation::LeftInverse { g });
                }
                if self.compose(g, gi) != Some(self.unit[self.tgt[g]]) {
                    violations.push(AxiomViolation::RightInverse { g });
                }
            }
        }
        // Associativity over all composable triples.
        for g in 0..n {
            for h in 0..n {
                if self.src[g] != self.tgt[h] {
                    continue;
                }
                for k in 0..n {
                    if self.src[h] != self.tgt[k] {
                        continue;
                    }
                    let left = self.compose(g, h).and_then(|gh| self.compose(gh, k));
                    let right = self.compose(h, k).and_then(|hk| self.compose(g, hk));
                    match (left, right) {
                        (Some(a), Some(b)) if a == b => {}
                        _ => violations.push(AxiomViolation::Associativity { g, h, k }),
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Pair groupoid on `n` objects: exactly one arrow between any two.
    pub fn pair_groupoid(n: usize) -> Self {
        let arrow = |i: usize, j: usize| i * n + j; // arrow j -> i
        let mut src = Vec::with_capacity(n * n);
        let mut tgt = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                tgt.push(i);
                src.push(j);
            }
        }
        let unit = (0..n).map(|x| arrow(x, x)).collect();
        let mut inv = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                inv[arrow(i, j)] = arrow(j, i);
            }
        }
        let mut mul = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mul.insert((arrow(i, j), arrow(j, k)), arrow(i, k));
                }
            }
        }
        Self::new(n, src, tgt, unit, inv, mul).expect("pair groupoid is structurally sound")
    }

    /// A group as a one-object groupoid.
    pub fn one_object(group: &GroupTable) -> Self {
        let n = group.order();
        let src = vec![0; n];
        let tgt = vec![0; n];
        let unit = vec![group.identity()];
        let inv = (0..n).map(|g| group.inv(g)).collect();
        let mut mul = BTreeMap::new();
        for g in 0..n {
            for h in 0..n {
                mul.insert((g, h), group.mul(g, h));
            }
        }
        Self::new(1, src, tgt, unit, inv, mul).expect("one-object groupoid is structurally sound")
    }
}

/// Axiom failures found by [`FiniteGroupoid::validate`], each naming the
/// offending indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    UnitSource { object: usize },
    UnitTarget { object: usize },
    MulDomainMissing { g: usize, h: usize },
    MulDomainExtra { g: usize, h: usize },
    MulSourceTarget { g: usize, h: usize },
    LeftUnit { g: usize },
    RightUnit { g: usize },
    InverseSourceTarget { g: usize },
    LeftInverse { g: usize },
    RightInverse { g: usize },
    Associativity { g: usize, h: usize, k: usize },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::UnitSource { object } => write!(f, "s(u({object})) != {object}"),
            AxiomViolation::UnitTarget { object } => write!(f, "t(u({object})) != {object}"),
            AxiomViolation::MulDomainMissing { g, h } => {
                write!(f, "composable pair ({g}, {h}) missing from mul")
            }
            AxiomViolation::MulDomainExtra { g, h } => {
                write!(f, "mul defined on non-composable pair ({g}, {h})")
            }
            AxiomViolation::MulSourceTarget { g, h } => {
                write!(f, "mul({g}, {h}) has wrong source or target")
            }
            AxiomViolation::LeftUnit { g } => write!(f, "u(t({g})) . {g} != {g}"),
            AxiomViolation::RightUnit { g } => write!(f, "{g} . u(s({g})) != {g}"),
            AxiomViolation::InverseSourceTarget { g } => {
                write!(f, "inv({g}) has wrong source or target")
            }
            AxiomViolation::LeftInverse { g } => write!(f, "inv({g}) . {g} != unit"),
            AxiomViolation::RightInverse { g } => write!(f, "{g} . inv({g}) != unit"),
            AxiomViolation::Associativity { g, h, k } => {
                write!(f, "associativity fails on the triple ({g}, {h}, {k})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Abstract finite group given by a multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    pub fn new(order: usize, mul: Vec<usize>, identity: usize) -> Self {
        assert_eq!(mul.len(), order * order);
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mul[g * order + h] == identity)
                    .expect("every element has an inverse")
            })
            .collect();
        Self { order, mul, inv, identity }
    }

    pub fn from_matrix_group(g: &FiniteMatrixGroup) -> Self {
        let order = g.order();
        let mut mul = vec![0usize; order * order];
        for i in 0..order {
            for j in 0..order {
                mul[i * order + j] = g.mul(i, j);
            }
        }
        Self::new(order, mul, 0)
    }

    pub fn cyclic(n: usize) -> Self {
        let mut mul = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = (i + j) % n;
            }
        }
        Self::new(n, mul, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = g;
        let mut n = 1;
        while k != self.identity {
            k = self.mul(k, g);
            n += 1;
        }
        n
    }
}

/// A finite group acting on a finite set, with validated tables.
#[derive(Clone, Debug)]
pub struct FiniteGroupAction {
    pub group: GroupTable,
    pub points: usize,
    act: Vec<usize>, // group.order x points
}

impl FiniteGroupAction {
    pub fn new(group: GroupTable, points: usize, act: Vec<usize>) -> Result<Self, GroupoidError> {
        if act.len() != group.order() * points {
            return Err(GroupoidError::InvalidAction {
                reason: format!(
                    "action table has length {}, expected {}",
                    act.len(),
                    group.order() * points
                ),
            });
        }
        if act.iter().any(|&p| p >= points) {
            return Err(GroupoidError::InvalidAction { reason: "point index out of range".into() });
        }
        let action = Self { group, points, act };
        for x in 0..points {
            if action.apply(action.group.identity(), x) != x {
                return Err(GroupoidError::InvalidAction {
                    reason: format!("identity moves point {x}"),
                });
            }
        }
        for g in 0..action.group.order() {
            for h in 0..action.group.order() {
                let gh = action.group.mul(g, h);
                for x in 0..points {
                    if action.apply(gh, x) != action.apply(g, action.apply(h, x)) {
                        return Err(GroupoidError::InvalidAction {
                            reason: format!("action incompatible with mul at (g={g}, h={h}, x={x})"),
                        });
                    }
                }
            }
        }
        Ok(action)
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.act[g * self.points + x]
    }

    /// The left translation action of a group on itself.
    pub fn left_translation(group: GroupTable) -> Self {
        let order = group.order();
        let mut act = vec![0usize; order * order];
        for g in 0..order {
            for x in 0..order {
                act[g * order + x] = group.mul(g, x);
            }
        }
        Self::new(group, order, act).expect("left translation is a valid action")
    }

    /// The trivial action on `points` points.
    pub fn trivial(group: GroupTable, points: usize) -> Self {
        let act = (0..group.order()).flat_map(|_| 0..points).collect();
        Self::new(group, points, act).expect("trivial action is valid")
    }
}

/// The translation groupoid `G x X => X` of a finite group action. Arrow
/// `(g, x)` has index `g * points + x`, source `x`, target `g x`.
pub fn translation_groupoid(action: &FiniteGroupAction) -> FiniteGroupoid {
    let order = action.group.order();
    let points = action.points;
    let arrow = |g: usize, x: usize| g * points + x;
    let mut src = Vec::with_capacity(order * points);
    let mut tgt = Vec::with_capacity(order * points);
    for g in 0..order {
        for x in 0..points {
            src.push(x);
            tgt.push(action.apply(g, x));
        }
    }
    let unit = (0..points).map(|x| arrow(action.group.identity(), x)).collect();
    let mut inv = vec![0usize; order * points];
    for g in 0..order {
        for x in 0..points {
            inv[arrow(g, x)] = arrow(action.group.inv(g), action.apply(g, x));
        }
    }
    let mut mul = BTreeMap::new();
    for g in 0..order {
        for x in 0..points {
            let gx = action.apply(g, x);
            for h in 0..order {
                // (h, g x) . (g, x) = (h g, x)
                mul.insert((arrow(h, gx), arrow(g, x)), arrow(action.group.mul(h, g), x));
            }
        }
    }
    FiniteGroupoid::new(points, src, tgt, unit, inv, mul)
        .expect("translation groupoid is structurally sound")
}

/// The inertia groupoid: the translation groupoid of a groupoid acting on
/// its own loop space by conjugation. `loops[i]` is the arrow of the input
/// groupoid that object `i` of the inertia groupoid stands for, and
/// `arrow_pairs[a] = (g, h)` labels inertia arrow `a`.
#[derive(Clone, Debug)]
pub struct InertiaGroupoid {
    pub groupoid: FiniteGroupoid,
    pub loops: Vec<usize>,
    pub arrow_pairs: Vec<(usize, usize)>,
}

/// Build the inertia groupoid of a finite groupoid. Objects are the loops
/// `h`; arrows are pairs `(g, h)` with `s(g) = s(h) = t(h)`, acting by
/// `g . h = g h g^{-1}`.
pub fn inertia_groupoid(g: &FiniteGroupoid) -> InertiaGroupoid {
    let loops = g.loop_space();
    let loop_index: BTreeMap<usize, usize> =
        loops.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut arrow_pairs = Vec::new();
    for arr in 0..g.n_arrows() {
        for &l in &loops {
            if g.src(arr) == g.src(l) {
                arrow_pairs.push((arr, l));
            }
        }
    }
    let pair_index: BTreeMap<(usize, usize), usize> =
        arrow_pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    let conj = |arr: usize, l: usize| -> usize {
        let al = g.compose(arr, l).expect("s(arr) = t(l)");
        g.compose(al, g.inv(arr)).expect("s(al) = s(arr) = t(inv(arr))")
    };

    let src = arrow_pairs.iter().map(|&(_, l)| loop_index[&l]).collect();
    let tgt = arrow_pairs.iter().map(|&(arr, l)| loop_index[&conj(arr, l)]).collect();
    let unit = loops.iter().map(|&l| pair_index[&(g.unit(g.src(l)), l)]).collect();
    let inv = arrow_pairs
        .iter()
        .map(|&(arr, l)| pair_index[&(g.inv(arr), conj(arr, l))])
        .collect();
    let mut mul = BTreeMap::new();
    for (i2, &(a2, l2)) in arrow_pairs.iter().enumerate() {
        for (i1, &(a1, l1)) in arrow_pairs.iter().enumerate() {
            if l2 == conj(a1, l1) {
                let a21 = g.compose(a2, a1).expect("s(a2) = t(l2') = s(a1 l1 a1^-1) = t(a1)");
                mul.insert((i2, i1), pair_index[&(a21, l1)]);
            }
        }
    }
    let groupoid = FiniteGroupoid::new(loops.len(), src, tgt, unit, inv, mul)
        .expect("inertia groupoid is structurally sound");
    InertiaGroupoid { groupoid, loops, arrow_pairs }
}

/// The pullback groupoid `G[Y]` along `f : Y -> G_0`. Objects are the
/// elements of `Y`; arrows are triples `(y, z, g)` with `t(g) = f(y)` and
/// `s(g) = f(z)`, recorded in `arrow_labels`.
#[derive(Clone, Debug)]
pub struct PullbackGroupoid {
    pub groupoid: FiniteGroupoid,
    pub arrow_labels: Vec<(usize, usize, usize)>,
}

pub fn pullback_groupoid(
    g: &FiniteGroupoid,
    y_count: usize,
    f: &[usize],
) -> Result<PullbackGroupoid, GroupoidError> {
    if f.len() != y_count {
        return Err(GroupoidError::TableLength { table: "f", expected: y_count, got: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&x| x >= g.n_objects()) {
        return Err(GroupoidError::BadIndex { table: "f", index: bad });
    }
    let mut labels = Vec::new();
    for y in 0..y_count {
        for z in 0..y_count {
            for arr in 0..g.n_arrows() {
                if g.tgt(arr) == f[y] && g.src(arr) == f[z] {
                    labels.push((y, z, arr));
                }
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize), usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let src = labels.iter().map(|&(_, z, _)| z).collect();
    let tgt = labels.iter().map(|&(y, _, _)| y).collect();
    let unit = (0..y_count).map(|y| index[&(y, y, g.unit(f[y]))]).collect();
    let inv = labels
        .iter()
        .map(|&(y, z, arr)| index[&(z, y, g.inv(arr))])
        .collect();
    let mut mul = BTreeMap::new();
    for (i, &(y, w, a)) in labels.iter().enumerate() {
        for (j, &(w2, z, b)) in labels.iter().enumerate() {
            if w == w2 {
                if let Some(ab) = g.compose(a, b) {
                    mul.insert((i, j), index[&(y, z, ab)]);
                }
            }
        }
    }
    let groupoid = FiniteGroupoid::new(y_count, src, tgt, unit, inv, mul)?;
    Ok(PullbackGroupoid { groupoid, arrow_labels: labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_is_valid() {
        let g = FiniteGroupoid::pair_groupoid(3);
        assert!(g.validate().is_valid());
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn one_object_group_is_valid() {
        let g = FiniteGroupoid::one_object(&GroupTable::cyclic(4));
        assert!(g.validate().is_valid());
        assert_eq!(g.loop_space().len(), 4);
    }

    #[test]
    fn corrupted_mul_names_the_triple() {
        let mut g = FiniteGroupoid::pair_groupoid(2);
        // Arrow 1 is 1 -> 0, arrow 2 is 0 -> 1; redirect their composite.
        let key = (1usize, 2usize);
        assert_eq!(g.mul[&key], 0);
        g.mul.insert(key, 3);
        let report = g.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            AxiomViolation::MulSourceTarget { g: 1, h: 2 }
                | AxiomViolation::Associativity { .. }
                | AxiomViolation::LeftInverse { .. }
                | AxiomViolation::RightInverse { .. }
        )));
    }

    #[test]
    fn translation_groupoid_of_trivial_action() {
        let action = FiniteGroupAction::trivial(GroupTable::cyclic(2), 1);
        let g = translation_groupoid(&action);
        assert!(g.validate().is_valid());
        assert_eq!(g.n_arrows(), 2);
        assert_eq!(g.n_objects(), 1);
    }

    #[test]
    fn translation_groupoid_of_swap_action() {
        // Z/2 swapping two points: 4 arrows, one orbit.
        let table = GroupTable::cyclic(2);
        let action = FiniteGroupAction::new(table, 2, vec![0, 1, 1, 0]).unwrap();
        let g = translation_groupoid(&action);
        assert!(g.validate().is_valid());
        assert_eq!(g.n_arrows(), 4);
        assert_eq!(g.orbits().len(), 1);
        // Free orbit: the only loops are the two units.
        assert_eq!(g.loop_space(), vec![g.unit(0), g.unit(1)]);
    }

    #[test]
    fn left_translation_looks_like_pair_groupoid() {
        // S3 on itself by left translation: single orbit, trivial isotropy.
        let s3 = {
            use crate::linalg::RationalMatrix;
            let t = RationalMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
            let c = RationalMatrix::from_int_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
            FiniteMatrixGroup::close_generators(&[t, c], 48).unwrap()
        };
        let action = FiniteGroupAction::left_translation(GroupTable::from_matrix_group(&s3));
        let g = translation_groupoid(&action);
        assert!(g.validate().is_valid());
        assert_eq!(g.orbits().len(), 1);
        assert_eq!(g.isotropy_arrows(0).len(), 1);
        assert_eq!(g.orbit_isotropy_profile(), vec![(6, 1)]);
    }

    #[test]
    fn loop_space_of_pair_groupoid_is_units() {
        let g = FiniteGroupoid::pair_groupoid(3);
        let loops = g.loop_space();
        assert_eq!(loops.len(), 3);
        for (x, &l) in loops.iter().enumerate() {
            assert_eq!(l, g.unit(x));
        }
    }

    #[test]
    fn inertia_orbit_count_of_s3_is_class_count() {
        let s3 = {
            use crate::linalg::RationalMatrix;
            let t = RationalMatrix::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
            let c = RationalMatrix::from_int_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
            FiniteMatrixGroup::close_generators(&[t, c], 48).unwrap()
        };
        let g = FiniteGroupoid::one_object(&GroupTable::from_matrix_group(&s3));
        let inertia = inertia_groupoid(&g);
        assert!(inertia.groupoid.validate().is_valid());
        // Brute-force conjugation orbits: 3 conjugacy classes.
        assert_eq!(inertia.groupoid.orbits().len(), 3);
    }

    #[test]
    fn inertia_of_pair_groupoid_is_units_with_one_orbit() {
        let g = FiniteGroupoid::pair_groupoid(3);
        let inertia = inertia_groupoid(&g);
        assert!(inertia.groupoid.validate().is_valid());
        assert_eq!(inertia.groupoid.n_objects(), 3);
        assert_eq!(inertia.groupoid.orbits().len(), 1);
    }

    #[test]
    fn inertia_of_free_action_has_one_orbit() {
        let table = GroupTable::cyclic(2);
        let action = FiniteGroupAction::new(table, 2, vec![0, 1, 1, 0]).unwrap();
        let g = translation_groupoid(&action);
        let inertia = inertia_groupoid(&g);
        assert!(inertia.groupoid.validate().is_valid());
        assert_eq!(inertia.groupoid.orbits().len(), 1);
    }

    #[test]
    fn pullback_along_identity_is_same_shape() {
        let g = FiniteGroupoid::pair_groupoid(3);
        let f: Vec<usize> = (0..3).collect();
        let py = pullback_groupoid(&g, 3, &f).unwrap();
        assert!(py.groupoid.validate().is_valid());
        assert_eq!(py.groupoid.n_arrows(), g.n_arrows());
        assert_eq!(py.groupoid.orbit_isotropy_profile(), g.orbit_isotropy_profile());
    }

    #[test]
    fn pullback_doubling_multiplies_arrows_by_four() {
        let g = FiniteGroupoid::one_object(&GroupTable::cyclic(2));
        let f = vec![0, 0];
        let py = pullback_groupoid(&g, 2, &f).unwrap();
        assert!(py.groupoid.validate().is_valid());
        // |G[Y]_1| = sum over arrows of |f^-1(t)| * |f^-1(s)| = 2 * 4.
        assert_eq!(py.groupoid.n_arrows(), 8);
    }

    #[test]
    fn pullback_missing_orbit_changes_orbit_space() {
        // Two-orbit groupoid: Z/2 acting trivially on 2 points.
        let action = FiniteGroupAction::trivial(GroupTable::cyclic(2), 2);
        let g = translation_groupoid(&action);
        assert_eq!(g.orbits().len(), 2);
        // Y covers only object 0.
        let py = pullback_groupoid(&g, 1, &[0]).unwrap();
        assert!(py.groupoid.validate().is_valid());
        assert_eq!(py.groupoid.orbits().len(), 1);
    }
}
