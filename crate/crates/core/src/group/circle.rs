//! Circle-weight actions: the circle group acting on `R^{2m+d}` by rotating
//! each complex weight block and fixing a trivial summand. Everything is
//! handled symbolically through integer weights and rational angles, never
//! by sampling angles.

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::GroupError;
use crate::linalg::{Rational, RationalSubspace};

/// A circle element `e^{2 pi i t}` with rational `t` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(Rational);

impl Angle {
    pub fn new(t: Rational) -> Self {
        Self(reduce_mod_one(t))
    }

    pub fn zero() -> Self {
        Self(Rational::zero())
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::new(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn add(&self, other: &Angle) -> Angle {
        Angle::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> Angle {
        Angle::new(-self.0.clone())
    }

    /// n * t mod 1.
    pub fn scale(&self, n: i64) -> Angle {
        Angle::new(&self.0 * Rational::from_integer(BigInt::from(n)))
    }

    /// Is `n * t` an integer? This is the condition for the angle to fix a
    /// weight-`n` block.
    pub fn fixes_weight(&self, n: i64) -> bool {
        (&self.0 * Rational::from_integer(BigInt::from(n)))
            .denom()
            .is_one()
    }

    /// Denominator of the reduced angle; the order of the angle as a group
    /// element of the circle.
    pub fn order(&self) -> u64 {
        use num::ToPrimitive;
        self.0.denom().to_u64().expect("desk-scale denominators")
    }
}

fn reduce_mod_one(t: Rational) -> Rational {
    let floor = t.floor();
    t - floor
}

/// Descriptor of a closed subgroup of the circle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CircleSubgroup {
    /// The whole circle.
    Full,
    /// The cyclic subgroup of order `m`: angles k/m.
    Cyclic(u64),
}

impl CircleSubgroup {
    pub fn contains(&self, t: &Angle) -> bool {
        match self {
            CircleSubgroup::Full => true,
            CircleSubgroup::Cyclic(m) => t.fixes_weight(*m as i64),
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            CircleSubgroup::Full => None,
            CircleSubgroup::Cyclic(m) => Some(*m),
        }
    }

    pub fn angles(&self) -> Option<Vec<Angle>> {
        match self {
            CircleSubgroup::Full => None,
            CircleSubgroup::Cyclic(m) => Some(
                (0..*m)
                    .map(|k| Angle::new(Rational::new(BigInt::from(k), BigInt::from(*m))))
                    .collect(),
            ),
        }
    }
}

/// Linear circle action on `R^{2m + trivial_dim}`: block `j` is a 2-plane on
/// which the angle `t` acts by rotation through `2 pi n_j t`; the last
/// `trivial_dim` coordinates are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleWeightAction {
    weights: Vec<i64>,
    trivial_dim: usize,
}

impl CircleWeightAction {
    pub fn new(weights: Vec<i64>, trivial_dim: usize) -> Result<Self, GroupError> {
        if weights.iter().any(|&n| n == 0) {
            return Err(GroupError::ZeroWeight);
        }
        Ok(Self { weights, trivial_dim })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn trivial_dim(&self) -> usize {
        self.trivial_dim
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.weights.len() + self.trivial_dim
    }

    /// Coordinate axes of block `j`.
    pub fn block_axes(&self, j: usize) -> (usize, usize) {
        (2 * j, 2 * j + 1)
    }

    /// Axes of the trivial summand.
    pub fn trivial_axes(&self) -> Vec<usize> {
        let start = 2 * self.weights.len();
        (start..start + self.trivial_dim).collect()
    }

    /// Blocks fixed pointwise by the angle: those with `n_j t` integral.
    pub fn fixed_blocks(&self, t: &Angle) -> Vec<bool> {
        self.weights.iter().map(|&n| t.fixes_weight(n)).collect()
    }

    /// Fixed subspace of one circle element: the fixed blocks plus the
    /// trivial summand, always a coordinate subspace.
    pub fn fixed_subspace(&self, t: &Angle) -> RationalSubspace {
        let mut axes = Vec::new();
        for (j, fixed) in self.fixed_blocks(t).iter().enumerate() {
            if *fixed {
                let (a, b) = self.block_axes(j);
                axes.push(a);
                axes.push(b);
            }
        }
        axes.extend(self.trivial_axes());
        RationalSubspace::coordinate(self.ambient_dim(), &axes)
    }

    /// Fixed subspace of the full cyclic subgroup Z/m: blocks with m | n_j
    /// plus the trivial summand.
    pub fn fixed_subspace_of_cyclic(&self, m: u64) -> RationalSubspace {
        let mut axes = Vec::new();
        for (j, &n) in self.weights.iter().enumerate() {
            if n.unsigned_abs() % m == 0 {
                let (a, b) = self.block_axes(j);
                axes.push(a);
                axes.push(b);
            }
        }
        axes.extend(self.trivial_axes());
        RationalSubspace::coordinate(self.ambient_dim(), &axes)
    }

    /// Fixed subspace of the whole circle: the trivial summand.
    pub fn fixed_subspace_of_circle(&self) -> RationalSubspace {
        RationalSubspace::coordinate(self.ambient_dim(), &self.trivial_axes())
    }

    pub fn fixed_subspace_of(&self, k: &CircleSubgroup) -> RationalSubspace {
        match k {
            CircleSubgroup::Full => self.fixed_subspace_of_circle(),
            CircleSubgroup::Cyclic(m) => self.fixed_subspace_of_cyclic(*m),
        }
    }

    /// Support of a point: the weight blocks on which it is nonzero.
    pub fn support(&self, v: &[Rational]) -> Vec<usize> {
        assert_eq!(v.len(), self.ambient_dim());
        (0..self.weights.len())
            .filter(|&j| {
                let (a, b) = self.block_axes(j);
                !v[a].is_zero() || !v[b].is_zero()
            })
            .collect()
    }

    /// Isotropy group of a point: the circle on the trivial summand, else
    /// the cyclic group of order gcd of the supported weights.
    pub fn isotropy_of_point(&self, v: &[Rational]) -> CircleSubgroup {
        let supp = self.support(v);
        if supp.is_empty() {
            CircleSubgroup::Full
        } else {
            let m = supp
                .iter()
                .fold(0u64, |acc, &j| acc.gcd(&self.weights[j].unsigned_abs()));
            CircleSubgroup::Cyclic(m)
        }
    }

    /// All isotropy groups realized by the action: gcds over nonempty block
    /// subsets, plus the circle when a trivial summand or the origin exists.
    pub fn realized_cyclic_isotropies(&self) -> Vec<u64> {
        let blocks = self.weights.len();
        let mut out: Vec<u64> = Vec::new();
        for mask in 1u32..(1 << blocks) {
            let m = (0..blocks)
                .filter(|&j| mask & (1 << j) != 0)
                .fold(0u64, |acc, j| acc.gcd(&self.weights[j].unsigned_abs()));
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }

    /// The finite set of angles fixing at least one weight block, sorted.
    /// The connected components of its complement are the open arcs of the
    /// generic class.
    pub fn special_angles(&self) -> Vec<Angle> {
        let mut out: Vec<Angle> = Vec::new();
        for &n in &self.weights {
            let m = n.unsigned_abs();
            for k in 0..m {
                let a = Angle::new(Rational::new(BigInt::from(k), BigInt::from(m)));
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        out.sort();
        out
    }

    /// Exact rotation matrix of an angle when all supported rotations are
    /// rational, i.e. when `n_j t` is a multiple of 1/4... In general the
    /// rotation is irrational, so this action never materializes matrices;
    /// geometry goes through `fixed_subspace` and supports instead.
    pub fn acts_trivially(&self, t: &Angle) -> bool {
        self.fixed_blocks(t).iter().all(|&b| b)
    }

    /// Apply the angle to a point when the rotation is exactly rational,
    /// which holds iff every `n_j t` is a multiple of 1/4 (cos and sin in
    /// {0, +-1}) or the block is unsupported. Returns `None` otherwise.
    pub fn try_apply(&self, t: &Angle, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim());
        let mut out = v.to_vec();
        for (j, &n) in self.weights.iter().enumerate() {
            let (a, b) = self.block_axes(j);
            if v[a].is_zero() && v[b].is_zero() {
                continue;
            }
            let phase = t.scale(n);
            let quarter = &BigRational::new(BigInt::from(1), BigInt::from(4));
            let q = phase.value() / quarter;
            if !q.denom().is_one() {
                return None;
            }
            let quarters = (q.numer() % BigInt::from(4) + BigInt::from(4)) % BigInt::from(4);
            let (ca, cb) = (v[a].clone(), v[b].clone());
            let (na, nb) = match quarters.to_string().as_str() {
                "0" => (ca, cb),
                "1" => (-cb, ca),
                "2" => (-ca, -cb),
                _ => (cb, -ca),
            };
            out[a] = na;
            out[b] = nb;
        }
        Some(out)
    }
}

impl Angle {
    /// Midpoint of two angles within a non-wrapping interval (lo < hi taken
    /// as rationals in [0, 1]).
    pub fn midpoint(lo: &Rational, hi: &Rational) -> Angle {
        Angle::new((lo + hi) / Rational::from_integer(BigInt::from(2)))
    }
}

/// Signum helper for weights.
pub fn weight_sign(n: i64) -> i64 {
    if n.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn angle_normalization() {
        assert_eq!(Angle::new(ratio(5, 4)), Angle::from_fraction(1, 4));
        assert_eq!(Angle::new(ratio(-1, 4)), Angle::from_fraction(3, 4));
        assert_eq!(Angle::from_fraction(2, 4).value(), &ratio(1, 2));
    }

    #[test]
    fn weight_two_half_angle_fixes_block() {
        let action = CircleWeightAction::new(vec![2], 0).unwrap();
        let half = Angle::from_fraction(1, 2);
        let fix = action.fixed_subspace(&half);
        assert!(fix.is_full());
        let quarter = Angle::from_fraction(1, 4);
        assert!(action.fixed_subspace(&quarter).is_zero());
    }

    #[test]
    fn isotropy_by_support() {
        let action = CircleWeightAction::new(vec![1, 2], 0).unwrap();
        let generic = vec![rat(1), rat(0), rat(1), rat(0)];
        assert_eq!(action.isotropy_of_point(&generic), CircleSubgroup::Cyclic(1));
        let second_block = vec![rat(0), rat(0), rat(1), rat(2)];
        assert_eq!(action.isotropy_of_point(&second_block), CircleSubgroup::Cyclic(2));
        let origin = vec![rat(0); 4];
        assert_eq!(action.isotropy_of_point(&origin), CircleSubgroup::Full);
    }

    #[test]
    fn realized_isotropies_of_one_two() {
        let action = CircleWeightAction::new(vec![1, 2], 0).unwrap();
        assert_eq!(action.realized_cyclic_isotropies(), vec![1, 2]);
    }

    #[test]
    fn special_angles_of_weight_two() {
        let action = CircleWeightAction::new(vec![2], 0).unwrap();
        assert_eq!(
            action.special_angles(),
            vec![Angle::zero(), Angle::from_fraction(1, 2)]
        );
    }

    #[test]
    fn quarter_turn_applies_exactly() {
        let action = CircleWeightAction::new(vec![1], 0).unwrap();
        let quarter = Angle::from_fraction(1, 4);
        let moved = action.try_apply(&quarter, &[rat(1), rat(0)]).unwrap();
        assert_eq!(moved, vec![rat(0), rat(1)]);
        let third = Angle::from_fraction(1, 3);
        assert!(action.try_apply(&third, &[rat(1), rat(0)]).is_none());
    }

    #[test]
    fn cyclic_fixed_subspace() {
        let action = CircleWeightAction::new(vec![1, 2], 1).unwrap();
        // Z/2 fixes the weight-2 block and the trivial coordinate.
        let fix = action.fixed_subspace_of_cyclic(2);
        assert_eq!(fix.dim(), 3);
        assert!(fix.contains_point(&[rat(0), rat(0), rat(1), rat(1), rat(1)]).unwrap());
        assert_eq!(action.fixed_subspace_of_circle().dim(), 1);
    }
}
