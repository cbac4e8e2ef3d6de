//! Stratified linear models and their fibered products.
//!
//! A cone stratification carries pieces of the form "linear support minus
//! finitely many proper subspaces". Given two such models with linear
//! stratified maps into a stratified linear target, the fibered product is
//! stratified by the pairwise fibered products of pieces, provided the
//! first map is stratum-wise surjective onto the target strata (the linear
//! form of the submersion hypothesis).

use num::Zero;

use crate::error::StrataError;
use crate::linalg::{Rational, RationalMatrix, RationalSubspace};
use crate::strata::isotropy::witness_point;

/// One piece of a stratified linear model: `support \ union(excluded)`.
#[derive(Clone, Debug)]
pub struct ConePiece {
    pub support: RationalSubspace,
    pub excluded: Vec<RationalSubspace>,
}

impl ConePiece {
    pub fn new(support: RationalSubspace, excluded: Vec<RationalSubspace>) -> Self {
        debug_assert!(excluded.iter().all(|e| support.contains_subspace(e)));
        debug_assert!(excluded.iter().all(|e| e.dim() < support.dim()));
        Self { support, excluded }
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.support.contains_point(v).unwrap_or(false)
            && self.excluded.iter().all(|e| !e.contains_point(v).unwrap_or(true))
    }

    pub fn witness(&self) -> Vec<Rational> {
        witness_point(&self.support, &self.excluded)
    }
}

/// A stratified linear model: a finite partition of `Q^n` into cone pieces
/// (taken on faith from the constructor; `classify` reveals gaps).
#[derive(Clone, Debug)]
pub struct ConeStratification {
    pub ambient_dim: usize,
    pub pieces: Vec<ConePiece>,
}

impl ConeStratification {
    pub fn new(ambient_dim: usize, pieces: Vec<ConePiece>) -> Self {
        debug_assert!(pieces.iter().all(|p| p.support.ambient_dim() == ambient_dim));
        Self { ambient_dim, pieces }
    }

    /// The piece containing a point, if any.
    pub fn classify(&self, v: &[Rational]) -> Option<usize> {
        self.pieces.iter().position(|p| p.contains(v))
    }

    /// Strict closure order by support inclusion: `(p, q)` when piece `p`
    /// lies in the closure (= support) of piece `q`.
    pub fn closure_order(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.pieces.len() {
            for q in 0..self.pieces.len() {
                if p != q
                    && self.pieces[q].support.contains_subspace(&self.pieces[p].support)
                    && self.pieces[p].support.dim() < self.pieces[q].support.dim()
                {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

/// Result of stratifying a fibered product: the product stratification in
/// `Q^{na+nb}`, the (a-piece, b-piece) label of each product piece, and
/// the frontier order inherited from the factors.
#[derive(Clone, Debug)]
pub struct FiberedProductStratification {
    pub stratification: ConeStratification,
    pub labels: Vec<(usize, usize)>,
    pub order: Vec<(usize, usize)>,
}

/// Stratify the fibered product `A x_{f,g} B` of two stratified linear
/// models over a stratified linear target.
///
/// `f : Q^na -> Q^nz` must map each piece of `A` onto a piece of the
/// target (stratum-wise surjective, the linear submersion hypothesis) and
/// `g : Q^nb -> Q^nz` must map each piece of `B` into one. Pieces of the
/// product are the nonempty pairwise fibered products; empty pairs are
/// pruned.
pub fn stratify_fibered_product(
    a: &ConeStratification,
    f: &RationalMatrix,
    b: &ConeStratification,
    g: &RationalMatrix,
    target: &ConeStratification,
) -> Result<FiberedProductStratification, StrataError> {
    let (na, nb, nz) = (a.ambient_dim, b.ambient_dim, target.ambient_dim);
    if f.cols() != na || f.rows() != nz {
        return Err(StrataError::HypothesisViolation {
            piece: "f".into(),
            reason: format!("map must be {nz} x {na}, got {} x {}", f.rows(), f.cols()),
        });
    }
    if g.cols() != nb || g.rows() != nz {
        return Err(StrataError::HypothesisViolation {
            piece: "g".into(),
            reason: format!("map must be {nz} x {nb}, got {} x {}", g.rows(), g.cols()),
        });
    }

    // Stratified-map and submersion hypotheses, piece by piece.
    for (i, piece) in a.pieces.iter().enumerate() {
        let image_of_witness = f.mul_vec(&piece.witness());
        let Some(t) = target.classify(&image_of_witness) else {
            return Err(StrataError::HypothesisViolation {
                piece: format!("A:{i}"),
                reason: "witness image lies in no target piece".into(),
            });
        };
        let image_space = piece.support.apply(f);
        if image_space != target.pieces[t].support {
            return Err(StrataError::HypothesisViolation {
                piece: format!("A:{i}"),
                reason: "piece does not map onto its target stratum".into(),
            });
        }
    }
    for (i, piece) in b.pieces.iter().enumerate() {
        let image_of_witness = g.mul_vec(&piece.witness());
        let Some(t) = target.classify(&image_of_witness) else {
            return Err(StrataError::HypothesisViolation {
                piece: format!("B:{i}"),
                reason: "witness image lies in no target piece".into(),
            });
        };
        let image_space = piece.support.apply(g);
        if !target.pieces[t].support.contains_subspace(&image_space) {
            return Err(StrataError::HypothesisViolation {
                piece: format!("B:{i}"),
                reason: "piece does not map into a target stratum".into(),
            });
        }
    }

    // The fibered-product subspace S = ker [f | -g] inside Q^{na+nb}.
    let mut block = RationalMatrix::zero(nz, na + nb);
    for r in 0..nz {
        for c in 0..na {
            *block.at_mut(r, c) = f.at(r, c).clone();
        }
        for c in 0..nb {
            *block.at_mut(r, na + c) = -g.at(r, c).clone();
        }
    }
    let s = RationalSubspace::kernel(&block);

    let embed_pair = |left: &RationalSubspace, right: &RationalSubspace| -> RationalSubspace {
        let mut vectors = Vec::new();
        for v in left.basis() {
            let mut w = vec![Rational::zero(); na + nb];
            w[..na].clone_from_slice(v);
            vectors.push(w);
        }
        for v in right.basis() {
            let mut w = vec![Rational::zero(); na + nb];
            w[na..].clone_from_slice(v);
            vectors.push(w);
        }
        RationalSubspace::canonicalize(na + nb, &vectors).expect("well-formed embedding")
    };

    let mut pieces = Vec::new();
    let mut labels = Vec::new();
    for (i, pa) in a.pieces.iter().enumerate() {
        for (j, pb) in b.pieces.iter().enumerate() {
            let support = s.intersect(&embed_pair(&pa.support, &pb.support))?;
            // Removed sets: one per excluded subspace of either factor.
            let mut removed = Vec::new();
            for e in &pa.excluded {
                removed.push(s.intersect(&embed_pair(e, &pb.support))?);
            }
            for e in &pb.excluded {
                removed.push(s.intersect(&embed_pair(&pa.support, e))?);
            }
            // The pair is empty when every product point degenerates into a
            // removed set.
            if removed.iter().any(|r| r.dim() == support.dim()) {
                continue;
            }
            if support.dim() == 0 && support.is_zero() {
                // The zero point survives only if it is a genuine member:
                // x in P and y in R. Zero lies in every linear subspace, so
                // it is a member iff neither factor excludes it, which the
                // removed-set check above has already settled. Keep it.
            }
            let excluded: Vec<RationalSubspace> = removed
                .into_iter()
                .filter(|r| r.dim() < support.dim())
                .collect();
            let mut dedup: Vec<RationalSubspace> = Vec::new();
            for e in excluded {
                if !dedup.contains(&e) {
                    dedup.push(e);
                }
            }
            pieces.push(ConePiece::new(support, dedup));
            labels.push((i, j));
        }
    }

    // Frontier order: product of the factor orders, restricted to the
    // surviving pieces.
    let order_a: std::collections::BTreeSet<(usize, usize)> =
        a.closure_order().into_iter().collect();
    let order_b: std::collections::BTreeSet<(usize, usize)> =
        b.closure_order().into_iter().collect();
    let le_a = |p: usize, q: usize| p == q || order_a.contains(&(p, q));
    let le_b = |p: usize, q: usize| p == q || order_b.contains(&(p, q));
    let mut order = Vec::new();
    for (pi, &(ai, bi)) in labels.iter().enumerate() {
        for (qi, &(aj, bj)) in labels.iter().enumerate() {
            if pi != qi && le_a(ai, aj) && le_b(bi, bj) {
                order.push((pi, qi));
            }
        }
    }

    Ok(FiberedProductStratification {
        stratification: ConeStratification::new(na + nb, pieces),
        labels,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    /// The line stratified as {0} and its complement.
    fn punctured_line() -> ConeStratification {
        ConeStratification::new(
            1,
            vec![
                ConePiece::new(RationalSubspace::full(1), vec![RationalSubspace::zero(1)]),
                ConePiece::new(RationalSubspace::zero(1), vec![]),
            ],
        )
    }

    /// The plane stratified by the y-axis: complement, axis minus 0, origin.
    fn plane_with_axis() -> ConeStratification {
        let axis = RationalSubspace::coordinate(2, &[1]);
        ConeStratification::new(
            2,
            vec![
                ConePiece::new(RationalSubspace::full(2), vec![axis.clone()]),
                ConePiece::new(axis, vec![RationalSubspace::zero(2)]),
                ConePiece::new(RationalSubspace::zero(2), vec![]),
            ],
        )
    }

    fn point_space() -> ConeStratification {
        ConeStratification::new(0, vec![ConePiece::new(RationalSubspace::zero(0), vec![])])
    }

    #[test]
    fn fiber_over_a_point_restricts_strata() {
        // A = punctured line mapping onto a point target, B = point.
        let a = punctured_line();
        let b = point_space();
        let target = point_space();
        let f = RationalMatrix::zero(0, 1);
        let g = RationalMatrix::zero(0, 0);
        let product = stratify_fibered_product(&a, &f, &b, &g, &target).unwrap();
        assert_eq!(product.stratification.pieces.len(), 2);
        let dims: Vec<usize> =
            product.stratification.pieces.iter().map(|p| p.dim()).collect();
        assert_eq!(dims, vec![1, 0]);
    }

    #[test]
    fn identity_maps_give_diagonal_strata() {
        let a = punctured_line();
        let b = punctured_line();
        let target = punctured_line();
        let id = RationalMatrix::identity(1);
        let product = stratify_fibered_product(&a, &id, &b, &id, &target).unwrap();
        // Fibered product = diagonal; pieces are the diagonal copies of the
        // two strata.
        assert_eq!(product.stratification.pieces.len(), 2);
        for piece in &product.stratification.pieces {
            for v in piece.support.basis() {
                assert_eq!(v[0], v[1]);
            }
        }
        assert_eq!(product.order.len(), 1);
    }

    #[test]
    fn projection_against_origin_inclusion_gives_axis_strata() {
        // A = plane stratified by the y-axis, f = projection to x;
        // B = origin point, g = inclusion of 0; target = punctured line.
        let a = plane_with_axis();
        let b = point_space();
        let target = punctured_line();
        let f = RationalMatrix::from_int_rows(&[&[1, 0]]);
        let g = RationalMatrix::zero(1, 0);
        let product = stratify_fibered_product(&a, &f, &b, &g, &target).unwrap();
        // Fiber over 0: the y-axis strata (axis minus origin, origin); the
        // open piece of A misses the fiber entirely.
        assert_eq!(product.stratification.pieces.len(), 2);
        let dims: Vec<usize> =
            product.stratification.pieces.iter().map(|p| p.dim()).collect();
        assert_eq!(dims, vec![1, 0]);
        assert_eq!(product.order, vec![(1, 0)]);
    }

    #[test]
    fn submersion_hypothesis_violation_is_reported() {
        // Map the punctured line into the plane's open piece by a
        // non-surjective map: x -> (x, 0) does not cover the open piece.
        let a = punctured_line();
        let b = point_space();
        let target = plane_with_axis();
        let f = RationalMatrix::from_int_rows(&[&[1], &[0]]);
        let g = RationalMatrix::zero(2, 0);
        let err = stratify_fibered_product(&a, &f, &b, &g, &target).unwrap_err();
        match err {
            StrataError::HypothesisViolation { piece, .. } => assert_eq!(piece, "A:0"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn classify_locates_pieces() {
        let s = plane_with_axis();
        assert_eq!(s.classify(&[rat(1), rat(1)]), Some(0));
        assert_eq!(s.classify(&[rat(0), rat(2)]), Some(1));
        assert_eq!(s.classify(&[rat(0), rat(0)]), Some(2));
    }
}
