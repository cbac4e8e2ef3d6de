//! Sampling and exact validation suites for a computed stratification:
//! partition of the loop space, frontier consistency, the scaling (local
//! contractibility) property, and the partial-order axioms.

use num::{BigInt, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    approach_possible, is_loop_point, matching_strata, LinearAction, LoopPoint, PointLabel,
    StratificationResult,
};
use crate::group::Angle;
use crate::linalg::Rational;

/// Outcome of one validation check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &str, detail: String) -> Self {
        Self { name: name.to_string(), passed: true, detail }
    }

    fn fail(name: &str, detail: String) -> Self {
        Self { name: name.to_string(), passed: false, detail }
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-6i64..=6);
    let den = rng.random_range(1i64..=3);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Deterministically sample loop points of the action: group elements (or
/// cell endpoints, midpoints, and small rational angles for the circle)
/// paired with rational grid points of their fixed subspaces.
pub fn sample_loop_points(action: &LinearAction, count: usize, seed: u64) -> Vec<LoopPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    match action {
        LinearAction::Finite(group) => {
            for _ in 0..count {
                let h = rng.random_range(0..group.order());
                let fix = group.fixed_subspace(h);
                let coeffs: Vec<Rational> =
                    (0..fix.dim()).map(|_| random_coefficient(&mut rng)).collect();
                let point = fix.point_from_coordinates(&coeffs);
                out.push(LoopPoint { label: PointLabel::Finite(h), point });
            }
        }
        LinearAction::Circle(circle) => {
            // Angle pool: special angles, arc midpoints, and random small
            // rationals.
            let special = circle.special_angles();
            let mut pool: Vec<Angle> = special.clone();
            for (i, a) in special.iter().enumerate() {
                let lo = a.value().clone();
                let hi = if i + 1 < special.len() {
                    special[i + 1].value().clone()
                } else {
                    Rational::one()
                };
                if lo < hi {
                    pool.push(Angle::midpoint(&lo, &hi));
                }
            }
            if pool.is_empty() {
                pool.push(Angle::zero());
            }
            for _ in 0..count {
                let t = if rng.random_range(0..4) == 0 {
                    // occasional fully random rational angle
                    let num = rng.random_range(0i64..12);
                    let den = rng.random_range(1i64..=12);
                    Angle::new(Rational::new(BigInt::from(num), BigInt::from(den)))
                } else {
                    pool[rng.random_range(0..pool.len())].clone()
                };
                let fix = circle.fixed_subspace(&t);
                let coeffs: Vec<Rational> =
                    (0..fix.dim()).map(|_| random_coefficient(&mut rng)).collect();
                let point = fix.point_from_coordinates(&coeffs);
                out.push(LoopPoint { label: PointLabel::Circle(t), point });
            }
        }
    }
    out
}

/// Classify one sampled loop point and cross-check its germ data against
/// the stratum label. Returns an error description on any mismatch.
pub fn classify_and_check(
    action: &LinearAction,
    result: &StratificationResult,
    point: &LoopPoint,
) -> Result<usize, String> {
    if !is_loop_point(action, &point.label, &point.point) {
        return Err(format!("sample {point:?} is not a loop point"));
    }
    let hits = matching_strata(action, &result.strata, &point.label, &point.point);
    if hits.len() != 1 {
        return Err(format!(
            "sample {:?} lies in {} strata ({:?})",
            point,
            hits.len(),
            hits
        ));
    }
    let id = hits[0];
    let stratum = &result.strata[id];
    // Germ data: the local fixed-space dimension must match the stratum
    // label (conjugation preserves dimensions).
    let local = super::local_isotropy(action, &point.point);
    let local_dim = match (&local, action) {
        (super::IsotropyGroup::Finite(k), LinearAction::Finite(group)) => {
            group.fixed_subspace_of_set(&k.members).dim()
        }
        (super::IsotropyGroup::Circle(k), LinearAction::Circle(circle)) => {
            circle.fixed_subspace_of(k).dim()
        }
        _ => return Err("action/label mismatch".into()),
    };
    if local_dim != stratum.isotropy.fixed_space.dim() {
        return Err(format!(
            "sample {:?}: local fixed-space dimension {} != stratum {}",
            point, local_dim, stratum.isotropy.fixed_space.dim()
        ));
    }
    if local.order() != stratum.isotropy.group.order() {
        return Err(format!(
            "sample {:?}: local isotropy order {:?} != stratum {:?}",
            point,
            local.order(),
            stratum.isotropy.group.order()
        ));
    }
    Ok(id)
}

/// Run the full validation suite.
pub fn validate_stratification(
    action: &LinearAction,
    result: &StratificationResult,
    samples: usize,
    seed: u64,
) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    // Partition: sampled loop points land in exactly one stratum, with
    // matching germ data.
    let points = sample_loop_points(action, samples, seed);
    let mut partition_failure = None;
    for p in &points {
        if let Err(e) = classify_and_check(action, result, p) {
            partition_failure = Some(e);
            break;
        }
    }
    out.push(match partition_failure {
        None => CheckOutcome::pass(
            "partition",
            format!("{} sampled loop points classified uniquely", points.len()),
        ),
        Some(e) => CheckOutcome::fail("partition", e),
    });

    // Partial order axioms on the closure order.
    let set: std::collections::BTreeSet<(usize, usize)> = result.order.iter().copied().collect();
    let mut po_failure = None;
    for &(p, q) in &set {
        if set.contains(&(q, p)) {
            po_failure = Some(format!("antisymmetry fails on ({p}, {q})"));
            break;
        }
    }
    if po_failure.is_none() {
        'outer: for &(p, q) in &set {
            for &(q2, r) in &set {
                if q == q2 && !set.contains(&(p, r)) {
                    po_failure = Some(format!("transitivity fails on ({p}, {q}, {r})"));
                    break 'outer;
                }
            }
        }
    }
    out.push(match po_failure {
        None => CheckOutcome::pass("partial-order", format!("{} relation pairs", set.len())),
        Some(e) => CheckOutcome::fail("partial-order", e),
    });

    // Frontier: the asserted order coincides with the exact approach test.
    let mut frontier_failure = None;
    'fr: for p in 0..result.strata.len() {
        for q in 0..result.strata.len() {
            if p == q {
                continue;
            }
            let asserted = set.contains(&(p, q));
            let possible = approach_possible(action, &result.strata, p, q);
            if asserted != possible {
                frontier_failure = Some(format!(
                    "strata ({p}, {q}): order says {asserted}, approach test says {possible}"
                ));
                break 'fr;
            }
        }
    }
    out.push(match frontier_failure {
        None => CheckOutcome::pass(
            "frontier",
            "closure order matches the exact approach oracle on all pairs".into(),
        ),
        Some(e) => CheckOutcome::fail("frontier", e),
    });

    // Local contractibility: scaling the vector coordinate by t in (0, 1]
    // preserves strata.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut lc_failure = None;
    'lc: for s in &result.strata {
        let mut scalars = vec![
            Rational::new(BigInt::one(), BigInt::from(2)),
            Rational::new(BigInt::from(2), BigInt::from(3)),
        ];
        let num = rng.random_range(1i64..=7);
        let den = rng.random_range(num..=8);
        scalars.push(Rational::new(BigInt::from(num), BigInt::from(den)));
        for t in scalars {
            let scaled: Vec<Rational> = s.witness.point.iter().map(|x| x * &t).collect();
            let hits = matching_strata(action, &result.strata, &s.witness.label, &scaled);
            if hits != vec![s.id] {
                lc_failure = Some(format!(
                    "stratum {}: scaling witness by {} leaves the stratum ({:?})",
                    s.id, t, hits
                ));
                break 'lc;
            }
        }
    }
    out.push(match lc_failure {
        None => CheckOutcome::pass(
            "local-contractibility",
            "witness scaling stays within each stratum".into(),
        ),
        Some(e) => CheckOutcome::fail("local-contractibility", e),
    });

    out
}
