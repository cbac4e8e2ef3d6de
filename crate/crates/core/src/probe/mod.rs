//! Numerical Whitney condition B probes on computed strata, plus quotient
//! probes through user-supplied invariant polynomials.
//!
//! Floating point is quarantined to this module: sample points are built
//! exactly (rational arithmetic, exact isotropy checks) and only converted
//! to doubles for the secant/tangent angle measurements. A failed probe is
//! reported as "no numerical evidence", never as a disproof.

use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ProbeError;
use crate::forms::Poly;
use crate::group::CircleSubgroup;
use crate::linalg::{to_f64, Rational, RationalSubspace};
use crate::strata::{
    witness_point, GroupPart, IsotropyGroup, LinearAction, PointLabel, StratificationResult,
    Stratum,
};

/// Configuration of one probe run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub base: usize,
    pub upper: usize,
    /// Defaults to the witness of the base stratum.
    pub base_point: Option<Vec<String>>,
    /// Scales 2^-first .. 2^-last (inclusive), strictly decreasing.
    pub scale_exponent_range: (u32, u32),
    pub samples_per_scale: usize,
    /// Tolerance on the measured angle at the finest scale.
    pub angle_tolerance: f64,
    pub seed: u64,
}

impl ProbeConfig {
    pub fn new(base: usize, upper: usize) -> Self {
        Self {
            base,
            upper,
            base_point: None,
            scale_exponent_range: (1, 20),
            samples_per_scale: 32,
            angle_tolerance: 1e-6,
            seed: 0,
        }
    }
}

/// One row of the per-scale report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaleRow {
    pub scale: String,
    pub max_angle: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail")]
pub enum ProbeVerdict {
    Pass,
    /// The probe did not exhibit the expected behavior; sampling cannot
    /// refute a limit statement, so this is not a disproof.
    NoNumericalEvidence(String),
}

/// Deterministic, seed-reproducible probe report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WhitneyReport {
    pub base: usize,
    pub upper: usize,
    pub seed: u64,
    pub flat: bool,
    pub angle_tolerance: f64,
    pub rows: Vec<ScaleRow>,
    pub verdict: ProbeVerdict,
    /// Largest tangent-frame reconstruction error for quotient probes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimation_residual: Option<f64>,
}

/// A list of polynomials asserted invariant under the action; invariance
/// is verified symbolically before any sampling.
#[derive(Clone, Debug)]
pub struct InvariantMap {
    pub polys: Vec<Poly>,
}

impl InvariantMap {
    /// Exact invariance check: composition with every group element for
    /// finite groups, vanishing derivative along the fundamental field for
    /// the circle.
    pub fn verify(&self, action: &LinearAction) -> Result<(), ProbeError> {
        for (index, p) in self.polys.iter().enumerate() {
            let invariant = match action {
                LinearAction::Finite(group) => (0..group.order()).all(|g| {
                    p.pullback_matrix(group.element(g))
                        .map(|q| q == *p)
                        .unwrap_or(false)
                }),
                LinearAction::Circle(circle) => {
                    let xi = crate::forms::fundamental_field(circle);
                    let mut lie = Poly::zero(p.ambient_dim(), 0);
                    for i in 0..p.ambient_dim() {
                        lie = lie.add(&p.partial(i).wedge(&xi[i]).expect("same dimension"));
                    }
                    lie.is_zero()
                }
            };
            if !invariant {
                return Err(ProbeError::NotInvariant { index });
            }
        }
        Ok(())
    }
}

/// Sampling data for one side of a probe: a sheet of a stratum through a
/// neighborhood of the base point.
struct Sheet {
    support: RationalSubspace,
    excluded: Vec<RationalSubspace>,
    /// Required exact isotropy of sample points.
    isotropy: SheetIsotropy,
    /// Angle offset directions (for arc strata): the open cell.
    arc: Option<(Rational, Rational)>,
    /// Fixed angle of the sheet (None only for arcs, which vary).
    fixed_angle: Option<PointLabel>,
}

enum SheetIsotropy {
    Finite(crate::group::Subgroup),
    Circle(CircleSubgroup),
}

fn sheet_for(
    action: &LinearAction,
    strata: &[Stratum],
    stratum_id: usize,
    base: &Stratum,
    base_point: &[Rational],
) -> Result<Sheet, ProbeError> {
    let s = &strata[stratum_id];
    match action {
        LinearAction::Finite(group) => {
            let PointLabel::Finite(hp) = base.witness.label else {
                return Err(ProbeError::BadBasePoint);
            };
            let GroupPart::FiniteElement(kq) = s.group_part else {
                return Err(ProbeError::BadBasePoint);
            };
            let IsotropyGroup::Finite(kk) = &s.isotropy.group else {
                return Err(ProbeError::BadBasePoint);
            };
            // A sheet of the (possibly saturated) piece through the base
            // point: transport by a group element matching the labels.
            let g = (0..group.order())
                .find(|&g| {
                    group.conjugate(g, kq) == hp
                        && s.isotropy
                            .fixed_space
                            .apply(group.element(g))
                            .contains_point(base_point)
                            .unwrap_or(false)
                })
                .ok_or(ProbeError::NotIncident { base: base.id, upper: stratum_id })?;
            Ok(Sheet {
                support: s.isotropy.fixed_space.apply(group.element(g)),
                excluded: s
                    .isotropy
                    .excluded
                    .iter()
                    .map(|e| e.apply(group.element(g)))
                    .collect(),
                isotropy: SheetIsotropy::Finite(group.conjugate_subgroup(g, kk)),
                arc: None,
                fixed_angle: Some(PointLabel::Finite(hp)),
            })
        }
        LinearAction::Circle(_) => {
            let IsotropyGroup::Circle(k) = &s.isotropy.group else {
                return Err(ProbeError::BadBasePoint);
            };
            let arc = match &s.group_part {
                GroupPart::CircleArc { lo, hi } => Some((lo.clone(), hi.clone())),
                GroupPart::CircleFull => Some((Rational::zero(), num::One::one())),
                _ => None,
            };
            let fixed_angle = match &s.group_part {
                GroupPart::CirclePoint(a) => Some(PointLabel::Circle(a.clone())),
                _ => None,
            };
            if !s
                .isotropy
                .fixed_space
                .contains_point(base_point)
                .unwrap_or(false)
            {
                return Err(ProbeError::NotIncident { base: base.id, upper: stratum_id });
            }
            Ok(Sheet {
                support: s.isotropy.fixed_space.clone(),
                excluded: s.isotropy.excluded.clone(),
                isotropy: SheetIsotropy::Circle(k.clone()),
                arc,
                fixed_angle,
            })
        }
    }
}

fn embed(action: &LinearAction, label: &PointLabel, x: &[Rational]) -> Vec<f64> {
    match (action, label) {
        (LinearAction::Finite(_), PointLabel::Finite(_)) => x.iter().map(to_f64).collect(),
        (LinearAction::Circle(_), PointLabel::Circle(t)) => {
            let theta = 2.0 * std::f64::consts::PI * to_f64(t.value());
            let mut v = vec![theta.cos(), theta.sin()];
            v.extend(x.iter().map(to_f64));
            v
        }
        _ => unreachable!("label kind matches action"),
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.random_range(-8i64..=8);
    let den = rng.random_range(1i64..=4);
    Rational::new(num.into(), den.into())
}

fn sample_sheet(
    action: &LinearAction,
    sheet: &Sheet,
    base_point: &[Rational],
    base_angle: &PointLabel,
    eps: &Rational,
    rng: &mut ChaCha8Rng,
) -> Option<(PointLabel, Vec<Rational>)> {
    // Direction inside the sheet support; fall back to the deterministic
    // witness when the random draw degenerates.
    for _attempt in 0..64 {
        let coeffs: Vec<Rational> =
            (0..sheet.support.dim()).map(|_| random_rational(rng)).collect();
        let mut dir = sheet.support.point_from_coordinates(&coeffs);
        if dir.iter().all(|c| c.is_zero()) {
            dir = witness_point(&sheet.support, &sheet.excluded);
        }
        let candidate: Vec<Rational> = base_point
            .iter()
            .zip(dir.iter())
            .map(|(b, d)| b + eps * d)
            .collect();
        // Exact isotropy check.
        let good = match (&sheet.isotropy, action) {
            (SheetIsotropy::Finite(k), LinearAction::Finite(group)) => {
                &group.stabilizer_of_point(&candidate) == k
            }
            (SheetIsotropy::Circle(k), LinearAction::Circle(circle)) => {
                &circle.isotropy_of_point(&candidate) == k
            }
            _ => false,
        };
        if !good {
            continue;
        }
        // Angle: fixed for point sheets, sampled inside the cell for arcs.
        let label = match (&sheet.fixed_angle, &sheet.arc) {
            (Some(l), _) => l.clone(),
            (None, Some((lo, hi))) => {
                let PointLabel::Circle(base_t) = base_angle else { return None };
                let width = hi - lo;
                let jitter = Rational::new(
                    rng.random_range(1i64..=4).into(),
                    8.into(),
                );
                // Walk in from the endpoint matching the base angle.
                let offset = eps * &width * &jitter;
                let t = if base_t.value() == lo {
                    lo + &offset
                } else {
                    hi - &offset
                };
                PointLabel::Circle(crate::group::Angle::new(t))
            }
            (None, None) => return None,
        };
        return Some((label, candidate));
    }
    None
}

fn tangent_frame(action: &LinearAction, sheet: &Sheet, label: &PointLabel) -> Vec<Vec<f64>> {
    let n = action.ambient_dim();
    let mut frame: Vec<Vec<f64>> = Vec::new();
    let offset = match action {
        LinearAction::Finite(_) => 0,
        LinearAction::Circle(_) => 2,
    };
    for row in sheet.support.basis() {
        let mut v = vec![0.0; n + offset];
        for (i, c) in row.iter().enumerate() {
            v[offset + i] = to_f64(c);
        }
        frame.push(v);
    }
    if offset == 2 && sheet.arc.is_some() {
        // The circle direction at the sampled angle.
        let PointLabel::Circle(t) = label else { return frame };
        let theta = 2.0 * std::f64::consts::PI * to_f64(t.value());
        let mut v = vec![0.0; n + offset];
        v[0] = -theta.sin();
        v[1] = theta.cos();
        frame.push(v);
    }
    frame
}

fn orthonormalize(frame: &[Vec<f64>]) -> (Vec<Vec<f64>>, f64) {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut residual = 0.0f64;
    for v in frame {
        let mut w = v.clone();
        let orig = norm(v);
        if orig == 0.0 {
            continue;
        }
        for b in &basis {
            let d = dot(&w, b);
            for (wi, bi) in w.iter_mut().zip(b.iter()) {
                *wi -= d * bi;
            }
        }
        let nw = norm(&w);
        if nw <= 1e-12 * orig.max(1.0) {
            residual = residual.max(nw / orig.max(1e-300));
            continue;
        }
        for wi in w.iter_mut() {
            *wi /= nw;
        }
        basis.push(w);
    }
    (basis, residual)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Distance from the unit secant direction to the tangent plane: the norm
/// of the component orthogonal to the (orthonormalized) tangent frame.
fn secant_angle(secant: &[f64], tangent_basis: &[Vec<f64>]) -> f64 {
    let n = norm(secant);
    if n == 0.0 {
        return 0.0;
    }
    let unit: Vec<f64> = secant.iter().map(|x| x / n).collect();
    let mut res = unit.clone();
    for b in tangent_basis {
        let d = dot(&res, b);
        for (ri, bi) in res.iter_mut().zip(b.iter()) {
            *ri -= d * bi;
        }
    }
    norm(&res)
}

fn resolve_base_point(
    action: &LinearAction,
    base: &Stratum,
    config: &ProbeConfig,
) -> Result<Vec<Rational>, ProbeError> {
    match &config.base_point {
        None => Ok(base.witness.point.clone()),
        Some(coords) => {
            let parsed: Result<Vec<Rational>, _> =
                coords.iter().map(|s| crate::linalg::parse_rational(s)).collect();
            let point = parsed.map_err(|_| ProbeError::BadBasePoint)?;
            if point.len() != action.ambient_dim() {
                return Err(ProbeError::BadBasePoint);
            }
            if !crate::strata::is_loop_point(action, &base.witness.label, &point) {
                return Err(ProbeError::BadBasePoint);
            }
            Ok(point)
        }
    }
}

fn check_config(result: &StratificationResult, config: &ProbeConfig) -> Result<(), ProbeError> {
    if config.base >= result.strata.len() || config.upper >= result.strata.len() {
        return Err(ProbeError::BadConfig("stratum id out of range".into()));
    }
    if !result.le(config.base, config.upper) {
        return Err(ProbeError::NotIncident { base: config.base, upper: config.upper });
    }
    if config.scale_exponent_range.0 > config.scale_exponent_range.1 {
        return Err(ProbeError::BadConfig("scale exponents must increase".into()));
    }
    if config.angle_tolerance <= 0.0 {
        return Err(ProbeError::BadConfig("tolerance must be positive".into()));
    }
    Ok(())
}

/// Probe Whitney condition B on an incident stratum pair: sample pairs of
/// points on both strata converging to the base point, measure the distance
/// of secant directions from the upper tangent planes per scale, and check
/// the trend against the tolerance.
pub fn probe_whitney_b(
    action: &LinearAction,
    result: &StratificationResult,
    config: &ProbeConfig,
) -> Result<WhitneyReport, ProbeError> {
    check_config(result, config)?;
    let base = &result.strata[config.base];
    let upper = &result.strata[config.upper];
    let base_point = resolve_base_point(action, base, config)?;

    let base_sheet = sheet_for(action, &result.strata, config.base, base, &base_point)?;
    let upper_sheet = sheet_for(action, &result.strata, config.upper, base, &base_point)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    let (lo_exp, hi_exp) = config.scale_exponent_range;
    for exp in lo_exp..=hi_exp {
        let eps = Rational::new(1.into(), num::BigInt::from(2u64).pow(exp));
        let mut max_angle = 0.0f64;
        let mut samples = 0usize;
        for _ in 0..config.samples_per_scale {
            let Some((label_a, point_a)) = sample_sheet(
                action,
                &base_sheet,
                &base_point,
                &base.witness.label,
                &eps,
                &mut rng,
            ) else {
                continue;
            };
            let Some((label_b, point_b)) = sample_sheet(
                action,
                &upper_sheet,
                &base_point,
                &base.witness.label,
                &eps,
                &mut rng,
            ) else {
                continue;
            };
            let ea = embed(action, &label_a, &point_a);
            let eb = embed(action, &label_b, &point_b);
            let secant: Vec<f64> = eb.iter().zip(ea.iter()).map(|(b, a)| b - a).collect();
            let frame = tangent_frame(action, &upper_sheet, &label_b);
            let (basis, _) = orthonormalize(&frame);
            max_angle = max_angle.max(secant_angle(&secant, &basis));
            samples += 1;
        }
        rows.push(ScaleRow { scale: format!("2^-{exp}"), max_angle, samples });
    }

    let verdict = trend_verdict(&rows, config.angle_tolerance);
    Ok(WhitneyReport {
        base: config.base,
        upper: config.upper,
        seed: config.seed,
        flat: upper.is_flat() && matches!(action, LinearAction::Finite(_) | LinearAction::Circle(_)),
        angle_tolerance: config.angle_tolerance,
        rows,
        verdict,
        estimation_residual: None,
    })
}

fn trend_verdict(rows: &[ScaleRow], tolerance: f64) -> ProbeVerdict {
    let Some(last) = rows.iter().rev().find(|r| r.samples > 0) else {
        return ProbeVerdict::NoNumericalEvidence("no samples drawn".into());
    };
    if last.max_angle > tolerance {
        return ProbeVerdict::NoNumericalEvidence(format!(
            "finest-scale angle {} exceeds tolerance {}",
            last.max_angle, tolerance
        ));
    }
    let first = rows.iter().find(|r| r.samples > 0).expect("some samples");
    if last.max_angle > first.max_angle + tolerance {
        return ProbeVerdict::NoNumericalEvidence("angles do not shrink with scale".into());
    }
    ProbeVerdict::Pass
}

/// Probe Whitney condition B for the images of the strata under an
/// invariant polynomial map (a chart of the quotient): tangents are
/// estimated by pushing exact tangent frames through the exact Jacobian
/// and orthonormalizing; the dropped-direction magnitude is reported as
/// the estimation residual.
pub fn probe_quotient_whitney(
    action: &LinearAction,
    result: &StratificationResult,
    inv: &InvariantMap,
    config: &ProbeConfig,
) -> Result<WhitneyReport, ProbeError> {
    inv.verify(action)?;
    check_config(result, config)?;
    let base = &result.strata[config.base];
    let upper = &result.strata[config.upper];
    if upper.group_part.is_interval() || base.group_part.is_interval() {
        return Err(ProbeError::BadConfig(
            "quotient probes need point-cell strata".into(),
        ));
    }
    let base_point = resolve_base_point(action, base, config)?;
    let base_sheet = sheet_for(action, &result.strata, config.base, base, &base_point)?;
    let upper_sheet = sheet_for(action, &result.strata, config.upper, base, &base_point)?;

    let n = action.ambient_dim();
    let polys = &inv.polys;
    let image = |x: &[Rational]| -> Vec<f64> {
        polys.iter().map(|p| to_f64(&p.eval(x))).collect()
    };
    // Exact Jacobian rows: partial derivatives of each polynomial.
    let partials: Vec<Vec<Poly>> = polys
        .iter()
        .map(|p| (0..n).map(|i| p.partial(i)).collect())
        .collect();
    let jacobian_at = |x: &[Rational]| -> Vec<Vec<Rational>> {
        partials
            .iter()
            .map(|row| row.iter().map(|q| q.eval(x)).collect())
            .collect()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    let mut worst_residual = 0.0f64;
    let (lo_exp, hi_exp) = config.scale_exponent_range;
    for exp in lo_exp..=hi_exp {
        let eps = Rational::new(1.into(), num::BigInt::from(2u64).pow(exp));
        let mut max_angle = 0.0f64;
        let mut samples = 0usize;
        for _ in 0..config.samples_per_scale {
            let Some((_, point_a)) = sample_sheet(
                action,
                &base_sheet,
                &base_point,
                &base.witness.label,
                &eps,
                &mut rng,
            ) else {
                continue;
            };
            let Some((_, point_b)) = sample_sheet(
                action,
                &upper_sheet,
                &base_point,
                &base.witness.label,
                &eps,
                &mut rng,
            ) else {
                continue;
            };
            let ia = image(&point_a);
            let ib = image(&point_b);
            let secant: Vec<f64> = ib.iter().zip(ia.iter()).map(|(b, a)| b - a).collect();
            // Pushforward frame at the upper sample.
            let jac = jacobian_at(&point_b);
            let frame: Vec<Vec<f64>> = upper_sheet
                .support
                .basis()
                .iter()
                .map(|v| {
                    jac.iter()
                        .map(|row| {
                            to_f64(
                                &row.iter()
                                    .zip(v.iter())
                                    .map(|(a, b)| a * b)
                                    .fold(Rational::zero(), |acc, t| acc + t),
                            )
                        })
                        .collect()
                })
                .collect();
            let (basis, residual) = orthonormalize(&frame);
            worst_residual = worst_residual.max(residual);
            max_angle = max_angle.max(secant_angle(&secant, &basis));
            samples += 1;
        }
        rows.push(ScaleRow { scale: format!("2^-{exp}"), max_angle, samples });
    }

    let verdict = trend_verdict(&rows, config.angle_tolerance);
    Ok(WhitneyReport {
        base: config.base,
        upper: config.upper,
        seed: config.seed,
        flat: false,
        angle_tolerance: config.angle_tolerance,
        rows,
        verdict,
        estimation_residual: Some(worst_residual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteMatrixGroup;
    use crate::linalg::RationalMatrix;
    use crate::strata::loop_strata;

    fn z2_line() -> LinearAction {
        LinearAction::Finite(
            FiniteMatrixGroup::close_generators(&[RationalMatrix::from_int_rows(&[&[-1]])], 4)
                .unwrap(),
        )
    }

    fn z2_plane() -> LinearAction {
        LinearAction::Finite(
            FiniteMatrixGroup::close_generators(
                &[RationalMatrix::from_int_rows(&[&[-1, 0], &[0, -1]])],
                4,
            )
            .unwrap(),
        )
    }

    fn find_edge(result: &StratificationResult) -> (usize, usize) {
        result.order[0]
    }

    #[test]
    fn flat_pair_measures_zero_angle() {
        let action = z2_line();
        let result = loop_strata(&action).unwrap();
        let (base, upper) = find_edge(&result);
        let mut config = ProbeConfig::new(base, upper);
        config.scale_exponent_range = (1, 10);
        config.samples_per_scale = 8;
        let report = probe_whitney_b(&action, &result, &config).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::Pass);
        for row in &report.rows {
            assert!(row.max_angle <= 1e-12, "flat strata give zero angles");
        }
    }

    #[test]
    fn non_incident_pair_is_an_error() {
        let action = z2_line();
        let result = loop_strata(&action).unwrap();
        // Stratum ids: 0 generic, then two origin strata; the two origin
        // strata are incomparable.
        let zero_dims: Vec<usize> = result
            .strata
            .iter()
            .filter(|s| s.dim == 0)
            .map(|s| s.id)
            .collect();
        let config = ProbeConfig::new(zero_dims[0], zero_dims[1]);
        assert!(matches!(
            probe_whitney_b(&action, &result, &config),
            Err(ProbeError::NotIncident { .. })
        ));
    }

    #[test]
    fn circle_arc_pair_passes_at_tolerance() {
        let action = LinearAction::Circle(
            crate::group::CircleWeightAction::new(vec![1, 2], 0).unwrap(),
        );
        let result = loop_strata(&action).unwrap();
        // Base: point cell at angle 0 over the origin; upper: an arc.
        let base = result
            .strata
            .iter()
            .find(|s| s.dim == 0 && matches!(&s.group_part, GroupPart::CirclePoint(a) if a.value().is_zero()))
            .unwrap()
            .id;
        let upper = result
            .strata
            .iter()
            .find(|s| matches!(s.group_part, GroupPart::CircleArc { .. }) && result.le(base, s.id))
            .unwrap()
            .id;
        let mut config = ProbeConfig::new(base, upper);
        config.samples_per_scale = 8;
        let report = probe_whitney_b(&action, &result, &config).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::Pass, "rows: {:?}", report.rows);
        assert!(!report.flat || report.rows.iter().all(|r| r.max_angle <= 1e-12));
    }

    #[test]
    fn seed_reproducibility_is_byte_exact() {
        let action = z2_plane();
        let result = loop_strata(&action).unwrap();
        let (base, upper) = find_edge(&result);
        let mut config = ProbeConfig::new(base, upper);
        config.seed = 42;
        config.scale_exponent_range = (1, 8);
        let a = probe_whitney_b(&action, &result, &config).unwrap();
        let b = probe_whitney_b(&action, &result, &config).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn quotient_probe_on_half_line() {
        // Z/2 on the line with p = x^2: image strata {0} and (0, inf).
        let action = z2_line();
        let result = loop_strata(&action).unwrap();
        let base = result
            .strata
            .iter()
            .find(|s| s.dim == 0 && matches!(s.group_part, GroupPart::FiniteElement(0)))
            .unwrap()
            .id;
        let upper = result.strata.iter().find(|s| s.dim == 1).unwrap().id;
        let p = crate::forms::parse_form("x^2", 1).unwrap();
        let inv = InvariantMap { polys: vec![p] };
        let config = ProbeConfig::new(base, upper);
        let report = probe_quotient_whitney(&action, &result, &inv, &config).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::Pass, "rows: {:?}", report.rows);
    }

    #[test]
    fn quotient_probe_on_cone() {
        // Z/2 = {+-1} on the plane with p = (x^2, xy, y^2): the image is a
        // cone; vertex under smooth part passes at 1e-6.
        let action = z2_plane();
        let result = loop_strata(&action).unwrap();
        let base = result
            .strata
            .iter()
            .find(|s| s.dim == 0 && matches!(s.group_part, GroupPart::FiniteElement(0)))
            .unwrap()
            .id;
        let upper = result.strata.iter().find(|s| s.dim == 2).unwrap().id;
        let polys = vec![
            crate::forms::parse_form("x^2", 2).unwrap(),
            crate::forms::parse_form("x y", 2).unwrap(),
            crate::forms::parse_form("y^2", 2).unwrap(),
        ];
        let inv = InvariantMap { polys };
        let config = ProbeConfig::new(base, upper);
        let report = probe_quotient_whitney(&action, &result, &inv, &config).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::Pass, "rows: {:?}", report.rows);
        assert!(report.estimation_residual.unwrap_or(1.0) <= 1e-6);
    }

    #[test]
    fn non_invariant_polynomial_is_rejected_exactly() {
        let action = z2_line();
        let result = loop_strata(&action).unwrap();
        let p = crate::forms::parse_form("x", 1).unwrap();
        let inv = InvariantMap { polys: vec![p] };
        let config = ProbeConfig::new(1, 0);
        assert!(matches!(
            probe_quotient_whitney(&action, &result, &inv, &config),
            Err(ProbeError::NotInvariant { index: 0 })
        ));
    }
}
