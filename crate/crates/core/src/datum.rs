//! Genus-g data on ruled surfaces: validation, invariants of the associated
//! double cover, and the semi-stability criterion.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fibration::{FibrationError, FibrationInvariants};
use crate::germs::{
    even_resolve_with, Direction, Germ, GermError, PointClass, ResolutionTrace, ResolveOptions,
    Singularity,
};
use crate::rational::{int, serde_exact_opt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("datum is invalid: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("in fiber {fiber}, germ {germ}: {source}")]
    Germ {
        fiber: String,
        germ: String,
        #[source]
        source: GermError,
    },
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalFiber {
    pub label: String,
    pub germs: Vec<Germ>,
}

impl CriticalFiber {
    pub fn new(label: impl Into<String>, germs: Vec<Germ>) -> Self {
        CriticalFiber {
            label: label.into(),
            germs,
        }
    }
}

fn yes() -> bool {
    true
}

/// Branch divisor data: bidegree `(2g+2, (g+1)e + n)` on a ruled surface
/// with invariant `e` over a base of genus `g_C`, plus the local germs of
/// the divisor in each critical fiber. Coordinates put the fiber at `z = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusGDatum {
    pub g: u32,
    #[serde(rename = "g_C")]
    pub g_c: u32,
    pub e: i64,
    pub n: i64,
    #[serde(default)]
    pub declared_m: u32,
    #[serde(default = "yes")]
    pub simple_ramification: bool,
    #[serde(default)]
    pub c0_in_branch: bool,
    pub critical_fibers: Vec<CriticalFiber>,
}

impl GenusGDatum {
    pub fn s(&self) -> u32 {
        self.critical_fibers.len() as u32
    }

    pub fn germs(&self) -> impl Iterator<Item = (&str, &Germ)> {
        self.critical_fibers
            .iter()
            .flat_map(|f| f.germs.iter().map(move |g| (f.label.as_str(), g)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Genus,
    Parity,
    RulingBound,
    NoCriticalFibers,
    EmptyFiber,
    UnmarkedFiber,
    GermOffOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

/// A smooth germ tangent to the fiber `z = 0`; marks a fiber whose only
/// special feature is a tangency of the branch divisor.
pub fn is_fiber_tangency(g: &Germ) -> bool {
    g.multiplicity() == 1 && g.fiber_contact_order().is_none_or(|c| c >= 2)
}

pub fn validate(d: &GenusGDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind, message: String| out.push(Violation { kind, message });
    if d.g < 2 {
        push(ViolationKind::Genus, format!("fiber genus g = {} < 2", d.g));
    }
    let g1 = i64::from(d.g) + 1;
    let vertical = g1 * d.e + d.n;
    if vertical % 2 != 0 {
        push(
            ViolationKind::Parity,
            format!("(g+1)e + n = {vertical} is odd, so the branch divisor is not even"),
        );
    }
    let within = d.e * g1 <= d.n;
    let with_section = d.c0_in_branch && d.e * i64::from(d.g) <= d.n;
    if !within && !with_section {
        push(
            ViolationKind::RulingBound,
            if d.c0_in_branch {
                format!("e = {} exceeds n/g = {}/{}", d.e, d.n, d.g)
            } else {
                format!("e ≤ n/(g+1) fails: e = {} > {}/{}", d.e, d.n, g1)
            },
        );
    }
    if d.critical_fibers.is_empty() {
        push(
            ViolationKind::NoCriticalFibers,
            "no critical fibers (s = 0)".into(),
        );
    }
    for fiber in &d.critical_fibers {
        if fiber.germs.is_empty() {
            push(
                ViolationKind::EmptyFiber,
                format!("critical fiber {} lists no germs", fiber.label),
            );
            continue;
        }
        for g in &fiber.germs {
            if !g.vanishes_at_origin() {
                push(
                    ViolationKind::GermOffOrigin,
                    format!(
                        "germ {g} in fiber {} does not pass through the origin",
                        fiber.label
                    ),
                );
            }
        }
        let marked = fiber
            .germs
            .iter()
            .any(|g| g.multiplicity() >= 2 || is_fiber_tangency(g));
        if !marked {
            push(
                ViolationKind::UnmarkedFiber,
                format!(
                    "critical fiber {} has neither a singular germ nor a fiber tangency",
                    fiber.label
                ),
            );
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermSummary {
    pub fiber: String,
    pub germ: Germ,
    pub multiplicities: Vec<u32>,
    pub classification: Singularity,
    pub sum_k_km1: u64,
    pub sum_km1_sq: u64,
    pub trace: ResolutionTrace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemistableVerdict {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl SemistableVerdict {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// A critical fiber that is itself a component of the branch divisor.
///
/// Its strict transform `F` is blown up once for every resolution point it
/// passes through, and the double cover maps a curve `F'` with
/// `2F' = π*F` onto it, so `F'² = F²/2`. A `(-1)`-curve contracts away;
/// anything more negative stays as a double component of the fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchFiber {
    pub label: String,
    pub strict_self_intersection: i64,
    pub preimage_self_intersection: i64,
}

impl BranchFiber {
    pub fn contractible(&self) -> bool {
        self.preimage_self_intersection == -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumInvariantsReport {
    /// Declared intersection of the branch divisor with a general fiber.
    pub r_dot_gamma: u32,
    pub germs: Vec<GermSummary>,
    pub branch_fibers: Vec<BranchFiber>,
    /// Vertical `(-1)`-curves found over branch fibers; informational, the
    /// formulas use `declared_m`.
    pub detected_vertical_curves: u32,
    pub sum_k_km1: u64,
    pub sum_km1_sq: u64,
    pub invariants: FibrationInvariants,
    #[serde(with = "serde_exact_opt")]
    pub slope: Option<Rational>,
    #[serde(with = "serde_exact_opt")]
    pub speed: Option<Rational>,
    pub semistable: SemistableVerdict,
}

fn label_of(trace: &ResolutionTrace, germ: &Germ) -> Singularity {
    if germ.multiplicity() <= 1 {
        return Singularity::Smooth;
    }
    match trace.points.first().map(|p| p.classification) {
        Some(PointClass::A(m)) => Singularity::A(m),
        Some(PointClass::D(m)) => Singularity::D(m),
        Some(PointClass::E6) => Singularity::E6,
        Some(PointClass::E7) => Singularity::E7,
        Some(PointClass::E8) => Singularity::E8,
        _ => Singularity::NonNegligible,
    }
}

fn contains_fiber(g: &Germ) -> bool {
    g.fiber_contact_order().is_none()
}

/// Number of trace points lying on the strict transform of the fiber
/// `z = 0`, which stays `{z = 0}` in the chart of direction 0.
fn fiber_points(trace: &ResolutionTrace) -> i64 {
    let Some(root) = trace.points.first() else {
        return 0;
    };
    if !contains_fiber(&root.germ) {
        return 0;
    }
    let mut count = 1;
    let mut at = 0;
    while let Some(next) = trace.children(at).find(|&c| {
        let p = &trace.points[c];
        p.direction == Some(Direction::Finite(Rational::zero())) && contains_fiber(&p.germ)
    }) {
        count += 1;
        at = next;
    }
    count
}

fn branch_fibers(d: &GenusGDatum, germs: &[GermSummary]) -> Vec<BranchFiber> {
    d.critical_fibers
        .iter()
        .filter(|f| f.germs.iter().any(contains_fiber))
        .map(|f| {
            let hits: i64 = germs
                .iter()
                .filter(|s| s.fiber == f.label && contains_fiber(&s.germ))
                .map(|s| fiber_points(&s.trace))
                .sum();
            BranchFiber {
                label: f.label.clone(),
                strict_self_intersection: -hits,
                preimage_self_intersection: -hits / 2,
            }
        })
        .collect()
}

/// Invariants at the default depth cap.
pub fn invariants(d: &GenusGDatum) -> Result<DatumInvariantsReport, DatumError> {
    invariants_with(d, &ResolveOptions::default())
}

pub fn invariants_with(
    d: &GenusGDatum,
    options: &ResolveOptions,
) -> Result<DatumInvariantsReport, DatumError> {
    let violations = validate(d);
    if !violations.is_empty() {
        return Err(DatumError::Invalid(violations));
    }
    // the same germ tends to appear many times in one datum
    let mut cache: HashMap<&Germ, ResolutionTrace> = HashMap::new();
    let mut germs = Vec::new();
    for (fiber, germ) in d.germs() {
        let trace = match cache.get(germ) {
            Some(t) => t.clone(),
            None => {
                let t = even_resolve_with(germ, options).map_err(|source| DatumError::Germ {
                    fiber: fiber.to_string(),
                    germ: germ.to_string(),
                    source,
                })?;
                cache.insert(germ, t.clone());
                t
            }
        };
        germs.push(GermSummary {
            fiber: fiber.to_string(),
            germ: germ.clone(),
            multiplicities: trace.multiplicities(),
            classification: label_of(&trace, germ),
            sum_k_km1: trace.sum_k_km1(),
            sum_km1_sq: trace.sum_km1_sq(),
            trace,
        });
    }
    let branch_fibers = branch_fibers(d, &germs);
    let detected_vertical_curves = branch_fibers.iter().filter(|b| b.contractible()).count() as u32;
    let sum_k_km1: u64 = germs.iter().map(|s| s.sum_k_km1).sum();
    let sum_km1_sq: u64 = germs.iter().map(|s| s.sum_km1_sq).sum();
    let g = i64::from(d.g);
    let chi = (int(g) * int(d.n) - int(sum_k_km1 as i64)) / int(2);
    let omega_sq =
        int((2 * g - 2) * d.n) - int(2 * sum_km1_sq as i64) - int(i64::from(d.declared_m));
    let mut inv = FibrationInvariants::new(d.g, d.g_c, d.s(), chi, omega_sq);
    inv.hyperelliptic = true;
    let mut report = DatumInvariantsReport {
        r_dot_gamma: 2 * d.g + 2,
        germs,
        branch_fibers,
        detected_vertical_curves,
        sum_k_km1,
        sum_km1_sq,
        slope: inv.slope().ok(),
        speed: Some(inv.speed()?),
        invariants: inv,
        semistable: SemistableVerdict {
            verdict: Verdict::Pass,
            reasons: Vec::new(),
        },
    };
    report.semistable = semistable_check(&report, d);
    report.invariants.semistable = report.semistable.passed();
    Ok(report)
}

/// Passes when simple ramification is declared, every negligible cluster
/// met during the resolutions is of type A, and no fiber of the branch
/// divisor leaves a double component behind.
pub fn semistable_check(report: &DatumInvariantsReport, d: &GenusGDatum) -> SemistableVerdict {
    let mut reasons = Vec::new();
    if !d.simple_ramification {
        reasons.push("declared non-simple ramification".to_string());
    }
    for summary in &report.germs {
        for p in &summary.trace.points {
            if p.classification.is_ade() && !p.classification.is_a() {
                reasons.push(format!(
                    "germ {} in fiber {} has a {} cluster at depth {} ({})",
                    summary.germ, summary.fiber, p.classification, p.depth, p.germ
                ));
            }
        }
        if !summary.trace.terminal_smooth {
            reasons.push(format!(
                "germ {} in fiber {} was not resolved within the depth cap",
                summary.germ, summary.fiber
            ));
        }
    }
    for b in &report.branch_fibers {
        if !b.contractible() {
            reasons.push(format!(
                "fiber {} lies in the branch divisor and leaves a double component of self-intersection {}",
                b.label, b.preimage_self_intersection
            ));
        }
    }
    SemistableVerdict {
        verdict: if reasons.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn germ(text: &str) -> Germ {
        text.parse().unwrap()
    }

    fn datum(g: u32, e: i64, n: i64, c0: bool) -> GenusGDatum {
        GenusGDatum {
            g,
            g_c: 1,
            e,
            n,
            declared_m: 0,
            simple_ramification: true,
            c0_in_branch: c0,
            critical_fibers: vec![CriticalFiber::new("b^-1(0)", vec![germ("y^2 - z^4")])],
        }
    }

    fn kinds(d: &GenusGDatum) -> Vec<ViolationKind> {
        validate(d).into_iter().map(|v| v.kind).collect()
    }

    #[test]
    fn validation_examples() {
        assert!(kinds(&datum(3, 0, 4, false)).is_empty());
        assert!(kinds(&datum(3, 1, 4, false)).is_empty());
        assert_eq!(
            kinds(&datum(3, 1, 3, false)),
            [ViolationKind::Parity, ViolationKind::RulingBound]
        );
        assert_eq!(kinds(&datum(3, 2, 4, false)), [ViolationKind::RulingBound]);
        assert!(kinds(&datum(2, 2, 6, true)).is_empty());
        let mut empty = datum(3, 0, 4, false);
        empty
            .critical_fibers
            .push(CriticalFiber::new("b^-1(1)", vec![]));
        empty
            .critical_fibers
            .push(CriticalFiber::new("b^-1(2)", vec![germ("y - z")]));
        assert_eq!(
            kinds(&empty),
            [ViolationKind::EmptyFiber, ViolationKind::UnmarkedFiber]
        );
    }

    #[test]
    fn tangency_markers() {
        assert!(is_fiber_tangency(&germ("y^2 - z")));
        assert!(!is_fiber_tangency(&germ("y - z^2")));
        assert!(!is_fiber_tangency(&germ("y^2 - z^2")));
    }

    #[test]
    fn genus_three_odd_datum() {
        let mut d = datum(3, 0, 4, false);
        d.critical_fibers = vec![
            CriticalFiber::new("b^-1(0)", vec![germ("y^4 - z^4"); 2]),
            CriticalFiber::new("b^-1(1)", vec![germ("y^2 - z^4"); 4]),
            CriticalFiber::new("b^-1(inf)#1", vec![germ("y^2 - z^2"); 4]),
            CriticalFiber::new("b^-1(inf)#2", vec![germ("y^2 - z^2"); 4]),
        ];
        let r = invariants(&d).unwrap();
        assert_eq!(r.invariants.chi, int(4));
        assert_eq!(r.speed, Some(int(2)));
        assert!(r.semistable.passed());
        assert_eq!(
            r.invariants.delta,
            int(12) * int(4) - &r.invariants.omega_sq
        );
    }

    #[test]
    fn semistability_boundary() {
        let mut d = datum(6, 0, 4, false);
        d.critical_fibers = vec![CriticalFiber::new("b^-1(0)", vec![germ("y^7 - z^4")])];
        let r = invariants(&d).unwrap();
        assert!(!r.semistable.passed());
        assert!(r.semistable.reasons[0].contains("E6"));

        let mut d = datum(8, 0, 4, false);
        d.critical_fibers = vec![CriticalFiber::new("b^-1(0)", vec![germ("y^9 - z^4")])];
        let r = invariants(&d).unwrap();
        assert_eq!(r.germs[0].multiplicities, [4, 4]);
        assert!(r.semistable.passed());

        d.simple_ramification = false;
        let r = invariants(&d).unwrap();
        assert_eq!(r.semistable.reasons, ["declared non-simple ramification"]);
    }

    #[test]
    fn fibers_inside_the_branch_divisor() {
        let mut d = datum(2, 2, 6, false);
        d.critical_fibers = vec![CriticalFiber::new("b^-1(0)", vec![germ("z*y^3 - z^6"); 2])];
        let r = invariants(&d).unwrap();
        assert_eq!(r.branch_fibers[0].strict_self_intersection, -2);
        assert_eq!(r.detected_vertical_curves, 1);
        assert!(r.semistable.passed());

        // the extra node on the fiber makes its preimage a double (-2)-curve
        let mut d = datum(3, 1, 4, false);
        d.critical_fibers = vec![CriticalFiber::new("b^-1(0)", vec![germ("z*y^4 - z^4"); 2])];
        let r = invariants(&d).unwrap();
        assert_eq!(r.branch_fibers[0].preimage_self_intersection, -2);
        assert_eq!(r.detected_vertical_curves, 0);
        assert!(r.semistable.reasons[0].contains("double component"));
    }

    #[test]
    fn declared_m_lowers_omega_only() {
        let mut d = datum(3, 0, 4, false);
        let base = invariants(&d).unwrap();
        d.declared_m = 2;
        let r = invariants(&d).unwrap();
        assert_eq!(r.invariants.chi, base.invariants.chi);
        assert_eq!(r.invariants.omega_sq, &base.invariants.omega_sq - int(2));
        assert_eq!(base.slope, Some(ratio(16, 6)));
    }

    #[test]
    fn invalid_datum_is_rejected() {
        assert!(matches!(
            invariants(&datum(3, 1, 3, false)),
            Err(DatumError::Invalid(_))
        ));
    }

    #[test]
    fn json_schema() {
        let text = r#"{"g":3,"g_C":1,"e":0,"n":4,"declared_m":0,"simple_ramification":true,"c0_in_branch":false,
            "critical_fibers":[{"label":"b^-1(0)","germs":["y^4 - z^4","y^4 - z^4"]}]}"#;
        let d: GenusGDatum = serde_json::from_str(text).unwrap();
        assert_eq!(d.s(), 1);
        let back: GenusGDatum = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<GenusGDatum>(
            r#"{"g":3,"g_C":1,"e":0,"n":4,"critical_fibers":[{"label":"x","germs":["y^^2"]}]}"#
        )
        .is_err());
    }
}
