//! Relative invariants of a fibration and the inequalities they must obey.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{int, serde_exact, serde_exact_opt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("slope undefined: deg of the Hodge bundle is zero (isotrivial)")]
    IsotrivialDivisionByZero,
    #[error("speed undefined: 2g_C - 2 + s = {0} is not positive")]
    NonHyperbolicBase(i64),
    #[error("c1^2 + c2 = {0} is not divisible by 12")]
    NonIntegralChi(Rational),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationInvariants {
    pub g: u32,
    #[serde(rename = "g_C")]
    pub g_c: u32,
    pub s: u32,
    #[serde(with = "serde_exact")]
    pub chi: Rational,
    #[serde(with = "serde_exact")]
    pub omega_sq: Rational,
    #[serde(with = "serde_exact")]
    pub delta: Rational,
    #[serde(default)]
    pub hyperelliptic: bool,
    #[serde(default = "yes")]
    pub semistable: bool,
}

fn yes() -> bool {
    true
}

impl FibrationInvariants {
    /// Record with `delta` filled in from Noether's formula.
    pub fn new(g: u32, g_c: u32, s: u32, chi: Rational, omega_sq: Rational) -> Self {
        let delta = noether_delta(&omega_sq, &chi);
        FibrationInvariants {
            g,
            g_c,
            s,
            chi,
            omega_sq,
            delta,
            hyperelliptic: false,
            semistable: true,
        }
    }

    /// `2g_C - 2 + s`.
    pub fn base_euler(&self) -> i64 {
        base_euler(self.g_c, self.s)
    }

    pub fn slope(&self) -> Result<Rational, FibrationError> {
        slope(self)
    }

    pub fn speed(&self) -> Result<Rational, FibrationError> {
        speed(self)
    }
}

pub fn base_euler(g_c: u32, s: u32) -> i64 {
    2 * i64::from(g_c) - 2 + i64::from(s)
}

/// `ω² / χ`.
pub fn slope(inv: &FibrationInvariants) -> Result<Rational, FibrationError> {
    if inv.chi.is_zero() {
        return Err(FibrationError::IsotrivialDivisionByZero);
    }
    Ok(&inv.omega_sq / &inv.chi)
}

/// `2χ / (2g_C - 2 + s)`.
pub fn speed(inv: &FibrationInvariants) -> Result<Rational, FibrationError> {
    speed_of(&inv.chi, inv.g_c, inv.s)
}

pub fn speed_of(chi: &Rational, g_c: u32, s: u32) -> Result<Rational, FibrationError> {
    let base = base_euler(g_c, s);
    if base <= 0 {
        return Err(FibrationError::NonHyperbolicBase(base));
    }
    Ok(chi * int(2) / int(base))
}

/// `δ = 12χ - ω²`.
pub fn noether_delta(omega_sq: &Rational, chi: &Rational) -> Rational {
    chi * int(12) - omega_sq
}

/// Relative invariants `(ω², χ, δ)` from the Chern numbers of the total
/// space.
pub fn relative_from_absolute(
    c1_sq: &Rational,
    c2: &Rational,
    g: u32,
    g_c: u32,
) -> Result<(Rational, Rational, Rational), FibrationError> {
    if g < 2 {
        return Err(FibrationError::PreconditionViolated(format!(
            "fiber genus {g} < 2"
        )));
    }
    let sum = c1_sq + c2;
    let chi_x = &sum / int(12);
    if !chi_x.is_integer() {
        return Err(FibrationError::NonIntegralChi(sum));
    }
    let twist = int((i64::from(g_c) - 1) * (i64::from(g) - 1));
    let omega_sq = c1_sq - &twist * int(8);
    let chi = chi_x - &twist;
    let delta = c2 - &twist * int(4);
    Ok((omega_sq, chi, delta))
}

/// Node count of a fiber: `g - g_geo + l - 1`.
pub fn fiber_delta(g: u32, g_geo: u32, l: u32) -> u32 {
    assert!(g_geo <= g && l >= 1, "need 0 <= g_geo <= g and l >= 1");
    g - g_geo + l - 1
}

pub fn is_compact_type(g: u32, g_geo: u32) -> bool {
    g_geo == g
}

/// Node data of one singular fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberNodeProfile {
    pub g: u32,
    pub g_geo: u32,
    pub l: u32,
    /// `delta_counts[i]` nodes of type `i`, for `i = 0..=g/2`.
    pub delta_counts: Vec<u32>,
}

impl FiberNodeProfile {
    /// Problems with the node count identity and the compact-type
    /// equivalences; empty when consistent.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.l == 0 || self.g_geo > self.g {
            out.push(format!(
                "need 0 <= g_geo <= g and l >= 1 (g={}, g_geo={}, l={})",
                self.g, self.g_geo, self.l
            ));
            return out;
        }
        if self.delta_counts.len() > (self.g / 2 + 1) as usize {
            out.push(format!("node types run past g/2 = {}", self.g / 2));
        }
        let total: u32 = self.delta_counts.iter().sum();
        let expected = fiber_delta(self.g, self.g_geo, self.l);
        if total != expected {
            out.push(format!(
                "node count {total} differs from g - g_geo + l - 1 = {expected}"
            ));
        }
        let non_separating = self.delta_counts.first().copied().unwrap_or(0);
        let compact = is_compact_type(self.g, self.g_geo);
        if (non_separating == 0) != compact {
            out.push(format!(
                "delta_0 = {non_separating} but g_geo = {} (g = {})",
                self.g_geo, self.g
            ));
        }
        if compact != (total == self.l - 1) {
            out.push("compact type must have exactly l - 1 nodes".to_string());
        }
        out
    }
}

/// Numbers `m_q` of (-2)-curves over the nodes of the stable model.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StableModelNodes(pub Vec<u32>);

impl StableModelNodes {
    /// `Σ 1/(m_q + 1)`.
    pub fn r_f(&self) -> Rational {
        self.0
            .iter()
            .map(|&m| Rational::new(BigInt::one(), BigInt::from(m + 1)))
            .sum()
    }

    /// `Σ (m_q + 1)`.
    pub fn delta_f(&self) -> u64 {
        self.0.iter().map(|&m| u64::from(m) + 1).sum()
    }
}

/// Local contribution `(m+1) - 1/(m+1)` of an `A_m` point.
pub fn nu_a(m: u32) -> Rational {
    int(i64::from(m) + 1) - Rational::new(BigInt::one(), BigInt::from(m + 1))
}

/// `(2g - 2)(2g_C - 2 + s)`, which `ω²` stays strictly below.
pub fn canonical_class_bound(g: u32, g_c: u32, s: u32) -> Rational {
    int(2 * i64::from(g) - 2) * int(base_euler(g_c, s))
}

/// Upper bound for `ω²` obtained by a degree-`n` base change.
pub fn omega_upper_bound(
    g: u32,
    g_c: u32,
    s: u32,
    r_f: &Rational,
    n: u32,
) -> Result<Rational, FibrationError> {
    if n == 0 {
        return Err(FibrationError::PreconditionViolated(
            "n must be >= 1".into(),
        ));
    }
    let n_r = int(i64::from(n));
    let admissible = int(2 * i64::from(g_c) - 2) + int(i64::from(n) - 1) * int(i64::from(s)) / &n_r;
    if admissible.is_negative() {
        return Err(FibrationError::PreconditionViolated(format!(
            "2g_C - 2 + (n-1)s/n = {admissible} < 0 for n = {n}"
        )));
    }
    let two_g_minus_two = int(2 * i64::from(g) - 2);
    Ok(
        canonical_class_bound(g, g_c, s) + int(3) * r_f / (&n_r * &n_r)
            - two_g_minus_two * int(i64::from(s)) / n_r,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub check: String,
    pub status: CheckStatus,
    #[serde(with = "serde_exact_opt")]
    pub lhs: Option<Rational>,
    #[serde(with = "serde_exact_opt")]
    pub rhs: Option<Rational>,
    pub strict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn get(&self, check: &str) -> Option<&AuditEntry> {
        self.checks.iter().find(|c| c.check == check)
    }

    fn compare(&mut self, check: &str, lhs: Rational, rhs: Rational, ok: bool, strict: bool) {
        self.checks.push(AuditEntry {
            check: check.to_string(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: Some(lhs),
            rhs: Some(rhs),
            strict,
            note: None,
        });
    }

    fn skip(&mut self, check: &str, strict: bool, why: &str) {
        self.checks.push(AuditEntry {
            check: check.to_string(),
            status: CheckStatus::Skipped,
            lhs: None,
            rhs: None,
            strict,
            note: Some(why.to_string()),
        });
    }
}

/// Runs every inequality that applies to the given data.
pub fn audit(
    inv: &FibrationInvariants,
    nodes: Option<&StableModelNodes>,
    profiles: &[FiberNodeProfile],
) -> AuditReport {
    let mut r = AuditReport::default();
    let g = i64::from(inv.g);
    let s = inv.s;

    let noether = noether_delta(&inv.omega_sq, &inv.chi);
    let ok = inv.delta == noether;
    r.compare("noether", inv.delta.clone(), noether, ok, false);

    r.compare(
        "chi_nonnegative",
        inv.chi.clone(),
        Rational::zero(),
        !inv.chi.is_negative(),
        false,
    );
    r.compare(
        "omega_sq_nonnegative",
        inv.omega_sq.clone(),
        Rational::zero(),
        !inv.omega_sq.is_negative(),
        false,
    );

    match slope(inv) {
        Ok(lambda) => {
            let lower = Rational::new(BigInt::from(4 * (g - 1)), BigInt::from(g));
            let ok = lambda >= lower;
            r.compare("slope_lower", lambda.clone(), lower, ok, false);
            let ok = lambda <= int(12);
            r.compare("slope_upper", lambda.clone(), int(12), ok, false);
            let ok = (lambda == int(12)) == (s == 0);
            r.compare("slope_twelve_iff_smooth", lambda, int(12), ok, false);
        }
        Err(_) => {
            for check in ["slope_lower", "slope_upper", "slope_twelve_iff_smooth"] {
                r.skip(check, false, "chi = 0");
            }
        }
    }

    let ok = inv.delta.is_zero() == (s == 0);
    r.compare(
        "delta_zero_iff_smooth",
        inv.delta.clone(),
        Rational::zero(),
        ok,
        false,
    );

    match speed(inv) {
        Ok(l) if inv.semistable => {
            let ok = l < int(g);
            r.compare("arakelov_strict", l, int(g), ok, true);
        }
        Ok(_) => r.skip("arakelov_strict", true, "not declared semi-stable"),
        Err(_) => r.skip("arakelov_strict", true, "2g_C - 2 + s <= 0"),
    }

    if s == 0 {
        r.skip("canonical_class_strict", true, "no singular fibers");
        match speed(inv) {
            Ok(l) => {
                let bound = int(g - 1) / int(3);
                let ok = l <= bound;
                r.compare("kodaira_speed", l, bound, ok, false);
            }
            Err(_) => r.skip("kodaira_speed", false, "2g_C - 2 <= 0"),
        }
    } else {
        if inv.semistable {
            let bound = canonical_class_bound(inv.g, inv.g_c, s);
            let ok = inv.omega_sq < bound;
            r.compare(
                "canonical_class_strict",
                inv.omega_sq.clone(),
                bound,
                ok,
                true,
            );
        } else {
            r.skip("canonical_class_strict", true, "not declared semi-stable");
        }
        r.skip("kodaira_speed", false, "has singular fibers");
    }

    if inv.g_c == 0 && s > 0 && inv.semistable && inv.chi.is_positive() {
        let ok = s >= 5;
        r.compare("min_singular_fibers", int(i64::from(s)), int(5), ok, false);
    } else {
        r.skip(
            "min_singular_fibers",
            false,
            "applies to non-isotrivial semi-stable families over P^1 with s > 0",
        );
    }

    match nodes {
        Some(nodes) => {
            let bound = int(3 * g - 3) * int(i64::from(s));
            let rf = nodes.r_f();
            let ok = rf <= bound;
            r.compare("r_f_bound", rf, bound, ok, false);
            let counted = Rational::from_integer(BigInt::from(nodes.delta_f()));
            let ok = counted == inv.delta;
            r.compare("node_delta", counted, inv.delta.clone(), ok, false);
        }
        None => {
            r.skip("r_f_bound", false, "no stable-model nodes given");
            r.skip("node_delta", false, "no stable-model nodes given");
        }
    }

    for (i, p) in profiles.iter().enumerate() {
        let problems = p.violations();
        let total: u32 = p.delta_counts.iter().sum();
        let expected = if p.l >= 1 && p.g_geo <= p.g {
            int(i64::from(fiber_delta(p.g, p.g_geo, p.l)))
        } else {
            int(-1)
        };
        r.checks.push(AuditEntry {
            check: format!("fiber_profile[{i}]"),
            status: if problems.is_empty() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: Some(int(i64::from(total))),
            rhs: Some(expected),
            strict: false,
            note: (!problems.is_empty()).then(|| problems.join("; ")),
        });
    }
    r
}

/// Input record for an audit: invariants plus optional node data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    #[serde(flatten)]
    pub invariants: FibrationInvariants,
    #[serde(default)]
    pub nodes: Option<StableModelNodes>,
    #[serde(default)]
    pub profiles: Vec<FiberNodeProfile>,
}

impl AuditRecord {
    pub fn audit(&self) -> AuditReport {
        audit(&self.invariants, self.nodes.as_ref(), &self.profiles)
    }
}
