//! Closed-form slope and speed bounds, Harder–Narasimhan arithmetic and
//! the three summary tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::best_known;
use crate::rational::{int, ratio, render_decimal, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad index sequence: {0}")]
    BadIndexSequence(String),
    #[error("invalid Harder-Narasimhan profile: {0}")]
    InvalidProfile(String),
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), BoundError> {
    if ok {
        Ok(())
    } else {
        Err(BoundError::PreconditionViolated(what()))
    }
}

fn r(n: i64) -> Rational {
    int(n)
}

fn g_i(g: u32) -> i64 {
    i64::from(g)
}

/// Names of the catalogued bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    SlopeLower,
    SlopeUpper,
    NonhypSlope,
    DoubleCoverSlope,
    Prop35Slope,
    LuzuoSlope,
    KodairaSpeed,
    ArakelovSpeed,
    LowBaseSpeed,
    NonhypSpeed,
    SkleinSpeed,
    TeichHypOneZero,
    TeichHypTwoZeros,
    TeichMax,
}

impl BoundName {
    pub const ALL: [BoundName; 14] = [
        BoundName::SlopeLower,
        BoundName::SlopeUpper,
        BoundName::NonhypSlope,
        BoundName::DoubleCoverSlope,
        BoundName::Prop35Slope,
        BoundName::LuzuoSlope,
        BoundName::KodairaSpeed,
        BoundName::ArakelovSpeed,
        BoundName::LowBaseSpeed,
        BoundName::NonhypSpeed,
        BoundName::SkleinSpeed,
        BoundName::TeichHypOneZero,
        BoundName::TeichHypTwoZeros,
        BoundName::TeichMax,
    ];

    /// Whether the bound can never be attained.
    pub fn strict(self) -> bool {
        matches!(self, BoundName::ArakelovSpeed | BoundName::NonhypSpeed)
    }
}

/// Parameters consumed by [`bound`]; each name reads the ones it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundParams {
    pub g: u32,
    pub gamma: Option<u32>,
    pub m: Option<u32>,
    pub s: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub name: BoundName,
    pub value: Rational,
    pub strict: bool,
}

pub fn slope_lower(g: u32) -> Result<Rational, BoundError> {
    require(g >= 2, || format!("g = {g} < 2"))?;
    Ok(ratio(4 * (g_i(g) - 1), g_i(g)))
}

pub fn slope_upper() -> Rational {
    r(12)
}

pub fn prop35_slope(g: u32) -> Result<Rational, BoundError> {
    require(g >= 3, || format!("g = {g} < 3"))?;
    Ok(ratio(9 * (g_i(g) - 1), 2 * g_i(g) + 1))
}

pub fn luzuo_slope(g: u32) -> Result<Rational, BoundError> {
    require(g >= 3, || format!("g = {g} < 3"))?;
    Ok(ratio(18 * (g_i(g) - 1), 4 * g_i(g) + 3))
}

pub fn double_cover_slope(g: u32, gamma: u32) -> Result<Rational, BoundError> {
    require(g >= 2 && gamma < g, || {
        format!("need g >= 2 and gamma < g (g = {g}, gamma = {gamma})")
    })?;
    Ok(ratio(4 * (g_i(g) - 1), g_i(g) - i64::from(gamma)))
}

/// Which lower bound for non-hyperelliptic slopes is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonhypClause {
    SlopeInequality,
    Genus3,
    Genus4,
    Genus5,
    DoubleCoverOrNot,
    LuZuo,
    LargeGenus,
}

impl fmt::Display for NonhypClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonhypClause::SlopeInequality => "general slope inequality 4(g-1)/g",
            NonhypClause::Genus3 => "non-hyperelliptic genus 3: 3",
            NonhypClause::Genus4 => "non-hyperelliptic genus 4: 24/7",
            NonhypClause::Genus5 => "non-hyperelliptic genus 5: 4",
            NonhypClause::DoubleCoverOrNot => "9(g-1)/(2g+1) for 3 <= g <= 12",
            NonhypClause::LuZuo => "Lu-Zuo 18(g-1)/(4g+3)",
            NonhypClause::LargeGenus => "4 for g > 12",
        })
    }
}

/// Every applicable lower bound for the slope of a non-hyperelliptic
/// fibration of genus `g`.
pub fn nonhyp_slope_clauses(g: u32) -> Result<Vec<(NonhypClause, Rational)>, BoundError> {
    require(g >= 3, || {
        format!("non-hyperelliptic fibrations need g >= 3, got {g}")
    })?;
    let mut out = vec![(NonhypClause::SlopeInequality, slope_lower(g)?)];
    match g {
        3 => out.push((NonhypClause::Genus3, r(3))),
        4 => out.push((NonhypClause::Genus4, ratio(24, 7))),
        5 => out.push((NonhypClause::Genus5, r(4))),
        _ => {}
    }
    if g <= 12 {
        out.push((NonhypClause::DoubleCoverOrNot, prop35_slope(g)?));
        out.push((NonhypClause::LuZuo, luzuo_slope(g)?));
    } else {
        out.push((NonhypClause::LargeGenus, r(4)));
    }
    Ok(out)
}

/// The strongest non-hyperelliptic slope bound and the clause giving it.
pub fn nonhyp_slope_with_clause(g: u32) -> Result<(Rational, NonhypClause), BoundError> {
    let clauses = nonhyp_slope_clauses(g)?;
    let (clause, value) = clauses
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1))
        .expect("at least one clause applies");
    Ok((value, clause))
}

pub fn nonhyp_slope(g: u32) -> Result<Rational, BoundError> {
    Ok(nonhyp_slope_with_clause(g)?.0)
}

/// Strict upper bound `2(2g-2)/λ_min` for non-hyperelliptic speed.
pub fn nonhyp_speed(g: u32) -> Result<Rational, BoundError> {
    Ok(r(2 * (2 * g_i(g) - 2)) / nonhyp_slope(g)?)
}

pub fn kodaira_speed(g: u32) -> Result<Rational, BoundError> {
    require(g >= 2, || format!("g = {g} < 2"))?;
    Ok(ratio(g_i(g) - 1, 3))
}

pub fn arakelov_speed(g: u32) -> Result<Rational, BoundError> {
    require(g >= 2, || format!("g = {g} < 2"))?;
    Ok(r(g_i(g)))
}

/// `g (1 - 1/(18m))`.
pub fn low_base_speed(g: u32, m: u32) -> Result<Rational, BoundError> {
    require(g >= 2 && m >= 1, || {
        format!("need g >= 2 and m >= 1 (g = {g}, m = {m})")
    })?;
    Ok(r(g_i(g)) * (r(1) - ratio(1, 18 * i64::from(m))))
}

/// `g - 2/(s-2)` for families over the projective line.
pub fn sklein_speed(g: u32, s: u32) -> Result<Rational, BoundError> {
    require(g >= 2, || format!("g = {g} < 2"))?;
    require(s >= 5, || format!("s = {s} < 5 singular fibers over P^1"))?;
    require((g * s).is_multiple_of(2), || {
        format!("g = {g} and s = {s} are both odd")
    })?;
    Ok(r(g_i(g)) - ratio(2, i64::from(s) - 2))
}

pub fn teich_hyp_one_zero(g: u32) -> Result<Rational, BoundError> {
    require(g >= 2, || format!("g = {g} < 2"))?;
    Ok(ratio(g_i(g) * g_i(g), 2 * g_i(g) - 1))
}

pub fn teich_hyp_two_zeros(g: u32) -> Result<Rational, BoundError> {
    require(g >= 2, || format!("g = {g} < 2"))?;
    Ok(ratio(g_i(g) + 1, 2))
}

pub fn teich_max(g: u32) -> Result<Rational, BoundError> {
    teich_hyp_two_zeros(g)
}

/// Catalog lookup by name.
pub fn bound(name: BoundName, p: &BoundParams) -> Result<Bound, BoundError> {
    let need = |v: Option<u32>, what: &str| {
        v.ok_or_else(|| BoundError::PreconditionViolated(format!("missing parameter {what}")))
    };
    let value = match name {
        BoundName::SlopeLower => slope_lower(p.g)?,
        BoundName::SlopeUpper => slope_upper(),
        BoundName::NonhypSlope => nonhyp_slope(p.g)?,
        BoundName::DoubleCoverSlope => double_cover_slope(p.g, need(p.gamma, "gamma")?)?,
        BoundName::Prop35Slope => prop35_slope(p.g)?,
        BoundName::LuzuoSlope => luzuo_slope(p.g)?,
        BoundName::KodairaSpeed => kodaira_speed(p.g)?,
        BoundName::ArakelovSpeed => arakelov_speed(p.g)?,
        BoundName::LowBaseSpeed => low_base_speed(p.g, need(p.m, "m")?)?,
        BoundName::NonhypSpeed => nonhyp_speed(p.g)?,
        BoundName::SkleinSpeed => sklein_speed(p.g, need(p.s, "s")?)?,
        BoundName::TeichHypOneZero => teich_hyp_one_zero(p.g)?,
        BoundName::TeichHypTwoZeros => teich_hyp_two_zeros(p.g)?,
        BoundName::TeichMax => teich_max(p.g)?,
    };
    Ok(Bound {
        name,
        value,
        strict: name.strict(),
    })
}

/// Smallest `m` with `s/(2g_C - 2 + s) >= 1/m`.
pub fn minimal_m(g_c: u32, s: u32) -> Result<u32, BoundError> {
    let base = 2 * i64::from(g_c) - 2 + i64::from(s);
    require(s >= 1 && base > 0, || {
        format!("need s >= 1 and 2g_C - 2 + s > 0 (g_C = {g_c}, s = {s})")
    })?;
    Ok(Integer::div_ceil(&base, &i64::from(s)) as u32)
}

/// Speed bound from a degree-`n` base change combined with the slope
/// inequality, once `s/(2g_C-2+s) >= 1/m`: `g (1 - (2n-9)/(2 n² m))`.
pub fn base_change_speed_bound(g: u32, m: u32, n: u32) -> Result<Rational, BoundError> {
    require(g >= 2 && m >= 1 && n >= 2, || {
        format!("need g >= 2, m >= 1, n >= 2 (g = {g}, m = {m}, n = {n})")
    })?;
    let n = i64::from(n);
    Ok(r(g_i(g)) * (r(1) - ratio(2 * n - 9, 2 * n * n * i64::from(m))))
}

/// Number of base-change degrees examined by [`optimize_base_change`].
/// Past `n = 9` the correction `(2n-9)/n²` only shrinks, so the scan is a
/// safety margin rather than a necessity.
pub const BASE_CHANGE_SCAN: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeOptimum {
    pub n: u32,
    pub bound: Rational,
}

/// Exact minimization of [`base_change_speed_bound`] over `2 <= n <= 256`.
pub fn optimize_base_change(g: u32, m: u32) -> Result<BaseChangeOptimum, BoundError> {
    let mut best: Option<BaseChangeOptimum> = None;
    for n in 2..=BASE_CHANGE_SCAN {
        let b = base_change_speed_bound(g, m, n)?;
        if best.as_ref().is_none_or(|cur| b < cur.bound) {
            best = Some(BaseChangeOptimum { n, bound: b });
        }
    }
    Ok(best.expect("scan range is nonempty"))
}

/// Whether the Castelnuovo bound admits a birational linear system of
/// degree `d` and dimension `r - 1` on a curve of genus `g`.
pub fn castelnuovo_holds(d: u32, r_: u32, g: u32) -> Result<bool, BoundError> {
    require(r_ >= 2 && r_ < g && d >= 1, || {
        format!("need 2 <= r <= g-1 and d >= 1 (d = {d}, r = {r_}, g = {g})")
    })?;
    let m = (d - 1) / (r_ - 1);
    if m == 0 {
        return Ok(false);
    }
    let (m, rr) = (i64::from(m), i64::from(r_));
    let rhs = ratio(g_i(g), m) + ratio((m + 1) * rr, 2) + ratio(m - 1, 2);
    Ok(r(i64::from(d)) >= rhs)
}

/// Slope data of the Harder–Narasimhan filtration of the Hodge bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnProfile {
    pub ranks: Vec<u32>,
    #[serde(with = "rational_vec")]
    pub slopes: Vec<Rational>,
    #[serde(default)]
    pub degrees: Option<Vec<i64>>,
}

mod rational_vec {
    use crate::rational::{parse_rational, Rational};
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(D::Error::custom))
            .collect()
    }
}

impl HnProfile {
    pub fn genus(&self) -> u32 {
        self.ranks.last().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn validate(&self) -> Result<(), BoundError> {
        let bad = |m: String| Err(BoundError::InvalidProfile(m));
        if self.ranks.is_empty() || self.ranks.len() != self.slopes.len() {
            return bad("ranks and slopes must be nonempty and of equal length".into());
        }
        if self.ranks[0] == 0 || self.ranks.windows(2).any(|w| w[0] >= w[1]) {
            return bad("ranks must be positive and strictly increasing".into());
        }
        if self.slopes.windows(2).any(|w| w[0] <= w[1]) {
            return bad("slopes must be strictly decreasing".into());
        }
        if self.slopes.last().is_some_and(Signed::is_negative) {
            return bad("last slope must be non-negative".into());
        }
        if let Some(d) = &self.degrees {
            let g = i64::from(self.genus());
            if d.len() != self.ranks.len() {
                return bad("one degree per filtration step is required".into());
            }
            if d.windows(2).any(|w| w[0] > w[1]) {
                return bad("degrees must be non-decreasing".into());
            }
            if d.last() != Some(&(2 * g - 2)) {
                return bad(format!("last degree must be 2g - 2 = {}", 2 * g - 2));
            }
        }
        Ok(())
    }

    fn slope_at(&self, i: usize) -> Rational {
        self.slopes.get(i).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `Σ r_i (μ_i - μ_{i+1})`, the degree of the Hodge bundle.
pub fn hn_chi(p: &HnProfile) -> Result<Rational, BoundError> {
    p.validate()?;
    Ok((0..p.len())
        .map(|i| r(i64::from(p.ranks[i])) * (p.slope_at(i) - p.slope_at(i + 1)))
        .sum())
}

/// Xiao's lower bound for `ω²` along the 1-based `indices`.
pub fn xiao_lower_bound(p: &HnProfile, indices: &[usize]) -> Result<Rational, BoundError> {
    p.validate()?;
    let degrees = p
        .degrees
        .as_ref()
        .ok_or_else(|| BoundError::PreconditionViolated("profile has no degrees".into()))?;
    let n = p.len();
    if indices.is_empty()
        || indices[0] == 0
        || indices.windows(2).any(|w| w[0] >= w[1])
        || *indices.last().unwrap() > n
    {
        return Err(BoundError::BadIndexSequence(format!(
            "{indices:?} is not strictly increasing within 1..={n}"
        )));
    }
    let g = i64::from(p.genus());
    let d = |i: usize| if i <= n { degrees[i - 1] } else { 2 * g - 2 };
    let mut total = Rational::zero();
    for (j, &i) in indices.iter().enumerate() {
        let next = indices.get(j + 1).copied().unwrap_or(n + 1);
        total += r(d(i) + d(next)) * (p.slope_at(i - 1) - p.slope_at(next - 1));
    }
    Ok(total)
}

/// One comparison of a claimed Lyapunov partial sum against the
/// Harder–Narasimhan polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonCheck {
    pub step: usize,
    pub polygon: Rational,
    pub claimed: Rational,
    pub ok: bool,
}

/// Checks `2 deg E_i / (2g_C - 2 + s) <= claimed[i]` with equality at the
/// last step. The factor 2 matches the normalization of the speed.
pub fn check_partial_sums(
    p: &HnProfile,
    g_c: u32,
    s: u32,
    claimed: &[Rational],
) -> Result<Vec<PolygonCheck>, BoundError> {
    p.validate()?;
    let base = 2 * i64::from(g_c) - 2 + i64::from(s);
    require(base > 0, || {
        format!("2g_C - 2 + s = {base} is not positive")
    })?;
    require(claimed.len() == p.len(), || {
        format!("expected {} claimed sums, got {}", p.len(), claimed.len())
    })?;
    let mut degree = Rational::zero();
    let mut previous_rank = 0u32;
    let mut out = Vec::new();
    for (i, ((rank, slope), claim)) in p.ranks.iter().zip(&p.slopes).zip(claimed).enumerate() {
        degree += r(i64::from(rank - previous_rank)) * slope;
        previous_rank = *rank;
        let polygon = &degree * r(2) / r(base);
        let last = i + 1 == p.len();
        let ok = if last {
            polygon == *claim
        } else {
            polygon <= *claim
        };
        out.push(PolygonCheck {
            step: i + 1,
            polygon,
            claimed: claim.clone(),
            ok,
        });
    }
    Ok(out)
}

/// A titled grid of exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub number: u8,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<Rational>)>,
}

impl Table {
    /// Cells rendered with three decimals, trailing zeros removed.
    pub fn decimal_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|(_, cells)| cells.iter().map(|c| render_decimal(c, 3)).collect())
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### Table {}: {}\n\n", self.number, self.title);
        out.push_str(&format!("| |{}|\n", self.columns.join("|")));
        out.push_str(&format!(
            "|---|{}|\n",
            vec!["---"; self.columns.len()].join("|")
        ));
        for (label, cells) in &self.rows {
            let decimals: Vec<String> = cells.iter().map(|c| render_decimal(c, 3)).collect();
            out.push_str(&format!("|{label}|{}|\n", decimals.join("|")));
            let exact: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("|{label} (exact)|{}|\n", exact.join("|")));
        }
        out
    }

    /// Long-form CSV, one line per cell, with a header line when asked.
    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("table,row,column,exact,decimal\n");
        }
        for (label, cells) in &self.rows {
            for (column, value) in self.columns.iter().zip(cells) {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    self.number,
                    csv_field(label),
                    csv_field(column),
                    value,
                    render_decimal(value, 3)
                ));
            }
        }
        out
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn genus_columns(range: std::ops::RangeInclusive<u32>) -> Vec<String> {
    range.map(|g| format!("g={g}")).collect()
}

/// Speed bounds for small base genus (rows `m = 1` and `m = 2`).
pub fn table1() -> Table {
    let row = |m| {
        (2..=8)
            .map(|g| low_base_speed(g, m).expect("g >= 2"))
            .collect()
    };
    Table {
        number: 1,
        title: "Upper bound of the speed for small base genus".into(),
        columns: genus_columns(2..=8),
        rows: vec![("g_C <= 1".into(), row(1)), ("g_C = 2".into(), row(2))],
    }
}

/// Strict speed bounds for non-hyperelliptic fibrations.
pub fn table2() -> Table {
    Table {
        number: 2,
        title: "Upper bound of speed for non-hyperelliptic fibrations".into(),
        columns: genus_columns(3..=11),
        rows: vec![(
            "L_f <".into(),
            (3..=11).map(|g| nonhyp_speed(g).expect("g >= 3")).collect(),
        )],
    }
}

/// Speeds of the best constructions.
pub fn table3() -> Table {
    Table {
        number: 3,
        title: "High speed examples of semi-stable fibrations".into(),
        columns: genus_columns(2..=9),
        rows: vec![(
            "L_f =".into(),
            (2..=9).map(|g| best_known(g).value).collect(),
        )],
    }
}

pub fn table(which: u8) -> Option<Table> {
    match which {
        1 => Some(table1()),
        2 => Some(table2()),
        3 => Some(table3()),
        _ => None,
    }
}

/// Integer floor of a rational (toward negative infinity).
pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonhyp_speed_examples() {
        assert_eq!(nonhyp_speed(3).unwrap(), ratio(8, 3));
        assert_eq!(nonhyp_speed(4).unwrap(), ratio(7, 2));
        assert_eq!(nonhyp_speed(5).unwrap(), r(4));
        assert_eq!(nonhyp_speed(7).unwrap(), ratio(20, 3));
        assert!(nonhyp_speed(2).is_err());
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(low_base_speed(2, 1).unwrap(), ratio(17, 9));
        assert_eq!(low_base_speed(5, 2).unwrap(), ratio(175, 36));
        assert_eq!(teich_hyp_one_zero(2).unwrap(), ratio(4, 3));
        assert_eq!(teich_hyp_two_zeros(2).unwrap(), ratio(3, 2));
        assert_eq!(sklein_speed(3, 6).unwrap(), ratio(5, 2));
        assert_eq!(sklein_speed(2, 5).unwrap(), ratio(4, 3));
        assert_eq!(sklein_speed(2, 6).unwrap(), ratio(3, 2));
        assert!(sklein_speed(3, 5).is_err());
        assert!(sklein_speed(2, 4).is_err());
        assert_eq!(double_cover_slope(7, 1).unwrap(), r(4));
        let b = bound(
            BoundName::ArakelovSpeed,
            &BoundParams {
                g: 5,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(b.strict);
        assert_eq!(b.value, r(5));
        assert!(bound(
            BoundName::LowBaseSpeed,
            &BoundParams {
                g: 3,
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn clause_consistency_at_genus_six() {
        assert_eq!(luzuo_slope(6).unwrap(), slope_lower(6).unwrap());
        assert_eq!(prop35_slope(6).unwrap(), ratio(45, 13));
        assert_eq!(
            nonhyp_slope_with_clause(6).unwrap().1,
            NonhypClause::DoubleCoverOrNot
        );
        assert_eq!(
            nonhyp_slope_with_clause(13).unwrap().1,
            NonhypClause::LargeGenus
        );
    }

    #[test]
    fn minimal_m_examples() {
        assert_eq!(minimal_m(0, 5).unwrap(), 1);
        for s in 1..20 {
            assert_eq!(minimal_m(1, s).unwrap(), 1);
        }
        assert_eq!(minimal_m(2, 2).unwrap(), 2);
        assert_eq!(minimal_m(2, 1).unwrap(), 3);
        assert!(minimal_m(0, 2).is_err());
    }

    #[test]
    fn hn_examples() {
        let p = HnProfile {
            ranks: vec![1, 2],
            slopes: vec![r(3), r(1)],
            degrees: None,
        };
        assert_eq!(hn_chi(&p).unwrap(), r(4));
        let single = HnProfile {
            ranks: vec![4],
            slopes: vec![ratio(5, 2)],
            degrees: Some(vec![6]),
        };
        assert_eq!(hn_chi(&single).unwrap(), r(10));
        assert_eq!(
            xiao_lower_bound(&single, &[1]).unwrap(),
            r(12) * ratio(5, 2)
        );
        let two = HnProfile {
            ranks: vec![1, 3],
            slopes: vec![r(5), r(2)],
            degrees: Some(vec![0, 4]),
        };
        assert_eq!(xiao_lower_bound(&two, &[1, 2]).unwrap(), r(4) * r(7));
        assert!(xiao_lower_bound(&two, &[2, 1]).is_err());
        assert!(xiao_lower_bound(&two, &[3]).is_err());
    }

    #[test]
    fn castelnuovo_examples() {
        // d = 2r - 1 never passes
        for g in 3..=20 {
            for rr in 2..g {
                assert!(!castelnuovo_holds(2 * rr - 1, rr, g).unwrap());
            }
        }
        // the canonical system (r = g, d = 2g - 2) lies outside the domain;
        // its hyperplane-section neighbour r = g - 1, d = 2g - 2 fails
        assert!(!castelnuovo_holds(8, 4, 5).unwrap());
        assert!(castelnuovo_holds(4, 3, 3).is_err());
    }

    #[test]
    fn optimizer_picks_nine() {
        let opt = optimize_base_change(7, 1).unwrap();
        assert_eq!(opt.n, 9);
        assert_eq!(opt.bound, low_base_speed(7, 1).unwrap());
    }

    #[test]
    fn partial_sums() {
        let p = HnProfile {
            ranks: vec![1, 3],
            slopes: vec![r(5), r(2)],
            degrees: None,
        };
        // deg E_1 = 5, deg E_2 = 5 + 2*2 = 9 = hn_chi
        assert_eq!(hn_chi(&p).unwrap(), r(9));
        let checks = check_partial_sums(&p, 0, 5, &[r(4), r(6)]).unwrap();
        assert!(checks.iter().all(|c| c.ok));
        let checks = check_partial_sums(&p, 0, 5, &[r(3), r(7)]).unwrap();
        assert!(!checks[0].ok && !checks[1].ok);
    }

    #[test]
    fn rendering() {
        let t = table2();
        assert_eq!(t.decimal_rows()[0].last().unwrap(), "10.222");
        assert!(t.to_markdown().contains("|L_f <|2.667|3.5|4|"));
        assert!(t
            .to_csv(true)
            .starts_with("table,row,column,exact,decimal\n2,L_f <,g=3,8/3,2.667\n"));
        assert_eq!(floor(&ratio(-7, 2)), BigInt::from(-4));
    }
}
