//! Factories for the known high-speed families and the Beauville example.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datum::{CriticalFiber, GenusGDatum};
use crate::fibration::{FibrationError, FibrationInvariants};
use crate::germs::Germ;
use crate::hurwitz::BranchDatum;
use crate::rational::{int, ratio, serde_exact, serde_exact_opt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family} is not defined for g = {g}: {requirement}")]
    Domain {
        family: Family,
        g: u32,
        requirement: &'static str,
    },
    #[error("fiber genus 2g_C + n - 1 = {0} is below 2")]
    GenusTooSmall(i64),
    #[error("degree n = {0} < 2")]
    DegreeTooSmall(u32),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    OddGenus,
    Genus3,
    Genus2,
    Mod4One,
    Mod6One,
    EvenGenus,
    Mod4Zero,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::OddGenus,
        Family::Genus3,
        Family::Genus2,
        Family::Mod4One,
        Family::Mod6One,
        Family::EvenGenus,
        Family::Mod4Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::OddGenus => "odd_genus",
            Family::Genus3 => "genus3",
            Family::Genus2 => "genus2",
            Family::Mod4One => "mod4_1",
            Family::Mod6One => "mod6_1",
            Family::EvenGenus => "even_genus",
            Family::Mod4Zero => "mod4_0",
        }
    }

    pub fn admits(self, g: u32) -> bool {
        self.domain_check(g).is_ok()
    }

    fn domain_check(self, g: u32) -> Result<(), ConstructionError> {
        let (ok, requirement) = match self {
            Family::OddGenus => (g >= 3 && g % 2 == 1, "g odd and g >= 3"),
            Family::Genus3 => (g == 3, "g = 3"),
            Family::Genus2 => (g == 2, "g = 2"),
            Family::Mod4One => (g >= 5 && g % 4 == 1, "g = 1 mod 4 and g >= 5"),
            Family::Mod6One => (g >= 7 && g % 6 == 1, "g = 1 mod 6 and g >= 7"),
            Family::EvenGenus => (g >= 4 && g.is_multiple_of(2), "g even and g >= 4"),
            Family::Mod4Zero => (g >= 4 && g.is_multiple_of(4), "g = 0 mod 4 and g >= 4"),
        };
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::Domain {
                family: self,
                g,
                requirement,
            })
        }
    }

    pub fn build(self, g: u32) -> Result<Construction, ConstructionError> {
        self.domain_check(g)?;
        Ok(match self {
            Family::OddGenus | Family::Mod4Zero => four_to_one(self, g),
            Family::Genus3 => genus3(),
            Family::Genus2 => genus2(),
            Family::Mod4One => cyclic_base(self, g, 4),
            Family::Mod6One => cyclic_base(self, g, 6),
            Family::EvenGenus => even_genus_unchecked(g),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ConstructionError::UnknownFamily(s.to_string()))
    }
}

/// Values a factory promises; `None` where no closed form is stated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(with = "serde_exact")]
    pub chi: Rational,
    #[serde(with = "serde_exact")]
    pub speed: Rational,
    #[serde(with = "serde_exact_opt")]
    pub omega_sq: Option<Rational>,
    #[serde(with = "serde_exact_opt")]
    pub slope: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub family: Family,
    pub g: u32,
    pub datum: GenusGDatum,
    /// Branch datum of the base cover `b`.
    pub base_cover: BranchDatum,
    pub expected: Expected,
}

fn germ(text: &str) -> Germ {
    text.parse().expect("factory germs are well formed")
}

fn repeat(text: &str, count: u32) -> Vec<Germ> {
    vec![germ(text); count as usize]
}

fn datum(g: u32, g_c: u32, n: i64, fibers: Vec<CriticalFiber>) -> GenusGDatum {
    GenusGDatum {
        g,
        g_c,
        e: 0,
        n,
        declared_m: 0,
        simple_ramification: true,
        c0_in_branch: false,
        critical_fibers: fibers,
    }
}

/// Base cover `((4),(4),(2,2))` from an elliptic curve; used for odd genus
/// and for genus divisible by four.
fn four_to_one(family: Family, g: u32) -> Construction {
    let k = i64::from((g + 1) / 4);
    let gi = i64::from(g);
    let fibers = vec![
        CriticalFiber::new("b^-1(0)", repeat(&format!("y^{} - z^4", g + 1), 2)),
        CriticalFiber::new("b^-1(1)", repeat("y^2 - z^4", g + 1)),
        CriticalFiber::new("b^-1(inf)#1", repeat("y^2 - z^2", g + 1)),
        CriticalFiber::new("b^-1(inf)#2", repeat("y^2 - z^2", g + 1)),
    ];
    Construction {
        family,
        g,
        datum: datum(g, 1, 4, fibers),
        base_cover: BranchDatum::new(Some(1), 0, 4, vec![vec![4], vec![4], vec![2, 2]]),
        expected: Expected {
            chi: int(2 * gi - 2 * k),
            speed: int(gi - k),
            omega_sq: None,
            slope: None,
        },
    }
}

pub fn odd_genus(g: u32) -> Result<Construction, ConstructionError> {
    Family::OddGenus.build(g)
}

pub fn mod4_0(g: u32) -> Result<Construction, ConstructionError> {
    Family::Mod4Zero.build(g)
}

/// Genus 3 over a base of genus 1. The ruling fiber over `b^-1(0)` is part
/// of the branch divisor and passes through two resolution points of each
/// quadruple point, so its preimage is a double `(-2)`-curve: the datum
/// fails the semi-stability check, and `ω²` lands exactly on the canonical
/// class bound.
pub fn genus3() -> Construction {
    let fibers = vec![
        CriticalFiber::new("b^-1(0)", repeat("z*y^4 - z^4", 2)),
        CriticalFiber::new("b^-1(1)", repeat("y^2 - z^3", 4)),
        CriticalFiber::new("b^-1(inf)", repeat("y^2 - z^3", 4)),
    ];
    Construction {
        family: Family::Genus3,
        g: 3,
        datum: datum(3, 1, 4, fibers),
        base_cover: BranchDatum::new(Some(1), 0, 3, vec![vec![3], vec![3], vec![3]]),
        expected: Expected {
            chi: int(4),
            speed: ratio(8, 3),
            omega_sq: None,
            slope: None,
        },
    }
}

/// Genus 2 over a base of genus 2, again with the fiber over `b^-1(0)`
/// added to the branch divisor.
pub fn genus2() -> Construction {
    let fibers = vec![
        CriticalFiber::new("b^-1(0)", repeat("z*y^3 - z^6", 2)),
        CriticalFiber::new("b^-1(1)", repeat("y^2 - z^5", 3)),
        CriticalFiber::new("b^-1(inf)", repeat("y^2 - z^5", 3)),
    ];
    Construction {
        family: Family::Genus2,
        g: 2,
        datum: datum(2, 2, 6, fibers),
        base_cover: BranchDatum::new(Some(2), 0, 5, vec![vec![5], vec![5], vec![5]]),
        expected: Expected {
            chi: int(4),
            speed: ratio(8, 5),
            omega_sq: None,
            slope: None,
        },
    }
}

/// Base cover `z -> z^d` of the projective line, totally ramified over 0
/// and infinity; the `d` points over 1 carry only fiber tangencies.
fn cyclic_base(family: Family, g: u32, d: u32) -> Construction {
    let gi = i64::from(g);
    let di = i64::from(d);
    let q = gi / di;
    let mut fibers = vec![
        CriticalFiber::new("b^-1(0)", repeat(&format!("y^{} - z^{d}", g + 1), 2)),
        CriticalFiber::new("b^-1(inf)", repeat(&format!("y^2 - z^{d}"), g + 1)),
    ];
    for i in 1..=d {
        fibers.push(CriticalFiber::new(
            format!("b^-1(1)#{i}"),
            repeat("y^2 - z", g + 1),
        ));
    }
    // k(k-1) = d(d-2)/4 per multiplicity-d point, 2q such points
    let chi = int(di / 2 * gi - di * (di - 2) / 4 * q);
    Construction {
        family,
        g,
        datum: datum(g, 0, di, fibers),
        base_cover: BranchDatum::new(Some(0), 0, d, vec![vec![d], vec![d]]),
        expected: Expected {
            speed: int(gi - (di - 2) / 2 * q),
            chi,
            omega_sq: None,
            slope: None,
        },
    }
}

pub fn mod4_1(g: u32) -> Result<Construction, ConstructionError> {
    Family::Mod4One.build(g)
}

pub fn mod6_1(g: u32) -> Result<Construction, ConstructionError> {
    Family::Mod6One.build(g)
}

fn even_genus_unchecked(g: u32) -> Construction {
    let gi = i64::from(g);
    let top = format!("y^{} - z^{}", g + 1, g + 1);
    let tail = format!("y^2 - z^{}", 2 * g + 2);
    let fibers = vec![
        CriticalFiber::new("b^-1(0)#1", repeat(&top, 2)),
        CriticalFiber::new("b^-1(0)#2", repeat(&top, 2)),
        CriticalFiber::new("b^-1(1)", repeat(&tail, g + 1)),
        CriticalFiber::new("b^-1(inf)", repeat(&tail, g + 1)),
    ];
    Construction {
        family: Family::EvenGenus,
        g,
        datum: datum(g, g, 2 * gi + 2, fibers),
        base_cover: BranchDatum::new(
            Some(g),
            0,
            2 * g + 2,
            vec![vec![g + 1, g + 1], vec![2 * g + 2], vec![2 * g + 2]],
        ),
        expected: Expected {
            chi: ratio(gi * gi, 2) + int(2 * gi),
            speed: int(gi) - ratio(gi * gi - 2 * gi, 2 * gi + 2),
            omega_sq: Some(int(2 * gi * gi + 8 * gi - 12)),
            slope: Some(int(4) - ratio(24, gi * gi + 4 * gi)),
        },
    }
}

pub fn even_genus(g: u32) -> Result<Construction, ConstructionError> {
    Family::EvenGenus.build(g)
}

/// Fibration with fiber a degree-`n` cyclic cover of a genus `g_c` curve,
/// over the projective line with `branch_points + 2` singular fibers.
pub fn beauville(
    n: u32,
    g_c: u32,
    branch_points: u32,
) -> Result<FibrationInvariants, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::DegreeTooSmall(n));
    }
    let ni = i64::from(n);
    let g = 2 * i64::from(g_c) + ni - 1;
    if g < 2 {
        return Err(ConstructionError::GenusTooSmall(g));
    }
    let inv = FibrationInvariants::new(
        g as u32,
        0,
        branch_points + 2,
        int(g),
        int(8 - 4 * ni + 8 * (g - 1)),
    );
    debug_assert_eq!(inv.delta, int(4 + 4 * ni + 4 * (g - 1)));
    Ok(inv)
}

pub fn beauville_quartic() -> FibrationInvariants {
    beauville(4, 0, 3).expect("the quartic case is in range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestKnown {
    #[serde(with = "serde_exact")]
    pub value: Rational,
    pub family: Family,
}

/// Largest speed achieved by the families above in genus `g >= 2`.
pub fn best_known(g: u32) -> BestKnown {
    assert!(g >= 2, "best_known needs g >= 2");
    let gi = i64::from(g);
    let mut candidates = Vec::new();
    match g {
        2 => candidates.push((ratio(8, 5), Family::Genus2)),
        3 => candidates.push((ratio(8, 3), Family::Genus3)),
        _ if g % 2 == 1 => candidates.push((int(gi - (gi + 1) / 4), Family::OddGenus)),
        _ => {
            candidates.push((
                int(gi) - ratio(gi * gi - 2 * gi, 2 * gi + 2),
                Family::EvenGenus,
            ));
            if g.is_multiple_of(4) {
                candidates.push((int(gi - gi / 4), Family::Mod4Zero));
            }
        }
    }
    let (value, family) = candidates
        .into_iter()
        .max_by(|a, b| a.0.cmp(&b.0))
        .expect("every genus has a clause");
    BestKnown { value, family }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{invariants, validate};

    fn check(c: &Construction) {
        assert!(validate(&c.datum).is_empty(), "{} g={}", c.family, c.g);
        let r = invariants(&c.datum).unwrap();
        assert_eq!(
            r.semistable.passed(),
            c.family != Family::Genus3,
            "{} g={}: {:?}",
            c.family,
            c.g,
            r.semistable
        );
        assert_eq!(r.invariants.chi, c.expected.chi, "{} g={}", c.family, c.g);
        assert_eq!(
            r.speed.as_ref(),
            Some(&c.expected.speed),
            "{} g={}",
            c.family,
            c.g
        );
        if let Some(w) = &c.expected.omega_sq {
            assert_eq!(&r.invariants.omega_sq, w);
        }
        if let Some(l) = &c.expected.slope {
            assert_eq!(r.slope.as_ref(), Some(l));
        }
    }

    #[test]
    fn documented_examples() {
        let c = odd_genus(5).unwrap();
        check(&c);
        assert_eq!(c.expected.speed, int(4));
        let c = mod6_1(7).unwrap();
        check(&c);
        assert_eq!(
            (c.expected.chi.clone(), c.expected.speed.clone()),
            (int(15), int(5))
        );
        let c = even_genus(6).unwrap();
        check(&c);
        assert_eq!(c.expected.chi, int(30));
        assert_eq!(c.expected.speed, ratio(30, 7));
        let c = mod4_0(8).unwrap();
        check(&c);
        assert_eq!(c.expected.speed, int(6));
        check(&genus3());
        check(&genus2());
        check(&mod4_1(9).unwrap());
    }

    #[test]
    fn domains() {
        assert!(odd_genus(4).is_err());
        assert!(mod4_1(7).is_err());
        assert!(mod6_1(1).is_err());
        assert!(even_genus(2).is_err());
        assert!(mod4_0(6).is_err());
        assert_eq!("mod6_1".parse::<Family>().unwrap(), Family::Mod6One);
        assert!("mod5".parse::<Family>().is_err());
    }

    #[test]
    fn beauville_examples() {
        let q = beauville_quartic();
        assert_eq!((q.g, q.s), (3, 5));
        assert_eq!(
            (q.chi.clone(), q.omega_sq.clone(), q.delta.clone()),
            (int(3), int(8), int(28))
        );
        assert_eq!(q.slope().unwrap(), ratio(8, 3));
        assert_eq!(q.speed().unwrap(), int(2));
        assert_eq!(beauville(2, 0, 3), Err(ConstructionError::GenusTooSmall(1)));
        let b = beauville(4, 1, 3).unwrap();
        assert_eq!(
            (b.g, b.chi.clone(), b.omega_sq.clone(), b.delta.clone()),
            (5, int(5), int(24), int(36))
        );
        assert_eq!(b.slope().unwrap(), ratio(24, 5));
    }

    #[test]
    fn best_known_examples() {
        assert_eq!(best_known(9).value, int(7));
        assert_eq!(best_known(4).value, ratio(16, 5));
        assert_eq!(best_known(4).family, Family::EvenGenus);
        assert_eq!(best_known(8).family, Family::Mod4Zero);
        assert_eq!(best_known(2).value, ratio(8, 5));
    }
}
