//! Simple-singularity labels.
//!
//! The label is read off two numbers: the multiplicity and the Milnor
//! number `μ = 2δ - r + 1`, where `δ` sums `m(m-1)/2` over the points of
//! the ordinary (strict-transform) resolution and `r` counts branches.
//! For simple singularities these determine the type, with the tangent
//! cone separating `D` from `E` at multiplicity three.

use std::fmt;

use serde::{Serialize, Serializer};

use super::blowup::blow_up;
use super::germ::Germ;
use super::resolve::{even_resolve, DEFAULT_MAX_DEPTH};
use super::univariate::{degree, is_square_free, render, split_rational_roots};
use super::GermError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Singularity {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    NonNegligible,
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Smooth => write!(f, "smooth"),
            Singularity::A(m) => write!(f, "A{m}"),
            Singularity::D(m) => write!(f, "D{m}"),
            Singularity::E6 => write!(f, "E6"),
            Singularity::E7 => write!(f, "E7"),
            Singularity::E8 => write!(f, "E8"),
            Singularity::NonNegligible => write!(f, "non-negligible"),
        }
    }
}

impl Serialize for Singularity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn delta_and_branches(g: &Germ, depth: u32) -> Result<(u64, u64), GermError> {
    let m = g.multiplicity();
    if m <= 1 {
        return Ok((0, u64::from(m)));
    }
    if depth >= DEFAULT_MAX_DEPTH {
        return Err(GermError::DepthOverflow {
            max_depth: DEFAULT_MAX_DEPTH,
        });
    }
    let t = blow_up(g, m);
    if !is_square_free(&t.irrational) {
        return Err(GermError::RequiresAlgebraicExtension {
            germ: g.to_string(),
            factor: render(&t.irrational),
        });
    }
    let mut delta = u64::from(m) * u64::from(m - 1) / 2;
    let mut branches = degree(&t.irrational) as u64;
    for p in &t.points {
        let (d, r) = delta_and_branches(&p.germ, depth + 1)?;
        delta += d;
        branches += r;
    }
    Ok((delta, branches))
}

/// Milnor number of a reduced germ.
pub fn milnor_number(g: &Germ) -> Result<u64, GermError> {
    let (delta, branches) = delta_and_branches(g, 0)?;
    Ok(2 * delta + 1 - branches)
}

fn has_triple_tangent(g: &Germ) -> bool {
    let cone = g.tangent_cone_restriction();
    match degree(&cone) {
        0 => true,
        3 => split_rational_roots(&cone)
            .roots
            .iter()
            .any(|(_, k)| *k == 3),
        _ => false,
    }
}

/// ADE label of a germ already known to be negligible.
pub(crate) fn ade_label(g: &Germ) -> Result<Singularity, GermError> {
    let m = g.multiplicity();
    if m <= 1 {
        return Ok(Singularity::Smooth);
    }
    if m > 3 {
        return Ok(Singularity::NonNegligible);
    }
    let mu = milnor_number(g)? as u32;
    Ok(match (m, has_triple_tangent(g), mu) {
        (2, _, mu) => Singularity::A(mu),
        (3, false, mu) => Singularity::D(mu),
        (3, true, 6) => Singularity::E6,
        (3, true, 7) => Singularity::E7,
        (3, true, 8) => Singularity::E8,
        _ => Singularity::NonNegligible,
    })
}

/// Classifies the singularity of `g` at the origin.
pub fn classify(g: &Germ) -> Result<Singularity, GermError> {
    if g.multiplicity() <= 1 {
        return Ok(Singularity::Smooth);
    }
    let trace = even_resolve(g, DEFAULT_MAX_DEPTH)?;
    if trace.max_multiplicity() >= 4 {
        return Ok(Singularity::NonNegligible);
    }
    ade_label(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(text: &str) -> Singularity {
        classify(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(label("y^2 + z^5"), Singularity::A(4));
        assert_eq!(label("y^2 - z^4"), Singularity::A(3));
        assert_eq!(label("y*z"), Singularity::A(1));
        assert_eq!(label("y^2*z + z^5"), Singularity::D(6));
        assert_eq!(label("y^2*z + z^3"), Singularity::D(4));
        assert_eq!(label("y^3 + z^4"), Singularity::E6);
        assert_eq!(label("y^3 + y*z^3"), Singularity::E7);
        assert_eq!(label("y^3 - z^5"), Singularity::E8);
        assert_eq!(label("y^8 - z^4"), Singularity::NonNegligible);
        assert_eq!(label("y - z^7"), Singularity::Smooth);
    }

    #[test]
    fn label_is_coordinate_free() {
        assert_eq!(label("z^3 + y^4"), Singularity::E6);
        assert_eq!(label("z^2*y + y^5"), Singularity::D(6));
        assert_eq!(label("3*y^2 - 12*z^6"), Singularity::A(5));
        // tangent line y = z
        assert_eq!(label("(y - z)*(y - z)*(y - z) + z^4"), Singularity::E6);
        assert_eq!(label("(y - z)*(y - z) - z^7"), Singularity::A(6));
    }

    #[test]
    fn two_branches_with_high_contact() {
        // z (z - y^3): two smooth branches with contact 3
        assert_eq!(label("z^2 - y^3*z"), Singularity::A(5));
    }

    #[test]
    fn milnor_numbers() {
        for (text, mu) in [
            ("y^2 - z^2", 1),
            ("y^3 - z^3", 4),
            ("y^4 - z^4", 9),
            ("y^3 - z^7", 12),
        ] {
            assert_eq!(milnor_number(&text.parse().unwrap()).unwrap(), mu, "{text}");
        }
    }
}
