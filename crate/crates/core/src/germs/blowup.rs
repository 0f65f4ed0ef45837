use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::germ::{add_term, Germ, Terms};
use super::univariate::{degree, is_square_free, render, split_rational_roots};
use super::GermError;
use crate::rational::Rational;

/// A point of the exceptional line, written in the affine coordinate
/// `v = z/y` of the first chart.
///
/// The derived order (finite values ascending, then infinity, then
/// non-rational roots) is the order in which children appear in traces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Finite(Rational),
    Infinity,
    /// One of the simple roots of an irreducible-over-the-rationals factor
    /// of the tangent cone. Roots are indistinguishable over the rationals,
    /// so `index` only tells them apart.
    Conjugate {
        polynomial: Vec<BigInt>,
        index: usize,
    },
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Finite(r) => write!(f, "{r}"),
            Direction::Infinity => write!(f, "inf"),
            Direction::Conjugate { polynomial, index } => {
                write!(f, "root {} of {}", index + 1, render(polynomial))
            }
        }
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A non-smooth point of an even transform, with the germ there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowUp {
    pub direction: Direction,
    pub germ: Germ,
}

/// Full record of one even blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenBlowUp {
    pub multiplicity: u32,
    /// Exponent of the exceptional line in the total transform.
    pub total_exceptional_exponent: u32,
    /// Exponent left in the even transform (0 or 1).
    pub even_exceptional_exponent: u32,
    pub points: Vec<BlowUp>,
}

/// Transform `pullback - removed * E` examined along the exceptional line.
pub(crate) struct Transform {
    pub total_exponent: u32,
    pub kept_exponent: u32,
    /// Every rational point of `E` on the strict transform.
    pub points: Vec<BlowUp>,
    /// Primitive cofactor of the tangent cone carrying its non-rational
    /// directions (a constant when there are none).
    pub irrational: Vec<BigInt>,
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Substitutes `v -> v + root` and clears the denominator.
fn translate(terms: &Terms, root: &Rational) -> Terms {
    if root.is_zero() {
        return terms.clone();
    }
    let (p, q) = (root.numer(), root.denom());
    let top = terms.keys().map(|e| e.1).max().unwrap_or(0);
    let mut out = Terms::new();
    for (&(a, b), c) in terms {
        let scale = c * q.pow(top - b);
        for (k, choose) in binomial_row(b).into_iter().enumerate() {
            let k = k as u32;
            add_term(&mut out, (a, k), &scale * choose * q.pow(k) * p.pow(b - k));
        }
    }
    out
}

pub(crate) fn blow_up(g: &Germ, removed: u32) -> Transform {
    let m = g.multiplicity();
    debug_assert!(removed <= m);
    let mut chart_a = Terms::new();
    for (&(i, j), c) in g.terms() {
        chart_a.insert((i + j, j), c.clone());
    }
    let total_exponent = chart_a.keys().map(|e| e.0).min().unwrap_or(0);
    let chart_a: Terms = chart_a
        .into_iter()
        .map(|((i, j), c)| ((i - removed, j), c))
        .collect();
    let kept_exponent = chart_a.keys().map(|e| e.0).min().unwrap_or(0);

    let cone = g.tangent_cone_restriction();
    let split = split_rational_roots(&cone);
    let mut points = Vec::new();
    for (root, _) in &split.roots {
        let germ = Germ::from_map(translate(&chart_a, root))
            .expect("a nonzero polynomial stays nonzero under translation");
        points.push(BlowUp {
            direction: Direction::Finite(root.clone()),
            germ,
        });
    }
    if (degree(&cone) as u32) < m {
        let chart_b: Terms = g
            .terms()
            .iter()
            .map(|(&(i, j), c)| ((i, i + j - removed), c.clone()))
            .collect();
        points.push(BlowUp {
            direction: Direction::Infinity,
            germ: Germ::from_map(chart_b).expect("nonzero"),
        });
    }
    Transform {
        total_exponent,
        kept_exponent,
        points,
        irrational: split.rest,
    }
}

/// Even blow-up of the origin with full bookkeeping.
///
/// A point of multiplicity below 2 needs no blow-up and yields no points.
pub fn even_blow_up_detailed(g: &Germ) -> Result<EvenBlowUp, GermError> {
    let m = g.multiplicity();
    if m < 2 {
        return Ok(EvenBlowUp {
            multiplicity: m,
            total_exceptional_exponent: 0,
            even_exceptional_exponent: 0,
            points: Vec::new(),
        });
    }
    let t = blow_up(g, 2 * (m / 2));
    if !is_square_free(&t.irrational) {
        return Err(GermError::RequiresAlgebraicExtension {
            germ: g.to_string(),
            factor: render(&t.irrational),
        });
    }
    let mut points: Vec<BlowUp> = t
        .points
        .into_iter()
        .filter(|p| p.germ.multiplicity() >= 2)
        .collect();
    if t.kept_exponent == 1 {
        // The exceptional line stays in the transform and crosses each
        // simple non-rational branch transversally: an ordinary node.
        for index in 0..degree(&t.irrational) {
            points.push(BlowUp {
                direction: Direction::Conjugate {
                    polynomial: t.irrational.clone(),
                    index,
                },
                germ: Germ::monomial(1, 1),
            });
        }
    }
    Ok(EvenBlowUp {
        multiplicity: m,
        total_exceptional_exponent: t.total_exponent,
        even_exceptional_exponent: t.kept_exponent,
        points,
    })
}

/// Non-smooth points of the even transform over the origin.
pub fn even_blow_up(g: &Germ) -> Result<Vec<BlowUp>, GermError> {
    Ok(even_blow_up_detailed(g)?.points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn germ(text: &str) -> Germ {
        text.parse().unwrap()
    }

    #[test]
    fn quartic_binomial_blows_up_to_one_point() {
        let pts = even_blow_up(&germ("y^8 - z^4")).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].direction, Direction::Finite(int(0)));
        assert_eq!(pts[0].germ, germ("y^4 - z^4"));
        let pts = even_blow_up(&germ("y^6 - z^4")).unwrap();
        assert_eq!(pts[0].germ, germ("y^2 - z^4"));
    }

    #[test]
    fn odd_multiplicity_keeps_exceptional_line() {
        let up = even_blow_up_detailed(&germ("y^3 - z^3")).unwrap();
        assert_eq!(up.total_exceptional_exponent, 3);
        assert_eq!(up.even_exceptional_exponent, 1);
        let dirs: Vec<String> = up.points.iter().map(|p| p.direction.to_string()).collect();
        assert_eq!(
            dirs,
            ["1", "root 1 of v^2 + v + 1", "root 2 of v^2 + v + 1"]
        );
        for p in &up.points {
            assert_eq!(p.germ.multiplicity(), 2);
            assert_eq!(
                p.germ.tangent_cone_restriction().len(),
                2,
                "transverse node"
            );
        }
    }

    #[test]
    fn chart_at_infinity() {
        let pts = even_blow_up(&germ("z*(y^3 - z^5)")).unwrap();
        let dirs: Vec<_> = pts.iter().map(|p| p.direction.clone()).collect();
        assert_eq!(dirs, vec![Direction::Infinity]);
        assert_eq!(pts[0].germ, germ("y^3 - z^2"));
    }

    #[test]
    fn translation_clears_denominators() {
        // tangent cone (2z - y)^2 puts the singular direction at v = 1/2
        let pts = even_blow_up(&germ("(2*z - y)*(2*z - y) - y^3")).unwrap();
        assert_eq!(pts.len(), 0, "the transform is smooth after one step");
        let pts = even_blow_up(&germ("(2*z - y)*(2*z - y) - y^4")).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(
            pts[0].direction,
            Direction::Finite(crate::rational::ratio(1, 2))
        );
        assert_eq!(pts[0].germ.multiplicity(), 2);
    }

    #[test]
    fn repeated_irrational_direction_is_reported() {
        let err = even_blow_up(&germ("(z^2 - 2*y^2)*(z^2 - 2*y^2) - y^5")).unwrap_err();
        assert!(matches!(err, GermError::RequiresAlgebraicExtension { .. }));
    }
}
