use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::parse_terms;
use super::GermError;

/// Exponent pair `(i, j)` of the monomial `y^i * z^j`.
pub type Exponents = (u32, u32);

/// Sparse bivariate integer polynomial, not necessarily canonical.
pub(crate) type Terms = BTreeMap<Exponents, BigInt>;

/// Local equation `f(y, z)` of a branch divisor at a point, with `y` the
/// fiber direction and `z` the base direction.
///
/// Always canonical: nonzero, content 1, and the monomial that is smallest
/// in `(z, y)`-lexicographic order carries a positive coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Germ {
    terms: Terms,
}

/// Ordering used for the canonical sign and for printing.
fn print_key(e: &Exponents) -> (u32, u32) {
    (e.1, e.0)
}

impl Germ {
    /// Builds the canonical germ of a polynomial given by its terms.
    pub fn from_terms<I>(terms: I) -> Result<Self, GermError>
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut acc = Terms::new();
        for (e, c) in terms {
            add_term(&mut acc, e, c);
        }
        Self::from_map(acc)
    }

    pub(crate) fn from_map(mut terms: Terms) -> Result<Self, GermError> {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Err(GermError::ZeroPolynomial);
        }
        let content = terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead = terms
            .iter()
            .min_by_key(|(e, _)| print_key(e))
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let divisor = if lead { -content } else { content };
        if !divisor.is_one() {
            for c in terms.values_mut() {
                *c = &*c / &divisor;
            }
        }
        Ok(Germ { terms })
    }

    /// `y^a - z^b` (or the coordinate monomial when one side is absent).
    pub fn binomial(a: u32, b: u32) -> Self {
        Germ::from_terms([((a, 0), BigInt::one()), ((0, b), -BigInt::one())])
            .expect("distinct monomials never cancel")
    }

    /// The monomial `y^i z^j`.
    pub fn monomial(i: u32, j: u32) -> Self {
        Germ::from_terms([((i, j), BigInt::one())]).expect("nonzero")
    }

    /// Nonzero terms keyed by exponent pair.
    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Multiplicity at the origin: the smallest total degree in the support.
    pub fn multiplicity(&self) -> u32 {
        self.terms
            .keys()
            .map(|(i, j)| i + j)
            .min()
            .expect("germ support is never empty")
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// Coefficients of `f_m(1, v)` where `f_m` is the tangent cone, indexed by
    /// the power of `v`.
    pub fn tangent_cone_restriction(&self) -> Vec<BigInt> {
        let m = self.multiplicity();
        let mut out = vec![BigInt::zero(); m as usize + 1];
        for (&(i, j), c) in &self.terms {
            if i + j == m {
                out[j as usize] = c.clone();
            }
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// Order of vanishing of `f(y, 0)` at `y = 0`; `None` if the whole fiber
    /// `z = 0` lies in the divisor.
    pub fn fiber_contact_order(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter(|(_, j)| *j == 0)
            .map(|(i, _)| *i)
            .min()
    }

    /// True when the germ passes through the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }
}

pub(crate) fn add_term(acc: &mut Terms, e: Exponents, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(e).or_default();
    *slot += c;
    if slot.is_zero() {
        acc.remove(&e);
    }
}

pub(crate) fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&(i1, j1), c1) in a {
        for (&(i2, j2), c2) in b {
            add_term(&mut out, (i1 + i2, j1 + j2), c1 * c2);
        }
    }
    out
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| print_key(e));
        for (n, (&(i, j), c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            for (var, exp) in [("y", i), ("z", j)] {
                match exp {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    e => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Germ({self})")
    }
}

impl FromStr for Germ {
    type Err = GermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Germ::from_map(parse_terms(s)?)
    }
}

impl Serialize for Germ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Germ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
