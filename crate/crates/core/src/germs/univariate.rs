//! Univariate integer polynomials: rational roots and square-freeness.
//!
//! Coefficient vectors are indexed by power, lowest first.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::positive_divisors;
use crate::rational::Rational;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Primitive representative with a positive leading coefficient.
pub(crate) fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let mut out = p.to_vec();
    trim(&mut out);
    let content = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return out;
    }
    let divisor = if out.last().is_some_and(Signed::is_negative) {
        -content
    } else {
        content
    };
    out.iter().map(|c| c / &divisor).collect()
}

pub(crate) fn degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Divides by `b*v - a` when that is exact, returning the quotient.
fn divide_linear(p: &[BigInt], a: &BigInt, b: &BigInt) -> Option<Vec<BigInt>> {
    let n = degree(p);
    if n == 0 {
        return None;
    }
    let mut q = vec![BigInt::zero(); n];
    let (s, r) = p[n].div_rem(b);
    if !r.is_zero() {
        return None;
    }
    q[n - 1] = s;
    for k in (1..n).rev() {
        let (s, r) = (&p[k] + a * &q[k]).div_rem(b);
        if !r.is_zero() {
            return None;
        }
        q[k - 1] = s;
    }
    if !(&p[0] + a * &q[0]).is_zero() {
        return None;
    }
    Some(q)
}

/// Rational roots of a nonzero polynomial with their multiplicities, and
/// the primitive cofactor left once they are divided out.
pub(crate) struct RootSplit {
    pub roots: Vec<(Rational, u32)>,
    pub rest: Vec<BigInt>,
}

pub(crate) fn split_rational_roots(p: &[BigInt]) -> RootSplit {
    let mut current = primitive(p);
    assert!(
        !current.iter().all(Zero::is_zero),
        "zero polynomial has no root split"
    );
    let mut roots = Vec::new();
    let zeros = current.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        current.drain(..zeros);
        roots.push((Rational::zero(), zeros as u32));
    }
    if degree(&current) > 0 {
        let constant = current[0].magnitude().clone();
        let lead = current[degree(&current)].magnitude().clone();
        let numerators = positive_divisors(&constant);
        let denominators = positive_divisors(&lead);
        'outer: for b in &denominators {
            for a in &numerators {
                if !a.gcd(b).is_one() {
                    continue;
                }
                for sign in [Sign::Minus, Sign::Plus] {
                    let a = BigInt::from_biguint(sign, a.clone());
                    let b = BigInt::from(b.clone());
                    let mut count = 0u32;
                    while let Some(q) = divide_linear(&current, &a, &b) {
                        current = q;
                        count += 1;
                    }
                    if count > 0 {
                        roots.push((Rational::new(a, b), count));
                    }
                    if degree(&current) == 0 {
                        break 'outer;
                    }
                }
            }
        }
    }
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    RootSplit {
        roots,
        rest: primitive(&current),
    }
}

fn rational_poly(p: &[BigInt]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p.iter().cloned().map(Rational::from_integer).collect();
    trim(&mut out);
    out
}

fn is_zero_poly(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !is_zero_poly(&r) {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1].clone() / &lead;
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= &factor * c;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// True when `p` has no repeated factor over the rationals.
pub(crate) fn is_square_free(p: &[BigInt]) -> bool {
    if degree(p) <= 1 {
        return true;
    }
    let f = rational_poly(p);
    let df: Vec<Rational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
        .collect();
    let (mut a, mut b) = (f, df);
    while !is_zero_poly(&b) {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Human-readable form in the variable `v`.
pub(crate) fn render(p: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.magnitude();
        let body = match (k, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "v".to_string(),
            (1, false) => format!("{mag}*v"),
            (_, true) => format!("v^{k}"),
            (_, false) => format!("{mag}*v^{k}"),
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        parts.push((sign, body));
    }
    let mut out = String::new();
    for (n, (sign, body)) in parts.into_iter().enumerate() {
        match (n, sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            (_, s) => out.push_str(&format!(" {s} ")),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn poly(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn finds_rational_roots_with_multiplicity() {
        // (v - 1)^2 (2v + 3) v (v^2 + 1)
        let p = poly(&[0, 3, -4, 2, -2, -1, 2]);
        let split = split_rational_roots(&p);
        assert_eq!(
            split.roots,
            vec![(ratio(-3, 2), 1), (int(0), 1), (int(1), 2)]
        );
        assert_eq!(split.rest, poly(&[1, 0, 1]));
    }

    #[test]
    fn cyclotomic_rest_is_square_free() {
        let split = split_rational_roots(&poly(&[1, 0, 0, -1]));
        assert_eq!(split.roots, vec![(int(1), 1)]);
        assert_eq!(split.rest, poly(&[1, 1, 1]));
        assert!(is_square_free(&split.rest));
    }

    #[test]
    fn detects_repeated_irrational_factor() {
        // (v^2 - 2)^2
        let p = poly(&[4, 0, -4, 0, 1]);
        let split = split_rational_roots(&p);
        assert!(split.roots.is_empty());
        assert!(!is_square_free(&split.rest));
    }

    #[test]
    fn renders_in_descending_powers() {
        assert_eq!(render(&poly(&[1, 0, -3])), "-3*v^2 + 1");
        assert_eq!(render(&poly(&[0, 1, 1])), "v^2 + v");
    }
}
