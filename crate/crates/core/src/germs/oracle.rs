//! Independent multiplicity oracle for the family `y^e z^f (y^a - z^b)`.
//!
//! Only the exponents are tracked. Every chart of an even blow-up maps the
//! family into itself or into a monomial `y^p z^q`, so the rules below are
//! closed-form exponent shuffles. Nothing here touches polynomial
//! arithmetic, which is what makes it useful against the general engine.

#[derive(Clone, Copy, Debug)]
enum Shape {
    Binomial { e: u32, f: u32, a: u32, b: u32 },
    Monomial { p: u32, q: u32 },
}

impl Shape {
    fn multiplicity(self) -> u32 {
        match self {
            Shape::Binomial { e, f, a, b } => e + f + a.min(b),
            Shape::Monomial { p, q } => p + q,
        }
    }

    /// Points of the even transform in trace order: finite directions
    /// ascending, then infinity, then the non-rational directions.
    fn children(self) -> Vec<Shape> {
        let parity = self.multiplicity() % 2;
        let mut out = Vec::new();
        match self {
            Shape::Monomial { p, q } => {
                if q > 0 {
                    out.push(Shape::Monomial { p: parity, q });
                }
                if p > 0 {
                    out.push(Shape::Monomial { p, q: parity });
                }
            }
            Shape::Binomial { e, f, a, b } if a < b => {
                if f > 0 {
                    out.push(Shape::Monomial { p: parity, q: f });
                }
                out.push(Shape::Binomial {
                    e,
                    f: parity,
                    a,
                    b: b - a,
                });
            }
            Shape::Binomial { e, f, a, b } if a > b => {
                out.push(Shape::Binomial {
                    e: parity,
                    f,
                    a: a - b,
                    b,
                });
                if e > 0 {
                    out.push(Shape::Monomial { p: e, q: parity });
                }
            }
            Shape::Binomial { e, f, a, .. } => {
                let even = a % 2 == 0;
                let crossing = Shape::Monomial { p: parity, q: 1 };
                if even {
                    out.push(crossing);
                }
                if f > 0 {
                    out.push(Shape::Monomial { p: parity, q: f });
                }
                out.push(crossing);
                if e > 0 {
                    out.push(Shape::Monomial { p: e, q: parity });
                }
                let irrational = a - 1 - u32::from(even);
                for _ in 0..irrational {
                    out.push(crossing);
                }
            }
        }
        out
    }
}

fn walk(shape: Shape, out: &mut Vec<u32>) {
    let m = shape.multiplicity();
    if m < 2 {
        return;
    }
    out.push(m);
    for child in shape.children() {
        walk(child, out);
    }
}

/// Multiplicities, in trace order, of the even resolution of
/// `y^e z^f (y^a - z^b)`.
pub fn binomial_oracle(e: u32, f: u32, a: u32, b: u32) -> Vec<u32> {
    assert!(a > 0 && b > 0, "exponents a and b must be positive");
    let mut out = Vec::new();
    walk(Shape::Binomial { e, f, a, b }, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_sequences() {
        assert_eq!(binomial_oracle(0, 0, 2, 4), [2, 2]);
        assert_eq!(binomial_oracle(0, 0, 8, 4), [4, 4]);
        assert_eq!(binomial_oracle(0, 1, 3, 5), [4, 2]);
        assert_eq!(binomial_oracle(0, 0, 3, 3), [3, 2, 2, 2]);
        assert_eq!(binomial_oracle(0, 0, 6, 6), [6]);
    }
}
