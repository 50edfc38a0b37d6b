use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in one variable with exact rational coefficients, constant
/// term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    /// Value at an integer point when it is an integer.
    pub fn eval_integer(&self, x: &BigInt) -> Option<BigInt> {
        let v = self.eval(&BigRational::from_integer(x.clone()));
        v.is_integer().then(|| v.to_integer())
    }

    /// The unique polynomial of degree `< points.len()` through `points`
    /// (Newton divided differences); x-coordinates must be distinct.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> QPoly {
        let n = points.len();
        if n == 0 {
            return QPoly::zero();
        }
        let xs: Vec<&BigRational> = points.iter().map(|p| &p.0).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = xs[i] - xs[i - level];
                dd[i] = num / den;
            }
        }
        // expand Newton form from the innermost term outwards
        let mut acc = QPoly::constant(dd[n - 1].clone());
        for i in (0..n - 1).rev() {
            // acc = acc * (X - x_i) + dd[i]
            let mut next = vec![BigRational::zero(); acc.coeffs.len() + 1];
            for (k, c) in acc.coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xs[i];
            }
            next[0] += &dd[i];
            acc = QPoly::new(next);
        }
        acc
    }

    /// Interpolation through integer points.
    pub fn interpolate_ints(points: &[(i64, BigInt)]) -> QPoly {
        let pts: Vec<_> = points
            .iter()
            .map(|(x, y)| {
                (
                    BigRational::from_integer(BigInt::from(*x)),
                    BigRational::from_integer(y.clone()),
                )
            })
            .collect();
        QPoly::interpolate(&pts)
    }

    /// Coefficients as `"num/den"` strings, constant term first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_string).collect()
    }
}

/// `"num/den"` with a positive denominator.
pub fn rational_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({a})")
            };
            let mono = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            match (i, a.is_one()) {
                (0, _) => out.push_str(&coef),
                (_, true) => out.push_str(&mono),
                _ => out.push_str(&format!("{coef}*{mono}")),
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_q_plus_one() {
        let pts: Vec<(i64, BigInt)> = [2i64, 3, 4, 5].iter().map(|&q| (q, BigInt::from(q + 1))).collect();
        let p = QPoly::interpolate_ints(&pts);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval_int(7), BigRational::from_integer(8.into()));
    }

    #[test]
    fn display() {
        let c = |v: &[i64]| QPoly::new(v.iter().map(|&x| BigRational::from_integer(x.into())).collect());
        assert_eq!(c(&[-1, 1]).to_string(), "q - 1");
        assert_eq!(c(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2]).to_string(), "-2*q^11 + q^10");
        assert_eq!(c(&[]).to_string(), "0");
        let half = QPoly::new(vec![BigRational::new(1.into(), 2.into())]);
        assert_eq!(half.to_string(), "(1/2)");
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let pts: Vec<(i64, BigInt)> = (0..4).map(|x| (x, BigInt::from(x * (x + 1) / 2))).collect();
        let p = QPoly::interpolate_ints(&pts);
        let strs = p.coeff_strings();
        assert_eq!(strs, vec!["0/1", "1/2", "1/2"]);
        let back: Vec<_> = strs.iter().map(|s| parse_rational(s).unwrap()).collect();
        assert_eq!(QPoly::new(back), p);
    }
}
