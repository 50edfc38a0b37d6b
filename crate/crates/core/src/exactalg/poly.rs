use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use super::field::Gf;
use crate::error::{Error, Result};

/// Polynomial over a finite field; coefficients constant term first, no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![1] }
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        UniPoly { coeffs: vec![0, 1] }
    }

    /// Monic polynomial of degree `d` whose lower coefficients are the base-q
    /// digits of `code`.
    pub fn monic_from_code(f: &Gf, d: u32, mut code: u64) -> Self {
        let q = f.order() as u64;
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            coeffs.push((code % q) as u32);
            code /= q;
        }
        coeffs.push(1);
        UniPoly { coeffs }
    }

    /// Inverse of [`UniPoly::monic_from_code`] for monic input.
    pub fn code(&self, f: &Gf) -> u64 {
        let q = f.order() as u64;
        let d = self.coeffs.len().saturating_sub(1);
        self.coeffs[..d].iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &UniPoly, f: &Gf) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        UniPoly::new(c)
    }

    pub fn sub(&self, other: &UniPoly, f: &Gf) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        UniPoly::new(c)
    }

    pub fn mul(&self, other: &UniPoly, f: &Gf) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(c)
    }

    pub fn pow(&self, e: u32, f: &Gf) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..e {
            out = out.mul(self, f);
        }
        out
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &UniPoly, f: &Gf) -> Option<(UniPoly, UniPoly)> {
        let dd = divisor.degree()?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, b));
            }
        }
        Some((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn eval(&self, x: u32, f: &Gf) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn display(&self, f: &Gf) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if f.degree() == 1 {
                c.to_string()
            } else {
                format!("[{}]", c)
            };
            terms.push(match (i, c) {
                (0, _) => coef,
                (1, 1) => "X".to_string(),
                (1, _) => format!("{coef}X"),
                (_, 1) => format!("X^{i}"),
                _ => format!("{coef}X^{i}"),
            });
        }
        terms.join("+")
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "UniPoly{:?}", self.coeffs)
    }
}

type IrrKey = (u32, u32);

static IRREDUCIBLES: LazyLock<RwLock<HashMap<IrrKey, Arc<Vec<UniPoly>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Cap on `q^d` for the sieve behind [`irreducibles`].
pub const IRREDUCIBLE_SIEVE_CAP: u64 = 1 << 26;

/// All monic irreducible polynomials of degree `d` over `F_q`, in increasing
/// code order (the lower coefficients read as a base-q number, highest
/// coefficient most significant).
///
/// Computed once per `(q, d)` by sieving out products of lower-degree
/// irreducibles, then shared.
pub fn irreducibles(f: &Gf, d: u32) -> Result<Arc<Vec<UniPoly>>> {
    if d == 0 {
        return Err(Error::domain("irreducible degree must be positive"));
    }
    let key = (f.order(), d);
    if let Some(v) = IRREDUCIBLES.read().unwrap().get(&key) {
        return Ok(Arc::clone(v));
    }
    let q = f.order() as u64;
    let total = q
        .checked_pow(d)
        .filter(|&t| t <= IRREDUCIBLE_SIEVE_CAP)
        .ok_or_else(|| {
            Error::refusal(
                format!("irreducibles of degree {d} over F_{q}"),
                format!("{q}^{d}"),
                IRREDUCIBLE_SIEVE_CAP,
            )
        })?;
    let list = if d == 1 {
        (0..q).map(|c| UniPoly::monic_from_code(f, 1, c)).collect()
    } else {
        let mut reducible = vec![false; total as usize];
        for e in 1..=d / 2 {
            let low = irreducibles(f, e)?;
            let cofactors = q.pow(d - e);
            for g in low.iter() {
                for code in 0..cofactors {
                    let h = UniPoly::monic_from_code(f, d - e, code);
                    reducible[g.mul(&h, f).code(f) as usize] = true;
                }
            }
        }
        reducible
            .iter()
            .enumerate()
            .filter(|(_, &r)| !r)
            .map(|(c, _)| UniPoly::monic_from_code(f, d, c as u64))
            .collect()
    };
    let list = Arc::new(list);
    IRREDUCIBLES.write().unwrap().insert(key, Arc::clone(&list));
    Ok(list)
}

/// Same as [`irreducibles`] but keyed by the field order, for callers that
/// only know `q`.
pub fn irreducibles_q(q: u64, d: u32) -> Result<Arc<Vec<UniPoly>>> {
    let f = Gf::new(q)?;
    irreducibles(&f, d)
}

/// Number of monic irreducibles of degree `d` over `F_q` by the Moebius
/// formula `(1/d) sum_{e | d} mu(e) q^{d/e}`.
pub fn irreducible_count_formula(q: u64, d: u32) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let mu = moebius(e);
        total += mu as i128 * (q as i128).pow(d / e);
    }
    (total / d as i128) as u64
}

fn moebius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}
