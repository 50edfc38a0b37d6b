use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use crate::error::{Error, Result};

/// Largest field order for which log/exp tables are built.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

/// The finite field `F_q`, `q = p^d`.
///
/// Elements are `u32` codes: the coordinate vector `(c_0, .., c_{d-1})`
/// relative to the power basis `1, w, .., w^{d-1}` of a root `w` of the
/// modulus, packed as `sum c_i p^i`. For `d = 1` the code is the residue.
/// The modulus is the least monic irreducible of degree `d` in code order.
pub struct Gf {
    p: u32,
    degree: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

static FIELDS: LazyLock<Mutex<HashMap<u32, Arc<Gf>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Splits `q` into `(p, d)` with `q = p^d`, or `None` if `q` is not a prime
/// power.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut d = 0;
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power_parts(n), Some((_, 1)))
}

/// The primes in increasing order, starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

/// Prime powers in increasing order, starting at 2.
pub fn prime_powers() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| prime_power_parts(n).is_some())
}

impl Gf {
    /// Returns the (shared, cached) field of order `q`.
    pub fn new(q: u64) -> Result<Arc<Gf>> {
        let (p, d) = prime_power_parts(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::refusal(format!("field of order {q}"), q, MAX_FIELD_ORDER));
        }
        let mut cache = FIELDS.lock().unwrap();
        if let Some(f) = cache.get(&(q as u32)) {
            return Ok(Arc::clone(f));
        }
        let f = Arc::new(Gf::build(p as u32, d));
        cache.insert(q as u32, Arc::clone(&f));
        Ok(f)
    }

    fn build(p: u32, degree: u32) -> Gf {
        let q = p.pow(degree);
        let modulus = least_irreducible_over_prime(p, degree);
        let mut f = Gf {
            p,
            degree,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        if degree > 1 && q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = f.add_digits(a, b);
                }
            }
            f.add_table = Some(t);
        }
        f.build_log_tables();
        f
    }

    fn build_log_tables(&mut self) {
        let n = self.q - 1;
        if n == 0 {
            return;
        }
        for g in 1..self.q {
            let mut exp = Vec::with_capacity(n as usize);
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..n {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.mul_slow(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (k, &e) in exp.iter().enumerate() {
                    log[e as usize] = k as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.degree {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let d = self.degree as usize;
        let ca = self.coords(a);
        let cb = self.coords(b);
        let mut prod = vec![0u64; 2 * d];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..d {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
            }
        }
        self.from_coords(&prod[..d].iter().map(|&x| x as u32).collect::<Vec<_>>())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements `q`.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn coords(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn from_coords(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let c: Vec<u32> = self.coords(a).into_iter().map(|x| (self.p - x) % self.p).collect();
            self.from_coords(&c)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.degree == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let n = self.q - 1;
        let e = self.log[a as usize] + self.log[b as usize];
        self.exp[(if e >= n { e - n } else { e }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % n)) % n) as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Least monic irreducible of degree `d` over `F_p`, coefficients constant
/// term first (monic leading 1 included).
fn least_irreducible_over_prime(p: u32, d: u32) -> Vec<u32> {
    let mut out = vec![0u32; d as usize + 1];
    out[d as usize] = 1;
    if d == 1 {
        return out;
    }
    let total = p.pow(d);
    for code in 0..total {
        let mut c = code;
        for slot in out.iter_mut().take(d as usize) {
            *slot = c % p;
            c /= p;
        }
        if prime_poly_irreducible(&out, p) {
            return out;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn prime_poly_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    for e in 1..=d / 2 {
        let count = p.pow(e as u32);
        for code in 0..count {
            let mut g = vec![0u32; e + 1];
            g[e] = 1;
            let mut c = code;
            for slot in g.iter_mut().take(e) {
                *slot = c % p;
                c /= p;
            }
            if prime_poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn prime_poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    let e = g.len() - 1;
    let p = p as u64;
    for k in (e..r.len()).rev() {
        let c = r[k] % p;
        if c == 0 {
            continue;
        }
        for i in 0..=e {
            r[k - e + i] = (r[k - e + i] + p * p - c * g[i] as u64 % p) % p;
        }
    }
    r.iter().all(|&x| x % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power_parts(8), Some((2, 3)));
        assert_eq!(prime_power_parts(9), Some((3, 2)));
        assert_eq!(prime_power_parts(7), Some((7, 1)));
        assert_eq!(prime_power_parts(12), None);
        assert_eq!(prime_power_parts(1), None);
        assert!(Gf::new(6).is_err());
    }

    #[test]
    fn moduli_are_least() {
        assert_eq!(Gf::new(4).unwrap().modulus(), &[1, 1, 1]);
        // x^2 + 1 is the least irreducible quadratic over F_3.
        assert_eq!(Gf::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Gf::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn inverse_round_trip() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Gf::new(q).unwrap();
            for a in 1..f.order() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn primitive_has_full_order() {
        let f = Gf::new(16).unwrap();
        let g = f.primitive();
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = f.mul(x, g);
            k += 1;
        }
        assert_eq!(k, 15);
    }
}
