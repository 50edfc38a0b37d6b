use std::fmt;
use std::sync::Arc;

use super::field::{prime_power_parts, Gf};
use crate::error::{Error, Result};

/// Which discrete valuation ring the quotient comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DvrKind {
    /// `Z/p^K`, uniformizer `p`.
    IntegersModPk { p: u64 },
    /// `F_q[t]/(t^K)`, uniformizer `t`.
    PowerSeries { q: u64 },
}

/// A finite quotient `o/p^K` of a discrete valuation ring.
///
/// Elements are `u64` codes in `0..q^K` where `q` is the residue field size.
/// For `Z/p^K` the code is the integer representative; for `F_q[t]/(t^K)` it
/// is `sum c_i q^i` with `c_i` the field code of the coefficient of `t^i`.
/// In both cases reduction mod `t^e` is `code % q^e`, multiplication by `t^k`
/// is `code * q^k % q^K`, and the residue is `code % q`.
#[derive(Clone)]
pub struct DvrQuot {
    kind: DvrKind,
    q: u64,
    k: u32,
    size: u64,
    field: Arc<Gf>,
}

impl DvrQuot {
    pub fn integers(p: u64, k: u32) -> Result<Self> {
        match prime_power_parts(p) {
            Some((_, 1)) => {}
            _ => return Err(Error::domain(format!("{p} is not prime"))),
        }
        Self::build(DvrKind::IntegersModPk { p }, p, k)
    }

    pub fn power_series(q: u64, k: u32) -> Result<Self> {
        Self::build(DvrKind::PowerSeries { q }, q, k)
    }

    pub fn new(kind: DvrKind, k: u32) -> Result<Self> {
        match kind {
            DvrKind::IntegersModPk { p } => Self::integers(p, k),
            DvrKind::PowerSeries { q } => Self::power_series(q, k),
        }
    }

    fn build(kind: DvrKind, q: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("cap exponent K must be at least 1"));
        }
        let field = Gf::new(q)?;
        let size = q
            .checked_pow(k)
            .filter(|&s| s < (1 << 40))
            .ok_or_else(|| Error::refusal(format!("ring of order {q}^{k}"), format!("{q}^{k}"), 1u64 << 40))?;
        Ok(DvrQuot {
            kind,
            q,
            k,
            size,
            field,
        })
    }

    pub fn kind(&self) -> DvrKind {
        self.kind
    }

    /// Residue field size.
    pub fn residue_size(&self) -> u64 {
        self.q
    }

    pub fn residue_field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn cap(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn uniformizer_name(&self) -> &'static str {
        match self.kind {
            DvrKind::IntegersModPk { .. } => "p",
            DvrKind::PowerSeries { .. } => "t",
        }
    }

    /// `q^e`, the order of the quotient by `(uniformizer^e)`.
    #[inline]
    pub fn q_pow(&self, e: u32) -> u64 {
        self.q.pow(e)
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.size
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Code of `uniformizer^k` (zero once `k >= K`).
    pub fn uniformizer_pow(&self, k: u32) -> u64 {
        if k >= self.k {
            0
        } else {
            self.q.pow(k)
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            DvrKind::IntegersModPk { .. } => (a + b) % self.size,
            DvrKind::PowerSeries { .. } => self.digitwise(a, b, |x, y| self.field.add(x, y)),
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match self.kind {
            DvrKind::IntegersModPk { .. } => (self.size - a) % self.size,
            DvrKind::PowerSeries { .. } => self.digitwise(a, 0, |x, _| self.field.neg(x)),
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            DvrKind::IntegersModPk { .. } => ((a as u128 * b as u128) % self.size as u128) as u64,
            DvrKind::PowerSeries { .. } => {
                if self.k == 1 {
                    return self.field.mul(a as u32, b as u32) as u64;
                }
                let da = self.digits(a);
                let db = self.digits(b);
                let k = self.k as usize;
                let mut out = vec![0u32; k];
                for i in 0..k {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..k - i {
                        out[i + j] = self.field.add(out[i + j], self.field.mul(da[i], db[j]));
                    }
                }
                self.from_digits(&out)
            }
        }
    }

    /// Valuation in `[0, K]`; `K` exactly for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut x = a;
        while x % self.q == 0 {
            x /= self.q;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: u64) -> bool {
        a % self.q != 0
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        // Newton lifting from the residue: x <- x (2 - a x)
        let r = self.field.inv(self.residue(a))? as u64;
        let mut x = r;
        let two = self.add(1, 1);
        for _ in 0..=self.k.ilog2() + 1 {
            x = self.mul(x, self.sub(two, self.mul(a, x)));
        }
        debug_assert_eq!(self.mul(a, x), 1);
        Some(x)
    }

    /// Residue field code of `a`.
    #[inline]
    pub fn residue(&self, a: u64) -> u32 {
        (a % self.q) as u32
    }

    /// Reduction modulo `uniformizer^e`.
    #[inline]
    pub fn reduce(&self, a: u64, e: u32) -> u64 {
        if e >= self.k {
            a
        } else {
            a % self.q.pow(e)
        }
    }

    /// `a * uniformizer^k`.
    #[inline]
    pub fn mul_t_pow(&self, a: u64, k: u32) -> u64 {
        if k >= self.k {
            return 0;
        }
        ((a as u128 * self.q.pow(k) as u128) % self.size as u128) as u64
    }

    /// `a / uniformizer^k`, defined when `v(a) >= k` (the result is the
    /// representative below `q^{K-k}`).
    pub fn div_t_pow(&self, a: u64, k: u32) -> Option<u64> {
        let qk = self.q.checked_pow(k)?;
        (a % qk == 0).then_some(a / qk)
    }

    fn digits(&self, a: u64) -> Vec<u32> {
        let mut x = a;
        (0..self.k)
            .map(|_| {
                let d = (x % self.q) as u32;
                x /= self.q;
                d
            })
            .collect()
    }

    fn from_digits(&self, d: &[u32]) -> u64 {
        d.iter().rev().fold(0u64, |acc, &x| acc * self.q + x as u64)
    }

    #[inline]
    fn digitwise(&self, a: u64, b: u64, op: impl Fn(u32, u32) -> u32) -> u64 {
        let (mut x, mut y) = (a, b);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.k {
            let d = op((x % self.q) as u32, (y % self.q) as u32);
            out += d as u64 * scale;
            scale *= self.q;
            x /= self.q;
            y /= self.q;
        }
        out
    }
}

impl fmt::Debug for DvrQuot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DvrKind::IntegersModPk { p } => write!(f, "Z/{p}^{}", self.k),
            DvrKind::PowerSeries { q } => write!(f, "F_{q}[t]/(t^{})", self.k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_in_z_mod_27() {
        let r = DvrQuot::integers(3, 3).unwrap();
        assert_eq!(r.valuation(3), 1);
        assert_eq!(r.valuation(0), 3);
        assert_eq!(r.valuation(18), 2);
        let r9 = DvrQuot::integers(3, 2).unwrap();
        assert!(r9.is_unit(4));
        assert!(!r9.is_unit(6));
    }

    #[test]
    fn uniformizer_is_nilpotent() {
        for r in [DvrQuot::integers(5, 3).unwrap(), DvrQuot::power_series(4, 3).unwrap()] {
            let t = r.uniformizer_pow(1);
            let t3 = r.mul(r.mul(t, t), t);
            assert_eq!(t3, 0);
            assert_ne!(r.mul(t, t), 0);
        }
    }

    #[test]
    fn ring_axioms_exhaustive_small() {
        for r in [
            DvrQuot::integers(2, 3).unwrap(),
            DvrQuot::power_series(2, 3).unwrap(),
            DvrQuot::power_series(4, 2).unwrap(),
        ] {
            for a in r.elements() {
                assert_eq!(r.add(a, r.neg(a)), 0);
                for b in r.elements() {
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for c in r.elements() {
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn units_have_inverses_and_units_are_valuation_zero() {
        for r in [DvrQuot::integers(3, 3).unwrap(), DvrQuot::power_series(9, 2).unwrap()] {
            for a in r.elements() {
                assert_eq!(r.is_unit(a), r.valuation(a) == 0);
                if let Some(b) = r.inv(a) {
                    assert_eq!(r.mul(a, b), 1);
                }
            }
        }
    }
}
