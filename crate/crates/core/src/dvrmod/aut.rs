use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::hall::interpolate_in_q;
use crate::error::{Caps, Error, Result};
use crate::exactalg::{gl_iter, gl_order, DvrQuot, Mat, QPoly};
use crate::typelib::Partition;

/// An endomorphism of `M_λ` in canonical form: `h(e_j) = Σ_i X_ij e_i` with
/// `X_ij` reduced mod `t^{λ_i}` and divisible by `t^{λ_i-λ_j}` when
/// `λ_i > λ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutMatrix {
    s: usize,
    entries: Vec<u64>,
}

impl AutMatrix {
    pub fn size(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.s + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}

/// `Aut(M_λ)` over a fixed DVR quotient.
#[derive(Clone, Debug)]
pub struct AutGroup {
    ring: DvrQuot,
    lambda: Partition,
    block_of: Vec<usize>,
    blocks: Vec<(u32, u32)>,
}

impl AutGroup {
    pub fn new(lambda: &Partition, ring: &DvrQuot) -> Result<Self> {
        if lambda.largest() > ring.cap() {
            return Err(Error::domain(format!(
                "ring cap {} below largest part of {lambda}",
                ring.cap()
            )));
        }
        let blocks = lambda.blocks();
        let block_of = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &(_, u))| std::iter::repeat(b).take(u as usize))
            .collect();
        Ok(AutGroup {
            ring: ring.clone(),
            lambda: lambda.clone(),
            block_of,
            blocks,
        })
    }

    pub fn ring(&self) -> &DvrQuot {
        &self.ring
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Multiplicities `u_1..u_r` of the distinct parts.
    pub fn multiplicities(&self) -> Vec<u32> {
        self.blocks.iter().map(|&(_, u)| u).collect()
    }

    fn s(&self) -> usize {
        self.lambda.len()
    }

    fn part(&self, i: usize) -> u32 {
        self.lambda.parts()[i]
    }

    /// Exponent forced on entry `(i,j)`.
    fn shift(&self, i: usize, j: usize) -> u32 {
        self.part(i).saturating_sub(self.part(j))
    }

    pub fn identity(&self) -> AutMatrix {
        self.scalar(1)
    }

    /// The scalar automorphism by ring element `c` (assumed a unit).
    pub fn scalar(&self, c: u64) -> AutMatrix {
        let s = self.s();
        let mut entries = vec![0; s * s];
        for i in 0..s {
            entries[i * s + i] = self.ring.reduce(c, self.part(i));
        }
        AutMatrix { s, entries }
    }

    /// Builds a matrix from raw ring entries, reducing into canonical form.
    /// Fails if the divisibility pattern is violated.
    pub fn from_entries(&self, raw: &[u64]) -> Result<AutMatrix> {
        let s = self.s();
        if raw.len() != s * s {
            return Err(Error::domain("entry count does not match the module rank"));
        }
        let mut entries = vec![0; s * s];
        for i in 0..s {
            for j in 0..s {
                let x = self.ring.reduce(raw[i * s + j], self.part(i));
                if self.ring.valuation(x) < self.shift(i, j) {
                    return Err(Error::domain(format!("entry ({i},{j}) does not define a module map")));
                }
                entries[i * s + j] = x;
            }
        }
        Ok(AutMatrix { s, entries })
    }

    /// Residue matrix over the residue field.
    pub fn residue(&self, x: &AutMatrix) -> Mat {
        let s = self.s();
        let data = x.entries.iter().map(|&e| self.ring.residue(e)).collect();
        Mat::from_vec(s, s, data)
    }

    /// Whether `x` is an automorphism: it must be surjective, which by
    /// Nakayama means invertible modulo the uniformizer.
    pub fn is_automorphism(&self, x: &AutMatrix) -> bool {
        self.residue(x).is_invertible(self.ring.residue_field())
    }

    pub fn compose(&self, a: &AutMatrix, b: &AutMatrix) -> AutMatrix {
        let s = self.s();
        let r = &self.ring;
        let mut entries = vec![0; s * s];
        for i in 0..s {
            for j in 0..s {
                let mut acc = 0;
                for k in 0..s {
                    acc = r.add(acc, r.mul(a.get(i, k), b.get(k, j)));
                }
                entries[i * s + j] = r.reduce(acc, self.part(i));
            }
        }
        AutMatrix { s, entries }
    }

    /// Image of the element with coordinates `c` (coordinate `i` mod `t^{λ_i}`).
    pub fn apply(&self, x: &AutMatrix, c: &[u64]) -> Vec<u64> {
        let r = &self.ring;
        (0..self.s())
            .map(|i| {
                let acc = (0..self.s()).fold(0, |acc, j| r.add(acc, r.mul(x.get(i, j), c[j])));
                r.reduce(acc, self.part(i))
            })
            .collect()
    }

    /// Inverse, found as the last power before the identity.
    pub fn inverse(&self, x: &AutMatrix) -> AutMatrix {
        let id = self.identity();
        let mut prev = id.clone();
        let mut cur = x.clone();
        while cur != id {
            prev = cur.clone();
            cur = self.compose(&cur, x);
        }
        prev
    }

    /// `a_λ(q) = q^{Σ min(λ_a,λ_b) - Σ u_i^2} ∏ |GL_{u_i}(q)|`.
    pub fn order(&self) -> BigUint {
        aut_order_formula(&self.lambda, &BigUint::from(self.ring.residue_size()))
    }

    /// Size of the set of canonical matrices, valid or not.
    fn pattern_size(&self) -> u128 {
        (self.ring.residue_size() as u128)
            .checked_pow(self.lambda.min_sum())
            .unwrap_or(u128::MAX)
    }

    /// Counts automorphisms by testing every canonical matrix.
    pub fn count_exhaustive(&self, cap: u64) -> Result<u64> {
        let total = self.pattern_size();
        if total > cap as u128 {
            return Err(Error::refusal(format!("scan of End(M_{})", self.lambda), total, cap));
        }
        let s = self.s();
        let q = self.ring.residue_size();
        let radix: Vec<u64> = (0..s * s)
            .map(|k| q.pow(self.part(k / s) - self.shift(k / s, k % s)))
            .collect();
        let mut digits = vec![0u64; s * s];
        let mut count = 0;
        let mut x = AutMatrix {
            s,
            entries: vec![0; s * s],
        };
        loop {
            for k in 0..s * s {
                x.entries[k] = self.ring.mul_t_pow(digits[k], self.shift(k / s, k % s));
            }
            if self.is_automorphism(&x) {
                count += 1;
            }
            if !bump(&mut digits, &radix) {
                break;
            }
        }
        Ok(count)
    }

    /// Counts automorphisms row by row. Only the residue decides
    /// invertibility, so every deeper digit contributes a free factor of
    /// `q`; residues are counted by extending each row span in turn by every
    /// allowed row and keeping the extensions that raise the rank.
    pub fn count_by_rows(&self, cap: u64) -> Result<u64> {
        let s = self.s();
        let q = self.ring.residue_size();
        let work = (q as u128).checked_pow((s + s * s / 4) as u32).unwrap_or(u128::MAX);
        if work > cap as u128 {
            return Err(Error::refusal(
                format!("row count of Aut(M_{})", self.lambda),
                work,
                cap,
            ));
        }
        let f = self.ring.residue_field();
        let mut deeper = 0u32;
        let mut states: HashMap<Mat, u64> = HashMap::from([(Mat::zeros(0, s), 1)]);
        for i in 0..s {
            let allowed: Vec<usize> = (0..s).filter(|&j| self.shift(i, j) == 0).collect();
            deeper += (0..s).map(|j| self.part(i) - self.shift(i, j)).sum::<u32>() - allowed.len() as u32;
            let radix = vec![q; allowed.len()];
            let mut next: HashMap<Mat, u64> = HashMap::new();
            for (span, &c) in &states {
                let mut digits = vec![0u64; allowed.len()];
                while bump(&mut digits, &radix) {
                    let mut rows: Vec<Vec<u32>> = (0..span.rows()).map(|r| span.row(r).to_vec()).collect();
                    let mut v = vec![0u32; s];
                    for (&j, &d) in allowed.iter().zip(&digits) {
                        v[j] = d as u32;
                    }
                    rows.push(v);
                    let ext = Mat::from_rows(&rows).rref(f);
                    if ext.rows() > span.rows() {
                        *next.entry(ext).or_insert(0) += c;
                    }
                }
            }
            states = next;
        }
        let residues: u64 = states.values().sum();
        residues
            .checked_mul(q.checked_pow(deeper).unwrap_or(u64::MAX))
            .ok_or_else(|| Error::refusal(format!("|Aut(M_{})| in 64 bits", self.lambda), "overflow", u64::MAX))
    }

    /// Visits every automorphism exactly once: invertible residue blocks on
    /// the diagonal, every other digit free.
    pub fn for_each(&self, cap: u64, mut visit: impl FnMut(&AutMatrix)) -> Result<u64> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::refusal(
                format!("Aut(M_{}) enumeration", self.lambda),
                order,
                cap,
            ));
        }
        let s = self.s();
        let q = self.ring.residue_size();
        let mut starts = Vec::new();
        let mut at = 0;
        for &(_, u) in &self.blocks {
            starts.push(at);
            at += u as usize;
        }
        let gl_lists: Vec<Vec<Mat>> = self
            .blocks
            .iter()
            .map(|&(_, u)| gl_iter(u, q, u64::MAX).map(|it| it.collect()))
            .collect::<Result<_>>()?;
        // free digits: diagonal-block entries beyond the residue, all others
        let mut radix = vec![1u64; s * s];
        for i in 0..s {
            for j in 0..s {
                let same = self.block_of[i] == self.block_of[j];
                let digits = self.part(i) - self.shift(i, j) - u32::from(same);
                radix[i * s + j] = q.pow(digits);
            }
        }
        let mut pick = vec![0usize; self.blocks.len()];
        let mut x = AutMatrix {
            s,
            entries: vec![0; s * s],
        };
        let mut count = 0;
        loop {
            let mut digits = vec![0u64; s * s];
            loop {
                for i in 0..s {
                    for j in 0..s {
                        let (bi, bj) = (self.block_of[i], self.block_of[j]);
                        let k = i * s + j;
                        x.entries[k] = if bi == bj {
                            let g = &gl_lists[bi][pick[bi]];
                            g.get(i - starts[bi], j - starts[bj]) as u64 + q * digits[k]
                        } else {
                            self.ring.mul_t_pow(digits[k], self.shift(i, j))
                        };
                    }
                }
                visit(&x);
                count += 1;
                if !bump(&mut digits, &radix) {
                    break;
                }
            }
            let lens: Vec<u64> = gl_lists.iter().map(|l| l.len() as u64).collect();
            let mut p64: Vec<u64> = pick.iter().map(|&p| p as u64).collect();
            if !bump(&mut p64, &lens) {
                break;
            }
            pick = p64.iter().map(|&p| p as usize).collect();
        }
        Ok(count)
    }

    /// `β(h) = (Y, Z)`: the action on `M/tM` in basis `ē_i` and on `M[t]` in
    /// basis `t^{λ_i-1} e_i`.
    pub fn beta(&self, x: &AutMatrix) -> BetaPair {
        let s = self.s();
        let r = &self.ring;
        let y = self.residue(x);
        let mut z = Mat::zeros(s, s);
        for i in 0..s {
            for j in 0..s {
                let v = r.reduce(r.mul_t_pow(x.get(i, j), self.part(j) - 1), self.part(i));
                let top = r.div_t_pow(v, self.part(i) - 1).expect("image lies in M[t]");
                z.set(i, j, r.residue(top));
            }
        }
        BetaPair { y, z }
    }
}

/// Mixed-radix increment; false once the counter wraps to zero.
fn bump(digits: &mut [u64], radix: &[u64]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radix) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

/// `(Y, Z)` acting on `M/tM` and on `M[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaPair {
    pub y: Mat,
    pub z: Mat,
}

/// `a_λ(Q)` evaluated at any `Q`.
pub fn aut_order_formula(lambda: &Partition, q: &BigUint) -> BigUint {
    let blocks = lambda.blocks();
    let sq: u32 = blocks.iter().map(|&(_, u)| u * u).sum();
    let mut out = q.pow(lambda.min_sum() - sq);
    for &(_, u) in &blocks {
        let mut g = BigUint::one();
        let qu = q.pow(u);
        let mut qi = BigUint::one();
        for _ in 0..u {
            g *= &qu - &qi;
            qi *= q;
        }
        out *= g;
    }
    out
}

/// Number of automorphisms of `M_λ` over `ring`, counted row by row.
pub fn aut_order(lambda: &Partition, ring: &DvrQuot, caps: &Caps) -> Result<u64> {
    AutGroup::new(lambda, ring)?.count_by_rows(caps.group_size)
}

/// `a_λ(q)` as a polynomial in `q`, interpolated from [`aut_order`] over
/// `F_q[t]/(t^{λ_1})`. The degree is exactly `Σ min(λ_a,λ_b)`, which is used
/// as the bound.
pub fn aut_polynomial(lambda: &Partition, caps: &Caps) -> Result<QPoly> {
    let deg = lambda.min_sum();
    let what = format!("automorphism count of M_{lambda}");
    interpolate_in_q(deg, &what, |q| {
        let ring = DvrQuot::power_series(q, lambda.largest().max(1))?;
        aut_order(lambda, &ring, caps).map(BigUint::from)
    })
}

/// Every automorphism of `M_λ`, collected.
pub fn aut_generate(lambda: &Partition, ring: &DvrQuot, caps: &Caps) -> Result<Vec<AutMatrix>> {
    let g = AutGroup::new(lambda, ring)?;
    let mut out = Vec::new();
    g.for_each(caps.group_size, |x| out.push(x.clone()))?;
    Ok(out)
}

pub fn beta_of(group: &AutGroup, h: &AutMatrix) -> BetaPair {
    group.beta(h)
}

/// Membership in `im β` for multiplicities `u`: `Y` block lower triangular,
/// `Z` block upper triangular, equal diagonal blocks, both invertible.
pub fn beta_image_contains(pair: &BetaPair, u: &[u32], q: u64) -> Result<bool> {
    let s: u32 = u.iter().sum();
    let s = s as usize;
    for m in [&pair.y, &pair.z] {
        if m.rows() != s || m.cols() != s {
            return Err(Error::domain("pair shape does not match the block sizes"));
        }
    }
    let f = crate::exactalg::Gf::new(q)?;
    let block: Vec<usize> = u
        .iter()
        .enumerate()
        .flat_map(|(b, &n)| std::iter::repeat(b).take(n as usize))
        .collect();
    for i in 0..s {
        for j in 0..s {
            let (bi, bj) = (block[i], block[j]);
            if bi < bj && pair.y.get(i, j) != 0 {
                return Ok(false);
            }
            if bi > bj && pair.z.get(i, j) != 0 {
                return Ok(false);
            }
            if bi == bj && pair.y.get(i, j) != pair.z.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(pair.y.is_invertible(&f) && pair.z.is_invertible(&f))
}

/// `|im β| = ∏ |GL_{u_i}(q)| · q^{2 Σ_{a<b} u_a u_b}`.
pub fn beta_image_order(u: &[u32], q: u64) -> BigUint {
    let mut out = BigUint::one();
    let mut off = 0;
    for (a, &ua) in u.iter().enumerate() {
        out *= gl_order(ua, q);
        for &ub in &u[a + 1..] {
            off += ua * ub;
        }
    }
    out * BigUint::from(q).pow(2 * off)
}
