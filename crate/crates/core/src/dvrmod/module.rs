use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::exactalg::{DvrKind, DvrQuot};
use crate::typelib::Partition;

/// `M_λ = ⊕ o/(t^{λ_i})` over a DVR quotient with cap at least `λ_1`.
///
/// Elements are mixed-radix codes: coordinate `i` is a ring code reduced
/// modulo `t^{λ_i}` (a number below `q^{λ_i}`), coordinate 0 least
/// significant.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: DvrQuot,
    lambda: Partition,
    radix: Vec<u64>,
    size: u64,
}

/// A submodule as a membership bitset plus its element list.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub bits: Vec<u64>,
    pub elems: Vec<u32>,
}

impl Submodule {
    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }
}

fn bit_get(bits: &[u64], x: u32) -> bool {
    bits[(x >> 6) as usize] >> (x & 63) & 1 == 1
}

fn bit_set(bits: &mut [u64], x: u32) {
    bits[(x >> 6) as usize] |= 1 << (x & 63);
}

impl FiniteModule {
    pub fn new(ring: DvrQuot, lambda: Partition, cap: u64) -> Result<Self> {
        if lambda.largest() > ring.cap() {
            return Err(Error::domain(format!(
                "ring cap {} below largest part of {lambda}",
                ring.cap()
            )));
        }
        let radix: Vec<u64> = lambda.parts().iter().map(|&l| ring.q_pow(l)).collect();
        let size = radix
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r))
            .filter(|&s| s <= cap && s < u32::MAX as u64)
            .ok_or_else(|| {
                Error::refusal(
                    format!("module M_{lambda} over {ring:?}"),
                    format!("{}^{}", ring.residue_size(), lambda.weight()),
                    cap,
                )
            })?;
        Ok(FiniteModule {
            ring,
            lambda,
            radix,
            size,
        })
    }

    pub fn ring(&self) -> &DvrQuot {
        &self.ring
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn decode(&self, mut x: u32) -> Vec<u64> {
        self.radix
            .iter()
            .map(|&r| {
                let d = x as u64 % r;
                x = (x as u64 / r) as u32;
                d
            })
            .collect()
    }

    pub fn encode(&self, c: &[u64]) -> u32 {
        let mut out = 0u64;
        for (d, r) in c.iter().zip(&self.radix).rev() {
            out = out * r + d;
        }
        out as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut x, mut y) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut scale = 1u64;
        for &r in &self.radix {
            let s = self.ring.add(x % r, y % r) % r;
            out += s * scale;
            scale *= r;
            x /= r;
            y /= r;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        let c: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.radix)
            .map(|(&d, &r)| self.ring.neg(d) % r)
            .collect();
        self.encode(&c)
    }

    /// `r · a` for a ring element `r`.
    pub fn scale(&self, r: u64, a: u32) -> u32 {
        let (mut x, mut out, mut scale) = (a as u64, 0u64, 1u64);
        for &rad in &self.radix {
            let s = self.ring.mul(r, x % rad) % rad;
            out += s * scale;
            scale *= rad;
            x /= rad;
        }
        out as u32
    }

    pub fn mul_t_pow(&self, a: u32, k: u32) -> u32 {
        self.scale(self.ring.uniformizer_pow(k), a)
    }

    /// Ring elements whose additive span is the whole ring: `t^k` for the
    /// integers, `w^i t^k` (with `w` generating `F_q` over `F_p`) for power
    /// series.
    fn additive_generators(&self) -> Vec<u64> {
        let k = self.ring.cap();
        match self.ring.kind() {
            DvrKind::IntegersModPk { .. } => (0..k).map(|e| self.ring.uniformizer_pow(e)).collect(),
            DvrKind::PowerSeries { .. } => {
                let f = self.ring.residue_field();
                let deg = f.degree();
                let p = f.characteristic() as u64;
                let mut out = Vec::new();
                for e in 0..k {
                    for i in 0..deg {
                        // field code p^i is the basis element w^i
                        out.push(self.ring.mul_t_pow(p.pow(i), e));
                    }
                }
                out
            }
        }
    }

    fn words(&self) -> usize {
        (self.size as usize).div_ceil(64)
    }

    /// Adds the cyclic group generated by `g` to the additive group `s`.
    fn join_cyclic(&self, bits: &mut [u64], elems: &mut Vec<u32>, g: u32) {
        if bit_get(bits, g) {
            return;
        }
        let base = elems.clone();
        let mut shift = g;
        while !bit_get(bits, shift) {
            for &n in &base {
                let y = self.add(n, shift);
                bit_set(bits, y);
                elems.push(y);
            }
            shift = self.add(shift, g);
        }
    }

    /// Every submodule, each exactly once; submodule 0 is `{0}`.
    pub fn submodules(&self) -> Vec<Submodule> {
        let gens = self.additive_generators();
        let w = self.words();
        let mut zero_bits = vec![0u64; w];
        bit_set(&mut zero_bits, 0);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        seen.insert(zero_bits.clone());
        let mut out = vec![Submodule {
            bits: zero_bits,
            elems: vec![0],
        }];
        let mut next = 0;
        while next < out.len() {
            let n = out[next].clone();
            next += 1;
            let mut covered = n.bits.clone();
            for x in 0..self.size as u32 {
                if bit_get(&covered, x) {
                    continue;
                }
                for &m in &n.elems {
                    bit_set(&mut covered, self.add(m, x));
                }
                let mut bits = n.bits.clone();
                let mut elems = n.elems.clone();
                for &r in &gens {
                    let g = self.scale(r, x);
                    self.join_cyclic(&mut bits, &mut elems, g);
                }
                if seen.insert(bits.clone()) {
                    out.push(Submodule { bits, elems });
                }
            }
        }
        out
    }

    /// `t^k M` as a bitset.
    pub fn t_power_image(&self, k: u32) -> Vec<u64> {
        let mut bits = vec![0u64; self.words()];
        for x in 0..self.size as u32 {
            bit_set(&mut bits, self.mul_t_pow(x, k));
        }
        bits
    }

    fn log_q(&self, mut v: u64) -> Option<u32> {
        let q = self.ring.residue_size();
        let mut e = 0;
        while v > 1 {
            if v % q != 0 {
                return None;
            }
            v /= q;
            e += 1;
        }
        Some(e)
    }

    /// Partition type from the sizes `|t^k X|`, `k = 0..=K`.
    fn type_from_profile(&self, profile: &[u64]) -> Result<Partition> {
        let mut at_least = Vec::new();
        for w in profile.windows(2) {
            if w[1] == 0 || w[0] % w[1] != 0 {
                return Err(Error::inconsistency("valuation profile is not a chain"));
            }
            let e = self
                .log_q(w[0] / w[1])
                .ok_or_else(|| Error::inconsistency("valuation profile is not a q-power"))?;
            if e > 0 {
                at_least.push(e);
            }
        }
        Partition::new(at_least)
            .map(|p| p.conjugate())
            .map_err(|_| Error::inconsistency("valuation profile is not monotone"))
    }

    /// Type of a submodule from `|t^k N|`.
    pub fn submodule_type(&self, n: &Submodule) -> Result<Partition> {
        let k = self.ring.cap();
        let mut profile = Vec::new();
        let mut mark = vec![0u64; self.words()];
        for e in 0..=k {
            mark.iter_mut().for_each(|w| *w = 0);
            let mut count = 0u64;
            for &x in &n.elems {
                let y = self.mul_t_pow(x, e);
                if !bit_get(&mark, y) {
                    bit_set(&mut mark, y);
                    count += 1;
                }
            }
            profile.push(count);
        }
        self.type_from_profile(&profile)
    }

    /// Type of `M / N` from `|t^k M + N| = |t^k M| |N| / |t^k M ∩ N|`.
    pub fn quotient_type(&self, n: &Submodule, t_images: &[Vec<u64>]) -> Result<Partition> {
        let q = self.ring.residue_size();
        let mut profile = Vec::new();
        for (e, img) in t_images.iter().enumerate() {
            let tk: u64 = self
                .lambda
                .parts()
                .iter()
                .map(|&l| q.pow(l.saturating_sub(e as u32)))
                .product();
            let inter = n.elems.iter().filter(|&&x| bit_get(img, x)).count() as u64;
            let sum = tk * n.order() as u64 / inter;
            profile.push(sum / n.order() as u64);
        }
        self.type_from_profile(&profile)
    }

    /// Counts of submodules by (submodule type, quotient type).
    pub fn hall_table(&self) -> Result<HashMap<(Partition, Partition), u64>> {
        let k = self.ring.cap();
        let images: Vec<Vec<u64>> = (0..=k).map(|e| self.t_power_image(e)).collect();
        let mut table = HashMap::new();
        for n in self.submodules() {
            let key = (self.submodule_type(&n)?, self.quotient_type(&n, &images)?);
            *table.entry(key).or_insert(0) += 1;
        }
        Ok(table)
    }
}
