use std::collections::HashMap;

use super::space::{ExtensionDatum, ExtensionSpace};
use crate::dvrmod::FiniteModule;
use crate::error::{Caps, Error, Result};
use crate::exactalg::{pairs, DvrQuot, Mat};
use crate::oracle::BracketTable;
use crate::typelib::Partition;

/// The Lie ring `E` of an extension datum `(y, z)` with trivial flag, as a
/// set with explicit addition and bracket.
///
/// `E` is generated by `ẽ_1..ẽ_m` and `B = M_λ`, with `p·ẽ_i` the minimal
/// lift of `z(e_i)`, `[ẽ_i, ẽ_j] = y(e_i ∧ e_j)` and `B` central. An element
/// `Σ v_i ẽ_i + b` with `0 ≤ v_i < p` is coded as `v + p^m · code(b)`, with
/// `v` read in base `p`.
#[derive(Clone, Debug)]
pub struct LieRingModel {
    p: u64,
    m: usize,
    b: FiniteModule,
    lifts: Vec<u32>,
    brackets: Vec<u32>,
    radical: usize,
}

impl LieRingModel {
    pub fn new(m: u32, lambda: &Partition, p: u64, datum: &ExtensionDatum, caps: &Caps) -> Result<Self> {
        let sp = ExtensionSpace::new(m, &[m], lambda, p)?;
        let s = lambda.len();
        let m = m as usize;
        let prs = pairs(m);
        if datum.y.rows() != s || datum.y.cols() != prs.len() || datum.z.rows() != s || datum.z.cols() != m {
            return Err(Error::domain("datum does not belong to the extension space"));
        }
        let total = (p as u128).pow(m as u32 + lambda.weight());
        if total > caps.module_size as u128 {
            return Err(Error::refusal("Lie ring element listing", total, caps.module_size));
        }
        let ring = DvrQuot::integers(p, lambda.largest().max(1))?;
        let b = FiniteModule::new(ring, lambda.clone(), caps.module_size)?;
        let lifts = (0..m)
            .map(|i| {
                let c: Vec<u64> = (0..s).map(|k| datum.z.get(k, i) as u64).collect();
                b.encode(&c)
            })
            .collect();
        let brackets = (0..prs.len())
            .map(|t| {
                let c: Vec<u64> = (0..s)
                    .map(|k| datum.y.get(k, t) as u64 * p.pow(lambda.parts()[k] - 1))
                    .collect();
                b.encode(&c)
            })
            .collect();
        // radical of y as an alternating map V × V → B[p]
        let f = sp.field();
        let mut gram = Mat::zeros(m, m * s);
        for (t, &(i, j)) in prs.iter().enumerate() {
            for k in 0..s {
                let v = datum.y.get(k, t);
                gram.set(i, j * s + k, v);
                gram.set(j, i * s + k, f.neg(v));
            }
        }
        let radical = m - gram.rank(f);
        Ok(LieRingModel {
            p,
            m,
            b,
            lifts,
            brackets,
            radical,
        })
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.m as u32) * self.b.size()
    }

    fn top(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    fn split(&self, x: u32) -> (Vec<u64>, u32) {
        let top = self.top();
        let mut v = x as u64 % top;
        let digits = (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect();
        (digits, (x as u64 / top) as u32)
    }

    fn join(&self, v: &[u64], b: u32) -> u32 {
        let code = v.iter().rev().fold(0u64, |acc, &d| acc * self.p + d);
        (code + self.top() * b as u64) as u32
    }

    /// The element `b` of `B`, given by its module code.
    pub fn from_b(&self, b: u32) -> u32 {
        self.join(&vec![0; self.m], b)
    }

    /// `ẽ_i`.
    pub fn generator(&self, i: usize) -> u32 {
        let mut v = vec![0; self.m];
        v[i] = 1;
        self.join(&v, 0)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (v, a) = self.split(x);
        let (w, c) = self.split(y);
        let mut b = self.b.add(a, c);
        let mut out = vec![0; self.m];
        for i in 0..self.m {
            let s = v[i] + w[i];
            if s >= self.p {
                b = self.b.add(b, self.lifts[i]);
            }
            out[i] = s % self.p;
        }
        self.join(&out, b)
    }

    pub fn bracket(&self, x: u32, y: u32) -> u32 {
        let (v, _) = self.split(x);
        let (w, _) = self.split(y);
        let mut b = 0;
        for (t, &(i, j)) in pairs(self.m).iter().enumerate() {
            let c = (v[i] * w[j] + self.p * self.p - v[j] * w[i]) % self.p;
            if c != 0 {
                b = self.b.add(b, self.b.scale(c, self.brackets[t]));
            }
        }
        self.from_b(b)
    }

    /// `|Z(E)|`: the centre is `B` plus the radical of `y`.
    pub fn centre_order(&self) -> u64 {
        self.p.pow(self.radical as u32) * self.b.size()
    }

    fn times(&self, c: u64, x: u32) -> u32 {
        (0..c).fold(0, |acc, _| self.add(acc, x))
    }

    fn order_exponent(&self, x: u32) -> u32 {
        let (mut y, mut e) = (x, 0);
        while y != 0 {
            y = self.times(self.p, y);
            e += 1;
        }
        e
    }

    /// The additive type of `E`, read off from `|E[p^k]|`.
    fn additive_type(&self, orders: &[u32]) -> Partition {
        let top = orders.iter().copied().max().unwrap_or(0);
        // number of parts ≥ k is log_p |E[p^k]| - log_p |E[p^{k-1}]|
        let log = |k: u32| -> u32 {
            let mut c = orders.iter().filter(|&&e| e <= k).count() as u64;
            let mut e = 0;
            while c > 1 {
                c /= self.p;
                e += 1;
            }
            e
        };
        let conj: Vec<u32> = (1..=top).map(|k| log(k) - log(k - 1)).collect();
        Partition::from_unsorted(conj).conjugate()
    }

    /// A basis `a_1..a_g` with `E = ⊕ ⟨a_k⟩` and `ord(a_k) = p^{μ_k}`.
    fn basis(&self, mu: &Partition, orders: &[u32]) -> Option<Vec<u32>> {
        let n = self.size() as usize;
        let mut member = vec![false; n];
        member[0] = true;
        let mut chosen = Vec::new();
        if self.extend(mu.parts(), orders, &mut member, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn extend(&self, mu: &[u32], orders: &[u32], member: &mut Vec<bool>, chosen: &mut Vec<u32>) -> bool {
        let Some(&e) = mu.get(chosen.len()) else {
            return true;
        };
        let span: Vec<u32> = (0..member.len() as u32).filter(|&x| member[x as usize]).collect();
        for x in 0..orders.len() as u32 {
            if orders[x as usize] != e || member[x as usize] {
                continue;
            }
            let bottom = self.times(self.p.pow(e - 1), x);
            if member[bottom as usize] {
                continue;
            }
            let mut next = member.clone();
            let mut c = 0u32;
            for _ in 1..self.p.pow(e) {
                c = self.add(c, x);
                for &s in &span {
                    next[self.add(s, c) as usize] = true;
                }
            }
            chosen.push(x);
            if self.extend(mu, orders, &mut next, chosen) {
                *member = next;
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Structure constants on an additive basis, after checking that the
    /// model really is an extension of an elementary abelian group by a
    /// central `B`.
    pub fn to_table(&self) -> Result<BracketTable> {
        let n = self.size() as u32;
        let orders: Vec<u32> = (0..n).map(|x| self.order_exponent(x)).collect();
        let mu = self.additive_type(&orders);
        let expected = self.m as u32 + self.b.lambda().weight();
        if mu.weight() != expected {
            return Err(Error::inconsistency(format!(
                "|E| = p^{} but the additive type is {mu}",
                expected
            )));
        }
        for b in 0..self.b.size() as u32 {
            let x = self.from_b(b);
            if (0..self.m).any(|i| self.bracket(x, self.generator(i)) != 0) {
                return Err(Error::inconsistency("B is not central"));
            }
        }
        for i in 0..self.m {
            let (v, _) = self.split(self.times(self.p, self.generator(i)));
            if v.iter().any(|&d| d != 0) {
                return Err(Error::inconsistency("E/B is not elementary abelian"));
            }
        }
        let basis = self
            .basis(&mu, &orders)
            .ok_or_else(|| Error::inconsistency(format!("no basis of type {mu} found")))?;
        let mut coords: HashMap<u32, Vec<u64>> = HashMap::new();
        let radix: Vec<u64> = mu.parts().iter().map(|&e| self.p.pow(e)).collect();
        let mut c = vec![0u64; radix.len()];
        loop {
            let x = c
                .iter()
                .zip(&basis)
                .fold(0, |acc, (&k, &a)| self.add(acc, self.times(k, a)));
            coords.insert(x, c.clone());
            let mut k = 0;
            while k < c.len() {
                c[k] += 1;
                if c[k] < radix[k] {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == c.len() {
                break;
            }
        }
        if coords.len() as u32 != n {
            return Err(Error::inconsistency("basis does not span E"));
        }
        let brackets = pairs(basis.len())
            .iter()
            .map(|&(i, j)| coords[&self.bracket(basis[i], basis[j])].clone())
            .collect();
        BracketTable::new(self.p, mu, brackets)
    }
}

/// Structure constants of the Lie ring `E` built from `datum`.
pub fn materialize(m: u32, lambda: &Partition, p: u64, datum: &ExtensionDatum) -> Result<BracketTable> {
    LieRingModel::new(m, lambda, p, datum, &Caps::default())?.to_table()
}
