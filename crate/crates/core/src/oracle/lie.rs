use std::collections::HashMap;

use num_bigint::BigUint;

use crate::dvrmod::{aut_order_formula, AutGroup, AutMatrix, FiniteModule};
use crate::error::{Caps, Error, Result};
use crate::exactalg::{pairs, DvrQuot, Gf, Mat};
use crate::typelib::Partition;

/// A class-2 Lie ring with central Frattini ideal, on the abelian group
/// `A = ⊕ Z/p^{μ_k}` with generators `a_k`.
///
/// `brackets[t]` is `[a_i, a_j]` for the `t`-th pair `i < j`, as coordinates
/// (coordinate `k` modulo `p^{μ_k}`). Brackets lie in `A[p]`, so the
/// bracket of arbitrary elements only depends on their images in `A/pA`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketTable {
    p: u64,
    mu: Partition,
    brackets: Vec<Vec<u64>>,
}

impl BracketTable {
    pub fn new(p: u64, mu: Partition, brackets: Vec<Vec<u64>>) -> Result<Self> {
        let g = mu.len();
        if brackets.len() != pairs(g).len() || brackets.iter().any(|b| b.len() != g) {
            return Err(Error::domain("bracket table has the wrong shape"));
        }
        let t = BracketTable { p, mu, brackets };
        t.verify()?;
        Ok(t)
    }

    pub fn zero(p: u64, mu: Partition) -> Self {
        let g = mu.len();
        BracketTable {
            p,
            brackets: vec![vec![0; g]; pairs(g).len()],
            mu,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn additive_type(&self) -> &Partition {
        &self.mu
    }

    pub fn brackets(&self) -> &[Vec<u64>] {
        &self.brackets
    }

    /// `log_p |L|`.
    pub fn order_exponent(&self) -> u32 {
        self.mu.weight()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|b| b.iter().all(|&x| x == 0))
    }

    fn modulus(&self, k: usize) -> u64 {
        self.p.pow(self.mu.parts()[k])
    }

    /// `[a_i, a_j]` for any `i, j`.
    pub fn generator_bracket(&self, i: usize, j: usize) -> Vec<u64> {
        let g = self.mu.len();
        if i == j {
            return vec![0; g];
        }
        let (a, b, sign) = if i < j { (i, j, false) } else { (j, i, true) };
        let t = a * g - a * (a + 1) / 2 + (b - a - 1);
        let v = &self.brackets[t];
        if sign {
            v.iter()
                .enumerate()
                .map(|(k, &x)| (self.modulus(k) - x) % self.modulus(k))
                .collect()
        } else {
            v.clone()
        }
    }

    /// `[x, y]` for elements given by coordinates.
    pub fn bracket(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let g = self.mu.len();
        let mut out = vec![0u64; g];
        for (t, &(i, j)) in pairs(g).iter().enumerate() {
            let coef = (x[i] % self.p * (y[j] % self.p) + self.p * self.p - x[j] % self.p * (y[i] % self.p)) % self.p;
            if coef == 0 {
                continue;
            }
            for k in 0..g {
                out[k] = (out[k] + coef * self.brackets[t][k]) % self.modulus(k);
            }
        }
        out
    }

    /// Checks `[pA, A] = 0` and that every bracket is central; alternation
    /// and bilinearity hold by construction.
    pub fn verify(&self) -> Result<()> {
        let g = self.mu.len();
        for (t, b) in self.brackets.iter().enumerate() {
            for k in 0..g {
                if b[k] >= self.modulus(k) || b[k] * self.p % self.modulus(k) != 0 {
                    return Err(Error::domain(format!("bracket {t} is not in A[p]")));
                }
            }
        }
        for b in &self.brackets {
            for k in 0..g {
                let mut e = vec![0; g];
                e[k] = 1;
                if self.bracket(b, &e).iter().any(|&x| x != 0) {
                    return Err(Error::domain("bracket values are not central"));
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on generators; automatic in class 2 and kept as a
    /// tripwire.
    pub fn jacobi_holds(&self) -> bool {
        let g = self.mu.len();
        let unit = |k: usize| {
            let mut e = vec![0; g];
            e[k] = 1;
            e
        };
        for i in 0..g {
            for j in 0..g {
                for k in 0..g {
                    let mut sum = vec![0u64; g];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket(&unit(a), &unit(b));
                        let v = self.bracket(&inner, &unit(c));
                        for t in 0..g {
                            sum[t] = (sum[t] + v[t]) % self.modulus(t);
                        }
                    }
                    if sum.iter().any(|&x| x != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Every subspace of `F_p^g`, as a matrix whose rows are an RREF basis.
pub fn subspaces(g: usize, f: &Gf) -> Vec<Mat> {
    let q = f.order();
    let mut out = Vec::new();
    for mask in 0u32..1 << g {
        let pivots: Vec<usize> = (0..g).filter(|&c| mask >> c & 1 == 1).collect();
        let r = pivots.len();
        let mut free = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..g {
                if !pivots.contains(&c) {
                    free.push((row, c));
                }
            }
        }
        let total = (q as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut m = Mat::zeros(r, g);
            for (row, &pc) in pivots.iter().enumerate() {
                m.set(row, pc, 1);
            }
            let mut c = code;
            for &(row, col) in &free {
                m.set(row, col, (c % q as u64) as u32);
                c /= q as u64;
            }
            out.push(m);
        }
    }
    out
}

/// Abelian group `A`, its automorphisms and the tables on it.
struct Stratum {
    p: u64,
    mu: Partition,
    f: std::sync::Arc<Gf>,
    module: FiniteModule,
    group: AutGroup,
}

impl Stratum {
    fn new(mu: &Partition, p: u64, caps: &Caps) -> Result<Self> {
        let ring = DvrQuot::integers(p, mu.largest())?;
        Ok(Stratum {
            p,
            mu: mu.clone(),
            f: Gf::new(p)?,
            module: FiniteModule::new(ring.clone(), mu.clone(), caps.module_size)?,
            group: AutGroup::new(mu, &ring)?,
        })
    }

    fn g(&self) -> usize {
        self.mu.len()
    }

    /// `A[p]` coordinates `w` (basis `p^{μ_k-1} a_k`) as an element of `A`.
    fn socle_element(&self, w: &[u32]) -> Vec<u64> {
        w.iter()
            .zip(self.mu.parts())
            .map(|(&x, &e)| x as u64 * self.p.pow(e - 1))
            .collect()
    }

    /// Candidate tables with radical exactly `r` (rows of an RREF basis of
    /// a subspace of `A/pA`).
    fn tables_with_radical(&self, r: &Mat, out: &mut Vec<BracketTable>) -> Result<()> {
        let g = self.g();
        let f = &*self.f;
        let k = g - r.rows();
        if k == 0 {
            out.push(BracketTable::zero(self.p, self.mu.clone()));
            return Ok(());
        }
        // basis: radical rows then unit vectors at non-pivot columns
        let pivots: Vec<usize> = (0..r.rows())
            .map(|i| (0..g).find(|&c| r.get(i, c) != 0).unwrap())
            .collect();
        let comp: Vec<usize> = (0..g).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(g, g);
        for i in 0..r.rows() {
            for c in 0..g {
                basis.set(i, c, r.get(i, c));
            }
        }
        for (a, &c) in comp.iter().enumerate() {
            basis.set(r.rows() + a, c, 1);
        }
        // coordinates of a_i in the basis: row i of basis^{-1}
        let coords = basis
            .inverse(f)
            .ok_or_else(|| Error::inconsistency("complement is not a basis"))?;
        let values = self.socle_values(r);
        let cpairs = pairs(k);
        let total = (values.len() as u64).pow(cpairs.len() as u32);
        let gpairs = pairs(g);
        for code in 0..total {
            let mut c = code;
            let choice: Vec<&Vec<u32>> = cpairs
                .iter()
                .map(|_| {
                    let v = &values[(c % values.len() as u64) as usize];
                    c /= values.len() as u64;
                    v
                })
                .collect();
            if !self.nondegenerate(k, &cpairs, &choice) {
                continue;
            }
            let off = r.rows();
            let brackets = gpairs
                .iter()
                .map(|&(i, j)| {
                    let mut w = vec![0u32; g];
                    for (t, &(a, b)) in cpairs.iter().enumerate() {
                        let xa = coords.get(i, off + a);
                        let xb = coords.get(i, off + b);
                        let ya = coords.get(j, off + a);
                        let yb = coords.get(j, off + b);
                        let coef = f.sub(f.mul(xa, yb), f.mul(xb, ya));
                        for (wt, &v) in w.iter_mut().zip(choice[t]) {
                            *wt = f.add(*wt, f.mul(coef, v));
                        }
                    }
                    self.socle_element(&w)
                })
                .collect();
            out.push(BracketTable {
                p: self.p,
                mu: self.mu.clone(),
                brackets,
            });
        }
        Ok(())
    }

    /// `{w ∈ A[p] : image of w in A/pA lies in r}`.
    fn socle_values(&self, r: &Mat) -> Vec<Vec<u32>> {
        let g = self.g();
        let q = self.p as u32;
        let f = &*self.f;
        let mut out = Vec::new();
        let total = (q as u64).pow(g as u32);
        for code in 0..total {
            let mut c = code;
            let w: Vec<u32> = (0..g)
                .map(|_| {
                    let x = (c % q as u64) as u32;
                    c /= q as u64;
                    x
                })
                .collect();
            let bar: Vec<u32> = w
                .iter()
                .zip(self.mu.parts())
                .map(|(&x, &e)| if e == 1 { x } else { 0 })
                .collect();
            let mut rows: Vec<Vec<u32>> = (0..r.rows()).map(|i| r.row(i).to_vec()).collect();
            rows.push(bar);
            if Mat::from_rows(&rows).rank(f) == r.rows() {
                out.push(w);
            }
        }
        out
    }

    /// Whether the vector-valued alternating form on the complement has
    /// zero radical.
    fn nondegenerate(&self, k: usize, cpairs: &[(usize, usize)], choice: &[&Vec<u32>]) -> bool {
        let g = self.g();
        let f = &*self.f;
        let mut stacked = Mat::zeros(g * k, k);
        for (t, &(a, b)) in cpairs.iter().enumerate() {
            for coord in 0..g {
                let v = choice[t][coord];
                stacked.set(coord * k + a, b, v);
                stacked.set(coord * k + b, a, f.neg(v));
            }
        }
        stacked.rank(f) == k
    }

    fn all_tables(&self) -> Result<Vec<BracketTable>> {
        let mut out = Vec::new();
        for r in subspaces(self.g(), &self.f) {
            self.tables_with_radical(&r, &mut out)?;
        }
        Ok(out)
    }

    /// Number of candidate tables, without building them.
    fn table_estimate(&self) -> u128 {
        let mut total = 0u128;
        for r in subspaces(self.g(), &self.f) {
            let k = self.g() - r.rows();
            let vals = self.socle_values(&r).len() as u128;
            total = total.saturating_add(vals.saturating_pow(pairs(k).len() as u32));
        }
        total
    }

    /// Generators of `Aut(A)`: unit scalings of one coordinate and
    /// elementary transvections `a_i ↦ a_i + p^{max(0, μ_j - μ_i)} a_j`.
    fn aut_generators(&self) -> Result<Vec<AutMatrix>> {
        let g = self.g();
        let k = self.mu.largest();
        let modulus = self.p.pow(k);
        let units = unit_generators(self.p, k);
        let mut out = Vec::new();
        let id: Vec<u64> = self.group.identity().entries().to_vec();
        for i in 0..g {
            for &u in &units {
                let mut e = id.clone();
                e[i * g + i] = u % modulus;
                let x = self.group.from_entries(&e)?;
                if x != self.group.identity() {
                    out.push(x);
                }
            }
            for j in 0..g {
                if i == j {
                    continue;
                }
                let (mi, mj) = (self.mu.parts()[i], self.mu.parts()[j]);
                let mut e = id.clone();
                e[j * g + i] = self.p.pow(mj.saturating_sub(mi)) % modulus;
                let x = self.group.from_entries(&e)?;
                if x != self.group.identity() {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    /// `φ·c`: `(x, y) ↦ φ(c(φ̄^{-1} x, φ̄^{-1} y))`.
    fn act(&self, phi: &AutMatrix, phibar_inv: &Mat, t: &BracketTable) -> BracketTable {
        let g = self.g();
        let brackets = pairs(g)
            .iter()
            .map(|&(i, j)| {
                let col = |c: usize| -> Vec<u64> { (0..g).map(|r| phibar_inv.get(r, c) as u64).collect() };
                let v = t.bracket(&col(i), &col(j));
                self.group.apply(phi, &v)
            })
            .collect();
        BracketTable {
            p: self.p,
            mu: self.mu.clone(),
            brackets,
        }
    }

    fn key(&self, t: &BracketTable) -> Vec<u32> {
        t.brackets.iter().map(|b| self.module.encode(b)).collect()
    }
}

/// Generators of `(Z/p^k)^×`.
pub fn unit_generators(p: u64, k: u32) -> Vec<u64> {
    let modulus = p.pow(k);
    if modulus <= 2 {
        return Vec::new();
    }
    if p == 2 {
        let mut out = vec![modulus - 1];
        if k >= 3 {
            out.push(5);
        }
        return out;
    }
    let f = Gf::new(p).unwrap();
    let mut r = f.primitive() as u64;
    // a primitive root mod p^2 generates mod every p^k
    let p2 = p * p;
    let mut x = 1u64;
    for _ in 0..p - 1 {
        x = x * r % p2;
    }
    if x == 1 {
        r += p;
    }
    vec![r % modulus]
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Lie rings on one abelian group, up to isomorphism.
#[derive(Clone, Debug)]
pub struct StratumCensus {
    pub additive_type: Partition,
    pub tables: usize,
    /// One table per isomorphism class.
    pub representatives: Vec<BracketTable>,
    index: HashMap<Vec<u32>, usize>,
    module: FiniteModule,
}

impl StratumCensus {
    /// Isomorphism class of a table on this group.
    pub fn classify(&self, t: &BracketTable) -> Option<usize> {
        let key: Vec<u32> = t.brackets.iter().map(|b| self.module.encode(b)).collect();
        self.index.get(&key).copied()
    }
}

/// Isomorphism classes of class-2 Lie rings of order `p^n` with central
/// Frattini ideal, stratified by additive group.
#[derive(Clone, Debug)]
pub struct LieCensus {
    pub n: u32,
    pub p: u64,
    pub strata: Vec<StratumCensus>,
}

impl LieCensus {
    pub fn count(&self) -> usize {
        self.strata.iter().map(|s| s.representatives.len()).sum()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &BracketTable> {
        self.strata.iter().flat_map(|s| s.representatives.iter())
    }

    /// `(stratum, class)` of any valid table of order `p^n`.
    pub fn classify(&self, t: &BracketTable) -> Option<(usize, usize)> {
        let (i, s) = self
            .strata
            .iter()
            .enumerate()
            .find(|(_, s)| &s.additive_type == t.additive_type())?;
        Some((i, s.classify(t)?))
    }
}

/// Enumerates every table by radical, then merges tables along a
/// generating set of `Aut(A)`.
pub fn enumerate_lie_rings(n: u32, p: u64, caps: &Caps) -> Result<LieCensus> {
    if n == 0 {
        return Err(Error::domain("order exponent must be positive"));
    }
    let mut strata_in = Vec::new();
    let mut estimate = 0u128;
    for mu in Partition::all_of_weight(n) {
        let s = Stratum::new(&mu, p, caps)?;
        estimate = estimate.saturating_add(s.table_estimate());
        strata_in.push(s);
    }
    if estimate > caps.module_size as u128 {
        return Err(Error::refusal(
            format!("Lie ring tables of order {p}^{n}"),
            estimate,
            caps.module_size,
        ));
    }
    let mut strata = Vec::new();
    for s in strata_in {
        let tables = s.all_tables()?;
        let index: HashMap<Vec<u32>, usize> = tables.iter().enumerate().map(|(i, t)| (s.key(t), i)).collect();
        if index.len() != tables.len() {
            return Err(Error::inconsistency("duplicate bracket tables"));
        }
        let mut parent: Vec<usize> = (0..tables.len()).collect();
        for phi in s.aut_generators()? {
            let inv = s.group.residue(&phi).inverse(&s.f).unwrap();
            for (i, t) in tables.iter().enumerate() {
                let image = s.act(&phi, &inv, t);
                let j = *index
                    .get(&s.key(&image))
                    .ok_or_else(|| Error::inconsistency("automorphism image is not a valid table"))?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut class_of_root: HashMap<usize, usize> = HashMap::new();
        let mut representatives = Vec::new();
        let mut classes = HashMap::new();
        for (i, t) in tables.iter().enumerate() {
            let root = find(&mut parent, i);
            let id = *class_of_root.entry(root).or_insert_with(|| {
                representatives.push(t.clone());
                representatives.len() - 1
            });
            classes.insert(s.key(t), id);
        }
        strata.push(StratumCensus {
            additive_type: s.mu.clone(),
            tables: tables.len(),
            representatives,
            index: classes,
            module: s.module.clone(),
        });
    }
    Ok(LieCensus { n, p, strata })
}

/// Orbit count by minimal image under every automorphism; an independent
/// path for small cases.
pub fn count_by_canonical_form(mu: &Partition, p: u64, caps: &Caps) -> Result<usize> {
    let s = Stratum::new(mu, p, caps)?;
    let tables = s.all_tables()?;
    let order = aut_order_formula(mu, &BigUint::from(p));
    let work = order * BigUint::from(tables.len());
    if work > BigUint::from(caps.group_size) {
        return Err(Error::refusal("canonical-form orbit count", work, caps.group_size));
    }
    let mut auts = Vec::new();
    s.group.for_each(caps.group_size, |x| {
        let inv = s.group.residue(x).inverse(&s.f).unwrap();
        auts.push((x.clone(), inv));
    })?;
    let mut canon = std::collections::HashSet::new();
    for t in &tables {
        let best = auts.iter().map(|(x, inv)| s.key(&s.act(x, inv, t))).min().unwrap();
        canon.insert(best);
    }
    Ok(canon.len())
}

/// Size of the subgroup of `Aut(A)` generated by the oracle's generators.
pub fn generated_aut_order(mu: &Partition, p: u64, caps: &Caps) -> Result<usize> {
    let s = Stratum::new(mu, p, caps)?;
    let gens = s.aut_generators()?;
    let mut seen = std::collections::HashSet::new();
    let id = s.group.identity();
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = s.group.compose(g, &x);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_counts() {
        let caps = Caps::default();
        for q in [2u64, 3, 5] {
            assert_eq!(enumerate_lie_rings(1, q, &caps).unwrap().count(), 1);
            assert_eq!(enumerate_lie_rings(2, q, &caps).unwrap().count(), 2);
        }
        assert_eq!(enumerate_lie_rings(3, 5, &caps).unwrap().count(), 5);
    }

    #[test]
    fn subspace_counts() {
        let f = Gf::new(3).unwrap();
        // 1 + 13 + 13 + 1 subspaces of F_3^3
        assert_eq!(subspaces(3, &f).len(), 28);
    }

    #[test]
    fn generators_generate() {
        let caps = Caps::default();
        for (mu, q) in [
            (p(&[1, 1]), 3u64),
            (p(&[2, 1]), 2),
            (p(&[2, 1]), 3),
            (p(&[3]), 2),
            (p(&[3, 1]), 2),
            (p(&[2, 2]), 2),
            (p(&[1, 1, 1]), 2),
        ] {
            let want = aut_order_formula(&mu, &BigUint::from(q));
            assert_eq!(
                BigUint::from(generated_aut_order(&mu, q, &caps).unwrap()),
                want,
                "{mu} p={q}"
            );
        }
    }

    #[test]
    fn canonical_forms_agree() {
        let caps = Caps::default();
        for q in [2u64, 3] {
            let lc = enumerate_lie_rings(3, q, &caps).unwrap();
            for s in &lc.strata {
                assert_eq!(
                    count_by_canonical_form(&s.additive_type, q, &caps).unwrap(),
                    s.representatives.len()
                );
            }
        }
    }

    #[test]
    fn tables_are_valid() {
        let caps = Caps::default();
        let lc = enumerate_lie_rings(4, 2, &caps).unwrap();
        for t in lc.representatives() {
            t.verify().unwrap();
            assert!(t.jacobi_holds());
            assert_eq!(lc.classify(t).is_some(), true);
        }
    }
}
