use std::collections::{BTreeMap, HashSet};

use super::lie::BracketTable;
use crate::dvrmod::FiniteModule;
use crate::error::{Caps, Error, Result};
use crate::exactalg::DvrQuot;

/// A finite group by its multiplication table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    identity: u32,
    mul: Vec<u32>,
}

impl GroupTable {
    /// Validates closure, identity and inverses; associativity is checked
    /// separately by [`GroupTable::is_associative`].
    pub fn new(order: usize, mul: Vec<u32>) -> Result<Self> {
        if mul.len() != order * order || mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::domain("multiplication table has the wrong shape"));
        }
        let identity = (0..order as u32)
            .find(|&e| {
                (0..order as u32)
                    .all(|x| mul[e as usize * order + x as usize] == x && mul[x as usize * order + e as usize] == x)
            })
            .ok_or_else(|| Error::domain("no identity element"))?;
        let g = GroupTable { order, identity, mul };
        for x in 0..order as u32 {
            if !(0..order as u32).any(|y| g.mul(x, y) == identity) {
                return Err(Error::domain(format!("element {x} has no inverse")));
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.order + y as usize]
    }

    pub fn inverse(&self, x: u32) -> u32 {
        (0..self.order as u32)
            .find(|&y| self.mul(x, y) == self.identity)
            .unwrap()
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (x, self.identity);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let a = self.mul(self.inverse(x), self.inverse(y));
        self.mul(a, self.mul(x, y))
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center(&self) -> Vec<u32> {
        let n = self.order as u32;
        (0..n)
            .filter(|&x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
            .collect()
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = HashSet::from([self.identity]);
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut out: Vec<u32> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn derived_subgroup(&self) -> Vec<u32> {
        let n = self.order as u32;
        let comms: HashSet<u32> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.closure(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Isomorphism-invariant summary: element-order histogram, centre
    /// size, derived subgroup size.
    pub fn invariants(&self) -> (BTreeMap<u64, usize>, usize, usize) {
        let mut hist = BTreeMap::new();
        for x in 0..self.order as u32 {
            *hist.entry(self.element_order(x)).or_insert(0) += 1;
        }
        (hist, self.center().len(), self.derived_subgroup().len())
    }

    /// A generating set built greedily, largest element orders first.
    fn generators(&self) -> Vec<u32> {
        let mut elems: Vec<u32> = (0..self.order as u32).collect();
        elems.sort_by_key(|&x| std::cmp::Reverse(self.element_order(x)));
        let mut gens = Vec::new();
        let mut sub = vec![self.identity];
        for x in elems {
            if sub.len() == self.order {
                break;
            }
            if sub.binary_search(&x).is_err() {
                gens.push(x);
                sub = self.closure(&gens);
            }
        }
        gens
    }

    /// Extends images of the generators to a map by breadth-first words and
    /// checks it is a bijective homomorphism.
    fn extend(&self, other: &GroupTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
        let n = self.order;
        let mut map = vec![u32::MAX; n];
        map[self.identity as usize] = other.identity;
        let mut queue = std::collections::VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (g, h) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let img = other.mul(map[x as usize], *h);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = img;
                    queue.push_back(y);
                } else if map[y as usize] != img {
                    return None;
                }
            }
        }
        let distinct: HashSet<u32> = map.iter().copied().collect();
        if distinct.len() != n {
            return None;
        }
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                if map[self.mul(x, y) as usize] != other.mul(map[x as usize], map[y as usize]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Isomorphism test: invariants first, then a backtracking search over
    /// images of a generating set.
    pub fn is_isomorphic(&self, other: &GroupTable) -> bool {
        if self.order != other.order || self.invariants() != other.invariants() {
            return false;
        }
        let gens = self.generators();
        let orders: Vec<u64> = gens.iter().map(|&g| self.element_order(g)).collect();
        let candidates: Vec<Vec<u32>> = orders
            .iter()
            .map(|&o| {
                (0..other.order as u32)
                    .filter(|&y| other.element_order(y) == o)
                    .collect()
            })
            .collect();
        let mut images = Vec::new();
        fn search(a: &GroupTable, b: &GroupTable, gens: &[u32], cands: &[Vec<u32>], images: &mut Vec<u32>) -> bool {
            let i = images.len();
            if i == gens.len() {
                return a.extend(b, gens, images).is_some();
            }
            for &c in &cands[i] {
                // generators must keep their commutation pattern
                let ok = (0..i).all(|j| {
                    (a.mul(gens[i], gens[j]) == a.mul(gens[j], gens[i])) == (b.mul(c, images[j]) == b.mul(images[j], c))
                });
                if !ok {
                    continue;
                }
                images.push(c);
                if search(a, b, gens, cands, images) {
                    return true;
                }
                images.pop();
            }
            false
        }
        search(self, other, &gens, &candidates, &mut images)
    }
}

/// Whether `[x, y^p] = 1` and `[[x, y], z] = 1` for all `x, y, z`.
pub fn frattini_central_check(g: &GroupTable, p: u64) -> bool {
    let n = g.order() as u32;
    for x in 0..n {
        for y in 0..n {
            if g.commutator(x, g.pow(y, p)) != g.identity() {
                return false;
            }
            let c = g.commutator(x, y);
            if (0..n).any(|z| g.commutator(c, z) != g.identity()) {
                return false;
            }
        }
    }
    true
}

/// The group on the set of `L` with `x·y = x + y + ½[x, y]`, where `½` is the
/// inverse of 2 modulo `p^K`. Only defined for odd `p`.
pub fn lazard_group(l: &BracketTable, caps: &Caps) -> Result<GroupTable> {
    let p = l.p();
    if p == 2 {
        return Err(Error::refusal("Lazard correspondence at p = 2", "undefined", "odd p"));
    }
    let mu = l.additive_type().clone();
    let k = mu.largest().max(1);
    let ring = DvrQuot::integers(p, k)?;
    let half = ring.inv(2).unwrap();
    let module = FiniteModule::new(ring, mu, caps.module_size)?;
    let n = module.size() as usize;
    if (n as u128).pow(2) > caps.group_size as u128 {
        return Err(Error::refusal(
            "group multiplication table",
            (n as u128).pow(2),
            caps.group_size,
        ));
    }
    let coords: Vec<Vec<u64>> = (0..n as u32).map(|x| module.decode(x)).collect();
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let br = module.encode(&l.bracket(&coords[x], &coords[y]));
            let sum = module.add(x as u32, y as u32);
            mul[x * n + y] = module.add(sum, module.scale(half, br));
        }
    }
    GroupTable::new(n, mul)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_lie_rings;
    use crate::typelib::Partition;

    fn dihedral8() -> GroupTable {
        // r^a s^b with s r s = r^{-1}; index a + 4b
        let mut mul = vec![0u32; 64];
        for x in 0..8u32 {
            for y in 0..8u32 {
                let (a1, b1) = (x % 4, x / 4);
                let (a2, b2) = (y % 4, y / 4);
                let a = if b1 == 0 { (a1 + a2) % 4 } else { (a1 + 4 - a2) % 4 };
                mul[(x * 8 + y) as usize] = a + 4 * ((b1 + b2) % 2);
            }
        }
        GroupTable::new(8, mul).unwrap()
    }

    fn quaternion8() -> GroupTable {
        // ±1, ±i, ±j, ±k as (sign, unit) with unit 0..4 = 1, i, j, k
        let unit_mul = |a: u32, b: u32| -> (u32, u32) {
            match (a, b) {
                (0, x) | (x, 0) => (0, x),
                (x, y) if x == y => (1, 0),
                (1, 2) => (0, 3),
                (2, 3) => (0, 1),
                (3, 1) => (0, 2),
                (2, 1) => (1, 3),
                (3, 2) => (1, 1),
                (1, 3) => (1, 2),
                _ => unreachable!(),
            }
        };
        let mut mul = vec![0u32; 64];
        for x in 0..8u32 {
            for y in 0..8u32 {
                let (s, u) = unit_mul(x % 4, y % 4);
                let sign = (x / 4 + y / 4 + s) % 2;
                mul[(x * 8 + y) as usize] = u + 4 * sign;
            }
        }
        GroupTable::new(8, mul).unwrap()
    }

    #[test]
    fn dihedral_has_central_frattini() {
        let d = dihedral8();
        assert!(d.is_associative());
        assert!(frattini_central_check(&d, 2));
        assert!(!d.is_abelian());
        let q = quaternion8();
        assert!(q.is_associative());
        assert!(!d.is_isomorphic(&q));
        assert!(d.is_isomorphic(&d));
    }

    #[test]
    fn lazard_groups_of_order_p_cubed() {
        let caps = Caps::default();
        let lc = enumerate_lie_rings(3, 3, &caps).unwrap();
        let groups: Vec<GroupTable> = lc.representatives().map(|t| lazard_group(t, &caps).unwrap()).collect();
        assert_eq!(groups.len(), 5);
        for (i, g) in groups.iter().enumerate() {
            assert!(g.is_associative());
            assert!(frattini_central_check(g, 3));
            for h in &groups[i + 1..] {
                assert!(!g.is_isomorphic(h));
            }
        }
        let heis = lc
            .representatives()
            .zip(&groups)
            .find(|(t, _)| !t.is_abelian() && t.additive_type() == &Partition::ones(3))
            .unwrap()
            .1;
        assert!((0..27).all(|x| x == heis.identity() || heis.element_order(x) == 3));
    }

    #[test]
    fn abelian_table_gives_additive_group() {
        let caps = Caps::default();
        let t = BracketTable::zero(5, Partition::new(vec![2, 1]).unwrap());
        let g = lazard_group(&t, &caps).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.invariants().0.get(&25), Some(&100));
        assert!(lazard_group(&BracketTable::zero(2, Partition::ones(2)), &caps)
            .unwrap_err()
            .is_refusal());
    }
}
