use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::space::{ExtensionDatum, ExtensionSpace};
use crate::dvrmod::{aut_order_formula, beta_image_order, AutGroup, BetaPair};
use crate::error::{Caps, Error, Result};
use crate::exactalg::{parabolic_for_each, parabolic_order, DvrQuot, Mat};
use crate::typelib::Partition;

const CHUNK: usize = 1 << 14;

/// Images `β(h)` over all of `Aut(M_λ)`, with multiplicities.
///
/// The group scan is bounded by the group cap and the number of stored
/// images by the module cap.
pub fn beta_multiset(lambda: &Partition, p: u64, caps: &Caps) -> Result<Vec<(BetaPair, u64)>> {
    if lambda.is_empty() {
        let e = Mat::zeros(0, 0);
        return Ok(vec![(BetaPair { y: e.clone(), z: e }, 1)]);
    }
    let ring = DvrQuot::integers(p, lambda.largest())?;
    let grp = AutGroup::new(lambda, &ring)?;
    let image = beta_image_order(&grp.multiplicities(), p);
    if image > BigUint::from(caps.module_size) {
        return Err(Error::refusal(
            format!("image of β on Aut(M_{lambda}) at p={p}"),
            &image,
            caps.module_size,
        ));
    }
    let cap = caps.group_size;
    let mut mult: HashMap<BetaPair, u64> = HashMap::new();
    grp.for_each(cap, |h| *mult.entry(grp.beta(h)).or_insert(0) += 1)?;
    let mut out: Vec<_> = mult.into_iter().collect();
    out.sort();
    Ok(out)
}

/// `|F_{m,d,λ}(p)|` as the Burnside average of fixed points over the whole
/// acting group `P(V; U_1..U_{l-1}) × Aut(M_λ)`.
///
/// The action of `h` only depends on `β(h)`, so the inner sum runs over
/// distinct images weighted by their fibre sizes.
pub fn orbit_count_naive(m: u32, d: &[u32], lambda: &Partition, p: u64, caps: &Caps) -> Result<BigUint> {
    let sp = ExtensionSpace::new(m, d, lambda, p)?;
    if sp.dim() == 0 {
        return Ok(BigUint::one());
    }
    let blocks: Vec<u32> = d.iter().copied().filter(|&x| x > 0).collect();
    let p_order = parabolic_order(&blocks, p);
    let aut = aut_order_formula(lambda, &BigUint::from(p));
    let group = &p_order * &aut;
    if group > BigUint::from(caps.group_size) {
        return Err(Error::refusal(
            format!("naive Burnside sum for m={m}, d={d:?}, λ={lambda}, p={p}"),
            &group,
            caps.group_size,
        ));
    }
    let betas = beta_multiset(lambda, p, caps)?;
    let fibres: u64 = betas.iter().map(|(_, k)| k).sum();
    if BigUint::from(fibres) != aut {
        return Err(Error::inconsistency(format!(
            "Aut(M_{lambda}) stream has {fibres} elements, expected {aut}"
        )));
    }
    let chunk_sum = |gs: &[Mat]| -> Result<BigUint> {
        gs.par_iter()
            .map(|g| {
                let mut acc = BigUint::zero();
                for (pair, k) in &betas {
                    acc += sp.fix_count(g, pair)? * *k;
                }
                Ok(acc)
            })
            .try_reduce(BigUint::zero, |a, b| Ok(a + b))
    };
    let mut total = BigUint::zero();
    let mut buf = Vec::with_capacity(CHUNK);
    let mut failure = None;
    parabolic_for_each(&blocks, p, caps.group_size, |g| {
        buf.push(g.clone());
        if buf.len() == CHUNK && failure.is_none() {
            match chunk_sum(&buf) {
                Ok(s) => total += s,
                Err(e) => failure = Some(e),
            }
            buf.clear();
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    total += chunk_sum(&buf)?;
    let (orbits, rem) = total.div_rem(&group);
    if !rem.is_zero() {
        return Err(Error::inconsistency(format!(
            "Burnside sum {total} not divisible by |G| = {group} for m={m}, d={d:?}, λ={lambda}, p={p}"
        )));
    }
    Ok(orbits)
}

/// Orbits by explicit union of each point with its images under the acting
/// group (test oracle for tiny spaces).
pub fn orbit_count_explicit(m: u32, d: &[u32], lambda: &Partition, p: u64, caps: &Caps) -> Result<u64> {
    Ok(orbit_representatives(m, d, lambda, p, caps)?.len() as u64)
}

/// The first point, in coordinate order, of every orbit.
pub fn orbit_representatives(
    m: u32,
    d: &[u32],
    lambda: &Partition,
    p: u64,
    caps: &Caps,
) -> Result<Vec<ExtensionDatum>> {
    let sp = ExtensionSpace::new(m, d, lambda, p)?;
    if sp.dim() == 0 {
        return Ok(vec![sp.zero()]);
    }
    let points = sp.points(caps.module_size)?;
    let index: HashMap<Vec<u32>, usize> = points.iter().enumerate().map(|(i, x)| (sp.coords(x), i)).collect();
    let blocks: Vec<u32> = d.iter().copied().filter(|&x| x > 0).collect();
    let mut gs = Vec::new();
    parabolic_for_each(&blocks, p, caps.group_size, |g| gs.push(g.clone()))?;
    let betas = beta_multiset(lambda, p, caps)?;
    let mut seen = vec![false; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        orbits.push(points[start].clone());
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in &gs {
                for (pair, _) in &betas {
                    let j = index[&sp.coords(&sp.act(g, pair, &points[i])?)];
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let caps = Caps::default();
        assert_eq!(orbit_count_naive(3, &[3], &p(&[]), 5, &caps).unwrap(), BigUint::one());
        for q in [2u64, 3, 5, 7] {
            assert_eq!(
                orbit_count_naive(1, &[1], &p(&[1]), q, &caps).unwrap(),
                BigUint::from(2u32)
            );
        }
    }

    #[test]
    fn matches_explicit_orbits() {
        let caps = Caps::default();
        for (m, d, lam, q) in [
            (2u32, vec![2u32], p(&[1]), 3u64),
            (2, vec![1, 1], p(&[1]), 3),
            (2, vec![2, 0], p(&[1]), 2),
            (2, vec![2], p(&[2]), 2),
            (2, vec![2], p(&[1, 1]), 2),
            (3, vec![3], p(&[1]), 2),
            (1, vec![1], p(&[2, 1]), 3),
        ] {
            let naive = orbit_count_naive(m, &d, &lam, q, &caps).unwrap();
            let explicit = orbit_count_explicit(m, &d, &lam, q, &caps).unwrap();
            assert_eq!(naive, BigUint::from(explicit), "m={m} d={d:?} λ={lam} p={q}");
        }
    }
}
