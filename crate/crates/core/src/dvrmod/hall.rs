use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::module::FiniteModule;
use crate::error::{Caps, Error, Result};
use crate::exactalg::{prime_powers, DvrKind, DvrQuot, QPoly, MAX_FIELD_ORDER};
use crate::typelib::Partition;

type HallTable = HashMap<(Partition, Partition), u64>;

static TABLES: LazyLock<Mutex<HashMap<(Partition, DvrKind, u32), Arc<HallTable>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static POLYS: LazyLock<Mutex<HashMap<(Partition, Partition, Partition), QPoly>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static VALUES: LazyLock<Mutex<HashMap<(Partition, Partition, Partition, u64), BigUint>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Largest `|λ|` for which Hall numbers at arbitrary `q` come from the
/// interpolated polynomial. Beyond it the sample points needed by the
/// `|λ|^2` degree bound are out of enumeration range.
pub const HALL_POLY_WEIGHT_LIMIT: u32 = 3;

/// Submodule counts of `M_λ` over `ring` by (sub type, quotient type),
/// computed once per ring and shared.
pub fn hall_table(lambda: &Partition, ring: &DvrQuot, caps: &Caps) -> Result<Arc<HallTable>> {
    let key = (lambda.clone(), ring.kind(), ring.cap());
    if let Some(t) = TABLES.lock().unwrap().get(&key) {
        return Ok(Arc::clone(t));
    }
    let m = FiniteModule::new(ring.clone(), lambda.clone(), caps.module_size)?;
    let t = Arc::new(m.hall_table()?);
    TABLES.lock().unwrap().insert(key, Arc::clone(&t));
    Ok(t)
}

/// Answers the cases that need no enumeration.
fn trivial_hall(lambda: &Partition, mu: &Partition, nu: &Partition) -> Option<u64> {
    if mu.weight() + nu.weight() != lambda.weight() {
        return Some(0);
    }
    if mu.is_empty() {
        return Some(u64::from(nu == lambda));
    }
    if nu.is_empty() {
        return Some(u64::from(mu == lambda));
    }
    if !lambda.contains(mu) || !lambda.contains(nu) {
        return Some(0);
    }
    None
}

/// Number of submodules `N ≤ M_λ` with `N ≅ M_μ` and `M_λ/N ≅ M_ν`, by
/// exhaustive enumeration over `ring` (whose cap must be at least `λ_1`).
pub fn hall_number(lambda: &Partition, mu: &Partition, nu: &Partition, ring: &DvrQuot, caps: &Caps) -> Result<u64> {
    if lambda.largest() > ring.cap() {
        return Err(Error::domain(format!(
            "ring cap {} below largest part of {lambda}",
            ring.cap()
        )));
    }
    if mu.weight() + nu.weight() != lambda.weight() {
        return Ok(0);
    }
    let t = hall_table(lambda, ring, caps)?;
    Ok(t.get(&(mu.clone(), nu.clone())).copied().unwrap_or(0))
}

/// Number of chains `0 = N_0 ≤ N_1 ≤ .. ≤ N_r = M_λ` with
/// `N_i/N_{i-1} ≅ M_{μ^i}`, by recursion on the first step.
pub fn chain_count(lambda: &Partition, mus: &[Partition], ring: &DvrQuot, caps: &Caps) -> Result<u64> {
    let Some((first, rest)) = mus.split_first() else {
        return Ok(u64::from(lambda.is_empty()));
    };
    if mus.iter().map(|m| m.weight()).sum::<u32>() != lambda.weight() {
        return Ok(0);
    }
    if rest.is_empty() {
        return Ok(u64::from(first == lambda));
    }
    let t = hall_table(lambda, ring, caps)?;
    let mut total = 0;
    for ((sub, quot), &count) in t.iter() {
        if sub != first {
            continue;
        }
        total += count * chain_count(quot, rest, ring, caps)?;
    }
    Ok(total)
}

/// Sample residue field sizes for a polynomial of degree at most `deg`,
/// plus the held-out one (last).
fn sample_points(deg: u32) -> Vec<u64> {
    let needed = (deg + 2) as usize;
    prime_powers().take(needed).collect()
}

/// The Hall polynomial `g^λ_{μν}(q)`, interpolated from exhaustive counts
/// over `F_q[t]/(t^{λ_1})` at `|λ|^2 + 1` prime powers and validated on one
/// more.
pub fn hall_polynomial(lambda: &Partition, mu: &Partition, nu: &Partition, caps: &Caps) -> Result<QPoly> {
    if let Some(v) = trivial_hall(lambda, mu, nu) {
        return Ok(QPoly::constant(BigInt::from(v).into()));
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(p) = POLYS.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let k = lambda.largest();
    let what = format!("Hall polynomial for {lambda};{mu},{nu}");
    let poly = interpolate_in_q(lambda.weight().pow(2), &what, |q| {
        let ring = DvrQuot::power_series(q, k)?;
        hall_number(lambda, mu, nu, &ring, caps).map(BigUint::from)
    })?;
    POLYS.lock().unwrap().insert(key, poly.clone());
    Ok(poly)
}

/// Hall number at residue field size `q` for any `q`: from the polynomial
/// when `|λ|` is small, otherwise by enumeration when `q^{|λ|}` is within
/// the module cap.
pub fn hall_value(lambda: &Partition, mu: &Partition, nu: &Partition, q: u64, caps: &Caps) -> Result<BigUint> {
    if let Some(v) = trivial_hall(lambda, mu, nu) {
        return Ok(BigUint::from(v));
    }
    let key = (lambda.clone(), mu.clone(), nu.clone(), q);
    if let Some(v) = VALUES.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = if lambda.weight() <= HALL_POLY_WEIGHT_LIMIT {
        let poly = hall_polynomial(lambda, mu, nu, caps)?;
        let x = poly
            .eval_integer(&BigInt::from(q))
            .filter(|x| !x.is_negative())
            .ok_or_else(|| {
                Error::inconsistency(format!(
                    "Hall polynomial for {lambda};{mu},{nu} is not a count at q={q}"
                ))
            })?;
        x.to_biguint().unwrap()
    } else {
        let size = (q as u128).checked_pow(lambda.weight()).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u64 || size > caps.module_size as u128 {
            return Err(Error::refusal(
                format!("Hall number for {lambda} over a residue field of size {q}"),
                size,
                caps.module_size,
            ));
        }
        let ring = DvrQuot::power_series(q, lambda.largest())?;
        BigUint::from(hall_number(lambda, mu, nu, &ring, caps)?)
    };
    VALUES.lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Chain count at residue field size `q`, built from [`hall_value`].
pub fn chain_value(lambda: &Partition, mus: &[Partition], q: u64) -> Result<BigUint> {
    chain_value_with(lambda, mus, q, &Caps::default())
}

pub fn chain_value_with(lambda: &Partition, mus: &[Partition], q: u64, caps: &Caps) -> Result<BigUint> {
    let Some((first, rest)) = mus.split_first() else {
        return Ok(BigUint::from(u32::from(lambda.is_empty())));
    };
    if mus.iter().map(|m| m.weight()).sum::<u32>() != lambda.weight() {
        return Ok(BigUint::zero());
    }
    if rest.is_empty() {
        return Ok(BigUint::from(u32::from(first == lambda)));
    }
    let rest_weight = lambda.weight() - first.weight();
    let mut total = BigUint::zero();
    for nu in Partition::all_of_weight(rest_weight) {
        if !lambda.contains(&nu) {
            continue;
        }
        let h = hall_value(lambda, first, &nu, q, caps)?;
        if h.is_zero() {
            continue;
        }
        total += h * chain_value_with(&nu, rest, q, caps)?;
    }
    Ok(total)
}

/// Interpolates a nonnegative integer function of `q` of degree at most
/// `deg` from its values at the first `deg + 1` prime powers and validates
/// it on the next one.
pub(crate) fn interpolate_in_q(deg: u32, what: &str, mut value: impl FnMut(u64) -> Result<BigUint>) -> Result<QPoly> {
    let qs = sample_points(deg);
    let mut pts = Vec::new();
    for &q in &qs {
        pts.push((q as i64, BigInt::from(value(q)?)));
    }
    let (held, fit) = pts.split_last().unwrap();
    let poly = QPoly::interpolate_ints(fit);
    if poly.eval_integer(&BigInt::from(held.0)) != Some(held.1.clone()) {
        return Err(Error::inconsistency(format!(
            "{what}: interpolant misses the held-out point q={}",
            held.0
        )));
    }
    Ok(poly)
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
        let f2 = DvrQuot::integers(2, 1).unwrap();
        assert_eq!(hall_number(&p(&[1, 1]), &p(&[1]), &p(&[1]), &f2, &caps).unwrap(), 3);
        for q in [2u64, 3, 4, 5] {
            let r = DvrQuot::power_series(q, 2).unwrap();
            assert_eq!(hall_number(&p(&[2]), &p(&[1]), &p(&[1]), &r, &caps).unwrap(), 1);
        }
        assert_eq!(
            hall_number(&p(&[2]), &p(&[2]), &p(&[1]), &DvrQuot::integers(3, 2).unwrap(), &caps).unwrap(),
            0
        );
    }

    #[test]
    fn chains() {
        let caps = Caps::default();
        let f3 = DvrQuot::integers(3, 1).unwrap();
        assert_eq!(chain_count(&p(&[1, 1]), &[p(&[1]), p(&[1])], &f3, &caps).unwrap(), 4);
        assert_eq!(
            chain_count(&p(&[2, 1]), &[p(&[2, 1])], &DvrQuot::integers(3, 2).unwrap(), &caps).unwrap(),
            1
        );
        assert_eq!(chain_count(&p(&[1, 1]), &[p(&[1])], &f3, &caps).unwrap(), 0);
    }

    #[test]
    fn polynomials() {
        let caps = Caps::default();
        let lines = hall_polynomial(&p(&[1, 1]), &p(&[1]), &p(&[1]), &caps).unwrap();
        assert_eq!(lines.to_string(), "q + 1");
        let one = hall_polynomial(&p(&[2]), &p(&[1]), &p(&[1]), &caps).unwrap();
        assert_eq!(one.to_string(), "1");
        assert!(hall_polynomial(&p(&[2]), &p(&[1, 1]), &p(&[]), &caps)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn chain_value_matches_enumeration() {
        let caps = Caps::default();
        let lambda = p(&[2, 1]);
        let mus = [p(&[1]), p(&[1]), p(&[1])];
        for q in [2u64, 3] {
            let ring = DvrQuot::integers(q, 2).unwrap();
            let direct = chain_count(&lambda, &mus, &ring, &caps).unwrap();
            assert_eq!(chain_value(&lambda, &mus, q).unwrap(), BigUint::from(direct));
        }
    }
}
