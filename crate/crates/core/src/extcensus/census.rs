use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use super::burnside::orbit_count_naive;
use super::typed::orbit_count_typed;
use crate::error::{Caps, Error, Result};
use crate::typelib::Partition;

/// Which Burnside engine computes `|F_{m,d,λ}(p)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Engine {
    Naive,
    #[default]
    Typed,
    /// Naive where within the group cap, typed otherwise.
    Auto,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Typed => "typed",
            Engine::Auto => "auto",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Engine::Naive),
            "typed" => Ok(Engine::Typed),
            "auto" => Ok(Engine::Auto),
            _ => Err(Error::domain(format!("unknown engine {s:?}"))),
        }
    }
}

/// `|F_{m,d,λ}(p)|` with the chosen engine.
pub fn orbit_count(engine: Engine, m: u32, d: &[u32], lambda: &Partition, p: u64, caps: &Caps) -> Result<BigUint> {
    match engine {
        Engine::Naive => orbit_count_naive(m, d, lambda, p, caps),
        Engine::Typed => orbit_count_typed(m, d, lambda, p, caps),
        Engine::Auto => match orbit_count_naive(m, d, lambda, p, caps) {
            Err(e) if e.is_refusal() => orbit_count_typed(m, d, lambda, p, caps),
            other => other,
        },
    }
}

type Key = (u32, Vec<u32>, Partition, u64);

/// Memoised evaluation of the centre recursion.
pub struct Census {
    engine: Engine,
    caps: Caps,
    orbits: HashMap<Key, BigUint>,
    x: HashMap<Key, BigUint>,
}

/// One `(m, λ)` summand of a census value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTerm {
    pub m: u32,
    pub lambda: Partition,
    pub count: BigUint,
}

/// Census values by `(n, p)` with their `(m, λ)` breakdown.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    pub rows: BTreeMap<(u32, u64), BigUint>,
    pub terms: BTreeMap<(u32, u64), Vec<CensusTerm>>,
}

impl CensusTable {
    pub fn get(&self, n: u32, p: u64) -> Option<&BigUint> {
        self.rows.get(&(n, p))
    }
}

impl Census {
    pub fn new(engine: Engine, caps: Caps) -> Self {
        Census {
            engine,
            caps,
            orbits: HashMap::new(),
            x: HashMap::new(),
        }
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// `|F_{m,d,λ}(p)|`, memoised; a zero-dimensional space is one point.
    pub fn orbit_count(&mut self, m: u32, d: &[u32], lambda: &Partition, p: u64) -> Result<BigUint> {
        let key = (m, d.to_vec(), lambda.clone(), p);
        if let Some(v) = self.orbits.get(&key) {
            return Ok(v.clone());
        }
        let v = orbit_count(self.engine, m, d, lambda, p, &self.caps)?;
        self.orbits.insert(key, v.clone());
        Ok(v)
    }

    /// `X_{m,d,λ}(p)`: orbits of data whose extension has centre exactly
    /// the flag's last step. `X = |F_d| - Σ_{k=1}^{d_l} X_{(d_1..d_{l-1}, k, d_l-k)}`.
    pub fn x_count(&mut self, m: u32, d: &[u32], lambda: &Partition, p: u64) -> Result<BigUint> {
        let key = (m, d.to_vec(), lambda.clone(), p);
        if let Some(v) = self.x.get(&key) {
            return Ok(v.clone());
        }
        let total = self.orbit_count(m, d, lambda, p)?;
        let (&last, init) = d.split_last().ok_or_else(|| Error::domain("empty flag shape"))?;
        let mut rest = BigInt::from(total);
        for k in 1..=last {
            let mut e = init.to_vec();
            e.push(k);
            e.push(last - k);
            rest -= BigInt::from(self.x_count(m, &e, lambda, p)?);
        }
        if rest.sign() == Sign::Minus {
            return Err(Error::inconsistency(format!(
                "negative X for m={m}, d={d:?}, λ={lambda}, p={p}"
            )));
        }
        let v = rest.to_biguint().unwrap();
        self.x.insert(key, v.clone());
        Ok(v)
    }

    /// The `(m, λ)` terms of `census(n, p)`.
    pub fn terms(&mut self, n: u32, p: u64) -> Result<Vec<CensusTerm>> {
        let mut out = Vec::new();
        for m in 0..=n {
            for lambda in Partition::all_of_weight(n - m) {
                let count = self.x_count(m, &[m], &lambda, p)?;
                out.push(CensusTerm { m, lambda, count });
            }
        }
        Ok(out)
    }

    /// Number of class-2 Lie rings of order `p^n` with central Frattini
    /// ideal: `Σ_{m + |λ| = n} X_{m,(m),λ}(p)`.
    pub fn census(&mut self, n: u32, p: u64) -> Result<BigUint> {
        Ok(self.terms(n, p)?.iter().map(|t| &t.count).sum())
    }

    /// Fills a table for every `n` in `ns` and prime in `ps`.
    pub fn table(&mut self, ns: &[u32], ps: &[u64]) -> Result<CensusTable> {
        let mut table = CensusTable::default();
        for &n in ns {
            for &p in ps {
                let terms = self.terms(n, p)?;
                let total = terms.iter().map(|t| &t.count).sum::<BigUint>();
                if total.is_zero() {
                    return Err(Error::inconsistency(format!("census({n}, {p}) is zero")));
                }
                table.rows.insert((n, p), total);
                table.terms.insert((n, p), terms);
            }
        }
        Ok(table)
    }
}

/// One-shot `census(n, p)`.
pub fn census(n: u32, p: u64, engine: Engine, caps: &Caps) -> Result<BigUint> {
    Census::new(engine, *caps).census(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let mut c = Census::new(Engine::Typed, Caps::default());
        for p in [2u64, 3, 5, 7] {
            assert_eq!(c.census(1, p).unwrap(), BigUint::from(1u32));
            assert_eq!(c.census(2, p).unwrap(), BigUint::from(2u32));
        }
        assert_eq!(c.census(3, 3).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn recursion_corner_cases() {
        let mut c = Census::new(Engine::Typed, Caps::default());
        for lam in Partition::all_up_to_weight(3) {
            assert_eq!(c.x_count(0, &[0], &lam, 3).unwrap(), BigUint::from(1u32));
        }
        for m in 1..=4 {
            assert!(c.x_count(m, &[m], &Partition::empty(), 5).unwrap().is_zero());
        }
    }

    #[test]
    fn engines_agree_on_the_recursion() {
        let mut a = Census::new(Engine::Typed, Caps::default());
        let mut b = Census::new(Engine::Naive, Caps::default());
        for n in 1..=3 {
            for p in [2u64, 3] {
                assert_eq!(a.terms(n, p).unwrap(), b.terms(n, p).unwrap());
            }
        }
    }
}
