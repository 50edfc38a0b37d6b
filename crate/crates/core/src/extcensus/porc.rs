use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::QPoly;

/// A function of the prime that is polynomial on residue classes mod `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PorcFormula {
    pub modulus: u64,
    pub degmax: u32,
    /// Polynomial per residue class `r` (coprime to `N`).
    pub classes: BTreeMap<u64, QPoly>,
    /// Primes whose values determined the polynomials.
    pub fitted: Vec<u64>,
    /// Primes whose values were predicted and checked.
    pub held_out: Vec<u64>,
    /// Sample primes dividing `N`, left out of every class.
    pub excluded: Vec<u64>,
}

impl PorcFormula {
    /// Value at a prime not dividing `N`, if its class was fitted.
    pub fn eval(&self, p: u64) -> Option<BigRational> {
        let poly = self.classes.get(&(p % self.modulus))?;
        Some(poly.eval(&BigRational::from_integer(BigInt::from(p))))
    }

    pub fn eval_integer(&self, p: u64) -> Option<BigInt> {
        self.eval(p).filter(|v| v.is_integer()).map(|v| v.to_integer())
    }
}

/// A fit whose held-out check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PorcRejection {
    pub modulus: u64,
    pub degmax: u32,
    pub residue: u64,
    pub prime: u64,
    pub predicted: BigRational,
    pub actual: BigInt,
}

impl PorcRejection {
    pub fn suggestion(&self) -> String {
        format!(
            "not PORC at N={}, degree<={}: try a larger modulus or degree",
            self.modulus, self.degmax
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PorcOutcome {
    Fitted(PorcFormula),
    Rejected(PorcRejection),
}

/// Fits one polynomial of degree at most `degmax` per residue class mod `n`
/// on the smallest `degmax + 1` sample primes of the class and checks the
/// rest exactly.
pub fn porc_fit(samples: &BTreeMap<u64, BigInt>, n: u64, degmax: u32) -> Result<PorcOutcome> {
    if n == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let mut by_class: BTreeMap<u64, Vec<(u64, &BigInt)>> = BTreeMap::new();
    let mut excluded = Vec::new();
    for (&p, v) in samples {
        if n.gcd(&p) != 1 {
            excluded.push(p);
            continue;
        }
        by_class.entry(p % n).or_default().push((p, v));
    }
    let need = degmax as usize + 2;
    for r in (0..n).filter(|r| r.gcd(&n) == 1) {
        let have = by_class.get(&r).map_or(0, Vec::len);
        if have < need {
            return Err(Error::refusal(
                format!("PORC fit mod {n} of degree {degmax}: class {r} has {have} samples"),
                need,
                have,
            ));
        }
    }
    let mut formula = PorcFormula {
        modulus: n,
        degmax,
        classes: BTreeMap::new(),
        fitted: Vec::new(),
        held_out: Vec::new(),
        excluded,
    };
    for (r, pts) in by_class {
        let (fit, rest) = pts.split_at(degmax as usize + 1);
        let rat: Vec<(BigRational, BigRational)> = fit
            .iter()
            .map(|(p, v)| {
                (
                    BigRational::from_integer(BigInt::from(*p)),
                    BigRational::from_integer((*v).clone()),
                )
            })
            .collect();
        let poly = QPoly::interpolate(&rat);
        for (p, v) in rest {
            let predicted = poly.eval(&BigRational::from_integer(BigInt::from(*p)));
            if predicted != BigRational::from_integer((*v).clone()) {
                return Ok(PorcOutcome::Rejected(PorcRejection {
                    modulus: n,
                    degmax,
                    residue: r,
                    prime: *p,
                    predicted,
                    actual: (*v).clone(),
                }));
            }
            formula.held_out.push(*p);
        }
        formula.fitted.extend(fit.iter().map(|(p, _)| *p));
        formula.classes.insert(r, poly);
    }
    formula.fitted.sort_unstable();
    formula.held_out.sort_unstable();
    Ok(PorcOutcome::Fitted(formula))
}

/// First accepted fit over `moduli` (in order) and degrees `0..=degmax`;
/// combinations without enough samples are skipped.
pub fn porc_search(samples: &BTreeMap<u64, BigInt>, moduli: &[u64], degmax: u32) -> Result<Option<PorcFormula>> {
    for &n in moduli {
        for deg in 0..=degmax {
            match porc_fit(samples, n, deg) {
                Ok(PorcOutcome::Fitted(f)) => return Ok(Some(f)),
                Ok(PorcOutcome::Rejected(_)) => {}
                Err(e) if e.is_refusal() => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// Default moduli tried by [`porc_search`]: the divisors of 12.
pub const DEFAULT_MODULI: [u64; 6] = [1, 2, 3, 4, 6, 12];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::primes;

    fn samples(f: impl Fn(u64) -> i64, ps: &[u64]) -> BTreeMap<u64, BigInt> {
        ps.iter().map(|&p| (p, BigInt::from(f(p)))).collect()
    }

    #[test]
    fn constant() {
        let s = samples(|_| 5, &[3, 5, 7, 11]);
        let PorcOutcome::Fitted(f) = porc_fit(&s, 1, 0).unwrap() else {
            panic!()
        };
        assert_eq!(f.classes[&0].to_string(), "5");
        assert_eq!(f.held_out, vec![5, 7, 11]);
    }

    #[test]
    fn gcd_classes() {
        let s = samples(|p| (p as i64 - 1).gcd(&3), &[5, 7, 11, 13, 17, 19]);
        let PorcOutcome::Fitted(f) = porc_fit(&s, 3, 0).unwrap() else {
            panic!()
        };
        assert_eq!(f.classes[&1].to_string(), "3");
        assert_eq!(f.classes[&2].to_string(), "1");
        assert!(matches!(porc_fit(&s, 1, 1).unwrap(), PorcOutcome::Rejected(_)));
        assert!(porc_fit(&s, 3, 2).unwrap_err().is_refusal());
    }

    #[test]
    fn search_finds_smallest() {
        let ps: Vec<u64> = primes().skip(1).take(24).collect();
        let s = samples(
            |p| 2 * p as i64 + 61 + 2 * (p as i64 - 1).gcd(&3) + (p as i64 - 1).gcd(&4),
            &ps,
        );
        let f = porc_search(&s, &DEFAULT_MODULI, 1).unwrap().unwrap();
        assert_eq!(f.modulus, 12);
        for p in [101u64, 103, 107, 109] {
            let want = 2 * p as i64 + 61 + 2 * (p as i64 - 1).gcd(&3) + (p as i64 - 1).gcd(&4);
            assert_eq!(f.eval_integer(p).unwrap(), BigInt::from(want));
        }
    }
}
