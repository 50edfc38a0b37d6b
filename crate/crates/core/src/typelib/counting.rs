use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::types::TypeKey;
use crate::dvrmod::aut_order_formula;
use crate::error::{Error, Result};
use crate::exactalg::{gl_order, irreducible_count_formula, parabolic_order};

/// Automorphism group order of a pretype of this type.
pub fn pretype_aut_order(t: &TypeKey) -> u64 {
    t.aut_order()
}

fn falling(n: u64, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k as u64 {
        if i >= n {
            return BigUint::zero();
        }
        out *= n - i;
    }
    out
}

/// Number of realisations over `F_q`: injective degree-preserving maps from
/// the index set to monic irreducible polynomials.
pub fn realisation_count(t: &TypeKey, q: u64) -> BigUint {
    t.degree_profile()
        .into_iter()
        .map(|(d, k)| falling(irreducible_count_formula(q, d), k))
        .product()
}

/// Realisations that use only polynomials that can occur in an invertible
/// matrix, i.e. never the polynomial `X`.
pub fn invertible_realisation_count(t: &TypeKey, q: u64) -> BigUint {
    t.degree_profile()
        .into_iter()
        .map(|(d, k)| {
            let n = irreducible_count_formula(q, d) - u64::from(d == 1);
            falling(n, k)
        })
        .product()
}

/// Number of conjugacy classes of `GL_n(q)` (a product of general linear
/// groups for tuples) of type `t`.
pub fn class_count_of_type(t: &TypeKey, q: u64) -> Result<BigUint> {
    exact_div(
        &invertible_realisation_count(t, q),
        &BigUint::from(t.aut_order()),
        || format!("class count of {t:?} at q={q}"),
    )
}

/// Size of any conjugacy class of type `t`; for tuples the product over the
/// components.
pub fn class_size(t: &TypeKey, q: u64) -> Result<BigUint> {
    let mut out = BigUint::one();
    for (i, &n) in t.dims().iter().enumerate() {
        let mut centraliser = BigUint::one();
        for c in t.columns() {
            let part = &c.parts[i];
            if !part.is_empty() {
                centraliser *= aut_order_formula(part, &BigUint::from(q).pow(c.degree));
            }
        }
        out *= exact_div(&gl_order(n, q), &centraliser, || {
            format!("class size of {t:?} at q={q}, component {i}")
        })?;
    }
    Ok(out)
}

/// Number of flags of shape `d` in `F_q^{sum d}` (the q-multinomial).
pub fn flag_count(d: &[u32], q: u64) -> BigUint {
    let n: u32 = d.iter().sum();
    gl_order(n, q) / parabolic_order(d, q)
}

/// Gaussian binomial coefficient.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    flag_count(&[k, n - k], q)
}

pub(crate) fn exact_div(a: &BigUint, b: &BigUint, what: impl FnOnce() -> String) -> Result<BigUint> {
    if b.is_zero() {
        return Err(Error::inconsistency(format!("{}: division by zero", what())));
    }
    let (quot, rem) = a.div_rem(b);
    if !rem.is_zero() {
        return Err(Error::inconsistency(format!("{}: {a} / {b} is not exact", what())));
    }
    Ok(quot)
}
