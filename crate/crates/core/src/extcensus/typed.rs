use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::space::ExtensionSpace;
use crate::dvrmod::beta_image_order;
use crate::error::{Caps, Error, Result};
use crate::exactalg::{parabolic_order, Gf, UniPoly};
use crate::typelib::{
    aut_image_intersection, classes_of_gl, extend_class, jordan_data, projected_parabolic_intersection, ClassKey,
    Partition,
};

type Jordan = Vec<(UniPoly, Partition)>;

/// `dim_F Hom_{F[x]}(M, N)` for modules given by Jordan data:
/// `Σ_f deg f · Σ_{i,j} min(κ_i, μ_j)`.
fn hom_dim(a: &[(UniPoly, Partition)], b: &[(UniPoly, Partition)]) -> u32 {
    let mut out = 0;
    for (f, ka) in a {
        let Some((_, kb)) = b.iter().find(|(g, _)| g == f) else {
            continue;
        };
        let deg = f.degree().unwrap() as u32;
        for &x in ka.parts() {
            for &y in kb.parts() {
                out += deg * x.min(y);
            }
        }
    }
    out
}

fn component(c: &ClassKey, k: usize) -> Jordan {
    c.entries
        .iter()
        .filter(|(_, ps)| !ps[k].is_empty())
        .map(|(f, ps)| (f.clone(), ps[k].clone()))
        .collect()
}

/// One class of `im β`: Jordan data of `Y` and `Z` and `|C ∩ im β|`.
struct BetaClass {
    y: Jordan,
    z: Jordan,
    weight: u128,
}

fn beta_classes(lambda: &Partition, f: &Gf) -> Result<(Vec<BetaClass>, BigUint)> {
    let p = f.order() as u64;
    let u: Vec<u32> = lambda.blocks().iter().map(|&(_, k)| k).collect();
    let s = lambda.len() as u32;
    let mut out = Vec::new();
    let mut total = BigUint::zero();
    for cy in classes_of_gl(s, f)? {
        let widths: Vec<u32> = cy.entries.iter().map(|(_, ps)| ps[0].weight()).collect();
        for c in extend_class(&cy, s, |i, part| part.weight() == widths[i]) {
            let w = aut_image_intersection(&u, &c.type_key(), p)?;
            if w.is_zero() {
                continue;
            }
            total += &w;
            out.push(BetaClass {
                y: component(&c, 0),
                z: component(&c, 1),
                weight: w
                    .to_u128()
                    .ok_or_else(|| Error::inconsistency("class weight overflow"))?,
            });
        }
    }
    Ok((out, total))
}

/// `|F_{m,d,λ}(p)|` by Burnside grouped over conjugacy classes.
///
/// The acting group is `H × im β` with `H` the image of the parabolic under
/// `g ↦ (g, ḡ)`. Fixed points of `(g, ḡ, Y, Z)` are intertwiners
/// `(V, g) → (B/pB, Y)` and `(∧²V̄, ∧²ḡ) → (B[p], Z)`, so the fixed-point
/// dimension is read off the Jordan data of the four class representatives;
/// each class is weighted by its intersection with the uniform subgroup
/// family it meets.
pub fn orbit_count_typed(m: u32, d: &[u32], lambda: &Partition, p: u64, _caps: &Caps) -> Result<BigUint> {
    let sp = ExtensionSpace::new(m, d, lambda, p)?;
    if sp.dim() == 0 {
        return Ok(BigUint::one());
    }
    let f = sp.field().clone();
    let dl = sp.top() as u32;
    let (betas, beta_total) = beta_classes(lambda, &f)?;
    let u: Vec<u32> = lambda.blocks().iter().map(|&(_, k)| k).collect();
    let beta_order = beta_image_order(&u, p);
    if beta_total != beta_order {
        return Err(Error::inconsistency(format!(
            "automorphism-image class weights sum to {beta_total}, expected {beta_order}"
        )));
    }
    let pp = p as u128;
    let gclasses = classes_of_gl(m, &f)?;
    let partials: Vec<(BigUint, BigUint)> = gclasses
        .par_iter()
        .map(|cg| -> Result<(BigUint, BigUint)> {
            let widths: Vec<u32> = cg.entries.iter().map(|(_, ps)| ps[0].weight()).collect();
            let hclasses = if dl > 0 {
                extend_class(cg, dl, |i, part| part.weight() <= widths[i])
            } else {
                vec![cg.clone()]
            };
            let gdata = component(cg, 0);
            let mut sum = BigUint::zero();
            let mut alpha_sum = BigUint::zero();
            for c in hclasses {
                let alpha = projected_parabolic_intersection(&c.type_key(), d, p)?;
                if alpha.is_zero() {
                    continue;
                }
                alpha_sum += &alpha;
                let wedge = if dl >= 2 {
                    jordan_data(&c.representative(1, &f).wedge2(&f), &f)?
                } else {
                    Vec::new()
                };
                let mut inner: u128 = 0;
                for b in &betas {
                    let k = hom_dim(&gdata, &b.y) + hom_dim(&wedge, &b.z);
                    let term = pp
                        .checked_pow(k)
                        .and_then(|x| x.checked_mul(b.weight))
                        .and_then(|x| x.checked_add(inner));
                    inner = term.ok_or_else(|| Error::inconsistency("inner Burnside sum overflow"))?;
                }
                sum += alpha * inner;
            }
            Ok((sum, alpha_sum))
        })
        .collect::<Result<_>>()?;
    let mut total = BigUint::zero();
    let mut alpha_total = BigUint::zero();
    for (s, a) in partials {
        total += s;
        alpha_total += a;
    }
    let blocks: Vec<u32> = d.iter().copied().filter(|&x| x > 0).collect();
    let p_order = parabolic_order(&blocks, p);
    if alpha_total != p_order {
        return Err(Error::inconsistency(format!(
            "parabolic class weights sum to {alpha_total}, expected {p_order}"
        )));
    }
    let group = p_order * beta_order;
    let (orbits, rem) = total.div_rem(&group);
    if !rem.is_zero() {
        return Err(Error::inconsistency(format!(
            "class-weighted Burnside sum not divisible by |G| for m={m}, d={d:?}, λ={lambda}, p={p}"
        )));
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::super::burnside::orbit_count_naive;
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn agrees_with_naive() {
        let caps = Caps::default();
        for (m, d, lam, q) in [
            (1u32, vec![1u32], p(&[1]), 5u64),
            (2, vec![2], p(&[1]), 3),
            (2, vec![1, 1], p(&[1]), 3),
            (2, vec![2, 0], p(&[2]), 3),
            (2, vec![2], p(&[1, 1]), 2),
            (2, vec![2], p(&[2, 1]), 2),
            (1, vec![1], p(&[2, 1]), 3),
            (3, vec![1, 2], p(&[1]), 2),
            (3, vec![3], p(&[1]), 2),
        ] {
            let a = orbit_count_typed(m, &d, &lam, q, &caps).unwrap();
            let b = orbit_count_naive(m, &d, &lam, q, &caps).unwrap();
            assert_eq!(a, b, "m={m} d={d:?} λ={lam} p={q}");
        }
    }

    #[test]
    fn empty_module_is_a_point() {
        assert_eq!(
            orbit_count_typed(3, &[3], &p(&[]), 11, &Caps::default()).unwrap(),
            BigUint::one()
        );
    }
}
