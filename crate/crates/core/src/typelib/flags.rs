use std::collections::{BTreeSet, HashMap};
use std::sync::{LazyLock, Mutex};

use num_bigint::BigUint;
use num_traits::Zero;

use super::counting::{class_size, exact_div, flag_count};
use super::partition::Partition;
use super::types::{Column, TypeKey};
use crate::dvrmod::chain_value;
use crate::error::{Error, Result};

type Cache = LazyLock<Mutex<HashMap<(TypeKey, Vec<u32>, u64), BigUint>>>;

static PARABOLIC: Cache = LazyLock::new(|| Mutex::new(HashMap::new()));
static PROJECTED: Cache = LazyLock::new(|| Mutex::new(HashMap::new()));
static AUT_IMAGE: Cache = LazyLock::new(|| Mutex::new(HashMap::new()));

fn cached(cache: &Cache, key: (TypeKey, Vec<u32>, u64), compute: impl FnOnce() -> Result<BigUint>) -> Result<BigUint> {
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    cache.lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Number of flags of the shape recorded in `t` (dimensions
/// `(n, d_1, .., d_l)`) fixed by an element of the first-component class,
/// with induced quotient actions in the remaining component classes.
pub fn flag_fix_count(t: &TypeKey, q: u64) -> Result<BigUint> {
    let mut out = BigUint::from(1u32);
    for c in t.columns() {
        let big_q = q
            .checked_pow(c.degree)
            .ok_or_else(|| Error::refusal("residue field size", format!("{q}^{}", c.degree), u64::MAX))?;
        let v = chain_value(&c.parts[0], &c.parts[1..], big_q)?;
        if v.is_zero() {
            return Ok(v);
        }
        out *= v;
    }
    Ok(out)
}

/// `|C ∩ J_d(q)|` for a class `C` of type `t` over `(n, d_1, .., d_l)`,
/// where `J_d` is the image of the standard parabolic in
/// `GL_n × GL_{d_1} × .. × GL_{d_l}`.
pub fn parabolic_intersection(t: &TypeKey, q: u64) -> Result<BigUint> {
    let dims = t.dims();
    if dims.is_empty() || dims[1..].iter().sum::<u32>() != dims[0] {
        return Err(Error::domain(format!(
            "parabolic dimensions {dims:?} must be (n, d_1, .., d_l) with sum d = n"
        )));
    }
    cached(&PARABOLIC, (t.clone(), Vec::new(), q), || {
        let beta = flag_fix_count(t, q)?;
        if beta.is_zero() {
            return Ok(beta);
        }
        let size = class_size(&t.select(&[0]), q)?;
        exact_div(&(size * beta), &flag_count(&dims[1..], q), || {
            format!("parabolic intersection of {t:?} at q={q}")
        })
    })
}

/// All types over `full_dims` with the same index set as `t` whose
/// projection on the components `kept` (positions in `full_dims`, in the
/// order of `t`'s components) is `t`. Added components get partitions of
/// total weight at most the weight in component `kept[0]`.
pub fn extensions_of_type(t: &TypeKey, full_dims: &[u32], kept: &[usize]) -> Vec<TypeKey> {
    let added: Vec<usize> = (0..full_dims.len()).filter(|i| !kept.contains(i)).collect();
    // per column, the ways to fill the added components
    let options: Vec<Vec<Vec<Partition>>> = t
        .columns()
        .iter()
        .map(|c| {
            let budget = c.parts[0].weight();
            let mut acc: Vec<(Vec<Partition>, u32)> = vec![(Vec::new(), 0)];
            for &a in &added {
                let cap = full_dims[a] / c.degree;
                let mut next = Vec::new();
                for (pre, used) in &acc {
                    for p in Partition::all_up_to_weight(cap.min(budget - used)) {
                        let w = p.weight();
                        let mut v = pre.clone();
                        v.push(p);
                        next.push((v, used + w));
                    }
                }
                acc = next;
            }
            acc.into_iter().map(|(v, _)| v).collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut rem: Vec<u32> = added.iter().map(|&a| full_dims[a]).collect();
    let mut choice: Vec<usize> = Vec::new();
    fn rec(
        t: &TypeKey,
        options: &[Vec<Vec<Partition>>],
        kept: &[usize],
        added: &[usize],
        full_dims: &[u32],
        rem: &mut Vec<u32>,
        choice: &mut Vec<usize>,
        out: &mut BTreeSet<TypeKey>,
    ) {
        let j = choice.len();
        if j == options.len() {
            if rem.iter().any(|&x| x != 0) {
                return;
            }
            let columns = t
                .columns()
                .iter()
                .zip(choice.iter())
                .enumerate()
                .map(|(jj, (c, &o))| {
                    let mut parts = vec![Partition::empty(); full_dims.len()];
                    for (k, &pos) in kept.iter().enumerate() {
                        parts[pos] = c.parts[k].clone();
                    }
                    for (k, &pos) in added.iter().enumerate() {
                        parts[pos] = options[jj][o][k].clone();
                    }
                    Column::new(c.degree, parts)
                })
                .collect();
            out.insert(TypeKey::from_columns(full_dims.to_vec(), columns));
            return;
        }
        let deg = t.columns()[j].degree;
        for (o, opt) in options[j].iter().enumerate() {
            let need: Vec<u32> = opt.iter().map(|p| p.weight() * deg).collect();
            if need.iter().zip(rem.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (x, n) in rem.iter_mut().zip(&need) {
                *x -= n;
            }
            choice.push(o);
            rec(t, options, kept, added, full_dims, rem, choice, out);
            choice.pop();
            for (x, n) in rem.iter_mut().zip(&need) {
                *x += n;
            }
        }
    }
    rec(t, &options, kept, &added, full_dims, &mut rem, &mut choice, &mut out);
    out.into_iter().collect()
}

fn aut_ratio(t: &TypeKey, ext: &TypeKey) -> Result<BigUint> {
    let (a, b) = (t.aut_order(), ext.aut_order());
    if a % b != 0 {
        return Err(Error::inconsistency(format!(
            "Aut of {ext:?} does not divide Aut of its projection {t:?}"
        )));
    }
    Ok(BigUint::from(a / b))
}

/// `|C ∩ H|` where `H ≤ GL_m × GL_{d_l}` is the image of the standard
/// parabolic of shape `d = (d_1, .., d_l)` under `g ↦ (g, g on V/U_{l-1})`.
/// When `d_l = 0` the second component is absent and `t` is over `(m)`.
pub fn projected_parabolic_intersection(t: &TypeKey, d: &[u32], q: u64) -> Result<BigUint> {
    let Some((&last, init)) = d.split_last() else {
        return Err(Error::domain("empty flag shape"));
    };
    if init.contains(&0) {
        return Err(Error::domain(format!(
            "flag shape {d:?} has an empty intermediate step"
        )));
    }
    let m: u32 = d.iter().sum();
    let mut full = vec![m];
    full.extend(d.iter().copied().filter(|&x| x > 0));
    let kept: Vec<usize> = if last > 0 { vec![0, full.len() - 1] } else { vec![0] };
    let want: Vec<u32> = kept.iter().map(|&i| full[i]).collect();
    if t.dims() != want.as_slice() {
        return Err(Error::domain(format!("type dims {:?} do not match {want:?}", t.dims())));
    }
    cached(&PROJECTED, (t.clone(), d.to_vec(), q), || {
        let mut total = BigUint::zero();
        for ext in extensions_of_type(t, &full, &kept) {
            let v = parabolic_intersection(&ext, q)?;
            if !v.is_zero() {
                total += aut_ratio(t, &ext)? * v;
            }
        }
        Ok(total)
    })
}

/// `|C ∩ im β|` for a class `C` of type `t` over `(s, s)`, where `im β` is
/// the set of pairs `(Y, Z)` with `Y` block lower triangular, `Z` block
/// upper triangular (blocks of sizes `u`) and equal diagonal blocks.
pub fn aut_image_intersection(u: &[u32], t: &TypeKey, q: u64) -> Result<BigUint> {
    let s: u32 = u.iter().sum();
    if t.dims() != [s, s] || u.contains(&0) {
        return Err(Error::domain(format!(
            "type dims {:?} do not match block sizes {u:?}",
            t.dims()
        )));
    }
    cached(&AUT_IMAGE, (t.clone(), u.to_vec(), q), || {
        let r = u.len();
        let mut full = vec![s, s];
        full.extend_from_slice(u);
        let comps1: Vec<usize> = std::iter::once(0).chain((2..r + 2).rev()).collect();
        let comps2: Vec<usize> = (1..r + 2).collect();
        let levi: Vec<usize> = (2..r + 2).collect();
        let mut total = BigUint::zero();
        for ext in extensions_of_type(t, &full, &[0, 1]) {
            let pi1 = parabolic_intersection(&ext.select(&comps1), q)?;
            if pi1.is_zero() {
                continue;
            }
            let pi2 = parabolic_intersection(&ext.select(&comps2), q)?;
            if pi2.is_zero() {
                continue;
            }
            let c0 = class_size(&ext.select(&levi), q)?;
            let sigma = exact_div(&(pi1 * pi2), &c0, || {
                format!("automorphism-image term for {ext:?} at q={q}")
            })?;
            total += aut_ratio(t, &ext)? * sigma;
        }
        Ok(total)
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::dvrmod::{beta_image_contains, beta_image_order, BetaPair};
    use crate::exactalg::{gl_iter, parabolic_for_each, parabolic_order, Gf, Mat};
    use crate::typelib::{class_count_of_type, class_of_tuple, types_over, ClassKey};

    fn check(
        tally: HashMap<ClassKey, u64>,
        total: &BigUint,
        dims: &[u32],
        formula: impl Fn(&TypeKey) -> BigUint,
        q: u64,
    ) {
        for (c, n) in &tally {
            assert_eq!(BigUint::from(*n), formula(&c.type_key()), "{}", c.type_key());
        }
        let mut sum = BigUint::zero();
        for t in types_over(dims) {
            sum += class_count_of_type(&t, q).unwrap() * formula(&t);
        }
        assert_eq!(&sum, total);
    }

    #[test]
    fn parabolic_matches_brute_force() {
        for (d, q) in [
            (vec![1u32, 1], 2u64),
            (vec![1, 1], 3),
            (vec![2, 1], 2),
            (vec![1, 2], 3),
            (vec![1, 1, 1], 2),
        ] {
            let f = Gf::new(q).unwrap();
            let n: u32 = d.iter().sum();
            let mut tally = HashMap::new();
            parabolic_for_each(&d, q, u64::MAX, |g| {
                let mut tuple = vec![g.clone()];
                let mut at = 0;
                for &k in &d {
                    tuple.push(g.submatrix(at, at, k as usize, k as usize));
                    at += k as usize;
                }
                *tally.entry(class_of_tuple(&tuple, &f).unwrap()).or_insert(0) += 1;
            })
            .unwrap();
            let mut dims = vec![n];
            dims.extend(&d);
            check(
                tally,
                &parabolic_order(&d, q),
                &dims,
                |t| parabolic_intersection(t, q).unwrap(),
                q,
            );
        }
    }

    #[test]
    fn projected_parabolic_matches_brute_force() {
        for (d, q) in [
            (vec![1u32, 1], 2u64),
            (vec![2, 0], 3),
            (vec![1, 2], 2),
            (vec![1, 1, 1], 2),
            (vec![2, 1], 3),
        ] {
            let f = Gf::new(q).unwrap();
            let n: u32 = d.iter().sum();
            let last = *d.last().unwrap() as usize;
            let pd: Vec<u32> = d.iter().copied().filter(|&x| x > 0).collect();
            let mut tally = HashMap::new();
            parabolic_for_each(&pd, q, u64::MAX, |g| {
                let mut tuple = vec![g.clone()];
                if last > 0 {
                    let at = n as usize - last;
                    tuple.push(g.submatrix(at, at, last, last));
                }
                *tally.entry(class_of_tuple(&tuple, &f).unwrap()).or_insert(0) += 1;
            })
            .unwrap();
            let dims: Vec<u32> = if last > 0 { vec![n, last as u32] } else { vec![n] };
            check(
                tally,
                &parabolic_order(&pd, q),
                &dims,
                |t| projected_parabolic_intersection(t, &d, q).unwrap(),
                q,
            );
        }
    }

    #[test]
    fn aut_image_matches_brute_force() {
        for (u, q) in [
            (vec![1u32, 1], 2u64),
            (vec![1, 1], 3),
            (vec![2, 1], 2),
            (vec![1, 2], 2),
            (vec![1, 1, 1], 2),
        ] {
            let f = Gf::new(q).unwrap();
            let s: u32 = u.iter().sum();
            let gl: Vec<Mat> = gl_iter(s, q, u64::MAX).unwrap().collect();
            let mut tally = HashMap::new();
            for y in &gl {
                for z in &gl {
                    let pair = BetaPair {
                        y: y.clone(),
                        z: z.clone(),
                    };
                    if beta_image_contains(&pair, &u, q).unwrap() {
                        *tally
                            .entry(class_of_tuple(&[y.clone(), z.clone()], &f).unwrap())
                            .or_insert(0) += 1;
                    }
                }
            }
            check(
                tally,
                &beta_image_order(&u, q),
                &[s, s],
                |t| aut_image_intersection(&u, t, q).unwrap(),
                q,
            );
        }
    }
}
