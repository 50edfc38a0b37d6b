use std::collections::HashMap;

use super::partition::Partition;
use super::types::{class_of_tuple, ClassKey, Column, TypeKey};
use crate::error::Result;
use crate::exactalg::{gl_iter, irreducibles, Gf, Mat, UniPoly};

/// Monic irreducibles of degree `1..=max_deg` other than `X`, by degree then
/// code.
pub fn invertible_irreducibles(f: &Gf, max_deg: u32) -> Result<Vec<UniPoly>> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        out.extend(irreducibles(f, d)?.iter().filter(|g| **g != UniPoly::x()).cloned());
    }
    Ok(out)
}

/// All conjugacy classes of `GL_n(q)`, each exactly once.
pub fn classes_of_gl(n: u32, f: &Gf) -> Result<Vec<ClassKey>> {
    let polys = invertible_irreducibles(f, n.max(1))?;
    let mut out = Vec::new();
    let mut cur: Vec<(UniPoly, Vec<Partition>)> = Vec::new();
    fn rec(
        polys: &[UniPoly],
        start: usize,
        rem: u32,
        n: u32,
        cur: &mut Vec<(UniPoly, Vec<Partition>)>,
        out: &mut Vec<ClassKey>,
    ) {
        if rem == 0 {
            out.push(ClassKey {
                dims: vec![n],
                entries: cur.clone(),
            });
            return;
        }
        for (i, g) in polys.iter().enumerate().skip(start) {
            let d = g.degree().unwrap() as u32;
            if d > rem {
                break;
            }
            for w in 1..=rem / d {
                for p in Partition::all_of_weight(w) {
                    cur.push((g.clone(), vec![p]));
                    rec(polys, i + 1, rem - d * w, n, cur, out);
                    cur.pop();
                }
            }
        }
    }
    rec(&polys, 0, n, n, &mut cur, &mut out);
    Ok(out)
}

/// Appends one component of dimension `dim` to a class, using only the
/// polynomials already present; `allowed(entry_index, candidate)` filters
/// the partition placed at each polynomial (the empty partition included).
pub fn extend_class(c: &ClassKey, dim: u32, allowed: impl Fn(usize, &Partition) -> bool) -> Vec<ClassKey> {
    let mut out = Vec::new();
    let degs: Vec<u32> = c.entries.iter().map(|(g, _)| g.degree().unwrap() as u32).collect();
    let mut choice: Vec<Partition> = Vec::new();
    fn rec(
        c: &ClassKey,
        degs: &[u32],
        dim: u32,
        rem: u32,
        choice: &mut Vec<Partition>,
        allowed: &dyn Fn(usize, &Partition) -> bool,
        out: &mut Vec<ClassKey>,
    ) {
        let i = choice.len();
        if i == degs.len() {
            if rem == 0 {
                let mut dims = c.dims.clone();
                dims.push(dim);
                let entries = c
                    .entries
                    .iter()
                    .zip(choice.iter())
                    .map(|((g, ps), p)| {
                        let mut ps = ps.clone();
                        ps.push(p.clone());
                        (g.clone(), ps)
                    })
                    .collect();
                out.push(ClassKey { dims, entries });
            }
            return;
        }
        for w in 0..=rem / degs[i] {
            for p in Partition::all_of_weight(w) {
                if !allowed(i, &p) {
                    continue;
                }
                choice.push(p);
                rec(c, degs, dim, rem - w * degs[i], choice, allowed, out);
                choice.pop();
            }
        }
    }
    rec(c, &degs, dim, dim, &mut choice, &allowed, &mut out);
    out
}

/// Every type over the component dimensions `dims`.
pub fn types_over(dims: &[u32]) -> Vec<TypeKey> {
    let r = dims.len();
    let max_dim = dims.iter().copied().max().unwrap_or(0);
    // candidate columns
    let mut cands: Vec<Column> = Vec::new();
    for d in 1..=max_dim.max(1) {
        let mut partial: Vec<Vec<Partition>> = vec![Vec::new()];
        for &n in dims {
            let mut next = Vec::new();
            for pre in &partial {
                for p in Partition::all_up_to_weight(n / d) {
                    let mut v = pre.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            partial = next;
        }
        for parts in partial {
            let c = Column::new(d, parts);
            if !c.is_empty() {
                cands.push(c);
            }
        }
    }
    cands.sort();
    let mut out = Vec::new();
    fn rec(
        cands: &[Column],
        start: usize,
        rem: &mut Vec<u32>,
        cur: &mut Vec<Column>,
        dims: &[u32],
        out: &mut Vec<TypeKey>,
    ) {
        if rem.iter().all(|&x| x == 0) {
            out.push(TypeKey::from_columns(dims.to_vec(), cur.clone()));
            return;
        }
        for (idx, c) in cands.iter().enumerate().skip(start) {
            let need: Vec<u32> = c.parts.iter().map(|p| p.weight() * c.degree).collect();
            if need.iter().zip(rem.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (x, n) in rem.iter_mut().zip(&need) {
                *x -= n;
            }
            cur.push(c.clone());
            rec(cands, idx, rem, cur, dims, out);
            cur.pop();
            for (x, n) in rem.iter_mut().zip(&need) {
                *x += n;
            }
        }
    }
    let _ = r;
    rec(&cands, 0, &mut dims.to_vec(), &mut Vec::new(), dims, &mut out);
    out
}

/// Brute-force classification: visits every tuple of the product of
/// `GL_{n_i}(q)` and counts elements per conjugacy class.
pub fn brute_force_classes(dims: &[u32], f: &Gf, cap: u64) -> Result<HashMap<ClassKey, u64>> {
    let q = f.order() as u64;
    let lists: Vec<Vec<Mat>> = dims
        .iter()
        .map(|&n| gl_iter(n, q, cap).map(|it| it.collect()))
        .collect::<Result<_>>()?;
    let mut counts = HashMap::new();
    let mut idx = vec![0usize; dims.len()];
    loop {
        let tuple: Vec<Mat> = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
        *counts.entry(class_of_tuple(&tuple, f)?).or_insert(0) += 1;
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::gl_order_u128;
    use crate::typelib::{class_count_of_type, class_size};
    use num_bigint::BigUint;

    #[test]
    fn class_numbers_of_small_gl() {
        // |classes of GL_n(q)|: GL_2(q) has q^2 - 1, GL_3(q) has q^3 - q
        for q in [2u64, 3, 4, 5] {
            let f = Gf::new(q).unwrap();
            assert_eq!(classes_of_gl(2, &f).unwrap().len() as u64, q * q - 1);
            assert_eq!(classes_of_gl(3, &f).unwrap().len() as u64, q * q * q - q);
        }
    }

    #[test]
    fn types_partition_the_group() {
        for (n, q) in [(2u32, 2u64), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let mut total = BigUint::from(0u32);
            for t in types_over(&[n]) {
                total += class_count_of_type(&t, q).unwrap() * class_size(&t, q).unwrap();
            }
            assert_eq!(total, BigUint::from(gl_order_u128(n, q)), "n={n} q={q}");
        }
    }

    #[test]
    fn enumerated_classes_match_type_counts() {
        let f = Gf::new(3).unwrap();
        let mut by_type: HashMap<TypeKey, u64> = HashMap::new();
        for c in classes_of_gl(3, &f).unwrap() {
            *by_type.entry(c.type_key()).or_insert(0) += 1;
        }
        for t in types_over(&[3]) {
            let want = class_count_of_type(&t, 3).unwrap();
            assert_eq!(BigUint::from(*by_type.get(&t).unwrap_or(&0)), want, "{t:?}");
        }
    }

    #[test]
    fn extension_respects_filter() {
        let f = Gf::new(3).unwrap();
        let c = &classes_of_gl(2, &f).unwrap()[0];
        let ext = extend_class(c, 1, |_, _| true);
        assert!(ext.iter().all(|e| e.dims == vec![2, 1]));
        assert!(!ext.is_empty());
    }
}
