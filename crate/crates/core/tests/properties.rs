use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use porc_core::dvrmod::{aut_generate, hall_table, AutGroup};
use porc_core::exactalg::{irreducibles, primes};
use porc_core::extcensus::{ext_hat_tensor, ext_via_resolution, porc_fit, PorcOutcome};
use porc_core::typelib::{class_count_of_type, type_of_tuple, types_over, ClassKey};
use porc_core::{DvrQuot, Gf, Mat, Partition, QPoly, TypeKey};

const FIELDS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn random_mat(rng: &mut impl Rng, rows: usize, cols: usize, q: u32) -> Mat {
    Mat::from_vec(rows, cols, (0..rows * cols).map(|_| rng.gen_range(0..q)).collect())
}

fn random_invertible(rng: &mut impl Rng, n: usize, f: &Gf) -> Mat {
    loop {
        let m = random_mat(rng, n, n, f.order());
        if m.is_invertible(f) {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        for q in FIELDS {
            let f = Gf::new(q).unwrap();
            let (a, b, c) = (a % q as u32, b % q as u32, c % q as u32);
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_plus_kernel_is_cols(seed in any::<u64>(), qi in 0..FIELDS.len(), rows in 0usize..6, cols in 1usize..6) {
        let f = Gf::new(FIELDS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_mat(&mut rng, rows, cols, f.order());
        prop_assert_eq!(m.rank(&f) + m.kernel_dim(&f), cols);
    }

    #[test]
    fn conjugate_partition_is_an_involution(parts in prop::collection::vec(1u32..7, 0..7)) {
        let p = Partition::from_unsorted(parts);
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().weight(), p.weight());
    }

    #[test]
    fn interpolation_recovers_integer_polynomials(coeffs in prop::collection::vec(-50i64..50, 0..6)) {
        let poly = QPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect());
        let pts: Vec<(i64, BigInt)> = (0..coeffs.len() as i64 + 1)
            .map(|x| (x + 2, poly.eval_integer(&BigInt::from(x + 2)).unwrap()))
            .collect();
        prop_assert_eq!(QPoly::interpolate_ints(&pts), poly);
    }

    #[test]
    fn ext_is_symmetric_and_agrees(k in prop::collection::vec(1u32..4, 0..4), l in prop::collection::vec(1u32..4, 0..4), pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let (kappa, lam) = (Partition::from_unsorted(k), Partition::from_unsorted(l));
        let a = ext_via_resolution(&kappa, &lam, p).unwrap();
        prop_assert_eq!(&a, &ext_hat_tensor(&kappa, &lam));
        prop_assert_eq!(&a, &ext_hat_tensor(&lam, &kappa));
    }

    /// A random PORC function is recovered at its own modulus.
    #[test]
    fn porc_fit_recovers_porc_functions(
        ni in 0usize..5,
        table in prop::collection::vec(prop::collection::vec(-20i64..20, 3), 12),
        deg in 0u32..3,
    ) {
        let n = [1u64, 2, 3, 4, 6][ni];
        let value = |p: u64| -> BigInt {
            let c = &table[(p % n) as usize];
            let p = p as i64;
            BigInt::from((0..=deg as usize).map(|i| c[i] * p.pow(i as u32)).sum::<i64>())
        };
        let samples: BTreeMap<u64, BigInt> = primes().skip(2).take(40).map(|p| (p, value(p))).collect();
        let PorcOutcome::Fitted(f) = porc_fit(&samples, n, deg).unwrap() else {
            return Err(TestCaseError::fail("rejected a PORC function"));
        };
        for p in [211u64, 223, 227, 229] {
            prop_assert_eq!(f.eval_integer(p), Some(value(p)));
        }
    }
}

#[test]
fn type_of_tuple_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dims in [vec![1usize], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 2]] {
        for q in [2u64, 3] {
            let f = Gf::new(q).unwrap();
            for _ in 0..1000 {
                let gs: Vec<Mat> = dims.iter().map(|&n| random_invertible(&mut rng, n, &f)).collect();
                let conj: Vec<Mat> = gs
                    .iter()
                    .map(|g| {
                        let c = random_invertible(&mut rng, g.rows(), &f);
                        c.mul(g, &f).mul(&c.inverse(&f).unwrap(), &f)
                    })
                    .collect();
                assert_eq!(type_of_tuple(&gs, &f).unwrap(), type_of_tuple(&conj, &f).unwrap());
            }
        }
    }
}

/// Every class of a type is hit by exactly |Aut(pretype)| realisations.
#[test]
fn realisations_cover_classes_evenly() {
    for dims in [vec![1u32], vec![2], vec![1, 1], vec![2, 2]] {
        for q in [2u64, 3, 4] {
            let f = Gf::new(q).unwrap();
            for t in types_over(&dims) {
                let tally = realisation_tally(&t, &f);
                assert_eq!(
                    BigUint::from(tally.len()),
                    class_count_of_type(&t, q).unwrap(),
                    "{t} q={q}"
                );
                for (c, n) in tally {
                    assert_eq!(n, t.aut_order(), "{t} q={q} {c:?}");
                }
            }
        }
    }
}

fn realisation_tally(t: &TypeKey, f: &Gf) -> HashMap<ClassKey, u64> {
    let mut out = HashMap::new();
    fn rec(t: &TypeKey, f: &Gf, chosen: &mut Vec<porc_core::UniPoly>, out: &mut HashMap<ClassKey, u64>) {
        let cols = t.columns();
        if chosen.len() == cols.len() {
            let mut entries: Vec<_> = chosen
                .iter()
                .cloned()
                .zip(cols.iter().map(|c| c.parts.clone()))
                .collect();
            entries.sort();
            *out.entry(ClassKey {
                dims: t.dims().to_vec(),
                entries,
            })
            .or_insert(0) += 1;
            return;
        }
        let d = cols[chosen.len()].degree;
        for g in irreducibles(f, d).unwrap().iter() {
            // x is not invertible
            if d == 1 && g.coeffs()[0] == 0 {
                continue;
            }
            if chosen.contains(g) {
                continue;
            }
            chosen.push(g.clone());
            rec(t, f, chosen, out);
            chosen.pop();
        }
    }
    rec(t, f, &mut Vec::new(), &mut out);
    out
}

#[test]
fn hall_numbers_are_symmetric() {
    for p in [2u64, 3] {
        for lam in Partition::all_up_to_weight(4).into_iter().filter(|l| !l.is_empty()) {
            let ring = DvrQuot::integers(p, lam.largest()).unwrap();
            let table = hall_table(&lam, &ring, &Default::default()).unwrap();
            for ((mu, nu), n) in table.iter() {
                let swapped = table.get(&(nu.clone(), mu.clone())).copied().unwrap_or(0);
                assert_eq!(*n, swapped, "{lam};{mu},{nu} p={p}");
            }
        }
    }
}

#[test]
fn automorphisms_form_a_group() {
    let caps = Default::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for lam in Partition::all_up_to_weight(4).into_iter().filter(|l| !l.is_empty()) {
        for ring in [
            DvrQuot::integers(2, lam.largest()).unwrap(),
            DvrQuot::integers(3, lam.largest()).unwrap(),
        ] {
            let g = AutGroup::new(&lam, &ring).unwrap();
            if g.order() > BigUint::from(30_000u32) {
                continue;
            }
            let all = aut_generate(&lam, &ring, &caps).unwrap();
            let set: HashSet<_> = all.iter().cloned().collect();
            assert!(set.contains(&g.identity()));
            for x in &all {
                assert!(set.contains(&g.inverse(x)), "{lam}");
                for _ in 0..3 {
                    let y = &all[rng.gen_range(0..all.len())];
                    assert!(set.contains(&g.compose(x, y)), "{lam}");
                }
            }
        }
    }
}
