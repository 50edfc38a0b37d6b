use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use porc_core::acceptance::census_representatives;
use porc_core::dvrmod::{aut_generate, AutGroup};
use porc_core::extcensus::{orbit_count_naive, orbit_representatives, LieRingModel};
use porc_core::oracle::enumerate_lie_rings;
use porc_core::{Caps, Census, DvrQuot, Engine, ExtensionDatum, ExtensionSpace, Gf, Mat, Partition};

fn random_invertible(rng: &mut impl Rng, n: usize, f: &Gf) -> Mat {
    loop {
        let m = Mat::from_vec(n, n, (0..n * n).map(|_| rng.gen_range(0..f.order())).collect());
        if m.is_invertible(f) {
            return m;
        }
    }
}

/// Acts on a cocycle by lifting to `B`, applying `h`, and reducing again,
/// without going through `β`.
fn act_on_lifts(
    sp: &ExtensionSpace,
    group: &AutGroup,
    g: &Mat,
    h: &porc_core::dvrmod::AutMatrix,
    x: &ExtensionDatum,
) -> ExtensionDatum {
    let f = sp.field();
    let p = sp.p();
    let parts = sp.lambda().parts();
    let s = parts.len();
    let m = sp.m() as usize;
    // z: column i is the residue of a lift of z(e_i)
    let mut hz = Mat::zeros(s, m);
    for i in 0..m {
        let lift: Vec<u64> = (0..s).map(|k| x.z.get(k, i) as u64).collect();
        let image = group.apply(h, &lift);
        for k in 0..s {
            hz.set(k, i, (image[k] % p) as u32);
        }
    }
    // y: values in B[p], scaled up then read back
    let mut hy = Mat::zeros(s, x.y.cols());
    for t in 0..x.y.cols() {
        let v: Vec<u64> = (0..s).map(|k| x.y.get(k, t) as u64 * p.pow(parts[k] - 1)).collect();
        let image = group.apply(h, &v);
        for k in 0..s {
            hy.set(k, t, ((image[k] / p.pow(parts[k] - 1)) % p) as u32);
        }
    }
    let ginv = g.inverse(f).unwrap();
    ExtensionDatum {
        y: hy.mul(&sp.quotient_map(&ginv).wedge2(f), f),
        z: hz.mul(&ginv, f),
    }
}

#[test]
fn action_matches_lifted_automorphisms() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, lam, p) in [
        (2u32, vec![2u32, 1], 2u64),
        (3, vec![2], 3),
        (2, vec![1, 1], 3),
        (3, vec![3, 1], 2),
    ] {
        let lam = Partition::new(lam).unwrap();
        let sp = ExtensionSpace::new(m, &[m], &lam, p).unwrap();
        let ring = DvrQuot::integers(p, lam.largest()).unwrap();
        let group = AutGroup::new(&lam, &ring).unwrap();
        let auts = aut_generate(&lam, &ring, &caps).unwrap();
        let coords = sp.dim();
        for _ in 0..100 {
            let g = random_invertible(&mut rng, m as usize, sp.field());
            let h = &auts[rng.gen_range(0..auts.len())];
            let x = sp
                .from_coords(&(0..coords).map(|_| rng.gen_range(0..p as u32)).collect::<Vec<_>>())
                .unwrap();
            assert_eq!(
                sp.action_apply(&g, &group, h, &x).unwrap(),
                act_on_lifts(&sp, &group, &g, h, &x),
                "m={m} λ={lam} p={p}"
            );
        }
    }
}

/// With no bracket part the orbits are those of `GL(V) × Aut(B)` on
/// `Hom(V, B/pB)`, counted here by explicit orbit closure.
#[test]
fn cocycle_orbits_match_naive_count() {
    let caps = Caps::default();
    for (m, lam, p) in [
        (1u32, vec![1u32], 2u64),
        (2, vec![1], 3),
        (2, vec![2, 1], 2),
        (1, vec![1, 1], 3),
        (2, vec![1, 1], 2),
    ] {
        let lam = Partition::new(lam).unwrap();
        let sp = ExtensionSpace::new(m, &[m, 0], &lam, p).unwrap();
        let ring = DvrQuot::integers(p, lam.largest()).unwrap();
        let group = AutGroup::new(&lam, &ring).unwrap();
        let auts = aut_generate(&lam, &ring, &caps).unwrap();
        let f = sp.field();
        let gl: Vec<Mat> = all_matrices(m as usize, f)
            .into_iter()
            .filter(|g| g.is_invertible(f))
            .collect();
        let mut seen = HashSet::new();
        let mut orbits = 0u64;
        for x in sp.points(1 << 20).unwrap() {
            if !seen.insert(x.clone()) {
                continue;
            }
            orbits += 1;
            for g in &gl {
                for h in &auts {
                    seen.insert(act_on_lifts(&sp, &group, g, h, &x));
                }
            }
        }
        assert_eq!(
            BigUint::from(orbits),
            orbit_count_naive(m, &[m, 0], &lam, p, &caps).unwrap(),
            "m={m} λ={lam} p={p}"
        );
    }
}

fn all_matrices(n: usize, f: &Gf) -> Vec<Mat> {
    let q = f.order() as u64;
    (0..q.pow((n * n) as u32))
        .map(|mut c| {
            Mat::from_vec(
                n,
                n,
                (0..n * n)
                    .map(|_| {
                        let d = (c % q) as u32;
                        c /= q;
                        d
                    })
                    .collect(),
            )
        })
        .collect()
}

#[test]
fn refinement_identity_holds() {
    for p in [2u64, 3] {
        let mut census = Census::new(Engine::Typed, Caps::default());
        for n in 1..=4u32 {
            for m in 0..=n {
                for lam in Partition::all_of_weight(n - m) {
                    let mut stack = vec![vec![m]];
                    while let Some(d) = stack.pop() {
                        let x = BigInt::from(census.x_count(m, &d, &lam, p).unwrap());
                        let mut rhs = BigInt::from(census.orbit_count(m, &d, &lam, p).unwrap());
                        let (&last, init) = d.split_last().unwrap();
                        for k in 1..=last {
                            let mut e = init.to_vec();
                            e.extend([k, last - k]);
                            rhs -= BigInt::from(census.x_count(m, &e, &lam, p).unwrap());
                            stack.push(e);
                        }
                        assert_eq!(x, rhs, "m={m} d={d:?} λ={lam} p={p}");
                    }
                }
            }
        }
    }
}

#[test]
fn every_representative_materializes() {
    let caps = Caps::default();
    for p in [2u64, 3, 5] {
        for n in 1..=3u32 {
            for m in 0..=n {
                for lam in Partition::all_of_weight(n - m) {
                    for datum in orbit_representatives(m, &[m], &lam, p, &caps).unwrap() {
                        let model = LieRingModel::new(m, &lam, p, &datum, &caps).unwrap();
                        let t = model.to_table().unwrap();
                        assert_eq!(t.order_exponent(), n);
                        assert!(t.jacobi_holds(), "m={m} λ={lam} p={p}");
                        assert!(model.centre_order() >= p.pow(lam.weight()));
                    }
                }
            }
        }
    }
}

/// Representatives with centre exactly `B` are pairwise non-isomorphic and
/// together hit every class found by the oracle.
#[test]
fn representatives_are_the_oracle_classes() {
    let caps = Caps::default();
    for (n, p) in [(1u32, 2u64), (2, 3), (3, 2), (3, 3), (3, 5), (4, 2)] {
        let reps = census_representatives(n, p, &caps).unwrap();
        let oracle = enumerate_lie_rings(n, p, &caps).unwrap();
        let classes: HashSet<_> = reps.iter().map(|t| oracle.classify(t).expect("unclassified")).collect();
        assert_eq!(classes.len(), reps.len(), "n={n} p={p}");
        assert_eq!(classes.len(), oracle.count(), "n={n} p={p}");
    }
}
