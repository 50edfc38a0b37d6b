use std::sync::Arc;

use num_bigint::BigUint;

use crate::dvrmod::{AutGroup, AutMatrix, BetaPair};
use crate::error::{Error, Result};
use crate::exactalg::{pairs, Gf, Mat};
use crate::typelib::Partition;

/// `F(V, U_{l-1}, B) = Hom(∧²(V/U_{l-1}), B[p]) ⊕ Hom(V, B/pB)` over `F_p`.
///
/// `V = F_p^m` with the flag `U_i` spanned by the first `d_1 + .. + d_i`
/// coordinate vectors; `B = M_λ` over `Z_p`.
#[derive(Clone, Debug)]
pub struct ExtensionSpace {
    m: u32,
    d: Vec<u32>,
    lambda: Partition,
    p: u64,
    field: Arc<Gf>,
    pairs: Vec<(usize, usize)>,
}

/// A point `(y, z)` of an extension space: `y` is `s × C(d_l, 2)` with
/// columns indexed by `e_a ∧ e_b` (`a < b`, lexicographic) in `V/U_{l-1}`
/// and rows by the basis `p^{λ_k-1} e_k` of `B[p]`; `z` is `s × m` with rows
/// by the basis `ē_k` of `B/pB`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionDatum {
    pub y: Mat,
    pub z: Mat,
}

impl ExtensionSpace {
    pub fn new(m: u32, d: &[u32], lambda: &Partition, p: u64) -> Result<Self> {
        let Some((_, init)) = d.split_last() else {
            return Err(Error::domain("empty flag shape"));
        };
        if init.contains(&0) || d.iter().sum::<u32>() != m {
            return Err(Error::domain(format!("{d:?} is not a flag shape of dimension {m}")));
        }
        let field = Gf::new(p)?;
        if field.degree() != 1 {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let dl = *d.last().unwrap() as usize;
        Ok(ExtensionSpace {
            m,
            d: d.to_vec(),
            lambda: lambda.clone(),
            p,
            field,
            pairs: pairs(dl),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn shape(&self) -> &[u32] {
        &self.d
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    /// `s`, the number of parts of `λ`.
    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `d_l`, the codimension of `U_{l-1}`.
    pub fn top(&self) -> usize {
        *self.d.last().unwrap() as usize
    }

    pub fn dim_y(&self) -> usize {
        self.rank() * self.pairs.len()
    }

    pub fn dim_z(&self) -> usize {
        self.rank() * self.m as usize
    }

    /// `D = s·C(d_l, 2) + m·s`.
    pub fn dim(&self) -> usize {
        self.dim_y() + self.dim_z()
    }

    /// `|F| = p^D`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.dim() as u32)
    }

    pub fn zero(&self) -> ExtensionDatum {
        ExtensionDatum {
            y: Mat::zeros(self.rank(), self.pairs.len()),
            z: Mat::zeros(self.rank(), self.m as usize),
        }
    }

    /// Datum from its coordinates, `y` then `z`, each row-major.
    pub fn from_coords(&self, c: &[u32]) -> Result<ExtensionDatum> {
        if c.len() != self.dim() {
            return Err(Error::domain(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                c.len()
            )));
        }
        let (a, b) = c.split_at(self.dim_y());
        Ok(ExtensionDatum {
            y: Mat::from_vec(self.rank(), self.pairs.len(), a.to_vec()),
            z: Mat::from_vec(self.rank(), self.m as usize, b.to_vec()),
        })
    }

    pub fn coords(&self, x: &ExtensionDatum) -> Vec<u32> {
        x.y.data().iter().chain(x.z.data()).copied().collect()
    }

    /// Whether `g` preserves every `U_i` of the flag.
    pub fn preserves_flag(&self, g: &Mat) -> bool {
        let m = self.m as usize;
        if g.rows() != m || g.cols() != m {
            return false;
        }
        let mut boundary = 0usize;
        for &di in &self.d[..self.d.len() - 1] {
            boundary += di as usize;
            for c in 0..boundary {
                for r in boundary..m {
                    if g.get(r, c) != 0 {
                        return false;
                    }
                }
            }
        }
        g.is_invertible(&self.field)
    }

    /// The map induced by `g` on `V/U_{l-1}`.
    pub fn quotient_map(&self, g: &Mat) -> Mat {
        let m = self.m as usize;
        let t = self.top();
        g.submatrix(m - t, m - t, t, t)
    }

    fn check(&self, g: &Mat, pair: &BetaPair) -> Result<()> {
        if !self.preserves_flag(g) {
            return Err(Error::domain("g does not preserve the flag"));
        }
        let s = self.rank();
        if pair.y.rows() != s || pair.z.rows() != s {
            return Err(Error::domain("automorphism pair has the wrong size"));
        }
        Ok(())
    }

    /// `(g, h)·(y, z) = (Z y ∧²(ḡ^{-1}), Y z g^{-1})` where `(Y, Z) = β(h)`.
    pub fn act(&self, g: &Mat, pair: &BetaPair, x: &ExtensionDatum) -> Result<ExtensionDatum> {
        self.check(g, pair)?;
        let f = &*self.field;
        let ginv = g.inverse(f).unwrap();
        let w = self.quotient_map(&ginv).wedge2(f);
        Ok(ExtensionDatum {
            y: pair.z.mul(&x.y, f).mul(&w, f),
            z: pair.y.mul(&x.z, f).mul(&ginv, f),
        })
    }

    /// The action of `(g, h)` with `h` given as a module automorphism.
    pub fn action_apply(&self, g: &Mat, group: &AutGroup, h: &AutMatrix, x: &ExtensionDatum) -> Result<ExtensionDatum> {
        if group.lambda() != &self.lambda || group.ring().residue_size() != self.p {
            return Err(Error::domain("automorphism group does not match the space"));
        }
        self.act(g, &group.beta(h), x)
    }

    /// The `D × D` matrix of `x ↦ (g, h)·x` on row-major coordinates.
    pub fn action_matrix(&self, g: &Mat, pair: &BetaPair) -> Result<Mat> {
        self.check(g, pair)?;
        let f = &*self.field;
        let ginv = g.inverse(f).unwrap();
        let w = self.quotient_map(&ginv).wedge2(f);
        let ay = pair.z.kron(&w.transpose(), f);
        let az = pair.y.kron(&ginv.transpose(), f);
        Ok(Mat::block_diag(&[ay, az]))
    }

    /// `dim Fix(g, h) = dim ker(A - I)` for the action matrix `A`.
    pub fn fix_dim(&self, g: &Mat, pair: &BetaPair) -> Result<usize> {
        if self.dim() == 0 {
            return Ok(0);
        }
        Ok(self
            .action_matrix(g, pair)?
            .minus_identity(&self.field)
            .kernel_dim(&self.field))
    }

    /// `|Fix(g, h)| = p^{dim Fix}`.
    pub fn fix_count(&self, g: &Mat, pair: &BetaPair) -> Result<BigUint> {
        Ok(BigUint::from(self.p).pow(self.fix_dim(g, pair)? as u32))
    }

    /// Every point, when `p^D` is at most `cap`.
    pub fn points(&self, cap: u64) -> Result<Vec<ExtensionDatum>> {
        let size = self.size();
        if size > BigUint::from(cap) {
            return Err(Error::refusal("extension space listing", size, cap));
        }
        let dim = self.dim();
        let p = self.p as u32;
        let mut c = vec![0u32; dim];
        let mut out = Vec::new();
        loop {
            out.push(self.from_coords(&c)?);
            let mut k = 0;
            while k < dim {
                c[k] += 1;
                if c[k] < p {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == dim {
                return Ok(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::dvrmod::aut_generate;
    use crate::error::Caps;
    use crate::exactalg::{parabolic_for_each, DvrQuot};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        let sp = ExtensionSpace::new(3, &[1, 2], &p(&[2, 1]), 3).unwrap();
        assert_eq!(sp.dim(), 2 + 6);
        assert!(ExtensionSpace::new(3, &[0, 3], &p(&[1]), 3).is_err());
        assert!(ExtensionSpace::new(3, &[1, 1], &p(&[1]), 3).is_err());
        assert_eq!(ExtensionSpace::new(2, &[2, 0], &p(&[1]), 3).unwrap().dim(), 2);
    }

    #[test]
    fn identity_and_zero() {
        let lam = p(&[2, 1]);
        let sp = ExtensionSpace::new(2, &[2], &lam, 3).unwrap();
        let ring = DvrQuot::integers(3, 2).unwrap();
        let grp = AutGroup::new(&lam, &ring).unwrap();
        let id = grp.beta(&grp.identity());
        let g = Mat::identity(2);
        assert_eq!(sp.fix_count(&g, &id).unwrap(), sp.size());
        for x in sp.points(1000).unwrap() {
            assert_eq!(sp.act(&g, &id, &x).unwrap(), x);
        }
        let all = aut_generate(&lam, &ring, &Caps::default()).unwrap();
        for h in all.iter().step_by(5) {
            assert_eq!(sp.action_apply(&g, &grp, h, &sp.zero()).unwrap(), sp.zero());
        }
        let bad = Mat::from_rows(&[vec![1, 0], vec![1, 1]]);
        let flagged = ExtensionSpace::new(2, &[1, 1], &lam, 3).unwrap();
        assert!(flagged.act(&bad, &id, &flagged.zero()).is_err());
    }

    #[test]
    fn one_dimensional_fix() {
        let lam = p(&[1]);
        let sp = ExtensionSpace::new(1, &[1], &lam, 5).unwrap();
        let f = Gf::new(5).unwrap();
        for a in 1..5u32 {
            for c in 1..5u32 {
                let pair = BetaPair {
                    y: Mat::scalar(1, c),
                    z: Mat::scalar(1, c),
                };
                let want = u32::from(f.mul(c, f.inv(a).unwrap()) == 1);
                assert_eq!(sp.fix_dim(&Mat::scalar(1, a), &pair).unwrap() as u32, want);
            }
        }
    }

    #[test]
    fn group_action_axiom() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (m, d, lam, q) in [
            (3u32, vec![1u32, 2], p(&[2, 1]), 3u64),
            (2, vec![2], p(&[1, 1]), 2),
            (3, vec![3], p(&[2]), 2),
        ] {
            let sp = ExtensionSpace::new(m, &d, &lam, q).unwrap();
            let ring = DvrQuot::integers(q, lam.largest()).unwrap();
            let grp = AutGroup::new(&lam, &ring).unwrap();
            let auts = aut_generate(&lam, &ring, &Caps::default()).unwrap();
            let mut ps = Vec::new();
            parabolic_for_each(&d, q, u64::MAX, |g| ps.push(g.clone())).unwrap();
            let f = sp.field().clone();
            for _ in 0..1000 {
                let (g1, g2) = (&ps[rng.gen_range(0..ps.len())], &ps[rng.gen_range(0..ps.len())]);
                let (h1, h2) = (&auts[rng.gen_range(0..auts.len())], &auts[rng.gen_range(0..auts.len())]);
                let coords: Vec<u32> = (0..sp.dim()).map(|_| rng.gen_range(0..q as u32)).collect();
                let x = sp.from_coords(&coords).unwrap();
                let inner = sp.action_apply(g2, &grp, h2, &x).unwrap();
                let lhs = sp.action_apply(g1, &grp, h1, &inner).unwrap();
                let rhs = sp
                    .action_apply(&g1.mul(g2, &f), &grp, &grp.compose(h1, h2), &x)
                    .unwrap();
                assert_eq!(lhs, rhs);
                let direct = sp.action_matrix(g1, &grp.beta(h1)).unwrap().mul_vec(&coords, &f);
                assert_eq!(sp.coords(&sp.act(g1, &grp.beta(h1), &x).unwrap()), direct);
            }
        }
    }
}
