use crate::error::{Error, Result};
use crate::exactalg::snf::p_group_type;
use crate::typelib::Partition;

/// Partition type of `Z^cols / rowspace(rows)`.
fn cokernel_type(rows: &[Vec<i128>], p: u64) -> Result<Partition> {
    let parts = p_group_type(rows, p).ok_or_else(|| Error::inconsistency("cokernel is not a finite p-group"))?;
    Partition::new(parts)
}

fn ppow(p: u64, e: u32) -> Result<i128> {
    (p as i128)
        .checked_pow(e)
        .ok_or_else(|| Error::domain(format!("{p}^{e} does not fit the integer presentation")))
}

/// `Ext(M_κ, M_λ)` over `Z_p` from the resolution `0 → Q → P → M_κ → 0`.
///
/// `P` and `Q` are free of rank `len κ` and `μ: Q → P` multiplies the
/// `i`-th generator by `p^{κ_i}`. `Hom(Q, B) = B^k` is presented on
/// generators `φ_{ij}` (`q_i ↦ b_j`) with relations `p^{λ_j} φ_{ij}`, and the
/// image of `μ^*` adds, for every `ψ_{lj}` (`p_l ↦ b_j`), the relation
/// `ψ_{lj} ∘ μ = Σ_i μ_{li} φ_{ij}`.
pub fn ext_via_resolution(kappa: &Partition, lambda: &Partition, p: u64) -> Result<Partition> {
    let k = kappa.len();
    let s = lambda.len();
    if k == 0 || s == 0 {
        return Ok(Partition::empty());
    }
    let mut mu = vec![vec![0i128; k]; k];
    for (i, &a) in kappa.parts().iter().enumerate() {
        mu[i][i] = ppow(p, a)?;
    }
    let idx = |i: usize, j: usize| i * s + j;
    let mut rows = Vec::new();
    for i in 0..k {
        for (j, &b) in lambda.parts().iter().enumerate() {
            let mut r = vec![0i128; k * s];
            r[idx(i, j)] = ppow(p, b)?;
            rows.push(r);
        }
    }
    for l in 0..k {
        for j in 0..s {
            let mut r = vec![0i128; k * s];
            for i in 0..k {
                r[idx(i, j)] = mu[l][i];
            }
            rows.push(r);
        }
    }
    cokernel_type(&rows, p)
}

/// `Â ⊗ M_λ` with `Â` realised as `M_κ` (finite modules of partition type
/// are self-dual): `⊕_{i,j} Z/p^{min(κ_i, λ_j)}`.
pub fn ext_hat_tensor(kappa: &Partition, lambda: &Partition) -> Partition {
    let mut parts = Vec::new();
    for &a in kappa.parts() {
        for &b in lambda.parts() {
            parts.push(a.min(b));
        }
    }
    Partition::from_unsorted(parts)
}

/// `log_p |Ext(M_κ, M_λ)| = Σ min(κ_i, λ_j)`.
pub fn ext_log_order(kappa: &Partition, lambda: &Partition) -> u32 {
    ext_hat_tensor(kappa, lambda).weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        for (a, b) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
            assert_eq!(ext_via_resolution(&p(&[a]), &p(&[b]), 3).unwrap(), p(&[a.min(b)]));
        }
        assert!(ext_via_resolution(&p(&[]), &p(&[2]), 5).unwrap().is_empty());
        assert_eq!(ext_via_resolution(&p(&[1, 1]), &p(&[2]), 2).unwrap(), p(&[1, 1]));
        assert_eq!(ext_hat_tensor(&p(&[2]), &p(&[1])), p(&[1]));
        assert!(ext_hat_tensor(&p(&[2]), &p(&[])).is_empty());
    }

    #[test]
    fn both_ways_agree() {
        for kappa in Partition::all_up_to_weight(4) {
            for lambda in Partition::all_up_to_weight(4) {
                for q in [2u64, 3, 5] {
                    let a = ext_via_resolution(&kappa, &lambda, q).unwrap();
                    assert_eq!(a, ext_hat_tensor(&kappa, &lambda));
                    assert_eq!(a.weight(), ext_log_order(&kappa, &lambda));
                }
            }
        }
    }
}
