//! Smith normal form of small integer matrices.

use num_integer::Integer;

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix (nonzero ones
/// only), computed by unimodular row and column operations.
pub fn invariant_factors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                let qv = Integer::div_floor(&a[i][t], &a[t][t]);
                if qv != 0 {
                    for j in t..cols {
                        a[i][j] -= qv * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let qv = Integer::div_floor(&a[t][j], &a[t][t]);
                if qv != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= qv * row[t];
                    }
                }
                if a[t][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // the pivot must divide the rest of the block
            let mut fixed = true;
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % a[t][t] != 0 {
                        for jj in t..cols {
                            a[t][jj] += a[i][jj];
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Partition type of the finite abelian `p`-group `Z^cols / rowspace(m)`,
/// assuming every generator is torsion (all invariant factors powers of
/// `p`); parts are the exponents `> 0`, in decreasing order.
pub fn p_group_type(m: &[Vec<i128>], p: u64) -> Option<Vec<u32>> {
    let cols = m.first().map_or(0, |r| r.len());
    let d = invariant_factors(m);
    if d.len() < cols {
        return None;
    }
    let mut parts = Vec::new();
    for x in d {
        let mut e = 0;
        let mut y = x;
        while y % p as i128 == 0 {
            y /= p as i128;
            e += 1;
        }
        if y != 1 {
            return None;
        }
        if e > 0 {
            parts.push(e);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalises() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(invariant_factors(&m), vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_chain_is_restored() {
        let m = vec![vec![4, 0], vec![0, 6]];
        assert_eq!(invariant_factors(&m), vec![2, 12]);
    }

    #[test]
    fn p_group_types() {
        let m = vec![vec![9, 0], vec![3, 3]];
        // Z^2 / <(9,0),(3,3)> has order 27
        let t = p_group_type(&m, 3).unwrap();
        assert_eq!(t.iter().sum::<u32>(), 3);
        assert_eq!(p_group_type(&[vec![2, 0]], 2), None);
    }
}
