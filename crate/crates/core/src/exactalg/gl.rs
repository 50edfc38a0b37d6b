use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use super::field::Gf;
use super::matrix::Mat;
use crate::error::{Error, Result};

/// `|GL_n(q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let qn = BigUint::from(q).pow(n);
    let mut out = BigUint::one();
    for i in 0..n {
        out *= &qn - BigUint::from(q).pow(i);
    }
    out
}

/// `|GL_n(q)|` as `u128`; panics on overflow (only used at desk scale).
pub fn gl_order_u128(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

/// Order of the standard block-upper-triangular parabolic with diagonal
/// blocks of sizes `d`.
pub fn parabolic_order(d: &[u32], q: u64) -> BigUint {
    let mut out = BigUint::one();
    let mut below = 0u32;
    for &di in d.iter().rev() {
        out *= gl_order(di, q);
        out *= BigUint::from(q).pow(di * below);
        below += di;
    }
    out
}

/// Exhaustive stream of `GL_n(q)`, each element exactly once.
///
/// Rows are chosen one at a time outside the span of the earlier rows, so no
/// singular matrix is ever visited.
pub struct GlIter {
    f: Arc<Gf>,
    n: usize,
    q: u64,
    total: u64,
    // current row codes; rows[i] < q^n
    rows: Vec<u64>,
    started: bool,
    done: bool,
}

/// Streams `GL_n(q)`; refuses when `q^{n^2}` exceeds `cap`.
pub fn gl_iter(n: u32, q: u64, cap: u64) -> Result<GlIter> {
    let f = Gf::new(q)?;
    let space = (q as u128).checked_pow(n * n).unwrap_or(u128::MAX);
    if space > cap as u128 {
        return Err(Error::refusal(format!("GL_{n}({q}) enumeration"), space, cap));
    }
    Ok(GlIter {
        f,
        n: n as usize,
        q,
        total: (q as u64).pow(n),
        rows: Vec::new(),
        started: false,
        done: false,
    })
}

impl GlIter {
    fn decode(&self, code: u64) -> Vec<u32> {
        let mut c = code;
        (0..self.n)
            .map(|_| {
                let d = (c % self.q) as u32;
                c /= self.q;
                d
            })
            .collect()
    }

    fn independent(&self, upto: usize, code: u64) -> bool {
        let mut m: Vec<Vec<u32>> = self.rows[..upto].iter().map(|&c| self.decode(c)).collect();
        m.push(self.decode(code));
        Mat::from_rows(&m).rank(&self.f) == upto + 1
    }

    /// Smallest code `>= from` independent of rows `0..i`.
    fn next_valid(&self, i: usize, from: u64) -> Option<u64> {
        (from..self.total).find(|&c| self.independent(i, c))
    }

    fn current(&self) -> Mat {
        let data = self.rows.iter().flat_map(|&c| self.decode(c)).collect();
        Mat::from_vec(self.n, self.n, data)
    }
}

impl Iterator for GlIter {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
                return Some(Mat::zeros(0, 0));
            }
            for i in 0..self.n {
                let c = self.next_valid(i, 0).expect("some independent row exists");
                self.rows.push(c);
            }
            return Some(self.current());
        }
        // advance the deepest row that can move, then refill below it
        let mut i = self.n;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            let from = self.rows[i] + 1;
            self.rows.truncate(i);
            if let Some(c) = self.next_valid(i, from) {
                self.rows.push(c);
                break;
            }
        }
        for k in i + 1..self.n {
            let c = self.next_valid(k, 0).expect("some independent row exists");
            self.rows.push(c);
        }
        Some(self.current())
    }
}

/// Calls `visit` on every element of the standard block-upper-triangular
/// parabolic with diagonal blocks `d` (the stabiliser of the flag spanned by
/// leading coordinate vectors). Refuses when the group order exceeds `cap`.
pub fn parabolic_for_each(d: &[u32], q: u64, cap: u64, mut visit: impl FnMut(&Mat)) -> Result<u64> {
    let f = Gf::new(q)?;
    let order = parabolic_order(d, q);
    if order > BigUint::from(cap) {
        return Err(Error::refusal(format!("parabolic P{d:?} over F_{q}"), order, cap));
    }
    let blocks: Vec<u32> = d.iter().copied().filter(|&x| x > 0).collect();
    let n: u32 = blocks.iter().sum();
    if blocks.len() <= 1 {
        let mut count = 0;
        for g in gl_iter(n, q, u64::MAX)? {
            visit(&g);
            count += 1;
        }
        return Ok(count);
    }
    let lists: Vec<Vec<Mat>> = blocks
        .iter()
        .map(|&b| gl_iter(b, q, u64::MAX).map(|it| it.collect()))
        .collect::<Result<_>>()?;
    let mut offsets = Vec::new();
    let mut acc = 0usize;
    for &b in &blocks {
        offsets.push(acc);
        acc += b as usize;
    }
    let n = n as usize;
    // free positions strictly above the block diagonal
    let mut free = Vec::new();
    for (bi, &b) in blocks.iter().enumerate() {
        for r in offsets[bi]..offsets[bi] + b as usize {
            for c in offsets[bi] + b as usize..n {
                free.push((r, c));
            }
        }
    }
    let mut idx = vec![0usize; blocks.len()];
    let mut count = 0u64;
    let mut g = Mat::zeros(n, n);
    loop {
        for (bi, list) in lists.iter().enumerate() {
            let blk = &list[idx[bi]];
            let o = offsets[bi];
            for r in 0..blk.rows() {
                for c in 0..blk.cols() {
                    g.set(o + r, o + c, blk.get(r, c));
                }
            }
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            for (k, &(r, c)) in free.iter().enumerate() {
                g.set(r, c, digits[k]);
            }
            visit(&g);
            count += 1;
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if (digits[k] as u64) < f.order() as u64 {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
        let mut bi = 0;
        while bi < idx.len() {
            idx[bi] += 1;
            if idx[bi] < lists[bi].len() {
                break;
            }
            idx[bi] = 0;
            bi += 1;
        }
        if bi == idx.len() {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(gl_iter(1, 3, 1000).unwrap().count(), 2);
        assert_eq!(gl_iter(2, 2, 1000).unwrap().count(), 6);
        assert_eq!(gl_iter(2, 3, 1000).unwrap().count(), 48);
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
    }

    #[test]
    fn stream_matches_formula_and_is_distinct() {
        for (n, q) in [(2u32, 4u64), (2, 5), (3, 2)] {
            let all: Vec<Mat> = gl_iter(n, q, 1 << 20).unwrap().collect();
            let f = Gf::new(q).unwrap();
            assert!(all.iter().all(|m| m.is_invertible(&f)));
            let set: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            assert_eq!(all.len() as u128, gl_order_u128(n, q));
        }
    }

    #[test]
    fn cap_refuses() {
        let err = gl_iter(3, 5, 1000).err().unwrap();
        assert!(err.is_refusal());
    }

    #[test]
    fn borel_of_gl3_over_f2() {
        let mut n = 0;
        let f = Gf::new(2).unwrap();
        let visited = parabolic_for_each(&[1, 1, 1], 2, 1 << 20, |g| {
            assert!(g.is_invertible(&f));
            assert_eq!((g.get(1, 0), g.get(2, 0), g.get(2, 1)), (0, 0, 0));
            n += 1;
        })
        .unwrap();
        assert_eq!(visited, 8);
        assert_eq!(n, 8);
        assert_eq!(parabolic_order(&[1, 2], 3), BigUint::from(2u32 * 48 * 9));
    }
}
