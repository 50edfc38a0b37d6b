use std::fmt;

use super::field::Gf;
use super::poly::UniPoly;

/// Dense matrix over a finite field, row-major, entries are field codes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: u32) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, f: &Gf) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, f: &Gf) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Mat, f: &Gf) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u32, f: &Gf) -> Mat {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    /// `self - I`, for square matrices.
    pub fn minus_identity(&self, f: &Gf) -> Mat {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            m.data[idx] = f.sub(m.data[idx], 1);
        }
        m
    }

    pub fn pow(&self, e: u32, f: &Gf) -> Mat {
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self, f);
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat, f: &Gf) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Companion matrix of a monic polynomial of positive degree.
    pub fn companion(g: &UniPoly, f: &Gf) -> Mat {
        let n = g.degree().expect("companion of zero polynomial");
        assert!(n > 0 && g.leading() == 1, "companion needs a monic non-constant");
        let mut m = Mat::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(g.coeffs()[i]));
        }
        m
    }

    /// Reduces a copy to row echelon form; returns it with the pivot columns.
    fn echelon(&self, f: &Gf) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col)).unwrap();
            for j in col..m.cols {
                let v = m.get(row, j);
                m.set(row, j, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let c = m.get(r, col);
                if c == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(c, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Gf) -> usize {
        self.echelon(f).1.len()
    }

    /// Dimension of the right null space `{x : M x = 0}`.
    pub fn kernel_dim(&self, f: &Gf) -> usize {
        self.cols - self.rank(f)
    }

    /// Reduced row echelon form (rows of zeros removed).
    pub fn rref(&self, f: &Gf) -> Mat {
        let (m, piv) = self.echelon(f);
        m.submatrix(0, 0, piv.len(), m.cols)
    }

    pub fn is_invertible(&self, f: &Gf) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &Gf) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (e, piv) = aug.echelon(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(e.submatrix(0, n, n, n))
    }

    pub fn det(&self, f: &Gf) -> u32 {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    m.data.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let d = m.get(col, col);
            det = f.mul(det, d);
            let inv = f.inv(d).unwrap();
            for r in col + 1..n {
                let c = f.mul(m.get(r, col), inv);
                if c == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(r, j), f.mul(c, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(X I - M)` by reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self, f: &Gf) -> UniPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        // similarity transforms to Hessenberg form
        for col in 0..n.saturating_sub(2) {
            let Some(piv) = (col + 1..n).find(|&r| h.get(r, col) != 0) else {
                continue;
            };
            if piv != col + 1 {
                let a = col + 1;
                for j in 0..n {
                    h.data.swap(piv * n + j, a * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + a);
                }
            }
            let inv = f.inv(h.get(col + 1, col)).unwrap();
            for r in col + 2..n {
                let c = f.mul(h.get(r, col), inv);
                if c == 0 {
                    continue;
                }
                // row_r -= c row_{col+1}; col_{col+1} += c col_r
                for j in 0..n {
                    let v = f.sub(h.get(r, j), f.mul(c, h.get(col + 1, j)));
                    h.set(r, j, v);
                }
                for i in 0..n {
                    let v = f.add(h.get(i, col + 1), f.mul(c, h.get(i, r)));
                    h.set(i, col + 1, v);
                }
            }
        }
        // p_k = charpoly of the leading k x k block
        let mut polys: Vec<UniPoly> = vec![UniPoly::one()];
        for k in 1..=n {
            let x_minus = UniPoly::new(vec![f.neg(h.get(k - 1, k - 1)), 1]);
            let mut pk = x_minus.mul(&polys[k - 1], f);
            let mut prod = 1u32;
            for i in (1..k).rev() {
                prod = f.mul(prod, h.get(i, i - 1));
                if prod == 0 {
                    break;
                }
                let c = f.mul(prod, h.get(i - 1, k - 1));
                let term = polys[i - 1].mul(&UniPoly::new(vec![c]), f);
                pk = pk.sub(&term, f);
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }

    /// `g(M)` by Horner's rule.
    pub fn eval_poly(&self, g: &UniPoly, f: &Gf) -> Mat {
        let n = self.rows;
        let mut out = Mat::zeros(n, n);
        for &c in g.coeffs().iter().rev() {
            out = out.mul(self, f);
            if c != 0 {
                for i in 0..n {
                    let idx = i * n + i;
                    out.data[idx] = f.add(out.data[idx], c);
                }
            }
        }
        out
    }

    /// Matrix of the induced map on `∧²` in the basis `e_a ∧ e_b`, `a < b`,
    /// pairs in lexicographic order.
    pub fn wedge2(&self, f: &Gf) -> Mat {
        assert!(self.is_square());
        let n = self.rows;
        let pairs = pairs(n);
        let k = pairs.len();
        let mut out = Mat::zeros(k, k);
        for (col, &(a, b)) in pairs.iter().enumerate() {
            for (row, &(c, d)) in pairs.iter().enumerate() {
                let v = f.sub(
                    f.mul(self.get(c, a), self.get(d, b)),
                    f.mul(self.get(d, a), self.get(c, b)),
                );
                out.set(row, col, v);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], f: &Gf) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect()
    }
}

/// Unordered index pairs `(a, b)`, `a < b < n`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

impl fmt::Debug for Mat {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(fm, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(fm, "{}", row.join(" "))?;
        }
        write!(fm, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let f2 = Gf::new(2).unwrap();
        assert_eq!(Mat::zeros(3, 3).kernel_dim(&f2), 3);
        assert_eq!(Mat::identity(4).kernel_dim(&f2), 0);
        let m = Mat::from_rows(&[vec![1, 1], vec![0, 0]]);
        assert_eq!(m.kernel_dim(&f2), 1);
    }

    #[test]
    fn inverse_and_det() {
        let f = Gf::new(7).unwrap();
        let m = Mat::from_rows(&[vec![2, 3, 1], vec![0, 5, 4], vec![6, 1, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Mat::identity(3));
        assert_ne!(m.det(&f), 0);
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse(&f).is_none());
        assert_eq!(sing.det(&f), 0);
    }

    #[test]
    fn charpoly_of_companion() {
        for q in [2u64, 3, 4, 9] {
            let f = Gf::new(q).unwrap();
            let g = UniPoly::new(vec![1, 2 % q as u32, 0, 1]);
            let c = Mat::companion(&g, &f);
            assert_eq!(c.charpoly(&f), g);
            assert!(c.eval_poly(&g, &f).data().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn charpoly_constant_term_is_signed_det() {
        let f = Gf::new(5).unwrap();
        let m = Mat::from_rows(&[vec![0, 0, 3], vec![1, 4, 2], vec![0, 2, 2]]);
        let cp = m.charpoly(&f);
        // constant term of det(X - M) is (-1)^n det M
        assert_eq!(cp.coeffs()[0], f.neg(m.det(&f)));
        assert_eq!(cp.degree(), Some(3));
    }

    #[test]
    fn wedge_is_multiplicative() {
        let f = Gf::new(3).unwrap();
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]);
        let b = Mat::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 2, 2]]);
        assert_eq!(a.mul(&b, &f).wedge2(&f), a.wedge2(&f).mul(&b.wedge2(&f), &f));
    }
}
