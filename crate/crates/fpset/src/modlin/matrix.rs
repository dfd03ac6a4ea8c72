//! Dense matrices over `GF(p)`, `p < 2^16`. Vectors are rows and maps act on
//! the right, so the image of `v` under `A` is `v·A`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatGFp {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut b, mut r) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl MatGFp {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        assert!((2..1 << 16).contains(&p), "modulus out of range");
        MatGFp {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], p: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = v % p;
            }
        }
        m
    }

    /// Permutation matrix sending basis row `i` to basis row `perm[i]`.
    pub fn from_perm(perm: &[u32], p: u32) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n, p);
        for (i, &j) in perm.iter().enumerate() {
            m.data[i * n + j as usize] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &MatGFp) -> MatGFp {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p as u64;
        let mut out = Self::zeros(self.rows, other.cols, self.p);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                for (s, &b) in acc.iter_mut().zip(row) {
                    *s += a * b as u64;
                }
            }
            for (j, s) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (s % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &MatGFp) -> MatGFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + b) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &MatGFp) -> MatGFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.p - b) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u32) -> MatGFp {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = ((*a as u64 * c as u64) % self.p as u64) as u32;
        }
        out
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, other: &MatGFp, c: u32) {
        let p = self.p as u64;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u64 + c as u64 * b as u64) % p) as u32;
        }
    }

    pub fn transpose(&self) -> MatGFp {
        let mut out = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Rows stacked vertically.
    pub fn vstack(&self, other: &MatGFp) -> MatGFp {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatGFp {
        let mut out = Self::zeros(idx.len(), self.cols, self.p);
        for (k, &i) in idx.iter().enumerate() {
            out.data[k * self.cols..(k + 1) * self.cols].copy_from_slice(self.row(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatGFp {
        let mut out = Self::zeros(self.rows, idx.len(), self.p);
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    /// Reduced row echelon form, pivot columns, and the row operations `T`
    /// with `T·self = rref`.
    pub fn rref_with_transform(&self) -> (MatGFp, Vec<usize>, MatGFp) {
        let mut a = self.clone();
        let mut t = MatGFp::identity(self.rows, self.p);
        let piv = a.reduce(Some(&mut t));
        (a, piv, t)
    }

    pub fn rref(&self) -> (MatGFp, Vec<usize>) {
        let mut a = self.clone();
        let piv = a.reduce(None);
        (a, piv)
    }

    fn reduce(&mut self, mut t: Option<&mut MatGFp>) -> Vec<usize> {
        let p = self.p as u64;
        let mut piv = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(k) = (r..self.rows).find(|&k| self.get(k, c) != 0) else {
                continue;
            };
            self.swap_rows(r, k);
            if let Some(t) = t.as_deref_mut() {
                t.swap_rows(r, k);
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            self.scale_row(r, inv);
            if let Some(t) = t.as_deref_mut() {
                t.scale_row(r, inv);
            }
            for k in 0..self.rows {
                if k == r {
                    continue;
                }
                let f = self.get(k, c) as u64;
                if f == 0 {
                    continue;
                }
                let neg = (p - f) % p;
                self.axpy_row(k, r, neg);
                if let Some(t) = t.as_deref_mut() {
                    t.axpy_row(k, r, neg);
                }
            }
            piv.push(c);
            r += 1;
        }
        piv
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: u64) {
        let p = self.p as u64;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = (*v as u64 * f % p) as u32;
        }
    }

    /// row[k] += f · row[r]
    fn axpy_row(&mut self, k: usize, r: usize, f: u64) {
        let p = self.p as u64;
        let c = self.cols;
        for j in 0..c {
            let s = self.data[r * c + j] as u64;
            if s != 0 {
                let d = &mut self.data[k * c + j];
                *d = ((*d as u64 + f * s) % p) as u32;
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows, in reduced echelon form) of the row space.
    pub fn row_space(&self) -> MatGFp {
        let (r, piv) = self.rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    /// Basis of `{x : self·x = 0}` as rows.
    pub fn right_kernel(&self) -> MatGFp {
        let (r, piv) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = MatGFp::zeros(free.len(), self.cols, p);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &pc) in piv.iter().enumerate() {
                let v = r.get(i, f);
                out.set(k, pc, (p - v) % p);
            }
        }
        out
    }

    /// Basis of `{v : v·self = 0}` as rows.
    pub fn left_kernel(&self) -> MatGFp {
        self.transpose().right_kernel()
    }

    pub fn inverse(&self) -> Option<MatGFp> {
        assert_eq!(self.rows, self.cols);
        let (_, piv, t) = self.rref_with_transform();
        (piv.len() == self.rows).then_some(t)
    }

    /// Coordinates `X` with `X·basis = vectors`, for `basis` with independent
    /// rows and `vectors` inside its row space.
    pub fn coordinates(basis: &MatGFp, vectors: &MatGFp) -> Option<MatGFp> {
        let (_, piv, t) = basis.rref_with_transform();
        if piv.len() != basis.rows {
            return None;
        }
        let c = vectors.select_cols(&piv).mul(&t);
        (c.mul(basis) == *vectors).then_some(c)
    }

    /// `self^e` for square matrices.
    pub fn pow(&self, mut e: u64) -> MatGFp {
        let mut base = self.clone();
        let mut acc = MatGFp::identity(self.rows, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// A power `self^m` with `m ≥ rows`, enough for a Fitting decomposition.
    pub fn stable_power(&self) -> MatGFp {
        let mut m = self.clone();
        let mut e = 1;
        while e < self.rows {
            m = m.mul(&m);
            e *= 2;
        }
        m
    }

    pub fn is_nilpotent(&self) -> bool {
        self.stable_power().is_zero()
    }

    /// Flatten into one row (for spanning-set computations).
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> MatGFp {
        assert_eq!(data.len(), rows * cols);
        MatGFp {
            rows,
            cols,
            p,
            data,
        }
    }
}

impl fmt::Debug for MatGFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatGFp {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_mat(r: usize, c: usize, p: u32) -> impl Strategy<Value = MatGFp> {
        proptest::collection::vec(0..p, r * c).prop_map(move |d| MatGFp::from_flat(r, c, p, d))
    }

    #[test]
    fn rank_examples() {
        let ones = MatGFp::from_rows(&[vec![1, 1], vec![1, 1]], 2);
        assert_eq!(ones.rank(), 1);
        assert_eq!(MatGFp::identity(2, 2).scale(2).rank(), 0);
        assert_eq!(MatGFp::identity(3, 5).rank(), 3);
    }

    #[test]
    fn kernel_examples() {
        let a = MatGFp::from_rows(&[vec![1, 2, 0], vec![2, 4, 0]], 5);
        let k = a.right_kernel();
        assert_eq!(k.rows(), 2);
        assert!(a.mul(&k.transpose()).is_zero());
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_mat(5, 7, 3)) {
            prop_assert_eq!(m.rank() + m.right_kernel().rows(), 7);
            prop_assert!(m.mul(&m.right_kernel().transpose()).is_zero());
            prop_assert!(m.left_kernel().mul(&m).is_zero());
        }

        #[test]
        fn inverse_works(m in arb_mat(4, 4, 5)) {
            match m.inverse() {
                Some(inv) => prop_assert_eq!(m.mul(&inv), MatGFp::identity(4, 5)),
                None => prop_assert!(m.rank() < 4),
            }
        }

        #[test]
        fn coordinates_recover(b in arb_mat(3, 6, 7), x in arb_mat(2, 3, 7)) {
            let basis = b.row_space();
            let x = x.select_cols(&(0..basis.rows()).collect::<Vec<_>>());
            let v = x.mul(&basis);
            prop_assert_eq!(MatGFp::coordinates(&basis, &v).unwrap(), x);
        }

        #[test]
        fn fitting_splits(m in arb_mat(5, 5, 2)) {
            let g = m.stable_power();
            prop_assert_eq!(g.rank() + g.left_kernel().rows(), 5);
            prop_assert_eq!(g.row_space().vstack(&g.left_kernel()).rank(), 5);
        }
    }
}
