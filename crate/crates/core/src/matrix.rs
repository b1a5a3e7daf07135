//! Dense matrices over a [`Scalar`] field, plus the tensor-space helpers the
//! Yang-Baxter machinery needs: Kronecker products, the permutator and
//! two-site leg embeddings on an n-fold tensor space.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rectangular row-major matrix, immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> DenseMatrix<K> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == nc), "ragged matrix rows");
        let data = rows.into_iter().flatten().collect();
        DenseMatrix {
            rows: nr,
            cols: nc,
            data,
        }
    }

    /// Builds from a sparse entry list; unlisted entries are zero.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize, K)]) -> Self {
        let mut data = vec![K::zero(); rows * cols];
        for (r, c, v) in entries {
            data[r * cols + c] = v.clone();
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { K::one() } else { K::zero() })
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

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> impl Iterator<Item = &K> {
        self.data.iter()
    }

    pub fn map<J: Scalar>(&self, f: impl FnMut(&K) -> J) -> DenseMatrix<J> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix add shape"
        );
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() + rhs.get(r, c).clone()
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sub shape"
        );
        Self::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).clone() - rhs.get(r, c).clone()
        })
    }

    pub fn scale(&self, s: &K) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| {
            s.clone() * self.get(r, c).clone()
        })
    }

    /// Matrix product, skipping bit-exact zero entries of the left factor
    /// (the ice rule makes every operator here mostly structural zeros).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix mul shape");
        let mut out = vec![K::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_structural_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_structural_zero() {
                        continue;
                    }
                    let cell = &mut out[r * rhs.cols + c];
                    *cell = cell.clone() + a.clone() * b.clone();
                }
            }
        }
        DenseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        }
    }

    /// Largest-magnitude entry.
    pub fn max_abs(&self) -> K {
        self.data
            .iter()
            .max_by(|a, b| a.abs_cmp(b))
            .cloned()
            .unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// If the matrix is `s * I`, returns `s`.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<K> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.get(r, c);
                let want_zero = if r == c {
                    e.clone() - s.clone()
                } else {
                    e.clone()
                };
                if !want_zero.is_zero() {
                    return None;
                }
            }
        }
        Some(s)
    }
}

/// Kronecker product; `(A ⊗ B)(C ⊗ D) = AC ⊗ BD`.
pub fn kron<K: Scalar>(a: &DenseMatrix<K>, b: &DenseMatrix<K>) -> DenseMatrix<K> {
    DenseMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        let (ar, br) = (r / b.rows(), r % b.rows());
        let (ac, bc) = (c / b.cols(), c % b.cols());
        let x = a.get(ar, ac);
        if x.is_structural_zero() {
            K::zero()
        } else {
            x.clone() * b.get(br, bc).clone()
        }
    })
}

/// The `q^2 x q^2` permutator: `P (e_i ⊗ e_j) = e_j ⊗ e_i`, `P^2 = I`.
pub fn permutator<K: Scalar>(q: usize) -> DenseMatrix<K> {
    assert!(q >= 1, "permutator needs q >= 1");
    DenseMatrix::from_fn(q * q, q * q, |r, c| {
        let (i, j) = (r / q, r % q);
        if c == j * q + i {
            K::one()
        } else {
            K::zero()
        }
    })
}

/// Largest-magnitude entry of `AB - BA`; exactly zero iff the matrices
/// commute in an exact backend.
pub fn commutator_residual<K: Scalar>(a: &DenseMatrix<K>, b: &DenseMatrix<K>) -> Result<K> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            lhs_rows: a.rows(),
            lhs_cols: a.cols(),
            rhs_rows: b.rows(),
            rhs_cols: b.cols(),
        });
    }
    Ok(a.mul(b).sub(&b.mul(a)).max_abs())
}

/// Embeds a `q x q` one-site operator on slot `slot` of an `n_slots`-fold
/// `q`-dimensional tensor space.
pub fn embed_one_site<K: Scalar>(
    m: &DenseMatrix<K>,
    n_slots: usize,
    slot: usize,
    q: usize,
) -> DenseMatrix<K> {
    assert_eq!(m.rows(), q, "operator is not one-site");
    assert!(m.is_square() && slot < n_slots);
    let dim = q.pow(n_slots as u32);
    let stride = q.pow((n_slots - 1 - slot) as u32);
    let mut entries = Vec::new();
    for col in 0..dim {
        let i = (col / stride) % q;
        for o in 0..q {
            let v = m.get(o, i);
            if v.is_structural_zero() {
                continue;
            }
            let row = (col as isize + (o as isize - i as isize) * stride as isize) as usize;
            entries.push((row, col, v.clone()));
        }
    }
    DenseMatrix::from_entries(dim, dim, &entries)
}

/// Embeds a `q^2 x q^2` two-site operator acting on tensor slots
/// (`slot_a`, `slot_b`) of an `n_slots`-fold `q`-dimensional tensor space,
/// with the lexicographic basis `e_{i1} ⊗ e_{i2} ⊗ ...`.
pub fn embed_two_site<K: Scalar>(
    m: &DenseMatrix<K>,
    n_slots: usize,
    slot_a: usize,
    slot_b: usize,
    q: usize,
) -> DenseMatrix<K> {
    assert_eq!(m.rows(), q * q, "operator is not two-site");
    assert!(m.is_square() && slot_a != slot_b && slot_a < n_slots && slot_b < n_slots);
    let dim = q.pow(n_slots as u32);
    let stride = |slot: usize| q.pow((n_slots - 1 - slot) as u32);
    let (sa, sb) = (stride(slot_a), stride(slot_b));
    let digit = |idx: usize, slot: usize| (idx / stride(slot)) % q;

    let mut entries = Vec::new();
    for col in 0..dim {
        let (ia, ib) = (digit(col, slot_a), digit(col, slot_b));
        for oa in 0..q {
            for ob in 0..q {
                let v = m.get(oa * q + ob, ia * q + ib);
                if v.is_structural_zero() {
                    continue;
                }
                let row = (col as isize
                    + (oa as isize - ia as isize) * sa as isize
                    + (ob as isize - ib as isize) * sb as isize) as usize;
                entries.push((row, col, v.clone()));
            }
        }
    }
    DenseMatrix::from_entries(dim, dim, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn rand_mat(seed: &mut u64, n: usize) -> DenseMatrix<Rat> {
        DenseMatrix::from_fn(n, n, |_, _| {
            *seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            r(
                ((*seed >> 33) % 19) as i64 - 9,
                1 + ((*seed >> 13) % 7) as i64,
            )
        })
    }

    #[test]
    fn kron_identity_case() {
        let i3 = DenseMatrix::<Rat>::identity(3);
        assert_eq!(kron(&i3, &i3), DenseMatrix::identity(9));
    }

    #[test]
    fn kron_diagonal_case() {
        let d = DenseMatrix::from_rows(alloc::vec![
            alloc::vec![r(1, 1), r(0, 1)],
            alloc::vec![r(0, 1), r(2, 1)],
        ]);
        let i2 = DenseMatrix::identity(2);
        let k = kron(&d, &i2);
        let expect = DenseMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                r([1, 1, 2, 2][i], 1)
            } else {
                Rat::zero()
            }
        });
        assert_eq!(k, expect);
    }

    #[test]
    fn kron_mixed_product_property() {
        let mut s = 42u64;
        let (a, b, c, d) = (
            rand_mat(&mut s, 3),
            rand_mat(&mut s, 3),
            rand_mat(&mut s, 3),
            rand_mat(&mut s, 3),
        );
        assert_eq!(
            kron(&a, &b).mul(&kron(&c, &d)),
            kron(&a.mul(&c), &b.mul(&d))
        );
    }

    #[test]
    fn permutator_defining_action_and_involution() {
        let p = permutator::<Rat>(3);
        assert_eq!(p.mul(&p), DenseMatrix::identity(9));
        assert_eq!(permutator::<Rat>(1), DenseMatrix::identity(1));
        // P (e_0 ⊗ e_1) = e_1 ⊗ e_0: column 1 maps to row 3
        for rix in 0..9 {
            let expect = if rix == 3 { Rat::one() } else { Rat::zero() };
            assert_eq!(p.get(rix, 1), &expect);
        }
    }

    #[test]
    fn permutator_conjugation_swaps_factors() {
        let p = permutator::<Rat>(3);
        let mut s = 7u64;
        let (a, b) = (rand_mat(&mut s, 3), rand_mat(&mut s, 3));
        assert_eq!(p.mul(&kron(&a, &b)).mul(&p), kron(&b, &a));
    }

    #[test]
    fn commutator_cases() {
        let i = DenseMatrix::<Rat>::identity(2);
        let mut s = 3u64;
        let a = rand_mat(&mut s, 2);
        assert!(commutator_residual(&i, &a).unwrap().is_zero());
        let d1 = DenseMatrix::from_entries(2, 2, &[(0, 0, r(1, 1)), (1, 1, r(2, 1))]);
        let d2 = DenseMatrix::from_entries(2, 2, &[(0, 0, r(3, 1)), (1, 1, r(4, 1))]);
        assert!(commutator_residual(&d1, &d2).unwrap().is_zero());
        let sx = DenseMatrix::from_entries(2, 2, &[(0, 1, r(1, 1)), (1, 0, r(1, 1))]);
        let sz = DenseMatrix::from_entries(2, 2, &[(0, 0, r(1, 1)), (1, 1, r(-1, 1))]);
        assert!(!commutator_residual(&sx, &sz).unwrap().is_zero());
        let bad = DenseMatrix::<Rat>::identity(3);
        assert!(commutator_residual(&sx, &bad).is_err());
    }

    #[test]
    fn embed_two_site_matches_kron_on_adjacent_slots() {
        let mut s = 11u64;
        let (a, b) = (rand_mat(&mut s, 3), rand_mat(&mut s, 3));
        let two = kron(&a, &b);
        let i3 = DenseMatrix::identity(3);
        assert_eq!(embed_two_site(&two, 3, 0, 1, 3), kron(&two, &i3));
        assert_eq!(embed_two_site(&two, 3, 1, 2, 3), kron(&i3, &two));
        // slots (0,2): A on slot 0, B on slot 2
        assert_eq!(
            embed_two_site(&kron(&a, &b), 3, 0, 2, 3),
            kron(&kron(&a, &i3), &b)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn exact_matrix_product_is_associative(seed in any::<u64>()) {
            let mut s = seed | 1;
            let (a, b, c) = (rand_mat(&mut s, 4), rand_mat(&mut s, 4), rand_mat(&mut s, 4));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
