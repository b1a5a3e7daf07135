//! Row-to-row transfer matrices with magnetization-sector blocking.
//!
//! The transfer matrix is the auxiliary-space trace of a periodic product of
//! single-site transition operators. Two independent builds are provided:
//! a dense Kronecker accumulation and a per-sector path product that only
//! touches the magnetization blocks the ice rule allows. They must agree
//! entrywise, which the tests exploit as an algorithmic cross-check.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lax::LaxOperator;
use crate::matrix::{commutator_residual, kron, DenseMatrix};
use crate::scalar::Scalar;

/// Site caps keeping dense exact arithmetic at desk scale.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub exact_max_sites: usize,
    pub float_max_sites: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exact_max_sites: 5,
            float_max_sites: 8,
        }
    }
}

impl Budget {
    fn check<K: Scalar>(&self, sites: usize) -> Result<()> {
        let limit = if K::EXACT {
            self.exact_max_sites
        } else {
            self.float_max_sites
        };
        if sites == 0 || sites > limit {
            Err(Error::BudgetExceeded { sites, limit })
        } else {
            Ok(())
        }
    }
}

/// One magnetization block: the basis states it spans (global indices, in
/// order) and the matrix restricted to them.
#[derive(Debug, Clone)]
pub struct SectorBlock<K> {
    pub magnetization: i64,
    pub states: Vec<usize>,
    pub matrix: DenseMatrix<K>,
}

#[derive(Debug, Clone)]
pub enum TransferRepr<K> {
    Dense(DenseMatrix<K>),
    Blocked(Vec<SectorBlock<K>>),
}

/// Transfer matrix on `N` sites, dense or sector-blocked.
#[derive(Debug, Clone)]
pub struct TransferMatrix<K> {
    pub sites: usize,
    pub repr: TransferRepr<K>,
}

/// Total magnetization of a basis state: digits `0,1,2` carry `+1,0,-1`.
pub fn magnetization(state: usize, sites: usize) -> i64 {
    let mut m = 0i64;
    let mut s = state;
    for _ in 0..sites {
        m += 1 - (s % 3) as i64;
        s /= 3;
    }
    m
}

/// Basis states grouped by magnetization, keys descending from `+N` to `-N`.
pub fn sectors(sites: usize) -> BTreeMap<i64, Vec<usize>> {
    let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for s in 0..3usize.pow(sites as u32) {
        map.entry(magnetization(s, sites)).or_default().push(s);
    }
    map
}

// Site j of the chain occupies the j-th least significant ternary digit of
// the basis index; the digit list is in site order.
fn digits(state: usize, sites: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(sites);
    let mut s = state;
    for _ in 0..sites {
        out.push(s % 3);
        s /= 3;
    }
    out
}

/// Trace over the auxiliary space of the path product for one matrix
/// element `T[row, col]`. Each site contributes the aux-shift matrix
/// `M[a, b] = W_{a,b}(c, d)`, nonzero only for `b = a + c - d`.
fn trace_element<K: Scalar>(lax: &DenseMatrix<K>, row: &[usize], col: &[usize]) -> K {
    let mut total = K::zero();
    'aux: for start in 0..3usize {
        let mut a = start;
        let mut acc = K::one();
        for (&c, &d) in row.iter().zip(col.iter()) {
            let b = a as isize + c as isize - d as isize;
            if !(0..3).contains(&b) {
                continue 'aux;
            }
            let w = lax.get(3 * a + c, 3 * b as usize + d);
            if w.is_structural_zero() {
                continue 'aux;
            }
            acc = acc * w.clone();
            a = b as usize;
        }
        if a == start {
            total = total + acc;
        }
    }
    total
}

/// Builds the transfer matrix; `blocked` selects the sector representation.
pub fn build_transfer<K: Scalar>(
    lax: &LaxOperator<K>,
    sites: usize,
    blocked: bool,
    budget: Budget,
) -> Result<TransferMatrix<K>> {
    budget.check::<K>(sites)?;
    if blocked {
        build_blocked(lax, sites)
    } else {
        build_dense(lax, sites)
    }
}

/// Dense build: accumulates the 3x3 auxiliary matrix of growing quantum
/// blocks and traces at the end.
#[allow(clippy::needless_range_loop)]
fn build_dense<K: Scalar>(lax: &LaxOperator<K>, sites: usize) -> Result<TransferMatrix<K>> {
    let w_block = |a: usize, b: usize| {
        DenseMatrix::from_fn(3, 3, |c, d| lax.matrix.get(3 * a + c, 3 * b + d).clone())
    };
    let mut cur: Vec<Vec<DenseMatrix<K>>> = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    if a == b {
                        DenseMatrix::identity(1)
                    } else {
                        DenseMatrix::zeros(1, 1)
                    }
                })
                .collect()
        })
        .collect();
    for _ in 0..sites {
        let dim = cur[0][0].rows() * 3;
        let mut next: Vec<Vec<DenseMatrix<K>>> = (0..3)
            .map(|_| (0..3).map(|_| DenseMatrix::zeros(dim, dim)).collect())
            .collect();
        for a in 0..3 {
            for c in 0..3 {
                let mut acc = DenseMatrix::zeros(dim, dim);
                for b in 0..3 {
                    // the new site's quantum factor goes to the high slot,
                    // keeping site 1 at the least significant digit
                    acc = acc.add(&kron(&w_block(b, c), &cur[a][b]));
                }
                next[a][c] = acc;
            }
        }
        cur = next;
    }
    let mut t = cur[0][0].clone();
    t = t.add(&cur[1][1]).add(&cur[2][2]);
    Ok(TransferMatrix {
        sites,
        repr: TransferRepr::Dense(t),
    })
}

/// Sector-blocked build via per-element auxiliary path products.
fn build_blocked<K: Scalar>(lax: &LaxOperator<K>, sites: usize) -> Result<TransferMatrix<K>> {
    let mut blocks = Vec::new();
    for (m, states) in sectors(sites) {
        let digit_list: Vec<Vec<usize>> = states.iter().map(|&s| digits(s, sites)).collect();
        let n = states.len();
        let matrix = DenseMatrix::from_fn(n, n, |r, c| {
            trace_element(&lax.matrix, &digit_list[r], &digit_list[c])
        });
        blocks.push(SectorBlock {
            magnetization: m,
            states,
            matrix,
        });
    }
    Ok(TransferMatrix {
        sites,
        repr: TransferRepr::Blocked(blocks),
    })
}

impl<K: Scalar> TransferMatrix<K> {
    pub fn dim(&self) -> usize {
        3usize.pow(self.sites as u32)
    }

    /// Scatters sector blocks into the full matrix (or returns the dense
    /// representation unchanged).
    pub fn to_dense(&self) -> DenseMatrix<K> {
        match &self.repr {
            TransferRepr::Dense(m) => m.clone(),
            TransferRepr::Blocked(blocks) => {
                let dim = self.dim();
                let mut entries = Vec::new();
                for block in blocks {
                    for (r, &gr) in block.states.iter().enumerate() {
                        for (c, &gc) in block.states.iter().enumerate() {
                            let v = block.matrix.get(r, c);
                            if !v.is_structural_zero() {
                                entries.push((gr, gc, v.clone()));
                            }
                        }
                    }
                }
                DenseMatrix::from_entries(dim, dim, &entries)
            }
        }
    }

    pub fn blocks(&self) -> Option<&[SectorBlock<K>]> {
        match &self.repr {
            TransferRepr::Blocked(b) => Some(b),
            TransferRepr::Dense(_) => None,
        }
    }
}

/// Max-abs entry of `[T(ω), T(ω')]`, computed per sector.
pub fn transfer_commutator<K: Scalar>(
    l1: &LaxOperator<K>,
    l2: &LaxOperator<K>,
    sites: usize,
    budget: Budget,
) -> Result<K> {
    let t1 = build_transfer(l1, sites, true, budget)?;
    let t2 = build_transfer(l2, sites, true, budget)?;
    let (b1, b2) = match (&t1.repr, &t2.repr) {
        (TransferRepr::Blocked(a), TransferRepr::Blocked(b)) => (a, b),
        _ => unreachable!("blocked build requested"),
    };
    let mut worst = K::zero();
    for (s1, s2) in b1.iter().zip(b2.iter()) {
        debug_assert_eq!(s1.magnetization, s2.magnetization);
        let res = commutator_residual(&s1.matrix, &s2.matrix)?;
        if res.abs_cmp(&worst) == core::cmp::Ordering::Greater {
            worst = res;
        }
    }
    Ok(worst)
}

/// Max-abs entry of `T` coupling different magnetization sectors; zero is
/// the `[T, S^z_total] = 0` conservation law.
pub fn sz_conservation_residual<K: Scalar>(t: &TransferMatrix<K>) -> K {
    let dense = t.to_dense();
    let mut worst = K::zero();
    for r in 0..dense.rows() {
        let mr = magnetization(r, t.sites);
        for c in 0..dense.cols() {
            if mr != magnetization(c, t.sites) {
                let v = dense.get(r, c);
                if v.abs_cmp(&worst) == core::cmp::Ordering::Greater {
                    worst = v.clone();
                }
            }
        }
    }
    worst
}
