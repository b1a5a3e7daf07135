//! Float fast paths: sector blocks as `f64` arrays with BLAS-grade matrix
//! products. Sampled weights are real rationals, so the float transfer
//! blocks are real; the conversion asserts that.

use anyhow::{ensure, Result};
use ndarray::Array2;
use num_complex::Complex;

use nineteen_vertex_core::matrix::DenseMatrix;
use nineteen_vertex_core::transfer::TransferMatrix;

pub fn real_array(m: &DenseMatrix<Complex<f64>>) -> Result<Array2<f64>> {
    let mut out = Array2::zeros((m.rows(), m.cols()));
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = m.get(r, c);
            ensure!(
                z.im.abs() < 1e-14 * (1.0 + z.re.abs()),
                "complex entry where a real one was expected"
            );
            out[(r, c)] = z.re;
        }
    }
    Ok(out)
}

pub fn max_abs(a: &Array2<f64>) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Per-sector relative commutator residual
/// `max |T1 T2 - T2 T1| / max(|T1 T2|, |T2 T1|, 1)`.
pub fn blocked_commutator_relative(
    t1: &TransferMatrix<Complex<f64>>,
    t2: &TransferMatrix<Complex<f64>>,
) -> Result<f64> {
    let b1 = t1.blocks().expect("blocked transfer");
    let b2 = t2.blocks().expect("blocked transfer");
    let mut worst = 0.0f64;
    for (s1, s2) in b1.iter().zip(b2.iter()) {
        let a = real_array(&s1.matrix)?;
        let b = real_array(&s2.matrix)?;
        let ab = a.dot(&b);
        let ba = b.dot(&a);
        let scale = max_abs(&ab).max(max_abs(&ba)).max(1.0);
        let resid = max_abs(&(&ab - &ba)) / scale;
        worst = worst.max(resid);
    }
    Ok(worst)
}

/// Relative commutator residual of two dense real matrices.
pub fn dense_commutator_relative(a: &Array2<f64>, b: &Array2<f64>) -> f64 {
    let ab = a.dot(b);
    let ba = b.dot(a);
    let scale = max_abs(&ab).max(max_abs(&ba)).max(1.0);
    max_abs(&(&ab - &ba)) / scale
}
