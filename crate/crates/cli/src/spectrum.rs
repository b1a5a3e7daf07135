//! Simultaneous-spectrum verification: a commuting transfer family must be
//! diagonalizable in a common eigenbasis, which is checked by
//! eigendecomposing a random linear combination and measuring how far it
//! takes each family member from diagonal form.

use anyhow::{anyhow, bail, Result};
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Inverse, SVD};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use nineteen_vertex_core::lax::LaxOperator;
use nineteen_vertex_core::sample::SplitMix64;
use nineteen_vertex_core::transfer::{build_transfer, Budget, TransferMatrix};

use crate::floatops::real_array;

type C64 = Complex<f64>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectorSpectrum {
    pub magnetization: i64,
    pub dimension: usize,
    /// Eigenvalues `[re, im]` of each family member in the common basis
    /// ordering.
    pub eigenvalues: Vec<Vec<[f64; 2]>>,
    pub max_offdiagonal: f64,
    pub basis_condition: f64,
    /// Set when the combination looked numerically non-diagonalizable;
    /// such sectors are reported, not failed.
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumOutcome {
    pub sites: usize,
    pub points: usize,
    pub sectors: Vec<SectorSpectrum>,
    pub max_offdiagonal: f64,
    pub flagged_sectors: usize,
}

const CONDITION_FLAG: f64 = 1e12;

/// Runs the common-eigenbasis check for a family of float transfer
/// matrices built from the given transition operators.
pub fn simultaneous_spectrum(
    laxes: &[LaxOperator<C64>],
    sites: usize,
    seed: u64,
    budget: Budget,
) -> Result<SpectrumOutcome> {
    if laxes.is_empty() {
        bail!("spectrum check needs at least one point");
    }
    let transfers: Vec<TransferMatrix<C64>> = laxes
        .iter()
        .map(|l| build_transfer(l, sites, true, budget).map_err(|e| anyhow!(e.to_string())))
        .collect::<Result<_>>()?;

    let mut rng = SplitMix64::new(seed ^ 0x5EC7_0B1A);
    let mut sectors_out = Vec::new();
    let mut max_off = 0.0f64;
    let mut flagged = 0usize;

    let first_blocks = transfers[0].blocks().expect("blocked transfer");
    for (si, sector) in first_blocks.iter().enumerate() {
        let dim = sector.states.len();
        let members: Vec<Array2<f64>> = transfers
            .iter()
            .map(|t| real_array(&t.blocks().expect("blocked")[si].matrix))
            .collect::<Result<_>>()?;
        // random positive coefficients keep degenerate-eigenvalue
        // collisions measure-zero
        let combo = members
            .iter()
            .fold(Array2::<f64>::zeros((dim, dim)), |acc, m| {
                let c = 0.5 + (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                acc + &(m * c)
            });
        let combo_c: Array2<C64> = combo.mapv(|x| C64::new(x, 0.0));
        let (_, vectors) = combo_c
            .eig()
            .map_err(|e| anyhow!("eigendecomposition failed: {e}"))?;
        let cond = condition_estimate(&vectors)?;
        let sector_flagged = !cond.is_finite() || cond > CONDITION_FLAG;
        if sector_flagged {
            flagged += 1;
        }
        let vinv = vectors
            .inv()
            .map_err(|e| anyhow!("eigenbasis not invertible: {e}"))?;

        let mut eigenvalues = Vec::with_capacity(members.len());
        let mut sector_off = 0.0f64;
        for m in &members {
            let mc: Array2<C64> = m.mapv(|x| C64::new(x, 0.0));
            let d = vinv.dot(&mc).dot(&vectors);
            let scale = d.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
            let mut off = 0.0f64;
            let mut diag: Vec<[f64; 2]> = Vec::with_capacity(dim);
            for r in 0..dim {
                for c in 0..dim {
                    if r == c {
                        diag.push([d[(r, c)].re, d[(r, c)].im]);
                    } else {
                        off = off.max(d[(r, c)].norm() / scale);
                    }
                }
            }
            sector_off = sector_off.max(off);
            eigenvalues.push(diag);
        }
        if !sector_flagged {
            max_off = max_off.max(sector_off);
        }
        sectors_out.push(SectorSpectrum {
            magnetization: sector.magnetization,
            dimension: dim,
            eigenvalues,
            max_offdiagonal: sector_off,
            basis_condition: cond,
            flagged: sector_flagged,
        });
    }
    Ok(SpectrumOutcome {
        sites,
        points: laxes.len(),
        sectors: sectors_out,
        max_offdiagonal: max_off,
        flagged_sectors: flagged,
    })
}

fn condition_estimate(v: &Array2<C64>) -> Result<f64> {
    if v.nrows() <= 1 {
        return Ok(1.0);
    }
    let (_, sv, _) = v
        .svd(false, false)
        .map_err(|e| anyhow!("singular values failed: {e}"))?;
    let svals: Array1<f64> = sv;
    let smax = svals.iter().cloned().fold(0.0f64, f64::max);
    let smin = svals.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    })
}
