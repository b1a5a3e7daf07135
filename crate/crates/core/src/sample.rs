//! Deterministic sampling of chart points with rejection of the excluded
//! loci.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood's mixer), chosen for a
//! stable cross-platform stream from a single `u64` seed. Points are drawn
//! with small rational coordinates — numerators and denominators bounded —
//! and redrawn whenever any chart denominator vanishes or the induced
//! weight set is degenerate; the excluded sets are lower-dimensional, so
//! rejections are rare.

use num_bigint::BigInt;

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::scalar::{sq, QuadExt, Rat, Scalar};
use crate::variety::{phi1, surface_s1};
use crate::weights::{weights_from_k3, weights_from_spectral, K3Point, SpectralPoint, WeightSet};

const MAX_TRIES: u32 = 10_000;

/// SplitMix64: `z = (s += 0x9E3779B97F4A7C15); mix(z)`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` by rejection of the biased tail.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }
}

/// A rational with numerator in `[-bound, bound] \ {0}` and denominator in
/// `[1, bound]`.
pub fn small_rational(rng: &mut SplitMix64, bound: u32) -> Rat {
    let bound = bound.max(1) as u64;
    let num = loop {
        let n = rng.below(2 * bound + 1) as i64 - bound as i64;
        if n != 0 {
            break n;
        }
    };
    let den = rng.below(bound) as i64 + 1;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Outcome of a rejection-sampled draw: the point plus how many candidates
/// were skipped before it.
#[derive(Debug, Clone)]
pub struct Drawn<T> {
    pub value: T,
    pub skipped: u32,
}

/// Whether a spectral point is usable for identity campaigns: the chart is
/// defined, the induced weights are non-degenerate and `phi1` is nonzero
/// (the threefold-family R-matrix needs it).
pub fn spectral_point_is_generic(
    p: &SpectralPoint<Rat>,
    cpl: &Couplings<Rat>,
) -> Option<WeightSet<Rat>> {
    if p.chart_validity(cpl).is_err() {
        return None;
    }
    let w = weights_from_spectral(p, cpl).ok()?;
    if w.is_degenerate() {
        return None;
    }
    if phi1(&w.b_plus, &w.bbar_plus, &w.c_plus).is_zero() {
        return None;
    }
    Some(w)
}

/// Draws a generic spectral-chart point.
#[allow(clippy::explicit_counter_loop)]
pub fn sample_spectral(
    rng: &mut SplitMix64,
    cpl: &Couplings<Rat>,
    bound: u32,
) -> Result<Drawn<SpectralPoint<Rat>>> {
    let mut skipped = 0;
    for _ in 0..MAX_TRIES {
        let coords = [
            small_rational(rng, bound),
            small_rational(rng, bound),
            small_rational(rng, bound),
            small_rational(rng, bound),
        ];
        let p = SpectralPoint { coords };
        if spectral_point_is_generic(&p, cpl).is_some() {
            return Ok(Drawn { value: p, skipped });
        }
        skipped += 1;
    }
    Err(Error::InvalidConfig(alloc::format!(
        "no generic spectral point found in {MAX_TRIES} draws"
    )))
}

/// The quadratic `A c+^2 + B c+ + C` that the quartic surface imposes on
/// `c+` over a rational `(a+, frak_b+, bbar+)` slice, recovered by
/// evaluation at `c+ = 0, ±1`.
pub fn k3_cplus_quadratic(cpl: &Couplings<Rat>, a: &Rat, fb: &Rat, bb: &Rat) -> (Rat, Rat, Rat) {
    let at = |c: Rat| surface_s1(cpl, &[a.clone(), fb.clone(), bb.clone(), c]);
    let s0 = at(Rat::from_int(0));
    let s1 = at(Rat::from_int(1));
    let sm1 = at(Rat::from_int(-1));
    let half = Rat::from_ratio(1, 2);
    let a2 = half.clone() * (s1.clone() + sm1.clone()) - s0.clone();
    let a1 = half * (s1 - sm1);
    (a2, a1, s0)
}

/// Draws a quartic-surface point exactly, adjoining `sqrt` of the
/// discriminant when it is not a rational square. The returned point is
/// chart-valid for [`weights_from_k3`].
pub fn sample_k3_quadext(
    rng: &mut SplitMix64,
    cpl: &Couplings<Rat>,
    bound: u32,
) -> Result<Drawn<K3Point<QuadExt<Rat>>>> {
    type Q = QuadExt<Rat>;
    let cpl_ext = cpl.convert(|x| Q::base(x.clone()));
    let mut skipped = 0;
    for _ in 0..MAX_TRIES {
        let a = small_rational(rng, bound);
        let fb = small_rational(rng, bound);
        let bb = small_rational(rng, bound);
        let (qa, qb, qc) = k3_cplus_quadratic(cpl, &a, &fb, &bb);
        if qa.is_zero() {
            skipped += 1;
            continue;
        }
        let disc = sq(&qb) - Rat::from_int(4) * qa.clone() * qc;
        let two_a = Rat::from_int(2) * qa;
        let c_plus: Q = match disc.try_sqrt() {
            Ok(root) => Q::base((-qb + root).try_div(&two_a).expect("2A nonzero")),
            Err(_) => {
                let min = Q::sqrt_minpoly(disc);
                let r = Q::root(&min);
                (Q::base(-qb) + r) * Q::base(two_a.try_inv().expect("2A nonzero"))
            }
        };
        if c_plus.is_zero() {
            skipped += 1;
            continue;
        }
        let coords = [
            Q::base(a.clone()),
            Q::base(fb.clone()),
            Q::base(bb.clone()),
            c_plus,
        ];
        match K3Point::new(coords, &cpl_ext) {
            Ok(point) => {
                if weights_from_k3(&point, &cpl_ext).is_ok() {
                    return Ok(Drawn {
                        value: point,
                        skipped,
                    });
                }
                skipped += 1;
            }
            Err(_) => skipped += 1,
        }
    }
    Err(Error::InvalidConfig(alloc::format!(
        "no valid quartic-surface point found in {MAX_TRIES} draws"
    )))
}
