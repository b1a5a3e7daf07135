//! Defining polynomials of the weight variety and the divisor system.
//!
//! The fourteen Boltzmann weights sit on a degree-seven threefold in `CP^4`
//! cut out by [`threefold`]. Its section by `c- = c+` is the degree-seven
//! surface [`surface_s`], birational to the quartic [`surface_s1`]. The
//! degree-five hypersurface [`hypersurface5`] is an independent printed form
//! of the same constraint and is kept as redundancy against transcription
//! slips. [`divisor_ratios`] evaluates the ten constant ratios that carve the
//! variety out of the functional relations.

use alloc::vec::Vec;

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::scalar::{sq, Scalar};
use crate::weights::WeightSet;

/// `phi1 = c+^2 - b+ bbar+`; quadric factor of the threefold.
pub fn phi1<K: Scalar>(b_plus: &K, bbar_plus: &K, c_plus: &K) -> K {
    sq(c_plus) - b_plus.clone() * bbar_plus.clone()
}

/// `phi2 = Λ2+ a+ + Λ1+ bbar+`; linear factor of the threefold.
pub fn phi2<K: Scalar>(cpl: &Couplings<K>, a_plus: &K, bbar_plus: &K) -> K {
    cpl.lambda2_plus.clone() * a_plus.clone() + cpl.lambda1_plus.clone() * bbar_plus.clone()
}

/// `psi1 = -a+ c-^2 + Λ2+ phi2 c+^2`; numerator of the `b+` chart formula.
pub fn psi1<K: Scalar>(
    cpl: &Couplings<K>,
    a_plus: &K,
    bbar_plus: &K,
    c_plus: &K,
    cfrak_minus: &K,
) -> K {
    -(a_plus.clone() * sq(cfrak_minus))
        + cpl.lambda2_plus.clone() * phi2(cpl, a_plus, bbar_plus) * sq(c_plus)
}

/// `psi2 = Λ1- Λ2+ a+^2 + (2Λ2+^2 - 1) a+ bbar+ + Λ1+ Λ2+ bbar+^2`.
pub fn psi2<K: Scalar>(cpl: &Couplings<K>, a_plus: &K, bbar_plus: &K) -> K {
    let l2p2 = sq(&cpl.lambda2_plus);
    cpl.lambda1_minus.clone() * cpl.lambda2_plus.clone() * sq(a_plus)
        + (K::from_int(2) * l2p2 - K::one()) * a_plus.clone() * bbar_plus.clone()
        + cpl.lambda1_plus.clone() * cpl.lambda2_plus.clone() * sq(bbar_plus)
}

/// The degree-seven threefold in coordinates `[a+ : b+ : bbar+ : c+ : c-]`;
/// zero iff the point lies on the weight variety.
pub fn threefold<K: Scalar>(cpl: &Couplings<K>, p: &[K; 5]) -> K {
    let [a, b, bb, c, cm] = p;
    let f1 = phi1(b, bb, c);
    let f2 = phi2(cpl, a, bb);
    let l2p = &cpl.lambda2_plus;
    let bracket = l2p.clone() * f1.clone() * f2.clone()
        - cpl.lambda1_minus.clone() * l2p.clone() * sq(a) * b.clone()
        - (sq(l2p) - K::one()) * a.clone() * b.clone() * bb.clone();
    sq(&f1) * bracket - sq(a) * a.clone() * sq(cm) * sq(&f2)
}

/// The cubic image of the threefold under the first desingularizing map.
pub fn cubic_t1<K: Scalar>(cpl: &Couplings<K>, p: &[K; 5]) -> K {
    let [a, b, bb, c, cm] = p;
    let l2p = &cpl.lambda2_plus;
    l2p.clone() * phi1(b, bb, c) * phi2(cpl, a, bb)
        - a.clone() * sq(cm)
        - cpl.lambda1_minus.clone() * l2p.clone() * sq(a) * b.clone()
        - (sq(l2p) - K::one()) * a.clone() * b.clone() * bb.clone()
}

/// The `c- = c+` section of the threefold: a degree-seven surface in `CP^3`
/// with coordinates `[a+ : b+ : bbar+ : c+]`.
pub fn surface_s<K: Scalar>(cpl: &Couplings<K>, p: &[K; 4]) -> K {
    let [a, b, bb, c] = p;
    threefold(
        cpl,
        &[a.clone(), b.clone(), bb.clone(), c.clone(), c.clone()],
    )
}

/// The quartic surface birational to [`surface_s`], in coordinates
/// `[a+ : frak_b+ : bbar+ : c+]`.
pub fn surface_s1<K: Scalar>(cpl: &Couplings<K>, p: &[K; 4]) -> K {
    let [a, b, bb, c] = p;
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let l2p2 = sq(l2p);
    l1m.clone()
        * l2p.clone()
        * (l2p.clone() * sq(a) - b.clone() * c.clone())
        * a.clone()
        * c.clone()
        + l2p.clone()
            * (l1m.clone() * l1p.clone() + K::from_int(2) * l2p2.clone() - K::one())
            * sq(a)
            * bb.clone()
            * c.clone()
        + (K::one() - l2p2.clone()) * b.clone() * bb.clone() * sq(c)
        + l1p.clone() * (K::from_int(3) * l2p2 - K::one()) * a.clone() * sq(bb) * c.clone()
        + sq(l1p) * l2p.clone() * sq(bb) * bb.clone() * c.clone()
        - sq(b) * b.clone() * bb.clone()
}

/// The degree-five hypersurface relating the seven weights
/// `a±, b±, bbar+, c±`; an independent printed form of the variety
/// constraint. Arguments: `[a+, a-, b+, b-, bbar+, c+, c-]`.
pub fn hypersurface5<K: Scalar>(cpl: &Couplings<K>, w: &[K; 7]) -> K {
    let [ap, am, bp, bm, bbp, cp, cm] = w;
    let one = K::one();
    let u =
        (one.clone() - cpl.lambda2_minus.clone() * cpl.lambda3_minus.clone()) * am.clone() * sq(bm)
            + cpl.lambda1_minus.clone() * cpl.lambda3_minus.clone() * bm.clone() * sq(cm)
            - cpl.lambda1_minus.clone() * cpl.lambda2_minus.clone() * sq(am) * bbp.clone();
    let v =
        cpl.lambda3_minus.clone() * sq(bm) + cpl.lambda1_minus.clone() * am.clone() * bbp.clone();
    sq(&cpl.lambda1_plus) * u.clone() * ap.clone() * bbp.clone()
        + cpl.lambda1_plus.clone() * cpl.lambda2_plus.clone() * u * sq(ap)
        + cpl.lambda1_plus.clone()
            * cpl.lambda1_minus.clone()
            * cpl.lambda3_plus.clone()
            * v.clone()
            * (bp.clone() * bbp.clone() - sq(cp))
            * bp.clone()
        + cpl.lambda1_minus.clone()
            * (cpl.lambda2_plus.clone() * cpl.lambda3_plus.clone() - one)
            * v
            * ap.clone()
            * sq(bp)
}

/// Evaluates [`hypersurface5`] on the relevant fragment of a weight set.
pub fn hypersurface5_on_weights<K: Scalar>(cpl: &Couplings<K>, w: &WeightSet<K>) -> K {
    hypersurface5(
        cpl,
        &[
            w.a_plus.clone(),
            w.a_minus.clone(),
            w.b_plus.clone(),
            w.b_minus.clone(),
            w.bbar_plus.clone(),
            w.c_plus.clone(),
            w.c_minus.clone(),
        ],
    )
}

/// The auxiliary expression equal to `c-^2` on the threefold; eliminating
/// even powers of `c-` through it reduces every residual relation to zero.
pub fn aux_cminus_sq<K: Scalar>(
    cpl: &Couplings<K>,
    a_plus: &K,
    b_plus: &K,
    bbar_plus: &K,
    c_plus: &K,
) -> Result<K> {
    let f2 = phi2(cpl, a_plus, bbar_plus);
    let mut vanished = Vec::new();
    if a_plus.is_zero() {
        vanished.push("a_plus");
    }
    if f2.is_zero() {
        vanished.push("phi2");
    }
    if !vanished.is_empty() {
        return Err(Error::VanishingDenominator {
            context: "aux_cminus_sq",
            factors: vanished,
        });
    }
    let l1p = &cpl.lambda1_plus;
    let l2p = &cpl.lambda2_plus;
    let l2p2 = sq(l2p);
    let f1 = phi1(b_plus, bbar_plus, c_plus);
    let bracket = (l2p2.clone() - sq(&l2p2) - K::one()) * sq(a_plus) * b_plus.clone()
        + l1p.clone() * l2p2.clone() * f1.clone() * f2.clone()
        + l1p.clone()
            * l2p.clone()
            * (K::one() - l2p2)
            * a_plus.clone()
            * b_plus.clone()
            * bbar_plus.clone();
    let den = l1p.clone() * l2p.clone() * sq(a_plus) * a_plus.clone() * sq(&f2);
    (bracket * sq(&f1)).try_div(&den)
}

/// Outcome of one divisor-ratio evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum DivisorStatus {
    /// Ratio evaluated and equals its coupling.
    Match,
    /// Ratio evaluated and differs from its coupling.
    Mismatch,
    /// Denominator vanished at this point; the ratio is skipped, not failed.
    Skipped,
}

/// One of the ten divisor ratios held constant along the variety.
#[derive(Debug, Clone)]
pub struct DivisorCheck<K> {
    pub name: &'static str,
    pub value: Option<K>,
    pub expected: K,
}

impl<K: Scalar> DivisorCheck<K> {
    pub fn status(&self) -> DivisorStatus {
        match &self.value {
            None => DivisorStatus::Skipped,
            Some(v) => {
                if (v.clone() - self.expected.clone()).is_zero() {
                    DivisorStatus::Match
                } else {
                    DivisorStatus::Mismatch
                }
            }
        }
    }
}

fn ratio<K: Scalar>(name: &'static str, num: K, den: K, expected: &K) -> DivisorCheck<K> {
    DivisorCheck {
        name,
        value: if den.is_zero() {
            None
        } else {
            num.try_div(&den).ok()
        },
        expected: expected.clone(),
    }
}

/// Evaluates all ten divisor ratios of a weight set against their couplings.
#[allow(clippy::vec_init_then_push)]
pub fn divisor_ratios<K: Scalar>(w: &WeightSet<K>, cpl: &Couplings<K>) -> Vec<DivisorCheck<K>> {
    let mut out = Vec::with_capacity(10);
    // (b±^2 - a± f±) / (c± d±) = Λ1±
    out.push(ratio(
        "lambda1_plus",
        sq(&w.b_plus) - w.a_plus.clone() * w.f_plus.clone(),
        w.c_plus.clone() * w.d_plus.clone(),
        &cpl.lambda1_plus,
    ));
    out.push(ratio(
        "lambda1_minus",
        sq(&w.b_minus) - w.a_minus.clone() * w.f_minus.clone(),
        w.c_minus.clone() * w.d_minus.clone(),
        &cpl.lambda1_minus,
    ));
    // (b± c± - Λ1± bbar± d±) / (a± d±) = Λ2±
    out.push(ratio(
        "lambda2_plus",
        w.b_plus.clone() * w.c_plus.clone()
            - cpl.lambda1_plus.clone() * w.bbar_plus.clone() * w.d_plus.clone(),
        w.a_plus.clone() * w.d_plus.clone(),
        &cpl.lambda2_plus,
    ));
    out.push(ratio(
        "lambda2_minus",
        w.b_minus.clone() * w.c_minus.clone()
            - cpl.lambda1_minus.clone() * w.bbar_minus.clone() * w.d_minus.clone(),
        w.a_minus.clone() * w.d_minus.clone(),
        &cpl.lambda2_minus,
    ));
    // (b± d± - Λ1± bbar∓ c±) / (c± f±) = Λ3±
    out.push(ratio(
        "lambda3_plus",
        w.b_plus.clone() * w.d_plus.clone()
            - cpl.lambda1_plus.clone() * w.bbar_minus.clone() * w.c_plus.clone(),
        w.c_plus.clone() * w.f_plus.clone(),
        &cpl.lambda3_plus,
    ));
    out.push(ratio(
        "lambda3_minus",
        w.b_minus.clone() * w.d_minus.clone()
            - cpl.lambda1_minus.clone() * w.bbar_plus.clone() * w.c_minus.clone(),
        w.c_minus.clone() * w.f_minus.clone(),
        &cpl.lambda3_minus,
    ));
    // c+ d- / (h bbar+) = Λ4+ and h bbar- / (c- d+) = Λ4-
    out.push(ratio(
        "lambda4_plus",
        w.c_plus.clone() * w.d_minus.clone(),
        w.h.clone() * w.bbar_plus.clone(),
        &cpl.lambda4_plus,
    ));
    out.push(ratio(
        "lambda4_minus",
        w.h.clone() * w.bbar_minus.clone(),
        w.c_minus.clone() * w.d_plus.clone(),
        &cpl.lambda4_minus,
    ));
    // (Λ1± c± d± g + a± d±^2 + c±^2 f±) / (b± c± d±) = Λ5±
    out.push(ratio(
        "lambda5_plus",
        cpl.lambda1_plus.clone() * w.c_plus.clone() * w.d_plus.clone() * w.g.clone()
            + w.a_plus.clone() * sq(&w.d_plus)
            + sq(&w.c_plus) * w.f_plus.clone(),
        w.b_plus.clone() * w.c_plus.clone() * w.d_plus.clone(),
        &cpl.lambda5_plus,
    ));
    out.push(ratio(
        "lambda5_minus",
        cpl.lambda1_minus.clone() * w.c_minus.clone() * w.d_minus.clone() * w.g.clone()
            + w.a_minus.clone() * sq(&w.d_minus)
            + sq(&w.c_minus) * w.f_minus.clone(),
        w.b_minus.clone() * w.c_minus.clone() * w.d_minus.clone(),
        &cpl.lambda5_minus,
    ));
    out
}
