//! The fourteen Boltzmann weights and the three coordinate charts that
//! produce them.
//!
//! Charts return unnormalized (projective) weight sets; comparisons between
//! routes always use projective equality. Chart formulas are degree-one
//! homogeneous in the chart coordinates, so rescaling a point rescales the
//! whole weight set.

use alloc::vec;
use alloc::vec::Vec;

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::projective::projective_eq;
use crate::scalar::{sq, Scalar};
use crate::variety::{phi1, phi2, psi1, psi2, surface_s1, threefold};

/// Point of the parameterized chart `[a+ : bbar+ : c+ : cfrak-] ∈ CP^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint<K> {
    pub coords: [K; 4],
}

/// Point of `CP^4` carrying the threefold coordinates
/// `[a+ : b+ : bbar+ : c+ : c-]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreefoldPoint<K> {
    pub coords: [K; 5],
}

/// Point of the quartic-surface chart `[a+ : frak_b+ : bbar+ : c+] ∈ CP^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct K3Point<K> {
    pub coords: [K; 4],
}

impl<K: Scalar> SpectralPoint<K> {
    pub fn new(coords: [K; 4]) -> Result<Self> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroProjectiveVector);
        }
        Ok(SpectralPoint { coords })
    }

    /// The regular point: the transition operator there is the permutator.
    pub fn regular_point(cpl: &Couplings<K>) -> Self {
        SpectralPoint {
            coords: [K::one(), K::zero(), K::one(), cpl.lambda2_plus.clone()],
        }
    }

    /// Nonvanishing of every chart denominator: `a+`, `phi2`, `psi2`.
    pub fn chart_validity(&self, cpl: &Couplings<K>) -> Result<()> {
        let [a, bb, _, _] = &self.coords;
        let mut vanished = Vec::new();
        if a.is_zero() {
            vanished.push("a_plus");
        }
        if phi2(cpl, a, bb).is_zero() {
            vanished.push("phi2");
        }
        if psi2(cpl, a, bb).is_zero() {
            vanished.push("psi2");
        }
        if vanished.is_empty() {
            Ok(())
        } else {
            Err(Error::VanishingDenominator {
                context: "spectral chart",
                factors: vanished,
            })
        }
    }
}

impl<K: Scalar> ThreefoldPoint<K> {
    /// Accepts only points on the threefold (exact zero, or within the
    /// float backend's tolerance).
    pub fn new(coords: [K; 5], cpl: &Couplings<K>) -> Result<Self> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroProjectiveVector);
        }
        let residual = threefold(cpl, &coords);
        if !residual.is_zero() {
            return Err(Error::OffVariety {
                variety: "threefold",
                residual: alloc::format!("{residual}"),
            });
        }
        Ok(ThreefoldPoint { coords })
    }
}

impl<K: Scalar> K3Point<K> {
    /// Accepts only points on the quartic surface.
    pub fn new(coords: [K; 4], cpl: &Couplings<K>) -> Result<Self> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroProjectiveVector);
        }
        let residual = surface_s1(cpl, &coords);
        if !residual.is_zero() {
            return Err(Error::OffVariety {
                variety: "surface_s1",
                residual: alloc::format!("{residual}"),
            });
        }
        Ok(K3Point { coords })
    }
}

/// The fourteen Boltzmann weights of one vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet<K> {
    pub a_plus: K,
    pub a_minus: K,
    pub b_plus: K,
    pub b_minus: K,
    pub bbar_plus: K,
    pub bbar_minus: K,
    pub c_plus: K,
    pub c_minus: K,
    pub d_plus: K,
    pub d_minus: K,
    pub f_plus: K,
    pub f_minus: K,
    pub g: K,
    pub h: K,
}

pub const WEIGHT_NAMES: [&str; 14] = [
    "a_plus",
    "a_minus",
    "b_plus",
    "b_minus",
    "bbar_plus",
    "bbar_minus",
    "c_plus",
    "c_minus",
    "d_plus",
    "d_minus",
    "f_plus",
    "f_minus",
    "g",
    "h",
];

impl<K: Scalar> WeightSet<K> {
    pub fn to_vec(&self) -> Vec<K> {
        vec![
            self.a_plus.clone(),
            self.a_minus.clone(),
            self.b_plus.clone(),
            self.b_minus.clone(),
            self.bbar_plus.clone(),
            self.bbar_minus.clone(),
            self.c_plus.clone(),
            self.c_minus.clone(),
            self.d_plus.clone(),
            self.d_minus.clone(),
            self.f_plus.clone(),
            self.f_minus.clone(),
            self.g.clone(),
            self.h.clone(),
        ]
    }

    /// Equality as points of `CP^13`.
    pub fn projectively_equal(&self, other: &Self) -> Result<bool> {
        projective_eq(&self.to_vec(), &other.to_vec())
    }

    /// Maps every weight into another scalar backend.
    pub fn convert<J: Scalar>(&self, mut f: impl FnMut(&K) -> J) -> WeightSet<J> {
        WeightSet {
            a_plus: f(&self.a_plus),
            a_minus: f(&self.a_minus),
            b_plus: f(&self.b_plus),
            b_minus: f(&self.b_minus),
            bbar_plus: f(&self.bbar_plus),
            bbar_minus: f(&self.bbar_minus),
            c_plus: f(&self.c_plus),
            c_minus: f(&self.c_minus),
            d_plus: f(&self.d_plus),
            d_minus: f(&self.d_minus),
            f_plus: f(&self.f_plus),
            f_minus: f(&self.f_minus),
            g: f(&self.g),
            h: f(&self.h),
        }
    }

    /// The five threefold coordinates `[a+, b+, bbar+, c+, c-]`.
    pub fn threefold_coords(&self) -> [K; 5] {
        [
            self.a_plus.clone(),
            self.b_plus.clone(),
            self.bbar_plus.clone(),
            self.c_plus.clone(),
            self.c_minus.clone(),
        ]
    }

    /// `b+ b- = bbar+ bbar-` holds on every weight set of the variety.
    pub fn footnote_identity_residual(&self) -> K {
        self.b_plus.clone() * self.b_minus.clone()
            - self.bbar_plus.clone() * self.bbar_minus.clone()
    }

    /// True when some divisor-ratio denominator vanishes (as at the
    /// permutator point). Such sets are excluded from sampling campaigns;
    /// the chart formulas assume generic points.
    pub fn is_degenerate(&self) -> bool {
        [
            self.c_plus.clone() * self.d_plus.clone(),
            self.c_minus.clone() * self.d_minus.clone(),
            self.a_plus.clone() * self.d_plus.clone(),
            self.a_minus.clone() * self.d_minus.clone(),
            self.c_plus.clone() * self.f_plus.clone(),
            self.c_minus.clone() * self.f_minus.clone(),
            self.h.clone() * self.bbar_plus.clone(),
            self.c_minus.clone() * self.d_plus.clone(),
            self.b_plus.clone(),
            self.b_minus.clone(),
        ]
        .iter()
        .any(Scalar::is_zero)
    }
}

pub(crate) fn guard(context: &'static str, factors: &[(&'static str, bool)]) -> Result<()> {
    let vanished: Vec<&'static str> = factors
        .iter()
        .filter_map(|&(name, zero)| if zero { Some(name) } else { None })
        .collect();
    if vanished.is_empty() {
        Ok(())
    } else {
        Err(Error::VanishingDenominator {
            context,
            factors: vanished,
        })
    }
}

/// Weights from a point of the parameterized chart.
pub fn weights_from_spectral<K: Scalar>(
    p: &SpectralPoint<K>,
    cpl: &Couplings<K>,
) -> Result<WeightSet<K>> {
    p.chart_validity(cpl)?;
    let [a, bb, c, cf] = &p.coords;
    let f2 = phi2(cpl, a, bb);
    let p2 = psi2(cpl, a, bb);
    let p1 = psi1(cpl, a, bb, c, cf);
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let l2p2 = sq(l2p);

    // all denominators are monomials in a+, phi2, psi2 (checked above)
    let a_f2_p2 = a.clone() * f2.clone() * p2.clone();
    let cc_p2_minus_bb_p1 = sq(c) * p2.clone() - bb.clone() * p1.clone();

    let b_plus = p1.try_div(&p2)?;
    let c_minus = (cf.clone() * cc_p2_minus_bb_p1.clone()).try_div(&a_f2_p2)?;
    let d_plus = (c.clone() * p1.clone()).try_div(&(p2.clone() * f2.clone()))?;
    let d_minus = (cf.clone() * bb.clone()).try_div(&(l2p.clone() * f2.clone()))?;
    let h = (cf.clone() * c.clone()).try_div(&f2)?;
    let f_plus = (p1.clone() * (f2.clone() * p1.clone() - l1p.clone() * sq(c) * p2.clone()))
        .try_div(&(a_f2_p2.clone() * p2.clone()))?;
    let b_minus = (bb.clone()
        * (l1m.clone() * l2p.clone() * a.clone() * sq(c)
            + (sq(cf) + (l2p2.clone() - K::one()) * sq(c)) * bb.clone()))
    .try_div(&(l2p.clone() * f2.clone() * p2.clone()))?;
    let bbar_minus = (p1.clone() * cc_p2_minus_bb_p1.clone())
        .try_div(&(l2p.clone() * a_f2_p2.clone() * p2.clone()))?;
    let f_minus = -(bb.clone()
        * (l1m.clone() * l2p.clone() * a.clone() + (l2p2.clone() - K::one()) * bb.clone()))
    .try_div(&(l2p.clone() * f2.clone()))?;
    let a_minus = (cc_p2_minus_bb_p1
        * (l1m.clone() * l2p.clone() * a.clone() * sq(cf)
            + (sq(&(l2p.clone() * cf.clone())) - sq(c)) * bb.clone()))
    .try_div(&(l2p.clone() * a_f2_p2.clone() * p2.clone()))?;
    let g = sq(c).try_div(a)?
        + (bb.clone() * p1.clone() * (a.clone() - l2p.clone() * f2.clone()))
            .try_div(&(l2p.clone() * a_f2_p2))?;

    Ok(WeightSet {
        a_plus: a.clone(),
        a_minus,
        b_plus,
        b_minus,
        bbar_plus: bb.clone(),
        bbar_minus,
        c_plus: c.clone(),
        c_minus,
        d_plus,
        d_minus,
        f_plus,
        f_minus,
        g,
        h,
    })
}

/// Weights from a point on the degree-seven threefold.
pub fn weights_from_threefold<K: Scalar>(
    p: &ThreefoldPoint<K>,
    cpl: &Couplings<K>,
) -> Result<WeightSet<K>> {
    let [a, b, bb, c, cm] = &p.coords;
    let f1 = phi1(b, bb, c);
    let f2 = phi2(cpl, a, bb);
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    // pole of f-:
    let fm_pole = l1m.clone() * a.clone() * b.clone() - l2p.clone() * f1.clone();
    guard(
        "threefold chart",
        &[
            ("a_plus", a.is_zero()),
            ("phi1", f1.is_zero()),
            ("phi2", f2.is_zero()),
            ("fminus_pole", fm_pole.is_zero()),
        ],
    )?;

    let d_plus = (b.clone() * c.clone()).try_div(&f2)?;
    let f_plus = (b.clone() * (l2p.clone() * a.clone() * b.clone() - l1p.clone() * f1.clone()))
        .try_div(&(a.clone() * f2.clone()))?;
    let b_minus = (bb.clone() * f1.clone()).try_div(&(l2p.clone() * a.clone() * f2.clone()))?;
    let bbar_minus = (b.clone() * f1.clone()).try_div(&(l2p.clone() * a.clone() * f2.clone()))?;
    let g = (a.clone() * b.clone() * bb.clone() + l2p.clone() * f1.clone() * f2.clone())
        .try_div(&(l2p.clone() * a.clone() * f2.clone()))?;
    let h = (a.clone() * c.clone() * cm.clone()).try_div(&f1)?;
    let a_minus = (f1.clone() * (l2p.clone() * f1.clone() - l1m.clone() * a.clone() * b.clone()))
        .try_div(&(sq(a) * f2.clone()))?;
    let d_minus = (a.clone() * bb.clone() * cm.clone()).try_div(&(l2p.clone() * f1.clone()))?;
    let f_minus = (bb.clone()
        * (l1m.clone() * l2p.clone() * sq(a) * a.clone() * sq(cm) * sq(&f2)
            - bb.clone() * sq(&f1) * f1.clone()))
    .try_div(&(sq(l2p) * f2.clone() * sq(&f1) * fm_pole.clone()))?;

    Ok(WeightSet {
        a_plus: a.clone(),
        a_minus,
        b_plus: b.clone(),
        b_minus,
        bbar_plus: bb.clone(),
        bbar_minus,
        c_plus: c.clone(),
        c_minus: cm.clone(),
        d_plus,
        d_minus,
        f_plus,
        f_minus,
        g,
        h,
    })
}

/// Weights from a point on the quartic surface; the output always has
/// `c- = c+` exactly.
pub fn weights_from_k3<K: Scalar>(p: &K3Point<K>, cpl: &Couplings<K>) -> Result<WeightSet<K>> {
    let [a, fb, bb, c] = &p.coords;
    let f2 = phi2(cpl, a, bb);
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let am_num_factor = (l2p.clone() * bb.clone() + l1m.clone() * a.clone()) * f2.clone()
        - l1m.clone() * fb.clone() * c.clone();
    guard(
        "k3 chart",
        &[
            ("frak_b_plus", fb.is_zero()),
            ("bbar_plus", bb.is_zero()),
            ("c_plus", c.is_zero()),
            ("phi2", f2.is_zero()),
            ("fminus_pole", am_num_factor.is_zero()),
        ],
    )?;

    let lead = fb.clone() * c.clone() - a.clone() * f2.clone();
    let b_plus = (c.clone() * lead.clone()).try_div(&(fb.clone() * bb.clone()))?;
    let d_plus = (sq(c) * lead.clone()).try_div(&(fb.clone() * bb.clone() * f2.clone()))?;
    let b_minus = (bb.clone() * c.clone()).try_div(&(l2p.clone() * fb.clone()))?;
    let d_minus = (fb.clone() * bb.clone()).try_div(&(l2p.clone() * f2.clone()))?;
    let f_plus = (sq(c) * lead.clone() * (l2p.clone() * fb.clone() * c.clone() - sq(&f2)))
        .try_div(&(sq(&(fb.clone() * bb.clone())) * f2.clone()))?;
    let g = (c.clone() * (lead.clone() + l2p.clone() * sq(&f2)))
        .try_div(&(l2p.clone() * fb.clone() * f2.clone()))?;
    let h = (fb.clone() * c.clone()).try_div(&f2)?;
    let a_minus = (sq(c) * am_num_factor.clone()).try_div(&(sq(fb) * bb.clone()))?;
    let bbar_minus = (sq(c) * lead).try_div(&(l2p.clone() * sq(fb) * bb.clone()))?;
    let f_minus = (sq(bb)
        * (bb.clone() * c.clone() * f2.clone() - l1m.clone() * l2p.clone() * sq(fb) * fb.clone()))
    .try_div(&(sq(l2p) * c.clone() * f2.clone() * am_num_factor))?;

    Ok(WeightSet {
        a_plus: a.clone(),
        a_minus,
        b_plus,
        b_minus,
        bbar_plus: bb.clone(),
        bbar_minus,
        c_plus: c.clone(),
        c_minus: c.clone(),
        d_plus,
        d_minus,
        f_plus,
        f_minus,
        g,
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use crate::variety::{divisor_ratios, hypersurface5_on_weights, DivisorStatus};

    fn r(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    fn couplings_12() -> Couplings<Rat> {
        Couplings::derive(r(1, 1), r(2, 1)).unwrap()
    }

    fn sample_point() -> SpectralPoint<Rat> {
        SpectralPoint::new([r(1, 1), r(1, 2), r(2, 1), r(1, 3)]).unwrap()
    }

    #[test]
    fn regular_point_weights_are_permutator_like() {
        let cpl = couplings_12();
        let w0 = weights_from_spectral(&SpectralPoint::regular_point(&cpl), &cpl).unwrap();
        for one in [
            &w0.a_plus,
            &w0.a_minus,
            &w0.c_plus,
            &w0.c_minus,
            &w0.g,
            &w0.h,
        ] {
            assert_eq!(one, &Rat::from_int(1));
        }
        for zero in [
            &w0.b_plus,
            &w0.b_minus,
            &w0.bbar_plus,
            &w0.bbar_minus,
            &w0.d_plus,
            &w0.d_minus,
            &w0.f_plus,
            &w0.f_minus,
        ] {
            assert!(zero.is_zero());
        }
        assert!(w0.is_degenerate());
    }

    #[test]
    fn chart_point_lies_on_threefold_and_hypersurface() {
        let cpl = couplings_12();
        let w = weights_from_spectral(&sample_point(), &cpl).unwrap();
        assert!(threefold(&cpl, &w.threefold_coords()).is_zero());
        assert!(hypersurface5_on_weights(&cpl, &w).is_zero());
        assert!(w.footnote_identity_residual().is_zero());
        assert!(!w.is_degenerate());
    }

    #[test]
    fn chart_routes_agree_projectively() {
        let cpl = couplings_12();
        let w = weights_from_spectral(&sample_point(), &cpl).unwrap();
        let tp = ThreefoldPoint::new(w.threefold_coords(), &cpl).unwrap();
        let w2 = weights_from_threefold(&tp, &cpl).unwrap();
        assert!(w.projectively_equal(&w2).unwrap());
    }

    #[test]
    fn divisor_ratios_all_match_on_chart_points() {
        let cpl = couplings_12();
        let w = weights_from_spectral(&sample_point(), &cpl).unwrap();
        for check in divisor_ratios(&w, &cpl) {
            assert_eq!(check.status(), DivisorStatus::Match, "{}", check.name);
        }
    }

    #[test]
    fn threefold_vertex_gives_the_permutator_weight_set() {
        let cpl = couplings_12();
        let vertex =
            ThreefoldPoint::new([r(1, 1), r(0, 1), r(0, 1), r(1, 1), r(1, 1)], &cpl).unwrap();
        let w = weights_from_threefold(&vertex, &cpl).unwrap();
        let w0 = weights_from_spectral(&SpectralPoint::regular_point(&cpl), &cpl).unwrap();
        assert_eq!(w, w0);
        assert!(hypersurface5_on_weights(&cpl, &w).is_zero());
    }

    #[test]
    fn divisor_ratios_skip_at_the_permutator_point() {
        let cpl = couplings_12();
        let w0 = weights_from_spectral(&SpectralPoint::regular_point(&cpl), &cpl).unwrap();
        let checks = divisor_ratios(&w0, &cpl);
        let skipped = checks
            .iter()
            .filter(|c| c.status() == DivisorStatus::Skipped)
            .count();
        assert!(skipped >= 8, "only {skipped} ratios skipped");
        assert!(checks.iter().all(|c| c.status() != DivisorStatus::Mismatch));
    }

    #[test]
    fn excluded_locus_is_a_named_error() {
        let cpl = couplings_12();
        // phi2 = 2 a+ + bbar+ = 0
        let p = SpectralPoint::new([r(1, 1), r(-2, 1), r(1, 1), r(1, 1)]).unwrap();
        match weights_from_spectral(&p, &cpl) {
            Err(Error::VanishingDenominator { factors, .. }) => {
                assert!(factors.contains(&"phi2"));
            }
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn off_variety_threefold_point_is_rejected() {
        let cpl = couplings_12();
        let coords = [r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1)];
        assert!(!threefold(&cpl, &coords).is_zero());
        assert!(matches!(
            ThreefoldPoint::new(coords, &cpl),
            Err(Error::OffVariety { .. })
        ));
    }

    #[test]
    fn threefold_vertex_point_is_on_variety() {
        // [1:0:0:1:1] satisfies T = 0 for any valid couplings
        for (l1, l2) in [(r(1, 1), r(2, 1)), (r(3, 2), r(5, 3)), (r(-2, 7), r(1, 5))] {
            let cpl = Couplings::derive(l1, l2).unwrap();
            let coords = [r(1, 1), r(0, 1), r(0, 1), r(1, 1), r(1, 1)];
            assert!(threefold(&cpl, &coords).is_zero());
        }
    }

    #[test]
    fn k3_weights_have_symmetric_c() {
        let cpl = couplings_12();
        // rational points of the quartic surface for couplings (1,2)
        for coords in [
            [r(1, 1), r(-2, 1), r(-6, 1), r(-6, 1)],
            [r(1, 1), r(-7, 4), r(-5, 4), r(49, 44)],
        ] {
            let pt = K3Point::new(coords, &cpl).unwrap();
            let w = weights_from_k3(&pt, &cpl).unwrap();
            assert_eq!(w.c_minus, w.c_plus);
            assert!(w.footnote_identity_residual().is_zero());
            assert!(threefold(&cpl, &w.threefold_coords()).is_zero());
        }
    }

    #[test]
    fn off_surface_k3_point_is_rejected() {
        let cpl = couplings_12();
        let coords = [r(1, 1), r(1, 1), r(1, 1), r(1, 1)];
        assert!(matches!(
            K3Point::new(coords, &cpl),
            Err(Error::OffVariety { .. })
        ));
    }
}
