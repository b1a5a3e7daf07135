//! Birational maps between the weight varieties and their desingularized
//! models, with gradient certification of the singular points.
//!
//! * `phi`  : degree-seven threefold -> cubic threefold (same `CP^4`)
//! * `psi`  : `CP^3` -> cubic threefold (inverse is a projection)
//! * `sigma`: degree-seven surface -> quartic surface (same `CP^3`)
//!
//! Each map is defined away from the closed subsets where its denominator
//! factors vanish; domain errors name the vanishing factor.

use alloc::vec::Vec;

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::scalar::{sq, Jet, Scalar, C64};
use crate::variety::{cubic_t1, surface_s1};
pub use crate::variety::{phi1, phi2, psi1, psi2};
use crate::weights::{guard, ThreefoldPoint};

/// Membership in the singular locus of the degree-seven threefold:
/// `{phi1 = phi2 = 0} ∪ {a+ = 0} ∪ {c- = 0}`.
pub fn in_threefold_singular_locus<K: Scalar>(cpl: &Couplings<K>, p: &[K; 5]) -> bool {
    let [a, b, bb, c, cm] = p;
    a.is_zero() || cm.is_zero() || (phi1(b, bb, c).is_zero() && phi2(cpl, a, bb).is_zero())
}

/// Membership in the singular locus of the degree-seven surface: the two
/// non-coplanar lines `[a+ : 0 : bbar+ : 0]` and `[a+ : b+ : 0 : 0]`.
pub fn in_surface_singular_locus<K: Scalar>(p: &[K; 4]) -> bool {
    let [_, b, bb, c] = p;
    (b.is_zero() && c.is_zero()) || (bb.is_zero() && c.is_zero())
}

/// `phi`: rescales `c-` by `a+ phi2 / phi1`, landing on the cubic threefold.
pub fn map_phi<K: Scalar>(cpl: &Couplings<K>, p: &ThreefoldPoint<K>) -> Result<[K; 5]> {
    let [a, b, bb, c, cm] = &p.coords;
    let f1 = phi1(b, bb, c);
    guard(
        "map phi",
        &[
            ("phi1", f1.is_zero()),
            ("a_plus", a.is_zero()),
            ("c_minus", cm.is_zero()),
        ],
    )?;
    let f2 = phi2(cpl, a, bb);
    let new_cm = (a.clone() * cm.clone() * f2).try_div(&f1)?;
    Ok([a.clone(), b.clone(), bb.clone(), c.clone(), new_cm])
}

/// Inverse of `phi`; defined where `a+ phi2` is nonzero.
pub fn map_phi_inv<K: Scalar>(cpl: &Couplings<K>, q: &[K; 5]) -> Result<[K; 5]> {
    let [a, b, bb, c, cm] = q;
    let f2 = phi2(cpl, a, bb);
    guard(
        "map phi_inv",
        &[("a_plus", a.is_zero()), ("phi2", f2.is_zero())],
    )?;
    let f1 = phi1(b, bb, c);
    let new_cm = (cm.clone() * f1).try_div(&(a.clone() * f2))?;
    Ok([a.clone(), b.clone(), bb.clone(), c.clone(), new_cm])
}

/// `psi`: graphs `b+ = psi1/psi2` over `CP^3`, landing on the cubic
/// threefold. Returned in the division-free scaling `[a psi2 : psi1 :
/// bb psi2 : c psi2 : cm psi2]`.
pub fn map_psi<K: Scalar>(cpl: &Couplings<K>, q: &[K; 4]) -> Result<[K; 5]> {
    let [a, bb, c, cm] = q;
    let p2 = psi2(cpl, a, bb);
    guard("map psi", &[("psi2", p2.is_zero())])?;
    let p1 = psi1(cpl, a, bb, c, cm);
    Ok([
        a.clone() * p2.clone(),
        p1,
        bb.clone() * p2.clone(),
        c.clone() * p2.clone(),
        cm.clone() * p2,
    ])
}

/// Inverse of `psi`: the projection dropping `b+`. Rejects points whose
/// projection is the zero vector (as at the singular point `[0:1:0:0:0]`).
pub fn map_psi_inv<K: Scalar>(p: &[K; 5]) -> Result<[K; 4]> {
    let [a, _, bb, c, cm] = p;
    let out = [a.clone(), bb.clone(), c.clone(), cm.clone()];
    if out.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroProjectiveVector);
    }
    Ok(out)
}

/// `sigma`: replaces `b+` by `a+ c+ phi2 / phi1`, landing on the quartic
/// surface.
pub fn map_sigma<K: Scalar>(cpl: &Couplings<K>, p: &[K; 4]) -> Result<[K; 4]> {
    let [a, b, bb, c] = p;
    let f1 = phi1(b, bb, c);
    guard("map sigma", &[("phi1", f1.is_zero())])?;
    let f2 = phi2(cpl, a, bb);
    let fb = (a.clone() * c.clone() * f2).try_div(&f1)?;
    Ok([a.clone(), fb, bb.clone(), c.clone()])
}

/// Inverse of `sigma`; defined where `frak_b+ bbar+` is nonzero.
pub fn map_sigma_inv<K: Scalar>(cpl: &Couplings<K>, p: &[K; 4]) -> Result<[K; 4]> {
    let [a, fb, bb, c] = p;
    guard(
        "map sigma_inv",
        &[("frak_b_plus", fb.is_zero()), ("bbar_plus", bb.is_zero())],
    )?;
    let f2 = phi2(cpl, a, bb);
    let b =
        (fb.clone() * sq(c) - a.clone() * c.clone() * f2).try_div(&(fb.clone() * bb.clone()))?;
    Ok([a.clone(), b, bb.clone(), c.clone()])
}

fn lift_jet<K: Scalar>(cpl: &Couplings<K>) -> Couplings<Jet<K>> {
    cpl.convert(|x| Jet::constant(x.clone()))
}

/// Gradient of the cubic threefold polynomial, exact via jet arithmetic.
pub fn grad_cubic_t1<K: Scalar>(cpl: &Couplings<K>, p: &[K; 5]) -> [K; 5] {
    let jc = lift_jet(cpl);
    core::array::from_fn(|i| {
        let jp: [Jet<K>; 5] = core::array::from_fn(|j| {
            if i == j {
                Jet::variable(p[j].clone())
            } else {
                Jet::constant(p[j].clone())
            }
        });
        cubic_t1(&jc, &jp).tan
    })
}

/// Gradient of the quartic surface polynomial, exact via jet arithmetic.
pub fn grad_surface_s1<K: Scalar>(cpl: &Couplings<K>, p: &[K; 4]) -> [K; 4] {
    let jc = lift_jet(cpl);
    core::array::from_fn(|i| {
        let jp: [Jet<K>; 4] = core::array::from_fn(|j| {
            if i == j {
                Jet::variable(p[j].clone())
            } else {
                Jet::constant(p[j].clone())
            }
        });
        surface_s1(&jc, &jp).tan
    })
}

/// The two complex singular coordinates `(1 - 2 Λ2+^2 ± i sqrt 3)/(2 Λ1+ Λ2+)`.
pub fn singular_bbar_pm(cpl: &Couplings<C64>) -> [C64; 2] {
    let i_sqrt3 = C64::new(0.0, libm::sqrt(3.0));
    let one = C64::new(1.0, 0.0);
    let two = C64::new(2.0, 0.0);
    let num_base = one - two * cpl.lambda2_plus * cpl.lambda2_plus;
    let den = two * cpl.lambda1_plus * cpl.lambda2_plus;
    [(num_base + i_sqrt3) / den, (num_base - i_sqrt3) / den]
}

/// Certification of one singular point: all first partials vanish.
#[derive(Debug, Clone)]
pub struct SingularCertificate {
    pub point: &'static str,
    pub exact: bool,
    pub max_abs_gradient: f64,
    pub exactly_zero: bool,
}

/// Certifies every singular point of the cubic threefold and the quartic
/// surface: the rational ones exactly in backend `K`, the two needing
/// `i sqrt 3` in complex floats.
pub fn certify_singular_points<K: Scalar>(
    cpl: &Couplings<K>,
    cpl_float: &Couplings<C64>,
) -> Vec<SingularCertificate> {
    let zero = K::zero;
    let one = K::one;
    let mut out = Vec::new();

    let mut push_exact = |point: &'static str, grad: &[K]| {
        let max = grad.iter().cloned().fold(K::zero(), |acc, g| {
            if g.abs_cmp(&acc) == core::cmp::Ordering::Greater {
                g
            } else {
                acc
            }
        });
        out.push(SingularCertificate {
            point,
            exact: true,
            max_abs_gradient: max.magnitude(),
            exactly_zero: grad.iter().all(|g| g.is_structural_zero() || g.is_zero()),
        });
    };

    // T1 singular point P1 = [0:1:0:0:0]
    let t1_p1 = [zero(), one(), zero(), zero(), zero()];
    push_exact("cubic_t1 P1", &grad_cubic_t1(cpl, &t1_p1));

    // S1 singular points P1 = [0:0:0:1] and P2 = [1:0:-Λ2+/Λ1+:0]
    let s1_p1 = [zero(), zero(), zero(), one()];
    push_exact("surface_s1 P1", &grad_surface_s1(cpl, &s1_p1));
    let ratio = (-cpl.lambda2_plus.clone())
        .try_div(&cpl.lambda1_plus)
        .expect("lambda1_plus nonzero by construction");
    let s1_p2 = [one(), zero(), ratio, zero()];
    push_exact("surface_s1 P2", &grad_surface_s1(cpl, &s1_p2));

    // points with coordinate (1 - 2Λ2+^2 ± i√3)/(2Λ1+Λ2+): complex floats
    let c0 = C64::new(0.0, 0.0);
    let c1 = C64::new(1.0, 0.0);
    for (sign, bb) in ["+", "-"].into_iter().zip(singular_bbar_pm(cpl_float)) {
        let t1_pm = [c1, c0, bb, c0, c0];
        let g = grad_cubic_t1(cpl_float, &t1_pm);
        out.push(SingularCertificate {
            point: if sign == "+" {
                "cubic_t1 P+"
            } else {
                "cubic_t1 P-"
            },
            exact: false,
            max_abs_gradient: g.iter().map(Scalar::magnitude).fold(0.0, f64::max),
            exactly_zero: false,
        });
        let s1_pm = [c1, c0, bb, c0];
        let g = grad_surface_s1(cpl_float, &s1_pm);
        out.push(SingularCertificate {
            point: if sign == "+" {
                "surface_s1 P+"
            } else {
                "surface_s1 P-"
            },
            exact: false,
            max_abs_gradient: g.iter().map(Scalar::magnitude).fold(0.0, f64::max),
            exactly_zero: false,
        });
    }
    out
}
