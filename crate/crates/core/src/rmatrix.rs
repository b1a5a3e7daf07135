//! The R-matrix in its three families, normalized so that the `c+` slots
//! equal one, together with the Yang-Baxter, unitarity and regularity
//! residuals.
//!
//! The three families share the nineteen-vertex layout but differ in which
//! chart coordinates they take:
//!
//! * threefold family — both points given by threefold coordinates
//!   `(a+, b+, bbar+, c+, c-)`, entries built from the bi-homogeneous `Q`;
//! * parameterized family — spectral-chart points `(a+, bbar+, c+, cfrak-)`,
//!   entries built from the selector polynomial `Q1`;
//! * submanifold family — quartic-surface points `(a+, frak_b+, bbar+, c+)`,
//!   entries built from `Q2`.
//!
//! Every constructor reports the complete list of vanishing denominator
//! factors rather than the first one found.

use alloc::vec::Vec;

use crate::couplings::Couplings;
use crate::error::{Error, Result};
use crate::lax::LaxOperator;
use crate::matrix::{embed_two_site, permutator, DenseMatrix};
use crate::scalar::{sq, Scalar};
use crate::variety::{phi1, phi2, psi2};
use crate::weights::{guard, K3Point, SpectralPoint, WeightSet};

/// 9x9 intertwiner with the nineteen-vertex zero pattern and both `c+`
/// slots normalized to one.
#[derive(Debug, Clone)]
pub struct RMatrix<K> {
    pub matrix: DenseMatrix<K>,
}

/// The thirteen independent entries of the normalized R-matrix.
struct REntries<K> {
    a_plus: K,
    a_minus: K,
    b_plus: K,
    b_minus: K,
    bbar_plus: K,
    bbar_minus: K,
    c_minus: K,
    d_plus: K,
    d_minus: K,
    f_plus: K,
    f_minus: K,
    g: K,
    h: K,
}

impl<K: Scalar> REntries<K> {
    fn layout(self) -> RMatrix<K> {
        let one = K::one();
        RMatrix {
            matrix: DenseMatrix::from_entries(
                9,
                9,
                &[
                    (0, 0, self.a_plus),
                    (1, 1, self.b_plus),
                    (1, 3, one.clone()),
                    (2, 2, self.f_plus),
                    (2, 4, self.d_plus.clone()),
                    (2, 6, self.h.clone()),
                    (3, 1, one),
                    (3, 3, self.bbar_plus),
                    (4, 2, self.d_plus),
                    (4, 4, self.g),
                    (4, 6, self.d_minus.clone()),
                    (5, 5, self.bbar_minus),
                    (5, 7, self.c_minus.clone()),
                    (6, 2, self.h),
                    (6, 4, self.d_minus),
                    (6, 6, self.f_minus),
                    (7, 5, self.c_minus),
                    (7, 7, self.b_minus),
                    (8, 8, self.a_minus),
                ],
            ),
        }
    }
}

/// Which auxiliary polynomial family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QKind {
    /// Threefold-family bi-homogeneous polynomial, arguments
    /// `(a, a', b, b', bbar, bbar', c, c')`.
    Q,
    /// Parameterized-family polynomial, arguments
    /// `(a, a', bbar, bbar', x1, x2, y1, y2)` with the four selector slots.
    Q1,
    /// Submanifold-family polynomial, arguments
    /// `(a, a', frak_b, frak_b', bbar, bbar', c, c')`.
    Q2,
}

/// Evaluates one of the three auxiliary polynomials on an argument tuple.
pub fn eval_q_family<K: Scalar>(kind: QKind, args: &[K], cpl: &Couplings<K>) -> Result<K> {
    if args.len() != 8 {
        return Err(Error::ArityMismatch {
            kind: match kind {
                QKind::Q => "Q",
                QKind::Q1 => "Q1",
                QKind::Q2 => "Q2",
            },
            expected: 8,
            got: args.len(),
        });
    }
    let a = |i: usize| &args[i];
    Ok(match kind {
        QKind::Q => poly_q(cpl, a(0), a(1), a(2), a(3), a(4), a(5), a(6), a(7)),
        QKind::Q1 => poly_q1(cpl, a(0), a(1), a(2), a(3), a(4), a(5), a(6), a(7)),
        QKind::Q2 => poly_q2(cpl, a(0), a(1), a(2), a(3), a(4), a(5), a(6), a(7)),
    })
}

#[allow(clippy::too_many_arguments)]
fn poly_q<K: Scalar>(
    cpl: &Couplings<K>,
    a: &K,
    a2: &K,
    b: &K,
    b2: &K,
    bb: &K,
    bb2: &K,
    c: &K,
    c2: &K,
) -> K {
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let l2p2 = sq(l2p);
    l1m.clone() * l2p.clone() * a.clone() * b.clone() * a2.clone() * b2.clone()
        + (K::one() - l2p2.clone())
            * (sq(c) * a2.clone() * b2.clone() - b.clone() * bb.clone() * a2.clone() * b2.clone())
        - l2p2 * (a.clone() * b.clone() * sq(c2) - a.clone() * b.clone() * b2.clone() * bb2.clone())
        + l1p.clone()
            * l2p.clone()
            * (sq(c) - b.clone() * bb.clone())
            * (sq(c2) - b2.clone() * bb2.clone())
}

#[allow(clippy::too_many_arguments)]
fn poly_q1<K: Scalar>(
    cpl: &Couplings<K>,
    a: &K,
    a2: &K,
    bb: &K,
    bb2: &K,
    x1: &K,
    x2: &K,
    y1: &K,
    y2: &K,
) -> K {
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let l2p2 = sq(l2p);
    let wronskian = bb.clone() * a2.clone() - a.clone() * bb2.clone();
    let coeff_x1y2 = l1m.clone() * l2p.clone() * a.clone() * a2.clone()
        + (l2p2.clone() - K::one()) * bb.clone() * a2.clone()
        + l2p.clone() * (l2p.clone() * a.clone() + l1p.clone() * bb.clone()) * bb2.clone();
    let coeff_x2y1 = -(l1m.clone() * l2p.clone() * a.clone() * a2.clone())
        + a.clone() * bb2.clone()
        - l2p.clone()
            * (l2p.clone() * bb.clone() * a2.clone()
                + l2p.clone() * a.clone() * bb2.clone()
                + l1p.clone() * bb.clone() * bb2.clone());
    coeff_x1y2 * sq(&(x1.clone() * y2.clone()))
        + coeff_x2y1 * sq(&(x2.clone() * y1.clone()))
        + wronskian * (sq(&(x1.clone() * x2.clone())) + sq(&(y1.clone() * y2.clone())))
}

#[allow(clippy::too_many_arguments)]
fn poly_q2<K: Scalar>(
    cpl: &Couplings<K>,
    a: &K,
    a2: &K,
    fb: &K,
    fb2: &K,
    bb: &K,
    bb2: &K,
    c: &K,
    c2: &K,
) -> K {
    let l1p = &cpl.lambda1_plus;
    let l1m = &cpl.lambda1_minus;
    let l2p = &cpl.lambda2_plus;
    let one = K::one();
    let l2p2 = sq(l2p);
    let fbc = fb.clone() * c.clone();
    let fbc2 = fb2.clone() * c2.clone();
    let quad2 = l2p.clone() * sq(a2) - fbc2.clone();
    sq(l1p) * (K::from_int(2) * l2p2.clone() - one.clone()) * sq(bb) * a2.clone() * bb2.clone()
        + sq(l1p) * l1p.clone() * l2p.clone() * sq(&(bb.clone() * bb2.clone()))
        + l2p2.clone() * l2p.clone() * sq(a) * (l1m.clone() * sq(a2) + l1p.clone() * sq(bb2))
        + l2p.clone()
            * (l2p2.clone() + l1m.clone() * l1p.clone() - one.clone())
            * a.clone()
            * bb.clone()
            * quad2.clone()
        - l1m.clone() * l2p2.clone() * (sq(a) * fbc2.clone() + fbc.clone() * sq(a2))
        + l1p.clone()
            * l2p.clone()
            * (l1m.clone() * l1p.clone() + K::from_int(3) * l2p2.clone() - one.clone())
            * a.clone()
            * bb.clone()
            * a2.clone()
            * bb2.clone()
        + l2p.clone()
            * (l1m.clone() * l1p.clone() + l2p2.clone())
            * (l2p.clone() * sq(a) - fbc.clone())
            * a2.clone()
            * bb2.clone()
        + K::from_int(2) * sq(&(l1p.clone() * l2p.clone())) * a.clone() * bb.clone() * sq(bb2)
        + l1p.clone() * (l2p2 - one) * sq(bb) * quad2
        + l2p.clone() * fbc * (l1m.clone() * fbc2 - l1p.clone() * l2p.clone() * sq(bb2))
}

/// R-matrix in the threefold family, from the five threefold coordinates of
/// each weight set.
pub fn r_from_threefold<K: Scalar>(
    w: &WeightSet<K>,
    w2: &WeightSet<K>,
    cpl: &Couplings<K>,
) -> Result<RMatrix<K>> {
    let [a, b, bb, c, cm] = w.threefold_coords();
    let [a2, b2, bb2, c2, cm2] = w2.threefold_coords();
    let f1 = phi1(&b, &bb, &c);
    let f1p = phi1(&b2, &bb2, &c2);
    let f2 = phi2(cpl, &a, &bb);
    let f2p = phi2(cpl, &a2, &bb2);
    let one = K::one();
    let zero = K::zero();
    let q_den = poly_q(cpl, &a, &a2, &one, &b2, &bb, &bb2, &zero, &c2);
    guard(
        "threefold R family",
        &[
            ("c_plus", c.is_zero()),
            ("c_plus_prime", c2.is_zero()),
            ("a_plus", a.is_zero()),
            ("a_plus_prime", a2.is_zero()),
            ("phi1", f1.is_zero()),
            ("phi1_prime", f1p.is_zero()),
            ("phi2", f2.is_zero()),
            ("c_minus", cm.is_zero()),
            ("q_denominator", q_den.is_zero()),
        ],
    )?;

    let a_plus = (bb.clone() * a2.clone() * b2.clone() + a.clone() * f1p.clone())
        .try_div(&(c.clone() * a2.clone() * c2.clone()))?;
    let bbar_plus =
        (bb.clone() * a2.clone() - a.clone() * bb2.clone()).try_div(&(c.clone() * c2.clone()))?;
    let b_plus = (a.clone() * b.clone() * f1p.clone() - f1.clone() * a2.clone() * b2.clone())
        .try_div(&(a.clone() * c.clone() * a2.clone() * c2.clone()))?;
    let d_plus = -(b_plus.clone() * c.clone() * sq(&a2) * cm2.clone() * f2p.clone())
        .try_div(&(f1p.clone() * q_den.clone()))?;
    let f_plus = (b_plus.clone() * poly_q(cpl, &a, &a2, &b, &b2, &bb, &bb2, &c, &c2))
        .try_div(&(a.clone() * q_den.clone()))?;
    let h = (sq(&a2)
        * cm2.clone()
        * f1.clone()
        * f2p.clone()
        * (poly_q(cpl, &a, &a, &b, &one, &bb, &bb, &c, &zero) - a.clone() * sq(&c)))
    .try_div(&(sq(&a) * cm.clone() * f1p.clone() * f2.clone() * q_den.clone()))?;
    // shared factor of b-, bbar-: the printed bbar- = b+ b-/bbar+ with the
    // bbar+ entry cancelled against b-'s leading factor
    let minus_core = (a2.clone() * (a.clone() * b.clone() * bb2.clone() + f1.clone() * a2.clone()))
        .try_div(&(a.clone() * q_den.clone()))?;
    let b_minus = -(bbar_plus.clone() * minus_core.clone());
    let bbar_minus = -(b_plus.clone() * minus_core);
    let c_minus = -(cm.clone()
        * sq(&a2)
        * cm2.clone()
        * f2.clone()
        * f2p.clone()
        * (a.clone() * b.clone() * bb2.clone() + f1.clone() * a2.clone()))
    .try_div(&(c.clone() * c2.clone() * f1.clone() * f1p.clone() * q_den.clone()))?;
    let d_minus =
        -(bbar_plus.clone() * a.clone() * cm.clone() * a2.clone() * c2.clone() * f2.clone())
            .try_div(&(f1.clone() * q_den.clone()))?;
    let f_minus = (bbar_plus.clone()
        * a2.clone()
        * poly_q(cpl, &a, &a2, &one, &one, &bb, &bb2, &zero, &zero))
    .try_div(&q_den)?;
    let a_minus = (a2.clone()
        * (poly_q(cpl, &a, &a2, &b, &one, &bb, &bb2, &c, &zero)
            - a.clone() * b.clone() * bb2.clone()
            - f1.clone() * a2.clone())
        * (a.clone() * b.clone() * bb2.clone() + f1.clone() * a2.clone()))
    .try_div(&(sq(&a) * c.clone() * c2.clone() * q_den.clone()))?;
    let g = -(bbar_plus.clone() * poly_q(cpl, &a2, &a, &b2, &b, &bb2, &bb, &c2, &c))
        .try_div(&(a.clone() * q_den.clone()))?
        + (c.clone()
            * (poly_q(cpl, &a2, &a2, &b2, &one, &bb2, &bb2, &c2, &zero) - a2.clone() * sq(&c2)))
        .try_div(&(c2.clone() * q_den))?;

    Ok(REntries {
        a_plus,
        a_minus,
        b_plus,
        b_minus,
        bbar_plus,
        bbar_minus,
        c_minus,
        d_plus,
        d_minus,
        f_plus,
        f_minus,
        g,
        h,
    }
    .layout())
}

/// R-matrix in the parameterized family, from two spectral-chart points.
pub fn r_from_spectral<K: Scalar>(
    p: &SpectralPoint<K>,
    p2: &SpectralPoint<K>,
    cpl: &Couplings<K>,
) -> Result<RMatrix<K>> {
    let [a, bb, c, cf] = p.coords.clone();
    let [a2, bb2, c2, cf2] = p2.coords.clone();
    let ps2 = psi2(cpl, &a, &bb);
    let ps2p = psi2(cpl, &a2, &bb2);
    let one = K::one();
    let zero = K::zero();
    let q1_den = poly_q1(cpl, &a, &a2, &bb, &bb2, &one, &c2, &zero, &cf2);
    guard(
        "parameterized R family",
        &[
            ("c_plus", c.is_zero()),
            ("c_plus_prime", c2.is_zero()),
            ("psi2", ps2.is_zero()),
            ("psi2_prime", ps2p.is_zero()),
            ("q1_denominator", q1_den.is_zero()),
        ],
    )?;

    let cc = c.clone() * c2.clone();
    let q1_full = poly_q1(cpl, &a, &a2, &bb, &bb2, &c, &c2, &cf, &cf2);
    let q1_c01 = poly_q1(cpl, &a, &a2, &bb, &bb2, &c, &zero, &cf, &one);
    let wronskian = bb.clone() * a2.clone() - a.clone() * bb2.clone();

    let a_plus = -poly_q1(cpl, &a, &a2, &bb, &bb2, &zero, &c2, &one, &cf2)
        .try_div(&(cc.clone() * ps2p.clone()))?;
    let b_plus = q1_full
        .clone()
        .try_div(&(cc.clone() * ps2.clone() * ps2p.clone()))?;
    let bbar_plus = wronskian.clone().try_div(&cc)?;
    let d_plus =
        (cf2.clone() * q1_full.clone()).try_div(&(c2.clone() * q1_den.clone() * ps2.clone()))?;
    let f_plus = ((poly_q1(cpl, &a, &a2, &bb, &bb2, &cf, &c2, &c, &cf2)
        - (K::from_int(2) * sq(&cf) - sq(&c)) * q1_den.clone())
        * q1_full.clone())
    .try_div(&(cc.clone() * q1_den.clone() * ps2p.clone() * sq(&ps2)))?;
    let a_minus =
        -(poly_q1(cpl, &a, &a2, &bb, &bb2, &c, &one, &cf, &zero) * q1_c01.clone() * ps2p.clone())
            .try_div(&(cc.clone() * q1_den.clone() * sq(&ps2)))?;
    let b_minus = (wronskian.clone() * q1_c01.clone() * ps2p.clone())
        .try_div(&(cc.clone() * q1_den.clone() * ps2.clone()))?;
    let bbar_minus =
        (q1_full.clone() * q1_c01.clone()).try_div(&(cc.clone() * q1_den.clone() * sq(&ps2)))?;
    let c_minus = (cf.clone() * cf2.clone() * q1_c01 * ps2p.clone())
        .try_div(&(cc.clone() * q1_den.clone() * ps2.clone()))?;
    let d_minus =
        (cf.clone() * wronskian.clone() * ps2p.clone()).try_div(&(c.clone() * q1_den.clone()))?;
    let h = (cf.clone() * cf2.clone() * ps2p.clone()).try_div(&q1_den)?;
    let f_minus =
        (wronskian * poly_q1(cpl, &a, &a2, &bb, &bb2, &zero, &one, &one, &one) * ps2p.clone())
            .try_div(&(cc.clone() * q1_den.clone()))?;
    let g = (-(q1_full * poly_q1(cpl, &a2, &a, &bb2, &bb, &zero, &one, &one, &one))
        + sq(&(cf.clone() * c2.clone())) * ps2.clone() * ps2p)
        .try_div(&(cc * q1_den * ps2))?;

    Ok(REntries {
        a_plus,
        a_minus,
        b_plus,
        b_minus,
        bbar_plus,
        bbar_minus,
        c_minus,
        d_plus,
        d_minus,
        f_plus,
        f_minus,
        g,
        h,
    }
    .layout())
}

/// R-matrix in the submanifold family, from two quartic-surface points.
/// The weights it intertwines have `c- = c+`, but the R entries themselves
/// stay asymmetric between the `c±` slots.
pub fn r_from_k3<K: Scalar>(
    p: &K3Point<K>,
    p2: &K3Point<K>,
    cpl: &Couplings<K>,
) -> Result<RMatrix<K>> {
    let [a, fb, bb, c] = p.coords.clone();
    let [a2, fb2, bb2, c2] = p2.coords.clone();
    let f2 = phi2(cpl, &a, &bb);
    let f2p = phi2(cpl, &a2, &bb2);
    let one = K::one();
    let zero = K::zero();
    let q2_den = poly_q2(cpl, &a, &a2, &one, &fb2, &bb, &bb2, &zero, &c2);
    guard(
        "submanifold R family",
        &[
            ("c_plus", c.is_zero()),
            ("c_plus_prime", c2.is_zero()),
            ("frak_b_plus", fb.is_zero()),
            ("frak_b_plus_prime", fb2.is_zero()),
            ("bbar_plus", bb.is_zero()),
            ("bbar_plus_prime", bb2.is_zero()),
            ("phi2", f2.is_zero()),
            ("phi2_prime", f2p.is_zero()),
            ("q2_denominator", q2_den.is_zero()),
        ],
    )?;

    let l1p = &cpl.lambda1_plus;
    let l2p = &cpl.lambda2_plus;
    let wronskian = bb.clone() * a2.clone() - a.clone() * bb2.clone();

    let a_plus = (bb.clone() * fb2.clone() * c2.clone() - wronskian.clone() * f2p.clone())
        .try_div(&(c.clone() * fb2.clone() * bb2.clone()))?;
    let bbar_plus = wronskian.clone().try_div(&(c.clone() * c2.clone()))?;
    let b_plus = (bb.clone() * f2.clone() * (l2p.clone() * sq(&a2) - fb2.clone() * c2.clone())
        - (l2p.clone() * sq(&a) - fb.clone() * c.clone()) * f2p.clone() * bb2.clone())
    .try_div(&(fb.clone() * bb.clone() * fb2.clone() * bb2.clone()))?
        + (sq(l1p) * wronskian.clone()).try_div(&(fb.clone() * fb2.clone()))?;
    // b- = bbar+_entry * core, bbar- = b+_entry * core, c- and d- with the
    // entry-ratio factors cancelled
    let cross = wronskian * f2.clone() + fb.clone() * c.clone() * bb2.clone();
    let minus_core = (c.clone() * fb2.clone() * bb2.clone() * f2.clone() * cross.clone())
        .try_div(&(fb.clone() * bb.clone() * c2.clone() * q2_den.clone()))?;
    let b_minus = bbar_plus.clone() * minus_core.clone();
    let bbar_minus = b_plus.clone() * minus_core.clone();
    let c_minus = (minus_core * fb.clone() * fb2.clone()).try_div(&(c.clone() * c2.clone()))?;
    let d_plus = (b_plus.clone() * c.clone() * sq(&fb2) * bb2.clone() * f2.clone())
        .try_div(&(c2.clone() * q2_den.clone()))?;
    let d_minus = (bbar_plus.clone() * fb.clone() * fb2.clone() * bb2.clone() * f2.clone())
        .try_div(&q2_den)?;
    let f_plus = -(b_plus.clone()
        * c.clone()
        * f2.clone()
        * poly_q2(cpl, &a, &a2, &fb, &fb2, &bb, &bb2, &c, &c2))
    .try_div(&(fb.clone() * bb.clone() * q2_den.clone()))?;
    let h = (c.clone()
        * sq(&fb2)
        * bb2.clone()
        * (poly_q2(cpl, &a, &a, &fb, &one, &bb, &bb, &c, &zero)
            + fb.clone() * bb.clone() * c.clone() * f2.clone()))
    .try_div(&(sq(&fb) * bb.clone() * c2.clone() * q2_den.clone()))?;
    let f_minus = -(bbar_plus.clone()
        * fb2.clone()
        * bb2.clone()
        * poly_q2(cpl, &a, &a2, &one, &one, &bb, &bb2, &zero, &zero))
    .try_div(&(c2.clone() * f2p.clone() * q2_den.clone()))?;
    let a_minus = ((poly_q2(cpl, &a, &a2, &fb, &one, &bb, &bb2, &c, &zero)
        + f2p.clone() * cross.clone())
        * c.clone()
        * fb2.clone()
        * bb2.clone()
        * f2.clone()
        * cross)
        .try_div(&(sq(&(fb.clone() * bb.clone() * c2.clone())) * f2p.clone() * q2_den.clone()))?;
    let g = (bbar_plus.clone()
        * c.clone()
        * f2.clone()
        * poly_q2(cpl, &a2, &a, &fb2, &fb, &bb2, &bb, &c2, &c))
    .try_div(&(fb.clone() * bb.clone() * q2_den.clone()))?
        + (c.clone()
            * f2.clone()
            * (poly_q2(cpl, &a2, &a2, &fb2, &one, &bb2, &bb2, &c2, &zero)
                + fb2.clone() * bb2.clone() * c2.clone() * f2p.clone()))
        .try_div(&(c2.clone() * f2p * q2_den))?;

    Ok(REntries {
        a_plus,
        a_minus,
        b_plus,
        b_minus,
        bbar_plus,
        bbar_minus,
        c_minus,
        d_plus,
        d_minus,
        f_plus,
        f_minus,
        g,
        h,
    }
    .layout())
}

/// Max-abs entry of the Yang-Baxter residual
/// `R (L' ⊗ I)(I ⊗ L'') - (I ⊗ L'')(L' ⊗ I) R` on the 27-dimensional space
/// `aux1 ⊗ aux2 ⊗ quantum` (lexicographic basis). The R-matrix acts on the
/// two auxiliary slots.
pub fn ybe_residual<K: Scalar>(r: &RMatrix<K>, l1: &LaxOperator<K>, l2: &LaxOperator<K>) -> K {
    let rr = embed_two_site(&r.matrix, 3, 0, 1, 3);
    let a = embed_two_site(&l1.matrix, 3, 0, 2, 3);
    let b = embed_two_site(&l2.matrix, 3, 1, 2, 3);
    let lhs = rr.mul(&a).mul(&b);
    let rhs = b.mul(&a).mul(&rr);
    lhs.sub(&rhs).max_abs()
}

/// Max-abs residual of `R12 R13 R23 = R23 R13 R12` on three auxiliary
/// slots, with `R_ab` acting on slots `a, b` of the lexicographic basis
/// `e_i ⊗ e_j ⊗ e_k`.
pub fn rrr_residual<K: Scalar>(
    p1: &SpectralPoint<K>,
    p2: &SpectralPoint<K>,
    p3: &SpectralPoint<K>,
    cpl: &Couplings<K>,
) -> Result<K> {
    let r12 = embed_two_site(&r_from_spectral(p1, p2, cpl)?.matrix, 3, 0, 1, 3);
    let r13 = embed_two_site(&r_from_spectral(p1, p3, cpl)?.matrix, 3, 0, 2, 3);
    let r23 = embed_two_site(&r_from_spectral(p2, p3, cpl)?.matrix, 3, 1, 2, 3);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    Ok(lhs.sub(&rhs).max_abs())
}

/// Verifies `R(ω,ω') P R(ω',ω) P = ρ I` and returns `ρ`.
pub fn unitarity_check<K: Scalar>(
    p1: &SpectralPoint<K>,
    p2: &SpectralPoint<K>,
    cpl: &Couplings<K>,
) -> Result<K> {
    let r12 = r_from_spectral(p1, p2, cpl)?;
    let r21 = r_from_spectral(p2, p1, cpl)?;
    let p = permutator::<K>(3);
    let product = r12.matrix.mul(&p).mul(&r21.matrix).mul(&p);
    product
        .as_scalar_multiple_of_identity()
        .ok_or_else(|| Error::NonScalarProduct(alloc::format!("{}", product.max_abs())))
}

/// Verifies `R(ω,ω) = ξ P` and returns `ξ` (equal to one under the
/// normalization of the `c+` slots).
pub fn regularity_check<K: Scalar>(p: &SpectralPoint<K>, cpl: &Couplings<K>) -> Result<K> {
    let r = r_from_spectral(p, p, cpl)?;
    // the permutator has a one where the normalized c+ slot sits
    let xi = r.matrix.get(1, 3).clone();
    let residual = r.matrix.sub(&permutator::<K>(3).scale(&xi)).max_abs();
    if residual.is_zero() {
        Ok(xi)
    } else {
        Err(Error::NotPermutatorShape(alloc::format!("{residual}")))
    }
}

/// The Yang-Baxter residual for a matched triple built from spectral
/// points: convenience wrapper used by campaigns.
pub fn ybe_residual_spectral<K: Scalar>(
    p1: &SpectralPoint<K>,
    p2: &SpectralPoint<K>,
    cpl: &Couplings<K>,
) -> Result<K> {
    let r = r_from_spectral(p1, p2, cpl)?;
    let l1 = crate::lax::lax_from_spectral(p1, cpl)?;
    let l2 = crate::lax::lax_from_spectral(p2, cpl)?;
    Ok(ybe_residual(&r, &l1, &l2))
}

/// Names the R entry positions used in reports.
pub fn entry_positions() -> Vec<(&'static str, (usize, usize))> {
    alloc::vec![
        ("a_plus", (0, 0)),
        ("b_plus", (1, 1)),
        ("c_plus", (1, 3)),
        ("f_plus", (2, 2)),
        ("d_plus", (2, 4)),
        ("h", (2, 6)),
        ("bbar_plus", (3, 3)),
        ("g", (4, 4)),
        ("d_minus", (4, 6)),
        ("bbar_minus", (5, 5)),
        ("c_minus", (5, 7)),
        ("f_minus", (6, 6)),
        ("b_minus", (7, 7)),
        ("a_minus", (8, 8)),
    ]
}
