//! Scalar-field abstraction with four backends.
//!
//! * [`Rat`] — exact arbitrary-precision rationals; every identity check in
//!   this backend is a proof at the sampled point.
//! * [`C64`] — complex double floats with an absolute default tolerance,
//!   used for spectra and for singular points with irrational coordinates.
//! * [`Jet`] — first-order jets `a + eps*b` with `eps^2 = 0`, realizing
//!   derivatives of rational functions without truncation error.
//! * [`QuadExt`] — a quadratic extension `u + v*r` where `r` is a root of a
//!   per-instance monic quadratic, so quartic-surface sampling stays exact.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute tolerance carried by the float backend's equality checks.
pub const FLOAT_TOL: f64 = 1e-10;

/// Exact rational scalar.
pub type Rat = BigRational;

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;

/// A field scalar the whole crate is generic over.
///
/// Values are immutable and freely shared between threads. Division is
/// checked: a zero divisor is a reported error, never a panic.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality in this backend is exact (no tolerance).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;

    /// The rational constant `num/den`. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Equality-with-zero under the backend's notion of equality
    /// (exact, or within [`FLOAT_TOL`] for floats).
    fn is_zero(&self) -> bool;

    /// True only for a bit-exact zero. Used to skip structural zeros in
    /// matrix products without perturbing float residuals.
    fn is_structural_zero(&self) -> bool {
        self.is_zero()
    }

    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, den: &Self) -> Result<Self> {
        Ok(self.clone() * den.try_inv()?)
    }

    /// Square root where the backend can represent one exactly
    /// (floats: principal branch; rationals: perfect squares only).
    fn try_sqrt(&self) -> Result<Self>;

    /// Compares magnitudes; used to locate the largest residual entry.
    fn abs_cmp(&self, other: &Self) -> Ordering;

    /// Approximate magnitude for reports. Zero iff `is_structural_zero`
    /// in exact backends.
    fn magnitude(&self) -> f64;
}

/// `x^2` without consuming the operand.
pub fn sq<K: Scalar>(x: &K) -> K {
    x.clone() * x.clone()
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational constant with zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn try_sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::SqrtUnrepresentable(self.to_string()));
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Ok(BigRational::new(ns, ds))
        } else {
            Err(Error::SqrtUnrepresentable(self.to_string()))
        }
    }

    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::MAX)
    }
}

impl Scalar for Complex<f64> {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }

    fn from_int(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational constant with zero denominator");
        Complex::new(num as f64 / den as f64, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.norm_sqr() < FLOAT_TOL * FLOAT_TOL
    }

    fn is_structural_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_structural_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv())
    }

    fn try_sqrt(&self) -> Result<Self> {
        Ok(self.sqrt())
    }

    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.norm_sqr()
            .partial_cmp(&other.norm_sqr())
            .unwrap_or(Ordering::Equal)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// First-order jet `base + eps * tan` with `eps^2 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<K> {
    pub base: K,
    pub tan: K,
}

impl<K: Scalar> Jet<K> {
    pub fn new(base: K, tan: K) -> Self {
        Jet { base, tan }
    }

    /// Lifts a constant: zero tangent.
    pub fn constant(base: K) -> Self {
        Jet {
            base,
            tan: K::zero(),
        }
    }

    /// Seeds a coordinate for differentiation: unit tangent.
    pub fn variable(base: K) -> Self {
        Jet {
            base,
            tan: K::one(),
        }
    }
}

impl<K: Scalar> fmt::Display for Jet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + eps*{})", self.base, self.tan)
    }
}

impl<K: Scalar> Add for Jet<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Jet {
            base: self.base + rhs.base,
            tan: self.tan + rhs.tan,
        }
    }
}

impl<K: Scalar> Sub for Jet<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Jet {
            base: self.base - rhs.base,
            tan: self.tan - rhs.tan,
        }
    }
}

impl<K: Scalar> Mul for Jet<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Jet {
            base: self.base.clone() * rhs.base.clone(),
            tan: self.base * rhs.tan + self.tan * rhs.base,
        }
    }
}

impl<K: Scalar> Neg for Jet<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet {
            base: -self.base,
            tan: -self.tan,
        }
    }
}

impl<K: Scalar> Scalar for Jet<K> {
    const EXACT: bool = K::EXACT;

    fn zero() -> Self {
        Jet::constant(K::zero())
    }

    fn one() -> Self {
        Jet::constant(K::one())
    }

    fn from_int(n: i64) -> Self {
        Jet::constant(K::from_int(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Jet::constant(K::from_ratio(num, den))
    }

    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.tan.is_zero()
    }

    fn is_structural_zero(&self) -> bool {
        self.base.is_structural_zero() && self.tan.is_structural_zero()
    }

    fn try_inv(&self) -> Result<Self> {
        if self.base.is_zero() {
            return Err(Error::JetZeroBase);
        }
        let binv = self.base.try_inv()?;
        // (a + eps b)^-1 = 1/a - eps b/a^2
        Ok(Jet {
            base: binv.clone(),
            tan: -(self.tan.clone() * binv.clone() * binv),
        })
    }

    fn try_sqrt(&self) -> Result<Self> {
        let s = self.base.try_sqrt()?;
        if s.is_zero() {
            return Err(Error::SqrtUnrepresentable(self.to_string()));
        }
        let tan = self.tan.clone().try_div(&(K::from_int(2) * s.clone()))?;
        Ok(Jet { base: s, tan })
    }

    fn abs_cmp(&self, other: &Self) -> Ordering {
        self.base
            .abs_cmp(&other.base)
            .then_with(|| self.tan.abs_cmp(&other.tan))
    }

    fn magnitude(&self) -> f64 {
        self.base.magnitude().max(self.tan.magnitude())
    }
}

/// Minimal polynomial `r^2 + p*r + q = 0` of the adjoined root.
#[derive(Debug, Clone, PartialEq)]
pub struct MinPoly<K> {
    pub p: K,
    pub q: K,
}

/// Element `u + v*r` of the quadratic extension `K[r]/(r^2 + p r + q)`.
///
/// Elements of the base field carry no minimal polynomial; it is adopted
/// from the other operand when first mixed. Values from two different
/// extensions must not be combined.
#[derive(Debug, Clone)]
pub struct QuadExt<K> {
    pub u: K,
    pub v: K,
    min: Option<Arc<MinPoly<K>>>,
}

impl<K: Scalar> QuadExt<K> {
    /// Embeds a base-field element.
    pub fn base(u: K) -> Self {
        QuadExt {
            u,
            v: K::zero(),
            min: None,
        }
    }

    /// The adjoined root of `r^2 + p r + q = 0`.
    pub fn root(min: &Arc<MinPoly<K>>) -> Self {
        QuadExt {
            u: K::zero(),
            v: K::one(),
            min: Some(min.clone()),
        }
    }

    pub fn new(u: K, v: K, min: &Arc<MinPoly<K>>) -> Self {
        QuadExt {
            u,
            v,
            min: Some(min.clone()),
        }
    }

    /// Minimal polynomial of `sqrt(d)`.
    pub fn sqrt_minpoly(d: K) -> Arc<MinPoly<K>> {
        Arc::new(MinPoly {
            p: K::zero(),
            q: -d,
        })
    }

    /// The extension this element lives in, if any.
    pub fn min_poly(&self) -> Option<&Arc<MinPoly<K>>> {
        self.min.as_ref()
    }

    fn merged_min(
        a: Option<Arc<MinPoly<K>>>,
        b: Option<Arc<MinPoly<K>>>,
    ) -> Option<Arc<MinPoly<K>>> {
        match (a, b) {
            (None, m) | (m, None) => m,
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(&x, &y) || *x == *y,
                    "mixed elements of two different quadratic extensions"
                );
                Some(x)
            }
        }
    }

    fn min_coeffs(&self) -> (K, K) {
        match &self.min {
            Some(m) => (m.p.clone(), m.q.clone()),
            None => (K::zero(), K::zero()),
        }
    }
}

impl<K: Scalar> PartialEq for QuadExt<K> {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v
    }
}

impl<K: Scalar> fmt::Display for QuadExt<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*r)", self.u, self.v)
    }
}

impl<K: Scalar> Add for QuadExt<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadExt {
            u: self.u + rhs.u,
            v: self.v + rhs.v,
            min: Self::merged_min(self.min, rhs.min),
        }
    }
}

impl<K: Scalar> Sub for QuadExt<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QuadExt {
            u: self.u - rhs.u,
            v: self.v - rhs.v,
            min: Self::merged_min(self.min, rhs.min),
        }
    }
}

impl<K: Scalar> Mul for QuadExt<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let min = Self::merged_min(self.min.clone(), rhs.min.clone());
        let (p, q) = match &min {
            Some(m) => (m.p.clone(), m.q.clone()),
            None => (K::zero(), K::zero()),
        };
        let uu = self.u.clone() * rhs.u.clone();
        let vv = self.v.clone() * rhs.v.clone();
        let cross = self.u * rhs.v + self.v * rhs.u;
        // (u1 + v1 r)(u2 + v2 r) with r^2 = -p r - q
        QuadExt {
            u: uu - q * vv.clone(),
            v: cross - p * vv,
            min,
        }
    }
}

impl<K: Scalar> Neg for QuadExt<K> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt {
            u: -self.u,
            v: -self.v,
            min: self.min,
        }
    }
}

impl<K: Scalar> Scalar for QuadExt<K> {
    const EXACT: bool = K::EXACT;

    fn zero() -> Self {
        QuadExt::base(K::zero())
    }

    fn one() -> Self {
        QuadExt::base(K::one())
    }

    fn from_int(n: i64) -> Self {
        QuadExt::base(K::from_int(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        QuadExt::base(K::from_ratio(num, den))
    }

    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn is_structural_zero(&self) -> bool {
        self.u.is_structural_zero() && self.v.is_structural_zero()
    }

    fn try_inv(&self) -> Result<Self> {
        if self.v.is_zero() {
            return Ok(QuadExt {
                u: self.u.try_inv()?,
                v: K::zero(),
                min: self.min.clone(),
            });
        }
        let (p, q) = self.min_coeffs();
        // conjugate (u - p v) - v r over norm u^2 - p u v + q v^2
        let norm = sq(&self.u) - p.clone() * self.u.clone() * self.v.clone() + q * sq(&self.v);
        let ninv = norm.try_inv()?;
        Ok(QuadExt {
            u: (self.u.clone() - p * self.v.clone()) * ninv.clone(),
            v: -(self.v.clone() * ninv),
            min: self.min.clone(),
        })
    }

    fn try_sqrt(&self) -> Result<Self> {
        if self.v.is_zero() {
            return Ok(QuadExt {
                u: self.u.try_sqrt()?,
                v: K::zero(),
                min: self.min.clone(),
            });
        }
        Err(Error::SqrtUnrepresentable(self.to_string()))
    }

    fn abs_cmp(&self, other: &Self) -> Ordering {
        let a = sq(&self.u) + sq(&self.v);
        let b = sq(&other.u) + sq(&other.v);
        a.abs_cmp(&b)
    }

    fn magnitude(&self) -> f64 {
        self.u.magnitude() + self.v.magnitude()
    }
}

/// Parses a rational from `p`, `p/q` or a plain integer string.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidConfig(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if Zero::is_zero(&den) {
                return Err(Error::InvalidConfig(format!("zero denominator: {s:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn r(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    #[test]
    fn jet_product_rule() {
        // (a + eps b)(c + eps d) = ac + eps(ad + bc)
        let x = Jet::new(r(3, 2), r(5, 7));
        let y = Jet::new(r(-4, 3), r(1, 2));
        let z = x.clone() * y.clone();
        assert_eq!(z.base, r(3, 2) * r(-4, 3));
        assert_eq!(z.tan, r(3, 2) * r(1, 2) + r(5, 7) * r(-4, 3));
    }

    #[test]
    fn jet_inverse_and_zero_base() {
        let x = Jet::new(r(2, 1), r(3, 1));
        let xi = x.clone().try_inv().unwrap();
        let prod = x * xi;
        assert_eq!(prod, Jet::one());
        let y = Jet::new(r(0, 1), r(3, 1));
        assert_eq!(y.try_inv().unwrap_err(), Error::JetZeroBase);
    }

    #[test]
    fn rational_sqrt_perfect_squares_only() {
        assert_eq!(r(9, 4).try_sqrt().unwrap(), r(3, 2));
        assert!(r(2, 1).try_sqrt().is_err());
        assert!(r(-1, 1).try_sqrt().is_err());
    }

    #[test]
    fn rational_division_by_zero_is_reported() {
        assert_eq!(
            r(1, 2).try_div(&r(0, 1)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn quadext_field_axioms_with_sqrt2() {
        let min = QuadExt::sqrt_minpoly(r(2, 1));
        let root = QuadExt::root(&min);
        // r^2 = 2
        assert_eq!(root.clone() * root.clone(), QuadExt::from_int(2));
        let x = QuadExt::new(r(3, 5), r(-7, 2), &min);
        let xi = x.try_inv().unwrap();
        assert_eq!(x * xi, QuadExt::one());
    }

    #[test]
    fn quadext_general_monic_quadratic() {
        // r^2 + r + 1 = 0 (primitive cube root of unity)
        let min = Arc::new(MinPoly {
            p: r(1, 1),
            q: r(1, 1),
        });
        let root: QuadExt<Rat> = QuadExt::root(&min);
        let r3 = root.clone() * root.clone() * root.clone();
        assert_eq!(r3, QuadExt::one());
    }

    #[test]
    fn quadext_tower_is_biquadratic() {
        // QQ(sqrt 2)(sqrt 3): (sqrt2 * sqrt3)^2 = 6
        let m2 = QuadExt::sqrt_minpoly(r(2, 1));
        let s2 = QuadExt::root(&m2);
        let m3 = QuadExt::<QuadExt<Rat>>::sqrt_minpoly(QuadExt::base(r(3, 1)));
        let s3 = QuadExt::root(&m3);
        let s2l = QuadExt::base(s2);
        let prod = s2l.clone() * s3.clone();
        assert_eq!(prod.clone() * prod, QuadExt::from_int(6));
        let x = s2l + s3; // sqrt2 + sqrt3
        let xi = x.clone().try_inv().unwrap();
        assert_eq!(x * xi, QuadExt::one());
    }

    #[test]
    fn float_zero_uses_tolerance() {
        let tiny = C64::new(1e-12, -1e-12);
        assert!(Scalar::is_zero(&tiny));
        assert!(!tiny.is_structural_zero());
        assert!(!Scalar::is_zero(&C64::new(1e-9, 0.0)));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("13/4").unwrap(), r(13, 4));
        assert_eq!(parse_rational("-3").unwrap(), r(-3, 1));
        assert_eq!(parse_rational(" 5 / -2 ").unwrap(), r(-5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn abs_cmp_orders_by_magnitude() {
        let vals: Vec<Rat> = [r(-5, 2), r(1, 3), r(2, 1)].into();
        let max = vals.iter().max_by(|a, b| a.abs_cmp(b)).unwrap();
        assert_eq!(max, &r(-5, 2));
    }
}
