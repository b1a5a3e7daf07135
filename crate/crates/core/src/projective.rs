//! Points of projective space `CP^d` with division-free equality.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Homogeneous coordinate vector; not all coordinates zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint<K> {
    coords: Vec<K>,
}

impl<K: Scalar> ProjectivePoint<K> {
    pub fn new(coords: Vec<K>) -> Result<Self> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroProjectiveVector);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Scales the first nonzero coordinate to one.
    pub fn canonical(&self) -> Result<Self> {
        let pivot = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroProjectiveVector)?;
        let inv = pivot.try_inv()?;
        Ok(ProjectivePoint {
            coords: self
                .coords
                .iter()
                .map(|c| c.clone() * inv.clone())
                .collect(),
        })
    }
}

/// True iff `u = λ v` for some nonzero scalar λ, decided by
/// cross-multiplication (no division).
pub fn projective_eq<K: Scalar>(u: &[K], v: &[K]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::ProjectiveDimensionMismatch(u.len(), v.len()));
    }
    if u.iter().all(Scalar::is_zero) || v.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroProjectiveVector);
    }
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            let cross = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if !cross.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use alloc::vec;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn scaled_points_are_equal() {
        assert!(projective_eq(&[r(1), r(2), r(3)], &[r(2), r(4), r(6)]).unwrap());
        assert!(!projective_eq(&[r(1), r(0), r(0)], &[r(0), r(1), r(0)]).unwrap());
        assert!(projective_eq(&[r(0), r(1), r(2)], &[r(0), r(3), r(6)]).unwrap());
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(matches!(
            projective_eq(&[r(0), r(0)], &[r(1), r(0)]),
            Err(Error::ZeroProjectiveVector)
        ));
        assert!(ProjectivePoint::new(vec![r(0), r(0)]).is_err());
    }

    #[test]
    fn canonical_scales_first_nonzero_to_one() {
        let p = ProjectivePoint::new(vec![r(0), r(4), r(6)]).unwrap();
        let c = p.canonical().unwrap();
        assert_eq!(c.coords(), &[r(0), r(1), Rat::from_ratio(3, 2)]);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(projective_eq(&[r(1)], &[r(1), r(0)]).is_err());
    }
}
