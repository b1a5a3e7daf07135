//! The model's coupling constants.
//!
//! Two couplings are free; the rest are pinned by the consistency of the
//! functional relations: the minus-channel first coupling is a fixed rational
//! function of the free pair, the third and fourth families collapse onto
//! `1/Λ2+`, and the fifth family equals `(1 + Λ2+^2)/Λ2+`.

use crate::error::{Error, Result};
use crate::scalar::{sq, Scalar};

/// Full coupling set; construct with [`Couplings::derive`].
#[derive(Debug, Clone, PartialEq)]
pub struct Couplings<K> {
    pub lambda1_plus: K,
    pub lambda1_minus: K,
    pub lambda2_plus: K,
    pub lambda2_minus: K,
    pub lambda3_plus: K,
    pub lambda3_minus: K,
    pub lambda4_plus: K,
    pub lambda4_minus: K,
    pub lambda5_plus: K,
    pub lambda5_minus: K,
}

impl<K: Scalar> Couplings<K> {
    /// Derives every dependent coupling from the free pair `(Λ1+, Λ2+)`.
    /// Both must be nonzero.
    pub fn derive(lambda1_plus: K, lambda2_plus: K) -> Result<Self> {
        if lambda1_plus.is_zero() {
            return Err(Error::DegenerateCouplings("lambda1_plus = 0"));
        }
        if lambda2_plus.is_zero() {
            return Err(Error::DegenerateCouplings("lambda2_plus = 0"));
        }
        let one = K::one();
        let l2p2 = sq(&lambda2_plus);
        let l2p_inv = lambda2_plus.try_inv()?;
        // Λ1- = (1 - Λ2+^2 + Λ2+^4) / (Λ1+ Λ2+^2)
        let lambda1_minus = (one.clone() - l2p2.clone() + sq(&l2p2))
            .try_div(&(lambda1_plus.clone() * l2p2.clone()))?;
        // Λ5± = (1 + Λ2+^2)/Λ2+
        let lambda5 = (one + l2p2) * l2p_inv.clone();
        Ok(Couplings {
            lambda1_plus,
            lambda1_minus,
            lambda2_minus: l2p_inv.clone(),
            lambda3_plus: l2p_inv.clone(),
            lambda3_minus: lambda2_plus.clone(),
            lambda4_plus: l2p_inv.clone(),
            lambda4_minus: l2p_inv,
            lambda5_minus: lambda5.clone(),
            lambda5_plus: lambda5,
            lambda2_plus,
        })
    }

    /// Maps every coupling into another scalar backend.
    pub fn convert<J: Scalar>(&self, mut f: impl FnMut(&K) -> J) -> Couplings<J> {
        Couplings {
            lambda1_plus: f(&self.lambda1_plus),
            lambda1_minus: f(&self.lambda1_minus),
            lambda2_plus: f(&self.lambda2_plus),
            lambda2_minus: f(&self.lambda2_minus),
            lambda3_plus: f(&self.lambda3_plus),
            lambda3_minus: f(&self.lambda3_minus),
            lambda4_plus: f(&self.lambda4_plus),
            lambda4_minus: f(&self.lambda4_minus),
            lambda5_plus: f(&self.lambda5_plus),
            lambda5_minus: f(&self.lambda5_minus),
        }
    }
}
