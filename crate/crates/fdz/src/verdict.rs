//! Decision results with explicit, independently checkable witnesses.

use num_bigint::BigInt;

use crate::zlattice::IntMatrix;

/// Witness for a positive isomorphism verdict: one matrix per sort, row `i`
/// being the image of the source's generator `i` in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub maps: Vec<IntMatrix>,
}

impl IsoWitness {
    pub fn single(m: IntMatrix) -> Self {
        IsoWitness { maps: vec![m] }
    }
}

/// Certificate for elementary equivalence of two rings with distinct
/// saturation ideals: an additive-and-multiplicative monomorphism, a chosen
/// complement on each side, and the two indices that must be coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivCertificate {
    /// Row `i` is the image of source generator `i` in target coordinates.
    pub phi: IntMatrix,
    /// Generator rows of the chosen source addition.
    pub r0_gens: IntMatrix,
    /// Generator rows of the chosen target addition.
    pub s0_gens: IntMatrix,
    /// Index of the embedded source addition inside the target addition.
    pub d: BigInt,
    /// Order of M/N on the source side.
    pub e: BigInt,
}

/// Tri-state decision outcome. Positive verdicts always carry witnesses;
/// negative and unknown verdicts carry a diagnostic reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic(IsoWitness),
    NotIsomorphic { reason: String },
    Equivalent(EquivCertificate),
    NotEquivalent { reason: String },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, Verdict::Isomorphic(_) | Verdict::Equivalent(_))
    }

    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            Verdict::NotIsomorphic { .. } | Verdict::NotEquivalent { .. }
        )
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Verdict::Isomorphic(_) => "isomorphic",
            Verdict::NotIsomorphic { .. } => "not-isomorphic",
            Verdict::Equivalent(_) => "equivalent",
            Verdict::NotEquivalent { .. } => "not-equivalent",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}
