//! Ring presentations by pseudo-basis data: periods, torsion structure
//! constants and a multiplication tensor, all over the integers.
//!
//! A presentation has generators `u_1..u_r`, periods `e_i` (0 encodes an
//! infinite period), torsion rows expressing `e_i u_i` in later generators,
//! and a tensor expressing each product `u_i u_j`. The additive group is
//! `Z^r` modulo the torsion relations; elements are kept in the canonical
//! residue form determined by the Hermite basis of that relation lattice.

pub mod iso;
pub mod scalar;
pub mod two_sorted;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::zlattice::{
    vec_add, vec_is_zero, AbGroupPresentation, IntMatrix, QuotientData, Subgroup,
};

pub use scalar::ScalarRingPresentation;

/// An element of a presented ring, in canonical residue coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub coords: Vec<BigInt>,
}

/// A failed identity found by validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub(crate) fn diag(message: String) -> Diagnostic {
    Diagnostic { message }
}

/// A ring whose additive group is finitely generated, presented by structure
/// constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    rank: usize,
    periods: Vec<BigInt>,
    torsion: Vec<Vec<BigInt>>,
    mult: Vec<Vec<BigInt>>,
    group: AbGroupPresentation,
}

impl RingPresentation {
    /// Builds a presentation, enforcing shape invariants: periods are
    /// nonnegative, torsion rows are supported strictly after their own
    /// generator, and the tensor has `rank * rank` rows of width `rank`.
    pub fn new(
        periods: Vec<BigInt>,
        torsion: Vec<Vec<BigInt>>,
        mult: Vec<Vec<BigInt>>,
    ) -> Result<Self, Error> {
        let rank = periods.len();
        if torsion.len() != rank {
            return Err(Error::InvalidInput("torsion row count != rank".into()));
        }
        if mult.len() != rank * rank {
            return Err(Error::InvalidInput("tensor size != rank^2".into()));
        }
        for (i, p) in periods.iter().enumerate() {
            if p.is_negative() {
                return Err(Error::InvalidInput(format!("period {} negative", i + 1)));
            }
        }
        for (i, row) in torsion.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "torsion row {} has wrong width",
                    i + 1
                )));
            }
            if periods[i].is_zero() && !vec_is_zero(row) {
                return Err(Error::InvalidInput(format!(
                    "torsion row {} set for an infinite period",
                    i + 1
                )));
            }
            for (k, c) in row.iter().enumerate() {
                if k <= i && !c.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "torsion coefficient at k {} <= i {}",
                        k + 1,
                        i + 1
                    )));
                }
            }
        }
        for (idx, row) in mult.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "tensor row {} has wrong width",
                    idx
                )));
            }
        }
        let mut relations = Vec::new();
        for i in 0..rank {
            if periods[i].is_zero() {
                continue;
            }
            let mut row = vec![BigInt::zero(); rank];
            row[i] = periods[i].clone();
            for k in 0..rank {
                row[k] -= &torsion[i][k];
            }
            relations.push(row);
        }
        let group =
            AbGroupPresentation::new(rank, IntMatrix::from_row_vectors(relations, rank));
        Ok(RingPresentation {
            rank,
            periods,
            torsion,
            mult,
            group,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn periods(&self) -> &[BigInt] {
        &self.periods
    }

    pub fn torsion_row(&self, i: usize) -> &[BigInt] {
        &self.torsion[i]
    }

    pub fn mult_row(&self, i: usize, j: usize) -> &[BigInt] {
        &self.mult[i * self.rank + j]
    }

    /// The underlying additive group presentation.
    pub fn group(&self) -> &AbGroupPresentation {
        &self.group
    }

    pub fn additive_invariants(&self) -> crate::zlattice::AbInvariants {
        self.group.invariants()
    }

    pub fn is_finite(&self) -> bool {
        self.group.invariants().is_finite()
    }

    pub fn element(&self, coords: &[BigInt]) -> RingElement {
        assert_eq!(coords.len(), self.rank, "element width mismatch");
        RingElement {
            coords: self.group.reduce(coords),
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            coords: vec![BigInt::zero(); self.rank],
        }
    }

    pub fn generator(&self, i: usize) -> RingElement {
        let mut c = vec![BigInt::zero(); self.rank];
        c[i] = BigInt::one();
        self.element(&c)
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.element(&vec_add(&x.coords, &y.coords))
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        let c: Vec<BigInt> = x.coords.iter().map(|v| -v).collect();
        self.element(&c)
    }

    pub fn scale(&self, n: &BigInt, x: &RingElement) -> RingElement {
        let c: Vec<BigInt> = x.coords.iter().map(|v| n * v).collect();
        self.element(&c)
    }

    pub fn is_zero_element(&self, x: &RingElement) -> bool {
        vec_is_zero(&x.coords)
    }

    /// Bilinear extension of the tensor to arbitrary elements.
    pub fn multiply(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.element(&self.multiply_raw(&x.coords, &y.coords))
    }

    /// Product on raw coordinate vectors, unreduced.
    pub fn multiply_raw(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rank];
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                let row = self.mult_row(i, j);
                for k in 0..self.rank {
                    if !row[k].is_zero() {
                        out[k] += &c * &row[k];
                    }
                }
            }
        }
        out
    }

    /// Checks that multiplication is well defined on the presented group:
    /// every additive relation annihilates every generator on both sides.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let rel = self.group.relations();
        for r in 0..rel.rows() {
            let rho = rel.row(r);
            for j in 0..self.rank {
                let mut left = vec![BigInt::zero(); self.rank];
                let mut right = vec![BigInt::zero(); self.rank];
                for i in 0..self.rank {
                    if rho[i].is_zero() {
                        continue;
                    }
                    let lrow = self.mult_row(i, j);
                    let rrow = self.mult_row(j, i);
                    for k in 0..self.rank {
                        left[k] += &rho[i] * &lrow[k];
                        right[k] += &rho[i] * &rrow[k];
                    }
                }
                if !self.group.is_zero_element(&left) {
                    out.push(diag(format!(
                        "relation {} times generator {} does not vanish",
                        r + 1,
                        j + 1
                    )));
                }
                if !self.group.is_zero_element(&right) {
                    out.push(diag(format!(
                        "generator {} times relation {} does not vanish",
                        j + 1,
                        r + 1
                    )));
                }
            }
        }
        out
    }

    /// Presents the subring additively spanned by the given family of rows
    /// (old coordinates). Fails if the family is not closed under
    /// multiplication modulo its span.
    pub fn presentation_on_family(&self, family: &IntMatrix) -> Result<RingPresentation, Error> {
        assert_eq!(family.cols(), self.rank, "family width mismatch");
        let r = family.rows();
        let rel = self.group.relations();
        // Sequential periods and torsion rows against suffix spans.
        let mut periods = vec![BigInt::zero(); r];
        let mut torsion = vec![vec![BigInt::zero(); r]; r];
        for i in 0..r {
            let suffix = family.with_rows_removed(|k| k > i);
            let sub = Subgroup::new(&self.group, &suffix);
            let e = sub.element_order(family.row(i));
            periods[i] = e.clone();
            if e.is_zero() {
                continue;
            }
            let target: Vec<BigInt> = family.row(i).iter().map(|v| &e * v).collect();
            let stacked = suffix.stack(rel);
            let y = crate::zlattice::express_in_rows(&stacked, &target).ok_or_else(|| {
                Error::CheckFailed("torsion expression unsolvable".into())
            })?;
            for k in 0..suffix.rows() {
                torsion[i][i + 1 + k] = y[k].clone();
            }
        }
        // Multiplication tensor in family coordinates.
        let stacked = family.stack(rel);
        let mut mult = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                let prod = self.multiply_raw(family.row(a), family.row(b));
                let y = crate::zlattice::express_in_rows(&stacked, &prod)
                    .ok_or(Error::NotGenerating)?;
                mult.push(y[..r].to_vec());
            }
        }
        RingPresentation::new(periods, torsion, mult)
    }

    /// Re-presents the same ring on a new generating family. Rows of `t`
    /// are the new generators in old coordinates; they must generate the
    /// additive group.
    pub fn change_basis(&self, t: &IntMatrix) -> Result<RingPresentation, Error> {
        if !self.family_generates(t) {
            return Err(Error::NotGenerating);
        }
        self.presentation_on_family(t)
    }

    /// Whether the rows of `t` generate the additive group.
    pub fn family_generates(&self, t: &IntMatrix) -> bool {
        let sub = Subgroup::new(&self.group, t);
        (0..self.rank).all(|i| {
            let mut e = vec![BigInt::zero(); self.rank];
            e[i] = BigInt::one();
            sub.membership(&e)
        })
    }

    /// Removes generators of period 1, substituting them away. Returns the
    /// normalized presentation and the kept-generator rows in the original
    /// coordinates.
    pub fn normalize(&self) -> (RingPresentation, IntMatrix) {
        let mut current = self.clone();
        let mut kept = IntMatrix::identity(self.rank);
        loop {
            let Some(drop) = current.periods.iter().position(|p| p.is_one()) else {
                return (current, kept);
            };
            let family = IntMatrix::identity(current.rank).with_rows_removed(|i| i != drop);
            let next = current
                .change_basis(&family)
                .expect("dropping a period-1 generator keeps a generating family");
            kept = family.mul(&kept);
            current = next;
        }
    }

    /// Quotient by an ideal given as a subgroup; multiplication must descend
    /// (each basis element of the ideal annihilates into the ideal).
    pub fn quotient_ring(&self, ideal: &Subgroup) -> Result<(RingPresentation, QuotientData), Error> {
        if ideal.ambient() != &self.group {
            return Err(Error::AmbientMismatch);
        }
        for g in ideal.rows().rows_iter() {
            for j in 0..self.rank {
                let mut e = vec![BigInt::zero(); self.rank];
                e[j] = BigInt::one();
                if !ideal.membership(&self.multiply_raw(g, &e))
                    || !ideal.membership(&self.multiply_raw(&e, g))
                {
                    return Err(Error::Precondition(
                        "multiplication does not descend to the quotient".into(),
                    ));
                }
            }
        }
        let q = QuotientData::of(ideal);
        let k = q.lifts.rows();
        let mut mult = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                let prod = self.multiply_raw(q.lifts.row(a), q.lifts.row(b));
                mult.push(q.project(&prod));
            }
        }
        let torsion = vec![vec![BigInt::zero(); k]; k];
        let pres = RingPresentation::new(q.periods.clone(), torsion, mult)?;
        debug_assert!(pres.validate().is_empty());
        Ok((pres, q))
    }

    /// Direct sum of two presentations (componentwise multiplication).
    pub fn direct_sum(&self, other: &RingPresentation) -> RingPresentation {
        let r1 = self.rank;
        let r2 = other.rank;
        let n = r1 + r2;
        let mut periods = self.periods.clone();
        periods.extend_from_slice(&other.periods);
        let mut torsion = Vec::with_capacity(n);
        for i in 0..r1 {
            let mut row = self.torsion[i].clone();
            row.extend(vec![BigInt::zero(); r2]);
            torsion.push(row);
        }
        for i in 0..r2 {
            let mut row = vec![BigInt::zero(); r1];
            row.extend_from_slice(&other.torsion[i]);
            torsion.push(row);
        }
        let mut mult = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![BigInt::zero(); n];
                if a < r1 && b < r1 {
                    row[..r1].clone_from_slice(self.mult_row(a, b));
                } else if a >= r1 && b >= r1 {
                    row[r1..].clone_from_slice(other.mult_row(a - r1, b - r1));
                }
                mult.push(row);
            }
        }
        RingPresentation::new(periods, torsion, mult)
            .expect("direct sum of valid shapes is valid")
    }

    /// All element coordinate vectors when the ring is finite.
    pub fn enumerate_elements(&self) -> Option<Vec<Vec<BigInt>>> {
        self.group.enumerate_elements()
    }
}
