//! The twin generator: re-embedding the addition of a nonregular ring at a
//! finite index coprime to the order of M/N, and the prime-avoiding twist
//! arithmetic used to certify it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::adapted::adapted_basis;
use crate::error::Error;
use crate::ideals::InvariantReport;
use crate::ring::two_sorted::into_family_coords;
use crate::ring::RingPresentation;
use crate::verdict::EquivCertificate;
use crate::zlattice::{is_unimodular, IntMatrix};

/// Parameters of a twin: the per-slot indices d_m..d_{n-1}, a unimodular
/// p x p mixing matrix, and an optional twist stage replacing each d_k by
/// d_k + q_kj e.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    pub d_list: Vec<BigInt>,
    pub mixing: IntMatrix,
    pub stage: Option<usize>,
}

impl TwistSpec {
    pub fn plain(ds: &[i64]) -> TwistSpec {
        TwistSpec {
            d_list: ds.iter().map(|&d| BigInt::from(d)).collect(),
            mixing: IntMatrix::identity(ds.len()),
            stage: None,
        }
    }
}

/// q_kj and alpha_kj: the product of the first j primes avoiding the prime
/// set of d, and d + q*e. No prime up to the j-th pool prime divides alpha.
pub fn twist_sequence(d: &BigInt, e: &BigInt, j: usize) -> Result<(BigInt, BigInt), Error> {
    if j == 0 {
        return Err(Error::Precondition("stage index must be at least 1".into()));
    }
    if !d.gcd(e).is_one() {
        return Err(Error::Precondition("gcd(d, e) must be 1".into()));
    }
    let mut q = BigInt::one();
    let mut pool_max = BigInt::zero();
    let mut found = 0usize;
    let mut p = BigInt::from(2);
    while found < j {
        if is_prime(&p) && !(d % &p).is_zero() {
            q *= &p;
            pool_max = p.clone();
            found += 1;
        }
        p += 1;
    }
    let alpha = d + &q * e;
    // Guarantee: no prime up to the j-th pool prime divides alpha.
    let mut check = BigInt::from(2);
    while check <= pool_max {
        if is_prime(&check) {
            assert!(
                !(&alpha % &check).is_zero(),
                "twist guarantee failed at prime {check}"
            );
        }
        check += 1;
    }
    Ok((q, alpha))
}

fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds the twin of a nonregular ring: the adapted presentation with the
/// (c) segment re-embedded through mixing * diag(d), together with the
/// certificate embedding the original ring into the twin.
pub fn twin(
    ring: &RingPresentation,
    report: &InvariantReport,
    spec: &TwistSpec,
) -> Result<(RingPresentation, EquivCertificate), Error> {
    let ab = adapted_basis(ring, report);
    let p = ab.p();
    if p == 0 {
        return Err(Error::Precondition("twin undefined when M = N".into()));
    }
    let c_len = ab.n - ab.m;
    let mut ds = spec.d_list.clone();
    if ds.len() == p && c_len > p {
        ds.extend(std::iter::repeat(BigInt::one()).take(c_len - p));
    }
    if ds.len() != c_len {
        return Err(Error::InvalidInput(format!(
            "need {p} (or {c_len}) twist indices, got {}",
            spec.d_list.len()
        )));
    }
    if ds.iter().any(|d| !d.is_positive()) {
        return Err(Error::InvalidInput("twist indices must be positive".into()));
    }
    let e = ab.e();
    let mut d_total = BigInt::one();
    for d in &ds {
        d_total *= d;
    }
    if !d_total.gcd(&e).is_one() {
        return Err(Error::Precondition(format!(
            "gcd(d, e) must be 1; d = {d_total}, e = {e}"
        )));
    }
    if spec.mixing.rows() != p || spec.mixing.cols() != p || !is_unimodular(&spec.mixing) {
        return Err(Error::InvalidInput(
            "mixing matrix must be unimodular of size p x p".into(),
        ));
    }
    let ds = match spec.stage {
        None => ds,
        Some(j) => {
            let mut out = Vec::with_capacity(ds.len());
            for d in &ds {
                let (_, alpha) = twist_sequence(d, &e, j)?;
                out.push(alpha);
            }
            out
        }
    };

    // The twin presentation: same shape as the adapted one, with the (b)
    // torsion rows re-aimed at mixed, scaled (c) slots.
    let total = ab.r;
    let pres = &ab.presentation;
    let mut periods = pres.periods().to_vec();
    let mut torsion: Vec<Vec<BigInt>> = (0..total).map(|i| pres.torsion_row(i).to_vec()).collect();
    for i in 0..p {
        let row = &mut torsion[ab.l - 1 + i];
        for k in 0..c_len {
            row[ab.m - 1 + k] = BigInt::zero();
        }
        for k in 0..p {
            row[ab.m - 1 + k] = &spec.mixing[(i, k)] * &ds[k];
        }
    }
    let mult: Vec<Vec<BigInt>> = (0..total)
        .flat_map(|a| (0..total).map(move |b| (a, b)))
        .map(|(a, b)| pres.mult_row(a, b).to_vec())
        .collect();
    let twin_pres = RingPresentation::new(std::mem::take(&mut periods), torsion, mult)?;
    let issues = twin_pres.validate();
    if !issues.is_empty() {
        return Err(Error::CheckFailed(format!(
            "twin presentation invalid: {}",
            issues[0]
        )));
    }

    // The embedding of the adapted basis into the twin.
    let mut phi_adapted = IntMatrix::zero(total, total);
    for i in 0..total {
        if ab.segment_c().contains(&i) {
            let k = i - (ab.m - 1);
            if k < p {
                for t in 0..p {
                    phi_adapted[(i, ab.m - 1 + t)] = &spec.mixing[(k, t)] * &ds[t];
                }
            } else {
                phi_adapted[(i, i)] = ds[k].clone();
            }
        } else {
            phi_adapted[(i, i)] = BigInt::one();
        }
    }
    // Expand to the original generators.
    let expand = expansion_matrix(ring, &ab.rows);
    let phi = expand.mul(&phi_adapted);

    let s0_rows: Vec<Vec<BigInt>> = ab
        .segment_c()
        .map(|i| {
            let mut row = vec![BigInt::zero(); total];
            row[i] = BigInt::one();
            row
        })
        .collect();
    let cert = EquivCertificate {
        phi,
        r0_gens: ab.addition_rows.clone(),
        s0_gens: IntMatrix::from_row_vectors(s0_rows, total),
        d: d_total,
        e,
    };
    Ok((twin_pres, cert))
}

/// Matrix expressing each original generator in family coordinates.
pub(crate) fn expansion_matrix(ring: &RingPresentation, family: &IntMatrix) -> IntMatrix {
    let n = ring.rank();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            into_family_coords(ring.group(), family, &e).expect("adapted family generates")
        })
        .collect();
    IntMatrix::from_row_vectors(rows, family.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::invariant_report;
    use crate::samples;

    #[test]
    fn twist_sequence_examples() {
        let (q, alpha) =
            twist_sequence(&BigInt::from(3), &BigInt::from(2), 2).unwrap();
        assert_eq!(q, BigInt::from(10));
        assert_eq!(alpha, BigInt::from(23));
        let (q, alpha) = twist_sequence(&BigInt::from(1), &BigInt::from(2), 1).unwrap();
        assert_eq!(q, BigInt::from(2));
        assert_eq!(alpha, BigInt::from(5));
        assert!(twist_sequence(&BigInt::from(2), &BigInt::from(2), 1).is_err());
    }

    #[test]
    fn twin_of_fixture() {
        let r = samples::nonregular_rank3();
        let rep = invariant_report(&r);
        let (s, cert) = twin(&r, &rep, &TwistSpec::plain(&[3])).unwrap();
        assert!(s.validate().is_empty());
        assert_eq!(cert.d, BigInt::from(3));
        assert_eq!(cert.e, BigInt::from(2));
        // Relations: 2 v1 = 3 w, 2 s = 0; product v1 v1 = s.
        assert_eq!(s.periods()[0], BigInt::from(2));
        assert_eq!(s.torsion_row(0)[1], BigInt::from(3));
        assert_eq!(s.periods()[3], BigInt::from(2));
        assert!(!crate::zlattice::vec_is_zero(s.mult_row(0, 0)));
        // Additive group unchanged: Z^2 + Z/2.
        assert_eq!(s.additive_invariants(), r.additive_invariants());
    }

    #[test]
    fn twin_rejects_bad_inputs() {
        let r = samples::nonregular_rank3();
        let rep = invariant_report(&r);
        assert!(twin(&r, &rep, &TwistSpec::plain(&[2])).is_err());
        let z = samples::integers();
        let repz = invariant_report(&z);
        assert!(twin(&z, &repz, &TwistSpec::plain(&[3])).is_err());
    }
}
