//! Small ready-made presentations used across tests, docs and the CLI
//! examples.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{RingPresentation, ScalarRingPresentation};

/// Builds a presentation from small integers. `torsion` lists, per generator
/// `i` (0-based), the pairs `(k, t_ik)`; `mult` lists per pair `(i, j)` the
/// pairs `(k, t_ijk)`.
pub fn build_ring(
    periods: &[i64],
    torsion: &[(usize, &[(usize, i64)])],
    mult: &[((usize, usize), &[(usize, i64)])],
) -> RingPresentation {
    let rank = periods.len();
    let p: Vec<BigInt> = periods.iter().map(|&e| BigInt::from(e)).collect();
    let mut t = vec![vec![BigInt::zero(); rank]; rank];
    for (i, pairs) in torsion {
        for (k, c) in *pairs {
            t[*i][*k] = BigInt::from(*c);
        }
    }
    let mut m = vec![vec![BigInt::zero(); rank]; rank * rank];
    for ((i, j), pairs) in mult {
        for (k, c) in *pairs {
            m[i * rank + j][*k] = BigInt::from(*c);
        }
    }
    RingPresentation::new(p, t, m).expect("sample presentation is well shaped")
}

/// Free abelian group of the given rank with zero multiplication.
pub fn zero_ring(rank: usize) -> RingPresentation {
    build_ring(&vec![0; rank], &[], &[])
}

/// The integers as a ring: one free generator squaring to itself.
pub fn integers() -> RingPresentation {
    build_ring(&[0], &[], &[((0, 0), &[(0, 1)])])
}

/// Z/n as a ring.
pub fn integers_mod(n: i64) -> RingPresentation {
    build_ring(&[n], &[], &[((0, 0), &[(0, 1)])])
}

pub fn integers_scalar() -> ScalarRingPresentation {
    ScalarRingPresentation::new(integers(), &[BigInt::one()]).unwrap()
}

pub fn integers_mod_scalar(n: i64) -> ScalarRingPresentation {
    ScalarRingPresentation::new(integers_mod(n), &[BigInt::one()]).unwrap()
}

/// Z[x]/(x^2): generators (1, x) with x^2 = 0.
pub fn dual_numbers() -> ScalarRingPresentation {
    let ring = build_ring(
        &[0, 0],
        &[],
        &[
            ((0, 0), &[(0, 1)]),
            ((0, 1), &[(1, 1)]),
            ((1, 0), &[(1, 1)]),
        ],
    );
    ScalarRingPresentation::new(ring, &[BigInt::one(), BigInt::zero()]).unwrap()
}

/// The nonregular reference fixture used throughout the test suites: free
/// generators u1, u2 and an order-2 generator t, with the single product
/// u1*u1 = t. Its annihilator is <2u1, u2, t>, its square <t>, and the
/// finite quotient between the two saturation-derived ideals has order 2.
pub fn nonregular_rank3() -> RingPresentation {
    build_ring(&[0, 0, 2], &[(2, &[])], &[((0, 0), &[(2, 1)])])
}
