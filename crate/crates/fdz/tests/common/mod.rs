//! Shared deterministic corpus generation for the integration suites.

use fdz::ring::RingPresentation;
use fdz::zlattice::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Deterministic xorshift generator so suites reproduce bit for bit.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.wrapping_mul(0x9e3779b97f4a7c15) | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform in [-bound, bound].
    pub fn int(&mut self, bound: i64) -> i64 {
        (self.below((2 * bound + 1) as u64) as i64) - bound
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

pub fn random_matrix(rng: &mut Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.int(bound)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

/// A random well-defined presentation on a diagonal additive group: periods
/// drawn from 0 and small torsion exponents, tensor entries constrained so
/// multiplication descends to the quotient.
pub fn random_presentation(rng: &mut Rng, max_rank: usize, max_exponent: i64) -> RingPresentation {
    let rank = 1 + rng.below(max_rank as u64) as usize;
    let torsion_choices: Vec<i64> = (2..=max_exponent).collect();
    let periods: Vec<BigInt> = (0..rank)
        .map(|_| {
            if rng.below(2) == 0 {
                BigInt::zero()
            } else {
                BigInt::from(*rng.pick(&torsion_choices))
            }
        })
        .collect();
    let torsion = vec![vec![BigInt::zero(); rank]; rank];
    let mut mult = vec![vec![BigInt::zero(); rank]; rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            for k in 0..rank {
                let e_i = &periods[i];
                let e_j = &periods[j];
                let e_k = &periods[k];
                let coeff = if e_k.is_zero() {
                    if e_i.is_zero() && e_j.is_zero() {
                        BigInt::from(rng.int(2))
                    } else {
                        BigInt::zero()
                    }
                } else {
                    // Multiples of e_k / gcd(e_k, e_i) and of
                    // e_k / gcd(e_k, e_j) keep the relations consistent.
                    let step_i = if e_i.is_zero() {
                        BigInt::one()
                    } else {
                        e_k / e_k.gcd(e_i)
                    };
                    let step_j = if e_j.is_zero() {
                        BigInt::one()
                    } else {
                        e_k / e_k.gcd(e_j)
                    };
                    let step = step_i.lcm(&step_j);
                    &step * BigInt::from(rng.int(2))
                };
                mult[i * rank + j][k] = coeff;
            }
        }
    }
    let r = RingPresentation::new(periods, torsion, mult).expect("shape is valid");
    assert!(
        r.validate().is_empty(),
        "constrained sampling must produce well-defined presentations"
    );
    r
}

/// A random presentation that is torsion-free additively.
pub fn random_torsion_free(rng: &mut Rng, max_rank: usize) -> RingPresentation {
    loop {
        let r = random_presentation(rng, max_rank, 2);
        if r.additive_invariants().torsion_factors.is_empty() {
            return r;
        }
    }
}

/// A random nonregular presentation (distinct saturation ideals).
pub fn random_nonregular(rng: &mut Rng, max_rank: usize, max_exponent: i64) -> RingPresentation {
    loop {
        let r = random_presentation(rng, max_rank, max_exponent);
        let rep = fdz::ideals::invariant_report(&r);
        if !rep.e.is_one() {
            return r;
        }
    }
}

/// A unimodular matrix with all entries of T and of its inverse bounded by
/// 2, built from elementary operations.
pub fn random_bounded_unimodular(rng: &mut Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut t = IntMatrix::identity(n);
    let mut tinv = IntMatrix::identity(n);
    let bound = BigInt::from(2);
    for _ in 0..12 {
        let mut cand = t.clone();
        let mut cand_inv = tinv.clone();
        match rng.below(3) {
            0 if n > 1 => {
                let i = rng.below(n as u64) as usize;
                let mut j = rng.below(n as u64) as usize;
                if i == j {
                    j = (j + 1) % n;
                }
                let c = BigInt::from(if rng.below(2) == 0 { 1 } else { -1 });
                // Row op on T corresponds to the inverse column op on T^-1.
                cand.add_mul_row(i, j, &c);
                let neg = -c;
                cand_inv.add_mul_col(j, i, &neg);
            }
            1 if n > 1 => {
                let i = rng.below(n as u64) as usize;
                let mut j = rng.below(n as u64) as usize;
                if i == j {
                    j = (j + 1) % n;
                }
                cand.swap_rows(i, j);
                cand_inv.swap_cols(i, j);
            }
            _ => {
                let i = rng.below(n as u64) as usize;
                cand.negate_row(i);
                cand_inv.negate_col(i);
            }
        }
        if cand.max_abs() <= bound && cand_inv.max_abs() <= bound {
            t = cand;
            tinv = cand_inv;
        }
    }
    debug_assert_eq!(t.mul(&tinv), IntMatrix::identity(n));
    (t, tinv)
}
