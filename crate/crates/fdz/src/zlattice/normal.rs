//! Hermite and Smith normal forms with full transformation tracking,
//! integer kernels and exact linear solving.
//!
//! Conventions, fixed once and regression-locked:
//! * HNF is row-style: `U * A = H` with `U` unimodular, `H` in row echelon
//!   form, pivots positive, and every entry above a pivot reduced into
//!   `[0, pivot)`.
//! * SNF satisfies `U * A * V = D` with `U`, `V` unimodular and `D` diagonal
//!   with nonnegative entries in a divisibility chain; zeros trail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of a Smith normal form computation: `u * a * v = d`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Extended gcd with `g >= 0` and `g = s*a + t*b`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        s = -s;
        t = -t;
    }
    (g, s, t)
}

/// Row-style Hermite normal form. Returns `(h, u)` with `u * a = h`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Clear everything below position (r, c) against the pivot.
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if !h[(r, c)].is_zero() && (&h[(i, c)] % &h[(r, c)]).is_zero() {
                let q = -(&h[(i, c)] / &h[(r, c)]);
                h.add_mul_row(i, r, &q);
                u.add_mul_row(i, r, &q);
                continue;
            }
            let (g, s, t) = ext_gcd(&h[(r, c)], &h[(i, c)]);
            let p = -(&h[(i, c)] / &g);
            let q = &h[(r, c)] / &g;
            h.transform_rows(r, i, &s, &t, &p, &q);
            u.transform_rows(r, i, &s, &t, &p, &q);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // Reduce entries above the pivot into [0, pivot).
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                let neg_q = -q;
                h.add_mul_row(i, r, &neg_q);
                u.add_mul_row(i, r, &neg_q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form with transformations.
pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);

    let mut t = 0;
    while t < n {
        // Locate an entry of minimal absolute value in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d[(i, j)].abs() < d[(pi, pj)].abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut rotated = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                if (&d[(i, t)] % &d[(t, t)]).is_zero() {
                    // Pivot divides: a plain subtraction keeps the pivot.
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    d.add_mul_row(i, t, &q);
                    u.add_mul_row(i, t, &q);
                } else {
                    let (g, s, w) = ext_gcd(&d[(t, t)], &d[(i, t)]);
                    let p = -(&d[(i, t)] / &g);
                    let q = &d[(t, t)] / &g;
                    d.transform_rows(t, i, &s, &w, &p, &q);
                    u.transform_rows(t, i, &s, &w, &p, &q);
                    rotated = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                if (&d[(t, j)] % &d[(t, t)]).is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    d.add_mul_col(j, t, &q);
                    v.add_mul_col(j, t, &q);
                } else {
                    let (g, s, w) = ext_gcd(&d[(t, t)], &d[(t, j)]);
                    let p = -(&d[(t, j)] / &g);
                    let q = &d[(t, t)] / &g;
                    d.transform_cols(t, j, &s, &w, &p, &q);
                    v.transform_cols(t, j, &s, &w, &p, &q);
                    rotated = true;
                }
            }
            let col_clear = (t + 1..rows).all(|i| d[(i, t)].is_zero());
            let row_clear = (t + 1..cols).all(|j| d[(t, j)].is_zero());
            if !rotated && col_clear && row_clear {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    // Enforce the divisibility chain d_i | d_{i+1}.
    loop {
        let mut changed = false;
        for i in 0..n.saturating_sub(1) {
            let a_i = d[(i, i)].clone();
            let b = d[(i + 1, i + 1)].clone();
            if a_i.is_zero() || b.is_zero() {
                // Zeros trail by construction; a zero here means both are zero.
                continue;
            }
            if (&b % &a_i).is_zero() {
                continue;
            }
            // Fold d_{i+1} into column i, then restore diagonal shape with
            // gcd at (i, i) and lcm at (i+1, i+1).
            d.add_mul_col(i, i + 1, &BigInt::one());
            v.add_mul_col(i, i + 1, &BigInt::one());
            let (g, s, w) = ext_gcd(&a_i, &b);
            let p = -(&b / &g);
            let q = &a_i / &g;
            d.transform_rows(i, i + 1, &s, &w, &p, &q);
            u.transform_rows(i, i + 1, &s, &w, &p, &q);
            // Clear the (i, i+1) slot left by the row transform.
            let rem = d[(i, i + 1)].clone();
            debug_assert!((&rem % &g).is_zero());
            let coeff = -(&rem / &g);
            d.add_mul_col(i + 1, i, &coeff);
            v.add_mul_col(i + 1, i, &coeff);
            debug_assert!(d[(i, i + 1)].is_zero());
            debug_assert!(d[(i + 1, i)].is_zero());
            if d[(i + 1, i + 1)].is_negative() {
                d.negate_row(i + 1);
                u.negate_row(i + 1);
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }

    SmithDecomposition { u, d, v }
}

/// Nonzero invariant factors of `a`, in divisibility order (including 1s).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    snf(a)
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect()
}

/// A primitive basis of the integer kernel `{v : a * v = 0}`, one kernel
/// vector per row of the result.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let at = a.transpose();
    let (h, u) = hnf(&at);
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row_vec(i))
        .collect();
    IntMatrix::from_row_vectors(rows, a.cols())
}

/// Finds one integer solution `x` of `a * x = b`, if any.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve");
    let dec = snf(a);
    let c = dec.u.mul_vec(b);
    let n = a.cols();
    let k = a.rows().min(n);
    let mut y = vec![BigInt::zero(); n];
    for i in 0..a.rows() {
        if i < k && !dec.d[(i, i)].is_zero() {
            let (q, r) = c[i].div_rem(&dec.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    Some(dec.v.mul_vec(&y))
}

/// Expresses `x` as an integer combination of the rows of `basis`:
/// returns `y` with `y * basis = x` if one exists.
pub fn express_in_rows(basis: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    solve(&basis.transpose(), x)
}

/// Inverts a unimodular matrix. Panics if the matrix is not unimodular.
pub fn inverse_unimodular(m: &IntMatrix) -> IntMatrix {
    assert_eq!(m.rows(), m.cols());
    let (h, u) = hnf(m);
    assert_eq!(
        h,
        IntMatrix::identity(m.rows()),
        "matrix is not unimodular"
    );
    u
}

/// |det| of a square matrix, via the product of its invariant factors.
pub fn det_abs(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let diag = snf(m).diagonal();
    let mut p = BigInt::one();
    for d in diag {
        if d.is_zero() {
            return BigInt::zero();
        }
        p *= d;
    }
    p
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && det_abs(m).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::matrix::vec_of_i64;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_snf(a: &IntMatrix) {
        let dec = snf(a);
        assert_eq!(dec.u.mul(a).mul(&dec.v), dec.d, "U*A*V != D");
        assert!(is_unimodular(&dec.u), "U not unimodular");
        assert!(is_unimodular(&dec.v), "V not unimodular");
        let diag = dec.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() {
                if diag[i].is_zero() {
                    assert!(diag[i + 1].is_zero(), "zeros must trail");
                } else if !diag[i + 1].is_zero() {
                    assert!((&diag[i + 1] % &diag[i]).is_zero(), "divisibility");
                }
            }
        }
        for i in 0..dec.d.rows() {
            for j in 0..dec.d.cols() {
                if i != j {
                    assert!(dec.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(2);
        let dec = snf(&a);
        assert_eq!(dec.d, IntMatrix::identity(2));
        check_snf(&a);
    }

    #[test]
    fn snf_two_four() {
        // Oracle: d1 = gcd of all entries, d1*d2 = |det|.
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let g = BigInt::from(2);
        let det = BigInt::from((2 * 8i64 - 4 * 6).abs());
        let dec = snf(&a);
        assert_eq!(dec.d[(0, 0)], g);
        assert_eq!(&dec.d[(0, 0)] * &dec.d[(1, 1)], det);
        assert_eq!(dec.d[(1, 1)], BigInt::from(4));
        check_snf(&a);
    }

    #[test]
    fn snf_zero_one_by_one() {
        let a = m(&[vec![0]]);
        let dec = snf(&a);
        assert!(dec.d[(0, 0)].is_zero());
        check_snf(&a);
    }

    #[test]
    fn snf_divisibility_fix() {
        let a = m(&[vec![6, 0], vec![0, 4]]);
        let dec = snf(&a);
        assert_eq!(dec.d[(0, 0)], BigInt::from(2));
        assert_eq!(dec.d[(1, 1)], BigInt::from(12));
        check_snf(&a);
    }

    #[test]
    fn snf_rectangular() {
        check_snf(&m(&[vec![2, 4, 6]]));
        check_snf(&m(&[vec![3], vec![5], vec![7]]));
        check_snf(&m(&[vec![0, 0], vec![0, 0], vec![0, 0]]));
    }

    #[test]
    fn hnf_zero() {
        let a = m(&[vec![0]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, a);
        assert_eq!(u, IntMatrix::identity(1));
    }

    #[test]
    fn hnf_already_reduced() {
        let a = m(&[vec![2, 1], vec![0, 3]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, a);
        assert_eq!(u.mul(&a), h);
        assert!(is_unimodular(&u));
    }

    #[test]
    fn hnf_row_reduce() {
        let a = m(&[vec![1, 1], vec![1, -1]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(u.mul(&a), h);
        assert!(is_unimodular(&u));
    }

    #[test]
    fn kernel_identity_empty() {
        let k = kernel_basis(&IntMatrix::identity(3));
        assert_eq!(k.rows(), 0);
        assert_eq!(k.cols(), 3);
    }

    #[test]
    fn kernel_rank_one() {
        let a = m(&[vec![1, 2], vec![2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 1);
        // Oracle: A*v = 0 and the coordinates are coprime.
        let v = k.row_vec(0);
        assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        let g = v[0].gcd(&v[1]);
        assert!(g.is_one());
    }

    #[test]
    fn kernel_zero_map() {
        let a = m(&[vec![0, 0]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows(), 2);
        assert!(is_unimodular(&k));
    }

    #[test]
    fn solve_examples() {
        let a = m(&[vec![2]]);
        assert_eq!(solve(&a, &vec_of_i64(&[4])), Some(vec_of_i64(&[2])));
        assert_eq!(solve(&a, &vec_of_i64(&[3])), None);
        let a = m(&[vec![1, 1], vec![1, -1]]);
        let x = solve(&a, &vec_of_i64(&[0, 2])).unwrap();
        assert_eq!(a.mul_vec(&x), vec_of_i64(&[0, 2]));
        assert_eq!(x, vec_of_i64(&[1, -1]));
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = m(&[vec![1, 2], vec![0, 1]]);
        let inv = inverse_unimodular(&a);
        assert_eq!(a.mul(&inv), IntMatrix::identity(2));
        assert_eq!(inv.mul(&a), IntMatrix::identity(2));
    }
}
