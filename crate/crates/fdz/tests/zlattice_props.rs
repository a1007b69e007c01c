//! Property tests for the exact linear algebra layer.

use fdz::zlattice::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_dim: usize, max_abs: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-max_abs..=max_abs, r * c).prop_map(move |entries| {
            let rows: Vec<Vec<i64>> = entries.chunks(c).map(|ch| ch.to_vec()).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_decomposition_holds(a in small_matrix(4, 30)) {
        let dec = snf(&a);
        prop_assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.d.clone());
        prop_assert!(is_unimodular(&dec.u));
        prop_assert!(is_unimodular(&dec.v));
        let diag = dec.diagonal();
        for i in 0..diag.len() {
            prop_assert!(!diag[i].is_negative());
            if i + 1 < diag.len() {
                if diag[i].is_zero() {
                    prop_assert!(diag[i + 1].is_zero());
                } else if !diag[i + 1].is_zero() {
                    prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_convention_locked(a in small_matrix(4, 30)) {
        let (h, u) = hnf(&a);
        prop_assert_eq!(u.mul(&a), h.clone());
        prop_assert!(is_unimodular(&u));
        // Echelon with positive pivots, entries above reduced into [0, pivot).
        let mut last_pivot: Option<usize> = None;
        for i in 0..h.rows() {
            let pivot = h.row(i).iter().position(|e| !e.is_zero());
            match pivot {
                None => {
                    for k in i..h.rows() {
                        prop_assert!(h.row(k).iter().all(Zero::is_zero));
                    }
                    break;
                }
                Some(j) => {
                    if let Some(prev) = last_pivot {
                        prop_assert!(j > prev);
                    }
                    last_pivot = Some(j);
                    prop_assert!(h[(i, j)].is_positive());
                    for k in 0..i {
                        prop_assert!(!h[(k, j)].is_negative());
                        prop_assert!(h[(k, j)] < h[(i, j)]);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_is_exact_and_saturated(a in small_matrix(4, 10)) {
        let k = kernel_basis(&a);
        for i in 0..k.rows() {
            let img = a.mul_vec(k.row(i));
            prop_assert!(img.iter().all(Zero::is_zero));
        }
        // Saturation: the kernel lattice of an integer matrix is pure, so
        // saturating changes nothing.
        let amb = AbGroupPresentation::free(a.cols());
        let sub = Subgroup::new(&amb, &k);
        prop_assert_eq!(sub.saturation(), sub);
    }

    #[test]
    fn solve_round_trips(a in small_matrix(3, 8), xs in proptest::collection::vec(-5i64..=5, 3)) {
        // Build a solvable right-hand side, then solve it back.
        let x: Vec<BigInt> = xs.iter().take(a.cols()).map(|&v| BigInt::from(v)).collect();
        if x.len() == a.cols() {
            let b = a.mul_vec(&x);
            let sol = solve(&a, &b).expect("constructed system is solvable");
            prop_assert_eq!(a.mul_vec(&sol), b);
        }
    }

    #[test]
    fn saturation_properties(gens in proptest::collection::vec(
        proptest::collection::vec(-6i64..=6, 3), 1..3), rel in 1i64..=8) {
        // Ambient Z^2 + Z/rel.
        let amb = AbGroupPresentation::new(
            3,
            IntMatrix::from_rows(&[vec![0, 0, rel]]),
        );
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let s = Subgroup::from_gen_vectors(&amb, rows);
        let sat = s.saturation();
        prop_assert!(sat.contains(&s));
        prop_assert_eq!(sat.saturation(), sat.clone());
        // The torsion subgroup always sits inside any saturation.
        let torsion = Subgroup::zero(&amb).saturation();
        prop_assert!(sat.contains(&torsion));
        // sat(S)/S is finite.
        let x = express_rows_in(sat.rows(), s.rows());
        let inv = AbGroupPresentation::new(sat.rows().rows(), x).invariants();
        prop_assert!(inv.is_finite());
    }

    #[test]
    fn invariants_are_presentation_independent(
        periods in proptest::collection::vec(0i64..=6, 1..4),
        seed in 0u64..1000,
    ) {
        let diag: Vec<BigInt> = periods.iter().map(|&p| BigInt::from(p)).collect();
        let g = AbGroupPresentation::diagonal(&diag);
        // Random unimodular row mix of the relations.
        let n = periods.len();
        let rel = g.relations().clone();
        let mut mixed = rel.clone();
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        if mixed.rows() > 1 {
            for _ in 0..6 {
                let i = (next() as usize) % mixed.rows();
                let j = (next() as usize) % mixed.rows();
                if i != j {
                    let c = BigInt::from((next() % 3) as i64 - 1);
                    mixed.add_mul_row(i, j, &c);
                }
            }
        }
        let g2 = AbGroupPresentation::new(n, mixed);
        prop_assert_eq!(g.invariants(), g2.invariants());
    }
}
