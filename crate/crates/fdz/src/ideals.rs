//! The invariant ideals of a presented ring: annihilator, square, isolators,
//! the saturation-derived ideals M and N with their finite quotient, the
//! addition/foundation splitting, regularity, tameness and width bounds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ring::RingPresentation;
use crate::zlattice::{
    express_rows_in, kernel_basis, AbGroupPresentation, AbInvariants, IntMatrix, Subgroup,
};

/// Everything the invariant pass computes for one ring.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub ann: Subgroup,
    pub square: Subgroup,
    pub is_square: Subgroup,
    pub delta: Subgroup,
    pub addition: Subgroup,
    pub big_m: Subgroup,
    pub big_n: Subgroup,
    pub mn_invariants: AbInvariants,
    /// Order of M/N; 1 exactly when M = N.
    pub e: BigInt,
    pub regular: bool,
    pub tame: bool,
    pub width_lower: usize,
    pub width_upper: usize,
    pub width_exact: Option<usize>,
}

/// Two-sided annihilator: all x with x*u = u*x = 0 for every generator u.
pub fn ann(r: &RingPresentation) -> Subgroup {
    let n = r.rank();
    let rel = r.group().relations();
    let r0 = rel.rows();
    // Unknowns: x_1..x_n, then one slack block per (generator, side)
    // absorbing the relation lattice.
    let unknowns = n + 2 * n * r0;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..n {
        for side in 0..2usize {
            for k in 0..n {
                let mut row = vec![BigInt::zero(); unknowns];
                for i in 0..n {
                    let t = if side == 0 {
                        &r.mult_row(i, j)[k]
                    } else {
                        &r.mult_row(j, i)[k]
                    };
                    row[i] = t.clone();
                }
                let slack_base = n + (j * 2 + side) * r0;
                for l in 0..r0 {
                    row[slack_base + l] = -rel[(l, k)].clone();
                }
                rows.push(row);
            }
        }
    }
    let m = IntMatrix::from_row_vectors(rows, unknowns);
    let kernel = kernel_basis(&m);
    let gens: Vec<Vec<BigInt>> = (0..kernel.rows())
        .map(|i| kernel.row(i)[..n].to_vec())
        .collect();
    Subgroup::from_gen_vectors(r.group(), gens)
}

/// The ideal generated by all products; additively it is the span of the
/// generator products, which is already two-sided closed.
pub fn square(r: &RingPresentation) -> Subgroup {
    let n = r.rank();
    let gens: Vec<Vec<BigInt>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| r.mult_row(i, j).to_vec())
        .collect();
    let sq = Subgroup::from_gen_vectors(r.group(), gens);
    for g in sq.rows().rows_iter() {
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            assert!(
                sq.membership(&r.multiply_raw(g, &e)) && sq.membership(&r.multiply_raw(&e, g)),
                "square not closed under generator multiplication; presentation invalid"
            );
        }
    }
    sq
}

/// Saturation of an ideal inside the ring's additive group.
pub fn isolator(_r: &RingPresentation, i: &Subgroup) -> Subgroup {
    i.saturation()
}

pub fn big_m(r: &RingPresentation) -> Subgroup {
    let s = square(r);
    let a = ann(r);
    s.sum(&a).expect("same ambient").saturation()
}

pub fn big_n(r: &RingPresentation) -> Subgroup {
    let s = square(r).saturation();
    let a = ann(r);
    s.sum(&a).expect("same ambient")
}

/// Isomorphism type of M/N, always finite.
pub fn mn_quotient(r: &RingPresentation) -> AbInvariants {
    let m = big_m(r);
    let n = big_n(r);
    mn_quotient_of(&m, &n)
}

pub(crate) fn mn_quotient_of(m: &Subgroup, n: &Subgroup) -> AbInvariants {
    let x = express_rows_in(m.rows(), n.rows());
    let inv = AbGroupPresentation::new(m.rows().rows(), x).invariants();
    assert!(
        inv.is_finite(),
        "M/N must be a finite abelian group; presentation invalid"
    );
    inv
}

pub fn delta(r: &RingPresentation) -> Subgroup {
    square(r)
        .saturation()
        .intersection(&ann(r))
        .expect("same ambient")
}

/// A deterministic direct complement of delta inside the annihilator.
pub fn addition(r: &RingPresentation) -> Subgroup {
    delta(r)
        .complement_inside(&ann(r))
        .expect("annihilator modulo delta is free abelian")
}

/// The quotient ring by a chosen addition. `r0` must satisfy
/// `r0 + delta = ann` and `r0 âˆ© delta = 0`.
pub fn foundation(
    r: &RingPresentation,
    r0: &Subgroup,
) -> Result<RingPresentation, Error> {
    let d = delta(r);
    let a = ann(r);
    if r0.sum(&d)? != a {
        return Err(Error::Precondition("addition + delta != annihilator".into()));
    }
    if r0.intersection(&d)? != Subgroup::zero(r.group()) {
        return Err(Error::Precondition("addition meets delta".into()));
    }
    let (q, _) = r.quotient_ring(r0)?;
    Ok(q)
}

pub fn is_regular(r: &RingPresentation) -> bool {
    big_m(r) == big_n(r)
}

/// Splits a regular ring: returns `(f, r0)` with `f` a subring containing
/// the square, `f + r0` the whole ring, and `f âˆ© r0 = 0`.
pub fn split_regular(r: &RingPresentation) -> Result<(Subgroup, Subgroup), Error> {
    let m = big_m(r);
    let n = big_n(r);
    if m != n {
        return Err(Error::Precondition("ring is not regular (M != N)".into()));
    }
    let is_sq = square(r).saturation();
    let quotient_group = is_sq.quotient_presentation();
    let n_image = Subgroup::new(&quotient_group, n.rows());
    let full = Subgroup::full(&quotient_group);
    let c = n_image.complement_inside(&full)?;
    let f = Subgroup::new(r.group(), c.rows());
    let r0 = addition(r);
    debug_assert_eq!(f.sum(&r0).unwrap(), Subgroup::full(r.group()));
    debug_assert_eq!(
        f.intersection(&r0).unwrap(),
        Subgroup::zero(r.group())
    );
    debug_assert!(f.contains(&square(r)));
    Ok((f, r0))
}

pub fn is_tame(r: &RingPresentation) -> bool {
    square(r).saturation().contains(&ann(r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthBounds {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

/// Width of the square ideal: the least s such that every element of the
/// square is a sum of s products. Exact when the square is finite (brute
/// force); otherwise bounds only.
pub fn width_bounds(r: &RingPresentation) -> WidthBounds {
    let sq = square(r);
    let sq_type = sq.group_invariants();
    if sq_type.is_trivial() {
        return WidthBounds {
            lower: 0,
            upper: 0,
            exact: Some(0),
        };
    }
    // Every sum of products is a sum of at most `rank` single products.
    let upper = r.rank();
    let lower = 1;
    if lower == upper {
        return WidthBounds {
            lower,
            upper,
            exact: Some(1),
        };
    }
    if let Some(order) = sq_type.order() {
        let exact = brute_force_width(r, &sq, &order);
        return WidthBounds {
            lower: exact,
            upper: exact,
            exact: Some(exact),
        };
    }
    WidthBounds {
        lower,
        upper,
        exact: None,
    }
}

fn brute_force_width(r: &RingPresentation, sq: &Subgroup, order: &BigInt) -> usize {
    let n = r.rank();
    // Products only depend on arguments modulo q * Z^n + relations, where q
    // is the exponent of the finite square.
    let mut q = BigInt::one();
    for f in sq.group_invariants().torsion_factors {
        q = q.lcm(&f);
    }
    let mut qrows = IntMatrix::zero(n, n);
    for i in 0..n {
        qrows[(i, i)] = q.clone();
    }
    let arg_group =
        AbGroupPresentation::new(n, qrows.stack(r.group().relations()));
    let reps = arg_group
        .enumerate_elements()
        .expect("argument group is finite");
    let mut values: Vec<Vec<BigInt>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in &reps {
        for y in &reps {
            let v = r.group().reduce(&r.multiply_raw(x, y));
            if seen.insert(v.clone()) {
                values.push(v);
            }
        }
    }
    // Layered sums: distance of each square element from zero in value steps.
    let mut dist: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    let zero = r.group().reduce(&vec![BigInt::zero(); n]);
    dist.insert(zero, 0);
    let mut frontier: Vec<Vec<BigInt>> = dist.keys().cloned().collect();
    let mut width = 0usize;
    let total: usize = usize::try_from(order.clone()).expect("desk-scale square");
    while dist.len() < total {
        let mut next = Vec::new();
        for u in &frontier {
            for v in &values {
                let s = r.group().reduce(&crate::zlattice::vec_add(u, v));
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(s.clone()) {
                    e.insert(width + 1);
                    next.push(s);
                }
            }
        }
        assert!(
            !next.is_empty(),
            "sum closure stalled before covering the square"
        );
        width += 1;
        frontier = next;
    }
    width
}

/// Runs the whole invariant pass.
pub fn invariant_report(r: &RingPresentation) -> InvariantReport {
    let a = ann(r);
    let sq = square(r);
    let is_sq = sq.saturation();
    let d = is_sq.intersection(&a).expect("same ambient");
    let r0 = d
        .complement_inside(&a)
        .expect("annihilator modulo delta is free abelian");
    let m = sq.sum(&a).expect("same ambient").saturation();
    let n = is_sq.sum(&a).expect("same ambient");
    let mn = mn_quotient_of(&m, &n);
    let e = mn.order().expect("M/N finite");
    let w = width_bounds(r);
    InvariantReport {
        regular: m == n,
        tame: is_sq.contains(&a),
        mn_invariants: mn,
        e,
        ann: a,
        square: sq,
        is_square: is_sq,
        delta: d,
        addition: r0,
        big_m: m,
        big_n: n,
        width_lower: w.lower,
        width_upper: w.upper,
        width_exact: w.exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::zlattice::vec_of_i64;

    #[test]
    fn ann_of_zero_ring_is_everything() {
        let r = samples::zero_ring(2);
        assert_eq!(ann(&r), Subgroup::full(r.group()));
    }

    #[test]
    fn ann_of_integers_is_zero() {
        let z = samples::integers();
        assert_eq!(ann(&z), Subgroup::zero(z.group()));
    }

    #[test]
    fn ann_of_fixture() {
        let r = samples::nonregular_rank3();
        let expected = Subgroup::from_gen_vectors(
            r.group(),
            vec![
                vec_of_i64(&[2, 0, 0]),
                vec_of_i64(&[0, 1, 0]),
                vec_of_i64(&[0, 0, 1]),
            ],
        );
        assert_eq!(ann(&r), expected);
        // Oracle: check membership over small residues directly.
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in 0i64..=1 {
                    let x = vec_of_i64(&[a, b, c]);
                    let in_ann = (0..3).all(|j| {
                        let mut e = vec_of_i64(&[0, 0, 0]);
                        e[j] = BigInt::one();
                        r.group().is_zero_element(&r.multiply_raw(&x, &e))
                            && r.group().is_zero_element(&r.multiply_raw(&e, &x))
                    });
                    assert_eq!(ann(&r).membership(&x), in_ann, "residue {a},{b},{c}");
                }
            }
        }
    }

    #[test]
    fn square_examples() {
        assert_eq!(
            square(&samples::zero_ring(2)),
            Subgroup::zero(samples::zero_ring(2).group())
        );
        let z = samples::integers();
        assert_eq!(square(&z), Subgroup::full(z.group()));
        let r = samples::nonregular_rank3();
        assert_eq!(
            square(&r),
            Subgroup::from_gen_vectors(r.group(), vec![vec_of_i64(&[0, 0, 1])])
        );
    }

    #[test]
    fn mn_of_fixture() {
        let r = samples::nonregular_rank3();
        let m = big_m(&r);
        let n = big_n(&r);
        assert_eq!(m, Subgroup::full(r.group()));
        assert_eq!(
            n,
            Subgroup::from_gen_vectors(
                r.group(),
                vec![
                    vec_of_i64(&[2, 0, 0]),
                    vec_of_i64(&[0, 1, 0]),
                    vec_of_i64(&[0, 0, 1])
                ]
            )
        );
        let inv = mn_quotient(&r);
        assert_eq!(inv.torsion_factors, vec![BigInt::from(2)]);
        assert_eq!(inv.order(), Some(BigInt::from(2)));
    }

    #[test]
    fn mn_trivial_cases() {
        let r = samples::zero_ring(2);
        assert_eq!(big_m(&r), big_n(&r));
        let z = samples::integers();
        assert_eq!(big_m(&z), big_n(&z));
        assert_eq!(big_m(&z), Subgroup::full(z.group()));
    }

    #[test]
    fn delta_addition_foundation_fixture() {
        let r = samples::nonregular_rank3();
        let d = delta(&r);
        assert_eq!(
            d,
            Subgroup::from_gen_vectors(r.group(), vec![vec_of_i64(&[0, 0, 1])])
        );
        let r0 = addition(&r);
        // One valid deterministic complement: spanned by 2u1 and u2.
        assert!(ann(&r).contains(&r0));
        assert_eq!(r0.sum(&d).unwrap(), ann(&r));
        assert_eq!(r0.intersection(&d).unwrap(), Subgroup::zero(r.group()));
        let f = foundation(&r, &r0).unwrap();
        let inv = f.additive_invariants();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion_factors, vec![BigInt::from(2), BigInt::from(2)]);
        // The image of u1 squares to the nonzero image of t.
        assert!(!f.is_zero_element(&f.multiply(&f.generator(0), &f.generator(0))));
    }

    #[test]
    fn delta_addition_zero_ring() {
        let r = samples::build_ring(&[0, 2], &[(1, &[])], &[]);
        // Zero multiplication: delta = torsion part, addition = a free
        // complement, foundation = torsion ring.
        let d = delta(&r);
        assert_eq!(
            d,
            Subgroup::from_gen_vectors(r.group(), vec![vec_of_i64(&[0, 1])])
        );
        let r0 = addition(&r);
        let f = foundation(&r, &r0).unwrap();
        assert_eq!(f.additive_invariants().torsion_factors, vec![BigInt::from(2)]);
        assert_eq!(f.additive_invariants().free_rank, 0);
    }

    #[test]
    fn foundation_rejects_bad_addition() {
        let r = samples::nonregular_rank3();
        let bad = Subgroup::from_gen_vectors(r.group(), vec![vec_of_i64(&[2, 0, 0])]);
        assert!(foundation(&r, &bad).is_err());
    }

    #[test]
    fn regular_and_splitting() {
        let r = samples::nonregular_rank3();
        assert!(!is_regular(&r));
        assert!(split_regular(&r).is_err());
        let z2 = samples::zero_ring(2);
        assert!(is_regular(&z2));
        let (f, r0) = split_regular(&z2).unwrap();
        assert_eq!(f.sum(&r0).unwrap(), Subgroup::full(z2.group()));
        assert_eq!(f.intersection(&r0).unwrap(), Subgroup::zero(z2.group()));
        let z = samples::integers();
        assert!(is_regular(&z));
        let (f, r0) = split_regular(&z).unwrap();
        assert_eq!(f, Subgroup::full(z.group()));
        assert_eq!(r0, Subgroup::zero(z.group()));
    }

    #[test]
    fn tameness() {
        assert!(is_tame(&samples::integers()));
        assert!(!is_tame(&samples::nonregular_rank3()));
        assert!(!is_tame(&samples::zero_ring(1)));
    }

    #[test]
    fn width_examples() {
        let w = width_bounds(&samples::zero_ring(2));
        assert_eq!(w, WidthBounds { lower: 0, upper: 0, exact: Some(0) });
        let w = width_bounds(&samples::nonregular_rank3());
        assert_eq!(w.exact, Some(1));
        let w = width_bounds(&samples::integers());
        assert_eq!(w.exact, Some(1));
        assert!(w.upper <= 1);
    }

    #[test]
    fn ann_purity_torsion_free() {
        // For torsion-free rings the annihilator is saturated.
        for r in [samples::integers(), samples::zero_ring(3)] {
            let a = ann(&r);
            assert_eq!(a.saturation(), a);
        }
    }

    #[test]
    fn chain_containments_fixture() {
        let r = samples::nonregular_rank3();
        let sq = square(&r);
        let is_sq = sq.saturation();
        let n = big_n(&r);
        let m = big_m(&r);
        assert!(is_sq.contains(&sq));
        assert!(n.contains(&is_sq));
        assert!(m.contains(&n));
        let torsion = Subgroup::zero(r.group()).saturation();
        assert!(is_sq.contains(&torsion));
    }
}
