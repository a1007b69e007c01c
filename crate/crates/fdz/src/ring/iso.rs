//! Height-bounded pseudo-basis searches deciding isomorphism of presented
//! rings, two-sorted modules and two-sorted algebras.
//!
//! The search looks for a tuple of target elements whose structure constants
//! match the source presentation's constants exactly; such a tuple is a
//! pseudo-basis of the target realizing the source record, and the induced
//! map is the isomorphism witness. Candidates are enumerated in a fixed
//! spiral-lexicographic order and the first (least) witness is returned, so
//! results are deterministic. When the target is finite the candidate pool
//! is the whole ring and the search is exhaustive.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::two_sorted::TwoSortedModulePresentation;
use super::RingPresentation;
use crate::verdict::{IsoWitness, Verdict};
use crate::zlattice::{
    kernel_basis, vec_is_zero, AbGroupPresentation, IntMatrix, QuotientData, Subgroup,
};

/// Enumeration order for a single coordinate: 0, 1, -1, 2, -2, ...
fn spiral(h: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero()];
    for v in 1..=h as i64 {
        out.push(BigInt::from(v));
        out.push(BigInt::from(-v));
    }
    out
}

/// Candidate element pool for a target group: every canonical residue when
/// the group is finite, otherwise the canonically reduced height box,
/// deduplicated in enumeration order.
pub(crate) fn candidate_pool(group: &AbGroupPresentation, height: u32) -> (Vec<Vec<BigInt>>, bool) {
    if let Some(elems) = group.enumerate_elements() {
        return (elems, true);
    }
    let n = group.ngens();
    let coords = spiral(height);
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![vec![]];
    // Depth-first cartesian product in spiral-lex order.
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let red = group.reduce(&prefix);
            if seen.insert(red.clone()) {
                out.push(red);
            }
            continue;
        }
        for v in coords.iter().rev() {
            let mut next = prefix.clone();
            next.push(v.clone());
            stack.push(next);
        }
    }
    (out, false)
}

/// Checks that mapping generator `i` of `p` to row `i` of `w` defines a ring
/// isomorphism onto `q`.
pub fn check_ring_iso_witness(p: &RingPresentation, q: &RingPresentation, w: &IntMatrix) -> bool {
    if w.rows() != p.rank() || w.cols() != q.rank() {
        return false;
    }
    check_group_hom(p.group(), q.group(), w)
        && check_multiplicative(p, q, w)
        && check_group_bijective(p.group(), q.group(), w)
}

fn check_group_hom(p: &AbGroupPresentation, q: &AbGroupPresentation, w: &IntMatrix) -> bool {
    p.relations()
        .rows_iter()
        .all(|rho| q.is_zero_element(&w.vec_mul(rho)))
}

fn check_multiplicative(p: &RingPresentation, q: &RingPresentation, w: &IntMatrix) -> bool {
    for i in 0..p.rank() {
        for j in 0..p.rank() {
            let lhs = q.multiply_raw(w.row(i), w.row(j));
            let rhs = w.vec_mul(p.mult_row(i, j));
            if !q.group().is_zero_element(&crate::zlattice::vec_sub(&lhs, &rhs)) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn check_group_surjective(
    q: &AbGroupPresentation,
    w: &IntMatrix,
) -> bool {
    let sub = Subgroup::new(q, w);
    (0..q.ngens()).all(|i| {
        let mut e = vec![BigInt::zero(); q.ngens()];
        e[i] = BigInt::from(1);
        sub.membership(&e)
    })
}

pub(crate) fn check_group_injective(
    p: &AbGroupPresentation,
    q: &AbGroupPresentation,
    w: &IntMatrix,
) -> bool {
    // Pull back the target relation lattice: combinations x with x*w = 0 in q
    // must already vanish in p.
    let stacked = w.stack(q.relations());
    let k = kernel_basis(&stacked.transpose());
    for i in 0..k.rows() {
        let x = &k.row(i)[..p.ngens()];
        if !p.is_zero_element(x) {
            return false;
        }
    }
    true
}

pub(crate) fn check_group_bijective(
    p: &AbGroupPresentation,
    q: &AbGroupPresentation,
    w: &IntMatrix,
) -> bool {
    check_group_surjective(q, w) && check_group_injective(p, q, w)
}

/// Shared depth-first tuple search. `level_check(i, rows)` sees the chosen
/// suffix rows `w_i..w_{n-1}` and may reject; `leaf_check` validates a full
/// tuple. Returns the first accepted tuple in enumeration order.
fn dfs_tuples(
    n: usize,
    pools: &[Vec<Vec<BigInt>>],
    level_check: &dyn Fn(usize, &[Vec<BigInt>]) -> bool,
    leaf_check: &dyn Fn(&[Vec<BigInt>]) -> bool,
) -> Option<Vec<Vec<BigInt>>> {
    fn rec(
        i: usize,
        chosen: &mut Vec<Vec<BigInt>>,
        pools: &[Vec<Vec<BigInt>>],
        level_check: &dyn Fn(usize, &[Vec<BigInt>]) -> bool,
        leaf_check: &dyn Fn(&[Vec<BigInt>]) -> bool,
    ) -> Option<Vec<Vec<BigInt>>> {
        if i == 0 {
            let tuple: Vec<Vec<BigInt>> = chosen.iter().rev().cloned().collect();
            if leaf_check(&tuple) {
                return Some(tuple);
            }
            return None;
        }
        let level = i - 1;
        for cand in &pools[level] {
            chosen.push(cand.clone());
            // chosen holds w_{n-1}, ..., w_level in reverse order.
            let suffix: Vec<Vec<BigInt>> = chosen.iter().rev().cloned().collect();
            if level_check(level, &suffix) {
                if let Some(hit) = rec(level, chosen, pools, level_check, leaf_check) {
                    return Some(hit);
                }
            }
            chosen.pop();
        }
        None
    }
    if n == 0 {
        return if leaf_check(&[]) { Some(vec![]) } else { None };
    }
    rec(n, &mut Vec::new(), pools, level_check, leaf_check)
}

/// Searches for a ring isomorphism witness from `p` onto `q` with candidate
/// coordinates of height at most `height`. Generators of period 1 in `p` are
/// eliminated first and the witness is re-expanded to the original rank.
pub fn find_ring_iso(
    p: &RingPresentation,
    q: &RingPresentation,
    height: u32,
) -> Option<IntMatrix> {
    if p.additive_invariants() != q.additive_invariants() {
        return None;
    }
    let (pn, kept) = p.normalize();
    let w = find_ring_iso_normalized(&pn, q, height)?;
    let expanded = expand_witness(p.group(), &kept, &w);
    debug_assert!(check_ring_iso_witness(p, q, &expanded));
    Some(expanded)
}

/// Rewrites a witness on the kept generator family into one on the original
/// generators.
pub(crate) fn expand_witness(
    group: &AbGroupPresentation,
    kept: &IntMatrix,
    w: &IntMatrix,
) -> IntMatrix {
    let n = group.ngens();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            let coeffs = super::two_sorted::into_family_coords(group, kept, &e)
                .expect("kept family generates");
            w.vec_mul(&coeffs)
        })
        .collect();
    IntMatrix::from_row_vectors(rows, w.cols())
}

fn find_ring_iso_normalized(
    p: &RingPresentation,
    q: &RingPresentation,
    height: u32,
) -> Option<IntMatrix> {
    let n = p.rank();
    // Zero multiplication on both sides: additive normal forms already give
    // the isomorphism.
    if p_tensor_is_zero(p) && p_tensor_is_zero(q) {
        let w = additive_iso(p.group(), q.group())?;
        if check_ring_iso_witness(p, q, &w) {
            return Some(w);
        }
        return None;
    }
    let (pool, _exhaustive) = candidate_pool(q.group(), height);
    // Per-generator pools filtered by element order.
    let pools: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            let ord = p.group().element_order(&e);
            pool.iter()
                .filter(|c| q.group().element_order(c) == ord)
                .cloned()
                .collect()
        })
        .collect();
    let level_check = |level: usize, suffix: &[Vec<BigInt>]| -> bool {
        suffix_feasible(p, q, level, suffix)
    };
    let leaf_check = |tuple: &[Vec<BigInt>]| -> bool {
        let w = IntMatrix::from_row_vectors(tuple.to_vec(), q.rank());
        check_ring_iso_witness(p, q, &w)
    };
    dfs_tuples(n, &pools, &level_check, &leaf_check)
        .map(|rows| IntMatrix::from_row_vectors(rows, q.rank()))
}

fn p_tensor_is_zero(p: &RingPresentation) -> bool {
    (0..p.rank()).all(|i| (0..p.rank()).all(|j| vec_is_zero(p.mult_row(i, j))))
}

/// Canonical additive isomorphism between groups of equal invariants, built
/// from both Smith decompositions.
pub(crate) fn additive_iso(
    p: &AbGroupPresentation,
    q: &AbGroupPresentation,
) -> Option<IntMatrix> {
    if p.invariants() != q.invariants() {
        return None;
    }
    let qp = QuotientData::of_lattice(p.ngens(), p.relations());
    let qq = QuotientData::of_lattice(q.ngens(), q.relations());
    if qp.periods != qq.periods {
        // Same invariants but different kept-period layout cannot happen:
        // both are the invariant factor sequences.
        return None;
    }
    Some(qp.proj.mul(&qq.lifts))
}

/// Level checks shared by the ring search: the torsion relation of the
/// newly chosen generator, early multiplication rows fully supported by the
/// suffix, and generation feasibility of the remaining prefix.
fn suffix_feasible(
    p: &RingPresentation,
    q: &RingPresentation,
    level: usize,
    suffix: &[Vec<BigInt>],
) -> bool {
    let n = p.rank();
    let w_at = |k: usize| -> &[BigInt] { &suffix[k - level] };
    // Torsion relation of generator `level` only references later indices.
    if !p.periods()[level].is_zero() {
        let mut acc = vec![BigInt::zero(); q.rank()];
        for (k, x) in w_at(level).iter().enumerate() {
            acc[k] = &p.periods()[level] * x;
        }
        let trow = p.torsion_row(level);
        for k in level + 1..n {
            if trow[k].is_zero() {
                continue;
            }
            for (c, x) in w_at(k).iter().enumerate() {
                acc[c] -= &trow[k] * x;
            }
        }
        if !q.group().is_zero_element(&acc) {
            return false;
        }
    }
    // Multiplication rows (a, b) that became fully checkable at this level.
    for a in level..n {
        for b in level..n {
            if a != level && b != level {
                continue;
            }
            let row = p.mult_row(a, b);
            if (0..level).any(|k| !row[k].is_zero()) {
                continue;
            }
            let lhs = q.multiply_raw(w_at(a), w_at(b));
            let mut rhs = vec![BigInt::zero(); q.rank()];
            for k in level..n {
                if row[k].is_zero() {
                    continue;
                }
                for (c, x) in w_at(k).iter().enumerate() {
                    rhs[c] += &row[k] * x;
                }
            }
            if !q.group().is_zero_element(&crate::zlattice::vec_sub(&lhs, &rhs)) {
                return false;
            }
        }
    }
    // The prefix still to be chosen must be able to generate the quotient.
    let rows = IntMatrix::from_row_vectors(suffix.to_vec(), q.rank());
    let sub = Subgroup::new(q.group(), &rows);
    sub.quotient_invariants().min_generators() <= level
}

/// Decides isomorphism of two-sorted modules (or algebras when both tensors
/// are given) by structure-constant search at the given height.
pub fn iso_by_constants(
    p: &TwoSortedModulePresentation,
    p_mult: Option<&[Vec<BigInt>]>,
    q: &TwoSortedModulePresentation,
    q_mult: Option<&[Vec<BigInt>]>,
    height: u32,
) -> Verdict {
    if p_mult.is_some() != q_mult.is_some() {
        return Verdict::NotIsomorphic {
            reason: "one side is an algebra, the other a plain module".into(),
        };
    }
    if p.scalars.ring().additive_invariants() != q.scalars.ring().additive_invariants() {
        return Verdict::NotIsomorphic {
            reason: "scalar sorts have different additive invariants".into(),
        };
    }
    if p.module.invariants() != q.module.invariants() {
        return Verdict::NotIsomorphic {
            reason: "module sorts have different additive invariants".into(),
        };
    }
    match find_two_sorted_iso(p, p_mult, q, q_mult, height) {
        Some((ws, wm)) => Verdict::Isomorphic(IsoWitness { maps: vec![ws, wm] }),
        None => {
            if p.is_finite() && q.is_finite() {
                Verdict::NotIsomorphic {
                    reason: "exhaustive search over the finite structures found no isomorphism"
                        .into(),
                }
            } else {
                Verdict::Unknown {
                    reason: format!("pseudo-basis search exhausted at height {height}"),
                }
            }
        }
    }
}

/// Finds a pair of sort maps realizing an isomorphism of two-sorted
/// structures.
pub fn find_two_sorted_iso(
    p: &TwoSortedModulePresentation,
    p_mult: Option<&[Vec<BigInt>]>,
    q: &TwoSortedModulePresentation,
    q_mult: Option<&[Vec<BigInt>]>,
    height: u32,
) -> Option<(IntMatrix, IntMatrix)> {
    let ps = p.scalars.ring();
    let qs = q.scalars.ring();
    let ns = ps.rank();
    let (scalar_pool, _) = candidate_pool(qs.group(), height);
    let scalar_pools: Vec<Vec<Vec<BigInt>>> = (0..ns)
        .map(|i| {
            let mut e = vec![BigInt::zero(); ns];
            e[i] = BigInt::from(1);
            let ord = ps.group().element_order(&e);
            scalar_pool
                .iter()
                .filter(|c| qs.group().element_order(c) == ord)
                .cloned()
                .collect()
        })
        .collect();
    let level_check = |level: usize, suffix: &[Vec<BigInt>]| -> bool {
        suffix_feasible(ps, qs, level, suffix)
    };
    let leaf_check = |tuple: &[Vec<BigInt>]| -> bool {
        let ws = IntMatrix::from_row_vectors(tuple.to_vec(), qs.rank());
        if !check_ring_iso_witness(ps, qs, &ws) {
            return false;
        }
        // Ring isomorphisms of unital rings carry the unit to the unit.
        let one_img = ws.vec_mul(&p.scalars.one().coords);
        if qs.element(&one_img) != *q.scalars.one() {
            return false;
        }
        find_module_map(p, p_mult, q, q_mult, &ws, height).is_some()
    };
    // Run the scalar search; on the first leaf success recompute the module
    // map (deterministic) and return both.
    let scalar_rows = dfs_tuples(ns, &scalar_pools, &level_check, &leaf_check)?;
    let ws = IntMatrix::from_row_vectors(scalar_rows, qs.rank());
    let wm = find_module_map(p, p_mult, q, q_mult, &ws, height)?;
    Some((ws, wm))
}

fn find_module_map(
    p: &TwoSortedModulePresentation,
    p_mult: Option<&[Vec<BigInt>]>,
    q: &TwoSortedModulePresentation,
    q_mult: Option<&[Vec<BigInt>]>,
    ws: &IntMatrix,
    height: u32,
) -> Option<IntMatrix> {
    let nm = p.module.ngens();
    let (pool, _) = candidate_pool(&q.module, height);
    let pools: Vec<Vec<Vec<BigInt>>> = (0..nm)
        .map(|j| {
            let mut e = vec![BigInt::zero(); nm];
            e[j] = BigInt::from(1);
            let ord = p.module.element_order(&e);
            pool.iter()
                .filter(|c| q.module.element_order(c) == ord)
                .cloned()
                .collect()
        })
        .collect();
    let level_check = |level: usize, suffix: &[Vec<BigInt>]| -> bool {
        let rows = IntMatrix::from_row_vectors(suffix.to_vec(), q.module.ngens());
        let sub = Subgroup::new(&q.module, &rows);
        sub.quotient_invariants().min_generators() <= level
    };
    let leaf_check = |tuple: &[Vec<BigInt>]| -> bool {
        let wm = IntMatrix::from_row_vectors(tuple.to_vec(), q.module.ngens());
        check_module_map(p, p_mult, q, q_mult, ws, &wm)
    };
    dfs_tuples(nm, &pools, &level_check, &leaf_check)
        .map(|rows| IntMatrix::from_row_vectors(rows, q.module.ngens()))
}

fn check_module_map(
    p: &TwoSortedModulePresentation,
    p_mult: Option<&[Vec<BigInt>]>,
    q: &TwoSortedModulePresentation,
    q_mult: Option<&[Vec<BigInt>]>,
    ws: &IntMatrix,
    wm: &IntMatrix,
) -> bool {
    if !check_group_hom(&p.module, &q.module, wm)
        || !check_group_bijective(&p.module, &q.module, wm)
    {
        return false;
    }
    // Action compatibility on generator pairs.
    for i in 0..p.scalars.rank() {
        for j in 0..p.module.ngens() {
            let img = wm.vec_mul(p.action_row(i, j));
            let direct = q.act(ws.row(i), wm.row(j));
            if q.module.reduce(&img) != direct {
                return false;
            }
        }
    }
    if let (Some(pm), Some(qm)) = (p_mult, q_mult) {
        let Ok(qalg) =
            super::two_sorted::TwoSortedAlgebraPresentation::new(q.clone(), qm.to_vec())
        else {
            return false;
        };
        let nm = p.module.ngens();
        for i in 0..nm {
            for j in 0..nm {
                let img = wm.vec_mul(&pm[i * nm + j]);
                let direct = qalg.multiply(wm.row(i), wm.row(j));
                if q.module.reduce(&img) != direct {
                    return false;
                }
            }
        }
    }
    true
}

/// Order-respecting check used by property tests: witness columns within the
/// height box.
pub fn witness_height(w: &IntMatrix) -> BigInt {
    w.max_abs().abs()
}
