//! Pseudo-bases adapted to the descending series
//! R >= M >= N >= Is(R^2) >= 0, with the four segments and breakpoints
//! (l, m, n, r). The (c) segment is chosen inside the annihilator, so it
//! spans a canonical addition.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ideals::InvariantReport;
use crate::ring::two_sorted::into_family_coords;
use crate::ring::RingPresentation;
use crate::zlattice::{
    express_in_rows, express_rows_in, inverse_unimodular, snf, IntMatrix, QuotientData, Subgroup,
};

/// A pseudo-basis adapted to the invariant series, with 1-based breakpoints:
/// generators before `l` descend to a basis of R/M, from `l` to `m-1` to the
/// invariant-factor pseudo-basis of M/N, from `m` to `n-1` to an independent
/// family in N/Is inside the annihilator (the first `p = m - l` of them are
/// the annihilator parts of e_i u_i), and from `n` to `r` to a pseudo-basis
/// of Is(R^2).
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    /// Basis elements as rows in the original ring coordinates.
    pub rows: IntMatrix,
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    /// Invariant factors e_l | ... | e_{m-1} of M/N.
    pub invariant_factors: Vec<BigInt>,
    /// The ring re-presented on this basis; products land in the last
    /// segment and the (b)-segment torsion rows hit their (c)-segment slot
    /// with coefficient one plus a tail in the last segment.
    pub presentation: RingPresentation,
    /// Rows of the addition spanned by the full (c) segment.
    pub addition_rows: IntMatrix,
    /// Number of free zero-interaction generators in the (c) segment beyond
    /// the first p.
    pub neutral_count: usize,
}

impl AdaptedBasis {
    pub fn p(&self) -> usize {
        self.m - self.l
    }

    /// Order of M/N.
    pub fn e(&self) -> BigInt {
        let mut e = BigInt::one();
        for f in &self.invariant_factors {
            e *= f;
        }
        e
    }

    /// 0-based index ranges of the four segments.
    pub fn segment_a(&self) -> std::ops::Range<usize> {
        0..self.l - 1
    }
    pub fn segment_b(&self) -> std::ops::Range<usize> {
        self.l - 1..self.m - 1
    }
    pub fn segment_c(&self) -> std::ops::Range<usize> {
        self.m - 1..self.n - 1
    }
    pub fn segment_d(&self) -> std::ops::Range<usize> {
        self.n - 1..self.r
    }
}

/// Builds the adapted basis of a ring, deterministically through Smith
/// decompositions of each quotient in the series.
pub fn adapted_basis(ring: &RingPresentation, report: &InvariantReport) -> AdaptedBasis {
    let nr = ring.rank();
    let m_sub = &report.big_m;
    let n_sub = &report.big_n;
    let is_sq = &report.is_square;
    let annih = &report.ann;

    // Segment (a): lifts of a basis of the free group R/M.
    let qd_rm = QuotientData::of(m_sub);
    assert!(
        qd_rm.periods.iter().all(Zero::is_zero),
        "R/M must be free (M is saturated)"
    );
    let seg_a: Vec<Vec<BigInt>> = (0..qd_rm.lifts.rows())
        .map(|i| qd_rm.lifts.row_vec(i))
        .collect();

    // Basis of the free group M/Is, in M-basis coordinates.
    let x_is_in_m = express_rows_in(m_sub.rows(), is_sq.rows());
    let qd_mis = QuotientData::of_lattice(m_sub.rows().rows(), &x_is_in_m);
    assert!(
        qd_mis.periods.iter().all(Zero::is_zero),
        "M/Is must be free"
    );
    let rho = qd_mis.lifts.rows();

    // Image of N inside M/Is, then its invariant decomposition.
    let n_in_m = express_rows_in(m_sub.rows(), n_sub.rows());
    let n_bar_rows: Vec<Vec<BigInt>> = (0..n_in_m.rows())
        .map(|i| qd_mis.proj.vec_mul(n_in_m.row(i)))
        .collect();
    let n_bar = crate::zlattice::canonical_rows(&IntMatrix::from_row_vectors(n_bar_rows, rho));
    let dec = snf(&n_bar);
    let diag = dec.d.diagonal_padded(rho);
    assert!(
        diag.iter().all(|d| !d.is_zero()),
        "N has finite index in M modulo Is"
    );
    let vinv = inverse_unimodular(&dec.v);
    let to_ambient = |g: &[BigInt]| -> Vec<BigInt> {
        // M/Is coordinates -> M coordinates -> ambient coordinates.
        let in_m = qd_mis.lifts.vec_mul(g);
        m_sub.rows().vec_mul(&in_m)
    };
    let mut seg_b: Vec<Vec<BigInt>> = Vec::new();
    let mut invariant_factors: Vec<BigInt> = Vec::new();
    let mut extras_bar: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..rho {
        if diag[j].is_one() {
            extras_bar.push(vinv.row_vec(j));
        } else {
            seg_b.push(to_ambient(vinv.row(j)));
            invariant_factors.push(diag[j].clone());
        }
    }

    // Segment (c): annihilator parts of e_i u_i, then annihilator lifts of
    // the remaining N/Is basis vectors.
    let ann_is = annih.rows().stack(is_sq.rows());
    let split_ann_part = |w: &[BigInt]| -> Vec<BigInt> {
        let y = express_in_rows(&ann_is, w).expect("element lies in Ann + Is");
        annih.rows().vec_mul(&y[..annih.rows().rows()])
    };
    let mut seg_c: Vec<Vec<BigInt>> = Vec::new();
    for (i, u) in seg_b.iter().enumerate() {
        let scaled: Vec<BigInt> = u.iter().map(|v| &invariant_factors[i] * v).collect();
        seg_c.push(split_ann_part(&scaled));
    }
    let mut tails: Vec<Vec<BigInt>> = Vec::new();
    for (i, u) in seg_b.iter().enumerate() {
        let scaled: Vec<BigInt> = u.iter().map(|v| &invariant_factors[i] * v).collect();
        tails.push(crate::zlattice::vec_sub(&scaled, &seg_c[i]));
    }
    let neutral_count = extras_bar.len();
    for g in &extras_bar {
        let w = to_ambient(g);
        seg_c.push(split_ann_part(&w));
    }

    // Segment (d): pseudo-basis of Is through its Smith decomposition.
    let x_rel_in_is = express_rows_in(is_sq.rows(), ring.group().relations());
    let qd_is = QuotientData::of_lattice(is_sq.rows().rows(), &x_rel_in_is);
    let seg_d: Vec<Vec<BigInt>> = (0..qd_is.lifts.rows())
        .map(|i| is_sq.rows().vec_mul(qd_is.lifts.row(i)))
        .collect();
    let d_periods = qd_is.periods.clone();

    let l = 1 + seg_a.len();
    let m = l + seg_b.len();
    let n = m + seg_c.len();
    let r = n - 1 + seg_d.len();
    let total = r;
    let mut all_rows = seg_a;
    all_rows.extend(seg_b);
    all_rows.extend(seg_c);
    all_rows.extend(seg_d);
    let rows = IntMatrix::from_row_vectors(all_rows, nr);

    // Periods per slot.
    let p = m - l;
    let mut periods = vec![BigInt::zero(); total];
    for (i, e) in invariant_factors.iter().enumerate() {
        periods[l - 1 + i] = e.clone();
    }
    for (i, d) in d_periods.iter().enumerate() {
        periods[n - 1 + i] = d.clone();
    }
    // Torsion rows: (b) generators hit their (c) slot plus an Is tail; (d)
    // generators have diagonal relations with no tail.
    let d_rows_matrix = rows.with_rows_removed(|i| i >= n - 1);
    let mut torsion = vec![vec![BigInt::zero(); total]; total];
    for i in 0..p {
        let slot = m - 1 + i;
        torsion[l - 1 + i][slot] = BigInt::one();
        let tail_coords = into_family_coords(ring.group(), &d_rows_matrix, &tails[i])
            .expect("tail lies in Is");
        for (k, c) in tail_coords.iter().enumerate() {
            torsion[l - 1 + i][n - 1 + k] = c.clone();
        }
    }
    // Multiplication tensor: all products land in the last segment.
    let mut mult = Vec::with_capacity(total * total);
    for a in 0..total {
        for b in 0..total {
            let prod = ring.multiply_raw(rows.row(a), rows.row(b));
            let coords = into_family_coords(ring.group(), &d_rows_matrix, &prod)
                .expect("products lie in Is");
            let mut row = vec![BigInt::zero(); total];
            for (k, c) in coords.iter().enumerate() {
                row[n - 1 + k] = c.clone();
            }
            mult.push(row);
        }
    }
    let presentation = RingPresentation::new(periods, torsion, mult)
        .expect("adapted presentation is well shaped");
    debug_assert!(presentation.validate().is_empty());
    // The identity-on-rows map must be an isomorphism onto the ring.
    assert!(
        crate::ring::iso::check_ring_iso_witness(&presentation, ring, &rows),
        "adapted presentation does not present the ring"
    );

    let addition_rows = rows.with_rows_removed(|i| (m - 1..n - 1).contains(&i));
    // The (c) segment must span an addition.
    let r0 = Subgroup::new(ring.group(), &addition_rows);
    debug_assert_eq!(
        r0.sum(&report.delta).unwrap(),
        report.ann,
        "segment (c) plus delta must be the annihilator"
    );
    debug_assert_eq!(
        r0.intersection(&report.delta).unwrap(),
        Subgroup::zero(ring.group())
    );

    AdaptedBasis {
        rows,
        l,
        m,
        n,
        r,
        invariant_factors,
        presentation,
        addition_rows,
        neutral_count,
    }
}

/// Splitting off the neutral part: the free zero-interaction generators of
/// the (c) segment beyond the first p.
#[derive(Clone, Debug)]
pub struct NeutralSplit {
    pub core: RingPresentation,
    pub neutral_rank: usize,
    /// Rows of the core family in the original coordinates.
    pub core_rows: IntMatrix,
    /// Rows of the split-off free zero generators.
    pub neutral_rows: IntMatrix,
}

/// Splits off the maximal free zero-involvement summand of the canonical
/// addition, certifying the rebuilt product against the original ring.
pub fn neutral_split(ring: &RingPresentation, report: &InvariantReport) -> NeutralSplit {
    let ab = adapted_basis(ring, report);
    let p = ab.p();
    let extras_start = ab.m - 1 + p;
    let extras_end = ab.n - 1;
    let core_rows = ab
        .rows
        .with_rows_removed(|i| !(extras_start..extras_end).contains(&i));
    let neutral_rows = ab
        .rows
        .with_rows_removed(|i| (extras_start..extras_end).contains(&i));
    let core = ring
        .presentation_on_family(&core_rows)
        .expect("core family is multiplication closed");
    let rebuilt = core.direct_sum(&crate::samples::zero_ring(ab.neutral_count));
    let witness = core_rows.stack(&neutral_rows);
    assert!(
        crate::ring::iso::check_ring_iso_witness(&rebuilt, ring, &witness),
        "neutral split does not rebuild the ring"
    );
    NeutralSplit {
        core,
        neutral_rank: ab.neutral_count,
        core_rows,
        neutral_rows,
    }
}

/// Dimension-level check of the adapted invariants, used by tests and the
/// certificate search: products supported in the last segment, torsion rows
/// structured as required.
pub fn check_adapted_shape(ab: &AdaptedBasis) -> Result<(), Error> {
    let pres = &ab.presentation;
    let total = ab.r;
    for a in 0..total {
        for b in 0..total {
            let row = pres.mult_row(a, b);
            if row[..ab.n - 1].iter().any(|c| !c.is_zero()) {
                return Err(Error::CheckFailed(format!(
                    "product ({a},{b}) escapes the last segment"
                )));
            }
        }
    }
    for i in ab.segment_b() {
        let row = pres.torsion_row(i);
        let slot = ab.m - 1 + (i - (ab.l - 1));
        if !row[slot].is_one() {
            return Err(Error::CheckFailed(format!(
                "torsion row {i} misses its (c) slot"
            )));
        }
        for (k, c) in row.iter().enumerate() {
            if k != slot && k < ab.n - 1 && !c.is_zero() {
                return Err(Error::CheckFailed(format!(
                    "torsion row {i} has support outside slot and tail"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::invariant_report;
    use crate::samples;
    use crate::zlattice::vec_of_i64;

    #[test]
    fn fixture_breakpoints() {
        let r = samples::nonregular_rank3();
        let rep = invariant_report(&r);
        let ab = adapted_basis(&r, &rep);
        assert_eq!((ab.l, ab.m, ab.n, ab.r), (1, 2, 4, 4));
        assert_eq!(ab.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(ab.rows.row_vec(0), vec_of_i64(&[1, 0, 0]));
        assert_eq!(ab.rows.row_vec(1), vec_of_i64(&[2, 0, 0]));
        assert_eq!(ab.rows.row_vec(2), vec_of_i64(&[0, 1, 0]));
        assert_eq!(ab.rows.row_vec(3), vec_of_i64(&[0, 0, 1]));
        assert_eq!(ab.neutral_count, 1);
        check_adapted_shape(&ab).unwrap();
    }

    #[test]
    fn integers_collapse_to_last_segment() {
        let z = samples::integers();
        let rep = invariant_report(&z);
        let ab = adapted_basis(&z, &rep);
        assert_eq!((ab.l, ab.m, ab.n, ab.r), (1, 1, 1, 1));
        assert!(ab.invariant_factors.is_empty());
        check_adapted_shape(&ab).unwrap();
    }

    #[test]
    fn zero_ring_sits_in_segment_c() {
        let r = samples::zero_ring(1);
        let rep = invariant_report(&r);
        let ab = adapted_basis(&r, &rep);
        assert_eq!((ab.l, ab.m, ab.n, ab.r), (1, 1, 2, 1));
        assert_eq!(ab.neutral_count, 1);
        check_adapted_shape(&ab).unwrap();
    }

    #[test]
    fn neutral_split_examples() {
        let r = samples::zero_ring(2);
        let rep = invariant_report(&r);
        let ns = neutral_split(&r, &rep);
        assert_eq!(ns.neutral_rank, 2);
        assert!(ns.core.additive_invariants().is_trivial());

        let r = samples::nonregular_rank3();
        let rep = invariant_report(&r);
        let ns = neutral_split(&r, &rep);
        assert_eq!(ns.neutral_rank, 1);
        assert_eq!(ns.core.rank(), 3);

        let z = samples::integers();
        let rep = invariant_report(&z);
        let ns = neutral_split(&z, &rep);
        assert_eq!(ns.neutral_rank, 0);
        assert_eq!(ns.core.additive_invariants().free_rank, 1);
    }
}
