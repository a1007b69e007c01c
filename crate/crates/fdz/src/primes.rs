//! Prime-ideal decompositions of zero in scalar rings, the associated ideal
//! series for rings and modules, the intersection subring attached to a
//! decomposition, and pseudo-bases adapted to the series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ring::two_sorted::TwoSortedModulePresentation;
use crate::ring::ScalarRingPresentation;
use crate::zlattice::{vec_is_zero, IntMatrix, QuotientData, Subgroup};

/// Primality status of an ideal; exact over finite quotients, best-effort
/// over infinite ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primality {
    Yes,
    No {
        /// A zero-divisor pair modulo the ideal, when one was produced.
        witness: Option<(Vec<BigInt>, Vec<BigInt>)>,
    },
    Unknown,
}

/// A decomposition of zero into a product of prime ideals, with the
/// characteristic of each quotient domain.
#[derive(Clone, Debug)]
pub struct PrimeDecomposition {
    pub ideals: Vec<Subgroup>,
    pub char_vector: Vec<BigInt>,
    pub zero_count: usize,
    pub primality: Vec<Primality>,
    /// True when the search minimized the zero count among everything it
    /// found; never a global minimality claim.
    pub minimal_among_found: bool,
}

/// A descending chain of subgroups ending at zero.
#[derive(Clone, Debug)]
pub struct PSeries {
    pub terms: Vec<Subgroup>,
}

#[derive(Clone, Debug)]
pub struct SearchBounds {
    /// Coordinate height of candidate ideal generators over infinite rings.
    pub height: u32,
    /// Maximum number of factors tried in a decomposition.
    pub max_factors: usize,
    /// Zero-divisor search height for primality over infinite quotients.
    pub divisor_height: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            height: 4,
            max_factors: 4,
            divisor_height: 3,
        }
    }
}

/// Smallest ideal containing the given elements: additive closure under
/// multiplication by ring generators, iterated to a fixed point.
pub fn ideal_generated(a: &ScalarRingPresentation, gens: &[Vec<BigInt>]) -> Subgroup {
    let r = a.ring();
    let mut current = Subgroup::from_gen_vectors(r.group(), gens.to_vec());
    loop {
        let mut extra: Vec<Vec<BigInt>> = Vec::new();
        for g in current.rows().rows_iter() {
            for j in 0..r.rank() {
                let mut e = vec![BigInt::zero(); r.rank()];
                e[j] = BigInt::one();
                let p = r.multiply_raw(g, &e);
                if !current.membership(&p) {
                    extra.push(p);
                }
            }
        }
        if extra.is_empty() {
            return current;
        }
        let mut rows: Vec<Vec<BigInt>> = current
            .rows()
            .rows_iter()
            .map(|r| r.to_vec())
            .collect();
        rows.extend(extra);
        current = Subgroup::from_gen_vectors(r.group(), rows);
    }
}

/// Product of finitely many ideals: the ideal generated by products of one
/// generator from each factor, folded pairwise.
pub fn ideal_product(a: &ScalarRingPresentation, ideals: &[Subgroup]) -> Subgroup {
    assert!(!ideals.is_empty(), "product of an empty family");
    let mut acc = ideals[0].clone();
    for next in &ideals[1..] {
        acc = ideal_pair_product(a, &acc, next);
    }
    acc
}

fn ideal_pair_product(a: &ScalarRingPresentation, i: &Subgroup, j: &Subgroup) -> Subgroup {
    let r = a.ring();
    let mut gens = Vec::new();
    for x in i.rows().rows_iter() {
        for y in j.rows().rows_iter() {
            gens.push(r.multiply_raw(x, y));
        }
    }
    ideal_generated(a, &gens)
}

fn is_ideal(a: &ScalarRingPresentation, i: &Subgroup) -> bool {
    let r = a.ring();
    i.rows().rows_iter().all(|g| {
        (0..r.rank()).all(|j| {
            let mut e = vec![BigInt::zero(); r.rank()];
            e[j] = BigInt::one();
            i.membership(&r.multiply_raw(g, &e))
        })
    })
}

/// Quotient scalar ring by an ideal, with the projection data.
pub fn quotient_scalar(
    a: &ScalarRingPresentation,
    i: &Subgroup,
) -> Result<(ScalarRingPresentation, QuotientData), Error> {
    let (ring, qd) = a.ring().quotient_ring(i)?;
    let one = qd.project(&a.one().coords);
    Ok((ScalarRingPresentation::new(ring, &one)?, qd))
}

/// Primality test. Exact over finite quotients; over infinite quotients it
/// certifies the integers, refutes via torsion or a bounded zero-divisor
/// search, and otherwise reports Unknown.
pub fn is_prime_ideal(a: &ScalarRingPresentation, i: &Subgroup, bounds: &SearchBounds) -> Primality {
    debug_assert!(is_ideal(a, i), "primality asked of a non-ideal");
    // A prime ideal is proper.
    if i == &Subgroup::full(a.ring().group()) {
        return Primality::No { witness: None };
    }
    let Ok((q, qd)) = quotient_scalar(a, i) else {
        return Primality::No { witness: None };
    };
    let inv = q.ring().additive_invariants();
    if inv.is_trivial() {
        return Primality::No { witness: None };
    }
    if inv.is_finite() {
        match crate::ring::scalar::finite_ring_is_domain(&q).expect("finite quotient") {
            (true, _) => return Primality::Yes,
            (false, w) => {
                return Primality::No {
                    witness: w.map(|(x, y)| (qd.lift(&x), qd.lift(&y))),
                }
            }
        }
    }
    // Infinite quotient with torsion: a torsion element against a multiple
    // of the unit is a zero-divisor pair.
    if !inv.torsion_factors.is_empty() {
        let d = inv.torsion_factors.last().unwrap().clone();
        let idx = qd
            .periods
            .iter()
            .position(|p| !p.is_zero())
            .expect("torsion present");
        let mut t = vec![BigInt::zero(); q.ring().rank()];
        t[idx] = BigInt::one();
        let d_one: Vec<BigInt> = q.one().coords.iter().map(|c| &d * c).collect();
        return Primality::No {
            witness: Some((qd.lift(&t), qd.lift(&d_one))),
        };
    }
    // Torsion-free rank 1: the quotient is the integers exactly when the
    // generator squares to plus or minus itself with a matching unit.
    if inv.free_rank == 1 {
        let g = q.ring().generator(0);
        let gg = q.ring().multiply(&g, &g);
        let c = &gg.coords[0];
        if (c.is_one() || (-c).is_one()) && !q.one().coords[0].is_zero() {
            return Primality::Yes;
        }
    }
    // Bounded zero-divisor search.
    let h = bounds.divisor_height;
    let (pool, _) = crate::ring::iso::candidate_pool(q.ring().group(), h);
    for x in &pool {
        if vec_is_zero(x) {
            continue;
        }
        for y in &pool {
            if vec_is_zero(y) {
                continue;
            }
            let p = q.ring().element(&q.ring().multiply_raw(x, y));
            if q.ring().is_zero_element(&p) {
                return Primality::No {
                    witness: Some((qd.lift(x), qd.lift(y))),
                };
            }
        }
    }
    Primality::Unknown
}

/// Additive order of the unit in the quotient domain (0 = infinite).
pub fn quotient_characteristic(
    a: &ScalarRingPresentation,
    i: &Subgroup,
    bounds: &SearchBounds,
) -> Result<BigInt, Error> {
    if is_prime_ideal(a, i, bounds) != Primality::Yes {
        return Err(Error::Precondition(
            "characteristic asked of a non-domain quotient".into(),
        ));
    }
    Ok(i.element_order(&a.one().coords))
}

/// Checks a claimed decomposition: product of the ideals is zero, every
/// factor is certified prime, quotients are nonzero, and the characteristic
/// vector matches.
pub fn verify_decomposition(
    a: &ScalarRingPresentation,
    p: &PrimeDecomposition,
    bounds: &SearchBounds,
) -> bool {
    if p.ideals.is_empty() || p.ideals.len() != p.char_vector.len() {
        return false;
    }
    let product = ideal_product(a, &p.ideals);
    if product != Subgroup::zero(a.ring().group()) {
        return false;
    }
    for (i, ideal) in p.ideals.iter().enumerate() {
        if is_prime_ideal(a, ideal, bounds) != Primality::Yes {
            return false;
        }
        let lambda = ideal.element_order(&a.one().coords);
        if lambda != p.char_vector[i] {
            return false;
        }
    }
    true
}

/// Candidate prime ideals: every ideal for a finite ring; the zero ideal,
/// torsion-prime multiples of the unit, and bounded-height principal ideals
/// for an infinite one. Deterministically ordered by canonical rows.
fn candidate_primes(a: &ScalarRingPresentation, bounds: &SearchBounds) -> Vec<Subgroup> {
    let r = a.ring();
    let mut raw: Vec<Subgroup> = Vec::new();
    if let Some(elems) = r.enumerate_elements() {
        // All subgroups, by closing under one added cyclic generator at a
        // time; filter to ideals afterwards.
        let mut seen = std::collections::HashSet::new();
        let zero = Subgroup::zero(r.group());
        seen.insert(format!("{:?}", zero.rows()));
        let mut queue = vec![zero.clone()];
        let mut all = vec![zero];
        while let Some(s) = queue.pop() {
            for x in &elems {
                if s.membership(x) {
                    continue;
                }
                let mut rows: Vec<Vec<BigInt>> =
                    s.rows().rows_iter().map(|r| r.to_vec()).collect();
                rows.push(x.clone());
                let bigger = Subgroup::from_gen_vectors(r.group(), rows);
                let key = format!("{:?}", bigger.rows());
                if seen.insert(key) {
                    queue.push(bigger.clone());
                    all.push(bigger);
                }
            }
        }
        raw.extend(all.into_iter().filter(|s| is_ideal(a, s)));
    } else {
        raw.push(Subgroup::zero(r.group()));
        let mut torsion_primes: Vec<BigInt> = Vec::new();
        for f in r.additive_invariants().torsion_factors {
            let mut m = f.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= m {
                if (&m % &p).is_zero() {
                    torsion_primes.push(p.clone());
                    while (&m % &p).is_zero() {
                        m = &m / &p;
                    }
                }
                p += 1;
            }
            if m > BigInt::one() {
                torsion_primes.push(m);
            }
        }
        for p in torsion_primes {
            let v: Vec<BigInt> = a.one().coords.iter().map(|c| &p * c).collect();
            raw.push(ideal_generated(a, &[v]));
        }
        let (pool, _) = crate::ring::iso::candidate_pool(r.group(), bounds.height);
        for v in pool.into_iter().take(4096) {
            if vec_is_zero(&v) {
                continue;
            }
            raw.push(ideal_generated(a, &[v]));
        }
    }
    // Deduplicate, drop improper, sort deterministically.
    let full = Subgroup::full(r.group());
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<Subgroup> = Vec::new();
    for s in raw {
        if s == full {
            continue;
        }
        let key = format!("{:?}", s.rows());
        if seen.insert(key) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| format!("{:?}", s.rows()));
    out
}

/// Best-effort search for a decomposition of zero into certified prime
/// ideals, minimizing the number of characteristic-zero factors among the
/// decompositions found.
pub fn find_decomposition(
    a: &ScalarRingPresentation,
    bounds: &SearchBounds,
) -> Option<PrimeDecomposition> {
    let zero = Subgroup::zero(a.ring().group());
    let candidates: Vec<(Subgroup, BigInt)> = candidate_primes(a, bounds)
        .into_iter()
        .filter(|s| is_prime_ideal(a, s, bounds) == Primality::Yes)
        .map(|s| {
            let lambda = s.element_order(&a.one().coords);
            (s, lambda)
        })
        .collect();
    if candidates.is_empty() {
        return None;
    }
    struct Found {
        indices: Vec<usize>,
        zeros: usize,
    }
    let mut best: Option<Found> = None;
    // Multisets as non-decreasing index sequences, depth-first.
    fn rec(
        a: &ScalarRingPresentation,
        zero: &Subgroup,
        candidates: &[(Subgroup, BigInt)],
        start: usize,
        product: &Subgroup,
        chosen: &mut Vec<usize>,
        zeros: usize,
        max_factors: usize,
        best: &mut Option<Found>,
    ) {
        if let Some(b) = best {
            if zeros >= b.zeros && !chosen.is_empty() {
                // Cannot strictly improve along this branch.
                if zeros > b.zeros {
                    return;
                }
            }
        }
        if product == zero && !chosen.is_empty() {
            let better = match best {
                None => true,
                Some(b) => {
                    zeros < b.zeros || (zeros == b.zeros && chosen.len() < b.indices.len())
                }
            };
            if better {
                *best = Some(Found {
                    indices: chosen.clone(),
                    zeros,
                });
            }
            return;
        }
        if chosen.len() >= max_factors {
            return;
        }
        for i in start..candidates.len() {
            let (ideal, lambda) = &candidates[i];
            let next = if chosen.is_empty() {
                ideal.clone()
            } else {
                ideal_product(a, &[product.clone(), ideal.clone()])
            };
            if !chosen.is_empty() && &next == product {
                // No progress with this factor here.
                continue;
            }
            chosen.push(i);
            let z = zeros + usize::from(lambda.is_zero());
            rec(a, zero, candidates, i, &next, chosen, z, max_factors, best);
            chosen.pop();
        }
    }
    rec(
        a,
        &zero,
        &candidates,
        0,
        &Subgroup::full(a.ring().group()),
        &mut Vec::new(),
        0,
        bounds.max_factors,
        &mut best,
    );
    let found = best?;
    let ideals: Vec<Subgroup> = found
        .indices
        .iter()
        .map(|&i| candidates[i].0.clone())
        .collect();
    let char_vector: Vec<BigInt> = found
        .indices
        .iter()
        .map(|&i| candidates[i].1.clone())
        .collect();
    let dec = PrimeDecomposition {
        zero_count: found.zeros,
        primality: vec![Primality::Yes; ideals.len()],
        ideals,
        char_vector,
        minimal_among_found: true,
    };
    debug_assert!(verify_decomposition(a, &dec, bounds));
    Some(dec)
}

/// The descending ideal series A > p1 > p1 p2 > ... > 0.
pub fn p_series(a: &ScalarRingPresentation, p: &PrimeDecomposition) -> PSeries {
    let mut terms = vec![Subgroup::full(a.ring().group())];
    let mut acc: Option<Subgroup> = None;
    for ideal in &p.ideals {
        let next = match &acc {
            None => ideal.clone(),
            Some(prev) => ideal_product(a, &[prev.clone(), ideal.clone()]),
        };
        terms.push(next.clone());
        acc = Some(next);
    }
    PSeries { terms }
}

/// Submodule generated by rows: additive span closed under the scalar
/// action.
pub fn submodule_generated(
    m: &TwoSortedModulePresentation,
    gens: &[Vec<BigInt>],
) -> Subgroup {
    let ns = m.scalars.rank();
    let mut current = Subgroup::from_gen_vectors(&m.module, gens.to_vec());
    loop {
        let mut extra = Vec::new();
        for g in current.rows().rows_iter() {
            for i in 0..ns {
                let mut c = vec![BigInt::zero(); ns];
                c[i] = BigInt::one();
                let img = m.act(&c, g);
                if !current.membership(&img) {
                    extra.push(img);
                }
            }
        }
        if extra.is_empty() {
            return current;
        }
        let mut rows: Vec<Vec<BigInt>> = current
            .rows()
            .rows_iter()
            .map(|r| r.to_vec())
            .collect();
        rows.extend(extra);
        current = Subgroup::from_gen_vectors(&m.module, rows);
    }
}

/// The induced module series M >= p1 M >= p1 p2 M >= ... >= 0.
pub fn module_p_series(
    m: &TwoSortedModulePresentation,
    p: &PrimeDecomposition,
) -> PSeries {
    let mut terms = vec![Subgroup::full(&m.module)];
    let mut current = terms[0].clone();
    for ideal in &p.ideals {
        let mut gens = Vec::new();
        for arow in ideal.rows().rows_iter() {
            for mrow in current.rows().rows_iter() {
                gens.push(m.act(arow, mrow));
            }
        }
        current = submodule_generated(m, &gens);
        terms.push(current.clone());
    }
    PSeries { terms }
}

/// The intersection of the subgroups Z*1 + p_i over the decomposition.
pub fn a_p_subring(a: &ScalarRingPresentation, p: &PrimeDecomposition) -> Subgroup {
    let one_span =
        Subgroup::from_gen_vectors(a.ring().group(), vec![a.one().coords.clone()]);
    let mut acc: Option<Subgroup> = None;
    for ideal in &p.ideals {
        let term = one_span.sum(ideal).expect("same ambient");
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.intersection(&term).expect("same ambient"),
        });
    }
    acc.expect("decomposition has at least one factor")
}

/// Pseudo-bases for both sorts refining the series of a decomposition:
/// generators of each successive quotient lifted in order, with periods.
#[derive(Clone, Debug)]
pub struct SeriesPseudoBasis {
    pub scalar_rows: IntMatrix,
    pub scalar_periods: Vec<BigInt>,
    pub module_rows: IntMatrix,
    pub module_periods: Vec<BigInt>,
}

pub fn p_series_pseudo_basis(
    m: &TwoSortedModulePresentation,
    p: &PrimeDecomposition,
) -> SeriesPseudoBasis {
    let a_series = p_series(&m.scalars, p);
    let m_series = module_p_series(m, p);
    let (scalar_rows, scalar_periods) = chain_pseudo_basis(&a_series);
    let (module_rows, module_periods) = chain_pseudo_basis(&m_series);
    SeriesPseudoBasis {
        scalar_rows,
        scalar_periods,
        module_rows,
        module_periods,
    }
}

/// Lifts generators of each successive quotient of a descending chain,
/// deterministically through the Smith decomposition of each step.
pub(crate) fn chain_pseudo_basis(series: &PSeries) -> (IntMatrix, Vec<BigInt>) {
    let n = series.terms[0].ambient().ngens();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut periods: Vec<BigInt> = Vec::new();
    for w in series.terms.windows(2) {
        let (top, bottom) = (&w[0], &w[1]);
        let x = crate::zlattice::express_rows_in(top.rows(), bottom.rows());
        let qd = QuotientData::of_lattice(top.rows().rows(), &x);
        for (i, period) in qd.periods.iter().enumerate() {
            rows.push(top.rows().vec_mul(qd.lifts.row(i)));
            periods.push(period.clone());
        }
    }
    (IntMatrix::from_row_vectors(rows, n), periods)
}

/// Minimal number of generators of the additive group of a scalar ring.
pub fn minimal_generator_count(a: &ScalarRingPresentation) -> usize {
    a.ring().additive_invariants().min_generators()
}

/// Minimal additive generator count of the module sort, plus a greedy upper
/// bound on the number of module generators over the scalars.
pub fn minimal_generator_count_module(m: &TwoSortedModulePresentation) -> (usize, usize) {
    let r_m = m.module.invariants().min_generators();
    let nm = m.module.ngens();
    let mut current = Subgroup::zero(&m.module);
    let mut count = 0usize;
    for j in 0..nm {
        let mut e = vec![BigInt::zero(); nm];
        e[j] = BigInt::one();
        if current.membership(&e) {
            continue;
        }
        let mut gens: Vec<Vec<BigInt>> = current
            .rows()
            .rows_iter()
            .map(|r| r.to_vec())
            .collect();
        gens.push(e);
        current = submodule_generated(m, &gens);
        count += 1;
    }
    (r_m, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::zlattice::vec_of_i64;

    fn z6() -> ScalarRingPresentation {
        samples::integers_mod_scalar(6)
    }

    #[test]
    fn ideal_generated_examples() {
        let z = samples::integers_scalar();
        let two = ideal_generated(&z, &[vec_of_i64(&[2])]);
        assert!(two.membership(&vec_of_i64(&[4])));
        assert!(!two.membership(&vec_of_i64(&[1])));
        let a = z6();
        let i = ideal_generated(&a, &[vec_of_i64(&[2])]);
        assert!(i.membership(&vec_of_i64(&[4])));
        assert!(!i.membership(&vec_of_i64(&[3])));
        let d = samples::dual_numbers();
        let x = ideal_generated(&d, &[vec_of_i64(&[0, 1])]);
        assert!(x.membership(&vec_of_i64(&[0, 5])));
        assert!(!x.membership(&vec_of_i64(&[1, 0])));
    }

    #[test]
    fn ideal_product_examples() {
        let a = z6();
        let two = ideal_generated(&a, &[vec_of_i64(&[2])]);
        let three = ideal_generated(&a, &[vec_of_i64(&[3])]);
        let prod = ideal_product(&a, &[two.clone(), three]);
        assert_eq!(prod, Subgroup::zero(a.ring().group()));
        let d = samples::dual_numbers();
        let x = ideal_generated(&d, &[vec_of_i64(&[0, 1])]);
        let xx = ideal_product(&d, &[x.clone(), x.clone()]);
        assert_eq!(xx, Subgroup::zero(d.ring().group()));
        // I * A = I for unital rings.
        let full = Subgroup::full(a.ring().group());
        assert_eq!(ideal_product(&a, &[two.clone(), full]), two);
    }

    #[test]
    fn primality_examples() {
        let b = SearchBounds::default();
        let a = z6();
        let two = ideal_generated(&a, &[vec_of_i64(&[2])]);
        assert_eq!(is_prime_ideal(&a, &two, &b), Primality::Yes);
        let d = samples::dual_numbers();
        let x = ideal_generated(&d, &[vec_of_i64(&[0, 1])]);
        assert_eq!(is_prime_ideal(&d, &x, &b), Primality::Yes);
        let z8 = samples::integers_mod_scalar(8);
        let four = ideal_generated(&z8, &[vec_of_i64(&[4])]);
        assert!(matches!(is_prime_ideal(&z8, &four, &b), Primality::No { .. }));
    }

    #[test]
    fn characteristic_examples() {
        let b = SearchBounds::default();
        let z = samples::integers_scalar();
        let zero = Subgroup::zero(z.ring().group());
        assert_eq!(quotient_characteristic(&z, &zero, &b).unwrap(), BigInt::zero());
        let a = z6();
        let two = ideal_generated(&a, &[vec_of_i64(&[2])]);
        assert_eq!(quotient_characteristic(&a, &two, &b).unwrap(), BigInt::from(2));
        let d = samples::dual_numbers();
        let x = ideal_generated(&d, &[vec_of_i64(&[0, 1])]);
        assert_eq!(quotient_characteristic(&d, &x, &b).unwrap(), BigInt::zero());
        let z8 = samples::integers_mod_scalar(8);
        let four = ideal_generated(&z8, &[vec_of_i64(&[4])]);
        assert!(quotient_characteristic(&z8, &four, &b).is_err());
    }

    #[test]
    fn decomposition_z6() {
        let b = SearchBounds::default();
        let a = z6();
        let dec = find_decomposition(&a, &b).unwrap();
        assert_eq!(dec.ideals.len(), 2);
        assert_eq!(dec.char_vector, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(dec.zero_count, 0);
        assert!(verify_decomposition(&a, &dec, &b));
    }

    #[test]
    fn decomposition_integers() {
        let b = SearchBounds::default();
        let z = samples::integers_scalar();
        let dec = find_decomposition(&z, &b).unwrap();
        assert_eq!(dec.ideals.len(), 1);
        assert_eq!(dec.char_vector, vec![BigInt::zero()]);
        assert_eq!(dec.zero_count, 1);
        assert!(verify_decomposition(&z, &dec, &b));
    }

    #[test]
    fn decomposition_dual_numbers() {
        let b = SearchBounds::default();
        let d = samples::dual_numbers();
        let dec = find_decomposition(&d, &b).unwrap();
        assert_eq!(dec.ideals.len(), 2);
        assert_eq!(dec.ideals[0], dec.ideals[1]);
        assert_eq!(dec.char_vector, vec![BigInt::zero(), BigInt::zero()]);
        assert!(verify_decomposition(&d, &dec, &b));
    }

    #[test]
    fn rejects_wrong_decomposition() {
        let b = SearchBounds::default();
        let a = z6();
        let two = ideal_generated(&a, &[vec_of_i64(&[2])]);
        let bad = PrimeDecomposition {
            ideals: vec![two.clone(), two.clone()],
            char_vector: vec![BigInt::from(2), BigInt::from(2)],
            zero_count: 0,
            primality: vec![Primality::Yes, Primality::Yes],
            minimal_among_found: false,
        };
        assert!(!verify_decomposition(&a, &bad, &b));
    }

    #[test]
    fn series_and_subring_z6() {
        let b = SearchBounds::default();
        let a = z6();
        let dec = find_decomposition(&a, &b).unwrap();
        let series = p_series(&a, &dec);
        assert_eq!(series.terms.len(), 3);
        assert_eq!(series.terms[0], Subgroup::full(a.ring().group()));
        assert_eq!(series.terms[2], Subgroup::zero(a.ring().group()));
        let sub = a_p_subring(&a, &dec);
        // 1 generates everything, so both summands are the whole ring.
        assert_eq!(sub, Subgroup::full(a.ring().group()));
    }

    #[test]
    fn a_p_subring_examples() {
        let b = SearchBounds::default();
        let z = samples::integers_scalar();
        let dec = find_decomposition(&z, &b).unwrap();
        assert_eq!(a_p_subring(&z, &dec), Subgroup::full(z.ring().group()));
        let d = samples::dual_numbers();
        let dec = find_decomposition(&d, &b).unwrap();
        assert_eq!(a_p_subring(&d, &dec), Subgroup::full(d.ring().group()));
    }

    #[test]
    fn pseudo_basis_of_z6_over_itself() {
        let b = SearchBounds::default();
        let a = z6();
        let dec = find_decomposition(&a, &b).unwrap();
        let m = TwoSortedModulePresentation::new(
            a.clone(),
            a.ring().group().clone(),
            vec![vec![BigInt::one()]],
        )
        .unwrap();
        let pb = p_series_pseudo_basis(&m, &dec);
        assert_eq!(pb.scalar_periods, vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(pb.scalar_rows.row_vec(0), vec_of_i64(&[1]));
        assert_eq!(pb.scalar_rows.row_vec(1), vec_of_i64(&[2]));
        assert_eq!(pb.module_periods, pb.scalar_periods);
    }

    #[test]
    fn pseudo_basis_of_free_module() {
        let b = SearchBounds::default();
        let z = samples::integers_scalar();
        let dec = find_decomposition(&z, &b).unwrap();
        let m = TwoSortedModulePresentation::new(
            z.clone(),
            crate::zlattice::AbGroupPresentation::free(2),
            vec![
                vec![BigInt::one(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::one()],
            ],
        )
        .unwrap();
        let pb = p_series_pseudo_basis(&m, &dec);
        assert_eq!(pb.scalar_periods, vec![BigInt::zero()]);
        assert_eq!(pb.module_periods, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn generator_counts() {
        let z = samples::integers_scalar();
        assert_eq!(minimal_generator_count(&z), 1);
        // Cross-check |A/2A| = 2^r for torsion-free rings.
        let two = Subgroup::from_gen_vectors(z.ring().group(), vec![vec_of_i64(&[2])]);
        assert_eq!(two.index(), crate::zlattice::Index::Finite(BigInt::from(2)));
        assert_eq!(minimal_generator_count(&z6()), 1);
        let r = samples::build_ring(&[0, 2], &[(1, &[])], &[]);
        assert_eq!(r.additive_invariants().min_generators(), 2);
    }
}
