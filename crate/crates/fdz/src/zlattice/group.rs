//! Finitely generated abelian groups presented by integer relation matrices,
//! and their subgroups as integer lattices.
//!
//! A presented group is `Z^ngens / rowspan(relations)`. A subgroup is stored
//! as the full preimage lattice of its elements, i.e. the Hermite form of its
//! generator rows together with the ambient relations. Two subgroups of the
//! same ambient are equal exactly when their stored rows are equal entrywise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{vec_is_zero, IntMatrix};
use super::normal::{hnf, inverse_unimodular, kernel_basis, snf};
use crate::error::Error;

/// Canonical isomorphism type of a finitely generated abelian group: free
/// rank plus torsion factors in a divisibility chain (each >= 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbInvariants {
    pub free_rank: usize,
    pub torsion_factors: Vec<BigInt>,
}

impl AbInvariants {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        let mut p = BigInt::one();
        for f in &self.torsion_factors {
            p *= f;
        }
        Some(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn min_generators(&self) -> usize {
        self.free_rank + self.torsion_factors.len()
    }
}

/// A finitely generated abelian group, `Z^ngens` modulo the row span of a
/// relation matrix. Relations are kept in canonical Hermite form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroupPresentation {
    ngens: usize,
    relations: IntMatrix,
}

impl AbGroupPresentation {
    pub fn new(ngens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), ngens, "relation width mismatch");
        AbGroupPresentation {
            ngens,
            relations: canonical_rows(&relations),
        }
    }

    pub fn free(ngens: usize) -> Self {
        AbGroupPresentation::new(ngens, IntMatrix::zero(0, ngens))
    }

    /// Direct sum of cyclic groups of the given periods (0 = infinite).
    pub fn diagonal(periods: &[BigInt]) -> Self {
        let n = periods.len();
        let rows: Vec<Vec<BigInt>> = periods
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = p.clone();
                r
            })
            .collect();
        AbGroupPresentation::new(n, IntMatrix::from_row_vectors(rows, n))
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Canonical residue of a coordinate vector modulo the relation lattice.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        reduce_by_rows(&self.relations, x)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        vec_is_zero(&self.reduce(x))
    }

    pub fn invariants(&self) -> AbInvariants {
        invariants_of_cokernel(self.ngens, &self.relations)
    }

    pub fn order(&self) -> Option<BigInt> {
        self.invariants().order()
    }

    /// Additive order of the class of `x` (0 encodes infinite order).
    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        order_modulo_lattice(&self.relations, x)
    }

    /// All canonical residues, when the group is finite.
    pub fn enumerate_elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let pivots = pivot_columns(&self.relations);
        if pivots.len() < self.ngens {
            return None;
        }
        let mut bounds = Vec::with_capacity(self.ngens);
        for (row, col) in pivots.iter().enumerate() {
            debug_assert_eq!(row, *col);
            let p = &self.relations[(row, *col)];
            let b = u64::try_from(p.clone()).ok()?;
            bounds.push(b);
        }
        let mut out = vec![vec![BigInt::zero(); self.ngens]];
        for (i, b) in bounds.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (*b as usize));
            for x in &out {
                for v in 0..*b {
                    let mut y = x.clone();
                    y[i] = BigInt::from(v);
                    next.push(y);
                }
            }
            out = next;
        }
        Some(out.into_iter().map(|x| self.reduce(&x)).collect())
    }
}

/// A subgroup of a presented group, stored as the canonical Hermite basis of
/// its full preimage lattice in `Z^ngens`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient: AbGroupPresentation,
    rows: IntMatrix,
}

/// Index of a subgroup in its ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl Subgroup {
    pub fn new(ambient: &AbGroupPresentation, gens: &IntMatrix) -> Self {
        assert_eq!(gens.cols(), ambient.ngens(), "generator width mismatch");
        let stacked = gens.stack(ambient.relations());
        Subgroup {
            ambient: ambient.clone(),
            rows: canonical_rows(&stacked),
        }
    }

    pub fn from_gen_vectors(ambient: &AbGroupPresentation, gens: Vec<Vec<BigInt>>) -> Self {
        let m = IntMatrix::from_row_vectors(gens, ambient.ngens());
        Subgroup::new(ambient, &m)
    }

    pub fn zero(ambient: &AbGroupPresentation) -> Self {
        Subgroup::new(ambient, &IntMatrix::zero(0, ambient.ngens()))
    }

    pub fn full(ambient: &AbGroupPresentation) -> Self {
        Subgroup::new(ambient, &IntMatrix::identity(ambient.ngens()))
    }

    pub fn ambient(&self) -> &AbGroupPresentation {
        &self.ambient
    }

    /// Canonical lattice basis rows (the full preimage of the subgroup).
    pub fn rows(&self) -> &IntMatrix {
        &self.rows
    }

    pub fn membership(&self, x: &[BigInt]) -> bool {
        vec_is_zero(&reduce_by_rows(&self.rows, x))
    }

    pub fn contains(&self, other: &Subgroup) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.rows.rows_iter().all(|r| self.membership(r))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(Subgroup::new(&self.ambient, &self.rows.stack(&other.rows)))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup, Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let r1 = self.rows.rows();
        let mut neg = other.rows.clone();
        for i in 0..neg.rows() {
            neg.negate_row(i);
        }
        let stacked = self.rows.stack(&neg);
        // Combinations (x, y) with x*B1 = y*B2; their B1 halves span the
        // intersection lattice.
        let k = kernel_basis(&stacked.transpose());
        let gens: Vec<Vec<BigInt>> = (0..k.rows())
            .map(|i| {
                let w = k.row(i);
                self.rows.vec_mul(&w[..r1])
            })
            .collect();
        Ok(Subgroup::from_gen_vectors(&self.ambient, gens))
    }

    /// The isolator: all ambient elements with a nonzero integer multiple in
    /// this subgroup. Equals the preimage of the torsion of ambient/self.
    pub fn saturation(&self) -> Subgroup {
        let complement = kernel_basis(&self.rows);
        let sat = kernel_basis(&complement);
        Subgroup::new(&self.ambient, &sat)
    }

    pub fn index(&self) -> Index {
        let inv = invariants_of_cokernel(self.ambient.ngens(), &self.rows);
        match inv.order() {
            Some(n) => Index::Finite(n),
            None => Index::Infinite,
        }
    }

    /// Presents ambient/self.
    pub fn quotient_presentation(&self) -> AbGroupPresentation {
        AbGroupPresentation::new(self.ambient.ngens(), self.rows.clone())
    }

    /// Isomorphism type of ambient/self.
    pub fn quotient_invariants(&self) -> AbInvariants {
        invariants_of_cokernel(self.ambient.ngens(), &self.rows)
    }

    /// Isomorphism type of the subgroup itself (its lattice modulo the
    /// ambient relations).
    pub fn group_invariants(&self) -> AbInvariants {
        let rel = express_rows_in(&self.rows, self.ambient.relations());
        invariants_of_cokernel(self.rows.rows(), &rel)
    }

    /// Additive order of `x` modulo this subgroup (0 = infinite).
    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        order_modulo_lattice(&self.rows, x)
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        reduce_by_rows(&self.rows, x)
    }

    /// A direct complement `C` of `self` inside `within`, i.e. a subgroup
    /// with `C + self = within` and `C âˆ© self = 0`. Requires `within/self`
    /// torsion-free.
    pub fn complement_inside(&self, within: &Subgroup) -> Result<Subgroup, Error> {
        if self.ambient != within.ambient {
            return Err(Error::AmbientMismatch);
        }
        if !within.contains(self) {
            return Err(Error::InvalidInput(
                "complement: subgroup not contained in ambient subgroup".into(),
            ));
        }
        let x = express_rows_in(&within.rows, &self.rows);
        let dec = snf(&x);
        let diag = dec.d.diagonal_padded(within.rows.rows());
        if diag.iter().any(|d| !d.is_zero() && !d.is_one()) {
            return Err(Error::NoComplement);
        }
        let vinv = inverse_unimodular(&dec.v);
        let gens: Vec<Vec<BigInt>> = (0..within.rows.rows())
            .filter(|&i| diag[i].is_zero())
            .map(|i| within.rows.vec_mul(vinv.row(i)))
            .collect();
        Ok(Subgroup::from_gen_vectors(&self.ambient, gens))
    }
}

impl IntMatrix {
    /// Diagonal entries padded with zeros up to `n`.
    pub(crate) fn diagonal_padded(&self, n: usize) -> Vec<BigInt> {
        (0..n)
            .map(|i| {
                if i < self.rows() && i < self.cols() {
                    self[(i, i)].clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }
}

/// Canonical form of a lattice: Hermite rows with zero rows dropped.
pub fn canonical_rows(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(m);
    h.with_rows_removed(|i| !vec_is_zero(h.row(i)))
}

/// Reduces `x` against canonical Hermite rows, producing the unique coset
/// representative with pivot coordinates in `[0, pivot)`.
pub fn reduce_by_rows(rows: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(rows.cols(), x.len(), "width mismatch in reduce");
    let mut v = x.to_vec();
    for i in 0..rows.rows() {
        let Some(j) = rows.row(i).iter().position(|e| !e.is_zero()) else {
            continue;
        };
        let p = &rows[(i, j)];
        let q = v[j].div_floor(p);
        if q.is_zero() {
            continue;
        }
        for k in j..v.len() {
            let delta = &q * &rows[(i, k)];
            v[k] -= delta;
        }
    }
    v
}

/// Expresses each row of `what` as a combination of the rows of `basis`.
/// Panics if a row is not in the row span (callers establish containment).
pub fn express_rows_in(basis: &IntMatrix, what: &IntMatrix) -> IntMatrix {
    let bt = basis.transpose();
    let rows: Vec<Vec<BigInt>> = what
        .rows_iter()
        .map(|r| {
            crate::zlattice::normal::solve(&bt, r)
                .expect("row not contained in basis span")
        })
        .collect();
    IntMatrix::from_row_vectors(rows, basis.rows())
}

fn invariants_of_cokernel(ngens: usize, relations: &IntMatrix) -> AbInvariants {
    let dec = snf(relations);
    let diag = dec.d.diagonal_padded(relations.rows().min(ngens));
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    AbInvariants {
        free_rank: ngens - nonzero.len(),
        torsion_factors: nonzero.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

fn order_modulo_lattice(rows: &IntMatrix, x: &[BigInt]) -> BigInt {
    let dec = snf(rows);
    let y = dec.v.vec_mul(x);
    // In Smith coordinates the lattice is spanned by d_i * e_i.
    let n = y.len();
    let diag = dec.d.diagonal_padded(n);
    let mut order = BigInt::one();
    for i in 0..n {
        if diag[i].is_zero() {
            if !y[i].is_zero() {
                return BigInt::zero();
            }
        } else {
            let g = diag[i].gcd(&y[i]);
            order = order.lcm(&(&diag[i] / g));
        }
    }
    order
}

fn pivot_columns(rows: &IntMatrix) -> Vec<usize> {
    (0..rows.rows())
        .filter_map(|i| rows.row(i).iter().position(|e| !e.is_zero()))
        .collect()
}

/// Presentation data for a quotient of `Z^n` by a sublattice: generators of
/// the quotient with diagonal periods, their lifts, and the coordinate
/// projection.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub group: AbGroupPresentation,
    /// Period of each kept generator (0 = infinite).
    pub periods: Vec<BigInt>,
    /// Rows are ambient-coordinate lifts of the quotient generators.
    pub lifts: IntMatrix,
    /// `n x k` matrix: quotient coordinates of an ambient row vector `x` are
    /// `x * proj`, reduced by the quotient relations.
    pub proj: IntMatrix,
}

impl QuotientData {
    /// Quotient of the ambient presented group by a subgroup.
    pub fn of(sub: &Subgroup) -> QuotientData {
        QuotientData::of_lattice(sub.ambient().ngens(), sub.rows())
    }

    /// Quotient of `Z^n` by the row span of `lattice`.
    pub fn of_lattice(n: usize, lattice: &IntMatrix) -> QuotientData {
        assert_eq!(lattice.cols(), n);
        let dec = snf(lattice);
        let diag = dec.d.diagonal_padded(n);
        let vinv = inverse_unimodular(&dec.v);
        let kept: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
        let k = kept.len();
        let lifts = IntMatrix::from_row_vectors(
            kept.iter().map(|&i| vinv.row_vec(i)).collect(),
            n,
        );
        let mut proj = IntMatrix::zero(n, k);
        for (jj, &j) in kept.iter().enumerate() {
            for i in 0..n {
                proj[(i, jj)] = dec.v[(i, j)].clone();
            }
        }
        let periods: Vec<BigInt> = kept.iter().map(|&i| diag[i].clone()).collect();
        let group = AbGroupPresentation::diagonal(&periods);
        QuotientData {
            group,
            periods,
            lifts,
            proj,
        }
    }

    /// Maps an ambient coordinate vector to canonical quotient coordinates.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.proj.vec_mul(x))
    }

    /// Maps quotient coordinates back to an ambient representative.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.lifts.vec_mul(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlattice::matrix::vec_of_i64;

    fn z2() -> AbGroupPresentation {
        AbGroupPresentation::free(2)
    }

    fn z_z2() -> AbGroupPresentation {
        // Z + Z/2 with relation (0, 2).
        AbGroupPresentation::new(2, IntMatrix::from_rows(&[vec![0, 2]]))
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(
            z2().invariants(),
            AbInvariants { free_rank: 2, torsion_factors: vec![] }
        );
        let g = AbGroupPresentation::new(1, IntMatrix::from_rows(&[vec![6]]));
        assert_eq!(
            g.invariants(),
            AbInvariants { free_rank: 0, torsion_factors: vec![BigInt::from(6)] }
        );
        let g = AbGroupPresentation::new(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(
            g.invariants(),
            AbInvariants {
                free_rank: 0,
                torsion_factors: vec![BigInt::from(2), BigInt::from(4)]
            }
        );
    }

    #[test]
    fn invariants_presentation_independent() {
        // Random-looking unimodular change of presentation keeps invariants.
        let g1 = AbGroupPresentation::new(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        let g2 = AbGroupPresentation::new(2, IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        // [[2,4],[6,8]] has SNF diag(2,4) as well.
        assert_eq!(g1.invariants(), g2.invariants());
    }

    #[test]
    fn membership_examples() {
        let s = Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[2, 0])]);
        assert!(s.membership(&vec_of_i64(&[4, 0])));
        assert!(!s.membership(&vec_of_i64(&[1, 0])));
        let s = Subgroup::from_gen_vectors(&z_z2(), vec![vec_of_i64(&[2, 0])]);
        assert!(s.membership(&vec_of_i64(&[0, 2])));
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[1, 1])]);
        let b = Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[1, -1])]);
        let s = a.sum(&b).unwrap();
        // Index-2 subgroup {(x, y) : x + y even}.
        assert_eq!(s.index(), Index::Finite(BigInt::from(2)));
        assert!(s.membership(&vec_of_i64(&[1, 1])));
        assert!(s.membership(&vec_of_i64(&[2, 0])));
        assert!(!s.membership(&vec_of_i64(&[1, 0])));
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Subgroup::zero(&z2()));
        assert_eq!(a.intersection(&a).unwrap(), a);
    }

    #[test]
    fn saturation_examples() {
        let s = Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[2, 0])]);
        let sat = s.saturation();
        assert_eq!(
            sat,
            Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[1, 0])])
        );
        // Torsion is always inside the saturation.
        let zero = Subgroup::zero(&z_z2());
        let sat = zero.saturation();
        assert!(sat.membership(&vec_of_i64(&[0, 1])));
        assert!(!sat.membership(&vec_of_i64(&[1, 0])));
        // Finite index saturates to everything.
        let s = Subgroup::from_gen_vectors(
            &z2(),
            vec![vec_of_i64(&[1, 1]), vec_of_i64(&[1, -1])],
        );
        assert_eq!(s.saturation(), Subgroup::full(&z2()));
    }

    #[test]
    fn saturation_idempotent() {
        let s = Subgroup::from_gen_vectors(&z_z2(), vec![vec_of_i64(&[2, 1])]);
        let s1 = s.saturation();
        assert_eq!(s1.saturation(), s1);
        assert!(s1.contains(&s));
    }

    #[test]
    fn index_and_quotient() {
        let s = Subgroup::from_gen_vectors(
            &z2(),
            vec![vec_of_i64(&[1, 1]), vec_of_i64(&[1, -1])],
        );
        assert_eq!(s.index(), Index::Finite(BigInt::from(2)));
        let free = Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[1, 0])]);
        assert_eq!(free.index(), Index::Infinite);
    }

    #[test]
    fn complement_examples() {
        let amb = z_z2();
        let torsion = Subgroup::zero(&amb).saturation();
        let c = torsion.complement_inside(&Subgroup::full(&amb)).unwrap();
        assert_eq!(
            c,
            Subgroup::from_gen_vectors(&amb, vec![vec_of_i64(&[1, 0])])
        );
        // A/D = Z/2 has no guaranteed complement.
        let d = Subgroup::from_gen_vectors(&z2(), vec![vec_of_i64(&[2, 0]), vec_of_i64(&[0, 1])]);
        assert!(matches!(
            d.complement_inside(&Subgroup::full(&z2())),
            Err(Error::NoComplement)
        ));
    }

    #[test]
    fn element_orders() {
        let g = z_z2();
        assert_eq!(g.element_order(&vec_of_i64(&[0, 1])), BigInt::from(2));
        assert_eq!(g.element_order(&vec_of_i64(&[1, 0])), BigInt::zero());
        assert_eq!(g.element_order(&vec_of_i64(&[0, 2])), BigInt::one());
    }

    #[test]
    fn enumerate_finite() {
        let g = AbGroupPresentation::new(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        let elems = g.enumerate_elements().unwrap();
        assert_eq!(elems.len(), 6);
        assert!(z2().enumerate_elements().is_none());
    }

    #[test]
    fn quotient_data_roundtrip() {
        let s = Subgroup::from_gen_vectors(&z_z2(), vec![vec_of_i64(&[2, 0])]);
        let q = QuotientData::of(&s);
        // Z + Z/2 modulo <2e1> is Z/2 + Z/2.
        let inv = q.group.invariants();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion_factors, vec![BigInt::from(2), BigInt::from(2)]);
        for x in [vec_of_i64(&[1, 0]), vec_of_i64(&[0, 1]), vec_of_i64(&[1, 1])] {
            let y = q.project(&x);
            let back = q.lift(&y);
            // x - lift(project(x)) must be in the sublattice.
            let diff: Vec<BigInt> = x.iter().zip(&back).map(|(a, b)| a - b).collect();
            assert!(s.membership(&diff));
        }
    }
}
