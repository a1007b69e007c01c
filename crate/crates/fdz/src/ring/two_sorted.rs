//! Two-sorted modules and algebras over scalar rings, and the structure
//! constant records that determine them up to isomorphism.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{diag, Diagnostic, ScalarRingPresentation};
use crate::error::Error;
use crate::zlattice::{express_in_rows, AbGroupPresentation, IntMatrix};

/// A module over a scalar ring as a two-sorted structure: the scalar sort,
/// the module sort, and the action tensor expressing each `c_i * u_j` in
/// module coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSortedModulePresentation {
    pub scalars: ScalarRingPresentation,
    pub module: AbGroupPresentation,
    action: Vec<Vec<BigInt>>,
}

impl TwoSortedModulePresentation {
    pub fn new(
        scalars: ScalarRingPresentation,
        module: AbGroupPresentation,
        action: Vec<Vec<BigInt>>,
    ) -> Result<Self, Error> {
        let ns = scalars.rank();
        let nm = module.ngens();
        if action.len() != ns * nm {
            return Err(Error::InvalidInput("action tensor size mismatch".into()));
        }
        if action.iter().any(|r| r.len() != nm) {
            return Err(Error::InvalidInput("action tensor width mismatch".into()));
        }
        Ok(TwoSortedModulePresentation {
            scalars,
            module,
            action,
        })
    }

    pub fn action_row(&self, ci: usize, uj: usize) -> &[BigInt] {
        &self.action[ci * self.module.ngens() + uj]
    }

    /// Action of an arbitrary scalar on an arbitrary module element.
    pub fn act(&self, c: &[BigInt], u: &[BigInt]) -> Vec<BigInt> {
        let nm = self.module.ngens();
        let mut out = vec![BigInt::zero(); nm];
        for i in 0..self.scalars.rank() {
            if c[i].is_zero() {
                continue;
            }
            for j in 0..nm {
                if u[j].is_zero() {
                    continue;
                }
                let coeff = &c[i] * &u[j];
                let row = self.action_row(i, j);
                for k in 0..nm {
                    if !row[k].is_zero() {
                        out[k] += &coeff * &row[k];
                    }
                }
            }
        }
        self.module.reduce(&out)
    }

    /// Well-definedness on both sorts, identity action of the unit, and
    /// associativity of the action over scalar multiplication.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = self.scalars.validate();
        let ns = self.scalars.rank();
        let nm = self.module.ngens();
        let srel = self.scalars.ring().group().relations();
        for r in 0..srel.rows() {
            for j in 0..nm {
                let mut u = vec![BigInt::zero(); nm];
                u[j] = BigInt::from(1);
                let img = self.act(srel.row(r), &u);
                if !crate::zlattice::vec_is_zero(&img) {
                    out.push(diag(format!(
                        "scalar relation {} does not annihilate module generator {}",
                        r + 1,
                        j + 1
                    )));
                }
            }
        }
        let mrel = self.module.relations();
        for i in 0..ns {
            let mut c = vec![BigInt::zero(); ns];
            c[i] = BigInt::from(1);
            for r in 0..mrel.rows() {
                let img = self.act(&c, mrel.row(r));
                if !crate::zlattice::vec_is_zero(&img) {
                    out.push(diag(format!(
                        "scalar generator {} does not annihilate module relation {}",
                        i + 1,
                        r + 1
                    )));
                }
            }
        }
        for j in 0..nm {
            let mut u = vec![BigInt::zero(); nm];
            u[j] = BigInt::from(1);
            let img = self.act(&self.scalars.one().coords, &u);
            if img != self.module.reduce(&u) {
                out.push(diag(format!("unit does not act as identity on generator {}", j + 1)));
            }
        }
        for i in 0..ns {
            for j in 0..ns {
                let cij = self.scalars.ring().multiply(
                    &self.scalars.ring().generator(i),
                    &self.scalars.ring().generator(j),
                );
                for k in 0..nm {
                    let mut u = vec![BigInt::zero(); nm];
                    u[k] = BigInt::from(1);
                    let mut ci = vec![BigInt::zero(); ns];
                    ci[i] = BigInt::from(1);
                    let mut cj = vec![BigInt::zero(); ns];
                    cj[j] = BigInt::from(1);
                    let lhs = self.act(&cij.coords, &u);
                    let rhs = self.act(&ci, &self.act(&cj, &u));
                    if lhs != rhs {
                        out.push(diag(format!(
                            "action not associative on scalars {}, {} and generator {}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.scalars.ring().is_finite() && self.module.invariants().is_finite()
    }
}

/// A two-sorted algebra: a module together with a multiplication tensor on
/// the module sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSortedAlgebraPresentation {
    pub module: TwoSortedModulePresentation,
    mult: Vec<Vec<BigInt>>,
}

impl TwoSortedAlgebraPresentation {
    pub fn new(
        module: TwoSortedModulePresentation,
        mult: Vec<Vec<BigInt>>,
    ) -> Result<Self, Error> {
        let nm = module.module.ngens();
        if mult.len() != nm * nm {
            return Err(Error::InvalidInput("multiplication tensor size mismatch".into()));
        }
        if mult.iter().any(|r| r.len() != nm) {
            return Err(Error::InvalidInput("multiplication tensor width mismatch".into()));
        }
        Ok(TwoSortedAlgebraPresentation { module, mult })
    }

    pub fn mult_row(&self, i: usize, j: usize) -> &[BigInt] {
        &self.mult[i * self.module.module.ngens() + j]
    }

    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let nm = self.module.module.ngens();
        let mut out = vec![BigInt::zero(); nm];
        for i in 0..nm {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..nm {
                if y[j].is_zero() {
                    continue;
                }
                let coeff = &x[i] * &y[j];
                let row = self.mult_row(i, j);
                for k in 0..nm {
                    if !row[k].is_zero() {
                        out[k] += &coeff * &row[k];
                    }
                }
            }
        }
        self.module.module.reduce(&out)
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = self.module.validate();
        let nm = self.module.module.ngens();
        let ns = self.module.scalars.rank();
        let mrel = self.module.module.relations();
        for r in 0..mrel.rows() {
            for j in 0..nm {
                let mut u = vec![BigInt::zero(); nm];
                u[j] = BigInt::from(1);
                if !crate::zlattice::vec_is_zero(&self.multiply(mrel.row(r), &u))
                    || !crate::zlattice::vec_is_zero(&self.multiply(&u, mrel.row(r)))
                {
                    out.push(diag(format!(
                        "module relation {} breaks multiplication against generator {}",
                        r + 1,
                        j + 1
                    )));
                }
            }
        }
        // Scalars act bilinearly on products.
        for c in 0..ns {
            let mut cv = vec![BigInt::zero(); ns];
            cv[c] = BigInt::from(1);
            for i in 0..nm {
                for j in 0..nm {
                    let mut ui = vec![BigInt::zero(); nm];
                    ui[i] = BigInt::from(1);
                    let mut uj = vec![BigInt::zero(); nm];
                    uj[j] = BigInt::from(1);
                    let lhs = self.multiply(&self.module.act(&cv, &ui), &uj);
                    let mid = self.module.act(&cv, &self.multiply(&ui, &uj));
                    let rhs = self.multiply(&ui, &self.module.act(&cv, &uj));
                    if lhs != mid || rhs != mid {
                        out.push(diag(format!(
                            "multiplication not scalar-bilinear at c{} u{} u{}",
                            c + 1,
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.module.is_finite()
    }
}

/// The ordered families of integer constants attached to a pair of
/// pseudo-bases: periods of both sorts, scalar products, scalar torsion,
/// action values, module torsion, and (for algebras) module products. All
/// value vectors are canonical residues, and index tuples run in
/// lexicographic order, so equality of records is structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantRecord {
    pub scalar_periods: Vec<BigInt>,
    pub module_periods: Vec<BigInt>,
    pub scalar_mult: Vec<Vec<BigInt>>,
    pub scalar_torsion: Vec<Vec<BigInt>>,
    pub scalar_one: Vec<BigInt>,
    pub action: Vec<Vec<BigInt>>,
    pub module_torsion: Vec<Vec<BigInt>>,
    pub module_mult: Option<Vec<Vec<BigInt>>>,
}

/// A pair of pseudo-bases, one per sort, as rows in the presentation's
/// coordinates.
#[derive(Clone, Debug)]
pub struct BasisChoice {
    pub scalar_rows: IntMatrix,
    pub module_rows: IntMatrix,
}

impl BasisChoice {
    pub fn standard(m: &TwoSortedModulePresentation) -> BasisChoice {
        BasisChoice {
            scalar_rows: IntMatrix::identity(m.scalars.rank()),
            module_rows: IntMatrix::identity(m.module.ngens()),
        }
    }
}

/// Periods and torsion rows of a generating family inside a presented
/// abelian group, computed against suffix spans.
pub(crate) fn family_group_data(
    group: &AbGroupPresentation,
    family: &IntMatrix,
) -> Result<(Vec<BigInt>, IntMatrix), Error> {
    let r = family.rows();
    let mut periods = vec![BigInt::zero(); r];
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..r {
        let suffix = family.with_rows_removed(|k| k > i);
        let sub = crate::zlattice::Subgroup::new(group, &suffix);
        let e = sub.element_order(family.row(i));
        if e.is_zero() {
            continue;
        }
        let target: Vec<BigInt> = family.row(i).iter().map(|v| &e * v).collect();
        let stacked = suffix.stack(group.relations());
        let y = express_in_rows(&stacked, &target)
            .ok_or_else(|| Error::CheckFailed("family torsion unsolvable".into()))?;
        let mut row = vec![BigInt::zero(); r];
        row[i] = e.clone();
        for k in 0..suffix.rows() {
            row[i + 1 + k] = -y[k].clone();
        }
        periods[i] = e;
        relations.push(row);
    }
    Ok((
        periods,
        IntMatrix::from_row_vectors(relations, r),
    ))
}

/// Expresses an old-coordinate element in family coordinates (any solution).
pub(crate) fn into_family_coords(
    group: &AbGroupPresentation,
    family: &IntMatrix,
    x: &[BigInt],
) -> Option<Vec<BigInt>> {
    let stacked = family.stack(group.relations());
    express_in_rows(&stacked, x).map(|y| y[..family.rows()].to_vec())
}

/// Computes the structure constant record of a module or algebra with
/// respect to a chosen pair of pseudo-bases. The bases must generate their
/// sorts.
pub fn structure_constants(
    m: &TwoSortedModulePresentation,
    mult: Option<&[Vec<BigInt>]>,
    basis: &BasisChoice,
) -> Result<StructureConstantRecord, Error> {
    let sc = &m.scalars;
    // Scalar sort re-presentation carries families (1) and (3).
    let new_scalar = sc.change_basis(&basis.scalar_rows)?;
    let ns = new_scalar.rank();
    // Module sort family data.
    let (mperiods, mrel) = family_group_data(&m.module, &basis.module_rows)?;
    let nm = basis.module_rows.rows();
    let new_module = AbGroupPresentation::new(nm, mrel);
    // Check the module family generates.
    let sub = crate::zlattice::Subgroup::new(&m.module, &basis.module_rows);
    for i in 0..m.module.ngens() {
        let mut e = vec![BigInt::zero(); m.module.ngens()];
        e[i] = BigInt::from(1);
        if !sub.membership(&e) {
            return Err(Error::NotGenerating);
        }
    }
    let to_module_coords = |x: &[BigInt]| -> Result<Vec<BigInt>, Error> {
        into_family_coords(&m.module, &basis.module_rows, x)
            .map(|y| new_module.reduce(&y))
            .ok_or(Error::NotGenerating)
    };

    let mut scalar_mult = Vec::with_capacity(ns * ns);
    for i in 0..ns {
        for j in 0..ns {
            scalar_mult.push(
                new_scalar
                    .ring()
                    .multiply(&new_scalar.ring().generator(i), &new_scalar.ring().generator(j))
                    .coords,
            );
        }
    }
    let mut scalar_torsion = Vec::new();
    for i in 0..ns {
        let p = &new_scalar.ring().periods()[i];
        if p.is_zero() {
            continue;
        }
        let scaled = new_scalar
            .ring()
            .scale(p, &new_scalar.ring().generator(i));
        scalar_torsion.push(scaled.coords);
    }
    let mut action = Vec::with_capacity(ns * nm);
    for i in 0..ns {
        for j in 0..nm {
            let img = m.act(basis.scalar_rows.row(i), basis.module_rows.row(j));
            action.push(to_module_coords(&img)?);
        }
    }
    let mut module_torsion = Vec::new();
    for j in 0..nm {
        if mperiods[j].is_zero() {
            continue;
        }
        let scaled: Vec<BigInt> = basis
            .module_rows
            .row(j)
            .iter()
            .map(|v| &mperiods[j] * v)
            .collect();
        module_torsion.push(to_module_coords(&scaled)?);
    }
    let module_mult = match mult {
        None => None,
        Some(tensor) => {
            let alg = TwoSortedAlgebraPresentation::new(m.clone(), tensor.to_vec())?;
            let mut rows = Vec::with_capacity(nm * nm);
            for i in 0..nm {
                for j in 0..nm {
                    let prod = alg.multiply(basis.module_rows.row(i), basis.module_rows.row(j));
                    rows.push(to_module_coords(&prod)?);
                }
            }
            Some(rows)
        }
    };

    Ok(StructureConstantRecord {
        scalar_periods: new_scalar.ring().periods().to_vec(),
        module_periods: mperiods,
        scalar_mult,
        scalar_torsion,
        scalar_one: new_scalar.one().coords.clone(),
        action,
        module_torsion,
        module_mult,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use num_traits::One;

    /// Z as a module over itself.
    fn z_over_z() -> TwoSortedModulePresentation {
        TwoSortedModulePresentation::new(
            samples::integers_scalar(),
            AbGroupPresentation::free(1),
            vec![vec![BigInt::one()]],
        )
        .unwrap()
    }

    #[test]
    fn z_over_z_valid_and_trivial_record() {
        let m = z_over_z();
        assert!(m.validate().is_empty());
        let rec = structure_constants(&m, None, &BasisChoice::standard(&m)).unwrap();
        assert_eq!(rec.scalar_mult, vec![vec![BigInt::one()]]);
        assert_eq!(rec.action, vec![vec![BigInt::one()]]);
        assert!(rec.scalar_torsion.is_empty());
        assert!(rec.module_torsion.is_empty());
    }

    #[test]
    fn z4_acting_on_z_is_rejected_but_z4_on_z4_works() {
        // Z/4 cannot act on Z (relation 4*1 must annihilate), so validation
        // reports it; the action of Z/4 on Z/4 by multiplication is fine.
        let bad = TwoSortedModulePresentation::new(
            samples::integers_mod_scalar(4),
            AbGroupPresentation::free(1),
            vec![vec![BigInt::one()]],
        )
        .unwrap();
        assert!(!bad.validate().is_empty());
        let good = TwoSortedModulePresentation::new(
            samples::integers_mod_scalar(4),
            AbGroupPresentation::diagonal(&[BigInt::from(4)]),
            vec![vec![BigInt::one()]],
        )
        .unwrap();
        assert!(good.validate().is_empty());
        let rec = structure_constants(&good, None, &BasisChoice::standard(&good)).unwrap();
        assert_eq!(rec.module_periods, vec![BigInt::from(4)]);
        assert_eq!(rec.action, vec![vec![BigInt::one()]]);
    }

    #[test]
    fn algebra_record_reproduces_ring_tensor() {
        // The fixture ring as an algebra over Z with the identity action.
        let r = samples::nonregular_rank3();
        let m = TwoSortedModulePresentation::new(
            samples::integers_scalar(),
            r.group().clone(),
            vec![
                vec![BigInt::one(), BigInt::zero(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::one(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::zero(), BigInt::one()],
            ],
        )
        .unwrap();
        let tensor: Vec<Vec<BigInt>> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| r.mult_row(i, j).to_vec())
            .collect();
        let alg = TwoSortedAlgebraPresentation::new(m.clone(), tensor.clone()).unwrap();
        assert!(alg.validate().is_empty());
        let rec = structure_constants(&m, Some(&tensor), &BasisChoice::standard(&m)).unwrap();
        let mm = rec.module_mult.unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(mm[i * 3 + j], r.group().reduce(r.mult_row(i, j)));
            }
        }
    }
}
