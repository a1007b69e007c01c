//! Bilinear map machinery: the induced map of a ring on its annihilator
//! quotient, symmetric endomorphism pairs, the largest ring of scalars of a
//! full bilinear map, its eta-linear subring, and the width/completeness
//! type of a map.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::ring::{RingPresentation, ScalarRingPresentation};
use crate::zlattice::{
    canonical_rows, express_in_rows, kernel_basis, vec_is_zero, AbGroupPresentation, IntMatrix,
    QuotientData, Subgroup,
};

/// A bilinear map f: M x M -> N between presented abelian groups, given by
/// its values on generator pairs.
#[derive(Clone, Debug)]
pub struct BilinearMapPresentation {
    pub domain: AbGroupPresentation,
    pub codomain: AbGroupPresentation,
    values: Vec<Vec<BigInt>>,
    pub full: bool,
    pub nondegenerate_left: bool,
    pub nondegenerate_right: bool,
}

impl BilinearMapPresentation {
    pub fn new(
        domain: AbGroupPresentation,
        codomain: AbGroupPresentation,
        values: Vec<Vec<BigInt>>,
    ) -> Result<Self, Error> {
        let nd = domain.ngens();
        let nc = codomain.ngens();
        if values.len() != nd * nd || values.iter().any(|v| v.len() != nc) {
            return Err(Error::InvalidInput("value table shape mismatch".into()));
        }
        // Domain relations must map to zero in either slot.
        for rho in domain.relations().rows_iter() {
            for b in 0..nd {
                let mut left = vec![BigInt::zero(); nc];
                let mut right = vec![BigInt::zero(); nc];
                for a in 0..nd {
                    if rho[a].is_zero() {
                        continue;
                    }
                    for k in 0..nc {
                        left[k] += &rho[a] * &values[a * nd + b][k];
                        right[k] += &rho[a] * &values[b * nd + a][k];
                    }
                }
                if !codomain.is_zero_element(&left) || !codomain.is_zero_element(&right) {
                    return Err(Error::InvalidInput(
                        "bilinear values incompatible with domain relations".into(),
                    ));
                }
            }
        }
        let mut map = BilinearMapPresentation {
            domain,
            codomain,
            values,
            full: false,
            nondegenerate_left: false,
            nondegenerate_right: false,
        };
        map.full = map.compute_full();
        map.nondegenerate_left = map.slot_kernel(true).is_none();
        map.nondegenerate_right = map.slot_kernel(false).is_none();
        Ok(map)
    }

    pub fn value(&self, a: usize, b: usize) -> &[BigInt] {
        &self.values[a * self.domain.ngens() + b]
    }

    /// Bilinear extension to arbitrary elements, canonically reduced.
    pub fn apply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let nd = self.domain.ngens();
        let nc = self.codomain.ngens();
        let mut out = vec![BigInt::zero(); nc];
        for a in 0..nd {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..nd {
                if y[b].is_zero() {
                    continue;
                }
                let c = &x[a] * &y[b];
                for k in 0..nc {
                    out[k] += &c * &self.value(a, b)[k];
                }
            }
        }
        self.codomain.reduce(&out)
    }

    fn compute_full(&self) -> bool {
        let sub = Subgroup::from_gen_vectors(&self.codomain, self.values.clone());
        (0..self.codomain.ngens()).all(|k| {
            let mut e = vec![BigInt::zero(); self.codomain.ngens()];
            e[k] = BigInt::one();
            sub.membership(&e)
        })
    }

    /// A nonzero element killing the given slot, if one exists.
    fn slot_kernel(&self, left: bool) -> Option<Vec<BigInt>> {
        let nd = self.domain.ngens();
        let mut sys = CongruenceSystem::new(nd);
        for b in 0..nd {
            let mut coeffs = Vec::new();
            for k in 0..self.codomain.ngens() {
                let mut row = vec![BigInt::zero(); nd];
                for a in 0..nd {
                    row[a] = if left {
                        self.value(a, b)[k].clone()
                    } else {
                        self.value(b, a)[k].clone()
                    };
                }
                coeffs.push(row);
            }
            sys.add_block(coeffs, self.codomain.relations());
        }
        let sol = sys.solve();
        for i in 0..sol.rows() {
            if !self.domain.is_zero_element(sol.row(i)) {
                return Some(sol.row_vec(i));
            }
        }
        None
    }
}

/// The induced bilinear map of a ring on R/Ann with values in the square
/// ideal, together with the coordinate data connecting it back to the ring.
#[derive(Clone, Debug)]
pub struct InducedBilinear {
    pub map: BilinearMapPresentation,
    /// ring coordinates -> domain coordinates (row vector times matrix).
    pub domain_proj: IntMatrix,
    /// domain generators as ring coordinate rows.
    pub domain_lifts: IntMatrix,
    /// codomain generators as ring coordinate rows (a basis of the square's
    /// preimage lattice).
    pub codomain_basis: IntMatrix,
}

impl InducedBilinear {
    /// Expresses a ring element of the square ideal in codomain coordinates.
    pub fn to_codomain(&self, ring_coords: &[BigInt]) -> Option<Vec<BigInt>> {
        express_in_rows(&self.codomain_basis, ring_coords)
    }
}

/// Builds f(x + Ann, y + Ann) = xy as a presented bilinear map.
pub fn induced_bilinear(r: &RingPresentation) -> InducedBilinear {
    let a = crate::ideals::ann(r);
    let sq = crate::ideals::square(r);
    let qd = QuotientData::of(&a);
    let nd = qd.lifts.rows();
    let b2 = sq.rows().clone();
    let x = crate::zlattice::express_rows_in(&b2, r.group().relations());
    let codomain = AbGroupPresentation::new(b2.rows(), x);
    let mut values = Vec::with_capacity(nd * nd);
    for i in 0..nd {
        for j in 0..nd {
            let prod = r.multiply_raw(qd.lifts.row(i), qd.lifts.row(j));
            let v = express_in_rows(&b2, &prod)
                .expect("generator products lie in the square lattice");
            values.push(codomain.reduce(&v));
        }
    }
    let map = BilinearMapPresentation::new(qd.group.clone(), codomain, values)
        .expect("induced map is compatible by construction");
    InducedBilinear {
        map,
        domain_proj: qd.proj,
        domain_lifts: qd.lifts,
        codomain_basis: b2,
    }
}

/// A compatible endomorphism pair (phi on the domain, phi0 on the codomain),
/// rows canonically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoPair {
    pub phi: IntMatrix,
    pub phi0: IntMatrix,
}

impl EndoPair {
    fn reduced(f: &BilinearMapPresentation, phi: IntMatrix, phi0: IntMatrix) -> EndoPair {
        let phi = IntMatrix::from_row_vectors(
            phi.rows_iter().map(|r| f.domain.reduce(r)).collect(),
            phi.cols(),
        );
        let phi0 = IntMatrix::from_row_vectors(
            phi0.rows_iter().map(|r| f.codomain.reduce(r)).collect(),
            phi0.cols(),
        );
        EndoPair { phi, phi0 }
    }

    /// Checks the defining identities on all generator pairs.
    pub fn satisfies(&self, f: &BilinearMapPresentation) -> bool {
        let nd = f.domain.ngens();
        for a in 0..nd {
            for b in 0..nd {
                let lhs = f.apply(self.phi.row(a), unit_vec(nd, b));
                let mid = f.apply(unit_vec(nd, a), self.phi.row(b));
                let rhs = f.codomain.reduce(&self.phi0.vec_mul(f.value(a, b)));
                if lhs != mid || lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn unit_vec(n: usize, i: usize) -> &'static [BigInt] {
    thread_local! {
        static CACHE: std::cell::RefCell<std::collections::HashMap<(usize, usize), &'static [BigInt]>> =
            std::cell::RefCell::new(std::collections::HashMap::new());
    }
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        *c.entry((n, i)).or_insert_with(|| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            Box::leak(v.into_boxed_slice())
        })
    })
}

/// A computed ring of scalars: generator pairs aligned with the presented
/// ring's generators, the identity pair, the abstract presentation, and any
/// diagnostics gathered along the way.
#[derive(Clone, Debug)]
pub struct ScalarRingResult {
    pub pairs: Vec<EndoPair>,
    pub unit_pair: EndoPair,
    pub ring: ScalarRingPresentation,
    pub diagnostics: Vec<String>,
}

/// Linear congruence systems: integer unknowns subject to blocks of
/// equations that must vanish modulo given lattices.
pub(crate) struct CongruenceSystem {
    nvars: usize,
    slacks: usize,
    /// Each row: (coefficients over nvars, slack tail entries keyed from
    /// slack base).
    rows: Vec<(Vec<BigInt>, Vec<(usize, BigInt)>)>,
}

impl CongruenceSystem {
    pub fn new(nvars: usize) -> Self {
        CongruenceSystem {
            nvars,
            slacks: 0,
            rows: Vec::new(),
        }
    }

    /// Adds a block of `m` equations `sum_v coeffs[eq][v] * x_v = 0 modulo
    /// rowspan(modulus)`, where `modulus` has width `m`.
    pub fn add_block(&mut self, coeffs: Vec<Vec<BigInt>>, modulus: &IntMatrix) {
        let m = coeffs.len();
        assert_eq!(modulus.cols(), m, "modulus width mismatch");
        let base = self.slacks;
        self.slacks += modulus.rows();
        for (eq, row) in coeffs.into_iter().enumerate() {
            assert_eq!(row.len(), self.nvars);
            let tail: Vec<(usize, BigInt)> = (0..modulus.rows())
                .map(|l| (base + l, -modulus[(l, eq)].clone()))
                .collect();
            self.rows.push((row, tail));
        }
    }

    /// Kernel of the system projected to the unknowns, canonicalized.
    pub fn solve(self) -> IntMatrix {
        let width = self.nvars + self.slacks;
        let rows: Vec<Vec<BigInt>> = self
            .rows
            .into_iter()
            .map(|(mut head, tail)| {
                head.resize(width, BigInt::zero());
                for (idx, v) in tail {
                    head[self.nvars + idx] = v;
                }
                head
            })
            .collect();
        let m = IntMatrix::from_row_vectors(rows, width);
        let k = kernel_basis(&m);
        let projected: Vec<Vec<BigInt>> = (0..k.rows())
            .map(|i| k.row(i)[..self.nvars].to_vec())
            .collect();
        canonical_rows(&IntMatrix::from_row_vectors(projected, self.nvars))
    }
}

fn phi_entry(a: usize, c: usize, nd: usize) -> usize {
    a * nd + c
}

/// Lattice of domain endomorphisms that respect the relations and are
/// symmetric for f (conditions on the first slot against the second).
fn sym_lattice(f: &BilinearMapPresentation) -> IntMatrix {
    let nd = f.domain.ngens();
    let nc = f.codomain.ngens();
    let mut sys = CongruenceSystem::new(nd * nd);
    for rho in f.domain.relations().rows_iter() {
        let mut coeffs = Vec::with_capacity(nd);
        for c in 0..nd {
            let mut row = vec![BigInt::zero(); nd * nd];
            for a in 0..nd {
                row[phi_entry(a, c, nd)] = rho[a].clone();
            }
            coeffs.push(row);
        }
        sys.add_block(coeffs, f.domain.relations());
    }
    for a in 0..nd {
        for b in 0..nd {
            let mut coeffs = Vec::with_capacity(nc);
            for k in 0..nc {
                let mut row = vec![BigInt::zero(); nd * nd];
                for c in 0..nd {
                    row[phi_entry(a, c, nd)] += &f.value(c, b)[k];
                    row[phi_entry(b, c, nd)] -= &f.value(a, c)[k];
                }
                coeffs.push(row);
            }
            sys.add_block(coeffs, f.codomain.relations());
        }
    }
    sys.solve()
}

/// Restricts a lattice of endomorphisms (rows = flattened matrices) to those
/// commuting with every basis element, as maps on the presented domain.
fn centralize(f: &BilinearMapPresentation, basis: &IntMatrix) -> IntMatrix {
    let nd = f.domain.ngens();
    let k = basis.rows();
    if k == 0 {
        return basis.clone();
    }
    let mats: Vec<IntMatrix> = (0..k).map(|r| unflatten(basis.row(r), nd)).collect();
    let mut sys = CongruenceSystem::new(k);
    for s in 0..k {
        // Commutators with the fixed element mats[s], row by row.
        let comms: Vec<IntMatrix> = mats
            .iter()
            .map(|m| {
                let ab = m.mul(&mats[s]);
                let ba = mats[s].mul(m);
                let rows: Vec<Vec<BigInt>> = (0..nd)
                    .map(|i| crate::zlattice::vec_sub(ab.row(i), ba.row(i)))
                    .collect();
                IntMatrix::from_row_vectors(rows, nd)
            })
            .collect();
        for row_idx in 0..nd {
            let mut coeffs = Vec::with_capacity(nd);
            for col in 0..nd {
                let row: Vec<BigInt> = (0..k).map(|r| comms[r][(row_idx, col)].clone()).collect();
                coeffs.push(row);
            }
            // Transpose: equations are coordinates of the commutator row.
            let coeffs_t: Vec<Vec<BigInt>> = (0..nd)
                .map(|coord| {
                    (0..k)
                        .map(|r| comms[r][(row_idx, coord)].clone())
                        .collect()
                })
                .collect();
            let _ = coeffs;
            sys.add_block(coeffs_t, f.domain.relations());
        }
    }
    let coeff_rows = sys.solve();
    combine_rows(&coeff_rows, basis)
}

/// Kernel lattice of value combinations: all (n_ab) with
/// sum n_ab f(u_a, u_b) = 0.
fn value_kernel(f: &BilinearMapPresentation) -> IntMatrix {
    let nd = f.domain.ngens();
    let nc = f.codomain.ngens();
    let mut sys = CongruenceSystem::new(nd * nd);
    let mut coeffs = Vec::with_capacity(nc);
    for k in 0..nc {
        let row: Vec<BigInt> = (0..nd * nd).map(|ab| f.values[ab][k].clone()).collect();
        coeffs.push(row);
    }
    sys.add_block(coeffs, f.codomain.relations());
    sys.solve()
}

/// Restricts an endomorphism lattice by the relation-lattice conditions: for
/// every kernel combination n, sum n_ab f(phi u_a, u_b) = 0. Only a basis of
/// the kernel needs to be imposed; every relation among values is an integer
/// combination of basis relations.
fn restrict_by_value_kernel(f: &BilinearMapPresentation, basis: &IntMatrix) -> IntMatrix {
    let nd = f.domain.ngens();
    let nc = f.codomain.ngens();
    let k = basis.rows();
    if k == 0 {
        return basis.clone();
    }
    let kernel = value_kernel(f);
    if kernel.rows() == 0 {
        return basis.clone();
    }
    let mats: Vec<IntMatrix> = (0..k).map(|r| unflatten(basis.row(r), nd)).collect();
    let mut sys = CongruenceSystem::new(k);
    for n_idx in 0..kernel.rows() {
        let n = kernel.row(n_idx);
        // Per basis element r: vector T_r = sum_ab n_ab f(phi_r u_a, u_b).
        let t: Vec<Vec<BigInt>> = mats
            .iter()
            .map(|m| {
                let mut acc = vec![BigInt::zero(); nc];
                for a in 0..nd {
                    for b in 0..nd {
                        let coeff = &n[a * nd + b];
                        if coeff.is_zero() {
                            continue;
                        }
                        for c in 0..nd {
                            let w = &m[(a, c)];
                            if w.is_zero() {
                                continue;
                            }
                            for x in 0..nc {
                                acc[x] += coeff * w * &f.value(c, b)[x];
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let coeffs: Vec<Vec<BigInt>> = (0..nc)
            .map(|x| (0..k).map(|r| t[r][x].clone()).collect())
            .collect();
        sys.add_block(coeffs, f.codomain.relations());
    }
    let coeff_rows = sys.solve();
    combine_rows(&coeff_rows, basis)
}

fn unflatten(row: &[BigInt], n: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..n).map(|i| row[i * n..(i + 1) * n].to_vec()).collect();
    IntMatrix::from_row_vectors(rows, n)
}

fn combine_rows(coeffs: &IntMatrix, basis: &IntMatrix) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..coeffs.rows())
        .map(|i| basis.vec_mul(coeffs.row(i)))
        .collect();
    canonical_rows(&IntMatrix::from_row_vectors(rows, basis.cols()))
}

/// Constructs the codomain endomorphism induced by phi through fullness:
/// each codomain generator is expressed as a value combination and mapped.
fn induced_phi0(f: &BilinearMapPresentation, phi: &IntMatrix) -> Option<IntMatrix> {
    let nd = f.domain.ngens();
    let nc = f.codomain.ngens();
    let value_rows = IntMatrix::from_row_vectors(f.values.clone(), nc);
    let stacked = value_rows.stack(f.codomain.relations());
    let mut rows = Vec::with_capacity(nc);
    for k in 0..nc {
        let mut e = vec![BigInt::zero(); nc];
        e[k] = BigInt::one();
        let expr = express_in_rows(&stacked, &e)?;
        let mut img = vec![BigInt::zero(); nc];
        for a in 0..nd {
            for b in 0..nd {
                let coeff = &expr[a * nd + b];
                if coeff.is_zero() {
                    continue;
                }
                for c in 0..nd {
                    let w = &phi[(a, c)];
                    if w.is_zero() {
                        continue;
                    }
                    for x in 0..nc {
                        img[x] += coeff * w * &f.value(c, b)[x];
                    }
                }
            }
        }
        rows.push(f.codomain.reduce(&img));
    }
    Some(IntMatrix::from_row_vectors(rows, nc))
}

/// Symmetric endomorphism pairs compatible with the relation lattice of the
/// values: the solution lattice of the symmetry system together with the
/// kernel conditions, returned as pairs.
pub fn sym_endos(f: &BilinearMapPresentation) -> Vec<EndoPair> {
    let basis = restrict_by_value_kernel(f, &sym_lattice(f));
    pairs_from_phi_basis(f, &basis)
}

fn pairs_from_phi_basis(f: &BilinearMapPresentation, basis: &IntMatrix) -> Vec<EndoPair> {
    let nd = f.domain.ngens();
    (0..basis.rows())
        .map(|r| {
            let phi = unflatten(basis.row(r), nd);
            let phi0 = if f.full {
                induced_phi0(f, &phi).expect("full map determines phi0")
            } else {
                // Without fullness phi0 is not determined; record the zero
                // map on the value span complement.
                induced_phi0(f, &phi)
                    .unwrap_or_else(|| IntMatrix::zero(f.codomain.ngens(), f.codomain.ngens()))
            };
            EndoPair::reduced(f, phi, phi0)
        })
        .collect()
}

/// Padding lattice: endomorphisms representing the zero map.
fn phi_padding(f: &BilinearMapPresentation) -> IntMatrix {
    let nd = f.domain.ngens();
    let rel = f.domain.relations();
    let mut rows = Vec::new();
    for a in 0..nd {
        for l in 0..rel.rows() {
            let mut row = vec![BigInt::zero(); nd * nd];
            for c in 0..nd {
                row[phi_entry(a, c, nd)] = rel[(l, c)].clone();
            }
            rows.push(row);
        }
    }
    IntMatrix::from_row_vectors(rows, nd * nd)
}

/// One-shot formulation: pairs (phi, phi0) satisfying the defining
/// identities directly, with no centralizer stage. Returns the phi-part
/// lattice.
fn one_shot_phi_lattice(f: &BilinearMapPresentation) -> IntMatrix {
    let nd = f.domain.ngens();
    let nc = f.codomain.ngens();
    let np = nd * nd;
    let nvars = np + nc * nc;
    let mut sys = CongruenceSystem::new(nvars);
    // phi respects domain relations.
    for rho in f.domain.relations().rows_iter() {
        let mut coeffs = Vec::with_capacity(nd);
        for c in 0..nd {
            let mut row = vec![BigInt::zero(); nvars];
            for a in 0..nd {
                row[phi_entry(a, c, nd)] = rho[a].clone();
            }
            coeffs.push(row);
        }
        sys.add_block(coeffs, f.domain.relations());
    }
    // phi0 respects codomain relations.
    for rho in f.codomain.relations().rows_iter() {
        let mut coeffs = Vec::with_capacity(nc);
        for c in 0..nc {
            let mut row = vec![BigInt::zero(); nvars];
            for a in 0..nc {
                row[np + a * nc + c] = rho[a].clone();
            }
            coeffs.push(row);
        }
        sys.add_block(coeffs, f.codomain.relations());
    }
    for a in 0..nd {
        for b in 0..nd {
            // Symmetry: f(phi u_a, u_b) = f(u_a, phi u_b).
            let mut coeffs = Vec::with_capacity(nc);
            for k in 0..nc {
                let mut row = vec![BigInt::zero(); nvars];
                for c in 0..nd {
                    row[phi_entry(a, c, nd)] += &f.value(c, b)[k];
                    row[phi_entry(b, c, nd)] -= &f.value(a, c)[k];
                }
                coeffs.push(row);
            }
            sys.add_block(coeffs, f.codomain.relations());
            // Compatibility: f(phi u_a, u_b) = phi0 f(u_a, u_b).
            let mut coeffs = Vec::with_capacity(nc);
            for k in 0..nc {
                let mut row = vec![BigInt::zero(); nvars];
                for c in 0..nd {
                    row[phi_entry(a, c, nd)] += &f.value(c, b)[k];
                }
                for c in 0..nc {
                    row[np + c * nc + k] -= &f.value(a, b)[c];
                }
                coeffs.push(row);
            }
            sys.add_block(coeffs, f.codomain.relations());
        }
    }
    let pairs = sys.solve();
    let phi_parts: Vec<Vec<BigInt>> = (0..pairs.rows())
        .map(|i| pairs.row(i)[..np].to_vec())
        .collect();
    canonical_rows(&IntMatrix::from_row_vectors(phi_parts, np))
}

/// The largest ring of scalars of a full bilinear map, computed in three
/// stages (symmetry, centralizer, relation-lattice conditions) and
/// cross-checked against the one-shot pair formulation.
pub fn largest_scalar_ring(f: &BilinearMapPresentation) -> Result<ScalarRingResult, Error> {
    if !f.full {
        return Err(Error::Precondition("bilinear map is not full".into()));
    }
    let mut diagnostics = Vec::new();
    if !f.nondegenerate_left || !f.nondegenerate_right {
        diagnostics.push(
            "map is degenerate; the computation proceeds but maximality arguments assume \
             non-degeneracy"
                .into(),
        );
    }
    let staged = restrict_by_value_kernel(f, &centralize(f, &sym_lattice(f)));
    let one_shot = one_shot_phi_lattice(f);
    let pad = phi_padding(f);
    let staged_sub = lattice_mod_padding(&staged, &pad);
    let one_shot_sub = lattice_mod_padding(&one_shot, &pad);
    if staged_sub != one_shot_sub {
        let witness = first_difference(&staged_sub, &one_shot_sub);
        return Err(Error::CheckFailed(format!(
            "three-stage and one-shot scalar rings disagree; witness endomorphism row {witness:?}"
        )));
    }
    build_scalar_result(f, &staged, diagnostics)
}

fn lattice_mod_padding(basis: &IntMatrix, pad: &IntMatrix) -> IntMatrix {
    canonical_rows(&basis.stack(pad))
}

fn first_difference(a: &IntMatrix, b: &IntMatrix) -> Vec<BigInt> {
    for i in 0..a.rows() {
        if i >= b.rows() || a.row(i) != b.row(i) {
            return a.row_vec(i);
        }
    }
    b.row_vec(a.rows().min(b.rows().saturating_sub(1)))
}

fn build_scalar_result(
    f: &BilinearMapPresentation,
    basis: &IntMatrix,
    mut diagnostics: Vec<String>,
) -> Result<ScalarRingResult, Error> {
    let nd = f.domain.ngens();
    let k = basis.rows();
    let mats: Vec<IntMatrix> = (0..k).map(|r| unflatten(basis.row(r), nd)).collect();
    // Commutativity of composition on the lattice basis.
    for r in 0..k {
        for q in r + 1..k {
            let ab = mats[r].mul(&mats[q]);
            let ba = mats[q].mul(&mats[r]);
            for i in 0..nd {
                if !f
                    .domain
                    .is_zero_element(&crate::zlattice::vec_sub(ab.row(i), ba.row(i)))
                {
                    return Err(Error::CheckFailed(format!(
                        "scalar ring not commutative; witness pair of basis elements {r} and {q}"
                    )));
                }
            }
        }
    }
    let pad = phi_padding(f);
    let stacked = basis.stack(&pad);
    let express = |m: &IntMatrix| -> Result<Vec<BigInt>, Error> {
        let flat: Vec<BigInt> = (0..nd).flat_map(|i| m.row_vec(i)).collect();
        let y = express_in_rows(&stacked, &flat).ok_or_else(|| {
            Error::CheckFailed("scalar ring lattice not closed".into())
        })?;
        Ok(y[..k].to_vec())
    };
    // Identity is always a solution of the defining conditions.
    let unit_coeffs = express(&IntMatrix::identity(nd))?;
    // Additive presentation: lattice modulo zero-map padding.
    let pad_in_basis = if pad.rows() == 0 || k == 0 {
        IntMatrix::zero(0, k)
    } else {
        let rows: Vec<Vec<BigInt>> = pad
            .rows_iter()
            .map(|p| {
                express_in_rows(&stacked, p)
                    .map(|y| y[..k].to_vec())
                    .expect("padding lies in the solution lattice")
            })
            .collect();
        IntMatrix::from_row_vectors(rows, k)
    };
    let qd = QuotientData::of_lattice(k, &pad_in_basis);
    let ngens = qd.lifts.rows();
    // Generator pairs: combinations of the basis endomorphisms.
    let gen_mats: Vec<IntMatrix> = (0..ngens)
        .map(|g| {
            let mut acc = IntMatrix::zero(nd, nd);
            for r in 0..k {
                let c = &qd.lifts[(g, r)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..nd {
                    for j in 0..nd {
                        let add = c * &mats[r][(i, j)];
                        acc[(i, j)] += add;
                    }
                }
            }
            acc
        })
        .collect();
    let mut mult = Vec::with_capacity(ngens * ngens);
    for a in 0..ngens {
        for b in 0..ngens {
            let comp = gen_mats[b].mul(&gen_mats[a]);
            let coeffs = express(&comp)?;
            mult.push(qd.project(&coeffs));
        }
    }
    let torsion = vec![vec![BigInt::zero(); ngens]; ngens];
    let ring = RingPresentation::new(qd.periods.clone(), torsion, mult)?;
    let one = qd.project(&unit_coeffs);
    let scalar = ScalarRingPresentation::new(ring, &one)?;
    let issues = scalar.validate();
    if !issues.is_empty() {
        return Err(Error::CheckFailed(format!(
            "computed scalar ring fails axioms: {}",
            issues[0]
        )));
    }
    let pairs: Vec<EndoPair> = gen_mats
        .iter()
        .map(|m| {
            let phi0 = induced_phi0(f, m).expect("full map determines phi0");
            EndoPair::reduced(f, m.clone(), phi0)
        })
        .collect();
    for p in &pairs {
        if !p.satisfies(f) {
            return Err(Error::CheckFailed(
                "generator pair fails the defining identities".into(),
            ));
        }
    }
    let unit_pair = {
        let phi = IntMatrix::identity(nd);
        let phi0 = induced_phi0(f, &phi).expect("full map determines phi0");
        EndoPair::reduced(f, phi, phi0)
    };
    if f.domain.invariants().is_trivial() {
        diagnostics.push("domain is trivial; scalar ring degenerates".into());
    }
    Ok(ScalarRingResult {
        pairs,
        unit_pair,
        ring: scalar,
        diagnostics,
    })
}

/// The ring of scalars of a ring: the subring of the largest scalar ring of
/// the induced map whose pairs make the canonical map from the square into
/// the annihilator quotient linear.
pub fn ring_of_scalars(r: &RingPresentation) -> Result<ScalarRingResult, Error> {
    let ind = induced_bilinear(r);
    let f = &ind.map;
    let nd = f.domain.ngens();
    let nc = f.codomain.ngens();
    if nd == 0 {
        return Ok(ScalarRingResult {
            pairs: vec![],
            unit_pair: EndoPair {
                phi: IntMatrix::zero(0, 0),
                phi0: IntMatrix::zero(nc, nc),
            },
            ring: ScalarRingPresentation::trivial(),
            diagnostics: vec![
                "annihilator quotient is trivial; the scalar ring degenerates to the zero ring"
                    .into(),
            ],
        });
    }
    let mut diagnostics = Vec::new();
    if !f.nondegenerate_left || !f.nondegenerate_right {
        diagnostics.push("induced bilinear map is degenerate".into());
    }
    let staged = restrict_by_value_kernel(f, &centralize(f, &sym_lattice(f)));
    let one_shot = one_shot_phi_lattice(f);
    let pad = phi_padding(f);
    if lattice_mod_padding(&staged, &pad) != lattice_mod_padding(&one_shot, &pad) {
        return Err(Error::CheckFailed(
            "three-stage and one-shot scalar rings disagree on the induced map".into(),
        ));
    }
    // Eta-linearity: eta(phi0 w) = phi(eta w) for codomain generators w,
    // where eta maps the square into the annihilator quotient.
    let k = staged.rows();
    let restricted = if k == 0 {
        staged.clone()
    } else {
        let mats: Vec<IntMatrix> = (0..k).map(|r| unflatten(staged.row(r), nd)).collect();
        let phi0s: Vec<IntMatrix> = mats
            .iter()
            .map(|m| induced_phi0(f, m).expect("induced map is full"))
            .collect();
        let eta_rows: Vec<Vec<BigInt>> = (0..nc)
            .map(|w| {
                let ring_coords = ind.codomain_basis.row(w);
                f.domain.reduce(&ind.domain_proj.vec_mul(ring_coords))
            })
            .collect();
        let mut sys = CongruenceSystem::new(k);
        for w in 0..nc {
            // Difference per basis element r: eta(phi0_r w) - phi_r(eta w).
            let diffs: Vec<Vec<BigInt>> = (0..k)
                .map(|r| {
                    let img_cod = phi0s[r].vec_mul(unit_vec(nc, w));
                    let img_ring = ind.codomain_basis.vec_mul(&img_cod);
                    let lhs = ind.domain_proj.vec_mul(&img_ring);
                    let rhs = mats[r].vec_mul(&eta_rows[w]);
                    crate::zlattice::vec_sub(&lhs, &rhs)
                })
                .collect();
            let coeffs: Vec<Vec<BigInt>> = (0..nd)
                .map(|x| (0..k).map(|r| diffs[r][x].clone()).collect())
                .collect();
            sys.add_block(coeffs, f.domain.relations());
        }
        let coeff_rows = sys.solve();
        combine_rows(&coeff_rows, &staged)
    };
    build_scalar_result(f, &restricted, diagnostics)
}

/// Width/completeness type of a bilinear map. `None` bounds mean the
/// quantity does not exist (no finite width without fullness, no complete
/// system when the opposite slot is degenerate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearType {
    pub width_upper: Option<usize>,
    pub width_exact: bool,
    pub c1_upper: Option<usize>,
    pub c1_exact: bool,
    pub c2_upper: Option<usize>,
    pub c2_exact: bool,
}

/// Computes the type of a bilinear map: width bounds (exact when both
/// groups are finite, or when the rank bound collapses) and minimal
/// complete-system sizes over subsets of the generator pseudo-basis.
pub fn type_of(f: &BilinearMapPresentation) -> BilinearType {
    let nd = f.domain.ngens();
    let (width_upper, width_exact) = compute_width(f, nd);
    let (c1_upper, c1_exact) = complete_system(f, true);
    let (c2_upper, c2_exact) = complete_system(f, false);
    BilinearType {
        width_upper,
        width_exact,
        c1_upper,
        c1_exact,
        c2_upper,
        c2_exact,
    }
}

fn compute_width(f: &BilinearMapPresentation, nd: usize) -> (Option<usize>, bool) {
    if f.codomain.invariants().is_trivial() {
        return (Some(0), true);
    }
    if !f.full {
        return (None, false);
    }
    let upper = nd;
    if upper <= 1 {
        return (Some(upper), true);
    }
    let (Some(domain_elems), Some(total)) =
        (f.domain.enumerate_elements(), f.codomain.order())
    else {
        return (Some(upper), false);
    };
    // Brute force: layered sums of single values.
    let mut values = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in &domain_elems {
        for y in &domain_elems {
            let v = f.apply(x, y);
            if seen.insert(v.clone()) {
                values.push(v);
            }
        }
    }
    let total = usize::try_from(total).expect("desk-scale codomain");
    let mut dist = std::collections::BTreeMap::new();
    dist.insert(f.codomain.reduce(&vec![BigInt::zero(); f.codomain.ngens()]), 0usize);
    let mut frontier: Vec<Vec<BigInt>> = dist.keys().cloned().collect();
    let mut width = 0usize;
    while dist.len() < total {
        let mut next = Vec::new();
        for u in &frontier {
            for v in &values {
                let s = f.codomain.reduce(&crate::zlattice::vec_add(u, v));
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(s.clone()) {
                    e.insert(width + 1);
                    next.push(s);
                }
            }
        }
        assert!(!next.is_empty(), "full map must reach the whole codomain");
        width += 1;
        frontier = next;
    }
    (Some(width.max(1)), true)
}

/// Minimal size of a subset E of the generator pseudo-basis such that
/// f(E, y) = 0 forces y = 0 (left = true), or symmetrically.
fn complete_system(f: &BilinearMapPresentation, left: bool) -> (Option<usize>, bool) {
    let nd = f.domain.ngens();
    let mut best: Option<usize> = None;
    'sizes: for size in 0..=nd {
        for subset in subsets_of_size(nd, size) {
            if subset_is_complete(f, &subset, left) {
                best = Some(size);
                break 'sizes;
            }
        }
    }
    let Some(found) = best else {
        return (None, false);
    };
    // Exactness: over a finite domain, check no smaller subset of arbitrary
    // elements is complete (desk scale only).
    if found == 0 {
        return (Some(0), true);
    }
    if let Some(elems) = f.domain.enumerate_elements() {
        let n = elems.len();
        if n.pow(found.min(3) as u32) <= 300_000 {
            for size in 0..found {
                if any_element_subset_complete(f, &elems, size, left) {
                    return (Some(size), true);
                }
            }
            return (Some(found), true);
        }
    }
    (Some(found), false)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn subset_is_complete(f: &BilinearMapPresentation, subset: &[usize], left: bool) -> bool {
    let nd = f.domain.ngens();
    let mut sys = CongruenceSystem::new(nd);
    for &e in subset {
        let mut coeffs = Vec::new();
        for k in 0..f.codomain.ngens() {
            let mut row = vec![BigInt::zero(); nd];
            for b in 0..nd {
                row[b] = if left {
                    f.value(e, b)[k].clone()
                } else {
                    f.value(b, e)[k].clone()
                };
            }
            coeffs.push(row);
        }
        sys.add_block(coeffs, f.codomain.relations());
    }
    let sol = sys.solve();
    (0..sol.rows()).all(|i| f.domain.is_zero_element(sol.row(i)))
}

fn any_element_subset_complete(
    f: &BilinearMapPresentation,
    elems: &[Vec<BigInt>],
    size: usize,
    left: bool,
) -> bool {
    let idx = subsets_of_size(elems.len(), size);
    'outer: for subset in idx {
        for y in elems {
            if vec_is_zero(&f.domain.reduce(y)) {
                continue;
            }
            let kills = subset.iter().all(|&e| {
                let v = if left {
                    f.apply(&elems[e], y)
                } else {
                    f.apply(y, &elems[e])
                };
                vec_is_zero(&v)
            });
            if kills {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn induced_map_of_fixture() {
        let r = samples::nonregular_rank3();
        let ind = induced_bilinear(&r);
        // Domain is Z/2 on the image of u1, codomain is Z/2 on t.
        assert_eq!(ind.map.domain.invariants().torsion_factors, vec![BigInt::from(2)]);
        assert_eq!(ind.map.domain.invariants().free_rank, 0);
        assert_eq!(ind.map.codomain.invariants().torsion_factors, vec![BigInt::from(2)]);
        assert!(ind.map.full);
        assert!(!vec_is_zero(ind.map.value(0, 0)));
    }

    #[test]
    fn induced_map_of_integers() {
        let z = samples::integers();
        let ind = induced_bilinear(&z);
        assert_eq!(ind.map.domain.invariants().free_rank, 1);
        assert_eq!(ind.map.codomain.invariants().free_rank, 1);
        assert!(ind.map.full);
        assert!(ind.map.nondegenerate_left && ind.map.nondegenerate_right);
    }

    #[test]
    fn induced_map_of_zero_ring_is_empty() {
        let r = samples::zero_ring(2);
        let ind = induced_bilinear(&r);
        assert_eq!(ind.map.domain.ngens(), 0);
        assert_eq!(ind.map.codomain.ngens(), 0);
    }

    #[test]
    fn sym_endos_of_integers() {
        let ind = induced_bilinear(&samples::integers());
        let pairs = sym_endos(&ind.map);
        // One basis pair: (k id, k id) for k spanning Z.
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].satisfies(&ind.map));
    }

    #[test]
    fn sym_endos_of_fixture() {
        let ind = induced_bilinear(&samples::nonregular_rank3());
        let pairs = sym_endos(&ind.map);
        // End(Z/2) has two elements; the lattice basis is the identity class.
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].satisfies(&ind.map));
    }

    #[test]
    fn largest_scalar_ring_of_integers() {
        let ind = induced_bilinear(&samples::integers());
        let res = largest_scalar_ring(&ind.map).unwrap();
        let inv = res.ring.ring().additive_invariants();
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion_factors.is_empty());
        // u*u = u with unit u: that is the integers.
        assert_eq!(
            res.ring.ring().multiply(
                &res.ring.ring().generator(0),
                &res.ring.ring().generator(0)
            ),
            res.ring.ring().generator(0)
        );
    }

    #[test]
    fn largest_scalar_ring_of_fixture_is_f2() {
        let ind = induced_bilinear(&samples::nonregular_rank3());
        let res = largest_scalar_ring(&ind.map).unwrap();
        let inv = res.ring.ring().additive_invariants();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn dot_product_scalars_are_integers() {
        // f((a,b),(c,d)) = ac + bd from Z^2 to Z.
        let domain = AbGroupPresentation::free(2);
        let codomain = AbGroupPresentation::free(1);
        let one = vec![BigInt::one()];
        let zero = vec![BigInt::zero()];
        let f = BilinearMapPresentation::new(
            domain,
            codomain,
            vec![one.clone(), zero.clone(), zero.clone(), one.clone()],
        )
        .unwrap();
        assert!(f.full && f.nondegenerate_left && f.nondegenerate_right);
        let res = largest_scalar_ring(&f).unwrap();
        let inv = res.ring.ring().additive_invariants();
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion_factors.is_empty());
    }

    #[test]
    fn ring_of_scalars_examples() {
        let res = ring_of_scalars(&samples::integers()).unwrap();
        assert_eq!(res.ring.ring().additive_invariants().free_rank, 1);
        let res = ring_of_scalars(&samples::nonregular_rank3()).unwrap();
        assert_eq!(
            res.ring.ring().additive_invariants().torsion_factors,
            vec![BigInt::from(2)]
        );
        let res = ring_of_scalars(&samples::zero_ring(2)).unwrap();
        assert!(res.ring.is_trivial());
        assert!(!res.diagnostics.is_empty());
    }

    #[test]
    fn type_of_fixture() {
        let ind = induced_bilinear(&samples::nonregular_rank3());
        let t = type_of(&ind.map);
        assert_eq!(t.width_upper, Some(1));
        assert!(t.width_exact);
        assert_eq!(t.c1_upper, Some(1));
        assert_eq!(t.c2_upper, Some(1));
        assert!(t.c1_exact && t.c2_exact);
    }

    #[test]
    fn type_of_integers() {
        let ind = induced_bilinear(&samples::integers());
        let t = type_of(&ind.map);
        assert_eq!(t.width_upper, Some(1));
        assert!(t.width_exact);
        assert_eq!(t.c1_upper, Some(1));
        assert_eq!(t.c2_upper, Some(1));
    }

    #[test]
    fn type_of_zero_map() {
        // Zero map on Z/2 with nontrivial codomain Z/2: no complete system.
        let domain = AbGroupPresentation::diagonal(&[BigInt::from(2)]);
        let codomain = AbGroupPresentation::diagonal(&[BigInt::from(2)]);
        let f = BilinearMapPresentation::new(
            domain,
            codomain,
            vec![vec![BigInt::zero()]],
        )
        .unwrap();
        let t = type_of(&f);
        assert_eq!(t.c1_upper, None);
        assert_eq!(t.c2_upper, None);
        assert_eq!(t.width_upper, None);
    }
}
