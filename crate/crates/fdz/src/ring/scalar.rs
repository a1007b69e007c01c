//! Scalar rings: commutative, associative, unital ring presentations.

use num_bigint::BigInt;

use super::{diag, Diagnostic, RingElement, RingPresentation};
use crate::error::Error;
use crate::zlattice::IntMatrix;

/// A commutative associative unital ring with finitely generated additive
/// group, presented like any ring plus a distinguished unit element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarRingPresentation {
    ring: RingPresentation,
    one: RingElement,
}

impl ScalarRingPresentation {
    pub fn new(ring: RingPresentation, one_coords: &[BigInt]) -> Result<Self, Error> {
        if one_coords.len() != ring.rank() {
            return Err(Error::InvalidInput("unit width mismatch".into()));
        }
        let one = ring.element(one_coords);
        Ok(ScalarRingPresentation { ring, one })
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn one(&self) -> &RingElement {
        &self.one
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// Ring axioms on generators: commutativity, associativity, unit action,
    /// on top of the plain well-definedness checks.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = self.ring.validate();
        let r = self.ring.rank();
        for i in 0..r {
            for j in 0..r {
                let ij = self.ring.multiply(&self.ring.generator(i), &self.ring.generator(j));
                let ji = self.ring.multiply(&self.ring.generator(j), &self.ring.generator(i));
                if ij != ji {
                    out.push(diag(format!(
                        "generators {} and {} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let gi = self.ring.generator(i);
                    let gj = self.ring.generator(j);
                    let gk = self.ring.generator(k);
                    let lhs = self.ring.multiply(&self.ring.multiply(&gi, &gj), &gk);
                    let rhs = self.ring.multiply(&gi, &self.ring.multiply(&gj, &gk));
                    if lhs != rhs {
                        out.push(diag(format!(
                            "associativity fails on generators {}, {}, {}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        for i in 0..r {
            let gi = self.ring.generator(i);
            if self.ring.multiply(&self.one, &gi) != gi {
                out.push(diag(format!("unit does not fix generator {}", i + 1)));
            }
        }
        out
    }

    /// Re-presents on a new additive generating family; the unit is carried
    /// along.
    pub fn change_basis(&self, t: &IntMatrix) -> Result<ScalarRingPresentation, Error> {
        let ring = self.ring.change_basis(t)?;
        let stacked = t.stack(self.ring.group().relations());
        let y = crate::zlattice::express_in_rows(&stacked, &self.one.coords)
            .ok_or(Error::NotGenerating)?;
        ScalarRingPresentation::new(ring, &y[..t.rows()])
    }

    /// The trivial (zero) scalar ring.
    pub fn trivial() -> ScalarRingPresentation {
        let ring = RingPresentation::new(vec![], vec![], vec![]).unwrap();
        ScalarRingPresentation {
            one: ring.zero(),
            ring,
        }
    }

    /// Additive order of the unit (0 = infinite): the characteristic of a
    /// unital ring.
    pub fn characteristic(&self) -> BigInt {
        self.ring.group().element_order(&self.one.coords)
    }

    pub fn is_trivial(&self) -> bool {
        self.ring.additive_invariants().is_trivial()
    }

    /// Multiplication by an element as an additive map on generators.
    pub fn scalar_multiplication_matrix(&self, a: &RingElement) -> IntMatrix {
        let r = self.ring.rank();
        let rows: Vec<Vec<BigInt>> = (0..r)
            .map(|i| {
                self.ring
                    .multiply(a, &self.ring.generator(i))
                    .coords
            })
            .collect();
        IntMatrix::from_row_vectors(rows, r)
    }
}

/// Convenience: is this ring, with the given unit, an integral domain test
/// oracle for finite rings; brute force over all elements.
pub fn finite_ring_is_domain(a: &ScalarRingPresentation) -> Option<(bool, Option<(Vec<BigInt>, Vec<BigInt>)>)> {
    let elems = a.ring().enumerate_elements()?;
    if elems.len() <= 1 {
        // The zero ring is not an integral domain.
        return Some((false, None));
    }
    for x in &elems {
        if crate::zlattice::vec_is_zero(x) {
            continue;
        }
        for y in &elems {
            if crate::zlattice::vec_is_zero(y) {
                continue;
            }
            let p = a.ring().element(&a.ring().multiply_raw(x, y));
            if a.ring().is_zero_element(&p) {
                return Some((false, Some((x.clone(), y.clone()))));
            }
        }
    }
    Some((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use num_traits::Zero;

    #[test]
    fn integers_are_a_scalar_ring() {
        let z = samples::integers_scalar();
        assert!(z.validate().is_empty());
        assert!(z.characteristic().is_zero());
    }

    #[test]
    fn z6_characteristic() {
        let a = samples::integers_mod_scalar(6);
        assert!(a.validate().is_empty());
        assert_eq!(a.characteristic(), BigInt::from(6));
        let (is_domain, _) = finite_ring_is_domain(&a).unwrap();
        assert!(!is_domain);
    }

    #[test]
    fn dual_numbers_validate() {
        let a = samples::dual_numbers();
        assert!(a.validate().is_empty());
        assert!(a.characteristic().is_zero());
    }
}
