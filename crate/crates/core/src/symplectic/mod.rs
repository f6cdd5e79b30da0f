//! `Sp(G)`: automorphisms of `G × Ĝ` preserving the commutation phase.

mod decompose;
mod random;

pub use decompose::{decompose, decompose_clifford, extend_to_automorphism, GATE_BOUND_CONSTANT};
pub use random::{
    enumerate_symplectic, random_automorphism, random_clifford, random_endomorphism, random_gate, random_quadratic_form,
    random_symplectic,
};

use std::fmt;

use crate::clifford::{Gate, GateSequence};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::pauli::{beta_unchecked, PauliVector};

/// A symplectic automorphism of `G × Ĝ`; rows and columns list the `X`
/// factors first, then the `Z` factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMap {
    group: Group,
    matrix: HomMatrix,
}

/// True iff `m` is an automorphism of `G × Ĝ` preserving `β` on generator pairs.
pub fn is_symplectic(group: &Group, m: &HomMatrix) -> bool {
    let dbl = group.product(group);
    m.source() == &dbl && m.target() == &dbl && preserves_beta(group, m) && m.is_automorphism()
}

fn preserves_beta(group: &Group, m: &HomMatrix) -> bool {
    let d = group.rank();
    let cols: Vec<PauliVector> = (0..2 * d)
        .map(|a| PauliVector::from_reduced(group, m.column(a).residues()[..d].to_vec(), m.column(a).residues()[d..].to_vec()))
        .collect();
    (0..2 * d).all(|a| {
        let ga = PauliVector::generator(group, a);
        (0..a).all(|b| beta_unchecked(&cols[a], &cols[b]) == beta_unchecked(&ga, &PauliVector::generator(group, b)))
    })
}

impl SymplecticMap {
    pub fn new(group: &Group, matrix: HomMatrix) -> Result<Self> {
        let dbl = group.product(group);
        dbl.ensure_same(matrix.source())?;
        dbl.ensure_same(matrix.target())?;
        if !preserves_beta(group, &matrix) {
            return Err(Error::NotSymplectic("commutation phase is not preserved".into()));
        }
        if !matrix.is_automorphism() {
            return Err(Error::NotSymplectic("matrix is not invertible".into()));
        }
        Ok(SymplecticMap {
            group: group.clone(),
            matrix,
        })
    }

    pub(crate) fn from_valid(group: &Group, matrix: HomMatrix) -> Self {
        debug_assert!(preserves_beta(group, &matrix));
        SymplecticMap {
            group: group.clone(),
            matrix,
        }
    }

    /// Builds a map from raw entries over `G × Ĝ`.
    pub fn from_entries(group: &Group, entries: Vec<Vec<i64>>) -> Result<Self> {
        let dbl = group.product(group);
        SymplecticMap::new(group, HomMatrix::new(&dbl, &dbl, entries)?)
    }

    pub fn identity(group: &Group) -> Self {
        SymplecticMap {
            group: group.clone(),
            matrix: HomMatrix::identity(&group.product(group)),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn matrix(&self) -> &HomMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SymplecticMap) -> Result<SymplecticMap> {
        Ok(SymplecticMap {
            group: self.group.clone(),
            matrix: self.matrix.compose(&inner.matrix)?,
        })
    }

    pub fn inverse(&self) -> SymplecticMap {
        SymplecticMap {
            group: self.group.clone(),
            matrix: self.matrix.invert().expect("symplectic maps are invertible"),
        }
    }

    pub fn apply(&self, v: &PauliVector) -> Result<PauliVector> {
        self.group.ensure_same(v.group())?;
        let r = self.matrix.apply_residues(&v.residues());
        PauliVector::from_residues(&self.group, r.residues())
    }
}

impl fmt::Debug for SymplecticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp[{}]{:?}", self.group, self.matrix.entries())
    }
}

/// The action of a generator gate on Pauli vectors.
pub fn image_in_sp(gate: &Gate, on: &Group) -> Result<SymplecticMap> {
    Ok(gate.tableau(on)?.symplectic())
}

/// The composed action of a sequence (first gate applied first).
pub fn image_of_sequence(seq: &GateSequence) -> Result<SymplecticMap> {
    let g = seq.group();
    let mut acc = SymplecticMap::identity(g);
    for gate in seq.gates() {
        acc = image_in_sp(gate, g)?.compose(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliOperator;
    use crate::phase::Phase;

    #[test]
    fn symplectic_examples() {
        let z2 = Group::new(&[2]).unwrap();
        let dbl = z2.power(2);
        assert!(is_symplectic(&z2, &HomMatrix::identity(&dbl)));
        let swap = HomMatrix::endo(&dbl, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(is_symplectic(&z2, &swap));
        // X ↦ X + Z while Z ↦ X + Z breaks the commutation phase.
        let bad = HomMatrix::endo(&dbl, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(!is_symplectic(&z2, &bad));
        assert!(matches!(SymplecticMap::new(&z2, bad), Err(Error::NotSymplectic(_))));
    }

    #[test]
    fn paulis_are_the_kernel() {
        let g = Group::new(&[4, 2]).unwrap();
        let p = PauliOperator::from_parts(&g, Phase::new(1, 3), &[1, 1], &[3, 0]).unwrap();
        assert!(image_in_sp(&Gate::Pauli(p), &g).unwrap().is_identity());
        let f = image_in_sp(&Gate::Fourier(HomMatrix::identity(&Group::new(&[2]).unwrap())), &Group::new(&[2]).unwrap()).unwrap();
        assert_eq!(f.matrix().entries(), &[vec![0, 1], vec![1, 0]]);
    }
}
