//! Clifford unitaries up to global phase, as images of the Pauli generators.

mod gates;
mod two_local;

pub use gates::{cx_automorphism, fourier_square, Gate, GateSequence};
pub use two_local::{touched_slots, two_local_factorize};

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::pauli::{beta_unchecked, PauliOperator, PauliVector};
use crate::phase::Phase;
use crate::symplectic::SymplecticMap;

/// Conjugation action `P ↦ U P U†`, stored on `X_{e_i}` and `Z_{e_i}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordTableau {
    group: Group,
    x_images: Vec<PauliOperator>,
    z_images: Vec<PauliOperator>,
}

impl CliffordTableau {
    /// Validates the commutation and order conditions.
    pub fn new(group: &Group, x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Result<Self> {
        let d = group.rank();
        if x_images.len() != d || z_images.len() != d {
            return Err(Error::InvalidTableau(format!("expected {d} X and {d} Z images")));
        }
        for p in x_images.iter().chain(&z_images) {
            group.ensure_same(p.group())?;
        }
        let t = CliffordTableau {
            group: group.clone(),
            x_images,
            z_images,
        };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_valid(group: &Group, x_images: Vec<PauliOperator>, z_images: Vec<PauliOperator>) -> Self {
        let t = CliffordTableau {
            group: group.clone(),
            x_images,
            z_images,
        };
        debug_assert!(t.validate().is_ok(), "{:?}", t.validate());
        t
    }

    fn validate(&self) -> Result<()> {
        let d = self.group.rank();
        let images: Vec<&PauliOperator> = self.x_images.iter().chain(&self.z_images).collect();
        for a in 0..2 * d {
            let ga = PauliVector::generator(&self.group, a);
            for b in 0..a {
                let gb = PauliVector::generator(&self.group, b);
                if beta_unchecked(images[a].vector(), images[b].vector()) != beta_unchecked(&ga, &gb) {
                    return Err(Error::InvalidTableau(format!(
                        "commutation of generator images {b} and {a} is not preserved"
                    )));
                }
            }
            let q = self.group.order(a % d);
            if !images[a].pow(q).is_identity() {
                return Err(Error::InvalidTableau(format!(
                    "image of generator {a} raised to its order {q} is not the identity"
                )));
            }
        }
        if !self.symplectic_matrix().is_automorphism() {
            return Err(Error::InvalidTableau("generator images are not independent".into()));
        }
        Ok(())
    }

    pub fn identity(group: &Group) -> Self {
        let d = group.rank();
        let gen = |i| PauliOperator::from_vector(Phase::ZERO, PauliVector::generator(group, i));
        CliffordTableau {
            group: group.clone(),
            x_images: (0..d).map(gen).collect(),
            z_images: (d..2 * d).map(gen).collect(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn x_images(&self) -> &[PauliOperator] {
        &self.x_images
    }

    pub fn z_images(&self) -> &[PauliOperator] {
        &self.z_images
    }

    /// `U p U†`, multiplying generator images in the fixed order
    /// `X_{e_0}^{g_0} … X_{e_{d-1}}^{g_{d-1}} Z_{e_0}^{χ_0} …`.
    pub fn conjugate(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.group.ensure_same(p.group())?;
        let v = p.vector();
        let mut acc = PauliOperator::identity(&self.group).with_phase(p.phase());
        for (img, &k) in self.x_images.iter().zip(v.x()) {
            if k != 0 {
                acc = acc.mul_unchecked(&img.pow(k));
            }
        }
        for (img, &k) in self.z_images.iter().zip(v.z()) {
            if k != 0 {
                acc = acc.mul_unchecked(&img.pow(k));
            }
        }
        Ok(acc)
    }

    /// `outer ∘ self`: apply `self` first.
    pub fn then(&self, outer: &CliffordTableau) -> Result<CliffordTableau> {
        outer.compose(self)
    }

    /// `self ∘ inner` (the unitary `U_self · U_inner`).
    pub fn compose(&self, inner: &CliffordTableau) -> Result<CliffordTableau> {
        self.group.ensure_same(&inner.group)?;
        let map = |ps: &[PauliOperator]| ps.iter().map(|p| self.conjugate(p)).collect::<Result<Vec<_>>>();
        Ok(CliffordTableau {
            group: self.group.clone(),
            x_images: map(&inner.x_images)?,
            z_images: map(&inner.z_images)?,
        })
    }

    pub fn inverse(&self) -> CliffordTableau {
        let sigma = self.symplectic_matrix();
        let inv = sigma.invert().expect("tableau symplectic part is invertible");
        let d = self.group.rank();
        let images: Vec<PauliOperator> = (0..2 * d)
            .map(|a| {
                let v = PauliVector::from_residues(&self.group, inv.column(a).residues()).expect("shape");
                let p = PauliOperator::from_vector(Phase::ZERO, v);
                let img = self.conjugate(&p).expect("same group");
                debug_assert_eq!(img.vector(), &PauliVector::generator(&self.group, a));
                p.with_phase(-img.phase())
            })
            .collect();
        let (x, z) = images.split_at(d);
        CliffordTableau::from_valid(&self.group, x.to_vec(), z.to_vec())
    }

    /// The action on `G × Ĝ` (columns are images of generator vectors).
    pub fn symplectic_matrix(&self) -> HomMatrix {
        let d = self.group.rank();
        let dbl = self.group.product(&self.group);
        let cols: Vec<Vec<i64>> = self
            .x_images
            .iter()
            .chain(&self.z_images)
            .map(|p| p.vector().residues())
            .collect();
        let entries = (0..2 * d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        HomMatrix::new(&dbl, &dbl, entries).expect("image vectors have compatible orders")
    }

    pub fn symplectic(&self) -> SymplecticMap {
        SymplecticMap::from_valid(&self.group, self.symplectic_matrix())
    }

    /// The tableau of the Pauli gate `p`: `P ↦ β(p, P) P`.
    pub fn pauli(p: &PauliOperator) -> CliffordTableau {
        let g = p.group();
        let d = g.rank();
        let img = |i| {
            let v = PauliVector::generator(g, i);
            PauliOperator::from_vector(beta_unchecked(p.vector(), &v), v)
        };
        CliffordTableau {
            group: g.clone(),
            x_images: (0..d).map(img).collect(),
            z_images: (d..2 * d).map(img).collect(),
        }
    }

    /// Equal to the identity tableau, phases included.
    pub fn is_identity(&self) -> bool {
        *self == CliffordTableau::identity(&self.group)
    }

    /// True when the tableau acts as the identity on Pauli vectors.
    pub fn is_pauli(&self) -> bool {
        self.symplectic_matrix().is_identity()
    }

    /// For a tableau with trivial symplectic part, the Pauli `w` it conjugates by.
    pub fn as_pauli(&self) -> Option<PauliOperator> {
        if !self.is_pauli() {
            return None;
        }
        let g = &self.group;
        // β(w, X_{e_j}) = w_z[j] / q_j and β(w, Z_{e_j}) = −w_x[j] / q_j.
        let z: Vec<i64> = self
            .x_images
            .iter()
            .zip(g.orders())
            .map(|(p, &q)| p.phase().times_integral(q).expect("order-consistent image"))
            .collect();
        let x: Vec<i64> = self
            .z_images
            .iter()
            .zip(g.orders())
            .map(|(p, &q)| -p.phase().times_integral(q).expect("order-consistent image"))
            .collect();
        let w = PauliOperator::from_parts(g, Phase::ZERO, &x, &z).expect("shape");
        debug_assert_eq!(CliffordTableau::pauli(&w), *self);
        Some(w)
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordTableau")
            .field("group", &self.group)
            .field("x", &self.x_images)
            .field("z", &self.z_images)
            .finish()
    }
}

/// Free-function form of [`CliffordTableau::conjugate`].
pub fn conjugate(t: &CliffordTableau, p: &PauliOperator) -> Result<PauliOperator> {
    t.conjugate(p)
}

/// `t2 ∘ t1`.
pub fn compose(t2: &CliffordTableau, t1: &CliffordTableau) -> Result<CliffordTableau> {
    t2.compose(t1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::QuadraticForm;

    #[test]
    fn identity_conjugation() {
        let g = Group::new(&[4, 2]).unwrap();
        let p = PauliOperator::from_parts(&g, Phase::new(1, 3), &[1, 1], &[2, 1]).unwrap();
        assert_eq!(CliffordTableau::identity(&g).conjugate(&p).unwrap(), p);
    }

    #[test]
    fn cx_spreads_x() {
        let z2 = Group::new(&[2]).unwrap();
        let g2 = z2.power(2);
        let t = Gate::Automorphism(cx_automorphism(&z2)).tableau(&g2).unwrap();
        let xi = PauliOperator::from_parts(&g2, Phase::ZERO, &[1, 0], &[0, 0]).unwrap();
        let xx = PauliOperator::from_parts(&g2, Phase::ZERO, &[1, 1], &[0, 0]).unwrap();
        assert_eq!(t.conjugate(&xi).unwrap(), xx);
        let iz = PauliOperator::from_parts(&g2, Phase::ZERO, &[0, 0], &[0, 1]).unwrap();
        let zz = PauliOperator::from_parts(&g2, Phase::ZERO, &[0, 0], &[1, 1]).unwrap();
        assert_eq!(t.conjugate(&iz).unwrap(), zz);
    }

    #[test]
    fn qubit_s_and_hadamard() {
        let z2 = Group::new(&[2]).unwrap();
        let s = Gate::Quadratic(QuadraticForm::new(&z2, &[1], &[], &[0]).unwrap()).tableau(&z2).unwrap();
        let x = PauliOperator::from_parts(&z2, Phase::ZERO, &[1], &[0]).unwrap();
        assert_eq!(s.x_images()[0], PauliOperator::from_parts(&z2, Phase::new(1, 4), &[1], &[1]).unwrap());
        assert_eq!(s.z_images()[0], PauliOperator::from_parts(&z2, Phase::ZERO, &[0], &[1]).unwrap());
        let h = Gate::Fourier(HomMatrix::identity(&z2)).tableau(&z2).unwrap();
        let z = PauliOperator::from_parts(&z2, Phase::ZERO, &[0], &[1]).unwrap();
        assert_eq!(h.conjugate(&x).unwrap(), z);
        assert_eq!(h.conjugate(&z).unwrap(), x);
    }

    #[test]
    fn inverse_and_products() {
        let g = Group::new(&[4, 2]).unwrap();
        let xi = QuadraticForm::new(&g, &[1, 1], &[(0, 1, 1)], &[1, 0]).unwrap();
        let tau = HomMatrix::endo(&g, vec![vec![1, 2], vec![1, 1]]).unwrap();
        let p = PauliOperator::from_parts(&g, Phase::new(1, 8), &[1, 1], &[3, 0]).unwrap();
        let seq = GateSequence::new(
            &g,
            vec![
                Gate::Quadratic(xi),
                Gate::Fourier(HomMatrix::identity(&g)),
                Gate::Automorphism(tau),
                Gate::Pauli(p.clone()),
            ],
        )
        .unwrap();
        let t = seq.tableau().unwrap();
        assert_eq!(t.compose(&t.inverse()).unwrap(), CliffordTableau::identity(&g));
        assert_eq!(t.inverse().compose(&t).unwrap(), CliffordTableau::identity(&g));
        let q = PauliOperator::from_parts(&g, Phase::ZERO, &[3, 0], &[1, 1]).unwrap();
        let lhs = t.conjugate(&p.mul(&q).unwrap()).unwrap();
        let rhs = t.conjugate(&p).unwrap().mul(&t.conjugate(&q).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let inv_seq = seq.inverse().unwrap();
        assert_eq!(inv_seq.tableau().unwrap(), t.inverse());
    }

    #[test]
    fn pauli_tableau_round_trip() {
        let g = Group::new(&[4, 2]).unwrap();
        let w = PauliOperator::from_parts(&g, Phase::ZERO, &[3, 1], &[2, 1]).unwrap();
        assert_eq!(CliffordTableau::pauli(&w).as_pauli().unwrap(), w);
        assert!(CliffordTableau::pauli(&w).is_pauli());
    }

    #[test]
    fn invalid_tableau_rejected() {
        let z2 = Group::new(&[2]).unwrap();
        let x = PauliOperator::from_parts(&z2, Phase::ZERO, &[1], &[0]).unwrap();
        assert!(matches!(
            CliffordTableau::new(&z2, vec![x.clone()], vec![x]),
            Err(Error::InvalidTableau(_))
        ));
    }
}
