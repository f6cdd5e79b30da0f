//! The `G`-Pauli group: `ω·X_g·Z_χ` with exact phases.
//!
//! `X_g |h⟩ = |h + g⟩` and `Z_χ |h⟩ = χ(h) |h⟩`. Multi-qudit operators live
//! over the product group `G^n` with one global phase.

use std::fmt;

use crate::arith::modp;
use crate::error::{Error, Result};
use crate::forms::{eval_pairing, Character};
use crate::group::{Group, GroupElement};
use crate::phase::Phase;

/// A Pauli operator modulo phase: an element of `G × Ĝ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    group: Group,
    x: Vec<i64>,
    z: Vec<i64>,
}

impl PauliVector {
    pub fn new(group: &Group, x: &[i64], z: &[i64]) -> Result<Self> {
        let x = group.element(x)?.residues;
        let z = group.element(z)?.residues;
        Ok(PauliVector {
            group: group.clone(),
            x,
            z,
        })
    }

    pub(crate) fn from_reduced(group: &Group, x: Vec<i64>, z: Vec<i64>) -> Self {
        PauliVector {
            group: group.clone(),
            x,
            z,
        }
    }

    pub fn identity(group: &Group) -> Self {
        let d = group.rank();
        Self::from_reduced(group, vec![0; d], vec![0; d])
    }

    /// Vector of `X_{e_i}` for `i < d`, of `Z_{e_{i-d}}` otherwise.
    pub fn generator(group: &Group, i: usize) -> Self {
        let d = group.rank();
        let mut v = Self::identity(group);
        if i < d {
            v.x[i] = 1;
        } else {
            v.z[i - d] = 1;
        }
        v
    }

    /// Splits a residue vector of `G × Ĝ` (X part first).
    pub fn from_residues(group: &Group, r: &[i64]) -> Result<Self> {
        let d = group.rank();
        if r.len() != 2 * d {
            return Err(Error::InvalidElement(format!("expected {} residues", 2 * d)));
        }
        Self::new(group, &r[..d], &r[d..])
    }

    pub fn residues(&self) -> Vec<i64> {
        let mut r = self.x.clone();
        r.extend_from_slice(&self.z);
        r
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn x(&self) -> &[i64] {
        &self.x
    }

    pub fn z(&self) -> &[i64] {
        &self.z
    }

    pub fn x_part(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            residues: self.x.clone(),
        }
    }

    pub fn z_part(&self) -> Character {
        Character {
            group: self.group.clone(),
            residues: self.z.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&r| r == 0)
    }

    pub fn add(&self, other: &PauliVector) -> Result<PauliVector> {
        self.group.ensure_same(&other.group)?;
        let q = self.group.orders();
        let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).zip(q).map(|((x, y), m)| modp(x + y, *m)).collect();
        Ok(Self::from_reduced(&self.group, sum(&self.x, &other.x), sum(&self.z, &other.z)))
    }

    pub fn scale(&self, k: i64) -> PauliVector {
        let q = self.group.orders();
        let sc = |a: &[i64]| a.iter().zip(q).map(|(x, m)| crate::arith::mulmod(*x, k, *m)).collect();
        Self::from_reduced(&self.group, sc(&self.x), sc(&self.z))
    }

    /// Order of the vector in `G × Ĝ`.
    pub fn order(&self) -> i64 {
        let dbl = self.group.product(&self.group);
        GroupElement {
            group: dbl,
            residues: self.residues(),
        }
        .order()
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{:?}Z{:?}", self.x, self.z)
    }
}

/// Commutation phase: `P_u P_v = β(u, v) · P_v P_u`.
pub fn beta(u: &PauliVector, v: &PauliVector) -> Result<Phase> {
    u.group.ensure_same(&v.group)?;
    Ok(beta_unchecked(u, v))
}

pub(crate) fn beta_unchecked(u: &PauliVector, v: &PauliVector) -> Phase {
    let q = u.group.orders();
    eval_pairing(q, &u.z, &v.x) - eval_pairing(q, &v.z, &u.x)
}

/// `ω·X_g·Z_χ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    phase: Phase,
    vector: PauliVector,
}

impl PauliOperator {
    pub fn new(phase: Phase, g: &GroupElement, chi: &Character) -> Result<Self> {
        g.group().ensure_same(chi.group())?;
        Ok(PauliOperator {
            phase,
            vector: PauliVector::from_reduced(g.group(), g.residues().to_vec(), chi.residues().to_vec()),
        })
    }

    pub fn from_vector(phase: Phase, vector: PauliVector) -> Self {
        PauliOperator { phase, vector }
    }

    /// Parses raw residue lists; entries are reduced modulo the factor orders.
    pub fn from_parts(group: &Group, phase: Phase, x: &[i64], z: &[i64]) -> Result<Self> {
        Ok(PauliOperator {
            phase,
            vector: PauliVector::new(group, x, z)?,
        })
    }

    pub fn identity(group: &Group) -> Self {
        Self::from_vector(Phase::ZERO, PauliVector::identity(group))
    }

    pub fn x_gate(g: &GroupElement) -> Self {
        let group = g.group();
        Self::from_vector(
            Phase::ZERO,
            PauliVector::from_reduced(group, g.residues().to_vec(), vec![0; group.rank()]),
        )
    }

    pub fn z_gate(chi: &Character) -> Self {
        let group = chi.group();
        Self::from_vector(
            Phase::ZERO,
            PauliVector::from_reduced(group, vec![0; group.rank()], chi.residues().to_vec()),
        )
    }

    pub fn group(&self) -> &Group {
        &self.vector.group
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn vector(&self) -> &PauliVector {
        &self.vector
    }

    pub fn x_part(&self) -> GroupElement {
        self.vector.x_part()
    }

    pub fn z_part(&self) -> Character {
        self.vector.z_part()
    }

    pub fn with_phase(&self, phase: Phase) -> Self {
        Self::from_vector(phase, self.vector.clone())
    }

    pub fn add_phase(&self, phase: Phase) -> Self {
        Self::from_vector(self.phase + phase, self.vector.clone())
    }

    /// True for the identity with zero phase.
    pub fn is_identity(&self) -> bool {
        self.phase.is_zero() && self.vector.is_identity()
    }

    /// `self · other`.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.group().ensure_same(other.group())?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliOperator) -> PauliOperator {
        let q = self.group().orders();
        // Z_χ₁ X_g₂ = χ₁(g₂) X_g₂ Z_χ₁
        let cross = eval_pairing(q, &self.vector.z, &other.vector.x);
        PauliOperator {
            phase: self.phase + other.phase + cross,
            vector: self.vector.add(&other.vector).expect("same group"),
        }
    }

    /// `self^k`; negative powers go through the inverse.
    pub fn pow(&self, k: i64) -> PauliOperator {
        if k < 0 {
            return self.inverse().pow(-k);
        }
        let q = self.group().orders();
        let chi_g = eval_pairing(q, &self.vector.z, &self.vector.x);
        // (X_g Z_χ)^k = χ(g)^{k(k-1)/2} X_{kg} Z_{kχ}
        let tri = (k as i128 * (k as i128 - 1) / 2).rem_euclid(chi_g.denom() as i128) as i64;
        PauliOperator {
            phase: self.phase * k + chi_g * tri,
            vector: self.vector.scale(k),
        }
    }

    pub fn inverse(&self) -> PauliOperator {
        let q = self.group().orders();
        let chi_g = eval_pairing(q, &self.vector.z, &self.vector.x);
        PauliOperator {
            phase: -self.phase + chi_g,
            vector: self.vector.scale(-1),
        }
    }

    /// Commutation phase with `other`.
    pub fn commutation(&self, other: &PauliOperator) -> Result<Phase> {
        beta(&self.vector, &other.vector)
    }

    /// Places a one-qudit operator on `slot` of `n`, identity elsewhere.
    pub fn embed(&self, slot: usize, n: usize) -> Result<PauliOperator> {
        self.embed_slots(&[slot], n)
    }

    /// Places an operator over `G^k` on the given `k` slots of `G^n`.
    ///
    /// `base` is the one-slot group; `self.group()` must be `base^k`.
    pub fn embed_slots(&self, slots: &[usize], n: usize) -> Result<PauliOperator> {
        let k = slots.len();
        let dg = self.group().rank();
        if k == 0 || !dg.is_multiple_of(k) {
            return Err(Error::Circuit(format!("cannot split {} factors over {k} slots", dg)));
        }
        let d = dg / k;
        let base = Group::new(&self.group().orders()[..d])?;
        if base.power(k) != *self.group() {
            return Err(Error::mismatch(base.power(k), self.group()));
        }
        check_slots(slots, n)?;
        let big = base.power(n);
        let mut x = vec![0i64; d * n];
        let mut z = vec![0i64; d * n];
        for (t, &s) in slots.iter().enumerate() {
            x[s * d..(s + 1) * d].copy_from_slice(&self.vector.x[t * d..(t + 1) * d]);
            z[s * d..(s + 1) * d].copy_from_slice(&self.vector.z[t * d..(t + 1) * d]);
        }
        Ok(PauliOperator {
            phase: self.phase,
            vector: PauliVector::from_reduced(&big, x, z),
        })
    }

    /// Restriction to the given slots of `base^n`, keeping the phase.
    pub fn project_slots(&self, base: &Group, slots: &[usize]) -> Result<PauliOperator> {
        let d = base.rank();
        let n = self.group().rank() / d.max(1);
        if base.power(n) != *self.group() {
            return Err(Error::mismatch(base.power(n), self.group()));
        }
        check_slots(slots, n)?;
        let small = base.power(slots.len());
        let mut x = Vec::with_capacity(d * slots.len());
        let mut z = Vec::with_capacity(d * slots.len());
        for &s in slots {
            x.extend_from_slice(&self.vector.x[s * d..(s + 1) * d]);
            z.extend_from_slice(&self.vector.z[s * d..(s + 1) * d]);
        }
        Ok(PauliOperator {
            phase: self.phase,
            vector: PauliVector::from_reduced(&small, x, z),
        })
    }
}

pub(crate) fn check_slots(slots: &[usize], n: usize) -> Result<()> {
    for (i, &s) in slots.iter().enumerate() {
        if s >= n {
            return Err(Error::BadSlot { slot: s, n });
        }
        if slots[..i].contains(&s) {
            return Err(Error::Circuit(format!("slot {s} listed twice")));
        }
    }
    Ok(())
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{:?}", self.phase, self.vector)
    }
}

/// `p · q` as a free function.
pub fn pauli_mul(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.mul(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(g: &Group, x: &[i64], z: &[i64]) -> PauliOperator {
        PauliOperator::from_parts(g, Phase::ZERO, x, z).unwrap()
    }

    #[test]
    fn qubit_xz_squared_is_minus_identity() {
        let z2 = Group::new(&[2]).unwrap();
        let xz = op(&z2, &[1], &[1]);
        let sq = xz.mul(&xz).unwrap();
        assert!(sq.vector().is_identity());
        assert_eq!(sq.phase(), Phase::new(1, 2));
        assert_eq!(xz.pow(2), sq);
    }

    #[test]
    fn z_then_x_picks_up_character() {
        let z4 = Group::new(&[4]).unwrap();
        let x = op(&z4, &[1], &[0]);
        let z = op(&z4, &[0], &[1]);
        let zx = z.mul(&x).unwrap();
        assert_eq!(zx, op(&z4, &[1], &[1]).add_phase(Phase::new(1, 4)));
    }

    #[test]
    fn inverse_and_powers() {
        let g = Group::new(&[4, 2]).unwrap();
        let p = PauliOperator::from_parts(&g, Phase::new(1, 3), &[3, 1], &[1, 1]).unwrap();
        assert!(p.mul(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().mul(&p).unwrap().is_identity());
        let mut acc = PauliOperator::identity(&g);
        for k in 0..9 {
            assert_eq!(p.pow(k), acc, "k = {k}");
            acc = acc.mul(&p).unwrap();
        }
        assert_eq!(p.pow(-3), p.pow(3).inverse());
    }

    #[test]
    fn beta_examples() {
        let z2 = Group::new(&[2]).unwrap();
        let x = PauliVector::generator(&z2, 0);
        let z = PauliVector::generator(&z2, 1);
        assert_eq!(beta(&x, &z).unwrap(), Phase::new(1, 2));
        assert!(beta(&x, &x).unwrap().is_zero());
        let g = Group::new(&[4, 2]).unwrap();
        let u = PauliVector::new(&g, &[1, 1], &[3, 0]).unwrap();
        let v = PauliVector::new(&g, &[2, 1], &[1, 1]).unwrap();
        assert!((beta(&u, &v).unwrap() + beta(&v, &u).unwrap()).is_zero());
        let (pu, pv) = (PauliOperator::from_vector(Phase::ZERO, u.clone()), PauliOperator::from_vector(Phase::ZERO, v.clone()));
        let lhs = pu.mul(&pv).unwrap();
        let rhs = pv.mul(&pu).unwrap().add_phase(beta(&u, &v).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding() {
        let z2 = Group::new(&[2]).unwrap();
        let x = op(&z2, &[1], &[0]).embed(0, 2).unwrap();
        let z = op(&z2, &[0], &[1]).embed(1, 2).unwrap();
        assert!(x.commutation(&z).unwrap().is_zero());
        assert!(PauliOperator::identity(&z2).embed(1, 3).unwrap().is_identity());
        let g = Group::new(&[4, 2]).unwrap();
        let p = PauliOperator::from_parts(&g, Phase::new(1, 4), &[3, 1], &[2, 0]).unwrap();
        let e = p.embed(2, 3).unwrap();
        assert_eq!(e.project_slots(&g, &[2]).unwrap(), p);
        assert_eq!(p.embed(3, 3), Err(Error::BadSlot { slot: 3, n: 3 }));
    }
}
