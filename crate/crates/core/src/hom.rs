//! Homomorphisms between products of cyclic groups as integer matrices.
//!
//! Entry `m[i][j]` is the scalar by which the `j`-th source generator is sent
//! into the `i`-th target factor. A matrix is a well-defined homomorphism iff
//! `m[i][j] * source.q_j ≡ 0 (mod target.q_i)` for every entry.

use std::fmt;

use crate::arith::{modp, mulmod};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::snf::smith;

/// Checks the well-definedness condition on raw entries.
pub fn hom_is_valid(source: &Group, target: &Group, entries: &[Vec<i64>]) -> bool {
    entries.len() == target.rank()
        && entries.iter().zip(target.orders()).all(|(row, &qi)| {
            row.len() == source.rank()
                && row
                    .iter()
                    .zip(source.orders())
                    .all(|(&m, &qj)| mulmod(m, qj, qi) == 0)
        })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomMatrix {
    source: Group,
    target: Group,
    entries: Vec<Vec<i64>>,
}

impl HomMatrix {
    /// Validates and reduces `entries` (rows indexed by target factors).
    pub fn new(source: &Group, target: &Group, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::InvalidHom(format!(
                "expected a {}x{} matrix",
                target.rank(),
                source.rank()
            )));
        }
        if !hom_is_valid(source, target, &entries) {
            return Err(Error::InvalidHom(format!(
                "entries {entries:?} do not define a homomorphism {source} -> {target}"
            )));
        }
        Ok(Self::from_valid(source, target, entries))
    }

    pub(crate) fn from_valid(source: &Group, target: &Group, mut entries: Vec<Vec<i64>>) -> Self {
        for (row, &q) in entries.iter_mut().zip(target.orders()) {
            for x in row.iter_mut() {
                *x = modp(*x, q);
            }
        }
        debug_assert!(hom_is_valid(source, target, &entries));
        HomMatrix {
            source: source.clone(),
            target: target.clone(),
            entries,
        }
    }

    /// Endomorphism of `g` given by `entries`.
    pub fn endo(g: &Group, entries: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(g, g, entries)
    }

    pub fn identity(g: &Group) -> Self {
        let d = g.rank();
        let entries = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::from_valid(g, g, entries)
    }

    pub fn zero(source: &Group, target: &Group) -> Self {
        Self::from_valid(source, target, vec![vec![0; source.rank()]; target.rank()])
    }

    /// `k * id`.
    pub fn scalar(g: &Group, k: i64) -> Self {
        let d = g.rank();
        let entries = (0..d)
            .map(|i| (0..d).map(|j| if i == j { k } else { 0 }).collect())
            .collect();
        Self::from_valid(g, g, entries)
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Image of the `j`-th source generator.
    pub fn column(&self, j: usize) -> GroupElement {
        GroupElement {
            group: self.target.clone(),
            residues: self.entries.iter().map(|r| r[j]).collect(),
        }
    }

    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        self.source.ensure_same(a.group())?;
        Ok(self.apply_residues(a.residues()))
    }

    pub(crate) fn apply_residues(&self, x: &[i64]) -> GroupElement {
        let residues = self
            .entries
            .iter()
            .zip(self.target.orders())
            .map(|(row, &q)| {
                let s: i128 = row.iter().zip(x).map(|(&m, &v)| m as i128 * v as i128).sum();
                s.rem_euclid(q as i128) as i64
            })
            .collect();
        GroupElement {
            group: self.target.clone(),
            residues,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &HomMatrix) -> Result<HomMatrix> {
        self.source.ensure_same(&inner.target)?;
        let entries = (0..self.target.rank())
            .map(|i| {
                (0..inner.source.rank())
                    .map(|k| {
                        let s: i128 = (0..self.source.rank())
                            .map(|j| self.entries[i][j] as i128 * inner.entries[j][k] as i128)
                            .sum();
                        s.rem_euclid(self.target.order(i) as i128) as i64
                    })
                    .collect()
            })
            .collect();
        HomMatrix::new(&inner.source, &self.target, entries)
    }

    pub fn add(&self, other: &HomMatrix) -> Result<HomMatrix> {
        self.source.ensure_same(&other.source)?;
        self.target.ensure_same(&other.target)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self::from_valid(&self.source, &self.target, entries))
    }

    pub fn neg(&self) -> HomMatrix {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        Self::from_valid(&self.source, &self.target, entries)
    }

    /// The dual map `χ ↦ χ ∘ self` from the target's characters to the
    /// source's characters, with characters identified with residues.
    pub fn dual(&self) -> HomMatrix {
        let (s, t) = (self.source.orders(), self.target.orders());
        let entries = (0..s.len())
            .map(|k| {
                (0..t.len())
                    .map(|i| {
                        // m[i][k] * q_k / q_i is integral by validity.
                        let num = self.entries[i][k] as i128 * s[k] as i128;
                        (num / t[i] as i128) as i64
                    })
                    .collect()
            })
            .collect();
        Self::from_valid(&self.target, &self.source, entries)
    }

    /// Block-diagonal sum `self ⊕ other` on the product groups.
    pub fn direct_sum(&self, other: &HomMatrix) -> HomMatrix {
        let source = self.source.product(&other.source);
        let target = self.target.product(&other.target);
        let (ds, dt) = (self.source.rank(), self.target.rank());
        let mut entries = vec![vec![0; source.rank()]; target.rank()];
        for i in 0..dt {
            entries[i][..ds].copy_from_slice(&self.entries[i]);
        }
        for (i, row) in other.entries.iter().enumerate() {
            entries[dt + i][ds..].copy_from_slice(row);
        }
        Self::from_valid(&source, &target, entries)
    }

    /// Sub-block with the given target rows and source columns.
    pub fn block(&self, rows: &[usize], cols: &[usize], source: &Group, target: &Group) -> Result<HomMatrix> {
        let entries = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        HomMatrix::new(source, target, entries)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == HomMatrix::identity(&self.source)
    }

    /// Lifted relation matrix `[M | diag(q_target)]` over the integers.
    fn relation_matrix(&self) -> Vec<Vec<i128>> {
        let ds = self.source.rank();
        let dt = self.target.rank();
        (0..dt)
            .map(|i| {
                let mut row: Vec<i128> = self.entries[i].iter().map(|&x| x as i128).collect();
                row.extend((0..dt).map(|k| if k == i { self.target.order(i) as i128 } else { 0 }));
                debug_assert_eq!(row.len(), ds + dt);
                row
            })
            .collect()
    }

    /// True iff the map is onto.
    pub fn is_surjective(&self) -> bool {
        smith(&self.relation_matrix()).diag.iter().all(|&s| s == 1)
    }

    /// True iff this is a bijective endomorphism.
    pub fn is_automorphism(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }

    /// Some `x` with `self(x) = b`, if one exists.
    pub fn preimage(&self, b: &GroupElement) -> Result<Option<GroupElement>> {
        self.target.ensure_same(b.group())?;
        let snf = smith(&self.relation_matrix());
        Ok(self.preimage_with(&snf, b.residues()))
    }

    fn preimage_with(&self, snf: &crate::snf::Smith, b: &[i64]) -> Option<GroupElement> {
        let dt = self.target.rank();
        let ncols = self.source.rank() + dt;
        let c: Vec<i128> = snf
            .u
            .iter()
            .map(|row| row.iter().zip(b).map(|(&x, &y)| x * y as i128).sum())
            .collect();
        let mut z = vec![0i128; ncols];
        for k in 0..dt {
            let s = snf.diag[k];
            if s == 0 {
                if c[k] != 0 {
                    return None;
                }
            } else if c[k] % s != 0 {
                return None;
            } else {
                z[k] = c[k] / s;
            }
        }
        let residues: Vec<i64> = (0..self.source.rank())
            .map(|j| {
                let y: i128 = snf.v[j].iter().zip(&z).map(|(&a, &b)| a * b).sum();
                y.rem_euclid(self.source.order(j) as i128) as i64
            })
            .collect();
        let x = GroupElement {
            group: self.source.clone(),
            residues,
        };
        debug_assert_eq!(self.apply_residues(x.residues()).residues(), b);
        Some(x)
    }

    /// Two-sided inverse of an isomorphism.
    pub fn invert(&self) -> Result<HomMatrix> {
        let snf = smith(&self.relation_matrix());
        let mut cols = Vec::with_capacity(self.target.rank());
        for i in 0..self.target.rank() {
            let e = self.target.generator(i);
            match self.preimage_with(&snf, e.residues()) {
                Some(x) => cols.push(x.residues),
                None => {
                    return Err(Error::NotInvertible {
                        witness: e.residues,
                        reason: "not in the image".into(),
                    })
                }
            }
        }
        if self.source.size() != self.target.size() {
            return Err(Error::NotInvertible {
                witness: self.source.zero().residues,
                reason: "in a kernel forced by |source| > |target|".into(),
            });
        }
        let entries = (0..self.source.rank())
            .map(|j| cols.iter().map(|c| c[j]).collect())
            .collect();
        HomMatrix::new(&self.target, &self.source, entries)
    }
}

impl fmt::Debug for HomMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom[{} -> {}]{:?}", self.source, self.target, self.entries)
    }
}

/// A pair of mutually inverse homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    forward: HomMatrix,
    backward: HomMatrix,
}

impl Isomorphism {
    pub fn new(forward: HomMatrix, backward: HomMatrix) -> Result<Self> {
        let a = backward.compose(&forward)?;
        let b = forward.compose(&backward)?;
        if !a.is_identity() || !b.is_identity() {
            return Err(Error::InvalidHom("maps are not mutually inverse".into()));
        }
        Ok(Isomorphism { forward, backward })
    }

    pub fn from_forward(forward: HomMatrix) -> Result<Self> {
        let backward = forward.invert()?;
        Ok(Isomorphism { forward, backward })
    }

    pub fn identity(g: &Group) -> Self {
        Isomorphism {
            forward: HomMatrix::identity(g),
            backward: HomMatrix::identity(g),
        }
    }

    pub fn forward(&self) -> &HomMatrix {
        &self.forward
    }

    pub fn backward(&self) -> &HomMatrix {
        &self.backward
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4z2() -> Group {
        Group::new(&[4, 2]).unwrap()
    }

    #[test]
    fn validity_condition() {
        let g = z4z2();
        assert!(!hom_is_valid(&g, &g, &[vec![1, 1], vec![0, 1]]));
        assert!(hom_is_valid(&g, &g, &[vec![1, 2], vec![1, 1]]));
        assert!(HomMatrix::endo(&g, vec![vec![1, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn automorphism_against_enumeration() {
        let g = z4z2();
        let m = HomMatrix::endo(&g, vec![vec![1, 2], vec![1, 1]]).unwrap();
        assert!(m.is_automorphism());
        let images: std::collections::HashSet<_> =
            g.elements().map(|x| m.apply(&x).unwrap()).collect();
        assert_eq!(images.len(), g.size());
        let inv = m.invert().unwrap();
        assert!(inv.compose(&m).unwrap().is_identity());
        assert!(m.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn identity_and_zero() {
        let g = z4z2();
        let id = HomMatrix::identity(&g);
        assert!(id.is_automorphism());
        assert_eq!(id.invert().unwrap(), id);
        let x = g.element(&[3, 1]).unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
        assert!(HomMatrix::zero(&g, &g).apply(&x).unwrap().is_zero());
    }

    #[test]
    fn non_invertible_reports_witness() {
        let g = z4z2();
        let m = HomMatrix::endo(&g, vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert!(!m.is_automorphism());
        match m.invert() {
            Err(Error::NotInvertible { witness, .. }) => {
                let w = g.element(&witness).unwrap();
                assert!(m.preimage(&w).unwrap().is_none());
            }
            other => panic!("expected NotInvertible, got {other:?}"),
        }
    }

    #[test]
    fn dual_is_precomposition() {
        let g = Group::new(&[4, 2]).unwrap();
        let h = Group::new(&[2, 6]).unwrap();
        let m = HomMatrix::new(&g, &h, vec![vec![1, 1], vec![3, 3]]).unwrap();
        let d = m.dual();
        // (χ ∘ m)(x) = χ(m x) for all characters χ of h and all x in g.
        for chi in h.elements() {
            let pulled = d.apply(&chi).unwrap();
            for x in g.elements() {
                let mx = m.apply(&x).unwrap();
                let lhs = num_rational::Ratio::new(1, 1)
                    * chi
                        .residues()
                        .iter()
                        .zip(mx.residues())
                        .zip(h.orders())
                        .map(|((&c, &v), &q)| num_rational::Ratio::new(c * v, q))
                        .sum::<num_rational::Ratio<i64>>();
                let rhs: num_rational::Ratio<i64> = pulled
                    .residues()
                    .iter()
                    .zip(x.residues())
                    .zip(g.orders())
                    .map(|((&c, &v), &q)| num_rational::Ratio::new(c * v, q))
                    .sum();
                assert!((lhs - rhs).is_integer());
            }
        }
        assert_eq!(d.dual(), m);
    }
}
