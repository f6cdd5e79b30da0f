//! Finite abelian groups as ordered products of cyclic factors.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::modp;
use crate::error::{Error, Result};

/// A finite abelian group `Z_{q_0} x ... x Z_{q_d}`, written additively.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group {
    orders: Arc<[i64]>,
}

impl Group {
    /// Builds a group from its cyclic orders. Every order must be at least 2.
    pub fn new(orders: &[i64]) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&q| q < 2) {
            return Err(Error::InvalidOrder(bad));
        }
        Ok(Group {
            orders: Arc::from(orders),
        })
    }

    /// Cyclic group `Z_q`.
    pub fn cyclic(q: i64) -> Result<Self> {
        Group::new(&[q])
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn order(&self, factor: usize) -> i64 {
        self.orders[factor]
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Total order `|G|`.
    pub fn size(&self) -> usize {
        self.orders.iter().map(|&q| q as usize).product()
    }

    /// Exponent of the group (lcm of the factor orders).
    pub fn exponent(&self) -> i64 {
        self.orders.iter().fold(1, |acc, q| acc.lcm(q))
    }

    /// True when `q_{i+1}` divides `q_i` for every `i`.
    pub fn is_canonical(&self) -> bool {
        self.orders.windows(2).all(|w| w[0] % w[1] == 0)
    }

    /// The product `self^n`, laid out slot-major.
    pub fn power(&self, n: usize) -> Group {
        let mut orders = Vec::with_capacity(self.rank() * n);
        for _ in 0..n {
            orders.extend_from_slice(&self.orders);
        }
        Group {
            orders: Arc::from(orders),
        }
    }

    /// Direct product `self x other`.
    pub fn product(&self, other: &Group) -> Group {
        let mut orders = self.orders.to_vec();
        orders.extend_from_slice(&other.orders);
        Group {
            orders: Arc::from(orders),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            residues: vec![0; self.rank()],
        }
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.residues[i] = 1;
        e
    }

    /// Element with the given residues, reduced modulo the factor orders.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "expected {} residues for {}, got {}",
                self.rank(),
                self,
                residues.len()
            )));
        }
        Ok(GroupElement {
            group: self.clone(),
            residues: residues
                .iter()
                .zip(self.orders.iter())
                .map(|(&r, &q)| modp(r, q))
                .collect(),
        })
    }

    /// Mixed-radix index of an element, factor 0 most significant.
    pub fn index_of(&self, residues: &[i64]) -> usize {
        residues
            .iter()
            .zip(self.orders.iter())
            .fold(0usize, |acc, (&r, &q)| acc * q as usize + r as usize)
    }

    /// Inverse of [`Group::index_of`].
    pub fn residues_of(&self, mut index: usize) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (slot, &q) in out.iter_mut().zip(self.orders.iter()).rev() {
            *slot = (index % q as usize) as i64;
            index /= q as usize;
        }
        out
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| GroupElement {
            group: self.clone(),
            residues: self.residues_of(i),
        })
    }

    pub(crate) fn ensure_same(&self, other: &Group) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::mismatch(self, other))
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|q| q.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group[{}]", self)
    }
}

impl FromStr for Group {
    type Err = Error;

    /// Parses the literal form `"4,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad cyclic order {t:?} in group literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if orders.is_empty() {
            return Err(Error::Parse("empty group literal".into()));
        }
        Group::new(&orders)
    }
}

/// An element of a [`Group`], residues reduced into `[0, q_i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub(crate) group: Group,
    pub(crate) residues: Vec<i64>,
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn residues(&self) -> &[i64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.ensure_same(&other.group)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &GroupElement) -> GroupElement {
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.group.orders.iter())
            .map(|((&a, &b), &q)| modp(a + b, q))
            .collect();
        GroupElement {
            group: self.group.clone(),
            residues,
        }
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(-1)
    }

    /// `k * self`.
    pub fn scale(&self, k: i64) -> GroupElement {
        let residues = self
            .residues
            .iter()
            .zip(self.group.orders.iter())
            .map(|(&a, &q)| crate::arith::mulmod(a, k, q))
            .collect();
        GroupElement {
            group: self.group.clone(),
            residues,
        }
    }

    /// Order of the element: lcm over factors of `q_i / gcd(q_i, r_i)`.
    pub fn order(&self) -> i64 {
        self.residues
            .iter()
            .zip(self.group.orders.iter())
            .fold(1, |acc, (&r, &q)| acc.lcm(&(q / q.gcd(&r))))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.residues)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_canonical_flag() {
        assert!(Group::new(&[4, 2]).unwrap().is_canonical());
        assert!(Group::new(&[2]).unwrap().is_canonical());
        assert!(!Group::new(&[2, 3]).unwrap().is_canonical());
        assert_eq!(Group::new(&[4, 1]), Err(Error::InvalidOrder(1)));
        assert_eq!(Group::new(&[0]), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn element_arithmetic() {
        let g = Group::new(&[4, 2]).unwrap();
        let a = g.element(&[3, 1]).unwrap();
        let b = g.element(&[2, 1]).unwrap();
        assert_eq!(a.add(&b).unwrap().residues(), &[1, 0]);
        assert_eq!(g.element(&[2, 0]).unwrap().order(), 2);
        assert_eq!(g.zero().order(), 1);
        assert_eq!(a.order(), 4);
        assert_eq!(a.add(&a.neg()).unwrap(), g.zero());
    }

    #[test]
    fn mismatched_groups_rejected() {
        let g = Group::new(&[4, 2]).unwrap();
        let h = Group::new(&[2, 4]).unwrap();
        assert!(matches!(
            g.zero().add(&h.zero()),
            Err(Error::GroupMismatch { .. })
        ));
    }

    #[test]
    fn literal_round_trip() {
        let g: Group = "4, 2".parse().unwrap();
        assert_eq!(g.orders(), &[4, 2]);
        assert_eq!(g.to_string(), "4,2");
        assert!("4,x".parse::<Group>().is_err());
        assert!("1".parse::<Group>().is_err());
    }

    #[test]
    fn index_is_bijective() {
        let g = Group::new(&[3, 2, 4]).unwrap();
        for i in 0..g.size() {
            assert_eq!(g.index_of(&g.residues_of(i)), i);
        }
    }
}
