//! Row reduction of automorphism matrices by two-factor elementary moves.
//!
//! Every move touches at most two cyclic factors, which is what makes it
//! usable both for the one-column extension step of the symplectic
//! reduction and for two-local factorization over `G^n`.

use crate::arith::{bezout, gcd_shift, inv_mod, modp, mulmod};
use crate::group::Group;
use crate::hom::HomMatrix;

/// An elementary automorphism touching at most two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemOp {
    /// `x[dst] += k * x[src]`; valid when `k * q_src ≡ 0 (mod q_dst)`.
    AddMultiple { dst: usize, src: usize, k: i64 },
    /// `x[idx] *= unit`.
    Scale { idx: usize, unit: i64 },
    /// `(x[a], x[b]) <- m * (x[a], x[b])` for two factors of equal order, `det m = ±1`.
    Mix { a: usize, b: usize, m: [[i64; 2]; 2] },
}

impl ElemOp {
    /// Factors touched by the move.
    pub fn factors(&self) -> Vec<usize> {
        match *self {
            ElemOp::AddMultiple { dst, src, .. } => vec![dst, src],
            ElemOp::Scale { idx, .. } => vec![idx],
            ElemOp::Mix { a, b, .. } => vec![a, b],
        }
    }

    fn apply(&self, orders: &[i64], v: &mut [i64]) {
        match *self {
            ElemOp::AddMultiple { dst, src, k } => {
                v[dst] = modp(v[dst] + mulmod(k, v[src], orders[dst]), orders[dst]);
            }
            ElemOp::Scale { idx, unit } => v[idx] = mulmod(v[idx], unit, orders[idx]),
            ElemOp::Mix { a, b, m } => {
                let q = orders[a];
                let (x, y) = (v[a], v[b]);
                v[a] = modp(mulmod(m[0][0], x, q) + mulmod(m[0][1], y, q), q);
                v[b] = modp(mulmod(m[1][0], x, q) + mulmod(m[1][1], y, q), q);
            }
        }
    }

    pub fn inverse(&self, orders: &[i64]) -> ElemOp {
        match *self {
            ElemOp::AddMultiple { dst, src, k } => ElemOp::AddMultiple { dst, src, k: -k },
            ElemOp::Scale { idx, unit } => ElemOp::Scale {
                idx,
                unit: inv_mod(unit, orders[idx]).expect("scale by a unit"),
            },
            ElemOp::Mix { a, b, m } => {
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                // det is ±1, so the adjugate times det is the inverse.
                ElemOp::Mix {
                    a,
                    b,
                    m: [[det * m[1][1], -det * m[0][1]], [-det * m[1][0], det * m[0][0]]],
                }
            }
        }
    }

    pub fn to_matrix(&self, g: &Group) -> HomMatrix {
        let d = g.rank();
        let cols: Vec<Vec<i64>> = (0..d)
            .map(|j| {
                let mut e = vec![0; d];
                e[j] = 1;
                self.apply(g.orders(), &mut e);
                e
            })
            .collect();
        let entries = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        HomMatrix::new(g, g, entries).expect("elementary moves are valid homomorphisms")
    }
}

/// Left-multiplication of a set of columns by elementary moves, with a log.
pub(crate) struct Eliminator<'a> {
    orders: &'a [i64],
    pub cols: Vec<Vec<i64>>,
    pub ops: Vec<ElemOp>,
}

impl<'a> Eliminator<'a> {
    pub fn new(orders: &'a [i64], cols: Vec<Vec<i64>>) -> Self {
        Eliminator {
            orders,
            cols,
            ops: Vec::new(),
        }
    }

    fn push(&mut self, op: ElemOp) {
        for c in self.cols.iter_mut() {
            op.apply(self.orders, c);
        }
        self.ops.push(op);
    }

    /// Turns column `col` into the unit vector at `pivot`.
    ///
    /// `rows` lists the factors allowed to mix with the pivot; each must have
    /// order dividing `q_pivot`. Entries outside `rows` (other than the pivot)
    /// are cleared by adding multiples of the pivot row. Returns `false` if the
    /// column does not generate a `Z_{q_pivot}` direct summand.
    pub fn unit_column(&mut self, col: usize, pivot: usize, rows: &[usize]) -> bool {
        let qp = self.orders[pivot];
        debug_assert!(rows.iter().all(|&r| qp % self.orders[r] == 0));
        for &r in rows {
            if r == pivot || self.orders[r] != qp {
                continue;
            }
            let (a, b) = (self.cols[col][pivot], self.cols[col][r]);
            if b == 0 {
                continue;
            }
            let (g, x, y) = bezout(a, b).expect("b is nonzero");
            self.push(ElemOp::Mix {
                a: pivot,
                b: r,
                m: [[x, y], [-b / g, a / g]],
            });
        }
        for &r in rows {
            let qr = self.orders[r];
            if r == pivot || qr == qp {
                continue;
            }
            let step = qp / qr;
            let w = mulmod(step, self.cols[col][r], qp);
            let k = gcd_shift(self.cols[col][pivot], w, qp);
            if k != 0 && w != 0 {
                self.push(ElemOp::AddMultiple {
                    dst: pivot,
                    src: r,
                    k: k * step,
                });
            }
        }
        let Some(u) = inv_mod(self.cols[col][pivot], qp) else {
            return false;
        };
        if u != 1 {
            self.push(ElemOp::Scale { idx: pivot, unit: u });
        }
        for r in 0..self.orders.len() {
            let v = self.cols[col][r];
            if r != pivot && v != 0 {
                self.push(ElemOp::AddMultiple {
                    dst: r,
                    src: pivot,
                    k: -v,
                });
            }
        }
        true
    }
}

/// Factor order for elimination: decreasing order, stable on ties.
pub(crate) fn chain_order(orders: &[i64]) -> Option<Vec<usize>> {
    let mut perm: Vec<usize> = (0..orders.len()).collect();
    perm.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    let chain = perm.windows(2).all(|w| orders[w[0]] % orders[w[1]] == 0);
    chain.then_some(perm)
}

/// Reduces an automorphism to the identity; returns the moves `E_1..E_k`
/// with `E_k ∘ … ∘ E_1 ∘ m = id`, or `None` if `m` is not an automorphism.
///
/// The group's factor orders must form a divisibility chain after sorting.
pub(crate) fn reduce_to_identity(m: &HomMatrix) -> Option<Vec<ElemOp>> {
    let g = m.source();
    let orders = g.orders();
    let perm = chain_order(orders)?;
    let cols = (0..g.rank()).map(|j| m.column(j).residues().to_vec()).collect();
    let mut el = Eliminator::new(orders, cols);
    for (t, &c) in perm.iter().enumerate() {
        if !el.unit_column(c, c, &perm[t..]) {
            return None;
        }
    }
    Some(el.ops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_invert() {
        let g = Group::new(&[4, 4, 2]).unwrap();
        let ops = [
            ElemOp::AddMultiple { dst: 0, src: 2, k: 2 },
            ElemOp::AddMultiple { dst: 2, src: 1, k: 1 },
            ElemOp::Scale { idx: 1, unit: 3 },
            ElemOp::Mix { a: 0, b: 1, m: [[2, 1], [1, 1]] },
        ];
        for op in ops {
            let m = op.to_matrix(&g);
            let inv = op.inverse(g.orders()).to_matrix(&g);
            assert!(m.compose(&inv).unwrap().is_identity(), "{op:?}");
        }
    }

    #[test]
    fn reduction_reaches_identity() {
        let g = Group::new(&[2, 4]).unwrap();
        let m = HomMatrix::endo(&g, vec![vec![1, 1], vec![2, 3]]).unwrap();
        assert!(m.is_automorphism());
        let ops = reduce_to_identity(&m).unwrap();
        let mut acc = m.clone();
        for op in &ops {
            acc = op.to_matrix(&g).compose(&acc).unwrap();
        }
        assert!(acc.is_identity());
    }

    #[test]
    fn non_chain_orders_rejected() {
        assert!(chain_order(&[2, 3]).is_none());
        assert_eq!(chain_order(&[2, 4, 4]), Some(vec![1, 2, 0]));
    }
}
