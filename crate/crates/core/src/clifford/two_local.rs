use crate::canonical::canonicalize;
use crate::elim::{chain_order, reduce_to_identity};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::HomMatrix;

/// Factors an automorphism of `base^n` into automorphisms each acting
/// nontrivially on at most two slots. The factors are returned in
/// application order: `τ = f_k ∘ … ∘ f_1`.
pub fn two_local_factorize(base: &Group, n: usize, tau: &HomMatrix) -> Result<Vec<HomMatrix>> {
    let big = base.power(n);
    big.ensure_same(tau.source())?;
    big.ensure_same(tau.target())?;
    if !tau.is_automorphism() {
        return Err(tau.invert().err().unwrap_or(Error::InvalidHom("not an automorphism".into())));
    }
    if n == 1 {
        return Ok(vec![tau.clone()]);
    }
    if chain_order(big.orders()).is_some() {
        return factor_chain(tau);
    }
    // Work in the canonical form of each slot; conjugation by the slotwise
    // isomorphism keeps every factor local.
    let (canon, iso) = canonicalize(base);
    let phi = (1..n).fold(iso.forward().clone(), |acc, _| acc.direct_sum(iso.forward()));
    let phi_inv = (1..n).fold(iso.backward().clone(), |acc, _| acc.direct_sum(iso.backward()));
    debug_assert_eq!(*phi.target(), canon.power(n));
    let conj = phi.compose(tau)?.compose(&phi_inv)?;
    factor_chain(&conj)?
        .into_iter()
        .map(|f| phi_inv.compose(&f)?.compose(&phi))
        .collect()
}

fn factor_chain(tau: &HomMatrix) -> Result<Vec<HomMatrix>> {
    let g = tau.source();
    let ops = reduce_to_identity(tau)
        .ok_or_else(|| Error::InternalReductionFailure("elimination did not reach the identity".into()))?;
    // E_k ⋯ E_1 τ = I, so τ = E_1^{-1} ⋯ E_k^{-1}: apply E_k^{-1} first.
    Ok(ops
        .iter()
        .rev()
        .map(|op| op.inverse(g.orders()).to_matrix(g))
        .collect())
}

/// Slots touched by a map on `base^n` (where it differs from the identity).
pub fn touched_slots(base: &Group, m: &HomMatrix) -> Vec<usize> {
    let d = base.rank();
    let n = m.source().rank() / d;
    let id = HomMatrix::identity(m.source());
    let mut hit = vec![false; n];
    for r in 0..n * d {
        for c in 0..n * d {
            if m.entry(r, c) != id.entry(r, c) {
                hit[r / d] = true;
                hit[c / d] = true;
            }
        }
    }
    (0..n).filter(|&s| hit[s])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recompose(factors: &[HomMatrix], g: &Group) -> HomMatrix {
        factors
            .iter()
            .fold(HomMatrix::identity(g), |acc, f| f.compose(&acc).unwrap())
    }

    #[test]
    fn single_slot_is_itself() {
        let g = Group::new(&[4, 2]).unwrap();
        let t = HomMatrix::endo(&g, vec![vec![1, 2], vec![1, 1]]).unwrap();
        assert_eq!(two_local_factorize(&g, 1, &t).unwrap(), vec![t]);
    }

    #[test]
    fn three_slot_map_recomposes() {
        let g = Group::new(&[2, 4]).unwrap();
        let big = g.power(3);
        // Cyclic shift of the three slots composed with a cross-slot addition.
        let mut e = vec![vec![0i64; 6]; 6];
        for s in 0..3 {
            for k in 0..2 {
                e[((s + 1) % 3) * 2 + k][s * 2 + k] = 1;
            }
        }
        e[1][5] = 1;
        let t = HomMatrix::endo(&big, e).unwrap();
        assert!(t.is_automorphism());
        let f = two_local_factorize(&g, 3, &t).unwrap();
        assert_eq!(recompose(&f, &big), t);
        for m in &f {
            assert!(touched_slots(&g, m).len() <= 2, "{m:?}");
        }
    }

    #[test]
    fn non_chain_base_goes_through_canonical_form() {
        let g = Group::new(&[2, 3]).unwrap();
        let big = g.power(2);
        let t = HomMatrix::endo(&big, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 0], vec![0, 2, 0, 1]]).unwrap();
        let f = two_local_factorize(&g, 2, &t).unwrap();
        assert_eq!(recompose(&f, &big), t);
    }
}
