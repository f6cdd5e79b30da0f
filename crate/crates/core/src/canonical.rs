//! Canonicalization to the invariant-factor (divisibility chain) form.

use crate::arith::{factorize, inv_mod, modp};
use crate::group::Group;
use crate::hom::{HomMatrix, Isomorphism};

/// CRT idempotent in `Z_n` for the prime-power part `pe` of `n`:
/// `≡ 1 (mod pe)` and `≡ 0 (mod n/pe)`.
fn idempotent(n: i64, pe: i64) -> i64 {
    let rest = n / pe;
    if rest == 1 {
        return 1;
    }
    let inv = inv_mod(rest % pe, pe).expect("coprime parts");
    modp(rest * inv, n)
}

/// Returns a group in divisibility-chain form together with the isomorphism
/// from `g` to it (forward) and back. Already-canonical input maps to itself
/// with the identity isomorphism.
pub fn canonicalize(g: &Group) -> (Group, Isomorphism) {
    if g.is_canonical() {
        return (g.clone(), Isomorphism::identity(g));
    }
    // For each prime, the input factors carrying it, sorted by exponent.
    let mut primes: Vec<i64> = Vec::new();
    let mut parts: Vec<Vec<(i64, u32)>> = Vec::new();
    for &q in g.orders() {
        let f = factorize(q);
        for &(p, _) in &f {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        parts.push(f);
    }
    primes.sort_unstable();
    let exponent = |j: usize, p: i64| -> u32 {
        parts[j].iter().find(|(pp, _)| *pp == p).map_or(0, |&(_, e)| e)
    };

    // slot[p][rank] = input factor contributing the rank-th largest p-power.
    let mut assignment: Vec<(i64, Vec<usize>)> = Vec::new();
    let mut width = 0;
    for &p in &primes {
        let mut carriers: Vec<usize> = (0..g.rank()).filter(|&j| exponent(j, p) > 0).collect();
        carriers.sort_by(|&a, &b| exponent(b, p).cmp(&exponent(a, p)).then(a.cmp(&b)));
        width = width.max(carriers.len());
        assignment.push((p, carriers));
    }
    let mut out_orders = vec![1i64; width];
    for (p, carriers) in &assignment {
        for (k, &j) in carriers.iter().enumerate() {
            out_orders[k] *= p.pow(exponent(j, *p));
        }
    }
    let out = Group::new(&out_orders).expect("nontrivial invariant factors");

    let mut fwd = vec![vec![0i64; g.rank()]; width];
    let mut bwd = vec![vec![0i64; width]; g.rank()];
    for (p, carriers) in &assignment {
        for (k, &j) in carriers.iter().enumerate() {
            let pe = p.pow(exponent(j, *p));
            fwd[k][j] += idempotent(out_orders[k], pe);
            bwd[j][k] += idempotent(g.order(j), pe);
        }
    }
    let forward = HomMatrix::new(g, &out, fwd).expect("CRT embedding is well defined");
    let backward = HomMatrix::new(&out, g, bwd).expect("CRT projection is well defined");
    let iso = Isomorphism::new(forward, backward).expect("CRT maps are mutually inverse");
    (out, iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn check_bijective_additive(g: &Group, iso: &Isomorphism) {
        let f = iso.forward();
        let images: HashSet<_> = g.elements().map(|x| f.apply(&x).unwrap()).collect();
        assert_eq!(images.len(), g.size());
        for a in g.elements() {
            for b in g.elements() {
                let lhs = f.apply(&a.add(&b).unwrap()).unwrap();
                let rhs = f.apply(&a).unwrap().add(&f.apply(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn z2_z3_to_z6() {
        let g = Group::new(&[2, 3]).unwrap();
        let (c, iso) = canonicalize(&g);
        assert_eq!(c.orders(), &[6]);
        check_bijective_additive(&g, &iso);
    }

    #[test]
    fn already_canonical_is_identity() {
        let g = Group::new(&[4, 2]).unwrap();
        let (c, iso) = canonicalize(&g);
        assert_eq!(c, g);
        assert!(iso.forward().is_identity());
    }

    #[test]
    fn z2_z4_reorders() {
        let g = Group::new(&[2, 4]).unwrap();
        let (c, iso) = canonicalize(&g);
        assert_eq!(c.orders(), &[4, 2]);
        check_bijective_additive(&g, &iso);
    }

    #[test]
    fn mixed_primes() {
        let g = Group::new(&[6, 4, 9, 2]).unwrap();
        let (c, iso) = canonicalize(&g);
        assert!(c.is_canonical());
        assert_eq!(c.size(), g.size());
        assert_eq!(c.orders(), &[36, 6, 2]);
        assert!(iso.forward().is_automorphism() || iso.forward().is_surjective());
    }
}
