//! Random test inputs: automorphisms, forms, gates and symplectic maps.

use num_integer::Integer;
use rand::Rng;

use crate::clifford::{Gate, GateSequence};
use crate::error::Result;
use crate::forms::QuadraticForm;
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::pauli::PauliOperator;
use crate::phase::Phase;

use super::{image_in_sp, is_symplectic, SymplecticMap};

/// A random valid endomorphism matrix.
pub fn random_endomorphism<R: Rng + ?Sized>(g: &Group, rng: &mut R) -> HomMatrix {
    let q = g.orders();
    let entries = q
        .iter()
        .map(|&qi| {
            q.iter()
                .map(|&qj| {
                    let gcd = qi.gcd(&qj);
                    (qi / gcd) * rng.gen_range(0..gcd)
                })
                .collect()
        })
        .collect();
    HomMatrix::endo(g, entries).expect("entries are multiples of q_i / gcd")
}

/// Rejection sampling over valid matrices.
pub fn random_automorphism<R: Rng + ?Sized>(g: &Group, rng: &mut R) -> HomMatrix {
    loop {
        let m = random_endomorphism(g, rng);
        if m.is_automorphism() {
            return m;
        }
    }
}

/// A random (not necessarily homogeneous) quadratic form.
pub fn random_quadratic_form<R: Rng + ?Sized>(g: &Group, rng: &mut R) -> QuadraticForm {
    let q = g.orders();
    let d = q.len();
    let diag: Vec<i64> = q
        .iter()
        .map(|&qi| {
            let a = rng.gen_range(0..2 * qi);
            if (a * qi) % 2 == 0 {
                a
            } else {
                a - 1
            }
        })
        .collect();
    let mut cross = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            cross.push((i, j, rng.gen_range(0..q[i].gcd(&q[j]))));
        }
    }
    let linear: Vec<i64> = q.iter().map(|&qi| rng.gen_range(0..qi)).collect();
    QuadraticForm::new(g, &diag, &cross, &linear).expect("parity fixed above")
}

fn random_pauli<R: Rng + ?Sized>(g: &Group, rng: &mut R) -> PauliOperator {
    let x: Vec<i64> = g.orders().iter().map(|&q| rng.gen_range(0..q)).collect();
    let z: Vec<i64> = g.orders().iter().map(|&q| rng.gen_range(0..q)).collect();
    let den = 2 * g.exponent();
    PauliOperator::from_parts(g, Phase::new(rng.gen_range(0..den), den), &x, &z).expect("shape")
}

/// One of `A_τ`, `S_ξ`, `F_i` (and, if `with_pauli`, a Pauli gate).
pub fn random_gate<R: Rng + ?Sized>(g: &Group, with_pauli: bool, rng: &mut R) -> Gate {
    let kinds = if with_pauli { 4 } else { 3 };
    match rng.gen_range(0..kinds) {
        0 => Gate::Automorphism(random_automorphism(g, rng)),
        1 => Gate::Quadratic(random_quadratic_form(g, rng)),
        2 => Gate::Fourier(random_automorphism(g, rng)),
        _ => Gate::Pauli(random_pauli(g, rng)),
    }
}

/// A random symplectic map: the product of `20 · rank` random generator images.
pub fn random_symplectic<R: Rng + ?Sized>(g: &Group, rng: &mut R) -> SymplecticMap {
    let mut acc = SymplecticMap::identity(g);
    for _ in 0..20 * g.rank() {
        let img = image_in_sp(&random_gate(g, false, rng), g).expect("generated gates are valid");
        acc = img.compose(&acc).expect("same group");
    }
    acc
}

/// A random sequence of `len` generator gates including Paulis.
pub fn random_clifford<R: Rng + ?Sized>(g: &Group, len: usize, rng: &mut R) -> GateSequence {
    let gates = (0..len).map(|_| random_gate(g, true, rng)).collect();
    GateSequence::new(g, gates).expect("generated gates are valid")
}

/// Every symplectic map over `g`, by enumerating valid matrices on `G × Ĝ`.
/// Returns `None` when more than `cap` matrices would have to be tried.
pub fn enumerate_symplectic(g: &Group, cap: usize) -> Result<Option<Vec<SymplecticMap>>> {
    let dbl = g.product(g);
    let q = dbl.orders();
    let n = q.len();
    let choices: Vec<(i64, i64)> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let gcd = q[i].gcd(&q[j]);
            (q[i] / gcd, gcd)
        })
        .collect();
    let total = choices.iter().try_fold(1usize, |acc, &(_, c)| acc.checked_mul(c as usize));
    match total {
        Some(t) if t <= cap => {}
        _ => return Ok(None),
    }
    let mut out = Vec::new();
    let mut idx = vec![0i64; n * n];
    loop {
        let entries: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| choices[i * n + j].0 * idx[i * n + j]).collect())
            .collect();
        let m = HomMatrix::new(&dbl, &dbl, entries)?;
        if is_symplectic(g, &m) {
            out.push(SymplecticMap::from_valid(g, m));
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == n * n {
                return Ok(Some(out));
            }
            idx[k] += 1;
            if idx[k] < choices[k].1 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qubit_sp_has_six_elements() {
        let z2 = Group::new(&[2]).unwrap();
        let all = enumerate_symplectic(&z2, 1 << 10).unwrap().unwrap();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn random_products_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for orders in [&[4][..], &[6], &[2, 2], &[2, 4]] {
            let g = Group::new(orders).unwrap();
            for _ in 0..5 {
                let s = random_symplectic(&g, &mut rng);
                assert!(is_symplectic(&g, s.matrix()));
            }
        }
    }
}
