use gclifford::arith::bezout;
use gclifford::canonical::canonicalize;
use gclifford::clifford::Gate;
use gclifford::forms::Character;
use gclifford::group::{Group, GroupElement};
use gclifford::pauli::{beta, PauliOperator, PauliVector};
use gclifford::sim::StabilizerState;
use gclifford::symplectic::{random_clifford, random_endomorphism, random_gate, random_quadratic_form};
use gclifford::Phase;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDERS: &[&[i64]] = &[&[2], &[3], &[4], &[6], &[2, 2], &[2, 4], &[4, 2], &[3, 3], &[2, 3], &[8]];

fn group() -> impl Strategy<Value = Group> {
    prop::sample::select(ORDERS).prop_map(|o| Group::new(o).unwrap())
}

fn elem(g: &Group, rng: &mut ChaCha8Rng) -> GroupElement {
    let r: Vec<i64> = g.orders().iter().map(|&q| rng.gen_range(0..q)).collect();
    g.element(&r).unwrap()
}

fn vector(g: &Group, rng: &mut ChaCha8Rng) -> PauliVector {
    let x = elem(g, rng);
    let z = elem(g, rng);
    PauliVector::new(g, x.residues(), z.residues()).unwrap()
}

fn pauli(g: &Group, rng: &mut ChaCha8Rng) -> PauliOperator {
    let ph = Phase::new(rng.gen_range(0..24), 24);
    PauliOperator::from_vector(ph, vector(g, rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_is_additive(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_endomorphism(&g, &mut rng);
        let (a, b) = (elem(&g, &mut rng), elem(&g, &mut rng));
        prop_assert_eq!(f.apply(&a.add(&b).unwrap()).unwrap(), f.apply(&a).unwrap().add(&f.apply(&b).unwrap()).unwrap());
    }

    #[test]
    fn canonical_form_is_a_bijection(orders in prop::collection::vec(2i64..=12, 1..=3)) {
        let g = Group::new(&orders).unwrap();
        let (c, iso) = canonicalize(&g);
        prop_assert_eq!(c.size(), g.size());
        prop_assert!(c.is_canonical());
        let mut seen = std::collections::HashSet::new();
        for a in g.elements() {
            let fa = iso.forward().apply(&a).unwrap();
            prop_assert_eq!(iso.backward().apply(&fa).unwrap(), a);
            prop_assert!(seen.insert(fa));
        }
    }

    #[test]
    fn pauli_product_is_associative(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q, r) = (pauli(&g, &mut rng), pauli(&g, &mut rng), pauli(&g, &mut rng));
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        prop_assert!(p.mul(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn commutator_phase_is_beta(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q) = (pauli(&g, &mut rng), pauli(&g, &mut rng));
        let b = beta(p.vector(), q.vector()).unwrap();
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap().add_phase(b));
        prop_assert_eq!(b + beta(q.vector(), p.vector()).unwrap(), Phase::ZERO);
        prop_assert_eq!(beta(p.vector(), p.vector()).unwrap(), Phase::ZERO);
    }

    #[test]
    fn polarization_is_a_symmetric_bicharacter(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = random_quadratic_form(&g, &mut rng);
        let b = xi.polarize();
        let (x, y, z) = (elem(&g, &mut rng), elem(&g, &mut rng), elem(&g, &mut rng));
        let direct = xi.eval(&x.add(&y).unwrap()).unwrap() - xi.eval(&x).unwrap() - xi.eval(&y).unwrap();
        prop_assert_eq!(b.eval(&x, &y).unwrap(), direct);
        prop_assert_eq!(b.eval(&x, &y).unwrap(), b.eval(&y, &x).unwrap());
        prop_assert_eq!(b.eval(&x.add(&z).unwrap(), &y).unwrap(), b.eval(&x, &y).unwrap() + b.eval(&z, &y).unwrap());
    }

    #[test]
    fn i_xi_solves_its_defining_equation(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = random_quadratic_form(&g, &mut rng);
        prop_assume!(xi.is_nondegenerate());
        let chi = Character::from_element(elem(&g, &mut rng));
        let t = xi.i_xi(&chi).unwrap();
        for h in g.elements() {
            let lhs = xi.eval(&h).unwrap() + xi.eval(&t).unwrap() - xi.eval(&h.add(&t).unwrap()).unwrap();
            prop_assert_eq!(lhs, chi.eval(&h).unwrap());
        }
        prop_assert_eq!(xi.i_xi_inverse(&t).unwrap(), chi);
    }

    #[test]
    fn conjugation_is_a_homomorphism(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_clifford(&g, 8, &mut rng).tableau().unwrap();
        let (p, q) = (pauli(&g, &mut rng), pauli(&g, &mut rng));
        let lhs = t.conjugate(&p.mul(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, t.conjugate(&p).unwrap().mul(&t.conjugate(&q).unwrap()).unwrap());
    }

    #[test]
    fn tableau_composition_and_inverse(g in group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t1 = random_clifford(&g, 6, &mut rng).tableau().unwrap();
        let t2 = random_clifford(&g, 6, &mut rng).tableau().unwrap();
        let p = pauli(&g, &mut rng);
        let both = t2.compose(&t1).unwrap();
        prop_assert_eq!(both.conjugate(&p).unwrap(), t2.conjugate(&t1.conjugate(&p).unwrap()).unwrap());
        prop_assert!(t1.compose(&t1.inverse()).unwrap().is_identity());
        prop_assert!(t1.inverse().compose(&t1).unwrap().is_identity());
    }

    #[test]
    fn bezout_is_normalized(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assume!(a != 0 || b != 0);
        let (g, x, y) = bezout(a, b).unwrap();
        prop_assert_eq!(x * a + y * b, g);
        prop_assert!(g > 0 && a % g == 0 && b % g == 0);
        if b != 0 {
            prop_assert!(0 <= x && x < (b / g).abs());
        }
    }

    #[test]
    fn repeated_measurement_is_deterministic(g in prop::sample::select(&ORDERS[..6]), n in 1usize..=3, seed in any::<u64>()) {
        let base = Group::new(g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = StabilizerState::zero(&base, n);
        for _ in 0..10 {
            if n > 1 && rng.gen_bool(0.3) {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                state.apply_gate(&Gate::Cx, &[a, b]).unwrap();
            } else {
                state.apply_gate(&random_gate(&base, true, &mut rng), &[rng.gen_range(0..n)]).unwrap();
            }
        }
        let big = base.power(n);
        let v = vector(&big, &mut rng);
        let m = v.order();
        let raw = PauliOperator::from_vector(Phase::ZERO, v);
        let ph = raw.pow(m).phase();
        let obs = raw.with_phase(Phase::new(-ph.numer(), ph.denom() * m));
        prop_assert!(obs.pow(m).is_identity());
        let (ks, states) = state.measure_all(&obs, m).unwrap();
        prop_assert!(!ks.is_empty());
        for (k, s) in ks.iter().zip(&states) {
            s.check().unwrap();
            let (again, _) = s.measure_all(&obs, m).unwrap();
            prop_assert_eq!(again, vec![*k]);
        }
    }
}
