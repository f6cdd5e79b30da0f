use gclifford::group::Group;
use gclifford::symplectic::{decompose, decompose_clifford, image_of_sequence, random_clifford, random_symplectic, GATE_BOUND_CONSTANT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_round_trips_across_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for orders in [&[4][..], &[6], &[2, 2], &[2, 4], &[4, 2, 2], &[12, 6, 2], &[3, 9], &[2, 4, 2, 4], &[5]] {
        let g = Group::new(orders).unwrap();
        let mut worst = 0;
        for _ in 0..40 {
            let s = random_symplectic(&g, &mut rng);
            let seq = decompose(&s).unwrap_or_else(|e| panic!("{g}: {e} on {s:?}"));
            assert_eq!(image_of_sequence(&seq).unwrap(), s);
            worst = worst.max(seq.len());
            assert!(seq.len() <= GATE_BOUND_CONSTANT * g.rank() * g.rank());
        }
        for _ in 0..10 {
            let c = random_clifford(&g, 10, &mut rng);
            let t = c.tableau().unwrap();
            let seq = decompose_clifford(&t).unwrap();
            assert_eq!(seq.tableau().unwrap(), t);
        }
        eprintln!("{g}: worst {worst}");
    }
}
