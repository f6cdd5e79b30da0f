use gclifford::group::Group;
use gclifford::sim::{
    dense_branches, distribution, random_circuit, stabilizer_fixes, tableau_branches, total_variation,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_circuits_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for orders in [&[2][..], &[4, 2], &[3], &[6]] {
        let g = Group::new(orders).unwrap();
        for n in 1..=3 {
            if g.size().pow(n as u32) > 512 {
                continue;
            }
            for _ in 0..15 {
                let c = random_circuit(&g, n, 8, 3, &mut rng).unwrap();
                let d = dense_branches::<f64>(&c, 4096).unwrap();
                let t = tableau_branches(&c).unwrap();
                let tv = total_variation(&distribution(&d), &distribution(&t));
                assert!(tv < 1e-9, "tv {tv} on {g} n={n}: {c:?}");
                for tb in &t {
                    tb.state.check().unwrap();
                    let db = d.iter().find(|b| b.record == tb.record).unwrap();
                    assert!(stabilizer_fixes(&tb.state, &db.state).unwrap(), "{c:?}");
                }
            }
        }
    }
}
