//! On `G = Z_2 × Z_4`, one-slot automorphisms of `G²` and the two CX maps do
//! not generate `Aut(G²)`.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::hom::HomMatrix;

use super::ProtocolReport;

pub const BFS_DEFAULT_CAP: usize = 1 << 20;

/// Factor order of `G²`: `(a₀, b₀, a₁, b₁)` with `a ∈ Z_2`, `b ∈ Z_4`.
const Q: [i64; 4] = [2, 4, 2, 4];
const TWO: [usize; 2] = [0, 2];
const FOUR: [usize; 2] = [1, 3];

fn g2() -> Group {
    Group::new(&Q).expect("valid orders")
}

fn single() -> Group {
    Group::new(&[2, 4]).expect("valid orders")
}

fn automorphisms_of_single() -> Vec<HomMatrix> {
    let g = single();
    let mut out = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in [0, 2] {
                for d in 0..4 {
                    let m = HomMatrix::endo(&g, vec![vec![a, b], vec![c, d]]).expect("valid entries");
                    if m.is_automorphism() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// One-slot automorphisms of `G²` (both slots) and the two CX-type maps.
pub fn subgroup_generators() -> Vec<HomMatrix> {
    let g = single();
    let id = HomMatrix::identity(&g);
    let mut out = Vec::new();
    for t in automorphisms_of_single() {
        if t.is_identity() {
            continue;
        }
        out.push(t.direct_sum(&id));
        out.push(id.direct_sum(&t));
    }
    let e = |r: [[i64; 4]; 4]| HomMatrix::endo(&g2(), r.iter().map(|x| x.to_vec()).collect()).expect("valid");
    // (g, h) ↦ (g, g + h)
    out.push(e([[1, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1]]));
    // (g, h) ↦ (g + h, h)
    out.push(e([[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]));
    out
}

/// `((a₀,b₀),(a₁,b₁)) ↦ ((a₀,b₀),(a₀+a₁,b₁))`.
pub fn target_map() -> HomMatrix {
    HomMatrix::endo(
        &g2(),
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 0, 0, 1]],
    )
    .expect("valid")
}

type Block = [[i64; 2]; 2];

/// The `Z_2` block and the `Z_4` block, both reduced mod 2.
fn blocks(m: &[Vec<i64>]) -> (Block, Block) {
    let pick = |idx: [usize; 2]| {
        let mut b = [[0; 2]; 2];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                b[r][c] = m[i][j].rem_euclid(2);
            }
        }
        b
    };
    (pick(TWO), pick(FOUR))
}

/// The image of `((a,0),(b,0))` projected to the `Z_2` factors agrees mod 2
/// with the image of `((0,a),(0,b))` projected to the `Z_4` factors.
pub fn mod2_invariant(m: &HomMatrix) -> bool {
    let (a, b) = blocks(m.entries());
    a == b
}

fn mul2(x: &Block, y: &Block) -> Block {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % 2;
        }
    }
    out
}

/// Checks that reduction to the two mod-2 blocks is multiplicative: every
/// cross-block product `Z_2 → Z_4 → Z_2` or `Z_4 → Z_2 → Z_4` is even, since
/// entries from a `Z_2` column into a `Z_4` row are multiples of 2.
fn reduction_is_multiplicative() -> bool {
    // Entries allowed from a Z_2 column into a Z_4 row, and from Z_4 into Z_2.
    let into_four = [0i64, 2];
    let into_two = [0i64, 1];
    into_four
        .iter()
        .all(|&u| into_two.iter().all(|&v| (v * u) % 2 == 0 && (u * v) % 4 % 2 == 0))
}

/// Packed entries, two bits each.
fn key(m: &[[u8; 4]; 4]) -> u32 {
    m.iter().flatten().fold(0u32, |acc, &e| (acc << 2) | e as u32)
}

fn raw(m: &HomMatrix) -> [[u8; 4]; 4] {
    let mut out = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m.entry(i, j) as u8;
        }
    }
    out
}

fn raw_compose(a: &[[u8; 4]; 4], b: &[[u8; 4]; 4]) -> [[u8; 4]; 4] {
    let mut out = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let s: i64 = (0..4).map(|k| a[i][k] as i64 * b[k][j] as i64).sum();
            out[i][j] = s.rem_euclid(Q[i]) as u8;
        }
    }
    out
}

/// Breadth-first closure of the generated subgroup. Returns its size, or
/// `ResourceCap` if more than `cap` elements are reached.
fn closure(gens: &[HomMatrix], target: &HomMatrix, cap: usize) -> Result<(usize, bool, bool)> {
    let gens: Vec<[[u8; 4]; 4]> = gens.iter().map(raw).collect();
    let start = raw(&HomMatrix::identity(&g2()));
    let tkey = key(&raw(target));
    let mut seen = HashSet::new();
    seen.insert(key(&start));
    let mut queue = VecDeque::from([start]);
    let mut all_invariant = true;
    while let Some(x) = queue.pop_front() {
        let rows: Vec<Vec<i64>> = x.iter().map(|r| r.iter().map(|&e| e as i64).collect()).collect();
        let (a, b) = blocks(&rows);
        all_invariant &= a == b;
        for s in &gens {
            let y = raw_compose(s, &x);
            if seen.insert(key(&y)) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap {
                        explored: seen.len(),
                        cap,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok((seen.len(), seen.contains(&tkey), all_invariant))
}

/// Certificate that the target map lies outside the generated subgroup.
///
/// With `bfs = Some(cap)` the subgroup is also enumerated explicitly.
pub fn cx_insufficiency_certificate(bfs: Option<usize>) -> Result<ProtocolReport> {
    let mut report = ProtocolReport::new("cx-insufficiency", &single());
    let gens = subgroup_generators();
    report.detail("generators", gens.len());
    for (k, m) in gens.iter().enumerate() {
        report.check(mod2_invariant(m), || format!("generator {k} violates the invariant"));
    }
    report.check(reduction_is_multiplicative(), || "mod-2 reduction is not multiplicative".into());
    for (i, x) in gens.iter().enumerate() {
        let bx = blocks(x.entries());
        let inv = x.invert()?;
        let bi = blocks(inv.entries());
        report.check(mod2_invariant(&inv), || format!("inverse of generator {i} violates the invariant"));
        report.check(mul2(&bx.0, &bi.0) == [[1, 0], [0, 1]], || format!("generator {i}: block inverse mismatch"));
        for (j, y) in gens.iter().enumerate() {
            let xy = x.compose(y)?;
            let (by, bxy) = (blocks(y.entries()), blocks(xy.entries()));
            let ok = bxy.0 == mul2(&bx.0, &by.0) && bxy.1 == mul2(&bx.1, &by.1) && mod2_invariant(&xy);
            report.check(ok, || format!("product of generators {i} and {j} breaks the invariant"));
        }
    }
    // Random words as a further spot check.
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for w in 0..200 {
        let mut acc = HomMatrix::identity(&g2());
        for _ in 0..rng.gen_range(1..=24) {
            acc = gens[rng.gen_range(0..gens.len())].compose(&acc)?;
        }
        report.check(mod2_invariant(&acc), || format!("random word {w} violates the invariant"));
    }
    let target = target_map();
    report.check(target.is_automorphism(), || "target is not an automorphism".into());
    report.check(!mod2_invariant(&target), || "target satisfies the invariant".into());
    if let Some(cap) = bfs {
        let (size, hit, inv) = closure(&gens, &target, cap)?;
        report.detail("closure_size", size);
        report.check(!hit, || "closure contains the target".into());
        report.check(inv, || "closure contains an element violating the invariant".into());
    }
    report.detail("verdict", if report.success() { "target not in H" } else { "inconclusive" });
    Ok(report)
}
