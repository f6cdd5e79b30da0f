//! Verification checks per group, each a [`ProtocolReport`]. Shared by the
//! CLI `verify` command and the acceptance tests.

use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::canonicalize;
use crate::clifford::{touched_slots, two_local_factorize, Gate};
use crate::error::Result;
use crate::forms::{is_quadratic_table, Character, PhaseTable, QuadraticForm};
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::pauli::{beta, PauliOperator, PauliVector};
use crate::phase::Phase;
use crate::protocols::{
    check_cx_protocol, check_magic_injection, check_split_fourier, check_triple_identity, cubic_phase_table,
    cx_insufficiency_certificate, t_gate_table, ProtocolReport,
};
use crate::sim::{
    cis, dense_branches, distribution, gate_matrix, pauli_matrix, random_circuit, stabilizer_fixes, tableau_branches,
    tableau_run, total_variation, DenseMatrix,
};
use crate::symplectic::{
    decompose, decompose_clifford, enumerate_symplectic, image_of_sequence, random_automorphism, random_clifford,
    random_endomorphism, random_gate, random_quadratic_form, random_symplectic, GATE_BOUND_CONSTANT,
};

const TOL: f64 = 1e-9;

/// Knobs for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub dense_cap: usize,
    /// BFS cap for the counterexample closure; `None` skips it.
    pub bfs: Option<usize>,
    pub seed: u64,
    /// Random samples per randomized check.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            dense_cap: crate::sim::DEFAULT_DENSE_CAP,
            bfs: None,
            seed: 0,
            samples: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub format_version: u32,
    pub kind: &'static str,
    pub group: String,
    pub passed: bool,
    pub checks: Vec<ProtocolReport>,
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Homomorphism additivity, canonicalization and automorphism detection
/// against enumeration.
pub fn check_group_core(g: &Group, samples: usize, seed: u64) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 1);
    let mut r = ProtocolReport::new("group-core", g);
    let elems: Vec<_> = g.elements().collect();
    for _ in 0..samples.min(20) {
        let m = random_endomorphism(g, &mut rng);
        let images: Vec<_> = elems.iter().map(|a| m.apply(a)).collect::<Result<_>>()?;
        let mut additive = true;
        for _ in 0..64 {
            let (a, b) = (rng.gen_range(0..elems.len()), rng.gen_range(0..elems.len()));
            let s = elems[a].add(&elems[b])?;
            additive &= m.apply(&s)? == images[a].add(&images[b])?;
        }
        r.check(additive, || format!("{m:?} is not additive"));
        let mut seen: Vec<usize> = images.iter().map(|x| g.index_of(x.residues())).collect();
        seen.sort_unstable();
        seen.dedup();
        let bijective = seen.len() == elems.len();
        r.check(bijective == m.is_automorphism(), || format!("is_automorphism disagrees with enumeration on {m:?}"));
        if bijective {
            let inv = m.invert()?;
            r.check(inv.compose(&m)?.is_identity() && m.compose(&inv)?.is_identity(), || {
                format!("inverse of {m:?} is not two-sided")
            });
        }
    }
    let (canon, iso) = canonicalize(g);
    r.check(canon.is_canonical() && canon.size() == g.size(), || format!("{canon} is not a chain of order {}", g.size()));
    r.check(iso.backward().compose(iso.forward())?.is_identity(), || "backward ∘ forward is not the identity".into());
    r.check(iso.forward().compose(iso.backward())?.is_identity(), || "forward ∘ backward is not the identity".into());
    r.detail("canonical", &canon);
    Ok(r)
}

/// Polarization, lifts and the `i_ξ` relation.
pub fn check_forms(g: &Group, samples: usize, seed: u64) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 2);
    let mut r = ProtocolReport::new("forms", g);
    let elems: Vec<_> = g.elements().collect();
    let mut nondegenerate = 0;
    for _ in 0..samples.min(20) {
        let xi = random_quadratic_form(g, &mut rng);
        let b = xi.polarize();
        let table = xi.table();
        let mut ok = true;
        for _ in 0..64 {
            let (x, y) = (&elems[rng.gen_range(0..elems.len())], &elems[rng.gen_range(0..elems.len())]);
            let lhs = xi.eval(&x.add(y)?)? - xi.eval(x)? - xi.eval(y)?;
            ok &= lhs == b.eval(x, y)?;
        }
        r.check(ok, || format!("polarization identity fails for {xi:?}"));
        r.check(is_quadratic_table(&table)?, || format!("table of {xi:?} is not quadratic"));
        let lift = QuadraticForm::lift_bilinear(&b);
        r.check(lift.polarize() == b, || format!("lift of the polarization of {xi:?} differs"));
        // Two lifts of one form differ by a character.
        let diff = PhaseTable::new(g, table.values().iter().zip(lift.table().values()).map(|(&a, &c)| a - c).collect())?;
        let chi_is_character = elems.iter().all(|x| {
            elems
                .iter()
                .all(|y| diff.get(x.add(y).unwrap().residues()) == diff.get(x.residues()) + diff.get(y.residues()))
        });
        r.check(chi_is_character, || format!("lifts of the polarization of {xi:?} differ by a non-character"));
        if xi.is_nondegenerate() {
            nondegenerate += 1;
            let mut rel = true;
            for chi in g.elements().take(16) {
                let chi = Character::from_element(chi);
                let t = xi.i_xi(&chi)?;
                rel &= elems.iter().all(|x| -b.eval(&t, x).unwrap() == chi.eval(x).unwrap());
            }
            r.check(rel, || format!("i_xi relation fails for {xi:?}"));
        }
    }
    r.check(!QuadraticForm::zero(g).is_nondegenerate(), || "the trivial form is nondegenerate".into());
    r.detail("nondegenerate_samples", nondegenerate);
    Ok(r)
}

/// Unitarity, `X_g X_h = X_{g+h}`, `Z_χ Z_ψ = Z_{χ+ψ}` and
/// `Z_χ X_g = χ(g) X_g Z_χ`, symbolically and on dense matrices.
pub fn check_pauli_algebra(g: &Group, samples: usize, seed: u64) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 3);
    let mut r = ProtocolReport::new("pauli-algebra", g);
    let elems: Vec<_> = g.elements().collect();
    let pairs: Vec<(usize, usize)> = if elems.len() <= 16 {
        (0..elems.len()).flat_map(|a| (0..elems.len()).map(move |b| (a, b))).collect()
    } else {
        (0..256).map(|_| (rng.gen_range(0..elems.len()), rng.gen_range(0..elems.len()))).collect()
    };
    let xs: Vec<PauliOperator> = elems.iter().map(PauliOperator::x_gate).collect();
    let zs: Vec<PauliOperator> = elems.iter().map(|e| PauliOperator::z_gate(&Character::from_element(e.clone()))).collect();
    let xm: Vec<DenseMatrix<f64>> = xs.iter().map(pauli_matrix).collect();
    let zm: Vec<DenseMatrix<f64>> = zs.iter().map(pauli_matrix).collect();
    for k in 0..elems.len() {
        r.check(xm[k].is_unitary(TOL) && zm[k].is_unitary(TOL), || format!("Pauli {k} is not unitary"));
    }
    for &(a, b) in &pairs {
        let s = g.index_of(elems[a].add(&elems[b])?.residues());
        r.check(xs[a].mul(&xs[b])? == xs[s] && xm[a].mul(&xm[b]).approx_eq(&xm[s], TOL), || {
            format!("X products fail at {:?}, {:?}", elems[a], elems[b])
        });
        r.check(zs[a].mul(&zs[b])? == zs[s] && zm[a].mul(&zm[b]).approx_eq(&zm[s], TOL), || {
            format!("Z products fail at {:?}, {:?}", elems[a], elems[b])
        });
        // Z_χ X_g = χ(g) X_g Z_χ with χ = elems[a], g = elems[b].
        let chi = Character::from_element(elems[a].clone());
        let w = chi.eval(&elems[b])?;
        let lhs = zs[a].mul(&xs[b])?;
        let rhs = xs[b].mul(&zs[a])?.add_phase(w);
        let dense = zm[a].mul(&xm[b]).approx_eq(&xm[b].mul(&zm[a]).scale(cis(w)), TOL);
        r.check(lhs == rhs && dense, || format!("commutation fails at χ={:?}, g={:?}", elems[a], elems[b]));
    }
    let random_pauli = |rng: &mut ChaCha8Rng| {
        let dbl = g.product(g);
        let res: Vec<i64> = dbl.orders().iter().map(|&q| rng.gen_range(0..q)).collect();
        let v = PauliVector::from_residues(g, &res).expect("in range");
        PauliOperator::from_vector(Phase::new(rng.gen_range(0..24), 24), v)
    };
    for _ in 0..samples.min(50) {
        let (p, q, s) = (random_pauli(&mut rng), random_pauli(&mut rng), random_pauli(&mut rng));
        r.check(p.mul(&q)?.mul(&s)? == p.mul(&q.mul(&s)?)?, || "pauli_mul is not associative".into());
        let pq = p.mul(&q)?;
        r.check(pq == q.mul(&p)?.add_phase(beta(p.vector(), q.vector())?), || "pq and qp differ by more than beta".into());
        let dense = pauli_matrix::<f64>(&pq).approx_eq(&pauli_matrix::<f64>(&p).mul(&pauli_matrix(&q)), TOL);
        r.check(dense, || format!("dense product mismatch for {p:?}, {q:?}"));
        r.check(p.mul(&p.inverse())?.is_identity(), || "p p^-1 is not the identity".into());
    }
    Ok(r)
}

/// Rank of a complex matrix by Gaussian elimination with partial pivoting.
fn rank(mut rows: Vec<Vec<Complex<f64>>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][c].norm().total_cmp(&rows[b][c].norm())) else {
            break;
        };
        if rows[p][c].norm() < 1e-9 {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank][c];
        for k in 0..rows.len() {
            if k != rank && rows[k][c].norm() > 0.0 {
                let f = rows[k][c] / pivot;
                for j in c..cols {
                    let v = rows[rank][j];
                    rows[k][j] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Operators commuting with every Pauli are scalars; operators commuting up
/// to the phases `β(w, ·)` are multiples of the Pauli `P_w`.
pub fn check_centralizer(g: &Group) -> Result<ProtocolReport> {
    let mut r = ProtocolReport::new("pauli-centralizer", g);
    let n = g.size();
    let d = g.rank();
    let gens: Vec<PauliVector> = (0..2 * d).map(|i| PauliVector::generator(g, i)).collect();
    let mats: Vec<DenseMatrix<f64>> = gens.iter().map(|v| pauli_matrix(&PauliOperator::from_vector(Phase::ZERO, v.clone()))).collect();
    let dbl = g.product(g);
    for w in dbl.elements() {
        let w = PauliVector::from_residues(g, w.residues())?;
        // Unknown M_{ab} at column a*n + b; one row per (generator, r, c).
        let mut rows = Vec::with_capacity(2 * d * n * n);
        for (v, p) in gens.iter().zip(&mats) {
            let lambda = cis::<f64>(beta(&w, v)?);
            for row in 0..n {
                for col in 0..n {
                    let mut eq = vec![Complex::new(0.0, 0.0); n * n];
                    for k in 0..n {
                        eq[row * n + k] += p.get(k, col);
                        eq[k * n + col] -= lambda * p.get(row, k);
                    }
                    rows.push(eq);
                }
            }
        }
        let nullity = n * n - rank(rows, n * n);
        let pw = pauli_matrix::<f64>(&PauliOperator::from_vector(Phase::ZERO, w.clone()));
        let solves = gens.iter().zip(&mats).all(|(v, p)| {
            let lambda = cis::<f64>(beta(&w, v).unwrap());
            pw.mul(p).approx_eq(&p.mul(&pw).scale(lambda), TOL)
        });
        r.check(nullity == 1 && solves, || format!("w = {w:?}: solution space has dimension {nullity}"));
    }
    Ok(r)
}

fn generator_paulis(on: &Group) -> Vec<PauliOperator> {
    (0..2 * on.rank())
        .map(|i| PauliOperator::from_vector(Phase::ZERO, PauliVector::generator(on, i)))
        .collect()
}

fn conjugation_matches(r: &mut ProtocolReport, label: &str, u: &DenseMatrix<f64>, t: &crate::clifford::CliffordTableau) -> Result<()> {
    let ud = u.adjoint();
    for p in generator_paulis(t.group()) {
        let lhs = u.mul(&pauli_matrix(&p)).mul(&ud);
        let img = t.conjugate(&p)?;
        let ok = lhs.approx_eq(&pauli_matrix(&img), TOL);
        r.check(ok, || format!("{label}: U {p:?} U† differs from the predicted {img:?}"));
    }
    Ok(())
}

/// Dense `U P U†` against tableau conjugation for generator gates, the CX
/// gate on two copies, and random generator words.
pub fn check_conjugation(g: &Group, samples: usize, cap: usize, seed: u64) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 4);
    let mut r = ProtocolReport::new("conjugation-rules", g);
    let k = samples.clamp(4, 16);
    let mut gates = vec![Gate::Automorphism(HomMatrix::identity(g)), Gate::Fourier(HomMatrix::identity(g))];
    for _ in 0..k {
        gates.push(Gate::Automorphism(random_automorphism(g, &mut rng)));
        gates.push(Gate::Quadratic(random_quadratic_form(g, &mut rng)));
    }
    for _ in 0..k / 2 {
        gates.push(Gate::Fourier(random_automorphism(g, &mut rng)));
        gates.push(Gate::FourierDagger(random_automorphism(g, &mut rng)));
        gates.push(random_gate(g, true, &mut rng));
    }
    for gate in &gates {
        let u = gate_matrix::<f64>(gate, g, cap)?;
        r.check(u.is_unitary(1e-12), || format!("{gate:?} is not unitary"));
        conjugation_matches(&mut r, &format!("{gate:?}"), &u, &gate.tableau(g)?)?;
    }
    let g2 = g.power(2);
    if g2.size() <= cap {
        let u = gate_matrix::<f64>(&Gate::Cx, &g2, cap)?;
        conjugation_matches(&mut r, "cx", &u, &Gate::Cx.tableau(&g2)?)?;
    }
    if g.size() <= 64 {
        for _ in 0..k / 2 {
            let seq = random_clifford(g, 6, &mut rng);
            let mut u = DenseMatrix::<f64>::identity(g.size());
            for gate in seq.gates() {
                u = gate_matrix::<f64>(gate, g, cap)?.mul(&u);
            }
            conjugation_matches(&mut r, "random word", &u, &seq.tableau()?)?;
        }
    }
    r.detail("gates", gates.len());
    Ok(r)
}

/// Round trips of `decompose` and `decompose_clifford`, with the gate bound
/// `c · rank²` for the fixed constant `c`.
pub fn check_decompose(g: &Group, samples: usize, seed: u64, exhaustive_cap: usize) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 5);
    let mut r = ProtocolReport::new("decompose", g);
    let bound = GATE_BOUND_CONSTANT * g.rank() * g.rank();
    let mut worst = 0;
    let mut run = |r: &mut ProtocolReport, s: &crate::symplectic::SymplecticMap| -> Result<()> {
        let seq = decompose(s)?;
        worst = worst.max(seq.len());
        r.check(image_of_sequence(&seq)? == *s, || format!("round trip fails on {s:?}"));
        r.check(seq.len() <= bound, || format!("{} gates exceed the bound {bound}", seq.len()));
        Ok(())
    };
    for _ in 0..samples {
        run(&mut r, &random_symplectic(g, &mut rng))?;
    }
    let exhaustive = enumerate_symplectic(g, exhaustive_cap)?;
    if let Some(all) = &exhaustive {
        for s in all {
            run(&mut r, s)?;
        }
        r.detail("sp_order", all.len());
    }
    for _ in 0..samples.min(10) {
        let t = random_clifford(g, 10, &mut rng).tableau()?;
        let seq = decompose_clifford(&t)?;
        r.check(seq.tableau()? == t, || "decompose_clifford does not recompose".into());
    }
    r.detail("worst_length", worst);
    r.detail("bound_constant", GATE_BOUND_CONSTANT);
    r.detail("bound", bound);
    Ok(r)
}

/// Random automorphisms of `G^n` recomposed from factors touching at most two slots.
pub fn check_two_local(g: &Group, n: usize, samples: usize, seed: u64) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 6 + n as u64);
    let big = g.power(n);
    let mut r = ProtocolReport::new("two-local", &big);
    let mut most = 0;
    for _ in 0..samples {
        let tau = random_automorphism(&big, &mut rng);
        let factors = two_local_factorize(g, n, &tau)?;
        most = most.max(factors.len());
        let local = factors.iter().all(|f| touched_slots(g, f).len() <= 2);
        r.check(local, || format!("a factor of {tau:?} touches more than two slots"));
        let mut acc = HomMatrix::identity(&big);
        for f in &factors {
            acc = f.compose(&acc)?;
        }
        r.check(acc == tau, || format!("factors do not recompose to {tau:?}"));
    }
    r.detail("most_factors", most);
    Ok(r)
}

/// The injected table for a group: the T analogue on `Z_2`, otherwise a sum
/// of cubic phases per factor when it meets the precondition, falling back to
/// a quadratic table.
pub fn magic_table_for(g: &Group) -> PhaseTable {
    if g.orders() == [2] {
        return t_gate_table();
    }
    if g.rank() == 1 {
        if let Ok(t) = cubic_phase_table(g.order(0)) {
            if crate::protocols::build_magic_injection(&t).is_ok() {
                return t;
            }
        }
    }
    let q = g.orders().to_vec();
    let cubic = PhaseTable::from_fn(g, |r| r.iter().zip(&q).map(|(&x, &m)| Phase::new(x.pow(3), m * m)).sum());
    if crate::protocols::build_magic_injection(&cubic).is_ok() {
        return cubic;
    }
    QuadraticForm::standard(g).table()
}

/// Nondegenerate forms to test: the standard form and random samples.
pub fn nondegenerate_forms(g: &Group, count: usize, seed: u64) -> Vec<QuadraticForm> {
    let mut rng = rng_for(seed, 7);
    let mut out = vec![QuadraticForm::standard(g)];
    for _ in 0..count * 20 {
        if out.len() > count {
            break;
        }
        let xi = random_quadratic_form(g, &mut rng);
        if xi.is_nondegenerate() && !out.iter().any(|o| o.same_values(&xi)) {
            out.push(xi);
        }
    }
    out
}

/// Hadamard, S and CX on qubits.
pub fn check_qubit_classics() -> Result<ProtocolReport> {
    let z2 = Group::new(&[2])?;
    let mut r = ProtocolReport::new("qubit-classics", &z2);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = gate_matrix::<f64>(&Gate::Fourier(HomMatrix::identity(&z2)), &z2, 4)?;
    let want = [[s, s], [s, -s]];
    let ok = (0..2).all(|a| (0..2).all(|b| (h.get(a, b) - Complex::new(want[a][b], 0.0)).norm() < TOL));
    r.check(ok, || "Fourier on Z_2 is not the Hadamard".into());
    let sg = Gate::Quadratic(QuadraticForm::new(&z2, &[1], &[], &[0])?);
    let m = gate_matrix::<f64>(&sg, &z2, 4)?;
    r.check((m.get(1, 1) - Complex::new(0.0, 1.0)).norm() < TOL && (m.get(0, 0) - 1.0).norm() < TOL, || "S is not diag(1, i)".into());
    let x = PauliOperator::x_gate(&z2.generator(0));
    let y = sg.tableau(&z2)?.conjugate(&x)?;
    r.check(y == PauliOperator::from_parts(&z2, Phase::new(1, 4), &[1], &[1])?, || format!("S X S† = {y:?}, expected iXZ"));
    let g2 = z2.power(2);
    let cx = gate_matrix::<f64>(&Gate::Cx, &g2, 16)?;
    r.check((cx.get(3, 2) - 1.0).norm() < TOL, || "CX does not send |10⟩ to |11⟩".into());
    let x0 = PauliOperator::from_parts(&g2, Phase::ZERO, &[1, 0], &[0, 0])?;
    let img = Gate::Cx.tableau(&g2)?.conjugate(&x0)?;
    r.check(img == PauliOperator::from_parts(&g2, Phase::ZERO, &[1, 1], &[0, 0])?, || format!("CX (X⊗I) CX† = {img:?}"));
    let cx_tau = Gate::Automorphism(HomMatrix::endo(&g2, vec![vec![1, 0], vec![1, 1]])?);
    r.check(cx_tau.tableau(&g2)? == Gate::Cx.tableau(&g2)?, || "(a, b) ↦ (a, a+b) does not induce CX".into());
    Ok(r)
}

/// Random Clifford+measurement circuits: tableau distributions against dense
/// branches, and every tableau branch stabilizing its dense counterpart.
pub fn check_backend_equivalence(
    g: &Group,
    circuits: usize,
    max_qudits: usize,
    gates: usize,
    measurements: usize,
    cap: usize,
    seed: u64,
) -> Result<ProtocolReport> {
    let mut rng = rng_for(seed, 8);
    let mut r = ProtocolReport::new("backend-equivalence", g);
    let sizes: Vec<usize> = (1..=max_qudits).filter(|&n| g.size().checked_pow(n as u32).is_some_and(|d| d <= cap)).collect();
    if sizes.is_empty() {
        r.detail("skipped", "dense cap");
        return Ok(r);
    }
    let mut worst: f64 = 0.0;
    for k in 0..circuits {
        let n = sizes[k % sizes.len()];
        let c = random_circuit(g, n, rng.gen_range(1..=gates), rng.gen_range(0..=measurements), &mut rng)?;
        let d = dense_branches::<f64>(&c, cap)?;
        let t = tableau_branches(&c)?;
        let tv = total_variation(&distribution(&d), &distribution(&t));
        worst = worst.max(tv);
        r.check(tv < TOL, || format!("circuit {k}: total variation {tv}"));
        for tb in &t {
            let valid = tb.state.check().is_ok();
            let fixes = match d.iter().find(|b| b.record == tb.record) {
                Some(db) => stabilizer_fixes(&tb.state, &db.state)?,
                None => false,
            };
            r.check(valid && fixes, || format!("circuit {k}, record {:?}: stabilizers do not fix the dense state", tb.record));
        }
    }
    r.detail("worst_tv", format!("{worst:e}"));
    Ok(r)
}

/// Wall time of one seeded tableau run of a random circuit.
pub fn time_tableau_run(g: &Group, n: usize, gates: usize, measurements: usize, seed: u64) -> Result<Duration> {
    let mut rng = rng_for(seed, 9);
    let c = random_circuit(g, n, gates, measurements, &mut rng)?;
    let start = Instant::now();
    let (state, _) = tableau_run(&c, &mut rng)?;
    let took = start.elapsed();
    state.check()?;
    Ok(took)
}

/// The checks applicable to `g` within the options' caps.
pub fn run_suite(g: &Group, opts: &SuiteOptions) -> Result<SuiteReport> {
    let (seed, samples, cap) = (opts.seed, opts.samples, opts.dense_cap);
    let size = g.size();
    let fits = |dim: usize| dim <= cap;
    let mut checks = vec![check_group_core(g, samples, seed)?, check_forms(g, samples, seed)?];
    if size <= 64 {
        checks.push(check_pauli_algebra(g, samples, seed)?);
    }
    if size <= 8 {
        checks.push(check_centralizer(g)?);
    }
    if fits(size) {
        checks.push(check_conjugation(g, samples, cap, seed)?);
    }
    checks.push(check_decompose(g, samples, seed, 1 << 12)?);
    checks.push(check_two_local(g, 2, samples.div_ceil(2), seed)?);
    checks.push(check_two_local(g, 3, samples.div_ceil(2), seed)?);
    if g.orders() == [2] {
        checks.push(check_qubit_classics()?);
    }
    if fits(size.saturating_pow(3)) && size <= 8 {
        checks.push(check_cx_protocol(g, cap)?);
    }
    if fits(size * size) {
        let mut m = check_magic_injection(&magic_table_for(g), cap)?;
        m.detail("table", format!("{:?}", magic_table_for(g).values()));
        checks.push(m);
    }
    if fits(size) {
        for xi in nondegenerate_forms(g, 2, seed) {
            checks.push(check_triple_identity(&xi, cap)?);
        }
        if let Some(xi) = nondegenerate_forms(g, 0, seed).pop() {
            for q in [2i64, 3] {
                let h = Group::cyclic(q)?;
                if fits(size * h.size()) && size * h.size() <= 64 {
                    for u in (1..q).filter(|u| num_integer::Integer::gcd(u, &q) == 1) {
                        checks.push(check_split_fourier(&xi, &h, &HomMatrix::scalar(&h, u), cap)?);
                    }
                }
            }
        }
    }
    let mut sorted = g.orders().to_vec();
    sorted.sort_unstable();
    if sorted == [2, 4] {
        checks.push(cx_insufficiency_certificate(opts.bfs)?);
    }
    if fits(size) {
        checks.push(check_backend_equivalence(g, samples.min(40), 3, 12, 4, cap.min(512), seed)?);
    }
    Ok(SuiteReport {
        format_version: crate::format::FORMAT_VERSION,
        kind: "report",
        group: g.to_string(),
        passed: checks.iter().all(ProtocolReport::success),
        checks,
    })
}
