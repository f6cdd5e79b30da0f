use num_complex::Complex;

use crate::clifford::{cx_automorphism, Gate};
use crate::error::Result;
use crate::forms::PhaseTable;
use crate::group::Group;
use crate::phase::Phase;
use crate::sim::{branches, cis, magic_correction, Builtin, Circuit, DenseState, Preparation};

use super::{PhaseLedger, ProtocolReport};

/// `ξ(0) = 0`, `ξ(1) = 1/8` on `Z_2`.
pub fn t_gate_table() -> PhaseTable {
    let g = Group::new(&[2]).expect("valid order");
    PhaseTable::new(&g, vec![Phase::ZERO, Phase::new(1, 8)]).expect("two values")
}

/// `ξ(n) = n³/q²` on `Z_q`, evaluated on the residues `0..q`.
pub fn cubic_phase_table(q: i64) -> Result<PhaseTable> {
    let g = Group::cyclic(q)?;
    Ok(PhaseTable::from_fn(&g, |r| Phase::new(r[0].pow(3), q * q)))
}

/// Injection of `S_ξ` on slot 0 from a magic state on slot 1.
///
/// Fails with `PreconditionFailed` for the first `k` whose correction
/// `−b_ξ(k, ·)` is not a quadratic form.
pub fn build_magic_injection(table: &PhaseTable) -> Result<Circuit> {
    let base = table.group();
    for k in base.elements() {
        magic_correction(table, k.residues())?;
    }
    let cx_dag = cx_automorphism(base).invert()?;
    let mut c = Circuit::new(base, 2)?;
    c.prepare(1, Preparation::Magic(table.clone()))?
        .gate(Gate::Automorphism(cx_dag), &[0, 1])?
        .measure_z("k", 1)?
        .controlled(Builtin::MagicFix(table.clone()), &["k"], 0)?;
    Ok(c)
}

fn inputs(base: &Group) -> Vec<Vec<Complex<f64>>> {
    let n = base.size();
    let mut out: Vec<Vec<Complex<f64>>> = (0..n)
        .map(|i| (0..n).map(|j| Complex::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect();
    let s = 1.0 / (n as f64).sqrt();
    out.push(vec![Complex::new(s, 0.0); n]);
    // A generic superposition with unequal weights and phases.
    let raw: Vec<Complex<f64>> = (0..n)
        .map(|j| Complex::from_polar(1.0 + j as f64, 0.7 * j as f64 + 0.3))
        .collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    out.push(raw.into_iter().map(|z| z / norm).collect());
    out
}

/// For basis and superposed inputs, every branch leaves `S_ξ ψ` on slot 0.
pub fn check_magic_injection(table: &PhaseTable, cap: usize) -> Result<ProtocolReport> {
    let c = build_magic_injection(table)?;
    let base = table.group();
    let n = base.size();
    let mut report = ProtocolReport::new("magic-injection", base);
    let mut ledger = PhaseLedger::default();
    DenseState::<f64>::zero(base, 2, cap)?;
    for psi in inputs(base) {
        let mut amps = vec![Complex::new(0.0, 0.0); n * n];
        for (g, a) in psi.iter().enumerate() {
            amps[g * n] = *a;
        }
        let all = branches(&c, DenseState::from_amplitudes(base, 2, amps)?)?;
        for b in &all {
            let k = base.index_of(&b.record["k"]);
            let mut want = vec![Complex::new(0.0, 0.0); n * n];
            for (g, a) in psi.iter().enumerate() {
                want[g * n + k] = cis::<f64>(table.values()[g]) * a;
            }
            let want = DenseState::from_amplitudes(base, 2, want)?;
            let z = want.inner(&b.state)?;
            let ok = z.norm() >= 1.0 - 1e-9;
            report.check(ok, || format!("record {:?}: overlap {}", b.record, z.norm()));
            if ok {
                report.note_phase(z);
                let same = ledger.consistent(&b.record, z);
                report.check(same, || format!("record {:?}: phase depends on the input", b.record));
            }
        }
    }
    Ok(report)
}
