use crate::clifford::Gate;
use crate::error::Result;
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::sim::{branches, Builtin, Circuit, DenseState};

use super::{PhaseLedger, ProtocolReport};

/// CX from an ancilla, two joint measurements and Pauli corrections.
///
/// Slots: 0 control, 1 ancilla, 2 target. Registers `p` (ZZ on 0,1),
/// `chi` (XX on 1,2), `q` (Z on 1), one exponent per factor.
pub fn build_cx_protocol(base: &Group) -> Result<Circuit> {
    let mut c = Circuit::new(base, 3)?;
    c.gate(Gate::Fourier(HomMatrix::identity(base)), &[1])?
        .measure_zz("p", 0, 1)?
        .measure_xx("chi", 1, 2)?
        .measure_z("q", 1)?
        .controlled(Builtin::CxFixControl, &["chi"], 0)?
        .controlled(Builtin::CxFixAncilla, &["q"], 1)?
        .controlled(Builtin::CxFixTarget, &["p", "q"], 2)?;
    Ok(c)
}

/// Every basis input `|g, 0, h⟩` and every branch must end in `|g, 0, g+h⟩`
/// up to a phase that depends only on the record.
pub fn check_cx_protocol(base: &Group, cap: usize) -> Result<ProtocolReport> {
    let c = build_cx_protocol(base)?;
    let mut report = ProtocolReport::new("cx", base);
    let mut ledger = PhaseLedger::default();
    let q = base.orders();
    let zero = vec![0i64; base.rank()];
    for gi in 0..base.size() {
        let g = base.residues_of(gi);
        for hi in 0..base.size() {
            let h = base.residues_of(hi);
            let gh: Vec<i64> = g.iter().zip(&h).zip(q).map(|((a, b), m)| (a + b) % m).collect();
            let input = [g.clone(), zero.clone(), h].concat();
            let expect = DenseState::<f64>::basis(base, 3, &[g.clone(), zero.clone(), gh].concat(), cap)?;
            let all = branches(&c, DenseState::<f64>::basis(base, 3, &input, cap)?)?;
            let total: f64 = all.iter().map(|b| b.probability).sum();
            report.check((total - 1.0).abs() < 1e-9, || format!("input {input:?}: probabilities sum to {total}"));
            for b in &all {
                let z = expect.inner(&b.state)?;
                let ok = z.norm() >= 1.0 - 1e-9;
                report.check(ok, || format!("input {input:?}, record {:?}: overlap {}", b.record, z.norm()));
                if ok {
                    report.note_phase(z);
                    let same = ledger.consistent(&b.record, z);
                    report.check(same, || format!("record {:?}: phase depends on the input", b.record));
                }
            }
        }
    }
    report.detail("inputs", base.size() * base.size());
    Ok(report)
}
