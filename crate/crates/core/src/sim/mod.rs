//! Two backends over one circuit model: a stabilizer tableau and a dense
//! state-vector oracle.

mod circuit;
mod dense;
mod scalar;
mod tableau;

pub use circuit::{magic_correction, random_circuit, Builtin, Circuit, Op, Preparation, Record};
pub use dense::{
    dense_gate, gate_matrix, pauli_matrix, states_equal_up_to_phase, DenseMatrix, DenseState, DEFAULT_DENSE_CAP,
};
pub use scalar::{cis, Real};
pub use tableau::StabilizerState;

use std::collections::BTreeMap;

use num_complex::Complex;
use rand::Rng;

use crate::clifford::Gate;
use crate::error::{Error, Result};
use crate::forms::PhaseTable;
use crate::group::Group;
use crate::pauli::{PauliOperator, PauliVector};

use circuit::resolve_controlled;

/// `(P̂, m)` with `P̂ = ω₀·P_v` scaled so that `P̂^m = I`, `m` the order of `v`.
pub fn normalized_observable(v: &PauliVector) -> (PauliOperator, i64) {
    let m = v.order();
    let p = PauliOperator::from_vector(crate::phase::Phase::ZERO, v.clone());
    let lambda = p.pow(m).phase();
    (p.with_phase(-lambda.div_int(m)), m)
}

/// Operations a backend must provide to run circuits.
pub trait Engine: Clone + Sized {
    fn apply_gate(&mut self, gate: &Gate, slots: &[usize]) -> Result<()>;
    fn prepare_magic(&mut self, slot: usize, table: &PhaseTable) -> Result<()>;
    /// All outcomes `k` of measuring `P̂` (with `P̂^m = I`) and their probabilities.
    fn outcomes(&self, observable: &PauliOperator, m: i64) -> Result<Vec<(i64, f64, Self)>>;
}

/// One measurement history with its probability and final state.
#[derive(Clone, Debug)]
pub struct Branch<S> {
    pub record: Record,
    pub probability: f64,
    pub state: S,
}

fn full_observable(n: usize, slots: &[usize], v: &PauliVector) -> Result<(PauliOperator, i64)> {
    let (local, m) = normalized_observable(v);
    Ok((local.embed_slots(slots, n)?, m))
}

fn step<E: Engine>(
    base: &Group,
    n: usize,
    op: &Op,
    state: &mut E,
    record: &mut Record,
) -> Result<Option<(String, Vec<(PauliOperator, i64)>)>> {
    match op {
        Op::Prepare {
            state: Preparation::Zero, ..
        } => {}
        Op::Prepare {
            slot,
            state: Preparation::Magic(t),
        } => state.prepare_magic(*slot, t)?,
        Op::Gate { gate, slots } => state.apply_gate(gate, slots)?,
        Op::Controlled {
            builtin,
            registers,
            slots,
        } => {
            let g = resolve_controlled(base, builtin, registers, record)?;
            state.apply_gate(&g, slots)?;
        }
        Op::Measure {
            register,
            slots,
            observables,
        } => {
            let obs = observables
                .iter()
                .map(|v| full_observable(n, slots, v))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some((register.clone(), obs)));
        }
    }
    Ok(None)
}

/// Every measurement branch with its probability.
pub fn branches<E: Engine>(circuit: &Circuit, initial: E) -> Result<Vec<Branch<E>>> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Branch {
        record: Record::new(),
        probability: 1.0,
        state: initial,
    })];
    let (base, n) = (circuit.base(), circuit.qudits());
    while let Some((mut at, mut b)) = stack.pop() {
        let mut pending = None;
        while at < circuit.ops().len() {
            let op = &circuit.ops()[at];
            at += 1;
            if let Some(m) = step(base, n, op, &mut b.state, &mut b.record)? {
                pending = Some(m);
                break;
            }
        }
        match pending {
            None => out.push(b),
            Some((reg, obs)) => {
                // Expand the observables of one register in sequence.
                let mut partial = vec![(Vec::new(), b.probability, b.state)];
                for (p, m) in &obs {
                    let mut next = Vec::new();
                    for (ks, prob, st) in partial {
                        for (k, pk, s) in st.outcomes(p, *m)? {
                            let mut ks2: Vec<i64> = ks.clone();
                            ks2.push(k);
                            next.push((ks2, prob * pk, s));
                        }
                    }
                    partial = next;
                }
                for (ks, prob, st) in partial.into_iter().rev() {
                    let mut record = b.record.clone();
                    record.insert(reg.clone(), ks);
                    stack.push((at, Branch {
                        record,
                        probability: prob,
                        state: st,
                    }));
                }
            }
        }
    }
    out.sort_by(|a, b| a.record.cmp(&b.record));
    Ok(out)
}

/// Samples one branch.
pub fn run<E: Engine, R: Rng + ?Sized>(circuit: &Circuit, initial: E, rng: &mut R) -> Result<(E, Record)> {
    let (base, n) = (circuit.base(), circuit.qudits());
    let mut state = initial;
    let mut record = Record::new();
    for op in circuit.ops() {
        if let Some((reg, obs)) = step(base, n, op, &mut state, &mut record)? {
            let mut ks = Vec::new();
            for (p, m) in &obs {
                let outs = state.outcomes(p, *m)?;
                let total: f64 = outs.iter().map(|o| o.1).sum();
                let mut u = rng.gen::<f64>() * total;
                let mut chosen = None;
                for o in outs.iter() {
                    if u < o.1 {
                        chosen = Some(o);
                        break;
                    }
                    u -= o.1;
                }
                let (k, _, s) = chosen.or(outs.last()).ok_or_else(|| Error::Circuit("measurement has no outcome".into()))?;
                ks.push(*k);
                state = s.clone();
            }
            record.insert(reg, ks);
        }
    }
    Ok((state, record))
}

/// Outcome distribution over complete records.
pub fn distribution<S>(branches: &[Branch<S>]) -> BTreeMap<Record, f64> {
    let mut d = BTreeMap::new();
    for b in branches {
        *d.entry(b.record.clone()).or_insert(0.0) += b.probability;
    }
    d
}

/// Total variation distance between two distributions.
pub fn total_variation(a: &BTreeMap<Record, f64>, b: &BTreeMap<Record, f64>) -> f64 {
    let mut keys: Vec<&Record> = a.keys().collect();
    keys.extend(b.keys());
    keys.sort();
    keys.dedup();
    keys.iter()
        .map(|k| (a.get(*k).unwrap_or(&0.0) - b.get(*k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
        / 2.0
}

impl<T: Real> Engine for DenseState<T> {
    fn apply_gate(&mut self, gate: &Gate, slots: &[usize]) -> Result<()> {
        DenseState::apply_gate(self, gate, slots)
    }

    fn prepare_magic(&mut self, slot: usize, table: &PhaseTable) -> Result<()> {
        let norm = T::lit(1.0 / (table.group().size() as f64).sqrt());
        let v: Vec<Complex<T>> = table.values().iter().map(|&ph| cis::<T>(ph) * norm).collect();
        self.prepare_slot(slot, &v)
    }

    fn outcomes(&self, observable: &PauliOperator, m: i64) -> Result<Vec<(i64, f64, Self)>> {
        Ok(self
            .eigen_projections(observable, m)?
            .into_iter()
            .map(|(k, p, s)| (k, p.to_f64().unwrap_or(f64::NAN), s))
            .collect())
    }
}

impl Engine for StabilizerState {
    fn apply_gate(&mut self, gate: &Gate, slots: &[usize]) -> Result<()> {
        StabilizerState::apply_gate(self, gate, slots)
    }

    fn prepare_magic(&mut self, _slot: usize, _table: &PhaseTable) -> Result<()> {
        Err(Error::NonStabilizer)
    }

    fn outcomes(&self, observable: &PauliOperator, m: i64) -> Result<Vec<(i64, f64, Self)>> {
        let (ks, next) = self.measure_all(observable, m)?;
        let p = 1.0 / ks.len() as f64;
        Ok(ks.into_iter().zip(next).map(|(k, s)| (k, p, s)).collect())
    }
}

/// True when every stabilizer generator fixes the dense state.
pub fn stabilizer_fixes<T: Real>(s: &StabilizerState, d: &DenseState<T>) -> Result<bool> {
    for g in s.generators() {
        let mut moved = d.clone();
        moved.apply_pauli(g)?;
        if (d.inner(&moved)? - Complex::new(T::one(), T::zero())).norm() > T::default_tolerance() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unitary of a measurement-free circuit.
pub fn dense_unitary<T: Real>(circuit: &Circuit, cap: usize) -> Result<DenseMatrix<T>> {
    let (base, n) = (circuit.base(), circuit.qudits());
    let dim = dense::checked_dim(base, n, cap)?;
    let mut out = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let mut s = DenseState::<T>::basis_index(base, n, col, cap)?;
        for op in circuit.ops() {
            match op {
                Op::Gate { gate, slots } => s.apply_gate(gate, slots)?,
                Op::Prepare {
                    state: Preparation::Zero, ..
                } => {}
                _ => return Err(Error::Circuit("only gates have a unitary".into())),
            }
        }
        for (row, v) in s.amplitudes().iter().enumerate() {
            out.set(row, col, *v);
        }
    }
    Ok(out)
}

/// All branches on the dense backend from `|0…0⟩`.
pub fn dense_branches<T: Real>(circuit: &Circuit, cap: usize) -> Result<Vec<Branch<DenseState<T>>>> {
    branches(circuit, DenseState::<T>::zero(circuit.base(), circuit.qudits(), cap)?)
}

pub fn dense_run<T: Real, R: Rng + ?Sized>(circuit: &Circuit, cap: usize, rng: &mut R) -> Result<(DenseState<T>, Record)> {
    run(circuit, DenseState::<T>::zero(circuit.base(), circuit.qudits(), cap)?, rng)
}

/// All branches on the tableau backend; probabilities are exact powers of `1/r`.
pub fn tableau_branches(circuit: &Circuit) -> Result<Vec<Branch<StabilizerState>>> {
    if !circuit.is_stabilizer() {
        return Err(Error::NonStabilizer);
    }
    branches(circuit, StabilizerState::zero(circuit.base(), circuit.qudits()))
}

pub fn tableau_run<R: Rng + ?Sized>(circuit: &Circuit, rng: &mut R) -> Result<(StabilizerState, Record)> {
    if !circuit.is_stabilizer() {
        return Err(Error::NonStabilizer);
    }
    run(circuit, StabilizerState::zero(circuit.base(), circuit.qudits()), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::HomMatrix;
    use crate::pauli::PauliVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn no_measurement_single_branch() {
        let g = Group::new(&[3]).unwrap();
        let mut c = Circuit::new(&g, 2).unwrap();
        c.gate(Gate::Fourier(HomMatrix::identity(&g)), &[0]).unwrap();
        let b = dense_branches::<f64>(&c, 64).unwrap();
        assert_eq!(b.len(), 1);
        assert!((b[0].probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plus_state_measures_uniformly() {
        let g = Group::new(&[2]).unwrap();
        let mut c = Circuit::new(&g, 1).unwrap();
        c.gate(Gate::Fourier(HomMatrix::identity(&g)), &[0]).unwrap();
        c.measure_z("z", 0).unwrap();
        let b = dense_branches::<f64>(&c, 64).unwrap();
        assert_eq!(b.len(), 2);
        for br in &b {
            assert!((br.probability - 0.5).abs() < 1e-12);
        }
        let t = tableau_branches(&c).unwrap();
        assert!(total_variation(&distribution(&b), &distribution(&t)) < 1e-12);
    }

    #[test]
    fn normalized_observable_has_unit_power() {
        let g = Group::new(&[2]).unwrap();
        let y = PauliVector::new(&g, &[1], &[1]).unwrap();
        let (p, m) = normalized_observable(&y);
        assert_eq!(m, 2);
        assert!(p.pow(m).phase().is_zero());
    }

    #[test]
    fn seeded_runs_repeat() {
        let g = Group::new(&[4]).unwrap();
        let mut c = Circuit::new(&g, 1).unwrap();
        c.gate(Gate::Fourier(HomMatrix::identity(&g)), &[0]).unwrap();
        c.measure_z("a", 0).unwrap();
        let r1 = tableau_run(&c, &mut ChaCha8Rng::seed_from_u64(3)).unwrap().1;
        let r2 = tableau_run(&c, &mut ChaCha8Rng::seed_from_u64(3)).unwrap().1;
        assert_eq!(r1, r2);
    }
}
