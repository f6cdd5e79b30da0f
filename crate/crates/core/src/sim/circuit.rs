//! Circuits shared by both backends.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::clifford::Gate;
use crate::error::{Error, Result};
use crate::forms::{is_quadratic_table, PhaseTable, QuadraticForm};
use crate::group::Group;
use crate::pauli::{check_slots, PauliOperator, PauliVector};
use crate::phase::Phase;
use crate::symplectic::{random_automorphism, random_gate};

/// Outcomes per register, one exponent per measured observable.
pub type Record = BTreeMap<String, Vec<i64>>;

/// One-slot initial states.
#[derive(Clone, Debug, PartialEq)]
pub enum Preparation {
    Zero,
    /// `|G|^{-1/2} Σ_g ξ(g) |g⟩` for an arbitrary phase table.
    Magic(PhaseTable),
}

/// Classically controlled corrections, each acting on one slot.
#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    /// `Z_χ` from the register `[χ]`.
    CxFixControl,
    /// `X_{-q}` from `[q]`.
    CxFixAncilla,
    /// `X_{p-q}` from `[p, q]`.
    CxFixTarget,
    /// `S` with table `g ↦ −b_ξ(k, g)` from `[k]`.
    MagicFix(PhaseTable),
}

impl Builtin {
    pub fn name(&self) -> &'static str {
        match self {
            Builtin::CxFixControl => "cx-fix-control",
            Builtin::CxFixAncilla => "cx-fix-ancilla",
            Builtin::CxFixTarget => "cx-fix-target",
            Builtin::MagicFix(_) => "magic-fix",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Builtin::CxFixTarget => 2,
            _ => 1,
        }
    }

    /// The correction gate on one slot given register values.
    pub fn resolve(&self, base: &Group, args: &[&[i64]]) -> Result<Gate> {
        if args.len() != self.arity() {
            return Err(Error::Circuit(format!("{} takes {} registers", self.name(), self.arity())));
        }
        for a in args {
            if a.len() != base.rank() {
                return Err(Error::Circuit(format!(
                    "{} needs registers with {} entries, got {}",
                    self.name(),
                    base.rank(),
                    a.len()
                )));
            }
        }
        let zero = vec![0i64; base.rank()];
        let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
        Ok(match self {
            Builtin::CxFixControl => Gate::Pauli(PauliOperator::from_parts(base, Phase::ZERO, &zero, args[0])?),
            Builtin::CxFixAncilla => Gate::Pauli(PauliOperator::from_parts(base, Phase::ZERO, &neg(args[0]), &zero)?),
            Builtin::CxFixTarget => {
                let x: Vec<i64> = args[0].iter().zip(args[1]).map(|(p, q)| p - q).collect();
                Gate::Pauli(PauliOperator::from_parts(base, Phase::ZERO, &x, &zero)?)
            }
            Builtin::MagicFix(table) => {
                base.ensure_same(table.group())?;
                let k = base.element(args[0])?;
                Gate::Quadratic(magic_correction(table, k.residues())?)
            }
        })
    }
}

/// The form `g ↦ −b_ξ(k, g) + ξ(0)`; the constant only shifts the global phase.
pub fn magic_correction(table: &PhaseTable, k: &[i64]) -> Result<QuadraticForm> {
    let diff = table.difference(k).neg();
    let at0 = diff.get(&vec![0; k.len()]);
    let shifted = PhaseTable::new(table.group(), diff.values().iter().map(|&v| v - at0).collect())?;
    if !is_quadratic_table(&shifted)? {
        return Err(Error::PreconditionFailed { k: k.to_vec() });
    }
    QuadraticForm::from_table(&shifted)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Prepare {
        slot: usize,
        state: Preparation,
    },
    Gate {
        gate: Gate,
        slots: Vec<usize>,
    },
    /// Observables are over `base^{slots.len()}`, measured in order.
    Measure {
        register: String,
        slots: Vec<usize>,
        observables: Vec<PauliVector>,
    },
    Controlled {
        builtin: Builtin,
        registers: Vec<String>,
        slots: Vec<usize>,
    },
}

/// A circuit on `n` copies of `base`, every slot starting in `|0⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    base: Group,
    n: usize,
    ops: Vec<Op>,
}

impl Circuit {
    pub fn new(base: &Group, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Circuit("a circuit needs at least one qudit".into()));
        }
        Ok(Circuit {
            base: base.clone(),
            n,
            ops: Vec::new(),
        })
    }

    /// Validates a full operation list.
    pub fn from_ops(base: &Group, n: usize, ops: Vec<Op>) -> Result<Self> {
        let mut c = Circuit::new(base, n)?;
        for op in ops {
            c.push(op)?;
        }
        Ok(c)
    }

    pub fn base(&self) -> &Group {
        &self.base
    }

    pub fn qudits(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    fn touched(&self) -> BTreeSet<usize> {
        self.ops
            .iter()
            .flat_map(|op| match op {
                Op::Prepare { slot, .. } => vec![*slot],
                Op::Gate { slots, .. } | Op::Measure { slots, .. } | Op::Controlled { slots, .. } => slots.clone(),
            })
            .collect()
    }

    fn written(&self) -> BTreeSet<&str> {
        self.ops
            .iter()
            .filter_map(|op| match op {
                Op::Measure { register, .. } => Some(register.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn push(&mut self, op: Op) -> Result<()> {
        match &op {
            Op::Prepare { slot, state } => {
                check_slots(&[*slot], self.n)?;
                if self.touched().contains(slot) {
                    return Err(Error::Circuit(format!("slot {slot} is prepared after use")));
                }
                if let Preparation::Magic(t) = state {
                    self.base.ensure_same(t.group())?;
                }
            }
            Op::Gate { gate, slots } => {
                check_slots(slots, self.n)?;
                gate.check(&self.base.power(slots.len()))?;
            }
            Op::Measure {
                register,
                slots,
                observables,
            } => {
                check_slots(slots, self.n)?;
                if self.written().contains(register.as_str()) {
                    return Err(Error::Circuit(format!("register {register} written twice")));
                }
                let local = self.base.power(slots.len());
                for o in observables {
                    local.ensure_same(o.group())?;
                }
            }
            Op::Controlled {
                builtin,
                registers,
                slots,
            } => {
                check_slots(slots, self.n)?;
                if slots.len() != 1 || registers.len() != builtin.arity() {
                    return Err(Error::Circuit(format!(
                        "{} acts on one slot with {} registers",
                        builtin.name(),
                        builtin.arity()
                    )));
                }
                let written = self.written();
                if let Some(r) = registers.iter().find(|r| !written.contains(r.as_str())) {
                    return Err(Error::Circuit(format!("register {r} read before it is written")));
                }
            }
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn gate(&mut self, gate: Gate, slots: &[usize]) -> Result<&mut Self> {
        self.push(Op::Gate {
            gate,
            slots: slots.to_vec(),
        })?;
        Ok(self)
    }

    pub fn prepare(&mut self, slot: usize, state: Preparation) -> Result<&mut Self> {
        self.push(Op::Prepare { slot, state })?;
        Ok(self)
    }

    pub fn measure(&mut self, register: &str, slots: &[usize], observables: Vec<PauliVector>) -> Result<&mut Self> {
        self.push(Op::Measure {
            register: register.into(),
            slots: slots.to_vec(),
            observables,
        })?;
        Ok(self)
    }

    /// `Z_{e_i}` for every factor of one slot.
    pub fn measure_z(&mut self, register: &str, slot: usize) -> Result<&mut Self> {
        let obs = factor_observables(&self.base, 1, false);
        self.measure(register, &[slot], obs)
    }

    /// `Z_{e_i} ⊗ Z_{e_i}` for every factor.
    pub fn measure_zz(&mut self, register: &str, a: usize, b: usize) -> Result<&mut Self> {
        let obs = factor_observables(&self.base, 2, false);
        self.measure(register, &[a, b], obs)
    }

    /// `X_{e_i} ⊗ X_{e_i}` for every factor.
    pub fn measure_xx(&mut self, register: &str, a: usize, b: usize) -> Result<&mut Self> {
        let obs = factor_observables(&self.base, 2, true);
        self.measure(register, &[a, b], obs)
    }

    pub fn controlled(&mut self, builtin: Builtin, registers: &[&str], slot: usize) -> Result<&mut Self> {
        self.push(Op::Controlled {
            builtin,
            registers: registers.iter().map(|r| r.to_string()).collect(),
            slots: vec![slot],
        })?;
        Ok(self)
    }

    /// True when every preparation is `|0⟩`.
    pub fn is_stabilizer(&self) -> bool {
        !self.ops.iter().any(|op| {
            matches!(
                op,
                Op::Prepare {
                    state: Preparation::Magic(_),
                    ..
                }
            )
        })
    }

    pub fn measurement_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, Op::Measure { .. })).count()
    }
}

/// Per-factor `X`- or `Z`-type observables repeated on `k` slots.
fn factor_observables(base: &Group, k: usize, x_type: bool) -> Vec<PauliVector> {
    let d = base.rank();
    let local = base.power(k);
    (0..d)
        .map(|i| {
            let mut v = vec![0i64; d * k];
            for s in 0..k {
                v[s * d + i] = 1;
            }
            let zero = vec![0i64; d * k];
            if x_type {
                PauliVector::new(&local, &v, &zero)
            } else {
                PauliVector::new(&local, &zero, &v)
            }
            .expect("unit residues")
        })
        .collect()
}

/// Resolves a classically controlled op against a record.
pub(crate) fn resolve_controlled(base: &Group, builtin: &Builtin, registers: &[String], record: &Record) -> Result<Gate> {
    let args = registers
        .iter()
        .map(|r| {
            record
                .get(r)
                .map(|v| v.as_slice())
                .ok_or_else(|| Error::Circuit(format!("register {r} has no outcome")))
        })
        .collect::<Result<Vec<_>>>()?;
    builtin.resolve(base, &args)
}

/// A random Clifford circuit with interleaved Pauli measurements.
///
/// Gates act on one slot (any generator, including Paulis) or two slots
/// (`Cx` or a random automorphism of `base²`). Measurements pick a random
/// nontrivial Pauli vector on one or two slots.
pub fn random_circuit<R: Rng + ?Sized>(base: &Group, n: usize, gates: usize, measurements: usize, rng: &mut R) -> Result<Circuit> {
    let mut c = Circuit::new(base, n)?;
    let total = gates + measurements;
    let mut meas_at: BTreeSet<usize> = BTreeSet::new();
    while meas_at.len() < measurements.min(total) {
        meas_at.insert(rng.gen_range(0..total));
    }
    let mut reg = 0;
    for step in 0..total {
        let two = n >= 2 && rng.gen_bool(0.4);
        let slots = if two {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            vec![a, b]
        } else {
            vec![rng.gen_range(0..n)]
        };
        if meas_at.contains(&step) {
            let local = base.power(slots.len());
            let obs = loop {
                let r: Vec<i64> = local.product(&local).orders().iter().map(|&q| rng.gen_range(0..q)).collect();
                let v = PauliVector::from_residues(&local, &r)?;
                if !v.is_identity() {
                    break v;
                }
            };
            c.measure(&format!("m{reg}"), &slots, vec![obs])?;
            reg += 1;
        } else if two {
            let gate = if rng.gen_bool(0.5) {
                Gate::Cx
            } else {
                Gate::Automorphism(random_automorphism(&base.power(2), rng))
            };
            c.gate(gate, &slots)?;
        } else {
            c.gate(random_gate(base, true, rng), &slots)?;
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registers_must_exist() {
        let g = Group::new(&[2]).unwrap();
        let mut c = Circuit::new(&g, 2).unwrap();
        assert!(c.controlled(Builtin::CxFixAncilla, &["q"], 0).is_err());
        c.measure_z("q", 1).unwrap();
        assert!(c.controlled(Builtin::CxFixAncilla, &["q"], 0).is_ok());
        assert!(c.measure_z("q", 0).is_err());
    }

    #[test]
    fn preparation_only_on_fresh_slots() {
        let g = Group::new(&[3]).unwrap();
        let mut c = Circuit::new(&g, 2).unwrap();
        c.prepare(1, Preparation::Zero).unwrap();
        c.gate(Gate::Cx, &[0, 1]).unwrap();
        assert!(c.prepare(1, Preparation::Zero).is_err());
    }

    #[test]
    fn t_gate_corrections_are_quadratic() {
        let g = Group::new(&[2]).unwrap();
        let t = PhaseTable::new(&g, vec![Phase::ZERO, Phase::new(1, 8)]).unwrap();
        for k in 0..2 {
            magic_correction(&t, &[k]).unwrap();
        }
    }
}
