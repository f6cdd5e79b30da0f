use std::fmt;

use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::group::Group;
use crate::hom::HomMatrix;
use crate::pauli::{PauliOperator, PauliVector};
use crate::phase::Phase;

use super::CliffordTableau;

/// A generator gate acting on a whole group (one or more qudits).
#[derive(Clone, PartialEq, Eq)]
pub enum Gate {
    /// `A_τ |g⟩ = |τ(g)⟩`.
    Automorphism(HomMatrix),
    /// `S_ξ |g⟩ = ξ(g) |g⟩`.
    Quadratic(QuadraticForm),
    /// `F_i |g⟩ = |G|^{-1/2} Σ_χ conj(χ(g)) |i(χ)⟩`, with `i: Ĝ → G` as a residue matrix.
    Fourier(HomMatrix),
    FourierDagger(HomMatrix),
    Pauli(PauliOperator),
    /// `(g, h) ↦ (g, g + h)` on two copies of a group.
    Cx,
}

/// The controlled-addition automorphism of `base × base`.
pub fn cx_automorphism(base: &Group) -> HomMatrix {
    let d = base.rank();
    let g2 = base.power(2);
    let entries = (0..2 * d)
        .map(|i| (0..2 * d).map(|j| i64::from(i == j || (i >= d && j == i - d))).collect())
        .collect();
    HomMatrix::new(&g2, &g2, entries).expect("cx is a homomorphism")
}

fn split_half(on: &Group) -> Result<Group> {
    let d = on.rank();
    if !d.is_multiple_of(2) {
        return Err(Error::Circuit(format!("cx needs two equal halves, got {on}")));
    }
    let base = Group::new(&on.orders()[..d / 2])?;
    if base.power(2) != *on {
        return Err(Error::Circuit(format!("cx needs two equal halves, got {on}")));
    }
    Ok(base)
}

fn require_auto(m: &HomMatrix, on: &Group, what: &str) -> Result<()> {
    on.ensure_same(m.source())?;
    on.ensure_same(m.target())?;
    if !m.is_automorphism() {
        return Err(m.invert().err().unwrap_or_else(|| Error::InvalidHom(format!("{what} is not invertible"))));
    }
    Ok(())
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::Automorphism(_) => "automorphism",
            Gate::Quadratic(_) => "quadratic",
            Gate::Fourier(_) => "fourier",
            Gate::FourierDagger(_) => "fourier_dagger",
            Gate::Pauli(_) => "pauli",
            Gate::Cx => "cx",
        }
    }

    /// Checks that the gate's data lives on `on`.
    pub fn check(&self, on: &Group) -> Result<()> {
        match self {
            Gate::Automorphism(t) => require_auto(t, on, "automorphism"),
            Gate::Quadratic(xi) => on.ensure_same(xi.group()),
            Gate::Fourier(i) | Gate::FourierDagger(i) => require_auto(i, on, "fourier isomorphism"),
            Gate::Pauli(p) => on.ensure_same(p.group()),
            Gate::Cx => split_half(on).map(|_| ()),
        }
    }

    /// Replaces `Cx` by its automorphism on `on`.
    pub fn resolve(&self, on: &Group) -> Result<Gate> {
        match self {
            Gate::Cx => Ok(Gate::Automorphism(cx_automorphism(&split_half(on)?))),
            g => Ok(g.clone()),
        }
    }

    pub fn tableau(&self, on: &Group) -> Result<CliffordTableau> {
        self.check(on)?;
        let d = on.rank();
        let vec_op = |x: Vec<i64>, z: Vec<i64>, ph: Phase| PauliOperator::from_vector(ph, PauliVector::from_reduced(on, x, z));
        let zero = || vec![0i64; d];
        let t = match self {
            Gate::Automorphism(tau) => {
                let dual_inv = tau.invert()?.dual();
                let xs = (0..d).map(|j| vec_op(tau.column(j).residues, zero(), Phase::ZERO)).collect();
                let zs = (0..d).map(|j| vec_op(zero(), dual_inv.column(j).residues, Phase::ZERO)).collect();
                CliffordTableau::from_valid(on, xs, zs)
            }
            Gate::Quadratic(xi) => {
                let b = xi.polarize().induced();
                let xs = (0..d)
                    .map(|j| {
                        let e = on.generator(j);
                        vec_op(e.residues.clone(), b.column(j).residues, xi.eval_residues(&e.residues))
                    })
                    .collect();
                let zs = (0..d).map(|j| vec_op(zero(), on.generator(j).residues, Phase::ZERO)).collect();
                CliffordTableau::from_valid(on, xs, zs)
            }
            Gate::Fourier(i) => fourier_tableau(i, on)?,
            Gate::FourierDagger(i) => fourier_tableau(i, on)?.inverse(),
            Gate::Pauli(p) => CliffordTableau::pauli(p),
            Gate::Cx => return self.resolve(on)?.tableau(on),
        };
        Ok(t)
    }

    /// Gates whose product is the exact inverse unitary.
    pub fn inverse(&self, on: &Group) -> Result<Vec<Gate>> {
        self.check(on)?;
        Ok(match self {
            Gate::Automorphism(t) => vec![Gate::Automorphism(t.invert()?)],
            Gate::Quadratic(xi) => vec![Gate::Quadratic(xi.neg())],
            Gate::Fourier(i) => vec![Gate::FourierDagger(i.clone())],
            Gate::FourierDagger(i) => vec![Gate::Fourier(i.clone())],
            Gate::Pauli(p) => vec![Gate::Pauli(p.inverse())],
            Gate::Cx => vec![Gate::Automorphism(cx_automorphism(&split_half(on)?).invert()?)],
        })
    }

    /// Inverse written with `A`, `S`, `F` and Pauli gates only
    /// (`F_i^{-1} = F_i A_ρ^{-1}` where `F_i² = A_ρ`).
    pub fn inverse_generators(&self, on: &Group) -> Result<Vec<Gate>> {
        match self {
            Gate::Fourier(i) => Ok(vec![
                Gate::Automorphism(fourier_square(i)?.invert()?),
                Gate::Fourier(i.clone()),
            ]),
            Gate::FourierDagger(i) => Ok(vec![Gate::Fourier(i.clone())]),
            g => g.inverse(on),
        }
    }
}

/// The automorphism `ρ = −i ∘ dual(i^{-1})` with `F_i² = A_ρ`.
pub fn fourier_square(i: &HomMatrix) -> Result<HomMatrix> {
    Ok(i.compose(&i.invert()?.dual())?.neg())
}

fn fourier_tableau(i: &HomMatrix, on: &Group) -> Result<CliffordTableau> {
    let d = on.rank();
    let j = i.invert()?.dual().neg();
    let xs = (0..d)
        .map(|k| PauliOperator::from_vector(Phase::ZERO, PauliVector::from_reduced(on, vec![0; d], j.column(k).residues)))
        .collect();
    let zs = (0..d)
        .map(|k| PauliOperator::from_vector(Phase::ZERO, PauliVector::from_reduced(on, i.column(k).residues, vec![0; d])))
        .collect();
    Ok(CliffordTableau::from_valid(on, xs, zs))
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Automorphism(t) => write!(f, "A{:?}", t.entries()),
            Gate::Quadratic(xi) => write!(f, "S{xi:?}"),
            Gate::Fourier(i) => write!(f, "F{:?}", i.entries()),
            Gate::FourierDagger(i) => write!(f, "F†{:?}", i.entries()),
            Gate::Pauli(p) => write!(f, "P{p:?}"),
            Gate::Cx => write!(f, "CX"),
        }
    }
}

/// Gates on a common group, applied first to last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GateSequence {
    group: Group,
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(group: &Group, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.check(group)?;
        }
        Ok(GateSequence {
            group: group.clone(),
            gates,
        })
    }

    pub fn empty(group: &Group) -> Self {
        GateSequence {
            group: group.clone(),
            gates: Vec::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check(&self.group)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &GateSequence) -> Result<()> {
        self.group.ensure_same(&other.group)?;
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    pub fn tableau(&self) -> Result<CliffordTableau> {
        let mut t = CliffordTableau::identity(&self.group);
        for g in &self.gates {
            t = g.tableau(&self.group)?.compose(&t)?;
        }
        Ok(t)
    }

    pub fn inverse(&self) -> Result<GateSequence> {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in self.gates.iter().rev() {
            gates.extend(g.inverse(&self.group)?);
        }
        Ok(GateSequence {
            group: self.group.clone(),
            gates,
        })
    }

    /// Number of gates of each kind, keyed by [`Gate::name`].
    pub fn counts(&self) -> std::collections::BTreeMap<&'static str, usize> {
        let mut m = std::collections::BTreeMap::new();
        for g in &self.gates {
            *m.entry(g.name()).or_insert(0) += 1;
        }
        m
    }
}
