//! JSON documents for matrices, tableaux, gate sequences, circuits and
//! isomorphisms.
//!
//! Every document carries `format_version`, a `kind` and a group literal.
//! Phases are `"num/den"` strings. Residues are natural (`[0, q_i)`) unless
//! the top-level `convention` is `"embedded"`, in which case factor `i` is
//! written as a multiple of `E/q_i` inside `Z_E`, `E` the group exponent.
//! Quadratic-form coefficients and phase tables are always natural.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::clifford::{CliffordTableau, Gate, GateSequence};
use crate::error::{Error, Result};
use crate::forms::{PhaseTable, QuadraticForm};
use crate::group::Group;
use crate::hom::{HomMatrix, Isomorphism};
use crate::pauli::{PauliOperator, PauliVector};
use crate::phase::Phase;
use crate::sim::{Builtin, Circuit, Op, Preparation};
use crate::symplectic::SymplecticMap;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Natural,
    Embedded,
}

impl Convention {
    fn is_natural(&self) -> bool {
        *self == Convention::Natural
    }

    fn scales(g: &Group) -> (i64, Vec<i64>) {
        let e = g.exponent();
        (e, g.orders().iter().map(|q| e / q).collect())
    }

    /// File residues to natural residues.
    pub fn vector_in(&self, g: &Group, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != g.rank() {
            return Err(Error::Parse(format!("expected {} residues over {g}, got {}", g.rank(), v.len())));
        }
        if self.is_natural() {
            return Ok(v.to_vec());
        }
        let (e, s) = Self::scales(g);
        v.iter()
            .zip(&s)
            .enumerate()
            .map(|(i, (&x, &k))| {
                let x = x.rem_euclid(e);
                if x % k != 0 {
                    return Err(Error::Parse(format!("embedded residue {x} in slot {i} is not a multiple of {k}")));
                }
                Ok(x / k)
            })
            .collect()
    }

    pub fn vector_out(&self, g: &Group, v: &[i64]) -> Vec<i64> {
        if self.is_natural() {
            return v.to_vec();
        }
        let (_, s) = Self::scales(g);
        v.iter().zip(&s).map(|(x, k)| x * k).collect()
    }

    /// File matrix (endomorphism of `g`) to natural entries. Column `j` of an
    /// embedded matrix must send the embedded generator `E/q_j` into the
    /// embedded copy of each target factor.
    pub fn matrix_in(&self, g: &Group, m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let d = g.rank();
        if m.len() != d || m.iter().any(|r| r.len() != d) {
            return Err(Error::Parse(format!("expected a {d}x{d} matrix over {g}")));
        }
        if self.is_natural() {
            return Ok(m.to_vec());
        }
        let (e, s) = Self::scales(g);
        let mut out = vec![vec![0; d]; d];
        for i in 0..d {
            for j in 0..d {
                let v = (m[i][j] * s[j]).rem_euclid(e);
                if v % s[i] != 0 {
                    return Err(Error::Parse(format!(
                        "embedded entry ({i},{j}) = {} leaves the embedded subgroup",
                        m[i][j]
                    )));
                }
                out[i][j] = (v / s[i]).rem_euclid(g.order(i));
            }
        }
        Ok(out)
    }

    pub fn matrix_out(&self, g: &Group, m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        if self.is_natural() {
            return m.to_vec();
        }
        let q = g.orders();
        (0..m.len())
            .map(|i| (0..m.len()).map(|j| (m[i][j] * q[j] / q[i]).rem_euclid(q[j])).collect())
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliDoc {
    pub phase: String,
    pub x: Vec<i64>,
    pub z: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDoc {
    pub x: Vec<i64>,
    pub z: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateDoc {
    Automorphism {
        matrix: Vec<Vec<i64>>,
    },
    Quadratic {
        diag: Vec<i64>,
        #[serde(default)]
        cross: Vec<[i64; 3]>,
        #[serde(default)]
        linear: Vec<i64>,
    },
    Fourier {
        iso: Vec<Vec<i64>>,
    },
    FourierDagger {
        iso: Vec<Vec<i64>>,
    },
    Pauli {
        phase: String,
        x: Vec<i64>,
        z: Vec<i64>,
    },
    Cx,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum OpDoc {
    Prepare {
        slot: usize,
        state: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<String>>,
    },
    Gate {
        slots: Vec<usize>,
        gate: GateDoc,
    },
    Measure {
        register: String,
        slots: Vec<usize>,
        observables: Vec<VectorDoc>,
    },
    Controlled {
        builtin: String,
        registers: Vec<String>,
        slots: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Symplectic {
        matrix: Vec<Vec<i64>>,
    },
    Tableau {
        x_images: Vec<PauliDoc>,
        z_images: Vec<PauliDoc>,
    },
    Sequence {
        gates: Vec<GateDoc>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        counts: BTreeMap<String, usize>,
    },
    Circuit {
        qudits: usize,
        ops: Vec<OpDoc>,
    },
    Isomorphism {
        target: String,
        forward: Vec<Vec<i64>>,
        backward: Vec<Vec<i64>>,
    },
}

/// The on-disk envelope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope {
    pub format_version: u32,
    pub group: String,
    #[serde(default)]
    pub convention: Convention,
    #[serde(flatten)]
    pub body: Body,
}

/// A parsed document.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Symplectic(SymplecticMap),
    Tableau(CliffordTableau),
    Sequence(GateSequence),
    Circuit(Circuit),
    Isomorphism(Isomorphism),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Symplectic(_) => "symplectic",
            Document::Tableau(_) => "tableau",
            Document::Sequence(_) => "sequence",
            Document::Circuit(_) => "circuit",
            Document::Isomorphism(_) => "isomorphism",
        }
    }
}

fn phase(s: &str) -> Result<Phase> {
    s.parse()
}

fn table_in(g: &Group, t: &Option<Vec<String>>) -> Result<PhaseTable> {
    let t = t.as_ref().ok_or_else(|| Error::Parse("a phase table is required".into()))?;
    PhaseTable::new(g, t.iter().map(|s| phase(s)).collect::<Result<_>>()?)
}

fn table_out(t: &PhaseTable) -> Vec<String> {
    t.values().iter().map(Phase::to_string).collect()
}

fn pauli_in(g: &Group, conv: Convention, phase_lit: &str, x: &[i64], z: &[i64]) -> Result<PauliOperator> {
    PauliOperator::from_parts(g, phase(phase_lit)?, &conv.vector_in(g, x)?, &conv.vector_in(g, z)?)
}

fn pauli_out(g: &Group, conv: Convention, p: &PauliOperator) -> PauliDoc {
    PauliDoc {
        phase: p.phase().to_string(),
        x: conv.vector_out(g, p.vector().x()),
        z: conv.vector_out(g, p.vector().z()),
    }
}

fn endo_in(g: &Group, conv: Convention, m: &[Vec<i64>]) -> Result<HomMatrix> {
    HomMatrix::endo(g, conv.matrix_in(g, m)?)
}

pub fn gate_from_doc(doc: &GateDoc, on: &Group, conv: Convention) -> Result<Gate> {
    let gate = match doc {
        GateDoc::Automorphism { matrix } => Gate::Automorphism(endo_in(on, conv, matrix)?),
        GateDoc::Quadratic { diag, cross, linear } => {
            let cross: Vec<(usize, usize, i64)> = cross
                .iter()
                .map(|&[i, j, c]| {
                    if i < 0 || j < 0 {
                        return Err(Error::Parse(format!("negative factor index in cross term ({i},{j},{c})")));
                    }
                    Ok((i as usize, j as usize, c))
                })
                .collect::<Result<_>>()?;
            let linear = if linear.is_empty() { vec![0; on.rank()] } else { linear.clone() };
            Gate::Quadratic(QuadraticForm::new(on, diag, &cross, &linear)?)
        }
        GateDoc::Fourier { iso } => Gate::Fourier(endo_in(on, conv, iso)?),
        GateDoc::FourierDagger { iso } => Gate::FourierDagger(endo_in(on, conv, iso)?),
        GateDoc::Pauli { phase, x, z } => Gate::Pauli(pauli_in(on, conv, phase, x, z)?),
        GateDoc::Cx => Gate::Cx,
    };
    gate.check(on)?;
    Ok(gate)
}

pub fn gate_to_doc(gate: &Gate, on: &Group, conv: Convention) -> GateDoc {
    match gate {
        Gate::Automorphism(m) => GateDoc::Automorphism {
            matrix: conv.matrix_out(on, m.entries()),
        },
        Gate::Quadratic(xi) => GateDoc::Quadratic {
            diag: xi.diag().to_vec(),
            cross: xi.cross_terms().into_iter().map(|(i, j, c)| [i as i64, j as i64, c]).collect(),
            linear: xi.linear().residues().to_vec(),
        },
        Gate::Fourier(i) => GateDoc::Fourier {
            iso: conv.matrix_out(on, i.entries()),
        },
        Gate::FourierDagger(i) => GateDoc::FourierDagger {
            iso: conv.matrix_out(on, i.entries()),
        },
        Gate::Pauli(p) => {
            let d = pauli_out(on, conv, p);
            GateDoc::Pauli {
                phase: d.phase,
                x: d.x,
                z: d.z,
            }
        }
        Gate::Cx => GateDoc::Cx,
    }
}

fn builtin_in(name: &str, base: &Group, table: &Option<Vec<String>>) -> Result<Builtin> {
    Ok(match name {
        "cx-fix-control" => Builtin::CxFixControl,
        "cx-fix-ancilla" => Builtin::CxFixAncilla,
        "cx-fix-target" => Builtin::CxFixTarget,
        "magic-fix" => Builtin::MagicFix(table_in(base, table)?),
        _ => return Err(Error::Parse(format!("unknown built-in correction {name:?}"))),
    })
}

fn op_in(doc: &OpDoc, base: &Group, conv: Convention) -> Result<Op> {
    Ok(match doc {
        OpDoc::Prepare { slot, state, table } => Op::Prepare {
            slot: *slot,
            state: match state.as_str() {
                "zero" => Preparation::Zero,
                "magic" => Preparation::Magic(table_in(base, table)?),
                s => return Err(Error::Parse(format!("unknown preparation {s:?}"))),
            },
        },
        OpDoc::Gate { slots, gate } => Op::Gate {
            gate: gate_from_doc(gate, &base.power(slots.len()), conv)?,
            slots: slots.clone(),
        },
        OpDoc::Measure {
            register,
            slots,
            observables,
        } => {
            let on = base.power(slots.len());
            let observables = observables
                .iter()
                .map(|v| PauliVector::new(&on, &conv.vector_in(&on, &v.x)?, &conv.vector_in(&on, &v.z)?))
                .collect::<Result<_>>()?;
            Op::Measure {
                register: register.clone(),
                slots: slots.clone(),
                observables,
            }
        }
        OpDoc::Controlled {
            builtin,
            registers,
            slots,
            table,
        } => Op::Controlled {
            builtin: builtin_in(builtin, base, table)?,
            registers: registers.clone(),
            slots: slots.clone(),
        },
    })
}

fn op_out(op: &Op, base: &Group, conv: Convention) -> OpDoc {
    match op {
        Op::Prepare { slot, state } => match state {
            Preparation::Zero => OpDoc::Prepare {
                slot: *slot,
                state: "zero".into(),
                table: None,
            },
            Preparation::Magic(t) => OpDoc::Prepare {
                slot: *slot,
                state: "magic".into(),
                table: Some(table_out(t)),
            },
        },
        Op::Gate { gate, slots } => OpDoc::Gate {
            slots: slots.clone(),
            gate: gate_to_doc(gate, &base.power(slots.len()), conv),
        },
        Op::Measure {
            register,
            slots,
            observables,
        } => {
            let on = base.power(slots.len());
            OpDoc::Measure {
                register: register.clone(),
                slots: slots.clone(),
                observables: observables
                    .iter()
                    .map(|v| VectorDoc {
                        x: conv.vector_out(&on, v.x()),
                        z: conv.vector_out(&on, v.z()),
                    })
                    .collect(),
            }
        }
        Op::Controlled {
            builtin,
            registers,
            slots,
        } => OpDoc::Controlled {
            builtin: builtin.name().into(),
            registers: registers.clone(),
            slots: slots.clone(),
            table: match builtin {
                Builtin::MagicFix(t) => Some(table_out(t)),
                _ => None,
            },
        },
    }
}

/// Parses any document kind.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    match value.get("format_version") {
        None => return Err(Error::Parse("missing \"format_version\"".into())),
        Some(v) if v.as_u64() != Some(FORMAT_VERSION as u64) => {
            return Err(Error::Parse(format!("unsupported format_version {v}; expected {FORMAT_VERSION}")))
        }
        _ => {}
    }
    let env: Envelope = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_envelope(&env)
}

pub fn from_envelope(env: &Envelope) -> Result<Document> {
    let g: Group = env.group.parse()?;
    let conv = env.convention;
    Ok(match &env.body {
        Body::Symplectic { matrix } => {
            let dbl = g.product(&g);
            Document::Symplectic(SymplecticMap::from_entries(&g, conv.matrix_in(&dbl, matrix)?)?)
        }
        Body::Tableau { x_images, z_images } => {
            let read = |v: &[PauliDoc]| -> Result<Vec<PauliOperator>> {
                v.iter().map(|p| pauli_in(&g, conv, &p.phase, &p.x, &p.z)).collect()
            };
            Document::Tableau(CliffordTableau::new(&g, read(x_images)?, read(z_images)?)?)
        }
        Body::Sequence { gates, .. } => {
            let gates = gates.iter().map(|d| gate_from_doc(d, &g, conv)).collect::<Result<_>>()?;
            Document::Sequence(GateSequence::new(&g, gates)?)
        }
        Body::Circuit { qudits, ops } => {
            let ops = ops.iter().map(|o| op_in(o, &g, conv)).collect::<Result<_>>()?;
            Document::Circuit(Circuit::from_ops(&g, *qudits, ops)?)
        }
        Body::Isomorphism {
            target,
            forward,
            backward,
        } => {
            if !conv.is_natural() {
                return Err(Error::Parse("isomorphism documents use the natural convention".into()));
            }
            let h: Group = target.parse()?;
            Document::Isomorphism(Isomorphism::new(
                HomMatrix::new(&g, &h, forward.clone())?,
                HomMatrix::new(&h, &g, backward.clone())?,
            )?)
        }
    })
}

pub fn to_envelope(doc: &Document, conv: Convention) -> Envelope {
    let (group, body) = match doc {
        Document::Symplectic(s) => {
            let g = s.group();
            let dbl = g.product(g);
            (
                g.clone(),
                Body::Symplectic {
                    matrix: conv.matrix_out(&dbl, s.matrix().entries()),
                },
            )
        }
        Document::Tableau(t) => {
            let g = t.group();
            let write = |v: &[PauliOperator]| v.iter().map(|p| pauli_out(g, conv, p)).collect();
            (
                g.clone(),
                Body::Tableau {
                    x_images: write(t.x_images()),
                    z_images: write(t.z_images()),
                },
            )
        }
        Document::Sequence(s) => {
            let g = s.group();
            (
                g.clone(),
                Body::Sequence {
                    gates: s.gates().iter().map(|x| gate_to_doc(x, g, conv)).collect(),
                    counts: s.counts().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                },
            )
        }
        Document::Circuit(c) => (
            c.base().clone(),
            Body::Circuit {
                qudits: c.qudits(),
                ops: c.ops().iter().map(|o| op_out(o, c.base(), conv)).collect(),
            },
        ),
        Document::Isomorphism(iso) => (
            iso.forward().source().clone(),
            Body::Isomorphism {
                target: iso.forward().target().to_string(),
                forward: iso.forward().entries().to_vec(),
                backward: iso.backward().entries().to_vec(),
            },
        ),
    };
    let conv = if matches!(doc, Document::Isomorphism(_)) { Convention::Natural } else { conv };
    Envelope {
        format_version: FORMAT_VERSION,
        group: group.to_string(),
        convention: conv,
        body,
    }
}

/// Pretty JSON with a trailing newline.
pub fn write_document(doc: &Document, conv: Convention) -> String {
    let mut s = serde_json::to_string_pretty(&to_envelope(doc, conv)).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::{build_cx_protocol, build_magic_injection, t_gate_table};
    use crate::symplectic::random_clifford;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn roundtrip(doc: Document, conv: Convention) {
        let text = write_document(&doc, conv);
        assert_eq!(parse_document(&text).unwrap(), doc, "{text}");
    }

    #[test]
    fn worked_example_in_embedded_convention() {
        // G × Ĝ for G = Z_4 × Z_2, with the Z_2 slots carried in {0, 2} ⊂ Z_4.
        let g = Group::new(&[4, 2]).unwrap();
        let dbl = g.product(&g);
        let rows = vec![vec![2, 1, 3, 0], vec![2, 0, 2, 0], vec![1, 0, 0, 1], vec![0, 1, 0, 1]];
        let conv = Convention::Embedded;
        let m = HomMatrix::endo(&dbl, conv.matrix_in(&dbl, &rows).unwrap()).unwrap();
        let v = dbl.element(&conv.vector_in(&dbl, &[1, 0, 3, 2]).unwrap()).unwrap();
        let image = m.apply(&v).unwrap();
        assert_eq!(conv.vector_out(&dbl, image.residues()), vec![3, 0, 3, 2]);
        assert_eq!(conv.matrix_out(&dbl, m.entries()), rows);
        // Read naturally, the last slot is reduced mod 2 instead.
        assert_eq!(image.residues()[3], 1);
    }

    #[test]
    fn embedded_rejects_off_lattice_values() {
        let g = Group::new(&[4, 2]).unwrap();
        assert!(Convention::Embedded.vector_in(&g, &[1, 1]).is_err());
    }

    #[test]
    fn documents_roundtrip() {
        let g = Group::new(&[4, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let seq = random_clifford(&g, 12, &mut rng);
        for conv in [Convention::Natural, Convention::Embedded] {
            roundtrip(Document::Sequence(seq.clone()), conv);
            roundtrip(Document::Tableau(seq.tableau().unwrap()), conv);
            roundtrip(Document::Symplectic(seq.tableau().unwrap().symplectic()), conv);
            roundtrip(Document::Circuit(build_cx_protocol(&g).unwrap()), conv);
        }
        roundtrip(Document::Circuit(build_magic_injection(&t_gate_table()).unwrap()), Convention::Natural);
        let (_, iso) = crate::canonical::canonicalize(&Group::new(&[2, 3]).unwrap());
        roundtrip(Document::Isomorphism(iso), Convention::Natural);
    }

    #[test]
    fn version_is_required() {
        let text = r#"{"group":"2","kind":"symplectic","matrix":[[1,0],[0,1]]}"#;
        assert!(matches!(parse_document(text), Err(Error::Parse(_))));
        let text = r#"{"format_version":9,"group":"2","kind":"symplectic","matrix":[[1,0],[0,1]]}"#;
        assert!(matches!(parse_document(text), Err(Error::Parse(_))));
        let text = r#"{"format_version":1,"group":"2","kind":"symplectic","matrix":[[1,0],[0,1]]}"#;
        assert!(matches!(parse_document(text), Ok(Document::Symplectic(_))));
    }

    #[test]
    fn beta_violation_is_not_symplectic() {
        let text = r#"{"format_version":1,"group":"2","kind":"symplectic","matrix":[[1,1],[0,1]]}"#;
        assert!(parse_document(text).is_ok());
        let text = r#"{"format_version":1,"group":"4","kind":"symplectic","matrix":[[1,0],[0,3]]}"#;
        assert!(matches!(parse_document(text), Err(Error::NotSymplectic(_))));
    }
}
