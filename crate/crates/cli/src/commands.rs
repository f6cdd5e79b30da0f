use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use gclifford::format::{parse_document, write_document, Convention, Document};
use gclifford::protocols::{
    build_cx_protocol, build_magic_injection, build_split_fourier, check_cx_protocol, check_magic_injection,
    check_split_fourier, check_triple_identity, cx_insufficiency_certificate, ProtocolReport,
};
use gclifford::sim::{dense_branches, dense_run, distribution, tableau_branches, tableau_run, Record};
use gclifford::suite::{magic_table_for, nondegenerate_forms, run_suite, SuiteOptions};
use gclifford::symplectic::{decompose, decompose_clifford, image_of_sequence};
use gclifford::{hom::HomMatrix, Group};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{Backend, Command, ConventionArg, Io};

/// A failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    Lib { source: gclifford::Error, context: String },
    Input(String),
    Io(PathBuf, std::io::Error),
}

impl Failure {
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Lib { source, .. } => source.kind(),
            Failure::Input(_) => "input",
            Failure::Io(..) => "io",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Lib { source, context } if context.is_empty() => source.to_string(),
            Failure::Lib { source, context } => format!("{context}: {source}"),
            Failure::Input(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            Failure::Lib { source, .. } if source.is_resource_cap() => 3,
            _ => 2,
        }
    }
}

impl From<gclifford::Error> for Failure {
    fn from(source: gclifford::Error) -> Self {
        Failure::Lib {
            source,
            context: String::new(),
        }
    }
}

type Outcome = Result<u8, Failure>;

trait Context<T> {
    fn context(self, what: impl std::fmt::Display) -> Result<T, Failure>;
}

impl<T> Context<T> for gclifford::Result<T> {
    fn context(self, what: impl std::fmt::Display) -> Result<T, Failure> {
        self.map_err(|source| Failure::Lib {
            source,
            context: what.to_string(),
        })
    }
}

fn convention(c: ConventionArg) -> Convention {
    match c {
        ConventionArg::Natural => Convention::Natural,
        ConventionArg::Embedded => Convention::Embedded,
    }
}

fn group_arg(io: &Io) -> Result<Group, Failure> {
    let lit = io.group.as_deref().ok_or_else(|| Failure::Input("--group is required".into()))?;
    lit.parse().context(format!("--group {lit:?}"))
}

fn read_input(io: &Io) -> Result<(PathBuf, Document), Failure> {
    let path = io.input.clone().ok_or_else(|| Failure::Input("--in is required".into()))?;
    let text = fs::read_to_string(&path).map_err(|e| Failure::Io(path.clone(), e))?;
    let doc = parse_document(&text).context(path.display())?;
    if let Some(lit) = &io.group {
        let want: Group = lit.parse().context(format!("--group {lit:?}"))?;
        let found = match &doc {
            Document::Symplectic(s) => s.group().clone(),
            Document::Tableau(t) => t.group().clone(),
            Document::Sequence(s) => s.group().clone(),
            Document::Circuit(c) => c.base().clone(),
            Document::Isomorphism(i) => i.forward().source().clone(),
        };
        if found != want {
            return Err(Failure::Input(format!("{}: file group {found} differs from --group {want}", path.display())));
        }
    }
    Ok((path, doc))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(p.to_path_buf(), e)),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io("<stdout>".into(), e)),
                _ => Ok(()),
            }
        }
    }
}

fn emit_json(out: Option<&Path>, v: &impl serde::Serialize) -> Result<(), Failure> {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    emit(out, &s)
}

pub fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Decompose { io, verify } => cmd_decompose(&io, verify),
        Command::Simulate {
            io,
            backend,
            shots,
            seed,
            branches,
            dense_cap,
        } => cmd_simulate(&io, backend, shots, seed, branches, dense_cap),
        Command::Verify {
            io,
            seed,
            dense_cap,
            bfs,
            bfs_cap,
            samples,
            protocol,
            circuit_out,
        } => {
            let opts = SuiteOptions {
                dense_cap,
                bfs: bfs.then_some(bfs_cap),
                seed,
                samples,
            };
            match protocol {
                Some(p) => cmd_protocol(&io, &p, &opts, circuit_out.as_deref()),
                None => cmd_verify(&io, &opts),
            }
        }
        Command::Counterexample { io, bfs, bfs_cap } => cmd_counterexample(&io, bfs.then_some(bfs_cap)),
        Command::Canonicalize { io } => cmd_canonicalize(&io),
    }
}

fn cmd_decompose(io: &Io, verify: bool) -> Outcome {
    let (path, doc) = read_input(io)?;
    let where_ = path.display();
    let (seq, target) = match &doc {
        Document::Symplectic(s) => (decompose(s).context(&where_)?, doc.clone()),
        Document::Tableau(t) => (decompose_clifford(t).context(&where_)?, doc.clone()),
        other => {
            return Err(Failure::Input(format!(
                "{where_}: expected a symplectic or tableau document, found {}",
                other.kind()
            )))
        }
    };
    emit(io.out.as_deref(), &write_document(&Document::Sequence(seq.clone()), convention(io.convention)))?;
    if verify {
        let ok = match &target {
            Document::Symplectic(s) => image_of_sequence(&seq)? == *s,
            Document::Tableau(t) => seq.tableau()? == *t,
            _ => unreachable!(),
        };
        let counts: Vec<String> = seq.counts().iter().map(|(k, v)| format!("{k}={v}")).collect();
        eprintln!("gates: {} ({})", seq.len(), counts.join(", "));
        eprintln!("verify: {}", if ok { "pass" } else { "FAIL" });
        if !ok {
            return Ok(1);
        }
    }
    Ok(0)
}

fn label(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn record_json(r: &Record) -> Value {
    Value::Object(r.iter().map(|(k, v)| (k.clone(), Value::String(label(v)))).collect())
}

fn cmd_simulate(io: &Io, backend: Backend, shots: usize, seed: Option<u64>, branches: bool, cap: usize) -> Outcome {
    let (path, doc) = read_input(io)?;
    let where_ = path.display();
    let Document::Circuit(c) = doc else {
        return Err(Failure::Input(format!("{where_}: expected a circuit document, found {}", doc.kind())));
    };
    let name = match backend {
        Backend::Tableau => "tableau",
        Backend::Dense => "dense",
    };
    let mut report = json!({
        "format_version": gclifford::format::FORMAT_VERSION,
        "kind": "simulation",
        "group": c.base().to_string(),
        "qudits": c.qudits(),
        "backend": name,
        "shots": shots,
    });
    if branches {
        let dist = match backend {
            Backend::Dense => distribution(&dense_branches::<f64>(&c, cap).context(&where_)?),
            Backend::Tableau => distribution(&tableau_branches(&c).context(&where_)?),
        };
        let table: Vec<Value> = dist
            .iter()
            .map(|(r, p)| json!({ "record": record_json(r), "probability": p }))
            .collect();
        report["branches"] = Value::Array(table);
    }
    if shots > 0 {
        let seed = seed.ok_or_else(|| Failure::Input("--seed is required when --shots > 0".into()))?;
        report["seed"] = json!(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut freq: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for _ in 0..shots {
            let rec = match backend {
                Backend::Dense => dense_run::<f64, _>(&c, cap, &mut rng).context(&where_)?.1,
                Backend::Tableau => tableau_run(&c, &mut rng).context(&where_)?.1,
            };
            for (k, v) in rec {
                *freq.entry(k).or_default().entry(label(&v)).or_default() += 1;
            }
        }
        let freq: BTreeMap<String, BTreeMap<String, f64>> = freq
            .into_iter()
            .map(|(k, m)| (k, m.into_iter().map(|(o, n)| (o, n as f64 / shots as f64)).collect()))
            .collect();
        report["frequencies"] = json!(freq);
    }
    emit_json(io.out.as_deref(), &report)?;
    Ok(0)
}

fn print_check(r: &ProtocolReport) {
    eprintln!(
        "{:<4} {:<20} {:>7}/{:<7} {}",
        if r.success() { "ok" } else { "FAIL" },
        r.protocol,
        r.passed,
        r.branches,
        r.group
    );
    for f in r.failures.iter().take(3) {
        eprintln!("       {f}");
    }
}

fn cmd_verify(io: &Io, opts: &SuiteOptions) -> Outcome {
    let g = group_arg(io)?;
    let start = Instant::now();
    let report = run_suite(&g, opts).context(format!("suite for {g}"))?;
    for c in &report.checks {
        print_check(c);
    }
    eprintln!("suite {} in {:.2?}: {}", g, start.elapsed(), if report.passed { "pass" } else { "FAIL" });
    emit_json(io.out.as_deref(), &report)?;
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_protocol(io: &Io, name: &str, opts: &SuiteOptions, circuit_out: Option<&Path>) -> Outcome {
    let g = group_arg(io)?;
    let cap = opts.dense_cap;
    let conv = convention(io.convention);
    let (report, circuit) = match name {
        "cx" => (check_cx_protocol(&g, cap)?, Some(build_cx_protocol(&g)?)),
        "magic" => {
            let t = magic_table_for(&g);
            (check_magic_injection(&t, cap)?, Some(build_magic_injection(&t)?))
        }
        "triple" => {
            let xi = nondegenerate_forms(&g, 0, opts.seed).remove(0);
            (check_triple_identity(&xi, cap)?, None)
        }
        "split" => {
            let xi = nondegenerate_forms(&g, 0, opts.seed).remove(0);
            let h = Group::new(&[2])?;
            let i_h = HomMatrix::identity(&h);
            (check_split_fourier(&xi, &h, &i_h, cap)?, Some(build_split_fourier(&xi, &h, &i_h)?))
        }
        _ => return Err(Failure::Input(format!("unknown protocol {name:?}; expected cx, magic, triple or split"))),
    };
    print_check(&report);
    if let Some(path) = circuit_out {
        let c = circuit.ok_or_else(|| Failure::Input(format!("protocol {name} has no circuit to write")))?;
        emit(Some(path), &write_document(&Document::Circuit(c), conv))?;
    }
    let mut doc = serde_json::to_value(&report).expect("reports serialize");
    doc["format_version"] = json!(gclifford::format::FORMAT_VERSION);
    doc["kind"] = json!("protocol-report");
    emit_json(io.out.as_deref(), &doc)?;
    Ok(if report.success() { 0 } else { 1 })
}

fn cmd_counterexample(io: &Io, bfs: Option<usize>) -> Outcome {
    if io.group.is_some() {
        let g = group_arg(io)?;
        let mut q = g.orders().to_vec();
        q.sort_unstable();
        if q != [2, 4] {
            return Err(Failure::Input(format!("the certificate is for Z_2 x Z_4, not {g}")));
        }
    }
    let report = cx_insufficiency_certificate(bfs).context("counterexample")?;
    print_check(&report);
    for (k, v) in &report.details {
        eprintln!("  {k}: {v}");
    }
    let mut doc = serde_json::to_value(&report).expect("reports serialize");
    doc["format_version"] = json!(gclifford::format::FORMAT_VERSION);
    doc["kind"] = json!("protocol-report");
    emit_json(io.out.as_deref(), &doc)?;
    Ok(if report.success() { 0 } else { 1 })
}

fn cmd_canonicalize(io: &Io) -> Outcome {
    let g = group_arg(io)?;
    let (canon, iso) = gclifford::canonical::canonicalize(&g);
    eprintln!("{g} -> {canon}");
    emit(io.out.as_deref(), &write_document(&Document::Isomorphism(iso), Convention::Natural))?;
    Ok(0)
}
