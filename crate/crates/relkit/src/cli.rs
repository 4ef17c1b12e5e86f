//! The `relkit` command line: argument parsing, dispatch, and the human and
//! machine reports.
//!
//! Exit codes: 0 when every checked law holds, 1 on a failed law or a
//! runtime failure (budget, precondition), 2 on usage, syntax or schema
//! errors.

use std::collections::BTreeMap;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::doc::{self, DocError, Document, MorphismDoc};
use crate::finrel::{Budget, Carrier, Rel};
use crate::frobenius::{check_frobenius_axioms, check_groupoid_axioms, from_groupoid, to_groupoid};
use crate::hstar::{check_hstar_axioms, check_semigroupoid_properties, from_semigroupoid, to_semigroupoid};
use crate::monoids::{check_cyclic_weak_star_monoid, check_weak_monoid, check_weak_star_monoid};
use crate::poisson::{from_structure_constants, is_poisson, jacobi_residual, lie_jacobi_holds, poisson_bracket};
use crate::relgpd::{
    check_core_axioms, check_morphism, check_regularity, derive, reduce_to_groupoid, show_subspace, Calculus,
    Derived, DerivedData, GpdRelation, MorphismKind, RelGpdError, RelGroupoidCandidate, Regularity,
};
use crate::report::Report;
use crate::symplin::dirac::DiracCarrier;
use crate::symplin::{transport_through_reduction, LinRelation, Subspace, SympSpace, Transport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Upper bound on the degree of a computed bracket.
const MAX_BRACKET_DEGREE: u32 = 64;

#[derive(Parser, Debug)]
#[command(name = "relkit", version, about = "Check relational and symplectic structures given as JSON documents")]
struct Cli {
    /// Write a machine-readable JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<String>,
    /// Cap on the work an exhaustive check may do.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u128>,
    /// Write a produced document here instead of standard output.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of a structure.
    Check { kind: CheckKind, file: String },
    /// Translate between equivalent presentations.
    Convert { direction: ConvertKind, file: String },
    /// Relational groupoid tools.
    Rsg {
        #[command(subcommand)]
        op: RsgOp,
    },
    /// Symplectic linear algebra.
    Symp {
        #[command(subcommand)]
        op: SympOp,
    },
    /// Polynomial Poisson bivectors.
    Poisson {
        #[command(subcommand)]
        op: PoissonOp,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Frobenius,
    Hstar,
    Groupoid,
    Semigroupoid,
    WeakMonoid,
    StarMonoid,
    CyclicMonoid,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConvertKind {
    FrobToGpd,
    GpdToFrob,
    HstarToSgpd,
    SgpdToHstar,
}

#[derive(Subcommand, Debug)]
enum RsgOp {
    /// Print L1, L2, L3 and C.
    Derive { file: String },
    /// Check A.1 to A.6.
    Check { file: String },
    /// Check A.7 to A.9.
    Regularity { file: String },
    /// Reduce to a groupoid.
    Reduce { file: String },
    /// Check the `morphism` block of the first document against the second
    /// (default: the first again).
    Morphism { file: String, target: Option<String> },
}

#[derive(Subcommand, Debug)]
enum SympOp {
    /// The ω-orthogonal of a subspace.
    Orthogonal { file: String },
    /// Isotropic / coisotropic / lagrangian / symplectic label.
    Classify {
        /// Read the file as a subspace document.
        #[arg(long)]
        subspace: bool,
        file: String,
    },
    /// The reduced space W/(W∩W⊥).
    Reduce { file: String },
    /// `second ∘ first`.
    Compose { first: String, second: String },
    /// Lift an endorelation of the reduction of `subspace` to the ambient space.
    Lift { linrel: String, subspace: String },
    /// Project an endorelation of the ambient space to the reduction of `subspace`.
    Project { linrel: String, subspace: String },
    /// Check that a subspace of V⊕V* is a linear Dirac structure.
    Dirac { file: String },
}

#[derive(Subcommand, Debug)]
enum PoissonOp {
    /// Evaluate the Jacobi residual.
    Check { file: String },
    /// Build the linear bivector of Lie structure constants.
    FromLie { file: String },
    /// Compute {f,g}.
    Bracket { file: String },
}

/// What a command produced: verdicts, derived artifacts, and possibly a
/// document.
#[derive(Debug, Default)]
struct Outcome {
    report: Report,
    artifacts: BTreeMap<String, Value>,
    document: Option<Document>,
}

impl Outcome {
    fn of(report: Report) -> Outcome {
        Outcome {
            report,
            ..Outcome::default()
        }
    }

    fn artifact(mut self, key: &str, value: impl Into<Value>) -> Outcome {
        self.artifacts.insert(key.to_string(), value.into());
        self
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// A precondition check that failed, reported like any other failure.
    Checked(Report),
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Failure {
        match e {
            DocError::Io { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

macro_rules! runtime_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Failure {
                Failure::Runtime(e.to_string())
            }
        }
    )*};
}
runtime_from!(
    crate::finrel::RelError,
    crate::frobenius::FrobError,
    crate::monoids::MonoidError,
    crate::symplin::SympError,
    crate::poisson::PoissonError
);

impl From<RelGpdError> for Failure {
    fn from(e: RelGpdError) -> Failure {
        match e {
            RelGpdError::Precondition(r) | RelGpdError::InvalidReduction(r) => Failure::Checked(*r),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

/// Everything a caller needs to emulate the process: exit code and the two
/// output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct MachineReport<'a> {
    schema: u32,
    command: String,
    verdict: bool,
    laws: BTreeMap<&'a str, bool>,
    witnesses: Vec<(&'a str, &'a str)>,
    notes: &'a [String],
    artifacts: &'a BTreeMap<String, Value>,
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> CliOutput {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return if code == EXIT_PASS {
                CliOutput { code, stdout: text, stderr: String::new() }
            } else {
                CliOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = args.iter().skip(1).copied().collect::<Vec<_>>().join(" ");
    let budget = cli.budget.map_or_else(Budget::default, Budget::new);
    let result = dispatch(&cli.command, &budget);
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(m)) => return error_output(EXIT_USAGE, &m),
        Err(Failure::Runtime(m)) => return error_output(EXIT_FAIL, &m),
        Err(Failure::Checked(report)) => Outcome::of(report),
    };
    finish(&cli, &command, outcome)
}

fn error_output(code: i32, message: &str) -> CliOutput {
    CliOutput {
        code,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

fn sorted_witnesses(r: &Report) -> Vec<(&str, &str)> {
    let mut w: Vec<(&str, &str)> = r.witnesses().iter().map(|w| (w.law.as_str(), w.detail.as_str())).collect();
    w.sort();
    w.dedup();
    w
}

fn human(outcome: &Outcome) -> String {
    let r = &outcome.report;
    let mut laws: Vec<_> = r.laws().iter().collect();
    laws.sort_by(|a, b| a.law.cmp(&b.law));
    let mut out = String::new();
    for l in laws {
        out += &format!("{}: {}\n", l.law, if l.holds { "pass" } else { "FAIL" });
    }
    for (law, detail) in sorted_witnesses(r) {
        out += &format!("{law}: {detail}\n");
    }
    for n in r.notes() {
        out += &format!("note: {n}\n");
    }
    for (k, v) in &outcome.artifacts {
        match v {
            Value::String(s) => out += &format!("{k}={s}\n"),
            other => out += &format!("{k}={other}\n"),
        }
    }
    out += if r.verdict() { "verdict: pass\n" } else { "verdict: fail\n" };
    out
}

fn finish(cli: &Cli, command: &str, outcome: Outcome) -> CliOutput {
    let mut stdout = String::new();
    let mut stderr = String::new();
    let report_text = human(&outcome);
    match (&outcome.document, &cli.output) {
        (Some(d), Some(path)) => {
            if let Err(e) = std::fs::write(path, doc::print_document(d) + "\n") {
                return error_output(EXIT_FAIL, &format!("cannot write {path}: {e}"));
            }
            stdout += &report_text;
        }
        (Some(d), None) => {
            stdout += &doc::print_document(d);
            stdout.push('\n');
            stderr += &report_text;
        }
        (None, _) => stdout += &report_text,
    }
    let r = &outcome.report;
    if let Some(path) = &cli.report {
        let mut artifacts = outcome.artifacts.clone();
        if let Some(d) = &outcome.document {
            artifacts.insert("document".into(), serde_json::to_value(d).expect("documents serialize"));
        }
        let machine = MachineReport {
            schema: 1,
            command: command.to_string(),
            verdict: r.verdict(),
            laws: r.laws().iter().map(|l| (l.law.as_str(), l.holds)).collect(),
            witnesses: sorted_witnesses(r),
            notes: r.notes(),
            artifacts: &artifacts,
        };
        let text = serde_json::to_string_pretty(&machine).expect("reports serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            return error_output(EXIT_FAIL, &format!("cannot write {path}: {e}"));
        }
    }
    CliOutput {
        code: if r.verdict() { EXIT_PASS } else { EXIT_FAIL },
        stdout,
        stderr,
    }
}

fn dispatch(cmd: &Command, budget: &Budget) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { kind, file } => check(*kind, file, budget),
        Command::Convert { direction, file } => convert(*direction, file, budget),
        Command::Rsg { op } => rsg(op, budget),
        Command::Symp { op } => symp(op),
        Command::Poisson { op } => poisson(op),
    }
}

fn wrong_kind(path: &str, expected: &str, got: &Document) -> Failure {
    Failure::Usage(format!("{path}: expected a {expected} document, got {}", got.kind()))
}

macro_rules! expect_doc {
    ($path:expr, $variant:ident, $name:expr) => {{
        match doc::read_document($path)? {
            Document::$variant(d) => d,
            other => return Err(wrong_kind($path, $name, &other)),
        }
    }};
}

fn show_set(x: &Carrier, members: &[usize]) -> String {
    let parts: Vec<String> = members.iter().map(|&i| x.atom(i).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn check(kind: CheckKind, path: &str, budget: &Budget) -> Result<Outcome, Failure> {
    Ok(match kind {
        CheckKind::Frobenius => {
            let c = doc::ternary(&expect_doc!(path, Frobenius, "frobenius"))?;
            let res = check_frobenius_axioms(&c, budget)?;
            let mut o = Outcome::of(res.report);
            if let Some(u) = res.unit {
                o = o.artifact("U", show_set(c.carrier(), &u));
            }
            o
        }
        CheckKind::Hstar => {
            let c = doc::ternary(&expect_doc!(path, Hstar, "hstar"))?;
            Outcome::of(check_hstar_axioms(&c, budget)?)
        }
        CheckKind::Groupoid => {
            let g = doc::groupoid(&expect_doc!(path, Groupoid, "groupoid"))?;
            Outcome::of(check_groupoid_axioms(&g))
        }
        CheckKind::Semigroupoid => {
            let s = doc::semigroupoid(&expect_doc!(path, Semigroupoid, "semigroupoid"))?;
            Outcome::of(check_semigroupoid_properties(&s))
        }
        CheckKind::WeakMonoid => {
            let c = doc::weak_monoid(&expect_doc!(path, WeakMonoid, "weak-monoid"))?;
            let res = check_weak_monoid(&c)?;
            Outcome::of(res.report).artifact("L2", res.l2.to_string())
        }
        CheckKind::StarMonoid => {
            let c = doc::star_monoid(&expect_doc!(path, StarMonoid, "star-monoid"))?;
            let (mut report, weak) = check_weak_star_monoid(&c)?;
            report.merge(weak.report);
            Outcome::of(report).artifact("L2", weak.l2.to_string())
        }
        CheckKind::CyclicMonoid => {
            let c = doc::cyclic_monoid(&expect_doc!(path, CyclicMonoid, "cyclic-monoid"))?;
            Outcome::of(check_cyclic_weak_star_monoid(&c)?)
        }
    })
}

fn convert(kind: ConvertKind, path: &str, budget: &Budget) -> Result<Outcome, Failure> {
    use crate::frobenius::FrobError;
    let precondition = |e: FrobError| match e {
        FrobError::NotFrobenius(r) | FrobError::InvalidGroupoid(r) => Failure::Checked(*r),
        other => Failure::Runtime(other.to_string()),
    };
    let document = match kind {
        ConvertKind::FrobToGpd => {
            let c = doc::ternary(&expect_doc!(path, Frobenius, "frobenius"))?;
            doc::groupoid_doc(&to_groupoid(&c, budget).map_err(precondition)?)
        }
        ConvertKind::GpdToFrob => {
            let g = doc::groupoid(&expect_doc!(path, Groupoid, "groupoid"))?;
            doc::frobenius_doc(&from_groupoid(&g).map_err(precondition)?)
        }
        ConvertKind::HstarToSgpd => {
            let c = doc::ternary(&expect_doc!(path, Hstar, "hstar"))?;
            let report = check_hstar_axioms(&c, budget)?;
            if !report.verdict() {
                return Err(Failure::Checked(report));
            }
            doc::semigroupoid_doc(&to_semigroupoid(&c, budget)?)
        }
        ConvertKind::SgpdToHstar => {
            let s = doc::semigroupoid(&expect_doc!(path, Semigroupoid, "semigroupoid"))?;
            let report = check_semigroupoid_properties(&s);
            if !report.verdict() {
                return Err(Failure::Checked(report));
            }
            doc::hstar_doc(&from_semigroupoid(&s)?)
        }
    };
    Ok(Outcome {
        document: Some(document),
        ..Outcome::default()
    })
}

fn read_relgpd(path: &str) -> Result<(RelGroupoidCandidate, Option<MorphismDoc>), Failure> {
    let d = expect_doc!(path, Relgpd, "relgpd");
    Ok(doc::relgpd(&d)?)
}

fn derived_artifacts<R: Calculus>(mut o: Outcome, d: &Derived<R>) -> Outcome {
    for (k, r) in [("C", &d.c), ("L1", &d.l1), ("L2", &d.l2), ("L3", &d.l3)] {
        o = o.artifact(k, r.show());
    }
    o
}

fn with_derived(o: Outcome, d: &DerivedData) -> Outcome {
    match d {
        DerivedData::Set(d) => derived_artifacts(o, d),
        DerivedData::Linear(d) => derived_artifacts(o, d),
    }
}

fn rsg(op: &RsgOp, budget: &Budget) -> Result<Outcome, Failure> {
    match op {
        RsgOp::Derive { file } => {
            let (c, _) = read_relgpd(file)?;
            let d = derive(&c, budget)?;
            let mut report = Report::new();
            if let DerivedData::Linear(l) = &d {
                for (name, ok) in &l.lagrangian {
                    report.check("Lagrangian", *ok, || format!("{name} is not Lagrangian"));
                }
            }
            Ok(with_derived(Outcome::of(report), &d))
        }
        RsgOp::Check { file } => {
            let (c, _) = read_relgpd(file)?;
            let report = check_core_axioms(&c, budget)?;
            let o = Outcome::of(report);
            // A.2 failing makes the derived relations undefined.
            Ok(match derive(&c, budget) {
                Ok(d) => with_derived(o, &d),
                Err(_) => o,
            })
        }
        RsgOp::Regularity { file } => {
            let (c, _) = read_relgpd(file)?;
            Ok(match check_regularity(&c, budget)? {
                Regularity::Set(r) => {
                    let g = match &c {
                        RelGroupoidCandidate::Set(s) => s.carrier().clone(),
                        _ => unreachable!("set regularity comes from a set candidate"),
                    };
                    Outcome::of(r.report.clone())
                        .artifact("C", show_set(&g, &r.c))
                        .artifact("M", r.m.to_string())
                        .artifact("|M|", r.m_classes.len())
                        .artifact("|C/L2|", r.c_classes.len())
                }
                Regularity::Linear(r) => Outcome::of(r.report.clone())
                    .artifact("C", show_subspace(&r.c))
                    .artifact("dim M", r.m_dim),
            })
        }
        RsgOp::Reduce { file } => {
            let (c, _) = read_relgpd(file)?;
            let g = reduce_to_groupoid(&c, budget)?;
            let report = check_groupoid_axioms(&g);
            Ok(Outcome {
                document: Some(doc::groupoid_doc(&g)),
                ..Outcome::of(report)
            }
            .artifact("objects", g.objects().len())
            .artifact("arrows", g.arrows().len()))
        }
        RsgOp::Morphism { file, target } => {
            let (a, m) = read_relgpd(file)?;
            let m = m.ok_or_else(|| Failure::Usage(format!("{file}: no `morphism` block")))?;
            let b = match target {
                Some(t) => read_relgpd(t)?.0,
                None => a.clone(),
            };
            let f = morphism_relation(&m, &a, &b)?;
            let kind = if m.equivalence {
                MorphismKind::Equivalence
            } else {
                MorphismKind::Morphism
            };
            Ok(Outcome::of(check_morphism(&f, &a, &b, kind, budget)?))
        }
    }
}

fn morphism_relation(m: &MorphismDoc, a: &RelGroupoidCandidate, b: &RelGroupoidCandidate) -> Result<GpdRelation, Failure> {
    let schema = |msg: String| Failure::Usage(format!("schema error in `morphism`: {msg}"));
    match (a, b) {
        (RelGroupoidCandidate::Set(a), RelGroupoidCandidate::Set(b)) => {
            let pairs = m.pairs.as_ref().ok_or_else(|| schema("set mode needs `pairs`".into()))?;
            let mut idx = Vec::new();
            for (x, y) in pairs {
                let find = |c: &Carrier, s: &str| {
                    s.parse()
                        .ok()
                        .and_then(|atom| c.index_of(&atom))
                        .ok_or_else(|| schema(format!("unknown atom {s:?}")))
                };
                idx.push((find(a.carrier(), x)?, find(b.carrier(), y)?));
            }
            Ok(GpdRelation::Set(Rel::from_index_pairs(a.carrier(), b.carrier(), idx)))
        }
        (RelGroupoidCandidate::Linear(a), RelGroupoidCandidate::Linear(b)) => {
            let rows = m.basis.as_ref().ok_or_else(|| schema("linear mode needs `basis`".into()))?;
            let n = a.space().dim() + b.space().dim();
            let mut vectors = Vec::new();
            for r in rows {
                if r.len() != n {
                    return Err(schema(format!("expected {n} entries per basis row")));
                }
                let v: Result<Vec<_>, _> = r.iter().map(|s| crate::symplin::parse_rational(s)).collect();
                vectors.push(v.map_err(|e| schema(e.to_string()))?);
            }
            let f = LinRelation::new(a.space(), b.space(), Subspace::span(n, &vectors))?;
            Ok(GpdRelation::Linear(f))
        }
        _ => Err(Failure::Usage("the two candidates are in different modes".into())),
    }
}

fn read_subspace(path: &str) -> Result<(SympSpace, Subspace), Failure> {
    let d = expect_doc!(path, Subspace, "subspace");
    match doc::subspace(&d)? {
        (Some(v), w) => Ok((v, w)),
        (None, _) => Err(Failure::Usage(format!("schema error in `omega`: {path} needs a form"))),
    }
}

fn read_linrel(path: &str) -> Result<LinRelation, Failure> {
    Ok(doc::linrel(&expect_doc!(path, Linrel, "linrel"))?)
}

fn symp(op: &SympOp) -> Result<Outcome, Failure> {
    match op {
        SympOp::Orthogonal { file } => {
            let (v, w) = read_subspace(file)?;
            let perp = v.orthogonal(&w)?;
            Ok(Outcome {
                document: Some(doc::subspace_doc(Some(&v), &perp)),
                ..Outcome::default()
            }
            .artifact("dim", perp.dim()))
        }
        SympOp::Classify { subspace, file } => {
            let class = match doc::read_document(file)? {
                Document::Subspace(d) => match doc::subspace(&d)? {
                    (Some(v), w) => v.classify(&w)?,
                    (None, _) => return Err(Failure::Usage(format!("schema error in `omega`: {file} needs a form"))),
                },
                Document::Linrel(d) if !subspace => doc::linrel(&d)?.classify(),
                other => return Err(wrong_kind(file, "subspace", &other)),
            };
            Ok(Outcome::default().artifact("class", class.label()))
        }
        SympOp::Reduce { file } => {
            let (v, w) = read_subspace(file)?;
            let red = v.reduce(&w)?;
            Ok(Outcome {
                document: Some(doc::symp_space_doc(&red.space)),
                ..Outcome::default()
            }
            .artifact("dim", red.dim()))
        }
        SympOp::Compose { first, second } => {
            let (f, g) = (read_linrel(first)?, read_linrel(second)?);
            let h = f.then(&g)?;
            let label = h.classify().label();
            Ok(Outcome {
                document: Some(doc::linrel_doc(&h)),
                ..Outcome::default()
            }
            .artifact("class", label))
        }
        SympOp::Lift { linrel, subspace } | SympOp::Project { linrel, subspace } => {
            let dir = if matches!(op, SympOp::Lift { .. }) {
                Transport::Lift
            } else {
                Transport::Project
            };
            let l = read_linrel(linrel)?;
            let (v, c) = read_subspace(subspace)?;
            let out = transport_through_reduction(dir, &l, &v, &c)?;
            let label = out.classify().label();
            Ok(Outcome {
                document: Some(doc::linrel_doc(&out)),
                ..Outcome::default()
            }
            .artifact("class", label))
        }
        SympOp::Dirac { file } => {
            let d = expect_doc!(file, Subspace, "subspace");
            let (_, l) = doc::subspace(&d)?;
            if l.ambient_dim() % 2 != 0 {
                return Err(Failure::Usage("schema error in `ambient`: V⊕V* has even dimension".into()));
            }
            let ok = DiracCarrier::new(l.ambient_dim() / 2).is_dirac(&l)?;
            let mut report = Report::new();
            report.check("Dirac", ok, || format!("{} is not maximal isotropic", show_subspace(&l)));
            Ok(Outcome::of(report))
        }
    }
}

fn poisson(op: &PoissonOp) -> Result<Outcome, Failure> {
    match op {
        PoissonOp::Check { file } => {
            let (p, _, _) = doc::bivector(&expect_doc!(file, Bivector, "bivector"))?;
            let mut report = Report::new();
            report.pass("SN");
            for ((s, l, k), j) in jacobi_residual(&p) {
                if !j.is_zero() {
                    report.fail("SN", format!("J^{{{}{}{}}} = {}", s + 1, l + 1, k + 1, j));
                }
            }
            Ok(Outcome::of(report))
        }
        PoissonOp::FromLie { file } => {
            let c = doc::lie_constants(&expect_doc!(file, LieConstants, "lie-constants"))?;
            let p = from_structure_constants(&c)?;
            let mut report = Report::new();
            report.check("Jacobi", lie_jacobi_holds(&c), || "structure constants violate Jacobi".into());
            report.check("SN", is_poisson(&p), || "linear bivector has nonzero residual".into());
            Ok(Outcome {
                document: Some(doc::bivector_doc(&p, None, None)),
                ..Outcome::of(report)
            })
        }
        PoissonOp::Bracket { file } => {
            let (p, f, g) = doc::bivector(&expect_doc!(file, Bivector, "bivector"))?;
            let (f, g) = match (f, g) {
                (Some(f), Some(g)) => (f, g),
                _ => return Err(Failure::Usage("schema error in `f`: bracket needs both `f` and `g`".into())),
            };
            let b = poisson_bracket(&p, &f, &g, MAX_BRACKET_DEGREE)?;
            Ok(Outcome::default().artifact("{f,g}", b.to_string()))
        }
    }
}
