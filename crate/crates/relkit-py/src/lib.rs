//! Python bindings for `relkit`.
//!
//! Atoms cross the boundary as strings and rationals as `"p/q"` strings, the
//! same encoding the JSON documents use.

use std::collections::BTreeMap;
use std::fmt::Display;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use relkit::doc::{self, Document, RelationDoc, TernaryDoc};
use relkit::finrel::{Budget, Carrier, Rel};
use relkit::frobenius::{self, FrobCandidate, Groupoid};
use relkit::hstar;
use relkit::poisson::{self, PolyBivector, PolyFunction};
use relkit::relgpd::{self, build_example, Example, RelGroupoidCandidate};
use relkit::symplin::{format_rational, parse_rational, Matrix, Q, Subspace, SympSpace};
use relkit::Report;

fn err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rationals(v: &[String]) -> PyResult<Vec<Q>> {
    v.iter().map(|s| parse_rational(s).map_err(|e| err(e.0))).collect()
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix(rows: &[Vec<String>]) -> PyResult<Matrix> {
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    let rows: Vec<Vec<Q>> = rows.iter().map(|r| rationals(r)).collect::<PyResult<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(err("ragged matrix"));
    }
    Ok(Matrix::from_rows(rows))
}

fn parse_kind(text: &str, kind: &str) -> PyResult<Document> {
    let d = doc::parse_document(text).map_err(err)?;
    if d.kind() != kind {
        return Err(err(format!("expected a {kind} document, got {}", d.kind())));
    }
    Ok(d)
}

fn atom_names(c: &Carrier) -> Vec<String> {
    c.atoms().iter().map(|a| a.to_string()).collect()
}

#[pyclass(name = "Report", frozen)]
struct PyReport(Report);

#[pymethods]
impl PyReport {
    #[getter]
    fn verdict(&self) -> bool {
        self.0.verdict()
    }

    #[getter]
    fn laws(&self) -> BTreeMap<String, bool> {
        self.0.laws().iter().map(|l| (l.law.clone(), l.holds)).collect()
    }

    #[getter]
    fn witnesses(&self) -> Vec<(String, String)> {
        self.0.witnesses().iter().map(|w| (w.law.clone(), w.detail.clone())).collect()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes().to_vec()
    }

    fn holds(&self, law: &str) -> Option<bool> {
        self.0.holds(law)
    }

    fn __bool__(&self) -> bool {
        self.0.verdict()
    }

    fn __repr__(&self) -> String {
        if self.0.verdict() {
            "Report(pass)".into()
        } else {
            format!("Report(fail: {})", self.0.failed_laws())
        }
    }
}

/// A relation between two finite sets.
#[pyclass(name = "Relation", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRelation(Rel);

#[pymethods]
impl PyRelation {
    #[new]
    fn new(src: Vec<String>, dst: Vec<String>, pairs: Vec<(String, String)>) -> PyResult<Self> {
        doc::relation(&RelationDoc { src, dst, pairs }).map(PyRelation).map_err(err)
    }

    #[staticmethod]
    fn identity(atoms: Vec<String>) -> PyResult<Self> {
        Ok(PyRelation(Rel::identity(&Carrier::new(atoms.iter().map(String::as_str)).map_err(err)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_kind(text, "relation")? {
            Document::Relation(d) => doc::relation(&d).map(PyRelation).map_err(err),
            _ => unreachable!(),
        }
    }

    /// `self` followed by `other`.
    fn then(&self, other: &PyRelation) -> PyResult<Self> {
        self.0.then(&other.0).map(PyRelation).map_err(err)
    }

    fn dagger(&self) -> Self {
        PyRelation(self.0.dagger())
    }

    fn product(&self, other: &PyRelation) -> Self {
        PyRelation(self.0.product(&other.0))
    }

    fn pairs(&self) -> Vec<(String, String)> {
        self.0.pairs().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn is_function(&self) -> bool {
        self.0.is_function()
    }

    fn is_single_valued(&self) -> bool {
        self.0.is_single_valued()
    }

    fn to_json(&self) -> String {
        doc::print_document(&doc::relation_doc(&self.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Relation({})", self.0)
    }
}

#[pyclass(name = "Groupoid", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGroupoid(Groupoid);

#[pymethods]
impl PyGroupoid {
    #[staticmethod]
    fn cyclic(k: usize) -> Self {
        PyGroupoid(Groupoid::cyclic(k))
    }

    #[staticmethod]
    fn pair(objects: Vec<String>) -> PyResult<Self> {
        Ok(PyGroupoid(Groupoid::pair(&Carrier::new(objects.iter().map(String::as_str)).map_err(err)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_kind(text, "groupoid")? {
            Document::Groupoid(d) => doc::groupoid(&d).map(PyGroupoid).map_err(err),
            _ => unreachable!(),
        }
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        atom_names(self.0.objects())
    }

    #[getter]
    fn arrows(&self) -> Vec<String> {
        atom_names(self.0.arrows())
    }

    /// `g∘f` by arrow name, or `None` when `s(g) ≠ t(f)`.
    fn compose(&self, g: &str, f: &str) -> PyResult<Option<String>> {
        let arrows = self.0.arrows();
        let find = |a: &str| {
            arrows
                .atoms()
                .iter()
                .position(|x| x.to_string() == a)
                .ok_or_else(|| err(format!("unknown arrow {a}")))
        };
        Ok(self.0.compose(find(g)?, find(f)?).map(|h| arrows.atom(h).to_string()))
    }

    fn check(&self) -> PyReport {
        PyReport(frobenius::check_groupoid_axioms(&self.0))
    }

    fn to_json(&self) -> String {
        doc::print_document(&doc::groupoid_doc(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Groupoid({} objects, {} arrows)", self.0.objects().len(), self.0.arrows().len())
    }
}

/// A ternary relation `m ⊆ X×X×X`, read as the candidate multiplication
/// `(h, g) ↦ f`.
#[pyclass(name = "Frobenius", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFrobenius(FrobCandidate);

#[pymethods]
impl PyFrobenius {
    #[new]
    fn new(carrier: Vec<String>, triples: Vec<(String, String, String)>) -> PyResult<Self> {
        doc::ternary(&TernaryDoc { carrier, triples }).map(PyFrobenius).map_err(err)
    }

    #[staticmethod]
    fn from_groupoid(g: &PyGroupoid) -> PyResult<Self> {
        frobenius::from_groupoid(&g.0).map(PyFrobenius).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let d = doc::parse_document(text).map_err(err)?;
        match d {
            Document::Frobenius(t) | Document::Hstar(t) => doc::ternary(&t).map(PyFrobenius).map_err(err),
            other => Err(err(format!("expected a frobenius document, got {}", other.kind()))),
        }
    }

    fn check(&self) -> PyResult<PyReport> {
        let r = frobenius::check_frobenius_axioms(&self.0, &Budget::default()).map_err(err)?;
        Ok(PyReport(r.report))
    }

    /// The unit set, or `None` when no subset works.
    fn unit(&self) -> PyResult<Option<Vec<String>>> {
        let r = frobenius::check_frobenius_axioms(&self.0, &Budget::default()).map_err(err)?;
        let x = self.0.carrier();
        Ok(r.unit.map(|u| u.into_iter().map(|i| x.atom(i).to_string()).collect()))
    }

    fn check_hstar(&self) -> PyResult<PyReport> {
        hstar::check_hstar_axioms(&self.0, &Budget::default()).map(PyReport).map_err(err)
    }

    fn to_groupoid(&self) -> PyResult<PyGroupoid> {
        frobenius::to_groupoid(&self.0, &Budget::default()).map(PyGroupoid).map_err(err)
    }

    fn triples(&self) -> Vec<(String, String, String)> {
        self.0
            .triples()
            .into_iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect()
    }

    fn to_json(&self) -> String {
        doc::print_document(&doc::frobenius_doc(&self.0))
    }
}

#[pyclass(name = "Subspace", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySubspace(Subspace);

#[pymethods]
impl PySubspace {
    #[new]
    fn new(ambient: usize, vectors: Vec<Vec<String>>) -> PyResult<Self> {
        let vs: Vec<Vec<Q>> = vectors.iter().map(|v| rationals(v)).collect::<PyResult<_>>()?;
        if vs.iter().any(|v| v.len() != ambient) {
            return Err(err(format!("vectors must have {ambient} entries")));
        }
        Ok(PySubspace(Subspace::span(ambient, &vs)))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.0.ambient_dim()
    }

    fn basis(&self) -> Vec<Vec<String>> {
        self.0.basis_vectors().iter().map(|v| strings(v)).collect()
    }

    fn contains(&self, v: Vec<String>) -> PyResult<bool> {
        let v = rationals(&v)?;
        if v.len() != self.0.ambient_dim() {
            return Err(err("dimension mismatch"));
        }
        Ok(self.0.contains(&v))
    }

    fn sum(&self, other: &PySubspace) -> Self {
        PySubspace(self.0.sum(&other.0))
    }

    fn intersection(&self, other: &PySubspace) -> Self {
        PySubspace(self.0.intersection(&other.0))
    }

    fn __repr__(&self) -> String {
        format!("Subspace(dim {} in {})", self.0.dim(), self.0.ambient_dim())
    }
}

#[pyclass(name = "SympSpace", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySympSpace(SympSpace);

#[pymethods]
impl PySympSpace {
    #[new]
    fn new(omega: Vec<Vec<String>>) -> PyResult<Self> {
        SympSpace::new(matrix(&omega)?).map(PySympSpace).map_err(err)
    }

    /// `ℚ^{2n}` with the standard form.
    #[staticmethod]
    fn standard(n: usize) -> Self {
        PySympSpace(SympSpace::standard(n))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn omega(&self) -> Vec<Vec<String>> {
        self.0.omega().to_rows().iter().map(|r| strings(r)).collect()
    }

    fn pairing(&self, u: Vec<String>, v: Vec<String>) -> PyResult<String> {
        let (u, v) = (rationals(&u)?, rationals(&v)?);
        if u.len() != self.0.dim() || v.len() != self.0.dim() {
            return Err(err("dimension mismatch"));
        }
        Ok(format_rational(&self.0.pairing(&u, &v)))
    }

    fn orthogonal(&self, w: &PySubspace) -> PyResult<PySubspace> {
        self.0.orthogonal(&w.0).map(PySubspace).map_err(err)
    }

    /// One of `lagrangian`, `isotropic`, `coisotropic`, `symplectic`, `none`.
    fn classify(&self, w: &PySubspace) -> PyResult<String> {
        self.0.classify(&w.0).map(|c| c.label().to_string()).map_err(err)
    }

    fn is_lagrangian(&self, w: &PySubspace) -> PyResult<bool> {
        self.0.is_lagrangian(&w.0).map_err(err)
    }

    /// The reduced space `W/(W∩W^ω)`.
    fn reduce(&self, w: &PySubspace) -> PyResult<PySympSpace> {
        self.0.reduce(&w.0).map(|r| PySympSpace(r.space)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("SympSpace(dim {})", self.0.dim())
    }
}

/// A relational groupoid candidate `(G, L, I)`, set or linear mode.
#[pyclass(name = "RelGroupoid", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRelGroupoid(RelGroupoidCandidate);

#[pymethods]
impl PyRelGroupoid {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_kind(text, "relgpd")? {
            Document::Relgpd(d) => doc::relgpd(&d).map(|(c, _)| PyRelGroupoid(c)).map_err(err),
            _ => unreachable!(),
        }
    }

    #[staticmethod]
    fn from_groupoid(g: &PyGroupoid) -> PyResult<Self> {
        build_example(Example::FromGroupoid(g.0.clone())).map(PyRelGroupoid).map_err(err)
    }

    #[staticmethod]
    fn parity(modulus: usize) -> PyResult<Self> {
        build_example(Example::Parity(modulus)).map(PyRelGroupoid).map_err(err)
    }

    #[staticmethod]
    fn cyclic_counterexample(k: usize) -> PyResult<Self> {
        build_example(Example::CyclicCounterexample(k)).map(PyRelGroupoid).map_err(err)
    }

    #[staticmethod]
    fn linear_pair_groupoid(v: &PySympSpace) -> PyResult<Self> {
        build_example(Example::LinearPairGroupoid(v.0.clone())).map(PyRelGroupoid).map_err(err)
    }

    #[getter]
    fn is_linear(&self) -> bool {
        self.0.is_linear()
    }

    fn opposite(&self) -> Self {
        PyRelGroupoid(self.0.opposite())
    }

    fn check(&self) -> PyResult<PyReport> {
        relgpd::check_core_axioms(&self.0, &Budget::default()).map(PyReport).map_err(err)
    }

    fn regularity(&self) -> PyResult<PyReport> {
        let r = relgpd::check_regularity(&self.0, &Budget::default()).map_err(err)?;
        Ok(PyReport(r.report().clone()))
    }

    fn reduce(&self) -> PyResult<PyGroupoid> {
        relgpd::reduce_to_groupoid(&self.0, &Budget::default()).map(PyGroupoid).map_err(err)
    }

    fn to_json(&self) -> String {
        doc::print_document(&doc::relgpd_doc(&self.0))
    }
}

/// A polynomial bivector on `ℚⁿ` with constant and linear coefficients.
#[pyclass(name = "Bivector", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBivector(PolyBivector);

type Terms = Vec<(Vec<u32>, String)>;

fn polynomial(n: usize, terms: &Terms) -> PyResult<PolyFunction> {
    let parsed: Vec<(Vec<u32>, Q)> = terms
        .iter()
        .map(|(e, c)| Ok((e.clone(), parse_rational(c).map_err(|e| err(e.0))?)))
        .collect::<PyResult<_>>()?;
    PolyFunction::from_terms(n, parsed).map_err(err)
}

#[pymethods]
impl PyBivector {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse_kind(text, "bivector")? {
            Document::Bivector(d) => doc::bivector(&d).map(|(p, _, _)| PyBivector(p)).map_err(err),
            _ => unreachable!(),
        }
    }

    /// Linear bivector of a Lie algebra: `constants[i][j][k]` is `c^k_{ij}`.
    #[staticmethod]
    fn from_lie_constants(constants: Vec<Vec<Vec<String>>>) -> PyResult<Self> {
        let c: Vec<Vec<Vec<Q>>> = constants
            .iter()
            .map(|m| m.iter().map(|r| rationals(r)).collect::<PyResult<_>>())
            .collect::<PyResult<_>>()?;
        poisson::from_structure_constants(&c).map(PyBivector).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn is_poisson(&self) -> bool {
        poisson::is_poisson(&self.0)
    }

    /// Nonzero components `J^{ijk}` of the Jacobiator, 1-based indices.
    fn jacobi_residual(&self) -> Vec<((usize, usize, usize), String)> {
        poisson::jacobi_residual(&self.0)
            .into_iter()
            .filter(|(_, j)| !j.is_zero())
            .map(|((i, j, k), p)| ((i + 1, j + 1, k + 1), p.to_string()))
            .collect()
    }

    /// `{f, g}` for polynomials given as `(exponents, coefficient)` terms.
    #[pyo3(signature = (f, g, max_degree = 16))]
    fn bracket(&self, f: Terms, g: Terms, max_degree: u32) -> PyResult<String> {
        let n = self.0.dim();
        let b = poisson::poisson_bracket(&self.0, &polynomial(n, &f)?, &polynomial(n, &g)?, max_degree).map_err(err)?;
        Ok(b.to_string())
    }

    fn to_json(&self) -> String {
        doc::print_document(&doc::bivector_doc(&self.0, None, None))
    }
}

/// The kind tag of a JSON document, after full validation.
#[pyfunction]
fn document_kind(text: &str) -> PyResult<String> {
    doc::parse_document(text).map(|d| d.kind().to_string()).map_err(err)
}

/// Runs the command-line tool in-process. Returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let mut argv = vec!["relkit".to_string()];
    argv.extend(args);
    let out = relkit::cli::run_command(&argv);
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pyrelkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReport>()?;
    m.add_class::<PyRelation>()?;
    m.add_class::<PyGroupoid>()?;
    m.add_class::<PyFrobenius>()?;
    m.add_class::<PySubspace>()?;
    m.add_class::<PySympSpace>()?;
    m.add_class::<PyRelGroupoid>()?;
    m.add_class::<PyBivector>()?;
    m.add_function(wrap_pyfunction!(document_kind, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
