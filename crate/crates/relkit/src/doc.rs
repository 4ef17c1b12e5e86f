//! JSON structure documents: one tagged object per structure, atoms as
//! strings, rationals as `"p/q"` strings, matrices row-major.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::atom::Atom;
use crate::finrel::{Carrier, Rel};
use crate::frobenius::{FrobCandidate, Groupoid};
use crate::hstar::Semigroupoid;
use crate::monoids::{CyclicCandidate, StarMonoidCandidate, WeakMonoidCandidate};
use crate::poisson::{from_structure_constants, PolyBivector, PolyFunction};
use crate::relgpd::{LinearCandidate, RelGroupoidCandidate, SetCandidate};
use crate::symplin::{format_rational, parse_rational, LinRelation, Matrix, SympSpace, Subspace, Q};

pub type Triple = (String, String, String);
pub type Rows = Vec<Vec<String>>;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Relation(RelationDoc),
    Frobenius(TernaryDoc),
    Hstar(TernaryDoc),
    Groupoid(GroupoidDoc),
    Semigroupoid(SemigroupoidDoc),
    WeakMonoid(WeakMonoidDoc),
    StarMonoid(StarMonoidDoc),
    CyclicMonoid(CyclicMonoidDoc),
    SympSpace(SympSpaceDoc),
    Subspace(SubspaceDoc),
    Linrel(LinRelDoc),
    Relgpd(RelGpdDoc),
    Bivector(BivectorDoc),
    LieConstants(LieConstantsDoc),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub src: Vec<String>,
    pub dst: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

/// `m ⊆ (X×X)×X` as triples `(h, g, f)` meaning `f ∈ h·g`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TernaryDoc {
    pub carrier: Vec<String>,
    pub triples: Vec<Triple>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
    pub source: BTreeMap<String, String>,
    pub target: BTreeMap<String, String>,
    pub unit: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
    /// `(g, f, g∘f)`
    pub compose: Vec<Triple>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SemigroupoidDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
    pub source: BTreeMap<String, String>,
    pub target: BTreeMap<String, String>,
    pub compose: Vec<Triple>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WeakMonoidDoc {
    pub carrier: Vec<String>,
    pub l1: Vec<String>,
    pub l3: Vec<Triple>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct StarMonoidDoc {
    pub carrier: Vec<String>,
    pub l3: Vec<Triple>,
    pub psi: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CyclicMonoidDoc {
    pub carrier: Vec<String>,
    pub psi: BTreeMap<String, String>,
    pub l: Vec<Triple>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SympSpaceDoc {
    pub omega: Rows,
}

/// Basis vectors are listed one per row.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub ambient: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Rows>,
    pub basis: Rows,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LinRelDoc {
    pub src: Rows,
    pub dst: Rows,
    pub basis: Rows,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default)]
    pub equivalence: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Rows>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum RelGpdDoc {
    Set {
        carrier: Vec<String>,
        triples: Vec<Triple>,
        inverse: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        morphism: Option<MorphismDoc>,
    },
    Linear {
        omega: Rows,
        basis: Rows,
        inverse: Rows,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        morphism: Option<MorphismDoc>,
    },
}

/// A polynomial as `(exponents, coefficient)` terms.
pub type PolyDoc = Vec<(Vec<u32>, String)>;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BivectorDoc {
    pub dim: usize,
    /// `a^{ij}`; zero when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<Rows>,
    /// `linear[k][i][j] = c^{ij}_k`; zero when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear: Option<Vec<Rows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<PolyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<PolyDoc>,
}

/// `constants[i][j][k] = c_{ij}^k`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LieConstantsDoc {
    pub dim: usize,
    pub constants: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn schema(field: &str, message: impl Into<String>) -> DocError {
    DocError::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Relation(_) => "relation",
            Document::Frobenius(_) => "frobenius",
            Document::Hstar(_) => "hstar",
            Document::Groupoid(_) => "groupoid",
            Document::Semigroupoid(_) => "semigroupoid",
            Document::WeakMonoid(_) => "weak-monoid",
            Document::StarMonoid(_) => "star-monoid",
            Document::CyclicMonoid(_) => "cyclic-monoid",
            Document::SympSpace(_) => "symp-space",
            Document::Subspace(_) => "subspace",
            Document::Linrel(_) => "linrel",
            Document::Relgpd(_) => "relgpd",
            Document::Bivector(_) => "bivector",
            Document::LieConstants(_) => "lie-constants",
        }
    }

    /// Builds the structure once so that every schema problem surfaces here.
    pub fn validate(&self) -> Result<(), DocError> {
        match self {
            Document::Relation(d) => relation(d).map(drop),
            Document::Frobenius(d) | Document::Hstar(d) => ternary(d).map(drop),
            Document::Groupoid(d) => groupoid(d).map(drop),
            Document::Semigroupoid(d) => semigroupoid(d).map(drop),
            Document::WeakMonoid(d) => weak_monoid(d).map(drop),
            Document::StarMonoid(d) => star_monoid(d).map(drop),
            Document::CyclicMonoid(d) => cyclic_monoid(d).map(drop),
            Document::SympSpace(d) => symp_space(d).map(drop),
            Document::Subspace(d) => subspace(d).map(drop),
            Document::Linrel(d) => linrel(d).map(drop),
            Document::Relgpd(d) => relgpd(d).map(drop),
            Document::Bivector(d) => bivector(d).map(drop),
            Document::LieConstants(d) => lie_constants(d).map(drop),
        }
    }
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => schema("document", strip_position(&e)),
            _ => DocError::Syntax {
                line: e.line(),
                column: e.column(),
                message: strip_position(&e),
            },
        }
    })?;
    doc.validate()?;
    Ok(doc)
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

pub fn read_document(path: &str) -> Result<Document, DocError> {
    let text = std::fs::read_to_string(path).map_err(|e| DocError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    parse_document(&text)
}

pub fn print_document(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

// ---- atoms and numbers ----

fn atom(field: &str, s: &str) -> Result<Atom, DocError> {
    s.parse::<Atom>().map_err(|e| schema(field, e.to_string()))
}

fn carrier(field: &str, atoms: &[String]) -> Result<Carrier, DocError> {
    let parsed: Result<Vec<Atom>, DocError> = atoms.iter().map(|s| atom(field, s)).collect();
    Carrier::new(parsed?).map_err(|e| schema(field, e.to_string()))
}

fn index(field: &str, c: &Carrier, s: &str) -> Result<usize, DocError> {
    let a = atom(field, s)?;
    c.index_of(&a)
        .ok_or_else(|| schema(field, format!("unknown atom {s:?}")))
}

fn triples(field: &str, c: &Carrier, ts: &[Triple]) -> Result<Vec<(usize, usize, usize)>, DocError> {
    ts.iter()
        .map(|(a, b, d)| Ok((index(field, c, a)?, index(field, c, b)?, index(field, c, d)?)))
        .collect()
}

/// A total map given as an object; every atom of `src` must appear.
fn table(field: &str, src: &Carrier, dst: &Carrier, m: &BTreeMap<String, String>) -> Result<Vec<usize>, DocError> {
    let mut out = vec![usize::MAX; src.len()];
    for (k, v) in m {
        out[index(field, src, k)?] = index(field, dst, v)?;
    }
    if let Some(i) = out.iter().position(|&v| v == usize::MAX) {
        return Err(schema(field, format!("no entry for {}", src.atom(i))));
    }
    Ok(out)
}

fn table_doc(src: &Carrier, dst: &Carrier, f: impl Fn(usize) -> usize) -> BTreeMap<String, String> {
    (0..src.len())
        .map(|i| (src.atom(i).to_string(), dst.atom(f(i)).to_string()))
        .collect()
}

fn atoms_doc(c: &Carrier) -> Vec<String> {
    c.atoms().iter().map(|a| a.to_string()).collect()
}

fn rational(field: &str, s: &str) -> Result<Q, DocError> {
    parse_rational(s).map_err(|e| schema(field, e.to_string()))
}

fn vectors(field: &str, rows: &Rows, len: usize) -> Result<Vec<Vec<Q>>, DocError> {
    rows.iter()
        .map(|r| {
            if r.len() != len {
                return Err(schema(field, format!("expected {len} entries, got {}", r.len())));
            }
            r.iter().map(|s| rational(field, s)).collect()
        })
        .collect()
}

fn matrix(field: &str, rows: &Rows, n: usize) -> Result<Matrix, DocError> {
    if rows.len() != n {
        return Err(schema(field, format!("expected {n} rows, got {}", rows.len())));
    }
    let v = vectors(field, rows, n)?;
    Ok(if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(v) })
}

fn square(field: &str, rows: &Rows) -> Result<Matrix, DocError> {
    matrix(field, rows, rows.len())
}

fn rows_doc(m: &Matrix) -> Rows {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn basis_doc(s: &Subspace) -> Rows {
    s.basis_vectors()
        .iter()
        .map(|v| v.iter().map(format_rational).collect())
        .collect()
}

// ---- document → structure ----

pub fn relation(d: &RelationDoc) -> Result<Rel, DocError> {
    let src = carrier("src", &d.src)?;
    let dst = carrier("dst", &d.dst)?;
    let pairs: Result<Vec<(usize, usize)>, DocError> = d
        .pairs
        .iter()
        .map(|(a, b)| Ok((index("pairs", &src, a)?, index("pairs", &dst, b)?)))
        .collect();
    Ok(Rel::from_index_pairs(&src, &dst, pairs?))
}

pub fn ternary(d: &TernaryDoc) -> Result<FrobCandidate, DocError> {
    let x = carrier("carrier", &d.carrier)?;
    let t = triples("triples", &x, &d.triples)?;
    Ok(FrobCandidate::from_index_triples(&x, t))
}

pub fn groupoid(d: &GroupoidDoc) -> Result<Groupoid, DocError> {
    let objects = carrier("objects", &d.objects)?;
    let arrows = carrier("arrows", &d.arrows)?;
    let source = table("source", &arrows, &objects, &d.source)?;
    let target = table("target", &arrows, &objects, &d.target)?;
    let unit = table("unit", &objects, &arrows, &d.unit)?;
    let inverse = table("inverse", &arrows, &arrows, &d.inverse)?;
    let compose = triples("compose", &arrows, &d.compose)?;
    Groupoid::from_tables(&objects, &arrows, source, target, unit, inverse, compose)
        .map_err(|e| schema("compose", e.to_string()))
}

pub fn semigroupoid(d: &SemigroupoidDoc) -> Result<Semigroupoid, DocError> {
    let objects = carrier("objects", &d.objects)?;
    let arrows = carrier("arrows", &d.arrows)?;
    let source = table("source", &arrows, &objects, &d.source)?;
    let target = table("target", &arrows, &objects, &d.target)?;
    let compose = triples("compose", &arrows, &d.compose)?;
    Semigroupoid::from_tables(&objects, &arrows, source, target, compose)
        .map_err(|e| schema("compose", e.to_string()))
}

fn ternary_rel(field: &str, x: &Carrier, ts: &[Triple]) -> Result<Rel, DocError> {
    let xx = x.product(x);
    let t = triples(field, x, ts)?;
    Ok(Rel::from_index_pairs(&xx, x, t.into_iter().map(|(a, b, c)| (xx.pair_index(a, b), c))))
}

pub fn weak_monoid(d: &WeakMonoidDoc) -> Result<WeakMonoidCandidate, DocError> {
    let x = carrier("carrier", &d.carrier)?;
    let l1: Result<Vec<usize>, DocError> = d.l1.iter().map(|s| index("l1", &x, s)).collect();
    let l3 = ternary_rel("l3", &x, &d.l3)?;
    WeakMonoidCandidate::new(&x, Rel::subset(&x, &l1?), l3).map_err(|e| schema("l3", e.to_string()))
}

pub fn star_monoid(d: &StarMonoidDoc) -> Result<StarMonoidCandidate, DocError> {
    let x = carrier("carrier", &d.carrier)?;
    let l3 = ternary_rel("l3", &x, &d.l3)?;
    let psi = table("psi", &x, &x, &d.psi)?;
    StarMonoidCandidate::new(&x, l3, psi).map_err(|e| schema("psi", e.to_string()))
}

pub fn cyclic_monoid(d: &CyclicMonoidDoc) -> Result<CyclicCandidate, DocError> {
    let x = carrier("carrier", &d.carrier)?;
    let l = ternary_rel("l", &x, &d.l)?;
    let psi = table("psi", &x, &x, &d.psi)?;
    CyclicCandidate::new(&x, psi, l).map_err(|e| schema("psi", e.to_string()))
}

fn form(field: &str, rows: &Rows) -> Result<SympSpace, DocError> {
    SympSpace::new(square(field, rows)?).map_err(|e| schema(field, e.to_string()))
}

pub fn symp_space(d: &SympSpaceDoc) -> Result<SympSpace, DocError> {
    form("omega", &d.omega)
}

/// The ambient form (if given) and the subspace.
pub fn subspace(d: &SubspaceDoc) -> Result<(Option<SympSpace>, Subspace), DocError> {
    let v = match &d.omega {
        Some(rows) => {
            let v = form("omega", rows)?;
            if v.dim() != d.ambient {
                return Err(schema("ambient", format!("omega is {0}×{0}", v.dim())));
            }
            Some(v)
        }
        None => None,
    };
    let basis = vectors("basis", &d.basis, d.ambient)?;
    Ok((v, Subspace::span(d.ambient, &basis)))
}

pub fn linrel(d: &LinRelDoc) -> Result<LinRelation, DocError> {
    let src = form("src", &d.src)?;
    let dst = form("dst", &d.dst)?;
    let n = src.dim() + dst.dim();
    let basis = vectors("basis", &d.basis, n)?;
    LinRelation::new(&src, &dst, Subspace::span(n, &basis)).map_err(|e| schema("basis", e.to_string()))
}

/// The candidate and its optional morphism block (validated against the
/// source carrier only; the target is supplied separately).
pub fn relgpd(d: &RelGpdDoc) -> Result<(RelGroupoidCandidate, Option<MorphismDoc>), DocError> {
    match d {
        RelGpdDoc::Set {
            carrier: atoms,
            triples: ts,
            inverse,
            morphism,
        } => {
            let g = carrier("carrier", atoms)?;
            let t = triples("triples", &g, ts)?;
            let inv = table("inverse", &g, &g, inverse)?;
            if let Some(m) = morphism {
                let pairs = m.pairs.as_ref().ok_or_else(|| schema("morphism", "set mode needs `pairs`"))?;
                for (a, _) in pairs {
                    index("morphism", &g, a)?;
                }
            }
            Ok((
                RelGroupoidCandidate::Set(SetCandidate::from_indices(&g, t, inv)),
                morphism.clone(),
            ))
        }
        RelGpdDoc::Linear {
            omega,
            basis,
            inverse,
            morphism,
        } => {
            let g = form("omega", omega)?;
            let d = g.dim();
            let l = Subspace::span(3 * d, &vectors("basis", basis, 3 * d)?);
            let inv = matrix("inverse", inverse, d)?;
            if let Some(m) = morphism {
                if m.basis.is_none() {
                    return Err(schema("morphism", "linear mode needs `basis`"));
                }
            }
            let c = LinearCandidate::new(&g, l, inv).map_err(|e| schema("inverse", e.to_string()))?;
            Ok((RelGroupoidCandidate::Linear(c), morphism.clone()))
        }
    }
}

fn poly(field: &str, n: usize, terms: &PolyDoc) -> Result<PolyFunction, DocError> {
    let parsed: Result<Vec<(Vec<u32>, Q)>, DocError> = terms
        .iter()
        .map(|(e, c)| Ok((e.clone(), rational(field, c)?)))
        .collect();
    PolyFunction::from_terms(n, parsed?).map_err(|e| schema(field, e.to_string()))
}

/// The bivector and the optional functions `f`, `g`.
pub fn bivector(d: &BivectorDoc) -> Result<(PolyBivector, Option<PolyFunction>, Option<PolyFunction>), DocError> {
    let n = d.dim;
    let constant = match &d.constant {
        Some(rows) => matrix("constant", rows, n)?,
        None => Matrix::zeros(n, n),
    };
    let linear = match &d.linear {
        Some(blocks) => {
            if blocks.len() != n {
                return Err(schema("linear", format!("expected {n} blocks")));
            }
            let mut out = Vec::new();
            for b in blocks {
                out.push(matrix("linear", b, n)?);
            }
            out
        }
        None => vec![Matrix::zeros(n, n); n],
    };
    let p = PolyBivector::new(constant, linear).map_err(|e| schema("linear", e.to_string()))?;
    let f = d.f.as_ref().map(|t| poly("f", n, t)).transpose()?;
    let g = d.g.as_ref().map(|t| poly("g", n, t)).transpose()?;
    Ok((p, f, g))
}

pub fn lie_constants(d: &LieConstantsDoc) -> Result<Vec<Vec<Vec<Q>>>, DocError> {
    let n = d.dim;
    if d.constants.len() != n {
        return Err(schema("constants", format!("expected {n} slices")));
    }
    let c: Result<Vec<Vec<Vec<Q>>>, DocError> = d
        .constants
        .iter()
        .map(|slice| {
            if slice.len() != n {
                return Err(schema("constants", format!("expected {n} rows per slice")));
            }
            vectors("constants", slice, n)
        })
        .collect();
    let c = c?;
    from_structure_constants(&c).map_err(|e| schema("constants", e.to_string()))?;
    Ok(c)
}

// ---- structure → document ----

pub fn relation_doc(r: &Rel) -> Document {
    Document::Relation(RelationDoc {
        src: atoms_doc(r.src()),
        dst: atoms_doc(r.dst()),
        pairs: r.pairs().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
    })
}

fn ternary_doc(c: &FrobCandidate) -> TernaryDoc {
    TernaryDoc {
        carrier: atoms_doc(c.carrier()),
        triples: c
            .triples()
            .into_iter()
            .map(|(a, b, d)| (a.to_string(), b.to_string(), d.to_string()))
            .collect(),
    }
}

pub fn frobenius_doc(c: &FrobCandidate) -> Document {
    Document::Frobenius(ternary_doc(c))
}

pub fn hstar_doc(c: &FrobCandidate) -> Document {
    Document::Hstar(ternary_doc(c))
}

fn triple_doc(c: &Carrier, (a, b, d): (usize, usize, usize)) -> Triple {
    (c.atom(a).to_string(), c.atom(b).to_string(), c.atom(d).to_string())
}

pub fn groupoid_doc(g: &Groupoid) -> Document {
    let (o, a) = (g.objects(), g.arrows());
    Document::Groupoid(GroupoidDoc {
        objects: atoms_doc(o),
        arrows: atoms_doc(a),
        source: table_doc(a, o, |i| g.source(i)),
        target: table_doc(a, o, |i| g.target(i)),
        unit: table_doc(o, a, |i| g.unit(i)),
        inverse: table_doc(a, a, |i| g.inverse(i)),
        compose: g.compositions().map(|t| triple_doc(a, t)).collect(),
    })
}

pub fn semigroupoid_doc(s: &Semigroupoid) -> Document {
    let (o, a) = (s.objects(), s.arrows());
    Document::Semigroupoid(SemigroupoidDoc {
        objects: atoms_doc(o),
        arrows: atoms_doc(a),
        source: table_doc(a, o, |i| s.source(i)),
        target: table_doc(a, o, |i| s.target(i)),
        compose: s.compositions().map(|t| triple_doc(a, t)).collect(),
    })
}

pub fn symp_space_doc(v: &SympSpace) -> Document {
    Document::SympSpace(SympSpaceDoc {
        omega: rows_doc(v.omega()),
    })
}

pub fn subspace_doc(v: Option<&SympSpace>, s: &Subspace) -> Document {
    Document::Subspace(SubspaceDoc {
        ambient: s.ambient_dim(),
        omega: v.map(|v| rows_doc(v.omega())),
        basis: basis_doc(s),
    })
}

pub fn linrel_doc(l: &LinRelation) -> Document {
    Document::Linrel(LinRelDoc {
        src: rows_doc(l.src.omega()),
        dst: rows_doc(l.dst.omega()),
        basis: basis_doc(&l.space),
    })
}

pub fn relgpd_doc(c: &RelGroupoidCandidate) -> Document {
    Document::Relgpd(match c {
        RelGroupoidCandidate::Set(s) => {
            let g = s.carrier();
            RelGpdDoc::Set {
                carrier: atoms_doc(g),
                triples: s.index_triples().into_iter().map(|t| triple_doc(g, t)).collect(),
                inverse: table_doc(g, g, |i| s.inv()[i]),
                morphism: None,
            }
        }
        RelGroupoidCandidate::Linear(l) => RelGpdDoc::Linear {
            omega: rows_doc(l.space().omega()),
            basis: basis_doc(l.l()),
            inverse: rows_doc(l.inv()),
            morphism: None,
        },
    })
}

fn poly_doc(f: &PolyFunction) -> PolyDoc {
    f.terms().map(|(e, c)| (e.clone(), format_rational(c))).collect()
}

pub fn bivector_doc(p: &PolyBivector, f: Option<&PolyFunction>, g: Option<&PolyFunction>) -> Document {
    Document::Bivector(BivectorDoc {
        dim: p.dim(),
        constant: Some(rows_doc(p.constant())),
        linear: Some(p.linear().iter().map(rows_doc).collect()),
        f: f.map(poly_doc),
        g: g.map(poly_doc),
    })
}

pub fn lie_constants_doc(c: &[Vec<Vec<Q>>]) -> Document {
    Document::LieConstants(LieConstantsDoc {
        dim: c.len(),
        constants: c
            .iter()
            .map(|slice| slice.iter().map(|row| row.iter().map(format_rational).collect()).collect())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relgpd::{build_example, Example};

    #[test]
    fn minimal_relation() {
        let text = r#"{"kind": "relation", "src": ["a","b"], "dst": ["a","b"], "pairs": [["a","b"]]}"#;
        let doc = parse_document(text).unwrap();
        let r = match &doc {
            Document::Relation(d) => relation(d).unwrap(),
            _ => panic!(),
        };
        assert_eq!(r.len(), 1);
        assert_eq!(parse_document(&print_document(&doc)).unwrap(), doc);
    }

    #[test]
    fn zero_denominator_is_a_schema_error() {
        let text = r#"{"kind": "symp-space", "omega": [["0","1/0"],["-1","0"]]}"#;
        assert!(matches!(parse_document(text), Err(DocError::Schema { ref field, .. }) if field == "omega"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = "{\n  \"kind\": \"relation\",\n  \"src\": [\"a\" \"b\"]\n}";
        match parse_document(text) {
            Err(DocError::Syntax { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_atoms_and_unknown_fields() {
        let dup = r#"{"kind": "relation", "src": ["a","a"], "dst": [], "pairs": []}"#;
        assert!(matches!(parse_document(dup), Err(DocError::Schema { .. })));
        let extra = r#"{"kind": "relation", "src": [], "dst": [], "pairs": [], "oops": 1}"#;
        assert!(matches!(parse_document(extra), Err(DocError::Schema { .. })));
        let unknown = r#"{"kind": "relation", "src": ["a"], "dst": ["a"], "pairs": [["a","z"]]}"#;
        assert!(matches!(parse_document(unknown), Err(DocError::Schema { .. })));
        let kind = r#"{"kind": "nonsense"}"#;
        assert!(matches!(parse_document(kind), Err(DocError::Schema { .. })));
    }

    #[test]
    fn counterexample_document_round_trip() {
        let c = build_example(Example::CyclicCounterexample(5)).unwrap();
        let doc = relgpd_doc(&c);
        let back = parse_document(&print_document(&doc)).unwrap();
        assert_eq!(back, doc);
        match &back {
            Document::Relgpd(d) => assert_eq!(relgpd(d).unwrap().0, c),
            _ => panic!(),
        }
    }

    #[test]
    fn linear_relgpd_round_trip() {
        let c = build_example(Example::LinearPairGroupoid(SympSpace::standard(1))).unwrap();
        let doc = relgpd_doc(&c);
        let back = parse_document(&print_document(&doc)).unwrap();
        assert_eq!(back, doc);
        match &back {
            Document::Relgpd(d) => assert_eq!(relgpd(d).unwrap().0, c),
            _ => panic!(),
        }
    }
}
