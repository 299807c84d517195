//! JSON documents: one schema per kind, scalars as strings, matrices as
//! row-major nested arrays, objects referred to by name.
//!
//! Loading checks structure only (shapes, names, scalars); the axioms of
//! each kind are checked by [`check_document`].
//!
//! Output is canonical (fixed key order and layout, entries omitted exactly
//! when they are zero), so writing a parsed canonical file reproduces it
//! byte for byte.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Map, Value};

use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::groupoid::{Edge, FinCategory, FinGraph};
use crate::coalg::{check_coalgebra, CoalgebraMorphism};
use crate::hopf::{check_antipode_properties, check_semihopf_morphism, Antipode, HopfCategory};
use crate::vcat::{check_semihopf, check_vcategory};
use crate::kernel::snf::IntMatrix;
use crate::kernel::{ExactMatrix, Field, Scalar};
use crate::modflat::{FgModule, ModMap, Ring};
use crate::vcat::{SemiHopfCategory, VCategory};
use crate::vgraph::{VGraph, VGraphMorphism};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    VGraph(VGraph),
    Coalgebra(Coalgebra),
    VCategory(VCategory),
    SemiHopf(SemiHopfCategory),
    Hopf(HopfCategory),
    Graph(FinGraph),
    FinCategory(FinCategory),
    FgModule(FgModule),
    Morphism(Morphism),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: Option<Box<Document>>,
    pub target: Option<Box<Document>>,
    pub body: MorphismBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismBody {
    /// Between documents with an underlying V-graph.
    Graph(VGraphMorphism),
    /// A plain matrix over a field, e.g. out of a coalgebra.
    Linear(ExactMatrix),
    Module(ModMap),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::VGraph(_) => "vgraph",
            Document::Coalgebra(_) => "coalgebra",
            Document::VCategory(_) => "vcategory",
            Document::SemiHopf(_) => "semihopf",
            Document::Hopf(_) => "hopf",
            Document::Graph(_) => "graph",
            Document::FinCategory(_) => "fincategory",
            Document::FgModule(_) => "fgmodule",
            Document::Morphism(_) => "morphism",
        }
    }

    /// The underlying V-graph, for kinds that have one.
    pub fn vgraph(&self) -> Option<&VGraph> {
        match self {
            Document::VGraph(g) => Some(g),
            Document::VCategory(c) => Some(c.graph()),
            Document::SemiHopf(a) => Some(a.graph()),
            Document::Hopf(h) => Some(h.semihopf().graph()),
            _ => None,
        }
    }

    pub fn semihopf(&self) -> Option<&SemiHopfCategory> {
        match self {
            Document::SemiHopf(a) => Some(a),
            Document::Hopf(h) => Some(h.semihopf()),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<Field> {
        match self {
            Document::Coalgebra(c) => Some(c.field()),
            Document::Morphism(m) => match &m.body {
                MorphismBody::Graph(g) => Some(g.source().field()),
                MorphismBody::Linear(l) => Some(l.field()),
                MorphismBody::Module(_) => None,
            },
            other => other.vgraph().map(VGraph::field),
        }
    }
}

/// Axiom violations of a loaded document, one line each, sorted by object
/// tuple and basis index. Empty means valid.
pub fn check_document(doc: &Document) -> Result<Vec<String>> {
    let lines = match doc {
        Document::Coalgebra(c) => coalgebra_failures(c),
        Document::VCategory(c) => check_vcategory(c).sorted().render(c.graph().objects()),
        Document::SemiHopf(a) => check_semihopf(a).sorted().render(a.graph().objects()),
        Document::Hopf(h) => {
            let a = h.semihopf();
            let mut r = check_semihopf(a);
            r.extend(check_antipode_properties(a, h.antipode())?);
            r.sorted().render(a.graph().objects())
        }
        Document::Morphism(m) => {
            let mut lines = Vec::new();
            for (what, d) in [("source", &m.source), ("target", &m.target)] {
                if let Some(d) = d {
                    lines.extend(check_document(d)?.into_iter().map(|l| format!("{what}: {l}")));
                }
            }
            lines.extend(morphism_failures(m)?);
            lines
        }
        Document::VGraph(_) | Document::Graph(_) | Document::FinCategory(_) | Document::FgModule(_) => Vec::new(),
    };
    Ok(lines)
}

fn coalgebra_failures(c: &Coalgebra) -> Vec<String> {
    check_coalgebra(c)
        .iter()
        .map(|f| format!("{:?} fails on basis vector {}", f.axiom, f.basis_index))
        .collect()
}

fn morphism_failures(m: &Morphism) -> Result<Vec<String>> {
    let (Some(s), Some(t)) = (m.source.as_deref(), m.target.as_deref()) else {
        return Ok(Vec::new());
    };
    Ok(match &m.body {
        MorphismBody::Graph(f) => match (s.semihopf(), t.semihopf()) {
            (Some(a), Some(b)) => check_semihopf_morphism(a, b, f).sorted().render(a.graph().objects()),
            _ => Vec::new(),
        },
        MorphismBody::Linear(l) => match (s, t) {
            (Document::Coalgebra(c), Document::Coalgebra(d)) => {
                match CoalgebraMorphism::new(c.clone(), d.clone(), l.clone()) {
                    Ok(_) => Vec::new(),
                    Err(e) => vec![e.to_string()],
                }
            }
            _ => Vec::new(),
        },
        MorphismBody::Module(_) => Vec::new(),
    })
}

// ---------------------------------------------------------------- parsing

/// A scalar literal: a JSON string `"a"` or `"a/b"`, or a JSON integer.
#[derive(Clone, Debug)]
struct Lit(String);

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Lit, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Lit;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a scalar: an integer or a string \"p\" or \"p/q\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Lit, E> {
                Ok(Lit(v.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Lit, E> {
                Ok(Lit(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Lit, E> {
                Ok(Lit(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

type RawMatrix = Vec<Vec<Lit>>;

#[derive(Deserialize)]
struct Header {
    schema_version: u64,
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVGraph {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    field: String,
    objects: Vec<String>,
    dims: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoalgebra {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    field: String,
    dim: usize,
    delta: RawMatrix,
    epsilon: Vec<Lit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCompose {
    x: String,
    y: String,
    z: String,
    matrix: RawMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHomCoalgebra {
    x: String,
    y: String,
    delta: RawMatrix,
    epsilon: Vec<Lit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    x: String,
    y: String,
    matrix: RawMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    field: String,
    objects: Vec<String>,
    dims: Vec<Vec<usize>>,
    #[serde(default)]
    compose: Vec<RawCompose>,
    units: Vec<Vec<Lit>>,
    #[serde(default)]
    coalgebras: Option<Vec<RawHomCoalgebra>>,
    #[serde(default)]
    antipode: Option<Vec<RawComponent>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinCategory {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    objects: Vec<String>,
    arrows: Vec<RawEdge>,
    identities: Vec<String>,
    compose: Vec<[String; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    ring: String,
    generators: usize,
    relations: RawMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    #[allow(dead_code)]
    schema_version: u64,
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    source: Option<Value>,
    #[serde(default)]
    target: Option<Value>,
    #[serde(default)]
    object_map: Option<Vec<String>>,
    #[serde(default)]
    components: Option<Vec<RawComponent>>,
    #[serde(default)]
    matrix: Option<RawMatrix>,
}

// serde_json appends "at line L column C" where it knows the position
fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn from_text<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let header: Header = from_text(text)?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            header.schema_version
        )));
    }
    match header.kind.as_str() {
        "vgraph" => {
            let r: RawVGraph = from_text(text)?;
            Ok(Document::VGraph(build_vgraph(&r.field, r.objects, &r.dims)?))
        }
        "coalgebra" => {
            let r: RawCoalgebra = from_text(text)?;
            let field: Field = r.field.parse()?;
            let delta = matrix(field, &r.delta, r.dim * r.dim, r.dim, "delta")?;
            let eps = matrix(field, &[r.epsilon], 1, r.dim, "epsilon")?;
            Ok(Document::Coalgebra(Coalgebra::new(delta, eps)?))
        }
        "vcategory" | "semihopf" | "hopf" => {
            let r: RawCategory = from_text(text)?;
            build_category(&header.kind, r)
        }
        "graph" => {
            let r: RawGraph = from_text(text)?;
            let edges = edges(&r.vertices, &r.edges)?;
            Ok(Document::Graph(FinGraph::new(r.vertices, edges)?))
        }
        "fincategory" => {
            let r: RawFinCategory = from_text(text)?;
            let arrows = edges(&r.objects, &r.arrows)?;
            let arrow = |id: &str| {
                arrows
                    .iter()
                    .position(|a| a.id == id)
                    .ok_or_else(|| Error::Parse(format!("unknown arrow `{id}`")))
            };
            let identities = r.identities.iter().map(|i| arrow(i)).collect::<Result<Vec<_>>>()?;
            let compose = r
                .compose
                .iter()
                .map(|[a, b, c]| Ok((arrow(a)?, arrow(b)?, arrow(c)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::FinCategory(FinCategory::new(r.objects, arrows, identities, &compose)?))
        }
        "fgmodule" => {
            let r: RawModule = from_text(text)?;
            Ok(Document::FgModule(build_module(r)?))
        }
        "morphism" => {
            let r: RawMorphism = from_text(text)?;
            Ok(Document::Morphism(build_morphism(r)?))
        }
        other => Err(Error::Parse(format!("unknown document kind `{other}`"))),
    }
}

fn scalar(field: Field, l: &Lit, what: &str) -> Result<Scalar> {
    field
        .parse_scalar(&l.0)
        .map_err(|e| Error::Parse(format!("{what}: {}", e.to_string().trim_start_matches("parse error: "))))
}

fn matrix(field: Field, rows: &[Vec<Lit>], r: usize, c: usize, what: &str) -> Result<ExactMatrix> {
    if rows.len() != r {
        return Err(Error::Parse(format!("{what}: expected {r} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::Parse(format!("{what}: row {i} has {} entries, expected {c}", row.len())));
        }
        for l in row {
            data.push(scalar(field, l, what)?);
        }
    }
    ExactMatrix::from_vec(field, r, c, data)
}

fn int_matrix(rows: &[Vec<Lit>], r: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != r {
        return Err(Error::Parse(format!("{what}: expected {r} rows, found {}", rows.len())));
    }
    let c = rows.first().map_or(0, Vec::len);
    let mut data = Vec::with_capacity(r * c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::Parse(format!("{what}: row {i} has {} entries, expected {c}", row.len())));
        }
        for l in row {
            let v: BigInt = l
                .0
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{what}: `{}` is not an integer", l.0)))?;
            data.push(v);
        }
    }
    IntMatrix::from_vec(r, c, data)
}

fn index(objects: &[String], name: &str) -> Result<usize> {
    objects
        .iter()
        .position(|o| o == name)
        .ok_or_else(|| Error::UnknownObject(name.to_string()))
}

fn build_vgraph(field: &str, objects: Vec<String>, dims: &[Vec<usize>]) -> Result<VGraph> {
    let field: Field = field.parse()?;
    let n = objects.len();
    if dims.len() != n || dims.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("dims must be a {n}x{n} array")));
    }
    VGraph::new(field, objects, dims.concat())
}

fn build_category(kind: &str, r: RawCategory) -> Result<Document> {
    let graph = build_vgraph(&r.field, r.objects, &r.dims)?;
    let field = graph.field();
    let n = graph.len();
    let names = graph.objects().to_vec();
    let mut m: Vec<ExactMatrix> = (0..n * n * n)
        .map(|k| {
            let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
            ExactMatrix::zeros(field, graph.hom_dim(x, z), graph.hom_dim(x, y) * graph.hom_dim(y, z))
        })
        .collect();
    for (i, c) in r.compose.iter().enumerate() {
        let (x, y, z) = (index(&names, &c.x)?, index(&names, &c.y)?, index(&names, &c.z)?);
        let what = format!("compose[{i}]");
        m[(x * n + y) * n + z] = matrix(
            field,
            &c.matrix,
            graph.hom_dim(x, z),
            graph.hom_dim(x, y) * graph.hom_dim(y, z),
            &what,
        )?;
    }
    if r.units.len() != n {
        return Err(Error::Parse(format!("units: expected one vector per object ({n})")));
    }
    let j = r
        .units
        .iter()
        .enumerate()
        .map(|(x, u)| matrix(field, std::slice::from_ref(u), 1, graph.hom_dim(x, x), "units").map(|m| m.row(0)))
        .collect::<Result<Vec<_>>>()?;
    let cat = VCategory::new(graph.clone(), m, j)?;
    let has_coalgebras = r.coalgebras.is_some();
    match (kind, has_coalgebras, r.antipode.is_some()) {
        ("vcategory", false, false) => return Ok(Document::VCategory(cat)),
        ("vcategory", _, _) => return Err(Error::Parse("a vcategory has no coalgebras or antipode".into())),
        ("semihopf", true, false) | ("hopf", true, true) => {}
        ("semihopf", _, _) => return Err(Error::Parse("a semihopf document needs coalgebras and no antipode".into())),
        _ => return Err(Error::Parse("a hopf document needs coalgebras and an antipode".into())),
    }
    let mut coalgebras: Vec<Option<Coalgebra>> = vec![None; n * n];
    for (i, c) in r.coalgebras.unwrap_or_default().iter().enumerate() {
        let (x, y) = (index(&names, &c.x)?, index(&names, &c.y)?);
        let d = graph.hom_dim(x, y);
        let what = format!("coalgebras[{i}]");
        let delta = matrix(field, &c.delta, d * d, d, &what)?;
        let eps = matrix(field, std::slice::from_ref(&c.epsilon), 1, d, &what)?;
        coalgebras[x * n + y] = Some(Coalgebra::new(delta, eps)?);
    }
    let coalgebras = graph
        .pairs()
        .zip(coalgebras)
        .map(|((x, y), c)| match c {
            Some(c) => Ok(c),
            None if graph.hom_dim(x, y) == 0 => Ok(Coalgebra::zero(field)),
            None => Err(Error::Parse(format!("missing coalgebra on ({}, {})", names[x], names[y]))),
        })
        .collect::<Result<Vec<_>>>()?;
    let a = SemiHopfCategory::new(cat, coalgebras)?;
    let Some(raw_s) = r.antipode else {
        return Ok(Document::SemiHopf(a));
    };
    let mut comps: Vec<ExactMatrix> = graph
        .pairs()
        .map(|(x, y)| ExactMatrix::zeros(field, graph.hom_dim(y, x), graph.hom_dim(x, y)))
        .collect();
    for (i, c) in raw_s.iter().enumerate() {
        let (x, y) = (index(&names, &c.x)?, index(&names, &c.y)?);
        comps[x * n + y] = matrix(field, &c.matrix, graph.hom_dim(y, x), graph.hom_dim(x, y), &format!("antipode[{i}]"))?;
    }
    let s = Antipode::new(&a, comps)?;
    Ok(Document::Hopf(HopfCategory::new_unchecked(a, s)))
}

fn edges(vertices: &[String], raw: &[RawEdge]) -> Result<Vec<Edge>> {
    raw.iter()
        .map(|e| {
            Ok(Edge {
                id: e.id.clone(),
                src: index(vertices, &e.src)?,
                tgt: index(vertices, &e.tgt)?,
            })
        })
        .collect()
}

fn build_module(r: RawModule) -> Result<FgModule> {
    let ring: Ring = r.ring.parse()?;
    let rel = int_matrix(&r.relations, r.generators, "relations")?;
    FgModule::new(ring, rel)
}

fn build_morphism(r: RawMorphism) -> Result<Morphism> {
    let sub = |v: &Option<Value>, what: &str| -> Result<Option<Box<Document>>> {
        match v {
            None => Ok(None),
            Some(v) => parse_document(&v.to_string())
                .map(|d| Some(Box::new(d)))
                .map_err(|e| Error::Parse(format!("in {what}: {}", e.to_string().trim_start_matches("parse error: ")))),
        }
    };
    let source = sub(&r.source, "source")?;
    let target = sub(&r.target, "target")?;
    let body = match (source.as_deref(), target.as_deref()) {
        (Some(Document::FgModule(s)), Some(Document::FgModule(t))) => {
            let raw = r.matrix.as_ref().ok_or_else(|| Error::Parse("module map needs a matrix".into()))?;
            let m = int_matrix(raw, t.generators(), "matrix")?;
            let m = if raw.is_empty() { IntMatrix::zeros(0, s.generators()) } else { m };
            MorphismBody::Module(ModMap::new(s.clone(), t.clone(), m)?)
        }
        (Some(s), Some(t)) if s.vgraph().is_some() && t.vgraph().is_some() => {
            let (sg, tg) = (s.vgraph().expect("checked"), t.vgraph().expect("checked"));
            let names = sg.objects();
            let om = r
                .object_map
                .as_ref()
                .ok_or_else(|| Error::Parse("missing object_map".into()))?;
            if om.len() != names.len() {
                return Err(Error::Parse("object_map needs one entry per source object".into()));
            }
            let om = om.iter().map(|t| index(tg.objects(), t)).collect::<Result<Vec<_>>>()?;
            let n = sg.len();
            let field = sg.field();
            let mut comps: Vec<ExactMatrix> = sg
                .pairs()
                .map(|(x, y)| ExactMatrix::zeros(field, tg.hom_dim(om[x], om[y]), sg.hom_dim(x, y)))
                .collect();
            for (i, c) in r.components.iter().flatten().enumerate() {
                let (x, y) = (index(names, &c.x)?, index(names, &c.y)?);
                comps[x * n + y] = matrix(
                    field,
                    &c.matrix,
                    tg.hom_dim(om[x], om[y]),
                    sg.hom_dim(x, y),
                    &format!("components[{i}]"),
                )?;
            }
            MorphismBody::Graph(VGraphMorphism::new(sg.clone(), tg.clone(), om, comps)?)
        }
        _ => {
            let raw = r
                .matrix
                .as_ref()
                .ok_or_else(|| Error::Parse("a linear map needs a matrix".into()))?;
            let field = match (&r.field, source.as_deref().and_then(Document::field)) {
                (Some(f), _) => f.parse()?,
                (None, Some(f)) => f,
                (None, None) => return Err(Error::Parse("a linear map needs a field".into())),
            };
            let cols = match source.as_deref() {
                Some(Document::Coalgebra(c)) => c.dim(),
                _ => raw.first().map_or(0, Vec::len),
            };
            let m = matrix(field, raw, raw.len(), cols, "matrix")?;
            if let (Some(t), Some(f)) = (target.as_deref().and_then(Document::field), r.field.as_ref()) {
                if t.to_string() != *f {
                    return Err(Error::Parse("field disagrees with the target".into()));
                }
            }
            MorphismBody::Linear(m)
        }
    };
    Ok(Morphism { source, target, body })
}

// ---------------------------------------------------------------- writing

fn lit(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn mat(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(lit).collect())).collect())
}

fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(lit).collect())
}

fn int_mat(m: &IntMatrix, rows: usize) -> Value {
    Value::Array(
        (0..rows)
            .map(|i| Value::Array((0..m.cols()).map(|j| Value::String(m.get(i, j).to_string())).collect()))
            .collect(),
    )
}

fn header(kind: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("kind".into(), json!(kind));
    m
}

fn graph_fields(m: &mut Map<String, Value>, g: &VGraph) {
    let n = g.len();
    m.insert("field".into(), json!(g.field().to_string()));
    m.insert("objects".into(), json!(g.objects()));
    let dims: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| g.hom_dim(x, y)).collect()).collect();
    m.insert("dims".into(), json!(dims));
}

fn category_fields(m: &mut Map<String, Value>, c: &VCategory) {
    graph_fields(m, c.graph());
    let n = c.len();
    let names = c.graph().objects();
    let mut compose = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mm = c.m(x, y, z);
                if !mm.is_zero() {
                    compose.push(json!({"x": names[x], "y": names[y], "z": names[z], "matrix": mat(mm)}));
                }
            }
        }
    }
    m.insert("compose".into(), Value::Array(compose));
    m.insert("units".into(), Value::Array((0..n).map(|x| vector(c.j(x))).collect()));
}

fn semihopf_fields(m: &mut Map<String, Value>, a: &SemiHopfCategory) {
    category_fields(m, a.cat());
    let names = a.graph().objects();
    let coalgebras: Vec<Value> = a
        .graph()
        .pairs()
        .filter(|&(x, y)| a.hom_dim(x, y) > 0)
        .map(|(x, y)| {
            let c = a.coalgebra(x, y);
            json!({"x": names[x], "y": names[y], "delta": mat(c.delta()), "epsilon": vector(&c.epsilon().row(0))})
        })
        .collect();
    m.insert("coalgebras".into(), Value::Array(coalgebras));
}

pub fn to_value(doc: &Document) -> Value {
    let mut m = header(doc.kind());
    match doc {
        Document::VGraph(g) => graph_fields(&mut m, g),
        Document::Coalgebra(c) => {
            m.insert("field".into(), json!(c.field().to_string()));
            m.insert("dim".into(), json!(c.dim()));
            m.insert("delta".into(), mat(c.delta()));
            m.insert("epsilon".into(), vector(&c.epsilon().row(0)));
        }
        Document::VCategory(c) => category_fields(&mut m, c),
        Document::SemiHopf(a) => semihopf_fields(&mut m, a),
        Document::Hopf(h) => {
            let a = h.semihopf();
            semihopf_fields(&mut m, a);
            let names = a.graph().objects();
            let s: Vec<Value> = a
                .graph()
                .pairs()
                .filter(|&(x, y)| !h.antipode().component(x, y).is_zero())
                .map(|(x, y)| json!({"x": names[x], "y": names[y], "matrix": mat(h.antipode().component(x, y))}))
                .collect();
            m.insert("antipode".into(), Value::Array(s));
        }
        Document::Graph(g) => {
            m.insert("vertices".into(), json!(g.vertices()));
            m.insert("edges".into(), edges_value(g.vertices(), g.edges()));
        }
        Document::FinCategory(c) => {
            let arrows = c.arrows();
            m.insert("objects".into(), json!(c.objects()));
            m.insert("arrows".into(), edges_value(c.objects(), arrows));
            let ids: Vec<&str> = c.identities().iter().map(|&i| arrows[i].id.as_str()).collect();
            m.insert("identities".into(), json!(ids));
            let compose: Vec<[&str; 3]> = c
                .compositions()
                .into_iter()
                .map(|(a, b, ab)| [arrows[a].id.as_str(), arrows[b].id.as_str(), arrows[ab].id.as_str()])
                .collect();
            m.insert("compose".into(), json!(compose));
        }
        Document::FgModule(md) => module_fields(&mut m, md),
        Document::Morphism(f) => {
            if let Some(s) = &f.source {
                m.insert("source".into(), to_value(s));
            }
            if let Some(t) = &f.target {
                m.insert("target".into(), to_value(t));
            }
            match &f.body {
                MorphismBody::Graph(g) => {
                    let (sn, tn) = (g.source().objects(), g.target().objects());
                    let om: Vec<&str> = g.object_map().iter().map(|&t| tn[t].as_str()).collect();
                    m.insert("object_map".into(), json!(om));
                    let comps: Vec<Value> = g
                        .source()
                        .pairs()
                        .filter(|&(x, y)| !g.component(x, y).is_zero())
                        .map(|(x, y)| json!({"x": sn[x], "y": sn[y], "matrix": mat(g.component(x, y))}))
                        .collect();
                    m.insert("components".into(), Value::Array(comps));
                }
                MorphismBody::Linear(l) => {
                    m.insert("field".into(), json!(l.field().to_string()));
                    m.insert("matrix".into(), mat(l));
                }
                MorphismBody::Module(mm) => {
                    m.insert("matrix".into(), int_mat(mm.matrix(), mm.matrix().rows()));
                }
            }
        }
    }
    Value::Object(m)
}

fn edges_value(vertices: &[String], edges: &[Edge]) -> Value {
    Value::Array(
        edges
            .iter()
            .map(|e| json!({"id": e.id, "src": vertices[e.src], "tgt": vertices[e.tgt]}))
            .collect(),
    )
}

fn module_fields(m: &mut Map<String, Value>, md: &FgModule) {
    m.insert("ring".into(), json!(md.ring().to_string()));
    m.insert("generators".into(), json!(md.generators()));
    m.insert("relations".into(), int_mat(md.relations(), md.generators()));
}

/// Canonical text: two-space indentation, keys in schema order, arrays and
/// objects holding only scalars on one line, trailing newline.
pub fn write_document(doc: &Document) -> String {
    let mut out = String::new();
    write_value(&to_value(doc), 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| " ".repeat(k);
    match v {
        Value::Object(m) if m.values().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = m
                .iter()
                .map(|(k, x)| format!("{}: {x}", Value::String(k.clone())))
                .collect();
            out.push('{');
            out.push_str(&items.join(", "));
            out.push('}');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            let last = m.len() - 1;
            for (i, (k, val)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(val, indent + 2, out);
                if i != last {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            let last = a.len() - 1;
            for (i, val) in a.iter().enumerate() {
                out.push_str(&pad(indent + 2));
                write_value(val, indent + 2, out);
                if i != last {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
