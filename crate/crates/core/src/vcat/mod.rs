//! Categories enriched in vector spaces and semi-Hopf categories (every hom
//! a coalgebra, composition and units coalgebra maps).

pub mod free;
pub mod image;

use std::str::FromStr;

use rayon::prelude::*;

use crate::coalg::{check_coalgebra, Coalgebra, CoalgebraAxiom};
use crate::error::{Error, Result};
use crate::kernel::{ExactMatrix, Field, Scalar, Vector};
use crate::report::Report;
use crate::vgraph::VGraph;
use free::{delta_column, DeltaTerms};

pub use free::{free_semihopf_truncated, free_vcategory_truncated, CoalgebraGraph, TruncatedFreeCat, TruncatedFreeSemiHopf};
pub use image::{coreflect_image_semihopf, SemiHopfImage};

/// `m(x, y, z): A_xy ⊗ A_yz → A_xz` composes "first then second";
/// `j(x) ∈ A_xx` is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VCategory {
    graph: VGraph,
    m: Vec<ExactMatrix>,
    j: Vec<Vector>,
}

impl VCategory {
    /// `m` is indexed by `(x * n + y) * n + z`.
    pub fn new(graph: VGraph, m: Vec<ExactMatrix>, j: Vec<Vector>) -> Result<Self> {
        let n = graph.len();
        if m.len() != n * n * n || j.len() != n {
            return Err(Error::Shape("one composition per object triple and one unit per object".into()));
        }
        for x in 0..n {
            if j[x].len() != graph.hom_dim(x, x) {
                return Err(Error::Shape(format!("unit of {} has the wrong length", graph.objects()[x])));
            }
            if j[x].iter().any(|s| s.field() != graph.field()) {
                return Err(Error::FieldMismatch(graph.field(), j[x][0].field()));
            }
            for y in 0..n {
                for z in 0..n {
                    let c = &m[(x * n + y) * n + z];
                    let want = (graph.hom_dim(x, z), graph.hom_dim(x, y) * graph.hom_dim(y, z));
                    if c.shape() != want {
                        return Err(Error::Shape(format!(
                            "composition ({}, {}, {}) is {:?}, expected {want:?}",
                            graph.objects()[x],
                            graph.objects()[y],
                            graph.objects()[z],
                            c.shape()
                        )));
                    }
                    if c.field() != graph.field() {
                        return Err(Error::FieldMismatch(graph.field(), c.field()));
                    }
                }
            }
        }
        Ok(VCategory { graph, m, j })
    }

    pub fn from_fn(
        graph: VGraph,
        m: impl Fn(usize, usize, usize) -> ExactMatrix,
        j: impl Fn(usize) -> Vector,
    ) -> Result<Self> {
        let n = graph.len();
        let ms = (0..n * n * n).map(|k| m(k / (n * n), (k / n) % n, k % n)).collect();
        let js = (0..n).map(j).collect();
        Self::new(graph, ms, js)
    }

    pub fn graph(&self) -> &VGraph {
        &self.graph
    }

    pub fn field(&self) -> Field {
        self.graph.field()
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.graph.hom_dim(x, y)
    }

    pub fn m(&self, x: usize, y: usize, z: usize) -> &ExactMatrix {
        let n = self.len();
        &self.m[(x * n + y) * n + z]
    }

    pub fn j(&self, x: usize) -> &Vector {
        &self.j[x]
    }

    pub fn unit_column(&self, x: usize) -> ExactMatrix {
        ExactMatrix::column_vector(self.field(), &self.j[x]).expect("field")
    }

    /// `A^op(x, y) = A(y, x)` with `m^op(x, y, z) = m(z, y, x) ∘ σ`.
    pub fn opposite(&self) -> VCategory {
        let g = self.graph.opposite();
        let field = self.field();
        VCategory::from_fn(
            g,
            |x, y, z| {
                let sigma = ExactMatrix::swap(field, self.hom_dim(y, x), self.hom_dim(z, y));
                self.m(z, y, x).mul(&sigma).expect("shape")
            },
            |x| self.j[x].clone(),
        )
        .expect("opposite of a valid category is well-shaped")
    }
}

/// Associativity and both unit laws, with the first failing basis vector.
pub fn check_vcategory(a: &VCategory) -> Report {
    let n = a.len();
    let field = a.field();
    let mut report = Report::new();
    let assoc: Vec<Report> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut r = Report::new();
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let (dxy, dyz, dzw) = (a.hom_dim(x, y), a.hom_dim(y, z), a.hom_dim(z, w));
                        if dxy * dyz * dzw == 0 {
                            continue;
                        }
                        let left = a
                            .m(x, z, w)
                            .mul(&a.m(x, y, z).kron(&ExactMatrix::identity(field, dzw)).expect("field"))
                            .expect("shape");
                        let right = a
                            .m(x, y, w)
                            .mul(&ExactMatrix::identity(field, dxy).kron(a.m(y, z, w)).expect("field"))
                            .expect("shape");
                        if let Some(i) = left.first_differing_column(&right) {
                            r.push("associativity", vec![x, y, z, w], Some(i));
                        }
                    }
                }
            }
            r
        })
        .collect();
    for r in assoc {
        report.extend(r);
    }
    for x in 0..n {
        let jx = a.unit_column(x);
        for y in 0..n {
            let d = a.hom_dim(x, y);
            let id = ExactMatrix::identity(field, d);
            let left = a.m(x, x, y).mul(&jx.kron(&id).expect("field")).expect("shape");
            if let Some(i) = left.first_differing_column(&id) {
                report.push("left unit", vec![x, y], Some(i));
            }
            let jy = a.unit_column(y);
            let right = a.m(x, y, y).mul(&id.kron(&jy).expect("field")).expect("shape");
            if let Some(i) = right.first_differing_column(&id) {
                report.push("right unit", vec![x, y], Some(i));
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiHopfCategory {
    cat: VCategory,
    coalgebras: Vec<Coalgebra>,
}

impl SemiHopfCategory {
    /// `coalgebras` is row-major over object pairs.
    pub fn new(cat: VCategory, coalgebras: Vec<Coalgebra>) -> Result<Self> {
        let n = cat.len();
        if coalgebras.len() != n * n {
            return Err(Error::Shape("one coalgebra per object pair is required".into()));
        }
        for (x, y) in cat.graph.pairs() {
            let c = &coalgebras[x * n + y];
            if c.dim() != cat.hom_dim(x, y) {
                return Err(Error::Shape(format!(
                    "coalgebra on ({}, {}) has dimension {}, hom has {}",
                    cat.graph.objects()[x],
                    cat.graph.objects()[y],
                    c.dim(),
                    cat.hom_dim(x, y)
                )));
            }
            if c.field() != cat.field() {
                return Err(Error::FieldMismatch(cat.field(), c.field()));
            }
        }
        Ok(SemiHopfCategory { cat, coalgebras })
    }

    /// The linearization of a finite category: arrows become grouplike basis
    /// vectors. `hom_sizes` is row-major; `compose(x, y, z, a, b)` is the
    /// index of "a then b" in `hom(x, z)`.
    pub fn linearized(
        field: Field,
        objects: Vec<String>,
        hom_sizes: Vec<usize>,
        identity: impl Fn(usize) -> usize,
        compose: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let graph = VGraph::new(field, objects, hom_sizes)?;
        let cat = VCategory::from_fn(
            graph.clone(),
            |x, y, z| {
                let (dxy, dyz) = (graph.hom_dim(x, y), graph.hom_dim(y, z));
                let mut m = ExactMatrix::zeros(field, graph.hom_dim(x, z), dxy * dyz);
                for a in 0..dxy {
                    for b in 0..dyz {
                        m.set(compose(x, y, z, a, b), a * dyz + b, field.one());
                    }
                }
                m
            },
            |x| {
                let mut v = vec![field.zero(); graph.hom_dim(x, x)];
                v[identity(x)] = field.one();
                v
            },
        )?;
        let coalgebras = graph
            .pairs()
            .map(|(x, y)| Coalgebra::grouplike(field, graph.hom_dim(x, y)))
            .collect();
        Self::new(cat, coalgebras)
    }

    /// Objects of the parts side by side; homs between different parts
    /// are zero. Clashing object names get the part index appended.
    pub fn disjoint_union(parts: &[&SemiHopfCategory]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Invalid("disjoint union of no categories".into()));
        };
        let field = first.field();
        let mut owner = Vec::new();
        let mut objects = Vec::new();
        for (p, part) in parts.iter().enumerate() {
            if part.field() != field {
                return Err(Error::FieldMismatch(field, part.field()));
            }
            for (x, name) in part.cat.graph.objects().iter().enumerate() {
                owner.push((p, x));
                objects.push(name.clone());
            }
        }
        let unique = objects.iter().enumerate().all(|(i, o)| !objects[..i].contains(o));
        if !unique {
            objects = objects
                .iter()
                .zip(&owner)
                .map(|(o, (p, _))| format!("{o}.{p}"))
                .collect();
        }
        let graph = VGraph::from_fn(field, objects, |x, y| {
            let ((p, a), (q, b)) = (owner[x], owner[y]);
            if p == q {
                parts[p].hom_dim(a, b)
            } else {
                0
            }
        })?;
        let cat = VCategory::from_fn(
            graph.clone(),
            |x, y, z| {
                let ((p, a), (q, b), (r, c)) = (owner[x], owner[y], owner[z]);
                if p == q && q == r {
                    parts[p].cat.m(a, b, c).clone()
                } else {
                    ExactMatrix::zeros(field, graph.hom_dim(x, z), graph.hom_dim(x, y) * graph.hom_dim(y, z))
                }
            },
            |x| {
                let (p, a) = owner[x];
                parts[p].cat.j(a).clone()
            },
        )?;
        let coalgebras = graph
            .pairs()
            .map(|(x, y)| {
                let ((p, a), (q, b)) = (owner[x], owner[y]);
                if p == q {
                    parts[p].coalgebra(a, b).clone()
                } else {
                    Coalgebra::zero(field)
                }
            })
            .collect();
        Self::new(cat, coalgebras)
    }

    pub fn cat(&self) -> &VCategory {
        &self.cat
    }

    pub fn graph(&self) -> &VGraph {
        &self.cat.graph
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn len(&self) -> usize {
        self.cat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cat.is_empty()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.cat.hom_dim(x, y)
    }

    pub fn m(&self, x: usize, y: usize, z: usize) -> &ExactMatrix {
        self.cat.m(x, y, z)
    }

    pub fn j(&self, x: usize) -> &Vector {
        self.cat.j(x)
    }

    pub fn coalgebra(&self, x: usize, y: usize) -> &Coalgebra {
        &self.coalgebras[x * self.len() + y]
    }

    pub fn coalgebras(&self) -> &[Coalgebra] {
        &self.coalgebras
    }
}

/// The V-category axioms, the coalgebra axioms on every hom, and the
/// compatibility of composition and units with the coalgebra structure.
pub fn check_semihopf(a: &SemiHopfCategory) -> Report {
    let mut report = check_vcategory(&a.cat);
    let n = a.len();
    for (x, y) in a.graph().pairs() {
        for f in check_coalgebra(a.coalgebra(x, y)) {
            let name = match f.axiom {
                CoalgebraAxiom::Coassociativity => "coassociativity",
                CoalgebraAxiom::LeftCounit => "left counit",
                CoalgebraAxiom::RightCounit => "right counit",
            };
            report.push(name, vec![x, y], Some(f.basis_index));
        }
    }
    let triples: Vec<(usize, usize, usize)> = (0..n * n * n).map(|k| (k / (n * n), (k / n) % n, k % n)).collect();
    let compat: Vec<Report> = triples
        .par_iter()
        .map(|&(x, y, z)| {
            let mut r = Report::new();
            let (dxy, dyz) = (a.hom_dim(x, y), a.hom_dim(y, z));
            if dxy * dyz == 0 {
                return r;
            }
            let m = a.m(x, y, z);
            let (cxy, cyz, cxz) = (a.coalgebra(x, y), a.coalgebra(y, z), a.coalgebra(x, z));
            if let Some(i) = comultiplicativity_defect(m, cxy, cyz, cxz) {
                r.push("comultiplicativity", vec![x, y, z], Some(i));
            }
            let lhs = cxz.epsilon().mul(m).expect("shape");
            let rhs = cxy.epsilon().kron(cyz.epsilon()).expect("field");
            if let Some(i) = lhs.first_differing_column(&rhs) {
                r.push("counit multiplicativity", vec![x, y, z], Some(i));
            }
            r
        })
        .collect();
    for r in compat {
        report.extend(r);
    }
    for x in 0..n {
        let c = a.coalgebra(x, x);
        let jx = a.cat.unit_column(x);
        let dj = c.delta().mul(&jx).expect("shape");
        if dj != jx.kron(&jx).expect("field") {
            report.push("unit grouplike", vec![x], None);
        }
        if !c.epsilon().mul(&jx).expect("shape").get(0, 0).is_one() {
            report.push("unit counit", vec![x], None);
        }
    }
    report
}

/// First column `a * dim(right) + b` on which `Δ(m(a, b))` differs from
/// `Σ m(a_(1), b_(1)) ⊗ m(a_(2), b_(2))`; built from the nonzero terms of
/// `Δ`, so the cost follows their number rather than `dim⁴`.
pub(crate) fn comultiplicativity_defect(
    m: &ExactMatrix,
    left: &Coalgebra,
    right: &Coalgebra,
    target: &Coalgebra,
) -> Option<usize> {
    let field = m.field();
    let (dl, dr, dt) = (left.dim(), right.dim(), target.dim());
    let lhs = target.delta().mul(m).expect("shape");
    let lterms: Vec<DeltaTerms> = (0..dl).map(|a| delta_column(left, a)).collect();
    let rterms: Vec<DeltaTerms> = (0..dr).map(|b| delta_column(right, b)).collect();
    let cols: Vec<Vec<(usize, Scalar)>> = (0..dl * dr)
        .map(|c| {
            (0..dt)
                .filter_map(|r| {
                    let v = m.get(r, c);
                    (!v.is_zero()).then(|| (r, v.clone()))
                })
                .collect()
        })
        .collect();
    for a in 0..dl {
        for b in 0..dr {
            let mut col = vec![field.zero(); dt * dt];
            for (i, j, c) in &lterms[a] {
                for (k, l, d) in &rterms[b] {
                    let cd = c * d;
                    for (p, u) in &cols[i * dr + k] {
                        let cdu = &cd * u;
                        for (q, v) in &cols[j * dr + l] {
                            let e = &mut col[p * dt + q];
                            *e = &*e + &(&cdu * v);
                        }
                    }
                }
            }
            if col != lhs.column(a * dr + b) {
                return Some(a * dr + b);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Op,
    Cop,
    OpCop,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "op" => Ok(Variant::Op),
            "cop" => Ok(Variant::Cop),
            "opcop" => Ok(Variant::OpCop),
            _ => Err(Error::Parse(format!("unknown variant `{s}` (expected op, cop or opcop)"))),
        }
    }
}

/// Opposite (homs reversed), locally co-opposite (every hom coalgebra
/// replaced by its co-opposite), or both.
pub fn variant(a: &SemiHopfCategory, which: Variant) -> SemiHopfCategory {
    let n = a.len();
    let (cat, coalgebras) = match which {
        Variant::Op => (
            a.cat.opposite(),
            a.graph().pairs().map(|(x, y)| a.coalgebra(y, x).clone()).collect(),
        ),
        Variant::Cop => (a.cat.clone(), a.coalgebras.iter().map(Coalgebra::cop).collect()),
        Variant::OpCop => (
            a.cat.opposite(),
            (0..n * n).map(|k| a.coalgebra(k % n, k / n).cop()).collect(),
        ),
    };
    SemiHopfCategory::new(cat, coalgebras).expect("variants keep shapes")
}
