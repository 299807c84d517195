//! Finite V-graphs over finite-dimensional vector spaces: a list of objects
//! and a hom-space dimension for every ordered pair.

use crate::error::{Error, Result};
use crate::kernel::{ExactMatrix, Field, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VGraph {
    field: Field,
    objects: Vec<String>,
    dims: Vec<usize>,
}

impl VGraph {
    /// `dims` is row-major over `objects x objects`.
    pub fn new(field: Field, objects: Vec<String>, dims: Vec<usize>) -> Result<Self> {
        let n = objects.len();
        if dims.len() != n * n {
            return Err(Error::Shape(format!(
                "{} hom dimensions given for {n} objects",
                dims.len()
            )));
        }
        for (i, a) in objects.iter().enumerate() {
            if objects[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate object `{a}`")));
            }
        }
        Ok(VGraph { field, objects, dims })
    }

    pub fn from_fn(field: Field, objects: Vec<String>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = objects.len();
        let dims = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(field, objects, dims)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.dims[x * self.len() + y]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// Ordered pairs `(x, y)` in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
    }

    /// Same objects, `hom'(x, y) = hom(y, x)`.
    pub fn opposite(&self) -> VGraph {
        VGraph::from_fn(self.field, self.objects.clone(), |x, y| self.hom_dim(y, x))
            .expect("opposite of a valid graph is valid")
    }
}

/// An object map together with one linear map per source hom-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VGraphMorphism {
    source: VGraph,
    target: VGraph,
    object_map: Vec<usize>,
    components: Vec<ExactMatrix>,
}

impl VGraphMorphism {
    /// `components` is row-major over source pairs; component `(x, y)` has
    /// shape `hom(f x, f y) x hom(x, y)`.
    pub fn new(
        source: VGraph,
        target: VGraph,
        object_map: Vec<usize>,
        components: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::FieldMismatch(source.field, target.field));
        }
        if object_map.len() != source.len() {
            return Err(Error::Invalid("object map is not total on the source".into()));
        }
        if let Some(&bad) = object_map.iter().find(|&&t| t >= target.len()) {
            return Err(Error::Invalid(format!("object map points at missing target object {bad}")));
        }
        if components.len() != source.len() * source.len() {
            return Err(Error::Shape("one component per source hom is required".into()));
        }
        for (x, y) in source.pairs() {
            let c = &components[x * source.len() + y];
            let want = (
                target.hom_dim(object_map[x], object_map[y]),
                source.hom_dim(x, y),
            );
            if c.shape() != want {
                return Err(Error::Shape(format!(
                    "component ({}, {}) is {:?}, expected {want:?}",
                    source.objects[x],
                    source.objects[y],
                    c.shape()
                )));
            }
            if c.field() != source.field {
                return Err(Error::FieldMismatch(source.field, c.field()));
            }
        }
        Ok(VGraphMorphism {
            source,
            target,
            object_map,
            components,
        })
    }

    pub fn identity(g: &VGraph) -> Self {
        let components = g
            .pairs()
            .map(|(x, y)| ExactMatrix::identity(g.field, g.hom_dim(x, y)))
            .collect();
        VGraphMorphism {
            source: g.clone(),
            target: g.clone(),
            object_map: (0..g.len()).collect(),
            components,
        }
    }

    pub fn source(&self) -> &VGraph {
        &self.source
    }

    pub fn target(&self) -> &VGraph {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn component(&self, x: usize, y: usize) -> &ExactMatrix {
        &self.components[x * self.source.len() + y]
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &VGraphMorphism) -> Result<VGraphMorphism> {
        if self.target != next.source {
            return Err(Error::Invalid("composing morphisms whose ends do not match".into()));
        }
        let object_map: Vec<usize> = self.object_map.iter().map(|&t| next.object_map[t]).collect();
        let components = self
            .source
            .pairs()
            .map(|(x, y)| {
                next.component(self.object_map[x], self.object_map[y])
                    .mul(self.component(x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        VGraphMorphism::new(self.source.clone(), next.target.clone(), object_map, components)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismWitness {
    /// Two source objects with the same image.
    ObjectsIdentified { first: usize, second: usize },
    /// A nonzero vector of `hom(x, y)` sent to zero.
    KernelVector { x: usize, y: usize, vector: Vector },
    /// A target object outside the image of the object map.
    ObjectMissed { object: usize },
    /// A vector of the target `hom(x, y)` outside the joint image.
    Uncovered { x: usize, y: usize, vector: Vector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub mono: bool,
    pub epi: bool,
    pub witnesses: Vec<MorphismWitness>,
}

/// Monomorphisms are injective on objects and on every hom; epimorphisms
/// are surjective on objects and, for each target pair, the components
/// landing there jointly span it.
pub fn classify_morphism(f: &VGraphMorphism) -> Classification {
    let src = &f.source;
    let tgt = &f.target;
    let mut witnesses = Vec::new();

    let mut mono = true;
    for a in 0..src.len() {
        for b in a + 1..src.len() {
            if f.object_map[a] == f.object_map[b] {
                mono = false;
                witnesses.push(MorphismWitness::ObjectsIdentified { first: a, second: b });
            }
        }
    }
    for (x, y) in src.pairs() {
        if let Some(v) = f.component(x, y).kernel_basis().into_iter().next() {
            mono = false;
            witnesses.push(MorphismWitness::KernelVector { x, y, vector: v });
        }
    }

    let mut epi = true;
    let mut hit = vec![false; tgt.len()];
    for &t in &f.object_map {
        hit[t] = true;
    }
    for (t, h) in hit.iter().enumerate() {
        if !h {
            epi = false;
            witnesses.push(MorphismWitness::ObjectMissed { object: t });
        }
    }
    for (x, y) in tgt.pairs() {
        let d = tgt.hom_dim(x, y);
        if d == 0 {
            continue;
        }
        let mut stacked = ExactMatrix::zeros(tgt.field, d, 0);
        for (a, b) in src.pairs() {
            if f.object_map[a] == x && f.object_map[b] == y {
                stacked = stacked.hstack(f.component(a, b)).expect("same rows");
            }
        }
        let image = Subspace::image(&stacked);
        if image.dim() < d {
            epi = false;
            let c = image.complement_coordinates()[0];
            let mut v = vec![tgt.field.zero(); d];
            v[c] = tgt.field.one();
            witnesses.push(MorphismWitness::Uncovered { x, y, vector: v });
        }
    }

    Classification {
        mono,
        epi,
        witnesses,
    }
}

/// A finite diagram: graphs at the nodes, morphisms along the arrows.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub nodes: Vec<VGraph>,
    pub arrows: Vec<DiagramArrow>,
}

#[derive(Clone, Debug)]
pub struct DiagramArrow {
    pub from: usize,
    pub to: usize,
    pub morphism: VGraphMorphism,
}

#[derive(Clone, Debug)]
pub struct Limit {
    pub graph: VGraph,
    /// The object of the limit at index `i` is the compatible tuple
    /// `tuples[i]` of node objects.
    pub tuples: Vec<Vec<usize>>,
    pub projections: Vec<VGraphMorphism>,
}

/// Limit of a finite diagram: compatible object tuples, and for each pair
/// of tuples the subspace of the direct sum of node homs on which every
/// arrow's component agrees.
pub fn limit_finite_diagram(d: &Diagram) -> Result<Limit> {
    let Some(first) = d.nodes.first() else {
        return Err(Error::Invalid("limit of the empty diagram; use the terminal graph explicitly".into()));
    };
    let field = first.field;
    if let Some(g) = d.nodes.iter().find(|g| g.field != field) {
        return Err(Error::FieldMismatch(field, g.field));
    }
    for a in &d.arrows {
        if a.from >= d.nodes.len() || a.to >= d.nodes.len() {
            return Err(Error::Invalid("diagram arrow refers to a missing node".into()));
        }
        if a.morphism.source != d.nodes[a.from] || a.morphism.target != d.nodes[a.to] {
            return Err(Error::Invalid("diagram arrow does not match its end nodes".into()));
        }
    }

    // compatible tuples in lexicographic order
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for g in &d.nodes {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..g.len()).map(move |o| {
                    let mut t = t.clone();
                    t.push(o);
                    t
                })
            })
            .collect();
    }
    tuples.retain(|t| {
        d.arrows
            .iter()
            .all(|a| a.morphism.object_map[t[a.from]] == t[a.to])
    });

    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            if d.nodes.len() == 1 {
                d.nodes[0].objects[t[0]].clone()
            } else {
                let parts: Vec<&str> = t
                    .iter()
                    .zip(&d.nodes)
                    .map(|(&o, g)| g.objects[o].as_str())
                    .collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();

    let n = tuples.len();
    let mut homs: Vec<Subspace> = Vec::with_capacity(n * n);
    let mut offsets_all = Vec::with_capacity(n * n);
    for s in &tuples {
        for t in &tuples {
            let mut offsets = Vec::with_capacity(d.nodes.len() + 1);
            let mut total = 0;
            for (k, g) in d.nodes.iter().enumerate() {
                offsets.push(total);
                total += g.hom_dim(s[k], t[k]);
            }
            offsets.push(total);
            let mut constraints = ExactMatrix::zeros(field, 0, total);
            for a in &d.arrows {
                let comp = a.morphism.component(s[a.from], t[a.from]);
                let rows = comp.rows();
                let mut c = ExactMatrix::zeros(field, rows, total);
                for i in 0..rows {
                    for j in 0..comp.cols() {
                        c.set(i, offsets[a.from] + j, comp.get(i, j).clone());
                    }
                    let tj = offsets[a.to] + i;
                    let cur = c.get(i, tj).clone();
                    c.set(i, tj, &cur - &field.one());
                }
                constraints = constraints.vstack(&c)?;
            }
            homs.push(Subspace::full(field, total).restrict_by(&constraints)?);
            offsets_all.push(offsets);
        }
    }

    let graph = VGraph::new(field, names, homs.iter().map(Subspace::dim).collect())?;
    let projections = d
        .nodes
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let object_map: Vec<usize> = tuples.iter().map(|t| t[k]).collect();
            let components: Vec<ExactMatrix> = homs
                .iter()
                .zip(&offsets_all)
                .map(|(h, off)| h.inclusion().row_block(off[k], off[k + 1]))
                .collect();
            VGraphMorphism::new(graph.clone(), g.clone(), object_map, components)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Limit {
        graph,
        tuples,
        projections,
    })
}

/// True when the family has trivial joint kernel on every hom and is
/// jointly injective on objects.
pub fn jointly_monic(family: &[VGraphMorphism]) -> bool {
    let Some(f0) = family.first() else {
        return false;
    };
    let src = &f0.source;
    for a in 0..src.len() {
        for b in a + 1..src.len() {
            if family.iter().all(|f| f.object_map[a] == f.object_map[b]) {
                return false;
            }
        }
    }
    src.pairs().all(|(x, y)| {
        let stacked: Vec<ExactMatrix> = family.iter().map(|f| f.component(x, y).clone()).collect();
        ExactMatrix::vstack_all(src.field, src.hom_dim(x, y), &stacked)
            .map(|m| m.kernel_basis().is_empty())
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_is_mono_and_epi() {
        let g = VGraph::new(Field::Rational, names(&["x", "y"]), vec![1, 2, 0, 1]).unwrap();
        let c = classify_morphism(&VGraphMorphism::identity(&g));
        assert!(c.mono && c.epi);
        assert!(c.witnesses.is_empty());
    }

    #[test]
    fn inclusion_of_zero_hom_is_mono_not_epi() {
        let f = Field::Rational;
        let a = VGraph::new(f, names(&["x", "y"]), vec![0, 0, 0, 0]).unwrap();
        let b = VGraph::new(f, names(&["x", "y"]), vec![0, 1, 0, 0]).unwrap();
        let comps = a.pairs().map(|(x, y)| ExactMatrix::zeros(f, b.hom_dim(x, y), 0)).collect();
        let m = VGraphMorphism::new(a, b, vec![0, 1], comps).unwrap();
        let c = classify_morphism(&m);
        assert!(c.mono);
        assert!(!c.epi);
        assert!(matches!(c.witnesses[0], MorphismWitness::Uncovered { x: 0, y: 1, .. }));
    }

    #[test]
    fn collapsing_objects_with_spanning_components_is_epi() {
        let f = Field::Rational;
        // two loops of dim 1 collapse onto one object with a 2-dim loop;
        // the off-diagonal homs supply nothing
        let a = VGraph::new(f, names(&["a", "b"]), vec![1, 0, 0, 1]).unwrap();
        let b = VGraph::new(f, names(&["x"]), vec![2]).unwrap();
        let comps = vec![
            ExactMatrix::from_i64(f, 2, 1, &[1, 0]),
            ExactMatrix::zeros(f, 2, 0),
            ExactMatrix::zeros(f, 2, 0),
            ExactMatrix::from_i64(f, 2, 1, &[1, 1]),
        ];
        let m = VGraphMorphism::new(a, b, vec![0, 0], comps).unwrap();
        let c = classify_morphism(&m);
        assert!(c.epi);
        assert!(!c.mono);
    }

    #[test]
    fn opposite_examples() {
        let f = Field::Rational;
        let g = VGraph::new(f, names(&["x", "y"]), vec![1, 2, 0, 3]).unwrap();
        let op = g.opposite();
        assert_eq!(op.hom_dim(0, 1), 0);
        assert_eq!(op.hom_dim(1, 0), 2);
        assert_eq!(op.opposite(), g);
        let sym = VGraph::new(f, names(&["x", "y"]), vec![1, 2, 2, 3]).unwrap();
        assert_eq!(sym.opposite(), sym);
    }

    #[test]
    fn limit_of_one_node_is_the_node() {
        let f = Field::Rational;
        let g = VGraph::new(f, names(&["x", "y"]), vec![1, 2, 0, 3]).unwrap();
        let l = limit_finite_diagram(&Diagram {
            nodes: vec![g.clone()],
            arrows: vec![],
        })
        .unwrap();
        assert_eq!(l.graph, g);
        assert_eq!(l.projections[0], VGraphMorphism::identity(&g));
    }

    #[test]
    fn binary_product() {
        let f = Field::Rational;
        let a = VGraph::new(f, names(&["x", "y"]), vec![1, 2, 0, 1]).unwrap();
        let b = VGraph::new(f, names(&["u"]), vec![3]).unwrap();
        let l = limit_finite_diagram(&Diagram {
            nodes: vec![a.clone(), b.clone()],
            arrows: vec![],
        })
        .unwrap();
        assert_eq!(l.graph.objects(), &names(&["(x,u)", "(y,u)"])[..]);
        assert_eq!(l.graph.hom_dim(0, 1), 2 + 3);
        assert_eq!(l.graph.hom_dim(1, 0), 3);
        assert!(jointly_monic(&l.projections));
    }

    #[test]
    fn equalizer_of_two_coordinates() {
        let f = Field::Rational;
        let a = VGraph::new(f, names(&["x"]), vec![2]).unwrap();
        let b = VGraph::new(f, names(&["u"]), vec![1]).unwrap();
        let coord = |k: i64| {
            let m = ExactMatrix::from_i64(f, 1, 2, &[1 - k, k]);
            VGraphMorphism::new(a.clone(), b.clone(), vec![0], vec![m]).unwrap()
        };
        let l = limit_finite_diagram(&Diagram {
            nodes: vec![a.clone(), b.clone()],
            arrows: vec![
                DiagramArrow { from: 0, to: 1, morphism: coord(0) },
                DiagramArrow { from: 0, to: 1, morphism: coord(1) },
            ],
        })
        .unwrap();
        // ker(f - g) = span(1, 1)
        assert_eq!(l.graph.hom_dim(0, 0), 1);
        let into_a = l.projections[0].component(0, 0);
        assert_eq!(into_a.get(0, 0), into_a.get(1, 0));
        assert!(classify_morphism(&l.projections[0]).mono);
    }

    #[test]
    fn empty_diagram_is_rejected() {
        assert!(limit_finite_diagram(&Diagram {
            nodes: vec![],
            arrows: vec![]
        })
        .is_err());
    }
}
