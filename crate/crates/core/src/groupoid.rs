//! Finite graphs and categories over sets: paths, reduced words in the free
//! groupoid on a graph, core groupoids, and linearization.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hopf::Antipode;
use crate::kernel::{ExactMatrix, Field};
use crate::vcat::{CoalgebraGraph, SemiHopfCategory};
use crate::vgraph::VGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl FinGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|f| f.id == e.id) {
                return Err(Error::Invalid(format!("duplicate edge `{}`", e.id)));
            }
            if e.src >= vertices.len() || e.tgt >= vertices.len() {
                return Err(Error::Invalid(format!("edge `{}` has a missing endpoint", e.id)));
            }
        }
        Ok(FinGraph { vertices, edges })
    }

    /// Convenience constructor from `(src, tgt)` index pairs; edges are
    /// named `e0, e1, ...` and vertices `v0, v1, ...`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(k, &(src, tgt))| Edge {
                id: format!("e{k}"),
                src,
                tgt,
            })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The V-graph with `hom(x, y)` spanned by the edges from `x` to `y`,
    /// in edge order.
    pub fn to_vgraph(&self, field: Field) -> VGraph {
        let n = self.vertices.len();
        let mut dims = vec![0; n * n];
        for e in &self.edges {
            dims[e.src * n + e.tgt] += 1;
        }
        VGraph::new(field, self.vertices.clone(), dims).expect("vertices are distinct")
    }

    /// Every edge a grouplike basis vector.
    pub fn grouplike_coalgebra_graph(&self, field: Field) -> CoalgebraGraph {
        CoalgebraGraph::grouplike(self.to_vgraph(field))
    }

    /// Position of edge `e` among the edges with the same endpoints.
    pub fn local_index(&self, e: usize) -> usize {
        let (s, t) = (self.edges[e].src, self.edges[e].tgt);
        self.edges[..e].iter().filter(|f| f.src == s && f.tgt == t).count()
    }
}

/// Paths of length `≤ L` as edge-index sequences, indexed
/// `[x * n + y][len]`, each list in lexicographic order.
pub fn free_category_paths(g: &FinGraph, max_len: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    let n = g.vertices.len();
    let mut out = vec![vec![Vec::new(); max_len + 1]; n * n];
    for x in 0..n {
        let mut frontier: Vec<(usize, Vec<usize>)> = vec![(x, vec![])];
        for len in 0..=max_len {
            for (end, p) in &frontier {
                out[x * n + end][len].push(p.clone());
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (end, p) in &frontier {
                for (k, e) in g.edges.iter().enumerate() {
                    if e.src == *end {
                        let mut q = p.clone();
                        q.push(k);
                        next.push((e.tgt, q));
                    }
                }
            }
            frontier = next;
        }
    }
    for hom in &mut out {
        for bucket in hom {
            bucket.sort();
        }
    }
    out
}

/// An edge or a formal inverse. Orders as `e < e⁻¹ < f` for edge indices
/// `e < f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            edge: self.edge,
            inverse: !self.inverse,
        }
    }

    fn ends(self, g: &FinGraph) -> (usize, usize) {
        let e = &g.edges[self.edge];
        if self.inverse {
            (e.tgt, e.src)
        } else {
            (e.src, e.tgt)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    pub src: usize,
    pub tgt: usize,
    pub letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity(x: usize) -> Self {
        ReducedWord {
            src: x,
            tgt: x,
            letters: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            src: self.tgt,
            tgt: self.src,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// "self then other", reduced.
    pub fn then(&self, g: &FinGraph, other: &ReducedWord) -> Result<ReducedWord> {
        if self.tgt != other.src {
            return Err(Error::Invalid("words do not compose".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        reduce(g, self.src, &letters)
    }

    pub fn render(&self, g: &FinGraph) -> String {
        if self.letters.is_empty() {
            return format!("id_{}", g.vertices[self.src]);
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let id = &g.edges[l.edge].id;
                if l.inverse {
                    format!("{id}^-1")
                } else {
                    id.clone()
                }
            })
            .collect();
        parts.join("·")
    }
}

fn check_composable(g: &FinGraph, src: usize, letters: &[Letter]) -> Result<usize> {
    let mut at = src;
    for l in letters {
        if l.edge >= g.edges.len() {
            return Err(Error::Invalid(format!("unknown edge index {}", l.edge)));
        }
        let (s, t) = l.ends(g);
        if s != at {
            return Err(Error::Invalid("letters do not compose".into()));
        }
        at = t;
    }
    Ok(at)
}

/// Cancels adjacent `e e⁻¹` and `e⁻¹ e` pairs with a stack.
pub fn reduce(g: &FinGraph, src: usize, letters: &[Letter]) -> Result<ReducedWord> {
    let tgt = check_composable(g, src, letters)?;
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last() == Some(&l.inv()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Ok(ReducedWord {
        src,
        tgt,
        letters: stack,
    })
}

/// Cancels adjacent inverse pairs in a random order until none remain.
pub fn reduce_randomly(g: &FinGraph, src: usize, letters: &[Letter], rng: &mut impl Rng) -> Result<ReducedWord> {
    let tgt = check_composable(g, src, letters)?;
    let mut w = letters.to_vec();
    loop {
        let mut spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i + 1] == w[i].inv()).collect();
        if spots.is_empty() {
            return Ok(ReducedWord { src, tgt, letters: w });
        }
        spots.shuffle(rng);
        let i = spots[0];
        w.drain(i..i + 2);
    }
}

/// Reduced words of length `≤ L`, indexed `[x * n + y][len]`, each list
/// sorted lexicographically.
pub fn free_groupoid_words(g: &FinGraph, max_len: usize) -> Vec<Vec<Vec<ReducedWord>>> {
    let n = g.vertices.len();
    let mut out = vec![vec![Vec::new(); max_len + 1]; n * n];
    let mut moves: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); n];
    for (k, e) in g.edges.iter().enumerate() {
        moves[e.src].push((Letter { edge: k, inverse: false }, e.tgt));
        moves[e.tgt].push((Letter { edge: k, inverse: true }, e.src));
    }
    for x in 0..n {
        let mut frontier = vec![ReducedWord::identity(x)];
        for len in 0..=max_len {
            for w in &frontier {
                out[x * n + w.tgt][len].push(w.clone());
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &frontier {
                for &(l, t) in &moves[w.tgt] {
                    if w.letters.last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(ReducedWord { src: x, tgt: t, letters });
                }
            }
            frontier = next;
        }
    }
    for hom in &mut out {
        for bucket in hom {
            bucket.sort();
        }
    }
    out
}

/// A finite category given by its composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Edge>,
    identities: Vec<usize>,
    /// `table[a * arrows + b]` is "a then b" when defined.
    table: Vec<Option<usize>>,
}

impl FinCategory {
    /// `compose` lists `(a, b, a then b)` for every composable pair.
    pub fn new(objects: Vec<String>, arrows: Vec<Edge>, identities: Vec<usize>, compose: &[(usize, usize, usize)]) -> Result<Self> {
        let graph = FinGraph::new(objects, arrows)?;
        let (objects, arrows) = (graph.vertices, graph.edges);
        let na = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::Invalid("one identity per object is required".into()));
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= na || arrows[i].src != x || arrows[i].tgt != x {
                return Err(Error::Invalid(format!("identity of `{}` is not a loop on it", objects[x])));
            }
        }
        let mut table = vec![None; na * na];
        for &(a, b, c) in compose {
            if a >= na || b >= na || c >= na {
                return Err(Error::Invalid("composition refers to a missing arrow".into()));
            }
            if arrows[a].tgt != arrows[b].src {
                return Err(Error::Invalid(format!(
                    "`{}` then `{}` is not composable",
                    arrows[a].id, arrows[b].id
                )));
            }
            if arrows[c].src != arrows[a].src || arrows[c].tgt != arrows[b].tgt {
                return Err(Error::Invalid(format!(
                    "`{}` then `{}` has the wrong endpoints",
                    arrows[a].id, arrows[b].id
                )));
            }
            if table[a * na + b].replace(c).is_some_and(|old| old != c) {
                return Err(Error::Invalid(format!("`{}` then `{}` given twice", arrows[a].id, arrows[b].id)));
            }
        }
        for a in 0..na {
            for b in 0..na {
                if arrows[a].tgt == arrows[b].src && table[a * na + b].is_none() {
                    return Err(Error::Invalid(format!(
                        "missing composition `{}` then `{}`",
                        arrows[a].id, arrows[b].id
                    )));
                }
            }
        }
        let c = FinCategory {
            objects,
            arrows,
            identities,
            table,
        };
        for a in 0..na {
            if c.then(c.identities[c.arrows[a].src], a) != Some(a) || c.then(a, c.identities[c.arrows[a].tgt]) != Some(a) {
                return Err(Error::Invalid(format!("identity law fails at `{}`", c.arrows[a].id)));
            }
            for b in 0..na {
                let Some(ab) = c.then(a, b) else { continue };
                for d in 0..na {
                    let Some(bd) = c.then(b, d) else { continue };
                    if c.then(ab, d) != c.then(a, bd) {
                        return Err(Error::Invalid(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            c.arrows[a].id, c.arrows[b].id, c.arrows[d].id
                        )));
                    }
                }
            }
        }
        Ok(c)
    }

    /// A one-object category from a monoid multiplication table
    /// `mul[a][b]` ("a then b"); element 0 must be the identity.
    pub fn monoid(name: &str, mul: &[Vec<usize>]) -> Result<Self> {
        let n = mul.len();
        let arrows = (0..n)
            .map(|k| Edge {
                id: if k == 0 { "1".to_string() } else { format!("m{k}") },
                src: 0,
                tgt: 0,
            })
            .collect();
        let compose: Vec<(usize, usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, mul[a][b]))).collect();
        Self::new(vec![name.to_string()], arrows, vec![0], &compose)
    }

    /// The groupoid with exactly one arrow between any two objects.
    pub fn pair_groupoid(n: usize) -> Self {
        let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut arrows = Vec::new();
        for s in 0..n {
            for t in 0..n {
                arrows.push(Edge {
                    id: format!("{}{}", objects[s], objects[t]),
                    src: s,
                    tgt: t,
                });
            }
        }
        let compose: Vec<(usize, usize, usize)> = (0..n * n)
            .flat_map(|a| (0..n).map(move |u| (a, (a % n) * n + u, (a / n) * n + u)))
            .collect();
        let identities = (0..n).map(|x| x * n + x).collect();
        Self::new(objects, arrows, identities, &compose).expect("pair groupoid is a category")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Edge] {
        &self.arrows
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn then(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.arrows.len() + b]
    }

    /// Composable triples `(a, b, a then b)` in table order.
    pub fn compositions(&self) -> Vec<(usize, usize, usize)> {
        let na = self.arrows.len();
        (0..na * na)
            .filter_map(|k| self.table[k].map(|c| (k / na, k % na, c)))
            .collect()
    }

    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        let (s, t) = (self.arrows[a].src, self.arrows[a].tgt);
        (0..self.arrows.len()).find(|&b| {
            self.arrows[b].src == t
                && self.arrows[b].tgt == s
                && self.then(a, b) == Some(self.identities[s])
                && self.then(b, a) == Some(self.identities[t])
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|a| self.inverse_of(a).is_some())
    }

    /// Arrows from `x` to `y` in arrow order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].src == x && self.arrows[a].tgt == y)
            .collect()
    }
}

/// The subcategory of invertible arrows.
pub fn core_groupoid(c: &FinCategory) -> FinCategory {
    let keep: Vec<usize> = (0..c.arrows.len()).filter(|&a| c.inverse_of(a).is_some()).collect();
    let mut new_index = HashMap::new();
    for (i, &a) in keep.iter().enumerate() {
        new_index.insert(a, i);
    }
    let arrows = keep.iter().map(|&a| c.arrows[a].clone()).collect();
    let identities = c.identities.iter().map(|i| new_index[i]).collect();
    let compose: Vec<(usize, usize, usize)> = c
        .compositions()
        .into_iter()
        .filter_map(|(a, b, ab)| Some((*new_index.get(&a)?, *new_index.get(&b)?, new_index[&ab])))
        .collect();
    FinCategory::new(c.objects.clone(), arrows, identities, &compose).expect("invertible arrows form a subcategory")
}

/// Free vector spaces on the homs, arrows grouplike, composition from the
/// table. Basis of `hom(x, y)`: arrows from `x` to `y` in arrow order.
pub fn linearize(c: &FinCategory, field: Field) -> SemiHopfCategory {
    let n = c.objects.len();
    let homs: Vec<Vec<usize>> = (0..n * n).map(|k| c.hom(k / n, k % n)).collect();
    let mut local = vec![0; c.arrows.len()];
    for h in &homs {
        for (i, &a) in h.iter().enumerate() {
            local[a] = i;
        }
    }
    SemiHopfCategory::linearized(
        field,
        c.objects.clone(),
        homs.iter().map(Vec::len).collect(),
        |x| local[c.identities[x]],
        |x, y, z, a, b| local[c.then(homs[x * n + y][a], homs[y * n + z][b]).expect("composable")],
    )
    .expect("a finite category linearizes")
}

/// For a groupoid: the linearization together with inversion as antipode.
pub fn linearize_groupoid(c: &FinCategory, field: Field) -> Result<(SemiHopfCategory, Antipode)> {
    if !c.is_groupoid() {
        return Err(Error::Precondition("not every arrow is invertible".into()));
    }
    let a = linearize(c, field);
    let n = c.objects.len();
    let mut local = vec![0; c.arrows.len()];
    for x in 0..n {
        for y in 0..n {
            for (i, h) in c.hom(x, y).into_iter().enumerate() {
                local[h] = i;
            }
        }
    }
    let comps = a
        .graph()
        .pairs()
        .map(|(x, y)| {
            let mut s = ExactMatrix::zeros(field, a.hom_dim(y, x), a.hom_dim(x, y));
            for (i, h) in c.hom(x, y).into_iter().enumerate() {
                s.set(local[c.inverse_of(h).expect("groupoid")], i, field.one());
            }
            s
        })
        .collect();
    let s = Antipode::new(&a, comps)?;
    Ok((a, s))
}
