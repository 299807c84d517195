//! The free Hopf category over a semi-Hopf category, truncated at a word
//! weight, and the universal maps into and out of free and cofree Hopf
//! categories.
//!
//! Letters are basis vectors of `A^(i)_xy`, which is `A_xy` for even `i`
//! and `A_yx` with the opposite comultiplication for odd `i`. A word is a
//! composable sequence of letters; the candidate antipode sends the letter
//! `(x, y, i, b)` to `(y, x, i + 1, b)` and reverses words.

mod quotient;
mod universal;

pub use quotient::{free_hopf_truncated, free_hopf_truncated_with, BucketDims, LetterInfo, Method, TruncatedFreeHopf};
pub use universal::{cofree_hopf_component, universal_map_free, UniversalMap};

use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::kernel::sparse::SparseVec;
use crate::kernel::{ExactMatrix, Field, Scalar};
use crate::vcat::free::{delta_column, DeltaTerms};
use crate::vcat::{SemiHopfCategory, TruncatedFreeSemiHopf};
use crate::vgraph::VGraph;

/// What the free Hopf construction needs to know about its input: homs
/// with a basis, a weight per basis vector, the coalgebra structure and
/// (possibly partial) composition.
pub trait LetterSource: Sync {
    fn field(&self) -> Field;
    fn objects(&self) -> &[String];
    fn hom_dim(&self, x: usize, y: usize) -> usize;
    /// Positive except on a unit basis vector.
    fn weight(&self, x: usize, y: usize, b: usize) -> usize;
    /// The basis vector equal to `j_x`, if there is one. Such a vector is
    /// identified with the empty word instead of becoming a letter.
    fn unit_basis(&self, x: usize) -> Option<usize>;
    fn unit(&self, x: usize) -> SparseVec;
    fn delta(&self, x: usize, y: usize, b: usize) -> DeltaTerms;
    fn counit(&self, x: usize, y: usize, b: usize) -> Scalar;
    /// "a then b", or `None` when the input cannot represent it.
    fn compose(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> Option<SparseVec>;
}

impl LetterSource for SemiHopfCategory {
    fn field(&self) -> Field {
        SemiHopfCategory::field(self)
    }

    fn objects(&self) -> &[String] {
        self.graph().objects()
    }

    fn hom_dim(&self, x: usize, y: usize) -> usize {
        SemiHopfCategory::hom_dim(self, x, y)
    }

    fn weight(&self, _x: usize, _y: usize, _b: usize) -> usize {
        1
    }

    fn unit_basis(&self, x: usize) -> Option<usize> {
        let j = self.j(x);
        let mut support = j.iter().enumerate().filter(|(_, v)| !v.is_zero());
        match (support.next(), support.next()) {
            (Some((b, v)), None) if v.is_one() => Some(b),
            _ => None,
        }
    }

    fn unit(&self, x: usize) -> SparseVec {
        dense_to_sparse(self.j(x))
    }

    fn delta(&self, x: usize, y: usize, b: usize) -> DeltaTerms {
        delta_column(self.coalgebra(x, y), b)
    }

    fn counit(&self, x: usize, y: usize, b: usize) -> Scalar {
        self.coalgebra(x, y).epsilon().get(0, b).clone()
    }

    fn compose(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> Option<SparseVec> {
        let dyz = SemiHopfCategory::hom_dim(self, y, z);
        Some(dense_to_sparse(&self.m(x, y, z).column(a * dyz + b)))
    }
}

/// Weights are chain lengths; the length-0 word is the unit.
impl LetterSource for TruncatedFreeSemiHopf {
    fn field(&self) -> Field {
        self.cat().field()
    }

    fn objects(&self) -> &[String] {
        self.cat().graph().objects()
    }

    fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.cat().hom_dim(x, y)
    }

    fn weight(&self, x: usize, y: usize, b: usize) -> usize {
        self.cat().word_len(x, y, b)
    }

    fn unit_basis(&self, x: usize) -> Option<usize> {
        Some(self.cat().unit(x))
    }

    fn unit(&self, x: usize) -> SparseVec {
        SparseVec::from([(self.cat().unit(x), self.cat().field().one())])
    }

    fn delta(&self, x: usize, y: usize, b: usize) -> DeltaTerms {
        TruncatedFreeSemiHopf::delta(self, x, y, b)
    }

    fn counit(&self, x: usize, y: usize, b: usize) -> Scalar {
        TruncatedFreeSemiHopf::counit(self, x, y, b)
    }

    fn compose(&self, x: usize, y: usize, z: usize, a: usize, b: usize) -> Option<SparseVec> {
        let c = self.cat().compose(x, y, z, a, b)?;
        Some(SparseVec::from([(c, self.cat().field().one())]))
    }
}

pub(crate) fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(k, s)| (k, s.clone()))
        .collect()
}

/// `hom(x, y) = ⊕_{i ≤ I_max} A^(i)_xy` with its coalgebra structure,
/// summands in order of `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterGraph {
    base: SemiHopfCategory,
    i_max: usize,
    graph: VGraph,
    coalgebras: Vec<Coalgebra>,
}

pub fn build_letter_graph(a: &SemiHopfCategory, i_max: usize) -> LetterGraph {
    let n = a.len();
    let field = a.field();
    let mut dims = Vec::with_capacity(n * n);
    let mut coalgebras = Vec::with_capacity(n * n);
    for (x, y) in a.graph().pairs() {
        let parts: Vec<Coalgebra> = (0..=i_max)
            .map(|i| {
                if i % 2 == 0 {
                    a.coalgebra(x, y).clone()
                } else {
                    a.coalgebra(y, x).cop()
                }
            })
            .collect();
        let refs: Vec<&Coalgebra> = parts.iter().collect();
        let c = Coalgebra::direct_sum(field, &refs).expect("same field");
        dims.push(c.dim());
        coalgebras.push(c);
    }
    let graph = VGraph::new(field, a.graph().objects().to_vec(), dims).expect("same objects");
    LetterGraph {
        base: a.clone(),
        i_max,
        graph,
        coalgebras,
    }
}

impl LetterGraph {
    pub fn base(&self) -> &SemiHopfCategory {
        &self.base
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn graph(&self) -> &VGraph {
        &self.graph
    }

    pub fn coalgebra(&self, x: usize, y: usize) -> &Coalgebra {
        &self.coalgebras[x * self.base.len() + y]
    }

    pub fn summand_dim(&self, x: usize, y: usize, i: usize) -> usize {
        if i % 2 == 0 {
            self.base.hom_dim(x, y)
        } else {
            self.base.hom_dim(y, x)
        }
    }

    fn offset(&self, x: usize, y: usize, i: usize) -> usize {
        (0..i).map(|k| self.summand_dim(x, y, k)).sum()
    }

    /// `ι^(i): A^(i)_xy → hom(x, y)`.
    pub fn injection(&self, x: usize, y: usize, i: usize) -> Result<ExactMatrix> {
        if i > self.i_max {
            return Err(Error::Invalid(format!("letter index {i} exceeds {}", self.i_max)));
        }
        let field = self.base.field();
        let d = self.summand_dim(x, y, i);
        let off = self.offset(x, y, i);
        let mut m = ExactMatrix::zeros(field, self.graph.hom_dim(x, y), d);
        for k in 0..d {
            m.set(off + k, k, field.one());
        }
        Ok(m)
    }

    /// The shift `A^(i)_xy → A^(i+1)_yx`, an identity matrix; `None` at
    /// the top index.
    pub fn shift(&self, x: usize, y: usize, i: usize) -> Option<ExactMatrix> {
        (i < self.i_max).then(|| ExactMatrix::identity(self.base.field(), self.summand_dim(x, y, i)))
    }

    /// The coalgebra carried by the summand `A^(i)_xy`.
    pub fn summand_coalgebra(&self, x: usize, y: usize, i: usize) -> Result<Coalgebra> {
        let inj = self.injection(x, y, i)?;
        let proj = inj.transpose();
        let c = self.coalgebra(x, y);
        let delta = proj.tensor_apply(&proj, &c.delta().mul(&inj)?)?;
        Coalgebra::new(delta, c.epsilon().mul(&inj)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::check_coalgebra;

    fn two_objects() -> SemiHopfCategory {
        // x → y with one arrow, no arrow back
        SemiHopfCategory::linearized(
            Field::Rational,
            vec!["x".into(), "y".into()],
            vec![1, 1, 0, 1],
            |_| 0,
            |_, _, _, _, _| 0,
        )
        .unwrap()
    }

    #[test]
    fn letter_graph_dims_alternate() {
        let a = two_objects();
        let g0 = build_letter_graph(&a, 0);
        assert_eq!(g0.graph().dims(), a.graph().dims());
        assert!(g0.shift(0, 1, 0).is_none());
        let g1 = build_letter_graph(&a, 1);
        assert_eq!(g1.graph().dims(), &[2, 1, 1, 2]);
        let g3 = build_letter_graph(&a, 3);
        assert_eq!(g3.summand_dim(0, 1, 0), 1);
        assert_eq!(g3.summand_dim(0, 1, 1), 0);
        assert_eq!(g3.summand_dim(1, 0, 1), 1);
        assert_eq!(g3.graph().hom_dim(0, 1), 2);
        for (x, y) in a.graph().pairs() {
            assert!(check_coalgebra(g3.coalgebra(x, y)).is_empty());
            for i in 0..=3 {
                assert!(check_coalgebra(&g3.summand_coalgebra(x, y, i).unwrap()).is_empty());
            }
        }
    }

    #[test]
    fn shift_is_identity_and_lands_on_the_swapped_summand() {
        let a = two_objects();
        let g = build_letter_graph(&a, 2);
        let s = g.shift(0, 1, 0).unwrap();
        assert_eq!(s, ExactMatrix::identity(Field::Rational, 1));
        assert_eq!(s.cols(), g.summand_dim(0, 1, 0));
        assert_eq!(s.rows(), g.summand_dim(1, 0, 1));
        let inj = g.injection(1, 0, 1).unwrap();
        // hom(y, x) has only the odd summand
        assert_eq!(inj, ExactMatrix::identity(Field::Rational, 1));
        assert_eq!(g.injection(0, 1, 1).unwrap().cols(), 0);
    }

    #[test]
    fn odd_summands_carry_the_opposite_comultiplication() {
        let sw = crate::fixtures::sweedler();
        let g = build_letter_graph(&sw, 1);
        assert_eq!(g.summand_coalgebra(0, 0, 1).unwrap(), sw.coalgebra(0, 0).cop());
        assert_eq!(g.summand_coalgebra(0, 0, 0).unwrap(), *sw.coalgebra(0, 0));
    }

    #[test]
    fn unit_basis_detection() {
        let a = two_objects();
        assert_eq!(LetterSource::unit_basis(&a, 0), Some(0));
        let sw = crate::fixtures::sweedler();
        assert_eq!(LetterSource::unit_basis(&sw, 0), Some(0));
    }
}
