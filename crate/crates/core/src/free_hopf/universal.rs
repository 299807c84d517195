//! Maps out of the truncated free Hopf category and the components of
//! maps into the cofree Hopf category.

use rayon::prelude::*;

use super::quotient::TruncatedFreeHopf;
use super::LetterSource;
use crate::coalg::iterate_delta;
use crate::error::{Error, Result};
use crate::hopf::{HopfCategory, SemiHopfMorphism};
use crate::kernel::{ExactMatrix, Scalar, Vector};
use crate::report::Report;
use crate::vcat::SemiHopfCategory;

/// The map induced on word classes by a semi-Hopf morphism into a Hopf
/// category.
#[derive(Clone, Debug)]
pub struct UniversalMap {
    /// Per object pair, the basis words of the quotient.
    pub basis: Vec<Vec<usize>>,
    /// Per object pair, the images of the basis words as columns.
    pub components: Vec<ExactMatrix>,
    /// Images of all words (not only basis words), per object pair.
    pub word_images: Vec<Vec<Vector>>,
    /// Failures of the well-definedness and extension checks.
    pub report: Report,
}

fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `S^k` as a map out of `H_xy`, landing in `H_xy` or `H_yx`.
fn antipode_power(h: &HopfCategory, x: usize, y: usize, k: usize) -> ExactMatrix {
    let a = h.semihopf();
    let mut m = ExactMatrix::identity(a.field(), a.hom_dim(x, y));
    let (mut p, mut q) = (x, y);
    for _ in 0..k {
        m = h.antipode().component(p, q).mul(&m).expect("shape");
        std::mem::swap(&mut p, &mut q);
    }
    m
}

/// Sends the class of `ι^(i_1)(b_1) ⋯ ι^(i_n)(b_n)` to the composite of
/// the `S^{i_k} f(b_k)` in `H`, and the empty word at `x` to `j_{f x}`.
/// The result is certified: every relation generator and every relation
/// `w - q(w)` must map to zero, and the even letters must reproduce `f`.
pub fn universal_map_free(a: &SemiHopfCategory, h: &HopfCategory, f: &SemiHopfMorphism, trunc: &TruncatedFreeHopf) -> Result<UniversalMap> {
    if f.source() != a || f.target() != h.semihopf() {
        return Err(Error::Invalid("f does not run from A to H".into()));
    }
    let n = a.len();
    let same_letters = trunc.len() == n
        && trunc.source_dims == a.graph().dims()
        && (0..n).all(|x| trunc.units[x] == LetterSource::unit_basis(a, x));
    if !same_letters {
        return Err(Error::Invalid("the truncation was not built from A".into()));
    }
    let hs = h.semihopf();
    let field = a.field();
    let obj = f.map().object_map();

    let images: Vec<Vector> = trunc
        .letters
        .iter()
        .map(|l| {
            let (u, v) = l.base_hom();
            let fb = f.map().component(u, v).column(l.base);
            antipode_power(h, obj[u], obj[v], l.index).mul_vec(&fb).expect("shape")
        })
        .collect();

    let word_images: Vec<Vec<Vector>> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / n, k % n);
            (0..trunc.word_count(x, y))
                .map(|i| {
                    let mut cur = hs.j(obj[x]).clone();
                    let mut at = x;
                    for &id in trunc.word(x, y, i) {
                        let l = &trunc.letters[id as usize];
                        let m = hs.m(obj[x], obj[at], obj[l.tgt]);
                        cur = m.mul_vec(&kron_vec(&cur, &images[id as usize])).expect("shape");
                        at = l.tgt;
                    }
                    cur
                })
                .collect()
        })
        .collect();

    let combine = |x: usize, y: usize, terms: &mut dyn Iterator<Item = (usize, Scalar)>| -> Vector {
        let mut out = vec![field.zero(); hs.hom_dim(obj[x], obj[y])];
        for (w, c) in terms {
            for (o, v) in out.iter_mut().zip(&word_images[x * n + y][w]) {
                *o = &*o + &(&c * v);
            }
        }
        out
    };

    let mut report = Report::new();
    for (g, r) in trunc.generators.iter().enumerate() {
        let mut terms = r
            .terms
            .iter()
            .map(|(w, c)| (trunc.index_of_word(r.src, r.tgt, w).expect("generator words exist"), c.clone()));
        if combine(r.src, r.tgt, &mut terms).iter().any(|v| !v.is_zero()) {
            report.push("relation", vec![r.src, r.tgt], Some(g));
        }
    }
    for (x, y) in a.graph().pairs() {
        for i in 0..trunc.word_count(x, y) {
            let nf = trunc.class_of_word(x, y, i);
            let mut terms = std::iter::once((i, field.one())).chain(nf.into_iter().map(|(k, c)| (k, -&c)));
            if combine(x, y, &mut terms).iter().any(|v| !v.is_zero()) {
                report.push("well-defined", vec![x, y], Some(i));
            }
        }
        for b in 0..a.hom_dim(x, y) {
            let Ok(class) = trunc.class_of_letter(x, y, 0, b) else {
                continue;
            };
            let got = combine(x, y, &mut class.into_iter());
            if got != f.map().component(x, y).column(b) {
                report.push("extends f", vec![x, y], Some(b));
            }
        }
    }

    let mut basis = Vec::with_capacity(n * n);
    let mut components = Vec::with_capacity(n * n);
    for (x, y) in a.graph().pairs() {
        let b = trunc.basis(x, y);
        let cols: Vec<Vector> = b.iter().map(|&i| word_images[x * n + y][i].clone()).collect();
        components.push(ExactMatrix::from_columns(field, hs.hom_dim(obj[x], obj[y]), &cols)?);
        basis.push(b);
    }
    Ok(UniversalMap {
        basis,
        components,
        word_images,
        report,
    })
}

/// Per object pair `(x, y)`, the map
/// `(g_1 ⊗ … ⊗ g_k) ∘ Δ^k : H_xy → ⊗_t A^{(i_t)}` with `g_t = f ∘ S^{i_t}`;
/// the factor for an odd index lands in `A_{f y, f x}`. Row-major over
/// object pairs.
pub fn cofree_hopf_component(h: &HopfCategory, f: &SemiHopfMorphism, indices: &[usize]) -> Result<Vec<ExactMatrix>> {
    if f.source() != h.semihopf() {
        return Err(Error::Invalid("f does not start at H".into()));
    }
    if indices.is_empty() {
        return Err(Error::Shape("at least one index is required".into()));
    }
    let hs = h.semihopf();
    let field = hs.field();
    hs.graph()
        .pairs()
        .map(|(x, y)| {
            let delta = iterate_delta(hs.coalgebra(x, y), indices.len());
            let factors: Vec<ExactMatrix> = indices
                .iter()
                .map(|&i| {
                    let (p, q) = if i % 2 == 0 { (x, y) } else { (y, x) };
                    f.map().component(p, q).mul(&antipode_power(h, x, y, i))
                })
                .collect::<Result<_>>()?;
            ExactMatrix::kron_all(field, &factors)?.mul(&delta)
        })
        .collect()
}
