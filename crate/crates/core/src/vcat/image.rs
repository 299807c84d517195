//! The image of a semi-Hopf category in the cofree semi-Hopf category over
//! a V-category, computed as a quotient by the largest family of coideals
//! inside `ker γ` that is closed under composition with arbitrary arrows.

use crate::coalg::{cofree_factorization, largest_coideal_in, Coalgebra};
use crate::error::{Error, Result};
use crate::kernel::{ExactMatrix, Subspace};
use crate::vcat::{SemiHopfCategory, VCategory};
use crate::vgraph::{VGraph, VGraphMorphism};

#[derive(Clone, Debug)]
pub struct SemiHopfImage {
    pub image: SemiHopfCategory,
    /// Row-major over object pairs.
    pub kernels: Vec<Subspace>,
    pub projections: Vec<ExactMatrix>,
    pub sections: Vec<ExactMatrix>,
    /// Per hom, the maps `γ_k` restricted to the image.
    pub components: Vec<Vec<ExactMatrix>>,
    /// Rounds of alternating closure until both conditions held at once.
    pub rounds: usize,
}

/// `gamma` must be identity on objects, from `c`'s graph into `target`'s.
pub fn coreflect_image_semihopf(c: &SemiHopfCategory, gamma: &VGraphMorphism, target: &VCategory) -> Result<SemiHopfImage> {
    let n = c.len();
    if gamma.source() != c.graph() || gamma.target() != target.graph() {
        return Err(Error::Invalid("γ does not run between the given categories".into()));
    }
    if target.len() != n || gamma.object_map().iter().enumerate().any(|(i, &t)| i != t) {
        return Err(Error::Invalid("γ must be the identity on objects".into()));
    }
    let field = c.field();
    let g = c.graph();
    let mut j: Vec<Subspace> = g.pairs().map(|(x, y)| Subspace::kernel(gamma.component(x, y))).collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let before: Vec<usize> = j.iter().map(Subspace::dim).collect();
        for (k, (x, y)) in g.pairs().enumerate() {
            j[k] = largest_coideal_in(c.coalgebra(x, y), &j[k])?;
        }
        j = ideal_closure(c, j)?;
        if j.iter().map(Subspace::dim).eq(before) {
            break;
        }
    }

    let mut projections = Vec::with_capacity(n * n);
    let mut sections = Vec::with_capacity(n * n);
    let mut coalgebras = Vec::with_capacity(n * n);
    for (k, (x, y)) in g.pairs().enumerate() {
        let q = c.coalgebra(x, y).quotient(&j[k])?;
        projections.push(q.projection);
        sections.push(q.section);
        coalgebras.push(q.coalgebra);
    }
    let dims: Vec<usize> = coalgebras.iter().map(Coalgebra::dim).collect();
    let graph = VGraph::new(field, g.objects().to_vec(), dims)?;
    let cat = VCategory::from_fn(
        graph,
        |x, y, z| {
            let s = sections[x * n + y].kron(&sections[y * n + z]).expect("field");
            projections[x * n + z]
                .mul(&c.m(x, y, z).mul(&s).expect("shape"))
                .expect("shape")
        },
        |x| projections[x * n + x].mul_vec(c.j(x)).expect("shape"),
    )?;
    let image = SemiHopfCategory::new(cat, coalgebras)?;
    let components = g
        .pairs()
        .enumerate()
        .map(|(k, (x, y))| {
            let f = cofree_factorization(c.coalgebra(x, y), gamma.component(x, y))?;
            f.components
                .iter()
                .map(|gk| gk.mul(&sections[k]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SemiHopfImage {
        image,
        kernels: j,
        projections,
        sections,
        components,
        rounds,
    })
}

/// Shrinks each `J_xy` to the elements whose products with every arrow on
/// either side stay in the corresponding `J`, until stable.
fn ideal_closure(c: &SemiHopfCategory, mut j: Vec<Subspace>) -> Result<Vec<Subspace>> {
    let n = c.len();
    let field = c.field();
    loop {
        let anns: Vec<ExactMatrix> = j.iter().map(Subspace::annihilator).collect();
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                let dxy = c.hom_dim(x, y);
                if j[x * n + y].is_zero() {
                    continue;
                }
                let mut constraints = ExactMatrix::zeros(field, 0, dxy);
                // c then b for b in hom(y, z)
                for z in 0..n {
                    let dyz = c.hom_dim(y, z);
                    let na = anns[x * n + z].mul(c.m(x, y, z))?;
                    for b in 0..dyz {
                        let cols: Vec<_> = (0..dxy).map(|p| na.column(p * dyz + b)).collect();
                        constraints = constraints.vstack(&ExactMatrix::from_columns(field, na.rows(), &cols)?)?;
                    }
                }
                // a then c for a in hom(w, x)
                for w in 0..n {
                    let dwx = c.hom_dim(w, x);
                    let na = anns[w * n + y].mul(c.m(w, x, y))?;
                    for a in 0..dwx {
                        let cols: Vec<_> = (0..dxy).map(|p| na.column(a * dxy + p)).collect();
                        constraints = constraints.vstack(&ExactMatrix::from_columns(field, na.rows(), &cols)?)?;
                    }
                }
                let next = j[x * n + y].restrict_by(&constraints)?;
                if next.dim() != j[x * n + y].dim() {
                    changed = true;
                    j[x * n + y] = next;
                }
            }
        }
        if !changed {
            return Ok(j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Field;
    use crate::vcat::check_semihopf;

    fn cyclic(k: usize) -> SemiHopfCategory {
        SemiHopfCategory::linearized(Field::Rational, vec!["*".into()], vec![k], |_| 0, |_, _, _, a, b| (a + b) % k).unwrap()
    }

    #[test]
    fn injective_gamma_keeps_everything() {
        let c = cyclic(3);
        let g = VGraphMorphism::identity(c.graph());
        let r = coreflect_image_semihopf(&c, &g, c.cat()).unwrap();
        assert!(r.kernels[0].is_zero());
        assert_eq!(r.image, c);
    }

    #[test]
    fn zero_gamma_collapses_each_hom_to_a_point() {
        let objects: Vec<String> = vec!["x".into(), "y".into()];
        let c = SemiHopfCategory::linearized(Field::Rational, objects.clone(), vec![1; 4], |_| 0, |_, _, _, _, _| 0).unwrap();
        let target = VGraph::new(Field::Rational, objects, vec![0; 4]).unwrap();
        let tcat = VCategory::from_fn(
            target.clone(),
            |_, _, _| ExactMatrix::zeros(Field::Rational, 0, 0),
            |_| vec![],
        )
        .unwrap();
        let comps = c.graph().pairs().map(|_| ExactMatrix::zeros(Field::Rational, 0, 1)).collect();
        let g = VGraphMorphism::new(c.graph().clone(), target, vec![0, 1], comps).unwrap();
        let r = coreflect_image_semihopf(&c, &g, &tcat).unwrap();
        assert!(check_semihopf(&r.image).is_ok());
        assert_eq!(r.image.graph().dims(), &[1, 1, 1, 1]);

        let c = cyclic(4);
        let target = VGraph::new(Field::Rational, vec!["*".into()], vec![0]).unwrap();
        let tcat = VCategory::from_fn(target.clone(), |_, _, _| ExactMatrix::zeros(Field::Rational, 0, 0), |_| vec![]).unwrap();
        let g = VGraphMorphism::new(c.graph().clone(), target, vec![0], vec![ExactMatrix::zeros(Field::Rational, 0, 4)]).unwrap();
        let r = coreflect_image_semihopf(&c, &g, &tcat).unwrap();
        assert_eq!(r.image.hom_dim(0, 0), 1);
        assert!(check_semihopf(&r.image).is_ok());
    }

    #[test]
    fn ideal_condition_can_shrink_the_per_hom_kernel() {
        // kZ/4 → k: γ picks the coefficient of the identity. The largest
        // coideal in ker γ is not an ideal; closure must shrink it further.
        let c = cyclic(4);
        let target = VGraph::new(Field::Rational, vec!["*".into()], vec![1]).unwrap();
        let tcat = VCategory::from_fn(
            target.clone(),
            |_, _, _| ExactMatrix::identity(Field::Rational, 1),
            |_| vec![Field::Rational.one()],
        )
        .unwrap();
        let gamma = ExactMatrix::from_i64(Field::Rational, 1, 4, &[1, 0, 0, 0]);
        let g = VGraphMorphism::new(c.graph().clone(), target, vec![0], vec![gamma.clone()]).unwrap();
        let r = coreflect_image_semihopf(&c, &g, &tcat).unwrap();
        assert!(check_semihopf(&r.image).is_ok());
        let per_hom = largest_coideal_in(c.coalgebra(0, 0), &Subspace::kernel(&gamma)).unwrap();
        assert!(r.kernels[0].is_subspace_of(&per_hom));
        assert!(r.kernels[0].dim() < per_hom.dim());
        // multiplicative and comultiplicative quotient map
        let p = &r.projections[0];
        assert_eq!(
            p.mul(c.m(0, 0, 0)).unwrap(),
            r.image.m(0, 0, 0).mul(&p.kron(p).unwrap()).unwrap()
        );
        assert_eq!(
            p.tensor_apply(p, c.coalgebra(0, 0).delta()).unwrap(),
            r.image.coalgebra(0, 0).delta().mul(p).unwrap()
        );
    }
}
