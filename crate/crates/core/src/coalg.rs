//! Finite-dimensional coalgebras, their coideals and subcoalgebras, and
//! factorizations through the cofree coalgebra on a vector space.

use crate::error::{Error, Result};
use crate::kernel::{ExactMatrix, Field, Subspace};

/// `delta` is `dim² x dim`: column `c` holds `Δ(e_c)` in the tensor basis.
/// `epsilon` is `1 x dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coalgebra {
    delta: ExactMatrix,
    epsilon: ExactMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoalgebraAxiom {
    Coassociativity,
    LeftCounit,
    RightCounit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: CoalgebraAxiom,
    /// First basis vector on which the two sides differ.
    pub basis_index: usize,
}

impl Coalgebra {
    pub fn new(delta: ExactMatrix, epsilon: ExactMatrix) -> Result<Self> {
        let n = delta.cols();
        if delta.rows() != n * n || epsilon.shape() != (1, n) {
            return Err(Error::Shape(format!(
                "coalgebra of dimension {n} needs a {}x{n} comultiplication and a 1x{n} counit, got {:?} and {:?}",
                n * n,
                delta.shape(),
                epsilon.shape()
            )));
        }
        if delta.field() != epsilon.field() {
            return Err(Error::FieldMismatch(delta.field(), epsilon.field()));
        }
        Ok(Coalgebra { delta, epsilon })
    }

    /// Like [`Coalgebra::new`] but rejects structures violating the axioms.
    pub fn validated(delta: ExactMatrix, epsilon: ExactMatrix) -> Result<Self> {
        let c = Self::new(delta, epsilon)?;
        if let Some(f) = check_coalgebra(&c).first() {
            return Err(Error::Invalid(format!(
                "{:?} fails at basis vector {}",
                f.axiom, f.basis_index
            )));
        }
        Ok(c)
    }

    /// `k{g_1..g_n}` with every basis vector grouplike.
    pub fn grouplike(field: Field, n: usize) -> Self {
        let mut delta = ExactMatrix::zeros(field, n * n, n);
        for g in 0..n {
            delta.set(g * n + g, g, field.one());
        }
        let epsilon = ExactMatrix::from_vec(field, 1, n, vec![field.one(); n]).expect("shape");
        Coalgebra { delta, epsilon }
    }

    /// The one-dimensional coalgebra `k`.
    pub fn trivial(field: Field) -> Self {
        Self::grouplike(field, 1)
    }

    pub fn zero(field: Field) -> Self {
        Self::grouplike(field, 0)
    }

    /// The `n x n` matrix coalgebra: `Δe_ij = Σ_k e_ik ⊗ e_kj`,
    /// `ε e_ij = δ_ij`, with `e_ij` at index `i * n + j`.
    pub fn matrix(field: Field, n: usize) -> Self {
        let d = n * n;
        let mut delta = ExactMatrix::zeros(field, d * d, d);
        let mut epsilon = ExactMatrix::zeros(field, 1, d);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    delta.set((i * n + k) * d + k * n + j, i * n + j, field.one());
                }
            }
            epsilon.set(0, i * n + i, field.one());
        }
        Coalgebra { delta, epsilon }
    }

    pub fn field(&self) -> Field {
        self.delta.field()
    }

    pub fn dim(&self) -> usize {
        self.delta.cols()
    }

    pub fn delta(&self) -> &ExactMatrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &ExactMatrix {
        &self.epsilon
    }

    pub fn is_valid(&self) -> bool {
        check_coalgebra(self).is_empty()
    }

    /// `Δ^cop = σ ∘ Δ`.
    pub fn cop(&self) -> Coalgebra {
        let n = self.dim();
        let sigma = ExactMatrix::swap(self.field(), n, n);
        Coalgebra {
            delta: sigma.mul(&self.delta).expect("shape"),
            epsilon: self.epsilon.clone(),
        }
    }

    /// Tensor product of coalgebras, left to right; the empty product is `k`.
    pub fn tensor_all(field: Field, factors: &[&Coalgebra]) -> Result<Coalgebra> {
        let n = factors.len();
        let deltas: Vec<&ExactMatrix> = factors.iter().map(|c| &c.delta).collect();
        let raw = ExactMatrix::kron_all(field, deltas)?;
        let dims: Vec<usize> = factors.iter().flat_map(|c| [c.dim(), c.dim()]).collect();
        let order: Vec<usize> = (0..n).map(|k| 2 * k).chain((0..n).map(|k| 2 * k + 1)).collect();
        let delta = ExactMatrix::tensor_permutation(field, &dims, &order).mul(&raw)?;
        let epsilon = ExactMatrix::kron_all(field, factors.iter().map(|c| &c.epsilon))?;
        Coalgebra::new(delta, epsilon)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(field: Field, parts: &[&Coalgebra]) -> Result<Coalgebra> {
        let n: usize = parts.iter().map(|c| c.dim()).sum();
        let mut delta = ExactMatrix::zeros(field, n * n, n);
        let mut epsilon = ExactMatrix::zeros(field, 1, n);
        let mut off = 0;
        for c in parts {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            let d = c.dim();
            for col in 0..d {
                epsilon.set(0, off + col, c.epsilon.get(0, col).clone());
                for row in 0..d * d {
                    let v = c.delta.get(row, col);
                    if !v.is_zero() {
                        let (a, b) = (row / d, row % d);
                        delta.set((off + a) * n + off + b, off + col, v.clone());
                    }
                }
            }
            off += d;
        }
        Coalgebra::new(delta, epsilon)
    }

    /// The coalgebra induced on a subcoalgebra, in the echelon basis of `e`.
    pub fn restrict_to(&self, e: &Subspace) -> Result<Coalgebra> {
        if e.ambient() != self.dim() {
            return Err(Error::Shape("subspace is not in this coalgebra".into()));
        }
        let inc = e.inclusion();
        let image = self.delta.mul(&inc)?;
        let n = self.dim();
        let piv = e.pivots();
        let k = piv.len();
        let mut delta = ExactMatrix::zeros(self.field(), k * k, k);
        for r in 0..k {
            for s in 0..k {
                for c in 0..k {
                    delta.set(r * k + s, c, image.get(piv[r] * n + piv[s], c).clone());
                }
            }
        }
        let inc2 = inc.kron(&inc)?;
        if inc2.mul(&delta)? != image {
            return Err(Error::Precondition("subspace is not a subcoalgebra".into()));
        }
        Coalgebra::new(delta, self.epsilon.mul(&inc)?)
    }

    /// `C/J` for a coideal `J`, using the non-pivot coordinates of `J` as
    /// the basis of the quotient.
    pub fn quotient(&self, j: &Subspace) -> Result<Quotient> {
        let n = self.dim();
        if j.ambient() != n {
            return Err(Error::Shape("subspace is not in this coalgebra".into()));
        }
        let field = self.field();
        let keep = j.complement_coordinates();
        let q = keep.len();
        let mut projection = ExactMatrix::zeros(field, q, n);
        for c in 0..n {
            let mut e = vec![field.zero(); n];
            e[c] = field.one();
            let r = j.reduce(&e);
            for (i, &k) in keep.iter().enumerate() {
                projection.set(i, c, r[k].clone());
            }
        }
        let mut section = ExactMatrix::zeros(field, n, q);
        for (i, &k) in keep.iter().enumerate() {
            section.set(k, i, field.one());
        }
        if !self.epsilon.mul(&j.inclusion())?.is_zero() {
            return Err(Error::Precondition("counit does not vanish on the subspace".into()));
        }
        let delta = projection.tensor_apply(&projection, &self.delta.mul(&section)?)?;
        let coalgebra = Coalgebra::new(delta, self.epsilon.mul(&section)?)?;
        let e = CoalgebraMorphism {
            source: self.clone(),
            target: coalgebra.clone(),
            matrix: projection.clone(),
        };
        if !e.is_morphism() {
            return Err(Error::Precondition("subspace is not a coideal".into()));
        }
        Ok(Quotient {
            coalgebra,
            projection,
            section,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub coalgebra: Coalgebra,
    /// `C → C/J`.
    pub projection: ExactMatrix,
    /// A linear section of the projection (unit vectors of the kept
    /// coordinates).
    pub section: ExactMatrix,
}

/// Every failed axiom with the first basis vector witnessing it.
pub fn check_coalgebra(c: &Coalgebra) -> Vec<AxiomFailure> {
    let field = c.field();
    let n = c.dim();
    let id = ExactMatrix::identity(field, n);
    let mut out = Vec::new();
    let left = c.delta.tensor_apply(&id, &c.delta).expect("shape");
    let right = id.tensor_apply(&c.delta, &c.delta).expect("shape");
    if let Some(i) = left.first_differing_column(&right) {
        out.push(AxiomFailure {
            axiom: CoalgebraAxiom::Coassociativity,
            basis_index: i,
        });
    }
    let l = c.epsilon.tensor_apply(&id, &c.delta).expect("shape");
    if let Some(i) = l.first_differing_column(&id) {
        out.push(AxiomFailure {
            axiom: CoalgebraAxiom::LeftCounit,
            basis_index: i,
        });
    }
    let r = id.tensor_apply(&c.epsilon, &c.delta).expect("shape");
    if let Some(i) = r.first_differing_column(&id) {
        out.push(AxiomFailure {
            axiom: CoalgebraAxiom::RightCounit,
            basis_index: i,
        });
    }
    out
}

/// `Δ^0 = ε`, `Δ^1 = id`, `Δ^n = (Δ^{n-1} ⊗ id) ∘ Δ`.
pub fn iterate_delta(c: &Coalgebra, n: usize) -> ExactMatrix {
    let id = ExactMatrix::identity(c.field(), c.dim());
    match n {
        0 => c.epsilon.clone(),
        1 => id,
        _ => {
            let prev = iterate_delta(c, n - 1);
            prev.tensor_apply(&id, &c.delta).expect("shape")
        }
    }
}

/// The descending chain `J_0 ⊋ J_1 ⊋ ...` converging to the largest
/// coideal inside `w`; the last entry is the fixed point.
pub fn largest_coideal_chain(c: &Coalgebra, w: &Subspace) -> Result<Vec<Subspace>> {
    check_ambient(c, w)?;
    let mut j = w.restrict_by(&c.epsilon)?;
    let mut chain = vec![j.clone()];
    loop {
        // Δc ∈ J⊗C + C⊗J iff (N⊗N)Δc = 0 for N spanning the annihilator of J
        let ann = j.annihilator();
        let next = j.restrict_by(&ann.tensor_apply(&ann, &c.delta)?)?;
        if next.dim() == j.dim() {
            return Ok(chain);
        }
        chain.push(next.clone());
        j = next;
    }
}

pub fn largest_coideal_in(c: &Coalgebra, w: &Subspace) -> Result<Subspace> {
    Ok(largest_coideal_chain(c, w)?.pop().expect("chain is never empty"))
}

/// The descending chain converging to the largest subcoalgebra in `w`.
pub fn largest_subcoalgebra_chain(c: &Coalgebra, w: &Subspace) -> Result<Vec<Subspace>> {
    check_ambient(c, w)?;
    let id = ExactMatrix::identity(c.field(), c.dim());
    let mut e = w.clone();
    let mut chain = vec![e.clone()];
    loop {
        let ann = e.annihilator();
        let constraints = ann
            .tensor_apply(&id, &c.delta)?
            .vstack(&id.tensor_apply(&ann, &c.delta)?)?;
        let next = e.restrict_by(&constraints)?;
        if next.dim() == e.dim() {
            return Ok(chain);
        }
        chain.push(next.clone());
        e = next;
    }
}

pub fn largest_subcoalgebra_in(c: &Coalgebra, w: &Subspace) -> Result<Subspace> {
    Ok(largest_subcoalgebra_chain(c, w)?.pop().expect("chain is never empty"))
}

fn check_ambient(c: &Coalgebra, w: &Subspace) -> Result<()> {
    if w.ambient() != c.dim() {
        return Err(Error::Shape(format!(
            "subspace of F^{} in a coalgebra of dimension {}",
            w.ambient(),
            c.dim()
        )));
    }
    if w.field() != c.field() {
        return Err(Error::FieldMismatch(c.field(), w.field()));
    }
    Ok(())
}

/// A linear map between coalgebras commuting with `Δ` and `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Coalgebra,
    target: Coalgebra,
    matrix: ExactMatrix,
}

impl CoalgebraMorphism {
    pub fn new(source: Coalgebra, target: Coalgebra, matrix: ExactMatrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::Shape(format!(
                "a map from dimension {} to {} cannot be {:?}",
                source.dim(),
                target.dim(),
                matrix.shape()
            )));
        }
        let f = CoalgebraMorphism {
            source,
            target,
            matrix,
        };
        if !f.is_morphism() {
            return Err(Error::Invalid("linear map does not preserve Δ and ε".into()));
        }
        Ok(f)
    }

    fn is_morphism(&self) -> bool {
        let m = &self.matrix;
        let lhs = m.tensor_apply(m, &self.source.delta).expect("shape");
        let rhs = self.target.delta.mul(m).expect("shape");
        lhs == rhs && self.target.epsilon.mul(m).expect("shape") == self.source.epsilon
    }

    pub fn source(&self) -> &Coalgebra {
        &self.source
    }

    pub fn target(&self) -> &Coalgebra {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCoalgebra {
    pub subspace: Subspace,
    pub coalgebra: Coalgebra,
}

/// Largest subcoalgebra of the source on which `f` and `g` agree.
pub fn equalizer_coalg(f: &CoalgebraMorphism, g: &CoalgebraMorphism) -> Result<SubCoalgebra> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::Invalid("equalizer of morphisms with different ends".into()));
    }
    let linear = Subspace::kernel(&f.matrix.sub(&g.matrix)?);
    let subspace = largest_subcoalgebra_in(&f.source, &linear)?;
    let coalgebra = f.source.restrict_to(&subspace)?;
    Ok(SubCoalgebra {
        subspace,
        coalgebra,
    })
}

/// The factorization of a linear map `γ: C → V` through the cofree
/// coalgebra on `V`, represented by its components `γ_k: C → V^{⊗k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofreeFactorization {
    pub source: Coalgebra,
    pub target_dim: usize,
    pub gamma: ExactMatrix,
    /// `γ_k = γ^{⊗k} ∘ Δ^k` for `k = 0..=K`.
    pub components: Vec<ExactMatrix>,
    /// The largest coideal in `ker γ`, equal to `∩_{k ≤ K} ker γ_k`.
    pub kernel: Subspace,
    pub image: Coalgebra,
    /// The quotient map `e: C → C'`.
    pub projection: ExactMatrix,
    pub section: ExactMatrix,
}

impl CofreeFactorization {
    /// `γ_k` precomposed with the section of `e`.
    pub fn image_components(&self) -> Vec<ExactMatrix> {
        self.components
            .iter()
            .map(|g| g.mul(&self.section).expect("shape"))
            .collect()
    }

    /// True when the components restricted to the image have zero joint
    /// kernel.
    pub fn is_jointly_monic(&self) -> bool {
        let parts = self.image_components();
        let stacked = ExactMatrix::vstack_all(self.image.field(), self.image.dim(), &parts).expect("shape");
        stacked.rank() == self.image.dim()
    }
}

/// Iterations of `γ_k` beyond this multiple of `dim C` are treated as a
/// failure to stabilize.
const STABILIZATION_FACTOR: usize = 4;

pub fn cofree_factorization(c: &Coalgebra, gamma: &ExactMatrix) -> Result<CofreeFactorization> {
    if gamma.cols() != c.dim() {
        return Err(Error::Shape(format!(
            "γ has {} columns but the coalgebra has dimension {}",
            gamma.cols(),
            c.dim()
        )));
    }
    if gamma.field() != c.field() {
        return Err(Error::FieldMismatch(c.field(), gamma.field()));
    }
    let kernel = largest_coideal_in(c, &Subspace::kernel(gamma))?;

    let mut components = vec![c.epsilon.clone()];
    let mut running = Subspace::kernel(&c.epsilon);
    let cap = STABILIZATION_FACTOR * c.dim() + STABILIZATION_FACTOR;
    while running != kernel {
        if components.len() > cap {
            return Err(Error::Unsupported(format!(
                "kernels of γ_k did not reach the largest coideal after {cap} steps"
            )));
        }
        let prev = components.last().expect("nonempty");
        // γ_k = (γ_{k-1} ⊗ γ) ∘ Δ
        let next = if components.len() == 1 {
            gamma.clone()
        } else {
            prev.tensor_apply(gamma, &c.delta)?
        };
        running = running.restrict_by(&next)?;
        components.push(next);
    }
    let q = c.quotient(&kernel)?;
    Ok(CofreeFactorization {
        source: c.clone(),
        target_dim: gamma.rows(),
        gamma: gamma.clone(),
        components,
        kernel,
        image: q.coalgebra,
        projection: q.projection,
        section: q.section,
    })
}
