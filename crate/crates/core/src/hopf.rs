//! Antipodes of semi-Hopf categories, semi-Hopf morphisms, and the weak
//! bialgebra obtained by summing all homs of a finite Hopf category.

use rayon::prelude::*;

use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::kernel::{ExactMatrix, Field, Vector};
use crate::report::Report;
use crate::vcat::{comultiplicativity_defect, variant, SemiHopfCategory, Variant};
use crate::vgraph::VGraphMorphism;

/// `S(x, y): A_xy → A_yx`, row-major over object pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Antipode {
    n: usize,
    components: Vec<ExactMatrix>,
}

impl Antipode {
    pub fn new(a: &SemiHopfCategory, components: Vec<ExactMatrix>) -> Result<Self> {
        let n = a.len();
        if components.len() != n * n {
            return Err(Error::Shape("one antipode component per object pair is required".into()));
        }
        for (x, y) in a.graph().pairs() {
            let s = &components[x * n + y];
            if s.shape() != (a.hom_dim(y, x), a.hom_dim(x, y)) {
                return Err(Error::Shape(format!(
                    "antipode component ({}, {}) is {:?}, expected {:?}",
                    a.graph().objects()[x],
                    a.graph().objects()[y],
                    s.shape(),
                    (a.hom_dim(y, x), a.hom_dim(x, y))
                )));
            }
        }
        Ok(Antipode { n, components })
    }

    pub fn component(&self, x: usize, y: usize) -> &ExactMatrix {
        &self.components[x * self.n + y]
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }
}

/// The two antipode equations for `S(x, y)` as a linear system `M s = b`
/// in the entries of `S(x, y)`, unknown `(r, q)` at `r * dim A_xy + q`.
/// The first `dim A_xx * dim A_xy` equations are
/// `m_xyx (id ⊗ S) δ = j_x ε`, the rest `m_yxy (S ⊗ id) δ = j_y ε`.
pub fn antipode_system(a: &SemiHopfCategory, x: usize, y: usize) -> (ExactMatrix, ExactMatrix) {
    let field = a.field();
    let (dxy, dyx, dxx, dyy) = (a.hom_dim(x, y), a.hom_dim(y, x), a.hom_dim(x, x), a.hom_dim(y, y));
    let delta = a.coalgebra(x, y).delta();
    let eps = a.coalgebra(x, y).epsilon();
    let (mxyx, myxy) = (a.m(x, y, x), a.m(y, x, y));
    let unknowns = dyx * dxy;
    let mut m = ExactMatrix::zeros(field, (dxx + dyy) * dxy, unknowns);
    let mut b = ExactMatrix::zeros(field, (dxx + dyy) * dxy, 1);
    for av in 0..dxy {
        for p in 0..dxy {
            for q in 0..dxy {
                let d = delta.get(p * dxy + q, av);
                if d.is_zero() {
                    continue;
                }
                for r in 0..dyx {
                    // equation 1: unknown S[r, q], coefficient δ m_xyx[t, p·dyx + r]
                    for t in 0..dxx {
                        let c = mxyx.get(t, p * dyx + r);
                        if !c.is_zero() {
                            let row = t * dxy + av;
                            let col = r * dxy + q;
                            let cur = m.get(row, col).clone();
                            m.set(row, col, &cur + &(d * c));
                        }
                    }
                    // equation 2: unknown S[r, p], coefficient δ m_yxy[t, r·dxy + q]
                    for t in 0..dyy {
                        let c = myxy.get(t, r * dxy + q);
                        if !c.is_zero() {
                            let row = (dxx + t) * dxy + av;
                            let col = r * dxy + p;
                            let cur = m.get(row, col).clone();
                            m.set(row, col, &cur + &(d * c));
                        }
                    }
                }
            }
        }
        let e = eps.get(0, av);
        for t in 0..dxx {
            b.set(t * dxy + av, 0, &a.j(x)[t] * e);
        }
        for t in 0..dyy {
            b.set((dxx + t) * dxy + av, 0, &a.j(y)[t] * e);
        }
    }
    (m, b)
}

/// A functional `y` on the equations with `y M = 0` and `y b ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub x: usize,
    pub y: usize,
    pub functional: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AntipodeResult {
    Solved(Antipode),
    /// One certificate per object pair whose system has no solution.
    Inconsistent(Vec<Inconsistency>),
    /// The system has several solutions; cannot happen for valid input.
    Underdetermined(Vec<(usize, usize)>),
}

impl AntipodeResult {
    pub fn antipode(&self) -> Option<&Antipode> {
        match self {
            AntipodeResult::Solved(s) => Some(s),
            _ => None,
        }
    }
}

enum PairOutcome {
    Solved(ExactMatrix),
    Inconsistent(Vector),
    Underdetermined,
}

fn solve_pair(a: &SemiHopfCategory, x: usize, y: usize) -> Result<PairOutcome> {
    let (m, b) = antipode_system(a, x, y);
    let (dxy, dyx) = (a.hom_dim(x, y), a.hom_dim(y, x));
    match m.solve(&b)? {
        Some(sol) if sol.kernel.is_empty() => {
            let s = ExactMatrix::from_vec(a.field(), dyx, dxy, sol.particular.entries().to_vec())?;
            Ok(PairOutcome::Solved(s))
        }
        Some(_) => Ok(PairOutcome::Underdetermined),
        None => {
            let field = a.field();
            let y_vec = m
                .transpose()
                .kernel_basis()
                .into_iter()
                .find(|v| !dot(field, v, &b.column(0)).is_zero())
                .expect("an inconsistent system has a separating functional");
            Ok(PairOutcome::Inconsistent(y_vec))
        }
    }
}

fn dot(field: Field, u: &[crate::kernel::Scalar], v: &[crate::kernel::Scalar]) -> crate::kernel::Scalar {
    u.iter().zip(v).fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Solves the antipode equations pair by pair.
pub fn solve_antipode(a: &SemiHopfCategory) -> Result<AntipodeResult> {
    let pairs: Vec<(usize, usize)> = a.graph().pairs().collect();
    let outcomes = pairs
        .par_iter()
        .map(|&(x, y)| solve_pair(a, x, y))
        .collect::<Result<Vec<_>>>()?;
    let mut comps = Vec::with_capacity(pairs.len());
    let mut bad = Vec::new();
    let mut under = Vec::new();
    for (&(x, y), o) in pairs.iter().zip(outcomes) {
        match o {
            PairOutcome::Solved(s) => comps.push(s),
            PairOutcome::Inconsistent(functional) => bad.push(Inconsistency { x, y, functional }),
            PairOutcome::Underdetermined => under.push((x, y)),
        }
    }
    if !bad.is_empty() {
        return Ok(AntipodeResult::Inconsistent(bad));
    }
    if !under.is_empty() {
        return Ok(AntipodeResult::Underdetermined(under));
    }
    Ok(AntipodeResult::Solved(Antipode::new(a, comps)?))
}

/// The antipode equations, anti-functoriality, and the anti-coalgebra
/// property of each component.
pub fn check_antipode_properties(a: &SemiHopfCategory, s: &Antipode) -> Result<Report> {
    if s.n != a.len() {
        return Err(Error::Shape("antipode has the wrong number of components".into()));
    }
    Antipode::new(a, s.components.clone())?;
    let field = a.field();
    let n = a.len();
    let mut r = Report::new();
    for (x, y) in a.graph().pairs() {
        let (dxy, dyx) = (a.hom_dim(x, y), a.hom_dim(y, x));
        let c = a.coalgebra(x, y);
        let sxy = s.component(x, y);
        let idxy = ExactMatrix::identity(field, dxy);
        let left = a.m(x, y, x).mul(&idxy.tensor_apply(sxy, c.delta())?)?;
        let rhs_x = a.cat().unit_column(x).mul(c.epsilon())?;
        if let Some(i) = left.first_differing_column(&rhs_x) {
            r.push("antipode left", vec![x, y], Some(i));
        }
        let right = a.m(y, x, y).mul(&sxy.tensor_apply(&idxy, c.delta())?)?;
        let rhs_y = a.cat().unit_column(y).mul(c.epsilon())?;
        if let Some(i) = right.first_differing_column(&rhs_y) {
            r.push("antipode right", vec![x, y], Some(i));
        }
        // δ_yx ∘ S = σ ∘ (S ⊗ S) ∘ δ_xy
        let lhs = a.coalgebra(y, x).delta().mul(sxy)?;
        let rhs = ExactMatrix::swap(field, dyx, dyx).mul(&sxy.tensor_apply(sxy, c.delta())?)?;
        if let Some(i) = lhs.first_differing_column(&rhs) {
            r.push("anti-coalgebra", vec![x, y], Some(i));
        }
        if let Some(i) = a.coalgebra(y, x).epsilon().mul(sxy)?.first_differing_column(c.epsilon()) {
            r.push("antipode counit", vec![x, y], Some(i));
        }
    }
    for x in 0..n {
        if s.component(x, x).mul_vec(a.j(x))? != *a.j(x) {
            r.push("antipode unit", vec![x], None);
        }
        for y in 0..n {
            for z in 0..n {
                let (dxy, dyz) = (a.hom_dim(x, y), a.hom_dim(y, z));
                if dxy * dyz == 0 {
                    continue;
                }
                let lhs = s.component(x, z).mul(a.m(x, y, z))?;
                let ss = s.component(x, y).kron(s.component(y, z))?;
                let sigma = ExactMatrix::swap(field, a.hom_dim(y, x), a.hom_dim(z, y));
                let rhs = a.m(z, y, x).mul(&sigma.mul(&ss)?)?;
                if let Some(i) = lhs.first_differing_column(&rhs) {
                    r.push("anti-functor", vec![x, y, z], Some(i));
                }
            }
        }
    }
    Ok(r)
}

/// `S` read as a map `A → A^{op,cop}`: component `(x, y)` of the result
/// lands in hom `(x, y)` of the opposite-coopposite.
pub fn antipode_as_morphism(a: &SemiHopfCategory, s: &Antipode) -> Result<SemiHopfMorphism> {
    let target = variant(a, Variant::OpCop);
    let map = VGraphMorphism::new(
        a.graph().clone(),
        target.graph().clone(),
        (0..a.len()).collect(),
        s.components.clone(),
    )?;
    SemiHopfMorphism::new(a.clone(), target, map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCategory {
    semihopf: SemiHopfCategory,
    antipode: Antipode,
}

impl HopfCategory {
    /// Fails unless `s` satisfies both antipode equations.
    pub fn new(semihopf: SemiHopfCategory, antipode: Antipode) -> Result<Self> {
        let r = check_antipode_properties(&semihopf, &antipode)?;
        if r.has("antipode left") || r.has("antipode right") {
            return Err(Error::Invalid("the given maps do not satisfy the antipode equations".into()));
        }
        Ok(HopfCategory { semihopf, antipode })
    }

    /// For loaders that report axiom violations separately.
    pub(crate) fn new_unchecked(semihopf: SemiHopfCategory, antipode: Antipode) -> Self {
        HopfCategory { semihopf, antipode }
    }

    /// Solves for the antipode.
    pub fn solve(semihopf: SemiHopfCategory) -> Result<Self> {
        match solve_antipode(&semihopf)? {
            AntipodeResult::Solved(s) => Ok(HopfCategory {
                semihopf,
                antipode: s,
            }),
            AntipodeResult::Inconsistent(c) => Err(Error::Precondition(format!(
                "no antipode: the system for {} is inconsistent",
                pair_name(&semihopf, c[0].x, c[0].y)
            ))),
            AntipodeResult::Underdetermined(p) => Err(Error::Precondition(format!(
                "antipode system for {} is underdetermined",
                pair_name(&semihopf, p[0].0, p[0].1)
            ))),
        }
    }

    pub fn semihopf(&self) -> &SemiHopfCategory {
        &self.semihopf
    }

    pub fn antipode(&self) -> &Antipode {
        &self.antipode
    }
}

fn pair_name(a: &SemiHopfCategory, x: usize, y: usize) -> String {
    format!("({}, {})", a.graph().objects()[x], a.graph().objects()[y])
}

/// A V-functor whose components are coalgebra maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiHopfMorphism {
    source: SemiHopfCategory,
    target: SemiHopfCategory,
    map: VGraphMorphism,
}

impl SemiHopfMorphism {
    pub fn new(source: SemiHopfCategory, target: SemiHopfCategory, map: VGraphMorphism) -> Result<Self> {
        if map.source() != source.graph() || map.target() != target.graph() {
            return Err(Error::Invalid("map does not run between the given categories".into()));
        }
        let r = check_semihopf_morphism(&source, &target, &map);
        if let Some(f) = r.failures.first() {
            return Err(Error::Invalid(format!("not a semi-Hopf morphism: {f}")));
        }
        Ok(SemiHopfMorphism { source, target, map })
    }

    pub fn source(&self) -> &SemiHopfCategory {
        &self.source
    }

    pub fn target(&self) -> &SemiHopfCategory {
        &self.target
    }

    pub fn map(&self) -> &VGraphMorphism {
        &self.map
    }
}

pub fn check_semihopf_morphism(source: &SemiHopfCategory, target: &SemiHopfCategory, f: &VGraphMorphism) -> Report {
    let mut r = Report::new();
    let n = source.len();
    let o = f.object_map();
    for x in 0..n {
        let fj = f.component(x, x).mul_vec(source.j(x)).expect("shape");
        if fj != *target.j(o[x]) {
            r.push("preserves units", vec![x], None);
        }
        for y in 0..n {
            let fxy = f.component(x, y);
            let (cs, ct) = (source.coalgebra(x, y), target.coalgebra(o[x], o[y]));
            let lhs = fxy.tensor_apply(fxy, cs.delta()).expect("shape");
            if let Some(i) = lhs.first_differing_column(&ct.delta().mul(fxy).expect("shape")) {
                r.push("preserves comultiplication", vec![x, y], Some(i));
            }
            if let Some(i) = ct.epsilon().mul(fxy).expect("shape").first_differing_column(cs.epsilon()) {
                r.push("preserves counit", vec![x, y], Some(i));
            }
            for z in 0..n {
                if source.hom_dim(x, y) * source.hom_dim(y, z) == 0 {
                    continue;
                }
                let lhs = f.component(x, z).mul(source.m(x, y, z)).expect("shape");
                let rhs = target
                    .m(o[x], o[y], o[z])
                    .mul(&fxy.kron(f.component(y, z)).expect("field"))
                    .expect("shape");
                if let Some(i) = lhs.first_differing_column(&rhs) {
                    r.push("preserves composition", vec![x, y, z], Some(i));
                }
            }
        }
    }
    r
}

/// `S'_{fx,fy} ∘ f_xy = f_yx ∘ S_xy` for every pair.
pub fn preserves_antipode(f: &SemiHopfMorphism, s: &Antipode, t: &Antipode) -> bool {
    let o = f.map.object_map();
    f.source.graph().pairs().all(|(x, y)| {
        let lhs = t.component(o[x], o[y]).mul(f.map.component(x, y)).expect("shape");
        let rhs = f.map.component(y, x).mul(s.component(x, y)).expect("shape");
        lhs == rhs
    })
}

/// The direct sum of all homs with block multiplication, unit `Σ j_x`,
/// block-diagonal `Δ` and `ε`, and the summed antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakBialgebraData {
    pub dim: usize,
    /// Offset of hom `(x, y)` in the sum, row-major over pairs.
    pub offsets: Vec<usize>,
    /// `dim x dim²`.
    pub mult: ExactMatrix,
    pub unit: Vector,
    /// `dim² x dim`.
    pub delta: ExactMatrix,
    pub epsilon: ExactMatrix,
    pub antipode: Option<ExactMatrix>,
}

/// The axioms checked on a flattening. They are a curated subset of the
/// weak Hopf algebra axioms, namely the ones expressible from the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakReport {
    pub checks: Vec<(&'static str, bool)>,
    /// `Δ(1) ≠ 1 ⊗ 1`.
    pub weak: bool,
    /// No objects: the zero algebra.
    pub degenerate: bool,
}

impl WeakReport {
    pub const HEADER: &'static str =
        "weak bialgebra/weak Hopf checks (curated subset: the axioms expressible from the flattened data)";

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| *n == name).map(|(_, ok)| *ok)
    }
}

pub fn flatten_weak_hopf(a: &SemiHopfCategory, s: Option<&Antipode>) -> Result<(WeakBialgebraData, WeakReport)> {
    let field = a.field();
    let n = a.len();
    let mut offsets = Vec::with_capacity(n * n);
    let mut dim = 0;
    for (x, y) in a.graph().pairs() {
        offsets.push(dim);
        dim += a.hom_dim(x, y);
    }
    let off = |x: usize, y: usize| offsets[x * n + y];
    let mut mult = ExactMatrix::zeros(field, dim, dim * dim);
    let mut delta = ExactMatrix::zeros(field, dim * dim, dim);
    let mut epsilon = ExactMatrix::zeros(field, 1, dim);
    let mut unit = vec![field.zero(); dim];
    let mut antipode = s.map(|_| ExactMatrix::zeros(field, dim, dim));
    for x in 0..n {
        for (t, v) in a.j(x).iter().enumerate() {
            unit[off(x, x) + t] = v.clone();
        }
        for y in 0..n {
            let dxy = a.hom_dim(x, y);
            let c = a.coalgebra(x, y);
            for col in 0..dxy {
                epsilon.set(0, off(x, y) + col, c.epsilon().get(0, col).clone());
                for row in 0..dxy * dxy {
                    let v = c.delta().get(row, col);
                    if !v.is_zero() {
                        let (p, q) = (off(x, y) + row / dxy, off(x, y) + row % dxy);
                        delta.set(p * dim + q, off(x, y) + col, v.clone());
                    }
                }
            }
            if let (Some(sm), Some(s)) = (antipode.as_mut(), s) {
                let sxy = s.component(x, y);
                for r in 0..sxy.rows() {
                    for q in 0..sxy.cols() {
                        sm.set(off(y, x) + r, off(x, y) + q, sxy.get(r, q).clone());
                    }
                }
            }
            for z in 0..n {
                let dyz = a.hom_dim(y, z);
                let m = a.m(x, y, z);
                for i in 0..dxy {
                    for k in 0..dyz {
                        let col = (off(x, y) + i) * dim + off(y, z) + k;
                        for t in 0..m.rows() {
                            let v = m.get(t, i * dyz + k);
                            if !v.is_zero() {
                                mult.set(off(x, z) + t, col, v.clone());
                            }
                        }
                    }
                }
            }
        }
    }
    let data = WeakBialgebraData {
        dim,
        offsets,
        mult,
        unit,
        delta,
        epsilon,
        antipode,
    };
    let report = weak_report(&data, n == 0);
    Ok((data, report))
}

fn weak_report(d: &WeakBialgebraData, degenerate: bool) -> WeakReport {
    let field = d.epsilon.field();
    let n = d.dim;
    let id = ExactMatrix::identity(field, n);
    let m = &d.mult;
    let delta = &d.delta;
    let one = ExactMatrix::column_vector(field, &d.unit).expect("field");
    let mut checks = Vec::new();

    let assoc_l = m.mul(&m.kron(&id).unwrap()).unwrap();
    let assoc_r = m.mul(&id.kron(m).unwrap()).unwrap();
    checks.push(("associativity", assoc_l == assoc_r));
    let unit_l = m.mul(&one.kron(&id).unwrap()).unwrap();
    let unit_r = m.mul(&id.kron(&one).unwrap()).unwrap();
    checks.push(("unitality", unit_l == id && unit_r == id));
    let coassoc_l = delta.tensor_apply(&id, delta).unwrap();
    let coassoc_r = id.tensor_apply(delta, delta).unwrap();
    checks.push(("coassociativity", coassoc_l == coassoc_r));
    let counit_l = d.epsilon.tensor_apply(&id, delta).unwrap();
    let counit_r = id.tensor_apply(&d.epsilon, delta).unwrap();
    checks.push(("counitality", counit_l == id && counit_r == id));

    // Δ(ab) = Δ(a)Δ(b)
    let c = Coalgebra::new(delta.clone(), d.epsilon.clone()).expect("shape");
    checks.push(("comultiplicativity", comultiplicativity_defect(m, &c, &c, &c).is_none()));

    // Δ²(1) = (Δ(1) ⊗ 1)(1 ⊗ Δ(1)) and = (1 ⊗ Δ(1))(Δ(1) ⊗ 1)
    let d1 = delta.mul(&one).unwrap().column(0);
    let d2one = delta.tensor_apply(&id, delta).unwrap().mul(&one).unwrap().column(0);
    let terms: Vec<(usize, usize, &crate::kernel::Scalar)> = d1
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k / n, k % n, c))
        .collect();
    let mut first = vec![field.zero(); n * n * n];
    let mut second = vec![field.zero(); n * n * n];
    for &(u, v, c) in &terms {
        for &(u2, v2, c2) in &terms {
            let cc = c * c2;
            // (u ⊗ v ⊗ 1)(1 ⊗ u2 ⊗ v2) = u ⊗ v·u2 ⊗ v2
            for t in 0..n {
                let w = m.get(t, v * n + u2);
                if !w.is_zero() {
                    let k = (u * n + t) * n + v2;
                    first[k] = &first[k] + &(&cc * w);
                }
            }
            // (1 ⊗ u ⊗ v)(u2 ⊗ v2 ⊗ 1) = u2 ⊗ u·v2 ⊗ v
            for t in 0..n {
                let w = m.get(t, u * n + v2);
                if !w.is_zero() {
                    let k = (u2 * n + t) * n + v;
                    second[k] = &second[k] + &(&cc * w);
                }
            }
        }
    }
    checks.push(("weak unit", d2one == first && d2one == second));

    // ε(abc) = ε(a b_(1)) ε(b_(2) c) = ε(a b_(2)) ε(b_(1) c)
    let em = d.epsilon.mul(m).unwrap();
    let abc = em.mul(&m.kron(&id).unwrap()).unwrap();
    let mut ok = true;
    'outer: for b in 0..n {
        let db: Vec<(usize, usize, crate::kernel::Scalar)> = (0..n * n)
            .filter_map(|r| {
                let v = delta.get(r, b);
                (!v.is_zero()).then(|| (r / n, r % n, v.clone()))
            })
            .collect();
        for a_ in 0..n {
            for c in 0..n {
                let mut s1 = field.zero();
                let mut s2 = field.zero();
                for (b1, b2, v) in &db {
                    s1 = &s1 + &(&(v * em.get(0, a_ * n + b1)) * em.get(0, b2 * n + c));
                    s2 = &s2 + &(&(v * em.get(0, a_ * n + b2)) * em.get(0, b1 * n + c));
                }
                let want = abc.get(0, (a_ * n + b) * n + c);
                if *want != s1 || *want != s2 {
                    ok = false;
                    break 'outer;
                }
            }
        }
    }
    checks.push(("weak counit", ok));

    if let Some(s) = &d.antipode {
        // ε_t(a) = ε(1_(1) a) 1_(2),  ε_s(a) = 1_(1) ε(a 1_(2))
        let mut eps_t = ExactMatrix::zeros(field, n, n);
        let mut eps_s = ExactMatrix::zeros(field, n, n);
        for a_ in 0..n {
            for &(u, v, c) in &terms {
                let et = em.get(0, u * n + a_);
                if !et.is_zero() {
                    let cur = eps_t.get(v, a_).clone();
                    eps_t.set(v, a_, &cur + &(c * et));
                }
                let es = em.get(0, a_ * n + v);
                if !es.is_zero() {
                    let cur = eps_s.get(u, a_).clone();
                    eps_s.set(u, a_, &cur + &(c * es));
                }
            }
        }
        let left = m.mul(&id.tensor_apply(s, delta).unwrap()).unwrap();
        checks.push(("a_(1) S(a_(2)) = ε_t(a)", left == eps_t));
        let right = m.mul(&s.tensor_apply(&id, delta).unwrap()).unwrap();
        checks.push(("S(a_(1)) a_(2) = ε_s(a)", right == eps_s));
        // S(a_(1)) a_(2) S(a_(3)) = S(a)
        let d2 = delta.tensor_apply(&id, delta).unwrap();
        let sis = s.kron(&id).unwrap().kron(s).unwrap().mul(&d2).unwrap();
        let prod = m.mul(&m.kron(&id).unwrap()).unwrap().mul(&sis).unwrap();
        checks.push(("S(a_(1)) a_(2) S(a_(3)) = S(a)", prod == *s));
    }

    let one_one = one.kron(&one).unwrap().column(0);
    WeakReport {
        checks,
        weak: d1 != one_one,
        degenerate,
    }
}
