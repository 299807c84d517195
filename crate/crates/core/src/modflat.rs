//! Finitely presented modules over `Z` and `Z/n`: tensor products, joint
//! monicity of finite families, and flatness over finite cyclic rings.
//!
//! A module on `g` generators is `Z^g` modulo the column span of its
//! relation matrix; over `Z/n` the relations `n e_i` are added implicitly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::snf::{integer_kernel, integer_solve, snf, IntMatrix};
use crate::kernel::{ExactMatrix, Subspace};

/// Largest `n` for which ideals of `Z/n` are enumerated.
pub const FLATNESS_BOUND: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    /// `Z/n` with `n ≥ 2`.
    Mod(u64),
}

impl Ring {
    pub fn modulo(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::Invalid(format!("Z/{n} is not supported; the modulus must be at least 2")));
        }
        Ok(Ring::Mod(n))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Mod(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        let n = s
            .strip_prefix("Z/")
            .and_then(|m| m.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown ring `{s}`; expected `Z` or `Z/n`")))?;
        Ring::modulo(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgModule {
    ring: Ring,
    gens: usize,
    relations: IntMatrix,
}

impl FgModule {
    /// `relations` has one column per relation.
    pub fn new(ring: Ring, relations: IntMatrix) -> Result<Self> {
        Ok(FgModule {
            ring,
            gens: relations.rows(),
            relations,
        })
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        FgModule {
            ring,
            gens: rank,
            relations: IntMatrix::zeros(rank, 0),
        }
    }

    /// `Z/k` on one generator (over `Z/n` this is `Z/gcd(k, n)`).
    pub fn cyclic(ring: Ring, k: u64) -> Self {
        FgModule {
            ring,
            gens: 1,
            relations: IntMatrix::from_vec(1, 1, vec![BigInt::from(k)]).expect("shape"),
        }
    }

    pub fn zero(ring: Ring) -> Self {
        FgModule::free(ring, 0)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// The relations as a `Z`-module, including `n e_i` over `Z/n`.
    pub fn z_relations(&self) -> IntMatrix {
        match self.ring {
            Ring::Integers => self.relations.clone(),
            Ring::Mod(n) => {
                let diag = vec![BigInt::from(n); self.gens];
                self.relations
                    .hstack(&IntMatrix::diagonal(self.gens, self.gens, &diag))
                    .expect("same rows")
            }
        }
    }

    /// Invariant factors other than 1, ascending with `0` (a free summand)
    /// last: the module is `⊕ Z/d_i`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.z_relations();
        let s = snf(&r);
        let diag = s.diagonal();
        (0..self.gens)
            .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn is_zero_module(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    /// Number of elements, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        let f = self.invariant_factors();
        if f.iter().any(Zero::is_zero) {
            return None;
        }
        Some(f.iter().product())
    }

    pub fn is_zero(&self, element: &[BigInt]) -> Result<bool> {
        if element.len() != self.gens {
            return Err(Error::Shape(format!(
                "element has {} coordinates, module has {} generators",
                element.len(),
                self.gens
            )));
        }
        if element.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        Ok(integer_solve(&self.z_relations(), element)?.is_some())
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .invariant_factors()
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// A homomorphism given on generators: column `j` is the image of the
/// `j`-th generator of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMap {
    source: FgModule,
    target: FgModule,
    matrix: IntMatrix,
}

impl ModMap {
    /// Fails unless every relation of the source maps into the relations
    /// of the target.
    pub fn new(source: FgModule, target: FgModule, matrix: IntMatrix) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::Invalid(format!("ring mismatch: {} vs {}", source.ring, target.ring)));
        }
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens,
                source.gens
            )));
        }
        let image = matrix.mul(&source.z_relations())?;
        for j in 0..image.cols() {
            if !target.is_zero(&image.column(j))? {
                return Err(Error::Invalid(format!("relation {j} of the source does not map to zero")));
            }
        }
        Ok(ModMap { source, target, matrix })
    }

    pub fn identity(m: &FgModule) -> Self {
        ModMap {
            source: m.clone(),
            target: m.clone(),
            matrix: IntMatrix::identity(m.gens),
        }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `f ⊗ id_M`.
    pub fn tensor_with(&self, m: &FgModule) -> Result<ModMap> {
        Ok(ModMap {
            source: tensor_fg(&self.source, m)?,
            target: tensor_fg(&self.target, m)?,
            matrix: self.matrix.kron(&IntMatrix::identity(m.gens)),
        })
    }
}

/// Generators `e_i ⊗ f_j` at `i * gens(N) + j`; relations `r ⊗ f_j` and
/// `e_i ⊗ s`.
pub fn tensor_fg(m: &FgModule, n: &FgModule) -> Result<FgModule> {
    if m.ring != n.ring {
        return Err(Error::Invalid(format!("ring mismatch: {} vs {}", m.ring, n.ring)));
    }
    let left = m.z_relations().kron(&IntMatrix::identity(n.gens));
    let right = IntMatrix::identity(m.gens).kron(&n.z_relations());
    FgModule::new(m.ring, left.hstack(&right)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointlyMonic {
    pub monic: bool,
    /// A nonzero element killed by every map, on failure.
    pub witness: Option<Vec<BigInt>>,
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.iter().find(|c| !c.is_zero()).is_some_and(Signed::is_negative) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

/// Whether the maps, all out of one source, have no common nonzero kernel
/// element.
pub fn is_jointly_monic(source: &FgModule, family: &[ModMap]) -> Result<JointlyMonic> {
    for f in family {
        if f.source != *source {
            return Err(Error::Invalid("family members must share the source".into()));
        }
    }
    let g = source.gens;
    // x with M_i x + R_i y_i = 0 for all i
    let targets: Vec<IntMatrix> = family.iter().map(|f| f.target.z_relations()).collect();
    let rows: usize = family.iter().map(|f| f.target.gens).sum();
    let extra: usize = targets.iter().map(IntMatrix::cols).sum();
    let mut big = IntMatrix::zeros(rows, g + extra);
    let (mut r0, mut c0) = (0, g);
    for (f, rel) in family.iter().zip(&targets) {
        for i in 0..f.target.gens {
            for j in 0..g {
                big.set(r0 + i, j, f.matrix.get(i, j).clone());
            }
            for j in 0..rel.cols() {
                big.set(r0 + i, c0 + j, rel.get(i, j).clone());
            }
        }
        r0 += f.target.gens;
        c0 += rel.cols();
    }
    let candidates: Vec<Vec<BigInt>> = integer_kernel(&big).into_iter().map(|k| k[..g].to_vec()).collect();
    for x in candidates {
        if !source.is_zero(&x)? {
            return Ok(JointlyMonic {
                monic: false,
                witness: Some(normalize_sign(x)),
            });
        }
    }
    Ok(JointlyMonic {
        monic: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flatness {
    pub flat: bool,
    /// On failure, the generator `d` of the ideal `(d)` and a nonzero
    /// element of `(d) ⊗ M` mapping to zero in `M`.
    pub witness: Option<(u64, Vec<BigInt>)>,
}

/// Checks injectivity of `I ⊗ M → M` for every ideal `I = (d)` of `Z/n`,
/// `d` running over the divisors of `n` in increasing order.
pub fn flatness_test_finite_ring(m: &FgModule) -> Result<Flatness> {
    let Ring::Mod(n) = m.ring else {
        return Err(Error::Unsupported("flatness is only decided over Z/n".into()));
    };
    if n > FLATNESS_BOUND {
        return Err(Error::Unsupported(format!("Z/{n} exceeds the bound {FLATNESS_BOUND}")));
    }
    let results: Vec<(u64, JointlyMonic)> = divisors(n)
        .par_iter()
        .map(|&d| {
            let ideal = FgModule::cyclic(m.ring, n / d);
            let ring = FgModule::free(m.ring, 1);
            let incl = ModMap::new(ideal, ring, IntMatrix::from_vec(1, 1, vec![BigInt::from(d)])?)?;
            let t = incl.tensor_with(m)?;
            Ok((d, is_jointly_monic(t.source(), std::slice::from_ref(&t))?))
        })
        .collect::<Result<_>>()?;
    for (d, r) in results {
        if !r.monic {
            return Ok(Flatness {
                flat: false,
                witness: Some((d, r.witness.expect("witness on failure"))),
            });
        }
    }
    Ok(Flatness {
        flat: true,
        witness: None,
    })
}

/// Tensors every member of a jointly monic family with `m` and tests the
/// result again.
pub fn preserves_jointly_monic(m: &FgModule, source: &FgModule, family: &[ModMap]) -> Result<JointlyMonic> {
    if !is_jointly_monic(source, family)?.monic {
        return Err(Error::Precondition("the family is not jointly monic".into()));
    }
    let tensored: Vec<ModMap> = family.par_iter().map(|f| f.tensor_with(m)).collect::<Result<_>>()?;
    is_jointly_monic(&tensor_fg(source, m)?, &tensored)
}

/// Joint monicity of linear maps out of one vector space of dimension
/// `dim`: the common kernel, zero exactly when the family is jointly monic.
pub fn common_kernel(dim: usize, maps: &[ExactMatrix]) -> Result<Subspace> {
    let Some(first) = maps.first() else {
        return Err(Error::Invalid("empty family".into()));
    };
    if maps.iter().any(|f| f.cols() != dim) {
        return Err(Error::Shape("maps must share the source dimension".into()));
    }
    let stacked = ExactMatrix::vstack_all(first.field(), dim, maps)?;
    Ok(Subspace::kernel(&stacked))
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `gcd` on machine integers, exposed for callers building cyclic examples.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
