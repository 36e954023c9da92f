//! Finite modules over `Λ = Z[t, t⁻¹]`: an abelian group together with the
//! automorphism by which `t` acts.

mod descriptor;
mod identify;
mod iso;
mod poly;
mod submodule;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{extract_basis, AbelianGroup, GroupAutomorphism, GroupError};
use crate::arith;

pub use descriptor::ModuleSpec;
pub use identify::{describe, identify_as_quotient, pid_forms};
pub use iso::{certificate, is_lambda_iso, lambda_iso, ModuleCertificate};
pub use poly::Polynomial;
pub use submodule::{image_one_minus_t, primary_component, Submodule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(usize),
    #[error("polynomial must have degree at least 1")]
    DegreeZero,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("constant term {constant} is not a unit mod {modulus}, so t is not invertible")]
    ConstantNotUnit { constant: usize, modulus: usize },
    #[error("gcd({n}, {a}) != 1")]
    NotCoprime { n: usize, a: usize },
    #[error("automorphism does not act on a group of order {0}")]
    OrderMismatch(usize),
    #[error("element set is not a submodule")]
    NotClosed,
    #[error("malformed module JSON: {0}")]
    Json(String),
}

/// A finite Λ-module.
#[derive(Debug, Clone)]
pub struct LambdaModule {
    group: AbelianGroup,
    t: GroupAutomorphism,
    t_inv: GroupAutomorphism,
    spec: Option<ModuleSpec>,
}

impl PartialEq for LambdaModule {
    /// Equality of the concrete structure; the descriptor is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.t == other.t
    }
}

impl Eq for LambdaModule {}

impl LambdaModule {
    fn from_parts(group: AbelianGroup, t: GroupAutomorphism, spec: Option<ModuleSpec>) -> Self {
        let t_inv = t.inverse(&group);
        LambdaModule { group, t, t_inv, spec }
    }

    /// The module on `group` where `t` acts as `phi`.
    pub fn from_pair(group: AbelianGroup, phi: GroupAutomorphism) -> Result<Self, ModuleError> {
        if phi.map().len() != group.order() {
            return Err(ModuleError::OrderMismatch(group.order()));
        }
        // Re-validate against this group: phi may come from elsewhere.
        let phi = GroupAutomorphism::from_map(&group, phi.map().to_vec())?;
        let spec = ModuleSpec::Pair { factors: group.invariant_factors().to_vec(), images: phi.images().to_vec() };
        Ok(Self::from_parts(group, phi, Some(spec)))
    }

    /// `Λ_n/(t - a)`: the group `Z_n` with `t` acting as multiplication by `a`.
    pub fn linear(n: usize, a: usize) -> Result<Self, ModuleError> {
        if n < 2 {
            return Err(ModuleError::InvalidModulus(n));
        }
        let a = a % n;
        if arith::gcd(a as u64, n as u64) != 1 {
            return Err(ModuleError::NotCoprime { n, a });
        }
        let group = AbelianGroup::cyclic(n);
        let t = GroupAutomorphism::new(&group, vec![a])?;
        Ok(Self::from_parts(group, t, Some(ModuleSpec::Linear { n, a })))
    }

    /// `Λ_n/(h)` with basis `1, t, ..., t^(d-1)`; `t` acts by the companion
    /// matrix of `h`.
    pub fn from_polynomial(h: &Polynomial) -> Result<Self, ModuleError> {
        let n = h.modulus();
        let d = h.degree();
        let group = AbelianGroup::new(vec![n; d])?;
        let c = h.coeffs();
        let mut images: Vec<usize> = (1..d).map(|i| group.generator(i)).collect();
        let top: Vec<usize> = c[..d].iter().map(|&a| (n - a) % n).collect();
        images.push(group.index(&top));
        let t = GroupAutomorphism::new(&group, images)?;
        Ok(Self::from_parts(group, t, Some(ModuleSpec::Poly(h.clone()))))
    }

    /// The zero module.
    pub fn zero() -> Self {
        let group = AbelianGroup::trivial();
        let t = GroupAutomorphism::identity(&group);
        Self::from_parts(group, t, Some(ModuleSpec::Sum(vec![])))
    }

    /// The module with `t` acting trivially on `group`; its quandle is trivial.
    pub fn trivial_action(group: AbelianGroup) -> Self {
        let t = GroupAutomorphism::identity(&group);
        let spec = ModuleSpec::Pair { factors: group.invariant_factors().to_vec(), images: t.images().to_vec() };
        Self::from_parts(group, t, Some(spec))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn t_action(&self) -> &GroupAutomorphism {
        &self.t
    }

    /// Constructor descriptor, if known.
    pub fn spec(&self) -> Option<&ModuleSpec> {
        self.spec.as_ref()
    }

    pub fn with_spec(mut self, spec: ModuleSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn t(&self, x: usize) -> usize {
        self.t.apply(x)
    }

    pub fn t_inv(&self, x: usize) -> usize {
        self.t_inv.apply(x)
    }

    /// `(1 - t) x`.
    pub fn one_minus_t(&self, x: usize) -> usize {
        self.group.sub(x, self.t(x))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.add(a, b)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.group.sub(a, b)
    }

    /// The module with `t` replaced by `t⁻¹`.
    pub fn inverted(&self) -> Self {
        LambdaModule { group: self.group.clone(), t: self.t_inv.clone(), t_inv: self.t.clone(), spec: None }
    }

    pub fn fixed_points(&self) -> usize {
        self.group.elements().filter(|&x| self.t(x) == x).count()
    }

    /// Length of the `t`-orbit of every element.
    pub fn t_orbit_lengths(&self) -> Vec<usize> {
        self.group
            .elements()
            .map(|x| {
                let mut len = 1;
                let mut y = self.t(x);
                while y != x {
                    y = self.t(y);
                    len += 1;
                }
                len
            })
            .collect()
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            invariant_factors: self.group.invariant_factors().to_vec(),
            t_generator_images: self.t.images().iter().map(|&x| self.group.coords(x)).collect(),
        }
    }

    pub fn from_json(json: &ModuleJson) -> Result<Self, ModuleError> {
        let group = AbelianGroup::new(json.invariant_factors.clone())?;
        if json.t_generator_images.len() != group.rank() {
            return Err(GroupError::ImageCount { expected: group.rank(), got: json.t_generator_images.len() }.into());
        }
        let mut images = Vec::with_capacity(group.rank());
        for coords in &json.t_generator_images {
            if coords.len() != group.rank() {
                return Err(ModuleError::Json(format!(
                    "generator image {coords:?} needs {} coordinates",
                    group.rank()
                )));
            }
            images.push(group.index(coords));
        }
        let t = GroupAutomorphism::new(&group, images)?;
        Self::from_pair(group, t)
    }
}

/// On-disk form of a module: invariant factors plus the coordinates of the
/// image of each standard generator under `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub invariant_factors: Vec<usize>,
    pub t_generator_images: Vec<Vec<usize>>,
}

/// `m1 ⊕ m2`, re-coordinatized to invariant-factor form.
pub fn direct_sum(m1: &LambdaModule, m2: &LambdaModule) -> LambdaModule {
    let (o1, o2) = (m1.order(), m2.order());
    let split = |x: usize| (x % o1, x / o1);
    let add = |a: usize, b: usize| {
        let (a1, a2) = split(a);
        let (b1, b2) = split(b);
        m1.add(a1, b1) + o1 * m2.add(a2, b2)
    };
    let all: Vec<usize> = (0..o1 * o2).collect();
    let basis = extract_basis(&all, o1 * o2, add);
    let group = basis.group();
    let embedding = basis.embedding(&group, add);
    let mut to_abstract = vec![0; o1 * o2];
    for (i, &x) in embedding.iter().enumerate() {
        to_abstract[x] = i;
    }
    let images = basis
        .gens
        .iter()
        .map(|&g| {
            let (g1, g2) = split(g);
            to_abstract[m1.t(g1) + o1 * m2.t(g2)]
        })
        .collect();
    let t = GroupAutomorphism::new(&group, images).expect("blockwise t is an automorphism");
    let spec = match (m1.spec(), m2.spec()) {
        (Some(a), Some(b)) => Some(ModuleSpec::sum_of(a.clone(), b.clone())),
        _ => None,
    };
    LambdaModule::from_parts(group, t, spec)
}
