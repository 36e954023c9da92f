use std::fmt;

use serde::{Serialize, Serializer};

use crate::abelian::{AbelianGroup, GroupAutomorphism};

use super::{direct_sum, LambdaModule, ModuleError, Polynomial};

/// How a module was (or can be) constructed.
///
/// The derived ordering ranks variants as linear < polynomial quotient <
/// direct sum < raw pair, then compares fields lexicographically. Class
/// representatives are chosen as the minimum under this ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleSpec {
    /// `Λ_n/(t - a)`.
    Linear { n: usize, a: usize },
    /// `Λ_n/(h)`.
    Poly(Polynomial),
    /// Direct sum; the empty sum is the zero module.
    Sum(Vec<ModuleSpec>),
    /// A group in invariant-factor form with the generator images of `t`
    /// given as element indices.
    Pair { factors: Vec<usize>, images: Vec<usize> },
}

impl ModuleSpec {
    /// Sum of two specs, flattening nested sums.
    pub fn sum_of(a: ModuleSpec, b: ModuleSpec) -> ModuleSpec {
        let mut parts = Vec::new();
        for s in [a, b] {
            match s {
                ModuleSpec::Sum(inner) => parts.extend(inner),
                other => parts.push(other),
            }
        }
        ModuleSpec::Sum(parts)
    }

    pub fn build(&self) -> Result<LambdaModule, ModuleError> {
        let module = match self {
            ModuleSpec::Linear { n, a } => LambdaModule::linear(*n, *a)?,
            ModuleSpec::Poly(h) => LambdaModule::from_polynomial(h)?,
            ModuleSpec::Sum(parts) => {
                let mut acc = LambdaModule::zero();
                for p in parts {
                    acc = direct_sum(&acc, &p.build()?);
                }
                acc
            }
            ModuleSpec::Pair { factors, images } => {
                let group = AbelianGroup::new(factors.clone())?;
                let t = GroupAutomorphism::new(&group, images.clone())?;
                LambdaModule::from_pair(group, t)?
            }
        };
        Ok(module.with_spec(self.clone()))
    }

    /// Mathematical notation, e.g. `Λ_2/(t+1) ⊕ Λ_2/(t^2+1)` or
    /// `(Λ_3/(t+1))^2`.
    pub fn pretty(&self) -> String {
        match self {
            ModuleSpec::Linear { n, a } => format!("Λ_{n}/(t-{a})"),
            ModuleSpec::Poly(h) => format!("Λ_{}/({h})", h.modulus()),
            ModuleSpec::Sum(parts) if parts.is_empty() => "0".to_string(),
            ModuleSpec::Sum(parts) => {
                let mut out: Vec<String> = Vec::new();
                let mut i = 0;
                while i < parts.len() {
                    let mut j = i;
                    while j < parts.len() && parts[j] == parts[i] {
                        j += 1;
                    }
                    let inner = parts[i].pretty();
                    out.push(if j - i > 1 { format!("({inner})^{}", j - i) } else { inner });
                    i = j;
                }
                out.join(" ⊕ ")
            }
            ModuleSpec::Pair { factors, images } => {
                let group = AbelianGroup::new(factors.clone()).expect("stored factors are canonical");
                let imgs: Vec<String> = images.iter().map(|&x| format!("{:?}", group.coords(x))).collect();
                format!("({group}, t: {})", imgs.join(", "))
            }
        }
    }
}

impl fmt::Display for ModuleSpec {
    /// Spec-string form (`linear:9:4`, `poly:2:1,0,1`, `sum:A+B`); the zero
    /// module prints as `0` and raw pairs as `pair:[factors]:[images]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Linear { n, a } => write!(f, "linear:{n}:{a}"),
            ModuleSpec::Poly(h) => {
                let c: Vec<String> = h.coeffs().iter().map(|c| c.to_string()).collect();
                write!(f, "poly:{}:{}", h.modulus(), c.join(","))
            }
            ModuleSpec::Sum(parts) if parts.is_empty() => write!(f, "0"),
            ModuleSpec::Sum(parts) => {
                let p: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "sum:{}", p.join("+"))
            }
            ModuleSpec::Pair { factors, images } => {
                let group = AbelianGroup::new(factors.clone()).expect("stored factors are canonical");
                let imgs: Vec<Vec<usize>> = images.iter().map(|&x| group.coords(x)).collect();
                write!(f, "pair:{factors:?}:{imgs:?}")
            }
        }
    }
}

impl Serialize for ModuleSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[i64]) -> ModuleSpec {
        ModuleSpec::Poly(Polynomial::new(n, c).unwrap())
    }

    #[test]
    fn preference_order() {
        let lin = ModuleSpec::Linear { n: 8, a: 5 };
        let poly = p(2, &[1, 1]);
        let sum = ModuleSpec::Sum(vec![p(2, &[1, 1]), p(2, &[1, 0, 1])]);
        let pair = ModuleSpec::Pair { factors: vec![2, 4], images: vec![1, 2] };
        assert!(lin < poly && poly < sum && sum < pair);
        assert!(ModuleSpec::Linear { n: 8, a: 3 } < lin);
    }

    #[test]
    fn notation() {
        let two = ModuleSpec::Sum(vec![p(2, &[1, 1]), p(2, &[1, 1])]);
        assert_eq!(two.pretty(), "(Λ_2/(t+1))^2");
        let mixed = ModuleSpec::Sum(vec![p(2, &[1, 1]), p(2, &[1, 0, 1])]);
        assert_eq!(mixed.pretty(), "Λ_2/(t+1) ⊕ Λ_2/(t^2+1)");
        assert_eq!(ModuleSpec::Sum(vec![]).pretty(), "0");
        assert_eq!(ModuleSpec::Linear { n: 9, a: 4 }.pretty(), "Λ_9/(t-4)");
        assert_eq!(mixed.to_string(), "sum:poly:2:1,1+poly:2:1,0,1");
        let pair = ModuleSpec::Pair { factors: vec![2, 4], images: vec![1, 3] };
        assert_eq!(pair.to_string(), "pair:[2, 4]:[[1, 0], [1, 1]]");
    }

    #[test]
    fn build_matches_constructors() {
        let m = ModuleSpec::Linear { n: 9, a: 4 }.build().unwrap();
        assert_eq!(m, LambdaModule::linear(9, 4).unwrap());
        assert_eq!(ModuleSpec::Sum(vec![]).build().unwrap().order(), 1);
        let m = ModuleSpec::Sum(vec![p(2, &[1, 1]), p(2, &[1, 1])]).build().unwrap();
        assert_eq!(m.fixed_points(), 4);
        assert!(ModuleSpec::Pair { factors: vec![2, 4], images: vec![2, 1] }.build().is_err());
    }
}
