//! Naming modules by standard constructors.

use crate::arith;

use super::iso::{certificate, lambda_iso_search};
use super::{primary_component, LambdaModule, ModuleSpec, Polynomial};

/// Every module `Λ_p/(h_1) ⊕ ... ⊕ Λ_p/(h_k)` with `h_1 | ... | h_k` and
/// total degree `m`, ordered single quotients first, then by spec ordering.
pub fn pid_forms(p: usize, m: usize) -> Vec<ModuleSpec> {
    fn chains(
        p: usize,
        rest: usize,
        prev: Option<&Polynomial>,
        cur: &mut Vec<Polynomial>,
        out: &mut Vec<Vec<Polynomial>>,
    ) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let min_deg = prev.map_or(1, Polynomial::degree);
        for d in min_deg..=rest {
            for h in Polynomial::all_of_degree(p, d) {
                if prev.is_some_and(|q| !q.divides(&h)) {
                    continue;
                }
                // The remaining factors must all be multiples of h.
                if (rest - d) != 0 && rest - d < d {
                    continue;
                }
                cur.push(h.clone());
                chains(p, rest - d, Some(&h), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    chains(p, m, None, &mut Vec::new(), &mut out);
    let mut specs: Vec<ModuleSpec> = out
        .into_iter()
        .map(|mut hs| {
            if hs.len() == 1 {
                ModuleSpec::Poly(hs.pop().unwrap())
            } else {
                ModuleSpec::Sum(hs.into_iter().map(ModuleSpec::Poly).collect())
            }
        })
        .collect();
    specs.sort();
    specs
}

/// Finds a standard constructor Λ-isomorphic to `m`.
///
/// * order 1: the empty sum;
/// * several primes: the sum of the identified primary components;
/// * elementary abelian `(Z_p)^k`: the unique divisor-chain form over `Λ_p`;
/// * other cyclic groups: `Λ_n/(t - a)`;
/// * other `p`-groups: the smallest matching sum of linear modules on the
///   invariant factors, if any.
pub fn identify_as_quotient(m: &LambdaModule) -> Option<ModuleSpec> {
    let order = m.order();
    if order == 1 {
        return Some(ModuleSpec::Sum(vec![]));
    }
    let primes = arith::factorize(order as u64);
    if primes.len() > 1 {
        let mut parts = Vec::new();
        for (p, _) in primes {
            let part = primary_component(m, p as usize);
            match identify_as_quotient(part.module())? {
                ModuleSpec::Sum(inner) => parts.extend(inner),
                other => parts.push(other),
            }
        }
        return Some(ModuleSpec::Sum(parts));
    }
    let p = primes[0].0 as usize;
    let factors = m.group().invariant_factors();
    let cert = certificate(m);
    let matches = |spec: &ModuleSpec| {
        let cand = spec.build().expect("candidate specs are valid");
        certificate(&cand) == cert && lambda_iso_search(&cand, m).is_some()
    };
    if m.group().exponent() == p {
        return pid_forms(p, factors.len()).into_iter().find(matches);
    }
    if m.group().is_cyclic() {
        return Some(ModuleSpec::Linear { n: order, a: m.t(1) });
    }
    linear_sums(factors).into_iter().find(matches)
}

fn linear_sums(factors: &[usize]) -> Vec<ModuleSpec> {
    let mut out: Vec<Vec<ModuleSpec>> = vec![vec![]];
    for &d in factors {
        let units: Vec<usize> = (1..d).filter(|&a| arith::gcd(a as u64, d as u64) == 1).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                units.iter().map(move |&a| {
                    let mut v = prefix.clone();
                    v.push(ModuleSpec::Linear { n: d, a });
                    v
                })
            })
            .collect();
    }
    let mut specs: Vec<ModuleSpec> = out.into_iter().map(ModuleSpec::Sum).collect();
    specs.sort();
    specs
}

/// A readable descriptor for any module: `Λ_n/(t - a)` when the group is
/// cyclic, else [`identify_as_quotient`], else the raw (group, `t`) pair.
pub fn describe(m: &LambdaModule) -> ModuleSpec {
    if m.order() == 1 {
        return ModuleSpec::Sum(vec![]);
    }
    if m.group().is_cyclic() {
        return ModuleSpec::Linear { n: m.order(), a: m.t(1) };
    }
    identify_as_quotient(m).unwrap_or_else(|| ModuleSpec::Pair {
        factors: m.group().invariant_factors().to_vec(),
        images: m.t_action().images().to_vec(),
    })
}
