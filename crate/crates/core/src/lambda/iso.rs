use serde::Serialize;

use super::{image_one_minus_t, LambdaModule};

/// Cheap Λ-module invariants. Isomorphic modules have equal certificates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuleCertificate {
    pub invariant_factors: Vec<usize>,
    pub image_factors: Vec<usize>,
    pub image_squared_order: usize,
    pub fixed_points: usize,
    /// Sorted multiset of `t`-orbit lengths.
    pub orbit_lengths: Vec<usize>,
}

pub fn certificate(m: &LambdaModule) -> ModuleCertificate {
    let mut orbit_lengths = m.t_orbit_lengths();
    orbit_lengths.sort_unstable();
    ModuleCertificate {
        invariant_factors: m.group().invariant_factors().to_vec(),
        image_factors: image_one_minus_t(m, 1).module().group().invariant_factors().to_vec(),
        image_squared_order: image_one_minus_t(m, 2).order(),
        fixed_points: m.fixed_points(),
        orbit_lengths,
    }
}

/// Whether `f` (indexed by elements of `m`) is a Λ-module isomorphism `m -> n`.
pub fn is_lambda_iso(m: &LambdaModule, n: &LambdaModule, f: &[usize]) -> bool {
    if m.order() != n.order() || f.len() != m.order() {
        return false;
    }
    let mut seen = vec![false; n.order()];
    for &y in f {
        if y >= n.order() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    m.group()
        .elements()
        .all(|x| f[m.t(x)] == n.t(f[x]) && m.group().elements().all(|y| f[m.add(x, y)] == n.add(f[x], f[y])))
}

/// A Λ-module isomorphism `m -> n` as an element map, if one exists.
///
/// After comparing certificates, searches over images of the standard
/// generators of `m` (matched on element order and `t`-orbit length),
/// closing the partial map under `+`, `t` and `t⁻¹` after every choice.
pub fn lambda_iso(m: &LambdaModule, n: &LambdaModule) -> Option<Vec<usize>> {
    if m.order() != n.order() || certificate(m) != certificate(n) {
        return None;
    }
    lambda_iso_search(m, n)
}

/// [`lambda_iso`] without the certificate precheck.
pub(crate) fn lambda_iso_search(m: &LambdaModule, n: &LambdaModule) -> Option<Vec<usize>> {
    if m.order() != n.order() {
        return None;
    }
    let m_orbits = m.t_orbit_lengths();
    let n_orbits = n.t_orbit_lengths();
    let gens = m.group().generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let ord = m.group().element_order(g);
            n.group().elements().filter(|&u| n.group().element_order(u) == ord && n_orbits[u] == m_orbits[g]).collect()
        })
        .collect();
    let mut state = Closure::new(m, n);
    if !state.assign(0, 0) {
        return None;
    }
    if state.search(&gens, &candidates, 0) {
        Some(state.map)
    } else {
        None
    }
}

struct Closure<'a> {
    m: &'a LambdaModule,
    n: &'a LambdaModule,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl<'a> Closure<'a> {
    fn new(m: &'a LambdaModule, n: &'a LambdaModule) -> Self {
        Closure { m, n, map: vec![usize::MAX; m.order()], used: vec![false; n.order()], assigned: Vec::new() }
    }

    /// Sets `map[x] = u` and propagates; returns false on a conflict, leaving
    /// partial assignments in place for the caller to undo.
    fn assign(&mut self, x: usize, u: usize) -> bool {
        let mut queue = vec![(x, u)];
        while let Some((x, u)) = queue.pop() {
            let cur = self.map[x];
            if cur == u {
                continue;
            }
            if cur != usize::MAX || self.used[u] {
                return false;
            }
            self.map[x] = u;
            self.used[u] = true;
            queue.push((self.m.t(x), self.n.t(u)));
            queue.push((self.m.t_inv(x), self.n.t_inv(u)));
            self.assigned.push(x);
            for &y in &self.assigned {
                queue.push((self.m.add(x, y), self.n.add(u, self.map[y])));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.assigned.drain(mark..) {
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }

    fn search(&mut self, gens: &[usize], candidates: &[Vec<usize>], mut i: usize) -> bool {
        while i < gens.len() && self.map[gens[i]] != usize::MAX {
            i += 1;
        }
        if i == gens.len() {
            return self.assigned.len() == self.m.order();
        }
        for &u in &candidates[i] {
            if self.used[u] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(gens[i], u) && self.search(gens, candidates, i + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{abelian_groups_of_order, enumerate_automorphisms};
    use crate::lambda::{direct_sum, image_one_minus_t, Polynomial};

    fn poly(n: usize, c: &[i64]) -> LambdaModule {
        LambdaModule::from_polynomial(&Polynomial::new(n, c).unwrap()).unwrap()
    }

    /// Every Λ-module of order `n` from (group, automorphism) pairs.
    fn all_modules(n: usize) -> Vec<LambdaModule> {
        abelian_groups_of_order(n)
            .into_iter()
            .flat_map(|g| {
                enumerate_automorphisms(&g).into_iter().map(move |a| LambdaModule::from_pair(g.clone(), a).unwrap())
            })
            .collect()
    }

    /// Unpruned oracle: try every tuple of generator images, extend by
    /// coordinates, and test the full map.
    fn brute_lambda_iso(m: &LambdaModule, n: &LambdaModule) -> bool {
        if m.order() != n.order() {
            return false;
        }
        let size = n.order();
        let k = m.group().rank();
        (0..size.pow(k as u32)).any(|code| {
            let images: Vec<usize> = (0..k).map(|i| code / size.pow(i as u32) % size).collect();
            let f: Vec<usize> = m
                .group()
                .elements()
                .map(|x| {
                    let c = m.group().coords(x);
                    c.iter().zip(&images).fold(0, |acc, (&ci, &img)| n.add(acc, n.group().scale(ci, img)))
                })
                .collect();
            is_lambda_iso(m, n, &f)
        })
    }

    #[test]
    fn linear_nine_four_and_seven_are_not_lambda_isomorphic() {
        let a = LambdaModule::linear(9, 4).unwrap();
        let b = LambdaModule::linear(9, 7).unwrap();
        assert!(lambda_iso(&a, &b).is_none());
        assert!(!brute_lambda_iso(&a, &b));
    }

    #[test]
    fn self_iso_is_found_and_valid() {
        for m in [poly(2, &[1, 1, 1, 1]), poly(3, &[2, 0, 1]), LambdaModule::linear(12, 5).unwrap()] {
            let f = lambda_iso(&m, &m).unwrap();
            assert!(is_lambda_iso(&m, &m, &f));
        }
        let m = LambdaModule::linear(9, 4).unwrap();
        assert_eq!(lambda_iso(&m, &m).unwrap(), (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn table_one_image_of_t3_t2_t_1() {
        let im = image_one_minus_t(&poly(2, &[1, 1, 1, 1]), 1);
        let target = poly(2, &[1, 0, 1]);
        let f = lambda_iso(&target, im.module()).unwrap();
        assert!(is_lambda_iso(&target, im.module(), &f));
    }

    #[test]
    fn swap_module_is_t_squared_plus_one() {
        let g = crate::abelian::AbelianGroup::new(vec![2, 2]).unwrap();
        let swap = crate::abelian::GroupAutomorphism::new(&g, vec![2, 1]).unwrap();
        let m = LambdaModule::from_pair(g, swap).unwrap();
        assert!(lambda_iso(&m, &poly(2, &[1, 0, 1])).is_some());
    }

    #[test]
    fn sum_of_coprime_linear_is_linear() {
        let m = direct_sum(&LambdaModule::linear(3, 2).unwrap(), &LambdaModule::linear(5, 2).unwrap());
        assert!(lambda_iso(&m, &LambdaModule::linear(15, 2).unwrap()).is_some());
    }

    #[test]
    fn agrees_with_unpruned_oracle_up_to_order_nine() {
        for n in 1..=9 {
            let mods = all_modules(n);
            for (i, a) in mods.iter().enumerate() {
                for b in &mods[i..] {
                    let fast = lambda_iso(a, b);
                    if let Some(f) = &fast {
                        assert!(is_lambda_iso(a, b, f));
                    }
                    assert_eq!(fast.is_some(), brute_lambda_iso(a, b), "order {n}: {:?} vs {:?}", a.spec(), b.spec());
                }
            }
        }
    }

    #[test]
    fn equivalence_relation_on_order_eight() {
        let mods = all_modules(8);
        let k = mods.len();
        let related: Vec<Vec<bool>> =
            mods.iter().map(|a| mods.iter().map(|b| lambda_iso(a, b).is_some()).collect()).collect();
        for i in 0..k {
            assert!(related[i][i]);
            for j in 0..k {
                assert_eq!(related[i][j], related[j][i]);
                if related[i][j] {
                    for (l, &jl) in related[j].iter().enumerate() {
                        assert!(!jl || related[i][l]);
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_invert() {
        let a = poly(3, &[1, 0, 1]);
        let g = a.group().clone();
        for phi in enumerate_automorphisms(&g) {
            let b = LambdaModule::from_pair(g.clone(), phi).unwrap();
            if let Some(f) = lambda_iso(&a, &b) {
                let mut inv = vec![0; f.len()];
                for (x, &y) in f.iter().enumerate() {
                    inv[y] = x;
                }
                assert!(is_lambda_iso(&b, &a, &inv));
            }
        }
    }
}
