//! Finite abelian groups in invariant-factor form.
//!
//! Elements are stored as mixed-radix indices with the first (smallest)
//! invariant factor as the least significant digit. Index 0 is the identity.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid invariant factors {0:?}: need d_i >= 2 and d_i | d_(i+1)")]
    InvalidFactors(Vec<usize>),
    #[error("invalid cyclic factor {0}")]
    InvalidModulus(usize),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("image of generator {generator} has order not dividing {factor}")]
    NotWellDefined { generator: usize, factor: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map is not additive: f({x}+{y}) != f({x})+f({y})")]
    NotAdditive { x: usize, y: usize },
    #[error("automorphism list is not closed under conjugation")]
    NotClosed,
}

/// A finite abelian group `Z_{d_1} + ... + Z_{d_k}` with `d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AbelianGroup {
    factors: Vec<usize>,
    order: usize,
}

impl TryFrom<Vec<usize>> for AbelianGroup {
    type Error = GroupError;

    fn try_from(factors: Vec<usize>) -> Result<Self, GroupError> {
        AbelianGroup::new(factors)
    }
}

impl From<AbelianGroup> for Vec<usize> {
    fn from(g: AbelianGroup) -> Self {
        g.factors
    }
}

impl AbelianGroup {
    /// Builds a group from a canonical invariant-factor sequence.
    pub fn new(factors: Vec<usize>) -> Result<Self, GroupError> {
        let canonical = factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !canonical {
            return Err(GroupError::InvalidFactors(factors));
        }
        let order = factors.iter().product();
        Ok(AbelianGroup { factors, order })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![], order: 1 }
    }

    pub fn cyclic(n: usize) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            AbelianGroup { factors: vec![n], order: n }
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (e.g. `[4, 2]`) to
    /// invariant-factor form. Factors equal to 1 are dropped.
    pub fn from_cyclic_orders(orders: &[usize]) -> Result<Self, GroupError> {
        if let Some(&bad) = orders.iter().find(|&&d| d == 0) {
            return Err(GroupError::InvalidModulus(bad));
        }
        // Collect prime-power parts per prime, then merge largest-with-largest.
        let mut by_prime: HashMap<u64, Vec<u64>> = HashMap::new();
        for &d in orders {
            for (p, e) in arith::factorize(d as u64) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let rank = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for mut parts in by_prime.into_values() {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in factors.iter_mut().rev().zip(parts) {
                *slot *= q;
            }
        }
        Self::new(factors.into_iter().map(|d| d as usize).collect())
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Largest element order.
    pub fn exponent(&self) -> usize {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&d| {
                let c = x % d;
                x /= d;
                c
            })
            .collect()
    }

    /// Index of the element with the given coordinates; coordinates are
    /// reduced modulo their factor.
    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        let mut idx = 0;
        for (&c, &d) in coords.iter().zip(&self.factors).rev() {
            idx = idx * d + c % d;
        }
        idx
    }

    /// The i-th standard generator.
    pub fn generator(&self, i: usize) -> usize {
        self.factors[..i].iter().product()
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn add(&self, mut a: usize, mut b: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &d in &self.factors {
            out += ((a % d + b % d) % d) * place;
            a /= d;
            b /= d;
            place *= d;
        }
        out
    }

    pub fn neg(&self, mut a: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &d in &self.factors {
            out += ((d - a % d) % d) * place;
            a /= d;
            place *= d;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k * a`.
    pub fn scale(&self, k: usize, mut a: usize) -> usize {
        let mut out = 0;
        let mut place = 1;
        for &d in &self.factors {
            out += ((a % d) * (k % d) % d) * place;
            a /= d;
            place *= d;
        }
        out
    }

    pub fn element_order(&self, mut a: usize) -> usize {
        let mut ord = 1u64;
        for &d in &self.factors {
            let c = a % d;
            a /= d;
            ord = arith::lcm(ord, (d / arith::gcd(c as u64, d as u64) as usize) as u64);
        }
        ord as usize
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Every abelian group of order `n`, once each, in invariant-factor form.
///
/// Groups are ordered by rank, then lexicographically, so the cyclic group
/// comes first.
pub fn abelian_groups_of_order(n: usize) -> Vec<AbelianGroup> {
    assert!(n >= 1, "group order must be positive");
    // Each prime contributes a partition of its exponent; the j-th largest
    // parts across primes multiply into the j-th largest invariant factor.
    let mut combos: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in arith::factorize(n as u64) {
        let mut next = Vec::new();
        for combo in &combos {
            for part in arith::partitions(e) {
                let len = combo.len().max(part.len());
                let mut merged = vec![1u64; len];
                for (j, q) in combo.iter().enumerate() {
                    merged[j] *= q;
                }
                for (j, &k) in part.iter().enumerate() {
                    merged[j] *= p.pow(k);
                }
                next.push(merged);
            }
        }
        combos = next;
    }
    let mut groups: Vec<AbelianGroup> = combos
        .into_iter()
        .map(|mut desc| {
            desc.reverse();
            AbelianGroup::new(desc.into_iter().map(|d| d as usize).collect()).expect("merged partitions are canonical")
        })
        .collect();
    groups.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.factors.cmp(&b.factors)));
    groups
}

/// An automorphism of an [`AbelianGroup`], stored both by generator images
/// and as the full permutation of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    images: Vec<usize>,
    map: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        GroupAutomorphism { images: group.generators(), map: group.elements().collect() }
    }

    /// Builds the endomorphism sending the i-th standard generator to
    /// `images[i]`, failing if it is not well defined or not bijective.
    pub fn new(group: &AbelianGroup, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != group.rank() {
            return Err(GroupError::ImageCount { expected: group.rank(), got: images.len() });
        }
        if let Some(&x) = images.iter().find(|&&x| x >= group.order()) {
            return Err(GroupError::ElementOutOfRange(x));
        }
        for (i, (&img, &d)) in images.iter().zip(group.invariant_factors()).enumerate() {
            if d % group.element_order(img) != 0 {
                return Err(GroupError::NotWellDefined { generator: i, factor: d });
            }
        }
        let map = extend_images(group, &images).ok_or(GroupError::NotBijective)?;
        Ok(GroupAutomorphism { images, map })
    }

    /// Builds an automorphism from a full element map, checking that it is
    /// a bijective homomorphism.
    pub fn from_map(group: &AbelianGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != group.order() {
            return Err(GroupError::NotBijective);
        }
        let mut seen = vec![false; map.len()];
        for &y in &map {
            if y >= map.len() || std::mem::replace(&mut seen[y], true) {
                return Err(GroupError::NotBijective);
            }
        }
        for x in group.elements() {
            for y in group.elements() {
                if map[group.add(x, y)] != group.add(map[x], map[y]) {
                    return Err(GroupError::NotAdditive { x, y });
                }
            }
        }
        let images = group.generators().into_iter().map(|g| map[g]).collect();
        Ok(GroupAutomorphism { images, map })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn inverse(&self, group: &AbelianGroup) -> Self {
        let mut map = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        let images = group.generators().into_iter().map(|g| map[g]).collect();
        GroupAutomorphism { images, map }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        GroupAutomorphism {
            images: other.images.iter().map(|&x| self.map[x]).collect(),
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    /// Sorted cycle lengths of the element permutation.
    pub fn cycle_type(&self) -> Vec<usize> {
        permutation_cycle_type(&self.map)
    }
}

pub(crate) fn permutation_cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Extends generator images to a full element map, or `None` if the map is
/// not injective. Assumes the images are well defined.
fn extend_images(group: &AbelianGroup, images: &[usize]) -> Option<Vec<usize>> {
    let mut map = Vec::with_capacity(group.order());
    map.push(0);
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    for (&img, &d) in images.iter().zip(group.invariant_factors()) {
        let prefix = map.len();
        let mut step = img;
        for _ in 1..d {
            for j in 0..prefix {
                let y = group.add(map[j], step);
                if std::mem::replace(&mut seen[y], true) {
                    return None;
                }
                map.push(y);
            }
            step = group.add(step, img);
        }
    }
    Some(map)
}

/// All automorphisms of `group`, ordered lexicographically by the tuple of
/// generator-image indices.
pub fn enumerate_automorphisms(group: &AbelianGroup) -> Vec<GroupAutomorphism> {
    let factors = group.invariant_factors();
    let candidates: Vec<Vec<usize>> =
        factors.iter().map(|&d| group.elements().filter(|&x| d % group.element_order(x) == 0).collect()).collect();

    // Depth-first over generator images; the partial map covers the span of
    // the generators chosen so far and must stay injective.
    fn go(
        group: &AbelianGroup,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        map: &mut Vec<usize>,
        seen: &mut Vec<bool>,
        out: &mut Vec<GroupAutomorphism>,
    ) {
        let i = images.len();
        if i == candidates.len() {
            out.push(GroupAutomorphism { images: images.clone(), map: map.clone() });
            return;
        }
        let d = group.invariant_factors()[i];
        let prefix = map.len();
        'cand: for &img in &candidates[i] {
            let mut step = img;
            for _ in 1..d {
                for j in 0..prefix {
                    let y = group.add(map[j], step);
                    if seen[y] {
                        for &z in &map[prefix..] {
                            seen[z] = false;
                        }
                        map.truncate(prefix);
                        continue 'cand;
                    }
                    seen[y] = true;
                    map.push(y);
                }
                step = group.add(step, img);
            }
            images.push(img);
            go(group, candidates, images, map, seen, out);
            images.pop();
            for &z in &map[prefix..] {
                seen[z] = false;
            }
            map.truncate(prefix);
        }
    }

    let mut out = Vec::new();
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    go(group, &candidates, &mut Vec::new(), &mut vec![0], &mut seen, &mut out);
    out
}

/// Partitions a full automorphism group into conjugacy classes.
///
/// Classes are returned as lists of indices into `auts`, each sorted; the
/// first entry of each class is its lexicographically smallest member
/// (assuming `auts` is in [`enumerate_automorphisms`] order), and classes are
/// ordered by that representative.
pub fn conjugacy_classes(group: &AbelianGroup, auts: &[GroupAutomorphism]) -> Result<Vec<Vec<usize>>, GroupError> {
    let lookup: HashMap<&[usize], usize> = auts.iter().enumerate().map(|(i, a)| (a.map(), i)).collect();
    let inverses: Vec<GroupAutomorphism> = auts.iter().map(|a| a.inverse(group)).collect();
    for inv in &inverses {
        if !lookup.contains_key(inv.map()) {
            return Err(GroupError::NotClosed);
        }
    }
    let mut class_of = vec![usize::MAX; auts.len()];
    let mut classes = Vec::new();
    for g in 0..auts.len() {
        if class_of[g] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for (h, h_inv) in auts.iter().zip(&inverses) {
            let conj = h_inv.compose(&auts[g]).compose(h);
            let &c = lookup.get(conj.map()).ok_or(GroupError::NotClosed)?;
            if class_of[c] == usize::MAX {
                class_of[c] = id;
                members.push(c);
            } else if class_of[c] != id {
                return Err(GroupError::NotClosed);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(classes)
}

/// A basis of a finite abelian group given as a set of elements inside some
/// ambient group.
#[derive(Debug, Clone)]
pub(crate) struct Basis {
    /// Invariant factors, ascending.
    pub factors: Vec<usize>,
    /// Ambient element for each factor.
    pub gens: Vec<usize>,
}

/// Finds an invariant-factor basis of the subgroup `members` of an ambient
/// group with `ambient_size` elements, identity 0, and addition `add`.
///
/// Repeatedly picks the element of largest order modulo the span found so
/// far, then lifts it to an element of the same order in the whole group.
pub(crate) fn extract_basis(members: &[usize], ambient_size: usize, add: impl Fn(usize, usize) -> usize) -> Basis {
    let mut in_span = vec![false; ambient_size];
    in_span[0] = true;
    let mut span = vec![0usize];
    let mut picked: Vec<(usize, usize)> = Vec::new();

    let order_mod = |x: usize, in_span: &[bool]| {
        let mut k = 1;
        let mut y = x;
        while !in_span[y] {
            y = add(y, x);
            k += 1;
        }
        k
    };
    let order_of = |x: usize| {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = add(y, x);
            k += 1;
        }
        k
    };

    while span.len() < members.len() {
        let mut best = (0usize, 0usize);
        for &x in members {
            let m = order_mod(x, &in_span);
            if m > best.1 {
                best = (x, m);
            }
        }
        let (x, m) = best;
        let lift = span
            .iter()
            .map(|&s| add(x, s))
            .filter(|&y| order_of(y) == m)
            .min()
            .expect("a lift of maximal order exists");
        let mut grown = span.clone();
        let mut step = lift;
        for _ in 1..m {
            for &s in &span {
                let y = add(s, step);
                debug_assert!(!in_span[y]);
                in_span[y] = true;
                grown.push(y);
            }
            step = add(step, lift);
        }
        span = grown;
        picked.push((lift, m));
    }
    picked.sort_by_key(|&(_, m)| m);
    debug_assert!(picked.windows(2).all(|w| w[1].1 % w[0].1 == 0));
    Basis { factors: picked.iter().map(|&(_, m)| m).collect(), gens: picked.iter().map(|&(g, _)| g).collect() }
}

impl Basis {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(self.factors.clone()).expect("extracted factors are canonical")
    }

    /// Ambient element for every abstract index of [`Basis::group`].
    pub fn embedding(&self, group: &AbelianGroup, add: impl Fn(usize, usize) -> usize) -> Vec<usize> {
        let mut out = vec![0usize];
        for (&g, &d) in self.gens.iter().zip(&self.factors) {
            let prefix = out.len();
            let mut step = g;
            for _ in 1..d {
                for j in 0..prefix {
                    let y = add(out[j], step);
                    out.push(y);
                }
                step = add(step, g);
            }
        }
        debug_assert_eq!(out.len(), group.order());
        out
    }
}
