use std::collections::{BTreeMap, HashMap};

use crate::lambda::{image_one_minus_t, is_lambda_iso, lambda_iso, LambdaModule, Submodule};

use super::{alexander_table, IsoMethod, IsoWitness, QuandleError};

/// Decides quandle isomorphism of two Alexander quandles: they are
/// isomorphic iff they have the same order and Λ-isomorphic `(1 - t)` images.
pub fn theorem1_iso(m: &LambdaModule, n: &LambdaModule) -> bool {
    m.order() == n.order() && lambda_iso(image_one_minus_t(m, 1).module(), image_one_minus_t(n, 1).module()).is_some()
}

/// Like [`theorem1_iso`], but also builds the quandle isomorphism.
pub fn theorem1_witness(m: &LambdaModule, n: &LambdaModule) -> Option<IsoWitness> {
    if m.order() != n.order() {
        return None;
    }
    let (mi, ni) = (image_one_minus_t(m, 1), image_one_minus_t(n, 1));
    let h = lambda_iso(mi.module(), ni.module())?;
    Some(construct_quandle_iso(m, n, &h).expect("lambda_iso returns valid witnesses"))
}

/// Extends a Λ-isomorphism `h` of the `(1 - t)` images to a quandle
/// isomorphism `m -> n`.
///
/// `h` maps element indices of `image_one_minus_t(m, 1).module()` to those of
/// `image_one_minus_t(n, 1).module()`. Writing `M' = (1-t)M` and
/// `M'' = (1-t)^2 M`:
///
/// 1. take the smallest element of each coset of `M'` in `M` (and in `N`);
/// 2. pair representatives `a`, `b` so that `(1-t)b` and `h((1-t)a)` agree
///    modulo `N''`, which is possible because `h` induces an isomorphism
///    `M'/M'' -> N'/N''`;
/// 3. shift each `b` by some `(1-t)ξ` so the two agree exactly;
/// 4. send `a + w` (with `w` in `M'`) to `k(a) + h(w)`.
pub fn construct_quandle_iso(m: &LambdaModule, n: &LambdaModule, h: &[usize]) -> Result<IsoWitness, QuandleError> {
    if m.order() != n.order() {
        return Err(QuandleError::OrderMismatch(m.order(), n.order()));
    }
    let (mi, ni) = (image_one_minus_t(m, 1), image_one_minus_t(n, 1));
    if !is_lambda_iso(mi.module(), ni.module(), h) {
        return Err(QuandleError::InvalidWitness(
            "not an additive, t-equivariant bijection between the (1 - t) images".into(),
        ));
    }
    let nii = image_one_minus_t(n, 2);
    // h on parent elements of M'.
    let mut hp = vec![usize::MAX; m.order()];
    for (i, &j) in h.iter().enumerate() {
        hp[mi.to_parent(i)] = ni.to_parent(j);
    }

    let (m_rep, m_reps) = coset_reps(m, &mi);
    let (_, n_reps) = coset_reps(n, &ni);
    let (nii_rep_of, _) = coset_reps(n, &nii);

    // Bucket N-representatives by the N''-coset of (1-t)b.
    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &b in &n_reps {
        fibers.entry(nii_rep_of[n.one_minus_t(b)]).or_default().push(b);
    }
    let mut k: HashMap<usize, usize> = HashMap::new();
    let mut taken: HashMap<usize, usize> = HashMap::new();
    for &a in &m_reps {
        let target = nii_rep_of[hp[m.one_minus_t(a)]];
        let fiber = fibers
            .get(&target)
            .ok_or_else(|| QuandleError::InvalidWitness("induced map on M'/M'' is not compatible".into()))?;
        let used = taken.entry(target).or_insert(0);
        let b = *fiber.get(*used).ok_or_else(|| QuandleError::InvalidWitness("coset fibers differ in size".into()))?;
        *used += 1;
        k.insert(a, b);
    }

    // (1-t)^2 ξ -> ξ, smallest ξ first.
    let mut root: HashMap<usize, usize> = HashMap::new();
    for xi in n.group().elements() {
        root.entry(n.one_minus_t(n.one_minus_t(xi))).or_insert(xi);
    }
    for &a in &m_reps {
        let b = k[&a];
        let gap = n.sub(hp[m.one_minus_t(a)], n.one_minus_t(b));
        let xi = *root
            .get(&gap)
            .ok_or_else(|| QuandleError::InvalidWitness("correction term outside (1 - t)^2 N".into()))?;
        k.insert(a, n.add(b, n.one_minus_t(xi)));
    }

    let map: Vec<usize> = m
        .group()
        .elements()
        .map(|x| {
            let a = m_rep[x];
            n.add(k[&a], hp[m.sub(x, a)])
        })
        .collect();
    let witness = IsoWitness { map, method: IsoMethod::Theorem1Constructive };
    if !witness.verify(&alexander_table(m), &alexander_table(n)) {
        return Err(QuandleError::InvalidWitness("constructed map is not a quandle isomorphism".into()));
    }
    Ok(witness)
}

/// For each element, the smallest element of its coset modulo `sub`; and the
/// sorted list of those representatives.
fn coset_reps(m: &LambdaModule, sub: &Submodule) -> (Vec<usize>, Vec<usize>) {
    let mut rep_of = vec![usize::MAX; m.order()];
    let mut reps = Vec::new();
    for x in m.group().elements() {
        if rep_of[x] == usize::MAX {
            reps.push(x);
            for &w in sub.members() {
                rep_of[m.add(x, w)] = x;
            }
        }
    }
    (rep_of, reps)
}
