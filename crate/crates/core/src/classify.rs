//! Enumeration and classification of Alexander quandles of a given order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::{abelian_groups_of_order, conjugacy_classes, enumerate_automorphisms, AbelianGroup};
use crate::arith::{factorize, is_prime};
use crate::lambda::{
    certificate, describe, identify_as_quotient, image_one_minus_t, lambda_iso, LambdaModule, ModuleCertificate,
    ModuleError, ModuleSpec, Polynomial,
};

/// A module together with the number of enumerated (group, automorphism)
/// pairs it stands for.
#[derive(Debug, Clone)]
pub struct Structure {
    pub module: LambdaModule,
    pub weight: usize,
}

/// One structure per (abelian group of order `n`, automorphism) pair, or,
/// with `prune`, one per conjugacy class of automorphisms weighted by the
/// class size. Conjugate automorphisms give isomorphic quandles.
pub fn enumerate_structures(n: usize, prune: bool) -> Vec<Structure> {
    abelian_groups_of_order(n).into_iter().flat_map(|g| group_structures(&g, prune)).collect()
}

pub fn group_structures(g: &AbelianGroup, prune: bool) -> Vec<Structure> {
    let auts = enumerate_automorphisms(g);
    let wrap = |phi: &crate::abelian::GroupAutomorphism, weight| Structure {
        module: LambdaModule::from_pair(g.clone(), phi.clone()).expect("enumerated automorphisms are valid"),
        weight,
    };
    if prune {
        conjugacy_classes(g, &auts)
            .expect("the full automorphism group is closed")
            .iter()
            .map(|class| wrap(&auts[class[0]], class.len()))
            .collect()
    } else {
        auts.iter().map(|phi| wrap(phi, 1)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Enumerate one automorphism per conjugacy class.
    pub prune: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { prune: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub representative: ModuleSpec,
    /// Human-readable form of `representative`.
    pub name: String,
    pub connected: bool,
    /// Number of enumerated (group, automorphism) pairs in this class.
    pub class_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub classes: Vec<ClassRecord>,
    pub distinct_count: usize,
    pub connected_count: usize,
}

impl ClassificationReport {
    pub fn total_structures(&self) -> usize {
        self.classes.iter().map(|c| c.class_size).sum()
    }
}

struct Class {
    image: LambdaModule,
    members: Vec<usize>,
}

/// Groups structures into quandle isomorphism classes by comparing their
/// `(1 - t)` images as Λ-modules. Returns member indices per class.
pub fn partition_structures(structures: &[Structure]) -> Vec<Vec<usize>> {
    let mut buckets: BTreeMap<ModuleCertificate, Vec<Class>> = BTreeMap::new();
    for (i, s) in structures.iter().enumerate() {
        let image = image_one_minus_t(&s.module, 1).module().clone();
        let bucket = buckets.entry(certificate(&image)).or_default();
        match bucket.iter_mut().find(|c| lambda_iso(&c.image, &image).is_some()) {
            Some(c) => c.members.push(i),
            None => bucket.push(Class { image, members: vec![i] }),
        }
    }
    buckets.into_values().flatten().map(|c| c.members).collect()
}

/// All Alexander quandles of order `n` up to isomorphism.
///
/// Each class is named by the smallest descriptor among its members, so
/// linear quotients are preferred over polynomial quotients, then sums, then
/// raw (group, automorphism) pairs. Classes are sorted by that descriptor.
pub fn classify_order(n: usize, opts: ClassifyOptions) -> ClassificationReport {
    let structures = enumerate_structures(n, opts.prune);
    let mut classes: Vec<ClassRecord> = partition_structures(&structures)
        .into_iter()
        .map(|members| {
            let representative = members.iter().map(|&i| describe(&structures[i].module)).min().expect("nonempty");
            let first = &structures[members[0]].module;
            ClassRecord {
                name: representative.pretty(),
                representative,
                connected: image_one_minus_t(first, 1).order() == n,
                class_size: members.iter().map(|&i| structures[i].weight).sum(),
            }
        })
        .collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    ClassificationReport {
        order: n,
        distinct_count: classes.len(),
        connected_count: classes.iter().filter(|c| c.connected).count(),
        classes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: usize,
    pub distinct: usize,
    pub connected: usize,
}

/// Class counts for every order `2..=max_n`.
pub fn count_table(max_n: usize) -> Vec<CountRow> {
    (2..=max_n)
        .map(|n| {
            let r = classify_order(n, ClassifyOptions::default());
            CountRow { n, distinct: r.distinct_count, connected: r.connected_count }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub group: AbelianGroup,
    pub module: ModuleSpec,
    pub image: ModuleSpec,
}

/// Modules over `(Z_2)^2`, `(Z_2)^3` and `(Z_3)^2` with their `(1 - t)` images.
pub fn table1_modules() -> Vec<ModuleSpec> {
    let p = |n: usize, c: &[i64]| ModuleSpec::Poly(Polynomial::new(n, c).expect("valid"));
    let pow = |s: ModuleSpec, k: usize| ModuleSpec::Sum(vec![s; k]);
    vec![
        pow(p(2, &[1, 1]), 2),
        p(2, &[1, 0, 1]),
        p(2, &[1, 1, 1]),
        pow(p(2, &[1, 1]), 3),
        ModuleSpec::Sum(vec![p(2, &[1, 1]), p(2, &[1, 0, 1])]),
        p(2, &[1, 0, 0, 1]),
        p(2, &[1, 1, 0, 1]),
        p(2, &[1, 0, 1, 1]),
        p(2, &[1, 1, 1, 1]),
        pow(p(3, &[2, 1]), 2),
        pow(p(3, &[1, 1]), 2),
        p(3, &[2, 0, 1]),
        p(3, &[1, 0, 1]),
        p(3, &[2, 2, 1]),
        p(3, &[1, 2, 1]),
        p(3, &[2, 1, 1]),
        p(3, &[1, 1, 1]),
    ]
}

/// Computes and names the `(1 - t)` image of each module in
/// [`table1_modules`].
pub fn table1_report() -> Vec<Table1Row> {
    table1_modules()
        .into_iter()
        .map(|spec| {
            let m = spec.build().expect("valid");
            let image = identify_as_quotient(image_one_minus_t(&m, 1).module())
                .expect("elementary abelian modules always have a divisor-chain form");
            Table1Row { group: m.group().clone(), module: spec, image }
        })
        .collect()
}

/// Counts from closed-form results, where known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub distinct: Option<usize>,
    pub connected: Option<usize>,
}

/// Closed-form counts for order `n`.
///
/// For a prime `p`: `p - 1` classes, `p - 2` connected. For `p²`:
/// `2p² - 3p - 1` connected. For other `n`, the counts multiply over the
/// prime-power factors (a direct sum is connected iff each summand is), so
/// a value is known when it is known for every factor.
pub fn predicted_counts(n: usize) -> Option<Prediction> {
    let mut distinct = Some(1usize);
    let mut connected = Some(1usize);
    for (p, e) in factorize(n as u64) {
        let p = p as usize;
        let (d, c) = match e {
            1 => (Some(p - 1), Some(p - 2)),
            2 => (None, Some(2 * p * p - 3 * p - 1)),
            _ => (None, None),
        };
        distinct = distinct.zip(d).map(|(x, y)| x * y);
        connected = connected.zip(c).map(|(x, y)| x * y);
    }
    (distinct.is_some() || connected.is_some()).then_some(Prediction { distinct, connected })
}

/// Multiplies per-prime-power `(distinct, connected)` counts over the
/// factorization of `n`.
pub fn product_formula(n: usize, mut per_power: impl FnMut(usize) -> (usize, usize)) -> (usize, usize) {
    factorize(n as u64).into_iter().fold((1, 1), |(d, c), (p, e)| {
        let (dp, cp) = per_power((p as usize).pow(e));
        (d * dp, c * cp)
    })
}

/// A polynomial over a prime field `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyConnectivitySpec {
    h: Polynomial,
}

impl PolyConnectivitySpec {
    pub fn new(h: Polynomial) -> Result<Self, ModuleError> {
        if !is_prime(h.modulus() as u64) {
            return Err(ModuleError::InvalidModulus(h.modulus()));
        }
        Ok(PolyConnectivitySpec { h })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.h
    }
}

/// `Λ_p/(h)` is connected iff `t - 1` does not divide `h`, i.e. `h(1) ≢ 0`.
pub fn poly_connected(spec: &PolyConnectivitySpec) -> bool {
    !spec.h.eval(1).is_multiple_of(spec.h.modulus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::pid_forms;
    use crate::quandle::{alexander_table, theorem1_iso};

    fn pc(p: usize, c: &[i64]) -> bool {
        poly_connected(&PolyConnectivitySpec::new(Polynomial::new(p, c).unwrap()).unwrap())
    }

    #[test]
    fn structure_counts() {
        let total = |n, prune| enumerate_structures(n, prune).iter().map(|s| s.weight).sum::<usize>();
        assert_eq!(enumerate_structures(4, false).len(), 8);
        assert_eq!(enumerate_structures(1, false).len(), 1);
        assert_eq!(enumerate_structures(8, false).len(), 180);
        assert_eq!(total(8, true), 180);
        assert!(enumerate_structures(8, true).len() < 180);
    }

    #[test]
    fn small_orders() {
        let r = classify_order(5, ClassifyOptions::default());
        assert_eq!((r.distinct_count, r.connected_count), (4, 3));
        let names: Vec<String> = r.classes.iter().map(|c| c.representative.to_string()).collect();
        assert_eq!(names, ["linear:5:1", "linear:5:2", "linear:5:3", "linear:5:4"]);
        let r = classify_order(1, ClassifyOptions::default());
        assert_eq!((r.distinct_count, r.connected_count), (1, 1));
    }

    #[test]
    fn order_four_names() {
        let r = classify_order(4, ClassifyOptions::default());
        let names: Vec<String> = r.classes.iter().map(|c| c.name.clone()).collect();
        assert_eq!(names, ["Λ_4/(t-1)", "Λ_4/(t-3)", "Λ_2/(t^2+t+1)"]);
        assert_eq!(r.total_structures(), 8);
    }

    #[test]
    fn pruning_does_not_change_reports() {
        for n in 1..=12 {
            assert_eq!(
                classify_order(n, ClassifyOptions { prune: true }),
                classify_order(n, ClassifyOptions { prune: false }),
                "order {n}"
            );
        }
    }

    #[test]
    fn representatives_are_pairwise_distinct() {
        for n in [8, 9, 12] {
            let r = classify_order(n, ClassifyOptions::default());
            let mods: Vec<_> = r.classes.iter().map(|c| c.representative.build().unwrap()).collect();
            for (i, a) in mods.iter().enumerate() {
                for b in &mods[i + 1..] {
                    assert!(!theorem1_iso(a, b));
                }
            }
        }
    }

    #[test]
    fn z4_plus_z2_has_three_classes() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let structures = group_structures(&g, false);
        let classes = partition_structures(&structures);
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 5]);
        assert_eq!(group_structures(&g, true).len(), 5);
    }

    #[test]
    fn class_count_bounded_by_conjugacy_classes() {
        for n in 2..=15 {
            for g in abelian_groups_of_order(n) {
                let pruned = group_structures(&g, true);
                assert!(partition_structures(&pruned).len() <= pruned.len());
            }
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_counts(7), Some(Prediction { distinct: Some(6), connected: Some(5) }));
        assert_eq!(predicted_counts(9), Some(Prediction { distinct: None, connected: Some(8) }));
        assert_eq!(predicted_counts(25).unwrap().connected, Some(34));
        assert_eq!(predicted_counts(15), Some(Prediction { distinct: Some(8), connected: Some(3) }));
        assert_eq!(predicted_counts(12), Some(Prediction { distinct: None, connected: Some(1) }));
        assert_eq!(predicted_counts(8), None);
        assert_eq!(product_formula(12, |q| if q == 4 { (3, 1) } else { (2, 1) }), (6, 1));
    }

    #[test]
    fn poly_connectivity_examples() {
        assert!(pc(2, &[1, 1, 1]));
        assert!(!pc(2, &[1, 0, 0, 1]));
        assert!(!pc(3, &[1, 1, 1]));
        assert!(PolyConnectivitySpec::new(Polynomial::new(4, &[1, 1]).unwrap()).is_err());
    }

    #[test]
    fn poly_connectivity_matches_orbits() {
        for p in [2, 3] {
            for d in 1..=3 {
                for h in Polynomial::all_of_degree(p, d) {
                    let m = LambdaModule::from_polynomial(&h).unwrap();
                    let spec = PolyConnectivitySpec::new(h).unwrap();
                    assert_eq!(poly_connected(&spec), alexander_table(&m).is_connected(), "{}", spec.polynomial());
                }
            }
        }
    }

    #[test]
    fn pid_forms_give_the_same_classes_as_automorphisms() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let g = AbelianGroup::new(vec![p; k]).unwrap();
            let from_auts = group_structures(&g, false);
            let from_pid: Vec<Structure> =
                pid_forms(p, k).iter().map(|s| Structure { module: s.build().unwrap(), weight: 1 }).collect();
            let reps = |s: &[Structure]| -> Vec<LambdaModule> {
                partition_structures(s).iter().map(|c| s[c[0]].module.clone()).collect()
            };
            let (a, b) = (reps(&from_auts), reps(&from_pid));
            assert_eq!(a.len(), b.len());
            for x in &a {
                assert_eq!(b.iter().filter(|y| theorem1_iso(x, y)).count(), 1);
            }
        }
    }
}
