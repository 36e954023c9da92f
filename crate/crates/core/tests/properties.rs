use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use alexq::arith::gcd;
use alexq::classify::enumerate_structures;
use alexq::lambda::{direct_sum, image_one_minus_t, is_lambda_iso, lambda_iso, LambdaModule};
use alexq::linear::{linear_dual, linear_iso, n_cap};
use alexq::quandle::{alexander_table, brute_iso, theorem1_iso, theorem1_witness, QuandleTable};

/// Every (group, automorphism) module of each order up to 16.
fn all_modules() -> &'static Vec<Vec<LambdaModule>> {
    static CACHE: OnceLock<Vec<Vec<LambdaModule>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let order = |n| enumerate_structures(n, false).into_iter().map(|s| s.module).collect();
        std::iter::once(vec![]).chain((1..=16).map(order)).collect()
    })
}

fn module(max: usize) -> impl Strategy<Value = LambdaModule> {
    (1..=max, any::<Index>()).prop_map(|(n, i)| {
        let mods = &all_modules()[n];
        mods[i.index(mods.len())].clone()
    })
}

fn same_order_pair(max: usize) -> impl Strategy<Value = (LambdaModule, LambdaModule)> {
    (1..=max, any::<Index>(), any::<Index>()).prop_map(|(n, i, j)| {
        let mods = &all_modules()[n];
        (mods[i.index(mods.len())].clone(), mods[j.index(mods.len())].clone())
    })
}

fn unit(n: usize) -> impl Strategy<Value = i64> {
    (1..n as i64).prop_filter("unit", move |&a| gcd(n as u64, a as u64) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tables_satisfy_the_axioms(m in module(16)) {
        prop_assert!(alexander_table(&m).check_axioms().is_ok());
    }

    #[test]
    fn dual_is_an_involution_and_inverts_t(m in module(16)) {
        let t = alexander_table(&m);
        prop_assert_eq!(t.dual().dual(), t.clone());
        prop_assert_eq!(t.dual(), alexander_table(&m.inverted()));
    }

    #[test]
    fn t_then_inverse_is_identity(m in module(16)) {
        for x in m.group().elements() {
            prop_assert_eq!(m.t_inv(m.t(x)), x);
        }
    }

    #[test]
    fn connected_iff_image_is_everything(m in module(16)) {
        let full = image_one_minus_t(&m, 1).order() == m.order();
        prop_assert_eq!(alexander_table(&m).is_connected(), full);
    }

    #[test]
    fn orbits_are_cosets_of_the_image(m in module(16)) {
        let image = image_one_minus_t(&m, 1);
        for orbit in alexander_table(&m).orbits() {
            prop_assert_eq!(orbit.len(), image.order());
            let base = orbit[0];
            for &x in &orbit {
                prop_assert!(image.contains(m.sub(x, base)));
            }
        }
    }

    #[test]
    fn second_image_is_inside_the_first(m in module(16)) {
        let (one, two) = (image_one_minus_t(&m, 1), image_one_minus_t(&m, 2));
        prop_assert!(two.members().iter().all(|&x| one.contains(x)));
        prop_assert_eq!(one.order() % two.order(), 0);
        prop_assert_eq!(m.order() % one.order(), 0);
    }

    #[test]
    fn criterion_matches_brute_force((a, b) in same_order_pair(12)) {
        let (ta, tb) = (alexander_table(&a), alexander_table(&b));
        let brute = brute_iso(&ta, &tb);
        prop_assert_eq!(theorem1_iso(&a, &b), brute.is_some());
        if let Some(w) = brute {
            prop_assert!(w.verify(&ta, &tb));
            let built = theorem1_witness(&a, &b).unwrap();
            prop_assert!(built.verify(&ta, &tb));
        }
    }

    #[test]
    fn lambda_witnesses_are_valid_and_invertible((a, b) in same_order_pair(12)) {
        if let Some(f) = lambda_iso(&a, &b) {
            prop_assert!(is_lambda_iso(&a, &b, &f));
            let mut inv = vec![0; f.len()];
            for (x, &y) in f.iter().enumerate() {
                inv[y] = x;
            }
            prop_assert!(is_lambda_iso(&b, &a, &inv));
        } else {
            prop_assert!(lambda_iso(&b, &a).is_none());
        }
    }

    #[test]
    fn direct_sums_multiply_orders(a in module(6), b in module(6)) {
        let s = direct_sum(&a, &b);
        prop_assert_eq!(s.order(), a.order() * b.order());
        prop_assert!(alexander_table(&s).check_axioms().is_ok());
        let connected = |m: &LambdaModule| image_one_minus_t(m, 1).order() == m.order();
        prop_assert_eq!(connected(&s), connected(&a) && connected(&b));
    }

    #[test]
    fn table_formats_round_trip(m in module(16)) {
        let t = alexander_table(&m);
        prop_assert_eq!(QuandleTable::from_json(&t.to_json()).unwrap(), t.clone());
        prop_assert_eq!(QuandleTable::from_text(&t.to_text()).unwrap(), t);
        prop_assert_eq!(LambdaModule::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn linear_iso_is_an_equivalence((n, a, b, c) in (2usize..=60).prop_flat_map(|n| (Just(n), unit(n), unit(n), unit(n)))) {
        prop_assert!(linear_iso(n, a, a).unwrap());
        prop_assert_eq!(linear_iso(n, a, b).unwrap(), linear_iso(n, b, a).unwrap());
        if linear_iso(n, a, b).unwrap() && linear_iso(n, b, c).unwrap() {
            prop_assert!(linear_iso(n, a, c).unwrap());
        }
        prop_assert_eq!(linear_dual(n, a, b).unwrap(), linear_dual(n, b, a).unwrap());
    }

    #[test]
    fn n_cap_is_the_image_order((n, a) in (2usize..=40).prop_flat_map(|n| (Just(n), unit(n)))) {
        let m = LambdaModule::linear(n, a as usize).unwrap();
        prop_assert_eq!(n_cap(n, a), image_one_minus_t(&m, 1).order());
    }
}

/// A quandle isomorphism between Alexander quandles that fixes 0 commutes
/// with `t` and with `1 - t`.
#[test]
fn zero_fixing_isomorphisms_are_t_linear() {
    for n in 1..=9 {
        let mods = &all_modules()[n];
        let tables: Vec<QuandleTable> = mods.iter().map(alexander_table).collect();
        for (i, m) in mods.iter().enumerate() {
            for (j, k) in mods.iter().enumerate() {
                let Some(w) = brute_iso(&tables[i], &tables[j]) else { continue };
                let shift = w.map[0];
                let f: Vec<usize> = w.map.iter().map(|&y| k.sub(y, shift)).collect();
                for x in m.group().elements() {
                    assert_eq!(f[m.t(x)], k.t(f[x]));
                    assert_eq!(f[m.one_minus_t(x)], k.one_minus_t(f[x]));
                }
            }
        }
    }
}

#[test]
fn linear_duality_matches_table_oracle() {
    for n in 2..=15usize {
        let units: Vec<i64> = (1..n as i64).filter(|&a| gcd(n as u64, a as u64) == 1).collect();
        let tables: Vec<QuandleTable> =
            units.iter().map(|&a| alexander_table(&LambdaModule::linear(n, a as usize).unwrap())).collect();
        for (i, &a) in units.iter().enumerate() {
            let inv = units.iter().position(|&b| (a * b) as usize % n == 1).unwrap();
            assert!(brute_iso(&tables[i].dual(), &tables[inv]).is_some());
            for (j, &b) in units.iter().enumerate() {
                assert_eq!(linear_dual(n, a, b).unwrap(), brute_iso(&tables[i].dual(), &tables[j]).is_some());
            }
        }
    }
}
