use phk_core::algebra::catalogue::catalogue;
use phk_core::algebra::finab::{AbGroup, AbHom, FinAb};
use phk_core::algebra::snf::{invariant_factors, smith_normal_form, IntMatrix};
use phk_core::classifying::bar_construction;
use phk_core::cohomology::nonabelian::{class_key, enumerate_cocycles, TwistingCocycle};
use phk_core::corpus;
use phk_core::homotopy::fundamental::edge_path_presentation;
use phk_core::simplicial::product;
use phk_core::towers::{lim1_truncations, tower_lim, tower_lim1, AbTower};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..=12, c), r))
}

fn wide(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows)
        .map(|i| m.row(i).iter().map(|&x| x as i128).collect())
        .collect()
}

fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum())
                .collect()
        })
        .collect()
}

/// Tower whose level-k orders all divide the level-(k+1) orders.
fn tower() -> impl Strategy<Value = AbTower> {
    (1usize..6, 1u64..5)
        .prop_flat_map(|(len, base)| {
            (
                Just(len),
                Just(base),
                prop::collection::vec(1u64..4, len),
                prop::collection::vec(0usize..3, len),
                prop::collection::vec(prop::collection::vec(0u64..1000, 9), len),
            )
        })
        .prop_map(|(len, base, steps, widths, entries)| {
            let mut orders = vec![base];
            for k in 1..len {
                orders.push(orders[k - 1] * steps[k]);
            }
            let levels: Vec<AbGroup> = (0..len)
                .map(|k| AbGroup::new(vec![orders[k]; widths[k]]).unwrap())
                .collect();
            let transitions = (0..len - 1)
                .map(|k| {
                    let (r, c) = (levels[k].ngens(), levels[k + 1].ngens());
                    let m = (0..r)
                        .map(|i| (0..c).map(|j| entries[k][i * 3 + j] % orders[k]).collect())
                        .collect();
                    AbHom::new(levels[k + 1].clone(), levels[k].clone(), m).unwrap()
                })
                .collect();
            AbTower::new(levels, transitions).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(mul(&mul(&wide(&s.u), &wide(&a)), &wide(&s.v)), wide(&s.d));
        let diag = s.diagonal();
        prop_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(invariant_factors(&a), diag);
    }

    #[test]
    fn finite_towers_have_no_lim1(t in tower()) {
        prop_assert!(tower_lim1(&t).is_zero());
        prop_assert!(lim1_truncations(&t).iter().all(FinAb::is_zero));
        let lim = tower_lim(&t).unwrap();
        // eventual images form a surjective tower
        for k in 0..lim.images.len().saturating_sub(1) {
            prop_assert!(lim.images[k + 1].order().unwrap() >= lim.images[k].order().unwrap());
        }
    }

    #[test]
    fn finab_text_round_trip(orders in prop::collection::vec(2u64..30, 0..4), rank in 0usize..3) {
        let a = FinAb::new(orders, rank);
        let back: FinAb = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn gauge_preserves_class(seed in 0usize..1000, gauge in prop::collection::vec(0usize..6, 6)) {
        let x = corpus::rp2(3).unwrap();
        let g = phk_core::algebra::group::FiniteGroup::symmetric(3);
        let cocycles = enumerate_cocycles(&x, &g, 100_000).unwrap();
        let tau = TwistingCocycle::new(x.clone(), g, cocycles[seed % cocycles.len()].clone()).unwrap();
        let ep = edge_path_presentation(&x, 0).unwrap();
        let moved = tau.gauge(&gauge[..x.count(0)]);
        prop_assert_eq!(class_key(&ep, &moved), class_key(&ep, &tau));
    }

    #[test]
    fn bar_constructions_are_simplicial(k in 0usize..8) {
        let entries: Vec<_> = catalogue().up_to(8).collect();
        let g = &entries[k % entries.len()].group;
        let bar = bar_construction(g, 3).unwrap();
        bar.bg_space().check_identities().unwrap();
        bar.eg_space().check_identities().unwrap();
    }
}

#[test]
fn products_are_simplicial() {
    let c = corpus::circle(3).unwrap();
    let w = corpus::wedge2(3).unwrap();
    let p = product(&c, &w, 3).unwrap();
    p.space.check_identities().unwrap();
    assert_eq!(p.space.euler_characteristic(), 0);
}
