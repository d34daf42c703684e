//! Results checked against closed forms computed independently of the
//! library.

use std::sync::Arc;

use num_integer::gcd;
use phk_core::algebra::finab::{AbGroup, FinAb};
use phk_core::algebra::group::FiniteGroup;
use phk_core::algebra::module::{group_cohomology, ModuleAction};
use phk_core::classifying::bar_construction;
use phk_core::cohomology::chains::cohomology;
use phk_core::cohomology::explicit::cohomology_explicit;
use phk_core::cohomology::nonabelian::TwistingCocycle;
use phk_core::cohomology::twisted::{twisted_cohomology, LocalSystem};
use phk_core::corpus;
use phk_core::homotopy::coverings::enumerate_coverings;

/// `Hⁿ(Z/k; Z/m)` with trivial action.
fn cyclic_group_cohomology(k: u64, m: u64, n: usize) -> FinAb {
    if n == 0 {
        FinAb::cyclic(m)
    } else {
        FinAb::cyclic(gcd(k, m))
    }
}

#[test]
fn cyclic_groups_closed_form() {
    for k in 2..=6u64 {
        let g = FiniteGroup::cyclic(k as usize);
        for m in 2..=6u64 {
            let h = group_cohomology(&g, &ModuleAction::trivial(&g, FinAb::cyclic(m)), 4).unwrap();
            for (n, a) in h.iter().enumerate() {
                assert_eq!(*a, cyclic_group_cohomology(k, m, n), "H^{n}(Z/{k}; Z/{m})");
            }
        }
    }
}

#[test]
fn symmetric_group_closed_form() {
    // the 2- and 3-parts of H*(S3) are detected on Sylow subgroups
    let g = FiniteGroup::symmetric(3);
    let two = group_cohomology(&g, &ModuleAction::trivial(&g, FinAb::cyclic(2)), 4).unwrap();
    assert!(two.iter().all(|a| *a == FinAb::cyclic(2)));
    let three = group_cohomology(&g, &ModuleAction::trivial(&g, FinAb::cyclic(3)), 4).unwrap();
    let dims: Vec<usize> = three.iter().map(|a| a.dim_mod_p(3)).collect();
    assert_eq!(dims, vec![1, 0, 0, 1, 1]);
}

#[test]
fn bg_of_klein_four() {
    // Künneth over F_2: dim Hⁿ(B(Z/2 × Z/2); Z/2) = n + 1
    let g = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
    let bar = bar_construction(&g, 4).unwrap();
    for n in 0..=3 {
        let h = cohomology(bar.bg_space(), &FinAb::cyclic(2), n).unwrap();
        assert_eq!(h.dim_mod_p(2), n + 1);
    }
}

#[test]
fn twisted_circle() {
    // on S¹ the twisted complex is Z/m --(u−1)--> Z/m
    let c = corpus::circle(3).unwrap();
    for (k, m, u) in [
        (2usize, 3u64, 2u64),
        (2, 4, 3),
        (3, 7, 2),
        (2, 5, 4),
        (4, 5, 2),
    ] {
        let g = FiniteGroup::cyclic(k);
        let tau = TwistingCocycle::new(c.clone(), g.clone(), vec![1]).unwrap();
        let action =
            ModuleAction::from_generators(&g, FinAb::cyclic(m), &[(1, vec![vec![u]])]).unwrap();
        let l = LocalSystem::new(tau, action).unwrap();
        let want = FinAb::cyclic(gcd(u - 1, m));
        assert_eq!(twisted_cohomology(&c, &l, 0).unwrap(), want);
        assert_eq!(twisted_cohomology(&c, &l, 1).unwrap(), want);
    }
}

#[test]
fn covering_counts() {
    // conjugacy classes of subgroups of index n: free group of rank 2 has
    // 1, 3, 7; Z² has σ(n) = 1, 3, 4
    let count = |x: &Arc<_>, d: usize| {
        let mut by = vec![0; d + 1];
        for c in enumerate_coverings(x, d).unwrap() {
            by[c.degree()] += 1;
        }
        by[1..].to_vec()
    };
    assert_eq!(count(&corpus::wedge2(2).unwrap(), 3), vec![1, 3, 7]);
    assert_eq!(count(&corpus::torus(3).unwrap(), 3), vec![1, 3, 4]);
}

/// The explicit `Z/p^e` engine against integral SNF plus universal
/// coefficients, and the constant local system against both.
#[test]
fn explicit_engine_matches_universal_coefficients() {
    let coeffs = [
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![6],
        vec![2, 4],
        vec![9],
    ];
    for (name, x) in corpus::connected_spaces() {
        for orders in &coeffs {
            let m = AbGroup::new(orders.clone()).unwrap();
            let l = LocalSystem::constant(&x, m.structure());
            for n in 0..x.dim_cap() {
                let uct = cohomology(&x, &m.structure(), n).unwrap();
                let explicit = cohomology_explicit(&x, &m, n).unwrap().structure();
                assert_eq!(explicit, uct, "{name} H^{n}(; {orders:?})");
                assert_eq!(
                    twisted_cohomology(&x, &l, n).unwrap(),
                    uct,
                    "{name} twisted H^{n}"
                );
            }
        }
    }
}
