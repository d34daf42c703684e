//! Every corpus entry recomputes the invariants it documents.

use std::sync::Arc;

use phk_core::algebra::finab::AbGroup;
use phk_core::algebra::finab::FinAb;
use phk_core::algebra::group::FiniteGroup;
use phk_core::classifying::{bar_construction, borel_construction, eilenberg_maclane, path_object};
use phk_core::cohomology::chains::{chain_complex, cohomology};
use phk_core::corpus::{self, expected, CorpusObject, ENTRIES};
use phk_core::homotopy::fundamental::pi1_profinite;
use phk_core::simplicial::SSet;

fn space(spec: &str) -> Arc<SSet> {
    corpus::corpus(spec).unwrap().as_space().unwrap().clone()
}

fn sound(x: &SSet) {
    x.check_identities().unwrap();
    chain_complex(x).unwrap().check_square_zero().unwrap();
}

#[test]
fn documented_invariants() {
    for spec in [
        "delta",
        "sphere:0",
        "sphere:1",
        "sphere:2",
        "sphere:3",
        "circle",
        "circle-subdivided",
        "rp2",
        "torus",
        "wedge2",
    ] {
        let x = space(spec);
        let want = expected(spec).unwrap();
        if let Some(chi) = want.euler {
            assert_eq!(x.euler_characteristic(), chi, "{spec}");
        }
        for (n, &b) in want.mod2_betti.iter().enumerate() {
            if n + 1 > x.dim_cap() {
                break;
            }
            let h = cohomology(&x, &FinAb::cyclic(2), n).unwrap();
            assert_eq!(h.dim_mod_p(2), b, "{spec} H^{n}");
        }
        if let Some(q) = want.pi1_quotients_6 {
            assert_eq!(pi1_profinite(&x, 0, 6).unwrap().orders(), q, "{spec}");
        }
    }
}

#[test]
fn every_entry_is_sound() {
    for info in ENTRIES {
        match corpus::corpus(info.name).unwrap() {
            CorpusObject::Space(x) => sound(&x),
            CorpusObject::Map(f) => {
                sound(f.source());
                sound(f.target());
            }
            CorpusObject::Bundle(b) => {
                b.validate().unwrap();
                sound(b.total());
            }
            CorpusObject::Tower(t) => t.levels.iter().for_each(|l| sound(l)),
            CorpusObject::TowerMap(f) => f
                .source
                .levels
                .iter()
                .chain(&f.target.levels)
                .for_each(|l| sound(l)),
        }
    }
}

#[test]
fn constructed_spaces_are_sound() {
    let s3 = FiniteGroup::symmetric(3);
    let bar = bar_construction(&s3, 3).unwrap();
    sound(bar.bg_space());
    sound(bar.eg_space());
    let b = corpus::rp2_cover(4).unwrap();
    sound(&borel_construction(&b, 3).unwrap().space);
    let z2 = AbGroup::new(vec![2]).unwrap();
    sound(&eilenberg_maclane(&z2, 2, 3).unwrap());
    let po = path_object(&z2, 1, 3).unwrap();
    sound(&po.total);
    sound(&corpus::torus(3).unwrap());
}

#[test]
fn unknown_and_malformed_specs() {
    assert!(corpus::corpus("klein").is_err());
    assert!(corpus::corpus("circle:3").is_err());
    assert!(corpus::corpus("sphere:x").is_err());
}
