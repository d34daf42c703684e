//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use phk_core::algebra::catalogue::group_by_name;
use phk_core::algebra::finab::{AbGroup, AbHom, FinAb};
use phk_core::algebra::group::FiniteGroup;
use phk_core::algebra::module::{group_cohomology, ModuleAction};
use phk_core::algebra::snf::{smith_normal_form, IntMatrix};
use phk_core::cartan_leray::cartan_leray;
use phk_core::classifying::{bar_construction, borel_construction, classify_bundles};
use phk_core::cohomology::chains::{chain_complex, cohomology};
use phk_core::cohomology::explicit::cohomology_pullback;
use phk_core::cohomology::nonabelian::h1_gauge_classes;
use phk_core::cohomology::profinite::profinite_cohomology;
use phk_core::corpus::{self, CorpusObject, ENTRIES};
use phk_core::homotopy::fundamental::pi1_profinite;
use phk_core::homotopy::hurewicz::hurewicz_h1;
use phk_core::homotopy::pi2::pi2_tower;
use phk_core::homotopy::weq::{check_weak_equivalence, check_weak_equivalence_tower, WEBounds};
use phk_core::simplicial::json::{smap_from_json, smap_to_json, sset_from_json, sset_to_json};
use phk_core::simplicial::standard::{delta, sphere};
use phk_core::simplicial::{SMap, SSet};
use phk_core::towers::{
    space_tower_from_value, space_tower_to_value, tower_lim1, tower_map_from_value,
    tower_map_to_value, AbTower,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUITE_BUDGET: Duration = Duration::from_secs(600);
const SNF_SEED: u64 = 0x5EED_0001;
const TOWER_SEED: u64 = 0x5EED_0002;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for gname in ["C2", "C3", "C4", "S3"] {
        let g = e(group_by_name(gname))?;
        let bar = e(bar_construction(&g, 6))?;
        for m in [2u64, 3] {
            let module = FinAb::cyclic(m);
            let oracle = e(group_cohomology(
                &g,
                &ModuleAction::trivial(&g, module.clone()),
                3,
            ))?;
            for (n, want) in oracle.iter().enumerate() {
                let got = e(cohomology(bar.bg_space(), &module, n))?;
                ensure(&got == want, || {
                    format!("H^{n}(B{gname}; Z/{m}) = {got}, bar cochains give {want}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} groups agree"))
}

/// `|Hom(π, G)/G|` by brute force over generator images, for the known
/// fundamental groups of the test spaces.
fn hom_classes_oracle(space: &str, g: &FiniteGroup) -> usize {
    let n = g.order();
    let tuples: Vec<Vec<usize>> = match space {
        "circle" => (0..n).map(|a| vec![a]).collect(),
        "wedge2" => (0..n)
            .flat_map(|a| (0..n).map(move |b| vec![a, b]))
            .collect(),
        "torus" => (0..n)
            .flat_map(|a| (0..n).map(move |b| vec![a, b]))
            .filter(|t| g.mul(t[0], t[1]) == g.mul(t[1], t[0]))
            .collect(),
        "rp2" => (0..n)
            .filter(|&a| g.mul(a, a) == 0)
            .map(|a| vec![a])
            .collect(),
        _ => unreachable!(),
    };
    let mut orbits = BTreeSet::new();
    for t in tuples {
        let rep = (0..n)
            .map(|h| t.iter().map(|&a| g.conj(h, a)).collect::<Vec<_>>())
            .min()
            .expect("nonempty group");
        orbits.insert(rep);
    }
    orbits.len()
}

fn criterion_2() -> Outcome {
    let mut rows = Vec::new();
    for space in ["circle", "wedge2", "torus", "rp2"] {
        let x = corpus::corpus(space).map_err(|x| x.to_string())?;
        let x = x.as_space().expect("space").clone();
        for gname in ["C2", "C3", "S3"] {
            let g = e(group_by_name(gname))?;
            let got = e(h1_gauge_classes(&x, &g, 10_000_000))?.len();
            let want = hom_classes_oracle(space, &g);
            ensure(got == want, || {
                format!("{space}, {gname}: {got} gauge classes, {want} hom classes")
            })?;
            rows.push(got);
        }
    }
    Ok(format!("12 pairs agree, counts {rows:?}"))
}

fn criterion_3() -> Outcome {
    let s1 = e(corpus::circle(3))?;
    let a = e(pi1_profinite(&s1, 0, 6))?;
    let orders = a.orders();
    let cyclic = a
        .classes
        .iter()
        .all(|c| (0..c.target.order()).any(|x| c.target.element_order(x) == c.target.order()));
    ensure(orders == vec![1, 2, 3, 4, 5, 6] && cyclic, || {
        format!("circle quotients {orders:?}, cyclic {cyclic}")
    })?;
    let rp2 = e(corpus::rp2(4))?;
    let b = e(pi1_profinite(&rp2, 0, 6))?;
    ensure(b.orders() == vec![1, 2], || {
        format!("rp2 quotients {:?}", b.orders())
    })?;
    Ok("S1 gives C1..C6, RP2 gives C1, C2".into())
}

fn criterion_4() -> Outcome {
    let s2 = Arc::new(e(sphere(2, 4))?);
    let t = e(pi2_tower(&s2, 6, &[2, 3, 4, 5]))?;
    for (m, tower) in &t.towers {
        let want = FinAb::cyclic(*m);
        ensure(tower.structures().iter().all(|a| *a == want), || {
            format!("S2 mod {m}: {:?}", tower.structures())
        })?;
        ensure(tower.transitions.iter().all(AbHom::is_isomorphism), || {
            format!("S2 mod {m}: transitions")
        })?;
    }
    let moduli: Vec<u64> = (2..=6).collect();
    let mut names = Vec::new();
    for (name, x) in corpus::connected_spaces() {
        let r = e(hurewicz_h1(&x, &moduli))?;
        ensure(r.passes(), || format!("Hurewicz fails on {name}"))?;
        names.push(name);
    }
    Ok(format!(
        "pi2(S2) constant at Z/m for m in 2..5; Hurewicz on {}",
        names.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let b = e(corpus::rp2_cover(4))?;
    let g = FiniteGroup::cyclic(2);
    let ss = e(cartan_leray(
        &b,
        &ModuleAction::trivial(&g, FinAb::cyclic(2)),
        2,
    ))?;
    // H^q(S^2; Z/2) is Z/2 for q = 0, 2 with the only possible action, so
    // E2^{p,q} = H^p(Z/2; Z/2) = Z/2 there and 0 for q = 1
    for p in 0..=2 {
        for q in 0..=2 - p {
            let want = usize::from(q != 1);
            let got = ss.dim(2, p, q);
            ensure(got == want, || {
                format!("E2[{p},{q}] has dimension {got}, expected {want}")
            })?;
        }
    }
    let diag = ss.diagonal_totals();
    ensure(diag == vec![1, 1, 1], || {
        format!("E_inf diagonals {diag:?}")
    })?;
    ensure(ss.passes(), || format!("internal checks {:?}", ss.checks))?;
    Ok(format!("E2 entrywise, E_inf diagonals {diag:?}"))
}

fn criterion_6() -> Outcome {
    let b = e(corpus::rp2_cover(4))?;
    let borel = e(borel_construction(&b, 3))?;
    let z2 = AbGroup::new(vec![2]).expect("group");
    let mut dims = Vec::new();
    for n in 0..=2 {
        let h = e(cohomology_pullback(&borel.to_base, &z2, n))?;
        ensure(h.is_isomorphism(), || {
            format!("H^{n}: pullback to the Borel construction is not an isomorphism")
        })?;
        let got = e(cohomology(&borel.space, &FinAb::cyclic(2), n))?;
        let want = e(cohomology(b.base(), &FinAb::cyclic(2), n))?;
        ensure(got == want, || format!("H^{n}: {got} vs {want}"))?;
        dims.push(got.to_string());
    }
    Ok(format!("H^0..2 = {}", dims.join(", ")))
}

fn criterion_7() -> Outcome {
    let s1 = e(corpus::circle(3))?;
    let a = e(classify_bundles(&s1, &FiniteGroup::cyclic(2)))?;
    let s2 = Arc::new(e(sphere(2, 3))?);
    let b = e(classify_bundles(&s2, &FiniteGroup::symmetric(3)))?;
    ensure(a.len() == 2 && b.len() == 1, || {
        format!("{} and {} bundles", a.len(), b.len())
    })?;
    Ok("S1/Z2: 2 bundles, S2/S3: 1 bundle".into())
}

fn random_tower(rng: &mut ChaCha8Rng) -> AbTower {
    let len = rng.gen_range(1..=6);
    let width: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=3)).collect();
    let mut order = rng.gen_range(1..=4u64);
    let mut orders = Vec::new();
    for _ in 0..len {
        orders.push(order);
        order *= rng.gen_range(1..=3u64);
    }
    let levels: Vec<AbGroup> = (0..len)
        .map(|k| AbGroup::new(vec![orders[k]; width[k]]).expect("group"))
        .collect();
    // every order at level k divides every order at level k + 1, so any
    // integer matrix is a homomorphism
    let transitions = (0..len - 1)
        .map(|k| {
            let m: Vec<Vec<u64>> = (0..levels[k].ngens())
                .map(|_| {
                    (0..levels[k + 1].ngens())
                        .map(|_| rng.gen_range(0..orders[k].max(1)))
                        .collect()
                })
                .collect();
            AbHom::new(levels[k + 1].clone(), levels[k].clone(), m).expect("valid homomorphism")
        })
        .collect();
    AbTower::new(levels, transitions).expect("tower")
}

fn criterion_8() -> Outcome {
    let s1 = e(corpus::circle(3))?;
    let pc = e(profinite_cohomology(&s1, &AbTower::adic(2, 5), 1))?;
    ensure(pc.lim1.is_zero(), || format!("lim1 = {}", pc.lim1))?;
    ensure(pc.tower.surjective_transitions().iter().all(|&s| s), || {
        "tower is not surjective".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(TOWER_SEED);
    for i in 0..100 {
        let t = random_tower(&mut rng);
        let l = tower_lim1(&t);
        ensure(l.is_zero(), || format!("random tower {i}: lim1 = {l}"))?;
    }
    Ok(format!(
        "H^1(S1; Z/2^k) lim = {}, 100 random towers have lim1 = 0",
        pc.lim.describe()
    ))
}

fn criterion_9() -> Outcome {
    let b = WEBounds {
        degree_cap: 2,
        coeff_cap: 4,
        quotient_cap: 6,
    };
    let rp2 = e(corpus::rp2(4))?;
    let id = e(check_weak_equivalence(
        &SMap::identity(rp2),
        WEBounds { degree_cap: 3, ..b },
    ))?;
    ensure(id.passed(), || format!("identity: {:?}", id.witness))?;
    let collapse = e(corpus::circle_collapse(4))?;
    let v = e(check_weak_equivalence(
        &collapse,
        WEBounds {
            degree_cap: 3,
            coeff_cap: 4,
            quotient_cap: 6,
        },
    ))?;
    ensure(v.passed(), || format!("collapse: {:?}", v.witness))?;
    let s1 = e(corpus::circle(2))?;
    let pt = Arc::new(e(delta(0, 2))?);
    let v = e(check_weak_equivalence(&e(SMap::constant(s1, pt, 0))?, b))?;
    let w = v.witness.clone().ok_or("S1 -> point passed")?;
    ensure(
        w.invariant == "H^1" && w.degree == 1 && w.source_value == "Z/2",
        || format!("witness {w:?}"),
    )?;
    let frob = e(corpus::frobenius_map(5, 2))?;
    let fv = e(check_weak_equivalence_tower(
        &frob,
        WEBounds {
            degree_cap: 2,
            coeff_cap: 4,
            quotient_cap: 6,
        },
    ))?;
    ensure(fv.passed(), || format!("frobenius-map: {:?}", fv.witness))?;
    Ok(format!(
        "identity and collapse pass, S1 -> pt fails at {} ({}; {} vs {}), frobenius-map passes",
        w.invariant, w.coefficient, w.source_value, w.target_value
    ))
}

fn determinant(m: &IntMatrix) -> i128 {
    // fraction-free elimination
    let n = m.rows;
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn to_wide(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows)
        .map(|i| m.row(i).iter().map(|&x| x as i128).collect())
        .collect()
}

fn mul_wide(a: &[Vec<i128>], b: &[Vec<i128>], inner: usize, cols: usize) -> Vec<Vec<i128>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `U·A·V` in 128-bit arithmetic.
fn product3(u: &IntMatrix, a: &IntMatrix, v: &IntMatrix) -> Vec<Vec<i128>> {
    let ua = mul_wide(&to_wide(u), &to_wide(a), a.rows, a.cols);
    mul_wide(&ua, &to_wide(v), a.cols, a.cols)
}

fn criterion_10() -> Outcome {
    let mut objects = 0;
    for info in ENTRIES {
        let obj = e(corpus::corpus(info.name))?;
        let spaces: Vec<Arc<SSet>> = match &obj {
            CorpusObject::Space(x) => {
                let text = sset_to_json(x);
                let back = e(sset_from_json(&text))?;
                ensure(sset_to_json(&back) == text, || {
                    format!("{}: round trip differs", info.name)
                })?;
                vec![x.clone()]
            }
            CorpusObject::Map(f) => {
                let text = smap_to_json(f);
                let back = e(smap_from_json(&text))?;
                ensure(smap_to_json(&back) == text, || {
                    format!("{}: round trip differs", info.name)
                })?;
                vec![f.source().clone(), f.target().clone()]
            }
            CorpusObject::Bundle(b) => {
                let text = sset_to_json(b.total());
                ensure(sset_to_json(&e(sset_from_json(&text))?) == text, || {
                    format!("{}: round trip differs", info.name)
                })?;
                vec![b.total().clone(), b.base().clone()]
            }
            CorpusObject::Tower(t) => {
                let v = space_tower_to_value(t);
                let back = e(space_tower_from_value(&v, None))?;
                ensure(space_tower_to_value(&back) == v, || {
                    format!("{}: round trip differs", info.name)
                })?;
                t.levels.clone()
            }
            CorpusObject::TowerMap(f) => {
                let v = tower_map_to_value(f);
                let back = e(tower_map_from_value(&v, None))?;
                ensure(tower_map_to_value(&back) == v, || {
                    format!("{}: round trip differs", info.name)
                })?;
                f.source
                    .levels
                    .iter()
                    .chain(&f.target.levels)
                    .cloned()
                    .collect()
            }
        };
        for x in spaces {
            e(x.check_identities())?;
            e(e(chain_complex(&x))?.check_square_zero())?;
        }
        objects += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SNF_SEED);
    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure(product3(&s.u, &a, &s.v) == to_wide(&s.d), || {
            format!("matrix {i}: U A V != D")
        })?;
        ensure(
            determinant(&s.u).abs() == 1 && determinant(&s.v).abs() == 1,
            || format!("matrix {i}: not unimodular"),
        )?;
        let diag = s.diagonal();
        ensure(
            diag.iter().all(|&d| d > 0) && diag.windows(2).all(|w| w[1] % w[0] == 0),
            || format!("matrix {i}: diagonal {diag:?}"),
        )?;
        for x in 0..r {
            for y in 0..c {
                ensure(x == y || s.d.get(x, y) == 0, || {
                    format!("matrix {i}: D is not diagonal")
                })?;
            }
        }
    }
    Ok(format!(
        "{objects} corpus entries round-trip and satisfy the identities; 1000 SNF checks"
    ))
}

fn main() {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        (
            "H*(BG) via bar construction equals group cohomology",
            criterion_1,
        ),
        ("gauge classes equal Hom(pi1, G)/conj", criterion_2),
        ("finite quotients of pi1(S1) and pi1(RP2)", criterion_3),
        ("pi2 tower of S2 and Hurewicz in degree 1", criterion_4),
        ("Cartan-Leray for S2 -> RP2", criterion_5),
        ("Borel construction of the S2 cover of RP2", criterion_6),
        ("bundle classification", criterion_7),
        ("profinite coefficients and lim1", criterion_8),
        ("weak-equivalence checker", criterion_9),
        ("serialization, identities, SNF, run time", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:.1}s] {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:.1}s] {name}: {why}", k + 1);
            }
        }
    }
    let total = start.elapsed();
    println!(
        "acceptance run took {:.1}s (budget {}s for the whole suite)",
        total.as_secs_f64(),
        SUITE_BUDGET.as_secs()
    );
    if total > SUITE_BUDGET {
        println!("criterion 10 FAIL: acceptance alone exceeded the suite budget");
        failed += 1;
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
