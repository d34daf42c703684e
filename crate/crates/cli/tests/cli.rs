use std::path::Path;
use std::process::{Command, Output};

fn phk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn rp2_second_cohomology() {
    let o = phk(&[
        "cohomology",
        "--space",
        "rp2",
        "--mod",
        "2",
        "--degree",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "H^2 = Z/2"), "{out}");
    assert!(out.starts_with("schema: phk-report/1\n"));
    assert!(out.contains("bounds: dim-cap=4 degrees=2..=2"));
}

#[test]
fn frobenius_map_passes() {
    let o = phk(&["check-we", "--tower", "frobenius-map"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("status: pass-up-to-bounds"), "{out}");
    assert!(
        out.contains("degree-cap=2 coeff-cap=4 quotient-cap=6"),
        "{out}"
    );
}

#[test]
fn shallow_frobenius_map_fails_with_witness() {
    let o = phk(&["check-we", "--tower", "frobenius-map:3"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("status: fail"));
    assert!(out.contains("witness invariant:"));
}

#[test]
fn circle_to_point_is_not_an_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("collapse.json");
    std::fs::write(
        &map,
        r#"{"source": {"dim_cap": 2, "simplices": {"0": ["v"], "1": ["e"], "2": []}, "faces": {"e": ["v", "v"]}},
            "target": {"dim_cap": 2, "simplices": {"0": ["p"], "1": [], "2": []}, "faces": {}},
            "map": {"v": "p", "e": "s_0|p"}}"#,
    )
    .unwrap();
    let o = phk(&["check-we", "--space", map.to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}{}", stderr(&o));
    assert!(out.contains("witness coefficient: C2"), "{out}");
}

#[test]
fn validate_names_the_broken_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(
        &path,
        r#"{"dim_cap": 2,
            "simplices": {"0": ["a", "b", "c"], "1": ["ab", "ac", "bc"], "2": ["t"]},
            "faces": {"ab": ["b", "a"], "ac": ["c", "a"], "bc": ["c", "b"], "t": ["bc", "ab", "ab"]}}"#,
    )
    .unwrap();
    let o = phk(&["validate", "--space", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`t`"), "{}", stderr(&o));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        vec!["cohomology", "--space", "no-such-space"],
        vec!["cohomology", "--space", "/nonexistent/x.json"],
        vec!["h1", "--space", "circle"],
        vec!["h1", "--space", "circle", "--group", "Z7x"],
        vec!["cohomology", "--space", "circle", "--degree", "9"],
        vec!["cartan-leray", "--space", "rp2"],
    ] {
        let o = phk(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stdout(&o));
        assert!(stderr(&o).starts_with("error: "));
    }
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "pi1",
        "--space",
        "torus",
        "--quotient-cap",
        "4",
        "--seed",
        "7",
    ];
    let a = stdout(&phk(&args));
    let b = stdout(&phk(&args));
    assert_eq!(a, b);
    assert!(a.contains("bounds: seed=7 quotient-cap=4"));
}

#[test]
fn corpus_export_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    for (flag, spec) in [
        ("--space", "torus"),
        ("--tower", "BZn-tower:3"),
        ("--tower", "frobenius-map:2"),
    ] {
        let out = dir.path().join(format!("{}.json", spec.replace(':', "-")));
        let o = phk(&["corpus", flag, spec, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(Path::new(&out).is_file());
        let v = phk(&["validate", flag, out.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{spec}: {}", stderr(&v));
        assert!(stdout(&v).contains("valid: true"));
    }
}

#[test]
fn corpus_lists_entries_and_groups() {
    let out = stdout(&phk(&["corpus"]));
    for name in ["rp2", "torus", "frobenius-map", "BZn-tower"] {
        assert!(out.contains(&format!("entry {name} ")), "{name}");
    }
    assert!(out.contains("group S3 order 6"));
}

#[test]
fn spectral_sequence_of_the_sphere_over_rp2() {
    let o = phk(&["cartan-leray", "--space", "rp2-cover"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("e-infinity diagonals: 1 1 1"));
    assert!(out.contains("status: pass"));
}

#[test]
fn nonabelian_h1_algorithms_agree() {
    let out = stdout(&phk(&["h1", "--space", "torus", "--group", "S3"]));
    assert!(out.contains("classes (gauge): 8"));
    assert!(out.contains("classes (homomorphisms): 8"));
}

#[test]
fn profinite_homology_tower() {
    let out = stdout(&phk(&[
        "homology", "--space", "circle", "--mod", "0", "--degree", "1",
    ]));
    assert!(
        out.contains("H_1(Zhat) = Z/2 <- Z/6 <- Z/24 <- Z/120"),
        "{out}"
    );
}
