use std::sync::Arc;

use phk_core::algebra::catalogue::{catalogue, group_by_name, group_name};
use phk_core::algebra::finab::{AbGroup, AbHom, FinAb};
use phk_core::algebra::module::ModuleAction;
use phk_core::algebra::FiniteGroup;
use phk_core::cartan_leray::cartan_leray;
use phk_core::classifying::{borel_construction, classify_bundles, PrincipalBundle};
use phk_core::cohomology::chains::boundary_ranks;
use phk_core::cohomology::explicit::cohomology_pullback;
use phk_core::cohomology::{
    cohomology, h1_nonabelian, homology, homology_tower, pi0, pi0_tower, profinite_cohomology,
    H1Algorithm, DEFAULT_MODULI,
};
use phk_core::corpus::{self, CorpusObject};
use phk_core::homotopy::coverings::enumerate_coverings;
use phk_core::homotopy::fundamental::pi1_profinite;
use phk_core::homotopy::hurewicz::hurewicz_h1;
use phk_core::homotopy::pi2::pi2_tower;
use phk_core::homotopy::weq::{
    check_weak_equivalence, check_weak_equivalence_tower, WEBounds, WEVerdict,
};
use phk_core::simplicial::json::{smap_to_json, sset_to_json};
use phk_core::simplicial::SSet;
use phk_core::towers::{space_tower_to_value, tower_map_to_value, AbTower};
use phk_core::{Error, Result};

use crate::input;
use crate::report::Report;
use crate::{Cli, Command};

pub struct Outcome {
    pub text: String,
    pub mismatch: bool,
}

impl Outcome {
    fn report(r: Report, mismatch: bool) -> Outcome {
        Outcome {
            text: r.render(),
            mismatch,
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Mismatch(_) => 1,
        _ => 2,
    }
}

fn missing(flag: &str, command: &str) -> Error {
    Error::Parse {
        location: format!("--{flag}"),
        message: format!("`{command}` needs --{flag}"),
    }
}

fn space_arg(cli: &Cli, command: &str) -> Result<String> {
    cli.space.clone().ok_or_else(|| missing("space", command))
}

fn group_arg(cli: &Cli, command: &str) -> Result<(String, FiniteGroup)> {
    let name = cli.group.clone().ok_or_else(|| missing("group", command))?;
    let g = group_by_name(&name)?;
    Ok((name, g))
}

fn moduli_or(cli: &Cli, default: &[u64]) -> Result<Vec<u64>> {
    let moduli = if cli.moduli.is_empty() {
        default.to_vec()
    } else {
        cli.moduli.clone()
    };
    if let Some(bad) = moduli.iter().find(|&&m| m < 2 && m != 0) {
        return Err(Error::Parse {
            location: "--mod".into(),
            message: format!("modulus {bad} is not allowed"),
        });
    }
    Ok(moduli)
}

fn nonzero_moduli(cli: &Cli, default: &[u64]) -> Result<Vec<u64>> {
    let moduli = moduli_or(cli, default)?;
    if moduli.contains(&0) {
        return Err(Error::Parse {
            location: "--mod".into(),
            message: "modulus 0 is only meaningful for `homology`".into(),
        });
    }
    Ok(moduli)
}

/// Degrees to report: `--degree` alone, or everything below the degree cap.
fn degrees(cli: &Cli, valid_below: usize) -> Result<Vec<usize>> {
    if let Some(d) = cli.degree {
        if d >= valid_below {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                max: valid_below.saturating_sub(1),
            });
        }
        return Ok(vec![d]);
    }
    let cap = cli.degree_cap.map_or(valid_below, |c| c as usize);
    if cap > valid_below {
        return Err(Error::DimCapTooSmall {
            dim_cap: valid_below,
            required: cap,
        });
    }
    Ok((0..cap).collect())
}

fn base_bounds(cli: &Cli) -> Vec<(&'static str, String)> {
    let mut b = Vec::new();
    if let Some(s) = cli.seed {
        b.push(("seed", s.to_string()));
    }
    b
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match cli.command {
        Command::Cohomology => cmd_cohomology(cli),
        Command::Homology => cmd_homology(cli),
        Command::Pi0 => cmd_pi0(cli),
        Command::Pi1 => cmd_pi1(cli),
        Command::H1 => cmd_h1(cli),
        Command::Coverings => cmd_coverings(cli),
        Command::Bundles => cmd_bundles(cli),
        Command::Borel => cmd_borel(cli),
        Command::CartanLeray => cmd_cartan_leray(cli),
        Command::Hurewicz => cmd_hurewicz(cli),
        Command::Pi2 => cmd_pi2(cli),
        Command::CheckWe => cmd_check_we(cli),
        Command::Corpus => cmd_corpus(cli),
        Command::Validate => cmd_validate(cli),
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// `Z/m₀ ← Z/m₁ ← ...` when each modulus divides the next.
fn modulus_tower(moduli: &[u64]) -> Result<Option<AbTower>> {
    if moduli.len() < 2 || moduli.windows(2).any(|w| w[1] % w[0] != 0) {
        return Ok(None);
    }
    let levels: Vec<AbGroup> = moduli
        .iter()
        .map(|&m| AbGroup::new(vec![m]))
        .collect::<Result<_>>()?;
    let transitions = levels
        .windows(2)
        .map(|w| AbHom::new(w[1].clone(), w[0].clone(), vec![vec![1]]))
        .collect::<Result<Vec<_>>>()?;
    AbTower::new(levels, transitions).map(Some)
}

fn cmd_cohomology(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "cohomology")?;
    let x = input::space(&arg)?;
    let moduli = nonzero_moduli(cli, &[2])?;
    let degs = degrees(cli, x.dim_cap())?;
    let mut bounds = base_bounds(cli);
    bounds.push(("dim-cap", x.dim_cap().to_string()));
    bounds.push(("degrees", format!("{}..={}", degs[0], degs[degs.len() - 1])));
    let mut r = Report::new("cohomology", &arg, &bounds);
    r.kv(
        "coefficients",
        join(
            &moduli.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>(),
            ",",
        ),
    );
    for &m in &moduli {
        for &n in &degs {
            let h = cohomology(&x, &FinAb::cyclic(m), n)?;
            if moduli.len() == 1 {
                r.line(format!("H^{n} = {h}"));
            } else {
                r.line(format!("H^{n}(Z/{m}) = {h}"));
            }
        }
    }
    if let Some(t) = modulus_tower(&moduli)? {
        for &n in &degs {
            let pc = profinite_cohomology(&x, &t, n)?;
            r.line(format!("lim H^{n} = {}", pc.lim.describe()));
            if n > 0 {
                r.line(format!("lim1 H^{} = {}", n - 1, pc.lim1));
            }
        }
    }
    r.kv("boundary-ranks", join(&boundary_ranks(&x)?, " "));
    Ok(Outcome::report(r, false))
}

fn cmd_homology(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "homology")?;
    let x = input::space(&arg)?;
    let moduli = moduli_or(cli, &[2])?;
    let degs = degrees(cli, x.dim_cap())?;
    let mut bounds = base_bounds(cli);
    bounds.push(("dim-cap", x.dim_cap().to_string()));
    bounds.push(("degrees", format!("{}..={}", degs[0], degs[degs.len() - 1])));
    if moduli.contains(&0) {
        bounds.push(("tower-moduli", join(&DEFAULT_MODULI, ",")));
    }
    let mut r = Report::new("homology", &arg, &bounds);
    for &m in &moduli {
        for &n in &degs {
            if m == 0 {
                let t = homology_tower(&x, &DEFAULT_MODULI, n)?;
                r.line(format!("H_{n}(Zhat) = {}", join(&t.structures(), " <- ")));
            } else if moduli.len() == 1 {
                r.line(format!("H_{n} = {}", homology(&x, m, n)?));
            } else {
                r.line(format!("H_{n}(Z/{m}) = {}", homology(&x, m, n)?));
            }
        }
    }
    Ok(Outcome::report(r, false))
}

fn cmd_pi0(cli: &Cli) -> Result<Outcome> {
    let mut bounds = base_bounds(cli);
    if let Some(arg) = &cli.tower {
        let t = input::tower(arg)?;
        bounds.push(("levels", t.len().to_string()));
        let mut r = Report::new("pi0", arg, &bounds);
        let (comps, maps) = pi0_tower(&t);
        for (k, c) in comps.iter().enumerate() {
            r.line(format!("level {k}: components = {}", c.count()));
        }
        for (k, m) in maps.iter().enumerate() {
            r.line(format!("transition {k}: {}", join(m, " ")));
        }
        return Ok(Outcome::report(r, false));
    }
    let arg = space_arg(cli, "pi0")?;
    let x = input::space(&arg)?;
    let mut r = Report::new("pi0", &arg, &bounds);
    let c = pi0(&x);
    r.kv("components", c.count());
    let reps: Vec<&str> = c
        .representatives
        .iter()
        .map(|&v| x.ids(0)[v].as_str())
        .collect();
    r.kv("representatives", reps.join(" "));
    Ok(Outcome::report(r, false))
}

fn pi1_lines(r: &mut Report, x: &SSet, bound: usize) -> Result<()> {
    let approx = pi1_profinite(x, 0, bound)?;
    let p = &approx.presentation;
    r.kv("generators", p.ngens);
    r.kv("relators", p.relators.len());
    r.kv("quotients", approx.classes.len());
    for (i, c) in approx.classes.iter().enumerate() {
        r.line(format!(
            "quotient {i}: order {} group {} kernel {}",
            c.index(),
            group_name(&c.target),
            c.fingerprint
        ));
    }
    for (i, j) in &approx.refinements {
        r.line(format!("refines {i} -> {j}"));
    }
    Ok(())
}

fn cmd_pi1(cli: &Cli) -> Result<Outcome> {
    let bound = cli.quotient_cap as usize;
    let mut bounds = base_bounds(cli);
    bounds.push(("quotient-cap", bound.to_string()));
    if let Some(arg) = &cli.tower {
        let t = input::tower(arg)?;
        let mut r = Report::new("pi1", arg, &bounds);
        for (k, x) in t.levels.iter().enumerate() {
            r.line(format!("level {k}"));
            pi1_lines(&mut r, x, bound)?;
        }
        return Ok(Outcome::report(r, false));
    }
    let arg = space_arg(cli, "pi1")?;
    let x = input::space(&arg)?;
    let mut r = Report::new("pi1", &arg, &bounds);
    pi1_lines(&mut r, &x, bound)?;
    Ok(Outcome::report(r, false))
}

fn cmd_h1(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "h1")?;
    let x = input::space(&arg)?;
    let (gname, g) = group_arg(cli, "h1")?;
    let bounds = base_bounds(cli);
    let mut r = Report::new("h1", &arg, &bounds);
    r.kv("group", format!("{gname} (order {})", g.order()));
    let gauge = h1_nonabelian(&x, &g, H1Algorithm::GaugeClasses)?;
    let homs = h1_nonabelian(&x, &g, H1Algorithm::Homomorphisms)?;
    if let Some(n) = gauge.cocycle_count {
        r.kv("cocycles", n);
    }
    r.kv("classes (gauge)", gauge.len());
    r.kv("orbit sizes", join(&gauge.orbit_sizes, " "));
    r.kv("classes (homomorphisms)", homs.len());
    let agree = gauge.len() == homs.len();
    r.kv("agree", agree);
    Ok(Outcome::report(r, !agree))
}

fn cmd_coverings(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "coverings")?;
    let x = input::space(&arg)?;
    let d = cli.quotient_cap as usize;
    let mut bounds = base_bounds(cli);
    bounds.push(("max-degree", d.to_string()));
    let mut r = Report::new("coverings", &arg, &bounds);
    let covs = enumerate_coverings(&x, d)?;
    r.kv("connected coverings", covs.len());
    for (i, c) in covs.iter().enumerate() {
        let e = &c.covering.total;
        r.line(format!(
            "covering {i}: degree {} normal {} euler {} cells {}",
            c.degree(),
            c.subgroup.is_normal(),
            e.euler_characteristic(),
            join(&e.counts(), " ")
        ));
    }
    Ok(Outcome::report(r, false))
}

fn bundles_of(cli: &Cli, command: &str) -> Result<(String, Vec<PrincipalBundle>)> {
    let arg = space_arg(cli, command)?;
    match input::bundle(&arg)? {
        Some(b) => Ok((arg, vec![b])),
        None => {
            let x = input::space(&arg)?;
            let (_, g) = group_arg(cli, command)?;
            Ok((arg, classify_bundles(&x, &g)?.bundles))
        }
    }
}

fn cmd_bundles(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "bundles")?;
    let x = input::space(&arg)?;
    let (gname, g) = group_arg(cli, "bundles")?;
    let mut r = Report::new("bundles", &arg, &base_bounds(cli));
    r.kv("group", &gname);
    let cls = classify_bundles(&x, &g)?;
    r.kv("bundles", cls.len());
    for (i, b) in cls.bundles.iter().enumerate() {
        let tau = &b.cocycle;
        let trivial = tau.is_trivial();
        let total = b.total();
        r.line(format!(
            "bundle {i}: trivial {trivial} total-components {} cocycle {}",
            pi0(total).count(),
            join(tau.values(), " ")
        ));
    }
    Ok(Outcome::report(r, false))
}

fn cmd_borel(cli: &Cli) -> Result<Outcome> {
    let (arg, bundles) = bundles_of(cli, "borel")?;
    let moduli = nonzero_moduli(cli, &[2])?;
    let d = cli.degree_cap.map_or(3, |c| c as usize);
    let mut bounds = base_bounds(cli);
    bounds.push(("degree-cap", d.to_string()));
    let mut r = Report::new("borel", &arg, &bounds);
    let mut ok = true;
    for (i, b) in bundles.iter().enumerate() {
        let cap = d.min(b.total().dim_cap());
        let borel = borel_construction(b, cap)?;
        r.line(format!(
            "bundle {i}: borel cells {}",
            join(&borel.space.counts(), " ")
        ));
        for &m in &moduli {
            for n in 0..cap {
                let h = cohomology_pullback(&borel.to_base, &AbGroup::new(vec![m])?, n)?;
                let iso = h.is_isomorphism();
                ok &= iso;
                r.line(format!(
                    "  H^{n}(Z/{m}): base {} borel {} pullback-iso {iso}",
                    h.source.structure(),
                    h.target.structure()
                ));
            }
        }
    }
    r.kv("status", if ok { "pass" } else { "fail" });
    Ok(Outcome::report(r, !ok))
}

fn cmd_cartan_leray(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "cartan-leray")?;
    let bundle = match input::bundle(&arg)? {
        Some(b) => b,
        None => {
            return Err(Error::Parse {
                location: arg,
                message: "cartan-leray needs a bundle, e.g. rp2-cover".into(),
            })
        }
    };
    let moduli = nonzero_moduli(cli, &[2])?;
    let p = moduli[0];
    let cap = bundle.total().dim_cap();
    let max_degree = match cli.degree_cap {
        Some(c) => c as usize - 1,
        None => cap.saturating_sub(2),
    };
    let mut bounds = base_bounds(cli);
    bounds.push(("max-degree", max_degree.to_string()));
    bounds.push(("dim-cap", cap.to_string()));
    let mut r = Report::new("cartan-leray", &arg, &bounds);
    let action = ModuleAction::trivial(&bundle.group, FinAb::cyclic(p));
    let ss = cartan_leray(&bundle, &action, max_degree)?;
    r.kv("group", group_name(&bundle.group));
    r.kv("coefficients", format!("Z/{p}"));
    for page in &ss.pages {
        for line in page.to_string().lines() {
            r.line(line);
        }
    }
    for (q, row) in ss.e2_expected.iter().enumerate() {
        r.line(format!("e2-expected q={q}: {}", join(row, " ")));
    }
    r.kv("total", join(&ss.total, " "));
    r.kv("abutment", join(&ss.abutment, " "));
    r.kv("e-infinity diagonals", join(&ss.diagonal_totals(), " "));
    for c in &ss.checks {
        r.line(format!(
            "check {}: {} {}",
            c.name,
            if c.passed { "pass" } else { "fail" },
            c.detail
        ));
    }
    let ok = ss.passes();
    r.kv("status", if ok { "pass" } else { "fail" });
    Ok(Outcome::report(r, !ok))
}

fn cmd_hurewicz(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "hurewicz")?;
    let x = input::space(&arg)?;
    let moduli = nonzero_moduli(cli, &[2, 3, 4, 5, 6])?;
    let mut bounds = base_bounds(cli);
    bounds.push(("moduli", join(&moduli, ",")));
    let mut r = Report::new("hurewicz", &arg, &bounds);
    let h = hurewicz_h1(&x, &moduli)?;
    r.kv("pi1-ab", &h.abelianization);
    for row in &h.rows {
        r.line(format!(
            "Z/{}: pi1-ab tensor = {} H_1 = {} agree {}",
            row.modulus,
            row.abelianization,
            row.homology,
            row.agrees()
        ));
    }
    let ok = h.passes();
    r.kv("status", if ok { "pass" } else { "fail" });
    Ok(Outcome::report(r, !ok))
}

fn cmd_pi2(cli: &Cli) -> Result<Outcome> {
    let arg = space_arg(cli, "pi2")?;
    let x = input::space(&arg)?;
    let moduli = nonzero_moduli(cli, &[2, 3, 4, 5])?;
    let n = cli.quotient_cap as usize;
    let mut bounds = base_bounds(cli);
    bounds.push(("quotient-cap", n.to_string()));
    bounds.push(("moduli", join(&moduli, ",")));
    let mut r = Report::new("pi2", &arg, &bounds);
    let t = pi2_tower(&x, n, &moduli)?;
    r.kv("quotient chain", join(&t.chain, " "));
    r.kv("hurewicz exact", t.hurewicz_exact);
    for (m, tower) in &t.towers {
        r.line(format!("Z/{m}: {}", join(&tower.structures(), " <- ")));
    }
    Ok(Outcome::report(r, false))
}

fn cmd_check_we(cli: &Cli) -> Result<Outcome> {
    let (arg, f) = match (&cli.tower, &cli.space) {
        (Some(a), _) => (a.clone(), input::tower_map(a)?),
        (None, Some(a)) => (a.clone(), input::tower_map(a)?),
        (None, None) => return Err(missing("tower", "check-we")),
    };
    let top = f.top();
    let dim = top.source().dim_cap().min(top.target().dim_cap());
    let bounds = WEBounds {
        degree_cap: cli.degree_cap.map_or(dim, |c| c as usize),
        coeff_cap: cli.coeff_cap as usize,
        quotient_cap: cli.quotient_cap as usize,
    };
    let verdict: WEVerdict = if f.maps.len() == 1 {
        check_weak_equivalence(top, bounds)?
    } else {
        check_weak_equivalence_tower(&f, bounds)?
    };
    let mut b = base_bounds(cli);
    b.push(("degree-cap", bounds.degree_cap.to_string()));
    b.push(("coeff-cap", bounds.coeff_cap.to_string()));
    b.push(("quotient-cap", bounds.quotient_cap.to_string()));
    b.push(("levels", f.maps.len().to_string()));
    let mut r = Report::new("check-we", &arg, &b);
    r.kv("status", verdict.status);
    r.kv("probes", verdict.probes.len());
    let failed = verdict.probes.iter().filter(|p| !p.passed).count();
    r.kv("failed probes", failed);
    if let Some(w) = &verdict.witness {
        r.kv("witness invariant", &w.invariant);
        r.kv("witness coefficient", &w.coefficient);
        r.kv("witness degree", w.degree);
        r.kv("witness source", &w.source_value);
        r.kv("witness target", &w.target_value);
        r.kv("witness reason", &w.reason);
    }
    for p in &verdict.probes {
        r.line(format!(
            "probe {}: {}",
            p.label,
            if p.passed { "pass" } else { "fail" }
        ));
    }
    Ok(Outcome::report(r, !verdict.passed()))
}

fn cmd_corpus(cli: &Cli) -> Result<Outcome> {
    let spec = cli.space.as_ref().or(cli.tower.as_ref());
    if let Some(spec) = spec {
        let text = match corpus::corpus(spec)? {
            CorpusObject::Space(x) => sset_to_json(&x),
            CorpusObject::Map(f) => smap_to_json(&f),
            CorpusObject::Bundle(b) => smap_to_json(b.projection()),
            CorpusObject::Tower(t) => pretty(&space_tower_to_value(&t)),
            CorpusObject::TowerMap(f) => pretty(&tower_map_to_value(&f)),
        };
        let mut text = text;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        return Ok(Outcome {
            text,
            mismatch: false,
        });
    }
    let mut r = Report::new("corpus", "-", &base_bounds(cli));
    r.kv("entries", corpus::ENTRIES.len());
    for e in corpus::ENTRIES {
        let param = e.default_param.map_or("-".to_string(), |p| p.to_string());
        r.line(format!(
            "entry {} kind {} default {param}: {}",
            e.name, e.kind, e.description
        ));
    }
    let cat = catalogue();
    let groups: Vec<_> = cat.up_to(cat.max_order()).collect();
    r.kv("groups", groups.len());
    for g in groups {
        r.line(format!("group {} order {}", g.name, g.group.order()));
    }
    Ok(Outcome::report(r, false))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn describe_space(r: &mut Report, label: &str, x: &Arc<SSet>) -> Result<()> {
    x.check_identities()?;
    phk_core::cohomology::chain_complex(x)?.check_square_zero()?;
    r.line(format!(
        "{label}: dim-cap {} cells {} euler {}",
        x.dim_cap(),
        join(&x.counts(), " "),
        x.euler_characteristic()
    ));
    Ok(())
}

fn cmd_validate(cli: &Cli) -> Result<Outcome> {
    let arg = match (&cli.space, &cli.tower) {
        (Some(a), _) | (None, Some(a)) => a.clone(),
        (None, None) => return Err(missing("space", "validate")),
    };
    let obj = input::load(&arg)?;
    let mut r = Report::new("validate", &arg, &base_bounds(cli));
    r.kv("kind", obj.kind());
    match &obj {
        CorpusObject::Space(x) => describe_space(&mut r, "space", x)?,
        CorpusObject::Map(f) => {
            describe_space(&mut r, "source", f.source())?;
            describe_space(&mut r, "target", f.target())?;
        }
        CorpusObject::Bundle(b) => {
            b.validate()?;
            describe_space(&mut r, "total", b.total())?;
            describe_space(&mut r, "base", b.base())?;
        }
        CorpusObject::Tower(t) => {
            for (k, x) in t.levels.iter().enumerate() {
                describe_space(&mut r, &format!("level {k}"), x)?;
            }
        }
        CorpusObject::TowerMap(f) => {
            for (k, x) in f.source.levels.iter().enumerate() {
                describe_space(&mut r, &format!("source level {k}"), x)?;
            }
            for (k, x) in f.target.levels.iter().enumerate() {
                describe_space(&mut r, &format!("target level {k}"), x)?;
            }
        }
    }
    r.kv("valid", true);
    Ok(Outcome::report(r, false))
}
