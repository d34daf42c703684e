//! Twisted cartesian products `X ×_τ S`: coverings and principal bundles.
//!
//! The `n`-simplices are pairs `(x, s)`; the twist sits in the zeroth face,
//! `d₀(x, s) = (d₀x, τ(x₀₁)·s)`, all other faces and degeneracies act on `x`.

use std::sync::Arc;

use crate::algebra::group::FiniteGroup;
use crate::cohomology::components::pi0;
use crate::cohomology::nonabelian::TwistingCocycle;
use crate::error::{Error, Result};
use crate::simplicial::{realize, Cell, Formal, SMap, SSet, SimplicialModel};

/// A finite set with a left action, `act[g][s] = g·s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub size: usize,
    pub act: Vec<Vec<u32>>,
}

impl GSet {
    pub fn new(g: &FiniteGroup, act: Vec<Vec<u32>>) -> Result<GSet> {
        let size = act.first().map_or(0, Vec::len);
        if act.len() != g.order() || act.iter().any(|p| p.len() != size) {
            return Err(Error::InvalidAction(
                "one permutation per group element is required".into(),
            ));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for s in 0..size {
                    if act[ab][s] != act[a][act[b][s] as usize] {
                        return Err(Error::InvalidAction(format!(
                            "not a left action at elements ({a}, {b})"
                        )));
                    }
                }
            }
        }
        Ok(GSet { size, act })
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(g: &FiniteGroup) -> GSet {
        let n = g.order();
        GSet {
            size: n,
            act: (0..n)
                .map(|a| (0..n).map(|s| g.mul(a, s) as u32).collect())
                .collect(),
        }
    }

    pub fn trivial(g: &FiniteGroup, size: usize) -> GSet {
        GSet {
            size,
            act: vec![(0..size as u32).collect(); g.order()],
        }
    }
}

struct TwistedModel<'a> {
    x: &'a SSet,
    perms: &'a [Vec<u32>],
    fiber: usize,
}

impl SimplicialModel for TwistedModel<'_> {
    type Simplex = (Formal, u32);

    fn simplices(&self, n: usize) -> Vec<(Formal, u32)> {
        let mut out = Vec::new();
        for x in self.x.all_simplices(n) {
            for s in 0..self.fiber as u32 {
                out.push((x.clone(), s));
            }
        }
        out
    }

    fn face(&self, _n: usize, i: usize, (x, s): &(Formal, u32)) -> (Formal, u32) {
        let t = if i == 0 {
            match self.x.front_edge(x).as_cell() {
                Some(e) => self.perms[e.idx][*s as usize],
                None => *s,
            }
        } else {
            *s
        };
        (self.x.face_formal(x, i), t)
    }

    fn degeneracy(&self, _n: usize, j: usize, (x, s): &(Formal, u32)) -> (Formal, u32) {
        (x.degenerate(j), *s)
    }

    fn label(&self, _n: usize, (x, s): &(Formal, u32)) -> String {
        format!("({},{s})", self.x.formal_string(x))
    }
}

/// A covering map `E → X` built as a twisted product.
#[derive(Clone, Debug)]
pub struct Covering {
    pub total: Arc<SSet>,
    pub base: Arc<SSet>,
    pub projection: SMap,
    pub fiber: usize,
    /// Monodromy permutation of each nondegenerate edge of the base.
    pub perms: Vec<Vec<u32>>,
}

impl Covering {
    /// Index of the simplex over base cell `c` in sheet `s`.
    pub fn cell_over(&self, c: Cell, s: usize) -> Cell {
        Cell::new(c.dim, c.idx * self.fiber + s)
    }

    /// Base cell and sheet of a total-space cell.
    pub fn split(&self, c: Cell) -> (Cell, usize) {
        (Cell::new(c.dim, c.idx / self.fiber), c.idx % self.fiber)
    }

    pub fn is_connected(&self) -> bool {
        pi0(&self.total).is_connected()
    }

    /// Unique lifting: every simplex of the base has, for each lift of its
    /// first vertex, exactly one lift starting there, and faces of lifts are
    /// lifts of faces.
    pub fn verify_unique_lifting(&self) -> Result<()> {
        let (e, x) = (&self.total, &self.base);
        for n in 0..=x.dim_cap() {
            if e.count(n) != x.count(n) * self.fiber {
                return Err(Error::Mismatch(format!(
                    "dimension {n}: wrong number of lifts"
                )));
            }
            for c in x.cells(n) {
                let mut starts = vec![false; e.count(0)];
                for s in 0..self.fiber {
                    let lift = self.cell_over(c, s);
                    if self.projection.image(lift).as_cell() != Some(c) {
                        return Err(Error::Mismatch(format!(
                            "simplex `{}` does not lie over `{}`",
                            e.id(lift),
                            x.id(c)
                        )));
                    }
                    let v0 = e.vertices(lift)[0];
                    if std::mem::replace(&mut starts[v0], true) {
                        return Err(Error::Mismatch(format!(
                            "two lifts of `{}` start at the same vertex",
                            x.id(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_perm_cocycle(x: &SSet, perms: &[Vec<u32>], fiber: usize) -> Result<()> {
    let id: Vec<u32> = (0..fiber as u32).collect();
    let perm = |f: &Formal| -> &[u32] {
        match f.as_cell() {
            Some(c) => &perms[c.idx],
            None => &id,
        }
    };
    if x.dim_cap() >= 2 {
        for s in x.cells(2) {
            let f = x.faces_of(s);
            let (p0, p2, p1) = (perm(&f[0]), perm(&f[2]), perm(&f[1]));
            if (0..fiber).any(|k| p0[p2[k] as usize] != p1[k]) {
                return Err(Error::InvalidCocycle(format!(
                    "monodromy is not a cocycle on `{}`",
                    x.id(s)
                )));
            }
        }
    }
    Ok(())
}

/// The covering with fiber `{0..fiber−1}` and the given monodromy on each
/// nondegenerate edge.
pub fn covering_from_permutations(
    x: &Arc<SSet>,
    perms: Vec<Vec<u32>>,
    fiber: usize,
) -> Result<Covering> {
    let ne = if x.dim_cap() >= 1 { x.count(1) } else { 0 };
    if perms.len() != ne || perms.iter().any(|p| p.len() != fiber) {
        return Err(Error::InvalidCocycle(
            "one permutation of the fiber per edge is required".into(),
        ));
    }
    check_perm_cocycle(x, &perms, fiber)?;
    let model = TwistedModel {
        x,
        perms: &perms,
        fiber,
    };
    let realized = realize(&model, x.dim_cap())?;
    let total = Arc::new(realized.sset);
    let images = (0..=x.dim_cap())
        .map(|n| {
            x.cells(n)
                .flat_map(|c| std::iter::repeat_n(Formal::nondegenerate(c), fiber))
                .collect()
        })
        .collect();
    let projection = SMap::new(total.clone(), x.clone(), images)?;
    Ok(Covering {
        total,
        base: x.clone(),
        projection,
        fiber,
        perms,
    })
}

/// `X ×_τ S` for a cocycle `τ` into `G` and a `G`-set `S`.
pub fn twisted_product(tau: &TwistingCocycle, s: &GSet) -> Result<Covering> {
    if s.act.len() != tau.group().order() {
        return Err(Error::InvalidAction(
            "the G-set is for a different group".into(),
        ));
    }
    let perms = tau.values().iter().map(|&g| s.act[g].clone()).collect();
    covering_from_permutations(tau.base(), perms, s.size)
}

/// A principal `G`-bundle: a twisted product with fiber `G`, where `G`
/// acts on the right of the fiber.
#[derive(Clone, Debug)]
pub struct PrincipalBundle {
    pub covering: Covering,
    pub group: FiniteGroup,
    pub cocycle: TwistingCocycle,
}

impl PrincipalBundle {
    pub fn new(tau: &TwistingCocycle) -> Result<PrincipalBundle> {
        let covering = twisted_product(tau, &GSet::regular(tau.group()))?;
        let b = PrincipalBundle {
            covering,
            group: tau.group().clone(),
            cocycle: tau.clone(),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn total(&self) -> &Arc<SSet> {
        &self.covering.total
    }

    pub fn base(&self) -> &Arc<SSet> {
        &self.covering.base
    }

    pub fn projection(&self) -> &SMap {
        &self.covering.projection
    }

    /// `(x, s)·h = (x, s·h)` on a nondegenerate simplex.
    pub fn act_cell(&self, c: Cell, h: usize) -> Cell {
        let (b, s) = self.covering.split(c);
        self.covering.cell_over(b, self.group.mul(s, h))
    }

    pub fn act(&self, f: &Formal, h: usize) -> Formal {
        Formal {
            surj: f.surj.clone(),
            base: self.act_cell(f.base, h),
        }
    }

    /// Freeness, invariance of the projection, faces commuting with the
    /// action, and `E/G ≅ X`.
    pub fn validate(&self) -> Result<()> {
        let e = self.total();
        let g = &self.group;
        for n in 0..=e.dim_cap() {
            let mut orbit_of_base = vec![0usize; self.base().count(n)];
            for c in e.cells(n) {
                for h in 1..g.order() {
                    if self.act_cell(c, h) == c {
                        return Err(Error::InvalidAction(format!(
                            "`{}` has a stabilizer",
                            e.id(c)
                        )));
                    }
                }
                for h in 0..g.order() {
                    let ch = self.act_cell(c, h);
                    if self.projection().image(ch) != self.projection().image(c) {
                        return Err(Error::InvalidAction("projection is not invariant".into()));
                    }
                    for i in 0..if n == 0 { 0 } else { n + 1 } {
                        if *e.face(ch, i) != self.act(e.face(c, i), h) {
                            return Err(Error::InvalidAction(format!(
                                "face {i} of `{}` does not commute with the action",
                                e.id(c)
                            )));
                        }
                    }
                }
                let b = self
                    .projection()
                    .image(c)
                    .as_cell()
                    .expect("nondegenerate image");
                orbit_of_base[b.idx] += 1;
            }
            if orbit_of_base.iter().any(|&k| k != g.order()) {
                return Err(Error::Mismatch("E/G is not isomorphic to the base".into()));
            }
        }
        Ok(())
    }
}
