//! Explicit (co)homology groups over the prime-power rings `Z/p^e`, with
//! generators, coordinates and induced maps.
//!
//! A finite coefficient group splits into `p`-primary parts. For each prime
//! the (co)chain group is a direct sum of copies of `⊕ Z/p^{a_i}`, one copy
//! per nondegenerate simplex, and the (co)homology is an explicit
//! subquotient. Maps of spaces and coefficients induce maps of the
//! subquotients by pushing representatives through and reading off
//! coordinates.

use crate::algebra::complex::Degree;
use crate::algebra::finab::{factorize, AbGroup, AbHom, FinAb};
use crate::algebra::primary::{PMat, Ring, Subquotient};
use crate::error::{Error, Result};
use crate::simplicial::{Cell, Formal, SMap, SSet};

use super::nonabelian::TwistingCocycle;

/// The `p`-primary summands of a group `⊕ Z/o_k`: which generator each comes
/// from, its exponent, and the idempotent multiplier selecting it.
#[derive(Clone, Debug)]
pub struct PrimaryBasis {
    pub p: u64,
    pub index: Vec<usize>,
    pub exps: Vec<u32>,
    pub scale: Vec<u64>,
}

impl PrimaryBasis {
    pub fn new(orders: &[u64], p: u64) -> PrimaryBasis {
        let mut index = Vec::new();
        let mut exps = Vec::new();
        let mut scale = Vec::new();
        for (k, &d) in orders.iter().enumerate() {
            if let Some((_, v)) = factorize(d).into_iter().find(|&(q, _)| q == p) {
                let pv = p.pow(v);
                let co = d / pv;
                let inv = Ring::new(p, v).inv_unit(co % pv);
                index.push(k);
                exps.push(v);
                scale.push(co * inv);
            }
        }
        PrimaryBasis {
            p,
            index,
            exps,
            scale,
        }
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn max_exp(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0)
    }

    /// `p`-primary coordinates of an element given in the `⊕ Z/o_k` basis.
    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        self.index
            .iter()
            .zip(&self.exps)
            .map(|(&k, &v)| x[k] % self.p.pow(v))
            .collect()
    }

    /// The element of `⊕ Z/o_k` with the given `p`-primary coordinates.
    pub fn embed(&self, y: &[u64], orders: &[u64]) -> Vec<u64> {
        let mut x = vec![0; orders.len()];
        for ((&k, &s), &c) in self.index.iter().zip(&self.scale).zip(y) {
            x[k] = ((s as u128 * c as u128) % orders[k] as u128) as u64;
        }
        x
    }
}

/// Primes dividing the order of a finite group given by cyclic orders.
pub fn primes_of(orders: &[u64]) -> Vec<u64> {
    let mut ps: Vec<u64> = orders
        .iter()
        .flat_map(|&d| factorize(d).into_iter().map(|(p, _)| p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Matrix of a homomorphism `⊕ Z/a_j → ⊕ Z/b_i` on `p`-primary parts.
pub fn primary_matrix(
    matrix: &[Vec<u64>],
    src: &PrimaryBasis,
    tgt: &PrimaryBasis,
) -> Vec<Vec<u64>> {
    tgt.index
        .iter()
        .zip(&tgt.exps)
        .map(|(&kb, &vb)| {
            let pv = tgt.p.pow(vb) as u128;
            src.index
                .iter()
                .zip(&src.scale)
                .map(|(&ka, &sa)| ((matrix[kb][ka] as u128 % pv) * (sa as u128 % pv) % pv) as u64)
                .collect()
        })
        .collect()
}

/// Coefficients for cochains at one prime: the module `⊕ Z/p^{exps}` and,
/// for twisted coefficients, the cocycle and the matrices of `ρ(g)⁻¹`.
#[derive(Clone, Debug)]
pub struct PrimeCoefficients<'a> {
    pub ring: Ring,
    pub exps: Vec<u32>,
    pub twist: Option<(&'a TwistingCocycle, Vec<PMat>)>,
}

impl PrimeCoefficients<'_> {
    pub fn trivial(p: u64, exps: Vec<u32>) -> PrimeCoefficients<'static> {
        let e = exps.iter().copied().max().unwrap_or(1).max(1);
        PrimeCoefficients {
            ring: Ring::new(p, e),
            exps,
            twist: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }
}

fn nondeg(f: &Formal) -> Option<Cell> {
    f.as_cell()
}

/// The cochain differential `δ: Cⁿ → Cⁿ⁺¹`,
/// `(δf)(x) = ρ(τ(x₀₁))⁻¹ f(d₀x) + Σ_{i≥1} (−1)ⁱ f(dᵢx)`.
pub fn cochain_differential(x: &SSet, n: usize, c: &PrimeCoefficients) -> PMat {
    let ring = c.ring;
    let r = c.rank();
    let mut d = PMat::zeros(x.count(n + 1) * r, x.count(n) * r);
    for y in x.cells(n + 1) {
        let row = y.idx * r;
        for (i, f) in x.faces_of(y).iter().enumerate() {
            let Some(b) = nondeg(f) else { continue };
            let col = b.idx * r;
            let twist = if i == 0 {
                c.twist.as_ref().and_then(|(tau, mats)| {
                    let g = tau.value(&x.front_edge(&Formal::nondegenerate(y)));
                    (g != 0).then(|| &mats[g])
                })
            } else {
                None
            };
            match twist {
                Some(m) => {
                    for a in 0..r {
                        for bb in 0..r {
                            let v = m.get(a, bb);
                            if v != 0 {
                                d.add_to(&ring, row + a, col + bb, v);
                            }
                        }
                    }
                }
                None => {
                    let s = if i % 2 == 0 { 1 } else { ring.q - 1 };
                    for a in 0..r {
                        d.add_to(&ring, row + a, col + a, s);
                    }
                }
            }
        }
    }
    d
}

/// The boundary `∂: Cₙ → Cₙ₋₁` of normalized chains over `Z/p^e`.
pub fn chain_boundary(x: &SSet, n: usize, ring: &Ring) -> PMat {
    if n == 0 {
        return PMat::zeros(0, x.count(0));
    }
    let mut d = PMat::zeros(x.count(n - 1), x.count(n));
    for y in x.cells(n) {
        for (i, f) in x.faces_of(y).iter().enumerate() {
            if let Some(b) = nondeg(f) {
                let s = if i % 2 == 0 { 1 } else { ring.q - 1 };
                d.add_to(ring, b.idx, y.idx, s);
            }
        }
    }
    d
}

/// One prime's share of an explicit group.
#[derive(Clone, Debug)]
pub struct PrimePart {
    pub p: u64,
    pub sub: Subquotient,
}

/// An explicit finite abelian group assembled from prime parts; its
/// generators are those of the parts, in order.
#[derive(Clone, Debug)]
pub struct Explicit {
    pub parts: Vec<PrimePart>,
}

impl Explicit {
    pub fn group(&self) -> AbGroup {
        AbGroup {
            orders: self.parts.iter().flat_map(|p| p.sub.orders()).collect(),
        }
    }

    pub fn structure(&self) -> FinAb {
        self.group().structure()
    }

    fn part(&self, p: u64) -> Option<(usize, &PrimePart)> {
        let mut off = 0;
        for part in &self.parts {
            if part.p == p {
                return Some((off, part));
            }
            off += part.sub.exps.len();
        }
        None
    }

    /// The homomorphism to `target` induced by a map of ambient vectors at
    /// each prime; `push(p, v)` must send representatives to cycles.
    pub fn induced(
        &self,
        target: &Explicit,
        mut push: impl FnMut(u64, &[u64]) -> Vec<u64>,
    ) -> AbHom {
        let src = self.group();
        let tgt = target.group();
        let mut matrix = vec![vec![0u64; src.ngens()]; tgt.ngens()];
        let mut col = 0;
        for part in &self.parts {
            for rep in &part.sub.reps {
                if let Some((off, tp)) = target.part(part.p) {
                    let img = push(part.p, rep);
                    for (i, v) in tp.sub.coords(&img).into_iter().enumerate() {
                        matrix[off + i][col] = v;
                    }
                }
                col += 1;
            }
        }
        AbHom::new(src, tgt, matrix).expect("induced maps are homomorphisms")
    }
}

fn check_degree(x: &SSet, n: usize) -> Result<()> {
    if n + 1 > x.dim_cap() {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            max: x.dim_cap().saturating_sub(1),
        });
    }
    Ok(())
}

/// `Hⁿ` at one prime as an explicit subquotient of `Cⁿ`.
pub fn cochain_subquotient(x: &SSet, n: usize, c: &PrimeCoefficients) -> Result<Subquotient> {
    check_degree(x, n)?;
    let here: Vec<u32> = (0..x.count(n))
        .flat_map(|_| c.exps.iter().copied())
        .collect();
    let next: Vec<u32> = (0..x.count(n + 1))
        .flat_map(|_| c.exps.iter().copied())
        .collect();
    let out = cochain_differential(x, n, c);
    let inc = (n > 0).then(|| cochain_differential(x, n - 1, c));
    Ok(Degree {
        ring: c.ring,
        exps: &here,
        incoming: inc.as_ref(),
        outgoing: Some(&out),
        next_exps: &next,
    }
    .subquotient())
}

/// `Hⁿ(X; M)` with trivial coefficients `M = ⊕ Z/o_k`, explicitly.
pub fn cohomology_explicit(x: &SSet, coeffs: &AbGroup, n: usize) -> Result<Explicit> {
    check_degree(x, n)?;
    let mut parts = Vec::new();
    for p in primes_of(&coeffs.orders) {
        let basis = PrimaryBasis::new(&coeffs.orders, p);
        let c = PrimeCoefficients::trivial(p, basis.exps.clone());
        parts.push(PrimePart {
            p,
            sub: cochain_subquotient(x, n, &c)?,
        });
    }
    Ok(Explicit { parts })
}

/// `Hₙ(X; Z/m)`, explicitly.
pub fn homology_explicit(x: &SSet, m: u64, n: usize) -> Result<Explicit> {
    check_degree(x, n)?;
    let mut parts = Vec::new();
    for (p, e) in factorize(m) {
        let ring = Ring::new(p, e);
        let here = vec![e; x.count(n)];
        let prev = vec![e; if n == 0 { 0 } else { x.count(n - 1) }];
        let out = (n > 0).then(|| chain_boundary(x, n, &ring));
        let inc = chain_boundary(x, n + 1, &ring);
        let sub = Degree {
            ring,
            exps: &here,
            incoming: Some(&inc),
            outgoing: out.as_ref(),
            next_exps: &prev,
        }
        .subquotient();
        parts.push(PrimePart { p, sub });
    }
    Ok(Explicit { parts })
}

/// Pulls a cochain on `Y` (one block of `r` coordinates per simplex) back
/// along `f: X → Y`; degenerate images contribute zero.
pub fn pull_cochain(f: &SMap, n: usize, r: usize, v: &[u64]) -> Vec<u64> {
    let x = f.source();
    let mut out = vec![0; x.count(n) * r];
    for c in x.cells(n) {
        if let Some(b) = f.image(c).as_cell() {
            out[c.idx * r..(c.idx + 1) * r].copy_from_slice(&v[b.idx * r..(b.idx + 1) * r]);
        }
    }
    out
}

/// Pushes a chain on `X` forward along `f: X → Y` modulo `q`.
pub fn push_chain(f: &SMap, n: usize, q: u64, v: &[u64]) -> Vec<u64> {
    let y = f.target();
    let mut out = vec![0; y.count(n)];
    for c in f.source().cells(n) {
        if let Some(b) = f.image(c).as_cell() {
            out[b.idx] = (out[b.idx] + v[c.idx]) % q;
        }
    }
    out
}

/// `f*: Hⁿ(Y; M) → Hⁿ(X; M)` for trivial coefficients.
pub fn cohomology_pullback(f: &SMap, coeffs: &AbGroup, n: usize) -> Result<AbHom> {
    let hy = cohomology_explicit(f.target(), coeffs, n)?;
    let hx = cohomology_explicit(f.source(), coeffs, n)?;
    Ok(hy.induced(&hx, |p, v| {
        let r = PrimaryBasis::new(&coeffs.orders, p).rank();
        pull_cochain(f, n, r, v)
    }))
}

/// `f_*: Hₙ(X; Z/m) → Hₙ(Y; Z/m)`.
pub fn homology_pushforward(f: &SMap, m: u64, n: usize) -> Result<AbHom> {
    let hx = homology_explicit(f.source(), m, n)?;
    let hy = homology_explicit(f.target(), m, n)?;
    Ok(hx.induced(&hy, |p, v| {
        let q = p.pow(
            factorize(m)
                .into_iter()
                .find(|&(pp, _)| pp == p)
                .map_or(1, |(_, e)| e),
        );
        push_chain(f, n, q, v)
    }))
}

/// `Hⁿ(X; A) → Hⁿ(X; B)` induced by a coefficient homomorphism.
pub fn coefficient_change(x: &SSet, h: &AbHom, n: usize) -> Result<AbHom> {
    let ha = cohomology_explicit(x, &h.source, n)?;
    let hb = cohomology_explicit(x, &h.target, n)?;
    Ok(coefficient_map(x, h, n, &ha, &hb))
}

/// As [`coefficient_change`], given both explicit groups.
pub fn coefficient_map(x: &SSet, h: &AbHom, n: usize, ha: &Explicit, hb: &Explicit) -> AbHom {
    ha.induced(hb, |p, v| {
        let sb = PrimaryBasis::new(&h.source.orders, p);
        let tb = PrimaryBasis::new(&h.target.orders, p);
        let m = primary_matrix(&h.matrix, &sb, &tb);
        let (rs, rt) = (sb.rank(), tb.rank());
        let mut out = vec![0; x.count(n) * rt];
        for k in 0..x.count(n) {
            for (i, row) in m.iter().enumerate() {
                let q = p.pow(tb.exps[i]) as u128;
                let s: u128 = row
                    .iter()
                    .zip(&v[k * rs..(k + 1) * rs])
                    .map(|(&a, &b)| a as u128 * b as u128)
                    .sum();
                out[k * rt + i] = (s % q) as u64;
            }
        }
        out
    })
}

/// `Hₙ(X; Z/m') → Hₙ(X; Z/m)` for `m | m'`, induced by reduction.
pub fn homology_reduction(x: &SSet, m_from: u64, m_to: u64, n: usize) -> Result<AbHom> {
    if m_from % m_to != 0 {
        return Err(Error::Mismatch(format!("{m_to} does not divide {m_from}")));
    }
    let a = homology_explicit(x, m_from, n)?;
    let b = homology_explicit(x, m_to, n)?;
    Ok(a.induced(&b, |p, v| {
        let e = factorize(m_to)
            .into_iter()
            .find(|&(pp, _)| pp == p)
            .map_or(0, |(_, e)| e);
        let q = p.pow(e);
        v.iter().map(|&t| t % q).collect()
    }))
}
