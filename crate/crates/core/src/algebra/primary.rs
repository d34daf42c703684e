//! Linear algebra over the chain rings `Z/p^e`.
//!
//! Every finite abelian group splits into its `p`-primary parts, and a
//! `p`-primary module with exponent dividing `p^e` is a quotient of a free
//! `Z/p^e`-module. Over `Z/p^e` an entry of least `p`-adic valuation divides
//! every other entry, so elimination needs no remainder steps and entries
//! never grow.

use num_integer::Integer;

/// The ring `Z/p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ring {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl Ring {
    pub fn new(p: u64, e: u32) -> Ring {
        assert!(e >= 1, "exponent must be positive");
        let q = p.checked_pow(e).expect("modulus overflow");
        assert!(q < 1 << 31, "modulus too large");
        Ring { p, e, q }
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a) % self.q
    }

    /// `p`-adic valuation, `e` for zero.
    pub fn val(&self, mut x: u64) -> u32 {
        x %= self.q;
        if x == 0 {
            return self.e;
        }
        let mut k = 0;
        while x % self.p == 0 {
            x /= self.p;
            k += 1;
        }
        k
    }

    pub fn pow_p(&self, k: u32) -> u64 {
        if k >= self.e {
            0
        } else {
            self.p.pow(k)
        }
    }

    /// Inverse of an integer prime to `p`.
    pub fn inv_unit(&self, u: u64) -> u64 {
        let g = (u as i64).extended_gcd(&(self.q as i64));
        assert_eq!(g.gcd, 1, "not a unit");
        self.reduce(g.x)
    }
}

/// Dense matrix over `Z/p^e`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl PMat {
    pub fn zeros(rows: usize, cols: usize) -> PMat {
        PMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> PMat {
        let mut m = PMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, ring: &Ring, i: usize, j: usize, v: u64) {
        let e = &mut self.data[i * self.cols + j];
        *e = (*e + v) % ring.q;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<u64>]) -> PMat {
        let mut m = PMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hcat(&self, other: &PMat) -> PMat {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let cols = self.cols + other.cols;
        let mut m = PMat::zeros(self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols]
                .copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            m.data[i * cols + self.cols..(i + 1) * cols]
                .copy_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        m
    }

    pub fn mul(&self, ring: &Ring, other: &PMat) -> PMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = (*d + a * b) % ring.q;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, ring: &Ring, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % ring.q)
            })
            .collect()
    }

    /// Multiplies every entry by `c`.
    pub fn scaled(&self, ring: &Ring, c: u64) -> PMat {
        PMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ring.mul(x, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Drops zero columns.
    pub fn compact(&self) -> PMat {
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| self.get(i, j) != 0))
            .collect();
        let mut m = PMat::zeros(self.rows, keep.len());
        for i in 0..self.rows {
            for (jj, &j) in keep.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= c * row[src]
    fn row_sub(&mut self, ring: &Ring, dst: usize, src: usize, c: u64) {
        if c == 0 {
            return;
        }
        let nc = ring.q - c;
        let cols = self.cols;
        let (s, d) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&lo[src * cols..(src + 1) * cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&hi[..cols], &mut lo[dst * cols..(dst + 1) * cols])
        };
        for (x, &y) in d.iter_mut().zip(s) {
            if y != 0 {
                *x = (*x + nc * y) % ring.q;
            }
        }
    }

    /// col[dst] -= c * col[src]
    fn col_sub(&mut self, ring: &Ring, dst: usize, src: usize, c: u64) {
        if c == 0 {
            return;
        }
        let nc = ring.q - c;
        for i in 0..self.rows {
            let y = self.data[i * self.cols + src];
            if y != 0 {
                let x = &mut self.data[i * self.cols + dst];
                *x = (*x + nc * y) % ring.q;
            }
        }
    }

    /// col[dst] += c * col[src]
    fn col_add(&mut self, ring: &Ring, dst: usize, src: usize, c: u64) {
        self.col_sub(ring, dst, src, ring.neg(c % ring.q));
    }
}

/// Smith form `U·A·V = D` over `Z/p^e`. The diagonal entries are
/// `p^{vals[i]}·units[i]`; `uinv` is the inverse of `U`.
#[derive(Clone, Debug)]
pub struct PSmith {
    pub vals: Vec<u32>,
    pub units: Vec<u64>,
    pub u: Option<PMat>,
    pub uinv: Option<PMat>,
    pub v: Option<PMat>,
}

impl PSmith {
    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    /// `log_p` of the size of the column span.
    pub fn span_log(&self, ring: &Ring) -> u32 {
        self.vals.iter().map(|&k| ring.e - k).sum()
    }
}

/// Which transformation matrices to track.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub v: bool,
}

pub fn smith(ring: &Ring, a: &PMat, track: Track) -> PSmith {
    let mut d = a.clone();
    let mut u = track.u.then(|| PMat::identity(a.rows));
    let mut uinv = track.u.then(|| PMat::identity(a.rows));
    let mut v = track.v.then(|| PMat::identity(a.cols));
    let mut vals = Vec::new();
    let mut units = Vec::new();
    let n = a.rows.min(a.cols);
    for t in 0..n {
        // pivot of least valuation, first in row-major order
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in t..d.rows {
            let row = &d.data[i * d.cols..(i + 1) * d.cols];
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let k = ring.val(x);
                    if best.is_none_or(|(b, _, _)| k < b) {
                        best = Some((k, i, j));
                        if k == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((k, pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(ui) = uinv.as_mut() {
            ui.swap_cols(t, pi);
        }
        d.swap_cols(t, pj);
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        let piv = d.get(t, t);
        let pk = ring.p.pow(k);
        let unit = piv / pk;
        let uinv_unit = ring.inv_unit(unit);
        for i in t + 1..d.rows {
            let x = d.get(i, t);
            if x != 0 {
                let c = ring.mul(x / pk, uinv_unit);
                d.row_sub(ring, i, t, c);
                if let Some(u) = u.as_mut() {
                    u.row_sub(ring, i, t, c);
                }
                if let Some(ui) = uinv.as_mut() {
                    ui.col_add(ring, t, i, c);
                }
            }
        }
        if let Some(v) = v.as_mut() {
            for j in t + 1..d.cols {
                let x = d.get(t, j);
                if x != 0 {
                    let c = ring.mul(x / pk, uinv_unit);
                    v.col_sub(ring, j, t, c);
                }
            }
        }
        for j in t + 1..d.cols {
            d.set(t, j, 0);
        }
        vals.push(k);
        units.push(unit % ring.q);
    }
    PSmith {
        vals,
        units,
        u,
        uinv,
        v,
    }
}

/// `log_p` of the size of the submodule spanned by the columns.
pub fn span_log(ring: &Ring, a: &PMat) -> u32 {
    smith(ring, a, Track::default()).span_log(ring)
}

/// Generators (as columns) of `{x : A x = 0}`.
pub fn kernel(ring: &Ring, a: &PMat) -> PMat {
    let s = smith(ring, a, Track { u: false, v: true });
    let v = s.v.clone().expect("tracked");
    let mut cols = Vec::new();
    for (i, &k) in s.vals.iter().enumerate() {
        if k > 0 {
            let c = ring.pow_p(ring.e - k);
            cols.push(v.column(i).iter().map(|&x| ring.mul(x, c)).collect());
        }
    }
    for j in s.rank()..a.cols {
        cols.push(v.column(j));
    }
    PMat::from_columns(a.cols, &cols)
}

/// Exponents `c_i` of `K/L ≅ ⊕ Z/p^{c_i}` (ascending) for `L ⊆ K`, both
/// given by generating columns in the same ambient module.
pub fn quotient_exponents(ring: &Ring, k: &PMat, l: &PMat) -> Vec<u32> {
    let l = l.compact();
    let base = span_log(ring, &l);
    // h[j] = log |p^j K + L| - log |L|
    let mut h = Vec::with_capacity(ring.e as usize + 2);
    for j in 0..=ring.e {
        let pk = k.scaled(ring, ring.pow_p(j)).compact();
        h.push(if pk.cols == 0 {
            0
        } else {
            span_log(ring, &pk.hcat(&l)) - base
        });
    }
    h.push(0);
    let mut out = Vec::new();
    for j in 0..ring.e as usize {
        // number of summands of exponent exactly j+1
        let ge = h[j] - h[j + 1];
        let gt = h[j + 1] - h[j + 2];
        for _ in 0..ge - gt {
            out.push(j as u32 + 1);
        }
    }
    out
}

/// An explicit subquotient `K/L ≅ ⊕ Z/p^{exps[i]}` with representative
/// vectors for its generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ring: Ring,
    pub exps: Vec<u32>,
    /// Ambient representatives of the generators.
    pub reps: Vec<Vec<u64>>,
    u: PMat,
    kvals: Vec<u32>,
    kunits: Vec<u64>,
    u2: PMat,
    /// Rows of `u2` belonging to the nontrivial summands.
    rows2: Vec<usize>,
}

impl Subquotient {
    pub fn new(ring: Ring, k: &PMat, l: &PMat) -> Subquotient {
        let n = k.rows;
        let s = smith(&ring, k, Track { u: true, v: false });
        let u = s.u.clone().expect("tracked");
        let uinv = s.uinv.clone().expect("tracked");
        let r = s.rank();
        // K ≅ ⊕_{i<r} Z/p^{a_i}, generator g_i = p^{k_i}·unit_i·Uinv[:, i]
        let a: Vec<u32> = s.vals.iter().map(|&kv| ring.e - kv).collect();
        let gens: Vec<Vec<u64>> = (0..r)
            .map(|i| {
                let c = ring.mul(ring.pow_p(s.vals[i]), s.units[i]);
                uinv.column(i).iter().map(|&x| ring.mul(x, c)).collect()
            })
            .collect();
        let mut tmp = Subquotient {
            ring,
            exps: Vec::new(),
            reps: Vec::new(),
            u,
            kvals: s.vals.clone(),
            kunits: s.units.clone(),
            u2: PMat::identity(r),
            rows2: Vec::new(),
        };
        // relations among the g_i: coordinates of L plus the orders p^{a_i}
        let mut rel_cols: Vec<Vec<u64>> = (0..l.cols).map(|j| tmp.k_coords(&l.column(j))).collect();
        for i in 0..r {
            let mut c = vec![0; r];
            c[i] = ring.pow_p(a[i]);
            rel_cols.push(c);
        }
        let rel = PMat::from_columns(r, &rel_cols).compact();
        let s2 = smith(&ring, &rel, Track { u: true, v: false });
        let u2 = s2.u.expect("tracked");
        let u2inv = s2.uinv.expect("tracked");
        let mut exps = Vec::new();
        let mut reps = Vec::new();
        let mut rows2 = Vec::new();
        for i in 0..r {
            let c = if i < s2.vals.len() {
                s2.vals[i]
            } else {
                ring.e
            };
            if c == 0 {
                continue;
            }
            exps.push(c);
            rows2.push(i);
            let coeffs = u2inv.column(i);
            let mut x = vec![0; n];
            for (g, &cf) in gens.iter().zip(&coeffs) {
                if cf != 0 {
                    for (xv, &gv) in x.iter_mut().zip(g) {
                        *xv = (*xv + cf * gv) % ring.q;
                    }
                }
            }
            reps.push(x);
        }
        tmp.exps = exps;
        tmp.reps = reps;
        tmp.u2 = u2;
        tmp.rows2 = rows2;
        tmp
    }

    /// Coordinates of an element of `K` with respect to the generators `g_i`.
    fn k_coords(&self, x: &[u64]) -> Vec<u64> {
        let ring = &self.ring;
        let y = self.u.apply(ring, x);
        let r = self.kvals.len();
        debug_assert!(y[r..].iter().all(|&v| v == 0), "vector outside K");
        (0..r)
            .map(|i| {
                let pk = ring.p.pow(self.kvals[i]);
                debug_assert_eq!(y[i] % pk, 0, "vector outside K");
                ring.mul(y[i] / pk, ring.inv_unit(self.kunits[i]))
                    % ring.p.pow(ring.e - self.kvals[i])
            })
            .collect()
    }

    /// Coordinates of the class of `x ∈ K` in `⊕ Z/p^{exps[i]}`.
    pub fn coords(&self, x: &[u64]) -> Vec<u64> {
        let c = self.k_coords(x);
        let z = self.u2.apply(&self.ring, &c);
        self.rows2
            .iter()
            .zip(&self.exps)
            .map(|(&i, &ex)| z[i] % self.ring.p.pow(ex))
            .collect()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.exps.iter().map(|&c| self.ring.p.pow(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[u64]]) -> PMat {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = PMat::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, rows[i][j]);
            }
        }
        m
    }

    #[test]
    fn smith_tracks_inverse() {
        let ring = Ring::new(2, 3);
        let a = mat(&[&[2, 4, 6], &[4, 1, 3], &[0, 2, 4]]);
        let s = smith(&ring, &a, Track { u: true, v: true });
        let u = s.u.unwrap();
        let ui = s.uinv.unwrap();
        assert_eq!(u.mul(&ring, &ui), PMat::identity(3));
        let d = u.mul(&ring, &a).mul(&ring, &s.v.unwrap());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn kernel_of_multiplication_by_two() {
        let ring = Ring::new(2, 2);
        let k = kernel(&ring, &mat(&[&[2]]));
        assert_eq!(span_log(&ring, &k), 1);
    }

    #[test]
    fn quotient_of_z4_by_2z4() {
        let ring = Ring::new(2, 2);
        let k = PMat::identity(1);
        let l = mat(&[&[2]]);
        assert_eq!(quotient_exponents(&ring, &k, &l), vec![1]);
        let sq = Subquotient::new(ring, &k, &l);
        assert_eq!(sq.orders(), vec![2]);
        assert_eq!(sq.coords(&[3]), vec![1]);
        assert_eq!(sq.coords(&[2]), vec![0]);
    }

    #[test]
    fn subquotient_mixed_exponents() {
        // K = (Z/8)^2, L = <(2, 0), (0, 8)> -> Z/2 + Z/8
        let ring = Ring::new(2, 3);
        let k = PMat::identity(2);
        let l = mat(&[&[2], &[0]]);
        assert_eq!(quotient_exponents(&ring, &k, &l), vec![1, 3]);
        let sq = Subquotient::new(ring, &k, &l);
        let mut o = sq.orders();
        o.sort();
        assert_eq!(o, vec![2, 8]);
    }
}
