//! Smith normal form over the integers.
//!
//! Pivoting picks the nonzero entry of smallest magnitude in the remaining
//! block, ties broken by row then column index, so `U` and `V` are
//! reproducible. Arithmetic is checked; overflow panics rather than
//! producing a wrong certificate.

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        let e = &mut self.data[i * self.cols + j];
        *e = e.checked_add(v).expect("integer overflow in matrix entry");
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_to(i, j, a.checked_mul(b).expect("integer overflow"));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
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

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let s = self.data[src * c + j];
            if s != 0 {
                let d = &mut self.data[dst * c + j];
                *d = s
                    .checked_mul(q)
                    .and_then(|p| d.checked_add(p))
                    .expect("integer overflow in row operation");
            }
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: i64) {
        if q == 0 {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = self.data[i * c + src];
            if s != 0 {
                let d = &mut self.data[i * c + dst];
                *d = s
                    .checked_mul(q)
                    .and_then(|p| d.checked_add(p))
                    .expect("integer overflow in column operation");
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.data[i * self.cols + j];
            *e = -*e;
        }
    }

    /// Nonzero entry of least magnitude in the block `[t.., t..]`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let a = self.get(i, j).abs();
                if a != 0 && best.is_none_or(|(b, _, _)| a < b) {
                    best = Some((a, i, j));
                    if a == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// `q` with `|x − q·p| ≤ |p|/2`; keeps entries of the transforms small.
fn nearest_quotient(x: i64, p: i64) -> i64 {
    let m = p.abs();
    let mut r = x.rem_euclid(m);
    if 2 * r > m {
        r -= m;
    }
    (x - r) / p
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i))
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Full Smith normal form with transformation matrices.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);
    for t in 0..n {
        let Some((pi, pj)) = d.pivot(t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let p = d.get(t, t);
            let mut dirty = false;
            for i in t + 1..d.rows {
                let x = d.get(i, t);
                if x != 0 {
                    let q = nearest_quotient(x, p);
                    d.row_axpy(i, t, -q);
                    u.row_axpy(i, t, -q);
                    if d.get(i, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..d.cols {
                let x = d.get(t, j);
                if x != 0 {
                    let q = nearest_quotient(x, p);
                    d.col_axpy(j, t, -q);
                    v.col_axpy(j, t, -q);
                    if d.get(t, j) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // a remainder smaller than the pivot exists in row or column t
                let mut best = (p.abs(), t, t);
                for i in t + 1..d.rows {
                    let x = d.get(i, t).abs();
                    if x != 0 && x < best.0 {
                        best = (x, i, t);
                    }
                }
                for j in t + 1..d.cols {
                    let x = d.get(t, j).abs();
                    if x != 0 && x < best.0 {
                        best = (x, t, j);
                    }
                }
                d.swap_rows(t, best.1);
                u.swap_rows(t, best.1);
                d.swap_cols(t, best.2);
                v.swap_cols(t, best.2);
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let mut bad = None;
            'outer: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if d.get(i, j) % p != 0 {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    d.row_axpy(t, i, 1);
                    u.row_axpy(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// Nonzero invariant factors (with multiplicity, including 1s) of `a`;
/// cheaper than [`smith_normal_form`] because no transforms are tracked.
pub fn invariant_factors(a: &IntMatrix) -> Vec<i64> {
    let mut d = a.clone();
    let n = d.rows.min(d.cols);
    let mut diag = Vec::new();
    for t in 0..n {
        let Some((pi, pj)) = d.pivot(t) else { break };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        loop {
            let p = d.get(t, t);
            let mut dirty = false;
            for i in t + 1..d.rows {
                let x = d.get(i, t);
                if x != 0 {
                    d.row_axpy(i, t, -nearest_quotient(x, p));
                    dirty |= d.get(i, t) != 0;
                }
            }
            for j in t + 1..d.cols {
                let x = d.get(t, j);
                if x != 0 {
                    d.col_axpy(j, t, -nearest_quotient(x, p));
                    dirty |= d.get(t, j) != 0;
                }
            }
            if !dirty {
                break;
            }
            let mut best = (p.abs(), t, t);
            for i in t + 1..d.rows {
                let x = d.get(i, t).abs();
                if x != 0 && x < best.0 {
                    best = (x, i, t);
                }
            }
            for j in t + 1..d.cols {
                let x = d.get(t, j).abs();
                if x != 0 && x < best.0 {
                    best = (x, t, j);
                }
            }
            d.swap_rows(t, best.1);
            d.swap_cols(t, best.2);
        }
        diag.push(d.get(t, t).abs());
    }
    normalize_diagonal(diag)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Turns an arbitrary positive diagonal into a divisibility chain with the
/// same cokernel, via `diag(a, b) ~ diag(gcd, lcm)`.
pub fn normalize_diagonal(mut diag: Vec<i64>) -> Vec<i64> {
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i], diag[j]);
            let g = gcd(a, b);
            if g != a {
                diag[i] = g;
                diag[j] = (a / g).checked_mul(b).expect("integer overflow");
            }
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certify(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        s
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let s = certify(&a);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn diag_two_three() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = certify(&a);
        assert_eq!(s.diagonal(), vec![1, 6]);
        assert_eq!(invariant_factors(&a), vec![1, 6]);
    }

    #[test]
    fn identity_matrix() {
        let s = certify(&IntMatrix::identity(4));
        assert_eq!(s.d, IntMatrix::identity(4));
    }

    #[test]
    fn rectangular_with_torsion() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = certify(&a);
        assert_eq!(s.diagonal(), vec![2, 6, 12]);
        assert_eq!(invariant_factors(&a), vec![2, 6, 12]);
    }
}
