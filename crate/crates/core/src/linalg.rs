//! Exact linear algebra over the rationals.
//!
//! Two layers: dense rational matrices for the small systems that show up in
//! module construction (Gram solves, change of basis), and sparse integer
//! rows with fraction-free elimination for the large homogeneous systems in
//! the semi-invariant search.  Everything is deterministic: pivots are always
//! the first usable entry in canonical order, and returned bases are put in a
//! normal form (reduced echelon, content one, positive leading sign).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qz(n: Z) -> Q {
    Q::from_integer(n)
}

/// Sparse integer row: strictly increasing column indices, nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseRow(pub Vec<(usize, Z)>);

impl SparseRow {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn leading_col(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Option<&Z> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    /// Divide by the gcd of the entries and make the leading entry positive.
    pub fn normalize(&mut self) {
        if self.0.is_empty() {
            return;
        }
        let mut g = Z::zero();
        for (_, v) in &self.0 {
            g = g.gcd(v);
        }
        if self.0[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= &g;
            }
        }
    }
}

/// `a*ra + b*rb` for sparse rows.
fn row_combine(a: &Z, ra: &SparseRow, b: &Z, rb: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(ra.0.len() + rb.0.len());
    let (mut i, mut j) = (0, 0);
    while i < ra.0.len() || j < rb.0.len() {
        let ca = ra.0.get(i).map(|(c, _)| *c);
        let cb = rb.0.get(j).map(|(c, _)| *c);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = a * &ra.0[i].1 + b * &rb.0[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, a * &ra.0[i].1));
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push((y, b * &rb.0[j].1));
                j += 1;
            }
            (Some(x), None) => {
                out.push((x, a * &ra.0[i].1));
                i += 1;
            }
            (None, Some(y)) => {
                out.push((y, b * &rb.0[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    SparseRow(out)
}

/// Row echelon form of an integer row list, built by fraction-free
/// elimination.  Rows are consumed in input order; each surviving row is
/// reduced against the pivots found so far, normalized, and (if nonzero)
/// becomes the pivot for its leading column.  Pivot columns are therefore the
/// lexicographically first usable set, independent of entry magnitudes.
pub struct Echelon {
    /// (pivot column, row) sorted by pivot column.
    pub pivots: Vec<(usize, SparseRow)>,
    pub ncols: usize,
}

pub fn echelon(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Echelon {
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    for row in rows {
        let mut row = row;
        loop {
            let Some(lead) = row.leading_col() else { break };
            match pivots.binary_search_by_key(&lead, |(c, _)| *c) {
                Ok(k) => {
                    let (_, ref p) = pivots[k];
                    let pv = p.0[0].1.clone();
                    let rv = row.0[0].1.clone();
                    row = row_combine(&pv, &row, &(-rv), p);
                    row.normalize();
                }
                Err(k) => {
                    row.normalize();
                    pivots.insert(k, (lead, row));
                    break;
                }
            }
        }
    }
    Echelon { pivots, ncols }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduced kernel basis: one vector per free column, in column order.
    /// Each vector is an integer vector of content one whose entry at its
    /// defining free column is positive, with zeros at all other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let piv_cols: Vec<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if piv_cols.binary_search(&free).is_ok() {
                continue;
            }
            let mut x = vec![Q::zero(); self.ncols];
            x[free] = Q::one();
            // Back-substitute in descending pivot order.
            for (c, row) in self.pivots.iter().rev() {
                let mut s = Q::zero();
                for (j, v) in &row.0 {
                    if *j > *c && !x[*j].is_zero() {
                        s += qz(v.clone()) * &x[*j];
                    }
                }
                if !s.is_zero() {
                    x[*c] = -s / qz(row.0[0].1.clone());
                }
            }
            normalize_qvec(&mut x);
            out.push(x);
        }
        out
    }
}

/// Scale a rational vector to an integer vector of content one whose first
/// nonzero entry is positive.
pub fn normalize_qvec(x: &mut [Q]) {
    let mut denom_lcm = Z::one();
    for v in x.iter() {
        denom_lcm = denom_lcm.lcm(v.denom());
    }
    let mut g = Z::zero();
    let mut first_sign = 0i8;
    let scaled: Vec<Z> = x
        .iter()
        .map(|v| (v * qz(denom_lcm.clone())).to_integer())
        .collect();
    for v in &scaled {
        if first_sign == 0 && !v.is_zero() {
            first_sign = if v.is_negative() { -1 } else { 1 };
        }
        g = g.gcd(v);
    }
    if g.is_zero() {
        return;
    }
    if first_sign < 0 {
        g = -g;
    }
    for (xi, zi) in x.iter_mut().zip(scaled) {
        *xi = qz(zi / &g);
    }
}

/// Clear denominators of a rational vector into a sparse integer row.
pub fn sparse_from_qvec(v: &[Q]) -> SparseRow {
    let mut l = Z::one();
    for x in v {
        if !x.is_zero() {
            l = l.lcm(x.denom());
        }
    }
    let mut row = Vec::new();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            row.push((i, (x * qz(l.clone())).to_integer()));
        }
    }
    SparseRow(row)
}

// ---------------------------------------------------------------------------
// Dense rational matrices (small systems).
// ---------------------------------------------------------------------------

/// Reduce `m` in place to reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = m[0].len();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for v in &mut m[r] {
            *v /= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    m.retain(|row| row.iter().any(|v| !v.is_zero()));
    piv_cols
}

pub fn rank_dense(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solve `A x = b` for dense square-or-tall `A`; `None` if inconsistent or
/// underdetermined.
pub fn solve_dense(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let nrows = a.len();
    assert_eq!(nrows, b.len());
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bv)| {
            let mut r = row.clone();
            r.push(bv.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.contains(&ncols) {
        return None; // inconsistent
    }
    if piv.len() < ncols {
        return None; // underdetermined
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, c) in piv.iter().enumerate() {
        x[*c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Incrementally maintained subspace of Q^n, rows kept in reduced echelon
/// form.  Insertion order does not affect the final row set, so equality of
/// subspaces is equality of `rows`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub dim_ambient: usize,
    pub rows: Vec<Vec<Q>>, // RREF, sorted by leading column
}

impl Subspace {
    pub fn new(dim_ambient: usize) -> Self {
        Subspace {
            dim_ambient,
            rows: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut Vec<Q>) {
        for row in &self.rows {
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = v[lead].clone();
                for j in 0..self.dim_ambient {
                    let t = &row[j] * &f;
                    v[j] -= t;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim_ambient);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].clone();
        for x in &mut w {
            *x /= &inv;
        }
        // Back-eliminate the new leading column from existing rows.
        for row in &mut self.rows {
            if !row[lead].is_zero() {
                let f = row[lead].clone();
                for j in 0..self.dim_ambient {
                    let t = &w[j] * &f;
                    row[j] -= t;
                }
            }
        }
        let pos = self
            .rows
            .partition_point(|row| row.iter().position(|x| !x.is_zero()).unwrap() < lead);
        self.rows.insert(pos, w);
        true
    }

    /// Coordinates of `v` in the RREF row basis, or None if v lies outside.
    /// Rows have leading 1 at distinct pivot columns and zeros at the other
    /// rows' pivots, so the coordinate at row i is just v[pivot_i].
    pub fn express(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self
            .rows
            .iter()
            .map(|row| {
                let lead = row.iter().position(|x| !x.is_zero()).unwrap();
                v[lead].clone()
            })
            .collect();
        let mut w = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim_ambient {
                let t = &row[j] * c;
                w[j] -= t;
            }
        }
        w.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim_ambient
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn echelon_rank_and_kernel() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1).
        let rows = vec![
            SparseRow(vec![(0, Z::from(1)), (1, Z::from(1)), (2, Z::from(1))]),
            SparseRow(vec![(0, Z::from(1)), (2, Z::from(-1))]),
        ];
        let e = echelon(rows, 3);
        assert_eq!(e.rank(), 2);
        let k = e.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], qv(&[1, -2, 1]));
    }

    #[test]
    fn echelon_is_deterministic_in_input_order() {
        let rows = vec![
            SparseRow(vec![(1, Z::from(2)), (2, Z::from(4))]),
            SparseRow(vec![(0, Z::from(3)), (1, Z::from(1))]),
        ];
        let e = echelon(rows.clone(), 3);
        let e2 = echelon(rows, 3);
        assert_eq!(e.pivots.len(), e2.pivots.len());
        for ((c1, r1), (c2, r2)) in e.pivots.iter().zip(&e2.pivots) {
            assert_eq!(c1, c2);
            assert_eq!(r1, r2);
        }
    }

    #[test]
    fn dense_solve_roundtrip() {
        let a = vec![qv(&[2, 1]), qv(&[1, 3])];
        let b = qv(&[5, 10]);
        let x = solve_dense(&a, &b).unwrap();
        assert_eq!(x, qv(&[1, 3]));
    }

    #[test]
    fn subspace_insert_and_membership() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&qv(&[1, 1, 0])));
        assert!(s.insert(&qv(&[0, 1, 1])));
        assert!(!s.insert(&qv(&[1, 2, 1])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&qv(&[2, 3, 1])));
        assert!(!s.contains(&qv(&[0, 0, 1])));
        let c = s.express(&qv(&[2, 3, 1])).unwrap();
        let mut back = vec![Q::zero(); 3];
        for (ci, row) in c.iter().zip(&s.rows) {
            for j in 0..3 {
                let t = &row[j] * ci;
                back[j] += t;
            }
        }
        assert_eq!(back, qv(&[2, 3, 1]));
        assert!(s.express(&qv(&[0, 0, 1])).is_none());
    }

    #[test]
    fn subspace_rref_is_order_independent() {
        let mut s1 = Subspace::new(3);
        s1.insert(&qv(&[1, 1, 0]));
        s1.insert(&qv(&[0, 1, 1]));
        let mut s2 = Subspace::new(3);
        s2.insert(&qv(&[1, 2, 1]));
        s2.insert(&qv(&[1, 1, 0]));
        assert_eq!(s1, s2);
    }
}
