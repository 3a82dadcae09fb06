//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! Pivot choices are deterministic so that every canonical form computed
//! downstream is reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is needed to describe
    /// matrices with no rows.
    ///
    /// Panics if a row does not have `cols` entries.
    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        IntMatrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let big = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_big_rows(big, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as machine integers, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        Self::from_big_rows(
            idx.iter().map(|&i| self.row(i).to_vec()).collect(),
            self.cols,
        )
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let rows = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        Self::from_big_rows(rows, idx.len())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i).iter().join(" "))?;
        }
        Ok(())
    }
}

/// Dense rational matrix. Entries are always in lowest terms with positive
/// denominators (guaranteed by `BigRational`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m
                .data
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        RatMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, src: usize, factor: &BigInt) {
    // rows[target] -= factor * rows[src]
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= factor * y;
        }
    }
}

/// Replaces rows `(p, q)` by `(x*p + y*q, -bg*p + ag*q)`, a unimodular
/// 2x2 transform when `x*ag + y*bg = 1`.
fn row_combine(rows: &mut [Vec<BigInt>], p: usize, q: usize, coeffs: [&BigInt; 4]) {
    let [x, y, bg, ag] = coeffs;
    let rp = rows[p].clone();
    let rq = rows[q].clone();
    rows[p] = rp.iter().zip(&rq).map(|(a, b)| x * a + y * b).collect();
    rows[q] = rp.iter().zip(&rq).map(|(a, b)| ag * b - bg * a).collect();
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * M`,
/// `U` unimodular, `H` in echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (nr, nc) = (m.rows, m.cols);
    let mut h = m.to_rows();
    let mut u = IntMatrix::identity(nr).to_rows();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        h.swap(r, p);
        u.swap(r, p);
        for i in (r + 1)..nr {
            if h[i][c].is_zero() {
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let eg = a.extended_gcd(&b);
            let ag = &a / &eg.gcd;
            let bg = &b / &eg.gcd;
            row_combine(&mut h, r, i, [&eg.x, &eg.y, &bg, &ag]);
            row_combine(&mut u, r, i, [&eg.x, &eg.y, &bg, &ag]);
        }
        if h[r][c].is_negative() {
            for v in h[r].iter_mut().chain(u[r].iter_mut()) {
                *v = -&*v;
            }
        }
        let pivot = h[r][c].clone();
        for i in 0..r {
            let q = h[i][c].div_floor(&pivot);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (
        IntMatrix::from_big_rows(h, nc),
        IntMatrix::from_big_rows(u, nr),
    )
}

fn nonzero_row_count(h: &IntMatrix) -> usize {
    (0..h.rows)
        .take_while(|&i| h.row(i).iter().any(|v| !v.is_zero()))
        .count()
}

/// Rows of the result form a Z-basis of `{v : M v = 0}`, returned in
/// Hermite normal form. The kernel lattice is always saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = nonzero_row_count(&h);
    let basis = u.select_rows(&(rank..m.cols).collect::<Vec<_>>());
    if basis.rows == 0 {
        return basis;
    }
    hermite_normal_form(&basis).0
}

/// Canonical basis (Hermite form, zero rows dropped) of the lattice spanned
/// by the rows of `m`.
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(m);
    let rank = nonzero_row_count(&h);
    h.select_rows(&(0..rank).collect::<Vec<_>>())
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of `m`.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let (nr, nc) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        let Some((pi, pj)) = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in (t + 1)..nr {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &piv;
                    row_axpy(&mut a, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in (t + 1)..nc {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &piv;
                    for row in a.iter_mut() {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
            // bring the smallest leftover in row/column t to the pivot
            let col_best = ((t + 1)..nr)
                .filter(|&i| !a[i][t].is_zero())
                .min_by_key(|&i| a[i][t].abs());
            let row_best = ((t + 1)..nc)
                .filter(|&j| !a[t][j].is_zero())
                .min_by_key(|&j| a[t][j].abs());
            match (col_best, row_best) {
                (Some(i), Some(j)) if a[t][j].abs() < a[i][t].abs() => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                (Some(i), _) => a.swap(t, i),
                (None, Some(j)) => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
                (None, None) => unreachable!("unclean pivot without leftovers"),
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    for i in 0..diag.len() {
        for j in (i + 1)..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = &diag[i] / &g * &diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det_i64(rows: &[Vec<i64>]) -> BigInt {
    determinant(&IntMatrix::from_rows_with_cols(rows, rows.len()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    /// Row subset (of the scanned orientation, see [`max_minor_scan`]).
    pub rows: Vec<usize>,
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorScan {
    pub holds: bool,
    pub witness: Option<MinorWitness>,
}

/// Checks that every maximal minor of `m` lies in `allowed`.
///
/// Tall matrices are scanned over row subsets; wide matrices are transposed
/// first, so the witness then names a column subset. Subsets are visited in
/// lexicographic order and the scan stops at the first violation.
pub fn max_minor_scan(m: &IntMatrix, allowed: &[BigInt]) -> MinorScan {
    let tall = if m.rows >= m.cols {
        m.clone()
    } else {
        m.transpose()
    };
    let k = tall.cols;
    for subset in (0..tall.rows).combinations(k) {
        let value = determinant(&tall.select_rows(&subset));
        if !allowed.contains(&value) {
            return MinorScan {
                holds: false,
                witness: Some(MinorWitness {
                    rows: subset,
                    value,
                }),
            };
        }
    }
    MinorScan {
        holds: true,
        witness: None,
    }
}

/// Rank of a set of sparse integer rows by incremental fraction-free
/// elimination; each reduced row is divided by its content.
fn sparse_integer_rank(rows: impl IntoIterator<Item = BTreeMap<usize, BigInt>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, lead_val)) = row.iter().next() {
            let Some(pivot) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let p = pivot[&lead].clone();
            let q = lead_val.clone();
            let mut next: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&j, v) in &row {
                next.insert(j, v * &p);
            }
            for (&j, v) in pivot {
                let e = next.entry(j).or_insert_with(BigInt::zero);
                *e -= v * &q;
            }
            next.retain(|_, v| !v.is_zero());
            let content = next.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if !content.is_zero() && !content.is_one() {
                for v in next.values_mut() {
                    *v /= &content;
                }
            }
            row = next;
        }
    }
    pivots.len()
}

/// Rank over the rationals. Rows are scaled to integers and then reduced
/// fraction-free.
pub fn rational_rank(m: &RatMatrix) -> usize {
    sparse_integer_rank((0..m.rows).map(|i| {
        let row = m.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        row.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.numer() * (&l / v.denom())))
            .collect()
    }))
}

pub fn integer_rank(m: &IntMatrix) -> usize {
    sparse_integer_rank((0..m.rows).map(|i| {
        m.row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect()
    }))
}

/// Rank of a sparse integer matrix given as `(row, col) -> value` entries.
pub fn sparse_rank(entries: &BTreeMap<(usize, usize), i64>) -> usize {
    let mut rows: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (&(i, j), &v) in entries {
        if v != 0 {
            rows.entry(i).or_default().insert(j, BigInt::from(v));
        }
    }
    sparse_integer_rank(rows.into_values())
}

pub fn rank_i64(rows: &[Vec<i64>], cols: usize) -> usize {
    integer_rank(&IntMatrix::from_rows_with_cols(rows, cols))
}

/// Sign (`-1`, `0`, `1`) of the determinant of the coordinates of `vectors`
/// with respect to `basis`. All vectors must lie in the span of `basis` and
/// there must be as many of them as basis vectors.
pub fn orientation_sign(basis: &[Vec<i64>], vectors: &[Vec<i64>]) -> i32 {
    let k = basis.len();
    assert_eq!(vectors.len(), k, "orientation needs a full frame");
    if k == 0 {
        return 1;
    }
    let dim = basis[0].len();
    // columns -> matrices with `dim` rows; pick the first nonsingular row set
    let gt = IntMatrix::from_rows_with_cols(basis, dim).transpose();
    let mt = IntMatrix::from_rows_with_cols(vectors, dim).transpose();
    for rows in (0..dim).combinations(k) {
        let dg = determinant(&gt.select_rows(&rows));
        if dg.is_zero() {
            continue;
        }
        let dm = determinant(&mt.select_rows(&rows));
        return match (dg.is_positive(), dm.sign()) {
            (_, num_bigint::Sign::NoSign) => 0,
            (true, num_bigint::Sign::Plus) | (false, num_bigint::Sign::Minus) => 1,
            _ => -1,
        };
    }
    panic!("orientation basis is degenerate");
}
