//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers ([`BigInt`]) and
//! rationals ([`BigRational`]); there is no floating point anywhere in this
//! module. The routines are small and direct because the matrices that show
//! up in this crate are tiny (a handful of rows and columns).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A vector of exact rationals.
pub type RationalVector = Vec<BigRational>;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
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

    /// Builds a matrix from a list of rows.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(cols, rows)
    }

    /// Like [`IntMatrix::from_rows`], but keeps the column count when there
    /// are no rows at all.
    pub fn from_rows_with_cols<T: Into<BigInt>>(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows in IntMatrix::from_rows");
            data.extend(row.into_iter().map(Into::into));
        }
        Self { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in IntMatrix::mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Diagonal entries `a_{ii}` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination; `None` for
    /// non-square matrices.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = val;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    /// Square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`smith_normal_form`]: `s = u * m * v` with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

// Smallest |entry| among the listed positions; ties resolved by list order.
fn smallest_nonzero<I>(m: &IntMatrix, positions: I) -> Option<(usize, usize)>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in positions {
        let a = m.get(i, j);
        if a.is_zero() {
            continue;
        }
        let abs = a.abs();
        if best.as_ref().is_none_or(|(_, b)| abs < *b) {
            best = Some(((i, j), abs));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form with transformation matrices.
///
/// Pivots are chosen as the smallest nonzero absolute value in the active
/// submatrix (ties broken row-major), so the output is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let sub = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = smallest_nonzero(&s, sub) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s.get(t, t).clone();
            for i in t + 1..rows {
                if !s.get(i, t).is_zero() {
                    let q = -s.get(i, t).div_floor(&pivot);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !s.get(t, j).is_zero() {
                    let q = -s.get(t, j).div_floor(&pivot);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }

            let leftovers = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            if let Some((i, j)) = smallest_nonzero(&s, leftovers) {
                if j == t {
                    s.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    s.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }

            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).is_multiple_of(&pivot));
            if let Some((i, _)) = offender {
                let one = BigInt::one();
                s.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { s, u, v }
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// True iff the rows extend to a basis of the ambient lattice `Z^cols`.
pub fn is_basis_extendable(rows: &IntMatrix) -> bool {
    if rows.rows() > rows.cols() {
        return false;
    }
    let snf = smith_normal_form(rows);
    let factors = snf.invariant_factors();
    factors.len() == rows.rows() && factors.iter().all(One::is_one)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the linear system has no solution")]
    NoSolution,
    #[error("the linear system has more than one solution")]
    NonUnique,
}

/// Exact solution of `a * x = b` over the rationals.
pub fn solve_rational_system(a: &IntMatrix, b: &[BigRational]) -> Result<RationalVector, SolveError> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let rows = a
        .row_vecs()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    solve_rational_rows(rows, b.to_vec(), a.cols())
}

/// Gauss-Jordan elimination on a rational system given by rows.
#[allow(clippy::needless_range_loop)]
pub fn solve_rational_rows(
    mut rows: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
    ncols: usize,
) -> Result<RationalVector, SolveError> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..ncols {
                let delta = &f * &rows[r][j];
                rows[i][j] -= delta;
            }
            let delta = &f * &rhs[r];
            rhs[i] -= delta;
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return Err(SolveError::NoSolution);
    }
    if pivots.len() < ncols {
        return Err(SolveError::NonUnique);
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Ok(x)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive integer multiple of a rational vector that is integral,
/// together with that integral vector.
pub fn clear_denominators(v: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    (l, ints)
}

/// All `k`-element index subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

// Coefficients of x in the basis given by the (independent) columns `basis`.
fn coordinates(basis: &[Vec<BigRational>], x: &[BigRational]) -> Result<RationalVector, SolveError> {
    let dim = x.len();
    let rows = (0..dim).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    solve_rational_rows(rows, x.to_vec(), basis.len())
}

/// Membership of `x` in the convex cone generated by `generators`.
///
/// Uses Carathéodory: `x` is in the cone iff it is a nonnegative combination
/// of some linearly independent subset of the generators.
pub fn cone_contains(generators: &[Vec<BigRational>], x: &[BigRational]) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    let dim = x.len();
    for k in 1..=generators.len().min(dim) {
        for subset in combinations(generators.len(), k) {
            let basis: Vec<Vec<BigRational>> = subset.iter().map(|&i| generators[i].clone()).collect();
            if let Ok(c) = coordinates(&basis, x) {
                if c.iter().all(|t| !t.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Regularity of the cone spanned by the rows of `generators`.
///
/// The cone is regular iff some subset of the primitive generators, as many
/// as the dimension of the span, is part of a lattice basis and already
/// generates the whole cone. Zero rows are ignored.
pub fn cone_is_regular(generators: &IntMatrix) -> bool {
    let mut prim: Vec<Vec<BigInt>> = Vec::new();
    for row in generators.row_vecs() {
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let p = primitive(&row);
        if !prim.contains(&p) {
            prim.push(p);
        }
    }
    if prim.is_empty() {
        return true;
    }
    let cols = generators.cols();
    let k = rank(&IntMatrix::from_rows_with_cols(cols, prim.clone()));
    let rational: Vec<Vec<BigRational>> = prim.iter().map(|p| to_rational(p)).collect();
    for subset in combinations(prim.len(), k) {
        let b: Vec<Vec<BigInt>> = subset.iter().map(|&i| prim[i].clone()).collect();
        if !is_basis_extendable(&IntMatrix::from_rows_with_cols(cols, b)) {
            continue;
        }
        let basis: Vec<Vec<BigRational>> = subset.iter().map(|&i| rational[i].clone()).collect();
        let spans_all = rational
            .iter()
            .all(|g| coordinates(&basis, g).is_ok_and(|c| c.iter().all(|t| !t.is_negative())));
        if spans_all {
            return true;
        }
    }
    false
}

/// Number of primes `p <= bound`.
pub fn prime_count(bound: u64) -> u64 {
    if bound < 2 {
        return 0;
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut count = 0;
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        count += 1;
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    count
}
