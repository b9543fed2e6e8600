//! Exact integer linear algebra on small dense matrices.
//!
//! Entries are `i64` and every operation is overflow-checked; an overflow is
//! reported as [`LinalgError::Overflow`] rather than wrapping.
//!
//! Lattices are kept in row-style Hermite normal form (positive pivots,
//! entries above each pivot reduced into `[0, pivot)`), which is unique per
//! lattice, so lattice equality is plain structural equality.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sublattice generator is not contained in the ambient lattice")]
    NotASublattice,
}

type LResult<T> = Result<T, LinalgError>;

#[inline]
fn ck(v: Option<i64>) -> LResult<i64> {
    v.ok_or(LinalgError::Overflow)
}

/// `a - q*b`, checked.
#[inline]
fn sub_mul(a: i64, q: i64, b: i64) -> LResult<i64> {
    ck(a.checked_sub(ck(q.checked_mul(b))?))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> LResult<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, cols: &[C]) -> LResult<Self> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> LResult<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = ck(a.checked_mul(rhs[(k, j)]))?;
                    out[(i, j)] = ck(out[(i, j)].checked_add(prod))?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> LResult<Vec<i64>> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| ck(acc.checked_add(ck(a.checked_mul(b))?)))
            })
            .collect()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> LResult<usize> {
        Ok(hermite(self, false)?.pivots.len())
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

    /// `row[target] -= q * row[source]`
    fn row_sub(&mut self, target: usize, source: usize, q: i64) -> LResult<()> {
        if q == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let v = sub_mul(self[(target, j)], q, self[(source, j)])?;
            self[(target, j)] = v;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> LResult<()> {
        for j in 0..self.cols {
            self[(r, j)] = ck(self[(r, j)].checked_neg())?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl fmt::Display for IntMatrix {
    /// One row per line, space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

struct Hermite {
    h: IntMatrix,
    u: Option<IntMatrix>,
    pivots: Vec<usize>,
}

/// Row-style Hermite normal form `H = U * A`.
fn hermite(a: &IntMatrix, track: bool) -> LResult<Hermite> {
    let mut h = a.clone();
    let mut u = track.then(|| IntMatrix::identity(a.rows));
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..h.cols {
        if row == h.rows {
            break;
        }
        while let Some(best) = (row..h.rows).filter(|&i| h[(i, col)] != 0).min_by_key(|&i| h[(i, col)].unsigned_abs()) {
            h.swap_rows(row, best);
            if let Some(u) = u.as_mut() {
                u.swap_rows(row, best);
            }
            let mut clean = true;
            for i in row + 1..h.rows {
                if h[(i, col)] != 0 {
                    let q = h[(i, col)].div_euclid(h[(row, col)]);
                    h.row_sub(i, row, q)?;
                    if let Some(u) = u.as_mut() {
                        u.row_sub(i, row, q)?;
                    }
                    clean &= h[(i, col)] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if h[(row, col)] == 0 {
            continue;
        }
        if h[(row, col)] < 0 {
            h.negate_row(row)?;
            if let Some(u) = u.as_mut() {
                u.negate_row(row)?;
            }
        }
        for i in 0..row {
            let q = h[(i, col)].div_euclid(h[(row, col)]);
            h.row_sub(i, row, q)?;
            if let Some(u) = u.as_mut() {
                u.row_sub(i, row, q)?;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if let Some(u) = u.as_mut() {
        reduce_transform(u, pivots.len())?;
    }
    Ok(Hermite { h, u, pivots })
}

/// Rows `rank..` of a transform map to zero, so they may be replaced by any
/// basis of their span and added freely to the rows above. Puts them in
/// Hermite form and reduces the rows above against them, which keeps the
/// transform small without changing `U * A`.
fn reduce_transform(u: &mut IntMatrix, rank: usize) -> LResult<()> {
    if rank == u.rows {
        return Ok(());
    }
    let tail: Vec<Vec<i64>> = (rank..u.rows).map(|i| u.row(i).to_vec()).collect();
    let kernel = hermite(&IntMatrix::from_rows(u.cols, &tail)?, false)?;
    for (k, &p) in kernel.pivots.iter().enumerate() {
        for j in 0..u.cols {
            u[(rank + k, j)] = kernel.h[(k, j)];
        }
        let pivot = kernel.h[(k, p)];
        for i in 0..rank {
            let q = u[(i, p)].div_euclid(pivot);
            u.row_sub(i, rank + k, q)?;
        }
    }
    Ok(())
}

/// Smith normal form `S = U * M * V` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries `d1 | d2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)]).take_while(|&d| d != 0).collect()
    }
}

/// Smith form by alternating row and column Hermite forms until the matrix
/// is diagonal up to permutation, then a gcd pass for divisibility.
///
/// Hermite forms keep entries reduced above pivots, which keeps `U` and `V`
/// far smaller than plain Euclidean pivoting does.
pub fn snf(m: &IntMatrix) -> LResult<Snf> {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut on_rows = true;
    while !is_monomial(&s) {
        if on_rows {
            let Hermite { h, u: uh, .. } = hermite(&s, true)?;
            s = h;
            u = uh.expect("tracked").mul(&u)?;
        } else {
            let Hermite { h, u: vh, .. } = hermite(&s.transpose(), true)?;
            s = h.transpose();
            v = v.mul(&vh.expect("tracked").transpose())?;
        }
        on_rows = !on_rows;
    }

    // Move the (at most one per row and column) nonzero entries onto the diagonal.
    for t in 0..rows.min(cols) {
        let Some((i, j)) = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).find(|&(i, j)| s[(i, j)] != 0) else {
            break;
        };
        move_to_pivot(&mut s, &mut u, &mut v, t, i, j);
    }
    let rank = (0..rows.min(cols)).take_while(|&t| s[(t, t)] != 0).count();
    for t in 0..rank {
        if s[(t, t)] < 0 {
            s.negate_row(t)?;
            u.negate_row(t)?;
        }
    }

    // diag(a, b) -> diag(g, ab/g) with x a + y b = g.
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (s[(i, i)], s[(j, j)]);
            if b % a == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a, b);
            let (ag, bg) = (a / g, b / g);
            combine_rows(&mut u, i, j, [[x, y], [-bg, ag]])?;
            combine_cols(&mut v, i, j, [[1, ck(ck(y.checked_mul(bg))?.checked_neg())?], [1, ck(x.checked_mul(ag))?]])?;
            s[(i, i)] = g;
            s[(j, j)] = ck(ag.checked_mul(b))?;
        }
    }
    Ok(Snf { s, u, v })
}

/// At most one nonzero entry in every row and every column.
fn is_monomial(s: &IntMatrix) -> bool {
    (0..s.rows).all(|i| s.row(i).iter().filter(|&&x| x != 0).count() <= 1)
        && (0..s.cols).all(|j| (0..s.rows).filter(|&i| s[(i, j)] != 0).count() <= 1)
}

/// `(g, x, y)` with `g = gcd(a, b) > 0` and `x a + y b = g`, for `a, b > 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    (r0, x0, y0)
}

/// Rows `i`, `j` of `m` replaced by `t * [row_i; row_j]`.
fn combine_rows(m: &mut IntMatrix, i: usize, j: usize, t: [[i64; 2]; 2]) -> LResult<()> {
    for c in 0..m.cols {
        let (a, b) = (m[(i, c)], m[(j, c)]);
        m[(i, c)] = lin2(t[0], a, b)?;
        m[(j, c)] = lin2(t[1], a, b)?;
    }
    Ok(())
}

/// Columns `i`, `j` of `m` replaced by `[col_i, col_j] * t`.
fn combine_cols(m: &mut IntMatrix, i: usize, j: usize, t: [[i64; 2]; 2]) -> LResult<()> {
    for r in 0..m.rows {
        let (a, b) = (m[(r, i)], m[(r, j)]);
        m[(r, i)] = lin2([t[0][0], t[1][0]], a, b)?;
        m[(r, j)] = lin2([t[0][1], t[1][1]], a, b)?;
    }
    Ok(())
}

fn lin2([p, q]: [i64; 2], a: i64, b: i64) -> LResult<i64> {
    ck(ck(p.checked_mul(a))?.checked_add(ck(q.checked_mul(b))?))
}

fn move_to_pivot(s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize, i: usize, j: usize) {
    s.swap_rows(t, i);
    u.swap_rows(t, i);
    s.swap_cols(t, j);
    v.swap_cols(t, j);
}

/// A subgroup of `Z^n` in canonical Hermite form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { basis: IntMatrix::zeros(0, dim), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Lattice { basis: IntMatrix::identity(dim), pivots: (0..dim).collect() }
    }

    /// The Z-span of the rows of `gens`.
    pub fn from_generators(gens: &IntMatrix) -> LResult<Self> {
        let Hermite { h, pivots, .. } = hermite(gens, false)?;
        let rank = pivots.len();
        let rows: Vec<Vec<i64>> = (0..rank).map(|i| h.row(i).to_vec()).collect();
        Ok(Lattice { basis: IntMatrix::from_rows(gens.cols, &rows)?, pivots })
    }

    pub fn from_vectors<V: AsRef<[i64]>>(dim: usize, vecs: &[V]) -> LResult<Self> {
        Self::from_generators(&IntMatrix::from_rows(dim, vecs)?)
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<i64>> {
        self.basis.row_vecs()
    }

    /// Integer coefficients of `v` in the canonical basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> LResult<Option<Vec<i64>>> {
        if v.len() != self.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (r, &p) in self.pivots.iter().enumerate() {
            let pivot = self.basis[(r, p)];
            if rest[p] % pivot != 0 {
                return Ok(None);
            }
            let q = rest[p] / pivot;
            for (j, x) in rest.iter_mut().enumerate() {
                *x = sub_mul(*x, q, self.basis[(r, j)])?;
            }
            coords.push(q);
        }
        Ok(rest.iter().all(|&x| x == 0).then_some(coords))
    }

    pub fn contains(&self, v: &[i64]) -> LResult<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> LResult<bool> {
        self.check_dim(other)?;
        for i in 0..other.rank() {
            if !self.contains(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> LResult<Lattice> {
        self.check_dim(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Lattice::from_vectors(self.dim(), &rows)
    }

    fn check_dim(&self, other: &Lattice) -> LResult<()> {
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }
}

/// `{ v in Z^cols : M v = 0 }`.
pub fn kernel_lattice(m: &IntMatrix) -> LResult<Lattice> {
    let Hermite { u, pivots, .. } = hermite(&m.transpose(), true)?;
    let u = u.expect("transform tracked");
    let kernel_rows: Vec<Vec<i64>> = (pivots.len()..u.rows).map(|i| u.row(i).to_vec()).collect();
    Lattice::from_vectors(m.cols, &kernel_rows)
}

/// The Z-span of the columns of `m`.
pub fn image_lattice(m: &IntMatrix) -> LResult<Lattice> {
    Lattice::from_generators(&m.transpose())
}

pub fn lattice_contains(l: &Lattice, v: &[i64]) -> LResult<bool> {
    l.contains(v)
}

pub fn lattice_equal(a: &Lattice, b: &Lattice) -> LResult<bool> {
    a.check_dim(b)?;
    Ok(a == b)
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> LResult<Lattice> {
    a.sum(b)
}

/// Finitely generated abelian group `Z^free + Z/d1 + ... + Z/dk`, `d1 | d2 | ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    #[serde(rename = "free")]
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<i64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `big / small` for a sublattice `small` of `big`.
pub fn quotient(big: &Lattice, small: &Lattice) -> LResult<AbelianGroup> {
    big.check_dim(small)?;
    let mut coords = Vec::with_capacity(small.rank());
    for i in 0..small.rank() {
        match big.coordinates(small.basis.row(i))? {
            Some(c) => coords.push(c),
            None => return Err(LinalgError::NotASublattice),
        }
    }
    let factors = snf(&IntMatrix::from_rows(big.rank(), &coords)?)?.invariant_factors();
    Ok(AbelianGroup {
        free_rank: big.rank() - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).collect(),
    })
}
