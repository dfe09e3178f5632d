//! Exact linear algebra over the integers.
//!
//! Two independent routes to rank: [`bareiss_rank`] runs dense Bareiss
//! elimination (every intermediate entry is a minor, divisions are exact),
//! and [`Echelon`] maintains a sparse row echelon form that is built one row
//! at a time with cross-multiplication and content (gcd) normalization. The
//! echelon also yields integer nullspace bases and rational solutions of
//! linear systems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer row: `(column, value)` pairs, strictly increasing columns,
/// no explicit zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

pub fn sparse_from_dense(dense: &[BigInt]) -> SparseRow {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn integer_row(values: &[BigRational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    values
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn content(row: &SparseRow) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x))
}

fn make_primitive(row: &mut SparseRow) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            for (_, x) in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// `a * row - b * other`, dropping cancelled entries.
fn combine(a: &BigInt, row: &SparseRow, b: &BigInt, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map_or(usize::MAX, |t| t.0);
        let cj = other.get(j).map_or(usize::MAX, |t| t.0);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &other[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &other[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |t| t.0).ok().map(|k| &row[k].1)
}

/// Eliminates column `col` of `row` using `pivot` (whose leading column is
/// `col`). Returns `row` unchanged when it has no entry there.
fn eliminate(row: SparseRow, pivot: &SparseRow, col: usize) -> SparseRow {
    let Some(b) = entry(&row, col) else {
        return row;
    };
    let a = &pivot[0].1;
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    let mut out = combine(&a, &row, &b, pivot);
    make_primitive(&mut out);
    out
}

/// Row echelon form over the integers, keyed by pivot column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current pivots. An empty result means the
    /// row lies in the span of the rows inserted so far.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        make_primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => row = eliminate(row, p, lead),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.last().is_none_or(|t| t.0 < self.cols));
        let row = self.reduce(row);
        match row.first() {
            Some(&(lead, _)) => {
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }

    pub fn insert_dense(&mut self, row: &[BigInt]) -> bool {
        self.insert(sparse_from_dense(row))
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    fn reduced_rows(&self) -> Vec<(usize, SparseRow)> {
        let mut rows: Vec<(usize, SparseRow)> =
            self.pivots.iter().map(|(&c, r)| (c, r.clone())).collect();
        for k in (0..rows.len()).rev() {
            let (col, pivot) = (rows[k].0, rows[k].1.clone());
            for row in rows[..k].iter_mut() {
                let taken = std::mem::take(&mut row.1);
                row.1 = eliminate(taken, &pivot, col);
            }
        }
        rows
    }

    /// Integer basis of `{x : M x = 0}` for the matrix of inserted rows.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let rows = self.reduced_rows();
        let lcm = rows.iter().fold(BigInt::one(), |acc, (_, r)| acc.lcm(&r[0].1));
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut x = vec![BigInt::zero(); self.cols];
            x[free] = lcm.clone();
            for (col, row) in &rows {
                if let Some(v) = entry(row, free) {
                    x[*col] = -(v * &lcm) / &row[0].1;
                }
            }
            let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            for v in x.iter_mut() {
                *v /= &g;
            }
            basis.push(x);
        }
        basis
    }
}

/// Solves `M x = rhs` exactly, where `M` has `cols` columns and is given by
/// its sparse integer rows. Returns the solution with all free variables set
/// to zero, or `None` when the system is inconsistent.
pub fn solve(rows: &[SparseRow], cols: usize, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(rows.len(), rhs.len());
    let mut ech = Echelon::new(cols + 1);
    for (row, b) in rows.iter().zip(rhs) {
        let mut aug: SparseRow = row.iter().map(|(c, v)| (*c, v * b.denom())).collect();
        if !b.is_zero() {
            aug.push((cols, -b.numer().clone()));
        }
        // last column is the constant term: denom * (M x - b) = 0
        ech.insert(aug);
    }
    if ech.pivots.contains_key(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (col, row) in ech.reduced_rows() {
        if let Some(v) = entry(&row, cols) {
            x[col] = BigRational::new(-v.clone(), row[0].1.clone());
        }
    }
    Some(x)
}

/// Rank by dense Bareiss elimination.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(cols);
    rows.iter()
        .filter(|r| ech.insert(sparse_from_dense(&integer_row(r))))
        .count()
}
