//! Exact arithmetic and dense linear algebra over prime fields GF(p).
//!
//! Residues are stored as single bytes, so the modulus is capped at 251
//! (the largest prime below 256). Everything here is immutable after
//! construction and all operations are pure.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus; residues must fit in one byte.
pub const MAX_MODULUS: u16 = 251;

/// A prime modulus p with 2 <= p <= 251, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u16,
}

impl PrimeModulus {
    /// Deterministic trial-division primality check.
    pub fn new(p: u16) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u16;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeModulus { p })
    }

    #[inline]
    pub fn get(self) -> u16 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        if s >= self.p { (s - self.p) as u8 } else { s as u8 }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b { a - b } else { (self.p - (b - a) as u16) as u8 }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 { 0 } else { (self.p - a as u16) as u8 }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p as u32) as u8
    }

    pub fn pow(self, mut a: u8, mut e: u32) -> u8 {
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inverse(self, a: u8) -> Result<u8> {
        if a == 0 || a as u16 >= self.p {
            return Err(Error::NoInverse(self.p));
        }
        Ok(self.pow(a, self.p as u32 - 2))
    }

    /// Reduce an arbitrary signed integer into [0, p).
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    /// Checks that a slice holds reduced residues.
    fn check_entries(self, entries: &[u8]) -> Result<()> {
        if let Some(&bad) = entries.iter().find(|&&e| e as u16 >= self.p) {
            return Err(Error::Dimension(format!(
                "entry {bad} is not reduced modulo {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// A vector of residues modulo a common prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorF {
    modulus: PrimeModulus,
    entries: Vec<u8>,
}

impl VectorF {
    pub fn new(modulus: PrimeModulus, entries: Vec<u8>) -> Result<Self> {
        modulus.check_entries(&entries)?;
        Ok(VectorF { modulus, entries })
    }

    pub fn zeros(modulus: PrimeModulus, len: usize) -> Self {
        VectorF { modulus, entries: vec![0; len] }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Indices carrying a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i] != 0).collect()
    }

    pub fn scale(&self, c: u8) -> VectorF {
        let p = self.modulus;
        VectorF {
            modulus: p,
            entries: self.entries.iter().map(|&e| p.mul(e, c)).collect(),
        }
    }

    /// Canonical representative up to a nonzero scalar: the first nonzero
    /// entry is scaled to 1. Zero vectors are left unchanged.
    pub fn normalize_projective(&self) -> VectorF {
        match self.entries.iter().find(|&&e| e != 0) {
            None => self.clone(),
            Some(&lead) => {
                let inv = self.modulus.inverse(lead).expect("nonzero leading entry");
                self.scale(inv)
            }
        }
    }
}

impl fmt::Display for VectorF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Result of Gauss-Jordan elimination: the reduced row-echelon form,
/// its pivot columns in increasing order, and the rank.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: MatrixF,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// A dense matrix over GF(p), stored column-major so that the column of
/// a ground-set element is contiguous.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixF {
    modulus: PrimeModulus,
    rows: usize,
    cols: usize,
    data: Vec<u8>, // column-major
}

impl MatrixF {
    pub fn new(modulus: PrimeModulus, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        modulus.check_entries(&data)?;
        Ok(MatrixF { modulus, rows, cols, data })
    }

    pub fn from_columns(modulus: PrimeModulus, rows: usize, columns: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * columns.len());
        for col in columns {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column of length {} in a matrix with {rows} rows",
                    col.len()
                )));
            }
            data.extend_from_slice(col);
        }
        MatrixF::new(modulus, rows, columns.len(), data)
    }

    pub fn zeros(modulus: PrimeModulus, rows: usize, cols: usize) -> Self {
        MatrixF { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[c * self.rows + r]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!((v as u16) < self.modulus.p);
        self.data[c * self.rows + r] = v;
    }

    #[inline]
    pub fn column(&self, c: usize) -> &[u8] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn transpose(&self) -> MatrixF {
        let mut t = MatrixF::zeros(self.modulus, self.cols, self.rows);
        for c in 0..self.cols {
            for r in 0..self.rows {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> MatrixF {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for &c in cols {
            data.extend_from_slice(self.column(c));
        }
        MatrixF { modulus: self.modulus, rows: self.rows, cols: cols.len(), data }
    }

    /// Matrix-vector product A*v.
    pub fn apply(&self, v: &VectorF) -> VectorF {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let p = self.modulus;
        let mut out = vec![0u8; self.rows];
        for c in 0..self.cols {
            let x = v.entries[c];
            if x == 0 {
                continue;
            }
            let col = self.column(c);
            for (r, o) in out.iter_mut().enumerate() {
                *o = p.add(*o, p.mul(col[r], x));
            }
        }
        VectorF { modulus: p, entries: out }
    }

    /// Row-vector times matrix: v*A, for v of length `rows`.
    pub fn apply_left(&self, v: &VectorF) -> VectorF {
        assert_eq!(v.len(), self.rows, "vector length must match row count");
        let p = self.modulus;
        let mut out = vec![0u8; self.cols];
        for (c, o) in out.iter_mut().enumerate() {
            let col = self.column(c);
            let mut acc = 0u8;
            for (&a, &b) in col.iter().zip(&v.entries) {
                acc = p.add(acc, p.mul(a, b));
            }
            *o = acc;
        }
        VectorF { modulus: p, entries: out }
    }

    /// Gauss-Jordan elimination. Idempotent: rref(rref(A)) = rref(A).
    pub fn rref(&self) -> Echelon {
        let p = self.modulus;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let (a, b) = (m.get(row, c), m.get(pr, c));
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = p.inverse(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                m.set(row, c, p.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = p.sub(m.get(r, c), p.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Echelon { matrix: m, pivots, rank }
    }

    /// A basis of the right null space { x : A x = 0 }, one projectively
    /// normalized vector per free column. Empty iff the columns are
    /// independent.
    pub fn kernel_basis(&self) -> Vec<VectorF> {
        let p = self.modulus;
        let ech = self.rref();
        let pivot_row: Vec<Option<usize>> = {
            let mut pr = vec![None; self.cols];
            for (row, &pc) in ech.pivots.iter().enumerate() {
                pr[pc] = Some(row);
            }
            pr
        };
        let mut basis = Vec::with_capacity(self.cols - ech.rank);
        for free in 0..self.cols {
            if pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (col, pr) in pivot_row.iter().enumerate() {
                if let Some(row) = pr {
                    v[col] = p.neg(ech.matrix.get(*row, free));
                }
            }
            let vec = VectorF { modulus: p, entries: v }.normalize_projective();
            basis.push(vec);
        }
        basis
    }

    /// Rank of the submatrix of the given columns; the empty set has rank 0.
    pub fn subset_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        debug_assert!(cols.iter().all(|&c| c < self.cols));
        let p = self.modulus;
        // Row-reduce a scratch copy of the selected columns, rank only.
        let mut scratch: Vec<Vec<u8>> = cols.iter().map(|&c| self.column(c).to_vec()).collect();
        let ncols = scratch.len();
        let mut rank = 0usize;
        for row in 0..self.rows {
            let Some(offset) = (rank..ncols).position(|i| scratch[i][row] != 0) else {
                continue;
            };
            scratch.swap(rank, rank + offset);
            let inv = p.inverse(scratch[rank][row]).expect("pivot is nonzero");
            for e in scratch[rank].iter_mut() {
                *e = p.mul(*e, inv);
            }
            let (head, tail) = scratch.split_at_mut(rank + 1);
            let pivot_col = &head[rank];
            for col in tail.iter_mut() {
                let factor = col[row];
                if factor == 0 {
                    continue;
                }
                for (e, &pv) in col.iter_mut().zip(pivot_col.iter()) {
                    *e = p.sub(*e, p.mul(factor, pv));
                }
            }
            rank += 1;
            if rank == ncols {
                break;
            }
        }
        rank
    }
}

impl fmt::Display for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
