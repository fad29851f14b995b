//! Exact linear algebra over small prime fields.
//!
//! Matrices are dense, row-major, with entries stored as residues in `[0, p)`.
//! Everything here is deliberately simple: the matrices that show up in the
//! enumeration engines are at most a few dozen rows wide.

use std::fmt;

use crate::error::{Error, Result};

/// A prime field `F_p` with `p` in the supported set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field {
    p: u8,
}

impl Field {
    pub const SUPPORTED: [u8; 3] = [2, 3, 5];

    pub fn new(p: u64) -> Result<Self> {
        if Self::SUPPORTED.iter().any(|&q| q as u64 == p) {
            Ok(Field { p: p as u8 })
        } else {
            Err(Error::UnsupportedField(p))
        }
    }

    pub const F2: Field = Field { p: 2 };
    pub const F3: Field = Field { p: 3 };
    pub const F5: Field = Field { p: 5 };

    #[inline]
    pub fn order(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(!a.is_multiple_of(self.p));
        (1..self.p).find(|&b| self.mul(a, b) == 1).expect("nonzero residue")
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(self, a: i64) -> u8 {
        a.rem_euclid(self.p as i64) as u8
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.p)
    }
}

/// Dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<u8>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFMatrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl FFMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FFMatrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row vectors; entries are reduced mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&a| field.from_i64(a)))
            .collect();
        Ok(FFMatrix {
            rows: rows.len(),
            cols,
            field,
            data,
        })
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&a| a >= field.order()) {
            return Err(Error::Shape(format!("entry out of range for {field}")));
        }
        Ok(FFMatrix {
            rows,
            cols,
            field,
            data,
        })
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
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.order() as u32;
        let mut out = FFMatrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u32 * other.get(k, c) as u32;
                }
                out.set(r, c, (acc % p) as u8);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        let p = self.field.order() as u32;
        (0..self.rows)
            .map(|r| {
                let acc: u32 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u32 * b as u32)
                    .sum();
                (acc % p) as u8
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(self.field, &mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rref_in_place(self.field, &mut data, self.rows, self.cols).len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, one basis vector per row.
    pub fn kernel_basis(&self) -> FFMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let f = self.field;
        let mut out = FFMatrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(pr, fc)));
            }
        }
        out
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[u8]) -> Result<Option<SolutionSet>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let mut aug = FFMatrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r] % f.order());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![0u8; self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            particular[pc] = red.get(pr, self.cols);
        }
        Ok(Some(SolutionSet {
            particular,
            kernel: self.kernel_basis(),
        }))
    }

    pub fn inverse(&self) -> Result<FFMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = FFMatrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let mut inv = FFMatrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(inv)
    }
}

/// Affine solution set `particular + span(kernel rows)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub particular: Vec<u8>,
    pub kernel: FFMatrix,
}

impl SolutionSet {
    pub fn dimension(&self) -> usize {
        self.kernel.rows()
    }
}

/// In-place RREF on a raw row-major buffer; returns pivot columns.
pub(crate) fn rref_in_place(f: Field, data: &mut [u8], rows: usize, cols: usize) -> Vec<usize> {
    let p = f.order() as u16;
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if sel != pr {
            for k in 0..cols {
                data.swap(sel * cols + k, pr * cols + k);
            }
        }
        let inv = f.inv(data[pr * cols + c]) as u16;
        if inv != 1 {
            for k in c..cols {
                data[pr * cols + k] = ((data[pr * cols + k] as u16 * inv) % p) as u8;
            }
        }
        for r in 0..rows {
            if r == pr {
                continue;
            }
            let factor = data[r * cols + c] as u16;
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for k in c..cols {
                let v = data[pr * cols + k] as u16;
                if v != 0 {
                    data[r * cols + k] = ((data[r * cols + k] as u16 + neg * v) % p) as u8;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Rank of a raw row-major buffer, consuming it.
pub(crate) fn rank_of(f: Field, mut data: Vec<u8>, rows: usize, cols: usize) -> usize {
    rref_in_place(f, &mut data, rows, cols).len()
}

/// Gaussian binomial coefficient `[n choose d]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    // Number of d-subsets weighted by q^{inversions}, via the q-Pascal rule.
    let q = q as u128;
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for m in 1..=n {
        let upper = d.min(m);
        for k in (1..=upper).rev() {
            // [m,k] = [m-1,k-1] + q^k [m-1,k]
            let qk = q.saturating_pow(k as u32);
            row[k] = row[k - 1].saturating_add(qk.saturating_mul(row[k]));
        }
    }
    row[d]
}

/// Iterator over all `d`-dimensional subspaces of `F_q^n`, each yielded once as
/// a `d x n` matrix in reduced row echelon form. Order is lexicographic in the
/// pivot profile, then in the free entries.
#[derive(Debug, Clone)]
pub struct SubspaceIterator {
    field: Field,
    n: usize,
    d: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    values: Vec<u8>,
    started: bool,
}

/// Enumerate subspaces, refusing when the Gaussian binomial exceeds `cap`.
pub fn enumerate_subspaces(n: usize, d: usize, field: Field, cap: u128) -> Result<SubspaceIterator> {
    if d > n {
        return Err(Error::Precondition(format!(
            "subspace dimension {d} exceeds ambient dimension {n}"
        )));
    }
    let count = gaussian_binomial(n, d, field.order() as u64);
    if count > cap {
        return Err(Error::CapExceeded {
            what: format!("Gr({d},{n}) over {field}"),
            required: count,
            cap,
        });
    }
    Ok(SubspaceIterator::new(n, d, field))
}

impl SubspaceIterator {
    fn new(n: usize, d: usize, field: Field) -> Self {
        let pivots: Vec<usize> = (0..d).collect();
        let free = free_positions(&pivots, n);
        let values = vec![0; free.len()];
        SubspaceIterator {
            field,
            n,
            d,
            pivots: Some(pivots),
            free,
            values,
            started: false,
        }
    }

    fn current(&self) -> FFMatrix {
        let pivots = self.pivots.as_ref().expect("active iterator");
        let mut m = FFMatrix::zeros(self.field, self.d, self.n);
        for (r, &c) in pivots.iter().enumerate() {
            m.set(r, c, 1);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.values) {
            m.set(r, c, v);
        }
        m
    }

    fn advance(&mut self) {
        let q = self.field.order();
        for v in self.values.iter_mut().rev() {
            *v += 1;
            if *v < q {
                return;
            }
            *v = 0;
        }
        // Free entries exhausted; move to the next pivot combination.
        let pivots = self.pivots.as_mut().expect("active iterator");
        let (n, d) = (self.n, self.d);
        let mut k = d;
        loop {
            if k == 0 {
                self.pivots = None;
                return;
            }
            k -= 1;
            if pivots[k] < n - d + k {
                pivots[k] += 1;
                for j in k + 1..d {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
        self.free = free_positions(pivots, n);
        self.values = vec![0; self.free.len()];
    }
}

fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut free = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                free.push((r, c));
            }
        }
    }
    free
}

impl Iterator for SubspaceIterator {
    type Item = FFMatrix;

    fn next(&mut self) -> Option<FFMatrix> {
        if self.started {
            if self.pivots.is_some() {
                self.advance();
            }
        } else {
            self.started = true;
        }
        self.pivots.as_ref()?;
        Some(self.current())
    }
}
