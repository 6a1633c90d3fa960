//! Exact linear algebra over the integers and over residue rings `Z/mZ`.
//!
//! Two elimination routines live here. [`snf`] is the textbook Smith normal
//! form over `Z` with unimodular transforms. Everything the cohomology code
//! needs is computed modulo `m` instead, through a diagonalization over
//! `Z/mZ` whose transforms are invertible mod `m`; entries never grow past
//! `m` that way, which keeps the large coboundary systems cheap.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
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

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row-major entries; fails if the count is not `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row.iter().map(|&x| x.into()));
        }
        IntMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Entry-wise reduction into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> IntMatrix {
        let m = BigInt::from(m);
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.mod_floor(&m)).collect(),
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, below: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, below.cols, "column count mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        IntMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, right: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, right.rows, "row count mismatch in hstack");
        let cols = self.cols + right.cols;
        let mut m = Self::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..right.cols {
                m.set(r, self.cols + c, right.get(r, c).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt, modulus: Option<&BigInt>) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.entries[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let v = &self.entries[dst * self.cols + c] + k * s;
            self.entries[dst * self.cols + c] = match modulus {
                Some(m) => v.mod_floor(m),
                None => v,
            };
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt, modulus: Option<&BigInt>) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.entries[r * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = &self.entries[r * self.cols + dst] + k * s;
            self.entries[r * self.cols + dst] = match modulus {
                Some(m) => v.mod_floor(m),
                None => v,
            };
        }
    }

    fn scale_row(&mut self, r: usize, k: &BigInt, modulus: Option<&BigInt>) {
        for c in 0..self.cols {
            let v = &self.entries[r * self.cols + c] * k;
            self.entries[r * self.cols + c] = match modulus {
                Some(m) => v.mod_floor(m),
                None => v,
            };
        }
    }

    fn scale_col(&mut self, c: usize, k: &BigInt, modulus: Option<&BigInt>) {
        for r in 0..self.rows {
            let v = &self.entries[r * self.cols + c] * k;
            self.entries[r * self.cols + c] = match modulus {
                Some(m) => v.mod_floor(m),
                None => v,
            };
        }
    }

    /// Replaces rows (a, b) by (x*a + y*b, z*a + w*b).
    fn mix_rows(&mut self, a: usize, b: usize, t: &[BigInt; 4], modulus: Option<&BigInt>) {
        for c in 0..self.cols {
            let ra = self.entries[a * self.cols + c].clone();
            let rb = self.entries[b * self.cols + c].clone();
            if ra.is_zero() && rb.is_zero() {
                continue;
            }
            let na = &t[0] * &ra + &t[1] * &rb;
            let nb = &t[2] * &ra + &t[3] * &rb;
            let (na, nb) = match modulus {
                Some(m) => (na.mod_floor(m), nb.mod_floor(m)),
                None => (na, nb),
            };
            self.entries[a * self.cols + c] = na;
            self.entries[b * self.cols + c] = nb;
        }
    }

    /// Replaces columns (a, b) by (x*a + y*b, z*a + w*b).
    fn mix_cols(&mut self, a: usize, b: usize, t: &[BigInt; 4], modulus: Option<&BigInt>) {
        for r in 0..self.rows {
            let ca = self.entries[r * self.cols + a].clone();
            let cb = self.entries[r * self.cols + b].clone();
            if ca.is_zero() && cb.is_zero() {
                continue;
            }
            let na = &t[0] * &ca + &t[1] * &cb;
            let nb = &t[2] * &ca + &t[3] * &cb;
            let (na, nb) = match modulus {
                Some(m) => (na.mod_floor(m), nb.mod_floor(m)),
                None => (na, nb),
            };
            self.entries[r * self.cols + a] = na;
            self.entries[r * self.cols + b] = nb;
        }
    }
}

/// Invariant factors `d1 | d2 | ... | dr` of a finite abelian group, each at least 2.
///
/// The empty list is the trivial group. Factors equal to 1 are never stored,
/// so two structures are isomorphic exactly when the lists are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct AbGroupStructure {
    factors: Vec<u64>,
}

impl AbGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(&[order])
    }

    /// Checks the divisibility chain and rejects factors below 2.
    pub fn new(factors: Vec<u64>) -> Result<Self, LinalgError> {
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(LinalgError::NotADivisorChain(factors));
            }
        }
        if factors.iter().any(|&d| d < 2) {
            return Err(LinalgError::NotADivisorChain(factors));
        }
        Ok(AbGroupStructure { factors })
    }

    /// Normalizes an arbitrary direct sum of cyclic groups `Z/o1 + Z/o2 + ...`
    /// (orders 0 are rejected by panicking; orders 1 are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let parts: Vec<Vec<(u64, u32)>> = orders
            .iter()
            .map(|&o| {
                assert!(o > 0, "cyclic order must be positive");
                factor_u64(o)
            })
            .collect();
        let chain = assemble_invariant_factors(&parts);
        AbGroupStructure {
            factors: chain.into_iter().map(|f| f.order).collect(),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Group order as a big integer (the product can overflow `u64`).
    pub fn order(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }
}

impl fmt::Display for AbGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl TryFrom<Vec<String>> for AbGroupStructure {
    type Error = LinalgError;
    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let factors = v
            .iter()
            .map(|s| s.parse::<u64>().map_err(|_| LinalgError::Parse(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        AbGroupStructure::new(factors)
    }
}

impl From<AbGroupStructure> for Vec<String> {
    fn from(s: AbGroupStructure) -> Self {
        s.factors.iter().map(u64::to_string).collect()
    }
}

/// Result of [`snf`]: `left * M * right == diagonal`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d_i`, including zeros, in order.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows.min(self.diagonal.cols);
        (0..k).map(|i| self.diagonal.get(i, i).clone()).collect()
    }
}

/// Smith normal form over `Z`.
///
/// Pivot: smallest nonzero absolute value in the active block, ties broken by
/// lowest `(row, col)`. Diagonal entries are non-negative and form a
/// divisibility chain; `left` and `right` have determinant `±1`.
pub fn snf(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_abs_entry(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(&pivot);
                let neg = -q;
                d.add_row_multiple(i, t, &neg, None);
                u.add_row_multiple(i, t, &neg, None);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(&pivot);
                let neg = -q;
                d.add_col_multiple(j, t, &neg, None);
                v.add_col_multiple(j, t, &neg, None);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one, None);
                    u.add_row_multiple(t, i, &one, None);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            let minus = -BigInt::one();
            d.scale_row(t, &minus, None);
            u.scale_row(t, &minus, None);
        }
    }

    Snf {
        left: u,
        diagonal: d,
        right: v,
    }
}

fn smallest_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in t..d.rows {
        for c in t..d.cols {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Which transforms a modular diagonalization should accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub left_inv: bool,
    pub right: bool,
}

/// `left * A * right ≡ diag(pivots, 0, ...) (mod m)`, pivots are proper divisors of `m`.
pub(crate) struct ModDiagonal {
    pub pivots: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub left_inv: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl ModDiagonal {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Diagonalizes `a` over `Z/mZ` (`m >= 2`). The pivot at each step is the entry
/// with the smallest `gcd(entry, m)`, ties broken by lowest `(row, col)`, and it
/// is normalized to that gcd by a unit. The result is diagonal but not
/// necessarily a divisibility chain; callers normalize orders themselves.
pub(crate) fn diagonalize_mod(a: &IntMatrix, m: u64, track: Track) -> ModDiagonal {
    assert!(m >= 2, "modulus must be at least 2");
    let modulus = BigInt::from(m);
    let md = Some(&modulus);
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.reduce_mod(m);
    let mut left = track.left.then(|| IntMatrix::identity(rows));
    let mut left_inv = track.left_inv.then(|| IntMatrix::identity(rows));
    let mut right = track.right.then(|| IntMatrix::identity(cols));
    let mut pivots = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pr, pc, g)) = smallest_gcd_entry(&d, t, &modulus) else {
            break;
        };
        d.swap_rows(t, pr);
        if let Some(l) = left.as_mut() {
            l.swap_rows(t, pr);
        }
        if let Some(li) = left_inv.as_mut() {
            li.swap_cols(t, pr);
        }
        d.swap_cols(t, pc);
        if let Some(r) = right.as_mut() {
            r.swap_cols(t, pc);
        }

        // Normalize the pivot to g = gcd(pivot, m).
        let unit = normalizing_unit(d.get(t, t), &g, &modulus);
        if !unit.is_one() {
            d.scale_row(t, &unit, md);
            if let Some(l) = left.as_mut() {
                l.scale_row(t, &unit, md);
            }
            if let Some(li) = left_inv.as_mut() {
                let inv = mod_inverse(&unit, &modulus).expect("normalizing factor is a unit");
                li.scale_col(t, &inv, md);
            }
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let b = d.get(i, t).clone();
                if b.is_zero() {
                    continue;
                }
                let p = d.get(t, t).clone();
                if b.is_multiple_of(&p) {
                    let q = &b / &p;
                    let neg = (-&q).mod_floor(&modulus);
                    d.add_row_multiple(i, t, &neg, md);
                    if let Some(l) = left.as_mut() {
                        l.add_row_multiple(i, t, &neg, md);
                    }
                    if let Some(li) = left_inv.as_mut() {
                        li.add_col_multiple(t, i, &q, md);
                    }
                } else {
                    let (tr, inv) = bezout_transform(&p, &b);
                    d.mix_rows(t, i, &tr, md);
                    if let Some(l) = left.as_mut() {
                        l.mix_rows(t, i, &tr, md);
                    }
                    if let Some(li) = left_inv.as_mut() {
                        // L' = T L  =>  L'^{-1} = L^{-1} T^{-1}; columns mix by T^{-1} transposed.
                        let inv_t = [
                            inv[0].clone(),
                            inv[2].clone(),
                            inv[1].clone(),
                            inv[3].clone(),
                        ];
                        li.mix_cols(t, i, &inv_t, md);
                    }
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let b = d.get(t, j).clone();
                if b.is_zero() {
                    continue;
                }
                let p = d.get(t, t).clone();
                if b.is_multiple_of(&p) {
                    let q = &b / &p;
                    let neg = (-&q).mod_floor(&modulus);
                    d.add_col_multiple(j, t, &neg, md);
                    if let Some(r) = right.as_mut() {
                        r.add_col_multiple(j, t, &neg, md);
                    }
                } else {
                    let (tr, _) = bezout_transform(&p, &b);
                    d.mix_cols(t, j, &tr, md);
                    if let Some(r) = right.as_mut() {
                        r.mix_cols(t, j, &tr, md);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        pivots.push(d.get(t, t).clone());
    }

    ModDiagonal {
        pivots,
        left,
        left_inv,
        right,
    }
}

fn smallest_gcd_entry(d: &IntMatrix, t: usize, m: &BigInt) -> Option<(usize, usize, BigInt)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in t..d.rows {
        for c in t..d.cols {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let g = x.gcd(m);
            if best.as_ref().is_none_or(|(b, _, _)| g < *b) {
                let done = g.is_one();
                best = Some((g, r, c));
                if done {
                    return best.map(|(g, r, c)| (r, c, g));
                }
            }
        }
    }
    best.map(|(g, r, c)| (r, c, g))
}

/// A unit `u` mod `m` with `a * u ≡ g (mod m)` where `g = gcd(a, m)`.
fn normalizing_unit(a: &BigInt, g: &BigInt, m: &BigInt) -> BigInt {
    if a == g {
        return BigInt::one();
    }
    let a_red = a / g;
    let m_red = m / g;
    let base = if m_red.is_one() {
        BigInt::one()
    } else {
        mod_inverse(&a_red, &m_red).expect("a/g is coprime to m/g")
    };
    let mut u = base;
    loop {
        if u.gcd(m).is_one() {
            return u.mod_floor(m);
        }
        u += &m_red;
    }
}

/// Unimodular 2x2 transform sending `(p, b)` to `(gcd, 0)`, and its inverse.
/// Both are returned row-major as `[x, y, z, w]`.
fn bezout_transform(p: &BigInt, b: &BigInt) -> ([BigInt; 4], [BigInt; 4]) {
    let e = p.extended_gcd(b);
    let (g, x, y) = (e.gcd, e.x, e.y);
    let pg = p / &g;
    let bg = b / &g;
    // [x y; -b/g p/g] has determinant (x p + y b)/g = 1.
    let fwd = [x.clone(), y.clone(), -bg.clone(), pg.clone()];
    let inv = [pg, -y, bg, x];
    (fwd, inv)
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Generators of `{ x mod m : M x ≡ 0 (mod m) }`, as the columns of the result.
///
/// Zero columns are dropped, so an injective map gives a matrix with no columns.
pub fn kernel_mod(matrix: &IntMatrix, m: u64) -> Result<IntMatrix, LinalgError> {
    if m == 0 {
        return Err(LinalgError::Modulus);
    }
    let n = matrix.cols;
    if m == 1 {
        return Ok(IntMatrix::zeros(n, 0));
    }
    let modulus = BigInt::from(m);
    let diag = diagonalize_mod(
        matrix,
        m,
        Track {
            right: true,
            ..Track::default()
        },
    );
    let right = diag.right.as_ref().expect("tracked");
    let mut gens = Vec::new();
    for t in 0..n {
        let scale = match diag.pivots.get(t) {
            Some(g) => &modulus / g,
            None => BigInt::one(),
        };
        let col: Vec<BigInt> = right
            .column(t)
            .into_iter()
            .map(|x| (x * &scale).mod_floor(&modulus))
            .collect();
        if col.iter().any(|x| !x.is_zero()) {
            gens.push(col);
        }
    }
    Ok(IntMatrix::from_columns(n, &gens))
}

/// Invariant factors of `span(amb) / span(sub)` inside `(Z/m)^rows`.
pub fn quotient_structure(
    sub_gens: &IntMatrix,
    amb_gens: &IntMatrix,
    m: u64,
) -> Result<AbGroupStructure, LinalgError> {
    Ok(QuotientPresentation::new(sub_gens, amb_gens, m)?
        .structure()
        .clone())
}

#[derive(Clone, Debug)]
struct Factor {
    order: u64,
    generator: Vec<BigInt>,
    // coordinate = sum(coeff * w[summand]) mod order
    parts: Vec<(usize, BigInt)>,
}

/// An explicit presentation of `span(amb) / span(sub)` over `Z/m`: invariant
/// factors, one ambient representative per factor, and a coordinate map
/// from ambient vectors to the invariant-factor basis.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    modulus: u64,
    dim: usize,
    structure: AbGroupStructure,
    amb_left: IntMatrix,
    amb_pivots: Vec<BigInt>,
    rel_left: IntMatrix,
    factors: Vec<Factor>,
}

impl QuotientPresentation {
    pub fn new(sub_gens: &IntMatrix, amb_gens: &IntMatrix, m: u64) -> Result<Self, LinalgError> {
        if m == 0 {
            return Err(LinalgError::Modulus);
        }
        let dim = amb_gens.rows;
        if sub_gens.rows != dim {
            return Err(LinalgError::Dimension {
                expected: dim,
                found: sub_gens.rows,
            });
        }
        if m == 1 {
            return Ok(QuotientPresentation {
                modulus: 1,
                dim,
                structure: AbGroupStructure::trivial(),
                amb_left: IntMatrix::identity(dim),
                amb_pivots: Vec::new(),
                rel_left: IntMatrix::identity(0),
                factors: Vec::new(),
            });
        }
        let modulus = BigInt::from(m);

        // span(amb) ≅ ⊕ Z/(m/g_t), generator of summand t = column t of A·V.
        let amb = amb_gens.reduce_mod(m);
        let ad = diagonalize_mod(
            &amb,
            m,
            Track {
                left: true,
                right: true,
                ..Track::default()
            },
        );
        let amb_left = ad.left.clone().expect("tracked");
        let av = amb.mul(ad.right.as_ref().expect("tracked")).reduce_mod(m);
        let s = ad.rank();
        let summand_orders: Vec<BigInt> = ad.pivots.iter().map(|g| &modulus / g).collect();
        let summand_gens: Vec<Vec<BigInt>> = (0..s).map(|t| av.column(t)).collect();

        let mut partial = QuotientPresentation {
            modulus: m,
            dim,
            structure: AbGroupStructure::trivial(),
            amb_left,
            amb_pivots: ad.pivots.clone(),
            rel_left: IntMatrix::identity(s),
            factors: Vec::new(),
        };

        // Relations: images of the sub generators plus the summand orders.
        let mut rel_cols = Vec::with_capacity(sub_gens.cols + s);
        for j in 0..sub_gens.cols {
            let coords = partial
                .summand_coordinates(&sub_gens.column(j))
                .ok_or(LinalgError::NotInSpan { column: j })?;
            rel_cols.push(coords);
        }
        for (t, o) in summand_orders.iter().enumerate() {
            let mut e = vec![BigInt::zero(); s];
            e[t] = o.clone();
            rel_cols.push(e);
        }
        let rel = IntMatrix::from_columns(s, &rel_cols);
        let rd = diagonalize_mod(
            &rel,
            m,
            Track {
                left: true,
                left_inv: true,
                ..Track::default()
            },
        );
        let rel_left = rd.left.expect("tracked");
        let rel_left_inv = rd.left_inv.expect("tracked");

        // Cyclic summands of the quotient before normalization.
        let mut cyclic: Vec<(u64, Vec<BigInt>)> = Vec::new();
        for i in 0..s {
            let order = rd.pivots.get(i).cloned().unwrap_or_else(|| modulus.clone());
            let order = order.to_u64().expect("order divides a u64 modulus");
            // ambient generator = Σ_t (L2^{-1})_{t,i} * summand_gen_t
            let mut g = vec![BigInt::zero(); dim];
            for (t, sg) in summand_gens.iter().enumerate() {
                let k = rel_left_inv.get(t, i);
                if k.is_zero() {
                    continue;
                }
                for (acc, x) in g.iter_mut().zip(sg) {
                    *acc += k * x;
                }
            }
            for x in g.iter_mut() {
                *x = x.mod_floor(&modulus);
            }
            cyclic.push((order, g));
        }

        let parts: Vec<Vec<(u64, u32)>> = cyclic.iter().map(|(o, _)| factor_u64(*o)).collect();
        let chain = assemble_invariant_factors(&parts);
        let mut factors = Vec::with_capacity(chain.len());
        for inv in chain {
            let mut generator = vec![BigInt::zero(); dim];
            let mut coord_parts = Vec::new();
            for comp in &inv.components {
                let (order_i, gen_i) = &cyclic[comp.summand];
                let cofactor = order_i / comp.prime_power;
                for (acc, x) in generator.iter_mut().zip(gen_i) {
                    *acc += BigInt::from(cofactor) * x;
                }
                // c_p = w * cofactor^{-1} mod p^k, lifted by CRT into Z/order.
                let pk = BigInt::from(comp.prime_power);
                let cof_inv =
                    mod_inverse(&BigInt::from(cofactor), &pk).unwrap_or_else(BigInt::zero);
                let rest = BigInt::from(inv.order / comp.prime_power);
                let rest_inv = mod_inverse(&rest, &pk).unwrap_or_else(BigInt::zero);
                let coeff = (rest * rest_inv * cof_inv).mod_floor(&BigInt::from(inv.order));
                coord_parts.push((comp.summand, coeff));
            }
            for x in generator.iter_mut() {
                *x = x.mod_floor(&modulus);
            }
            factors.push(Factor {
                order: inv.order,
                generator,
                parts: coord_parts,
            });
        }

        partial.structure = AbGroupStructure {
            factors: factors.iter().map(|f| f.order).collect(),
        };
        partial.rel_left = rel_left;
        partial.factors = factors;
        Ok(partial)
    }

    pub fn structure(&self) -> &AbGroupStructure {
        &self.structure
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// One ambient vector per invariant factor, in the order of `structure()`.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.factors.iter().map(|f| f.generator.clone()).collect()
    }

    /// Coordinates of `x` in the invariant-factor basis (entry `i` lives in `Z/d_i`),
    /// or `None` if `x` is not in the ambient span.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.modulus == 1 {
            return Some(Vec::new());
        }
        let y = self.summand_coordinates(x)?;
        let modulus = BigInt::from(self.modulus);
        let w: Vec<BigInt> = self
            .rel_left
            .mul_vec(&y)
            .into_iter()
            .map(|v| v.mod_floor(&modulus))
            .collect();
        Some(
            self.factors
                .iter()
                .map(|f| {
                    let order = BigInt::from(f.order);
                    let mut c = BigInt::zero();
                    for (i, k) in &f.parts {
                        c += k * &w[*i];
                    }
                    c.mod_floor(&order)
                })
                .collect(),
        )
    }

    /// Coordinates in `⊕ Z/(m/g_t)`, the diagonal model of `span(amb)`.
    fn summand_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.dim {
            return None;
        }
        let modulus = BigInt::from(self.modulus);
        let y = self.amb_left.mul_vec(x);
        let mut out = Vec::with_capacity(self.amb_pivots.len());
        for (t, v) in y.into_iter().enumerate() {
            let v = v.mod_floor(&modulus);
            match self.amb_pivots.get(t) {
                Some(g) => {
                    if !v.is_multiple_of(g) {
                        return None;
                    }
                    let order = &modulus / g;
                    out.push((v / g).mod_floor(&order));
                }
                None => {
                    if !v.is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(out)
    }
}

struct PrimePowerComponent {
    summand: usize,
    prime_power: u64,
}

struct InvariantFactor {
    order: u64,
    components: Vec<PrimePowerComponent>,
}

/// Regroups prime-power parts of cyclic summands into a divisibility chain
/// (ascending). `parts[i]` is the factorization of summand `i`'s order.
fn assemble_invariant_factors(parts: &[Vec<(u64, u32)>]) -> Vec<InvariantFactor> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<(u64, usize)>> = BTreeMap::new();
    for (i, fac) in parts.iter().enumerate() {
        for &(p, k) in fac {
            by_prime.entry(p).or_default().push((p.pow(k), i));
        }
    }
    for list in by_prime.values_mut() {
        // largest first; stable on summand index for determinism
        list.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    }
    let count = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut chain: Vec<InvariantFactor> = (0..count)
        .map(|j| {
            let mut order = 1u64;
            let mut components = Vec::new();
            for list in by_prime.values() {
                if let Some(&(pk, i)) = list.get(j) {
                    order *= pk;
                    components.push(PrimePowerComponent {
                        summand: i,
                        prime_power: pk,
                    });
                }
            }
            InvariantFactor { order, components }
        })
        .collect();
    chain.reverse();
    chain
}

/// Trial-division factorization, ascending primes.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_two_by_two() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&m);
        assert_eq!(s.diagonal_entries(), big(&[2, 4]));
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal);
    }

    #[test]
    fn snf_zero_and_identity() {
        let z = IntMatrix::from_rows(&[vec![0]]);
        let s = snf(&z);
        assert_eq!(s.diagonal, z);
        assert_eq!(s.left, IntMatrix::identity(1));
        assert_eq!(s.right, IntMatrix::identity(1));

        let id = IntMatrix::identity(3);
        assert_eq!(snf(&id).diagonal, id);
    }

    #[test]
    fn snf_non_square_and_empty() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 10]]);
        let s = snf(&m);
        assert_eq!(s.diagonal_entries(), big(&[2]));
        let e = IntMatrix::zeros(0, 3);
        assert_eq!(snf(&e).diagonal.rows(), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_mod(&IntMatrix::from_rows(&[vec![2]]), 4).unwrap();
        assert_eq!(k.columns(), vec![big(&[2])]);

        let k = kernel_mod(&IntMatrix::zeros(2, 3), 7).unwrap();
        assert_eq!(k, IntMatrix::identity(3));

        let k = kernel_mod(&IntMatrix::identity(3), 5).unwrap();
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_structure(&IntMatrix::zeros(1, 0), &IntMatrix::identity(1), 4).unwrap();
        assert_eq!(q.factors(), &[4]);

        let sub = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let q = quotient_structure(&sub, &IntMatrix::identity(2), 4).unwrap();
        assert_eq!(q.factors(), &[2, 4]);

        for m in [1u64, 2, 6, 12] {
            let id = IntMatrix::identity(3);
            assert!(quotient_structure(&id, &id, m).unwrap().is_trivial());
        }
    }

    #[test]
    fn quotient_rejects_sub_outside_span() {
        let amb = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let sub = IntMatrix::from_rows(&[vec![1], vec![0]]);
        assert!(matches!(
            quotient_structure(&sub, &amb, 4),
            Err(LinalgError::NotInSpan { column: 0 })
        ));
    }

    #[test]
    fn mixed_modulus_normalizes_to_chain() {
        // (Z/6)^2 modulo <(2,0)> ≅ Z/2 ⊕ Z/6
        let sub = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let q = QuotientPresentation::new(&sub, &IntMatrix::identity(2), 6).unwrap();
        assert_eq!(q.structure().factors(), &[2, 6]);
        for (i, g) in q.generators().iter().enumerate() {
            let c = q.coordinates(g).unwrap();
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(cj.is_one(), i == j, "generator {i} coordinate {j}");
            }
        }
    }

    #[test]
    fn structure_normalization() {
        assert_eq!(
            AbGroupStructure::from_cyclic_orders(&[2, 3]).factors(),
            &[6]
        );
        assert_eq!(
            AbGroupStructure::from_cyclic_orders(&[4, 2, 1]).factors(),
            &[2, 4]
        );
        assert!(AbGroupStructure::from_cyclic_orders(&[1, 1]).is_trivial());
        assert!(AbGroupStructure::new(vec![2, 3]).is_err());
        assert_eq!(AbGroupStructure::cyclic(1), AbGroupStructure::trivial());
        assert_eq!(AbGroupStructure::cyclic(12).to_string(), "Z/12");
    }

    #[test]
    fn structure_json_uses_decimal_strings() {
        let s = AbGroupStructure::new(vec![2, 4]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"["2","4"]"#);
        let back: AbGroupStructure = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<AbGroupStructure>(r#"["4","2"]"#).is_err());
    }
}
