//! Bit-packed linear algebra and degree-2 polynomial arithmetic over `F2`.

use std::fmt;
use std::ops::{Add, AddAssign};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported number of polynomial variables.
pub const MAX_VARS: usize = 16;

fn var_mask(m: usize) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// A linear form `sum_k c_k x_{k+1}` in `m` variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinForm {
    m: u8,
    bits: u32,
}

impl LinForm {
    pub fn new(m: usize, bits: u32) -> Self {
        assert!((1..=MAX_VARS).contains(&m), "variable count {m} out of range");
        assert_eq!(bits & !var_mask(m), 0, "coefficient outside the {m} variables");
        LinForm { m: m as u8, bits }
    }

    pub fn zero(m: usize) -> Self {
        Self::new(m, 0)
    }

    /// The variable `x_{k+1}`.
    pub fn var(m: usize, k: usize) -> Self {
        Self::new(m, 1 << k)
    }

    /// From 1-based variable indices; repeated indices cancel.
    pub fn from_indices(m: usize, indices: &[usize]) -> Result<Self> {
        if !(1..=MAX_VARS).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        let mut bits = 0;
        for &i in indices {
            if i == 0 || i > m {
                return Err(Error::Format(format!("variable index {i} not in 1..={m}")));
            }
            bits ^= 1 << (i - 1);
        }
        Ok(Self::new(m, bits))
    }

    pub fn m(self) -> usize {
        self.m as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn coeff(self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    /// 1-based indices of the variables present.
    pub fn indices(self) -> Vec<usize> {
        (0..self.m()).filter(|&k| self.coeff(k)).map(|k| k + 1).collect()
    }

    /// Value at the point whose coordinates are the bits of `x`.
    pub fn eval(self, x: u32) -> bool {
        (self.bits & x).count_ones() & 1 == 1
    }
}

impl Add for LinForm {
    type Output = LinForm;
    fn add(self, rhs: LinForm) -> LinForm {
        assert_eq!(self.m, rhs.m, "variable count mismatch");
        LinForm { m: self.m, bits: self.bits ^ rhs.bits }
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.indices().iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// A homogeneous quadratic polynomial in `m` variables.
///
/// Square monomials `x_i^2` are stored in their own slots; only evaluation
/// folds them to `x_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QuadPoly {
    m: u8,
    /// `rows[i]` bit `j` (for `j >= i`) is the coefficient of `x_{i+1} x_{j+1}`.
    rows: [u16; MAX_VARS],
}

impl QuadPoly {
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&m), "variable count {m} out of range");
        QuadPoly { m: m as u8, rows: [0; MAX_VARS] }
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Coefficient of `x_{i+1} x_{j+1}` (0-based, any order).
    pub fn coeff(&self, i: usize, j: usize) -> bool {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.rows[i] >> j & 1 == 1
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!(j < self.m(), "monomial outside the variables");
        self.rows[i] ^= 1 << j;
    }

    /// From 1-based `[i, j]` pairs; repeated monomials cancel.
    pub fn from_monomials(m: usize, monomials: &[[usize; 2]]) -> Result<Self> {
        if !(1..=MAX_VARS).contains(&m) {
            return Err(Error::UnsupportedDimension(m));
        }
        let mut q = Self::zero(m);
        for &[i, j] in monomials {
            if i == 0 || j == 0 || i > m || j > m {
                return Err(Error::Format(format!("monomial [{i},{j}] outside 1..={m}")));
            }
            q.toggle(i - 1, j - 1);
        }
        Ok(q)
    }

    /// 1-based `[i, j]` pairs with `i <= j`, sorted.
    pub fn monomials(&self) -> Vec<[usize; 2]> {
        let m = self.m();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i..m {
                if self.coeff(i, j) {
                    out.push([i + 1, j + 1]);
                }
            }
        }
        out
    }

    pub fn monomial_count(m: usize) -> usize {
        m * (m + 1) / 2
    }

    /// Coefficients as a bit vector over the monomial basis
    /// `x1^2, x1x2, .., x1xm, x2^2, ..`.
    pub fn to_words(&self) -> Vec<u64> {
        let m = self.m();
        let total = Self::monomial_count(m);
        let mut words = vec![0u64; total.div_ceil(64)];
        let mut idx = 0;
        for i in 0..m {
            for j in i..m {
                if self.coeff(i, j) {
                    words[idx / 64] |= 1 << (idx % 64);
                }
                idx += 1;
            }
        }
        debug_assert_eq!(idx, total);
        words
    }

    pub fn from_words(m: usize, words: &[u64]) -> Self {
        let mut q = Self::zero(m);
        let mut idx = 0;
        for i in 0..m {
            for j in i..m {
                if words[idx / 64] >> (idx % 64) & 1 == 1 {
                    q.toggle(i, j);
                }
                idx += 1;
            }
        }
        q
    }

    /// Value of the polynomial function at `x`, using `x_i^2 = x_i`.
    pub fn eval(&self, x: u32) -> bool {
        let mut acc = 0u32;
        for i in 0..self.m() {
            if x >> i & 1 == 1 {
                acc ^= (self.rows[i] as u32 & x).count_ones();
            }
        }
        acc & 1 == 1
    }

    /// Substitute `x_{k+1} -> images[k]`; all images must share a variable count.
    pub fn substitute(&self, images: &[LinForm]) -> QuadPoly {
        assert_eq!(images.len(), self.m(), "one image per variable");
        let target = images.first().map(|l| l.m()).unwrap_or(1);
        let mut out = QuadPoly::zero(target);
        for i in 0..self.m() {
            for j in i..self.m() {
                if self.coeff(i, j) {
                    out += lin_mul_unchecked(images[i], images[j]);
                }
            }
        }
        out
    }
}

impl Add for QuadPoly {
    type Output = QuadPoly;
    fn add(mut self, rhs: QuadPoly) -> QuadPoly {
        self += rhs;
        self
    }
}

impl AddAssign for QuadPoly {
    fn add_assign(&mut self, rhs: QuadPoly) {
        assert_eq!(self.m, rhs.m, "variable count mismatch");
        for (a, b) in self.rows.iter_mut().zip(rhs.rows) {
            *a ^= b;
        }
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mons = self.monomials();
        if mons.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = mons
            .iter()
            .map(|&[i, j]| if i == j { format!("x{i}^2") } else { format!("x{i}x{j}") })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

fn lin_mul_unchecked(a: LinForm, b: LinForm) -> QuadPoly {
    let m = a.m();
    let mut q = QuadPoly::zero(m);
    for i in 0..m {
        let upper = !((1u32 << (i + 1)) - 1);
        let mut row = 0u32;
        if a.coeff(i) {
            row ^= b.bits & upper;
        }
        if b.coeff(i) {
            row ^= a.bits & upper;
        }
        if a.coeff(i) && b.coeff(i) {
            row |= 1 << i;
        }
        q.rows[i] = row as u16;
    }
    q
}

/// The product of two linear forms.
pub fn lin_mul(a: LinForm, b: LinForm) -> Result<QuadPoly> {
    if a.m != b.m {
        return Err(Error::DimensionMismatch(a.m(), b.m()));
    }
    Ok(lin_mul_unchecked(a, b))
}

fn ordered_pair(a: LinForm, b: LinForm) -> (LinForm, LinForm) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Factor `q` as a product of two nonzero linear forms.
///
/// The pair is returned sorted. For each candidate first factor the second is
/// forced by the coefficients on the pivot variable, so the search is linear in
/// the number of linear forms. Unique factorization guarantees at most one
/// unordered pair; this is asserted.
pub fn quad_factor(q: &QuadPoly) -> Result<Option<(LinForm, LinForm)>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = q.m();
    let mut found: Option<(LinForm, LinForm)> = None;
    for xi in 1..=var_mask(m) {
        let k = xi.trailing_zeros() as usize;
        let eta_k = q.coeff(k, k);
        let mut eta = 0u32;
        for j in 0..m {
            let bit = if j == k { eta_k } else { q.coeff(j, k) ^ (xi >> j & 1 == 1 && eta_k) };
            if bit {
                eta |= 1 << j;
            }
        }
        if eta == 0 {
            continue;
        }
        let (a, b) = (LinForm::new(m, xi), LinForm::new(m, eta));
        if lin_mul_unchecked(a, b) == *q {
            let pair = ordered_pair(a, b);
            match found {
                None => found = Some(pair),
                Some(prev) => assert_eq!(prev, pair, "two distinct factorizations of {q}"),
            }
        }
    }
    Ok(found)
}

/// A dense bit matrix over `F2`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64).max(1);
        F2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Rows given as bit masks, bit `c` = column `c`; requires `cols <= 64`.
    pub fn from_bit_rows(cols: usize, rows: &[u64]) -> Self {
        assert!(cols <= 64);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, &bits) in rows.iter().enumerate() {
            assert!(cols == 64 || bits >> cols == 0, "row {r} wider than {cols}");
            m.data[r * m.stride] = bits;
        }
        m
    }

    pub fn from_word_rows(cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, words) in rows.iter().enumerate() {
            assert_eq!(words.len(), m.stride);
            m.data[r * m.stride..(r + 1) * m.stride].copy_from_slice(words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.stride + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Row `r` as a mask; requires `cols <= 64`.
    pub fn row_bits(&self, r: usize) -> u64 {
        assert!(self.cols <= 64);
        self.data[r * self.stride]
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|r| self.row_words(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & b != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Number of columns minus rank.
    pub fn defect(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn select_columns(&self, cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zeros(rows.len(), self.cols);
        for (k, &r) in rows.iter().enumerate() {
            out.data[k * out.stride..(k + 1) * out.stride].copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(self.cols, rhs.rows));
        }
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.stride, k * rhs.stride);
                    for w in 0..out.stride {
                        out.data[dst + w] ^= rhs.data[src + w];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse of a square matrix.
    pub fn inverse(&self) -> Result<F2Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = F2Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| a.get(r, c)).ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for r in 0..n {
                if r != c && a.get(r, c) {
                    a.xor_row_into(c, r);
                    inv.xor_row_into(c, r);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.data.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.stride {
            let v = self.data[src * self.stride + w];
            self.data[dst * self.stride + w] ^= v;
        }
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// A linear subspace of `F2^ambient`, kept as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Sorted by pivot; each pivot bit is clear in every other basis vector.
    basis: Vec<(usize, Vec<u64>)>,
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    dst.iter_mut().zip(src).for_each(|(a, b)| *a ^= b);
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn span<I: IntoIterator<Item = Vec<u64>>>(ambient: usize, vectors: I) -> Result<Self> {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    fn check(&self, v: &[u64]) -> Result<()> {
        let words = self.ambient.div_ceil(64).max(1);
        if v.len() != words {
            return Err(Error::DimensionMismatch(v.len() * 64, self.ambient));
        }
        if let Some(hi) = lowest_bit_above(v, self.ambient) {
            return Err(Error::DimensionMismatch(hi + 1, self.ambient));
        }
        Ok(())
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u64]) -> Result<Vec<u64>> {
        self.check(v)?;
        let mut v = v.to_vec();
        for (p, b) in &self.basis {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                xor_into(&mut v, b);
            }
        }
        Ok(v)
    }

    /// Add `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<u64>) -> Result<bool> {
        let v = self.reduce(&v)?;
        let Some(p) = lowest_bit(&v) else {
            return Ok(false);
        };
        for (_, b) in self.basis.iter_mut() {
            if b[p / 64] >> (p % 64) & 1 == 1 {
                xor_into(b, &v);
            }
        }
        let at = self.basis.partition_point(|(q, _)| *q < p);
        self.basis.insert(at, (p, v));
        Ok(true)
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&w| w == 0))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> impl Iterator<Item = &[u64]> {
        self.basis.iter().map(|(_, b)| b.as_slice())
    }

    /// All `2^dim` members, each exactly once, in Gray-code order from zero.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let words = self.ambient.div_ceil(64).max(1);
        let mut cur = vec![0u64; words];
        let total = 1u64 << self.dim();
        (0..total).map(move |i| {
            if i > 0 {
                let flip = i.trailing_zeros() as usize;
                xor_into(&mut cur, &self.basis[flip].1);
            }
            cur.clone()
        })
    }
}

fn lowest_bit_above(v: &[u64], ambient: usize) -> Option<usize> {
    (ambient..v.len() * 64).find(|&i| v[i / 64] >> (i % 64) & 1 == 1)
}

/// A pseudo-random invertible `m x m` matrix, deterministic in `seed`.
pub fn gl_random(m: usize, seed: u64) -> F2Matrix {
    assert!((1..=64).contains(&m), "matrix size {m} out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    loop {
        let rows: Vec<u64> = (0..m).map(|_| rng.gen::<u64>() & mask).collect();
        let g = F2Matrix::from_bit_rows(m, &rows);
        if g.rank() == m {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lf(m: usize, idx: &[usize]) -> LinForm {
        LinForm::from_indices(m, idx).unwrap()
    }

    fn qp(m: usize, mons: &[[usize; 2]]) -> QuadPoly {
        QuadPoly::from_monomials(m, mons).unwrap()
    }

    #[test]
    fn rank_and_defect() {
        let id = F2Matrix::identity(3);
        assert_eq!(id.rank(), 3);
        assert_eq!(id.defect(), 0);
        let m = F2Matrix::from_bit_rows(3, &[0b101, 0b011, 0b110]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.defect(), 1);
        let z = F2Matrix::zeros(2, 5);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.defect(), 5);
    }

    #[test]
    fn wide_rank() {
        let mut m = F2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 129, true);
        m.set(1, 3, true);
        m.set(2, 3, true);
        assert_eq!(m.rank(), 2);
        m.set(2, 70, true);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn lin_mul_examples() {
        assert_eq!(lin_mul(lf(2, &[1]), lf(2, &[2])).unwrap(), qp(2, &[[1, 2]]));
        assert_eq!(lin_mul(lf(2, &[1]), lf(2, &[1, 2])).unwrap(), qp(2, &[[1, 1], [1, 2]]));
        assert_eq!(
            lin_mul(lf(4, &[1, 2, 3, 4]), lf(4, &[1])).unwrap(),
            qp(4, &[[1, 1], [1, 2], [1, 3], [1, 4]])
        );
        assert!(matches!(lin_mul(lf(2, &[1]), lf(3, &[1])), Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn factor_examples() {
        let f = quad_factor(&qp(2, &[[1, 2]])).unwrap().unwrap();
        assert_eq!(f, (lf(2, &[1]), lf(2, &[2])));
        assert_eq!(quad_factor(&qp(2, &[[1, 1], [2, 2], [1, 2]])).unwrap(), None);
        let f = quad_factor(&qp(2, &[[1, 1], [1, 2]])).unwrap().unwrap();
        assert_eq!(f, (lf(2, &[1]), lf(2, &[1, 2])));
        assert!(matches!(quad_factor(&QuadPoly::zero(3)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn squares_factor() {
        let a = lf(4, &[1, 3]);
        let sq = lin_mul(a, a).unwrap();
        assert_eq!(sq, qp(4, &[[1, 1], [3, 3]]));
        assert_eq!(quad_factor(&sq).unwrap(), Some((a, a)));
    }

    #[test]
    fn words_roundtrip() {
        let q = qp(5, &[[1, 1], [2, 5], [5, 5], [3, 4]]);
        assert_eq!(QuadPoly::from_words(5, &q.to_words()), q);
        assert_eq!(q.to_words().len(), 1);
        assert_eq!(QuadPoly::zero(16).to_words().len(), 3);
    }

    #[test]
    fn eval_folds_squares() {
        let q = qp(2, &[[1, 1], [1, 2]]);
        // x1^2 + x1x2 at (1,0) -> 1, at (1,1) -> 0
        assert!(q.eval(0b01));
        assert!(!q.eval(0b11));
        assert!(!q.eval(0b10));
    }

    #[test]
    fn subspace_examples() {
        let s = Subspace::new(3);
        assert_eq!(s.dim(), 0);
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![vec![0]]);
        assert!(s.contains(&[0]).unwrap());
        assert!(!s.contains(&[1]).unwrap());

        let ts = [qp(2, &[[1, 1], [1, 2]]), qp(2, &[[2, 2], [1, 2]]), qp(2, &[[1, 2]])];
        let s = Subspace::span(3, ts.iter().map(|t| t.to_words())).unwrap();
        assert_eq!(s.dim(), 3);

        let s = Subspace::span(4, vec![vec![0b0011], vec![0b0110], vec![0b0101]]).unwrap();
        assert_eq!(s.dim(), 2);
        let mut els: Vec<_> = s.elements().collect();
        els.sort();
        assert_eq!(els, vec![vec![0], vec![0b0011], vec![0b0101], vec![0b0110]]);
        assert!(matches!(s.contains(&[0b10000]), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn gl_random_examples() {
        assert_eq!(gl_random(1, 7), F2Matrix::identity(1));
        let g = gl_random(4, 42);
        assert_eq!(g.rank(), 4);
        assert_eq!(g, gl_random(4, 42));
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv).unwrap(), F2Matrix::identity(4));
        assert_eq!(inv.mul(&g).unwrap(), F2Matrix::identity(4));
    }

    #[test]
    fn singular_inverse() {
        let m = F2Matrix::from_bit_rows(3, &[0b101, 0b011, 0b110]);
        assert!(matches!(m.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn substitution_matches_composition() {
        let g = gl_random(4, 3);
        let images: Vec<LinForm> = (0..4).map(|r| LinForm::new(4, g.row_bits(r) as u32)).collect();
        let (a, b) = (lf(4, &[1, 2]), lf(4, &[3]));
        let q = lin_mul(a, b).unwrap();
        let sub = |l: LinForm| {
            images.iter().enumerate().filter(|(k, _)| l.coeff(*k)).fold(LinForm::zero(4), |acc, (_, x)| acc + *x)
        };
        assert_eq!(q.substitute(&images), lin_mul(sub(a), sub(b)).unwrap());
    }
}
