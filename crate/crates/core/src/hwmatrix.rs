//! HW-matrices: square matrices over the dictionary whose rows are the
//! holonomy generators of an oriented Hantzsche-Wendt manifold.
//!
//! Row `i` records how the `i`-th diagonal generator acts on each circle
//! factor of the torus. Off the diagonal every entry is a reflection (`g2` or
//! `g3`), the diagonal is the half-turn `g1`, and the last row is the sum of
//! the others. The action is free exactly when every proper nonempty row sum
//! contains a `g1`.

use std::fmt;

use crate::dict::DictElem;
use crate::error::{Error, Result, Violation};
use crate::f2::F2Matrix;

/// Largest supported dimension.
pub const MAX_DIM: usize = 11;

/// A subset of `{1..n}`, stored 0-based as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubsetN {
    n: u8,
    mask: u32,
}

impl SubsetN {
    pub fn new(n: usize, mask: u32) -> Self {
        assert!(n <= 31, "subset universe {n} too large");
        assert_eq!(mask >> n, 0, "mask exceeds {{1..{n}}}");
        SubsetN { n: n as u8, mask }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn full(n: usize) -> Self {
        Self::new(n, (1 << n) - 1)
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        Self::new(n, 1 << i)
    }

    /// From 1-based indices.
    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mask = indices.iter().fold(0u32, |m, &i| {
            assert!((1..=n).contains(&i), "index {i} not in 1..={n}");
            m | 1 << (i - 1)
        });
        Self::new(n, mask)
    }

    /// Every subset of `{1..n}`, by increasing mask.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetN> {
        (0..1u32 << n).map(move |m| SubsetN::new(n, m))
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// `|U|`: the cardinality mod 2.
    pub fn parity(self) -> bool {
        self.mask.count_ones() & 1 == 1
    }

    pub fn contains(self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn complement(self) -> Self {
        Self::new(self.n(), !self.mask & ((1 << self.n) - 1))
    }

    pub fn intersect(self, other: Self) -> Self {
        Self::new(self.n(), self.mask & other.mask)
    }

    pub fn union(self, other: Self) -> Self {
        Self::new(self.n(), self.mask | other.mask)
    }

    /// Symmetric difference, the addition of the subset algebra.
    pub fn sym_diff(self, other: Self) -> Self {
        Self::new(self.n(), self.mask ^ other.mask)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// 0-based members.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..self.n()).filter(move |&i| self.contains(i))
    }

    /// 1-based members.
    pub fn indices(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for SubsetN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A holonomy generator `(B_i, b_i)`: `B_i` has its single `+1` at
/// coordinate `index` (1-based), `b_i` has entries in `{0, 1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineGen {
    pub index: usize,
    /// `true` means a translation by one half in that coordinate.
    pub shifts: Vec<bool>,
}

/// Which of the two dictionary projections to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    P2,
    P3,
}

impl Projection {
    pub fn apply(self, g: DictElem) -> bool {
        match self {
            Projection::P2 => g.p2(),
            Projection::P3 => g.p3(),
        }
    }
}

/// A validated HW-matrix. All `n` rows are stored.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HWMatrix {
    n: u8,
    /// Bit `c` of `p2[r]` is `p2(A[r][c])`; likewise for `p3`.
    p2: [u16; MAX_DIM],
    p3: [u16; MAX_DIM],
}

fn check_dimension(n: usize) -> std::result::Result<(), Violation> {
    if n % 2 == 0 {
        return Err(Violation::EvenDimension(n));
    }
    if !(3..=MAX_DIM).contains(&n) {
        return Err(Violation::DimensionOutOfRange(n));
    }
    Ok(())
}

/// First torsion witness among nonempty subsets of the given rows, if any.
///
/// Rows are `(p2, p3)` masks; a subset sum contains `g1` iff its two masks
/// intersect. Subsets are walked in Gray-code order.
pub(crate) fn torsion_witness(rows: &[(u32, u32)]) -> Option<u32> {
    let (mut s2, mut s3, mut x) = (0u32, 0u32, 0u32);
    for i in 1u32..1 << rows.len() {
        let flip = i.trailing_zeros() as usize;
        s2 ^= rows[flip].0;
        s3 ^= rows[flip].1;
        x ^= 1 << flip;
        if s2 & s3 == 0 {
            return Some(x);
        }
    }
    None
}

/// Check a candidate matrix against the HW-matrix definition.
///
/// Accepts `n` rows, or `n - 1` rows when the last row is to be completed.
/// Clauses are checked in order: dimension, shape of the first `n - 1` rows,
/// torsion-freeness over nonempty subsets of those rows, then the last row.
pub fn validate(rows: &[Vec<DictElem>]) -> std::result::Result<(), Violation> {
    HWMatrix::build(rows).map(|_| ())
}

impl HWMatrix {
    fn build(rows: &[Vec<DictElem>]) -> std::result::Result<HWMatrix, Violation> {
        let n = rows.first().map_or(0, |r| r.len());
        if n == 0 || rows.iter().any(|r| r.len() != n) || !(rows.len() == n || rows.len() + 1 == n) {
            return Err(Violation::NotSquare { rows: rows.len(), expected: n.max(1) });
        }
        check_dimension(n)?;
        let mut masks = Vec::with_capacity(n);
        for (r, row) in rows.iter().take(n - 1).enumerate() {
            let (mut p2, mut p3) = (0u32, 0u32);
            for (c, &g) in row.iter().enumerate() {
                if r == c && g != DictElem::G1 {
                    return Err(Violation::Diagonal { row: r + 1 });
                }
                if r != c && g != DictElem::G2 && g != DictElem::G3 {
                    return Err(Violation::OffDiagonal { row: r + 1, col: c + 1 });
                }
                p2 |= (g.p2() as u32) << c;
                p3 |= (g.p3() as u32) << c;
            }
            masks.push((p2, p3));
        }
        if let Some(x) = torsion_witness(&masks) {
            return Err(Violation::TorsionFree(SubsetN::new(n, x)));
        }
        let last = masks.iter().fold((0, 0), |(a, b), &(x, y)| (a ^ x, b ^ y));
        if rows.len() == n {
            let given = rows[n - 1].iter().enumerate().fold((0u32, 0u32), |(a, b), (c, g)| {
                (a | (g.p2() as u32) << c, b | (g.p3() as u32) << c)
            });
            if given != last {
                return Err(Violation::LastRow);
            }
        }
        masks.push(last);
        Ok(Self::from_masks(n, &masks))
    }

    pub(crate) fn from_masks(n: usize, rows: &[(u32, u32)]) -> HWMatrix {
        debug_assert_eq!(rows.len(), n);
        let mut a = HWMatrix { n: n as u8, p2: [0; MAX_DIM], p3: [0; MAX_DIM] };
        for (r, &(x, y)) in rows.iter().enumerate() {
            a.p2[r] = x as u16;
            a.p3[r] = y as u16;
        }
        a
    }

    /// Build from `n` or `n - 1` rows; see [`validate`].
    pub fn from_rows(rows: &[Vec<DictElem>]) -> Result<HWMatrix> {
        Ok(Self::build(rows)?)
    }

    /// Build from integer rows with entries `0..=3`.
    pub fn from_index_rows(rows: &[Vec<u8>]) -> Result<HWMatrix> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&i| DictElem::from_index(i).ok_or_else(|| Error::Format(format!("entry {i} not in 0..=3"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }

    /// The matrix of the group generated by `n - 1` diagonal generators.
    ///
    /// Generator indices must be exactly `1..n-1` (any order); the last row is
    /// the product of all generators.
    pub fn from_generators(n: usize, gens: &[AffineGen]) -> Result<HWMatrix> {
        check_dimension(n)?;
        if gens.len() != n - 1 {
            return Err(Error::Generators(format!("expected {} generators, got {}", n - 1, gens.len())));
        }
        let mut sorted: Vec<&AffineGen> = gens.iter().collect();
        sorted.sort_by_key(|g| g.index);
        let mut rows = Vec::with_capacity(n - 1);
        for (k, g) in sorted.iter().enumerate() {
            if g.index != k + 1 {
                return Err(Error::Generators(format!("generator indices must be 1..={}", n - 1)));
            }
            if g.shifts.len() != n {
                return Err(Error::Generators(format!("generator {} has {} shifts", g.index, g.shifts.len())));
            }
            rows.push((0..n).map(|s| DictElem::from_affine(s != k, g.shifts[s])).collect());
        }
        Self::from_rows(&rows)
    }

    /// Generators for rows `1..n-1`.
    pub fn to_generators(&self) -> Vec<AffineGen> {
        (0..self.n() - 1)
            .map(|r| AffineGen {
                index: r + 1,
                shifts: (0..self.n()).map(|c| self.entry(r, c).to_affine().1).collect(),
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Entry at 0-based `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> DictElem {
        DictElem::from_bits(self.p2[r] >> c & 1 == 1, self.p3[r] >> c & 1 == 1)
    }

    pub fn row(&self, r: usize) -> Vec<DictElem> {
        (0..self.n()).map(|c| self.entry(r, c)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<DictElem>> {
        (0..self.n()).map(|r| self.row(r)).collect()
    }

    pub fn index_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n()).map(|r| self.row(r).iter().map(|g| g.index()).collect()).collect()
    }

    /// `(p2, p3)` column masks of row `r`.
    pub fn masks(&self, r: usize) -> (u32, u32) {
        (self.p2[r] as u32, self.p3[r] as u32)
    }

    /// Off-diagonal `g3` positions of row `r` as a mask.
    pub(crate) fn g3_mask(&self, r: usize) -> u32 {
        (self.p3[r] & !self.p2[r]) as u32
    }

    fn sum_masks(&self, x: SubsetN) -> (u32, u32) {
        assert_eq!(x.n(), self.n(), "subset universe differs from dimension");
        x.iter().fold((0, 0), |(a, b), r| (a ^ self.p2[r] as u32, b ^ self.p3[r] as u32))
    }

    /// `sum_{i in X} A_i`.
    pub fn row_sum(&self, x: SubsetN) -> Vec<DictElem> {
        let (a, b) = self.sum_masks(x);
        (0..self.n()).map(|c| DictElem::from_bits(a >> c & 1 == 1, b >> c & 1 == 1)).collect()
    }

    /// `J(U)`: positions where the row sum over `U` equals `g1`.
    pub fn j(&self, u: SubsetN) -> SubsetN {
        let (a, b) = self.sum_masks(u);
        SubsetN::new(self.n(), a & b)
    }

    /// `sigma^S_a = sum_{i in S} A[a][i]` for 0-based row `a`.
    pub fn sigma(&self, s: SubsetN, a: usize) -> DictElem {
        assert_eq!(s.n(), self.n(), "subset universe differs from dimension");
        let m = s.mask();
        DictElem::from_bits(
            (self.p2[a] as u32 & m).count_ones() & 1 == 1,
            (self.p3[a] as u32 & m).count_ones() & 1 == 1,
        )
    }

    /// `p^(alpha)(A)`: column `i` is `p^(alpha_i)` applied to column `i`.
    ///
    /// `alpha` holds `2` or `3` per column.
    pub fn p_alpha(&self, alpha: &[u8]) -> Result<F2Matrix> {
        if alpha.len() != self.n() {
            return Err(Error::DimensionMismatch(alpha.len(), self.n()));
        }
        let mut three = 0u32;
        for (i, &k) in alpha.iter().enumerate() {
            match k {
                2 => {}
                3 => three |= 1 << i,
                _ => return Err(Error::Format(format!("projection index {k} not in {{2,3}}"))),
            }
        }
        Ok(self.p_alpha_mask(three))
    }

    /// As [`HWMatrix::p_alpha`] with `alpha` given as the mask of columns using `p3`.
    pub fn p_alpha_mask(&self, three: u32) -> F2Matrix {
        let rows: Vec<u64> = (0..self.n())
            .map(|r| ((self.p2[r] as u32 & !three) | (self.p3[r] as u32 & three)) as u64)
            .collect();
        F2Matrix::from_bit_rows(self.n(), &rows)
    }

    /// `P_sigma A P_sigma^{-1}`: old index `i` becomes `perm[i]` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Result<HWMatrix> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::DimensionMismatch(perm.len(), n));
        }
        let mut seen = 0u32;
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(Error::Format(format!("{perm:?} is not a permutation of 0..{n}")));
            }
            seen |= 1 << p;
        }
        let mut out = HWMatrix { n: self.n, p2: [0; MAX_DIM], p3: [0; MAX_DIM] };
        for r in 0..n {
            for c in 0..n {
                out.p2[perm[r]] |= ((self.p2[r] >> c & 1) as u16) << perm[c];
                out.p3[perm[r]] |= ((self.p3[r] >> c & 1) as u16) << perm[c];
            }
        }
        Ok(out)
    }

    /// Exchange `g2 <-> g3` in every column of `mask`.
    pub fn conjugate_columns(&self, mask: SubsetN) -> HWMatrix {
        assert_eq!(mask.n(), self.n(), "mask universe differs from dimension");
        let m = mask.mask() as u16;
        let mut out = *self;
        for r in 0..self.n() {
            let (a, b) = (self.p2[r], self.p3[r]);
            out.p2[r] = (a & !m) | (b & m);
            out.p3[r] = (b & !m) | (a & m);
        }
        out
    }

    /// The square sub-block on 0-based `indices` (rows and columns alike).
    pub fn block(&self, indices: &[usize]) -> Vec<Vec<DictElem>> {
        indices.iter().map(|&r| indices.iter().map(|&c| self.entry(r, c)).collect()).collect()
    }
}

/// Connected components of the graph of `proj(block)`.
///
/// Vertices are 0-based block positions, `i ~ j` when the projected entry is
/// 1. Components are sorted by least element.
pub fn components(block: &[Vec<DictElem>], proj: Projection) -> Result<Vec<Vec<usize>>> {
    let m = block.len();
    for (i, row) in block.iter().enumerate() {
        if row.len() != m {
            return Err(Error::DimensionMismatch(row.len(), m));
        }
        for j in 0..i {
            if block[i][j] != block[j][i] {
                return Err(Error::Format(format!("block is not symmetric at ({},{})", i + 1, j + 1)));
            }
        }
    }
    let mut comp = vec![usize::MAX; m];
    let mut out = Vec::new();
    for start in 0..m {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let v = members[k];
            for w in 0..m {
                if w != v && comp[w] == usize::MAX && proj.apply(block[v][w]) {
                    comp[w] = id;
                    members.push(w);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out)
}

/// `components(block, P2)`.
pub fn components2(block: &[Vec<DictElem>]) -> Result<Vec<Vec<usize>>> {
    components(block, Projection::P2)
}

/// `components(block, P3)`.
pub fn components3(block: &[Vec<DictElem>]) -> Result<Vec<Vec<usize>>> {
    components(block, Projection::P3)
}

impl fmt::Debug for HWMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HWMatrix{:?}", self.index_rows())
    }
}

impl fmt::Display for HWMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.index_rows() {
            let s: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Worked examples used across the test suites.
pub mod examples {
    use super::*;

    /// The 3-dimensional HW-matrix.
    pub fn dim3() -> HWMatrix {
        HWMatrix::from_index_rows(&[vec![1, 3, 2], vec![2, 1, 3], vec![3, 2, 1]]).unwrap()
    }

    fn gens(n: usize, shifts: &[[u8; 5]]) -> Vec<AffineGen> {
        shifts
            .iter()
            .enumerate()
            .map(|(i, s)| AffineGen { index: i + 1, shifts: s[..n].iter().map(|&b| b == 1).collect() })
            .collect()
    }

    /// Generators of the first 5-dimensional group of the classical pair.
    pub fn dim5_a_generators() -> Vec<AffineGen> {
        gens(5, &[[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1]])
    }

    /// Generators of the second 5-dimensional group.
    pub fn dim5_b_generators() -> Vec<AffineGen> {
        gens(5, &[[1, 0, 1, 1, 0], [0, 1, 1, 1, 1], [1, 1, 1, 1, 1], [1, 0, 1, 1, 1]])
    }

    pub fn dim5_a() -> HWMatrix {
        HWMatrix::from_generators(5, &dim5_a_generators()).unwrap()
    }

    pub fn dim5_b() -> HWMatrix {
        HWMatrix::from_generators(5, &dim5_b_generators()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn d(rows: &[&[u8]]) -> Vec<Vec<DictElem>> {
        rows.iter().map(|r| r.iter().map(|&i| DictElem::from_index(i).unwrap()).collect()).collect()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate(&d(&[&[1, 3, 2], &[2, 1, 3], &[3, 2, 1]])), Ok(()));
        let g1 = d(&[&[1, 3, 2, 2, 2], &[2, 1, 3, 2, 2], &[2, 2, 1, 3, 2], &[2, 2, 2, 1, 3], &[3, 2, 2, 2, 1]]);
        assert_eq!(validate(&g1), Ok(()));
        let bad = validate(&d(&[&[1, 2, 2], &[2, 1, 2], &[2, 2, 1]])).unwrap_err();
        assert_eq!(bad, Violation::TorsionFree(SubsetN::from_indices(3, &[1, 2])));
        assert_eq!(bad.to_string(), "torsion-free subset {1,2}");
    }

    #[test]
    fn validate_shape_errors() {
        assert_eq!(validate(&d(&[&[1, 3], &[3, 1]])), Err(Violation::EvenDimension(2)));
        assert!(matches!(validate(&d(&[&[1, 3, 2]])), Err(Violation::NotSquare { .. })));
        assert_eq!(validate(&d(&[&[1, 0, 2], &[2, 1, 3]])), Err(Violation::OffDiagonal { row: 1, col: 2 }));
        assert_eq!(validate(&d(&[&[2, 3, 2], &[2, 1, 3]])), Err(Violation::Diagonal { row: 1 }));
        assert_eq!(validate(&d(&[&[1, 3, 2], &[2, 1, 3], &[3, 3, 1]])), Err(Violation::LastRow));
        assert_eq!(validate(&d(&[&[1, 3, 2], &[2, 1, 3]])), Ok(()));
    }

    #[test]
    fn generators_round_trip() {
        let g1 = dim5_a();
        assert_eq!(g1.index_rows()[0], vec![1, 3, 2, 2, 2]);
        assert_eq!(g1.index_rows()[4], vec![3, 2, 2, 2, 1]);
        assert_eq!(g1.to_generators(), dim5_a_generators());
        let g2 = dim5_b();
        assert_eq!(
            g2.index_rows()[..4],
            [vec![1, 2, 3, 3, 2], vec![2, 1, 3, 3, 3], vec![3, 3, 1, 3, 3], vec![3, 2, 3, 1, 3]]
        );
        assert_eq!(g2.to_generators(), dim5_b_generators());
        let gens = vec![
            AffineGen { index: 1, shifts: vec![true, true, false] },
            AffineGen { index: 2, shifts: vec![false, true, true] },
        ];
        let a = HWMatrix::from_generators(3, &gens).unwrap();
        assert_eq!(a, dim3());
        assert_eq!(a.to_generators(), gens);
    }

    #[test]
    fn generators_with_torsion_rejected() {
        let gens = vec![
            AffineGen { index: 1, shifts: vec![true, false, false] },
            AffineGen { index: 2, shifts: vec![false, true, false] },
        ];
        assert!(matches!(HWMatrix::from_generators(3, &gens), Err(Error::InvalidMatrix(Violation::TorsionFree(_)))));
        assert!(matches!(HWMatrix::from_generators(3, &gens[..1]), Err(Error::Generators(_))));
    }

    #[test]
    fn row_sums() {
        let a = dim3();
        assert_eq!(a.row_sum(SubsetN::singleton(3, 1)), a.row(1));
        let s = a.row_sum(SubsetN::from_indices(3, &[1, 2]));
        assert_eq!(s, vec![DictElem::G3, DictElem::G2, DictElem::G1]);
        assert_eq!(a.row_sum(SubsetN::full(3)), vec![DictElem::G0; 3]);
        assert_eq!(dim5_b().row_sum(SubsetN::full(5)), vec![DictElem::G0; 5]);
    }

    #[test]
    fn j_examples() {
        let a = dim3();
        assert_eq!(a.j(SubsetN::singleton(3, 0)), SubsetN::singleton(3, 0));
        assert_eq!(a.j(SubsetN::from_indices(3, &[1, 2])), SubsetN::from_indices(3, &[3]));
        assert_eq!(a.j(SubsetN::from_indices(3, &[2, 3])), SubsetN::from_indices(3, &[1]));
    }

    #[test]
    fn sigma_examples() {
        let a = dim3();
        assert_eq!(a.sigma(SubsetN::from_indices(3, &[3]), 0), DictElem::G2);
        assert_eq!(a.sigma(SubsetN::from_indices(3, &[2, 3]), 1), DictElem::G2);
        assert_eq!(a.sigma(SubsetN::from_indices(3, &[1, 2]), 0), DictElem::G2);
    }

    #[test]
    fn p_alpha_examples() {
        let a = dim3();
        let m = a.p_alpha(&[2, 2, 2]).unwrap();
        assert_eq!(m, F2Matrix::from_bit_rows(3, &[0b101, 0b011, 0b110]));
        let m = a.p_alpha(&[2, 3, 2]).unwrap();
        assert_eq!(m, F2Matrix::from_bit_rows(3, &[0b111, 0b011, 0b100]));
        assert!(a.p_alpha(&[2, 4, 2]).is_err());
        assert!(a.p_alpha(&[2, 2]).is_err());
    }

    #[test]
    fn components_examples() {
        let b = d(&[&[1, 2], &[2, 1]]);
        assert_eq!(components2(&b).unwrap(), vec![vec![0, 1]]);
        let b = d(&[&[1, 3], &[3, 1]]);
        assert_eq!(components2(&b).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(components3(&b).unwrap(), vec![vec![0, 1]]);
        assert!(components2(&d(&[&[1, 2], &[3, 1]])).is_err());
    }

    #[test]
    fn equivalence_moves() {
        let a = dim3();
        assert_eq!(a.permute(&[0, 1, 2]).unwrap(), a);
        assert_eq!(a.conjugate_columns(SubsetN::empty(3)), a);
        let c = a.conjugate_columns(SubsetN::full(3));
        assert_eq!(c.index_rows(), vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]]);
        assert_eq!(validate(&c.rows()), Ok(()));
        assert!(a.permute(&[0, 0, 1]).is_err());
        let p = dim5_a().permute(&[4, 2, 0, 1, 3]).unwrap();
        assert_eq!(validate(&p.rows()), Ok(()));
    }
}
