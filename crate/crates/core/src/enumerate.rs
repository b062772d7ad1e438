//! Exhaustive enumeration of HW-matrices and classification up to
//! simultaneous row/column permutation and per-column `g2 <-> g3` exchange.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result, Violation};
use crate::hwmatrix::{HWMatrix, MAX_DIM};

/// Largest dimension accepted by the enumerator.
pub const MAX_ENUM_DIM: usize = 9;

fn check_enum_dim(n: usize) -> Result<()> {
    if n % 2 == 0 {
        return Err(Violation::EvenDimension(n).into());
    }
    if !(3..=MAX_ENUM_DIM).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

/// `n! * 2^n`, the order of the equivalence group.
pub fn group_order(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

/// Off-diagonal masks for row `r`: every subset of `{0..n} \ {r}`.
fn row_candidates(n: usize, r: usize) -> Vec<u32> {
    (0..1u32 << (n - 1))
        .map(|t| {
            let low = t & ((1 << r) - 1);
            let high = (t >> r) << (r + 1);
            low | high
        })
        .collect()
}

/// Depth-first search over the off-diagonal cells of rows `1..n-1`.
///
/// A row is accepted only if every subset sum it completes contains `g1`, so
/// each emitted matrix is valid and each valid matrix is emitted once.
pub struct HwIter {
    n: usize,
    /// Allowed `g3` masks per free row.
    candidates: Vec<Vec<u32>>,
    level: usize,
    next_choice: Vec<usize>,
    /// `sums[k]` holds the `(p2, p3)` sums of all subsets of rows `0..k`.
    sums: Vec<Vec<(u32, u32)>>,
    rows: Vec<(u32, u32)>,
    done: bool,
}

impl HwIter {
    fn with_candidates(n: usize, candidates: Vec<Vec<u32>>) -> Self {
        let mut sums = vec![Vec::new(); n];
        sums[0].push((0, 0));
        HwIter {
            n,
            candidates,
            level: 0,
            next_choice: vec![0; n - 1],
            sums,
            rows: vec![(0, 0); n],
            done: false,
        }
    }

    fn all(n: usize) -> Self {
        Self::with_candidates(n, (0..n - 1).map(|r| row_candidates(n, r)).collect())
    }

    /// Only matrices whose first row is `(g1, g2, .., g2)` and whose `(2,1)`
    /// entry is `g2`. Every column-conjugation class has exactly one such member.
    fn normalized(n: usize) -> Self {
        let mut candidates: Vec<Vec<u32>> = (0..n - 1).map(|r| row_candidates(n, r)).collect();
        candidates[0] = vec![0];
        candidates[1].retain(|m| m & 1 == 0);
        Self::with_candidates(n, candidates)
    }
}

impl Iterator for HwIter {
    type Item = HWMatrix;

    fn next(&mut self) -> Option<HWMatrix> {
        if self.done {
            return None;
        }
        let n = self.n;
        let off_all = (1u32 << n) - 1;
        loop {
            let k = self.level;
            if self.next_choice[k] == self.candidates[k].len() {
                if k == 0 {
                    self.done = true;
                    return None;
                }
                self.level -= 1;
                continue;
            }
            let g3 = self.candidates[k][self.next_choice[k]];
            self.next_choice[k] += 1;
            let diag = 1u32 << k;
            let row = ((off_all & !diag & !g3) | diag, g3 | diag);
            let ok = self.sums[k].iter().all(|&(a, b)| (a ^ row.0) & (b ^ row.1) != 0);
            if !ok {
                continue;
            }
            self.rows[k] = row;
            if k == n - 2 {
                let total = self.sums[k].last().map_or(row, |&(a, b)| (a ^ row.0, b ^ row.1));
                // The last subset of `sums[k]` is the full set of rows `0..k`.
                self.rows[n - 1] = total;
                return Some(HWMatrix::from_masks(n, &self.rows));
            }
            let (lo, hi) = self.sums.split_at_mut(k + 1);
            let next = &mut hi[0];
            next.clear();
            next.extend_from_slice(&lo[k]);
            next.extend(lo[k].iter().map(|&(a, b)| (a ^ row.0, b ^ row.1)));
            self.level += 1;
            self.next_choice[k + 1] = 0;
        }
    }
}

/// Every HW-matrix of dimension `n`, each exactly once, in a fixed order.
pub fn enumerate_hw(n: usize) -> Result<HwIter> {
    check_enum_dim(n)?;
    Ok(HwIter::all(n))
}

/// One representative per column-conjugation class: first row `(g1, g2, .., g2)`
/// and `A[2][1] = g2`. There are exactly `count / 2^n` of them.
pub fn enumerate_normalized(n: usize) -> Result<HwIter> {
    check_enum_dim(n)?;
    Ok(HwIter::normalized(n))
}

/// Orbit representative under the equivalence group.
///
/// The encoding lists the off-diagonal entries in shell order: for
/// `k = 1..n-1`, first `(k, 0..k)` then `(0..k, k)`, one bit each (`g2 = 0`,
/// `g3 = 1`). The canonical form is the least encoding over the orbit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

fn code_len(n: usize) -> u32 {
    (n * (n - 1)) as u32
}

/// Shell-order positions of the off-diagonal cells.
fn shell_order(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|k| (0..k).map(move |c| (k, c)).chain((0..k).map(move |r| (r, k))))
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn code(&self) -> u128 {
        self.code
    }

    /// The digit string over `{2, 3}` in shell order.
    pub fn digits(&self) -> String {
        let len = code_len(self.n());
        (0..len).map(|i| if self.code >> (len - 1 - i) & 1 == 1 { '3' } else { '2' }).collect()
    }

    /// The representative matrix itself.
    pub fn matrix(&self) -> HWMatrix {
        let n = self.n();
        let len = code_len(n);
        let mut g3 = [0u32; MAX_DIM];
        for (i, (r, c)) in shell_order(n).enumerate() {
            if self.code >> (len - 1 - i as u32) & 1 == 1 {
                g3[r] |= 1 << c;
            }
        }
        let all = (1u32 << n) - 1;
        let rows: Vec<(u32, u32)> = (0..n).map(|r| ((all & !g3[r]), g3[r] | 1 << r)).collect();
        HWMatrix::from_masks(n, &rows)
    }

    /// Encode an explicit matrix (no minimization).
    pub fn encode(a: &HWMatrix) -> CanonicalForm {
        let n = a.n();
        let code = shell_order(n).fold(0u128, |acc, (r, c)| acc << 1 | (a.g3_mask(r) >> c & 1) as u128);
        CanonicalForm { n: n as u8, code }
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(n={}, {})", self.n, self.digits())
    }
}

struct CanonSearch {
    n: usize,
    total: u32,
    g3: [u32; MAX_DIM],
    perm: [usize; MAX_DIM],
    used: u32,
    best: Option<u128>,
    ties: u64,
}

impl CanonSearch {
    /// Bit of the normalized image at new position `(r, c)`, `r != c`.
    #[inline]
    fn bit(&self, r: usize, c: usize) -> u128 {
        let b = |r: usize, c: usize| self.g3[self.perm[r]] >> self.perm[c] & 1;
        let v = if c == 0 { b(r, 0) ^ b(1, 0) } else { b(r, c) ^ b(0, c) };
        v as u128
    }

    fn dfs(&mut self, k: usize, cur: u128) {
        for v in 0..self.n {
            if self.used >> v & 1 == 1 {
                continue;
            }
            self.perm[k] = v;
            let mut next = cur;
            for c in 0..k {
                next = next << 1 | self.bit(k, c);
            }
            for r in 0..k {
                next = next << 1 | self.bit(r, k);
            }
            let len = (k * (k + 1)) as u32;
            if let Some(best) = self.best {
                let prefix = best >> (self.total - len);
                if next > prefix {
                    continue;
                }
            }
            if k + 1 == self.n {
                match self.best {
                    Some(best) if best == next => self.ties += 1,
                    _ => {
                        self.best = Some(next);
                        self.ties = 1;
                    }
                }
                continue;
            }
            self.used |= 1 << v;
            self.dfs(k + 1, next);
            self.used &= !(1 << v);
        }
    }
}

/// Canonical form and stabilizer order of `a`.
///
/// For a fixed relabeling the column exchanges are forced: each column is
/// flipped so that its first cell in shell order reads `g2`. The search then
/// runs over relabelings only, pruning any prefix already larger than the best
/// complete encoding seen. Relabelings that tie with the minimum are exactly
/// the group elements mapping `a` onto its canonical form, so their number is
/// the stabilizer order.
pub fn canonical_with_stabilizer(a: &HWMatrix) -> (CanonicalForm, u64) {
    let n = a.n();
    let mut g3 = [0u32; MAX_DIM];
    for (r, m) in g3.iter_mut().enumerate().take(n) {
        *m = a.g3_mask(r);
    }
    let mut s = CanonSearch { n, total: code_len(n), g3, perm: [0; MAX_DIM], used: 0, best: None, ties: 0 };
    s.dfs(0, 0);
    (CanonicalForm { n: n as u8, code: s.best.expect("nonempty search") }, s.ties)
}

pub fn canonical_form(a: &HWMatrix) -> CanonicalForm {
    canonical_with_stabilizer(a).0
}

/// Size of the orbit of `a` under the equivalence group.
pub fn orbit_size(a: &HWMatrix) -> u64 {
    group_order(a.n()) / canonical_with_stabilizer(a).1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogClass {
    pub canonical: CanonicalForm,
    pub orbit_size: u64,
}

/// All equivalence classes in one dimension, sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub n: usize,
    /// Number of HW-matrices of dimension `n` before symmetry reduction.
    pub total_count: u64,
    pub classes: Vec<CatalogClass>,
}

impl Catalog {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<HWMatrix> {
        self.classes.iter().map(|c| c.canonical.matrix()).collect()
    }

    /// Index of the class containing `a`, if any.
    pub fn find(&self, a: &HWMatrix) -> Option<usize> {
        let f = canonical_form(a);
        self.classes.binary_search_by(|c| c.canonical.cmp(&f)).ok()
    }
}

/// Enumerate and classify all HW-matrices of dimension `n`.
///
/// Only column-normalized matrices are canonicalized; the raw count is that
/// number times `2^n`, and the orbit sizes must add up to it.
pub fn classify(n: usize) -> Result<Catalog> {
    let normalized: Vec<HWMatrix> = enumerate_normalized(n)?.collect();
    let forms: Vec<(CanonicalForm, u64)> = normalized.par_iter().map(canonical_with_stabilizer).collect();
    let mut classes: BTreeMap<CanonicalForm, u64> = BTreeMap::new();
    for (f, stab) in forms {
        let prev = classes.insert(f, stab);
        debug_assert!(prev.is_none_or(|p| p == stab));
    }
    let order = group_order(n);
    let classes: Vec<CatalogClass> =
        classes.into_iter().map(|(canonical, stab)| CatalogClass { canonical, orbit_size: order / stab }).collect();
    let total_count = (normalized.len() as u64) << n;
    let orbit_total: u64 = classes.iter().map(|c| c.orbit_size).sum();
    assert_eq!(orbit_total, total_count, "orbit sizes do not add up to the raw count");
    Ok(Catalog { n, total_count, classes })
}
