//! Named property suites run over lists of HW-matrices.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{
    check_factorization_cases, check_lemma_b, check_lemma_c, eval_embedded, orientation_sum, squares_in_span,
    transgression, CheckReport,
};
use crate::dict::DictElem;
use crate::enumerate::Catalog;
use crate::error::{Error, Result};
use crate::f2::gl_random;
use crate::hwmatrix::{components2, components3, HWMatrix, SubsetN};
use crate::reconstruct::{dual_scan, invariant_of, rigidity_equal, scramble};

pub const SUITES: &[&str] = &[
    "prop2",
    "prop4",
    "lemma3",
    "lemma4",
    "lemma5",
    "no_squares",
    "lemmaB",
    "lemmaC",
    "factorization",
    "orientation",
    "bridge",
    "dual_scan",
    "roundtrip",
    "separation",
];

/// Witnesses kept per suite; the failure count is always exact.
const MAX_WITNESSES: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// GL scrambles per matrix in `roundtrip`.
    pub scrambles: usize,
    /// Pair cap for `separation`; all pairs are used when there are fewer.
    pub max_pairs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, scrambles: 100, max_pairs: usize::MAX }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub matrices: usize,
    pub checked: u64,
    pub failed: u64,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub stats: BTreeMap<String, u64>,
}

impl SuiteReport {
    /// Skipped suites count as passing.
    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        match &self.skipped {
            Some(why) => format!("{} n={}: skipped ({why})", self.suite, self.n),
            None => format!(
                "{} n={}: {} on {} matrices, {} checks, {} failures",
                self.suite,
                self.n,
                if self.pass() { "pass" } else { "FAIL" },
                self.matrices,
                self.checked,
                self.failed
            ),
        }
    }
}

/// Compact row-digit label such as `13222/21333/...`.
pub fn label(a: &HWMatrix) -> String {
    a.index_rows()
        .iter()
        .map(|r| r.iter().map(|d| char::from(b'0' + d)).collect::<String>())
        .collect::<Vec<_>>()
        .join("/")
}

struct Partial {
    report: CheckReport,
    stats: BTreeMap<String, u64>,
}

type MatrixCheck<'a> = dyn Fn(&HWMatrix, &mut CheckReport, &mut BTreeMap<String, u64>) -> Result<()> + Sync + 'a;

/// Run `f` on every matrix in parallel; failures are tagged with the matrix.
fn per_matrix(mats: &[HWMatrix], f: &MatrixCheck<'_>) -> Result<Partial> {
    let parts: Vec<Result<Partial>> = mats
        .par_iter()
        .map(|a| {
            let mut report = CheckReport::default();
            let mut stats = BTreeMap::new();
            f(a, &mut report, &mut stats)?;
            let tag = label(a);
            report.failures.iter_mut().for_each(|w| *w = format!("[{tag}] {w}"));
            Ok(Partial { report, stats })
        })
        .collect();
    let mut out = Partial { report: CheckReport::default(), stats: BTreeMap::new() };
    for p in parts {
        let p = p?;
        out.report.merge(p.report);
        for (k, v) in p.stats {
            let e = out.stats.entry(k.clone()).or_insert(0);
            *e = if k.starts_with("max_") { (*e).max(v) } else { *e + v };
        }
    }
    Ok(out)
}

fn bump(stats: &mut BTreeMap<String, u64>, key: &str) {
    *stats.entry(key.to_string()).or_insert(0) += 1;
}

fn prop2(a: &HWMatrix, r: &mut CheckReport) {
    let n = a.n();
    for u in SubsetN::all(n) {
        let j = a.j(u);
        if !u.is_empty() && u != SubsetN::full(n) {
            r.check(!j.is_empty(), || format!("J({u}) is empty"));
        }
        r.check(a.j(u.complement()) == j, || format!("J({u}) != J of its complement"));
        if u.len() == 1 {
            r.check(j == u, || format!("J({u}) = {j}"));
        }
        if u.parity() {
            r.check(j.is_subset(u), || format!("|U| odd but J({u}) = {j} not inside U"));
        } else {
            r.check(j.is_subset(u.complement()), || format!("|U| even but J({u}) = {j} meets U"));
        }
    }
    // (p2 + p3)(A) is all ones off the diagonal.
    let all = (1u32 << n) - 1;
    for row in 0..n {
        let (p2, p3) = a.masks(row);
        r.check(p2 ^ p3 == all & !(1 << row), || format!("(p2+p3) row {} is not 1 - e_{}", row + 1, row + 1));
    }
}

fn prop4(a: &HWMatrix, r: &mut CheckReport) {
    let n = a.n();
    for s in SubsetN::all(n) {
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let parity = a.j(SubsetN::new(n, 1 << x | 1 << y)).intersect(s).parity();
                let mut rhs = a.sigma(s, x) + a.sigma(s, y);
                match (s.contains(x), s.contains(y)) {
                    (false, false) => {}
                    (false, true) => rhs += a.entry(x, y) + DictElem::G1,
                    (true, false) => rhs += a.entry(y, x) + DictElem::G1,
                    (true, true) => rhs += a.entry(x, y) + a.entry(y, x),
                }
                r.check(rhs == DictElem::embed(parity), || {
                    format!("S={s} a={} b={}: parity {} but right side {rhs}", x + 1, y + 1, parity as u8)
                });
            }
        }
    }
}

fn small_rank(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    while let Some(p) = (rank..rows.len()).find(|&k| rows[k] != 0) {
        rows.swap(rank, p);
        let pivot = rows[rank] & rows[rank].wrapping_neg();
        for k in rank + 1..rows.len() {
            if rows[k] & pivot != 0 {
                rows[k] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

fn lemma3(a: &HWMatrix, r: &mut CheckReport, stats: &mut BTreeMap<String, u64>) {
    let n = a.n();
    for three in 0..1u32 << n {
        let d = a.p_alpha_mask(three).defect();
        r.check(d <= 1, || format!("alpha mask {three:#b}: defect {d}"));
        if d == 1 {
            bump(stats, "defect_one");
        }
    }
}

fn lemma4(a: &HWMatrix, r: &mut CheckReport) {
    let n = a.n();
    for three in 0..1u32 << n {
        let p = a.p_alpha_mask(three);
        let rows: Vec<u64> = (0..n).map(|i| p.row_bits(i)).collect();
        for sub in 1..(1u32 << n) - 1 {
            let mut pick: Vec<u64> = (0..n).filter(|i| sub >> i & 1 == 1).map(|i| rows[i]).collect();
            let want = pick.len();
            let got = small_rank(&mut pick);
            r.check(got == want, || format!("alpha mask {three:#b}, rows {}: rank {got}", SubsetN::new(n, sub)));
        }
    }
}

/// For each middle set `R` whose columns read all `g2` above and all `g3`
/// below (in some split of the remaining rows) with a symmetric `R x R`
/// block, rows `~2`-related agree on the lower columns and rows
/// `~3`-related agree on the upper columns.
fn lemma5(a: &HWMatrix, r: &mut CheckReport, stats: &mut BTreeMap<String, u64>) -> Result<()> {
    let n = a.n();
    for rmask in 1u32..1 << n {
        let mid: Vec<usize> = (0..n).filter(|i| rmask >> i & 1 == 1).collect();
        if mid.len() < 2 || mid.len() == n {
            continue;
        }
        let (mut top, mut bottom) = (Vec::new(), Vec::new());
        let mut fits = true;
        for row in (0..n).filter(|i| rmask >> i & 1 == 0) {
            if mid.iter().all(|&c| a.entry(row, c) == DictElem::G2) {
                top.push(row);
            } else if mid.iter().all(|&c| a.entry(row, c) == DictElem::G3) {
                bottom.push(row);
            } else {
                fits = false;
                break;
            }
        }
        let block = a.block(&mid);
        if !fits || (0..mid.len()).any(|i| (0..i).any(|j| block[i][j] != block[j][i])) {
            continue;
        }
        bump(stats, "blocks");
        let agree = |i: usize, j: usize, cols: &[usize]| cols.iter().all(|&c| a.entry(mid[i], c) == a.entry(mid[j], c));
        for comp in components2(&block)? {
            for w in comp.windows(2) {
                r.check(agree(w[0], w[1], &bottom), || {
                    format!("R={} rows {} ~2 {} differ on the g3 rows' columns", SubsetN::new(n, rmask), mid[w[0]] + 1, mid[w[1]] + 1)
                });
            }
        }
        for comp in components3(&block)? {
            for w in comp.windows(2) {
                r.check(agree(w[0], w[1], &top), || {
                    format!("R={} rows {} ~3 {} differ on the g2 rows' columns", SubsetN::new(n, rmask), mid[w[0]] + 1, mid[w[1]] + 1)
                });
            }
        }
    }
    Ok(())
}

fn bridge(a: &HWMatrix, r: &mut CheckReport) -> Result<()> {
    let n = a.n();
    let tbar = transgression(a)?.embedded();
    for u in SubsetN::all(n) {
        let t = SubsetN::new(n, eval_embedded(&tbar, u.mask()));
        let j = a.j(u);
        r.check(t == j, || format!("U={u}: T gives {t}, J gives {j}"));
    }
    Ok(())
}

fn dual_scan_check(a: &HWMatrix, r: &mut CheckReport) -> Result<()> {
    let n = a.n();
    let m = n - 1;
    let kept = dual_scan(&transgression(a)?);
    let mut want: Vec<(u32, usize)> = (0..m).map(|i| (1u32 << i, i)).collect();
    want.push(((1 << m) - 1, m));
    want.sort_unstable();
    r.check(kept == want, || format!("kept dual vectors {kept:?}"));
    Ok(())
}

fn seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen()).collect()
}

fn roundtrip(mats: &[HWMatrix], cfg: &SuiteConfig) -> Result<Partial> {
    let m = mats.first().map_or(1, |a| a.n() - 1);
    let trial_seeds = seeds(cfg.seed, mats.len() * cfg.scrambles);
    let jobs: Vec<(usize, u64)> =
        trial_seeds.iter().enumerate().map(|(k, &s)| (k / cfg.scrambles.max(1), s)).collect();
    let invariants: Vec<_> = mats.iter().map(invariant_of).collect::<Result<_>>()?;
    let results: Vec<Result<(usize, bool, String)>> = jobs
        .par_iter()
        .map(|&(i, s)| {
            let scrambled = scramble(&invariants[i], &gl_random(m, s))?;
            match rigidity_equal(&invariants[i], &scrambled) {
                Ok(eq) => Ok((i, eq, format!("scramble seed {s}: recovered a different class"))),
                Err(e) => Ok((i, false, format!("scramble seed {s}: {e}"))),
            }
        })
        .collect();
    let mut report = CheckReport::default();
    for res in results {
        let (i, ok, msg) = res?;
        report.check(ok, || format!("[{}] {msg}", label(&mats[i])));
    }
    Ok(Partial { report, stats: BTreeMap::new() })
}

fn separation(mats: &[HWMatrix], cfg: &SuiteConfig) -> Result<Partial> {
    let k = mats.len();
    let mut pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    if pairs.len() > cfg.max_pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5e9a);
        pairs.shuffle(&mut rng);
        pairs.truncate(cfg.max_pairs);
        pairs.sort_unstable();
    }
    let m = mats.first().map_or(1, |a| a.n() - 1);
    let pair_seeds = seeds(cfg.seed.wrapping_add(1), pairs.len() * 2);
    let invariants: Vec<_> = mats.iter().map(invariant_of).collect::<Result<_>>()?;
    let results: Vec<Result<(usize, usize, std::result::Result<bool, String>)>> = pairs
        .par_iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let a = scramble(&invariants[i], &gl_random(m, pair_seeds[2 * p]))?;
            let b = scramble(&invariants[j], &gl_random(m, pair_seeds[2 * p + 1]))?;
            Ok((i, j, rigidity_equal(&a, &b).map_err(|e| e.to_string())))
        })
        .collect();
    let mut report = CheckReport::default();
    for res in results {
        let (i, j, eq) = res?;
        report.check(eq == Ok(false), || {
            format!("[{}] vs [{}]: {}", label(&mats[i]), label(&mats[j]), match eq {
                Ok(_) => "declared homeomorphic".to_string(),
                Err(e) => e,
            })
        });
    }
    let mut stats = BTreeMap::new();
    stats.insert("pairs".to_string(), pairs.len() as u64);
    Ok(Partial { report, stats })
}

fn needs_n_above_3(suite: &str) -> bool {
    matches!(suite, "no_squares" | "lemmaB" | "lemmaC" | "factorization" | "roundtrip" | "separation")
}

/// Run one named suite on `mats`, all of dimension `n`.
///
/// `separation` expects pairwise inequivalent matrices, such as catalog
/// representatives.
pub fn run_suite(suite: &str, n: usize, mats: &[HWMatrix], cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Format(format!("unknown suite {suite:?}")));
    }
    if let Some(a) = mats.iter().find(|a| a.n() != n) {
        return Err(Error::DimensionMismatch(a.n(), n));
    }
    let mut out = SuiteReport {
        suite: suite.to_string(),
        n,
        matrices: mats.len(),
        checked: 0,
        failed: 0,
        witnesses: Vec::new(),
        skipped: None,
        stats: BTreeMap::new(),
    };
    if n <= 3 && needs_n_above_3(suite) {
        out.skipped = Some(format!("hypothesis n > 3 not met at n = {n}"));
        return Ok(out);
    }
    let part = match suite {
        "prop2" => per_matrix(mats, &|a, r, _| {
            prop2(a, r);
            Ok(())
        })?,
        "prop4" => per_matrix(mats, &|a, r, _| {
            prop4(a, r);
            Ok(())
        })?,
        "lemma3" => per_matrix(mats, &|a, r, s| {
            lemma3(a, r, s);
            Ok(())
        })?,
        "lemma4" => per_matrix(mats, &|a, r, _| {
            lemma4(a, r);
            Ok(())
        })?,
        "lemma5" => per_matrix(mats, &lemma5)?,
        "no_squares" => per_matrix(mats, &|a, r, _| {
            let sq = squares_in_span(&transgression(a)?);
            r.check(sq.is_empty(), || format!("squares at supports {sq:?}"));
            Ok(())
        })?,
        "lemmaB" => per_matrix(mats, &|a, r, s| {
            let b = check_lemma_b(a)?;
            s.insert("max_d".into(), b.d_size as u64);
            r.merge(b.report);
            Ok(())
        })?,
        "lemmaC" => per_matrix(mats, &|a, r, s| {
            let c = check_lemma_c(a)?;
            bump(s, if c.case == 1 { "case1" } else { "case2" });
            r.merge(c.report);
            Ok(())
        })?,
        "factorization" => per_matrix(mats, &|a, r, s| {
            let f = check_factorization_cases(a)?;
            for e in &f.elems {
                bump(s, &format!("support_size_{}", e.support.len()));
            }
            r.merge(f.report);
            Ok(())
        })?,
        "orientation" => per_matrix(mats, &|a, r, _| {
            let sum = orientation_sum(&transgression(a)?);
            r.check(sum.is_zero(), || format!("sum of s(T_i) = {sum}"));
            Ok(())
        })?,
        "bridge" => per_matrix(mats, &|a, r, _| bridge(a, r))?,
        "dual_scan" => per_matrix(mats, &|a, r, _| dual_scan_check(a, r))?,
        "roundtrip" => roundtrip(mats, cfg)?,
        "separation" => separation(mats, cfg)?,
        _ => unreachable!(),
    };
    out.checked = part.report.checked;
    out.failed = part.report.failures.len() as u64;
    out.witnesses = part.report.failures.into_iter().take(MAX_WITNESSES).collect();
    out.stats = part.stats;
    Ok(out)
}

/// `count` matrices drawn uniformly from all HW-matrices of the catalog's
/// dimension: a class chosen with weight equal to its orbit size, then a
/// uniform group element applied to its representative.
pub fn sample_matrices(catalog: &Catalog, count: usize, seed: u64) -> Vec<HWMatrix> {
    let n = catalog.n;
    let reps = catalog.representatives();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut pick = rng.gen_range(0..catalog.total_count);
            let mut k = 0;
            while pick >= catalog.classes[k].orbit_size {
                pick -= catalog.classes[k].orbit_size;
                k += 1;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mask = SubsetN::new(n, rng.gen_range(0..1u32 << n));
            reps[k].permute(&perm).expect("valid permutation").conjugate_columns(mask)
        })
        .collect()
}
