//! The transgression basis `T_1..T_n` of an HW-matrix and the combinatorics
//! of its factorizable elements.
//!
//! Column `i` of the matrix, read through the two projections over rows
//! `1..n-1`, gives a pair of linear forms in `m = n - 1` variables; their
//! product is `T_i`. The `T_i` span an `n`-dimensional space `W` of
//! quadratics, and the set `D` of elements of `W` that split into two linear
//! factors is what the reconstruction works from.

use crate::error::{Error, Result};
use crate::f2::{lin_mul, quad_factor, LinForm, QuadPoly, Subspace};
use crate::hwmatrix::{HWMatrix, SubsetN};
use crate::reconstruct;

/// A basis `T_1..T_n` of quadratics, each with a factor pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransBasis {
    t: Vec<QuadPoly>,
    factors: Vec<(LinForm, LinForm)>,
}

impl TransBasis {
    /// Checks `t[i] = factors[i].0 * factors[i].1` and that the `t` are independent.
    pub fn new(t: Vec<QuadPoly>, factors: Vec<(LinForm, LinForm)>) -> Result<Self> {
        if t.len() != factors.len() || t.is_empty() {
            return Err(Error::DimensionMismatch(t.len(), factors.len()));
        }
        for (q, &(a, b)) in t.iter().zip(&factors) {
            if lin_mul(a, b)? != *q {
                return Err(Error::Format(format!("{q} is not ({a})({b})")));
            }
        }
        let basis = TransBasis { t, factors };
        let rank = basis.span()?.dim();
        if rank != basis.n() {
            return Err(Error::RankDeficient { rank, expected: basis.n() });
        }
        Ok(basis)
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    /// Number of variables.
    pub fn m(&self) -> usize {
        self.t[0].m()
    }

    pub fn t(&self) -> &[QuadPoly] {
        &self.t
    }

    pub fn factors(&self) -> &[(LinForm, LinForm)] {
        &self.factors
    }

    pub fn span(&self) -> Result<Subspace> {
        Subspace::span(QuadPoly::monomial_count(self.m()), self.t.iter().map(|q| q.to_words()))
    }

    /// `sum_{i in S} T_i`.
    pub fn combination(&self, s: SubsetN) -> QuadPoly {
        s.iter().fold(QuadPoly::zero(self.m()), |acc, i| acc + self.t[i])
    }

    /// The images `phi(T_i)` in `n` variables.
    pub fn embedded(&self) -> Vec<QuadPoly> {
        self.t.iter().map(embed_phi).collect()
    }

    /// `s(T_i)` for each `i`.
    pub fn s_values(&self) -> Vec<LinForm> {
        self.factors.iter().map(|&(a, b)| a + b).collect()
    }
}

/// The transgression basis of `a`.
///
/// `T_i = L2_i * L3_i` with `Lk_i = sum_{j < n} p^(k)(A[j][i]) x_j`.
pub fn transgression(a: &HWMatrix) -> Result<TransBasis> {
    let n = a.n();
    let m = n - 1;
    let mut t = Vec::with_capacity(n);
    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        let (mut l2, mut l3) = (0u32, 0u32);
        for j in 0..m {
            let g = a.entry(j, i);
            l2 |= (g.p2() as u32) << j;
            l3 |= (g.p3() as u32) << j;
        }
        let (l2, l3) = (LinForm::new(m, l2), LinForm::new(m, l3));
        t.push(lin_mul(l2, l3)?);
        factors.push((l2, l3));
    }
    TransBasis::new(t, factors)
}

/// `phi(x_i) = x_i + x_{m+1}` on a linear form in `m` variables.
pub fn embed_lin(l: LinForm) -> LinForm {
    let m = l.m();
    let extra = (l.bits().count_ones() & 1) << m;
    LinForm::new(m + 1, l.bits() | extra)
}

/// `phi` on a quadratic: the ring map `x_i -> x_i + x_{m+1}` into `m + 1` variables.
pub fn embed_phi(q: &QuadPoly) -> QuadPoly {
    let m = q.m();
    let images: Vec<LinForm> = (0..m).map(|i| embed_lin(LinForm::var(m, i))).collect();
    q.substitute(&images)
}

/// `T(x) = (Tbar_1(x), .., Tbar_n(x))` for a point `x` of `F2^n`.
pub fn eval_embedded(embedded: &[QuadPoly], x: u32) -> u32 {
    embedded.iter().enumerate().fold(0, |acc, (i, q)| acc | (q.eval(x) as u32) << i)
}

/// `T(x)` computed from the matrix through its transgression basis.
pub fn eval_t(a: &HWMatrix, x: u32) -> Result<u32> {
    Ok(eval_embedded(&transgression(a)?.embedded(), x))
}

/// `s(w) = xi + eta` for `w = xi * eta`.
pub fn s(w: &QuadPoly) -> Result<LinForm> {
    let (a, b) = quad_factor(w)?.ok_or(Error::Irreducible)?;
    Ok(a + b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizableElem {
    /// `S` with `quad = sum_{i in S} T_i`.
    pub support: SubsetN,
    pub quad: QuadPoly,
    pub factors: (LinForm, LinForm),
}

/// The set `D` of factorizable nonzero elements of `span{T_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizableSet {
    pub n: usize,
    /// Sorted by support mask.
    pub elems: Vec<FactorizableElem>,
}

impl FactorizableSet {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements whose support has more than one index.
    pub fn sums(&self) -> impl Iterator<Item = &FactorizableElem> {
        self.elems.iter().filter(|e| e.support.len() > 1)
    }
}

/// Scan all `2^n - 1` nonzero elements of the span.
pub fn factorizable_set(t: &TransBasis) -> FactorizableSet {
    let n = t.n();
    let mut elems = Vec::new();
    let mut q = QuadPoly::zero(t.m());
    let mut gray = 0u32;
    let mut found = Vec::new();
    for k in 1u32..1 << n {
        let flip = k.trailing_zeros() as usize;
        q += t.t[flip];
        gray ^= 1 << flip;
        if let Some(pair) = quad_factor(&q).expect("span of an independent set has no zero") {
            found.push((gray, q, pair));
        }
    }
    found.sort_by_key(|f| f.0);
    for (mask, quad, factors) in found {
        elems.push(FactorizableElem { support: SubsetN::new(n, mask), quad, factors });
    }
    FactorizableSet { n, elems }
}

/// The common-factor graph on a set of factorizable quadratics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorGraph {
    pub vertices: Vec<QuadPoly>,
    pub factors: Vec<(LinForm, LinForm)>,
    /// `(a, b, f)` with `a < b` and `f` dividing both.
    pub edges: Vec<(usize, usize, LinForm)>,
}

impl FactorGraph {
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b, _)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.vertices.len();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for v in 0..k {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let mut comp = vec![v];
            let mut i = 0;
            while i < comp.len() {
                let nb: Vec<usize> = self.neighbours(comp[i]).collect();
                for w in nb {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn edge_count_within(&self, comp: &[usize]) -> usize {
        self.edges.iter().filter(|(a, b, _)| comp.contains(a) && comp.contains(b)).count()
    }
}

/// Edge `a -- b` iff some nonzero linear form divides both.
pub fn factor_graph(x: &[QuadPoly]) -> Result<FactorGraph> {
    let mut factors = Vec::with_capacity(x.len());
    for q in x {
        factors.push(quad_factor(q)?.ok_or(Error::Irreducible)?);
    }
    let mut edges = Vec::new();
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            let (p, q) = factors[a];
            let (r, s) = factors[b];
            if let Some(f) = [p, q].into_iter().find(|f| *f == r || *f == s) {
                edges.push((a, b, f));
            }
        }
    }
    Ok(FactorGraph { vertices: x.to_vec(), factors, edges })
}

/// Outcome of a property check, with human-readable witnesses on failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn require_n_above_3(a: &HWMatrix) -> Result<()> {
    if a.n() <= 3 {
        return Err(Error::Precondition(format!("dimension {} must exceed 3", a.n())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaBReport {
    pub n: usize,
    pub d_size: usize,
    pub report: CheckReport,
}

/// `n <= #D <= n + 1`.
pub fn check_lemma_b(a: &HWMatrix) -> Result<LemmaBReport> {
    require_n_above_3(a)?;
    let n = a.n();
    let d = factorizable_set(&transgression(a)?);
    let mut report = CheckReport::default();
    report.check(d.len() >= n && d.len() <= n + 1, || format!("#D = {} outside [{n}, {}]", d.len(), n + 1));
    Ok(LemmaBReport { n, d_size: d.len(), report })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCReport {
    pub n: usize,
    /// 1 if `D = {T_i}`, 2 if one extra sum `T_i + T_j` is present.
    pub case: u8,
    /// The 1-based pair `(i, j)` in case 2.
    pub pair: Option<(usize, usize)>,
    pub report: CheckReport,
}

/// Shape of `D`, shape of the common-factor graphs, and successful recovery.
pub fn check_lemma_c(a: &HWMatrix) -> Result<LemmaCReport> {
    require_n_above_3(a)?;
    let n = a.n();
    let t = transgression(a)?;
    let d = factorizable_set(&t);
    let mut report = CheckReport::default();

    let singles = d.elems.iter().filter(|e| e.support.len() == 1).count();
    report.check(singles == n, || format!("only {singles} of the {n} T_i lie in D"));
    let sums: Vec<&FactorizableElem> = d.sums().collect();
    report.check(sums.len() <= 1, || format!("{} non-basis elements in D", sums.len()));
    let mut pair = None;
    for e in &sums {
        report.check(e.support.len() == 2, || format!("D element with support {} is not T_i + T_j", e.support));
        if e.support.len() == 2 {
            let ix = e.support.indices();
            pair = Some((ix[0], ix[1]));
        }
    }

    // T_i + T_j in D exactly when T_i and T_j share a factor.
    for i in 0..n {
        for j in i + 1..n {
            let (p, q) = t.factors()[i];
            let (r, s) = t.factors()[j];
            let share = p == r || p == s || q == r || q == s;
            let st = SubsetN::new(n, 1 << i | 1 << j);
            let in_d = d.elems.iter().any(|e| e.support == st);
            report.check(share == in_d, || format!("T_{} + T_{}: common factor {share}, factorizable {in_d}", i + 1, j + 1));
        }
    }

    // Graph on the T_i: points and at most one edge, no path of length two.
    let g = factor_graph(t.t())?;
    report.check(g.edges.len() <= 1, || format!("{} edges among the T_i", g.edges.len()));
    for comp in g.components() {
        report.check(comp.len() <= 2, || format!("component {comp:?} of the T-graph is not a point or edge"));
    }
    for v in 0..n {
        let deg = g.neighbours(v).count();
        report.check(deg <= 1, || format!("T_{} has {deg} neighbours (a 2-path)", v + 1));
    }

    // Graph on D: isolated points plus, in case 2, one triangle.
    let dq: Vec<QuadPoly> = d.elems.iter().map(|e| e.quad).collect();
    let gd = factor_graph(&dq)?;
    for comp in gd.components() {
        let ok = comp.len() == 1 || (comp.len() == 3 && gd.edge_count_within(&comp) == 3);
        report.check(ok, || format!("component {comp:?} of the D-graph is neither a point nor a triangle"));
    }

    match reconstruct::invariant_of(a).and_then(|inv| reconstruct::recover_t_basis(&inv)) {
        Ok(rec) => {
            let (w, r) = (t.span()?, rec.span()?);
            report.check(r == w, || "recovered basis does not span Im(d2)".into());
            let mut want = t.t().to_vec();
            let mut got = rec.t().to_vec();
            want.sort();
            got.sort();
            report.check(want == got, || "recovered basis differs from {T_i}".into());
        }
        Err(e) => report.check(false, || format!("recovery failed: {e}")),
    }

    let case = if sums.is_empty() { 1 } else { 2 };
    Ok(LemmaCReport { n, case, pair, report })
}

/// Subset of `{1..n}` supporting an embedded linear form.
fn support(l: LinForm) -> SubsetN {
    SubsetN::new(l.m(), l.bits())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemCase {
    pub support: SubsetN,
    pub z1: SubsetN,
    pub z2: SubsetN,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub n: usize,
    pub elems: Vec<ElemCase>,
    pub report: CheckReport,
}

/// Subset calculus for every `w = sum_{i in S} T_i` in `D`, in the embedded model
/// where `phi(w) = l_{Z1} * l_{Z2}`.
pub fn check_factorization_cases(a: &HWMatrix) -> Result<FactorizationReport> {
    require_n_above_3(a)?;
    let n = a.n();
    let t = transgression(a)?;
    let d = factorizable_set(&t);
    let full = SubsetN::full(n);
    let mut report = CheckReport::default();
    let mut elems = Vec::new();
    for e in &d.elems {
        let s = e.support;
        let (f1, f2) = (embed_lin(e.factors.0), embed_lin(e.factors.1));
        let embedded = embed_phi(&e.quad);
        report.check(lin_mul(f1, f2)? == embedded, || format!("phi does not respect the factorization of {}", e.quad));
        let direct = quad_factor(&embedded)?;
        let mut pair = [f1, f2];
        pair.sort();
        report.check(direct == Some((pair[0], pair[1])), || format!("phi({}) factors differently", e.quad));

        let (z1, z2) = (support(f1), support(f2));
        let w = || format!("S={s} Z1={z1} Z2={z2}");
        report.check(s == z1.intersect(z2), || format!("{}: S is not Z1 & Z2", w()));
        for u in SubsetN::all(n) {
            let lhs = a.j(u).intersect(s).parity();
            let rhs = u.intersect(z1).parity() && u.intersect(z2).parity();
            report.check(lhs == rhs, || format!("{}: |J(U)S| != |UZ1||UZ2| at U={u}", w()));
        }
        // Parities and union.
        report.check(!z1.parity() || !z2.parity(), || format!("{}: |Z1| and |Z2| both odd", w()));
        if !s.is_empty() {
            report.check(!z1.parity() && !z2.parity(), || format!("{}: S nonempty but some |Zk| odd", w()));
        }
        if s != z1 && s != z2 {
            report.check(z1.union(z2) == full, || format!("{}: Z1 | Z2 is not everything", w()));
        }
        // Case restrictions.
        report.check(!(s == z1 && s == z2), || format!("{}: a square in the span", w()));
        if (s == z1) != (s == z2) {
            let z = if s == z1 { z2 } else { z1 };
            report.check(s.len() == 2 && !z.parity() && s.is_subset(z), || format!("{}: S = Zk case violated", w()));
        } else if s != z1 && s != z2 {
            report.check(
                s.len() == 1 && !z1.parity() && !z2.parity() && z1.sym_diff(z2) == s.complement(),
                || format!("{}: generic case violated", w()),
            );
        }
        report.check((1..=2).contains(&s.len()), || format!("{}: #S = {}", w(), s.len()));
        elems.push(ElemCase { support: s, z1, z2 });
    }
    Ok(FactorizationReport { n, elems, report })
}

/// Elements of `span{T_i}` that are squares of a linear form.
pub fn squares_in_span(t: &TransBasis) -> Vec<SubsetN> {
    factorizable_set(t).elems.into_iter().filter(|e| e.factors.0 == e.factors.1).map(|e| e.support).collect()
}

/// `sum_i s(T_i)`, zero for every HW-matrix.
pub fn orientation_sum(t: &TransBasis) -> LinForm {
    t.s_values().into_iter().fold(LinForm::zero(t.m()), |acc, l| acc + l)
}
