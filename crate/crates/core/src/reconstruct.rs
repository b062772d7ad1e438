//! Recovering an HW-matrix from the basis-free quadratic invariant.

use crate::cohomology::{factor_graph, transgression, TransBasis};
use crate::dict::DictElem;
use crate::enumerate::canonical_form;
use crate::error::{Error, Result};
use crate::f2::{quad_factor, F2Matrix, LinForm, QuadPoly, Subspace, MAX_VARS};
use crate::hwmatrix::HWMatrix;

/// `m` together with a list of quadratics in `m` variables spanning `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingInvariant {
    m: usize,
    quads: Vec<QuadPoly>,
}

impl RingInvariant {
    /// Requires `dim span(quads) = m + 1`.
    pub fn new(m: usize, quads: Vec<QuadPoly>) -> Result<Self> {
        if !(2..MAX_VARS).contains(&m) {
            return Err(Error::UnsupportedDimension(m + 1));
        }
        if let Some(q) = quads.iter().find(|q| q.m() != m) {
            return Err(Error::DimensionMismatch(q.m(), m));
        }
        let inv = RingInvariant { m, quads };
        let dim = inv.span()?.dim();
        if dim != m + 1 {
            return Err(Error::NotHwInvariant(format!("span has dimension {dim}, expected {}", m + 1)));
        }
        Ok(inv)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m + 1
    }

    pub fn quads(&self) -> &[QuadPoly] {
        &self.quads
    }

    pub fn span(&self) -> Result<Subspace> {
        Subspace::span(QuadPoly::monomial_count(self.m), self.quads.iter().map(|q| q.to_words()))
    }

    /// The reduced echelon basis of `W`; equal for equal subspaces.
    pub fn reduced(&self) -> Result<RingInvariant> {
        let quads = self.span()?.basis().map(|w| QuadPoly::from_words(self.m, w)).collect();
        Ok(RingInvariant { m: self.m, quads })
    }
}

/// `W = span{T_i}` with the basis and factorizations forgotten.
pub fn invariant_of(a: &HWMatrix) -> Result<RingInvariant> {
    let t = transgression(a)?;
    RingInvariant { m: t.m(), quads: t.t().to_vec() }.reduced()
}

/// The images `sum_j g[k][j] x_j` of the variables under `x -> g x`.
fn substitution(g: &F2Matrix) -> Vec<LinForm> {
    (0..g.rows()).map(|k| LinForm::new(g.cols(), g.row_bits(k) as u32)).collect()
}

/// Each quadratic `q` becomes `q(g x)`.
pub fn scramble(inv: &RingInvariant, g: &F2Matrix) -> Result<RingInvariant> {
    if g.rows() != inv.m || g.cols() != inv.m {
        return Err(Error::DimensionMismatch(g.rows(), inv.m));
    }
    if g.rank() != inv.m {
        return Err(Error::Singular);
    }
    let images = substitution(g);
    Ok(RingInvariant { m: inv.m, quads: inv.quads.iter().map(|q| q.substitute(&images)).collect() })
}

/// Apply `x -> g x` to a factored basis.
pub fn scramble_basis(t: &TransBasis, g: &F2Matrix) -> Result<TransBasis> {
    if g.rank() != t.m() || g.rows() != t.m() {
        return Err(Error::Singular);
    }
    let images = substitution(g);
    let sub = |l: LinForm| l.indices().iter().fold(LinForm::zero(t.m()), |acc, &i| acc + images[i - 1]);
    let factors: Vec<_> = t.factors().iter().map(|&(a, b)| (sub(a), sub(b))).collect();
    let quads = t.t().iter().map(|q| q.substitute(&images)).collect();
    TransBasis::new(quads, factors)
}

/// Identify `{T_1..T_n}` inside `W` from its factorizable elements.
pub fn recover_t_basis(inv: &RingInvariant) -> Result<TransBasis> {
    let (m, n) = (inv.m, inv.n());
    if m < 4 {
        return Err(Error::Precondition(format!("recovery needs at least 4 variables, got {m}")));
    }
    let reduced = inv.reduced()?;
    let w = reduced.span()?;

    let mut d: Vec<(QuadPoly, (LinForm, LinForm))> = Vec::new();
    for words in w.elements().skip(1) {
        let q = QuadPoly::from_words(m, &words);
        if let Some(pair) = quad_factor(&q)? {
            if pair.0 == pair.1 {
                return Err(Error::NotHwInvariant(format!("{q} is a square")));
            }
            d.push((q, pair));
        }
    }
    d.sort();

    let chosen: Vec<(QuadPoly, (LinForm, LinForm))> = if d.len() == n {
        d
    } else if d.len() == n + 1 {
        let quads: Vec<QuadPoly> = d.iter().map(|e| e.0).collect();
        let g = factor_graph(&quads)?;
        let comps = g.components();
        let triangles: Vec<&Vec<usize>> = comps.iter().filter(|c| c.len() == 3).collect();
        let isolated: Vec<usize> = comps.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        if triangles.len() != 1 || isolated.len() != n - 2 || g.edges.len() != 3 {
            return Err(Error::NotHwInvariant("no unique triangle among the factorizable elements".into()));
        }
        let tri = triangles[0];
        let s_of = |i: usize| d[i].1 .0 + d[i].1 .1;
        let s_dc = isolated.iter().fold(LinForm::zero(m), |acc, &i| acc + s_of(i));
        let pairs: Vec<(usize, usize)> = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
            .into_iter()
            .filter(|&(a, b)| (s_of(a) + s_of(b) + s_dc).is_zero())
            .collect();
        if pairs.len() != 1 {
            return Err(Error::NotHwInvariant(format!("{} triangle pairs balance the orientation", pairs.len())));
        }
        let (a, b) = pairs[0];
        let mut keep: Vec<usize> = isolated;
        keep.extend([a, b]);
        keep.sort_unstable();
        keep.into_iter().map(|i| d[i]).collect()
    } else {
        return Err(Error::NotHwInvariant(format!("{} factorizable elements, expected {n} or {}", d.len(), n + 1)));
    };

    let (t, factors) = chosen.into_iter().unzip();
    let basis = TransBasis::new(t, factors)?;
    if basis.span()? != w {
        return Err(Error::NotHwInvariant("recovered quadratics do not span W".into()));
    }
    Ok(basis)
}

/// Dual vectors `u` with no `(0,0)` and exactly one `(1,1)` among the factor
/// evaluations, each paired with the index of its `(1,1)` column.
pub fn dual_scan(t: &TransBasis) -> Vec<(u32, usize)> {
    let m = t.m();
    let mut kept = Vec::new();
    'u: for u in 1u32..1 << m {
        let mut one = None;
        for (i, &(a, b)) in t.factors().iter().enumerate() {
            match (a.eval(u), b.eval(u)) {
                (false, false) => continue 'u,
                (true, true) if one.is_some() => continue 'u,
                (true, true) => one = Some(i),
                _ => {}
            }
        }
        if let Some(i) = one {
            kept.push((u, i));
        }
    }
    kept
}

/// Rebuild a matrix from a factored basis; row `i` is the kept dual vector
/// whose `(1,1)` falls in column `i`.
pub fn recover_matrix(t: &TransBasis) -> Result<HWMatrix> {
    let n = t.n();
    let kept = dual_scan(t);
    if kept.len() != n {
        return Err(Error::NotHwInvariant(format!("{} distinguished dual vectors, expected {n}", kept.len())));
    }
    let mut by_col = vec![None; n];
    for &(u, i) in &kept {
        if by_col[i].replace(u).is_some() {
            return Err(Error::NotHwInvariant(format!("column {} claimed twice", i + 1)));
        }
    }
    let rows: Vec<Vec<DictElem>> = by_col
        .iter()
        .map(|u| {
            let u = u.expect("n vectors over n distinct columns");
            t.factors().iter().map(|&(a, b)| DictElem::from_bits(a.eval(u), b.eval(u))).collect()
        })
        .collect();
    HWMatrix::from_rows(&rows).map_err(|e| Error::NotHwInvariant(format!("rebuilt matrix: {e}")))
}

/// Full reconstruction: invariant to matrix.
pub fn recover(inv: &RingInvariant) -> Result<HWMatrix> {
    recover_matrix(&recover_t_basis(inv)?)
}

/// Whether two invariants come from equivalent HW-matrices.
pub fn rigidity_equal(a: &RingInvariant, b: &RingInvariant) -> Result<bool> {
    if a.m != b.m {
        return Err(Error::DimensionMismatch(a.m, b.m));
    }
    Ok(canonical_form(&recover(a)?) == canonical_form(&recover(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::gl_random;
    use crate::hwmatrix::examples::*;

    #[test]
    fn invariant_examples() {
        let inv = invariant_of(&dim5_a()).unwrap();
        assert_eq!((inv.m(), inv.span().unwrap().dim()), (4, 5));
        let inv3 = invariant_of(&dim3()).unwrap();
        assert_eq!((inv3.m(), inv3.span().unwrap().dim()), (2, 3));
        assert_eq!(QuadPoly::monomial_count(2), 3);
    }

    #[test]
    fn invariant_rejects_wrong_rank() {
        let t = transgression(&dim5_a()).unwrap();
        let r = RingInvariant::new(4, t.t()[..4].to_vec());
        assert!(matches!(r, Err(Error::NotHwInvariant(_))));
    }

    #[test]
    fn scramble_examples() {
        let inv = invariant_of(&dim5_a()).unwrap();
        assert_eq!(scramble(&inv, &F2Matrix::identity(4)).unwrap(), inv);
        let g = gl_random(4, 42);
        let back = scramble(&scramble(&inv, &g).unwrap(), &g.inverse().unwrap()).unwrap();
        assert_eq!(back, inv);
        let singular = F2Matrix::from_bit_rows(4, &[1, 2, 4, 1]);
        assert!(matches!(scramble(&inv, &singular), Err(Error::Singular)));
        for seed in 0..100 {
            let s = scramble(&inv, &gl_random(4, seed)).unwrap();
            assert_eq!(s.span().unwrap().dim(), 5);
        }
    }

    #[test]
    fn recover_t_dim5_a() {
        let t = transgression(&dim5_a()).unwrap();
        let rec = recover_t_basis(&invariant_of(&dim5_a()).unwrap()).unwrap();
        let mut want = t.t().to_vec();
        want.sort();
        assert_eq!(rec.t(), want.as_slice());

        let g = gl_random(4, 42);
        let scrambled = scramble(&invariant_of(&dim5_a()).unwrap(), &g).unwrap();
        let rec = recover_t_basis(&scrambled).unwrap();
        let mut want = scramble_basis(&t, &g).unwrap().t().to_vec();
        want.sort();
        assert_eq!(rec.t(), want.as_slice());
    }

    #[test]
    fn recover_t_rejects_small() {
        let inv = invariant_of(&dim3()).unwrap();
        assert!(matches!(recover_t_basis(&inv), Err(Error::Precondition(_))));
    }

    #[test]
    fn dual_scan_dim5_a() {
        let t = transgression(&dim5_a()).unwrap();
        let kept = dual_scan(&t);
        assert!(kept.contains(&(0b0001, 0)));
        assert!(!kept.iter().any(|k| k.0 == 0b0011));
        assert!(kept.contains(&(0b1111, 4)));
        assert_eq!(kept.len(), 5);
        let row1: Vec<_> = t.factors().iter().map(|&(a, b)| DictElem::from_bits(a.eval(1), b.eval(1))).collect();
        assert_eq!(row1, dim5_a().row(0));
        assert_eq!(dim5_a().index_rows()[0], vec![1, 3, 2, 2, 2]);
        assert_eq!(dim5_a().index_rows()[4], vec![3, 2, 2, 2, 1]);
        let (a, b) = t.factors()[3];
        assert!(!a.eval(0b0011) && !b.eval(0b0011));
        assert_eq!(recover_matrix(&t).unwrap(), dim5_a());
    }

    #[test]
    fn rigidity_examples() {
        let i1 = invariant_of(&dim5_a()).unwrap();
        let i2 = invariant_of(&dim5_b()).unwrap();
        assert!(rigidity_equal(&i1, &i1).unwrap());
        assert!(!rigidity_equal(&i1, &i2).unwrap());
        for seed in 0..100 {
            let s = scramble(&i1, &gl_random(4, seed)).unwrap();
            assert!(rigidity_equal(&i1, &s).unwrap(), "seed {seed}");
        }
        let i3 = invariant_of(&dim3()).unwrap();
        assert!(matches!(rigidity_equal(&i1, &i3), Err(Error::DimensionMismatch(4, 2))));
    }
}
