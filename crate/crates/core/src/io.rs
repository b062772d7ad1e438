//! JSON documents read and written by the command-line tool.
//!
//! Every document carries `"format": "hwcoho/1"`. Readers accept documents
//! without the field but reject any other value.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cohomology::{factor_graph, factorizable_set, transgression, TransBasis};
use crate::enumerate::{canonical_with_stabilizer, group_order, Catalog, CatalogClass, CanonicalForm};
use crate::error::{Error, Result};
use crate::f2::{LinForm, QuadPoly};
use crate::hwmatrix::{AffineGen, HWMatrix};
use crate::reconstruct::RingInvariant;

pub const FORMAT: &str = "hwcoho/1";

fn format_tag() -> String {
    FORMAT.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub index: usize,
    pub shifts: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub n: usize,
    pub generators: Vec<GeneratorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub m: usize,
    pub quads: Vec<Vec<[usize; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredQuad {
    pub quad: Vec<[usize; 2]>,
    pub factors: [Vec<usize>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransgressionDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "T")]
    pub t: Vec<FactoredQuad>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub canonical: MatrixDoc,
    pub orbit_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub n: usize,
    pub class_count: usize,
    pub total_count: u64,
    pub classes: Vec<ClassDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizableDoc {
    /// 1-based indices `i` with `w = sum T_i`.
    pub support: Vec<usize>,
    pub quad: Vec<[usize; 2]>,
    pub factors: [Vec<usize>; 2],
    pub s: Vec<usize>,
}

/// Everything the `invariants` command prints for one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDoc {
    #[serde(default = "format_tag")]
    pub format: String,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "T")]
    pub t: Vec<FactoredQuad>,
    pub s_values: Vec<Vec<usize>>,
    pub s_sum: Vec<usize>,
    pub d_size: usize,
    #[serde(rename = "D")]
    pub d: Vec<FactorizableDoc>,
    /// Components of the common-factor graph on `D`, as positions in `D` (1-based).
    pub graph_components: Vec<Vec<usize>>,
}

fn check_format(tag: &str) -> Result<()> {
    if tag != FORMAT {
        return Err(Error::Format(format!("format {tag:?}, expected {FORMAT:?}")));
    }
    Ok(())
}

impl MatrixDoc {
    pub fn from_matrix(a: &HWMatrix) -> Self {
        MatrixDoc { format: format_tag(), n: a.n(), rows: a.index_rows() }
    }

    pub fn to_matrix(&self) -> Result<HWMatrix> {
        check_format(&self.format)?;
        if self.rows.len() != self.n && self.rows.len() + 1 != self.n {
            return Err(Error::Format(format!("{} rows for n = {}", self.rows.len(), self.n)));
        }
        HWMatrix::from_index_rows(&self.rows)
    }
}

impl GeneratorsDoc {
    pub fn from_generators(n: usize, gens: &[AffineGen]) -> Self {
        let generators = gens
            .iter()
            .map(|g| GeneratorDoc { index: g.index, shifts: g.shifts.iter().map(|&b| b as u8).collect() })
            .collect();
        GeneratorsDoc { format: format_tag(), n, generators }
    }

    pub fn to_generators(&self) -> Result<Vec<AffineGen>> {
        check_format(&self.format)?;
        self.generators
            .iter()
            .map(|g| {
                let shifts = g
                    .shifts
                    .iter()
                    .map(|&s| match s {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::Generators(format!("shift {s} is not 0 or 1"))),
                    })
                    .collect::<Result<_>>()?;
                Ok(AffineGen { index: g.index, shifts })
            })
            .collect()
    }

    pub fn to_matrix(&self) -> Result<HWMatrix> {
        HWMatrix::from_generators(self.n, &self.to_generators()?)
    }
}

impl InvariantDoc {
    pub fn from_invariant(inv: &RingInvariant) -> Self {
        InvariantDoc { format: format_tag(), m: inv.m(), quads: inv.quads().iter().map(|q| q.monomials()).collect() }
    }

    pub fn to_invariant(&self) -> Result<RingInvariant> {
        check_format(&self.format)?;
        let quads = self.quads.iter().map(|q| QuadPoly::from_monomials(self.m, q)).collect::<Result<_>>()?;
        RingInvariant::new(self.m, quads)
    }
}

fn factored(q: &QuadPoly, (a, b): (LinForm, LinForm)) -> FactoredQuad {
    FactoredQuad { quad: q.monomials(), factors: [a.indices(), b.indices()] }
}

impl TransgressionDoc {
    pub fn from_basis(t: &TransBasis) -> Self {
        let t_docs = t.t().iter().zip(t.factors()).map(|(q, &f)| factored(q, f)).collect();
        TransgressionDoc { format: format_tag(), n: t.n(), m: t.m(), t: t_docs }
    }

    pub fn to_basis(&self) -> Result<TransBasis> {
        check_format(&self.format)?;
        let mut quads = Vec::new();
        let mut factors = Vec::new();
        for e in &self.t {
            quads.push(QuadPoly::from_monomials(self.m, &e.quad)?);
            factors.push((LinForm::from_indices(self.m, &e.factors[0])?, LinForm::from_indices(self.m, &e.factors[1])?));
        }
        TransBasis::new(quads, factors)
    }
}

impl CatalogDoc {
    pub fn from_catalog(c: &Catalog) -> Self {
        CatalogDoc {
            format: format_tag(),
            n: c.n,
            class_count: c.class_count(),
            total_count: c.total_count,
            classes: c
                .classes
                .iter()
                .map(|k| ClassDoc { canonical: MatrixDoc::from_matrix(&k.canonical.matrix()), orbit_size: k.orbit_size })
                .collect(),
        }
    }

    /// Rebuild a catalog; each representative must already be in canonical form.
    pub fn to_catalog(&self) -> Result<Catalog> {
        check_format(&self.format)?;
        let mut classes = Vec::with_capacity(self.classes.len());
        for k in &self.classes {
            let a = k.canonical.to_matrix()?;
            if a.n() != self.n {
                return Err(Error::DimensionMismatch(a.n(), self.n));
            }
            let (canonical, stab): (CanonicalForm, u64) = canonical_with_stabilizer(&a);
            if canonical.matrix() != a || group_order(self.n) / stab != k.orbit_size {
                return Err(Error::Format("catalog entry is not a canonical representative".into()));
            }
            classes.push(CatalogClass { canonical, orbit_size: k.orbit_size });
        }
        if classes.len() != self.class_count || !classes.windows(2).all(|w| w[0].canonical < w[1].canonical) {
            return Err(Error::Format("catalog classes not sorted, distinct and counted".into()));
        }
        Ok(Catalog { n: self.n, total_count: self.total_count, classes })
    }
}

impl InvariantsDoc {
    pub fn from_matrix(a: &HWMatrix) -> Result<Self> {
        let t = transgression(a)?;
        let d = factorizable_set(&t);
        let s_values: Vec<LinForm> = t.s_values();
        let s_sum = s_values.iter().fold(LinForm::zero(t.m()), |acc, &l| acc + l);
        let quads: Vec<QuadPoly> = d.elems.iter().map(|e| e.quad).collect();
        let graph = factor_graph(&quads)?;
        Ok(InvariantsDoc {
            format: format_tag(),
            n: t.n(),
            m: t.m(),
            t: TransgressionDoc::from_basis(&t).t,
            s_values: s_values.iter().map(|l| l.indices()).collect(),
            s_sum: s_sum.indices(),
            d_size: d.len(),
            d: d.elems
                .iter()
                .map(|e| {
                    let f = factored(&e.quad, e.factors);
                    FactorizableDoc {
                        support: e.support.indices(),
                        quad: f.quad,
                        factors: f.factors,
                        s: (e.factors.0 + e.factors.1).indices(),
                    }
                })
                .collect(),
            graph_components: graph.components().into_iter().map(|c| c.into_iter().map(|i| i + 1).collect()).collect(),
        })
    }
}

/// A parsed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Matrix(HWMatrix),
    /// A matrix built from generators.
    Generators(HWMatrix),
    Invariant(RingInvariant),
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    Ok(serde_json::from_value(v)?)
}

/// Recognize a matrix, generator or invariant document by its keys.
pub fn parse_input(text: &str) -> Result<Input> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Format("expected a JSON object".into()))?;
    if obj.contains_key("rows") {
        Ok(Input::Matrix(from_value::<MatrixDoc>(v)?.to_matrix()?))
    } else if obj.contains_key("generators") {
        Ok(Input::Generators(from_value::<GeneratorsDoc>(v)?.to_matrix()?))
    } else if obj.contains_key("quads") {
        Ok(Input::Invariant(from_value::<InvariantDoc>(v)?.to_invariant()?))
    } else {
        Err(Error::Format("expected \"rows\", \"generators\" or \"quads\"".into()))
    }
}

pub fn read_input(path: &Path) -> Result<Input> {
    parse_input(&fs::read_to_string(path)?)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    fs::write(path, to_json(doc)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::classify;
    use crate::error::Violation;
    use crate::hwmatrix::examples::*;
    use crate::reconstruct::invariant_of;

    #[test]
    fn matrix_round_trip() {
        let doc = MatrixDoc::from_matrix(&dim5_a());
        let text = to_json(&doc).unwrap();
        assert!(text.contains("\"format\": \"hwcoho/1\""));
        assert_eq!(parse_input(&text).unwrap(), Input::Matrix(dim5_a()));
        let short = r#"{"n":3,"rows":[[1,3,2],[2,1,3]]}"#;
        assert_eq!(parse_input(short).unwrap(), Input::Matrix(dim3()));
    }

    #[test]
    fn rejects_foreign_format() {
        let bad = r#"{"format":"other/2","n":3,"rows":[[1,3,2],[2,1,3]]}"#;
        assert!(matches!(parse_input(bad), Err(Error::Format(_))));
        assert!(matches!(parse_input("[1,2]"), Err(Error::Format(_))));
        assert!(matches!(parse_input("{"), Err(Error::Json(_))));
    }

    #[test]
    fn invalid_matrix_reports_clause() {
        let bad = r#"{"n":3,"rows":[[1,2,2],[2,1,2]]}"#;
        match parse_input(bad) {
            Err(Error::InvalidMatrix(v @ Violation::TorsionFree(_))) => {
                assert_eq!(v.to_string(), "torsion-free subset {1,2}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn generators_round_trip() {
        let doc = GeneratorsDoc::from_generators(5, &dim5_a_generators());
        let text = to_json(&doc).unwrap();
        assert_eq!(parse_input(&text).unwrap(), Input::Generators(dim5_a()));
        let bad = r#"{"n":3,"generators":[{"index":1,"shifts":[2,0,0]},{"index":2,"shifts":[0,1,0]}]}"#;
        assert!(matches!(parse_input(bad), Err(Error::Generators(_))));
    }

    #[test]
    fn invariant_round_trip() {
        let inv = invariant_of(&dim5_a()).unwrap();
        let text = to_json(&InvariantDoc::from_invariant(&inv)).unwrap();
        assert_eq!(parse_input(&text).unwrap(), Input::Invariant(inv));
    }

    #[test]
    fn transgression_round_trip() {
        let t = transgression(&dim5_a()).unwrap();
        let doc = TransgressionDoc::from_basis(&t);
        let mut f = doc.t[0].factors.clone();
        f.sort();
        assert_eq!(f, [vec![1], vec![1, 2, 3, 4]]);
        let back: TransgressionDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
        assert_eq!(back.to_basis().unwrap(), t);
    }

    #[test]
    fn catalog_round_trip_is_byte_stable() {
        let cat = classify(5).unwrap();
        let text = to_json(&CatalogDoc::from_catalog(&cat)).unwrap();
        assert_eq!(text, to_json(&CatalogDoc::from_catalog(&classify(5).unwrap())).unwrap());
        let doc: CatalogDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_catalog().unwrap(), cat);
    }

    #[test]
    fn invariants_doc_dim5_a() {
        let doc = InvariantsDoc::from_matrix(&dim5_a()).unwrap();
        assert_eq!(doc.d_size, 5);
        assert!(doc.s_sum.is_empty());
        assert_eq!(doc.graph_components.len(), 5);
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.json");
        write_json(&p, &MatrixDoc::from_matrix(&dim5_b())).unwrap();
        assert_eq!(read_input(&p).unwrap(), Input::Matrix(dim5_b()));
        assert!(matches!(read_input(&dir.path().join("missing.json")), Err(Error::Io(_))));
    }
}
