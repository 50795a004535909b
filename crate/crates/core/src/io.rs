//! JSON file formats. Scalars are strings (`"3/4"`, or residues over GF(p));
//! matrices are lists of rows, one row per target coordinate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::hopf::{AlphaChoice, ComoduleAlgebra, HopfData, Piece, Trivialization};
use crate::lattice::Antichain;
use crate::linalg::{FieldSpec, LinearMap, Scalar};
use crate::sheaf::SheafData;

pub type MatrixJson = Vec<Vec<String>>;

pub fn scalars_to_json(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn parse_scalars(field: FieldSpec, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| field.parse(s)).collect()
}

pub fn matrix_to_json(m: &LinearMap) -> MatrixJson {
    m.rows().iter().map(|r| scalars_to_json(r)).collect()
}

/// Parses a matrix of the given shape.
pub fn parse_matrix(field: FieldSpec, rows: &MatrixJson, target: usize, source: usize, what: &str) -> Result<LinearMap> {
    if rows.len() != target {
        return Err(Error::Dimension(format!("{what}: {} rows where {target} expected", rows.len())));
    }
    let parsed = rows.iter().map(|r| parse_scalars(field, r)).collect::<Result<Vec<_>>>()?;
    LinearMap::from_rows(field, source, parsed).map_err(|e| Error::Dimension(format!("{what}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub unit: Vec<String>,
    /// Nonzero structure constants `e_i e_j = Σ_k c e_k` as `[i, j, k, "c"]`.
    pub structure: Vec<(usize, usize, usize, String)>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &Algebra) -> Self {
        let n = a.dim();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = a.c(i, j, k);
                    if !c.is_zero() {
                        structure.push((i, j, k, c.to_string()));
                    }
                }
            }
        }
        AlgebraJson { field: a.field(), dim: n, unit: scalars_to_json(a.unit()), structure }
    }

    pub fn build(&self) -> Result<Algebra> {
        let f = self.field;
        f.validate()?;
        let n = self.dim;
        let mut structure = vec![f.zero(); n * n * n];
        for (i, j, k, c) in &self.structure {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Format(format!("structure index ({i}, {j}, {k}) out of range")));
            }
            structure[(i * n + j) * n + k] = f.parse(c)?;
        }
        if self.unit.len() != n {
            return Err(Error::Dimension(format!("unit of length {} in dimension {n}", self.unit.len())));
        }
        Algebra::new(f, n, structure, parse_scalars(f, &self.unit)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: AlgebraJson,
    pub target: AlgebraJson,
    pub matrix: MatrixJson,
}

impl MorphismJson {
    pub fn build(&self) -> Result<AlgebraMorphism> {
        let s = self.source.build()?;
        let t = self.target.build()?;
        let m = parse_matrix(s.field(), &self.matrix, t.dim(), s.dim(), "morphism")?;
        AlgebraMorphism::new(s, t, m)
    }
}

/// One surjection out of the covered algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub target: AlgebraJson,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub algebra: AlgebraJson,
    pub maps: Vec<MapJson>,
}

impl CoveringJson {
    pub fn from_parts(description: Option<String>, p: &Algebra, maps: &[AlgebraMorphism]) -> Self {
        CoveringJson {
            description,
            algebra: AlgebraJson::from_algebra(p),
            maps: maps
                .iter()
                .map(|m| MapJson { target: AlgebraJson::from_algebra(m.target()), matrix: matrix_to_json(m.matrix()) })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<(Algebra, Vec<AlgebraMorphism>)> {
        let p = self.algebra.build()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let t = m.target.build()?;
                if t.field() != p.field() {
                    return Err(Error::FieldMismatch(format!("map {} has a target over another field", i + 1)));
                }
                let mat = parse_matrix(p.field(), &m.matrix, t.dim(), p.dim(), &format!("map {}", i + 1))?;
                AlgebraMorphism::new(p.clone(), t, mat)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((p, maps))
    }
}

/// Local elements over opens, each in the coordinates of `P / R(U)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrtJson {
    #[serde(flatten)]
    pub covering: CoveringJson,
    pub opens: Vec<Vec<Vec<usize>>>,
    pub local: Vec<Vec<String>>,
}

impl CrtJson {
    pub fn parse_local(&self, n: usize, field: FieldSpec) -> Result<(Vec<Antichain>, Vec<Vec<Scalar>>)> {
        let opens = self.opens.iter().map(|l| Antichain::from_lists(n, l)).collect::<Result<Vec<_>>>()?;
        let local = self.local.iter().map(|v| parse_scalars(field, v)).collect::<Result<Vec<_>>>()?;
        Ok((opens, local))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SheafJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub field: FieldSpec,
    /// Keyed by antichain, e.g. `"[[1],[2]]"`.
    pub sections: BTreeMap<String, AlgebraJson>,
    /// Keyed by `"larger->smaller"`.
    pub restrictions: BTreeMap<String, MatrixJson>,
}

impl SheafJson {
    pub fn from_sheaf(s: &SheafData) -> Self {
        SheafJson {
            n: s.generator_count(),
            field: s.field(),
            sections: s.sections().iter().map(|(u, a)| (u.key(), AlgebraJson::from_algebra(a))).collect(),
            restrictions: s
                .restrictions()
                .iter()
                .map(|((b, sm), m)| (format!("{}->{}", b.key(), sm.key()), matrix_to_json(m)))
                .collect(),
        }
    }

    /// Parses and validates.
    pub fn build(&self, cap: usize) -> Result<SheafData> {
        let (sections, restrictions) = self.parse()?;
        SheafData::new(self.n, self.field, sections, restrictions, cap)
    }

    #[allow(clippy::type_complexity)]
    pub fn parse(&self) -> Result<(BTreeMap<Antichain, Algebra>, BTreeMap<(Antichain, Antichain), LinearMap>)> {
        let mut sections = BTreeMap::new();
        for (k, a) in &self.sections {
            let alg = a.build()?;
            if alg.field() != self.field {
                return Err(Error::FieldMismatch(format!("section over {k} has another field")));
            }
            sections.insert(Antichain::from_key(self.n, k)?, alg);
        }
        let mut restrictions = BTreeMap::new();
        for (k, m) in &self.restrictions {
            let (b, s) = k.split_once("->").ok_or_else(|| Error::Format(format!("bad restriction key {k:?}")))?;
            let (b, s) = (Antichain::from_key(self.n, b.trim())?, Antichain::from_key(self.n, s.trim())?);
            let (db, ds) = match (sections.get(&b), sections.get(&s)) {
                (Some(x), Some(y)) => (x.dim(), y.dim()),
                _ => return Err(Error::InvalidSheaf(format!("restriction {k} between opens without sections"))),
            };
            restrictions.insert((b, s), parse_matrix(self.field, m, ds, db, k)?);
        }
        Ok((sections, restrictions))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfJson {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    pub coproduct: MatrixJson,
    pub counit: MatrixJson,
    pub antipode: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode_inverse: Option<MatrixJson>,
}

impl HopfJson {
    pub fn from_hopf(h: &HopfData) -> Self {
        HopfJson {
            algebra: AlgebraJson::from_algebra(h.algebra()),
            coproduct: matrix_to_json(h.coproduct()),
            counit: matrix_to_json(h.counit()),
            antipode: matrix_to_json(h.antipode()),
            antipode_inverse: None,
        }
    }

    pub fn build(&self) -> Result<HopfData> {
        let a = self.algebra.build()?;
        let (f, n) = (a.field(), a.dim());
        let d = parse_matrix(f, &self.coproduct, n * n, n, "coproduct")?;
        let e = parse_matrix(f, &self.counit, 1, n, "counit")?;
        let s = parse_matrix(f, &self.antipode, n, n, "antipode")?;
        let si = self.antipode_inverse.as_ref().map(|m| parse_matrix(f, m, n, n, "antipode_inverse")).transpose()?;
        HopfData::new(a, d, e, s, si)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComoduleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub algebra: AlgebraJson,
    pub hopf: HopfJson,
    pub coaction: MatrixJson,
}

impl ComoduleJson {
    pub fn from_comodule(description: Option<String>, p: &ComoduleAlgebra) -> Self {
        ComoduleJson {
            description,
            algebra: AlgebraJson::from_algebra(p.algebra()),
            hopf: HopfJson::from_hopf(p.hopf()),
            coaction: matrix_to_json(p.coaction()),
        }
    }

    pub fn build(&self) -> Result<ComoduleAlgebra> {
        let a = self.algebra.build()?;
        let h = self.hopf.build()?;
        let c = parse_matrix(a.field(), &self.coaction, a.dim() * h.dim(), a.dim(), "coaction")?;
        ComoduleAlgebra::new(a, h, c)
    }
}

/// Two comodule algebras glued over a third.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GlueJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub p1: ComoduleJson,
    pub p2: ComoduleJson,
    pub p12: ComoduleJson,
    pub pi1: MatrixJson,
    pub pi2: MatrixJson,
    /// Optional connections on the pieces; solved for when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l1: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l2: Option<MatrixJson>,
}

pub struct GlueInput {
    pub p1: ComoduleAlgebra,
    pub p2: ComoduleAlgebra,
    pub p12: ComoduleAlgebra,
    pub pi1: LinearMap,
    pub pi2: LinearMap,
    pub l1: Option<LinearMap>,
    pub l2: Option<LinearMap>,
}

impl GlueJson {
    pub fn build(&self) -> Result<GlueInput> {
        let p1 = self.p1.build()?;
        let p2 = self.p2.build()?;
        let p12 = self.p12.build()?;
        let f = p1.field();
        let k = p1.hopf().dim();
        let pi1 = parse_matrix(f, &self.pi1, p12.dim(), p1.dim(), "pi1")?;
        let pi2 = parse_matrix(f, &self.pi2, p12.dim(), p2.dim(), "pi2")?;
        let l1 = self.l1.as_ref().map(|m| parse_matrix(f, m, p1.dim() * p1.dim(), k, "l1")).transpose()?;
        let l2 = self.l2.as_ref().map(|m| parse_matrix(f, m, p2.dim() * p2.dim(), k, "l2")).transpose()?;
        Ok(GlueInput { p1, p2, p12, pi1, pi2, l1, l2 })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrivializationJson {
    pub smash: ComoduleJson,
    pub iso: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceJson {
    pub comodule: ComoduleJson,
    pub map: MatrixJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivialization: Option<TrivializationJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PiecewiseJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub total: ComoduleJson,
    pub pieces: Vec<PieceJson>,
    #[serde(default)]
    pub alpha: AlphaChoice,
}

impl PiecewiseJson {
    pub fn from_parts(description: Option<String>, p: &ComoduleAlgebra, pieces: &[Piece]) -> Self {
        PiecewiseJson {
            description,
            total: ComoduleJson::from_comodule(None, p),
            pieces: pieces
                .iter()
                .map(|pc| PieceJson {
                    comodule: ComoduleJson::from_comodule(None, &pc.comodule),
                    map: matrix_to_json(&pc.map),
                    trivialization: pc.trivialization.as_ref().map(|t| TrivializationJson {
                        smash: ComoduleJson::from_comodule(None, &t.smash),
                        iso: matrix_to_json(&t.iso),
                    }),
                })
                .collect(),
            alpha: AlphaChoice::default(),
        }
    }

    pub fn build(&self) -> Result<(ComoduleAlgebra, Vec<Piece>)> {
        let p = self.total.build()?;
        let f = p.field();
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, pc)| {
                let comodule = pc.comodule.build()?;
                let map = parse_matrix(f, &pc.map, comodule.dim(), p.dim(), &format!("piece {} map", i + 1))?;
                let trivialization = pc
                    .trivialization
                    .as_ref()
                    .map(|t| -> Result<Trivialization> {
                        let smash = t.smash.build()?;
                        let iso = parse_matrix(f, &t.iso, smash.dim(), comodule.dim(), "trivialization")?;
                        Ok(Trivialization { smash, iso })
                    })
                    .transpose()?;
                Ok(Piece { comodule, map, trivialization })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((p, pieces))
    }
}

/// Asserts that an input is over the expected field.
pub fn expect_field(expected: Option<FieldSpec>, actual: FieldSpec) -> Result<()> {
    match expected {
        Some(e) if e != actual => Err(Error::FieldMismatch(format!("input is over {actual}, expected {e}"))),
        _ => Ok(()),
    }
}

/// Pretty JSON that keeps arrays of scalars (and arrays of those) on one line.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    fn flat(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Array(xs) => xs.iter().all(|x| !x.is_object() && (!x.is_array() || flat_leaf(x))),
            serde_json::Value::Object(_) => false,
            _ => true,
        }
    }
    fn flat_leaf(v: &serde_json::Value) -> bool {
        matches!(v, serde_json::Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()))
    }
    fn write(v: &serde_json::Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            serde_json::Value::Object(map) if !map.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&serde_json::Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    write(x, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            serde_json::Value::Array(xs) if !xs.is_empty() && !flat(v) => {
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    out.push_str(&pad);
                    write(x, indent + 1, out);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            _ => out.push_str(&v.to_string()),
        }
    }
    let mut out = String::new();
    write(&serde_json::to_value(value)?, 0, &mut out);
    out.push('\n');
    Ok(out)
}
