//! JSON forms of the library objects.
//!
//! Integers are written as decimal strings so that no value is limited to
//! 64 bits; plain JSON integers are accepted on input. Output goes through
//! [`serde_json::Value`], whose maps are sorted, so emitted text is
//! byte-stable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::assembly::{Chart, SchemeDescription};
use crate::duality::{AffineMap, DualityDatum};
use crate::fan::GtcFan;
use crate::generators::PeriodicConvexFunction;
use crate::lattice::{Int, IntMatrix, IntVector};
use crate::monoid::ToricMonoid;
use crate::polytope::LatticePolytope;
use crate::poset::Poset;
use crate::{Error, Result};

/// An integer serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JInt(pub Int);

impl Serialize for JInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct JIntVisitor;

impl Visitor<'_> for JIntVisitor {
    type Value = JInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JInt, E> {
        Ok(JInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JInt, E> {
        Ok(JInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JInt, E> {
        v.parse::<BigInt>().map(JInt).map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<JInt, D::Error> {
        d.deserialize_any(JIntVisitor)
    }
}

pub type JVec = Vec<JInt>;
pub type JMat = Vec<JVec>;

pub fn vec_out(v: &IntVector) -> JVec {
    v.0.iter().cloned().map(JInt).collect()
}

pub fn vec_in(v: &[JInt]) -> IntVector {
    IntVector(v.iter().map(|x| x.0.clone()).collect())
}

pub fn mat_out(m: &IntMatrix) -> JMat {
    m.row_vectors().iter().map(vec_out).collect()
}

/// Reads a matrix whose column count is known from context.
pub fn mat_in(m: &[JVec], cols: usize) -> Result<IntMatrix> {
    if let Some(r) = m.iter().find(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("matrix row of length {} where {cols} expected", r.len())));
    }
    Ok(IntMatrix::from_rows(&m.iter().map(|r| vec_in(r)).collect::<Vec<_>>(), cols))
}

fn small(x: &JInt) -> Result<i64> {
    i64::try_from(&x.0).map_err(|_| Error::Invalid(format!("{} does not fit in 64 bits", x.0)))
}

fn small_vec(v: &[JInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

/// A parse failure with the JSON path of the offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for JsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for JsonError {}

pub fn parse<T: DeserializeOwned>(text: &str) -> std::result::Result<T, JsonError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| JsonError { path: e.path().to_string(), message: e.inner().to_string() })
}

/// Sorted-key, pretty-printed JSON.
pub fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub rank: usize,
    /// Ray generators of the cone `σ` with `P = σ^∨ ∩ Z^rank`.
    pub rays: JMat,
    #[serde(default)]
    pub gorenstein_rho: Option<JVec>,
    #[serde(default)]
    pub hilbert_basis: Option<JMat>,
}

impl MonoidJson {
    pub fn from_monoid(p: &ToricMonoid) -> Result<MonoidJson> {
        let mut hilbert = p.hilbert_basis()?.to_vec();
        hilbert.sort();
        Ok(MonoidJson {
            rank: p.lattice_rank(),
            rays: p.inequality_rays().iter().map(vec_out).collect(),
            gorenstein_rho: p.gorenstein_element().map(|r| vec_out(&r)),
            hilbert_basis: Some(hilbert.iter().map(vec_out).collect()),
        })
    }

    pub fn to_monoid(&self) -> Result<ToricMonoid> {
        if let Some(r) = self.rays.iter().find(|r| r.len() != self.rank) {
            return Err(Error::Dimension(format!("ray of length {} in rank {}", r.len(), self.rank)));
        }
        ToricMonoid::new(self.rank, &self.rays.iter().map(|r| vec_in(r)).collect::<Vec<_>>())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerizationJson {
    pub x: String,
    pub y: String,
    pub map: JMat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GtcFanJson {
    pub points: Vec<String>,
    /// Covering relations `x < y`.
    pub order: Vec<(String, String)>,
    pub stalks: BTreeMap<String, MonoidJson>,
    pub rho: BTreeMap<String, JVec>,
    pub generization: Vec<GenerizationJson>,
    #[serde(default)]
    pub frontier: Vec<String>,
}

fn index(points: &[String]) -> Result<BTreeMap<&str, usize>> {
    let mut idx = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if idx.insert(p.as_str(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate point {p}")));
        }
    }
    Ok(idx)
}

fn lookup(idx: &BTreeMap<&str, usize>, p: &str) -> Result<usize> {
    idx.get(p).copied().ok_or_else(|| Error::Invalid(format!("unknown point {p}")))
}

impl GtcFanJson {
    pub fn from_fan(g: &GtcFan) -> Result<GtcFanJson> {
        let label = |x: usize| g.label(x).to_string();
        let mut stalks = BTreeMap::new();
        let mut rho = BTreeMap::new();
        for x in 0..g.len() {
            stalks.insert(label(x), MonoidJson::from_monoid(&g.gtc_stalks[x])?);
            rho.insert(label(x), vec_out(&g.rho[x]));
        }
        let mut order: Vec<(String, String)> = g.poset().hasse().into_iter().map(|(x, y)| (label(x), label(y))).collect();
        order.sort();
        let mut generization: Vec<GenerizationJson> =
            g.base.generization.iter().map(|(&(x, y), m)| GenerizationJson { x: label(x), y: label(y), map: mat_out(m) }).collect();
        generization.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
        let mut frontier: Vec<String> = g.base.frontier.iter().map(|&x| label(x)).collect();
        frontier.sort();
        Ok(GtcFanJson { points: g.poset().labels().to_vec(), order, stalks, rho, generization, frontier })
    }

    /// Rebuilds the fan; validation is left to the caller.
    pub fn to_fan(&self) -> Result<GtcFan> {
        let idx = index(&self.points)?;
        let rel = self.order.iter().map(|(x, y)| Ok((lookup(&idx, x)?, lookup(&idx, y)?))).collect::<Result<Vec<_>>>()?;
        let poset = Poset::new(self.points.clone(), &rel);
        let stalks = self
            .points
            .iter()
            .map(|p| self.stalks.get(p).ok_or_else(|| Error::Invalid(format!("no stalk at {p}")))?.to_monoid())
            .collect::<Result<Vec<_>>>()?;
        let rho = self
            .points
            .iter()
            .map(|p| self.rho.get(p).map(|r| vec_in(r)).ok_or_else(|| Error::Invalid(format!("no ρ at {p}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut gen = BTreeMap::new();
        for e in &self.generization {
            let (x, y) = (lookup(&idx, &e.x)?, lookup(&idx, &e.y)?);
            gen.insert((x, y), mat_in(&e.map, stalks[x].lattice_rank())?);
        }
        let frontier = self.frontier.iter().map(|p| lookup(&idx, p)).collect::<Result<BTreeSet<_>>>()?;
        GtcFan::from_parts(poset, stalks, rho, gen, frontier)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaJson {
    pub x: String,
    pub y: String,
    pub linear: JMat,
    pub offset: JVec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatumJson {
    pub f_side: GtcFanJson,
    pub q_side: GtcFanJson,
    pub lambda: Vec<LambdaJson>,
}

impl DatumJson {
    pub fn from_datum(d: &DualityDatum) -> Result<DatumJson> {
        let label = |x: usize| d.f_side.label(x).to_string();
        let mut lambda: Vec<LambdaJson> = d
            .lambda
            .iter()
            .map(|(&(x, y), m)| LambdaJson { x: label(x), y: label(y), linear: mat_out(&m.linear), offset: vec_out(&m.offset) })
            .collect();
        lambda.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
        Ok(DatumJson { f_side: GtcFanJson::from_fan(&d.f_side)?, q_side: GtcFanJson::from_fan(&d.q_side)?, lambda })
    }

    pub fn to_datum(&self) -> Result<DualityDatum> {
        let f_side = self.f_side.to_fan()?;
        let q_side = self.q_side.to_fan()?;
        let idx = index(&self.f_side.points)?;
        let mut lambda = BTreeMap::new();
        for l in &self.lambda {
            let (x, y) = (lookup(&idx, &l.x)?, lookup(&idx, &l.y)?);
            let y_q = q_side.base.point(&l.y).ok_or_else(|| Error::Invalid(format!("{} missing from q_side", l.y)))?;
            let linear = mat_in(&l.linear, q_side.gtc_stalks[y_q].lattice_rank())?;
            lambda.insert((x, y), AffineMap { linear, offset: vec_in(&l.offset) });
        }
        Ok(DualityDatum { f_side, q_side, lambda })
    }
}

pub fn polytope_out(p: &LatticePolytope) -> JMat {
    p.vertices().iter().map(vec_out).collect()
}

pub fn polytope_in(vertices: &[JVec]) -> Result<LatticePolytope> {
    let dim = vertices.first().map(Vec::len).ok_or_else(|| Error::Invalid("empty vertex list".into()))?;
    if vertices.iter().any(|v| v.len() != dim) {
        return Err(Error::Dimension("vertices of different lengths".into()));
    }
    LatticePolytope::new(dim, &vertices.iter().map(|v| vec_in(v)).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueJson {
    pub rep: JVec,
    pub value: JInt,
}

/// `q(x) = ½ xᵀAx + bᵀx + c`: `A` is the Hessian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionJson {
    #[serde(rename = "A")]
    pub a: JMat,
    pub b: JVec,
    pub c: JInt,
    pub lattice_prime: JMat,
    #[serde(default)]
    pub r: Vec<ResidueJson>,
}

impl FunctionJson {
    pub fn from_function(f: &PeriodicConvexFunction) -> FunctionJson {
        let row = |v: &Vec<i64>| v.iter().map(|&x| JInt(x.into())).collect::<JVec>();
        FunctionJson {
            a: f.hessian.iter().map(row).collect(),
            b: row(&f.b),
            c: JInt(f.c.into()),
            lattice_prime: f.lattice_prime.iter().map(row).collect(),
            r: f.r.iter().map(|(rep, &value)| ResidueJson { rep: row(rep), value: JInt(value.into()) }).collect(),
        }
    }

    pub fn to_function(&self) -> Result<PeriodicConvexFunction> {
        let rows = |m: &JMat| m.iter().map(|r| small_vec(r)).collect::<Result<Vec<_>>>();
        let r = self.r.iter().map(|e| Ok((small_vec(&e.rep)?, small(&e.value)?))).collect::<Result<Vec<_>>>()?;
        PeriodicConvexFunction::new(rows(&self.a)?, small_vec(&self.b)?, small(&self.c)?, rows(&self.lattice_prime)?, &r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub point: String,
    /// Vertices of the degree-one polytope in the stalk lattice.
    pub polytope: JMat,
    pub label: Option<String>,
    /// Reduced planar normal form, for surfaces.
    #[serde(default)]
    pub normal_form: Option<JMat>,
    #[serde(default)]
    pub a_types: Vec<JInt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GluingJson {
    pub closed: String,
    pub point: String,
    pub face: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartJson {
    pub point: String,
    pub monoid: MonoidJson,
    pub rho: JVec,
    pub dual_rays: JMat,
    pub generators: JMat,
    pub ideal_products: Vec<(usize, usize)>,
    pub pieces: Vec<PieceJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceJson {
    pub closed: String,
    pub generators: JMat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub components: Vec<ComponentJson>,
    pub gluing: Vec<GluingJson>,
    pub charts: Vec<ChartJson>,
}

impl ChartJson {
    pub fn from_chart(c: &Chart, label: &dyn Fn(usize) -> String) -> Result<ChartJson> {
        let mat = |v: &[IntVector]| v.iter().map(vec_out).collect::<JMat>();
        Ok(ChartJson {
            point: label(c.point),
            monoid: MonoidJson::from_monoid(&c.monoid)?,
            rho: vec_out(&c.rho),
            dual_rays: mat(&c.dual_rays),
            generators: mat(&c.generators),
            ideal_products: c.ideal_products.clone(),
            pieces: c.pieces.iter().map(|(x, g)| PieceJson { closed: label(*x), generators: mat(g) }).collect(),
        })
    }
}

impl SchemeJson {
    pub fn from_scheme(s: &SchemeDescription, g: &GtcFan) -> Result<SchemeJson> {
        use crate::assembly::SurfaceLabel;
        let label = |x: usize| g.label(x).to_string();
        let components = s
            .components
            .iter()
            .map(|c| {
                let (normal_form, a_types) = match &c.label {
                    SurfaceLabel::Polygon { normal_form, a_types } => (
                        Some(normal_form.iter().map(|p| p.iter().map(|&x| JInt(x.into())).collect()).collect()),
                        a_types.iter().map(|&a| JInt(a.into())).collect(),
                    ),
                    _ => (None, Vec::new()),
                };
                ComponentJson {
                    point: label(c.point),
                    polytope: c.polytope.vertices.iter().map(vec_out).collect(),
                    label: c.label.name().map(str::to_string),
                    normal_form,
                    a_types,
                }
            })
            .collect();
        let gluing =
            s.gluing.iter().map(|e| GluingJson { closed: label(e.closed), point: label(e.point), face: e.face.iter().copied().collect() }).collect();
        let charts = s.charts.iter().map(|c| ChartJson::from_chart(c, &label)).collect::<Result<Vec<_>>>()?;
        Ok(SchemeJson { components, gluing, charts })
    }
}
