//! Constructors for duality data: Batyrev pairs of reflexive polytopes,
//! degenerate abelian data from periodic convex functions, and the small
//! triangle and tetragon cones.

use std::collections::{BTreeMap, BTreeSet};

use crate::duality::{datum_from_facet_polytopes, DualityDatum};
use crate::fan::GtcFan;
use crate::lattice::{quotient_lattice, IntVector, QuotientLattice};
use crate::monoid::{Cone, ToricMonoid};
use crate::polytope::{dual_face, is_reflexive, polar_lattice, LatticePolytope};
use crate::poset::Poset;
use crate::{Error, Result};

mod abelian;
mod triangles;

pub use abelian::*;
pub use triangles::*;

/// A polyhedral complex given by vertex sets, from which wedge monoids are
/// formed.
pub(crate) struct WedgeComplex<'a> {
    pub rank: usize,
    pub points: &'a [IntVector],
    pub cells: &'a [BTreeSet<usize>],
    pub labels: Vec<String>,
    /// Points `w` contributing `w − v` to the wedge at each cell.
    pub star: Vec<Vec<usize>>,
    /// Further generators common to every wedge.
    pub extra: Vec<IntVector>,
    /// `ρ` at a cell as an ambient vector, given one of its vertices.
    pub rho: &'a dyn Fn(&IntVector) -> IntVector,
    pub frontier: BTreeSet<usize>,
}

pub(crate) struct Wedges {
    pub fan: GtcFan,
    pub quotients: Vec<QuotientLattice>,
}

/// The gtc fan of wedge monoids: the stalk at a cell `σ` is the saturation
/// of the monoid generated by `w − v` (`v ∈ σ`) in `Z^N / ⟨σ⟩`.
pub(crate) fn wedge_fan(c: &WedgeComplex<'_>) -> Result<Wedges> {
    let n = c.cells.len();
    let mut rel = Vec::new();
    for (i, a) in c.cells.iter().enumerate() {
        for (j, b) in c.cells.iter().enumerate() {
            if i != j && a.is_subset(b) {
                rel.push((i, j));
            }
        }
    }
    let poset = Poset::new(c.labels.clone(), &rel);
    let mut stalks = Vec::with_capacity(n);
    let mut rhos = Vec::with_capacity(n);
    let mut quotients = Vec::with_capacity(n);
    for (i, cell) in c.cells.iter().enumerate() {
        let p0 = &c.points[*cell.first().ok_or_else(|| Error::Invalid("empty cell".into()))?];
        let diffs: Vec<IntVector> = cell.iter().map(|&p| c.points[p].sub(p0)).collect();
        let q = quotient_lattice(c.rank, &diffs);
        let mut gens: Vec<IntVector> = c.star[i].iter().map(|&w| q.project(&c.points[w].sub(p0))).filter(|g| !g.is_zero()).collect();
        gens.extend(c.extra.iter().map(|e| q.project(e)));
        let cone = Cone::new(q.free_rank, &gens)?;
        if !cone.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        stalks.push(ToricMonoid::new(q.free_rank, &cone.facet_normals())?);
        rhos.push(q.project(&(c.rho)(p0)));
        quotients.push(q);
    }
    let mut gen = BTreeMap::new();
    for (x, y) in poset.strict_pairs() {
        gen.insert((x, y), quotients[y].projection.mul(&quotients[x].section));
    }
    let fan = GtcFan::from_parts(poset, stalks, rhos, gen, c.frontier.clone())?;
    Ok(Wedges { fan, quotients })
}

/// Polytopes `Δ_xy = y − x` for every closed `x` and generic `y ⊇ x`,
/// in the stalk coordinates of `x`.
pub(crate) fn cell_deltas(
    fan: &GtcFan,
    quotients: &[QuotientLattice],
    points: &[IntVector],
    cells: &[BTreeSet<usize>],
) -> BTreeMap<(usize, usize), Vec<IntVector>> {
    let mut deltas = BTreeMap::new();
    for x in fan.closed_points() {
        let v = &points[*cells[x].first().expect("nonempty cell")];
        for y in fan.generic_points() {
            if fan.poset().leq(x, y) {
                let d = cells[y].iter().map(|&u| quotients[x].project(&points[u].sub(v))).collect();
                deltas.insert((x, y), d);
            }
        }
    }
    deltas
}

/// Faces of a polytope as fan points, labelled by their vertex sets.
fn face_labels(cells: &[BTreeSet<usize>]) -> Vec<String> {
    cells.iter().map(|c| format!("{{{}}}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(","))).collect()
}

/// The Batyrev datum of a reflexive polytope `Δ`: `F` is the poset of
/// proper faces of `Δ`, `P_σ` the wedge monoid of `Δ` along `σ` and `ρ_σ`
/// the class of `−v` for `v ∈ σ`.
#[derive(Clone, Debug)]
pub struct BatyrevDatum {
    pub polytope: LatticePolytope,
    /// Proper faces as vertex index sets, in fan point order.
    pub faces: Vec<BTreeSet<usize>>,
    pub datum: DualityDatum,
}

pub fn batyrev_datum(delta: &LatticePolytope) -> Result<BatyrevDatum> {
    if !is_reflexive(delta) {
        return Err(Error::NotReflexive);
    }
    let faces = delta.proper_faces();
    let verts = delta.vertices();
    let all: Vec<usize> = (0..verts.len()).collect();
    let rho = |p: &IntVector| p.neg();
    let complex = WedgeComplex {
        rank: delta.dim(),
        points: verts,
        cells: &faces,
        labels: face_labels(&faces),
        star: vec![all; faces.len()],
        extra: Vec::new(),
        rho: &rho,
        frontier: BTreeSet::new(),
    };
    let w = wedge_fan(&complex)?;
    let deltas = cell_deltas(&w.fan, &w.quotients, verts, &faces);
    let datum = datum_from_facet_polytopes(&w.fan, &deltas)?;
    Ok(BatyrevDatum { polytope: delta.clone(), faces, datum })
}

/// For Batyrev data of `Δ` and `Δ°`, the point bijection `σ ↦ σ*`.
pub fn batyrev_mirror_map(a: &BatyrevDatum, b: &BatyrevDatum) -> Result<Vec<usize>> {
    a.faces
        .iter()
        .map(|f| {
            let d = dual_face(&a.polytope, &b.polytope, f);
            b.faces.iter().position(|g| *g == d).ok_or_else(|| Error::Invalid("dual face missing".into()))
        })
        .collect()
}

/// The Batyrev datum of the polar polytope.
pub fn batyrev_dual(a: &BatyrevDatum) -> Result<BatyrevDatum> {
    batyrev_datum(&polar_lattice(&a.polytope)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{cone_identification, datum_isomorphism, mirror, validate_duality};

    fn cross() -> LatticePolytope {
        LatticePolytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    #[test]
    fn cross_polytope_datum_validates() {
        let b = batyrev_datum(&cross()).unwrap();
        assert_eq!(b.datum.f_side.len(), 8);
        assert_eq!(b.datum.f_side.closed_points().len(), 4);
        let r = validate_duality(&b.datum);
        assert!(r.passed(), "{r}");
        for (x, y) in b.datum.incident_pairs() {
            assert!(cone_identification(&b.datum, x, y).unwrap().holds());
        }
    }

    #[test]
    fn mirror_matches_polar() {
        let b = batyrev_datum(&cross()).unwrap();
        let d = batyrev_dual(&b).unwrap();
        let m = mirror(&b.datum).unwrap();
        let map = batyrev_mirror_map(&b, &d).unwrap();
        datum_isomorphism(&m, &d.datum, &map).unwrap();
        let mm = mirror(&m).unwrap();
        assert_eq!(mm.lambda, b.datum.lambda);
    }

    #[test]
    fn segment_gives_two_points() {
        let s = LatticePolytope::from_i64(&[&[-1], &[1]]).unwrap();
        let b = batyrev_datum(&s).unwrap();
        assert_eq!(b.datum.f_side.len(), 2);
        assert!(validate_duality(&b.datum).passed());
    }

    #[test]
    fn non_reflexive_rejected() {
        let s = LatticePolytope::from_i64(&[&[-2], &[2]]).unwrap();
        assert!(matches!(batyrev_datum(&s), Err(Error::NotReflexive)));
    }

    #[test]
    fn every_reflexive_polygon() {
        for hull in crate::polygon::classes(&crate::polygon::one_point_polygons(3)) {
            let delta = LatticePolytope::new(2, &crate::polygon::to_vectors(&hull)).unwrap();
            let b = batyrev_datum(&delta).unwrap();
            assert!(validate_duality(&b.datum).passed(), "{hull:?}");
            let d = batyrev_dual(&b).unwrap();
            let m = mirror(&b.datum).unwrap();
            datum_isomorphism(&m, &d.datum, &batyrev_mirror_map(&b, &d).unwrap()).unwrap();
        }
    }
}
