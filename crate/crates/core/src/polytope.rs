//! Lattice polytopes, polarity and reflexivity.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::{Int, IntVector, Rat};
use crate::monoid::Cone;
use crate::{Error, Result};

/// Convex hull of finitely many lattice points, stored by its vertices in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
}

/// Facet inequality `⟨normal, x⟩ + offset ≥ 0` with primitive `(normal, offset)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: Int,
}

impl LatticePolytope {
    pub fn new(dim: usize, points: &[IntVector]) -> Result<LatticePolytope> {
        if points.is_empty() {
            return Err(Error::Invalid("empty polytope".into()));
        }
        if let Some(p) = points.iter().find(|p| p.rank() != dim) {
            return Err(Error::Dimension(format!("point {p:?} in dimension {dim}")));
        }
        let lifted: Vec<IntVector> = points.iter().map(|p| p.concat(&[Int::from(1)])).collect();
        let cone = Cone::new(dim + 1, &lifted)?;
        let mut vertices: Vec<IntVector> = cone.rays().iter().map(|r| IntVector(r.0[..dim].to_vec())).collect();
        vertices.sort();
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<LatticePolytope> {
        let pts: Vec<IntVector> = points.iter().map(|p| IntVector::from_i64(p)).collect();
        let dim = pts.first().map_or(0, IntVector::rank);
        LatticePolytope::new(dim, &pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    /// Cone over the polytope placed at height one.
    pub fn cone(&self) -> Cone {
        let lifted: Vec<IntVector> = self.vertices.iter().map(|p| p.concat(&[Int::from(1)])).collect();
        Cone::new(self.dim + 1, &lifted).expect("cone over a polytope is pointed")
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.cone().is_full_dimensional()
    }

    pub fn facets(&self) -> Vec<Facet> {
        let mut out: Vec<Facet> = self
            .cone()
            .facet_normals()
            .into_iter()
            .map(|n| Facet { normal: IntVector(n.0[..self.dim].to_vec()), offset: n.0[self.dim].clone() })
            .collect();
        out.sort();
        out
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.cone().contains(&x.concat(&[Int::from(1)]))
    }

    /// All lattice points, sorted.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let n = self.dim;
        let lo: Vec<Int> = (0..n).map(|i| self.vertices.iter().map(|v| v.0[i].clone()).min().expect("nonempty")).collect();
        let hi: Vec<Int> = (0..n).map(|i| self.vertices.iter().map(|v| v.0[i].clone()).max().expect("nonempty")).collect();
        let cone = self.cone();
        let normals = cone.facet_normals();
        let frame = cone.frame();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let v = IntVector(cur.clone()).concat(&[Int::from(1)]);
            if frame.contains(&v) && normals.iter().all(|m| !m.dot(&v).is_negative()) {
                out.push(IntVector(cur.clone()));
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return out;
                }
                cur[i] += 1;
                if cur[i] > hi[i] {
                    cur[i] = lo[i].clone();
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        let normals: Vec<IntVector> = self.cone().facet_normals();
        self.lattice_points()
            .into_iter()
            .filter(|p| {
                let v = p.concat(&[Int::from(1)]);
                normals.iter().all(|m| m.dot(&v).is_positive())
            })
            .collect()
    }

    /// Nonempty faces as sets of vertex indices, the polytope itself last.
    pub fn faces(&self) -> Vec<BTreeSet<usize>> {
        let cone = self.cone();
        let order: Vec<usize> = self
            .vertices
            .iter()
            .map(|v| {
                let lifted = v.concat(&[Int::from(1)]);
                cone.rays().iter().position(|r| *r == lifted).expect("vertex is a ray")
            })
            .collect();
        let mut faces: Vec<(usize, BTreeSet<usize>)> = cone
            .faces()
            .into_iter()
            .filter(|f| !f.ray_subset.is_empty())
            .map(|f| {
                let set: BTreeSet<usize> = (0..self.vertices.len()).filter(|&i| f.ray_subset.contains(&order[i])).collect();
                (f.dim, set)
            })
            .collect();
        faces.sort();
        faces.into_iter().map(|(_, s)| s).collect()
    }

    /// Proper nonempty faces.
    pub fn proper_faces(&self) -> Vec<BTreeSet<usize>> {
        let mut f = self.faces();
        f.pop();
        f
    }

    /// Image under `x ↦ a·x + b`.
    pub fn transform(&self, a: &crate::lattice::IntMatrix, b: &IntVector) -> LatticePolytope {
        let pts: Vec<IntVector> = self.vertices.iter().map(|v| a.apply(v).add(b)).collect();
        LatticePolytope::new(self.dim, &pts).expect("affine image of a polytope")
    }
}

/// A polytope with rational vertices (the polar of a lattice polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub vertices: Vec<Vec<Rat>>,
}

impl RationalPolytope {
    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(Rat::is_integer))
    }

    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        if !self.is_integral() {
            return None;
        }
        let pts: Vec<IntVector> = self.vertices.iter().map(|v| IntVector(v.iter().map(Rat::to_integer).collect())).collect();
        let dim = pts.first().map_or(0, IntVector::rank);
        LatticePolytope::new(dim, &pts).ok()
    }
}

/// `Δ° = {m : ⟨m, v⟩ ≥ −1 for v ∈ Δ}`; one vertex per facet of `Δ`.
pub fn polar(delta: &LatticePolytope) -> Result<RationalPolytope> {
    let n = delta.dim();
    if !delta.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let facets = delta.facets();
    if facets.iter().any(|f| !f.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let mut vertices: Vec<Vec<Rat>> = facets.iter().map(|f| (0..n).map(|i| Rat::new(f.normal.0[i].clone(), f.offset.clone())).collect()).collect();
    vertices.sort();
    Ok(RationalPolytope { vertices })
}

pub fn is_reflexive(delta: &LatticePolytope) -> bool {
    if !delta.is_full_dimensional() {
        return false;
    }
    let origin = IntVector::zeros(delta.dim());
    if delta.interior_lattice_points() != vec![origin] {
        return false;
    }
    let Some(dual) = polar(delta).ok().and_then(|p| p.to_lattice()) else { return false };
    let back = polar(&dual).ok().and_then(|p| p.to_lattice());
    debug_assert_eq!(back.as_ref(), Some(delta), "polar is not an involution");
    back.as_ref() == Some(delta)
}

/// The polar of a reflexive polytope as a lattice polytope.
pub fn polar_lattice(delta: &LatticePolytope) -> Result<LatticePolytope> {
    polar(delta)?.to_lattice().ok_or(Error::NotReflexive)
}

/// Vertices of the face of `Δ°` dual to the face of `Δ` spanned by `face`.
pub fn dual_face(delta: &LatticePolytope, dual: &LatticePolytope, face: &BTreeSet<usize>) -> BTreeSet<usize> {
    let minus_one = Int::from(-1);
    (0..dual.vertices().len()).filter(|&j| face.iter().all(|&i| dual.vertices()[j].dot(&delta.vertices()[i]) == minus_one)).collect()
}

/// Lattice length of a segment between lattice points.
pub fn lattice_length(a: &IntVector, b: &IntVector) -> Int {
    b.sub(a).0.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rat {
        Rat::new(Int::from(a), Int::from(b))
    }

    #[test]
    fn polar_of_cross_polytope_is_square() {
        let cross = LatticePolytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        let sq = polar_lattice(&cross).unwrap();
        assert_eq!(sq, LatticePolytope::from_i64(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap());
        assert_eq!(polar_lattice(&sq).unwrap(), cross);
    }

    #[test]
    fn polar_of_triangle() {
        let t = LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let p = polar(&t).unwrap();
        let mut expect = vec![vec![r(2, 1), r(-1, 1)], vec![r(-1, 1), r(2, 1)], vec![r(-1, 1), r(-1, 1)]];
        expect.sort();
        assert_eq!(p.vertices, expect);
        assert!(is_reflexive(&t));
    }

    #[test]
    fn long_segment_is_not_reflexive() {
        let s = LatticePolytope::from_i64(&[&[-2], &[2]]).unwrap();
        assert!(!is_reflexive(&s));
        assert_eq!(s.interior_lattice_points().len(), 3);
        assert!(is_reflexive(&LatticePolytope::from_i64(&[&[-1], &[1]]).unwrap()));
    }

    #[test]
    fn origin_must_be_interior() {
        let t = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(polar(&t), Err(Error::OriginNotInterior));
    }

    #[test]
    fn face_counts_of_square() {
        let sq = LatticePolytope::from_i64(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]]).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.proper_faces().len(), 8);
        assert_eq!(sq.lattice_points().len(), 9);
    }
}
