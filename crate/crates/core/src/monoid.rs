//! Rational polyhedral cones and toric monoids `P = σ^∨ ∩ M`.
//!
//! A [`ToricMonoid`] is stored dually, by the primitive ray generators of
//! `σ`; membership is a sign check of inner products. Faces of `P` are
//! indexed by faces of `σ` (a subset `T` of its rays gives the face
//! `P ∩ T^⊥`, whose complement is the prime ideal of the point).

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    integer_kernel, rational_row_echelon, smith_normal_form, solve_integer, solve_rational, Int, IntMatrix, IntVector, Rat, SpanFrame,
};
use crate::poset::Poset;

fn rank_of(vectors: &[IntVector], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(vectors, n).rank()
}

/// Facet normals of a full-dimensional cone in `Z^r` generated by `gens`.
/// Lineality is allowed; the result is empty when the cone is everything.
fn facet_normals_full(gens: &[IntVector], r: usize) -> Vec<IntVector> {
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    if r == 0 {
        return Vec::new();
    }
    let idx: Vec<usize> = (0..gens.len()).collect();
    for subset in idx.iter().copied().combinations(r.saturating_sub(1)) {
        let rows: Vec<IntVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let m = IntMatrix::from_rows(&rows, r);
        if rows.len() != r - 1 || m.rank() != r - 1 {
            continue;
        }
        let ker = integer_kernel(&m);
        let k = &ker[0];
        let (mut pos, mut neg) = (false, false);
        for g in gens {
            let s = k.dot(g);
            pos |= s.is_positive();
            neg |= s.is_negative();
        }
        match (pos, neg) {
            (true, false) => {
                out.insert(k.primitive());
            }
            (false, true) => {
                out.insert(k.neg().primitive());
            }
            _ => {}
        }
    }
    out.into_iter().collect()
}

/// Face of a cone: the rays it contains, plus a supporting functional that
/// vanishes on exactly those rays and is positive on the others.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub ray_subset: BTreeSet<usize>,
    pub certificate: IntVector,
}

/// Pointed rational polyhedral cone, stored by primitive extremal rays in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVector>,
}

impl Cone {
    /// Normalizes generators to primitive extremal rays. Fails if the cone
    /// contains a line.
    pub fn new(ambient_rank: usize, generators: &[IntVector]) -> Result<Cone> {
        for g in generators {
            if g.rank() != ambient_rank {
                return Err(Error::Dimension(format!("generator {g:?} in rank {ambient_rank}")));
            }
        }
        let gens: Vec<IntVector> =
            generators.iter().filter(|g| !g.is_zero()).map(IntVector::primitive).collect::<BTreeSet<_>>().into_iter().collect();
        if gens.is_empty() {
            return Ok(Cone { ambient_rank, rays: Vec::new() });
        }
        let frame = SpanFrame::of(&gens, ambient_rank);
        let r = frame.rank();
        let local: Vec<IntVector> = gens.iter().map(|g| frame.to_coords(g)).collect();
        let normals = facet_normals_full(&local, r);
        if rank_of(&normals, r) != r {
            return Err(Error::NotPointed);
        }
        let rays = gens
            .iter()
            .zip(&local)
            .filter(|(_, c)| {
                let tight: Vec<IntVector> = normals.iter().filter(|n| n.dot(c).is_zero()).cloned().collect();
                rank_of(&tight, r) == r - 1
            })
            .map(|(g, _)| g.clone())
            .collect();
        Ok(Cone { ambient_rank, rays })
    }

    pub fn from_i64(rays: &[&[i64]]) -> Result<Cone> {
        let gens: Vec<IntVector> = rays.iter().map(|r| IntVector::from_i64(r)).collect();
        let n = gens.first().map_or(0, IntVector::rank);
        Cone::new(n, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        rank_of(&self.rays, self.ambient_rank)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_rank
    }

    pub fn frame(&self) -> SpanFrame {
        SpanFrame::of(&self.rays, self.ambient_rank)
    }

    /// Rational membership test.
    pub fn contains(&self, v: &IntVector) -> bool {
        let frame = self.frame();
        if !frame.contains(v) {
            return false;
        }
        let c = frame.to_coords(v);
        self.local_facets(&frame).iter().all(|n| !n.dot(&c).is_negative())
    }

    fn local_facets(&self, frame: &SpanFrame) -> Vec<IntVector> {
        let local: Vec<IntVector> = self.rays.iter().map(|g| frame.to_coords(g)).collect();
        facet_normals_full(&local, frame.rank())
    }

    /// Inner facet normals as ambient functionals (vanishing on the facet,
    /// nonnegative on the cone). For full-dimensional cones these are the
    /// rays of the dual cone.
    pub fn facet_normals(&self) -> Vec<IntVector> {
        let frame = self.frame();
        let lift = frame.coords.transpose();
        self.local_facets(&frame).iter().map(|n| lift.apply(n).primitive()).collect()
    }

    /// `{m : ⟨m, v⟩ ≥ 0 for all v ∈ c}`. Non-full-dimensional cones are
    /// rejected; use [`Cone::dual_in_span`] to dualize inside the span.
    pub fn dual(&self) -> Result<Cone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Cone::new(self.ambient_rank, &self.facet_normals())
    }

    /// Dual cone computed in the saturated lattice of the span, expressed in
    /// the coordinates of [`Cone::frame`].
    pub fn dual_in_span(&self) -> Result<Cone> {
        let frame = self.frame();
        Cone::new(frame.rank(), &self.local_facets(&frame))
    }

    /// Complete face lattice, including the zero face and the cone itself,
    /// ordered by dimension and then by ray subset.
    pub fn faces(&self) -> Vec<Face> {
        let frame = self.frame();
        let local: Vec<IntVector> = self.rays.iter().map(|g| frame.to_coords(g)).collect();
        let normals = facet_normals_full(&local, frame.rank());
        let lift = frame.coords.transpose();
        let facet_sets: Vec<BTreeSet<usize>> = normals.iter().map(|n| (0..local.len()).filter(|&i| n.dot(&local[i]).is_zero()).collect()).collect();
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        found.insert(all.clone());
        let mut frontier = vec![all];
        while let Some(f) = frontier.pop() {
            for fs in &facet_sets {
                let g: BTreeSet<usize> = f.intersection(fs).copied().collect();
                if found.insert(g.clone()) {
                    frontier.push(g);
                }
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|subset| {
                let mut cert = IntVector::zeros(frame.rank());
                for (n, fs) in normals.iter().zip(&facet_sets) {
                    if subset.is_subset(fs) {
                        cert = cert.add(n);
                    }
                }
                let rays: Vec<IntVector> = subset.iter().map(|&i| self.rays[i].clone()).collect();
                Face { dim: rank_of(&rays, self.ambient_rank), ray_subset: subset, certificate: lift.apply(&cert) }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.ray_subset).cmp(&(b.dim, &b.ray_subset)));
        faces
    }

    pub fn face_rays(&self, face: &Face) -> Vec<IntVector> {
        face.ray_subset.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// The Gorenstein element: the lattice point taking value 1 on every
    /// primitive ray generator, if there is one.
    pub fn gorenstein_element(&self) -> Option<IntVector> {
        if self.rays.is_empty() {
            return Some(IntVector::zeros(self.ambient_rank));
        }
        let a = IntMatrix::from_rows(&self.rays, self.ambient_rank);
        let ones = IntVector(vec![Int::one(); self.rays.len()]);
        let rho = solve_integer(&a, &ones)?;
        debug_assert!(
            !self.is_full_dimensional() || ToricMonoid::from_cone(self).stanley_check(&rho, 2),
            "Gorenstein element violates rho + P = int(P)"
        );
        Some(rho)
    }

    /// Whether every 2-dimensional face is spanned by a basis of the
    /// saturation of its span.
    pub fn is_r2(&self) -> bool {
        self.faces().iter().filter(|f| f.dim == 2).all(|f| {
            let rays = self.face_rays(f);
            let m = IntMatrix::from_rows(&rays, self.ambient_rank);
            let s = smith_normal_form(&m);
            s.invariant_factors().iter().all(One::is_one)
        })
    }
}

/// `is_gorenstein` from the operation list.
pub fn is_gorenstein(c: &Cone) -> Option<IntVector> {
    c.gorenstein_element()
}

pub fn is_r2(c: &Cone) -> bool {
    c.is_r2()
}

pub fn dual_cone(c: &Cone) -> Result<Cone> {
    c.dual()
}

/// Fine saturated monoid `{m ∈ Z^n : ⟨m, r⟩ ≥ 0 for every ray r of σ}`.
#[derive(Debug)]
pub struct ToricMonoid {
    lattice_rank: usize,
    inequality_rays: Vec<IntVector>,
    hilbert: OnceLock<Vec<IntVector>>,
}

impl Clone for ToricMonoid {
    fn clone(&self) -> Self {
        ToricMonoid { lattice_rank: self.lattice_rank, inequality_rays: self.inequality_rays.clone(), hilbert: self.hilbert.clone() }
    }
}

impl PartialEq for ToricMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.lattice_rank == other.lattice_rank && self.inequality_rays == other.inequality_rays
    }
}

impl Eq for ToricMonoid {}

/// Localization of a monoid at a face, with the generization map.
#[derive(Clone, Debug)]
pub struct Localization {
    pub monoid: ToricMonoid,
    /// `m ↦ map · m`, from the parent lattice onto the localized one.
    pub map: IntMatrix,
    pub frame: SpanFrame,
}

impl ToricMonoid {
    pub fn new(lattice_rank: usize, inequality_rays: &[IntVector]) -> Result<ToricMonoid> {
        let cone = Cone::new(lattice_rank, inequality_rays)?;
        Ok(Self::from_cone(&cone))
    }

    pub fn from_i64(lattice_rank: usize, rays: &[&[i64]]) -> Result<ToricMonoid> {
        let rays: Vec<IntVector> = rays.iter().map(|r| IntVector::from_i64(r)).collect();
        Self::new(lattice_rank, &rays)
    }

    /// `σ^∨ ∩ M` for the cone `σ`.
    pub fn from_cone(sigma: &Cone) -> ToricMonoid {
        ToricMonoid { lattice_rank: sigma.ambient_rank, inequality_rays: sigma.rays.clone(), hilbert: OnceLock::new() }
    }

    /// `N^n`.
    pub fn orthant(n: usize) -> ToricMonoid {
        let rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
        Self::new(n, &rays).expect("orthant is pointed")
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn inequality_rays(&self) -> &[IntVector] {
        &self.inequality_rays
    }

    /// The cone `σ` whose dual defines the monoid.
    pub fn cone(&self) -> Cone {
        Cone { ambient_rank: self.lattice_rank, rays: self.inequality_rays.clone() }
    }

    pub fn is_sharp(&self) -> bool {
        rank_of(&self.inequality_rays, self.lattice_rank) == self.lattice_rank
    }

    pub fn contains(&self, m: &IntVector) -> bool {
        m.rank() == self.lattice_rank && self.inequality_rays.iter().all(|r| !m.dot(r).is_negative())
    }

    pub fn is_interior(&self, m: &IntVector) -> bool {
        m.rank() == self.lattice_rank && self.inequality_rays.iter().all(|r| m.dot(r).is_positive())
    }

    /// A grading positive on `P \ {0}` (the sum of the rays of `σ`).
    pub fn grading(&self) -> IntVector {
        self.inequality_rays.iter().fold(IntVector::zeros(self.lattice_rank), |acc, r| acc.add(r))
    }

    /// Primitive generators of the extremal rays of the real cone of `P`.
    pub fn extremal_generators(&self) -> Result<Vec<IntVector>> {
        if !self.is_sharp() {
            return Err(Error::NotSharp);
        }
        if self.lattice_rank == 0 {
            return Ok(Vec::new());
        }
        Ok(Cone::new(self.lattice_rank, &self.cone().facet_normals())?.rays)
    }

    /// The dual monoid `Hom(P, N) = σ ∩ N`, in the dual coordinates.
    pub fn dual(&self) -> Result<ToricMonoid> {
        let gens = self.extremal_generators()?;
        ToricMonoid::new(self.lattice_rank, &gens)
    }

    pub fn gorenstein_element(&self) -> Option<IntVector> {
        self.cone().gorenstein_element()
    }

    /// Bounded check of `ρ + P = int(P)` over lattice points of degree at
    /// most `factor · deg(ρ)` for the grading [`ToricMonoid::grading`].
    pub fn stanley_check(&self, rho: &IntVector, factor: i64) -> bool {
        if !self.contains(rho) {
            return false;
        }
        let g = self.grading();
        let bound = g.dot(rho) * Int::from(factor.max(1)) + Int::one();
        let Ok(points) = self.points_up_to_degree(&g, &bound) else { return false };
        points.iter().all(|m| self.is_interior(m) == self.contains(&m.sub(rho)))
    }

    /// All lattice points of `P` with `⟨m, g⟩ ≤ bound`; `g` must be positive
    /// on `P \ {0}`. Brute force over a bounding box.
    pub fn points_up_to_degree(&self, g: &IntVector, bound: &Int) -> Result<Vec<IntVector>> {
        let n = self.lattice_rank;
        let gens = self.extremal_generators()?;
        let mut lo = vec![Int::zero(); n];
        let mut hi = vec![Int::zero(); n];
        for e in &gens {
            let d = e.dot(g);
            if !d.is_positive() {
                return Err(Error::Invalid("grading is not positive on the monoid".into()));
            }
            for i in 0..n {
                let x = Rat::new(&e.0[i] * bound, d.clone());
                let (f, c) = (x.floor().to_integer(), x.ceil().to_integer());
                if f < lo[i] {
                    lo[i] = f;
                }
                if c > hi[i] {
                    hi[i] = c;
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let v = IntVector(cur.clone());
            if self.contains(&v) && &v.dot(g) <= bound {
                out.push(v);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return Ok(out);
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

    /// The unique minimal generating set, sorted lexicographically.
    pub fn hilbert_basis(&self) -> Result<&[IntVector]> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h);
        }
        let computed = self.compute_hilbert_basis()?;
        Ok(self.hilbert.get_or_init(|| computed))
    }

    fn compute_hilbert_basis(&self) -> Result<Vec<IntVector>> {
        let n = self.lattice_rank;
        let gens = self.extremal_generators()?;
        if n == 0 {
            return Ok(Vec::new());
        }
        let mut candidates: BTreeSet<IntVector> = gens.iter().cloned().collect();
        for subset in (0..gens.len()).combinations(n) {
            let cols: Vec<IntVector> = subset.iter().map(|&i| gens[i].clone()).collect();
            let basis = IntMatrix::from_cols(&cols, n);
            if basis.det().is_zero() {
                continue;
            }
            parallelepiped_points(&basis, &mut candidates);
        }
        let g = self.grading();
        let mut ordered: Vec<IntVector> = candidates.into_iter().filter(|c| !c.is_zero()).collect();
        ordered.sort_by(|a, b| (a.dot(&g), &a.0).cmp(&(b.dot(&g), &b.0)));
        let mut basis: Vec<IntVector> = Vec::new();
        for x in ordered {
            if !basis.iter().any(|h| self.contains(&x.sub(h))) {
                basis.push(x);
            }
        }
        basis.sort();
        Ok(basis)
    }

    /// Faces of `σ` (equivalently of `P`, order-reversed).
    pub fn faces(&self) -> Vec<Face> {
        self.cone().faces()
    }

    /// Elements of the face of `P` cut out by `face`.
    pub fn face_contains(&self, face: &Face, m: &IntVector) -> bool {
        self.contains(m) && face.ray_subset.iter().all(|&i| m.dot(&self.inequality_rays[i]).is_zero())
    }

    /// `P_𝔭 = S^{-1}P / units` for the face `S = P ∩ T^⊥` given by the ray
    /// subset `T` of `face`.
    pub fn localize(&self, face: &Face) -> Result<Localization> {
        let rays: Vec<IntVector> = face.ray_subset.iter().map(|&i| self.inequality_rays[i].clone()).collect();
        let frame = SpanFrame::of(&rays, self.lattice_rank);
        let local: Vec<IntVector> = rays.iter().map(|r| frame.to_coords(r)).collect();
        let monoid = ToricMonoid::new(frame.rank(), &local)?;
        Ok(Localization { monoid, map: frame.basis.clone(), frame })
    }

    /// `P ∕∕ (ρ + P)`.
    pub fn ideal_quotient(&self, rho: &IntVector) -> Result<QuotientMonoid> {
        if !self.contains(rho) {
            return Err(Error::NotInMonoid(rho.clone()));
        }
        Ok(QuotientMonoid { base: self.clone(), generator: rho.clone() })
    }

    /// A lattice automorphism carrying `self` onto `other`, found by matching
    /// Hilbert bases (exhaustive; fine at the ranks used here).
    pub fn isomorphism(&self, other: &ToricMonoid) -> Option<IntMatrix> {
        if self.lattice_rank != other.lattice_rank || self.is_sharp() != other.is_sharp() || !self.is_sharp() {
            return None;
        }
        let n = self.lattice_rank;
        if n == 0 {
            return Some(IntMatrix::identity(0));
        }
        let h1 = self.hilbert_basis().ok()?;
        let h2 = other.hilbert_basis().ok()?;
        if h1.len() != h2.len() {
            return None;
        }
        let mut chosen: Vec<IntVector> = Vec::new();
        for h in h1 {
            let mut trial = chosen.clone();
            trial.push(h.clone());
            if rank_of(&trial, n) == trial.len() {
                chosen = trial;
            }
            if chosen.len() == n {
                break;
            }
        }
        let src = IntMatrix::from_cols(&chosen, n);
        let src_inv = rational_inverse_matrix(&src)?;
        let target: HashSet<&IntVector> = h2.iter().collect();
        for images in (0..h2.len()).permutations(n) {
            let dst = IntMatrix::from_cols(&images.iter().map(|&i| h2[i].clone()).collect::<Vec<_>>(), n);
            let Some(g) = integral_product(&dst, &src_inv) else { continue };
            if !g.is_unimodular() {
                continue;
            }
            if h1.iter().all(|h| target.contains(&g.apply(h))) {
                return Some(g);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &ToricMonoid) -> bool {
        self.isomorphism(other).is_some()
    }
}

fn rational_inverse_matrix(m: &IntMatrix) -> Option<Vec<Vec<Rat>>> {
    let n = m.rows();
    let mut out = vec![vec![Rat::zero(); n]; n];
    let rows: Vec<Vec<Rat>> = m.row_vectors().iter().map(IntVector::to_rat).collect();
    for j in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        let col = solve_rational(&rows, &e)?;
        for i in 0..n {
            out[i][j] = col[i].clone();
        }
    }
    Some(out)
}

fn integral_product(a: &IntMatrix, b: &[Vec<Rat>]) -> Option<IntMatrix> {
    let n = a.rows();
    let k = b.first().map_or(0, Vec::len);
    let mut out = IntMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            let mut s = Rat::zero();
            for (l, row) in b.iter().enumerate() {
                s += Rat::from_integer(a.get(i, l).clone()) * &row[j];
            }
            if !s.is_integer() {
                return None;
            }
            out.set(i, j, s.to_integer());
        }
    }
    Some(out)
}

/// Adds the lattice points of the half-open parallelepiped spanned by the
/// columns of `basis` to `out`.
fn parallelepiped_points(basis: &IntMatrix, out: &mut BTreeSet<IntVector>) {
    let n = basis.rows();
    let s = smith_normal_form(basis);
    let u_inv = s.u.inverse_unimodular().expect("unimodular");
    let inv = rational_inverse_matrix(basis).expect("nonsingular");
    let divisors: Vec<Int> = (0..n).map(|i| s.d.get(i, i).clone()).collect();
    let mut y = vec![Int::zero(); n];
    loop {
        let x = u_inv.apply(&IntVector(y.clone()));
        let mut red = x.clone();
        let lambda: Vec<Rat> = (0..n).map(|i| (0..n).map(|l| &inv[i][l] * Rat::from_integer(x.0[l].clone())).sum::<Rat>()).collect();
        for (i, l) in lambda.iter().enumerate() {
            let f = l.floor().to_integer();
            if !f.is_zero() {
                red = red.sub(&basis.col(i).scale(&f));
            }
        }
        out.insert(red);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            y[i] += 1;
            if y[i] >= divisors[i] {
                y[i] = Int::zero();
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// `(P ∖ J) ∪ {∞}` for the ideal `J = ρ + P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMonoid {
    pub base: ToricMonoid,
    pub generator: IntVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientElement {
    Finite(IntVector),
    Infinity,
}

impl QuotientMonoid {
    pub fn in_ideal(&self, m: &IntVector) -> bool {
        self.base.contains(&m.sub(&self.generator))
    }

    /// The canonical map `P → P ∕∕ J`.
    pub fn project(&self, m: &IntVector) -> Result<QuotientElement> {
        if !self.base.contains(m) {
            return Err(Error::NotInMonoid(m.clone()));
        }
        Ok(if self.in_ideal(m) { QuotientElement::Infinity } else { QuotientElement::Finite(m.clone()) })
    }

    pub fn add(&self, a: &QuotientElement, b: &QuotientElement) -> QuotientElement {
        match (a, b) {
            (QuotientElement::Infinity, _) | (_, QuotientElement::Infinity) => QuotientElement::Infinity,
            (QuotientElement::Finite(x), QuotientElement::Finite(y)) => {
                let s = x.add(y);
                if self.in_ideal(&s) {
                    QuotientElement::Infinity
                } else {
                    QuotientElement::Finite(s)
                }
            }
        }
    }

    pub fn zero(&self) -> QuotientElement {
        if self.in_ideal(&IntVector::zeros(self.base.lattice_rank())) {
            QuotientElement::Infinity
        } else {
            QuotientElement::Finite(IntVector::zeros(self.base.lattice_rank()))
        }
    }

    /// Finite elements of degree at most `bound`, followed by `∞`.
    pub fn elements_up_to_degree(&self, bound: &Int) -> Result<Vec<QuotientElement>> {
        let g = self.base.grading();
        let mut out: Vec<QuotientElement> =
            self.base.points_up_to_degree(&g, bound)?.into_iter().filter(|m| !self.in_ideal(m)).map(QuotientElement::Finite).collect();
        out.push(QuotientElement::Infinity);
        Ok(out)
    }

    /// Hilbert basis elements of the base outside the ideal; together with
    /// `∞` they generate the quotient.
    pub fn generators(&self) -> Result<Vec<IntVector>> {
        Ok(self.base.hilbert_basis()?.iter().filter(|h| !self.in_ideal(h)).cloned().collect())
    }
}

/// A monoid presented in coordinates of a sublattice, with the embedding.
#[derive(Clone, Debug)]
pub struct SliceMonoid {
    pub monoid: ToricMonoid,
    /// Rows: basis of the sublattice in ambient coordinates.
    pub embedding: IntMatrix,
}

impl SliceMonoid {
    pub fn ambient_rank(&self) -> usize {
        self.embedding.cols()
    }

    pub fn to_ambient(&self, c: &IntVector) -> IntVector {
        self.embedding.transpose().apply(c)
    }

    /// Hilbert basis in ambient coordinates, sorted.
    pub fn ambient_hilbert_basis(&self) -> Result<Vec<IntVector>> {
        let mut h: Vec<IntVector> = self.monoid.hilbert_basis()?.iter().map(|c| self.to_ambient(c)).collect();
        h.sort();
        Ok(h)
    }

    /// Membership of an ambient vector.
    pub fn contains(&self, x: &IntVector) -> bool {
        if self.embedding.rows() == 0 {
            return x.is_zero();
        }
        match solve_integer(&self.embedding.transpose(), x) {
            Some(c) => self.monoid.contains(&c),
            None => false,
        }
    }
}

/// Basis of `ρ^⊥` (HNF rows).
pub fn orthogonal_lattice(rho: &IntVector) -> IntMatrix {
    let n = rho.rank();
    let ker = integer_kernel(&IntMatrix::from_rows(std::slice::from_ref(rho), n));
    IntMatrix::from_rows(&ker, n)
}

/// The monoid cut out of `ρ^⊥` by the given inequalities (each evaluated on
/// ambient vectors).
pub fn slice_by_inequalities(rho: &IntVector, inequalities: &[IntVector]) -> Result<SliceMonoid> {
    let k = orthogonal_lattice(rho);
    let local: Vec<IntVector> = inequalities.iter().map(|r| k.apply(r)).collect();
    let monoid = ToricMonoid::new(k.rows(), &local)?;
    Ok(SliceMonoid { monoid, embedding: k })
}

/// `(P^∨)_(w) = { p − a·w : p ∈ P^∨, ⟨p, ρ⟩ = a·⟨w, ρ⟩ }`, presented in `ρ^⊥`.
pub fn homogeneous_localization(p_dual: &ToricMonoid, w: &IntVector, rho: &IntVector) -> Result<SliceMonoid> {
    let gens = p_dual.extremal_generators()?;
    if !gens.contains(w) {
        return Err(Error::NotARay(w.clone()));
    }
    if !w.dot(rho).is_positive() {
        return Err(Error::Precondition("ray has nonpositive degree".into()));
    }
    let tight: Vec<IntVector> = p_dual.inequality_rays().iter().filter(|r| w.dot(r).is_zero()).cloned().collect();
    slice_by_inequalities(rho, &tight)
}

/// Points of `Spec(P)`, one per face, with the specialization order.
#[derive(Clone, Debug)]
pub struct SpecPoset {
    pub faces: Vec<Face>,
    pub poset: Poset,
}

/// `Spec(P)`: a point per face `T` of `σ`; `x ≤ y` iff `T_y ⊆ T_x`.
pub fn spec(p: &ToricMonoid) -> SpecPoset {
    let faces = p.faces();
    let labels: Vec<String> = faces.iter().map(face_label).collect();
    let mut rel = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if i != j && b.ray_subset.is_subset(&a.ray_subset) {
                rel.push((i, j));
            }
        }
    }
    SpecPoset { poset: Poset::new(labels, &rel), faces }
}

pub fn face_label(f: &Face) -> String {
    format!("{{{}}}", f.ray_subset.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// Rational dimension of a vector set.
pub fn rational_rank(vectors: &[IntVector]) -> usize {
    rational_row_echelon(&vectors.iter().map(IntVector::to_rat).collect::<Vec<_>>()).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    fn triangle() -> Cone {
        Cone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[2, 3, 1]]).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = Cone::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(c.dual().unwrap(), c);
    }

    #[test]
    fn square_cone_dual() {
        let c = Cone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]).unwrap();
        let d = c.dual().unwrap();
        let mut expect = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[-1, 0, 1]), v(&[0, -1, 1])];
        expect.sort();
        assert_eq!(d.rays(), &expect[..]);
    }

    #[test]
    fn biduality_of_triangle() {
        let c = triangle();
        assert_eq!(c.dual().unwrap().dual().unwrap(), c);
    }

    #[test]
    fn non_full_dimensional_dual_rejected() {
        let c = Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(c.dual(), Err(Error::NotFullDimensional));
        assert_eq!(c.dual_in_span().unwrap().rays().len(), 2);
    }

    #[test]
    fn non_extremal_generators_dropped() {
        let c = Cone::from_i64(&[&[1, 0], &[1, 1], &[0, 2]]).unwrap();
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(Cone::from_i64(&[&[1, 0], &[-1, 0]]), Err(Error::NotPointed));
    }

    #[test]
    fn face_counts() {
        assert_eq!(Cone::from_i64(&[&[1, 0], &[0, 1]]).unwrap().faces().len(), 4);
        assert_eq!(triangle().faces().len(), 8);
        assert_eq!(Cone::from_i64(&[&[1]]).unwrap().faces().len(), 2);
        for f in triangle().faces() {
            let c = triangle();
            for (i, r) in c.rays().iter().enumerate() {
                let s = f.certificate.dot(r);
                assert_eq!(s.is_zero(), f.ray_subset.contains(&i));
                assert!(!s.is_negative());
            }
        }
    }

    #[test]
    fn gorenstein_examples() {
        assert_eq!(Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap().gorenstein_element(), Some(v(&[1, 1, 1])));
        assert_eq!(triangle().gorenstein_element(), Some(v(&[0, 0, 1])));
        assert_eq!(Cone::from_i64(&[&[1, 0], &[2, 3]]).unwrap().gorenstein_element(), None);
    }

    #[test]
    fn r2_examples() {
        assert!(Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap().is_r2());
        assert!(triangle().is_r2());
        assert!(!Cone::from_i64(&[&[0, 0, 1], &[2, 0, 1], &[2, 2, 1], &[0, 2, 1]]).unwrap().is_r2());
    }

    #[test]
    fn hilbert_basis_small_cases() {
        assert_eq!(ToricMonoid::orthant(2).hilbert_basis().unwrap(), &[v(&[0, 1]), v(&[1, 0])]);
        // dual of the A1 cone spanned by (1,0),(1,2)
        let a1 = ToricMonoid::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        assert_eq!(a1.hilbert_basis().unwrap().len(), 3);
        let non_sharp = ToricMonoid::from_i64(2, &[&[1, 0]]).unwrap();
        assert_eq!(non_sharp.hilbert_basis(), Err(Error::NotSharp));
    }

    #[test]
    fn localization_examples() {
        let n2 = ToricMonoid::orthant(2);
        let faces = n2.faces();
        let full = faces.iter().find(|f| f.ray_subset.len() == 2).unwrap();
        assert_eq!(n2.localize(full).unwrap().monoid, n2);
        // rays are sorted, so index 0 is (0,1)
        let second = faces.iter().find(|f| f.ray_subset == BTreeSet::from([0])).unwrap();
        let loc = n2.localize(second).unwrap();
        assert_eq!(loc.monoid, ToricMonoid::orthant(1));
        assert_eq!(loc.map.apply(&v(&[5, 3])), v(&[3]));
    }

    #[test]
    fn ideal_quotient_of_n() {
        let q = ToricMonoid::orthant(1).ideal_quotient(&v(&[1])).unwrap();
        let elems = q.elements_up_to_degree(&Int::from(5)).unwrap();
        assert_eq!(elems, vec![QuotientElement::Finite(v(&[0])), QuotientElement::Infinity]);
        assert!(ToricMonoid::orthant(1).ideal_quotient(&v(&[-1])).is_err());
    }

    #[test]
    fn homogeneous_localization_p1_chart() {
        let s = homogeneous_localization(&ToricMonoid::orthant(2), &v(&[1, 0]), &v(&[1, 1])).unwrap();
        assert_eq!(s.ambient_hilbert_basis().unwrap(), vec![v(&[-1, 1])]);
        assert!(homogeneous_localization(&ToricMonoid::orthant(2), &v(&[1, 1]), &v(&[1, 1])).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let a = ToricMonoid::orthant(2);
        let b = ToricMonoid::from_i64(2, &[&[1, 0], &[1, 1]]).unwrap();
        let g = a.isomorphism(&b).unwrap();
        assert!(g.is_unimodular());
        let a1 = ToricMonoid::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
        assert!(!a.is_isomorphic(&a1));
    }
}
