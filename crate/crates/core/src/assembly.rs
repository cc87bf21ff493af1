//! The glued space of a gtc fan: one projective toric component per closed
//! point, described by its polytope of degree-one sections, with gluing
//! faces, affine charts and the singular locus.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::One;

use crate::duality::{facet_normal, DualityDatum};
use crate::fan::{localization_face, validate_gtc, GtcFan};
use crate::generators::AbelianDatum;
use crate::lattice::{IntMatrix, IntVector, SpanFrame};
use crate::monoid::{homogeneous_localization, orthogonal_lattice, Face, ToricMonoid};
use crate::polygon::{self, Pt};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};

/// `Proj k[P^∨]` for the grading by `ρ`: the degree-one slice of `P^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPolytope {
    /// Vertices in the dual lattice, one per inequality ray of `P`, in the
    /// same order.
    pub vertices: Vec<IntVector>,
    /// All degree-one lattice points of `P^∨`, sorted.
    pub lattice_points: Vec<IntVector>,
    /// The polytope in coordinates on the affine lattice `{φ(ρ) = 1}`.
    pub planar: LatticePolytope,
    /// Planar coordinates of `vertices`, in the same order.
    pub planar_vertices: Vec<IntVector>,
}

impl ComponentPolytope {
    pub fn dim(&self) -> usize {
        self.planar.dim()
    }
}

pub fn component_polytope(p: &ToricMonoid, rho: &IntVector) -> Result<ComponentPolytope> {
    if p.gorenstein_element().as_ref() != Some(rho) {
        return Err(Error::Precondition(format!("{rho:?} is not the distinguished element")));
    }
    let vertices = p.inequality_rays().to_vec();
    let dual = p.dual()?;
    let lattice_points: Vec<IntVector> = dual.points_up_to_degree(rho, &One::one())?.into_iter().filter(|m| m.dot(rho).is_one()).collect();
    let origin = vertices.first().cloned().ok_or_else(|| Error::Invalid("monoid without rays".into()))?;
    let perp = orthogonal_lattice(rho);
    let frame = SpanFrame::of(&perp.row_vectors(), rho.rank());
    let planar_vertices: Vec<IntVector> = vertices.iter().map(|v| frame.to_coords(&v.sub(&origin))).collect();
    let planar = LatticePolytope::new(frame.rank(), &planar_vertices)?;
    Ok(ComponentPolytope { vertices, lattice_points, planar, planar_vertices })
}

/// The graded surjection `k[P^∨] → k[P_𝔭^∨]` for the face `S` of `P`
/// belonging to `face`: `P_𝔭^∨` is the face `{φ ∈ P^∨ : φ(S) = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// The face of the component polytope, as indices into its vertices.
    pub face: BTreeSet<usize>,
    pub local: ToricMonoid,
    /// `P_𝔭^∨ → P^∨` on dual lattices.
    pub inclusion: IntMatrix,
}

pub fn embedding_map(p: &ToricMonoid, face: &Face) -> Result<Embedding> {
    let loc = p.localize(face)?;
    let inclusion = loc.map.transpose();
    let face = loc
        .monoid
        .inequality_rays()
        .iter()
        .map(|r| {
            let image = inclusion.apply(r);
            p.inequality_rays().iter().position(|q| *q == image).ok_or_else(|| Error::Invalid(format!("{image:?} is not a ray of P^∨")))
        })
        .collect::<Result<_>>()?;
    Ok(Embedding { face, local: loc.monoid, inclusion })
}

/// A closed point of the fan with its component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDescriptor {
    pub point: usize,
    pub polytope: ComponentPolytope,
    pub label: SurfaceLabel,
}

/// The closed embedding `Y_y → Y_x` for `x ≤ y`, as a face of `Y_x`'s
/// polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub closed: usize,
    pub point: usize,
    pub face: BTreeSet<usize>,
}

/// `U_y ≅ Spec k[Q_y]/(χ^ρ*)` with its components and the pieces `U_{x,y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub point: usize,
    pub monoid: ToricMonoid,
    pub rho: IntVector,
    /// Rays of `Q_y^∨`, one per irreducible component of the chart.
    pub dual_rays: Vec<IntVector>,
    pub generators: Vec<IntVector>,
    /// Pairs `i ≤ j` with `χ^{g_i} χ^{g_j}` in the ideal `(χ^ρ*)`.
    pub ideal_products: Vec<(usize, usize)>,
    /// For closed `x ≤ y`: the Hilbert basis of `(P_x^∨)_(w)`.
    pub pieces: Vec<(usize, Vec<IntVector>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeDescription {
    pub components: Vec<ComponentDescriptor>,
    pub gluing: Vec<Gluing>,
    pub charts: Vec<Chart>,
}

impl SchemeDescription {
    pub fn component(&self, x: usize) -> Option<&ComponentDescriptor> {
        self.components.iter().find(|c| c.point == x)
    }

    pub fn face(&self, x: usize, y: usize) -> Option<&BTreeSet<usize>> {
        self.gluing.iter().find(|g| g.closed == x && g.point == y).map(|g| &g.face)
    }
}

/// Gluing face of `Y_y` in `Y_x`: the rays of `P_x` pulled back from `P_y`.
fn gluing_face(g: &GtcFan, x: usize, y: usize) -> Result<BTreeSet<usize>> {
    let px = &g.gtc_stalks[x];
    if x == y {
        return Ok((0..px.inequality_rays().len()).collect());
    }
    let phi = g.map(x, y).ok_or_else(|| Error::Invalid(format!("no generization {} → {}", g.label(x), g.label(y))))?;
    let face = localization_face(px, &g.gtc_stalks[y], &phi, &px.faces())
        .ok_or_else(|| Error::Validation(format!("{} → {} is not a localization", g.label(x), g.label(y))))?;
    Ok(face.ray_subset)
}

/// Components and gluing data of a valid finite gtc fan.
pub fn assemble(g: &GtcFan) -> Result<SchemeDescription> {
    let report = validate_gtc(g);
    if !report.passed() {
        return Err(Error::Validation(report.to_string()));
    }
    let mut components = Vec::new();
    let mut gluing = Vec::new();
    for x in g.closed_points() {
        let polytope = component_polytope(&g.gtc_stalks[x], &g.rho[x])?;
        let label = identify_toric_surface(&polytope.planar);
        components.push(ComponentDescriptor { point: x, polytope, label });
        for y in g.poset().upper_set(x) {
            gluing.push(Gluing { closed: x, point: y, face: gluing_face(g, x, y)? });
        }
    }
    Ok(SchemeDescription { components, gluing, charts: Vec::new() })
}

/// The F-side assembly of a duality datum with a chart per generic point.
pub fn assemble_datum(d: &DualityDatum) -> Result<SchemeDescription> {
    let mut s = assemble(&d.f_side)?;
    for y in d.f_side.generic_points() {
        s.charts.push(chart(d, y)?);
    }
    Ok(s)
}

/// Whether `Y_z → Y_y → Y_x` equals `Y_z → Y_x` for every chain
/// `x ≤ y ≤ z` with `x` closed; returns the failing chains.
pub fn gluing_functoriality(g: &GtcFan, s: &SchemeDescription) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for c in &s.components {
        let x = c.point;
        let rays_x = g.gtc_stalks[x].inequality_rays();
        for y in g.poset().upper_set(x) {
            let Some(phi) = g.map(x, y) else { continue };
            let rays_y = g.gtc_stalks[y].inequality_rays();
            for z in g.poset().upper_set(y) {
                let Ok(fyz) = gluing_face(g, y, z) else {
                    bad.push((x, y, z));
                    continue;
                };
                let composed: Option<BTreeSet<usize>> =
                    fyz.iter().map(|&j| rays_x.iter().position(|r| *r == phi.transpose().apply(&rays_y[j]))).collect();
                if composed.as_ref() != s.face(x, z) {
                    bad.push((x, y, z));
                }
            }
        }
    }
    bad
}

pub fn chart(d: &DualityDatum, y: usize) -> Result<Chart> {
    let f = &d.f_side;
    if !f.generic_points().contains(&y) {
        return Err(Error::Precondition(format!("{} is not a generic point", f.label(y))));
    }
    let q = d.q_side.gtc_stalks[y].clone();
    let rho = d.q_side.rho[y].clone();
    let generators = q.hilbert_basis()?.to_vec();
    let mut ideal_products = Vec::new();
    for i in 0..generators.len() {
        for j in i..generators.len() {
            if q.contains(&generators[i].add(&generators[j]).sub(&rho)) {
                ideal_products.push((i, j));
            }
        }
    }
    let mut pieces = Vec::new();
    for x in f.closed_points() {
        if f.poset().leq(x, y) {
            let w = facet_normal(f, x, y).ok_or_else(|| Error::Invalid(format!("no facet of P at ({}, {})", f.label(x), f.label(y))))?;
            let loc = homogeneous_localization(&f.gtc_stalks[x].dual()?, &w, &f.rho[x])?;
            pieces.push((x, loc.ambient_hilbert_basis()?));
        }
    }
    Ok(Chart { point: y, dual_rays: q.inequality_rays().to_vec(), monoid: q, rho, generators, ideal_products, pieces })
}

/// Toric surface (or curve) of a lattice polytope, up to unimodular affine
/// equivalence and dilation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceLabel {
    Point,
    P1,
    P2,
    P1xP1,
    Bl3P2,
    /// Normal form of the polygon with the index `n` of the `A_n` point at
    /// each vertex of the normal form.
    Polygon {
        normal_form: Vec<Pt>,
        a_types: Vec<i64>,
    },
    Unclassified {
        dim: usize,
    },
}

impl SurfaceLabel {
    pub fn name(&self) -> Option<&'static str> {
        match self {
            SurfaceLabel::Point => Some("point"),
            SurfaceLabel::P1 => Some("P1"),
            SurfaceLabel::P2 => Some("P2"),
            SurfaceLabel::P1xP1 => Some("P1xP1"),
            SurfaceLabel::Bl3P2 => Some("Bl3P2"),
            _ => None,
        }
    }
}

pub fn identify_toric_surface(p: &LatticePolytope) -> SurfaceLabel {
    match p.dim() {
        0 => return SurfaceLabel::Point,
        1 => return SurfaceLabel::P1,
        2 => {}
        d => return SurfaceLabel::Unclassified { dim: d },
    }
    let Some(pts) = polygon::from_vectors(p.vertices()) else { return SurfaceLabel::Unclassified { dim: 2 } };
    let hull = polygon::convex_hull(&pts);
    if hull.len() < 3 {
        return SurfaceLabel::Unclassified { dim: 2 };
    }
    // the surface depends only on the normal fan, so divide out a common
    // dilation factor first
    let g = polygon::edge_lengths(&hull).into_iter().fold(0, |a, b| a.gcd(&b));
    let reduced: Vec<Pt> = hull.iter().map(|v| [(v[0] - hull[0][0]) / g, (v[1] - hull[0][1]) / g]).collect();
    let nf = polygon::normal_form(&reduced);
    let table: [(&[Pt], SurfaceLabel); 3] = [
        (&[[0, 0], [1, 0], [0, 1]], SurfaceLabel::P2),
        (&[[0, 0], [1, 0], [1, 1], [0, 1]], SurfaceLabel::P1xP1),
        (&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]], SurfaceLabel::Bl3P2),
    ];
    for (shape, label) in table {
        if polygon::normal_form(shape) == nf {
            return label;
        }
    }
    let normal_form = polygon::normal_form(&hull);
    let a_types = polygon::vertex_indices(&normal_form).into_iter().map(|d| d - 1).collect();
    SurfaceLabel::Polygon { normal_form, a_types }
}

/// Faces of one component along which other components are attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLocus {
    pub point: usize,
    /// Maximal glued faces, as vertex index sets.
    pub glued: Vec<BTreeSet<usize>>,
    /// `n` when the glued faces form a closed chain of `n` edges.
    pub cycle: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub components: Vec<ComponentLocus>,
    /// Pairs of components meeting along some point.
    pub graph: Vec<(usize, usize)>,
    /// Length of the component graph when it is a single cycle.
    pub graph_cycle: Option<usize>,
}

/// Length of `edges` when they form one cycle through all their vertices;
/// repeated edges and loops are allowed.
pub fn single_cycle<T: Ord + Copy>(edges: &[(T, T)]) -> Option<usize> {
    let mut adj: BTreeMap<T, Vec<T>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *adj.keys().next()?;
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let nbrs = &adj[&cur];
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > edges.len() {
            return None;
        }
    }
    (steps == edges.len() && steps == adj.len()).then_some(steps)
}

pub fn singular_locus_graph(g: &GtcFan, s: &SchemeDescription) -> SingularLocus {
    let closed: BTreeSet<usize> = s.components.iter().map(|c| c.point).collect();
    let mut components = Vec::new();
    let mut graph = BTreeSet::new();
    for c in &s.components {
        let x = c.point;
        let mut glued: Vec<BTreeSet<usize>> = Vec::new();
        for y in g.poset().upper_set(x) {
            let others: Vec<usize> = closed.iter().copied().filter(|&z| z != x && g.poset().leq(z, y)).collect();
            if others.is_empty() {
                continue;
            }
            for z in others {
                graph.insert((x.min(z), x.max(z)));
            }
            if let Some(face) = s.face(x, y) {
                glued.push(face.clone());
            }
        }
        let all = glued.clone();
        glued.retain(|a| !all.iter().any(|b| a != b && a.is_subset(b)));
        glued.sort();
        glued.dedup();
        let cycle = if c.polytope.dim() == 2 {
            let edges: Vec<(usize, usize)> = glued
                .iter()
                .filter(|f| f.len() == 2)
                .map(|f| {
                    let v: Vec<usize> = f.iter().copied().collect();
                    (v[0], v[1])
                })
                .collect();
            if edges.len() == glued.len() {
                single_cycle(&edges)
            } else {
                None
            }
        } else {
            None
        };
        components.push(ComponentLocus { point: x, glued, cycle });
    }
    let graph: Vec<(usize, usize)> = graph.into_iter().collect();
    let graph_cycle = single_cycle(&graph);
    SingularLocus { components, graph, graph_cycle }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    F,
    Q,
}

/// A component of the quotient by the period lattice, through an interior
/// representative.
#[derive(Clone, Debug)]
pub struct QuotientComponent {
    pub orbit: usize,
    pub point: usize,
    pub label: SurfaceLabel,
    /// Number of vertices of the component polytope.
    pub corners: usize,
    pub locus: ComponentLocus,
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub side: Side,
    pub components: Vec<QuotientComponent>,
    /// One edge per orbit of points where two components meet, between the
    /// orbits of those components.
    pub orbit_graph: Vec<(usize, usize)>,
    pub orbit_cycle: Option<usize>,
}

/// Components of one side of an abelian datum up to translation.
pub fn abelian_quotient(a: &AbelianDatum, side: Side) -> Result<QuotientReport> {
    let g = match side {
        Side::F => &a.datum.f_side,
        Side::Q => &a.datum.q_side,
    };
    let s = assemble(g)?;
    let locus = singular_locus_graph(g, &s);
    let mut components = Vec::new();
    for x in a.representatives(&g.closed_points())? {
        let i = s.components.iter().position(|c| c.point == x).expect("closed point has a component");
        let c = &s.components[i];
        components.push(QuotientComponent {
            orbit: a.cells.orbit[x],
            point: x,
            label: c.label.clone(),
            corners: c.polytope.planar.vertices().len(),
            locus: locus.components[i].clone(),
        });
    }
    let below = |z: usize| -> Vec<usize> { g.closed_points().into_iter().filter(|&x| g.poset().leq(x, z)).collect() };
    let mut meeting = BTreeMap::new();
    for z in (0..g.len()).filter(|&z| a.is_interior(z)) {
        let b = below(z);
        if b.len() == 2 {
            meeting.entry(a.cells.orbit[z]).or_insert(b);
        }
    }
    let mut orbit_graph = Vec::new();
    for b in meeting.into_values() {
        let (u, v) = (a.cells.orbit[b[0]], a.cells.orbit[b[1]]);
        orbit_graph.push((u.min(v), u.max(v)));
    }
    orbit_graph.sort();
    let orbit_cycle = single_cycle(&orbit_graph);
    Ok(QuotientReport { side, components, orbit_graph, orbit_cycle })
}
