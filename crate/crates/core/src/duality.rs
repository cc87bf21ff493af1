//! Duality data `(F, P, ρ)`, `(F*, Q, ρ*)`, `λ` and the mirror construction.
//!
//! Both sides share point indices and labels; the q-side order is the
//! reverse of the f-side order. `λ_xy` is stored for closed `x` and generic
//! `y` of `F` with `x ≤ y`, as an affine map from the lattice of `Q_y^∨`
//! (the dual of the stalk lattice of `Q_y`) into the lattice of `P_x`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::fan::{localization_face, validate_gtc, GtcFan};
use crate::lattice::{right_inverse, solve_left, IntMatrix, IntVector, SpanFrame};
use crate::monoid::{homogeneous_localization, slice_by_inequalities, ToricMonoid};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub linear: IntMatrix,
    pub offset: IntVector,
}

impl AffineMap {
    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.linear.apply(v).add(&self.offset)
    }
}

#[derive(Clone, Debug)]
pub struct DualityDatum {
    pub f_side: GtcFan,
    pub q_side: GtcFan,
    pub lambda: BTreeMap<(usize, usize), AffineMap>,
}

impl DualityDatum {
    /// Incident (closed, generic) pairs of `F`, excluding truncated points.
    pub fn incident_pairs(&self) -> Vec<(usize, usize)> {
        incident_pairs(&self.f_side)
    }
}

fn incident_pairs(f: &GtcFan) -> Vec<(usize, usize)> {
    let generic = f.generic_points();
    let mut out = Vec::new();
    for x in f.closed_points() {
        if f.base.frontier.contains(&x) {
            continue;
        }
        for &y in &generic {
            if f.poset().leq(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Primitive inequality ray of `P_x` cutting out the facet belonging to the
/// generic point `y`.
pub fn facet_normal(f: &GtcFan, x: usize, y: usize) -> Option<IntVector> {
    let p = &f.gtc_stalks[x];
    let q = &f.gtc_stalks[y];
    let phi = f.map(x, y)?;
    let face = localization_face(p, q, &phi, &p.faces())?;
    if face.ray_subset.len() != 1 {
        return None;
    }
    face.ray_subset.iter().next().map(|&i| p.inequality_rays()[i].clone())
}

/// Checks the conditions on a duality datum for every incident pair.
pub fn validate_duality(d: &DualityDatum) -> Report {
    let mut report = Report::new();
    report.absorb("f_side", validate_gtc(&d.f_side));
    report.absorb("q_side", validate_gtc(&d.q_side));
    let f = &d.f_side;
    let q = &d.q_side;
    let same_points = f.len() == q.len() && (0..f.len()).all(|i| f.label(i) == q.label(i));
    if !report.check(same_points && q.poset().same_as(&f.poset().reversed()), "dual_order", &[], || {
        "q-side order is not the reverse of the f-side order".into()
    }) {
        return report;
    }
    let pairs = incident_pairs(f);
    let closed: BTreeSet<usize> = f.closed_points().into_iter().collect();
    let generic: BTreeSet<usize> = f.generic_points().into_iter().collect();
    for &(x, y) in d.lambda.keys() {
        let ok = x < f.len() && y < f.len() && closed.contains(&x) && generic.contains(&y) && f.poset().leq(x, y);
        report.check(ok, "lambda_index", &[], || format!("λ stored for non-incident pair ({x}, {y})"));
    }
    for &(x, y) in &pairs {
        let (lx, ly) = (f.label(x), f.label(y));
        let Some(lam) = d.lambda.get(&(x, y)) else {
            report.fail("lambda_present", &[lx, ly], "missing λ".into());
            continue;
        };
        check_pair(&mut report, d, x, y, lam);
    }
    report
}

fn check_pair(report: &mut Report, d: &DualityDatum, x: usize, y: usize, lam: &AffineMap) {
    let f = &d.f_side;
    let q = &d.q_side;
    let (lx, ly) = (f.label(x), f.label(y));
    let px = &f.gtc_stalks[x];
    let qy = &q.gtc_stalks[y];
    let rho = &f.rho[x];
    let l = &lam.linear;
    let shape_ok = l.rows() == px.lattice_rank() && l.cols() == qy.lattice_rank();
    if !report.check(shape_ok && l.is_unimodular(), "lambda_injective", &[lx, ly], || {
        format!("linear part {}x{} is not a lattice isomorphism", l.rows(), l.cols())
    }) {
        return;
    }
    report.check(&lam.offset == rho, "lambda_vertex", &[lx, ly], || format!("λ(0) = {:?}, ρ(x) = {rho:?}", lam.offset));
    let Some(normal) = facet_normal(f, x, y) else {
        report.fail("facet", &[lx, ly], "generization is not a facet localization".into());
        return;
    };
    let hs = qy.inequality_rays();
    for h in hs {
        let lh = l.apply(h);
        report.check(lh.dot(&normal) == -crate::lattice::Int::one(), "lambda_image", &[lx, ly], || {
            format!("λ({h:?}) is not at height one over the facet")
        });
        report.check(px.contains(&lh.add(rho)), "lambda_image", &[lx, ly], || format!("λ({h:?}) lies outside P_x"));
    }
    let inv = l.inverse_unimodular().expect("unimodular");
    let u = inv.apply(&rho.neg());
    let Some(psi) = q.map(y, x) else {
        report.fail("lambda_ray", &[lx, ly], "missing q-side generization".into());
        return;
    };
    let qx = &q.gtc_stalks[x];
    let ray_ok = qx.lattice_rank() == 1 && qx.inequality_rays().len() == 1 && psi.transpose().apply(&qx.inequality_rays()[0]) == u && hs.contains(&u);
    report.check(ray_ok, "lambda_ray", &[lx, ly], || format!("λ⁻¹(0) = {u:?} does not span the ray Q_x^∨"));
}

/// The mirror datum `(F*, Q, P, λ*)` with `λ*_yx = (L^T, ρ*(y))`.
pub fn mirror(d: &DualityDatum) -> Result<DualityDatum> {
    let report = validate_duality(d);
    if !report.passed() {
        return Err(Error::Validation(report.to_string()));
    }
    Ok(mirror_unchecked(d))
}

pub fn mirror_unchecked(d: &DualityDatum) -> DualityDatum {
    let lambda =
        d.lambda.iter().map(|(&(x, y), lam)| ((y, x), AffineMap { linear: lam.linear.transpose(), offset: d.q_side.rho[y].clone() })).collect();
    DualityDatum { f_side: d.q_side.clone(), q_side: d.f_side.clone(), lambda }
}

fn bump_vector(v: &IntVector, i: usize) -> IntVector {
    let mut w = v.clone();
    w.0[i] += 1;
    w
}

fn bump_matrix(m: &IntMatrix, i: usize, j: usize) -> IntMatrix {
    let mut w = m.clone();
    w.set(i, j, m.get(i, j) + 1);
    w
}

/// Rebuilds `g` with one part replaced.
fn rebuild(
    g: &GtcFan,
    stalks: Option<(usize, ToricMonoid)>,
    rho: Option<(usize, IntVector)>,
    gen: Option<((usize, usize), IntMatrix)>,
) -> Result<GtcFan> {
    let mut s = g.gtc_stalks.clone();
    let mut r = g.rho.clone();
    let mut m = g.base.generization.clone();
    if let Some((x, p)) = stalks {
        s[x] = p;
    }
    if let Some((x, v)) = rho {
        r[x] = v;
    }
    if let Some((k, a)) = gen {
        m.insert(k, a);
    }
    GtcFan::from_parts(g.poset().clone(), s, r, m, g.base.frontier.clone())
}

fn side_mutations(g: &GtcFan, name: &str) -> Vec<(String, Result<GtcFan>)> {
    let mut out = Vec::new();
    for x in 0..g.len() {
        let lx = g.label(x);
        for i in 0..g.rho[x].rank() {
            out.push((format!("{name}.rho[{lx}][{i}]"), rebuild(g, None, Some((x, bump_vector(&g.rho[x], i))), None)));
        }
        let rays = g.gtc_stalks[x].inequality_rays();
        for (k, ray) in rays.iter().enumerate() {
            for i in 0..ray.rank() {
                let mut changed = rays.to_vec();
                changed[k] = bump_vector(ray, i);
                let p = ToricMonoid::new(g.gtc_stalks[x].lattice_rank(), &changed);
                if p.as_ref().is_ok_and(|p| *p == g.gtc_stalks[x]) {
                    continue;
                }
                let fan = p.and_then(|p| rebuild(g, Some((x, p)), None, None));
                out.push((format!("{name}.stalks[{lx}].rays[{k}][{i}]"), fan));
            }
        }
    }
    for (&(x, y), a) in &g.base.generization {
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let key = format!("{name}.generization[{},{}][{i}][{j}]", g.label(x), g.label(y));
                out.push((key, rebuild(g, None, None, Some(((x, y), bump_matrix(a, i, j))))));
            }
        }
    }
    out
}

/// Every datum obtained from `d` by adding one to a single integer entry
/// (of a `ρ`, a stalk ray, a generization matrix or a `λ`) or by dropping
/// one `λ`. Ray changes that leave the monoid unchanged (a multiple of the
/// old ray) are skipped; perturbations that cannot even be assembled are
/// returned as errors.
pub fn single_field_mutations(d: &DualityDatum) -> Vec<(String, Result<DualityDatum>)> {
    let mut out = Vec::new();
    for (key, f) in side_mutations(&d.f_side, "f_side") {
        out.push((key, f.map(|f| DualityDatum { f_side: f, q_side: d.q_side.clone(), lambda: d.lambda.clone() })));
    }
    for (key, q) in side_mutations(&d.q_side, "q_side") {
        out.push((key, q.map(|q| DualityDatum { f_side: d.f_side.clone(), q_side: q, lambda: d.lambda.clone() })));
    }
    for (&(x, y), lam) in &d.lambda {
        let at = format!("lambda[{},{}]", d.f_side.label(x), d.f_side.label(y));
        let with = |m: AffineMap| {
            let mut l = d.lambda.clone();
            l.insert((x, y), m);
            Ok(DualityDatum { f_side: d.f_side.clone(), q_side: d.q_side.clone(), lambda: l })
        };
        for i in 0..lam.linear.rows() {
            for j in 0..lam.linear.cols() {
                out.push((format!("{at}.linear[{i}][{j}]"), with(AffineMap { linear: bump_matrix(&lam.linear, i, j), offset: lam.offset.clone() })));
            }
        }
        for i in 0..lam.offset.rank() {
            out.push((format!("{at}.offset[{i}]"), with(AffineMap { linear: lam.linear.clone(), offset: bump_vector(&lam.offset, i) })));
        }
        let mut dropped = d.lambda.clone();
        dropped.remove(&(x, y));
        out.push((format!("{at} removed"), Ok(DualityDatum { f_side: d.f_side.clone(), q_side: d.q_side.clone(), lambda: dropped })));
    }
    out
}

/// Both sides of `(P_x^∨)_(w) = Q_y ∩ ρ^⊥`, as sorted Hilbert bases in the
/// dual lattice of `P_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeIdentification {
    pub localization: Vec<IntVector>,
    pub slice: Vec<IntVector>,
}

impl ConeIdentification {
    pub fn holds(&self) -> bool {
        self.localization == self.slice
    }
}

pub fn cone_identification(d: &DualityDatum, x: usize, y: usize) -> Result<ConeIdentification> {
    let f = &d.f_side;
    if !f.closed_points().contains(&x) || !f.generic_points().contains(&y) || !f.poset().leq(x, y) {
        return Err(Error::Precondition(format!("({x}, {y}) is not an incident closed/generic pair")));
    }
    let lam = d.lambda.get(&(x, y)).ok_or_else(|| Error::Precondition("missing λ".into()))?;
    let w = facet_normal(f, x, y).ok_or_else(|| Error::Precondition("no facet for y".into()))?;
    let px = &f.gtc_stalks[x];
    let rho = &f.rho[x];
    let loc = homogeneous_localization(&px.dual()?, &w, rho)?;
    let qy = &d.q_side.gtc_stalks[y];
    let ineq: Vec<IntVector> = qy.inequality_rays().iter().map(|h| lam.linear.apply(h)).collect();
    let slice = slice_by_inequalities(rho, &ineq)?;
    Ok(ConeIdentification { localization: loc.ambient_hilbert_basis()?, slice: slice.ambient_hilbert_basis()? })
}

/// Builds the q-side and `λ` from one lattice polytope per incident pair.
///
/// `deltas[(x, y)]` lists the vertices of `Δ_xy` in the lattice of `P_x`;
/// for a fixed `y` the lists must correspond vertex by vertex, and each must
/// contain `0`. `Q_y^∨` is the cone over `Δ − ρ(x)` in the lattice of the
/// first listed `x`.
pub fn datum_from_facet_polytopes(f: &GtcFan, deltas: &BTreeMap<(usize, usize), Vec<IntVector>>) -> Result<DualityDatum> {
    let n = f.len();
    // per generic y: reference x0, Q_y^∨ generators c_i, and L_xy
    let mut gens_of: BTreeMap<usize, Vec<IntVector>> = BTreeMap::new();
    let mut linear: BTreeMap<(usize, usize), IntMatrix> = BTreeMap::new();
    for (&(x, y), delta) in deltas {
        if x >= n || y >= n || !f.poset().leq(x, y) {
            return Err(Error::Precondition(format!("polytope given for non-incident pair ({x}, {y})")));
        }
        let rho = &f.rho[x];
        let shifted: Vec<IntVector> = delta.iter().map(|v| v.sub(rho)).collect();
        match gens_of.get(&y) {
            None => {
                let k = f.gtc_stalks[x].lattice_rank();
                let frame = SpanFrame::of(&shifted, k);
                if frame.rank() != k {
                    return Err(Error::Invalid(format!("polytope at ({}, {}) has the wrong dimension", f.label(x), f.label(y))));
                }
                let coords: Vec<IntVector> = shifted.iter().map(|s| frame.to_coords(s)).collect();
                linear.insert((x, y), frame.basis.transpose());
                gens_of.insert(y, coords);
            }
            Some(c) => {
                let incompatible = || Error::Validation(format!("polytopes over {} disagree at {}", f.label(y), f.label(x)));
                if c.len() != shifted.len() {
                    return Err(incompatible());
                }
                let k = c.first().map_or(0, IntVector::rank);
                let cm = IntMatrix::from_cols(c, k);
                let tm = IntMatrix::from_cols(&shifted, f.gtc_stalks[x].lattice_rank());
                let l = solve_left(&cm, &tm).filter(|l| l.mul(&cm) == tm && l.is_unimodular()).ok_or_else(incompatible)?;
                linear.insert((x, y), l);
            }
        }
    }
    // every point z gets Q_z^∨ inside the lattice of some generic y ≥ z
    let mut frames: Vec<Option<(usize, SpanFrame, Vec<IntVector>)>> = vec![None; n];
    for z in 0..n {
        let found = deltas.keys().find(|&&(x, y)| f.poset().leq(x, z) && f.poset().leq(z, y));
        let Some(&(x, y)) = found else {
            return Err(Error::Invalid(format!("no polytope covers {}", f.label(z))));
        };
        let px = &f.gtc_stalks[x];
        let tight: Vec<IntVector> = if z == x {
            px.inequality_rays().to_vec()
        } else {
            let phi = f.map(x, z).ok_or_else(|| Error::Invalid("missing generization".into()))?;
            let face = localization_face(px, &f.gtc_stalks[z], &phi, &px.faces())
                .ok_or_else(|| Error::Validation(format!("{} → {} is not a localization", f.label(x), f.label(z))))?;
            face.ray_subset.iter().map(|&i| px.inequality_rays()[i].clone()).collect()
        };
        let c = &gens_of[&y];
        let chosen: Vec<IntVector> =
            deltas[&(x, y)].iter().zip(c).filter(|(v, _)| tight.iter().all(|r| v.dot(r).is_zero())).map(|(_, ci)| ci.clone()).collect();
        let k = c.first().map_or(0, IntVector::rank);
        frames[z] = Some((y, SpanFrame::of(&chosen, k), chosen));
    }
    let frames: Vec<(usize, SpanFrame, Vec<IntVector>)> = frames.into_iter().map(|o| o.expect("filled")).collect();
    // change of coordinates between the lattices of two generic points
    let transfer = |z: usize, from: usize, to: usize| -> Result<IntMatrix> {
        if from == to {
            return Ok(IntMatrix::identity(gens_of[&from].first().map_or(0, IntVector::rank)));
        }
        for x in f.closed_points() {
            if f.poset().leq(x, z) {
                if let (Some(a), Some(b)) = (linear.get(&(x, from)), linear.get(&(x, to))) {
                    let binv = b.inverse_unimodular().ok_or_else(|| Error::Invalid("λ not invertible".into()))?;
                    return Ok(binv.mul(a));
                }
            }
        }
        Err(Error::Invalid(format!("no common closed point relates the charts at {}", f.label(z))))
    };
    let mut stalks = Vec::with_capacity(n);
    for z in 0..n {
        let (_, frame, chosen) = &frames[z];
        let local: Vec<IntVector> = chosen.iter().map(|ci| frame.to_coords(ci)).collect();
        stalks.push(ToricMonoid::new(frame.rank(), &local)?);
    }
    let rho_star: Vec<IntVector> = stalks
        .iter()
        .enumerate()
        .map(|(z, s)| s.gorenstein_element().ok_or_else(|| Error::Validation(format!("Q at {} is not Gorenstein", f.label(z)))))
        .collect::<Result<_>>()?;
    let q_poset = f.poset().reversed();
    let mut gen = BTreeMap::new();
    for (a, b) in q_poset.strict_pairs() {
        // a ≤* b in F*, i.e. b ≤ a in F: Q_a → Q_b restricts to the smaller face
        let (ya, fa, _) = &frames[a];
        let (yb, fb, _) = &frames[b];
        let t = transfer(b, *yb, *ya)?;
        let rows: Vec<IntVector> = fb.basis.row_vectors().iter().map(|r| fa.to_coords(&t.apply(r))).collect();
        gen.insert((a, b), IntMatrix::from_rows(&rows, fa.rank()));
    }
    let q_side = GtcFan::from_parts(q_poset, stalks, rho_star, gen, BTreeSet::new())?;
    let mut lambda = BTreeMap::new();
    for (&(x, y), l) in &linear {
        let (yy, fy, _) = &frames[y];
        debug_assert_eq!(*yy, y);
        let m = l.mul(&fy.basis.transpose());
        lambda.insert((x, y), AffineMap { linear: m, offset: f.rho[x].clone() });
    }
    Ok(DualityDatum { f_side: f.clone(), q_side, lambda })
}

/// Stalk isomorphisms witnessing `a ≅ b` for a given point bijection.
/// Closed points of each side are matched by the identity; the remaining
/// isomorphisms are forced by the generization maps.
pub fn datum_isomorphism(a: &DualityDatum, b: &DualityDatum, point_map: &[usize]) -> Result<()> {
    let gp = side_isomorphism(&a.f_side, &b.f_side, point_map)?;
    let gq = side_isomorphism(&a.q_side, &b.q_side, point_map)?;
    for (&(x, y), lam) in &a.lambda {
        let key = (point_map[x], point_map[y]);
        let other = b.lambda.get(&key).ok_or_else(|| Error::Validation(format!("no λ at {key:?}")))?;
        let qinv = gq[y].inverse_unimodular().expect("checked unimodular");
        let expect = AffineMap { linear: gp[x].mul(&lam.linear).mul(&qinv), offset: gp[x].apply(&lam.offset) };
        if &expect != other {
            return Err(Error::Validation(format!("λ differs at ({}, {})", a.f_side.label(x), a.f_side.label(y))));
        }
    }
    if a.lambda.len() != b.lambda.len() {
        return Err(Error::Validation("λ families have different sizes".into()));
    }
    Ok(())
}

fn side_isomorphism(a: &GtcFan, b: &GtcFan, point_map: &[usize]) -> Result<Vec<IntMatrix>> {
    let bad = |what: &str, z: usize| Error::Validation(format!("{what} at {}", a.label(z)));
    if !a.poset().is_isomorphism(b.poset(), point_map) {
        return Err(Error::Validation("point map is not an order isomorphism".into()));
    }
    let n = a.len();
    let mut g: Vec<Option<IntMatrix>> = vec![None; n];
    for x in a.closed_points() {
        let k = a.gtc_stalks[x].lattice_rank();
        if b.gtc_stalks[point_map[x]].lattice_rank() != k {
            return Err(bad("rank mismatch", x));
        }
        g[x] = Some(IntMatrix::identity(k));
    }
    for z in 0..n {
        if g[z].is_some() {
            continue;
        }
        let x = a.closed_points().into_iter().find(|&x| a.poset().leq(x, z)).ok_or_else(|| bad("no closed point below", z))?;
        let phi_a = a.map(x, z).ok_or_else(|| bad("missing map", z))?;
        let phi_b = b.map(point_map[x], point_map[z]).ok_or_else(|| bad("missing map", z))?;
        let s = right_inverse(&phi_a).ok_or_else(|| bad("generization not surjective", z))?;
        g[z] = Some(phi_b.mul(g[x].as_ref().expect("closed")).mul(&s));
    }
    let g: Vec<IntMatrix> = g.into_iter().map(|m| m.expect("filled")).collect();
    for z in 0..n {
        let bz = point_map[z];
        if !g[z].is_unimodular() {
            return Err(bad("stalk map not invertible", z));
        }
        let ginv_t = g[z].inverse_unimodular().expect("unimodular").transpose();
        let mut moved: Vec<IntVector> = a.gtc_stalks[z].inequality_rays().iter().map(|r| ginv_t.apply(r)).collect();
        moved.sort();
        if moved != b.gtc_stalks[bz].inequality_rays() {
            return Err(bad("stalks differ", z));
        }
        if g[z].apply(&a.rho[z]) != b.rho[bz] {
            return Err(bad("sections differ", z));
        }
    }
    for (x, y) in a.poset().strict_pairs() {
        let (pa, pb) = (a.map(x, y), b.map(point_map[x], point_map[y]));
        match (pa, pb) {
            (Some(pa), Some(pb)) if g[y].mul(&pa) == pb.mul(&g[x]) => {}
            _ => return Err(bad("generization maps differ", x)),
        }
    }
    Ok(g)
}
