//! Finite Kato fans with toric stalks, and gtc structures on them.
//!
//! Points carry sharp monoids in their own coordinates. For `x ≤ y` the
//! generization `φ_yx` is stored as an integer matrix acting on stalk
//! coordinates of `x`; identities are implicit.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::lattice::{smith_normal_form, IntMatrix, IntVector, SpanFrame};
use crate::monoid::{face_label, spec, Cone, Face, QuotientElement, QuotientMonoid, ToricMonoid};
use crate::poset::Poset;
use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stalk {
    Toric(ToricMonoid),
    Quotient(QuotientMonoid),
}

impl Stalk {
    /// The toric monoid underlying the stalk (the base of a quotient).
    pub fn toric(&self) -> &ToricMonoid {
        match self {
            Stalk::Toric(p) => p,
            Stalk::Quotient(q) => &q.base,
        }
    }

    pub fn lattice_rank(&self) -> usize {
        self.toric().lattice_rank()
    }
}

#[derive(Clone, Debug)]
pub struct KatoFan {
    pub poset: Poset,
    pub stalks: Vec<Stalk>,
    /// `φ_yx` for `x < y`.
    pub generization: BTreeMap<(usize, usize), IntMatrix>,
    /// Points of a truncated patch whose neighbourhoods are incomplete; the
    /// local-structure check skips them.
    pub frontier: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub struct GtcFan {
    /// Underlying fan with stalks `P_x ∕∕ (ρ + P_x)`.
    pub base: KatoFan,
    pub gtc_stalks: Vec<ToricMonoid>,
    pub rho: Vec<IntVector>,
    /// Per point, the images of the Hilbert basis of `P_x` in `M_F,x`.
    pub quotient_iso: Vec<Vec<(IntVector, QuotientElement)>>,
}

/// Coordinates of the basis of `inner` in the frame `outer` (`inner ⊆ outer`).
pub fn transition(outer: &SpanFrame, inner: &SpanFrame) -> IntMatrix {
    let rows: Vec<IntVector> = inner.basis.row_vectors().iter().map(|b| outer.to_coords(b)).collect();
    IntMatrix::from_rows(&rows, outer.rank())
}

impl KatoFan {
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn point(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    /// `φ_yx`, or `None` unless `x ≤ y`.
    pub fn map(&self, x: usize, y: usize) -> Option<IntMatrix> {
        if x == y {
            return Some(IntMatrix::identity(self.stalks[x].lattice_rank()));
        }
        if !self.poset.leq(x, y) {
            return None;
        }
        self.generization.get(&(x, y)).cloned()
    }

    pub fn closed_points(&self) -> Vec<usize> {
        self.poset.closed_points()
    }

    pub fn generic_points(&self) -> Vec<usize> {
        self.poset.generic_points()
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        self.validate_into(&mut report, None);
        report
    }

    /// Shared checks; `rho` selects the gtc variant of the local-structure
    /// test (faces avoiding the section rather than all faces).
    fn validate_into(&self, report: &mut Report, rho: Option<&[IntVector]>) {
        let n = self.len();
        report.check(self.stalks.len() == n, "stalk_count", &[], || format!("{} stalks for {n} points", self.stalks.len()));
        report.check(self.poset.is_partial_order(), "partial_order", &[], || "order is not antisymmetric".into());
        if self.stalks.len() != n {
            return;
        }
        for (i, s) in self.stalks.iter().enumerate() {
            report.check(s.toric().is_sharp(), "sharp_stalk", &[self.label(i)], || "stalk is not sharp".into());
        }
        for &(x, y) in self.generization.keys() {
            report.check(x < n && y < n && self.poset.lt(x, y), "generization_extraneous", &[], || format!("map stored for non-relation ({x}, {y})"));
        }
        let mut faces_of: Vec<Option<Vec<Face>>> = vec![None; n];
        for (x, y) in self.poset.strict_pairs() {
            let (lx, ly) = (self.label(x), self.label(y));
            let Some(phi) = self.generization.get(&(x, y)) else {
                report.fail("generization_present", &[lx, ly], "missing generization map".into());
                continue;
            };
            let (kx, ky) = (self.stalks[x].lattice_rank(), self.stalks[y].lattice_rank());
            if !report.check(phi.rows() == ky && phi.cols() == kx, "generization_shape", &[lx, ly], || {
                format!("{}x{} map between ranks {kx} and {ky}", phi.rows(), phi.cols())
            }) {
                continue;
            }
            let faces = faces_of[x].get_or_insert_with(|| self.stalks[x].toric().faces());
            let face = localization_face(self.stalks[x].toric(), self.stalks[y].toric(), phi, faces);
            report.check(face.is_some(), "generization_localization", &[lx, ly], || "map is not the localization at a face".into());
        }
        for (x, y) in self.poset.strict_pairs() {
            for z in 0..n {
                if z == y || !self.poset.lt(y, z) {
                    continue;
                }
                let (Some(a), Some(b), Some(c)) = (self.generization.get(&(x, y)), self.generization.get(&(y, z)), self.generization.get(&(x, z)))
                else {
                    continue;
                };
                if a.cols() != c.cols() || b.rows() != c.rows() || b.cols() != a.rows() {
                    continue;
                }
                report
                    .check(&b.mul(a) == c, "generization_functorial", &[self.label(x), self.label(y), self.label(z)], || "φ_zy ∘ φ_yx ≠ φ_zx".into());
            }
        }
        for x in 0..n {
            if self.frontier.contains(&x) {
                continue;
            }
            let faces = faces_of[x].get_or_insert_with(|| self.stalks[x].toric().faces());
            self.check_local_structure(report, x, faces, rho.map(|r| &r[x]));
        }
    }

    /// The upper set of `x` must match the spectrum of its stalk, restricted
    /// to primes containing `ρ_x` when a section is given.
    fn check_local_structure(&self, report: &mut Report, x: usize, faces: &[Face], rho: Option<&IntVector>) {
        let p = self.stalks[x].toric();
        let rays = p.inequality_rays();
        let expected: BTreeSet<BTreeSet<usize>> = faces
            .iter()
            .filter(|f| match rho {
                Some(r) => f.ray_subset.iter().any(|&i| r.dot(&rays[i]).is_positive()),
                None => true,
            })
            .map(|f| f.ray_subset.clone())
            .collect();
        let mut image: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let up = self.poset.upper_set(x);
        for &y in &up {
            let face = if y == x {
                Some(faces.last().map(|f| f.ray_subset.clone()).unwrap_or_default())
            } else {
                self.generization.get(&(x, y)).and_then(|phi| localization_face(p, self.stalks[y].toric(), phi, faces)).map(|f| f.ray_subset)
            };
            let Some(face) = face else {
                report.fail("local_structure", &[self.label(x), self.label(y)], "no face for generization".into());
                return;
            };
            if let Some(prev) = image.insert(face, y) {
                report.fail("local_structure", &[self.label(x), self.label(prev), self.label(y)], "two points share a face".into());
                return;
            }
        }
        let got: BTreeSet<BTreeSet<usize>> = image.keys().cloned().collect();
        if !report
            .check(got == expected, "local_structure", &[self.label(x)], || format!("upper set realizes {} of {} faces", got.len(), expected.len()))
        {
            return;
        }
        for (fa, &a) in &image {
            for (fb, &b) in &image {
                let ok = self.poset.leq(a, b) == fb.is_subset(fa);
                if !report
                    .check(ok, "local_structure_order", &[self.label(x), self.label(a), self.label(b)], || "order differs from face inclusion".into())
                {
                    return;
                }
            }
        }
    }

    /// Checks `φ_zy ∘ φ_yx = φ_zx` over every chain, returning the number of
    /// chains checked and the failures.
    pub fn functoriality_failures(&self) -> (usize, Vec<(usize, usize, usize)>) {
        let mut count = 0;
        let mut bad = Vec::new();
        for (x, y) in self.poset.strict_pairs() {
            for z in 0..self.len() {
                if z != y && self.poset.lt(y, z) {
                    count += 1;
                    let ok = match (self.map(x, y), self.map(y, z), self.map(x, z)) {
                        (Some(a), Some(b), Some(c)) => b.mul(&a) == c,
                        _ => false,
                    };
                    if !ok {
                        bad.push((x, y, z));
                    }
                }
            }
        }
        (count, bad)
    }
}

/// The face of `p` at which `phi: p → q` is a localization, if it is one.
pub fn localization_face(p: &ToricMonoid, q: &ToricMonoid, phi: &IntMatrix, faces: &[Face]) -> Option<Face> {
    if phi.rows() != q.lattice_rank() || phi.cols() != p.lattice_rank() {
        return None;
    }
    let s = smith_normal_form(phi);
    if s.rank != phi.rows() || !s.invariant_factors().iter().all(One::is_one) {
        return None;
    }
    let rays = p.inequality_rays();
    let phit = phi.transpose();
    let mut subset = BTreeSet::new();
    for r in q.inequality_rays() {
        let i = rays.iter().position(|x| *x == phit.apply(r))?;
        subset.insert(i);
    }
    if subset.len() != q.inequality_rays().len() {
        return None;
    }
    faces.iter().find(|f| f.ray_subset == subset).cloned()
}

/// Localized monoid and frame at the ray subset `t` of `p`.
fn local_data(p: &ToricMonoid, t: &BTreeSet<usize>) -> (ToricMonoid, SpanFrame) {
    let rays: Vec<IntVector> = t.iter().map(|&i| p.inequality_rays()[i].clone()).collect();
    let frame = SpanFrame::of(&rays, p.lattice_rank());
    let local: Vec<IntVector> = rays.iter().map(|r| frame.to_coords(r)).collect();
    let m = ToricMonoid::new(frame.rank(), &local).expect("faces of a pointed cone are pointed");
    (m, frame)
}

type FacePieces = (Poset, Vec<ToricMonoid>, Vec<SpanFrame>, BTreeMap<(usize, usize), IntMatrix>);

/// Points, stalks and transitions for the faces `chosen` of `p`.
fn fan_on_faces(p: &ToricMonoid, chosen: &[Face]) -> FacePieces {
    let labels: Vec<String> = chosen.iter().map(face_label).collect();
    let mut rel = Vec::new();
    for (i, a) in chosen.iter().enumerate() {
        for (j, b) in chosen.iter().enumerate() {
            if i != j && b.ray_subset.is_subset(&a.ray_subset) {
                rel.push((i, j));
            }
        }
    }
    let poset = Poset::new(labels, &rel);
    let (stalks, frames): (Vec<ToricMonoid>, Vec<SpanFrame>) = chosen.iter().map(|f| local_data(p, &f.ray_subset)).unzip();
    let mut gen = BTreeMap::new();
    for (x, y) in poset.strict_pairs() {
        gen.insert((x, y), transition(&frames[x], &frames[y]));
    }
    (poset, stalks, frames, gen)
}

/// `Spec(P)` with its structure sheaf: one point per face.
pub fn spec_fan(p: &ToricMonoid) -> Result<KatoFan> {
    if !p.is_sharp() {
        return Err(Error::NotSharp);
    }
    let faces = p.faces();
    let (poset, stalks, _, generization) = fan_on_faces(p, &faces);
    Ok(KatoFan { poset, stalks: stalks.into_iter().map(Stalk::Toric).collect(), generization, frontier: BTreeSet::new() })
}

impl GtcFan {
    /// Assembles a gtc fan from its parts, deriving the quotient stalks and
    /// the identity identifications `P_x ∕∕ ρ ≅ M_F,x`.
    pub fn from_parts(
        poset: Poset,
        stalks: Vec<ToricMonoid>,
        rho: Vec<IntVector>,
        generization: BTreeMap<(usize, usize), IntMatrix>,
        frontier: BTreeSet<usize>,
    ) -> Result<GtcFan> {
        let mut quotient_stalks = Vec::with_capacity(stalks.len());
        let mut quotient_iso = Vec::with_capacity(stalks.len());
        for (p, r) in stalks.iter().zip(&rho) {
            let q = p.ideal_quotient(r)?;
            let iso = p.hilbert_basis()?.iter().map(|h| (h.clone(), q.project(h).expect("basis lies in P"))).collect();
            quotient_stalks.push(Stalk::Quotient(q));
            quotient_iso.push(iso);
        }
        Ok(GtcFan { base: KatoFan { poset, stalks: quotient_stalks, generization, frontier }, gtc_stalks: stalks, rho, quotient_iso })
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        &self.base.poset
    }

    pub fn label(&self, x: usize) -> &str {
        self.base.label(x)
    }

    pub fn map(&self, x: usize, y: usize) -> Option<IntMatrix> {
        self.base.map(x, y)
    }

    pub fn closed_points(&self) -> Vec<usize> {
        self.base.closed_points()
    }

    pub fn generic_points(&self) -> Vec<usize> {
        self.base.generic_points()
    }
}

/// The gtc fan `Spec(P ∕∕ ρ)` of the boundary of `Spec k[P]`, `P = c^∨ ∩ M`:
/// all faces of `c` except the zero face.
pub fn gtc_fan_from_cone(c: &Cone) -> Result<GtcFan> {
    let rho = c.gorenstein_element().ok_or(Error::NotGorenstein)?;
    let p = ToricMonoid::from_cone(c);
    if !p.is_sharp() {
        return Err(Error::NotFullDimensional);
    }
    let faces: Vec<Face> = p.faces().into_iter().filter(|f| !f.ray_subset.is_empty()).collect();
    let (poset, stalks, frames, gen) = fan_on_faces(&p, &faces);
    let rhos = frames.iter().map(|f| f.basis.apply(&rho)).collect();
    GtcFan::from_parts(poset, stalks, rhos, gen, BTreeSet::new())
}

/// Validates the gtc structure: the underlying fan, Gorenstein stalks with
/// compatible sections, and the quotient identifications.
pub fn validate_gtc(g: &GtcFan) -> Report {
    let mut report = Report::new();
    let n = g.len();
    if !report.check(g.gtc_stalks.len() == n && g.rho.len() == n && g.quotient_iso.len() == n, "gtc_arity", &[], || {
        "stalk, section and identification counts differ from point count".into()
    }) {
        return report;
    }
    let base = KatoFan {
        poset: g.base.poset.clone(),
        stalks: g.gtc_stalks.iter().cloned().map(Stalk::Toric).collect(),
        generization: g.base.generization.clone(),
        frontier: g.base.frontier.clone(),
    };
    base.validate_into(&mut report, Some(&g.rho));
    for x in 0..n {
        let lx = g.label(x);
        let p = &g.gtc_stalks[x];
        let expect = QuotientMonoid { base: p.clone(), generator: g.rho[x].clone() };
        report.check(g.base.stalks[x] == Stalk::Quotient(expect.clone()), "quotient_stalk", &[lx], || "base stalk is not P∕∕(ρ+P)".into());
        if g.base.frontier.contains(&x) {
            continue;
        }
        let gor = p.gorenstein_element();
        report.check(gor.as_ref() == Some(&g.rho[x]), "gorenstein", &[lx], || format!("ρ = {:?}, expected {:?}", g.rho[x], gor));
        let Ok(hilbert) = p.hilbert_basis() else {
            report.fail("quotient_iso", &[lx], "stalk has no Hilbert basis".into());
            continue;
        };
        let domain: BTreeSet<&IntVector> = g.quotient_iso[x].iter().map(|(h, _)| h).collect();
        let hb: BTreeSet<&IntVector> = hilbert.iter().collect();
        report.check(domain == hb, "quotient_iso", &[lx], || "identification is not defined on the Hilbert basis".into());
        for (h, e) in &g.quotient_iso[x] {
            let ok = expect.project(h).ok().as_ref() == Some(e);
            report.check(ok, "quotient_iso", &[lx], || format!("{h:?} ↦ {e:?} is not the quotient map"));
        }
    }
    for (x, y) in g.poset().strict_pairs() {
        let Some(phi) = g.base.generization.get(&(x, y)) else { continue };
        if phi.cols() != g.rho[x].rank() || phi.rows() != g.rho[y].rank() {
            continue;
        }
        let (lx, ly) = (g.label(x), g.label(y));
        report.check(phi.apply(&g.rho[x]) == g.rho[y], "rho_compatible", &[lx, ly], || "φ_yx(ρ_x) ≠ ρ_y".into());
        let target = QuotientMonoid { base: g.gtc_stalks[y].clone(), generator: g.rho[y].clone() };
        for (h, e) in &g.quotient_iso[x] {
            let pushed = match e {
                QuotientElement::Infinity => QuotientElement::Infinity,
                QuotientElement::Finite(m) => match target.project(&phi.apply(m)) {
                    Ok(v) => v,
                    Err(_) => {
                        report.fail("quotient_iso_natural", &[lx, ly], format!("image of {m:?} leaves P_y"));
                        continue;
                    }
                },
            };
            let direct = target.project(&phi.apply(h)).ok();
            report.check(direct.as_ref() == Some(&pushed), "quotient_iso_natural", &[lx, ly], || {
                format!("identification does not commute with generization at {h:?}")
            });
        }
    }
    report
}

/// The dual space `F*`: same points, reversed order.
pub fn dual_space(f: &KatoFan) -> Poset {
    f.poset.reversed()
}

/// The bijection `Spec(P)* ≅ Spec(P^∨)`, sending a face `τ ∩ P` to
/// `(ℝτ)^⊥ ∩ P^∨`, as indices into [`spec`] of `P` and of `P^∨`.
pub fn spec_duality(p: &ToricMonoid) -> Result<Vec<usize>> {
    let dual = p.dual()?;
    let sp = spec(p);
    let sd = spec(&dual);
    let e = dual.inequality_rays();
    let rays = p.inequality_rays();
    let mut map = Vec::with_capacity(sp.faces.len());
    for f in &sp.faces {
        let t: BTreeSet<usize> = (0..e.len()).filter(|&j| f.ray_subset.iter().all(|&i| e[j].dot(&rays[i]).is_zero())).collect();
        let idx = sd.faces.iter().position(|g| g.ray_subset == t).ok_or_else(|| Error::Validation("dual face missing".into()))?;
        map.push(idx);
    }
    if !sp.poset.reversed().is_isomorphism(&sd.poset, &map) {
        return Err(Error::Validation("face correspondence does not reverse the order".into()));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntVector;

    fn triangle() -> Cone {
        Cone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[2, 3, 1]]).unwrap()
    }

    #[test]
    fn spec_fan_of_n() {
        let f = spec_fan(&ToricMonoid::orthant(1)).unwrap();
        assert_eq!(f.len(), 2);
        let ranks: BTreeSet<usize> = f.stalks.iter().map(Stalk::lattice_rank).collect();
        assert_eq!(ranks, BTreeSet::from([0, 1]));
        assert!(f.validate().passed());
    }

    #[test]
    fn spec_fan_of_triangle_monoid() {
        let p = ToricMonoid::from_cone(&triangle());
        let f = spec_fan(&p).unwrap();
        assert_eq!(f.len(), 8);
        let closed = f.closed_points();
        assert_eq!(closed.len(), 1);
        assert_eq!(f.stalks[closed[0]], Stalk::Toric(p));
        let r = f.validate();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn node_fan() {
        let g = gtc_fan_from_cone(&Cone::from_i64(&[&[1, 0], &[0, 1]]).unwrap()).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.generic_points().len(), 2);
        assert_eq!(g.closed_points().len(), 1);
        let r = validate_gtc(&g);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn triangle_fan_shape() {
        let g = gtc_fan_from_cone(&triangle()).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g.generic_points().len(), 3);
        assert_eq!(g.closed_points().len(), 1);
        let r = validate_gtc(&g);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn non_localization_flagged() {
        let mut g = gtc_fan_from_cone(&Cone::from_i64(&[&[1, 0], &[0, 1]]).unwrap()).unwrap();
        let (&(x, y), phi) = g.base.generization.iter().next().unwrap();
        let mut bad = phi.clone();
        for j in 0..bad.cols() {
            bad.set(0, j, phi.get(0, j) * crate::lattice::int(2));
        }
        g.base.generization.insert((x, y), bad);
        let r = validate_gtc(&g);
        assert!(r.flags("generization_localization", &[g.label(x), g.label(y)]), "{r}");
    }

    #[test]
    fn empty_fan_passes() {
        let g = GtcFan::from_parts(Poset::new(vec![], &[]), vec![], vec![], BTreeMap::new(), BTreeSet::new()).unwrap();
        assert!(validate_gtc(&g).passed());
    }

    #[test]
    fn dual_space_is_an_involution() {
        let f = spec_fan(&ToricMonoid::orthant(2)).unwrap();
        let d = dual_space(&f);
        assert_eq!(d.reversed(), f.poset);
    }

    #[test]
    fn spec_duality_on_triangle() {
        let p = ToricMonoid::from_cone(&triangle());
        let map = spec_duality(&p).unwrap();
        assert_eq!(map.len(), 8);
        let rho = IntVector::from_i64(&[0, 0, 1]);
        assert!(p.contains(&rho));
    }
}
