//! Lower hulls of periodic convex functions on `Z^n` and the resulting
//! duality data, computed on a finite patch and identified under `Λ′`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{cell_deltas, wedge_fan, WedgeComplex};
use crate::duality::{datum_from_facet_polytopes, DualityDatum};
use crate::lattice::IntVector;
use crate::monoid::rational_rank;
use crate::polytope::LatticePolytope;
use crate::report::Report;
use crate::{Error, Result};

type V = Vec<i64>;

fn det(m: &[V]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        n => (0..n)
            .map(|j| {
                let minor: Vec<V> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| *x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] as i128 * det(&minor)
            })
            .sum(),
    }
}

fn floor_div(a: i128, d: i128) -> i128 {
    if d > 0 {
        a.div_euclid(d)
    } else {
        (-a).div_euclid(-d)
    }
}

/// `f = q + r` with `q(x) = ½ xᵀHx + bᵀx + c` strictly convex and `r`
/// periodic under `Λ′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicConvexFunction {
    /// Hessian `H` of `q`: symmetric, positive definite, even diagonal.
    pub hessian: Vec<V>,
    pub b: V,
    pub c: i64,
    /// Rows form a basis of `Λ′`.
    pub lattice_prime: Vec<V>,
    /// Values of `r` on reduced residues; unlisted residues are zero.
    pub r: BTreeMap<V, i64>,
}

impl PeriodicConvexFunction {
    pub fn new(hessian: Vec<V>, b: V, c: i64, lattice_prime: Vec<V>, r: &[(V, i64)]) -> Result<Self> {
        let n = hessian.len();
        let square = |m: &[V]| m.iter().all(|row| row.len() == n);
        if n == 0 || !square(&hessian) || b.len() != n || lattice_prime.len() != n || !square(&lattice_prime) {
            return Err(Error::Dimension(format!("expected {n}×{n} data")));
        }
        if (0..n).any(|i| (0..n).any(|j| hessian[i][j] != hessian[j][i])) {
            return Err(Error::Invalid("hessian is not symmetric".into()));
        }
        if (0..n).any(|i| hessian[i][i] % 2 != 0) {
            return Err(Error::Invalid("q has non-integral values (odd diagonal)".into()));
        }
        for k in 1..=n {
            let lead: Vec<V> = hessian[..k].iter().map(|row| row[..k].to_vec()).collect();
            if det(&lead) <= 0 {
                return Err(Error::Invalid("hessian is not positive definite".into()));
            }
        }
        if det(&lattice_prime) == 0 {
            return Err(Error::Invalid("Λ′ has rank below n".into()));
        }
        let mut f = PeriodicConvexFunction { hessian, b, c, lattice_prime, r: BTreeMap::new() };
        for (rep, value) in r {
            if rep.len() != n {
                return Err(Error::Dimension(format!("residue {rep:?}")));
            }
            if f.r.insert(f.reduce(rep), *value).is_some() {
                return Err(Error::Invalid(format!("residue {rep:?} listed twice")));
            }
        }
        Ok(f)
    }

    /// `Λ′ = 2Z²`, `q = x² − xy + y²`, `r = 1` on `Λ′` and `0` elsewhere.
    pub fn hexagonal() -> Self {
        PeriodicConvexFunction::new(vec![vec![2, -1], vec![-1, 2]], vec![0, 0], 0, vec![vec![2, 0], vec![0, 2]], &[(vec![0, 0], 1)])
            .expect("valid example")
    }

    /// `q = x²` on `Z` with `Λ′ = mZ` and `r = 0`.
    pub fn parabola(m: i64) -> Result<Self> {
        PeriodicConvexFunction::new(vec![vec![2]], vec![0], 0, vec![vec![m]], &[])
    }

    /// `q = x² + y²` with `Λ′ = Z²`; every cell is a unit square.
    pub fn square_grid() -> Self {
        PeriodicConvexFunction::new(vec![vec![2, 0], vec![0, 2]], vec![0, 0], 0, vec![vec![1, 0], vec![0, 1]], &[]).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.hessian.len()
    }

    fn hv(&self, v: &[i64]) -> V {
        self.hessian.iter().map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum()).collect()
    }

    pub fn q(&self, v: &[i64]) -> i64 {
        let quad: i64 = self.hv(v).iter().zip(v).map(|(a, x)| a * x).sum();
        quad / 2 + self.b.iter().zip(v).map(|(a, x)| a * x).sum::<i64>() + self.c
    }

    /// Integer parts of the coordinates of `v` in the basis of `Λ′`.
    pub fn cell_coords(&self, v: &[i64]) -> V {
        let n = self.dim();
        let l = &self.lattice_prime;
        let d = det(l);
        // c·L = v, so c_j = Σ_i v_i adj(L)_ij / det L
        (0..n)
            .map(|j| {
                let num: i128 = (0..n)
                    .map(|i| {
                        let minor: Vec<V> = (0..n).filter(|&a| a != j).map(|a| (0..n).filter(|&b| b != i).map(|b| l[a][b]).collect()).collect();
                        let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                        v[i] as i128 * s * det(&minor)
                    })
                    .sum();
                floor_div(num, d) as i64
            })
            .collect()
    }

    fn combine(&self, c: &[i64]) -> V {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|i| c[i] * self.lattice_prime[i][k]).sum()).collect()
    }

    /// The representative of `v + Λ′` in the fundamental parallelepiped.
    pub fn reduce(&self, v: &[i64]) -> V {
        let s = self.combine(&self.cell_coords(v));
        v.iter().zip(&s).map(|(a, b)| a - b).collect()
    }

    pub fn value(&self, v: &[i64]) -> i64 {
        self.q(v) + self.r.get(&self.reduce(v)).copied().unwrap_or(0)
    }

    /// `T_w(v, λ) = (v + w, λ + wᵀHv + q(w) − c)`.
    pub fn translate(&self, w: &[i64], p: &[i64]) -> V {
        let n = self.dim();
        let (v, t) = (&p[..n], p[n]);
        let hv = self.hv(v);
        let mut out: V = v.iter().zip(w).map(|(a, b)| a + b).collect();
        out.push(t + w.iter().zip(&hv).map(|(a, b)| a * b).sum::<i64>() + self.q(w) - self.c);
        out
    }

    pub fn lift(&self, v: &[i64]) -> V {
        let mut p = v.to_vec();
        p.push(self.value(v));
        p
    }
}

/// Cells of the lower hull of `Γ_f` over a patch of `Λ′`-translates of the
/// fundamental domain.
#[derive(Clone, Debug)]
pub struct PeriodicCells {
    pub margin: i64,
    /// Lifted points `(v, f(v))` of the enlarged patch.
    pub points: Vec<V>,
    /// Every maximal cell found on the enlarged patch, by vertex indices.
    pub maximal: Vec<BTreeSet<usize>>,
    /// Kept cells of all dimensions, ordered by dimension then vertices.
    pub cells: Vec<BTreeSet<usize>>,
    pub dims: Vec<usize>,
    /// Kept cells some of whose neighbouring maximal cells were not kept.
    pub frontier: BTreeSet<usize>,
    /// Orbit index per kept cell, and a canonical vertex list per orbit.
    pub orbit: Vec<usize>,
    pub orbit_keys: Vec<Vec<V>>,
}

impl PeriodicCells {
    fn projected(&self, cell: &BTreeSet<usize>) -> Vec<V> {
        let n = self.points[0].len() - 1;
        let mut out: Vec<V> = cell.iter().map(|&i| self.points[i][..n].to_vec()).collect();
        out.sort();
        out
    }

    /// Kept maximal cells (the generic points).
    pub fn maximal_kept(&self) -> Vec<usize> {
        let n = self.points[0].len() - 1;
        (0..self.cells.len()).filter(|&i| self.dims[i] == n).collect()
    }

    /// Orbit relations `(a, b)` with a cell of orbit `a` a face of one in `b`.
    pub fn orbit_poset(&self) -> BTreeSet<(Vec<V>, Vec<V>)> {
        let mut out = BTreeSet::new();
        for (i, a) in self.cells.iter().enumerate() {
            for (j, b) in self.cells.iter().enumerate() {
                if a.is_subset(b) {
                    out.insert((self.orbit_keys[self.orbit[i]].clone(), self.orbit_keys[self.orbit[j]].clone()));
                }
            }
        }
        out
    }
}

fn in_region(f: &PeriodicConvexFunction, v: &[i64], k: i64) -> bool {
    f.cell_coords(v).iter().all(|&c| -k <= c && c <= k)
}

fn region_points(f: &PeriodicConvexFunction, k: i64) -> Vec<V> {
    let n = f.dim();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    for corner in (0..n).map(|_| [-k, k + 1]).multi_cartesian_product() {
        let p = f.combine(&corner);
        for i in 0..n {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (0..n).map(|i| lo[i]..=hi[i]).multi_cartesian_product().filter(|v| in_region(f, v, k)).collect()
}

/// Normal `N` of the hyperplane through `n + 1` points of `Z^(n+1)`, with
/// positive last coordinate; `None` for vertical or degenerate simplices.
fn upward_normal(pts: &[&V]) -> Option<V> {
    let m = pts[0].len();
    let rows: Vec<V> = pts[1..].iter().map(|p| p.iter().zip(pts[0]).map(|(a, b)| a - b).collect()).collect();
    let mut normal: V = (0..m)
        .map(|i| {
            let minor: Vec<V> = rows.iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, x)| *x).collect()).collect();
            let s = if i % 2 == 0 { 1 } else { -1 };
            (s * det(&minor)) as i64
        })
        .collect();
    let last = *normal.last()?;
    if last == 0 {
        return None;
    }
    if last < 0 {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    Some(normal)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cells of the lower hull over `Λ′`-translates of the fundamental domain
/// with coordinates in `[−margin, margin]`; neighbourhoods come from one
/// further layer of translates.
pub fn lower_hull(f: &PeriodicConvexFunction, margin: i64) -> Result<PeriodicCells> {
    if margin < 0 {
        return Err(Error::Precondition("margin must be nonnegative".into()));
    }
    let n = f.dim();
    let points: Vec<V> = region_points(f, margin + 1).iter().map(|v| f.lift(v)).collect();
    let index: BTreeMap<V, usize> = points.iter().enumerate().map(|(i, p)| (p[..n].to_vec(), i)).collect();
    let reach = f.lattice_prime.iter().flatten().map(|x| x.abs()).sum::<i64>().max(1);
    let near = |a: &V, b: &V| a[..n].iter().zip(&b[..n]).all(|(x, y)| (x - y).abs() <= reach);
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        let nbrs: Vec<usize> = (i + 1..points.len()).filter(|&j| near(p, &points[j])).collect();
        for combo in nbrs.iter().combinations(n) {
            let mut simplex = vec![p];
            simplex.extend(combo.iter().map(|&&j| &points[j]));
            let Some(normal) = upward_normal(&simplex) else { continue };
            let base = dot(&normal, p);
            let mut tight = BTreeSet::new();
            let mut ok = true;
            for (k, q) in points.iter().enumerate() {
                let h = dot(&normal, q) - base;
                if h < 0 {
                    ok = false;
                    break;
                }
                if h == 0 {
                    tight.insert(k);
                }
            }
            if ok {
                faces.insert(tight);
            }
        }
    }
    let covered: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    if let Some(p) = points.iter().enumerate().find(|(i, p)| in_region(f, &p[..n], margin) && !covered.contains(i)) {
        return Err(Error::Invalid(format!("f is not convex: {:?} lies above the hull", p.1)));
    }
    // vertices and faces of each maximal cell
    let polytope_of = |s: &BTreeSet<usize>| -> Result<(LatticePolytope, Vec<usize>)> {
        let proj: Vec<IntVector> = s.iter().map(|&i| IntVector::from_i64(&points[i][..n])).collect();
        let poly = LatticePolytope::new(n, &proj)?;
        let idx = poly.vertices().iter().map(|v| index[&v.to_i64().expect("small")]).collect();
        Ok((poly, idx))
    };
    let mut maximal = Vec::new();
    let mut maximal_faces = Vec::new();
    for s in &faces {
        let (poly, idx) = polytope_of(s)?;
        maximal.push(idx.iter().copied().collect::<BTreeSet<usize>>());
        maximal_faces.push(poly.faces().into_iter().map(|fc| fc.into_iter().map(|k| idx[k]).collect::<BTreeSet<usize>>()).collect::<Vec<_>>());
    }
    let inside = |s: &BTreeSet<usize>| s.iter().all(|&i| in_region(f, &points[i][..n], margin));
    let kept_max: Vec<usize> = (0..maximal.len()).filter(|&m| inside(&maximal[m])).collect();
    let dim_of = |s: &BTreeSet<usize>| {
        let v: Vec<IntVector> = s.iter().map(|&i| IntVector::from_i64(&points[i])).collect();
        let d: Vec<IntVector> = v.iter().map(|x| x.sub(&v[0])).collect();
        rational_rank(&d)
    };
    let mut kept: BTreeSet<(usize, Vec<V>, BTreeSet<usize>)> = BTreeSet::new();
    for &m in &kept_max {
        for fc in &maximal_faces[m] {
            let mut key: Vec<V> = fc.iter().map(|&i| points[i][..n].to_vec()).collect();
            key.sort();
            kept.insert((dim_of(fc), key, fc.clone()));
        }
    }
    // every codimension-one face of a kept cell lies in exactly two cells
    for &m in &kept_max {
        for fc in &maximal_faces[m] {
            if dim_of(fc) + 1 == n {
                let count = maximal.iter().filter(|s| fc.is_subset(s)).count();
                if count != 2 {
                    return Err(Error::Invalid(format!(
                        "face {:?} lies in {count} maximal cells: unbounded face or margin too small",
                        fc.iter().map(|&i| &points[i][..n]).collect::<Vec<_>>()
                    )));
                }
            }
        }
    }
    let (dims, cells): (Vec<usize>, Vec<BTreeSet<usize>>) = kept.into_iter().map(|(d, _, s)| (d, s)).unzip();
    let kept_set: BTreeSet<&BTreeSet<usize>> = kept_max.iter().map(|&m| &maximal[m]).collect();
    let frontier = (0..cells.len()).filter(|&i| maximal.iter().any(|s| cells[i].is_subset(s) && !kept_set.contains(s))).collect();
    let mut pc = PeriodicCells { margin, points, maximal, cells, dims, frontier, orbit: Vec::new(), orbit_keys: Vec::new() };
    let keys: Vec<Vec<V>> = pc
        .cells
        .iter()
        .map(|c| {
            let proj = pc.projected(c);
            let shift: V = proj[0].iter().zip(f.reduce(&proj[0])).map(|(a, b)| a - b).collect();
            proj.iter().map(|v| v.iter().zip(&shift).map(|(a, b)| a - b).collect()).collect()
        })
        .collect();
    pc.orbit_keys = keys.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    pc.orbit = keys.iter().map(|k| pc.orbit_keys.binary_search(k).expect("present")).collect();
    Ok(pc)
}

/// Checks that `T_w` preserves `Γ_f` on the patch and maps kept maximal
/// cells to computed cells, for each basis vector `w` of `Λ′`.
pub fn check_translation_invariance(f: &PeriodicConvexFunction, pc: &PeriodicCells) -> Report {
    let mut report = Report::new();
    let n = f.dim();
    let max_keys: BTreeSet<Vec<V>> = pc.maximal.iter().map(|s| pc.projected(s)).collect();
    for w in &f.lattice_prime {
        let wl = format!("{w:?}");
        for p in &pc.points {
            let moved = f.translate(w, p);
            let ok = moved == f.lift(&moved[..n]);
            report.check(ok, "graph_invariant", &[&wl], || format!("T_w{p:?} = {moved:?} is off the graph"));
        }
        for m in pc.maximal_kept() {
            let mut moved: Vec<V> = pc.projected(&pc.cells[m]).iter().map(|v| v.iter().zip(w).map(|(a, b)| a + b).collect()).collect();
            moved.sort();
            report.check(max_keys.contains(&moved), "cell_invariant", &[&wl], || format!("translate {moved:?} is not a cell"));
        }
    }
    report
}

/// The duality datum of the lower hull on a patch, with `Λ′`-orbits.
#[derive(Clone, Debug)]
pub struct AbelianDatum {
    pub function: PeriodicConvexFunction,
    pub cells: PeriodicCells,
    pub datum: DualityDatum,
}

impl AbelianDatum {
    /// Points not on the frontier and lying over no frontier point.
    pub fn is_interior(&self, z: usize) -> bool {
        let f = &self.datum.f_side;
        !f.base.frontier.contains(&z) && f.poset().lower_set(z).iter().all(|x| !f.base.frontier.contains(x))
    }

    /// One interior representative per orbit among the given points.
    pub fn representatives(&self, points: &[usize]) -> Result<Vec<usize>> {
        let mut seen = BTreeMap::new();
        for &z in points {
            seen.entry(self.cells.orbit[z]).or_insert(None);
            if self.is_interior(z) {
                seen.entry(self.cells.orbit[z]).and_modify(|e: &mut Option<usize>| {
                    e.get_or_insert(z);
                });
            }
        }
        seen.into_values().map(|r| r.ok_or_else(|| Error::Invalid("margin too small: an orbit has no interior point".into()))).collect()
    }
}

pub fn abelian_datum(f: &PeriodicConvexFunction, margin: i64) -> Result<AbelianDatum> {
    let pc = lower_hull(f, margin)?;
    let n = f.dim();
    let points: Vec<IntVector> = pc.points.iter().map(|p| IntVector::from_i64(p)).collect();
    let star: Vec<Vec<usize>> = pc
        .cells
        .iter()
        .map(|c| pc.maximal.iter().filter(|s| c.is_subset(s)).flatten().copied().collect::<BTreeSet<_>>().into_iter().collect())
        .collect();
    let labels = pc.cells.iter().map(|c| pc.projected(c).iter().map(|v| format!("({})", v.iter().join(","))).join("")).collect();
    let up = IntVector::unit(n + 1, n);
    let rho = |_: &IntVector| up.clone();
    let complex = WedgeComplex {
        rank: n + 1,
        points: &points,
        cells: &pc.cells,
        labels,
        star,
        extra: vec![up.clone()],
        rho: &rho,
        frontier: pc.frontier.clone(),
    };
    let w = wedge_fan(&complex)?;
    let deltas = cell_deltas(&w.fan, &w.quotients, &points, &pc.cells);
    let datum = datum_from_facet_polytopes(&w.fan, &deltas)?;
    Ok(AbelianDatum { function: f.clone(), cells: pc, datum })
}
