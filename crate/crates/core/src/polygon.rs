//! Small lattice polygons in machine integers: hulls, the unimodular normal
//! form and the sweep over polygons with one interior lattice point.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;

use crate::lattice::IntVector;

pub type Pt = [i64; 2];

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Vertices of the convex hull in counterclockwise order, starting from the
/// lexicographically smallest; collinear points are dropped.
pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts: Vec<Pt> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Strict containment in a counterclockwise hull with at least 3 vertices.
pub fn strictly_inside(hull: &[Pt], p: Pt) -> bool {
    hull.len() >= 3 && (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], p) > 0)
}

pub fn inside(hull: &[Pt], p: Pt) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => cross(hull[0], hull[1], p) == 0 && (0..2).all(|k| p[k] >= hull[0][k].min(hull[1][k]) && p[k] <= hull[0][k].max(hull[1][k])),
        _ => (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], p) >= 0),
    }
}

fn bounds(hull: &[Pt]) -> (Pt, Pt) {
    let lo = [hull.iter().map(|p| p[0]).min().unwrap_or(0), hull.iter().map(|p| p[1]).min().unwrap_or(0)];
    let hi = [hull.iter().map(|p| p[0]).max().unwrap_or(0), hull.iter().map(|p| p[1]).max().unwrap_or(0)];
    (lo, hi)
}

pub fn interior_points(hull: &[Pt]) -> Vec<Pt> {
    let (lo, hi) = bounds(hull);
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            if strictly_inside(hull, [x, y]) {
                out.push([x, y]);
            }
        }
    }
    out
}

pub fn lattice_points(hull: &[Pt]) -> Vec<Pt> {
    let (lo, hi) = bounds(hull);
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            if inside(hull, [x, y]) {
                out.push([x, y]);
            }
        }
    }
    out
}

fn primitive(v: Pt) -> (Pt, i64) {
    let g = v[0].gcd(&v[1]);
    ([v[0] / g, v[1] / g], g)
}

/// A matrix in `SL_2(Z)` sending the primitive vector `d` to `(1, 0)`.
fn straighten(d: Pt) -> [[i64; 2]; 2] {
    let e = d[0].extended_gcd(&d[1]);
    let (s, t) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    [[s, t], [-d[1], d[0]]]
}

fn apply(m: &[[i64; 2]; 2], p: Pt) -> Pt {
    [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
}

/// Exact normal form under `GL_2(Z) ⋉ Z^2`: the lexicographically least
/// vertex sequence over all choices of a starting vertex and orientation,
/// after moving the first edge onto the positive x-axis with the polygon
/// above it and reducing the shear by the last vertex.
pub fn normal_form(points: &[Pt]) -> Vec<Pt> {
    let hull = convex_hull(points);
    match hull.len() {
        0 => return Vec::new(),
        1 => return vec![[0, 0]],
        2 => return vec![[0, 0], [primitive([hull[1][0] - hull[0][0], hull[1][1] - hull[0][1]]).1, 0]],
        _ => {}
    }
    let m = hull.len();
    let mut best: Option<Vec<Pt>> = None;
    for orient in [1i64, -1] {
        for i in 0..m {
            let seq: Vec<Pt> = (0..m)
                .map(|j| if orient == 1 { hull[(i + j) % m] } else { hull[(i + m - j) % m] })
                .map(|p| [p[0] - hull[i][0], p[1] - hull[i][1]])
                .collect();
            let (d, _) = primitive(seq[1]);
            let a = straighten(d);
            let mut w: Vec<Pt> = seq.iter().map(|&p| apply(&a, p)).collect();
            if orient == -1 {
                for p in &mut w {
                    p[1] = -p[1];
                }
            }
            let [x, y] = w[m - 1];
            let k = (x.rem_euclid(y) - x) / y;
            for p in &mut w {
                p[0] += k * p[1];
            }
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.expect("at least one candidate")
}

/// Primitive edge directions at each vertex of a counterclockwise hull:
/// `(to previous, to next)`.
pub fn vertex_cones(hull: &[Pt]) -> Vec<(Pt, Pt)> {
    let m = hull.len();
    (0..m)
        .map(|i| {
            let p = hull[(i + m - 1) % m];
            let n = hull[(i + 1) % m];
            let v = hull[i];
            (primitive([p[0] - v[0], p[1] - v[1]]).0, primitive([n[0] - v[0], n[1] - v[1]]).0)
        })
        .collect()
}

/// `|det|` of the primitive edge directions at each vertex.
pub fn vertex_indices(hull: &[Pt]) -> Vec<i64> {
    vertex_cones(hull).iter().map(|(a, b)| (a[0] * b[1] - a[1] * b[0]).abs()).collect()
}

/// Lattice lengths of the edges of a counterclockwise hull.
pub fn edge_lengths(hull: &[Pt]) -> Vec<i64> {
    let m = hull.len();
    (0..m).map(|i| primitive([hull[(i + 1) % m][0] - hull[i][0], hull[(i + 1) % m][1] - hull[i][1]]).1).collect()
}

/// All lattice polygons with vertices in `[-b, b]^2` whose only interior
/// lattice point is the origin, found by growing triangles one point at a
/// time. Returned as counterclockwise hulls in sorted order.
pub fn one_point_polygons(b: i64) -> Vec<Vec<Pt>> {
    let grid: Vec<Pt> = (-b..=b).flat_map(|x| (-b..=b).map(move |y| [x, y])).collect();
    // Interior points only grow, so every target is reached through hulls
    // that contain the origin and have no other interior point.
    let ok = |h: &[Pt]| inside(h, [0, 0]) && interior_points(h).iter().all(|p| *p == [0, 0]);
    let mut seen: BTreeSet<Vec<Pt>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<Pt>> = VecDeque::new();
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            for k in j + 1..grid.len() {
                let h = convex_hull(&[grid[i], grid[j], grid[k]]);
                if h.len() == 3 && ok(&h) && seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
    }
    while let Some(h) = queue.pop_front() {
        for &p in &grid {
            if inside(&h, p) {
                continue;
            }
            let mut pts = h.clone();
            pts.push(p);
            let g = convex_hull(&pts);
            if !seen.contains(&g) && ok(&g) {
                seen.insert(g.clone());
                queue.push_back(g);
            }
        }
    }
    seen.into_iter().filter(|h| strictly_inside(h, [0, 0])).collect()
}

/// One representative (the first in sorted order) per normal form.
pub fn classes(polygons: &[Vec<Pt>]) -> Vec<Vec<Pt>> {
    let mut forms: BTreeSet<Vec<Pt>> = BTreeSet::new();
    let mut out = Vec::new();
    for p in polygons {
        if forms.insert(normal_form(p)) {
            out.push(p.clone());
        }
    }
    out
}

pub fn to_vectors(points: &[Pt]) -> Vec<IntVector> {
    points.iter().map(|p| IntVector::from_i64(p)).collect()
}

pub fn from_vectors(points: &[IntVector]) -> Option<Vec<Pt>> {
    points
        .iter()
        .map(|v| match v.to_i64()?.as_slice() {
            [x, y] => Some([*x, *y]),
            _ => None,
        })
        .collect()
}
