//! Cones over lattice triangles and tetragons at height one.

use num_integer::Integer;

use crate::lattice::{quotient_lattice, IntMatrix, IntVector};
use crate::monoid::Cone;
use crate::polygon::{self, Pt};
use crate::{Error, Result};

/// Normal form `v₁ = 0, v₂ = (1, 0), v₃ = (a, b)` with `0 ≤ a < b` of an
/// ordered lattice triangle whose first edge is primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleType {
    pub a: i64,
    pub b: i64,
}

impl TriangleType {
    /// Both remaining edges primitive: `gcd(a, b) = gcd(a − 1, b) = 1`.
    pub fn is_valid(&self) -> bool {
        self.a.gcd(&self.b) == 1 && (self.a - 1).gcd(&self.b) == 1
    }
}

fn planar(v: &IntVector) -> Result<Pt> {
    match v.to_i64().as_deref() {
        Some([x, y, 1]) => Ok([*x, *y]),
        _ => Err(Error::Precondition(format!("{v:?} is not a lattice point at height 1"))),
    }
}

pub fn triangle_normal_form(v1: &IntVector, v2: &IntVector, v3: &IntVector) -> Result<TriangleType> {
    let (p1, p2, p3) = (planar(v1)?, planar(v2)?, planar(v3)?);
    let d = [p2[0] - p1[0], p2[1] - p1[1]];
    let e = [p3[0] - p1[0], p3[1] - p1[1]];
    let det = d[0] * e[1] - d[1] * e[0];
    if det == 0 {
        return Err(Error::Collinear);
    }
    let g = d[0].extended_gcd(&d[1]);
    if g.gcd.abs() != 1 {
        return Err(Error::Precondition("first edge is not primitive".into()));
    }
    // rows (s, t) and (−d₁, d₀) send d to (1, 0)
    let (s, t) = if g.gcd < 0 { (-g.x, -g.y) } else { (g.x, g.y) };
    let x = s * e[0] + t * e[1];
    let b = det.abs();
    Ok(TriangleType { a: x.rem_euclid(b), b })
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn check_odd(b: u64) -> Result<()> {
    if b == 0 || b.is_multiple_of(2) {
        return Err(Error::Precondition(format!("b = {b} must be odd and positive")));
    }
    Ok(())
}

/// Number of valid `a` for a given `b`: `∏ p^(n−1)(p − 2)` over `b = ∏ p^n`.
pub fn count_triangle_types(b: u64) -> Result<u64> {
    check_odd(b)?;
    Ok(factorize(b).into_iter().map(|(p, n)| p.pow(n - 1) * (p - 2)).product())
}

/// The valid `a` with `0 ≤ a < b`, by direct enumeration.
pub fn triangle_type_values(b: u64) -> Result<Vec<u64>> {
    check_odd(b)?;
    Ok((0..b).filter(|&a| a.gcd(&b) == 1 && (a + b - 1).gcd(&b) == 1).collect())
}

/// Singularity of the boundary divisor of a cone at one ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub ray: IntVector,
    /// `n` with the divisor carrying an `A_n` point.
    pub a_type: i64,
}

/// Per ray `v_i` of the cone over a convex lattice polygon (vertices in
/// cyclic order at height one), the type `det(v_{i−1}, v_i, v_{i+1}) − 1`.
pub fn component_types(vertices: &[IntVector]) -> Vec<ComponentType> {
    let m = vertices.len();
    (0..m)
        .map(|i| {
            let d = IntMatrix::from_rows(&[vertices[(i + m - 1) % m].clone(), vertices[i].clone(), vertices[(i + 1) % m].clone()], 3).det();
            let n = d.to_string().parse::<i64>().expect("small determinant") - 1;
            ComponentType { ray: vertices[i].clone(), a_type: n }
        })
        .collect()
}

/// The same types computed in the quotient lattice `Z^3 / ⟨v_i⟩`, where the
/// images of the neighbouring rays span a cone of index `n + 1`.
pub fn component_types_by_quotient(vertices: &[IntVector]) -> Vec<i64> {
    let m = vertices.len();
    (0..m)
        .map(|i| {
            let q = quotient_lattice(3, &[vertices[i].clone()]);
            let a = q.project(&vertices[(i + m - 1) % m]);
            let b = q.project(&vertices[(i + 1) % m]);
            let pa = a.primitive();
            let pb = b.primitive();
            let d = IntMatrix::from_rows(&[pa, pb], 2).det();
            d.to_string().trim_start_matches('-').parse::<i64>().expect("small determinant") - 1
        })
        .collect()
}

/// Gorenstein, (R₂) and component data of the cone over a tetragon.
#[derive(Clone, Debug)]
pub struct TetragonData {
    pub vertices: Vec<IntVector>,
    pub cone: Cone,
    pub rho: Option<IntVector>,
    pub r2: bool,
    /// Types predicted by the closed formulas, for `Z₀₁ … Z₀₄`.
    pub formula_types: [i64; 4],
    /// Types from the determinants `det(v_{i−1}, v_i, v_{i+1})`.
    pub components: Vec<ComponentType>,
}

impl TetragonData {
    pub fn consistent(&self) -> bool {
        self.components.iter().map(|c| c.a_type).eq(self.formula_types)
    }
}

pub fn tetragon_data(a: i64, b: i64, c: i64, d: i64) -> Result<TetragonData> {
    let fail = |m: &str| Err(Error::Precondition(format!("({a}, {b}, {c}, {d}): {m}")));
    // b = 1 admits the unit square (1, 1, 0, 1)
    if !(0 <= a && (a < b || a == 1 && b == 1)) {
        return fail("need 0 ≤ a < b");
    }
    if (a - 1).gcd(&b) != 1 || c.gcd(&d) != 1 || (c - a).gcd(&(d - b)) != 1 {
        return fail("edges must be primitive");
    }
    if a * d - b * c <= 0 || d <= 0 {
        return fail("need ad − bc > 0 and d > 0");
    }
    let pts: [Pt; 4] = [[0, 0], [1, 0], [a, b], [c, d]];
    if polygon::convex_hull(&pts).len() != 4 {
        return fail("not a convex tetragon");
    }
    let vertices: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(&[p[0], p[1], 1])).collect();
    let cone = Cone::new(3, &vertices)?;
    let formula_types = [d - 1, b - 1, b - d + a * d - b * c - 1, a * d - b * c - 1];
    Ok(TetragonData { rho: cone.gorenstein_element(), r2: cone.is_r2(), components: component_types(&vertices), vertices, cone, formula_types })
}
