//! Exact integer linear algebra over free abelian groups of small rank.
//!
//! Everything here works with arbitrary-precision integers. The normal forms
//! are the textbook elimination algorithms; ranks in this crate stay below
//! seven, so no modular tricks are used.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Element of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(pub Vec<Int>);

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl IntVector {
    pub fn zeros(rank: usize) -> Self {
        IntVector(vec![Int::zero(); rank])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| int(x)).collect())
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zeros(rank);
        v.0[i] = Int::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> Int {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> IntVector {
        IntVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |g, x| g.gcd(x))
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|x| x.to_i64()).collect()
    }

    pub fn concat(&self, tail: &[Int]) -> IntVector {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        IntVector(v)
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64(r)).collect();
        let cols = r.first().map_or(0, |v| v.rank());
        Self::from_rows(&r, cols)
    }

    /// Builds a matrix whose rows are the given vectors; `cols` is needed for
    /// the empty case.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.rank(), cols, "row length mismatch");
            data.extend(r.0.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_cols(cols: &[IntVector], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Int>) -> Option<Self> {
        (data.len() == rows * cols).then_some(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.cols, v.rank(), "dimension mismatch in apply");
        IntVector((0..self.rows).map(|i| self.row_slice(i).iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect())
    }

    fn row_slice(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let cols: Vec<IntVector> = range.map(|j| self.col(j)).collect();
        Self::from_cols(&cols, self.rows)
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let rows: Vec<IntVector> = range.map(|i| self.row(i)).collect();
        Self::from_rows(&rows, self.cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            self.data[target * self.cols + j] -= q * s;
        }
    }

    fn col_axpy(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            self.data[i * self.cols + target] -= q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn rank(&self) -> usize {
        rational_row_echelon(&self.to_rat_rows()).len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        self.row_vectors().iter().map(IntVector::to_rat).collect()
    }

    /// Inverse of a unimodular matrix; `None` when the matrix is not unimodular.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let inv = rational_inverse(&self.to_rat_rows())?;
        let n = self.rows;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &inv[i][j];
                if !v.is_integer() {
                    return None;
                }
                out.set(i, j, v.to_integer());
            }
        }
        Some(out)
    }
}

/// Result of [`hermite_normal_form`]: `h = u · m`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

/// Row-style Hermite normal form `h = u·m` with `u` unimodular.
///
/// `h` is in row echelon form, every pivot is positive and the entries above
/// a pivot lie in `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut p = 0;
    for col in 0..m.cols {
        if p == m.rows {
            break;
        }
        loop {
            let best = (p..m.rows).filter(|&i| !h.get(i, col).is_zero()).min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut done = true;
            for i in p + 1..m.rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col).div_floor(h.get(p, col));
                h.row_axpy(i, p, &q);
                u.row_axpy(i, p, &q);
                if !h.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = h.get(i, col).div_floor(h.get(p, col));
            h.row_axpy(i, p, &q);
            u.row_axpy(i, p, &q);
        }
        p += 1;
    }
    Hermite { h, u, rank: p }
}

/// Result of [`smith_normal_form`]: `d = u · m · v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form with unimodular transforms; the diagonal is nonnegative
/// and satisfies `d_1 | d_2 | …`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if !x.is_zero() && pivot.is_none_or(|(pi, pj): (usize, usize)| x.abs() < d.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest leftover remainder into the pivot slot
                let mut best = (t, t);
                for i in t..rows {
                    let x = d.get(i, t);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let x = d.get(t, j);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let piv = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let minus_one = int(-1);
                    d.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { d, u, v, rank: t }
}

/// Solves `a · x = b` over the integers; returns the solution whose free
/// Smith coordinates are zero.
pub fn solve_integer(a: &IntMatrix, b: &IntVector) -> Option<IntVector> {
    assert_eq!(a.rows, b.rank());
    let s = smith_normal_form(a);
    let ub = s.u.apply(b);
    let mut y = IntVector::zeros(a.cols);
    for i in 0..a.rows {
        let di = if i < s.rank { s.d.get(i, i).clone() } else { Int::zero() };
        if di.is_zero() {
            if !ub.0[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub.0[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y.0[i] = q;
        }
    }
    Some(s.v.apply(&y))
}

/// Solves `x · c = t` for an integer matrix `x`, one row at a time.
pub fn solve_left(c: &IntMatrix, t: &IntMatrix) -> Option<IntMatrix> {
    if t.cols != c.cols {
        return None;
    }
    let ct = c.transpose();
    let rows: Option<Vec<IntVector>> = (0..t.rows).map(|i| solve_integer(&ct, &t.row(i))).collect();
    Some(IntMatrix::from_rows(&rows?, c.rows))
}

/// An integer matrix `s` with `a · s = 1`, when `a` is surjective.
pub fn right_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let cols: Option<Vec<IntVector>> = (0..a.rows).map(|i| solve_integer(a, &IntVector::unit(a.rows, i))).collect();
    Some(IntMatrix::from_cols(&cols?, a.cols))
}

/// Basis (HNF-normalized rows) of `{x ∈ Z^cols : a·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let s = smith_normal_form(a);
    let basis: Vec<IntVector> = (s.rank..a.cols).map(|j| s.v.col(j)).collect();
    hnf_rows(&basis, a.cols)
}

fn hnf_rows(vectors: &[IntVector], rank: usize) -> Vec<IntVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let h = hermite_normal_form(&IntMatrix::from_rows(vectors, rank));
    (0..h.rank).map(|i| h.h.row(i)).collect()
}

/// Basis of the saturation of the span of `vectors`, in Hermite form.
pub fn saturate(vectors: &[IntVector]) -> Vec<IntVector> {
    let Some(n) = vectors.first().map(IntVector::rank) else {
        return Vec::new();
    };
    let m = IntMatrix::from_rows(vectors, n);
    let s = smith_normal_form(&m);
    let Some(v_inv) = s.v.inverse_unimodular() else { unreachable!("smith transform is unimodular") };
    let rows: Vec<IntVector> = (0..s.rank).map(|i| v_inv.row(i)).collect();
    hnf_rows(&rows, n)
}

/// Basis of the subgroup generated by `vectors` (not saturated).
pub fn span_basis(vectors: &[IntVector], rank: usize) -> Vec<IntVector> {
    hnf_rows(vectors, rank)
}

/// True when `x` is an integral combination of `basis`.
pub fn in_span(basis: &[IntVector], x: &IntVector) -> bool {
    if basis.is_empty() {
        return x.is_zero();
    }
    let a = IntMatrix::from_cols(basis, x.rank());
    solve_integer(&a, x).is_some()
}

/// `Z^n` modulo a saturated subgroup, with a surjection onto `Z^free_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLattice {
    pub ambient_rank: usize,
    pub subgroup_basis: Vec<IntVector>,
    pub free_rank: usize,
    /// `free_rank × ambient_rank`, kernel exactly the saturated subgroup.
    pub projection: IntMatrix,
    /// `ambient_rank × free_rank` right inverse of `projection`.
    pub section: IntMatrix,
}

impl QuotientLattice {
    pub fn project(&self, x: &IntVector) -> IntVector {
        self.projection.apply(x)
    }

    pub fn lift(&self, y: &IntVector) -> IntVector {
        self.section.apply(y)
    }
}

pub fn quotient_lattice(ambient_rank: usize, subgroup: &[IntVector]) -> QuotientLattice {
    let sat = saturate(subgroup);
    let r = sat.len();
    // rows of the projection annihilate the saturated subgroup
    let projection_rows =
        if r == 0 { IntMatrix::identity(ambient_rank).row_vectors() } else { integer_kernel(&IntMatrix::from_rows(&sat, ambient_rank)) };
    let projection = IntMatrix::from_rows(&projection_rows, ambient_rank);
    let free_rank = ambient_rank - r;
    let mut section_cols = Vec::with_capacity(free_rank);
    for i in 0..free_rank {
        let e = IntVector::unit(free_rank, i);
        let x = solve_integer(&projection, &e).expect("projection onto a saturated quotient is surjective");
        section_cols.push(x);
    }
    let section = IntMatrix::from_cols(&section_cols, ambient_rank);
    QuotientLattice { ambient_rank, subgroup_basis: sat, free_rank, projection, section }
}

/// A saturated sublattice together with coordinates on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanFrame {
    pub ambient_rank: usize,
    /// Rows form a basis of the saturated span.
    pub basis: IntMatrix,
    /// `coords · x` gives the coordinates of `x` (for `x` in the span).
    pub coords: IntMatrix,
}

impl SpanFrame {
    pub fn of(vectors: &[IntVector], ambient_rank: usize) -> Self {
        let sat = saturate(vectors);
        let basis = IntMatrix::from_rows(&sat, ambient_rank);
        let r = sat.len();
        let mut coord_rows = Vec::with_capacity(r);
        for i in 0..r {
            let e = IntVector::unit(r, i);
            coord_rows.push(solve_integer(&basis, &e).expect("saturated basis extends to a unimodular one"));
        }
        let coords = IntMatrix::from_rows(&coord_rows, ambient_rank);
        SpanFrame { ambient_rank, basis, coords }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn to_coords(&self, x: &IntVector) -> IntVector {
        self.coords.apply(x)
    }

    pub fn from_coords(&self, c: &IntVector) -> IntVector {
        self.basis.transpose().apply(c)
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.from_coords(&self.to_coords(x)) == *x
    }
}

/// Row echelon form over the rationals; returns the nonzero rows.
pub fn rational_row_echelon(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for j in 0..ncols {
            let v = &a[r][j] / &pivot;
            a[r][j] = v;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Solves `a·x = b` over the rationals (any solution, free variables zero).
pub fn solve_rational(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = rational_row_echelon(&aug);
    let mut x = vec![Rat::zero(); ncols];
    for row in &ech {
        let lead = row.iter().position(|v| !v.is_zero()).expect("nonzero row");
        if lead == ncols {
            return None;
        }
        x[lead] = row[ncols].clone();
    }
    Some(x)
}

fn rational_inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, p);
        let pivot = aug[c][c].clone();
        for v in aug[c].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * n {
                    let v = &aug[c][j] * &f;
                    aug[i][j] -= v;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Lexicographic comparison helper used for deterministic orderings.
pub fn lex_cmp(a: &IntVector, b: &IntVector) -> Ordering {
    a.0.cmp(&b.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_identity_and_zero() {
        let h = hermite_normal_form(&IntMatrix::identity(2));
        assert_eq!(h.h, IntMatrix::identity(2));
        assert_eq!(h.u, IntMatrix::identity(2));
        let z = m(&[&[0, 0], &[0, 0]]);
        let h = hermite_normal_form(&z);
        assert_eq!(h.h, z);
        assert_eq!(h.u, IntMatrix::identity(2));
        assert_eq!(h.rank, 0);
    }

    #[test]
    fn hnf_upper_triangular_example() {
        let a = m(&[&[2, 4], &[0, 6]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h.u.mul(&a), h.h);
        assert!(h.u.det().abs().is_one());
        assert_eq!(h.h.get(0, 0), &int(2));
        assert_eq!(h.h.get(1, 1), &int(6));
        assert_eq!(h.h.get(1, 0), &int(0));
        let off = h.h.get(0, 1);
        assert!(!off.is_negative() && off < &int(6));
    }

    #[test]
    fn hnf_reduces_entries_above_pivots() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h.u.mul(&a), h.h);
        for c in 0..3 {
            let piv = h.h.get(c, c).clone();
            assert!(piv.is_positive());
            for r in 0..c {
                assert!(!h.h.get(r, c).is_negative() && h.h.get(r, c) < &piv);
            }
        }
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);
        let s = smith_normal_form(&m(&[&[6]]));
        assert_eq!(s.d, m(&[&[6]]));
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&[IntVector::from_i64(&[2, 0])]), vec![IntVector::from_i64(&[1, 0])]);
        let s = saturate(&[IntVector::from_i64(&[2, 2]), IntVector::from_i64(&[0, 4])]);
        assert_eq!(s, vec![IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[0, 1])]);
        assert!(saturate(&[]).is_empty());
    }

    #[test]
    fn quotient_lattice_examples() {
        let q = quotient_lattice(2, &[IntVector::from_i64(&[1, 0])]);
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.projection, m(&[&[0, 1]]));
        let q = quotient_lattice(2, &[]);
        assert_eq!(q.projection, IntMatrix::identity(2));
        let q = quotient_lattice(3, &[IntVector::from_i64(&[1, 0, 1])]);
        assert_eq!(q.free_rank, 2);
        let ker = integer_kernel(&q.projection);
        assert_eq!(ker, vec![IntVector::from_i64(&[1, 0, 1])]);
        assert_eq!(q.projection.mul(&q.section), IntMatrix::identity(2));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[5, 7, 1]]);
        assert_eq!(a.det(), int(1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv), IntMatrix::identity(3));
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), int(-1));
    }

    #[test]
    fn integer_solve_detects_divisibility() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert!(solve_integer(&a, &IntVector::from_i64(&[1, 0])).is_none());
        assert_eq!(solve_integer(&a, &IntVector::from_i64(&[4, 9])), Some(IntVector::from_i64(&[2, 3])));
    }

    #[test]
    fn span_frame_round_trip() {
        let f = SpanFrame::of(&[IntVector::from_i64(&[2, 0, 2]), IntVector::from_i64(&[0, 3, 0])], 3);
        assert_eq!(f.rank(), 2);
        let x = IntVector::from_i64(&[5, -7, 5]);
        assert!(f.contains(&x));
        assert_eq!(f.from_coords(&f.to_coords(&x)), x);
        assert!(!f.contains(&IntVector::from_i64(&[1, 0, 0])));
    }
}
