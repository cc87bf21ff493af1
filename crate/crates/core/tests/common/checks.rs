use std::collections::HashMap;

use proptest::prelude::*;
use proptest::sample::Index;
use toric_gtc::lattice::IntVector;
use toric_gtc::monoid::{rational_rank, QuotientElement, ToricMonoid};

use super::{check, cone, monoid, v};

pub fn rays(p: &ToricMonoid) -> Vec<Vec<i64>> {
    p.inequality_rays().iter().map(|r| r.to_i64().unwrap()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn in_p(rays: &[Vec<i64>], m: &[i64]) -> bool {
    rays.iter().all(|r| dot(r, m) >= 0)
}

pub fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..3).map(|j| [1, -1, 1][j] * m[0][j] * det(&minor(m, 0, j))).sum(),
    }
}

pub fn minor(m: &[Vec<i64>], i: usize, j: usize) -> Vec<Vec<i64>> {
    m.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, r)| r.iter().enumerate().filter(|(l, _)| *l != j).map(|(_, x)| *x).collect()).collect()
}

/// Coordinate bound for `{x : 0 ≤ ⟨x, r⟩ ≤ c_r}` via Cramer's rule on `n`
/// independent rays.
pub fn slab_bound(rays: &[Vec<i64>], caps: &[i64]) -> i64 {
    let n = rays[0].len();
    let idx: Vec<usize> = (0..rays.len()).collect();
    let chosen =
        itertools::Itertools::combinations(idx.into_iter(), n).find(|c| det(&c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>()) != 0).unwrap();
    let r: Vec<Vec<i64>> = chosen.iter().map(|&i| rays[i].clone()).collect();
    let d = det(&r).abs();
    let cof = |i: usize, j: usize| if n == 1 { 1 } else { det(&minor(&r, i, j)).abs() };
    (0..n).map(|i| (0..n).map(|j| cof(j, i) * caps[chosen[j]]).sum::<i64>().div_euclid(d) + 1).max().unwrap()
}

pub fn cone_biduality(cases: u32) {
    check(cases, cone(), |c| {
        let d = c.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), c.clone());
        for u in d.rays() {
            prop_assert!(c.rays().iter().all(|r| u.dot(r) >= 0.into()));
            let tight: Vec<IntVector> = c.rays().iter().filter(|r| u.dot(r) == 0.into()).cloned().collect();
            prop_assert_eq!(rational_rank(&tight), c.ambient_rank() - 1);
        }
        Ok(())
    });
}

pub fn hilbert_basis_is_complete_and_minimal(cases: u32) {
    check(cases, monoid(), |p| {
        let n = p.lattice_rank();
        let rs = rays(&p);
        let g: Vec<i64> = p.grading().to_i64().unwrap();
        let hb: Vec<Vec<i64>> = p.hilbert_basis().unwrap().iter().map(|h| h.to_i64().unwrap()).collect();
        for h in &hb {
            prop_assert!(in_p(&rs, h) && h.iter().any(|x| *x != 0));
            let caps: Vec<i64> = rs.iter().map(|r| dot(r, h)).collect();
            let b = slab_bound(&rs, &caps);
            for x in box_points(n, b) {
                let rest: Vec<i64> = h.iter().zip(&x).map(|(a, b)| a - b).collect();
                let trivial = x.iter().all(|c| *c == 0) || rest.iter().all(|c| *c == 0);
                prop_assert!(trivial || !(in_p(&rs, &x) && in_p(&rs, &rest)), "{:?} splits off {:?}", h, x);
            }
        }
        let mut memo: HashMap<Vec<i64>, bool> = HashMap::new();
        fn decomposes(m: &[i64], rs: &[Vec<i64>], hb: &[Vec<i64>], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
            if m.iter().all(|x| *x == 0) {
                return true;
            }
            if let Some(&r) = memo.get(m) {
                return r;
            }
            let r = hb.iter().any(|h| {
                let rest: Vec<i64> = m.iter().zip(h).map(|(a, b)| a - b).collect();
                in_p(rs, &rest) && decomposes(&rest, rs, hb, memo)
            });
            memo.insert(m.to_vec(), r);
            r
        }
        let b = if n == 2 { 6 } else { 3 };
        for m in box_points(n, b).into_iter().filter(|m| in_p(&rs, m) && dot(&g, m) <= 5 * dot(&g, &g).max(1)) {
            prop_assert!(decomposes(&m, &rs, &hb, &mut memo), "{:?} is not a sum of basis elements", m);
        }
        Ok(())
    });
}

pub fn ideal_quotient_universal_property(cases: u32) {
    check(cases, (monoid(), any::<Index>()), |(p, pick)| {
        let n = p.lattice_rank();
        let g = p.grading();
        let nonzero: Vec<IntVector> = box_points(n, 2).iter().map(|x| v(x)).filter(|m| p.contains(m) && !m.is_zero()).collect();
        prop_assume!(!nonzero.is_empty());
        let rho = pick.get(&nonzero).clone();
        let q = p.ideal_quotient(&rho).unwrap();
        let bound = g.dot(&rho) * 2;
        let pts = p.points_up_to_degree(&g, &bound).unwrap();
        // truncated target {0..k, ∞} with k = deg ρ - 1
        let k = g.dot(&rho) - 1;
        let f = |m: &IntVector| {
            let d = g.dot(m);
            if d > k {
                None
            } else {
                Some(d)
            }
        };
        let fbar = |e: &QuotientElement| match e {
            QuotientElement::Finite(m) => f(m),
            QuotientElement::Infinity => None,
        };
        let plus = |a: Option<_>, b: Option<_>| match (a, b) {
            (Some(x), Some(y)) => Some(x + y).filter(|s| *s <= k),
            _ => None,
        };
        for a in &pts {
            let pa = q.project(a).unwrap();
            prop_assert_eq!(pa == QuotientElement::Infinity, p.contains(&a.sub(&rho)));
            prop_assert_eq!(fbar(&pa), f(a));
            for b in &pts {
                let pb = q.project(b).unwrap();
                prop_assert_eq!(q.project(&a.add(b)).unwrap(), q.add(&pa, &pb));
                prop_assert_eq!(fbar(&q.add(&pa, &pb)), plus(fbar(&pa), fbar(&pb)));
            }
        }
        let elements = q.elements_up_to_degree(&bound).unwrap();
        for e in &elements {
            let hit = match e {
                QuotientElement::Infinity => q.project(&rho).unwrap() == QuotientElement::Infinity,
                QuotientElement::Finite(m) => q.project(m).unwrap() == *e,
            };
            prop_assert!(hit);
        }
        prop_assert_eq!(q.zero(), QuotientElement::Finite(IntVector::zeros(n)));
        Ok(())
    });
}
