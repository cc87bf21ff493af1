//! Finite posets with labelled points.
//!
//! The order follows the specialization convention: `x ≤ y` iff `x` lies in
//! the closure of `y`. Closed points are minimal, generic points maximal.

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relations`.
    pub fn new(labels: Vec<String>, relations: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    /// True when the relation is antisymmetric.
    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
    }

    pub fn reversed(&self) -> Poset {
        let n = self.len();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        Poset { labels: self.labels.clone(), leq }
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).filter(move |&y| x != y).map(move |y| (x, y))).filter(|&(x, y)| self.leq[x][y]).collect()
    }

    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !(0..self.len()).any(|y| self.lt(y, x))).collect()
    }

    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !(0..self.len()).any(|y| self.lt(x, y))).collect()
    }

    /// Smallest open set containing `x`: all generizations.
    pub fn upper_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[x][y]).collect()
    }

    pub fn lower_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[y][x]).collect()
    }

    /// Checks that `map` (indices of `self` to indices of `other`) is an order
    /// isomorphism.
    pub fn is_isomorphism(&self, other: &Poset, map: &[usize]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; other.len()];
        for &m in map {
            if m >= other.len() || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.leq[x][y] == other.leq[map[x]][map[y]]))
    }

    /// Label-preserving comparison.
    pub fn same_as(&self, other: &Poset) -> bool {
        let index: BTreeMap<&str, usize> = other.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| index.get(l.as_str()).copied()).collect();
        map.is_some_and(|m| self.is_isomorphism(other, &m))
    }
}
