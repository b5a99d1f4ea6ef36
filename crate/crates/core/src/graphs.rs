//! The directed graph of a substitution and its classification.
//!
//! Vertex `a` has an arc to `b` when `b` occurs in the image of `a`. A
//! strongly connected graph is either primitive (some `K` joins every ordered
//! pair by a path of length exactly `K`) or has a period `l >= 2` splitting the
//! vertices into cyclically ordered classes.
//!
//! Primitivity is computed two ways: as strong connectivity plus period 1
//! (period from BFS level differences), and by explicit Boolean matrix powers
//! up to the Wielandt bound `(n-1)^2 + 1`. The two routes are kept separate so
//! tests can compare them.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::substitution::Substitution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionGraph {
    adjacency: Vec<Vec<bool>>,
}

/// Period of a strongly connected graph with its cyclic partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Period {
    pub length: usize,
    /// `classes[i]` holds the vertices of `A_i`; arcs go from `A_i` to `A_{i+1 mod l}`.
    pub classes: Vec<Vec<usize>>,
}

impl SubstitutionGraph {
    pub fn from_substitution(s: &Substitution) -> Self {
        let n = s.alphabet().len();
        let mut adjacency = vec![vec![false; n]; n];
        for (a, image) in s.images().iter().enumerate() {
            for &b in image.iter() {
                adjacency[a][b as usize] = true;
            }
        }
        Self { adjacency }
    }

    /// Arbitrary square Boolean adjacency matrix.
    pub fn from_adjacency(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let n = adjacency.len();
        if adjacency.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("adjacency matrix is not square".into()));
        }
        Ok(Self { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adjacency[a][b])
            .collect()
    }

    #[allow(clippy::needless_range_loop)]
    fn bfs_levels(&self, root: usize, reverse: bool) -> Vec<Option<usize>> {
        let n = self.vertex_count();
        let mut level = vec![None; n];
        let mut queue = VecDeque::new();
        level[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let d = level[u].unwrap_or(0);
            for v in 0..n {
                let arc = if reverse {
                    self.adjacency[v][u]
                } else {
                    self.adjacency[u][v]
                };
                if arc && level[v].is_none() {
                    level[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        level
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return false;
        }
        self.bfs_levels(0, false).iter().all(Option::is_some)
            && self.bfs_levels(0, true).iter().all(Option::is_some)
    }

    /// Gcd of all cycle lengths, via `gcd(level(u) + 1 - level(v))` over arcs.
    pub fn period(&self) -> Result<Period> {
        if !self.is_strongly_connected() {
            return Err(Error::Precondition(
                "period is only defined for strongly connected graphs".into(),
            ));
        }
        let level: Vec<usize> = self
            .bfs_levels(0, false)
            .into_iter()
            .map(|l| l.unwrap_or(0))
            .collect();
        let mut g = 0usize;
        for (u, v) in self.arcs() {
            g = gcd(g, (level[u] + 1).abs_diff(level[v]));
        }
        if g == 0 {
            return Err(Error::Precondition("graph has no cycles".into()));
        }
        let mut classes = vec![Vec::new(); g];
        for (v, &l) in level.iter().enumerate() {
            classes[l % g].push(v);
        }
        Ok(Period { length: g, classes })
    }

    pub fn is_primitive(&self) -> bool {
        self.is_strongly_connected() && matches!(self.period(), Ok(p) if p.length == 1)
    }

    /// Support of the `k`-th Boolean power: `(a, b)` is set when some path of
    /// length exactly `k` joins `a` to `b`.
    pub fn boolean_power(&self, k: usize) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut acc: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for _ in 0..k {
            acc = bool_mul(&acc, &self.adjacency);
        }
        acc
    }

    /// Smallest `K <= (n-1)^2 + 1` with every entry of the `K`-th power set.
    pub fn primitivity_exponent(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        let bound = (n - 1) * (n - 1) + 1;
        let mut power = self.adjacency.clone();
        for k in 1..=bound {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return Some(k);
            }
            power = bool_mul(&power, &self.adjacency);
        }
        None
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|m| a[i][m] && b[m][j])).collect())
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
