//! Posets, two-dimensional posets built from permutations, and the chain
//! and stable-set polytopes that tie linear-extension counting to
//! anti-blocking geometry.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::antiblocking::AntiBlockingBody;
use crate::geom::{Point, Polytope};
use crate::rat::Rat;
use crate::{Error, Result};

mod counts;

pub use counts::{
    count_linear_extensions, count_linear_extensions_brute, e_j_double, e_j_double_oracle,
    ej_sequence_props, is_series_parallel, restricted_extension_counts, sidorenko_suite,
    weak_order_interval_counts, EjSequenceReport, SidorenkoReport,
};

/// A finite poset on the ground set {0, …, n−1}, stored as its full strict
/// relation. Always transitively closed and acyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// The poset generated by `relations` (pairs `(a, b)` meaning `a ≺ b`),
    /// closed transitively. Rejects endpoints off the ground set and any
    /// relation set whose closure is cyclic.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Poset> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!(
                    "relation ({a}, {b}) leaves the ground set of size {n}"
                )));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::InvalidPoset(format!(
                "transitive closure puts {i} below itself"
            )));
        }
        Ok(Poset { n, less })
    }

    pub fn chain(n: usize) -> Poset {
        let less = (0..n)
            .map(|i| (0..n).map(|j| i < j).collect())
            .collect();
        Poset { n, less }
    }

    pub fn antichain(n: usize) -> Poset {
        Poset {
            n,
            less: vec![vec![false; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Strict comparison `a ≺ b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less[a][b] || self.less[b][a]
    }

    /// Every strict pair `(a, b)` with `a ≺ b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).filter(move |&b| self.less[a][b]).map(move |b| (a, b)))
            .collect()
    }

    /// Pairs `a ≺ b` with nothing strictly between them.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !(0..self.n).any(|c| self.less[a][c] && self.less[c][b]))
            .collect()
    }

    /// Restriction to `ground`, re-indexed order-preservingly.
    pub fn restrict(&self, ground: &[usize]) -> Poset {
        let mut g = ground.to_vec();
        g.sort_unstable();
        g.dedup();
        let less = g
            .iter()
            .map(|&a| g.iter().map(|&b| self.less[a][b]).collect())
            .collect();
        Poset { n: g.len(), less }
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.comparable(a, b)))
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| !self.comparable(a, b)))
    }

    /// Adjacency matrix of the comparability graph.
    pub fn comparability_adjacency(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| a != b && self.comparable(a, b)).collect())
            .collect()
    }

    /// Adjacency matrix of the complement of the comparability graph.
    pub fn incomparability_adjacency(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| a != b && !self.comparable(a, b)).collect())
            .collect()
    }
}

/// A permutation of {1, …, n} in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(one_line));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// The complemented word π̄ with π̄ᵢ = n + 1 − πᵢ. Its two-dimensional
    /// poset has the co-comparability graph of the one of π.
    pub fn bar(&self) -> Permutation {
        let n = self.n();
        Permutation {
            one_line: self.one_line.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Inversion set {(πᵢ, πⱼ) : i < j, πᵢ > πⱼ} as value pairs.
    pub fn inversion_set(&self) -> BTreeSet<(usize, usize)> {
        let w = &self.one_line;
        let mut set = BTreeSet::new();
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    set.insert((w[i], w[j]));
                }
            }
        }
        set
    }

    /// All of Sₙ, in lexicographic order of one-line words.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!(n <= 8, "full symmetric group sweeps are sized for n <= 8");
        (1..=n)
            .permutations(n)
            .map(|one_line| Permutation { one_line })
            .collect()
    }
}

/// A pair of posets on the same ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePoset {
    p: Poset,
    q: Poset,
}

impl DoublePoset {
    pub fn new(p: Poset, q: Poset) -> Result<DoublePoset> {
        if p.n() != q.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                got: q.n(),
            });
        }
        Ok(DoublePoset { p, q })
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn p(&self) -> &Poset {
        &self.p
    }

    pub fn q(&self) -> &Poset {
        &self.q
    }
}

/// The two-dimensional poset P_π with `a ≺ b` iff `a < b` and `π_a < π_b`.
/// Already transitively closed as the intersection of two linear orders.
pub fn poset_from_permutation(pi: &Permutation) -> Poset {
    let n = pi.n();
    let w = pi.one_line();
    let less = (0..n)
        .map(|i| (0..n).map(|j| i < j && w[i] < w[j]).collect())
        .collect();
    Poset { n, less }
}

/// Maximal chains, as saturated cover paths from minimal to maximal
/// elements.
fn maximal_chains(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.n();
    let covers = p.cover_relations();
    let ups: Vec<Vec<usize>> = (0..n)
        .map(|a| covers.iter().filter(|&&(x, _)| x == a).map(|&(_, b)| b).collect())
        .collect();
    let mut stack: Vec<Vec<usize>> = (0..n)
        .filter(|&b| (0..n).all(|a| !p.less(a, b)))
        .map(|m| vec![m])
        .collect();
    let mut out = Vec::new();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        if ups[last].is_empty() {
            out.push(chain);
            continue;
        }
        for &next in &ups[last] {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
    }
    out
}

/// The chain polytope: points of the nonnegative orthant whose coordinate
/// sums along every chain stay at most one. Its normalized volume counts
/// the linear extensions.
pub fn chain_polytope(p: &Poset) -> Result<AntiBlockingBody> {
    let n = p.n();
    if n == 0 {
        return Err(Error::EmptyInput("chain polytope ground set"));
    }
    let mut rows: Vec<(Point, Rat)> = (0..n)
        .map(|i| (Point::unit(n, i).neg(), Rat::zero()))
        .collect();
    for chain in maximal_chains(p) {
        let mut coords = vec![Rat::zero(); n];
        for &a in &chain {
            coords[a] = Rat::one();
        }
        rows.push((Point::new(coords), Rat::one()));
    }
    AntiBlockingBody::new(Polytope::from_hrep(n, &rows)?)
}

/// The stable-set polytope of an undirected graph: the hull of the
/// characteristic vectors of its stable sets.
pub fn stable_set_polytope(adjacency: &[Vec<bool>]) -> Result<AntiBlockingBody> {
    let n = adjacency.len();
    if n == 0 {
        return Err(Error::EmptyInput("stable set polytope graph"));
    }
    for (i, row) in adjacency.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Config("adjacency matrix is not square".into()));
        }
        if row[i] {
            return Err(Error::Config("adjacency matrix has a loop".into()));
        }
        for j in 0..n {
            if adjacency[i][j] != adjacency[j][i] {
                return Err(Error::Config("adjacency matrix is not symmetric".into()));
            }
        }
    }
    let mut points = Vec::new();
    for mask in 0u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let stable = members
            .iter()
            .enumerate()
            .all(|(k, &u)| members[k + 1..].iter().all(|&v| !adjacency[u][v]));
        if stable {
            let coords = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            points.push(Point::new(coords));
        }
    }
    AntiBlockingBody::new(Polytope::hull(n, &points)?)
}
