//! Exact volume via the pulling triangulation.
//!
//! The face lattice is built combinatorially from the facet–vertex incidence
//! (faces are intersections of facet vertex sets, with exact affine-rank
//! checks), then every face is fanned from its lexicographically least vertex
//! over the triangulations of the children that miss it. Vertices are stored
//! in lexicographic order, so "least vertex" is "least index". One hull
//! conversion per polytope; everything after is bitmask work plus one
//! determinant per simplex.

use crate::geom::polytope::Polytope;
use crate::linalg;
use crate::rat::{factorial, Rat};
use num_traits::Zero;
use std::collections::HashMap;

/// A triangulation of a polytope: each simplex is a list of `affine_dim + 1`
/// vertex indices. Simplex volumes sum to the polytope volume.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub dim: usize,
    pub simplices: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key(Vec<u64>);

impl Key {
    fn full(n: usize) -> Key {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        let rem = n % 64;
        if rem != 0 {
            *words.last_mut().unwrap() = (1u64 << rem) - 1;
        }
        Key(words)
    }
    fn from_indices(n: usize, idx: &[usize]) -> Key {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &i in idx {
            words[i / 64] |= 1 << (i % 64);
        }
        Key(words)
    }
    fn intersect(&self, other: &Key) -> Key {
        Key(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a & b)
            .collect())
    }
    fn is_subset(&self, other: &Key) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, word) in self.0.iter().enumerate() {
            let mut x = *word;
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                out.push(w * 64 + b);
                x &= x - 1;
            }
        }
        out
    }
    fn min_index(&self) -> usize {
        for (w, word) in self.0.iter().enumerate() {
            if *word != 0 {
                return w * 64 + word.trailing_zeros() as usize;
            }
        }
        unreachable!("empty face")
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

struct LatticeCtx<'a> {
    p: &'a Polytope,
    facet_keys: Vec<Key>,
    dim_memo: HashMap<Key, usize>,
    tri_memo: HashMap<Key, Vec<Vec<usize>>>,
}

impl<'a> LatticeCtx<'a> {
    fn face_dim(&mut self, key: &Key) -> usize {
        if let Some(&d) = self.dim_memo.get(key) {
            return d;
        }
        let pts: Vec<Vec<Rat>> = key
            .indices()
            .iter()
            .map(|&i| self.p.vertices()[i].0.clone())
            .collect();
        let d = linalg::affine_dim(&pts);
        self.dim_memo.insert(key.clone(), d);
        d
    }

    fn triangulate_face(&mut self, key: &Key, d: usize) -> Vec<Vec<usize>> {
        if let Some(t) = self.tri_memo.get(key) {
            return t.clone();
        }
        let result = if d == 0 {
            vec![vec![key.min_index()]]
        } else {
            let apex = key.min_index();
            // Children = maximal proper faces = intersections with facet
            // vertex sets that drop the dimension by exactly one.
            let mut seen: Vec<Key> = Vec::new();
            let mut simplices = Vec::new();
            for fk in &self.facet_keys.clone() {
                if key.is_subset(fk) {
                    continue;
                }
                let child = key.intersect(fk);
                if child.0.iter().all(|w| *w == 0) || seen.contains(&child) {
                    continue;
                }
                seen.push(child.clone());
                if self.face_dim(&child) != d - 1 {
                    continue;
                }
                if child.contains(apex) {
                    continue;
                }
                for mut s in self.triangulate_face(&child, d - 1) {
                    s.push(apex);
                    simplices.push(s);
                }
            }
            simplices
        };
        self.tri_memo.insert(key.clone(), result.clone());
        result
    }
}

/// Pulling triangulation of the polytope (requires it; full- or
/// lower-dimensional, triangulated inside its affine hull).
pub fn triangulate(p: &Polytope) -> Triangulation {
    let n = p.vertices().len();
    let d = p.affine_dim();
    if d == 0 {
        return Triangulation {
            dim: 0,
            simplices: vec![vec![0]],
        };
    }
    let incidence = p.facet_vertex_incidence();
    let facet_keys: Vec<Key> = incidence
        .iter()
        .map(|idx| Key::from_indices(n, idx))
        .collect();
    let mut ctx = LatticeCtx {
        p,
        facet_keys,
        dim_memo: HashMap::new(),
        tri_memo: HashMap::new(),
    };
    let top = Key::full(n);
    ctx.dim_memo.insert(top.clone(), d);
    let simplices = ctx.triangulate_face(&top, d);
    Triangulation { dim: d, simplices }
}

/// Signed-free simplex volume |det| / n! from vertex indices (full simplex in
/// ambient dimension).
pub fn simplex_volume(p: &Polytope, simplex: &[usize]) -> Rat {
    let n = p.dim();
    debug_assert_eq!(simplex.len(), n + 1);
    let base = &p.vertices()[simplex[n]];
    let rows: Vec<Vec<Rat>> = simplex[..n]
        .iter()
        .map(|&i| p.vertices()[i].sub(base).0)
        .collect();
    let d = linalg::det(&rows);
    crate::rat::rat_abs(&d) / Rat::from_integer(factorial(n))
}

/// Exact n-dimensional volume. Zero when the affine hull is a proper
/// subspace; one for the zero-dimensional point polytope.
pub fn volume(p: &Polytope) -> Rat {
    if p.dim() == 0 {
        return crate::rat::rat_one();
    }
    if !p.is_full_dim() {
        return Rat::zero();
    }
    let tri = triangulate(p);
    let mut acc = Rat::zero();
    for s in &tri.simplices {
        acc += simplex_volume(p, s);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::{pt, ptq, Point};
    use crate::rat::rat;

    fn cross(dim: usize) -> Polytope {
        let mut pts = Vec::new();
        for i in 0..dim {
            let mut p = vec![rat(0, 1); dim];
            p[i] = rat(1, 1);
            pts.push(Point::new(p.clone()));
            p[i] = rat(-1, 1);
            pts.push(Point::new(p));
        }
        Polytope::hull(dim, &pts).unwrap()
    }

    #[test]
    fn cube_and_simplex_volumes() {
        let cube = Polytope::hull(
            3,
            &[
                pt(&[0, 0, 0]),
                pt(&[1, 0, 0]),
                pt(&[0, 1, 0]),
                pt(&[0, 0, 1]),
                pt(&[1, 1, 0]),
                pt(&[1, 0, 1]),
                pt(&[0, 1, 1]),
                pt(&[1, 1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(volume(&cube), rat(1, 1));
        let simplex = Polytope::hull(
            3,
            &[pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])],
        )
        .unwrap();
        assert_eq!(volume(&simplex), rat(1, 6));
    }

    #[test]
    fn cross_polytope_volume_through_dimension_four() {
        assert_eq!(volume(&cross(2)), rat(2, 1));
        assert_eq!(volume(&cross(3)), rat(4, 3));
        assert_eq!(volume(&cross(4)), rat(2, 3));
    }

    #[test]
    fn pentagon_volume_matches_shoelace_value() {
        // conv{0, (0,1), (1,1), (3/2,1/2), (3/2,0)}, shoelace area 11/8
        let p = Polytope::hull(
            2,
            &[
                pt(&[0, 0]),
                pt(&[0, 1]),
                pt(&[1, 1]),
                ptq(&[(3, 2), (1, 2)]),
                ptq(&[(3, 2), (0, 1)]),
            ],
        )
        .unwrap();
        assert_eq!(volume(&p), rat(11, 8));
    }

    #[test]
    fn degenerate_volumes() {
        let seg = Polytope::hull(2, &[pt(&[0, 0]), pt(&[1, 1])]).unwrap();
        assert_eq!(volume(&seg), rat(0, 1));
        let point = Polytope::hull(2, &[pt(&[5, 7])]).unwrap();
        assert_eq!(volume(&point), rat(0, 1));
        assert_eq!(volume(&Polytope::origin_point()), rat(1, 1));
        let interval = Polytope::hull(1, &[pt(&[-2]), pt(&[3])]).unwrap();
        assert_eq!(volume(&interval), rat(5, 1));
    }

    #[test]
    fn triangulation_simplices_are_full_and_disjointly_sized() {
        let c = cross(3);
        let tri = triangulate(&c);
        assert!(tri.simplices.iter().all(|s| s.len() == 4));
        let total: Rat = tri
            .simplices
            .iter()
            .map(|s| simplex_volume(&c, s))
            .sum();
        assert_eq!(total, rat(4, 3));
        for s in &tri.simplices {
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            assert_eq!(t.len(), 4);
        }
    }
}
