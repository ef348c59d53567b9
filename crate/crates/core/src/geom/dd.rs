//! Double description: extreme rays of a pointed cone {x : Ax ≥ 0}.
//!
//! This is the workhorse behind both hull directions (facet enumeration via
//! the homogenized polar cone, vertex enumeration via the homogenization of an
//! H-polytope) and cone representation conversion. Rays are kept as primitive
//! integer vectors; the insertion loop uses the standard combinatorial
//! adjacency test over zero sets, so every intermediate set is exactly the
//! extreme-ray set of the partial cone. The final set is intrinsic to the cone
//! and is returned sorted, so results do not depend on insertion order.
//!
//! A brute-force facet enumeration over n-subsets lives in `hull::brute_force`
//! as the independent cross-check; it is exponential in the number of input
//! points and unusable beyond toy sizes, which is why this path exists.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{Int, Rat};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Zero-set bitmask over input rows.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(words: usize) -> Self {
        Bits(vec![0; words])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and_count(&self, other: &Bits) -> u32 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }
    fn contains_and(&self, a: &Bits, b: &Bits) -> bool {
        // self ⊇ (a ∩ b)
        self.0
            .iter()
            .zip(a.0.iter().zip(&b.0))
            .all(|(s, (x, y))| (x & y) & !s == 0)
    }
}

struct Ray {
    v: Vec<Int>,
    zeros: Bits,
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    linalg::dot_int(a, b)
}

/// Extreme rays of {x ∈ ℝᵈ : ⟨rowᵢ, x⟩ ≥ 0 for all i}.
///
/// Requires the cone to be pointed, i.e. rank(rows) = d; otherwise
/// `ConeNotPointed`. Returns primitive integer rays, sorted lexicographically.
pub fn extreme_rays(rows_in: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    if rows_in.is_empty() {
        return Err(Error::EmptyInput("extreme_rays"));
    }
    let d = rows_in[0].len();

    // Deduplicate primitive rows, keep deterministic (sorted) order.
    let mut rows: Vec<Vec<Int>> = rows_in
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| linalg::primitive_integer_ints(r))
        .collect();
    rows.sort();
    rows.dedup();
    let m = rows.len();
    let words = m.div_ceil(64);

    let rat_rows = |idx: &[usize]| -> Vec<Vec<Rat>> {
        idx.iter().map(|&i| linalg::to_rat_vec(&rows[i])).collect()
    };

    // Initial basis: first d rows that are linearly independent.
    let all: Vec<Vec<Rat>> = rows.iter().map(|r| linalg::to_rat_vec(r)).collect();
    let indep = linalg::independent_subset(&all);
    if indep.len() < d {
        return Err(Error::ConeNotPointed);
    }
    let basis_idx: Vec<usize> = indep[..d].to_vec();
    let basis = rat_rows(&basis_idx);

    // Columns of A_B⁻¹ are the extreme rays of the initial simplicial cone.
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[j] = crate::rat::rat_one();
        let col = linalg::solve_square(&basis, &e).ok_or(Error::ConeNotPointed)?;
        let v = linalg::primitive_integer(&col);
        let mut zeros = Bits::new(words);
        for (k, &bi) in basis_idx.iter().enumerate() {
            if k != j {
                zeros.set(bi);
            }
        }
        rays.push(Ray { v, zeros });
    }

    let mut processed: Vec<usize> = basis_idx.clone();
    let in_basis = |i: usize| basis_idx.contains(&i);

    for i in 0..m {
        if in_basis(i) {
            continue;
        }
        let row = &rows[i];
        let signs: Vec<Int> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let any_neg = signs.iter().any(|s| s.is_negative());
        if !any_neg {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    r.zeros.set(i);
                }
            }
            processed.push(i);
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&k| signs[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| signs[k].is_negative()).collect();

        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                // Quick cardinality filter, then the combinatorial adjacency
                // test: no third ray's zero set may contain Z(p) ∩ Z(q).
                if d >= 2 && rays[p].zeros.and_count(&rays[q].zeros) < (d - 2) as u32 {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| {
                    k == p || k == q || !r.zeros.contains_and(&rays[p].zeros, &rays[q].zeros)
                });
                if !adjacent {
                    continue;
                }
                let sp = &signs[p];
                let sq = &signs[q];
                let v: Vec<Int> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(vp, vq)| sp * vq - sq * vp)
                    .collect();
                let v = linalg::primitive_integer_ints(&v);
                let mut zeros = Bits::new(words);
                for &pi in &processed {
                    if dot(&rows[pi], &v).is_zero() {
                        zeros.set(pi);
                    }
                }
                zeros.set(i);
                new_rays.push(Ray { v, zeros });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(pos.len() + new_rays.len());
        for (k, r) in rays.into_iter().enumerate() {
            if signs[k].is_negative() {
                continue;
            }
            let mut r = r;
            if signs[k].is_zero() {
                r.zeros.set(i);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
        processed.push(i);
    }

    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort_by(|a, b| cmp_int_vec(a, b));
    out.dedup();
    Ok(out)
}

fn cmp_int_vec(a: &[Int], b: &[Int]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn simplicial_cone_identity() {
        // {x ≥ 0} in ℝ³: extreme rays are the coordinate axes.
        let rows = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
    }

    #[test]
    fn square_hull_cone() {
        // Homogenized polar cone of the unit square plus an interior point;
        // rays encode the four facets.
        let rows = vec![
            iv(&[1, 0, 0]),
            iv(&[1, 1, 0]),
            iv(&[1, 0, 1]),
            iv(&[1, 1, 1]),
            iv(&[4, 2, 1]),
        ];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(rays.len(), 4);
        assert!(rays.contains(&iv(&[0, 0, 1])));
        assert!(rays.contains(&iv(&[0, 1, 0])));
        assert!(rays.contains(&iv(&[1, -1, 0])));
        assert!(rays.contains(&iv(&[1, 0, -1])));
    }

    #[test]
    fn redundant_rows_change_nothing() {
        let rows = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 0])];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn non_pointed_is_rejected() {
        let rows = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])];
        assert!(matches!(
            extreme_rays(&rows),
            Err(Error::ConeNotPointed)
        ));
    }

    #[test]
    fn skewed_cone() {
        // cone{(1,0),(1,1)} as {x: ⟨h,x⟩ ≥ 0}: its dual has rays (0,1),(1,-1).
        let rows = vec![iv(&[1, 0]), iv(&[1, 1])];
        let rays = extreme_rays(&rows).unwrap();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, -1])]);
    }
}
