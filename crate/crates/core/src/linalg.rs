//! Exact linear algebra over the rationals: rank, solve, nullspace,
//! determinants, and primitive-integer normalization of directions.
//!
//! Matrices are row-major `Vec<Vec<Rat>>`. Sizes stay tiny (ambient dimension
//! at most ten), so plain fraction-pivoting Gaussian elimination is the right
//! tool.

use crate::rat::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Row echelon reduction in place. Returns the pivot columns.
fn eliminate(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for c2 in 0..cols {
                    let d = &rows[r][c2] * &f;
                    rows[i][c2] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    eliminate(&mut m).len()
}

/// Affine rank of a point set minus one, i.e. the dimension of its affine hull.
pub fn affine_dim(points: &[Vec<Rat>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Basis of the null space {x : Ax = 0}, as primitive integer vectors in a
/// deterministic order (one per free column, ascending).
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = eliminate(&mut m);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(primitive_integer(&v));
    }
    basis
}

/// Solves the square system Ax = b exactly. None when A is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = eliminate(&mut m);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut sign = false;
    let mut acc = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            sign = !sign;
        }
        acc *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for c2 in c..n {
                let d = &m[c][c2] * &f;
                m[i][c2] -= d;
            }
        }
    }
    if sign {
        -acc
    } else {
        acc
    }
}

/// Scales a rational direction to the unique primitive integer vector with the
/// same orientation (gcd of entries one; zero maps to zero).
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn primitive_integer_ints(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Picks a maximal linearly independent subset of `vecs`, greedily in order.
/// Returns the chosen indices.
pub fn independent_subset(vecs: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        rows.push(v.clone());
        if rank(&rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Integer basis of the orthogonal complement of span(basis).
pub fn orthogonal_complement(basis: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    let rows: Vec<Vec<Rat>> = basis.iter().map(|b| to_rat_vec(b)).collect();
    nullspace(&rows, dim)
}

/// Gram determinant det(BᵀB) of an integer basis; a positive integer for
/// linearly independent B.
pub fn gram_det(basis: &[Vec<Int>]) -> Int {
    let k = basis.len();
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Rat::from_integer(dot_int(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let d = det(&gram);
    debug_assert!(d.denom().is_one());
    d.numer().clone()
}

/// Coordinates of p - base in the integer basis B (solves (BᵀB)u = Bᵀ(p-base)),
/// i.e. the frame coordinates of a point known to lie in base + span(B).
pub fn frame_coords(basis: &[Vec<Int>], base: &[Rat], p: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let d: Vec<Rat> = p.iter().zip(base).map(|(a, b)| a - b).collect();
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Rat::from_integer(dot_int(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = (0..k).map(|i| dot(&to_rat_vec(&basis[i]), &d)).collect();
    let u = solve_square(&gram, &rhs)?;
    // Only valid if p really lies on the flat; verify exactly.
    let mut recon = base.to_vec();
    for (ui, b) in u.iter().zip(basis) {
        for (rc, bc) in recon.iter_mut().zip(b) {
            *rc += ui * Rat::from_integer(bc.clone());
        }
    }
    if recon != p {
        return None;
    }
    Some(u)
}

/// Maps frame coordinates back to the ambient space: base + B·u.
pub fn from_frame(basis: &[Vec<Int>], base: &[Rat], u: &[Rat]) -> Vec<Rat> {
    let mut p = base.to_vec();
    for (ui, b) in u.iter().zip(basis) {
        for (pc, bc) in p.iter_mut().zip(b) {
            *pc += ui * Rat::from_integer(bc.clone());
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(det(&m(&[&[2, 0], &[0, 3]])), rat_int(6));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), rat_int(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), rat_int(0));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![rat_int(5), rat_int(10)];
        let x = solve_square(&a, &b).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(3)]);

        let ns = nullspace(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(dot_int(&[1.into(), 1.into(), 1.into()], v), 0.into());
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(1, 2), rat(-3, 4), rat_int(0)];
        assert_eq!(
            primitive_integer(&v),
            vec![Int::from(2), Int::from(-3), Int::from(0)]
        );
    }

    #[test]
    fn frame_round_trip() {
        let basis = vec![vec![Int::from(1), Int::from(1), Int::from(0)]];
        let base = vec![rat_int(0), rat_int(0), rat_int(1)];
        let p = vec![rat(3, 2), rat(3, 2), rat_int(1)];
        let u = frame_coords(&basis, &base, &p).unwrap();
        assert_eq!(u, vec![rat(3, 2)]);
        assert_eq!(from_frame(&basis, &base, &u), p);
        // Point off the flat is rejected.
        let q = vec![rat_int(1), rat_int(2), rat_int(1)];
        assert!(frame_coords(&basis, &base, &q).is_none());
    }

    #[test]
    fn gram_of_orthogonal_pair_is_square() {
        let b1 = vec![vec![Int::from(1), Int::from(1)]];
        let b2 = vec![vec![Int::from(1), Int::from(-1)]];
        let g1 = gram_det(&b1);
        let g2 = gram_det(&b2);
        assert_eq!(&g1 * &g2, Int::from(4));
    }
}
