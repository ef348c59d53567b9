//! Polytope operations: Minkowski sums, convex joins, coordinate projections
//! and sections, polars, and an inclusion–exclusion mixed-volume oracle.

use crate::error::{Error, Result};
use crate::geom::polytope::Polytope;
use crate::geom::volume::volume;
use crate::geom::Point;
use crate::rat::{binomial, factorial, Rat};
use num_traits::{One, Signed, Zero};

/// Minkowski sum `a + b`: hull of all pairwise vertex sums.
pub fn minkowski_sum(a: &Polytope, b: &Polytope) -> Result<Polytope> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let mut pts = Vec::with_capacity(a.vertices().len() * b.vertices().len());
    for u in a.vertices() {
        for v in b.vertices() {
            pts.push(u.add(v));
        }
    }
    Polytope::hull(a.dim(), &pts)
}

/// Convex join `a ∨ b = conv(a ∪ b)`.
pub fn join(a: &Polytope, b: &Polytope) -> Result<Polytope> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let mut pts: Vec<Point> = a.vertices().to_vec();
    pts.extend_from_slice(b.vertices());
    Polytope::hull(a.dim(), &pts)
}

/// Orthogonal projection onto the coordinate subspace spanned by `axes`,
/// kept embedded in the ambient space (dropped coordinates become zero).
pub fn project_embed(p: &Polytope, axes: &[usize]) -> Result<Polytope> {
    let mut mask = vec![false; p.dim()];
    for &i in axes {
        if i >= p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: i + 1,
            });
        }
        mask[i] = true;
    }
    let pts: Vec<Point> = p.vertices().iter().map(|v| v.mask(&mask)).collect();
    Polytope::hull(p.dim(), &pts)
}

/// Orthogonal projection onto the coordinates in `axes`, written in the
/// `axes.len()`-dimensional frame (coordinates in the listed order).
pub fn project_frame(p: &Polytope, axes: &[usize]) -> Result<Polytope> {
    for &i in axes {
        if i >= p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: i + 1,
            });
        }
    }
    if axes.is_empty() {
        return Ok(Polytope::origin_point());
    }
    let pts: Vec<Point> = p.vertices().iter().map(|v| v.restrict(axes)).collect();
    Polytope::hull(axes.len(), &pts)
}

/// Section by the coordinate subspace of `axes`: the set of points of `p`
/// whose other coordinates vanish, written in the `axes.len()`-dimensional
/// frame. Obtained by substituting zeros into the facet description.
pub fn section_frame(p: &Polytope, axes: &[usize]) -> Result<Polytope> {
    for &i in axes {
        if i >= p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: i + 1,
            });
        }
    }
    if axes.is_empty() {
        let zero = Point::zero(p.dim());
        return if p.contains_point(&zero) {
            Ok(Polytope::origin_point())
        } else {
            Err(Error::EmptyIntersection)
        };
    }
    let ineqs: Vec<(Point, Rat)> = p
        .facets()
        .iter()
        .map(|f| (f.normal.restrict(axes), f.offset.clone()))
        .collect();
    Polytope::from_hrep(axes.len(), &ineqs)
}

/// Polar dual `{y : <x,y> <= 1 for all x in p}`. Requires the origin strictly
/// inside (equivalently: full-dimensional with every facet offset positive),
/// which keeps the polar bounded and makes polarity an involution.
pub fn polar(p: &Polytope) -> Result<Polytope> {
    if !p.is_full_dim() {
        return Err(Error::NotFullDimensional {
            affine: p.affine_dim(),
            ambient: p.dim(),
        });
    }
    if !p.facets().iter().all(|f| f.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let pts: Vec<Point> = p
        .facets()
        .iter()
        .map(|f| f.normal.scale(&f.offset.recip()))
        .collect();
    Polytope::hull(p.dim(), &pts)
}

fn scaled_sum(parts: &[(&Polytope, usize)]) -> Result<Polytope> {
    let dim = parts[0].0.dim();
    let mut acc: Option<Polytope> = None;
    for &(body, c) in parts {
        if c == 0 {
            continue;
        }
        let scaled = body.scale(&Rat::from_integer(crate::rat::int(c as i64)));
        acc = Some(match acc {
            None => scaled,
            Some(s) => minkowski_sum(&s, &scaled)?,
        });
    }
    acc.ok_or(Error::EmptyInput("mixed volume count vector"))
        .map(|p| {
            debug_assert_eq!(p.dim(), dim);
            p
        })
}

/// Mixed volume `V(bodies[0], ..., bodies[n-1])` of `n` polytopes in `R^n`
/// by inclusion–exclusion over sub-sums:
/// `n! V = sum_{S != 0} (-1)^{n-|S|} Vol(sum_{i in S} K_i)`.
/// Repeated bodies are grouped so each distinct scaled sum is hulled once.
pub fn mixed_volume_oracle(bodies: &[Polytope]) -> Result<Rat> {
    if bodies.is_empty() {
        return Err(Error::EmptyInput("mixed volume bodies"));
    }
    let n = bodies[0].dim();
    if bodies.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bodies.len(),
        });
    }
    for b in bodies {
        if b.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.dim(),
            });
        }
    }
    // Group equal bodies; the inclusion–exclusion sum over subsets collapses
    // to multiplicity vectors weighted by binomial coefficients.
    let mut groups: Vec<(&Polytope, usize)> = Vec::new();
    'outer: for b in bodies {
        for g in groups.iter_mut() {
            if g.0 == b {
                g.1 += 1;
                continue 'outer;
            }
        }
        groups.push((b, 1));
    }
    let mut acc = Rat::zero();
    let mut counts = vec![0usize; groups.len()];
    loop {
        // odometer over 0..=mult per group
        let mut i = 0;
        loop {
            if i == groups.len() {
                break;
            }
            if counts[i] < groups[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
        if i == groups.len() {
            break;
        }
        let total: usize = counts.iter().sum();
        let parts: Vec<(&Polytope, usize)> = groups
            .iter()
            .zip(&counts)
            .map(|(&(b, _), &c)| (b, c))
            .collect();
        let vol = volume(&scaled_sum(&parts)?);
        if vol.is_zero() {
            continue;
        }
        let mut coeff = Rat::one();
        for (g, &c) in groups.iter().zip(&counts) {
            coeff *= Rat::from_integer(binomial(g.1, c));
        }
        if (n - total) % 2 == 1 {
            coeff = -coeff;
        }
        acc += coeff * vol;
    }
    Ok(acc / Rat::from_integer(factorial(n)))
}

/// All pair mixed volumes `V(a[j], b[n-j])` for `j = 0..=n`, sharing one
/// table of sub-sum volumes `Vol(s·a + t·b)`.
pub fn mixed_volume_pair_all(a: &Polytope, b: &Polytope) -> Result<Vec<Rat>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    if n == 0 {
        return Ok(vec![crate::rat::rat_one()]);
    }
    // vol_table[s][t] = Vol(s a + t b); entry (0,0) unused.
    let mut vol_table = vec![vec![Rat::zero(); n + 1]; n + 1];
    for s in 0..=n {
        for t in 0..=(n - s) {
            if s + t == 0 {
                continue;
            }
            let parts = [(a, s), (b, t)];
            vol_table[s][t] = volume(&scaled_sum(&parts)?);
        }
    }
    let nf = Rat::from_integer(factorial(n));
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = Rat::zero();
        for s in 0..=j {
            for t in 0..=(n - j) {
                if s + t == 0 {
                    continue;
                }
                let mut term = Rat::from_integer(binomial(j, s) * binomial(n - j, t))
                    * vol_table[s][t].clone();
                if (n - s - t) % 2 == 1 {
                    term = -term;
                }
                acc += term;
            }
        }
        out.push(acc / nf.clone());
    }
    Ok(out)
}

/// Single pair mixed volume `V(a[j], b[n-j])`.
pub fn mixed_volume_pair(a: &Polytope, b: &Polytope, j: usize) -> Result<Rat> {
    let n = a.dim();
    if j > n {
        return Err(Error::DimensionMismatch { expected: n, got: j });
    }
    let mut bodies = Vec::with_capacity(n);
    for _ in 0..j {
        bodies.push(a.clone());
    }
    for _ in j..n {
        bodies.push(b.clone());
    }
    mixed_volume_oracle(&bodies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::{pt, ptq};
    use crate::rat::rat;

    fn simplex2() -> Polytope {
        Polytope::hull(2, &[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap()
    }

    fn square2() -> Polytope {
        Polytope::hull(2, &[pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])]).unwrap()
    }

    #[test]
    fn simplex_difference_body_is_the_hexagon() {
        let s = simplex2();
        let hex = minkowski_sum(&s, &s.neg()).unwrap();
        assert_eq!(hex.vertices().len(), 6);
        assert_eq!(volume(&hex), rat(3, 1));
    }

    #[test]
    fn join_of_simplex_with_its_negative() {
        let s = simplex2();
        let j = join(&s, &s.neg()).unwrap();
        assert_eq!(volume(&j), rat(2, 1));
        assert!(j.contains_point_strictly(&pt(&[0, 0])));
    }

    #[test]
    fn projections_and_sections_of_a_pentagon() {
        // down-closed pentagon with generators (1,1) and (3/2,1/2)
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
        let proj = project_frame(&p, &[0]).unwrap();
        assert_eq!(proj.vertices(), &[pt(&[0]), ptq(&[(3, 2)])][..]);
        let sect = section_frame(&p, &[0]).unwrap();
        assert_eq!(sect, proj);
        let emb = project_embed(&p, &[1]).unwrap();
        assert_eq!(emb.vertices(), &[pt(&[0, 0]), pt(&[0, 1])][..]);
        assert_eq!(emb.affine_dim(), 1);
        let origin = section_frame(&p, &[]).unwrap();
        assert_eq!(origin.dim(), 0);
    }

    #[test]
    fn section_cuts_where_projection_reaches() {
        // triangle floating above the x-axis: section by y = 0 is empty
        let t = Polytope::hull(2, &[pt(&[0, 1]), pt(&[2, 1]), pt(&[1, 2])]).unwrap();
        assert!(matches!(
            section_frame(&t, &[0]),
            Err(Error::EmptyIntersection)
        ));
        let proj = project_frame(&t, &[0]).unwrap();
        assert_eq!(proj.vertices(), &[pt(&[0]), pt(&[2])][..]);
    }

    #[test]
    fn polar_of_centered_square() {
        let sq = Polytope::hull(
            2,
            &[pt(&[1, 1]), pt(&[1, -1]), pt(&[-1, 1]), pt(&[-1, -1])],
        )
        .unwrap();
        let d = polar(&sq).unwrap();
        assert_eq!(volume(&d), rat(2, 1));
        assert_eq!(polar(&d).unwrap(), sq);
        assert!(matches!(polar(&square2()), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn mixed_volume_collapses_to_volume_on_equal_bodies() {
        let s = simplex2();
        assert_eq!(mixed_volume_oracle(&[s.clone(), s.clone()]).unwrap(), rat(1, 2));
        let q = square2();
        assert_eq!(mixed_volume_oracle(&[q.clone(), q.clone()]).unwrap(), rat(1, 1));
    }

    #[test]
    fn mixed_volume_of_simplex_against_its_negative() {
        let s = simplex2();
        let m = mixed_volume_pair(&s, &s.neg(), 1).unwrap();
        assert_eq!(m, rat(1, 1));
    }

    #[test]
    fn mixed_volume_is_symmetric_and_multilinear_smoke() {
        let s = simplex2();
        let q = square2();
        let a = mixed_volume_oracle(&[s.clone(), q.clone()]).unwrap();
        let b = mixed_volume_oracle(&[q.clone(), s.clone()]).unwrap();
        assert_eq!(a, b);
        let s2 = s.scale(&rat(2, 1));
        let c = mixed_volume_oracle(&[s2, q.clone()]).unwrap();
        assert_eq!(c, a.clone() * rat(2, 1));
        // V(K, Q) with Q the unit square equals half the perimeter contribution:
        // for the triangle, V = 1 (frozen by direct expansion).
        assert_eq!(a, rat(1, 1));
    }

    #[test]
    fn pair_table_matches_oracle() {
        let s = simplex2();
        let t = square2().neg();
        let all = mixed_volume_pair_all(&s, &t).unwrap();
        assert_eq!(all.len(), 3);
        for (j, expected) in all.iter().enumerate() {
            let direct = mixed_volume_pair(&s, &t, j).unwrap();
            assert_eq!(&direct, expected);
        }
        assert_eq!(all[0], volume(&t));
        assert_eq!(all[2], volume(&s));
    }
}
