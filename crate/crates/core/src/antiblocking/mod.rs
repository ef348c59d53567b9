//! Down-closed convex bodies in the nonnegative orthant and their duals.
//!
//! A body `K` here is full-dimensional, compact, contained in the orthant,
//! and closed downward: `0 <= y <= x` and `x` in `K` force `y` in `K`. For
//! such bodies coordinate projections agree with coordinate sections, the
//! dual `AK = K° ∩ R^n_+` is again of the same kind, and `A` is an
//! involution. Down-closedness is certified through the facet description:
//! every facet is either a coordinate bound `x_i >= 0` or has a nonnegative
//! normal and offset.

pub mod checks;
pub mod locally;

pub use checks::{
    godbersen_check, mixed_saint_raymond_oracle, mixed_volume_ab, reverse_kleitman_check,
    saint_raymond_products, GodbersenEntry, GodbersenReport, KleitmanEntry, KleitmanReport,
    SaintRaymondReport,
};
pub use locally::{
    decompose_difference, locally_ab_polar, unconditional_closure, DiffMode,
    LocallyAntiBlockingBody, MahlerReport,
};

use crate::error::{Error, Result};
use crate::geom::{self, ops, volume::volume, Point, Polytope};
use crate::rat::Rat;
use num_traits::{Signed, Zero};

/// A sign pattern over the coordinates; bit `i` set means `+1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignVector {
    n: usize,
    mask: u32,
}

impl SignVector {
    pub fn new(n: usize, mask: u32) -> SignVector {
        assert!(n <= 32 && mask < (1u32 << n));
        SignVector { n, mask }
    }

    /// All `2^n` sign vectors, in mask order.
    pub fn all(n: usize) -> Vec<SignVector> {
        (0..(1u32 << n)).map(|mask| SignVector { n, mask }).collect()
    }

    /// The all-plus pattern.
    pub fn positive(n: usize) -> SignVector {
        SignVector {
            n,
            mask: (1u32 << n) - 1,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn sign(&self, i: usize) -> i8 {
        if self.mask >> i & 1 == 1 {
            1
        } else {
            -1
        }
    }

    /// Axes carrying `+1`.
    pub fn plus_axes(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.sign(i) == 1).collect()
    }

    /// Axes carrying `-1`.
    pub fn minus_axes(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.sign(i) == -1).collect()
    }

    pub fn from_plus_axes(n: usize, axes: &[usize]) -> SignVector {
        let mut mask = 0u32;
        for &i in axes {
            assert!(i < n);
            mask |= 1 << i;
        }
        SignVector { n, mask }
    }

    pub fn apply_point(&self, p: &Point) -> Point {
        Point::new(
            p.0.iter()
                .enumerate()
                .map(|(i, x)| if self.sign(i) == 1 { x.clone() } else { -x })
                .collect(),
        )
    }

    /// Reflects a polytope coordinatewise; exact on both representations, no
    /// re-hulling.
    pub fn apply_polytope(&self, p: &Polytope) -> Polytope {
        if self.mask == (1u32 << self.n) - 1 {
            return p.clone();
        }
        let mut vertices: Vec<Point> = p.vertices().iter().map(|v| self.apply_point(v)).collect();
        vertices.sort();
        let mut facets: Vec<geom::Facet> = p
            .facets()
            .iter()
            .map(|f| geom::Facet {
                normal: self.apply_point(&f.normal),
                offset: f.offset.clone(),
            })
            .collect();
        facets.sort();
        Polytope::from_trusted_parts(p.dim(), vertices, facets, p.affine_dim())
    }
}

/// Full-dimensional compact down-closed body in the nonnegative orthant.
#[derive(Clone, PartialEq, Debug)]
pub struct AntiBlockingBody {
    body: Polytope,
    generators: Vec<Point>,
}

impl AntiBlockingBody {
    /// Validates a polytope as anti-blocking: full-dimensional, vertices
    /// nonnegative, and every facet either a coordinate bound or with a
    /// nonnegative normal and offset (exactly down-closedness for
    /// full-dimensional bodies in the orthant).
    pub fn new(body: Polytope) -> Result<AntiBlockingBody> {
        if !body.is_full_dim() {
            return Err(Error::NotFullDimensional {
                affine: body.affine_dim(),
                ambient: body.dim(),
            });
        }
        for v in body.vertices() {
            if v.0.iter().any(|x| x.is_negative()) {
                return Err(Error::InvalidBody(
                    "vertex with a negative coordinate".into(),
                ));
            }
        }
        for f in body.facets() {
            let negs: Vec<usize> = (0..body.dim())
                .filter(|&i| f.normal.0[i].is_negative())
                .collect();
            let ok = if negs.is_empty() {
                !f.offset.is_negative()
            } else {
                // the only admissible negative-normal facets are x_i >= 0
                negs.len() == 1
                    && f.normal.0.iter().filter(|x| !x.is_zero()).count() == 1
                    && f.offset.is_zero()
            };
            if !ok {
                return Err(Error::InvalidBody(format!(
                    "facet {:?} <= {} breaks down-closedness",
                    f.normal, f.offset
                )));
            }
        }
        let generators = maximal_points(body.vertices());
        Ok(AntiBlockingBody { body, generators })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.body
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// The componentwise-maximal vertices; the body is their down-closure.
    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn volume(&self) -> Rat {
        volume(&self.body)
    }

    pub fn contains(&self, other: &AntiBlockingBody) -> bool {
        self.body.contains(&other.body)
    }

    /// Coordinate projection, embedded in the ambient space.
    pub fn project_embed(&self, axes: &[usize]) -> Result<Polytope> {
        ops::project_embed(&self.body, axes)
    }

    /// Coordinate projection in frame coordinates, revalidated; for a
    /// down-closed body this is also the coordinate section.
    pub fn project_frame(&self, axes: &[usize]) -> Result<Polytope> {
        ops::project_frame(&self.body, axes)
    }

    /// Whether the body is the down-closure of a single scaled unit vector
    /// per axis: vertex set `{0, a_1 e_1, ..., a_n e_n}`.
    pub fn is_simplex(&self) -> bool {
        let n = self.dim();
        let vs = self.body.vertices();
        if vs.len() != n + 1 {
            return false;
        }
        let mut axes_seen = vec![false; n];
        let mut zero_seen = false;
        for v in vs {
            let support: Vec<usize> = (0..n).filter(|&i| !v.0[i].is_zero()).collect();
            match support.len() {
                0 => zero_seen = true,
                1 => {
                    if axes_seen[support[0]] {
                        return false;
                    }
                    axes_seen[support[0]] = true;
                }
                _ => return false,
            }
        }
        zero_seen && axes_seen.into_iter().all(|b| b)
    }

    /// Whether the body is an axes-parallel box `[0, a]`.
    pub fn is_box(&self) -> bool {
        let n = self.dim();
        let vs = self.body.vertices();
        if vs.len() != (1usize << n) {
            return false;
        }
        let mut a = vec![Rat::zero(); n];
        for v in vs {
            for i in 0..n {
                if v.0[i] > a[i] {
                    a[i] = v.0[i].clone();
                }
            }
        }
        let corner = Point::new(a);
        let mut expected: Vec<Point> = (0..(1usize << n))
            .map(|m| {
                let keep: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
                corner.mask(&keep)
            })
            .collect();
        expected.sort();
        expected.dedup();
        vs == &expected[..]
    }

    /// Whether the body is reduced Hanner: an interval `[0, a]` on a single
    /// axis, or a coordinate split into two reduced Hanner bodies combined
    /// either as a product or as a convex join.
    pub fn is_reduced_hanner(&self) -> bool {
        let n = self.dim();
        if n == 1 {
            return self.body.vertices().len() == 2;
        }
        for mask in 1..((1usize << n) - 1) {
            // avoid double-testing complementary splits
            if mask & 1 == 0 {
                continue;
            }
            let e: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ec: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
            let pe = match self.project_embed(&e) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let pec = match self.project_embed(&ec) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let product = match ops::minkowski_sum(&pe, &pec) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let split_works = if product == self.body {
                true
            } else {
                matches!(ops::join(&pe, &pec), Ok(j) if j == self.body)
            };
            if !split_works {
                continue;
            }
            let ke = AntiBlockingBody::new(self.project_frame(&e).unwrap()).unwrap();
            let kec = AntiBlockingBody::new(self.project_frame(&ec).unwrap()).unwrap();
            if ke.is_reduced_hanner() && kec.is_reduced_hanner() {
                return true;
            }
        }
        false
    }
}

/// The componentwise-maximal points of a set.
pub fn maximal_points(points: &[Point]) -> Vec<Point> {
    let dominated = |p: &Point, q: &Point| {
        p != q && p.0.iter().zip(&q.0).all(|(a, b)| a <= b)
    };
    points
        .iter()
        .filter(|p| !points.iter().any(|q| dominated(p, q)))
        .cloned()
        .collect()
}

/// Down-closure of a finite nonnegative point set: the hull of all
/// coordinate-masked copies. Must be full-dimensional.
pub fn down_closure(dim: usize, points: &[Point]) -> Result<AntiBlockingBody> {
    if points.is_empty() {
        return Err(Error::EmptyInput("down closure of no points"));
    }
    for p in points {
        p.check_dim(dim)?;
        if p.0.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidBody(
                "down closure of a negative point".into(),
            ));
        }
    }
    let gens = maximal_points(points);
    let mut all = Vec::with_capacity(gens.len() << dim);
    for m in 0..(1usize << dim) {
        let keep: Vec<bool> = (0..dim).map(|i| m >> i & 1 == 1).collect();
        for g in &gens {
            all.push(g.mask(&keep));
        }
    }
    AntiBlockingBody::new(Polytope::hull(dim, &all)?)
}

/// The dual body `AK = {y >= 0 : <y, x> <= 1 for all x in K}`, anti-blocking
/// again, with `A(AK) = K`.
pub fn abdual(k: &AntiBlockingBody) -> Result<AntiBlockingBody> {
    let n = k.dim();
    let mut ineqs: Vec<(Point, Rat)> = k
        .generators()
        .iter()
        .map(|g| (g.clone(), crate::rat::rat_one()))
        .collect();
    for i in 0..n {
        ineqs.push((Point::unit(n, i).neg(), Rat::zero()));
    }
    AntiBlockingBody::new(Polytope::from_hrep(n, &ineqs)?)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geom::point::{pt, ptq};
    use crate::rat::rat;

    pub(crate) fn pentagon() -> AntiBlockingBody {
        down_closure(2, &[pt(&[1, 1]), ptq(&[(3, 2), (1, 2)])]).unwrap()
    }

    pub(crate) fn simplex(n: usize) -> AntiBlockingBody {
        let pts: Vec<Point> = (0..n).map(|i| Point::unit(n, i)).collect();
        down_closure(n, &pts).unwrap()
    }

    pub(crate) fn cube(n: usize) -> AntiBlockingBody {
        down_closure(n, &[Point::new(vec![rat(1, 1); n])]).unwrap()
    }

    #[test]
    fn down_closure_examples() {
        let s = simplex(3);
        assert_eq!(s.polytope().vertices().len(), 4);
        assert_eq!(s.volume(), rat(1, 6));
        let q = cube(2);
        assert_eq!(q.polytope().vertices().len(), 4);
        assert_eq!(q.generators(), &[pt(&[1, 1])][..]);
        let p = pentagon();
        assert_eq!(p.volume(), rat(11, 8));
        assert_eq!(
            p.generators(),
            &[pt(&[1, 1]), ptq(&[(3, 2), (1, 2)])][..]
        );
    }

    #[test]
    fn validation_rejects_non_down_closed_bodies() {
        let shifted = Polytope::hull(2, &[pt(&[1, 0]), pt(&[2, 0]), pt(&[1, 1])]).unwrap();
        assert!(AntiBlockingBody::new(shifted).is_err());
        let negative = Polytope::hull(2, &[pt(&[-1, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap();
        assert!(AntiBlockingBody::new(negative).is_err());
        let segment = Polytope::hull(2, &[pt(&[0, 0]), pt(&[1, 0])]).unwrap();
        assert!(matches!(
            AntiBlockingBody::new(segment),
            Err(Error::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn masked_vertices_stay_inside() {
        for k in [pentagon(), simplex(3), cube(3)] {
            let n = k.dim();
            for v in k.polytope().vertices() {
                for m in 0..(1usize << n) {
                    let keep: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
                    assert!(k.polytope().contains_point(&v.mask(&keep)));
                }
            }
        }
    }

    #[test]
    fn dual_of_simplex_is_cube() {
        for n in [2, 3] {
            let d = abdual(&simplex(n)).unwrap();
            assert_eq!(d, cube(n));
        }
    }

    #[test]
    fn dual_of_box_is_scaled_simplex() {
        let b = down_closure(2, &[pt(&[2, 3])]).unwrap();
        let d = abdual(&b).unwrap();
        assert_eq!(
            d.polytope().vertices(),
            &[pt(&[0, 0]), ptq(&[(0, 1), (1, 3)]), ptq(&[(1, 2), (0, 1)])][..]
        );
    }

    #[test]
    fn pentagon_dual_is_frozen_quadrilateral() {
        let d = abdual(&pentagon()).unwrap();
        assert_eq!(
            d.polytope().vertices(),
            &[
                pt(&[0, 0]),
                pt(&[0, 1]),
                ptq(&[(1, 2), (1, 2)]),
                ptq(&[(2, 3), (0, 1)]),
            ][..]
        );
        assert_eq!(d.volume(), rat(5, 12));
    }

    #[test]
    fn dual_is_an_involution_and_order_reversing() {
        let p = pentagon();
        let d = abdual(&p).unwrap();
        assert_eq!(abdual(&d).unwrap(), p);
        let s = simplex(2);
        assert!(p.contains(&s));
        let ds = abdual(&s).unwrap();
        assert!(ds.contains(&d));
    }

    #[test]
    fn shape_predicates() {
        assert!(simplex(2).is_simplex());
        assert!(simplex(3).is_simplex());
        let stretched = down_closure(2, &[pt(&[2, 0]), pt(&[0, 3])]).unwrap();
        assert!(stretched.is_simplex());
        assert!(!cube(2).is_simplex());
        assert!(!pentagon().is_simplex());

        assert!(cube(2).is_box());
        assert!(cube(3).is_box());
        let b = down_closure(3, &[ptq(&[(1, 2), (3, 1), (1, 1)])]).unwrap();
        assert!(b.is_box());
        assert!(!simplex(2).is_box());
        assert!(!pentagon().is_box());

        assert!(simplex(1).is_reduced_hanner());
        assert!(simplex(2).is_reduced_hanner());
        assert!(simplex(3).is_reduced_hanner());
        assert!(cube(3).is_reduced_hanner());
        assert!(!pentagon().is_reduced_hanner());
        // prism over a triangle: product of a segment and a 2-simplex
        let prism = down_closure(3, &[pt(&[1, 1, 0]), pt(&[1, 0, 1])]).unwrap();
        assert!(prism.is_reduced_hanner());
    }

    #[test]
    fn projection_equals_section_on_every_coordinate_subspace() {
        let p = pentagon();
        for axes in [vec![0], vec![1], vec![0, 1]] {
            let proj = p.project_frame(&axes).unwrap();
            let sect = ops::section_frame(p.polytope(), &axes).unwrap();
            assert_eq!(proj, sect);
        }
        let s = simplex(3);
        for axes in [vec![0], vec![1, 2], vec![0, 2]] {
            let proj = s.project_frame(&axes).unwrap();
            let sect = ops::section_frame(s.polytope(), &axes).unwrap();
            assert_eq!(proj, sect);
        }
    }

    #[test]
    fn sandwich_between_join_and_product_of_complementary_parts() {
        let bodies = [pentagon(), simplex(2), cube(2)];
        for k in &bodies {
            let pe = k.project_embed(&[0]).unwrap();
            let pec = k.project_embed(&[1]).unwrap();
            let lower = ops::join(&pe, &pec).unwrap();
            let upper = ops::minkowski_sum(&pe, &pec).unwrap();
            assert!(k.polytope().contains(&lower));
            assert!(upper.contains(k.polytope()));
        }
    }

    #[test]
    fn closure_under_intersection_hull_and_sum() {
        let a = pentagon();
        let b = down_closure(2, &[ptq(&[(1, 2), (5, 4)])]).unwrap();
        let inter = a
            .polytope()
            .intersect(
                &b.polytope()
                    .facets()
                    .iter()
                    .map(|f| (f.normal.clone(), f.offset.clone()))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
        assert!(AntiBlockingBody::new(inter).is_ok());
        let hull = ops::join(a.polytope(), b.polytope()).unwrap();
        assert!(AntiBlockingBody::new(hull).is_ok());
        let sum = ops::minkowski_sum(a.polytope(), b.polytope()).unwrap();
        assert!(AntiBlockingBody::new(sum).is_ok());
    }

    #[test]
    fn sign_vectors_reflect_exactly() {
        let p = pentagon();
        let sv = SignVector::new(2, 0b01);
        let r = sv.apply_polytope(p.polytope());
        assert!(r.contains_point(&ptq(&[(1, 1), (-1, 1)])));
        assert!(!r.contains_point(&pt(&[1, 1])));
        assert_eq!(sv.apply_polytope(&r), *p.polytope());
        assert_eq!(volume(&r), rat(11, 8));
        let hull_check = Polytope::hull(
            2,
            &r.vertices().to_vec(),
        )
        .unwrap();
        assert_eq!(hull_check, r);
        assert_eq!(hull_check.facets(), r.facets());
    }
}
