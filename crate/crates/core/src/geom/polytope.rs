//! Canonical polytopes: exact V- and H-representations kept in lockstep.
//!
//! A `Polytope` always stores the extreme points (sorted lexicographically)
//! and the complete facet list (outer normals scaled to primitive integer
//! vectors, sorted). Lower-dimensional bodies carry their affine hull as pairs
//! of opposite inequalities, so the facet list is a full H-description in
//! every case and point membership is always a plain sign check. Equality of
//! canonical polytopes is list equality.

use crate::error::{Error, Result};
use crate::geom::dd;
use crate::geom::point::Point;
use crate::linalg;
use crate::rat::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// One inequality ⟨normal, x⟩ ≤ offset; the normal is a primitive integer
/// vector (stored as rationals for uniformity).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Facet {
    pub normal: Point,
    pub offset: Rat,
}

impl Facet {
    /// Canonicalizes an inequality ⟨a, x⟩ ≤ b by the positive scaling that
    /// makes the normal primitive integer.
    pub fn canonical(a: &[Rat], b: &Rat) -> Facet {
        let prim = linalg::primitive_integer(a);
        let i = a
            .iter()
            .position(|x| !x.is_zero())
            .expect("facet normal must be nonzero");
        let scale = Rat::from_integer(prim[i].clone()) / &a[i];
        debug_assert!(scale.is_positive());
        Facet {
            normal: Point::new(linalg::to_rat_vec(&prim)),
            offset: b * &scale,
        }
    }

    pub fn eval(&self, p: &Point) -> Rat {
        self.normal.dot(p)
    }

    pub fn satisfied_by(&self, p: &Point) -> bool {
        self.eval(p) <= self.offset
    }

    pub fn tight_at(&self, p: &Point) -> bool {
        self.eval(p) == self.offset
    }
}

#[derive(Clone, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    affine_dim: usize,
    is_canonical: bool,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl std::fmt::Debug for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("affine_dim", &self.affine_dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

pub const MAX_DIM: usize = 10;

impl Polytope {
    /// Convex hull of a point set, fully canonicalized. Handles degenerate
    /// inputs (repeated points, lower-dimensional hulls, a single point).
    pub fn hull(dim: usize, points: &[Point]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput("hull of no points"));
        }
        if dim > MAX_DIM {
            return Err(Error::DimensionMismatch {
                expected: MAX_DIM,
                got: dim,
            });
        }
        for p in points {
            p.check_dim(dim)?;
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();

        if dim == 0 {
            return Ok(Polytope {
                dim: 0,
                vertices: vec![Point::new(vec![])],
                facets: vec![],
                affine_dim: 0,
                is_canonical: true,
            });
        }

        let base = pts[0].clone();
        let diffs: Vec<Vec<Rat>> = pts[1..]
            .iter()
            .map(|p| p.sub(&base).0)
            .collect();
        let chosen = linalg::independent_subset(&diffs);
        let k = chosen.len();

        if k == dim {
            return hull_fulldim(dim, pts);
        }

        // Lower-dimensional: work in the affine-hull frame, then pull facets
        // back and pin the flat with equality pairs.
        let basis: Vec<Vec<Int>> = chosen
            .iter()
            .map(|&i| linalg::primitive_integer(&diffs[i]))
            .collect();
        let mut frame_pts = Vec::with_capacity(pts.len());
        for p in &pts {
            let u = linalg::frame_coords(&basis, &base.0, &p.0)
                .expect("point lies in its own affine hull");
            frame_pts.push(Point::new(u));
        }
        let frame = Polytope::hull(k, &frame_pts)?;

        let vertices: Vec<Point> = {
            let mut vs: Vec<Point> = frame
                .vertices()
                .iter()
                .map(|u| Point::new(linalg::from_frame(&basis, &base.0, &u.0)))
                .collect();
            vs.sort();
            vs
        };

        let mut facets: Vec<Facet> = Vec::new();
        // Gram system for pulling a frame normal ā back to B(BᵀB)⁻¹ā.
        let gram: Vec<Vec<Rat>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| Rat::from_integer(linalg::dot_int(&basis[i], &basis[j])))
                    .collect()
            })
            .collect();
        for f in frame.facets() {
            let abar = &f.normal.0;
            let w = linalg::solve_square(&gram, abar).expect("gram matrix is invertible");
            let mut a = vec![Rat::zero(); dim];
            for (wi, b) in w.iter().zip(&basis) {
                for (ac, bc) in a.iter_mut().zip(b) {
                    *ac += wi * Rat::from_integer(bc.clone());
                }
            }
            let b_amb = &f.offset + linalg::dot(&a, &base.0);
            facets.push(Facet::canonical(&a, &b_amb));
        }
        for c in linalg::orthogonal_complement(&basis, dim) {
            let cr = linalg::to_rat_vec(&c);
            let rhs = linalg::dot(&cr, &base.0);
            facets.push(Facet::canonical(&cr, &rhs));
            let neg: Vec<Rat> = cr.iter().map(|x| -x).collect();
            facets.push(Facet::canonical(&neg, &-rhs));
        }
        facets.sort();
        facets.dedup();

        Ok(Polytope {
            dim,
            vertices,
            facets,
            affine_dim: k,
            is_canonical: true,
        })
    }

    /// Vertex enumeration from an H-description (bounded intersection).
    pub fn from_hrep(dim: usize, ineqs: &[(Point, Rat)]) -> Result<Polytope> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::DimensionMismatch {
                expected: MAX_DIM,
                got: dim,
            });
        }
        if ineqs.is_empty() {
            return Err(Error::Unbounded);
        }
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(ineqs.len() + 1);
        for (a, b) in ineqs {
            a.check_dim(dim)?;
            if a.is_zero() {
                // 0 <= b: vacuous or infeasible, never a facet row.
                if b.is_negative() {
                    return Err(Error::EmptyIntersection);
                }
                continue;
            }
            let mut row = vec![b.clone()];
            row.extend(a.0.iter().map(|x| -x));
            rows.push(linalg::primitive_integer(&row));
        }
        if rows.is_empty() {
            return Err(Error::Unbounded);
        }
        let mut first = vec![Int::one()];
        first.extend(std::iter::repeat_with(Int::zero).take(dim));
        rows.push(first);

        let out = dd::extreme_rays(&rows).map_err(|e| match e {
            Error::ConeNotPointed => Error::Unbounded,
            other => other,
        })?;
        if out.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        let mut points = Vec::with_capacity(out.len());
        for ray in &out {
            if ray[0].is_zero() {
                return Err(Error::Unbounded);
            }
            debug_assert!(ray[0].is_positive());
            let y0 = Rat::from_integer(ray[0].clone());
            points.push(Point::new(
                ray[1..]
                    .iter()
                    .map(|y| Rat::from_integer(y.clone()) / &y0)
                    .collect(),
            ));
        }
        Polytope::hull(dim, &points)
    }

    /// The zero-dimensional polytope: a single point with no coordinates.
    pub fn origin_point() -> Polytope {
        Polytope {
            dim: 0,
            vertices: vec![Point::new(vec![])],
            facets: vec![],
            affine_dim: 0,
            is_canonical: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dim(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn is_canonical(&self) -> bool {
        self.is_canonical
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        p.dim() == self.dim && self.facets.iter().all(|f| f.satisfied_by(p))
    }

    pub fn contains_point_strictly(&self, p: &Point) -> bool {
        self.is_full_dim()
            && p.dim() == self.dim
            && self.facets.iter().all(|f| f.eval(p) < f.offset)
    }

    pub fn contains(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains_point(v))
    }

    /// Tight vertex indices per facet, in facet order.
    pub fn facet_vertex_incidence(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| {
                (0..self.vertices.len())
                    .filter(|&i| f.tight_at(&self.vertices[i]))
                    .collect()
            })
            .collect()
    }

    pub fn translate(&self, t: &Point) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v.add(t)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset + f.normal.dot(t),
            })
            .collect();
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            affine_dim: self.affine_dim,
            is_canonical: true,
        }
    }

    pub fn neg(&self) -> Polytope {
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| v.neg()).collect();
        vertices.sort();
        let mut facets: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.neg(),
                offset: f.offset.clone(),
            })
            .collect();
        facets.sort();
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            affine_dim: self.affine_dim,
            is_canonical: true,
        }
    }

    /// Dilation by a rational factor (negative factors reflect).
    pub fn scale(&self, c: &Rat) -> Polytope {
        if c.is_negative() {
            return self.neg().scale(&-c.clone());
        }
        if c.is_zero() {
            let z = Point::zero(self.dim);
            return Polytope::hull(self.dim, &[z]).expect("hull of origin");
        }
        let vertices = self.vertices.iter().map(|v| v.scale(c)).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset * c,
            })
            .collect();
        Polytope {
            dim: self.dim,
            vertices,
            facets,
            affine_dim: self.affine_dim,
            is_canonical: true,
        }
    }

    /// Intersection with further inequalities (must stay bounded; it is, since
    /// self is bounded).
    pub fn intersect(&self, extra: &[(Point, Rat)]) -> Result<Polytope> {
        let mut ineqs: Vec<(Point, Rat)> = self
            .facets
            .iter()
            .map(|f| (f.normal.clone(), f.offset.clone()))
            .collect();
        ineqs.extend(extra.iter().cloned());
        Polytope::from_hrep(self.dim, &ineqs)
    }

    pub(crate) fn from_trusted_parts(
        dim: usize,
        vertices: Vec<Point>,
        facets: Vec<Facet>,
        affine_dim: usize,
    ) -> Polytope {
        Polytope {
            dim,
            vertices,
            facets,
            affine_dim,
            is_canonical: true,
        }
    }
}

/// Full-dimensional hull via double description on the homogenized polar cone.
fn hull_fulldim(dim: usize, pts: Vec<Point>) -> Result<Polytope> {
    let rows: Vec<Vec<Int>> = pts
        .iter()
        .map(|p| {
            let mut row = vec![Rat::one()];
            row.extend_from_slice(&p.0);
            linalg::primitive_integer(&row)
        })
        .collect();
    let rays = dd::extreme_rays(&rows)?;

    let mut facets: Vec<Facet> = Vec::with_capacity(rays.len());
    for ray in &rays {
        let tail = &ray[1..];
        debug_assert!(
            tail.iter().any(|x| !x.is_zero()),
            "trivial ray cannot be extreme for a bounded full-dimensional hull"
        );
        let a: Vec<Rat> = tail.iter().map(|y| Rat::from_integer(-y.clone())).collect();
        let b = Rat::from_integer(ray[0].clone());
        facets.push(Facet::canonical(&a, &b));
    }
    facets.sort();
    facets.dedup();

    // A point is a vertex exactly when its tight facet normals span ℝⁿ.
    let mut vertices: Vec<Point> = Vec::new();
    for p in &pts {
        let tight: Vec<Vec<Rat>> = facets
            .iter()
            .filter(|f| f.tight_at(p))
            .map(|f| f.normal.0.clone())
            .collect();
        if tight.len() >= dim && linalg::rank(&tight) == dim {
            vertices.push(p.clone());
        }
    }
    debug_assert!(!vertices.is_empty());

    Ok(Polytope {
        dim,
        vertices,
        facets,
        affine_dim: dim,
        is_canonical: true,
    })
}

/// Brute-force facet enumeration over all dim-subsets of the input points.
/// Exponential; retained as the independent oracle for the double-description
/// path on small instances.
pub fn brute_force_facets(dim: usize, points: &[Point]) -> Result<Vec<Facet>> {
    if points.is_empty() {
        return Err(Error::EmptyInput("brute force facets"));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if linalg::affine_dim(&pts.iter().map(|p| p.0.clone()).collect::<Vec<_>>()) != dim {
        return Err(Error::NotFullDimensional {
            affine: 0,
            ambient: dim,
        });
    }
    let idx: Vec<usize> = (0..pts.len()).collect();
    let mut facets = Vec::new();
    for subset in subsets_of_size(&idx, dim) {
        let base = &pts[subset[0]];
        let diffs: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| pts[i].sub(base).0)
            .collect();
        if linalg::rank(&diffs) != dim - 1 {
            continue;
        }
        let normals = linalg::nullspace(&diffs, dim);
        if normals.len() != 1 {
            continue;
        }
        let a = linalg::to_rat_vec(&normals[0]);
        let b = linalg::dot(&a, &base.0);
        let mut above = false;
        let mut below = false;
        for p in &pts {
            match linalg::dot(&a, &p.0).cmp(&b) {
                Ordering::Greater => above = true,
                Ordering::Less => below = true,
                Ordering::Equal => {}
            }
        }
        match (above, below) {
            (true, true) => continue,
            (true, false) => {
                let neg: Vec<Rat> = a.iter().map(|x| -x).collect();
                facets.push(Facet::canonical(&neg, &-b));
            }
            _ => facets.push(Facet::canonical(&a, &b)),
        }
    }
    facets.sort();
    facets.dedup();
    Ok(facets)
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All subsets of {0, .., n-1} as sorted index lists, in mask order.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..(1usize << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}
