//! Bodies that are anti-blocking over a cone, their duals, and the
//! face-indexed dissection of a difference body.
//!
//! The primal home cone `C` is required to be ordered, `C ⊆ C∨`, and both
//! sides of a dissection are down-closed in the induced order, so the
//! down-closure over `C` and the one over the home cone `C∨` both subtract
//! `C∨`. A home cone that neither contains nor is contained in its dual
//! admits no compatible order and is rejected outright.

use num_traits::{One, Signed, Zero};

use super::{project_onto_span, PolyhedralCone};
use crate::antiblocking::DiffMode;
use crate::geom::{dd, join, minkowski_sum, mixed_volume_pair_all, volume, Point, Polytope};
use crate::linalg;
use crate::rat::{binomial_rat, factorial_rat, Int, Rat};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Generators of the cone a down-closure over `cone` subtracts: the dual for
/// an ordered home cone, the home cone itself when it contains its dual.
fn order_cone_generators(cone: &PolyhedralCone) -> Result<&[Point]> {
    if cone.is_ordered() {
        return Ok(cone.facet_normals());
    }
    let normals = cone.facet_normals();
    let dual_ordered = normals
        .iter()
        .enumerate()
        .all(|(i, h)| normals[i..].iter().all(|g| !h.dot(g).is_negative()));
    if dual_ordered {
        Ok(cone.generators())
    } else {
        Err(Error::ConeNotSelfDualOrdered)
    }
}

/// Membership in the order cone; callers validate the home cone first.
fn order_cone_contains(cone: &PolyhedralCone, p: &Point) -> bool {
    if cone.is_ordered() {
        cone.dual_contains(p)
    } else {
        cone.contains(p)
    }
}

/// Facet inequalities of the unbounded polyhedron `conv(points) − cone(rec)`,
/// computed on its homogenization. Each pair `(a, b)` is `⟨a, x⟩ ≤ b`; rows
/// with a zero normal are dropped as vacuous.
pub(crate) fn down_set_rows(
    dim: usize,
    points: &[Point],
    rec: &[Point],
) -> Result<Vec<(Point, Rat)>> {
    let mut rays: Vec<Vec<Int>> = Vec::with_capacity(points.len() + rec.len());
    for u in points {
        let mut v = Vec::with_capacity(dim + 1);
        v.push(Rat::one());
        v.extend_from_slice(u.coords());
        rays.push(linalg::primitive_integer(&v));
    }
    for d in rec {
        let mut v = Vec::with_capacity(dim + 1);
        v.push(Rat::zero());
        v.extend(d.coords().iter().map(|x| -x));
        rays.push(linalg::primitive_integer(&v));
    }
    let rows = dd::extreme_rays(&rays)?;
    let mut out = Vec::new();
    for y in &rows {
        if y[1..].iter().all(|c| c.is_zero()) {
            continue;
        }
        let normal = Point::new(
            y[1..]
                .iter()
                .map(|c| Rat::from_integer(-c.clone()))
                .collect(),
        );
        out.push((normal, Rat::from_integer(y[0].clone())));
    }
    Ok(out)
}

/// A body that is anti-blocking over its home cone: contained in the cone
/// and down-closed in the cone order. May be lower-dimensional.
#[derive(Clone, Debug)]
pub struct CABBody {
    cone: PolyhedralCone,
    body: Polytope,
    w_rep: Vec<Point>,
    generators: Vec<Point>,
    proper: bool,
}

impl PartialEq for CABBody {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone && self.body == other.body
    }
}

impl Eq for CABBody {}

impl CABBody {
    /// Validates that `body` is anti-blocking over `cone`: every vertex lies
    /// in the cone, and the body equals the down-closure of its own vertex
    /// set.
    pub fn new(cone: PolyhedralCone, body: Polytope) -> Result<CABBody> {
        if body.dim() != cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: cone.dim(),
                got: body.dim(),
            });
        }
        for v in body.vertices() {
            if !cone.contains(v) {
                return Err(Error::InvalidBody("vertex outside the home cone".into()));
            }
        }
        let order = order_cone_generators(&cone)?.to_vec();
        let mut rows = down_set_rows(cone.dim(), body.vertices(), &order)?;
        for h in cone.facet_normals() {
            rows.push((h.neg(), Rat::zero()));
        }
        let rebuilt = Polytope::from_hrep(cone.dim(), &rows)?;
        if rebuilt != body {
            return Err(Error::InvalidBody(
                "body is not down-closed within its cone".into(),
            ));
        }
        let w_rep: Vec<Point> = body
            .facets()
            .iter()
            .filter(|f| f.offset.is_positive())
            .map(|f| f.normal.scale(&(Rat::one() / &f.offset)))
            .collect();
        // Proper means the body meets every ray of the cone, i.e. its
        // vertices span the home cone exactly.
        let proper = match PolyhedralCone::from_generators(cone.dim(), body.vertices()) {
            Ok(spanned) => spanned == cone,
            Err(_) => false,
        };
        let generators: Vec<Point> = body
            .vertices()
            .iter()
            .filter(|v| {
                !body
                    .vertices()
                    .iter()
                    .any(|w| *w != **v && order_cone_contains(&cone, &w.sub(v)))
            })
            .cloned()
            .collect();
        Ok(CABBody {
            cone,
            body,
            w_rep,
            generators,
            proper,
        })
    }

    pub fn cone(&self) -> &PolyhedralCone {
        &self.cone
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    /// Facet normals scaled so that `⟨w, x⟩ ≤ 1` on the body; for a proper
    /// body these witness its representation over the home cone.
    pub fn w_rep(&self) -> &[Point] {
        &self.w_rep
    }

    /// The order-maximal vertices; the body is their down-closure.
    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    /// Whether the body meets every ray of its home cone.
    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.body.contains_point(p)
    }

    /// Facet inequalities of the down-set extension `K − D∨` of the body
    /// over its home cone `D`.
    pub fn hat_rows(&self) -> Result<Vec<(Point, Rat)>> {
        down_set_rows(self.dim(), self.body.vertices(), self.cone.facet_normals())
    }

    /// Membership in the down-set extension.
    pub fn hat_contains(&self, p: &Point) -> Result<bool> {
        Ok(self.hat_rows()?.iter().all(|(a, b)| a.dot(p) <= *b))
    }
}

/// Down-closure `{U}↓ = D ∩ (conv(U) − O)` of finitely many points of the
/// home cone `D`, with `O` the order cone of `D`.
pub fn c_down_closure(cone: &PolyhedralCone, points: &[Point]) -> Result<CABBody> {
    if points.is_empty() {
        return Err(Error::EmptyInput("down-closure points"));
    }
    for p in points {
        p.check_dim(cone.dim())?;
        if !cone.contains(p) {
            return Err(Error::InvalidBody("point outside the cone".into()));
        }
    }
    let order = order_cone_generators(cone)?;
    let mut rows = down_set_rows(cone.dim(), points, order)?;
    for h in cone.facet_normals() {
        rows.push((h.neg(), Rat::zero()));
    }
    let body = Polytope::from_hrep(cone.dim(), &rows)?;
    CABBody::new(cone.clone(), body)
}

/// The anti-blocking dual `A_C K = K° ∩ C` over an ordered home cone. An
/// involution on proper bodies; the polar of an improper body is unbounded
/// inside the cone, so improper input is rejected.
pub fn a_c_dual(k: &CABBody) -> Result<CABBody> {
    k.cone.require_ordered()?;
    if !k.proper {
        return Err(Error::ImproperBody);
    }
    let mut rows: Vec<(Point, Rat)> = k
        .cone
        .facet_normals()
        .iter()
        .map(|h| (h.neg(), Rat::zero()))
        .collect();
    for v in k.body.vertices() {
        rows.push((v.clone(), Rat::one()));
    }
    let body = Polytope::from_hrep(k.dim(), &rows)?;
    CABBody::new(k.cone.clone(), body)
}

/// Vertex index sets of all nonempty faces of a polytope: intersections of
/// facet incidence sets, seeded with the whole vertex set.
fn polytope_face_vertex_sets(p: &Polytope) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;
    let incidences: Vec<BTreeSet<usize>> = p
        .facet_vertex_incidence()
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect();
    let full: BTreeSet<usize> = (0..p.vertices().len()).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = vec![full];
    while let Some(s) = queue.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for inc in &incidences {
            let t: BTreeSet<usize> = s.intersection(inc).copied().collect();
            if !t.is_empty() && !seen.contains(&t) {
                queue.push(t);
            }
        }
    }
    seen.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Metric projection onto a polytope. Each face contributes the affine
/// projection of `p` onto its hull; the returned point is certified by the
/// variational inequality `⟨p − r, y − r⟩ ≤ 0` against every vertex `y`.
pub fn nearest_point_polytope(body: &Polytope, p: &Point) -> Result<Point> {
    p.check_dim(body.dim())?;
    if body.contains_point(p) {
        return Ok(p.clone());
    }
    for set in polytope_face_vertex_sets(body) {
        let base = &body.vertices()[set[0]];
        let dirs: Vec<Vec<Rat>> = set[1..]
            .iter()
            .map(|&i| body.vertices()[i].sub(base).coords().to_vec())
            .collect();
        let basis: Vec<Vec<Int>> = linalg::independent_subset(&dirs)
            .into_iter()
            .map(|i| linalg::primitive_integer(&dirs[i]))
            .collect();
        let r = base.add(&project_onto_span(&basis, &p.sub(base)));
        if body.contains_point(&r)
            && body
                .vertices()
                .iter()
                .all(|y| !p.sub(&r).dot(&y.sub(&r)).is_positive())
        {
            return Ok(r);
        }
    }
    Err(Error::InvalidBody(
        "no face certified the metric projection".into(),
    ))
}

/// Section of a body by a cone face: the body intersected with the facets
/// that are tight on the face.
fn face_section(body: &Polytope, cone: &PolyhedralCone, face: usize) -> Result<Polytope> {
    let rows: Vec<(Point, Rat)> = cone
        .tight_facets(face)
        .into_iter()
        .map(|t| (cone.facet_normals()[t].clone(), Rat::zero()))
        .collect();
    if rows.is_empty() {
        return Ok(body.clone());
    }
    body.intersect(&rows)
}

/// Volume of a section measured in the frame of an integer basis of its face
/// span. Zero when the section does not fill the span; the zero-dimensional
/// section `{0}` has volume one.
fn frame_volume(section: &Polytope, basis: &[Vec<Int>]) -> Result<Rat> {
    let j = basis.len();
    if j == 0 {
        return Ok(Rat::one());
    }
    let zero = vec![Rat::zero(); section.dim()];
    let mut frame_pts = Vec::with_capacity(section.vertices().len());
    for v in section.vertices() {
        let u = linalg::frame_coords(basis, &zero, v.coords())
            .ok_or_else(|| Error::InvalidBody("section leaves the span of its face".into()))?;
        frame_pts.push(Point::new(u));
    }
    Ok(volume(&Polytope::hull(j, &frame_pts)?))
}

/// One face-indexed piece of a dissection: the section of the first body by
/// the face, the section of the second body by the conjugate face, and
/// their combination.
#[derive(Clone, Debug)]
pub struct ConePiece {
    pub face: usize,
    pub face_dim: usize,
    pub conjugate_face: usize,
    pub conjugate_dim: usize,
    pub section: Polytope,
    pub conjugate_section: Polytope,
    /// `section + (−conjugate_section)`, or their convex hull in hull mode.
    pub body: Polytope,
    pub volume: Rat,
    /// Volume of the Minkowski piece, the product of the two orthogonal
    /// section volumes; this is what the mixed-volume accounting sums.
    pub product_volume: Rat,
}

/// Outcome of dissecting a difference body along the face lattice of the
/// home cone.
#[derive(Clone, Debug)]
pub struct ConeDissectReport {
    pub mode: DiffMode,
    pub pieces: Vec<ConePiece>,
    pub assembled: Polytope,
    pub total_volume: Rat,
    pub piece_volume_sum: Rat,
    /// Piece volumes add up to the assembled volume.
    pub additive: bool,
    /// No two full-dimensional pieces share interior points.
    pub overlaps_lower_dimensional: bool,
    /// `mixed_volumes[j] = Σ_{dim F = j} vol(piece F) / C(n, j)`.
    pub mixed_volumes: Vec<Rat>,
    /// The same mixed volumes recovered from volumes of scaled sums.
    pub mixed_oracle: Vec<Rat>,
    pub mixed_match: bool,
    /// The Minkowski difference equals the intersection of the two down-set
    /// extensions, `K − L = K̂ ∩ (−L̂)`.
    pub hat_identity: bool,
}

/// Dissects `K − L` (or `K ∨ −L` in hull mode) into pieces indexed by the
/// faces of the ordered home cone of `K`, where `L` lives over the dual
/// cone: the piece at `F` combines `K ∩ F` with `−(L ∩ F⋄)`.
///
/// The pieces always tile the difference body when the home cone is an
/// orthant, a planar ordered cone, a product of such cones, or an isometric
/// image of one. Over other ordered cones the covering can genuinely fail;
/// the report records this honestly through its equality flags instead of
/// assuming it.
pub fn cone_dissect(k: &CABBody, l: &CABBody, mode: DiffMode) -> Result<ConeDissectReport> {
    k.cone.require_ordered()?;
    let dual = k.cone.dual()?;
    if l.cone != dual {
        return Err(Error::InvalidBody(
            "second body must live over the dual of the first body's cone".into(),
        ));
    }
    let n = k.dim();
    let faces = k.cone.faces();

    let build = |i: usize| -> Result<ConePiece> {
        let face_dim = faces[i].dim();
        let conj_set = k.cone.conjugate_set(i);
        let conjugate_face = l
            .cone
            .face_index(&conj_set)
            .ok_or_else(|| Error::InvalidBody("conjugate set is not a dual face".into()))?;
        let conjugate_dim = l.cone.faces()[conjugate_face].dim();

        let section = face_section(&k.body, &k.cone, i)?;
        let conjugate_section = face_section(&l.body, &l.cone, conjugate_face)?;

        let sum_piece = minkowski_sum(&section, &conjugate_section.neg())?;
        let product_volume = volume(&sum_piece);

        if face_dim + conjugate_dim == n {
            // Cross-check against the frame factorization: the two spans are
            // orthogonal complements, so the combined Gram determinant is a
            // perfect square and the piece volume splits as
            // vol_j(K_F) · vol_{n−j}(L_F⋄).
            let bk = k.cone.face_basis(i);
            let bl = l.cone.face_basis(conjugate_face);
            let vk = frame_volume(&section, &bk)?;
            let vl = frame_volume(&conjugate_section, &bl)?;
            let g = linalg::gram_det(&bk) * linalg::gram_det(&bl);
            let s = g.sqrt();
            if &s * &s != g {
                return Err(Error::InvalidBody(
                    "face and conjugate spans are not orthogonal complements".into(),
                ));
            }
            if product_volume != vk * vl * Rat::from_integer(s) {
                return Err(Error::InvalidBody(
                    "piece volume disagrees with its frame factorization".into(),
                ));
            }
        }

        let (body, vol) = match mode {
            DiffMode::Sum => {
                let v = product_volume.clone();
                (sum_piece, v)
            }
            DiffMode::Hull => {
                let joined = join(&section, &conjugate_section.neg())?;
                let v = volume(&joined);
                if face_dim + conjugate_dim == n {
                    let expected = &product_volume * factorial_rat(face_dim)
                        * factorial_rat(conjugate_dim)
                        / factorial_rat(n);
                    if v != expected {
                        return Err(Error::InvalidBody(
                            "joined piece volume disagrees with its frame factorization".into(),
                        ));
                    }
                }
                (joined, v)
            }
        };

        Ok(ConePiece {
            face: i,
            face_dim,
            conjugate_face,
            conjugate_dim,
            section,
            conjugate_section,
            body,
            volume: vol,
            product_volume,
        })
    };

    // Pieces are independent; merge deterministically in face order.
    let indices: Vec<usize> = (0..faces.len()).collect();
    #[cfg(feature = "parallel")]
    let pieces = indices
        .par_iter()
        .map(|&i| build(i))
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let pieces = indices
        .iter()
        .map(|&i| build(i))
        .collect::<Result<Vec<_>>>()?;

    let assembled = match mode {
        DiffMode::Sum => minkowski_sum(&k.body, &l.body.neg())?,
        DiffMode::Hull => join(&k.body, &l.body.neg())?,
    };
    let total_volume = volume(&assembled);
    let piece_volume_sum: Rat = pieces.iter().map(|p| p.volume.clone()).sum();
    let additive = piece_volume_sum == total_volume;

    let mut overlaps_lower_dimensional = true;
    'pairs: for (a, pa) in pieces.iter().enumerate() {
        if pa.body.affine_dim() < n {
            continue;
        }
        for pb in pieces.iter().skip(a + 1) {
            if pb.body.affine_dim() < n {
                continue;
            }
            let rows: Vec<(Point, Rat)> = pb
                .body
                .facets()
                .iter()
                .map(|f| (f.normal.clone(), f.offset.clone()))
                .collect();
            match pa.body.intersect(&rows) {
                Err(Error::EmptyIntersection) => {}
                Ok(x) => {
                    if x.affine_dim() == n {
                        overlaps_lower_dimensional = false;
                        break 'pairs;
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }

    let difference = match mode {
        DiffMode::Sum => assembled.clone(),
        DiffMode::Hull => minkowski_sum(&k.body, &l.body.neg())?,
    };

    let mut mixed_volumes = vec![Rat::zero(); n + 1];
    for p in &pieces {
        mixed_volumes[p.face_dim] += &p.product_volume;
    }
    for (j, m) in mixed_volumes.iter_mut().enumerate() {
        *m /= binomial_rat(n, j);
    }
    let mixed_oracle = mixed_volume_pair_all(&k.body, &l.body.neg())?;
    let mixed_match = mixed_volumes == mixed_oracle;

    let mut hat_rows_all = k.hat_rows()?;
    for (a, b) in l.hat_rows()? {
        hat_rows_all.push((a.neg(), b));
    }
    let hats = Polytope::from_hrep(n, &hat_rows_all)?;
    let hat_identity = hats == difference;

    Ok(ConeDissectReport {
        mode,
        pieces,
        assembled,
        total_volume,
        piece_volume_sum,
        additive,
        overlaps_lower_dimensional,
        mixed_volumes,
        mixed_oracle,
        mixed_match,
        hat_identity,
    })
}
