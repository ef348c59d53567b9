//! Polyhedral cones, conjugate faces, and anti-blocking bodies over them.
//!
//! A full-dimensional pointed cone `C` has the dual `C∨ = { y : ⟨y,x⟩ ≥ 0
//! for all x ∈ C }` and induces the order `x ⪯ y iff y − x ∈ C∨`. Bodies
//! that are down-closed in this order generalize the coordinate-orthant
//! anti-blocking bodies; the dissection of a difference body into pieces
//! indexed by faces, with conjugate faces `F⋄ = C∨ ∩ F⊥` carrying the
//! complementary factor, carries over verbatim. Everything here is exact:
//! faces are generator index sets, projections are Gram-system solves, and
//! the only square roots ever taken are of perfect squares.

mod body;

pub use body::{
    a_c_dual, c_down_closure, cone_dissect, nearest_point_polytope, CABBody, ConeDissectReport,
    ConePiece,
};

use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

use crate::geom::{dd, Point};
use crate::linalg;
use crate::rat::{Int, Rat};
use crate::{Error, Result};

/// A face of a cone, identified by the set of extreme rays it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFace {
    generator_set: Vec<usize>,
    dim: usize,
}

impl ConeFace {
    pub fn generator_set(&self) -> &[usize] {
        &self.generator_set
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Full-dimensional pointed polyhedral cone with both descriptions and its
/// face lattice. Generators and facet normals are primitive integer vectors
/// in sorted order, so equal cones compare equal structurally.
#[derive(Clone, Debug)]
pub struct PolyhedralCone {
    dim: usize,
    generators: Vec<Point>,
    facet_normals: Vec<Point>,
    faces: Vec<ConeFace>,
    ordered: bool,
}

impl PartialEq for PolyhedralCone {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.generators == other.generators
            && self.facet_normals == other.facet_normals
    }
}

impl Eq for PolyhedralCone {}

fn ints_to_point(v: &[Int]) -> Point {
    Point::new(linalg::to_rat_vec(v))
}

impl PolyhedralCone {
    /// Build the cone spanned by `rays`. Fails with `ConeNotPointed` if the
    /// rays do not span ℝⁿ or the spanned cone contains a line.
    pub fn from_generators(dim: usize, rays: &[Point]) -> Result<PolyhedralCone> {
        let rows: Vec<Vec<Int>> = rays
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| {
                if r.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: r.dim(),
                    });
                }
                Ok(linalg::primitive_integer(r.coords()))
            })
            .collect::<Result<_>>()?;
        if rows.is_empty() {
            return Err(Error::EmptyInput("cone generators"));
        }
        // Two conversion passes canonicalize both descriptions: the dual of
        // the generators gives the facet normals, and the dual of those
        // recovers the extreme rays.
        let normals = dd::extreme_rays(&rows)?;
        let gens = dd::extreme_rays(&normals)?;
        let generators: Vec<Point> = gens.iter().map(|g| ints_to_point(g)).collect();
        let facet_normals: Vec<Point> = normals.iter().map(|h| ints_to_point(h)).collect();
        let ordered = generators
            .iter()
            .enumerate()
            .all(|(i, g)| generators[i..].iter().all(|h| !g.dot(h).is_negative()));
        let faces = enumerate_faces(&generators, &facet_normals);
        Ok(PolyhedralCone {
            dim,
            generators,
            facet_normals,
            faces,
            ordered,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[Point] {
        &self.facet_normals
    }

    pub fn faces(&self) -> &[ConeFace] {
        &self.faces
    }

    /// Whether `C ⊆ C∨`, i.e. all generators pairwise form nonnegative
    /// inner products. The duality and dissection theory below assumes this
    /// on the primal side.
    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub(crate) fn require_ordered(&self) -> Result<()> {
        if self.ordered {
            Ok(())
        } else {
            Err(Error::ConeNotSelfDualOrdered)
        }
    }

    /// Membership in `C`.
    pub fn contains(&self, p: &Point) -> bool {
        self.facet_normals.iter().all(|h| !h.dot(p).is_negative())
    }

    /// Membership in the dual cone `C∨`.
    pub fn dual_contains(&self, p: &Point) -> bool {
        self.generators.iter().all(|g| !g.dot(p).is_negative())
    }

    /// The dual cone, with generators and facet normals swapped and
    /// re-canonicalized.
    pub fn dual(&self) -> Result<PolyhedralCone> {
        PolyhedralCone::from_generators(self.dim, &self.facet_normals)
    }

    pub fn face_index(&self, generator_set: &[usize]) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.generator_set == generator_set)
    }

    /// Indices of facet normals vanishing on every generator of the face.
    fn tight_facets(&self, face: usize) -> Vec<usize> {
        let set = &self.faces[face].generator_set;
        (0..self.facet_normals.len())
            .filter(|&t| {
                set.iter()
                    .all(|&s| self.facet_normals[t].dot(&self.generators[s]).is_zero())
            })
            .collect()
    }

    /// Exact membership in a face: in the cone and tight on every facet
    /// containing the face.
    pub fn face_contains(&self, face: usize, p: &Point) -> bool {
        self.contains(p)
            && self
                .tight_facets(face)
                .iter()
                .all(|&t| self.facet_normals[t].dot(p).is_zero())
    }

    /// An integer basis of the linear span of the face.
    pub fn face_basis(&self, face: usize) -> Vec<Vec<Int>> {
        let rows: Vec<Vec<Rat>> = self.faces[face]
            .generator_set
            .iter()
            .map(|&s| self.generators[s].coords().to_vec())
            .collect();
        linalg::independent_subset(&rows)
            .into_iter()
            .map(|i| linalg::primitive_integer(&rows[i]))
            .collect()
    }

    /// The smallest face containing `p`, or `None` if `p` is outside the
    /// cone. `p` lies in the relative interior of the returned face.
    pub fn minimal_face_containing(&self, p: &Point) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let mut set: Option<BTreeSet<usize>> = None;
        for h in &self.facet_normals {
            if h.dot(p).is_zero() {
                let inc: BTreeSet<usize> = (0..self.generators.len())
                    .filter(|&i| h.dot(&self.generators[i]).is_zero())
                    .collect();
                set = Some(match set {
                    None => inc,
                    Some(s) => s.intersection(&inc).copied().collect(),
                });
            }
        }
        let set: Vec<usize> = match set {
            None => (0..self.generators.len()).collect(),
            Some(s) => s.into_iter().collect(),
        };
        self.face_index(&set)
    }

    /// Generator indices (into the dual cone's generators, i.e. this cone's
    /// facet normals) of the conjugate face `F⋄ = C∨ ∩ F⊥`.
    pub fn conjugate_set(&self, face: usize) -> Vec<usize> {
        let set = &self.faces[face].generator_set;
        (0..self.facet_normals.len())
            .filter(|&j| {
                set.iter()
                    .all(|&s| self.facet_normals[j].dot(&self.generators[s]).is_zero())
            })
            .collect()
    }
}

/// All faces as generator index sets: the closure of the facet incidence
/// sets under intersection, together with the cone itself. For a pointed
/// cone the empty set (the apex) always appears.
fn enumerate_faces(generators: &[Point], facet_normals: &[Point]) -> Vec<ConeFace> {
    let m = generators.len();
    let incidences: Vec<BTreeSet<usize>> = facet_normals
        .iter()
        .map(|h| {
            (0..m)
                .filter(|&i| h.dot(&generators[i]).is_zero())
                .collect()
        })
        .collect();
    let full: BTreeSet<usize> = (0..m).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue = vec![full];
    while let Some(s) = queue.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for inc in &incidences {
            let t: BTreeSet<usize> = s.intersection(inc).copied().collect();
            if !seen.contains(&t) {
                queue.push(t);
            }
        }
    }
    let mut faces: Vec<ConeFace> = seen
        .into_iter()
        .map(|s| {
            let set: Vec<usize> = s.into_iter().collect();
            let rows: Vec<Vec<Rat>> = set
                .iter()
                .map(|&i| generators[i].coords().to_vec())
                .collect();
            let dim = linalg::rank(&rows);
            ConeFace {
                generator_set: set,
                dim,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.generator_set).cmp(&(b.dim, &b.generator_set)));
    faces
}

/// Face lattices of a cone and its dual, linked by conjugation.
#[derive(Clone, Debug)]
pub struct FaceLatticeReport {
    pub faces: Vec<ConeFace>,
    pub dual_faces: Vec<ConeFace>,
    /// `conjugate[i]` is the index of `F⋄` among the dual cone's faces.
    pub conjugate: Vec<usize>,
    pub dims_complementary: bool,
    pub bijective: bool,
    pub inclusion_reversing: bool,
}

pub fn cone_faces(c: &PolyhedralCone) -> Result<FaceLatticeReport> {
    let dual = c.dual()?;
    let n = c.dim();
    let mut conjugate = Vec::with_capacity(c.faces.len());
    for i in 0..c.faces.len() {
        let set = c.conjugate_set(i);
        let j = dual.face_index(&set).ok_or_else(|| {
            Error::InvalidBody("conjugate generator set is not a face of the dual cone".into())
        })?;
        conjugate.push(j);
    }
    let dims_complementary = c
        .faces
        .iter()
        .zip(&conjugate)
        .all(|(f, &j)| f.dim + dual.faces[j].dim == n);
    let mut sorted = conjugate.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted.len() == c.faces.len() && c.faces.len() == dual.faces.len();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
    let inclusion_reversing = (0..c.faces.len()).all(|i| {
        (0..c.faces.len()).all(|j| {
            !subset(&c.faces[i].generator_set, &c.faces[j].generator_set)
                || subset(
                    &dual.faces[conjugate[j]].generator_set,
                    &dual.faces[conjugate[i]].generator_set,
                )
        })
    });
    Ok(FaceLatticeReport {
        faces: c.faces.clone(),
        dual_faces: dual.faces,
        conjugate,
        dims_complementary,
        bijective,
        inclusion_reversing,
    })
}

/// Orthogonal projection of `p` onto the span of an integer basis, via the
/// Gram system. An empty basis projects to the origin.
pub(crate) fn project_onto_span(basis: &[Vec<Int>], p: &Point) -> Point {
    let k = basis.len();
    let n = p.dim();
    if k == 0 {
        return Point::zero(n);
    }
    let gram: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Rat::from_integer(linalg::dot_int(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = (0..k)
        .map(|i| linalg::dot(&linalg::to_rat_vec(&basis[i]), p.coords()))
        .collect();
    // Basis rows are independent, so the Gram matrix is invertible.
    let alpha = linalg::solve_square(&gram, &rhs).expect("independent basis");
    let mut r = vec![Rat::zero(); n];
    for (a, b) in alpha.iter().zip(basis) {
        for (rc, bc) in r.iter_mut().zip(b) {
            *rc += a * Rat::from_integer(bc.clone());
        }
    }
    Point::new(r)
}

/// The metric projection onto the cone. The result carries its own
/// optimality certificate: `r ∈ C`, `r − p ∈ C∨`, and `⟨r − p, r⟩ = 0`,
/// which characterizes the nearest point.
pub fn nearest_point(c: &PolyhedralCone, p: &Point) -> Result<Point> {
    if p.dim() != c.dim {
        return Err(Error::DimensionMismatch {
            expected: c.dim,
            got: p.dim(),
        });
    }
    if c.contains(p) {
        return Ok(p.clone());
    }
    for face in 0..c.faces.len() {
        let basis = c.face_basis(face);
        let r = project_onto_span(&basis, p);
        let s = r.sub(p);
        if c.contains(&r) && c.dual_contains(&s) && s.dot(&r).is_zero() {
            return Ok(r);
        }
    }
    Err(Error::InvalidBody(
        "no face certified the metric projection".into(),
    ))
}

/// Witness that `p` lands in the piece `F − F⋄` of the dissection of ℝⁿ
/// indexed by the faces of `C`.
#[derive(Clone, Debug)]
pub struct SpaceDissectionWitness {
    /// Face whose relative interior contains the metric projection of `p`.
    pub face: usize,
    pub projection: Point,
    /// Every face `F` with `p ∈ F − F⋄`.
    pub matches: Vec<usize>,
    /// True when `p` avoids all piece boundaries; then `matches` is a
    /// singleton.
    pub generic: bool,
    pub unique: bool,
}

pub fn space_dissection_witness(
    c: &PolyhedralCone,
    p: &Point,
) -> Result<SpaceDissectionWitness> {
    let r = nearest_point(c, p)?;
    let face = c
        .minimal_face_containing(&r)
        .ok_or_else(|| Error::InvalidBody("projection left the cone".into()))?;
    let mut matches = Vec::new();
    for f in 0..c.faces.len() {
        let basis = c.face_basis(f);
        let q = project_onto_span(&basis, p);
        // p ∈ F − F⋄ iff the span-F component lies in F and the remainder
        // lies in −F⋄; orthogonality to F is automatic for the remainder.
        if c.face_contains(f, &q) && c.dual_contains(&q.sub(p)) {
            matches.push(f);
        }
    }
    let s = r.sub(p);
    let face_set = c.faces[face].generator_set.clone();
    let generic = (0..c.generators.len())
        .all(|i| face_set.contains(&i) || s.dot(&c.generators[i]).is_positive());
    if !matches.contains(&face) {
        return Err(Error::InvalidBody(
            "projection face does not cover its own point".into(),
        ));
    }
    Ok(SpaceDissectionWitness {
        face,
        projection: r,
        unique: matches.len() == 1,
        matches,
        generic,
    })
}
