//! Bodies whose intersection with every closed orthant is a reflected
//! anti-blocking body, together with the dissection constructions that
//! produce them: differences `K - K'`, difference hulls `K ∨ (-K')`, and
//! unconditional closures. The orthant pieces dissect the body, the
//! piecewise duals assemble to the polar, and the volume bound
//! `Vol(K) Vol(K°) >= 4^n/n!` is reported exactly.

use crate::antiblocking::{abdual, AntiBlockingBody, SignVector};
use crate::error::{Error, Result};
use crate::geom::{ops, volume::volume, Point, Polytope};
use crate::rat::{factorial, Rat};
use num_traits::Zero;

/// How a difference body is formed: Minkowski sum with the reflected body,
/// or convex hull of the union.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffMode {
    Sum,
    Hull,
}

/// A body with an anti-blocking piece in every orthant. `pieces[mask]` is the
/// reflected piece `σK_σ` (an anti-blocking body); the piece actually lying
/// in the orthant of `σ` is its reflection back.
#[derive(Clone, PartialEq, Debug)]
pub struct LocallyAntiBlockingBody {
    n: usize,
    pieces: Vec<AntiBlockingBody>,
    assembled: Polytope,
}

impl LocallyAntiBlockingBody {
    /// Builds the body from its orthant piece map and certifies consistency:
    /// the hull of the reflected pieces must intersect each orthant in
    /// exactly the given piece. Arbitrary piece maps that fail this are
    /// rejected.
    pub fn from_pieces(n: usize, pieces: Vec<AntiBlockingBody>) -> Result<LocallyAntiBlockingBody> {
        if n == 0 || n > 16 {
            return Err(Error::DimensionMismatch { expected: 16, got: n });
        }
        if pieces.len() != 1usize << n {
            return Err(Error::InvalidBody(format!(
                "expected {} orthant pieces, got {}",
                1usize << n,
                pieces.len()
            )));
        }
        for p in &pieces {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
        }
        let mut all_vertices: Vec<Point> = Vec::new();
        for sv in SignVector::all(n) {
            let piece = &pieces[sv.mask() as usize];
            for v in piece.polytope().vertices() {
                all_vertices.push(sv.apply_point(v));
            }
        }
        let assembled = Polytope::hull(n, &all_vertices)?;
        let lab = LocallyAntiBlockingBody {
            n,
            pieces,
            assembled,
        };
        lab.check_pieces_are_orthant_sections()?;
        Ok(lab)
    }

    fn check_pieces_are_orthant_sections(&self) -> Result<()> {
        for sv in SignVector::all(self.n) {
            let section = orthant_section(&self.assembled, &sv)?;
            if section.polytope() != self.pieces[sv.mask() as usize].polytope() {
                return Err(Error::InvalidBody(format!(
                    "orthant piece for mask {:b} is not the orthant section",
                    sv.mask()
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn assembled(&self) -> &Polytope {
        &self.assembled
    }

    /// The reflected piece `σK_σ` for the sign vector with this mask.
    pub fn piece(&self, mask: u32) -> &AntiBlockingBody {
        &self.pieces[mask as usize]
    }

    pub fn pieces(&self) -> &[AntiBlockingBody] {
        &self.pieces
    }

    /// The piece embedded where it lives: `K ∩ σR^n_+`.
    pub fn embedded_piece(&self, sv: &SignVector) -> Polytope {
        sv.apply_polytope(self.pieces[sv.mask() as usize].polytope())
    }

    pub fn volume(&self) -> Rat {
        volume(&self.assembled)
    }

    /// Sum of the piece volumes; equals the assembled volume (the pieces
    /// dissect the body along orthant walls).
    pub fn piece_volume_sum(&self) -> Rat {
        self.pieces.iter().map(|p| p.volume()).sum()
    }
}

/// Intersection with the orthant of `sv`, reflected back into the
/// nonnegative orthant and validated anti-blocking.
fn orthant_section(p: &Polytope, sv: &SignVector) -> Result<AntiBlockingBody> {
    let n = p.dim();
    let constraints: Vec<(Point, Rat)> = (0..n)
        .map(|i| {
            let mut a = Point::unit(n, i);
            if sv.sign(i) == 1 {
                a = a.neg();
            }
            (a, Rat::zero())
        })
        .collect();
    let section = p.intersect(&constraints)?;
    AntiBlockingBody::new(sv.apply_polytope(&section))
}

/// The difference body `K + (-K')` (mode `Sum`) or difference hull
/// `K ∨ (-K')` (mode `Hull`), assembled directly and dissected into its
/// orthant pieces: the piece over the positive support `E` of an orthant is
/// the product (resp. join) of the complementary projections of the two
/// bodies. Assembly and dissection are computed independently and
/// cross-checked.
pub fn decompose_difference(
    k: &AntiBlockingBody,
    k2: &AntiBlockingBody,
    mode: DiffMode,
) -> Result<LocallyAntiBlockingBody> {
    let n = k.dim();
    if k2.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k2.dim(),
        });
    }
    let mut pieces = Vec::with_capacity(1usize << n);
    for sv in SignVector::all(n) {
        let e = sv.plus_axes();
        let ec = sv.minus_axes();
        let pk = k.project_embed(&e)?;
        let pk2 = k2.project_embed(&ec)?;
        let piece = match mode {
            DiffMode::Sum => ops::minkowski_sum(&pk, &pk2)?,
            DiffMode::Hull => ops::join(&pk, &pk2)?,
        };
        pieces.push(AntiBlockingBody::new(piece)?);
    }
    let direct = match mode {
        DiffMode::Sum => ops::minkowski_sum(k.polytope(), &k2.polytope().neg())?,
        DiffMode::Hull => ops::join(k.polytope(), &k2.polytope().neg())?,
    };
    let lab = LocallyAntiBlockingBody::from_pieces(n, pieces)?;
    if *lab.assembled() != direct {
        return Err(Error::InvalidBody(
            "orthant dissection does not assemble to the difference body".into(),
        ));
    }
    Ok(lab)
}

/// The unconditional closure: the hull of all reflections of `K`, whose
/// orthant pieces all equal `K` and whose volume is `2^n Vol(K)`.
pub fn unconditional_closure(k: &AntiBlockingBody) -> Result<LocallyAntiBlockingBody> {
    LocallyAntiBlockingBody::from_pieces(k.dim(), vec![k.clone(); 1usize << k.dim()])
}

#[derive(Clone, Debug)]
pub struct MahlerReport {
    pub vol: Rat,
    pub polar_vol: Rat,
    pub product: Rat,
    pub bound: Rat,
    pub slack: Rat,
    pub equality: bool,
}

/// Polar of a locally anti-blocking body, computed piecewise: the orthant
/// piece of the polar over `σ` is the dual body of the piece over `σ`. The
/// piecewise assembly is cross-checked against the direct polar, and the
/// volume-product bound `Vol(K) Vol(K°) >= 4^n / n!` is reported.
pub fn locally_ab_polar(
    lab: &LocallyAntiBlockingBody,
) -> Result<(LocallyAntiBlockingBody, MahlerReport)> {
    let n = lab.dim();
    if !lab.assembled().contains_point_strictly(&Point::zero(n)) {
        return Err(Error::OriginNotInterior);
    }
    let mut dual_pieces = Vec::with_capacity(1usize << n);
    for sv in SignVector::all(n) {
        dual_pieces.push(abdual(lab.piece(sv.mask()))?);
    }
    let polar_lab = LocallyAntiBlockingBody::from_pieces(n, dual_pieces)?;
    let direct = ops::polar(lab.assembled())?;
    if *polar_lab.assembled() != direct {
        return Err(Error::InvalidBody(
            "piecewise polar does not match the direct polar".into(),
        ));
    }
    let vol = lab.volume();
    let polar_vol = polar_lab.volume();
    let product = vol.clone() * polar_vol.clone();
    let bound = Rat::from_integer(num_traits::pow(crate::rat::int(4), n)) / Rat::from_integer(factorial(n));
    let slack = product.clone() - bound.clone();
    let equality = slack.is_zero();
    Ok((
        polar_lab,
        MahlerReport {
            vol,
            polar_vol,
            product,
            bound,
            slack,
            equality,
        },
    ))
}
