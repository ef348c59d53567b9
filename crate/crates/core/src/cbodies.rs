//! Suspension bodies over pairs of anti-blocking bodies.
//!
//! For anti-blocking `K`, `T` in dimension `n` and a height parameter
//! `lambda` in `[0, 1]`, the suspension is
//!
//! ```text
//! C_lambda(K, -T) = conv( K x {lambda}  u  -T x {-lambda}  u  [-e, e] )
//! ```
//!
//! where `e` is the last coordinate direction in dimension `n + 1`. The
//! module provides the constructor, horizontal slices, the volume expansion
//! into mixed volumes of the parents, the explicit polar description, volume
//! invariance in `lambda`, Steiner symmetrization along coordinate
//! directions, and certified lower bounds for the volume product of the
//! symmetrized parents.

use num_traits::Signed;

use crate::antiblocking::{abdual, mixed_volume_ab, AntiBlockingBody};
use crate::geom::{join, polar, project_frame, section_frame, volume, Point, Polytope};
use crate::interval::{sqrt_interval, sqrt_rat, Interval, DEFAULT_BITS};
use crate::rat::{binomial, factorial, rat, rat_int, rat_one, rat_zero, Rat};
use crate::{Error, Result};

/// Outcome of comparing an exact quantity against an interval enclosure of a
/// transcendental bound. `Unresolved` means the enclosure was too wide to
/// decide; widening the working precision resolves it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertStatus {
    Holds,
    Fails,
    Unresolved,
}

/// Certify `lhs >= bound` against the safe side of the enclosure.
pub fn certify_ge(lhs: &Rat, bound: &Interval) -> CertStatus {
    if lhs >= bound.hi() {
        CertStatus::Holds
    } else if lhs < bound.lo() {
        CertStatus::Fails
    } else {
        CertStatus::Unresolved
    }
}

/// The suspension of an anti-blocking pair, together with the data it was
/// built from.
#[derive(Clone, Debug)]
pub struct CayleyBody {
    base_dim: usize,
    lambda: Rat,
    body: Polytope,
    parents: (AntiBlockingBody, AntiBlockingBody),
}

fn lift(points: &[Point], h: &Rat) -> Vec<Point> {
    points
        .iter()
        .map(|p| {
            let mut c = p.coords().to_vec();
            c.push(h.clone());
            Point::new(c)
        })
        .collect()
}

/// Build `C_lambda(K, -T)` in dimension `n + 1`. Requires `lambda` in
/// `[0, 1]` and matching parent dimensions. The vertical segment `[-e, e]`
/// is always part of the hull, so the body is full-dimensional even at
/// `lambda = 0`.
pub fn cayley(k: &AntiBlockingBody, t: &AntiBlockingBody, lambda: &Rat) -> Result<CayleyBody> {
    let n = k.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: t.dim(),
        });
    }
    if lambda.is_negative() || *lambda > rat_one() {
        return Err(Error::Config(format!(
            "suspension height {lambda} outside [0, 1]"
        )));
    }
    let mut pts = lift(k.polytope().vertices(), lambda);
    let neg_lambda = -lambda.clone();
    pts.extend(lift(t.polytope().neg().vertices(), &neg_lambda));
    let mut apex = vec![rat_zero(); n + 1];
    apex[n] = rat_one();
    pts.push(Point::new(apex.clone()));
    apex[n] = -rat_one();
    pts.push(Point::new(apex));
    let body = Polytope::hull(n + 1, &pts)?;
    Ok(CayleyBody {
        base_dim: n,
        lambda: lambda.clone(),
        body,
        parents: (k.clone(), t.clone()),
    })
}

impl CayleyBody {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn body(&self) -> &Polytope {
        &self.body
    }

    pub fn parents(&self) -> (&AntiBlockingBody, &AntiBlockingBody) {
        (&self.parents.0, &self.parents.1)
    }

    pub fn volume(&self) -> Rat {
        volume(&self.body)
    }

    /// Horizontal slice `{ x : (x, h) in C }` as a polytope in the base
    /// dimension. Substitutes the last coordinate into every facet.
    pub fn slice(&self, h: &Rat) -> Result<Polytope> {
        let n = self.base_dim;
        let rows: Vec<(Point, Rat)> = self
            .body
            .facets()
            .iter()
            .map(|f| {
                let a = f.normal.coords();
                let base = Point::new(a[..n].to_vec());
                let offset = f.offset.clone() - a[n].clone() * h.clone();
                (base, offset)
            })
            .collect();
        Polytope::from_hrep(n, &rows)
    }
}

/// Exact volume identity for the suspension at `lambda = 1`:
///
/// ```text
/// Vol(C(K, -T)) = 2/(n+1) * sum_j V(K[j], -T[n-j])
/// ```
#[derive(Clone, Debug)]
pub struct CBodyVolumeReport {
    pub base_dim: usize,
    pub direct: Rat,
    pub expansion: Rat,
    pub holds: bool,
}

pub fn cbody_volume_identity(
    k: &AntiBlockingBody,
    t: &AntiBlockingBody,
) -> Result<CBodyVolumeReport> {
    let n = k.dim();
    let c = cayley(k, t, &rat_one())?;
    let direct = c.volume();
    let mut sum = rat_zero();
    for j in 0..=n {
        sum += mixed_volume_ab(k, t, j)?;
    }
    let expansion = rat(2, (n + 1) as i64) * sum;
    let holds = direct == expansion;
    Ok(CBodyVolumeReport {
        base_dim: n,
        direct,
        expansion,
        holds,
    })
}

/// Polar description of the suspension at `lambda = 1`:
///
/// ```text
/// C(K, -T)^o = conv( -2 A(T) x {1}  u  2 A(K) x {-1} )
/// ```
#[derive(Clone, Debug)]
pub struct CBodyPolarReport {
    pub base_dim: usize,
    pub direct_polar: Polytope,
    pub suspension_form: Polytope,
    pub holds: bool,
}

pub fn cbody_polar(k: &AntiBlockingBody, t: &AntiBlockingBody) -> Result<CBodyPolarReport> {
    let n = k.dim();
    let c = cayley(k, t, &rat_one())?;
    let direct_polar = polar(c.body())?;
    let top = abdual(t)?.polytope().neg().scale(&rat_int(2));
    let bottom = abdual(k)?.polytope().scale(&rat_int(2));
    let mut pts = lift(top.vertices(), &rat_one());
    pts.extend(lift(bottom.vertices(), &-rat_one()));
    let suspension_form = Polytope::hull(n + 1, &pts)?;
    let holds = direct_polar == suspension_form;
    Ok(CBodyPolarReport {
        base_dim: n,
        direct_polar,
        suspension_form,
        holds,
    })
}

/// Volume product of the symmetric suspension `C_lambda(K) := C_lambda(K, -K)`,
/// measured against the certified enclosure of
///
/// ```text
/// sqrt(2 pi n)/(n+1) * 4^{n+1}/(n+1)!
/// ```
///
/// The bound has slack at small dimensions and the comparison can land on
/// either side, so the report carries a status rather than asserting.
#[derive(Clone, Debug)]
pub struct CBodyMahlerReport {
    pub base_dim: usize,
    pub lambda: Rat,
    pub volume: Rat,
    pub polar_volume: Rat,
    pub product: Rat,
    pub bound: Interval,
    /// Enclosure of `product - bound`; nonnegative iff the bound holds.
    pub slack: Interval,
    pub status: CertStatus,
}

pub fn cbody_mahler(k: &AntiBlockingBody, lambda: &Rat) -> Result<CBodyMahlerReport> {
    let n = k.dim();
    let c = cayley(k, k, lambda)?;
    let vol = c.volume();
    let polar_volume = volume(&polar(c.body())?);
    let product = vol.clone() * polar_volume.clone();
    let two_pi_n = crate::interval::pi(DEFAULT_BITS).scale(&rat_int(2 * n as i64));
    let scale = Rat::new(
        num_traits::pow(crate::rat::int(4), n + 1),
        crate::rat::int((n + 1) as i64) * factorial(n + 1),
    );
    let bound = sqrt_interval(&two_pi_n, DEFAULT_BITS)?.scale(&scale);
    let slack = Interval::exact(product.clone()).sub(&bound);
    let status = certify_ge(&product, &bound);
    Ok(CBodyMahlerReport {
        base_dim: n,
        lambda: lambda.clone(),
        volume: vol,
        polar_volume,
        product,
        bound,
        slack,
        status,
    })
}

/// Exact factorization of the suspension volume product at `lambda = 1`:
///
/// ```text
/// Vol(C(K)) Vol(C(K)^o) = 2^{n+2}/(n+1)^2 * Vol(K v -K) Vol(AK v -AK)
/// ```
#[derive(Clone, Debug)]
pub struct CBodyProductIdentity {
    pub base_dim: usize,
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

pub fn cbody_product_identity(k: &AntiBlockingBody) -> Result<CBodyProductIdentity> {
    let n = k.dim();
    let report = cbody_mahler(k, &rat_one())?;
    let dual = abdual(k)?;
    let vee = volume(&join(k.polytope(), &k.polytope().neg())?);
    let dual_vee = volume(&join(dual.polytope(), &dual.polytope().neg())?);
    let factor = Rat::new(
        num_traits::pow(crate::rat::int(2), n + 2),
        crate::rat::int(((n + 1) * (n + 1)) as i64),
    );
    let rhs = factor * vee * dual_vee;
    let holds = report.product == rhs;
    Ok(CBodyProductIdentity {
        base_dim: n,
        lhs: report.product,
        rhs,
        holds,
    })
}

/// Certified lower bounds for `Vol(K v -K) * Vol(AK v -AK)`:
/// the binomial bound `(1/n!) (sum_j sqrt(binom(n, j)))^2`, which is tight
/// exactly on segments in dimension one, and the coarser closed-form bound
/// `2^n/n! * sqrt(pi n / 2)`.
#[derive(Clone, Debug)]
pub struct VeeProductReport {
    pub base_dim: usize,
    pub product: Rat,
    pub binomial_bound: Interval,
    pub binomial_status: CertStatus,
    pub binomial_equality: bool,
    pub closed_form_bound: Interval,
    pub closed_form_status: CertStatus,
}

pub fn vee_product_bounds(k: &AntiBlockingBody) -> Result<VeeProductReport> {
    let n = k.dim();
    let dual = abdual(k)?;
    let vee = volume(&join(k.polytope(), &k.polytope().neg())?);
    let dual_vee = volume(&join(dual.polytope(), &dual.polytope().neg())?);
    let product = vee * dual_vee;

    let mut root_sum = Interval::exact(rat_zero());
    for j in 0..=n {
        let b = Rat::from_integer(binomial(n, j));
        root_sum = root_sum.add(&sqrt_rat(&b, DEFAULT_BITS)?);
    }
    let binomial_bound = root_sum
        .mul(&root_sum)
        .scale(&Rat::new(crate::rat::int(1), factorial(n)));
    let binomial_status = certify_ge(&product, &binomial_bound);
    let binomial_equality = binomial_bound.is_exact() && product == *binomial_bound.lo();

    let half_pi_n = crate::interval::pi(DEFAULT_BITS).scale(&rat(n as i64, 2));
    let closed_form_bound = sqrt_interval(&half_pi_n, DEFAULT_BITS)?.scale(&Rat::new(
        num_traits::pow(crate::rat::int(2), n),
        factorial(n),
    ));
    let closed_form_status = certify_ge(&product, &closed_form_bound);

    Ok(VeeProductReport {
        base_dim: n,
        product,
        binomial_bound,
        binomial_status,
        binomial_equality,
        closed_form_bound,
        closed_form_status,
    })
}

/// Volume of the suspension at every requested height. The volume does not
/// depend on `lambda`, and the report records the witness values.
#[derive(Clone, Debug)]
pub struct ShadowReport {
    pub base_dim: usize,
    pub volumes: Vec<(Rat, Rat)>,
    pub all_equal: bool,
}

pub fn shadow_invariance(
    k: &AntiBlockingBody,
    t: &AntiBlockingBody,
    lambdas: &[Rat],
) -> Result<ShadowReport> {
    if lambdas.is_empty() {
        return Err(Error::EmptyInput("no heights to compare"));
    }
    let mut volumes = Vec::with_capacity(lambdas.len());
    for l in lambdas {
        let c = cayley(k, t, l)?;
        volumes.push((l.clone(), c.volume()));
    }
    let first = volumes[0].1.clone();
    let all_equal = volumes.iter().all(|(_, v)| *v == first);
    Ok(ShadowReport {
        base_dim: k.dim(),
        volumes,
        all_equal,
    })
}

/// Steiner symmetral of `p` along coordinate `axis` with parameter `t`.
///
/// Requires the fibers of `p` in direction `axis` to be segments `[0, beta]`,
/// i.e. `p` lies in the halfspace `x_axis >= 0` and its slice at
/// `x_axis = 0` equals its projection along `axis`. Each fiber `[0, beta]`
/// is translated to `[-t beta, (1 - t) beta]`, which preserves volume.
pub fn steiner_symmetral_polytope(p: &Polytope, axis: usize, t: &Rat) -> Result<Polytope> {
    let n = p.dim();
    if axis >= n {
        return Err(Error::Config(format!(
            "axis {axis} out of range for dimension {n}"
        )));
    }
    if t.is_negative() || *t > rat_one() {
        return Err(Error::Config(format!(
            "symmetrization parameter {t} outside [0, 1]"
        )));
    }
    if p.vertices().iter().any(|v| v.coords()[axis].is_negative()) {
        return Err(Error::InvalidBody(format!(
            "body extends below the hyperplane x_{axis} = 0"
        )));
    }
    let rest: Vec<usize> = (0..n).filter(|i| *i != axis).collect();
    if section_frame(p, &rest)? != project_frame(p, &rest)? {
        return Err(Error::InvalidBody(format!(
            "fibers along axis {axis} are not anchored at 0"
        )));
    }
    // Fibers map as whole segments, so the hull of the two endpoint images
    // of every vertex is exactly the symmetral.
    let mut pts = Vec::with_capacity(2 * p.vertices().len());
    for v in p.vertices() {
        let mut upper = v.coords().to_vec();
        upper[axis] = (rat_one() - t.clone()) * upper[axis].clone();
        let mut lower = v.coords().to_vec();
        lower[axis] = -t.clone() * lower[axis].clone();
        pts.push(Point::new(upper));
        pts.push(Point::new(lower));
    }
    Polytope::hull(n, &pts)
}

/// Steiner symmetral of an anti-blocking body, whose fibers along every
/// coordinate direction are anchored at 0 by down-closedness.
pub fn steiner_symmetral(k: &AntiBlockingBody, axis: usize, t: &Rat) -> Result<Polytope> {
    steiner_symmetral_polytope(k.polytope(), axis, t)
}

/// Symmetrize along every coordinate direction in turn with `t = 1/2`. The
/// result is the half-scaled reflection closure of `K`: each intermediate
/// body stays fiber-anchored in the axes not yet processed, so the
/// iteration is well-defined.
pub fn iterated_symmetral(k: &AntiBlockingBody) -> Result<Polytope> {
    let mut p = k.polytope().clone();
    let half = rat(1, 2);
    for axis in 0..k.dim() {
        p = steiner_symmetral_polytope(&p, axis, &half)?;
    }
    Ok(p)
}
