//! Exact evaluation of the volume inequalities satisfied by down-closed
//! bodies: the decomposition formula for mixed volumes against reflected
//! bodies, the Godbersen-type bounds with their simplex/box equality cases,
//! Saint-Raymond-type volume products, and the reverse Kleitman comparison
//! of `Vol(K+T)` with `Vol(K-T)`.

use crate::antiblocking::{abdual, AntiBlockingBody};
use crate::error::{Error, Result};
use crate::geom::volume::volume;
use crate::geom::{ops, Polytope};
use crate::rat::{binomial_rat, factorial, Rat};
use num_traits::Zero;

/// Mixed volume `V(K[j], -T[n-j])` through the projection dissection:
/// `binom(n,j)^{-1} sum_{|E|=j} Vol_j(P_E K) Vol_{n-j}(P_{E^c} T)`.
/// Agrees with the inclusion–exclusion oracle on `j` copies of `K` and
/// `n-j` copies of `-T`.
pub fn mixed_volume_ab(k: &AntiBlockingBody, t: &AntiBlockingBody, j: usize) -> Result<Rat> {
    let n = k.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: t.dim(),
        });
    }
    if j > n {
        return Err(Error::DimensionMismatch { expected: n, got: j });
    }
    let mut acc = Rat::zero();
    for mask in 0..(1usize << n) {
        if (mask as u32).count_ones() as usize != j {
            continue;
        }
        let e: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ec: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
        let vk = volume(&k.project_frame(&e)?);
        let vt = volume(&t.project_frame(&ec)?);
        acc += vk * vt;
    }
    Ok(acc / binomial_rat(n, j))
}

#[derive(Clone, Debug)]
pub struct GodbersenEntry {
    pub j: usize,
    pub mixed: Rat,
    /// `binom(n,j) Vol(K) - V(K[j], -K[n-j])`, nonnegative.
    pub upper_slack: Rat,
    /// `V(K[j], -K[n-j]) - Vol(K)`, nonnegative.
    pub lower_slack: Rat,
    pub upper_equality: bool,
    pub lower_equality: bool,
}

#[derive(Clone, Debug)]
pub struct GodbersenReport {
    pub n: usize,
    pub vol: Rat,
    pub entries: Vec<GodbersenEntry>,
    /// Upper equality at some interior index `0 < j < n`; happens exactly for
    /// simplices.
    pub upper_equality_interior: bool,
    /// Lower equality at some interior index; happens exactly for boxes.
    pub lower_equality_interior: bool,
    pub is_simplex: bool,
    pub is_box: bool,
}

/// Evaluates `Vol(K) <= V(K[j], -K[n-j]) <= binom(n,j) Vol(K)` for all `j`
/// and reports the equality structure next to the shape predicates that
/// characterize it.
pub fn godbersen_check(k: &AntiBlockingBody) -> Result<GodbersenReport> {
    let n = k.dim();
    let vol = k.volume();
    let mut entries = Vec::with_capacity(n + 1);
    let mut upper_interior = false;
    let mut lower_interior = false;
    for j in 0..=n {
        let mixed = mixed_volume_ab(k, k, j)?;
        let upper_slack = binomial_rat(n, j) * vol.clone() - mixed.clone();
        let lower_slack = mixed.clone() - vol.clone();
        let upper_equality = upper_slack.is_zero();
        let lower_equality = lower_slack.is_zero();
        if j > 0 && j < n {
            upper_interior |= upper_equality;
            lower_interior |= lower_equality;
        }
        entries.push(GodbersenEntry {
            j,
            mixed,
            upper_slack,
            lower_slack,
            upper_equality,
            lower_equality,
        });
    }
    Ok(GodbersenReport {
        n,
        vol,
        entries,
        upper_equality_interior: upper_interior,
        lower_equality_interior: lower_interior,
        is_simplex: k.is_simplex(),
        is_box: k.is_box(),
    })
}

#[derive(Clone, Debug)]
pub struct SaintRaymondReport {
    pub n: usize,
    pub j: usize,
    /// `Vol(K) Vol(AK)` and its slack over `1/n!`.
    pub product: Rat,
    pub product_slack: Rat,
    pub product_equality: bool,
    /// `V(K[j],-T[n-j]) V(AK[j],-AT[n-j])` and its slack over `1/(j!(n-j)!)`.
    pub mixed_product: Rat,
    pub mixed_slack: Rat,
    pub mixed_equality: bool,
    pub is_reduced_hanner: bool,
}

/// The volume-product lower bounds: `Vol(K) Vol(AK) >= 1/n!` with equality
/// exactly on reduced Hanner bodies, and the mixed refinement
/// `V(K[j],-T[n-j]) V(AK[j],-AT[n-j]) >= 1/(j!(n-j)!)`.
pub fn saint_raymond_products(
    k: &AntiBlockingBody,
    t: &AntiBlockingBody,
    j: usize,
) -> Result<SaintRaymondReport> {
    let n = k.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: t.dim(),
        });
    }
    if j > n {
        return Err(Error::DimensionMismatch { expected: n, got: j });
    }
    let ak = abdual(k)?;
    let at = abdual(t)?;
    let product = k.volume() * ak.volume();
    let product_slack =
        product.clone() - Rat::new(1.into(), factorial(n));
    let mixed = mixed_volume_ab(k, t, j)?;
    let mixed_dual = mixed_volume_ab(&ak, &at, j)?;
    let mixed_product = mixed * mixed_dual;
    let mixed_slack = mixed_product.clone()
        - Rat::new(1.into(), factorial(j) * factorial(n - j));
    Ok(SaintRaymondReport {
        n,
        j,
        product_equality: product_slack.is_zero(),
        mixed_equality: mixed_slack.is_zero(),
        product,
        product_slack,
        mixed_product,
        mixed_slack,
        is_reduced_hanner: k.is_reduced_hanner(),
    })
}

/// The fully mixed volume-product bound with distinct bodies:
/// `V(K_1,..,K_j,-T_1,..,-T_{n-j}) V(AK_1,..,AK_j,-AT_1,..,-AT_{n-j})
///  >= 1/(j!(n-j)!)`, evaluated through the inclusion–exclusion oracle.
/// Returns the product and its slack.
pub fn mixed_saint_raymond_oracle(
    ks: &[AntiBlockingBody],
    ts: &[AntiBlockingBody],
) -> Result<(Rat, Rat)> {
    if ks.is_empty() && ts.is_empty() {
        return Err(Error::EmptyInput("mixed volume product bodies"));
    }
    let j = ks.len();
    let n = j + ts.len();
    let collect = |xs: &[AntiBlockingBody], ys: &[AntiBlockingBody]| -> Result<Vec<Polytope>> {
        let mut bodies: Vec<Polytope> = Vec::with_capacity(n);
        for x in xs {
            bodies.push(x.polytope().clone());
        }
        for y in ys {
            bodies.push(y.polytope().neg());
        }
        Ok(bodies)
    };
    let primal = ops::mixed_volume_oracle(&collect(ks, ts)?)?;
    let dual_ks: Vec<AntiBlockingBody> = ks.iter().map(abdual).collect::<Result<_>>()?;
    let dual_ts: Vec<AntiBlockingBody> = ts.iter().map(abdual).collect::<Result<_>>()?;
    let dual = ops::mixed_volume_oracle(&collect(&dual_ks, &dual_ts)?)?;
    let product = primal * dual;
    let slack = product.clone() - Rat::new(1.into(), factorial(j) * factorial(n - j));
    Ok((product, slack))
}

#[derive(Clone, Debug)]
pub struct KleitmanEntry {
    pub j: usize,
    /// `V(K[j], -T[n-j])`, by the projection formula.
    pub minus_side: Rat,
    /// `V(K[j], T[n-j])`, by the inclusion–exclusion oracle.
    pub plus_side: Rat,
    pub slack: Rat,
}

#[derive(Clone, Debug)]
pub struct KleitmanReport {
    pub n: usize,
    pub entries: Vec<KleitmanEntry>,
    pub vol_sum: Rat,
    pub vol_diff: Rat,
    /// `Vol(K - T) - Vol(K + T)`, nonnegative.
    pub aggregate_slack: Rat,
}

/// The reverse-Kleitman comparison: termwise
/// `V(K[j], T[n-j]) <= V(K[j], -T[n-j])` and in aggregate
/// `Vol(K + T) <= Vol(K - T)`.
pub fn reverse_kleitman_check(
    k: &AntiBlockingBody,
    t: &AntiBlockingBody,
) -> Result<KleitmanReport> {
    let n = k.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: t.dim(),
        });
    }
    let plus_all = ops::mixed_volume_pair_all(k.polytope(), t.polytope())?;
    let mut entries = Vec::with_capacity(n + 1);
    for (j, plus_side) in plus_all.into_iter().enumerate() {
        let minus_side = mixed_volume_ab(k, t, j)?;
        let slack = minus_side.clone() - plus_side.clone();
        entries.push(KleitmanEntry {
            j,
            minus_side,
            plus_side,
            slack,
        });
    }
    let vol_sum = volume(&ops::minkowski_sum(k.polytope(), t.polytope())?);
    let vol_diff = volume(&ops::minkowski_sum(k.polytope(), &t.polytope().neg())?);
    let aggregate_slack = vol_diff.clone() - vol_sum.clone();
    Ok(KleitmanReport {
        n,
        entries,
        vol_sum,
        vol_diff,
        aggregate_slack,
    })
}
