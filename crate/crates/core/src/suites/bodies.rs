//! Suites over plain anti-blocking bodies and pairs: the mixed-volume
//! bounds against the reflected body, the volume-product lower bounds, the
//! sum/difference comparison, and the orthant-wise Mahler bound.

use super::{error_record, finish, fixed_count, SuiteConfig};
use crate::antiblocking::{
    decompose_difference, godbersen_check, locally_ab_polar, mixed_saint_raymond_oracle,
    reverse_kleitman_check, saint_raymond_products, AntiBlockingBody, DiffMode,
};
use crate::corpus;
use crate::exec::run_indexed;
use crate::geom::mixed_volume_pair_all;
use crate::jsonio::{BodyDto, DifferenceDto};
use crate::rat::{binomial_rat, factorial, Rat};
use crate::report::CheckRecord;
use crate::Result;

type Batch = Result<(usize, Vec<CheckRecord>)>;

fn over_bodies<F>(cfg: &SuiteConfig, check: F) -> Batch
where
    F: Fn(usize, &AntiBlockingBody) -> Result<Vec<CheckRecord>> + Sync + Send,
{
    let bodies = corpus::antiblocking_corpus(cfg.n, fixed_count(cfg), cfg.seed)?;
    let batches = run_indexed(bodies.len(), |i| {
        let k = &bodies[i];
        let records = check(i, k).unwrap_or_else(|e| error_record(i, &e));
        Ok(finish(records, &BodyDto::from_body(k)))
    })?;
    Ok((bodies.len(), batches.into_iter().flatten().collect()))
}

fn over_pairs<F>(cfg: &SuiteConfig, check: F) -> Batch
where
    F: Fn(usize, &AntiBlockingBody, &AntiBlockingBody) -> Result<Vec<CheckRecord>> + Sync + Send,
{
    let pairs = corpus::antiblocking_pairs(cfg.n, fixed_count(cfg), cfg.seed)?;
    let batches = run_indexed(pairs.len(), |i| {
        let (k, t) = &pairs[i];
        let records = check(i, k, t).unwrap_or_else(|e| error_record(i, &e));
        let witness = serde_json::json!({
            "k": BodyDto::from_body(k),
            "t": BodyDto::from_body(t),
        });
        Ok(finish(records, &witness))
    })?;
    Ok((pairs.len(), batches.into_iter().flatten().collect()))
}

/// `Vol(K) <= V(K[j], -K[n-j]) <= binom(n,j) Vol(K)` at the interior
/// indices, plus the simplex/box equality characterizations.
pub(super) fn godbersen(cfg: &SuiteConfig) -> Batch {
    over_bodies(cfg, |i, k| {
        let r = godbersen_check(k)?;
        let mut out = Vec::new();
        for e in &r.entries {
            if e.j == 0 || e.j == r.n {
                continue;
            }
            let upper = binomial_rat(r.n, e.j) * r.vol.clone();
            out.push(CheckRecord::bound(i, "Thm1.2", &upper, &e.mixed));
            out.push(CheckRecord::bound(i, "Thm1.2.lower", &e.mixed, &r.vol));
        }
        out.push(CheckRecord::agreement(
            i,
            "Prop3.3",
            r.upper_equality_interior,
            r.is_simplex,
        ));
        out.push(CheckRecord::agreement(
            i,
            "Prop3.5",
            r.lower_equality_interior,
            r.is_box,
        ));
        Ok(out)
    })
}

/// `Vol(K) Vol(AK) >= 1/n!`, tight exactly on reduced Hanner bodies.
pub(super) fn saint_raymond(cfg: &SuiteConfig) -> Batch {
    over_bodies(cfg, |i, k| {
        let r = saint_raymond_products(k, k, 0)?;
        let rhs = Rat::new(1.into(), factorial(r.n));
        Ok(vec![
            CheckRecord::bound(i, "Thm4.1", &r.product, &rhs),
            CheckRecord::agreement(i, "Thm4.1.eq", r.product_equality, r.is_reduced_hanner),
        ])
    })
}

/// The mixed refinement `V(K[j],-T[n-j]) V(AK[j],-AT[n-j]) >= 1/(j!(n-j)!)`,
/// and its fully mixed form with a third body through the
/// inclusion-exclusion oracle.
pub(super) fn mixed_sr(cfg: &SuiteConfig) -> Batch {
    let n = cfg.n;
    let js: Vec<usize> = match cfg.j {
        Some(j) => vec![j],
        None => (0..=n).collect(),
    };
    let seed = cfg.seed;
    over_pairs(cfg, move |i, k, t| {
        let mut out = Vec::new();
        for &j in &js {
            let r = saint_raymond_products(k, t, j)?;
            let rhs = Rat::new(1.into(), factorial(j) * factorial(n - j));
            out.push(CheckRecord::bound(i, "Thm1.3", &r.mixed_product, &rhs));
        }
        let u = corpus::third_body(n, seed, i)?;
        let ks = [k.clone(), t.clone()];
        let ts = vec![u; n - 2];
        let (product, slack) = mixed_saint_raymond_oracle(&ks, &ts)?;
        let rhs = product.clone() - slack;
        out.push(CheckRecord::bound(i, "Thm1.3.full", &product, &rhs));
        Ok(out)
    })
}

/// Mahler bound `Vol(L) Vol(L°) >= 4^n/n!` for differences of anti-blocking
/// bodies, with the volume additivity of the orthant pieces on both sides.
pub(super) fn mahler_locally_ab(cfg: &SuiteConfig) -> Batch {
    let instances = corpus::difference_corpus(cfg.n, fixed_count(cfg), cfg.seed)?;
    let batches = run_indexed(instances.len(), |i| {
        let (k, t, mode) = &instances[i];
        let records = mahler_one(i, k, t, *mode).unwrap_or_else(|e| error_record(i, &e));
        Ok(finish(records, &DifferenceDto::new(k, t, *mode)))
    })?;
    Ok((instances.len(), batches.into_iter().flatten().collect()))
}

fn mahler_one(
    i: usize,
    k: &AntiBlockingBody,
    t: &AntiBlockingBody,
    mode: DiffMode,
) -> Result<Vec<CheckRecord>> {
    let lab = decompose_difference(k, t, mode)?;
    let (polar, mr) = locally_ab_polar(&lab)?;
    Ok(vec![
        CheckRecord::bound(i, "Cor4.2", &mr.product, &mr.bound),
        CheckRecord::identity(i, "Lem2.3", &lab.volume(), &lab.piece_volume_sum()),
        CheckRecord::identity(i, "Lem2.4", &polar.volume(), &polar.piece_volume_sum()),
    ])
}

/// Termwise and aggregate comparison of `K + T` with `K - T`, with the
/// projection formula cross-checked against the inclusion-exclusion oracle
/// and the orthant decomposition of the difference.
pub(super) fn kleitman(cfg: &SuiteConfig) -> Batch {
    over_pairs(cfg, |i, k, t| {
        let r = reverse_kleitman_check(k, t)?;
        let oracle = mixed_volume_pair_all(k.polytope(), &t.polytope().neg())?;
        let mut out = Vec::new();
        for e in &r.entries {
            out.push(CheckRecord::bound(i, "Thm1.6", &e.minus_side, &e.plus_side));
            out.push(CheckRecord::identity(i, "Cor2.5", &e.minus_side, &oracle[e.j]));
        }
        out.push(CheckRecord::bound(i, "Thm5.1", &r.vol_diff, &r.vol_sum));
        let lab = decompose_difference(k, t, DiffMode::Sum)?;
        out.push(CheckRecord::identity(
            i,
            "Lem2.3",
            &lab.volume(),
            &lab.piece_volume_sum(),
        ));
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CountSpec;
    use crate::suites::{run_suite, SuiteName};

    fn cfg(suite: SuiteName, n: usize, count: usize) -> SuiteConfig {
        SuiteConfig {
            suite,
            n,
            count: CountSpec::Fixed(count),
            seed: 5,
            j: None,
        }
    }

    #[test]
    fn godbersen_equalities_pick_out_the_prepends() {
        let run = run_suite(&cfg(SuiteName::Godbersen, 3, 6)).unwrap();
        assert!(run.pass());
        assert_eq!(run.count, 8);
        assert_eq!(run.summary.equalities["Thm1.2"], vec![0]);
        // random bodies can legitimately be boxes (one dominating
        // generator), so the box prepend leads but need not be alone
        assert_eq!(run.summary.equalities["Thm1.2.lower"][0], 1);
    }

    #[test]
    fn saint_raymond_equalities_are_the_hanner_instances() {
        let run = run_suite(&cfg(SuiteName::SaintRaymond, 3, 6)).unwrap();
        assert!(run.pass());
        let tight = &run.summary.equalities["Thm4.1"];
        assert!(tight.contains(&0) && tight.contains(&1));
    }

    #[test]
    fn mixed_sr_with_and_without_a_fixed_index() {
        let mut c = cfg(SuiteName::MixedSr, 2, 2);
        c.j = Some(1);
        let run = run_suite(&c).unwrap();
        assert!(run.pass());
        // one Thm1.3 and one Thm1.3.full per pair
        assert_eq!(run.records.len(), 2 * run.count);

        let run = run_suite(&cfg(SuiteName::MixedSr, 2, 1)).unwrap();
        assert!(run.pass());
        assert_eq!(run.records.len(), 4 * run.count);
    }

    #[test]
    fn mahler_bound_is_tight_on_both_prepends() {
        let run = run_suite(&cfg(SuiteName::MahlerLocallyAb, 2, 4)).unwrap();
        assert!(run.pass());
        assert_eq!(run.summary.equalities["Cor4.2"], vec![0, 1]);
    }

    #[test]
    fn kleitman_passes_and_stays_deterministic() {
        let a = run_suite(&cfg(SuiteName::Kleitman, 2, 4)).unwrap();
        let b = run_suite(&cfg(SuiteName::Kleitman, 2, 4)).unwrap();
        assert!(a.pass());
        let ra = serde_json::to_string(&a.records).unwrap();
        let rb = serde_json::to_string(&b.records).unwrap();
        assert_eq!(ra, rb);
    }
}
