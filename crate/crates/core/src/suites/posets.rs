//! Suites over posets and two-dimensional posets: the chain polytope
//! volume identity, the extension-count product bounds with their
//! series-parallel equality structure, the section-count refinements, the
//! shape of section sequences, and the bridge from section counts to mixed
//! volumes.

use super::{error_record, finish, fixed_count, u128_rat, u64_rat, SuiteConfig};
use crate::corpus;
use crate::exec::run_indexed;
use crate::geom::mixed_volume_pair_all;
use crate::jsonio::{PermutationDto, PosetDto};
use crate::posets::{
    chain_polytope, count_linear_extensions, e_j_double, ej_sequence_props, sidorenko_suite,
    DoublePoset, Permutation, Poset,
};
use crate::rat::{binomial_rat, factorial_rat};
use crate::report::CheckRecord;
use crate::Result;

type Batch = Result<(usize, Vec<CheckRecord>)>;

fn over_double_posets<F>(cfg: &SuiteConfig, check: F) -> Batch
where
    F: Fn(usize, &DoublePoset) -> Result<Vec<CheckRecord>> + Sync + Send,
{
    let instances = corpus::double_poset_corpus(cfg.n, fixed_count(cfg), cfg.seed);
    let batches = run_indexed(instances.len(), |i| {
        let d = &instances[i];
        let records = check(i, d).unwrap_or_else(|e| error_record(i, &e));
        let witness = serde_json::json!({
            "p": PosetDto::from_poset(d.p()),
            "q": PosetDto::from_poset(d.q()),
        });
        Ok(finish(records, &witness))
    })?;
    Ok((instances.len(), batches.into_iter().flatten().collect()))
}

/// `n! Vol(C(P)) = e(P)`: the chain polytope volume against the extension
/// count from the ideal-lattice recursion.
pub(super) fn stanley_volume(cfg: &SuiteConfig) -> Batch {
    let posets = corpus::poset_corpus(cfg.n, fixed_count(cfg), cfg.seed);
    let n = cfg.n;
    let batches = run_indexed(posets.len(), |i| {
        let p = &posets[i];
        let records = stanley_one(i, n, p).unwrap_or_else(|e| error_record(i, &e));
        Ok(finish(records, &PosetDto::from_poset(p)))
    })?;
    Ok((posets.len(), batches.into_iter().flatten().collect()))
}

fn stanley_one(i: usize, n: usize, p: &Poset) -> Result<Vec<CheckRecord>> {
    let c = chain_polytope(p)?;
    let lhs = factorial_rat(n) * c.volume();
    let rhs = u64_rat(count_linear_extensions(p));
    Ok(vec![CheckRecord::identity(i, "Stanley", &lhs, &rhs)])
}

/// `e(P_π) e(P_π̄) >= n!` with equality exactly on series-parallel posets,
/// and the weak-order interval counts realizing both factors.
pub(super) fn sidorenko(cfg: &SuiteConfig) -> Batch {
    let perms = corpus::permutation_corpus(cfg.n, cfg.count, cfg.seed)?;
    let batches = run_indexed(perms.len(), |i| {
        let pi = &perms[i];
        let records = sidorenko_one(i, pi).unwrap_or_else(|e| error_record(i, &e));
        Ok(finish(records, &PermutationDto::from_permutation(pi)))
    })?;
    Ok((perms.len(), batches.into_iter().flatten().collect()))
}

fn sidorenko_one(i: usize, pi: &Permutation) -> Result<Vec<CheckRecord>> {
    let r = sidorenko_suite(pi, pi, 0)?;
    Ok(vec![
        CheckRecord::bound(i, "Thm6.1", &u128_rat(r.product), &u128_rat(r.factorial)),
        CheckRecord::agreement(i, "Thm6.1.eq", r.equality, r.series_parallel),
        CheckRecord::identity(i, "Thm6.1.weak", &u64_rat(r.weak_below), &u64_rat(r.extensions)),
        CheckRecord::identity(
            i,
            "Thm6.1.weak",
            &u64_rat(r.weak_above),
            &u64_rat(r.extensions_bar),
        ),
    ])
}

/// The section-count refinement
/// `e_j(P_π, P_σ) e_j(P_π̄, P_σ̄) >= n! C(n,j)`.
pub(super) fn mixed_sidorenko(cfg: &SuiteConfig) -> Batch {
    let pairs = corpus::permutation_pairs(cfg.n, cfg.count, cfg.seed)?;
    let js: Vec<usize> = match cfg.j {
        Some(j) => vec![j],
        None => (0..=cfg.n).collect(),
    };
    let batches = run_indexed(pairs.len(), |i| {
        let (pi, sigma) = &pairs[i];
        let records = mixed_sidorenko_one(i, pi, sigma, &js).unwrap_or_else(|e| error_record(i, &e));
        let witness = serde_json::json!({
            "pi": PermutationDto::from_permutation(pi),
            "sigma": PermutationDto::from_permutation(sigma),
        });
        Ok(finish(records, &witness))
    })?;
    Ok((pairs.len(), batches.into_iter().flatten().collect()))
}

fn mixed_sidorenko_one(
    i: usize,
    pi: &Permutation,
    sigma: &Permutation,
    js: &[usize],
) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::with_capacity(js.len());
    for &j in js {
        let r = sidorenko_suite(pi, sigma, j)?;
        out.push(CheckRecord::bound(
            i,
            "Thm6.3",
            &u128_rat(r.mixed_product),
            &u128_rat(r.mixed_bound),
        ));
    }
    Ok(out)
}

/// Shape of the section-count sequences: log-concavity for pairs and along
/// the diagonal, palindromicity on the diagonal, and the termwise bounds
/// `e(P) <= e_j(P, P) <= C(n,j) e(P)` with their antichain/chain equality
/// characterizations.
pub(super) fn logconcave(cfg: &SuiteConfig) -> Batch {
    over_double_posets(cfg, |i, d| {
        let n = d.n();
        let pair = ej_sequence_props(d);
        let diag = ej_sequence_props(&DoublePoset::new(d.p().clone(), d.p().clone())?);
        let mut out = Vec::new();
        for c in [&pair.coefficients, &diag.coefficients] {
            for j in 1..n {
                let lhs = u64_rat(c[j]) * u64_rat(c[j]);
                let rhs = u64_rat(c[j - 1]) * u64_rat(c[j + 1]);
                out.push(CheckRecord::bound(i, "LogConcave", &lhs, &rhs));
            }
        }
        for j in 0..=n / 2 {
            out.push(CheckRecord::identity(
                i,
                "Palindrome",
                &u64_rat(diag.coefficients[j]),
                &u64_rat(diag.coefficients[n - j]),
            ));
        }
        let e = u64_rat(diag.extensions);
        for (j, c) in diag.coefficients.iter().enumerate() {
            let c = u64_rat(*c);
            out.push(CheckRecord::bound(i, "EjBounds", &c, &e));
            out.push(CheckRecord::bound(i, "EjBounds", &(binomial_rat(n, j) * e.clone()), &c));
        }
        out.push(CheckRecord::agreement(
            i,
            "EjBounds.eq",
            diag.lower_equality_all,
            diag.is_antichain,
        ));
        out.push(CheckRecord::agreement(
            i,
            "EjBounds.eq",
            diag.upper_equality_all,
            diag.is_chain,
        ));
        Ok(out)
    })
}

/// `e_j(P, Q) = n! V(C(P)[j], -C(Q)[n-j])`: section counts are mixed
/// volumes of chain polytopes.
pub(super) fn bridge_ej_mixedvol(cfg: &SuiteConfig) -> Batch {
    over_double_posets(cfg, |i, d| {
        let n = d.n();
        let cp = chain_polytope(d.p())?;
        let cq = chain_polytope(d.q())?;
        let mixed = mixed_volume_pair_all(cp.polytope(), &cq.polytope().neg())?;
        let mut out = Vec::with_capacity(n + 1);
        for (j, m) in mixed.iter().enumerate() {
            let lhs = u64_rat(e_j_double(d, j)?);
            let rhs = factorial_rat(n) * m;
            out.push(CheckRecord::identity(i, "Thm6.3.bridge", &lhs, &rhs));
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::{run_suite, SuiteName};

    fn cfg(suite: SuiteName, n: usize, count: CountSpec) -> SuiteConfig {
        SuiteConfig {
            suite,
            n,
            count,
            seed: 8,
            j: None,
        }
    }

    #[test]
    fn stanley_records_everything_tight() {
        let run = run_suite(&cfg(SuiteName::StanleyVolume, 4, CountSpec::Fixed(10))).unwrap();
        assert!(run.pass());
        assert_eq!(run.count, 12);
        assert_eq!(run.summary.min_slack, "0");
    }

    #[test]
    fn sidorenko_over_all_of_s4() {
        let run = run_suite(&cfg(SuiteName::Sidorenko, 4, CountSpec::All)).unwrap();
        assert!(run.pass());
        assert_eq!(run.count, 24);
        // equality instances are exactly the series-parallel ones, and the
        // identity (instance 0) is among them
        assert!(run.summary.equalities["Thm6.1"].contains(&0));
    }

    #[test]
    fn mixed_sidorenko_with_a_fixed_section_index() {
        let mut c = cfg(SuiteName::MixedSidorenko, 3, CountSpec::All);
        c.j = Some(1);
        let run = run_suite(&c).unwrap();
        assert!(run.pass());
        assert_eq!(run.count, 36);
        assert_eq!(run.records.len(), 36);
    }

    #[test]
    fn sequence_and_bridge_suites_pass() {
        let run = run_suite(&cfg(SuiteName::LogConcave, 5, CountSpec::Fixed(6))).unwrap();
        assert!(run.pass());
        let eq = &run.summary.equalities["EjBounds"];
        assert!(eq.contains(&0) && eq.contains(&1));

        let run = run_suite(&cfg(SuiteName::BridgeEjMixedVol, 3, CountSpec::Fixed(4))).unwrap();
        assert!(run.pass());
        assert_eq!(run.summary.min_slack, "0");
    }
}
