//! Dissection suite over the fixed family of home cones: piece volumes,
//! disjoint covering, mixed volumes against the oracle, the down-set
//! extension identity, and point batches certifying the metric projection
//! decomposition and the conjugate-face dissection of space.

use num_traits::Zero;

use super::{error_record, finish, fixed_count, u64_rat, SuiteConfig};
use crate::antiblocking::DiffMode;
use crate::coneab::{
    cone_dissect as dissect, nearest_point, space_dissection_witness, CABBody, PolyhedralCone,
};
use crate::corpus::{self, SALT_POINTS};
use crate::exec::run_indexed;
use crate::jsonio::{point_strings, ConeDto, ConePairDto};
use crate::report::CheckRecord;
use crate::Result;

const BATCH_POINTS: usize = 1000;

pub(super) fn cone_dissect(cfg: &SuiteConfig) -> Result<(usize, Vec<CheckRecord>)> {
    let count = fixed_count(cfg);
    let registry = corpus::cone_registry();
    let mut pairs: Vec<(CABBody, CABBody)> = Vec::new();
    for (idx, cone) in registry.iter().enumerate() {
        pairs.extend(corpus::cone_pair_corpus(cone, count, cfg.seed, idx as u64)?);
    }
    let total_pairs = pairs.len();

    let batches = run_indexed(total_pairs, |i| {
        let (k, l) = &pairs[i];
        let records = dissect_one(i, k, l).unwrap_or_else(|e| error_record(i, &e));
        Ok(finish(records, &ConePairDto::new(k, l)))
    })?;
    let mut records: Vec<CheckRecord> = batches.into_iter().flatten().collect();

    let point_batches = run_indexed(registry.len(), |c| {
        Ok(point_batch(total_pairs + c, c, &registry[c], cfg.seed))
    })?;
    records.extend(point_batches.into_iter().flatten());
    Ok((total_pairs + registry.len(), records))
}

fn dissect_one(i: usize, k: &CABBody, l: &CABBody) -> Result<Vec<CheckRecord>> {
    let sum = dissect(k, l, DiffMode::Sum)?;
    let hull = dissect(k, l, DiffMode::Hull)?;
    let mut out = vec![
        CheckRecord::identity(i, "Thm7.7.vol", &sum.total_volume, &sum.piece_volume_sum),
        CheckRecord::identity(i, "Thm7.7.hull", &hull.total_volume, &hull.piece_volume_sum),
        CheckRecord::set(
            i,
            "Thm7.7.cover",
            sum.additive
                && sum.overlaps_lower_dimensional
                && hull.additive
                && hull.overlaps_lower_dimensional,
        ),
    ];
    for (j, m) in sum.mixed_volumes.iter().enumerate() {
        out.push(CheckRecord::identity(i, "Thm7.7.mixed", m, &sum.mixed_oracle[j]));
    }
    out.push(CheckRecord::set(i, "Cor7.hat", sum.hat_identity));
    Ok(out)
}

/// One batch of random ambient points per cone: every point must decompose
/// as projection minus dual remainder, and must land in the conjugate-face
/// dissection, uniquely when generic.
fn point_batch(id: usize, cone_idx: usize, cone: &PolyhedralCone, seed: u64) -> Vec<CheckRecord> {
    let mut rng = corpus::stream(seed, SALT_POINTS, cone_idx);
    let mut projection_ok = 0u64;
    let mut dissection_ok = 0u64;
    let mut failing = Vec::new();
    for _ in 0..BATCH_POINTS {
        let p = corpus::random_signed_point(cone.dim(), &mut rng);
        let mut bad = false;

        match nearest_point(cone, &p) {
            Ok(r) => {
                let s = r.sub(&p);
                if cone.contains(&r) && cone.dual_contains(&s) && s.dot(&r).is_zero() {
                    projection_ok += 1;
                } else {
                    bad = true;
                }
            }
            Err(_) => bad = true,
        }

        match space_dissection_witness(cone, &p) {
            Ok(w) => {
                if w.matches.contains(&w.face) && (!w.generic || w.unique) {
                    dissection_ok += 1;
                } else {
                    bad = true;
                }
            }
            Err(_) => bad = true,
        }

        if bad && failing.len() < 5 {
            failing.push(point_strings(&p));
        }
    }
    let total = u64_rat(BATCH_POINTS as u64);
    let records = vec![
        CheckRecord::identity(id, "Cor7.5", &u64_rat(projection_ok), &total),
        CheckRecord::identity(id, "Lem7.4", &u64_rat(dissection_ok), &total),
    ];
    let witness = serde_json::json!({
        "cone": ConeDto::from_cone(cone),
        "failing_points": failing,
    });
    finish(records, &witness)
}

#[cfg(test)]
mod tests {
    use crate::corpus::CountSpec;
    use crate::suites::{run_suite, SuiteConfig, SuiteName};

    #[test]
    fn dissection_suite_passes_over_the_registry() {
        let run = run_suite(&SuiteConfig {
            suite: SuiteName::ConeDissect,
            n: 0,
            count: CountSpec::Fixed(1),
            seed: 3,
            j: None,
        })
        .unwrap();
        assert!(run.pass());
        // three cones, two pairs each, plus one point batch per cone
        assert_eq!(run.count, 9);
        let batch_records: Vec<_> = run
            .records
            .iter()
            .filter(|r| r.theorem == "Cor7.5" || r.theorem == "Lem7.4")
            .collect();
        assert_eq!(batch_records.len(), 6);
        assert!(batch_records.iter().all(|r| r.instance_id >= 6));
    }
}
