//! Check suites: each one runs a family of statements over a seeded corpus
//! and emits one record per verified statement, in instance order. A config
//! problem is an error; a mathematical violation is a failing record.

mod bodies;
mod cayley;
mod cones;
mod posets;

use serde::Serialize;

use crate::corpus::CountSpec;
use crate::interval::Interval;
use crate::rat::{Int, Rat};
use crate::report::{summarize, CheckRecord, SuiteSummary};
use crate::{cbodies::CertStatus, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Godbersen,
    SaintRaymond,
    MixedSr,
    MahlerLocallyAb,
    CbodyPolar,
    CbodyVolume,
    Shadow,
    Steiner,
    Kleitman,
    ConeDissect,
    StanleyVolume,
    Sidorenko,
    MixedSidorenko,
    LogConcave,
    BridgeEjMixedVol,
}

pub const ALL_SUITES: [SuiteName; 15] = [
    SuiteName::Godbersen,
    SuiteName::SaintRaymond,
    SuiteName::MixedSr,
    SuiteName::MahlerLocallyAb,
    SuiteName::CbodyPolar,
    SuiteName::CbodyVolume,
    SuiteName::Shadow,
    SuiteName::Steiner,
    SuiteName::Kleitman,
    SuiteName::ConeDissect,
    SuiteName::StanleyVolume,
    SuiteName::Sidorenko,
    SuiteName::MixedSidorenko,
    SuiteName::LogConcave,
    SuiteName::BridgeEjMixedVol,
];

impl SuiteName {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Godbersen => "godbersen",
            SuiteName::SaintRaymond => "saint-raymond",
            SuiteName::MixedSr => "mixed-sr",
            SuiteName::MahlerLocallyAb => "mahler-locally-ab",
            SuiteName::CbodyPolar => "cbody-polar",
            SuiteName::CbodyVolume => "cbody-volume",
            SuiteName::Shadow => "shadow",
            SuiteName::Steiner => "steiner",
            SuiteName::Kleitman => "kleitman",
            SuiteName::ConeDissect => "cone-dissect",
            SuiteName::StanleyVolume => "stanley-volume",
            SuiteName::Sidorenko => "sidorenko",
            SuiteName::MixedSidorenko => "mixed-sidorenko",
            SuiteName::LogConcave => "logconcave",
            SuiteName::BridgeEjMixedVol => "bridge-ej-mixedvol",
        }
    }
}

impl std::str::FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteName> {
        ALL_SUITES
            .iter()
            .find(|name| name.as_str() == s)
            .copied()
            .ok_or_else(|| {
                let known: Vec<&str> = ALL_SUITES.iter().map(|n| n.as_str()).collect();
                Error::Config(format!(
                    "unknown suite {s:?}; expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub n: usize,
    pub count: CountSpec,
    pub seed: u64,
    /// Section index for the mixed refinement suites; all indices when
    /// absent.
    pub j: Option<usize>,
}

/// A finished run: the instance count is the number of instances actually
/// checked, prepended boundary cases included.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteRun {
    pub suite: String,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub j: Option<usize>,
    pub summary: SuiteSummary,
    pub records: Vec<CheckRecord>,
}

impl SuiteRun {
    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn summary_line(&self) -> String {
        self.summary.summary_line(&self.suite)
    }
}

fn dimension_range(suite: SuiteName) -> (usize, usize) {
    match suite {
        SuiteName::Godbersen => (2, 6),
        SuiteName::SaintRaymond | SuiteName::MahlerLocallyAb | SuiteName::Kleitman => (1, 6),
        SuiteName::MixedSr => (2, 4),
        SuiteName::CbodyPolar | SuiteName::CbodyVolume | SuiteName::Shadow => (1, 4),
        SuiteName::Steiner => (1, 5),
        SuiteName::ConeDissect => (1, usize::MAX),
        SuiteName::StanleyVolume => (1, 6),
        SuiteName::Sidorenko | SuiteName::MixedSidorenko => (1, 8),
        SuiteName::LogConcave => (1, 12),
        SuiteName::BridgeEjMixedVol => (1, 5),
    }
}

fn validate(cfg: &SuiteConfig) -> Result<()> {
    let name = cfg.suite.as_str();
    let (lo, hi) = dimension_range(cfg.suite);
    if cfg.suite != SuiteName::ConeDissect && (cfg.n < lo || cfg.n > hi) {
        return Err(Error::Config(format!(
            "suite {name} accepts n in {lo}..={hi}, got {}",
            cfg.n
        )));
    }
    let takes_all = matches!(
        cfg.suite,
        SuiteName::Sidorenko | SuiteName::MixedSidorenko
    );
    if cfg.count == CountSpec::All && !takes_all {
        return Err(Error::Config(format!(
            "count \"all\" enumerates permutations and only applies to the sidorenko suites, not {name}"
        )));
    }
    let takes_j = matches!(cfg.suite, SuiteName::MixedSr | SuiteName::MixedSidorenko);
    match cfg.j {
        Some(_) if !takes_j => Err(Error::Config(format!(
            "suite {name} does not take a section index"
        ))),
        Some(j) if j > cfg.n => Err(Error::Config(format!(
            "section index {j} exceeds the dimension {}",
            cfg.n
        ))),
        _ => Ok(()),
    }
}

fn fixed_count(cfg: &SuiteConfig) -> usize {
    match cfg.count {
        CountSpec::Fixed(c) => c,
        CountSpec::All => unreachable!("validated before dispatch"),
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteRun> {
    validate(cfg)?;
    let (count, records) = match cfg.suite {
        SuiteName::Godbersen => bodies::godbersen(cfg)?,
        SuiteName::SaintRaymond => bodies::saint_raymond(cfg)?,
        SuiteName::MixedSr => bodies::mixed_sr(cfg)?,
        SuiteName::MahlerLocallyAb => bodies::mahler_locally_ab(cfg)?,
        SuiteName::Kleitman => bodies::kleitman(cfg)?,
        SuiteName::CbodyPolar => cayley::cbody_polar(cfg)?,
        SuiteName::CbodyVolume => cayley::cbody_volume(cfg)?,
        SuiteName::Shadow => cayley::shadow(cfg)?,
        SuiteName::Steiner => cayley::steiner(cfg)?,
        SuiteName::ConeDissect => cones::cone_dissect(cfg)?,
        SuiteName::StanleyVolume => posets::stanley_volume(cfg)?,
        SuiteName::Sidorenko => posets::sidorenko(cfg)?,
        SuiteName::MixedSidorenko => posets::mixed_sidorenko(cfg)?,
        SuiteName::LogConcave => posets::logconcave(cfg)?,
        SuiteName::BridgeEjMixedVol => posets::bridge_ej_mixedvol(cfg)?,
    };
    let summary = summarize(&records);
    Ok(SuiteRun {
        suite: cfg.suite.as_str().to_string(),
        n: cfg.n,
        count,
        seed: cfg.seed,
        j: cfg.j,
        summary,
        records,
    })
}

fn u64_rat(x: u64) -> Rat {
    Rat::from_integer(Int::from(x))
}

fn u128_rat(x: u128) -> Rat {
    Rat::from_integer(Int::from(x))
}

/// Record for an exact quantity against an interval enclosure of an
/// irrational bound: the certified rational side of the enclosure goes on
/// the wire.
fn interval_bound_record(
    instance_id: usize,
    theorem: &str,
    lhs: &Rat,
    bound: &Interval,
    status: CertStatus,
) -> CheckRecord {
    match status {
        CertStatus::Holds => CheckRecord::bound(instance_id, theorem, lhs, bound.hi()),
        CertStatus::Fails => CheckRecord::bound(instance_id, theorem, lhs, bound.lo()),
        CertStatus::Unresolved => CheckRecord::failure(
            instance_id,
            theorem,
            "interval enclosure too wide to certify; raise the working precision",
        ),
    }
}

/// Fold an instance-level evaluation error into a failing record.
fn error_record(instance_id: usize, err: &Error) -> Vec<CheckRecord> {
    vec![CheckRecord::failure(instance_id, "error", &err.to_string())]
}

/// Attach the instance witness to whatever failed.
fn finish<W: Serialize>(mut records: Vec<CheckRecord>, witness: &W) -> Vec<CheckRecord> {
    if records.iter().any(|r| !r.passes()) {
        if let Ok(value) = serde_json::to_value(witness) {
            crate::report::attach_witness_on_failure(&mut records, &value);
        }
    }
    records
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in ALL_SUITES {
            let parsed: SuiteName = suite.as_str().parse().unwrap();
            assert_eq!(parsed, suite);
        }
        assert!("godbersen3".parse::<SuiteName>().is_err());
    }

    #[test]
    fn configs_are_validated() {
        let cfg = SuiteConfig {
            suite: SuiteName::Godbersen,
            n: 1,
            count: CountSpec::Fixed(1),
            seed: 0,
            j: None,
        };
        assert!(validate(&cfg).is_err());
        assert!(validate(&SuiteConfig { n: 3, ..cfg }).is_ok());
        assert!(validate(&SuiteConfig {
            count: CountSpec::All,
            n: 3,
            ..cfg
        })
        .is_err());
        assert!(validate(&SuiteConfig {
            j: Some(1),
            n: 3,
            ..cfg
        })
        .is_err());
        assert!(validate(&SuiteConfig {
            suite: SuiteName::MixedSidorenko,
            j: Some(4),
            n: 3,
            ..cfg
        })
        .is_err());
        assert!(validate(&SuiteConfig {
            suite: SuiteName::MixedSidorenko,
            j: Some(2),
            n: 3,
            ..cfg
        })
        .is_ok());
    }
}
