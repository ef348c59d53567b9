//! Command line harness: `abx gen` writes seeded instance corpora, and
//! `abx check` runs a verification suite and reports one record per checked
//! statement. Exit code 0 means every record passed, 2 means a mathematical
//! statement failed on some instance (the record carries a witness), and 1
//! means the invocation itself was unusable.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use abx_core::corpus::{self, CountSpec};
use abx_core::jsonio::{BodyDto, ConePairDto, Corpus, DifferenceDto, PermutationDto, PosetDto};
use abx_core::report::{render_csv, render_json};
use abx_core::suites::{run_suite, SuiteConfig, SuiteName};

#[derive(Parser)]
#[command(
    name = "abx",
    about = "Exact verification harness for anti-blocking body geometry",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded instance corpus as JSON.
    Gen {
        /// What to generate.
        #[arg(value_enum)]
        kind: GenKind,
        /// Ambient dimension or ground-set size. Ignored for cones, which
        /// come from the fixed registry.
        #[arg(long)]
        n: Option<usize>,
        /// Number of random instances on top of the mandatory ones, or
        /// "all" to enumerate every permutation.
        #[arg(long, default_value = "10")]
        count: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the corpus here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite over a seeded corpus.
    Check {
        /// Suite name, e.g. godbersen or stanley-volume.
        #[arg(long)]
        suite: String,
        /// Ambient dimension or ground-set size. Ignored by cone-dissect.
        #[arg(long)]
        n: Option<usize>,
        /// Number of random instances on top of the mandatory ones, or
        /// "all" for the permutation-backed suites.
        #[arg(long, default_value = "10")]
        count: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Section index for the mixed refinement suites; all indices when
        /// omitted.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here and the summary line to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Antiblocking,
    #[value(name = "locally_ab")]
    LocallyAb,
    Cone,
    Poset,
    Permutation,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    // usage problems are configuration errors, exit code 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen {
            kind,
            n,
            count,
            seed,
            out,
        } => gen(kind, n, &count, seed, out),
        Cmd::Check {
            suite,
            n,
            count,
            seed,
            j,
            format,
            out,
        } => check(&suite, n, &count, seed, j, format, out),
    }
}

fn require_n(n: Option<usize>) -> anyhow::Result<usize> {
    n.ok_or_else(|| anyhow!("--n is required here"))
}

fn fixed(count: CountSpec) -> anyhow::Result<usize> {
    match count {
        CountSpec::Fixed(c) => Ok(c),
        CountSpec::All => Err(anyhow!(
            "count \"all\" enumerates permutations and only applies to permutation corpora"
        )),
    }
}

fn gen(
    kind: GenKind,
    n: Option<usize>,
    count: &str,
    seed: u64,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let count: CountSpec = count.parse()?;
    let rendered = match kind {
        GenKind::Antiblocking => {
            let n = require_n(n)?;
            let bodies = corpus::antiblocking_corpus(n, fixed(count)?, seed)?;
            let instances: Vec<BodyDto> = bodies.iter().map(BodyDto::from_body).collect();
            wrap("antiblocking", n, seed, instances)?
        }
        GenKind::LocallyAb => {
            let n = require_n(n)?;
            let parents = corpus::difference_corpus(n, fixed(count)?, seed)?;
            let instances: Vec<DifferenceDto> = parents
                .iter()
                .map(|(k, t, mode)| DifferenceDto::new(k, t, *mode))
                .collect();
            wrap("locally_ab", n, seed, instances)?
        }
        GenKind::Cone => {
            let per_cone = fixed(count)?;
            let mut instances = Vec::new();
            for (idx, cone) in corpus::cone_registry().iter().enumerate() {
                for (k, l) in corpus::cone_pair_corpus(cone, per_cone, seed, idx as u64)? {
                    instances.push(ConePairDto::new(&k, &l));
                }
            }
            // each cone carries its own dimension
            wrap("cone", 0, seed, instances)?
        }
        GenKind::Poset => {
            let n = require_n(n)?;
            let posets = corpus::poset_corpus(n, fixed(count)?, seed);
            let instances: Vec<PosetDto> = posets.iter().map(PosetDto::from_poset).collect();
            wrap("poset", n, seed, instances)?
        }
        GenKind::Permutation => {
            let n = require_n(n)?;
            let perms = corpus::permutation_corpus(n, count, seed)?;
            let instances: Vec<PermutationDto> =
                perms.iter().map(PermutationDto::from_permutation).collect();
            wrap("permutation", n, seed, instances)?
        }
    };
    match out {
        Some(path) => {
            std::fs::write(&path, &rendered)
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn wrap<T: serde::Serialize>(
    kind: &str,
    n: usize,
    seed: u64,
    instances: Vec<T>,
) -> anyhow::Result<String> {
    let corpus = Corpus {
        kind: kind.to_string(),
        n,
        count: instances.len(),
        seed,
        instances,
    };
    Ok(render_json(&corpus)?)
}

fn check(
    suite: &str,
    n: Option<usize>,
    count: &str,
    seed: u64,
    j: Option<usize>,
    format: Format,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let suite: SuiteName = suite.parse()?;
    let n = match n {
        Some(n) => n,
        // cone-dissect draws its geometry from the cone registry
        None if suite == SuiteName::ConeDissect => 0,
        None => return Err(anyhow!("--n is required for suite {}", suite.as_str())),
    };
    let cfg = SuiteConfig {
        suite,
        n,
        count: count.parse()?,
        seed,
        j,
    };
    let run = run_suite(&cfg)?;
    let rendered = match format {
        Format::Json => render_json(&run)?,
        Format::Csv => render_csv(&run.records)?,
    };
    let summary = run.summary_line();
    match out {
        Some(path) => {
            std::fs::write(&path, &rendered)
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{rendered}");
            eprintln!("{summary}");
        }
    }
    Ok(ExitCode::from(if run.pass() { 0 } else { 2 }))
}
