//! Command-line front end: parse instances, run the deciders, emit
//! self-checked certificates, generate seeded instances, and run the
//! verification harness.
//!
//! Exit codes are a stable contract: 0 = YES/success, 1 = NO (negative
//! decision or property violation), 2 = usage, parse, or precondition error.

mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hypermatch::json::{
    self, dual_certificate_json, hypergraph_json, labeling_json, lifted_instance_json,
    matching_json, order_certificate_json, Instance,
};
use hypermatch::model::materialize;
use hypermatch::simplex::{build_system, check_dual_certificate};
use hypermatch::{
    compute_r_sequence, construct_matching_orderable, find_elimination_order,
    find_separating_labeling, is_perfect_matching, lift_to_k, three_partition_to_geq,
    verify_elimination_order, Hypergraph, Labeling, LiftOutcome, RecognitionOutcome, Separability,
    ThreePartitionOutcome, VertexRole,
};

use report::RunReport;

#[derive(Parser)]
#[command(
    name = "hypermatch",
    version,
    about = "Deciders, reductions, and verification for perfect matchings in orderable and separable k-hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print a machine-readable run report to stdout instead of prose.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a hypergraph is orderable; emits a verified
    /// elimination-order certificate on YES.
    CheckOrderable { path: PathBuf },
    /// Decide whether a hypergraph is separable; emits an integer labeling
    /// on YES and an infeasibility certificate on NO.
    CheckSeparable { path: PathBuf },
    /// Decide perfect matching for an orderable hypergraph via the
    /// r-sequence; optionally emits the matching.
    Match {
        path: PathBuf,
        /// Also emit the constructed perfect matching.
        #[arg(long)]
        certificate: bool,
    },
    /// Instance maps between 3-partition and separable matching.
    Reduce {
        #[command(subcommand)]
        kind: ReduceCommand,
    },
    /// Generate seeded instances.
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
    },
    /// Run the cross-oracle property suites.
    Verify {
        suite: Suite,
        /// Randomized trials per property.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory for counterexample dumps.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Map a 3-partition labeling to the nonnegative-sum instance, or report
    /// a decided NO.
    ThreePartition {
        path: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Lift a 3-hypergraph labeling instance to edge cardinality K.
    Lift {
        #[arg(long)]
        k: usize,
        path: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// A random orderable hypergraph from a role sequence.
    Orderable {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Probability that a position is dominating.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Explicit role string such as DDIDI (D = dominating), overriding
        /// the random draw.
        #[arg(long)]
        roles: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// A random labeling instance.
    Labeling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        range: i64,
        #[command(flatten)]
        out: OutArg,
    },
    /// A random 3-partition instance on 3m vertices with zero total.
    ThreePartition {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        range: i64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the emitted instance to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Orderable,
    Separable,
    Reductions,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::CheckOrderable { path } => cmd_check_orderable(path, cli.json),
        Command::CheckSeparable { path } => cmd_check_separable(path, cli.json),
        Command::Match { path, certificate } => cmd_match(path, *certificate, cli.json),
        Command::Reduce { kind } => match kind {
            ReduceCommand::ThreePartition { path, out } => {
                cmd_reduce_three_partition(path, out, cli.json)
            }
            ReduceCommand::Lift { k, path, out } => cmd_reduce_lift(path, *k, out, cli.json),
        },
        Command::Gen { kind } => cmd_gen(kind),
        Command::Verify {
            suite,
            trials,
            seed,
            out,
        } => verify::run_suites(*suite, *trials, *seed, out),
    }
}

fn load_hypergraph(path: &PathBuf) -> anyhow::Result<(Hypergraph, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = report::digest(&bytes);
    let text = String::from_utf8(bytes).context("instance files are UTF-8 JSON")?;
    match json::parse_instance(&text)? {
        Instance::Hypergraph(h) => Ok((h, digest)),
        other => Err(anyhow!(
            "{} holds a {} instance, expected a hypergraph",
            path.display(),
            other.kind()
        )),
    }
}

fn load_labeling(path: &PathBuf) -> anyhow::Result<(Labeling, String)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = report::digest(&bytes);
    let text = String::from_utf8(bytes).context("instance files are UTF-8 JSON")?;
    match json::parse_instance(&text)? {
        Instance::Labeling(l) => Ok((l, digest)),
        other => Err(anyhow!(
            "{} holds a {} instance, expected a labeling",
            path.display(),
            other.kind()
        )),
    }
}

fn emit(out: &OutArg, payload: &str) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, format!("{payload}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => println!("{payload}"),
    }
    Ok(())
}

fn cmd_check_orderable(path: &PathBuf, as_json: bool) -> anyhow::Result<u8> {
    let start = Instant::now();
    let (h, digest) = load_hypergraph(path)?;
    let rec = find_elimination_order(&h);
    let mut rep = RunReport::new("check-orderable", digest);
    rep.membership_tests = Some(rec.membership_tests);
    match rec.outcome {
        RecognitionOutcome::Orderable(order) => {
            let (ok, _) = verify_elimination_order(&h, &order);
            anyhow::ensure!(
                ok,
                "internal: recognizer emitted an order the checker rejects"
            );
            let cert = order_certificate_json(&order);
            rep.finish_yes(serde_json::from_str(&cert)?, start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("orderable: yes ({} membership tests)", rec.membership_tests);
                println!("{cert}");
            }
            Ok(0)
        }
        RecognitionOutcome::NotOrderable { stuck } => {
            rep.finish_no(start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!(
                    "orderable: no (no eligible vertex among {stuck:?}; {} membership tests)",
                    rec.membership_tests
                );
            }
            Ok(1)
        }
    }
}

fn cmd_check_separable(path: &PathBuf, as_json: bool) -> anyhow::Result<u8> {
    let start = Instant::now();
    let (h, digest) = load_hypergraph(path)?;
    let mut rep = RunReport::new("check-separable", digest);
    match find_separating_labeling(&h)? {
        Separability::Separable(lab) => {
            // Independent re-check before emitting.
            anyhow::ensure!(
                materialize(&lab)? == h,
                "internal: labeling does not materialize back to the input"
            );
            let cert = labeling_json(&lab);
            rep.finish_yes(serde_json::from_str(&cert)?, start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("separable: yes");
                println!("{cert}");
            }
            Ok(0)
        }
        Separability::NotSeparable(cert) => {
            let sys = build_system(&h)?;
            anyhow::ensure!(
                check_dual_certificate(&sys, &cert.multipliers),
                "internal: infeasibility certificate failed validation"
            );
            let cert_json = dual_certificate_json(&cert);
            rep.decision = "no".into();
            rep.certificate = Some(serde_json::from_str(&cert_json)?);
            rep.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("separable: no");
                println!("{cert_json}");
            }
            Ok(1)
        }
    }
}

fn cmd_match(path: &PathBuf, certificate: bool, as_json: bool) -> anyhow::Result<u8> {
    let start = Instant::now();
    let (h, digest) = load_hypergraph(path)?;
    let rec = find_elimination_order(&h);
    let mut rep = RunReport::new("match", digest);
    rep.membership_tests = Some(rec.membership_tests);
    let order = match rec.outcome {
        RecognitionOutcome::Orderable(o) => o,
        RecognitionOutcome::NotOrderable { stuck } => {
            return Err(anyhow!(
                "hypergraph is not orderable (no eligible vertex among {stuck:?}); \
                 the r-sequence criterion does not apply"
            ));
        }
    };
    let rseq = compute_r_sequence(&order, h.k());
    rep.r_sequence = Some(rseq.values().to_vec());
    let divisible = h.k() != 0 && h.n() % h.k() == 0;
    let decision = divisible && rseq.all_nonnegative();

    if decision {
        if certificate {
            let m = construct_matching_orderable(&h)?
                .expect("criterion accepted, construction must succeed");
            anyhow::ensure!(
                is_perfect_matching(&h, &m),
                "internal: constructed matching failed re-validation"
            );
            let cert = matching_json(h.k(), h.n(), &m);
            rep.finish_yes(serde_json::from_str(&cert)?, start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("perfect matching: yes");
                println!("r-sequence: {:?}", rseq.values());
                println!("{cert}");
            }
        } else {
            // The r-sequence itself is the YES certificate here; it was
            // computed from an order the checker accepted.
            rep.finish_yes(serde_json::json!({ "r_sequence": rseq.values() }), start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("perfect matching: yes");
                println!("r-sequence: {:?}", rseq.values());
            }
        }
        Ok(0)
    } else {
        rep.finish_no(start);
        if as_json {
            println!("{}", rep.to_json());
        } else {
            if !divisible {
                println!("perfect matching: no ({} does not divide {})", h.k(), h.n());
            } else {
                println!("perfect matching: no (some r_j is negative)");
            }
            println!("r-sequence: {:?}", rseq.values());
        }
        Ok(1)
    }
}

fn cmd_reduce_three_partition(path: &PathBuf, out: &OutArg, as_json: bool) -> anyhow::Result<u8> {
    let start = Instant::now();
    let (lab, digest) = load_labeling(path)?;
    let mut rep = RunReport::new("reduce three-partition", digest);
    match three_partition_to_geq(&lab)? {
        ThreePartitionOutcome::Geq(instance) => {
            let payload = labeling_json(&instance);
            rep.finish_yes(serde_json::from_str(&payload)?, start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                emit(out, &payload)?;
            }
            Ok(0)
        }
        ThreePartitionOutcome::NoMatching(reason) => {
            rep.finish_no(start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("no perfect matching: {reason}");
            }
            Ok(1)
        }
    }
}

fn cmd_reduce_lift(path: &PathBuf, k: usize, out: &OutArg, as_json: bool) -> anyhow::Result<u8> {
    let start = Instant::now();
    let (lab, digest) = load_labeling(path)?;
    let mut rep = RunReport::new("reduce lift", digest);
    match lift_to_k(&lab, k)? {
        LiftOutcome::Lifted(lift) => {
            let payload = lifted_instance_json(&lift);
            rep.finish_yes(serde_json::from_str(&payload)?, start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                emit(out, &payload)?;
            }
            Ok(0)
        }
        LiftOutcome::NoMatching(reason) => {
            rep.finish_no(start);
            if as_json {
                println!("{}", rep.to_json());
            } else {
                println!("no perfect matching: {reason}");
            }
            Ok(1)
        }
    }
}

fn parse_roles(s: &str) -> anyhow::Result<Vec<VertexRole>> {
    s.chars()
        .map(|c| match c {
            'D' | 'd' => Ok(VertexRole::Dominating),
            'I' | 'i' => Ok(VertexRole::Isolating),
            other => Err(anyhow!("role string admits only D and I, found {other:?}")),
        })
        .collect()
}

fn cmd_gen(kind: &GenCommand) -> anyhow::Result<u8> {
    use rand::SeedableRng;
    match kind {
        GenCommand::Orderable {
            n,
            k,
            seed,
            p,
            roles,
            out,
        } => {
            let roles = match roles {
                Some(s) => {
                    let parsed = parse_roles(s)?;
                    anyhow::ensure!(
                        parsed.len() == *n,
                        "role string has {} entries, expected n = {n}",
                        parsed.len()
                    );
                    parsed
                }
                None => {
                    anyhow::ensure!(
                        (0.0..=1.0).contains(p),
                        "probability must lie in [0,1], got {p}"
                    );
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
                    hypermatch::gen::random_roles(*n, *k, *p, &mut rng)
                }
            };
            let h = hypermatch::gen::orderable_from_roles(&roles, *k)?;
            emit(out, &hypergraph_json(&h))?;
            Ok(0)
        }
        GenCommand::Labeling {
            n,
            k,
            seed,
            range,
            out,
        } => {
            anyhow::ensure!(*range >= 0, "range must be nonnegative");
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let lab = hypermatch::gen::random_labeling(*n, *k, *range, &mut rng)?;
            emit(out, &labeling_json(&lab))?;
            Ok(0)
        }
        GenCommand::ThreePartition {
            m,
            seed,
            range,
            out,
        } => {
            anyhow::ensure!(*range >= 0, "range must be nonnegative");
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let lab = hypermatch::gen::random_three_partition(*m, *range, &mut rng)?;
            emit(out, &labeling_json(&lab))?;
            Ok(0)
        }
    }
}
