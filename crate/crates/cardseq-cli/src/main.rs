//! `cardseq`: interval trees, orbits, condition validation, amalgamation
//! and cardinal-sequence calculations from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use cardseq::amalgam::generate::Shape;
use cardseq::amalgam::{amalgamate, validate_certificate, verify_amalgam};
use cardseq::finspace::{toy_good_space, toy_plan};
use cardseq::orbits::{basic_orbit, extended_orbit};
use cardseq::ordinal::Ordinal;
use cardseq::sequence::{plan_universal_subspace, CardinalSequence, SymbolicCardinal};
use cardseq_cli::config::RunConfig;
use cardseq_cli::fuzz::{self, FuzzKind, FuzzParams};
use cardseq_cli::report::Report;
use cardseq_cli::{example22, parse_ordinal, pipeline, read_json, tree_for, write_json};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "cardseq",
    about = "symbolic ordinal intervals, orbits, forcing conditions and cardinal sequences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of the human-readable table.
    #[arg(long, global = true)]
    json: bool,
    /// Interval-tree depth guard.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
}

#[derive(Args)]
struct DeltaArg {
    /// Tree root δ, in ordinal text syntax (e.g. "w2^2 + 1").
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Locate I(α, n), n(α), and the limit interval (j, J).
    Intervals {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Basic or extended orbit of ζ.
    Orbit {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        extended: bool,
        /// How many elements to list.
        #[arg(long, default_value_t = 8)]
        take: usize,
    },
    /// Validate a condition file against (P1)-(P6).
    Validate { file: PathBuf },
    /// Add a point below an existing one and revalidate.
    Extend {
        file: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a certificate, amalgamate it, verify the result.
    Amalgamate {
        file: PathBuf,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Certificate campaign: generate, amalgamate and verify across seeds,
    /// plus the corruption-detection suite.
    FuzzAmalgam {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long)]
        seeds: Option<usize>,
        /// Shape as "k,f,l0,lp,d,m".
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        mutations: usize,
    },
    /// Property fuzzing for one subsystem.
    Fuzz {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long, value_enum)]
        kind: FuzzKind,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for counterexample artifacts.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Cardinal-sequence operations.
    Seq {
        #[command(subcommand)]
        cmd: SeqCommand,
    },
    /// Finite-space toys and exports.
    Finspace {
        #[command(subcommand)]
        cmd: FinCommand,
    },
    /// Golden self-check of the worked tree over ω₂·ω₂ + 1.
    Example22 {
        #[command(flatten)]
        delta: DeltaArg,
        /// Test hook: shift the expected enumeration, which must fail.
        #[arg(long, hide = true)]
        perturb_ladder: bool,
    },
    /// Run a scripted validate → extend → amalgamate → verify file.
    Pipeline { file: PathBuf },
}

#[derive(Subcommand)]
enum SeqCommand {
    /// Decide membership in D_λ.
    CheckD {
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "w1")]
        lambda: String,
    },
    /// Decompose into decreasing D_λ pieces.
    Decompose {
        #[arg(long)]
        seq: String,
    },
    /// Selection plan carving the target out of a good space over δ.
    Plan {
        #[command(flatten)]
        delta: DeltaArg,
        #[arg(long)]
        seq: String,
    },
}

#[derive(Subcommand)]
enum FinCommand {
    /// Build a toy good space and optionally extract a target sequence.
    Toy {
        #[arg(long, default_value_t = 3)]
        heights: usize,
        #[arg(long, default_value_t = 2)]
        y: usize,
        #[arg(long, default_value_t = 4)]
        yz: usize,
        /// Comma-separated block bases.
        #[arg(long, default_value = "1")]
        zetas: String,
        /// Target level sizes, comma separated, to extract and compare.
        #[arg(long)]
        extract: Option<String>,
        /// Write a GraphViz rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_shape(s: &str) -> Result<Shape> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| anyhow!("bad shape component {p:?}")))
        .collect::<Result<_>>()?;
    if parts.len() != 6 {
        return Err(anyhow!("shape must be k,f,l0,lp,d,m"));
    }
    Ok(Shape {
        kernel: parts[0],
        f: parts[1],
        l0: parts[2],
        l_plus: parts[3],
        d: parts[4],
        m: parts[5],
    })
}

fn emit<T: Serialize>(json: bool, value: &T, human: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serialises"));
    } else {
        print!("{human}");
    }
}

fn finish(report: Report, json: bool) -> ExitCode {
    print!("{}", report.render(json));
    ExitCode::from(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = RunConfig::from_env()?;
    let max_depth = config.max_depth_or(cli.max_depth);
    let json = cli.json;
    match cli.command {
        Command::Intervals { delta, alpha, level } => {
            let delta = parse_ordinal(&config.delta_or(delta.delta.as_deref()))?;
            let tree = tree_for(&delta, max_depth)?;
            let alpha = parse_ordinal(&alpha)?;
            let interval = tree.locate(&alpha, level).map_err(|e| anyhow!("{e}"))?;
            let n_alpha = tree.first_level(&alpha).map_err(|e| anyhow!("{e}"))?;
            let limit = if alpha.is_limit() {
                Some(tree.limit_interval(&alpha).map_err(|e| anyhow!("{e}"))?)
            } else {
                None
            };
            #[derive(Serialize)]
            struct Out {
                interval: cardseq::Interval,
                n_alpha: usize,
                j: Option<usize>,
                #[serde(rename = "J")]
                big_j: Option<cardseq::Interval>,
            }
            let out = Out {
                interval: interval.clone(),
                n_alpha,
                j: limit.as_ref().map(|(j, _)| *j),
                big_j: limit.as_ref().map(|(_, i)| i.clone()),
            };
            let mut human = format!("I({alpha}, {level}) = {interval}\nn({alpha}) = {n_alpha}\n");
            if let Some((j, big_j)) = &limit {
                human.push_str(&format!("j({alpha}) = {j}, J({alpha}) = {big_j}\n"));
            }
            emit(json, &out, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { delta, zeta, extended, take } => {
            let delta = parse_ordinal(&config.delta_or(delta.delta.as_deref()))?;
            let tree = tree_for(&delta, max_depth)?;
            let zeta = parse_ordinal(&zeta)?;
            let orbit = if extended {
                extended_orbit(&tree, &zeta)
            } else {
                basic_orbit(&tree, &zeta)
            }
            .map_err(|e| anyhow!("{e}"))?;
            let elements = orbit.enumerate(take);
            #[derive(Serialize)]
            struct Out {
                zeta: Ordinal,
                extended: bool,
                first_elements: Vec<Ordinal>,
                descriptor: cardseq::OrdinalSet,
            }
            let human = format!(
                "{}({zeta}) ⊇ {{{}{}}}\n",
                if extended { "ext-o" } else { "o" },
                elements.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "),
                if elements.len() == take { ", …" } else { "" },
            );
            emit(json, &Out { zeta, extended, first_elements: elements, descriptor: orbit }, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { file } => {
            let input: cardseq_cli::ConditionFile = read_json(&file)?;
            let tree = tree_for(&input.delta, max_depth)?;
            let validation = input.condition.validate(&tree);
            let mut report = Report::default();
            report.check("condition", validation.is_valid(), format!("{validation}"));
            Ok(finish(report, json))
        }
        Command::Extend { file, x, alpha, out } => {
            let input: cardseq_cli::ConditionFile = read_json(&file)?;
            let tree = tree_for(&input.delta, max_depth)?;
            let alpha = parse_ordinal(&alpha)?;
            let added = input
                .condition
                .add_point_below(x, &alpha, &tree)
                .map_err(|e| anyhow!("{e}"))?;
            let validation = added.condition.validate(&tree);
            let mut report = Report::default();
            report.check(
                "extend",
                validation.is_valid() && added.condition.extends(&input.condition),
                format!("added {} points; {validation}", added.added.len()),
            );
            if let Some(path) = out {
                write_json(
                    &path,
                    &cardseq_cli::ConditionFile { delta: input.delta, condition: added.condition },
                )?;
            }
            Ok(finish(report, json))
        }
        Command::Amalgamate { file, emit_trace } => {
            let input: cardseq_cli::CertificateFile = read_json(&file)?;
            let tree = tree_for(&input.delta, max_depth)?;
            let mut report = Report::default();
            let validation = validate_certificate(&input.certificate, &tree);
            report.check("certificate", validation.is_valid(), format!("{validation}"));
            if validation.is_valid() {
                match amalgamate(&input.certificate, &tree) {
                    Ok(trace) => {
                        report.check("amalgamate", true, format!("|A_r| = {}", trace.r.len()));
                        let verdict = verify_amalgam(&input.certificate, &trace, &tree);
                        report.check("verify", verdict.is_valid(), format!("{verdict}"));
                        if let Some(path) = emit_trace {
                            write_json(&path, &trace_json(&input.delta, &trace))?;
                        }
                    }
                    Err(e) => report.check("amalgamate", false, format!("{e}")),
                }
            }
            Ok(finish(report, json))
        }
        Command::FuzzAmalgam { delta, seeds, shape, seed, mutations } => {
            let delta = parse_ordinal(&config.delta_or(delta.delta.as_deref()))?;
            let tree = tree_for(&delta, max_depth)?;
            let trials = config.trials_or(seeds);
            let shape = match shape {
                Some(s) => parse_shape(&s)?,
                None => Shape::covering(),
            };
            let params = FuzzParams { trials, seed, shape, out_dir: None };
            let (mut report, _) = fuzz::run(FuzzKind::Amalgam, &tree, &params);
            if mutations > 0 {
                let mrep = fuzz::run_mutations(&tree, &shape, mutations, seed);
                for c in mrep.checks {
                    report.checks.push(c);
                }
            }
            Ok(finish(report, json))
        }
        Command::Fuzz { delta, kind, trials, seed, out_dir } => {
            let delta = parse_ordinal(&config.delta_or(delta.delta.as_deref()))?;
            let tree = tree_for(&delta, max_depth)?;
            let params = FuzzParams {
                trials: config.trials_or(trials),
                seed: config.seed_or(seed),
                shape: Shape::covering(),
                out_dir,
            };
            let (report, outcome) = fuzz::run(kind, &tree, &params);
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome)?);
                return Ok(ExitCode::from(u8::from(outcome.failures > 0)));
            }
            Ok(finish(report, json))
        }
        Command::Seq { cmd } => run_seq(cmd, &config, json),
        Command::Finspace { cmd } => run_finspace(cmd, json),
        Command::Example22 { delta, perturb_ladder } => {
            let delta = parse_ordinal(&config.delta_or(delta.delta.as_deref()))?;
            let report = example22::run(&delta, perturb_ladder);
            Ok(finish(report, json))
        }
        Command::Pipeline { file } => {
            let spec: pipeline::Pipeline = read_json(&file)?;
            let report = pipeline::run(&spec, max_depth)?;
            Ok(finish(report, json))
        }
    }
}

fn run_seq(cmd: SeqCommand, config: &RunConfig, json: bool) -> Result<ExitCode> {
    match cmd {
        SeqCommand::CheckD { seq, lambda } => {
            let f: CardinalSequence = seq.parse().map_err(|e| anyhow!("{e}"))?;
            let lambda: SymbolicCardinal = lambda.parse().map_err(|e| anyhow!("{e}"))?;
            let result = f.in_d(lambda).map_err(|e| anyhow!("{e}"))?;
            #[derive(Serialize)]
            struct Out {
                seq: String,
                lambda: SymbolicCardinal,
                in_d: bool,
            }
            emit(
                json,
                &Out { seq: f.to_string(), lambda, in_d: result },
                format!("{f} ∈ D_{lambda}: {result}\n"),
            );
            Ok(ExitCode::from(u8::from(!result)))
        }
        SeqCommand::Decompose { seq } => {
            let f: CardinalSequence = seq.parse().map_err(|e| anyhow!("{e}"))?;
            let decomposition = f.decompose();
            #[derive(Serialize)]
            struct Out {
                seq: String,
                pieces: Option<Vec<(SymbolicCardinal, String)>>,
            }
            let pieces = decomposition
                .as_ref()
                .map(|d| d.iter().map(|(l, p)| (*l, p.to_string())).collect::<Vec<_>>());
            let human = match &pieces {
                Some(pieces) => {
                    let mut s = format!("{f} decomposes into {} piece(s):\n", pieces.len());
                    for (l, p) in pieces {
                        s.push_str(&format!("  D_{l}: {p}\n"));
                    }
                    s
                }
                None => format!("{f} admits no decreasing decomposition\n"),
            };
            let found = pieces.is_some();
            emit(json, &Out { seq: f.to_string(), pieces }, human);
            Ok(ExitCode::from(u8::from(!found)))
        }
        SeqCommand::Plan { delta, seq } => {
            let delta = parse_ordinal(&config.delta_or(delta.delta.as_deref()))?;
            let f: CardinalSequence = seq.parse().map_err(|e| anyhow!("{e}"))?;
            let plan = plan_universal_subspace(&delta, &f).map_err(|e| anyhow!("{e}"))?;
            let mut human = format!("plan for {f} over [0, {delta}):\n");
            for (zeta, f_zeta) in &plan.entries {
                human.push_str(&format!("  open Y_{zeta} through level {f_zeta}\n"));
            }
            human.push_str(&format!("reconstructed: {}\n", plan.reconstructed));
            emit(json, &plan, human);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_finspace(cmd: FinCommand, json: bool) -> Result<ExitCode> {
    match cmd {
        FinCommand::Toy { heights, y, yz, zetas, extract, dot } => {
            let zetas: std::collections::BTreeSet<usize> = zetas
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|_| anyhow!("bad zeta {s:?}")))
                .collect::<Result<_>>()?;
            let toy = toy_good_space(heights, (y, yz), &zetas).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::default();
            report.check(
                "toy space",
                true,
                format!("{} points, SEQ(X) = {:?}", toy.space.len(), toy.space.seq()),
            );
            if let Some(target) = extract {
                let target: Vec<usize> = target
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| anyhow!("bad level {s:?}")))
                    .collect::<Result<_>>()?;
                let plan = toy_plan(&target, (y, yz)).map_err(|e| anyhow!("{e}"))?;
                let z = toy.extract(&plan).map_err(|e| anyhow!("{e}"))?;
                report.check(
                    "extract",
                    z.seq() == target,
                    format!("target {target:?}, got {:?}", z.seq()),
                );
            }
            if let Some(path) = dot {
                std::fs::write(&path, toy.space.to_dot("toy"))?;
                report.check("dot", true, format!("wrote {}", path.display()));
            }
            Ok(finish(report, json))
        }
    }
}

/// A serialisable view of the amalgamation trace.
fn trace_json(delta: &Ordinal, trace: &cardseq::amalgam::AmalgamTrace) -> serde_json::Value {
    let rel_edges = |rel: &cardseq::condition::Rel| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..rel.len() {
            for j in 0..rel.len() {
                if i != j && rel.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    };
    serde_json::json!({
        "delta": delta,
        "z0": trace.z0,
        "z": trace.z,
        "sigma1": trace.sigma1,
        "sigma2": trace.sigma2,
        "gammas": trace.gammas,
        "rank": trace.rank,
        "betas": trace.betas.iter().collect::<Vec<_>>(),
        "y_of": trace.y_of,
        "u_of": trace.u_of,
        "uq_of": trace.uq_of,
        "origins": trace.origins,
        "relations": {
            "pq": rel_edges(&trace.relations.pq),
            "r1p": rel_edges(&trace.relations.r1p),
            "r1q": rel_edges(&trace.relations.r1q),
            "r2": rel_edges(&trace.relations.r2),
            "r3p": rel_edges(&trace.relations.r3p),
            "r3q": rel_edges(&trace.relations.r3q),
            "r4p": rel_edges(&trace.relations.r4p),
            "r4q": rel_edges(&trace.relations.r4q),
            "r5p": rel_edges(&trace.relations.r5p),
            "r5q": rel_edges(&trace.relations.r5q),
        },
        "r": trace.r,
    })
}
