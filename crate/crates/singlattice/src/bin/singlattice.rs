//! Command-line front end. Deterministic `key = value` output.
//!
//! Exit codes: 0 ok / condition holds, 1 condition fails, 2 parse error,
//! 3 invalid graph, 4 precondition violated, 5 internal invariant violated.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use singlattice::bounds::{
    ac_bound, almost_cone_profile, br_bound_report, elliptic_sequence, lambda_exact,
    restricted_b, vanishing_condition, zariski_formula, AlmostCone, ConditionMode,
};
use singlattice::corpus::run_corpus;
use singlattice::error::Error;
use singlattice::graph::{Cycle, ResolutionGraph, Validation};
use singlattice::lattice::{ccc_decompose, enumerate_b, fundamental_cycle, genus_invariants,
    minimal_model};
use singlattice::parse::parse_document;
use singlattice::verify::run_battery;

#[derive(Parser)]
#[command(name = "singlattice", version, about = "Exact invariants of weighted resolution graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental invariants of the graph in FILE
    Invariants { file: String },
    /// Fundamental cycle, optionally on a vertex subset
    Zf {
        file: String,
        /// comma-separated vertex ids
        #[arg(long)]
        support: Option<String>,
    },
    /// The chain-connected cycles, optionally restricted by a named cycle
    B {
        file: String,
        /// keep only members pairing nonzero with this cycle
        #[arg(long = "restrict-to")]
        restrict_to: Option<String>,
    },
    /// Chain-connected component decomposition of a named cycle
    Ccc {
        file: String,
        #[arg(long)]
        cycle: String,
    },
    /// Minimal model of a named cycle
    Mc {
        file: String,
        #[arg(long)]
        cycle: String,
    },
    /// Decide a vanishing condition for a named cycle
    Condition {
        file: String,
        #[arg(long)]
        l: String,
        #[arg(long)]
        mode: String,
    },
    /// Exact lambda of a named anti-nef cycle
    Lambda {
        file: String,
        #[arg(long)]
        ideal: String,
    },
    /// All applicable reduction-number bounds
    Bounds {
        file: String,
        #[arg(long)]
        ideal: String,
        /// externally supplied geometric genus
        #[arg(long)]
        pg: Option<BigInt>,
        /// lower bound for the gonality of the central curve
        #[arg(long, default_value = "2")]
        gonality: BigInt,
    },
    /// Almost-cone profile detection
    AlmostCone { file: String },
    /// Elliptic sequence, optionally on a vertex subset
    EllipticSeq {
        file: String,
        #[arg(long)]
        support: Option<String>,
    },
    /// Reduction number of the maximal ideal of a cyclic-quotient-style pair
    Zariski { a: BigInt, b: BigInt },
    /// Run every brute-force cross-check on FILE's graph
    Verify { file: String },
    /// Run all bundled examples and check their frozen expectations
    Corpus,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Validation(_) => 3,
        Error::Precondition(_) => 4,
        Error::GraphMismatch | Error::InvariantViolation(_) => 5,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(&e))
}

fn load(path: &str) -> Result<(ResolutionGraph, BTreeMap<String, Cycle>), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read {path}: {e}"),
    })?;
    let doc = parse_document(&text)?;
    match doc.graph.validate() {
        Validation::Ok => Ok((doc.graph, doc.cycles)),
        Validation::Invalid(msg) => Err(Error::Validation(msg)),
    }
}

/// Resolves a cycle name: declared cycles first, then the special names Zf
/// and -Zf for the fundamental cycle and its negation.
fn named_cycle(
    g: &ResolutionGraph,
    cycles: &BTreeMap<String, Cycle>,
    name: &str,
) -> Result<Cycle, Error> {
    if let Some(c) = cycles.get(name) {
        return Ok(c.clone());
    }
    let all: Vec<usize> = (0..g.len()).collect();
    match name {
        "Zf" => fundamental_cycle(g, &all),
        "-Zf" => Ok(fundamental_cycle(g, &all)?.neg()),
        _ => Err(Error::Precondition(format!(
            "no cycle named {name:?} in the input (declared: {})",
            cycles
                .keys()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn parse_support(g: &ResolutionGraph, spec: &str) -> Result<Vec<usize>, Error> {
    let mut out = Vec::new();
    for id in spec.split(',') {
        let id = id.trim();
        let i = g
            .vertex_index(id)
            .ok_or_else(|| Error::Precondition(format!("unknown vertex id {id:?}")))?;
        out.push(i);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Invariants { file } => {
            let (g, _) = load(&file)?;
            let inv = genus_invariants(&g)?;
            println!("negative_definite = yes");
            println!("p_f = {}", inv.p_f);
            println!("p_a = {}", inv.p_a);
            println!("p_a_witness = {}", inv.pa_witness.display(&g));
            println!("Z_f = {}", inv.z_f.display(&g));
        }
        Command::Zf { file, support } => {
            let (g, _) = load(&file)?;
            let s = match support {
                Some(spec) => parse_support(&g, &spec)?,
                None => (0..g.len()).collect(),
            };
            let z = fundamental_cycle(&g, &s)?;
            println!("Z_f = {}", z.display(&g));
        }
        Command::B { file, restrict_to } => {
            let (g, cycles) = load(&file)?;
            let members: Vec<Cycle> = match restrict_to {
                Some(name) => {
                    let l = named_cycle(&g, &cycles, &name)?;
                    restricted_b(&g, &l)?
                }
                None => enumerate_b(&g)?.members().to_vec(),
            };
            println!("count = {}", members.len());
            for c in &members {
                println!("member = {}", c.display(&g));
            }
        }
        Command::Ccc { file, cycle } => {
            let (g, cycles) = load(&file)?;
            let d = named_cycle(&g, &cycles, &cycle)?;
            let dec = ccc_decompose(&g, &d)?;
            println!("parts = {}", dec.parts.len());
            for (i, (m, p)) in dec.parts.iter().enumerate() {
                println!("part_{}_multiplicity = {}", i + 1, m);
                println!("part_{} = {}", i + 1, p.display(&g));
            }
            println!("used_fallback = {}", dec.used_fallback);
        }
        Command::Mc { file, cycle } => {
            let (g, cycles) = load(&file)?;
            let d = named_cycle(&g, &cycles, &cycle)?;
            let mc = minimal_model(&g, &d)?;
            println!("mc = {}", mc.display(&g));
        }
        Command::Condition { file, l, mode } => {
            let (g, cycles) = load(&file)?;
            let lc = named_cycle(&g, &cycles, &l)?;
            let mode = ConditionMode::from_name(&mode).ok_or_else(|| {
                Error::Precondition(format!(
                    "unknown mode {mode:?} (expected rohr, exact, remark1 or remark2)"
                ))
            })?;
            let v = vanishing_condition(&g, &lc, mode)?;
            println!("mode = {}", v.mode.name());
            println!("holds = {}", v.holds);
            println!("margin = {}", v.margin);
            if let Some(w) = &v.witness {
                println!("witness = {}", w.display(&g));
            }
            if !v.holds {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Lambda { file, ideal } => {
            let (g, cycles) = load(&file)?;
            let z = named_cycle(&g, &cycles, &ideal)?;
            let lam = lambda_exact(&g, &z)?;
            println!("lambda = {}", lam.value);
            println!("witness_c1 = {}", lam.witness.0.display(&g));
            println!("witness_c2 = {}", lam.witness.1.display(&g));
        }
        Command::Bounds {
            file,
            ideal,
            pg,
            gonality,
        } => {
            let (g, cycles) = load(&file)?;
            let z = named_cycle(&g, &cycles, &ideal)?;
            let report = br_bound_report(&g, Some(&z), pg.as_ref(), &gonality)?;
            for b in &report.bounds {
                println!("{} = {}", b.label, b.value);
                println!("{}_source = {}", b.label, b.source);
                println!("{}_witness = {}", b.label, b.witness);
            }
            println!("best = {}", report.best);
        }
        Command::AlmostCone { file } => {
            let (g, _) = load(&file)?;
            match almost_cone_profile(&g)? {
                AlmostCone::Profile(p) => {
                    println!("almost_cone = yes");
                    println!("central = {}", p.central);
                    println!("genus_g = {}", p.genus_g);
                    println!("degree_d = {}", p.degree_d);
                    println!("delta = {}", p.delta);
                    let global = ac_bound(&g, None, &BigInt::from(2))?;
                    println!("global_bound = {}", global.bound);
                }
                AlmostCone::Not { reason } => {
                    println!("almost_cone = no");
                    println!("reason = {reason}");
                }
            }
        }
        Command::EllipticSeq { file, support } => {
            let (g, _) = load(&file)?;
            let s = support.map(|spec| parse_support(&g, &spec)).transpose()?;
            let seq = elliptic_sequence(&g, s.as_deref())?;
            println!("length = {}", seq.len());
            for (i, z) in seq.iter().enumerate() {
                println!("Z_{} = {}", i, z.display(&g));
            }
        }
        Command::Zariski { a, b } => {
            println!("br_m = {}", zariski_formula(&a, &b)?);
        }
        Command::Verify { file } => {
            let (g, _) = load(&file)?;
            let max_points: u64 = match std::env::var("SINGLATTICE_MAX_BOX") {
                Ok(v) => v.parse().map_err(|_| {
                    Error::Precondition(format!("SINGLATTICE_MAX_BOX is not an integer: {v:?}"))
                })?,
                Err(_) => 1_000_000,
            };
            let outcomes = run_battery(&g, max_points)?;
            let mut all = true;
            for o in &outcomes {
                all &= o.pass;
                println!(
                    "{} = {} ({})",
                    o.name,
                    if o.pass { "pass" } else { "fail" },
                    o.detail
                );
            }
            if !all {
                return Err(Error::InvariantViolation(
                    "verification battery reported failures".into(),
                ));
            }
        }
        Command::Corpus => {
            let (reports, all_pass) = run_corpus()?;
            for r in &reports {
                for c in &r.checks {
                    println!(
                        "{} {} = {} (expected {}) {}",
                        r.name,
                        c.quantity,
                        c.actual,
                        c.expected,
                        if c.pass { "pass" } else { "fail" }
                    );
                }
            }
            if !all_pass {
                return Err(Error::InvariantViolation(
                    "corpus expectations failed".into(),
                ));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}
