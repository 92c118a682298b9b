//! trefoil: exact commutative-algebra computations, claim verification and
//! randomized stress testing from one command line.
//!
//! Exit codes: 0 all checks pass, 1 an assertion or bound was violated,
//! 2 usage or parse errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use trefoil_core::{
    free_resolution, link, parse, CompleteIntersectionWitness, FieldSpec, Ideal, MonomialOrder,
    PolyRing,
};
use trefoil_harness::claims::{self, RunOptions};
use trefoil_harness::stress::{self, Family, TrialConfig};

#[derive(Parser)]
#[command(name = "trefoil", version, about = "exact commutative algebra: Groebner bases, resolutions, linkage, claim verification, stress testing")]
struct Cli {
    /// Output mode: `text` for humans, `json-lines` for machines.
    #[arg(long, global = true, default_value = "text")]
    output: String,
    /// Parallelism for claim and trial execution (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IdealInput {
    /// Ideal file (ring declaration plus `let` bindings).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Binding name to use from --file (defaults to the last binding).
    #[arg(long)]
    name: Option<String>,
    /// Inline comma-separated generators, e.g. "x^3,y^3".
    #[arg(long)]
    ideal: Option<String>,
    /// Ring for --ideal, e.g. "char=32003 vars=[x,y] order=grevlex";
    /// inferred from the generators when omitted.
    #[arg(long)]
    ring: Option<String>,
    /// Characteristic override (0 = rationals). Also honors TREFOIL_CHAR.
    #[arg(long = "char")]
    characteristic: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Run claim files and report each assertion.
    Verify {
        files: Vec<PathBuf>,
        /// Only run claims whose id contains this substring.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long = "char")]
        characteristic: Option<u32>,
        /// Base seed for witness searches inside unmixed/link.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the Betti/Hilbert Euler cross-check on bound ideals.
        #[arg(long)]
        check_euler: bool,
    },
    /// Random cubic triples: sample, compute invariants, assert the bounds.
    Stress {
        #[arg(long, default_value_t = 6)]
        vars: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// uniform | pinned | shared-factor | primary-pencil
        #[arg(long, default_value = "uniform")]
        family: String,
        #[arg(long = "char", default_value_t = trefoil_core::DEFAULT_PRIME)]
        characteristic: u32,
        #[arg(long, default_value_t = 0.25)]
        density: f64,
        /// Per-trial time budget in seconds.
        #[arg(long, default_value_t = 10)]
        budget_secs: u64,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// Dump generators for every trial, not just violations.
        #[arg(long)]
        dump_gens: bool,
    },
    /// Reduced Groebner basis of an ideal.
    Gb(IdealInput),
    /// Normal form of a polynomial modulo an ideal.
    Nf {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        input: IdealInput,
    },
    /// Dimension, height, multiplicity, Hilbert data, pd, depth, Betti table.
    Invariants(IdealInput),
    /// Minimal graded free resolution and Betti table.
    Res(IdealInput),
    /// Ideal quotient input : other.
    Colon {
        #[command(flatten)]
        input: IdealInput,
        /// Second ideal: binding name (with --file) or inline generators.
        #[arg(long)]
        other: String,
    },
    /// Intersection of two ideals.
    Intersect {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long)]
        other: String,
    },
    /// Link ci : input by a complete intersection `ci` inside `input`.
    Link {
        #[command(flatten)]
        input: IdealInput,
        /// Complete intersection generators (binding name or inline list).
        #[arg(long)]
        ci: String,
    },
    /// Unmixed part via double linkage.
    Unmixed {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout is a closed pipe (e.g. `trefoil ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let json = match cli.output.as_str() {
        "text" => false,
        "json-lines" => true,
        other => {
            eprintln!("unknown output mode '{other}' (expected text or json-lines)");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, json) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Ok(true) = success, Ok(false) = assertions/bounds violated, Err = usage.
fn run(cmd: Command, json: bool) -> anyhow::Result<bool> {
    match cmd {
        Command::Verify {
            files,
            filter,
            characteristic,
            seed,
            check_euler,
        } => cmd_verify(files, filter, characteristic, seed, check_euler, json),
        Command::Stress {
            vars,
            trials,
            seed,
            family,
            characteristic,
            density,
            budget_secs,
            out,
            dump_gens,
        } => cmd_stress(
            vars, trials, seed, family, characteristic, density, budget_secs, out, dump_gens, json,
        ),
        Command::Gb(input) => {
            let (_, ideal) = load_single(&input)?;
            let gb = ideal.groebner_basis()?;
            if json {
                for (i, g) in gb.elements().iter().enumerate() {
                    println!(
                        "{}",
                        json!({"kind": "gb-element", "index": i, "poly": trefoil_core::format(g)})
                    );
                }
            } else {
                println!("reduced Groebner basis ({} elements):", gb.elements().len());
                for g in gb.elements() {
                    println!("  {}", trefoil_core::format(g));
                }
            }
            Ok(true)
        }
        Command::Nf { poly, input } => {
            let (ring, ideal) = load_single(&input)?;
            let p = parse(&poly, &ring)?;
            let nf = ideal.groebner_basis()?.reduce(&p)?;
            if json {
                println!(
                    "{}",
                    json!({"kind": "normal-form", "poly": poly,
                           "normal_form": trefoil_core::format(&nf), "member": nf.is_zero()})
                );
            } else {
                println!("{}", trefoil_core::format(&nf));
            }
            Ok(true)
        }
        Command::Invariants(input) => {
            let (_, ideal) = load_single(&input)?;
            let dim = ideal.dim()?;
            let ht = ideal.height()?;
            let unit = ideal.is_unit_ideal()?;
            let (e, pd, depth, cm) = if unit {
                (None, None, None, None)
            } else {
                (
                    Some(ideal.multiplicity()?),
                    Some(ideal.pd()?),
                    Some(ideal.depth()?),
                    Some(ideal.is_cm()?),
                )
            };
            if json {
                println!(
                    "{}",
                    json!({"kind": "invariants", "dim": dim, "height": ht, "multiplicity": e,
                           "pd": pd, "depth": depth, "cm": cm,
                           "hilbert_numerator": ideal.hilbert_series()?.numerator(),
                           "betti": betti_triples(&ideal)?})
                );
            } else {
                println!("dim(R/I)    = {dim}");
                println!("height      = {ht}");
                match (e, pd, depth, cm) {
                    (Some(e), Some(pd), Some(depth), Some(cm)) => {
                        println!("e(R/I)      = {e}");
                        println!("pd(R/I)     = {pd}");
                        println!("depth(R/I)  = {depth}");
                        println!("CM          = {cm}");
                        println!("Betti table:\n{}", ideal.betti()?.render());
                    }
                    _ => println!("unit ideal: R/I = 0"),
                }
            }
            Ok(true)
        }
        Command::Res(input) => {
            let (_, ideal) = load_single(&input)?;
            let (complex, betti) = free_resolution(&ideal)?;
            if json {
                println!(
                    "{}",
                    json!({"kind": "resolution", "pd": betti.pd(),
                           "betti": betti_triples(&ideal)?, "minimal": complex.is_minimal()})
                );
            } else {
                println!("minimal free resolution, pd = {}", betti.pd());
                for (i, module) in complex.modules().iter().enumerate() {
                    println!("  F{i}: rank {} twists {:?}", module.rank(), module.twists);
                }
                println!("{}", betti.render());
            }
            Ok(true)
        }
        Command::Colon { input, other } => {
            let (ring, lhs, env) = load_with_env(&input)?;
            let rhs = resolve_ideal(&ring, &env, &other)?;
            print_ideal(&lhs.colon(&rhs)?, "colon", json);
            Ok(true)
        }
        Command::Intersect { input, other } => {
            let (ring, lhs, env) = load_with_env(&input)?;
            let rhs = resolve_ideal(&ring, &env, &other)?;
            print_ideal(&lhs.intersect(&rhs)?, "intersect", json);
            Ok(true)
        }
        Command::Link { input, ci } => {
            let (ring, target, env) = load_with_env(&input)?;
            let c = resolve_ideal(&ring, &env, &ci)?;
            let witness = CompleteIntersectionWitness {
                gens: c.generators().to_vec(),
                verified: false,
            };
            let rec = link(&witness, &target)?;
            if rec.degenerate && !json {
                println!("degenerate link (J = C): result is the unit ideal");
            }
            print_ideal(&rec.link, "link", json);
            Ok(true)
        }
        Command::Unmixed { input, seed } => {
            let (_, ideal) = load_single(&input)?;
            let un = ideal.unmixed_part(None, seed)?;
            print_ideal(&un, "unmixed", json);
            Ok(true)
        }
    }
}

fn betti_triples(ideal: &Ideal) -> anyhow::Result<Vec<(usize, u32, usize)>> {
    Ok(ideal
        .betti()?
        .entries()
        .iter()
        .map(|(&(i, j), &r)| (i, j, r))
        .collect())
}

fn print_ideal(ideal: &Ideal, kind: &str, json: bool) {
    if json {
        let gens: Vec<String> = ideal
            .generators()
            .iter()
            .map(trefoil_core::format)
            .collect();
        println!("{}", json!({"kind": kind, "generators": gens}));
    } else {
        println!("{ideal}");
    }
}

fn default_characteristic(explicit: Option<u32>) -> anyhow::Result<u32> {
    if let Some(c) = explicit {
        return Ok(c);
    }
    match std::env::var("TREFOIL_CHAR") {
        Ok(v) => v
            .parse()
            .map_err(|_| anyhow::anyhow!("bad TREFOIL_CHAR value {v:?}")),
        Err(_) => Ok(trefoil_core::DEFAULT_PRIME),
    }
}

/// Loads the primary ideal from --file/--name or --ideal/--ring.
fn load_single(input: &IdealInput) -> anyhow::Result<(PolyRing, Ideal)> {
    let (ring, ideal, _) = load_with_env(input)?;
    Ok((ring, ideal))
}

fn load_with_env(
    input: &IdealInput,
) -> anyhow::Result<(PolyRing, Ideal, BTreeMap<String, Ideal>)> {
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
        let file = claims::parse_ideal_file(&text)?;
        let characteristic = match input.characteristic {
            Some(c) => Some(c),
            None => std::env::var("TREFOIL_CHAR")
                .ok()
                .map(|v| v.parse())
                .transpose()
                .map_err(|_| anyhow::anyhow!("bad TREFOIL_CHAR value"))?,
        };
        let (ring, env) = claims::eval_ideal_file(&file, characteristic, 0)?;
        let name = match &input.name {
            Some(n) => n.clone(),
            None => file
                .bindings
                .last()
                .map(|(n, _)| n.clone())
                .ok_or_else(|| anyhow::anyhow!("ideal file has no bindings"))?,
        };
        let ideal = env
            .get(&name)
            .cloned()
            .ok_or_else(|| anyhow::anyhow!("no binding named '{name}' in {}", path.display()))?;
        return Ok((ring, ideal, env));
    }
    let gens_text = input
        .ideal
        .as_deref()
        .ok_or_else(|| anyhow::anyhow!("provide --file or --ideal"))?;
    let ring = build_inline_ring(input, gens_text)?;
    let gens = gens_text
        .split(',')
        .map(|g| parse(g.trim(), &ring))
        .collect::<Result<Vec<_>, _>>()?;
    let ideal = Ideal::new(&ring, gens)?;
    Ok((ring, ideal, BTreeMap::new()))
}

fn build_inline_ring(input: &IdealInput, gens_text: &str) -> anyhow::Result<PolyRing> {
    if let Some(spec) = &input.ring {
        // Reuse the claim-file ring grammar: "char=.. vars=[..] order=grevlex".
        let decl = claims::parse_ideal_file(&format!("ring {spec}\n"))?.ring;
        return Ok(claims::build_ring(&decl, input.characteristic)?);
    }
    // Infer variables from the generator text, in order of first occurrence.
    let mut vars: Vec<String> = Vec::new();
    let mut current = String::new();
    for c in gens_text.chars() {
        if c.is_alphanumeric() || c == '_' {
            current.push(c);
        } else {
            note_ident(&mut vars, &current);
            current.clear();
        }
    }
    note_ident(&mut vars, &current);
    if vars.is_empty() {
        anyhow::bail!("could not infer any variables from the generators; pass --ring");
    }
    let ch = default_characteristic(input.characteristic)?;
    Ok(PolyRing::new(
        vars,
        FieldSpec::from_char(ch)?,
        MonomialOrder::GrevLex,
    )?)
}

fn note_ident(vars: &mut Vec<String>, token: &str) {
    if token.is_empty() || !token.chars().next().unwrap().is_alphabetic() {
        return;
    }
    if !vars.iter().any(|v| v == token) {
        vars.push(token.to_string());
    }
}

fn resolve_ideal(
    ring: &PolyRing,
    env: &BTreeMap<String, Ideal>,
    spec: &str,
) -> anyhow::Result<Ideal> {
    if let Some(found) = env.get(spec.trim()) {
        return Ok(found.clone());
    }
    let gens = spec
        .split(',')
        .map(|g| parse(g.trim(), ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(ring, gens)?)
}

fn cmd_verify(
    files: Vec<PathBuf>,
    filter: Option<String>,
    characteristic: Option<u32>,
    seed: u64,
    check_euler: bool,
    json: bool,
) -> anyhow::Result<bool> {
    if files.is_empty() {
        anyhow::bail!("verify needs at least one claim file");
    }
    let opts = RunOptions {
        characteristic,
        check_euler,
        seed,
        filter,
    };
    let mut all_pass = true;
    let mut total = 0usize;
    let mut failed = 0usize;
    for path in &files {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
        let file = claims::parse_claims(&text)?;
        let results = claims::run_all(&file, &opts);
        for r in &results {
            if !json {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!(
                    "claim {:<18} [{status}] ({} ms) {}",
                    r.id, r.elapsed_ms, r.locus
                );
            }
            for o in &r.outcomes {
                total += 1;
                if !o.pass {
                    failed += 1;
                    all_pass = false;
                }
                if json {
                    println!(
                        "{}",
                        json!({"kind": "assertion", "claim": r.id, "index": o.index,
                               "assertion": o.text, "pass": o.pass, "witness": o.witness})
                    );
                } else if o.pass {
                    println!("  ok   {} ({})", o.text, o.witness);
                } else {
                    println!("  FAIL {} -- {}", o.text, o.witness);
                }
            }
            for msg in &r.euler_failures {
                all_pass = false;
                failed += 1;
                if json {
                    println!(
                        "{}",
                        json!({"kind": "euler-check", "claim": r.id, "pass": false, "witness": msg})
                    );
                } else {
                    println!("  FAIL euler cross-check -- {msg}");
                }
            }
        }
    }
    if !json {
        println!(
            "{} assertions, {} failed: {}",
            total,
            failed,
            if all_pass { "PASS" } else { "FAIL" }
        );
    }
    Ok(all_pass)
}

#[allow(clippy::too_many_arguments)]
fn cmd_stress(
    vars: usize,
    trials: usize,
    seed: u64,
    family: String,
    characteristic: u32,
    density: f64,
    budget_secs: u64,
    out: PathBuf,
    dump_gens: bool,
    json: bool,
) -> anyhow::Result<bool> {
    let family = Family::parse(&family).ok_or_else(|| {
        anyhow::anyhow!("unknown family '{family}' (uniform, pinned, shared-factor, primary-pencil)")
    })?;
    if !(0.0..=1.0).contains(&density) || density == 0.0 {
        anyhow::bail!("density must lie in (0, 1]");
    }
    let mut config = TrialConfig::new(vars, trials, seed)?;
    config.field_char = characteristic;
    config.density = density;
    config.budget = Duration::from_secs(budget_secs);
    config.family = family;

    let (records, violations) = stress::run_trials(&config)?;
    stress::write_csv(&records, &out)?;
    let gens_path = out.with_extension("gens.txt");
    stress::write_generators(&records, &gens_path, !dump_gens)?;

    if json {
        for r in &records {
            println!(
                "{}",
                json!({"kind": "trial", "trial": r.trial, "seed": r.seed, "ht": r.ht,
                       "e": r.e, "pd": r.pd, "depth": r.depth,
                       "verdict": r.verdict.to_string(), "elapsed_ms": r.elapsed_ms})
            );
        }
    } else {
        let mut ok = 0;
        let mut skipped = 0;
        let mut timeouts = 0;
        for r in &records {
            match r.verdict {
                stress::Verdict::Ok => ok += 1,
                stress::Verdict::SkippedHeight => skipped += 1,
                stress::Verdict::Timeout => timeouts += 1,
                stress::Verdict::BoundViolation(_) => {}
            }
        }
        println!(
            "{} trials ({} family): {ok} ok, {skipped} skipped (height < 2), {timeouts} timeouts, {} violations",
            records.len(),
            config.family.name(),
            violations.len()
        );
        println!("records: {}", out.display());
        for v in &violations {
            println!("VIOLATION trial {}: {}", v.trial, v.message);
            for g in &v.generators {
                println!("  {g}");
            }
        }
    }
    Ok(violations.is_empty())
}
