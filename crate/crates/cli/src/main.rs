//! Command-line surface for evaluating mechanisms, querying the
//! brute-force oracle, exhaustive strategyproofness checking, worst-case
//! ratio sweeps, lower-bound table searches and the analytic bound suite.
//!
//! Data output goes to stdout (or `--out`); it is byte-identical across
//! runs for identical inputs and flags. Sweeps write CSV rows as data and
//! keep their summary on stderr so downstream tooling sees clean CSV.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use duoloc::mechanisms::MechanismId;
use duoloc::oracle::{fmne_ratio_term_max, optimal_cost};
use duoloc::verify::{
    check_mc_pair_bound, check_mc_triple_bound, check_sc_bound, check_strategyproof,
    ratio_sweep_with, search_tables, verify_table, EmptyNodes, InstanceFamily, MaxRatio,
    PrefDomain, ProfileFamily, SpViolation, TableSearchResult,
};
use duoloc::{agent_cost, max_cost, social_cost, LineInstance, Objective, Rational};

#[derive(Parser)]
#[command(
    name = "duoloc",
    version,
    about = "Two-facility location mechanisms on discrete lines: evaluation, oracles and exhaustive verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a mechanism on an instance file and print the cost breakdown
    Eval(EvalArgs),
    /// Brute-force optimum of an objective on an instance file
    Opt(OptArgs),
    /// Search for profitable misreports, exhaustively or on one instance
    SpCheck(SpCheckArgs),
    /// Worst-case approximation ratio over an enumerated family
    Sweep(SweepArgs),
    /// Search for mechanism tables beating a ratio bound on a profile family
    Lowerbound(LowerboundArgs),
    /// Check the analytic cost bounds against the brute-force oracle
    Lemmas(LemmasArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    /// Instance file (JSON)
    #[arg(long)]
    instance: PathBuf,
    /// Mechanism id: fmne | pd3 | alr:<alpha> | alr:auto | two-extremes
    #[arg(long)]
    mechanism: String,
    /// Admit agents that approve neither facility
    #[arg(long)]
    allow_empty_prefs: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Objective: sc | mc
    #[arg(long)]
    objective: Objective,
    #[arg(long)]
    allow_empty_prefs: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpCheckArgs {
    #[arg(long)]
    mechanism: String,
    /// Check a single instance file instead of an enumerated family
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Largest line size of the enumerated family
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    /// Largest agent count (defaults to the line size)
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    allow_empty_prefs: bool,
    /// Exit nonzero if any violation is found
    #[arg(long)]
    expect_none: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    mechanism: String,
    #[arg(long)]
    objective: Objective,
    #[arg(long)]
    m_max: u32,
    #[arg(long, default_value_t = 2)]
    m_min: u32,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long)]
    n_max: Option<usize>,
    /// Empty-node constraint: any | none | some
    #[arg(long, default_value = "any")]
    empty_nodes: String,
    #[arg(long)]
    allow_empty_prefs: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LowerboundArgs {
    #[arg(long)]
    objective: Objective,
    /// Ratio cap, e.g. 2 or 4/3
    #[arg(long)]
    bound: String,
    /// Shared agent positions of the profile family
    #[arg(long, default_value = "1,2,3", value_delimiter = ',')]
    positions: Vec<u32>,
    /// Line size (defaults to the last position)
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    allow_empty_prefs: bool,
    /// Require table entries to beat the cap strictly (the default)
    #[arg(long, conflicts_with = "non_strict")]
    strict: bool,
    /// Require table entries to meet the cap weakly instead of strictly
    #[arg(long)]
    non_strict: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LemmasArgs {
    /// Largest line size for the instance-family checks
    #[arg(long, default_value_t = 7)]
    m_max: u32,
    /// Grid cap for the ratio-term sweep
    #[arg(long, default_value_t = 200)]
    grid_cap: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Opt(args) => cmd_opt(args),
        Command::SpCheck(args) => cmd_sp_check(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Lowerbound(args) => cmd_lowerbound(args),
        Command::Lemmas(args) => cmd_lemmas(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn load_instance(path: &PathBuf, allow_empty_prefs: bool) -> Result<LineInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let instance: LineInstance =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if !allow_empty_prefs && instance.has_empty_prefs() {
        bail!(
            "{}: an agent approves neither facility, which the default domain \
             forbids (pass --allow-empty-prefs to widen it)",
            path.display()
        );
    }
    Ok(instance)
}

fn parse_mechanism(id: &str) -> Result<MechanismId> {
    MechanismId::from_str(id).map_err(|e| anyhow::anyhow!("{e}"))
}

fn parse_bound(text: &str) -> Result<Rational> {
    Rational::from_str(text)
        .map_err(|e| anyhow::anyhow!("invalid bound {text:?}: {e} (expected e.g. 2 or 4/3)"))
}

fn domain_flag(allow_empty_prefs: bool) -> PrefDomain {
    if allow_empty_prefs {
        PrefDomain::AllowEmpty
    } else {
        PrefDomain::Default
    }
}

fn decimal(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `num/den` with an informational decimal when the value is fractional.
fn rational_display(r: Rational) -> String {
    if *r.denom() == 1 {
        r.to_string()
    } else {
        let approx = format!("{:.6}", decimal(r));
        format!("{r} ({})", approx.trim_end_matches('0').trim_end_matches('.'))
    }
}

fn max_ratio_display(max: &MaxRatio) -> String {
    match max {
        MaxRatio::Bounded(r) => rational_display(*r),
        MaxRatio::Unbounded => "unbounded".to_string(),
    }
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    let instance = load_instance(&args.instance, args.allow_empty_prefs)?;
    let mechanism = parse_mechanism(&args.mechanism)?;
    let solution = mechanism.apply(&instance)?;
    let costs: Vec<u64> = (0..instance.n())
        .map(|i| agent_cost(&instance, i, solution))
        .collect::<duoloc::Result<_>>()?;
    let sc = social_cost(&instance, solution)?;
    let mc = max_cost(&instance, solution)?;

    let content = match args.format {
        Format::Json => {
            let agents: Vec<_> = instance
                .agents()
                .iter()
                .zip(&costs)
                .map(|(a, &cost)| {
                    json!({"pos": a.pos, "approves": a.prefs.to_string(), "cost": cost})
                })
                .collect();
            pretty(&json!({
                "mechanism": mechanism.to_string(),
                "solution": {"z1": solution.z1, "z2": solution.z2},
                "agents": agents,
                "social_cost": sc,
                "max_cost": mc,
            }))
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "instance: m={} n={}", instance.m(), instance.n());
            let _ = writeln!(s, "mechanism: {mechanism}");
            let _ = writeln!(s, "solution: z1={} z2={}", solution.z1, solution.z2);
            for (idx, (agent, cost)) in instance.agents().iter().zip(&costs).enumerate() {
                let _ = writeln!(
                    s,
                    "agent {}: pos={} approves={} cost={}",
                    idx + 1,
                    agent.pos,
                    agent.prefs,
                    cost
                );
            }
            let _ = writeln!(s, "social-cost: {sc}");
            let _ = writeln!(s, "max-cost: {mc}");
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(0)
}

fn cmd_opt(args: OptArgs) -> Result<i32> {
    let instance = load_instance(&args.instance, args.allow_empty_prefs)?;
    let opt = optimal_cost(&instance, args.objective);
    let content = match args.format {
        Format::Json => pretty(&json!({
            "objective": args.objective.to_string(),
            "optimal": opt.value,
            "witness": {"z1": opt.witness.z1, "z2": opt.witness.z2},
        })),
        _ => format!(
            "objective: {}\noptimal: {}\nwitness: z1={} z2={}\n",
            args.objective, opt.value, opt.witness.z1, opt.witness.z2
        ),
    };
    emit(&args.out, &content)?;
    Ok(0)
}

fn violation_json(v: &SpViolation) -> serde_json::Value {
    json!({
        "instance": v.instance,
        "agent_index": v.agent_index,
        "misreport": v.misreport.to_string(),
        "true_cost": v.true_cost,
        "deviated_cost": v.deviated_cost,
    })
}

fn cmd_sp_check(args: SpCheckArgs) -> Result<i32> {
    let mechanism = parse_mechanism(&args.mechanism)?;
    let domain = domain_flag(args.allow_empty_prefs);
    let apply = |i: &LineInstance| mechanism.apply(i);

    let (checked, skipped, violation) = match (&args.instance, args.m_max) {
        (Some(path), None) => {
            let instance = load_instance(path, args.allow_empty_prefs)?;
            if !mechanism.admits(&instance) {
                bail!("instance is outside the domain of mechanism {mechanism}");
            }
            (1u64, 0u64, check_strategyproof(apply, &instance, domain)?)
        }
        (None, Some(m_max)) => {
            let family = InstanceFamily {
                m_max,
                n_min: args.n_min,
                n_max: args.n_max,
                domain,
                ..InstanceFamily::default()
            };
            let mut checked = 0;
            let mut skipped = 0;
            let mut found = None;
            for instance in family.iter() {
                if !mechanism.admits(&instance) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if let Some(v) = check_strategyproof(apply, &instance, domain)? {
                    found = Some(v);
                    break;
                }
            }
            (checked, skipped, found)
        }
        _ => bail!("pass exactly one of --instance or --m-max"),
    };

    let domain_name = if args.allow_empty_prefs { "widened" } else { "default" };
    let content = match args.format {
        Format::Json => pretty(&json!({
            "mechanism": mechanism.to_string(),
            "domain": domain_name,
            "instances_checked": checked,
            "instances_skipped": skipped,
            "violation": violation.as_ref().map(violation_json),
        })),
        _ => {
            let mut s = format!(
                "mechanism: {mechanism}\ndomain: {domain_name}\n\
                 instances-checked: {checked}\ninstances-skipped: {skipped}\n"
            );
            match &violation {
                Some(v) => {
                    let _ = writeln!(
                        s,
                        "violation: instance [{}] agent {} misreports {} and improves {} -> {}",
                        v.instance,
                        v.agent_index + 1,
                        v.misreport,
                        v.true_cost,
                        v.deviated_cost
                    );
                }
                None => s.push_str("violations: none\n"),
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(if args.expect_none && violation.is_some() { 1 } else { 0 })
}

fn cmd_sweep(args: SweepArgs) -> Result<i32> {
    let mechanism = parse_mechanism(&args.mechanism)?;
    let empty_nodes = match args.empty_nodes.as_str() {
        "any" => EmptyNodes::Any,
        "none" => EmptyNodes::None,
        "some" => EmptyNodes::AtLeastOne,
        other => bail!("unknown --empty-nodes {other:?}, expected any, none or some"),
    };
    let family = InstanceFamily {
        m_min: args.m_min,
        m_max: args.m_max,
        n_min: args.n_min,
        n_max: args.n_max,
        domain: domain_flag(args.allow_empty_prefs),
        empty_nodes,
    };
    let label = mechanism.to_string();
    let instances = family.iter().filter(|i| mechanism.admits(i));

    let mut csv = String::new();
    if args.format == Format::Csv {
        csv.push_str(
            "mechanism,objective,m,n,instance_id,mech_value,opt_value,ratio_num,ratio_den\n",
        );
    }
    let report = ratio_sweep_with(
        |i| mechanism.apply(i),
        &label,
        args.objective,
        instances,
        |record| {
            if args.format == Format::Csv {
                let (num, den) = record.ratio_parts();
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{}",
                    label,
                    args.objective,
                    record.instance.m(),
                    record.instance.n(),
                    record.instance_id,
                    record.mech_value,
                    record.opt_value,
                    num,
                    den
                );
            }
        },
    )?;

    let max_ratio = max_ratio_display(&report.max_ratio);
    let witness = report.witness.as_ref();
    match args.format {
        Format::Csv => {
            emit(&args.out, &csv)?;
            eprintln!(
                "sweep {label} {}: max-ratio {} over {} instances",
                args.objective, max_ratio, report.instances_checked
            );
        }
        Format::Json => {
            let value = json!({
                "mechanism": label,
                "objective": args.objective.to_string(),
                "max_ratio": report.max_ratio.to_string(),
                "max_ratio_decimal": match report.max_ratio {
                    MaxRatio::Bounded(r) => Some(decimal(r)),
                    MaxRatio::Unbounded => None,
                },
                "witness": witness.map(|w| json!({
                    "instance_id": w.instance_id,
                    "instance": w.instance,
                    "solution": {"z1": w.solution.z1, "z2": w.solution.z2},
                    "mech_value": w.mech_value,
                    "opt_value": w.opt_value,
                })),
                "instances_checked": report.instances_checked,
            });
            emit(&args.out, &pretty(&value))?;
        }
        Format::Table => {
            let mut s = format!(
                "mechanism: {label}\nobjective: {}\nmax-ratio: {max_ratio}\ninstances-checked: {}\n",
                args.objective, report.instances_checked
            );
            if let Some(w) = witness {
                let _ = writeln!(
                    s,
                    "witness: [{}] solution ({},{}) value {} optimal {}",
                    w.instance, w.solution.z1, w.solution.z2, w.mech_value, w.opt_value
                );
            }
            emit(&args.out, &s)?;
        }
    }
    Ok(0)
}

fn cmd_lowerbound(args: LowerboundArgs) -> Result<i32> {
    let bound = parse_bound(&args.bound)?;
    let m = args.m.unwrap_or_else(|| args.positions.last().copied().unwrap_or(0));
    let domain = domain_flag(args.allow_empty_prefs);
    let family = ProfileFamily::full(m, args.positions.clone(), domain)?;
    let strict = !args.non_strict;
    let result = search_tables(&family, args.objective, bound, strict)?;

    if let TableSearchResult::Sat(table) = &result {
        if let Err(violation) = verify_table(&family, args.objective, bound, strict, table)? {
            bail!("witness table failed replay: {violation}");
        }
    }

    let content = match args.format {
        Format::Json => {
            let witness = match &result {
                TableSearchResult::Sat(table) => Some(
                    family
                        .profiles()
                        .iter()
                        .zip(table)
                        .map(|(profile, solution)| {
                            json!({
                                "profile": profile.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                                "solution": {"z1": solution.z1, "z2": solution.z2},
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
                TableSearchResult::Unsat => None,
            };
            pretty(&json!({
                "objective": args.objective.to_string(),
                "bound": bound.to_string(),
                "strict": strict,
                "positions": args.positions,
                "profiles": family.len(),
                "result": if result.is_unsat() { "unsat" } else { "sat" },
                "witness": witness,
            }))
        }
        _ => {
            let mut s = format!(
                "objective: {}\nbound: {} ({})\npositions: {:?}\nprofiles: {}\n",
                args.objective,
                rational_display(bound),
                if strict { "strict" } else { "non-strict" },
                args.positions,
                family.len()
            );
            match &result {
                TableSearchResult::Unsat => {
                    let _ = writeln!(
                        s,
                        "result: UNSAT (no strategyproof table beats the bound on this family)"
                    );
                }
                TableSearchResult::Sat(table) => {
                    let _ = writeln!(s, "result: SAT (witness table below, replay ok)");
                    for (profile, solution) in family.profiles().iter().zip(table) {
                        let prefs: Vec<String> = profile.iter().map(|p| p.to_string()).collect();
                        let _ = writeln!(
                            s,
                            "  [{}] -> ({},{})",
                            prefs.join(","),
                            solution.z1,
                            solution.z2
                        );
                    }
                }
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(0)
}

fn cmd_lemmas(args: LemmasArgs) -> Result<i32> {
    let family = InstanceFamily::up_to(args.m_max);
    let mut content = String::new();
    let mut failed = false;

    match check_sc_bound(&family)? {
        Ok(count) => {
            let _ = writeln!(
                content,
                "ok sc-bound: holds on {count} instances (m <= {})",
                args.m_max
            );
        }
        Err(violation) => {
            failed = true;
            let _ = writeln!(content, "FAIL sc-bound: {violation}");
        }
    }
    match check_mc_pair_bound(&family)? {
        Ok(count) => {
            let _ = writeln!(
                content,
                "ok mc-pair-bound: holds on {count} agent pairs (m <= {})",
                args.m_max
            );
        }
        Err(violation) => {
            failed = true;
            let _ = writeln!(content, "FAIL mc-pair-bound: {violation}");
        }
    }
    match check_mc_triple_bound(&family)? {
        Ok(count) => {
            let _ = writeln!(
                content,
                "ok mc-triple-bound: holds on {count} agent triples (m <= {})",
                args.m_max
            );
        }
        Err(violation) => {
            failed = true;
            let _ = writeln!(content, "FAIL mc-triple-bound: {violation}");
        }
    }
    let (max, argmax) = fmne_ratio_term_max(args.grid_cap);
    if max == Rational::new(13, 4) && argmax == (3, 3) {
        let _ = writeln!(
            content,
            "ok ratio-term-grid: max 13/4 at (3,3) over x+y >= 6, x,y <= {}",
            args.grid_cap
        );
    } else {
        failed = true;
        let _ = writeln!(
            content,
            "FAIL ratio-term-grid: max {max} at {argmax:?} over x,y <= {}",
            args.grid_cap
        );
    }

    emit(&args.out, &content)?;
    Ok(if failed { 1 } else { 0 })
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}
