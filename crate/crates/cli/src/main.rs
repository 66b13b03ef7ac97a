mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use addcomb::energy::energy_report;
use addcomb::extremal::{build_example1, build_example2, build_example2_with_step, equal_sums_witness_exists};
use addcomb::kernel::rep_counts_with;
use addcomb::literal::parse_orders;
use addcomb::search::{jsonl_sink, run_campaign, CampaignConfig, CampaignError, Mode};
use addcomb::subgroup::Subgroup;
use addcomb::theorems::{
    check_chowla_pollard, check_corollary, check_critical_pair, check_double_rep_remark, check_green_ruzsa,
    check_kneser, check_main_theorem, check_multiplicity_prop, check_pollard_cyclic, check_t2_theorem,
};
use addcomb::{
    check_energy_lemma, check_energy_upper_bound, derive_exceptional_set, parse_set, CheckError, GSet, GroupSpec,
    Kernel, TheoremId, TheoremVerdict,
};

use render::{human, tsv, Sizes, TSV_HEADER};

/// Exit status for malformed input.
const EXIT_USAGE: u8 = 2;
/// Exit status when a statement's preconditions reject the input.
const EXIT_PRECONDITION: u8 = 3;
/// Failing verdicts exit with `EXIT_VERDICT_BASE + theorem code`.
const EXIT_VERDICT_BASE: u8 = 16;
/// Candidate budget for the equal-sums witness check in `example`.
const WITNESS_BUDGET: u64 = 200_000;

#[derive(Parser)]
#[command(name = "addcomb", version, about = "Sumsets, stabilizers and additive energy over finite abelian groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Check one or more statements on a pair of sets.
    Verify {
        /// Cyclic orders of the group, e.g. `2,6` for Z_2 × Z_6.
        #[arg(long)]
        group: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Threshold k for the energy statements.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// A theorem name, a comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Run an exhaustive or sampled campaign, writing JSONL records.
    Search {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        min_order: usize,
        /// Range of t, e.g. `1..3`.
        #[arg(long, default_value = "1..3")]
        t: String,
        #[arg(long, default_value = "exhaustive")]
        mode: Mode,
        /// Samples per group in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0: one per core).
        #[arg(long, env = "ADDCOMB_THREADS", default_value_t = 0)]
        threads: usize,
        /// Checkers to run, comma separated, or `all`.
        #[arg(long, default_value = "all")]
        checkers: String,
        /// Record wall-clock timings (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a member of a tightness family and check its defect identity.
    Example {
        #[arg(long)]
        family: u8,
        /// `key=value` pairs. Family 1: h, q, d, s, r, x. Family 2: r, x and
        /// optionally step.
        #[arg(long, default_value = "")]
        params: String,
        /// Family 2 only: the ambient group.
        #[arg(long)]
        group: Option<String>,
        /// Family 2 only: the subgroup H as a set literal.
        #[arg(long = "H")]
        h: Option<String>,
        /// Family 2 only: the subgroup L as a set literal.
        #[arg(long = "L")]
        l: Option<String>,
    },
    /// Additive energy report and the energy lower bound.
    Energy {
        #[arg(long)]
        group: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Time one representation-count kernel on random sets.
    Bench {
        #[arg(long)]
        order: usize,
        /// Cyclic orders; overrides `--order` with a product group.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 10)]
        reps: u32,
        #[arg(long, default_value = "auto")]
        kernel: Kernel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// An error paired with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure { code: EXIT_USAGE, error: error.into() }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure { code: EXIT_PRECONDITION, error: e.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, error: e.into() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { group, a, b, t, k, theorem } => verify(cli.format, &group, &a, &b, t, k, &theorem),
        Command::Search { max_order, min_order, t, mode, samples, seed, threads, checkers, timings, out } => {
            search(max_order, min_order, &t, mode, samples, seed, threads, &checkers, timings, out)
        }
        Command::Example { family, params, group, h, l } => {
            example(cli.format, family, &params, group.as_deref(), h.as_deref(), l.as_deref())
        }
        Command::Energy { group, a, b, k, t } => energy(cli.format, &group, &a, &b, k, t),
        Command::Bench { order, group, density, reps, kernel, seed } => {
            bench(cli.format, order, group.as_deref(), density, reps, kernel, seed)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn parse_group(text: &str) -> Result<GroupSpec, Failure> {
    let orders = parse_orders(text).map_err(Failure::usage)?;
    GroupSpec::new(&orders).map_err(Failure::usage)
}

fn parse_literal(text: &str, group: &GroupSpec, name: &str) -> Result<GSet, Failure> {
    parse_set(text, group).map_err(|e| Failure::usage(anyhow!("{name}: {e} [{}]", e.code())))
}

fn parse_theorems(text: &str) -> Result<Vec<TheoremId>, Failure> {
    if text == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    text.split(',').map(|s| s.trim().parse::<TheoremId>().map_err(|e| Failure::usage(anyhow!(e)))).collect()
}

fn run_checker(id: TheoremId, a: &GSet, b: &GSet, t: u32, k: u32) -> Result<TheoremVerdict, CheckError> {
    match id {
        TheoremId::Kneser => check_kneser(a, b),
        TheoremId::Pollard => check_pollard_cyclic(a, b, t),
        TheoremId::Chowla => check_chowla_pollard(a, b, t),
        TheoremId::GreenRuzsa => check_green_ruzsa(a, b, t),
        TheoremId::Main => check_main_theorem(a, b, t),
        TheoremId::T2 => check_t2_theorem(a, b),
        TheoremId::Corollary => check_corollary(a, b),
        TheoremId::Mult => check_multiplicity_prop(a, b),
        TheoremId::Critical => check_critical_pair(a, b),
        TheoremId::Remark => check_double_rep_remark(a, b, t),
        TheoremId::Energy => check_energy_lemma(a, b, k, t),
        TheoremId::EnergyUpper => check_energy_upper_bound(a, b, &derive_exceptional_set(a, b, k)?, k),
    }
}

/// Exit status for a list of verdicts: 0, or the first failure's code.
fn verdict_status(vs: &[TheoremVerdict]) -> u8 {
    vs.iter().find(|v| !v.holds).map_or(0, |v| EXIT_VERDICT_BASE + v.theorem.code())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("JSON values serialize"));
}

fn verify(format: Format, group: &str, a: &str, b: &str, t: u32, k: u32, theorem: &str) -> Outcome {
    let g = parse_group(group)?;
    let a = parse_literal(a, &g, "A")?;
    let b = parse_literal(b, &g, "B")?;
    let ids = parse_theorems(theorem)?;
    let sweep = theorem == "all";
    let mut verdicts = Vec::new();
    for id in ids {
        match run_checker(id, &a, &b, t, k) {
            Ok(v) => verdicts.push(v),
            // With `all`, statements whose hypotheses exclude the group or
            // the set sizes are skipped.
            Err(CheckError::NonCyclic(_) | CheckError::TooSmall(_) | CheckError::Subgroup(_)) if sweep => {}
            Err(e) => return Err(e.into()),
        }
    }
    match format {
        Format::Json => print_json(&json!({
            "group": g, "A": a.to_vec(), "B": b.to_vec(), "t": t, "k": k, "verdicts": verdicts,
        })),
        Format::Tsv => {
            println!("{TSV_HEADER}");
            verdicts.iter().for_each(|v| println!("{}", tsv(v)));
        }
        Format::Human => {
            println!("G = {g}, |A| = {}, |B| = {}, t = {t}", a.len(), b.len());
            let sizes = Sizes { a: a.len(), b: b.len(), t };
            verdicts.iter().for_each(|v| println!("{}", human(v, &sizes)));
        }
    }
    Ok(verdict_status(&verdicts))
}

fn parse_t_range(text: &str) -> Result<std::ops::RangeInclusive<u32>, Failure> {
    let bad = || Failure::usage(anyhow!("bad t range '{text}' (expected e.g. 1..3)"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    match text.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.trim_start_matches('='))?),
        None => {
            let t = num(text)?;
            Ok(t..=t)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    max_order: usize,
    min_order: usize,
    t: &str,
    mode: Mode,
    samples: u64,
    seed: u64,
    threads: usize,
    checkers: &str,
    timings: bool,
    out: Option<PathBuf>,
) -> Outcome {
    let config = CampaignConfig {
        min_order,
        max_order,
        t_range: parse_t_range(t)?,
        mode,
        samples_per_group: samples,
        seed,
        checkers: parse_theorems(checkers)?,
        threads,
        timings,
    };
    config.validate().map_err(Failure::usage)?;
    let writer: Box<dyn Write> = match &out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path)
                .with_context(|| format!("creating {}", path.display()))
                .map_err(|e| Failure { code: 1, error: e })?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = jsonl_sink(writer);
    match run_campaign(&config, &mut sink) {
        Ok(summary) => {
            eprintln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
            Ok(0)
        }
        Err(CampaignError::Counterexample { record, reproducer }) => {
            eprintln!("counterexample: {}", serde_json::to_string(&record).expect("record serializes"));
            eprintln!("reproduce with: {reproducer}");
            Ok(verdict_status(&record.verdicts))
        }
        // A closed pipe (e.g. `| head`) ends the run quietly.
        Err(CampaignError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Ok(0),
        Err(CampaignError::Io(e)) => Err(e.into()),
        Err(CampaignError::Check(e)) => Err(e.into()),
        Err(e) => Err(Failure::usage(e)),
    }
}

fn parse_params(text: &str) -> Result<Vec<(String, usize)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) =
                kv.split_once('=').ok_or_else(|| Failure::usage(anyhow!("parameter '{kv}' is not key=value")))?;
            let v = v.trim().parse().map_err(|_| Failure::usage(anyhow!("parameter '{kv}' needs an integer value")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn param(params: &[(String, usize)], names: &[&str]) -> Result<usize, Failure> {
    params
        .iter()
        .find(|(k, _)| names.contains(&k.as_str()))
        .map(|&(_, v)| v)
        .ok_or_else(|| Failure::usage(anyhow!("missing parameter {}", names[0])))
}

fn example(format: Format, family: u8, params: &str, group: Option<&str>, h: Option<&str>, l: Option<&str>) -> Outcome {
    let params = parse_params(params)?;
    let inst = match family {
        1 => build_example1(
            param(&params, &["h", "H", "H_order"])?,
            param(&params, &["q", "quotient_order"])?,
            param(&params, &["d"])?,
            param(&params, &["s"])?,
            param(&params, &["r"])?,
            param(&params, &["x"])?,
        ),
        2 => {
            fn need<'a>(o: Option<&'a str>, what: &str) -> Result<&'a str, Failure> {
                o.ok_or_else(|| Failure::usage(anyhow!("family 2 needs --{what}")))
            }
            let g = parse_group(need(group, "group")?)?;
            let subgroup = |text: &str, name: &str| {
                Subgroup::from_set(parse_literal(text, &g, name)?).map_err(|e| Failure::usage(anyhow!("{name}: {e}")))
            };
            let hs = subgroup(need(h, "H")?, "H")?;
            let ls = subgroup(need(l, "L")?, "L")?;
            let (r, x) = (param(&params, &["r"])?, param(&params, &["x"])?);
            match param(&params, &["step"]) {
                Ok(step) => build_example2_with_step(&g, &hs, &ls, r, x, step),
                Err(_) => build_example2(&g, &hs, &ls, r, x),
            }
        }
        other => return Err(Failure::usage(anyhow!("unknown family {other} (expected 1 or 2)"))),
    }
    .map_err(Failure::usage)?;
    let report = inst.report();
    let witness = equal_sums_witness_exists(&inst.a, &inst.b, inst.t, WITNESS_BUDGET);
    let ok = report.identity.holds && report.stabilizer_matches && witness != Some(true);
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["equal_sums_witness"] = json!(witness);
            print_json(&v);
        }
        Format::Tsv => {
            println!("family\tgroup\tt\tx\tr\tpollard_sum\tdefect\tpredicted\tholds\tstabilizer_matches");
            let id = &report.identity;
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                report.family,
                inst.group,
                report.t,
                report.x,
                report.r,
                id.pollard_sum,
                id.defect,
                id.predicted,
                id.holds,
                report.stabilizer_matches
            );
        }
        Format::Human => {
            let id = &report.identity;
            let (sym, size) = if family == 1 { ("H", inst.period.order()) } else { ("L", inst.period.order()) };
            println!(
                "G = {}, t = {}, |A| = {}, |B| = {}, |{sym}| = {size}",
                inst.group,
                inst.t,
                inst.a.len(),
                inst.b.len()
            );
            println!("A = {}", inst.a);
            println!("B = {}", inst.b);
            println!(
                "Σ_{{i≤t}} |A+_iB| − t|A| − t|B| + t² = {} − {} − {} + {} = {}",
                id.pollard_sum, id.t_a, id.t_b, id.t_squared, id.defect
            );
            println!(
                "x² − x|{sym}| = {}² − {}·{size} = {}  ({})",
                inst.x,
                inst.x,
                id.predicted,
                if id.holds { "equal" } else { "MISMATCH" }
            );
            println!("H(A+_tB) = {{{}}} (expected {sym}: {})", join(&report.stabilizer), report.stabilizer_matches);
            let w = match witness {
                Some(true) => "FOUND",
                Some(false) => "none",
                None => "not decided within budget",
            };
            println!("witness with A′+_tB′ = A′+B′ = A+_tB: {w}");
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn energy(format: Format, group: &str, a: &str, b: &str, k: u32, t: u32) -> Outcome {
    let g = parse_group(group)?;
    let a = parse_literal(a, &g, "A")?;
    let b = parse_literal(b, &g, "B")?;
    let (verdict, report) = energy_report(&a, &b, k, t)?;
    let upper = check_energy_upper_bound(&a, &b, &derive_exceptional_set(&a, &b, k)?, k)?;
    let energy = addcomb::additive_energy(&a, &b).map_err(CheckError::from)?;
    let status = verdict_status(&[verdict.clone(), upper.clone()]);
    match format {
        Format::Json => print_json(&json!({
            "group": g, "A": a.to_vec(), "B": b.to_vec(), "k": k, "t": t, "energy": energy,
            "report": report, "verdicts": [verdict, upper],
        })),
        Format::Tsv => {
            println!("{TSV_HEADER}");
            println!("{}", tsv(&verdict));
            println!("{}", tsv(&upper));
        }
        Format::Human => {
            println!("G = {g}, |A| = {}, |B| = {}, k = {k}, t = {t}", a.len(), b.len());
            println!("E(A,B) = {energy}");
            if let Some(r) = &report {
                println!("T = {} (|T| = {})", r.exceptional, r.exceptional.len());
                println!("bound value ≥ {:.6}", r.lower_bound.value_lower());
            }
            let sizes = Sizes { a: a.len(), b: b.len(), t };
            println!("{}", human(&verdict, &sizes));
            println!("{}", human(&upper, &sizes));
        }
    }
    Ok(status)
}

fn bench(
    format: Format,
    order: usize,
    group: Option<&str>,
    density: f64,
    reps: u32,
    kernel: Kernel,
    seed: u64,
) -> Outcome {
    let g = match group {
        Some(text) => parse_group(text)?,
        None => GroupSpec::cyclic(order).map_err(Failure::usage)?,
    };
    if !(0.0..=1.0).contains(&density) {
        bail_usage(format!("density {density} is not in [0, 1]"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        let mut s = GSet::from_fn(&g, |_| rng.gen_bool(density));
        if s.is_empty() {
            s.insert(0).expect("0 is in every group");
        }
        s
    };
    let (a, b) = (draw(), draw());
    let reps = reps.max(1);
    let mut times = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        let t0 = Instant::now();
        std::hint::black_box(rep_counts_with(&a, &b, kernel).map_err(CheckError::from)?);
        times.push(t0.elapsed().as_nanos() as u64);
    }
    times.sort_unstable();
    let (min, median) = (times[0], times[times.len() / 2]);
    let mean = times.iter().sum::<u64>() / times.len() as u64;
    let resolved = if kernel == Kernel::Auto { addcomb::kernel::choose_kernel(&a, &b) } else { kernel };
    match format {
        Format::Json => print_json(&json!({
            "group": g, "kernel": resolved.to_string(), "size_a": a.len(), "size_b": b.len(),
            "reps": reps, "min_ns": min, "median_ns": median, "mean_ns": mean,
        })),
        Format::Tsv => {
            println!("group\tkernel\tsize_a\tsize_b\treps\tmin_ns\tmedian_ns\tmean_ns");
            println!("{g}\t{resolved}\t{}\t{}\t{reps}\t{min}\t{median}\t{mean}", a.len(), b.len());
        }
        Format::Human => println!(
            "{g}: {resolved} kernel, |A| = {}, |B| = {}, {reps} reps: min {:.3} ms, median {:.3} ms, mean {:.3} ms",
            a.len(),
            b.len(),
            min as f64 / 1e6,
            median as f64 / 1e6,
            mean as f64 / 1e6
        ),
    }
    Ok(0)
}

fn bail_usage(msg: String) -> Result<(), Failure> {
    Err(Failure::usage(anyhow::Error::msg(msg)))
}
