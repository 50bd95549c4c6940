//! `mscodes`: command-line front end for multiset codes.
//!
//! Exit codes: 0 success, 1 failed check or counterexample, 2 usage or input
//! error, 3 resource budget exceeded.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multiset_codes::channel::{parse_key_values, ChannelSpec, RngSeed};
use multiset_codes::codebook::{verify_correction_guarantee, DEFAULT_WORK_BUDGET};
use multiset_codes::experiment::{
    default_examples, enumerate_counts, run_examples, search, simulate, write_csv, CodeSource, DecoderKind,
    SearchStrategy,
};
use multiset_codes::{Error, ErrorPattern, VERSION};
use serde_json::json;

const DEFAULT_SEED: u64 = 0;
const DEFAULT_TRIALS: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "mscodes", version, about = "Multiset codes for permutation channels")]
struct Cli {
    /// Master RNG seed [default: 0].
    #[arg(long, global = true, env = "MSCODES_SEED")]
    seed: Option<u64>,

    /// Work limit for exhaustive enumerations.
    #[arg(long, global = true, env = "MSCODES_BUDGET", default_value_t = DEFAULT_WORK_BUDGET)]
    budget: u128,

    /// Write results here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute the worked examples and print PASS/FAIL for each.
    Examples,
    /// Monte Carlo decoding experiment; writes one CSV row per trial.
    Simulate(SimulateArgs),
    /// Count l-subsets and l-multisets by formula and by enumeration.
    Enumerate {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
    },
    /// Search the constant-cardinality sphere for a code with minimum distance >= d.
    Search {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Greedy)]
        strategy: StrategyArg,
    },
    /// Exhaustively check the correction guarantee of a codebook.
    Verify {
        /// Codebook file, or a code source such as `subset:hamming74`.
        code: String,
        /// Largest pattern to enumerate, as `s,rho,t`.
        #[arg(long, default_value = "2,2,2")]
        max_pattern: String,
    },
    /// Build a tagged codebook from an inner code.
    Construct {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// `hamming74`, `repetition:<q>:<length>` or `inner:<path>`.
        #[arg(long)]
        inner: String,
        /// Also write the inner code here.
        #[arg(long)]
        inner_output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Flat `key=value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Code source: `file:<path>`, `subset:hamming74`, `multiset:repetition:3:4`, ...
    #[arg(long)]
    code: Option<String>,
    /// Channel, e.g. `mode=exact s=0 rho=2 t=0` or `mode=prob p_del=0.1 p_sub=0 ins_rate=0`.
    #[arg(long)]
    channel: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    /// `min-distance` or `structured`.
    #[arg(long)]
    decoder: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Greedy,
    Exhaustive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Subset,
    Multiset,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Check(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::NoValidCode(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Examples => cmd_examples(cli),
        Command::Simulate(args) => cmd_simulate(cli, args),
        Command::Enumerate { q, l } => cmd_enumerate(cli, *q, *l),
        Command::Search { q, l, d, strategy } => cmd_search(cli, *q, *l, *d, *strategy),
        Command::Verify { code, max_pattern } => cmd_verify(cli, code, max_pattern),
        Command::Construct {
            kind,
            inner,
            inner_output,
        } => cmd_construct(cli, *kind, inner, inner_output.as_deref()),
    }
}

fn emit(cli: &Cli, text: &str) -> CmdResult {
    match &cli.output {
        Some(path) => write_file(path, text),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_examples(cli: &Cli) -> CmdResult {
    let outcomes = run_examples(&default_examples());
    let mut text = String::new();
    for o in &outcomes {
        if o.passed() {
            text.push_str(&format!("PASS {} = {}\n", o.id, o.actual));
        } else {
            text.push_str(&format!("FAIL {}\n  expected: {}\n  actual:   {}\n", o.id, o.expected, o.actual));
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    text.push_str(&format!("{} of {} examples passed\n", outcomes.len() - failed, outcomes.len()));
    emit(cli, &text)?;
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} examples failed")));
    }
    Ok(())
}

fn read_config(path: &Path) -> std::result::Result<BTreeMap<String, String>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(parse_key_values(&body)?)
}

const CONFIG_KEYS: [&str; 5] = ["code", "trials", "seed", "decoder", "output"];
const CHANNEL_KEYS: [&str; 8] = ["mode", "s", "rho", "t", "p_del", "p_sub", "ins_rate", "ins_dist"];

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> CmdResult {
    let mut config = match &args.config {
        Some(path) => read_config(path)?,
        None => BTreeMap::new(),
    };
    if let Some(channel) = &args.channel {
        let keys: Vec<String> = config
            .keys()
            .filter(|k| !CONFIG_KEYS.contains(&k.as_str()))
            .cloned()
            .collect();
        for k in keys {
            config.remove(&k);
        }
        config.extend(parse_key_values(channel)?);
    }
    let unknown: Vec<&String> = config
        .keys()
        .filter(|k| !CONFIG_KEYS.contains(&k.as_str()) && !CHANNEL_KEYS.contains(&k.as_str()))
        .collect();
    if let Some(k) = unknown.first() {
        return Err(Failure::Usage(format!("unknown config key {k:?}")));
    }

    let parse_num = |key: &str, raw: &str| -> std::result::Result<u64, Failure> {
        raw.parse()
            .map_err(|_| Failure::Usage(format!("{key}={raw} is not a nonnegative integer")))
    };
    let code_text = args
        .code
        .clone()
        .or_else(|| config.get("code").cloned())
        .ok_or_else(|| Failure::Usage("no code given (use --code or code= in the config)".into()))?;
    let source: CodeSource = code_text.parse()?;
    let trials = match (args.trials, config.get("trials")) {
        (Some(n), _) => n,
        (None, Some(raw)) => parse_num("trials", raw)?,
        (None, None) => DEFAULT_TRIALS,
    };
    let seed = match (cli.seed, config.get("seed")) {
        (Some(s), _) => s,
        (None, Some(raw)) => parse_num("seed", raw)?,
        (None, None) => DEFAULT_SEED,
    };
    let decoder: DecoderKind = match args.decoder.as_deref().or(config.get("decoder").map(String::as_str)) {
        Some(raw) => raw.parse()?,
        None => DecoderKind::default(),
    };
    let spec = ChannelSpec::from_map(&config)?;
    let output = cli.output.clone().or_else(|| config.get("output").map(PathBuf::from));

    let code = source.load()?;
    let sim = simulate(&code, &spec, trials, RngSeed(seed), decoder)?;
    let provenance = format!(
        "code={source} {spec} trials={trials} seed={seed} decoder={decoder}\nmin_distance={}",
        code.codebook.min_distance()
    );
    let mut buf = Vec::new();
    write_csv(&mut buf, &provenance, &sim)?;
    match output {
        Some(path) => {
            fs::write(&path, &buf).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
        None => io::stdout().write_all(&buf)?,
    }
    eprintln!("{}", sim.report.summary_line());
    Ok(())
}

fn cmd_enumerate(cli: &Cli, q: usize, l: usize) -> CmdResult {
    let table = enumerate_counts(q, l, cli.budget)?;
    let text = format!(
        "q={} l={}\nsubsets:   formula={} enumerated={}\nmultisets: formula={} enumerated={}\n{}\n",
        table.q,
        table.l,
        table.subsets_formula,
        table.subsets_enumerated,
        table.multisets_formula,
        table.multisets_enumerated,
        if table.consistent() { "PASS" } else { "FAIL" }
    );
    emit(cli, &text)?;
    if !table.consistent() {
        return Err(Failure::Check("counts disagree".into()));
    }
    Ok(())
}

fn cmd_search(cli: &Cli, q: usize, l: u32, d: u64, strategy: StrategyArg) -> CmdResult {
    let strategy = match strategy {
        StrategyArg::Greedy => SearchStrategy::Greedy,
        StrategyArg::Exhaustive => SearchStrategy::Exhaustive,
    };
    let code = search(q, l, d, strategy, cli.budget)?;
    let found = code.min_distance();
    if found < d {
        return Err(Failure::Check(format!("search returned minimum distance {found} < {d}")));
    }
    let text = format!(
        "# mscodes {VERSION}\n# search q={q} l={l} d={d} strategy={strategy:?}\n{}",
        with_distance_header(&code.to_text(), found)
    );
    emit(cli, &text)
}

fn with_distance_header(text: &str, d: u64) -> String {
    match text.split_once('\n') {
        Some((header, rest)) => format!("{header} d={d}\n{rest}"),
        None => text.to_string(),
    }
}

fn parse_pattern(raw: &str) -> std::result::Result<ErrorPattern, Failure> {
    let parts: Vec<u32> = raw
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad pattern {raw:?}; expected s,rho,t")))?;
    match parts.as_slice() {
        &[s, rho, t] => Ok(ErrorPattern::new(s, rho, t)),
        _ => Err(Failure::Usage(format!("bad pattern {raw:?}; expected s,rho,t"))),
    }
}

fn cmd_verify(cli: &Cli, code: &str, max_pattern: &str) -> CmdResult {
    let max_pattern = parse_pattern(max_pattern)?;
    let source = if Path::new(code).exists() {
        CodeSource::File(PathBuf::from(code))
    } else {
        code.parse()?
    };
    let loaded = source.load()?;
    let report = verify_correction_guarantee(&loaded.codebook, max_pattern, cli.budget)?;
    let discrepancy = loaded
        .declared_min_distance
        .filter(|&declared| declared != report.min_distance);
    let doc = json!({
        "version": VERSION,
        "code": source.to_string(),
        "budget": cli.budget.to_string(),
        "declared_min_distance": loaded.declared_min_distance,
        "report": report,
        "passed": report.passed() && discrepancy.is_none(),
    });
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Usage(e.to_string()))? + "\n";
    emit(cli, &text)?;
    if let Some(declared) = discrepancy {
        return Err(Failure::Check(format!(
            "declared d={declared} but recomputed minimum distance is {}",
            report.min_distance
        )));
    }
    if !report.passed() {
        return Err(Failure::Check(format!("{} counterexamples", report.failures.len())));
    }
    eprintln!(
        "PASS d={} premise patterns={} outcomes={}",
        report.min_distance,
        report.premise_patterns.len(),
        report.premise_satisfied_outcomes
    );
    Ok(())
}

fn cmd_construct(cli: &Cli, kind: KindArg, inner: &str, inner_output: Option<&Path>) -> CmdResult {
    let kind_text = match kind {
        KindArg::Subset => "subset",
        KindArg::Multiset => "multiset",
    };
    let source: CodeSource = format!("{kind_text}:{inner}").parse()?;
    let CodeSource::Construction { inner: inner_source, .. } = &source else {
        unreachable!("constructions parse to CodeSource::Construction")
    };
    let inner_code = inner_source.load()?;
    inner_code.validate_declared()?;
    let loaded = source.load()?;
    let book = &loaded.codebook;
    let mut text = format!(
        "# mscodes {VERSION}\n# construct {source}\n# symbol (seq-1)*{}+payload+1 encodes tag seq with payload index\n",
        inner_code.q()
    );
    text.push_str(&with_distance_header(&book.to_text(), book.min_distance()));
    emit(cli, &text)?;
    match inner_output {
        Some(path) => write_file(path, &inner_code.to_text()),
        None => Ok(()),
    }
}
