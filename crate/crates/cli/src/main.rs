use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tricount::analysis::{independence_check, independence_check_until, zero_columns};
use tricount::bench::{run_tournament, TournamentSpec};
use tricount::enumerate::{enumerate, tabulate, Kind};
use tricount::exec::{
    count_builtin, count_oracle, list_occurrences, timed, CompiledPlan, CountResult, Method, BUILTIN_COUNTERS,
};
use tricount::plan::{default_plan, generate_plans, summarize, CountingPlan};
use tricount::random::{distinct_systems, hill_climb, HillClimbConfig};
use tricount::{builtin, Configuration, Error, SteinerTripleSystem};

#[derive(Parser)]
#[command(name = "tricount", version, about = "Count configurations in Steiner triple systems")]
struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print progress and timings to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random Steiner triple systems by hill climbing.
    Gen {
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write `sts<v>_<k>.txt` files here instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a system file (or a configuration file).
    Validate {
        #[arg(long, required_unless_present = "config")]
        sts: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Enumerate full n-line or w_3 configurations.
    Enum {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Lines for `full`, points for `w3`.
        #[arg(long)]
        n: usize,
        /// Print the table row instead of the configurations.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize counting plans for a configuration.
    Plans {
        #[arg(long)]
        config: String,
        /// Write every plan and a manifest here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print one plan as pseudocode.
        #[arg(long)]
        show: Option<usize>,
    },
    /// Count occurrences of a configuration in a system.
    Count {
        #[arg(long)]
        config: String,
        #[arg(long)]
        sts: PathBuf,
        /// builtin | plan | plan:<file> | oracle | list
        #[arg(long)]
        method: Option<String>,
    },
    /// Run the plan tournament for a configuration.
    Bench {
        #[arg(long)]
        config: String,
        #[arg(long, default_value = "desk")]
        preset: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Only enter the first k plans.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Exact rank of count vectors over random systems.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        systems: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Keep drawing systems, up to this many, until the rank is full.
        #[arg(long)]
        max_systems: Option<usize>,
        /// n = 8 on at least 623 STS(25); takes hours.
        #[arg(long)]
        full_scale: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every occurrence of a configuration in a system.
    List {
        #[arg(long)]
        config: String,
        #[arg(long)]
        sts: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Full,
    W3,
}

/// Failure classes mapped to exit codes.
enum Failure {
    /// Bad input data: exit 1.
    Data(String),
    /// Bad arguments: exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::UnknownConfiguration(_) | Error::Unsupported(_) | Error::SizeGuard(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Data(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Res<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::Data(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn load_sts(path: &Path) -> Res<SteinerTripleSystem> {
    SteinerTripleSystem::from_text(&read(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// A built-in name or a configuration file.
fn load_config(spec: &str) -> Res<Configuration> {
    match builtin(spec) {
        Ok(c) => Ok(c),
        Err(_) if Path::new(spec).is_file() => {
            let path = Path::new(spec);
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("cfg").to_string();
            Configuration::from_text(&read(path)?)
                .map(|c| c.with_name(name))
                .map_err(|e| Failure::Data(format!("{spec}: {e}")))
        }
        Err(e) => Err(Failure::Usage(format!("{e}; not a file either"))),
    }
}

fn config_name(c: &Configuration) -> String {
    c.name().unwrap_or("cfg").to_string()
}

fn run(cli: Cli) -> Res<()> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Gen { v, seed, count, out } => {
            let systems = if count == 1 {
                vec![hill_climb(&HillClimbConfig::new(v, seed))?]
            } else {
                distinct_systems(v, seed, count)?
            };
            for (k, s) in systems.iter().enumerate() {
                match &out {
                    Some(dir) => write(&dir.join(format!("sts{v}_{k}.txt")), &s.to_text())?,
                    None => print!("{}", s.to_text()),
                }
            }
        }
        Command::Validate { sts, config } => {
            if let Some(path) = sts {
                let s = load_sts(&path)?;
                println!("ok v={} blocks={}", s.order(), s.blocks().len());
            }
            if let Some(path) = config {
                let c = Configuration::from_text(&read(&path)?)
                    .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
                let k = c.classify();
                println!(
                    "ok w={} b={} full={} w3={} m={}",
                    c.points(),
                    c.num_lines(),
                    k.is_full,
                    k.is_w3,
                    c.generating_number()
                );
            }
        }
        Command::Enum { kind, n, stats, out } => {
            let kind = match kind {
                KindArg::Full => Kind::Full,
                KindArg::W3 => Kind::W3,
            };
            let configs = enumerate(kind, n)?;
            if stats {
                let st = tabulate(kind, n, &configs);
                let text = format!("{}\n{}\n", st.csv_header(), st.csv_row());
                match &out {
                    Some(dir) => write(&dir.join(format!("{}{n}_stats.csv", kind.as_str())), &text)?,
                    None => print!("{text}"),
                }
            } else {
                for (i, c) in configs.iter().enumerate() {
                    match &out {
                        Some(dir) => write(&dir.join(format!("{}{n}_{i}.txt", kind.as_str())), &c.to_text())?,
                        None => print!("# {} {n} class {i}\n{}", kind.as_str(), c.to_text()),
                    }
                }
                if out.is_some() {
                    println!("{} classes", configs.len());
                }
            }
        }
        Command::Plans { config, out, show } => {
            let cfg = load_config(&config)?;
            let set = generate_plans(&cfg)?;
            let s = summarize(&cfg);
            if let Some(id) = show {
                let p = set
                    .plans
                    .get(id)
                    .ok_or_else(|| Failure::Usage(format!("plan {id} out of range (A = {})", set.count())))?;
                print!("{}", p.plan.pretty());
                return Ok(());
            }
            let full = set.plans.iter().filter(|p| !p.truncated).count();
            let mut manifest = String::from("config,b,w,m,aut,sets,ordered,orbits,A,A_untruncated\n");
            manifest.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                config_name(&cfg),
                s.b,
                s.w,
                s.m,
                s.aut,
                s.sets,
                s.ordered,
                s.orbits,
                set.count(),
                full
            ));
            match out {
                Some(dir) => {
                    let mut index = String::from("id,file,q,loops,truncated,sources\n");
                    for p in &set.plans {
                        let file = format!("plan_{:05}.txt", p.id);
                        write(&dir.join(&file), &p.plan.to_text())?;
                        index.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            p.id,
                            file,
                            p.plan.q,
                            p.plan.loop_count(),
                            p.truncated,
                            p.sources
                        ));
                    }
                    write(&dir.join("manifest.csv"), &manifest)?;
                    write(&dir.join("plans.csv"), &index)?;
                    print!("{manifest}");
                }
                None => print!("{manifest}"),
            }
        }
        Command::Count { config, sts, method } => {
            let cfg = load_config(&config)?;
            let s = load_sts(&sts)?;
            let name = config_name(&cfg);
            let has_builtin = BUILTIN_COUNTERS.contains(&name.as_str());
            let method = method.unwrap_or_else(|| if has_builtin { "builtin".into() } else { "plan".into() });
            let result: CountResult = match method.as_str() {
                "builtin" => timed(&name, Method::Builtin, || count_builtin(&name, &s))?,
                "oracle" => timed(&name, Method::Oracle, || count_oracle(&cfg, &s))?,
                "list" => timed(&name, Method::List, || Ok(list_occurrences(&cfg, &s)?.len() as u64))?,
                "plan" => {
                    let p = CompiledPlan::new(&default_plan(&cfg)?, false)?;
                    timed(&name, Method::Plan, || p.count(&s))?
                }
                m => match m.strip_prefix("plan:") {
                    Some(file) => {
                        let plan = CountingPlan::from_text(&read(Path::new(file))?)
                            .map_err(|e| Failure::Data(format!("{file}: {e}")))?;
                        plan.validate_against(&cfg).map_err(|e| Failure::Data(format!("{file}: {e}")))?;
                        let p = CompiledPlan::new(&plan, false)?;
                        timed(&name, Method::Plan, || p.count(&s))?
                    }
                    None => return Err(Failure::Usage(format!("unknown method `{m}`"))),
                },
            };
            println!("config,method,count,seconds");
            println!("{}", result.csv_row());
        }
        Command::Bench { config, preset, seed, out, limit } => {
            let cfg = load_config(&config)?;
            let spec = TournamentSpec::preset(&preset, seed)?;
            let mut set = generate_plans(&cfg)?;
            if let Some(k) = limit {
                set.plans.truncate(k.max(1));
            }
            if verbose {
                eprintln!("{} plans enter the tournament", set.plans.len());
            }
            let report = run_tournament(&set.plans, &spec)?;
            let csv = report.to_csv();
            match &out {
                Some(path) => write(path, &csv)?,
                None => print!("{csv}"),
            }
            let verified = match report.winner_verified {
                Some(v) => v.to_string(),
                None => "unchecked".into(),
            };
            println!("winner={} top5_phase1={} verified={verified}", report.winner, report.winner_top5_phase1);
            if report.winner_verified == Some(false) {
                return Err(Failure::Data("winner's counts disagree with the reference counter".into()));
            }
        }
        Command::Rank { n, systems, v, seed, max_systems, full_scale, out } => {
            let (n, systems, v) = if full_scale { (8, systems.max(623), 25) } else { (n, systems, v) };
            let report = match max_systems {
                Some(max) => independence_check_until(n, systems, max, v, seed)?,
                None => independence_check(n, systems, v, seed)?,
            };
            let csv = report.matrix.to_csv();
            match &out {
                Some(path) => write(path, &csv)?,
                None => print!("{csv}"),
            }
            let zero = zero_columns(&report.matrix);
            if verbose && !zero.is_empty() {
                eprintln!("columns zero in every row: {}", zero.join(" "));
            }
            println!("{} systems={}", report.summary(), report.matrix.rows.len());
        }
        Command::List { config, sts } => {
            let cfg = load_config(&config)?;
            let s = load_sts(&sts)?;
            let occ = list_occurrences(&cfg, &s)?;
            for blocks in &occ {
                let parts: Vec<String> = blocks.iter().map(|b| format!("{} {} {}", b[0], b[1], b[2])).collect();
                println!("{}", parts.join(" | "));
            }
            if verbose {
                eprintln!("{} occurrences", occ.len());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
