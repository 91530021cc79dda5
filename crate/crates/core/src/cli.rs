//! Command-line front end behind the `lcc` binary.
//!
//! [`run`] takes the argument list and two sinks and returns the exit code,
//! so the whole surface can be driven from tests. Exit codes: 0 success,
//! 1 usage or runtime error, 2 input set rejected by `verify`.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::energy::{energy_comparison, energy_csv, EnergyConfig};
use crate::exact::{
    branch_and_bound, brute_force_min_inputs_capped, build_ilp_cycling, build_ilp_naive, read_solution, write_lp,
};
use crate::generators::{degree_preserving_randomize, GenSpec};
use crate::graph::io::{read_weighted_edge_list, write_edge_list_with, EdgeListOptions, LinkWeights};
use crate::graph::{lcc_length, ChainBound, DiGraph, InputSet};
use crate::lcc_solver::{bounds, solve_heuristic, Bounds, InputSetChecker, Solution};
use crate::metrics::{to_csv, ExperimentRecord};
use crate::Error;

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "LCC_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "lcc",
    version,
    about = "Minimum input nodes under a longest-control-chain budget"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Built-in graph: `chain:n`, `cycle:n`, `star:n`, `er:n,c` or `sf:n,c,gamma`.
#[derive(Clone, Debug, PartialEq)]
pub enum GenArg {
    Chain(usize),
    Cycle(usize),
    Star(usize),
    Er { n: usize, c: f64 },
    Sf { n: usize, c: f64, gamma: f64 },
}

impl FromStr for GenArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| format!("expected kind:params, got {s:?}"))?;
        let parts: Vec<&str> = params.split(',').map(str::trim).collect();
        let int = |x: &str| x.parse::<usize>().map_err(|_| format!("bad node count {x:?}"));
        let float = |x: &str| x.parse::<f64>().map_err(|_| format!("bad number {x:?}"));
        match (kind, parts.as_slice()) {
            ("chain", [n]) => Ok(GenArg::Chain(int(n)?)),
            ("cycle", [n]) => Ok(GenArg::Cycle(int(n)?)),
            ("star", [n]) => Ok(GenArg::Star(int(n)?)),
            ("er", [n, c]) => Ok(GenArg::Er {
                n: int(n)?,
                c: float(c)?,
            }),
            ("sf", [n, c, g]) => Ok(GenArg::Sf {
                n: int(n)?,
                c: float(c)?,
                gamma: float(g)?,
            }),
            _ => Err(format!("unknown generator {s:?}")),
        }
    }
}

impl fmt::Display for GenArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenArg::Chain(n) => write!(f, "chain:{n}"),
            GenArg::Cycle(n) => write!(f, "cycle:{n}"),
            GenArg::Star(n) => write!(f, "star:{n}"),
            GenArg::Er { n, c } => write!(f, "er:{n},{c}"),
            GenArg::Sf { n, c, gamma } => write!(f, "sf:{n},{c},{gamma}"),
        }
    }
}

impl GenArg {
    fn build(&self, seed: u64) -> crate::Result<DiGraph> {
        Ok(match *self {
            GenArg::Chain(n) => DiGraph::chain(n),
            GenArg::Cycle(n) => DiGraph::cycle(n),
            GenArg::Star(n) => DiGraph::star(n),
            GenArg::Er { n, c } => GenSpec::er(n, c, seed).generate()?,
            GenArg::Sf { n, c, gamma } => GenSpec::sf(n, c, gamma, seed).generate()?,
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Edge list with `tail head [weight]` lines.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// Built-in graph, e.g. `chain:9` or `er:1000,4`.
    #[arg(long)]
    pub gen: Option<GenArg>,
    /// Node ids in files and reports start at 1.
    #[arg(long)]
    pub one_based: bool,
    /// Keep self-loops found in the input file.
    #[arg(long)]
    pub self_loops: bool,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct Budget {
    /// Longest control chain allowed: a positive integer or `inf`.
    #[arg(long, default_value = "inf")]
    pub ell: ChainBound,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExactMethod {
    Bruteforce,
    Bnb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IlpVariant {
    Naive,
    Cycling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanModel {
    Er,
    Sf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coupled leaf-removal heuristic.
    Solve {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Exact minimum by enumeration or branch and bound.
    Exact {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value = "bruteforce")]
        method: ExactMethod,
        /// Largest graph accepted by enumeration.
        #[arg(long, default_value_t = crate::exact::DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        /// Search-node budget for branch and bound.
        #[arg(long, default_value_t = 10_000_000)]
        node_limit: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Lower and upper bounds on the minimum.
    Bounds {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Check a given input set; exits with 2 if it is not valid.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        /// Comma-separated node ids.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        inputs: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Ensemble sweep emitting one CSV row per instance and budget.
    Scan {
        /// Random model to sweep; omit to scan budgets on a fixed graph.
        #[arg(long, value_enum, conflicts_with_all = ["input", "gen"])]
        model: Option<ScanModel>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        gen: Option<GenArg>,
        #[arg(long)]
        one_based: bool,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Mean degrees: `a,b,c` or `start:stop:step`.
        #[arg(long, default_value = "2")]
        c: String,
        /// Degree exponents for the scale-free model.
        #[arg(long, default_value = "3")]
        gamma: String,
        /// Budgets: `1,2,inf` or `start:stop`.
        #[arg(long, default_value = "inf")]
        ell: String,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        /// Worker threads; 0 uses all available cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Also compute the gap to branch and bound with this node budget.
        #[arg(long)]
        exact_node_limit: Option<u64>,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Write an LP file, or check a solver's solution against it.
    ExportIlp {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, value_enum, default_value = "naive")]
        variant: IlpVariant,
        /// Solver output with `name value` lines to check instead.
        #[arg(long)]
        solution: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Degree-preserving randomization; writes an edge list.
    Randomize {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Control energy of chain-budget placement against matching-based placement.
    Energy {
        #[command(flatten)]
        source: Source,
        /// Input counts; defaults to every count from the unbounded minimum to the one-step minimum.
        #[arg(long, value_delimiter = ',')]
        m: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        t_f: f64,
        #[arg(long, default_value_t = crate::energy::DEFAULT_STEPS)]
        steps: usize,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Usage(String),
    Rejected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Loaded {
    g: DiGraph,
    weights: Option<LinkWeights>,
    tag: String,
    shift: usize,
}

impl Loaded {
    fn ids(&self, set: &InputSet) -> Vec<usize> {
        set.iter().map(|v| v + self.shift).collect()
    }
}

fn load(source: &Source) -> std::result::Result<Loaded, Failure> {
    load_parts(
        source.input.as_ref(),
        source.gen.as_ref(),
        source.one_based,
        source.self_loops,
        source.seed,
    )
}

fn load_parts(
    input: Option<&PathBuf>,
    gen: Option<&GenArg>,
    one_based: bool,
    self_loops: bool,
    seed: u64,
) -> std::result::Result<Loaded, Failure> {
    let shift = usize::from(one_based);
    match (input, gen) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let opts = EdgeListOptions {
                allow_self_loops: self_loops,
                one_based,
            };
            let (g, weights) = read_weighted_edge_list(&text, opts)?;
            Ok(Loaded {
                g,
                weights: Some(weights),
                tag: path.display().to_string(),
                shift,
            })
        }
        (None, Some(gen)) => Ok(Loaded {
            g: gen.build(seed)?,
            weights: None,
            tag: gen.to_string(),
            shift,
        }),
        _ => Err(Failure::Usage("give exactly one of --input and --gen".into())),
    }
}

fn config_hash(command: &Command) -> String {
    let digest = Sha256::digest(format!("{command:?}").as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn emit(out: &Output, text: &str, stdout: &mut dyn Write) -> Outcome {
    match &out.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn emit_json(out: &Output, value: &Value, stdout: &mut dyn Write) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(out, &text, stdout)
}

fn header(command: &str, loaded: &Loaded, ell: ChainBound, seed: u64, hash: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("source".into(), json!(loaded.tag));
    m.insert("n".into(), json!(loaded.g.node_count()));
    m.insert("links".into(), json!(loaded.g.link_count()));
    m.insert("ell".into(), json!(ell));
    m.insert("seed".into(), json!(seed));
    m.insert("config_hash".into(), json!(hash));
    m
}

fn solution_fields(m: &mut serde_json::Map<String, Value>, loaded: &Loaded, sol: &Solution) {
    m.insert("method".into(), json!(sol.method));
    m.insert("inputs".into(), json!(loaded.ids(&sol.inputs)));
    m.insert("n_inputs".into(), json!(sol.n_inputs));
    m.insert("valid".into(), json!(sol.valid));
    m.insert("m_core_size".into(), json!(sol.m_core_size));
    m.insert("ds_core_size".into(), json!(sol.ds_core_size));
    let lcc = lcc_length(&loaded.g, &sol.inputs).ok().flatten();
    m.insert("lcc_length".into(), json!(lcc));
}

fn bounds_value(b: &Bounds) -> Value {
    serde_json::to_value(b).expect("bounds serialize")
}

/// Comma list or inclusive `start:stop[:step]` range of numbers.
fn parse_sweep(s: &str) -> std::result::Result<Vec<f64>, Failure> {
    let bad = || Failure::Usage(format!("bad sweep {s:?}"));
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [list] => list.split(',').map(num).collect(),
        [a, b] | [a, b, _] => {
            let (start, stop) = (num(a)?, num(b)?);
            let step = if parts.len() == 3 { num(parts[2])? } else { 1.0 };
            if step <= 0.0 || stop < start {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            Ok((0..=count).map(|k| start + k as f64 * step).collect())
        }
        _ => Err(bad()),
    }
}

fn parse_budgets(s: &str) -> std::result::Result<Vec<ChainBound>, Failure> {
    let bad = |e: String| Failure::Usage(format!("bad budget list {s:?}: {e}"));
    if let Some((a, b)) = s.split_once(':') {
        let a: usize = a.parse().map_err(|_| bad("start".into()))?;
        let b: usize = b.parse().map_err(|_| bad("stop".into()))?;
        if a == 0 || b < a {
            return Err(bad("empty range".into()));
        }
        return Ok((a..=b).map(ChainBound::Steps).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse::<ChainBound>().map_err(|e| bad(e.to_string())))
        .collect()
}

/// Seed of the `k`-th instance derived from the master seed.
pub fn instance_seed(master: u64, k: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = master.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Job {
    spec: Option<GenSpec>,
    c: f64,
    gamma: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    command: &Command,
    model: Option<ScanModel>,
    fixed: Option<Loaded>,
    n: usize,
    c: &str,
    gamma: &str,
    ell: &str,
    instances: usize,
    threads: usize,
    exact_node_limit: Option<u64>,
    seed: u64,
    out: &Output,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Outcome {
    let budgets = parse_budgets(ell)?;
    let mut jobs = Vec::new();
    match (model, &fixed) {
        (Some(model), None) => {
            let gammas = match model {
                ScanModel::Er => vec![None],
                ScanModel::Sf => parse_sweep(gamma)?.into_iter().map(Some).collect(),
            };
            let mut k = 0;
            for &cv in &parse_sweep(c)? {
                for &gv in &gammas {
                    for _ in 0..instances {
                        let s = instance_seed(seed, k);
                        k += 1;
                        let spec = match gv {
                            None => GenSpec::er(n, cv, s),
                            Some(g) => GenSpec::sf(n, cv, g, s),
                        };
                        spec.validate()?;
                        jobs.push(Job {
                            spec: Some(spec),
                            c: cv,
                            gamma: gv,
                        });
                    }
                }
            }
        }
        (None, Some(loaded)) => jobs.push(Job {
            spec: None,
            c: loaded.g.link_count() as f64 / loaded.g.node_count().max(1) as f64,
            gamma: None,
        }),
        _ => return Err(Failure::Usage("scan needs --model, or one of --input/--gen".into())),
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start workers: {e}")))?;
    let rows: Vec<crate::Result<Vec<ExperimentRecord>>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let (g, tag, inst_seed) = match &job.spec {
                    Some(spec) => (spec.generate()?, spec.model.to_string(), spec.seed),
                    None => {
                        let l = fixed.as_ref().expect("fixed graph job");
                        (l.g.clone(), l.tag.clone(), seed)
                    }
                };
                Ok(budgets
                    .iter()
                    .map(|&b| {
                        let mut r = ExperimentRecord::measure(&tag, job.gamma, &g, b, inst_seed, exact_node_limit);
                        r.c = job.c;
                        r
                    })
                    .collect())
            })
            .collect()
    });
    let mut records = Vec::new();
    for r in rows {
        records.extend(r?);
    }
    let _ = writeln!(
        stderr,
        "seed={seed} config_hash={} rows={}",
        config_hash(command),
        records.len()
    );
    emit(out, &to_csv(&records), stdout)
}

fn dispatch(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let hash = config_hash(command);
    match command {
        Command::Solve { source, budget, out } => {
            let loaded = load(source)?;
            let sol = solve_heuristic(&loaded.g, budget.ell, source.seed);
            let mut m = header("solve", &loaded, budget.ell, source.seed, &hash);
            solution_fields(&mut m, &loaded, &sol);
            m.insert("bounds".into(), bounds_value(&bounds(&loaded.g, budget.ell)));
            emit_json(out, &Value::Object(m), stdout)
        }
        Command::Exact {
            source,
            budget,
            method,
            cap,
            node_limit,
            out,
        } => {
            let loaded = load(source)?;
            let mut m = header("exact", &loaded, budget.ell, source.seed, &hash);
            match method {
                ExactMethod::Bruteforce => {
                    let sol = brute_force_min_inputs_capped(&loaded.g, budget.ell, *cap)?;
                    solution_fields(&mut m, &loaded, &sol);
                    m.insert("optimal".into(), json!(true));
                }
                ExactMethod::Bnb => {
                    let res = branch_and_bound(&loaded.g, budget.ell, *node_limit);
                    solution_fields(&mut m, &loaded, &res.solution);
                    m.insert("optimal".into(), json!(res.optimal));
                    m.insert("explored".into(), json!(res.explored));
                }
            }
            emit_json(out, &Value::Object(m), stdout)
        }
        Command::Bounds { source, budget, out } => {
            let loaded = load(source)?;
            let mut m = header("bounds", &loaded, budget.ell, source.seed, &hash);
            m.insert("bounds".into(), bounds_value(&bounds(&loaded.g, budget.ell)));
            emit_json(out, &Value::Object(m), stdout)
        }
        Command::Verify {
            source,
            budget,
            inputs,
            out,
        } => {
            let loaded = load(source)?;
            let n = loaded.g.node_count();
            let shifted = inputs
                .iter()
                .map(|&v| {
                    v.checked_sub(loaded.shift)
                        .ok_or(Failure::Usage(format!("node id {v} is below the first id")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let set = InputSet::checked(n, shifted)?;
            let checker = InputSetChecker::new(&loaded.g, budget.ell);
            let mask = set.mask(n);
            let matching = checker.matching_condition(&mask);
            let domination = checker.domination_condition(&mask);
            let mut m = header("verify", &loaded, budget.ell, source.seed, &hash);
            m.insert("inputs".into(), json!(loaded.ids(&set)));
            m.insert("matching_condition".into(), json!(matching));
            m.insert("domination_condition".into(), json!(domination));
            m.insert("valid".into(), json!(matching && domination));
            m.insert("lcc_length".into(), json!(lcc_length(&loaded.g, &set).ok().flatten()));
            emit_json(out, &Value::Object(m), stdout)?;
            if matching && domination {
                Ok(())
            } else {
                Err(Failure::Rejected)
            }
        }
        Command::Scan {
            model,
            input,
            gen,
            one_based,
            n,
            c,
            gamma,
            ell,
            instances,
            threads,
            exact_node_limit,
            seed,
            out,
        } => {
            let fixed = match (input, gen) {
                (None, None) => None,
                _ => Some(load_parts(input.as_ref(), gen.as_ref(), *one_based, false, *seed)?),
            };
            cmd_scan(
                command,
                *model,
                fixed,
                *n,
                c,
                gamma,
                ell,
                *instances,
                *threads,
                *exact_node_limit,
                *seed,
                out,
                stdout,
                stderr,
            )
        }
        Command::ExportIlp {
            source,
            budget,
            variant,
            solution,
            out,
        } => {
            let loaded = load(source)?;
            let model = match variant {
                IlpVariant::Naive => build_ilp_naive(&loaded.g, budget.ell),
                IlpVariant::Cycling => build_ilp_cycling(&loaded.g, budget.ell),
            };
            match solution {
                None => {
                    let text = format!(
                        "\\ lcc export-ilp source={} ell={} seed={} config_hash={hash}\n{}",
                        loaded.tag,
                        budget.ell,
                        source.seed,
                        write_lp(&model)
                    );
                    emit(out, &text, stdout)
                }
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    let x = model.assignment_from(&read_solution(&text)?)?;
                    let mut m = header("export-ilp", &loaded, budget.ell, source.seed, &hash);
                    let violations = model.violations(&x);
                    m.insert("feasible".into(), json!(violations.is_empty()));
                    m.insert("objective".into(), json!(model.objective_value(&x)));
                    m.insert("violations".into(), json!(violations));
                    emit_json(out, &Value::Object(m), stdout)
                }
            }
        }
        Command::Randomize { source, epsilon, out } => {
            let loaded = load(source)?;
            let (g, stats) = degree_preserving_randomize(&loaded.g, *epsilon, source.seed)?;
            let _ = writeln!(stderr, "trials={} accepted={}", stats.trials, stats.accepted);
            let opts = EdgeListOptions {
                one_based: source.one_based,
                allow_self_loops: source.self_loops,
            };
            let text = format!(
                "# lcc randomize source={} epsilon={epsilon} trials={} seed={} config_hash={hash}\n{}",
                loaded.tag,
                stats.trials,
                source.seed,
                write_edge_list_with(&g, opts)
            );
            emit(out, &text, stdout)
        }
        Command::Energy {
            source,
            m,
            trials,
            t_f,
            steps,
            out,
        } => {
            let loaded = load(source)?;
            let ms = if m.is_empty() {
                let lo = solve_heuristic(&loaded.g, ChainBound::Unbounded, source.seed).n_inputs;
                let hi = solve_heuristic(&loaded.g, ChainBound::Steps(1), source.seed).n_inputs;
                (lo..=hi).collect()
            } else {
                m.clone()
            };
            let cfg = EnergyConfig {
                trials: *trials,
                seed: source.seed,
                t_f: *t_f,
                steps: *steps,
            };
            let rows = energy_comparison(&loaded.g, loaded.weights.as_ref(), &ms, &cfg)?;
            let _ = writeln!(stderr, "seed={} config_hash={hash}", source.seed);
            emit(out, &energy_csv(&rows), stdout)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 1 };
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Rejected) => 2,
    }
}
