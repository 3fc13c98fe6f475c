mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clusterchar::cluster::DEFAULT_SEED_LIMIT;
use clusterchar::suites::{self, SuiteParams, SUITE_NAMES};
use clusterchar::{AnyRep, Engine, Error, LaurentPoly, Quiver, Seed};
use serde_json::{json, Value};

use config::{Output, RunConfig};

/// Seeds explored by `enumerate` on quivers of infinite type.
const INFINITE_TYPE_LIMIT: usize = 20;

#[derive(Parser)]
#[command(name = "clusterchar", version, about = "Generic cluster characters of acyclic quivers")]
struct Cli {
    /// key=value configuration file
    #[arg(long, global = true, env = "CLUSTERCHAR_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    rng_seed: Option<u64>,
    /// Character cache file (JSON)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver file utilities
    Quiver {
        #[command(subcommand)]
        action: QuiverAction,
    },
    /// Cluster character of a generic representation or of a representation file
    Cc {
        quiver: PathBuf,
        /// Dimension vector, e.g. 1,0
        #[arg(conflicts_with = "rep", required_unless_present = "rep")]
        dim: Option<String>,
        /// Representation JSON file
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Generic character of an index
    Genchar {
        quiver: PathBuf,
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
    /// Generic decomposition of a dimension vector
    Gendecomp { quiver: PathBuf, dim: String },
    /// Virtual generic decomposition of an integer vector
    Vgendecomp {
        quiver: PathBuf,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// Mutate the initial seed along a sequence of vertices
    Mutate { quiver: PathBuf, vertices: Vec<usize> },
    /// Breadth-first enumeration of seeds and cluster variables
    Enumerate {
        quiver: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        quiver: PathBuf,
    },
}

#[derive(Subcommand)]
enum QuiverAction {
    Validate { quiver: PathBuf },
}

enum Failure {
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

type CmdResult = Result<bool, Failure>;

fn parse_vector(text: &str) -> Result<Vec<i64>, Failure> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad integer vector `{text}`"))))
        .collect()
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Module(Error::Io(format!("{}: {e}", path.display()))))
}

fn load_quiver(path: &Path) -> Result<Quiver, Failure> {
    Ok(Quiver::parse(&read_file(path)?)?)
}

struct App {
    cfg: RunConfig,
}

impl App {
    fn engine(&self, quiver: Quiver) -> Result<Engine, Failure> {
        let engine = Engine::new(quiver, self.cfg.settings());
        Ok(match &self.cfg.cache_path {
            Some(p) => engine.with_cache_file(p)?,
            None => engine,
        })
    }

    fn json(&self) -> bool {
        self.cfg.output == Output::Json
    }

    fn print_poly(&self, p: &LaurentPoly) {
        if self.json() {
            println!("{}", serde_json::to_string(p).expect("polynomial serializes"));
        } else {
            println!("{p}");
        }
    }

    fn run(&self, command: &Command) -> CmdResult {
        match command {
            Command::Quiver { action: QuiverAction::Validate { quiver } } => {
                let q = load_quiver(quiver)?;
                if self.json() {
                    let spec = serde_json::to_value(q.to_spec()).expect("spec serializes");
                    println!("{}", json!({ "valid": true, "quiver": spec, "dynkin": q.is_dynkin() }));
                } else {
                    let kind = if q.is_dynkin() { "Dynkin" } else { "not Dynkin" };
                    println!("valid: {} vertices, {} arrows, {kind}", q.vertex_count(), q.arrows().len());
                }
                Ok(true)
            }
            Command::Cc { quiver, dim, rep } => {
                let engine = self.engine(load_quiver(quiver)?)?;
                let value = match (dim, rep) {
                    (Some(d), _) => engine.cc_generic(&parse_vector(d)?)?,
                    (None, Some(path)) => {
                        let raw: Value = serde_json::from_str(&read_file(path)?)
                            .map_err(|e| Failure::Module(Error::Parse(e.to_string())))?;
                        let m = AnyRep::from_json(&raw)?.into_rational();
                        if **m.quiver() != **engine.quiver() {
                            return Err(Error::QuiverMismatch.into());
                        }
                        engine.cc_module(&m)?
                    }
                    (None, None) => unreachable!("clap requires a dimension vector or --rep"),
                };
                self.print_poly(&value);
                Ok(true)
            }
            Command::Genchar { quiver, gamma } => {
                let engine = self.engine(load_quiver(quiver)?)?;
                let value = engine.generic_character(&parse_vector(gamma)?)?;
                engine.flush_cache()?;
                self.print_poly(&value);
                Ok(true)
            }
            Command::Gendecomp { quiver, dim } => {
                let engine = self.engine(load_quiver(quiver)?)?;
                let parts = engine.generic_decomposition(&parse_vector(dim)?)?;
                if self.json() {
                    println!("{}", json!({ "summands": parts }));
                } else if parts.is_empty() {
                    println!("0");
                } else {
                    let parts: Vec<String> = parts.iter().map(|p| fmt_vec(p)).collect();
                    println!("{}", parts.join(" + "));
                }
                Ok(true)
            }
            Command::Vgendecomp { quiver, alpha } => {
                let engine = self.engine(load_quiver(quiver)?)?;
                let (betas, gamma) = engine.virtual_generic_decomposition(&parse_vector(alpha)?)?;
                if self.json() {
                    println!("{}", json!({ "betas": betas, "gamma": gamma }));
                } else {
                    let betas: Vec<String> = betas.iter().map(|b| fmt_vec(b)).collect();
                    println!("betas: {}", if betas.is_empty() { "none".into() } else { betas.join(" ") });
                    println!("gamma: {}", fmt_vec(&gamma));
                }
                Ok(true)
            }
            Command::Mutate { quiver, vertices } => {
                let q = load_quiver(quiver)?;
                let mut seed = Seed::initial(&q);
                for &k in vertices {
                    if k == 0 {
                        return Err(Error::BadVertex(0).into());
                    }
                    seed = seed.mutate(k - 1)?;
                }
                if self.json() {
                    let cluster: Vec<Value> = seed.cluster.iter().map(LaurentPoly::to_json_value).collect();
                    println!("{}", json!({ "b": seed.b, "cluster": cluster }));
                } else {
                    let rows: Vec<String> = seed.b.iter().map(|r| fmt_vec(r)).collect();
                    println!("B = [{}]", rows.join(" "));
                    for (i, x) in seed.cluster.iter().enumerate() {
                        println!("x{}' = {x}", i + 1);
                    }
                }
                Ok(true)
            }
            Command::Enumerate { quiver, limit } => {
                let q = load_quiver(quiver)?;
                let default = if q.is_dynkin() { DEFAULT_SEED_LIMIT } else { INFINITE_TYPE_LIMIT };
                let e = clusterchar::enumerate_seeds(&q, limit.unwrap_or(default))?;
                if self.json() {
                    println!("{}", e.report_json());
                } else {
                    println!("clusters: {}", e.cluster_count());
                    println!("variables: {}", e.variable_count());
                    println!("closed: {}", e.closed);
                    let mut vars: Vec<String> = e.variables.keys().map(ToString::to_string).collect();
                    vars.sort();
                    for v in vars {
                        println!("{v}");
                    }
                }
                Ok(true)
            }
            Command::Verify { suite, quiver } => {
                let engine = self.engine(load_quiver(quiver)?)?;
                let report = suites::run_suite(&engine, suite, &SuiteParams::default())?;
                engine.flush_cache()?;
                if self.json() {
                    println!("{}", report.to_json());
                } else {
                    for case in &report.cases {
                        let verdict = if case.pass { "PASS" } else { "FAIL" };
                        println!("{verdict} {}: {}", case.label, case.detail);
                    }
                    println!("{}", report.summary());
                }
                Ok(report.all_pass())
            }
        }
    }
}

fn report_failure(failure: Failure, json_mode: bool) -> ExitCode {
    let (name, message, code) = match failure {
        Failure::Usage(msg) => ("Usage", msg, 2),
        Failure::Module(e) => {
            let code = if e.is_internal() { 3 } else { 1 };
            (e.name(), e.to_string(), code)
        }
    };
    if json_mode {
        println!("{}", json!({ "error": name, "message": message }));
    }
    eprintln!("error: {name}: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => return report_failure(Failure::Usage(e.to_string()), cli.json),
        },
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.rng_seed {
        cfg.rng_seed = seed;
    }
    if let Some(cache) = &cli.cache {
        cfg.cache_path = Some(cache.clone());
    }
    if cli.json {
        cfg.output = Output::Json;
    }
    let app = App { cfg };
    match app.run(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => report_failure(f, app.json()),
    }
}
