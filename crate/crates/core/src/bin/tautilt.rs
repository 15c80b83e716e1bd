use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use tautilt::group::FiniteGroup;
use tautilt::session::{
    block_summary, induce_summary, mackey_summary, stt_artifacts, verify_artifacts, FieldDegree,
    ModuleSource, SessionConfig,
};
use tautilt::verify::TheoremId;

const EXIT_PARSE: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_NOT_NORMAL: u8 = 4;
const EXIT_VERIFY: u8 = 5;

#[derive(Parser)]
#[command(
    name = "tautilt",
    version,
    about = "Blocks, support tau-tilting posets and induction for modular group algebras"
)]
struct Cli {
    /// Directory for cached posets and reports ($TAUTILT_CACHE takes precedence).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    #[arg(long, global = true)]
    node_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u32,
    /// Extension degree, or "auto" for the smallest splitting field.
    #[arg(long, default_value = "auto")]
    m: String,
}

#[derive(Subcommand)]
enum Command {
    /// Block decomposition of the group algebra as JSON.
    Blocks {
        group: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Enumerate the support tau-tilting poset and write DOT/JSON.
    Stt {
        group: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        /// Restrict to one block; the whole algebra otherwise.
        #[arg(long)]
        block: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Comma-separated names for the simples, in catalog order.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
    /// Check the induction statements for a normal subgroup.
    Verify {
        sub: PathBuf,
        amb: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        /// Block of the subgroup algebra.
        #[arg(long, default_value_t = 0)]
        block: usize,
        /// "all" or a comma-separated list such as L3.1,T3.2.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induce a module and list the summands.
    Induce {
        sub: PathBuf,
        amb: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        /// trivial, regular, simple:<i>, pim:<i> or a module JSON file.
        #[arg(long)]
        module: String,
        /// Cut by this block of the overgroup algebra.
        #[arg(long)]
        block: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check Res Ind M against the sum of conjugates with an explicit witness.
    Mackey {
        sub: PathBuf,
        amb: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        module: String,
    },
}

/// An input file that could not be read.
#[derive(Debug)]
struct InputError(PathBuf);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cannot read {}", self.0.display())
    }
}

impl std::error::Error for InputError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.chain().any(|c| c.is::<InputError>()) {
        return EXIT_PARSE;
    }
    match e.chain().find_map(|c| c.downcast_ref::<tautilt::Error>()) {
        Some(err) if err.is_cap() => EXIT_CAP,
        Some(tautilt::Error::NotNormal) => EXIT_NOT_NORMAL,
        Some(
            tautilt::Error::Parse(_)
            | tautilt::Error::Json(_)
            | tautilt::Error::InvalidPermutation(_)
            | tautilt::Error::NotPrime(_)
            | tautilt::Error::BadExtensionDegree(_)
            | tautilt::Error::BadModulus(_)
            | tautilt::Error::FieldTooLarge { .. },
        ) => EXIT_PARSE,
        _ => 1,
    }
}

fn config(cli: &Cli, field: &FieldArgs) -> Result<SessionConfig> {
    let mut c = SessionConfig::new(field.p);
    c.m = field.m.parse::<FieldDegree>()?;
    c.cache_dir = cli.cache_dir.clone();
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    if let Some(n) = cli.order_cap {
        c.order_cap = n;
    }
    if let Some(n) = cli.dim_cap {
        c.dim_cap = n;
    }
    if let Some(n) = cli.node_cap {
        c.node_cap = n;
    }
    let c = c.with_env_cache();
    c.apply()?;
    Ok(c)
}

fn group(c: &SessionConfig, path: &Path) -> Result<Arc<FiniteGroup>> {
    let text = fs::read_to_string(path).map_err(|_| InputError(path.to_owned()))?;
    c.parse_group(&text)
        .with_context(|| format!("loading {}", path.display()))
}

fn module_source(s: &str) -> Result<ModuleSource> {
    let src: ModuleSource = s.parse()?;
    if let ModuleSource::File(p) = &src {
        if !p.is_file() {
            return Err(InputError(p.clone()).into());
        }
    }
    Ok(src)
}

/// Prints to stdout; a closed pipe is not an error.
fn print(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print(text);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Blocks { group: g, field } => {
            let c = config(&cli, field)?;
            let g = group(&c, g)?;
            print(&serde_json::to_string_pretty(&block_summary(&c, &g)?)?);
        }
        Command::Stt {
            group: g,
            field,
            block,
            dot,
            json,
            names,
        } => {
            let c = config(&cli, field)?;
            let g = group(&c, g)?;
            let art = match stt_artifacts(&c, &g, *block, names.as_deref()) {
                Err(e) if e.is_cap() => {
                    return Err(
                        anyhow::Error::new(e).context("enumeration stopped, no files written")
                    );
                }
                r => r?,
            };
            if let Some(p) = dot {
                fs::write(p, &art.dot).with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(p) = json {
                fs::write(p, &art.json).with_context(|| format!("writing {}", p.display()))?;
            }
            print(&art.summary());
        }
        Command::Verify {
            sub,
            amb,
            field,
            block,
            theorems,
            out,
        } => {
            let c = config(&cli, field)?;
            let ids = TheoremId::parse_list(theorems)?;
            let (sub, amb) = (group(&c, sub)?, group(&c, amb)?);
            let art = verify_artifacts(&c, &sub, &amb, *block, &ids)?;
            emit(out.as_deref(), &art.report)?;
            if !art.passed {
                let report: serde_json::Value = serde_json::from_str(&art.report)?;
                for t in report["theorems"].as_array().into_iter().flatten() {
                    for cl in t["clauses"]
                        .as_array()
                        .into_iter()
                        .flatten()
                        .filter(|cl| cl["passed"] == false)
                    {
                        eprintln!(
                            "FAIL {} {}: {} ({})",
                            t["theorem"], cl["name"], cl["input"], cl["detail"]
                        );
                    }
                }
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Induce {
            sub,
            amb,
            field,
            module,
            block,
            out,
        } => {
            let c = config(&cli, field)?;
            let src = module_source(module)?;
            let (sub, amb) = (group(&c, sub)?, group(&c, amb)?);
            let s = induce_summary(&c, &sub, &amb, &src, *block)?;
            emit(out.as_deref(), &serde_json::to_string_pretty(&s)?)?;
        }
        Command::Mackey {
            sub,
            amb,
            field,
            module,
        } => {
            let c = config(&cli, field)?;
            let src = module_source(module)?;
            let (sub, amb) = (group(&c, sub)?, group(&c, amb)?);
            let s = mackey_summary(&c, &sub, &amb, &src)?;
            print(&serde_json::to_string_pretty(&s)?);
            if !s.witness_verified {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(0)
}
