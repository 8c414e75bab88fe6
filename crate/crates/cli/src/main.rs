use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use liaison_core::io::{parse_ideal, write_ideal};
use liaison_core::liaison::{link, sample_ci};
use liaison_core::resolution::betti_table;
use liaison_core::scenarios::{run_scenario, Scenario, ScenarioParams};
use liaison_core::suite::run_acceptance;
use liaison_core::DEFAULT_PRIME;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "liaison", about = "Minimal linkage of homogeneous ideals over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named scenario, run its linkage driver and evaluate its checks.
    Run {
        scenario: String,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 8)]
        max_steps: usize,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the minimal Betti table of an ideal file.
    Betti {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Link an ideal by a random complete intersection of the given degrees.
    Link {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the residual ideal here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_json(path: &Option<PathBuf>, v: &Value) -> Result<()> {
    if let Some(p) = path {
        write_atomic(p, &(serde_json::to_string_pretty(v)? + "\n"))?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool> {
    match Cli::parse().command {
        Command::Run {
            scenario,
            d,
            e,
            n,
            s,
            seed,
            prime,
            max_steps,
            json,
        } => {
            let params = ScenarioParams {
                d,
                e,
                n,
                s,
                seed,
                prime,
                max_steps,
            };
            let sc = Scenario::new(&scenario, params)?;
            let rep = run_scenario(&sc)?;
            println!("{rep}");
            write_json(&json, &rep.to_json())?;
            if !rep.passed() {
                eprintln!("{} check(s) failed", rep.checks.iter().filter(|c| !c.pass && !c.advisory).count());
            }
            Ok(rep.passed())
        }
        Command::Betti { file, json } => {
            let i = parse_ideal(&read(&file)?)?;
            let b = betti_table(&i)?;
            println!("{b}");
            println!("h-vector {:?}, dimension {}, degree {}", i.h_vector().coefficients, i.dimension(), i.degree());
            write_json(&json, &b.to_json())?;
            Ok(true)
        }
        Command::Link {
            file,
            degrees,
            seed,
            out,
            json,
        } => {
            let i = parse_ideal(&read(&file)?)?;
            if degrees.len() != i.codimension() {
                bail!(
                    "{} degrees given for an ideal of codimension {}",
                    degrees.len(),
                    i.codimension()
                );
            }
            let ci = sample_ci(&i, &degrees, seed)?;
            let step = link(&i, &ci)?;
            let text = write_ideal(&step.residual);
            match &out {
                Some(p) => write_atomic(p, &text)?,
                None => print!("{text}"),
            }
            eprintln!(
                "linked by {:?}: mu {} -> {}, degree {} -> {}",
                ci.degrees(),
                step.mu_before,
                step.mu_after,
                step.degree_before,
                step.degree_after
            );
            eprintln!("{}", step.betti_after);
            let mut v = step.to_json();
            v["seed"] = json!(seed);
            v["ring"] = json!(liaison_core::io::ring_header(i.ring()));
            write_json(&json, &v)?;
            Ok(true)
        }
        Command::VerifyAll { json } => {
            let outcomes = run_acceptance();
            for o in &outcomes {
                let tag = if o.pass { "PASS" } else { "FAIL" };
                println!("criterion {:>2} {tag}  {}", o.id, o.title);
                if !o.pass {
                    println!("    {}", o.detail);
                }
            }
            let all = outcomes.iter().all(|o| o.pass);
            println!("{}/{} criteria pass", outcomes.iter().filter(|o| o.pass).count(), outcomes.len());
            write_json(&json, &serde_json::to_value(&outcomes)?)?;
            Ok(all)
        }
    }
}
