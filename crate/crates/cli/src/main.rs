use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use noninner::corpus::{load_corpus, CorpusEntry};
use noninner::derivations::{derivation_space, inner_space, oracle_compare, ModuleAction};
use noninner::engine::{analyze, verify_certificate, Certificate, Config, DEFAULT_ANALYSIS_CAP};
use noninner::error::{EngineError, PcError, StructureError};
use noninner::identities::{check_identities, IdentityConfig};
use noninner::pc::DEFAULT_MAX_ORDER;
use noninner::{Error, PcGroup};

#[derive(Parser)]
#[command(name = "noninner", version, about = "Find and certify non-inner automorphisms of order p of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Route a group through the criteria and print the certificate summary.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ANALYSIS_CAP)]
        max_order: usize,
        /// Write the certificate here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Built-in regression groups.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Re-check a certificate against a presentation.
    Verify { file: PathBuf, cert: PathBuf },
    /// Dimensions of the derivation and inner derivation spaces per level.
    Derivations {
        file: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Compare the linear solver with exhaustive enumeration of image tuples.
    OracleCompare { file: PathBuf },
    /// Check the class-3 commutator identities of a 3-group.
    Identities {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = IdentityConfig::default().seed)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Analyze and verify every entry, writing one certificate per entry.
    Run {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value = "certificates")]
        out: PathBuf,
    },
    /// List entry names and expected profiles.
    List,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let capped = error.chain().any(|c| {
            matches!(c.downcast_ref::<PcError>(), Some(PcError::CapExceeded { .. }))
                || matches!(c.downcast_ref::<EngineError>(), Some(EngineError::CapExceeded { .. }))
                || matches!(c.downcast_ref::<StructureError>(), Some(StructureError::CapExceeded { .. }))
                || matches!(
                    c.downcast_ref::<Error>(),
                    Some(Error::Pc(PcError::CapExceeded { .. }) | Error::Engine(EngineError::CapExceeded { .. }))
                )
        });
        Failure { code: if capped { 2 } else { 1 }, error }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure { code: 1, error: anyhow!(message.into()) }
}

fn load(path: &Path, cap: usize) -> Result<PcGroup, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(PcGroup::from_text(&text, cap).with_context(|| format!("loading {}", path.display()))?)
}

/// Write via a sibling temporary file and rename, so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let name = path.file_name().ok_or_else(|| anyhow!("{} has no file name", path.display()))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming {} to {}", tmp.display(), path.display()))?;
    Ok(())
}

fn summary(g: &PcGroup, cert: &Certificate) -> String {
    let pr = &cert.profile;
    let mut s = format!(
        "order {} = {}^{}, class {}, d(G) = {}, Z(G) = {:?}\ncriterion: {}\n",
        pr.order,
        pr.prime,
        g.ngens(),
        pr.class,
        pr.d,
        pr.center.invariants,
        cert.criterion
    );
    match &cert.witness {
        Some(w) => {
            s += &format!("witness ({}, order {}, fixes Phi: {}):\n", w.construction, w.order, w.fixes_frattini);
            for (k, e) in w.generator_images.iter().enumerate() {
                s += &format!("  g{} -> {}\n", k + 1, g.format(g.element(e)));
            }
        }
        None => s += "no witness within the caps recorded in the transcript\n",
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { file, max_order, json } => {
            let g = load(&file, max_order)?;
            let config = Config { max_order, ..Config::default() };
            let cert = analyze(&g, &config)?;
            print!("{}", summary(&g, &cert));
            if let Some(out) = json {
                write_atomic(&out, &cert.to_json())?;
                println!("certificate written to {}", out.display());
            }
        }
        Command::Corpus { command: CorpusCommand::List } => {
            for e in load_corpus() {
                println!("{:<10} order {:>5}  class {}  d {}  Z {:?}  {}", e.name, e.order, e.class, e.d, e.center, e.criterion);
            }
        }
        Command::Corpus { command: CorpusCommand::Run { filter, out } } => {
            let entries: Vec<CorpusEntry> =
                load_corpus().into_iter().filter(|e| filter.as_deref().map_or(true, |f| e.name.contains(f))).collect();
            if entries.is_empty() {
                return Err(fail("no corpus entry matches the filter"));
            }
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let results: Vec<(&str, Result<String, String>)> =
                entries.par_iter().map(|e| (e.name, run_entry(e, &out).map_err(|f| format!("{:#}", f.error)))).collect();
            let mut failed = 0;
            for (name, r) in &results {
                match r {
                    Ok(line) => println!("ok    {name:<10} {line}"),
                    Err(msg) => {
                        failed += 1;
                        println!("FAIL  {name:<10} {msg}");
                    }
                }
            }
            if failed > 0 {
                return Err(fail(format!("{failed} of {} corpus entries failed", results.len())));
            }
        }
        Command::Verify { file, cert } => {
            let g = load(&file, DEFAULT_MAX_ORDER)?;
            let text = fs::read_to_string(&cert).with_context(|| format!("reading {}", cert.display()))?;
            let cert = Certificate::from_json(&text).with_context(|| format!("parsing {}", cert.display()))?;
            verify_certificate(&g, &cert)?;
            println!("verified: {}", cert.criterion);
        }
        Command::Derivations { file, level } => {
            let g = load(&file, DEFAULT_MAX_ORDER)?;
            let action = ModuleAction::build(&g)?;
            let levels: Vec<usize> = match level {
                Some(i) => vec![i],
                None => (1..=action.class() + 1).collect(),
            };
            println!("d(A) = {}, d(G) = {}, class {}", action.dim(), action.rank(), action.class());
            for i in levels {
                let i = i as isize;
                let der = derivation_space(&g, &action, action.level(i - 1), None)?;
                let ider = inner_space(&g, &action, &action.a_star_level(&g, i))?;
                println!(
                    "level {i}: d(Der(A_{})) = {} (bound {}, kernels {:?}), d(Ider(A* meet Z_{i})) = {}, d(A_{i}) = {}",
                    i - 1,
                    der.dim(),
                    der.lower_bound(),
                    der.kernel_dims(),
                    ider.dim(),
                    action.level_dim(i)
                );
            }
        }
        Command::OracleCompare { file } => {
            let g = load(&file, DEFAULT_MAX_ORDER)?;
            let action = ModuleAction::build(&g)?;
            let mut differ = false;
            let targets = (1..=3).map(|i| (format!("A_{i}"), action.level(i).clone())).chain([("A".into(), action.full())]);
            for (label, c) in targets {
                match oracle_compare(&g, &action, &c) {
                    Some(r) if r.equal => println!("C = {label}: EQUAL (dim {})", r.dim),
                    Some(r) => {
                        differ = true;
                        println!("C = {label}: DIFFER (solver dim {}, enumeration found {} tuples)", r.dim, r.brute_count);
                    }
                    None => println!("C = {label}: SKIPPED (enumeration exceeds the tuple cap)"),
                }
            }
            if differ {
                return Err(fail("solver and enumeration disagree"));
            }
        }
        Command::Identities { file, samples, seed } => {
            let g = load(&file, DEFAULT_MAX_ORDER)?;
            let config = IdentityConfig { samples, seed, ..IdentityConfig::default() };
            let report = check_identities(&g, &config).map_err(fail)?;
            println!("{}", if report.exhaustive { "exhaustive" } else { "sampled" });
            for r in &report.results {
                println!("{:<45} cases {:>7}  violations {}", r.name, r.cases, r.violations);
                if let Some(v) = &r.first_violation {
                    println!("    first violation: {v}");
                }
            }
            if report.violations() > 0 {
                return Err(fail(format!("{} violations", report.violations())));
            }
        }
    }
    Ok(())
}

fn run_entry(e: &CorpusEntry, out: &Path) -> Result<String, Failure> {
    let g = e.group()?;
    let cert = analyze(&g, &Config::default())?;
    verify_certificate(&g, &cert)?;
    let pr = &cert.profile;
    let observed = (pr.order, pr.class, pr.d, pr.center.invariants.as_slice(), cert.criterion);
    let expected = (e.order, e.class, e.d, e.center, e.criterion);
    if observed != expected {
        return Err(fail(format!("expected {expected:?}, computed {observed:?}")));
    }
    let path = out.join(format!("{}.json", e.name));
    write_atomic(&path, &cert.to_json())?;
    Ok(format!("{} -> {}", cert.criterion, path.display()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
