use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jsplit_core::bimodule::{build_bimodule, RadicalKind};
use jsplit_core::io::{algebra_json, bimodule_json, extension_json, read_document, to_pretty, Document};
use jsplit_core::josp::{build_josp_matrix, build_josp_table};
use jsplit_core::ratlinalg::format_rational;
use jsplit_core::splitting::{
    build_counterexample, canonical_extension, seeded_perturbations, solve_splitting, SplitCertificate,
};
use jsplit_core::structure::{peirce_decompose, verify_peirce_relations, IdempotentFamily};
use jsplit_core::suite::{cmd_counterexample, cmd_suite, RunReport, SuiteOptions};
use jsplit_core::superalgebra::{check_super_jordan, check_supercommutative};

#[derive(Parser)]
#[command(name = "jsplit", version, about = "Exact computations with orthosymplectic Jordan superalgebras")]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Realization {
    Table,
    Matrix,
}

#[derive(Subcommand)]
enum Command {
    /// Build Josp(n|2m).
    Josp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "table")]
        realization: Realization,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a bimodule over Josp(n|2m): reg, skew, reg-op or skew-op.
    Bimodule {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kind: RadicalKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split null extension of an algebra by a bimodule.
    Extend {
        algebra: PathBuf,
        module: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Supercommutativity and super-Jordan identity of an algebra or extension file.
    Check { file: PathBuf },
    /// Peirce decomposition relative to basis idempotents given by label.
    Peirce {
        file: PathBuf,
        #[arg(long)]
        idempotents: String,
    },
    /// Solve for a multiplicative section of an extension.
    Split {
        file: PathBuf,
        /// Move the section by a random correction first.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the non-splitting example through the whole pipeline.
    Counterexample {
        /// Also write the extension file here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        perturbations: usize,
        #[arg(long)]
        timing: bool,
    },
    /// Batch run over a grid of (n, m) and bimodule kinds.
    Suite {
        /// Grid points as `n,m` separated by `;`.
        #[arg(long, default_value = "1,1")]
        grid: String,
        /// Comma-separated kinds; empty for none.
        #[arg(long, default_value = "reg")]
        kinds: String,
        #[arg(long)]
        counterexample: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5)]
        perturbations: usize,
        #[arg(long)]
        timing: bool,
    },
}

fn parse_grid(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (n, m) = p.split_once(',').with_context(|| format!("grid point {p:?} is not n,m"))?;
            Ok((n.trim().parse()?, m.trim().parse()?))
        })
        .collect()
}

fn parse_kinds(s: &str) -> Result<Vec<RadicalKind>> {
    s.split(',')
        .map(str::trim)
        .filter(|k| !k.is_empty())
        .map(|k| Ok(k.parse()?))
        .collect()
}

/// Writes `text` to `out`, or to stdout when no path is given.
fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn report(r: &RunReport) -> Result<bool> {
    println!("{}", to_pretty(r));
    let passed = r.verdicts.iter().filter(|v| v.pass).count();
    eprintln!("{}: {passed}/{} verdicts as expected", r.command, r.verdicts.len());
    if let Some(v) = r.first_failure() {
        eprintln!(
            "first failure: {} on {} (expected {}, observed {})",
            v.operation, v.input, v.expected, v.observed
        );
    }
    Ok(r.all_pass())
}

fn split_json(cert: &SplitCertificate) -> Value {
    match cert {
        SplitCertificate::Split(tau) => json!({
            "result": "split",
            "tau": tau
                .entries()
                .iter()
                .map(|(a, r, c)| json!([a, r, format_rational(c)]))
                .collect::<Vec<_>>(),
        }),
        SplitCertificate::NoSplit { witness, violated_pairs } => json!({
            "result": "no-split",
            "witness": witness.iter().map(format_rational).collect::<Vec<_>>(),
            "violated_pairs": violated_pairs,
        }),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Josp { n, m, realization, out } => {
            let alg = match realization {
                Realization::Table => build_josp_table(n, m)?,
                Realization::Matrix => build_josp_matrix(n, m)?,
            };
            eprintln!("{}: dim {}", alg.name(), alg.dim());
            emit(&algebra_json(&alg), out.as_deref())?;
        }
        Command::Bimodule { n, m, kind, out } => {
            let module = build_bimodule(n, m, kind)?;
            eprintln!("{}: dim {}", module.name(), module.dim());
            emit(&bimodule_json(&module), out.as_deref())?;
        }
        Command::Extend { algebra, module, out } => {
            let Some(alg) = read_document(&algebra)?.algebra().cloned() else {
                bail!("{} is not an algebra file", algebra.display());
            };
            let Document::Bimodule(module) = read_document(&module)? else {
                bail!("{} is not a bimodule file", module.display());
            };
            let ext = canonical_extension(&alg, &module)?;
            eprintln!("{}: dim {}, ideal of dim {}", ext.algebra().name(), ext.algebra().dim(), ext.rad_dim());
            emit(&extension_json(&ext), out.as_deref())?;
        }
        Command::Check { file } => {
            let doc = read_document(&file)?;
            let Some(alg) = doc.algebra() else {
                bail!("{} holds a bimodule; check an extension built from it instead", file.display());
            };
            let comm = check_supercommutative(alg);
            let jordan = check_super_jordan(alg);
            let verdict = json!({
                "algebra": alg.name(),
                "dim": alg.dim(),
                "supercommutative": comm.holds,
                "supercommutative_violations": comm.violations.len(),
                "super_jordan": jordan.holds,
                "super_jordan_violations": jordan.violations.len(),
            });
            println!("{}", to_pretty(&verdict));
            let ok = comm.holds && jordan.holds;
            eprintln!("{}: {}", alg.name(), if ok { "Jordan superalgebra" } else { "identities fail" });
            return Ok(ok);
        }
        Command::Peirce { file, idempotents } => {
            let doc = read_document(&file)?;
            let Some(alg) = doc.algebra() else {
                bail!("{} holds a bimodule", file.display());
            };
            let labels: Vec<&str> = idempotents.split(',').map(str::trim).collect();
            let family = IdempotentFamily::from_labels(alg, &labels)?;
            let d = peirce_decompose(alg, &family)?;
            let rel = verify_peirce_relations(&d)?;
            let components: Vec<Value> = d
                .dims()
                .iter()
                .map(|(&(i, j), dim)| json!({"i": i + 1, "j": j + 1, "dim": dim}))
                .collect();
            println!("{}", to_pretty(&json!({"components": components, "relations": rel.holds})));
            eprintln!("{} components, relations {}", components.len(), if rel.holds { "hold" } else { "fail" });
            return Ok(rel.holds);
        }
        Command::Split { file, seed } => {
            let Document::Extension(mut ext) = read_document(&file)? else {
                bail!("{} is not an extension file", file.display());
            };
            if let Some(seed) = seed {
                ext = seeded_perturbations(&ext, seed, 1)?.remove(0);
            }
            let cert = solve_splitting(&ext)?;
            println!("{}", to_pretty(&split_json(&cert)));
            eprintln!("{}: {}", ext.algebra().name(), if cert.is_split() { "split" } else { "no split" });
        }
        Command::Counterexample { out, seed, perturbations, timing } => {
            if let Some(path) = out {
                emit(&extension_json(&build_counterexample()?), Some(&path))?;
            }
            return report(&cmd_counterexample(seed, perturbations, timing)?);
        }
        Command::Suite { grid, kinds, counterexample, seed, perturbations, timing } => {
            let opts = SuiteOptions {
                grid: parse_grid(&grid)?,
                kinds: parse_kinds(&kinds)?,
                counterexample,
                seed,
                perturbations,
                timing,
            };
            return report(&cmd_suite(&opts)?);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
