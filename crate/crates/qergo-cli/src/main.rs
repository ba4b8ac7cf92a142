//! qergo — verification runs over tensor-power actions at desk scale.
//!
//! Every run writes a JSON record (full config + content hash) and CSV
//! tables; identical config and seed reproduce the report bytes exactly.
//! Exit status is 0 only when all asserted identities pass.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use commands::{Backend, QSpec};
use report::Outcome;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qergo",
    version,
    about = "Exact and floating verification of tensor-power action identities: \
             Temperley-Lieb relations and Markov traces, quasi-free states on \
             isometry word algebras, modular spectra and factor types, magic \
             unitaries, and finite quotient spaces"
)]
struct Cli {
    /// Output directory for reports (default: $QERGO_OUT_DIR or ./qergo-reports)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Key-value file (key = value per line) supplying flags not given on the
    /// command line
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Temperley-Lieb tower checks
    Tl {
        #[command(subcommand)]
        sub: TlCmd,
    },
    /// Markov trace table τ(w), τ(w e_{k−1}) over normal-form words
    Markov(MarkovArgs),
    /// TL span vs classical fixed-space dimension at the same (n, k)
    Contrast(ContrastArgs),
    /// Isometry word algebra and the quasi-free state
    Cuntz {
        #[command(subcommand)]
        sub: CuntzCmd,
    },
    /// Modular data of product states
    Modular {
        #[command(subcommand)]
        sub: ModularCmd,
    },
    /// Factor-type label from the eigenvalue ratio group
    FactorType(FactorTypeArgs),
    /// Magic unitary family checks
    Magic {
        #[command(subcommand)]
        sub: MagicCmd,
    },
    /// Finite quotient space checks
    Quotient {
        #[command(subcommand)]
        sub: QuotientCmd,
    },
    /// Run every acceptance criterion end to end
    All(AllArgs),
}

#[derive(Subcommand)]
enum TlCmd {
    /// Verify the projection relations at level k with β = n²
    Verify(TlVerifyArgs),
    /// Span dimensions of word evaluations against Catalan numbers
    Dim(TlDimArgs),
}

#[derive(Args)]
struct TlVerifyArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// exact | float
    #[arg(long, default_value = "exact")]
    backend: String,
}

#[derive(Args)]
struct TlDimArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    k_max: usize,
}

#[derive(Args)]
struct MarkovArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// exact | float
    #[arg(long, default_value = "exact")]
    backend: String,
}

#[derive(Args)]
struct ContrastArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// o (orthogonal) | u (unitary)
    #[arg(long, default_value = "o")]
    group: String,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum CuntzCmd {
    /// Evaluate ω_Q on words like "S1 S2 S2* S1*"
    Eval(CuntzEvalArgs),
    /// Check ω_Q invariance at classical evaluation points
    Invariance(CuntzInvarianceArgs),
}

#[derive(Args)]
struct CuntzEvalArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Diagonal Q entries: rationals "1/3,2/3" (exact) or decimals (float)
    #[arg(long, default_value = "1/2,1/2")]
    q: String,
    /// Word literal; repeatable
    #[arg(long)]
    word: Vec<String>,
    /// Tabulate every word with r+s up to this length
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Args)]
struct CuntzInvarianceArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value = "1/3,2/3")]
    q: String,
    /// Number of random diagonal evaluation points
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_word_len: usize,
    /// Check one explicit matrix from a text file instead of sampling
    #[arg(long)]
    unitary_file: Option<String>,
}

#[derive(Subcommand)]
enum ModularCmd {
    /// spec(Δ_k) tables for k = 1..k_max
    Spectrum(ModularSpectrumArgs),
}

#[derive(Args)]
struct ModularSpectrumArgs {
    #[arg(long, default_value = "1/3,2/3")]
    q: String,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
}

#[derive(Args)]
struct FactorTypeArgs {
    /// uhf (tensor-product state) | cuntz (isometry-algebra state)
    #[arg(long, default_value = "uhf")]
    family: String,
    #[arg(long, default_value = "1/3,2/3")]
    q: String,
    #[arg(long, default_value_t = 40)]
    cf_depth: usize,
    #[arg(long, default_value_t = 1e-12)]
    cf_tol: f64,
}

#[derive(Subcommand)]
enum MagicCmd {
    /// Quantum-permutation axioms across an angle grid
    Verify(MagicVerifyArgs),
    /// Alternating-word independence rank (2L+1 growth witness)
    Rank(MagicRankArgs),
}

#[derive(Args)]
struct MagicVerifyArgs {
    #[arg(long, default_value_t = 100)]
    grid: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct MagicRankArgs {
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    /// Angles per level (default 4L+4)
    #[arg(long)]
    grid_size: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum QuotientCmd {
    /// Fixed algebra, ergodicity, and the integration formula for H ≤ G
    Check(QuotientCheckArgs),
}

#[derive(Args)]
struct QuotientCheckArgs {
    /// Built-in pair: s4:s3 | s3:a3 | s3:z2 | z6:z2
    #[arg(long)]
    pair: Option<String>,
    /// Group table file: order N, then N lines of N indices
    #[arg(long)]
    group_file: Option<String>,
    /// Subgroup element indices, comma separated
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long, default_value = "G")]
    group_name: String,
}

#[derive(Args)]
struct AllArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() -> ExitCode {
    let argv = merged_argv();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles help/version printing through the error path
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Injects `key = value` pairs from --config as trailing long flags, but only
/// for flags the user did not pass explicitly.
fn merged_argv() -> Vec<String> {
    let mut argv: Vec<String> = std::env::args().collect();
    let config_path = argv
        .iter()
        .position(|a| a == "--config")
        .and_then(|i| argv.get(i + 1).cloned());
    let Some(path) = config_path else {
        return argv;
    };
    let Ok(text) = std::fs::read_to_string(&path) else {
        return argv; // parse error surfaces later through clap/required flags
    };
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            continue;
        };
        let flag = format!("--{}", key.trim().replace('_', "-"));
        if !argv.iter().any(|a| a == &flag) {
            argv.push(flag);
            argv.push(value.trim().to_string());
        }
    }
    argv
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let start = std::time::Instant::now();
    let out_dir = cli
        .out
        .or_else(|| std::env::var_os("QERGO_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("qergo-reports"));
    let mut config: BTreeMap<String, String> = BTreeMap::new();
    let set = |m: &mut BTreeMap<String, String>, k: &str, v: String| {
        m.insert(k.to_string(), v);
    };
    let (command, outcome): (String, Outcome) = match cli.command {
        Command::Tl { sub } => match sub {
            TlCmd::Verify(a) => {
                let backend = parse_backend(&a.backend)?;
                set(&mut config, "n", a.n.to_string());
                set(&mut config, "k", a.k.to_string());
                set(&mut config, "backend", backend.name().into());
                ("tl verify".into(), commands::tl_verify(a.n, a.k, backend)?)
            }
            TlCmd::Dim(a) => {
                set(&mut config, "n", a.n.to_string());
                set(&mut config, "k_max", a.k_max.to_string());
                set(&mut config, "backend", "exact".into());
                ("tl dim".into(), commands::tl_dim(a.n, a.k_max)?)
            }
        },
        Command::Markov(a) => {
            let backend = parse_backend(&a.backend)?;
            set(&mut config, "n", a.n.to_string());
            set(&mut config, "k", a.k.to_string());
            set(&mut config, "backend", backend.name().into());
            ("markov".into(), commands::markov(a.n, a.k, backend)?)
        }
        Command::Contrast(a) => {
            set(&mut config, "n", a.n.to_string());
            set(&mut config, "k", a.k.to_string());
            set(&mut config, "group", a.group.clone());
            set(&mut config, "samples", a.samples.to_string());
            set(&mut config, "seed", a.seed.to_string());
            set(&mut config, "backend", "float".into());
            (
                "contrast".into(),
                commands::contrast(a.n, a.k, &a.group, a.samples, a.seed)?,
            )
        }
        Command::Cuntz { sub } => match sub {
            CuntzCmd::Eval(a) => {
                let q = QSpec::parse(&a.q)?;
                set(&mut config, "n", a.n.to_string());
                set(&mut config, "q", a.q.clone());
                set(&mut config, "backend", q.backend().name().into());
                if let Some(len) = a.max_len {
                    set(&mut config, "max_len", len.to_string());
                }
                if !a.word.is_empty() {
                    set(&mut config, "words", a.word.join("; "));
                }
                (
                    "cuntz eval".into(),
                    commands::cuntz_eval(a.n, &q, &a.word, a.max_len)?,
                )
            }
            CuntzCmd::Invariance(a) => {
                let q = QSpec::parse(&a.q)?;
                set(&mut config, "n", a.n.to_string());
                set(&mut config, "q", a.q.clone());
                set(&mut config, "points", a.points.to_string());
                set(&mut config, "seed", a.seed.to_string());
                set(&mut config, "max_word_len", a.max_word_len.to_string());
                set(&mut config, "backend", "float".into());
                set(&mut config, "tol", "1e-10".into());
                if let Some(f) = &a.unitary_file {
                    set(&mut config, "unitary_file", f.clone());
                }
                (
                    "cuntz invariance".into(),
                    commands::cuntz_invariance(
                        a.n,
                        &q,
                        a.points,
                        a.seed,
                        a.max_word_len,
                        a.unitary_file.as_deref(),
                    )?,
                )
            }
        },
        Command::Modular { sub } => match sub {
            ModularCmd::Spectrum(a) => {
                let q = QSpec::parse(&a.q)?;
                set(&mut config, "q", a.q.clone());
                set(&mut config, "k_max", a.k_max.to_string());
                set(&mut config, "backend", "float".into());
                (
                    "modular spectrum".into(),
                    commands::modular_spectrum_cmd(&q, a.k_max)?,
                )
            }
        },
        Command::FactorType(a) => {
            let q = QSpec::parse(&a.q)?;
            set(&mut config, "family", a.family.clone());
            set(&mut config, "q", a.q.clone());
            set(&mut config, "cf_depth", a.cf_depth.to_string());
            set(&mut config, "cf_tol", format!("{:e}", a.cf_tol));
            set(&mut config, "backend", "float".into());
            (
                "factor-type".into(),
                commands::factor_type(&a.family, &q, a.cf_depth, a.cf_tol)?,
            )
        }
        Command::Magic { sub } => match sub {
            MagicCmd::Verify(a) => {
                set(&mut config, "grid", a.grid.to_string());
                set(&mut config, "tol", format!("{:e}", a.tol));
                set(&mut config, "backend", "float".into());
                ("magic verify".into(), commands::magic_verify(a.grid, a.tol)?)
            }
            MagicCmd::Rank(a) => {
                set(&mut config, "max_len", a.max_len.to_string());
                set(&mut config, "seed", a.seed.to_string());
                if let Some(g) = a.grid_size {
                    set(&mut config, "grid_size", g.to_string());
                }
                set(&mut config, "backend", "float".into());
                (
                    "magic rank".into(),
                    commands::magic_rank(a.max_len, a.grid_size, a.seed)?,
                )
            }
        },
        Command::Quotient { sub } => match sub {
            QuotientCmd::Check(a) => {
                if let Some(p) = &a.pair {
                    set(&mut config, "pair", p.clone());
                }
                if let Some(f) = &a.group_file {
                    set(&mut config, "group_file", f.clone());
                }
                if let Some(s) = &a.subgroup {
                    set(&mut config, "subgroup", s.clone());
                }
                set(&mut config, "backend", "exact".into());
                (
                    "quotient check".into(),
                    commands::quotient_check(
                        a.pair.as_deref(),
                        a.group_file.as_deref(),
                        a.subgroup.as_deref(),
                        &a.group_name,
                    )?,
                )
            }
        },
        Command::All(a) => {
            set(&mut config, "seed", a.seed.to_string());
            ("all".into(), commands::run_all(a.seed)?)
        }
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    let written = report::emit(&out_dir, &command, config, &outcome)?;
    for path in &written {
        println!("wrote {}", path.display());
    }
    eprintln!("elapsed: {:.2?}", start.elapsed());
    Ok(outcome.passed)
}

fn parse_backend(s: &str) -> Result<Backend, qergo::Error> {
    match s {
        "exact" => Ok(Backend::Exact),
        "float" => Ok(Backend::Float),
        other => Err(qergo::Error::InvalidInput(format!(
            "unknown backend {other:?}; use exact or float"
        ))),
    }
}
