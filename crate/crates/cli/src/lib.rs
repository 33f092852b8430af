//! The `moriwaki` command-line tool: classification, bigness certificates,
//! the Petri audit, cone sections and log canonical thresholds, all reported
//! as deterministic JSON with exact rationals.

pub mod artifact;
pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{CertifyTarget, SectionFormat};
use config::Config;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "moriwaki", version, about = "Exact divisor-class calculus on the moduli space of stable curves")]
pub struct Cli {
    /// JSON configuration file (default: ./moriwaki.json if present).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a class against the Moriwaki inequalities.
    Classify {
        #[arg(short = 'g')]
        genus: u32,
        /// A named class or the coefficients a b_0 .. b_{g/2}.
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        class: Vec<String>,
    },
    /// Certify that M (or an explicit class) is big.
    CertifyBig(CertifyArgs),
    /// Audit the factorial inequalities behind the Petri witness.
    AuditPetri {
        /// Largest d to audit (default: d_max from the config, 200).
        #[arg(long)]
        d_max: Option<u64>,
        /// Upper end of the polynomial sweep.
        #[arg(long, default_value_t = 10_000)]
        poly_max: i64,
        /// Keep verdicts, drop the per-index values.
        #[arg(long)]
        brief: bool,
    },
    /// Rays of the nef, Moriwaki and pseudoeffective cones in the lambda-delta plane.
    Section {
        #[arg(short = 'g')]
        genus: u32,
        #[arg(long, conflicts_with = "svg")]
        csv: bool,
        #[arg(long)]
        svg: bool,
        /// Write the CSV or SVG here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Where K_alpha = 13 lambda - (2 - alpha) delta sits.
    Alpha {
        #[arg(short = 'g')]
        genus: u32,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// Obstruction to a Zariski decomposition.
    Obstruction {
        #[arg(short = 'g')]
        genus: u32,
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        class: Vec<String>,
        /// Assume (or deny) kappa(D) >= 1.
        #[arg(long)]
        kappa: Option<bool>,
    },
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").args(["genus", "range"]))]
pub struct CertifyArgs {
    #[arg(short = 'g')]
    pub genus: Option<u32>,
    /// Inclusive range such as 3..500 (default: 3..g_max from the config).
    #[arg(long)]
    pub range: Option<String>,
    /// Explicit class instead of M: a name or comma-separated a,b_0,...; needs -g.
    #[arg(long, requires = "genus", conflicts_with = "range", allow_hyphen_values = true)]
    pub divisor: Option<String>,
    /// BN, PetriHat or auto.
    #[arg(long, requires = "divisor", default_value = "auto")]
    pub witness: String,
}

/// Everything a run writes, so callers decide where it goes.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cli: Cli) -> Result<commands::Output, CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Classify { genus, class } => commands::classify(genus, &parse::unshield_all(class)),
        Command::CertifyBig(a) => {
            let target = match (a.divisor, a.genus, a.range) {
                (Some(divisor), Some(genus), _) => {
                    CertifyTarget::Explicit { genus, divisor: parse::unshield(&divisor), witness: a.witness }
                }
                (None, Some(g), _) => CertifyTarget::Genera(vec![g]),
                (None, None, Some(r)) => CertifyTarget::Genera(parse::genus_range(&r)?.collect()),
                (None, None, None) => CertifyTarget::Genera((3..=cfg.g_max).collect()),
                (Some(_), None, _) => unreachable!("clap requires -g with --divisor"),
            };
            commands::certify_big(target)
        }
        Command::AuditPetri { d_max, poly_max, brief } => {
            commands::audit_petri(d_max.unwrap_or(cfg.d_max), poly_max, brief)
        }
        Command::Section { genus, csv, svg, out } => {
            if out.is_some() && !csv && !svg {
                return Err(CliError::Parse("--out needs --csv or --svg".into()));
            }
            let format = if csv {
                SectionFormat::Csv
            } else if svg {
                SectionFormat::Svg
            } else {
                SectionFormat::Json
            };
            commands::section(genus, format, out, &cfg)
        }
        Command::Alpha { genus, alpha } => commands::alpha(genus, &parse::unshield(&alpha), &cfg),
        Command::Obstruction { genus, class, kappa } => {
            commands::obstruction(genus, &parse::unshield_all(class), kappa)
        }
    }
}

/// clap only recognises float-shaped negative numbers, so `-1/2` would read
/// as a short flag. No flag starts with a digit, so such tokens are marked
/// with U+2212 here and turned back into `-` by [`parse::unshield`].
fn shield_negative_rational(arg: OsString) -> OsString {
    match arg.to_str() {
        Some(s) if s.starts_with('-') && s[1..].contains('/') && s[1..].starts_with(|c: char| c.is_ascii_digit()) => {
            format!("{}{}", parse::MINUS_SIGN, &s[1..]).into()
        }
        _ => arg,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = args.into_iter().map(|a| shield_negative_rational(a.into()));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = out.artifact.unwrap_or_default();
            if let Some(r) = out.report {
                stdout.push_str(&r.render());
            }
            let mut stderr: String = out.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            let code = if out.ok {
                0
            } else {
                stderr.push_str("error: one or more checks failed\n");
                1
            };
            Outcome { code, stdout, stderr }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
