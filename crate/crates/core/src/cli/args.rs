use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::config::{KmsVariant, RunConfig, Suite};
use super::report::Report;
use super::suites::run_suite;
use crate::crossing::FormFactorModel;
use crate::error::Error;

const DEFAULT_OUT: &str = "wedgebench-report";

#[derive(Debug, Parser)]
#[command(name = "wedgebench", version, about = "Verification workbench for analytic S-matrix and modular localization checks")]
pub struct Cli {
    /// Run configuration (TOML, or JSON config / report echo).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for report.json and CSV artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random draw.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Only print the summary line.
    #[arg(short, long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormFactorArg {
    IsingEnergy,
    FreeFieldLinear,
    Linear,
}

impl From<FormFactorArg> for FormFactorModel {
    fn from(a: FormFactorArg) -> Self {
        match a {
            FormFactorArg::IsingEnergy => FormFactorModel::IsingEnergy,
            FormFactorArg::FreeFieldLinear => FormFactorModel::FreeFieldLinear,
            FormFactorArg::Linear => FormFactorModel::Linear,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kramers-Kronig round trip and subtraction invariance.
    Kk {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        half_width: Option<f64>,
    },
    /// Causal versus anti-causal discrimination.
    Causality {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Bootstrap axioms of the shipped scattering functions.
    Bootstrap {
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Exchange-algebra confluence, state actions and factorization.
    Zf {
        /// Word to normal-order and print, e.g. "Z(2.0) Z*(1.0)".
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Watson equations and crossing of form factors.
    Crossing {
        #[arg(long, value_enum)]
        model: Option<FormFactorArg>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Modular KMS condition, wedge duality and Unruh periodicity.
    Kms {
        #[arg(long, value_enum)]
        variant: Option<KmsVariant>,
    },
    /// Scaling of the partial-charge fluctuation with the ramp width.
    Entropy {
        #[arg(long = "R")]
        r: Option<f64>,
        #[arg(long = "dR-min")]
        dr_min: Option<f64>,
        #[arg(long = "dR-max")]
        dr_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Two-particle direct interaction: phase shifts and boost generators.
    Dpi {
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        grid_n: Option<usize>,
        #[arg(long)]
        p_max: Option<f64>,
    },
    /// Order-by-order unitarization and cluster decay.
    Unitarize {
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Every suite.
    VerifyAll,
    /// The suites listed in the configuration file.
    Run,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl Command {
    /// Select the suite and apply command-line overrides.
    fn apply(self, cfg: &mut RunConfig) {
        let suite = match self {
            Command::Kk { n, half_width } => {
                set(&mut cfg.kk.n, n);
                set(&mut cfg.kk.half_width, half_width);
                Suite::Kk
            }
            Command::Causality { n, threshold } => {
                set(&mut cfg.causality.n, n);
                set(&mut cfg.causality.threshold, threshold);
                Suite::Causality
            }
            Command::Bootstrap { samples } => {
                set(&mut cfg.bootstrap.samples, samples);
                Suite::Bootstrap
            }
            Command::Zf { word, max_length } => {
                if word.is_some() {
                    cfg.zf.word = word;
                }
                set(&mut cfg.zf.max_length, max_length);
                Suite::Zf
            }
            Command::Crossing { model, k, samples } => {
                set(&mut cfg.crossing.form_factor, model.map(Into::into));
                set(&mut cfg.crossing.k, k);
                set(&mut cfg.crossing.samples, samples);
                Suite::Crossing
            }
            Command::Kms { variant } => {
                set(&mut cfg.kms.variants, variant.map(|v| vec![v]));
                Suite::Kms
            }
            Command::Entropy {
                r,
                dr_min,
                dr_max,
                points,
            } => {
                set(&mut cfg.entropy.r, r);
                set(&mut cfg.entropy.dr_min, dr_min);
                set(&mut cfg.entropy.dr_max, dr_max);
                set(&mut cfg.entropy.points, points);
                Suite::Entropy
            }
            Command::Dpi {
                m,
                lambda,
                mu,
                grid_n,
                p_max,
            } => {
                set(&mut cfg.dpi.m, m);
                set(&mut cfg.dpi.lambda, lambda);
                set(&mut cfg.dpi.mu, mu);
                set(&mut cfg.dpi.grid_n, grid_n);
                set(&mut cfg.dpi.p_max, p_max);
                Suite::Dpi
            }
            Command::Unitarize { order, dim } => {
                set(&mut cfg.unitarize.order, order);
                set(&mut cfg.unitarize.dim, dim);
                Suite::Unitarize
            }
            Command::VerifyAll => {
                cfg.suites = Suite::ALL.to_vec();
                return;
            }
            Command::Run => return,
        };
        cfg.suites = vec![suite];
    }
}

fn print_report(report: &Report, quiet: bool) {
    for s in &report.suites {
        if !quiet {
            for c in &s.checks {
                println!(
                    "{} {}.{} residual={:e} tolerance={:e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    s.suite,
                    c.name,
                    c.residual,
                    c.tolerance
                );
            }
            if let Some(form) = s.details.get("normal_form").and_then(|v| v.as_str()) {
                println!("normal form: {form}");
            }
        }
        if let Some(e) = &s.error {
            eprintln!("ERROR {}: {}", s.suite, e.message);
        }
    }
    let failed = report.pass_vector().iter().filter(|(_, p)| !p).count();
    println!(
        "{}: {} checks, {failed} failed, {:.2} s",
        if report.pass { "PASS" } else { "FAIL" },
        report.pass_vector().len(),
        report.wall_time
    );
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Syntax { .. } => 2,
        _ => 3,
    }
}

/// Parse arguments, run, write the report; returns the process exit code
/// (0 pass, 1 check failure, 2 usage error, 3 numeric error).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut cfg = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{e}");
                return 2;
            }
        },
        None => RunConfig::default(),
    };
    cli.command.apply(&mut cfg);
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.out.is_some() {
        cfg.output_dir = cli.out.clone();
    }
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return exit_for(&e);
        }
    };
    print_report(&report, cli.quiet);
    let dir = cfg.output_dir.clone().unwrap_or_else(|| Path::new(DEFAULT_OUT).to_path_buf());
    if let Err(e) = report.write(&dir) {
        eprintln!("cannot write report to {}: {e}", dir.display());
        return 3;
    }
    report.exit_code()
}
