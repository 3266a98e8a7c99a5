//! Subcommands behind the `skewlab` binary.
//!
//! Exit codes: 0 ok, 1 a checked identity failed, 2 invalid configuration,
//! 3 I/O failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, ExperimentConfig, MethodKind, SystemKind, GRAM_RADIUS_GUARD};
use crate::gaussian::gram_matrix;
use crate::group::ball;
use crate::hs::{projection_defect, projection_defect_formula, random_unit_vector, FiniteUnitary};
use crate::lab::{
    almost_invariant_sweep, decay_sweep, format_real, write_decay_csv, write_sweep_csv,
};
use crate::selftest::{self, Fault};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "skewlab",
    version,
    about = "Skew-product dynamics of free groups on trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient decay over word-length shells (CSV).
    Decay(CommonFlags),
    /// Almost-invariance defects of window vectors over a ball (CSV).
    Window(CommonFlags),
    /// Gromov-product Gram matrix over a ball (CSV).
    Gram(CommonFlags),
    /// Projection-defect identity on random unitaries (CSV).
    Hs(CommonFlags),
    /// Run every invariant suite.
    Selftest {
        #[arg(short, long, action = clap::ArgAction::Count)]
        verbose: u8,
        /// Deliberately break the projection-defect identity.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonFlags {
    /// TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub system: Option<SystemKind>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    /// window:N | cauchy | gaussian | indicator:LO:HI, optional @unit
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long)]
    pub method: Option<MethodKind>,
    #[arg(long)]
    pub max_radius: Option<usize>,
    #[arg(long)]
    pub shell_cap: Option<usize>,
    /// Comma-separated window sizes.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Lab(#[from] crate::Error),
    #[error("check failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Lab(_) => EXIT_INVALID,
            CliError::Io(_) => EXIT_IO,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }
}

impl CommonFlags {
    /// File values first, then flags on top.
    pub fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_toml(&std::fs::read_to_string(path)?)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! overlay {
            ($($field:ident => $target:ident),*) => {
                $(if let Some(v) = &self.$field { cfg.$target = v.clone(); })*
            };
        }
        overlay!(system => system, rank => rank, p => p, profile => profile, method => method,
                 max_radius => max_radius, shell_cap => shell_cap, n => window_sizes,
                 samples => samples, trials => trials, seed => seed, workers => workers);
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn open_output(cfg: &ExperimentConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn cmd_decay(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let system = cfg.system()?;
    let profile = cfg.profile_vector()?;
    if cfg.max_radius == 0 {
        return Err(ConfigError {
            field: "max-radius",
            message: "decay needs max-radius >= 1".into(),
        }
        .into());
    }
    let curve = decay_sweep(
        &system,
        &profile,
        cfg.max_radius,
        cfg.shell_cap,
        cfg.estimator(),
        cfg.seed,
    )?;
    write_decay_csv(&curve, open_output(cfg)?)?;
    Ok(())
}

pub fn cmd_window(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let system = cfg.system()?;
    let table = almost_invariant_sweep(
        &system,
        cfg.max_radius,
        &cfg.window_sizes,
        cfg.shell_cap,
        cfg.seed,
    )?;
    write_sweep_csv(&table, open_output(cfg)?)?;
    Ok(())
}

pub const GRAM_HEADER: &str = "i,j,word_i,word_j,gram";

pub fn cmd_gram(cfg: &ExperimentConfig) -> Result<(), CliError> {
    if cfg.max_radius > GRAM_RADIUS_GUARD {
        return Err(ConfigError {
            field: "max-radius",
            message: format!("gram needs max-radius <= {GRAM_RADIUS_GUARD}"),
        }
        .into());
    }
    let words = ball(cfg.max_radius, cfg.rank)?;
    let sys = gram_matrix(&words)?;
    let min_eig = sys.min_eigenvalue();
    let recon = sys.reconstruction_error();
    eprintln!(
        "gram: {} words, min eigenvalue {:e}, jitter {:e}, reconstruction error {:e}",
        words.len(),
        min_eig,
        sys.jitter(),
        recon
    );
    let mut out = open_output(cfg)?;
    writeln!(out, "{GRAM_HEADER}")?;
    for (i, gi) in words.iter().enumerate() {
        for (j, gj) in words.iter().enumerate().skip(i) {
            writeln!(out, "{i},{j},{gi},{gj},{}", format_real(sys.gram()[(i, j)]))?;
        }
    }
    out.flush()?;
    if min_eig < -1e-8 || recon > 1e-10 {
        return Err(CliError::Failed(format!(
            "gram matrix not PSD or factor inexact (min eig {min_eig:e}, error {recon:e})"
        )));
    }
    Ok(())
}

pub const HS_HEADER: &str = "trial,dim,defect,formula,abs_err";

pub fn cmd_hs(cfg: &ExperimentConfig) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = open_output(cfg)?;
    writeln!(out, "{HS_HEADER}")?;
    let mut worst: f64 = 0.0;
    for trial in 0..cfg.trials {
        let dim = rng.random_range(2..=16);
        let u = FiniteUnitary::random(dim, &mut rng);
        let xi = random_unit_vector(dim, &mut rng);
        let lhs = projection_defect(&u, &xi)?;
        let rhs = projection_defect_formula(&u, &xi)?;
        let err = (lhs - rhs).abs();
        worst = worst.max(err);
        writeln!(
            out,
            "{trial},{dim},{},{},{}",
            format_real(lhs),
            format_real(rhs),
            format_real(err)
        )?;
    }
    out.flush()?;
    if worst > 1e-10 {
        return Err(CliError::Failed(format!(
            "projection-defect identity off by {worst:e}"
        )));
    }
    Ok(())
}

/// Prints one line per suite; returns the exit code.
pub fn cmd_selftest(verbosity: u8, fault: Option<Fault>) -> i32 {
    let outcomes = selftest::run_all(fault);
    let mut failed = 0;
    for o in &outcomes {
        match &o.result {
            Ok(()) => println!("[PASS] {:<24} {:>9.3} s", o.name, o.elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!(
                    "[FAIL] {:<24} {:>9.3} s  {msg}",
                    o.name,
                    o.elapsed.as_secs_f64()
                );
            }
        }
    }
    if verbosity > 0 {
        let total: f64 = outcomes.iter().map(|o| o.elapsed.as_secs_f64()).sum();
        println!("{} suites, {failed} failed, {total:.3} s", outcomes.len());
    }
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Selftest {
            verbose,
            inject_fault,
        } => {
            return cmd_selftest(
                *verbose,
                inject_fault.then_some(Fault::ProjectionDefectSign),
            )
        }
        Command::Decay(f) => f.resolve().and_then(|c| cmd_decay(&c)),
        Command::Window(f) => f.resolve().and_then(|c| cmd_window(&c)),
        Command::Gram(f) => f.resolve().and_then(|c| cmd_gram(&c)),
        Command::Hs(f) => f.resolve().and_then(|c| cmd_hs(&c)),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        std::fs::write(&path, "p = 0.3\nseed = 9\n").unwrap();
        let flags = CommonFlags {
            config: Some(path),
            seed: Some(4),
            ..Default::default()
        };
        let cfg = flags.resolve().unwrap();
        assert_eq!(cfg.p, 0.3);
        assert_eq!(cfg.seed, 4);
    }

    #[test]
    fn invalid_p_exits_2() {
        let flags = CommonFlags {
            p: Some(1.5),
            ..Default::default()
        };
        let err = flags.resolve().unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INVALID);
        assert!(err.to_string().contains("`p`"));
    }

    #[test]
    fn missing_config_file_exits_3() {
        let flags = CommonFlags {
            config: Some("/nonexistent/skewlab.toml".into()),
            ..Default::default()
        };
        assert_eq!(flags.resolve().unwrap_err().exit_code(), EXIT_IO);
    }
}
