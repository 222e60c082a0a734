//! Command-line harness for the quantum Minority game: payoffs, noise and
//! entanglement sweeps, Nash-equilibrium checks, and closed-form tables,
//! all emitted as reproducible CSV.
//!
//! Exit codes: 0 ok, 1 usage or I/O failure, 2 the final density matrix
//! failed validation, 3 the equilibrium check found a profitable deviation.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use qmg_core::{
    best_response_scan, classical_random_payoff, expected_payoffs, format_significant, linspace,
    make_channel, ne_strategy, parse_angle, parse_strategy, pareto_payoff, quantum_ne_payoff,
    run_game, run_game_with_channels, ChannelKind, DensityMatrix, GameConfig, KrausChannel,
    NeFamilyPoint, PayoffTable, StrategyParams, SweepResult,
};

/// Largest supported player count: dense 2^N x 2^N states with an
/// eigensolver-backed validation stay tractable up to N = 10.
pub const MAX_PLAYERS: usize = 10;

const NE_GAIN_THRESHOLD: f64 = 1e-9;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unparsable values, or I/O trouble (exit 1).
    Usage(String),
    /// The final density matrix failed validation (exit 2).
    Validation(String),
    /// The scanned profile admits a profitable deviation (exit 3).
    NeCheckFailed { gain: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::NeCheckFailed { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Validation(message) => write!(f, "invalid final state: {message}"),
            CliError::NeCheckFailed { gain } => {
                write!(f, "not an equilibrium at the scanned grid: gain {gain:.3e}")
            }
        }
    }
}

impl From<qmg_core::Error> for CliError {
    fn from(error: qmg_core::Error) -> Self {
        CliError::Usage(error.to_string())
    }
}

fn io_error(error: io::Error) -> CliError {
    CliError::Usage(format!("write failed: {error}"))
}

#[derive(Parser, Debug)]
#[command(
    name = "qmg",
    version,
    about = "N-player quantum Minority game simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expected payoffs of one game instance (CSV on stdout)
    Payoff(GameArgs),
    /// Payoff curve over p or gamma, as CSV
    Sweep(SweepArgs),
    /// Certify a profile as a grid-level Nash equilibrium
    NeCheck(NeCheckArgs),
    /// Quantum/classical/Pareto payoffs for even player counts
    Table(TableArgs),
    /// Minority payoff table for inspection
    PayoffTable(PayoffTableArgs),
}

#[derive(Args, Debug)]
pub struct GameArgs {
    /// Number of players (2 to 10)
    #[arg(long)]
    pub n: usize,

    /// Entangling parameter in [0, pi/2]; pi-expressions accepted
    #[arg(long, default_value = "pi/2")]
    pub gamma: String,

    /// Decoherence channel: phase-damping, depolarizing, bit-flip,
    /// phase-flip, bit-phase-flip, amplitude-damping, none
    #[arg(long, default_value = "none")]
    pub channel: String,

    /// First-stage decoherence probability
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,

    /// Second-stage probability (defaults to p)
    #[arg(long)]
    pub p_prime: Option<f64>,

    /// Player strategy `k=theta,alpha,beta` (0-based k) or `all=...`;
    /// repeatable. Even player counts default to the NE profile.
    #[arg(long = "strategy")]
    pub strategies: Vec<String>,

    /// Apply the disentangling gate before measurement
    #[arg(long)]
    pub disentangle: bool,
}

impl GameArgs {
    fn config(&self) -> Result<GameConfig, CliError> {
        if !(2..=MAX_PLAYERS).contains(&self.n) {
            return Err(CliError::Usage(format!(
                "--n must be between 2 and {MAX_PLAYERS}, got {}",
                self.n
            )));
        }
        let gamma = parse_angle(&self.gamma)?;
        let channel: ChannelKind = self.channel.parse()?;
        let cfg = GameConfig::new(self.n, gamma, channel, self.p)?
            .with_p_prime(self.p_prime.unwrap_or(self.p))?
            .with_disentangler(self.disentangle);
        Ok(cfg)
    }

    fn profile(&self) -> Result<Vec<StrategyParams>, CliError> {
        let default = if self.n.is_multiple_of(2) && self.n >= 4 {
            Some(ne_strategy(self.n, NeFamilyPoint::new(0, 0.0))?)
        } else {
            None
        };
        let mut slots = vec![default; self.n];
        for flag in &self.strategies {
            let (target, literal) = flag.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "--strategy expects k=theta,alpha,beta or all=theta,alpha,beta, got {flag:?}"
                ))
            })?;
            let params = parse_strategy(literal)?;
            if target == "all" {
                slots = vec![Some(params); self.n];
            } else {
                let player: usize = target.parse().map_err(|_| {
                    CliError::Usage(format!("bad player index {target:?} in --strategy"))
                })?;
                if player >= self.n {
                    return Err(CliError::Usage(format!(
                        "player index {player} out of range for --n {}",
                        self.n
                    )));
                }
                slots[player] = Some(params);
            }
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(player, slot)| {
                slot.ok_or_else(|| {
                    CliError::Usage(format!(
                        "player {player} has no strategy; odd player counts have no default \
                         profile, pass --strategy"
                    ))
                })
            })
            .collect()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SweepParam {
    P,
    Gamma,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub game: GameArgs,

    /// Swept parameter
    #[arg(long, value_enum)]
    pub param: SweepParam,

    /// Start of the grid (pi-expressions accepted)
    #[arg(long)]
    pub from: String,

    /// End of the grid
    #[arg(long)]
    pub to: String,

    /// Number of grid points (>= 2, endpoints included)
    #[arg(long)]
    pub steps: usize,

    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct NeCheckArgs {
    #[command(flatten)]
    pub game: GameArgs,

    /// Grid points per strategy axis
    #[arg(long, default_value_t = 17)]
    pub grid: usize,

    /// Deviating player (0-based)
    #[arg(long, default_value_t = 0)]
    pub deviator: usize,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Largest (even) player count, at most 12
    #[arg(long)]
    pub max_n: usize,

    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PayoffTableArgs {
    /// Number of players (2 to 12)
    #[arg(long)]
    pub n: usize,

    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Manifest lines embedded at the top of every emitted CSV.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub output_path: String,
    pub tool_version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, output_path: &str) -> Self {
        Self {
            command: command.to_string(),
            output_path: output_path.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now()
                .format("%Y-%m-%dT%H:%M:%SZ")
                .to_string(),
        }
    }

    pub fn write<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# command={}", self.command)?;
        writeln!(w, "# tool-version={}", self.tool_version)?;
        writeln!(w, "# timestamp={}", self.timestamp)?;
        writeln!(w, "# output={}", self.output_path)
    }
}

/// Dispatches a parsed command line; `out` receives everything that goes
/// to stdout.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Payoff(args) => cmd_payoff(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::NeCheck(args) => cmd_ne_check(&args, out),
        Command::Table(args) => cmd_table(&args, out),
        Command::PayoffTable(args) => cmd_payoff_table(&args, out),
    }
}

fn ensure_valid(rho: &DensityMatrix) -> Result<(), CliError> {
    let report = rho.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Validation(report.to_string()))
    }
}

/// Runs the pipeline with explicit channels and refuses to return payoffs
/// from an invalid final state. This is the payoff command's path; tests
/// inject malformed channels here to exercise the validation exit.
pub fn validated_payoffs(
    cfg: &GameConfig,
    profile: &[StrategyParams],
    first_stage: &[KrausChannel],
    second_stage: &[KrausChannel],
) -> Result<Vec<f64>, CliError> {
    let rho = run_game_with_channels(cfg, profile, first_stage, second_stage)?;
    ensure_valid(&rho)?;
    let table = PayoffTable::minority(cfg.players())?;
    Ok(expected_payoffs(&rho, &table)?)
}

fn write_profile_comment(w: &mut dyn Write, profile: &[StrategyParams]) -> io::Result<()> {
    let rendered = profile
        .iter()
        .map(|s| {
            format!(
                "{},{},{}",
                format_significant(s.theta(), 12),
                format_significant(s.alpha(), 12),
                format_significant(s.beta(), 12)
            )
        })
        .collect::<Vec<_>>()
        .join(";");
    writeln!(w, "# profile={rendered}")
}

fn cmd_payoff(args: &GameArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.config()?;
    let profile = args.profile()?;
    let stage1 = vec![make_channel(cfg.channel(), cfg.p())?; cfg.players()];
    let stage2 = vec![make_channel(cfg.channel(), cfg.p_prime())?; cfg.players()];
    let payoffs = validated_payoffs(&cfg, &profile, &stage1, &stage2)?;

    let manifest = RunManifest::new("payoff", "-");
    (|| -> io::Result<()> {
        manifest.write(&mut *out)?;
        writeln!(out, "# n={}", cfg.players())?;
        writeln!(out, "# gamma={}", format_significant(cfg.gamma(), 12))?;
        writeln!(out, "# channel={}", cfg.channel())?;
        writeln!(out, "# p={}", format_significant(cfg.p(), 12))?;
        writeln!(out, "# p-prime={}", format_significant(cfg.p_prime(), 12))?;
        writeln!(out, "# disentangle={}", cfg.apply_disentangler())?;
        write_profile_comment(out, &profile)?;
        let header: Vec<String> = (1..=cfg.players()).map(|k| format!("payoff_{k}")).collect();
        writeln!(out, "{}", header.join(","))?;
        let row: Vec<String> = payoffs
            .iter()
            .map(|value| format_significant(*value, 12))
            .collect();
        writeln!(out, "{}", row.join(","))
    })()
    .map_err(io_error)
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {}",
            args.steps
        )));
    }
    let template = args.game.config()?;
    let profile = args.game.profile()?;
    let from = parse_angle(&args.from)?;
    let to = parse_angle(&args.to)?;
    let grid = linspace(from, to, args.steps);
    let table = PayoffTable::minority(template.players())?;

    let parameter_name = match args.param {
        SweepParam::P => "p",
        SweepParam::Gamma => {
            if template.p() != 0.0 || template.p_prime() != 0.0 {
                return Err(CliError::Usage(
                    "gamma sweeps run without noise; drop --p/--p-prime".to_string(),
                ));
            }
            "gamma"
        }
    };

    let mut payoffs = Vec::with_capacity(grid.len());
    for &value in &grid {
        let cfg = match args.param {
            // p' tracks p at every point
            SweepParam::P => {
                GameConfig::new(template.players(), template.gamma(), template.channel(), value)?
                    .with_disentangler(template.apply_disentangler())
            }
            SweepParam::Gamma => {
                GameConfig::new(template.players(), value, template.channel(), 0.0)?
                    .with_disentangler(template.apply_disentangler())
            }
        };
        let rho = run_game(&cfg, &profile)?;
        ensure_valid(&rho).map_err(|error| match error {
            CliError::Validation(message) => {
                CliError::Validation(format!("at {parameter_name}={value}: {message}"))
            }
            other => other,
        })?;
        payoffs.push(expected_payoffs(&rho, &table)?);
    }

    let result = SweepResult {
        parameter_name: parameter_name.to_string(),
        grid,
        payoffs,
        config: template,
        profile,
    };

    let output_label = args
        .out
        .as_deref()
        .map(|path| path.display().to_string())
        .unwrap_or_else(|| "-".to_string());
    let manifest = RunManifest::new("sweep", &output_label);
    match &args.out {
        Some(path) => {
            let mut writer = BufWriter::new(create_file(path)?);
            manifest.write(&mut writer).map_err(io_error)?;
            result.write_csv(&mut writer).map_err(io_error)?;
            writer.flush().map_err(io_error)
        }
        None => {
            manifest.write(&mut *out).map_err(io_error)?;
            result.write_csv(&mut *out).map_err(io_error)
        }
    }
}

fn create_file(path: &Path) -> Result<File, CliError> {
    File::create(path)
        .map_err(|error| CliError::Usage(format!("cannot write {}: {error}", path.display())))
}

fn cmd_ne_check(args: &NeCheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.game.config()?;
    let profile = args.game.profile()?;
    if args.deviator >= cfg.players() {
        return Err(CliError::Usage(format!(
            "--deviator {} out of range for --n {}",
            args.deviator,
            cfg.players()
        )));
    }
    // the profile's own final state must be sound before scanning
    ensure_valid(&run_game(&cfg, &profile)?)?;
    let report = best_response_scan(&cfg, &profile, args.deviator, args.grid)?;

    (|| -> io::Result<()> {
        writeln!(out, "base_payoff={}", format_significant(report.base_payoff, 12))?;
        writeln!(
            out,
            "best_payoff={}",
            format_significant(report.best_deviation_payoff, 12)
        )?;
        writeln!(out, "gain={:.3e}", report.gain)?;
        let best = report.best_deviation_params;
        writeln!(
            out,
            "best_params={},{},{}",
            format_significant(best.theta(), 12),
            format_significant(best.alpha(), 12),
            format_significant(best.beta(), 12)
        )?;
        writeln!(out, "grid={}", report.grid_resolution)
    })()
    .map_err(io_error)?;

    if report.gain <= NE_GAIN_THRESHOLD {
        Ok(())
    } else {
        Err(CliError::NeCheckFailed { gain: report.gain })
    }
}

fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !args.max_n.is_multiple_of(2) || !(4..=12).contains(&args.max_n) {
        return Err(CliError::Usage(format!(
            "--max-n must be even and between 4 and 12, got {}",
            args.max_n
        )));
    }
    let output_label = args
        .out
        .as_deref()
        .map(|path| path.display().to_string())
        .unwrap_or_else(|| "-".to_string());
    let manifest = RunManifest::new("table", &output_label);

    let write_body = |w: &mut dyn Write| -> io::Result<()> {
        manifest.write(&mut *w)?;
        writeln!(w, "n,quantum_payoff,classical_payoff,pareto_payoff")?;
        for players in (4..=args.max_n).step_by(2) {
            let quantum = quantum_ne_payoff(players).expect("even n >= 4");
            let classical = classical_random_payoff(players).expect("n >= 2");
            let pareto = pareto_payoff(players).expect("even n >= 4");
            writeln!(
                w,
                "{players},{},{},{}",
                format_significant(quantum, 12),
                format_significant(classical, 12),
                format_significant(pareto, 12)
            )?;
        }
        Ok(())
    };

    match &args.out {
        Some(path) => {
            let mut writer = BufWriter::new(create_file(path)?);
            write_body(&mut writer).map_err(io_error)?;
            writer.flush().map_err(io_error)
        }
        None => write_body(out).map_err(io_error),
    }
}

fn cmd_payoff_table(args: &PayoffTableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(2..=12).contains(&args.n) {
        return Err(CliError::Usage(format!(
            "--n must be between 2 and 12, got {}",
            args.n
        )));
    }
    let table = PayoffTable::minority(args.n)?;
    let output_label = args
        .out
        .as_deref()
        .map(|path| path.display().to_string())
        .unwrap_or_else(|| "-".to_string());
    let manifest = RunManifest::new("payoff-table", &output_label);
    match &args.out {
        Some(path) => {
            let mut writer = BufWriter::new(create_file(path)?);
            manifest.write(&mut writer).map_err(io_error)?;
            table.write_csv(&mut writer).map_err(io_error)?;
            writer.flush().map_err(io_error)
        }
        None => {
            manifest.write(&mut *out).map_err(io_error)?;
            table.write_csv(&mut *out).map_err(io_error)
        }
    }
}
