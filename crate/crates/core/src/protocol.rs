//! The entangle-decohere-move-decohere game pipeline.
//!
//! One game run is
//!
//! ```text
//! rho_0 = |00...0><00...0|            initial state
//! rho_1 = J rho_0 J'                  entanglement, J = exp(i gamma/2 X^(x)N)
//! rho_2 = D(rho_1, p)                 partial decoherence
//! rho_3 = (M_1 (x) ... (x) M_N) rho_2 (...)'   players' moves
//! rho_4 = D(rho_3, p')                partial decoherence
//! rho_5 = J' rho_4 J                  only if the disentangler is enabled
//! ```
//!
//! and expected payoffs are read from the diagonal of the final state. All
//! stages are exact matrix computations; nothing is sampled.

use num_complex::Complex64;

use crate::channels::{make_channel, ChannelKind, KrausChannel};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::minority::PayoffTable;
use crate::state::{DensityMatrix, StateVector};

/// One player's SU(2) move, parameterized by (theta, alpha, beta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyParams {
    theta: f64,
    alpha: f64,
    beta: f64,
}

impl StrategyParams {
    /// Requires theta in [0, pi] and alpha, beta in [-pi, pi].
    pub fn new(theta: f64, alpha: f64, beta: f64) -> Result<Self> {
        let pi = std::f64::consts::PI;
        if !(0.0..=pi).contains(&theta) || theta.is_nan() {
            return Err(Error::AngleRange {
                name: "theta",
                value: theta,
                min: 0.0,
                max: pi,
            });
        }
        for (name, value) in [("alpha", alpha), ("beta", beta)] {
            if !(-pi..=pi).contains(&value) || value.is_nan() {
                return Err(Error::AngleRange {
                    name,
                    value,
                    min: -pi,
                    max: pi,
                });
            }
        }
        Ok(Self { theta, alpha, beta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Configuration of one game instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    players: usize,
    gamma: f64,
    channel: ChannelKind,
    p: f64,
    p_prime: f64,
    apply_disentangler: bool,
}

impl GameConfig {
    /// `p_prime` defaults to `p` and the disentangler to off.
    pub fn new(players: usize, gamma: f64, channel: ChannelKind, p: f64) -> Result<Self> {
        if players < 2 {
            return Err(Error::PlayerCount {
                players,
                requirement: "need at least 2 players",
            });
        }
        let half_pi = std::f64::consts::FRAC_PI_2;
        if !(0.0..=half_pi).contains(&gamma) || gamma.is_nan() {
            return Err(Error::AngleRange {
                name: "gamma",
                value: gamma,
                min: 0.0,
                max: half_pi,
            });
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityRange { value: p });
        }
        Ok(Self {
            players,
            gamma,
            channel,
            p,
            p_prime: p,
            apply_disentangler: false,
        })
    }

    /// Overrides the second-stage decoherence probability.
    pub fn with_p_prime(mut self, p_prime: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_prime) {
            return Err(Error::ProbabilityRange { value: p_prime });
        }
        self.p_prime = p_prime;
        Ok(self)
    }

    /// Enables or disables the final J' stage.
    pub fn with_disentangler(mut self, apply: bool) -> Self {
        self.apply_disentangler = apply;
        self
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn channel(&self) -> ChannelKind {
        self.channel
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p_prime(&self) -> f64 {
        self.p_prime
    }

    pub fn apply_disentangler(&self) -> bool {
        self.apply_disentangler
    }
}

/// The SU(2) strategy matrix
/// `[[e^{ia} cos(t/2), i e^{ib} sin(t/2)], [i e^{-ib} sin(t/2), e^{-ia} cos(t/2)]]`.
pub fn strategy_operator(params: &StrategyParams) -> ComplexMatrix {
    let cos = (params.theta / 2.0).cos();
    let sin = (params.theta / 2.0).sin();
    let ea = Complex64::from_polar(1.0, params.alpha);
    let eb = Complex64::from_polar(1.0, params.beta);
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[
        vec![ea * cos, i * eb * sin],
        vec![i * eb.conj() * sin, ea.conj() * cos],
    ])
    .expect("2x2")
}

/// The entangling gate `J(gamma) = exp(i gamma/2 X^(x)n)`, computed in
/// closed form as `cos(gamma/2) I + i sin(gamma/2) X^(x)n` (valid because
/// `(X^(x)n)^2 = I`).
pub fn entangler(gamma: f64, qubits: usize) -> Result<ComplexMatrix> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(0.0..=half_pi).contains(&gamma) || gamma.is_nan() {
        return Err(Error::AngleRange {
            name: "gamma",
            value: gamma,
            min: 0.0,
            max: half_pi,
        });
    }
    let dim = 1usize << qubits;
    let diag = Complex64::new((gamma / 2.0).cos(), 0.0);
    let anti = Complex64::new(0.0, (gamma / 2.0).sin());
    let zero = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_fn(dim, |r, c| {
        if r == c {
            diag
        } else if c == dim - 1 - r {
            anti
        } else {
            zero
        }
    })
}

/// Runs the full pipeline with a uniform decoherence probability per stage.
pub fn run_game(cfg: &GameConfig, strategies: &[StrategyParams]) -> Result<DensityMatrix> {
    let first = vec![cfg.p; cfg.players];
    let second = vec![cfg.p_prime; cfg.players];
    run_game_heterogeneous(cfg, strategies, &first, &second)
}

/// Runs the pipeline with per-qubit decoherence probabilities for each of
/// the two noise stages (`cfg.p`/`cfg.p_prime` are ignored).
pub fn run_game_heterogeneous(
    cfg: &GameConfig,
    strategies: &[StrategyParams],
    first_stage: &[f64],
    second_stage: &[f64],
) -> Result<DensityMatrix> {
    if first_stage.len() != cfg.players || second_stage.len() != cfg.players {
        return Err(Error::DimensionMismatch {
            left: first_stage.len().min(second_stage.len()),
            right: cfg.players,
        });
    }
    let first = stage_channels(cfg.channel, first_stage)?;
    let second = stage_channels(cfg.channel, second_stage)?;
    run_pipeline(cfg, strategies, &first, &second)
}

/// Runs the pipeline with explicit per-qubit channels for both noise
/// stages. The channels are applied as given, without a completeness
/// check, so callers can probe the effect of malformed channels and catch
/// them in the final-state validation.
pub fn run_game_with_channels(
    cfg: &GameConfig,
    strategies: &[StrategyParams],
    first_stage: &[KrausChannel],
    second_stage: &[KrausChannel],
) -> Result<DensityMatrix> {
    if first_stage.len() != cfg.players || second_stage.len() != cfg.players {
        return Err(Error::DimensionMismatch {
            left: first_stage.len().min(second_stage.len()),
            right: cfg.players,
        });
    }
    let first: Vec<Option<KrausChannel>> = first_stage.iter().cloned().map(Some).collect();
    let second: Vec<Option<KrausChannel>> = second_stage.iter().cloned().map(Some).collect();
    run_pipeline(cfg, strategies, &first, &second)
}

fn run_pipeline(
    cfg: &GameConfig,
    strategies: &[StrategyParams],
    first: &[Option<KrausChannel>],
    second: &[Option<KrausChannel>],
) -> Result<DensityMatrix> {
    if strategies.len() != cfg.players {
        return Err(Error::ProfileLength {
            expected: cfg.players,
            got: strategies.len(),
        });
    }
    let mut rho = DensityMatrix::ground(cfg.players);
    rho.apply_entangler(cfg.gamma, false);
    apply_stage(&mut rho, first);
    for (qubit, params) in strategies.iter().enumerate() {
        rho.apply_single_qubit_unitary(&strategy_operator(params), qubit);
    }
    apply_stage(&mut rho, second);
    if cfg.apply_disentangler {
        rho.apply_entangler(cfg.gamma, true);
    }
    Ok(rho)
}

/// Builds one channel per qubit; `None` marks qubits the stage skips
/// (p = 0 or no decoherence configured), which is exact since every kind
/// at p = 0 is the identity map.
fn stage_channels(kind: ChannelKind, probs: &[f64]) -> Result<Vec<Option<KrausChannel>>> {
    probs
        .iter()
        .map(|&p| {
            if kind == ChannelKind::Identity || p == 0.0 {
                make_channel(kind, p)?;
                Ok(None)
            } else {
                make_channel(kind, p).map(Some)
            }
        })
        .collect()
}

fn apply_stage(rho: &mut DensityMatrix, channels: &[Option<KrausChannel>]) {
    for (qubit, channel) in channels.iter().enumerate() {
        if let Some(channel) = channel {
            rho.apply_single_qubit_kraus(channel.operators(), qubit);
        }
    }
}

/// Noiseless pipeline on a pure state; requires p = p' = 0. Used to
/// cross-check the density-matrix path.
pub fn run_game_statevector(cfg: &GameConfig, strategies: &[StrategyParams]) -> Result<StateVector> {
    if cfg.p != 0.0 || cfg.p_prime != 0.0 {
        return Err(Error::ProbabilityRange {
            value: cfg.p.max(cfg.p_prime),
        });
    }
    if strategies.len() != cfg.players {
        return Err(Error::ProfileLength {
            expected: cfg.players,
            got: strategies.len(),
        });
    }
    let mut psi = StateVector::ground(cfg.players);
    psi.apply_entangler(cfg.gamma, false);
    for (qubit, params) in strategies.iter().enumerate() {
        psi.apply_single_qubit(&strategy_operator(params), qubit);
    }
    if cfg.apply_disentangler {
        psi.apply_entangler(cfg.gamma, true);
    }
    Ok(psi)
}

/// Expected payoff per player: `<$_k> = sum_xi <xi|rho|xi> $_xi^k`.
pub fn expected_payoffs(rho: &DensityMatrix, table: &PayoffTable) -> Result<Vec<f64>> {
    if table.outcomes() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: table.outcomes(),
            right: rho.dim(),
        });
    }
    let probabilities = rho.computational_probabilities();
    let mut payoffs = vec![0.0; table.players()];
    for (outcome, &probability) in probabilities.iter().enumerate() {
        for (player, payoff) in payoffs.iter_mut().enumerate() {
            *payoff += probability * table.payoff(outcome, player);
        }
    }
    Ok(payoffs)
}
