//! Nash-equilibrium verification by exhaustive best-response scans, the
//! closed-form payoff oracles, and the payoff-vs-noise/entanglement sweeps.

use std::io::Write;

use rayon::prelude::*;

use crate::channels::{make_channel, ChannelKind};
use crate::error::{Error, Result};
use crate::minority::{classical_random_payoff, ne_strategy, quantum_ne_payoff, NeFamilyPoint, PayoffTable};
use crate::protocol::{expected_payoffs, run_game, strategy_operator, GameConfig, StrategyParams};
use crate::state::DensityMatrix;

/// Outcome of a best-response scan for one deviating player.
#[derive(Debug, Clone, Copy)]
pub struct DeviationReport {
    /// Payoff to the deviator at the unmodified profile.
    pub base_payoff: f64,
    /// Best payoff found over the grid plus the profile's own point.
    pub best_deviation_payoff: f64,
    /// Argmax of the scan (first encountered in lexicographic
    /// theta, alpha, beta grid order; the profile's own point is the
    /// incumbent).
    pub best_deviation_params: StrategyParams,
    /// `best_deviation_payoff - base_payoff`.
    pub gain: f64,
    /// Points per axis.
    pub grid_resolution: usize,
}

impl DeviationReport {
    /// Grid-level equilibrium test at the 1e-9 gain threshold.
    pub fn is_equilibrium(&self) -> bool {
        self.gain <= 1e-9
    }
}

/// Payoff to `deviator` when they play `deviation` and everyone else keeps
/// `profile`.
pub fn deviation_payoff(
    cfg: &GameConfig,
    profile: &[StrategyParams],
    deviator: usize,
    deviation: StrategyParams,
) -> Result<f64> {
    if profile.len() != cfg.players() {
        return Err(Error::ProfileLength {
            expected: cfg.players(),
            got: profile.len(),
        });
    }
    if deviator >= cfg.players() {
        return Err(Error::PlayerIndex {
            index: deviator,
            players: cfg.players(),
        });
    }
    let mut moves = profile.to_vec();
    moves[deviator] = deviation;
    let rho = run_game(cfg, &moves)?;
    let table = PayoffTable::minority(cfg.players())?;
    Ok(expected_payoffs(&rho, &table)?[deviator])
}

/// Precomputed pipeline state for scanning one player's deviations: the
/// entangling stage, first decoherence stage, and every other player's move
/// are applied once; each candidate then only costs the deviator's move,
/// the second decoherence stage, and the payoff contraction.
///
/// Reordering the move stage this way is exact because single-qubit
/// operators on distinct qubits commute.
struct ScanContext {
    base: DensityMatrix,
    cfg: GameConfig,
    deviator: usize,
    table: PayoffTable,
}

impl ScanContext {
    fn new(cfg: &GameConfig, profile: &[StrategyParams], deviator: usize) -> Result<Self> {
        if profile.len() != cfg.players() {
            return Err(Error::ProfileLength {
                expected: cfg.players(),
                got: profile.len(),
            });
        }
        if deviator >= cfg.players() {
            return Err(Error::PlayerIndex {
                index: deviator,
                players: cfg.players(),
            });
        }
        let mut rho = DensityMatrix::ground(cfg.players());
        rho.apply_entangler(cfg.gamma(), false);
        if cfg.channel() != ChannelKind::Identity && cfg.p() != 0.0 {
            let channel = make_channel(cfg.channel(), cfg.p())?;
            for qubit in 0..cfg.players() {
                rho.apply_single_qubit_kraus(channel.operators(), qubit);
            }
        }
        for (qubit, params) in profile.iter().enumerate() {
            if qubit != deviator {
                rho.apply_single_qubit_unitary(&strategy_operator(params), qubit);
            }
        }
        Ok(Self {
            base: rho,
            cfg: cfg.clone(),
            deviator,
            table: PayoffTable::minority(cfg.players())?,
        })
    }

    fn eval(&self, deviation: &StrategyParams) -> f64 {
        let mut rho = self.base.clone();
        rho.apply_single_qubit_unitary(&strategy_operator(deviation), self.deviator);
        if self.cfg.channel() != ChannelKind::Identity && self.cfg.p_prime() != 0.0 {
            let channel = make_channel(self.cfg.channel(), self.cfg.p_prime())
                .expect("validated probability");
            for qubit in 0..self.cfg.players() {
                rho.apply_single_qubit_kraus(channel.operators(), qubit);
            }
        }
        if self.cfg.apply_disentangler() {
            rho.apply_entangler(self.cfg.gamma(), true);
        }
        let probabilities = rho.computational_probabilities();
        probabilities
            .iter()
            .enumerate()
            .map(|(outcome, p)| p * self.table.payoff(outcome, self.deviator))
            .sum()
    }
}

/// Uniform grid over the strategy space: theta in [0, pi] and alpha, beta
/// in [-pi, pi], endpoints included, lexicographic order.
fn strategy_grid(points: usize) -> Vec<StrategyParams> {
    let pi = std::f64::consts::PI;
    let theta_axis = linspace(0.0, pi, points);
    let phase_axis = linspace(-pi, pi, points);
    let mut grid = Vec::with_capacity(points * points * points);
    for &theta in &theta_axis {
        for &alpha in &phase_axis {
            for &beta in &phase_axis {
                grid.push(StrategyParams::new(theta, alpha, beta).expect("grid point in range"));
            }
        }
    }
    grid
}

/// `n >= 2` evenly spaced points from `a` to `b`, endpoints exact.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least 2 points");
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect()
}

/// Exhaustive deviation scan over `grid_n` points per axis plus the
/// profile's own strategy. Grid points are evaluated in parallel; the
/// argmax is reduced sequentially so ties always resolve to the first
/// candidate in lexicographic order.
pub fn best_response_scan(
    cfg: &GameConfig,
    profile: &[StrategyParams],
    deviator: usize,
    grid_n: usize,
) -> Result<DeviationReport> {
    if grid_n < 2 {
        return Err(Error::GridSize { got: grid_n });
    }
    let context = ScanContext::new(cfg, profile, deviator)?;
    let own = profile[deviator];
    let base_payoff = context.eval(&own);

    let grid = strategy_grid(grid_n);
    let payoffs: Vec<f64> = grid.par_iter().map(|params| context.eval(params)).collect();

    let mut best_payoff = base_payoff;
    let mut best_params = own;
    for (params, payoff) in grid.iter().zip(payoffs.iter()) {
        if *payoff > best_payoff {
            best_payoff = *payoff;
            best_params = *params;
        }
    }
    Ok(DeviationReport {
        base_payoff,
        best_deviation_payoff: best_payoff,
        best_deviation_params: best_params,
        gain: best_payoff - base_payoff,
        grid_resolution: grid_n,
    })
}

/// Best payoff over symmetric profiles `M(theta, alpha, beta)` on the same
/// grid, with the whole profile moving together. Used for the odd-N
/// no-advantage checks.
pub fn symmetric_profile_scan_max(
    players: usize,
    gamma: f64,
    grid_n: usize,
) -> Result<(f64, StrategyParams)> {
    if grid_n < 2 {
        return Err(Error::GridSize { got: grid_n });
    }
    let cfg = GameConfig::new(players, gamma, ChannelKind::Identity, 0.0)?;
    let table = PayoffTable::minority(players)?;
    let grid = strategy_grid(grid_n);
    let payoffs: Vec<f64> = grid
        .par_iter()
        .map(|params| {
            let rho = run_game(&cfg, &vec![*params; players]).expect("valid config");
            let probabilities = rho.computational_probabilities();
            probabilities
                .iter()
                .enumerate()
                .map(|(outcome, p)| p * table.payoff(outcome, 0))
                .sum()
        })
        .collect();
    let mut best = f64::NEG_INFINITY;
    let mut best_params = grid[0];
    for (params, payoff) in grid.iter().zip(payoffs.iter()) {
        if *payoff > best {
            best = *payoff;
            best_params = *params;
        }
    }
    Ok((best, best_params))
}

/// Tabulated payoff curves over one swept parameter.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// `"p"` or `"gamma"`.
    pub parameter_name: String,
    pub grid: Vec<f64>,
    /// One payoff vector (all players) per grid point.
    pub payoffs: Vec<Vec<f64>>,
    /// Config template the sweep was built from.
    pub config: GameConfig,
    /// The fixed strategy profile.
    pub profile: Vec<StrategyParams>,
}

impl SweepResult {
    /// Per-point payoffs of one player.
    pub fn player_column(&self, player: usize) -> Vec<f64> {
        self.payoffs.iter().map(|row| row[player]).collect()
    }

    /// Writes the CSV body: `#`-prefixed config lines, a header row, then
    /// one row per grid point with floats at 12 significant digits and LF
    /// line endings.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let gamma = if self.parameter_name == "gamma" {
            "swept".to_string()
        } else {
            format_significant(self.config.gamma(), 12)
        };
        writeln!(w, "# n={}", self.config.players())?;
        writeln!(w, "# gamma={gamma}")?;
        writeln!(w, "# channel={}", self.config.channel())?;
        writeln!(w, "# p-prime=tracks-p")?;
        let profile = self
            .profile
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
        writeln!(w, "# profile={profile}")?;
        write!(w, "param")?;
        for player in 1..=self.config.players() {
            write!(w, ",payoff_{player}")?;
        }
        w.write_all(b"\n")?;
        for (value, payoffs) in self.grid.iter().zip(self.payoffs.iter()) {
            write!(w, "{}", format_significant(*value, 12))?;
            for payoff in payoffs {
                write!(w, ",{}", format_significant(*payoff, 12))?;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Decimal representation with the given number of significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Payoffs of `profile` for each decoherence probability in `p_grid`,
/// with p' tracking p at every point.
pub fn sweep_decoherence(
    template: &GameConfig,
    kind: ChannelKind,
    p_grid: &[f64],
    profile: &[StrategyParams],
) -> Result<SweepResult> {
    let table = PayoffTable::minority(template.players())?;
    let configs: Vec<GameConfig> = p_grid
        .iter()
        .map(|&p| {
            GameConfig::new(template.players(), template.gamma(), kind, p)
                .map(|c| c.with_disentangler(template.apply_disentangler()))
        })
        .collect::<Result<_>>()?;
    let payoffs: Vec<Vec<f64>> = configs
        .par_iter()
        .map(|cfg| {
            let rho = run_game(cfg, profile)?;
            expected_payoffs(&rho, &table)
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        parameter_name: "p".to_string(),
        grid: p_grid.to_vec(),
        payoffs,
        config: GameConfig::new(template.players(), template.gamma(), kind, 0.0)?
            .with_disentangler(template.apply_disentangler()),
        profile: profile.to_vec(),
    })
}

/// Payoffs of `profile` for each entangling parameter in `gamma_grid`,
/// with p = p' = 0.
pub fn sweep_entanglement(
    template: &GameConfig,
    gamma_grid: &[f64],
    profile: &[StrategyParams],
) -> Result<SweepResult> {
    let table = PayoffTable::minority(template.players())?;
    let configs: Vec<GameConfig> = gamma_grid
        .iter()
        .map(|&gamma| {
            GameConfig::new(template.players(), gamma, template.channel(), 0.0)
                .map(|c| c.with_disentangler(template.apply_disentangler()))
        })
        .collect::<Result<_>>()?;
    let payoffs: Vec<Vec<f64>> = configs
        .par_iter()
        .map(|cfg| {
            let rho = run_game(cfg, profile)?;
            expected_payoffs(&rho, &table)
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        parameter_name: "gamma".to_string(),
        grid: gamma_grid.to_vec(),
        payoffs,
        config: GameConfig::new(
            template.players(),
            template.gamma(),
            template.channel(),
            0.0,
        )?
        .with_disentangler(template.apply_disentangler()),
        profile: profile.to_vec(),
    })
}

/// Closed-form NE payoff under phase damping where `n1` qubits decohere
/// with probability `p1` and `n2` with `p2`:
/// `Cl + (Q - Cl) (1 - p1)^(n1/2) (1 - p2)^(n2/2)`.
pub fn phase_damping_closed_form(
    n1: usize,
    p1: f64,
    n2: usize,
    p2: f64,
    players: usize,
) -> Result<f64> {
    if !players.is_multiple_of(2) || players < 4 {
        return Err(Error::PlayerCount {
            players,
            requirement: "closed form requires an even player count >= 4",
        });
    }
    if n1 + n2 != players {
        return Err(Error::QubitSplit { n1, n2, players });
    }
    for p in [p1, p2] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityRange { value: p });
        }
    }
    let classical = classical_random_payoff(players)?;
    let quantum = quantum_ne_payoff(players)?;
    Ok(classical
        + (quantum - classical)
            * (1.0 - p1).powf(n1 as f64 / 2.0)
            * (1.0 - p2).powf(n2 as f64 / 2.0))
}

/// Expected payoff in the 4-player game when player k selects the family
/// member with index `n_k` (eta = 0) at full entanglement without noise.
/// The result depends only on `(n_A + n_B + n_C + n_D) mod 4`:
/// 0 -> 1/4, 1 or 3 -> 1/8, 2 -> 0.
pub fn mod4_profile_payoff(indices: [i32; 4]) -> Result<f64> {
    let cfg = GameConfig::new(4, std::f64::consts::FRAC_PI_2, ChannelKind::Identity, 0.0)?;
    let profile: Vec<StrategyParams> = indices
        .iter()
        .map(|&n| ne_strategy(4, NeFamilyPoint::new(n, 0.0)))
        .collect::<Result<_>>()?;
    let rho = run_game(&cfg, &profile)?;
    let payoffs = expected_payoffs(&rho, &PayoffTable::minority(4)?)?;
    Ok(payoffs[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ne4() -> StrategyParams {
        ne_strategy(4, NeFamilyPoint::new(0, 0.0)).unwrap()
    }

    fn noiseless4() -> GameConfig {
        GameConfig::new(4, FRAC_PI_2, ChannelKind::Identity, 0.0).unwrap()
    }

    /// The analytic deviation payoff for N=4 when the others play the NE:
    /// 1/8 + 1/8 cos(pi/8 + alpha - beta) sin(theta).
    fn analytic_deviation(theta: f64, alpha: f64, beta: f64) -> f64 {
        0.125 + 0.125 * (PI / 8.0 + alpha - beta).cos() * theta.sin()
    }

    #[test]
    fn deviation_payoff_matches_analytic_formula_at_key_points() {
        let cfg = noiseless4();
        let profile = vec![ne4(); 4];
        // theta = pi/2 at the NE phases gives 1/4
        let at_ne = deviation_payoff(&cfg, &profile, 0, ne4()).unwrap();
        assert!((at_ne - 0.25).abs() < 1e-12);
        // the identity move gives 1/8
        let classical = deviation_payoff(
            &cfg,
            &profile,
            0,
            StrategyParams::new(0.0, 0.0, 0.0).unwrap(),
        )
        .unwrap();
        assert!((classical - 0.125).abs() < 1e-12);
    }

    #[test]
    fn deviation_payoff_matches_analytic_formula_on_a_grid() {
        let cfg = noiseless4();
        let profile = vec![ne4(); 4];
        for &theta in &linspace(0.0, PI, 5) {
            for &alpha in &linspace(-PI, PI, 5) {
                for &beta in &linspace(-PI, PI, 5) {
                    let deviation = StrategyParams::new(theta, alpha, beta).unwrap();
                    let simulated = deviation_payoff(&cfg, &profile, 0, deviation).unwrap();
                    let formula = analytic_deviation(theta, alpha, beta);
                    assert!(
                        (simulated - formula).abs() < 1e-10,
                        "({theta},{alpha},{beta}): {simulated} vs {formula}"
                    );
                }
            }
        }
    }

    #[test]
    fn deviation_payoff_validates_inputs() {
        let cfg = noiseless4();
        let profile = vec![ne4(); 4];
        assert!(deviation_payoff(&cfg, &profile[..3], 0, ne4()).is_err());
        assert!(deviation_payoff(&cfg, &profile, 4, ne4()).is_err());
    }

    #[test]
    fn scan_context_agrees_with_run_game_route() {
        let cfg = GameConfig::new(4, FRAC_PI_2, ChannelKind::Depolarizing, 0.3).unwrap();
        let profile = vec![ne4(); 4];
        let context = ScanContext::new(&cfg, &profile, 1).unwrap();
        for (theta, alpha, beta) in [(0.3, 0.2, -0.7), (2.0, -1.0, 0.5), (FRAC_PI_2, 0.0, 0.0)] {
            let deviation = StrategyParams::new(theta, alpha, beta).unwrap();
            let fast = context.eval(&deviation);
            let slow = deviation_payoff(&cfg, &profile, 1, deviation).unwrap();
            assert!((fast - slow).abs() < 1e-12);
        }
    }

    #[test]
    fn ne_profile_survives_a_grid_scan() {
        let report = best_response_scan(&noiseless4(), &[ne4(); 4], 0, 9).unwrap();
        assert!((report.base_payoff - 0.25).abs() < 1e-12);
        assert!(report.gain <= 1e-9, "gain {}", report.gain);
        assert!(report.best_deviation_payoff >= report.base_payoff - 1e-12);
        assert!(report.is_equilibrium());
    }

    #[test]
    fn all_classical_profile_fails_the_scan() {
        let classical = StrategyParams::new(0.0, 0.0, 0.0).unwrap();
        let report = best_response_scan(&noiseless4(), &[classical; 4], 0, 9).unwrap();
        assert!(report.gain > 1e-3, "expected a positive gain, got {}", report.gain);
        assert!(!report.is_equilibrium());
    }

    #[test]
    fn scan_rejects_degenerate_grid() {
        assert!(best_response_scan(&noiseless4(), &[ne4(); 4], 0, 1).is_err());
    }

    #[test]
    fn phase_damping_sweep_follows_the_corner_coherence_decay() {
        // Stage-1 damping scales the GHZ corner coherence by (1-p) per
        // qubit, and stage-2 damping never changes the diagonal, so the
        // simulated sweep in the per-stage probability p is exactly
        // Cl + (Q - Cl)(1-p)^N. This equals the closed form of
        // `phase_damping_closed_form` evaluated at the cumulative two-stage
        // probability 1-(1-p)^2 rather than at p itself.
        let grid = linspace(0.0, 1.0, 11);
        let sweep = sweep_decoherence(&noiseless4(), ChannelKind::PhaseDamping, &grid, &[ne4(); 4])
            .unwrap();
        for (p, payoffs) in sweep.grid.iter().zip(sweep.payoffs.iter()) {
            let expected = 0.125 + 0.125 * (1.0 - p).powi(4);
            let cumulative = 1.0 - (1.0 - p) * (1.0 - p);
            let closed = phase_damping_closed_form(4, cumulative, 0, 0.0, 4).unwrap();
            for payoff in payoffs {
                assert!((payoff - expected).abs() < 1e-12, "p={p}");
                assert!((payoff - closed).abs() < 1e-12, "p={p}");
            }
        }
    }

    #[test]
    fn entanglement_sweep_endpoints() {
        // gamma = 0 is the classical fair-coin game (theta = pi/2 means
        // P(1) = 1/2), gamma = pi/2 the fully entangled NE
        let grid = linspace(0.0, FRAC_PI_2, 5);
        let sweep = sweep_entanglement(&noiseless4(), &grid, &[ne4(); 4]).unwrap();
        let first = &sweep.payoffs[0];
        let last = &sweep.payoffs[sweep.payoffs.len() - 1];
        for payoff in first {
            assert!((payoff - 0.125).abs() < 1e-10);
        }
        for payoff in last {
            assert!((payoff - 0.25).abs() < 1e-10);
        }

        let template6 = GameConfig::new(6, FRAC_PI_2, ChannelKind::Identity, 0.0).unwrap();
        let ne6 = ne_strategy(6, NeFamilyPoint::new(0, 0.0)).unwrap();
        let sweep6 = sweep_entanglement(&template6, &grid, &[ne6; 6]).unwrap();
        let last6 = &sweep6.payoffs[sweep6.payoffs.len() - 1];
        for payoff in last6 {
            assert!((payoff - 5.0 / 16.0).abs() < 1e-10);
        }
    }

    #[test]
    fn closed_form_values() {
        assert!((phase_damping_closed_form(4, 0.0, 0, 0.0, 4).unwrap() - 0.25).abs() < 1e-15);
        assert!((phase_damping_closed_form(4, 1.0, 0, 0.0, 4).unwrap() - 0.125).abs() < 1e-15);
        assert!(
            (phase_damping_closed_form(2, 0.5, 2, 0.0, 4).unwrap() - 0.1875).abs() < 1e-15
        );
        assert!(phase_damping_closed_form(3, 0.0, 0, 0.0, 4).is_err());
        assert!(phase_damping_closed_form(5, 0.0, 0, 0.0, 5).is_err());
        assert!(phase_damping_closed_form(4, 1.5, 0, 0.0, 4).is_err());
    }

    #[test]
    fn heterogeneous_phase_damping_simulation_matches_closed_form() {
        use crate::protocol::run_game_heterogeneous;
        let cfg = GameConfig::new(4, FRAC_PI_2, ChannelKind::PhaseDamping, 0.0).unwrap();
        let profile = vec![ne4(); 4];
        let table = PayoffTable::minority(4).unwrap();
        // two qubits at p = 0.5 per stage, two noiseless
        let probs = [0.5, 0.5, 0.0, 0.0];
        let rho = run_game_heterogeneous(&cfg, &profile, &probs, &probs).unwrap();
        let payoffs = expected_payoffs(&rho, &table).unwrap();
        // two applications of phase damping at p compose to damping at
        // 1-(1-p)^2, so each noisy qubit carries (1-p_eff) = (1-p)^2
        let expected = phase_damping_closed_form(2, 1.0 - 0.5f64.powi(2), 2, 0.0, 4).unwrap();
        for payoff in payoffs {
            assert!((payoff - expected).abs() < 1e-10, "{payoff} vs {expected}");
        }
    }

    #[test]
    fn conjugate_profile_restores_the_quantum_payoff_at_full_flip_noise() {
        // At p = 1 both stages flip every qubit deterministically and
        // X M(t,a,b) X = M(t,-a,-b), so the sign-flipped profile plays the
        // noiseless NE game up to an outcome complement, which the Minority
        // table scores identically. Exactly 1/4, and a grid scan finds no
        // profitable deviation. (At p = 0.75 this profile is not yet an
        // equilibrium: payoff 0.1254, best-response gain 7.3e-4.)
        let alternate = StrategyParams::new(FRAC_PI_2, PI / 16.0, -PI / 16.0).unwrap();
        for kind in [ChannelKind::BitFlip, ChannelKind::BitPhaseFlip] {
            let cfg = GameConfig::new(4, FRAC_PI_2, kind, 1.0).unwrap();
            let rho = run_game(&cfg, &[alternate; 4]).unwrap();
            let payoffs = expected_payoffs(&rho, &PayoffTable::minority(4).unwrap()).unwrap();
            for payoff in payoffs {
                assert!((payoff - 0.25).abs() < 1e-10, "{kind}: {payoff}");
            }
            let report = best_response_scan(&cfg, &[alternate; 4], 0, 9).unwrap();
            assert!(report.gain <= 1e-9, "{kind}: gain {:.3e}", report.gain);
        }
    }

    #[test]
    fn mod4_rule_examples() {
        assert!((mod4_profile_payoff([0, 0, 0, 0]).unwrap() - 0.25).abs() < 1e-10);
        assert!((mod4_profile_payoff([1, 0, 0, 0]).unwrap() - 0.125).abs() < 1e-10);
        assert!(mod4_profile_payoff([1, 1, 0, 0]).unwrap().abs() < 1e-10);
    }

    #[test]
    fn format_significant_examples() {
        assert_eq!(format_significant(0.25, 12), "0.250000000000");
        assert_eq!(format_significant(0.0, 12), "0.00000000000");
        assert_eq!(format_significant(1.0, 12), "1.00000000000");
        assert_eq!(format_significant(std::f64::consts::PI, 12), "3.14159265359");
        assert_eq!(format_significant(-0.125, 12), "-0.125000000000");
    }

    #[test]
    fn sweep_csv_schema_is_stable() {
        let grid = vec![0.0, 0.5, 1.0];
        let sweep = sweep_decoherence(
            &GameConfig::new(4, FRAC_PI_2, ChannelKind::Identity, 0.0).unwrap(),
            ChannelKind::Identity,
            &grid,
            &[ne4(); 4],
        )
        .unwrap();
        let mut buf = Vec::new();
        sweep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains('\r'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# n=4");
        assert_eq!(lines[1], "# gamma=1.57079632679");
        assert_eq!(lines[2], "# channel=none");
        assert_eq!(lines[3], "# p-prime=tracks-p");
        assert!(lines[4].starts_with("# profile=1.57079632679,-0.196349540849,0.196349540849;"));
        assert_eq!(lines[5], "param,payoff_1,payoff_2,payoff_3,payoff_4");
        assert_eq!(
            lines[6],
            "0.00000000000,0.250000000000,0.250000000000,0.250000000000,0.250000000000"
        );
        assert_eq!(lines.len(), 6 + 3);
    }
}
