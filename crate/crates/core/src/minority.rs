//! Minority-game payoff tables, classical baselines, and the closed-form
//! quantum Nash-equilibrium strategy families for even player counts.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::protocol::{expected_payoffs, run_game, GameConfig, StrategyParams};

/// Per-outcome payoff vectors for an N-player two-choice game.
///
/// Outcomes are computational basis indices; player k's bit is read from
/// the k-th position of the index's N-bit expansion, most significant
/// first.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTable {
    players: usize,
    rows: Vec<Vec<f64>>,
}

impl PayoffTable {
    /// The Minority rule: a player scores 1 exactly when their bit value
    /// occurs strictly fewer times than the other value; balanced outcomes
    /// (even N) pay everyone zero.
    pub fn minority(players: usize) -> Result<Self> {
        if players < 2 {
            return Err(Error::PlayerCount {
                players,
                requirement: "the Minority game needs at least 2 players",
            });
        }
        let outcomes = 1usize << players;
        let rows = (0..outcomes)
            .map(|outcome| {
                let ones = (outcome as u64).count_ones() as usize;
                let zeros = players - ones;
                (0..players)
                    .map(|player| {
                        let bit = (outcome >> (players - 1 - player)) & 1;
                        let (own, other) = if bit == 1 { (ones, zeros) } else { (zeros, ones) };
                        if own < other {
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { players, rows })
    }

    pub fn players(&self) -> usize {
        self.players
    }

    /// Number of outcomes (2^N).
    pub fn outcomes(&self) -> usize {
        self.rows.len()
    }

    pub fn payoff(&self, outcome: usize, player: usize) -> f64 {
        self.rows[outcome][player]
    }

    pub fn row(&self, outcome: usize) -> &[f64] {
        &self.rows[outcome]
    }

    /// Renders an outcome index as its N-bit string, player 0 first.
    pub fn bitstring(&self, outcome: usize) -> String {
        (0..self.players)
            .map(|player| {
                if (outcome >> (self.players - 1 - player)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// Writes `outcome,payoff_1,...,payoff_N` rows for inspection.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "outcome")?;
        for player in 1..=self.players {
            write!(w, ",payoff_{player}")?;
        }
        w.write_all(b"\n")?;
        for outcome in 0..self.outcomes() {
            write!(w, "{}", self.bitstring(outcome))?;
            for player in 0..self.players {
                write!(w, ",{}", self.payoff(outcome, player))?;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Probability that a fixed player lands in the strict minority when every
/// player picks 0 or 1 by a fair coin:
/// `2^-(N-1) * sum_{j=0}^{ceil(N/2)-2} C(N-1, j)`.
pub fn classical_random_payoff(players: usize) -> Result<f64> {
    if players < 2 {
        return Err(Error::PlayerCount {
            players,
            requirement: "need at least 2 players",
        });
    }
    // strict minority: at most ceil(N/2) - 2 peers may agree with the player
    let limit = players.div_ceil(2) as i64 - 2;
    let favorable: u128 = (0..=limit)
        .map(|j| binomial(players - 1, j as usize))
        .sum();
    Ok(favorable as f64 / (1u128 << (players - 1)) as f64)
}

fn require_even_ge4(players: usize) -> Result<()> {
    if !players.is_multiple_of(2) || players < 4 {
        return Err(Error::PlayerCount {
            players,
            requirement: "requires an even player count >= 4",
        });
    }
    Ok(())
}

/// The quantum NE payoff for even N: exactly the classical random payoff of
/// the (N-1)-player game.
pub fn quantum_ne_payoff(players: usize) -> Result<f64> {
    require_even_ge4(players)?;
    classical_random_payoff(players - 1)
}

/// Per-player payoff when every outcome has the maximum N/2 - 1 winners.
pub fn pareto_payoff(players: usize) -> Result<f64> {
    require_even_ge4(players)?;
    Ok((players as f64 / 2.0 - 1.0) / players as f64)
}

/// Odd-N counterpart: (N-1)/2 winners in every outcome.
pub fn pareto_payoff_odd(players: usize) -> Result<f64> {
    if players % 2 != 1 || players < 3 {
        return Err(Error::PlayerCount {
            players,
            requirement: "requires an odd player count >= 3",
        });
    }
    Ok((players as f64 - 1.0) / (2.0 * players as f64))
}

/// One member of the equilibrium family: integer index n and phase eta.
///
/// The derived angle is `delta = (4n + 1) pi / (4N)`; the strategy is
/// `M(pi/2, eta - delta, eta + delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeFamilyPoint {
    pub index: i32,
    pub eta: f64,
}

impl NeFamilyPoint {
    pub fn new(index: i32, eta: f64) -> Self {
        Self { index, eta }
    }

    pub fn delta(&self, players: usize) -> f64 {
        (4.0 * f64::from(self.index) + 1.0) * PI / (4.0 * players as f64)
    }
}

/// The NE strategy `M(pi/2, eta - delta, eta + delta)` for even N.
pub fn ne_strategy(players: usize, point: NeFamilyPoint) -> Result<StrategyParams> {
    require_even_ge4(players)?;
    let delta = point.delta(players);
    StrategyParams::new(FRAC_PI_2, point.eta - delta, point.eta + delta)
}

/// Total probability of balanced outcomes when all players play
/// `M(pi/2, -delta, delta)` at full entanglement without noise.
/// Proportional to `1 - sin(2 N delta)`.
pub fn balanced_state_probability(players: usize, delta: f64) -> Result<f64> {
    if !players.is_multiple_of(2) || players < 2 {
        return Err(Error::PlayerCount {
            players,
            requirement: "balanced outcomes need an even player count",
        });
    }
    let cfg = GameConfig::new(players, FRAC_PI_2, ChannelKind::Identity, 0.0)?;
    let strategy = StrategyParams::new(FRAC_PI_2, -delta, delta)?;
    let rho = run_game(&cfg, &vec![strategy; players])?;
    let half = players as u32 / 2;
    Ok(rho
        .computational_probabilities()
        .iter()
        .enumerate()
        .filter(|(outcome, _)| (*outcome as u64).count_ones() == half)
        .map(|(_, p)| p)
        .sum())
}

/// Simulated per-player payoff of the symmetric NE profile, for checking
/// against [`quantum_ne_payoff`].
pub fn simulated_ne_payoff(players: usize) -> Result<f64> {
    let strategy = ne_strategy(players, NeFamilyPoint::new(0, 0.0))?;
    let cfg = GameConfig::new(players, FRAC_PI_2, ChannelKind::Identity, 0.0)?;
    let rho = run_game(&cfg, &vec![strategy; players])?;
    let payoffs = expected_payoffs(&rho, &PayoffTable::minority(players)?)?;
    Ok(payoffs[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minority_table_known_rows() {
        let table = PayoffTable::minority(4).unwrap();
        // 0111: player 0 alone picks 0
        assert_eq!(table.row(0b0111), &[1.0, 0.0, 0.0, 0.0]);
        // 0011: balanced, everyone loses
        assert_eq!(table.row(0b0011), &[0.0, 0.0, 0.0, 0.0]);

        let table5 = PayoffTable::minority(5).unwrap();
        // 00111: players 0 and 1 share the two-player minority
        assert_eq!(table5.row(0b00111), &[1.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn minority_table_rejects_single_player() {
        assert!(PayoffTable::minority(1).is_err());
    }

    #[test]
    fn minority_table_is_complement_symmetric() {
        for players in 2..=10 {
            let table = PayoffTable::minority(players).unwrap();
            let mask = table.outcomes() - 1;
            for outcome in 0..table.outcomes() {
                assert_eq!(
                    table.row(outcome),
                    table.row(!outcome & mask),
                    "N={players} outcome={outcome}"
                );
            }
        }
    }

    #[test]
    fn bitstring_uses_player_zero_first() {
        let table = PayoffTable::minority(4).unwrap();
        assert_eq!(table.bitstring(0b0111), "0111");
        assert_eq!(table.bitstring(0), "0000");
    }

    #[test]
    fn classical_random_payoff_matches_brute_force() {
        for players in 2..=10 {
            let formula = classical_random_payoff(players).unwrap();
            // enumerate all outcomes with equal weight
            let table = PayoffTable::minority(players).unwrap();
            let weight = 1.0 / table.outcomes() as f64;
            let enumerated: f64 = (0..table.outcomes())
                .map(|outcome| table.payoff(outcome, 0) * weight)
                .sum();
            assert!(
                (formula - enumerated).abs() < 1e-15,
                "N={players}: {formula} vs {enumerated}"
            );
        }
        assert!((classical_random_payoff(4).unwrap() - 0.125).abs() < 1e-15);
        assert!((classical_random_payoff(5).unwrap() - 5.0 / 16.0).abs() < 1e-15);
        assert!((classical_random_payoff(6).unwrap() - 3.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn quantum_ne_payoff_values() {
        assert!((quantum_ne_payoff(4).unwrap() - 0.25).abs() < 1e-15);
        assert!((quantum_ne_payoff(6).unwrap() - 5.0 / 16.0).abs() < 1e-15);
        assert!((quantum_ne_payoff(8).unwrap() - 11.0 / 32.0).abs() < 1e-15);
        assert!(quantum_ne_payoff(5).is_err());
        assert!(quantum_ne_payoff(2).is_err());
    }

    #[test]
    fn pareto_payoff_values() {
        assert!((pareto_payoff(4).unwrap() - 0.25).abs() < 1e-15);
        assert!((pareto_payoff(6).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((pareto_payoff(8).unwrap() - 0.375).abs() < 1e-15);
        assert!(pareto_payoff(5).is_err());
        assert!((pareto_payoff_odd(5).unwrap() - 0.4).abs() < 1e-15);
        assert!(pareto_payoff_odd(4).is_err());
    }

    #[test]
    fn ne_strategy_known_points() {
        let s4 = ne_strategy(4, NeFamilyPoint::new(0, 0.0)).unwrap();
        assert!((s4.theta() - FRAC_PI_2).abs() < 1e-15);
        assert!((s4.alpha() + PI / 16.0).abs() < 1e-15);
        assert!((s4.beta() - PI / 16.0).abs() < 1e-15);

        let s6 = ne_strategy(6, NeFamilyPoint::new(0, 0.0)).unwrap();
        assert!((s6.alpha() + PI / 24.0).abs() < 1e-15);
        assert!((s6.beta() - PI / 24.0).abs() < 1e-15);

        let s4n1 = ne_strategy(4, NeFamilyPoint::new(1, 0.0)).unwrap();
        assert!((s4n1.alpha() + 5.0 * PI / 16.0).abs() < 1e-15);
        assert!((s4n1.beta() - 5.0 * PI / 16.0).abs() < 1e-15);

        assert!(ne_strategy(5, NeFamilyPoint::new(0, 0.0)).is_err());
    }

    #[test]
    fn balanced_probability_vanishes_at_family_delta() {
        for players in [4usize, 6] {
            let delta = NeFamilyPoint::new(0, 0.0).delta(players);
            let p = balanced_state_probability(players, delta).unwrap();
            assert!(p.abs() < 1e-12, "N={players}: {p}");
        }
    }

    #[test]
    fn balanced_probability_at_delta_zero_is_classical() {
        // delta = 0 plays M(pi/2, 0, 0): the fair-coin game; 6 of 16
        // outcomes are balanced
        let p = balanced_state_probability(4, 0.0).unwrap();
        assert!((p - 0.375).abs() < 1e-12);
    }

    #[test]
    fn simulated_ne_payoff_matches_closed_form_small() {
        let simulated = simulated_ne_payoff(4).unwrap();
        assert!((simulated - 0.25).abs() < 1e-12);
    }

    #[test]
    fn two_player_minority_game_pays_nothing() {
        // with two players the loner is never a strict minority
        let table = PayoffTable::minority(2).unwrap();
        for outcome in 0..4 {
            assert_eq!(table.row(outcome), &[0.0, 0.0]);
        }
        assert!((classical_random_payoff(2).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn payoff_table_csv_has_header_and_rows() {
        let table = PayoffTable::minority(3).unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "outcome,payoff_1,payoff_2,payoff_3");
        assert_eq!(lines[1], "000,0,0,0");
        assert_eq!(lines[2], "001,0,0,1");
        assert_eq!(lines[3], "010,0,1,0");
        assert_eq!(lines[4], "011,1,0,0");
        assert_eq!(lines[5], "100,1,0,0");
        assert_eq!(lines[6], "101,0,1,0");
        assert_eq!(lines[7], "110,0,0,1");
        assert_eq!(lines[8], "111,0,0,0");
    }
}
