//! Shared fixtures for the criterion benchmarks.

use std::f64::consts::FRAC_PI_2;

use qmg_core::{
    ne_strategy, ChannelKind, GameConfig, NeFamilyPoint, StrategyParams,
};

/// Symmetric NE profile for an even player count.
pub fn ne_profile(players: usize) -> Vec<StrategyParams> {
    vec![ne_strategy(players, NeFamilyPoint::new(0, 0.0)).unwrap(); players]
}

/// Fully entangled game with the given channel.
pub fn config(players: usize, channel: ChannelKind, p: f64) -> GameConfig {
    GameConfig::new(players, FRAC_PI_2, channel, p).unwrap()
}
