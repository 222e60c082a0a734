//! Simulator and analysis toolkit for the N-player quantum Minority game
//! with interleaved decoherence.
//!
//! The pipeline entangles one qubit per player with `J(gamma)`, applies
//! single-qubit Kraus decoherence, lets each player act with an SU(2)
//! strategy, decoheres again, and reads expected Minority-game payoffs from
//! the final density matrix. On top of that sit closed-form payoff oracles,
//! exhaustive best-response scans for Nash-equilibrium certification, and
//! parameter sweeps over noise strength and entanglement.

pub mod channels;
mod error;
pub mod equilibrium;
pub mod matrix;
pub mod minority;
pub mod parse;
pub mod protocol;
pub mod state;

pub use num_complex::Complex64;

pub use channels::{
    apply_channel_all_qubits, apply_channel_per_qubit, make_channel, verify_cptp, ChannelKind,
    CptpReport, KrausChannel,
};
pub use equilibrium::{
    best_response_scan, deviation_payoff, format_significant, linspace, mod4_profile_payoff,
    phase_damping_closed_form, sweep_decoherence, sweep_entanglement, symmetric_profile_scan_max,
    DeviationReport, SweepResult,
};
pub use error::{Error, Result};
pub use matrix::{embed_single_qubit, ComplexMatrix};
pub use minority::{
    balanced_state_probability, classical_random_payoff, ne_strategy, pareto_payoff,
    pareto_payoff_odd, quantum_ne_payoff, simulated_ne_payoff, NeFamilyPoint, PayoffTable,
};
pub use parse::{parse_angle, parse_strategy};
pub use protocol::{
    entangler, expected_payoffs, run_game, run_game_heterogeneous, run_game_statevector,
    run_game_with_channels, strategy_operator, GameConfig, StrategyParams,
};
pub use state::{validate_density, DensityMatrix, DensityReport, StateVector};
