//! Shared oracles for the integration suites. Everything here is built
//! independently of the library's fast paths: channels are expanded as full
//! tensor-sum maps and classical payoffs come from direct enumeration.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qmg_core::{ComplexMatrix, DensityMatrix, KrausChannel, PayoffTable};

/// Full N-qubit tensor-sum application of a single-qubit channel:
/// `sum_{j1..jN} (E_j1 (x) ... (x) E_jN) rho (...)'`.
pub fn apply_channel_tensor_sum(rho: &DensityMatrix, channel: &KrausChannel) -> ComplexMatrix {
    let qubits = rho.qubits();
    let operator_count = channel.operators().len();
    let mut total = ComplexMatrix::zeros(rho.dim());
    let mut assignment = vec![0usize; qubits];
    'outer: loop {
        let mut op = channel.operators()[assignment[0]].clone();
        for &index in &assignment[1..] {
            op = op.kron(&channel.operators()[index]);
        }
        total = total.add(&op.matmul(rho.matrix()).matmul(&op.adjoint()));

        let mut position = qubits;
        loop {
            if position == 0 {
                break 'outer;
            }
            position -= 1;
            assignment[position] += 1;
            if assignment[position] < operator_count {
                break;
            }
            assignment[position] = 0;
        }
    }
    total
}

/// Classical Minority-game payoffs when player k independently chooses 1
/// with probability `p_one[k]`, by enumeration over all 2^N outcomes.
pub fn classical_mixed_payoffs(p_one: &[f64]) -> Vec<f64> {
    let players = p_one.len();
    let table = PayoffTable::minority(players).expect("players >= 2");
    let mut payoffs = vec![0.0; players];
    for outcome in 0..(1usize << players) {
        let weight: f64 = (0..players)
            .map(|k| {
                if (outcome >> (players - 1 - k)) & 1 == 1 {
                    p_one[k]
                } else {
                    1.0 - p_one[k]
                }
            })
            .product();
        for (player, payoff) in payoffs.iter_mut().enumerate() {
            *payoff += weight * table.payoff(outcome, player);
        }
    }
    payoffs
}

/// Random density matrix rho = G G' / tr(G G') from a complex Ginibre draw.
pub fn random_density(qubits: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let dim = 1usize << qubits;
    let ginibre = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    })
    .unwrap();
    let gram = ginibre.matmul(&ginibre.adjoint());
    let trace = gram.trace().re;
    let matrix = gram.scaled(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::try_new(matrix).expect("Ginibre construction is a valid density matrix")
}

pub fn max_spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}
