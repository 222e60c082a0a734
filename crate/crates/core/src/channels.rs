//! Single-qubit decoherence channels in Kraus form.
//!
//! Each channel is a set of 2x2 operators `{E_j}` with `sum E_j' E_j = I`,
//! applied to an N-qubit density matrix qubit by qubit:
//! `rho -> sum_j E_j rho E_j'` on each qubit in turn, which equals the full
//! N-qubit tensor-sum map for these product channels.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{identity2, pauli_x, pauli_y, pauli_z, ComplexMatrix};
use crate::state::DensityMatrix;

/// Entrywise tolerance on `sum E_j' E_j - I` for a well-formed channel.
pub const COMPLETENESS_TOL: f64 = 1e-12;

/// The supported decoherence types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// Measurement with probability p in the computational basis;
    /// off-diagonals decay by (1 - p) = exp(-lambda).
    PhaseDamping,
    /// rho -> p I/2 + (1 - p) rho.
    Depolarizing,
    /// sigma_x applied with probability p.
    BitFlip,
    /// sigma_z applied with probability p.
    PhaseFlip,
    /// sigma_y applied with probability p.
    BitPhaseFlip,
    /// |1><1| population and coherences decay by p.
    AmplitudeDamping,
    /// No decoherence.
    Identity,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 7] = [
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
        ChannelKind::AmplitudeDamping,
        ChannelKind::Identity,
    ];

    /// The CLI-facing name.
    pub fn name(&self) -> &'static str {
        match self {
            ChannelKind::PhaseDamping => "phase-damping",
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::BitFlip => "bit-flip",
            ChannelKind::PhaseFlip => "phase-flip",
            ChannelKind::BitPhaseFlip => "bit-phase-flip",
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::Identity => "none",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phase-damping" => Ok(ChannelKind::PhaseDamping),
            "depolarizing" => Ok(ChannelKind::Depolarizing),
            "bit-flip" => Ok(ChannelKind::BitFlip),
            "phase-flip" => Ok(ChannelKind::PhaseFlip),
            "bit-phase-flip" => Ok(ChannelKind::BitPhaseFlip),
            "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            "none" => Ok(ChannelKind::Identity),
            _ => Err(Error::Parse {
                what: "channel",
                input: s.to_string(),
                reason: "expected one of phase-damping, depolarizing, bit-flip, phase-flip, \
                         bit-phase-flip, amplitude-damping, none"
                    .to_string(),
            }),
        }
    }
}

/// A single-qubit channel: kind, probability, and its Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    p: f64,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Builds a channel from raw 2x2 operators without the completeness
    /// check. Intended for diagnostics and failure-injection tests.
    pub fn from_operators_unchecked(
        kind: ChannelKind,
        p: f64,
        operators: Vec<ComplexMatrix>,
    ) -> Self {
        assert!(
            operators.iter().all(|op| op.dim() == 2),
            "Kraus operators must be 2x2"
        );
        Self { kind, p, operators }
    }

    /// Max entry magnitude of `sum E_j' E_j - I`.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2);
        for op in &self.operators {
            sum = sum.add(&op.adjoint().matmul(op));
        }
        sum.max_abs_diff(&identity2())
    }
}

/// Constructs the Kraus operators for `kind` at probability `p`.
pub fn make_channel(kind: ChannelKind, p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange { value: p });
    }
    let zero = Complex64::new(0.0, 0.0);
    let operators = match kind {
        // { sqrt(p)|0><0|, sqrt(p)|1><1|, sqrt(1-p) I }
        ChannelKind::PhaseDamping => {
            let sp = Complex64::new(p.sqrt(), 0.0);
            let sq = Complex64::new((1.0 - p).sqrt(), 0.0);
            vec![
                ComplexMatrix::from_rows(&[vec![sp, zero], vec![zero, zero]])?,
                ComplexMatrix::from_rows(&[vec![zero, zero], vec![zero, sp]])?,
                identity2().scaled(sq),
            ]
        }
        // rho -> p I/2 + (1-p) rho, i.e. weights p/4 on each Pauli
        ChannelKind::Depolarizing => {
            let w0 = Complex64::new((1.0 - 3.0 * p / 4.0).sqrt(), 0.0);
            let w = Complex64::new((p / 4.0).sqrt(), 0.0);
            vec![
                identity2().scaled(w0),
                pauli_x().scaled(w),
                pauli_y().scaled(w),
                pauli_z().scaled(w),
            ]
        }
        ChannelKind::BitFlip => flip_pair(p, pauli_x()),
        ChannelKind::PhaseFlip => flip_pair(p, pauli_z()),
        ChannelKind::BitPhaseFlip => flip_pair(p, pauli_y()),
        // { [[1,0],[0,sqrt(1-p)]], [[0,sqrt(p)],[0,0]] }
        ChannelKind::AmplitudeDamping => {
            let one = Complex64::new(1.0, 0.0);
            let keep = Complex64::new((1.0 - p).sqrt(), 0.0);
            let decay = Complex64::new(p.sqrt(), 0.0);
            vec![
                ComplexMatrix::from_rows(&[vec![one, zero], vec![zero, keep]])?,
                ComplexMatrix::from_rows(&[vec![zero, decay], vec![zero, zero]])?,
            ]
        }
        ChannelKind::Identity => vec![identity2()],
    };
    let channel = KrausChannel { kind, p, operators };
    debug_assert!(channel.completeness_deviation() <= COMPLETENESS_TOL);
    Ok(channel)
}

fn flip_pair(p: f64, pauli: ComplexMatrix) -> Vec<ComplexMatrix> {
    vec![
        identity2().scaled(Complex64::new((1.0 - p).sqrt(), 0.0)),
        pauli.scaled(Complex64::new(p.sqrt(), 0.0)),
    ]
}

/// Applies the channel to every qubit in turn (qubit 0 through N-1).
pub fn apply_channel_all_qubits(rho: &DensityMatrix, channel: &KrausChannel) -> DensityMatrix {
    let mut out = rho.clone();
    for qubit in 0..rho.qubits() {
        out.apply_single_qubit_kraus(channel.operators(), qubit);
    }
    out
}

/// Applies one channel per qubit; `channels.len()` must equal the qubit
/// count. Supports heterogeneous per-qubit probabilities.
pub fn apply_channel_per_qubit(
    rho: &DensityMatrix,
    channels: &[KrausChannel],
) -> Result<DensityMatrix> {
    if channels.len() != rho.qubits() {
        return Err(Error::DimensionMismatch {
            left: channels.len(),
            right: rho.qubits(),
        });
    }
    let mut out = rho.clone();
    for (qubit, channel) in channels.iter().enumerate() {
        out.apply_single_qubit_kraus(channel.operators(), qubit);
    }
    Ok(out)
}

/// CPTP diagnostic: Kraus completeness plus a trace-preservation probe on
/// seeded random single-qubit density matrices.
#[derive(Debug, Clone, Copy)]
pub struct CptpReport {
    /// Max entry magnitude of `sum E_j' E_j - I`.
    pub completeness_deviation: f64,
    /// Max `|trace(out) - 1|` over the probe states.
    pub max_trace_deviation: f64,
}

impl CptpReport {
    pub fn is_cptp(&self) -> bool {
        self.completeness_deviation <= COMPLETENESS_TOL && self.max_trace_deviation < 1e-12
    }
}

/// Checks completeness and trace preservation on 10 random valid
/// single-qubit density matrices (fixed seed, deterministic).
pub fn verify_cptp(channel: &KrausChannel) -> CptpReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51c2_a7e1);
    let mut max_trace_deviation = 0.0f64;
    for _ in 0..10 {
        let rho = random_single_qubit_density(&mut rng);
        let mut out = rho.clone();
        out.apply_single_qubit_kraus(channel.operators(), 0);
        let deviation = (out.matrix().trace() - Complex64::new(1.0, 0.0)).norm();
        max_trace_deviation = max_trace_deviation.max(deviation);
    }
    CptpReport {
        completeness_deviation: channel.completeness_deviation(),
        max_trace_deviation,
    }
}

/// Random density matrix rho = G G' / tr(G G') from a complex Ginibre draw.
fn random_single_qubit_density(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let mut g = [[Complex64::new(0.0, 0.0); 2]; 2];
    for row in &mut g {
        for entry in row.iter_mut() {
            *entry = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
    }
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            m[r][c] = (0..2).map(|k| g[r][k] * g[c][k].conj()).sum();
        }
    }
    let trace = (m[0][0] + m[1][1]).re;
    let matrix = ComplexMatrix::from_rows(&[
        vec![m[0][0] / trace, m[0][1] / trace],
        vec![m[1][0] / trace, m[1][1] / trace],
    ])
    .expect("2x2");
    DensityMatrix::try_new(matrix).expect("Ginibre construction is a valid density matrix")
}
