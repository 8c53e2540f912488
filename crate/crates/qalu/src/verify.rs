//! Verification: exhaustive basis checks against the oracles, linearity on
//! random superpositions, matrix and checkpoint comparisons for the one-bit
//! adder, and log–log complexity fits.

use std::fmt;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ir::{gate_counts, lower, validate_connectivity, Circuit, GateCounts};
use crate::layout::QubitId;
use crate::sim::unitary_of;
use crate::units::{
    build, input_port, load_inputs, output_port, unit_check, Params, Unit, UnitCheck,
};
use crate::{adders, Amplitude, Matrix, State};

/// Amplitude tolerance for basis outputs and linearity comparisons.
pub const STATE_TOLERANCE: f64 = 1e-9;
/// Entrywise tolerance for unitary comparisons.
pub const MATRIX_TOLERANCE: f64 = 1e-12;
/// Loose bound on intermediate support for basis inputs.
pub const SUPPORT_GUARD: usize = 16;
/// Default random superpositions per linearity check.
pub const DEFAULT_TRIALS: usize = 32;
/// Largest superposition drawn by the linearity check.
pub const MAX_TERMS: usize = 4;

/// One failed case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub input: Vec<(String, u128)>,
    pub expected: Vec<(String, u128)>,
    pub got: Vec<(String, u128)>,
    pub reason: String,
}

/// Outcome of verifying one unit. `passed` holds exactly when `failures`
/// is empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub unit: Unit,
    pub params: Params,
    pub seed: Option<u64>,
    pub cases_run: usize,
    pub linearity_trials: usize,
    pub failures: Vec<Failure>,
    pub ancilla_violations: usize,
    pub connectivity_violations: usize,
    pub max_support: usize,
    pub gate_counts: GateCounts,
    pub elapsed_ms: f64,
    pub passed: bool,
}

impl VerificationReport {
    fn new(check: &UnitCheck, lowered: &Circuit) -> Self {
        Self {
            unit: check.unit,
            params: check.params,
            seed: None,
            cases_run: 0,
            linearity_trials: 0,
            failures: Vec::new(),
            ancilla_violations: 0,
            connectivity_violations: 0,
            max_support: 0,
            gate_counts: gate_counts(lowered),
            elapsed_ms: 0.0,
            passed: false,
        }
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
        self.passed = self.failures.is_empty();
        self
    }
}

fn show(pairs: &[(String, u128)]) -> String {
    let items: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    items.join(" ")
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "unit: {}", self.unit)?;
        writeln!(
            f,
            "params: n={} m={} zero_safe={} with_remainder={}",
            p.n, p.m, p.zero_safe, p.with_remainder
        )?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        writeln!(f, "cases: {}", self.cases_run)?;
        writeln!(f, "linearity trials: {}", self.linearity_trials)?;
        let g = &self.gate_counts;
        writeln!(
            f,
            "gates: X {}, CNOT {}, CSX {}, two-qubit {}, depth {}",
            g.x, g.cnot, g.csx, g.two_qubit_total, g.depth
        )?;
        writeln!(f, "max support: {}", self.max_support)?;
        writeln!(
            f,
            "connectivity violations: {}",
            self.connectivity_violations
        )?;
        writeln!(f, "ancilla violations: {}", self.ancilla_violations)?;
        writeln!(f, "failures: {}", self.failures.len())?;
        for fail in self.failures.iter().take(20) {
            writeln!(
                f,
                "  in [{}] expected [{}] got [{}]: {}",
                show(&fail.input),
                show(&fail.expected),
                show(&fail.got),
                fail.reason
            )?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  … {} more", self.failures.len() - 20)?;
        }
        writeln!(f, "elapsed: {:.1} ms", self.elapsed_ms)?;
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Runs a circuit on a state gate by gate, tracking the largest support.
fn run_tracked(c: &Circuit, state: &State) -> Result<(State, usize)> {
    let mut s = state.clone();
    let mut widest = s.support();
    for g in &c.gates {
        s.apply(g)?;
        widest = widest.max(s.support());
    }
    Ok((s, widest))
}

fn check_connectivity(lowered: &Circuit, report: &mut VerificationReport) -> Result<()> {
    let violations = validate_connectivity(lowered)?;
    report.connectivity_violations = violations.len();
    if let Some(v) = violations.first() {
        report.failures.push(Failure {
            input: Vec::new(),
            expected: Vec::new(),
            got: Vec::new(),
            reason: format!(
                "{} two-qubit gates on non-adjacent qubits, first at index {}",
                violations.len(),
                v.gate_index
            ),
        });
    }
    Ok(())
}

fn exhaustive_into(
    check: &UnitCheck,
    lowered: &Circuit,
    report: &mut VerificationReport,
) -> Result<()> {
    for case in &check.cases {
        report.cases_run += 1;
        let index = load_inputs(lowered, &case.inputs)?;
        let (out, widest) = run_tracked(lowered, &State::basis_state(lowered.qubit_count, index)?)?;
        report.max_support = report.max_support.max(widest);
        let fail = |reason: String, got: Vec<(String, u128)>| Failure {
            input: case.inputs.clone(),
            expected: case.expected.clone(),
            got,
            reason,
        };
        let Some((basis, amp)) = out.single_basis() else {
            report.failures.push(fail(
                format!("output has support {}", out.support()),
                Vec::new(),
            ));
            continue;
        };
        let read = |qubits: &[QubitId]| {
            qubits
                .iter()
                .fold(0u128, |acc, &q| (acc << 1) | ((basis >> q) & 1))
        };
        let mut got = Vec::new();
        let mut reasons = Vec::new();
        if (amp - Amplitude::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            reasons.push(format!("amplitude {amp} instead of 1"));
        }
        if widest > SUPPORT_GUARD {
            reasons.push(format!(
                "intermediate support {widest} exceeds {SUPPORT_GUARD}"
            ));
        }
        for (name, want) in &case.expected {
            let port =
                output_port(lowered, name).ok_or_else(|| Error::UnknownRegister(name.clone()))?;
            let value = read(&port.qubits);
            got.push((name.clone(), value));
            if value != *want {
                reasons.push(format!("port {name} mismatch"));
            }
        }
        let dirty: Vec<QubitId> = check
            .ancillas
            .iter()
            .copied()
            .filter(|&q| (basis >> q) & 1 == 1)
            .collect();
        if !dirty.is_empty() {
            report.ancilla_violations += 1;
            reasons.push(format!("ancillas {dirty:?} not returned to 0"));
        }
        for name in &check.preserved {
            let port =
                input_port(lowered, name).ok_or_else(|| Error::UnknownRegister(name.clone()))?;
            let before = case
                .inputs
                .iter()
                .find(|(k, _)| k == name)
                .map_or(0, |(_, v)| *v);
            if read(&port.qubits) != before {
                reasons.push(format!("input {name} changed"));
            }
        }
        if !reasons.is_empty() {
            report.failures.push(fail(reasons.join("; "), got));
        }
    }
    Ok(())
}

fn linearity_into(
    check: &UnitCheck,
    lowered: &Circuit,
    trials: usize,
    seed: u64,
    report: &mut VerificationReport,
) -> Result<()> {
    report.seed = Some(seed);
    if check.cases.is_empty() {
        return Ok(());
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let n = lowered.qubit_count;
    for _ in 0..trials {
        report.linearity_trials += 1;
        let k = rng.gen_range(1..=MAX_TERMS.min(check.cases.len()));
        let picks = rand::seq::index::sample(&mut rng, check.cases.len(), k).into_vec();
        let mut raw: Vec<(Amplitude, u128)> = Vec::with_capacity(k);
        for &i in &picks {
            let z = Amplitude::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            raw.push((z, load_inputs(lowered, &check.cases[i].inputs)?));
        }
        let norm = raw.iter().map(|(z, _)| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let terms: Vec<(Amplitude, u128)> = raw.iter().map(|(z, x)| (z / norm, *x)).collect();
        let (whole, widest) = run_tracked(lowered, &State::superpose(n, &terms)?)?;
        report.max_support = report.max_support.max(widest);
        let mut expected: Vec<(Amplitude, u128)> = Vec::new();
        for (z, x) in &terms {
            for (idx, a) in crate::sim::run(lowered, &State::basis_state(n, *x)?)?.entries() {
                match expected.iter_mut().find(|(_, i)| *i == idx) {
                    Some(entry) => entry.0 += z * a,
                    None => expected.push((z * a, idx)),
                }
            }
        }
        expected.retain(|(a, _)| a.norm() > 1e-12);
        let summed = State::superpose(n, &expected)?;
        let distance = whole.max_distance(&summed);
        if distance > STATE_TOLERANCE {
            let inputs = picks
                .iter()
                .flat_map(|&i| check.cases[i].inputs.iter().cloned())
                .collect();
            report.failures.push(Failure {
                input: inputs,
                expected: Vec::new(),
                got: Vec::new(),
                reason: format!("superposition deviates by {distance:e}"),
            });
        }
    }
    Ok(())
}

fn prepare(unit: Unit, params: &Params) -> Result<(UnitCheck, Circuit)> {
    let check = unit_check(unit, params)?;
    let lowered = lower(&check.circuit);
    Ok((check, lowered))
}

/// Runs every basis input through the lowered circuit and compares ports,
/// ancillas and preserved inputs against the oracle.
pub fn exhaustive_verify(unit: Unit, params: &Params) -> Result<VerificationReport> {
    let started = Instant::now();
    let (check, lowered) = prepare(unit, params)?;
    let mut report = VerificationReport::new(&check, &lowered);
    check_connectivity(&lowered, &mut report)?;
    exhaustive_into(&check, &lowered, &mut report)?;
    Ok(report.finish(started))
}

/// Checks `U(Σ γ_i |x_i⟩) = Σ γ_i U|x_i⟩` on random superpositions of up
/// to four valid inputs.
pub fn linearity_check(
    unit: Unit,
    params: &Params,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let (check, lowered) = prepare(unit, params)?;
    let mut report = VerificationReport::new(&check, &lowered);
    linearity_into(&check, &lowered, trials, seed, &mut report)?;
    Ok(report.finish(started))
}

/// Exhaustive, connectivity and linearity checks in one report.
pub fn verify_unit(
    unit: Unit,
    params: &Params,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let (check, lowered) = prepare(unit, params)?;
    let mut report = VerificationReport::new(&check, &lowered);
    check_connectivity(&lowered, &mut report)?;
    exhaustive_into(&check, &lowered, &mut report)?;
    linearity_into(&check, &lowered, trials, seed, &mut report)?;
    Ok(report.finish(started))
}

/// Unitary of `c` with basis bits reordered: `order[0]` is the most
/// significant bit of the returned row/column index.
pub fn reordered_unitary(c: &Circuit, order: &[QubitId]) -> Result<Matrix> {
    if order.len() != c.qubit_count {
        return Err(Error::QubitCountMismatch {
            left: order.len(),
            right: c.qubit_count,
        });
    }
    let u = unitary_of::<f64>(c)?;
    let width = order.len();
    let to_internal = |p: usize| {
        order.iter().enumerate().fold(0usize, |acc, (k, &q)| {
            acc | (((p >> (width - 1 - k)) & 1) << q)
        })
    };
    let dim = 1usize << width;
    let map: Vec<usize> = (0..dim).map(to_internal).collect();
    let mut out = Matrix::zeros(dim);
    for r in 0..dim {
        for col in 0..dim {
            out.set(r, col, u.get(map[r], map[col]));
        }
    }
    Ok(out)
}

/// `(1 + s·i)/2`.
fn h(s: f64) -> Amplitude {
    Amplitude::new(0.5, 0.5 * s)
}

/// 4×4 block on `(C', C'')` when the carry qubit ends up unflipped.
fn alpha(s: f64) -> [[Amplitude; 4]; 4] {
    let (z, o) = (Amplitude::new(0.0, 0.0), Amplitude::new(1.0, 0.0));
    [
        [o, z, z, z],
        [z, z, h(s), h(-s)],
        [z, o, z, z],
        [z, z, h(-s), h(s)],
    ]
}

/// 4×4 block on `(C', C'')` with the first two columns exchanged.
fn beta(s: f64) -> [[Amplitude; 4]; 4] {
    let (z, o) = (Amplitude::new(0.0, 0.0), Amplitude::new(1.0, 0.0));
    [
        [z, o, z, z],
        [z, z, h(s), h(-s)],
        [o, z, z, z],
        [z, z, h(-s), h(s)],
    ]
}

type Block = (usize, usize, [[Amplitude; 4]; 4]);

fn block_matrix(blocks: &[Block]) -> Matrix {
    let mut m = Matrix::zeros(32);
    for (br, bc, b) in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(4 * br + i, 4 * bc + j, v);
            }
        }
    }
    m
}

/// Reference 32×32 matrix of the one-bit A | C | B adder over the basis
/// `|A B C C' C''⟩` (A most significant), as 4×4 blocks indexed by `ABC`.
pub fn reference_p1_matrix() -> Matrix {
    block_matrix(&[
        (0, 0, alpha(-1.0)),
        (1, 1, alpha(-1.0)),
        (2, 3, beta(-1.0)),
        (3, 2, alpha(1.0)),
        (4, 5, beta(-1.0)),
        (5, 4, alpha(1.0)),
        (6, 6, beta(1.0)),
        (7, 7, beta(1.0)),
    ])
}

/// Reference 32×32 matrix of the carry unit on the A | B | C layout.
pub fn reference_uc_matrix() -> Matrix {
    block_matrix(&[
        (0, 0, alpha(-1.0)),
        (1, 1, alpha(-1.0)),
        (2, 2, alpha(1.0)),
        (3, 3, beta(-1.0)),
        (4, 4, alpha(1.0)),
        (5, 5, beta(-1.0)),
        (6, 6, beta(1.0)),
        (7, 7, beta(1.0)),
    ])
}

/// Result of a unitary comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixCheck {
    pub max_deviation: f64,
    pub unitary: bool,
    pub passed: bool,
}

/// Compares the unitary of `c`, read in `order`, against `reference`.
pub fn matrix_check_with_order(
    c: &Circuit,
    order: &[QubitId],
    reference: &Matrix,
) -> Result<MatrixCheck> {
    let u = reordered_unitary(&lower(c), order)?;
    let max_deviation = u.max_distance(reference);
    let unitary = u.is_unitary(MATRIX_TOLERANCE);
    Ok(MatrixCheck {
        max_deviation,
        unitary,
        passed: unitary && max_deviation <= MATRIX_TOLERANCE,
    })
}

/// Basis order `A, B, C, C', C''` of a one-bit circuit.
pub fn one_bit_order(c: &Circuit) -> Result<Vec<QubitId>> {
    let regs = c.registers.as_ref().ok_or(Error::MissingLayout)?;
    [("A", 0), ("B", 0), ("C", 0), ("C", 1), ("C", 2)]
        .iter()
        .map(|(name, k)| regs.qubit(name, *k))
        .collect()
}

/// The one-bit A | C | B adder against its reference matrix.
pub fn matrix_check_p1() -> Result<MatrixCheck> {
    let c = adders::build_p1_onebit()?;
    matrix_check_with_order(&c, &one_bit_order(&c)?, &reference_p1_matrix())
}

/// The carry unit against its reference matrix.
pub fn matrix_check_uc() -> Result<MatrixCheck> {
    let c = adders::build_uc()?;
    matrix_check_with_order(&c, &one_bit_order(&c)?, &reference_uc_matrix())
}

/// `X^{k/2}|0⟩` computed by repeated 2×2 multiplication with √X.
pub fn sqrt_x_power_on_zero(k: u32) -> [Amplitude; 2] {
    let (p, m) = (h(1.0), h(-1.0));
    let mut v = [Amplitude::new(1.0, 0.0), Amplitude::new(0.0, 0.0)];
    for _ in 0..k {
        v = [p * v[0] + m * v[1], m * v[0] + p * v[1]];
    }
    v
}

/// Deviation of the one-bit adder's state at one checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointResult {
    pub label: String,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Intermediate states of the one-bit A | C | B adder at its four
/// checkpoints, for all eight `(a, b, c)`, against closed forms built from
/// `X^{k/2}|0⟩` on one carry qubit.
pub fn checkpoint_check() -> Result<Vec<CheckpointResult>> {
    let c = adders::build_p1_onebit()?;
    let [qa, qb, qc, q1, q2]: [QubitId; 5] = one_bit_order(&c)?
        .try_into()
        .map_err(|_| Error::InvalidParameter("one-bit layout".into()))?;
    let mut results = Vec::new();
    for (stage, label) in adders::CHECKPOINTS.iter().enumerate() {
        let prefix = c
            .truncated(label)
            .ok_or_else(|| Error::InvalidParameter(format!("missing marker {label}")))?;
        let mut worst = 0.0f64;
        for x in 0..8u128 {
            let (a, b, cin) = ((x >> 2) & 1, (x >> 1) & 1, x & 1);
            let base = (a << qa) | (b << qb) | (cin << qc);
            let got = crate::sim::run(&prefix, &State::basis_state(c.qubit_count, base)?)?;
            let k = match stage {
                0 | 1 => a ^ b,
                2 => (a ^ b) + (a ^ cin),
                _ => (a ^ b) + (a ^ cin) + (b ^ cin),
            };
            let carrier = if stage == 0 { q2 } else { q1 };
            let [z0, z1] = sqrt_x_power_on_zero(k as u32);
            let terms: Vec<(Amplitude, u128)> = [(z0, base), (z1, base | (1 << carrier))]
                .into_iter()
                .filter(|(z, _)| z.norm() > 1e-12)
                .collect();
            let want = State::superpose(c.qubit_count, &terms)?;
            worst = worst.max(got.max_distance(&want));
        }
        results.push(CheckpointResult {
            label: label.to_string(),
            max_deviation: worst,
            passed: worst <= STATE_TOLERANCE,
        });
    }
    Ok(results)
}

/// Runs `(|00⟩ + |11⟩)/√2` on `A, B` (carry registers zero) through the
/// one-bit adder and returns the distance to `(|00 0 00⟩ + |11 0 10⟩)/√2`,
/// i.e. the GHZ state on `A, B, C'`.
pub fn bell_to_ghz_deviation() -> Result<f64> {
    let c = lower(&adders::build_p1_onebit()?);
    let [qa, qb, _, q1, _]: [QubitId; 5] = one_bit_order(&c)?
        .try_into()
        .map_err(|_| Error::InvalidParameter("one-bit layout".into()))?;
    let r = Amplitude::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ab = (1u128 << qa) | (1 << qb);
    let bell = State::superpose(c.qubit_count, &[(r, 0), (r, ab)])?;
    let ghz = State::superpose(c.qubit_count, &[(r, 0), (r, ab | (1 << q1))])?;
    Ok(crate::sim::run(&c, &bell)?.max_distance(&ghz))
}

/// Least-squares slope of `ln(two-qubit count)` against `ln(n)` over the
/// lowered circuits of `unit` at each parameter set.
pub fn complexity_fit(unit: Unit, points: &[Params]) -> Result<f64> {
    let samples = points
        .iter()
        .map(|p| {
            let count = gate_counts(&lower(&build(unit, p)?)).two_qubit_total;
            Ok((p.n as f64, count as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    fit_exponent(&samples)
}

/// Least-squares slope of `ln y` against `ln x`; needs at least four
/// distinct positive sizes.
pub fn fit_exponent(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "a complexity fit needs at least 4 sizes, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::InvalidParameter(
            "sizes and counts must be positive".into(),
        ));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx < 1e-12 {
        return Err(Error::InvalidParameter("all sizes are equal".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_units_pass_exhaustively() {
        for unit in [
            Unit::P1Onebit,
            Unit::P2Onebit,
            Unit::Uc,
            Unit::Us,
            Unit::UcTilde,
        ] {
            let r = exhaustive_verify(unit, &Params::default()).unwrap();
            assert!(r.passed, "{r}");
            assert_eq!(r.cases_run, if unit == Unit::UcTilde { 4 } else { 8 });
        }
    }

    #[test]
    fn reference_matrices_are_unitary() {
        assert!(reference_p1_matrix().is_unitary(1e-12));
        assert!(reference_uc_matrix().is_unitary(1e-12));
    }

    #[test]
    fn matrices_match() {
        assert!(matrix_check_p1().unwrap().passed);
        assert!(matrix_check_uc().unwrap().passed);
    }

    #[test]
    fn permuted_order_is_rejected() {
        let c = adders::build_p1_onebit().unwrap();
        let mut order = one_bit_order(&c).unwrap();
        // A and B enter symmetrically, so exchange the two carry qubits.
        order.swap(3, 4);
        let m = matrix_check_with_order(&c, &order, &reference_p1_matrix()).unwrap();
        assert!(!m.passed);
        assert!(m.max_deviation > 0.1);
    }

    #[test]
    fn sqrt_x_powers() {
        let v = sqrt_x_power_on_zero(2);
        assert!((v[1] - Amplitude::new(1.0, 0.0)).norm() < 1e-15);
        let v = sqrt_x_power_on_zero(3);
        assert!((v[0] - h(-1.0)).norm() < 1e-15 && (v[1] - h(1.0)).norm() < 1e-15);
        assert!((sqrt_x_power_on_zero(4)[0] - Amplitude::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn checkpoints_and_ghz() {
        for r in checkpoint_check().unwrap() {
            assert!(r.passed, "{r:?}");
        }
        assert!(bell_to_ghz_deviation().unwrap() < 1e-12);
    }

    #[test]
    fn fit_recovers_known_exponents() {
        let linear: Vec<_> = (2..8).map(|n| (n as f64, 5.0 * n as f64)).collect();
        assert!((fit_exponent(&linear).unwrap() - 1.0).abs() < 1e-12);
        let square: Vec<_> = (2..8).map(|n| (n as f64, 3.0 * (n * n) as f64)).collect();
        assert!((fit_exponent(&square).unwrap() - 2.0).abs() < 1e-12);
        assert!(fit_exponent(&linear[..3]).is_err());
        assert!(fit_exponent(&[(2.0, 1.0); 5]).is_err());
    }

    #[test]
    fn broken_circuit_is_reported() {
        let (check, mut lowered) = prepare(Unit::P1, &Params::n(2)).unwrap();
        lowered.gates.pop();
        let mut report = VerificationReport::new(&check, &lowered);
        exhaustive_into(&check, &lowered, &mut report).unwrap();
        let report = report.finish(Instant::now());
        assert!(!report.passed);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn linearity_is_deterministic() {
        let a = linearity_check(Unit::P3, &Params::n(2), 8, 7).unwrap();
        let b = linearity_check(Unit::P3, &Params::n(2), 8, 7).unwrap();
        assert!(a.passed, "{a}");
        assert_eq!(a.failures, b.failures);
        assert_eq!((a.linearity_trials, a.seed), (8, Some(7)));
    }
}
