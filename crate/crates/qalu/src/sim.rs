//! Sparse statevector simulation over `{X, CNOT, CSX}` (macros are expanded
//! on the fly).
//!
//! A state is a map from basis index to amplitude, with qubit 0 as the least
//! significant bit of the index. Arithmetic circuits on basis inputs branch
//! only at controlled-√X gates and recombine shortly afterwards, so the
//! support stays tiny even for the ~70-qubit multiplier layouts.

use std::collections::HashMap;
use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};
use crate::ir::{Circuit, Gate, GateKind};
use crate::layout::{QubitId, RegisterMap};

/// Widest register a basis index can hold.
pub const MAX_QUBITS: usize = 128;

/// Largest circuit [`unitary_of`] will expand.
pub const MAX_UNITARY_QUBITS: usize = 12;

/// Real scalar type of amplitudes.
pub trait Scalar: Float + FloatConst + Default + Debug + Send + Sync + 'static {
    /// Amplitudes with smaller magnitude are dropped.
    fn prune_threshold() -> Self;
    /// Norm drift beyond which a state is renormalised.
    fn drift_tolerance() -> Self;

    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 converts to every float type")
    }

    fn to_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("float converts to f64")
    }
}

impl Scalar for f64 {
    fn prune_threshold() -> Self {
        1e-12
    }
    fn drift_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn prune_threshold() -> Self {
        1e-6
    }
    fn drift_tolerance() -> Self {
        1e-6
    }
}

/// `(1+i)/2` and `(1-i)/2`, the entries of √X.
fn half_one_pm_i<T: Scalar>() -> (Complex<T>, Complex<T>) {
    let h = T::from_f64(0.5);
    (Complex::new(h, h), Complex::new(h, -h))
}

fn accumulate<T: Scalar>(map: &mut HashMap<u128, Complex<T>>, key: u128, value: Complex<T>) {
    let slot = map.entry(key).or_default();
    *slot = *slot + value;
}

/// Normalised state as a sparse map from basis index to amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState<T: Scalar> {
    qubit_count: usize,
    amplitudes: HashMap<u128, Complex<T>>,
}

fn check_width(qubit_count: usize, index: u128) -> Result<()> {
    if qubit_count == 0 {
        return Err(Error::InvalidParameter(
            "a state needs at least one qubit".into(),
        ));
    }
    if qubit_count > MAX_QUBITS {
        return Err(Error::TooManyQubits(qubit_count));
    }
    if qubit_count < MAX_QUBITS && index >> qubit_count != 0 {
        return Err(Error::InvalidParameter(format!(
            "basis index {index:#b} is wider than {qubit_count} qubits"
        )));
    }
    Ok(())
}

impl<T: Scalar> SparseState<T> {
    /// `|index⟩` with amplitude 1.
    pub fn basis_state(qubit_count: usize, index: u128) -> Result<Self> {
        check_width(qubit_count, index)?;
        let mut amplitudes = HashMap::new();
        amplitudes.insert(index, Complex::new(T::one(), T::zero()));
        Ok(Self {
            qubit_count,
            amplitudes,
        })
    }

    /// `Σ γ_x |x⟩`; the amplitudes must already be normalised.
    pub fn superpose(qubit_count: usize, terms: &[(Complex<T>, u128)]) -> Result<Self> {
        let mut amplitudes = HashMap::with_capacity(terms.len());
        for &(amp, index) in terms {
            check_width(qubit_count, index)?;
            if amplitudes.insert(index, amp).is_some() {
                return Err(Error::DuplicatePattern(index));
            }
        }
        let state = Self {
            qubit_count,
            amplitudes,
        };
        let norm = state.norm_sqr().to_f64();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// Number of stored basis states.
    pub fn support(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, index: u128) -> Complex<T> {
        self.amplitudes
            .get(&index)
            .copied()
            .unwrap_or_else(Complex::default)
    }

    /// Stored `(index, amplitude)` pairs sorted by index.
    pub fn entries(&self) -> Vec<(u128, Complex<T>)> {
        let mut v: Vec<_> = self.amplitudes.iter().map(|(k, a)| (*k, *a)).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .values()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// The only basis state in the support, if there is exactly one.
    pub fn single_basis(&self) -> Option<(u128, Complex<T>)> {
        match self.amplitudes.len() {
            1 => self.amplitudes.iter().next().map(|(k, a)| (*k, *a)),
            _ => None,
        }
    }

    /// Largest entrywise difference to another state.
    pub fn max_distance(&self, other: &Self) -> T {
        let keys = self.amplitudes.keys().chain(other.amplitudes.keys());
        keys.map(|k| (self.amplitude(*k) - other.amplitude(*k)).norm())
            .fold(T::zero(), T::max)
    }

    fn check_qubit(&self, q: QubitId) -> Result<()> {
        if q >= self.qubit_count {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                count: self.qubit_count,
            });
        }
        Ok(())
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            self.check_qubit(q)?;
        }
        if gate.control == Some(gate.target) {
            return Err(Error::ControlIsTarget(gate.target));
        }
        let t = 1u128 << gate.target;
        let c = gate.control.map_or(0, |c| 1u128 << c);
        match gate.kind {
            GateKind::X => self.permute(|x| x ^ t),
            GateKind::Cnot => self.permute(|x| if x & c != 0 { x ^ t } else { x }),
            GateKind::Swap => {
                for g in gate.lowered() {
                    self.apply(&g)?;
                }
            }
            GateKind::Csx | GateKind::CsxDg => {
                let (p, m) = half_one_pm_i::<T>();
                let (keep, flip) = if gate.kind == GateKind::Csx {
                    (p, m)
                } else {
                    (m, p)
                };
                self.branch(c, t, keep, flip);
            }
        }
        Ok(())
    }

    fn permute(&mut self, f: impl Fn(u128) -> u128) {
        self.amplitudes = self.amplitudes.drain().map(|(k, a)| (f(k), a)).collect();
    }

    fn branch(&mut self, control: u128, target: u128, keep: Complex<T>, flip: Complex<T>) {
        let mut next: HashMap<u128, Complex<T>> = HashMap::with_capacity(self.amplitudes.len() * 2);
        for (k, a) in self.amplitudes.drain() {
            if k & control == 0 {
                accumulate(&mut next, k, a);
            } else {
                accumulate(&mut next, k, a * keep);
                accumulate(&mut next, k ^ target, a * flip);
            }
        }
        let threshold = T::prune_threshold();
        next.retain(|_, a| a.norm() >= threshold);
        self.amplitudes = next;
        let norm = self.norm_sqr();
        if (norm - T::one()).abs() > T::drift_tolerance() && norm > T::zero() {
            let scale = norm.sqrt().recip();
            for a in self.amplitudes.values_mut() {
                *a = *a * scale;
            }
        }
    }

    /// Value of the qubits read most-significant first; fails unless every
    /// support entry agrees on them.
    pub fn read_qubits(&self, qubits: &[QubitId]) -> Result<u128> {
        if qubits.len() > MAX_QUBITS {
            return Err(Error::TooManyQubits(qubits.len()));
        }
        for &q in qubits {
            self.check_qubit(q)?;
        }
        let value_of = |index: u128| {
            qubits
                .iter()
                .fold(0u128, |acc, &q| (acc << 1) | ((index >> q) & 1))
        };
        let mut values = self.amplitudes.keys().map(|k| value_of(*k));
        let first = values
            .next()
            .ok_or_else(|| Error::NotDefinite("the state has empty support".into()))?;
        if values.any(|v| v != first) {
            return Err(Error::NotDefinite(format!(
                "qubits {qubits:?} differ across branches"
            )));
        }
        Ok(first)
    }

    /// Unsigned value of a named register (columns or aliases are resolved
    /// by [`RegisterMap::get`]).
    pub fn read_register(&self, registers: &RegisterMap, name: &str) -> Result<u128> {
        let qubits = registers
            .get(name)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))?;
        self.read_qubits(qubits).map_err(|e| match e {
            Error::NotDefinite(_) => Error::NotDefinite(format!("register {name} is entangled")),
            other => other,
        })
    }
}

/// Applies every gate of `circuit` to `state`.
pub fn run<T: Scalar>(circuit: &Circuit, state: &SparseState<T>) -> Result<SparseState<T>> {
    if circuit.qubit_count != state.qubit_count {
        return Err(Error::QubitCountMismatch {
            left: circuit.qubit_count,
            right: state.qubit_count,
        });
    }
    let mut out = state.clone();
    for g in &circuit.gates {
        out.apply(g)?;
    }
    Ok(out)
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T: Scalar> {
    pub dim: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::default(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex::default() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Largest entrywise difference.
    pub fn max_distance(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.adjoint()
            .mul(self)
            .max_distance(&Self::identity(self.dim))
            <= tol
    }
}

/// Matrix of a circuit, built column by column from basis runs. Row and
/// column indices use the simulator's convention (qubit 0 = LSB).
pub fn unitary_of<T: Scalar>(circuit: &Circuit) -> Result<DenseMatrix<T>> {
    let n = circuit.qubit_count;
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    let dim = 1usize << n;
    let mut m = DenseMatrix::zeros(dim);
    for col in 0..dim {
        let out = run(circuit, &SparseState::basis_state(n, col as u128)?)?;
        for (row, amp) in out.entries() {
            m.set(row as usize, col, amp);
        }
    }
    Ok(m)
}
