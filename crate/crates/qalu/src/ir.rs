//! Gate-level intermediate representation.
//!
//! The alphabet is `X`, `CNOT` and controlled-√X (`CSX`), plus two macros that
//! exist only before lowering: `CSXDG` (the inverse of `CSX`, which lowers to
//! `CNOT·CSX` because `CX^{3/2} = CX · CX^{1/2}`) and `SWAP` (three CNOTs, or
//! two when the builder knows one operand is `|0⟩`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{GridCoord, GridLayout, QubitId, RegisterMap};

/// Kind of a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Cnot,
    Csx,
    CsxDg,
    Swap,
}

impl GateKind {
    /// `SWAP` and `CSXDG` must be lowered before emission.
    pub fn is_macro(self) -> bool {
        matches!(self, GateKind::Swap | GateKind::CsxDg)
    }
}

/// One circuit element.
///
/// For `SWAP` the two operands are stored as `control` and `target`; when
/// `zero_target` is set the builder guarantees the target is `|0⟩` right before
/// the gate, which lets lowering use two CNOTs instead of three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: QubitId,
    pub control: Option<QubitId>,
    #[serde(default)]
    pub zero_target: bool,
}

impl Gate {
    pub fn x(target: QubitId) -> Self {
        Self {
            kind: GateKind::X,
            target,
            control: None,
            zero_target: false,
        }
    }

    pub fn cnot(control: QubitId, target: QubitId) -> Self {
        Self::controlled(GateKind::Cnot, control, target)
    }

    pub fn csx(control: QubitId, target: QubitId) -> Self {
        Self::controlled(GateKind::Csx, control, target)
    }

    pub fn csxdg(control: QubitId, target: QubitId) -> Self {
        Self::controlled(GateKind::CsxDg, control, target)
    }

    pub fn swap(p: QubitId, q: QubitId) -> Self {
        Self::controlled(GateKind::Swap, p, q)
    }

    /// `SWAP(p, q)` where `q` is known to be `|0⟩`.
    pub fn swap_into_zero(p: QubitId, zero: QubitId) -> Self {
        Self {
            zero_target: true,
            ..Self::controlled(GateKind::Swap, p, zero)
        }
    }

    fn controlled(kind: GateKind, control: QubitId, target: QubitId) -> Self {
        Self {
            kind,
            target,
            control: Some(control),
            zero_target: false,
        }
    }

    /// Operands, control first.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> {
        self.control.into_iter().chain(std::iter::once(self.target))
    }

    pub fn is_two_qubit(&self) -> bool {
        self.control.is_some()
    }

    /// Inverse gate.
    pub fn dagger(&self) -> Self {
        match self.kind {
            GateKind::Csx => Self {
                kind: GateKind::CsxDg,
                ..*self
            },
            GateKind::CsxDg => Self {
                kind: GateKind::Csx,
                ..*self
            },
            // Undoing "move p into the empty q" moves q back into the now
            // empty p, so the guaranteed-zero side flips.
            GateKind::Swap if self.zero_target => Self {
                control: Some(self.target),
                target: self.control.expect("swap has two operands"),
                ..*self
            },
            _ => *self,
        }
    }

    /// Gates that realise this one in the `{X, CNOT, CSX}` alphabet.
    pub fn lowered(&self) -> Vec<Gate> {
        match (self.kind, self.control) {
            (GateKind::CsxDg, Some(c)) => {
                vec![Gate::cnot(c, self.target), Gate::csx(c, self.target)]
            }
            (GateKind::Swap, Some(p)) => {
                let q = self.target;
                if self.zero_target {
                    vec![Gate::cnot(p, q), Gate::cnot(q, p)]
                } else {
                    vec![Gate::cnot(p, q), Gate::cnot(q, p), Gate::cnot(p, q)]
                }
            }
            _ => vec![*self],
        }
    }

    fn self_inverse(&self) -> bool {
        match self.kind {
            GateKind::X | GateKind::Cnot => true,
            GateKind::Swap => !self.zero_target,
            GateKind::Csx | GateKind::CsxDg => false,
        }
    }
}

/// Named position between gates (the gate count before the marker).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marker {
    pub label: String,
    pub position: usize,
}

/// How a port is used by a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PortRole {
    Input,
    Output,
    InOut,
}

impl PortRole {
    pub fn is_input(self) -> bool {
        matches!(self, PortRole::Input | PortRole::InOut)
    }

    pub fn is_output(self) -> bool {
        matches!(self, PortRole::Output | PortRole::InOut)
    }
}

/// Logical operand or result of a unit, most-significant qubit first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub name: String,
    pub role: PortRole,
    pub qubits: Vec<QubitId>,
    /// Read as a two's-complement value.
    pub signed: bool,
}

impl Port {
    pub fn new(name: &str, role: PortRole, qubits: Vec<QubitId>) -> Self {
        Self {
            name: name.to_string(),
            role,
            qubits,
            signed: false,
        }
    }

    pub fn signed(mut self) -> Self {
        self.signed = true;
        self
    }

    pub fn width(&self) -> usize {
        self.qubits.len()
    }
}

/// Ordered gate list over a fixed number of qubits, with optional grid
/// layout, register names, ports and stage markers.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub name: String,
    pub qubit_count: usize,
    pub gates: Vec<Gate>,
    pub layout: Option<GridLayout>,
    pub registers: Option<RegisterMap>,
    pub ports: Vec<Port>,
    pub markers: Vec<Marker>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Self {
        Self {
            name: String::new(),
            qubit_count,
            gates: Vec::new(),
            layout: None,
            registers: None,
            ports: Vec::new(),
            markers: Vec::new(),
        }
    }

    /// Empty circuit over a layout.
    pub fn on_layout(layout: GridLayout, registers: RegisterMap) -> Self {
        let mut c = Self::new(layout.len());
        c.layout = Some(layout);
        c.registers = Some(registers);
        c
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after checking its operands.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.qubit_count {
                return Err(Error::QubitOutOfRange {
                    qubit: q,
                    count: self.qubit_count,
                });
            }
        }
        if gate.control == Some(gate.target) {
            return Err(Error::ControlIsTarget(gate.target));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn port(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }

    pub fn marker(&self, label: &str) -> Option<usize> {
        self.markers
            .iter()
            .find(|m| m.label == label)
            .map(|m| m.position)
    }

    /// Prefix of the circuit up to the named marker.
    pub fn truncated(&self, label: &str) -> Option<Circuit> {
        let position = self.marker(label)?;
        let mut c = self.clone();
        c.gates.truncate(position);
        c.markers.retain(|m| m.position <= position);
        Some(c)
    }

    /// True when no macro gate remains.
    pub fn is_lowered(&self) -> bool {
        self.gates.iter().all(|g| !g.kind.is_macro())
    }
}

/// `a` followed by `b`.
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    if a.qubit_count != b.qubit_count {
        return Err(Error::QubitCountMismatch {
            left: a.qubit_count,
            right: b.qubit_count,
        });
    }
    if let (Some(la), Some(lb)) = (&a.layout, &b.layout) {
        if la != lb {
            return Err(Error::LayoutConflict(
                "composed circuits use different layouts".into(),
            ));
        }
    }
    let mut out = a.clone();
    out.gates.extend_from_slice(&b.gates);
    if out.layout.is_none() {
        out.layout = b.layout.clone();
    }
    if out.registers.is_none() {
        out.registers = b.registers.clone();
    }
    for port in &b.ports {
        if out.port(&port.name).is_none() {
            out.ports.push(port.clone());
        }
    }
    out.markers.extend(b.markers.iter().map(|m| Marker {
        label: m.label.clone(),
        position: m.position + a.gates.len(),
    }));
    Ok(out)
}

/// Inverse circuit: gates reversed, each replaced by its inverse.
pub fn dagger(c: &Circuit) -> Circuit {
    let mut out = c.clone();
    out.gates = c.gates.iter().rev().map(Gate::dagger).collect();
    out.markers.clear();
    out
}

/// Expands `SWAP` and `CSXDG` into the `{X, CNOT, CSX}` alphabet.
pub fn lower(c: &Circuit) -> Circuit {
    let mut out = c.clone();
    out.gates.clear();
    let mut new_position = Vec::with_capacity(c.gates.len() + 1);
    for g in &c.gates {
        new_position.push(out.gates.len());
        out.gates.extend(g.lowered());
    }
    new_position.push(out.gates.len());
    for m in &mut out.markers {
        m.position = new_position[m.position];
    }
    out
}

/// A two-qubit gate whose operands are not grid neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub gate_index: usize,
    pub gate: Gate,
    pub control_at: GridCoord,
    pub target_at: GridCoord,
}

/// Every two-qubit gate whose operands are not adjacent on the grid.
pub fn validate_connectivity(c: &Circuit) -> Result<Vec<Violation>> {
    let layout = c.layout.as_ref().ok_or(Error::MissingLayout)?;
    if !c.is_lowered() {
        return Err(Error::NotLowered);
    }
    if layout.len() != c.qubit_count {
        return Err(Error::QubitCountMismatch {
            left: layout.len(),
            right: c.qubit_count,
        });
    }
    let mut violations = Vec::new();
    for (i, g) in c.gates.iter().enumerate() {
        if let Some(ctrl) = g.control {
            let (a, b) = (layout.coord(ctrl)?, layout.coord(g.target)?);
            if a.distance(b) != 1 {
                violations.push(Violation {
                    gate_index: i,
                    gate: *g,
                    control_at: a,
                    target_at: b,
                });
            }
        }
    }
    Ok(violations)
}

/// Removes pairs of identical self-inverse gates that meet with no
/// intervening gate on either operand, until none are left.
pub fn cancel_adjacent_pairs(c: &Circuit) -> Circuit {
    // Surviving gates with their original index; `last[q]` is a stack of
    // positions in `kept` of the live gates touching qubit q.
    let mut kept: Vec<Option<(usize, Gate)>> = Vec::with_capacity(c.gates.len());
    let mut last: Vec<Vec<usize>> = vec![Vec::new(); c.qubit_count];
    for (i, g) in c.gates.iter().enumerate() {
        if g.self_inverse() {
            let mut tops = g.qubits().map(|q| last[q].last().copied());
            let first = tops.next().flatten();
            if let Some(k) = first {
                let all_same = tops.all(|t| t == Some(k));
                if all_same && kept[k].map(|(_, h)| h) == Some(*g) {
                    kept[k] = None;
                    for q in g.qubits() {
                        last[q].pop();
                    }
                    continue;
                }
            }
        }
        let pos = kept.len();
        kept.push(Some((i, *g)));
        for q in g.qubits() {
            last[q].push(pos);
        }
    }
    let survivors: Vec<(usize, Gate)> = kept.into_iter().flatten().collect();
    let mut out = c.clone();
    out.gates = survivors.iter().map(|(_, g)| *g).collect();
    for m in &mut out.markers {
        m.position = survivors.partition_point(|(i, _)| *i < m.position);
    }
    out
}

/// Per-kind gate tally plus ASAP depth.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub x: usize,
    pub cnot: usize,
    pub csx: usize,
    pub csxdg: usize,
    pub swap: usize,
    pub two_qubit_total: usize,
    pub depth: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.x + self.cnot + self.csx + self.csxdg + self.swap
    }
}

/// Counts gates by kind and schedules them as soon as possible for depth.
pub fn gate_counts(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts::default();
    let mut busy_until = vec![0usize; c.qubit_count];
    for g in &c.gates {
        match g.kind {
            GateKind::X => counts.x += 1,
            GateKind::Cnot => counts.cnot += 1,
            GateKind::Csx => counts.csx += 1,
            GateKind::CsxDg => counts.csxdg += 1,
            GateKind::Swap => counts.swap += 1,
        }
        if g.is_two_qubit() {
            counts.two_qubit_total += 1;
        }
        let step = g.qubits().map(|q| busy_until[q]).max().unwrap_or(0) + 1;
        for q in g.qubits() {
            busy_until[q] = step;
        }
        counts.depth = counts.depth.max(step);
    }
    counts
}

/// Appends gates to a circuit, with helpers for inverted sub-blocks and
/// stage markers. Builder code controls qubit validity, so pushes panic on
/// out-of-range operands (an internal bug, never user input).
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    circuit: Circuit,
}

impl CircuitBuilder {
    pub fn new(circuit: Circuit) -> Self {
        Self { circuit }
    }

    pub fn push(&mut self, gate: Gate) {
        self.circuit
            .push(gate)
            .expect("builder emitted an invalid gate");
    }

    pub fn x(&mut self, t: QubitId) {
        self.push(Gate::x(t));
    }

    pub fn cx(&mut self, c: QubitId, t: QubitId) {
        self.push(Gate::cnot(c, t));
    }

    pub fn csx(&mut self, c: QubitId, t: QubitId) {
        self.push(Gate::csx(c, t));
    }

    pub fn swap(&mut self, p: QubitId, q: QubitId) {
        self.push(Gate::swap(p, q));
    }

    /// Swap where `zero` is known to hold `|0⟩`.
    pub fn swap_into_zero(&mut self, p: QubitId, zero: QubitId) {
        self.push(Gate::swap_into_zero(p, zero));
    }

    /// Emits `f`'s gates in inverse order, each inverted.
    pub fn inverse(&mut self, f: impl FnOnce(&mut Self)) {
        let start = self.circuit.gates.len();
        let markers = self.circuit.markers.len();
        f(self);
        self.circuit.markers.truncate(markers);
        let block: Vec<Gate> = self.circuit.gates.drain(start..).collect();
        self.circuit
            .gates
            .extend(block.iter().rev().map(Gate::dagger));
    }

    pub fn mark(&mut self, label: impl Into<String>) {
        let position = self.circuit.gates.len();
        self.circuit.markers.push(Marker {
            label: label.into(),
            position,
        });
    }

    pub fn gate_len(&self) -> usize {
        self.circuit.gates.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.circuit.gates
    }

    pub fn add_port(&mut self, port: Port) {
        self.circuit.ports.push(port);
    }

    pub fn finish(self) -> Circuit {
        self.circuit
    }
}
