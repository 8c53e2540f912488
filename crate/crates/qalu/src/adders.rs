//! Addition units over `{X, CNOT, CSX}`.
//!
//! The one-bit adders compute the carry as `X^{(a⊕b + a⊕c + b⊕c)/2}` on a
//! fresh qubit: each pairwise parity contributes half a NOT, and the three
//! half-NOTs add up to an integer exactly when the majority is decided.
//! Block functions take registers least-significant first (index = weight)
//! and append to a [`CircuitBuilder`]; the `build_*` functions wrap them into
//! complete circuits on their own layouts with ports and stage markers.

use crate::error::Result;
use crate::ir::{Circuit, CircuitBuilder, Port, PortRole};
use crate::layout::{make_adder_layout, AdderVariant, GridLayout, QubitId, RegisterMap};

/// Stage markers of the one-bit adders, in circuit order.
pub const CHECKPOINTS: [&str; 4] = ["phi_I", "phi_II", "phi_III", "phi_IV"];

/// Fresh builder over a layout, named `name`.
pub(crate) fn start(
    name: String,
    built: (GridLayout, RegisterMap),
) -> (CircuitBuilder, RegisterMap) {
    let (layout, registers) = built;
    let mut circuit = Circuit::on_layout(layout, registers.clone());
    circuit.name = name;
    (CircuitBuilder::new(circuit), registers)
}

/// `name[lo..=hi]` least-significant first.
pub(crate) fn lsb(registers: &RegisterMap, name: &str, hi: i32, lo: i32) -> Result<Vec<QubitId>> {
    let mut v = registers.range(name, hi, lo)?;
    v.reverse();
    Ok(v)
}

pub(crate) fn port(
    registers: &RegisterMap,
    name: &str,
    role: PortRole,
    register: &str,
    hi: i32,
    lo: i32,
) -> Result<Port> {
    Ok(Port::new(name, role, registers.range(register, hi, lo)?))
}

fn mark(b: &mut CircuitBuilder, enabled: bool, label: &str) {
    if enabled {
        b.mark(label);
    }
}

/// `X^{(a⊕b)/2}` onto `c2` (via `c1`), the first stage shared by every
/// full adder; `pre` is the parity network that exposes `a⊕b` on `c1`.
fn half_parity_stage(b: &mut CircuitBuilder, pre: &[(QubitId, QubitId)], c1: QubitId, c2: QubitId) {
    for &(c, t) in pre {
        b.cx(c, t);
    }
    b.csx(c1, c2);
    for &(c, t) in pre.iter().rev() {
        b.cx(c, t);
    }
}

/// One-bit full adder wired for the A | C | B column order:
/// `|a, b, c, 0, 0⟩ → |a, b, a⊕b⊕c, carry, 0⟩` on `(a, b, c, c1, c2)`.
pub fn p1_hat(b: &mut CircuitBuilder, [a, bq, c, c1, c2]: [QubitId; 5], markers: bool) {
    half_parity_stage(b, &[(c, c1), (a, c), (bq, c), (c, c1)], c1, c2);
    mark(b, markers, CHECKPOINTS[0]);
    b.cx(c2, c1);
    b.cx(c1, c2);
    mark(b, markers, CHECKPOINTS[1]);
    b.cx(a, c);
    b.csx(c, c1);
    b.cx(a, c);
    mark(b, markers, CHECKPOINTS[2]);
    b.cx(bq, c);
    b.csx(c, c1);
    b.cx(bq, c);
    mark(b, markers, CHECKPOINTS[3]);
    b.cx(bq, c);
    b.cx(a, c);
    b.cx(c, c1);
}

/// Everything of the A | B | C one-bit adder up to the last checkpoint:
/// afterwards `c1` holds the carry and the other qubits are restored.
fn p2_carry(b: &mut CircuitBuilder, [a, bq, c, c1, c2]: [QubitId; 5], markers: bool) {
    half_parity_stage(b, &[(c, c1), (a, bq), (bq, c), (c, c1)], c1, c2);
    mark(b, markers, CHECKPOINTS[0]);
    b.cx(c2, c1);
    b.cx(c1, c2);
    mark(b, markers, CHECKPOINTS[1]);
    // a⊕c is routed through B because A and C are not neighbours.
    b.cx(bq, c);
    b.cx(a, bq);
    b.cx(bq, c);
    b.csx(c, c1);
    b.cx(bq, c);
    b.cx(a, bq);
    b.cx(bq, c);
    mark(b, markers, CHECKPOINTS[2]);
    b.cx(bq, c);
    b.csx(c, c1);
    b.cx(bq, c);
    mark(b, markers, CHECKPOINTS[3]);
}

/// One-bit full adder wired for the A | B | C column order.
pub fn p2_hat(b: &mut CircuitBuilder, q: [QubitId; 5], markers: bool) {
    p2_carry(b, q, markers);
    let [a, bq, c, c1, _] = q;
    b.cx(a, bq);
    b.cx(bq, c);
    b.cx(a, bq);
    b.cx(c, c1);
}

/// Carry unit `U_C`: `|a, b, c, 0, 0⟩ → |a, b, c, carry, 0⟩` and, when the
/// carry target is reused, it is XORed into `c1` with `c` kept intact.
pub fn uc(b: &mut CircuitBuilder, q: [QubitId; 5]) {
    p2_carry(b, q, false);
    let [a, bq, c, c1, _] = q;
    // a⊕b⊕(carry-in parity) is folded into C1 and C is restored.
    b.cx(a, bq);
    b.cx(bq, c);
    b.cx(c, c1);
    b.cx(bq, c);
    b.cx(a, bq);
}

/// Sum unit `U_S`: `|a, b, c⟩ → |a, a⊕b⊕c, c⟩`.
pub fn us(b: &mut CircuitBuilder, a: QubitId, bq: QubitId, c: QubitId) {
    b.cx(a, bq);
    b.cx(c, bq);
}

/// In-place ripple adder: `b ← a + b`.
///
/// `a` has `K` qubits, `b` has `K+1` (top one `|0⟩`), `c` has `K+1`
/// ancillas, all least-significant first. The last carry step borrows the
/// still-empty top of `b` as its scratch qubit.
pub fn p3(b: &mut CircuitBuilder, a: &[QubitId], bq: &[QubitId], c: &[QubitId]) {
    let k = a.len();
    assert!(
        k >= 1 && bq.len() == k + 1 && c.len() == k + 1,
        "P_III register widths"
    );
    for n in 0..k {
        let scratch = if n + 2 <= k { c[n + 2] } else { bq[k] };
        uc(b, [a[n], bq[n], c[n], c[n + 1], scratch]);
    }
    b.swap_into_zero(c[k], bq[k]);
    for n in (1..k).rev() {
        us(b, a[n], bq[n], c[n]);
        b.inverse(|b| uc(b, [a[n - 1], bq[n - 1], c[n - 1], c[n], c[n + 1]]));
    }
    b.cx(a[0], bq[0]);
}

/// Signed in-place adder: `b ← (a + b) mod 2^K` for `K`-bit two's-complement
/// `a` and `b` (`c` has `K+1` ancillas); the overflow carry is discarded.
pub fn p3_signed(b: &mut CircuitBuilder, a: &[QubitId], bq: &[QubitId], c: &[QubitId]) {
    let k = a.len();
    assert!(
        k >= 1 && bq.len() == k && c.len() == k + 1,
        "signed adder register widths"
    );
    if k == 1 {
        b.cx(a[0], bq[0]);
        return;
    }
    for n in 0..k - 1 {
        uc(b, [a[n], bq[n], c[n], c[n + 1], c[n + 2]]);
    }
    b.cx(c[k - 1], bq[k - 1]);
    b.cx(a[k - 1], bq[k - 1]);
    b.inverse(|b| uc(b, [a[k - 2], bq[k - 2], c[k - 2], c[k - 1], c[k]]));
    for n in (1..k - 1).rev() {
        us(b, a[n], bq[n], c[n]);
        b.inverse(|b| uc(b, [a[n - 1], bq[n - 1], c[n - 1], c[n], c[n + 1]]));
    }
    b.cx(a[0], bq[0]);
}

/// Registers of a one-bit unit: `(A_0, B_0, C_0, C_1, C_2)`, with the carry
/// column also reachable as `C'` and `C''`.
fn one_bit(
    variant: AdderVariant,
    name: &str,
) -> Result<(CircuitBuilder, RegisterMap, [QubitId; 5])> {
    let (layout, mut registers) = make_adder_layout(1, variant)?;
    registers.add_alias("C'", "C", 1);
    registers.add_alias("C''", "C", 2);
    let (mut b, registers) = start(name.to_string(), (layout, registers));
    let q = [
        registers.qubit("A", 0)?,
        registers.qubit("B", 0)?,
        registers.qubit("C", 0)?,
        registers.qubit("C", 1)?,
        registers.qubit("C", 2)?,
    ];
    b.add_port(port(&registers, "A", PortRole::Input, "A", 0, 0)?);
    b.add_port(port(&registers, "B", PortRole::Input, "B", 0, 0)?);
    b.add_port(port(&registers, "C", PortRole::Input, "C", 0, 0)?);
    Ok((b, registers, q))
}

/// One-bit full adder on the A | C | B layout (5 qubits), with markers
/// `phi_I..phi_IV`. Output port `C` is `(carry, sum)`.
pub fn build_p1_onebit() -> Result<Circuit> {
    let (mut b, registers, q) = one_bit(AdderVariant::I, "p1-onebit")?;
    p1_hat(&mut b, q, true);
    b.add_port(port(&registers, "C", PortRole::Output, "C", 1, 0)?);
    Ok(b.finish())
}

/// One-bit full adder on the A | B | C layout (5 qubits).
pub fn build_p2_onebit() -> Result<Circuit> {
    let (mut b, registers, q) = one_bit(AdderVariant::II, "p2-onebit")?;
    p2_hat(&mut b, q, true);
    b.add_port(port(&registers, "C", PortRole::Output, "C", 1, 0)?);
    Ok(b.finish())
}

/// `U_C` on the A | B | C one-bit layout; output port `Cout` is `C_1`.
pub fn build_uc() -> Result<Circuit> {
    let (mut b, registers, q) = one_bit(AdderVariant::II, "uc")?;
    uc(&mut b, q);
    b.add_port(port(&registers, "Cout", PortRole::Output, "C", 1, 1)?);
    Ok(b.finish())
}

/// `U_S` on the A | B | C one-bit layout; output port `S` is `B_0`.
pub fn build_us() -> Result<Circuit> {
    let (mut b, registers, [a, bq, c, _, _]) = one_bit(AdderVariant::II, "us")?;
    us(&mut b, a, bq, c);
    b.add_port(port(&registers, "S", PortRole::Output, "B", 0, 0)?);
    Ok(b.finish())
}

fn build_ripple(n: usize, variant: AdderVariant, name: &str) -> Result<Circuit> {
    let (mut b, registers) = start(format!("{name} n={n}"), make_adder_layout(n, variant)?);
    let top = n as i32 - 1;
    let a = lsb(&registers, "A", top, 0)?;
    let bq = lsb(&registers, "B", top, 0)?;
    let c = lsb(&registers, "C", top + 2, 0)?;
    for k in 0..n {
        let q = [a[k], bq[k], c[k], c[k + 1], c[k + 2]];
        match variant {
            AdderVariant::I => p1_hat(&mut b, q, false),
            _ => p2_hat(&mut b, q, false),
        }
    }
    b.add_port(port(&registers, "A", PortRole::Input, "A", top, 0)?);
    b.add_port(port(&registers, "B", PortRole::Input, "B", top, 0)?);
    b.add_port(port(&registers, "C", PortRole::Output, "C", top + 1, 0)?);
    Ok(b.finish())
}

/// `N`-bit ripple adder from cascaded A | C | B one-bit adders:
/// `C_{N..0} ← a + b`.
pub fn build_p1(n: usize) -> Result<Circuit> {
    build_ripple(n, AdderVariant::I, "p1")
}

/// `N`-bit ripple adder from cascaded A | B | C one-bit adders.
pub fn build_p2(n: usize) -> Result<Circuit> {
    build_ripple(n, AdderVariant::II, "p2")
}

/// In-place `N`-bit adder: `B_{N..0} ← a + b`, `C` restored.
pub fn build_p3(n: usize) -> Result<Circuit> {
    let (mut b, registers) = start(
        format!("p3 n={n}"),
        make_adder_layout(n, AdderVariant::III)?,
    );
    let top = n as i32 - 1;
    let a = lsb(&registers, "A", top, 0)?;
    let bq = lsb(&registers, "B", top + 1, 0)?;
    let c = lsb(&registers, "C", top + 1, 0)?;
    p3(&mut b, &a, &bq, &c);
    b.add_port(port(&registers, "A", PortRole::Input, "A", top, 0)?);
    b.add_port(port(&registers, "B", PortRole::Input, "B", top, 0)?);
    b.add_port(port(&registers, "B", PortRole::Output, "B", top + 1, 0)?);
    Ok(b.finish())
}

/// Signed in-place adder on the in-place layout: `B_{N-1..0} ← a + b mod 2^N`;
/// `B_N` is left untouched.
pub fn build_p3_signed(n: usize) -> Result<Circuit> {
    let (mut b, registers) = start(
        format!("p3-signed n={n}"),
        make_adder_layout(n, AdderVariant::III)?,
    );
    let top = n as i32 - 1;
    let a = lsb(&registers, "A", top, 0)?;
    let bq = lsb(&registers, "B", top, 0)?;
    let c = lsb(&registers, "C", top + 1, 0)?;
    p3_signed(&mut b, &a, &bq, &c);
    b.add_port(port(&registers, "A", PortRole::Input, "A", top, 0)?.signed());
    b.add_port(port(&registers, "B", PortRole::InOut, "B", top, 0)?.signed());
    Ok(b.finish())
}
