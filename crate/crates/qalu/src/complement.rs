//! Two's-complement units: the half-adder carry `Ũ_C`, increments
//! `P_{+1}`/`P̃_{+1}`, negation, the conditional flip/restore pair
//! `U_flip`/`U_res`, the sign-conditional complement `U_±`, and the
//! subtractor.

use crate::adders::{lsb, p2_hat, port, start};
use crate::error::Result;
use crate::ir::{dagger, Circuit, CircuitBuilder, PortRole};
use crate::layout::{make_plus1_layout, make_subtractor_layout, QubitId};

/// Half-adder carry `Ũ_C`: `|ā, c, 0, 0⟩ → |ā, c, ā·c, 0⟩` on
/// `(a, c0, c1, c2)`, where `c1` receives the carry and `c2` is scratch.
pub fn uc_tilde(b: &mut CircuitBuilder, [a, c0, c1, c2]: [QubitId; 4]) {
    let pre = [(c0, c1), (a, c0), (c0, c1)];
    for &(c, t) in &pre {
        b.cx(c, t);
    }
    b.csx(c1, c2);
    for &(c, t) in pre.iter().rev() {
        b.cx(c, t);
    }
    b.cx(c2, c1);
    b.cx(c1, c2);
    b.csx(c0, c1);
    // CX^{3/2} from the parity a⊕c: a plain CNOT plus one more half step.
    b.cx(a, c0);
    b.cx(c0, c1);
    b.csx(c0, c1);
    b.cx(a, c0);
}

/// Increment without overflow: `a ← (a + 1) mod 2^K` for `a` of `K` qubits
/// and `c` of `K+1` ancillas (least-significant first).
///
/// With `hard_one` the incoming carry is a constant 1 prepared on `c[0]`;
/// without it `c[0]` already holds the carry (used by `U_±`).
pub fn plus1_tilde(b: &mut CircuitBuilder, a: &[QubitId], c: &[QubitId], hard_one: bool) {
    let k = a.len();
    assert!(k >= 1 && c.len() > k, "increment register widths");
    if hard_one {
        b.x(c[0]);
    }
    for n in 0..k - 1 {
        uc_tilde(b, [a[n], c[n], c[n + 1], c[n + 2]]);
    }
    ripple_back(b, a, c, k);
    if hard_one {
        b.x(c[0]);
    }
}

/// Writes the sums `a_n ⊕ c_n` for `n < k` while uncomputing the carries.
fn ripple_back(b: &mut CircuitBuilder, a: &[QubitId], c: &[QubitId], k: usize) {
    for n in (1..k).rev() {
        b.cx(c[n], a[n]);
        b.inverse(|b| uc_tilde(b, [a[n - 1], c[n - 1], c[n], c[n + 1]]));
    }
    b.cx(c[0], a[0]);
}

/// Increment with overflow: `a_{K..0} ← a_{K-1..0} + 1` where `a` has
/// `K+1` qubits (top one `|0⟩`) and `c` has `K+2` ancillas.
pub fn plus1(b: &mut CircuitBuilder, a: &[QubitId], c: &[QubitId]) {
    let k = a.len() - 1;
    assert!(k >= 1 && c.len() == k + 2, "increment register widths");
    b.x(c[0]);
    for n in 0..k {
        uc_tilde(b, [a[n], c[n], c[n + 1], c[n + 2]]);
    }
    b.swap_into_zero(c[k], a[k]);
    ripple_back(b, a, c, k);
    b.x(c[0]);
}

/// `U_flip`: XORs the sign `a_N` into every magnitude bit and copies it
/// to `c0` (which must start at `|0⟩`); `2N+1` CNOTs.
pub fn uflip(b: &mut CircuitBuilder, a: &[QubitId], c0: QubitId) {
    let n = a.len() - 1;
    b.cx(a[0], c0);
    for j in 0..n {
        b.cx(a[j + 1], a[j]);
    }
    for j in (1..n).rev() {
        b.cx(a[j], a[j - 1]);
    }
    b.cx(a[0], c0);
}

/// `U_res`: clears `c[0]` (holding a copy of `sign`) through the carry
/// column, whose other qubits are `|0⟩`; `2N+1` CNOTs for `c` of `N+1`.
pub fn ures(b: &mut CircuitBuilder, sign: QubitId, c: &[QubitId]) {
    let n = c.len() - 1;
    assert!(n >= 1, "U_res needs at least two carry qubits");
    b.cx(sign, c[n]);
    for j in (2..=n).rev() {
        b.cx(c[j], c[j - 1]);
    }
    b.cx(c[1], c[0]);
    for j in 2..=n {
        b.cx(c[j], c[j - 1]);
    }
    b.cx(sign, c[n]);
}

/// `U_±`: for `a = (sign, magnitude)` with `N+1` qubits and `c` of `N+1`
/// ancillas, complements the magnitude in two's complement iff the sign is
/// set; the sign bit itself is unchanged.
pub fn upm(b: &mut CircuitBuilder, a: &[QubitId], c: &[QubitId]) {
    let n = a.len() - 1;
    assert!(n >= 1 && c.len() == n + 1, "U_± register widths");
    uflip(b, a, c[0]);
    plus1_tilde(b, &a[..n], c, false);
    ures(b, a[n], c);
}

/// Negation of a magnitude: X on every qubit of `a` (`N+1`, sign on top)
/// then a modular increment of the low `N` bits.
pub fn negate(b: &mut CircuitBuilder, a: &[QubitId], c: &[QubitId]) {
    for &q in a {
        b.x(q);
    }
    plus1_tilde(b, &a[..a.len() - 1], c, true);
}

fn plus1_start(name: &str, n: usize) -> Result<(CircuitBuilder, crate::layout::RegisterMap)> {
    Ok(start(format!("{name} n={n}"), make_plus1_layout(n)?))
}

/// `Ũ_C` on the one-bit increment layout: `A_0` carries `ā`, `C_0` the
/// incoming carry, `C_1` receives the product, `C_2` is scratch.
pub fn build_uc_tilde() -> Result<Circuit> {
    let (mut b, regs) = start("uc-tilde".to_string(), make_plus1_layout(1)?);
    let q = [
        regs.qubit("A", 0)?,
        regs.qubit("C", 0)?,
        regs.qubit("C", 1)?,
        regs.qubit("C", 2)?,
    ];
    uc_tilde(&mut b, q);
    b.add_port(port(&regs, "A", PortRole::Input, "A", 0, 0)?);
    b.add_port(port(&regs, "C", PortRole::Input, "C", 0, 0)?);
    b.add_port(port(&regs, "Cout", PortRole::Output, "C", 1, 1)?);
    Ok(b.finish())
}

/// `A_{N..0} ← A_{N-1..0} + 1`.
pub fn build_plus1(n: usize) -> Result<Circuit> {
    let (mut b, regs) = plus1_start("plus1", n)?;
    let top = n as i32;
    plus1(
        &mut b,
        &lsb(&regs, "A", top, 0)?,
        &lsb(&regs, "C", top + 1, 0)?,
    );
    b.add_port(port(&regs, "A", PortRole::Input, "A", top - 1, 0)?);
    b.add_port(port(&regs, "A", PortRole::Output, "A", top, 0)?);
    Ok(b.finish())
}

/// `A_{N-1..0} ← (A_{N-1..0} + 1) mod 2^N`.
pub fn build_plus1_tilde(n: usize) -> Result<Circuit> {
    let (mut b, regs) = plus1_start("plus1-tilde", n)?;
    let top = n as i32 - 1;
    plus1_tilde(
        &mut b,
        &lsb(&regs, "A", top, 0)?,
        &lsb(&regs, "C", top + 1, 0)?,
        true,
    );
    b.add_port(port(&regs, "A", PortRole::InOut, "A", top, 0)?);
    Ok(b.finish())
}

/// Two's complement of a magnitude: `A_{N..0} ← (1, ~|a| + 1)`.
pub fn build_negate(n: usize) -> Result<Circuit> {
    let (mut b, regs) = plus1_start("negate", n)?;
    let top = n as i32;
    negate(&mut b, &lsb(&regs, "A", top, 0)?, &lsb(&regs, "C", top, 0)?);
    b.add_port(port(&regs, "A", PortRole::Input, "A", top - 1, 0)?);
    b.add_port(port(&regs, "A", PortRole::Output, "A", top, 0)?.signed());
    Ok(b.finish())
}

/// `U_flip` on `A_{N..0}` with the sign copied to `C_0`.
pub fn build_uflip(n: usize) -> Result<Circuit> {
    let (mut b, regs) = plus1_start("uflip", n)?;
    let top = n as i32;
    uflip(&mut b, &lsb(&regs, "A", top, 0)?, regs.qubit("C", 0)?);
    b.add_port(port(&regs, "A", PortRole::InOut, "A", top, 0)?);
    b.add_port(port(&regs, "C", PortRole::Output, "C", 0, 0)?);
    Ok(b.finish())
}

/// `U_res` with the sign on `A_N`; input `C` is the copy on `C_0`.
pub fn build_ures(n: usize) -> Result<Circuit> {
    let (mut b, regs) = plus1_start("ures", n)?;
    let top = n as i32;
    ures(&mut b, regs.qubit("A", top)?, &lsb(&regs, "C", top, 0)?);
    b.add_port(port(&regs, "A", PortRole::Input, "A", top, top)?);
    b.add_port(port(&regs, "C", PortRole::Input, "C", 0, 0)?);
    b.add_port(port(&regs, "C", PortRole::Output, "C", top, 0)?);
    Ok(b.finish())
}

/// `U_±` on `A_{N..0}` (sign on top): sign-magnitude in, two's complement out.
pub fn build_upm(n: usize) -> Result<Circuit> {
    let (mut b, regs) = plus1_start("upm", n)?;
    let top = n as i32;
    upm(&mut b, &lsb(&regs, "A", top, 0)?, &lsb(&regs, "C", top, 0)?);
    b.add_port(port(&regs, "A", PortRole::Input, "A", top, 0)?);
    b.add_port(port(&regs, "A", PortRole::Output, "A", top, 0)?.signed());
    Ok(b.finish())
}

/// Subtractor: `C_{N..0} ← a − b` in `N+1`-bit two's complement. `B` is
/// left negated (`B_{N..0} = −b`); see [`build_subtractor_cleanup`].
pub fn build_subtractor(n: usize) -> Result<Circuit> {
    let (mut b, regs) = start(format!("subtractor n={n}"), make_subtractor_layout(n)?);
    let top = n as i32;
    let bq = lsb(&regs, "B", top, 0)?;
    let c = lsb(&regs, "C", top + 1, 0)?;
    let a = lsb(&regs, "A", top - 1, 0)?;
    b.mark("complement");
    negate_b(&mut b, &bq, &c);
    b.mark("add");
    for k in 0..n {
        p2_hat(&mut b, [a[k], bq[k], c[k], c[k + 1], c[k + 2]], false);
    }
    b.cx(bq[n], c[n]);
    b.add_port(port(&regs, "A", PortRole::Input, "A", top - 1, 0)?);
    b.add_port(port(&regs, "B", PortRole::Input, "B", top - 1, 0)?);
    b.add_port(port(&regs, "C", PortRole::Output, "C", top, 0)?.signed());
    Ok(b.finish())
}

/// Complement stage of the subtractor: `B_{N..0} ← −b`.
fn negate_b(b: &mut CircuitBuilder, bq: &[QubitId], c: &[QubitId]) {
    for &q in bq {
        b.x(q);
    }
    plus1_tilde(b, bq, c, true);
}

/// Uncomputes the subtractor: restores `B` and clears `C`.
///
/// The complement stage alone cannot be inverted once `C` holds the
/// difference, because its carry ancillas are no longer `|0⟩`; the whole
/// subtractor is therefore run backwards.
pub fn build_subtractor_cleanup(n: usize) -> Result<Circuit> {
    let mut c = dagger(&build_subtractor(n)?);
    c.name = format!("subtractor-cleanup n={n}");
    c.ports.clear();
    Ok(c)
}
