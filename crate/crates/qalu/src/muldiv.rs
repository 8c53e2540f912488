//! Long multiplication and long division.
//!
//! Both units shift an operand down a column one row per digit with SWAP
//! chains. The shifts are recorded so the cleanup circuits can move the
//! operands back afterwards.
//!
//! Multiplication adds each partial product `a_j·b` as the sum of two
//! half-weight terms, `(b + (2a_j − 1)·b)/2`. The first term is an
//! unconditional in-place addition of the shifted `b`. The second adds `±b`:
//! `U_±` prepares `−b` when `a_j = 0`, so that the two terms cancel.
//!
//! Division tries one subtraction per quotient digit. The remainder's sign
//! decides the digit and, for the last digit, whether the divisor is added
//! back.

use crate::adders::{lsb, p3, p3_signed, port, start};
use crate::complement::upm;
use crate::error::{Error, Result};
use crate::ir::{Circuit, CircuitBuilder, Gate, PortRole};
use crate::layout::{make_divider_layout, make_multiplier_layout, QubitId, RegisterMap};

/// Builder plus the shift swaps emitted so far.
struct Shifter {
    b: CircuitBuilder,
    shifts: Vec<Gate>,
}

impl Shifter {
    fn shift(&mut self, gate: Gate) {
        self.b.push(gate);
        self.shifts.push(gate);
    }
}

fn q(regs: &RegisterMap, name: &str, k: i32) -> Result<QubitId> {
    regs.qubit(name, k)
}

/// `cx(s, cq); cx(t, s); cx(s, cq); cx(t, s)`: toggles `cq` by `t`
/// routed through the neighbour `s`, leaving `s` and `t` unchanged.
fn routed_cnot(b: &mut CircuitBuilder, s: QubitId, t: QubitId, cq: QubitId) {
    b.cx(s, cq);
    b.cx(t, s);
    b.cx(s, cq);
    b.cx(t, s);
}

/// Cyclic rotation of `B_{top..top-N-1}` down by one row. The first swap
/// moves `B_{top}` into the empty row below it.
fn rotate(s: &mut Shifter, regs: &RegisterMap, n: i32, base: i32) -> Result<()> {
    for j in (0..=n).rev() {
        let (hi, lo) = (q(regs, "B", base + j - 1)?, q(regs, "B", base + j - 2)?);
        s.shift(if j == n {
            Gate::swap_into_zero(hi, lo)
        } else {
            Gate::swap(hi, lo)
        });
    }
    Ok(())
}

fn multiplier_parts(n: usize) -> Result<(Circuit, Vec<Gate>)> {
    let (b, regs) = start(format!("multiplier n={n}"), make_multiplier_layout(n)?);
    let mut s = Shifter {
        b,
        shifts: Vec::new(),
    };
    let ni = n as i32;
    let col = |name: &str, hi: i32, lo: i32| lsb(&regs, name, hi, lo);

    // b moves down one row so B_{-1} holds its least significant bit, and a
    // copy lands in C as the first half-term of every digit's partial product.
    for k in 0..ni {
        s.shift(Gate::swap_into_zero(
            q(&regs, "B", k)?,
            q(&regs, "B", k - 1)?,
        ));
    }
    for k in -1..=ni - 2 {
        s.b.cx(q(&regs, "B", k)?, q(&regs, "C", k)?);
    }

    // Digit 0: its multiplier bit already sits on top of the window.
    let a0 = q(&regs, "B", ni)?;
    let window = col("B", ni, -1)?;
    let dwin = col("D", ni, -1)?;
    s.b.x(a0);
    upm(&mut s.b, &window, &dwin);
    p3(
        &mut s.b,
        &col("B", ni - 1, -1)?,
        &col("C", ni, -1)?,
        &col("E", ni, -1)?,
    );
    routed_cnot(&mut s.b, a0, q(&regs, "B", ni - 1)?, q(&regs, "C", ni)?);
    s.b.inverse(|b| upm(b, &window, &dwin));
    s.b.x(a0);
    s.b.mark("digit 0");

    for d in 1..ni {
        rotate(&mut s, &regs, ni, d)?;
        p3(
            &mut s.b,
            &col("B", ni + d - 1, d - 1)?,
            &col("C", ni + d, d - 1)?,
            &col("E", ni + d, d - 1)?,
        );
        let an = q(&regs, "B", ni + d)?;
        let dn = q(&regs, "D", ni + d)?;
        let window = col("B", ni + d, d - 1)?;
        let dwin = col("D", ni + d, d - 1)?;
        s.b.x(an);
        upm(&mut s.b, &window, &dwin);
        // Park a_d so the window top is a zero extension during the add.
        s.b.swap_into_zero(an, dn);
        p3(
            &mut s.b,
            &window,
            &col("C", ni + d + 1, d - 1)?,
            &col("E", ni + d + 1, d - 1)?,
        );
        s.b.swap_into_zero(dn, an);
        routed_cnot(
            &mut s.b,
            an,
            q(&regs, "B", ni + d - 1)?,
            q(&regs, "C", ni + d)?,
        );
        s.b.inverse(|b| upm(b, &window, &dwin));
        s.b.x(an);
        s.b.mark(format!("digit {d}"));
    }
    rotate(&mut s, &regs, ni, ni)?;

    let mut b = s.b;
    b.add_port(port(&regs, "A", PortRole::Input, "A", ni - 1, 0)?);
    b.add_port(port(&regs, "B", PortRole::Input, "B", ni - 1, 0)?);
    b.add_port(port(&regs, "C", PortRole::Output, "C", 2 * ni, 0)?);
    Ok((b.finish(), s.shifts))
}

/// Long-multiplication multiplier: `C_{2N..0} ← a·b` with `A_{N-1..0} = a`
/// and `B_{N-1..0} = b`. D and E are restored; A/B end shifted (see
/// [`cleanup_multiplier_inputs`]). Markers `digit j` follow each digit.
pub fn build_multiplier(n: usize) -> Result<Circuit> {
    multiplier_parts(n).map(|(c, _)| c)
}

fn undo_shifts(mut c: Circuit, shifts: &[Gate], name: String) -> Circuit {
    c.name = name;
    c.gates = shifts.iter().rev().map(Gate::dagger).collect();
    c.ports.clear();
    c.markers.clear();
    c
}

/// Moves the multiplier's A/B column back to its input configuration.
pub fn cleanup_multiplier_inputs(n: usize) -> Result<Circuit> {
    let (c, shifts) = multiplier_parts(n)?;
    Ok(undo_shifts(c, &shifts, format!("multiplier-cleanup n={n}")))
}

/// Options of the divider.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DividerOptions {
    /// Skip the initial shift so the quotient gains a leading flag digit
    /// that is 1 only for a zero divisor.
    pub zero_safe: bool,
    /// Keep the row −1 qubits and finish the last digit so that
    /// `A_{M-1..0}` holds the remainder.
    pub with_remainder: bool,
}

fn divider_parts(n: usize, m: usize, opts: DividerOptions) -> Result<(Circuit, Vec<Gate>)> {
    let mut name = format!("divider n={n} m={m}");
    if opts.zero_safe {
        name.push_str(" zero-safe");
    }
    if opts.with_remainder {
        name.push_str(" remainder");
    }
    let (b, regs) = start(name, make_divider_layout(n, m, opts.with_remainder)?);
    let mut s = Shifter {
        b,
        shifts: Vec::new(),
    };
    let (ni, mi) = (n as i32, m as i32);
    let bp = |k: i32| q(&regs, "B'", k);
    let col = |name: &str, hi: i32, lo: i32| lsb(&regs, name, hi, lo);
    // Remainder window A_{hi..lo}, divisor window B'_{hi..lo}, carries in
    // C_{hi..lo} topped by E_{hi}.
    let subtract = |b: &mut CircuitBuilder, hi: i32, lo: i32| -> Result<()> {
        let mut carries = col("C", hi, lo)?;
        carries.push(q(&regs, "E", hi)?);
        let divisor = col("B'", hi, lo)?;
        let dwin = col("D'", hi, lo)?;
        b.x(bp(hi)?);
        upm(b, &divisor, &dwin);
        p3_signed(b, &divisor, &col("A", hi, lo)?, &carries);
        b.inverse(|b| upm(b, &divisor, &dwin));
        b.x(bp(hi)?);
        Ok(())
    };

    let first = if opts.zero_safe {
        ni
    } else {
        for j in 0..mi {
            s.shift(Gate::swap_into_zero(bp(j + ni)?, bp(j + ni - 1)?));
        }
        ni - 1
    };
    for d in (0..=first).rev() {
        let top = mi + d;
        subtract(&mut s.b, top, d)?;
        if d == 0 && !opts.with_remainder {
            // The last digit is the complement of the remainder's sign.
            s.b.x(q(&regs, "A", mi)?);
            s.b.swap(q(&regs, "A", mi)?, q(&regs, "C", mi)?);
            s.b.mark("digit 0");
            break;
        }
        // Copy the sign c̄ to D'_{top} through B'_{top}.
        let (a_top, b_top, d_top) = (q(&regs, "A", top)?, bp(top)?, q(&regs, "D'", top)?);
        s.b.cx(a_top, b_top);
        s.b.cx(b_top, d_top);
        s.b.cx(a_top, b_top);
        for j in 0..mi {
            s.shift(Gate::swap_into_zero(bp(d + j)?, bp(d + j - 1)?));
        }
        // Add the shifted divisor back: the two half-weight terms sum to
        // b/2 when c̄ = 1 and cancel when c̄ = 0.
        let carries = {
            let mut c = col("C", top, d - 1)?;
            c.push(q(&regs, "E", top)?);
            c
        };
        let divisor = col("B'", top, d - 1)?;
        let dwin = col("D'", top, d - 1)?;
        let rem = col("A", top, d - 1)?;
        p3_signed(&mut s.b, &divisor, &rem, &carries);
        s.b.swap(b_top, d_top);
        s.b.x(b_top);
        upm(&mut s.b, &divisor, &dwin);
        p3_signed(&mut s.b, &divisor, &rem, &carries);
        s.b.inverse(|b| upm(b, &divisor, &dwin));
        // The quotient digit travels to C_{top}.
        s.b.swap(b_top, a_top);
        s.b.swap(a_top, q(&regs, "C", top)?);
        s.b.mark(format!("digit {d}"));
    }

    let mut b = s.b;
    let q_top = if opts.zero_safe { ni + mi } else { ni + mi - 1 };
    b.add_port(port(&regs, "A", PortRole::Input, "A", ni - 1, 0)?);
    b.add_port(port(&regs, "B", PortRole::Input, "B", mi - 1, 0)?);
    b.add_port(port(&regs, "Q", PortRole::Output, "C", q_top, mi)?);
    if opts.with_remainder {
        b.add_port(port(&regs, "R", PortRole::Output, "A", mi - 1, 0)?);
    }
    Ok((b.finish(), s.shifts))
}

fn check_divider_widths(n: usize, m: usize) -> Result<()> {
    if m == 0 || n == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= M <= N, got N={n}, M={m}"
        )));
    }
    Ok(())
}

/// Long-division divider for an `N`-bit dividend in `A_{N-1..0}` and an
/// `M`-bit divisor in `B_{M-1..0}`. Port `Q` reads the quotient, port `R`
/// the remainder (with [`DividerOptions::with_remainder`]).
pub fn build_divider(n: usize, m: usize, opts: DividerOptions) -> Result<Circuit> {
    check_divider_widths(n, m)?;
    divider_parts(n, m, opts).map(|(c, _)| c)
}

/// Shifts the divider's divisor back to `B_{M-1..0}`.
///
/// Exact for non-zero divisors. With a zero divisor the remainder never
/// turns non-negative, so the divisor column keeps that stray sign bit.
pub fn cleanup_divider_divisor(n: usize, m: usize, opts: DividerOptions) -> Result<Circuit> {
    check_divider_widths(n, m)?;
    let (c, shifts) = divider_parts(n, m, opts)?;
    Ok(undo_shifts(
        c,
        &shifts,
        format!("divider-cleanup n={n} m={m}"),
    ))
}
