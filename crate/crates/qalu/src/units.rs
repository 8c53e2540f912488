//! Catalogue of every buildable unit: name, parameters, builder, and the
//! oracle-derived cases used to verify it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ir::{Circuit, PortRole};
use crate::layout::{AdderVariant, QubitId};
use crate::muldiv::DividerOptions;
use crate::oracle::{
    encode_twos, ref_add, ref_divmod, ref_divzero_pattern, ref_mul, ref_sub, twos_value, BitVec,
};
use crate::{adders, complement, muldiv};

/// Every unit the toolkit can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    P1Onebit,
    P2Onebit,
    P1,
    P2,
    P3,
    P3Signed,
    Uc,
    Us,
    UcTilde,
    Plus1,
    Plus1Tilde,
    Negate,
    Uflip,
    Ures,
    Upm,
    Subtractor,
    Multiplier,
    Divider,
}

impl Unit {
    pub const ALL: [Unit; 18] = [
        Unit::P1Onebit,
        Unit::P2Onebit,
        Unit::P1,
        Unit::P2,
        Unit::P3,
        Unit::P3Signed,
        Unit::Uc,
        Unit::Us,
        Unit::UcTilde,
        Unit::Plus1,
        Unit::Plus1Tilde,
        Unit::Negate,
        Unit::Uflip,
        Unit::Ures,
        Unit::Upm,
        Unit::Subtractor,
        Unit::Multiplier,
        Unit::Divider,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Unit::P1Onebit => "p1-onebit",
            Unit::P2Onebit => "p2-onebit",
            Unit::P1 => "p1",
            Unit::P2 => "p2",
            Unit::P3 => "p3",
            Unit::P3Signed => "p3-signed",
            Unit::Uc => "uc",
            Unit::Us => "us",
            Unit::UcTilde => "uc-tilde",
            Unit::Plus1 => "plus1",
            Unit::Plus1Tilde => "plus1-tilde",
            Unit::Negate => "negate",
            Unit::Uflip => "uflip",
            Unit::Ures => "ures",
            Unit::Upm => "upm",
            Unit::Subtractor => "subtractor",
            Unit::Multiplier => "multiplier",
            Unit::Divider => "divider",
        }
    }

    /// Whether the unit takes a width `N`.
    pub fn takes_n(self) -> bool {
        !matches!(
            self,
            Unit::P1Onebit | Unit::P2Onebit | Unit::Uc | Unit::Us | Unit::UcTilde
        )
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Unit::ALL
            .into_iter()
            .find(|u| u.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown unit `{s}`")))
    }
}

/// Size and option parameters shared by all units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    /// Divisor width (divider only).
    pub m: usize,
    pub zero_safe: bool,
    pub with_remainder: bool,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            n: 1,
            m: 1,
            zero_safe: false,
            with_remainder: false,
        }
    }
}

impl Params {
    pub fn n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn divider(n: usize, m: usize, zero_safe: bool, with_remainder: bool) -> Self {
        Self {
            n,
            m,
            zero_safe,
            with_remainder,
        }
    }

    fn divider_options(&self) -> DividerOptions {
        DividerOptions {
            zero_safe: self.zero_safe,
            with_remainder: self.with_remainder,
        }
    }
}

/// Ripple-adder unit for a layout variant.
pub fn adder_unit(variant: AdderVariant) -> Unit {
    match variant {
        AdderVariant::I => Unit::P1,
        AdderVariant::II => Unit::P2,
        AdderVariant::III => Unit::P3,
    }
}

/// Builds the (unlowered) circuit of a unit.
pub fn build(unit: Unit, p: &Params) -> Result<Circuit> {
    let n = p.n;
    match unit {
        Unit::P1Onebit => adders::build_p1_onebit(),
        Unit::P2Onebit => adders::build_p2_onebit(),
        Unit::P1 => adders::build_p1(n),
        Unit::P2 => adders::build_p2(n),
        Unit::P3 => adders::build_p3(n),
        Unit::P3Signed => adders::build_p3_signed(n),
        Unit::Uc => adders::build_uc(),
        Unit::Us => adders::build_us(),
        Unit::UcTilde => complement::build_uc_tilde(),
        Unit::Plus1 => complement::build_plus1(n),
        Unit::Plus1Tilde => complement::build_plus1_tilde(n),
        Unit::Negate => complement::build_negate(n),
        Unit::Uflip => complement::build_uflip(n),
        Unit::Ures => complement::build_ures(n),
        Unit::Upm => complement::build_upm(n),
        Unit::Subtractor => complement::build_subtractor(n),
        Unit::Multiplier => muldiv::build_multiplier(n),
        Unit::Divider => muldiv::build_divider(n, p.m, p.divider_options()),
    }
}

/// One basis input and the port values the oracle expects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub inputs: Vec<(String, u128)>,
    pub expected: Vec<(String, u128)>,
}

impl Case {
    fn new(inputs: &[(&str, u128)], expected: &[(&str, u128)]) -> Self {
        let own = |v: &[(&str, u128)]| v.iter().map(|(k, x)| (k.to_string(), *x)).collect();
        Self {
            inputs: own(inputs),
            expected: own(expected),
        }
    }
}

/// A unit's circuit with everything needed to check it.
#[derive(Debug, Clone)]
pub struct UnitCheck {
    pub unit: Unit,
    pub params: Params,
    pub circuit: Circuit,
    pub cases: Vec<Case>,
    /// Qubits that must end in `|0⟩`.
    pub ancillas: Vec<QubitId>,
    /// Input ports whose value must be unchanged at the end.
    pub preserved: Vec<String>,
}

/// Upper bound on exhaustively enumerated inputs.
pub const MAX_CASES: u128 = 1 << 16;

fn pairs(wa: usize, wb: usize) -> Result<impl Iterator<Item = (u128, u128)>> {
    if wa + wb > 16 {
        return Err(Error::BoundsExceeded(format!(
            "{} input bits exceed 16",
            wa + wb
        )));
    }
    let (ra, rb) = (1u128 << wa, 1u128 << wb);
    Ok((0..ra).flat_map(move |a| (0..rb).map(move |b| (a, b))))
}

fn singles(w: usize) -> Result<std::ops::Range<u128>> {
    if w > 16 {
        return Err(Error::BoundsExceeded(format!("{w} input bits exceed 16")));
    }
    Ok(0..1u128 << w)
}

/// Two's-complement pattern of `v` wrapped to `width` bits.
fn wrapped(v: i128, width: usize) -> u128 {
    let modulus = 1i128 << width;
    let half = modulus >> 1;
    let w = (v + half).rem_euclid(modulus) - half;
    encode_twos(w, width)
        .expect("wrapped value fits")
        .unsigned()
}

fn signed(pattern: u128, width: usize) -> i128 {
    twos_value(&BitVec::from_unsigned(pattern, width).expect("pattern fits"))
}

/// Negation of a magnitude in `width+1` bits. A zero magnitude keeps the
/// set sign bit, `1 0…0`, because the flip-and-increment discards its carry.
fn negated(magnitude: u128, width: usize) -> u128 {
    if magnitude == 0 {
        1 << width
    } else {
        encode_twos(-(magnitude as i128), width + 1)
            .expect("fits")
            .unsigned()
    }
}

fn register(c: &Circuit, name: &str, hi: i32, lo: i32) -> Result<Vec<QubitId>> {
    c.registers
        .as_ref()
        .ok_or(Error::MissingLayout)?
        .range(name, hi, lo)
}

/// Builds a unit together with its exhaustive cases and audit lists.
pub fn unit_check(unit: Unit, p: &Params) -> Result<UnitCheck> {
    let circuit = build(unit, p)?;
    let n = p.n;
    let ni = n as i32;
    let mut ancillas = Vec::new();
    let mut preserved: Vec<&str> = Vec::new();
    let mut cases = Vec::new();
    let full_add = |x: u128| {
        let (a, b, c) = (x >> 2, (x >> 1) & 1, x & 1);
        (a, b, c, ref_add(ref_add(a, b), c))
    };
    match unit {
        Unit::P1Onebit | Unit::P2Onebit => {
            ancillas = register(&circuit, "C", 2, 2)?;
            preserved = vec!["A", "B"];
            for x in 0..8 {
                let (a, b, c, s) = full_add(x);
                cases.push(Case::new(&[("A", a), ("B", b), ("C", c)], &[("C", s)]));
            }
        }
        Unit::Uc => {
            ancillas = register(&circuit, "C", 2, 2)?;
            preserved = vec!["A", "B", "C"];
            for x in 0..8 {
                let (a, b, c, s) = full_add(x);
                cases.push(Case::new(
                    &[("A", a), ("B", b), ("C", c)],
                    &[("Cout", s >> 1)],
                ));
            }
        }
        Unit::Us => {
            preserved = vec!["A", "C"];
            for x in 0..8 {
                let (a, b, c, s) = full_add(x);
                cases.push(Case::new(&[("A", a), ("B", b), ("C", c)], &[("S", s & 1)]));
            }
        }
        Unit::P1 | Unit::P2 => {
            ancillas = register(&circuit, "C", ni + 1, ni + 1)?;
            preserved = vec!["A", "B"];
            for (a, b) in pairs(n, n)? {
                cases.push(Case::new(&[("A", a), ("B", b)], &[("C", ref_add(a, b))]));
            }
        }
        Unit::P3 => {
            ancillas = register(&circuit, "C", ni, 0)?;
            preserved = vec!["A"];
            for (a, b) in pairs(n, n)? {
                cases.push(Case::new(&[("A", a), ("B", b)], &[("B", ref_add(a, b))]));
            }
        }
        Unit::P3Signed => {
            ancillas = register(&circuit, "C", ni, 0)?;
            ancillas.extend(register(&circuit, "B", ni, ni)?);
            preserved = vec!["A"];
            for (a, b) in pairs(n, n)? {
                let sum = wrapped(signed(a, n) + signed(b, n), n);
                cases.push(Case::new(&[("A", a), ("B", b)], &[("B", sum)]));
            }
        }
        Unit::UcTilde => {
            ancillas = register(&circuit, "C", 2, 2)?;
            ancillas.extend(register(&circuit, "A", 1, 1)?);
            preserved = vec!["A", "C"];
            for (a, c) in pairs(1, 1)? {
                cases.push(Case::new(
                    &[("A", a), ("C", c)],
                    &[("Cout", ref_add(a, c) >> 1)],
                ));
            }
        }
        Unit::Plus1 => {
            ancillas = register(&circuit, "C", ni + 1, 0)?;
            for a in singles(n)? {
                cases.push(Case::new(&[("A", a)], &[("A", ref_add(a, 1))]));
            }
        }
        Unit::Plus1Tilde => {
            ancillas = register(&circuit, "C", ni + 1, 0)?;
            ancillas.extend(register(&circuit, "A", ni, ni)?);
            for a in singles(n)? {
                cases.push(Case::new(&[("A", a)], &[("A", ref_add(a, 1) % (1 << n))]));
            }
        }
        Unit::Negate => {
            ancillas = register(&circuit, "C", ni + 1, 0)?;
            for a in singles(n)? {
                cases.push(Case::new(&[("A", a)], &[("A", negated(a, n))]));
            }
        }
        Unit::Uflip => {
            ancillas = register(&circuit, "C", ni + 1, 1)?;
            for a in singles(n + 1)? {
                let sign = a >> n;
                let mask = (1u128 << n) - 1;
                let flipped = if sign == 1 {
                    (sign << n) | (!a & mask)
                } else {
                    a
                };
                cases.push(Case::new(&[("A", a)], &[("A", flipped), ("C", sign)]));
            }
        }
        Unit::Ures => {
            ancillas = register(&circuit, "C", ni + 1, 0)?;
            ancillas.extend(register(&circuit, "A", ni - 1, 0)?);
            preserved = vec!["A"];
            for s in 0..2 {
                cases.push(Case::new(&[("A", s), ("C", s)], &[("C", 0)]));
            }
        }
        Unit::Upm => {
            ancillas = register(&circuit, "C", ni + 1, 0)?;
            for a in singles(n + 1)? {
                let (sign, magnitude) = (a >> n, a & ((1 << n) - 1));
                let out = if sign == 0 { a } else { negated(magnitude, n) };
                cases.push(Case::new(&[("A", a)], &[("A", out)]));
            }
        }
        Unit::Subtractor => {
            ancillas = register(&circuit, "C", ni + 1, ni + 1)?;
            preserved = vec!["A"];
            for (a, b) in pairs(n, n)? {
                let d = encode_twos(ref_sub(a, b), n + 1)?.unsigned();
                cases.push(Case::new(&[("A", a), ("B", b)], &[("C", d)]));
            }
        }
        Unit::Multiplier => {
            ancillas = register(&circuit, "D", 2 * ni - 1, -1)?;
            ancillas.extend(register(&circuit, "E", 2 * ni, -1)?);
            ancillas.extend(register(&circuit, "C", -1, -1)?);
            for (a, b) in pairs(n, n)? {
                cases.push(Case::new(&[("A", a), ("B", b)], &[("C", ref_mul(a, b))]));
            }
        }
        Unit::Divider => {
            let (m, mi) = (p.m, p.m as i32);
            let lo = if p.with_remainder { -1 } else { 0 };
            let top = ni + mi;
            ancillas = register(&circuit, "D'", top, lo)?;
            ancillas.extend(register(&circuit, "E", top, 0)?);
            ancillas.extend(register(&circuit, "C", mi - 1, lo)?);
            if !p.zero_safe {
                ancillas.extend(register(&circuit, "C", top, top)?);
            }
            for (a, b) in pairs(n, m)? {
                let mut expected = Vec::new();
                if b > 0 {
                    let (q, r) = ref_divmod(a, b)?;
                    expected.push(("Q", q));
                    if p.with_remainder {
                        expected.push(("R", r));
                    }
                } else {
                    let pattern = ref_divzero_pattern(n, m, a, p.zero_safe)?;
                    expected.push(("Q", pattern.quotient.unsigned()));
                    if let (true, Some(r)) = (p.with_remainder, pattern.remainder) {
                        expected.push(("R", r.unsigned()));
                    }
                }
                cases.push(Case::new(&[("A", a), ("B", b)], &expected));
            }
        }
    }
    if cases.len() as u128 > MAX_CASES {
        return Err(Error::BoundsExceeded(format!("{} cases", cases.len())));
    }
    Ok(UnitCheck {
        unit,
        params: *p,
        circuit,
        cases,
        ancillas,
        preserved: preserved.into_iter().map(String::from).collect(),
    })
}

/// Basis index with each named input port loaded with its value.
pub fn load_inputs(c: &Circuit, inputs: &[(String, u128)]) -> Result<u128> {
    let mut index = 0u128;
    for (name, value) in inputs {
        let port = c
            .ports
            .iter()
            .find(|p| p.name == *name && p.role.is_input())
            .ok_or_else(|| Error::UnknownRegister(name.clone()))?;
        let width = port.width();
        if width < 128 && value >> width != 0 {
            return Err(Error::WidthOverflow {
                value: *value as i128,
                width,
            });
        }
        for (i, &q) in port.qubits.iter().rev().enumerate() {
            index |= ((value >> i) & 1) << q;
        }
    }
    Ok(index)
}

/// Output port by name.
pub fn output_port<'c>(c: &'c Circuit, name: &str) -> Option<&'c crate::ir::Port> {
    c.ports
        .iter()
        .find(|p| p.name == name && p.role.is_output())
}

/// Input port by name.
pub fn input_port<'c>(c: &'c Circuit, name: &str) -> Option<&'c crate::ir::Port> {
    c.ports
        .iter()
        .find(|p| p.name == name && matches!(p.role, PortRole::Input | PortRole::InOut))
}
