//! Classical reference arithmetic, computed with machine integers only so
//! that circuit and oracle are independent computations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed-width bit string, most-significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitVec {
    bits: Vec<bool>,
}

impl BitVec {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() || bits.len() > 127 {
            return Err(Error::InvalidParameter(format!(
                "bit width {} out of range",
                bits.len()
            )));
        }
        Ok(Self { bits })
    }

    /// Low `width` bits of `value`.
    pub fn from_unsigned(value: u128, width: usize) -> Result<Self> {
        if width == 0 || width > 127 {
            return Err(Error::InvalidParameter(format!(
                "bit width {width} out of range"
            )));
        }
        if value >> width != 0 {
            return Err(Error::WidthOverflow {
                value: value as i128,
                width,
            });
        }
        Ok(Self {
            bits: (0..width).rev().map(|i| (value >> i) & 1 == 1).collect(),
        })
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn unsigned(&self) -> u128 {
        self.bits
            .iter()
            .fold(0, |acc, &b| (acc << 1) | u128::from(b))
    }
}

impl std::fmt::Display for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("0b")?;
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Two's-complement value: the leading bit weighs `-2^{w-1}`.
pub fn twos_value(v: &BitVec) -> i128 {
    let w = v.width();
    let magnitude = (v.unsigned() & ((1u128 << (w - 1)) - 1)) as i128;
    if v.bits[0] {
        magnitude - (1i128 << (w - 1))
    } else {
        magnitude
    }
}

/// Two's-complement encoding of `value` in `width` bits.
pub fn encode_twos(value: i128, width: usize) -> Result<BitVec> {
    if width == 0 || width > 127 {
        return Err(Error::InvalidParameter(format!(
            "bit width {width} out of range"
        )));
    }
    let half = 1i128 << (width - 1);
    if value < -half || value >= half {
        return Err(Error::WidthOverflow { value, width });
    }
    let pattern = value.rem_euclid(half << 1) as u128;
    BitVec::from_unsigned(pattern, width)
}

pub fn ref_add(a: u128, b: u128) -> u128 {
    a + b
}

pub fn ref_sub(a: u128, b: u128) -> i128 {
    a as i128 - b as i128
}

pub fn ref_mul(a: u128, b: u128) -> u128 {
    a * b
}

/// `(a / b, a % b)`; zero divisors are rejected.
pub fn ref_divmod(a: u128, b: u128) -> Result<(u128, u128)> {
    if b == 0 {
        return Err(Error::InvalidParameter("division by zero".into()));
    }
    Ok((a / b, a % b))
}

/// Expected divider registers for a zero divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivZeroPattern {
    pub quotient: BitVec,
    /// Only stated for the plain divider.
    pub remainder: Option<BitVec>,
}

/// Output pattern claimed for an `n`-bit dividend and an `m`-bit zero
/// divisor: quotient `1 ā_{n-1} … ā_1` and remainder `0…01` (width `m`);
/// the zero-safe build has quotient `1 0 ā_{n-1} … ā_1`.
pub fn ref_divzero_pattern(
    n: usize,
    m: usize,
    dividend: u128,
    zero_safe: bool,
) -> Result<DivZeroPattern> {
    if n == 0 || m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= M <= N, got N={n}, M={m}"
        )));
    }
    if dividend >> n != 0 {
        return Err(Error::WidthOverflow {
            value: dividend as i128,
            width: n,
        });
    }
    let mut bits = vec![true];
    if zero_safe {
        bits.push(false);
    }
    bits.extend((1..n).rev().map(|i| (dividend >> i) & 1 == 0));
    let quotient = BitVec::new(bits)?;
    let remainder = if zero_safe {
        None
    } else {
        Some(BitVec::from_unsigned(1, m)?)
    };
    Ok(DivZeroPattern {
        quotient,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        BitVec::new(s.chars().map(|c| c == '1').collect()).unwrap()
    }

    #[test]
    fn twos_value_examples() {
        assert_eq!(twos_value(&bv("000")), 0);
        assert_eq!(twos_value(&bv("100")), -4);
        assert_eq!(twos_value(&bv("101")), -3);
        assert_eq!(twos_value(&bv("1")), -1);
        assert_eq!(twos_value(&bv("0111")), 7);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_twos(0, 4).unwrap(), bv("0000"));
        assert_eq!(encode_twos(-1, 4).unwrap(), bv("1111"));
        assert_eq!(encode_twos(-8, 4).unwrap(), bv("1000"));
        assert!(encode_twos(8, 4).is_err());
        assert!(encode_twos(-9, 4).is_err());
    }

    #[test]
    fn exhaustive_round_trips() {
        for w in 1..=8usize {
            for p in 0..(1u128 << w) {
                let v = BitVec::from_unsigned(p, w).unwrap();
                assert_eq!(encode_twos(twos_value(&v), w).unwrap(), v);
            }
            let half = 1i128 << (w - 1);
            for x in -half..half {
                assert_eq!(twos_value(&encode_twos(x, w).unwrap()), x);
            }
        }
    }

    #[test]
    fn reference_arithmetic() {
        assert_eq!(ref_add(5, 3), 8);
        assert_eq!(ref_sub(2, 5), -3);
        assert_eq!(ref_mul(6, 7), 42);
        assert_eq!(ref_divmod(7, 3).unwrap(), (2, 1));
        assert!(ref_divmod(7, 0).is_err());
    }

    #[test]
    fn divzero_patterns() {
        // 1, then the complements of a_2 = 1 and a_1 = 0.
        let p = ref_divzero_pattern(3, 2, 0b101, false).unwrap();
        assert_eq!(p.quotient, bv("101"));
        assert_eq!(
            ref_divzero_pattern(3, 2, 0b001, false).unwrap().quotient,
            bv("111")
        );
        assert_eq!(p.remainder, Some(bv("01")));
        assert_eq!(
            ref_divzero_pattern(2, 2, 0b11, true).unwrap().quotient,
            bv("100")
        );
        let p = ref_divzero_pattern(1, 1, 1, false).unwrap();
        assert_eq!((p.quotient, p.remainder), (bv("1"), Some(bv("1"))));
        assert!(ref_divzero_pattern(2, 3, 0, false).is_err());
        assert!(ref_divzero_pattern(2, 1, 4, false).is_err());
    }

    proptest! {
        #[test]
        fn negation_is_flip_plus_one(w in 2usize..=16, x in any::<i64>()) {
            let half = 1i128 << (w - 1);
            let x = (x as i128).rem_euclid(half);
            let pos = encode_twos(x, w).unwrap().unsigned();
            let flipped = !pos & ((1u128 << w) - 1);
            let neg = encode_twos(-x, w).unwrap().unsigned();
            prop_assert_eq!(neg, (flipped + 1) & ((1u128 << w) - 1));
        }

        #[test]
        fn divmod_identity(a in 0u128..1 << 20, b in 1u128..1 << 10) {
            let (q, r) = ref_divmod(a, b).unwrap();
            prop_assert_eq!(q * b + r, a);
            prop_assert!(r < b);
        }
    }
}
