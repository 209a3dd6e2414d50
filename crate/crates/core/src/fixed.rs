//! Two's-complement fixed-point formats described by `(signed, width, frac)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FixedPointFormat {
    signed: bool,
    width: u32,
    frac: u32,
}

impl FixedPointFormat {
    pub fn new(signed: bool, width: u32, frac: u32) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(Error::Argument(format!(
                "fixed-point width must be in 1..=64, got {width}"
            )));
        }
        if frac > width {
            return Err(Error::Argument(format!(
                "fractional bits {frac} exceed width {width}"
            )));
        }
        Ok(FixedPointFormat {
            signed,
            width,
            frac,
        })
    }

    /// Widest-precision `width`-bit format whose range covers `[lo, hi]`.
    pub fn fitting(lo: f64, hi: f64, width: u32) -> Result<Self> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Argument(format!(
                "cannot fit a format to [{lo}, {hi}]"
            )));
        }
        let signed = lo < 0.0;
        let magnitude_bits = if signed {
            width.saturating_sub(1)
        } else {
            width
        };
        for int_bits in 0..=magnitude_bits {
            let fmt = FixedPointFormat::new(signed, width, magnitude_bits - int_bits)?;
            if lo >= fmt.min_value() && hi <= fmt.max_value() {
                return Ok(fmt);
            }
        }
        Err(Error::Range(format!(
            "[{lo}, {hi}] does not fit any {width}-bit fixed-point format"
        )))
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn frac(&self) -> u32 {
        self.frac
    }

    /// Value of one least significant bit.
    pub fn lsb(&self) -> f64 {
        (-(self.frac as f64)).exp2()
    }

    pub fn min_word(&self) -> i128 {
        if self.signed {
            -(1i128 << (self.width - 1))
        } else {
            0
        }
    }

    pub fn max_word(&self) -> i128 {
        if self.signed {
            (1i128 << (self.width - 1)) - 1
        } else {
            (1i128 << self.width) - 1
        }
    }

    pub fn min_value(&self) -> f64 {
        self.to_real(self.min_word())
    }

    pub fn max_value(&self) -> f64 {
        self.to_real(self.max_word())
    }

    pub fn to_real(&self, word: i128) -> f64 {
        word as f64 * self.lsb()
    }

    pub fn contains_word(&self, word: i128) -> bool {
        word >= self.min_word() && word <= self.max_word()
    }

    /// Round-to-nearest-even quantization; overflow is an error.
    pub fn quantize(&self, x: f64) -> Result<i128> {
        let (word, saturated) = self.quantize_saturating(x);
        if saturated {
            Err(Error::Range(format!(
                "{x} is outside the range [{}, {}] of format {self}",
                self.min_value(),
                self.max_value()
            )))
        } else {
            Ok(word)
        }
    }

    /// Round-to-nearest-even quantization clamped to the representable range.
    /// The flag reports whether clamping happened.
    pub fn quantize_saturating(&self, x: f64) -> (i128, bool) {
        if x.is_nan() {
            return (0, true);
        }
        let scaled = (x * (self.frac as f64).exp2()).round_ties_even();
        let (lo, hi) = (self.min_word(), self.max_word());
        if scaled < lo as f64 {
            (lo, true)
        } else if scaled > hi as f64 {
            (hi, true)
        } else {
            (scaled as i128, false)
        }
    }

    /// Clamps a word into range, reporting whether it was out of range.
    pub fn saturate(&self, word: i128) -> (i128, bool) {
        if word < self.min_word() {
            (self.min_word(), true)
        } else if word > self.max_word() {
            (self.max_word(), true)
        } else {
            (word, false)
        }
    }

    /// Raw `width`-bit two's-complement encoding of a word.
    pub fn encode(&self, word: i128) -> u64 {
        let mask: u128 = if self.width == 64 {
            u64::MAX as u128
        } else {
            (1u128 << self.width) - 1
        };
        ((word as u128) & mask) as u64
    }

    /// Inverse of [`FixedPointFormat::encode`].
    pub fn decode(&self, bits: u64) -> i128 {
        let raw = bits as i128;
        if self.signed && self.width < 128 && (raw >> (self.width - 1)) & 1 == 1 {
            raw - (1i128 << self.width)
        } else {
            raw
        }
    }

    /// Number of hex digits needed for one encoded word.
    pub fn hex_digits(&self) -> usize {
        self.width.div_ceil(4) as usize
    }
}

impl fmt::Display for FixedPointFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", u8::from(self.signed), self.width, self.frac)
    }
}

impl FromStr for FixedPointFormat {
    type Err = Error;

    /// Parses `S:W:F`, e.g. `1:32:30`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("expected a fixed-point format S:W:F, got `{s}`"));
        let [sign, width, frac] = parts.as_slice() else {
            return Err(bad());
        };
        let signed = match *sign {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        let width = width.parse().map_err(|_| bad())?;
        let frac = frac.parse().map_err(|_| bad())?;
        FixedPointFormat::new(signed, width, frac)
    }
}

impl TryFrom<String> for FixedPointFormat {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FixedPointFormat> for String {
    fn from(f: FixedPointFormat) -> String {
        f.to_string()
    }
}

/// `value / 2^shift` rounded to nearest, ties to even.
pub(crate) fn shift_round_even(value: i128, shift: u32) -> i128 {
    if shift == 0 {
        return value;
    }
    let floor = value >> shift;
    let rem = value - (floor << shift);
    let half = 1i128 << (shift - 1);
    if rem > half || (rem == half && floor & 1 == 1) {
        floor + 1
    } else {
        floor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ranges() {
        let q = FixedPointFormat::new(true, 8, 4).unwrap();
        assert_eq!(q.min_word(), -128);
        assert_eq!(q.max_word(), 127);
        assert_eq!(q.min_value(), -8.0);
        assert_eq!(q.max_value(), 7.9375);
        let u = FixedPointFormat::new(false, 8, 4).unwrap();
        assert_eq!(u.max_value(), 15.9375);
        let full = FixedPointFormat::new(true, 32, 31).unwrap();
        assert_eq!(full.min_value(), -1.0);
    }

    #[test]
    fn quantize_rounds_half_to_even() {
        let q = FixedPointFormat::new(true, 8, 0).unwrap();
        assert_eq!(q.quantize(2.5).unwrap(), 2);
        assert_eq!(q.quantize(3.5).unwrap(), 4);
        assert_eq!(q.quantize(-2.5).unwrap(), -2);
        assert!(matches!(q.quantize(128.0), Err(Error::Range(_))));
        assert_eq!(q.quantize_saturating(1e9), (127, true));
        assert_eq!(q.quantize_saturating(-1e9), (-128, true));
    }

    #[test]
    fn parse_and_display() {
        let f: FixedPointFormat = "1:32:30".parse().unwrap();
        assert!(f.signed());
        assert_eq!((f.width(), f.frac()), (32, 30));
        assert_eq!(f.to_string(), "1:32:30");
        assert!("2:32:30".parse::<FixedPointFormat>().is_err());
        assert!("1:32".parse::<FixedPointFormat>().is_err());
        assert!("1:8:9".parse::<FixedPointFormat>().is_err());
        assert!("0:65:0".parse::<FixedPointFormat>().is_err());
    }

    #[test]
    fn fitting_formats() {
        assert_eq!(
            FixedPointFormat::fitting(-1.5, 1.5, 32)
                .unwrap()
                .to_string(),
            "1:32:30"
        );
        assert_eq!(
            FixedPointFormat::fitting(0.625, 15.625, 32)
                .unwrap()
                .to_string(),
            "0:32:28"
        );
        assert_eq!(
            FixedPointFormat::fitting(0.0, 1.0, 8).unwrap().to_string(),
            "0:8:7"
        );
        assert_eq!(
            FixedPointFormat::fitting(-1.0, 0.5, 32)
                .unwrap()
                .to_string(),
            "1:32:31"
        );
        assert!(FixedPointFormat::fitting(0.0, 1e30, 32).is_err());
    }

    #[test]
    fn encoding() {
        let u = FixedPointFormat::new(false, 8, 4).unwrap();
        assert_eq!(u.encode(u.quantize(1.0).unwrap()), 0x10);
        let s = FixedPointFormat::new(true, 8, 4).unwrap();
        assert_eq!(s.encode(-1), 0xFF);
        assert_eq!(s.decode(0xFF), -1);
        assert_eq!(s.hex_digits(), 2);
        assert_eq!(FixedPointFormat::new(true, 10, 4).unwrap().hex_digits(), 3);
    }

    #[test]
    fn rounding_shift() {
        assert_eq!(shift_round_even(5, 1), 2); // 2.5 -> 2
        assert_eq!(shift_round_even(7, 1), 4); // 3.5 -> 4
        assert_eq!(shift_round_even(-5, 1), -2); // -2.5 -> -2
        assert_eq!(shift_round_even(-7, 1), -4);
        assert_eq!(shift_round_even(13, 2), 3); // 3.25 -> 3
        assert_eq!(shift_round_even(14, 2), 4); // 3.5 -> 4
    }

    proptest! {
        #[test]
        fn quantization_error_within_half_lsb(x in -100.0f64..100.0, frac in 0u32..20) {
            let f = FixedPointFormat::new(true, 40, frac).unwrap();
            let w = f.quantize(x).unwrap();
            prop_assert!((f.to_real(w) - x).abs() <= 0.5 * f.lsb());
        }

        #[test]
        fn encode_decode_inverse(word in -(1i64 << 31)..(1i64 << 31)) {
            let f = FixedPointFormat::new(true, 32, 10).unwrap();
            prop_assert_eq!(f.decode(f.encode(word as i128)), word as i128);
        }
    }
}
