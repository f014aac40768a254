//! Exact numbers for the built-in numeric sorts.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

/// An exact rational number. Decimal literals such as `0.5` or `2.0` are
/// represented without rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Number(Ratio<i128>);

impl Number {
    pub fn from_integer(n: i128) -> Self {
        Number(Ratio::from_integer(n))
    }

    pub fn new(numer: i128, denom: i128) -> Option<Self> {
        if denom == 0 {
            None
        } else {
            Some(Number(Ratio::new(numer, denom)))
        }
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_natural(&self) -> bool {
        self.is_integer() && !self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0.checked_add(&other.0).map(Number)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.checked_sub(&other.0).map(Number)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        self.0.checked_mul(&other.0).map(Number)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.0.is_zero() {
            return None;
        }
        self.0.checked_div(&other.0).map(Number)
    }

    pub fn checked_neg(&self) -> Option<Self> {
        self.0.numer().checked_neg().map(|n| Number(Ratio::new_raw(n, *self.0.denom())))
    }

    /// Canonical lexeme: integers print without a fractional part, terminating
    /// decimals print as decimals, anything else as `p/q`.
    pub fn lexeme(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = *self.0.numer();
        let denom = *self.0.denom();
        if denom == 1 {
            return write!(f, "{numer}");
        }
        // A reduced fraction has a terminating decimal expansion iff the
        // denominator has no prime factors besides 2 and 5.
        let mut rest = denom;
        let mut twos = 0u32;
        let mut fives = 0u32;
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return write!(f, "{numer}/{denom}");
        }
        let digits = twos.max(fives);
        let scale = 10i128.pow(digits);
        let scaled = numer * (scale / denom);
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        let int_part = abs / scale as u128;
        let frac_part = abs % scale as u128;
        write!(f, "{sign}{int_part}.{frac_part:0width$}", width = digits as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not a numeric literal: {0}")]
pub struct ParseNumberError(pub String);

impl FromStr for Number {
    type Err = ParseNumberError;

    /// Accepts `-12`, `3.25` and `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseNumberError(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| err())?;
            let d: i128 = d.trim().parse().map_err(|_| err())?;
            return Number::new(n, d).ok_or_else(err);
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (int_digits, frac_digits) = match body.split_once('.') {
            Some((i, fr)) => (i, fr),
            None => (body, ""),
        };
        if int_digits.is_empty()
            || !int_digits.bytes().all(|b| b.is_ascii_digit())
            || !frac_digits.bytes().all(|b| b.is_ascii_digit())
            || (body.contains('.') && frac_digits.is_empty())
        {
            return Err(err());
        }
        let mut numer: i128 = 0;
        for b in int_digits.bytes().chain(frac_digits.bytes()) {
            numer = numer
                .checked_mul(10)
                .and_then(|n| n.checked_add((b - b'0') as i128))
                .ok_or_else(err)?;
        }
        let denom = 10i128
            .checked_pow(frac_digits.len() as u32)
            .ok_or_else(err)?;
        if negative {
            numer = -numer;
        }
        let g = numer.gcd(&denom);
        Ok(Number(Ratio::new_raw(numer / g, denom / g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let cases = [("2", "2"), ("2.0", "2"), ("-0.50", "-0.5"), ("1/3", "1/3"), ("0.0", "0"), ("-1.25", "-1.25")];
        for (input, printed) in cases {
            let n: Number = input.parse().unwrap();
            assert_eq!(n.to_string(), printed, "{input}");
        }
        assert!("x".parse::<Number>().is_err());
        assert!("1.".parse::<Number>().is_err());
        assert!("-".parse::<Number>().is_err());
        assert!("1/0".parse::<Number>().is_err());
    }

    #[test]
    fn arithmetic() {
        let two = Number::from_integer(2);
        assert_eq!(two.checked_div(&two), Some(Number::from_integer(1)));
        assert_eq!(two.checked_div(&Number::from_integer(0)), None);
        assert!(two.checked_div(&two).unwrap().is_integer());
        let half = Number::new(1, 2).unwrap();
        assert!(!half.is_integer());
        assert_eq!(half.checked_neg().unwrap().to_string(), "-0.5");
    }
}
