//! Eventually periodic elements of the `p`-odometer.
//!
//! Digits are stored least significant first, so `δ_0` is the first digit
//! and the value is `Σ δ_i p^i`. Addition carries to the right.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OdometerDigits {
    base: u32,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl OdometerDigits {
    /// Validates and brings the digits to canonical form (minimal period,
    /// then minimal preperiod).
    pub fn new(base: u32, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::LengthTooShort(base as usize));
        }
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if let Some(&d) = preperiod.iter().chain(&period).find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit: d, base });
        }
        let (preperiod, period) = canonical_form(preperiod, period);
        Ok(OdometerDigits {
            base,
            preperiod,
            period,
        })
    }

    pub fn zero(base: u32) -> Self {
        OdometerDigits {
            base,
            preperiod: Vec::new(),
            period: vec![0],
        }
    }

    /// `-1`, all digits `p-1`.
    pub fn minus_one(base: u32) -> Self {
        OdometerDigits {
            base,
            preperiod: Vec::new(),
            period: vec![base - 1],
        }
    }

    /// A nonnegative integer.
    pub fn from_integer(base: u32, mut n: u64) -> Self {
        let mut pre = Vec::new();
        while n > 0 {
            pre.push((n % base as u64) as u32);
            n /= base as u64;
        }
        OdometerDigits::new(base, pre, vec![0]).expect("digits in range")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn digit(&self, i: usize) -> u32 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn first(&self, k: usize) -> Vec<u32> {
        (0..k).map(|i| self.digit(i)).collect()
    }

    /// Eventually zero: a nonnegative integer.
    pub fn is_nonnegative_integer(&self) -> bool {
        self.period == [0]
    }

    /// Eventually `p-1`: a negative integer.
    pub fn is_negative_integer(&self) -> bool {
        self.period == [self.base - 1]
    }

    /// `T_0`: adds one with carry.
    pub fn successor(&self) -> Self {
        let top = self.base - 1;
        let Some(star) =
            (0..self.preperiod.len() + self.period.len()).find(|&i| self.digit(i) != top)
        else {
            return OdometerDigits::zero(self.base);
        };
        let (mut pre, per) = unroll(&self.preperiod, &self.period, star + 1);
        for d in pre.iter_mut().take(star) {
            *d = 0;
        }
        pre[star] += 1;
        let (preperiod, period) = canonical_form(pre, per);
        OdometerDigits {
            base: self.base,
            preperiod,
            period,
        }
    }
}

/// Extends the preperiod to at least `len` digits by rotating the period.
pub(crate) fn unroll<T: Clone>(pre: &[T], per: &[T], len: usize) -> (Vec<T>, Vec<T>) {
    let mut pre = pre.to_vec();
    let mut per = per.to_vec();
    while pre.len() < len {
        pre.push(per[0].clone());
        per.rotate_left(1);
    }
    (pre, per)
}

pub(crate) fn minimal_period<T: PartialEq>(per: &[T]) -> usize {
    let n = per.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| per[i] == per[i - d]))
        .unwrap_or(n)
}

fn canonical_form<T: PartialEq + Clone>(mut pre: Vec<T>, mut per: Vec<T>) -> (Vec<T>, Vec<T>) {
    per.truncate(minimal_period(&per));
    while let Some(last) = pre.last() {
        if *last != per[per.len() - 1] {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}
