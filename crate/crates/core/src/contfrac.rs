//! Finite continued fractions of positive rationals.
//!
//! The canonical form `[q0, q1, ..., qr]` has `q0 >= 0`, `qi >= 1` for
//! `i >= 1`, and `qr >= 2` whenever `r >= 1`. The rational 1 is `[1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    coeffs: Vec<BigUint>,
}

impl ContinuedFraction {
    /// Euclidean expansion of a positive rational.
    pub fn of(w: &Rational) -> Result<Self> {
        w.require_positive()?;
        let mut a = w.numer().clone();
        let mut b = w.denom().clone();
        let mut coeffs = Vec::new();
        while !b.is_zero() {
            coeffs.push(&a / &b);
            let r = &a % &b;
            a = std::mem::replace(&mut b, r);
        }
        Ok(ContinuedFraction { coeffs })
    }

    /// Accepts only canonical coefficient sequences.
    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Result<Self> {
        if !is_canonical(&coeffs) {
            return Err(Error::NonCanonical(bracket(&coeffs)));
        }
        Ok(ContinuedFraction { coeffs })
    }

    /// Accepts any sequence denoting a positive rational and rewrites it in
    /// canonical form: interior zeros are merged (`[.., a, 0, b, ..]` is
    /// `[.., a+b, ..]`) and a trailing 1 is folded into its predecessor.
    pub fn normalize(coeffs: Vec<BigUint>) -> Result<Self> {
        let raw = bracket(&coeffs);
        if coeffs.is_empty() || coeffs.iter().all(Zero::is_zero) || coeffs.len() > 1 && coeffs.last().unwrap().is_zero()
        {
            return Err(Error::ParseContinuedFraction(raw));
        }
        let mut out: Vec<BigUint> = Vec::with_capacity(coeffs.len());
        let mut iter = coeffs.into_iter();
        out.push(iter.next().unwrap());
        let mut pending_merge = false;
        for q in iter {
            if pending_merge {
                *out.last_mut().unwrap() += q;
                pending_merge = false;
            } else if q.is_zero() {
                pending_merge = true;
            } else {
                out.push(q);
            }
        }
        fold_trailing_one(&mut out);
        Ok(ContinuedFraction { coeffs: out })
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Index of the last coefficient (`r` in `[q0, ..., qr]`).
    pub fn last_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> Rational {
        evaluate(&self.coeffs)
    }

    /// Continued fraction of the left child `w/(uw+1)`.
    pub fn left_child(&self, u: u64) -> ContinuedFraction {
        let mut out = Vec::with_capacity(self.coeffs.len() + 2);
        if self.coeffs[0].is_zero() {
            out.extend(self.coeffs.iter().cloned());
            out[1] += u;
        } else {
            out.push(BigUint::zero());
            out.push(BigUint::from(u));
            out.extend(self.coeffs.iter().cloned());
        }
        // [0, u, 1] (the left child of 1) is the only non-canonical case
        fold_trailing_one(&mut out);
        ContinuedFraction { coeffs: out }
    }

    /// Continued fraction of the right child `w+v`.
    pub fn right_child(&self, v: u64) -> ContinuedFraction {
        let mut out = self.coeffs.clone();
        out[0] += v;
        fold_trailing_one(&mut out);
        ContinuedFraction { coeffs: out }
    }

    /// The other expansion of the same value, ending in 1:
    /// `[.., qr]` becomes `[.., qr - 1, 1]`.
    pub fn long_form(&self) -> Vec<BigUint> {
        let mut out = self.coeffs.clone();
        *out.last_mut().unwrap() -= 1u32;
        out.push(BigUint::one());
        out
    }

    /// Lenient parse; see [`ContinuedFraction::normalize`].
    pub fn parse_lenient(s: &str) -> Result<Self> {
        ContinuedFraction::normalize(parse_coeffs(s)?)
    }
}

fn fold_trailing_one(coeffs: &mut Vec<BigUint>) {
    if coeffs.len() > 1 && coeffs.last().unwrap().is_one() {
        coeffs.pop();
        *coeffs.last_mut().unwrap() += 1u32;
    }
}

fn is_canonical(coeffs: &[BigUint]) -> bool {
    match coeffs {
        [] => false,
        [q0] => !q0.is_zero(),
        [_, rest @ ..] => rest.iter().all(|q| !q.is_zero()) && *rest.last().unwrap() >= BigUint::from(2u32),
    }
}

/// Value of a coefficient sequence with no zero after the first entry.
pub(crate) fn evaluate(coeffs: &[BigUint]) -> Rational {
    let (last, init) = coeffs.split_last().expect("nonempty");
    let mut num = last.clone();
    let mut den = BigUint::one();
    for q in init.iter().rev() {
        // q + den/num
        let next = q * &num + &den;
        den = num;
        num = next;
    }
    Rational::new(num, den).expect("positive denominator")
}

fn bracket(coeffs: &[BigUint]) -> String {
    let parts: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn parse_coeffs(s: &str) -> Result<Vec<BigUint>> {
    let bad = || Error::ParseContinuedFraction(s.to_string());
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(bad)?;
    inner
        .split(',')
        .map(|t| {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigUint>().map_err(|_| bad())
        })
        .collect()
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bracket(&self.coeffs))
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Strict parse: whitespace is ignored, non-canonical input is rejected.
    fn from_str(s: &str) -> Result<Self> {
        ContinuedFraction::from_coeffs(parse_coeffs(s)?)
    }
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
