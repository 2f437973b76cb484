//! Tree parameters and the two child maps.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The pair `(u, v)` selecting a tree family: left child `w/(uw+1)`,
/// right child `w+v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UVParams {
    u: u64,
    v: u64,
}

impl UVParams {
    pub fn new(u: u64, v: u64) -> Result<Self> {
        if u == 0 || v == 0 {
            return Err(Error::InvalidParams { u, v });
        }
        Ok(UVParams { u, v })
    }

    /// The classical Calkin-Wilf parameters `(1, 1)`.
    pub const fn classic() -> Self {
        UVParams { u: 1, v: 1 }
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// `(v, u)`: the family paired with this one by reciprocal symmetry.
    pub fn swapped(&self) -> Self {
        UVParams { u: self.v, v: self.u }
    }

    pub fn is_classic(&self) -> bool {
        self.u == 1 && self.v == 1
    }

    pub(crate) fn u_big(&self) -> BigUint {
        BigUint::from(self.u)
    }

    pub(crate) fn v_big(&self) -> BigUint {
        BigUint::from(self.v)
    }
}

impl Default for UVParams {
    fn default() -> Self {
        UVParams::classic()
    }
}

impl fmt::Display for UVParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Left child `w/(uw+1)`. Always below `1/u`.
pub fn apply_left(w: &Rational, params: UVParams) -> Rational {
    let (a, b) = (w.numer(), w.denom());
    Rational::new(a.clone(), params.u_big() * a + b).expect("denominator is positive")
}

/// Right child `w+v`. Always above `v`.
pub fn apply_right(w: &Rational, params: UVParams) -> Rational {
    let (a, b) = (w.numer(), w.denom());
    Rational::new(a + params.v_big() * b, b.clone()).expect("denominator is positive")
}
