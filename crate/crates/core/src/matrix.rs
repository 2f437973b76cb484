//! 2x2 nonnegative integer matrices of determinant 1, acting on positive
//! rationals as linear fractional transformations `z -> (az+b)/(cz+d)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::UVParams;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{Move, PathWord};

/// `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    a: BigUint,
    b: BigUint,
    c: BigUint,
    d: BigUint,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigUint>,
        b: impl Into<BigUint>,
        c: impl Into<BigUint>,
        d: impl Into<BigUint>,
    ) -> Result<Self> {
        let m = Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        if &m.a * &m.d != &m.b * &m.c + 1u32 {
            return Err(Error::NotUnimodular {
                a: m.a.to_string(),
                b: m.b.to_string(),
                c: m.c.to_string(),
                d: m.d.to_string(),
            });
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mat2 {
            a: BigUint::one(),
            b: BigUint::zero(),
            c: BigUint::zero(),
            d: BigUint::one(),
        }
    }

    /// `L_u = [[1, 0], [u, 1]]`.
    pub fn left(u: u64) -> Self {
        Mat2 {
            c: BigUint::from(u),
            ..Mat2::identity()
        }
    }

    /// `R_v = [[1, v], [0, 1]]`.
    pub fn right(v: u64) -> Self {
        Mat2 {
            b: BigUint::from(v),
            ..Mat2::identity()
        }
    }

    pub fn generator(m: Move, params: UVParams) -> Self {
        match m {
            Move::L => Mat2::left(params.u()),
            Move::R => Mat2::right(params.v()),
        }
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn c(&self) -> &BigUint {
        &self.c
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn entries(&self) -> [&BigUint; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn pow(&self, k: u64) -> Mat2 {
        let mut acc = Mat2::identity();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `(az+b)/(cz+d)` for positive `z`.
    pub fn apply(&self, z: &Rational) -> Rational {
        let (p, q) = (z.numer(), z.denom());
        Rational::new(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
            .expect("cz+d is positive for det-1 nonnegative matrices")
    }

    pub(crate) fn from_entries_unchecked(a: BigUint, b: BigUint, c: BigUint, d: BigUint) -> Mat2 {
        Mat2 { a, b, c, d }
    }
}

/// Product of the generators of `word`, last move leftmost, so that
/// applying the result to a root lands on the vertex the word reaches.
pub fn word_to_matrix(word: &PathWord, params: UVParams) -> Mat2 {
    word.runs().iter().fold(Mat2::identity(), |acc, &(m, k)| {
        Mat2::generator(m, params).pow(k).mul(&acc)
    })
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: u32, b: u32, c: u32, d: u32) -> Mat2 {
        Mat2::new(a, b, c, d).unwrap()
    }

    #[test]
    fn determinant_is_enforced() {
        assert!(Mat2::new(1u32, 1u32, 1u32, 1u32).is_err());
        assert!(Mat2::new(2u32, 1u32, 1u32, 1u32).is_ok());
    }

    #[test]
    fn products() {
        assert_eq!(Mat2::left(1).mul(&Mat2::left(1)), Mat2::left(2));
        let x = m(187, 606, 54, 175);
        assert_eq!(Mat2::identity().mul(&x), x);
        assert_eq!(Mat2::right(3).mul(&Mat2::left(2)), m(7, 3, 2, 1));
        assert_eq!(Mat2::right(1).pow(5), Mat2::right(5));
    }

    #[test]
    fn apply_examples() {
        let z: Rational = "5/2".parse().unwrap();
        assert_eq!(m(187, 606, 54, 175).apply(&z).to_string(), "2147/620");
        assert_eq!(Mat2::identity().apply(&z), z);
        assert_eq!(m(1, 0, 2, 1).apply(&z).to_string(), "5/12");
    }

    #[test]
    fn word_for_2147_620() {
        let p = UVParams::new(2, 3).unwrap();
        // operator word R_v L_u R_v^2 L_u^2 R_v, read last-to-first
        let w: PathWord = "RLLRRLR".parse().unwrap();
        assert_eq!(word_to_matrix(&w, p), m(187, 606, 54, 175));
        assert_eq!(word_to_matrix(&PathWord::new(), p), Mat2::identity());
        assert_eq!(word_to_matrix(&"L".parse().unwrap(), p), m(1, 0, 2, 1));
    }
}
