//! Position matrices, the mirror map on them, and row-level checkers for the
//! three product identities between a row and its reversal.
//!
//! The vertex at `(n, i)` of `T^(u,v)(z)` is `(az+b)/(cz+d)` for a word
//! matrix `[[a, b], [c, d]]` that does not depend on `z`. The vertex at the
//! mirrored position `(n, 2^n+1-i)` has matrix `[[d, cv/u], [bu/v, a]]`.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{apply_left, apply_right, UVParams};
use crate::error::{Error, Result};
use crate::matrix::{word_to_matrix, Mat2};
use crate::rational::Rational;
use crate::tree::Tree;
use crate::word::{index_to_word, Position};

pub fn position_matrix(pos: &Position, params: UVParams) -> Mat2 {
    word_to_matrix(&index_to_word(pos), params)
}

/// `[[a, b], [c, d]] -> [[d, cv/u], [bu/v, a]]`, defined on word matrices
/// (where `u | c` and `v | b`).
pub fn mirror_matrix(m: &Mat2, params: UVParams) -> Result<Mat2> {
    let u = params.u_big();
    let v = params.v_big();
    if !m.c().is_multiple_of(&u) || !m.b().is_multiple_of(&v) {
        return Err(Error::NotWordMatrix(m.to_string(), params.u(), params.v()));
    }
    // determinant: da - (cv/u)(bu/v) = ad - bc = 1
    Ok(Mat2::from_entries_unchecked(
        m.d().clone(),
        m.c() / &u * &v,
        m.b() / &v * &u,
        m.a().clone(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `c_z(n,i) * c_z(n,2^n+1-i) = 1`
    Symmetry,
    /// `c_z(n,i) * c_{(v/u)/z}(n,2^n+1-i) = v/u`
    SkewSymmetry,
    /// `c_z^(u,v)(n,i) * c_{1/z}^(v,u)(n,2^n+1-i) = 1`
    Nathanson,
}

/// First index at which a product identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: u64,
    pub left: Rational,
    pub right: Rational,
    pub product: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub z: Rational,
    pub u: u64,
    pub v: u64,
    pub n: u64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn check_rows(
    identity: Identity,
    z: &Rational,
    params: UVParams,
    n: u64,
    first: (Rational, UVParams),
    second: (Rational, UVParams),
    target: &Rational,
) -> Result<IdentityCheck> {
    let t1 = Tree::new(first.0, first.1)?;
    let t2 = Tree::new(second.0, second.1)?;
    t1.check_row(n)?;
    let (left, right) = rayon::join(|| t1.row(n), || t2.row(n));
    let (left, right) = (left?, right?);
    let witness = left
        .iter()
        .zip(right.iter().rev())
        .enumerate()
        .map(|(k, (a, b))| (k, a, b, a * b))
        .find(|(_, _, _, prod)| prod != target)
        .map(|(k, a, b, product)| Witness {
            i: k as u64 + 1,
            left: a.clone(),
            right: b.clone(),
            product,
        });
    Ok(IdentityCheck {
        identity,
        z: z.clone(),
        u: params.u(),
        v: params.v(),
        n,
        holds: witness.is_none(),
        witness,
    })
}

/// Checks `c(n,i) * c(n,2^n+1-i) = 1` across row `n` of `T^(u,v)(z)`.
pub fn check_symmetry_formula(z: &Rational, params: UVParams, n: u64) -> Result<IdentityCheck> {
    z.require_positive()?;
    check_rows(
        Identity::Symmetry,
        z,
        params,
        n,
        (z.clone(), params),
        (z.clone(), params),
        &Rational::one(),
    )
}

/// Pairs `T^(u,v)(z)` with `T^(u,v)((v/u)/z)`; every product should be `v/u`.
pub fn check_skew_symmetry(z: &Rational, params: UVParams, n: u64) -> Result<IdentityCheck> {
    z.require_positive()?;
    let ratio = Rational::new(params.v(), params.u())?;
    let partner = &ratio / z;
    check_rows(
        Identity::SkewSymmetry,
        z,
        params,
        n,
        (z.clone(), params),
        (partner, params),
        &ratio,
    )
}

/// Pairs `T^(u,v)(z)` with `T^(v,u)(1/z)`; every product should be 1.
pub fn check_nathanson(z: &Rational, params: UVParams, n: u64) -> Result<IdentityCheck> {
    z.require_positive()?;
    check_rows(
        Identity::Nathanson,
        z,
        params,
        n,
        (z.clone(), params),
        (z.recip()?, params.swapped()),
        &Rational::one(),
    )
}

/// Checks that conjugating by `x -> 1/x` exchanges the two child maps with
/// step `k`: `1/L_k(1/x) = R_k(x)` and `1/R_k(1/x) = L_k(x)`.
pub fn sigma_conjugation_check(x: &Rational, k: u64) -> Result<bool> {
    x.require_positive()?;
    let p = UVParams::new(k, k)?;
    let inv = x.recip()?;
    let left_conj = apply_left(&inv, p).recip()?;
    let right_conj = apply_right(&inv, p).recip()?;
    Ok(left_conj == apply_right(x, p) && right_conj == apply_left(x, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(u: u64, v: u64) -> UVParams {
        UVParams::new(u, v).unwrap()
    }

    fn pos(n: u64, i: u32) -> Position {
        Position::new(n, i).unwrap()
    }

    fn m(a: u32, b: u32, c: u32, d: u32) -> Mat2 {
        Mat2::new(a, b, c, d).unwrap()
    }

    #[test]
    fn position_matrix_examples() {
        assert_eq!(position_matrix(&Position::root(), p(2, 3)), Mat2::identity());
        assert_eq!(position_matrix(&pos(1, 1), p(4, 3)), Mat2::left(4));
        let word: crate::word::PathWord = "RLLRRLR".parse().unwrap();
        let at = crate::word::word_to_index(&word);
        assert_eq!(position_matrix(&at, p(2, 3)), m(187, 606, 54, 175));
    }

    #[test]
    fn mirror_examples() {
        let q = p(2, 3);
        assert_eq!(mirror_matrix(&Mat2::left(2), q).unwrap(), Mat2::right(3));
        assert_eq!(mirror_matrix(&Mat2::identity(), q).unwrap(), Mat2::identity());
        assert_eq!(mirror_matrix(&m(1, 0, 4, 1), q).unwrap(), m(1, 6, 0, 1));
        assert!(matches!(
            mirror_matrix(&m(1, 0, 3, 1), q),
            Err(Error::NotWordMatrix(..))
        ));
    }

    #[test]
    fn symmetry_formula_examples() {
        let c = check_symmetry_formula(&r("1"), p(1, 1), 3).unwrap();
        assert!(c.holds);
        let c = check_symmetry_formula(&r("5/2"), p(2, 3), 2).unwrap();
        assert!(!c.holds);
        let w = c.witness.unwrap();
        assert_eq!((w.i, w.product), (1, r("85/44")));
        for n in 0..=6 {
            assert!(check_symmetry_formula(&r("1"), p(2, 2), n).unwrap().holds);
        }
    }

    #[test]
    fn skew_and_nathanson_on_row_two() {
        assert!(check_skew_symmetry(&r("5/2"), p(2, 3), 2).unwrap().holds);
        assert!(check_nathanson(&r("5/2"), p(2, 3), 2).unwrap().holds);
        // skew partner of 5/2 under (2,3) is 3/5
        assert_eq!(&Rational::new(3u32, 2u32).unwrap() / &r("5/2"), r("3/5"));
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma_conjugation_check(&r("3"), 2).unwrap());
        assert!(sigma_conjugation_check(&r("1"), 1).unwrap());
        assert!(sigma_conjugation_check(&r("17/5"), 7).unwrap());
    }

    #[test]
    fn check_record_serializes() {
        let c = check_symmetry_formula(&r("5/2"), p(2, 3), 2).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"identity":"symmetry","z":"5/2","u":2,"v":3,"n":2,"holds":false,"witness":{"i":1,"left":"5/22","right":"17/2","product":"85/44"}}"#
        );
    }
}
