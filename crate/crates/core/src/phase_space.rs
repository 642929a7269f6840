//! Phase-space labels of Pauli products and their symplectic form.
//!
//! A Pauli product on the infinite chain is labeled, up to phase, by a pair
//! of Laurent polynomials: the X-part and the Z-part. Site `k` carries X when
//! only the X-part has `u^k`, Z when only the Z-part has it, and Y when both
//! do.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::{Degree, LaurentPoly};

/// Single-site Pauli letter; `I` is written `1` in text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// `(x, z)` components.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '1' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => '1',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObservableParseError {
    #[error("observable has no letters")]
    Empty,
    #[error("illegal Pauli letter '{letter}' at position {position} (expected 1, X, Y or Z)")]
    IllegalLetter { letter: char, position: usize },
    #[error("invalid site offset '{0}'")]
    BadOffset(String),
}

/// Phase-space vector `(xi_plus, xi_minus)`: the X- and Z-components of a
/// Pauli product with its phase dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhaseVector {
    pub xi_plus: LaurentPoly,
    pub xi_minus: LaurentPoly,
}

impl PhaseVector {
    pub fn new(xi_plus: LaurentPoly, xi_minus: LaurentPoly) -> Self {
        Self { xi_plus, xi_minus }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// Single-site Pauli at `site`.
    pub fn single(letter: Pauli, site: i64) -> Self {
        let (x, z) = letter.bits();
        let mono = |on: bool| {
            if on {
                LaurentPoly::monomial(site)
            } else {
                LaurentPoly::zero()
            }
        };
        Self::new(mono(x), mono(z))
    }

    pub fn is_identity(&self) -> bool {
        self.xi_plus.is_zero() && self.xi_minus.is_zero()
    }

    /// Reads a letter string whose first letter sits at `offset`.
    pub fn from_letters(letters: &str, offset: i64) -> Result<Self, ObservableParseError> {
        if letters.is_empty() {
            return Err(ObservableParseError::Empty);
        }
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        for (position, letter) in letters.chars().enumerate() {
            let pauli = Pauli::from_char(letter)
                .ok_or(ObservableParseError::IllegalLetter { letter, position })?;
            let site = offset + position as i64;
            let (x, z) = pauli.bits();
            if x {
                xs.push(site);
            }
            if z {
                zs.push(site);
            }
        }
        Ok(Self::new(
            LaurentPoly::from_exponents(xs),
            LaurentPoly::from_exponents(zs),
        ))
    }

    /// Minimal letter string and the site of its first letter; the identity
    /// is `("1", 0)`.
    pub fn to_letters(&self) -> (String, i64) {
        let Some((lo, hi)) = self.support() else {
            return ("1".to_string(), 0);
        };
        let letters = (lo..=hi).map(|k| self.letter_at(k).to_char()).collect();
        (letters, lo)
    }

    pub fn letter_at(&self, site: i64) -> Pauli {
        Pauli::from_bits(self.xi_plus.coeff(site), self.xi_minus.coeff(site))
    }

    /// Smallest site interval containing every non-identity letter.
    pub fn support(&self) -> Option<(i64, i64)> {
        match (self.xi_plus.span(), self.xi_minus.span()) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
        }
    }

    /// Largest exponent over both components.
    pub fn dg(&self) -> Degree {
        self.xi_plus.dg().max(self.xi_minus.dg())
    }

    /// Componentwise sum: the label of the operator product, phase dropped.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            &self.xi_plus + &other.xi_plus,
            &self.xi_minus + &other.xi_minus,
        )
    }

    /// Translation by `k` sites.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.xi_plus.shift(k), self.xi_minus.shift(k))
    }

    /// Keeps only sites in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        Self::new(
            self.xi_plus.restrict(lo, hi),
            self.xi_minus.restrict(lo, hi),
        )
    }
}

/// Symplectic form: `false` iff the labeled operators commute.
pub fn symplectic_form(a: &PhaseVector, b: &PhaseVector) -> bool {
    a.xi_plus.dot(&b.xi_minus) ^ a.xi_minus.dot(&b.xi_plus)
}

pub fn pauli_to_phase_space(
    letters: &str,
    offset: i64,
) -> Result<PhaseVector, ObservableParseError> {
    PhaseVector::from_letters(letters, offset)
}

pub fn phase_space_to_pauli(v: &PhaseVector) -> (String, i64) {
    v.to_letters()
}

pub fn compose_observables(a: &PhaseVector, b: &PhaseVector) -> PhaseVector {
    a.compose(b)
}

/// `LETTERS[@OFFSET]`, offset defaulting to 0.
impl FromStr for PhaseVector {
    type Err = ObservableParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (letters, offset) = match s.split_once('@') {
            Some((l, o)) => {
                let o = o.trim();
                let offset = o
                    .parse()
                    .map_err(|_| ObservableParseError::BadOffset(o.to_string()))?;
                (l.trim(), offset)
            }
            None => (s, 0),
        };
        Self::from_letters(letters, offset)
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (letters, offset) = self.to_letters();
        write!(f, "{letters}@{offset}")
    }
}

impl fmt::Debug for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PhaseVector({self}; {} | {})",
            self.xi_plus, self.xi_minus
        )
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn obs(s: &str) -> PhaseVector {
        s.parse().unwrap()
    }

    /// Site-by-site commutation count, independent of the polynomial route.
    fn anticommute_by_letters(a: &PhaseVector, b: &PhaseVector) -> bool {
        let (Some((a0, a1)), Some((b0, b1))) = (a.support(), b.support()) else {
            return false;
        };
        let mut parity = false;
        for k in a0.min(b0)..=a1.max(b1) {
            let (la, lb) = (a.letter_at(k), b.letter_at(k));
            if la != Pauli::I && lb != Pauli::I && la != lb {
                parity = !parity;
            }
        }
        parity
    }

    #[test]
    fn letters_to_phase_space() {
        let v = pauli_to_phase_space("ZXZ", -1).unwrap();
        assert_eq!(v.xi_plus, LaurentPoly::one());
        assert_eq!(v.xi_minus, p("u^-1 + u"));

        let v = pauli_to_phase_space("XYZX", -1).unwrap();
        assert_eq!(v.xi_plus, p("u^-1 + 1 + u^2"));
        assert_eq!(v.xi_minus, p("1 + u"));

        assert!(pauli_to_phase_space("1", 0).unwrap().is_identity());
        assert_eq!(
            pauli_to_phase_space("XQ", 0),
            Err(ObservableParseError::IllegalLetter {
                letter: 'Q',
                position: 1
            })
        );
        assert_eq!(
            pauli_to_phase_space("", 0),
            Err(ObservableParseError::Empty)
        );
    }

    #[test]
    fn phase_space_to_letters() {
        let v = PhaseVector::new(LaurentPoly::one(), p("u^-1 + u"));
        assert_eq!(phase_space_to_pauli(&v), ("ZXZ".to_string(), -1));
        let v = PhaseVector::new(p("u^-1 + 1"), p("u^-2 + u^-1"));
        assert_eq!(phase_space_to_pauli(&v), ("ZYX".to_string(), -2));
        assert_eq!(
            phase_space_to_pauli(&PhaseVector::identity()),
            ("1".to_string(), 0)
        );
    }

    #[test]
    fn observable_literal_format() {
        assert_eq!(obs("ZYX@-1"), pauli_to_phase_space("ZYX", -1).unwrap());
        assert_eq!(obs("XZ"), pauli_to_phase_space("XZ", 0).unwrap());
        assert_eq!(obs("1XX1@3").to_string(), "XX@4");
        assert!(matches!(
            "X@a".parse::<PhaseVector>(),
            Err(ObservableParseError::BadOffset(_))
        ));
    }

    #[test]
    fn symplectic_examples() {
        assert!(symplectic_form(&obs("X@0"), &obs("Z@0")));
        assert!(!symplectic_form(&obs("X@0"), &obs("Z@1")));
        assert!(!symplectic_form(&obs("ZXZ@-1"), &obs("ZXZ@0")));
        assert!(symplectic_form(&obs("Z@0"), &obs("XZ@0")));
    }

    #[test]
    fn compose_examples() {
        let v = compose_observables(&compose_observables(&obs("Z@-1"), &obs("Y@0")), &obs("X@1"));
        assert_eq!(v.xi_plus, p("1 + u"));
        assert_eq!(v.xi_minus, p("u^-1 + 1"));
        assert_eq!(v, obs("ZYX@-1"));
        let a = obs("XYZ1X@-4");
        assert!(a.compose(&a).is_identity());
        assert_eq!(compose_observables(&obs("X@0"), &obs("Z@0")), obs("Y@0"));
    }

    fn arb_vec() -> impl Strategy<Value = PhaseVector> {
        (
            prop::collection::vec(-40i64..40, 0..8),
            prop::collection::vec(-40i64..40, 0..8),
        )
            .prop_map(|(a, b)| {
                PhaseVector::new(
                    LaurentPoly::from_exponents(a),
                    LaurentPoly::from_exponents(b),
                )
            })
    }

    proptest! {
        #[test]
        fn form_is_symmetric_and_alternating(a in arb_vec(), b in arb_vec()) {
            prop_assert_eq!(symplectic_form(&a, &b), symplectic_form(&b, &a));
            prop_assert!(!symplectic_form(&a, &a));
            prop_assert_eq!(symplectic_form(&a, &b), anticommute_by_letters(&a, &b));
        }

        #[test]
        fn form_is_bilinear(a in arb_vec(), b in arb_vec(), c in arb_vec()) {
            prop_assert_eq!(
                symplectic_form(&a.compose(&b), &c),
                symplectic_form(&a, &c) ^ symplectic_form(&b, &c)
            );
        }

        #[test]
        fn letters_round_trip(a in arb_vec()) {
            let (letters, offset) = phase_space_to_pauli(&a);
            prop_assert_eq!(pauli_to_phase_space(&letters, offset).unwrap(), a.clone());
            prop_assert_eq!(a.to_string().parse::<PhaseVector>().unwrap(), a);
        }
    }
}
