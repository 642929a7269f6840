//! Laurent polynomials with coefficients in the two-element field.
//!
//! A [`LaurentPoly`] stores its coefficients as a bitset of machine words
//! together with the exponent of the lowest stored bit, so addition is a word
//! XOR and multiplication is a carry-less product.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use thiserror::Error;

use crate::bits;

/// Degree of a Laurent polynomial: the largest exponent with a nonzero
/// coefficient, or `NegInfinity` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial syntax error at position {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("gcd(0, 0) is undefined")]
pub struct GcdOfZeros;

/// A Laurent polynomial over F2 in the variable `u`.
///
/// Canonical form: when nonzero, bit 0 of the first word and the highest
/// stored bit are both set; the zero polynomial has no words and
/// `min_exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    words: Vec<u64>,
    min_exp: i64,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The unit `u^k`.
    pub fn monomial(k: i64) -> Self {
        Self {
            words: vec![1],
            min_exp: k,
        }
    }

    /// Builds a polynomial from a list of exponents; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        let exps: Vec<i64> = exps.into_iter().collect();
        let Some(&lo) = exps.iter().min() else {
            return Self::zero();
        };
        let hi = *exps.iter().max().unwrap();
        let mut words = vec![0u64; bits::words_for((hi - lo + 1) as usize)];
        for e in exps {
            bits::flip(&mut words, (e - lo) as usize);
        }
        Self::from_raw(words, lo)
    }

    /// Canonicalizes a raw bitset whose bit 0 sits at exponent `min_exp`.
    fn from_raw(mut words: Vec<u64>, min_exp: i64) -> Self {
        bits::trim(&mut words);
        match bits::lowest(&words) {
            None => Self::zero(),
            Some(0) => Self { words, min_exp },
            Some(low) => {
                let mut words = bits::shr(&words, low);
                bits::trim(&mut words);
                Self {
                    words,
                    min_exp: min_exp + low as i64,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_exp == 0 && self.words == [1]
    }

    /// Returns `k` if the polynomial is the single term `u^k`.
    pub fn as_monomial(&self) -> Option<i64> {
        (self.words == [1]).then_some(self.min_exp)
    }

    /// Lowest and highest exponents, or `None` for zero.
    pub fn span(&self) -> Option<(i64, i64)> {
        let top = bits::highest(&self.words)?;
        Some((self.min_exp, self.min_exp + top as i64))
    }

    pub fn dg(&self) -> Degree {
        match self.span() {
            None => Degree::NegInfinity,
            Some((_, hi)) => Degree::Finite(hi),
        }
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn coeff(&self, k: i64) -> bool {
        if self.is_zero() || k < self.min_exp {
            return false;
        }
        bits::get(&self.words, (k - self.min_exp) as usize)
    }

    /// Exponents of the nonzero terms, in increasing order.
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        let base = self.min_exp;
        self.words.iter().enumerate().flat_map(move |(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(base + (i * bits::WORD) as i64 + i64::from(b))
            })
        })
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            words: self.words.clone(),
            min_exp: self.min_exp + k,
        }
    }

    /// Keeps only the terms with exponent in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        Self::from_exponents(self.exponents().filter(|&e| e >= lo && e <= hi))
    }

    /// Parity of the number of exponents present in both polynomials.
    pub fn dot(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let (a, b) = if self.min_exp <= other.min_exp {
            (self, other)
        } else {
            (other, self)
        };
        let aligned = bits::shr(&a.words, (b.min_exp - a.min_exp) as usize);
        bits::and_parity(&aligned, &b.words)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True iff the coefficient of `u^(center+k)` equals that of
    /// `u^(center-k)` for every `k`. Zero is symmetric about every center.
    pub fn is_reflection_symmetric(&self, center: i64) -> bool {
        let Some((lo, hi)) = self.span() else {
            return true;
        };
        if lo + hi != 2 * center {
            return false;
        }
        self.exponents().all(|e| self.coeff(2 * center - e))
    }

    /// The associate with lowest exponent 0.
    pub fn unit_normalized(&self) -> Self {
        self.shift(-self.min_exp)
    }

    /// Greatest common divisor, normalized so that its lowest exponent is 0.
    pub fn gcd(&self, other: &Self) -> Result<Self, GcdOfZeros> {
        if self.is_zero() && other.is_zero() {
            return Err(GcdOfZeros);
        }
        let mut a = self.words.clone();
        let mut b = other.words.clone();
        while !b.is_empty() {
            reduce(&mut a, &b);
            std::mem::swap(&mut a, &mut b);
        }
        Ok(Self::from_raw(a, 0))
    }

    /// Exact quotient `self / divisor` in the Laurent ring, if it exists.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem = self.words.clone();
        let quot = reduce(&mut rem, &divisor.words);
        rem.is_empty()
            .then(|| Self::from_raw(quot, self.min_exp - divisor.min_exp))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }
}

/// Replaces `a` by `a mod b` (as ordinary polynomials with bit 0 at `u^0`)
/// and returns the quotient.
fn reduce(a: &mut Vec<u64>, b: &[u64]) -> Vec<u64> {
    let Some(db) = bits::highest(b) else {
        return Vec::new();
    };
    let mut quot = vec![0u64; a.len().max(1)];
    while let Some(da) = bits::highest(a) {
        if da < db {
            break;
        }
        let s = da - db;
        bits::xor_shifted(a, b, s);
        bits::set(&mut quot, s);
        bits::trim(a);
    }
    bits::trim(&mut quot);
    quot
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let (_, hi_a) = self.span().unwrap();
        let (_, hi_b) = rhs.span().unwrap();
        let width = (hi_a.max(hi_b) - lo + 1) as usize;
        let mut words = vec![0u64; bits::words_for(width) + 1];
        bits::xor_shifted(&mut words, &self.words, (self.min_exp - lo) as usize);
        bits::xor_shifted(&mut words, &rhs.words, (rhs.min_exp - lo) as usize);
        LaurentPoly::from_raw(words, lo)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut words = bits::clmul_words(&self.words, &rhs.words);
        bits::trim(&mut words);
        LaurentPoly {
            words,
            min_exp: self.min_exp + rhs.min_exp,
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree first, then lexicographically on exponents from the top.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let a: Vec<i64> = self.exponents().collect();
        let b: Vec<i64> = other.exponents().collect();
        self.dg()
            .cmp(&other.dg())
            .then_with(|| a.iter().rev().cmp(b.iter().rev()))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, e) in self.exponents().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("u")?,
                _ => write!(f, "u^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        PolyParser::new(text).parse()
    }
}

/// `Poly := "0" | Term ("+" Term)*`, `Term := "1" | "u" | "u^" SignedInt`.
struct PolyParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl PolyParser {
    fn new(text: &str) -> Self {
        Self {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            end: text.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> ParsePolyError {
        ParsePolyError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<LaurentPoly, ParsePolyError> {
        if self.chars.len() == 1 && self.peek() == Some('0') {
            return Ok(LaurentPoly::zero());
        }
        let mut exps = vec![self.term()?];
        while let Some(c) = self.peek() {
            if c != '+' {
                return Err(self.error(format!("expected '+', found '{c}'")));
            }
            self.pos += 1;
            exps.push(self.term()?);
        }
        Ok(LaurentPoly::from_exponents(exps))
    }

    fn term(&mut self) -> Result<i64, ParsePolyError> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(0)
            }
            Some('u') => {
                self.pos += 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    self.signed_int()
                } else {
                    Ok(1)
                }
            }
            Some(c) => Err(self.error(format!("expected '1' or 'u', found '{c}'"))),
            None => Err(self.error("expected a term, found end of input")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParsePolyError> {
        let start = self.offset();
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let magnitude: i64 = digits.parse().map_err(|_| ParsePolyError {
            position: start,
            message: "exponent out of range".into(),
        })?;
        Ok(if negative { -magnitude } else { magnitude })
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// Term-set model of an F2 Laurent polynomial.
    fn terms(p: &LaurentPoly) -> BTreeSet<i64> {
        p.exponents().collect()
    }

    fn naive_add(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> BTreeSet<i64> {
        a.symmetric_difference(b).copied().collect()
    }

    fn naive_mul(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for x in a {
            for y in b {
                if !out.insert(x + y) {
                    out.remove(&(x + y));
                }
            }
        }
        out
    }

    fn from_set(s: &BTreeSet<i64>) -> LaurentPoly {
        LaurentPoly::from_exponents(s.iter().copied())
    }

    #[test]
    fn parses_examples() {
        assert_eq!(terms(&p("u^-1 + u")), BTreeSet::from([-1, 1]));
        assert!(p("0").is_zero());
        assert!(p("u + u").is_zero());
        assert_eq!(p(" u ^ - 2 +1"), LaurentPoly::from_exponents([-2, 0]));
        assert_eq!(p("u^+3"), LaurentPoly::monomial(3));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = "u^-1 + x".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(err.position, 7);
        let err = "u^".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("0 + u".parse::<LaurentPoly>().is_err());
        assert!("u u".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn renders_in_increasing_order() {
        assert_eq!(p("u + 1 + u^-1").to_string(), "u^-1 + 1 + u");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("u^2 + u^-3").to_string(), "u^-3 + u^2");
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("1 + u") + p("u + u^2"), p("1 + u^2"));
        let q = p("u^-1 + u^5");
        assert_eq!(&q + &LaurentPoly::zero(), q);
        let sum = p("u^-1 + 1 + u") + p("u^-1 + u");
        assert_eq!(sum, LaurentPoly::one());
        assert_eq!(
            terms(&sum),
            naive_add(&terms(&p("u^-1 + 1 + u")), &terms(&p("u^-1 + u")))
        );
    }

    #[test]
    fn mul_examples() {
        let w = p("u^-1 + u");
        let sq = &w * &w;
        assert_eq!(sq, p("u^-2 + u^2"));
        assert_eq!(terms(&sq), naive_mul(&terms(&w), &terms(&w)));
        let prod = &w * &p("u^-1 + 1");
        assert_eq!(prod, p("u^-2 + u^-1 + 1 + u"));
        assert_eq!(terms(&prod), naive_mul(&terms(&w), &terms(&p("u^-1 + 1"))));
        assert_eq!(&w * &LaurentPoly::one(), w);
        assert!((&w * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn degree_span_examples() {
        let w = p("u^-1 + u");
        assert_eq!(w.span(), Some((-1, 1)));
        assert_eq!(w.dg(), Degree::Finite(1));
        assert_eq!(LaurentPoly::one().span(), Some((0, 0)));
        assert_eq!(LaurentPoly::one().dg(), Degree::Finite(0));
        assert_eq!((&w * &w).span(), Some((-2, 2)));
        assert_eq!(LaurentPoly::zero().dg(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(-100));
    }

    #[test]
    fn gcd_examples() {
        assert!(p("u^-1 + u").gcd(&p("u^-1 + 1 + u")).unwrap().is_one());
        let q = p("u^-3 + u^-1 + u^4");
        assert_eq!(q.gcd(&q).unwrap(), q.unit_normalized());
        assert_eq!(p("1 + u^2").gcd(&p("1 + u")).unwrap(), p("1 + u"));
        assert_eq!(q.gcd(&LaurentPoly::zero()).unwrap(), q.unit_normalized());
        assert_eq!(
            LaurentPoly::zero().gcd(&LaurentPoly::zero()),
            Err(GcdOfZeros)
        );
        assert_eq!(p("1 + u^2").exact_div(&p("1 + u")), Some(p("1 + u")));
        assert_eq!(
            p("u^-2 + u^2").exact_div(&p("u^-1 + u")),
            Some(p("u^-1 + u"))
        );
        assert_eq!(p("1 + u + u^2").exact_div(&p("1 + u")), None);
    }

    #[test]
    fn reflection_symmetry_examples() {
        assert!(p("u^-1 + 1 + u").is_reflection_symmetric(0));
        assert!(!p("u").is_reflection_symmetric(0));
        assert!(!p("1 + u").is_reflection_symmetric(0));
        assert!(p("1 + u^2").is_reflection_symmetric(1));
        assert!(LaurentPoly::zero().is_reflection_symmetric(17));
        assert!(!p("u^-2 + 1 + u").is_reflection_symmetric(0));
        assert!(!p("u^-2 + u^-1 + u^2").is_reflection_symmetric(0));
    }

    #[test]
    fn dot_counts_shared_exponents() {
        assert!(p("u^-1 + 1").dot(&p("1 + u")));
        assert!(!p("u^-1 + 1 + u").dot(&p("u^-1 + u")));
        assert!(!p("u^100").dot(&p("u^-100")));
        assert!(p("u^100 + u^-100").dot(&p("u^-100")));
    }

    #[test]
    fn large_exponents_cross_word_boundaries() {
        let a = LaurentPoly::from_exponents([-70, 0, 130]);
        let b = LaurentPoly::from_exponents([-1, 64]);
        let prod = &a * &b;
        assert_eq!(terms(&prod), naive_mul(&terms(&a), &terms(&b)));
        assert_eq!(terms(&(&a + &b)), naive_add(&terms(&a), &terms(&b)));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(a.pow(4), LaurentPoly::from_exponents([-280, 0, 520]));
    }

    /// Every polynomial supported on exponents -2..=1 (span <= 4).
    fn small_polys() -> Vec<LaurentPoly> {
        (0u32..16)
            .map(|mask| {
                LaurentPoly::from_exponents((0..4).filter(|b| mask >> b & 1 == 1).map(|b| b - 2))
            })
            .collect()
    }

    #[test]
    fn ring_laws_exhaustive_small() {
        let all = small_polys();
        for a in &all {
            for b in &all {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in &all {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (prop::collection::vec(-150i64..150, 0..12)).prop_map(LaurentPoly::from_exponents)
    }

    fn arb_nonzero() -> impl Strategy<Value = LaurentPoly> {
        arb_poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn matches_term_set_model(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(terms(&(&a + &b)), naive_add(&terms(&a), &terms(&b)));
            prop_assert_eq!(terms(&(&a * &b)), naive_mul(&terms(&a), &terms(&b)));
            prop_assert_eq!(from_set(&terms(&a)), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(a.clone() * b.clone()) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &a).is_zero());
        }

        #[test]
        fn degree_is_additive(a in arb_nonzero(), b in arb_nonzero()) {
            let da = a.dg().finite().unwrap();
            let db = b.dg().finite().unwrap();
            prop_assert_eq!((&a * &b).dg(), Degree::Finite(da + db));
        }

        #[test]
        fn gcd_divides_and_is_greatest(d in arb_nonzero(), x in arb_nonzero(), y in arb_poly()) {
            let a = &d * &x;
            let b = &d * &y;
            let g = a.gcd(&b).unwrap();
            prop_assert_eq!(g.span().unwrap().0, 0);
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
            prop_assert!(d.divides(&g));
        }

        #[test]
        fn render_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
