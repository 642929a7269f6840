//! Symplectic cellular automata: 2x2 matrices of Laurent polynomials acting
//! on phase-space vectors.
//!
//! Column 1 of a matrix is the image of a single X, column 2 the image of a
//! single Z. A matrix is a valid automaton iff its determinant is `u^(2a)`,
//! all entries are reflection-symmetric about `a`, and each column is
//! coprime. Validation centers the matrix (divides by `u^a`) and tags it with
//! its trace class.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::laurent::{LaurentPoly, ParsePolyError};
use crate::phase_space::PhaseVector;

/// Raw, unvalidated automaton matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CqcaMatrix {
    pub t11: LaurentPoly,
    pub t12: LaurentPoly,
    pub t21: LaurentPoly,
    pub t22: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CqcaError {
    #[error(
        "DetNotMonomial: determinant condition violated, det = {det} is not a single power u^(2a)"
    )]
    DetNotMonomial { det: LaurentPoly },
    #[error("DetOddShift: determinant condition violated, det = u^{exponent} has an odd exponent")]
    DetOddShift { exponent: i64 },
    #[error("EntriesNotSymmetric: symmetry condition violated, entry t{entry} is not reflection-symmetric about site {center}")]
    EntriesNotSymmetric { center: i64, entry: &'static str },
    #[error("ColumnsNotCoprime: coprimality condition violated, column {column} has common divisor {gcd}")]
    ColumnsNotCoprime { column: usize, gcd: LaurentPoly },
    #[error("PureShift: the matrix is the lattice shift u^{shift} times the identity")]
    PureShift { shift: i64 },
}

impl CqcaError {
    /// Short name of the violated condition.
    pub fn name(&self) -> &'static str {
        match self {
            CqcaError::DetNotMonomial { .. } => "DetNotMonomial",
            CqcaError::DetOddShift { .. } => "DetOddShift",
            CqcaError::EntriesNotSymmetric { .. } => "EntriesNotSymmetric",
            CqcaError::ColumnsNotCoprime { .. } => "ColumnsNotCoprime",
            CqcaError::PureShift { .. } => "PureShift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixParseError {
    #[error("line {line}: expected `key = polynomial`")]
    MissingSeparator { line: usize },
    #[error("line {line}: unknown key '{key}' (expected t11, t12, t21 or t22)")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key '{key}'")]
    DuplicateKey { line: usize, key: String },
    #[error("missing entry '{0}'")]
    MissingKey(&'static str),
    #[error("line {line}: {source}")]
    Poly {
        line: usize,
        #[source]
        source: ParsePolyError,
    },
    #[error("unknown built-in automaton '{0}'")]
    UnknownBuiltin(String),
}

impl CqcaMatrix {
    pub fn new(t11: LaurentPoly, t12: LaurentPoly, t21: LaurentPoly, t22: LaurentPoly) -> Self {
        Self { t11, t12, t21, t22 }
    }

    pub fn identity() -> Self {
        Self::new(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::one(),
        )
    }

    /// The standard glider automaton `[[0, 1], [1, u^-1 + u]]`.
    pub fn glider() -> Self {
        Self::new(
            LaurentPoly::zero(),
            LaurentPoly::one(),
            LaurentPoly::one(),
            LaurentPoly::from_exponents([-1, 1]),
        )
    }

    /// The fractal automaton `[[u^-1 + 1 + u, 1], [1, 0]]`.
    pub fn fractal() -> Self {
        Self::new(
            LaurentPoly::from_exponents([-1, 0, 1]),
            LaurentPoly::one(),
            LaurentPoly::one(),
            LaurentPoly::zero(),
        )
    }

    pub fn swap() -> Self {
        Self::new(
            LaurentPoly::zero(),
            LaurentPoly::one(),
            LaurentPoly::one(),
            LaurentPoly::zero(),
        )
    }

    /// `[[1, 0], [p, 1]]`: adds `p * xi_plus` to the Z-component.
    pub fn lower_shear(p: LaurentPoly) -> Self {
        Self::new(
            LaurentPoly::one(),
            LaurentPoly::zero(),
            p,
            LaurentPoly::one(),
        )
    }

    /// `[[1, p], [0, 1]]`: adds `p * xi_minus` to the X-component.
    pub fn upper_shear(p: LaurentPoly) -> Self {
        Self::new(
            LaurentPoly::one(),
            p,
            LaurentPoly::zero(),
            LaurentPoly::one(),
        )
    }

    /// Resolves `glider`, `fractal`, `identity`, `swap` and `shear:<poly>`
    /// (a lower shear).
    pub fn builtin(name: &str) -> Result<Option<Self>, MatrixParseError> {
        let name = name.trim();
        Ok(match name {
            "glider" => Some(Self::glider()),
            "fractal" => Some(Self::fractal()),
            "identity" => Some(Self::identity()),
            "swap" => Some(Self::swap()),
            _ => match name.strip_prefix("shear:") {
                Some(poly) => {
                    Some(Self::lower_shear(poly.parse().map_err(|source| {
                        MatrixParseError::Poly { line: 0, source }
                    })?))
                }
                None => None,
            },
        })
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.t11 * &self.t22) + &(&self.t12 * &self.t21)
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.t11 + &self.t22
    }

    fn entries(&self) -> [(&'static str, &LaurentPoly); 4] {
        [
            ("11", &self.t11),
            ("12", &self.t12),
            ("21", &self.t21),
            ("22", &self.t22),
        ]
    }

    /// Largest absolute exponent over all entries (the neighborhood radius).
    pub fn radius(&self) -> i64 {
        self.entries()
            .iter()
            .filter_map(|(_, p)| p.span())
            .map(|(lo, hi)| lo.abs().max(hi.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let dot = |a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly| {
            &(a * b) + &(c * d)
        };
        Self::new(
            dot(&self.t11, &rhs.t11, &self.t12, &rhs.t21),
            dot(&self.t11, &rhs.t12, &self.t12, &rhs.t22),
            dot(&self.t21, &rhs.t11, &self.t22, &rhs.t21),
            dot(&self.t21, &rhs.t12, &self.t22, &rhs.t22),
        )
    }

    pub fn apply(&self, v: &PhaseVector) -> PhaseVector {
        PhaseVector::new(
            &(&self.t11 * &v.xi_plus) + &(&self.t12 * &v.xi_minus),
            &(&self.t21 * &v.xi_plus) + &(&self.t22 * &v.xi_minus),
        )
    }

    /// Every entry multiplied by `u^-a`.
    pub fn center(&self, a: i64) -> Self {
        Self::new(
            self.t11.shift(-a),
            self.t12.shift(-a),
            self.t21.shift(-a),
            self.t22.shift(-a),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn validate(&self) -> Result<ValidatedCqca, CqcaError> {
        let det = self.det();
        let exponent = det
            .as_monomial()
            .ok_or_else(|| CqcaError::DetNotMonomial { det: det.clone() })?;
        if exponent.rem_euclid(2) != 0 {
            return Err(CqcaError::DetOddShift { exponent });
        }
        let a = exponent / 2;
        if let Some((entry, _)) = self
            .entries()
            .into_iter()
            .find(|(_, p)| !p.is_reflection_symmetric(a))
        {
            return Err(CqcaError::EntriesNotSymmetric { center: a, entry });
        }
        for (column, (top, bottom)) in [(1, (&self.t11, &self.t21)), (2, (&self.t12, &self.t22))] {
            // a monomial determinant rules out a zero column
            let gcd = top.gcd(bottom).expect("nonzero column");
            if !gcd.is_one() {
                return Err(CqcaError::ColumnsNotCoprime { column, gcd });
            }
        }
        let centered = self.center(a);
        if a != 0 && centered.is_identity() {
            return Err(CqcaError::PureShift { shift: a });
        }
        Ok(ValidatedCqca::from_centered(centered))
    }
}

pub fn center(m: &CqcaMatrix, a: i64) -> CqcaMatrix {
    m.center(a)
}

pub fn validate(m: &CqcaMatrix) -> Result<ValidatedCqca, CqcaError> {
    m.validate()
}

/// Line-oriented matrix file: `t11 = <poly>` etc., `#` starts a comment.
impl FromStr for CqcaMatrix {
    type Err = MatrixParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut slots: [Option<LaurentPoly>; 4] = Default::default();
        const KEYS: [&str; 4] = ["t11", "t12", "t21", "t22"];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or(MatrixParseError::MissingSeparator { line })?;
            let key = key.trim();
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| {
                MatrixParseError::UnknownKey {
                    line,
                    key: key.to_string(),
                }
            })?;
            if slots[slot].is_some() {
                return Err(MatrixParseError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
            slots[slot] = Some(
                value
                    .parse()
                    .map_err(|source| MatrixParseError::Poly { line, source })?,
            );
        }
        let [t11, t12, t21, t22] = slots;
        Ok(Self::new(
            t11.ok_or(MatrixParseError::MissingKey("t11"))?,
            t12.ok_or(MatrixParseError::MissingKey("t12"))?,
            t21.ok_or(MatrixParseError::MissingKey("t21"))?,
            t22.ok_or(MatrixParseError::MissingKey("t22"))?,
        ))
    }
}

impl fmt::Display for CqcaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t11 = {}", self.t11)?;
        writeln!(f, "t12 = {}", self.t12)?;
        writeln!(f, "t21 = {}", self.t21)?;
        writeln!(f, "t22 = {}", self.t22)
    }
}

/// Trace class of a centered automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CqcaClass {
    Periodic,
    /// Gliders move `n` sites per step.
    Glider(u64),
    Fractal,
}

impl fmt::Display for CqcaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CqcaClass::Periodic => f.write_str("Periodic"),
            CqcaClass::Glider(n) => write!(f, "Glider({n})"),
            CqcaClass::Fractal => f.write_str("Fractal"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Period {
    Found(u64),
    NotPeriodicWithin(u64),
}

/// A centered automaton that passed validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValidatedCqca {
    matrix: CqcaMatrix,
    class: CqcaClass,
}

impl ValidatedCqca {
    fn from_centered(matrix: CqcaMatrix) -> Self {
        let class = classify_trace(&matrix.trace());
        Self { matrix, class }
    }

    pub fn glider() -> Self {
        CqcaMatrix::glider().validate().unwrap()
    }

    pub fn fractal() -> Self {
        CqcaMatrix::fractal().validate().unwrap()
    }

    pub fn identity() -> Self {
        Self::from_centered(CqcaMatrix::identity())
    }

    pub fn matrix(&self) -> &CqcaMatrix {
        &self.matrix
    }

    pub fn class(&self) -> CqcaClass {
        self.class
    }

    pub fn trace(&self) -> LaurentPoly {
        self.matrix.trace()
    }

    /// Degree of the trace; 0 when the trace is constant.
    pub fn trace_degree(&self) -> u64 {
        self.trace()
            .dg()
            .finite()
            .map_or(0, |d| u64::try_from(d).unwrap_or(0))
    }

    /// Matrix product `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_centered(self.matrix.mul(&other.matrix))
    }

    pub fn apply(&self, v: &PhaseVector) -> PhaseVector {
        self.matrix.apply(v)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Inverse automaton: `[[t22, t12], [t21, t11]]` for determinant 1.
    pub fn inverse(&self) -> Self {
        let m = &self.matrix;
        Self::from_centered(CqcaMatrix::new(
            m.t22.clone(),
            m.t12.clone(),
            m.t21.clone(),
            m.t11.clone(),
        ))
    }

    /// Smallest `p <= cap` with `t^p = 1`.
    pub fn period(&self, cap: u64) -> Period {
        if self.class != CqcaClass::Periodic {
            return Period::NotPeriodicWithin(cap);
        }
        let mut power = self.clone();
        for p in 1..=cap {
            if power.matrix.is_identity() {
                return Period::Found(p);
            }
            power = power.compose(self);
        }
        Period::NotPeriodicWithin(cap)
    }
}

fn classify_trace(trace: &LaurentPoly) -> CqcaClass {
    match trace.span() {
        None => CqcaClass::Periodic,
        Some((0, 0)) => CqcaClass::Periodic,
        Some((lo, hi)) if trace.weight() == 2 && lo == -hi && hi > 0 => {
            CqcaClass::Glider(hi as u64)
        }
        _ => CqcaClass::Fractal,
    }
}

pub fn classify(t: &ValidatedCqca) -> CqcaClass {
    t.class()
}

impl fmt::Display for ValidatedCqca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// One factor of a generator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordFactor {
    Swap,
    LowerShear(LaurentPoly),
    UpperShear(LaurentPoly),
}

impl WordFactor {
    pub fn matrix(&self) -> CqcaMatrix {
        match self {
            WordFactor::Swap => CqcaMatrix::swap(),
            WordFactor::LowerShear(p) => CqcaMatrix::lower_shear(p.clone()),
            WordFactor::UpperShear(p) => CqcaMatrix::upper_shear(p.clone()),
        }
    }
}

/// Product of the factors in word order. Shear polynomials must be
/// reflection-symmetric about 0.
pub fn from_word(word: &[WordFactor]) -> Result<ValidatedCqca, CqcaError> {
    let product = word
        .iter()
        .fold(CqcaMatrix::identity(), |acc, f| acc.mul(&f.matrix()));
    product.validate()
}

/// Random reflection-symmetric polynomial with degree at most `max_degree`.
pub fn random_symmetric<R: Rng>(rng: &mut R, max_degree: u32) -> LaurentPoly {
    let mut exps = Vec::new();
    if rng.gen_bool(0.5) {
        exps.push(0);
    }
    for k in 1..=i64::from(max_degree) {
        if rng.gen_bool(0.5) {
            exps.push(-k);
            exps.push(k);
        }
    }
    LaurentPoly::from_exponents(exps)
}

/// Deterministic random generator word of the given length.
pub fn random_word(seed: u64, word_length: usize, max_shear_degree: u32) -> Vec<WordFactor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..word_length)
        .map(|_| match rng.gen_range(0..3) {
            0 => WordFactor::Swap,
            1 => WordFactor::LowerShear(random_symmetric(&mut rng, max_shear_degree)),
            _ => WordFactor::UpperShear(random_symmetric(&mut rng, max_shear_degree)),
        })
        .collect()
}

/// Random valid automaton built from a word of swaps and shears.
pub fn random_cqca(seed: u64, word_length: usize, max_shear_degree: u32) -> ValidatedCqca {
    from_word(&random_word(seed, word_length, max_shear_degree))
        .expect("swaps and symmetric shears generate valid automata")
}
