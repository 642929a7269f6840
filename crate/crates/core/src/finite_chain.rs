//! Phase-tracked Pauli strings on finite open chains and rings.
//!
//! This is the brute-force side of the crate: automata are truncated to
//! `N` sites, operators are multiplied with full `i^k` phase bookkeeping,
//! and stabilizer entropies are computed from F2 ranks. Site `k` of a chain
//! corresponds to the exponent `u^k` on the symbolic side.
//!
//! Phase convention: the images of single-site `X` and `Z` are the Hermitian
//! Pauli strings read off the matrix columns with sign `+1`; the image of `Y`
//! follows from `Y = i X Z`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::automaton::ValidatedCqca;
use crate::bits;
use crate::gf2::BitMatrix;
use crate::phase_space::{Pauli, PhaseVector};
use crate::stabilizer::TIStabilizerState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Open,
    Ring,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Ring => "ring",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteChainError {
    #[error("chain of {sites} sites is too short for an automaton of radius {radius} (need more than {})", 2 * radius)]
    ChainTooShort { sites: usize, radius: i64 },
    #[error("BoundaryBreaksAutomorphism: truncated images of {a} and {b} violate the commutation relations")]
    BoundaryBreaksAutomorphism { a: String, b: String },
    #[error("operation requires an open chain")]
    RequiresOpenBoundary,
    #[error("site {site} outside a chain of {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },
    #[error("ring of {sites} sites is below the floor {floor} for generator half-length {n}")]
    RingTooSmall { sites: usize, n: u64, floor: usize },
    #[error("region length {len} must lie in 1..={max}")]
    RegionOutOfRange { len: usize, max: usize },
    #[error("GeneratorsDoNotCommute: generators {0} and {1} anticommute")]
    GeneratorsDoNotCommute(usize, usize),
    #[error("NotPure: generator rank {rank} is below the {sites} sites")]
    NotPure { rank: usize, sites: usize },
    #[error("operator length {got} does not match chain length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("illegal character '{0}' in operator string")]
    IllegalLetter(char),
}

impl FiniteChainError {
    pub fn name(&self) -> &'static str {
        match self {
            FiniteChainError::ChainTooShort { .. } => "ChainTooShort",
            FiniteChainError::BoundaryBreaksAutomorphism { .. } => "BoundaryBreaksAutomorphism",
            FiniteChainError::RequiresOpenBoundary => "RequiresOpenBoundary",
            FiniteChainError::SiteOutOfRange { .. } => "SiteOutOfRange",
            FiniteChainError::RingTooSmall { .. } => "RingTooSmall",
            FiniteChainError::RegionOutOfRange { .. } => "RegionOutOfRange",
            FiniteChainError::GeneratorsDoNotCommute(..) => "GeneratorsDoNotCommute",
            FiniteChainError::NotPure { .. } => "NotPure",
            FiniteChainError::LengthMismatch { .. } => "LengthMismatch",
            FiniteChainError::IllegalLetter(_) => "IllegalLetter",
        }
    }
}

/// `i^phase` times a tensor product of Hermitian Paulis on `N` sites.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteOperator {
    sites: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl FiniteOperator {
    pub fn identity(sites: usize) -> Self {
        let words = bits::words_for(sites);
        Self {
            sites,
            x: vec![0; words],
            z: vec![0; words],
            phase: 0,
        }
    }

    pub fn single(sites: usize, site: usize, letter: Pauli) -> Self {
        let mut op = Self::identity(sites);
        op.set_letter(site, letter);
        op
    }

    /// Embeds a symbolic observable: exponent `k` maps to site `k`. Sites
    /// outside the chain are dropped (open) or wrapped modulo `N` (ring).
    pub fn from_phase_vector(v: &PhaseVector, sites: usize, boundary: Boundary) -> Self {
        let mut op = Self::identity(sites);
        for (part, words) in [(&v.xi_plus, &mut op.x), (&v.xi_minus, &mut op.z)] {
            for e in part.exponents() {
                let site = match boundary {
                    Boundary::Open if (0..sites as i64).contains(&e) => e as usize,
                    Boundary::Open => continue,
                    Boundary::Ring => e.rem_euclid(sites as i64) as usize,
                };
                bits::flip(words, site);
            }
        }
        op
    }

    /// Letters as a phase-space vector; the phase is dropped.
    pub fn to_phase_vector(&self) -> PhaseVector {
        let exps = |w: &[u64]| {
            crate::laurent::LaurentPoly::from_exponents(
                (0..self.sites)
                    .filter(|&k| bits::get(w, k))
                    .map(|k| k as i64),
            )
        };
        PhaseVector::new(exps(&self.x), exps(&self.z))
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Exponent of `i` in front of the Pauli string.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn letter(&self, site: usize) -> Pauli {
        Pauli::from_bits(bits::get(&self.x, site), bits::get(&self.z, site))
    }

    fn set_letter(&mut self, site: usize, letter: Pauli) {
        let (x, z) = letter.bits();
        let w = site / bits::WORD;
        let m = 1u64 << (site % bits::WORD);
        self.x[w] = (self.x[w] & !m) | if x { m } else { 0 };
        self.z[w] = (self.z[w] & !m) | if z { m } else { 0 };
    }

    pub fn letters(&self) -> String {
        (0..self.sites).map(|k| self.letter(k).to_char()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Sites carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        (0..self.sites)
            .filter(|&k| self.letter(k) != Pauli::I)
            .collect()
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// Symplectic form of the underlying Pauli strings.
    pub fn anticommutes_with(&self, other: &Self) -> bool {
        bits::and_parity(&self.x, &other.z) ^ bits::and_parity(&self.z, &other.x)
    }

    /// Operator product `self * other` with exact phase.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.sites, other.sites, "operators on different chains");
        let mut plus = 0u32;
        let mut minus = 0u32;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], other.x[i], other.z[i]);
            let (px, py, pz) = (x1 & !z1, x1 & z1, z1 & !x1);
            let (qx, qy, qz) = (x2 & !z2, x2 & z2, z2 & !x2);
            // XY = iZ, YZ = iX, ZX = iY and their reverses
            plus += ((px & qy) | (py & qz) | (pz & qx)).count_ones();
            minus += ((py & qx) | (pz & qy) | (px & qz)).count_ones();
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let phase = (u32::from(self.phase) + u32::from(other.phase) + plus + 3 * minus) % 4;
        Self {
            sites: self.sites,
            x,
            z,
            phase: phase as u8,
        }
    }
}

/// Sign picked up under conjugation by `Y` on every site:
/// `(-1)^(number of X and Z letters)`.
pub fn global_y_parity(op: &FiniteOperator) -> i8 {
    let count: u32 =
        op.x.iter()
            .zip(&op.z)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Display for FiniteOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{sign}{}", self.letters())
    }
}

impl fmt::Debug for FiniteOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteOperator({self})")
    }
}

/// Optional phase prefix (`+`, `-`, `i`, `+i`, `-i`) followed by one letter
/// per site.
impl FromStr for FiniteOperator {
    type Err = FiniteChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (phase, letters) = [("+i", 1), ("-i", 3), ("i", 1), ("+", 0), ("-", 2)]
            .iter()
            .find_map(|(p, e)| s.strip_prefix(p).map(|rest| (*e, rest)))
            .unwrap_or((0, s));
        let mut op = Self::identity(letters.chars().count());
        for (k, c) in letters.chars().enumerate() {
            op.set_letter(
                k,
                Pauli::from_char(c).ok_or(FiniteChainError::IllegalLetter(c))?,
            );
        }
        Ok(op.with_phase(phase))
    }
}

/// Truncated automaton on `N` sites: the image of each single-site Pauli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRule {
    sites: usize,
    boundary: Boundary,
    x_images: Vec<FiniteOperator>,
    z_images: Vec<FiniteOperator>,
    y_images: Vec<FiniteOperator>,
}

impl FiniteRule {
    /// Restricts (open) or wraps (ring) the one-site images of `t`, then
    /// checks that the result is still an automorphism.
    pub fn truncate(
        t: &ValidatedCqca,
        sites: usize,
        boundary: Boundary,
    ) -> Result<Self, FiniteChainError> {
        let radius = t.matrix().radius();
        if sites as i64 <= 2 * radius {
            return Err(FiniteChainError::ChainTooShort { sites, radius });
        }
        let image = |letter: Pauli, site: usize| {
            let v = t.apply(&PhaseVector::single(letter, site as i64));
            FiniteOperator::from_phase_vector(&v, sites, boundary)
        };
        let x_images = (0..sites).map(|k| image(Pauli::X, k)).collect();
        let z_images = (0..sites).map(|k| image(Pauli::Z, k)).collect();
        let rule = Self::from_xz_images(sites, boundary, x_images, z_images);
        rule.check_automorphism()?;
        Ok(rule)
    }

    fn from_xz_images(
        sites: usize,
        boundary: Boundary,
        x_images: Vec<FiniteOperator>,
        z_images: Vec<FiniteOperator>,
    ) -> Self {
        let y_images = x_images
            .iter()
            .zip(&z_images)
            .map(|(x, z)| {
                let xz = x.mul(z);
                let phase = xz.phase_exp() + 1;
                xz.with_phase(phase)
            })
            .collect();
        Self {
            sites,
            boundary,
            x_images,
            z_images,
            y_images,
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn image(&self, site: usize, letter: Pauli) -> FiniteOperator {
        match letter {
            Pauli::I => FiniteOperator::identity(self.sites),
            Pauli::X => self.x_images[site].clone(),
            Pauli::Y => self.y_images[site].clone(),
            Pauli::Z => self.z_images[site].clone(),
        }
    }

    /// Images of the generators `X_0, Z_0, X_1, Z_1, ...`.
    fn generator_images(&self) -> impl Iterator<Item = (String, &FiniteOperator)> {
        self.x_images
            .iter()
            .zip(&self.z_images)
            .enumerate()
            .flat_map(|(k, (x, z))| [(format!("X_{k}"), x), (format!("Z_{k}"), z)])
    }

    /// The 2N x 2N binary update matrix; column `2k` is the image of `X_k`,
    /// column `2k+1` the image of `Z_k`, row `2j`/`2j+1` the x/z bit of site
    /// `j`. Returned transposed: row `c` holds column `c`.
    pub fn update_matrix_columns(&self) -> BitMatrix {
        let mut m = BitMatrix::new(2 * self.sites);
        for (_, img) in self.generator_images() {
            m.push_row((0..self.sites).flat_map(|j| {
                let (x, z) = img.letter(j).bits();
                [x.then_some(2 * j), z.then_some(2 * j + 1)]
                    .into_iter()
                    .flatten()
            }));
        }
        m
    }

    /// `M^T J M = J`: image pairs have the same symplectic form as the
    /// generators they come from.
    pub fn check_automorphism(&self) -> Result<(), FiniteChainError> {
        let images: Vec<_> = self.generator_images().collect();
        for (i, (name_a, a)) in images.iter().enumerate() {
            for (j, (name_b, b)) in images.iter().enumerate().skip(i + 1) {
                // X_k and Z_k are the only anticommuting generator pair
                let expected = i / 2 == j / 2;
                if a.anticommutes_with(b) != expected {
                    return Err(FiniteChainError::BoundaryBreaksAutomorphism {
                        a: name_a.clone(),
                        b: name_b.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, op: &FiniteOperator) -> FiniteOperator {
        assert_eq!(op.sites, self.sites, "operator and rule lengths differ");
        let mut out = FiniteOperator::identity(self.sites).with_phase(op.phase);
        for k in 0..self.sites {
            let letter = op.letter(k);
            if letter != Pauli::I {
                out = out.mul(&self.image(k, letter));
            }
        }
        out
    }

    /// Inverse automorphism with phases fixed so that `inverse(apply(op)) = op`.
    pub fn inverse(&self) -> Self {
        // For symplectic M, the X_k coefficient of M^-1 y is sigma(y, T(Z_k))
        // and the Z_k coefficient is sigma(y, T(X_k)).
        let preimage = |target: &FiniteOperator| {
            let mut pre = FiniteOperator::identity(self.sites);
            for k in 0..self.sites {
                let x = target.anticommutes_with(&self.z_images[k]);
                let z = target.anticommutes_with(&self.x_images[k]);
                pre.set_letter(k, Pauli::from_bits(x, z));
            }
            let image = self.apply(&pre);
            debug_assert_eq!(image.letters(), target.letters());
            let phase = (4 + target.phase - image.phase) % 4;
            pre.with_phase(phase)
        };
        let x_images = (0..self.sites)
            .map(|k| preimage(&FiniteOperator::single(self.sites, k, Pauli::X)))
            .collect();
        let z_images = (0..self.sites)
            .map(|k| preimage(&FiniteOperator::single(self.sites, k, Pauli::Z)))
            .collect();
        Self::from_xz_images(self.sites, self.boundary, x_images, z_images)
    }
}

pub fn truncate_rule(
    t: &ValidatedCqca,
    sites: usize,
    boundary: Boundary,
) -> Result<FiniteRule, FiniteChainError> {
    FiniteRule::truncate(t, sites, boundary)
}

/// Operators after `0..=steps` applications of the rule.
pub fn evolve_finite(rule: &FiniteRule, op: &FiniteOperator, steps: usize) -> Vec<FiniteOperator> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(op.clone());
    for _ in 0..steps {
        let next = rule.apply(out.last().unwrap());
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mirror {
    /// First step at which the operator is a single-site Pauli on the
    /// mirrored site.
    At {
        step: usize,
        letter: Pauli,
    },
    NotMirroredWithin(usize),
}

/// Searches up to `2N + 2` steps for the evolved single-site Pauli to land,
/// again single-site, at site `N - 1 - site`.
pub fn mirror_time(
    rule: &FiniteRule,
    site: usize,
    letter: Pauli,
) -> Result<Mirror, FiniteChainError> {
    if rule.boundary != Boundary::Open {
        return Err(FiniteChainError::RequiresOpenBoundary);
    }
    if site >= rule.sites {
        return Err(FiniteChainError::SiteOutOfRange {
            site,
            sites: rule.sites,
        });
    }
    let cap = 2 * rule.sites + 2;
    let target = rule.sites - 1 - site;
    let mut op = FiniteOperator::single(rule.sites, site, letter);
    for step in 1..=cap {
        op = rule.apply(&op);
        if op.weight() == 1 && op.letter(target) != Pauli::I {
            return Ok(Mirror::At {
                step,
                letter: op.letter(target),
            });
        }
    }
    Ok(Mirror::NotMirroredWithin(cap))
}

/// Contiguous block of sites on a ring, possibly wrapping past `N - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub start: usize,
    pub len: usize,
}

impl Region {
    pub fn new(start: usize, len: usize) -> Self {
        Self { start, len }
    }

    pub fn sites(&self, ring: usize) -> Vec<usize> {
        (0..self.len).map(|k| (self.start + k) % ring).collect()
    }
}

/// Entanglement entropy (in ebits) of a region for a stabilizer state given
/// by `N` independent commuting generators on `N` sites:
/// `rank(G restricted to the region) - |region|`.
pub fn stabilizer_entropy(
    generators: &[FiniteOperator],
    region: &[usize],
) -> Result<u64, FiniteChainError> {
    let sites = generators.first().map_or(0, FiniteOperator::sites);
    for (i, a) in generators.iter().enumerate() {
        for (j, b) in generators.iter().enumerate().skip(i + 1) {
            if a.anticommutes_with(b) {
                return Err(FiniteChainError::GeneratorsDoNotCommute(i, j));
            }
        }
    }
    let mut g = BitMatrix::new(2 * sites);
    for op in generators {
        g.push_row((0..sites).flat_map(|k| {
            let (x, z) = op.letter(k).bits();
            [x.then_some(k), z.then_some(sites + k)]
                .into_iter()
                .flatten()
        }));
    }
    let rank = g.rank();
    if rank < sites || generators.len() != sites {
        return Err(FiniteChainError::NotPure { rank, sites });
    }
    let cols: Vec<usize> = region.iter().flat_map(|&k| [k, sites + k]).collect();
    Ok((g.select_columns(&cols).rank() - region.len()) as u64)
}

/// Entropy of a region of the `N`-site ring state generated by the wrapped
/// translates of `seed`.
pub fn ring_state_entropy(
    seed: &TIStabilizerState,
    sites: usize,
    region: Region,
) -> Result<u64, FiniteChainError> {
    let floor = 2 * (2 * seed.n() as usize + 1);
    if sites < floor {
        return Err(FiniteChainError::RingTooSmall {
            sites,
            n: seed.n(),
            floor,
        });
    }
    if region.len == 0 || region.len >= sites {
        return Err(FiniteChainError::RegionOutOfRange {
            len: region.len,
            max: sites - 1,
        });
    }
    let generators: Vec<_> = (0..sites)
        .map(|x| {
            FiniteOperator::from_phase_vector(&seed.generator(x as i64), sites, Boundary::Ring)
        })
        .collect();
    stabilizer_entropy(&generators, &region.sites(sites))
}

/// One comparison of the symbolic ebit count against the ring oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub step: u64,
    pub n: u64,
    pub region_len: usize,
    /// `min(2n, |R|)`.
    pub symbolic: u64,
    pub ring: u64,
}

impl OracleCheck {
    pub fn agrees(&self) -> bool {
        self.symbolic == self.ring
    }
}

/// Evolves the all-up state under `t` for `steps` steps and compares
/// `min(2n, |R|)` with the ring entropy for `region_count` region lengths
/// spread over `1..=N - 2n`. Steps whose generator no longer fits the ring
/// floor are skipped.
pub fn oracle_sweep(
    t: &ValidatedCqca,
    sites: usize,
    steps: u64,
    region_count: usize,
) -> Result<Vec<OracleCheck>, FiniteChainError> {
    let mut checks = Vec::new();
    for (step, state) in crate::stabilizer::evolve(&TIStabilizerState::all_up(), t, steps)
        .iter()
        .enumerate()
    {
        let n = state.n();
        if sites < 2 * (2 * n as usize + 1) {
            continue;
        }
        let hi = (sites - 2 * n as usize).min(sites - 1);
        let mut lens: Vec<usize> = (0..region_count)
            .map(|i| 1 + (hi - 1) * i / region_count.saturating_sub(1).max(1))
            .collect();
        lens.dedup();
        for len in lens {
            let region = Region::new(step % sites, len);
            checks.push(OracleCheck {
                step: step as u64,
                n,
                region_len: len,
                symbolic: (2 * n).min(len as u64),
                ring: ring_state_entropy(state, sites, region)?,
            });
        }
    }
    Ok(checks)
}
