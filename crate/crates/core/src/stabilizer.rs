//! Pure translation-invariant stabilizer states.
//!
//! A state is given by one generator seed `xi`; its stabilizer group is
//! generated by all lattice translates of `w(xi)`. The seed must be
//! reflection-symmetric with coprime components, and its half-length `n`
//! (the degree of the centered seed) fixes the entanglement: `n` ebits across
//! any single cut, `min(2n, L)` between a block of `L` sites and the rest.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::automaton::ValidatedCqca;
use crate::laurent::LaurentPoly;
use crate::phase_space::{symplectic_form, Pauli, PhaseVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("NotReflectionSymmetric: generator {0} is not reflection-symmetric (odd-length requirement)")]
    NotReflectionSymmetric(PhaseVector),
    #[error("CommonDivisor: generator components share the divisor {0}")]
    CommonDivisor(LaurentPoly),
    #[error("CenterIdentity: the center letter of the generator is the identity")]
    CenterIdentity,
    #[error("SingleLetterType: only the letter {0:?} occurs; two distinct non-identity letters are required")]
    SingleLetterType(Pauli),
    #[error("rate estimation needs at least 16 steps, got {0}")]
    HorizonTooShort(u64),
}

impl StateError {
    pub fn name(&self) -> &'static str {
        match self {
            StateError::NotReflectionSymmetric(_) => "NotReflectionSymmetric",
            StateError::CommonDivisor(_) => "CommonDivisor",
            StateError::CenterIdentity => "CenterIdentity",
            StateError::SingleLetterType(_) => "SingleLetterType",
            StateError::HorizonTooShort(_) => "HorizonTooShort",
        }
    }
}

/// A valid generator seed, centered at site 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TIStabilizerState {
    xi: PhaseVector,
    n: u64,
}

impl TIStabilizerState {
    /// The all-spins-up product state, generated by `Z` on every site.
    pub fn all_up() -> Self {
        Self {
            xi: PhaseVector::single(Pauli::Z, 0),
            n: 0,
        }
    }

    /// Validates a seed. A seed centered elsewhere is translated to site 0,
    /// which describes the same state.
    pub fn new(v: &PhaseVector) -> Result<Self, StateError> {
        let Some((lo, hi)) = v.support() else {
            return Err(StateError::CenterIdentity);
        };
        if (lo + hi).rem_euclid(2) != 0 {
            return Err(StateError::NotReflectionSymmetric(v.clone()));
        }
        let xi = v.shift(-(lo + hi) / 2);
        if !xi.xi_plus.is_reflection_symmetric(0) || !xi.xi_minus.is_reflection_symmetric(0) {
            return Err(StateError::NotReflectionSymmetric(v.clone()));
        }
        if xi.letter_at(0) == Pauli::I {
            return Err(StateError::CenterIdentity);
        }
        let n = ((hi - lo) / 2) as u64;
        if n > 0 {
            let mut letters = (-(n as i64)..=n as i64)
                .map(|k| xi.letter_at(k))
                .filter(|&l| l != Pauli::I);
            let first = letters.next().expect("center is not the identity");
            if letters.all(|l| l == first) {
                return Err(StateError::SingleLetterType(first));
            }
        }
        let gcd = xi
            .xi_plus
            .gcd(&xi.xi_minus)
            .expect("seed is not the identity");
        if !gcd.is_one() {
            return Err(StateError::CommonDivisor(gcd));
        }
        Ok(Self { xi, n })
    }

    pub fn xi(&self) -> &PhaseVector {
        &self.xi
    }

    /// Half-length: the generator spans `2n + 1` sites.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn generator_length(&self) -> u64 {
        2 * self.n + 1
    }

    /// Generator centered at site `x`.
    pub fn generator(&self, x: i64) -> PhaseVector {
        self.xi.shift(x)
    }
}

impl fmt::Display for TIStabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.xi.fmt(f)
    }
}

pub fn validate_state(v: &PhaseVector) -> Result<TIStabilizerState, StateError> {
    TIStabilizerState::new(v)
}

/// States after `0..=steps` applications of `t`.
pub fn evolve(s: &TIStabilizerState, t: &ValidatedCqca, steps: u64) -> Vec<TIStabilizerState> {
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(s.clone());
    let mut xi = s.xi.clone();
    for _ in 0..steps {
        xi = t.apply(&xi);
        out.push(
            TIStabilizerState::new(&xi)
                .expect("valid automata map pure translation-invariant states to valid states"),
        );
    }
    out
}

/// Ebits across any single cut.
pub fn bipartite_entanglement(s: &TIStabilizerState) -> u64 {
    s.n
}

/// Ebits between a block of `block_len` sites and the rest of the chain.
pub fn tripartite_entanglement(s: &TIStabilizerState, block_len: u64) -> u64 {
    (2 * s.n).min(block_len)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrajectoryRow {
    pub step: u64,
    pub n: u64,
    pub e_bi: u64,
    pub e_tri: Option<u64>,
}

pub fn entanglement_trajectory(
    t: &ValidatedCqca,
    s: &TIStabilizerState,
    steps: u64,
    block_len: Option<u64>,
) -> Vec<TrajectoryRow> {
    evolve(s, t, steps)
        .iter()
        .enumerate()
        .map(|(step, state)| TrajectoryRow {
            step: step as u64,
            n: state.n,
            e_bi: bipartite_entanglement(state),
            e_tri: block_len.map(|l| tripartite_entanglement(state, l)),
        })
        .collect()
}

/// `t,n,E_bi,E_tri` CSV, `E_tri` left empty when no block length was given.
pub fn trajectory_csv(rows: &[TrajectoryRow]) -> String {
    let mut out = String::from("t,n,E_bi,E_tri\n");
    for r in rows {
        let tri = r.e_tri.map(|e| e.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{}", r.step, r.n, r.e_bi, tri).unwrap();
    }
    out
}

/// Predicted and measured entanglement generation rate, in ebits per step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RateEstimate {
    pub predicted: u64,
    /// `n(T) - n(T/2)`.
    pub growth: i64,
    /// `T - T/2`.
    pub span: u64,
}

impl RateEstimate {
    pub fn empirical(&self) -> f64 {
        self.growth as f64 / self.span as f64
    }
}

impl fmt::Display for RateEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "predicted={} empirical={}/{}={:.4}",
            self.predicted,
            self.growth,
            self.span,
            self.empirical()
        )
    }
}

/// Two-point slope of `n` over the second half of a `horizon`-step run.
pub fn asymptotic_rate(
    t: &ValidatedCqca,
    s: &TIStabilizerState,
    horizon: u64,
) -> Result<RateEstimate, StateError> {
    if horizon < 16 {
        return Err(StateError::HorizonTooShort(horizon));
    }
    let states = evolve(s, t, horizon);
    let mid = horizon / 2;
    Ok(RateEstimate {
        predicted: t.trace_degree(),
        growth: states[horizon as usize].n as i64 - states[mid as usize].n as i64,
        span: horizon - mid,
    })
}

/// Logical Bell pairs across the cut between sites `cut_bond - 1` and
/// `cut_bond`.
///
/// The `2n` generators straddling the cut are restricted to the right half
/// and paired by symplectic Gram-Schmidt: the first remaining element is
/// paired with the first later element it anticommutes with, and both are
/// eliminated from the rest. Within a pair the restrictions anticommute;
/// across pairs everything commutes.
pub fn extract_logical_pairs(
    s: &TIStabilizerState,
    cut_bond: i64,
) -> Vec<(PhaseVector, PhaseVector)> {
    let n = s.n as i64;
    let mut pool: Vec<PhaseVector> = (cut_bond - n..cut_bond + n)
        .map(|x| s.generator(x).restrict(cut_bond, i64::MAX))
        .collect();
    symplectic_pairs(&mut pool)
}

/// Symplectic Gram-Schmidt; consumes `pool` and returns the pairs found.
pub fn symplectic_pairs(pool: &mut Vec<PhaseVector>) -> Vec<(PhaseVector, PhaseVector)> {
    let mut pairs = Vec::new();
    while !pool.is_empty() {
        let a = pool.remove(0);
        let Some(j) = pool.iter().position(|b| symplectic_form(&a, b)) else {
            continue;
        };
        let b = pool.remove(j);
        for c in pool.iter_mut() {
            let with_a = symplectic_form(c, &a);
            let with_b = symplectic_form(c, &b);
            if with_b {
                *c = c.compose(&a);
            }
            if with_a {
                *c = c.compose(&b);
            }
        }
        pairs.push((a, b));
    }
    pairs
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::automaton::{random_cqca, CqcaMatrix};

    fn obs(s: &str) -> PhaseVector {
        s.parse().unwrap()
    }

    fn state(s: &str) -> TIStabilizerState {
        validate_state(&obs(s)).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(state("XZX@-1").n(), 1);
        assert_eq!(state("Z@0").n(), 0);
        assert_eq!(state("X@0").n(), 0);
        assert!(matches!(
            validate_state(&obs("XX@0")),
            Err(StateError::NotReflectionSymmetric(_))
        ));
        assert_eq!(state("YXXXXXY@-3").n(), 3);
    }

    #[test]
    fn validate_names_each_condition() {
        assert!(matches!(
            validate_state(&obs("XZY@-1")),
            Err(StateError::NotReflectionSymmetric(_))
        ));
        assert_eq!(
            validate_state(&obs("X1X@-1")),
            Err(StateError::CenterIdentity)
        );
        assert_eq!(
            validate_state(&PhaseVector::identity()),
            Err(StateError::CenterIdentity)
        );
        assert_eq!(
            validate_state(&obs("XXX@-1")),
            Err(StateError::SingleLetterType(Pauli::X))
        );
        // X at +-2, Z at +-1, Y at 0: xi_plus = u^-2 + 1 + u^2 = (u^-1 + 1 + u)^2,
        // xi_minus = u^-1 + 1 + u, so the common divisor is 1 + u + u^2.
        assert_eq!(
            validate_state(&obs("XZYZX@-2")),
            Err(StateError::CommonDivisor("1 + u + u^2".parse().unwrap()))
        );
    }

    #[test]
    fn off_center_seeds_are_translated() {
        let s = state("XZX@5");
        assert_eq!(s.xi(), &obs("XZX@-1"));
    }

    #[test]
    fn evolve_examples() {
        let g = ValidatedCqca::glider();
        let traj = evolve(&TIStabilizerState::all_up(), &g, 2);
        let seeds: Vec<String> = traj.iter().map(|s| s.to_string()).collect();
        assert_eq!(seeds, ["Z@0", "ZXZ@-1", "ZXZXZ@-2"]);
        assert_eq!(traj.iter().map(|s| s.n()).collect::<Vec<_>>(), [0, 1, 2]);

        let f = ValidatedCqca::fractal();
        let traj = evolve(&TIStabilizerState::all_up(), &f, 2);
        let seeds: Vec<String> = traj.iter().map(|s| s.to_string()).collect();
        assert_eq!(seeds, ["Z@0", "X@0", "XYX@-1"]);
        assert_eq!(traj.iter().map(|s| s.n()).collect::<Vec<_>>(), [0, 0, 1]);

        let s = state("YXY@-1");
        assert!(evolve(&s, &ValidatedCqca::identity(), 4)
            .iter()
            .all(|x| *x == s));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(bipartite_entanglement(&state("YXY@-1")), 1);
        assert_eq!(bipartite_entanglement(&TIStabilizerState::all_up()), 0);
        let wide = state("YXXXXXY@-3");
        assert_eq!(bipartite_entanglement(&wide), 3);
        assert_eq!(tripartite_entanglement(&wide, 30), 6);
        assert_eq!(tripartite_entanglement(&wide, 4), 4);
        assert_eq!(tripartite_entanglement(&TIStabilizerState::all_up(), 9), 0);
    }

    #[test]
    fn trajectory_examples() {
        let up = TIStabilizerState::all_up();
        let e = |rows: Vec<TrajectoryRow>| rows.iter().map(|r| r.e_bi).collect::<Vec<_>>();
        assert_eq!(
            e(entanglement_trajectory(
                &ValidatedCqca::glider(),
                &up,
                5,
                None
            )),
            [0, 1, 2, 3, 4, 5]
        );
        assert_eq!(
            e(entanglement_trajectory(
                &ValidatedCqca::fractal(),
                &up,
                3,
                None
            )),
            [0, 0, 1, 2]
        );
        assert_eq!(
            e(entanglement_trajectory(
                &ValidatedCqca::identity(),
                &state("YXY@-1"),
                3,
                None
            )),
            [1, 1, 1, 1]
        );
    }

    #[test]
    fn trajectory_csv_format() {
        let up = TIStabilizerState::all_up();
        let rows = entanglement_trajectory(&ValidatedCqca::glider(), &up, 2, None);
        assert_eq!(
            trajectory_csv(&rows),
            "t,n,E_bi,E_tri\n0,0,0,\n1,1,1,\n2,2,2,\n"
        );
        let rows = entanglement_trajectory(&ValidatedCqca::glider(), &up, 2, Some(3));
        assert_eq!(
            trajectory_csv(&rows),
            "t,n,E_bi,E_tri\n0,0,0,0\n1,1,1,2\n2,2,2,3\n"
        );
    }

    #[test]
    fn rate_examples() {
        let up = TIStabilizerState::all_up();
        let r = asymptotic_rate(&ValidatedCqca::glider(), &up, 200).unwrap();
        assert_eq!((r.predicted, r.growth, r.span), (1, 100, 100));

        let per = CqcaMatrix::new(
            LaurentPoly::zero(),
            LaurentPoly::one(),
            LaurentPoly::one(),
            LaurentPoly::one(),
        )
        .validate()
        .unwrap();
        let r = asymptotic_rate(&per, &state("YXY@-1"), 99).unwrap();
        assert_eq!((r.predicted, r.growth, r.span), (0, 0, 50));

        let r = asymptotic_rate(&ValidatedCqca::fractal(), &up, 256).unwrap();
        assert_eq!(r.predicted, 1);
        assert!((r.empirical() - 1.0).abs() <= 0.1, "{r}");

        assert_eq!(
            asymptotic_rate(&ValidatedCqca::glider(), &up, 15),
            Err(StateError::HorizonTooShort(15))
        );
    }

    #[test]
    fn logical_pairs_examples() {
        let pairs = extract_logical_pairs(&state("ZXZ@-1"), 0);
        assert_eq!(pairs, vec![(obs("Z@0"), obs("XZ@0"))]);
        assert!(symplectic_form(&pairs[0].0, &pairs[0].1));

        assert!(extract_logical_pairs(&TIStabilizerState::all_up(), 3).is_empty());

        let pairs = extract_logical_pairs(&state("YXY@-1"), 0);
        assert_eq!(pairs.len(), 1);
        // brute force: the two restricted generators are Y@0 and XY@0
        assert_eq!(pairs[0], (obs("Y@0"), obs("XY@0")));
        assert!(symplectic_form(&pairs[0].0, &pairs[0].1));
    }

    fn assert_pair_pattern(pairs: &[(PhaseVector, PhaseVector)]) {
        for (i, (a, b)) in pairs.iter().enumerate() {
            assert!(symplectic_form(a, b));
            for (c, d) in &pairs[i + 1..] {
                for x in [a, b] {
                    for y in [c, d] {
                        assert!(!symplectic_form(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn logical_pairs_count_matches_half_length() {
        let up = TIStabilizerState::all_up();
        for seed in 0..40 {
            let t = random_cqca(seed, 4, 2);
            for s in evolve(&up, &t, 3) {
                for cut in [-2, 0, 7] {
                    let pairs = extract_logical_pairs(&s, cut);
                    assert_eq!(pairs.len() as u64, s.n(), "seed {seed} state {s}");
                    assert_pair_pattern(&pairs);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn evolution_preserves_validity(
            seed in any::<u64>(),
            prep in any::<u64>(),
            k in 0u64..=30,
        ) {
            let t = random_cqca(seed, 4, 2);
            let start = evolve(&TIStabilizerState::all_up(), &random_cqca(prep, 3, 1), 1)
                .pop()
                .unwrap();
            let xi = t.pow(k).apply(start.xi());
            prop_assert!(validate_state(&xi).is_ok());
        }
    }

    proptest! {
        #[test]
        fn growth_is_bounded_by_the_neighborhood(seed in any::<u64>(), len in 1usize..6) {
            let t = random_cqca(seed, len, 2);
            let radius = t.matrix().radius();
            let states = evolve(&TIStabilizerState::all_up(), &t, 12);
            for w in states.windows(2) {
                prop_assert!((w[1].n() as i64 - w[0].n() as i64).abs() <= radius);
            }
        }
    }
}
