//! Space-time diagrams of observable evolution.
//!
//! Row `k` is the observable after `k` steps. Time runs downward in both
//! output formats.

use crate::automaton::ValidatedCqca;
use crate::phase_space::{Pauli, PhaseVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Ascii,
    Ppm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceTimeDiagram {
    rows: Vec<Vec<Pauli>>,
    left: i64,
    right: i64,
}

impl SpaceTimeDiagram {
    /// Evolves `initial` for `steps` steps; the window is the union of all
    /// supports padded by one site on each side.
    pub fn build(t: &ValidatedCqca, initial: &PhaseVector, steps: usize) -> Self {
        let mut observables = Vec::with_capacity(steps + 1);
        observables.push(initial.clone());
        for _ in 0..steps {
            let next = t.apply(observables.last().unwrap());
            observables.push(next);
        }
        Self::from_observables(&observables)
    }

    pub fn from_observables(observables: &[PhaseVector]) -> Self {
        let (lo, hi) = observables
            .iter()
            .filter_map(PhaseVector::support)
            .fold((0, 0), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)));
        let (left, right) = (lo - 1, hi + 1);
        let rows = observables
            .iter()
            .map(|v| (left..=right).map(|k| v.letter_at(k)).collect())
            .collect();
        Self { rows, left, right }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.left, self.right)
    }

    pub fn width(&self) -> usize {
        (self.right - self.left + 1) as usize
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Pauli>] {
        &self.rows
    }

    pub fn cell(&self, step: usize, site: i64) -> Pauli {
        self.rows[step][(site - self.left) as usize]
    }

    pub fn to_ascii(&self) -> String {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&p| ascii_cell(p)).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Binary P6, one pixel per cell.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width(), self.height()).into_bytes();
        out.reserve(3 * self.width() * self.height());
        for row in &self.rows {
            for &p in row {
                out.extend_from_slice(&palette(p));
            }
        }
        out
    }

    pub fn emit(&self, format: DiagramFormat) -> Vec<u8> {
        match format {
            DiagramFormat::Ascii => self.to_ascii().into_bytes(),
            DiagramFormat::Ppm => self.to_ppm(),
        }
    }
}

pub fn ascii_cell(p: Pauli) -> char {
    match p {
        Pauli::I => '.',
        Pauli::X => 'X',
        Pauli::Y => 'Y',
        Pauli::Z => 'Z',
    }
}

/// identity white, X red, Y green, Z blue.
pub fn palette(p: Pauli) -> [u8; 3] {
    match p {
        Pauli::I => [255, 255, 255],
        Pauli::X => [255, 0, 0],
        Pauli::Y => [0, 255, 0],
        Pauli::Z => [0, 0, 255],
    }
}

pub fn build_diagram(t: &ValidatedCqca, initial: &PhaseVector, steps: usize) -> SpaceTimeDiagram {
    SpaceTimeDiagram::build(t, initial, steps)
}

pub fn emit(d: &SpaceTimeDiagram, format: DiagramFormat) -> Vec<u8> {
    d.emit(format)
}
