//! The dihedral group of the CGR square and its action on trajectories.
//!
//! Each symmetry permutes the four corners and therefore the four letters;
//! a sequence permuted letterwise has the transformed trajectory.

use std::fmt;

use super::cell::CellIndices;
use super::dyadic::Dyadic;
use super::trajectory::{CgrPoint, CgrTrajectory};
use crate::error::{Error, Result};
use crate::seq::{Kmer, LetterPermutation, Nucleotide};

/// Rotations `r^m` are counterclockwise by `m·90°`; `s` reflects across the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    E,
    R,
    R2,
    R3,
    S,
    SR,
    SR2,
    SR3,
}

pub type Matrix2 = [[i8; 2]; 2];

impl Symmetry {
    pub const ALL: [Symmetry; 8] =
        [Symmetry::E, Symmetry::R, Symmetry::R2, Symmetry::R3, Symmetry::S, Symmetry::SR, Symmetry::SR2, Symmetry::SR3];

    pub fn matrix(self) -> Matrix2 {
        match self {
            Symmetry::E => [[1, 0], [0, 1]],
            Symmetry::R => [[0, -1], [1, 0]],
            Symmetry::R2 => [[-1, 0], [0, -1]],
            Symmetry::R3 => [[0, 1], [-1, 0]],
            Symmetry::S => [[1, 0], [0, -1]],
            Symmetry::SR => [[0, -1], [-1, 0]],
            Symmetry::SR2 => [[-1, 0], [0, 1]],
            Symmetry::SR3 => [[0, 1], [1, 0]],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::E => "e",
            Symmetry::R => "r",
            Symmetry::R2 => "r2",
            Symmetry::R3 => "r3",
            Symmetry::S => "s",
            Symmetry::SR => "sr",
            Symmetry::SR2 => "sr2",
            Symmetry::SR3 => "sr3",
        }
    }

    pub fn from_matrix(m: Matrix2) -> Option<Symmetry> {
        Symmetry::ALL.into_iter().find(|h| h.matrix() == m)
    }

    /// `self · other` as matrices: `other` acts first.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        let (a, b) = (self.matrix(), other.matrix());
        let mut m = [[0i8; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Symmetry::from_matrix(m).expect("group is closed")
    }

    pub fn inverse(self) -> Symmetry {
        // Orthogonal, so the inverse is the transpose.
        let m = self.matrix();
        Symmetry::from_matrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]]).expect("group is closed")
    }

    #[inline]
    fn act_int(self, x: i64, y: i64) -> (i64, i64) {
        let m = self.matrix();
        (m[0][0] as i64 * x + m[0][1] as i64 * y, m[1][0] as i64 * x + m[1][1] as i64 * y)
    }

    fn act_dyadic(self, x: Dyadic, y: Dyadic) -> (Dyadic, Dyadic) {
        let m = self.matrix();
        let term = |c: i8, v: Dyadic| match c {
            1 => v,
            -1 => -v,
            _ => Dyadic::ZERO,
        };
        (term(m[0][0], x) + term(m[0][1], y), term(m[1][0], x) + term(m[1][1], y))
    }

    pub fn apply_point(self, p: &CgrPoint) -> CgrPoint {
        let m = self.matrix();
        let x = m[0][0] as f64 * p.x + m[0][1] as f64 * p.y;
        let y = m[1][0] as f64 * p.x + m[1][1] as f64 * p.y;
        CgrPoint { exact: p.exact.map(|(ex, ey)| self.act_dyadic(ex, ey)), x, y }
    }

    /// The letter permutation induced on the corner labels.
    pub fn permutation(self) -> LetterPermutation {
        let image = Nucleotide::ALL.map(|n| {
            let (x, y) = n.corner();
            let (u, v) = self.act_int(x as i64, y as i64);
            Nucleotide::from_corner(u as i8, v as i8).expect("corners map to corners")
        });
        LetterPermutation::from_images(image).expect("symmetry permutes corners")
    }

    /// Grid cell that cell `c` is carried to, via the exact cell centers.
    pub fn map_cell(self, c: &CellIndices) -> CellIndices {
        let side = 1i64 << c.k;
        // Centers scaled by 2^k are odd integers.
        let x = 2 * c.j as i64 + 1 - side;
        let y = side - 1 - 2 * c.i as i64;
        let (u, v) = self.act_int(x, y);
        CellIndices { k: c.k, i: ((side - 1 - v) / 2) as u64, j: ((u + side - 1) / 2) as u64 }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The symmetry whose corner action is `sigma`; only the eight square-symmetric
/// permutations have one.
pub fn symmetry_for_permutation(sigma: &LetterPermutation) -> Result<Symmetry> {
    Symmetry::ALL
        .into_iter()
        .find(|h| h.permutation() == *sigma)
        .ok_or_else(|| Error::UnsupportedPermutation(sigma.to_string()))
}

/// Applies `h` to every point of `t`, keeping order.
pub fn symmetry_apply_trajectory(h: Symmetry, t: &CgrTrajectory) -> CgrTrajectory {
    CgrTrajectory::from_points(t.points().iter().map(|p| h.apply_point(p)).collect())
}

/// The k-mer avoided by `sigma(s)` when `s` avoids `alpha`.
pub fn avoided_kmer_image(sigma: &LetterPermutation, alpha: &Kmer) -> Result<Kmer> {
    symmetry_for_permutation(sigma)?;
    Ok(sigma.apply_kmer(alpha))
}
