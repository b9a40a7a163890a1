//! Grid cells of order k and the cells attached to k-mers.
//!
//! Rows count downward from the top edge (y near +1) and columns count
//! rightward from the left edge (x near -1). For a k-mer `a_1..a_k`, letter
//! `a_l` contributes bit `l-1` of both indices: the column bit is set for
//! letters on the right half (G, T) and the row bit for letters on the
//! bottom half (A, T).

use super::dyadic::Dyadic;
use super::trajectory::CgrPoint;
use crate::error::{Error, Result};
use crate::seq::{Kmer, Nucleotide, MAX_K};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellIndices {
    pub k: usize,
    pub i: u64,
    pub j: u64,
}

impl CellIndices {
    pub fn new(k: usize, i: u64, j: u64) -> Result<CellIndices> {
        if !(1..=MAX_K).contains(&k) {
            return Err(Error::OrderOutOfRange { k, min: 1, max: MAX_K });
        }
        let side = 1u128 << k;
        if i as u128 >= side || j as u128 >= side {
            return Err(Error::CellOutOfRange { k, i, j });
        }
        Ok(CellIndices { k, i, j })
    }

    pub fn side(&self) -> u64 {
        1u64 << self.k
    }
}

/// Exact center `(x_j, y_i)` of grid cell `(i, j)` of order `k`.
pub fn cell_center(k: usize, i: u64, j: u64) -> Result<CgrPoint> {
    let c = CellIndices::new(k, i, j)?;
    let side = 1i128 << c.k;
    let x = Dyadic::new(2 * c.j as i128 + 1 - side, c.k as u32);
    let y = Dyadic::new(side - 1 - 2 * c.i as i128, c.k as u32);
    Ok(CgrPoint::from_exact(x, y))
}

/// Grid cell whose interior is the CGR cell of `w`.
pub fn kmer_cell_indices(w: &Kmer) -> CellIndices {
    let (mut i, mut j) = (0u64, 0u64);
    for (l, a) in w.letters().enumerate() {
        i |= a.row_bit() << l;
        j |= a.column_bit() << l;
    }
    CellIndices { k: w.len(), i, j }
}

/// Inverse of [`kmer_cell_indices`].
pub fn cell_indices_to_kmer(c: &CellIndices) -> Result<Kmer> {
    let c = CellIndices::new(c.k, c.i, c.j)?;
    let letters: Vec<Nucleotide> = (0..c.k).map(|l| Nucleotide::from_cell_bits(c.i >> l, c.j >> l)).collect();
    Kmer::from_letters(&letters)
}

/// An axis-aligned box with dyadic corners. Whether the boundary belongs to
/// the box is decided by the query used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellBox {
    pub x_lo: Dyadic,
    pub x_hi: Dyadic,
    pub y_lo: Dyadic,
    pub y_hi: Dyadic,
}

impl CellBox {
    fn around(center: (Dyadic, Dyadic), half_side: Dyadic) -> CellBox {
        CellBox {
            x_lo: center.0 - half_side,
            x_hi: center.0 + half_side,
            y_lo: center.1 - half_side,
            y_hi: center.1 + half_side,
        }
    }

    /// Strict interior membership.
    pub fn contains_open(&self, x: Dyadic, y: Dyadic) -> bool {
        self.x_lo < x && x < self.x_hi && self.y_lo < y && y < self.y_hi
    }

    pub fn on_boundary(&self, x: Dyadic, y: Dyadic) -> bool {
        let inside_closed = self.x_lo <= x && x <= self.x_hi && self.y_lo <= y && y <= self.y_hi;
        inside_closed && !self.contains_open(x, y)
    }

    /// Closed containment of `other` in `self`.
    pub fn contains_box(&self, other: &CellBox) -> bool {
        self.x_lo <= other.x_lo && other.x_hi <= self.x_hi && self.y_lo <= other.y_lo && other.y_hi <= self.y_hi
    }
}

/// Box of the CGR cell of `w`: centered at its last chaos-game point, side `2^(1-k)`.
pub fn kmer_cell_box(w: &Kmer) -> CellBox {
    let (mut nx, mut ny) = (0i128, 0i128);
    for (l, a) in w.letters().enumerate() {
        let (cx, cy) = a.corner();
        nx += (cx as i128) << l;
        ny += (cy as i128) << l;
    }
    let k = w.len() as u32;
    CellBox::around((Dyadic::new(nx, k), Dyadic::new(ny, k)), Dyadic::new(1, k))
}

/// Box of grid cell `(i, j)` of order `k`.
pub fn grid_cell_box(c: &CellIndices) -> Result<CellBox> {
    let center = cell_center(c.k, c.i, c.j)?.xy();
    Ok(CellBox::around(center, Dyadic::new(1, c.k as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn km(s: &str) -> Kmer {
        s.parse().unwrap()
    }

    fn d(num: i128, exp: u32) -> Dyadic {
        Dyadic::new(num, exp)
    }

    /// Index formula in signed-corner form: j = (2^k - 1 + Σ x_l 2^(l-1)) / 2, likewise i with -y.
    fn index_formula(w: &Kmer) -> (u64, u64) {
        let k = w.len() as i64;
        let (mut sx, mut sy) = (0i64, 0i64);
        for (l, a) in w.letters().enumerate() {
            let (x, y) = a.corner();
            sx += (x as i64) << l;
            sy += (y as i64) << l;
        }
        let full = (1i64 << k) - 1;
        assert_eq!((full + sx) % 2, 0);
        (((full - sy) / 2) as u64, ((full + sx) / 2) as u64)
    }

    #[test]
    fn center_examples() {
        assert_eq!(cell_center(1, 0, 0).unwrap().xy(), (d(-1, 1), d(1, 1)));
        assert_eq!(cell_center(1, 1, 1).unwrap().xy(), (d(1, 1), d(-1, 1)));
        assert_eq!(cell_center(2, 0, 0).unwrap().xy(), (d(-3, 2), d(3, 2)));
        assert!(cell_center(2, 4, 0).is_err());
    }

    #[test]
    fn cell_index_examples() {
        let g = kmer_cell_indices(&km("G"));
        assert_eq!((g.i, g.j), (0, 1));
        for k in 1..=8 {
            let c = kmer_cell_indices(&km(&"A".repeat(k)));
            assert_eq!((c.i, c.j), ((1 << k) - 1, 0));
        }
        let gc = kmer_cell_indices(&km("GC"));
        assert_eq!((gc.k, gc.i, gc.j), (2, 0, 1));
    }

    #[test]
    fn bit_construction_agrees_with_index_formula() {
        for k in 1..=6 {
            for idx in 0..(1u64 << (2 * k)) {
                let w = Kmer::from_index(idx, k).unwrap();
                let c = kmer_cell_indices(&w);
                assert_eq!((c.i, c.j), index_formula(&w), "{w}");
            }
        }
    }

    #[test]
    fn inverse_examples_and_exhaustive_roundtrip() {
        assert_eq!(cell_indices_to_kmer(&CellIndices::new(2, 0, 1).unwrap()).unwrap().to_string(), "GC");
        assert_eq!(cell_indices_to_kmer(&CellIndices::new(1, 1, 0).unwrap()).unwrap().to_string(), "A");
        for idx in 0..64u64 {
            let w = Kmer::from_index(idx, 3).unwrap();
            assert_eq!(cell_indices_to_kmer(&kmer_cell_indices(&w)).unwrap(), w);
        }
        assert!(CellIndices::new(3, 8, 0).is_err());
    }

    #[test]
    fn kmer_box_equals_grid_box() {
        for idx in 0..256u64 {
            let w = Kmer::from_index(idx, 4).unwrap();
            assert_eq!(kmer_cell_box(&w), grid_cell_box(&kmer_cell_indices(&w)).unwrap());
        }
    }

    #[test]
    fn box_queries() {
        let b = kmer_cell_box(&km("G"));
        assert_eq!(
            (b.x_lo, b.x_hi, b.y_lo, b.y_hi),
            (Dyadic::ZERO, Dyadic::from_int(1), Dyadic::ZERO, Dyadic::from_int(1))
        );
        assert!(b.contains_open(d(1, 1), d(1, 2)));
        assert!(!b.contains_open(Dyadic::ZERO, d(1, 2)));
        assert!(b.on_boundary(Dyadic::ZERO, d(1, 2)));
        assert!(b.contains_box(&kmer_cell_box(&km("AG"))));
        assert!(!b.contains_box(&kmer_cell_box(&km("GA"))));
    }
}
