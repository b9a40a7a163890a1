//! Frequency CGR matrices and the three ways of building them.

use std::io::Write;

use super::cell::{cell_indices_to_kmer, kmer_cell_indices, CellIndices};
use crate::error::{Error, Result};
use crate::seq::{check_dense_order, count_kmers, DnaSequence, Kmer, KmerFrequencyVector, Nucleotide};

/// `2^k x 2^k` count matrix stored row-major; row 0 is the top of the square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcgrMatrix {
    k: usize,
    entries: Vec<u64>,
}

impl FcgrMatrix {
    pub fn zeros(k: usize) -> Result<FcgrMatrix> {
        check_dense_order(k)?;
        Ok(FcgrMatrix { k, entries: vec![0; 1 << (2 * k)] })
    }

    pub fn from_entries(k: usize, entries: Vec<u64>) -> Result<FcgrMatrix> {
        check_dense_order(k)?;
        let expected = 1 << (2 * k);
        if entries.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: entries.len() });
        }
        Ok(FcgrMatrix { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn side(&self) -> usize {
        1 << self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.side() + j]
    }

    #[inline]
    fn add(&mut self, i: usize, j: usize, v: u64) {
        let side = self.side();
        self.entries[i * side + j] += v;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.side())
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Header line `k=<k>` followed by one comma-separated line per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "k={}", self.k)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// FCGR by binning chaos-game points into grid cells.
///
/// Point `p_m` for `m >= k` lies strictly inside the cell of the k-mer ending
/// at position `m`, so its cell is read off the last `k` letters with the
/// same bit rule as [`kmer_cell_indices`], updated incrementally. Points
/// `p_0 .. p_{k-1}` sit on grid lines of order `k` and fall in no open cell.
pub fn fcgr_grid(seq: &DnaSequence, k: usize) -> Result<FcgrMatrix> {
    check_dense_order(k)?;
    seq.require_window(k)?;
    let mut m = FcgrMatrix::zeros(k)?;
    let top = k - 1;
    let (mut i, mut j) = (0u64, 0u64);
    for (pos, &a) in seq.iter().enumerate() {
        i = (i >> 1) | (a.row_bit() << top);
        j = (j >> 1) | (a.column_bit() << top);
        if pos + 1 >= k {
            m.add(i as usize, j as usize, 1);
        }
    }
    Ok(m)
}

/// FCGR from one k-mer counting pass scattered to the k-mer cells.
pub fn fcgr_count(seq: &DnaSequence, k: usize) -> Result<FcgrMatrix> {
    let counts = count_kmers(seq, k)?;
    fcgr_from_counts(&counts)
}

/// Scatters a count vector into FCGR layout.
pub fn fcgr_from_counts(counts: &KmerFrequencyVector) -> Result<FcgrMatrix> {
    let mut m = FcgrMatrix::zeros(counts.k())?;
    for (w, c) in counts.iter().filter(|&(_, c)| c > 0) {
        let cell = kmer_cell_indices(&w);
        m.add(cell.i as usize, cell.j as usize, c);
    }
    Ok(m)
}

/// The k-mer at `(i, j)` of the k-fold Kronecker power of `[[C, G], [A, T]]`.
/// The leading letter comes from the most significant bits of `i` and `j`.
pub fn kronecker_kmer(k: usize, i: u64, j: u64) -> Result<Kmer> {
    let c = CellIndices::new(k, i, j)?;
    let letters: Vec<Nucleotide> = (0..k).rev().map(|b| Nucleotide::from_cell_bits(c.i >> b, c.j >> b)).collect();
    Kmer::from_letters(&letters)
}

/// FCGR with the Kronecker-power layout. Agrees with [`fcgr_count`] at `k = 1`
/// and reverses the letter order of every cell otherwise.
pub fn fcgr_kronecker(seq: &DnaSequence, k: usize) -> Result<FcgrMatrix> {
    let counts = count_kmers(seq, k)?;
    let side = 1u64 << k;
    let mut m = FcgrMatrix::zeros(k)?;
    for i in 0..side {
        for j in 0..side {
            let w = kronecker_kmer(k, i, j)?;
            m.add(i as usize, j as usize, counts.get(&w));
        }
    }
    Ok(m)
}

/// Gathers a grid-layout FCGR back into index order.
pub fn fcgr_to_frequency_vector(m: &FcgrMatrix) -> Result<KmerFrequencyVector> {
    let k = m.k();
    let mut counts = vec![0u64; 1 << (2 * k)];
    for (i, row) in m.rows().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            let w = cell_indices_to_kmer(&CellIndices { k, i: i as u64, j: j as u64 })?;
            counts[w.index() as usize] = c;
        }
    }
    KmerFrequencyVector::from_counts(k, counts)
}
