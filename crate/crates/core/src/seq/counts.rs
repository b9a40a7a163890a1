use std::io::Write;

use super::kmer::{check_order, kmer_space, rolling_indices};
use super::{DnaSequence, Kmer};
use crate::error::{Error, Result};

/// Largest order for which dense `4^k` count vectors are built.
pub const MAX_DENSE_K: usize = 12;

/// Overlapping occurrence counts of every k-mer, stored in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmerFrequencyVector {
    k: usize,
    counts: Vec<u64>,
}

pub(crate) fn check_dense_order(k: usize) -> Result<()> {
    check_order(k)?;
    if k > MAX_DENSE_K {
        return Err(Error::OrderOutOfRange { k, min: 1, max: MAX_DENSE_K });
    }
    Ok(())
}

impl KmerFrequencyVector {
    pub fn zeros(k: usize) -> Result<Self> {
        check_dense_order(k)?;
        Ok(KmerFrequencyVector { k, counts: vec![0; kmer_space(k)] })
    }

    pub fn from_counts(k: usize, counts: Vec<u64>) -> Result<Self> {
        check_dense_order(k)?;
        if counts.len() != kmer_space(k) {
            return Err(Error::DimensionMismatch { expected: kmer_space(k), found: counts.len() });
        }
        Ok(KmerFrequencyVector { k, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    pub fn get(&self, w: &Kmer) -> u64 {
        debug_assert_eq!(w.len(), self.k);
        self.counts[w.index() as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Adds the windows of `seq` to the counts. Sequences shorter than `k` add nothing.
    pub fn accumulate(&mut self, seq: &[super::Nucleotide]) {
        for idx in rolling_indices(seq, self.k) {
            self.counts[idx as usize] += 1;
        }
    }

    /// Component-wise sum of two vectors of the same order.
    pub fn merge(&mut self, other: &KmerFrequencyVector) -> Result<()> {
        if other.k != self.k {
            return Err(Error::DimensionMismatch { expected: self.counts.len(), found: other.counts.len() });
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(())
    }

    /// `(kmer, count)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (Kmer, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(move |(i, &c)| (Kmer::from_index(i as u64, self.k).expect("index in range"), c))
    }

    /// CSV with header `kmer,count`, one row per k-mer in index order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "kmer,count")?;
        for (w, c) in self.iter() {
            writeln!(out, "{w},{c}")?;
        }
        Ok(())
    }
}

/// Sliding-window k-mer counts of `seq`. Requires `|seq| >= k`.
pub fn count_kmers(seq: &DnaSequence, k: usize) -> Result<KmerFrequencyVector> {
    check_dense_order(k)?;
    seq.require_window(k)?;
    let mut v = KmerFrequencyVector::zeros(k)?;
    v.accumulate(seq);
    Ok(v)
}

/// Overlapping occurrences of `w` in `seq`.
pub fn occurrences(seq: &DnaSequence, w: &Kmer) -> Result<u64> {
    seq.require_window(w.len())?;
    let target = w.index();
    Ok(rolling_indices(seq, w.len()).filter(|&i| i == target).count() as u64)
}
