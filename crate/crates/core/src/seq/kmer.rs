//! Fixed-length words packed two bits per letter.
//!
//! The packed integer is the lexicographic index of the word: the first
//! letter occupies the most significant pair of bits, so `AA..A` is 0 and
//! `TT..T` is `4^k - 1`.

use std::fmt;
use std::str::FromStr;

use super::{DnaSequence, Nucleotide};
use crate::error::{Error, Result};

/// Longest word that fits in one 64-bit packed index.
pub const MAX_K: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kmer {
    packed: u64,
    k: u8,
}

#[inline]
pub(crate) fn mask(k: usize) -> u64 {
    if k >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * k)) - 1
    }
}

/// Number of distinct words of length `k`, i.e. `4^k`. Only meaningful for `k < 32`.
#[inline]
pub fn kmer_space(k: usize) -> usize {
    1usize << (2 * k)
}

pub(crate) fn check_order(k: usize) -> Result<()> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { k, min: 1, max: MAX_K })
    }
}

impl Kmer {
    pub fn from_letters(letters: &[Nucleotide]) -> Result<Kmer> {
        check_order(letters.len())?;
        let packed = letters.iter().fold(0u64, |acc, n| (acc << 2) | n.code() as u64);
        Ok(Kmer { packed, k: letters.len() as u8 })
    }

    /// The word with lexicographic index `index` among all words of length `k`.
    pub fn from_index(index: u64, k: usize) -> Result<Kmer> {
        check_order(k)?;
        if index > mask(k) {
            return Err(Error::IndexOutOfRange { index, k });
        }
        Ok(Kmer { packed: index, k: k as u8 })
    }

    /// Base-4 index with `A=0, C=1, G=2, T=3`, most significant letter first.
    #[inline]
    pub fn index(&self) -> u64 {
        self.packed
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.k as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at 0-based position `pos` from the left.
    #[inline]
    pub fn letter(&self, pos: usize) -> Nucleotide {
        debug_assert!(pos < self.len());
        let shift = 2 * (self.len() - 1 - pos);
        Nucleotide::from_code((self.packed >> shift) as u8)
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Nucleotide> + ExactSizeIterator + '_ {
        (0..self.len()).map(move |p| self.letter(p))
    }

    pub fn to_sequence(&self) -> DnaSequence {
        self.letters().collect()
    }

    /// Index of the leading `(k-1)`-mer.
    #[inline]
    pub fn prefix_index(&self) -> u64 {
        self.packed >> 2
    }

    /// Index of the trailing `(k-1)`-mer.
    #[inline]
    pub fn suffix_index(&self) -> u64 {
        self.packed & mask(self.len() - 1)
    }

    pub fn map_letters(&self, f: impl Fn(Nucleotide) -> Nucleotide) -> Kmer {
        let letters: Vec<_> = self.letters().map(f).collect();
        Kmer::from_letters(&letters).expect("length preserved")
    }
}

impl FromStr for Kmer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kmer> {
        let seq: DnaSequence = s.parse()?;
        Kmer::from_letters(&seq)
    }
}

impl fmt::Display for Kmer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.letters() {
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// Rolling packed indices of every length-`k` window of `seq`, in order.
pub(crate) fn rolling_indices(seq: &[Nucleotide], k: usize) -> impl Iterator<Item = u64> + '_ {
    let m = mask(k);
    let mut acc = 0u64;
    seq.iter().enumerate().filter_map(move |(pos, n)| {
        acc = ((acc << 2) | n.code() as u64) & m;
        (pos + 1 >= k).then_some(acc)
    })
}
