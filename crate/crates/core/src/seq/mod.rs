//! DNA alphabet, sequences, k-mer indexing and counting, letter permutations and FASTA I/O.

mod counts;
pub mod fasta;
mod kmer;
mod nucleotide;
mod permutation;
mod sequence;

pub use counts::{count_kmers, occurrences, KmerFrequencyVector, MAX_DENSE_K};
pub use fasta::{parse_fasta, write_fasta, FastaReader, FastaRecord, NonAcgtPolicy};
pub use kmer::{kmer_space, Kmer, MAX_K};
pub use nucleotide::Nucleotide;
pub use permutation::{apply_permutation, LetterPermutation};
pub use sequence::DnaSequence;

pub(crate) use counts::check_dense_order;
