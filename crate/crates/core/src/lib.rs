//! Chaos game representations of DNA, frequency matrices, k-mer spectra and
//! reconstruction of sequences from k-mer distributions.
//!
//! The [`seq`] module holds the alphabet and k-mer machinery, [`cgr`] the
//! geometry, [`distribution`] the marginal-consistent distributions and their
//! sampler, [`debruijn`] the reconstruction and [`imaging`] the renderers.

pub mod cgr;
pub mod debruijn;
pub mod distribution;
pub mod error;
pub mod imaging;
pub mod seq;

pub use cgr::{
    cgr_trajectory, fcgr_count, fcgr_grid, fcgr_kronecker, fcgr_to_frequency_vector, symmetry_for_permutation,
    CgrPoint, CgrTrajectory, FcgrMatrix, Symmetry,
};
pub use debruijn::{reconstruct, DeBruijnMultigraph, ReconstructionReport};
pub use distribution::{
    empirical_distribution, hit_and_run_sample, marginal_residual, total_variation_l1, ConstraintSystem,
    KmerDistribution,
};
pub use error::{Error, Result};
pub use imaging::{render_cgr, render_fcgr, write_pgm, GrayImage, Scale};
pub use seq::{
    apply_permutation, count_kmers, occurrences, DnaSequence, Kmer, KmerFrequencyVector, LetterPermutation, Nucleotide,
};
