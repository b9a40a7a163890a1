//! De Bruijn multigraphs of k-mer counts and sequence reconstruction from a
//! target k-mer distribution.

mod graph;
mod reconstruct;

pub use graph::{balance, connect, eulerian_path, flow_imbalance, DeBruijnMultigraph, EulerianWalk};
pub use reconstruct::{
    counts_from_distribution, error_bound, error_bound_for_edges, min_length_per_kmer, min_length_worst_case,
    reconstruct, worst_case_artificial, worst_case_error_bound, ReconstructionReport,
};
