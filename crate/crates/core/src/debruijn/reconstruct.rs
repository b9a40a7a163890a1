use serde::Serialize;

use super::graph::{balance, connect, eulerian_path, DeBruijnMultigraph};
use crate::distribution::{empirical_distribution, total_variation_l1, KmerDistribution, MAX_CONSTRAINT_K};
use crate::error::{Error, Result};
use crate::seq::{count_kmers, kmer_space, DnaSequence, KmerFrequencyVector};

/// Outcome of [`reconstruct`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionReport {
    pub k: usize,
    /// Requested length.
    pub n: usize,
    /// Length of the returned sequence.
    pub length: usize,
    /// Edges of the rounded count graph before artificial edges.
    pub edges: u64,
    pub n_artificial_balance: u64,
    pub n_artificial_connect: u64,
    /// L1 distance between the input and the reconstructed k-mer distribution.
    pub achieved_l1: f64,
    /// L1 distance between the input and the rounded counts, normalized.
    pub rounding_l1: f64,
    /// L1 distance between the rounded counts and the reconstructed distribution.
    pub artificial_l1: f64,
    /// `2 n_art / (edges + n_art)`.
    pub bound_l1: f64,
    pub path_start: String,
    pub path_end: String,
    pub used_direct_eulerian_path: bool,
}

impl ReconstructionReport {
    pub fn n_artificial(&self) -> u64 {
        self.n_artificial_balance + self.n_artificial_connect
    }
}

/// `round((n - k + 1) θ_w)` with halves rounded away from zero.
pub fn counts_from_distribution(theta: &KmerDistribution, n: usize) -> Result<KmerFrequencyVector> {
    let k = theta.k();
    if n <= k {
        return Err(Error::TargetTooShort { n, k });
    }
    let scale = (n - k + 1) as f64;
    let counts = theta.theta().iter().map(|&t| (scale * t).round() as u64).collect();
    KmerFrequencyVector::from_counts(k, counts)
}

/// `2 n_art / ((n - k + 1) + n_art)`.
pub fn error_bound(k: usize, n: usize, n_artificial: u64) -> f64 {
    error_bound_for_edges((n - k + 1) as u64, n_artificial)
}

/// `2 n_art / (edges + n_art)`.
pub fn error_bound_for_edges(edges: u64, n_artificial: u64) -> f64 {
    if n_artificial == 0 {
        return 0.0;
    }
    2.0 * n_artificial as f64 / (edges + n_artificial) as f64
}

/// Largest number of balancing edges: `(k - 1) 4^k`.
pub fn worst_case_artificial(k: usize) -> u64 {
    ((k - 1) * kmer_space(k)) as u64
}

/// [`error_bound`] with the worst-case balancing edge count.
pub fn worst_case_error_bound(k: usize, n: usize) -> f64 {
    error_bound(k, n, worst_case_artificial(k))
}

/// Length above which the worst-case bound is below `epsilon`:
/// `2 (k - 1) 4^k / ε + k - 1`.
pub fn min_length_worst_case(k: usize, epsilon: f64) -> f64 {
    2.0 * worst_case_artificial(k) as f64 / epsilon + (k - 1) as f64
}

/// The shorter length `2 · 4^k / ε + k - 1`, without the `k - 1` path factor.
pub fn min_length_per_kmer(k: usize, epsilon: f64) -> f64 {
    2.0 * kmer_space(k) as f64 / epsilon + (k - 1) as f64
}

/// Builds a sequence of length about `n` whose k-mer distribution is close to `theta`.
///
/// Counts are rounded to a multigraph. A multigraph with a single `+1` and a
/// single `-1` vertex that is connected is walked directly. Otherwise it is
/// balanced and connected with artificial edges and an Eulerian cycle is spelled.
pub fn reconstruct(theta: &KmerDistribution, n: usize) -> Result<(DnaSequence, ReconstructionReport)> {
    let k = theta.k();
    if !(2..=MAX_CONSTRAINT_K).contains(&k) {
        return Err(Error::OrderOutOfRange { k, min: 2, max: MAX_CONSTRAINT_K });
    }
    let counts = counts_from_distribution(theta, n)?;
    let edges = counts.total();
    if edges == 0 {
        return Err(Error::ZeroMass);
    }
    let graph = DeBruijnMultigraph::from_counts(&counts)?;

    let delta = graph.imbalance_vector();
    let mut unbalanced = delta.iter().filter(|&&d| d != 0);
    let direct = matches!((unbalanced.next(), unbalanced.next(), unbalanced.next()), (Some(a), Some(b), None) if a * b == -1)
        && graph.is_weakly_connected();

    let (final_graph, n_balance, n_connect) = if direct {
        (graph, 0, 0)
    } else {
        let (balanced, n_balance) = balance(&graph)?;
        let (connected, n_connect) = connect(&balanced);
        (connected, n_balance, n_connect)
    };
    let walk = eulerian_path(&final_graph)?;
    let sequence = walk.spell();

    let rounded = empirical_distribution(&counts)?;
    let achieved = empirical_distribution(&count_kmers(&sequence, k)?)?;
    let report = ReconstructionReport {
        k,
        n,
        length: sequence.len(),
        edges,
        n_artificial_balance: n_balance,
        n_artificial_connect: n_connect,
        achieved_l1: total_variation_l1(&achieved, theta)?,
        rounding_l1: total_variation_l1(&rounded, theta)?,
        artificial_l1: total_variation_l1(&achieved, &rounded)?,
        bound_l1: error_bound_for_edges(edges, n_balance + n_connect),
        path_start: walk.start_kmer().to_string(),
        path_end: walk.end_kmer().to_string(),
        used_direct_eulerian_path: direct,
    };
    Ok((sequence, report))
}
