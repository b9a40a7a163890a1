use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::seq::{check_dense_order, kmer_space, DnaSequence, Kmer, KmerFrequencyVector, Nucleotide};

/// Multigraph on (k-1)-mers where k-mer `w` is an edge `prefix(w) → suffix(w)`
/// with multiplicity `counts[idx(w)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnMultigraph {
    k: usize,
    counts: Vec<u64>,
}

impl DeBruijnMultigraph {
    pub fn new(k: usize, counts: Vec<u64>) -> Result<DeBruijnMultigraph> {
        if k < 2 {
            return Err(Error::OrderOutOfRange { k, min: 2, max: crate::seq::MAX_DENSE_K });
        }
        check_dense_order(k)?;
        if counts.len() != kmer_space(k) {
            return Err(Error::DimensionMismatch { expected: kmer_space(k), found: counts.len() });
        }
        Ok(DeBruijnMultigraph { k, counts })
    }

    pub fn from_counts(f: &KmerFrequencyVector) -> Result<DeBruijnMultigraph> {
        DeBruijnMultigraph::new(f.k(), f.counts().to_vec())
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

    pub fn multiplicity(&self, w: &Kmer) -> u64 {
        self.counts[w.index() as usize]
    }

    pub fn num_edges(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn num_vertices(&self) -> usize {
        kmer_space(self.k - 1)
    }

    #[inline]
    fn suffix(&self, edge: usize) -> usize {
        edge % self.num_vertices()
    }

    /// Out-degree minus in-degree per vertex, dense in index order.
    pub fn imbalance_vector(&self) -> Vec<i64> {
        let mut delta = vec![0i64; self.num_vertices()];
        for (e, &c) in self.counts.iter().enumerate().filter(|(_, c)| **c > 0) {
            delta[e >> 2] += c as i64;
            delta[self.suffix(e)] -= c as i64;
        }
        delta
    }

    /// Vertices with at least one incident edge.
    pub fn support(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        for (e, _) in self.counts.iter().enumerate().filter(|(_, c)| **c > 0) {
            seen[e >> 2] = true;
            seen[self.suffix(e)] = true;
        }
        seen
    }

    /// Adds `times` copies of the path from `from` to `to` that spells
    /// `from·to`, i.e. the `k-1` k-mers at offsets `0..k-1` of that word.
    /// Returns the number of edges added.
    pub fn add_path(&mut self, from: usize, to: usize, times: u64) -> u64 {
        let vertices = self.num_vertices() as u64;
        let word = (from as u64) * vertices + to as u64;
        let steps = self.k - 1;
        for offset in 0..steps {
            // k-mer starting at `offset` in a word of 2(k-1) letters.
            let shift = 2 * (steps - 1 - offset);
            let edge = (word >> shift) & (kmer_space(self.k) as u64 - 1);
            self.counts[edge as usize] += times;
        }
        times * steps as u64
    }

    /// Weak components of the support; each is listed by its smallest vertex.
    pub fn component_representatives(&self) -> Vec<usize> {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (e, _) in self.counts.iter().enumerate().filter(|(_, c)| **c > 0) {
            let (a, b) = (find(&mut parent, e >> 2), find(&mut parent, self.suffix(e)));
            if a != b {
                // Keep the smaller vertex as root so roots are representatives.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        let support = self.support();
        let mut reps: Vec<usize> = (0..n).filter(|&v| support[v] && find(&mut parent, v) == v).collect();
        reps.sort_unstable();
        reps
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.component_representatives().len() <= 1
    }
}

fn vertex_kmer(k: usize, v: usize) -> Kmer {
    Kmer::from_index(v as u64, k - 1).expect("vertex index in range")
}

/// Nonzero-degree vertices mapped to out-degree minus in-degree.
pub fn flow_imbalance(g: &DeBruijnMultigraph) -> BTreeMap<Kmer, i64> {
    let support = g.support();
    g.imbalance_vector()
        .into_iter()
        .enumerate()
        .filter(|&(v, _)| support[v])
        .map(|(v, d)| (vertex_kmer(g.k, v), d))
        .collect()
}

/// Adds paths from deficit vertices to surplus vertices until every vertex
/// balances. Surplus and deficit vertices are paired in index order.
pub fn balance(g: &DeBruijnMultigraph) -> Result<(DeBruijnMultigraph, u64)> {
    let delta = g.imbalance_vector();
    let total: i64 = delta.iter().sum();
    if total != 0 {
        return Err(Error::InconsistentImbalance(total));
    }
    let mut out = g.clone();
    let mut surplus: Vec<(usize, u64)> =
        delta.iter().enumerate().filter(|(_, d)| **d > 0).map(|(v, &d)| (v, d as u64)).collect();
    let mut deficit: Vec<(usize, u64)> =
        delta.iter().enumerate().filter(|(_, d)| **d < 0).map(|(v, &d)| (v, (-d) as u64)).collect();
    let mut added = 0;
    let (mut i, mut j) = (0, 0);
    while i < surplus.len() && j < deficit.len() {
        let units = surplus[i].1.min(deficit[j].1);
        added += out.add_path(deficit[j].0, surplus[i].0, units);
        surplus[i].1 -= units;
        deficit[j].1 -= units;
        if surplus[i].1 == 0 {
            i += 1;
        }
        if deficit[j].1 == 0 {
            j += 1;
        }
    }
    Ok((out, added))
}

/// Joins the components of a balanced graph with one cycle through their
/// smallest vertices, taken in index order.
pub fn connect(g: &DeBruijnMultigraph) -> (DeBruijnMultigraph, u64) {
    let reps = g.component_representatives();
    let mut out = g.clone();
    if reps.len() <= 1 {
        return (out, 0);
    }
    let mut added = 0;
    for (i, &from) in reps.iter().enumerate() {
        let to = reps[(i + 1) % reps.len()];
        added += out.add_path(from, to, 1);
    }
    (out, added)
}

/// An Eulerian walk given by its start vertex and edge indices in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianWalk {
    pub k: usize,
    pub start: usize,
    pub edges: Vec<u64>,
}

impl EulerianWalk {
    pub fn start_kmer(&self) -> Kmer {
        vertex_kmer(self.k, self.start)
    }

    pub fn end_kmer(&self) -> Kmer {
        let end = match self.edges.last() {
            Some(&e) => (e as usize) % kmer_space(self.k - 1),
            None => self.start,
        };
        vertex_kmer(self.k, end)
    }

    pub fn edge_kmers(&self) -> impl Iterator<Item = Kmer> + '_ {
        self.edges.iter().map(|&e| Kmer::from_index(e, self.k).expect("edge index in range"))
    }

    /// The start vertex followed by the last letter of every edge.
    pub fn spell(&self) -> DnaSequence {
        let mut seq: DnaSequence = self.start_kmer().to_sequence();
        for &e in &self.edges {
            seq.push(Nucleotide::from_code((e & 3) as u8));
        }
        seq
    }
}

/// Walks every edge once, taking the smallest available next letter.
///
/// A balanced graph yields a cycle from its smallest vertex with edges; a
/// graph with one `+1` and one `-1` vertex yields a path between them.
pub fn eulerian_path(g: &DeBruijnMultigraph) -> Result<EulerianWalk> {
    let delta = g.imbalance_vector();
    let sources: Vec<usize> = delta.iter().enumerate().filter(|(_, d)| **d != 0).map(|(v, _)| v).collect();
    let start = match sources.as_slice() {
        [] => match g.support().iter().position(|&s| s) {
            Some(v) => v,
            None => return Err(Error::NotEulerian("graph has no edges".into())),
        },
        &[a, b] if delta[a] == 1 && delta[b] == -1 => a,
        &[a, b] if delta[a] == -1 && delta[b] == 1 => b,
        _ => return Err(Error::NotEulerian(format!("{} unbalanced vertices", sources.len()))),
    };

    let vertices = g.num_vertices();
    let mut remaining = g.counts.clone();
    let mut next_letter = vec![0u8; vertices];
    let total = g.num_edges() as usize;
    let mut stack: Vec<usize> = Vec::with_capacity(total + 1);
    let mut walk: Vec<usize> = Vec::with_capacity(total + 1);
    stack.push(start);
    while let Some(&v) = stack.last() {
        let mut moved = false;
        while next_letter[v] < 4 {
            let e = v * 4 + next_letter[v] as usize;
            if remaining[e] > 0 {
                remaining[e] -= 1;
                stack.push(e % vertices);
                moved = true;
                break;
            }
            next_letter[v] += 1;
        }
        if !moved {
            walk.push(v);
            stack.pop();
        }
    }
    if walk.len() != total + 1 {
        return Err(Error::NotEulerian("edges span more than one component".into()));
    }
    walk.reverse();
    let edges = walk.windows(2).map(|p| (p[0] * 4 + p[1] % 4) as u64).collect();
    Ok(EulerianWalk { k: g.k, start, edges })
}
