//! Empirical k-mer distributions, the marginal-consistency constraints and
//! hit-and-run sampling of distributions satisfying them.

mod constraints;
mod hit_and_run;

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::seq::{check_dense_order, kmer_space, Kmer, KmerFrequencyVector};

pub use constraints::{build_constraints, ConstraintSystem, MAX_CONSTRAINT_K, MIN_CONSTRAINT_K};
pub use hit_and_run::{default_iterations, hit_and_run_sample, HitAndRun, MAX_REDRAWS};

/// Largest |sum - 1| accepted by [`KmerDistribution::new`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Largest |sum - 1| accepted when reading a distribution file; smaller
/// discrepancies are renormalized.
pub const CSV_SUM_TOLERANCE: f64 = 1e-6;

/// Default tolerance for calling a distribution marginal-consistent.
pub const MARGINAL_TOLERANCE: f64 = 1e-9;

/// A probability vector over the `4^k` k-mers, in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct KmerDistribution {
    k: usize,
    theta: Vec<f64>,
}

impl KmerDistribution {
    /// Validates nonnegativity and a unit sum within [`SUM_TOLERANCE`].
    pub fn new(k: usize, theta: Vec<f64>) -> Result<KmerDistribution> {
        check_shape(k, theta.len())?;
        check_entries(&theta)?;
        let sum: f64 = theta.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("components sum to {sum}")));
        }
        Ok(KmerDistribution { k, theta })
    }

    /// Normalizes nonnegative weights to unit sum.
    pub fn from_weights(k: usize, weights: Vec<f64>) -> Result<KmerDistribution> {
        check_shape(k, weights.len())?;
        check_entries(&weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::ZeroMass);
        }
        Ok(KmerDistribution { k, theta: weights.into_iter().map(|w| w / sum).collect() })
    }

    pub fn uniform(k: usize) -> Result<KmerDistribution> {
        check_dense_order(k)?;
        let n = kmer_space(k);
        Ok(KmerDistribution { k, theta: vec![1.0 / n as f64; n] })
    }

    pub fn point_mass(w: &Kmer) -> Result<KmerDistribution> {
        check_dense_order(w.len())?;
        let mut theta = vec![0.0; kmer_space(w.len())];
        theta[w.index() as usize] = 1.0;
        Ok(KmerDistribution { k: w.len(), theta })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn into_theta(self) -> Vec<f64> {
        self.theta
    }

    pub fn get(&self, w: &Kmer) -> f64 {
        debug_assert_eq!(w.len(), self.k);
        self.theta[w.index() as usize]
    }

    /// `kmer,theta` rows in index order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "kmer,theta")?;
        for (idx, t) in self.theta.iter().enumerate() {
            writeln!(out, "{},{}", Kmer::from_index(idx as u64, self.k)?, t)?;
        }
        Ok(())
    }

    /// Reads `kmer,theta` rows. Rows may come in any order and missing k-mers
    /// get probability zero. The second value is true when the sum was off by
    /// more than [`SUM_TOLERANCE`] and the vector was renormalized.
    pub fn read_csv<R: BufRead>(input: R) -> Result<(KmerDistribution, bool)> {
        let mut k = None;
        let mut theta: Vec<Option<f64>> = Vec::new();
        for (n, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = n + 1;
            let line = line.trim();
            if line.is_empty() || (n == 0 && line.eq_ignore_ascii_case("kmer,theta")) {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: lineno, message };
            let (word, value) = line.split_once(',').ok_or_else(|| parse_err("expected kmer,theta".into()))?;
            let w: Kmer = word.trim().parse().map_err(|e: Error| parse_err(e.to_string()))?;
            let v: f64 = value.trim().parse().map_err(|_| parse_err(format!("bad number {value:?}")))?;
            match k {
                None => {
                    check_dense_order(w.len())?;
                    k = Some(w.len());
                    theta = vec![None; kmer_space(w.len())];
                }
                Some(k) if k != w.len() => return Err(parse_err(format!("k-mer {w} has length other than {k}"))),
                _ => {}
            }
            let slot = &mut theta[w.index() as usize];
            if slot.is_some() {
                return Err(parse_err(format!("duplicate k-mer {w}")));
            }
            *slot = Some(v);
        }
        let k = k.ok_or_else(|| Error::InvalidDistribution("no rows".into()))?;
        let theta: Vec<f64> = theta.into_iter().map(|v| v.unwrap_or(0.0)).collect();
        check_entries(&theta)?;
        let sum: f64 = theta.iter().sum();
        if (sum - 1.0).abs() > CSV_SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("components sum to {sum}")));
        }
        let renormalized = (sum - 1.0).abs() > SUM_TOLERANCE;
        Ok((KmerDistribution::from_weights(k, theta)?, renormalized))
    }
}

fn check_shape(k: usize, len: usize) -> Result<()> {
    check_dense_order(k)?;
    if len != kmer_space(k) {
        return Err(Error::DimensionMismatch { expected: kmer_space(k), found: len });
    }
    Ok(())
}

fn check_entries(theta: &[f64]) -> Result<()> {
    match theta.iter().position(|t| !t.is_finite() || *t < 0.0) {
        Some(i) => Err(Error::InvalidDistribution(format!("component {i} is {}", theta[i]))),
        None => Ok(()),
    }
}

/// Counts divided by their total.
pub fn empirical_distribution(f: &KmerFrequencyVector) -> Result<KmerDistribution> {
    let total = f.total();
    if total == 0 {
        return Err(Error::ZeroMass);
    }
    let theta = f.counts().iter().map(|&c| c as f64 / total as f64).collect();
    Ok(KmerDistribution { k: f.k(), theta })
}

/// For each (k-1)-mer `v`, the mass of k-mers starting with `v` minus the mass
/// of k-mers ending with `v`.
pub fn marginal_residual(theta: &KmerDistribution) -> Result<Vec<f64>> {
    let k = theta.k();
    if k < 2 {
        return Err(Error::OrderOutOfRange { k, min: 2, max: crate::seq::MAX_DENSE_K });
    }
    let vertices = kmer_space(k - 1);
    let mut r = vec![0.0; vertices];
    for (idx, &t) in theta.theta().iter().enumerate() {
        r[idx >> 2] += t;
        r[idx % vertices] -= t;
    }
    Ok(r)
}

/// Largest absolute entry of [`marginal_residual`].
pub fn max_marginal_residual(theta: &KmerDistribution) -> Result<f64> {
    Ok(marginal_residual(theta)?.iter().fold(0.0, |m, r| m.max(r.abs())))
}

pub fn is_marginal_consistent(theta: &KmerDistribution, tolerance: f64) -> Result<bool> {
    Ok(max_marginal_residual(theta)? <= tolerance)
}

/// L1 distance between two distributions of the same order.
pub fn total_variation_l1(a: &KmerDistribution, b: &KmerDistribution) -> Result<f64> {
    if a.k() != b.k() {
        return Err(Error::DimensionMismatch { expected: a.theta.len(), found: b.theta.len() });
    }
    Ok(a.theta.iter().zip(&b.theta).map(|(x, y)| (x - y).abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::{count_kmers, DnaSequence};

    fn seq(s: &str) -> DnaSequence {
        s.parse().unwrap()
    }

    fn km(s: &str) -> Kmer {
        s.parse().unwrap()
    }

    fn empirical(s: &str, k: usize) -> KmerDistribution {
        empirical_distribution(&count_kmers(&seq(s), k).unwrap()).unwrap()
    }

    #[test]
    fn empirical_examples() {
        let t = empirical("ACGT", 2);
        for w in ["AC", "CG", "GT"] {
            assert_eq!(t.get(&km(w)), 1.0 / 3.0);
        }
        assert_eq!(t.theta().iter().filter(|&&x| x > 0.0).count(), 3);
        assert_eq!(empirical("AAAA", 2), KmerDistribution::point_mass(&km("AA")).unwrap());
        let flat = KmerFrequencyVector::from_counts(2, vec![5; 16]).unwrap();
        assert_eq!(empirical_distribution(&flat).unwrap(), KmerDistribution::uniform(2).unwrap());
        let zero = KmerFrequencyVector::zeros(2).unwrap();
        assert!(matches!(empirical_distribution(&zero), Err(Error::ZeroMass)));
    }

    #[test]
    fn residual_examples() {
        let r = marginal_residual(&empirical("AC", 2)).unwrap();
        assert_eq!(r, vec![1.0, -1.0, 0.0, 0.0]);
        assert!(marginal_residual(&KmerDistribution::uniform(3).unwrap()).unwrap().iter().all(|&x| x.abs() < 1e-15));
        // First 2-mer equals last, so every vertex balances.
        let circular = empirical("ACGTTGCAAC", 3);
        assert!(max_marginal_residual(&circular).unwrap() < 1e-15);
        assert!(marginal_residual(&KmerDistribution::uniform(1).unwrap()).is_err());
    }

    #[test]
    fn l1_examples() {
        let t = empirical("ACGT", 2);
        assert_eq!(total_variation_l1(&t, &t).unwrap(), 0.0);
        let aa = KmerDistribution::point_mass(&km("AA")).unwrap();
        let tt = KmerDistribution::point_mass(&km("TT")).unwrap();
        assert_eq!(total_variation_l1(&aa, &tt).unwrap(), 2.0);
        let d = total_variation_l1(&t, &KmerDistribution::uniform(2).unwrap()).unwrap();
        assert!((d - 1.625).abs() < 1e-15);
        assert!(total_variation_l1(&t, &KmerDistribution::uniform(3).unwrap()).is_err());
    }

    #[test]
    fn validation() {
        assert!(KmerDistribution::new(1, vec![0.25; 4]).is_ok());
        assert!(KmerDistribution::new(1, vec![0.25, 0.25, 0.25, 0.26]).is_err());
        assert!(KmerDistribution::new(1, vec![0.5, 0.5, 0.5, -0.5]).is_err());
        assert!(KmerDistribution::new(1, vec![0.5; 3]).is_err());
        assert!(KmerDistribution::from_weights(1, vec![0.0; 4]).is_err());
        assert_eq!(KmerDistribution::from_weights(1, vec![2.0; 4]).unwrap(), KmerDistribution::uniform(1).unwrap());
    }

    #[test]
    fn csv_roundtrip() {
        let t = empirical("ATCGTATCCA", 3);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("kmer,theta\nAAA,0\n"));
        let (back, renorm) = KmerDistribution::read_csv(&buf[..]).unwrap();
        assert_eq!(back, t);
        assert!(!renorm);
    }

    #[test]
    fn csv_validation() {
        let (d, renorm) = KmerDistribution::read_csv("kmer,theta\nA,0.5\nT,0.5000001\n".as_bytes()).unwrap();
        assert!(renorm);
        assert!((d.theta().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(d.theta()[1], 0.0);
        assert!(KmerDistribution::read_csv("kmer,theta\nA,0.5\nT,0.4\n".as_bytes()).is_err());
        assert!(KmerDistribution::read_csv("kmer,theta\nA,1.5\nT,-0.5\n".as_bytes()).is_err());
        assert!(KmerDistribution::read_csv("kmer,theta\nA,0.5\nA,0.5\n".as_bytes()).is_err());
        assert!(KmerDistribution::read_csv("kmer,theta\nA,0.5\nAT,0.5\n".as_bytes()).is_err());
        assert!(KmerDistribution::read_csv("kmer,theta\n".as_bytes()).is_err());
        assert!(matches!(
            KmerDistribution::read_csv("kmer,theta\nA;1\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
