use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::constraints::ConstraintSystem;
use super::KmerDistribution;
use crate::error::{Error, Result};

/// Directions shorter than this are redrawn.
const MIN_DIRECTION_NORM: f64 = 1e-14;

/// Redraws allowed per step before giving up.
pub const MAX_REDRAWS: usize = 100;

/// Iterates whose residual exceeds this are pulled back onto the affine subspace.
const DRIFT_TOLERANCE: f64 = 1e-12;

/// `1000 · dim ker B`.
pub fn default_iterations(k: usize) -> Result<usize> {
    Ok(1000 * ConstraintSystem::shared(k)?.kernel_dim())
}

/// A hit-and-run chain on `{θ ≥ 0 : B θ = b}` started at the uniform vector.
pub struct HitAndRun<'a> {
    system: &'a ConstraintSystem,
    theta: Vec<f64>,
    rng: ChaCha8Rng,
    steps: usize,
    max_residual: f64,
}

impl<'a> HitAndRun<'a> {
    pub fn new(system: &'a ConstraintSystem, seed: u64) -> HitAndRun<'a> {
        let n = system.num_cols();
        HitAndRun {
            system,
            theta: vec![1.0 / n as f64; n],
            rng: ChaCha8Rng::seed_from_u64(seed),
            steps: 0,
            max_residual: 0.0,
        }
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Largest `‖B θ − b‖∞` over all iterates so far.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    fn direction(&mut self) -> Result<Vec<f64>> {
        let n = self.system.num_cols();
        for _ in 0..MAX_REDRAWS {
            let mut d: Vec<f64> = (0..n).map(|_| self.rng.sample(StandardNormal)).collect();
            self.system.project_to_kernel(&mut d);
            let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm >= MIN_DIRECTION_NORM {
                d.iter_mut().for_each(|x| *x /= norm);
                return Ok(d);
            }
        }
        Err(Error::DegenerateDirection(MAX_REDRAWS))
    }

    /// One move along a random feasible chord.
    pub fn step(&mut self) -> Result<()> {
        for _ in 0..MAX_REDRAWS {
            let d = self.direction()?;
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for (&t, &di) in self.theta.iter().zip(&d) {
                let t = t.max(0.0);
                if di > 0.0 {
                    lo = lo.max(-t / di);
                } else if di < 0.0 {
                    hi = hi.min(-t / di);
                }
            }
            if lo >= hi || !lo.is_finite() || !hi.is_finite() {
                continue;
            }
            let t = self.rng.random_range(lo..hi);
            for (x, di) in self.theta.iter_mut().zip(&d) {
                *x += t * di;
            }
            let mut residual = self.system.residual(&self.theta);
            if residual > DRIFT_TOLERANCE {
                self.correct_drift();
                residual = self.system.residual(&self.theta);
            }
            self.max_residual = self.max_residual.max(residual);
            self.steps += 1;
            return Ok(());
        }
        Err(Error::DegenerateDirection(MAX_REDRAWS))
    }

    /// Removes the row-space component of `θ − uniform`.
    fn correct_drift(&mut self) {
        let n = self.theta.len();
        let u = 1.0 / n as f64;
        let mut delta: Vec<f64> = self.theta.iter().map(|x| x - u).collect();
        self.system.project_to_kernel(&mut delta);
        for (x, d) in self.theta.iter_mut().zip(delta) {
            *x = u + d;
        }
    }

    pub fn run(&mut self, iterations: usize) -> Result<()> {
        for _ in 0..iterations {
            self.step()?;
        }
        Ok(())
    }

    /// Current iterate with round-off negatives clamped to zero, renormalized.
    pub fn distribution(&self) -> Result<KmerDistribution> {
        let clamped = self.theta.iter().map(|x| x.max(0.0)).collect();
        KmerDistribution::from_weights(self.system.k(), clamped)
    }
}

/// Runs `iterations` hit-and-run steps from the uniform distribution.
pub fn hit_and_run_sample(k: usize, iterations: usize, seed: u64) -> Result<KmerDistribution> {
    if iterations == 0 {
        return Err(Error::NoIterations);
    }
    let system = ConstraintSystem::shared(k)?;
    let mut chain = HitAndRun::new(system, seed);
    chain.run(iterations)?;
    chain.distribution()
}
