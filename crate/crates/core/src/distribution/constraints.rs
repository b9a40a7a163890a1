use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::seq::kmer_space;

pub const MIN_CONSTRAINT_K: usize = 2;
pub const MAX_CONSTRAINT_K: usize = 6;

/// Relative singular-value threshold for the numerical rank.
const RANK_TOLERANCE: f64 = 1e-10;

/// `B θ = b` with `B` of shape `(1 + 4^(k-1)) x 4^k`: row 0 is all ones and
/// row `1 + v` is `+1` on `v·a` and `-1` on `a·v` for each letter `a`.
///
/// Factorized once as `Bᵀ P = Q R` by Householder QR with column pivoting.
/// The first `rank` pivoted rows `B_r` span the row space, and
/// `B_r B_rᵀ = R_rᵀ R_r`.
pub struct ConstraintSystem {
    k: usize,
    rank: usize,
    sigma_max: f64,
    /// Row of `B` in each pivot position.
    pivots: Vec<usize>,
    /// `r_cols[j]` holds `R[0..j, j]`.
    r_cols: Vec<Vec<f64>>,
    r_diag: Vec<f64>,
    /// Householder vectors `v_p` over entries `p..n`, with `H_p = I - beta_p v_p v_pᵀ`.
    reflectors: Vec<(Vec<f64>, f64)>,
    kernel: OnceLock<Vec<f64>>,
}

/// Builds and factorizes the constraint system for `k` in `2..=6`.
pub fn build_constraints(k: usize) -> Result<ConstraintSystem> {
    ConstraintSystem::build(k)
}

impl ConstraintSystem {
    pub fn build(k: usize) -> Result<ConstraintSystem> {
        if !(MIN_CONSTRAINT_K..=MAX_CONSTRAINT_K).contains(&k) {
            return Err(Error::OrderOutOfRange { k, min: MIN_CONSTRAINT_K, max: MAX_CONSTRAINT_K });
        }
        let n = kmer_space(k);
        let m = 1 + kmer_space(k - 1);
        let sigma_max = largest_singular_value(k);
        let tol = RANK_TOLERANCE * sigma_max;

        // Columns of Bᵀ, i.e. rows of B.
        let mut cols: Vec<Vec<f64>> = (0..m).map(|row| dense_row(k, row)).collect();
        let mut norms: Vec<f64> = cols.iter().map(|c| dot(c, c)).collect();
        let mut pivots: Vec<usize> = (0..m).collect();
        let mut r_cols = Vec::new();
        let mut r_diag = Vec::new();
        let mut reflectors = Vec::new();

        for p in 0..m.min(n) {
            let (jmax, &best) = norms[p..]
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(j, v)| (j + p, v))
                .expect("nonempty");
            if best.sqrt() <= tol {
                break;
            }
            cols.swap(p, jmax);
            norms.swap(p, jmax);
            pivots.swap(p, jmax);

            let x = &cols[p][p..];
            let xnorm = dot(x, x).sqrt();
            let alpha = if x[0] > 0.0 { -xnorm } else { xnorm };
            let mut v = x.to_vec();
            v[0] -= alpha;
            let beta = 2.0 / dot(&v, &v);

            r_cols.push(cols[p][..p].to_vec());
            r_diag.push(alpha);

            for j in p + 1..m {
                let c = &mut cols[j][p..];
                let s = beta * dot(&v, c);
                if s != 0.0 {
                    axpy(-s, &v, c);
                }
                norms[j] = dot(&c[1..], &c[1..]);
            }
            reflectors.push((v, beta));
        }

        Ok(ConstraintSystem {
            k,
            rank: r_diag.len(),
            sigma_max,
            pivots,
            r_cols,
            r_diag,
            reflectors,
            kernel: OnceLock::new(),
        })
    }

    /// Process-wide instance for `k`, factorized on first use.
    pub fn shared(k: usize) -> Result<&'static ConstraintSystem> {
        static CACHE: [OnceLock<ConstraintSystem>; MAX_CONSTRAINT_K + 1] =
            [const { OnceLock::new() }; MAX_CONSTRAINT_K + 1];
        if !(MIN_CONSTRAINT_K..=MAX_CONSTRAINT_K).contains(&k) {
            return Err(Error::OrderOutOfRange { k, min: MIN_CONSTRAINT_K, max: MAX_CONSTRAINT_K });
        }
        if let Some(s) = CACHE[k].get() {
            return Ok(s);
        }
        let built = ConstraintSystem::build(k)?;
        Ok(CACHE[k].get_or_init(|| built))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_rows(&self) -> usize {
        1 + kmer_space(self.k - 1)
    }

    pub fn num_cols(&self) -> usize {
        kmer_space(self.k)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.num_cols() - self.rank
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    /// The right-hand side `(1, 0, ..., 0)`.
    pub fn rhs(&self) -> Vec<f64> {
        let mut b = vec![0.0; self.num_rows()];
        b[0] = 1.0;
        b
    }

    /// Row `row` of `B` as a dense vector.
    pub fn row(&self, row: usize) -> Vec<f64> {
        dense_row(self.k, row)
    }

    /// `B` as dense rows.
    pub fn dense(&self) -> Vec<Vec<f64>> {
        (0..self.num_rows()).map(|r| self.row(r)).collect()
    }

    /// `B x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.num_rows()];
        self.apply_into(x, &mut out);
        out
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.num_cols());
        let vertices = kmer_space(self.k - 1);
        out.iter_mut().for_each(|o| *o = 0.0);
        for (idx, &t) in x.iter().enumerate() {
            out[0] += t;
            out[1 + (idx >> 2)] += t;
            out[1 + idx % vertices] -= t;
        }
    }

    /// `‖B x − b‖∞`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let mut bx = self.apply(x);
        bx[0] -= 1.0;
        bx.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// Projects `g` onto the null space of `B`:
    /// `g − B_rᵀ (R_rᵀ R_r)⁻¹ B_r g`.
    pub fn project_to_kernel(&self, g: &mut [f64]) {
        let mut bx = vec![0.0; self.num_rows()];
        self.apply_into(g, &mut bx);
        let mut y: Vec<f64> = self.pivots[..self.rank].iter().map(|&row| bx[row]).collect();
        // R_rᵀ z = c: row i of R_rᵀ is column i of R_r.
        for i in 0..self.rank {
            y[i] = (y[i] - dot(&self.r_cols[i], &y[..i])) / self.r_diag[i];
        }
        // R_r y = z, column by column.
        for j in (0..self.rank).rev() {
            y[j] /= self.r_diag[j];
            let yj = y[j];
            axpy(-yj, &self.r_cols[j], &mut y[..j]);
        }
        let mut coef = vec![0.0; self.num_rows()];
        for (p, &row) in self.pivots[..self.rank].iter().enumerate() {
            coef[row] = y[p];
        }
        let vertices = kmer_space(self.k - 1);
        for (idx, gi) in g.iter_mut().enumerate() {
            *gi -= coef[0] + coef[1 + (idx >> 2)] - coef[1 + idx % vertices];
        }
    }

    /// Orthonormal basis of the null space of `B`, column-major with
    /// `4^k` rows and [`Self::kernel_dim`] columns. Built on first call.
    pub fn kernel_basis(&self) -> &[f64] {
        self.kernel.get_or_init(|| {
            let n = self.num_cols();
            let mut basis = Vec::with_capacity(n * self.kernel_dim());
            for j in self.rank..n {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                self.apply_q(&mut e);
                basis.extend_from_slice(&e);
            }
            basis
        })
    }

    /// Column `j` of [`Self::kernel_basis`].
    pub fn kernel_column(&self, j: usize) -> &[f64] {
        let n = self.num_cols();
        &self.kernel_basis()[j * n..(j + 1) * n]
    }

    /// `x ← Q x` with `Q = H_0 H_1 ⋯ H_(r−1)`.
    fn apply_q(&self, x: &mut [f64]) {
        for (p, (v, beta)) in self.reflectors.iter().enumerate().rev() {
            let seg = &mut x[p..];
            let s = beta * dot(v, seg);
            if s != 0.0 {
                axpy(-s, v, seg);
            }
        }
    }
}

fn dense_row(k: usize, row: usize) -> Vec<f64> {
    let n = kmer_space(k);
    if row == 0 {
        return vec![1.0; n];
    }
    let vertices = kmer_space(k - 1);
    let v = row - 1;
    let mut out = vec![0.0; n];
    for a in 0..4 {
        out[v * 4 + a] += 1.0;
        out[a * vertices + v] -= 1.0;
    }
    out
}

/// Largest singular value of `B` by power iteration on `B Bᵀ`.
fn largest_singular_value(k: usize) -> f64 {
    let n = kmer_space(k);
    let vertices = kmer_space(k - 1);
    let m = 1 + vertices;
    let mut u: Vec<f64> = (0..m).map(|i| 1.0 + (i % 7) as f64 / 7.0).collect();
    let mut lambda = 0.0;
    for _ in 0..200 {
        let norm = dot(&u, &u).sqrt();
        u.iter_mut().for_each(|x| *x /= norm);
        // x = Bᵀ u, then u = B x.
        let x: Vec<f64> = (0..n).map(|idx| u[0] + u[1 + (idx >> 2)] - u[1 + idx % vertices]).collect();
        let mut next = vec![0.0; m];
        for (idx, &t) in x.iter().enumerate() {
            next[0] += t;
            next[1 + (idx >> 2)] += t;
            next[1 + idx % vertices] -= t;
        }
        let estimate = dot(&u, &next);
        u = next;
        if (estimate - lambda).abs() <= 1e-14 * estimate {
            lambda = estimate;
            break;
        }
        lambda = estimate;
    }
    lambda.sqrt()
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
