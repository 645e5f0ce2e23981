//! One-dimensional Gauss–Lobatto–Legendre machinery on the reference interval `[-1, 1]`.
//!
//! The nodal (Lagrange) basis `h_i` interpolates at the GLL nodes. The edge basis
//! `e_i = -sum_{k<i} h_k'` is its histopolant: the integral of `e_i` over the
//! sub-interval `[x_{j-1}, x_j]` is `delta_ij`.

use crate::error::{Error, Result};
use faer::Mat;

/// Tolerance on evaluation points outside `[-1, 1]`.
pub const DOMAIN_SLACK: f64 = 1e-12;

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_RESIDUAL: f64 = 1e-14;

/// GLL quadrature rule of degree `N` (N + 1 points).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule1D {
    degree: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule1D {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]` with the rule mapped affinely onto it.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Legendre polynomial `P_n(x)` and its derivative, by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    let (mut dp_prev, mut dp) = (0.0, 1.0);
    for k in 1..n {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        // P'_{k+1} = P'_{k-1} + (2k + 1) P_k
        let dp_next = dp_prev + (2.0 * kf + 1.0) * p;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp)
}

/// Builds the GLL rule of degree `n`: nodes are the roots of `(1 - x^2) P_n'(x)`.
pub fn gll_rule(n: usize) -> Result<QuadratureRule1D> {
    if n < 1 {
        return Err(Error::InvalidDegree(n));
    }
    let nf = n as f64;
    let mut nodes = vec![0.0; n + 1];
    nodes[0] = -1.0;
    nodes[n] = 1.0;

    // Interior roots on the left half; the right half is mirrored exactly.
    for i in 1..=(n - 1) / 2 {
        let guess = -(std::f64::consts::PI * i as f64 / nf).cos();
        let lo = -(std::f64::consts::PI * (i as f64 - 0.5) / nf).cos();
        let hi = -(std::f64::consts::PI * (i as f64 + 0.5) / nf).cos();
        let root = newton_lobatto_root(n, guess, lo, hi)?;
        nodes[i] = root;
        nodes[n - i] = -root;
    }
    // The middle node of an even-degree rule is 0 exactly.

    let weights = nodes
        .iter()
        .map(|&x| {
            let (p, _) = legendre(n, x);
            2.0 / (nf * (nf + 1.0) * p * p)
        })
        .collect::<Vec<_>>();
    // Enforce exact mirror symmetry of the weights as well.
    let mut weights = weights;
    for i in 0..=n / 2 {
        let w = 0.5 * (weights[i] + weights[n - i]);
        weights[i] = w;
        weights[n - i] = w;
    }

    Ok(QuadratureRule1D {
        degree: n,
        nodes,
        weights,
    })
}

fn newton_lobatto_root(n: usize, guess: f64, lo: f64, hi: f64) -> Result<f64> {
    let nn1 = (n * (n + 1)) as f64;
    let mut x = guess;
    for _ in 0..NEWTON_MAX_ITER {
        let (p, dp) = legendre(n, x);
        let q = (1.0 - x * x) * dp;
        if q.abs() <= NEWTON_RESIDUAL {
            return Ok(x);
        }
        // d/dx [(1 - x^2) P_n'] = -n(n+1) P_n
        let step = q / (-nn1 * p);
        let mut damping = 1.0;
        let mut next = x - step;
        while !(lo..=hi).contains(&next) && damping > 1e-6 {
            damping *= 0.5;
            next = x - damping * step;
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NumericalFailure(format!(
        "GLL Newton iteration for degree {n} did not converge from {guess}"
    )))
}

/// Lagrange and edge bases attached to a GLL rule.
#[derive(Debug, Clone)]
pub struct BasisSet1D {
    rule: QuadratureRule1D,
    bary: Vec<f64>,
    // diff[j][i] = h_i'(x_j)
    diff: Vec<Vec<f64>>,
}

impl BasisSet1D {
    pub fn new(rule: QuadratureRule1D) -> Self {
        let x = rule.nodes();
        let m = x.len();
        let bary = (0..m)
            .map(|j| {
                1.0 / (0..m)
                    .filter(|&k| k != j)
                    .map(|k| x[j] - x[k])
                    .product::<f64>()
            })
            .collect::<Vec<_>>();
        let mut diff = vec![vec![0.0; m]; m];
        for j in 0..m {
            let mut diag = 0.0;
            for i in 0..m {
                if i != j {
                    let d = (bary[i] / bary[j]) / (x[j] - x[i]);
                    diff[j][i] = d;
                    diag -= d;
                }
            }
            diff[j][j] = diag;
        }
        Self { rule, bary, diff }
    }

    pub fn with_degree(n: usize) -> Result<Self> {
        Ok(Self::new(gll_rule(n)?))
    }

    pub fn rule(&self) -> &QuadratureRule1D {
        &self.rule
    }

    pub fn degree(&self) -> usize {
        self.rule.degree
    }

    /// Spectral differentiation matrix, entry `(j, i) = h_i'(x_j)`.
    pub fn differentiation_matrix(&self) -> Mat<f64> {
        let m = self.diff.len();
        Mat::from_fn(m, m, |j, i| self.diff[j][i])
    }

    /// Values `h_0(x) .. h_N(x)` at a single point.
    pub fn lagrange_values(&self, x: f64) -> Result<Vec<f64>> {
        check_domain(x)?;
        let nodes = self.rule.nodes();
        if let Some(j) = nodes.iter().position(|&xj| xj == x) {
            let mut out = vec![0.0; nodes.len()];
            out[j] = 1.0;
            return Ok(out);
        }
        let terms = nodes
            .iter()
            .zip(&self.bary)
            .map(|(&xj, &bj)| bj / (x - xj))
            .collect::<Vec<_>>();
        let denom: f64 = terms.iter().sum();
        Ok(terms.into_iter().map(|t| t / denom).collect())
    }

    /// Derivatives `h_0'(x) .. h_N'(x)` at a single point.
    pub fn lagrange_derivs(&self, x: f64) -> Result<Vec<f64>> {
        // h_i' has degree N - 1, so it is reproduced exactly by interpolating its nodal values.
        let h = self.lagrange_values(x)?;
        let m = h.len();
        Ok((0..m)
            .map(|i| (0..m).map(|j| self.diff[j][i] * h[j]).sum())
            .collect())
    }

    /// Edge functions `e_1(x) .. e_N(x)` at a single point.
    pub fn edge_values(&self, x: f64) -> Result<Vec<f64>> {
        let dh = self.lagrange_derivs(x)?;
        let n = self.degree();
        let mut out = Vec::with_capacity(n);
        let mut acc = 0.0;
        for d in dh.iter().take(n) {
            acc -= d;
            out.push(acc);
        }
        Ok(out)
    }

    /// Matrix `[N+1 x #points]` with entry `(i, q) = h_i(points[q])`.
    pub fn lagrange_at(&self, points: &[f64]) -> Result<Mat<f64>> {
        self.tabulate(points, self.degree() + 1, |x| self.lagrange_values(x))
    }

    /// Matrix `[N+1 x #points]` with entry `(i, q) = h_i'(points[q])`.
    pub fn lagrange_deriv_at(&self, points: &[f64]) -> Result<Mat<f64>> {
        self.tabulate(points, self.degree() + 1, |x| self.lagrange_derivs(x))
    }

    /// Matrix `[N x #points]` with entry `(i - 1, q) = e_i(points[q])`.
    pub fn edge_at(&self, points: &[f64]) -> Result<Mat<f64>> {
        self.tabulate(points, self.degree(), |x| self.edge_values(x))
    }

    fn tabulate<F>(&self, points: &[f64], rows: usize, f: F) -> Result<Mat<f64>>
    where
        F: Fn(f64) -> Result<Vec<f64>>,
    {
        let mut out = Mat::zeros(rows, points.len());
        for (q, &x) in points.iter().enumerate() {
            for (i, v) in f(x)?.into_iter().enumerate() {
                out[(i, q)] = v;
            }
        }
        Ok(out)
    }
}

fn check_domain(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain(x));
    }
    Ok(())
}
