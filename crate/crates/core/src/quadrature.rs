//! Gauss-Legendre rules and their composite versions.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

impl GaussLegendre {
    /// `n`-point rule, roots found by Newton's method from Chebyshev guesses.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Gauss-Legendre rule needs at least one node".into()));
        }
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let pi = core::f64::consts::PI;
        for i in 0..n.div_ceil(2) {
            let mut x = libm::cos(pi * (i as f64 + 0.75) / (n as f64 + 0.5));
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let dp = legendre(n, x).1;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Single-panel rule on `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let (h, c) = (0.5 * (b - a), 0.5 * (a + b));
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(c + h * x)).sum::<f64>() * h
    }

    /// `panels` equal panels on `[a, b]`.
    pub fn composite(&self, a: f64, b: f64, panels: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let lo = a + h * k as f64;
                self.integrate(lo, lo + h, &mut f)
            })
            .sum()
    }

    /// Tensor-product composite rule on `[a₀, b₀] × [a₁, b₁]`.
    pub fn composite_2d(
        &self,
        (a0, b0): (f64, f64),
        (a1, b1): (f64, f64),
        panels: (usize, usize),
        mut f: impl FnMut(f64, f64) -> f64,
    ) -> f64 {
        self.composite(a0, b0, panels.0, |x| self.composite(a1, b1, panels.1, |y| f(x, y)))
    }
}
