//! Collocation grids, quadrature and spectral differentiation.
//!
//! Grids are Chebyshev-Gauss-Lobatto interior nodes mapped onto an open
//! interval (every operator in the catalog carries 1/S, 1/T or 1/cos
//! singularities at the endpoints), with curved-measure times Clenshaw-Curtis
//! quadrature weights. The azimuthal coordinate of central systems gets a
//! uniform periodic grid with trapezoid weights and the Fourier
//! differentiation matrix instead.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kappa::{s_kappa, Curvature};

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    R,
    Theta,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridKind {
    /// Chebyshev interior nodes on the open interval (a, b).
    Bounded { a: f64, b: f64 },
    /// Uniform nodes on [0, period).
    Periodic { period: f64 },
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub coord: Coord,
    pub kind: GridKind,
    pub nodes: Vec<f64>,
    /// Measure values at the nodes (S_k^2 for r, sin(theta) for theta, 1 for phi).
    pub measure: Vec<f64>,
    /// Quadrature weight including the measure.
    pub weight: Vec<f64>,
    /// First-derivative matrix, row-major n x n.
    pub d1: Vec<f64>,
    /// Second-derivative matrix (d1 * d1).
    pub d2: Vec<f64>,
}

/// Clenshaw-Curtis weights for the full Lobatto family cos(j pi / n), j = 0..n.
fn clenshaw_curtis_full(n: usize) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    for j in 0..=n {
        let mut acc = 1.0;
        let half = n / 2;
        for k in 1..=half {
            let b = if 2 * k == n { 1.0 } else { 2.0 };
            acc -= b / ((4 * k * k - 1) as f64) * (2.0 * k as f64 * j as f64 * PI / n as f64).cos();
        }
        let cj = if j == 0 || j == n { 1.0 } else { 2.0 };
        w[j] = cj * acc / n as f64;
    }
    w
}

/// Barycentric differentiation matrix for arbitrary distinct nodes with
/// given barycentric weights; diagonal by the negative-sum trick.
pub fn diff_matrix(nodes: &[f64], bary: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
                d[i * n + j] = v;
                row_sum += v;
            }
        }
        d[i * n + i] = -row_sum;
    }
    d
}

fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0.0 {
                for j in 0..n {
                    c[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    c
}

impl Grid {
    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Chebyshev interior grid on (a, b) with a supplied measure function.
    pub fn bounded(coord: Coord, a: f64, b: f64, n: usize, measure: impl Fn(f64) -> f64) -> Result<Grid> {
        if n < 16 {
            return Err(Error::Param(format!("grid needs n >= 16, got {n}")));
        }
        if !(b > a) {
            return Err(Error::Param(format!("empty interval ({a}, {b})")));
        }
        let m = n + 1; // Lobatto family size minus 1
        // Interior Lobatto nodes cos(j pi / (n+1)), j = 1..n, mapped and ascending.
        let mut nodes = Vec::with_capacity(n);
        let mut bary = Vec::with_capacity(n);
        let cc = clenshaw_curtis_full(m);
        let mut quad = Vec::with_capacity(n);
        for j in (1..=n).rev() {
            let x = (j as f64 * PI / m as f64).cos();
            nodes.push(a + (b - a) * (x + 1.0) / 2.0);
            // interior-family barycentric weight ~ (-1)^j sin^2(j pi / m)
            let s = (j as f64 * PI / m as f64).sin();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            bary.push(sign * s * s);
            quad.push(cc[j] * (b - a) / 2.0);
        }
        let d1 = diff_matrix(&nodes, &bary);
        let d2 = matmul(&d1, &d1, n);
        let measure_v: Vec<f64> = nodes.iter().map(|&x| measure(x)).collect();
        for (i, &mv) in measure_v.iter().enumerate() {
            if !(mv > 0.0) || !mv.is_finite() {
                return Err(Error::Param(format!(
                    "measure must be positive and finite, got {mv} at node {}",
                    nodes[i]
                )));
            }
        }
        let weight: Vec<f64> = quad.iter().zip(&measure_v).map(|(q, m)| q * m).collect();
        Ok(Grid {
            coord,
            kind: GridKind::Bounded { a, b },
            nodes,
            measure: measure_v,
            weight,
            d1,
            d2,
        })
    }

    /// Uniform periodic grid with the standard Fourier differentiation matrix.
    pub fn periodic(coord: Coord, period: f64, n: usize) -> Result<Grid> {
        if n < 16 || n % 2 != 0 {
            return Err(Error::Param(format!(
                "periodic grid needs even n >= 16, got {n}"
            )));
        }
        let h = period / n as f64;
        let nodes: Vec<f64> = (0..n).map(|j| j as f64 * h).collect();
        let scale = 2.0 * PI / period;
        let mut d1 = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let k = i as isize - j as isize;
                    let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    d1[i * n + j] =
                        sign * 0.5 / ((k as f64) * PI / n as f64).tan() * scale;
                }
            }
        }
        let d2 = matmul(&d1, &d1, n);
        Ok(Grid {
            coord,
            kind: GridKind::Periodic { period },
            measure: vec![1.0; n],
            weight: vec![h; n],
            nodes,
            d1,
            d2,
        })
    }

    /// Apply the first-derivative matrix to complex samples.
    pub fn d1_apply(&self, v: &[C64]) -> Vec<C64> {
        self.mat_apply(&self.d1, v)
    }

    pub fn d2_apply(&self, v: &[C64]) -> Vec<C64> {
        self.mat_apply(&self.d2, v)
    }

    fn mat_apply(&self, m: &[f64], v: &[C64]) -> Vec<C64> {
        let n = self.n();
        assert_eq!(v.len(), n);
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            let row = &m[i * n..(i + 1) * n];
            for j in 0..n {
                acc += row[j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Barycentric interpolation of samples at an arbitrary point.
    pub fn interp(&self, v: &[C64], x: f64) -> C64 {
        match self.kind {
            GridKind::Bounded { .. } => {
                let n = self.n();
                let m = n + 1;
                let mut num = C64::new(0.0, 0.0);
                let mut den = 0.0;
                for (idx, j) in (1..=n).rev().enumerate() {
                    let s = (j as f64 * PI / m as f64).sin();
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    let w = sign * s * s;
                    let dx = x - self.nodes[idx];
                    if dx.abs() < 1e-14 {
                        return v[idx];
                    }
                    num += v[idx] * (w / dx);
                    den += w / dx;
                }
                num / den
            }
            GridKind::Periodic { period } => {
                // trigonometric barycentric formula for even n
                let n = self.n();
                let mut num = C64::new(0.0, 0.0);
                let mut den = 0.0;
                for j in 0..n {
                    let dx = (x - self.nodes[j]) * PI / period;
                    if dx.sin().abs() < 1e-15 {
                        return v[j];
                    }
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    let w = sign / dx.tan();
                    num += v[j] * w;
                    den += w;
                }
                num / den
            }
        }
    }
}

/// Samples of a (possibly complex) function on a grid.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub values: Vec<C64>,
}

impl GridFunction {
    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> C64) -> GridFunction {
        GridFunction {
            values: grid.nodes.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn from_real_fn(grid: &Grid, f: impl Fn(f64) -> f64) -> GridFunction {
        Self::from_fn(grid, |x| C64::new(f(x), 0.0))
    }

    pub fn zeros(grid: &Grid) -> GridFunction {
        GridFunction {
            values: vec![C64::new(0.0, 0.0); grid.n()],
        }
    }

    pub fn axpy(&mut self, a: C64, other: &GridFunction) {
        for (u, v) in self.values.iter_mut().zip(&other.values) {
            *u += a * v;
        }
    }

    pub fn scale(&mut self, a: C64) {
        for u in self.values.iter_mut() {
            *u *= a;
        }
    }
}

/// Spectral derivative of a grid function.
pub fn differentiate(grid: &Grid, g: &GridFunction) -> Result<GridFunction> {
    if grid.n() < 16 {
        return Err(Error::Param("differentiate needs >= 16 nodes".into()));
    }
    Ok(GridFunction {
        values: grid.d1_apply(&g.values),
    })
}

/// Quadrature approximation of the weighted inner product conj(f) g.
pub fn inner(grid: &Grid, f: &GridFunction, g: &GridFunction) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..grid.n() {
        acc += f.values[i].conj() * g.values[i] * grid.weight[i];
    }
    acc
}

/// Weighted L2 norm sqrt(int |g|^2 measure).
pub fn weighted_norm(grid: &Grid, g: &GridFunction) -> f64 {
    inner(grid, g, g).re.max(0.0).sqrt()
}

/// Modulus of the normalized overlap |<f,g>| / (|f| |g|).
pub fn overlap(grid: &Grid, f: &GridFunction, g: &GridFunction) -> f64 {
    let nf = weighted_norm(grid, f);
    let ng = weighted_norm(grid, g);
    if nf == 0.0 || ng == 0.0 {
        return 0.0;
    }
    inner(grid, f, g).norm() / (nf * ng)
}

/// Standard grid for a coordinate: the spec-shaped constructor.
///
/// The radial domain is (0, r_max) from the curvature; theta gets (0, pi)
/// with the sin(theta) measure; phi gets the periodic grid on (0, 2 pi).
/// System-specific domains (oscillator hemisphere, octant angles) go through
/// [`Grid::bounded`] directly.
pub fn make_grid(coord: Coord, curv: &Curvature, n: usize) -> Result<Grid> {
    match coord {
        Coord::R => {
            let kappa = curv.kappa;
            Grid::bounded(Coord::R, 0.0, curv.r_max, n, move |r| {
                let s = s_kappa(kappa, r);
                s * s
            })
        }
        Coord::Theta => Grid::bounded(Coord::Theta, 0.0, PI, n, |t| t.sin()),
        Coord::Phi => Grid::periodic(Coord::Phi, 2.0 * PI, n),
    }
}
