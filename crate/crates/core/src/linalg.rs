//! Dense symmetric eigensolver and Gauss-Jacobi quadrature.
//!
//! Householder tridiagonalization followed by implicit-shift QL, the classic
//! EISPACK tred2/tql2 pair. Matrices here stay below ~1500x1500, where the
//! dense path is both fast enough and far more robust than iterative solvers.

/// Reduce a symmetric matrix (row-major, overwritten with the accumulated
/// orthogonal transform) to tridiagonal form d (diagonal) / e (subdiagonal,
/// e[0] unused).
fn tred2(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut ff = 0.0;
                for j in 0..=l {
                    a[j * n + i] = a[i * n + j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    ff += e[j] * a[i * n + j];
                }
                let hh = ff / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[i * n + k] * a[k * n + j];
                }
                for k in 0..i {
                    a[k * n + j] -= g * a[k * n + i];
                }
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for j in 0..i {
            a[j * n + i] = 0.0;
            a[i * n + j] = 0.0;
        }
    }
}

fn pythag(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Implicit-shift QL on a symmetric tridiagonal (d, e), accumulating the
/// transforms on z (row-major; on entry the tred2 output or identity).
/// Eigenvalues land in d, eigenvector j in column j of z.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<(), String> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(format!("tql2 failed to converge at index {l}"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = pythag(g, 1.0);
            let sign_r = if g >= 0.0 { r.abs() } else { -r.abs() };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = pythag(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if r == 0.0 && m > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // ascending sort, carrying eigenvectors
    for i in 0..n {
        let mut k = i;
        for j in (i + 1)..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in 0..n {
                z.swap(row * n + i, row * n + k);
            }
        }
    }
    Ok(())
}

/// Eigendecomposition of a dense symmetric matrix (row-major).
/// Returns ascending eigenvalues and eigenvectors (column j of the returned
/// row-major matrix is the j-th eigenvector).
pub fn sym_eigen(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>), String> {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut a, n, &mut d, &mut e);
    tql2(&mut d, &mut e, &mut a, n)?;
    Ok((d, a))
}

/// Eigendecomposition of a symmetric tridiagonal matrix given diagonal and
/// subdiagonal (off[k] couples k and k+1).
pub fn tridiag_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>), String> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[1..n].copy_from_slice(&off[..n - 1]);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql2(&mut d, &mut e, &mut z, n)?;
    Ok((d, z))
}

/// ln Gamma by the Lanczos approximation (g = 7, 9 coefficients).
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // reflection
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Gauss-Jacobi nodes/weights on (-1, 1) for weight (1-x)^alpha (1+x)^beta,
/// via Golub-Welsch on the Jacobi recurrence matrix.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<(Vec<f64>, Vec<f64>), String> {
    assert!(alpha > -1.0 && beta > -1.0);
    let ab = alpha + beta;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.max(1) - 1];
    diag[0] = (beta - alpha) / (ab + 2.0);
    for k in 1..n {
        let k_f = k as f64;
        let denom = (2.0 * k_f + ab) * (2.0 * k_f + ab + 2.0);
        diag[k] = (beta * beta - alpha * alpha) / denom;
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * k_f * (k_f + alpha) * (k_f + beta) * (k_f + ab)
                / ((2.0 * k_f + ab).powi(2) * ((2.0 * k_f + ab).powi(2) - 1.0))
        };
        off[k - 1] = b2.sqrt();
    }
    let (nodes, z) = tridiag_eigen(&diag, &off)?;
    let mu0 = (ab + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
        - ln_gamma(ab + 2.0);
    let mu0 = mu0.exp();
    let weights: Vec<f64> = (0..n).map(|j| mu0 * z[j] * z[j]).collect();
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_symmetric_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let (vals, vecs) = sym_eigen(vec![2.0, 1.0, 1.0, 2.0], 2).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
        // eigenvector for 3 is (1,1)/sqrt(2)
        assert!((vecs[0 * 2 + 1].abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn residuals_on_random_symmetric() {
        // deterministic pseudo-random fill
        let n = 40;
        let mut a = vec![0.0; n * n];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..n {
            for j in 0..=i {
                let v = rand();
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let (vals, vecs) = sym_eigen(a.clone(), n).unwrap();
        for j in (0..n).step_by(7) {
            let mut res: f64 = 0.0;
            for i in 0..n {
                let mut av = 0.0;
                for k in 0..n {
                    av += a[i * n + k] * vecs[k * n + j];
                }
                res = res.max((av - vals[j] * vecs[i * n + j]).abs());
            }
            assert!(res < 1e-12, "residual {res:e}");
        }
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn ln_gamma_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-13);
        assert!((ln_gamma(0.5) - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-13);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_is_jacobi_00() {
        let (x, w) = gauss_jacobi(12, 0.0, 0.0).unwrap();
        // integrate x^2 on (-1,1): 2/3
        let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
        assert!((s - 2.0 / 3.0).abs() < 1e-13);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_jacobi_moments() {
        // weight (1-x)^0.7 (1+x)^(-0.1): moment 0 = 2^{a+b+1} B(a+1,b+1)
        let (alpha, beta) = (0.7, -0.1);
        let (x, w) = gauss_jacobi(24, alpha, beta).unwrap();
        let total: f64 = w.iter().sum();
        let expect = ((alpha + beta + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0)
            + ln_gamma(beta + 1.0)
            - ln_gamma(alpha + beta + 2.0))
        .exp();
        assert!((total - expect).abs() < 1e-12 * expect);
        // first moment: mu1/mu0 = (beta-alpha)/(alpha+beta+2)
        let m1: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi).sum();
        assert!((m1 / total - (beta - alpha) / (alpha + beta + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_case_first_offdiagonal() {
        // alpha = beta = -1/2: nodes are Chebyshev points
        let (x, _) = gauss_jacobi(8, -0.5, -0.5).unwrap();
        for (k, &xi) in x.iter().enumerate() {
            let expect = -((2.0 * k as f64 + 1.0) * std::f64::consts::PI / 16.0).cos();
            assert!((xi - expect).abs() < 1e-12);
        }
    }
}
