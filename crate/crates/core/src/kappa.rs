//! Curvature-deformed trigonometric kernel.
//!
//! The three kernels interpolate spherical, flat and hyperbolic geometry:
//!
//! ```text
//! C_k(r) = cos(sqrt(k) r) | 1 | cosh(sqrt(-k) r)      (k > 0 | k = 0 | k < 0)
//! S_k(r) = sin(sqrt(k) r)/sqrt(k) | r | sinh(sqrt(-k) r)/sqrt(-k)
//! T_k(r) = S_k(r) / C_k(r)
//! ```
//!
//! with the normalization C^2 + k S^2 = 1 and derivatives C' = -k S, S' = C,
//! T' = 1/C^2.  Everything downstream (operator coefficients, volume weights,
//! classical Hamiltonians) is built from these.

use crate::error::{Error, Result};

/// Crossover to the truncated series: below this value of |k| r^2 the closed
/// forms lose digits to cancellation against the flat branch.
const SERIES_THRESHOLD: f64 = 1e-8;

/// Curvature parameter plus the radial domain it induces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature {
    /// Curvature (1/length^2). Positive: sphere; zero: flat; negative: hyperbolic.
    pub kappa: f64,
    /// Right end of the radial domain: pi/sqrt(kappa) for kappa > 0, the
    /// configured cutoff otherwise.
    pub r_max: f64,
}

impl Curvature {
    /// For kappa > 0 the cutoff argument is ignored and r_max = pi/sqrt(kappa).
    /// For kappa <= 0 a finite cutoff must be supplied.
    pub fn new(kappa: f64, r_cut: Option<f64>) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::Param(format!("kappa must be finite, got {kappa}")));
        }
        if kappa > 0.0 {
            Ok(Curvature {
                kappa,
                r_max: std::f64::consts::PI / kappa.sqrt(),
            })
        } else {
            match r_cut {
                Some(rc) if rc > 0.0 && rc.is_finite() => Ok(Curvature { kappa, r_max: rc }),
                Some(rc) => Err(Error::Config(format!("invalid radial cutoff {rc}"))),
                None => Err(Error::Config(
                    "kappa <= 0 needs a configured radial cutoff".into(),
                )),
            }
        }
    }

    /// Curvature with the spec example default cutoff for kappa <= 0.
    pub fn with_default_cut(kappa: f64) -> Result<Self> {
        Self::new(kappa, Some(40.0))
    }

    fn check_r(&self, r: f64) -> Result<()> {
        if !r.is_finite() {
            return Err(Error::Domain(format!("r must be finite, got {r}")));
        }
        // Tiny slack so mapped collocation endpoints survive roundoff.
        let slack = 1e-12 * self.r_max.max(1.0);
        if r < -slack || r > self.r_max + slack {
            return Err(Error::Domain(format!(
                "r = {r} outside [0, {}]",
                self.r_max
            )));
        }
        Ok(())
    }
}

/// Values of the kappa-trig kernels at one point.
///
/// `t` is available through [`KappaTrigValue::t`], which fails at the poles of
/// the tangent (C = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaTrigValue {
    pub c: f64,
    pub s: f64,
}

impl KappaTrigValue {
    /// T_k = S_k / C_k; pole error where C_k vanishes.
    pub fn t(&self) -> Result<f64> {
        if self.c == 0.0 {
            return Err(Error::Pole("T_k requested at a zero of C_k".into()));
        }
        Ok(self.s / self.c)
    }
}

fn series_c(kappa: f64, r: f64) -> f64 {
    // 4 terms of sum (-k)^l r^(2l) / (2l)!
    let x = kappa * r * r;
    1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0
}

fn series_s(kappa: f64, r: f64) -> f64 {
    let x = kappa * r * r;
    r * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0)
}

/// C_k(r) without domain checks (callers inside the crate know their grids).
pub fn c_kappa(kappa: f64, r: f64) -> f64 {
    if kappa.abs() * r * r < SERIES_THRESHOLD {
        series_c(kappa, r)
    } else if kappa > 0.0 {
        (kappa.sqrt() * r).cos()
    } else {
        ((-kappa).sqrt() * r).cosh()
    }
}

/// S_k(r) without domain checks.
pub fn s_kappa(kappa: f64, r: f64) -> f64 {
    if kappa.abs() * r * r < SERIES_THRESHOLD {
        series_s(kappa, r)
    } else if kappa > 0.0 {
        (kappa.sqrt() * r).sin() / kappa.sqrt()
    } else {
        ((-kappa).sqrt() * r).sinh() / (-kappa).sqrt()
    }
}

/// T_k(r) = S_k/C_k without domain checks; infinite at poles of the tangent.
pub fn t_kappa(kappa: f64, r: f64) -> f64 {
    s_kappa(kappa, r) / c_kappa(kappa, r)
}

/// Evaluate the kernels at `r` inside the curvature's radial domain.
pub fn eval_trig(curv: &Curvature, r: f64) -> Result<KappaTrigValue> {
    curv.check_r(r)?;
    Ok(KappaTrigValue {
        c: c_kappa(curv.kappa, r),
        s: s_kappa(curv.kappa, r),
    })
}

/// (dC/dr, dS/dr, dT/dr) = (-k S, C, 1/C^2).
pub fn trig_derivatives(curv: &Curvature, r: f64) -> Result<(f64, f64, f64)> {
    let v = eval_trig(curv, r)?;
    if v.c == 0.0 {
        return Err(Error::Pole("dT/dr requested at a zero of C_k".into()));
    }
    Ok((-curv.kappa * v.s, v.c, 1.0 / (v.c * v.c)))
}

/// Radial volume weight S_k^2(r) for the curved measure S_k^2 dr.
pub fn volume_weight(curv: &Curvature, r: f64) -> Result<f64> {
    let v = eval_trig(curv, r)?;
    Ok(v.s * v.s)
}

/// Largest domain on which the normalization identity C^2 + k S^2 = 1 is
/// verifiable to 1e-12 absolute in f64 (for k < 0 the cosh^2/sinh^2
/// cancellation amplifies roundoff by cosh^2).
pub fn identity_domain(kappa: f64) -> f64 {
    if kappa < 0.0 {
        4.0 / (-kappa).sqrt()
    } else {
        40.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn flat_branch() {
        let curv = Curvature::with_default_cut(0.0).unwrap();
        let v = eval_trig(&curv, 2.5).unwrap();
        assert_eq!(v.c, 1.0);
        assert_eq!(v.s, 2.5);
        assert_eq!(v.t().unwrap(), 2.5);
    }

    #[test]
    fn sphere_quarter_turn() {
        let curv = Curvature::new(1.0, None).unwrap();
        let v = eval_trig(&curv, std::f64::consts::FRAC_PI_2).unwrap();
        assert_close(v.c, 0.0, 1e-15);
        assert_close(v.s, 1.0, 1e-15);
        assert!(v.t().is_ok()); // c is ~6e-17, not an exact zero
    }

    #[test]
    fn hyperbolic_point() {
        let curv = Curvature::with_default_cut(-1.0).unwrap();
        let v = eval_trig(&curv, 1.0).unwrap();
        assert_close(v.c, 1.0f64.cosh(), 1e-15);
        assert_close(v.s, 1.0f64.sinh(), 1e-15);
        assert_close(v.c * v.c - v.s * v.s, 1.0, 1e-12);
    }

    #[test]
    fn normalization_identity_grid() {
        // For kappa < 0 the identity cancels cosh^2 against sinh^2, so it is
        // representable to 1e-12 absolute only while cosh^2(sqrt(-k) r) stays
        // below ~1e3; verification grids use sqrt(|k|) r <= 4.
        for &kappa in &[-1.0f64, -0.1, 0.0, 0.1, 1.0] {
            let curv = Curvature::new(kappa, Some(identity_domain(kappa))).unwrap();
            for j in 1..=64 {
                let r = curv.r_max * j as f64 / 65.0;
                let v = eval_trig(&curv, r).unwrap();
                let id = v.c * v.c + kappa * v.s * v.s - 1.0;
                assert!(id.abs() < 1e-12, "kappa={kappa} r={r} id={id:e}");
            }
        }
    }

    #[test]
    fn continuity_near_flat() {
        let tiny = Curvature::new(1e-7, None).unwrap();
        let flat = Curvature::with_default_cut(0.0).unwrap();
        for j in 1..=50 {
            let r = 3.0 * j as f64 / 50.0;
            let a = eval_trig(&tiny, r).unwrap();
            let b = eval_trig(&flat, r).unwrap();
            assert!((a.c - b.c).abs() < 1e-6);
            assert!((a.s - b.s).abs() < 1e-6);
        }
    }

    #[test]
    fn derivative_values() {
        let flat = Curvature::with_default_cut(0.0).unwrap();
        assert_eq!(trig_derivatives(&flat, 1.0).unwrap(), (0.0, 1.0, 1.0));
        let sphere = Curvature::new(1.0, None).unwrap();
        let (dc, ds, dt) = trig_derivatives(&sphere, 0.0).unwrap();
        assert_eq!((dc, ds, dt), (0.0, 1.0, 1.0));
    }

    #[test]
    fn derivatives_match_central_differences() {
        // Richardson-extrapolated central differences as the independent check.
        let diff = |f: &dyn Fn(f64) -> f64, x: f64| {
            let h = 1e-4;
            let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
            let d2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
            (4.0 * d2 - d1) / 3.0
        };
        for &kappa in &[-0.25, 0.3, -1.0, 1.0] {
            let curv = Curvature::new(kappa, Some(10.0)).unwrap();
            let r = 0.8;
            let (dc, ds, dt) = trig_derivatives(&curv, r).unwrap();
            let dc_fd = diff(&|x| c_kappa(kappa, x), r);
            let ds_fd = diff(&|x| s_kappa(kappa, x), r);
            let dt_fd = diff(&|x| t_kappa(kappa, x), r);
            assert!((dc - dc_fd).abs() / dc_fd.abs().max(1.0) < 1e-8);
            assert!((ds - ds_fd).abs() / ds_fd.abs().max(1.0) < 1e-8);
            assert!((dt - dt_fd).abs() / dt_fd.abs().max(1.0) < 1e-8);
        }
    }

    #[test]
    fn volume_weights() {
        let flat = Curvature::with_default_cut(0.0).unwrap();
        assert_close(volume_weight(&flat, 3.0).unwrap(), 9.0, 1e-14);
        let sphere = Curvature::new(1.0, None).unwrap();
        assert_close(
            volume_weight(&sphere, std::f64::consts::FRAC_PI_2).unwrap(),
            1.0,
            1e-14,
        );
        let hyp = Curvature::with_default_cut(-1.0).unwrap();
        assert_close(
            volume_weight(&hyp, 1.0).unwrap(),
            1.0f64.sinh().powi(2),
            1e-12,
        );
    }

    #[test]
    fn domain_errors() {
        let sphere = Curvature::new(1.0, None).unwrap();
        assert!(matches!(eval_trig(&sphere, 4.0), Err(Error::Domain(_))));
        assert!(matches!(
            Curvature::new(-0.5, None),
            Err(Error::Config(_))
        ));
    }
}
