//! Truncated Taylor series ("jets") in one variable.
//!
//! Closed-form eigenfunctions of the catalog carry fractional powers like
//! cos^0.6(theta) whose derivatives blow up at the domain edge; sampling them
//! and differentiating spectrally converges too slowly to verify 1e-8
//! residuals. Jets give the exact derivatives instead: every coefficient
//! function and closed-form state can be evaluated as a degree-K Taylor
//! expansion at a point, and operator application becomes jet algebra.
//!
//! Coefficients are Taylor coefficients c_k = f^(k)(x0)/k!.

use num_complex::Complex64;

type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub c: Vec<C64>,
}

impl Jet {
    pub fn depth(&self) -> usize {
        self.c.len() - 1
    }

    pub fn constant(v: C64, depth: usize) -> Jet {
        let mut c = vec![C64::new(0.0, 0.0); depth + 1];
        c[0] = v;
        Jet { c }
    }

    pub fn real_constant(v: f64, depth: usize) -> Jet {
        Jet::constant(C64::new(v, 0.0), depth)
    }

    /// The identity function x evaluated at x0.
    pub fn variable(x0: f64, depth: usize) -> Jet {
        let mut j = Jet::real_constant(x0, depth);
        if depth >= 1 {
            j.c[1] = C64::new(1.0, 0.0);
        }
        j
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    /// k-th derivative value (k! * c_k).
    pub fn deriv(&self, k: usize) -> C64 {
        let mut fact = 1.0;
        for i in 2..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    /// Jet of f', one order shallower.
    pub fn d(&self) -> Jet {
        let depth = self.depth();
        if depth == 0 {
            return Jet::constant(C64::new(0.0, 0.0), 0);
        }
        let mut c = Vec::with_capacity(depth);
        for k in 1..=depth {
            c.push(self.c[k] * k as f64);
        }
        Jet { c }
    }

    /// Truncate (or zero-extend) to the given depth.
    pub fn resize(&self, depth: usize) -> Jet {
        let mut c = self.c.clone();
        c.resize(depth + 1, C64::new(0.0, 0.0));
        c.truncate(depth + 1);
        Jet { c }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let n = self.c.len().min(other.c.len());
        let c = (0..n).map(|k| self.c[k] + other.c[k]).collect();
        Jet { c }
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let n = self.c.len().min(other.c.len());
        let c = (0..n).map(|k| self.c[k] - other.c[k]).collect();
        Jet { c }
    }

    pub fn scale(&self, a: C64) -> Jet {
        Jet {
            c: self.c.iter().map(|&x| x * a).collect(),
        }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.c.len().min(other.c.len());
        let mut c = vec![C64::new(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..=k {
                acc += self.c[j] * other.c[k - j];
            }
            c[k] = acc;
        }
        Jet { c }
    }

    /// 1/f; requires f(x0) != 0.
    pub fn recip(&self) -> Jet {
        let n = self.c.len();
        let mut c = vec![C64::new(0.0, 0.0); n];
        let inv0 = C64::new(1.0, 0.0) / self.c[0];
        c[0] = inv0;
        for k in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..k {
                acc += c[j] * self.c[k - j];
            }
            c[k] = -inv0 * acc;
        }
        Jet { c }
    }

    pub fn div(&self, other: &Jet) -> Jet {
        self.mul(&other.recip())
    }

    /// exp(f) by the standard recurrence g' = f' g.
    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut c = vec![C64::new(0.0, 0.0); n];
        c[0] = self.c[0].exp();
        for k in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.c[j] * c[k - j] * j as f64;
            }
            c[k] = acc / k as f64;
        }
        Jet { c }
    }

    /// ln(f); requires f(x0) away from the branch cut.
    pub fn ln(&self) -> Jet {
        let n = self.c.len();
        let mut c = vec![C64::new(0.0, 0.0); n];
        c[0] = self.c[0].ln();
        let inv0 = C64::new(1.0, 0.0) / self.c[0];
        for k in 1..n {
            let mut acc = self.c[k] * k as f64;
            for j in 1..k {
                acc -= c[j] * self.c[k - j] * j as f64;
            }
            c[k] = acc * inv0 / k as f64;
        }
        Jet { c }
    }

    /// f^a for real exponent via exp(a ln f); f(x0) must be positive real-ish.
    pub fn powf(&self, a: f64) -> Jet {
        self.ln().scale(C64::new(a, 0.0)).exp()
    }

    pub fn powi(&self, mut n: u32) -> Jet {
        let mut acc = Jet::real_constant(1.0, self.depth());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn sin(&self) -> Jet {
        let (s, _) = self.sin_cos();
        s
    }

    pub fn cos(&self) -> Jet {
        let (_, c) = self.sin_cos();
        c
    }

    pub fn sin_cos(&self) -> (Jet, Jet) {
        // s' = f' c, c' = -f' s
        let n = self.c.len();
        let mut s = vec![C64::new(0.0, 0.0); n];
        let mut c = vec![C64::new(0.0, 0.0); n];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..n {
            let mut sa = C64::new(0.0, 0.0);
            let mut ca = C64::new(0.0, 0.0);
            for j in 1..=k {
                let fj = self.c[j] * j as f64;
                sa += fj * c[k - j];
                ca += fj * s[k - j];
            }
            s[k] = sa / k as f64;
            c[k] = -ca / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn cosh(&self) -> Jet {
        let e = self.exp();
        let em = self.scale(C64::new(-1.0, 0.0)).exp();
        e.add(&em).scale(C64::new(0.5, 0.0))
    }

    pub fn sinh(&self) -> Jet {
        let e = self.exp();
        let em = self.scale(C64::new(-1.0, 0.0)).exp();
        e.sub(&em).scale(C64::new(0.5, 0.0))
    }
}

/// A scalar function exposed as "jet at any point, any depth".
pub type JetFn = std::rc::Rc<dyn Fn(f64, usize) -> Jet>;

/// Lift a curvature into jet-evaluable C_k and S_k.
pub fn c_kappa_jet(kappa: f64) -> JetFn {
    std::rc::Rc::new(move |x0, depth| {
        let x = Jet::variable(x0, depth);
        if kappa.abs() * x0 * x0 < 1e-8 {
            // same truncated series as the scalar path
            let xx = x.mul(&x).scale(C64::new(kappa, 0.0));
            let mut acc = Jet::real_constant(1.0, depth);
            acc = acc.sub(&xx.scale(C64::new(0.5, 0.0)));
            acc = acc.add(&xx.mul(&xx).scale(C64::new(1.0 / 24.0, 0.0)));
            acc = acc.sub(&xx.mul(&xx).mul(&xx).scale(C64::new(1.0 / 720.0, 0.0)));
            acc
        } else if kappa > 0.0 {
            x.scale(C64::new(kappa.sqrt(), 0.0)).cos()
        } else {
            x.scale(C64::new((-kappa).sqrt(), 0.0)).cosh()
        }
    })
}

pub fn s_kappa_jet(kappa: f64) -> JetFn {
    std::rc::Rc::new(move |x0, depth| {
        let x = Jet::variable(x0, depth);
        if kappa.abs() * x0 * x0 < 1e-8 {
            let xx = x.mul(&x).scale(C64::new(kappa, 0.0));
            let mut acc = Jet::real_constant(1.0, depth);
            acc = acc.sub(&xx.scale(C64::new(1.0 / 6.0, 0.0)));
            acc = acc.add(&xx.mul(&xx).scale(C64::new(1.0 / 120.0, 0.0)));
            acc = acc.sub(&xx.mul(&xx).mul(&xx).scale(C64::new(1.0 / 5040.0, 0.0)));
            acc.mul(&x)
        } else if kappa > 0.0 {
            let rk = kappa.sqrt();
            x.scale(C64::new(rk, 0.0)).sin().scale(C64::new(1.0 / rk, 0.0))
        } else {
            let rk = (-kappa).sqrt();
            x.scale(C64::new(rk, 0.0)).sinh().scale(C64::new(1.0 / rk, 0.0))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn product_rule() {
        // f = x^2 e^x at x0 = 0.7, compare 3rd derivative
        let x0 = 0.7;
        let x = Jet::variable(x0, 5);
        let f = x.mul(&x).mul(&x.exp());
        // f''' = e^x (x^2 + 6x + 6)
        let expect = x0.exp() * (x0 * x0 + 6.0 * x0 + 6.0);
        assert!((f.deriv(3) - re(expect)).norm() < 1e-12 * expect.abs());
    }

    #[test]
    fn fractional_power() {
        // f = cos(x)^0.6, f' = -0.6 sin x cos^{-0.4} x
        let x0 = 1.1;
        let f = Jet::variable(x0, 3).cos().powf(0.6);
        let expect = -0.6 * x0.sin() * x0.cos().powf(-0.4);
        assert!((f.deriv(1) - re(expect)).norm() < 1e-12);
    }

    #[test]
    fn reciprocal_and_ln() {
        let x0 = 0.4;
        let f = Jet::variable(x0, 4).sin().recip(); // csc
        let expect = -x0.cos() / (x0.sin() * x0.sin());
        assert!((f.deriv(1) - re(expect)).norm() < 1e-12);
        let g = Jet::variable(x0, 4).ln();
        assert!((g.deriv(2) - re(-1.0 / (x0 * x0))).norm() < 1e-12);
    }

    #[test]
    fn kappa_jets_match_scalar() {
        for &kappa in &[0.3, -0.2, 0.0, 1e-9] {
            let c = c_kappa_jet(kappa);
            let s = s_kappa_jet(kappa);
            for &x in &[0.3, 1.2, 2.0] {
                let cj = c(x, 2);
                let sj = s(x, 2);
                assert!((cj.value().re - crate::kappa::c_kappa(kappa, x)).abs() < 1e-14);
                assert!((sj.value().re - crate::kappa::s_kappa(kappa, x)).abs() < 1e-14);
                // C' = -k S, S' = C
                assert!((cj.deriv(1).re + kappa * sj.value().re).abs() < 1e-13);
                assert!((sj.deriv(1).re - cj.value().re).abs() < 1e-13);
            }
        }
    }
}
