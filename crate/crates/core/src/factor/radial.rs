//! Radial operators: Kepler-Coulomb shift pair, oscillator factorization
//! quartet a/b, the l-shift and energy-ladder compositions, and the
//! intermediate operator behind the energy ladder.

use num_complex::Complex64;
use std::rc::Rc;

use super::{jf_affine, jf_cot_k, jf_inv_c, jf_inv_s2, jf_sum, jf_tan_k};
use crate::error::{Error, Result};
use crate::jet::{c_kappa_jet, s_kappa_jet, Jet, JetFn};
use crate::ops::{jf_const, ChainElement, Operator1D, OperatorChain, SecondOrder};
use crate::system::{SystemKind, SystemSpec};

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbKind {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdKind {
    C,
    D,
}

/// Reduced radial Hamiltonian -d2/dr2 - (2/T) d/dr + l(l+1)/S^2 + V.
pub fn radial_hamiltonian(spec: &SystemSpec, ell: f64) -> SecondOrder {
    let kappa = spec.kappa();
    let cot = jf_cot_k(kappa);
    let inv_s2 = jf_inv_s2(kappa);
    let centrifugal = ell * (ell + 1.0);
    let potential: JetFn = match spec.kind {
        SystemKind::Kc | SystemKind::Evans => {
            let q = spec.q;
            let cot = jf_cot_k(kappa);
            Rc::new(move |x, d| cot(x, d).scale(C64::new(-q, 0.0)))
        }
        SystemKind::Ho | SystemKind::Sw => {
            let c = 0.25 * spec.omega2_eff();
            let tan = jf_tan_k(kappa);
            Rc::new(move |x, d| {
                let t = tan(x, d);
                t.mul(&t).scale(C64::new(c, 0.0))
            })
        }
    };
    SecondOrder {
        label: format!("H_{}(l={ell})", spec.kind.name()),
        a2: jf_const(-1.0),
        a1: jf_affine(&cot, -2.0, 0.0),
        a0: Rc::new(move |x, d| {
            inv_s2(x, d)
                .scale(C64::new(centrifugal, 0.0))
                .add(&potential(x, d))
        }),
    }
}

/// KC reduced Hamiltonian at angular parameter l.
pub fn kc_hamiltonian(spec: &SystemSpec, ell: f64) -> SecondOrder {
    radial_hamiltonian(spec, ell)
}

/// Oscillator reduced Hamiltonian at (l, omega_eff); the frequency may differ
/// from the system's (the factorization quartet hops between frequencies).
pub fn ho_hamiltonian(spec: &SystemSpec, ell: f64, omega: f64) -> SecondOrder {
    let kappa = spec.kappa();
    let cot = jf_cot_k(kappa);
    let inv_s2 = jf_inv_s2(kappa);
    let tan = jf_tan_k(kappa);
    let centrifugal = ell * (ell + 1.0);
    let c = 0.25 * (omega * omega - kappa * kappa);
    SecondOrder {
        label: format!("H_ho(l={ell},w={omega})"),
        a2: jf_const(-1.0),
        a1: jf_affine(&cot, -2.0, 0.0),
        a0: Rc::new(move |x, d| {
            let t = tan(x, d);
            inv_s2(x, d)
                .scale(C64::new(centrifugal, 0.0))
                .add(&t.mul(&t).scale(C64::new(c, 0.0)))
        }),
    }
}

/// Energy-shifted oscillator Hamiltonian with the 1/C^2 potential; its
/// eigenvalues are E + (omega^2 - kappa^2) / (4 kappa).
pub fn ho_hamiltonian_shifted(spec: &SystemSpec, ell: f64, omega: f64) -> Result<SecondOrder> {
    let kappa = spec.kappa();
    if kappa == 0.0 {
        return Err(Error::Param(
            "the energy-shifted oscillator Hamiltonian needs kappa != 0".into(),
        ));
    }
    let cot = jf_cot_k(kappa);
    let inv_s2 = jf_inv_s2(kappa);
    let inv_c = jf_inv_c(kappa);
    let centrifugal = ell * (ell + 1.0);
    let c = (omega * omega - kappa * kappa) / (4.0 * kappa);
    Ok(SecondOrder {
        label: format!("Hbar_ho(l={ell},w={omega})"),
        a2: jf_const(-1.0),
        a1: jf_affine(&cot, -2.0, 0.0),
        a0: Rc::new(move |x, d| {
            let ic = inv_c(x, d);
            inv_s2(x, d)
                .scale(C64::new(centrifugal, 0.0))
                .add(&ic.mul(&ic).scale(C64::new(c, 0.0)))
        }),
    })
}

/// KC factorization / shift operators:
/// Sigma+ = -d/dr + (l-1)/T - q/2l,  Sigma- = +d/dr + (l+1)/T - q/2l.
pub fn kc_sigma(spec: &SystemSpec, ell: f64, sign: Sign) -> Result<Operator1D> {
    if ell == 0.0 {
        return Err(Error::Param("KC shift operators need l != 0".into()));
    }
    let kappa = spec.kappa();
    let q = spec.q;
    let cot = jf_cot_k(kappa);
    let (alpha, cot_coef) = match sign {
        Sign::Plus => (-1.0, ell - 1.0),
        Sign::Minus => (1.0, ell + 1.0),
    };
    Ok(Operator1D::new(
        format!("Sigma{}_kc(l={ell})", sign.tag()),
        jf_const(alpha),
        jf_affine(&cot, cot_coef, -q / (2.0 * ell)),
    ))
}

/// Oscillator factorization quartet at (l, omega_eff):
/// a+- = -+ d/dr + (l -+ 1)/T + ((kappa + omega)/2) T,
/// b+- = same with (kappa - omega)/2.
pub fn ho_ab(
    spec: &SystemSpec,
    ell: f64,
    omega_eff: f64,
    which: AbKind,
    sign: Sign,
) -> Result<Operator1D> {
    if ell < 0.0 {
        return Err(Error::Param(format!("need l >= 0, got {ell}")));
    }
    let kappa = spec.kappa();
    let cot = jf_cot_k(kappa);
    let tan = jf_tan_k(kappa);
    let tan_coef = match which {
        AbKind::A => 0.5 * (kappa + omega_eff),
        AbKind::B => 0.5 * (kappa - omega_eff),
    };
    let (alpha, cot_coef) = match sign {
        Sign::Plus => (-1.0, ell - 1.0),
        Sign::Minus => (1.0, ell + 1.0),
    };
    let name = match which {
        AbKind::A => "a",
        AbKind::B => "b",
    };
    Ok(Operator1D::new(
        format!("{name}{}_ho(l={ell},w={omega_eff})", sign.tag()),
        jf_const(alpha),
        jf_sum(vec![(cot_coef, cot), (tan_coef, tan)], 0.0),
    ))
}

/// Oscillator l-shift at fixed frequency:
/// Sigma+_l = a+_{l+2,w} b+_{l+1,w+2k},  Sigma-_l = b-_{l-1,w+2k} a-_{l,w}.
pub fn ho_shift(spec: &SystemSpec, ell: f64, sign: Sign) -> Result<OperatorChain> {
    let (kappa, omega) = (spec.kappa(), spec.omega);
    match sign {
        Sign::Plus => {
            let b = ho_ab(spec, ell + 1.0, omega + 2.0 * kappa, AbKind::B, Sign::Plus)?;
            let a = ho_ab(spec, ell + 2.0, omega, AbKind::A, Sign::Plus)?;
            Ok(OperatorChain::product(
                format!("Sigma+_ho(l={ell})"),
                vec![ChainElement::Op1(a), ChainElement::Op1(b)],
            ))
        }
        Sign::Minus => {
            if ell < 2.0 {
                return Err(Error::Param(format!(
                    "Sigma-_ho needs l >= 2, got {ell}"
                )));
            }
            let a = ho_ab(spec, ell, omega, AbKind::A, Sign::Minus)?;
            let b = ho_ab(spec, ell - 1.0, omega + 2.0 * kappa, AbKind::B, Sign::Minus)?;
            Ok(OperatorChain::product(
                format!("Sigma-_ho(l={ell})"),
                vec![ChainElement::Op1(b), ChainElement::Op1(a)],
            ))
        }
    }
}

/// Energy-ladder factorization pair of the intermediate operator:
/// c+- = -+ kappa S d/dr + (kappa + omega)/(2C) + ((eps - 2 kappa) | eps)/2 C,
/// d+- = same with (kappa - omega)/(2C).
pub fn ho_cd(
    spec: &SystemSpec,
    eps: f64,
    omega_eff: f64,
    which: CdKind,
    sign: Sign,
) -> Result<Operator1D> {
    let kappa = spec.kappa();
    if kappa == 0.0 {
        return Err(Error::Param(
            "c/d operators need kappa != 0 (the composed ladder has a flat branch)".into(),
        ));
    }
    let s = s_kappa_jet(kappa);
    let c = c_kappa_jet(kappa);
    let inv_c = jf_inv_c(kappa);
    let inv_c_coef = match which {
        CdKind::C => 0.5 * (kappa + omega_eff),
        CdKind::D => 0.5 * (kappa - omega_eff),
    };
    let (alpha_coef, c_coef) = match sign {
        Sign::Plus => (-kappa, 0.5 * (eps - 2.0 * kappa)),
        Sign::Minus => (kappa, 0.5 * eps),
    };
    let name = match which {
        CdKind::C => "c",
        CdKind::D => "d",
    };
    Ok(Operator1D::new(
        format!("{name}{}_ho(eps={eps},w={omega_eff})", sign.tag()),
        Rc::new(move |x, d| s(x, d).scale(C64::new(alpha_coef, 0.0))),
        Rc::new(move |x, d| {
            inv_c(x, d)
                .scale(C64::new(inv_c_coef, 0.0))
                .add(&c(x, d).scale(C64::new(c_coef, 0.0)))
        }),
    ))
}

/// Intermediate operator with the angular momentum as its eigenvalue:
/// N_{eps,w} = kappa (-kappa S^2 d2 - 2 kappa S C d - (eps(eps-4k)/4) S^2
///             + ((w^2-k^2)/4) T^2); on an eigenstate R_n^l it returns
/// -kappa^2 l(l+1) R_n^l.
pub fn n_operator(spec: &SystemSpec, eps: f64, omega_eff: f64) -> Result<SecondOrder> {
    let kappa = spec.kappa();
    if kappa == 0.0 {
        return Err(Error::Param("the intermediate operator needs kappa != 0".into()));
    }
    let s = s_kappa_jet(kappa);
    let c = c_kappa_jet(kappa);
    let tan = jf_tan_k(kappa);
    let s2_coef = -kappa * eps * (eps - 4.0 * kappa) / 4.0;
    let t2_coef = kappa * (omega_eff * omega_eff - kappa * kappa) / 4.0;
    let k2 = -kappa * kappa;
    Ok(SecondOrder {
        label: format!("N(eps={eps},w={omega_eff})"),
        a2: {
            let s = s.clone();
            Rc::new(move |x, d| {
                let sj = s(x, d);
                sj.mul(&sj).scale(C64::new(k2, 0.0))
            })
        },
        a1: {
            let s = s.clone();
            let c = c.clone();
            Rc::new(move |x, d| s(x, d).mul(&c(x, d)).scale(C64::new(2.0 * k2, 0.0)))
        },
        a0: Rc::new(move |x, d| {
            let sj = s(x, d);
            let tj = tan(x, d);
            sj.mul(&sj)
                .scale(C64::new(s2_coef, 0.0))
                .add(&tj.mul(&tj).scale(C64::new(t2_coef, 0.0)))
        }),
    })
}

/// eps_n = kappa (2n + 5) + omega.
pub fn epsilon_n(spec: &SystemSpec, n: f64) -> f64 {
    spec.kappa() * (2.0 * n + 5.0) + spec.omega
}

/// Energy ladder changing n by two at fixed l:
/// Lambda-_n = (1/k) d+_{eps-4k,w} c+_{eps-2k,w-2k},
/// Lambda+_n = (1/k) d-_{eps+2k,w+2k} c-_{eps,w},
/// with the exact flat limit as the kappa = 0 branch.
pub fn ho_ladder(spec: &SystemSpec, n: f64, sign: Sign) -> Result<OperatorChain> {
    let kappa = spec.kappa();
    let omega = spec.omega;
    if kappa == 0.0 {
        // kappa -> 0 limit of the composition: Lambda+ = w (r d/dr - w r^2/2 + n + 3),
        // Lambda- = w (-r d/dr - w r^2/2 + n).
        let (alpha, constant) = match sign {
            Sign::Plus => (omega, omega * (n + 3.0)),
            Sign::Minus => (-omega, omega * n),
        };
        let w2 = omega * omega;
        let op = Operator1D::new(
            format!("Lambda{}_ho_flat(n={n})", sign.tag()),
            Rc::new(move |x, d| Jet::variable(x, d).scale(C64::new(alpha, 0.0))),
            Rc::new(move |x, d| {
                let xj = Jet::variable(x, d);
                xj.mul(&xj)
                    .scale(C64::new(-0.5 * w2, 0.0))
                    .add(&Jet::real_constant(constant, d))
            }),
        );
        return Ok(OperatorChain::single(op));
    }
    let eps = epsilon_n(spec, n);
    let chain = match sign {
        Sign::Plus => {
            let c = ho_cd(spec, eps, omega, CdKind::C, Sign::Minus)?;
            let d = ho_cd(spec, eps + 2.0 * kappa, omega + 2.0 * kappa, CdKind::D, Sign::Minus)?;
            OperatorChain::product(
                format!("Lambda+_ho(n={n})"),
                vec![ChainElement::Op1(d), ChainElement::Op1(c)],
            )
        }
        Sign::Minus => {
            let c = ho_cd(spec, eps - 2.0 * kappa, omega - 2.0 * kappa, CdKind::C, Sign::Plus)?;
            let d = ho_cd(spec, eps - 4.0 * kappa, omega, CdKind::D, Sign::Plus)?;
            OperatorChain::product(
                format!("Lambda-_ho(n={n})"),
                vec![ChainElement::Op1(d), ChainElement::Op1(c)],
            )
        }
    };
    Ok(chain.scaled(C64::new(1.0 / kappa, 0.0)))
}

/// Closed-form KC extremal radial state e^{-q r / 2(n+1)} S^n (real n for
/// the Evans family).
pub fn kc_rnn(spec: &SystemSpec, n: f64) -> JetFn {
    let kappa = spec.kappa();
    let rate = -spec.q / (2.0 * (n + 1.0));
    let s = s_kappa_jet(kappa);
    Rc::new(move |x, d| {
        let expo = Jet::variable(x, d).scale(C64::new(rate, 0.0)).exp();
        let sp = if n == 0.0 {
            Jet::real_constant(1.0, d)
        } else {
            s(x, d).powf(n)
        };
        expo.mul(&sp)
    })
}

/// Closed-form oscillator extremal radial state C^{(k+w)/2k} S^n, with the
/// flat branch e^{-w r^2 / 4} r^n.
pub fn ho_rnn(spec: &SystemSpec, n: f64) -> JetFn {
    let kappa = spec.kappa();
    let omega = spec.omega;
    if kappa == 0.0 {
        return Rc::new(move |x, d| {
            let xj = Jet::variable(x, d);
            let gauss = xj.mul(&xj).scale(C64::new(-omega / 4.0, 0.0)).exp();
            if n == 0.0 {
                gauss
            } else {
                gauss.mul(&xj.powf(n))
            }
        });
    }
    let c = c_kappa_jet(kappa);
    let s = s_kappa_jet(kappa);
    let expo = (kappa + omega) / (2.0 * kappa);
    Rc::new(move |x, d| {
        let cp = c(x, d).powf(expo);
        if n == 0.0 {
            cp
        } else {
            cp.mul(&s(x, d).powf(n))
        }
    })
}
