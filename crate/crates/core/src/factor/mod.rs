//! The operator catalog: every factorization, shift, ladder and symmetry
//! operator of the four systems, as composable differential forms.
//!
//! Coefficients are jet-evaluable so identities can be checked exactly on
//! closed-form states (see [`crate::ops`]). Radial operators live in
//! [`radial`], the polar/azimuthal ones in [`angular`], and full-state
//! compositions (L+-, the symmetries, the complete Hamiltonians) in [`full`].

pub mod angular;
pub mod full;
pub mod radial;

use num_complex::Complex64;
use std::rc::Rc;

use crate::jet::{c_kappa_jet, s_kappa_jet, Jet, JetFn};

type C64 = Complex64;

/// C_k(r)/S_k(r), the curved cotangent.
pub(crate) fn jf_cot_k(kappa: f64) -> JetFn {
    let c = c_kappa_jet(kappa);
    let s = s_kappa_jet(kappa);
    Rc::new(move |x, d| c(x, d).div(&s(x, d)))
}

/// S_k(r)/C_k(r), the curved tangent.
pub(crate) fn jf_tan_k(kappa: f64) -> JetFn {
    let c = c_kappa_jet(kappa);
    let s = s_kappa_jet(kappa);
    Rc::new(move |x, d| s(x, d).div(&c(x, d)))
}

pub(crate) fn jf_inv_c(kappa: f64) -> JetFn {
    let c = c_kappa_jet(kappa);
    Rc::new(move |x, d| c(x, d).recip())
}

pub(crate) fn jf_inv_s2(kappa: f64) -> JetFn {
    let s = s_kappa_jet(kappa);
    Rc::new(move |x, d| {
        let sj = s(x, d);
        sj.mul(&sj).recip()
    })
}

/// a * f + b as a jet function.
pub(crate) fn jf_affine(f: &JetFn, a: f64, b: f64) -> JetFn {
    let f = f.clone();
    Rc::new(move |x, d| {
        f(x, d)
            .scale(C64::new(a, 0.0))
            .add(&Jet::real_constant(b, d))
    })
}

pub(crate) fn jf_sum(parts: Vec<(f64, JetFn)>, constant: f64) -> JetFn {
    Rc::new(move |x, d| {
        let mut acc = Jet::real_constant(constant, d);
        for (a, f) in &parts {
            acc = acc.add(&f(x, d).scale(C64::new(*a, 0.0)));
        }
        acc
    })
}

pub use angular::{
    angular_ops, legendre_step, phi_hamiltonian, phi_state_bottom, theta_ab, theta_hamiltonian,
    theta_ladder_pair, theta_state_bottom, AngularOpKind, ThetaAbKind,
};
pub use full::{full_hamiltonian, lz_pm, symmetry_compose, SymmetryKind};
pub use radial::{
    epsilon_n, ho_ab, ho_cd, ho_hamiltonian, ho_hamiltonian_shifted, ho_ladder, ho_rnn, ho_shift,
    kc_hamiltonian, kc_rnn, kc_sigma, n_operator, radial_hamiltonian, AbKind, CdKind, Sign,
};
