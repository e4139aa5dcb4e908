//! Full-state operators on Psi(r, theta, phi): the complete Hamiltonians,
//! the azimuthal raising/lowering pair, and the composed symmetries.

use num_complex::Complex64;
use std::rc::Rc;

use super::angular::{
    legendre_step, phi_ladder, theta_ladder_pair, theta_shift_chain,
};
use super::radial::{ho_shift, kc_sigma, Sign};
use super::{jf_cot_k, jf_inv_s2, jf_tan_k};
use crate::error::{Error, Result};
use crate::field::{Axis, ProductOp};
use crate::jet::Jet;
use crate::ops::{jf_const, ChainElement, Operator1D, OperatorChain, SecondOrder};
use crate::system::{SystemKind, SystemSpec};

type C64 = Complex64;

fn cot_theta() -> Operator1D {
    Operator1D::mul(
        "i cot",
        Rc::new(|x, d| {
            let (s, c) = Jet::variable(x, d).sin_cos();
            c.div(&s).scale(C64::new(0.0, 1.0))
        }),
    )
}

fn phase_phi(sign: Sign) -> Operator1D {
    let s = sign.factor();
    Operator1D::mul(
        format!("e^({}i phi)", sign.tag()),
        Rc::new(move |x, d| {
            Jet::variable(x, d).scale(C64::new(0.0, s)).exp()
        }),
    )
}

/// Azimuthal raising/lowering on (theta, phi):
/// L+- = e^{+-i phi} ( +- d/dtheta + i cot(theta) d/dphi ).
pub fn lz_pm(sign: Sign) -> ProductOp {
    let dtheta = Operator1D::new(
        "d/dtheta",
        jf_const(sign.factor()),
        jf_const(0.0),
    );
    let dphi = Operator1D::new("d/dphi", jf_const(1.0), jf_const(0.0));
    ProductOp {
        label: format!("L{}", sign.tag()),
        terms: vec![
            vec![
                (Axis::Theta, OperatorChain::single(dtheta)),
                (Axis::Phi, OperatorChain::single(phase_phi(sign))),
            ],
            vec![
                (Axis::Theta, OperatorChain::single(cot_theta())),
                (
                    Axis::Phi,
                    OperatorChain::product(
                        "e d/dphi",
                        vec![
                            ChainElement::Op1(phase_phi(sign)),
                            ChainElement::Op1(dphi),
                        ],
                    ),
                ),
            ],
        ],
    }
}

/// Total angular part as a full-state operator:
/// L2 = -d2_theta - cot d_theta + k3(k3-1)/cos^2 + (1/sin^2)(-d2_phi + barriers).
pub fn l2_full(spec: &SystemSpec) -> ProductOp {
    let k3 = if spec.octant_locked() { spec.k3 } else { 0.0 };
    let barrier3 = k3 * (k3 - 1.0);
    let theta_part = SecondOrder {
        label: "theta part".into(),
        a2: jf_const(-1.0),
        a1: Rc::new(|x, d| {
            let (s, c) = Jet::variable(x, d).sin_cos();
            c.div(&s).scale(C64::new(-1.0, 0.0))
        }),
        a0: Rc::new(move |x, d| {
            if barrier3 == 0.0 {
                Jet::real_constant(0.0, d)
            } else {
                let c = Jet::variable(x, d).cos();
                c.mul(&c).recip().scale(C64::new(barrier3, 0.0))
            }
        }),
    };
    let (b1, b2) = if spec.octant_locked() {
        (spec.k1 * (spec.k1 - 1.0), spec.k2 * (spec.k2 - 1.0))
    } else {
        (0.0, 0.0)
    };
    let phi_part = SecondOrder {
        label: "phi part".into(),
        a2: jf_const(-1.0),
        a1: jf_const(0.0),
        a0: Rc::new(move |x, d| {
            if b1 == 0.0 && b2 == 0.0 {
                Jet::real_constant(0.0, d)
            } else {
                let (s, c) = Jet::variable(x, d).sin_cos();
                s.mul(&s)
                    .recip()
                    .scale(C64::new(b2, 0.0))
                    .add(&c.mul(&c).recip().scale(C64::new(b1, 0.0)))
            }
        }),
    };
    let inv_sin2_theta = Operator1D::mul(
        "1/sin^2",
        Rc::new(|x, d| {
            let s = Jet::variable(x, d).sin();
            s.mul(&s).recip()
        }),
    );
    ProductOp {
        label: "L2".into(),
        terms: vec![
            vec![(Axis::Theta, OperatorChain::second_order(theta_part))],
            vec![
                (Axis::Theta, OperatorChain::single(inv_sin2_theta)),
                (Axis::Phi, OperatorChain::second_order(phi_part)),
            ],
        ],
    }
}

/// Complete Hamiltonian -d2_r - (2/T) d_r + V(r) + L2(theta, phi)/S^2.
pub fn full_hamiltonian(spec: &SystemSpec) -> ProductOp {
    let kappa = spec.kappa();
    let cot = jf_cot_k(kappa);
    let radial_potential: crate::jet::JetFn = match spec.kind {
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
    let radial = SecondOrder {
        label: "radial part".into(),
        a2: jf_const(-1.0),
        a1: {
            let cot = cot.clone();
            Rc::new(move |x, d| cot(x, d).scale(C64::new(-2.0, 0.0)))
        },
        a0: radial_potential,
    };
    let inv_s2 = Operator1D::mul("1/S^2", jf_inv_s2(kappa));
    let l2 = l2_full(spec);
    let mut terms = vec![vec![(Axis::R, OperatorChain::second_order(radial))]];
    for term in l2.terms {
        let mut t = vec![(Axis::R, OperatorChain::single(inv_s2.clone()))];
        t.extend(term);
        terms.push(t);
    }
    ProductOp {
        label: format!("H_{}", spec.kind.name()),
        terms,
    }
}

#[derive(Debug, Clone, Copy)]
pub enum SymmetryKind {
    /// Radial-shift times polar-ladder: preserves energy, moves l.
    RadialTheta,
    /// Polar-shift times azimuthal-ladder: preserves energy and l, moves m.
    ThetaPhi,
}

/// Compose the full-state symmetry acting on states with quantum numbers
/// (ell, m); the sign moves l (RadialTheta) or m (ThetaPhi) by the system's
/// step (1 for KC, else 2).
pub fn symmetry_compose(
    spec: &SystemSpec,
    which: SymmetryKind,
    sign: Sign,
    ell: f64,
    m: f64,
) -> Result<ProductOp> {
    match which {
        SymmetryKind::RadialTheta => {
            let radial: OperatorChain = match spec.kind {
                SystemKind::Kc => {
                    let op = match sign {
                        Sign::Plus => kc_sigma(spec, ell + 1.0, Sign::Plus)?,
                        Sign::Minus => kc_sigma(spec, ell, Sign::Minus)?,
                    };
                    OperatorChain::single(op)
                }
                SystemKind::Ho | SystemKind::Sw => ho_shift(spec, ell, sign)?,
                SystemKind::Evans => match sign {
                    Sign::Plus => OperatorChain::product(
                        format!("Sigma+f(l={ell})"),
                        vec![
                            ChainElement::Op1(kc_sigma(spec, ell + 2.0, Sign::Plus)?),
                            ChainElement::Op1(kc_sigma(spec, ell + 1.0, Sign::Plus)?),
                        ],
                    ),
                    Sign::Minus => OperatorChain::product(
                        format!("Sigma-f(l={ell})"),
                        vec![
                            ChainElement::Op1(kc_sigma(spec, ell - 1.0, Sign::Minus)?),
                            ChainElement::Op1(kc_sigma(spec, ell, Sign::Minus)?),
                        ],
                    ),
                },
            };
            let theta: OperatorChain = match spec.kind {
                SystemKind::Kc => OperatorChain::single(legendre_step(ell, sign)),
                _ => theta_ladder_pair(spec, ell, sign)?,
            };
            Ok(ProductOp::single(
                format!("S{}_rtheta(l={ell})", sign.tag()),
                vec![(Axis::R, radial), (Axis::Theta, theta)],
            ))
        }
        SymmetryKind::ThetaPhi => {
            if !spec.octant_locked() {
                return Err(Error::Param(
                    "the theta-phi symmetry belongs to the octant systems".into(),
                ));
            }
            let theta = theta_shift_chain(spec, m, sign)?;
            let phi = OperatorChain::single(phi_ladder(spec, m, sign)?);
            Ok(ProductOp::single(
                format!("L{}_thetaphi(m={m})", sign.tag()),
                vec![(Axis::Theta, theta), (Axis::Phi, phi)],
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::radial::{ho_rnn, kc_rnn};
    use crate::field::{norm3, overlap3, sample_product, Field3, Grid3};
    use crate::grid::{make_grid, Coord, Grid, GridFunction};
    use crate::jet::JetFn;
    use crate::kappa::Curvature;
    use crate::system::SystemSpec;

    fn phase(m: f64) -> JetFn {
        Rc::new(move |x, d| Jet::variable(x, d).scale(C64::new(0.0, m)).exp())
    }

    fn sin_pow(m: f64) -> JetFn {
        Rc::new(move |x, d| {
            if m == 0.0 {
                Jet::real_constant(1.0, d)
            } else {
                Jet::variable(x, d).sin().powf(m)
            }
        })
    }

    fn central_grids(spec: &SystemSpec) -> Grid3 {
        let kappa = spec.kappa();
        let r = Grid::bounded(Coord::R, 0.0, spec.r_domain_end(), 96, move |r| {
            let s = crate::kappa::s_kappa(kappa, r);
            s * s
        })
        .unwrap();
        let c = Curvature::new(0.0, Some(1.0)).unwrap();
        Grid3 {
            r: Rc::new(r),
            theta: Rc::new(make_grid(Coord::Theta, &c, 48).unwrap()),
            phi: Rc::new(make_grid(Coord::Phi, &c, 16).unwrap()),
        }
    }

    fn octant_grids(spec: &SystemSpec) -> Grid3 {
        let kappa = spec.kappa();
        let r = Grid::bounded(Coord::R, 0.0, spec.r_domain_end(), 96, move |r| {
            let s = crate::kappa::s_kappa(kappa, r);
            s * s
        })
        .unwrap();
        let half = std::f64::consts::FRAC_PI_2;
        Grid3 {
            r: Rc::new(r),
            theta: Rc::new(Grid::bounded(Coord::Theta, 0.0, half, 48, |t| t.sin()).unwrap()),
            phi: Rc::new(Grid::bounded(Coord::Phi, 0.0, half, 48, |_| 1.0).unwrap()),
        }
    }

    #[test]
    fn lplus_annihilates_top_of_multiplet() {
        let c = Curvature::new(0.1, None).unwrap();
        let spec = SystemSpec::kc(c, 2.0).unwrap();
        let g = central_grids(&spec);
        let ell = 2.0;
        let state: [JetFn; 3] = [kc_rnn(&spec, ell), sin_pow(ell), phase(ell)];
        let psi = sample_product(&g, &state);
        let lp = lz_pm(Sign::Plus);
        let out = lp.apply_jet_product(&g, &state);
        assert!(norm3(&out) / norm3(&psi) < 1e-10);
    }

    #[test]
    fn lminus_lowers_m() {
        // L- on sin(theta) e^{i phi} lands on cos(theta) (P_1^0)
        let c = Curvature::new(0.0, Some(30.0)).unwrap();
        let spec = SystemSpec::kc(c, 2.0).unwrap();
        let g = central_grids(&spec);
        let state: [JetFn; 3] = [kc_rnn(&spec, 1.0), sin_pow(1.0), phase(1.0)];
        let lowered = lz_pm(Sign::Minus).apply_jet_product(&g, &state);
        let fr = crate::ops::sample(&g.r, &kc_rnn(&spec, 1.0));
        let ft = GridFunction::from_real_fn(&g.theta, |t| t.cos());
        let fp = GridFunction::from_real_fn(&g.phi, |_| 1.0);
        let expect = Field3::from_product(&g, &fr, &ft, &fp);
        assert!(overlap3(&lowered, &expect) > 1.0 - 1e-8);
    }

    #[test]
    fn lpm_commutes_with_l2() {
        let c = Curvature::new(0.1, None).unwrap();
        let spec = SystemSpec::kc(c, 2.0).unwrap();
        let g = central_grids(&spec);
        // smooth non-eigenstate in a fixed m sector
        let fr = GridFunction::from_real_fn(&g.r, |r| (-0.5 * (r - 4.0).powi(2)).exp());
        let ft = GridFunction::from_real_fn(&g.theta, |t| {
            t.sin() * (1.0 + 0.3 * t.cos() + 0.2 * (t.cos() * t.cos()))
        });
        let fp = GridFunction::from_fn(&g.phi, |p| C64::new(0.0, p).exp());
        let psi = Field3::from_product(&g, &fr, &ft, &fp);
        let l2 = l2_full(&spec);
        for sign in [Sign::Plus, Sign::Minus] {
            let l = lz_pm(sign);
            let a = l.apply(&l2.apply(&psi).unwrap()).unwrap();
            let mut b = l2.apply(&l.apply(&psi).unwrap()).unwrap();
            b.axpy(C64::new(-1.0, 0.0), &a);
            let denom = norm3(&l2.apply(&psi).unwrap());
            assert!(norm3(&b) / denom < 1e-8, "{:?}", sign);
        }
    }

    #[test]
    fn kc_symmetry_annihilates_highest_weight() {
        for &kappa in &[-0.01, 0.0, 0.1] {
            let c = Curvature::new(kappa, Some(40.0)).unwrap();
            let spec = SystemSpec::kc(c, 2.0).unwrap();
            let g = central_grids(&spec);
            for n in [1.0, 2.0] {
                let state: [JetFn; 3] = [kc_rnn(&spec, n), sin_pow(n), phase(n)];
                let psi = sample_product(&g, &state);
                let s_up = symmetry_compose(&spec, SymmetryKind::RadialTheta, Sign::Plus, n, n)
                    .unwrap();
                let out = s_up.apply_jet_product(&g, &state);
                let res = norm3(&out) / norm3(&psi);
                assert!(res < 1e-10, "kappa={kappa} n={n}: {res:e}");
            }
        }
    }

    #[test]
    fn full_hamiltonian_on_kc_highest_weight() {
        for &kappa in &[-0.01, 0.0, 0.1] {
            let c = Curvature::new(kappa, Some(40.0)).unwrap();
            let spec = SystemSpec::kc(c, 2.0).unwrap();
            let g = central_grids(&spec);
            let h = full_hamiltonian(&spec);
            for n in [0.0, 1.0, 2.0] {
                let nf = n;
                let e = kappa * nf * (nf + 2.0) - spec.q * spec.q / (4.0 * (nf + 1.0) * (nf + 1.0));
                let state: [JetFn; 3] = [kc_rnn(&spec, nf), sin_pow(nf), phase(nf)];
                let psi = sample_product(&g, &state);
                let mut hpsi = h.apply_jet_product(&g, &state);
                let denom = norm3(&hpsi).max(norm3(&psi));
                hpsi.axpy(C64::new(-e, 0.0), &psi);
                let res = norm3(&hpsi) / denom;
                assert!(res < 1e-7, "kappa={kappa} n={n}: {res:e}");
            }
        }
    }

    #[test]
    fn sw_highest_weight_full_state() {
        let c = Curvature::new(0.1, None).unwrap();
        let spec = SystemSpec::sw(c, 2.0, (0.3, 0.4, 0.6)).unwrap();
        let g = octant_grids(&spec);
        let ntot = spec.k1 + spec.k2 + spec.k3;
        let state: [JetFn; 3] = [
            ho_rnn(&spec, ntot),
            crate::factor::angular::theta_state_bottom(&spec, spec.k1 + spec.k2),
            crate::factor::angular::phi_state_bottom(&spec),
        ];
        let psi = sample_product(&g, &state);
        // oscillator energy at real n: kappa (n(n+3) + 3/2) + omega (n + 3/2)
        let e = spec.kappa() * (ntot * (ntot + 3.0) + 1.5) + spec.omega * (ntot + 1.5);
        let h = full_hamiltonian(&spec);
        let mut hpsi = h.apply_jet_product(&g, &state);
        let denom = norm3(&hpsi).max(norm3(&psi));
        hpsi.axpy(C64::new(-e, 0.0), &psi);
        let res = norm3(&hpsi) / denom;
        assert!(res < 1e-7, "residual {res:e}");
    }

    #[test]
    fn evans_highest_weight_full_state() {
        let c = Curvature::new(-0.01, Some(40.0)).unwrap();
        let spec = SystemSpec::evans(c, 2.0, (0.3, 0.4, 0.6)).unwrap();
        let g = octant_grids(&spec);
        let ntot = spec.k1 + spec.k2 + spec.k3;
        let state: [JetFn; 3] = [
            kc_rnn(&spec, ntot),
            crate::factor::angular::theta_state_bottom(&spec, spec.k1 + spec.k2),
            crate::factor::angular::phi_state_bottom(&spec),
        ];
        let psi = sample_product(&g, &state);
        let e = spec.kappa() * ntot * (ntot + 2.0)
            - spec.q * spec.q / (4.0 * (ntot + 1.0) * (ntot + 1.0));
        let h = full_hamiltonian(&spec);
        let mut hpsi = h.apply_jet_product(&g, &state);
        let denom = norm3(&hpsi).max(norm3(&psi));
        hpsi.axpy(C64::new(-e, 0.0), &psi);
        let res = norm3(&hpsi) / denom;
        assert!(res < 1e-7, "residual {res:e}");

        // annihilated by the radial raise, the polar ladder/shift and the
        // azimuthal ladder
        let m0 = spec.k1 + spec.k2;
        let s_r = OperatorChain::single(kc_sigma(&spec, ntot + 1.0, Sign::Plus).unwrap());
        let res_r = {
            let out = crate::ops::sample(&g.r, &crate::ops::apply_jet(&s_r, &state[0]));
            crate::grid::weighted_norm(&g.r, &out)
                / crate::grid::weighted_norm(&g.r, &crate::ops::sample(&g.r, &state[0]))
        };
        assert!(res_r < 1e-10, "radial: {res_r:e}");
        let lam_th = theta_ladder_pair(&spec, m0 + spec.k3, Sign::Minus).unwrap();
        let res_t = {
            let out = crate::ops::sample(&g.theta, &crate::ops::apply_jet(&lam_th, &state[1]));
            crate::grid::weighted_norm(&g.theta, &out)
                / crate::grid::weighted_norm(&g.theta, &crate::ops::sample(&g.theta, &state[1]))
        };
        assert!(res_t < 1e-10, "theta: {res_t:e}");
        let lam_ph = OperatorChain::single(phi_ladder(&spec, m0, Sign::Minus).unwrap());
        let res_p = {
            let out = crate::ops::sample(&g.phi, &crate::ops::apply_jet(&lam_ph, &state[2]));
            crate::grid::weighted_norm(&g.phi, &out)
                / crate::grid::weighted_norm(&g.phi, &crate::ops::sample(&g.phi, &state[2]))
        };
        assert!(res_p < 1e-10, "phi: {res_p:e}");
    }
}
