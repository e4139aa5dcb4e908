//! The verification engine: every identity the catalog asserts, run
//! numerically and collected into a [`Report`]. The CLI's verify command and
//! the acceptance suite both drive these functions.

use num_complex::Complex64;
use std::rc::Rc;

use crate::classical::{
    self, conservation_check, flow, linear_rate, modulus_and_phase, observable, poisson_bracket,
    random_point, substitutions, PhasePoint,
};
use crate::error::{Error, Result};
use crate::factor::{
    angular_ops, epsilon_n, full_hamiltonian, ho_ab, ho_hamiltonian, ho_ladder, ho_rnn, ho_shift,
    kc_hamiltonian, kc_rnn, kc_sigma, lz_pm, n_operator, phi_hamiltonian,
    phi_state_bottom, symmetry_compose, theta_hamiltonian, theta_state_bottom, AbKind,
    AngularOpKind, CdKind, Sign, SymmetryKind, ThetaAbKind,
};
use crate::field::{norm3, overlap3, Field3, Grid3};
use crate::grid::{weighted_norm, Coord, Grid, GridKind};
use crate::jet::{Jet, JetFn};
use crate::kappa::{eval_trig, identity_domain, s_kappa, Curvature};
use crate::ops::{apply_jet, sample, ChainElement, OperatorChain};
use crate::oracle::{eigensolve, SelfAdjointProblem};
use crate::report::Report;
use crate::rng::Rng;
use crate::spectra::{
    self, build_basis, degeneracy_count, ho_energy, ho_energy_unbalanced_variant, kc_admissible,
    kc_energy, radial_tail_mass, suggested_r_cut,
};
use crate::system::{SystemKind, SystemSpec};

type C64 = Complex64;

/// Knobs for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub kappas: Vec<f64>,
    pub q: f64,
    pub omega: f64,
    pub k: (f64, f64, f64),
    pub grid_n: usize,
    pub r_cut: Option<f64>,
    pub seed: u64,
    /// Classical trajectory length for drift checks.
    pub t_end: f64,
    /// Random phase points per bracket relation.
    pub bracket_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            kappas: vec![-0.1, 0.0, 0.1],
            q: 2.0,
            omega: 2.0,
            k: (0.3, 0.4, 0.6),
            grid_n: 128,
            r_cut: None,
            seed: 1,
            t_end: 100.0,
            bracket_points: 100,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kappas.is_empty() {
            return Err(Error::Config("empty kappa list".into()));
        }
        if self.grid_n < 16 {
            return Err(Error::Config(format!("grid_n too small: {}", self.grid_n)));
        }
        Ok(())
    }
}

/// Build the system at one curvature, with the tail-safe default cutoff.
pub fn make_spec(kind: SystemKind, kappa: f64, cfg: &VerifyConfig) -> Result<SystemSpec> {
    let trial_curv = Curvature::new(kappa, Some(cfg.r_cut.unwrap_or(40.0)))?;
    let trial = build_kind(kind, trial_curv, cfg)?;
    let r_cut = cfg.r_cut.unwrap_or_else(|| suggested_r_cut(&trial, 5.0));
    let curv = Curvature::new(kappa, Some(r_cut))?;
    build_kind(kind, curv, cfg)
}

fn build_kind(kind: SystemKind, curv: Curvature, cfg: &VerifyConfig) -> Result<SystemSpec> {
    match kind {
        SystemKind::Kc => SystemSpec::kc(curv, cfg.q),
        SystemKind::Ho => SystemSpec::ho(curv, cfg.omega),
        SystemKind::Sw => SystemSpec::sw(curv, cfg.omega, cfg.k),
        SystemKind::Evans => SystemSpec::evans(curv, cfg.q, cfg.k),
    }
}

fn r_grid(spec: &SystemSpec, n: usize) -> Result<Grid> {
    let kappa = spec.kappa();
    Grid::bounded(Coord::R, 0.0, spec.r_domain_end(), n, move |r| {
        let s = s_kappa(kappa, r);
        s * s
    })
}

fn theta_grid(spec: &SystemSpec, n: usize) -> Result<Grid> {
    let end = if spec.octant_locked() {
        std::f64::consts::FRAC_PI_2
    } else {
        std::f64::consts::PI
    };
    Grid::bounded(Coord::Theta, 0.0, end, n, |t| t.sin())
}

fn phi_grid(spec: &SystemSpec, n: usize) -> Result<Grid> {
    if spec.octant_locked() {
        Grid::bounded(Coord::Phi, 0.0, std::f64::consts::FRAC_PI_2, n, |_| 1.0)
    } else {
        Grid::periodic(Coord::Phi, 2.0 * std::f64::consts::PI, n)
    }
}

fn grid3(spec: &SystemSpec) -> Result<Grid3> {
    Ok(Grid3 {
        r: Rc::new(r_grid(spec, 96)?),
        theta: Rc::new(theta_grid(spec, 48)?),
        phi: Rc::new(if spec.octant_locked() {
            phi_grid(spec, 48)?
        } else {
            phi_grid(spec, 16)?
        }),
    })
}

/// Edge-vanishing smooth test functions as exact jets.
pub fn smooth_jets(grid: &Grid, count: usize) -> Vec<JetFn> {
    let (a, b) = match grid.kind {
        GridKind::Bounded { a, b } => (a, b),
        GridKind::Periodic { period } => (0.0, period),
    };
    let width = (b - a) / 14.0;
    let scale = 1.0 / (0.25 * (b - a) * (b - a)).powi(3);
    [0.35f64, 0.45, 0.55, 0.65, 0.5]
        .iter()
        .take(count)
        .enumerate()
        .map(|(i, &c)| {
            let center = a + (b - a) * c;
            let mod_freq = if i == 4 { 3.0 / (b - a) } else { 0.0 };
            let f: JetFn = Rc::new(move |x, d| {
                let xj = Jet::variable(x, d);
                let z = xj
                    .add(&Jet::real_constant(-center, d))
                    .scale(C64::new(1.0 / width, 0.0));
                let gauss = z.mul(&z).scale(C64::new(-1.0, 0.0)).exp();
                let left = xj.add(&Jet::real_constant(-a, d));
                let right = Jet::real_constant(b, d).sub(&xj);
                let edge = left.mul(&right).powi(3).scale(C64::new(scale, 0.0));
                let modu = xj
                    .scale(C64::new(mod_freq, 0.0))
                    .sin()
                    .scale(C64::new(0.3, 0.0))
                    .add(&Jet::real_constant(1.0, d));
                edge.mul(&gauss).mul(&modu)
            });
            f
        })
        .collect()
}

/// | sum_i c_i (chain_i f) | / |f| with every chain applied in jet mode.
fn combo_residual(grid: &Grid, f: &JetFn, terms: &[(C64, &OperatorChain)]) -> f64 {
    let base = sample(grid, f);
    let mut acc = crate::grid::GridFunction::zeros(grid);
    for (c, chain) in terms {
        let out = sample(grid, &apply_jet(chain, f));
        acc.axpy(*c, &out);
    }
    weighted_norm(grid, &acc) / weighted_norm(grid, &base)
}

fn annihilation_residual(grid: &Grid, chain: &OperatorChain, state: &JetFn) -> f64 {
    let out = sample(grid, &apply_jet(chain, state));
    weighted_norm(grid, &out) / weighted_norm(grid, &sample(grid, state))
}

fn state_overlap_with_oracle(
    sol: &crate::oracle::EigenSolution,
    state: &JetFn,
    index: usize,
) -> f64 {
    let vals: Vec<f64> = sol.nodes.iter().map(|&x| state(x, 0).value().re).collect();
    sol.overlap(&vals, index)
}

fn phase(m: f64) -> JetFn {
    Rc::new(move |x, d| Jet::variable(x, d).scale(C64::new(0.0, m)).exp())
}

fn fmt_kappa(kappa: f64) -> String {
    format!("kappa={kappa}")
}

/// Criterion-style suite over the kappa-trig kernel itself.
pub fn kappa_suite() -> Report {
    let mut rep = Report::default();
    let mut worst_id: f64 = 0.0;
    for &kappa in &[-1.0, -0.1, 0.0, 0.1, 1.0] {
        let curv = Curvature::new(kappa, Some(identity_domain(kappa))).unwrap();
        for j in 1..=64 {
            let r = curv.r_max * j as f64 / 65.0;
            let v = eval_trig(&curv, r).unwrap();
            worst_id = worst_id.max((v.c * v.c + kappa * v.s * v.s - 1.0).abs());
        }
    }
    rep.push(
        "kappa_trig_normalization",
        "C^2 + kappa S^2 = 1 on 64-node grids, kappa in {-1,-0.1,0,0.1,1}",
        worst_id,
        1e-12,
    );
    let mut worst_cont: f64 = 0.0;
    let tiny = Curvature::new(1e-7, None).unwrap();
    let flat = Curvature::new(0.0, Some(40.0)).unwrap();
    for j in 1..=64 {
        let r = 3.0 * j as f64 / 64.0;
        let a = eval_trig(&tiny, r).unwrap();
        let b = eval_trig(&flat, r).unwrap();
        worst_cont = worst_cont.max((a.c - b.c).abs()).max((a.s - b.s).abs());
    }
    rep.push(
        "kappa_trig_continuity",
        "|trig(kappa=1e-7) - trig(0)| on (0, 3]",
        worst_cont,
        1e-6,
    );
    rep
}

/// KC quantum suite at one curvature.
fn kc_quantum_rows(spec: &SystemSpec, cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    kc_identity_rows(spec, cfg, rep)?;
    kc_structure_rows(spec, cfg, rep)
}

/// The display identities alone: factorizations, intertwining, annihilation,
/// extremal eigenvalue, full-state symmetry annihilation and commutation.
pub fn kc_identity_rows(spec: &SystemSpec, cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    let kappa = spec.kappa();
    let tag = fmt_kappa(kappa);
    let grid = r_grid(spec, cfg.grid_n)?;
    let jets = smooth_jets(&grid, 5);
    let q = spec.q;

    let mut fact_m: f64 = 0.0;
    let mut fact_p: f64 = 0.0;
    let mut inter_up: f64 = 0.0;
    let mut inter_dn: f64 = 0.0;
    for ell in 1..=4 {
        let ell = ell as f64;
        let h = OperatorChain::second_order(kc_hamiltonian(spec, ell));
        let prod1 = OperatorChain::product(
            "S+S-",
            vec![
                ChainElement::Op1(kc_sigma(spec, ell, Sign::Plus)?),
                ChainElement::Op1(kc_sigma(spec, ell, Sign::Minus)?),
            ],
        );
        let c1 = -q * q / (4.0 * ell * ell) + kappa * (ell * ell - 1.0);
        let prod2 = OperatorChain::product(
            "S-S+",
            vec![
                ChainElement::Op1(kc_sigma(spec, ell + 1.0, Sign::Minus)?),
                ChainElement::Op1(kc_sigma(spec, ell + 1.0, Sign::Plus)?),
            ],
        );
        let c2 = -q * q / (4.0 * (ell + 1.0) * (ell + 1.0)) + kappa * ell * (ell + 2.0);
        let ident = OperatorChain::identity("1");
        let up = OperatorChain::product(
            "S+ H",
            vec![
                ChainElement::Op1(kc_sigma(spec, ell + 1.0, Sign::Plus)?),
                ChainElement::Op2(kc_hamiltonian(spec, ell)),
            ],
        );
        let up_r = OperatorChain::product(
            "H S+",
            vec![
                ChainElement::Op2(kc_hamiltonian(spec, ell + 1.0)),
                ChainElement::Op1(kc_sigma(spec, ell + 1.0, Sign::Plus)?),
            ],
        );
        let dn = OperatorChain::product(
            "S- H",
            vec![
                ChainElement::Op1(kc_sigma(spec, ell, Sign::Minus)?),
                ChainElement::Op2(kc_hamiltonian(spec, ell)),
            ],
        );
        let dn_r = OperatorChain::product(
            "H S-",
            vec![
                ChainElement::Op2(kc_hamiltonian(spec, ell - 1.0)),
                ChainElement::Op1(kc_sigma(spec, ell, Sign::Minus)?),
            ],
        );
        for f in &jets {
            let one = C64::new(1.0, 0.0);
            fact_m = fact_m.max(combo_residual(
                &grid,
                f,
                &[(one, &prod1), (C64::new(c1, 0.0), &ident), (-one, &h)],
            ));
            fact_p = fact_p.max(combo_residual(
                &grid,
                f,
                &[(one, &prod2), (C64::new(c2, 0.0), &ident), (-one, &h)],
            ));
            inter_up = inter_up.max(combo_residual(&grid, f, &[(one, &up), (-one, &up_r)]));
            inter_dn = inter_dn.max(combo_residual(&grid, f, &[(one, &dn), (-one, &dn_r)]));
        }
    }
    rep.push(
        format!("kc_factorization_lower {tag}"),
        "H_l = Sigma+_l Sigma-_l - q^2/4l^2 + kappa(l^2-1)",
        fact_m,
        1e-8,
    );
    rep.push(
        format!("kc_factorization_upper {tag}"),
        "H_l = Sigma-_(l+1) Sigma+_(l+1) - q^2/4(l+1)^2 + kappa l(l+2)",
        fact_p,
        1e-8,
    );
    rep.push(
        format!("kc_intertwining_up {tag}"),
        "Sigma+_(l+1) H_l = H_(l+1) Sigma+_(l+1)",
        inter_up,
        1e-8,
    );
    rep.push(
        format!("kc_intertwining_down {tag}"),
        "Sigma-_l H_l = H_(l-1) Sigma-_l",
        inter_dn,
        1e-8,
    );

    // annihilation and extremal eigenvalue
    let mut ann: f64 = 0.0;
    let mut eig: f64 = 0.0;
    for n in 0..=4 {
        let n = n as f64;
        if !kc_admissible(spec, n) {
            continue;
        }
        let state = kc_rnn(spec, n);
        let raise = OperatorChain::single(kc_sigma(spec, n + 1.0, Sign::Plus)?);
        ann = ann.max(annihilation_residual(&grid, &raise, &state));
        let h = OperatorChain::second_order(kc_hamiltonian(spec, n));
        let e = kc_energy(spec, n)?;
        let ident = OperatorChain::identity("1");
        eig = eig.max(combo_residual(
            &grid,
            &state,
            &[(C64::new(1.0, 0.0), &h), (C64::new(-e, 0.0), &ident)],
        ));
    }
    rep.push(
        format!("kc_annihilation {tag}"),
        "Sigma+_(n+1) R_n^n = 0, R_n^n = e^(-qr/2(n+1)) S^n",
        ann,
        1e-8,
    );
    rep.push(
        format!("kc_extremal_eigen {tag}"),
        "H_n R_n^n = (kappa n(n+2) - q^2/4(n+1)^2) R_n^n",
        eig,
        1e-8,
    );

    // full-state symmetry: annihilation of the highest weight, commutation
    let g3 = grid3(spec)?;
    let mut s_ann: f64 = 0.0;
    for n in [1.0, 2.0] {
        if !kc_admissible(spec, n) {
            continue;
        }
        let st: [JetFn; 3] = [kc_rnn(spec, n), theta_state_bottom(spec, n), phase(n)];
        let s_up = symmetry_compose(spec, SymmetryKind::RadialTheta, Sign::Plus, n, n)?;
        let out = s_up.apply_jet_product(&g3, &st);
        let psi = crate::field::sample_product(&g3, &st);
        s_ann = s_ann.max(norm3(&out) / norm3(&psi));
    }
    rep.push(
        format!("kc_symmetry_annihilation {tag}"),
        "S+_(n+1) Psi_(n,n,n) = 0",
        s_ann,
        1e-8,
    );

    let h_full = full_hamiltonian(spec);
    let mut comm: f64 = 0.0;
    // ladder-built eigenstate sector and a random smooth radial profile
    let r_jets = smooth_jets(&g3.r, 2);
    for (ell, m) in [(1.0, 1.0), (2.0, 1.0)] {
        let theta = spectra::theta_factor(spec, ell, m)?;
        for sign in [Sign::Plus, Sign::Minus] {
            if sign == Sign::Minus && ell < 1.5 {
                continue;
            }
            let s_op = symmetry_compose(spec, SymmetryKind::RadialTheta, sign, ell, m)?;
            for rj in &r_jets {
                let st: [JetFn; 3] = [rj.clone(), theta.clone(), phase(m)];
                let hpsi = h_full.apply_jet_product(&g3, &st);
                let spsi_terms: Vec<[JetFn; 3]> = s_op
                    .terms
                    .iter()
                    .map(|term| {
                        let mut f = st.clone();
                        for (axis, chain) in term {
                            f[*axis as usize] = apply_jet(chain, &f[*axis as usize]);
                        }
                        f
                    })
                    .collect();
                // S (H psi) - H (S psi), everything exact
                let mut lhs = Field3::zeros(&g3);
                for term in &s_op.terms {
                    // apply the symmetry chains to each separable piece of H psi
                    let mut acc = Field3::zeros(&g3);
                    for hterm in &h_full.terms {
                        let mut f = st.clone();
                        for (axis, chain) in hterm {
                            f[*axis as usize] = apply_jet(chain, &f[*axis as usize]);
                        }
                        for (axis, chain) in term {
                            f[*axis as usize] = apply_jet(chain, &f[*axis as usize]);
                        }
                        acc.axpy(C64::new(1.0, 0.0), &crate::field::sample_product(&g3, &f));
                    }
                    lhs.axpy(C64::new(1.0, 0.0), &acc);
                }
                let mut rhs = Field3::zeros(&g3);
                for f in &spsi_terms {
                    rhs.axpy(C64::new(1.0, 0.0), &h_full.apply_jet_product(&g3, f));
                }
                let denom = norm3(&hpsi).max(norm3(&crate::field::sample_product(&g3, &st)));
                lhs.axpy(C64::new(-1.0, 0.0), &rhs);
                comm = comm.max(norm3(&lhs) / denom);
            }
        }
    }
    rep.push(
        format!("kc_symmetry_commutation {tag}"),
        "S+- H Psi = H S+- Psi on fixed-(l, m) sectors",
        comm,
        1e-7,
    );
    Ok(())
}

/// Eigensolver cross-checks: shift actions, ladder-built bases.
pub fn kc_structure_rows(spec: &SystemSpec, cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    let kappa = spec.kappa();
    let tag = fmt_kappa(kappa);
    let grid = r_grid(spec, cfg.grid_n)?;

    // shift action against the eigensolver, basis construction
    let mut shift_deficit: f64 = 0.0;
    let mut basis_eig: f64 = 0.0;
    let mut gram: f64 = 0.0;
    let mut count_err = 0usize;
    let mut oracle_deficit: f64 = 0.0;
    for n in [1u32, 2] {
        if !kc_admissible(spec, n as f64) {
            continue;
        }
        let states = build_basis(spec, n)?;
        if states.len() != degeneracy_count(spec, n as f64) {
            count_err += 1;
        }
        for st in states.iter().filter(|s| s.qn.m == 0.0) {
            let prob = SelfAdjointProblem::radial(spec, st.qn.ell)?;
            let idx = (st.qn.n - st.qn.ell) as usize;
            let sol = eigensolve(&prob, idx + 1)?;
            oracle_deficit = oracle_deficit.max(1.0 - state_overlap_with_oracle(&sol, &st.radial, idx));
            // Sigma- applied to the (n, l) state lands on the oracle's (n, l-1)
            if st.qn.ell >= 1.0 {
                let lower = OperatorChain::single(kc_sigma(spec, st.qn.ell, Sign::Minus)?);
                let lowered = apply_jet(&lower, &st.radial);
                let prob2 = SelfAdjointProblem::radial(spec, st.qn.ell - 1.0)?;
                let idx2 = (st.qn.n - st.qn.ell + 1.0) as usize;
                let sol2 = eigensolve(&prob2, idx2 + 1)?;
                shift_deficit =
                    shift_deficit.max(1.0 - state_overlap_with_oracle(&sol2, &lowered, idx2));
            }
            let h = OperatorChain::second_order(kc_hamiltonian(spec, st.qn.ell));
            let ident = OperatorChain::identity("1");
            basis_eig = basis_eig.max(combo_residual(
                &grid,
                &st.radial,
                &[
                    (C64::new(1.0, 0.0), &h),
                    (C64::new(-st.energy, 0.0), &ident),
                ],
            ));
        }
        // Gram orthogonality within one m-sector (cross-m is exact by phase)
        let tg = theta_grid(spec, 64)?;
        for a in &states {
            for b in &states {
                if a.qn == b.qn || (a.qn.m - b.qn.m).abs() > 0.5 {
                    continue;
                }
                let fa_r = spectra::sampled_normalized(&grid, &a.radial)?;
                let fb_r = spectra::sampled_normalized(&grid, &b.radial)?;
                let fa_t = spectra::sampled_normalized(&tg, &a.theta)?;
                let fb_t = spectra::sampled_normalized(&tg, &b.theta)?;
                let g = (crate::grid::inner(&grid, &fa_r, &fb_r)
                    * crate::grid::inner(&tg, &fa_t, &fb_t))
                .norm();
                gram = gram.max(g);
            }
        }
    }
    rep.push(
        format!("kc_shift_action {tag}"),
        "Sigma-_l R_n^l lands on the eigensolver's R_n^(l-1)",
        shift_deficit,
        1e-8,
    );
    rep.push(
        format!("kc_basis_eigen {tag}"),
        "ladder-built radial factors satisfy H_l R = E_n R",
        basis_eig,
        1e-7,
    );
    rep.push(
        format!("kc_basis_gram {tag}"),
        "Gram off-diagonals of the energy-n multiplet",
        gram,
        1e-8,
    );
    rep.push(
        format!("kc_basis_count {tag}"),
        "degeneracy count sum(2l+1) = (n+1)^2",
        count_err as f64,
        0.5,
    );
    rep.push(
        format!("kc_basis_oracle {tag}"),
        "built radial factors overlap the eigensolver's eigenvectors",
        oracle_deficit,
        1e-6,
    );
    Ok(())
}

/// KC spectrum against the eigensolver (criterion 3) plus the kappa < 0
/// admissibility transition (criterion 4).
pub fn kc_spectrum_rows(spec: &SystemSpec, rep: &mut Report) -> Result<()> {
    let kappa = spec.kappa();
    let tag = fmt_kappa(kappa);
    let admissible_ns: Vec<f64> = (0..=5)
        .map(|n| n as f64)
        .filter(|&n| kc_admissible(spec, n))
        .collect();
    let prob = SelfAdjointProblem::radial(spec, 0.0)?;
    let sol = eigensolve(&prob, admissible_ns.len())?;
    let analytic: Vec<f64> = admissible_ns
        .iter()
        .map(|&n| kc_energy(spec, n))
        .collect::<Result<_>>()?;
    let cmp = crate::oracle::compare_spectrum(&analytic, &sol.values, 1e-6)?;
    rep.push(
        format!("kc_spectrum {tag}"),
        "eigensolver matches E_n = kappa n(n+2) - q^2/4(n+1)^2 (admissible n <= 5)",
        cmp.max_abs_dev,
        1e-6,
    );
    if kappa < 0.0 {
        let mut mismatches = 0u32;
        for n in 0..=5 {
            let n = n as f64;
            let ineq = kc_admissible(spec, n);
            let tail = radial_tail_mass(spec, &kc_rnn(spec, n))?;
            let tail_ok = tail <= 1e-10;
            if ineq != tail_ok {
                mismatches += 1;
            }
        }
        rep.push(
            format!("kc_admissibility_transition {tag}"),
            "2(n+1)^2 sqrt(-kappa) < q agrees with the numerical tail-mass test for n <= 5",
            mismatches as f64,
            0.5,
        );
    }
    Ok(())
}

/// Raising/lowering in m on the (theta, phi) product grids.
fn lz_rows(spec: &SystemSpec, rep: &mut Report) -> Result<()> {
    let g3 = grid3(spec)?;
    // top of the multiplet: L+ annihilates (l = m)
    let ell = 2.0;
    let st: [JetFn; 3] = [
        Rc::new(|_, d| Jet::real_constant(1.0, d)),
        theta_state_bottom(spec, ell),
        phase(ell),
    ];
    let lp = lz_pm(Sign::Plus);
    let out = lp.apply_jet_product(&g3, &st);
    let psi = crate::field::sample_product(&g3, &st);
    rep.push(
        "lz_raise_annihilation",
        "L+ Psi = 0 at the top of the multiplet (m = l)",
        norm3(&out) / norm3(&psi),
        1e-8,
    );
    // L- on P_1^1 e^(i phi) lands on P_1^0
    let st: [JetFn; 3] = [
        Rc::new(|_, d| Jet::real_constant(1.0, d)),
        theta_state_bottom(spec, 1.0),
        phase(1.0),
    ];
    let lowered = lz_pm(Sign::Minus).apply_jet_product(&g3, &st);
    let target: [JetFn; 3] = [
        Rc::new(|_, d| Jet::real_constant(1.0, d)),
        Rc::new(|x, d| Jet::variable(x, d).cos()),
        phase(0.0),
    ];
    let target_f = crate::field::sample_product(&g3, &target);
    rep.push(
        "lz_lower_action",
        "L- (sin e^(i phi)) lands on cos (the m-lowered associated-Legendre state)",
        1.0 - overlap3(&lowered, &target_f),
        1e-8,
    );
    // commutation with the angular part on a smooth non-eigen product
    let l2 = crate::factor::full::l2_full(spec);
    let fr = crate::grid::GridFunction::from_real_fn(&g3.r, |_| 1.0);
    let ft = crate::grid::GridFunction::from_real_fn(&g3.theta, |t| {
        t.sin() * (1.0 + 0.3 * t.cos() + 0.2 * t.cos() * t.cos())
    });
    let fp = crate::grid::GridFunction::from_fn(&g3.phi, |p| C64::new(0.0, p).exp());
    let psi = Field3::from_product(&g3, &fr, &ft, &fp);
    let mut comm: f64 = 0.0;
    for sign in [Sign::Plus, Sign::Minus] {
        let l = lz_pm(sign);
        let a = l.apply(&l2.apply(&psi)?)?;
        let mut b = l2.apply(&l.apply(&psi)?)?;
        b.axpy(C64::new(-1.0, 0.0), &a);
        comm = comm.max(norm3(&b) / norm3(&l2.apply(&psi)?));
    }
    rep.push(
        "lz_l2_commutation",
        "L+- commute with the total angular operator",
        comm,
        1e-8,
    );
    Ok(())
}

/// Oscillator quantum suite at one curvature.
pub fn ho_quantum_rows(spec: &SystemSpec, cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    let kappa = spec.kappa();
    let tag = fmt_kappa(kappa);
    let grid = r_grid(spec, cfg.grid_n)?;
    let jets = smooth_jets(&grid, 5);
    let w = spec.omega;
    let one = C64::new(1.0, 0.0);
    let ident = OperatorChain::identity("1");

    let mut fact_a: f64 = 0.0;
    let mut fact_b: f64 = 0.0;
    let mut shifts: f64 = 0.0;
    let mut inter: f64 = 0.0;
    for ell in 0..=3 {
        let ell = ell as f64;
        let h = OperatorChain::second_order(ho_hamiltonian(spec, ell, w));
        let ca = kappa * (ell * (ell - 1.0) - 0.5) - w * (ell - 0.5);
        let prod_a = OperatorChain::product(
            "a+a-",
            vec![
                ChainElement::Op1(ho_ab(spec, ell, w, AbKind::A, Sign::Plus)?),
                ChainElement::Op1(ho_ab(spec, ell, w, AbKind::A, Sign::Minus)?),
            ],
        );
        let e_l = kappa * (ell * (ell + 3.0) + 1.5) + w * (ell + 1.5);
        let prod_b = OperatorChain::product(
            "b-b+",
            vec![
                ChainElement::Op1(ho_ab(spec, ell + 1.0, w + 2.0 * kappa, AbKind::B, Sign::Minus)?),
                ChainElement::Op1(ho_ab(spec, ell + 1.0, w + 2.0 * kappa, AbKind::B, Sign::Plus)?),
            ],
        );
        for f in jets.iter().take(3) {
            fact_a = fact_a.max(combo_residual(
                &grid,
                f,
                &[(one, &prod_a), (C64::new(ca, 0.0), &ident), (-one, &h)],
            ));
            fact_b = fact_b.max(combo_residual(
                &grid,
                f,
                &[(one, &prod_b), (C64::new(e_l, 0.0), &ident), (-one, &h)],
            ));
        }
        // the four parameter-shift relations with energy offsets
        let cases: Vec<(crate::ops::Operator1D, f64, f64, f64)> = vec![
            (
                ho_ab(spec, ell + 1.0, w - 2.0 * kappa, AbKind::A, Sign::Plus)?,
                ell + 1.0,
                w - 2.0 * kappa,
                kappa - w,
            ),
            (
                ho_ab(spec, ell, w, AbKind::A, Sign::Minus)?,
                ell - 1.0,
                w + 2.0 * kappa,
                kappa + w,
            ),
            (
                ho_ab(spec, ell + 1.0, w + 2.0 * kappa, AbKind::B, Sign::Plus)?,
                ell + 1.0,
                w + 2.0 * kappa,
                kappa + w,
            ),
            (
                ho_ab(spec, ell, w, AbKind::B, Sign::Minus)?,
                ell - 1.0,
                w - 2.0 * kappa,
                kappa - w,
            ),
        ];
        for (op, l_dst, w_dst, offset) in cases {
            let lhs = OperatorChain::product(
                "op H",
                vec![
                    ChainElement::Op1(op.clone()),
                    ChainElement::Op2(ho_hamiltonian(spec, ell, w)),
                ],
            );
            let rhs = OperatorChain::product(
                "H op",
                vec![
                    ChainElement::Op2(ho_hamiltonian(spec, l_dst, w_dst)),
                    ChainElement::Op1(op.clone()),
                ],
            );
            let op_chain = OperatorChain::single(op);
            for f in jets.iter().take(2) {
                shifts = shifts.max(combo_residual(
                    &grid,
                    f,
                    &[
                        (one, &lhs),
                        (-one, &rhs),
                        (C64::new(-offset, 0.0), &op_chain),
                    ],
                ));
            }
        }
        // Sigma intertwining (up; down needs l >= 2)
        let up = ho_shift(spec, ell, Sign::Plus)?;
        let mut lhs = up.clone();
        lhs.elements
            .insert(0, ChainElement::Op2(ho_hamiltonian(spec, ell, w)));
        let mut rhs = up.clone();
        rhs.elements
            .push(ChainElement::Op2(ho_hamiltonian(spec, ell + 2.0, w)));
        for f in jets.iter().take(2) {
            inter = inter.max(combo_residual(&grid, f, &[(one, &lhs), (-one, &rhs)]));
        }
    }
    rep.push(
        format!("ho_factorization_a {tag}"),
        "H_(l,w) = a+ a- + kappa(l(l-1)-1/2) - omega(l-1/2)",
        fact_a,
        1e-8,
    );
    rep.push(
        format!("ho_factorization_b {tag}"),
        "H_(l,w) = b-_(l+1,w+2k) b+_(l+1,w+2k) + kappa(l(l+3)+3/2) + omega(l+3/2)",
        fact_b,
        1e-8,
    );
    rep.push(
        format!("ho_parameter_shifts {tag}"),
        "a/b map H_(l,w) to H_(l+-1, w-+2k) with energy offsets +-(kappa -+ omega)",
        shifts,
        1e-7,
    );
    rep.push(
        format!("ho_shift_intertwining {tag}"),
        "Sigma+-_l H_(l,w) = H_(l+-2,w) Sigma+-_l",
        inter,
        1e-7,
    );

    // annihilations
    let mut ann: f64 = 0.0;
    for n in [0.0, 1.0, 2.0] {
        if !spectra::ho_admissible(spec, n) {
            continue;
        }
        let state = ho_rnn(spec, n);
        let sp = ho_shift(spec, n, Sign::Plus)?;
        ann = ann.max(annihilation_residual(&grid, &sp, &state));
        let bp = OperatorChain::single(ho_ab(spec, n + 1.0, w + 2.0 * kappa, AbKind::B, Sign::Plus)?);
        ann = ann.max(annihilation_residual(&grid, &bp, &state));
        let lm = ho_ladder(spec, n, Sign::Minus)?;
        ann = ann.max(annihilation_residual(&grid, &lm, &state));
    }
    rep.push(
        format!("ho_annihilations {tag}"),
        "Sigma+_n, b+_(n+1,w+2k) and Lambda-_n all annihilate R_n^n = C^((k+w)/2k) S^n",
        ann,
        1e-8,
    );

    if kappa != 0.0 {
        // intermediate operator: eigen-relation and c/d intertwining
        let mut n_eig: f64 = 0.0;
        for n in [0.0, 1.0, 2.0] {
            let eps = epsilon_n(spec, n);
            let nop = OperatorChain::second_order(n_operator(spec, eps, w)?);
            let state = ho_rnn(spec, n);
            let expect = -kappa * kappa * n * (n + 1.0);
            n_eig = n_eig.max(combo_residual(
                &grid,
                &state,
                &[(one, &nop), (C64::new(-expect, 0.0), &ident)],
            ));
        }
        rep.push(
            format!("ho_n_operator_eigen {tag}"),
            "N_(eps_n, w) R_n^l = -kappa^2 l(l+1) R_n^l",
            n_eig,
            1e-8,
        );

        let eps = epsilon_n(spec, 1.0);
        let k2 = 2.0 * kappa;
        let mut cd: f64 = 0.0;
        let cases: Vec<(crate::ops::Operator1D, f64, f64)> = vec![
            (ho_cd_op(spec, eps - k2, w - k2, CdKind::C, Sign::Plus)?, eps - k2, w - k2),
            (ho_cd_op(spec, eps, w, CdKind::C, Sign::Minus)?, eps + k2, w + k2),
            (ho_cd_op(spec, eps - k2, w + k2, CdKind::D, Sign::Plus)?, eps - k2, w + k2),
            (ho_cd_op(spec, eps, w, CdKind::D, Sign::Minus)?, eps + k2, w - k2),
        ];
        for (op, eps_dst, w_dst) in cases {
            let lhs = OperatorChain::product(
                "op N",
                vec![
                    ChainElement::Op1(op.clone()),
                    ChainElement::Op2(n_operator(spec, eps, w)?),
                ],
            );
            let rhs = OperatorChain::product(
                "N op",
                vec![
                    ChainElement::Op2(n_operator(spec, eps_dst, w_dst)?),
                    ChainElement::Op1(op),
                ],
            );
            for f in jets.iter().take(2) {
                cd = cd.max(combo_residual(&grid, f, &[(one, &lhs), (-one, &rhs)]));
            }
        }
        rep.push(
            format!("ho_cd_intertwining {tag}"),
            "c/d map N_(eps,w) to N_(eps-+2k, w-+2k) (all four pairings)",
            cd,
            1e-7,
        );
    }

    // ladder action and basis against the eigensolver
    let mut ladder_deficit: f64 = 0.0;
    for (n, ell) in [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)] {
        if !spectra::ho_admissible(spec, n + 2.0) {
            continue;
        }
        let state = spectra::radial_factor(spec, n, ell)?;
        let up = ho_ladder(spec, n, Sign::Plus)?;
        let raised = apply_jet(&up, &state);
        let prob = SelfAdjointProblem::radial(spec, ell)?;
        let idx = ((n + 2.0 - ell) / 2.0) as usize;
        let sol = eigensolve(&prob, idx + 1)?;
        ladder_deficit = ladder_deficit.max(1.0 - state_overlap_with_oracle(&sol, &raised, idx));
    }
    rep.push(
        format!("ho_ladder_action {tag}"),
        "Lambda+_n R_n^l lands on the eigensolver's R_(n+2)^l",
        ladder_deficit,
        1e-6,
    );

    let mut basis_eig: f64 = 0.0;
    let mut count_err = 0usize;
    let mut oracle_deficit: f64 = 0.0;
    let mut s_deficit: f64 = 0.0;
    for n in [2u32, 3] {
        if !spectra::ho_admissible(spec, n as f64) {
            continue;
        }
        let states = build_basis(spec, n)?;
        if states.len() != degeneracy_count(spec, n as f64) {
            count_err += 1;
        }
        for st in states.iter().filter(|s| s.qn.m == 0.0) {
            let h = OperatorChain::second_order(ho_hamiltonian(spec, st.qn.ell, w));
            basis_eig = basis_eig.max(combo_residual(
                &grid,
                &st.radial,
                &[(one, &h), (C64::new(-st.energy, 0.0), &ident)],
            ));
            let prob = SelfAdjointProblem::radial(spec, st.qn.ell)?;
            let idx = ((st.qn.n - st.qn.ell) / 2.0) as usize;
            let sol = eigensolve(&prob, idx + 1)?;
            oracle_deficit =
                oracle_deficit.max(1.0 - state_overlap_with_oracle(&sol, &st.radial, idx));
            // full-state S+-: radial part lands on the (l +- 2) eigenvector
            if st.qn.ell + 2.0 <= st.qn.n {
                let up = ho_shift(spec, st.qn.ell, Sign::Plus)?;
                let raised = apply_jet(&up, &st.radial);
                let prob2 = SelfAdjointProblem::radial(spec, st.qn.ell + 2.0)?;
                let idx2 = ((st.qn.n - st.qn.ell - 2.0) / 2.0) as usize;
                let sol2 = eigensolve(&prob2, idx2 + 1)?;
                s_deficit =
                    s_deficit.max(1.0 - state_overlap_with_oracle(&sol2, &raised, idx2));
            }
        }
    }
    rep.push(
        format!("ho_basis_eigen {tag}"),
        "parity-seeded ladder chains satisfy H_(l,w) R = E_n R",
        basis_eig,
        1e-7,
    );
    rep.push(
        format!("ho_basis_count {tag}"),
        "degeneracy count over same-parity l",
        count_err as f64,
        0.5,
    );
    rep.push(
        format!("ho_basis_oracle {tag}"),
        "built radial factors overlap the eigensolver's eigenvectors",
        oracle_deficit,
        1e-6,
    );
    rep.push(
        format!("ho_symmetry_action {tag}"),
        "Sigma+_l R_n^l lands on the eigensolver's R_n^(l+2) (S+- moves l by two)",
        s_deficit,
        1e-6,
    );

    // full-state symmetry: S+ Psi_(2,0,0) lands on the ladder-built Psi_(2,2,0)
    if spectra::ho_admissible(spec, 2.0) {
        let g3 = grid3(spec)?;
        let st: [JetFn; 3] = [
            spectra::radial_factor(spec, 2.0, 0.0)?,
            spectra::theta_factor(spec, 0.0, 0.0)?,
            phase(0.0),
        ];
        let s_up = symmetry_compose(spec, SymmetryKind::RadialTheta, Sign::Plus, 0.0, 0.0)?;
        let out = s_up.apply_jet_product(&g3, &st);
        let target: [JetFn; 3] = [
            spectra::radial_factor(spec, 2.0, 2.0)?,
            spectra::theta_factor(spec, 2.0, 0.0)?,
            phase(0.0),
        ];
        let target_f = crate::field::sample_product(&g3, &target);
        rep.push(
            format!("ho_full_symmetry_overlap {tag}"),
            "S+ Psi_(n,l,m) lands on Psi_(n,l+2,m) (full product state)",
            1.0 - overlap3(&out, &target_f),
            1e-6,
        );
    }
    Ok(())
}

fn ho_cd_op(
    spec: &SystemSpec,
    eps: f64,
    w: f64,
    kind: CdKind,
    sign: Sign,
) -> Result<crate::ops::Operator1D> {
    crate::factor::ho_cd(spec, eps, w, kind, sign)
}

/// Oscillator spectrum adjudication (criterion 5).
pub fn ho_spectrum_rows(spec: &SystemSpec, rep: &mut Report) -> Result<()> {
    let kappa = spec.kappa();
    let tag = fmt_kappa(kappa);
    let ns: Vec<f64> = (0..=5)
        .map(|n| n as f64)
        .filter(|&n| spectra::ho_admissible(spec, n))
        .collect();
    // even n live in the l = 0 problem, odd in l = 1
    let mut numeric = vec![0.0; ns.len()];
    for parity in [0usize, 1] {
        let prob = SelfAdjointProblem::radial(spec, parity as f64)?;
        let count = ns.iter().filter(|&&n| (n as usize) % 2 == parity).count();
        if count == 0 {
            continue;
        }
        let sol = eigensolve(&prob, count)?;
        let mut j = 0;
        for (i, &n) in ns.iter().enumerate() {
            if (n as usize) % 2 == parity {
                numeric[i] = sol.values[j];
                j += 1;
            }
        }
    }
    let analytic: Vec<f64> = ns.iter().map(|&n| ho_energy(spec, n)).collect::<Result<_>>()?;
    let cmp = crate::oracle::compare_spectrum(&analytic, &numeric, 1e-6)?;
    rep.push(
        format!("ho_spectrum_shifted_origin {tag}"),
        "eigensolver matches E_n = eps_n(eps_n - 4k)/4k - (w^2-k^2)/4k, eps_n = k(2n+5) + w",
        cmp.max_abs_dev,
        1e-6,
    );
    if kappa != 0.0 {
        let max_gap = ns
            .iter()
            .zip(&numeric)
            .map(|(&n, &e)| (ho_energy_unbalanced_variant(spec, n) - e).abs())
            .fold(0.0f64, f64::max);
        rep.finding(
            format!("ho_spectrum_adjudication {tag}"),
            format!(
                "the shifted-origin closed form matches the eigensolver to {:.2e}; the \
                 unbalanced variant kappa n(n+3) + omega(n+3/2) deviates by {:.6} \
                 = |3 kappa/2| (expected {:.6}), i.e. it misses the constant 3 kappa/2",
                cmp.max_abs_dev,
                max_gap,
                (1.5 * kappa).abs()
            ),
        );
        // the adjudication itself as a row: the measured gap equals 1.5 kappa
        rep.push(
            format!("ho_spectrum_variant_gap {tag}"),
            "| (kappa n(n+3) + omega(n+3/2)) - E_oracle | = |3 kappa / 2| for all n",
            (max_gap - (1.5 * kappa).abs()).abs(),
            1e-6,
        );
    }
    Ok(())
}

/// Octant (SW/Evans) quantum suite at one curvature.
pub fn octant_quantum_rows(spec: &SystemSpec, _cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    let kappa = spec.kappa();
    let tag = format!("{} {}", spec.kind.name(), fmt_kappa(kappa));
    let (k1, k2, k3) = (spec.k1, spec.k2, spec.k3);
    let m0 = k1 + k2;
    let gt = theta_grid(spec, 96)?;
    let gp = phi_grid(spec, 96)?;
    let one = C64::new(1.0, 0.0);
    let ident = OperatorChain::identity("1");

    // angular oracle eigenvalues (criterion 7)
    let prob_phi = SelfAdjointProblem::phi(spec)?;
    let sol_phi = eigensolve(&prob_phi, 3)?;
    let mut phi_dev: f64 = 0.0;
    for p in 0..3 {
        let mt = m0 + 2.0 * p as f64;
        phi_dev = phi_dev.max((sol_phi.values[p] - mt * mt).abs());
    }
    rep.push(
        format!("octant_phi_eigenvalues {tag}"),
        "azimuthal eigenvalues are (k1 + k2 + 2p)^2",
        phi_dev,
        1e-6,
    );
    let mut theta_dev: f64 = 0.0;
    for p in 0..3 {
        let mt = m0 + 2.0 * p as f64;
        let prob_th = SelfAdjointProblem::theta(spec, mt)?;
        let sol_th = eigensolve(&prob_th, 3)?;
        for g in 0..3 {
            let lt = mt + k3 + 2.0 * g as f64;
            theta_dev = theta_dev.max((sol_th.values[g] - lt * (lt + 1.0)).abs());
        }
    }
    rep.push(
        format!("octant_theta_eigenvalues {tag}"),
        "polar eigenvalues are l(l+1) with l = m + k3 + 2g",
        theta_dev,
        1e-6,
    );

    // theta factorization identities
    let jets_t = smooth_jets(&gt, 3);
    let mut fact: f64 = 0.0;
    for m in [m0, m0 + 2.0] {
        let h = OperatorChain::second_order(theta_hamiltonian(spec, m));
        let ca = (k3 - m) * (k3 - m + 1.0);
        let prod_a = OperatorChain::product(
            "a+a-",
            vec![
                ChainElement::Op1(crate::factor::theta_ab(spec, m, ThetaAbKind::A, Sign::Plus)?),
                ChainElement::Op1(crate::factor::theta_ab(spec, m, ThetaAbKind::A, Sign::Minus)?),
            ],
        );
        let cb = (k3 + m - 2.0) * (k3 + m - 1.0);
        let prod_b = OperatorChain::product(
            "b+b-",
            vec![
                ChainElement::Op1(crate::factor::theta_ab(spec, m, ThetaAbKind::B, Sign::Plus)?),
                ChainElement::Op1(crate::factor::theta_ab(spec, m, ThetaAbKind::B, Sign::Minus)?),
            ],
        );
        for f in &jets_t {
            fact = fact.max(combo_residual(
                &gt,
                f,
                &[(one, &prod_a), (C64::new(ca, 0.0), &ident), (-one, &h)],
            ));
            fact = fact.max(combo_residual(
                &gt,
                f,
                &[(one, &prod_b), (C64::new(cb, 0.0), &ident), (-one, &h)],
            ));
        }
    }
    rep.push(
        format!("octant_theta_factorizations {tag}"),
        "L2_m = a+ a- + (k3-m)(k3-m+1) = b+ b- + (k3+m-2)(k3+m-1)",
        fact,
        1e-8,
    );

    // closed-form annihilation statements
    let th0 = theta_state_bottom(spec, m0);
    let ph0 = phi_state_bottom(spec);
    let mut ann: f64 = 0.0;
    ann = ann.max(annihilation_residual(
        &gp,
        &angular_ops(spec, AngularOpKind::PhiLadder { m: m0 }, Sign::Minus)?,
        &ph0,
    ));
    ann = ann.max(annihilation_residual(
        &gt,
        &angular_ops(spec, AngularOpKind::ThetaShift { m: m0 }, Sign::Plus)?,
        &th0,
    ));
    ann = ann.max(annihilation_residual(
        &gt,
        &angular_ops(spec, AngularOpKind::ThetaLadder { ell: m0 + k3 }, Sign::Minus)?,
        &th0,
    ));
    rep.push(
        format!("octant_annihilations {tag}"),
        "phi_Lambda-, theta_Sigma+ and theta_Lambda- annihilate the bottom angular states",
        ann,
        1e-8,
    );

    // eigen-relations of the bottom states
    let mut eig: f64 = 0.0;
    let hphi = OperatorChain::second_order(phi_hamiltonian(spec)?);
    eig = eig.max(combo_residual(
        &gp,
        &ph0,
        &[(one, &hphi), (C64::new(-m0 * m0, 0.0), &ident)],
    ));
    let hth = OperatorChain::second_order(theta_hamiltonian(spec, m0));
    let l0 = m0 + k3;
    eig = eig.max(combo_residual(
        &gt,
        &th0,
        &[(one, &hth), (C64::new(-l0 * (l0 + 1.0), 0.0), &ident)],
    ));
    rep.push(
        format!("octant_bottom_eigen {tag}"),
        "L2z phi_m = m^2 phi_m and L2_m P = l(l+1) P on the closed-form bottom states",
        eig,
        1e-8,
    );

    // ladder/shift actions against the oracle
    let mut act: f64 = 0.0;
    let mut phi_state = ph0.clone();
    for p in 0..2usize {
        let m = m0 + 2.0 * p as f64;
        let up = angular_ops(spec, AngularOpKind::PhiLadder { m }, Sign::Plus)?;
        phi_state = apply_jet(&up, &phi_state);
        let vals: Vec<f64> = sol_phi
            .nodes
            .iter()
            .map(|&x| phi_state(x, 0).value().re)
            .collect();
        act = act.max(1.0 - sol_phi.overlap(&vals, p + 1));
    }
    let prob_th0 = SelfAdjointProblem::theta(spec, m0)?;
    let sol_th0 = eigensolve(&prob_th0, 3)?;
    let mut th_state = th0.clone();
    for g in 0..2usize {
        let ell = l0 + 2.0 * g as f64;
        let up = angular_ops(spec, AngularOpKind::ThetaLadder { ell }, Sign::Plus)?;
        th_state = apply_jet(&up, &th_state);
        let vals: Vec<f64> = sol_th0
            .nodes
            .iter()
            .map(|&x| th_state(x, 0).value().re)
            .collect();
        act = act.max(1.0 - sol_th0.overlap(&vals, g + 1));
    }
    // m-shift: bottom (m0, l0+2) state shifted to the (m0+2) problem
    let src = spectra::theta_factor(spec, l0 + 2.0, m0)?;
    let shift = angular_ops(spec, AngularOpKind::ThetaShift { m: m0 }, Sign::Plus)?;
    let shifted = apply_jet(&shift, &src);
    let prob_th2 = SelfAdjointProblem::theta(spec, m0 + 2.0)?;
    let sol_th2 = eigensolve(&prob_th2, 2)?;
    let vals: Vec<f64> = sol_th2
        .nodes
        .iter()
        .map(|&x| shifted(x, 0).value().re)
        .collect();
    act = act.max(1.0 - sol_th2.overlap(&vals, 0));
    rep.push(
        format!("octant_ladder_actions {tag}"),
        "phi_Lambda+, theta_Lambda+ and theta_Sigma+ land on the eigensolver's eigenvectors",
        act,
        1e-6,
    );

    // highest-weight full state: H Psi = E Psi plus the radial annihilation;
    // everything below needs an admissible bound sector
    let ntot = k1 + k2 + k3;
    if !spectra::admissible(spec, ntot) {
        rep.finding(
            format!("octant_bound_sector {tag}"),
            format!(
                "no admissible bound state at this curvature: the minimum sector n = {ntot:.3} fails the normalizability inequality"
            ),
        );
        return Ok(());
    }
    let g3 = grid3(spec)?;
    let state: [JetFn; 3] = [
        match spec.kind {
            SystemKind::Evans => kc_rnn(spec, ntot),
            _ => ho_rnn(spec, ntot),
        },
        th0.clone(),
        ph0.clone(),
    ];
    let e = spectra::energy(spec, ntot)?;
    let h = full_hamiltonian(spec);
    let psi = crate::field::sample_product(&g3, &state);
    let mut hpsi = h.apply_jet_product(&g3, &state);
    let denom = norm3(&hpsi).max(norm3(&psi));
    hpsi.axpy(C64::new(-e, 0.0), &psi);
    rep.push(
        format!("octant_highest_weight_eigen {tag}"),
        "H Psi = E Psi for the minimum-sector closed-form state",
        norm3(&hpsi) / denom,
        1e-7,
    );
    let rg = &g3.r;
    let rad_ann = match spec.kind {
        SystemKind::Evans => annihilation_residual(
            rg,
            &OperatorChain::single(kc_sigma(spec, ntot + 1.0, Sign::Plus)?),
            &state[0],
        ),
        _ => annihilation_residual(rg, &ho_shift(spec, ntot, Sign::Plus)?, &state[0]),
    };
    rep.push(
        format!("octant_radial_annihilation {tag}"),
        "the radial raise annihilates the minimum-sector radial factor",
        rad_ann,
        1e-8,
    );

    // full-state symmetry actions on basis states (highest admissible level)
    let base = k1 + k2 + k3;
    let level = if spectra::admissible(spec, base + 2.0) { 1 } else { 0 };
    let states = build_basis(spec, level)?;
    let mut sym_act: f64 = 0.0;
    for st in &states {
        // theta-phi symmetry raises m by 2 at fixed l when the target exists
        if st.qn.ell - (st.qn.m + 2.0) - k3 >= -0.25 {
            let op = symmetry_compose(spec, SymmetryKind::ThetaPhi, Sign::Plus, st.qn.ell, st.qn.m)?;
            let factors: [JetFn; 3] = [st.radial.clone(), st.theta.clone(), st.phi.clone()];
            let out = op.apply_jet_product(&g3, &factors);
            let tgt = spectra::theta_factor(spec, st.qn.ell, st.qn.m + 2.0)?;
            let tphi = octant_phi_target(spec, st.qn.m + 2.0)?;
            let target: [JetFn; 3] = [st.radial.clone(), tgt, tphi];
            let target_f = crate::field::sample_product(&g3, &target);
            sym_act = sym_act.max(1.0 - overlap3(&out, &target_f));
        }
        // radial-theta symmetry raises l by 2 at fixed n when admissible
        if st.qn.ell + 2.0 <= st.qn.n + 0.25 {
            let op =
                symmetry_compose(spec, SymmetryKind::RadialTheta, Sign::Plus, st.qn.ell, st.qn.m)?;
            let factors: [JetFn; 3] = [st.radial.clone(), st.theta.clone(), st.phi.clone()];
            let out = op.apply_jet_product(&g3, &factors);
            let target: [JetFn; 3] = [
                spectra::radial_factor(spec, st.qn.n, st.qn.ell + 2.0)?,
                spectra::theta_factor(spec, st.qn.ell + 2.0, st.qn.m)?,
                st.phi.clone(),
            ];
            let target_f = crate::field::sample_product(&g3, &target);
            sym_act = sym_act.max(1.0 - overlap3(&out, &target_f));
        }
    }
    rep.push(
        format!("octant_symmetry_actions {tag}"),
        "L+-_thetaphi moves m by two, S+-_rtheta moves l by two, onto ladder-built targets",
        sym_act,
        1e-6,
    );
    Ok(())
}

fn octant_phi_target(spec: &SystemSpec, m: f64) -> Result<JetFn> {
    let mut state = phi_state_bottom(spec);
    let mut cur = spec.k1 + spec.k2;
    while cur < m - 0.5 {
        let op = angular_ops(spec, AngularOpKind::PhiLadder { m: cur }, Sign::Plus)?;
        state = apply_jet(&op, &state);
        cur += 2.0;
    }
    Ok(state)
}

/// Classical suite for one system kind.
pub fn classical_suite(kind: SystemKind, cfg: &VerifyConfig) -> Result<Report> {
    let mut rep = Report::default();
    let mut rng = Rng::seeded(cfg.seed);
    for &kappa in &cfg.kappas {
        let spec = make_spec(kind, kappa, cfg)?;
        let tag = format!("{} {}", kind.name(), fmt_kappa(kappa));
        classical_bracket_rows(&spec, cfg, &mut rng, &tag, &mut rep)?;
        classical_drift_rows(&spec, cfg, &tag, &mut rep)?;
    }
    if matches!(kind, SystemKind::Ho) {
        // energy-ladder phase rate on the sphere (kappa = 0.2)
        let curv = Curvature::new(0.2, None)?;
        let spec = SystemSpec::ho(curv, cfg.omega)?;
        let start = PhasePoint::new(1.1, 0.2, 1.3, 0.4, 0.2, 0.5);
        let traj = flow(&spec, &start, cfg.t_end.min(40.0), 0.002, 10)?;
        let subs = substitutions(&spec, &start);
        let rate_expect = 4.0 * (spec.kappa() * subs.e_bar).sqrt();
        let o = observable(&spec, "Lambda+_E")?;
        let (mod_drift, phases) = modulus_and_phase(&spec, &o, &traj);
        let rate = linear_rate(&traj.times, &phases).abs();
        rep.push(
            "ho_ladder_phase_rate kappa=0.2",
            "the phase of Lambda+_E advances linearly at 4 sqrt(kappa E-bar)",
            (rate - rate_expect).abs() / rate_expect,
            0.01,
        );
        rep.push(
            "ho_ladder_modulus kappa=0.2",
            "|Lambda+_E| is conserved along the flow",
            mod_drift,
            1e-5,
        );
    }
    Ok(rep)
}

fn classical_bracket_rows(
    spec: &SystemSpec,
    cfg: &VerifyConfig,
    rng: &mut Rng,
    tag: &str,
    rep: &mut Report,
) -> Result<()> {
    let kappa = spec.kappa();
    let n_points = cfg.bracket_points;
    let h_obs = observable(spec, "H")?;
    let omega_big = spec.omega2_eff().sqrt();

    // accumulators per relation
    let mut sigma_dev: f64 = 0.0;
    let mut prod_dev: f64 = 0.0;
    let mut sym_h_dev: f64 = 0.0;
    let mut sym_l_dev: f64 = 0.0;
    let mut pi_dev: f64 = 0.0;
    let mut ladder_dev: f64 = 0.0;
    let mut ladder_checked = false;
    let mut oct_dev: f64 = 0.0;

    for _ in 0..n_points {
        let pt = random_point(spec, rng);
        let subs = substitutions(spec, &pt);
        let s2 = s_kappa(kappa, pt.r()).powi(2);
        let hf = h_obs.frozen(spec, &pt);

        match spec.kind {
            SystemKind::Kc | SystemKind::Evans => {
                for (name, sgn) in [("Sigma+_r", 1.0), ("Sigma-_r", -1.0)] {
                    let o = observable(spec, name)?;
                    let of = o.frozen(spec, &pt);
                    let (pb, _) = poisson_bracket(&hf, &of, &pt, 1e-4)?;
                    let expect = C64::new(0.0, -sgn * 2.0 * subs.ell / s2) * of(&pt);
                    sigma_dev =
                        sigma_dev.max((pb - expect).norm() / expect.norm().max(1.0));
                }
                // product identity Sigma+ Sigma- = H_l + q^2/4l^2 - kappa l^2
                let sp = observable(spec, "Sigma+_r")?.value(spec, &pt);
                let sm = observable(spec, "Sigma-_r")?.value(spec, &pt);
                let h_l = pt.p_r() * pt.p_r() + subs.ell * subs.ell / s2
                    - spec.q / crate::kappa::t_kappa(kappa, pt.r());
                let rhs = h_l + spec.q * spec.q / (4.0 * subs.ell * subs.ell)
                    - kappa * subs.ell * subs.ell;
                prod_dev = prod_dev
                    .max((sp * sm - C64::new(rhs, 0.0)).norm() / rhs.abs().max(1.0));
            }
            SystemKind::Ho | SystemKind::Sw => {
                for (name, sgn) in [("Sigma+_r", 1.0), ("Sigma-_r", -1.0)] {
                    let o = observable(spec, name)?;
                    let of = o.frozen(spec, &pt);
                    let (pb, _) = poisson_bracket(&hf, &of, &pt, 1e-4)?;
                    let expect = C64::new(0.0, -sgn * 4.0 * subs.ell / s2) * of(&pt);
                    sigma_dev =
                        sigma_dev.max((pb - expect).norm() / expect.norm().max(1.0));
                }
                // classical factorizations H = a+a- + l(kl - W) = b+b- + l(kl + W)
                let av = observable(spec, "a+")?.value(spec, &pt)
                    * observable(spec, "a-")?.value(spec, &pt);
                let bv = observable(spec, "b+")?.value(spec, &pt)
                    * observable(spec, "b-")?.value(spec, &pt);
                let h_l = pt.p_r() * pt.p_r()
                    + subs.ell * subs.ell / s2
                    + 0.25
                        * spec.omega2_eff()
                        * crate::kappa::t_kappa(kappa, pt.r()).powi(2);
                let ra = h_l - subs.ell * (kappa * subs.ell - omega_big);
                let rb = h_l - subs.ell * (kappa * subs.ell + omega_big);
                prod_dev = prod_dev
                    .max((av - C64::new(ra, 0.0)).norm() / ra.abs().max(1.0))
                    .max((bv - C64::new(rb, 0.0)).norm() / rb.abs().max(1.0));
                let t2 = crate::kappa::t_kappa(kappa, pt.r()).powi(2);
                for (name, sgn) in [("Pi+", 1.0), ("Pi-", -1.0)] {
                    let o = observable(spec, name)?;
                    let of = o.frozen(spec, &pt);
                    let (pb, _) = poisson_bracket(&hf, &of, &pt, 1e-4)?;
                    let expect =
                        C64::new(0.0, sgn * 2.0 * omega_big * (kappa * t2 + 1.0)) * of(&pt);
                    pi_dev = pi_dev.max((pb - expect).norm() / expect.norm().max(1.0));
                }
                if kappa != 0.0 && kappa * subs.e_bar > 0.0 {
                    ladder_checked = true;
                    let spec_c = *spec;
                    let hbar = move |x: &PhasePoint| {
                        C64::new(
                            classical::hamiltonian(&spec_c, x)
                                + 0.25 * spec_c.omega2_eff() / kappa,
                            0.0,
                        )
                    };
                    let rate = 4.0 * (kappa * subs.e_bar).sqrt();
                    for (name, sgn) in [("Lambda+_E", 1.0), ("Lambda-_E", -1.0)] {
                        let o = observable(spec, name)?;
                        let of = o.frozen(spec, &pt);
                        let (pb, _) = poisson_bracket(&hbar, &of, &pt, 1e-4)?;
                        let expect = C64::new(0.0, sgn * rate) * of(&pt);
                        ladder_dev =
                            ladder_dev.max((pb - expect).norm() / expect.norm().max(1.0));
                    }
                }
            }
        }

        // symmetry brackets, common to all systems
        let l2_obs = observable(spec, "L2")?;
        let l2f = l2_obs.frozen(spec, &pt);
        let sqrt_l2 = move |x: &PhasePoint| l2f(x).sqrt();
        let step = if spec.kind == SystemKind::Kc { 1.0 } else { 2.0 };
        for (name, sgn) in [("S+_rtheta", 1.0), ("S-_rtheta", -1.0)] {
            let o = observable(spec, name)?;
            let of = o.frozen(spec, &pt);
            let scale = of(&pt).norm().max(1.0);
            let (pb, _) = poisson_bracket(&hf, &of, &pt, 1e-4)?;
            sym_h_dev = sym_h_dev.max(pb.norm() / scale);
            let (pb, _) = poisson_bracket(&sqrt_l2, &of, &pt, 1e-4)?;
            let expect = C64::new(0.0, sgn * step) * of(&pt);
            sym_l_dev = sym_l_dev.max((pb - expect).norm() / scale);
        }
        if spec.octant_locked() {
            let lz2_obs = observable(spec, "Lz2")?;
            let lz2f = lz2_obs.frozen(spec, &pt);
            let sqrt_lz2 = move |x: &PhasePoint| lz2f(x).sqrt();
            for (name, sgn) in [("L+_thetaphi", 1.0), ("L-_thetaphi", -1.0)] {
                let o = observable(spec, name)?;
                let of = o.frozen(spec, &pt);
                let scale = of(&pt).norm().max(1.0);
                let (pb, _) = poisson_bracket(&hf, &of, &pt, 1e-4)?;
                oct_dev = oct_dev.max(pb.norm() / scale);
                let l2g = observable(spec, "L2")?.frozen(spec, &pt);
                let (pb, _) = poisson_bracket(&l2g, &of, &pt, 1e-4)?;
                oct_dev = oct_dev.max(pb.norm() / scale);
                let (pb, _) = poisson_bracket(&sqrt_lz2, &of, &pt, 1e-4)?;
                let expect = C64::new(0.0, sgn * 2.0) * of(&pt);
                oct_dev = oct_dev.max((pb - expect).norm() / scale);
            }
        }
    }

    let rate_label = if spec.kind.is_oscillator_like() {
        "{H_l, Sigma+-} = -+ i (4 l / S^2) Sigma+-"
    } else {
        "{H_l, Sigma+-} = -+ i (2 l / S^2) Sigma+-"
    };
    rep.push(
        format!("cl_sigma_bracket {tag}"),
        rate_label,
        sigma_dev,
        1e-5,
    );
    rep.push(
        format!("cl_product_identities {tag}"),
        "classical factorization products equal H_l plus their constants",
        prod_dev,
        1e-10,
    );
    rep.push(
        format!("cl_symmetry_conserved {tag}"),
        "{H, S+-_rtheta} = 0",
        sym_h_dev,
        1e-5,
    );
    let step_txt = if spec.kind == SystemKind::Kc {
        "{sqrt(L2), S+-} = +- i S+- (sign forced by {H, S} = 0)"
    } else {
        "{sqrt(L2), S+-} = +- 2 i S+-"
    };
    rep.push(format!("cl_symmetry_ladder {tag}"), step_txt, sym_l_dev, 1e-5);
    if spec.kind.is_oscillator_like() {
        rep.push(
            format!("cl_pi_bracket {tag}"),
            "{H_l, Pi+-} = +- 2 i Omega (kappa T^2 + 1) Pi+-",
            pi_dev,
            if kappa == 0.0 { 1e-6 } else { 1e-5 },
        );
        if ladder_checked {
            rep.push(
                format!("cl_ladder_bracket {tag}"),
                "{H-bar_l, Lambda+-_E} = +- 4 i sqrt(kappa E-bar) Lambda+-_E",
                ladder_dev,
                1e-5,
            );
        } else if kappa != 0.0 {
            rep.finding(
                format!("cl_ladder_bracket {tag}"),
                "skipped: kappa E-bar < 0 at the sampled points (no real sqrt)".to_string(),
            );
        }
    }
    if spec.octant_locked() {
        rep.push(
            format!("cl_octant_symmetries {tag}"),
            "{H, L+-} = {L2, L+-} = 0 and {sqrt(Lz2), L+-} = +- 2 i L+-",
            oct_dev,
            1e-5,
        );
    }
    Ok(())
}

fn classical_drift_rows(
    spec: &SystemSpec,
    cfg: &VerifyConfig,
    tag: &str,
    rep: &mut Report,
) -> Result<()> {
    // bounded orbit start per system; skip when the energy landscape admits
    // no bound orbit (strong barriers at negative curvature)
    let start = bounded_start(spec);
    if let Some(thr) = classical::escape_threshold(spec) {
        if classical::hamiltonian(spec, &start) >= thr - 1e-9 {
            rep.finding(
                format!("cl_drift {tag}"),
                "skipped: no bound orbit at this curvature (start energy above the escape threshold)"
                    .to_string(),
            );
            return Ok(());
        }
    }
    let traj = flow(spec, &start, cfg.t_end, 0.001, 100)?;
    rep.push(
        format!("cl_energy_drift {tag}"),
        "H is conserved along the flow",
        traj.energy_drift,
        1e-7,
    );
    let mut names: Vec<&str> = vec!["L2", "S+_rtheta", "S-_rtheta"];
    if spec.kind.is_central() {
        names.push("Lz");
    } else {
        names.push("Lz2");
        names.push("L+_thetaphi");
        names.push("L-_thetaphi");
    }
    let mut drift: f64 = 0.0;
    for name in names {
        let o = observable(spec, name)?;
        drift = drift.max(conservation_check(spec, &o, &traj));
    }
    rep.push(
        format!("cl_constants_drift {tag}"),
        "L2, Lz(2) and the composed symmetries are constant along the flow",
        drift,
        1e-5,
    );
    // control: the bare shift function keeps its modulus but not its phase
    let o = observable(spec, "Sigma+_r")?;
    let (mod_drift, phases) = modulus_and_phase(spec, &o, &traj);
    rep.push(
        format!("cl_shift_modulus_control {tag}"),
        "|Sigma+| alone is conserved while its phase rotates (not a symmetry)",
        mod_drift,
        1e-5,
    );
    let rotation = (phases[phases.len() - 1] - phases[0]).abs();
    if rotation < 0.5 {
        rep.push(
            format!("cl_shift_phase_control {tag}"),
            "the phase of Sigma+ alone drifts along the flow",
            f64::INFINITY,
            1.0,
        );
    } else {
        rep.finding(
            format!("cl_shift_phase_control {tag}"),
            format!("the phase of Sigma+ rotated by {rotation:.2} rad over t = {}", cfg.t_end),
        );
    }
    Ok(())
}

fn bounded_start(spec: &SystemSpec) -> PhasePoint {
    let kappa = spec.kappa();
    if spec.octant_locked() {
        // sit near the angular minimum of the centrifugal barriers and the
        // radial minimum of the resulting effective potential, with small
        // momenta: the deepest available orbit
        let phi = (spec.k2 / spec.k1).sqrt().atan();
        let theta = ((spec.k1 + spec.k2) / spec.k3).sqrt().atan();
        let end = spec.r_domain_end();
        let mut best_r = 0.3 * end;
        let mut best_u = f64::INFINITY;
        for j in 1..400 {
            let r = 0.9 * end * j as f64 / 400.0;
            let p = PhasePoint::new(r, 0.0, theta, 0.0, phi, 0.0);
            let u = classical::hamiltonian(spec, &p);
            if u < best_u {
                best_u = u;
                best_r = r;
            }
        }
        return PhasePoint::new(best_r, 0.1, theta, 0.1, phi, 0.1);
    }
    match spec.kind {
        SystemKind::Kc | SystemKind::Evans => {
            if kappa > 0.0 {
                PhasePoint::new(2.5 / kappa.sqrt().max(1.0), 0.2, 1.3, 0.6, 0.4, 0.5)
            } else {
                // bound orbit with a gentle perihelion, below the kappa < 0
                // escape threshold
                PhasePoint::new(1.2, 0.2, 1.3, 0.6, 0.4, 0.5)
            }
        }
        SystemKind::Ho | SystemKind::Sw => {
            let r0 = 0.35 * spec.r_domain_end().min(6.0);
            PhasePoint::new(r0, 0.2, 1.3, 0.4, 0.2, 0.5)
        }
    }
}

/// Flat-limit continuity rows (criterion 9).
pub fn continuity_suite(kind: SystemKind, cfg: &VerifyConfig) -> Result<Report> {
    let mut rep = Report::default();
    let flat = make_spec(kind, 0.0, cfg)?;
    for &kappa in &[1e-6, -1e-6] {
        let spec = make_spec(kind, kappa, cfg)?;
        let tag = format!("{} kappa={kappa:+.0e}", kind.name());

        // operator coefficient functions, relative sup-norm over (0, 3]
        let mut coef_dev: f64 = 0.0;
        let pairs: Vec<(OperatorChain, OperatorChain)> = match kind {
            SystemKind::Kc | SystemKind::Evans => {
                let mut v = Vec::new();
                for ell in 1..=3 {
                    for sign in [Sign::Plus, Sign::Minus] {
                        v.push((
                            OperatorChain::single(kc_sigma(&spec, ell as f64, sign)?),
                            OperatorChain::single(kc_sigma(&flat, ell as f64, sign)?),
                        ));
                    }
                }
                v
            }
            SystemKind::Ho | SystemKind::Sw => {
                let mut v = Vec::new();
                for ell in 0..=2 {
                    for kind_ab in [AbKind::A, AbKind::B] {
                        for sign in [Sign::Plus, Sign::Minus] {
                            v.push((
                                OperatorChain::single(ho_ab(
                                    &spec,
                                    ell as f64,
                                    spec.omega,
                                    kind_ab,
                                    sign,
                                )?),
                                OperatorChain::single(ho_ab(
                                    &flat,
                                    ell as f64,
                                    flat.omega,
                                    kind_ab,
                                    sign,
                                )?),
                            ));
                        }
                    }
                }
                for n in [0.0, 1.0] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        v.push((ho_ladder(&spec, n, sign)?, ho_ladder(&flat, n, sign)?));
                    }
                }
                v
            }
        };
        for (a, b) in &pairs {
            let mut sup_diff = [0.0f64; 3];
            let mut sup_flat = [0.0f64; 3];
            for j in 1..=30 {
                let r = 3.0 * j as f64 / 30.0;
                let ca = crate::ops::effective_coefficients(a, r);
                let cb = crate::ops::effective_coefficients(b, r);
                for i in 0..3 {
                    sup_diff[i] = sup_diff[i].max((ca[i] - cb[i]).norm());
                    sup_flat[i] = sup_flat[i].max(cb[i].norm());
                }
            }
            for i in 0..3 {
                coef_dev = coef_dev.max(sup_diff[i] / sup_flat[i].max(1.0));
            }
        }
        rep.push(
            format!("flat_limit_coefficients {tag}"),
            "operator coefficient functions at kappa = +-1e-6 match the flat ones (sup-norm)",
            coef_dev,
            1e-5,
        );

        // spectrum values within the continuity radius |dE/dkappa| <= 1e-5/|kappa|
        let mut spec_dev: f64 = 0.0;
        let n_max = match kind {
            SystemKind::Kc | SystemKind::Evans => 2,
            SystemKind::Ho | SystemKind::Sw => 1,
        };
        for n in 0..=n_max {
            let n = n as f64;
            let (a, b) = match kind {
                SystemKind::Kc | SystemKind::Evans => {
                    (kc_energy(&spec, n)?, kc_energy(&flat, n)?)
                }
                SystemKind::Ho | SystemKind::Sw => (ho_energy(&spec, n)?, ho_energy(&flat, n)?),
            };
            spec_dev = spec_dev.max((a - b).abs());
        }
        rep.push(
            format!("flat_limit_spectrum {tag}"),
            "energies at kappa = +-1e-6 match the flat ones (n within the continuity radius)",
            spec_dev,
            1e-5,
        );

        // classical observables at matched phase points
        let mut rng = Rng::seeded(cfg.seed ^ 0x5eed);
        let mut cl_dev: f64 = 0.0;
        let names: Vec<&str> = match kind {
            SystemKind::Kc | SystemKind::Evans => vec!["Sigma+_r", "Sigma-_r", "S+_rtheta"],
            SystemKind::Ho | SystemKind::Sw => {
                vec!["Sigma+_r", "Sigma-_r", "a+", "b-", "Pi+", "Pi-", "S+_rtheta"]
            }
        };
        for _ in 0..30 {
            let pt = {
                // keep the point inside the compact comparison region
                let mut p = random_point(&flat, &mut rng);
                p.0[0] = rng.range(0.5, 3.0);
                p
            };
            for name in &names {
                let a = observable(&spec, name)?.value(&spec, &pt);
                let b = observable(&flat, name)?.value(&flat, &pt);
                cl_dev = cl_dev.max((a - b).norm() / b.norm().max(1.0));
            }
        }
        rep.push(
            format!("flat_limit_classical {tag}"),
            "classical shift/ladder/symmetry functions at kappa = +-1e-6 match the flat ones",
            cl_dev,
            1e-5,
        );
    }
    Ok(rep)
}

/// Quantum suite for one system kind over the configured curvatures.
pub fn quantum_suite(kind: SystemKind, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let mut rep = Report::default();
    let mut lz_done = false;
    for &kappa in &cfg.kappas {
        let spec = make_spec(kind, kappa, cfg)?;
        match kind {
            SystemKind::Kc => {
                kc_quantum_rows(&spec, cfg, &mut rep)?;
                kc_spectrum_rows(&spec, &mut rep)?;
                if !lz_done {
                    lz_rows(&spec, &mut rep)?;
                    lz_done = true;
                }
            }
            SystemKind::Ho => {
                ho_quantum_rows(&spec, cfg, &mut rep)?;
                ho_spectrum_rows(&spec, &mut rep)?;
            }
            SystemKind::Sw | SystemKind::Evans => {
                octant_quantum_rows(&spec, cfg, &mut rep)?;
            }
        }
    }
    Ok(rep)
}

/// Everything for one system: kernel identities, quantum, classical,
/// flat-limit continuity.
pub fn verify_all(kind: SystemKind, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let mut rep = kappa_suite();
    rep.merge(quantum_suite(kind, cfg)?);
    rep.merge(classical_suite(kind, cfg)?);
    rep.merge(continuity_suite(kind, cfg)?);
    Ok(rep)
}

/// Spectrum table with oracle column for the CLI.
pub struct SpectrumTableRow {
    pub n: f64,
    pub analytic: f64,
    pub numeric: Option<f64>,
    pub admissible: bool,
}

pub fn spectrum_with_oracle(spec: &SystemSpec, n_max: u32) -> Result<Vec<SpectrumTableRow>> {
    let entries = spectra::spectrum_table(spec, n_max);
    let mut rows: Vec<SpectrumTableRow> = entries
        .iter()
        .map(|e| SpectrumTableRow {
            n: e.n,
            analytic: e.energy,
            numeric: None,
            admissible: e.admissible,
        })
        .collect();
    match spec.kind {
        SystemKind::Kc => {
            let count = rows.iter().filter(|r| r.admissible).count();
            if count > 0 {
                let prob = SelfAdjointProblem::radial(spec, 0.0)?;
                let sol = eigensolve(&prob, count)?;
                let mut j = 0;
                for row in rows.iter_mut() {
                    if row.admissible {
                        row.numeric = Some(sol.values[j]);
                        j += 1;
                    }
                }
            }
        }
        SystemKind::Ho => {
            for parity in [0usize, 1] {
                let count = rows
                    .iter()
                    .filter(|r| r.admissible && (r.n as usize) % 2 == parity)
                    .count();
                if count == 0 {
                    continue;
                }
                let prob = SelfAdjointProblem::radial(spec, parity as f64)?;
                let sol = eigensolve(&prob, count)?;
                let mut j = 0;
                for row in rows.iter_mut() {
                    if row.admissible && (row.n as usize) % 2 == parity {
                        row.numeric = Some(sol.values[j]);
                        j += 1;
                    }
                }
            }
        }
        SystemKind::Sw | SystemKind::Evans => {
            let base = spec.k1 + spec.k2 + spec.k3;
            let count = rows.iter().filter(|r| r.admissible).count();
            if count > 0 {
                let prob = SelfAdjointProblem::radial(spec, base)?;
                let sol = eigensolve(&prob, count)?;
                let mut j = 0;
                for row in rows.iter_mut() {
                    if row.admissible {
                        row.numeric = Some(sol.values[j]);
                        j += 1;
                    }
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_rows_pass() {
        let rep = kappa_suite();
        assert!(rep.pass(), "{:?}", rep.failed());
    }

    #[test]
    fn config_validation() {
        let mut cfg = VerifyConfig::default();
        cfg.kappas.clear();
        assert!(cfg.validate().is_err());
    }
}
