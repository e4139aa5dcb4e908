//! CSV assembly helpers for the table-emitting subcommands.

use curvops::classical::PhasePoint;
use curvops::factor::{ho_ab, kc_sigma, AbKind, Sign};
use curvops::grid::{Coord, Grid};
use curvops::kappa::s_kappa;
use curvops::ops::{effective_coefficients, OperatorChain};
use curvops::spectra::{build_basis, highest_weight, sampled_normalized, QuantumNumbers};
use curvops::system::{SystemKind, SystemSpec};
use curvops::verify::VerifyConfig;
use curvops::Result;

fn fmt_q(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.2}")
    }
}

/// Radial factors of the level-n basis states plus the extremal state,
/// sampled on a 160-node grid: columns r, then Re/Im per state.
pub fn states_csv(spec: &SystemSpec, n_level: u32) -> Result<String> {
    let kappa = spec.kappa();
    let grid = Grid::bounded(Coord::R, 0.0, spec.r_domain_end(), 160, move |r| {
        let s = s_kappa(kappa, r);
        s * s
    })?;
    let mut labels: Vec<String> = Vec::new();
    let mut columns = Vec::new();

    let hw_qn = if spec.octant_locked() {
        QuantumNumbers::octant(spec, 0, 0, 0)?
    } else {
        let n = n_level as i64;
        QuantumNumbers::central(n, n, n)?
    };
    let hw = highest_weight(spec, hw_qn)?;
    labels.push(format!("hw_n{}", fmt_q(hw.qn.n)));
    columns.push(sampled_normalized(&grid, &hw.radial)?);

    let level = if spec.octant_locked() { 1 } else { n_level };
    if let Ok(states) = build_basis(spec, level) {
        for st in states.iter().filter(|s| s.qn.m >= 0.0) {
            labels.push(format!(
                "n{}_l{}_m{}",
                fmt_q(st.qn.n),
                fmt_q(st.qn.ell),
                fmt_q(st.qn.m)
            ));
            columns.push(sampled_normalized(&grid, &st.radial)?);
        }
    }

    let mut csv = String::from("r");
    for label in &labels {
        csv.push_str(&format!(",Re_{label},Im_{label}"));
    }
    csv.push('\n');
    for (i, &r) in grid.nodes.iter().enumerate() {
        csv.push_str(&format!("{r:.12e}"));
        for col in &columns {
            csv.push_str(&format!(
                ",{:.12e},{:.12e}",
                col.values[i].re, col.values[i].im
            ));
        }
        csv.push('\n');
    }
    Ok(csv)
}

/// Angular factors of the octant highest-weight state.
pub fn angular_states_csv(spec: &SystemSpec) -> Result<String> {
    let half = std::f64::consts::FRAC_PI_2;
    let gt = Grid::bounded(Coord::Theta, 0.0, half, 96, |t| t.sin())?;
    let gp = Grid::bounded(Coord::Phi, 0.0, half, 96, |_| 1.0)?;
    let theta = curvops::factor::theta_state_bottom(spec, spec.k1 + spec.k2);
    let phi = curvops::factor::phi_state_bottom(spec);
    let ft = sampled_normalized(&gt, &theta)?;
    let fp = sampled_normalized(&gp, &phi)?;
    let mut csv = String::from("theta,P_theta,phi,Phi_phi\n");
    for i in 0..gt.n() {
        csv.push_str(&format!(
            "{:.12e},{:.12e},{:.12e},{:.12e}\n",
            gt.nodes[i], ft.values[i].re, gp.nodes[i], fp.values[i].re
        ));
    }
    Ok(csv)
}

/// Bounded-orbit start for the classical table (same choices as the
/// verification drift rows).
pub fn bounded_start(spec: &SystemSpec) -> PhasePoint {
    let kappa = spec.kappa();
    match spec.kind {
        SystemKind::Kc | SystemKind::Evans => {
            if kappa > 0.0 {
                PhasePoint::new(2.5 / kappa.sqrt().max(1.0), 0.2, 1.3, 0.6, 0.4, 0.5)
            } else {
                PhasePoint::new(1.2, 0.2, 1.3, 0.6, 0.4, 0.5)
            }
        }
        SystemKind::Ho | SystemKind::Sw => {
            let r0 = 0.35 * spec.r_domain_end().min(6.0);
            if spec.octant_locked() {
                PhasePoint::new(r0, 0.2, 0.8, 0.3, 0.7, 0.4)
            } else {
                PhasePoint::new(r0, 0.2, 1.3, 0.4, 0.2, 0.5)
            }
        }
    }
}

/// Relative sup-norm distance of first-order operator coefficients between
/// curvature kappa and the flat system, over r in (0, 3].
pub fn coefficient_continuity(kind: SystemKind, kappa: f64, cfg: &VerifyConfig) -> Result<f64> {
    let spec = build(kind, kappa, cfg)?;
    let flat = build(kind, 0.0, cfg)?;
    let pairs: Vec<(OperatorChain, OperatorChain)> = match kind {
        SystemKind::Kc | SystemKind::Evans => vec![
            (
                OperatorChain::single(kc_sigma(&spec, 2.0, Sign::Plus)?),
                OperatorChain::single(kc_sigma(&flat, 2.0, Sign::Plus)?),
            ),
            (
                OperatorChain::single(kc_sigma(&spec, 1.0, Sign::Minus)?),
                OperatorChain::single(kc_sigma(&flat, 1.0, Sign::Minus)?),
            ),
        ],
        SystemKind::Ho | SystemKind::Sw => vec![
            (
                OperatorChain::single(ho_ab(&spec, 1.0, spec.omega, AbKind::A, Sign::Plus)?),
                OperatorChain::single(ho_ab(&flat, 1.0, flat.omega, AbKind::A, Sign::Plus)?),
            ),
            (
                OperatorChain::single(ho_ab(&spec, 1.0, spec.omega, AbKind::B, Sign::Minus)?),
                OperatorChain::single(ho_ab(&flat, 1.0, flat.omega, AbKind::B, Sign::Minus)?),
            ),
        ],
    };
    let mut worst: f64 = 0.0;
    // stay inside both systems' radial domains (the oscillator walls at the
    // zero of C_k)
    let r_hi = 3.0f64.min(0.8 * spec.r_domain_end()).min(0.8 * flat.r_domain_end());
    for (a, b) in &pairs {
        let mut sup_diff = [0.0f64; 3];
        let mut sup_flat = [0.0f64; 3];
        for j in 1..=30 {
            let r = r_hi * j as f64 / 30.0;
            let ca = effective_coefficients(a, r);
            let cb = effective_coefficients(b, r);
            for i in 0..3 {
                sup_diff[i] = sup_diff[i].max((ca[i] - cb[i]).norm());
                sup_flat[i] = sup_flat[i].max(cb[i].norm());
            }
        }
        for i in 0..3 {
            worst = worst.max(sup_diff[i] / sup_flat[i].max(1.0));
        }
    }
    Ok(worst)
}

fn build(kind: SystemKind, kappa: f64, cfg: &VerifyConfig) -> Result<SystemSpec> {
    let curv = curvops::Curvature::new(kappa, Some(cfg.r_cut.unwrap_or(40.0)))?;
    match kind {
        SystemKind::Kc => SystemSpec::kc(curv, cfg.q),
        SystemKind::Ho => SystemSpec::ho(curv, cfg.omega),
        SystemKind::Sw => SystemSpec::sw(curv, cfg.omega, cfg.k),
        SystemKind::Evans => SystemSpec::evans(curv, cfg.q, cfg.k),
    }
}
