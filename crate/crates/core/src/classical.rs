//! Classical side: Hamiltonian flow, the catalog of shift/ladder/symmetry
//! phase-space functions, numerical Poisson brackets and conservation checks.
//!
//! Complex factorization functions follow the convention that radial factors
//! carry +i p_r on the "+" member while the angular ladders carry -i p_theta;
//! this is the unique assignment (up to global conjugation) under which
//! {H, S+-} = 0 holds together with the expected bracket rates. The
//! substitution rule freezes l = sqrt(L^2), m = sqrt(Lz^2) and E-bar at the
//! base point while a bracket differentiates.

use num_complex::Complex64;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::kappa::{c_kappa, s_kappa, t_kappa};
use crate::rng::Rng;
use crate::system::{SystemKind, SystemSpec};

type C64 = Complex64;

/// Canonical state (r, p_r, theta, p_theta, phi, p_phi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint(pub [f64; 6]);

impl PhasePoint {
    pub fn new(r: f64, p_r: f64, theta: f64, p_theta: f64, phi: f64, p_phi: f64) -> Self {
        PhasePoint([r, p_r, theta, p_theta, phi, p_phi])
    }

    pub fn r(&self) -> f64 {
        self.0[0]
    }
    pub fn p_r(&self) -> f64 {
        self.0[1]
    }
    pub fn theta(&self) -> f64 {
        self.0[2]
    }
    pub fn p_theta(&self) -> f64 {
        self.0[3]
    }
    pub fn phi(&self) -> f64 {
        self.0[4]
    }
    pub fn p_phi(&self) -> f64 {
        self.0[5]
    }
}

/// Azimuthal invariant: p_phi^2 plus the octant barriers.
pub fn lz_squared(spec: &SystemSpec, x: &PhasePoint) -> f64 {
    let mut v = x.p_phi() * x.p_phi();
    if spec.octant_locked() {
        let (s, c) = x.phi().sin_cos();
        v += spec.k2 * spec.k2 / (s * s) + spec.k1 * spec.k1 / (c * c);
    }
    v
}

/// Total angular invariant: p_theta^2 + Lz^2/sin^2 plus the polar barrier.
pub fn l_squared(spec: &SystemSpec, x: &PhasePoint) -> f64 {
    let (s, c) = x.theta().sin_cos();
    let mut v = x.p_theta() * x.p_theta() + lz_squared(spec, x) / (s * s);
    if spec.octant_locked() {
        v += spec.k3 * spec.k3 / (c * c);
    }
    v
}

fn v_radial(spec: &SystemSpec, r: f64) -> f64 {
    match spec.kind {
        SystemKind::Kc | SystemKind::Evans => -spec.q / t_kappa(spec.kappa(), r),
        SystemKind::Ho | SystemKind::Sw => {
            let t = t_kappa(spec.kappa(), r);
            0.25 * spec.omega2_eff() * t * t
        }
    }
}

/// H = p_r^2 + L^2/S^2 + V(r) (bare-momentum convention).
pub fn hamiltonian(spec: &SystemSpec, x: &PhasePoint) -> f64 {
    let s = s_kappa(spec.kappa(), x.r());
    x.p_r() * x.p_r() + l_squared(spec, x) / (s * s) + v_radial(spec, x.r())
}

/// Gradient of H in the order (r, p_r, theta, p_theta, phi, p_phi).
pub fn hamiltonian_grad(spec: &SystemSpec, x: &PhasePoint) -> [f64; 6] {
    let kappa = spec.kappa();
    let (r, p_r) = (x.r(), x.p_r());
    let s = s_kappa(kappa, r);
    let c = c_kappa(kappa, r);
    let s2 = s * s;
    let l2 = l_squared(spec, x);
    let lz2 = lz_squared(spec, x);
    let dv = match spec.kind {
        SystemKind::Kc | SystemKind::Evans => spec.q / s2,
        SystemKind::Ho | SystemKind::Sw => {
            0.5 * spec.omega2_eff() * (s / c) / (c * c)
        }
    };
    let (st, ct) = x.theta().sin_cos();
    let mut dl2_dtheta = -2.0 * lz2 * ct / (st * st * st);
    if spec.octant_locked() {
        dl2_dtheta += 2.0 * spec.k3 * spec.k3 * st / (ct * ct * ct);
    }
    let mut dlz2_dphi = 0.0;
    if spec.octant_locked() {
        let (sp, cp) = x.phi().sin_cos();
        dlz2_dphi = -2.0 * spec.k2 * spec.k2 * cp / (sp * sp * sp)
            + 2.0 * spec.k1 * spec.k1 * sp / (cp * cp * cp);
    }
    [
        -2.0 * l2 * c / (s2 * s) + dv,
        2.0 * p_r,
        dl2_dtheta / s2,
        2.0 * x.p_theta() / s2,
        dlz2_dphi / (s2 * st * st),
        2.0 * x.p_phi() / (s2 * st * st),
    ]
}

fn pole_guard(spec: &SystemSpec, x: &PhasePoint) -> Result<()> {
    let eps = 1e-4;
    let s = s_kappa(spec.kappa(), x.r());
    if x.r() < eps || s.abs() < eps || x.r() > spec.r_domain_end() - eps {
        return Err(Error::Singularity(format!(
            "trajectory approached a radial pole at r = {}",
            x.r()
        )));
    }
    if x.theta().sin() < eps {
        return Err(Error::Singularity("polar axis approached".into()));
    }
    if spec.octant_locked() && (x.theta().cos() < eps || x.phi().sin() < eps || x.phi().cos() < eps)
    {
        return Err(Error::Singularity("octant wall approached".into()));
    }
    Ok(())
}

/// Trajectory samples from the symplectic flow.
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<PhasePoint>,
    pub energy_drift: f64,
}

/// Fixed-step two-stage Gauss-Legendre collocation (order 4, symmetric,
/// symplectic); stages solved by fixed-point iteration.
pub fn flow(
    spec: &SystemSpec,
    start: &PhasePoint,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<Trajectory> {
    pole_guard(spec, start)?;
    let stride = sample_every.max(1);
    let steps = (t_end / dt).round() as usize;
    let field = |x: &PhasePoint| -> [f64; 6] {
        let g = hamiltonian_grad(spec, x);
        // qdot = dH/dp, pdot = -dH/dq for the three canonical pairs
        [g[1], -g[0], g[3], -g[2], g[5], -g[4]]
    };
    let (a11, a12) = (0.25, 0.25 - 3f64.sqrt() / 6.0);
    let (a21, a22) = (0.25 + 3f64.sqrt() / 6.0, 0.25);

    let mut y = *start;
    let mut times = Vec::with_capacity(steps / stride + 2);
    let mut points = Vec::with_capacity(steps / stride + 2);
    times.push(0.0);
    points.push(y);
    let e0 = hamiltonian(spec, start);
    let mut max_drift: f64 = 0.0;

    let mut k1 = field(&y);
    let mut k2 = k1;
    for step in 1..=steps {
        // fixed-point iteration on the stage derivatives
        for _ in 0..40 {
            let mut y1 = y;
            let mut y2 = y;
            for i in 0..6 {
                y1.0[i] += dt * (a11 * k1[i] + a12 * k2[i]);
                y2.0[i] += dt * (a21 * k1[i] + a22 * k2[i]);
            }
            let n1 = field(&y1);
            let n2 = field(&y2);
            let mut delta: f64 = 0.0;
            for i in 0..6 {
                delta = delta.max((n1[i] - k1[i]).abs()).max((n2[i] - k2[i]).abs());
            }
            k1 = n1;
            k2 = n2;
            if delta < 1e-14 {
                break;
            }
        }
        for i in 0..6 {
            y.0[i] += 0.5 * dt * (k1[i] + k2[i]);
        }
        pole_guard(spec, &y)?;
        let e = hamiltonian(spec, &y);
        max_drift = max_drift.max(((e - e0) / e0.abs().max(1.0)).abs());
        if step % stride == 0 || step == steps {
            times.push(step as f64 * dt);
            points.push(y);
        }
    }
    Ok(Trajectory {
        times,
        points,
        energy_drift: max_drift,
    })
}

/// Escape threshold of the radial potential: orbits with H at or above it
/// are unbound (None on compact domains).
pub fn escape_threshold(spec: &SystemSpec) -> Option<f64> {
    let kappa = spec.kappa();
    match spec.kind {
        SystemKind::Kc | SystemKind::Evans => {
            if kappa > 0.0 {
                None
            } else if kappa == 0.0 {
                Some(0.0)
            } else {
                Some(-spec.q * (-kappa).sqrt())
            }
        }
        SystemKind::Ho | SystemKind::Sw => {
            if kappa >= 0.0 {
                None
            } else {
                Some(0.25 * spec.omega2_eff() / (-kappa))
            }
        }
    }
}

/// Frozen parameter substitutions taken from a base point.
#[derive(Debug, Clone, Copy)]
pub struct Subs {
    pub ell: f64,
    pub m: f64,
    pub e_bar: f64,
}

pub fn substitutions(spec: &SystemSpec, base: &PhasePoint) -> Subs {
    let kappa = spec.kappa();
    let e_bar = if kappa != 0.0 {
        hamiltonian(spec, base) + 0.25 * spec.omega2_eff() / kappa
    } else {
        f64::NAN
    };
    Subs {
        ell: l_squared(spec, base).sqrt(),
        m: lz_squared(spec, base).sqrt(),
        e_bar,
    }
}

/// A phase-space function with frozen-parameter semantics.
#[derive(Clone)]
pub struct ClassicalObservable {
    pub label: String,
    eval: Rc<dyn Fn(&SystemSpec, &PhasePoint, &Subs) -> C64>,
}

impl ClassicalObservable {
    fn new(
        label: impl Into<String>,
        eval: impl Fn(&SystemSpec, &PhasePoint, &Subs) -> C64 + 'static,
    ) -> Self {
        ClassicalObservable {
            label: label.into(),
            eval: Rc::new(eval),
        }
    }

    /// Evaluate with substitutions taken from the point itself.
    pub fn value(&self, spec: &SystemSpec, x: &PhasePoint) -> C64 {
        (self.eval)(spec, x, &substitutions(spec, x))
    }

    /// Closure with substitutions frozen at a base point (the bracket
    /// convention).
    pub fn frozen(&self, spec: &SystemSpec, base: &PhasePoint) -> impl Fn(&PhasePoint) -> C64 {
        let subs = substitutions(spec, base);
        let spec = *spec;
        let eval = self.eval.clone();
        move |x: &PhasePoint| eval(&spec, x, &subs)
    }
}

fn i_c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Big omega: sqrt(omega^2 - kappa^2) for the oscillator potential.
fn big_omega(spec: &SystemSpec) -> f64 {
    spec.omega2_eff().sqrt()
}

fn kc_sigma_fn(spec: &SystemSpec, x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let t = t_kappa(spec.kappa(), x.r());
    i_c(subs.ell / t - spec.q / (2.0 * subs.ell), sign * x.p_r())
}

fn ho_a_fn(spec: &SystemSpec, x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let t = t_kappa(spec.kappa(), x.r());
    i_c(subs.ell / t + 0.5 * big_omega(spec) * t, sign * x.p_r())
}

fn ho_b_fn(spec: &SystemSpec, x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let t = t_kappa(spec.kappa(), x.r());
    i_c(subs.ell / t - 0.5 * big_omega(spec) * t, sign * x.p_r())
}

/// theta-ladder of the angular problem: -+ i p_theta sin + l cos (the "-"
/// i-convention pairs with the radial "+" so {H, S+-} = 0).
fn theta_ladder_fn(x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let (s, c) = x.theta().sin_cos();
    i_c(subs.ell * c, -sign * x.p_theta() * s)
}

/// c/d pair of a curved-oscillator structure in the given coordinate:
/// +- i kappa S p + pm_omega/(2C) + sqrt(kappa E-bar) C.
fn cd_fn(kappa: f64, coord: f64, mom: f64, omega_half_c: f64, root: f64, sign: f64) -> C64 {
    let s = s_kappa(kappa, coord);
    let c = c_kappa(kappa, coord);
    i_c(omega_half_c / c + root * c, sign * kappa * s * mom)
}

/// Catalog lookup. Names: H, L2, Lz2, Sigma+-_r, a+-, b+-, Pi+-, c+-, d+-,
/// Lambda+-_E, S+-_rtheta, phiLambda+-, thetaSigma+-, thetaLambda+-,
/// L+-_thetaphi.
pub fn observable(spec: &SystemSpec, name: &str) -> Result<ClassicalObservable> {
    let central = spec.kind.is_central();
    let kind = spec.kind;
    let obs = match name {
        "H" => ClassicalObservable::new("H", |sp, x, _| i_c(hamiltonian(sp, x), 0.0)),
        "L2" => ClassicalObservable::new("L2", |sp, x, _| i_c(l_squared(sp, x), 0.0)),
        "Lz2" => ClassicalObservable::new("Lz2", |sp, x, _| i_c(lz_squared(sp, x), 0.0)),
        "Lz" => ClassicalObservable::new("Lz", |_, x, _| i_c(x.p_phi(), 0.0)),
        "Sigma+_r" | "Sigma-_r" => {
            let sign = if name.starts_with("Sigma+") { 1.0 } else { -1.0 };
            match kind {
                SystemKind::Kc | SystemKind::Evans => ClassicalObservable::new(
                    name,
                    move |sp, x, s| kc_sigma_fn(sp, x, s, sign),
                ),
                SystemKind::Ho | SystemKind::Sw => ClassicalObservable::new(
                    name,
                    move |sp, x, s| ho_a_fn(sp, x, s, sign) * ho_b_fn(sp, x, s, sign),
                ),
            }
        }
        "a+" | "a-" => {
            let sign = if name == "a+" { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| ho_a_fn(sp, x, s, sign))
        }
        "b+" | "b-" => {
            let sign = if name == "b+" { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| ho_b_fn(sp, x, s, sign))
        }
        "Pi+" | "Pi-" => {
            // Pi+ = b- a+, Pi- = b+ a- (the pairing whose bracket rate is
            // +- 2 i Omega (kappa T^2 + 1) under this crate's i-conventions)
            let sign = if name == "Pi+" { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                ho_b_fn(sp, x, s, -sign) * ho_a_fn(sp, x, s, sign)
            })
        }
        "c+" | "c-" | "d+" | "d-" => {
            // ladder-type factors carry -i on the "+" member
            let sign = if name.ends_with('+') { -1.0 } else { 1.0 };
            let omega_sign = if name.starts_with('c') { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                let kappa = sp.kappa();
                let root = (kappa * s.e_bar).sqrt();
                cd_fn(
                    kappa,
                    x.r(),
                    x.p_r(),
                    omega_sign * 0.5 * big_omega(sp),
                    root,
                    sign,
                )
            })
        }
        "Lambda+_E" | "Lambda-_E" => {
            let sign = if name.starts_with("Lambda+") { -1.0 } else { 1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                let kappa = sp.kappa();
                let root = (kappa * s.e_bar).sqrt();
                let om = 0.5 * big_omega(sp);
                cd_fn(kappa, x.r(), x.p_r(), om, root, sign)
                    * cd_fn(kappa, x.r(), x.p_r(), -om, root, sign)
                    / kappa
            })
        }
        "S+_rtheta" | "S-_rtheta" => {
            let sign = if name.starts_with("S+") { 1.0 } else { -1.0 };
            match kind {
                SystemKind::Kc => ClassicalObservable::new(name, move |sp, x, s| {
                    kc_sigma_fn(sp, x, s, sign) * theta_ladder_fn(x, s, sign)
                }),
                SystemKind::Evans => ClassicalObservable::new(name, move |sp, x, s| {
                    let sig = kc_sigma_fn(sp, x, s, sign);
                    let th = octant_theta_ladder_fn(sp, x, s, sign);
                    sig * sig * th
                }),
                SystemKind::Ho => ClassicalObservable::new(name, move |sp, x, s| {
                    let th = theta_ladder_fn(x, s, sign);
                    ho_a_fn(sp, x, s, sign) * ho_b_fn(sp, x, s, sign) * th * th
                }),
                SystemKind::Sw => ClassicalObservable::new(name, move |sp, x, s| {
                    ho_a_fn(sp, x, s, sign)
                        * ho_b_fn(sp, x, s, sign)
                        * octant_theta_ladder_fn(sp, x, s, sign)
                }),
            }
        }
        "phiLambda+" | "phiLambda-" => {
            if central {
                return Err(Error::Catalog(format!("{name} needs the octant systems")));
            }
            let sign = if name.ends_with('+') { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                octant_phi_ladder_fn(sp, x, s, sign)
            })
        }
        "thetaSigma+" | "thetaSigma-" => {
            if central {
                return Err(Error::Catalog(format!("{name} needs the octant systems")));
            }
            let sign = if name.ends_with('+') { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                octant_theta_shift_fn(sp, x, s, sign)
            })
        }
        "thetaLambda+" | "thetaLambda-" => {
            if central {
                return Err(Error::Catalog(format!("{name} needs the octant systems")));
            }
            let sign = if name.ends_with('+') { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                octant_theta_ladder_fn(sp, x, s, sign)
            })
        }
        "L+_thetaphi" | "L-_thetaphi" => {
            if central {
                return Err(Error::Catalog(format!("{name} needs the octant systems")));
            }
            let sign = if name.starts_with("L+") { 1.0 } else { -1.0 };
            ClassicalObservable::new(name, move |sp, x, s| {
                octant_phi_ladder_fn(sp, x, s, sign) * octant_theta_shift_fn(sp, x, s, sign)
            })
        }
        other => return Err(Error::Catalog(format!("unknown observable '{other}'"))),
    };
    Ok(obs)
}

/// Energy ladder of the polar problem (curvature-1 oscillator with
/// Omega = 2 k3 and E-bar = l^2): theta-Lambda+- = c+- d+-.
fn octant_theta_ladder_fn(spec: &SystemSpec, x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let (th, pth) = (x.theta(), x.p_theta());
    // the angular ladders pair with -i against the radial +i
    let s = -sign;
    cd_fn(1.0, th, pth, spec.k3, subs.ell, s) * cd_fn(1.0, th, pth, -spec.k3, subs.ell, s)
}

/// Energy ladder of the azimuthal problem (Omega = 2 k1, E-bar = m^2).
fn octant_phi_ladder_fn(spec: &SystemSpec, x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let (ph, pph) = (x.phi(), x.p_phi());
    let s = -sign;
    cd_fn(1.0, ph, pph, spec.k1, subs.m, s) * cd_fn(1.0, ph, pph, -spec.k1, subs.m, s)
}

/// m-shift of the polar problem: a+- b+- of the curvature-1 oscillator in
/// theta (l-slot = m, Omega = 2 k3).
fn octant_theta_shift_fn(spec: &SystemSpec, x: &PhasePoint, subs: &Subs, sign: f64) -> C64 {
    let t = x.theta().tan();
    let a = i_c(subs.m / t + spec.k3 * t, sign * x.p_theta());
    let b = i_c(subs.m / t - spec.k3 * t, sign * x.p_theta());
    a * b
}

/// Numerical Poisson bracket of two frozen evaluators: Richardson-
/// extrapolated central differences over the six canonical coordinates.
/// Returns the bracket and the step-halving error estimate.
pub fn poisson_bracket(
    f: &dyn Fn(&PhasePoint) -> C64,
    g: &dyn Fn(&PhasePoint) -> C64,
    point: &PhasePoint,
    h: f64,
) -> Result<(C64, f64)> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::Step(format!("step {h} outside [1e-6, 1e-3]")));
    }
    let bracket_at = |hh: f64| -> (C64, f64) {
        let mut acc = C64::new(0.0, 0.0);
        let mut abs_scale = 0.0;
        for pair in 0..3 {
            let (qi, pi) = (2 * pair, 2 * pair + 1);
            let d = |idx: usize, func: &dyn Fn(&PhasePoint) -> C64| -> C64 {
                let scale = hh * point.0[idx].abs().max(1.0);
                let mut xp = *point;
                let mut xm = *point;
                xp.0[idx] += scale;
                xm.0[idx] -= scale;
                (func(&xp) - func(&xm)) / (2.0 * scale)
            };
            let (fq, fp) = (d(qi, f), d(pi, f));
            let (gq, gp) = (d(qi, g), d(pi, g));
            acc += fq * gp - fp * gq;
            abs_scale += fq.norm() * gp.norm() + fp.norm() * gq.norm();
        }
        (acc, abs_scale)
    };
    let (b1, scale1) = bracket_at(h);
    let (b2, _) = bracket_at(h / 2.0);
    let extrap = (b2 * 4.0 - b1) / 3.0;
    let err = (b2 - b1).norm();
    // disagreement judged against the bracket's abs-sum magnitude: an exact
    // zero bracket still carries h^2-level noise in each estimate
    if err > 1e-4 * extrap.norm().max(scale1).max(1e-8) {
        return Err(Error::Step(format!(
            "step-halving estimates disagree: {err:e} vs |pb| = {:e}",
            extrap.norm()
        )));
    }
    Ok((extrap, err))
}

/// Max relative drift of an observable along a trajectory (substitutions
/// frozen at the initial point, which lies on the same invariant level set).
pub fn conservation_check(
    spec: &SystemSpec,
    obs: &ClassicalObservable,
    traj: &Trajectory,
) -> f64 {
    let f = obs.frozen(spec, &traj.points[0]);
    let v0 = f(&traj.points[0]);
    let scale = v0.norm().max(1e-12);
    traj.points
        .iter()
        .map(|p| (f(p) - v0).norm() / scale)
        .fold(0.0, f64::max)
}

/// Modulus drift and unwrapped-phase samples of a complex observable along a
/// trajectory.
pub fn modulus_and_phase(
    spec: &SystemSpec,
    obs: &ClassicalObservable,
    traj: &Trajectory,
) -> (f64, Vec<f64>) {
    let f = obs.frozen(spec, &traj.points[0]);
    let v0 = f(&traj.points[0]);
    let scale = v0.norm().max(1e-12);
    let mut phases = Vec::with_capacity(traj.points.len());
    let mut mod_drift: f64 = 0.0;
    let mut prev = v0.arg();
    let mut offset = 0.0;
    for p in &traj.points {
        let v = f(p);
        mod_drift = mod_drift.max((v.norm() - v0.norm()).abs() / scale);
        let mut a = v.arg();
        while a + offset - prev > std::f64::consts::PI {
            offset -= 2.0 * std::f64::consts::PI;
        }
        while a + offset - prev < -std::f64::consts::PI {
            offset += 2.0 * std::f64::consts::PI;
        }
        a += offset;
        prev = a;
        phases.push(a);
    }
    (mod_drift, phases)
}

/// Least-squares slope of samples y over times t.
pub fn linear_rate(t: &[f64], y: &[f64]) -> f64 {
    let n = t.len() as f64;
    let (mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0);
    for (&ti, &yi) in t.iter().zip(y) {
        st += ti;
        sy += yi;
        stt += ti * ti;
        sty += ti * yi;
    }
    (n * sty - st * sy) / (n * stt - st * st)
}

/// Random admissible phase point away from every coordinate pole.
pub fn random_point(spec: &SystemSpec, rng: &mut Rng) -> PhasePoint {
    let end = spec.r_domain_end();
    let r = rng.range(0.25 * end, 0.6 * end);
    let p_r = rng.range(-0.8, 0.8);
    if spec.octant_locked() {
        let theta = rng.range(0.5, std::f64::consts::FRAC_PI_2 - 0.5);
        let phi = rng.range(0.5, std::f64::consts::FRAC_PI_2 - 0.5);
        PhasePoint::new(
            r,
            p_r,
            theta,
            rng.range(-0.8, 0.8),
            phi,
            rng.range(-0.8, 0.8),
        )
    } else {
        let theta = rng.range(0.6, std::f64::consts::PI - 0.6);
        let p_theta = rng.range(0.3, 1.0);
        let p_phi = rng.range(0.3, 1.0);
        PhasePoint::new(r, p_r, theta, p_theta, rng.range(0.0, 6.0), p_phi)
    }
}
