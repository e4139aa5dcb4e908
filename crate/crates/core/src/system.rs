//! System definitions: which family, curvature and physical parameters.

use crate::error::{Error, Result};
use crate::kappa::Curvature;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Curved Kepler-Coulomb: V = -q / T_k(r).
    Kc,
    /// Curved harmonic oscillator: V = (Omega^2/4) T_k^2(r), Omega^2 = omega^2 - kappa^2.
    Ho,
    /// Smorodinsky-Winternitz: HO plus centrifugal barriers k_i(k_i-1).
    Sw,
    /// Evans: KC plus the same centrifugal barriers.
    Evans,
}

impl SystemKind {
    pub fn parse(s: &str) -> Result<SystemKind> {
        match s.to_ascii_lowercase().as_str() {
            "kc" => Ok(SystemKind::Kc),
            "ho" => Ok(SystemKind::Ho),
            "sw" => Ok(SystemKind::Sw),
            "evans" => Ok(SystemKind::Evans),
            other => Err(Error::Config(format!("unknown system '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SystemKind::Kc => "kc",
            SystemKind::Ho => "ho",
            SystemKind::Sw => "sw",
            SystemKind::Evans => "evans",
        }
    }

    pub fn is_oscillator_like(&self) -> bool {
        matches!(self, SystemKind::Ho | SystemKind::Sw)
    }

    pub fn is_central(&self) -> bool {
        matches!(self, SystemKind::Kc | SystemKind::Ho)
    }
}

/// A concrete system: kind, curvature, couplings.
#[derive(Debug, Clone, Copy)]
pub struct SystemSpec {
    pub kind: SystemKind,
    pub curv: Curvature,
    /// Coulomb coupling (KC/Evans).
    pub q: f64,
    /// Oscillator frequency (HO/SW); must exceed |kappa|.
    pub omega: f64,
    /// Centrifugal strengths (SW/Evans).
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl SystemSpec {
    pub fn kc(curv: Curvature, q: f64) -> Result<SystemSpec> {
        if q <= 0.0 {
            return Err(Error::Param(format!("KC coupling q must be > 0, got {q}")));
        }
        Ok(SystemSpec {
            kind: SystemKind::Kc,
            curv,
            q,
            omega: 0.0,
            k1: 0.0,
            k2: 0.0,
            k3: 0.0,
        })
    }

    pub fn ho(curv: Curvature, omega: f64) -> Result<SystemSpec> {
        if omega <= curv.kappa.abs() {
            return Err(Error::Param(format!(
                "HO needs omega > |kappa|, got omega = {omega}, kappa = {}",
                curv.kappa
            )));
        }
        Ok(SystemSpec {
            kind: SystemKind::Ho,
            curv,
            q: 0.0,
            omega,
            k1: 0.0,
            k2: 0.0,
            k3: 0.0,
        })
    }

    pub fn sw(curv: Curvature, omega: f64, k: (f64, f64, f64)) -> Result<SystemSpec> {
        let mut s = Self::ho(curv, omega)?;
        s.kind = SystemKind::Sw;
        s.set_barriers(k)?;
        Ok(s)
    }

    pub fn evans(curv: Curvature, q: f64, k: (f64, f64, f64)) -> Result<SystemSpec> {
        let mut s = Self::kc(curv, q)?;
        s.kind = SystemKind::Evans;
        s.set_barriers(k)?;
        Ok(s)
    }

    fn set_barriers(&mut self, (k1, k2, k3): (f64, f64, f64)) -> Result<()> {
        if k1 <= 0.0 || k2 <= 0.0 || k3 <= 0.0 {
            return Err(Error::Param(format!(
                "centrifugal strengths must be > 0, got ({k1}, {k2}, {k3})"
            )));
        }
        self.k1 = k1;
        self.k2 = k2;
        self.k3 = k3;
        Ok(())
    }

    pub fn kappa(&self) -> f64 {
        self.curv.kappa
    }

    /// Omega^2 = omega^2 - kappa^2 for the oscillator potential.
    pub fn omega2_eff(&self) -> f64 {
        self.omega * self.omega - self.kappa() * self.kappa()
    }

    /// Right end of the radial domain actually usable by this system.
    /// The oscillator potential walls at the zero of C_k, halving the sphere
    /// domain; Coulomb-type systems live on the full (0, pi/sqrt(kappa)).
    pub fn r_domain_end(&self) -> f64 {
        let kappa = self.kappa();
        if kappa > 0.0 && self.kind.is_oscillator_like() {
            0.5 * std::f64::consts::PI / kappa.sqrt()
        } else {
            self.curv.r_max
        }
    }

    /// Angular domains: central systems use theta in (0, pi) and periodic phi;
    /// the centrifugal barriers of SW/Evans lock both angles into (0, pi/2).
    pub fn octant_locked(&self) -> bool {
        matches!(self.kind, SystemKind::Sw | SystemKind::Evans)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_guards() {
        let c = Curvature::new(0.1, None).unwrap();
        assert!(SystemSpec::kc(c, -1.0).is_err());
        assert!(SystemSpec::ho(c, 0.05).is_err());
        assert!(SystemSpec::sw(c, 2.0, (0.3, 0.0, 0.6)).is_err());
        let s = SystemSpec::ho(c, 2.0).unwrap();
        assert!((s.omega2_eff() - (4.0 - 0.01)).abs() < 1e-15);
    }

    #[test]
    fn oscillator_domain_halves_on_sphere() {
        let c = Curvature::new(0.1, None).unwrap();
        let ho = SystemSpec::ho(c, 2.0).unwrap();
        let kc = SystemSpec::kc(c, 2.0).unwrap();
        assert!((ho.r_domain_end() - 0.5 * kc.r_domain_end()).abs() < 1e-14);
        let cfl = Curvature::new(0.0, Some(40.0)).unwrap();
        let hof = SystemSpec::ho(cfl, 2.0).unwrap();
        assert_eq!(hof.r_domain_end(), 40.0);
    }
}
