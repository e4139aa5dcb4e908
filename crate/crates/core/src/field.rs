//! Dense tensor-product fields Psi(r, theta, phi) and operators acting on
//! them as sums of per-axis chains.
//!
//! Every full-state operator in the catalog (the full Hamiltonian, L+-, the
//! composed symmetries) is a sum of terms, each term a product of 1D chains
//! acting along different axes. Fields are stored densely; separable states
//! are assembled from their factors.

use num_complex::Complex64;
use std::rc::Rc;

use crate::error::Result;
use crate::grid::{Grid, GridFunction};
use crate::jet::JetFn;
use crate::ops::{apply_jet, apply_sampled, sample_chain, OperatorChain};

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    R = 0,
    Theta = 1,
    Phi = 2,
}

#[derive(Clone)]
pub struct Grid3 {
    pub r: Rc<Grid>,
    pub theta: Rc<Grid>,
    pub phi: Rc<Grid>,
}

impl Grid3 {
    pub fn grid(&self, axis: Axis) -> &Grid {
        match axis {
            Axis::R => &self.r,
            Axis::Theta => &self.theta,
            Axis::Phi => &self.phi,
        }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.r.n(), self.theta.n(), self.phi.n())
    }
}

#[derive(Clone)]
pub struct Field3 {
    pub grids: Grid3,
    pub data: Vec<C64>,
}

impl Field3 {
    pub fn zeros(grids: &Grid3) -> Field3 {
        let (nr, nt, np) = grids.shape();
        Field3 {
            grids: grids.clone(),
            data: vec![C64::new(0.0, 0.0); nr * nt * np],
        }
    }

    pub fn from_product(
        grids: &Grid3,
        fr: &GridFunction,
        ft: &GridFunction,
        fp: &GridFunction,
    ) -> Field3 {
        let (nr, nt, np) = grids.shape();
        let mut data = Vec::with_capacity(nr * nt * np);
        for ir in 0..nr {
            for it in 0..nt {
                let rt = fr.values[ir] * ft.values[it];
                for ip in 0..np {
                    data.push(rt * fp.values[ip]);
                }
            }
        }
        Field3 {
            grids: grids.clone(),
            data,
        }
    }

    pub fn axpy(&mut self, a: C64, other: &Field3) {
        for (u, v) in self.data.iter_mut().zip(&other.data) {
            *u += a * v;
        }
    }

    pub fn scale(&mut self, a: C64) {
        for u in self.data.iter_mut() {
            *u *= a;
        }
    }

    fn idx(&self, ir: usize, it: usize, ip: usize) -> usize {
        let (_, nt, np) = self.grids.shape();
        (ir * nt + it) * np + ip
    }

    /// Apply a 1D chain along one axis, line by line.
    pub fn apply_axis(&self, axis: Axis, chain: &OperatorChain) -> Result<Field3> {
        let grid = self.grids.grid(axis);
        let sampled = sample_chain(grid, chain)?;
        let (nr, nt, np) = self.grids.shape();
        let mut out = self.clone();
        let mut line = vec![C64::new(0.0, 0.0); grid.n()];
        match axis {
            Axis::R => {
                for it in 0..nt {
                    for ip in 0..np {
                        for ir in 0..nr {
                            line[ir] = self.data[self.idx(ir, it, ip)];
                        }
                        apply_sampled(grid, &sampled, &mut line);
                        for ir in 0..nr {
                            out.data[self.idx(ir, it, ip)] = line[ir];
                        }
                    }
                }
            }
            Axis::Theta => {
                for ir in 0..nr {
                    for ip in 0..np {
                        for it in 0..nt {
                            line[it] = self.data[self.idx(ir, it, ip)];
                        }
                        apply_sampled(grid, &sampled, &mut line);
                        for it in 0..nt {
                            out.data[self.idx(ir, it, ip)] = line[it];
                        }
                    }
                }
            }
            Axis::Phi => {
                for ir in 0..nr {
                    for it in 0..nt {
                        for ip in 0..np {
                            line[ip] = self.data[self.idx(ir, it, ip)];
                        }
                        apply_sampled(grid, &sampled, &mut line);
                        for ip in 0..np {
                            out.data[self.idx(ir, it, ip)] = line[ip];
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Weighted inner product over the full measure (S^2 dr)(sin theta dtheta) dphi.
pub fn inner3(f: &Field3, g: &Field3) -> C64 {
    let (nr, nt, np) = f.grids.shape();
    let (wr, wt, wp) = (
        &f.grids.r.weight,
        &f.grids.theta.weight,
        &f.grids.phi.weight,
    );
    let mut acc = C64::new(0.0, 0.0);
    for ir in 0..nr {
        for it in 0..nt {
            let wrt = wr[ir] * wt[it];
            let base = (ir * nt + it) * np;
            for ip in 0..np {
                acc += f.data[base + ip].conj() * g.data[base + ip] * (wrt * wp[ip]);
            }
        }
    }
    acc
}

pub fn norm3(f: &Field3) -> f64 {
    inner3(f, f).re.max(0.0).sqrt()
}

pub fn overlap3(f: &Field3, g: &Field3) -> f64 {
    let (nf, ng) = (norm3(f), norm3(g));
    if nf == 0.0 || ng == 0.0 {
        return 0.0;
    }
    inner3(f, g).norm() / (nf * ng)
}

/// A full-state operator: a sum of terms, each term a product of per-axis
/// chains (applied in list order; chains on different axes commute).
#[derive(Clone)]
pub struct ProductOp {
    pub label: String,
    pub terms: Vec<Vec<(Axis, OperatorChain)>>,
}

impl ProductOp {
    pub fn single(label: impl Into<String>, factors: Vec<(Axis, OperatorChain)>) -> ProductOp {
        ProductOp {
            label: label.into(),
            terms: vec![factors],
        }
    }

    pub fn apply(&self, f: &Field3) -> Result<Field3> {
        let mut out = Field3::zeros(&f.grids);
        for term in &self.terms {
            let mut cur = f.clone();
            for (axis, chain) in term {
                cur = cur.apply_axis(*axis, chain)?;
            }
            out.axpy(C64::new(1.0, 0.0), &cur);
        }
        Ok(out)
    }

    /// Apply to a separable jet state and assemble the dense result. Each
    /// term's per-axis chains act on the closed-form factors exactly.
    pub fn apply_jet_product(&self, grids: &Grid3, state: &[JetFn; 3]) -> Field3 {
        let mut out = Field3::zeros(grids);
        for term in &self.terms {
            let mut factors = state.clone();
            for (axis, chain) in term {
                let slot = *axis as usize;
                factors[slot] = apply_jet(chain, &factors[slot]);
            }
            let fr = crate::ops::sample(&grids.r, &factors[0]);
            let ft = crate::ops::sample(&grids.theta, &factors[1]);
            let fp = crate::ops::sample(&grids.phi, &factors[2]);
            let field = Field3::from_product(grids, &fr, &ft, &fp);
            out.axpy(C64::new(1.0, 0.0), &field);
        }
        out
    }
}

/// Assemble a separable jet state densely.
pub fn sample_product(grids: &Grid3, state: &[JetFn; 3]) -> Field3 {
    let fr = crate::ops::sample(&grids.r, &state[0]);
    let ft = crate::ops::sample(&grids.theta, &state[1]);
    let fp = crate::ops::sample(&grids.phi, &state[2]);
    Field3::from_product(grids, &fr, &ft, &fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, Coord};
    use crate::kappa::Curvature;
    use crate::ops::{jf, jf_const, Operator1D};

    fn grids() -> Grid3 {
        let c = Curvature::new(0.0, Some(20.0)).unwrap();
        Grid3 {
            r: Rc::new(make_grid(Coord::R, &c, 32).unwrap()),
            theta: Rc::new(make_grid(Coord::Theta, &c, 24).unwrap()),
            phi: Rc::new(make_grid(Coord::Phi, &c, 16).unwrap()),
        }
    }

    #[test]
    fn product_norm_factorizes() {
        let g = grids();
        let fr = GridFunction::from_real_fn(&g.r, |r| (-0.5 * r).exp());
        let ft = GridFunction::from_real_fn(&g.theta, |t| t.sin());
        let fp = GridFunction::from_fn(&g.phi, |p| C64::new(0.0, p).exp());
        let f = Field3::from_product(&g, &fr, &ft, &fp);
        let nr = crate::grid::weighted_norm(&g.r, &fr);
        let nt = crate::grid::weighted_norm(&g.theta, &ft);
        let np = crate::grid::weighted_norm(&g.phi, &fp);
        assert!((norm3(&f) - nr * nt * np).abs() < 1e-10 * nr * nt * np);
    }

    #[test]
    fn axis_application_acts_on_one_factor() {
        let g = grids();
        let fr = GridFunction::from_real_fn(&g.r, |r| (-0.2 * (r - 8.0).powi(2)).exp());
        let ft = GridFunction::from_real_fn(&g.theta, |t| t.sin());
        let fp = GridFunction::from_real_fn(&g.phi, |_| 1.0);
        let f = Field3::from_product(&g, &fr, &ft, &fp);
        let op = ProductOp::single(
            "d/dtheta",
            vec![(
                Axis::Theta,
                OperatorChain::single(Operator1D::new("d", jf_const(1.0), jf_const(0.0))),
            )],
        );
        let out = op.apply(&f).unwrap();
        let dft = GridFunction::from_real_fn(&g.theta, |t| t.cos());
        let expect = Field3::from_product(&g, &fr, &dft, &fp);
        let mut diff = out.clone();
        diff.axpy(C64::new(-1.0, 0.0), &expect);
        assert!(norm3(&diff) < 1e-8 * norm3(&expect));
    }

    #[test]
    fn sum_of_terms() {
        let g = grids();
        let fr = GridFunction::from_real_fn(&g.r, |r| (-0.2 * (r - 8.0).powi(2)).exp());
        let ft = GridFunction::from_real_fn(&g.theta, |t| t.sin() * t.sin());
        let fp = GridFunction::from_real_fn(&g.phi, |_| 1.0);
        let f = Field3::from_product(&g, &fr, &ft, &fp);
        // (mul by 2) + (mul by 3) = mul by 5
        let two = OperatorChain::single(Operator1D::mul("2", jf_const(2.0)));
        let three = OperatorChain::single(Operator1D::mul("3", jf_const(3.0)));
        let op = ProductOp {
            label: "2+3".into(),
            terms: vec![vec![(Axis::R, two)], vec![(Axis::Theta, three)]],
        };
        let out = op.apply(&f).unwrap();
        let mut expect = f.clone();
        expect.scale(C64::new(5.0, 0.0));
        let mut diff = out;
        diff.axpy(C64::new(-1.0, 0.0), &expect);
        assert!(norm3(&diff) < 1e-12 * norm3(&expect));
    }

    #[test]
    fn jet_product_matches_spectral_on_smooth() {
        let g = grids();
        let state: [JetFn; 3] = [
            Rc::new(|x, d| {
                let xj = crate::jet::Jet::variable(x, d);
                xj.scale(C64::new(-0.3, 0.0)).exp().mul(&xj)
            }),
            Rc::new(|x, d| crate::jet::Jet::variable(x, d).sin()),
            Rc::new(|_, d| crate::jet::Jet::real_constant(1.0, d)),
        ];
        let dense = sample_product(&g, &state);
        let op = ProductOp::single(
            "r d/dr tensor (d/dth + 1/2)",
            vec![
                (
                    Axis::R,
                    OperatorChain::single(Operator1D::new(
                        "rd/dr",
                        jf(|r| r.clone()),
                        jf_const(0.0),
                    )),
                ),
                (
                    Axis::Theta,
                    OperatorChain::single(Operator1D::new("d/dth", jf_const(1.0), jf_const(0.5))),
                ),
            ],
        );
        let via_spectral = op.apply(&dense).unwrap();
        let via_jet = op.apply_jet_product(&g, &state);
        let mut diff = via_spectral.clone();
        diff.axpy(C64::new(-1.0, 0.0), &via_jet);
        assert!(norm3(&diff) < 1e-7 * norm3(&via_jet));
    }
}
