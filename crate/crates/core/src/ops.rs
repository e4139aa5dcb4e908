//! First- and second-order differential forms and their compositions.
//!
//! An [`Operator1D`] is alpha(x) d/dx + beta(x) on one coordinate. Chains
//! compose operators right-to-left and may include a pure second-order
//! Hamiltonian element. Coefficients are carried as jet-evaluable closures so
//! a chain can be applied two ways:
//!
//! * to grid samples, via the spectral differentiation matrix;
//! * to closed-form states, via exact Taylor-jet differentiation (needed for
//!   the fractional-power eigenfunctions whose endpoint derivatives diverge).

use num_complex::Complex64;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::jet::{Jet, JetFn};

type C64 = Complex64;

/// Constant jet function.
pub fn jf_const(v: f64) -> JetFn {
    Rc::new(move |_, depth| Jet::real_constant(v, depth))
}

pub fn jf_cconst(v: C64) -> JetFn {
    Rc::new(move |_, depth| Jet::constant(v, depth))
}

/// Build a jet function from a closure on jets of the coordinate.
pub fn jf(f: impl Fn(&Jet) -> Jet + 'static) -> JetFn {
    Rc::new(move |x0, depth| f(&Jet::variable(x0, depth)))
}

/// First-order differential form alpha d/dx + beta.
#[derive(Clone)]
pub struct Operator1D {
    pub label: String,
    pub alpha: JetFn,
    pub beta: JetFn,
}

impl Operator1D {
    pub fn new(label: impl Into<String>, alpha: JetFn, beta: JetFn) -> Self {
        Operator1D {
            label: label.into(),
            alpha,
            beta,
        }
    }

    /// Pure multiplication operator.
    pub fn mul(label: impl Into<String>, beta: JetFn) -> Self {
        Operator1D::new(label, jf_const(0.0), beta)
    }
}

/// Second-order form a2 d2/dx2 + a1 d/dx + a0 (reduced Hamiltonians and the
/// intermediate operator behind the oscillator energy ladder).
#[derive(Clone)]
pub struct SecondOrder {
    pub label: String,
    pub a2: JetFn,
    pub a1: JetFn,
    pub a0: JetFn,
}

#[derive(Clone)]
pub enum ChainElement {
    Op1(Operator1D),
    Op2(SecondOrder),
    Scalar(C64),
}

/// Ordered composition of elements; `elements[0]` acts first.
#[derive(Clone)]
pub struct OperatorChain {
    pub label: String,
    pub elements: Vec<ChainElement>,
}

impl OperatorChain {
    pub fn identity(label: impl Into<String>) -> Self {
        OperatorChain {
            label: label.into(),
            elements: Vec::new(),
        }
    }

    pub fn single(op: Operator1D) -> Self {
        OperatorChain {
            label: op.label.clone(),
            elements: vec![ChainElement::Op1(op)],
        }
    }

    pub fn second_order(op: SecondOrder) -> Self {
        OperatorChain {
            label: op.label.clone(),
            elements: vec![ChainElement::Op2(op)],
        }
    }

    /// `ops` listed left-to-right as written on paper; the rightmost acts first.
    pub fn product(label: impl Into<String>, ops: Vec<ChainElement>) -> Self {
        let mut elements = ops;
        elements.reverse();
        OperatorChain {
            label: label.into(),
            elements,
        }
    }

    /// Append another stage applied after everything so far.
    pub fn then(mut self, el: ChainElement) -> Self {
        self.elements.push(el);
        self
    }

    pub fn scaled(mut self, a: C64) -> Self {
        self.elements.push(ChainElement::Scalar(a));
        self
    }

    pub fn order(&self) -> usize {
        self.elements
            .iter()
            .map(|e| match e {
                ChainElement::Op1(_) => 1,
                ChainElement::Op2(_) => 2,
                ChainElement::Scalar(_) => 0,
            })
            .sum()
    }
}

/// A chain with coefficients pre-evaluated on one grid, for repeated
/// line-wise application over tensor fields.
pub enum SampledElement {
    Op1 { a: Vec<C64>, b: Vec<C64> },
    Op2 { a2: Vec<C64>, a1: Vec<C64>, a0: Vec<C64> },
    Scalar(C64),
}

pub fn sample_chain(grid: &Grid, chain: &OperatorChain) -> Result<Vec<SampledElement>> {
    chain
        .elements
        .iter()
        .map(|el| match el {
            ChainElement::Op1(op) => {
                let mut a = Vec::with_capacity(grid.n());
                let mut b = Vec::with_capacity(grid.n());
                for &x in &grid.nodes {
                    a.push(finite_check(&op.label, x, (op.alpha)(x, 0).value())?);
                    b.push(finite_check(&op.label, x, (op.beta)(x, 0).value())?);
                }
                Ok(SampledElement::Op1 { a, b })
            }
            ChainElement::Op2(op) => {
                let mut a2 = Vec::with_capacity(grid.n());
                let mut a1 = Vec::with_capacity(grid.n());
                let mut a0 = Vec::with_capacity(grid.n());
                for &x in &grid.nodes {
                    a2.push(finite_check(&op.label, x, (op.a2)(x, 0).value())?);
                    a1.push(finite_check(&op.label, x, (op.a1)(x, 0).value())?);
                    a0.push(finite_check(&op.label, x, (op.a0)(x, 0).value())?);
                }
                Ok(SampledElement::Op2 { a2, a1, a0 })
            }
            ChainElement::Scalar(s) => Ok(SampledElement::Scalar(*s)),
        })
        .collect()
}

/// Apply a sampled chain to one line of values on its grid.
pub fn apply_sampled(grid: &Grid, sampled: &[SampledElement], line: &mut Vec<C64>) {
    for el in sampled {
        match el {
            SampledElement::Op1 { a, b } => {
                let d = grid.d1_apply(line);
                for i in 0..line.len() {
                    line[i] = a[i] * d[i] + b[i] * line[i];
                }
            }
            SampledElement::Op2 { a2, a1, a0 } => {
                let d1 = grid.d1_apply(line);
                let d2 = grid.d2_apply(line);
                for i in 0..line.len() {
                    line[i] = a2[i] * d2[i] + a1[i] * d1[i] + a0[i] * line[i];
                }
            }
            SampledElement::Scalar(s) => {
                for v in line.iter_mut() {
                    *v *= s;
                }
            }
        }
    }
}

fn finite_check(label: &str, x: f64, v: C64) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Pole(format!(
            "coefficient of {label} non-finite at node {x}"
        )))
    }
}

/// Apply a chain to grid samples via spectral differentiation.
pub fn apply(grid: &Grid, chain: &OperatorChain, g: &GridFunction) -> Result<GridFunction> {
    let mut cur = g.values.clone();
    for el in &chain.elements {
        match el {
            ChainElement::Op1(op) => {
                let d = grid.d1_apply(&cur);
                let mut out = vec![C64::new(0.0, 0.0); cur.len()];
                for (i, &x) in grid.nodes.iter().enumerate() {
                    let a = finite_check(&op.label, x, (op.alpha)(x, 0).value())?;
                    let b = finite_check(&op.label, x, (op.beta)(x, 0).value())?;
                    out[i] = a * d[i] + b * cur[i];
                }
                cur = out;
            }
            ChainElement::Op2(op) => {
                let d1 = grid.d1_apply(&cur);
                let d2 = grid.d2_apply(&cur);
                let mut out = vec![C64::new(0.0, 0.0); cur.len()];
                for (i, &x) in grid.nodes.iter().enumerate() {
                    let a2 = finite_check(&op.label, x, (op.a2)(x, 0).value())?;
                    let a1 = finite_check(&op.label, x, (op.a1)(x, 0).value())?;
                    let a0 = finite_check(&op.label, x, (op.a0)(x, 0).value())?;
                    out[i] = a2 * d2[i] + a1 * d1[i] + a0 * cur[i];
                }
                cur = out;
            }
            ChainElement::Scalar(a) => {
                for v in cur.iter_mut() {
                    *v *= a;
                }
            }
        }
    }
    Ok(GridFunction { values: cur })
}

/// Apply a chain to a jet-evaluable state, producing another jet state.
pub fn apply_jet(chain: &OperatorChain, state: &JetFn) -> JetFn {
    let mut cur = state.clone();
    for el in &chain.elements {
        cur = match el {
            ChainElement::Op1(op) => {
                let alpha = op.alpha.clone();
                let beta = op.beta.clone();
                let f = cur.clone();
                Rc::new(move |x, depth| {
                    let fj = f(x, depth + 1);
                    let a = alpha(x, depth);
                    let b = beta(x, depth);
                    a.mul(&fj.d()).add(&b.mul(&fj.resize(depth)))
                }) as JetFn
            }
            ChainElement::Op2(op) => {
                let a2 = op.a2.clone();
                let a1 = op.a1.clone();
                let a0 = op.a0.clone();
                let f = cur.clone();
                Rc::new(move |x, depth| {
                    let fj = f(x, depth + 2);
                    let d1 = fj.d();
                    let d2 = d1.d();
                    a2(x, depth)
                        .mul(&d2)
                        .add(&a1(x, depth).mul(&d1.resize(depth)))
                        .add(&a0(x, depth).mul(&fj.resize(depth)))
                }) as JetFn
            }
            ChainElement::Scalar(a) => {
                let a = *a;
                let f = cur.clone();
                Rc::new(move |x, depth| f(x, depth).scale(a)) as JetFn
            }
        };
    }
    cur
}

/// Sample a jet state's value on a grid.
pub fn sample(grid: &Grid, state: &JetFn) -> GridFunction {
    GridFunction {
        values: grid.nodes.iter().map(|&x| state(x, 0).value()).collect(),
    }
}

/// Effective (a0, a1, a2) of a chain of order <= 2 at a point, extracted by
/// applying the chain to the monomials 1, x, x^2 in jet mode.
pub fn effective_coefficients(chain: &OperatorChain, x: f64) -> [C64; 3] {
    let one: JetFn = Rc::new(|_, d| Jet::real_constant(1.0, d));
    let lin: JetFn = Rc::new(|x0, d| Jet::variable(x0, d));
    let quad: JetFn = Rc::new(|x0, d| {
        let v = Jet::variable(x0, d);
        v.mul(&v)
    });
    let a_1 = apply_jet(chain, &one)(x, 0).value();
    let a_x = apply_jet(chain, &lin)(x, 0).value();
    let a_xx = apply_jet(chain, &quad)(x, 0).value();
    let a0 = a_1;
    let a1 = a_x - a0 * x;
    let a2 = (a_xx - a0 * x * x - 2.0 * x * a1) / 2.0;
    [a0, a1, a2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{differentiate, make_grid, weighted_norm, Coord};
    use crate::kappa::Curvature;

    fn flat_grid(n: usize) -> Grid {
        let flat = Curvature::new(0.0, Some(40.0)).unwrap();
        make_grid(Coord::R, &flat, n).unwrap()
    }

    #[test]
    fn identity_chain() {
        let g = flat_grid(32);
        let f = GridFunction::from_real_fn(&g, |r| (-0.1 * r).exp());
        let id = OperatorChain::identity("1");
        let out = apply(&g, &id, &f).unwrap();
        for (a, b) in out.values.iter().zip(&f.values) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn minus_ddr_on_linear() {
        let g = flat_grid(32);
        let f = GridFunction::from_real_fn(&g, |r| r);
        let op = OperatorChain::single(Operator1D::new("-d/dr", jf_const(-1.0), jf_const(0.0)));
        let out = apply(&g, &op, &f).unwrap();
        for v in &out.values {
            assert!((v.re + 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn hand_applied_shift_operator() {
        // Sigma-_{l=1} at kappa=0, q=2: d/dr + 2/r - 1 applied to r e^{-r}
        // equals (3 - 2r) e^{-r}.
        let g = flat_grid(96);
        let f = GridFunction::from_real_fn(&g, |r| r * (-r).exp());
        let op = OperatorChain::single(Operator1D::new(
            "Sigma-",
            jf_const(1.0),
            jf(|r| {
                let two_over_r = r.recip().scale(C64::new(2.0, 0.0));
                two_over_r.add(&Jet::real_constant(-1.0, r.depth()))
            }),
        ));
        let out = apply(&g, &op, &f).unwrap();
        for (i, &r) in g.nodes.iter().enumerate() {
            let expect = (3.0 - 2.0 * r) * (-r).exp();
            assert!(
                (out.values[i].re - expect).abs() < 1e-8,
                "r={r}: {} vs {expect}",
                out.values[i].re
            );
        }
    }

    #[test]
    fn apply_is_linear() {
        let g = flat_grid(64);
        let f = GridFunction::from_real_fn(&g, |r| (-0.3 * (r - 12.0).powi(2)).exp());
        let h = GridFunction::from_real_fn(&g, |r| (-0.2 * (r - 25.0).powi(2)).exp());
        let op = OperatorChain::single(Operator1D::new(
            "a",
            jf(|r| r.sin()),
            jf(|r| r.cos()),
        ));
        let (a, b) = (C64::new(1.3, -0.4), C64::new(-0.7, 2.1));
        let mut comb = GridFunction::zeros(&g);
        comb.axpy(a, &f);
        comb.axpy(b, &h);
        let lhs = apply(&g, &op, &comb).unwrap();
        let of = apply(&g, &op, &f).unwrap();
        let oh = apply(&g, &op, &h).unwrap();
        let mut rhs = GridFunction::zeros(&g);
        rhs.axpy(a, &of);
        rhs.axpy(b, &oh);
        let mut diff = lhs.clone();
        diff.axpy(C64::new(-1.0, 0.0), &rhs);
        let denom = weighted_norm(&g, &f) + weighted_norm(&g, &h);
        assert!(weighted_norm(&g, &diff) < 1e-12 * denom);
    }

    #[test]
    fn composition_associativity() {
        // chain [A, B] applied equals A applied to (B applied), node-wise.
        let g = flat_grid(48);
        let f = GridFunction::from_real_fn(&g, |r| (-0.1 * (r - 15.0).powi(2)).exp());
        let a = Operator1D::new("A", jf_const(1.0), jf(|r| r.clone()));
        let b = Operator1D::new("B", jf(|r| r.sin()), jf_const(-0.5));
        let ab = OperatorChain::product(
            "A B",
            vec![ChainElement::Op1(a.clone()), ChainElement::Op1(b.clone())],
        );
        let once = apply(&g, &ab, &f).unwrap();
        let bf = apply(&g, &OperatorChain::single(b), &f).unwrap();
        let abf = apply(&g, &OperatorChain::single(a), &bf).unwrap();
        for (x, y) in once.values.iter().zip(&abf.values) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn jet_apply_matches_grid_apply_on_smooth() {
        let g = flat_grid(96);
        let state: JetFn = Rc::new(|x, depth| {
            let xj = Jet::variable(x, depth);
            xj.scale(C64::new(-0.25, 0.0)).exp().mul(&xj)
        });
        let f = sample(&g, &state);
        let op = OperatorChain::product(
            "test",
            vec![
                ChainElement::Op1(Operator1D::new("A", jf_const(1.0), jf(|r| r.recip()))),
                ChainElement::Op1(Operator1D::new("B", jf_const(-1.0), jf(|r| r.clone()))),
            ],
        );
        let via_grid = apply(&g, &op, &f).unwrap();
        let via_jet = sample(&g, &apply_jet(&op, &state));
        let mut diff = via_grid.clone();
        diff.axpy(C64::new(-1.0, 0.0), &via_jet);
        assert!(weighted_norm(&g, &diff) < 1e-7 * weighted_norm(&g, &via_jet).max(1.0));
    }

    #[test]
    fn pole_error_reported() {
        let g = flat_grid(32);
        let f = GridFunction::from_real_fn(&g, |_| 1.0);
        // 1/(r - r_mid) hits a node-adjacent singularity but stays finite at
        // nodes; use an explicitly non-finite coefficient instead.
        let op = OperatorChain::single(Operator1D::new(
            "bad",
            jf_const(0.0),
            Rc::new(|_, depth| Jet::real_constant(f64::INFINITY, depth)),
        ));
        assert!(matches!(apply(&g, &op, &f), Err(Error::Pole(_))));
    }

    #[test]
    fn spectral_derivative_in_chain_matches_direct() {
        let g = flat_grid(64);
        let f = GridFunction::from_real_fn(&g, |r| (0.3 * r).sin());
        let d = differentiate(&g, &f).unwrap();
        let op = OperatorChain::single(Operator1D::new("d/dr", jf_const(1.0), jf_const(0.0)));
        let via_chain = apply(&g, &op, &f).unwrap();
        for (a, b) in d.values.iter().zip(&via_chain.values) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
