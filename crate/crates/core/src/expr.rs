//! Compositional description of holomorphic functions.
//!
//! A [`FuncExpr`] is a tree built from monomials, polynomials, exponentials
//! `e^{μz}`, disk-automorphism (Blaschke) factors, singular atoms
//! `exp(-m (ζ+z)/(ζ-z))`, and the closure operations sum / product / power /
//! scale / argument shift / reciprocal. Every expression can be evaluated to
//! a [`Jet`] of any order at any point of its natural domain, by structural
//! recursion in exact jet arithmetic.
//!
//! Entire building blocks live on all of ℂ; as soon as a Blaschke factor or
//! a singular atom appears the natural domain shrinks to the open unit disk,
//! and evaluation outside it is rejected. A reciprocal adds poles, which are
//! likewise rejected pointwise at evaluation time.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::jet::{Jet, MAX_JET_ORDER};
use crate::numeric::{c_abs, c_from, Real};
use crate::C64;

/// Natural domain of an expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// Defined on the whole plane (up to poles of explicit reciprocals).
    Entire,
    /// Contains a Blaschke factor or singular atom: the open unit disk.
    UnitDisk,
}

/// Expression tree for a holomorphic function.
///
/// Invariants (checked by the smart constructors and [`FuncExpr::validate`]):
/// Blaschke parameters satisfy `|a| < 1`, singular atoms have `|ζ| = 1`
/// (stored as the angle over π) and positive mass.
#[derive(Clone, Debug, PartialEq)]
pub enum FuncExpr {
    /// `z^d`
    Monomial { degree: u32 },
    /// `Σ coeffs[k] z^k`
    Polynomial { coeffs: Vec<C64> },
    /// `e^{μ z}`
    ExpAtom { mu: C64 },
    /// `(a - z) / (1 - ā z)`, `|a| < 1`
    BlaschkeFactor { a: C64 },
    /// `exp(-mass (ζ + z)/(ζ - z))` with `ζ = e^{iπt}`, `mass > 0`
    SingularAtom { t: f64, mass: f64 },
    Sum(Vec<FuncExpr>),
    Product(Vec<FuncExpr>),
    Power { base: Box<FuncExpr>, exponent: u32 },
    Scale { inner: Box<FuncExpr>, factor: C64 },
    /// `z ↦ f(mul·z + add)`
    ShiftArg {
        inner: Box<FuncExpr>,
        mul: C64,
        add: C64,
    },
    /// `1 / f`
    Recip(Box<FuncExpr>),
}

impl FuncExpr {
    pub fn monomial(degree: u32) -> FuncExpr {
        FuncExpr::Monomial { degree }
    }

    pub fn polynomial(coeffs: Vec<C64>) -> FuncExpr {
        FuncExpr::Polynomial { coeffs }
    }

    /// Real-coefficient convenience.
    pub fn poly_re(coeffs: &[f64]) -> FuncExpr {
        FuncExpr::Polynomial {
            coeffs: coeffs.iter().map(|&c| C64::new(c, 0.0)).collect(),
        }
    }

    pub fn constant(c: C64) -> FuncExpr {
        FuncExpr::Polynomial {
            coeffs: alloc::vec![c],
        }
    }

    pub fn exp_atom(mu: C64) -> FuncExpr {
        FuncExpr::ExpAtom { mu }
    }

    /// Blaschke factor `(a - z)/(1 - ā z)`; requires `|a| < 1`.
    pub fn blaschke_factor(a: C64) -> Result<FuncExpr> {
        if a.norm() >= 1.0 {
            return Err(Error::InvalidParam(alloc::format!(
                "blaschke factor needs |a| < 1, got |a| = {}",
                a.norm()
            )));
        }
        Ok(FuncExpr::BlaschkeFactor { a })
    }

    /// Singular atom at `ζ = e^{iπt}` with the given mass. `t` is reduced to
    /// `(-1, 1]`; the mass must be positive.
    pub fn singular_atom(t: f64, mass: f64) -> Result<FuncExpr> {
        if !(mass > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParam(
                "singular atom needs finite angle and mass > 0".into(),
            ));
        }
        Ok(FuncExpr::SingularAtom {
            t: reduce_angle_t(t),
            mass,
        })
    }

    pub fn sum(terms: Vec<FuncExpr>) -> FuncExpr {
        FuncExpr::Sum(terms)
    }

    pub fn product(factors: Vec<FuncExpr>) -> FuncExpr {
        FuncExpr::Product(factors)
    }

    pub fn power(base: FuncExpr, exponent: u32) -> FuncExpr {
        FuncExpr::Power {
            base: Box::new(base),
            exponent,
        }
    }

    pub fn scale(inner: FuncExpr, factor: C64) -> FuncExpr {
        FuncExpr::Scale {
            inner: Box::new(inner),
            factor,
        }
    }

    pub fn shift_arg(inner: FuncExpr, mul: C64, add: C64) -> FuncExpr {
        FuncExpr::ShiftArg {
            inner: Box::new(inner),
            mul,
            add,
        }
    }

    pub fn recip(inner: FuncExpr) -> FuncExpr {
        FuncExpr::Recip(Box::new(inner))
    }

    /// Re-check every structural invariant in the tree. Parsers construct
    /// variants directly, so this is their gate.
    pub fn validate(&self) -> Result<()> {
        match self {
            FuncExpr::Monomial { .. } | FuncExpr::Polynomial { .. } | FuncExpr::ExpAtom { .. } => {
                Ok(())
            }
            FuncExpr::BlaschkeFactor { a } => {
                if a.norm() < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParam(alloc::format!(
                        "blaschke factor needs |a| < 1, got |a| = {}",
                        a.norm()
                    )))
                }
            }
            FuncExpr::SingularAtom { t, mass } => {
                if *mass > 0.0 && t.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParam(
                        "singular atom needs finite angle and mass > 0".into(),
                    ))
                }
            }
            FuncExpr::Sum(children) | FuncExpr::Product(children) => {
                children.iter().try_for_each(FuncExpr::validate)
            }
            FuncExpr::Power { base, .. } => base.validate(),
            FuncExpr::Scale { inner, .. } => inner.validate(),
            FuncExpr::ShiftArg { inner, .. } => inner.validate(),
            FuncExpr::Recip(inner) => inner.validate(),
        }
    }

    /// Natural domain, derived from the tree. Conservative under `shiftarg`:
    /// a disk-only child keeps the whole expression disk-only.
    pub fn domain(&self) -> Domain {
        match self {
            FuncExpr::Monomial { .. } | FuncExpr::Polynomial { .. } | FuncExpr::ExpAtom { .. } => {
                Domain::Entire
            }
            FuncExpr::BlaschkeFactor { .. } | FuncExpr::SingularAtom { .. } => Domain::UnitDisk,
            FuncExpr::Sum(children) | FuncExpr::Product(children) => {
                if children.iter().any(|c| c.domain() == Domain::UnitDisk) {
                    Domain::UnitDisk
                } else {
                    Domain::Entire
                }
            }
            FuncExpr::Power { base, .. } => base.domain(),
            FuncExpr::Scale { inner, .. } => inner.domain(),
            FuncExpr::ShiftArg { inner, .. } => inner.domain(),
            FuncExpr::Recip(inner) => inner.domain(),
        }
    }

    /// Evaluate the jet of order `order` at `z0`, in the scalar `R`.
    pub fn eval_jet_in<R: Real>(&self, z0: Complex<R>, order: usize) -> Result<Jet<R>> {
        if order > MAX_JET_ORDER {
            return Err(Error::OrderCap {
                requested: order,
                cap: MAX_JET_ORDER,
            });
        }
        self.eval_rec(z0, order)
    }

    /// Evaluate the jet of order `order` at `z0` in `f64`.
    pub fn eval_jet(&self, z0: C64, order: usize) -> Result<Jet> {
        self.eval_jet_in::<f64>(z0, order)
    }

    /// Plain function value.
    pub fn eval(&self, z0: C64) -> Result<C64> {
        Ok(self.eval_jet(z0, 0)?.value())
    }

    fn eval_rec<R: Real>(&self, z0: Complex<R>, order: usize) -> Result<Jet<R>> {
        let zero = Complex::new(R::zero(), R::zero());
        let one = Complex::new(R::one(), R::zero());
        match self {
            FuncExpr::Monomial { degree } => {
                let d = *degree as usize;
                let mut derivs = alloc::vec![zero; order + 1];
                // d!/(d-k)! z^(d-k), running falling factorial
                let mut fall = R::one();
                for k in 0..=order.min(d) {
                    if k > 0 {
                        fall = fall * R::from_f64((d - k + 1) as f64);
                    }
                    derivs[k] = powc(z0, (d - k) as u32) * Complex::new(fall, R::zero());
                }
                Jet::from_derivs(z0, derivs)
            }
            FuncExpr::Polynomial { coeffs } => {
                let mut derivs = alloc::vec![zero; order + 1];
                for (j, cj) in coeffs.iter().enumerate() {
                    let c: Complex<R> = c_from(*cj);
                    let mut fall = R::one();
                    for k in 0..=order.min(j) {
                        if k > 0 {
                            fall = fall * R::from_f64((j - k + 1) as f64);
                        }
                        derivs[k] = derivs[k] + c * powc(z0, (j - k) as u32) * Complex::new(fall, R::zero());
                    }
                }
                Jet::from_derivs(z0, derivs)
            }
            FuncExpr::ExpAtom { mu } => {
                let m: Complex<R> = c_from(*mu);
                let e = crate::numeric::c_exp(m * z0);
                let mut derivs = Vec::with_capacity(order + 1);
                let mut mk = one;
                for _ in 0..=order {
                    derivs.push(mk * e);
                    mk = mk * m;
                }
                Jet::from_derivs(z0, derivs)
            }
            FuncExpr::BlaschkeFactor { a } => {
                self.check_in_disk(z0)?;
                let av: Complex<R> = c_from(*a);
                if c_abs(av).to_f64() >= 1.0 {
                    return Err(Error::InvalidParam("blaschke factor with |a| >= 1".into()));
                }
                // (a - z) * 1/(1 - ā z)
                let mut num = Jet::constant(z0, av - z0, order);
                if order >= 1 {
                    num = set_deriv(num, 1, -one);
                }
                let mut den = Jet::constant(z0, one - av.conj() * z0, order);
                if order >= 1 {
                    den = set_deriv(den, 1, -av.conj());
                }
                num.product(&den.reciprocal()?)
            }
            FuncExpr::SingularAtom { t, mass } => {
                self.check_in_disk(z0)?;
                let zeta: Complex<R> = unit_point(*t);
                if zeta == z0 {
                    return Err(Error::Domain {
                        z: crate::numeric::c_to_f64(z0),
                        reason: "evaluation at the singular atom base point".into(),
                    });
                }
                let m = Complex::new(R::from_f64(*mass), R::zero());
                // exp(-m (ζ + z)/(ζ - z)); the Möbius jet is exact
                let mut num = Jet::constant(z0, -m * (zeta + z0), order);
                if order >= 1 {
                    num = set_deriv(num, 1, -m);
                }
                let mut den = Jet::constant(z0, zeta - z0, order);
                if order >= 1 {
                    den = set_deriv(den, 1, -one);
                }
                Ok(num.product(&den.reciprocal()?)?.exp())
            }
            FuncExpr::Sum(children) => {
                if children.is_empty() {
                    return Ok(Jet::constant(z0, zero, order));
                }
                let mut acc = children[0].eval_rec(z0, order)?;
                for c in &children[1..] {
                    acc = acc.add(&c.eval_rec(z0, order)?)?;
                }
                Ok(acc)
            }
            FuncExpr::Product(children) => {
                if children.is_empty() {
                    return Ok(Jet::constant(z0, one, order));
                }
                let mut acc = children[0].eval_rec(z0, order)?;
                for c in &children[1..] {
                    acc = acc.product(&c.eval_rec(z0, order)?)?;
                }
                Ok(acc)
            }
            FuncExpr::Power { base, exponent } => Ok(base.eval_rec(z0, order)?.powi(*exponent)),
            FuncExpr::Scale { inner, factor } => {
                Ok(inner.eval_rec(z0, order)?.scale(c_from(*factor)))
            }
            FuncExpr::ShiftArg { inner, mul, add } => {
                let a: Complex<R> = c_from(*mul);
                let b: Complex<R> = c_from(*add);
                let w0 = a * z0 + b;
                let g = inner.eval_rec(w0, order)?;
                // affine chain rule: (f(az+b))^(k) = a^k f^(k)(az+b)
                let mut derivs = Vec::with_capacity(order + 1);
                let mut ak = one;
                for k in 0..=order {
                    derivs.push(g.deriv(k) * ak);
                    ak = ak * a;
                }
                Jet::from_derivs(z0, derivs)
            }
            FuncExpr::Recip(inner) => {
                let g = inner.eval_rec(z0, order)?;
                g.reciprocal().map_err(|e| match e {
                    Error::LeadingZero => Error::Domain {
                        z: crate::numeric::c_to_f64(z0),
                        reason: "pole of a reciprocal".into(),
                    },
                    other => other,
                })
            }
        }
    }

    fn check_in_disk<R: Real>(&self, z0: Complex<R>) -> Result<()> {
        let n2 = z0.re * z0.re + z0.im * z0.im;
        if n2.to_f64() < 1.0 {
            Ok(())
        } else {
            Err(Error::Domain {
                z: crate::numeric::c_to_f64(z0),
                reason: String::from("outside the unit disk"),
            })
        }
    }

    /// Structural derivative. Every variant has one in closed form; Blaschke
    /// factors and atoms rewrite through `recip`.
    pub fn differentiate(&self) -> FuncExpr {
        match self {
            FuncExpr::Monomial { degree } => {
                if *degree == 0 {
                    FuncExpr::constant(C64::new(0.0, 0.0))
                } else {
                    FuncExpr::scale(
                        FuncExpr::monomial(degree - 1),
                        C64::new(f64::from(*degree), 0.0),
                    )
                }
            }
            FuncExpr::Polynomial { coeffs } => {
                if coeffs.len() <= 1 {
                    return FuncExpr::constant(C64::new(0.0, 0.0));
                }
                let d: Vec<C64> = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(j, c)| c * C64::new(j as f64, 0.0))
                    .collect();
                FuncExpr::Polynomial { coeffs: d }
            }
            FuncExpr::ExpAtom { mu } => FuncExpr::scale(FuncExpr::exp_atom(*mu), *mu),
            FuncExpr::BlaschkeFactor { a } => {
                // ((a-z)/(1-āz))' = (|a|² - 1)/(1-āz)²
                let den = FuncExpr::Polynomial {
                    coeffs: alloc::vec![C64::new(1.0, 0.0), -a.conj()],
                };
                FuncExpr::scale(
                    FuncExpr::power(FuncExpr::recip(den), 2),
                    C64::new(a.norm_sqr() - 1.0, 0.0),
                )
            }
            FuncExpr::SingularAtom { t, mass } => {
                // S' = S · (-2 m ζ) / (ζ - z)²
                let zeta = crate::numeric::c_to_f64(unit_point::<f64>(*t));
                let den = FuncExpr::Polynomial {
                    coeffs: alloc::vec![zeta, C64::new(-1.0, 0.0)],
                };
                FuncExpr::product(alloc::vec![
                    self.clone(),
                    FuncExpr::scale(
                        FuncExpr::power(FuncExpr::recip(den), 2),
                        C64::new(-2.0 * mass, 0.0) * zeta,
                    ),
                ])
            }
            FuncExpr::Sum(children) => {
                FuncExpr::sum(children.iter().map(FuncExpr::differentiate).collect())
            }
            FuncExpr::Product(children) => {
                let mut terms = Vec::with_capacity(children.len());
                for i in 0..children.len() {
                    let mut factors = children.clone();
                    factors[i] = factors[i].differentiate();
                    terms.push(FuncExpr::product(factors));
                }
                FuncExpr::sum(terms)
            }
            FuncExpr::Power { base, exponent } => {
                if *exponent == 0 {
                    FuncExpr::constant(C64::new(0.0, 0.0))
                } else {
                    FuncExpr::scale(
                        FuncExpr::product(alloc::vec![
                            FuncExpr::power((**base).clone(), exponent - 1),
                            base.differentiate(),
                        ]),
                        C64::new(f64::from(*exponent), 0.0),
                    )
                }
            }
            FuncExpr::Scale { inner, factor } => FuncExpr::scale(inner.differentiate(), *factor),
            FuncExpr::ShiftArg { inner, mul, add } => FuncExpr::scale(
                FuncExpr::shift_arg(inner.differentiate(), *mul, *add),
                *mul,
            ),
            FuncExpr::Recip(inner) => {
                // (1/f)' = -f'/f²
                FuncExpr::scale(
                    FuncExpr::product(alloc::vec![
                        inner.differentiate(),
                        FuncExpr::power(FuncExpr::recip((**inner).clone()), 2),
                    ]),
                    C64::new(-1.0, 0.0),
                )
            }
        }
    }

    /// `k`-fold structural derivative.
    pub fn differentiate_n(&self, k: u32) -> FuncExpr {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.differentiate();
        }
        f
    }
}

/// Reduce an angle-over-π to `(-1, 1]`.
pub fn reduce_angle_t(t: f64) -> f64 {
    let mut r = t % 2.0;
    if r <= -1.0 {
        r += 2.0;
    } else if r > 1.0 {
        r -= 2.0;
    }
    r
}

/// `e^{iπt}` in the scalar `R`. Exact at the four axis points.
pub fn unit_point<R: Real>(t: f64) -> Complex<R> {
    let exact = |re: f64, im: f64| Complex::new(R::from_f64(re), R::from_f64(im));
    if t == 0.0 {
        return exact(1.0, 0.0);
    }
    if t == 0.5 {
        return exact(0.0, 1.0);
    }
    if t == 1.0 {
        return exact(-1.0, 0.0);
    }
    if t == -0.5 {
        return exact(0.0, -1.0);
    }
    let th = R::from_f64(t) * R::from_f64(core::f64::consts::PI);
    Complex::new(th.cos(), th.sin())
}

fn powc<R: Real>(z: Complex<R>, k: u32) -> Complex<R> {
    let mut result = Complex::new(R::one(), R::zero());
    let mut base = z;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base;
        }
        e >>= 1;
        if e > 0 {
            base = base * base;
        }
    }
    result
}

fn set_deriv<R: Real>(jet: Jet<R>, k: usize, v: Complex<R>) -> Jet<R> {
    let mut derivs = jet.derivs().to_vec();
    derivs[k] = v;
    Jet::from_derivs(jet.basepoint(), derivs).expect("well-formed")
}

/// Anything that can produce jets at interior points: expressions, Wronskians
/// of families, derivatives of other analytic functions.
pub trait AnalyticFn {
    fn jet_at(&self, z: C64, order: usize) -> Result<Jet>;

    /// Natural domain; used by region machinery to pick default clips.
    fn domain(&self) -> Domain {
        Domain::Entire
    }

    fn value_at(&self, z: C64) -> Result<C64> {
        Ok(self.jet_at(z, 0)?.value())
    }
}

impl AnalyticFn for FuncExpr {
    fn jet_at(&self, z: C64, order: usize) -> Result<Jet> {
        self.eval_jet(z, order)
    }

    fn domain(&self) -> Domain {
        FuncExpr::domain(self)
    }
}

/// The `k`-th derivative of another analytic function, as an analytic
/// function (jets shift by `k`).
pub struct DerivativeFn<'a, F: AnalyticFn + ?Sized> {
    pub f: &'a F,
    pub k: usize,
}

impl<F: AnalyticFn + ?Sized> AnalyticFn for DerivativeFn<'_, F> {
    fn jet_at(&self, z: C64, order: usize) -> Result<Jet> {
        let full = self.f.jet_at(z, order + self.k)?;
        Ok(full.derivative_jet(self.k).expect("order covers the shift"))
    }

    fn domain(&self) -> Domain {
        self.f.domain()
    }
}
