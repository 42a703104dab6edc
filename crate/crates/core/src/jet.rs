//! Exact jet (truncated Taylor) arithmetic.
//!
//! A [`Jet`] carries a basepoint `z0`, an order `n`, and the raw derivative
//! vector `f(z0), f'(z0), ..., f^(n)(z0)`. Raw derivatives — not Taylor
//! coefficients `f^(k)/k!` — so a jet column drops straight into a Wronskian
//! matrix without factorial rescaling.
//!
//! All combinators are structural recurrences (Leibniz, reciprocal,
//! exponential); nothing here is a finite difference.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{c_exp, Real};

/// Hard cap on jet order. Binomial weights in the Leibniz sums grow like
/// `C(n, n/2)`; past this order they eat the mantissa.
pub const MAX_JET_ORDER: usize = 32;

/// Derivatives `f^(0)..f^(n)` of some function at a basepoint.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<R: Real = f64> {
    basepoint: Complex<R>,
    derivs: Vec<Complex<R>>,
}

/// Binomial triangle rows 0..=n as exact small integers in `f64`.
fn binomial_rows(n: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = Vec::with_capacity(k + 1);
        row.push(1.0);
        for i in 1..=k {
            let prev = rows.get(k - 1);
            let a = prev.and_then(|r| r.get(i - 1)).copied().unwrap_or(0.0);
            let b = prev.and_then(|r| r.get(i)).copied().unwrap_or(0.0);
            row.push(a + b);
        }
        rows.push(row);
    }
    rows
}

impl<R: Real> Jet<R> {
    /// Build a jet from raw derivatives. Errors if empty or over the cap.
    pub fn from_derivs(basepoint: Complex<R>, derivs: Vec<Complex<R>>) -> Result<Jet<R>> {
        if derivs.is_empty() {
            return Err(Error::InvalidParam("jet needs at least the value".into()));
        }
        if derivs.len() - 1 > MAX_JET_ORDER {
            return Err(Error::OrderCap {
                requested: derivs.len() - 1,
                cap: MAX_JET_ORDER,
            });
        }
        Ok(Jet { basepoint, derivs })
    }

    /// Jet of the constant `c`.
    pub fn constant(basepoint: Complex<R>, c: Complex<R>, order: usize) -> Jet<R> {
        let mut derivs = alloc::vec![Complex::new(R::zero(), R::zero()); order + 1];
        derivs[0] = c;
        Jet { basepoint, derivs }
    }

    /// Jet of the identity `z ↦ z`.
    pub fn identity(basepoint: Complex<R>, order: usize) -> Jet<R> {
        let mut j = Jet::constant(basepoint, basepoint, order);
        if order >= 1 {
            j.derivs[1] = Complex::new(R::one(), R::zero());
        }
        j
    }

    pub fn basepoint(&self) -> Complex<R> {
        self.basepoint
    }

    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    /// The function value `f(z0)`.
    pub fn value(&self) -> Complex<R> {
        self.derivs[0]
    }

    /// Raw derivative `f^(k)(z0)`.
    pub fn deriv(&self, k: usize) -> Complex<R> {
        self.derivs[k]
    }

    pub fn derivs(&self) -> &[Complex<R>] {
        &self.derivs
    }

    fn check_compatible(&self, other: &Jet<R>) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::JetMismatch(alloc::format!(
                "orders {} and {} differ",
                self.order(),
                other.order()
            )));
        }
        if self.basepoint != other.basepoint {
            return Err(Error::JetMismatch("basepoints differ".into()));
        }
        Ok(())
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Jet<R>) -> Result<Jet<R>> {
        self.check_compatible(other)?;
        let derivs = self
            .derivs
            .iter()
            .zip(&other.derivs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet {
            basepoint: self.basepoint,
            derivs,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Complex<R>) -> Jet<R> {
        Jet {
            basepoint: self.basepoint,
            derivs: self.derivs.iter().map(|d| d * c).collect(),
        }
    }

    /// Leibniz product: `(uv)^(k) = Σ C(k,i) u^(i) v^(k-i)`.
    pub fn product(&self, other: &Jet<R>) -> Result<Jet<R>> {
        self.check_compatible(other)?;
        let n = self.order();
        let binom = binomial_rows(n);
        let mut derivs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = Complex::new(R::zero(), R::zero());
            for i in 0..=k {
                let c = R::from_f64(binom[k][i]);
                acc = acc + self.derivs[i] * other.derivs[k - i] * c;
            }
            derivs.push(acc);
        }
        Ok(Jet {
            basepoint: self.basepoint,
            derivs,
        })
    }

    /// Jet of `1/u`. Requires `u(z0) != 0`; the recurrence inverts the
    /// Leibniz identity `(u · 1/u)^(k) = 0` for `k >= 1`.
    pub fn reciprocal(&self) -> Result<Jet<R>> {
        let lead = self.derivs[0];
        if lead.re == R::zero() && lead.im == R::zero() {
            return Err(Error::LeadingZero);
        }
        let n = self.order();
        let binom = binomial_rows(n);
        let inv0 = Complex::new(R::one(), R::zero()) / lead;
        let mut w: Vec<Complex<R>> = Vec::with_capacity(n + 1);
        w.push(inv0);
        for k in 1..=n {
            let mut acc = Complex::new(R::zero(), R::zero());
            for i in 1..=k {
                let c = R::from_f64(binom[k][i]);
                acc = acc + self.derivs[i] * w[k - i] * c;
            }
            w.push(-acc * inv0);
        }
        Ok(Jet {
            basepoint: self.basepoint,
            derivs: w,
        })
    }

    /// Jet of `exp(u)`, via `w' = u' w`:
    /// `w^(k+1) = Σ_{i<=k} C(k,i) u^(i+1) w^(k-i)`.
    pub fn exp(&self) -> Jet<R> {
        let n = self.order();
        let binom = binomial_rows(n.max(1) - 1);
        let mut w: Vec<Complex<R>> = Vec::with_capacity(n + 1);
        w.push(c_exp(self.derivs[0]));
        for k in 0..n {
            let mut acc = Complex::new(R::zero(), R::zero());
            for i in 0..=k {
                let c = R::from_f64(binom[k][i]);
                acc = acc + self.derivs[i + 1] * w[k - i] * c;
            }
            w.push(acc);
        }
        Jet {
            basepoint: self.basepoint,
            derivs: w,
        }
    }

    /// Integer power by repeated squaring. `u^0` is the constant 1.
    pub fn powi(&self, k: u32) -> Jet<R> {
        let mut result = Jet::constant(
            self.basepoint,
            Complex::new(R::one(), R::zero()),
            self.order(),
        );
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base).expect("same basepoint/order");
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base).expect("same basepoint/order");
            }
        }
        result
    }

    /// Jet of the `k`-th derivative, dropping order by `k`: the tail shift.
    /// Returns `None` when `k` exceeds the order.
    pub fn derivative_jet(&self, k: usize) -> Option<Jet<R>> {
        if k > self.order() {
            return None;
        }
        Some(Jet {
            basepoint: self.basepoint,
            derivs: self.derivs[k..].to_vec(),
        })
    }

    /// Drop derivatives above `order`.
    pub fn truncated(&self, order: usize) -> Jet<R> {
        let end = (order + 1).min(self.derivs.len());
        Jet {
            basepoint: self.basepoint,
            derivs: self.derivs[..end].to_vec(),
        }
    }

    /// Round to an `f64` jet.
    pub fn to_f64(&self) -> Jet<f64> {
        Jet {
            basepoint: crate::numeric::c_to_f64(self.basepoint),
            derivs: self.derivs.iter().map(|d| crate::numeric::c_to_f64(*d)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn jet(base: C64, d: &[C64]) -> Jet {
        Jet::from_derivs(base, d.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn product_of_identity_with_itself_is_z_squared() {
        // jets of z and z at 0, order 2 -> (0, 0, 2)
        let z = Jet::<f64>::identity(c(0.0, 0.0), 2);
        let sq = z.product(&z).unwrap();
        assert_eq!(sq.derivs(), &[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn constant_one_is_multiplicative_identity() {
        let v = jet(c(0.3, 0.1), &[c(1.5, -2.0), c(0.25, 0.0), c(-1.0, 3.0)]);
        let one = Jet::constant(c(0.3, 0.1), c(1.0, 0.0), 2);
        assert_eq!(one.product(&v).unwrap(), v);
    }

    #[test]
    fn product_of_exp_jets_is_exp_of_doubled_argument() {
        // e^z * e^z at 0, order 2 -> (1, 2, 4) = jet of e^{2z}
        let e = jet(c(0.0, 0.0), &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let p = e.product(&e).unwrap();
        assert_eq!(p.derivs(), &[c(1.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]);
    }

    #[test]
    fn reciprocal_of_geometric_factor() {
        // 1 - z/2 at 0, order 1: (1, -1/2) -> (1, 1/2)
        let u = jet(c(0.0, 0.0), &[c(1.0, 0.0), c(-0.5, 0.0)]);
        let r = u.reciprocal().unwrap();
        assert_eq!(r.derivs(), &[c(1.0, 0.0), c(0.5, 0.0)]);
    }

    #[test]
    fn reciprocal_of_constant_jet() {
        let u = jet(c(0.0, 0.0), &[c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let r = u.reciprocal().unwrap();
        assert_eq!(r.derivs(), &[c(0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn reciprocal_is_involutive_to_1e12() {
        let u = jet(
            c(0.2, -0.4),
            &[c(1.3, 0.7), c(-0.2, 0.5), c(0.9, -1.1), c(0.1, 0.2)],
        );
        let back = u.reciprocal().unwrap().reciprocal().unwrap();
        for (a, b) in u.derivs().iter().zip(back.derivs()) {
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn reciprocal_rejects_vanishing_lead() {
        let u = jet(c(0.0, 0.0), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(u.reciprocal(), Err(Error::LeadingZero)));
    }

    #[test]
    fn exp_of_zero_jet_is_one() {
        let u = Jet::<f64>::constant(c(0.5, 0.5), c(0.0, 0.0), 3);
        let e = u.exp();
        assert_eq!(
            e.derivs(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn exp_of_identity_at_origin() {
        // exp(z) at 0, order 2 -> (1, 1, 1)
        let z = Jet::<f64>::identity(c(0.0, 0.0), 2);
        let e = z.exp();
        assert_eq!(e.derivs(), &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn exp_of_moebius_jet_order_zero_matches_singular_atom_value() {
        // u = -(1+z)/(1-z) at 0, order 0 -> exp gives e^{-1}
        let u = jet(c(0.0, 0.0), &[c(-1.0, 0.0)]);
        let e = u.exp();
        assert!((e.value() - c((-1.0f64).exp(), 0.0)).norm() < 1e-16);
    }

    #[test]
    fn mismatched_jets_error() {
        let a = Jet::<f64>::identity(c(0.0, 0.0), 2);
        let b = Jet::<f64>::identity(c(1.0, 0.0), 2);
        assert!(matches!(a.product(&b), Err(Error::JetMismatch(_))));
        let d = Jet::<f64>::identity(c(0.0, 0.0), 3);
        assert!(matches!(a.add(&d), Err(Error::JetMismatch(_))));
    }
}
