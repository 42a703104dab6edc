//! Reference oracles for the test suites.
//!
//! Everything here is deliberately naive and independent of the production
//! evaluation paths: dense symbolic polynomials with cofactor-expansion
//! determinants, central finite differences, and midpoint quadrature. Slow,
//! obvious, and used only to cross-check.

use num_complex::Complex64 as C64;

pub mod sympoly {
    //! Dense univariate polynomials over ℂ with exact-ish f64 arithmetic.

    use super::C64;

    /// Coefficients in ascending degree order. The zero polynomial is `[]`.
    #[derive(Clone, Debug, PartialEq)]
    pub struct Poly(pub Vec<C64>);

    impl Poly {
        pub fn zero() -> Poly {
            Poly(vec![])
        }

        pub fn constant(c: C64) -> Poly {
            Poly(vec![c])
        }

        pub fn monomial(d: usize) -> Poly {
            let mut c = vec![C64::new(0.0, 0.0); d + 1];
            c[d] = C64::new(1.0, 0.0);
            Poly(c)
        }

        pub fn from_re(coeffs: &[f64]) -> Poly {
            Poly(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
        }

        pub fn degree(&self) -> Option<usize> {
            self.0.iter().rposition(|c| c.norm() != 0.0)
        }

        pub fn add(&self, other: &Poly) -> Poly {
            let n = self.0.len().max(other.0.len());
            let mut out = vec![C64::new(0.0, 0.0); n];
            for (i, c) in self.0.iter().enumerate() {
                out[i] += c;
            }
            for (i, c) in other.0.iter().enumerate() {
                out[i] += c;
            }
            Poly(out)
        }

        pub fn neg(&self) -> Poly {
            Poly(self.0.iter().map(|c| -c).collect())
        }

        pub fn sub(&self, other: &Poly) -> Poly {
            self.add(&other.neg())
        }

        pub fn mul(&self, other: &Poly) -> Poly {
            if self.0.is_empty() || other.0.is_empty() {
                return Poly::zero();
            }
            let mut out = vec![C64::new(0.0, 0.0); self.0.len() + other.0.len() - 1];
            for (i, a) in self.0.iter().enumerate() {
                for (j, b) in other.0.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            Poly(out)
        }

        pub fn scale(&self, c: C64) -> Poly {
            Poly(self.0.iter().map(|a| a * c).collect())
        }

        pub fn pow(&self, k: u32) -> Poly {
            let mut acc = Poly::constant(C64::new(1.0, 0.0));
            for _ in 0..k {
                acc = acc.mul(self);
            }
            acc
        }

        pub fn derivative(&self) -> Poly {
            if self.0.len() <= 1 {
                return Poly::zero();
            }
            Poly(
                self.0
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| c * C64::new(i as f64, 0.0))
                    .collect(),
            )
        }

        pub fn derivative_n(&self, k: usize) -> Poly {
            let mut p = self.clone();
            for _ in 0..k {
                p = p.derivative();
            }
            p
        }

        pub fn eval(&self, z: C64) -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for c in self.0.iter().rev() {
                acc = acc * z + c;
            }
            acc
        }

        /// Max coefficient magnitude.
        pub fn coeff_scale(&self) -> f64 {
            self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
        }

        /// Coefficientwise equality within `tol` (absolute, against the
        /// larger coefficient scale).
        pub fn approx_eq(&self, other: &Poly, tol: f64) -> bool {
            let scale = self.coeff_scale().max(other.coeff_scale()).max(1.0);
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(C64::new(0.0, 0.0));
                let b = other.0.get(i).copied().unwrap_or(C64::new(0.0, 0.0));
                if (a - b).norm() > tol * scale {
                    return false;
                }
            }
            true
        }
    }

    /// Determinant of a square polynomial matrix by Laplace expansion along
    /// the first row. Exponential; for the small oracle sizes only.
    pub fn det(matrix: &[Vec<Poly>]) -> Poly {
        let n = matrix.len();
        if n == 0 {
            return Poly::constant(C64::new(1.0, 0.0));
        }
        if n == 1 {
            return matrix[0][0].clone();
        }
        let mut acc = Poly::zero();
        for (j, entry) in matrix[0].iter().enumerate() {
            if entry.degree().is_none() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = matrix[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(jj, _)| *jj != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = entry.mul(&det(&minor));
            acc = if j.is_multiple_of(2) {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// Brute-force symbolic Wronskian of a polynomial family: rows are
    /// derivative orders, columns are the family members.
    pub fn wronskian(family: &[Poly]) -> Poly {
        let n = family.len();
        let rows: Vec<Vec<Poly>> = (0..n)
            .map(|k| family.iter().map(|p| p.derivative_n(k)).collect())
            .collect();
        det(&rows)
    }
}

pub mod fd {
    //! Central finite differences for derivative cross-checks.

    use super::C64;

    /// 4th-order central stencil for `f^(k)`, `k <= 3`, step `h` along the
    /// real direction. Truncation error `O(h^4 · f^(k+4))`, roundoff
    /// `O(ε / h^k)`.
    pub fn central<F: Fn(C64) -> C64>(f: F, z0: C64, k: usize, h: f64) -> C64 {
        let at = |j: f64| f(z0 + C64::new(j * h, 0.0));
        match k {
            0 => at(0.0),
            1 => (-at(2.0) + at(1.0) * 8.0 - at(-1.0) * 8.0 + at(-2.0)) / (12.0 * h),
            2 => {
                (-at(2.0) + at(1.0) * 16.0 - at(0.0) * 30.0 + at(-1.0) * 16.0 - at(-2.0))
                    / (12.0 * h * h)
            }
            3 => {
                (-at(3.0) + at(2.0) * 8.0 - at(1.0) * 13.0 + at(-1.0) * 13.0 - at(-2.0) * 8.0
                    + at(-3.0))
                    / (8.0 * h * h * h)
            }
            _ => panic!("stencils provided for k <= 3 only"),
        }
    }

    /// Max |f| over the widest stencil, for error-model scaling.
    pub fn stencil_scale<F: Fn(C64) -> C64>(f: F, z0: C64, h: f64) -> f64 {
        (-3..=3)
            .map(|j| f(z0 + C64::new(j as f64 * h, 0.0)).norm())
            .fold(0.0, f64::max)
    }
}

pub mod quadrature {
    //! Midpoint-rule oracle for boundary integrals with log singularities.

    /// `∫_0^{2π} g(θ) dθ` by the midpoint rule with `n` panels. Integrable
    /// log singularities converge slowly but surely; use large `n`.
    pub fn midpoint_circle<G: Fn(f64) -> f64>(g: G, n: usize) -> f64 {
        let h = core::f64::consts::TAU / n as f64;
        (0..n).map(|i| g((i as f64 + 0.5) * h)).sum::<f64>() * h
    }
}
