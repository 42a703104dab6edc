//! Scalar abstraction for the two numeric modes.
//!
//! Jet evaluation and the Wronskian identity checks are generic over [`Real`]
//! so that the same code runs in plain `f64` and, when determinants of
//! near-dependent families get ill-conditioned, in the software double-double
//! scalar [`Dd`] (roughly 31 significant digits). Detection thresholds and
//! all geometry stay in `f64`.

use core::ops::Neg;

use num_complex::Complex;
use num_traits::{Float, Num, One, Zero};

use crate::C64;

/// Real scalar usable for jet arithmetic. Only the operations the evaluation
/// paths actually need.
pub trait Real:
    Num + Copy + Neg<Output = Self> + PartialOrd + core::fmt::Debug + 'static
{
    /// Machine epsilon of the format.
    const EPS: f64;

    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Real for f64 {
    const EPS: f64 = f64::EPSILON;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn abs(self) -> Self {
        Float::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
    #[inline]
    fn exp(self) -> Self {
        Float::exp(self)
    }
    #[inline]
    fn sin(self) -> Self {
        Float::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        Float::cos(self)
    }
}

/// Lift an `f64` complex into the scalar `R`.
#[inline]
pub fn c_from<R: Real>(c: C64) -> Complex<R> {
    Complex::new(R::from_f64(c.re), R::from_f64(c.im))
}

/// Round a generic complex back to `f64`.
#[inline]
pub fn c_to_f64<R: Real>(c: Complex<R>) -> C64 {
    C64::new(c.re.to_f64(), c.im.to_f64())
}

/// `exp(z)` for a generic complex scalar.
#[inline]
pub fn c_exp<R: Real>(z: Complex<R>) -> Complex<R> {
    let e = z.re.exp();
    Complex::new(e * z.im.cos(), e * z.im.sin())
}

/// `|z|` for a generic complex scalar. No overflow protection; the toolkit
/// works at unit scale.
#[inline]
pub fn c_abs<R: Real>(z: Complex<R>) -> R {
    (z.re * z.re + z.im * z.im).sqrt()
}

// ---------------------------------------------------------------------------
// Double-double arithmetic
// ---------------------------------------------------------------------------

/// An unevaluated sum `hi + lo` of two doubles with `|lo| <= ulp(hi)/2`,
/// giving ~106 bits of significand. The usual error-free transformations
/// (two-sum, fma-based two-prod) from the QD library.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = libm::fma(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    // ln 2 and the circle constants to double-double accuracy.
    const LN2: Dd = Dd {
        hi: core::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    const TWO_PI: Dd = Dd {
        hi: core::f64::consts::TAU,
        lo: 2.4492935982947064e-16,
    };
    const HALF_PI: Dd = Dd {
        hi: core::f64::consts::FRAC_PI_2,
        lo: 6.123233995736766e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn mul_pow2(self, k: i32) -> Dd {
        Dd {
            hi: libm::scalbn(self.hi, k),
            lo: libm::scalbn(self.lo, k),
        }
    }

    fn round(self) -> f64 {
        libm::round(self.hi)
    }

    fn exp_impl(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -709.0 {
            return Dd::ZERO;
        }
        // exp(x) = 2^k exp(r), r = x - k ln2, |r| <= ln2/2
        let k = libm::round(self.hi / core::f64::consts::LN_2);
        let r = self - Dd::LN2 * Dd::from_f64(k);
        let mut sum = Dd::ONE + r;
        let mut term = r;
        for i in 2..64u32 {
            term = term * r / Dd::from_f64(f64::from(i));
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        sum.mul_pow2(k as i32)
    }

    fn sin_taylor(t: Dd) -> Dd {
        let t2 = t * t;
        let mut sum = t;
        let mut term = t;
        let mut i = 1.0f64;
        loop {
            term = term * t2 / Dd::from_f64(-((i + 1.0) * (i + 2.0)));
            sum = sum + term;
            i += 2.0;
            if term.hi.abs() < 1e-35 * sum.hi.abs().max(1e-300) || i > 60.0 {
                break;
            }
        }
        sum
    }

    fn cos_taylor(t: Dd) -> Dd {
        let t2 = t * t;
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        let mut i = 0.0f64;
        loop {
            term = term * t2 / Dd::from_f64(-((i + 1.0) * (i + 2.0)));
            sum = sum + term;
            i += 2.0;
            if term.hi.abs() < 1e-35 * sum.hi.abs().max(1e-300) || i > 60.0 {
                break;
            }
        }
        sum
    }

    /// (sin, cos) with argument reduction mod 2π then mod π/2.
    fn sin_cos(self) -> (Dd, Dd) {
        let z = self - Dd::TWO_PI * Dd::from_f64((self / Dd::TWO_PI).round());
        let q = (z / Dd::HALF_PI).round();
        let t = z - Dd::HALF_PI * Dd::from_f64(q);
        let s = Dd::sin_taylor(t);
        let c = Dd::cos_taylor(t);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl core::ops::Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, rhs.hi);
        let (s2, e2) = two_sum(self.lo, rhs.lo);
        let (s1, e1) = quick_two_sum(s1, e1 + s2);
        let (hi, lo) = quick_two_sum(s1, e1 + e2);
        Dd { hi, lo }
    }
}

impl core::ops::Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl core::ops::Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl core::ops::Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl core::ops::Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl core::ops::Rem for Dd {
    type Output = Dd;
    fn rem(self, rhs: Dd) -> Dd {
        // Bound required by `Num`; not used by the evaluation paths.
        let q = libm::trunc((self / rhs).hi);
        self - rhs * Dd::from_f64(q)
    }
}

impl Zero for Dd {
    #[inline]
    fn zero() -> Dd {
        Dd::ZERO
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Dd {
    #[inline]
    fn one() -> Dd {
        Dd::ONE
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> core::result::Result<Dd, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Dd::from_f64)
    }
}

impl Real for Dd {
    const EPS: f64 = 4.93e-32; // 2^-104

    #[inline]
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
    #[inline]
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
    fn sqrt(self) -> Self {
        if self.is_zero() {
            return Dd::ZERO;
        }
        // Karp's trick: f64 seed, one dd correction, then one more for margin.
        let y0 = Dd::from_f64(libm::sqrt(self.hi));
        let y1 = y0 + (self - y0 * y0) / (y0 + y0);
        y1 + (self - y1 * y1) / (y1 + y1)
    }
    #[inline]
    fn exp(self) -> Self {
        self.exp_impl()
    }
    #[inline]
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    #[inline]
    fn cos(self) -> Self {
        self.sin_cos().1
    }
}
