//! Symbolic algebra of inner functions with finite data.
//!
//! An [`InnerSpec`] is a Blaschke zero multiset (finitely many zeros with
//! multiplicities) together with a finite atomic singular measure on the
//! circle. That is exactly the data needed for the divisibility algebra:
//! one inner function divides another iff the quotient is again inner, which
//! for this class means zero-multiset containment plus atomwise mass
//! domination.
//!
//! Zero and atom positions compare exactly (after canonical ordering), so
//! divisibility is decidable; merging of nearly-equal zeros is the caller's
//! business.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expr::{reduce_angle_t, unit_point, FuncExpr};
use crate::C64;

/// A Blaschke product with finitely many zeros times a singular inner
/// function with finitely many atoms.
///
/// Canonical form: zeros sorted by `(|a|, arg a)` with exact duplicates
/// merged; atoms sorted by angle with exact duplicates merged. `PartialEq`
/// on the canonical form is semantic equality.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerSpec {
    zeros: Vec<(C64, u32)>,
    /// `(angle / π, mass)`, angle in `(-1, 1]`
    atoms: Vec<(f64, f64)>,
}

impl InnerSpec {
    /// Build and canonicalize. Zeros need `|a| < 1` and multiplicity >= 1;
    /// atoms need positive mass.
    pub fn new(zeros: Vec<(C64, u32)>, atoms: Vec<(f64, f64)>) -> Result<InnerSpec> {
        for (a, mult) in &zeros {
            if a.norm() >= 1.0 {
                return Err(Error::InvalidParam(alloc::format!(
                    "blaschke zero must satisfy |a| < 1, got |a| = {}",
                    a.norm()
                )));
            }
            if *mult == 0 {
                return Err(Error::InvalidParam("zero multiplicity must be >= 1".into()));
            }
        }
        for (t, mass) in &atoms {
            if !t.is_finite() || !(*mass > 0.0) {
                return Err(Error::InvalidParam(
                    "atom needs finite angle and mass > 0".into(),
                ));
            }
        }

        let mut zeros = zeros;
        zeros.sort_by(|x, y| {
            (x.0.norm(), x.0.arg())
                .partial_cmp(&(y.0.norm(), y.0.arg()))
                .expect("finite")
        });
        let mut merged_zeros: Vec<(C64, u32)> = Vec::with_capacity(zeros.len());
        for (a, m) in zeros {
            match merged_zeros.last_mut() {
                Some((prev, pm)) if *prev == a => *pm += m,
                _ => merged_zeros.push((a, m)),
            }
        }

        let mut atoms: Vec<(f64, f64)> = atoms
            .into_iter()
            .map(|(t, m)| (reduce_angle_t(t), m))
            .collect();
        atoms.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
        let mut merged_atoms: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (t, m) in atoms {
            match merged_atoms.last_mut() {
                Some((pt, pm)) if *pt == t => *pm += m,
                _ => merged_atoms.push((t, m)),
            }
        }

        Ok(InnerSpec {
            zeros: merged_zeros,
            atoms: merged_atoms,
        })
    }

    pub fn empty() -> InnerSpec {
        InnerSpec {
            zeros: Vec::new(),
            atoms: Vec::new(),
        }
    }

    /// The truncated dyadic Blaschke product: zeros at `1 - 2^{-j}`,
    /// `j = 1..=terms`, on the positive real axis.
    pub fn dyadic_blaschke(terms: u32) -> InnerSpec {
        let zeros = (1..=terms)
            .map(|j| (C64::new(1.0 - libm::exp2(-f64::from(j)), 0.0), 1))
            .collect();
        InnerSpec {
            zeros,
            atoms: Vec::new(),
        }
    }

    pub fn zeros(&self) -> &[(C64, u32)] {
        &self.zeros
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty() && self.atoms.is_empty()
    }

    /// Total Blaschke degree (sum of multiplicities).
    pub fn degree(&self) -> u32 {
        self.zeros.iter().map(|(_, m)| m).sum()
    }

    /// Evaluate at a point strictly inside the disk.
    ///
    /// Blaschke factors carry the standard normalization `(ā/|a|)(a-z)/(1-āz)`
    /// (plain `z` for a zero at the origin); the singular part contributes
    /// `exp(-Σ mass·(ζ+z)/(ζ-z))`. The result has modulus `< 1`.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisk { z });
        }
        let mut out = C64::new(1.0, 0.0);
        for (a, mult) in &self.zeros {
            let factor = if a.norm() == 0.0 {
                z
            } else {
                (a.conj() / a.norm()) * (a - z) / (C64::new(1.0, 0.0) - a.conj() * z)
            };
            for _ in 0..*mult {
                out *= factor;
            }
        }
        let mut exponent = C64::new(0.0, 0.0);
        for (t, mass) in &self.atoms {
            let zeta: C64 = unit_point::<f64>(*t);
            exponent -= (zeta + z) / (zeta - z) * *mass;
        }
        if !self.atoms.is_empty() {
            out *= exponent.exp();
        }
        Ok(out)
    }

    /// Whether `self` divides `other` (the quotient is again inner): every
    /// zero appears in `other` with at least the multiplicity, every atom has
    /// a matching base point in `other` with at least the mass.
    pub fn divides(&self, other: &InnerSpec) -> bool {
        for (a, m) in &self.zeros {
            let found = other
                .zeros
                .iter()
                .find(|(b, _)| b == a)
                .map(|(_, bm)| *bm >= *m)
                .unwrap_or(false);
            if !found {
                return false;
            }
        }
        for (t, mass) in &self.atoms {
            let found = other
                .atoms
                .iter()
                .find(|(s, _)| s == t)
                .map(|(_, om)| *om >= *mass)
                .unwrap_or(false);
            if !found {
                return false;
            }
        }
        true
    }

    /// Remove the Blaschke zeros of multiplicity `<= n`; survivors keep
    /// their multiplicities and the singular part is untouched.
    pub fn truncate_deep(&self, n: u32) -> InnerSpec {
        InnerSpec {
            zeros: self
                .zeros
                .iter()
                .filter(|(_, m)| *m > n)
                .copied()
                .collect(),
            atoms: self.atoms.clone(),
        }
    }

    /// The dominating inner function built from a Wronskian's inner data:
    /// every zero multiplicity `m_l` becomes `m_l + n`, atoms unchanged.
    /// Deep-truncated inner factors of combinations divide this.
    pub fn raise_multiplicities(&self, n: u32) -> InnerSpec {
        InnerSpec {
            zeros: self.zeros.iter().map(|(a, m)| (*a, m + n)).collect(),
            atoms: self.atoms.clone(),
        }
    }

    /// `self` as the inner data of a `k`-th power: multiplicities and masses
    /// scale by `k`.
    pub fn pow(&self, k: u32) -> InnerSpec {
        if k == 0 {
            return InnerSpec::empty();
        }
        InnerSpec {
            zeros: self.zeros.iter().map(|(a, m)| (*a, m * k)).collect(),
            atoms: self
                .atoms
                .iter()
                .map(|(t, m)| (*t, m * f64::from(k)))
                .collect(),
        }
    }

    /// The same function as an expression tree (jets, level sets, decay fits
    /// all consume expressions).
    pub fn to_func_expr(&self) -> FuncExpr {
        let mut factors: Vec<FuncExpr> = Vec::new();
        for (a, mult) in &self.zeros {
            let base = if a.norm() == 0.0 {
                FuncExpr::monomial(1)
            } else {
                FuncExpr::scale(
                    FuncExpr::blaschke_factor(*a).expect("|a| < 1 by invariant"),
                    a.conj() / a.norm(),
                )
            };
            factors.push(FuncExpr::power(base, *mult));
        }
        for (t, mass) in &self.atoms {
            factors.push(FuncExpr::singular_atom(*t, *mass).expect("mass > 0 by invariant"));
        }
        if factors.is_empty() {
            FuncExpr::constant(C64::new(1.0, 0.0))
        } else {
            FuncExpr::product(factors)
        }
    }
}

/// Upper bound on the truncation error `|B(z) - B_N(z)|` of the dyadic
/// Blaschke product (zeros `1 - 2^{-j}`) after `n_terms` factors, valid for
/// `|z| <= r_cap < 1`:
/// each missing factor satisfies `|1 - b_a(z)| <= 2(1-|a|)(1+|z|)/(1-|z|)`,
/// and the tail of `Σ 2^{-j}` is `2^{-N}` exactly.
pub fn blaschke_tail_bound(n_terms: u32, z: C64, r_cap: f64) -> Result<f64> {
    if !(r_cap < 1.0 && r_cap > 0.0) {
        return Err(Error::InvalidParam("r_cap must be in (0, 1)".into()));
    }
    let r = z.norm();
    if r > r_cap {
        return Err(Error::InvalidParam(alloc::format!(
            "|z| = {r} exceeds the cap {r_cap}"
        )));
    }
    Ok(2.0 * (1.0 + r) / (1.0 - r) * libm::exp2(-f64::from(n_terms)))
}
