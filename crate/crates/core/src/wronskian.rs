//! Wronskian matrices, the deep-zero coefficient system, and determinant
//! identities.
//!
//! For functions `f_0, ..., f_n` the Wronskian matrix at `z` has entry
//! `(k, j) = f_j^(k)(z)` (row = derivative order, column = function). A point
//! admits a nontrivial combination `g = Σ λ_j f_j` with `g, g', ..., g^(n)`
//! all vanishing exactly when this matrix is singular, i.e. when the
//! Wronskian determinant vanishes. Floating-point Wronskians never vanish
//! exactly, so rank deficiency is detected through the smallest singular
//! value relative to the largest.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::expr::{AnalyticFn, Domain, FuncExpr};
use crate::jet::Jet;
use crate::numeric::Real;
use crate::C64;

/// Largest supported family size `n + 1`.
pub const FAMILY_CAP: usize = 13;

/// Default relative smallest-singular-value threshold for rank deficiency.
pub const DEFAULT_NULL_TOL: f64 = 1e-8;

/// The `(n+1) × (n+1)` matrix of derivatives at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct WronskianMatrix {
    pub basepoint: C64,
    /// `entries[k][j] = f_j^(k)(basepoint)`
    pub entries: Vec<Vec<C64>>,
}

impl WronskianMatrix {
    /// Family size minus one.
    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    /// Largest entry magnitude; the natural residual scale.
    pub fn entry_scale(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter().map(|e| e.norm()))
            .fold(0.0, f64::max)
    }

    /// Hadamard bound `∏_j ||col_j||₂` on `|det|`.
    pub fn hadamard_bound(&self) -> f64 {
        let m = self.entries.len();
        let mut bound = 1.0;
        for j in 0..m {
            let norm: f64 = self.entries.iter().map(|row| row[j].norm_sqr()).sum();
            bound *= libm::sqrt(norm);
        }
        bound
    }
}

/// A nontrivial coefficient vector realizing a deep zero, together with the
/// residual derivatives of the combination.
#[derive(Clone, Debug)]
pub struct DeepZeroSolution {
    pub point: C64,
    /// Unit max-modulus, first maximal entry real positive.
    pub lambda: Vec<C64>,
    /// `g^(0)(point) .. g^(n)(point)` for `g = Σ λ_j f_j`.
    pub residuals: Vec<C64>,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

/// Outcome of re-checking a candidate deep zero.
#[derive(Clone, Debug)]
pub struct DeepZeroCheck {
    pub pass: bool,
    /// `max_k |Σ_j λ_j f_j^(k)(z)|`
    pub residual_norm: f64,
    /// Largest matrix entry magnitude.
    pub scale: f64,
}

fn check_family(funcs: &[FuncExpr]) -> Result<()> {
    if funcs.is_empty() {
        return Err(Error::InvalidParam("empty family".into()));
    }
    if funcs.len() > FAMILY_CAP {
        return Err(Error::FamilyTooLarge {
            got: funcs.len(),
            cap: FAMILY_CAP,
        });
    }
    Ok(())
}

/// Derivative matrix in the scalar `R`.
pub fn wronskian_matrix_in<R: Real>(
    funcs: &[FuncExpr],
    z: Complex<R>,
) -> Result<Vec<Vec<Complex<R>>>> {
    check_family(funcs)?;
    let n = funcs.len() - 1;
    let jets: Vec<Jet<R>> = funcs
        .iter()
        .map(|f| f.eval_jet_in(z, n))
        .collect::<Result<_>>()?;
    Ok((0..=n)
        .map(|k| jets.iter().map(|j| j.deriv(k)).collect())
        .collect())
}

/// Derivative matrix at `z`, in `f64`.
pub fn wronskian_matrix(funcs: &[FuncExpr], z: C64) -> Result<WronskianMatrix> {
    Ok(WronskianMatrix {
        basepoint: z,
        entries: wronskian_matrix_in::<f64>(funcs, z)?,
    })
}

/// Determinant by partially pivoted elimination. Fine for the small sizes
/// here; stability over speed.
pub fn det_in<R: Real>(matrix: &[Vec<Complex<R>>]) -> Complex<R> {
    let m = matrix.len();
    let mut a: Vec<Vec<Complex<R>>> = matrix.to_vec();
    let zero = Complex::new(R::zero(), R::zero());
    let mut det = Complex::new(R::one(), R::zero());
    for col in 0..m {
        let mut piv = col;
        let mut best = a[col][col].norm_sqr();
        for (r, row) in a.iter().enumerate().skip(col + 1) {
            let v = row[col].norm_sqr();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == R::zero() {
            return zero;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pivot_row = a[col].clone();
        let p = pivot_row[col];
        det = det * p;
        let pinv = Complex::new(R::one(), R::zero()) / p;
        for row in a.iter_mut().skip(col + 1) {
            let factor = row[col] * pinv;
            if factor == zero {
                continue;
            }
            for c in col..m {
                row[c] = row[c] - factor * pivot_row[c];
            }
        }
    }
    det
}

/// `W(f_0, ..., f_n)(z)` in the scalar `R`.
pub fn wronskian_value_in<R: Real>(funcs: &[FuncExpr], z: Complex<R>) -> Result<Complex<R>> {
    Ok(det_in(&wronskian_matrix_in(funcs, z)?))
}

/// `W(f_0, ..., f_n)(z)`.
pub fn wronskian_value(funcs: &[FuncExpr], z: C64) -> Result<C64> {
    wronskian_value_in::<f64>(funcs, z)
}

// ---------------------------------------------------------------------------
// Small complex SVD (one-sided Jacobi)
// ---------------------------------------------------------------------------

/// Singular values and right singular vectors of a small square complex
/// matrix. One-sided Jacobi on columns: high relative accuracy for the tiny
/// singular values that rank-deficiency detection lives on.
pub struct SmallSvd {
    /// Unsorted singular values, aligned with the columns of `v`.
    pub sigma: Vec<f64>,
    /// Right singular vectors: `v[j][i]` is component `i` of vector `j`.
    pub v: Vec<Vec<C64>>,
}

impl SmallSvd {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.iter().copied().fold(0.0, f64::max)
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn min_index(&self) -> usize {
        let mut idx = 0;
        for (i, s) in self.sigma.iter().enumerate() {
            if *s < self.sigma[idx] {
                idx = i;
            }
        }
        idx
    }
}

/// One-sided Jacobi SVD. `a[i][j]`: row `i`, column `j`.
pub fn svd_small(a: &[Vec<C64>]) -> SmallSvd {
    let m = a.len();
    // work on columns
    let mut cols: Vec<Vec<C64>> = (0..m).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
    let mut v: Vec<Vec<C64>> = (0..m)
        .map(|j| {
            (0..m)
                .map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();

    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..m {
            for q in (p + 1)..m {
                let alpha: f64 = cols[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|x| x.norm_sqr()).sum();
                let gamma: C64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-30 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                // phase out the Gram off-diagonal, then a real Jacobi rotation
                let phase = gamma / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..m {
                    let up = cols[p][i];
                    let uq = cols[q][i] * phase.conj();
                    cols[p][i] = up * c - uq * s;
                    cols[q][i] = (up * s + uq * c) * phase;
                }
                for i in 0..m {
                    let vp = v[p][i];
                    let vq = v[q][i] * phase.conj();
                    v[p][i] = vp * c - vq * s;
                    v[q][i] = (vp * s + vq * c) * phase;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = cols
        .iter()
        .map(|col| libm::sqrt(col.iter().map(|x| x.norm_sqr()).sum::<f64>()))
        .collect();
    SmallSvd { sigma, v }
}

// ---------------------------------------------------------------------------
// Deep-zero system
// ---------------------------------------------------------------------------

/// Solve the deep-zero coefficient system at `z`.
///
/// Returns a unit-normalized nullspace vector when the derivative matrix is
/// rank deficient at relative tolerance `tol` (smallest singular value below
/// `tol ·` largest), `None` otherwise. The degenerate all-zero matrix counts
/// as rank deficient, with the first basis vector as representative.
pub fn deep_zero_coefficients(
    funcs: &[FuncExpr],
    z: C64,
    tol: f64,
) -> Result<Option<DeepZeroSolution>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParam("tolerance must be positive".into()));
    }
    let matrix = wronskian_matrix(funcs, z)?;
    let m = matrix.entries.len();
    let svd = svd_small(&matrix.entries);
    let smax = svd.sigma_max();
    let smin = svd.sigma_min();

    let lambda: Vec<C64> = if smax == 0.0 {
        let mut e = alloc::vec![C64::new(0.0, 0.0); m];
        e[0] = C64::new(1.0, 0.0);
        e
    } else if smin < tol * smax {
        normalize_lambda(&svd.v[svd.min_index()])?
    } else {
        return Ok(None);
    };

    let residuals = matrix
        .entries
        .iter()
        .map(|row| row.iter().zip(&lambda).map(|(a, l)| a * l).sum())
        .collect();

    Ok(Some(DeepZeroSolution {
        point: z,
        lambda,
        residuals,
        sigma_min: smin,
        sigma_max: smax,
    }))
}

/// Scale so the largest-modulus entry (first of the maximal ones) becomes
/// exactly `1`: a deterministic representative of a projective object.
fn normalize_lambda(v: &[C64]) -> Result<Vec<C64>> {
    let mut jstar = 0;
    let mut best = -1.0;
    for (j, x) in v.iter().enumerate() {
        let n = x.norm();
        if n > best {
            best = n;
            jstar = j;
        }
    }
    if best == 0.0 {
        return Err(Error::AllZeroLambda);
    }
    let pivot = v[jstar];
    Ok(v.iter().map(|x| x / pivot).collect())
}

/// Check whether `λ` realizes an `n`-deep zero of `Σ λ_j f_j` at `z`, at the
/// given relative tolerance. The residual scale is the largest matrix entry.
pub fn verify_deep_zero(
    funcs: &[FuncExpr],
    lambda: &[C64],
    z: C64,
    tol: f64,
) -> Result<DeepZeroCheck> {
    if lambda.len() != funcs.len() {
        return Err(Error::InvalidParam(
            "lambda length must match family size".into(),
        ));
    }
    if lambda.iter().all(|l| l.norm() == 0.0) {
        return Err(Error::AllZeroLambda);
    }
    let matrix = wronskian_matrix(funcs, z)?;
    let scale = matrix.entry_scale();
    let residual_norm = matrix
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .zip(lambda)
                .map(|(a, l)| a * l)
                .sum::<C64>()
                .norm()
        })
        .fold(0.0, f64::max);
    Ok(DeepZeroCheck {
        pass: residual_norm <= tol * scale,
        residual_norm,
        scale,
    })
}

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

/// The combination `Σ λ_j f_j` as an expression.
pub fn combination(funcs: &[FuncExpr], lambda: &[C64]) -> FuncExpr {
    FuncExpr::sum(
        funcs
            .iter()
            .zip(lambda)
            .map(|(f, l)| FuncExpr::scale(f.clone(), *l))
            .collect(),
    )
}

/// Relative residual of the column-replacement identity
/// `W(f_0,...,f_{k-1}, Σλ_j f_j, f_{k+1},...,f_n) = λ_k · W(f_0,...,f_n)`.
pub fn replacement_identity_check_in<R: Real>(
    funcs: &[FuncExpr],
    lambda: &[C64],
    k: usize,
    z: Complex<R>,
) -> Result<f64> {
    check_family(funcs)?;
    if lambda.len() != funcs.len() || k >= funcs.len() {
        return Err(Error::InvalidParam(
            "lambda length and index must match the family".into(),
        ));
    }
    if lambda[k].norm() == 0.0 {
        return Err(Error::LambdaZeroAt { k });
    }
    let g = combination(funcs, lambda);
    let mut replaced = funcs.to_vec();
    replaced[k] = g;

    let w = wronskian_value_in::<R>(funcs, z)?;
    let wk = wronskian_value_in::<R>(&replaced, z)?;
    let lk = crate::numeric::c_from::<R>(lambda[k]);
    let target = lk * w;
    let num = crate::numeric::c_abs(wk - target).to_f64();
    let den = crate::numeric::c_abs(target).to_f64() + R::EPS;
    Ok(num / den)
}

/// `f64` entry point for [`replacement_identity_check_in`].
pub fn replacement_identity_check(
    funcs: &[FuncExpr],
    lambda: &[C64],
    k: usize,
    z: C64,
) -> Result<f64> {
    replacement_identity_check_in::<f64>(funcs, lambda, k, z)
}

/// Relative residual between the replaced-column Wronskian `W_k` and its
/// cofactor expansion `Σ_l g^(l)(z) Δ_l(z)` along column `k`. The residual
/// is measured against the magnitude the expansion accumulates, so
/// identically-cancelling cases (`g` in the span of the family) stay near
/// zero instead of degenerating to 0/ε.
pub fn cofactor_expansion_check_in<R: Real>(
    funcs: &[FuncExpr],
    g: &FuncExpr,
    k: usize,
    z: Complex<R>,
) -> Result<f64> {
    check_family(funcs)?;
    if k >= funcs.len() {
        return Err(Error::InvalidParam("column index out of range".into()));
    }
    let n = funcs.len() - 1;
    let base = wronskian_matrix_in::<R>(funcs, z)?;
    let gjet = g.eval_jet_in(z, n)?;

    // lhs: determinant with column k replaced by g's derivatives
    let mut replaced = base.clone();
    for (l, row) in replaced.iter_mut().enumerate() {
        row[k] = gjet.deriv(l);
    }
    let lhs = det_in(&replaced);

    // rhs: Σ_l g^(l) · (-1)^(l+k) · minor(l, k) of the original matrix
    let mut rhs = Complex::new(R::zero(), R::zero());
    let mut term_scale = 0.0f64;
    for l in 0..=n {
        let minor: Vec<Vec<Complex<R>>> = base
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != l)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != k)
                    .map(|(_, e)| *e)
                    .collect()
            })
            .collect();
        let mut cof = det_in(&minor);
        if (l + k) % 2 == 1 {
            cof = -cof;
        }
        let term = gjet.deriv(l) * cof;
        term_scale += crate::numeric::c_abs(term).to_f64();
        rhs = rhs + term;
    }

    let num = crate::numeric::c_abs(lhs - rhs).to_f64();
    let den = term_scale.max(crate::numeric::c_abs(lhs).to_f64()) + R::EPS;
    Ok(num / den)
}

/// `f64` entry point for [`cofactor_expansion_check_in`].
pub fn cofactor_expansion_check(funcs: &[FuncExpr], g: &FuncExpr, k: usize, z: C64) -> Result<f64> {
    cofactor_expansion_check_in::<f64>(funcs, g, k, z)
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

/// Families whose Wronskian has a closed form.
#[derive(Clone, Debug)]
pub enum ClosedFormFamily {
    /// `{z^{d_0}, ..., z^{d_n}}`, `d_0 < d_1 < ... < d_n`
    Monomials { degrees: Vec<u32> },
    /// `{e^{μ_0 z}, ..., e^{μ_n z}}`, pairwise distinct frequencies
    ExpSum { frequencies: Vec<C64> },
    /// `{1, f, f², ..., f^n}`
    Powers { base: FuncExpr, n: u32 },
    /// `{1, z/1!, ..., z^{n-1}/(n-1)!, f}`
    PrependPoly { f: FuncExpr, n: u32 },
}

impl ClosedFormFamily {
    /// The member expressions, in order.
    pub fn members(&self) -> Result<Vec<FuncExpr>> {
        match self {
            ClosedFormFamily::Monomials { degrees } => {
                if degrees.is_empty() {
                    return Err(Error::BadClosedFormFamily("no exponents".into()));
                }
                if degrees.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::BadClosedFormFamily(
                        "exponents must be strictly increasing".into(),
                    ));
                }
                Ok(degrees.iter().map(|&d| FuncExpr::monomial(d)).collect())
            }
            ClosedFormFamily::ExpSum { frequencies } => {
                if frequencies.is_empty() {
                    return Err(Error::BadClosedFormFamily("no frequencies".into()));
                }
                for i in 0..frequencies.len() {
                    for j in (i + 1)..frequencies.len() {
                        if frequencies[i] == frequencies[j] {
                            return Err(Error::BadClosedFormFamily("repeated frequency".into()));
                        }
                    }
                }
                Ok(frequencies
                    .iter()
                    .map(|&mu| FuncExpr::exp_atom(mu))
                    .collect())
            }
            ClosedFormFamily::Powers { base, n } => Ok((0..=*n)
                .map(|k| FuncExpr::power(base.clone(), k))
                .collect()),
            ClosedFormFamily::PrependPoly { f, n } => {
                if *n == 0 {
                    return Err(Error::BadClosedFormFamily(
                        "prepend-poly needs n >= 1".into(),
                    ));
                }
                let mut fam: Vec<FuncExpr> = Vec::with_capacity(*n as usize + 1);
                let mut inv_fact = 1.0f64;
                for k in 0..*n {
                    if k > 0 {
                        inv_fact /= f64::from(k);
                    }
                    fam.push(FuncExpr::scale(
                        FuncExpr::monomial(k),
                        C64::new(inv_fact, 0.0),
                    ));
                }
                fam.push(f.clone());
                Ok(fam)
            }
        }
    }

    /// Family size minus one.
    pub fn n(&self) -> usize {
        match self {
            ClosedFormFamily::Monomials { degrees } => degrees.len() - 1,
            ClosedFormFamily::ExpSum { frequencies } => frequencies.len() - 1,
            ClosedFormFamily::Powers { n, .. } => *n as usize,
            ClosedFormFamily::PrependPoly { n, .. } => *n as usize,
        }
    }
}

/// Closed form of the family's Wronskian, as an expression:
///
/// * monomials: `C · z^D` with `D = Σ d_j − n(n+1)/2` and
///   `C = ∏_{i<j} (d_j − d_i)`;
/// * exponential sums: `C · e^{(Σ μ_j) z}` with `C = ∏_{i<j} (μ_j − μ_i)`;
/// * powers of one function: `c_n · (f')^{n(n+1)/2}`, `c_n = ∏_{k=1}^n k!`;
/// * `{1, z/1!, ..., z^{n-1}/(n-1)!, f}`: plain `f^(n)`.
pub fn closed_form_wronskian(family: &ClosedFormFamily) -> Result<FuncExpr> {
    family.members()?; // validates parameters
    match family {
        ClosedFormFamily::Monomials { degrees } => {
            let n = degrees.len() - 1;
            let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
            let drop = (n * (n + 1) / 2) as u64;
            let big_d = (sum - drop) as u32;
            let mut c = 1.0f64;
            for i in 0..degrees.len() {
                for j in (i + 1)..degrees.len() {
                    c *= f64::from(degrees[j]) - f64::from(degrees[i]);
                }
            }
            Ok(FuncExpr::scale(FuncExpr::monomial(big_d), C64::new(c, 0.0)))
        }
        ClosedFormFamily::ExpSum { frequencies } => {
            let mu: C64 = frequencies.iter().sum();
            let mut c = C64::new(1.0, 0.0);
            for i in 0..frequencies.len() {
                for j in (i + 1)..frequencies.len() {
                    c *= frequencies[j] - frequencies[i];
                }
            }
            Ok(FuncExpr::scale(FuncExpr::exp_atom(mu), c))
        }
        ClosedFormFamily::Powers { base, n } => {
            let mut cn = 1.0f64;
            let mut fact = 1.0f64;
            for k in 1..=u64::from(*n) {
                fact *= k as f64;
                cn *= fact;
            }
            Ok(FuncExpr::scale(
                FuncExpr::power(base.differentiate(), n * (n + 1) / 2),
                C64::new(cn, 0.0),
            ))
        }
        ClosedFormFamily::PrependPoly { f, n } => Ok(f.differentiate_n(*n)),
    }
}

// ---------------------------------------------------------------------------
// The Wronskian as an analytic function of the point
// ---------------------------------------------------------------------------

/// `z ↦ W(f_0, ..., f_n)(z)` with jets of any order, for root localization.
///
/// The determinant of jet-valued entries is computed division-free by
/// expansion over column subsets, so vanishing leading values (the whole
/// point, near zeros of `W`) never poison a pivot.
pub struct WronskianFn<'a> {
    funcs: &'a [FuncExpr],
}

impl<'a> WronskianFn<'a> {
    pub fn new(funcs: &'a [FuncExpr]) -> Result<WronskianFn<'a>> {
        check_family(funcs)?;
        Ok(WronskianFn { funcs })
    }

    pub fn family(&self) -> &[FuncExpr] {
        self.funcs
    }
}

impl AnalyticFn for WronskianFn<'_> {
    fn jet_at(&self, z: C64, order: usize) -> Result<Jet> {
        let m = self.funcs.len();
        let n = m - 1;
        let jets: Vec<Jet> = self
            .funcs
            .iter()
            .map(|f| f.eval_jet(z, n + order))
            .collect::<Result<_>>()?;
        let entries: Vec<Vec<Jet>> = (0..m)
            .map(|k| {
                jets.iter()
                    .map(|j| {
                        j.derivative_jet(k)
                            .expect("order covers n")
                            .truncated(order)
                    })
                    .collect()
            })
            .collect();
        Ok(jet_det(&entries, z, order))
    }

    fn domain(&self) -> Domain {
        if self.funcs.iter().any(|f| f.domain() == Domain::UnitDisk) {
            Domain::UnitDisk
        } else {
            Domain::Entire
        }
    }
}

/// Division-free determinant of a matrix of jets: subset dynamic program over
/// columns, expanding rows top-down. `O(2^m · m)` jet multiplications.
fn jet_det(entries: &[Vec<Jet>], z: C64, order: usize) -> Jet {
    let m = entries.len();
    let full: u32 = (1u32 << m) - 1;
    let one = Jet::constant(z, C64::new(1.0, 0.0), order);
    let zero = Jet::constant(z, C64::new(0.0, 0.0), order);
    // table[mask] = det of rows (m - popcount(mask))..m over columns in mask
    let mut table: Vec<Option<Jet>> = alloc::vec![None; 1 << m];
    table[0] = Some(one);
    for mask in 1..=full {
        let size = mask.count_ones() as usize;
        let row = m - size;
        let mut acc = zero.clone();
        let mut sign_flip = false;
        for (j, row_entry) in entries[row].iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = mask & !(1 << j);
            let minor = table[sub as usize].as_ref().expect("filled in order");
            let term = row_entry.product(minor).expect("aligned jets");
            acc = if sign_flip {
                acc.add(&term.scale(C64::new(-1.0, 0.0))).expect("aligned")
            } else {
                acc.add(&term).expect("aligned")
            };
            sign_flip = !sign_flip;
        }
        table[mask as usize] = Some(acc);
    }
    table[full as usize].take().expect("full mask filled")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn fam_1_z_z2() -> Vec<FuncExpr> {
        alloc::vec![
            FuncExpr::monomial(0),
            FuncExpr::monomial(1),
            FuncExpr::monomial(2),
        ]
    }

    #[test]
    fn matrix_of_monomial_family() {
        let z = c(0.7, -0.2);
        let m = wronskian_matrix(&fam_1_z_z2(), z).unwrap();
        assert_eq!(m.entries[0], alloc::vec![c(1.0, 0.0), z, z * z]);
        assert_eq!(m.entries[1], alloc::vec![c(0.0, 0.0), c(1.0, 0.0), z * 2.0]);
        assert_eq!(
            m.entries[2],
            alloc::vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]
        );
    }

    #[test]
    fn matrix_of_one_and_z_squared_at_origin() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(2)];
        let m = wronskian_matrix(&fam, c(0.0, 0.0)).unwrap();
        assert_eq!(m.entries[0], alloc::vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(m.entries[1], alloc::vec![c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn matrix_of_exp_pair_at_origin() {
        let fam = alloc::vec![
            FuncExpr::exp_atom(c(0.0, 0.0)),
            FuncExpr::exp_atom(c(1.0, 0.0)),
        ];
        let m = wronskian_matrix(&fam, c(0.0, 0.0)).unwrap();
        assert_eq!(m.entries[0], alloc::vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(m.entries[1], alloc::vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn value_of_powers_family_is_constant_two() {
        // W(1, z, z²) = 1!·2! = 2 everywhere
        let w = wronskian_value(&fam_1_z_z2(), c(0.3, 0.1)).unwrap();
        assert!((w - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn value_of_one_z2_is_two_z() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(2)];
        let w = wronskian_value(&fam, c(0.5, 0.0)).unwrap();
        assert!((w - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn value_of_exp_pair_is_exp_z() {
        let fam = alloc::vec![
            FuncExpr::exp_atom(c(0.0, 0.0)),
            FuncExpr::exp_atom(c(1.0, 0.0)),
        ];
        let w = wronskian_value(&fam, c(0.0, 0.0)).unwrap();
        assert!((w - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn deep_zero_found_for_one_z2_at_origin() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(2)];
        let sol = deep_zero_coefficients(&fam, c(0.0, 0.0), 1e-8)
            .unwrap()
            .expect("singular matrix");
        assert!((sol.lambda[0]).norm() < 1e-12);
        assert!((sol.lambda[1] - c(1.0, 0.0)).norm() < 1e-12);
        for r in &sol.residuals {
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn no_deep_zero_for_nonsingular_family() {
        for z in [c(0.0, 0.0), c(0.4, 0.4), c(-2.0, 1.0)] {
            assert!(deep_zero_coefficients(&fam_1_z_z2(), z, 1e-8)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn deep_zero_of_one_z3_at_origin() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(3)];
        let sol = deep_zero_coefficients(&fam, c(0.0, 0.0), 1e-8)
            .unwrap()
            .expect("z³ vanishes to order 3 >= 2");
        assert!((sol.lambda[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn verify_accepts_and_rejects() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(2)];
        let ok = verify_deep_zero(&fam, &[c(0.0, 0.0), c(1.0, 0.0)], c(0.0, 0.0), 1e-12).unwrap();
        assert!(ok.pass);
        assert_eq!(ok.residual_norm, 0.0);

        let bad = verify_deep_zero(&fam, &[c(1.0, 0.0), c(0.0, 0.0)], c(0.0, 0.0), 1e-12).unwrap();
        assert!(!bad.pass);
        assert!((bad.residual_norm - 1.0).abs() < 1e-15);

        assert!(matches!(
            verify_deep_zero(&fam, &[c(0.0, 0.0), c(0.0, 0.0)], c(0.0, 0.0), 1e-12),
            Err(Error::AllZeroLambda)
        ));
    }

    #[test]
    fn verify_never_passes_for_powers_family() {
        // W(1, z, z²) ≡ 2, so no λ can kill all derivatives anywhere
        let lambdas = [
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.3, 0.1), c(-1.0, 0.0), c(0.5, 0.5)],
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        for z in [c(0.0, 0.0), c(0.5, -0.3)] {
            for l in &lambdas {
                assert!(!verify_deep_zero(&fam_1_z_z2(), l, z, 1e-9).unwrap().pass);
            }
        }
    }

    #[test]
    fn replacement_identity_exact_for_affine_family() {
        // {1, z}, λ = (2, 3): both W_k and λ_1·W equal 3
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(1)];
        let lam = [c(2.0, 0.0), c(3.0, 0.0)];
        for z in [c(0.0, 0.0), c(1.3, -0.4)] {
            let r = replacement_identity_check(&fam, &lam, 1, z).unwrap();
            assert!(r < 1e-15);
        }
        assert!(matches!(
            replacement_identity_check(&fam, &[c(1.0, 0.0), c(0.0, 0.0)], 1, c(0.0, 0.0)),
            Err(Error::LambdaZeroAt { k: 1 })
        ));
    }

    #[test]
    fn cofactor_expansion_in_closed_form_case() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(1)];
        let g = FuncExpr::monomial(2);
        let r = cofactor_expansion_check(&fam, &g, 1, c(0.4, 0.0)).unwrap();
        assert!(r <= 1e-12);

        // g ≡ 0: both sides vanish, residual 0 by the guarded denominator
        let zero_g = FuncExpr::constant(c(0.0, 0.0));
        let r0 = cofactor_expansion_check(&fam, &zero_g, 0, c(0.2, 0.7)).unwrap();
        assert_eq!(r0, 0.0);
    }

    #[test]
    fn closed_form_monomials_basic_cases() {
        // (0,1,2): C = (1)(2)(1) = 2, D = 3 - 3 = 0
        let f = closed_form_wronskian(&ClosedFormFamily::Monomials {
            degrees: alloc::vec![0, 1, 2],
        })
        .unwrap();
        let v = f.eval(c(0.37, 0.11)).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-14);

        // (0,3): W = 3z²
        let f = closed_form_wronskian(&ClosedFormFamily::Monomials {
            degrees: alloc::vec![0, 3],
        })
        .unwrap();
        let z = c(0.5, -0.2);
        assert!((f.eval(z).unwrap() - z * z * 3.0).norm() < 1e-14);
    }

    #[test]
    fn closed_form_expsum_basic_case() {
        // (0, 1): W = e^z
        let f = closed_form_wronskian(&ClosedFormFamily::ExpSum {
            frequencies: alloc::vec![c(0.0, 0.0), c(1.0, 0.0)],
        })
        .unwrap();
        let z = c(0.3, 0.4);
        assert!((f.eval(z).unwrap() - z.exp()).norm() < 1e-14);
    }

    #[test]
    fn closed_form_rejects_bad_parameters() {
        assert!(matches!(
            closed_form_wronskian(&ClosedFormFamily::Monomials {
                degrees: alloc::vec![2, 2]
            }),
            Err(Error::BadClosedFormFamily(_))
        ));
        assert!(matches!(
            closed_form_wronskian(&ClosedFormFamily::ExpSum {
                frequencies: alloc::vec![c(1.0, 0.0), c(1.0, 0.0)]
            }),
            Err(Error::BadClosedFormFamily(_))
        ));
    }

    #[test]
    fn svd_reconstructs_gram_and_det() {
        let a = alloc::vec![
            alloc::vec![c(1.0, 0.5), c(0.0, -1.0), c(2.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(3.0, 1.0), c(1.0, 1.0)],
            alloc::vec![c(-1.0, 2.0), c(0.5, 0.0), c(0.0, 0.7)],
        ];
        let svd = svd_small(&a);
        let det = det_in(&a).norm();
        let prod: f64 = svd.sigma.iter().product();
        assert!((det - prod).abs() < 1e-10 * det.max(1.0));
        let frob: f64 = a
            .iter()
            .flat_map(|r| r.iter().map(|x| x.norm_sqr()))
            .sum::<f64>();
        let sq: f64 = svd.sigma.iter().map(|s| s * s).sum();
        assert!((frob - sq).abs() < 1e-10 * frob);
    }

    #[test]
    fn svd_nullspace_of_rank_deficient_matrix() {
        // rows (1, 0) and (0, 0): nullspace is the second basis vector
        let a = alloc::vec![
            alloc::vec![c(1.0, 0.0), c(0.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(0.0, 0.0)],
        ];
        let svd = svd_small(&a);
        assert!(svd.sigma_min() < 1e-15);
        let v = &svd.v[svd.min_index()];
        assert!(v[0].norm() < 1e-15);
        assert!((v[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wronskian_fn_jets_match_value_and_derivative() {
        // W(1, z²) = 2z: jet at 0.5 of order 2 should be (1, 2, 0)
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(2)];
        let wf = WronskianFn::new(&fam).unwrap();
        let j = wf.jet_at(c(0.5, 0.0), 2).unwrap();
        assert!((j.deriv(0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((j.deriv(1) - c(2.0, 0.0)).norm() < 1e-14);
        assert!(j.deriv(2).norm() < 1e-14);
    }

    #[test]
    fn wronskian_fn_matches_lu_value_on_bigger_family() {
        let fam = alloc::vec![
            FuncExpr::poly_re(&[1.0, 2.0, -1.0]),
            FuncExpr::exp_atom(c(0.5, -0.5)),
            FuncExpr::monomial(3),
            FuncExpr::poly_re(&[0.0, 1.0, 0.0, 0.0, 2.0]),
        ];
        let wf = WronskianFn::new(&fam).unwrap();
        for z in [c(0.0, 0.0), c(0.7, 0.3), c(-1.1, 0.9)] {
            let via_lu = wronskian_value(&fam, z).unwrap();
            let via_dp = wf.value_at(z).unwrap();
            assert!(
                (via_lu - via_dp).norm() <= 1e-10 * via_lu.norm().max(1.0),
                "{via_lu} vs {via_dp}"
            );
        }
    }

    #[test]
    fn family_cap_enforced() {
        let fam: Vec<FuncExpr> = (0..14).map(FuncExpr::monomial).collect();
        assert!(matches!(
            wronskian_value(&fam, c(0.1, 0.0)),
            Err(Error::FamilyTooLarge { .. })
        ));
    }
}
