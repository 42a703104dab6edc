//! Quantitative boundary behavior.
//!
//! * [`decay_order_estimate`]: fit the exponent γ in `sup |f| ≍ (1-r)^γ`
//!   over slices of a Stolz angle or a level set, by log–log least squares
//!   on the deepest half of a radius schedule.
//! * [`korenblum_norm_estimate`]: grid estimate of `sup |f(z)| (1-|z|)^β`,
//!   the growth-class norm.
//! * [`deep_decay_threshold`]: the deep-decay threshold `nβ + n(n+1)/2`.
//! * [`derivative_decay_check`]: Cauchy-estimate decay transfer — if `f`
//!   decays at order α on a fattened region, `f^(k)` decays at order
//!   `α - k` on the core region; verified by fitting.
//! * [`blaschke_condition`] and [`carleson_integral`]: the two halves of the
//!   boundary-set (BC) condition, with certified tails where the sequence
//!   has one and log-aware quadrature for the distance integral.

use alloc::vec::Vec;

use crate::diskgeom::{LevelSetSpec, StolzAngle, UnitArc};
use crate::error::{Error, Result};
use crate::expr::{AnalyticFn, DerivativeFn};
use crate::C64;

/// Region on which decay is measured.
#[derive(Clone, Debug)]
pub enum DecayRegion {
    Stolz(StolzAngle),
    Level(LevelSetSpec),
}

impl DecayRegion {
    fn contains(&self, z: C64) -> bool {
        match self {
            DecayRegion::Stolz(cone) => cone.contains(z),
            DecayRegion::Level(spec) => spec.contains(z).unwrap_or(false),
        }
    }

    /// Points of the region on the circle `|z| = r`.
    ///
    /// Stolz slices are sampled across their exact angular window (edges
    /// included), level-set slices on a fixed uniform angular grid. At deep
    /// radii a level-set slice therefore reduces to the grid rays that still
    /// meet the set, so the fitted exponent reflects decay along those rays.
    fn slice(&self, r: f64, cfg: &DecayConfig) -> Vec<C64> {
        let mut out = Vec::new();
        match self {
            DecayRegion::Stolz(cone) => {
                if let Some(w) = cone.angle_half_width(r) {
                    let k = cfg.stolz_slice_points.max(3) | 1; // odd: edges + axis
                    let base = cone.vertex_t * core::f64::consts::PI;
                    for i in 0..k {
                        let frac = 2.0 * i as f64 / (k - 1) as f64 - 1.0;
                        out.push(C64::from_polar(r, base + w * frac));
                    }
                }
            }
            DecayRegion::Level(spec) => {
                let a = cfg.level_angular.max(4);
                for j in 0..a {
                    let th = core::f64::consts::TAU * j as f64 / a as f64;
                    let z = C64::from_polar(r, th);
                    if let Ok(v) = spec.h.eval(z) {
                        if v.norm() < spec.eps {
                            out.push(z);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Sampling knobs for the decay fits.
#[derive(Clone, Debug)]
pub struct DecayConfig {
    /// Points across a Stolz slice (odd; edges and axis included).
    pub stolz_slice_points: usize,
    /// Uniform angular grid size for level-set slices.
    pub level_angular: usize,
    /// Slack subtracted from the derivative-decay target order.
    pub slack: f64,
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig {
            stolz_slice_points: 33,
            level_angular: 64,
            slack: 0.1,
        }
    }
}

/// The dyadic radius schedule `1 - 2^{-m}`, `m = lo..=hi`.
pub fn dyadic_radii(m_lo: u32, m_hi: u32) -> Result<Vec<f64>> {
    if m_lo == 0 || m_hi < m_lo || m_hi > 50 {
        return Err(Error::InvalidParam(
            "radius schedule needs 1 <= lo <= hi <= 50".into(),
        ));
    }
    Ok((m_lo..=m_hi)
        .map(|m| 1.0 - libm::exp2(-f64::from(m)))
        .collect())
}

/// One fitted slice.
#[derive(Clone, Copy, Debug)]
pub struct SlicePoint {
    pub radius: f64,
    pub sup_abs: f64,
}

/// A fitted decay order.
#[derive(Clone, Debug)]
pub struct DecayEstimate {
    /// Fitted exponent; `+∞` when `f` vanished on every fitted slice.
    pub gamma_hat: f64,
    /// Radii that entered the fit (the deepest half of the schedule).
    pub radii: Vec<f64>,
    /// Intercept of the fitted line (`log C`).
    pub intercept: f64,
    /// RMS residual of `log sup |f|` against the fitted line.
    pub fit_residual: f64,
    pub samples_used: usize,
    /// All slices, including the shallow ones excluded from the fit.
    pub slices: Vec<SlicePoint>,
    pub all_zero: bool,
}

/// Fit the decay exponent of `sup |f|` over region slices against `1 - r`.
///
/// The radii must increase strictly toward 1; every scheduled radius must
/// meet the region. Fitting uses the deepest half of the schedule (the
/// shallow half pollutes the asymptotic slope).
pub fn decay_order_estimate<F: AnalyticFn + ?Sized>(
    f: &F,
    region: &DecayRegion,
    radii: &[f64],
    cfg: &DecayConfig,
) -> Result<DecayEstimate> {
    if radii.len() < 2 {
        return Err(Error::InvalidParam("need at least two radii".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) || radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(Error::InvalidParam(
            "radii must increase strictly inside (0, 1)".into(),
        ));
    }

    let mut slices = Vec::with_capacity(radii.len());
    for &r in radii {
        let pts = region.slice(r, cfg);
        if pts.is_empty() {
            return Err(Error::EmptySlice { radius: r });
        }
        let mut sup = 0.0f64;
        for z in pts {
            sup = sup.max(f.value_at(z)?.norm());
        }
        slices.push(SlicePoint {
            radius: r,
            sup_abs: sup,
        });
    }

    // deepest half of the schedule
    let take = slices.len().div_ceil(2);
    let deep = &slices[slices.len() - take..];
    let fitted: Vec<(f64, f64)> = deep
        .iter()
        .filter(|s| s.sup_abs > 0.0)
        .map(|s| (libm::log(1.0 - s.radius), libm::log(s.sup_abs)))
        .collect();

    if fitted.len() < 2 {
        return Ok(DecayEstimate {
            gamma_hat: f64::INFINITY,
            radii: deep.iter().map(|s| s.radius).collect(),
            intercept: 0.0,
            fit_residual: 0.0,
            samples_used: fitted.len(),
            slices,
            all_zero: true,
        });
    }

    let n = fitted.len() as f64;
    let sx: f64 = fitted.iter().map(|p| p.0).sum();
    let sy: f64 = fitted.iter().map(|p| p.1).sum();
    let sxx: f64 = fitted.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = fitted.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let rms = libm::sqrt(
        fitted
            .iter()
            .map(|p| {
                let e = p.1 - (slope * p.0 + intercept);
                e * e
            })
            .sum::<f64>()
            / n,
    );

    Ok(DecayEstimate {
        gamma_hat: slope,
        radii: deep.iter().map(|s| s.radius).collect(),
        intercept,
        fit_residual: rms,
        samples_used: fitted.len(),
        slices,
        all_zero: false,
    })
}

/// Polar grid for norm estimates.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub radial: usize,
    pub angular: usize,
    pub r_cap: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radial: 64,
            angular: 128,
            r_cap: crate::diskgeom::DEFAULT_GRID_CAP,
        }
    }
}

/// Grid estimate (a lower bound) of the growth-class norm
/// `sup_z |f(z)| (1 - |z|)^β`.
pub fn korenblum_norm_estimate<F: AnalyticFn + ?Sized>(
    f: &F,
    beta: f64,
    grid: &GridSpec,
) -> Result<f64> {
    if grid.radial < 1 || grid.angular < 1 || !(grid.r_cap > 0.0 && grid.r_cap < 1.0) {
        return Err(Error::InvalidParam("bad grid".into()));
    }
    let mut best = f.value_at(C64::new(0.0, 0.0))?.norm();
    for k in 1..=grid.radial {
        let r = grid.r_cap * k as f64 / grid.radial as f64;
        let weight = libm::pow(1.0 - r, beta);
        for j in 0..grid.angular {
            let th = core::f64::consts::TAU * j as f64 / grid.angular as f64;
            let v = f.value_at(C64::from_polar(r, th))?.norm();
            best = best.max(v * weight);
        }
    }
    Ok(best)
}

/// The decay threshold `γ = nβ + n(n+1)/2` for an `n + 1` family with growth
/// exponent β.
pub fn deep_decay_threshold(n: u32, beta: f64) -> f64 {
    let nf = f64::from(n);
    nf * beta + nf * (nf + 1.0) / 2.0
}

/// Result of the derivative-decay transfer check.
#[derive(Clone, Debug)]
pub struct DerivDecayReport {
    pub fitted: DecayEstimate,
    /// `α - k - slack`
    pub required: f64,
    pub pass: bool,
    /// Sample points whose fattened balls were verified inside the outer
    /// region.
    pub containment_checked: usize,
}

/// Verify the hypothesis `∪_{z∈G} B(z, δ(1-|z|)) ⊆ G0` on sampled points,
/// then fit the decay order of `f^(k)` on `G` and compare with `α - k`.
/// A vanishing derivative (infinite fitted order) passes.
#[allow(clippy::too_many_arguments)]
pub fn derivative_decay_check<F: AnalyticFn + ?Sized>(
    f: &F,
    alpha: f64,
    k: u32,
    g: &DecayRegion,
    g0: &DecayRegion,
    delta: f64,
    radii: &[f64],
    cfg: &DecayConfig,
) -> Result<DerivDecayReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParam("delta must be in (0, 1)".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParam("derivative order must be >= 1".into()));
    }

    // hypothesis check on the sampled slices
    let mut checked = 0usize;
    for &r in radii {
        for z in g.slice(r, cfg) {
            let ball = delta * (1.0 - z.norm());
            for i in 0..16 {
                let th = core::f64::consts::TAU * i as f64 / 16.0;
                let w = z + C64::from_polar(ball * 0.999, th);
                if !g0.contains(w) {
                    return Err(Error::ContainmentFailed { z });
                }
            }
            checked += 1;
        }
    }

    let dfn = DerivativeFn { f, k: k as usize };
    let fitted = decay_order_estimate(&dfn, g, radii, cfg)?;
    let required = alpha - f64::from(k) - cfg.slack;
    let pass = fitted.all_zero || fitted.gamma_hat >= required;
    Ok(DerivDecayReport {
        fitted,
        required,
        pass,
        containment_checked: checked,
    })
}

// ---------------------------------------------------------------------------
// Blaschke condition
// ---------------------------------------------------------------------------

/// A zero sequence for the summability condition `Σ (1 - |z_j|) < ∞`.
#[derive(Clone, Debug)]
pub enum ZeroSeq {
    Finite(Vec<C64>),
    /// `|a_j| = 1 - 2^{-j}`, `j = 1..=terms`; tail known exactly.
    Dyadic { terms: u32 },
    /// `|a_j| = 1 - 1/j`, `j = 2..=terms+1`; divergent.
    Harmonic { terms: u32 },
}

#[derive(Clone, Debug)]
pub struct BlaschkeReport {
    /// Partial sum `Σ (1 - |z_j|)` over the realized terms.
    pub partial_sum: f64,
    /// Bound on the remaining tail, when the generator provides one.
    pub tail_bound: Option<f64>,
    pub converged: bool,
    pub terms: usize,
}

/// Evaluate the Blaschke summability condition. A finite list is summed
/// exactly; the dyadic generator carries the exact tail `2^{-N}`; the
/// harmonic generator is reported divergent at any truncation.
pub fn blaschke_condition(seq: &ZeroSeq, tol: f64) -> Result<BlaschkeReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParam("tolerance must be positive".into()));
    }
    match seq {
        ZeroSeq::Finite(points) => {
            let mut sum = 0.0;
            for z in points {
                if z.norm() >= 1.0 {
                    return Err(Error::OutsideDisk { z: *z });
                }
                sum += 1.0 - z.norm();
            }
            Ok(BlaschkeReport {
                partial_sum: sum,
                tail_bound: Some(0.0),
                converged: true,
                terms: points.len(),
            })
        }
        ZeroSeq::Dyadic { terms } => {
            let mut sum = 0.0;
            for j in 1..=*terms {
                sum += libm::exp2(-f64::from(j));
            }
            let tail = libm::exp2(-f64::from(*terms));
            Ok(BlaschkeReport {
                partial_sum: sum,
                tail_bound: Some(tail),
                converged: tail < tol,
                terms: *terms as usize,
            })
        }
        ZeroSeq::Harmonic { terms } => {
            let mut sum = 0.0;
            for j in 2..=(u64::from(*terms) + 1) {
                sum += 1.0 / j as f64;
            }
            Ok(BlaschkeReport {
                partial_sum: sum,
                tail_bound: None,
                converged: false,
                terms: *terms as usize,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Carleson condition
// ---------------------------------------------------------------------------

/// A boundary set for the log-distance integral.
#[derive(Clone, Debug)]
pub enum BoundarySetDescriptor {
    /// Unimodular points as angles over π.
    FinitePoints(Vec<f64>),
    /// Closed arcs of positive length.
    Arcs(Vec<UnitArc>),
    /// The closure of the dyadic zero sequence `{1 - 2^{-j}} ∪ {1}`,
    /// truncated after `terms` interior points.
    DyadicGenerator { terms: u32 },
}

#[derive(Clone, Copy, Debug)]
pub struct CarlesonQuad {
    /// Uniform panels per full circle away from singular angles.
    pub base_panels: usize,
    /// Geometric grading levels toward each singular angle.
    pub grade_levels: u32,
    /// Numeric divergence floor for the accumulated value.
    pub floor: f64,
}

impl Default for CarlesonQuad {
    fn default() -> Self {
        CarlesonQuad {
            base_panels: 128,
            grade_levels: 46,
            floor: -1e4,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CarlesonReport {
    /// `∫_𝕋 log dist(ζ, E) |dζ|`; `-∞` when structurally divergent.
    pub value: f64,
    pub divergent: bool,
}

/// Evaluate the boundary log-distance integral with singularity-graded
/// panels. A set containing an arc of positive length is divergent outright
/// (the distance vanishes on it); otherwise divergence is flagged when the
/// value sinks below the configured floor.
pub fn carleson_integral(e: &BoundarySetDescriptor, quad: &CarlesonQuad) -> Result<CarlesonReport> {
    match e {
        BoundarySetDescriptor::Arcs(arcs) => {
            if arcs.is_empty() {
                return Err(Error::EmptyBoundarySet);
            }
            for arc in arcs {
                if !(arc.t_end > arc.t_start) {
                    return Err(Error::InvalidParam("degenerate arc".into()));
                }
            }
            Ok(CarlesonReport {
                value: f64::NEG_INFINITY,
                divergent: true,
            })
        }
        BoundarySetDescriptor::FinitePoints(ts) => {
            if ts.is_empty() {
                return Err(Error::EmptyBoundarySet);
            }
            let thetas: Vec<f64> = ts
                .iter()
                .map(|t| crate::expr::reduce_angle_t(*t) * core::f64::consts::PI)
                .collect();
            let dist = |th: f64| {
                thetas
                    .iter()
                    .map(|t0| 2.0 * libm::fabs(libm::sin((th - t0) * 0.5)))
                    .fold(f64::INFINITY, f64::min)
            };
            let value = graded_log_integral(&thetas, &dist, quad);
            Ok(CarlesonReport {
                value,
                divergent: value < quad.floor,
            })
        }
        BoundarySetDescriptor::DyadicGenerator { terms } => {
            if *terms == 0 {
                return Err(Error::EmptyBoundarySet);
            }
            let radii: Vec<f64> = (1..=*terms)
                .map(|j| 1.0 - libm::exp2(-f64::from(j)))
                .collect();
            // distance to the truncated points plus their limit on the circle
            let dist = move |th: f64| {
                let boundary = 2.0 * libm::fabs(libm::sin(th * 0.5));
                radii
                    .iter()
                    .map(|&p| libm::sqrt(1.0 + p * p - 2.0 * p * libm::cos(th)))
                    .fold(boundary, f64::min)
            };
            let value = graded_log_integral(&[0.0], &dist, quad);
            Ok(CarlesonReport {
                value,
                divergent: value < quad.floor,
            })
        }
    }
}

/// `∫_0^{2π} log dist(θ) dθ` with panels graded geometrically toward the
/// singular angles (where the integrand may diverge logarithmically).
fn graded_log_integral<D: Fn(f64) -> f64>(
    singular: &[f64],
    dist: &D,
    quad: &CarlesonQuad,
) -> f64 {
    use core::f64::consts::TAU;
    let (nodes, weights) = crate::quad::gauss_legendre(16);

    let mut angles: Vec<f64> = singular
        .iter()
        .map(|t| t - TAU * libm::floor(t / TAU))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    angles.dedup();

    let gl_panel = |a: f64, b: f64| -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| {
                let d = dist(mid + half * x);
                w * libm::log(d.max(1e-300))
            })
            .sum::<f64>()
            * half
    };

    // integrate [a, b] with grading toward the end(s) marked singular
    let graded_segment = |a: f64, b: f64| -> f64 {
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (lo, hi, toward_lo) in [(a, mid, true), (mid, b, false)] {
            let h = hi - lo;
            let mut outer = h;
            for _ in 0..quad.grade_levels {
                let inner = outer * 0.5;
                let (pa, pb) = if toward_lo {
                    (lo + inner, lo + outer)
                } else {
                    (hi - outer, hi - inner)
                };
                acc += gl_panel(pa, pb);
                outer = inner;
            }
            // the innermost sliver of width h·2^{-levels} is dropped:
            // its contribution is O(w |log w|)
        }
        acc
    };

    let mut total = 0.0;
    let k = angles.len();
    for i in 0..k {
        let a = angles[i];
        let b = if i + 1 < k {
            angles[i + 1]
        } else {
            angles[0] + TAU
        };
        if b - a < 1e-14 {
            continue;
        }
        // split long segments uniformly; grade only next to the endpoints
        let pieces = libm::ceil((b - a) / (TAU / quad.base_panels as f64)) as usize;
        if pieces <= 2 {
            total += graded_segment(a, b);
        } else {
            let h = (b - a) / pieces as f64;
            total += graded_segment(a, a + h);
            for p in 1..pieces - 1 {
                total += gl_panel(a + h * p as f64, a + h * (p + 1) as f64);
            }
            total += graded_segment(b - h, b);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::FuncExpr;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn one_minus_z_pow(k: u32) -> FuncExpr {
        FuncExpr::power(FuncExpr::poly_re(&[1.0, -1.0]), k)
    }

    #[test]
    fn decay_order_of_squared_factor_on_stolz() {
        let cone = DecayRegion::Stolz(StolzAngle::new(0.0, 2.0).unwrap());
        let radii = dyadic_radii(6, 20).unwrap();
        let est =
            decay_order_estimate(&one_minus_z_pow(2), &cone, &radii, &DecayConfig::default())
                .unwrap();
        assert!(
            est.gamma_hat > 1.95 && est.gamma_hat < 2.05,
            "gamma {}",
            est.gamma_hat
        );
        assert!(est.samples_used >= 8);
    }

    #[test]
    fn decay_order_of_constant_is_zero() {
        let cone = DecayRegion::Stolz(StolzAngle::new(0.0, 2.0).unwrap());
        let radii = dyadic_radii(6, 20).unwrap();
        let est = decay_order_estimate(
            &FuncExpr::constant(c(1.0, 0.0)),
            &cone,
            &radii,
            &DecayConfig::default(),
        )
        .unwrap();
        assert!(est.gamma_hat.abs() < 0.02, "gamma {}", est.gamma_hat);
    }

    #[test]
    fn decay_order_is_additive_under_products() {
        let cone = DecayRegion::Stolz(StolzAngle::new(0.0, 2.0).unwrap());
        let radii = dyadic_radii(6, 20).unwrap();
        let cfg = DecayConfig::default();
        let single =
            decay_order_estimate(&one_minus_z_pow(1), &cone, &radii, &cfg).unwrap();
        let product = FuncExpr::product(alloc::vec![
            one_minus_z_pow(1),
            one_minus_z_pow(1),
        ]);
        let double = decay_order_estimate(&product, &cone, &radii, &cfg).unwrap();
        assert!((double.gamma_hat - 2.0 * single.gamma_hat).abs() < 0.05);
    }

    #[test]
    fn vanishing_function_is_flagged_infinite_order() {
        let cone = DecayRegion::Stolz(StolzAngle::new(0.0, 2.0).unwrap());
        let radii = dyadic_radii(6, 14).unwrap();
        let est = decay_order_estimate(
            &FuncExpr::constant(c(0.0, 0.0)),
            &cone,
            &radii,
            &DecayConfig::default(),
        )
        .unwrap();
        assert!(est.all_zero);
        assert!(est.gamma_hat.is_infinite());
    }

    #[test]
    fn korenblum_norm_examples() {
        let grid = GridSpec::default();
        // f = 1, β = 0.5: the sup is 1, attained at the origin
        let n1 = korenblum_norm_estimate(&FuncExpr::constant(c(1.0, 0.0)), 0.5, &grid).unwrap();
        assert!((n1 - 1.0).abs() < 1e-12);

        // f = 1/(1-z), β = 1: |f|(1-|z|) stays ≈ 1 along the radius
        let f = FuncExpr::recip(FuncExpr::poly_re(&[1.0, -1.0]));
        let n2 = korenblum_norm_estimate(&f, 1.0, &grid).unwrap();
        assert!(n2 <= 1.0 + 1e-9 && n2 > 0.9, "norm {n2}");

        // same f with β = 0.5 blows up as the grid cap tightens
        let caps = [1.0 - 1e-2, 1.0 - 1e-3, 1.0 - 1e-4];
        let mut prev = 0.0;
        for cap in caps {
            let g = GridSpec {
                radial: 256,
                angular: 16,
                r_cap: cap,
            };
            let v = korenblum_norm_estimate(&f, 0.5, &g).unwrap();
            assert!(v > prev * 2.0, "no growth: {v} after {prev}");
            prev = v;
        }
    }

    #[test]
    fn threshold_formula() {
        assert_eq!(deep_decay_threshold(1, 0.0), 1.0);
        assert_eq!(deep_decay_threshold(2, 1.0), 5.0);
        assert_eq!(deep_decay_threshold(0, 3.7), 0.0);
    }

    #[test]
    fn derivative_decay_transfer_on_stolz_angles() {
        // f = (1-z)², k = 1, α = 2: order of f' on the inner cone ≈ 1
        let g = DecayRegion::Stolz(StolzAngle::new(0.0, 1.5).unwrap());
        let g0 = DecayRegion::Stolz(StolzAngle::new(0.0, 3.0).unwrap());
        let radii = dyadic_radii(6, 18).unwrap();
        let rep = derivative_decay_check(
            &one_minus_z_pow(2),
            2.0,
            1,
            &g,
            &g0,
            0.05,
            &radii,
            &DecayConfig::default(),
        )
        .unwrap();
        assert!(rep.pass, "fitted {} < {}", rep.fitted.gamma_hat, rep.required);
        assert!((rep.fitted.gamma_hat - 1.0).abs() < 0.05);
        assert!(rep.containment_checked > 0);

        // constant: derivative vanishes identically, passes as infinite order
        let repc = derivative_decay_check(
            &FuncExpr::constant(c(3.0, 0.0)),
            5.0,
            2,
            &g,
            &g0,
            0.05,
            &radii,
            &DecayConfig::default(),
        )
        .unwrap();
        assert!(repc.pass);
        assert!(repc.fitted.all_zero);

        // f = (1-z)³, k = 2: order ≈ 1
        let rep3 = derivative_decay_check(
            &one_minus_z_pow(3),
            3.0,
            2,
            &g,
            &g0,
            0.05,
            &radii,
            &DecayConfig::default(),
        )
        .unwrap();
        assert!((rep3.fitted.gamma_hat - 1.0).abs() < 0.05);
    }

    #[test]
    fn containment_hypothesis_failure_detected() {
        // outer region too small for the fattening
        let g = DecayRegion::Stolz(StolzAngle::new(0.0, 3.0).unwrap());
        let g0 = DecayRegion::Stolz(StolzAngle::new(0.0, 1.2).unwrap());
        let radii = dyadic_radii(6, 10).unwrap();
        assert!(matches!(
            derivative_decay_check(
                &one_minus_z_pow(1),
                1.0,
                1,
                &g,
                &g0,
                0.5,
                &radii,
                &DecayConfig::default()
            ),
            Err(Error::ContainmentFailed { .. })
        ));
    }

    #[test]
    fn blaschke_condition_examples() {
        // dyadic: partial + tail = 1 exactly
        let rep = blaschke_condition(&ZeroSeq::Dyadic { terms: 30 }, 1e-6).unwrap();
        assert_eq!(rep.partial_sum + rep.tail_bound.unwrap(), 1.0);
        assert!(rep.converged);

        // harmonic: tracks the harmonic series, never converges
        let h = blaschke_condition(&ZeroSeq::Harmonic { terms: 1000 }, 1e-6).unwrap();
        assert!(!h.converged);
        assert!(h.tail_bound.is_none());
        let expect: f64 = (2..=1001u64).map(|j| 1.0 / j as f64).sum();
        assert_eq!(h.partial_sum, expect);

        // finite list sums directly
        let f = blaschke_condition(
            &ZeroSeq::Finite(alloc::vec![c(0.0, 0.0), c(0.5, 0.0)]),
            1e-6,
        )
        .unwrap();
        assert_eq!(f.partial_sum, 1.5);
        assert!(f.converged);

        assert!(blaschke_condition(&ZeroSeq::Finite(alloc::vec![c(1.0, 0.0)]), 1e-6).is_err());
    }

    #[test]
    fn carleson_single_point_integral_vanishes() {
        // ∫ log |1 - e^{iθ}| dθ = 0
        let rep = carleson_integral(
            &BoundarySetDescriptor::FinitePoints(alloc::vec![0.0]),
            &CarlesonQuad::default(),
        )
        .unwrap();
        assert!(!rep.divergent);
        assert!(rep.value.abs() < 1e-6, "value {}", rep.value);
    }

    #[test]
    fn carleson_arc_is_divergent() {
        let rep = carleson_integral(
            &BoundarySetDescriptor::Arcs(alloc::vec![UnitArc {
                t_start: 0.1,
                t_end: 0.3,
            }]),
            &CarlesonQuad::default(),
        )
        .unwrap();
        assert!(rep.divergent);
        assert_eq!(rep.value, f64::NEG_INFINITY);
    }

    #[test]
    fn carleson_monotone_under_enlargement() {
        let quad = CarlesonQuad::default();
        let mut prev = f64::INFINITY;
        let mut pts = alloc::vec![0.0];
        for t in [0.5, 1.0, -0.5, 0.25, -0.75] {
            pts.push(t);
            let v = carleson_integral(&BoundarySetDescriptor::FinitePoints(pts.clone()), &quad)
                .unwrap()
                .value;
            assert!(v <= prev + 1e-12, "{v} > {prev}");
            prev = v;
        }
    }

    #[test]
    fn carleson_dyadic_generator_is_finite() {
        let rep = carleson_integral(
            &BoundarySetDescriptor::DyadicGenerator { terms: 20 },
            &CarlesonQuad::default(),
        )
        .unwrap();
        assert!(!rep.divergent);
        assert!(rep.value.is_finite());
        // enlarging the set (more interior points) can only decrease it
        let more = carleson_integral(
            &BoundarySetDescriptor::DyadicGenerator { terms: 40 },
            &CarlesonQuad::default(),
        )
        .unwrap();
        assert!(more.value <= rep.value + 1e-9);
    }

    #[test]
    fn empty_sets_are_rejected() {
        assert!(matches!(
            carleson_integral(
                &BoundarySetDescriptor::FinitePoints(alloc::vec![]),
                &CarlesonQuad::default()
            ),
            Err(Error::EmptyBoundarySet)
        ));
    }
}
