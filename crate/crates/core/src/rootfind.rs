//! Argument-principle zero localization with adaptive subdivision.
//!
//! [`count_zeros`] evaluates the winding integral `(1/2πi) ∮ f'/f` over a
//! region boundary with composite Gauss–Legendre panels, doubling the panel
//! count until the value settles on an integer. [`locate_zeros`] drives a
//! recursive quadrisection on top of it: every box with a nonzero count is
//! split with an exact-conservation check (children must account for the
//! parent's count), and leaf boxes get a multiplicity-aware polish
//! (winding-weighted centroid, then damped Newton on `f^(m-1)`).
//!
//! [`exceptional_set`] applies the machinery to the Wronskian of a family:
//! the result is the set of points where some nontrivial combination of the
//! family can vanish to deep order.
//!
//! Boxes whose count cannot be established (a zero pinned to a contour after
//! jitter retries, the depth limit, a straddle of the unit-disk clip) are
//! reported in `unresolved`, never silently dropped. Zeros of disk families
//! accumulating at the unit circle end up there by design.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expr::{AnalyticFn, Domain, FuncExpr};
use crate::quad::gauss_legendre;
use crate::wronskian::{wronskian_matrix, WronskianFn};
use crate::C64;

/// Default clip radius for disk-domain functions: stay this far inside 𝔻.
pub const DEFAULT_CLIP: f64 = 1.0 - 1e-6;

/// Search region: a disk or an axis-aligned rectangle, with an optional clip
/// to `|z| <= rho` for work inside the unit disk.
#[derive(Clone, Debug)]
pub struct Region {
    pub shape: Shape,
    pub clip: Option<f64>,
}

#[derive(Clone, Debug)]
pub enum Shape {
    Disk { center: C64, radius: f64 },
    Rect { lo: C64, hi: C64 },
}

impl Region {
    pub fn disk(center: C64, radius: f64) -> Result<Region> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParam("disk radius must be positive".into()));
        }
        Ok(Region {
            shape: Shape::Disk { center, radius },
            clip: None,
        })
    }

    pub fn rect(lo: C64, hi: C64) -> Result<Region> {
        if !(lo.re < hi.re && lo.im < hi.im) {
            return Err(Error::InvalidParam("empty rectangle".into()));
        }
        Ok(Region {
            shape: Shape::Rect { lo, hi },
            clip: None,
        })
    }

    /// Restrict the search to `|z| <= rho`, `0 < rho < 1`.
    pub fn with_clip(mut self, rho: f64) -> Result<Region> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InvalidParam("clip margin must be in (0, 1)".into()));
        }
        self.clip = Some(rho);
        Ok(self)
    }

    fn bounding_box(&self) -> BoxR {
        match self.shape {
            Shape::Disk { center, radius } => BoxR {
                lo: center - C64::new(radius, radius),
                hi: center + C64::new(radius, radius),
            },
            Shape::Rect { lo, hi } => BoxR { lo, hi },
        }
    }

    fn contains(&self, z: C64) -> bool {
        let in_shape = match self.shape {
            Shape::Disk { center, radius } => (z - center).norm() <= radius,
            Shape::Rect { lo, hi } => {
                z.re >= lo.re && z.re <= hi.re && z.im >= lo.im && z.im <= hi.im
            }
        };
        in_shape && self.clip.is_none_or(|rho| z.norm() <= rho)
    }

    fn intersects(&self, b: &BoxR) -> bool {
        match self.shape {
            Shape::Disk { center, radius } => b.distance_to(center) <= radius,
            Shape::Rect { lo, hi } => {
                b.lo.re <= hi.re && b.hi.re >= lo.re && b.lo.im <= hi.im && b.hi.im >= lo.im
            }
        }
    }
}

/// Knobs for the subdivision search.
#[derive(Clone, Debug)]
pub struct RootFindConfig {
    /// Initial Gauss–Legendre panel count per contour (16 nodes each).
    pub panels: usize,
    /// Subdivision depth limit.
    pub max_depth: usize,
    /// Boxes at most this large (diagonal) get polished instead of split.
    pub sep_tol: f64,
    /// Reject a contour when `min |f| < guard_ratio · max |f|` on it.
    pub guard_ratio: f64,
    /// Contour jitter retries for boundary-zero collisions.
    pub max_jitter: usize,
    /// Depth cap for boxes that cannot be counted at all (clip straddles,
    /// persistent boundary zeros). Keeps the uncountable fringe from fanning
    /// out; such boxes land in `unresolved`.
    pub blind_depth: usize,
    /// Hard cap on counted boxes.
    pub box_budget: usize,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        RootFindConfig {
            panels: 32,
            max_depth: 24,
            sep_tol: 1e-6,
            guard_ratio: 1e-9,
            max_jitter: 3,
            blind_depth: 12,
            box_budget: 1_000_000,
        }
    }
}

/// A located zero with its multiplicity and enclosing disk.
#[derive(Clone, Debug)]
pub struct LocatedZero {
    pub location: C64,
    pub multiplicity: u32,
    /// Radius of a disk around `location` containing the counted zeros.
    pub enclosure_radius: f64,
    /// Residual certificate: how consistent the low-order derivatives at
    /// `location` are with a zero of the reported multiplicity inside the
    /// enclosure (0 = exact, values near 1 = cluster filling the enclosure).
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnresolvedReason {
    /// Subdivision hit the depth limit with the count still spread out.
    DepthLimit,
    /// The Newton polish did not converge to a point inside the box.
    PolishFailed,
    /// Children never reproduced the parent count (zeros pinned to every
    /// attempted split).
    SplitAmbiguous,
    /// The box straddles the unit-disk clip; its contour is not evaluable.
    ClipStraddle,
    /// The contour could not be counted even after jitter.
    Uncountable,
}

/// An enclosure whose contents could not be pinned down.
#[derive(Clone, Debug)]
pub struct UnresolvedBox {
    pub lo: C64,
    pub hi: C64,
    /// Winding count over the box, when it was establishable.
    pub count: Option<u32>,
    pub reason: UnresolvedReason,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReportWarning {
    /// `max |W|` over the sampled region is tiny relative to the entry
    /// scale: the family looks linearly dependent.
    SuspectedDependentFamily { max_abs: f64, scale: f64 },
}

#[derive(Clone, Debug, Default)]
pub struct TraversalStats {
    pub boxes_counted: usize,
    pub jittered_counts: usize,
    pub split_retries: usize,
    pub conservation_failures: usize,
}

/// Everything found in a region.
///
/// `total_count` equals the sum of reported multiplicities plus the counts of
/// unresolved boxes that have one; straddle boxes without an established
/// count sit outside the clipped search region and are listed only as
/// enclosures.
#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub zeros: Vec<LocatedZero>,
    pub unresolved: Vec<UnresolvedBox>,
    pub total_count: i64,
    pub warnings: Vec<ReportWarning>,
    pub stats: TraversalStats,
}

// ---------------------------------------------------------------------------
// Winding integrals
// ---------------------------------------------------------------------------

struct WindingOutcome {
    /// `(1/2πi) ∮ f'/f dz`
    winding: C64,
    /// `(1/2πi) ∮ z f'/f dz` — Σ (multiplicity · zero location)
    moment: C64,
    min_abs: f64,
    max_abs: f64,
}

#[derive(Clone, Copy, Debug)]
struct BoxR {
    lo: C64,
    hi: C64,
}

impl BoxR {
    fn center(&self) -> C64 {
        (self.lo + self.hi) * 0.5
    }

    fn size(&self) -> C64 {
        self.hi - self.lo
    }

    /// Diagonal length.
    fn diam(&self) -> f64 {
        self.size().norm()
    }

    fn corners(&self) -> [C64; 4] {
        [
            self.lo,
            C64::new(self.hi.re, self.lo.im),
            self.hi,
            C64::new(self.lo.re, self.hi.im),
        ]
    }

    fn max_corner_norm(&self) -> f64 {
        self.corners()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    fn contains(&self, z: C64, slack: f64) -> bool {
        let s = self.size() * slack;
        z.re >= self.lo.re - s.re
            && z.re <= self.hi.re + s.re
            && z.im >= self.lo.im - s.im
            && z.im <= self.hi.im + s.im
    }

    /// Distance from a point to this box (0 when inside).
    fn distance_to(&self, z: C64) -> f64 {
        let dx = (self.lo.re - z.re).max(0.0).max(z.re - self.hi.re);
        let dy = (self.lo.im - z.im).max(0.0).max(z.im - self.hi.im);
        libm::sqrt(dx * dx + dy * dy)
    }

    /// Partition into four boxes at an interior split point.
    fn quarter(&self, s: C64) -> [BoxR; 4] {
        let (lo, hi) = (self.lo, self.hi);
        [
            BoxR {
                lo,
                hi: s,
            },
            BoxR {
                lo: C64::new(s.re, lo.im),
                hi: C64::new(hi.re, s.im),
            },
            BoxR {
                lo: C64::new(lo.re, s.im),
                hi: C64::new(s.re, hi.im),
            },
            BoxR {
                lo: s,
                hi,
            },
        ]
    }

    /// Deterministic interior split points: the center, then slightly
    /// offset alternatives for retries when zeros pin the split lines.
    fn split_point(&self, attempt: usize) -> C64 {
        let c = self.center();
        let h = self.size() * 0.5;
        let offsets = [
            (0.0, 0.0),
            (0.137, 0.211),
            (-0.173, 0.094),
            (0.061, -0.159),
        ];
        let (ox, oy) = offsets[attempt % offsets.len()];
        c + C64::new(ox * h.re, oy * h.im)
    }
}

fn winding_over_contour<F: AnalyticFn + ?Sized>(
    f: &F,
    contour: &Shape,
    panels: usize,
) -> Result<WindingOutcome> {
    let (nodes, weights) = gauss_legendre(16);
    let mut winding = C64::new(0.0, 0.0);
    let mut moment = C64::new(0.0, 0.0);
    let mut min_abs = f64::INFINITY;
    let mut max_abs = 0.0f64;

    let mut accumulate = |z: C64, dz: C64, w: f64| -> Result<()> {
        let jet = f.jet_at(z, 1)?;
        let v = jet.value();
        let a = v.norm();
        min_abs = min_abs.min(a);
        max_abs = max_abs.max(a);
        if a > 0.0 {
            let logd = jet.deriv(1) / v;
            winding += logd * dz * w;
            moment += z * logd * dz * w;
        }
        Ok(())
    };

    match contour {
        Shape::Disk { center, radius } => {
            let seg = core::f64::consts::TAU / panels as f64;
            for p in 0..panels {
                let t0 = p as f64 * seg;
                for (x, w) in nodes.iter().zip(&weights) {
                    let th = t0 + (x + 1.0) * 0.5 * seg;
                    let dir = C64::from_polar(1.0, th);
                    let z = center + dir * *radius;
                    // dz = i r e^{iθ} dθ; dθ = seg/2 dx
                    let dz = C64::new(0.0, 1.0) * dir * *radius * (seg * 0.5);
                    accumulate(z, dz, *w)?;
                }
            }
        }
        Shape::Rect { lo, hi } => {
            let corners = [
                *lo,
                C64::new(hi.re, lo.im),
                *hi,
                C64::new(lo.re, hi.im),
                *lo,
            ];
            let perimeter: f64 = (0..4).map(|i| (corners[i + 1] - corners[i]).norm()).sum();
            for i in 0..4 {
                let a = corners[i];
                let b = corners[i + 1];
                let len = (b - a).norm();
                let edge_panels = (libm::ceil(panels as f64 * len / perimeter) as usize).max(1);
                let step = (b - a) / edge_panels as f64;
                for p in 0..edge_panels {
                    let p0 = a + step * p as f64;
                    for (x, w) in nodes.iter().zip(&weights) {
                        let z = p0 + step * ((x + 1.0) * 0.5);
                        let dz = step * 0.5;
                        accumulate(z, dz, *w)?;
                    }
                }
            }
        }
    }

    let two_pi_i = C64::new(0.0, core::f64::consts::TAU);
    Ok(WindingOutcome {
        winding: winding / two_pi_i,
        moment: moment / two_pi_i,
        min_abs,
        max_abs,
    })
}

struct CountOutcome {
    count: i64,
    /// `(∮ z f'/f) / (∮ f'/f)`: the multiplicity-weighted zero centroid.
    centroid: Option<C64>,
}

/// One contour count with panel doubling until the winding value stabilizes
/// near an integer.
fn count_contour<F: AnalyticFn + ?Sized>(
    f: &F,
    contour: &Shape,
    cfg: &RootFindConfig,
) -> Result<CountOutcome> {
    let mut panels = cfg.panels.max(4);
    let mut prev_round: Option<i64> = None;
    for level in 0..6 {
        let out = winding_over_contour(f, contour, panels)?;
        if out.max_abs == 0.0 || out.min_abs < cfg.guard_ratio * out.max_abs {
            return Err(Error::ZeroOnBoundary {
                min_abs: out.min_abs,
                max_abs: out.max_abs,
            });
        }
        let re = out.winding.re;
        let rounded = libm::round(re) as i64;
        let dev = (re - rounded as f64).abs().max(out.winding.im.abs());
        // tight hit: accept at once; otherwise require two agreeing levels
        let settled = dev <= 5e-4 || (dev <= 0.05 && prev_round == Some(rounded));
        if settled {
            let centroid = if rounded != 0 {
                Some(out.moment / out.winding)
            } else {
                None
            };
            return Ok(CountOutcome {
                count: rounded,
                centroid,
            });
        }
        if level == 5 && dev <= 0.1 {
            let centroid = if rounded != 0 {
                Some(out.moment / out.winding)
            } else {
                None
            };
            return Ok(CountOutcome {
                count: rounded,
                centroid,
            });
        }
        prev_round = Some(rounded);
        panels *= 2;
    }
    let out = winding_over_contour(f, contour, cfg.panels.max(4) * 32)?;
    Err(Error::WindingNotInteger {
        value: out.winding.re,
    })
}

/// Winding-number zero count over a region boundary.
///
/// Preconditions: `f` analytic on and inside the contour, no zero within the
/// guard distance of the boundary. The winding value must land within 0.1 of
/// an integer after panel doubling, else the count is rejected.
pub fn count_zeros<F: AnalyticFn + ?Sized>(
    f: &F,
    region: &Region,
    panels: usize,
) -> Result<i64> {
    let cfg = RootFindConfig {
        panels,
        ..RootFindConfig::default()
    };
    Ok(count_contour(f, &region.shape, &cfg)?.count)
}

// ---------------------------------------------------------------------------
// Subdivision search
// ---------------------------------------------------------------------------

enum Task {
    Uncounted(BoxR, usize),
    Counted(BoxR, usize, u32, Option<C64>),
}

/// Count the box contour; on a boundary-zero collision, retry with slightly
/// expanded (jittered) boxes. Returns the box actually counted — subdivision
/// must continue on that box, or the children cannot account for the count.
fn count_box<F: AnalyticFn + ?Sized>(
    f: &F,
    b: &BoxR,
    cfg: &RootFindConfig,
    rho: Option<f64>,
    allow_jitter: bool,
    stats: &mut TraversalStats,
) -> Result<(BoxR, CountOutcome)> {
    stats.boxes_counted += 1;
    let plain = count_contour(
        f,
        &Shape::Rect { lo: b.lo, hi: b.hi },
        cfg,
    );
    match plain {
        Ok(out) => Ok((*b, out)),
        Err(e @ Error::ZeroOnBoundary { .. }) | Err(e @ Error::WindingNotInteger { .. }) => {
            if !allow_jitter {
                return Err(e);
            }
            // asymmetric expansions, clamped to the evaluable domain
            for k in 1..=cfg.max_jitter {
                let d = b.diam() * 1e-3 * k as f64;
                let jb = BoxR {
                    lo: b.lo - C64::new(d, 1.37 * d),
                    hi: b.hi + C64::new(1.19 * d, 0.83 * d),
                };
                if let Some(rho) = rho {
                    if jb.max_corner_norm() > rho {
                        continue;
                    }
                }
                stats.jittered_counts += 1;
                if let Ok(out) = count_contour(
                    f,
                    &Shape::Rect {
                        lo: jb.lo,
                        hi: jb.hi,
                    },
                    cfg,
                ) {
                    return Ok((jb, out));
                }
            }
            Err(e)
        }
        Err(other) => Err(other),
    }
}

struct Polished {
    zero: LocatedZero,
}

/// Refine a leaf box: start from the winding-weighted centroid, run damped
/// Newton on `f^(m-1)`, then certify the low-order derivatives.
fn polish<F: AnalyticFn + ?Sized>(
    f: &F,
    b: &BoxR,
    m: u32,
    centroid: Option<C64>,
) -> Result<Option<Polished>> {
    let m = m as usize;
    let mut z = match centroid {
        Some(c) if b.contains(c, 0.75) => c,
        _ => b.center(),
    };
    let cap = b.diam();
    let mut converged = false;
    for _ in 0..60 {
        let jet = f.jet_at(z, m)?;
        let g = jet.deriv(m - 1);
        let gp = jet.deriv(m);
        if gp.norm() == 0.0 {
            break;
        }
        let mut step = -g / gp;
        if step.norm() > cap {
            step *= cap / step.norm();
        }
        z += step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            converged = true;
            break;
        }
    }
    if !converged || !b.contains(z, 1.0) {
        return Ok(None);
    }
    let radius = b.diam() * 0.5;
    // certificate: |f^(j)(z)| against |f^(m)(z)| · radius^(m-j) / (m-j)!
    let jet = f.jet_at(z, m)?;
    let top = jet.deriv(m).norm();
    if top == 0.0 {
        return Ok(None);
    }
    let mut residual = 0.0f64;
    let mut fact = 1.0;
    let mut pw = 1.0;
    for j in (0..m).rev() {
        pw *= radius;
        fact *= (m - j) as f64;
        let scale = top * pw / fact;
        residual = residual.max(jet.deriv(j).norm() / scale);
    }
    if residual > 4.0 {
        return Ok(None);
    }
    Ok(Some(Polished {
        zero: LocatedZero {
            location: z,
            multiplicity: m as u32,
            enclosure_radius: radius,
            residual,
        },
    }))
}

/// Locate all zeros of `f` in a region by adaptive quadrisection.
pub fn locate_zeros<F: AnalyticFn + ?Sized>(
    f: &F,
    region: &Region,
    cfg: &RootFindConfig,
) -> Result<ZeroReport> {
    let rho = match (region.clip, f.domain()) {
        (Some(r), _) => Some(r),
        (None, Domain::UnitDisk) => Some(DEFAULT_CLIP),
        (None, Domain::Entire) => None,
    };

    let mut stats = TraversalStats::default();
    let mut zeros: Vec<LocatedZero> = Vec::new();
    let mut unresolved: Vec<UnresolvedBox> = Vec::new();
    let mut leaves: Vec<(BoxR, u32, Option<C64>)> = Vec::new();
    let mut stack: Vec<Task> = alloc::vec![Task::Uncounted(region.bounding_box(), 0)];

    while let Some(task) = stack.pop() {
        match task {
            Task::Uncounted(b, depth) => {
                if !region.intersects(&b) {
                    continue;
                }
                if stats.boxes_counted > cfg.box_budget {
                    return Err(Error::SearchBudgetExceeded {
                        boxes: stats.boxes_counted,
                    });
                }
                let fits = rho.is_none_or(|r| b.max_corner_norm() <= r);
                if !fits {
                    if depth >= cfg.blind_depth {
                        unresolved.push(UnresolvedBox {
                            lo: b.lo,
                            hi: b.hi,
                            count: None,
                            reason: UnresolvedReason::ClipStraddle,
                        });
                    } else {
                        for child in b.quarter(b.center()) {
                            stack.push(Task::Uncounted(child, depth + 1));
                        }
                    }
                    continue;
                }
                match count_box(f, &b, cfg, rho, true, &mut stats) {
                    Ok((_, out)) if out.count == 0 => {}
                    Ok((counted, out)) if out.count > 0 => {
                        stack.push(Task::Counted(
                            counted,
                            depth,
                            out.count as u32,
                            out.centroid,
                        ));
                    }
                    Ok((_, out)) => {
                        // negative winding: a pole inside (reciprocal exprs)
                        return Err(Error::WindingNotInteger {
                            value: out.count as f64,
                        });
                    }
                    Err(Error::Domain { z, reason }) => {
                        return Err(Error::Domain { z, reason });
                    }
                    Err(e) => {
                        // A vanishing contour means f is (numerically) the
                        // zero function there; subdividing cannot help.
                        let hopeless = matches!(
                            e,
                            Error::ZeroOnBoundary { max_abs, .. } if max_abs == 0.0
                        );
                        if hopeless || depth >= cfg.blind_depth {
                            unresolved.push(UnresolvedBox {
                                lo: b.lo,
                                hi: b.hi,
                                count: None,
                                reason: UnresolvedReason::Uncountable,
                            });
                        } else {
                            for child in b.quarter(b.center()) {
                                stack.push(Task::Uncounted(child, depth + 1));
                            }
                        }
                    }
                }
            }
            Task::Counted(b, depth, m, centroid) => {
                if b.diam() <= cfg.sep_tol {
                    leaves.push((b, m, centroid));
                    continue;
                }
                if depth >= cfg.max_depth {
                    unresolved.push(UnresolvedBox {
                        lo: b.lo,
                        hi: b.hi,
                        count: Some(m),
                        reason: UnresolvedReason::DepthLimit,
                    });
                    continue;
                }
                let mut split_done = false;
                'attempts: for attempt in 0..=cfg.max_jitter {
                    if attempt > 0 {
                        stats.split_retries += 1;
                    }
                    let children = b.quarter(b.split_point(attempt));
                    let mut outcomes = Vec::with_capacity(4);
                    for child in &children {
                        match count_box(f, child, cfg, rho, false, &mut stats) {
                            Ok((_, out)) if out.count >= 0 => outcomes.push(out),
                            _ => continue 'attempts,
                        }
                    }
                    let total: i64 = outcomes.iter().map(|o| o.count).sum();
                    if total != i64::from(m) {
                        // conservation violated at this split
                        continue 'attempts;
                    }
                    for (child, out) in children.iter().zip(outcomes) {
                        if out.count > 0 {
                            stack.push(Task::Counted(
                                *child,
                                depth + 1,
                                out.count as u32,
                                out.centroid,
                            ));
                        }
                    }
                    split_done = true;
                    break;
                }
                if !split_done {
                    stats.conservation_failures += 1;
                    unresolved.push(UnresolvedBox {
                        lo: b.lo,
                        hi: b.hi,
                        count: Some(m),
                        reason: UnresolvedReason::SplitAmbiguous,
                    });
                }
            }
        }
    }

    // Leaf boxes whose winding centroids nearly coincide hold one zero
    // cluster sliced by a split line (a multiple zero stored in floating
    // point is such a cluster): polish those groups as a unit, everything
    // else individually.
    let mut cluster_id: Vec<usize> = (0..leaves.len()).collect();
    loop {
        let mut changed = false;
        for i in 0..leaves.len() {
            for j in (i + 1)..leaves.len() {
                if cluster_id[i] == cluster_id[j] {
                    continue;
                }
                if let (Some(ci), Some(cj)) = (leaves[i].2, leaves[j].2) {
                    if (ci - cj).norm() <= 0.5 * cfg.sep_tol {
                        let (keep, drop) =
                            (cluster_id[i].min(cluster_id[j]), cluster_id[i].max(cluster_id[j]));
                        for id in cluster_id.iter_mut() {
                            if *id == drop {
                                *id = keep;
                            }
                        }
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut ids: Vec<usize> = cluster_id.clone();
    ids.sort_unstable();
    ids.dedup();
    for id in ids {
        let members: Vec<&(BoxR, u32, Option<C64>)> = leaves
            .iter()
            .zip(&cluster_id)
            .filter(|(_, cid)| **cid == id)
            .map(|(l, _)| l)
            .collect();
        let bbox = members.iter().skip(1).fold(members[0].0, |acc, l| BoxR {
            lo: C64::new(acc.lo.re.min(l.0.lo.re), acc.lo.im.min(l.0.lo.im)),
            hi: C64::new(acc.hi.re.max(l.0.hi.re), acc.hi.im.max(l.0.hi.im)),
        });
        let m: u32 = members.iter().map(|l| l.1).sum();
        let total = f64::from(m);
        let centroid = members
            .iter()
            .try_fold(C64::new(0.0, 0.0), |acc, l| {
                l.2.map(|c| acc + c * (f64::from(l.1) / total))
            });
        match polish(f, &bbox, m, centroid)? {
            Some(p) => zeros.push(p.zero),
            None => unresolved.push(UnresolvedBox {
                lo: bbox.lo,
                hi: bbox.hi,
                count: Some(m),
                reason: UnresolvedReason::PolishFailed,
            }),
        }
    }

    // keep only what lies in the requested region
    zeros.retain(|z| region.contains(z.location));
    unresolved.retain(|u| {
        region.intersects(&BoxR {
            lo: u.lo,
            hi: u.hi,
        })
    });

    // deterministic order
    zeros.sort_by(|a, b| {
        (a.location.re, a.location.im)
            .partial_cmp(&(b.location.re, b.location.im))
            .expect("finite")
    });
    unresolved.sort_by(|a, b| {
        (a.lo.re, a.lo.im)
            .partial_cmp(&(b.lo.re, b.lo.im))
            .expect("finite")
    });

    // a zero in the overlap sliver of a jittered box and its neighbor gets
    // polished twice to the same point; keep one copy
    let mut deduped: Vec<LocatedZero> = Vec::with_capacity(zeros.len());
    for z in zeros {
        match deduped.last_mut() {
            Some(prev)
                if (prev.location - z.location).norm() <= 1e-3 * cfg.sep_tol
                    && prev.multiplicity == z.multiplicity =>
            {
                prev.enclosure_radius = prev.enclosure_radius.min(z.enclosure_radius);
            }
            _ => deduped.push(z),
        }
    }
    let mut zeros = deduped;

    // enclosures must not overlap; shrink where neighbors collide
    for i in 0..zeros.len() {
        for j in (i + 1)..zeros.len() {
            let gap = (zeros[i].location - zeros[j].location).norm();
            if gap == 0.0 {
                continue;
            }
            if zeros[i].enclosure_radius + zeros[j].enclosure_radius >= gap {
                let r = gap * 0.49;
                zeros[i].enclosure_radius = zeros[i].enclosure_radius.min(r);
                zeros[j].enclosure_radius = zeros[j].enclosure_radius.min(r);
            }
        }
    }

    let total_count = zeros.iter().map(|z| i64::from(z.multiplicity)).sum::<i64>()
        + unresolved
            .iter()
            .filter_map(|u| u.count)
            .map(i64::from)
            .sum::<i64>();

    Ok(ZeroReport {
        zeros,
        unresolved,
        total_count,
        warnings: Vec::new(),
        stats,
    })
}

/// The exceptional set of a family: all zeros of `W(f_0, ..., f_n)` in the
/// region. Emits a warning when the Wronskian is tiny everywhere sampled
/// (suspected linearly dependent family).
pub fn exceptional_set(
    funcs: &[FuncExpr],
    region: &Region,
    cfg: &RootFindConfig,
) -> Result<ZeroReport> {
    let wf = WronskianFn::new(funcs)?;

    // dependence scan over a coarse grid
    let b = region.bounding_box();
    let mut max_abs = 0.0f64;
    let mut scale = 0.0f64;
    let rho = region.clip.unwrap_or(DEFAULT_CLIP);
    for i in 0..8 {
        for j in 0..8 {
            let z = C64::new(
                b.lo.re + (i as f64 + 0.5) / 8.0 * (b.hi.re - b.lo.re),
                b.lo.im + (j as f64 + 0.5) / 8.0 * (b.hi.im - b.lo.im),
            );
            if !region.contains(z) || (wf.domain() == Domain::UnitDisk && z.norm() > rho) {
                continue;
            }
            let m = wronskian_matrix(funcs, z)?;
            max_abs = max_abs.max(crate::wronskian::det_in(&m.entries).norm());
            scale = scale.max(m.hadamard_bound());
        }
    }

    if max_abs < 1e-12 * scale {
        // W vanishes identically to working precision: localization is
        // meaningless, report the whole region as unresolved instead.
        let bb = region.bounding_box();
        return Ok(ZeroReport {
            zeros: Vec::new(),
            unresolved: alloc::vec![UnresolvedBox {
                lo: bb.lo,
                hi: bb.hi,
                count: None,
                reason: UnresolvedReason::Uncountable,
            }],
            total_count: 0,
            warnings: alloc::vec![ReportWarning::SuspectedDependentFamily { max_abs, scale }],
            stats: TraversalStats::default(),
        });
    }

    let mut report = locate_zeros(&wf, region, cfg)?;
    if max_abs < 1e-12 * scale {
        report
            .warnings
            .push(ReportWarning::SuspectedDependentFamily { max_abs, scale });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn count_double_zero_in_disk() {
        let f = FuncExpr::monomial(2);
        let region = Region::disk(c(0.0, 0.0), 0.5).unwrap();
        assert_eq!(count_zeros(&f, &region, 32).unwrap(), 2);
    }

    #[test]
    fn exp_is_zero_free() {
        let f = FuncExpr::exp_atom(c(1.0, 0.0));
        let region = Region::disk(c(0.0, 0.0), 1.0).unwrap();
        assert_eq!(count_zeros(&f, &region, 32).unwrap(), 0);
    }

    #[test]
    fn count_simple_zero_in_rect() {
        // W(1, z²) = 2z
        let f = FuncExpr::scale(FuncExpr::monomial(1), c(2.0, 0.0));
        let region = Region::rect(c(-0.5, -0.5), c(0.5, 0.5)).unwrap();
        assert_eq!(count_zeros(&f, &region, 32).unwrap(), 1);
    }

    #[test]
    fn zero_on_boundary_is_rejected() {
        let f = FuncExpr::monomial(1);
        // zero at 0 sits on the left edge: either the |f| guard or the
        // non-integer winding has to fire
        let region = Region::rect(c(0.0, -0.5), c(1.0, 0.5)).unwrap();
        assert!(matches!(
            count_zeros(&f, &region, 32),
            Err(Error::ZeroOnBoundary { .. }) | Err(Error::WindingNotInteger { .. })
        ));
    }

    #[test]
    fn locate_double_zero_of_wronskian_family() {
        // W(1, z², z³) = 6z²: one zero at 0 of multiplicity 2
        let fam = alloc::vec![
            FuncExpr::monomial(0),
            FuncExpr::monomial(2),
            FuncExpr::monomial(3),
        ];
        let wf = WronskianFn::new(&fam).unwrap();
        let region = Region::disk(c(0.0, 0.0), 0.8).unwrap();
        let report = locate_zeros(&wf, &region, &RootFindConfig::default()).unwrap();
        assert_eq!(report.zeros.len(), 1);
        assert_eq!(report.zeros[0].multiplicity, 2);
        assert!(report.zeros[0].location.norm() < 1e-8);
        assert!(report.unresolved.is_empty());
        assert_eq!(report.total_count, 2);
        assert_eq!(report.stats.conservation_failures, 0);
    }

    #[test]
    fn locate_two_simple_zeros() {
        // (z - 0.3)(z + 0.4i)
        let f = FuncExpr::product(alloc::vec![
            FuncExpr::polynomial(alloc::vec![c(-0.3, 0.0), c(1.0, 0.0)]),
            FuncExpr::polynomial(alloc::vec![c(0.0, 0.4), c(1.0, 0.0)]),
        ]);
        let region = Region::rect(c(-1.0, -1.0), c(1.0, 1.0)).unwrap();
        let report = locate_zeros(&f, &region, &RootFindConfig::default()).unwrap();
        assert_eq!(report.zeros.len(), 2);
        assert_eq!(report.total_count, 2);
        let locs: Vec<C64> = report.zeros.iter().map(|z| z.location).collect();
        assert!(locs.iter().any(|z| (z - c(0.3, 0.0)).norm() < 1e-9));
        assert!(locs.iter().any(|z| (z - c(0.0, -0.4)).norm() < 1e-9));
        assert!(report.zeros.iter().all(|z| z.multiplicity == 1));
    }

    #[test]
    fn zero_free_function_gives_empty_report() {
        let f = FuncExpr::constant(c(5.0, 0.0));
        let region = Region::rect(c(-1.0, -1.0), c(1.0, 1.0)).unwrap();
        let report = locate_zeros(&f, &region, &RootFindConfig::default()).unwrap();
        assert!(report.zeros.is_empty());
        assert!(report.unresolved.is_empty());
        assert_eq!(report.total_count, 0);
    }

    #[test]
    fn exceptional_set_of_one_z2() {
        let fam = alloc::vec![FuncExpr::monomial(0), FuncExpr::monomial(2)];
        let region = Region::disk(c(0.0, 0.0), 0.9).unwrap();
        let report = exceptional_set(&fam, &region, &RootFindConfig::default()).unwrap();
        assert_eq!(report.zeros.len(), 1);
        assert_eq!(report.zeros[0].multiplicity, 1);
        assert!(report.zeros[0].location.norm() < 1e-9);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn exceptional_set_of_powers_family_is_empty() {
        let fam = alloc::vec![
            FuncExpr::monomial(0),
            FuncExpr::monomial(1),
            FuncExpr::monomial(2),
        ];
        let region = Region::disk(c(0.0, 0.0), 0.9).unwrap();
        let report = exceptional_set(&fam, &region, &RootFindConfig::default()).unwrap();
        assert!(report.zeros.is_empty());
        assert_eq!(report.total_count, 0);
    }

    #[test]
    fn exceptional_set_of_exponential_pair_is_empty() {
        let fam = alloc::vec![
            FuncExpr::exp_atom(c(-1.0, 0.0)),
            FuncExpr::exp_atom(c(1.0, 0.0)),
        ];
        let region = Region::disk(c(0.0, 0.0), 2.0).unwrap();
        let report = exceptional_set(&fam, &region, &RootFindConfig::default()).unwrap();
        assert!(report.zeros.is_empty());
        assert_eq!(report.total_count, 0);
    }

    #[test]
    fn dependent_family_raises_warning() {
        // repeated member: W ≡ 0
        let fam = alloc::vec![FuncExpr::monomial(1), FuncExpr::monomial(1)];
        let region = Region::disk(c(0.0, 0.0), 0.5).unwrap();
        let report = exceptional_set(&fam, &region, &RootFindConfig::default()).unwrap();
        assert!(matches!(
            report.warnings.first(),
            Some(ReportWarning::SuspectedDependentFamily { .. })
        ));
    }

    #[test]
    fn derivative_consistency_square_doubles_count() {
        // count(f²) = 2 · count(f) through the jet-based integrand
        let f = FuncExpr::polynomial(alloc::vec![c(-0.2, 0.1), c(1.0, 0.0)]);
        let f2 = FuncExpr::power(f.clone(), 2);
        let region = Region::disk(c(0.0, 0.0), 1.0).unwrap();
        let n1 = count_zeros(&f, &region, 32).unwrap();
        let n2 = count_zeros(&f2, &region, 32).unwrap();
        assert_eq!(n1, 1);
        assert_eq!(n2, 2);
    }
}
