//! Pseudohyperbolic geometry of the unit disk.
//!
//! Stolz angles (nontangential approach cones), sublevel sets
//! `Ω(h, ε) = {|h| < ε}` of bounded functions represented as sample clouds,
//! the disk-inside-level-set containment check behind the derivative-decay
//! machinery, and an outer estimate of the boundary spectrum of an inner
//! function from radial probes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expr::{unit_point, FuncExpr};
use crate::inner::InnerSpec;
use crate::rng::Rng64;
use crate::C64;

/// Default radial cap for disk grids; singular atoms overflow past it.
pub const DEFAULT_GRID_CAP: f64 = 1.0 - 1e-6;

/// `ρ(z, w) = |(z - w)/(1 - w̄ z)|`, the pseudohyperbolic distance.
/// Both points must be strictly inside the disk.
pub fn pseudo_distance(z: C64, w: C64) -> Result<f64> {
    if z.norm() >= 1.0 {
        return Err(Error::OutsideDisk { z });
    }
    if w.norm() >= 1.0 {
        return Err(Error::OutsideDisk { z: w });
    }
    Ok(((z - w) / (C64::new(1.0, 0.0) - w.conj() * z)).norm())
}

/// The cone `Γ_M(ζ) = {z ∈ 𝔻 : |ζ - z| <= M (1 - |z|)}` with vertex on the
/// circle and aperture `M > 1`.
#[derive(Clone, Copy, Debug)]
pub struct StolzAngle {
    /// Vertex angle over π.
    pub vertex_t: f64,
    pub aperture: f64,
}

impl StolzAngle {
    pub fn new(vertex_t: f64, aperture: f64) -> Result<StolzAngle> {
        if !(aperture > 1.0) {
            return Err(Error::InvalidParam("stolz aperture must exceed 1".into()));
        }
        if !vertex_t.is_finite() {
            return Err(Error::InvalidParam("stolz vertex angle must be finite".into()));
        }
        Ok(StolzAngle {
            vertex_t: crate::expr::reduce_angle_t(vertex_t),
            aperture,
        })
    }

    pub fn vertex(&self) -> C64 {
        unit_point::<f64>(self.vertex_t)
    }

    /// Membership test `|ζ - z| <= M (1 - |z|)`.
    pub fn contains(&self, z: C64) -> bool {
        (self.vertex() - z).norm() <= self.aperture * (1.0 - z.norm())
    }

    /// Half-width of the admissible angle window at radius `r`, from
    /// `|ζ - r e^{iφ}|² = 1 + r² - 2r cos(φ - arg ζ)`. `None` when the slice
    /// is empty.
    pub fn angle_half_width(&self, r: f64) -> Option<f64> {
        if r <= 0.0 || r >= 1.0 {
            return None;
        }
        let m = self.aperture;
        let cos_bound = (1.0 + r * r - m * m * (1.0 - r) * (1.0 - r)) / (2.0 * r);
        if cos_bound > 1.0 {
            None
        } else {
            Some(libm::acos(cos_bound.max(-1.0)))
        }
    }
}

/// `Ω(h, ε) = {z ∈ 𝔻 : |h(z)| < ε}` for a bounded `h` (sup norm at most 1,
/// caller-asserted and spot-checked by the samplers).
#[derive(Clone, Debug)]
pub struct LevelSetSpec {
    pub h: FuncExpr,
    pub eps: f64,
}

impl LevelSetSpec {
    pub fn new(h: FuncExpr, eps: f64) -> Result<LevelSetSpec> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParam("level must be in (0, 1)".into()));
        }
        Ok(LevelSetSpec { h, eps })
    }

    /// Same set at half the level, the inner companion of Ω(h, ε).
    pub fn halved(&self) -> LevelSetSpec {
        LevelSetSpec {
            h: self.h.clone(),
            eps: self.eps * 0.5,
        }
    }

    pub fn contains(&self, z: C64) -> Result<bool> {
        Ok(self.h.eval(z)?.norm() < self.eps)
    }
}

/// A grid point of a level set together with `|h|` there.
#[derive(Clone, Copy, Debug)]
pub struct LevelPoint {
    pub z: C64,
    pub abs_h: f64,
}

/// A sampled level set: the points of a polar grid where `|h| < ε`.
#[derive(Clone, Debug)]
pub struct LevelCloud {
    pub points: Vec<LevelPoint>,
    /// Grid points where evaluation failed (skipped, counted).
    pub skipped: usize,
}

/// Sample `Ω(h, ε)` on a polar grid: `radial` radii up to `r_cap`, `angular`
/// equispaced angles (plus the origin).
pub fn level_set_sample(
    spec: &LevelSetSpec,
    radial: usize,
    angular: usize,
    r_cap: f64,
) -> Result<LevelCloud> {
    if radial < 2 || angular < 2 {
        return Err(Error::InvalidParam("grid resolutions must be >= 2".into()));
    }
    if !(r_cap > 0.0 && r_cap < 1.0) {
        return Err(Error::InvalidParam("radial cap must be in (0, 1)".into()));
    }
    let mut points = Vec::new();
    let mut skipped = 0usize;
    let mut consider = |z: C64, points: &mut Vec<LevelPoint>| {
        match spec.h.eval(z) {
            Ok(v) => {
                let abs_h = v.norm();
                if abs_h < spec.eps {
                    points.push(LevelPoint { z, abs_h });
                }
            }
            Err(_) => skipped += 1,
        }
    };
    consider(C64::new(0.0, 0.0), &mut points);
    for k in 1..=radial {
        let r = r_cap * k as f64 / radial as f64;
        for j in 0..angular {
            let th = core::f64::consts::TAU * j as f64 / angular as f64;
            consider(C64::from_polar(r, th), &mut points);
        }
    }
    Ok(LevelCloud { points, skipped })
}

/// Result of the randomized level-set containment check.
#[derive(Clone, Copy, Debug)]
pub struct ContainmentReport {
    pub violations: usize,
    pub tested: usize,
}

/// Randomized check of the containment `B(z, (ε/4)(1-|z|)) ⊆ Ω(h, ε)` for
/// `z ∈ Ω(h, ε/2)`: draw `z` uniformly in the disk until `|h(z)| < ε/2`,
/// then a uniform `w` in the small ball, and count `|h(w)| >= ε`.
///
/// For `h` with sup norm at most 1 the count is provably zero; a nonzero
/// count means `h` was out of contract (or a bug).
pub fn levset_containment_check(
    spec: &LevelSetSpec,
    samples: usize,
    seed: u64,
) -> Result<ContainmentReport> {
    let mut rng = Rng64::seed_from(seed);
    let mut tested = 0usize;
    let mut violations = 0usize;
    let mut draws = 0usize;
    let draw_budget = samples.saturating_mul(2000).max(100_000);
    while tested < samples && draws < draw_budget {
        draws += 1;
        let z = rng.in_disk(1.0 - 1e-9);
        let hz = match spec.h.eval(z) {
            Ok(v) => v.norm(),
            Err(_) => continue,
        };
        if hz >= spec.eps * 0.5 {
            continue;
        }
        let radius = spec.eps * 0.25 * (1.0 - z.norm());
        let w = z + rng.in_disk(radius);
        let hw = match spec.h.eval(w) {
            Ok(v) => v.norm(),
            Err(_) => continue,
        };
        tested += 1;
        if hw >= spec.eps {
            violations += 1;
        }
    }
    Ok(ContainmentReport { violations, tested })
}

/// A closed arc of the circle, in angle-over-π coordinates, running
/// counterclockwise from `t_start` to `t_end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitArc {
    pub t_start: f64,
    pub t_end: f64,
}

impl UnitArc {
    pub fn length_t(&self) -> f64 {
        self.t_end - self.t_start
    }
}

/// Outer estimate of the boundary spectrum of an inner function: the arcs of
/// the circle whose deep radial probes (radius `1 - 2^{-resolution}`) still
/// see `|θ| < eps`. Marked grid cells are widened by half a cell on each
/// side and merged, so the result over-covers.
pub fn boundary_spectrum_estimate(
    theta: &InnerSpec,
    eps: f64,
    resolution: u32,
) -> Result<Vec<UnitArc>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParam("level must be in (0, 1)".into()));
    }
    if resolution == 0 || resolution > 48 {
        return Err(Error::InvalidParam("resolution must be in 1..=48".into()));
    }
    let cells: usize = (1usize << resolution.min(13)).max(64);
    let r = 1.0 - libm::exp2(-f64::from(resolution));
    let mut marked = Vec::with_capacity(cells);
    for j in 0..cells {
        // angle over π in (-1, 1]
        let t = 2.0 * j as f64 / cells as f64 - 1.0;
        let z = unit_point::<f64>(t) * r;
        let v = theta.eval(z)?;
        marked.push(v.norm() < eps);
    }
    let half_cell = 1.0 / cells as f64;

    // merge consecutive marked cells (with wraparound)
    let mut arcs: Vec<UnitArc> = Vec::new();
    let mut j = 0usize;
    while j < cells {
        if !marked[j] {
            j += 1;
            continue;
        }
        let start = j;
        while j < cells && marked[j] {
            j += 1;
        }
        let end = j - 1;
        let t_of = |idx: usize| 2.0 * idx as f64 / cells as f64 - 1.0;
        arcs.push(UnitArc {
            t_start: t_of(start) - half_cell,
            t_end: t_of(end) + half_cell,
        });
    }
    // stitch wraparound: last arc ending at t = 1 meets first starting at -1
    if arcs.len() >= 2 {
        let wraps = marked[0] && marked[cells - 1];
        if wraps {
            let first = arcs.remove(0);
            let last = arcs.last_mut().expect("nonempty");
            last.t_end = first.t_end + 2.0;
        }
    }
    Ok(arcs)
}
