//! Shared generators for the property suites.

#![allow(dead_code)]

use deepzero_core::rng::Rng64;
use deepzero_core::{FuncExpr, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Random complex in the square `[-h, h]²`.
pub fn rand_c(rng: &mut Rng64, h: f64) -> C64 {
    rng.in_square(h)
}

/// Random polynomial of degree up to `max_deg` with coefficients in the
/// square of half-width `h`. Leading coefficient kept away from zero.
pub fn rand_poly(rng: &mut Rng64, max_deg: usize, h: f64) -> FuncExpr {
    let deg = 1 + (rng.next_u64() as usize) % max_deg.max(1);
    let mut coeffs: Vec<C64> = (0..=deg).map(|_| rand_c(rng, h)).collect();
    let lead = coeffs.last_mut().unwrap();
    if lead.norm() < 0.2 {
        *lead += c(0.5, 0.0);
    }
    FuncExpr::polynomial(coeffs)
}

/// Coefficients (ascending degree) of the monic polynomial with the given
/// roots.
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut coeffs = vec![c(1.0, 0.0)];
    for r in roots {
        let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
        for (i, &a) in coeffs.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Random expression tree. Entire variants only when `entire` is set,
/// otherwise Blaschke factors and singular atoms may appear. Sized for
/// finite-difference comparison at points `|z| <= 0.45`.
pub fn rand_expr(rng: &mut Rng64, depth: usize, entire: bool) -> FuncExpr {
    let leaf = depth == 0;
    let pick = rng.next_u64() % if leaf { 4 } else { 9 };
    match pick {
        0 => FuncExpr::monomial((rng.next_u64() % 7) as u32),
        1 => rand_poly(rng, 4, 1.5),
        2 => FuncExpr::exp_atom(rand_c(rng, 1.2)),
        3 => {
            if entire {
                rand_poly(rng, 3, 1.0)
            } else if rng.next_u64().is_multiple_of(2) {
                FuncExpr::blaschke_factor(rng.in_disk(0.6)).unwrap()
            } else {
                FuncExpr::singular_atom(rng.range(-1.0, 1.0), rng.range(0.1, 1.2)).unwrap()
            }
        }
        4 => FuncExpr::sum(vec![
            rand_expr(rng, depth - 1, entire),
            rand_expr(rng, depth - 1, entire),
        ]),
        5 => FuncExpr::product(vec![
            rand_expr(rng, depth - 1, entire),
            rand_expr(rng, depth - 1, entire),
        ]),
        6 => FuncExpr::power(rand_expr(rng, depth - 1, entire), (rng.next_u64() % 4) as u32),
        7 => FuncExpr::scale(rand_expr(rng, depth - 1, entire), rand_c(rng, 1.5)),
        _ => FuncExpr::shift_arg(
            rand_expr(rng, depth - 1, entire),
            rand_c(rng, 0.8) + c(0.3, 0.0),
            rand_c(rng, 0.2),
        ),
    }
}
