//! Determinant identities against the brute-force symbolic oracle, and the
//! structural Wronskian properties.

mod common;

use common::{c, rand_poly};
use deepzero_core::rng::Rng64;
use deepzero_core::wronskian::{
    cofactor_expansion_check, closed_form_wronskian, deep_zero_coefficients,
    replacement_identity_check, verify_deep_zero, wronskian_matrix, wronskian_value,
    ClosedFormFamily,
};
use deepzero_core::{FuncExpr, C64};
use deepzero_testkit::sympoly::{self, Poly};

fn expr_poly_coeffs(f: &FuncExpr) -> Poly {
    // recover polynomial coefficients from a deep jet at the origin
    let order = 28;
    let jet = f.eval_jet(c(0.0, 0.0), order).unwrap();
    let mut fact = 1.0;
    let coeffs: Vec<C64> = (0..=order)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            jet.deriv(k) / fact
        })
        .collect();
    Poly(coeffs)
}

/// The symbolic-oracle validation of the monomial Wronskian constant:
/// `W(z^{d_0},...,z^{d_n}) = C z^D` with `C = ∏_{i<j}(d_j - d_i)` and
/// `D = Σ d_j - n(n+1)/2`, checked coefficientwise for every increasing
/// exponent tuple with n <= 3, d <= 9.
#[test]
fn monomial_constant_formula_validated_by_symbolic_oracle() {
    let mut cases = 0;
    for n in 1..=3usize {
        // enumerate increasing tuples
        let mut tuple: Vec<u32> = (0..=n as u32).collect();
        loop {
            let fam: Vec<Poly> = tuple.iter().map(|&d| Poly::monomial(d as usize)).collect();
            let w = sympoly::wronskian(&fam);

            let closed = closed_form_wronskian(&ClosedFormFamily::Monomials {
                degrees: tuple.clone(),
            })
            .unwrap();
            let closed_poly = expr_poly_coeffs(&closed);
            assert!(
                w.approx_eq(&closed_poly, 1e-12),
                "mismatch at exponents {tuple:?}: oracle {w:?}"
            );
            cases += 1;

            // next increasing tuple with max exponent 9
            let mut i = n;
            loop {
                tuple[i] += 1;
                let max_ok = tuple[i] <= 9 - (n - i) as u32;
                if max_ok {
                    for j in i + 1..=n {
                        tuple[j] = tuple[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    break;
                }
                i -= 1;
            }
            if tuple[0] > 9 - n as u32 {
                break;
            }
        }
    }
    assert!(cases > 100, "only {cases} tuples enumerated");
}

#[test]
fn expsum_constant_is_the_vandermonde_product() {
    // symbolic reduction: factoring e^{μ_j z} out of each column leaves the
    // Vandermonde matrix (μ_j^k), so the constant is det V = ∏_{i<j}(μ_j-μ_i)
    let mut rng = Rng64::seed_from(42);
    for _ in 0..50 {
        let n = 1 + (rng.next_u64() % 4) as usize;
        let mus: Vec<C64> = (0..=n).map(|_| rng.in_square(3.0)).collect();
        if (0..mus.len()).any(|i| (i + 1..mus.len()).any(|j| (mus[i] - mus[j]).norm() < 1e-3)) {
            continue;
        }
        let mut vandermonde: Vec<Vec<C64>> = Vec::new();
        for k in 0..=n {
            vandermonde.push(mus.iter().map(|m| m.powu(k as u32)).collect());
        }
        let det = deepzero_core::wronskian::det_in(&vandermonde);
        let mut prod = c(1.0, 0.0);
        for i in 0..mus.len() {
            for j in i + 1..mus.len() {
                prod *= mus[j] - mus[i];
            }
        }
        assert!(
            (det - prod).norm() <= 1e-9 * prod.norm().max(1.0),
            "vandermonde {det} vs product {prod}"
        );
    }
}

#[test]
fn powers_and_prepend_closed_forms_validated_symbolically() {
    let mut rng = Rng64::seed_from(1234);
    for _ in 0..30 {
        let f = rand_poly(&mut rng, 4, 1.0);
        let fp = expr_poly_coeffs(&f);

        // powers family {1, f, ..., f^n}: W = c_n (f')^{n(n+1)/2}
        for n in 1..=3u32 {
            let fam: Vec<Poly> = (0..=n).map(|k| fp.pow(k)).collect();
            let w = sympoly::wronskian(&fam);
            let closed =
                closed_form_wronskian(&ClosedFormFamily::Powers { base: f.clone(), n }).unwrap();
            let closed_poly = expr_poly_coeffs(&closed);
            assert!(
                w.approx_eq(&closed_poly, 1e-9),
                "powers mismatch n={n} for {fp:?}"
            );
        }

        // prepend family {1, z/1!, ..., z^{n-1}/(n-1)!, f}: W = f^(n)
        for n in 1..=4u32 {
            let mut fam: Vec<Poly> = Vec::new();
            let mut inv_fact = 1.0;
            for k in 0..n {
                if k > 0 {
                    inv_fact /= k as f64;
                }
                fam.push(Poly::monomial(k as usize).scale(c(inv_fact, 0.0)));
            }
            fam.push(fp.clone());
            let w = sympoly::wronskian(&fam);
            let expect = fp.derivative_n(n as usize);
            assert!(w.approx_eq(&expect, 1e-10), "prepend mismatch n={n}");
        }
    }
}

#[test]
fn closed_forms_match_numeric_wronskian_at_random_points() {
    let mut rng = Rng64::seed_from(99);
    let fams = [
        ClosedFormFamily::Monomials {
            degrees: vec![0, 2, 5, 9],
        },
        ClosedFormFamily::ExpSum {
            frequencies: vec![c(0.0, 0.0), c(1.0, -0.5), c(-0.7, 0.3)],
        },
        ClosedFormFamily::Powers {
            base: FuncExpr::poly_re(&[0.3, 1.0, -0.5, 0.2]),
            n: 3,
        },
        ClosedFormFamily::PrependPoly {
            f: FuncExpr::poly_re(&[1.0, -2.0, 0.0, 0.5, 0.25]),
            n: 3,
        },
    ];
    for fam in &fams {
        let members = fam.members().unwrap();
        let closed = closed_form_wronskian(fam).unwrap();
        for _ in 0..100 {
            let mut z = rng.in_square(1.0);
            if matches!(fam, ClosedFormFamily::Monomials { .. }) && z.norm() < 0.05 {
                z += c(0.3, 0.0);
            }
            let numeric = wronskian_value(&members, z).unwrap();
            let exact = closed.eval(z).unwrap();
            assert!(
                (numeric - exact).norm() <= 1e-9 * exact.norm().max(1e-6),
                "at {z}: numeric {numeric} vs closed {exact} for {fam:?}"
            );
        }
    }
}

#[test]
fn antisymmetry_under_column_swap() {
    let mut rng = Rng64::seed_from(7);
    for _ in 0..40 {
        let mut fam: Vec<FuncExpr> = (0..4).map(|_| rand_poly(&mut rng, 4, 1.0)).collect();
        let z = rng.in_square(1.0);
        let w = wronskian_value(&fam, z).unwrap();
        fam.swap(1, 3);
        let swapped = wronskian_value(&fam, z).unwrap();
        assert!(
            (w + swapped).norm() <= 1e-12 * w.norm().max(1.0),
            "{w} vs {swapped}"
        );
    }
}

#[test]
fn degenerate_family_vanishes_everywhere() {
    let mut rng = Rng64::seed_from(11);
    let f = rand_poly(&mut rng, 3, 1.0);
    let fam = vec![f.clone(), rand_poly(&mut rng, 3, 1.0), f];
    for _ in 0..100 {
        let z = rng.in_square(1.5);
        let m = wronskian_matrix(&fam, z).unwrap();
        let w = deepzero_core::wronskian::det_in(&m.entries);
        assert!(w.norm() <= 1e-10 * m.hadamard_bound().max(1e-300));
    }
}

#[test]
fn duality_between_determinant_and_nullspace() {
    // deep_zero_coefficients finds a vector exactly when |W| is tiny against
    // the Hadamard scale, and every returned vector passes verification
    let mut rng = Rng64::seed_from(2024);
    let tol = 1e-8;
    let mut found = 0;
    for case in 0..200u32 {
        let (fam, z): (Vec<FuncExpr>, C64) = if case.is_multiple_of(10) {
            // crafted singular instances
            (
                vec![FuncExpr::monomial(0), FuncExpr::monomial(case % 3 + 2)],
                c(0.0, 0.0),
            )
        } else {
            let n = 1 + (rng.next_u64() % 3) as usize;
            (
                (0..=n).map(|_| rand_poly(&mut rng, 3, 1.0)).collect(),
                rng.in_square(1.0),
            )
        };
        let m = wronskian_matrix(&fam, z).unwrap();
        let w = deepzero_core::wronskian::det_in(&m.entries).norm();
        let small = w < tol * m.hadamard_bound().max(1e-300);
        let sol = deep_zero_coefficients(&fam, z, tol).unwrap();
        assert_eq!(
            sol.is_some(),
            small,
            "case {case}: |W| = {w:.3e}, hadamard {:.3e}",
            m.hadamard_bound()
        );
        if let Some(sol) = sol {
            found += 1;
            let check = verify_deep_zero(&fam, &sol.lambda, z, 1e-9).unwrap();
            assert!(check.pass, "residual {}", check.residual_norm);
        }
    }
    assert!(found >= 20, "crafted singular cases all found: {found}");
}

#[test]
fn replacement_identity_on_random_families() {
    let mut rng = Rng64::seed_from(31);
    for _ in 0..100 {
        let n = 1 + (rng.next_u64() % 3) as usize;
        // triangular leading terms keep the family independent, so the
        // identity's relative residual is meaningful
        let fam: Vec<FuncExpr> = (0..=n)
            .map(|j| {
                FuncExpr::sum(vec![
                    FuncExpr::monomial(j as u32),
                    FuncExpr::scale(rand_poly(&mut rng, j.max(1), 1.0), c(0.3, 0.0)),
                ])
            })
            .collect();
        let lambda: Vec<C64> = (0..=n).map(|_| rng.in_square(1.0) + c(0.1, 0.1)).collect();
        let k = (rng.next_u64() as usize) % (n + 1);
        let z = rng.in_square(1.0);
        let r = replacement_identity_check(&fam, &lambda, k, z).unwrap();
        assert!(r <= 1e-10, "residual {r}");
    }
}

#[test]
fn cofactor_expansion_on_random_families() {
    let mut rng = Rng64::seed_from(37);
    for _ in 0..50 {
        let fam: Vec<FuncExpr> = (0..3).map(|_| rand_poly(&mut rng, 3, 1.0)).collect();
        let g = rand_poly(&mut rng, 4, 1.0);
        let k = (rng.next_u64() as usize) % 3;
        let z = rng.in_square(1.0);
        let r = cofactor_expansion_check(&fam, &g, k, z).unwrap();
        assert!(r <= 1e-10, "residual {r}");
    }
}
