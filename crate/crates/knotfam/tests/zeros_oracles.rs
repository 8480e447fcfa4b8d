use knotfam::zeros::{roots, zero_sum, RESIDUAL_TOL};
use knotfam::LaurentPoly1;
use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use proptest::prelude::*;

/// Eigenvalues of the companion matrix of `a_0 + ... + a_n x^n`, if the Schur iteration converges.
fn companion_roots(c: &[i64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n] as f64;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -(c[i] as f64) / lead;
    }
    let schur = Schur::try_new(m, 1e-15, 10_000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

fn arb_coeffs() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=8).prop_flat_map(|n| {
        (prop::collection::vec(-5i64..=5, n - 1), prop_oneof![-5i64..=-1, 1i64..=5], prop_oneof![-5i64..=-1, 1i64..=5])
            .prop_map(|(mid, a0, an)| [vec![a0], mid, vec![an]].concat())
    })
}

fn min_gap(z: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            g = g.min((z[i] - z[j]).norm());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_companion_eigenvalues(c in arb_coeffs()) {
        let oracle = companion_roots(&c);
        prop_assume!(oracle.is_some());
        let oracle = oracle.unwrap();
        prop_assume!(min_gap(&oracle) > 1e-3);
        let z = roots(&LaurentPoly1::from_coeffs(&c)).unwrap();
        prop_assert_eq!(z.roots.len(), c.len() - 1);
        let mut used = vec![false; oracle.len()];
        for r in &z.roots {
            let (k, d) = oracle
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, o)| (k, (o - r).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            prop_assert!(d < 1e-7, "root {} is {} from the nearest eigenvalue; {:?}", r, d, c);
            used[k] = true;
        }
    }

    #[test]
    fn vieta_and_conjugate_pairs(c in arb_coeffs()) {
        let z = roots(&LaurentPoly1::from_coeffs(&c)).unwrap();
        prop_assert!(z.max_residual() < RESIDUAL_TOL);
        let n = c.len() - 1;
        let (an, a0) = (c[n] as f64, c[0] as f64);
        let sum: Complex64 = z.roots.iter().sum();
        let prod: Complex64 = z.roots.iter().product();
        let want_sum = -(c[n - 1] as f64) / an;
        let want_prod = if n % 2 == 0 { a0 / an } else { -a0 / an };
        prop_assert!((sum - want_sum).norm() < 1e-6 * (1.0 + want_sum.abs()), "sum {} vs {}", sum, want_sum);
        prop_assert!((prod - want_prod).norm() < 1e-6 * (1.0 + want_prod.abs()), "product {} vs {}", prod, want_prod);
        for r in z.roots.iter().filter(|r| r.im.abs() > 1e-8) {
            let partner = z.roots.iter().map(|s| (s - r.conj()).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(partner < 1e-8, "no conjugate for {}", r);
        }
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) * f(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn trefoil_cubic_against_bisection() {
    // Normalized trefoil Jones polynomial x^3 - x^2 - 1.
    let p: LaurentPoly1 = "x^3 - x^2 - 1".parse().unwrap();
    let real = bisect(|x| x * x * x - x * x - 1.0, 1.0, 2.0);
    assert!((real - 1.465571).abs() < 1e-6);
    let z = roots(&p).unwrap();
    let reals: Vec<_> = z.roots.iter().filter(|r| r.im == 0.0).collect();
    assert_eq!(reals.len(), 1);
    assert!((reals[0].re - real).abs() < 1e-12);
    // Product of the roots is 1, so the complex pair has modulus 1/sqrt(real).
    let want = real + 2.0 / real.sqrt();
    assert!((zero_sum(&z) - want).abs() < 1e-10, "{} vs {}", zero_sum(&z), want);
}

#[test]
fn unit_shift_does_not_move_zeros() {
    let a = roots(&"x^3 - x^2 - 1".parse().unwrap()).unwrap();
    let b = roots(&"-x^-2 + x^-3 + x^-5".parse().unwrap()).unwrap();
    assert_eq!(a.roots, b.roots);
}

#[test]
fn large_coefficients_still_converge() {
    let c: Vec<i64> = (0..12).map(|i| if i % 2 == 0 { 1 << 55 } else { -(1i64 << 54) + i }).collect();
    let z = roots(&LaurentPoly1::from_coeffs(&c)).unwrap();
    assert_eq!(z.roots.len(), 11);
    assert!(z.max_residual() < RESIDUAL_TOL);
}
