use btangent::sphere::{
    cylinder_coords, cylinder_lift, cylinder_projection, d_mu_f, edge_homotopy_matrix, homotopy_endpoints,
    jacobian_at, null_homotopy, preimage_analysis, tangent_frame, trivialization_residual, SphereError,
};
use btangent::{degree_integral, degree_preimage, mu_f, reflection, SpherePoint};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_point(rng: &mut impl Rng, n: usize) -> SpherePoint {
    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    SpherePoint::normalize(v).unwrap()
}

/// Random unit tangent vector at `q`.
fn random_tangent(rng: &mut impl Rng, q: &SpherePoint) -> Vec<f64> {
    let q = q.coords();
    loop {
        let mut v: Vec<f64> = (0..q.len()).map(|_| rng.sample(StandardNormal)).collect();
        let d: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
        v.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
        let len = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if len > 1e-6 {
            return v.into_iter().map(|a| a / len).collect();
        }
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn geodesic(q: &[f64], v: &[f64], h: f64) -> SpherePoint {
    let (s, c) = h.sin_cos();
    SpherePoint::normalize(q.iter().zip(v).map(|(a, b)| c * a + s * b).collect()).unwrap()
}

fn arb_point(n: usize) -> impl Strategy<Value = SpherePoint> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("not too short", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|v| SpherePoint::normalize(v).unwrap())
}

fn arb_point_any_dim() -> impl Strategy<Value = SpherePoint> {
    (2usize..=8).prop_flat_map(arb_point)
}

#[test]
fn mu_f_has_unit_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=8 {
        for _ in 0..10_000 {
            let img = mu_f(&random_point(&mut rng, n));
            let len = img.coords().iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((len - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn differential_matches_central_differences() {
    let h = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=6 {
        for _ in 0..1_000 {
            let q = random_point(&mut rng, n);
            let v = random_tangent(&mut rng, &q);
            let plus = mu_f(&geodesic(q.coords(), &v, h));
            let minus = mu_f(&geodesic(q.coords(), &v, -h));
            let fd: Vec<f64> = plus
                .coords()
                .iter()
                .zip(minus.coords())
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect();
            assert!(max_diff(&fd, &d_mu_f(&q, &v).unwrap()) <= 1e-6);
        }
    }
}

#[test]
fn differential_at_the_poles() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 2..=8 {
        for (pole, scale) in [(SpherePoint::north_pole(n), -2.0), (SpherePoint::south_pole(n), 2.0)] {
            for _ in 0..50 {
                let v = random_tangent(&mut rng, &pole);
                let expected: Vec<f64> = v.iter().map(|x| scale * x).collect();
                assert!(max_diff(&d_mu_f(&pole, &v).unwrap(), &expected) <= 1e-12);
            }
        }
    }
}

#[test]
fn non_tangent_vector_is_rejected() {
    let q = SpherePoint::north_pole(3);
    assert!(matches!(d_mu_f(&q, &[0.0, 0.0, 1.0]), Err(SphereError::NonTangentInput(_))));
}

#[test]
fn jacobian_in_dimension_two_is_constant() {
    // On S¹, μf wraps the circle twice at constant speed 2.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..1_000 {
        let j = jacobian_at(&random_point(&mut rng, 2)).unwrap();
        assert!((j - 2.0).abs() < 1e-12);
    }
}

#[test]
fn jacobian_against_finite_difference_determinant() {
    // Independent oracle: build the pushed-forward frame by finite differences
    // and take the full n × n determinant with nalgebra.
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for n in 2..=6 {
        for _ in 0..200 {
            let q = random_point(&mut rng, n);
            let frame = tangent_frame(&q);
            let mut positive = DMatrix::zeros(n, n);
            positive.set_column(0, &DVector::from_column_slice(q.coords()));
            for (i, v) in frame.iter().enumerate() {
                positive.set_column(i + 1, &DVector::from_column_slice(v));
            }
            assert!(positive.determinant() > 0.0);

            let h = 1e-6;
            let mut pushed = DMatrix::zeros(n, n);
            pushed.set_column(0, &DVector::from_column_slice(mu_f(&q).coords()));
            for (i, v) in frame.iter().enumerate() {
                let a = mu_f(&geodesic(q.coords(), v, h));
                let b = mu_f(&geodesic(q.coords(), v, -h));
                let col: Vec<f64> = a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y) / (2.0 * h)).collect();
                pushed.set_column(i + 1, &DVector::from_vec(col));
            }
            assert!((pushed.determinant() - jacobian_at(&q).unwrap()).abs() < 1e-5);
        }
    }
}

#[test]
fn degree_by_preimages_follows_parity() {
    for n in 2..=8 {
        let expected = 1 - (-1i64).pow(n as u32 - 1);
        assert_eq!(degree_preimage(n).unwrap(), expected, "n = {n}");
        let a = preimage_analysis(n).unwrap();
        assert_eq!(a.preimages.len(), 2);
        assert!(a.min_gap_outside_caps > 0.05);
        for p in &a.preimages {
            assert!(p.point[n - 1].abs() > 1.0 - 1e-12);
        }
    }
    assert!(degree_preimage(9).is_err());
    assert!(degree_preimage(1).is_err());
}

#[test]
fn degree_integral_is_reproducible_across_thread_counts() {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| degree_integral(4, 50_000, 99).unwrap());
    let b = degree_integral(4, 50_000, 99).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
    assert!(matches!(degree_integral(3, 9_999, 0), Err(SphereError::TooFew { .. })));
}

#[test]
fn null_homotopy_endpoints_by_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in [3, 5, 7] {
        for _ in 0..500 {
            let q = random_point(&mut rng, n);
            let (v, x) = cylinder_coords(q.coords());
            assert!(max_diff(&null_homotopy(&v, x, 0.0), mu_f(&q).coords()) < 1e-9);
            assert!(max_diff(&null_homotopy(&v, x, 1.0), SpherePoint::south_pole(n).coords()) < 1e-12);
            let s: f64 = rng.random();
            let len = null_homotopy(&v, x, s).iter().map(|c| c * c).sum::<f64>().sqrt();
            assert!((len - 1.0).abs() < 1e-9);
        }
        assert!(homotopy_endpoints(n, 20).unwrap().passed);
    }
    for n in [2, 4, 6, 8] {
        assert!(matches!(homotopy_endpoints(n, 20), Err(SphereError::EvenDimension(_))));
    }
}

#[test]
fn edge_homotopy_stays_orientation_preserving() {
    for i in 0..=1000 {
        let m = edge_homotopy_matrix(i as f64 / 1000.0);
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!((det - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn mu_f_is_reflection_of_north_pole(q in arb_point_any_dim()) {
        let n = q.dim();
        let via_matrix = reflection(&q) * DVector::from_column_slice(SpherePoint::north_pole(n).coords());
        prop_assert!(max_diff(via_matrix.as_slice(), mu_f(&q).coords()) <= 1e-12);
    }

    #[test]
    fn mu_f_is_even(q in arb_point_any_dim()) {
        let neg = SpherePoint::new(q.coords().iter().map(|c| -c).collect()).unwrap();
        prop_assert_eq!(mu_f(&neg), mu_f(&q));
    }

    #[test]
    fn reflection_is_an_orientation_reversing_involution(q in arb_point_any_dim()) {
        let r = reflection(&q);
        let n = q.dim();
        prop_assert!((&r * &r - DMatrix::<f64>::identity(n, n)).amax() <= 1e-12);
        prop_assert!((r.transpose() - &r).amax() == 0.0);
        prop_assert!((r.determinant() + 1.0).abs() <= 1e-12);
    }

    #[test]
    fn cylinder_lift_commutes_with_projection(
        v in (3usize..=8).prop_flat_map(|n| arb_point(n - 1)),
        x in -1.0f64..=1.0,
    ) {
        let (w, h) = cylinder_lift(&v, x).unwrap();
        let lifted = cylinder_projection(w.coords(), h);
        let direct = mu_f(&SpherePoint::normalize(cylinder_projection(v.coords(), x)).unwrap());
        prop_assert!(max_diff(&lifted, direct.coords()) <= 1e-12);
    }

    #[test]
    fn trivialization_reconstructs_the_gluing(
        (n, q) in (2usize..=6).prop_flat_map(|n| (Just(n), arb_point(n))),
    ) {
        // Caps of angular radius 0.1 about the poles are excluded.
        let height = q.height();
        prop_assume!(height.abs() < 0.1f64.cos() && q.coords()[..n - 1].iter().any(|c| c.abs() > 1e-6));
        prop_assert!(trivialization_residual(&q).unwrap() < 1e-10);
    }
}
