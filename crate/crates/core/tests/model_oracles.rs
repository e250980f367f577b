use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2_boundary::arith::{factorial, int, rat, Rational};
use sl2_boundary::model::{
    gjms_constant_in, obstruction, p_k_build, p_k_build_in, parse_field_expr, q_generalized_in,
    q_holographic, random_field, sl2_realization_check_in, solve_first_kind, solve_log_density,
    solve_log_kind, solve_log_kind_in, solve_second_kind, tangentiality_witness, BoundaryField,
    BoundaryOp, DensityField, HalfSpace, SampleShape,
};
use sl2_boundary::series::k_series;
use sl2_boundary::{Error, WeightParam};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn eval(b: &BoundaryField, p: &[f64]) -> f64 {
    b.terms()
        .map(|(m, c)| {
            let mono: f64 = m.iter().zip(p).map(|(&e, &x)| x.powi(e as i32)).product();
            c.to_f64().unwrap() * mono
        })
        .sum()
}

fn terms(b: &BoundaryField) -> Vec<(Vec<u32>, Rational)> {
    b.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Gauss curvature of `E du^2 + G dv^2` by the Brioschi formula with
/// central differences.
fn gauss_curvature(e: &dyn Fn(f64, f64) -> f64, g: &dyn Fn(f64, f64) -> f64, u: f64, v: f64) -> f64 {
    let h = 1e-3;
    let root = |u: f64, v: f64| (e(u, v) * g(u, v)).sqrt();
    let gu = |u: f64, v: f64| (g(u + h, v) - g(u - h, v)) / (2.0 * h);
    let ev = |u: f64, v: f64| (e(u, v + h) - e(u, v - h)) / (2.0 * h);
    let a = |u: f64, v: f64| gu(u, v) / root(u, v);
    let b = |u: f64, v: f64| ev(u, v) / root(u, v);
    let au = (a(u + h, v) - a(u - h, v)) / (2.0 * h);
    let bv = (b(u, v + h) - b(u, v - h)) / (2.0 * h);
    -(au + bv) / (2.0 * root(u, v))
}

#[test]
fn q_matches_gauss_curvature_in_two_dimensions() {
    let mut r = rng(11);
    let shape = SampleShape::new(2).boundary().x_degree(3);
    for _ in 0..10 {
        let omega = random_field(&mut r, &shape, Rational::zero()).scale(&rat(1, 4));
        let q = q_holographic(&omega, 2).unwrap();
        let ob = omega.restrict().unwrap();
        let conf = |u: f64, v: f64| (-2.0 * eval(&ob, &[u, v])).exp();
        for _ in 0..5 {
            let (u, v) = (r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5));
            let k = gauss_curvature(&conf, &conf, u, v);
            let lhs = k * conf(u, v);
            let rhs = eval(&q, &[u, v]);
            assert!(
                (lhs - rhs).abs() < 1e-4 * (1.0 + rhs.abs()),
                "K e^(-2 omega) = {lhs}, Q = {rhs} for omega = {omega}"
            );
        }
    }
}

#[test]
fn q_transformation_law() {
    for n in [2usize, 4] {
        let mut r = rng(20 + n as u64);
        let model = HalfSpace::new(n as i64 + 1);
        let shape = SampleShape::new(n).x_degree(n as u32 + 2);
        let zero = DensityField::zero(n, Rational::zero());
        let q0 = q_holographic(&zero, n).unwrap();
        assert!(q0.is_zero());
        let lap = BoundaryOp::laplacian_power(&model.signature, n as u32 / 2);
        let p = p_k_build(n as u32, n as i64 + 1).unwrap();
        let c = sl2_boundary::arith::double_factorial(n as i64 - 1);
        for _ in 0..20 {
            let omega = random_field(&mut r, &shape, Rational::zero());
            let dq = q_holographic(&omega, n).unwrap().sub(&q0);
            let ob = omega.restrict().unwrap();
            assert_eq!(terms(&dq), terms(&lap.apply(&ob)), "omega = {omega}");
            let via_p = p.apply(&omega).unwrap().restrict().unwrap().scale(&(&c * &c).recip());
            assert_eq!(terms(&dq), terms(&via_p));
        }
    }
}

#[test]
fn q_ignores_the_extension() {
    let mut r = rng(3);
    for n in [2usize, 4] {
        let shape = SampleShape::new(n);
        for _ in 0..10 {
            let omega = random_field(&mut r, &shape, Rational::zero());
            let g = random_field(&mut r, &shape, Rational::zero());
            let other = omega.add(&g.mul_r(&int(1)).with_weight(Rational::zero()));
            assert_eq!(q_holographic(&omega, n).unwrap(), q_holographic(&other, n).unwrap());
        }
    }
}

#[test]
fn tangential_up_to_order_eight() {
    for k in 1..=8u32 {
        let p = p_k_build(k, 3).unwrap();
        assert!(p.tangential, "P_{k} composed with r");
        assert!(tangentiality_witness(&p, 100, k as u64).is_none(), "k = {k}");
    }
    for k in 1..=4u32 {
        let p = p_k_build(k, 5).unwrap();
        assert!(p.tangential && tangentiality_witness(&p, 30, 99).is_none());
    }
}

#[test]
fn p_k_restriction_ignores_the_extension() {
    let mut r = rng(5);
    for k in 1..=5u32 {
        let p = p_k_build(k, 4).unwrap();
        let shape = SampleShape::new(3).x_degree(k + 1);
        for _ in 0..10 {
            let f = random_field(&mut r, &shape, p.weight.clone());
            let g = random_field(&mut r, &shape, &p.weight - int(1));
            let a = p.apply(&f).unwrap().restrict().unwrap();
            let b = p.apply(&f.add(&g.mul_r(&int(1)))).unwrap().restrict().unwrap();
            assert_eq!(a, b);
            if k % 2 == 1 {
                assert!(a.is_zero());
            }
        }
    }
}

#[test]
fn lorentzian_identities() {
    let model = HalfSpace::lorentzian(4);
    let rep = sl2_realization_check_in(&model, 20, 6, 77).unwrap();
    assert!(rep.passes(), "{:?}", rep.failures.first());
    let g2 = gjms_constant_in(&model, 2, 5, 1).unwrap();
    assert_eq!(g2.constant, Some(int(1)));
    let g4 = gjms_constant_in(&HalfSpace::lorentzian(5), 4, 3, 1).unwrap();
    assert_eq!(g4.constant, Some(int(9)));
    assert!(gjms_constant_in(&model, 3, 0, 1).unwrap().zero_restriction);
    let p = p_k_build_in(&model, 4).unwrap();
    assert!(p.tangential);
    // Q at n = 2 is the wave operator applied to omega
    let m2 = HalfSpace::lorentzian(3);
    let omega = parse_field_expr("x1^2 + 3*x2^2 + r*x1", 2, Rational::zero()).unwrap();
    let q = q_generalized_in(&m2, &omega).unwrap();
    assert_eq!(q.value.to_string(), "4");
}

#[test]
fn first_kind_terms_follow_the_k_series() {
    // smooth[m] = a_m (-I·D)^m f0, a_m the K coefficients at h0
    let model = HalfSpace::new(4);
    let mut r = rng(8);
    let shape = SampleShape::new(3);
    for _ in 0..10 {
        let w0 = rat(r.gen_range(-9..9), 4);
        let h0 = model.h_of(&w0);
        if h0.is_integer() {
            continue;
        }
        let f0 = random_field(&mut r, &shape, w0);
        let sol = solve_first_kind(&f0, 4, 6).unwrap();
        let a = k_series(&WeightParam::Value(h0), 6).unwrap().constant_coeffs().unwrap();
        let mut acc = f0.clone();
        for (m, am) in a.iter().enumerate() {
            if m > 0 {
                acc = model.idotd(&acc).scale(&int(-1));
            }
            assert_eq!(sol.smooth[m], acc.scale(am), "m = {m}");
        }
    }
}

#[test]
fn residual_contracts() {
    let mut r = rng(9);
    let d = 4;
    let shape = SampleShape::new(3);
    for i in 0..20 {
        let order = 1 + i % 10;
        let w0 = rat(2 * r.gen_range(-6..6) + 1, 8);
        let f0 = random_field(&mut r, &shape, w0.clone());
        let a = solve_first_kind(&f0, d, order).unwrap();
        let v = a.residual_order();
        assert!(v.as_ref().map_or(true, |v| v >= &int(order as i64)), "first kind: {v:?} at N = {order}");

        let wbar = int(1 - d) - &w0;
        let fb = random_field(&mut r, &shape, wbar);
        let b = solve_second_kind(&fb, d, &w0, order, None).unwrap();
        let v = b.residual_order();
        assert!(v.as_ref().map_or(true, |v| v >= &(&b.alpha + int(order as i64))), "second kind: {v:?}");

        let h0 = 1 + (i as i64 % 5);
        let wl = rat(h0 - d, 2);
        let fl = random_field(&mut r, &shape.clone().boundary(), wl);
        let c = solve_log_kind(&fl, d, order, &DensityField::zero(3, Rational::zero())).unwrap();
        let v = c.residual_order();
        assert!(v.as_ref().map_or(true, |v| v >= &int(order as i64)), "log kind h0 = {h0}: {v:?}");
        assert!(!c.field.has_log_scale());
    }
}

#[test]
fn obstruction_multiple_is_uniform() {
    let d = 4;
    let mut r = rng(13);
    let shape = SampleShape::new(3).boundary().x_degree(5).terms(5);
    for h0 in 2..=5i64 {
        let w0 = rat(h0 - d, 2);
        let expected = {
            let f = factorial((h0 - 2) as u64);
            (&f * &f).recip()
        };
        let mut obstructed = 0;
        for _ in 0..20 {
            let f0 = random_field(&mut r, &shape, w0.clone());
            let p = obstruction(&f0, d).unwrap();
            match solve_first_kind(&f0, d, 6) {
                Err(Error::Obstructed { ell, multiple, .. }) => {
                    assert_eq!(ell as i64, h0 - 2);
                    assert_eq!(multiple, Some(expected.clone()));
                    obstructed += 1;
                }
                Ok(sol) => {
                    // only possible when the obstruction vanishes
                    assert!(p.is_zero(), "h0 = {h0}: unobstructed with P f0 = {p}");
                    assert!(sol.residual_order().is_none());
                }
                Err(e) => panic!("{e}"),
            }
        }
        // P_{h0-1} restricts to zero for odd h0 - 1
        if h0 % 2 == 0 {
            assert_eq!(obstructed, 0);
        } else {
            assert!(obstructed >= 15, "h0 = {h0}: {obstructed}");
        }
    }
}

#[test]
fn log_solution_ignores_the_log_tau_extension() {
    let mut r = rng(17);
    let shape = SampleShape::new(2).boundary();
    for h0 in 1..=4i64 {
        let d = 3;
        let f0 = random_field(&mut r, &shape, rat(h0 - d, 2));
        let psi = parse_field_expr("x1^2 - x2", 2, Rational::zero()).unwrap();
        let t1 = random_field(&mut r, &SampleShape::new(2), Rational::zero());
        let shifted = psi.add(&t1.mul_r(&int(1)).with_weight(Rational::zero()));
        let a = solve_log_kind_in(&HalfSpace::new(d).with_log_tau(psi), &f0, 6).unwrap();
        let b = solve_log_kind_in(&HalfSpace::new(d).with_log_tau(shifted), &f0, 6).unwrap();
        assert_eq!(a.field, b.field, "h0 = {h0}");
    }
}

#[test]
fn even_weights_have_no_log_terms() {
    let mut r = rng(19);
    let shape = SampleShape::new(3).boundary().x_degree(6);
    for h0 in [2i64, 4, 6] {
        for _ in 0..5 {
            let f0 = random_field(&mut r, &shape, rat(h0 - 4, 2));
            let s = solve_log_kind(&f0, 4, 8, &DensityField::zero(3, Rational::zero())).unwrap();
            assert!(s.log_part.unwrap().iter().all(|p| p.is_zero()), "h0 = {h0}");
            assert!(!s.field.has_logr());
        }
    }
}

#[test]
fn log_density_in_three_dimensions_is_log_free() {
    let mut r = rng(23);
    let shape = SampleShape::new(3).boundary().x_degree(4);
    for _ in 0..5 {
        let u0 = random_field(&mut r, &shape, Rational::zero());
        let s = solve_log_density(&u0, 4, 6, &DensityField::zero(3, Rational::zero())).unwrap();
        assert!(!s.field.has_logr());
        assert!(s.residual_order().map_or(true, |v| v >= int(6)));
    }
}

#[test]
fn log_density_coefficient_is_half_q_in_two_dimensions() {
    let mut r = rng(29);
    let shape = SampleShape::new(2).boundary().x_degree(4);
    for _ in 0..5 {
        let u0 = random_field(&mut r, &shape, Rational::zero());
        let s = solve_log_density(&u0, 3, 6, &DensityField::zero(2, Rational::zero())).unwrap();
        let c = s.log_coefficient().unwrap().unwrap();
        // u0 plays the role of -omega
        let q = q_holographic(&u0.scale(&int(-1)), 2).unwrap();
        assert_eq!(terms(&c), terms(&q.scale(&rat(1, 2))), "u0 = {u0}");
    }
}
