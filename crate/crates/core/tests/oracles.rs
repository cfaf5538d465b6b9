//! End-to-end checks against closed forms and independent constructions.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;
use renorm_core::harness::{compare_schemes, run_sweep, SweepSpec};
use renorm_core::minsub::{self, neville_to_zero};
use renorm_core::quadrature::{integrate_adaptive, integrate_tail_oscillatory, tail_closed_form_swave};
use renorm_core::series::{counterterm, default_truncation_order};
use renorm_core::specfun::bessel_j;
use renorm_core::*;

fn golden(eta: f64, alpha: f64, beta: f64, k: f64) -> f64 {
    2.0 * PI * alpha * eta * k.powi(10) / 155_925.0 + 2.0 * PI * beta * eta * k.powi(4) / 15.0
}

fn swave(k: f64) -> ScatteringConfig {
    ScatteringConfig::three_d(k, 0).unwrap()
}

#[test]
fn dimreg_reproduces_golden_value() {
    for k in [0.5, 1.0, 2.0] {
        for (eta, alpha, beta) in [(1.0, 1.0, 1.0), (2.0, 0.3, 1.7)] {
            let d = phase_shift_dimreg(&PowerLawPotential::lj12(eta, alpha, beta), &swave(k)).unwrap().value;
            let want = golden(eta, alpha, beta, k);
            assert!(((d - want) / want).abs() < 1e-12, "k {k}: {d} vs {want}");
        }
    }
}

#[test]
fn acont_matches_dimreg_on_five_by_five_grid() {
    for i in 0..5 {
        for j in 0..5 {
            let k = 0.3 + 1.7 * i as f64 / 4.0;
            let beta = 0.5 + 1.5 * j as f64 / 4.0;
            let v = PowerLawPotential::lj12(1.0, 1.0, beta);
            let cfg = swave(k);
            let d = phase_shift_dimreg(&v, &cfg).unwrap().value;
            let a = phase_shift_ac_with(&v, &cfg, &AcontOptions::default()).unwrap().value;
            assert!((a - d).abs() <= 1e-8f64.max(1e-6 * d.abs()), "k {k} beta {beta}: {a} vs {d}");
        }
    }
}

#[test]
fn minsub_matches_dimreg_on_five_by_five_grid() {
    for i in 0..5 {
        for j in 0..5 {
            let k = 0.3 + 1.7 * i as f64 / 4.0;
            let beta = 0.5 + 1.5 * j as f64 / 4.0;
            let v = PowerLawPotential::lj12(1.0, 1.0, beta);
            let cfg = swave(k);
            let d = phase_shift_dimreg(&v, &cfg).unwrap().value;
            let m = phase_shift_minsub(&v, &cfg, &default_eps_grid(k), minsub::DEFAULT_TOL).unwrap().value;
            assert!((m - d).abs() <= 1e-6f64.max(1e-4 * d.abs()), "k {k} beta {beta}: {m} vs {d}");
        }
    }
}

#[test]
fn acont_is_independent_of_split_point() {
    let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
    let runs: Vec<PhaseShiftResult> = [0.3, 0.5, 1.0, 2.0]
        .iter()
        .map(|&e| phase_shift_ac(&v, &swave(1.0), e, 1e-11).unwrap())
        .collect();
    for a in &runs {
        for b in &runs {
            let d = (a.value - b.value).abs();
            assert!(d < 1e-6 && d <= 10.0 * (a.error_estimate + b.error_estimate) + 1e-15);
        }
    }
}

#[test]
fn convergent_dimension_closed_form_matches_quadrature() {
    // 1/r^6 at n = 8, l = 0: nu = 3 and the integral converges absolutely.
    for k in [0.7, 1.0, 1.9] {
        let cfg = ScatteringConfig::new(k, 0, 8.0).unwrap();
        let nu = cfg.nu();
        let f = |r: f64| {
            let j = bessel_j(nu, k * r).unwrap();
            r.powi(-5) * j * j
        };
        let a = 4.0 / k;
        let head = integrate_adaptive(f, 0.0, a, 1e-13).unwrap();
        let tail = integrate_tail_oscillatory(f, a, PI / (2.0 * k), 1e-13).unwrap();
        let direct = -FRAC_PI_2 * (head.value + tail.value);
        let closed = term_phase_shift_dim(1.0, 6, k, nu).unwrap();
        assert!(((direct - closed) / closed).abs() < 1e-7, "k {k}: {direct} vs {closed}");
    }
}

#[test]
fn counterterm_reproduces_displayed_coefficients() {
    for (eta, alpha, beta, k) in [(1.0, 1.0, 1.0, 1.0), (2.0, 3.0, 0.5, 1.3)] {
        let v = PowerLawPotential::lj12(eta, alpha, beta);
        let s = integrand_series(&v, k, 0.5, default_truncation_order(&v, 0.5).unwrap()).unwrap();
        let (ae, be) = (alpha * eta, beta * eta);
        let want = [
            (-10, 2.0 * ae * k / PI),
            (-8, -2.0 * ae * k.powi(3) / (3.0 * PI)),
            (-6, 4.0 * ae * k.powi(5) / (45.0 * PI)),
            (-4, -(2.0 * ae * k.powi(7) / (315.0 * PI) + 4.0 * be * k / PI)),
            (-2, 4.0 * ae * k.powi(9) / (14_175.0 * PI) + 4.0 * be * k.powi(3) / (3.0 * PI)),
        ];
        for (e, c) in want {
            assert!(((s.coefficient(e) - c) / c).abs() < 1e-10, "r^{e}");
        }
        assert_eq!(counterterm(&s).unwrap().powers(), vec![10, 8, 6, 4, 2]);
    }
}

#[test]
fn pole_expansion_reproduces_displayed_terms() {
    // -ak/(9e^9) + ak^3/(21e^7) - 2ak^5/(225e^5) + (ak^7+630bk)/(945e^3) - (2ak^9+9450bk^3)/(14175e)
    let (k, ae, be) = (1.3f64, 0.8, 1.7);
    let v = PowerLawPotential::lj12(1.0, ae, be);
    let ct = counterterm(&integrand_series(&v, k, 0.5, 4).unwrap()).unwrap();
    for eps in [0.3f64, 0.9, 2.0] {
        let want = -ae * k / (9.0 * eps.powi(9)) + ae * k.powi(3) / (21.0 * eps.powi(7))
            - 2.0 * ae * k.powi(5) / (225.0 * eps.powi(5))
            + (ae * k.powi(7) + 630.0 * be * k) / (945.0 * eps.powi(3))
            - (2.0 * ae * k.powi(9) + 9450.0 * be * k.powi(3)) / (14_175.0 * eps);
        assert!(((pole_part(&ct, eps) - want) / want).abs() < 1e-12);
    }
}

#[test]
fn tail_matches_closed_form_on_random_points() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
    for _ in 0..50 {
        let k: f64 = rng.gen_range(0.2..3.0);
        let eps: f64 = rng.gen_range(0.3..3.0);
        let f = |r: f64| {
            let j = bessel_j(0.5, k * r).unwrap();
            r * v.evaluate(r).unwrap() * j * j
        };
        let q = integrate_tail_oscillatory(f, eps, PI / (2.0 * k), 1e-10).unwrap();
        let want = tail_closed_form_swave(&v, k, eps).unwrap();
        assert!((-FRAC_PI_2 * q.value - want).abs() < 1e-8, "k {k} eps {eps}");
    }
}

/// Regular part of `r V J_{1/2}^2(kr)` from `sin^2 x = sum_j (-1)^(j+1) 2^(2j-1) x^(2j) / (2j)!`.
fn trig_regular_part(v: &PowerLawPotential, k: f64, r: f64) -> f64 {
    let mut total = 0.0;
    for t in v.terms() {
        let m = t.exponent as i32;
        let coef = 2.0 / (PI * k) * t.coefficient;
        let mut fact = 1.0;
        for j in 1..40i32 {
            fact *= ((2 * j - 1) * 2 * j) as f64;
            let c = (-1f64).powi(j + 1) * 2f64.powi(2 * j - 1) * k.powi(2 * j) / fact;
            if 2 * j >= m {
                total += coef * c * r.powi(2 * j - m);
            }
        }
    }
    total
}

#[test]
fn subtracted_integrand_stays_bounded_near_origin() {
    let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
    let s = integrand_series(&v, 1.0, 0.5, 40).unwrap();
    let mut prev = f64::INFINITY;
    for r in [1e-2, 1e-3, 1e-4] {
        let series = s.evaluate_regular(r);
        let trig = trig_regular_part(&v, 1.0, r);
        assert!((series - trig).abs() < 1e-13 * trig.abs().max(1.0), "r {r}");
        let drift = (series - s.coefficient(0)).abs();
        assert!(drift <= prev && drift < 10.0 * r);
        prev = drift;
    }
    assert!(s.coefficient(0).abs() > 0.0);
}

#[test]
fn partial_series_tracks_function_within_next_term() {
    let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
    let r: f64 = 0.1;
    let j = bessel_j(0.5, r).unwrap();
    let g = r * v.evaluate(r).unwrap() * j * j;
    let ulp = 4.0 * f64::EPSILON * g.abs();
    for order in [-2, 0, 2, 4] {
        let s = integrand_series(&v, 1.0, 0.5, order).unwrap();
        let next = integrand_series(&v, 1.0, 0.5, order + 2).unwrap().coefficient(order + 2) * r.powi(order + 2);
        assert!((s.evaluate(r) - g).abs() <= 1.1 * next.abs() + ulp, "order {order}");
    }
}

#[test]
fn even_exponents_give_even_counterterm_powers_at_half_order() {
    let v = PowerLawPotential::new([(1.0, 14), (-0.5, 10), (2.0, 8), (0.3, 4)]).unwrap();
    let ct = counterterm(&integrand_series(&v, 0.9, 0.5, 2).unwrap()).unwrap();
    assert!(!ct.is_empty() && ct.powers().iter().all(|p| p % 2 == 0));
}

#[test]
fn counterterm_is_additive_across_terms() {
    let ct = |v: &PowerLawPotential| counterterm(&integrand_series(v, 0.9, 0.5, 2).unwrap()).unwrap();
    let a = ct(&PowerLawPotential::lj12(1.0, 1.0, 0.0));
    let b = ct(&PowerLawPotential::lj12(1.0, 0.0, 1.0));
    let both = ct(&PowerLawPotential::lj12(1.0, 1.0, 1.0));
    for p in both.powers() {
        let sum = a.coefficient(p) + b.coefficient(p);
        assert!((both.coefficient(p) - sum).abs() <= 1e-15 * sum.abs().max(1.0), "power {p}");
    }
}

#[test]
fn pole_detection() {
    let lj = PowerLawPotential::lj12(1.0, 1.0, 1.0);
    let four = ScatteringConfig::new(1.0, 0, 4.0).unwrap();
    assert!(matches!(phase_shift_dimreg(&lj, &four), Err(Error::DimensionalPole { .. })));
    let odd = PowerLawPotential::new([(1.0, 9), (-1.0, 6)]).unwrap();
    let s = integrand_series(&odd, 1.0, 0.5, 2).unwrap();
    assert!(s.coefficient(-1) != 0.0);
    assert!(matches!(counterterm(&s), Err(Error::LogDivergence { .. })));
    assert!(matches!(phase_shift_ac(&odd, &swave(1.0), 1.0, 1e-8), Err(Error::LogDivergence { .. })));
    assert!(matches!(phase_shift_minsub(&odd, &swave(1.0), &default_eps_grid(1.0), 1e-5), Err(Error::LogDivergence { .. })));
}

/// Integrand, interval and exact value.
type KnownIntegral = (Box<dyn Fn(f64) -> f64>, f64, f64, f64);

#[test]
fn quadrature_error_estimates_are_honest() {
    let mut cases: Vec<KnownIntegral> = Vec::new();
    for p in 0..10 {
        let pf = p as f64;
        cases.push((Box::new(move |x: f64| x.powf(pf + 0.5)), 0.0, 1.0, 1.0 / (pf + 1.5)));
    }
    for w in 1..=30 {
        let wf = w as f64;
        cases.push((Box::new(move |x: f64| (wf * x).cos()), 0.0, 2.0, (2.0 * wf).sin() / wf));
        cases.push((Box::new(move |x: f64| (-wf * x).exp()), 0.0, 3.0, (1.0 - (-3.0 * wf).exp()) / wf));
        cases.push((Box::new(move |x: f64| 1.0 / (1.0 + wf * x * x)), 0.0, 1.0, wf.sqrt().atan() / wf.sqrt()));
    }
    for tol in [1e-6, 1e-9, 1e-12] {
        let honest = cases
            .iter()
            .filter(|(f, a, b, truth)| {
                let r = integrate_adaptive(f, *a, *b, tol).unwrap();
                (r.value - truth).abs() <= 10.0 * r.error_estimate
            })
            .count();
        assert!(honest as f64 >= 0.99 * cases.len() as f64, "tol {tol}: {honest}/{}", cases.len());
    }
}

#[test]
fn neville_table_columns_improve() {
    let v = PowerLawPotential::lj12(1.0, 1.0, 1.0);
    for k in [0.5, 1.0, 2.0] {
        let d = golden(1.0, 1.0, 1.0, k);
        let grid = default_eps_grid(k);
        let r = phase_shift_minsub(&v, &swave(k), &grid, minsub::DEFAULT_TOL).unwrap();
        let Diagnostics::Minsub { finite_parts, table, .. } = r.diagnostics else { panic!() };
        assert_eq!(table, neville_to_zero(&grid, &finite_parts));
        let last = table.last().unwrap();
        assert!((last[0] - d).abs() >= (last[1] - d).abs(), "k {k}");
        assert!((last[1] - d).abs() >= (last[2] - d).abs(), "k {k}");
    }
}

#[test]
fn minsub_on_reference_grid() {
    let d = golden(1.0, 1.0, 1.0, 1.0);
    let r = phase_shift_minsub(&PowerLawPotential::lj12(1.0, 1.0, 1.0), &swave(1.0), &[0.4, 0.2, 0.1, 0.05], minsub::DEFAULT_TOL).unwrap();
    assert!((r.value - d).abs() <= 1e-4 * (1.0 + d));
}

#[test]
fn harness_examples() {
    let r = compare_schemes(&PowerLawPotential::lj12(1.0, 1.0, 1.0), &swave(1.0), &Scheme::ALL, 1e-4);
    assert!(r.agreement);
    let spec: SweepSpec = "potential = lj12:1,1,1\nk = 0.5, 1, 2".parse().unwrap();
    let reports = run_sweep(&spec).unwrap();
    assert_eq!(reports.len(), 3);
    for rep in &reports {
        assert!(rep.agreement && !rep.has_errors());
        let want = golden(1.0, 1.0, 1.0, rep.config.k());
        for res in rep.results.values() {
            assert!((res.as_ref().unwrap().value - want).abs() <= 1e-4 * (1.0 + want));
        }
    }
    assert_eq!(run_sweep(&spec).unwrap(), reports);
}
