//! Exit criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads 1` to see them.

use std::f64::consts::PI;
use std::process::Command;

use ga_tss::conformance::{
    ga_transition_probability, matrix_transition_probability, random_field, random_hamiltonian,
    random_multivector, random_state, rng_from_seed,
};
use ga_tss::oracle::{self, Complex};
use ga_tss::tss::{self, FieldConfig, Hamiltonian};
use ga_tss::{AlgebraicSpinor, Multivector, Quaternion};
use rand::Rng;

fn criterion(id: u32, what: &str, worst: f64, limit: f64) {
    let pass = worst <= limit;
    println!(
        "[{}] C{id:<2} {what}: worst {worst:.3e} (limit {limit:.0e})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({what}): {worst:e} > {limit:e}");
}

fn flag(id: u32, what: &str, pass: bool) {
    println!("[{}] C{id:<2} {what}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} ({what})");
}

#[test]
fn c01_example_one_reproduction() {
    let h = Hamiltonian::new(0.0, [1.0, 0.0, 1.0]).unwrap();
    let es = tss::eigensystem(&h);
    let s2 = 2f64.sqrt();
    let big = (2.0 + s2).sqrt() / 2.0;
    let small = (2.0 - s2).sqrt() / 2.0;

    let mut worst = (es.e_plus - s2).abs().max((es.e_minus + s2).abs());
    let (p, m) = es.psi_plus.to_amplitudes();
    for (got, want) in [(p.re, big), (p.ps, 0.0), (m.re, small), (m.ps, 0.0)] {
        worst = worst.max((got - want).abs());
    }
    let (p, m) = es.psi_minus.to_amplitudes();
    for (got, want) in [(p.re, -small), (p.ps, 0.0), (m.re, big), (m.ps, 0.0)] {
        worst = worst.max((got - want).abs());
    }
    criterion(1, "H = s1 + s3 eigenvalues and eigenspinors", worst, 1e-12);
}

#[test]
fn c02_rabi_triangle() {
    let mut rng = rng_from_seed(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let cfg = random_field(&mut rng, 5.0);
        let t = rng.random_range(0.0..=10.0);
        let closed = tss::rabi_probability(&cfg, t);
        let ga = ga_transition_probability(&cfg, t);
        let matrix = matrix_transition_probability(&cfg, t);
        worst = worst
            .max((closed - ga).abs())
            .max((ga - matrix).abs())
            .max((closed - matrix).abs());
    }
    criterion(2, "Rabi closed form = GA pipeline = matrix pipeline", worst, 1e-10);
}

#[test]
fn c03_precession_closed_forms() {
    let grid: Vec<f64> = (0..1000).map(|i| 20.0 * i as f64 / 999.0).collect();
    let mut worst = 0.0f64;
    for b3 in [0.5, 1.0, 3.0] {
        let cfg = FieldConfig::natural([0.0, 0.0, b3]).unwrap();
        let omega = cfg.q * b3 / cfg.m;
        for theta in [0.0, PI / 6.0, PI / 2.0] {
            let samples = tss::precession_trajectory(theta, &cfg, &grid).unwrap();
            for s in samples {
                let half = cfg.hbar / 2.0;
                let expected = [
                    half * theta.sin() * (omega * s.t).cos(),
                    -half * theta.sin() * (omega * s.t).sin(),
                    half * theta.cos(),
                ];
                for i in 0..3 {
                    worst = worst.max((s.s[i] - expected[i]).abs());
                }
            }
        }
    }
    criterion(3, "axial precession matches (hbar/2)(sin cos wt, -sin sin wt, cos)", worst, 1e-12);
}

#[test]
fn c04_isomorphism() {
    let mut rng = rng_from_seed(4);
    let mut hom = 0.0f64;
    let mut round = 0.0f64;
    for _ in 0..10_000 {
        let a = random_multivector(&mut rng, 10.0);
        let b = random_multivector(&mut rng, 10.0);
        hom = hom.max((oracle::rep(&(a * b)) - oracle::rep(&a) * oracle::rep(&b)).max_abs());
        round = round.max((oracle::unrep(&oracle::rep(&a)) - a).max_abs());
    }
    criterion(4, "rep(ab) = rep(a) rep(b) over 1e4 pairs", hom, 1e-11);
    criterion(4, "unrep(rep(a)) = a", round, 1e-13);
}

#[test]
fn c05_spin_algebra_exact() {
    let hbar = 1.0;
    let s = tss::spin_vectors(hbar);
    let eps = |i: usize, j: usize, k: usize| -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (2, 1, 0) | (0, 2, 1) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut rhs = Multivector::ZERO;
            for k in 0..3 {
                rhs += (Multivector::I * s[k]).scale(hbar * eps(i, j, k));
            }
            worst = worst.max((s[i].commutator(&s[j]) - rhs).max_abs());
        }
    }
    criterion(5, "[S_i, S_j] = hbar eps_ijk i S_k, zero residual", worst, 0.0);
}

#[test]
fn c06_bivector_factorization() {
    let n = Quaternion::new(1.0, 1.0, 1.0, 1.0).polar().unwrap().axis;
    let plane = Multivector::vector(n).hodge_dual();
    let (e1, e2, e3) = (Multivector::E1, Multivector::E2, Multivector::E3);
    let k = 1.0 / 3f64.sqrt();
    let p1 = (e2 - e1).wedge_vectors(&(e3 - e1)).scale(k);
    let p2 = (e2 - e1).wedge_vectors(&(e3 - e2)).scale(k);
    let p3 = (e3 - e1).wedge_vectors(&(e3 - e2)).scale(k);
    let worst = [p1, p2, p3]
        .iter()
        .map(|p| (*p - plane).max_abs())
        .fold(0.0, f64::max);
    criterion(6, "i n = P1 = P2 = P3 for q1 = q2 = q3 = 1", worst, 1e-15);
}

#[test]
fn c07_unitarity_and_schrodinger_residual() {
    let mut rng = rng_from_seed(7);
    let delta = 1e-5;
    let mut norm_dev = 0.0f64;
    let mut residual = 0.0f64;
    for _ in 0..100 {
        let cfg = random_field(&mut rng, 5.0);
        let psi0 = random_state(&mut rng);
        let h = tss::hamiltonian_from_field(&cfg);
        let at = |t: f64| tss::evolve(&psi0, &tss::field_evolution_rotor(&cfg, t));
        for i in 0..50 {
            let t = 10.0 * i as f64 / 49.0;
            let psi = at(t);
            let n = psi.inner(&psi);
            norm_dev = norm_dev.max((n.re - 1.0).abs()).max(n.ps.abs());

            let derivative = 1.0 / (2.0 * delta) * (at(t + delta) - at(t - delta));
            let r = derivative - tss::schrodinger_rhs(&h, &psi, cfg.hbar);
            residual = residual.max(r.inner(&r).re.sqrt());
        }
    }
    criterion(7, "<Psi(t)|Psi(t)> = 1 along 100 trajectories", norm_dev, 1e-12);
    criterion(7, "central-difference Schrodinger residual, delta = 1e-5", residual, 1e-8);
}

#[test]
fn c08_exponential_cross_check() {
    let mut rng = rng_from_seed(8);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let h = random_hamiltonian(&mut rng, 5.0, false);
        let t = rng.random_range(0.0..=10.0);
        let u = tss::evolution_rotor(&h, t, 1.0).unwrap();
        let reference =
            oracle::mat_exp(&oracle::rep(&h.to_multivector()).scale(Complex::new(0.0, -t)));
        worst = worst.max((oracle::rep(&u.as_multivector()) - reference).max_abs());
    }
    criterion(8, "rep(exp(-i H t)) = Taylor/scaling-squaring mat_exp", worst, 1e-9);
}

#[test]
fn c09_completeness_and_u_vector() {
    let mut rng = rng_from_seed(9);
    let (plus, minus) = ga_tss::spinor::basis_eps();
    let mut completeness = 0.0f64;
    let mut u_dev = 0.0f64;
    for _ in 0..200 {
        let cfg = random_field(&mut rng, 5.0);
        let starts = [AlgebraicSpinor::plus(), random_state(&mut rng)];
        for i in 0..100 {
            let t = 10.0 * i as f64 / 99.0;
            let u = tss::field_evolution_rotor(&cfg, t);
            for psi0 in &starts {
                let psi = tss::evolve(psi0, &u);
                let total = tss::probability(&plus, &psi) + tss::probability(&minus, &psi);
                completeness = completeness.max((total - 1.0).abs());
            }
            let sandwich = tss::u_vector(&cfg, t).unwrap();
            let closed = tss::u_vector_closed_form(&cfg, t).unwrap();
            for k in 0..3 {
                u_dev = u_dev.max((sandwich[k] - closed[k]).abs());
            }
        }
    }
    criterion(9, "P+ + P- = 1 along trajectories", completeness, 1e-12);
    criterion(9, "u(t) closed form = U e3 U~", u_dev, 1e-12);
}

#[test]
fn c10_cli_reproducibility() {
    let bin = env!("CARGO_BIN_EXE_ga-tss");
    let args = [
        "evolve", "--B", "1,1,1", "--theta0", "0.3", "--t-start", "0", "--t-end", "10", "--steps", "200",
    ];
    let first = Command::new(bin).args(args).output().unwrap();
    let second = Command::new(bin).args(args).output().unwrap();
    assert!(first.status.success());
    flag(10, "evolve CSV byte-identical across runs", first.stdout == second.stdout && !first.stdout.is_empty());

    let conf = Command::new(bin)
        .args(["conformance", "--seed", "42", "--count", "1000"])
        .output()
        .unwrap();
    flag(10, "conformance --seed 42 --count 1000 exits 0", conf.status.code() == Some(0));
}
