//! Spin precessing about an axial field, against the closed form.

use ga_tss::tss::{self, FieldConfig};

fn main() {
    let cfg = FieldConfig::natural([0.0, 0.0, 1.0]).unwrap();
    let theta0 = std::f64::consts::FRAC_PI_3;
    let grid: Vec<f64> = (0..=12).map(|i| i as f64 * 0.5).collect();
    let w = cfg.axial_omega();

    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "t", "s1", "s2", "s3", "|err|");
    for s in tss::precession_trajectory(theta0, &cfg, &grid).unwrap() {
        let expect = [
            0.5 * theta0.sin() * (w * s.t).cos(),
            -0.5 * theta0.sin() * (w * s.t).sin(),
            0.5 * theta0.cos(),
        ];
        let err = (0..3).map(|i| (s.s[i] - expect[i]).abs()).fold(0.0, f64::max);
        println!("{:5.1} {:10.6} {:10.6} {:10.6} {:10.1e}", s.t, s.s[0], s.s[1], s.s[2], err);
    }
}
