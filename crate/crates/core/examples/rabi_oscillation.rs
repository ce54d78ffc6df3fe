//! Spin-flip probability in a tilted field: closed form, rotors, and matrices.

use ga_tss::conformance::{ga_transition_probability, matrix_transition_probability};
use ga_tss::tss::{self, FieldConfig};

fn main() {
    let cfg = FieldConfig::natural([1.0, 1.0, 1.0]).unwrap();
    println!("omega = {}  field angle = {}", cfg.omega(), cfg.field_angle());
    println!("{:>5} {:>12} {:>12} {:>12} {:>22}", "t", "closed", "rotor", "matrix", "u(t)");
    for i in 0..=16 {
        let t = i as f64 * 0.25;
        let u = tss::u_vector(&cfg, t).unwrap();
        println!(
            "{:5.2} {:12.9} {:12.9} {:12.9}   [{:+.3} {:+.3} {:+.3}]",
            t,
            tss::rabi_probability(&cfg, t),
            ga_transition_probability(&cfg, t),
            matrix_transition_probability(&cfg, t),
            u[0],
            u[1],
            u[2],
        );
    }
}
