//! Diagonalize H = sigma1 + sigma3 with a rotor and compare with the matrix route.

use ga_tss::oracle;
use ga_tss::tss::{self, Hamiltonian};

fn main() {
    let h = Hamiltonian::new(0.0, [1.0, 0.0, 1.0]).unwrap();
    let es = tss::eigensystem(&h);

    println!("E+ = {:+.15}   E- = {:+.15}", es.e_plus, es.e_minus);
    println!("theta = {}  phi = {}", es.theta, es.phi);
    println!("R = {}", es.rotor.as_multivector());
    let (p, m) = es.psi_plus.to_amplitudes();
    println!("psi+ : c+ = {:.15}  c- = {:.15}", p.re, m.re);
    let (p, m) = es.psi_minus.to_amplitudes();
    println!("psi- : c+ = {:.15}  c- = {:.15}", p.re, m.re);

    let d = tss::diagonalize(&h);
    println!("R~ H R = {}", d.rotated);

    let reference = oracle::eigen_hermitian(&oracle::rep(&h.to_multivector())).unwrap();
    println!("matrix eigenvalues: {:?}", reference.values);
    let overlap = reference.vectors[0].dot(&oracle::spinor_rep(&es.psi_plus)).norm_sqr();
    println!("|<v+|psi+>|^2 = {overlap}");
}
