//! Quaternions as even multivectors, and their polar decomposition.

use ga_tss::{Multivector, Quaternion};

fn main() {
    let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
    let polar = q.polar().unwrap();
    println!("q          = {}", q.embed());
    println!("|q|        = {}", polar.magnitude);
    println!("axis       = {:?}", polar.axis);
    println!("angle      = {} (2pi/3 = {})", polar.angle, 2.0 * std::f64::consts::PI / 3.0);
    println!("rebuilt    = {}", polar.reconstruct());

    // the unit bivector of the rotation plane, via three edges of the triangle (e1, e2, e3)
    let (e1, e2, e3) = (Multivector::E1, Multivector::E2, Multivector::E3);
    let k = 1.0 / 3f64.sqrt();
    println!("i n        = {}", Multivector::vector(polar.axis).hodge_dual());
    println!("P1         = {}", (e2 - e1).wedge_vectors(&(e3 - e1)).scale(k));
    println!("P2         = {}", (e2 - e1).wedge_vectors(&(e3 - e2)).scale(k));
    println!("P3         = {}", (e3 - e1).wedge_vectors(&(e3 - e2)).scale(k));

    let i = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    let j = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    println!("i j        = {:?}", i * j);
    println!("emb(i)emb(j) = {}", i.embed() * j.embed());
}
