//! Products, grades, reversion and duals in Cl(3,0).

use ga_tss::Multivector;

fn main() {
    let (e1, e2, e3) = (Multivector::E1, Multivector::E2, Multivector::E3);

    println!("e1 e2       = {}", e1 * e2);
    println!("e1 e2 e3    = {}", e1 * e2 * e3);
    println!("i^2         = {}", Multivector::I * Multivector::I);

    let a = Multivector::new([3.0, -2.0, 0.0, 1.0, 0.5, 0.0, 0.0, 7.0]);
    println!("a           = {a}");
    for k in 0..4 {
        println!("<a>_{k}       = {}", a.grade(k).unwrap());
    }
    println!("reverse(a)  = {}", a.reverse());
    println!("dual(a)     = {}", a.hodge_dual());

    let b = Multivector::vector([1.0, 2.0, 0.0]);
    let c = Multivector::vector([0.0, 1.0, 1.0]);
    println!("b c         = {}", b * c);
    println!("b ^ c       = {}", b.wedge_vectors(&c));

    // rotate e1 a quarter turn about e3
    let r = Multivector::bivector([0.0, 0.0, 1.0])
        .scale(-std::f64::consts::FRAC_PI_4)
        .exp_bivector()
        .unwrap();
    println!("R           = {}", r.as_multivector());
    println!("R e1 R~     = {}", r.sandwich(&e1));
}
