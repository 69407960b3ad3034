//! Spherical series of a polynomial around a non-real center.
use slicereg::calculus::{evaluate_expansion, expansion_coefficients, s2_display};
use slicereg::fixtures;
use slicereg::{Quaternion, SliceFunction};

fn main() {
    let sq = fixtures::square();
    let e = expansion_coefficients(&sq, Quaternion::I, 2).unwrap();
    for (n, s) in e.coeffs.iter().enumerate() {
        println!("x² at i: s{n} = {s}");
    }
    println!(
        "printed closed form for s2 gives {}",
        s2_display(&sq, Quaternion::I).unwrap()
    );

    let c = vec![
        Quaternion::K,
        Quaternion::new(0.5, 0.0, 1.0, 0.0),
        Quaternion::ZERO,
        Quaternion::ONE,
    ];
    let f = SliceFunction::polynomial(c, fixtures::POLY_DOMAIN).unwrap();
    let y = Quaternion::new(0.2, 0.0, 0.8, 0.3);
    let e = expansion_coefficients(&f, y, 3).unwrap();
    let x = Quaternion::new(-0.4, 0.7, 0.1, 0.2);
    println!(
        "f(x) = {}, series = {}",
        f.evaluate(x).unwrap(),
        evaluate_expansion(&e, x)
    );
}
